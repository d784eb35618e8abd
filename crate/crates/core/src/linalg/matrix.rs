//! Dense exact matrices.
//!
//! Over ℚ the elimination is fraction-free: rows are scaled to integers and
//! reduced with Bareiss' exact-division update, so intermediate entries are
//! minors of the input rather than ever-growing fractions. Over `F_p` plain
//! Gauss–Jordan is used.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::scalar::{Field, Scalar};
use super::sparse::SparseVec;
use super::LinalgError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Result of [`Matrix::solve`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub particular: Vec<Scalar>,
    pub kernel_basis: Vec<Vec<Scalar>>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix { field, rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>) -> Matrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Matrix { field, rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    /// Matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(field: Field, nrows: usize, columns: &[Vec<Scalar>]) -> Matrix {
        let mut m = Matrix::zeros(field, nrows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), nrows);
            for (i, x) in col.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn from_i64(field: Field, rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(field, rows.iter().map(|r| r.iter().map(|x| field.from_i64(*x)).collect()).collect())
    }

    pub fn diagonal(field: Field, diag: &[Scalar]) -> Matrix {
        let mut m = Matrix::zeros(field, diag.len(), diag.len());
        for (i, d) in diag.iter().enumerate() {
            m.set(i, i, d.clone());
        }
        m
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row_vectors(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn sparse_row(&self, i: usize) -> SparseVec {
        SparseVec::from_dense(self.row(i))
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Matrix::identity(self.field, self.rows)
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "inner dimensions differ");
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] = &out.data[idx] + &(a * b);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(self.field.zero(), |acc, (a, b)| &acc + &(a * b))
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix { data: self.data.iter().map(|x| x * c).collect(), ..self.clone() }
    }

    fn zip_with(&self, other: &Matrix, f: impl Fn(&Scalar, &Scalar) -> Scalar) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect(),
        }
    }

    /// Matrix entries flattened row by row.
    pub fn to_vec(&self) -> Vec<Scalar> {
        self.data.clone()
    }

    pub fn from_flat(field: Field, rows: usize, cols: usize, data: Vec<Scalar>) -> Matrix {
        assert_eq!(data.len(), rows * cols);
        Matrix { field, rows, cols, data }
    }

    /// Reduced row echelon form and its pivot columns (first nonzero column wins).
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        match self.field {
            Field::Rational => rref_fraction_free(self),
            Field::Prime(_) => rref_gauss_jordan(self),
        }
    }

    /// Rank from the row echelon form.
    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Rank from column operations (the row echelon form of the transpose).
    pub fn column_rank(&self) -> usize {
        self.transpose().rref().1.len()
    }

    pub fn determinant(&self) -> Result<Scalar, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::Dimension(format!("determinant of {}x{} matrix", self.rows, self.cols)));
        }
        Ok(match self.field {
            Field::Rational => bareiss_determinant(self),
            Field::Prime(_) => gauss_determinant(self),
        })
    }

    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        let (r, pivots) = self.rref();
        kernel_from_rref(&r, &pivots)
    }

    /// All solutions of `self · x = b`.
    pub fn solve(&self, b: &[Scalar]) -> Result<Solution, LinalgError> {
        if b.len() != self.rows {
            return Err(LinalgError::Dimension(format!("rhs length {} for {} rows", b.len(), self.rows)));
        }
        let mut aug = Matrix::zeros(self.field, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Err(LinalgError::NoSolution);
        }
        let mut particular = vec![self.field.zero(); self.cols];
        for (k, p) in pivots.iter().enumerate() {
            particular[*p] = r.get(k, self.cols).clone();
        }
        let coeff = Matrix::from_flat(
            self.field,
            r.rows,
            self.cols,
            (0..r.rows).flat_map(|i| r.row(i)[..self.cols].to_vec()).collect(),
        );
        Ok(Solution { particular, kernel_basis: kernel_from_rref(&coeff, &pivots) })
    }

    pub fn invert(&self) -> Result<Matrix, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::Dimension(format!("inverse of {}x{} matrix", self.rows, self.cols)));
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(self.field, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, self.field.one());
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(LinalgError::Singular);
        }
        let mut inv = Matrix::zeros(self.field, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j).clone());
            }
        }
        Ok(inv)
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// `v ∈ span(set)`? Returns coefficients reproducing `v` when it is.
pub fn span_membership(v: &[Scalar], set: &[Vec<Scalar>], field: Field) -> Option<Vec<Scalar>> {
    if set.is_empty() {
        return v.iter().all(Scalar::is_zero).then(Vec::new);
    }
    let m = Matrix::from_columns(field, v.len(), set);
    m.solve(v).ok().map(|s| s.particular)
}

fn kernel_from_rref(r: &Matrix, pivots: &[usize]) -> Vec<Vec<Scalar>> {
    let field = r.field;
    let cols = r.cols;
    let mut is_pivot = vec![false; cols];
    for p in pivots {
        is_pivot[*p] = true;
    }
    (0..cols)
        .filter(|c| !is_pivot[*c])
        .map(|free| {
            let mut v = vec![field.zero(); cols];
            v[free] = field.one();
            for (k, p) in pivots.iter().enumerate() {
                v[*p] = -r.get(k, free);
            }
            v
        })
        .collect()
}

fn to_integer_rows(m: &Matrix) -> Vec<Vec<BigInt>> {
    (0..m.rows)
        .map(|i| {
            let row: Vec<&BigRational> = m.row(i).iter().map(|x| x.as_rational().expect("rational matrix")).collect();
            let lcm = row.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
            row.iter().map(|q| q.numer() * (&lcm / q.denom())).collect()
        })
        .collect()
}

/// Fraction-free forward elimination. Returns the integer echelon rows, their
/// pivot columns and the number of row swaps.
fn bareiss_echelon(mut a: Vec<Vec<BigInt>>, cols: usize) -> (Vec<Vec<BigInt>>, Vec<usize>, usize) {
    let rows = a.len();
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut swaps = 0;
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        if p != r {
            a.swap(p, r);
            swaps += 1;
        }
        for i in r + 1..rows {
            for j in c + 1..cols {
                let (v, rem) = (&a[r][c] * &a[i][j] - &a[i][c] * &a[r][j]).div_rem(&prev);
                debug_assert!(rem.is_zero(), "Bareiss division must be exact");
                a[i][j] = v;
            }
            a[i][c] = BigInt::zero();
        }
        // rows above the pivot row keep their scale; later rows carry the factor
        prev = a[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    (a, pivots, swaps)
}

fn rref_fraction_free(m: &Matrix) -> (Matrix, Vec<usize>) {
    let (ech, pivots) = {
        let (e, p, _) = bareiss_echelon(to_integer_rows(m), m.cols);
        (e, p)
    };
    let field = m.field;
    let mut rows: Vec<Vec<BigRational>> = ech
        .into_iter()
        .zip(&pivots)
        .map(|(row, &p)| {
            let lead = row[p].clone();
            row.into_iter().map(|x| BigRational::new(x, lead.clone())).collect()
        })
        .collect();
    for k in (0..rows.len()).rev() {
        let p = pivots[k];
        for i in 0..k {
            let f = rows[i][p].clone();
            if f.is_zero() {
                continue;
            }
            for j in p..m.cols {
                let d = &f * &rows[k][j];
                rows[i][j] -= d;
            }
        }
    }
    let mut out = Matrix::zeros(field, rows.len(), m.cols);
    for (i, row) in rows.into_iter().enumerate() {
        for (j, x) in row.into_iter().enumerate() {
            out.set(i, j, Scalar::Q(x));
        }
    }
    (out, pivots)
}

fn bareiss_determinant(m: &Matrix) -> Scalar {
    let n = m.rows;
    if n == 0 {
        return m.field.one();
    }
    // clear denominators row by row, remembering the scale
    let mut scale = BigRational::one();
    let rows: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            let row: Vec<&BigRational> = m.row(i).iter().map(|x| x.as_rational().unwrap()).collect();
            let lcm = row.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
            scale *= BigRational::from_integer(lcm.clone());
            row.iter().map(|q| q.numer() * (&lcm / q.denom())).collect()
        })
        .collect();
    let (ech, pivots, swaps) = bareiss_echelon(rows, n);
    if pivots.len() < n {
        return m.field.zero();
    }
    let mut det = BigRational::from_integer(ech[n - 1][n - 1].clone()) / scale;
    if swaps % 2 == 1 {
        det = -det;
    }
    Scalar::Q(det)
}

fn rref_gauss_jordan(m: &Matrix) -> (Matrix, Vec<usize>) {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..a.cols {
        if r == a.rows {
            break;
        }
        let Some(p) = (r..a.rows).find(|&i| !a.get(i, c).is_zero()) else { continue };
        swap_rows(&mut a, p, r);
        let inv = a.get(r, c).inv().unwrap();
        for j in 0..a.cols {
            let v = a.get(r, j) * &inv;
            a.set(r, j, v);
        }
        for i in 0..a.rows {
            if i == r || a.get(i, c).is_zero() {
                continue;
            }
            let f = a.get(i, c).clone();
            for j in 0..a.cols {
                let v = a.get(i, j) - &(&f * a.get(r, j));
                a.set(i, j, v);
            }
        }
        pivots.push(c);
        r += 1;
    }
    let rows = pivots.len();
    let data = a.data[..rows * a.cols].to_vec();
    (Matrix::from_flat(a.field, rows, a.cols, data), pivots)
}

fn gauss_determinant(m: &Matrix) -> Scalar {
    let mut a = m.clone();
    let n = a.rows;
    let mut det = m.field.one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a.get(i, c).is_zero()) else { return m.field.zero() };
        if p != c {
            swap_rows(&mut a, p, c);
            det = -det;
        }
        det = &det * a.get(c, c);
        let inv = a.get(c, c).inv().unwrap();
        for i in c + 1..n {
            let f = a.get(i, c) * &inv;
            if f.is_zero() {
                continue;
            }
            for j in c..n {
                let v = a.get(i, j) - &(&f * a.get(c, j));
                a.set(i, j, v);
            }
        }
    }
    det
}

fn swap_rows(a: &mut Matrix, i: usize, j: usize) {
    if i == j {
        return;
    }
    for c in 0..a.cols {
        a.data.swap(i * a.cols + c, j * a.cols + c);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rational
    }

    fn v(xs: &[i64]) -> Vec<Scalar> {
        xs.iter().map(|x| q().from_i64(*x)).collect()
    }

    #[test]
    fn solve_identity() {
        let s = Matrix::identity(q(), 2).solve(&v(&[1, 2])).unwrap();
        assert_eq!(s.particular, v(&[1, 2]));
        assert!(s.kernel_basis.is_empty());
    }

    #[test]
    fn solve_zero_map() {
        let s = Matrix::zeros(q(), 2, 2).solve(&v(&[0, 0])).unwrap();
        assert_eq!(s.particular, v(&[0, 0]));
        assert_eq!(s.kernel_basis.len(), 2);
    }

    #[test]
    fn solve_inconsistent() {
        let m = Matrix::from_i64(q(), &[&[1, 1], &[2, 2]]);
        assert_eq!(m.solve(&v(&[1, 3])), Err(LinalgError::NoSolution));
    }

    #[test]
    fn span_membership_cases() {
        assert_eq!(span_membership(&v(&[0, 0]), &[v(&[3, 4])], q()), Some(v(&[0])));
        assert_eq!(span_membership(&v(&[1, 0]), &[v(&[0, 1])], q()), None);
        assert_eq!(span_membership(&v(&[0, 0]), &[], q()), Some(vec![]));
    }

    #[test]
    fn invert_diagonal() {
        let d = Matrix::diagonal(q(), &v(&[2, 3]));
        let inv = d.invert().unwrap();
        assert_eq!(inv, Matrix::diagonal(q(), &[q().parse("1/2").unwrap(), q().parse("1/3").unwrap()]));
        assert_eq!(Matrix::identity(q(), 4).invert().unwrap(), Matrix::identity(q(), 4));
        assert_eq!(Matrix::from_i64(q(), &[&[1, 2], &[2, 4]]).invert(), Err(LinalgError::Singular));
    }

    #[test]
    fn determinant_with_fractions() {
        let m = Matrix::from_rows(
            q(),
            vec![
                vec![q().parse("1/2").unwrap(), q().parse("1/3").unwrap()],
                vec![q().parse("1/4").unwrap(), q().parse("1/5").unwrap()],
            ],
        );
        assert_eq!(m.determinant().unwrap(), q().parse("1/60").unwrap());
        let p = Field::prime(5).unwrap();
        let mp = Matrix::from_i64(p, &[&[1, 2], &[3, 4]]);
        assert_eq!(mp.determinant().unwrap(), p.from_i64(-2));
    }

    #[test]
    fn prime_field_inverse() {
        let p = Field::prime(7).unwrap();
        let m = Matrix::from_i64(p, &[&[1, 2], &[3, 4]]);
        assert!(m.mul(&m.invert().unwrap()).is_identity());
    }
}
