use std::fmt;

use crate::linalg::{Field, Matrix, Scalar, SparseVec};

use super::AlgebraError;

/// A finite-dimensional unital associative algebra given by structure
/// constants: `e_i · e_j = Σ_k mult[i][j][k] e_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    field: Field,
    names: Vec<String>,
    /// row-major `n × n` table of products of basis vectors
    mult: Vec<SparseVec>,
    unit: Vec<Scalar>,
}

impl Algebra {
    /// Builds and verifies an algebra (associativity and unit laws, exactly).
    pub fn new(
        field: Field,
        names: Vec<String>,
        mult: Vec<Vec<Vec<Scalar>>>,
        unit: Vec<Scalar>,
    ) -> Result<Algebra, AlgebraError> {
        let n = names.len();
        if unit.len() != n {
            return Err(AlgebraError::Shape(format!("unit has {} coordinates, expected {n}", unit.len())));
        }
        if mult.len() != n || mult.iter().any(|r| r.len() != n || r.iter().any(|c| c.len() != n)) {
            return Err(AlgebraError::Shape(format!("multiplication tensor must be {n}x{n}x{n}")));
        }
        let table = mult.into_iter().flatten().map(|v| SparseVec::from_dense(&v)).collect();
        let alg = Algebra::from_table(field, names, table, unit);
        alg.verify()?;
        Ok(alg)
    }

    /// Assembles an algebra from a product table without checking the axioms.
    pub fn from_table(field: Field, names: Vec<String>, mult: Vec<SparseVec>, unit: Vec<Scalar>) -> Algebra {
        assert_eq!(mult.len(), names.len() * names.len());
        Algebra { field, names, mult, unit }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn basis_names(&self) -> &[String] {
        &self.names
    }

    pub fn unit(&self) -> &[Scalar] {
        &self.unit
    }

    pub fn zero(&self) -> Vec<Scalar> {
        vec![self.field.zero(); self.dim()]
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Scalar> {
        let mut v = self.zero();
        v[i] = self.field.one();
        v
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &SparseVec {
        &self.mult[i * self.dim() + j]
    }

    /// Overwrites one entry of the product table.
    pub fn set_basis_product(&mut self, i: usize, j: usize, value: SparseVec) {
        let n = self.dim();
        self.mult[i * n + j] = value;
    }

    /// Product of two coordinate vectors, with a length check.
    pub fn multiply(&self, x: &[Scalar], y: &[Scalar]) -> Result<Vec<Scalar>, AlgebraError> {
        if x.len() != self.dim() || y.len() != self.dim() {
            return Err(AlgebraError::Shape(format!(
                "operands of length {} and {} in a {}-dimensional algebra",
                x.len(),
                y.len(),
                self.dim()
            )));
        }
        Ok(self.mul(x, y))
    }

    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let n = self.dim();
        let mut out = self.zero();
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a * b;
                for (k, c) in self.mult[i * n + j].iter() {
                    out[*k] = &out[*k] + &(&ab * c);
                }
            }
        }
        out
    }

    /// Sparse product, for callers that already work with sparse coordinates.
    pub fn mul_sparse(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let n = self.dim();
        SparseVec::from_entries(x.iter().flat_map(|(i, a)| {
            y.iter().flat_map(move |(j, b)| {
                let ab = a * b;
                self.mult[i * n + j].iter().map(move |(k, c)| (*k, &ab * c)).collect::<Vec<_>>()
            })
        }))
    }

    /// λ_x: column `q` holds `x · e_q`.
    pub fn left_mult_matrix(&self, x: &[Scalar]) -> Matrix {
        let cols: Vec<Vec<Scalar>> = (0..self.dim()).map(|q| self.mul(x, &self.basis_vector(q))).collect();
        Matrix::from_columns(self.field, self.dim(), &cols)
    }

    /// ρ_x: column `q` holds `e_q · x`.
    pub fn right_mult_matrix(&self, x: &[Scalar]) -> Matrix {
        let cols: Vec<Vec<Scalar>> = (0..self.dim()).map(|q| self.mul(&self.basis_vector(q), x)).collect();
        Matrix::from_columns(self.field, self.dim(), &cols)
    }

    /// Exact check of associativity on all basis triples and of the unit laws.
    pub fn verify(&self) -> Result<(), AlgebraError> {
        let n = self.dim();
        for i in 0..n {
            let e = SparseVec::unit(i, self.field);
            let u = SparseVec::from_dense(&self.unit);
            if self.mul_sparse(&u, &e) != e || self.mul_sparse(&e, &u) != e {
                return Err(AlgebraError::UnitLaw { index: i, name: self.names[i].clone() });
            }
        }
        for i in 0..n {
            for j in 0..n {
                let ij = &self.mult[i * n + j];
                for k in 0..n {
                    let ek = SparseVec::unit(k, self.field);
                    let left = self.mul_sparse(ij, &ek);
                    let jk = &self.mult[j * n + k];
                    let right = self.mul_sparse(&SparseVec::unit(i, self.field), jk);
                    if left != right {
                        return Err(AlgebraError::NotAssociative {
                            triple: (i, j, k),
                            names: (self.names[i].clone(), self.names[j].clone(), self.names[k].clone()),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// Relabels the basis: new basis vector `k` is old basis vector `perm[k]`.
    pub fn permute_basis(&self, perm: &[usize]) -> Algebra {
        let n = self.dim();
        let mut inv = vec![0; n];
        for (k, p) in perm.iter().enumerate() {
            inv[*p] = k;
        }
        let names = perm.iter().map(|p| self.names[*p].clone()).collect();
        let mult = (0..n * n)
            .map(|idx| {
                let (a, b) = (idx / n, idx % n);
                self.mult[perm[a] * n + perm[b]].reindex(|k| inv[k])
            })
            .collect();
        let unit = perm.iter().map(|p| self.unit[*p].clone()).collect();
        Algebra { field: self.field, names, mult, unit }
    }

    pub fn describe(&self, x: &[Scalar]) -> String {
        let terms: Vec<String> = x
            .iter()
            .zip(&self.names)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, name)| if c.is_one() { name.clone() } else { format!("{c}*{name}") })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
}

impl fmt::Display for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-dimensional algebra over {} with basis [{}]", self.dim(), self.field, self.names.join(", "))
    }
}

fn table(field: Field, n: usize, product: impl Fn(usize, usize) -> Vec<(usize, i64)>) -> Vec<SparseVec> {
    (0..n * n)
        .map(|idx| SparseVec::from_entries(product(idx / n, idx % n).into_iter().map(|(k, c)| (k, field.from_i64(c)))))
        .collect()
}

/// The ground field as a one-dimensional algebra.
pub fn ground_field(field: Field) -> Algebra {
    Algebra::from_table(field, vec!["1".into()], table(field, 1, |_, _| vec![(0, 1)]), vec![field.one()])
}

/// `k[s]/(s² − d)` with basis `1, s`; for non-square `d` this is `k(√d)`.
pub fn quadratic(field: Field, d: i64) -> Algebra {
    let mult = table(field, 2, |i, j| match (i, j) {
        (0, 0) => vec![(0, 1)],
        (0, 1) | (1, 0) => vec![(1, 1)],
        _ => vec![(0, d)],
    });
    Algebra::from_table(field, vec!["1".into(), format!("sqrt({d})")], mult, vec![field.one(), field.zero()])
}

/// `k[x]/(x^m)` with basis `1, x, …, x^{m-1}`.
pub fn truncated_polynomial(field: Field, m: usize) -> Algebra {
    let names = (0..m).map(|i| match i {
        0 => "1".to_string(),
        1 => "x".to_string(),
        _ => format!("x^{i}"),
    });
    let mult = table(field, m, |i, j| if i + j < m { vec![(i + j, 1)] } else { vec![] });
    let mut unit = vec![field.zero(); m];
    unit[0] = field.one();
    Algebra::from_table(field, names.collect(), mult, unit)
}

/// Full matrix algebra `M_k` with matrix units `E_ij` (index `i*k + j`).
pub fn matrix_algebra(field: Field, k: usize) -> Algebra {
    let names = (0..k * k).map(|idx| format!("E{}{}", idx / k + 1, idx % k + 1)).collect();
    let mult = table(field, k * k, |a, b| {
        let (i, j) = (a / k, a % k);
        let (l, m) = (b / k, b % k);
        if j == l { vec![(i * k + m, 1)] } else { vec![] }
    });
    let unit = (0..k * k).map(|idx| if idx / k == idx % k { field.one() } else { field.zero() }).collect();
    Algebra::from_table(field, names, mult, unit)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builders_satisfy_axioms() {
        let q = Field::Rational;
        for alg in [ground_field(q), quadratic(q, 2), truncated_polynomial(q, 3), matrix_algebra(q, 2)] {
            alg.verify().unwrap();
        }
    }

    #[test]
    fn unit_law_and_relation() {
        let q = Field::Rational;
        let c2 = quadratic(q, 1);
        let g = c2.basis_vector(1);
        assert_eq!(c2.mul(&g, &g), c2.unit().to_vec());
        assert_eq!(c2.mul(c2.unit(), &g), g);
    }

    #[test]
    fn rejects_wrong_unit() {
        let q = Field::Rational;
        let z = |v: i64| q.from_i64(v);
        let mult = vec![
            vec![vec![z(1), z(0)], vec![z(0), z(1)]],
            vec![vec![z(0), z(1)], vec![z(1), z(0)]],
        ];
        assert!(Algebra::new(q, vec!["1".into(), "g".into()], mult.clone(), vec![z(1), z(0)]).is_ok());
        assert!(matches!(
            Algebra::new(q, vec!["1".into(), "g".into()], mult, vec![z(0), z(1)]),
            Err(AlgebraError::UnitLaw { .. })
        ));
    }

    #[test]
    fn detects_associativity_failure() {
        let q = Field::Rational;
        let mut alg = matrix_algebra(q, 2);
        // E12·E21 := 0 instead of E11; unit laws are untouched
        alg.set_basis_product(1, 2, SparseVec::new());
        assert!(matches!(alg.verify(), Err(AlgebraError::NotAssociative { .. })));
    }
}
