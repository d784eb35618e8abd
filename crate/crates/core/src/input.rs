//! The JSON input format: a field plus either an explicit algebra with a spanning
//! set for the subalgebra, or a permutation group with subgroup generators.
//!
//! ```json
//! { "field": "Q",
//!   "algebra": { "dim": 2, "basis": ["1", "x"], "unit": ["1", "0"],
//!                "mult": [[["1","0"], ["0","1"]], [["0","1"], ["2","0"]]] },
//!   "subalgebra": [["1", "0"]] }
//! ```
//!
//! `mult[i][j]` holds the coordinates of `e_i e_j`. Scalars are strings `"p/q"`
//! (JSON integers are accepted too). Groups use 1-based cycle lists:
//! `{ "group": { "degree": 3, "generators": [[[1,2,3]], [[1,2]]] }, "subgroup_generators": [[[1,2,3]]] }`.

use serde_json::Value;
use thiserror::Error;

use crate::algebra::{subgroup_extension, Algebra, AlgebraError, PermGroup, Permutation, RingExtension};
use crate::linalg::{Field, Scalar};

#[derive(Debug, Error)]
pub enum InputError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("{path}: {message}")]
    Schema { path: String, message: String },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

fn schema(path: &str, message: impl Into<String>) -> InputError {
    InputError::Schema { path: path.to_string(), message: message.into() }
}

/// A group together with the indices of a subgroup.
#[derive(Clone, Debug)]
pub struct GroupInput {
    pub group: PermGroup,
    pub subgroup: Option<Vec<usize>>,
}

#[derive(Clone, Debug)]
pub enum InputDocument {
    Algebra { extension: RingExtension },
    Group { field: Field, group: GroupInput },
}

impl InputDocument {
    /// The ring extension described, or `None` for a group file without a subgroup.
    pub fn extension(&self) -> Result<Option<RingExtension>, InputError> {
        match self {
            InputDocument::Algebra { extension } => Ok(Some(extension.clone())),
            InputDocument::Group { field, group } => match &group.subgroup {
                None => Ok(None),
                Some(h) => Ok(Some(subgroup_extension(&group.group, h, *field)?)),
            },
        }
    }

    pub fn field(&self) -> Field {
        match self {
            InputDocument::Algebra { extension } => extension.field(),
            InputDocument::Group { field, .. } => *field,
        }
    }
}

pub fn parse_field(v: Option<&Value>) -> Result<Field, InputError> {
    match v {
        None => Ok(Field::Rational),
        Some(Value::String(s)) if s == "Q" => Ok(Field::Rational),
        Some(Value::Object(m)) if m.len() == 1 && m.contains_key("Fp") => {
            let p = m["Fp"].as_u64().ok_or_else(|| schema("field.Fp", "expected a positive integer"))?;
            Field::prime(p).map_err(|_| schema("field.Fp", format!("{p} is not prime")))
        }
        Some(_) => Err(schema("field", "expected \"Q\" or {\"Fp\": p}")),
    }
}

fn scalar(field: Field, v: &Value, path: &str) -> Result<Scalar, InputError> {
    match v {
        Value::String(s) => field.parse(s).map_err(|e| schema(path, e.to_string())),
        Value::Number(n) if n.is_i64() => Ok(field.from_i64(n.as_i64().expect("checked"))),
        Value::Number(_) => Err(schema(path, "floating-point numbers are not allowed; write \"p/q\"")),
        _ => Err(schema(path, "expected a rational string \"p/q\"")),
    }
}

fn array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>, InputError> {
    v.as_array().ok_or_else(|| schema(path, "expected an array"))
}

fn vector(field: Field, v: &Value, len: usize, path: &str) -> Result<Vec<Scalar>, InputError> {
    let items = array(v, path)?;
    if items.len() != len {
        return Err(schema(path, format!("expected {len} coordinates, found {}", items.len())));
    }
    items.iter().enumerate().map(|(i, x)| scalar(field, x, &format!("{path}[{i}]"))).collect()
}

fn usize_field(v: &Value, path: &str) -> Result<usize, InputError> {
    v.as_u64().map(|x| x as usize).ok_or_else(|| schema(path, "expected a non-negative integer"))
}

fn parse_algebra(field: Field, v: &Value) -> Result<Algebra, InputError> {
    let obj = v.as_object().ok_or_else(|| schema("algebra", "expected an object"))?;
    let dim = usize_field(obj.get("dim").ok_or_else(|| schema("algebra.dim", "missing"))?, "algebra.dim")?;
    if dim == 0 {
        return Err(schema("algebra.dim", "must be positive"));
    }
    let names: Vec<String> = match obj.get("basis") {
        None => (0..dim).map(|i| format!("e{i}")).collect(),
        Some(b) => {
            let items = array(b, "algebra.basis")?;
            if items.len() != dim {
                return Err(schema("algebra.basis", format!("expected {dim} names, found {}", items.len())));
            }
            items
                .iter()
                .enumerate()
                .map(|(i, x)| x.as_str().map(str::to_string).ok_or_else(|| schema(&format!("algebra.basis[{i}]"), "expected a string")))
                .collect::<Result<_, _>>()?
        }
    };
    let unit = vector(field, obj.get("unit").ok_or_else(|| schema("algebra.unit", "missing"))?, dim, "algebra.unit")?;
    let mult_v = obj.get("mult").ok_or_else(|| schema("algebra.mult", "missing"))?;
    let rows = array(mult_v, "algebra.mult")?;
    if rows.len() != dim {
        return Err(schema("algebra.mult", format!("expected {dim} rows, found {}", rows.len())));
    }
    let mut mult = Vec::with_capacity(dim);
    for (i, row) in rows.iter().enumerate() {
        let path = format!("algebra.mult[{i}]");
        let cells = array(row, &path)?;
        if cells.len() != dim {
            return Err(schema(&path, format!("expected {dim} entries, found {}", cells.len())));
        }
        mult.push(cells.iter().enumerate().map(|(j, c)| vector(field, c, dim, &format!("{path}[{j}]"))).collect::<Result<Vec<_>, _>>()?);
    }
    Ok(Algebra::new(field, names, mult, unit)?)
}

fn parse_cycles(v: &Value, degree: usize, path: &str) -> Result<Permutation, InputError> {
    let cycles = array(v, path)?
        .iter()
        .enumerate()
        .map(|(c, cyc)| {
            let p = format!("{path}[{c}]");
            array(cyc, &p)?.iter().enumerate().map(|(k, x)| usize_field(x, &format!("{p}[{k}]"))).collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    Permutation::from_cycles(degree, &cycles).map_err(|e| schema(path, e.to_string()))
}

fn parse_group(v: &Value, sub: Option<&Value>, cap: usize) -> Result<GroupInput, InputError> {
    let obj = v.as_object().ok_or_else(|| schema("group", "expected an object"))?;
    let degree = usize_field(obj.get("degree").ok_or_else(|| schema("group.degree", "missing"))?, "group.degree")?;
    if degree == 0 {
        return Err(schema("group.degree", "must be positive"));
    }
    let gens_v = obj.get("generators").ok_or_else(|| schema("group.generators", "missing"))?;
    let gens = array(gens_v, "group.generators")?
        .iter()
        .enumerate()
        .map(|(i, g)| parse_cycles(g, degree, &format!("group.generators[{i}]")))
        .collect::<Result<Vec<_>, _>>()?;
    let group = PermGroup::generate(degree, &gens, cap)?;
    let subgroup = match sub {
        None => None,
        Some(s) => {
            let hs = array(s, "subgroup_generators")?
                .iter()
                .enumerate()
                .map(|(i, g)| parse_cycles(g, degree, &format!("subgroup_generators[{i}]")))
                .collect::<Result<Vec<_>, _>>()?;
            Some(group.subgroup_from(&hs)?)
        }
    };
    Ok(GroupInput { group, subgroup })
}

/// Parses and validates an input document. `cap` bounds the order of an input group.
pub fn parse_input(text: &str, cap: usize) -> Result<InputDocument, InputError> {
    let v: Value = serde_json::from_str(text)
        .map_err(|e| InputError::Syntax { line: e.line(), column: e.column(), message: e.to_string() })?;
    let obj = v.as_object().ok_or_else(|| schema("$", "expected a JSON object"))?;
    for key in obj.keys() {
        if !["field", "algebra", "subalgebra", "group", "subgroup_generators"].contains(&key.as_str()) {
            return Err(schema(key, "unknown field"));
        }
    }
    let field = parse_field(obj.get("field"))?;
    match (obj.get("algebra"), obj.get("group")) {
        (Some(_), Some(_)) => Err(schema("$", "give either \"algebra\" or \"group\", not both")),
        (None, None) => Err(schema("$", "missing \"algebra\" or \"group\"")),
        (Some(a), None) => {
            if obj.contains_key("subgroup_generators") {
                return Err(schema("subgroup_generators", "only allowed with \"group\""));
            }
            let algebra = parse_algebra(field, a)?;
            let dim = algebra.dim();
            let sub_v = obj.get("subalgebra").ok_or_else(|| schema("subalgebra", "missing"))?;
            let spanning = array(sub_v, "subalgebra")?
                .iter()
                .enumerate()
                .map(|(i, x)| vector(field, x, dim, &format!("subalgebra[{i}]")))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(InputDocument::Algebra { extension: RingExtension::new(algebra, spanning)? })
        }
        (None, Some(g)) => {
            if obj.contains_key("subalgebra") {
                return Err(schema("subalgebra", "only allowed with \"algebra\""));
            }
            Ok(InputDocument::Group { field, group: parse_group(g, obj.get("subgroup_generators"), cap)? })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const QC2: &str = r#"{"field": "Q", "algebra": {"dim": 2, "basis": ["1", "g"], "unit": ["1", "0"],
        "mult": [[["1","0"],["0","1"]], [["0","1"],["1","0"]]]}, "subalgebra": [["1","0"]]}"#;

    #[test]
    fn parses_algebra() {
        let doc = parse_input(QC2, 512).unwrap();
        let ext = doc.extension().unwrap().unwrap();
        assert_eq!((ext.n(), ext.b_basis().len()), (2, 1));
    }

    #[test]
    fn parses_group_over_fp() {
        let doc = parse_input(r#"{"field": {"Fp": 7}, "group": {"degree": 3, "generators": [[[1,2,3]], [[1,2]]]}, "subgroup_generators": [[[1,2,3]]]}"#, 512)
            .unwrap();
        assert_eq!(doc.field(), Field::Prime(7));
        let ext = doc.extension().unwrap().unwrap();
        assert_eq!((ext.n(), ext.b_basis().len()), (6, 3));
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_input("{\n  \"field\": \"Q\",\n  oops }", 512).unwrap_err();
        assert!(matches!(e, InputError::Syntax { line: 3, .. }), "{e}");
        let bad = QC2.replace(r#"["0","1"],["1","0"]]]"#, r#"["0","1"],["1","zero"]]]"#);
        let e = parse_input(&bad, 512).unwrap_err();
        assert_eq!(e.to_string().split(':').next().unwrap(), "algebra.mult[1][1][1]");
        let e = parse_input(&QC2.replace(r#""1","0"]]}"#, r#"1.5,"0"]]}"#), 512).unwrap_err();
        assert!(e.to_string().starts_with("subalgebra[0][0]"), "{e}");
        assert!(matches!(parse_input(r#"{"field": {"Fp": 8}, "group": {"degree": 1, "generators": []}}"#, 512), Err(InputError::Schema { .. })));
    }

    #[test]
    fn algebra_failures_are_reported() {
        // g·1 := 0 breaks the unit law
        let no_unit = QC2.replace(r#"[["0","1"],["1","0"]]]"#, r#"[["0","0"],["1","0"]]]"#);
        assert!(matches!(parse_input(&no_unit, 512), Err(InputError::Algebra(_))));
        let sub = QC2.replace(r#""subalgebra": [["1","0"]]"#, r#""subalgebra": [["0","1"]]"#);
        assert!(matches!(parse_input(&sub, 512), Err(InputError::Algebra(AlgebraError::SubalgebraMissingUnit))));
        let cap = parse_input(r#"{"group": {"degree": 4, "generators": [[[1,2,3,4]], [[1,2]]]}}"#, 10);
        assert!(matches!(cap, Err(InputError::Algebra(AlgebraError::OrderCapExceeded { cap: 10 }))));
    }
}
