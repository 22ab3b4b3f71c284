//! JSON file formats and the short builtin specs accepted on the command line.
//!
//! - group: `{"order": n, "table": [[...]]}` with 0-based indices.
//! - algebra: `{"dim": n, "field": "Q" | {"p": p}, "structure": [[[c_ijk; n]; n]; n],
//!   "unit": [..], "grades": [..]}`; `grades` is optional and defaults to all `e`.
//! - module object: `{"side": "left" | "right", "grades": [..], "action": [matrix; dim A]}`
//!   with row-major matrices, or the shorthands `{"side": .., "free": [shifts]}` and
//!   `{"side": .., "zero": true}`.
//!
//! Scalars may be JSON integers or strings such as `"-2/3"`.

use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{FinAlgebra, Side};
use crate::error::{Error, Result};
use crate::exactla::{Field, Matrix, Scalar};
use crate::gradedcat::{GradedAlgebra, GradedModule, GradedObject};
use crate::groups::{FiniteGroup, GroupKind};

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarText {
    Int(i64),
    Text(String),
}

impl ScalarText {
    pub fn parse(&self, field: Field) -> Result<Scalar> {
        match self {
            ScalarText::Int(n) => Ok(field.from_i64(*n)),
            ScalarText::Text(s) => field.parse(s),
        }
    }

    fn from_scalar(s: &Scalar) -> Self {
        match s.to_i64() {
            Some(n) => ScalarText::Int(n),
            None => ScalarText::Text(s.to_string()),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FieldText {
    Name(String),
    Prime { p: u64 },
}

impl FieldText {
    pub fn resolve(&self) -> Result<Field> {
        match self {
            FieldText::Name(name) => parse_field(name),
            FieldText::Prime { p } => Field::prime(*p),
        }
    }

    fn from_field(field: Field) -> Self {
        match field {
            Field::Rational => FieldText::Name("Q".into()),
            Field::Prime(p) => FieldText::Prime { p },
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GroupFile {
    pub order: usize,
    pub table: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AlgebraFile {
    pub dim: usize,
    pub field: FieldText,
    pub structure: Vec<Vec<Vec<ScalarText>>>,
    pub unit: Vec<ScalarText>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grades: Option<Vec<usize>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SideText {
    Left,
    Right,
}

impl From<SideText> for Side {
    fn from(s: SideText) -> Side {
        match s {
            SideText::Left => Side::Left,
            SideText::Right => Side::Right,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ModuleBody {
    Explicit { grades: Vec<usize>, action: Vec<Vec<Vec<ScalarText>>> },
    Free { free: Vec<usize> },
    Zero { zero: bool },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ModuleFile {
    pub side: SideText,
    #[serde(flatten)]
    pub body: ModuleBody,
}

fn from_json<T: for<'de> Deserialize<'de>>(text: &str, what: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("{what}: {e}")))
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

/// `"Q"` or `"Fp:p"` (also accepts `"Fp"` followed directly by digits).
pub fn parse_field(text: &str) -> Result<Field> {
    let t = text.trim();
    if t == "Q" || t.eq_ignore_ascii_case("rational") {
        return Ok(Field::Rational);
    }
    let digits = t.strip_prefix("Fp:").or_else(|| t.strip_prefix("Fp")).or_else(|| t.strip_prefix('F'));
    match digits.and_then(|d| d.parse::<u64>().ok()) {
        Some(p) => Field::prime(p),
        None => Err(Error::Parse(format!("unknown field {text:?}, expected Q or Fp:<prime>"))),
    }
}

pub fn group_from_json(text: &str) -> Result<FiniteGroup> {
    let file: GroupFile = from_json(text, "group file")?;
    if file.table.len() != file.order {
        return Err(Error::Parse(format!("order {} but table has {} rows", file.order, file.table.len())));
    }
    FiniteGroup::from_table(file.table, GroupKind::Explicit)
}

pub fn group_to_json(group: &FiniteGroup) -> String {
    let file = GroupFile { order: group.order(), table: group.table().to_vec() };
    serde_json::to_string(&file).expect("serializable")
}

/// `cyclic:n`, `symmetric:n`, or a path to a group file.
pub fn parse_group_spec(spec: &str) -> Result<FiniteGroup> {
    if let Some(n) = spec.strip_prefix("cyclic:") {
        return FiniteGroup::cyclic(n.parse().map_err(|_| Error::Parse(format!("bad cyclic order {n:?}")))?);
    }
    if let Some(n) = spec.strip_prefix("symmetric:") {
        return FiniteGroup::symmetric(n.parse().map_err(|_| Error::Parse(format!("bad symmetric degree {n:?}")))?);
    }
    group_from_json(&read(Path::new(spec))?)
}

/// Reads an algebra; `grades` are checked against `group`.
pub fn algebra_from_json(text: &str, group: &Arc<FiniteGroup>) -> Result<GradedAlgebra> {
    let file: AlgebraFile = from_json(text, "algebra file")?;
    let field = file.field.resolve()?;
    let n = file.dim;
    if file.structure.len() != n || file.unit.len() != n {
        return Err(Error::Parse(format!("dim {n} does not match structure/unit lengths")));
    }
    let mut structure = Vec::with_capacity(n);
    for (i, plane) in file.structure.iter().enumerate() {
        if plane.len() != n || plane.iter().any(|row| row.len() != n) {
            return Err(Error::Parse(format!("structure[{i}] is not {n}x{n}")));
        }
        structure.push(
            plane
                .iter()
                .map(|row| row.iter().map(|c| c.parse(field)).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?,
        );
    }
    let unit = file.unit.iter().map(|c| c.parse(field)).collect::<Result<Vec<_>>>()?;
    let algebra = Arc::new(FinAlgebra::from_structure(field, &structure, unit)?);
    let grades = file.grades.unwrap_or_else(|| vec![group.identity(); n]);
    GradedAlgebra::new(algebra, GradedObject::new(group.clone(), grades)?)
}

pub fn algebra_to_json(algebra: &GradedAlgebra) -> String {
    let alg = algebra.algebra();
    let n = alg.dim();
    let structure = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut dense = vec![ScalarText::Int(0); n];
                    for (k, c) in alg.product(i, j) {
                        dense[*k] = ScalarText::from_scalar(c);
                    }
                    dense
                })
                .collect()
        })
        .collect();
    let file = AlgebraFile {
        dim: n,
        field: FieldText::from_field(alg.field()),
        structure,
        unit: alg.unit().iter().map(ScalarText::from_scalar).collect(),
        grades: Some(algebra.grading().grades().to_vec()),
    };
    serde_json::to_string(&file).expect("serializable")
}

/// `group-algebra`, `flat-group-algebra`, `unit`, or a path to an algebra file.
pub fn parse_algebra_spec(spec: &str, group: &Arc<FiniteGroup>, field: Field) -> Result<GradedAlgebra> {
    match spec {
        "group-algebra" => Ok(GradedAlgebra::group_algebra(group.clone(), field)),
        "flat-group-algebra" => Ok(GradedAlgebra::group_algebra_trivially_graded(group.clone(), field)),
        "unit" => Ok(GradedAlgebra::unit(group.clone(), field)),
        path => {
            let algebra = algebra_from_json(&read(Path::new(path))?, group)?;
            if algebra.field() != field {
                return Err(Error::FieldMismatch { expected: field, found: algebra.field() });
            }
            Ok(algebra)
        }
    }
}

pub fn module_from_json(text: &str, algebra: &Arc<GradedAlgebra>) -> Result<GradedModule> {
    let file: ModuleFile = from_json(text, "module file")?;
    let side = Side::from(file.side);
    match file.body {
        ModuleBody::Zero { .. } => Ok(GradedModule::zero(algebra.clone(), side)),
        ModuleBody::Free { free } => GradedModule::free(algebra.clone(), side, &free),
        ModuleBody::Explicit { grades, action } => {
            let field = algebra.field();
            let d = grades.len();
            let matrices = action
                .iter()
                .enumerate()
                .map(|(i, rows)| {
                    if rows.len() != d || rows.iter().any(|r| r.len() != d) {
                        return Err(Error::Parse(format!("action[{i}] is not {d}x{d}")));
                    }
                    let entries = rows.iter().flatten().map(|c| c.parse(field)).collect::<Result<Vec<_>>>()?;
                    Ok(Matrix::from_flat(field, d, d, entries))
                })
                .collect::<Result<Vec<_>>>()?;
            let module = GradedModule::new(algebra.clone(), side, GradedObject::new(algebra.group().clone(), grades)?, matrices)?;
            module.validate().map_err(|e| Error::InvalidModule(e.to_string()))?;
            Ok(module)
        }
    }
}

pub fn module_to_json(module: &GradedModule) -> String {
    let side = match module.side() {
        Side::Left => SideText::Left,
        Side::Right => SideText::Right,
    };
    let d = module.dim();
    let action = module
        .module()
        .actions()
        .iter()
        .map(|m| (0..d).map(|r| m.row(r).iter().map(ScalarText::from_scalar).collect()).collect())
        .collect();
    let file = ModuleFile { side, body: ModuleBody::Explicit { grades: module.grading().grades().to_vec(), action } };
    serde_json::to_string(&file).expect("serializable")
}

pub fn read_module(path: &Path, algebra: &Arc<GradedAlgebra>) -> Result<GradedModule> {
    module_from_json(&read(path)?, algebra)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fields_parse() {
        assert_eq!(parse_field("Q").unwrap(), Field::Rational);
        assert_eq!(parse_field("Fp:7").unwrap(), Field::Prime(7));
        assert!(parse_field("Fp:8").is_err());
        assert!(parse_field("R").is_err());
    }

    #[test]
    fn group_round_trip() {
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let back = group_from_json(&group_to_json(&s3)).unwrap();
        assert_eq!(back.table(), s3.table());
        let err = group_from_json("{\"order\": 2,\n \"table\": [[0, 1], [1]]").unwrap_err();
        assert!(err.to_string().contains("line 2"), "{err}");
    }

    #[test]
    fn algebra_round_trip() {
        let g = Arc::new(FiniteGroup::cyclic(3).unwrap());
        let a = GradedAlgebra::group_algebra(g.clone(), Field::Prime(7));
        let back = algebra_from_json(&algebra_to_json(&a), &g).unwrap();
        assert_eq!(back, a);
        let text = r#"{"dim": 2, "field": "Q", "structure": [[[1,0],[0,1]],[[0,1],["1/2",0]]], "unit": [1, 0]}"#;
        let flat = algebra_from_json(text, &g).unwrap();
        assert_eq!(flat.grading().grades(), &[0, 0]);
        assert!(flat.validate().is_ok());
    }

    #[test]
    fn module_formats() {
        let g = Arc::new(FiniteGroup::cyclic(2).unwrap());
        let a = Arc::new(GradedAlgebra::group_algebra(g.clone(), Field::Rational));
        let free = module_from_json(r#"{"side": "right", "free": [1, 0]}"#, &a).unwrap();
        assert_eq!(free.dim(), 4);
        let back = module_from_json(&module_to_json(&free), &a).unwrap();
        assert_eq!(back.grading(), free.grading());
        assert_eq!(back.module().actions(), free.module().actions());
        assert_eq!(module_from_json(r#"{"side": "left", "zero": true}"#, &a).unwrap().dim(), 0);
        // The generator must move grade e to grade g.
        let bad = r#"{"side": "left", "grades": [0, 0], "action": [[[1,0],[0,1]], [[0,1],[1,0]]]}"#;
        assert!(module_from_json(bad, &a).is_err());
    }
}
