//! The tensor category `Vect[K]` of finite-dimensional `K`-graded vector spaces and the
//! algebra, module and bimodule objects inside it.
//!
//! Every basis vector carries its grade. The tensor product of `u` and `v` has basis
//! the pairs `(i, j)` at index `i * dim(v) + j`, so the associator is the identity
//! matrix and the unitors are identity matrices as well.

mod exact;
mod objects;

use std::sync::Arc;

use serde::Serialize;

pub use exact::{exactness_probe, ExactnessReport, ShortExactSequence};
pub use objects::{GradedAlgebra, GradedBimodule, GradedModule};

use crate::error::{Error, Result};
use crate::exactla::{Field, Matrix};
use crate::groups::FiniteGroup;

pub(crate) fn same_group(a: &Arc<FiniteGroup>, b: &Arc<FiniteGroup>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

#[derive(Clone, Debug)]
pub struct GradedObject {
    group: Arc<FiniteGroup>,
    grades: Vec<usize>,
}

impl PartialEq for GradedObject {
    fn eq(&self, other: &Self) -> bool {
        same_group(&self.group, &other.group) && self.grades == other.grades
    }
}

impl Eq for GradedObject {}

impl GradedObject {
    pub fn new(group: Arc<FiniteGroup>, grades: Vec<usize>) -> Result<Self> {
        if let Some(&g) = grades.iter().find(|&&g| g >= group.order()) {
            return Err(Error::InvalidModule(format!("grade {g} is not a group element")));
        }
        Ok(GradedObject { group, grades })
    }

    /// `dims[g]` basis vectors in grade `g`, ordered grade-major.
    pub fn from_dims(group: Arc<FiniteGroup>, dims: &[usize]) -> Result<Self> {
        if dims.len() != group.order() {
            return Err(Error::DimensionMismatch(format!("{} grade dimensions for a group of order {}", dims.len(), group.order())));
        }
        let grades = dims.iter().enumerate().flat_map(|(g, &d)| std::iter::repeat_n(g, d)).collect();
        Ok(GradedObject { group, grades })
    }

    /// The tensor unit `k_e`.
    pub fn unit(group: Arc<FiniteGroup>) -> Self {
        let e = group.identity();
        GradedObject { group, grades: vec![e] }
    }

    /// The one-dimensional object `k_g`.
    pub fn simple(group: Arc<FiniteGroup>, g: usize) -> Self {
        GradedObject { group, grades: vec![g] }
    }

    pub fn zero(group: Arc<FiniteGroup>) -> Self {
        GradedObject { group, grades: Vec::new() }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.grades.len()
    }

    pub fn grade(&self, i: usize) -> usize {
        self.grades[i]
    }

    pub fn grades(&self) -> &[usize] {
        &self.grades
    }

    pub fn dims(&self) -> Vec<usize> {
        let mut d = vec![0; self.group.order()];
        for &g in &self.grades {
            d[g] += 1;
        }
        d
    }

    /// Basis indices of grade `g`, increasing.
    pub fn component(&self, g: usize) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.grades[i] == g).collect()
    }

    pub(crate) fn check_group(&self, other: &GradedObject) -> Result<()> {
        if same_group(&self.group, &other.group) {
            Ok(())
        } else {
            Err(Error::GroupMismatch)
        }
    }

    pub fn tensor(&self, other: &GradedObject) -> Result<GradedObject> {
        self.check_group(other)?;
        let grades = self
            .grades
            .iter()
            .flat_map(|&g| other.grades.iter().map(move |&h| (g, h)))
            .map(|(g, h)| self.group.mul(g, h))
            .collect();
        Ok(GradedObject { group: self.group.clone(), grades })
    }

    pub fn direct_sum(&self, other: &GradedObject) -> Result<GradedObject> {
        self.check_group(other)?;
        let grades = self.grades.iter().chain(&other.grades).copied().collect();
        Ok(GradedObject { group: self.group.clone(), grades })
    }

    /// The dual, with basis the dual basis and grades inverted.
    pub fn dual(&self) -> GradedObject {
        let grades = self.grades.iter().map(|&g| self.group.inv(g)).collect();
        GradedObject { group: self.group.clone(), grades }
    }

    /// Whether `matrix: self -> target` vanishes between different grades.
    pub fn is_grade_preserving(&self, target: &GradedObject, matrix: &Matrix) -> bool {
        matrix.rows() == target.dim()
            && matrix.cols() == self.dim()
            && matrix.nonzero_positions().all(|(r, c)| target.grades[r] == self.grades[c])
    }
}

/// A grade-preserving linear map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedMorphism {
    pub source: GradedObject,
    pub target: GradedObject,
    pub matrix: Matrix,
}

impl GradedMorphism {
    pub fn new(source: GradedObject, target: GradedObject, matrix: Matrix) -> Result<Self> {
        source.check_group(&target)?;
        if !source.is_grade_preserving(&target, &matrix) {
            return Err(Error::Precondition("matrix mixes different grades or has the wrong shape".into()));
        }
        Ok(GradedMorphism { source, target, matrix })
    }

    pub fn identity(field: Field, object: &GradedObject) -> Self {
        GradedMorphism { source: object.clone(), target: object.clone(), matrix: Matrix::identity(field, object.dim()) }
    }

    /// `self o first`.
    pub fn compose(&self, first: &GradedMorphism) -> Result<GradedMorphism> {
        if first.target != self.source {
            return Err(Error::DimensionMismatch("composable morphisms need matching objects".into()));
        }
        Ok(GradedMorphism { source: first.source.clone(), target: self.target.clone(), matrix: &self.matrix * &first.matrix })
    }

    pub fn tensor(&self, other: &GradedMorphism) -> Result<GradedMorphism> {
        Ok(GradedMorphism {
            source: self.source.tensor(&other.source)?,
            target: self.target.tensor(&other.target)?,
            matrix: self.matrix.kron(&other.matrix),
        })
    }
}

/// A dual object with evaluation and coevaluation on both sides, and the outcome of
/// the four zigzag identities.
#[derive(Clone, Debug)]
pub struct DualityWitness {
    pub dual: GradedObject,
    /// `u* (x) u -> 1`.
    pub ev: GradedMorphism,
    /// `1 -> u (x) u*`.
    pub coev: GradedMorphism,
    /// `u (x) u* -> 1`.
    pub ev_right: GradedMorphism,
    /// `1 -> u* (x) u`.
    pub coev_right: GradedMorphism,
    pub report: ZigzagReport,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ZigzagReport {
    /// `(id_u (x) ev)(coev (x) id_u) = id_u`.
    pub left_on_object: bool,
    /// `(ev (x) id_u*)(id_u* (x) coev) = id_u*`.
    pub left_on_dual: bool,
    /// `(ev' (x) id_u)(id_u (x) coev') = id_u`.
    pub right_on_object: bool,
    /// `(id_u* (x) ev')(coev' (x) id_u*) = id_u*`.
    pub right_on_dual: bool,
}

impl ZigzagReport {
    pub fn all(&self) -> bool {
        self.left_on_object && self.left_on_dual && self.right_on_object && self.right_on_dual
    }
}

/// The canonical dual of `u` with both pairs of structure maps and their zigzag checks.
pub fn dual_object_with_zigzag(field: Field, u: &GradedObject) -> Result<DualityWitness> {
    let n = u.dim();
    let dual = u.dual();
    let unit = GradedObject::unit(u.group.clone());
    // Pairing/copairing: basis pair (i, j) sits at index i * n + j in either tensor order.
    let pairing = Matrix::from_fn(field, 1, n * n, |_, c| if c / n == c % n { field.one() } else { field.zero() });
    let copairing = pairing.transpose();
    let ev = GradedMorphism::new(dual.tensor(u)?, unit.clone(), pairing.clone())?;
    let coev = GradedMorphism::new(unit.clone(), u.tensor(&dual)?, copairing.clone())?;
    let ev_right = GradedMorphism::new(u.tensor(&dual)?, unit.clone(), pairing)?;
    let coev_right = GradedMorphism::new(unit, dual.tensor(u)?, copairing)?;

    let id = Matrix::identity(field, n);
    let left_on_object = &id.kron(&ev.matrix) * &coev.matrix.kron(&id) == id;
    let left_on_dual = &ev.matrix.kron(&id) * &id.kron(&coev.matrix) == id;
    let right_on_object = &ev_right.matrix.kron(&id) * &id.kron(&coev_right.matrix) == id;
    let right_on_dual = &id.kron(&ev_right.matrix) * &coev_right.matrix.kron(&id) == id;
    let report = ZigzagReport { left_on_object, left_on_dual, right_on_object, right_on_dual };
    Ok(DualityWitness { dual, ev, coev, ev_right, coev_right, report })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z2() -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::cyclic(2).unwrap())
    }

    #[test]
    fn tensor_dimensions_convolve() {
        let g = z2();
        let u = GradedObject::from_dims(g.clone(), &[1, 1]).unwrap();
        assert_eq!(u.tensor(&u).unwrap().dims(), vec![2, 2]);
        let one = GradedObject::unit(g.clone());
        assert_eq!(one.tensor(&u).unwrap(), u);
        assert_eq!(u.tensor(&one).unwrap(), u);
        let s3 = Arc::new(FiniteGroup::symmetric(3).unwrap());
        for a in s3.elements() {
            for b in s3.elements() {
                let t = GradedObject::simple(s3.clone(), a).tensor(&GradedObject::simple(s3.clone(), b)).unwrap();
                assert_eq!(t, GradedObject::simple(s3.clone(), s3.mul(a, b)));
            }
        }
        assert!(u.tensor(&GradedObject::unit(s3)).is_err());
    }

    #[test]
    fn duals_and_zigzags() {
        let q = Field::Rational;
        let g = z2();
        let u = GradedObject::from_dims(g.clone(), &[2, 1]).unwrap();
        let w = dual_object_with_zigzag(q, &u).unwrap();
        assert_eq!(w.dual.dims(), vec![2, 1]);
        assert!(w.report.all());
        assert_eq!(w.dual.dual(), u);

        let c3 = Arc::new(FiniteGroup::cyclic(3).unwrap());
        let k1 = GradedObject::simple(c3.clone(), 1);
        let w = dual_object_with_zigzag(q, &k1).unwrap();
        assert_eq!(w.dual, GradedObject::simple(c3.clone(), 2));
        assert!(w.report.all());
        let one = GradedObject::unit(c3);
        assert_eq!(dual_object_with_zigzag(q, &one).unwrap().dual, one);
    }

    #[test]
    fn grade_preservation_is_enforced() {
        let q = Field::Rational;
        let g = z2();
        let u = GradedObject::from_dims(g.clone(), &[1, 1]).unwrap();
        let swap = Matrix::from_i64(q, 2, 2, &[0, 1, 1, 0]);
        assert!(GradedMorphism::new(u.clone(), u.clone(), swap).is_err());
        let diag = Matrix::from_i64(q, 2, 2, &[3, 0, 0, 5]);
        let f = GradedMorphism::new(u.clone(), u.clone(), diag).unwrap();
        assert!(f.compose(&f).is_ok());
        assert!(f.tensor(&f).unwrap().source.is_grade_preserving(&f.tensor(&f).unwrap().target, &f.tensor(&f).unwrap().matrix));
    }
}
