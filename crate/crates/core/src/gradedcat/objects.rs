use std::sync::Arc;

use super::{same_group, GradedObject};
use crate::algebra::{group_algebra, solve_intertwiners, AlgBimodule, AlgModule, AxiomViolation, FinAlgebra, Side};
use crate::error::{Error, Result};
use crate::exactla::{Field, Matrix, Scalar};
use crate::groups::FiniteGroup;

/// An algebra object in `Vect[K]`: an algebra whose basis vectors carry grades
/// compatible with the multiplication.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedAlgebra {
    algebra: Arc<FinAlgebra>,
    grading: GradedObject,
}

impl GradedAlgebra {
    pub fn new(algebra: Arc<FinAlgebra>, grading: GradedObject) -> Result<Self> {
        if grading.dim() != algebra.dim() {
            return Err(Error::DimensionMismatch(format!("{} grades for an algebra of dimension {}", grading.dim(), algebra.dim())));
        }
        Ok(GradedAlgebra { algebra, grading })
    }

    /// The tensor unit as an algebra: `k` in grade `e`.
    pub fn unit(group: Arc<FiniteGroup>, field: Field) -> Self {
        GradedAlgebra { algebra: Arc::new(FinAlgebra::ground(field)), grading: GradedObject::unit(group) }
    }

    /// `k[K]` with the basis vector of `g` placed in grade `g`.
    pub fn group_algebra(group: Arc<FiniteGroup>, field: Field) -> Self {
        let algebra = Arc::new(group_algebra(&group, field).algebra);
        let grading = GradedObject::new(group.clone(), group.elements().collect()).expect("valid grades");
        GradedAlgebra { algebra, grading }
    }

    /// `k[K]` with every basis vector placed in grade `e`.
    pub fn group_algebra_trivially_graded(group: Arc<FiniteGroup>, field: Field) -> Self {
        let algebra = Arc::new(group_algebra(&group, field).algebra);
        let grading = GradedObject::new(group.clone(), vec![group.identity(); group.order()]).expect("valid grades");
        GradedAlgebra { algebra, grading }
    }

    pub fn algebra(&self) -> &Arc<FinAlgebra> {
        &self.algebra
    }

    pub fn grading(&self) -> &GradedObject {
        &self.grading
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        self.grading.group()
    }

    pub fn field(&self) -> Field {
        self.algebra.field()
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn grade(&self, i: usize) -> usize {
        self.grading.grade(i)
    }

    pub fn with_structure_constant(&self, i: usize, j: usize, k: usize, value: Scalar) -> Self {
        GradedAlgebra { algebra: Arc::new(self.algebra.with_structure_constant(i, j, k, value)), grading: self.grading.clone() }
    }

    /// Algebra axioms, then homogeneity of the structure constants and of the unit.
    pub fn validate(&self) -> std::result::Result<(), AxiomViolation> {
        self.algebra.validate()?;
        let group = self.group();
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                let g = group.mul(self.grade(i), self.grade(j));
                if let Some((k, _)) = self.algebra.product(i, j).iter().find(|(k, _)| self.grade(*k) != g) {
                    return Err(AxiomViolation::Grading { i, j, k: *k });
                }
            }
        }
        if let Some(i) = (0..self.dim()).find(|&i| !self.algebra.unit()[i].is_zero() && self.grade(i) != group.identity()) {
            return Err(AxiomViolation::UnitGrading { i });
        }
        Ok(())
    }
}

/// A left or right module object over a graded algebra.
///
/// Left modules over `A` model the right `C`-module category `M`; right modules over `B`
/// model the left `C`-module category `N`.
#[derive(Clone, Debug)]
pub struct GradedModule {
    algebra: Arc<GradedAlgebra>,
    module: AlgModule,
    grading: GradedObject,
}

fn check_action_grading(
    algebra: &GradedAlgebra,
    side: Side,
    grading: &GradedObject,
    action: &[Matrix],
) -> std::result::Result<(), AxiomViolation> {
    let group = algebra.group();
    for (i, m) in action.iter().enumerate() {
        for (r, c) in m.nonzero_positions() {
            let expected = match side {
                Side::Left => group.mul(algebra.grade(i), grading.grade(c)),
                Side::Right => group.mul(grading.grade(c), algebra.grade(i)),
            };
            if grading.grade(r) != expected {
                return Err(AxiomViolation::Grading { i, j: c, k: r });
            }
        }
    }
    Ok(())
}

impl GradedModule {
    pub fn new(algebra: Arc<GradedAlgebra>, side: Side, grading: GradedObject, action: Vec<Matrix>) -> Result<Self> {
        let module = AlgModule::new(algebra.algebra.clone(), side, grading.dim(), action)?;
        Self::from_parts(algebra, module, grading)
    }

    pub fn from_parts(algebra: Arc<GradedAlgebra>, module: AlgModule, grading: GradedObject) -> Result<Self> {
        if !Arc::ptr_eq(module.algebra(), &algebra.algebra) && **module.algebra() != *algebra.algebra {
            return Err(Error::AlgebraMismatch("module is over a different algebra".into()));
        }
        if module.dim() != grading.dim() {
            return Err(Error::DimensionMismatch(format!("module of dimension {} with {} grades", module.dim(), grading.dim())));
        }
        grading.check_group(&algebra.grading)?;
        Ok(GradedModule { algebra, module, grading })
    }

    pub fn regular(algebra: Arc<GradedAlgebra>, side: Side) -> Self {
        let module = AlgModule::regular(algebra.algebra.clone(), side);
        let grading = algebra.grading.clone();
        GradedModule { algebra, module, grading }
    }

    pub fn zero(algebra: Arc<GradedAlgebra>, side: Side) -> Self {
        let module = AlgModule::zero(algebra.algebra.clone(), side);
        let grading = GradedObject::zero(algebra.group().clone());
        GradedModule { algebra, module, grading }
    }

    /// Sum of shifted regular modules: `k_g (x) B` for right modules, `A (x) k_g` for left ones.
    pub fn free(algebra: Arc<GradedAlgebra>, side: Side, shifts: &[usize]) -> Result<Self> {
        let group = algebra.group().clone();
        let regular = Self::regular(algebra.clone(), side);
        let mut out = Self::zero(algebra, side);
        for &g in shifts {
            if g >= group.order() {
                return Err(Error::InvalidModule(format!("shift {g} is not a group element")));
            }
            out = out.direct_sum(&regular.act(&GradedObject::simple(group.clone(), g))?)?;
        }
        Ok(out)
    }

    pub fn algebra(&self) -> &Arc<GradedAlgebra> {
        &self.algebra
    }

    pub fn module(&self) -> &AlgModule {
        &self.module
    }

    pub fn grading(&self) -> &GradedObject {
        &self.grading
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        self.grading.group()
    }

    pub fn field(&self) -> Field {
        self.module.field()
    }

    pub fn side(&self) -> Side {
        self.module.side()
    }

    pub fn dim(&self) -> usize {
        self.module.dim()
    }

    pub fn grade(&self, i: usize) -> usize {
        self.grading.grade(i)
    }

    pub fn action(&self, i: usize) -> &Matrix {
        self.module.action(i)
    }

    pub fn validate(&self) -> std::result::Result<(), AxiomViolation> {
        self.module.validate()?;
        check_action_grading(&self.algebra, self.side(), &self.grading, self.module.actions())
    }

    pub fn direct_sum(&self, other: &GradedModule) -> Result<GradedModule> {
        Ok(GradedModule {
            algebra: self.algebra.clone(),
            module: self.module.direct_sum(&other.module)?,
            grading: self.grading.direct_sum(&other.grading)?,
        })
    }

    /// The `C`-action: `c (x) m` for right modules (the algebra acts on the right
    /// factor) and `m (x) c` for left modules.
    pub fn act(&self, c: &GradedObject) -> Result<GradedModule> {
        let id = Matrix::identity(self.field(), c.dim());
        let (grading, action): (GradedObject, Vec<Matrix>) = match self.side() {
            Side::Right => (c.tensor(&self.grading)?, self.module.actions().iter().map(|r| id.kron(r)).collect()),
            Side::Left => (self.grading.tensor(c)?, self.module.actions().iter().map(|l| l.kron(&id)).collect()),
        };
        Self::new(self.algebra.clone(), self.side(), grading, action)
    }

    pub(crate) fn check_compatible(&self, other: &GradedModule) -> Result<()> {
        if !same_group(self.group(), other.group()) {
            return Err(Error::GroupMismatch);
        }
        if *self.algebra != *other.algebra {
            return Err(Error::AlgebraMismatch("graded modules over different algebra objects".into()));
        }
        if self.side() != other.side() {
            return Err(Error::SideMismatch(format!("{:?} vs {:?}", self.side(), other.side())));
        }
        Ok(())
    }

    /// Grade-preserving module maps `self -> other`.
    pub fn hom_space(&self, other: &GradedModule) -> Result<Vec<Matrix>> {
        self.check_compatible(other)?;
        let pairs: Vec<(&Matrix, &Matrix)> =
            self.algebra.algebra.generators().iter().map(|&s| (self.action(s), other.action(s))).collect();
        Ok(solve_intertwiners(self.field(), self.dim(), other.dim(), &pairs, |r, c| other.grade(r) == self.grade(c)))
    }

    /// Whether `f: self -> other` is a grade-preserving module map.
    pub fn is_morphism(&self, other: &GradedModule, f: &Matrix) -> bool {
        self.grading.is_grade_preserving(&other.grading, f)
            && (0..self.algebra.dim()).all(|i| f * self.action(i) == other.action(i) * f)
    }
}

/// An `A`-`B`-bimodule object.
#[derive(Clone, Debug)]
pub struct GradedBimodule {
    left_algebra: Arc<GradedAlgebra>,
    right_algebra: Arc<GradedAlgebra>,
    bimodule: AlgBimodule,
    grading: GradedObject,
}

impl GradedBimodule {
    pub fn new(
        left_algebra: Arc<GradedAlgebra>,
        right_algebra: Arc<GradedAlgebra>,
        grading: GradedObject,
        left_action: Vec<Matrix>,
        right_action: Vec<Matrix>,
    ) -> Result<Self> {
        if !same_group(left_algebra.group(), right_algebra.group()) || !same_group(left_algebra.group(), grading.group()) {
            return Err(Error::GroupMismatch);
        }
        let dim = grading.dim();
        let left = AlgModule::new(left_algebra.algebra.clone(), Side::Left, dim, left_action)?;
        let right = AlgModule::new(right_algebra.algebra.clone(), Side::Right, dim, right_action)?;
        let bimodule = AlgBimodule::new(left, right)?;
        Ok(GradedBimodule { left_algebra, right_algebra, bimodule, grading })
    }

    pub fn zero(left_algebra: Arc<GradedAlgebra>, right_algebra: Arc<GradedAlgebra>) -> Self {
        let field = left_algebra.field();
        let grading = GradedObject::zero(left_algebra.group().clone());
        let la = vec![Matrix::zeros(field, 0, 0); left_algebra.dim()];
        let ra = vec![Matrix::zeros(field, 0, 0); right_algebra.dim()];
        Self::new(left_algebra, right_algebra, grading, la, ra).expect("well-formed")
    }

    pub fn left_algebra(&self) -> &Arc<GradedAlgebra> {
        &self.left_algebra
    }

    pub fn right_algebra(&self) -> &Arc<GradedAlgebra> {
        &self.right_algebra
    }

    pub fn grading(&self) -> &GradedObject {
        &self.grading
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        self.grading.group()
    }

    pub fn field(&self) -> Field {
        self.left_algebra.field()
    }

    pub fn dim(&self) -> usize {
        self.grading.dim()
    }

    pub fn grade(&self, i: usize) -> usize {
        self.grading.grade(i)
    }

    pub fn left_action(&self, i: usize) -> &Matrix {
        self.bimodule.as_left().action(i)
    }

    pub fn right_action(&self, j: usize) -> &Matrix {
        self.bimodule.as_right().action(j)
    }

    pub fn left_actions(&self) -> &[Matrix] {
        self.bimodule.as_left().actions()
    }

    pub fn right_actions(&self) -> &[Matrix] {
        self.bimodule.as_right().actions()
    }

    pub fn as_left_module(&self) -> GradedModule {
        GradedModule { algebra: self.left_algebra.clone(), module: self.bimodule.as_left().clone(), grading: self.grading.clone() }
    }

    pub fn as_right_module(&self) -> GradedModule {
        GradedModule { algebra: self.right_algebra.clone(), module: self.bimodule.as_right().clone(), grading: self.grading.clone() }
    }

    pub fn validate(&self) -> std::result::Result<(), AxiomViolation> {
        self.bimodule.validate()?;
        check_action_grading(&self.left_algebra, Side::Left, &self.grading, self.left_actions())?;
        check_action_grading(&self.right_algebra, Side::Right, &self.grading, self.right_actions())
    }

    pub fn direct_sum(&self, other: &GradedBimodule) -> Result<GradedBimodule> {
        self.check_compatible(other)?;
        let la = self.left_actions().iter().zip(other.left_actions()).map(|(a, b)| a.direct_sum(b)).collect();
        let ra = self.right_actions().iter().zip(other.right_actions()).map(|(a, b)| a.direct_sum(b)).collect();
        Self::new(self.left_algebra.clone(), self.right_algebra.clone(), self.grading.direct_sum(&other.grading)?, la, ra)
    }

    pub(crate) fn check_compatible(&self, other: &GradedBimodule) -> Result<()> {
        if !same_group(self.group(), other.group()) {
            return Err(Error::GroupMismatch);
        }
        if *self.left_algebra != *other.left_algebra || *self.right_algebra != *other.right_algebra {
            return Err(Error::AlgebraMismatch("bimodules over different algebra objects".into()));
        }
        Ok(())
    }

    /// Grade-preserving bimodule maps `self -> other`.
    pub fn hom_space(&self, other: &GradedBimodule) -> Result<Vec<Matrix>> {
        self.check_compatible(other)?;
        let mut pairs: Vec<(&Matrix, &Matrix)> = Vec::new();
        for &s in self.left_algebra.algebra.generators() {
            pairs.push((self.left_action(s), other.left_action(s)));
        }
        for &s in self.right_algebra.algebra.generators() {
            pairs.push((self.right_action(s), other.right_action(s)));
        }
        Ok(solve_intertwiners(self.field(), self.dim(), other.dim(), &pairs, |r, c| other.grade(r) == self.grade(c)))
    }

    pub fn is_morphism(&self, other: &GradedBimodule, f: &Matrix) -> bool {
        self.grading.is_grade_preserving(&other.grading, f)
            && (0..self.left_algebra.dim()).all(|i| f * self.left_action(i) == other.left_action(i) * f)
            && (0..self.right_algebra.dim()).all(|j| f * self.right_action(j) == other.right_action(j) * f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z2() -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::cyclic(2).unwrap())
    }

    #[test]
    fn graded_algebras_validate() {
        let q = Field::Rational;
        let g = z2();
        let ka = GradedAlgebra::group_algebra(g.clone(), q);
        assert!(ka.validate().is_ok());
        assert!(GradedAlgebra::unit(g.clone(), q).validate().is_ok());
        let flat = GradedAlgebra::group_algebra_trivially_graded(g.clone(), q);
        assert!(flat.validate().is_ok());
        assert_ne!(flat, ka);
        assert_eq!(flat.algebra(), ka.algebra());
        // Wrong grading: k[Z/2] with the generator in grade e but the identity in grade g.
        let bad = GradedAlgebra::new(ka.algebra().clone(), GradedObject::new(g, vec![1, 0]).unwrap()).unwrap();
        assert!(bad.validate().is_err());
    }

    #[test]
    fn shifted_free_module() {
        let q = Field::Rational;
        let g = z2();
        let b = Arc::new(GradedAlgebra::group_algebra(g.clone(), q));
        let shifted = GradedModule::free(b.clone(), Side::Right, &[1]).unwrap();
        assert!(shifted.validate().is_ok());
        // k_g (x) B: basis g (x) e_e in grade g, g (x) e_g in grade e.
        assert_eq!(shifted.grading().grades(), &[1, 0]);
        assert_eq!(shifted.action(1), &Matrix::from_i64(q, 2, 2, &[0, 1, 1, 0]));

        let one = GradedObject::unit(g.clone());
        let reg = GradedModule::regular(b.clone(), Side::Right);
        let acted = reg.act(&one).unwrap();
        assert_eq!(acted.grading(), reg.grading());
        assert_eq!(acted.module().actions(), reg.module().actions());

        let kg = GradedObject::simple(g.clone(), 1);
        let twice = reg.act(&kg).unwrap().act(&kg).unwrap();
        let once = reg.act(&kg.tensor(&kg).unwrap()).unwrap();
        assert_eq!(twice.grading(), once.grading());
        assert_eq!(twice.module().actions(), once.module().actions());
    }

    #[test]
    fn graded_homs_respect_grading() {
        let q = Field::Rational;
        let g = z2();
        let b = Arc::new(GradedAlgebra::group_algebra(g.clone(), q));
        let reg = GradedModule::regular(b.clone(), Side::Right);
        assert_eq!(reg.hom_space(&reg).unwrap().len(), 1);
        let shifted = GradedModule::free(b.clone(), Side::Right, &[1]).unwrap();
        assert_eq!(reg.hom_space(&shifted).unwrap().len(), 1);
        let flat = Arc::new(GradedAlgebra::group_algebra_trivially_graded(g, q));
        let freg = GradedModule::regular(flat, Side::Right);
        assert_eq!(freg.hom_space(&freg).unwrap().len(), 2);
    }
}
