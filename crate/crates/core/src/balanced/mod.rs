//! `M (x)_C N` for `C = Vect[K]`, `M` = left `A`-module objects and `N` = right
//! `B`-module objects, realized as `A`-`B`-bimodule objects.
//!
//! Simples are counted on the enveloping algebra `E`, whose left modules are exactly
//! the graded bimodules. Coherence of the canonical balanced functor is checked by
//! explicit basis tracking, and right-exact functors out of the bimodule category are
//! represented by bimodules `W` over `E` (`X |-> W (x)_E X`).

mod coherence;
mod enveloping;
mod extension;

use std::sync::{Arc, OnceLock};

use serde::Serialize;

pub use coherence::{canonical_balancing, pentagon_instance, triangle_instance, BalancingWitness, CoherenceReport};
pub use enveloping::EnvelopingAlgebra;
pub use extension::{
    coequalizer_presentation, corner_bimodule, extend_balanced_functor, CoequalizerReport, Extension, ExtensionReport,
    RepresentedFunctor,
};

use crate::algebra::{FinAlgebra, Side, Splitting};
use crate::error::{Error, Result};
use crate::exactla::{Field, Matrix};
use crate::gradedcat::{same_group, ExactnessReport, GradedAlgebra, GradedBimodule, GradedModule, ShortExactSequence};
use crate::groups::{FiniteGroup, GroupKind};
use crate::modcat::InternalHom;

/// `Bimod_{A,B}(Vect[K])` with its enveloping algebra.
#[derive(Debug)]
pub struct BalancedProduct {
    pub a: Arc<GradedAlgebra>,
    pub b: Arc<GradedAlgebra>,
    pub enveloping: EnvelopingAlgebra,
    simple_count: OnceLock<Option<usize>>,
}

impl BalancedProduct {
    pub fn new(a: Arc<GradedAlgebra>, b: Arc<GradedAlgebra>) -> Result<Self> {
        for (name, alg) in [("A", &a), ("B", &b)] {
            alg.validate().map_err(|e| Error::InvalidAlgebra(format!("{name}: {e}")))?;
        }
        let enveloping = EnvelopingAlgebra::new(a.clone(), b.clone())?;
        enveloping.algebra.validate().map_err(|e| Error::InvalidAlgebra(format!("enveloping algebra: {e}")))?;
        Ok(BalancedProduct { a, b, enveloping, simple_count: OnceLock::new() })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        self.a.group()
    }

    pub fn field(&self) -> Field {
        self.a.field()
    }

    /// Number of simple objects of the balanced product.
    ///
    /// With [`Splitting::Verify`] the count is cached once certified.
    pub fn simple_count(&self, splitting: Splitting) -> Result<usize> {
        if let Some(Some(n)) = self.simple_count.get() {
            return Ok(*n);
        }
        let n = self.enveloping.algebra.split_simple_count(splitting);
        if splitting == Splitting::Verify {
            let _ = self.simple_count.set(n.as_ref().ok().copied());
        }
        n
    }

    pub fn box_object(&self, x: &GradedModule, y: &GradedModule) -> Result<GradedBimodule> {
        if *x.algebra() != self.a || *y.algebra() != self.b {
            return Err(Error::AlgebraMismatch("box factors must be over A and B".into()));
        }
        box_object(x, y)
    }
}

/// Whether `field` is known in advance to split group-algebra-type enveloping algebras
/// for `group`: rationals for symmetric groups and groups of exponent at most 2, `F_p`
/// for `p` coprime to `|K|` with `p = 1 mod exponent`.
///
/// This is only a policy for callers that want to skip verification; counts are
/// otherwise certified with [`Splitting::Verify`].
pub fn splitting_policy(group: &FiniteGroup, field: Field) -> Splitting {
    let exponent = group.exponent() as u64;
    let split = match field {
        Field::Rational => matches!(group.kind(), GroupKind::Symmetric(_)) || exponent <= 2,
        Field::Prime(p) => !(group.order() as u64).is_multiple_of(p) && (p - 1) % exponent == 0,
    };
    if split {
        Splitting::Asserted
    } else {
        Splitting::Verify
    }
}

/// `x (x) y` with `A` acting on the left factor and `B` on the right factor.
pub fn box_object(x: &GradedModule, y: &GradedModule) -> Result<GradedBimodule> {
    if x.side() != Side::Left || y.side() != Side::Right {
        return Err(Error::SideMismatch("box needs a left A-module and a right B-module".into()));
    }
    if !same_group(x.group(), y.group()) {
        return Err(Error::GroupMismatch);
    }
    let field = x.field();
    let (ix, iy) = (Matrix::identity(field, x.dim()), Matrix::identity(field, y.dim()));
    let left = x.module().actions().iter().map(|l| l.kron(&iy)).collect();
    let right = y.module().actions().iter().map(|r| ix.kron(r)).collect();
    GradedBimodule::new(x.algebra().clone(), y.algebra().clone(), x.grading().tensor(y.grading())?, left, right)
}

/// The two sides of `Hom(x [] y, x' [] y') = Hom_C(1, IHom(x, x') (x) IHom(y, y'))`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct HomFormulaReport {
    pub lhs: usize,
    pub rhs: usize,
}

impl HomFormulaReport {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// `lhs` solves for bimodule intertwiners directly; `rhs` sums
/// `dim IHom(x, x')_g * dim IHom(y, y')_{g^-1}` over `g`.
pub fn hom_formula_check(x: &GradedModule, x2: &GradedModule, y: &GradedModule, y2: &GradedModule) -> Result<HomFormulaReport> {
    let lhs = box_object(x, y)?.hom_space(&box_object(x2, y2)?)?.len();
    let (hx, hy) = (InternalHom::new(x, x2)?.dims(), InternalHom::new(y, y2)?.dims());
    let group = x.group();
    let rhs = group.elements().map(|g| hx[g] * hy[group.inv(g)]).sum();
    Ok(HomFormulaReport { lhs, rhs })
}

/// The plain Deligne product of two ordinary algebras: `A1 (x) A2`.
pub fn deligne_product_plain(a1: &FinAlgebra, a2: &FinAlgebra) -> Result<FinAlgebra> {
    a1.tensor(a2)
}

/// Applies `- [] y` to a sequence of left `A`-modules.
pub fn box_sequence_left(seq: &ShortExactSequence, y: &GradedModule) -> Result<ExactnessReport> {
    let iy = Matrix::identity(y.field(), y.dim());
    let objects = [box_object(&seq.sub, y)?, box_object(&seq.middle, y)?, box_object(&seq.quotient, y)?];
    Ok(sequence_report(&objects, &seq.inclusion.kron(&iy), &seq.projection.kron(&iy)))
}

/// Applies `x [] -` to a sequence of right `B`-modules.
pub fn box_sequence_right(x: &GradedModule, seq: &ShortExactSequence) -> Result<ExactnessReport> {
    let ix = Matrix::identity(x.field(), x.dim());
    let objects = [box_object(x, &seq.sub)?, box_object(x, &seq.middle)?, box_object(x, &seq.quotient)?];
    Ok(sequence_report(&objects, &ix.kron(&seq.inclusion), &ix.kron(&seq.projection)))
}

fn sequence_report(objects: &[GradedBimodule; 3], inclusion: &Matrix, projection: &Matrix) -> ExactnessReport {
    let [s, m, q] = objects;
    ExactnessReport {
        dims: [s.dim(), m.dim(), q.dim()],
        inclusion_rank: inclusion.rank(),
        projection_rank: projection.rank(),
        composite_zero: (projection * inclusion).is_zero(),
        maps_are_morphisms: s.is_morphism(m, inclusion) && m.is_morphism(q, projection),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Semisimplicity;
    use crate::exactla::Vector;
    use crate::gradedcat::GradedObject;

    fn q() -> Field {
        Field::Rational
    }

    fn group_algebra(g: &Arc<FiniteGroup>, field: Field) -> Arc<GradedAlgebra> {
        Arc::new(GradedAlgebra::group_algebra(g.clone(), field))
    }

    #[test]
    fn box_of_regulars_is_free() {
        let g = Arc::new(FiniteGroup::cyclic(2).unwrap());
        let a = group_algebra(&g, q());
        let x = GradedModule::regular(a.clone(), Side::Left);
        let y = GradedModule::regular(a.clone(), Side::Right);
        let free = box_object(&x, &y).unwrap();
        assert!(free.validate().is_ok());
        assert_eq!(free.dim(), 4);
        assert_eq!(free.grading().dims(), vec![2, 2]);
        let zero = box_object(&GradedModule::zero(a.clone(), Side::Left), &y).unwrap();
        assert_eq!(zero.dim(), 0);
        assert!(box_object(&y, &x).is_err());
    }

    #[test]
    fn box_dims_convolve() {
        let g = Arc::new(FiniteGroup::cyclic(2).unwrap());
        let u = Arc::new(GradedAlgebra::unit(g.clone(), q()));
        let obj = GradedObject::from_dims(g.clone(), &[1, 1]).unwrap();
        let x = GradedModule::regular(u.clone(), Side::Left).act(&obj).unwrap();
        let y = GradedModule::regular(u.clone(), Side::Right).act(&obj).unwrap();
        assert_eq!(box_object(&x, &y).unwrap().grading().dims(), vec![2, 2]);
    }

    #[test]
    fn hom_formula_examples() {
        for (g, expected) in [(FiniteGroup::cyclic(2).unwrap(), 2), (FiniteGroup::symmetric(3).unwrap(), 6)] {
            let g = Arc::new(g);
            let a = group_algebra(&g, q());
            let x = GradedModule::regular(a.clone(), Side::Left);
            let y = GradedModule::regular(a.clone(), Side::Right);
            let r = hom_formula_check(&x, &x, &y, &y).unwrap();
            assert_eq!((r.lhs, r.rhs), (expected, expected));
            let zero = GradedModule::zero(a.clone(), Side::Left);
            assert_eq!(hom_formula_check(&x, &zero, &y, &y).unwrap(), HomFormulaReport { lhs: 0, rhs: 0 });
        }
    }

    #[test]
    fn simple_counts() {
        let z2 = Arc::new(FiniteGroup::cyclic(2).unwrap());
        let s3 = Arc::new(FiniteGroup::symmetric(3).unwrap());
        for g in [&z2, &s3] {
            let u = Arc::new(GradedAlgebra::unit(g.clone(), q()));
            let bp = BalancedProduct::new(u.clone(), u).unwrap();
            assert_eq!(bp.simple_count(Splitting::Verify).unwrap(), g.order());
        }
        let a = group_algebra(&z2, q());
        let bp = BalancedProduct::new(a.clone(), a).unwrap();
        assert_eq!(bp.simple_count(Splitting::Verify).unwrap(), 2);
        assert_eq!(bp.simple_count(Splitting::Verify).unwrap(), 2);
    }

    #[test]
    fn splitting_policy_cases() {
        let z3 = FiniteGroup::cyclic(3).unwrap();
        assert_eq!(splitting_policy(&z3, Field::Rational), Splitting::Verify);
        assert_eq!(splitting_policy(&z3, Field::prime(7).unwrap()), Splitting::Asserted);
        assert_eq!(splitting_policy(&z3, Field::prime(5).unwrap()), Splitting::Verify);
        assert_eq!(splitting_policy(&FiniteGroup::symmetric(3).unwrap(), Field::Rational), Splitting::Asserted);
    }

    #[test]
    fn deligne_product_counts_multiply() {
        let z2 = FiniteGroup::cyclic(2).unwrap();
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let a1 = crate::algebra::group_algebra(&z2, q()).algebra;
        let a2 = crate::algebra::group_algebra(&s3, q()).algebra;
        let p = deligne_product_plain(&a1, &a2).unwrap();
        assert_eq!(p.dim(), 12);
        assert_eq!(p.semisimplicity_certificate(), Semisimplicity::Certified);
        assert_eq!(p.split_simple_count(Splitting::Verify).unwrap(), 6);
        let m2 = FinAlgebra::matrix_algebra(q(), 2);
        let m4 = deligne_product_plain(&m2, &m2).unwrap();
        assert_eq!(m4.dim(), 16);
        assert_eq!(m4.center_basis().len(), 1);
        let k = FinAlgebra::ground(q());
        assert_eq!(deligne_product_plain(&k, &a2).unwrap(), a2);
    }

    #[test]
    fn boxing_a_sequence_stays_exact() {
        // 0 -> k -> F_2[Z2] -> k -> 0 does not split, trivially graded.
        let f2 = Field::prime(2).unwrap();
        let g = Arc::new(FiniteGroup::cyclic(2).unwrap());
        let flat = Arc::new(GradedAlgebra::group_algebra_trivially_graded(g.clone(), f2));
        let one = f2.one();
        let norm: Vector = vec![one.clone(), one];
        for side in [Side::Left, Side::Right] {
            let reg = GradedModule::regular(flat.clone(), side);
            let seq = ShortExactSequence::from_submodule(&reg, std::slice::from_ref(&norm)).unwrap();
            assert!(!seq.splits().unwrap());
            let other = GradedModule::regular(flat.clone(), side.flip());
            let report = match side {
                Side::Left => box_sequence_left(&seq, &other).unwrap(),
                Side::Right => box_sequence_right(&other, &seq).unwrap(),
            };
            assert!(report.is_exact());
            assert_eq!(report.dims, [2, 4, 2]);
        }
    }
}
