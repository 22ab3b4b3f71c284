use std::sync::Arc;

use serde::Serialize;

use super::module::{hom_space, tensor_over_algebra, AlgModule, Side};
use super::FinAlgebra;
use crate::error::{Error, Result};
use crate::exactla::{sparse_from_dense, BasisCoordinates, Matrix};

/// `End_A(p)` with product `a * b := b o a`, and the data needed to test reconstruction.
#[derive(Clone, Debug)]
pub struct EndomorphismAlgebra {
    pub algebra: Arc<FinAlgebra>,
    /// The intertwiner matrices, one per basis element of `algebra`.
    pub basis: Vec<Matrix>,
    generator: AlgModule,
    coords: BasisCoordinates,
}

/// Rank bookkeeping for the evaluation map `p (x)_End Hom_A(p, x) -> x`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CounitCheck {
    pub tensor_dim: usize,
    pub target_dim: usize,
    pub rank: usize,
    /// Evaluation vanishes on the balancing relations.
    pub descends: bool,
}

impl CounitCheck {
    pub fn is_iso(&self) -> bool {
        self.descends && self.tensor_dim == self.target_dim && self.rank == self.target_dim
    }
}

/// Builds `End_A(p)` for a nonzero left module `p`.
pub fn endomorphism_algebra_morita(p: &AlgModule) -> Result<EndomorphismAlgebra> {
    if p.side() != Side::Left {
        return Err(Error::SideMismatch("expected a left module".into()));
    }
    if p.dim() == 0 {
        return Err(Error::Precondition("the zero module has no useful endomorphism algebra".into()));
    }
    let field = p.field();
    let basis = hom_space(p, p)?;
    let flat: Vec<_> = basis.iter().map(Matrix::flatten).collect();
    let coords = BasisCoordinates::new(field, p.dim() * p.dim(), &flat)?;
    let r = basis.len();
    let mut products = Vec::with_capacity(r * r);
    for a in &basis {
        for b in &basis {
            let ba = (b * a).flatten();
            products.push(sparse_from_dense(&coords.coords(&ba).expect("closed under composition")));
        }
    }
    let unit = coords.coords(&Matrix::identity(field, p.dim()).flatten()).expect("identity is an endomorphism");
    let algebra = Arc::new(FinAlgebra::new(field, r, products, unit)?);
    Ok(EndomorphismAlgebra { algebra, basis, generator: p.clone(), coords })
}

impl EndomorphismAlgebra {
    /// Coordinates of an endomorphism in the chosen basis.
    pub fn coordinates(&self, f: &Matrix) -> Option<Vec<crate::exactla::Scalar>> {
        self.coords.coords(&f.flatten())
    }

    /// `p` as a right module over the endomorphism algebra: `v . phi = phi(v)`.
    pub fn generator_as_right_module(&self) -> AlgModule {
        AlgModule::new(self.algebra.clone(), Side::Right, self.generator.dim(), self.basis.clone()).expect("shapes agree")
    }

    /// `Hom_A(p, x)` as a left module over the endomorphism algebra, `phi . h = h o phi`,
    /// together with its basis of homomorphisms.
    pub fn hom_from_generator(&self, x: &AlgModule) -> Result<(Vec<Matrix>, AlgModule)> {
        let homs = hom_space(&self.generator, x)?;
        let field = x.field();
        let n = homs.len();
        if n == 0 {
            return Ok((homs, AlgModule::zero(self.algebra.clone(), Side::Left)));
        }
        let flat: Vec<_> = homs.iter().map(Matrix::flatten).collect();
        let coords = BasisCoordinates::new(field, x.dim() * self.generator.dim(), &flat)?;
        let action = self
            .basis
            .iter()
            .map(|phi| {
                let cols: Vec<_> = homs.iter().map(|h| coords.coords(&(h * phi).flatten()).expect("closed")).collect();
                Matrix::from_columns(field, n, &cols)
            })
            .collect();
        let module = AlgModule::new(self.algebra.clone(), Side::Left, n, action)?;
        Ok((homs, module))
    }

    /// Tests whether `p (x)_End Hom_A(p, x) -> x`, `v (x) h -> h(v)`, is an isomorphism.
    pub fn counit_check(&self, x: &AlgModule) -> Result<CounitCheck> {
        let (homs, hom_module) = self.hom_from_generator(x)?;
        let p_right = self.generator_as_right_module();
        let tensor = tensor_over_algebra(&p_right, &hom_module)?;
        let (dp, n) = (self.generator.dim(), homs.len());
        let mut ev = Matrix::zeros(x.field(), x.dim(), dp * n);
        for v in 0..dp {
            for (k, h) in homs.iter().enumerate() {
                for r in 0..x.dim() {
                    ev[(r, v * n + k)] = h[(r, v)].clone();
                }
            }
        }
        let induced = &ev * tensor.section();
        let descends = &induced * tensor.projection() == ev;
        Ok(CounitCheck { tensor_dim: tensor.dim(), target_dim: x.dim(), rank: induced.rank(), descends })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::group_algebra;
    use crate::exactla::Field;
    use crate::groups::FiniteGroup;

    fn s3() -> Arc<FinAlgebra> {
        Arc::new(group_algebra(&FiniteGroup::symmetric(3).unwrap(), Field::Rational).algebra)
    }

    #[test]
    fn regular_generator_recovers_the_algebra() {
        let a = s3();
        let p = AlgModule::regular(a.clone(), Side::Left);
        let end = endomorphism_algebra_morita(&p).unwrap();
        assert!(end.algebra.validate().is_ok());
        assert_eq!(end.algebra.dim(), a.dim());
        // With a * b := b o a the map x -> (right multiplication by x) is multiplicative,
        // so the result is A itself rather than its opposite.
        let image = |x: &Vec<_>| end.coordinates(&a.right_multiplication(x)).unwrap();
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                let (ei, ej) = (a.basis_vector(i), a.basis_vector(j));
                assert_eq!(image(&a.mul(&ei, &ej)), end.algebra.mul(&image(&ei), &image(&ej)));
            }
        }
        let free2 = AlgModule::free(a.clone(), Side::Left, 2);
        for x in [p.clone(), free2, AlgModule::zero(a, Side::Left)] {
            assert!(end.counit_check(&x).unwrap().is_iso());
        }
    }

    #[test]
    fn free_rank_two_gives_matrix_algebra() {
        let q = Field::Rational;
        let a = Arc::new(group_algebra(&FiniteGroup::cyclic(2).unwrap(), q).algebra);
        let p = AlgModule::free(a.clone(), Side::Left, 2);
        let end = endomorphism_algebra_morita(&p).unwrap();
        assert_eq!(end.algebra.dim(), 4 * a.dim());
        assert!(end.algebra.validate().is_ok());
        // M_2(k[Z/2]) has center of dimension 2 and is certified semisimple.
        assert_eq!(end.algebra.center_basis().len(), 2);
        let x = AlgModule::regular(a, Side::Left);
        assert!(end.counit_check(&x).unwrap().is_iso());
    }

    #[test]
    fn zero_generator_is_refused() {
        let p = AlgModule::zero(s3(), Side::Left);
        assert!(matches!(endomorphism_algebra_morita(&p), Err(Error::Precondition(_))));
    }
}
