use std::sync::Arc;

use serde::Serialize;

use super::ihom::InternalHom;
use crate::algebra::{FinAlgebra, Side};
use crate::error::{Error, Result};
use crate::exactla::{cokernel_of_columns, sparse_collect, sparse_from_dense, BasisCoordinates, Cokernel, Matrix, Scalar, Vector};
use crate::gradedcat::{GradedAlgebra, GradedModule, GradedObject, ShortExactSequence};

/// `IHom(p, p)` for a right module object `p`, with product `f . f' = f o f'` (the
/// grade-`g` map composed after the grade-`g'` map lands in grade `gg'`).
#[derive(Clone, Debug)]
pub struct OstrikAlgebra {
    pub algebra: Arc<GradedAlgebra>,
    pub ihom: InternalHom,
    coords: BasisCoordinates,
}

pub fn ostrik_algebra(p: &GradedModule) -> Result<OstrikAlgebra> {
    if p.side() != Side::Right {
        return Err(Error::SideMismatch("the algebra is built for right module objects".into()));
    }
    if p.dim() == 0 {
        return Err(Error::Precondition("p must be nonzero".into()));
    }
    let field = p.field();
    let ihom = InternalHom::new(p, p)?;
    let flat: Vec<Vector> = ihom.maps.iter().map(Matrix::flatten).collect();
    let coords = BasisCoordinates::new(field, p.dim() * p.dim(), &flat)?;
    let r = ihom.maps.len();
    let mut products = Vec::with_capacity(r * r);
    for f in &ihom.maps {
        for g in &ihom.maps {
            let fg = (f * g).flatten();
            products.push(sparse_from_dense(&coords.coords(&fg).expect("composition stays in the internal hom")));
        }
    }
    let unit = coords.coords(&Matrix::identity(field, p.dim()).flatten()).expect("identity is classified");
    let algebra = Arc::new(GradedAlgebra::new(Arc::new(FinAlgebra::new(field, r, products, unit)?), ihom.value.clone())?);
    Ok(OstrikAlgebra { algebra, ihom, coords })
}

/// A reconstructed module `F(x) = coker(x (x) A (x) p => x (x) p)` with its presentation.
#[derive(Clone, Debug)]
pub struct Reconstruction {
    pub module: GradedModule,
    pub cokernel: Cokernel,
}

/// Rank bookkeeping for a comparison map that should be an isomorphism.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComparisonReport {
    pub source_dim: usize,
    pub target_dim: usize,
    pub rank: usize,
    pub is_morphism: bool,
}

impl ComparisonReport {
    pub fn is_iso(&self) -> bool {
        self.is_morphism && self.source_dim == self.target_dim && self.rank == self.target_dim
    }
}

impl OstrikAlgebra {
    pub fn generator(&self) -> &GradedModule {
        &self.ihom.source
    }

    pub fn coordinates(&self, f: &Matrix) -> Option<Vector> {
        self.coords.coords(&f.flatten())
    }

    /// `IHom(p, m)` as a right module over this algebra, `h . f = h o f`.
    pub fn hom_module(&self, m: &GradedModule) -> Result<(InternalHom, GradedModule)> {
        let ihom = InternalHom::new(self.generator(), m)?;
        let field = m.field();
        let n = ihom.maps.len();
        let action = if n == 0 {
            vec![Matrix::zeros(field, 0, 0); self.algebra.dim()]
        } else {
            let flat: Vec<Vector> = ihom.maps.iter().map(Matrix::flatten).collect();
            let coords = BasisCoordinates::new(field, m.dim() * self.generator().dim(), &flat)?;
            self.ihom
                .maps
                .iter()
                .map(|f| {
                    let cols: Vec<Vector> = ihom.maps.iter().map(|h| coords.coords(&(h * f).flatten()).expect("closed")).collect();
                    Matrix::from_columns(field, n, &cols)
                })
                .collect()
        };
        let module = GradedModule::new(self.algebra.clone(), Side::Right, ihom.value.clone(), action)?;
        Ok((ihom, module))
    }

    /// `F(x)` for a right module object `x` over this algebra, with the residual
    /// action of the original algebra on the `p` factor.
    pub fn reconstruct(&self, x: &GradedModule) -> Result<Reconstruction> {
        if !Arc::ptr_eq(x.algebra(), &self.algebra) && **x.algebra() != *self.algebra {
            return Err(Error::AlgebraMismatch("x must be a module over the internal-hom algebra".into()));
        }
        if x.side() != Side::Right {
            return Err(Error::SideMismatch("x must be a right module".into()));
        }
        let p = self.generator();
        let field = p.field();
        let (dx, dp) = (x.dim(), p.dim());
        let mut columns = Vec::new();
        for (t, f) in self.ihom.maps.iter().enumerate() {
            let act = x.action(t);
            for r in 0..dx {
                let xr = act.sparse_column(r);
                for v in 0..dp {
                    // (x_r . f) (x) v - x_r (x) f(v)
                    let mut terms: Vec<(usize, Scalar)> = xr.iter().map(|(r2, c)| (r2 * dp + v, c.clone())).collect();
                    for (v2, c) in f.sparse_column(v) {
                        terms.push((r * dp + v2, -c));
                    }
                    let col = sparse_collect(terms);
                    if !col.is_empty() {
                        columns.push(col);
                    }
                }
            }
        }
        let cokernel = cokernel_of_columns(field, dx * dp, columns);
        let id = Matrix::identity(field, dx);
        let action = p
            .module()
            .actions()
            .iter()
            .map(|rb| &(&cokernel.projection * &id.kron(rb)) * &cokernel.section)
            .collect();
        let tensor = x.grading().tensor(p.grading())?;
        let grading = GradedObject::new(p.group().clone(), cokernel.kept.iter().map(|&q| tensor.grade(q)).collect())?;
        let module = GradedModule::new(p.algebra().clone(), Side::Right, grading, action)?;
        Ok(Reconstruction { module, cokernel })
    }

    /// The unit `x -> IHom(p, F(x))`, `x_r -> (v -> [x_r (x) v])`.
    pub fn unit_check(&self, x: &GradedModule) -> Result<ComparisonReport> {
        let rec = self.reconstruct(x)?;
        let (ihom, hom_module) = self.hom_module(&rec.module)?;
        let field = x.field();
        let (dx, dp) = (x.dim(), self.generator().dim());
        let n = ihom.maps.len();
        let mut unit = Matrix::zeros(field, n, dx);
        let mut well_defined = true;
        if n > 0 {
            let flat: Vec<Vector> = ihom.maps.iter().map(Matrix::flatten).collect();
            let coords = BasisCoordinates::new(field, rec.module.dim() * dp, &flat)?;
            for r in 0..dx {
                let rows: Vec<usize> = (0..dp).map(|v| r * dp + v).collect();
                let map = rec.cokernel.projection.select_columns(&rows);
                match coords.coords(&map.flatten()) {
                    Some(c) => {
                        for (k, value) in c.into_iter().enumerate() {
                            unit[(k, r)] = value;
                        }
                    }
                    None => well_defined = false,
                }
            }
        } else if dx > 0 {
            well_defined = false;
        }
        Ok(ComparisonReport {
            source_dim: dx,
            target_dim: n,
            rank: unit.rank(),
            is_morphism: well_defined && x.is_morphism(&hom_module, &unit),
        })
    }

    /// The counit `F(IHom(p, m)) -> m` induced by evaluation.
    pub fn counit_check(&self, m: &GradedModule) -> Result<ComparisonReport> {
        let (ihom, hom_module) = self.hom_module(m)?;
        let rec = self.reconstruct(&hom_module)?;
        let ev = ihom.evaluation()?.matrix;
        let induced = &ev * &rec.cokernel.section;
        let descends = &induced * &rec.cokernel.projection == ev;
        Ok(ComparisonReport {
            source_dim: rec.module.dim(),
            target_dim: m.dim(),
            rank: induced.rank(),
            is_morphism: descends && rec.module.is_morphism(m, &induced),
        })
    }

    /// For `p` the regular module over `B`: sends `f` to `f(1_B)` and re-expresses the
    /// algebra in the basis transported from `B`. Returns the renormalized algebra,
    /// to be compared with `B` entrywise.
    pub fn normalized_against_regular(&self) -> Result<GradedAlgebra> {
        let p = self.generator();
        let b = p.algebra();
        if p.module().actions() != crate::algebra::AlgModule::regular(b.algebra().clone(), Side::Right).actions() {
            return Err(Error::Precondition("generator is not the regular module".into()));
        }
        let field = p.field();
        let unit = b.algebra().unit();
        // Column t: the image of the unit under the t-th classified map.
        let cols: Vec<Vector> = self.ihom.maps.iter().map(|f| f.apply(unit)).collect();
        let transport = Matrix::from_columns(field, b.dim(), &cols);
        let back = transport.inverse().ok_or_else(|| Error::Precondition("evaluation at the unit is not bijective".into()))?;
        // New basis of the internal-hom algebra: preimages of the basis of B.
        let new_basis: Vec<Vector> = (0..b.dim()).map(|i| back.column(i)).collect();
        let a = self.algebra.algebra();
        let mut products = Vec::with_capacity(b.dim() * b.dim());
        for u in &new_basis {
            for w in &new_basis {
                products.push(sparse_from_dense(&transport.apply(&a.mul(u, w))));
            }
        }
        let unit_coords = transport.apply(a.unit());
        let grades = (0..b.dim())
            .map(|i| {
                let support: Vec<usize> =
                    (0..a.dim()).filter(|&t| !new_basis[i][t].is_zero()).map(|t| self.algebra.grade(t)).collect();
                support.first().copied().filter(|g| support.iter().all(|h| h == g)).unwrap_or(usize::MAX)
            })
            .collect::<Vec<_>>();
        if grades.contains(&usize::MAX) {
            return Err(Error::Precondition("transported basis is not homogeneous".into()));
        }
        let algebra = FinAlgebra::new(field, b.dim(), products, unit_coords)?;
        GradedAlgebra::new(Arc::new(algebra), GradedObject::new(p.group().clone(), grades)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeneratorReport {
    /// `(dim x, rank of IHom(p, x) (x) p -> x)` per test object.
    pub ranks: Vec<(usize, usize)>,
}

impl GeneratorReport {
    pub fn is_generator(&self) -> bool {
        self.ranks.iter().all(|(d, r)| d == r)
    }
}

/// Surjectivity of `IHom(p, x) (x) p -> x` for each test object.
pub fn generator_check(p: &GradedModule, xs: &[GradedModule]) -> Result<GeneratorReport> {
    let ranks = xs
        .iter()
        .map(|x| Ok((x.dim(), InternalHom::new(p, x)?.evaluation()?.matrix.rank())))
        .collect::<Result<Vec<_>>>()?;
    Ok(GeneratorReport { ranks })
}

/// Whether `IHom(p, -)` carries the surjection of `seq` to a surjection, grade by grade.
pub fn projectivity_probe(p: &GradedModule, seq: &ShortExactSequence) -> Result<bool> {
    let middle = InternalHom::new(p, &seq.middle)?;
    let quotient = InternalHom::new(p, &seq.quotient)?;
    if quotient.maps.is_empty() {
        return Ok(true);
    }
    let field = p.field();
    let flat: Vec<Vector> = quotient.maps.iter().map(Matrix::flatten).collect();
    let coords = BasisCoordinates::new(field, seq.quotient.dim() * p.dim(), &flat)?;
    let cols = middle
        .maps
        .iter()
        .map(|h| coords.coords(&(&seq.projection * h).flatten()))
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::Precondition("projection does not act on internal homs".into()))?;
    let induced = Matrix::from_columns(field, quotient.maps.len(), &cols);
    Ok(induced.rank() == quotient.maps.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::Field;
    use crate::groups::FiniteGroup;

    fn setup(field: Field, group: FiniteGroup) -> (Arc<GradedAlgebra>, GradedModule) {
        let b = Arc::new(GradedAlgebra::group_algebra(Arc::new(group), field));
        let reg = GradedModule::regular(b.clone(), Side::Right);
        (b, reg)
    }

    #[test]
    fn regular_generator_gives_back_b() {
        for (field, group) in [
            (Field::Rational, FiniteGroup::cyclic(2).unwrap()),
            (Field::Rational, FiniteGroup::symmetric(3).unwrap()),
            (Field::prime(7).unwrap(), FiniteGroup::cyclic(3).unwrap()),
        ] {
            let (b, reg) = setup(field, group);
            let o = ostrik_algebra(&reg).unwrap();
            assert!(o.algebra.validate().is_ok());
            assert_eq!(o.normalized_against_regular().unwrap(), *b);
        }
    }

    #[test]
    fn unit_algebra_case() {
        let g = Arc::new(FiniteGroup::cyclic(3).unwrap());
        let unit = Arc::new(GradedAlgebra::unit(g.clone(), Field::Rational));
        let one = GradedModule::regular(unit.clone(), Side::Right);
        let o = ostrik_algebra(&one).unwrap();
        assert_eq!(o.algebra.dim(), 1);
        assert_eq!(*o.algebra, *unit);
    }

    #[test]
    fn small_generator_over_trivially_graded_algebra() {
        let q = Field::Rational;
        let g = Arc::new(FiniteGroup::cyclic(2).unwrap());
        let flat = Arc::new(GradedAlgebra::group_algebra_trivially_graded(g.clone(), q));
        let sign = GradedModule::new(
            flat,
            Side::Right,
            GradedObject::unit(g),
            vec![Matrix::identity(q, 1), Matrix::identity(q, 1).scale(&q.from_i64(-1))],
        )
        .unwrap();
        assert!(sign.validate().is_ok());
        assert_eq!(sign.grading().dims(), vec![1, 0]);
        let o = ostrik_algebra(&sign).unwrap();
        assert_eq!(o.algebra.grading().dims(), vec![1, 0]);
        assert!(o.algebra.validate().is_ok());
    }

    #[test]
    fn reconstruction_round_trips() {
        let (b, reg) = setup(Field::Rational, FiniteGroup::symmetric(3).unwrap());
        let p = GradedModule::free(b.clone(), Side::Right, &[0, 2]).unwrap();
        let o = ostrik_algebra(&p).unwrap();
        let a_reg = GradedModule::regular(o.algebra.clone(), Side::Right);
        let rec = o.reconstruct(&a_reg).unwrap();
        assert_eq!(rec.module.dim(), p.dim());
        assert!(o.unit_check(&a_reg).unwrap().is_iso());
        for m in [reg.clone(), p.clone(), GradedModule::free(b.clone(), Side::Right, &[4]).unwrap()] {
            assert!(o.counit_check(&m).unwrap().is_iso());
            let (_, hm) = o.hom_module(&m).unwrap();
            assert!(hm.validate().is_ok());
            assert!(o.unit_check(&hm).unwrap().is_iso());
        }
        let zero = GradedModule::zero(o.algebra.clone(), Side::Right);
        assert_eq!(o.reconstruct(&zero).unwrap().module.dim(), 0);
    }

    #[test]
    fn generator_checks() {
        let (b, reg) = setup(Field::Rational, FiniteGroup::cyclic(2).unwrap());
        let xs = vec![reg.clone(), GradedModule::free(b.clone(), Side::Right, &[1, 1]).unwrap()];
        assert!(generator_check(&reg, &xs).unwrap().is_generator());
        let zero = GradedModule::zero(b.clone(), Side::Right);
        assert!(!generator_check(&zero, &xs).unwrap().is_generator());
        assert!(generator_check(&xs[1], &xs[1..]).unwrap().is_generator());
    }
}
