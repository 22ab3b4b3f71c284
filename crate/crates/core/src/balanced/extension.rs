use std::sync::Arc;

use serde::Serialize;

use super::{box_object, canonical_balancing, EnvelopingAlgebra};
use crate::algebra::{tensor_over_algebra, AlgBimodule, AlgModule, FinAlgebra, Side, TensorOverAlgebra};
use crate::error::{Error, Result};
use crate::exactla::{
    cokernel_of_columns, right_inverse, sparse_collect, sparse_from_dense, BasisCoordinates, Cokernel, Echelon, Matrix,
    Scalar, SparseVec, Vector,
};
use crate::gradedcat::{GradedBimodule, GradedModule, GradedObject};

/// Rank bookkeeping for `X (x) B (x) B => X (x) B -> X`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CoequalizerReport {
    pub coker_dim: usize,
    pub target_dim: usize,
    pub rank: usize,
    pub composite_zero: bool,
    pub is_morphism: bool,
}

impl CoequalizerReport {
    pub fn is_iso(&self) -> bool {
        self.composite_zero && self.is_morphism && self.coker_dim == self.target_dim && self.rank == self.target_dim
    }
}

/// Presents `X` as the cokernel of `delta(v, b, b') = vb (x) b' - v (x) bb'` and
/// compares it with `X` through the induced action map `v (x) b |-> vb`.
pub fn coequalizer_presentation(x: &GradedBimodule) -> Result<CoequalizerReport> {
    let field = x.field();
    let b = x.right_algebra();
    let (dx, db) = (x.dim(), b.dim());
    let free = box_object(&x.as_left_module(), &GradedModule::regular(b.clone(), Side::Right))?;
    let mut columns = Vec::with_capacity(dx * db * db);
    for v in 0..dx {
        for j in 0..db {
            let vb = x.right_action(j).sparse_column(v);
            for j2 in 0..db {
                let mut terms: Vec<(usize, Scalar)> = vb.iter().map(|(v2, c)| (v2 * db + j2, c.clone())).collect();
                for (k, c) in b.algebra().product(j, j2) {
                    terms.push((v * db + k, -c));
                }
                columns.push(sparse_collect(terms));
            }
        }
    }
    let mut mu = Matrix::zeros(field, dx, dx * db);
    for j in 0..db {
        for (r, v) in x.right_action(j).nonzero_positions().collect::<Vec<_>>() {
            mu[(r, v * db + j)] = x.right_action(j)[(r, v)].clone();
        }
    }
    let composite_zero = columns.iter().all(|col| {
        let dense = crate::exactla::sparse_to_dense(field, col, dx * db);
        mu.apply(&dense).iter().all(Scalar::is_zero)
    });
    let coker = cokernel_of_columns(field, dx * db, columns);
    let quotient = quotient_bimodule(&free, &coker)?;
    let comparison = &mu * &coker.section;
    Ok(CoequalizerReport {
        coker_dim: coker.dim(),
        target_dim: dx,
        rank: comparison.rank(),
        composite_zero,
        is_morphism: quotient.is_morphism(x, &comparison),
    })
}

/// The bimodule structure on a cokernel of a bimodule map into `x`.
fn quotient_bimodule(x: &GradedBimodule, coker: &Cokernel) -> Result<GradedBimodule> {
    let induce = |m: &Matrix| &(&coker.projection * m) * &coker.section;
    let grading = GradedObject::new(x.group().clone(), coker.kept.iter().map(|&q| x.grade(q)).collect())?;
    GradedBimodule::new(
        x.left_algebra().clone(),
        x.right_algebra().clone(),
        grading,
        x.left_actions().iter().map(induce).collect(),
        x.right_actions().iter().map(induce).collect(),
    )
}

/// The right-exact functor `X |-> W (x)_E X` from graded bimodules to left `D`-modules,
/// for a `D`-`E` bimodule `W`.
#[derive(Clone, Debug)]
pub struct RepresentedFunctor {
    pub enveloping: EnvelopingAlgebra,
    pub w: AlgBimodule,
}

/// `W (x)_E X` for one bimodule `X`.
#[derive(Clone, Debug)]
pub struct Applied {
    pub input_dim: usize,
    pub tensor: TensorOverAlgebra,
}

impl Applied {
    pub fn dim(&self) -> usize {
        self.tensor.dim()
    }
}

impl RepresentedFunctor {
    pub fn new(enveloping: EnvelopingAlgebra, w: AlgBimodule) -> Result<Self> {
        if !Arc::ptr_eq(w.as_right().algebra(), &enveloping.algebra) && **w.as_right().algebra() != *enveloping.algebra {
            return Err(Error::AlgebraMismatch("W must be a right module over the enveloping algebra".into()));
        }
        w.validate().map_err(|e| Error::InvalidModule(format!("W: {e}")))?;
        Ok(RepresentedFunctor { enveloping, w })
    }

    /// The identity functor: `W = E` as an `E`-`E` bimodule.
    pub fn identity(enveloping: EnvelopingAlgebra) -> Self {
        let w = AlgBimodule::regular(enveloping.algebra.clone());
        RepresentedFunctor { enveloping, w }
    }

    pub fn target_algebra(&self) -> &Arc<FinAlgebra> {
        self.w.as_left().algebra()
    }

    pub fn apply(&self, x: &GradedBimodule) -> Result<Applied> {
        let module = self.enveloping.to_module(x)?;
        Ok(Applied { input_dim: x.dim(), tensor: tensor_over_algebra(self.w.as_right(), &module)? })
    }

    /// `W (x) h` pushed to the quotients, column by column.
    pub fn on_morphism(&self, source: &Applied, target: &Applied, h: &Matrix) -> Matrix {
        let (ds, dt) = (source.input_dim, target.input_dim);
        let columns: Vec<SparseVec> = source
            .tensor
            .cokernel
            .kept
            .iter()
            .map(|&s| {
                let (w, v) = (s / ds, s % ds);
                sparse_collect(h.sparse_column(v).into_iter().map(|(r, c)| (w * dt + r, c)).collect())
            })
            .collect();
        push_forward(&target.tensor.cokernel, &columns)
    }

    /// The action of `d` on `W (x)_E X`.
    pub fn action(&self, applied: &Applied, d: usize) -> Matrix {
        let dx = applied.input_dim;
        let l = self.w.as_left().action(d);
        let columns: Vec<SparseVec> = applied
            .tensor
            .cokernel
            .kept
            .iter()
            .map(|&s| {
                let (w, v) = (s / dx, s % dx);
                sparse_collect(l.sparse_column(w).into_iter().map(|(w2, c)| (w2 * dx + v, c)).collect())
            })
            .collect();
        push_forward(&applied.tensor.cokernel, &columns)
    }

    pub fn as_module(&self, applied: &Applied) -> Result<AlgModule> {
        let d = self.target_algebra();
        let action = (0..d.dim()).map(|i| self.action(applied, i)).collect();
        AlgModule::new(d.clone(), Side::Left, applied.dim(), action)
    }
}

/// `projection * column` for each sparse column.
fn push_forward(coker: &Cokernel, columns: &[SparseVec]) -> Matrix {
    let field = coker.projection.field();
    let mut out = Matrix::zeros(field, coker.dim(), columns.len());
    for (q, col) in columns.iter().enumerate() {
        for (idx, c) in col {
            for r in 0..coker.dim() {
                let p = &coker.projection[(r, *idx)];
                if !p.is_zero() {
                    out[(r, q)] += &(p * c);
                }
            }
        }
    }
    out
}

/// `eE` for a central idempotent `e`, as an `E`-`E` bimodule.
pub fn corner_bimodule(algebra: &Arc<FinAlgebra>, e: &[Scalar]) -> Result<AlgBimodule> {
    let field = algebra.field();
    let n = algebra.dim();
    if e.len() != n || algebra.mul(e, e) != e {
        return Err(Error::Precondition("expected an idempotent".into()));
    }
    let mut span = Echelon::new(field, n);
    let mut basis: Vec<Vector> = Vec::new();
    for i in 0..n {
        let bi = algebra.basis_vector(i);
        if algebra.mul(e, &bi) != algebra.mul(&bi, e) {
            return Err(Error::Precondition("the idempotent is not central".into()));
        }
        let v = algebra.mul(e, &bi);
        if span.insert(sparse_from_dense(&v)) {
            basis.push(v);
        }
    }
    let coords = BasisCoordinates::new(field, n, &basis)?;
    let restrict = |f: &dyn Fn(&Vector) -> Vector| -> Matrix {
        let cols: Vec<Vector> = basis.iter().map(|v| coords.coords(&f(v)).expect("eE is a two-sided ideal")).collect();
        Matrix::from_columns(field, basis.len(), &cols)
    };
    let mut left = Vec::with_capacity(n);
    let mut right = Vec::with_capacity(n);
    for i in 0..n {
        let bi = algebra.basis_vector(i);
        left.push(restrict(&|v| algebra.mul(&bi, v)));
        right.push(restrict(&|v| algebra.mul(v, &bi)));
    }
    AlgBimodule::new(
        AlgModule::new(algebra.clone(), Side::Left, basis.len(), left)?,
        AlgModule::new(algebra.clone(), Side::Right, basis.len(), right)?,
    )
}

/// Checks on an extension against the oracle `W (x)_E X`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ExtensionReport {
    pub extension_dim: usize,
    pub oracle_dim: usize,
    pub comparison_rank: usize,
    /// The dashed map is independent of the chosen right inverse.
    pub well_defined: bool,
    /// The comparison map kills the image of the dashed map.
    pub descends: bool,
    pub target_linear: bool,
    /// Dimension of `Hom_D(extension, oracle)` when small enough to compute.
    pub hom_dim: Option<usize>,
}

impl ExtensionReport {
    pub fn is_iso(&self) -> bool {
        self.well_defined
            && self.descends
            && self.target_linear
            && self.extension_dim == self.oracle_dim
            && self.comparison_rank == self.oracle_dim
    }

    /// Whether the comparison is the only map up to scalars. Expected only for
    /// simple or zero outputs.
    pub fn unique_up_to_scalar(&self) -> Option<bool> {
        self.hom_dim.map(|h| h <= 1)
    }
}

/// The extension of the balanced functor `F(x, y) = G(x [] y)` to `X`.
#[derive(Clone, Debug)]
pub struct Extension {
    /// `coker(delta_bar)` as a left `D`-module.
    pub module: AlgModule,
    pub delta_bar: Matrix,
    pub cokernel: Cokernel,
    /// `coker(delta_bar) -> W (x)_E X`.
    pub comparison: Matrix,
    pub oracle: AlgModule,
    pub report: ExtensionReport,
    right_dim: usize,
    bottom: Applied,
    oracle_applied: Applied,
}

const HOM_DIM_LIMIT: usize = 24;

/// `F_bar(X) = coker(delta_bar: F(X, B (x) B) -> F(X, B))`.
///
/// `delta_bar` is induced from the map `F(A (x) X, B (x) B) -> F(A (x) X, B)` obtained by
/// moving `X` across with the balancing, applying the difference map of the right
/// `B`-action and moving it back; it is pushed down along the surjections coming from
/// `A (x) X -> X`. Only `F` on pairs and the balancing are used.
pub fn extend_balanced_functor(functor: &RepresentedFunctor, x: &GradedBimodule) -> Result<Extension> {
    let field = x.field();
    let (a, b) = (x.left_algebra().clone(), x.right_algebra().clone());
    let (da, db, dx) = (a.dim(), b.dim(), x.dim());
    let cx = x.grading().clone();
    let xa = x.as_left_module();
    let a_reg = GradedModule::regular(a.clone(), Side::Left);
    let q1 = GradedModule::regular(b.clone(), Side::Right);
    let q2 = q1.act(b.grading())?;
    let p1 = a_reg.act(&cx)?;
    let p2 = a_reg.act(&a.grading().tensor(&cx)?)?;

    // epsilon: A (x) X -> X, (a, v) |-> av.
    let mut eps = Matrix::zeros(field, dx, da * dx);
    for i in 0..da {
        for (r, v) in x.left_action(i).nonzero_positions().collect::<Vec<_>>() {
            eps[(r, i * dx + v)] = x.left_action(i)[(r, v)].clone();
        }
    }
    // delta_1: A (x) A (x) X -> A (x) X, (a, a', v) |-> (aa', v) - (a, a'v).
    let mut delta1 = Matrix::zeros(field, da * dx, da * da * dx);
    for i in 0..da {
        for i2 in 0..da {
            for v in 0..dx {
                let col = (i * da + i2) * dx + v;
                for (k, c) in a.algebra().product(i, i2) {
                    delta1[(k * dx + v, col)] += c;
                }
                for (v2, c) in x.left_action(i2).sparse_column(v) {
                    delta1[(i * dx + v2, col)] -= &c;
                }
            }
        }
    }
    // delta_2: X (x) B (x) B -> X (x) B, (v, b, b') |-> (vb, b') - (v, bb').
    let mut delta2 = Matrix::zeros(field, dx * db, dx * db * db);
    for v in 0..dx {
        for j in 0..db {
            for j2 in 0..db {
                let col = (v * db + j) * db + j2;
                for (v2, c) in x.right_action(j).sparse_column(v) {
                    delta2[(v2 * db + j2, col)] += &c;
                }
                for (k, c) in b.algebra().product(j, j2) {
                    delta2[(v * db + k, col)] -= c;
                }
            }
        }
    }

    let apply_pair = |p: &GradedModule, q: &GradedModule| -> Result<(GradedBimodule, Applied)> {
        let bx = box_object(p, q)?;
        let applied = functor.apply(&bx)?;
        Ok((bx, applied))
    };
    let (_, f_p2_q2) = apply_pair(&p2, &q2)?;
    let (_, f_p1_q2) = apply_pair(&p1, &q2)?;
    let (_, f_p1_q1) = apply_pair(&p1, &q1)?;
    let (_, f_x_q2) = apply_pair(&xa, &q2)?;
    let (_, f_x_q1) = apply_pair(&xa, &q1)?;

    // Vertical map through F(A, X (x) B (x) B) -> F(A, X (x) B).
    let beta_top = canonical_balancing(&a_reg, &cx, &q2)?;
    let beta_bottom = canonical_balancing(&a_reg, &cx, &q1)?;
    if !beta_top.is_iso || !beta_bottom.is_iso {
        return Err(Error::NotExact("balancing is not an isomorphism".into()));
    }
    let f_top = functor.apply(&beta_top.target)?;
    let f_bottom = functor.apply(&beta_bottom.target)?;
    let beta_bottom_inv = beta_bottom.matrix.inverse().expect("checked invertible");
    let ia = Matrix::identity(field, da);
    let vertical = &(&functor.on_morphism(&f_bottom, &f_p1_q1, &beta_bottom_inv)
        * &functor.on_morphism(&f_top, &f_bottom, &ia.kron(&delta2)))
        * &functor.on_morphism(&f_p1_q2, &f_top, &beta_top.matrix);

    let iq2 = Matrix::identity(field, q2.dim());
    let iq1 = Matrix::identity(field, q1.dim());
    let eps_top = functor.on_morphism(&f_p1_q2, &f_x_q2, &eps.kron(&iq2));
    let eps_bottom = functor.on_morphism(&f_p1_q1, &f_x_q1, &eps.kron(&iq1));
    let delta1_top = functor.on_morphism(&f_p2_q2, &f_p1_q2, &delta1.kron(&iq2));
    let lift =
        right_inverse(&eps_top).ok_or_else(|| Error::NotExact("F(A (x) X, B (x) B) -> F(X, B (x) B) is not onto".into()))?;
    let pushed = &eps_bottom * &vertical;
    let delta_bar = &pushed * &lift;
    let well_defined = (&pushed * &delta1_top).is_zero() && &delta_bar * &eps_top == pushed;

    let cokernel = crate::exactla::cokernel(&delta_bar);
    let d = functor.target_algebra().clone();
    let module = AlgModule::new(
        d.clone(),
        Side::Left,
        cokernel.dim(),
        (0..d.dim()).map(|i| &(&cokernel.projection * &functor.action(&f_x_q1, i)) * &cokernel.section).collect(),
    )?;

    // Oracle and comparison through mu: X (x) B -> X.
    let oracle_applied = functor.apply(x)?;
    let oracle = functor.as_module(&oracle_applied)?;
    let mut mu = Matrix::zeros(field, dx, dx * db);
    for j in 0..db {
        for (r, v) in x.right_action(j).nonzero_positions().collect::<Vec<_>>() {
            mu[(r, v * db + j)] = x.right_action(j)[(r, v)].clone();
        }
    }
    let f_mu = functor.on_morphism(&f_x_q1, &oracle_applied, &mu);
    let descends = (&f_mu * &delta_bar).is_zero();
    let comparison = &f_mu * &cokernel.section;
    let target_linear = d.generators().iter().all(|&i| &comparison * module.action(i) == oracle.action(i) * &comparison);
    let hom_dim = (module.dim() <= HOM_DIM_LIMIT && oracle.dim() <= HOM_DIM_LIMIT)
        .then(|| crate::algebra::hom_space(&module, &oracle).map(|h| h.len()))
        .transpose()?;
    let report = ExtensionReport {
        extension_dim: cokernel.dim(),
        oracle_dim: oracle.dim(),
        comparison_rank: comparison.rank(),
        well_defined,
        descends,
        target_linear,
        hom_dim,
    };
    Ok(Extension {
        module,
        delta_bar,
        cokernel,
        comparison,
        oracle,
        report,
        right_dim: db,
        bottom: f_x_q1,
        oracle_applied,
    })
}

impl Extension {
    /// `F_bar(phi)` for a bimodule map `phi: X -> X'`, induced by `F(phi, id_B)`, and
    /// whether it commutes with the comparison maps.
    pub fn on_morphism(&self, functor: &RepresentedFunctor, target: &Extension, phi: &Matrix) -> (Matrix, bool) {
        let id = Matrix::identity(phi.field(), self.right_dim);
        let lifted = functor.on_morphism(&self.bottom, &target.bottom, &phi.kron(&id));
        let induced = &(&target.cokernel.projection * &lifted) * &self.cokernel.section;
        let oracle_map = functor.on_morphism(&self.oracle_applied, &target.oracle_applied, phi);
        let natural = &target.comparison * &induced == &oracle_map * &self.comparison;
        (induced, natural)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::Field;
    use crate::gradedcat::GradedAlgebra;
    use crate::groups::FiniteGroup;

    fn z2_setup() -> (Arc<GradedAlgebra>, EnvelopingAlgebra) {
        let g = Arc::new(FiniteGroup::cyclic(2).unwrap());
        let a = Arc::new(GradedAlgebra::group_algebra(g, Field::Rational));
        let e = EnvelopingAlgebra::new(a.clone(), a.clone()).unwrap();
        (a, e)
    }

    fn sample_bimodules(a: &Arc<GradedAlgebra>) -> Vec<GradedBimodule> {
        let x = GradedModule::regular(a.clone(), Side::Left);
        let y = GradedModule::regular(a.clone(), Side::Right);
        let shifted = GradedModule::free(a.clone(), Side::Right, &[1]).unwrap();
        vec![
            box_object(&x, &y).unwrap(),
            box_object(&x, &shifted).unwrap(),
            GradedBimodule::zero(a.clone(), a.clone()),
        ]
    }

    #[test]
    fn coequalizer_recovers_bimodule() {
        let (a, _) = z2_setup();
        for x in sample_bimodules(&a) {
            let r = coequalizer_presentation(&x).unwrap();
            assert!(r.is_iso(), "{r:?}");
            assert_eq!(r.coker_dim, x.dim());
        }
    }

    #[test]
    fn identity_functor_extends_to_itself() {
        let (a, e) = z2_setup();
        let functor = RepresentedFunctor::identity(e);
        for x in sample_bimodules(&a) {
            let ext = extend_balanced_functor(&functor, &x).unwrap();
            assert!(ext.report.is_iso(), "{:?}", ext.report);
            assert_eq!(ext.report.extension_dim, x.dim());
        }
    }

    #[test]
    fn block_functor_picks_isotypic_piece() {
        let (a, e) = z2_setup();
        let idems = e.algebra.central_primitive_idempotents().unwrap();
        assert_eq!(idems.len(), 2);
        let x = sample_bimodules(&a).remove(0);
        let mut total = 0;
        for idem in &idems {
            let w = corner_bimodule(&e.algebra, idem).unwrap();
            let functor = RepresentedFunctor::new(e.clone(), w).unwrap();
            let ext = extend_balanced_functor(&functor, &x).unwrap();
            assert!(ext.report.is_iso(), "{:?}", ext.report);
            let piece = e.to_module(&x).unwrap().action_of(idem).rank();
            assert_eq!(ext.report.extension_dim, piece);
            total += piece;
        }
        assert_eq!(total, x.dim());
    }

    #[test]
    fn extension_is_natural() {
        let (a, e) = z2_setup();
        let functor = RepresentedFunctor::identity(e);
        let xs = sample_bimodules(&a);
        let (x, x2) = (&xs[0], &xs[1]);
        let (ex, ex2) = (extend_balanced_functor(&functor, x).unwrap(), extend_balanced_functor(&functor, x2).unwrap());
        for phi in x.hom_space(x2).unwrap() {
            let (_, natural) = ex.on_morphism(&functor, &ex2, &phi);
            assert!(natural);
        }
    }
}
