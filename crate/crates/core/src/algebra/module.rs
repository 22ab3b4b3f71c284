use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{AxiomViolation, FinAlgebra};
use crate::error::{Error, Result};
use crate::exactla::{cokernel_of_columns, kernel_of_rows, sparse_collect, Cokernel, Field, Matrix, Scalar, SparseVec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

pub(crate) fn same_algebra(a: &Arc<FinAlgebra>, b: &Arc<FinAlgebra>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// A module given by one action matrix per algebra basis element.
///
/// For a right module the matrix of `e_i` is `v -> v e_i`, so `R(xy) = R(y) R(x)`.
#[derive(Clone, Debug)]
pub struct AlgModule {
    algebra: Arc<FinAlgebra>,
    side: Side,
    dim: usize,
    action: Vec<Matrix>,
}

impl AlgModule {
    /// Checks shapes only; see [`AlgModule::validate`] for the axioms.
    pub fn new(algebra: Arc<FinAlgebra>, side: Side, dim: usize, action: Vec<Matrix>) -> Result<Self> {
        if action.len() != algebra.dim() {
            return Err(Error::InvalidModule(format!("{} action matrices for an algebra of dimension {}", action.len(), algebra.dim())));
        }
        for (i, m) in action.iter().enumerate() {
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::InvalidModule(format!("action of e_{i} is {}x{}, expected {dim}x{dim}", m.rows(), m.cols())));
            }
            if m.field() != algebra.field() {
                return Err(Error::FieldMismatch { expected: algebra.field(), found: m.field() });
            }
        }
        Ok(AlgModule { algebra, side, dim, action })
    }

    pub fn regular(algebra: Arc<FinAlgebra>, side: Side) -> Self {
        let action = (0..algebra.dim())
            .map(|i| {
                let e = algebra.basis_vector(i);
                match side {
                    Side::Left => algebra.left_multiplication(&e),
                    Side::Right => algebra.right_multiplication(&e),
                }
            })
            .collect();
        let dim = algebra.dim();
        AlgModule { algebra, side, dim, action }
    }

    pub fn zero(algebra: Arc<FinAlgebra>, side: Side) -> Self {
        let field = algebra.field();
        let action = vec![Matrix::zeros(field, 0, 0); algebra.dim()];
        AlgModule { algebra, side, dim: 0, action }
    }

    /// Direct sum of `rank` copies of the regular module.
    pub fn free(algebra: Arc<FinAlgebra>, side: Side, rank: usize) -> Self {
        let regular = Self::regular(algebra.clone(), side);
        (0..rank).fold(Self::zero(algebra, side), |acc, _| acc.direct_sum(&regular).expect("same algebra"))
    }

    pub fn algebra(&self) -> &Arc<FinAlgebra> {
        &self.algebra
    }

    pub fn field(&self) -> Field {
        self.algebra.field()
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn action(&self, i: usize) -> &Matrix {
        &self.action[i]
    }

    pub fn actions(&self) -> &[Matrix] {
        &self.action
    }

    /// Action matrix of an arbitrary algebra element.
    pub fn action_of(&self, x: &[Scalar]) -> Matrix {
        let mut out = Matrix::zeros(self.field(), self.dim, self.dim);
        for (i, c) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            out = &out + &self.action[i].scale(c);
        }
        out
    }

    pub fn direct_sum(&self, other: &AlgModule) -> Result<AlgModule> {
        self.check_compatible(other)?;
        let action = self.action.iter().zip(&other.action).map(|(a, b)| a.direct_sum(b)).collect();
        Ok(AlgModule { algebra: self.algebra.clone(), side: self.side, dim: self.dim + other.dim, action })
    }

    /// The same matrices read as a module over the opposite algebra, on the other side.
    pub fn to_opposite(&self) -> AlgModule {
        AlgModule {
            algebra: Arc::new(self.algebra.opposite()),
            side: self.side.flip(),
            dim: self.dim,
            action: self.action.clone(),
        }
    }

    pub(crate) fn check_compatible(&self, other: &AlgModule) -> Result<()> {
        if !same_algebra(&self.algebra, &other.algebra) {
            return Err(Error::AlgebraMismatch("modules are over different algebras".into()));
        }
        if self.side != other.side {
            return Err(Error::SideMismatch(format!("{:?} vs {:?}", self.side, other.side)));
        }
        Ok(())
    }

    /// Multiplicativity on generator times basis pairs, plus the unit law.
    ///
    /// The linear extension is multiplicative as soon as it is on `generator * basis`
    /// (left) or `basis * generator` (right), since products of generators span.
    pub fn validate(&self) -> std::result::Result<(), AxiomViolation> {
        validate_action(&self.algebra, self.side, self.dim, &self.action)
    }

    pub fn validated(self) -> Result<Self> {
        self.validate().map_err(|v| Error::InvalidModule(v.to_string()))?;
        Ok(self)
    }
}

pub(crate) fn validate_action(algebra: &FinAlgebra, side: Side, dim: usize, action: &[Matrix]) -> std::result::Result<(), AxiomViolation> {
    if action.len() != algebra.dim() || action.iter().any(|m| m.rows() != dim || m.cols() != dim) {
        return Err(AxiomViolation::Shape("action matrices have the wrong shape".into()));
    }
    let field = algebra.field();
    let combine = |v: &SparseVec| {
        let mut out = Matrix::zeros(field, dim, dim);
        for (k, c) in v {
            out = &out + &action[*k].scale(c);
        }
        out
    };
    for &s in algebra.generators() {
        for j in 0..algebra.dim() {
            let (lhs, rhs, i, jj) = match side {
                Side::Left => (combine(algebra.product(s, j)), &action[s] * &action[j], s, j),
                Side::Right => (combine(algebra.product(j, s)), &action[s] * &action[j], j, s),
            };
            if lhs != rhs {
                return Err(AxiomViolation::Action { i, j: jj });
            }
        }
    }
    let unit = crate::exactla::sparse_from_dense(algebra.unit());
    if !combine(&unit).is_identity() {
        return Err(AxiomViolation::UnitAction);
    }
    Ok(())
}

/// Basis of `{ f : target.dim x source.dim | f S_k = T_k f for all k }`, restricted to
/// matrices supported on positions where `allowed(row, col)` holds.
pub fn solve_intertwiners(
    field: Field,
    source_dim: usize,
    target_dim: usize,
    pairs: &[(&Matrix, &Matrix)],
    allowed: impl Fn(usize, usize) -> bool,
) -> Vec<Matrix> {
    let mut var = vec![usize::MAX; target_dim * source_dim];
    let mut positions = Vec::new();
    for r in 0..target_dim {
        for c in 0..source_dim {
            if allowed(r, c) {
                var[r * source_dim + c] = positions.len();
                positions.push((r, c));
            }
        }
    }
    if positions.is_empty() {
        return Vec::new();
    }
    let mut rows = Vec::new();
    for (src, tgt) in pairs {
        // T f - f S, entry (r, c).
        let src_cols: Vec<SparseVec> = (0..source_dim).map(|c| src.sparse_column(c)).collect();
        let tgt_rows: Vec<SparseVec> = (0..target_dim).map(|r| tgt.sparse_row(r)).collect();
        for (r, tgt_row) in tgt_rows.iter().enumerate() {
            for (c, src_col) in src_cols.iter().enumerate() {
                let mut terms = Vec::new();
                for (k, t) in tgt_row {
                    let v = var[k * source_dim + c];
                    if v != usize::MAX {
                        terms.push((v, t.clone()));
                    }
                }
                for (k, s) in src_col {
                    let v = var[r * source_dim + k];
                    if v != usize::MAX {
                        terms.push((v, -s));
                    }
                }
                let row = sparse_collect(terms);
                if !row.is_empty() {
                    rows.push(row);
                }
            }
        }
    }
    kernel_of_rows(field, positions.len(), rows)
        .into_iter()
        .map(|v| {
            let mut m = Matrix::zeros(field, target_dim, source_dim);
            for (k, x) in v {
                m[positions[k]] = x;
            }
            m
        })
        .collect()
}

/// Basis of module homomorphisms `m -> n`.
pub fn hom_space(m: &AlgModule, n: &AlgModule) -> Result<Vec<Matrix>> {
    m.check_compatible(n)?;
    let pairs: Vec<(&Matrix, &Matrix)> = m.algebra.generators().iter().map(|&s| (&m.action[s], &n.action[s])).collect();
    Ok(solve_intertwiners(m.field(), m.dim, n.dim, &pairs, |_, _| true))
}

/// `m (x)_A n` as the cokernel of `m (x) A (x) n -> m (x) n`, `u (x) a (x) v -> ua (x) v - u (x) av`.
///
/// Basis of `m (x) n` is `(u, v)` at index `u * n.dim + v`.
#[derive(Clone, Debug)]
pub struct TensorOverAlgebra {
    pub left_dim: usize,
    pub right_dim: usize,
    pub cokernel: Cokernel,
}

impl TensorOverAlgebra {
    pub fn dim(&self) -> usize {
        self.cokernel.dim()
    }

    pub fn projection(&self) -> &Matrix {
        &self.cokernel.projection
    }

    pub fn section(&self) -> &Matrix {
        &self.cokernel.section
    }
}

pub fn tensor_over_algebra(m: &AlgModule, n: &AlgModule) -> Result<TensorOverAlgebra> {
    if !same_algebra(&m.algebra, &n.algebra) {
        return Err(Error::AlgebraMismatch("tensor factors are over different algebras".into()));
    }
    if m.side != Side::Right || n.side != Side::Left {
        return Err(Error::SideMismatch("expected a right module tensored with a left module".into()));
    }
    let (dm, dn) = (m.dim, n.dim);
    let mut columns = Vec::new();
    // Relations for generators imply them for all products of generators.
    for &i in m.algebra.generators() {
        let (r, l) = (&m.action[i], &n.action[i]);
        for u in 0..dm {
            let ru = r.sparse_column(u);
            for v in 0..dn {
                let mut terms: Vec<(usize, Scalar)> = ru.iter().map(|(u2, x)| (u2 * dn + v, x.clone())).collect();
                for (v2, y) in l.sparse_column(v) {
                    terms.push((u * dn + v2, -y));
                }
                let col = sparse_collect(terms);
                if !col.is_empty() {
                    columns.push(col);
                }
            }
        }
    }
    let cokernel = cokernel_of_columns(m.field(), dm * dn, columns);
    Ok(TensorOverAlgebra { left_dim: dm, right_dim: dn, cokernel })
}

/// An ungraded bimodule: a left module over `left` and a right module over `right`
/// on the same space, with commuting actions.
#[derive(Clone, Debug)]
pub struct AlgBimodule {
    left: AlgModule,
    right: AlgModule,
}

impl AlgBimodule {
    pub fn new(left: AlgModule, right: AlgModule) -> Result<Self> {
        if left.side != Side::Left || right.side != Side::Right {
            return Err(Error::SideMismatch("bimodule needs a left and a right action".into()));
        }
        if left.dim != right.dim {
            return Err(Error::DimensionMismatch(format!("left action on {} dims, right on {}", left.dim, right.dim)));
        }
        if left.field() != right.field() {
            return Err(Error::FieldMismatch { expected: left.field(), found: right.field() });
        }
        Ok(AlgBimodule { left, right })
    }

    /// `A` as an `A`-`A` bimodule.
    pub fn regular(algebra: Arc<FinAlgebra>) -> Self {
        AlgBimodule {
            left: AlgModule::regular(algebra.clone(), Side::Left),
            right: AlgModule::regular(algebra, Side::Right),
        }
    }

    pub fn dim(&self) -> usize {
        self.left.dim
    }

    pub fn as_left(&self) -> &AlgModule {
        &self.left
    }

    pub fn as_right(&self) -> &AlgModule {
        &self.right
    }

    pub fn validate(&self) -> std::result::Result<(), AxiomViolation> {
        self.left.validate()?;
        self.right.validate()?;
        for &i in self.left.algebra.generators() {
            for &j in self.right.algebra.generators() {
                if &self.left.action[i] * &self.right.action[j] != &self.right.action[j] * &self.left.action[i] {
                    return Err(AxiomViolation::Commutation { i, j });
                }
            }
        }
        Ok(())
    }

    pub fn hom_space(&self, other: &AlgBimodule) -> Result<Vec<Matrix>> {
        self.left.check_compatible(&other.left)?;
        self.right.check_compatible(&other.right)?;
        let mut pairs: Vec<(&Matrix, &Matrix)> = Vec::new();
        for &s in self.left.algebra.generators() {
            pairs.push((&self.left.action[s], &other.left.action[s]));
        }
        for &s in self.right.algebra.generators() {
            pairs.push((&self.right.action[s], &other.right.action[s]));
        }
        Ok(solve_intertwiners(self.left.field(), self.dim(), other.dim(), &pairs, |_, _| true))
    }
}
