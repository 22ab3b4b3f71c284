//! Exact linear algebra over the rationals and prime fields.
//!
//! Kernels, cokernels and affine solves are all computed from one sparse echelon
//! engine, so results are exact and deterministic: the same input always yields the
//! same basis.

mod echelon;
mod matrix;
mod scalar;

pub use echelon::{sparse_collect, sparse_from_dense, sparse_to_dense, Echelon, Reduced, SparseVec};
pub use matrix::Matrix;
pub use scalar::{Field, Scalar};

use crate::error::{Error, Result};

pub type Vector = Vec<Scalar>;

fn check_field(expected: Field, m: &Matrix) -> Result<()> {
    if m.field() != expected {
        return Err(Error::FieldMismatch { expected, found: m.field() });
    }
    Ok(())
}

/// Basis of the right null space of `m`, one vector per free column.
pub fn kernel_basis(field: Field, m: &Matrix) -> Result<Vec<Vector>> {
    check_field(field, m)?;
    Ok(kernel_of_rows(field, m.cols(), (0..m.rows()).map(|r| m.sparse_row(r)))
        .into_iter()
        .map(|v| sparse_to_dense(field, &v, m.cols()))
        .collect())
}

/// Null space of the system whose equations are the given sparse rows.
pub fn kernel_of_rows(field: Field, ncols: usize, rows: impl IntoIterator<Item = SparseVec>) -> Vec<SparseVec> {
    let mut e = Echelon::new(field, ncols);
    for row in rows {
        e.insert(row);
        if e.is_full() {
            return Vec::new();
        }
    }
    e.into_reduced().kernel()
}

/// A cokernel `target -> target / image`, with a chosen section.
///
/// The quotient coordinates are the target coordinates that are not pivots of the
/// reduced image, so `projection * section` is the identity and `projection`
/// restricts to the identity on the span of those coordinates.
#[derive(Clone, Debug)]
pub struct Cokernel {
    pub projection: Matrix,
    pub section: Matrix,
    /// Target coordinates kept as the quotient basis, increasing.
    pub kept: Vec<usize>,
}

impl Cokernel {
    pub fn dim(&self) -> usize {
        self.kept.len()
    }
}

pub fn cokernel(m: &Matrix) -> Cokernel {
    cokernel_of_columns(m.field(), m.rows(), (0..m.cols()).map(|c| m.sparse_column(c)))
}

/// Cokernel of the map whose image is spanned by `columns`, vectors of length `rows`.
pub fn cokernel_of_columns(field: Field, rows: usize, columns: impl IntoIterator<Item = SparseVec>) -> Cokernel {
    let mut e = Echelon::new(field, rows);
    for col in columns {
        e.insert(col);
        if e.is_full() {
            break;
        }
    }
    let red = e.into_reduced();
    let kept = red.free_columns();
    let mut projection = Matrix::zeros(field, kept.len(), rows);
    let mut section = Matrix::zeros(field, rows, kept.len());
    for (qi, &q) in kept.iter().enumerate() {
        projection[(qi, q)] = field.one();
        section[(q, qi)] = field.one();
        for (ri, (p, _)) in red.rows.iter().enumerate() {
            if let Some(x) = red.entry(ri, q) {
                projection[(qi, *p)] = -x;
            }
        }
    }
    Cokernel { projection, section, kept }
}

/// Result of [`solve_affine`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AffineSolution {
    Solved(Vector),
    Inconsistent,
}

impl AffineSolution {
    pub fn into_option(self) -> Option<Vector> {
        match self {
            AffineSolution::Solved(x) => Some(x),
            AffineSolution::Inconsistent => None,
        }
    }
}

/// Some `x` with `m x = b`, free variables set to zero.
pub fn solve_affine(m: &Matrix, b: &[Scalar]) -> Result<AffineSolution> {
    if b.len() != m.rows() {
        return Err(Error::DimensionMismatch(format!("{} equations but right-hand side of length {}", m.rows(), b.len())));
    }
    let field = m.field();
    let n = m.cols();
    let mut e = Echelon::new(field, n + 1);
    for (r, rhs) in b.iter().enumerate() {
        let mut row = m.sparse_row(r);
        if !rhs.is_zero() {
            row.push((n, rhs.clone()));
        }
        e.insert(row);
    }
    let red = e.into_reduced();
    if red.rows.iter().any(|(p, _)| *p == n) {
        return Ok(AffineSolution::Inconsistent);
    }
    let mut x = vec![field.zero(); n];
    for (ri, (p, _)) in red.rows.iter().enumerate() {
        if let Some(v) = red.entry(ri, n) {
            x[*p] = v.clone();
        }
    }
    Ok(AffineSolution::Solved(x))
}

/// Coordinates with respect to a fixed list of independent vectors.
#[derive(Clone, Debug)]
pub struct BasisCoordinates {
    basis: Matrix,
    rows: Vec<usize>,
    inverse: Matrix,
}

impl BasisCoordinates {
    /// `vectors` must be linearly independent, each of length `len`.
    pub fn new(field: Field, len: usize, vectors: &[Vector]) -> Result<Self> {
        let basis = Matrix::from_columns(field, len, vectors);
        let mut e = Echelon::new(field, vectors.len());
        let mut rows = Vec::new();
        for r in 0..len {
            if e.insert(basis.sparse_row(r)) {
                rows.push(r);
            }
            if e.is_full() {
                break;
            }
        }
        if rows.len() != vectors.len() {
            return Err(Error::Precondition("basis vectors are linearly dependent".into()));
        }
        let inverse = basis.select_rows(&rows).inverse().expect("selected rows are independent");
        Ok(BasisCoordinates { basis, rows, inverse })
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Coordinates of `v`, or `None` when `v` is outside the span.
    pub fn coords(&self, v: &[Scalar]) -> Option<Vector> {
        let picked: Vec<Scalar> = self.rows.iter().map(|r| v[*r].clone()).collect();
        let x = self.inverse.apply(&picked);
        if self.basis.apply(&x) == v {
            Some(x)
        } else {
            None
        }
    }
}

/// A right inverse of a surjective matrix, supported on its first independent columns.
pub fn right_inverse(m: &Matrix) -> Option<Matrix> {
    let field = m.field();
    let mut e = Echelon::new(field, m.rows());
    let mut picked = Vec::new();
    for c in 0..m.cols() {
        if e.insert(m.sparse_column(c)) {
            picked.push(c);
        }
        if e.is_full() {
            break;
        }
    }
    if picked.len() != m.rows() {
        return None;
    }
    let block_inv = m.select_columns(&picked).inverse()?;
    let mut out = Matrix::zeros(field, m.cols(), m.rows());
    for (i, &c) in picked.iter().enumerate() {
        for r in 0..m.rows() {
            out[(c, r)] = block_inv[(i, r)].clone();
        }
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(rows: usize, cols: usize, e: &[i64]) -> Matrix {
        Matrix::from_i64(Field::Rational, rows, cols, e)
    }

    #[test]
    fn kernel_of_identity_is_empty() {
        assert!(kernel_basis(Field::Rational, &Matrix::identity(Field::Rational, 2)).unwrap().is_empty());
    }

    #[test]
    fn kernel_of_row_sum() {
        let k = kernel_basis(Field::Rational, &q(1, 2, &[1, 1])).unwrap();
        assert_eq!(k.len(), 1);
        assert!(!k[0][0].is_zero());
        assert_eq!(k[0][0], -&k[0][1]);
    }

    #[test]
    fn kernel_rejects_foreign_field() {
        let m = q(1, 1, &[1]);
        assert!(matches!(kernel_basis(Field::Prime(5), &m), Err(Error::FieldMismatch { .. })));
    }

    #[test]
    fn cokernel_of_zero_map_is_identity() {
        let c = cokernel(&Matrix::zeros(Field::Rational, 3, 2));
        assert_eq!(c.dim(), 3);
        assert!(c.projection.is_identity());
    }

    #[test]
    fn cokernel_of_identity_is_zero() {
        assert_eq!(cokernel(&Matrix::identity(Field::Rational, 4)).dim(), 0);
    }

    #[test]
    fn affine_cases() {
        let id = Matrix::identity(Field::Rational, 2);
        let b = vec![Field::Rational.from_i64(3), Field::Rational.from_i64(-1)];
        assert_eq!(solve_affine(&id, &b).unwrap(), AffineSolution::Solved(b.clone()));
        let x = solve_affine(&q(1, 2, &[1, 1]), &[Field::Rational.zero()]).unwrap().into_option().unwrap();
        assert!(q(1, 2, &[1, 1]).apply(&x).iter().all(Scalar::is_zero));
        assert_eq!(solve_affine(&q(1, 1, &[0]), &[Field::Rational.one()]).unwrap(), AffineSolution::Inconsistent);
        assert!(solve_affine(&id, &b[..1]).is_err());
    }

    #[test]
    fn right_inverse_of_projection() {
        let m = q(2, 3, &[1, 0, 1, 0, 1, 1]);
        let r = right_inverse(&m).unwrap();
        assert!((&m * &r).is_identity());
    }
}
