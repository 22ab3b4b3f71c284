//! Finite-dimensional associative unital algebras given by structure constants,
//! their modules and bimodules, and the linear-algebra questions asked of them.

mod module;
mod morita;
mod semisimple;

use std::fmt;
use std::sync::OnceLock;

use serde::Serialize;

pub use module::{hom_space, solve_intertwiners, tensor_over_algebra, AlgBimodule, AlgModule, Side, TensorOverAlgebra};
pub use morita::{endomorphism_algebra_morita, CounitCheck, EndomorphismAlgebra};
pub use semisimple::{Semisimplicity, Splitting};

use crate::error::{Error, Result};
use crate::exactla::{sparse_collect, Echelon, Field, Scalar, SparseVec, Vector};
use crate::groups::FiniteGroup;

/// The first axiom instance found to fail.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum AxiomViolation {
    Shape(String),
    /// `(e_i e_j) e_k != e_i (e_j e_k)`.
    Associativity { i: usize, j: usize, k: usize },
    LeftUnit { i: usize },
    RightUnit { i: usize },
    /// A structure constant `c[i][j][k]` is nonzero although `grade(k) != grade(i) grade(j)`.
    Grading { i: usize, j: usize, k: usize },
    UnitGrading { i: usize },
    /// The action of `e_i e_j` differs from the composite of the actions.
    Action { i: usize, j: usize },
    UnitAction,
    /// Left action of `a_i` fails to commute with right action of `b_j`.
    Commutation { i: usize, j: usize },
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxiomViolation::Shape(s) => write!(f, "malformed data: {s}"),
            AxiomViolation::Associativity { i, j, k } => write!(f, "associativity fails for basis triple ({i}, {j}, {k})"),
            AxiomViolation::LeftUnit { i } => write!(f, "unit * e_{i} != e_{i}"),
            AxiomViolation::RightUnit { i } => write!(f, "e_{i} * unit != e_{i}"),
            AxiomViolation::Grading { i, j, k } => write!(f, "structure constant c[{i}][{j}][{k}] breaks the grading"),
            AxiomViolation::UnitGrading { i } => write!(f, "unit has a component on e_{i} outside the identity grade"),
            AxiomViolation::Action { i, j } => write!(f, "action is not multiplicative on basis pair ({i}, {j})"),
            AxiomViolation::UnitAction => f.write_str("unit does not act as the identity"),
            AxiomViolation::Commutation { i, j } => write!(f, "left action of a_{i} does not commute with right action of b_{j}"),
        }
    }
}

impl std::error::Error for AxiomViolation {}

/// An associative unital algebra with basis `e_0, ..., e_{dim-1}`, stored as sparse
/// products `e_i e_j = sum_k c[i][j][k] e_k`.
#[derive(Clone)]
pub struct FinAlgebra {
    field: Field,
    dim: usize,
    products: Vec<SparseVec>,
    unit: Vector,
    generators: OnceLock<Vec<usize>>,
}

impl PartialEq for FinAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.dim == other.dim && self.products == other.products && self.unit == other.unit
    }
}

impl Eq for FinAlgebra {}

impl fmt::Debug for FinAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FinAlgebra(dim {} over {})", self.dim, self.field)
    }
}

impl FinAlgebra {
    /// `products[i * dim + j]` holds `e_i e_j`. Axioms are not checked here; see [`FinAlgebra::validate`].
    pub fn new(field: Field, dim: usize, products: Vec<SparseVec>, unit: Vector) -> Result<Self> {
        if products.len() != dim * dim {
            return Err(Error::InvalidAlgebra(format!("expected {} products, got {}", dim * dim, products.len())));
        }
        if unit.len() != dim {
            return Err(Error::InvalidAlgebra(format!("unit has length {}, expected {dim}", unit.len())));
        }
        for p in &products {
            if p.iter().any(|(k, x)| *k >= dim || x.field() != field) {
                return Err(Error::InvalidAlgebra("product out of range or over the wrong field".into()));
            }
        }
        if unit.iter().any(|x| x.field() != field) {
            return Err(Error::FieldMismatch { expected: field, found: unit[0].field() });
        }
        Ok(FinAlgebra { field, dim, products, unit, generators: OnceLock::new() })
    }

    /// From a dense `dim x dim x dim` structure tensor.
    pub fn from_structure(field: Field, structure: &[Vec<Vec<Scalar>>], unit: Vector) -> Result<Self> {
        let dim = structure.len();
        let mut products = Vec::with_capacity(dim * dim);
        for (i, plane) in structure.iter().enumerate() {
            if plane.len() != dim {
                return Err(Error::InvalidAlgebra(format!("structure[{i}] has length {}, expected {dim}", plane.len())));
            }
            for (j, line) in plane.iter().enumerate() {
                if line.len() != dim {
                    return Err(Error::InvalidAlgebra(format!("structure[{i}][{j}] has length {}, expected {dim}", line.len())));
                }
                products.push(crate::exactla::sparse_from_dense(line));
            }
        }
        Self::new(field, dim, products, unit)
    }

    /// The ground field as a one-dimensional algebra.
    pub fn ground(field: Field) -> Self {
        Self::new(field, 1, vec![vec![(0, field.one())]], vec![field.one()]).expect("well-formed")
    }

    /// Full matrix algebra with basis `E_{ab}` at index `a * n + b`.
    pub fn matrix_algebra(field: Field, n: usize) -> Self {
        let dim = n * n;
        let mut products = vec![Vec::new(); dim * dim];
        for a in 0..n {
            for b in 0..n {
                for d in 0..n {
                    products[(a * n + b) * dim + (b * n + d)] = vec![(a * n + d, field.one())];
                }
            }
        }
        let mut unit = vec![field.zero(); dim];
        for a in 0..n {
            unit[a * n + a] = field.one();
        }
        Self::new(field, dim, products, unit).expect("well-formed")
    }

    /// `k[x]/(x^2)` with basis `1, x`.
    pub fn dual_numbers(field: Field) -> Self {
        let one = field.one();
        let products = vec![vec![(0, one.clone())], vec![(1, one.clone())], vec![(1, one)], vec![]];
        Self::new(field, 2, products, vec![field.one(), field.zero()]).expect("well-formed")
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit(&self) -> &Vector {
        &self.unit
    }

    /// `e_i e_j` as a sparse vector.
    pub fn product(&self, i: usize, j: usize) -> &SparseVec {
        &self.products[i * self.dim + j]
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> Scalar {
        self.product(i, j)
            .iter()
            .find(|(kk, _)| *kk == k)
            .map(|(_, x)| x.clone())
            .unwrap_or_else(|| self.field.zero())
    }

    /// Overwrites one structure constant. Used to build invalid inputs for tests and fault injection.
    pub fn with_structure_constant(&self, i: usize, j: usize, k: usize, value: Scalar) -> Self {
        let mut out = self.clone();
        out.generators = OnceLock::new();
        let p = &mut out.products[i * self.dim + j];
        p.retain(|(kk, _)| *kk != k);
        p.push((k, value));
        *p = sparse_collect(std::mem::take(p));
        out
    }

    pub fn basis_vector(&self, i: usize) -> Vector {
        let mut v = vec![self.field.zero(); self.dim];
        v[i] = self.field.one();
        v
    }

    pub fn zero_vector(&self) -> Vector {
        vec![self.field.zero(); self.dim]
    }

    pub fn mul(&self, u: &[Scalar], v: &[Scalar]) -> Vector {
        let mut out = self.zero_vector();
        for (i, a) in u.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in v.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                let ab = a * b;
                for (k, c) in self.product(i, j) {
                    out[*k] += &(&ab * c);
                }
            }
        }
        out
    }

    fn mul_sparse(&self, u: &SparseVec, v: &SparseVec) -> SparseVec {
        let mut terms = Vec::new();
        for (i, a) in u {
            for (j, b) in v {
                let ab = a * b;
                for (k, c) in self.product(*i, *j) {
                    terms.push((*k, &ab * c));
                }
            }
        }
        sparse_collect(terms)
    }

    /// Checks associativity on every basis triple and both unit laws.
    pub fn validate(&self) -> std::result::Result<(), AxiomViolation> {
        let d = self.dim;
        for i in 0..d {
            for j in 0..d {
                let ij = self.product(i, j);
                for k in 0..d {
                    let left = self.mul_sparse(ij, &vec![(k, self.field.one())]);
                    let right = self.mul_sparse(&vec![(i, self.field.one())], self.product(j, k));
                    if left != right {
                        return Err(AxiomViolation::Associativity { i, j, k });
                    }
                }
            }
        }
        for i in 0..d {
            let e = self.basis_vector(i);
            if self.mul(&self.unit, &e) != e {
                return Err(AxiomViolation::LeftUnit { i });
            }
            if self.mul(&e, &self.unit) != e {
                return Err(AxiomViolation::RightUnit { i });
            }
        }
        Ok(())
    }

    pub fn validated(self) -> Result<Self> {
        self.validate().map_err(|v| Error::InvalidAlgebra(v.to_string()))?;
        Ok(self)
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.dim).all(|i| (0..i).all(|j| self.product(i, j) == self.product(j, i)))
    }

    /// Same basis, reversed multiplication.
    pub fn opposite(&self) -> Self {
        let d = self.dim;
        let products = (0..d * d).map(|ij| self.products[(ij % d) * d + ij / d].clone()).collect();
        Self::new(self.field, d, products, self.unit.clone()).expect("well-formed")
    }

    /// Tensor product algebra; basis `(i, j)` at index `i * other.dim + j`.
    pub fn tensor(&self, other: &FinAlgebra) -> Result<Self> {
        if self.field != other.field {
            return Err(Error::FieldMismatch { expected: self.field, found: other.field });
        }
        let (d1, d2) = (self.dim, other.dim);
        let dim = d1 * d2;
        let mut products = Vec::with_capacity(dim * dim);
        for i in 0..d1 {
            for j in 0..d2 {
                for k in 0..d1 {
                    for l in 0..d2 {
                        let mut terms = Vec::new();
                        for (a, x) in self.product(i, k) {
                            for (b, y) in other.product(j, l) {
                                terms.push((a * d2 + b, x * y));
                            }
                        }
                        products.push(sparse_collect(terms));
                    }
                }
            }
        }
        let mut unit = vec![self.field.zero(); dim];
        for i in 0..d1 {
            for j in 0..d2 {
                unit[i * d2 + j] = &self.unit[i] * &other.unit[j];
            }
        }
        Self::new(self.field, dim, products, unit)
    }

    /// Matrix of `v -> x v` in the basis.
    pub fn left_multiplication(&self, x: &[Scalar]) -> crate::exactla::Matrix {
        let cols: Vec<Vector> = (0..self.dim).map(|j| self.mul(x, &self.basis_vector(j))).collect();
        crate::exactla::Matrix::from_columns(self.field, self.dim, &cols)
    }

    /// Matrix of `v -> v x` in the basis.
    pub fn right_multiplication(&self, x: &[Scalar]) -> crate::exactla::Matrix {
        let cols: Vec<Vector> = (0..self.dim).map(|j| self.mul(&self.basis_vector(j), x)).collect();
        crate::exactla::Matrix::from_columns(self.field, self.dim, &cols)
    }

    /// Basis indices that generate the algebra, chosen greedily in basis order.
    ///
    /// Module and centrality conditions only need to be imposed on these.
    pub fn generators(&self) -> &[usize] {
        self.generators.get_or_init(|| self.compute_generators())
    }

    fn compute_generators(&self) -> Vec<usize> {
        let one = self.field.one();
        let mut span = Echelon::new(self.field, self.dim);
        let mut basis: Vec<SparseVec> = Vec::new();
        let unit = crate::exactla::sparse_from_dense(&self.unit);
        if span.insert(unit.clone()) {
            basis.push(unit);
        }
        let mut gens: Vec<usize> = Vec::new();
        for i in 0..self.dim {
            if span.is_full() {
                break;
            }
            let e = vec![(i, one.clone())];
            if span.reduce_leading(e).is_empty() {
                continue;
            }
            gens.push(i);
            // Close span(words) under right multiplication by every generator.
            let mut frontier: Vec<SparseVec> = basis.clone();
            while let Some(v) = frontier.pop() {
                for &s in &gens {
                    let w = self.mul_sparse(&v, &vec![(s, one.clone())]);
                    if span.insert(w.clone()) {
                        basis.push(w.clone());
                        frontier.push(w);
                    }
                }
            }
        }
        gens
    }
}

/// The group algebra `k[K]` together with the Maschke flag.
#[derive(Clone, Debug)]
pub struct GroupAlgebra {
    pub algebra: FinAlgebra,
    /// False when the characteristic divides the group order, so semisimplicity may fail.
    pub maschke: bool,
}

/// `k[K]` with basis indexed by group elements and `e_g e_h = e_{gh}`.
pub fn group_algebra(group: &FiniteGroup, field: Field) -> GroupAlgebra {
    let n = group.order();
    let mut products = Vec::with_capacity(n * n);
    for g in group.elements() {
        for h in group.elements() {
            products.push(vec![(group.mul(g, h), field.one())]);
        }
    }
    let mut unit = vec![field.zero(); n];
    unit[group.identity()] = field.one();
    let algebra = FinAlgebra::new(field, n, products, unit).expect("well-formed");
    let p = field.characteristic() as usize;
    GroupAlgebra { algebra, maschke: p == 0 || !n.is_multiple_of(p) }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_algebras_validate() {
        let q = Field::Rational;
        assert!(FinAlgebra::ground(q).validate().is_ok());
        assert!(FinAlgebra::matrix_algebra(q, 2).validate().is_ok());
        assert!(FinAlgebra::dual_numbers(q).validate().is_ok());
        let s3 = FiniteGroup::symmetric(3).unwrap();
        assert!(group_algebra(&s3, q).algebra.validate().is_ok());
    }

    #[test]
    fn perturbed_constant_is_named() {
        let q = Field::Rational;
        let m2 = FinAlgebra::matrix_algebra(q, 2);
        // E_00 * E_00 = 2 E_00. The triple (0, 0, 0) still agrees (both sides 4 E_00),
        // but (E_00 E_00) E_01 = 2 E_01 while E_00 (E_00 E_01) = E_01.
        let bad = m2.with_structure_constant(0, 0, 0, q.from_i64(2));
        assert_eq!(bad.validate(), Err(AxiomViolation::Associativity { i: 0, j: 0, k: 1 }));
    }

    #[test]
    fn group_algebra_shape() {
        let q = Field::Rational;
        let c2 = FiniteGroup::cyclic(2).unwrap();
        let ga = group_algebra(&c2, q);
        assert_eq!(ga.algebra.dim(), 2);
        assert!(ga.algebra.is_commutative());
        assert!(ga.maschke);
        let modular = group_algebra(&FiniteGroup::cyclic(3).unwrap(), Field::prime(3).unwrap());
        assert!(!modular.maschke);
    }

    #[test]
    fn generators_are_small() {
        let q = Field::Rational;
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let ga = group_algebra(&s3, q).algebra;
        assert_eq!(ga.generators().len(), 2);
        assert!(FinAlgebra::ground(q).generators().is_empty());
    }

    #[test]
    fn opposite_of_matrix_algebra_validates() {
        let m = FinAlgebra::matrix_algebra(Field::Rational, 2);
        let op = m.opposite();
        assert!(op.validate().is_ok());
        assert_eq!(op.structure_constant(0, 1, 1), m.structure_constant(1, 0, 1));
        assert_eq!(op.opposite(), m);
    }
}
