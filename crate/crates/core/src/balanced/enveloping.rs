use std::sync::Arc;

use crate::algebra::{AlgModule, FinAlgebra, Side};
use crate::error::{Error, Result};
use crate::exactla::{sparse_collect, Echelon, Matrix, Vector};
use crate::gradedcat::{GradedAlgebra, GradedBimodule, GradedObject};
use crate::groups::FiniteGroup;

/// The algebra `E` whose left modules are the graded `A`-`B`-bimodules.
///
/// Basis `a_i (x) d_h (x) b_j` at index `(i * |K| + h) * dim B + j`, acting on a
/// bimodule by "project to grade `h`, act by `b_j` on the right, then by `a_i` on the
/// left". Products follow
/// `(a (x) d_h (x) b)(a' (x) d_h' (x) b') = [h = |a'| h' |b'|] aa' (x) d_h' (x) b'b`.
#[derive(Clone, Debug)]
pub struct EnvelopingAlgebra {
    pub left: Arc<GradedAlgebra>,
    pub right: Arc<GradedAlgebra>,
    pub algebra: Arc<FinAlgebra>,
}

impl EnvelopingAlgebra {
    pub fn new(left: Arc<GradedAlgebra>, right: Arc<GradedAlgebra>) -> Result<Self> {
        if !crate::gradedcat::same_group(left.group(), right.group()) {
            return Err(Error::GroupMismatch);
        }
        if left.field() != right.field() {
            return Err(Error::FieldMismatch { expected: left.field(), found: right.field() });
        }
        let group = left.group().clone();
        let (da, n, db) = (left.dim(), group.order(), right.dim());
        let (a, b) = (left.algebra(), right.algebra());
        let dim = da * n * db;
        let index = |i: usize, h: usize, j: usize| (i * n + h) * db + j;
        let mut products = vec![Vec::new(); dim * dim];
        for i in 0..da {
            for h in 0..n {
                for j in 0..db {
                    let x = index(i, h, j);
                    for i2 in 0..da {
                        for j2 in 0..db {
                            // Only h' = |a'|^-1 h |b'|^-1 survives.
                            let h2 = group.mul(group.mul(group.inv(left.grade(i2)), h), group.inv(right.grade(j2)));
                            let mut terms = Vec::new();
                            for (k, c) in a.product(i, i2) {
                                for (l, d) in b.product(j2, j) {
                                    terms.push((index(*k, h2, *l), c * d));
                                }
                            }
                            products[x * dim + index(i2, h2, j2)] = sparse_collect(terms);
                        }
                    }
                }
            }
        }
        let mut unit = vec![left.field().zero(); dim];
        for i in 0..da {
            for j in 0..db {
                let c = &a.unit()[i] * &b.unit()[j];
                if !c.is_zero() {
                    for h in 0..n {
                        unit[index(i, h, j)] = c.clone();
                    }
                }
            }
        }
        let algebra = Arc::new(FinAlgebra::new(left.field(), dim, products, unit)?);
        Ok(EnvelopingAlgebra { left, right, algebra })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        self.left.group()
    }

    pub fn index(&self, i: usize, h: usize, j: usize) -> usize {
        (i * self.group().order() + h) * self.right.dim() + j
    }

    /// The grade projector `1 (x) d_h (x) 1`.
    pub fn grade_projector(&self, h: usize) -> Vector {
        let mut v = self.algebra.zero_vector();
        for i in 0..self.left.dim() {
            for j in 0..self.right.dim() {
                v[self.index(i, h, j)] = &self.left.algebra().unit()[i] * &self.right.algebra().unit()[j];
            }
        }
        v
    }

    /// `a_i (x) 1 (x) 1`.
    pub fn left_element(&self, i: usize) -> Vector {
        let mut v = self.algebra.zero_vector();
        for h in self.group().elements() {
            for j in 0..self.right.dim() {
                v[self.index(i, h, j)] = self.right.algebra().unit()[j].clone();
            }
        }
        v
    }

    /// `1 (x) 1 (x) b_j`.
    pub fn right_element(&self, j: usize) -> Vector {
        let mut v = self.algebra.zero_vector();
        for h in self.group().elements() {
            for i in 0..self.left.dim() {
                v[self.index(i, h, j)] = self.left.algebra().unit()[i].clone();
            }
        }
        v
    }

    fn check_bimodule(&self, x: &GradedBimodule) -> Result<()> {
        if **x.left_algebra() != *self.left || **x.right_algebra() != *self.right {
            return Err(Error::AlgebraMismatch("bimodule is over different algebras".into()));
        }
        Ok(())
    }

    /// The left `E`-module with the same underlying space.
    pub fn to_module(&self, x: &GradedBimodule) -> Result<AlgModule> {
        self.check_bimodule(x)?;
        let field = x.field();
        let d = x.dim();
        let n = self.group().order();
        let mut action = vec![Matrix::zeros(field, d, d); self.algebra.dim()];
        for i in 0..self.left.dim() {
            for j in 0..self.right.dim() {
                let lr = x.left_action(i) * x.right_action(j);
                // Multiplying by the grade projector on the right keeps the grade-h columns.
                for (r, c) in lr.nonzero_positions().collect::<Vec<_>>() {
                    action[self.index(i, x.grade(c), j)][(r, c)] = lr[(r, c)].clone();
                }
            }
        }
        debug_assert_eq!(action.len(), self.left.dim() * n * self.right.dim());
        AlgModule::new(self.algebra.clone(), Side::Left, d, action)
    }

    /// Back to a graded bimodule. The new basis vectors are the pivot columns of the
    /// grade projectors, ordered by pivot column, so a module produced by
    /// [`EnvelopingAlgebra::to_module`] comes back with its original basis.
    pub fn from_module(&self, v: &AlgModule) -> Result<GradedBimodule> {
        if !Arc::ptr_eq(v.algebra(), &self.algebra) && **v.algebra() != *self.algebra {
            return Err(Error::AlgebraMismatch("module is not over this enveloping algebra".into()));
        }
        if v.side() != Side::Left {
            return Err(Error::SideMismatch("expected a left module".into()));
        }
        let field = v.field();
        let d = v.dim();
        let mut picked: Vec<(usize, usize, Vector)> = Vec::new();
        for h in self.group().elements() {
            let p = v.action_of(&self.grade_projector(h));
            let mut span = Echelon::new(field, d);
            for c in 0..d {
                if span.insert(p.sparse_column(c)) {
                    picked.push((c, h, p.column(c)));
                }
            }
        }
        picked.sort_by_key(|(c, _, _)| *c);
        let basis: Vec<Vector> = picked.iter().map(|(_, _, col)| col.clone()).collect();
        let change = Matrix::from_columns(field, d, &basis);
        let back = change
            .inverse()
            .ok_or_else(|| Error::InvalidModule("grade projectors do not decompose the module".into()))?;
        let conj = |m: Matrix| &(&back * &m) * &change;
        let left_action = (0..self.left.dim()).map(|i| conj(v.action_of(&self.left_element(i)))).collect();
        let right_action = (0..self.right.dim()).map(|j| conj(v.action_of(&self.right_element(j)))).collect();
        let grading = GradedObject::new(self.group().clone(), picked.iter().map(|(_, h, _)| *h).collect())?;
        GradedBimodule::new(self.left.clone(), self.right.clone(), grading, left_action, right_action)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Semisimplicity;
    use crate::exactla::Field;

    #[test]
    fn units_give_function_algebra() {
        let q = Field::Rational;
        let g = Arc::new(FiniteGroup::symmetric(3).unwrap());
        let u = Arc::new(GradedAlgebra::unit(g.clone(), q));
        let e = EnvelopingAlgebra::new(u.clone(), u).unwrap();
        assert_eq!(e.algebra.dim(), 6);
        assert!(e.algebra.is_commutative());
        assert!(e.algebra.validate().is_ok());
        for h in g.elements() {
            let p = e.grade_projector(h);
            assert_eq!(e.algebra.mul(&p, &p), p);
        }
    }

    #[test]
    fn group_algebra_envelope_over_z2() {
        let q = Field::Rational;
        let g = Arc::new(FiniteGroup::cyclic(2).unwrap());
        let a = Arc::new(GradedAlgebra::group_algebra(g, q));
        let e = EnvelopingAlgebra::new(a.clone(), a).unwrap();
        assert_eq!(e.algebra.dim(), 8);
        assert!(e.algebra.validate().is_ok());
        assert_eq!(e.algebra.semisimplicity_certificate(), Semisimplicity::Certified);
    }

    #[test]
    fn converters_round_trip() {
        let q = Field::Rational;
        let g = Arc::new(FiniteGroup::cyclic(2).unwrap());
        let a = Arc::new(GradedAlgebra::group_algebra(g.clone(), q));
        let e = EnvelopingAlgebra::new(a.clone(), a.clone()).unwrap();
        let x = crate::gradedcat::GradedModule::regular(a.clone(), Side::Left);
        let y = crate::gradedcat::GradedModule::free(a.clone(), Side::Right, &[1, 0]).unwrap();
        let bx = super::super::box_object(&x, &y).unwrap();
        let m = e.to_module(&bx).unwrap();
        assert!(m.validate().is_ok());
        let back = e.from_module(&m).unwrap();
        assert_eq!(back.grading(), bx.grading());
        assert_eq!(back.left_actions(), bx.left_actions());
        assert_eq!(back.right_actions(), bx.right_actions());
    }

    #[test]
    fn symmetric_group_envelope_center() {
        let q = Field::Rational;
        let g = Arc::new(FiniteGroup::symmetric(3).unwrap());
        let a = Arc::new(GradedAlgebra::group_algebra(g, q));
        let e = EnvelopingAlgebra::new(a.clone(), a).unwrap();
        assert_eq!(e.algebra.dim(), 216);
        assert_eq!(e.algebra.center_basis().len(), 3);
    }
}
