//! Seeded random instances for property sweeps: graded objects, free modules with
//! shifts, their quotients, short exact sequences and boxed bimodules.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::Side;
use crate::error::Result;
use crate::exactla::{Field, Matrix, Scalar, Vector};
use crate::gradedcat::{GradedAlgebra, GradedBimodule, GradedModule, GradedObject, ShortExactSequence};
use crate::groups::FiniteGroup;

/// A group together with the field it is paired with in the standard corpus.
#[derive(Clone, Debug)]
pub struct CorpusGroup {
    pub name: &'static str,
    pub group: Arc<FiniteGroup>,
    pub field: Field,
}

impl CorpusGroup {
    pub fn group_algebra(&self) -> Arc<GradedAlgebra> {
        Arc::new(GradedAlgebra::group_algebra(self.group.clone(), self.field))
    }

    pub fn unit_algebra(&self) -> Arc<GradedAlgebra> {
        Arc::new(GradedAlgebra::unit(self.group.clone(), self.field))
    }

    pub fn flat_group_algebra(&self) -> Arc<GradedAlgebra> {
        Arc::new(GradedAlgebra::group_algebra_trivially_graded(self.group.clone(), self.field))
    }

    /// The graded algebra objects used for sweeps over this group.
    pub fn algebras(&self) -> Vec<(&'static str, Arc<GradedAlgebra>)> {
        vec![("unit", self.unit_algebra()), ("group-algebra", self.group_algebra()), ("flat-group-algebra", self.flat_group_algebra())]
    }
}

/// `Z/2` over the rationals, `Z/3` over `F_7`, `S_3` over the rationals.
pub fn standard_groups() -> Vec<CorpusGroup> {
    vec![
        CorpusGroup { name: "Z2", group: Arc::new(FiniteGroup::cyclic(2).expect("valid")), field: Field::Rational },
        CorpusGroup { name: "Z3", group: Arc::new(FiniteGroup::cyclic(3).expect("valid")), field: Field::Prime(7) },
        CorpusGroup { name: "S3", group: Arc::new(FiniteGroup::symmetric(3).expect("valid")), field: Field::Rational },
    ]
}

/// Size limits for sampled instances.
#[derive(Clone, Copy, Debug)]
pub struct Limits {
    pub max_object_dim: usize,
    pub max_free_rank: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_object_dim: 3, max_free_rank: 2 }
    }
}

pub struct Sampler {
    rng: ChaCha8Rng,
    pub limits: Limits,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed), limits: Limits::default() }
    }

    pub fn with_limits(seed: u64, limits: Limits) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed), limits }
    }

    pub fn index(&mut self, bound: usize) -> usize {
        self.rng.gen_range(0..bound)
    }

    pub fn scalar(&mut self, field: Field) -> Scalar {
        field.from_i64(self.rng.gen_range(-3..=3))
    }

    pub fn nonzero_scalar(&mut self, field: Field) -> Scalar {
        loop {
            let s = self.scalar(field);
            if !s.is_zero() {
                return s;
            }
        }
    }

    pub fn integers(&mut self, n: usize) -> Vec<i64> {
        (0..n).map(|_| self.rng.gen_range(-4..=4)).collect()
    }

    pub fn matrix(&mut self, field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix::from_i64(field, rows, cols, &self.integers(rows * cols))
    }

    /// A nonzero graded object of total dimension at most `max_object_dim`.
    pub fn object(&mut self, group: &Arc<FiniteGroup>) -> GradedObject {
        let total = self.rng.gen_range(1..=self.limits.max_object_dim);
        let grades = (0..total).map(|_| self.index(group.order())).collect::<Vec<_>>();
        let mut dims = vec![0; group.order()];
        for g in grades {
            dims[g] += 1;
        }
        GradedObject::from_dims(group.clone(), &dims).expect("dims match the group")
    }

    /// A random vector supported on one grade of `m`, or `None` for the zero module.
    pub fn homogeneous_vector(&mut self, m: &GradedModule) -> Option<Vector> {
        if m.dim() == 0 {
            return None;
        }
        let g = m.grade(self.index(m.dim()));
        let field = m.field();
        let mut v: Vector = (0..m.dim()).map(|i| if m.grade(i) == g { self.scalar(field) } else { field.zero() }).collect();
        if v.iter().all(Scalar::is_zero) {
            let i = (0..m.dim()).find(|&i| m.grade(i) == g).expect("grade occurs");
            v[i] = field.one();
        }
        Some(v)
    }

    pub fn free_module(&mut self, algebra: &Arc<GradedAlgebra>, side: Side) -> Result<GradedModule> {
        let rank = self.rng.gen_range(1..=self.limits.max_free_rank);
        let order = algebra.group().order();
        let shifts: Vec<usize> = (0..rank).map(|_| self.index(order)).collect();
        GradedModule::free(algebra.clone(), side, &shifts)
    }

    /// `0 -> S -> F -> F/S -> 0` with `F` free and `S` generated by one homogeneous vector.
    pub fn sequence(&mut self, algebra: &Arc<GradedAlgebra>, side: Side) -> Result<ShortExactSequence> {
        let middle = self.free_module(algebra, side)?;
        let generator = self.homogeneous_vector(&middle).into_iter().collect::<Vec<_>>();
        ShortExactSequence::from_submodule(&middle, &generator)
    }

    /// A free module, a quotient of one, or occasionally zero.
    pub fn module(&mut self, algebra: &Arc<GradedAlgebra>, side: Side) -> Result<GradedModule> {
        match self.index(8) {
            0 => Ok(GradedModule::zero(algebra.clone(), side)),
            1..=4 => self.free_module(algebra, side),
            _ => Ok(self.sequence(algebra, side)?.quotient),
        }
    }

    /// A box of sampled modules, sometimes summed with a second one.
    pub fn bimodule(&mut self, a: &Arc<GradedAlgebra>, b: &Arc<GradedAlgebra>) -> Result<GradedBimodule> {
        let first = crate::balanced::box_object(&self.module(a, Side::Left)?, &self.module(b, Side::Right)?)?;
        if self.index(3) == 0 {
            let second = crate::balanced::box_object(&self.module(a, Side::Left)?, &self.module(b, Side::Right)?)?;
            first.direct_sum(&second)
        } else {
            Ok(first)
        }
    }
}
