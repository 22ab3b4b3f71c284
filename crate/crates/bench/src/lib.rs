//! Fixtures shared by the benchmarks.

use std::sync::Arc;

use boxprod::algebra::Side;
use boxprod::corpus::{standard_groups, Sampler};
use boxprod::gradedcat::{GradedAlgebra, GradedModule};
use boxprod::{Field, Matrix};

/// A deterministic integer matrix with a nontrivial kernel.
pub fn kernel_fixture(field: Field, n: usize) -> Matrix {
    Matrix::from_fn(field, n, n + 2, |r, c| field.from_i64(((r * 7 + c * 3) % 11) as i64 - 5))
}

pub fn group_algebra(index: usize) -> Arc<GradedAlgebra> {
    standard_groups()[index].group_algebra()
}

/// `(x, x', y, y')` sampled over the group algebra of the given corpus group.
pub fn hom_quadruple(index: usize, seed: u64) -> [GradedModule; 4] {
    let a = group_algebra(index);
    let mut s = Sampler::new(seed);
    [
        s.free_module(&a, Side::Left).expect("sampled"),
        s.free_module(&a, Side::Left).expect("sampled"),
        s.free_module(&a, Side::Right).expect("sampled"),
        s.free_module(&a, Side::Right).expect("sampled"),
    ]
}
