use serde::Serialize;

use super::box_object;
use crate::error::{Error, Result};
use crate::exactla::{Field, Matrix};
use crate::gradedcat::{GradedBimodule, GradedModule, GradedObject};

/// `beta: (x (x) c) [] y -> x [] (c (x) y)` for one triple.
#[derive(Clone, Debug)]
pub struct BalancingWitness {
    pub source: GradedBimodule,
    pub target: GradedBimodule,
    pub matrix: Matrix,
    pub is_iso: bool,
}

/// Result of closing a pentagon or triangle instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CoherenceReport {
    pub dim: usize,
    pub composites_equal: bool,
    pub maps_are_isos: bool,
    pub objects_match: bool,
}

impl CoherenceReport {
    pub fn holds(&self) -> bool {
        self.composites_equal && self.maps_are_isos && self.objects_match
    }
}

/// Matrix sending basis vector `s` to basis vector `f(s)`.
fn tracking(field: Field, n: usize, f: impl Fn(usize) -> usize) -> Matrix {
    let mut m = Matrix::zeros(field, n, n);
    for s in 0..n {
        m[(f(s), s)] = field.one();
    }
    m
}

fn is_iso(source: &GradedBimodule, target: &GradedBimodule, m: &Matrix) -> bool {
    source.dim() == target.dim() && source.is_morphism(target, m) && m.inverse().is_some()
}

fn same_bimodule(a: &GradedBimodule, b: &GradedBimodule) -> bool {
    a.grading() == b.grading() && a.left_actions() == b.left_actions() && a.right_actions() == b.right_actions()
}

/// The balancing of the canonical functor, induced by the associator of `C`.
///
/// Tracks `(x_i (x) c_k) (x) y_j` to `x_i (x) (c_k (x) y_j)` basis vector by basis vector.
pub fn canonical_balancing(x: &GradedModule, c: &GradedObject, y: &GradedModule) -> Result<BalancingWitness> {
    let source = box_object(&x.act(c)?, y)?;
    let target = box_object(x, &y.act(c)?)?;
    let (dx, dc, dy) = (x.dim(), c.dim(), y.dim());
    let matrix = tracking(x.field(), source.dim(), |s| {
        let (ik, j) = (s / dy, s % dy);
        let (i, k) = (ik / dc, ik % dc);
        debug_assert!(i < dx);
        i * dc * dy + k * dy + j
    });
    let is_iso = is_iso(&source, &target, &matrix);
    Ok(BalancingWitness { source, target, matrix, is_iso })
}

/// `alpha_N o beta_{x, c c', y} o alpha_M = beta_{x, c, c' y} o beta_{x c, c', y}` as
/// maps `((x c) c') [] y -> x [] (c (c' y))`.
pub fn pentagon_instance(x: &GradedModule, c: &GradedObject, c2: &GradedObject, y: &GradedModule) -> Result<CoherenceReport> {
    let field = x.field();
    let cc2 = c.tensor(c2)?;
    let (dx, dc, dc2, dy) = (x.dim(), c.dim(), c2.dim(), y.dim());

    // alpha_M: ((x_i c_k) c'_l) y_j -> (x_i (c_k c'_l)) y_j
    let am_source = box_object(&x.act(c)?.act(c2)?, y)?;
    let am_target = box_object(&x.act(&cc2)?, y)?;
    let alpha_m = tracking(field, am_source.dim(), |s| {
        let (ikl, j) = (s / dy, s % dy);
        let (ik, l) = (ikl / dc2, ikl % dc2);
        let (i, k) = (ik / dc, ik % dc);
        ((i * dc + k) * dc2 + l) * dy + j
    });
    let beta_outer = canonical_balancing(x, &cc2, y)?;
    // alpha_N: x_i ((c_k c'_l) y_j) -> x_i (c_k (c'_l y_j))
    let an_source = box_object(x, &y.act(&cc2)?)?;
    let an_target = box_object(x, &y.act(c2)?.act(c)?)?;
    let alpha_n = tracking(field, an_source.dim(), |s| {
        let (i, klj) = (s / (dc * dc2 * dy), s % (dc * dc2 * dy));
        let (kl, j) = (klj / dy, klj % dy);
        let (k, l) = (kl / dc2, kl % dc2);
        i * dc * dc2 * dy + k * dc2 * dy + l * dy + j
    });
    let beta_first = canonical_balancing(&x.act(c)?, c2, y)?;
    let beta_second = canonical_balancing(x, c, &y.act(c2)?)?;
    debug_assert_eq!(am_source.dim(), dx * dc * dc2 * dy);

    let lhs = &(&alpha_n * &beta_outer.matrix) * &alpha_m;
    let rhs = &beta_second.matrix * &beta_first.matrix;
    let objects_match = same_bimodule(&am_target, &beta_outer.source)
        && same_bimodule(&beta_outer.target, &an_source)
        && same_bimodule(&am_source, &beta_first.source)
        && same_bimodule(&beta_first.target, &beta_second.source)
        && same_bimodule(&beta_second.target, &an_target);
    let maps_are_isos = is_iso(&am_source, &am_target, &alpha_m)
        && is_iso(&an_source, &an_target, &alpha_n)
        && beta_outer.is_iso
        && beta_first.is_iso
        && beta_second.is_iso;
    Ok(CoherenceReport { dim: am_source.dim(), composites_equal: lhs == rhs, maps_are_isos, objects_match })
}

/// `(id [] lambda_y) o beta_{x, 1, y} = rho_x [] id` as maps `(x 1) [] y -> x [] y`.
pub fn triangle_instance(x: &GradedModule, y: &GradedModule) -> Result<CoherenceReport> {
    if !crate::gradedcat::same_group(x.group(), y.group()) {
        return Err(Error::GroupMismatch);
    }
    let field = x.field();
    let one = GradedObject::unit(x.group().clone());
    let beta = canonical_balancing(x, &one, y)?;
    let plain = box_object(x, y)?;
    // With a one-dimensional unit, (x_i 1) y_j, x_i (1 y_j) and x_i y_j share an index.
    let rho = tracking(field, beta.source.dim(), |s| s);
    let lambda = tracking(field, beta.target.dim(), |s| s);
    let lhs = &lambda * &beta.matrix;
    let maps_are_isos = beta.is_iso && is_iso(&beta.source, &plain, &rho) && is_iso(&beta.target, &plain, &lambda);
    Ok(CoherenceReport { dim: plain.dim(), composites_equal: lhs == rho, maps_are_isos, objects_match: true })
}
