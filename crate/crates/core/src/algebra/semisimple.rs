use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::FinAlgebra;
use crate::error::{Error, Result};
use crate::exactla::{kernel_of_rows, solve_affine, sparse_collect, sparse_to_dense, Echelon, Field, Matrix, Scalar, Vector};

/// Outcome of the trace-form test. Degeneracy never proves non-semisimplicity in
/// positive characteristic, so the negative outcome is only `Unknown`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Semisimplicity {
    Certified,
    Unknown,
}

/// How the caller vouches that the ground field splits the algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Splitting {
    /// Taken on trust, e.g. from the group splitting-field policy.
    Asserted,
    /// Checked by splitting the center into primitive idempotents over the ground field.
    Verify,
}

impl FinAlgebra {
    /// Basis of the center, solving `x s = s x` for each generator `s`.
    pub fn center_basis(&self) -> Vec<Vector> {
        let d = self.dim;
        let mut rows = Vec::new();
        for &s in self.generators() {
            let mut per_k: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); d];
            for j in 0..d {
                for (k, c) in self.product(j, s) {
                    per_k[*k].push((j, c.clone()));
                }
                for (k, c) in self.product(s, j) {
                    per_k[*k].push((j, -c));
                }
            }
            rows.extend(per_k.into_iter().map(sparse_collect).filter(|r| !r.is_empty()));
        }
        kernel_of_rows(self.field, d, rows).iter().map(|v| sparse_to_dense(self.field, v, d)).collect()
    }

    /// Gram matrix of `T(x, y) = trace(L_x L_y) = trace(L_{xy})` on the basis.
    pub fn trace_form(&self) -> Matrix {
        let d = self.dim;
        // t_k = trace of left multiplication by e_k.
        let t: Vec<Scalar> = (0..d)
            .map(|k| {
                let mut acc = self.field.zero();
                for l in 0..d {
                    if let Some((_, c)) = self.product(k, l).iter().find(|(m, _)| *m == l) {
                        acc += c;
                    }
                }
                acc
            })
            .collect();
        Matrix::from_fn(self.field, d, d, |i, j| {
            let mut acc = self.field.zero();
            for (k, c) in self.product(i, j) {
                acc += &(c * &t[*k]);
            }
            acc
        })
    }

    pub fn semisimplicity_certificate(&self) -> Semisimplicity {
        let form = self.trace_form();
        let mut e = Echelon::new(self.field, self.dim);
        for r in 0..self.dim {
            e.insert(form.sparse_row(r));
        }
        if e.is_full() {
            Semisimplicity::Certified
        } else {
            Semisimplicity::Unknown
        }
    }

    /// Number of simple modules, as the dimension of the center.
    ///
    /// Refuses unless the trace form certifies semisimplicity and the field is known
    /// to split the algebra.
    pub fn split_simple_count(&self, splitting: Splitting) -> Result<usize> {
        if self.semisimplicity_certificate() != Semisimplicity::Certified {
            return Err(Error::Precondition("trace form is degenerate, semisimplicity is not certified".into()));
        }
        let center = self.center_basis().len();
        if splitting == Splitting::Verify {
            match self.central_primitive_idempotents() {
                Some(idems) if idems.len() == center => {}
                _ => return Err(Error::Precondition(format!("the center does not split over {}", self.field))),
            }
        }
        Ok(center)
    }

    /// Central primitive idempotents, or `None` when the center does not split into
    /// copies of the ground field (non-split or non-semisimple center).
    ///
    /// Deterministic: refines along the center basis in order, roots in increasing order.
    pub fn central_primitive_idempotents(&self) -> Option<Vec<Vector>> {
        let center = self.center_basis();
        let mut idems = vec![self.unit.clone()];
        for z in &center {
            let mut refined = Vec::new();
            for e in &idems {
                let ze = self.mul(z, e);
                let coeffs = self.minimal_polynomial(&ze, e);
                let roots = field_roots(self.field, &coeffs)?;
                if roots.len() != coeffs.len() - 1 {
                    return None;
                }
                if roots.len() == 1 {
                    refined.push(e.clone());
                    continue;
                }
                for (a, lambda) in roots.iter().enumerate() {
                    let mut f = e.clone();
                    for (b, mu) in roots.iter().enumerate() {
                        if a == b {
                            continue;
                        }
                        let denom = (lambda - mu).inv().expect("distinct roots");
                        let factor: Vector = ze.iter().zip(e).map(|(x, y)| &(x - &(mu * y)) * &denom).collect();
                        f = self.mul(&f, &factor);
                    }
                    refined.push(f);
                }
            }
            idems = refined;
        }
        self.check_idempotents(&idems).then_some(idems)
    }

    fn check_idempotents(&self, idems: &[Vector]) -> bool {
        let mut sum = self.zero_vector();
        for (a, e) in idems.iter().enumerate() {
            if self.mul(e, e) != *e || e.iter().all(Scalar::is_zero) {
                return false;
            }
            for f in &idems[a + 1..] {
                if self.mul(e, f).iter().any(|x| !x.is_zero()) {
                    return false;
                }
            }
            for (s, x) in sum.iter_mut().zip(e) {
                *s += x;
            }
        }
        sum == self.unit
    }

    /// Monic minimal polynomial of `z` inside the corner with unit `e`, lowest coefficient first.
    fn minimal_polynomial(&self, z: &Vector, e: &Vector) -> Vec<Scalar> {
        let mut powers = vec![e.clone()];
        loop {
            let next = self.mul(powers.last().expect("nonempty"), z);
            let m = Matrix::from_columns(self.field, self.dim, &powers);
            if let Some(x) = solve_affine(&m, &next).expect("shapes agree").into_option() {
                let mut coeffs: Vec<Scalar> = x.into_iter().map(|c| -c).collect();
                coeffs.push(self.field.one());
                return coeffs;
            }
            powers.push(next);
        }
    }

    /// Sizes `n_i` of the matrix blocks `M_{n_i}(k)`, read off as `dim(e_i A) = n_i^2`
    /// for the central primitive idempotents. `None` when the center does not split or
    /// a block dimension is not a perfect square.
    pub fn block_sizes(&self) -> Option<Vec<usize>> {
        self.central_primitive_idempotents()?
            .iter()
            .map(|e| {
                let d = self.left_multiplication(e).rank();
                let n = (d as f64).sqrt().round() as usize;
                (n * n == d).then_some(n)
            })
            .collect()
    }
}

/// Distinct roots in the field of the polynomial with coefficients `coeffs` (lowest first),
/// in increasing order. `None` when the search is not attempted (huge coefficients or modulus).
fn field_roots(field: Field, coeffs: &[Scalar]) -> Option<Vec<Scalar>> {
    match field {
        Field::Prime(p) => {
            if p > 1 << 20 {
                return None;
            }
            Some(
                (0..p as i64)
                    .map(|x| field.from_i64(x))
                    .filter(|x| evaluate(field, coeffs, x).is_zero())
                    .collect(),
            )
        }
        Field::Rational => {
            let rats: Vec<BigRational> = coeffs.iter().map(Scalar::to_rational).collect();
            let mut roots = rational_roots(&rats)?;
            roots.sort();
            Some(roots.into_iter().map(Scalar::Rational).collect())
        }
    }
}

fn evaluate(field: Field, coeffs: &[Scalar], x: &Scalar) -> Scalar {
    coeffs.iter().rev().fold(field.zero(), |acc, c| &(&acc * x) + c)
}

/// Rational root test on the integer polynomial obtained by clearing denominators.
fn rational_roots(coeffs: &[BigRational]) -> Option<Vec<BigRational>> {
    let lcm = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let mut ints: Vec<BigInt> = coeffs.iter().map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    let mut roots = Vec::new();
    while ints.len() > 1 && ints[0].is_zero() {
        if roots.is_empty() {
            roots.push(BigRational::zero());
        }
        ints.remove(0);
    }
    if ints.len() <= 1 {
        return Some(roots);
    }
    let lead = ints.last().expect("nonempty").abs().to_u64()?;
    let constant = ints[0].abs().to_u64()?;
    const LIMIT: u64 = 1_000_000_000_000;
    if lead > LIMIT || constant > LIMIT {
        return None;
    }
    let eval = |x: &BigRational| {
        ints.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + BigRational::from_integer(c.clone()))
    };
    for q in divisors(lead) {
        for p in divisors(constant) {
            for sign in [1i64, -1] {
                let cand = BigRational::new(BigInt::from(sign) * BigInt::from(p), BigInt::from(q));
                if !roots.contains(&cand) && eval(&cand).is_zero() {
                    roots.push(cand);
                }
            }
        }
    }
    Some(roots)
}

fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}
