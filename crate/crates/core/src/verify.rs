//! Invariant suites over the built-in corpus, grouped by module, with an optional
//! injected fault for testing that failures are caught and named.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::{endomorphism_algebra_morita, AlgModule, Semisimplicity, Side, Splitting};
use crate::balanced::{
    box_object, box_sequence_left, box_sequence_right, canonical_balancing, coequalizer_presentation, corner_bimodule,
    deligne_product_plain, extend_balanced_functor, hom_formula_check, pentagon_instance, triangle_instance,
    BalancedProduct, EnvelopingAlgebra, RepresentedFunctor,
};
use crate::corpus::{standard_groups, CorpusGroup, Limits, Sampler};
use crate::error::{Error, Result};
use crate::exactla::{cokernel, kernel_basis, solve_affine, AffineSolution, Field, Matrix};
use crate::gradedcat::{dual_object_with_zigzag, exactness_probe, GradedAlgebra, GradedBimodule, GradedModule, GradedObject};
use crate::modcat::{generator_check, ostrik_algebra, CotensorReport, InternalHom};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Scope {
    Linalg,
    Algebra,
    Graded,
    Modcat,
    Balanced,
    All,
}

impl Scope {
    pub const PARTS: [Scope; 5] = [Scope::Linalg, Scope::Algebra, Scope::Graded, Scope::Modcat, Scope::Balanced];
}

impl FromStr for Scope {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "linalg" => Ok(Scope::Linalg),
            "algebra" => Ok(Scope::Algebra),
            "graded" => Ok(Scope::Graded),
            "modcat" => Ok(Scope::Modcat),
            "balanced" => Ok(Scope::Balanced),
            "all" => Ok(Scope::All),
            other => Err(Error::Parse(format!("unknown scope {other:?}"))),
        }
    }
}

impl fmt::Display for Scope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Scope::Linalg => "linalg",
            Scope::Algebra => "algebra",
            Scope::Graded => "graded",
            Scope::Modcat => "modcat",
            Scope::Balanced => "balanced",
            Scope::All => "all",
        };
        f.write_str(name)
    }
}

/// A deliberate corruption applied to the group algebra of every corpus group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Fault {
    /// Doubles the structure constant of `1 * g` for the first non-identity `g`.
    StructureConstant,
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub seed: u64,
    pub instances: usize,
    pub fault: Option<Fault>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { seed: 0, instances: 6, fault: None }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub passed: bool,
    pub witness: Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub scope: Scope,
    pub seed: u64,
    pub instances: usize,
    pub fault: Option<Fault>,
    pub checks: Vec<CheckRecord>,
    pub passed: bool,
}

impl SuiteReport {
    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

struct Outcome {
    passed: bool,
    witness: Value,
}

fn outcome(passed: bool, witness: Value) -> Result<Outcome> {
    Ok(Outcome { passed, witness })
}

/// Runs `n` instances, stopping at the first failure, whose witness is kept.
fn sweep(n: usize, mut f: impl FnMut(usize) -> Result<(bool, Value)>) -> Result<Outcome> {
    for i in 0..n {
        let (ok, witness) = f(i)?;
        if !ok {
            return outcome(false, json!({ "instances": i + 1, "counterexample": witness }));
        }
    }
    outcome(true, json!({ "instances": n }))
}

struct Recorder {
    checks: Vec<CheckRecord>,
}

impl Recorder {
    fn record(&mut self, name: String, result: Result<Outcome>) {
        let record = match result {
            Ok(Outcome { passed, witness }) => CheckRecord { name, passed, witness },
            Err(e) => CheckRecord { name, passed: false, witness: json!({ "error": e.to_string() }) },
        };
        self.checks.push(record);
    }
}

fn group_algebra(case: &CorpusGroup, fault: Option<Fault>) -> Arc<GradedAlgebra> {
    let a = case.group_algebra();
    match fault {
        None => a,
        Some(Fault::StructureConstant) => {
            let g = (0..case.group.order()).find(|&g| g != case.group.identity()).expect("nontrivial group");
            let e = case.group.identity();
            Arc::new(a.with_structure_constant(e, g, g, case.field.from_i64(2)))
        }
    }
}

pub fn run(scope: Scope, options: &VerifyOptions) -> SuiteReport {
    let mut rec = Recorder { checks: Vec::new() };
    let parts: Vec<Scope> = if scope == Scope::All { Scope::PARTS.to_vec() } else { vec![scope] };
    for part in parts {
        let mut sampler = Sampler::new(options.seed);
        match part {
            Scope::Linalg => linalg(&mut rec, &mut sampler, options),
            Scope::Algebra => algebra(&mut rec, &mut sampler, options),
            Scope::Graded => graded(&mut rec, &mut sampler, options),
            Scope::Modcat => modcat(&mut rec, &mut sampler, options),
            Scope::Balanced => balanced(&mut rec, &mut sampler, options),
            Scope::All => unreachable!("expanded above"),
        }
    }
    let passed = rec.checks.iter().all(|c| c.passed);
    SuiteReport { scope, seed: options.seed, instances: options.instances, fault: options.fault, checks: rec.checks, passed }
}

fn linalg(rec: &mut Recorder, s: &mut Sampler, o: &VerifyOptions) {
    for field in [Field::Rational, Field::Prime(7), Field::Prime(2)] {
        let name = field.name();
        rec.record(
            format!("linalg.rank_nullity[{name}]"),
            sweep(o.instances, |i| {
                let (r, c) = (2 + i % 4, 3 + i % 3);
                let m = s.matrix(field, r, c);
                let kernel = kernel_basis(field, &m)?;
                let annihilated = kernel.iter().all(|k| m.apply(k).iter().all(|x| x.is_zero()));
                Ok((m.rank() + kernel.len() == c && annihilated, json!({ "rows": r, "cols": c, "rank": m.rank() })))
            }),
        );
        rec.record(
            format!("linalg.cokernel[{name}]"),
            sweep(o.instances, |i| {
                let m = s.matrix(field, 4, 1 + i % 4);
                let ck = cokernel(&m);
                let ok = (&ck.projection * &m).is_zero()
                    && (&ck.projection * &ck.section).is_identity()
                    && ck.dim() + m.rank() == m.rows();
                Ok((ok, json!({ "cols": m.cols(), "coker_dim": ck.dim() })))
            }),
        );
        rec.record(
            format!("linalg.solve[{name}]"),
            sweep(o.instances, |_| {
                let m = s.matrix(field, 3, 4);
                let x = s.matrix(field, 4, 1).column(0);
                let b = m.apply(&x);
                let ok = match solve_affine(&m, &b)? {
                    AffineSolution::Solved(y) => m.apply(&y) == b,
                    AffineSolution::Inconsistent => false,
                };
                Ok((ok, json!({ "rank": m.rank() })))
            }),
        );
        rec.record(
            format!("linalg.inverse[{name}]"),
            sweep(o.instances, |_| {
                let m = s.matrix(field, 3, 3);
                let ok = match m.inverse() {
                    Some(inv) => (&m * &inv).is_identity() && m.rank() == 3,
                    None => m.rank() < 3 && m.determinant().is_zero(),
                };
                Ok((ok, json!({ "rank": m.rank() })))
            }),
        );
    }
    rec.record(
        "linalg.reduction_mod_p".into(),
        sweep(o.instances, |_| {
            let entries = s.integers(12);
            let q = Matrix::from_i64(Field::Rational, 3, 4, &entries).rank();
            let p = Matrix::from_i64(Field::Prime(3), 3, 4, &entries).rank();
            Ok((p <= q, json!({ "rank_q": q, "rank_f3": p })))
        }),
    );
}

fn algebra(rec: &mut Recorder, s: &mut Sampler, o: &VerifyOptions) {
    for case in standard_groups() {
        let n = case.name;
        let a = group_algebra(&case, o.fault);
        rec.record(
            format!("algebra.group_algebra_axioms[{n}]"),
            match a.validate() {
                Ok(()) => outcome(true, json!({ "dim": a.dim() })),
                Err(v) => outcome(false, json!({ "algebra": "group-algebra", "group": n, "violation": v.to_string() })),
            },
        );
        let alg = a.algebra().clone();
        rec.record(
            format!("algebra.semisimple_certificate[{n}]"),
            outcome(alg.semisimplicity_certificate() == Semisimplicity::Certified, json!({ "field": case.field.name() })),
        );
        let classes = case.group.conjugacy_class_count();
        let center = alg.center_basis().len();
        rec.record(
            format!("algebra.center_is_class_count[{n}]"),
            outcome(center == classes, json!({ "center_dim": center, "classes": classes })),
        );
        let blocks = alg.block_sizes();
        let sum = blocks.as_ref().map(|b| b.iter().map(|n| n * n).sum::<usize>());
        rec.record(
            format!("algebra.block_sizes[{n}]"),
            outcome(sum == Some(alg.dim()), json!({ "blocks": blocks, "dim": alg.dim() })),
        );
        rec.record(
            format!("algebra.morita_counit[{n}]"),
            (|| {
                let p = AlgModule::free(alg.clone(), Side::Left, 1 + s.index(2));
                let end = endomorphism_algebra_morita(&p)?;
                sweep(o.instances, |_| {
                    let x = s.module(&a, Side::Left)?.module().clone();
                    let check = end.counit_check(&x)?;
                    Ok((check.is_iso(), json!(check)))
                })
            })(),
        );
        rec.record(
            format!("algebra.opposite_and_tensor[{n}]"),
            (|| {
                let op = alg.opposite();
                let t = alg.tensor(&op)?;
                outcome(op.validate().is_ok() && t.validate().is_ok(), json!({ "tensor_dim": t.dim() }))
            })(),
        );
    }
}

fn graded(rec: &mut Recorder, s: &mut Sampler, o: &VerifyOptions) {
    for case in standard_groups() {
        let n = case.name;
        let g = &case.group;
        rec.record(
            format!("graded.zigzag[{n}]"),
            sweep(o.instances, |_| {
                let u = s.object(g);
                let w = dual_object_with_zigzag(case.field, &u)?;
                Ok((w.report.all(), json!({ "dims": u.dims(), "zigzags": w.report })))
            }),
        );
        rec.record(
            format!("graded.tensor_associative_unital[{n}]"),
            sweep(o.instances, |_| {
                let (u, v, w) = (s.object(g), s.object(g), s.object(g));
                let one = GradedObject::unit(g.clone());
                let ok = u.tensor(&v)?.tensor(&w)? == u.tensor(&v.tensor(&w)?)?
                    && one.tensor(&u)? == u
                    && u.tensor(&one)? == u;
                Ok((ok, json!({ "dims": [u.dims(), v.dims(), w.dims()] })))
            }),
        );
        let a = group_algebra(&case, o.fault);
        rec.record(
            format!("graded.module_axioms[{n}]"),
            sweep(o.instances, |i| {
                let side = if i % 2 == 0 { Side::Left } else { Side::Right };
                let m = s.module(&a, side)?;
                let v = m.validate();
                Ok((v.is_ok(), json!({ "dims": m.grading().dims(), "violation": v.err().map(|e| e.to_string()) })))
            }),
        );
        rec.record(
            format!("graded.exactness_probe[{n}]"),
            sweep(o.instances, |i| {
                let side = if i % 2 == 0 { Side::Left } else { Side::Right };
                let seq = s.sequence(&a, side)?;
                let c = GradedObject::simple(g.clone(), s.index(g.order()));
                let r = exactness_probe(&c, &seq)?;
                Ok((r.is_exact(), json!(r)))
            }),
        );
    }
}

fn modcat(rec: &mut Recorder, s: &mut Sampler, o: &VerifyOptions) {
    for case in standard_groups() {
        let n = case.name;
        let g = &case.group;
        let a = group_algebra(&case, o.fault);
        rec.record(
            format!("modcat.ihom_unit[{n}]"),
            (|| {
                let one = GradedModule::regular(a.clone(), Side::Right);
                let dims = InternalHom::new(&one, &one)?.dims();
                outcome(dims.iter().all(|&d| d == 1), json!({ "dims": dims }))
            })(),
        );
        rec.record(
            format!("modcat.adjunction[{n}]"),
            sweep(o.instances, |i| {
                let side = if i % 2 == 0 { Side::Right } else { Side::Left };
                let (m1, m2) = (s.module(&a, side)?, s.module(&a, side)?);
                let c = s.object(g);
                let r = InternalHom::new(&m1, &m2)?.adjunction_check(&c)?;
                Ok((r.holds(), json!(r)))
            }),
        );
        rec.record(
            format!("modcat.cotensor[{n}]"),
            sweep(o.instances, |i| {
                let side = if i % 2 == 0 { Side::Right } else { Side::Left };
                let (x, m) = (s.module(&a, side)?, s.module(&a, side)?);
                let c = s.object(g);
                let r = CotensorReport::check(&c, &x, &m)?;
                Ok((r.holds(), json!(r)))
            }),
        );
        rec.record(
            format!("modcat.reconstruction[{n}]"),
            (|| {
                let p = s.free_module(&a, Side::Right)?;
                let ost = ostrik_algebra(&p)?;
                sweep(o.instances.min(4), |_| {
                    let m = s.module(&a, Side::Right)?;
                    let counit = ost.counit_check(&m)?;
                    let x = s.module(&ost.algebra, Side::Right)?;
                    let unit = ost.unit_check(&x)?;
                    Ok((counit.is_iso() && unit.is_iso(), json!({ "counit": counit, "unit": unit })))
                })
            })(),
        );
        rec.record(
            format!("modcat.ostrik_regular_normalizes[{n}]"),
            (|| {
                let ost = ostrik_algebra(&GradedModule::regular(a.clone(), Side::Right))?;
                let normalized = ost.normalized_against_regular()?;
                outcome(normalized == *a, json!({ "dim": normalized.dim() }))
            })(),
        );
        rec.record(
            format!("modcat.free_is_generator[{n}]"),
            (|| {
                let p = s.free_module(&a, Side::Right)?;
                let xs = (0..o.instances).map(|_| s.module(&a, Side::Right)).collect::<Result<Vec<_>>>()?;
                let r = generator_check(&p, &xs)?;
                outcome(r.is_generator(), json!(r))
            })(),
        );
    }
}

/// A single box of rank-one modules, small enough for the extension sweeps.
fn small_bimodule(s: &mut Sampler, a: &Arc<GradedAlgebra>) -> Result<GradedBimodule> {
    box_object(&s.module(a, Side::Left)?, &s.module(a, Side::Right)?)
}

fn balanced(rec: &mut Recorder, s: &mut Sampler, o: &VerifyOptions) {
    let mut tiny = Sampler::with_limits(o.seed, Limits { max_object_dim: 2, max_free_rank: 1 });
    for case in standard_groups() {
        let n = case.name;
        let g = &case.group;
        let a = group_algebra(&case, o.fault);
        let u = case.unit_algebra();
        rec.record(
            format!("balanced.simple_count_units[{n}]"),
            (|| {
                let count = BalancedProduct::new(u.clone(), u.clone())?.simple_count(Splitting::Verify)?;
                outcome(count == g.order(), json!({ "count": count, "order": g.order() }))
            })(),
        );
        rec.record(
            format!("balanced.simple_count_group_algebra[{n}]"),
            (|| {
                let count = BalancedProduct::new(a.clone(), a.clone())?.simple_count(Splitting::Verify)?;
                let classes = g.conjugacy_class_count();
                outcome(count == classes, json!({ "count": count, "classes": classes }))
            })(),
        );
        // Smaller enveloping algebras for the module-level sweeps over S3.
        let small = if a.dim() * a.dim() * g.order() <= 8 { a.clone() } else { u.clone() };
        rec.record(
            format!("balanced.round_trip[{n}]"),
            (|| {
                let e = EnvelopingAlgebra::new(a.clone(), a.clone())?;
                sweep(o.instances, |_| {
                    let x = s.bimodule(&a, &a)?;
                    let back = e.from_module(&e.to_module(&x)?)?;
                    let ok = back.grading() == x.grading()
                        && back.left_actions() == x.left_actions()
                        && back.right_actions() == x.right_actions();
                    Ok((ok, json!({ "dims": x.grading().dims() })))
                })
            })(),
        );
        rec.record(
            format!("balanced.hom_formula[{n}]"),
            sweep(o.instances, |_| {
                let (x, x2) = (s.module(&a, Side::Left)?, s.module(&a, Side::Left)?);
                let (y, y2) = (s.module(&a, Side::Right)?, s.module(&a, Side::Right)?);
                let r = hom_formula_check(&x, &x2, &y, &y2)?;
                Ok((r.holds(), json!({ "report": r, "dims": [x.dim(), x2.dim(), y.dim(), y2.dim()] })))
            }),
        );
        rec.record(
            format!("balanced.pentagon_triangle[{n}]"),
            sweep(o.instances, |_| {
                let (x, y) = (tiny.module(&a, Side::Left)?, tiny.module(&a, Side::Right)?);
                let (c, c2) = (tiny.object(g), tiny.object(g));
                let p = pentagon_instance(&x, &c, &c2, &y)?;
                let t = triangle_instance(&x, &y)?;
                let beta = canonical_balancing(&x, &c, &y)?;
                Ok((p.holds() && t.holds() && beta.is_iso, json!({ "pentagon": p, "triangle": t })))
            }),
        );
        rec.record(
            format!("balanced.coequalizer[{n}]"),
            sweep(o.instances, |_| {
                let x = small_bimodule(&mut tiny, &a)?;
                let r = coequalizer_presentation(&x)?;
                Ok((r.is_iso(), json!(r)))
            }),
        );
        rec.record(
            format!("balanced.extension_identity[{n}]"),
            (|| {
                let functor = RepresentedFunctor::identity(EnvelopingAlgebra::new(small.clone(), small.clone())?);
                sweep(o.instances.min(3), |_| {
                    let x = small_bimodule(&mut tiny, &small)?;
                    let ext = extend_balanced_functor(&functor, &x)?;
                    Ok((ext.report.is_iso(), json!(ext.report)))
                })
            })(),
        );
        rec.record(
            format!("balanced.extension_blocks[{n}]"),
            (|| {
                let e = EnvelopingAlgebra::new(small.clone(), small.clone())?;
                let idems = e
                    .algebra
                    .central_primitive_idempotents()
                    .ok_or_else(|| Error::Precondition("enveloping center does not split".into()))?;
                let x = small_bimodule(&mut tiny, &small)?;
                let mut total = 0;
                for idem in &idems {
                    let functor = RepresentedFunctor::new(e.clone(), corner_bimodule(&e.algebra, idem)?)?;
                    let ext = extend_balanced_functor(&functor, &x)?;
                    if !ext.report.is_iso() {
                        return outcome(false, json!({ "report": ext.report }));
                    }
                    total += ext.report.extension_dim;
                }
                outcome(total == x.dim(), json!({ "blocks": idems.len(), "dim": x.dim(), "total": total }))
            })(),
        );
        rec.record(
            format!("balanced.box_exactness[{n}]"),
            sweep(o.instances, |i| {
                let r = if i % 2 == 0 {
                    box_sequence_left(&s.sequence(&a, Side::Left)?, &s.module(&a, Side::Right)?)?
                } else {
                    box_sequence_right(&s.module(&a, Side::Left)?, &s.sequence(&a, Side::Right)?)?
                };
                Ok((r.is_exact(), json!(r)))
            }),
        );
        rec.record(
            format!("balanced.box_validates[{n}]"),
            sweep(o.instances, |_| {
                let b = box_object(&s.module(&a, Side::Left)?, &s.module(&a, Side::Right)?)?;
                let v = b.validate();
                Ok((v.is_ok(), json!({ "dims": b.grading().dims(), "violation": v.err().map(|e| e.to_string()) })))
            }),
        );
    }
    rec.record(
        "balanced.deligne_plain[Z2,S3]".into(),
        (|| {
            let groups = standard_groups();
            let (z2, s3) = (&groups[0], &groups[2]);
            let p = deligne_product_plain(z2.group_algebra().algebra(), s3.group_algebra().algebra())?;
            let count = p.split_simple_count(Splitting::Verify)?;
            outcome(count == 6, json!({ "dim": p.dim(), "count": count }))
        })(),
    );
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scopes_parse() {
        for scope in Scope::PARTS.iter().chain([Scope::All].iter()) {
            assert_eq!(scope.to_string().parse::<Scope>().unwrap(), *scope);
        }
        assert!("nope".parse::<Scope>().is_err());
    }

    #[test]
    fn linalg_and_graded_pass() {
        let o = VerifyOptions { instances: 3, ..Default::default() };
        for scope in [Scope::Linalg, Scope::Graded] {
            let r = run(scope, &o);
            assert!(r.passed, "{:?}", r.failures().collect::<Vec<_>>());
        }
    }

    #[test]
    fn fault_is_named() {
        let o = VerifyOptions { instances: 2, fault: Some(Fault::StructureConstant), ..Default::default() };
        let r = run(Scope::Algebra, &o);
        assert!(!r.passed);
        let failed = r.failures().find(|c| c.name == "algebra.group_algebra_axioms[Z2]").unwrap();
        let violation = failed.witness["violation"].as_str().unwrap();
        assert!(violation.contains("associativity") || violation.contains("unit"), "{violation}");
    }
}
