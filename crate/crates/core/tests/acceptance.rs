//! Acceptance criteria AC1-AC11. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails or runs past its time budget.

use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use boxprod::algebra::{Side, Splitting};
use boxprod::balanced::{
    box_sequence_left, box_sequence_right, coequalizer_presentation, corner_bimodule, deligne_product_plain,
    extend_balanced_functor, hom_formula_check, pentagon_instance, triangle_instance, BalancedProduct, EnvelopingAlgebra,
    RepresentedFunctor,
};
use boxprod::corpus::{standard_groups, CorpusGroup, Limits, Sampler};
use boxprod::gradedcat::{dual_object_with_zigzag, exactness_probe, GradedAlgebra, GradedBimodule, GradedModule, GradedObject};
use boxprod::modcat::{generator_check, ostrik_algebra, InternalHom};
use boxprod::{Field, FiniteGroup, Result};

const BUDGET: Duration = Duration::from_secs(60);
const SEED: u64 = 2024;

type Criterion = fn() -> Result<(bool, String)>;

/// Conjugacy classes counted straight from the Cayley table.
fn class_count_oracle(g: &FiniteGroup) -> usize {
    let n = g.order();
    let table = g.table();
    let inverse: Vec<usize> = (0..n).map(|a| (0..n).find(|&b| table[a][b] == g.identity()).unwrap()).collect();
    let mut seen = vec![false; n];
    let mut classes = 0;
    for x in 0..n {
        if seen[x] {
            continue;
        }
        classes += 1;
        for h in 0..n {
            seen[table[table[h][x]][inverse[h]]] = true;
        }
    }
    classes
}

fn tiny(seed: u64) -> Sampler {
    Sampler::with_limits(seed, Limits { max_object_dim: 2, max_free_rank: 1 })
}

/// Every one-dimensional object `k_g`.
fn simples(g: &Arc<FiniteGroup>) -> Vec<GradedObject> {
    (0..g.order()).map(|h| GradedObject::simple(g.clone(), h)).collect()
}

fn ac1() -> Result<(bool, String)> {
    let expected = [("Z2", 2), ("Z3", 3), ("S3", 3)];
    let mut ok = true;
    let mut detail = Vec::new();
    for (case, (name, want)) in standard_groups().iter().zip(expected) {
        let a = case.group_algebra();
        let count = BalancedProduct::new(a.clone(), a)?.simple_count(Splitting::Verify)?;
        let oracle = class_count_oracle(&case.group);
        ok &= case.name == name && count == want && count == oracle;
        detail.push(format!("{name}:{count}"));
    }
    Ok((ok, detail.join(" ")))
}

fn ac2() -> Result<(bool, String)> {
    let mut ok = true;
    let mut detail = Vec::new();
    for case in standard_groups() {
        let u = case.unit_algebra();
        let count = BalancedProduct::new(u.clone(), u)?.simple_count(Splitting::Verify)?;
        ok &= count == case.group.order();
        detail.push(format!("{}:{count}", case.name));
    }
    Ok((ok, detail.join(" ")))
}

fn ac3() -> Result<(bool, String)> {
    const PER_GROUP: usize = 50;
    let mut s = Sampler::new(SEED);
    let mut checked = 0;
    for case in standard_groups() {
        for k in 0..PER_GROUP {
            let algebras = case.algebras();
            let a = &algebras[k % algebras.len()].1;
            let (x, x2) = (s.module(a, Side::Left)?, s.module(a, Side::Left)?);
            let (y, y2) = (s.module(a, Side::Right)?, s.module(a, Side::Right)?);
            let r = hom_formula_check(&x, &x2, &y, &y2)?;
            if !r.holds() {
                return Ok((false, format!("{} quadruple {k}: lhs {} rhs {}", case.name, r.lhs, r.rhs)));
            }
            checked += 1;
        }
    }
    Ok((true, format!("{checked} quadruples")))
}

fn ac4() -> Result<(bool, String)> {
    let mut ok = true;
    let mut detail = Vec::new();
    for case in standard_groups() {
        let one = GradedModule::regular(case.group_algebra(), Side::Right);
        let dims = InternalHom::new(&one, &one)?.dims();
        ok &= dims.len() == case.group.order() && dims.iter().all(|&d| d == 1);
        detail.push(format!("{}:{dims:?}", case.name));
    }
    Ok((ok, detail.join(" ")))
}

fn ac5() -> Result<(bool, String)> {
    let mut s = Sampler::new(SEED);
    let mut count = 0;
    for case in standard_groups() {
        let mut objects = simples(&case.group);
        objects.extend((0..20).map(|_| s.object(&case.group)));
        objects.push(GradedObject::from_dims(case.group.clone(), &vec![2; case.group.order()])?);
        for u in &objects {
            let w = dual_object_with_zigzag(case.field, u)?;
            if !w.report.all() {
                return Ok((false, format!("{} object {:?}: {:?}", case.name, u.dims(), w.report)));
            }
            count += 1;
        }
    }
    Ok((true, format!("{count} objects")))
}

fn ac6() -> Result<(bool, String)> {
    const PER_GROUP: usize = 30;
    let mut s = tiny(SEED);
    let mut count = 0;
    for case in standard_groups() {
        let algebras = case.algebras();
        for k in 0..PER_GROUP {
            let a = &algebras[k % algebras.len()].1;
            let (x, y) = (s.module(a, Side::Left)?, s.module(a, Side::Right)?);
            let (c, c2) = (s.object(&case.group), s.object(&case.group));
            let p = pentagon_instance(&x, &c, &c2, &y)?;
            let t = triangle_instance(&x, &y)?;
            if !p.holds() || !t.holds() {
                return Ok((false, format!("{} triple {k}: pentagon {p:?} triangle {t:?}", case.name)));
            }
            count += 1;
        }
    }
    Ok((true, format!("{count} triples")))
}

fn ac7() -> Result<(bool, String)> {
    let mut s = Sampler::new(SEED);
    let mut checked = 0;
    for case in standard_groups() {
        for (name, b) in case.algebras() {
            let regular = GradedModule::regular(b.clone(), Side::Right);
            let normalized = ostrik_algebra(&regular)?.normalized_against_regular()?;
            if normalized != *b {
                return Ok((false, format!("{} {name}: normalized algebra differs", case.name)));
            }
            for shifts in [vec![0], vec![1 % case.group.order()], vec![0, case.group.order() - 1]] {
                let p = GradedModule::free(b.clone(), Side::Right, &shifts)?;
                let xs: Vec<GradedModule> = (0..4).map(|_| s.module(&b, Side::Right)).collect::<Result<_>>()?;
                if !generator_check(&p, &xs)?.is_generator() {
                    return Ok((false, format!("{} {name}: free module with shifts {shifts:?} is not a generator", case.name)));
                }
                let ost = ostrik_algebra(&p)?;
                for m in &xs {
                    let counit = ost.counit_check(m)?;
                    let x = s.module(&ost.algebra, Side::Right)?;
                    let unit = ost.unit_check(&x)?;
                    if !counit.is_iso() || !unit.is_iso() {
                        return Ok((false, format!("{} {name} {shifts:?}: counit {counit:?} unit {unit:?}", case.name)));
                    }
                    checked += 1;
                }
            }
        }
    }
    Ok((true, format!("{checked} unit/counit pairs, normalization exact")))
}

fn ac8() -> Result<(bool, String)> {
    let mut s = Sampler::new(SEED);
    let mut t = tiny(SEED);
    let mut count = 0;
    for case in standard_groups() {
        for (name, a) in case.algebras() {
            for _ in 0..4 {
                let x = if a.dim() <= 3 { s.bimodule(&a, &a)? } else { small_bimodule(&mut t, &a)? };
                let r = coequalizer_presentation(&x)?;
                if !r.is_iso() {
                    return Ok((false, format!("{} {name}: {r:?}", case.name)));
                }
                count += 1;
            }
        }
    }
    Ok((true, format!("{count} bimodules")))
}

fn small_bimodule(s: &mut Sampler, a: &Arc<GradedAlgebra>) -> Result<GradedBimodule> {
    boxprod::balanced::box_object(&s.module(a, Side::Left)?, &s.module(a, Side::Right)?)
}

/// Identity functor plus one functor per central primitive idempotent of `E`.
fn corpus_functors(a: &Arc<GradedAlgebra>) -> Result<Vec<RepresentedFunctor>> {
    let e = EnvelopingAlgebra::new(a.clone(), a.clone())?;
    let mut out = vec![RepresentedFunctor::identity(e.clone())];
    if let Some(idems) = e.algebra.central_primitive_idempotents() {
        for idem in &idems {
            out.push(RepresentedFunctor::new(e.clone(), corner_bimodule(&e.algebra, idem)?)?);
        }
    }
    Ok(out)
}

fn ac9() -> Result<(bool, String)> {
    let groups = standard_groups();
    let mut t = tiny(SEED);
    // Envelopes of dimension at most 27: k[Z2] and its flat version, k[Z3] (one instance), units of S3.
    let cases: Vec<(&CorpusGroup, Arc<GradedAlgebra>, usize)> = vec![
        (&groups[0], groups[0].group_algebra(), 4),
        (&groups[0], groups[0].flat_group_algebra(), 3),
        (&groups[0], groups[0].unit_algebra(), 3),
        (&groups[1], groups[1].unit_algebra(), 3),
        (&groups[1], groups[1].group_algebra(), 1),
        (&groups[2], groups[2].unit_algebra(), 3),
    ];
    let mut pairs = 0;
    let mut naturality = 0;
    let mut unique = 0;
    for (case, a, instances) in cases {
        let functors = corpus_functors(&a)?;
        let xs: Vec<GradedBimodule> = (0..instances).map(|_| small_bimodule(&mut t, &a)).collect::<Result<_>>()?;
        for (fi, functor) in functors.iter().enumerate() {
            // Only the identity functor is swept over every instance on the large envelope.
            if a.dim() * a.dim() * case.group.order() > 8 && fi > 0 {
                break;
            }
            let exts = xs.iter().map(|x| extend_balanced_functor(functor, x)).collect::<Result<Vec<_>>>()?;
            for (x, ext) in xs.iter().zip(&exts) {
                let r = &ext.report;
                if !r.is_iso() || r.extension_dim != r.oracle_dim {
                    return Ok((false, format!("{} functor {fi} on {:?}: {r:?}", case.name, x.grading().dims())));
                }
                pairs += 1;
                if r.unique_up_to_scalar() == Some(true) {
                    unique += 1;
                }
            }
            if a.dim() * a.dim() * case.group.order() <= 8 {
                for (i, j) in (0..xs.len()).flat_map(|i| (0..xs.len()).map(move |j| (i, j))) {
                    for phi in xs[i].hom_space(&xs[j])? {
                        let (_, natural) = exts[i].on_morphism(functor, &exts[j], &phi);
                        if !natural {
                            return Ok((false, format!("{} functor {fi}: extension not natural on ({i}, {j})", case.name)));
                        }
                        naturality += 1;
                    }
                }
            }
        }
    }
    Ok((true, format!("{pairs} (W, X) pairs, {unique} with a unique comparison, {naturality} naturality squares")))
}

fn ac10() -> Result<(bool, String)> {
    let groups = standard_groups();
    let (z2, s3) = (&groups[0], &groups[2]);
    let p = deligne_product_plain(z2.group_algebra().algebra(), s3.group_algebra().algebra())?;
    let count = p.split_simple_count(Splitting::Verify)?;
    let oracle = class_count_oracle(&z2.group) * class_count_oracle(&s3.group);
    Ok((count == 6 && count == oracle, format!("(Z2, S3): {count} simples, dim {}", p.dim())))
}

fn ac11() -> Result<(bool, String)> {
    let mut s = Sampler::new(SEED);
    let mut probes = 0;
    let mut cases = standard_groups();
    cases.push(CorpusGroup { name: "Z2/F2", group: Arc::new(FiniteGroup::cyclic(2)?), field: Field::Prime(2) });
    for case in &cases {
        for (name, a) in case.algebras() {
            for side in [Side::Left, Side::Right] {
                for _ in 0..3 {
                    let seq = s.sequence(&a, side)?;
                    for c in simples(&case.group) {
                        let r = exactness_probe(&c, &seq)?;
                        if !r.is_exact() {
                            return Ok((false, format!("{} {name} acted by k_g: {r:?}", case.name)));
                        }
                        probes += 1;
                    }
                    let r = match side {
                        Side::Left => box_sequence_left(&seq, &s.module(&a, Side::Right)?)?,
                        Side::Right => box_sequence_right(&s.module(&a, Side::Left)?, &seq)?,
                    };
                    if !r.is_exact() {
                        return Ok((false, format!("{} {name} boxed on the {side:?}: {r:?}", case.name)));
                    }
                    probes += 1;
                }
            }
        }
    }
    Ok((true, format!("{probes} probes")))
}

fn main() -> ExitCode {
    let criteria: [(&str, Criterion); 11] = [
        ("simple count of Bimod_{k[K],k[K]} is the class count", ac1),
        ("unit algebras give |K| simples", ac2),
        ("hom formula on randomized quadruples", ac3),
        ("IHom(1,1) has dimension 1 in every grade", ac4),
        ("zigzag composites are identities", ac5),
        ("pentagon and triangle close", ac6),
        ("reconstruction unit/counit and normalization", ac7),
        ("bimodules are cokernels of delta", ac8),
        ("extension matches the represented functor", ac9),
        ("plain Deligne product multiplies simple counts", ac10),
        ("exactness probes", ac11),
    ];
    let mut all = true;
    for (i, (title, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let (passed, detail) = match outcome {
            Ok((ok, detail)) => (ok && elapsed < BUDGET, detail),
            Err(e) => (false, format!("error: {e}")),
        };
        all &= passed;
        let verdict = if passed { "PASS" } else { "FAIL" };
        println!("AC{:<2} {verdict} {title}: {detail} [{:.2}s]", i + 1, elapsed.as_secs_f64());
    }
    if all { ExitCode::SUCCESS } else { ExitCode::FAILURE }
}
