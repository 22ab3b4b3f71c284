use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use serde_json::json;

use boxprod::algebra::{Side, Splitting};
use boxprod::balanced::{hom_formula_check, splitting_policy, BalancedProduct};
use boxprod::corpus::Sampler;
use boxprod::formats::{parse_algebra_spec, parse_field, parse_group_spec, read_module};
use boxprod::gradedcat::{GradedAlgebra, GradedModule};
use boxprod::verify::{self, CheckRecord, Fault, Scope, VerifyOptions};
use boxprod::{Field, FiniteGroup};

use crate::report::RunReport;

/// Group, field and the two algebra objects shared by `balanced-product` and `homcheck`.
pub struct Setting {
    pub group_spec: String,
    pub field_spec: String,
    pub a_spec: String,
    pub b_spec: String,
}

struct Loaded {
    group: Arc<FiniteGroup>,
    field: Field,
    a: Arc<GradedAlgebra>,
    b: Arc<GradedAlgebra>,
}

impl Setting {
    fn inputs(&self) -> serde_json::Value {
        json!({ "group": self.group_spec, "field": self.field_spec, "algebra_a": self.a_spec, "algebra_b": self.b_spec })
    }

    fn load(&self) -> Result<Loaded> {
        let group = Arc::new(parse_group_spec(&self.group_spec).with_context(|| format!("loading group {:?}", self.group_spec))?);
        let field = parse_field(&self.field_spec)?;
        let a = Arc::new(
            parse_algebra_spec(&self.a_spec, &group, field).with_context(|| format!("loading algebra A from {:?}", self.a_spec))?,
        );
        let b = Arc::new(
            parse_algebra_spec(&self.b_spec, &group, field).with_context(|| format!("loading algebra B from {:?}", self.b_spec))?,
        );
        Ok(Loaded { group, field, a, b })
    }
}

fn record(name: &str, passed: bool, witness: serde_json::Value) -> CheckRecord {
    CheckRecord { name: name.to_string(), passed, witness }
}

pub fn balanced_product(setting: &Setting, seed: u64, instances: usize) -> Result<RunReport> {
    let start = Instant::now();
    let Loaded { group, field, a, b } = setting.load()?;
    let mut checks = Vec::new();
    for (name, alg) in [("algebra_a.axioms", &a), ("algebra_b.axioms", &b)] {
        let v = alg.validate();
        checks.push(record(name, v.is_ok(), json!({ "dim": alg.dim(), "violation": v.err().map(|e| e.to_string()) })));
    }
    let mut results = json!({
        "group_order": group.order(),
        "conjugacy_classes": group.conjugacy_class_count(),
        "dim_a": a.dim(),
        "dim_b": b.dim(),
        "splitting_policy": format!("{:?}", splitting_policy(&group, field)).to_lowercase(),
    });
    if checks.iter().all(|c| c.passed) {
        match BalancedProduct::new(a.clone(), b.clone()) {
            Ok(product) => {
                let e = &product.enveloping.algebra;
                checks.push(record("enveloping.axioms", true, json!({ "dim": e.dim() })));
                results["enveloping_dim"] = json!(e.dim());
                match product.simple_count(Splitting::Verify) {
                    Ok(n) => {
                        results["simples"] = json!(n);
                        results["simple_count_certified"] = json!(true);
                    }
                    Err(err) => {
                        results["simples"] = json!(null);
                        results["simple_count_certified"] = json!(false);
                        results["simple_count_note"] = json!(err.to_string());
                    }
                }
                checks.push(hom_sweep(&a, &b, seed, instances));
            }
            Err(err) => checks.push(record("enveloping.axioms", false, json!({ "error": err.to_string() }))),
        }
    }
    let inputs = json!({ "setting": setting.inputs(), "seed": seed, "instances": instances });
    Ok(RunReport::new("balanced-product", inputs, results, checks, start.elapsed()))
}

fn hom_sweep(a: &Arc<GradedAlgebra>, b: &Arc<GradedAlgebra>, seed: u64, instances: usize) -> CheckRecord {
    let mut s = Sampler::new(seed);
    let mut run = || -> boxprod::Result<CheckRecord> {
        for k in 0..instances {
            let (x, x2) = (s.module(a, Side::Left)?, s.module(a, Side::Left)?);
            let (y, y2) = (s.module(b, Side::Right)?, s.module(b, Side::Right)?);
            let r = hom_formula_check(&x, &x2, &y, &y2)?;
            if !r.holds() {
                let dims = [x.dim(), x2.dim(), y.dim(), y2.dim()];
                return Ok(record("hom_formula", false, json!({ "instance": k, "dims": dims, "lhs": r.lhs, "rhs": r.rhs })));
            }
        }
        Ok(record("hom_formula", true, json!({ "instances": instances })))
    };
    run().unwrap_or_else(|e| record("hom_formula", false, json!({ "error": e.to_string() })))
}

pub fn verify(scope: Scope, seed: u64, instances: usize, fault: Option<Fault>) -> RunReport {
    let start = Instant::now();
    let report = verify::run(scope, &VerifyOptions { seed, instances, fault });
    let inputs = json!({ "scope": scope, "seed": seed, "instances": instances, "fault": fault });
    RunReport::new("verify", inputs, json!({ "checks_run": report.checks.len() }), report.checks, start.elapsed())
}

pub struct HomFiles {
    pub x: PathBuf,
    pub x2: PathBuf,
    pub y: PathBuf,
    pub y2: PathBuf,
}

fn load_module(path: &Path, algebra: &Arc<GradedAlgebra>, side: Side, role: &str) -> Result<GradedModule> {
    let m = read_module(path, algebra).with_context(|| format!("loading {role} from {}", path.display()))?;
    if m.side() != side {
        bail!("{role} in {} must be a {side:?} module", path.display());
    }
    Ok(m)
}

pub fn homcheck(setting: &Setting, files: &HomFiles) -> Result<RunReport> {
    let start = Instant::now();
    let Loaded { a, b, .. } = setting.load()?;
    let x = load_module(&files.x, &a, Side::Left, "x")?;
    let x2 = load_module(&files.x2, &a, Side::Left, "x'")?;
    let y = load_module(&files.y, &b, Side::Right, "y")?;
    let y2 = load_module(&files.y2, &b, Side::Right, "y'")?;
    let r = hom_formula_check(&x, &x2, &y, &y2)?;
    let dims = json!({ "x": x.dim(), "x'": x2.dim(), "y": y.dim(), "y'": y2.dim() });
    let checks = vec![record("hom_formula", r.holds(), json!({ "lhs": r.lhs, "rhs": r.rhs, "dims": dims }))];
    let mut inputs = setting.inputs();
    inputs["modules"] = json!([&files.x, &files.x2, &files.y, &files.y2].iter().map(|p| p.display().to_string()).collect::<Vec<_>>());
    Ok(RunReport::new("homcheck", inputs, json!({ "lhs": r.lhs, "rhs": r.rhs }), checks, start.elapsed()))
}
