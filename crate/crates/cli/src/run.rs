//! Command dispatch: each command maps a validated problem to a JSON results value.

use std::path::{Path, PathBuf};
use std::time::Instant;

use gnorm_core::coaction::Coaction;
use gnorm_core::curve::{orbit_ideal, AFFINE_CHART};
use gnorm_core::fraction::AffineRingModel;
use gnorm_core::gnormal::{
    g_normalize, is_g_normal, is_g_normal_projective, singular_points_of, tangent_ideal, GNormalityVerdict,
    GNormalizationReport, Method,
};
use gnorm_core::points::PointData;
use gnorm_core::quotient::{degree_law, quotient_curve};
use gnorm_core::{engine_stats, reset_engine_stats, Ideal, MonomialOrder, MultiPoly};
use serde_json::{json, Value};

use crate::args::{Cli, Cmd, MethodArg};
use crate::error::CliError;
use crate::gallery;
use crate::problem::{parse_problem_file, Problem};
use crate::report::{Engine, Report, Timing};

/// A finished invocation: the report, if one was produced, and the error that sets
/// the exit code, if any.
#[derive(Debug)]
pub struct Outcome {
    pub report: Option<Report>,
    pub error: Option<CliError>,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        self.error.as_ref().map_or(0, |e| e.exit_code())
    }
}

/// Minimal generators of `i` modulo `modulo`, from the reduced degrevlex basis of
/// `i + modulo` taken in increasing order.
pub fn ideal_strings(i: &Ideal, modulo: &Ideal) -> Vec<String> {
    let full = i.add(modulo);
    if full.is_unit() {
        return vec!["1".into()];
    }
    let order = MonomialOrder::DegRevLex;
    let mut gb = full.groebner_basis(order);
    gb.sort_by(|a, b| {
        let la = a.leading(order).map(|t| t.0).unwrap_or_default();
        let lb = b.leading(order).map(|t| t.0).unwrap_or_default();
        order.cmp(&la, &lb)
    });
    let mut kept: Vec<MultiPoly> = Vec::new();
    for g in gb {
        if !modulo.add_gens(&kept).contains(&g) {
            kept.push(g);
        }
    }
    if kept.is_empty() {
        return Vec::new();
    }
    kept.iter().map(|g| g.to_string()).collect()
}

fn chart_relations(a: &Coaction) -> Ideal {
    a.ring().defining_ideal().clone()
}

fn model_json(m: &AffineRingModel) -> Value {
    let names = m.extra_names();
    let fractions: Vec<Value> = names
        .iter()
        .zip(m.extras())
        .map(|(n, f)| json!({"variable": n, "value": f.to_string()}))
        .collect();
    json!({
        "variables": m.ring().ring().vars(),
        "relations": ideal_strings(m.ring().defining_ideal(), &Ideal::zero(m.ring().ring())),
        "fractions": fractions,
    })
}

fn verdict_json(problem: &Problem, v: &GNormalityVerdict) -> Value {
    let w: Vec<Value> = v
        .witnesses
        .iter()
        .map(|w| {
            json!({
                "chart": w.chart,
                "point": w.point.label(),
                "orbit": match problem.action(&w.chart) {
                    Some(a) => ideal_strings(&w.orbit, &chart_relations(a)),
                    None => ideal_strings(&w.orbit, &Ideal::zero(w.orbit.ring())),
                },
                "count": w.count,
            })
        })
        .collect();
    json!({"is_g_normal": v.is_g_normal, "fast_path_used": v.fast_path_used, "witnesses": w})
}

/// Singular points of the curve, each attached to the first chart containing it.
fn singular_points(problem: &Problem) -> Vec<(String, PointData)> {
    problem.curve.singular_points()
}

fn target_points(problem: &Problem) -> Vec<(String, PointData)> {
    if problem.points.is_empty() {
        singular_points(problem)
    } else {
        problem.points.clone()
    }
}

fn action<'a>(problem: &'a Problem, chart: &str) -> Result<&'a Coaction, CliError> {
    problem
        .action(chart)
        .ok_or_else(|| CliError::Compute(gnorm_core::Error::RingMismatch(format!("no action on chart {chart}"))))
}

pub fn check_gnormal(problem: &Problem) -> Result<GNormalityVerdict, CliError> {
    if problem.is_projective() {
        Ok(is_g_normal_projective(&problem.curve, &problem.chart_actions()?)?)
    } else {
        Ok(is_g_normal(action(problem, AFFINE_CHART)?)?)
    }
}

fn analyze(problem: &Problem) -> Result<Value, CliError> {
    let sing = singular_points(problem);
    let mut charts = Vec::new();
    for (chart, a) in &problem.actions {
        let pts: Vec<String> = sing.iter().filter(|(c, _)| c == chart).map(|(_, p)| p.label()).collect();
        let law = degree_law(a)?;
        charts.push(json!({
            "chart": chart,
            "variables": a.ring().ring().vars(),
            "relations": ideal_strings(a.ring().defining_ideal(), &Ideal::zero(a.ring().ring())),
            "singular_points": pts,
            "fixed_subscheme": ideal_strings(&a.fixed_subscheme(), &chart_relations(a)),
            "non_free_locus": ideal_strings(&a.non_free_locus(), &chart_relations(a)),
            "inseparability_exponent": law.exponent,
            "generically_free": law.generically_free,
        }));
    }
    let mut stab = Vec::new();
    for (chart, x) in target_points(problem) {
        let a = action(problem, &chart)?;
        let (ideal, order) = a.stabilizer_at(&x);
        let t = a.tensor();
        let xmap: Vec<usize> = (a.group().rank()..t.nvars()).collect();
        let base = t
            .defining_ideal()
            .add_gens(&x.ideal.gens().iter().map(|g| g.rename_into(t.ring(), &xmap)).collect::<Vec<_>>());
        stab.push(json!({
            "chart": chart,
            "point": x.label(),
            "stabilizer": ideal_strings(&ideal, &base),
            "order": order,
        }));
    }
    let mut out = json!({
        "group": problem.group.descriptor(),
        "group_order": problem.group.order(),
        "charts": charts,
        "stabilizers": stab,
    });
    if let Some(d) = &problem.derivation {
        let t = tangent_ideal(d)?;
        let counts: Vec<Value> = t
            .counts
            .iter()
            .map(|(x, c)| json!({"point": x.label(), "count": c}))
            .collect();
        out["tangent_ideal"] = json!({
            "ideal": ideal_strings(&t.ideal, d.ring().defining_ideal()),
            "invertible": t.invertible,
            "counts": counts,
        });
    }
    Ok(out)
}

fn method_json(r: &GNormalizationReport) -> Result<Value, CliError> {
    let steps: Vec<Value> = r
        .steps
        .iter()
        .map(|s| {
            let news: Vec<Value> = s
                .new_variables
                .iter()
                .map(|(n, f)| json!({"variable": n, "value": f.to_string()}))
                .collect();
            json!({
                "center": ideal_strings(&s.center, s.source.ring().defining_ideal()),
                "s": s.s,
                "reduction": s.reduction.to_string(),
                "new_variables": news,
                "target": model_json(&s.target),
            })
        })
        .collect();
    let verdict = is_g_normal(&r.action)?;
    Ok(json!({
        "steps": steps,
        "model": model_json(&r.model),
        "action": r.action.describe().into_iter().map(|(v, i)| json!({"variable": v, "image": i})).collect::<Vec<_>>(),
        "output_g_normal": verdict.is_g_normal,
    }))
}

fn gnormalize(problem: &Problem, method: MethodArg, max_steps: usize) -> Result<Value, CliError> {
    let sing = singular_points(problem);
    let mut charts = Vec::new();
    for (chart, a) in &problem.actions {
        if problem.is_projective() && !sing.iter().any(|(c, _)| c == chart) {
            continue;
        }
        let model = AffineRingModel::planar(a.ring().clone());
        let methods: Vec<Method> = match method {
            MethodArg::Blowup => vec![Method::Blowup],
            MethodArg::Integral => vec![Method::Integral],
            MethodArg::Both => vec![Method::Blowup, Method::Integral],
        };
        let mut entry = json!({"chart": chart});
        let mut models = Vec::new();
        for m in methods {
            let r = g_normalize(&model, a, m, max_steps)?;
            entry[m.name()] = method_json(&r)?;
            models.push(r.model);
        }
        if models.len() == 2 {
            let agree = models[0].same_subring(&models[1]);
            entry["agree"] = json!(agree);
            if !agree {
                return Err(CliError::Compute(gnorm_core::Error::Internal(format!(
                    "blow-up and integral closure differ on chart {chart}"
                ))));
            }
        }
        charts.push(entry);
    }
    Ok(json!({"method": method.name(), "max_steps": max_steps, "charts": charts}))
}

fn quotient(problem: &Problem) -> Result<Value, CliError> {
    let mut charts = Vec::new();
    for (chart, a) in &problem.actions {
        let inv = quotient_curve(a)?;
        let law = degree_law(a)?;
        let gens: Vec<Value> = inv
            .describe()
            .into_iter()
            .map(|(v, g)| json!({"variable": v, "image": g}))
            .collect();
        let pres = &inv.presentation;
        charts.push(json!({
            "chart": chart,
            "generators": gens,
            "relations": ideal_strings(pres.defining_ideal(), &Ideal::zero(pres.ring())),
            "smooth": singular_points_of(pres).is_empty(),
            "exponent": law.exponent,
            "group_order": law.group_order,
            "generically_free": law.generically_free,
        }));
    }
    Ok(json!({"charts": charts}))
}

fn orbit(problem: &Problem, point: Option<&str>, chart: Option<&str>) -> Result<Value, CliError> {
    let pts = match point {
        Some(s) => {
            let s = match chart {
                Some(c) => format!("{c}: {s}"),
                None => s.to_string(),
            };
            let pt = problem.parse_point(&s).map_err(|msg| CliError::Validation {
                field: "--point".into(),
                line: None,
                msg,
            })?;
            vec![pt]
        }
        None => target_points(problem)
            .into_iter()
            .filter(|(c, _)| chart.map_or(true, |want| c == want))
            .collect(),
    };
    let mut out = Vec::new();
    for (c, x) in pts {
        let a = action(problem, &c)?;
        let i = orbit_ideal(a, &x)?;
        let len = i.add(a.ring().defining_ideal()).vector_space_dim().finite();
        out.push(json!({
            "chart": c,
            "point": x.label(),
            "orbit": ideal_strings(&i, &chart_relations(a)),
            "length": len,
        }));
    }
    Ok(json!({"orbits": out}))
}

/// Runs one problem command and returns its results value.
pub fn run_command(cmd: &Cmd, problem: &Problem) -> Result<Value, CliError> {
    match cmd {
        Cmd::Analyze { .. } => analyze(problem),
        Cmd::CheckGnormal { .. } => Ok(verdict_json(problem, &check_gnormal(problem)?)),
        Cmd::Gnormalize { method, max_steps, .. } => gnormalize(problem, *method, *max_steps),
        Cmd::Quotient { .. } => quotient(problem),
        Cmd::Orbit { point, chart, .. } => orbit(problem, point.as_deref(), chart.as_deref()),
        Cmd::Examples { .. } => Err(CliError::Validation {
            field: "command".into(),
            line: None,
            msg: "examples does not take a problem file".into(),
        }),
    }
}

fn flags(cmd: &Cmd) -> Value {
    match cmd {
        Cmd::Gnormalize { method, max_steps, .. } => json!({"method": method.name(), "max_steps": max_steps}),
        Cmd::Orbit { point, chart, .. } => json!({"point": point, "chart": chart}),
        Cmd::Examples { id, list, .. } => json!({"id": id, "list": list}),
        _ => json!({}),
    }
}

fn finish(cmd: &Cmd, inputs: Value, started: Instant, res: Result<Value, CliError>) -> Outcome {
    match res {
        Ok(results) => Outcome {
            report: Some(make_report(cmd, inputs, results, started)),
            error: None,
        },
        Err(e) => Outcome {
            report: None,
            error: Some(e),
        },
    }
}

fn make_report(cmd: &Cmd, inputs: Value, results: Value, started: Instant) -> Report {
    let s = engine_stats();
    Report {
        command: cmd.name().to_string(),
        inputs,
        results,
        timing: Timing {
            elapsed_us: started.elapsed().as_micros() as u64,
        },
        engine: Engine {
            spairs_reduced: s.spairs_reduced,
            max_basis_size: s.max_basis_size,
            advisory: true,
        },
    }
}

/// Parses and runs a problem file under `cmd`.
pub fn run_file(cmd: &Cmd, path: &Path) -> Result<(Problem, Value), CliError> {
    let problem = parse_problem_file(path)?;
    let results = run_command(cmd, &problem)?;
    Ok((problem, results))
}

pub fn execute(cli: &Cli) -> Outcome {
    reset_engine_stats();
    let started = Instant::now();
    let cmd = &cli.command;
    match cmd {
        Cmd::Examples { id, list, gallery: dir, bless } => {
            let dir = dir.clone().unwrap_or_else(gallery::default_dir);
            let inputs = json!({"flags": flags(cmd)});
            if *list {
                return finish(cmd, inputs, started, gallery::list(&dir));
            }
            match gallery::run(&dir, id.as_deref(), *bless) {
                Ok((results, mismatch)) => Outcome {
                    report: Some(make_report(cmd, inputs, results, started)),
                    error: mismatch,
                },
                Err(e) => Outcome {
                    report: None,
                    error: Some(e),
                },
            }
        }
        _ => {
            let path: PathBuf = cmd.file().expect("problem commands take a file").to_path_buf();
            let problem = match parse_problem_file(&path) {
                Ok(p) => p,
                Err(e) => return Outcome { report: None, error: Some(e) },
            };
            let inputs = json!({
                "problem": serde_json::to_value(&problem.file).expect("problem serializes"),
                "flags": flags(cmd),
            });
            let res = run_command(cmd, &problem);
            finish(cmd, inputs, started, res)
        }
    }
}
