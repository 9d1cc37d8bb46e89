//! Problem files: the JSON input schema and its validation into core objects.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use gnorm_core::coaction::Coaction;
use gnorm_core::curve::{ChartActions, CurveKind, CurveModel, AFFINE_CHART};
use gnorm_core::derivation::Derivation;
use gnorm_core::group::FiniteGroupScheme;
use gnorm_core::points::PointData;
use gnorm_core::{PrimeField, QuotientRing};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveSpec {
    pub kind: String,
    pub poly: String,
}

/// Images of the ring variables: one map for an affine curve, one map per chart for a
/// projective one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ActionSpec {
    Affine(BTreeMap<String, String>),
    Charts(BTreeMap<String, BTreeMap<String, String>>),
}

impl Default for ActionSpec {
    fn default() -> Self {
        ActionSpec::Affine(BTreeMap::new())
    }
}

impl ActionSpec {
    fn is_empty(&self) -> bool {
        match self {
            ActionSpec::Affine(m) => m.is_empty(),
            ActionSpec::Charts(m) => m.is_empty(),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Meta {
    #[serde(default)]
    pub id: String,
    #[serde(default)]
    pub command: String,
    #[serde(default)]
    pub args: Vec<String>,
    #[serde(default)]
    pub description: String,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub verdict_source: String,
}

fn trivial() -> String {
    "trivial".into()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub p: u64,
    pub curve: CurveSpec,
    #[serde(default = "trivial")]
    pub group: String,
    #[serde(default, skip_serializing_if = "ActionSpec::is_empty")]
    pub action: ActionSpec,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub points: Vec<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub derivation: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub meta: Option<Meta>,
}

/// A validated problem: the curve, the group with its Hopf axioms checked, and one
/// verified coaction per chart.
#[derive(Clone, Debug)]
pub struct Problem {
    pub file: ProblemFile,
    pub curve: CurveModel,
    pub group: Arc<FiniteGroupScheme>,
    pub actions: Vec<(String, Coaction)>,
    pub points: Vec<(String, PointData)>,
    pub derivation: Option<Derivation>,
}

impl Problem {
    pub fn action(&self, chart: &str) -> Option<&Coaction> {
        self.actions.iter().find(|(c, _)| c == chart).map(|(_, a)| a)
    }

    pub fn is_projective(&self) -> bool {
        self.curve.kind() == CurveKind::Projective
    }

    pub fn chart_actions(&self) -> Result<ChartActions, gnorm_core::Error> {
        ChartActions::new(&self.curve, self.actions.clone())
    }

    /// Parses `x=0,y=0` or `y: x=1,z=1` into a chart and a rational point on it.
    pub fn parse_point(&self, s: &str) -> Result<(String, PointData), String> {
        let (chart, body) = match s.split_once(':') {
            Some((c, b)) => (c.trim().to_string(), b),
            None if self.is_projective() => return Err(format!("point {s:?} needs a chart prefix such as \"y:\"")),
            None => (AFFINE_CHART.to_string(), s),
        };
        let ch = self.curve.chart(&chart).ok_or_else(|| format!("unknown chart {chart:?}"))?;
        let ring = ch.ring.ring();
        let k = *ring.field();
        let mut coords: Vec<Option<u32>> = vec![None; ring.nvars()];
        for part in body.split(',') {
            let (v, c) = part
                .split_once('=')
                .ok_or_else(|| format!("expected var=value in {part:?}"))?;
            let i = ring
                .var_index(v.trim())
                .ok_or_else(|| format!("unknown variable {:?} on chart {chart}", v.trim()))?;
            let c: i64 = c.trim().parse().map_err(|_| format!("bad coordinate {:?}", c.trim()))?;
            coords[i] = Some(k.reduce_i64(c));
        }
        let coords: Vec<u32> = coords
            .into_iter()
            .enumerate()
            .map(|(i, c)| c.ok_or_else(|| format!("coordinate {} missing", ring.vars()[i])))
            .collect::<Result<_, _>>()?;
        let pt = PointData::rational(ring, &coords);
        if !pt.ideal.contains_ideal(ch.ring.defining_ideal()) {
            return Err(format!("{} is not on the curve", pt.label()));
        }
        Ok((chart, pt))
    }
}

/// Line of the value reached by following `path` through the JSON text.
fn locate(text: &str, path: &[&str]) -> Option<usize> {
    let mut at = 0;
    for seg in path {
        let key = format!("\"{seg}\"");
        at += text[at..].find(&key)?;
    }
    Some(text[..at].matches('\n').count() + 1)
}

fn invalid(text: &str, path: &[&str], msg: impl Into<String>) -> CliError {
    CliError::Validation {
        field: path.join("."),
        line: locate(text, path),
        msg: msg.into(),
    }
}

pub fn parse_problem_file(path: &Path) -> Result<Problem, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    parse_problem(&text)
}

pub fn parse_problem(text: &str) -> Result<Problem, CliError> {
    let file: ProblemFile = serde_json::from_str(text).map_err(|e| CliError::Parse {
        line: e.line(),
        column: e.column(),
        msg: e.to_string(),
    })?;
    validate(file, text)
}

/// Validates a problem; `text` is only used to locate diagnostics.
pub fn validate(file: ProblemFile, text: &str) -> Result<Problem, CliError> {
    let field = PrimeField::new(file.p).map_err(|e| invalid(text, &["p"], e.to_string()))?;
    let kind = match file.curve.kind.as_str() {
        "affine" => CurveKind::Affine,
        "projective" => CurveKind::Projective,
        k => return Err(invalid(text, &["curve", "kind"], format!("unknown curve kind {k:?}"))),
    };
    let curve = CurveModel::new(field, kind, &file.curve.poly).map_err(|e| invalid(text, &["curve", "poly"], e.to_string()))?;
    let group = FiniteGroupScheme::parse(&file.group, Some(file.p)).map_err(|e| invalid(text, &["group"], e.to_string()))?;
    group.verify_hopf().map_err(|e| invalid(text, &["group"], e.to_string()))?;
    let group = Arc::new(group);

    let chart_maps: Vec<(String, BTreeMap<String, String>)> = match (&file.action, kind) {
        (ActionSpec::Affine(m), CurveKind::Affine) => vec![(AFFINE_CHART.to_string(), m.clone())],
        (ActionSpec::Affine(m), CurveKind::Projective) if m.is_empty() => {
            curve.charts().iter().map(|c| (c.name.clone(), BTreeMap::new())).collect()
        }
        (ActionSpec::Affine(_), CurveKind::Projective) => {
            return Err(invalid(text, &["action"], "a projective curve needs one action map per chart"))
        }
        (ActionSpec::Charts(_), CurveKind::Affine) => {
            return Err(invalid(text, &["action"], "an affine curve takes a single action map"))
        }
        (ActionSpec::Charts(m), CurveKind::Projective) => {
            if let Some(c) = m.keys().find(|c| curve.chart(c).is_none()) {
                return Err(invalid(text, &["action", c], format!("unknown chart {c:?}")));
            }
            curve
                .charts()
                .iter()
                .map(|c| (c.name.clone(), m.get(&c.name).cloned().unwrap_or_default()))
                .collect()
        }
    };
    let mut actions = Vec::new();
    for (chart, map) in &chart_maps {
        let ring: QuotientRing = curve.chart(chart).expect("chart listed by the curve").ring.clone();
        let path: Vec<&str> = if kind == CurveKind::Projective { vec!["action", chart] } else { vec!["action"] };
        if map.is_empty() && !group.is_trivial() {
            return Err(invalid(text, &path, format!("no action given on chart {chart}")));
        }
        let pairs: Vec<(&str, &str)> = map.iter().map(|(k, v)| (k.as_str(), v.as_str())).collect();
        let a = Coaction::parse(group.clone(), ring, &pairs).map_err(|e| {
            let mut p = path.clone();
            if let Some(v) = failing_variable(&e) {
                if map.contains_key(&v) {
                    p.push(map.get_key_value(&v).unwrap().0);
                }
            }
            invalid(text, &p, e.to_string())
        })?;
        actions.push((chart.clone(), a));
    }
    if kind == CurveKind::Projective && !group.is_trivial() {
        ChartActions::new(&curve, actions.clone()).map_err(|e| invalid(text, &["action"], e.to_string()))?;
    }

    let derivation = if file.derivation.is_empty() {
        None
    } else {
        let chart = if kind == CurveKind::Projective {
            return Err(invalid(text, &["derivation"], "derivations are supported on affine curves only"));
        } else {
            curve.chart(AFFINE_CHART).expect("affine chart")
        };
        let pairs: Vec<(&str, &str)> = file.derivation.iter().map(|(k, v)| (k.as_str(), v.as_str())).collect();
        Some(Derivation::parse(chart.ring.clone(), &pairs).map_err(|e| invalid(text, &["derivation"], e.to_string()))?)
    };

    let mut problem = Problem {
        file,
        curve,
        group,
        actions,
        points: Vec::new(),
        derivation,
    };
    let mut points = Vec::new();
    for s in &problem.file.points {
        points.push(problem.parse_point(s).map_err(|m| invalid(text, &["points"], m))?);
    }
    problem.points = points;
    Ok(problem)
}

fn failing_variable(e: &gnorm_core::Error) -> Option<String> {
    use gnorm_core::Error::*;
    match e {
        CounitViolation(v) | CoassociativityViolation(v) | AntipodeViolation(v) | IllegalTDegree(v) => Some(v.clone()),
        _ => None,
    }
}
