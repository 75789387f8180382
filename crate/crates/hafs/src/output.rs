//! JSON shapes written by the command-line tool.
//!
//! Element keys are ids in `kind:name` form. Exact values are strings
//! (`"0"`, `"1/2"`, `"3/4"`), float values are JSON numbers rounded to 12
//! significant digits.

use hafs_core::bridge::VerificationReport;
use hafs_core::equations::SolveReport;
use hafs_core::logic::Formula;
use hafs_core::{Diagnostic, ElementId, ElementSet, Hafs, Labelling, Semantics};
use serde_json::{json, Map, Value};
use thiserror::Error;

/// Rounds to 12 significant digits.
pub fn round12(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

pub fn float(x: f64) -> Value {
    Value::from(round12(x))
}

pub fn labelling(h: &Hafs, l: &Labelling) -> Value {
    let map: Map<String, Value> = l
        .values()
        .iter()
        .enumerate()
        .map(|(ix, t)| (h.element(ix).to_string(), Value::from(t.as_str())))
        .collect();
    Value::Object(map)
}

pub fn floats(h: &Hafs, values: &[f64]) -> Value {
    let map: Map<String, Value> = values
        .iter()
        .enumerate()
        .map(|(ix, &v)| (h.element(ix).to_string(), float(v)))
        .collect();
    Value::Object(map)
}

pub fn extension(h: &Hafs, set: &ElementSet) -> Value {
    set.iter()
        .map(|ix| Value::from(h.element(ix).to_string()))
        .collect()
}

fn diagnostic(d: Option<Diagnostic>) -> Value {
    d.map_or(Value::Null, |d| Value::from(d.to_string()))
}

pub fn labellings(h: &Hafs, semantics: Semantics, ls: &[Labelling], d: Option<Diagnostic>) -> Value {
    json!({
        "semantics": semantics.as_str(),
        "labellings": ls.iter().map(|l| labelling(h, l)).collect::<Vec<_>>(),
        "diagnostic": diagnostic(d),
    })
}

pub fn extensions(h: &Hafs, semantics: Semantics, es: &[ElementSet], d: Option<Diagnostic>) -> Value {
    json!({
        "semantics": semantics.as_str(),
        "extensions": es.iter().map(|e| extension(h, e)).collect::<Vec<_>>(),
        "diagnostic": diagnostic(d),
    })
}

pub fn solve_report(h: &Hafs, r: &SolveReport) -> Value {
    json!({
        "restart_index": r.restart_index,
        "converged": r.converged,
        "iterations": r.iterations,
        "residual": float(r.residual),
        "solution": floats(h, r.solution.values()),
    })
}

pub fn verification(r: &VerificationReport) -> Value {
    json!({
        "theorem": r.theorem.as_str(),
        "framework_digest": r.framework_digest,
        "passed": r.passed,
        "checked": r.checked,
        "counterexample": r.counterexample.as_ref().map_or(Value::Null, |c| json!({
            "framework": c.framework,
            "witness": c.witness,
            "explanation": c.explanation,
        })),
    })
}

/// Formula AST: `{"var": id}`, `{"const": true|false}`, `{"not": f}`,
/// `{"and": [f…]}`, `{"or": [f…]}`, `{"implies": [f, f]}`, `{"iff": [f, f]}`.
pub fn formula(f: &Formula<ElementId>) -> Value {
    let pair = |a: &Formula<ElementId>, b: &Formula<ElementId>| json!([formula(a), formula(b)]);
    match f {
        Formula::Var(id) => json!({ "var": id.to_string() }),
        Formula::Top => json!({ "const": true }),
        Formula::Bottom => json!({ "const": false }),
        Formula::Not(x) => json!({ "not": formula(x) }),
        Formula::And(xs) => json!({ "and": xs.iter().map(formula).collect::<Vec<_>>() }),
        Formula::Or(xs) => json!({ "or": xs.iter().map(formula).collect::<Vec<_>>() }),
        Formula::Implies(a, b) => json!({ "implies": pair(a, b) }),
        Formula::Iff(a, b) => json!({ "iff": pair(a, b) }),
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("malformed formula JSON at {0}")]
pub struct FormulaJsonError(pub String);

/// Inverse of [`formula`].
pub fn formula_from_json(v: &Value) -> Result<Formula<ElementId>, FormulaJsonError> {
    let bad = || FormulaJsonError(v.to_string());
    let obj = v.as_object().filter(|o| o.len() == 1).ok_or_else(bad)?;
    let (key, body) = obj.iter().next().ok_or_else(bad)?;
    let list = || -> Result<Vec<Formula<ElementId>>, FormulaJsonError> {
        body.as_array()
            .ok_or_else(bad)?
            .iter()
            .map(formula_from_json)
            .collect()
    };
    let two = || -> Result<(Formula<ElementId>, Formula<ElementId>), FormulaJsonError> {
        let mut xs = list()?;
        if xs.len() != 2 {
            return Err(bad());
        }
        let b = xs.pop().ok_or_else(bad)?;
        let a = xs.pop().ok_or_else(bad)?;
        Ok((a, b))
    };
    Ok(match key.as_str() {
        "var" => Formula::Var(body.as_str().and_then(ElementId::parse_tagged).ok_or_else(bad)?),
        "const" => match body.as_bool().ok_or_else(bad)? {
            true => Formula::Top,
            false => Formula::Bottom,
        },
        "not" => Formula::not(formula_from_json(body)?),
        "and" => Formula::And(list()?),
        "or" => Formula::Or(list()?),
        "implies" => {
            let (a, b) = two()?;
            Formula::implies(a, b)
        }
        "iff" => {
            let (a, b) = two()?;
            Formula::iff(a, b)
        }
        _ => return Err(bad()),
    })
}
