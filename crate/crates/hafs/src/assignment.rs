//! Assignments given on the command line as JSON objects.
//!
//! Keys are element ids (`"arg:a"`) or bare names (`"a"`). Values are
//! strings holding an integer, a fraction `p/q` or a decimal, or plain JSON
//! numbers. If every value is an integer or fraction the assignment is
//! exact; any decimal switches the whole assignment to floating point.

use std::str::FromStr;

use hafs_core::logic::Assignment;
use hafs_core::{ElementId, Hafs};
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde_json::Value;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq)]
pub enum Values {
    Exact(Assignment<BigRational>),
    Float(Assignment<f64>),
}

#[derive(Debug, Error)]
pub enum AssignmentError {
    #[error("assignment is not valid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("assignment must be a JSON object")]
    NotObject,
    #[error("`{0}` is not an element of the framework")]
    UnknownKey(String),
    #[error("value of `{key}` is not a number: {value}")]
    BadValue { key: String, value: String },
    #[error(transparent)]
    Invalid(#[from] hafs_core::logic::AssignmentError),
}

enum Number {
    Exact(BigRational),
    Float(f64),
}

impl Number {
    fn parse(value: &Value) -> Option<Number> {
        match value {
            Value::String(s) => {
                let s = s.trim();
                BigRational::from_str(s)
                    .ok()
                    .map(Number::Exact)
                    .or_else(|| s.parse::<f64>().ok().filter(|f| f.is_finite()).map(Number::Float))
            }
            Value::Number(n) => match n.as_i64() {
                Some(i) => Some(Number::Exact(BigRational::from_integer(i.into()))),
                None => n.as_f64().map(Number::Float),
            },
            _ => None,
        }
    }

    fn to_f64(&self) -> f64 {
        match self {
            Number::Exact(r) => r.to_f64().unwrap_or(f64::NAN),
            Number::Float(f) => *f,
        }
    }
}

fn resolve(h: &Hafs, key: &str) -> Option<ElementId> {
    let ix = match ElementId::parse_tagged(key) {
        Some(id) => h.position(&id)?,
        None => h.position_by_name(key)?,
    };
    Some(h.element(ix).clone())
}

/// Parses a JSON assignment over the universe of `h`.
pub fn parse_assignment(h: &Hafs, text: &str) -> Result<Values, AssignmentError> {
    let json: Value = serde_json::from_str(text)?;
    let object = json.as_object().ok_or(AssignmentError::NotObject)?;
    let mut entries = Vec::with_capacity(object.len());
    for (key, value) in object {
        let id = resolve(h, key).ok_or_else(|| AssignmentError::UnknownKey(key.clone()))?;
        let number = Number::parse(value).ok_or_else(|| AssignmentError::BadValue {
            key: key.clone(),
            value: value.to_string(),
        })?;
        entries.push((id, number));
    }
    if entries.iter().any(|(_, n)| matches!(n, Number::Float(_))) {
        let pairs = entries.into_iter().map(|(id, n)| (id, n.to_f64()));
        Ok(Values::Float(Assignment::from_pairs(h, pairs)?))
    } else {
        let pairs = entries.into_iter().map(|(id, n)| match n {
            Number::Exact(r) => (id, r),
            Number::Float(_) => unreachable!("checked above"),
        });
        Ok(Values::Exact(Assignment::from_pairs(h, pairs)?))
    }
}
