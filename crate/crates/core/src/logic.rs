//! Propositional formulas over framework elements, the logics used to
//! evaluate them, and the normal encoding of a framework.
//!
//! The normal encoding of a framework is
//!
//! ```text
//! ⋀_{a ∈ U} ( a ↔ ⋀_{(b,a) ∈ R} ¬(r_b^a ∧ b)  ∧  ⋀_{(c,a) ∈ T} ¬(t_c^a ∧ ¬c) )
//! ```
//!
//! Its models under three-valued Łukasiewicz logic are exactly the adjacent
//! complete labellings, and its models under a fuzzy logic are exactly the
//! solutions of the matching equation system in [`crate::equations`].

use alloc::boxed::Box;
use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use thiserror::Error;

use crate::framework::{ElementId, Hafs};
use crate::labelling::Labelling;
use crate::value::{Degree, Tri};

/// A propositional formula with variables of type `V`.
///
/// `And([])` behaves as `Top` and `Or([])` as `Bottom`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula<V = ElementId> {
    Var(V),
    Top,
    Bottom,
    Not(Box<Formula<V>>),
    And(Vec<Formula<V>>),
    Or(Vec<Formula<V>>),
    Implies(Box<Formula<V>>, Box<Formula<V>>),
    Iff(Box<Formula<V>>, Box<Formula<V>>),
}

impl<V> Formula<V> {
    pub fn var(v: V) -> Self {
        Formula::Var(v)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula<V>) -> Self {
        Formula::Not(Box::new(f))
    }

    pub fn implies(a: Formula<V>, b: Formula<V>) -> Self {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn iff(a: Formula<V>, b: Formula<V>) -> Self {
        Formula::Iff(Box::new(a), Box::new(b))
    }

    /// `Top` for no conjuncts, the conjunct itself for one, `And` otherwise.
    pub fn conjunction(mut parts: Vec<Formula<V>>) -> Self {
        match parts.len() {
            0 => Formula::Top,
            1 => parts.pop().expect("one part"),
            _ => Formula::And(parts),
        }
    }

    /// Rewrites every variable.
    pub fn map_vars<W>(&self, f: &mut impl FnMut(&V) -> W) -> Formula<W> {
        match self {
            Formula::Var(v) => Formula::Var(f(v)),
            Formula::Top => Formula::Top,
            Formula::Bottom => Formula::Bottom,
            Formula::Not(x) => Formula::not(x.map_vars(f)),
            Formula::And(xs) => Formula::And(xs.iter().map(|x| x.map_vars(f)).collect()),
            Formula::Or(xs) => Formula::Or(xs.iter().map(|x| x.map_vars(f)).collect()),
            Formula::Implies(a, b) => Formula::implies(a.map_vars(f), b.map_vars(f)),
            Formula::Iff(a, b) => Formula::iff(a.map_vars(f), b.map_vars(f)),
        }
    }

    /// The set of variables occurring in the formula.
    pub fn variables(&self) -> BTreeSet<&V>
    where
        V: Ord,
    {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars<'a>(&'a self, out: &mut BTreeSet<&'a V>)
    where
        V: Ord,
    {
        match self {
            Formula::Var(v) => {
                out.insert(v);
            }
            Formula::Top | Formula::Bottom => {}
            Formula::Not(x) => x.collect_vars(out),
            Formula::And(xs) | Formula::Or(xs) => xs.iter().for_each(|x| x.collect_vars(out)),
            Formula::Implies(a, b) | Formula::Iff(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }

    /// Fully parenthesized text form, variables printed by `name`.
    pub fn to_text(&self, name: &impl Fn(&V) -> String) -> String {
        let mut out = String::new();
        self.write_text(&mut out, name);
        out
    }

    fn write_text(&self, out: &mut String, name: &impl Fn(&V) -> String) {
        let list = |out: &mut String, xs: &[Formula<V>], op: &str, empty: &str| {
            if xs.is_empty() {
                out.push_str(empty);
                return;
            }
            out.push('(');
            for (i, x) in xs.iter().enumerate() {
                if i > 0 {
                    out.push_str(op);
                }
                x.write_text(out, name);
            }
            out.push(')');
        };
        match self {
            Formula::Var(v) => out.push_str(&name(v)),
            Formula::Top => out.push('T'),
            Formula::Bottom => out.push('F'),
            Formula::Not(x) => {
                out.push_str("(~");
                x.write_text(out, name);
                out.push(')');
            }
            Formula::And(xs) => list(out, xs, " & ", "T"),
            Formula::Or(xs) => list(out, xs, " | ", "F"),
            Formula::Implies(a, b) | Formula::Iff(a, b) => {
                let op = if matches!(self, Formula::Iff(..)) {
                    " <-> "
                } else {
                    " -> "
                };
                out.push('(');
                a.write_text(out, name);
                out.push_str(op);
                b.write_text(out, name);
                out.push(')');
            }
        }
    }
}

impl fmt::Display for Formula<ElementId> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text(&|id: &ElementId| id.name.clone()))
    }
}

/// The value set a logic is defined over.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Domain {
    /// `{0, 1/2, 1}`
    ThreeValued,
    /// `[0, 1]`
    UnitInterval,
}

/// Algebraic properties a logic declares about its connectives.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq)]
pub struct LogicFlags {
    /// Negation and t-norm are continuous on `[0, 1]`.
    pub continuous: bool,
    /// `x ∗ y = 0` implies `x = 0` or `y = 0`.
    pub zero_divisor_free: bool,
    /// `1/2 ∗ 1/2 = 1/2`.
    pub half_idempotent: bool,
}

/// A truth-functional interpretation of the connectives.
///
/// `¬` is read as [`negate`](Self::negate), `∧` as [`tnorm`](Self::tnorm),
/// `→` as [`implies`](Self::implies) and `↔` as the t-norm of both
/// implications. `∨` is only interpreted where [`disjoin`](Self::disjoin)
/// returns a value.
pub trait LogicSystem {
    fn name(&self) -> &str;
    fn domain(&self) -> Domain;
    fn flags(&self) -> LogicFlags;

    fn negate<D: Degree>(&self, x: &D) -> D {
        x.one_minus()
    }

    fn tnorm<D: Degree>(&self, x: &D, y: &D) -> D;
    fn implies<D: Degree>(&self, x: &D, y: &D) -> D;

    fn disjoin<D: Degree>(&self, _x: &D, _y: &D) -> Option<D> {
        None
    }
}

/// The built-in logics, all with standard negation `1 - x`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Logic {
    /// Three-valued Łukasiewicz: `min`, `max`, `→ = min(1, 1 - m + n)`.
    L3,
    /// Gödel: `min` with its residuum.
    Godel,
    /// Product: `m · n` with its residuum.
    Product,
    /// Łukasiewicz: `max(0, m + n - 1)` with its residuum.
    Lukasiewicz,
}

impl Logic {
    pub const ALL: [Logic; 4] = [Logic::L3, Logic::Godel, Logic::Product, Logic::Lukasiewicz];
    pub const FUZZY: [Logic; 3] = [Logic::Godel, Logic::Product, Logic::Lukasiewicz];

    /// The CLI selector string.
    pub fn key(self) -> &'static str {
        match self {
            Logic::L3 => "l3",
            Logic::Godel => "godel",
            Logic::Product => "product",
            Logic::Lukasiewicz => "lukasiewicz",
        }
    }
}

impl fmt::Display for Logic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.key())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown logic `{0}`, expected l3, godel, product or lukasiewicz")]
pub struct UnknownLogic(pub String);

impl FromStr for Logic {
    type Err = UnknownLogic;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Logic::ALL
            .into_iter()
            .find(|l| l.key() == s)
            .ok_or_else(|| UnknownLogic(s.to_string()))
    }
}

impl LogicSystem for Logic {
    fn name(&self) -> &str {
        self.key()
    }

    fn domain(&self) -> Domain {
        match self {
            Logic::L3 => Domain::ThreeValued,
            _ => Domain::UnitInterval,
        }
    }

    fn flags(&self) -> LogicFlags {
        match self {
            Logic::L3 => LogicFlags {
                continuous: false,
                zero_divisor_free: true,
                half_idempotent: true,
            },
            Logic::Godel => LogicFlags {
                continuous: true,
                zero_divisor_free: true,
                half_idempotent: true,
            },
            Logic::Product => LogicFlags {
                continuous: true,
                zero_divisor_free: true,
                half_idempotent: false,
            },
            Logic::Lukasiewicz => LogicFlags {
                continuous: true,
                zero_divisor_free: false,
                half_idempotent: false,
            },
        }
    }

    fn tnorm<D: Degree>(&self, x: &D, y: &D) -> D {
        match self {
            Logic::L3 | Logic::Godel => x.min_of(y),
            Logic::Product => x.mul(y),
            Logic::Lukasiewicz => D::zero().max_of(&x.add(y).sub(&D::one())),
        }
    }

    // The `m <= n` branch is taken first so that equal arguments give
    // exactly 1, also in floating point.
    fn implies<D: Degree>(&self, x: &D, y: &D) -> D {
        if x <= y {
            return D::one();
        }
        match self {
            Logic::L3 | Logic::Lukasiewicz => D::one().sub(x).add(y),
            Logic::Godel => y.clone(),
            Logic::Product => y.div(x),
        }
    }

    fn disjoin<D: Degree>(&self, x: &D, y: &D) -> Option<D> {
        match self {
            Logic::L3 => Some(x.max_of(y)),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("variable `{0}` is unassigned")]
    Unassigned(String),
    #[error("value {value} of `{var}` is outside the domain of {logic}")]
    OutOfDomain {
        var: String,
        value: String,
        logic: String,
    },
    #[error("disjunction is not interpreted in {0}")]
    DisjunctionUndefined(String),
}

/// Evaluates `f` with variable values supplied by `valuation`.
pub fn evaluate<V, D, L>(
    f: &Formula<V>,
    valuation: &impl Fn(&V) -> Option<D>,
    logic: &L,
) -> Result<D, EvalError>
where
    V: fmt::Display,
    D: Degree,
    L: LogicSystem + ?Sized,
{
    let lookup = |v: &V| {
        let value = valuation(v).ok_or_else(|| EvalError::Unassigned(v.to_string()))?;
        check_domain(&value, logic, || v.to_string())?;
        Ok(value)
    };
    eval_with(f, &lookup, logic)
}

fn check_domain<D: Degree, L: LogicSystem + ?Sized>(
    value: &D,
    logic: &L,
    var: impl FnOnce() -> String,
) -> Result<(), EvalError> {
    let ok = match logic.domain() {
        Domain::ThreeValued => value.as_tri().is_some(),
        Domain::UnitInterval => value.in_unit_interval(),
    };
    if ok {
        Ok(())
    } else {
        Err(EvalError::OutOfDomain {
            var: var(),
            value: format!("{value:?}"),
            logic: logic.name().to_string(),
        })
    }
}

/// [`evaluate`] with variable values already checked against the domain.
fn eval_with<V, D, L>(
    f: &Formula<V>,
    lookup: &impl Fn(&V) -> Result<D, EvalError>,
    logic: &L,
) -> Result<D, EvalError>
where
    D: Degree,
    L: LogicSystem + ?Sized,
{
    Ok(match f {
        Formula::Var(v) => lookup(v)?,
        Formula::Top => D::one(),
        Formula::Bottom => D::zero(),
        Formula::Not(x) => logic.negate(&eval_with(x, lookup, logic)?),
        Formula::And(xs) => {
            let mut acc: Option<D> = None;
            for x in xs {
                let v = eval_with(x, lookup, logic)?;
                acc = Some(match acc {
                    None => v,
                    Some(a) => logic.tnorm(&a, &v),
                });
            }
            acc.unwrap_or_else(D::one)
        }
        Formula::Or(xs) => {
            let mut acc: Option<D> = None;
            for x in xs {
                let v = eval_with(x, lookup, logic)?;
                acc = Some(match acc {
                    None => v,
                    Some(a) => logic
                        .disjoin(&a, &v)
                        .ok_or_else(|| EvalError::DisjunctionUndefined(logic.name().to_string()))?,
                });
            }
            match acc {
                Some(v) => {
                    // a single disjunct still needs an interpreted `∨`
                    if logic.disjoin(&v, &v).is_none() {
                        return Err(EvalError::DisjunctionUndefined(logic.name().to_string()));
                    }
                    v
                }
                None => {
                    if logic.disjoin(&D::zero(), &D::zero()).is_none() {
                        return Err(EvalError::DisjunctionUndefined(logic.name().to_string()));
                    }
                    D::zero()
                }
            }
        }
        Formula::Implies(a, b) => logic.implies(&eval_with(a, lookup, logic)?, &eval_with(b, lookup, logic)?),
        Formula::Iff(a, b) => {
            let (x, y) = (eval_with(a, lookup, logic)?, eval_with(b, lookup, logic)?);
            logic.tnorm(&logic.implies(&x, &y), &logic.implies(&y, &x))
        }
    })
}

/// Evaluates `f` in three-valued Łukasiewicz logic directly on [`Tri`],
/// with variables given as positions into `values`.
///
/// Agrees with [`evaluate`] under [`Logic::L3`] on embedded values.
pub fn evaluate_three_valued(f: &Formula<usize>, values: &[Tri]) -> Result<Tri, EvalError> {
    fn imp(x: Tri, y: Tri) -> Tri {
        match (x, y) {
            _ if x <= y => Tri::One,
            (Tri::One, Tri::Zero) => Tri::Zero,
            _ => Tri::Half,
        }
    }
    Ok(match f {
        Formula::Var(ix) => *values
            .get(*ix)
            .ok_or_else(|| EvalError::Unassigned(ix.to_string()))?,
        Formula::Top => Tri::One,
        Formula::Bottom => Tri::Zero,
        Formula::Not(x) => evaluate_three_valued(x, values)?.negate(),
        Formula::And(xs) => {
            let mut acc = Tri::One;
            for x in xs {
                acc = acc.min(evaluate_three_valued(x, values)?);
            }
            acc
        }
        Formula::Or(xs) => {
            let mut acc = Tri::Zero;
            for x in xs {
                acc = acc.max(evaluate_three_valued(x, values)?);
            }
            acc
        }
        Formula::Implies(a, b) => imp(
            evaluate_three_valued(a, values)?,
            evaluate_three_valued(b, values)?,
        ),
        Formula::Iff(a, b) => {
            let (x, y) = (
                evaluate_three_valued(a, values)?,
                evaluate_three_valued(b, values)?,
            );
            imp(x, y).min(imp(y, x))
        }
    })
}

/// A total assignment over a framework's universe, indexed by position.
#[derive(Clone, Debug, PartialEq)]
pub struct Assignment<D> {
    values: Vec<D>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AssignmentError {
    #[error("element `{0}` is not in the universe")]
    UnknownElement(String),
    #[error("element `{0}` is assigned twice")]
    Reassigned(String),
    #[error("element `{0}` is unassigned")]
    Missing(String),
    #[error("value of `{0}` is outside [0, 1]")]
    OutOfRange(String),
}

impl<D: Degree> Assignment<D> {
    pub fn new(values: Vec<D>) -> Self {
        Assignment { values }
    }

    /// Builds an assignment from `(id, value)` pairs covering the universe.
    pub fn from_pairs(
        h: &Hafs,
        pairs: impl IntoIterator<Item = (ElementId, D)>,
    ) -> Result<Self, AssignmentError> {
        let mut slots: Vec<Option<D>> = alloc::vec![None; h.len()];
        for (id, v) in pairs {
            let ix = h
                .position(&id)
                .ok_or_else(|| AssignmentError::UnknownElement(id.to_string()))?;
            if !v.in_unit_interval() {
                return Err(AssignmentError::OutOfRange(id.to_string()));
            }
            if slots[ix].replace(v).is_some() {
                return Err(AssignmentError::Reassigned(id.to_string()));
            }
        }
        let values = slots
            .into_iter()
            .enumerate()
            .map(|(ix, v)| v.ok_or_else(|| AssignmentError::Missing(h.element(ix).to_string())))
            .collect::<Result<Vec<D>, _>>()?;
        Ok(Assignment { values })
    }

    pub fn from_labelling(l: &Labelling) -> Self {
        Assignment {
            values: l.to_degrees(),
        }
    }

    pub fn values(&self) -> &[D] {
        &self.values
    }

    pub fn into_values(self) -> Vec<D> {
        self.values
    }

    pub fn get(&self, ix: usize) -> &D {
        &self.values[ix]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// The normal encoding of `h`, with variables named by element id.
pub fn encode_normal(h: &Hafs) -> Formula<ElementId> {
    encode_indexed(h).map_vars(&mut |ix: &usize| h.element(*ix).clone())
}

/// The normal encoding with variables given as universe positions.
pub fn encode_indexed(h: &Hafs) -> Formula<usize> {
    let conjuncts = (0..h.len())
        .map(|a| Formula::iff(Formula::Var(a), element_body(h, a)))
        .collect();
    Formula::conjunction(conjuncts)
}

/// `(⋀ ¬(r ∧ b)) ∧ (⋀ ¬(t ∧ ¬c))`, with empty groups dropped.
fn element_body(h: &Hafs, a: usize) -> Formula<usize> {
    let attacks: Vec<Formula<usize>> = h
        .attackers(a)
        .iter()
        .map(|inc| {
            Formula::not(Formula::And(alloc::vec![
                Formula::Var(inc.relation),
                Formula::Var(inc.source),
            ]))
        })
        .collect();
    let supports: Vec<Formula<usize>> = h
        .supporters(a)
        .iter()
        .map(|inc| {
            Formula::not(Formula::And(alloc::vec![
                Formula::Var(inc.relation),
                Formula::not(Formula::Var(inc.source)),
            ]))
        })
        .collect();
    let groups: Vec<Formula<usize>> = [attacks, supports]
        .into_iter()
        .filter(|g| !g.is_empty())
        .map(Formula::conjunction)
        .collect();
    Formula::conjunction(groups)
}

/// The normal encoding of one framework, ready for repeated evaluation.
#[derive(Clone, Debug)]
pub struct NormalEncoding {
    formula: Formula<usize>,
    universe: usize,
}

impl NormalEncoding {
    pub fn new(h: &Hafs) -> Self {
        NormalEncoding {
            formula: encode_indexed(h),
            universe: h.len(),
        }
    }

    pub fn formula(&self) -> &Formula<usize> {
        &self.formula
    }

    pub fn evaluate<D: Degree, L: LogicSystem + ?Sized>(
        &self,
        values: &[D],
        logic: &L,
    ) -> Result<D, EvalError> {
        for (ix, v) in values.iter().enumerate() {
            check_domain(v, logic, || ix.to_string())?;
        }
        let lookup = |ix: &usize| {
            values
                .get(*ix)
                .cloned()
                .ok_or_else(|| EvalError::Unassigned(ix.to_string()))
        };
        eval_with(&self.formula, &lookup, logic)
    }

    /// `true` iff the encoding evaluates to exactly 1.
    pub fn is_model<D: Degree, L: LogicSystem + ?Sized>(
        &self,
        values: &[D],
        logic: &L,
    ) -> Result<bool, EvalError> {
        if values.len() < self.universe {
            return Err(EvalError::Unassigned(values.len().to_string()));
        }
        Ok(self.evaluate(values, logic)?.is_one())
    }
}

pub fn is_model<D: Degree, L: LogicSystem + ?Sized>(
    h: &Hafs,
    v: &Assignment<D>,
    logic: &L,
) -> Result<bool, EvalError> {
    let f = encode_normal(h);
    let value = evaluate(
        &f,
        &|id: &ElementId| h.position(id).and_then(|ix| v.values.get(ix).cloned()),
        logic,
    )?;
    Ok(value.is_one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::framework::parse;
    use crate::value::ratio;
    use alloc::vec;
    use num_rational::BigRational;

    fn tri(t: Tri) -> BigRational {
        t.to_degree()
    }

    fn vars2(a: BigRational, b: BigRational) -> impl Fn(&&str) -> Option<BigRational> {
        move |v: &&str| match *v {
            "a" => Some(a.clone()),
            "b" => Some(b.clone()),
            _ => None,
        }
    }

    #[test]
    fn three_valued_tables() {
        use Tri::*;
        let imp = Formula::implies(Formula::Var("a"), Formula::Var("b"));
        let iff = Formula::iff(Formula::Var("a"), Formula::Var("b"));
        // rows: antecedent 0, 1/2, 1; columns: consequent 0, 1/2, 1
        let implication = [[One, One, One], [Half, One, One], [Zero, Half, One]];
        let equivalence = [[One, Half, Zero], [Half, One, Half], [Zero, Half, One]];
        for (i, a) in Tri::ALL.into_iter().enumerate() {
            for (j, b) in Tri::ALL.into_iter().enumerate() {
                let val = vars2(tri(a), tri(b));
                assert_eq!(evaluate(&imp, &val, &Logic::L3).unwrap(), tri(implication[i][j]));
                assert_eq!(evaluate(&iff, &val, &Logic::L3).unwrap(), tri(equivalence[i][j]));
            }
        }
    }

    #[test]
    fn godel_equivalence_is_equality() {
        let iff = Formula::iff(Formula::Var("a"), Formula::Var("b"));
        let val = |a: f64, b: f64| {
            move |v: &&str| match *v {
                "a" => Some(a),
                "b" => Some(b),
                _ => None,
            }
        };
        assert_eq!(evaluate(&iff, &val(0.3, 0.3), &Logic::Godel).unwrap(), 1.0);
        assert_eq!(evaluate(&iff, &val(0.3, 0.7), &Logic::Godel).unwrap(), 0.3);
    }

    #[test]
    fn constants_and_errors() {
        let none = |_: &&str| -> Option<f64> { None };
        for logic in Logic::ALL {
            assert_eq!(evaluate(&Formula::<&str>::Top, &none, &logic).unwrap(), 1.0);
            assert_eq!(evaluate(&Formula::<&str>::Bottom, &none, &logic).unwrap(), 0.0);
            assert_eq!(
                evaluate(&Formula::<&str>::And(vec![]), &none, &logic).unwrap(),
                1.0
            );
        }
        assert_eq!(
            evaluate(&Formula::Var("x"), &none, &Logic::Godel),
            Err(EvalError::Unassigned("x".into()))
        );
        let or = Formula::Or(vec![Formula::Top, Formula::Bottom]);
        assert_eq!(evaluate(&or, &none, &Logic::L3).unwrap(), 1.0);
        assert!(matches!(
            evaluate(&or, &none, &Logic::Product),
            Err(EvalError::DisjunctionUndefined(_))
        ));
        assert!(matches!(
            evaluate(&Formula::<&str>::Or(vec![]), &none, &Logic::Godel),
            Err(EvalError::DisjunctionUndefined(_))
        ));
        let quarter = |_: &&str| Some(ratio(1, 4));
        assert!(matches!(
            evaluate(&Formula::Var("a"), &quarter, &Logic::L3),
            Err(EvalError::OutOfDomain { .. })
        ));
        assert!(evaluate(&Formula::Var("a"), &quarter, &Logic::Godel).is_ok());
    }

    #[test]
    fn encodings_print_canonically() {
        let single = parse("arg(a).").unwrap();
        assert_eq!(encode_normal(&single).to_string(), "(a <-> T)");

        let f3 = parse("arg(a). arg(b). att(r1,a,b).").unwrap();
        assert_eq!(
            encode_normal(&f3).to_string(),
            "((a <-> T) & (b <-> (~(r1 & a))) & (r1 <-> T))"
        );

        let ex = parse("arg(a). supp(t1,a,a).").unwrap();
        assert_eq!(
            encode_normal(&ex).to_string(),
            "((a <-> (~(t1 & (~a)))) & (t1 <-> T))"
        );

        let mixed = parse("arg(a). arg(b). arg(c). att(r1,b,a). supp(t1,c,a).").unwrap();
        let text = encode_normal(&mixed).to_string();
        assert!(text.starts_with("((a <-> ((~(r1 & b)) & (~(t1 & (~c))))) & "));
    }

    #[test]
    fn encoding_variables_are_the_universe() {
        let h = parse("arg(a). arg(b). att(r1,a,b). supp(t1,r1,a).").unwrap();
        let f = encode_normal(&h);
        let vars: Vec<&ElementId> = f.variables().into_iter().collect();
        assert_eq!(vars, h.universe().iter().collect::<Vec<_>>());
    }

    #[test]
    fn model_checks() {
        let h = parse("arg(a). arg(b). att(r1,a,b).").unwrap();
        let good = Assignment::new(vec![tri(Tri::One), tri(Tri::Zero), tri(Tri::One)]);
        let bad = Assignment::new(vec![tri(Tri::One), tri(Tri::One), tri(Tri::One)]);
        assert!(is_model(&h, &good, &Logic::L3).unwrap());
        assert!(!is_model(&h, &bad, &Logic::L3).unwrap());

        let ex = parse("arg(a). supp(t1,a,a).").unwrap();
        let v = Assignment::new(vec![ratio(2, 5), BigRational::from_integer(1.into())]);
        assert!(is_model(&ex, &v, &Logic::Godel).unwrap());
        let enc = NormalEncoding::new(&ex);
        assert!(enc.is_model(&[0.4, 1.0], &Logic::Godel).unwrap());
        assert!(!enc.is_model(&[0.4, 0.9], &Logic::Godel).unwrap());
    }

    #[test]
    fn assignment_validation() {
        let h = parse("arg(a). arg(b).").unwrap();
        let a = ElementId::argument("a");
        let b = ElementId::argument("b");
        assert!(Assignment::from_pairs(&h, [(a.clone(), 0.5), (b.clone(), 1.0)]).is_ok());
        assert_eq!(
            Assignment::from_pairs(&h, [(a.clone(), 0.5)]),
            Err(AssignmentError::Missing("arg:b".into()))
        );
        assert_eq!(
            Assignment::from_pairs(&h, [(a.clone(), 1.5), (b.clone(), 1.0)]),
            Err(AssignmentError::OutOfRange("arg:a".into()))
        );
        assert!(matches!(
            Assignment::from_pairs(&h, [(ElementId::attack("a"), 0.5)]),
            Err(AssignmentError::UnknownElement(_))
        ));
    }

    #[test]
    fn logic_selectors() {
        for l in Logic::ALL {
            assert_eq!(l.key().parse::<Logic>().unwrap(), l);
        }
        assert!("boolean".parse::<Logic>().is_err());
    }
}
