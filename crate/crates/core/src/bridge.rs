//! Ternarization of fuzzy assignments and empirical checks of the
//! correspondences between labellings, extensions, three-valued models and
//! fuzzy equation solutions on a single framework.
//!
//! Each check returns a [`VerificationReport`]. A failing report carries a
//! counterexample holding the framework in text format plus a witness in the
//! CLI's assignment or extension syntax, so it can be replayed directly.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::equations::{EquationSystem, SolveError, SolveOptions};
use crate::extension::{complete_extensions, extension_derived_labelling, ExtensionError};
use crate::framework::Hafs;
use crate::labelling::{enumerate_adjacent_complete, is_adjacent_complete, Labelling, LabellingError};
use crate::logic::{evaluate_three_valued, Domain, EvalError, Logic, LogicSystem, NormalEncoding};
use crate::set::ElementSet;
use crate::value::{ratio, Degree, Tri};

/// Distance from 0 or 1 within which a float ternarizes to that value.
pub const FLOAT_TERNARY_TOLERANCE: f64 = 1e-6;

/// Largest float residual still counted as a solution in float checks.
pub const FLOAT_AGREEMENT: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("value at position {position} is outside [0, 1]")]
pub struct TernarizeError {
    pub position: usize,
}

/// Maps exact 1 to 1, exact 0 to 0 and everything else to 1/2.
pub fn ternarize<D: Degree>(values: &[D]) -> Result<Labelling, TernarizeError> {
    values
        .iter()
        .enumerate()
        .map(|(position, v)| {
            if !v.in_unit_interval() {
                Err(TernarizeError { position })
            } else if v.is_one() {
                Ok(Tri::One)
            } else if v.is_zero() {
                Ok(Tri::Zero)
            } else {
                Ok(Tri::Half)
            }
        })
        .collect::<Result<Vec<_>, _>>()
        .map(Labelling::new)
}

/// Like [`ternarize`], treating floats within `tau` of 0 or 1 as 0 or 1.
pub fn ternarize_float(values: &[f64], tau: f64) -> Result<Labelling, TernarizeError> {
    values
        .iter()
        .enumerate()
        .map(|(position, &v)| {
            if !(0.0..=1.0).contains(&v) {
                Err(TernarizeError { position })
            } else if 1.0 - v <= tau {
                Ok(Tri::One)
            } else if v <= tau {
                Ok(Tri::Zero)
            } else {
                Ok(Tri::Half)
            }
        })
        .collect::<Result<Vec<_>, _>>()
        .map(Labelling::new)
}

/// The correspondences [`verify`] can check.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TheoremId {
    /// Every extension-derived labelling is adjacent complete.
    T1,
    /// On support-acyclic frameworks, extension-derived labellings and
    /// adjacent complete labellings coincide.
    T2,
    /// Adjacent complete labellings are exactly the three-valued models of
    /// the normal encoding.
    TPl3,
    /// Models of the encoding are exactly the solutions of its equations,
    /// under Gödel, Product and Łukasiewicz logic respectively.
    EqG,
    EqP,
    EqL,
    /// Under a zero-divisor-free logic every solution ternarizes to an
    /// adjacent complete labelling.
    T16,
    /// Under a 1/2-idempotent logic every adjacent complete labelling is an
    /// exact solution.
    Idem,
    /// Under Gödel logic, adjacent complete labellings are exactly the
    /// ternarized solutions.
    CorrG,
}

impl TheoremId {
    pub const ALL: [TheoremId; 9] = [
        TheoremId::T1,
        TheoremId::T2,
        TheoremId::TPl3,
        TheoremId::EqG,
        TheoremId::EqP,
        TheoremId::EqL,
        TheoremId::T16,
        TheoremId::Idem,
        TheoremId::CorrG,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TheoremId::T1 => "T1",
            TheoremId::T2 => "T2",
            TheoremId::TPl3 => "T_PL3",
            TheoremId::EqG => "EQ_G",
            TheoremId::EqP => "EQ_P",
            TheoremId::EqL => "EQ_L",
            TheoremId::T16 => "T16",
            TheoremId::Idem => "IDEM",
            TheoremId::CorrG => "CORR_G",
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown theorem `{0}`")]
pub struct UnknownTheorem(pub String);

impl FromStr for TheoremId {
    type Err = UnknownTheorem;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        TheoremId::ALL
            .into_iter()
            .find(|t| t.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| UnknownTheorem(s.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerifyOptions {
    /// Largest universe accepted by the exhaustive checks.
    pub bound: usize,
    /// Logic for the `T16` and `IDEM` checks.
    pub logic: Logic,
    /// Fixed-point solver settings for `T16` and `CORR_G`.
    pub solve: SolveOptions,
    /// Largest number of `{0, 1/4, 1/2, 3/4, 1}` grid points checked exactly;
    /// larger grids are sampled.
    pub grid_cap: usize,
    /// Random float assignments checked per equation check.
    pub float_samples: usize,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            bound: 8,
            logic: Logic::Godel,
            solve: SolveOptions::default(),
            grid_cap: 100_000,
            float_samples: 10_000,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    /// The framework in text format.
    pub framework: String,
    /// An assignment as a JSON object of `"kind:name": "value"`, or an
    /// extension as a JSON array of ids.
    pub witness: String,
    pub explanation: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub theorem: TheoremId,
    pub framework_digest: String,
    pub passed: bool,
    /// Number of individual cases examined.
    pub checked: usize,
    pub counterexample: Option<Counterexample>,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum VerifyError {
    #[error("universe of {size} elements exceeds the verification bound {bound}")]
    TooLarge { size: usize, bound: usize },
    #[error("{0} needs a support-acyclic framework")]
    SupportCyclic(TheoremId),
    #[error("{theorem} does not apply to {logic}: {reason}")]
    LogicPrecondition {
        theorem: TheoremId,
        logic: Logic,
        reason: &'static str,
    },
    #[error(transparent)]
    Labelling(#[from] LabellingError),
    #[error(transparent)]
    Extension(#[from] ExtensionError),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    Ternarize(#[from] TernarizeError),
}

/// Checks `theorem` on `h`.
pub fn verify(h: &Hafs, theorem: TheoremId, opts: &VerifyOptions) -> Result<VerificationReport, VerifyError> {
    if h.len() > opts.bound {
        return Err(VerifyError::TooLarge {
            size: h.len(),
            bound: opts.bound,
        });
    }
    let mut run = Run {
        h,
        checked: 0,
        failure: None,
    };
    match theorem {
        TheoremId::T1 => run.t1(opts)?,
        TheoremId::T2 => run.t2(opts)?,
        TheoremId::TPl3 => run.t_pl3(opts)?,
        TheoremId::EqG => run.equational(Logic::Godel, opts)?,
        TheoremId::EqP => run.equational(Logic::Product, opts)?,
        TheoremId::EqL => run.equational(Logic::Lukasiewicz, opts)?,
        TheoremId::T16 => run.t16(opts)?,
        TheoremId::Idem => run.idem(opts)?,
        TheoremId::CorrG => run.corr_g(opts)?,
    }
    let counterexample = run.failure.map(|(witness, explanation)| Counterexample {
        framework: h.to_string(),
        witness,
        explanation,
    });
    Ok(VerificationReport {
        theorem,
        framework_digest: h.digest(),
        passed: counterexample.is_none(),
        checked: run.checked,
        counterexample,
    })
}

struct Run<'a> {
    h: &'a Hafs,
    checked: usize,
    failure: Option<(String, String)>,
}

impl Run<'_> {
    fn fail(&mut self, witness: String, explanation: impl Into<String>) {
        if self.failure.is_none() {
            self.failure = Some((witness, explanation.into()));
        }
    }

    fn complete(&self, opts: &VerifyOptions) -> Result<Vec<Labelling>, VerifyError> {
        let mut all = enumerate_adjacent_complete(self.h, opts.bound)?;
        all.sort();
        Ok(all)
    }

    fn t1(&mut self, opts: &VerifyOptions) -> Result<(), VerifyError> {
        for ext in complete_extensions(self.h, opts.bound)? {
            self.checked += 1;
            let l = extension_derived_labelling(self.h, &ext)?;
            if !is_adjacent_complete(self.h, &l)? {
                let explanation = format!(
                    "derived labelling {} is not adjacent complete",
                    labelling_json(self.h, &l)
                );
                self.fail(extension_json(self.h, &ext), explanation);
            }
        }
        Ok(())
    }

    fn t2(&mut self, opts: &VerifyOptions) -> Result<(), VerifyError> {
        if !self.h.is_support_acyclic() {
            return Err(VerifyError::SupportCyclic(TheoremId::T2));
        }
        let derived: BTreeSet<Labelling> = complete_extensions(self.h, opts.bound)?
            .iter()
            .map(|e| extension_derived_labelling(self.h, e))
            .collect::<Result<_, _>>()?;
        let complete: BTreeSet<Labelling> = self.complete(opts)?.into_iter().collect();
        self.checked = derived.len() + complete.len();
        if let Some(l) = derived.difference(&complete).next() {
            self.fail(
                labelling_json(self.h, l),
                "extension-derived labelling is not adjacent complete",
            );
        } else if let Some(l) = complete.difference(&derived).next() {
            self.fail(
                labelling_json(self.h, l),
                "adjacent complete labelling is not derived from any complete extension",
            );
        }
        Ok(())
    }

    fn t_pl3(&mut self, opts: &VerifyOptions) -> Result<(), VerifyError> {
        let enc = NormalEncoding::new(self.h);
        let mut models = Vec::new();
        for values in TernaryGrid::new(self.h.len()) {
            self.checked += 1;
            if evaluate_three_valued(enc.formula(), &values)? == Tri::One {
                models.push(Labelling::new(values));
            }
        }
        let complete = self.complete(opts)?;
        self.compare_sets(&complete, &models, "three-valued model of the encoding");
        Ok(())
    }

    fn equational(&mut self, logic: Logic, opts: &VerifyOptions) -> Result<(), VerifyError> {
        let n = self.h.len();
        let enc = NormalEncoding::new(self.h);
        let sys = EquationSystem::new(self.h, logic);
        let grid = [ratio(0, 1), ratio(1, 4), ratio(1, 2), ratio(3, 4), ratio(1, 1)];
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);

        let total = 5usize.checked_pow(n as u32).unwrap_or(usize::MAX);
        let points: Vec<Vec<usize>> = if total <= opts.grid_cap {
            (0..total)
                .map(|mut k| {
                    let mut digits = vec![0; n];
                    for d in digits.iter_mut().rev() {
                        *d = k % 5;
                        k /= 5;
                    }
                    digits
                })
                .collect()
        } else {
            (0..opts.grid_cap)
                .map(|_| (0..n).map(|_| rng.gen_range(0..5)).collect())
                .collect()
        };

        for digits in &points {
            self.checked += 1;
            let exact: Vec<BigRational> = digits.iter().map(|&d| grid[d].clone()).collect();
            let model = enc.is_model(&exact, &logic)?;
            let solution = sys.residual(&exact).is_zero();
            if model != solution {
                self.fail(values_json(self.h, &exact), mismatch(model, "exactly"));
            }
            let float: Vec<f64> = digits.iter().map(|&d| d as f64 / 4.0).collect();
            self.check_float(&enc, &sys, &float)?;
        }
        for _ in 0..opts.float_samples {
            let float: Vec<f64> = (0..n).map(|_| rng.gen::<f64>()).collect();
            self.check_float(&enc, &sys, &float)?;
        }
        Ok(())
    }

    fn check_float(
        &mut self,
        enc: &NormalEncoding,
        sys: &EquationSystem,
        values: &[f64],
    ) -> Result<(), VerifyError> {
        self.checked += 1;
        let model = enc.is_model(values, sys.logic())?;
        let solution = sys.residual(values) <= FLOAT_AGREEMENT;
        if model != solution {
            self.fail(values_json(self.h, values), mismatch(model, "in floating point"));
        }
        Ok(())
    }

    fn t16(&mut self, opts: &VerifyOptions) -> Result<(), VerifyError> {
        let logic = opts.logic;
        let flags = logic.flags();
        if !flags.zero_divisor_free {
            return Err(precondition(
                TheoremId::T16,
                logic,
                "the t-norm has zero divisors",
            ));
        }
        if !flags.continuous || logic.domain() != Domain::UnitInterval {
            return Err(precondition(
                TheoremId::T16,
                logic,
                "not a continuous fuzzy logic",
            ));
        }
        let sys = EquationSystem::new(self.h, logic);
        for l in sys.enumerate_ternary_solutions(opts.bound)? {
            self.checked += 1;
            if !is_adjacent_complete(self.h, &l)? {
                self.fail(
                    labelling_json(self.h, &l),
                    "exact ternary solution is not adjacent complete",
                );
            }
        }
        self.fixed_points(&sys, opts, |h, l| is_adjacent_complete(h, l).unwrap_or(false))
    }

    fn idem(&mut self, opts: &VerifyOptions) -> Result<(), VerifyError> {
        let logic = opts.logic;
        if !logic.flags().half_idempotent || logic.domain() != Domain::UnitInterval {
            return Err(precondition(TheoremId::Idem, logic, "1/2 * 1/2 is not 1/2"));
        }
        let sys = EquationSystem::new(self.h, logic);
        for l in self.complete(opts)? {
            self.checked += 1;
            let values: Vec<BigRational> = l.to_degrees();
            if !sys.residual(&values).is_zero() {
                self.fail(
                    labelling_json(self.h, &l),
                    "adjacent complete labelling does not solve the equations exactly",
                );
            }
        }
        Ok(())
    }

    fn corr_g(&mut self, opts: &VerifyOptions) -> Result<(), VerifyError> {
        let sys = EquationSystem::new(self.h, Logic::Godel);
        let complete = self.complete(opts)?;
        let ternary = sys.enumerate_ternary_solutions(opts.bound)?;
        self.checked += ternary.len();
        self.compare_sets(&complete, &ternary, "exact ternary solution");
        let known: BTreeSet<Labelling> = complete.into_iter().collect();
        self.fixed_points(&sys, opts, |_, l| known.contains(l))
    }

    /// Checks every converged fixed point with `accept` after ternarizing.
    fn fixed_points(
        &mut self,
        sys: &EquationSystem,
        opts: &VerifyOptions,
        accept: impl Fn(&Hafs, &Labelling) -> bool,
    ) -> Result<(), VerifyError> {
        for report in sys.solve_fixed_point(&opts.solve)? {
            if !report.converged {
                continue;
            }
            self.checked += 1;
            let values = report.solution.values();
            if report.residual > opts.solve.tolerance {
                self.fail(
                    values_json(self.h, values),
                    "converged point exceeds the tolerance",
                );
            }
            let l = ternarize_float(values, FLOAT_TERNARY_TOLERANCE)?;
            if !accept(self.h, &l) {
                let explanation = format!(
                    "fixed point ternarizes to {}, which is not adjacent complete",
                    labelling_json(self.h, &l)
                );
                self.fail(values_json(self.h, values), explanation);
            }
        }
        Ok(())
    }

    fn compare_sets(&mut self, complete: &[Labelling], other: &[Labelling], what: &str) {
        let a: BTreeSet<&Labelling> = complete.iter().collect();
        let b: BTreeSet<&Labelling> = other.iter().collect();
        if let Some(l) = a.difference(&b).next() {
            let explanation = format!("adjacent complete labelling is not a {what}");
            self.fail(labelling_json(self.h, l), explanation);
        } else if let Some(l) = b.difference(&a).next() {
            let explanation = format!("{what} is not an adjacent complete labelling");
            self.fail(labelling_json(self.h, l), explanation);
        }
    }
}

fn precondition(theorem: TheoremId, logic: Logic, reason: &'static str) -> VerifyError {
    VerifyError::LogicPrecondition {
        theorem,
        logic,
        reason,
    }
}

fn mismatch(model: bool, how: &str) -> String {
    if model {
        format!("model of the encoding does not solve the equations {how}")
    } else {
        format!("solution of the equations {how} is not a model of the encoding")
    }
}

/// All of `{0, 1/2, 1}^n` in lexicographic order.
struct TernaryGrid {
    next: Option<Vec<Tri>>,
}

impl TernaryGrid {
    fn new(n: usize) -> Self {
        TernaryGrid {
            next: Some(vec![Tri::Zero; n]),
        }
    }
}

impl Iterator for TernaryGrid {
    type Item = Vec<Tri>;

    fn next(&mut self) -> Option<Vec<Tri>> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        for i in (0..succ.len()).rev() {
            match succ[i] {
                Tri::Zero => succ[i] = Tri::Half,
                Tri::Half => succ[i] = Tri::One,
                Tri::One => {
                    succ[i] = Tri::Zero;
                    continue;
                }
            }
            self.next = Some(succ);
            break;
        }
        Some(current)
    }
}

fn json_object(h: &Hafs, values: impl Iterator<Item = String>) -> String {
    let body: Vec<String> = values
        .enumerate()
        .map(|(ix, v)| format!("\"{}\":\"{}\"", h.element(ix), v))
        .collect();
    format!("{{{}}}", body.join(","))
}

fn labelling_json(h: &Hafs, l: &Labelling) -> String {
    json_object(h, l.values().iter().map(|t| t.as_str().to_string()))
}

fn values_json<D: Degree + fmt::Display>(h: &Hafs, values: &[D]) -> String {
    json_object(h, values.iter().map(|v| v.to_string()))
}

fn extension_json(h: &Hafs, set: &ElementSet) -> String {
    let ids: Vec<String> = set.iter().map(|ix| format!("\"{}\"", h.element(ix))).collect();
    format!("[{}]", ids.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::framework::parse;

    const SELF_SUPPORT: &str = "arg(a). supp(t1,a,a).";

    #[test]
    fn ternarize_examples() {
        use Tri::*;
        assert_eq!(ternarize(&[1.0, 0.0]).unwrap().values(), [One, Zero]);
        assert_eq!(
            ternarize(&[ratio(2, 5), ratio(1, 1)]).unwrap().values(),
            [Half, One]
        );
        assert_eq!(
            ternarize_float(&[0.5, 0.999_999_999], FLOAT_TERNARY_TOLERANCE)
                .unwrap()
                .values(),
            [Half, One]
        );
        assert_eq!(ternarize(&[0.2, 1.5]), Err(TernarizeError { position: 1 }));
        assert!(ternarize_float(&[-0.1], FLOAT_TERNARY_TOLERANCE).is_err());
    }

    #[test]
    fn ternary_grid_order() {
        let all: Vec<Vec<Tri>> = TernaryGrid::new(2).collect();
        assert_eq!(all.len(), 9);
        assert_eq!(all[1], [Tri::Zero, Tri::Half]);
        assert_eq!(all[8], [Tri::One, Tri::One]);
        assert_eq!(TernaryGrid::new(0).count(), 1);
    }

    #[test]
    fn self_support_checks_pass() {
        let h = parse(SELF_SUPPORT).unwrap();
        let opts = VerifyOptions::default();
        for theorem in [
            TheoremId::T1,
            TheoremId::TPl3,
            TheoremId::EqG,
            TheoremId::EqP,
            TheoremId::EqL,
            TheoremId::T16,
            TheoremId::Idem,
            TheoremId::CorrG,
        ] {
            let report = verify(&h, theorem, &opts).unwrap();
            assert!(report.passed, "{theorem}: {:?}", report.counterexample);
            assert!(report.checked > 0);
        }
    }

    #[test]
    fn preconditions_are_enforced() {
        let cyclic = parse(SELF_SUPPORT).unwrap();
        assert_eq!(
            verify(&cyclic, TheoremId::T2, &VerifyOptions::default()),
            Err(VerifyError::SupportCyclic(TheoremId::T2))
        );
        let luk = VerifyOptions {
            logic: Logic::Lukasiewicz,
            ..VerifyOptions::default()
        };
        assert!(matches!(
            verify(&cyclic, TheoremId::T16, &luk),
            Err(VerifyError::LogicPrecondition { .. })
        ));
        assert!(matches!(
            verify(&cyclic, TheoremId::Idem, &luk),
            Err(VerifyError::LogicPrecondition { .. })
        ));
        let product = VerifyOptions {
            logic: Logic::Product,
            ..VerifyOptions::default()
        };
        assert!(verify(&cyclic, TheoremId::T16, &product).unwrap().passed);
        assert!(verify(&cyclic, TheoremId::Idem, &product).is_err());
        let small = VerifyOptions {
            bound: 1,
            ..VerifyOptions::default()
        };
        assert!(matches!(
            verify(&cyclic, TheoremId::T1, &small),
            Err(VerifyError::TooLarge { .. })
        ));
    }

    #[test]
    fn acyclic_correspondence() {
        let h = parse("arg(a). arg(b). arg(c). att(r1,a,b). supp(t1,b,c). att(r2,c,r1).").unwrap();
        let report = verify(&h, TheoremId::T2, &VerifyOptions::default()).unwrap();
        assert!(report.passed);
    }

    #[test]
    fn theorem_names_round_trip() {
        for t in TheoremId::ALL {
            assert_eq!(t.as_str().parse::<TheoremId>().unwrap(), t);
        }
        assert_eq!("t_pl3".parse::<TheoremId>().unwrap(), TheoremId::TPl3);
    }

    #[test]
    fn witnesses_are_json() {
        let h = parse(SELF_SUPPORT).unwrap();
        let l = Labelling::new(vec![Tri::Half, Tri::One]);
        assert_eq!(labelling_json(&h, &l), r#"{"arg:a":"1/2","supp:t1":"1"}"#);
        let e = ElementSet::from_positions(2, [1]);
        assert_eq!(extension_json(&h, &e), r#"["supp:t1"]"#);
    }
}
