//! The equation system of the normal encoding under a fuzzy logic.
//!
//! Every element `a` gets one equation
//!
//! ```text
//! ‖a‖ = N(‖b_1‖ ∗ ‖r_1‖) ∗ … ∗ N(‖b_k‖ ∗ ‖r_k‖) ∗ N(N(‖c_1‖) ∗ ‖t_1‖) ∗ … ∗ N(N(‖c_m‖) ∗ ‖t_m‖)
//! ```
//!
//! over its attackers `(b_i, r_i)` and supporters `(c_j, t_j)`. An assignment
//! solves the system exactly when it is a model of the encoding.
//!
//! The right-hand sides are grouped the same way as the encoding formula
//! (attack factors, then support factors, folded from the first factor), so
//! that floating-point residuals are exactly zero on floating-point models.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::framework::Hafs;
use crate::labelling::Labelling;
use crate::logic::{Assignment, Domain, Logic, LogicSystem};
use crate::value::{Degree, Tri};

/// Default universe bound for [`EquationSystem::enumerate_ternary_solutions`].
pub const DEFAULT_TERNARY_BOUND: usize = 12;

/// Incoming relations of one element, as `(source, relation)` positions.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Equation {
    pub attackers: Vec<(usize, usize)>,
    pub supporters: Vec<(usize, usize)>,
}

/// One equation per element of a framework, under a fixed logic.
#[derive(Clone, Debug)]
pub struct EquationSystem<L = Logic> {
    logic: L,
    equations: Vec<Equation>,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SolveError {
    #[error("logic {0} is not continuous, fixed-point iteration needs a continuous logic")]
    NotContinuous(String),
    #[error("damping {0} is outside (0, 1]")]
    BadDamping(f64),
    #[error("tolerance {0} must be positive")]
    BadTolerance(f64),
    #[error("universe of {size} elements exceeds the enumeration bound {bound}")]
    TooLarge { size: usize, bound: usize },
}

/// Parameters of the damped fixed-point iteration.
#[derive(Clone, Debug, PartialEq)]
pub struct SolveOptions {
    /// Weight `α` of the new iterate in `x ← (1 - α) x + α F(x)`.
    pub damping: f64,
    /// A start converges once `max |x - F(x)| ≤ tolerance`.
    pub tolerance: f64,
    pub max_iter: usize,
    /// Total number of starts: all-0, all-1, all-1/2, then random ones.
    pub restarts: usize,
    pub seed: u64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            damping: 0.5,
            tolerance: 1e-9,
            max_iter: 100_000,
            restarts: 8,
            seed: 0,
        }
    }
}

/// Outcome of one start of the fixed-point iteration.
#[derive(Clone, Debug, PartialEq)]
pub struct SolveReport {
    pub solution: Assignment<f64>,
    /// `max |x_a - F(x)_a|` at the returned point.
    pub residual: f64,
    pub iterations: usize,
    pub restart_index: usize,
    pub converged: bool,
}

/// The encoded equational function of one element.
///
/// `attackers` holds pairs `(‖b‖, ‖r‖)` of attacker and attack values,
/// `supporters` holds pairs `(‖c‖, ‖t‖)` of supporter and support values.
pub fn h_function<D: Degree, L: LogicSystem + ?Sized>(
    logic: &L,
    attackers: &[(D, D)],
    supporters: &[(D, D)],
) -> D {
    combine(
        logic,
        attackers.iter().map(|(b, r)| (b, r)),
        supporters.iter().map(|(c, t)| (c, t)),
    )
}

fn combine<'a, D: Degree + 'a, L: LogicSystem + ?Sized>(
    logic: &L,
    attackers: impl Iterator<Item = (&'a D, &'a D)>,
    supporters: impl Iterator<Item = (&'a D, &'a D)>,
) -> D {
    let attack = fold(logic, attackers.map(|(b, r)| logic.negate(&logic.tnorm(r, b))));
    let support = fold(
        logic,
        supporters.map(|(c, t)| logic.negate(&logic.tnorm(t, &logic.negate(c)))),
    );
    match (attack, support) {
        (Some(x), Some(y)) => logic.tnorm(&x, &y),
        (Some(x), None) | (None, Some(x)) => x,
        (None, None) => D::one(),
    }
}

fn fold<D: Degree, L: LogicSystem + ?Sized>(logic: &L, it: impl Iterator<Item = D>) -> Option<D> {
    it.reduce(|acc, x| logic.tnorm(&acc, &x))
}

impl<L: LogicSystem> EquationSystem<L> {
    pub fn new(h: &Hafs, logic: L) -> Self {
        let equations = (0..h.len())
            .map(|a| Equation {
                attackers: h.attackers(a).iter().map(|i| (i.source, i.relation)).collect(),
                supporters: h.supporters(a).iter().map(|i| (i.source, i.relation)).collect(),
            })
            .collect();
        EquationSystem { logic, equations }
    }

    pub fn logic(&self) -> &L {
        &self.logic
    }

    pub fn equations(&self) -> &[Equation] {
        &self.equations
    }

    pub fn len(&self) -> usize {
        self.equations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.equations.is_empty()
    }

    /// Right-hand side of element `a`'s equation at `values`.
    pub fn rhs<D: Degree>(&self, a: usize, values: &[D]) -> D {
        let eq = &self.equations[a];
        combine(
            &self.logic,
            eq.attackers.iter().map(|&(b, r)| (&values[b], &values[r])),
            eq.supporters.iter().map(|&(c, t)| (&values[c], &values[t])),
        )
    }

    /// The map `F` whose fixed points are the solutions.
    pub fn apply<D: Degree>(&self, values: &[D]) -> Vec<D> {
        (0..self.len()).map(|a| self.rhs(a, values)).collect()
    }

    /// `max_a |‖a‖ - RHS(a)|`; zero for an empty system.
    pub fn residual<D: Degree>(&self, values: &[D]) -> D {
        (0..self.len()).fold(D::zero(), |acc, a| {
            acc.max_of(&values[a].sub(&self.rhs(a, values)).abs())
        })
    }

    /// `true` iff every equation holds exactly.
    pub fn is_solution<D: Degree>(&self, values: &[D]) -> bool {
        (0..self.len()).all(|a| values[a] == self.rhs(a, values))
    }

    /// Runs the damped iteration from each start.
    ///
    /// Converged points closer than `10 · tolerance` (max-norm) to an
    /// earlier converged point are dropped. Starts that fail to converge are
    /// always reported.
    pub fn solve_fixed_point(&self, opts: &SolveOptions) -> Result<Vec<SolveReport>, SolveError> {
        if !self.logic.flags().continuous || self.logic.domain() != Domain::UnitInterval {
            return Err(SolveError::NotContinuous(self.logic.name().to_string()));
        }
        if opts.damping.is_nan() || opts.damping <= 0.0 || opts.damping > 1.0 {
            return Err(SolveError::BadDamping(opts.damping));
        }
        if opts.tolerance.is_nan() || opts.tolerance <= 0.0 {
            return Err(SolveError::BadTolerance(opts.tolerance));
        }
        let n = self.len();
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        let mut reports: Vec<SolveReport> = Vec::new();
        for start in 0..opts.restarts {
            let x0: Vec<f64> = match start {
                0 => vec![0.0; n],
                1 => vec![1.0; n],
                2 => vec![0.5; n],
                _ => (0..n).map(|_| rng.gen::<f64>()).collect(),
            };
            let report = self.iterate(x0, start, opts);
            let duplicate = report.converged
                && reports.iter().any(|r| {
                    r.converged
                        && max_distance(r.solution.values(), report.solution.values())
                            <= 10.0 * opts.tolerance
                });
            if !duplicate {
                reports.push(report);
            }
        }
        Ok(reports)
    }

    fn iterate(&self, mut x: Vec<f64>, restart_index: usize, opts: &SolveOptions) -> SolveReport {
        let alpha = opts.damping;
        let mut iterations = 0;
        loop {
            let fx = self.apply(&x);
            let mut residual = max_distance(&x, &fx);
            if residual <= opts.tolerance {
                // one undamped step often lands exactly on the fixed point
                let ffx = self.apply(&fx);
                let polished = max_distance(&fx, &ffx);
                if polished <= residual {
                    x.clone_from(&fx);
                    residual = polished;
                }
            }
            if residual <= opts.tolerance || iterations == opts.max_iter {
                return SolveReport {
                    solution: Assignment::new(x),
                    residual,
                    iterations,
                    restart_index,
                    converged: residual <= opts.tolerance,
                };
            }
            for (xi, fi) in x.iter_mut().zip(&fx) {
                // clamp guards against drift outside [0, 1] from rounding
                *xi = ((1.0 - alpha) * *xi + alpha * fi).clamp(0.0, 1.0);
            }
            iterations += 1;
        }
    }

    /// All solutions with values in `{0, 1/2, 1}`, checked in exact
    /// rational arithmetic, in lexicographic order.
    pub fn enumerate_ternary_solutions(&self, bound: usize) -> Result<Vec<Labelling>, SolveError> {
        let n = self.len();
        if n > bound {
            return Err(SolveError::TooLarge { size: n, bound });
        }
        let mut out = Vec::new();
        let mut digits = vec![0usize; n];
        let mut values: Vec<BigRational> = vec![Tri::Zero.to_degree(); n];
        loop {
            if self.is_solution(&values) {
                out.push(Labelling::new(digits.iter().map(|&d| Tri::ALL[d]).collect()));
            }
            // odometer over {0, 1/2, 1}^n, last position fastest
            let mut i = n;
            loop {
                if i == 0 {
                    return Ok(out);
                }
                i -= 1;
                digits[i] += 1;
                if digits[i] < 3 {
                    values[i] = Tri::ALL[digits[i]].to_degree();
                    break;
                }
                digits[i] = 0;
                values[i] = Tri::Zero.to_degree();
            }
        }
    }
}

/// Closed form of element `a`'s right-hand side under Gödel or Product
/// logic, computed independently of [`h_function`]. `None` for other logics.
pub fn closed_form_rhs<D: Degree>(logic: Logic, eq: &Equation, values: &[D]) -> Option<D> {
    let v = |i: usize| &values[i];
    match logic {
        Logic::Godel => Some(
            eq.attackers
                .iter()
                .map(|&(b, r)| v(b).one_minus().max_of(&v(r).one_minus()))
                .chain(eq.supporters.iter().map(|&(c, t)| v(c).max_of(&v(t).one_minus())))
                .fold(D::one(), |acc, x| acc.min_of(&x)),
        ),
        Logic::Product => Some(
            eq.attackers
                .iter()
                .map(|&(b, r)| v(b).mul(v(r)).one_minus())
                .chain(
                    eq.supporters
                        .iter()
                        .map(|&(c, t)| v(t).one_minus().add(&v(c).mul(v(t)))),
                )
                .fold(D::one(), |acc, x| acc.mul(&x)),
        ),
        Logic::L3 | Logic::Lukasiewicz => None,
    }
}

fn max_distance(x: &[f64], y: &[f64]) -> f64 {
    x.iter()
        .zip(y)
        .fold(0.0, |acc, (a, b)| acc.max_of(&Degree::abs(&(a - b))))
}
