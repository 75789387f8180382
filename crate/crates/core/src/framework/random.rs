//! Seeded random frameworks for property checks.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use super::{Hafs, HafsBuilder, Kind};

/// Draws per relation before giving up.
const MAX_ATTEMPTS: usize = 512;

/// Parameters for [`generate_random`].
#[derive(Clone, Debug, PartialEq)]
pub struct RandomSpec {
    pub arguments: usize,
    pub attacks: usize,
    pub supports: usize,
    pub seed: u64,
    /// Re-draw supports that would close a support cycle.
    pub support_acyclic: bool,
    /// Chance that each endpoint is an earlier relation instead of an argument.
    pub higher_order_prob: f64,
}

impl RandomSpec {
    pub fn new(arguments: usize, attacks: usize, supports: usize, seed: u64) -> Self {
        RandomSpec {
            arguments,
            attacks,
            supports,
            seed,
            support_acyclic: false,
            higher_order_prob: 0.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GenerateError {
    #[error("at least one argument is required")]
    NoArguments,
    #[error("higher-order probability {0} is outside [0, 1]")]
    BadProbability(f64),
    #[error("infeasible parameters: {0}")]
    Infeasible(String),
}

/// Generates a framework deterministically from `spec.seed`.
///
/// Relations are created one at a time and may only mention arguments or
/// relations created before them, so the result is always well-founded.
pub fn generate_random(spec: &RandomSpec) -> Result<Hafs, GenerateError> {
    if spec.arguments == 0 {
        return Err(GenerateError::NoArguments);
    }
    if !(0.0..=1.0).contains(&spec.higher_order_prob) {
        return Err(GenerateError::BadProbability(spec.higher_order_prob));
    }
    let total = spec.arguments + spec.attacks + spec.supports;
    // loose upper bounds on distinct (source, target) pairs
    if spec.support_acyclic && spec.supports > total * (total - 1) / 2 {
        return Err(GenerateError::Infeasible(format!(
            "{} acyclic supports cannot fit among {} elements",
            spec.supports, total
        )));
    }
    if spec.attacks > total * total || spec.supports > total * total {
        return Err(GenerateError::Infeasible(format!(
            "too many relations for {total} elements"
        )));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut kinds: Vec<Kind> = core::iter::repeat_n(Kind::Attack, spec.attacks)
        .chain(core::iter::repeat_n(Kind::Support, spec.supports))
        .collect();
    kinds.shuffle(&mut rng);

    let mut names: Vec<String> = (0..spec.arguments).map(|i| format!("a{i}")).collect();
    // (kind, source, target) over indices into `names`
    let mut relations: Vec<(Kind, usize, usize)> = Vec::new();
    let mut support_succ: Vec<Vec<usize>> = vec![Vec::new(); total];
    let (mut n_att, mut n_supp) = (0usize, 0usize);

    for kind in kinds {
        let mut placed = false;
        for _ in 0..MAX_ATTEMPTS {
            let source = pick_endpoint(&mut rng, spec, names.len());
            let target = pick_endpoint(&mut rng, spec, names.len());
            if relations.contains(&(kind, source, target)) {
                continue;
            }
            if kind == Kind::Support && spec.support_acyclic && reaches(&support_succ, target, source) {
                continue;
            }
            if kind == Kind::Support {
                support_succ[source].push(target);
            }
            relations.push((kind, source, target));
            let name = if kind == Kind::Attack {
                n_att += 1;
                format!("r{}", n_att - 1)
            } else {
                n_supp += 1;
                format!("t{}", n_supp - 1)
            };
            names.push(name);
            placed = true;
            break;
        }
        if !placed {
            return Err(GenerateError::Infeasible(format!(
                "could not place relation {} after {MAX_ATTEMPTS} draws",
                names.len() - spec.arguments
            )));
        }
    }

    let mut b = HafsBuilder::new();
    for name in &names[..spec.arguments] {
        b.argument(name.clone());
    }
    for (i, (kind, s, t)) in relations.iter().enumerate() {
        let id = names[spec.arguments + i].clone();
        let (s, t) = (names[*s].clone(), names[*t].clone());
        match kind {
            Kind::Attack => b.attack(id, s, t),
            _ => b.support(id, s, t),
        };
    }
    Ok(b.build().expect("generated frameworks are valid by construction"))
}

fn pick_endpoint(rng: &mut ChaCha8Rng, spec: &RandomSpec, created: usize) -> usize {
    let existing_relations = created - spec.arguments;
    if existing_relations > 0 && rng.gen_bool(spec.higher_order_prob) {
        spec.arguments + rng.gen_range(0..existing_relations)
    } else {
        rng.gen_range(0..spec.arguments)
    }
}

/// Whether `to` is reachable from `from` (including `from == to`).
fn reaches(succ: &[Vec<usize>], from: usize, to: usize) -> bool {
    let mut seen = vec![false; succ.len()];
    let mut stack = vec![from];
    while let Some(n) = stack.pop() {
        if n == to {
            return true;
        }
        if !core::mem::replace(&mut seen[n], true) {
            stack.extend(succ[n].iter().copied());
        }
    }
    false
}
