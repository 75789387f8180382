//! Adjacent complete labellings: three-valued assignments in which every
//! element's value is fixed by its direct attackers and supporters alone.
//!
//! For an element `a`:
//! - `a = 1` iff every attack `(b, a)` has `b = 0` or `r_b^a = 0`, and every
//!   support `(c, a)` has `c = 1` or `t_c^a = 0`;
//! - `a = 0` iff some attack has `b = 1` and `r_b^a = 1`, or some support has
//!   `c = 0` and `t_c^a = 1`;
//! - `a = 1/2` otherwise.
//!
//! The two conditions are mutually exclusive, so every element has exactly
//! one admissible value given its neighbours; see [`forced_value`].

use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::framework::{ElementId, Hafs};
use crate::set::{least_index, maximal_indices, ElementSet};
use crate::value::{Degree, Tri};
use crate::{Diagnostic, Selected, Semantics};

/// Default universe bound for exhaustive labelling enumeration.
pub const DEFAULT_LABELLING_BOUND: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LabellingError {
    #[error("labelling covers {got} elements, the universe has {expected}")]
    NotTotal { expected: usize, got: usize },
    #[error("element `{0}` is not in the universe")]
    UnknownElement(ElementId),
    #[error("element `{0}` is assigned twice")]
    Reassigned(ElementId),
    #[error("universe of {size} elements exceeds the enumeration bound {bound}")]
    TooLarge { size: usize, bound: usize },
}

/// A total map from the universe to `{0, 1/2, 1}`, indexed by position.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Labelling {
    values: Vec<Tri>,
}

impl Labelling {
    pub fn new(values: Vec<Tri>) -> Self {
        Labelling { values }
    }

    /// Builds a labelling from `(id, value)` pairs, which must cover the
    /// universe exactly once.
    pub fn from_pairs(
        h: &Hafs,
        pairs: impl IntoIterator<Item = (ElementId, Tri)>,
    ) -> Result<Self, LabellingError> {
        let mut values: Vec<Option<Tri>> = vec![None; h.len()];
        let mut count = 0;
        for (id, v) in pairs {
            let ix = h
                .position(&id)
                .ok_or_else(|| LabellingError::UnknownElement(id.clone()))?;
            if values[ix].replace(v).is_some() {
                return Err(LabellingError::Reassigned(id));
            }
            count += 1;
        }
        let values = values
            .into_iter()
            .collect::<Option<Vec<_>>>()
            .ok_or(LabellingError::NotTotal {
                expected: h.len(),
                got: count,
            })?;
        Ok(Labelling { values })
    }

    /// Convenience constructor from bare names, for tests and examples.
    pub fn from_names(h: &Hafs, pairs: &[(&str, Tri)]) -> Result<Self, LabellingError> {
        let ids = pairs.iter().map(|(n, v)| {
            let id = h
                .position_by_name(n)
                .map(|ix| h.element(ix).clone())
                .unwrap_or_else(|| ElementId::argument(*n));
            (id, *v)
        });
        Self::from_pairs(h, ids)
    }

    pub fn values(&self) -> &[Tri] {
        &self.values
    }

    pub fn get(&self, ix: usize) -> Tri {
        self.values[ix]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Elements labelled 1.
    pub fn core(&self) -> ElementSet {
        ElementSet::from_positions(
            self.values.len(),
            self.values
                .iter()
                .enumerate()
                .filter(|(_, v)| **v == Tri::One)
                .map(|(i, _)| i),
        )
    }

    /// `true` when no element is labelled 1/2.
    pub fn is_two_valued(&self) -> bool {
        !self.values.contains(&Tri::Half)
    }

    /// The labelling read as a numeric assignment.
    pub fn to_degrees<D: Degree>(&self) -> Vec<D> {
        self.values.iter().map(|t| t.to_degree()).collect()
    }
}

/// The only value element `ix` may take given the rest of `values`.
pub fn forced_value(h: &Hafs, values: &[Tri], ix: usize) -> Tri {
    let mut one = true;
    let mut zero = false;
    for inc in h.attackers(ix) {
        let (b, r) = (values[inc.source], values[inc.relation]);
        if b != Tri::Zero && r != Tri::Zero {
            one = false;
        }
        if b == Tri::One && r == Tri::One {
            zero = true;
        }
    }
    for inc in h.supporters(ix) {
        let (c, t) = (values[inc.source], values[inc.relation]);
        if c != Tri::One && t != Tri::Zero {
            one = false;
        }
        if c == Tri::Zero && t == Tri::One {
            zero = true;
        }
    }
    if one {
        Tri::One
    } else if zero {
        Tri::Zero
    } else {
        Tri::Half
    }
}

pub fn is_adjacent_complete(h: &Hafs, l: &Labelling) -> Result<bool, LabellingError> {
    if l.len() != h.len() {
        return Err(LabellingError::NotTotal {
            expected: h.len(),
            got: l.len(),
        });
    }
    Ok((0..h.len()).all(|ix| forced_value(h, &l.values, ix) == l.values[ix]))
}

/// All adjacent complete labellings, in lexicographic order over the sorted
/// universe with `0 < 1/2 < 1`.
///
/// Backtracking search: each element's constraint is checked as soon as the
/// element and all of its direct sources and relations are assigned, and
/// elements without incoming relations are fixed to 1 up front.
pub fn enumerate_adjacent_complete(h: &Hafs, bound: usize) -> Result<Vec<Labelling>, LabellingError> {
    let n = h.len();
    if n > bound {
        return Err(LabellingError::TooLarge { size: n, bound });
    }
    // checks_at[k]: elements whose whole neighbourhood is assigned once
    // position k is
    let mut checks_at = vec![Vec::new(); n];
    for ix in 0..n {
        let last = h
            .attackers(ix)
            .iter()
            .chain(h.supporters(ix))
            .flat_map(|inc| [inc.source, inc.relation])
            .chain([ix])
            .max()
            .expect("non-empty");
        checks_at[last].push(ix);
    }
    let choices: Vec<&[Tri]> = (0..n)
        .map(|ix| {
            if h.is_unrelated(ix) {
                &[Tri::One][..]
            } else {
                &Tri::ALL[..]
            }
        })
        .collect();

    let mut out = Vec::new();
    if n == 0 {
        out.push(Labelling::new(Vec::new()));
        return Ok(out);
    }
    let mut values = vec![Tri::Zero; n];
    let mut next = vec![0usize; n];
    let mut depth = 0usize;
    loop {
        if next[depth] == choices[depth].len() {
            next[depth] = 0;
            if depth == 0 {
                break;
            }
            depth -= 1;
            continue;
        }
        values[depth] = choices[depth][next[depth]];
        next[depth] += 1;
        if !checks_at[depth]
            .iter()
            .all(|&ix| forced_value(h, &values, ix) == values[ix])
        {
            continue;
        }
        if depth + 1 == n {
            out.push(Labelling::new(values.clone()));
        } else {
            depth += 1;
        }
    }
    Ok(out)
}

/// Refines a full set of adjacent complete labellings by core inclusion.
///
/// `Grounded` keeps every labelling whose core is the ⊆-least core; when no
/// least core exists the result is empty with [`Diagnostic::NoLeastElement`],
/// and when several labellings share it [`Diagnostic::SharedLeastCore`] is
/// attached.
pub fn select_labellings(h: &Hafs, labellings: &[Labelling], semantics: Semantics) -> Selected<Labelling> {
    debug_assert!(labellings.iter().all(|l| l.len() == h.len()));
    let cores: Vec<ElementSet> = labellings.iter().map(Labelling::core).collect();
    match semantics {
        Semantics::Complete => Selected::plain(labellings.to_vec()),
        Semantics::Grounded => match least_index(&cores) {
            None => Selected {
                items: Vec::new(),
                diagnostic: Some(Diagnostic::NoLeastElement),
            },
            Some(i) => {
                let items: Vec<Labelling> = labellings
                    .iter()
                    .zip(&cores)
                    .filter(|(_, c)| **c == cores[i])
                    .map(|(l, _)| l.clone())
                    .collect();
                let diagnostic = (items.len() > 1).then_some(Diagnostic::SharedLeastCore(items.len()));
                Selected { items, diagnostic }
            }
        },
        Semantics::Preferred => Selected::plain(
            maximal_indices(&cores)
                .into_iter()
                .map(|i| labellings[i].clone())
                .collect(),
        ),
        Semantics::Stable => Selected::plain(
            maximal_indices(&cores)
                .into_iter()
                .map(|i| &labellings[i])
                .filter(|l| l.is_two_valued())
                .cloned()
                .collect(),
        ),
    }
}
