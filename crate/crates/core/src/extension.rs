//! Extension-based semantics.
//!
//! Everything is relative to a candidate set `B`: `b` *directly defeats* `a`
//! when `b ∈ B` and the attack `(b, a)` is itself in `B`; `b` *indirectly
//! defeats* `a` when `b` directly defeats the head of an acyclic support
//! chain ending in `a` whose supports all lie in `B`.

use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::framework::{Hafs, SupportChain};
use crate::labelling::Labelling;
use crate::set::{least_index, maximal_indices, ElementSet};
use crate::value::Tri;
use crate::{Diagnostic, Selected, Semantics};

/// Default universe bound for the exhaustive subset scan.
pub const DEFAULT_EXTENSION_BOUND: usize = 20;

/// The scan indexes subsets with a `u64` mask.
const MAX_SCANNABLE: usize = 63;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtensionError {
    #[error("universe of {size} elements exceeds the enumeration bound {bound}")]
    TooLarge { size: usize, bound: usize },
    #[error("the set is not a complete extension")]
    NotComplete,
    #[error("set is over a universe of {got} elements, the framework has {expected}")]
    UniverseMismatch { expected: usize, got: usize },
}

pub fn directly_defeats(h: &Hafs, b: usize, a: usize, set: &ElementSet) -> bool {
    set.contains(b)
        && h.attackers(a)
            .iter()
            .any(|inc| inc.source == b && set.contains(inc.relation))
}

/// An acyclic support chain inside `set` through which `b` defeats `a`, if
/// one exists. The chain's head is directly defeated by `b`.
pub fn indirect_defeat_chain(h: &Hafs, b: usize, a: usize, set: &ElementSet) -> Option<SupportChain> {
    if !set.contains(b) {
        return None;
    }
    // Backward search from `a`. Anything reachable along some walk is
    // reachable along a simple path, and `a` is never revisited, so the
    // reconstructed chain is acyclic.
    let n = h.len();
    // parent[g] = support element leading from g towards a
    let mut parent: Vec<Option<usize>> = vec![None; n];
    let mut visited = vec![false; n];
    visited[a] = true;
    let mut queue = alloc::collections::VecDeque::from([a]);
    while let Some(x) = queue.pop_front() {
        for inc in h.supporters(x) {
            let g = inc.source;
            if !set.contains(inc.relation) || visited[g] {
                continue;
            }
            visited[g] = true;
            parent[g] = Some(inc.relation);
            if directly_defeats(h, b, g, set) {
                let mut edges = Vec::new();
                let mut node = g;
                while let Some(t) = parent[node] {
                    edges.push(t);
                    node = h.endpoints(t).expect("support element").1;
                }
                return Some(SupportChain::new(h, edges).expect("edges link by construction"));
            }
            queue.push_back(g);
        }
    }
    None
}

pub fn indirectly_defeats(h: &Hafs, b: usize, a: usize, set: &ElementSet) -> bool {
    indirect_defeat_chain(h, b, a, set).is_some()
}

pub fn defeats(h: &Hafs, b: usize, a: usize, set: &ElementSet) -> bool {
    directly_defeats(h, b, a, set) || indirectly_defeats(h, b, a, set)
}

/// Every element defeated by some member of `set`, w.r.t. `set`.
///
/// Computed as the direct targets closed forward along supports in `set`:
/// extending a defeat chain by one support either keeps it acyclic or passes
/// through an element that was already defeated by a shorter chain.
pub fn dft(h: &Hafs, set: &ElementSet) -> ElementSet {
    let n = h.len();
    let mut out = ElementSet::empty(n);
    let mut stack = Vec::new();
    for target in 0..n {
        if h.attackers(target)
            .iter()
            .any(|inc| set.contains(inc.source) && set.contains(inc.relation))
        {
            out.insert(target);
            stack.push(target);
        }
    }
    // forward support adjacency restricted to `set`
    let mut supported: Vec<Vec<usize>> = vec![Vec::new(); n];
    for t in h.support_positions().filter(|&t| set.contains(t)) {
        let (s, d) = h.endpoints(t).expect("support element");
        supported[s].push(d);
    }
    while let Some(g) = stack.pop() {
        for &a in &supported[g] {
            if !out.contains(a) {
                out.insert(a);
                stack.push(a);
            }
        }
    }
    out
}

/// Every element defended by `set`.
pub fn dfd(h: &Hafs, set: &ElementSet) -> ElementSet {
    let defeated = dft(h, set);
    defended_given(h, set, &defeated)
}

fn defended_given(h: &Hafs, set: &ElementSet, defeated: &ElementSet) -> ElementSet {
    ElementSet::from_positions(
        h.len(),
        (0..h.len()).filter(|&a| {
            h.attackers(a)
                .iter()
                .all(|inc| defeated.contains(inc.source) || defeated.contains(inc.relation))
                && h.supporters(a)
                    .iter()
                    .all(|inc| set.contains(inc.source) || defeated.contains(inc.relation))
        }),
    )
}

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq)]
pub struct SetFlags {
    pub conflict_free: bool,
    pub admissible: bool,
    pub complete: bool,
    /// `E ∪ dft(E) = U`
    pub stable_eligible: bool,
}

pub fn classify_set(h: &Hafs, set: &ElementSet) -> SetFlags {
    let defeated = dft(h, set);
    let defended = defended_given(h, set, &defeated);
    let conflict_free = set.is_disjoint(&defeated);
    SetFlags {
        conflict_free,
        admissible: conflict_free && set.is_subset(&defended),
        complete: conflict_free && *set == defended,
        stable_eligible: set.union(&defeated).len() == h.len(),
    }
}

/// All complete extensions, ordered by size then lexicographically.
pub fn complete_extensions(h: &Hafs, bound: usize) -> Result<Vec<ElementSet>, ExtensionError> {
    let n = h.len();
    let bound = bound.min(MAX_SCANNABLE);
    if n > bound {
        return Err(ExtensionError::TooLarge { size: n, bound });
    }
    let mut out: Vec<ElementSet> = (0..1u64 << n)
        .map(|mask| ElementSet::from_mask(n, mask))
        .filter(|e| classify_set(h, e).complete)
        .collect();
    out.sort();
    Ok(out)
}

pub fn enumerate_extensions(
    h: &Hafs,
    semantics: Semantics,
    bound: usize,
) -> Result<Selected<ElementSet>, ExtensionError> {
    let complete = complete_extensions(h, bound)?;
    let preferred = || -> Vec<ElementSet> {
        maximal_indices(&complete)
            .into_iter()
            .map(|i| complete[i].clone())
            .collect()
    };
    Ok(match semantics {
        Semantics::Complete => Selected::plain(complete),
        Semantics::Grounded => match least_index(&complete) {
            Some(i) => Selected::plain(vec![complete[i].clone()]),
            None => Selected {
                items: Vec::new(),
                diagnostic: Some(Diagnostic::NoLeastElement),
            },
        },
        Semantics::Preferred => Selected::plain(preferred()),
        Semantics::Stable => Selected::plain(
            preferred()
                .into_iter()
                .filter(|e| classify_set(h, e).stable_eligible)
                .collect(),
        ),
    })
}

/// `1` on `E`, `0` on `dft(E)`, `1/2` elsewhere.
pub fn extension_derived_labelling(h: &Hafs, set: &ElementSet) -> Result<Labelling, ExtensionError> {
    if set.universe_len() != h.len() {
        return Err(ExtensionError::UniverseMismatch {
            expected: h.len(),
            got: set.universe_len(),
        });
    }
    if !classify_set(h, set).complete {
        return Err(ExtensionError::NotComplete);
    }
    let defeated = dft(h, set);
    Ok(Labelling::new(
        (0..h.len())
            .map(|a| {
                if set.contains(a) {
                    Tri::One
                } else if defeated.contains(a) {
                    Tri::Zero
                } else {
                    Tri::Half
                }
            })
            .collect(),
    ))
}
