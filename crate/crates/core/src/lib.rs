//! Higher-order argumentation frameworks with supports.
//!
//! Attacks and supports are first-class elements: they can be attacked,
//! supported, and act as the source of further relations. This crate
//! provides
//!
//! - [`framework`]: the framework type, its text format and random instances;
//! - [`labelling`]: adjacent complete labellings and their refinements;
//! - [`extension`]: defeat, defence and extension-based semantics;
//! - [`logic`]: formulas, the built-in logics and the normal encoding;
//! - [`equations`]: the per-element equation system of a fuzzy encoding and
//!   a damped fixed-point solver;
//! - [`bridge`]: ternarization and the property checks tying the semantics
//!   together.
//!
//! The crate is `no_std` and needs only `alloc`.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod bridge;
pub mod equations;
pub mod extension;
pub mod framework;
pub mod labelling;
pub mod logic;
mod set;
pub mod value;

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

pub use framework::{ElementId, Hafs, HafsBuilder, Kind};
pub use labelling::Labelling;
pub use set::ElementSet;
pub use value::{Degree, Tri};

/// Which refinement of the complete semantics to compute.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Semantics {
    Complete,
    Grounded,
    Preferred,
    Stable,
}

impl Semantics {
    pub fn as_str(self) -> &'static str {
        match self {
            Semantics::Complete => "complete",
            Semantics::Grounded => "grounded",
            Semantics::Preferred => "preferred",
            Semantics::Stable => "stable",
        }
    }
}

impl fmt::Display for Semantics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown semantics `{0}`, expected complete, grounded, preferred or stable")]
pub struct UnknownSemantics(pub alloc::string::String);

impl FromStr for Semantics {
    type Err = UnknownSemantics;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "complete" => Ok(Semantics::Complete),
            "grounded" => Ok(Semantics::Grounded),
            "preferred" => Ok(Semantics::Preferred),
            "stable" => Ok(Semantics::Stable),
            other => Err(UnknownSemantics(other.into())),
        }
    }
}

/// Why a selection came out empty or not unique.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Diagnostic {
    /// No candidate is ⊆-below all others, so no grounded result exists.
    NoLeastElement,
    /// This many labellings share the ⊆-least core.
    SharedLeastCore(usize),
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diagnostic::NoLeastElement => f.write_str("no least element exists"),
            Diagnostic::SharedLeastCore(n) => write!(f, "{n} labellings share the least core"),
        }
    }
}

/// Result of a semantics selection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Selected<T> {
    pub items: Vec<T>,
    pub diagnostic: Option<Diagnostic>,
}

impl<T> Selected<T> {
    pub(crate) fn plain(items: Vec<T>) -> Self {
        Selected {
            items,
            diagnostic: None,
        }
    }
}
