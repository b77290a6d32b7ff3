//! Deciding biquandle isomorphism.
//!
//! [`brute_force_iso`] works on arbitrary tables and serves as the oracle for
//! [`structural_iso`], which only handles Alexander biquandles but searches
//! over submodule isomorphisms and transversal maps instead of bijections.

mod brute;
mod enumerate;
mod structural;

use core::fmt;

pub use brute::{
    all_isomorphisms, brute_force_iso, for_each_homomorphism, HomConstraints, IsoSearch,
};
pub use enumerate::{enumerate_biquandles, Enumeration, EnumerateError};
pub use structural::{
    assemble, check_closure, extract_witness, k_candidates, structural_iso, ClosureFailure,
    IsoWitness, WitnessCondition,
};

use crate::table::TableError;

/// Work counters of a search.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    /// Branch points visited.
    pub nodes: u64,
    /// Candidate values tried at branch points.
    pub candidates: u64,
    /// Candidates rejected because the element profiles differ.
    pub pruned_profile: u64,
    /// Candidates rejected because the value was already taken.
    pub pruned_collision: u64,
    /// Candidates rejected by propagated operation constraints.
    pub pruned_conflict: u64,
    /// Complete assignments that failed the final verification.
    pub rejected_complete: u64,
}

impl SearchStats {
    pub fn prunes(&self) -> u64 {
        self.pruned_profile + self.pruned_collision + self.pruned_conflict
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsoError {
    /// Input table `which` (0 or 1) fails the biquandle axioms.
    NotABiquandle(usize),
    NotAnIsomorphism,
    /// A condition that a genuine isomorphism must satisfy failed.
    Condition(WitnessCondition),
    Table(TableError),
}

impl fmt::Display for IsoError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IsoError::NotABiquandle(i) => write!(f, "input {} is not a biquandle", i + 1),
            IsoError::NotAnIsomorphism => f.write_str("map is not a biquandle isomorphism"),
            IsoError::Condition(c) => write!(f, "witness condition failed: {c}"),
            IsoError::Table(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for IsoError {}

impl From<TableError> for IsoError {
    fn from(e: TableError) -> Self {
        IsoError::Table(e)
    }
}
