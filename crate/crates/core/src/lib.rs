//! Computation with finite biquandles.
//!
//! The crate is `no_std` (it only needs `alloc`) and covers:
//!
//! * operation tables of finite biquandles and exhaustive axiom checking,
//! * finite modules `Z_m^k` with commuting invertible actions of `s` and `t`,
//!   the Alexander and switch biquandles built on them, and the
//!   `(1-st)`-submodule / coset / `s`-orbit machinery,
//! * isomorphism decision: a backtracking search over bijections for arbitrary
//!   tables and a structural search for Alexander biquandles,
//! * Gauss codes of virtual knots and the homomorphism counting invariant.
//!
//! Table indices are 0-based `usize` values internally. [`Element`] is the
//! 1-based label used on every external surface (matrix files, witnesses).

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod alexander;
pub mod axioms;
pub mod iso;
pub mod knot;
pub mod modiso;
pub mod module;
pub mod modular;
pub mod table;

pub use alexander::{
    alexander_table, make_switch_biquandle, normalize_iso, translation_map, SwitchBiquandle,
    SwitchError,
};
pub use axioms::{verify_biquandle, yang_baxter_check, AxiomId, AxiomReport, Violation, ViolationKind};
pub use iso::{
    all_isomorphisms, assemble, brute_force_iso, check_closure, enumerate_biquandles, extract_witness,
    for_each_homomorphism, k_candidates, structural_iso, ClosureFailure, EnumerateError, Enumeration,
    HomConstraints, IsoError, IsoSearch, IsoWitness, SearchStats, WitnessCondition,
};
pub use knot::{
    build_diagram, count_homs, count_homs_with, crossing_outputs, curated_move_pairs, reidemeister_suite,
    Crossing, Diagram, GaussCode, HomCountReport, KnotError, MoveCheck, Passage, ReidemeisterReport, Sign,
    Token,
};
pub use modiso::{module_isomorphisms, module_isomorphisms_with, IsoStrategy, ModuleIso};
pub use module::{ElementOrder, FiniteModule, ModuleElement, ModuleError, Submodule, Transversal};
pub use modular::Mat;
pub use table::{is_bijection, is_homomorphism, BiquandleTable, Element, Op, TableError};
