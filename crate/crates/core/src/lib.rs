//! Reassociation groupoids of binary bracketings: the 2-complex of
//! bracketings, moves and commuting squares, its operad structure, group
//! presentations of its edge-path groups and scalar coherence data.

pub mod assoc;
pub mod complex;
pub mod error;
pub mod group;
pub mod operad;
pub mod presentation;
pub mod scalar;

pub use assoc::{catalan, enumerate_assocs, graft_object, Address, Assoc, Partition, Step};
pub use complex::{
    all_moves, apply_move, classify_move, complex_stats, independent, is_mis, ArityTriple,
    ComplexStats, FillPolicy, GeneratorName, Move, TwoComplex,
};
pub use error::{Error, Result};
pub use group::{abelian_invariants, freeness_verdict, AbelianInvariants, FreenessVerdict};
pub use presentation::{presentation_from_complex, scheme_presentation, simplify, Presentation};

/// Largest `n` any entry point accepts.
pub const HARD_MAX_N: usize = 10;
