//! Edit distance between a string and the language of a weighted automaton,
//! computed over the tropical semiring in space linear in the automaton.
//!
//! The distance is found by running a queue-disciplined shortest-distance
//! algorithm over an edit lattice that is materialized one level at a time;
//! [`align::optimal_alignment`] additionally recovers a witness alignment by
//! divide and conquer over lattice midpoints.

pub mod align;
pub mod automata;
pub mod cli;
pub mod distance;
pub mod edit;
pub mod graph;
pub mod lattice;
pub mod semiring;
pub mod shortest;
pub mod textio;

pub use align::{
    midpoint, optimal_alignment, optimal_alignment_with_stats, AlignmentResult, AlignmentStats,
    Midpoint,
};
pub use automata::{Arc, Label, StateId, Transition, WeightedAutomaton, WeightedTransducer, EPSILON};
pub use distance::{
    edit_distance, level_distances, DisciplineChoice, EditDistanceQuery, LevelDistances,
    SweepDirection,
};
pub use edit::{Alignment, CostFunction, EditOp};
pub use graph::BackEdgeMarking;
pub use lattice::{compose, BandArc, EditLattice, LatticeState, LevelBand};
pub use semiring::TropicalWeight;
pub use shortest::{
    shortest_distance, shortest_distance_over, FlatGraph, GraphView, QueueDiscipline, RunStats,
};

/// Errors reported by the library.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A machine contains an epsilon-labeled transition where none is allowed.
    #[error("epsilon-labeled transition in {context}")]
    EpsilonArc { context: &'static str },

    /// Composition requires the inner alphabets to agree.
    #[error("output alphabet of the left machine differs from the input alphabet of the right")]
    AlphabetMismatch,

    /// The machine has a cycle, so no topological order exists.
    #[error("machine contains a cycle")]
    Cyclic,

    /// A transition with negative weight was fed to the shortest-distance engine.
    #[error("negative arc weight {weight} out of state {state}")]
    NegativeWeight { state: StateId, weight: f64 },

    /// An arc goes backward under the order the topological discipline was given.
    #[error("arc {from} -> {to} violates the supplied topological order")]
    TopologicalViolation { from: StateId, to: StateId },

    /// A queue discipline was built from data that does not fit the graph.
    #[error("queue discipline rejected: {reason}")]
    InvalidDiscipline { reason: &'static str },

    /// A lattice level outside `0..=|x|` was requested.
    #[error("lattice level {level} out of range (max {max})")]
    LevelOutOfRange { level: usize, max: usize },

    /// An edit operation outside the cost function's domain.
    #[error("edit operation ({input}, {output}) outside the cost domain")]
    InvalidEditOp { input: Label, output: Label },

    /// No accepting lattice path exists, so no alignment can be reported.
    #[error("the automaton accepts nothing reachable from the input (infinite distance)")]
    Unreachable,

    /// An enumeration oracle exceeded its configured budget.
    #[error("enumeration budget exhausted")]
    Budget,

    /// A text-format input could not be parsed.
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
