//! Exact non-commutative polynomial algebra for projector generators.
//!
//! Encodes quantum-coloring constraints as a two-sided ideal in the free
//! algebra over the rationals, replays the impossibility argument for
//! quantum 3-coloring the thirteen-vertex orthogonality graph from a
//! bundled proof script, and runs degree-bounded Buchberger completion for
//! small ideal-membership certificates.

pub mod buchberger;
pub mod lemmas;
pub mod poly;
pub mod rules;
pub mod script;

pub use buchberger::{buchberger_bounded, BuchbergerOutcome};
pub use lemmas::{
    check_lemma_clique, check_lemma_commute, check_lemma_dist2, check_lemma_xw, coloring_ideal,
    Emissions, Pool, XwInput,
};
pub use poly::{eliminate, Gen, Poly, Word};
pub use rules::{projector_rules, reduce, Rule};
pub use script::{bundled_g13_script, check_script, check_theorem_g13, g13_theorem_holds};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum NcError {
    #[error("palette of {0} colors is not supported here")]
    BadColorCount(u32),
    #[error("vertices {0} and {1} are not adjacent")]
    NotAnEdge(usize, usize),
    #[error("not a clique: {0}")]
    NotAClique(String),
    #[error("vertex {0} is not a common neighbor")]
    NotACommonNeighbor(String),
    #[error("unknown vertex label `{0}`")]
    UnknownVertex(String),
    #[error("unknown or not-yet-proven step `{0}`")]
    UnknownStep(String),
    #[error("rewrite budget exceeded")]
    RewriteBudget,
    #[error("cannot orient: {0}")]
    Orientation(String),
    #[error("identity reduced to a nonzero constant")]
    ConstantIdentity,
    #[error("lemma replay failed: {0}")]
    LemmaFailed(String),
    #[error("proof step `{step}` failed: {detail}")]
    StepFailed { step: String, detail: String },
    #[error("malformed proof script: {0}")]
    Script(String),
    #[error("graph error: {0}")]
    Graph(#[from] crate::graph::GraphError),
}
