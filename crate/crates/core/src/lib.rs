//! Certification toolkit for quantum graph colorings.
//!
//! The crate is organized around a handful of interlocking pieces:
//!
//! - [`graph`]: finite simple graphs, exact combinatorial parameters
//!   (independence, clique, chromatic numbers, automorphism groups) and
//!   builders for the named graphs `g13`, `g14` and the Petersen graph.
//! - [`ortho`]: orthogonal representations (unit vectors on vertices with
//!   adjacent vertices orthogonal), orthogonality-graph construction,
//!   flatness tests and coloring/representation conversions.
//! - [`qcolor`]: quantum colorings in the projector formulation, the two
//!   standard constructions (Fourier frames from flat representations,
//!   quaternion/octonion frames from real representations) and certified
//!   bound reports for the quantum chromatic number.
//! - [`theta`]: the Lovasz theta number by a deterministic splitting solver.
//! - [`ncpoly`]: exact non-commutative polynomial algebra over the rationals
//!   for projector generators, a proof-script checker that replays the
//!   impossibility argument for quantum 3-coloring `g13`, and a
//!   degree-bounded Buchberger procedure for ideal-membership certificates.
//! - [`satreduce`]: the 3-SAT to 3-COLORING reduction, exact satisfiability
//!   and colorability cross checks, and the magic-square CNF instance.
//!
//! All certificate-producing operations return data that can be re-verified
//! independently; nothing is trusted beyond exact arithmetic and the small
//! checking kernels.

pub mod complexmat;
pub mod graph;
pub mod ncpoly;
pub mod ortho;
pub mod qcolor;
pub mod satreduce;
pub mod theta;

pub use graph::{Coloring, Graph, ParamReport, Permutation};
pub use ortho::{ComplexVector, OrthogonalRepresentation};
pub use qcolor::{ChiQBoundReport, OrthonormalFrame, QuantumColoring};
pub use theta::ThetaResult;
