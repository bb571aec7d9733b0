//! Exact group arithmetic and brute-force Cayley-graph oracles.
//!
//! Two families of groups are supported: virtually abelian extensions
//! `1 -> Z^m -> P -> F -> 1` given by the action of the finite quotient
//! `F` on `Z^m` (plus an optional 2-cocycle for non-split extensions), and
//! groups of integer matrices, optionally taken up to sign.

mod ball;
mod gens;
mod presentation;

pub use ball::{
    asym_constant, ball, ball_with_cap, directed_distance, generation_check, is_geodesic, undirected_ball,
    GenerationCheck, LengthTable, Oracle, DEFAULT_BALL_CAP,
};
pub(crate) use gens::path_vertices;
pub use gens::{eval, GeneratingSet, Letter, Word};
pub use presentation::{GroupElement, IntMatrix, MatrixPresentation, Presentation, VaPresentation};
