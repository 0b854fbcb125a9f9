//! Discrete Poisson solve with Dirichlet boundary data over an arbitrary
//! interior pixel region.
//!
//! The continuous problem is: find `f` on Ω minimizing `∫|∇f − v|²` with `f`
//! fixed to the background on ∂Ω. On the pixel grid with 4-connectivity this
//! becomes, for every `p ∈ Ω`,
//!
//! ```text
//! 4 f(p) − Σ_{q ∈ N(p) ∩ Ω} f(q) = Σ_{q ∈ N(p) ∩ ∂Ω} f*(q) + div(p)
//! ```
//!
//! where `div(p) = 4 g(p) − Σ_{q ∈ N(p)} g(q)` is the divergence of the source
//! gradient. The left-hand matrix is symmetric positive definite whenever Ω
//! stays off the image border, so it is solved with Jacobi-preconditioned
//! conjugate gradient.
//!
//! The pipeline is [`index_region`] → [`compute_divergence`] →
//! [`assemble_system`] → [`solve`]; [`harmonic_fill`] and [`seamless_clone`]
//! compose those steps.

mod blend;
mod cg;
mod guidance;
mod region;
mod system;

pub use blend::{blend_region, harmonic_fill, seamless_clone};
pub use cg::{default_max_iter, solve, SolveReport, Solved, SolverParams};
pub use guidance::{compute_divergence, GuidanceField};
pub use region::{index_region, Region};
pub use system::{assemble_system, PoissonSystem};
