//! Validated numerics for low-dimensional dynamics.
//!
//! The crate computes three families of invariants with *certified* error
//! control wherever the underlying mathematics permits it:
//!
//! * **Topological entropy of symbolic shift spaces.**  Subshifts of finite
//!   type are presented by forbidden words or transition matrices, sofic
//!   shifts by labeled graphs, and coded shifts by generating sets.  Entropy
//!   is returned as a rational interval `[lo, hi]` that provably contains
//!   the true value; one-sided semi-computability of the coded case is
//!   reflected in the API (upper bounds always shrink, lower bounds always
//!   grow, and the two meet only when the budget suffices).
//!
//! * **Filled Julia sets of monic polynomials.**  A box grid over the
//!   dynamical plane is classified by outward-rounded interval iteration
//!   into certified-escaping, certified-bounded, and unknown cells.  Both
//!   certificates are one-sided and therefore sound at every resolution.
//!
//! * **Equilibrium (balanced) measures and optimal transport.**  Backward
//!   orbits approximate the balanced measure of a polynomial; discrete
//!   measures with exact rational weights are compared in Wasserstein-1
//!   distance by an exact network-simplex solver.
//!
//! Everything rests on two primitives in [`dyadic`] and [`interval`]:
//! exact arithmetic on numbers `m·2^e` and outward-rounded interval
//! operations at a caller-chosen working precision.  No floating-point
//! value ever enters a certified bound; `f64` is used only to seed root
//! finding and for human-readable displays.
//!
//! Estimators that carry **no** certificate (separated-set counts on a
//! finite grid, Katok–Brin local entropy, Monte-Carlo backward orbits) are
//! named and documented as estimates and kept apart from the validated
//! interfaces.

pub mod dyadic;
pub mod error;
pub mod interval;
pub mod julia;
pub mod measure;
pub mod metric_entropy;
pub mod oracle;
pub mod poly;
pub mod rational;
pub mod roots;
pub mod shift;
pub mod transcend;

pub use error::{Error, Result};
