//! Polynomial dynamics on the complex plane with certificates.
//!
//! For a monic centered polynomial f the filled Julia set K_f collects the
//! points with bounded forward orbit. Box arithmetic gives one-sided
//! certificates in both directions: a box whose image provably leaves the
//! escape circle cannot meet K_f, and a box whose orbit provably enters a
//! forward-invariant neighborhood of an attracting cycle lies in the
//! interior of K_f. What remains is honestly `Unknown` — near parabolic or
//! Siegel parameters that layer need not thin out, and nothing here
//! pretends otherwise.
//!
//! The same exact-polynomial machinery drives periodic-point
//! classification (interval multiplier against the unit circle),
//! backward-iteration approximation of the balanced measure, and the
//! continued-fraction diagnostics for rotation numbers.

mod bryuno;
mod escape;
mod grid;
mod periodic;
mod preimage;

pub use bryuno::{bryuno_partial_sums, BryunoReport};
pub use escape::escape_radius;
pub use grid::{filled_julia_approx, BoxClass, BoxGrid};
pub use periodic::{basin_box, classify_periodic, PeriodicPointReport, PointClass};
pub use preimage::{bl_measure_approx, preimages, PreimageTree, Sampling};
