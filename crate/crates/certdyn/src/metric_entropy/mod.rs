//! Entropy estimation for interval maps: (n,ε)-separated sets in the
//! Bowen metric, the expansive-case upper-bound sequence, Birkhoff
//! empirical measures, and the Katok–Brin pointwise estimator.
//!
//! The phase space is the circle [0,1) with d(x,y) = min(|x−y|, 1−|x−y|),
//! which keeps the doubling map and rotations continuous.  Separated-set
//! counts on a finite grid are *lower* bounds for F_n(ε) — every witness
//! set is genuinely separated, checked in exact arithmetic — so the
//! derived entropy sequence is an estimator and says so; nothing in this
//! module claims a two-sided certificate.

mod estimate;
mod map;
mod separated;

pub use estimate::{birkhoff_measure, katok_brin_estimate, KatokBrinReport};
pub use map::{orbit, pseudo_random_start, IntervalMap, OrbitSample};
pub use separated::{
    entropy_from_separation, separated_count, SeparatedSetReport, SeparationEntropyReport,
};
