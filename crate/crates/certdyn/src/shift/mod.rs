//! Shift spaces over finite alphabets and their topological entropy.
//!
//! Presentations: forbidden word sets and transition matrices (SFTs,
//! [`sft`]), labeled graphs (sofic shifts, [`sofic`]), generating sets
//! (coded shifts, [`coded`]).  Entropy always comes back as an
//! [`EntropyResult`]: exact rational bounds `lo ≤ H_top ≤ hi` in nats.
//! For SFTs and sofic shifts the interval converges to any requested
//! width; for coded shifts only one-sided bounds improve on their own,
//! and the budget decides whether the two sides meet.

pub mod coded;
pub mod language;
pub mod perron;
pub mod sft;
pub mod sofic;

pub use coded::{coded_sofic_approximation, entropy_coded, CodedEntropyReport, GeneratingSet};
pub use language::{
    entropy_upper_bounds, zero_entropy_semialgorithm, LanguageOracle, ZeroEntropyOutcome,
};
pub use perron::{perron_root_interval, NonnegMatrix};
pub use sft::{
    count_words, entropy_sft, entropy_sft_forbidden, minimal_forbidden_set, recode_to_one_step,
    sft_language_oracle, ForbiddenSetSft, TransitionMatrix,
};
pub use sofic::{determinize, entropy_sofic, sofic_language_oracle, LabeledEdge, LabeledGraph};

use crate::rational::Q;
use num_traits::{Signed, Zero};

/// Symbols are `0..d` for an alphabet of size `d`.
pub type Word = Vec<u64>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConvergenceStatus {
    Converged,
    BudgetExhausted,
}

/// Validated entropy interval in nats: `lo ≤ H_top ≤ hi`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EntropyResult {
    pub lo: Q,
    pub hi: Q,
    pub status: ConvergenceStatus,
}

impl EntropyResult {
    pub fn new(lo: Q, hi: Q, status: ConvergenceStatus) -> Self {
        // Entropy is nonnegative, so the enclosure may be tightened at 0.
        let lo = if lo.is_negative() { Q::zero() } else { lo };
        assert!(lo <= hi, "entropy bounds out of order");
        EntropyResult { lo, hi, status }
    }

    pub fn width(&self) -> Q {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Q {
        (&self.lo + &self.hi) / Q::from_integer(2.into())
    }

    pub fn contains(&self, h: &Q) -> bool {
        self.lo <= *h && *h <= self.hi
    }

    pub fn is_converged(&self) -> bool {
        self.status == ConvergenceStatus::Converged
    }
}
