//! Coded shifts: closures of free bi-infinite concatenations of a list
//! of generator words.
//!
//! Entropy is approximated from two independent sides.  Rose graphs over
//! the first m generators present sofic subshifts, so their certified
//! entropies push a lower bound up.  Exact word counts (supplied by the
//! caller as a [`LanguageOracle`]) push the upper bound
//! min_j (1/j)·ln #𝓛(j) down.  Both sequences converge to H_top for
//! every coded shift, but no rate is computable in general — hence the
//! explicit budgets and the possibility of `BudgetExhausted`.

use crate::error::{Error, Result};
use crate::rational::{pow2, q_int, Q};
use crate::shift::language::LanguageOracle;
use crate::shift::sofic::{entropy_sofic, LabeledEdge, LabeledGraph};
use crate::shift::{ConvergenceStatus, EntropyResult, Word};
use crate::transcend::ln_count;
use num_traits::Zero;

/// An enumerated list of generator words over {0, …, d−1}.  Order
/// matters: finite approximations always take a prefix of the list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratingSet {
    d: usize,
    generators: Vec<Word>,
}

impl GeneratingSet {
    pub fn new(d: usize, generators: Vec<Word>) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidInput("alphabet must have at least one symbol".into()));
        }
        if generators.is_empty() {
            return Err(Error::InvalidInput("a coded shift needs at least one generator".into()));
        }
        let mut seen = std::collections::HashSet::new();
        for w in &generators {
            if w.is_empty() {
                return Err(Error::InvalidInput("generator words must be nonempty".into()));
            }
            for &s in w {
                if s >= d as u64 {
                    return Err(Error::AlphabetMismatch { symbol: s, alphabet: d });
                }
            }
            if !seen.insert(w.clone()) {
                return Err(Error::InvalidInput(format!("duplicate generator {w:?}")));
            }
        }
        Ok(GeneratingSet { d, generators })
    }

    pub fn alphabet_size(&self) -> usize {
        self.d
    }

    pub fn generators(&self) -> &[Word] {
        &self.generators
    }
}

/// The rose presentation of the coded shift over the first m generators:
/// one base vertex, one labeled cycle through it per generator.  Its
/// sofic shift is a subshift of the full coded shift, so any certified
/// lower entropy bound for it is one for the whole shift.
pub fn coded_sofic_approximation(g: &GeneratingSet, m: usize) -> Result<LabeledGraph> {
    if m == 0 || m > g.generators.len() {
        return Err(Error::InvalidInput(format!(
            "rose size m = {m} out of range 1..={}",
            g.generators.len()
        )));
    }
    let mut vertices = 1usize;
    let mut edges = Vec::new();
    for w in &g.generators[..m] {
        let len = w.len();
        if len == 1 {
            edges.push(LabeledEdge { from: 0, to: 0, label: w[0] });
            continue;
        }
        let start = vertices;
        vertices += len - 1;
        edges.push(LabeledEdge { from: 0, to: start, label: w[0] });
        for (k, &s) in w[1..len - 1].iter().enumerate() {
            edges.push(LabeledEdge { from: start + k, to: start + k + 1, label: s });
        }
        edges.push(LabeledEdge { from: vertices - 1, to: 0, label: w[len - 1] });
    }
    LabeledGraph::new(vertices, g.d, edges)
}

#[derive(Debug, Clone)]
pub struct CodedEntropyReport {
    pub result: EntropyResult,
    /// Best certified lower bound after including the first m generators,
    /// for each m tried; nondecreasing.
    pub lower_bounds: Vec<(usize, Q)>,
    /// Running upper bound h_n = min_{j ≤ n} (1/j)·ln #𝓛(j) for each word
    /// length queried; nonincreasing.
    pub upper_bounds: Vec<(u64, Q)>,
}

/// Two-sided entropy approximation for a coded shift.  `l` must count the
/// language of the shift generated by `g`; the two inputs are
/// cross-checked (a lower bound overtaking an upper bound proves they
/// describe different shifts).  The schedule interleaves one extra
/// generator per round with a doubling word-length budget, so rerunning
/// with the same arguments retraces the same bounds.
pub fn entropy_coded(
    g: &GeneratingSet,
    l: &LanguageOracle,
    p: u32,
    max_m: usize,
    max_n: u64,
) -> Result<CodedEntropyReport> {
    if max_m == 0 || max_n == 0 {
        return Err(Error::InvalidInput("budgets must be ≥ 1".into()));
    }
    let gens_cap = max_m.min(g.generators.len());
    let tol = pow2(-(p as i64));
    let p_ln = p + 8;

    let mut lower = Q::zero();
    let mut lower_bounds = Vec::new();
    let mut upper: Option<Q> = None;
    let mut upper_bounds = Vec::new();
    let (mut m_done, mut n_done, mut n_target) = (0usize, 0u64, 4u64);

    loop {
        if m_done < gens_cap {
            m_done += 1;
            let rose = coded_sofic_approximation(g, m_done)?;
            let e = entropy_sofic(&rose, p + 2)?;
            if e.lo > lower {
                lower = e.lo;
            }
            lower_bounds.push((m_done, lower.clone()));
        }

        let nt = n_target.min(max_n);
        let mut closed = false;
        while n_done < nt {
            n_done += 1;
            let c = l.count(n_done)?;
            let u = ln_count(&c, p_ln)?.hi_q() / q_int(n_done as i64);
            let u = match upper.take() {
                None => u,
                Some(b) => b.min(u),
            };
            upper_bounds.push((n_done, u.clone()));
            if &u - &lower < tol {
                closed = true;
            }
            upper = Some(u);
            if closed {
                break;
            }
        }

        let up = upper.clone().expect("at least one upper bound was computed");
        if up < lower {
            return Err(Error::InconsistentOracle(format!(
                "certified lower bound {lower} exceeds upper bound {up}; \
                 the generating set and the language oracle describe different shifts"
            )));
        }
        let status = if &up - &lower < tol {
            ConvergenceStatus::Converged
        } else if m_done == gens_cap && n_done >= max_n {
            ConvergenceStatus::BudgetExhausted
        } else {
            n_target = n_target.saturating_mul(2);
            continue;
        };
        return Ok(CodedEntropyReport {
            result: EntropyResult::new(lower, up, status),
            lower_bounds,
            upper_bounds,
        });
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q_to_f64;
    use crate::shift::sft::{sft_language_oracle, ForbiddenSetSft};
    use num_bigint::BigUint;

    fn fibonacci_oracle() -> LanguageOracle {
        LanguageOracle::from_fn(|n| {
            let (mut a, mut b) = (BigUint::from(1u32), BigUint::from(2u32));
            for _ in 1..n {
                let c = &a + &b;
                a = b;
                b = c;
            }
            b
        })
    }

    #[test]
    fn rose_shapes() {
        let g = GeneratingSet::new(2, vec![vec![0], vec![0, 1]]).unwrap();
        let r1 = coded_sofic_approximation(&g, 1).unwrap();
        assert_eq!((r1.vertex_count(), r1.edges().len()), (1, 1));
        let r2 = coded_sofic_approximation(&g, 2).unwrap();
        assert_eq!((r2.vertex_count(), r2.edges().len()), (2, 3));
        assert!(matches!(coded_sofic_approximation(&g, 3), Err(Error::InvalidInput(_))));
        assert!(matches!(coded_sofic_approximation(&g, 0), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn construction_validates() {
        assert!(matches!(GeneratingSet::new(2, vec![]), Err(Error::InvalidInput(_))));
        assert!(matches!(GeneratingSet::new(2, vec![vec![]]), Err(Error::InvalidInput(_))));
        assert!(matches!(
            GeneratingSet::new(2, vec![vec![3]]),
            Err(Error::AlphabetMismatch { symbol: 3, alphabet: 2 })
        ));
        assert!(matches!(
            GeneratingSet::new(2, vec![vec![0], vec![0]]),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn golden_mean_as_coded_shift() {
        // {0, 01} freely generates the golden-mean shift.
        let g = GeneratingSet::new(2, vec![vec![0], vec![0, 1]]).unwrap();
        let rep = entropy_coded(&g, &fibonacci_oracle(), 10, 2, 512).unwrap();
        assert!(rep.result.is_converged());
        let phi_ln = ((1.0 + 5f64.sqrt()) / 2.0).ln();
        assert!(q_to_f64(&rep.result.lo) <= phi_ln && phi_ln <= q_to_f64(&rep.result.hi));
        assert!(rep.result.width() < pow2(-10));
        for w in rep.lower_bounds.windows(2) {
            assert!(w[0].1 <= w[1].1);
        }
        for w in rep.upper_bounds.windows(2) {
            assert!(w[0].1 >= w[1].1);
        }
        // The second rose already captures the whole shift.
        let lo2 = &rep.lower_bounds[1].1;
        let h32 = &rep.upper_bounds[31].1;
        assert!(h32 - lo2 < crate::rational::q(1, 100));
    }

    #[test]
    fn full_shift_from_two_letters() {
        let g = GeneratingSet::new(2, vec![vec![0], vec![1]]).unwrap();
        let l = LanguageOracle::from_fn(|n| BigUint::from(2u32).pow(n as u32));
        let rep = entropy_coded(&g, &l, 12, 8, 64).unwrap();
        assert!(rep.result.is_converged());
        let ln2 = std::f64::consts::LN_2;
        assert!(q_to_f64(&rep.result.lo) <= ln2 && ln2 <= q_to_f64(&rep.result.hi));
    }

    #[test]
    fn s_gap_shift_via_sft_oracle() {
        // Gaps between 1s of length 0 or 2: generated by {1, 100}, and
        // equal to the SFT forbidding {101, 000}.
        let g = GeneratingSet::new(2, vec![vec![1], vec![1, 0, 0]]).unwrap();
        let sft = ForbiddenSetSft::new(2, vec![vec![1, 0, 1], vec![0, 0, 0]]).unwrap();
        let l = sft_language_oracle(&sft).unwrap();
        let rep = entropy_coded(&g, &l, 10, 2, 1024).unwrap();
        assert!(rep.result.is_converged());
        // λ³ = λ² + 1.
        let h = 1.46557123187676802665f64.ln();
        assert!(q_to_f64(&rep.result.lo) <= h && h <= q_to_f64(&rep.result.hi));
        assert!(rep.result.width() < pow2(-10));
    }

    #[test]
    fn zero_entropy_single_generator() {
        // {01} generates the two-point period-2 orbit.
        let g = GeneratingSet::new(2, vec![vec![0, 1]]).unwrap();
        let l = LanguageOracle::from_fn(|_| BigUint::from(2u32));
        let rep = entropy_coded(&g, &l, 10, 1, 2048).unwrap();
        assert!(rep.result.is_converged());
        assert!(rep.result.lo.is_zero());
        assert!(rep.result.hi < pow2(-10));
    }

    #[test]
    fn budget_exhaustion_reported() {
        let g = GeneratingSet::new(2, vec![vec![0], vec![0, 1]]).unwrap();
        let rep = entropy_coded(&g, &fibonacci_oracle(), 30, 2, 32).unwrap();
        assert!(!rep.result.is_converged());
        assert!(rep.result.width() >= pow2(-30));
        // The bounds are still valid.
        let phi_ln = ((1.0 + 5f64.sqrt()) / 2.0).ln();
        assert!(q_to_f64(&rep.result.lo) <= phi_ln && phi_ln <= q_to_f64(&rep.result.hi));
    }

    #[test]
    fn mismatched_oracle_detected() {
        // Full-shift generators with a two-word language: impossible.
        let g = GeneratingSet::new(2, vec![vec![0], vec![1]]).unwrap();
        let l = LanguageOracle::from_fn(|_| BigUint::from(2u32));
        assert!(matches!(
            entropy_coded(&g, &l, 10, 2, 256),
            Err(Error::InconsistentOracle(_))
        ));
    }
}
