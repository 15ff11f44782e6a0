//! Shifts of finite type: forbidden-word presentations, higher-block
//! recoding to a vertex shift, exact word counts, and entropy as
//! ln of a certified Perron-root enclosure.
//!
//! The language 𝓛(X) here is always the *extendable* one — words that
//! occur in bi-infinite points — not merely words avoiding the forbidden
//! set.  The two differ (over {0,1} with forbidden {00, 01}, the word
//! "0" avoids both but occurs in no point), and every count and
//! membership test below is for the extendable language.

use crate::error::{Error, Result};
use crate::shift::language::{LanguageOracle, PathCountMemo};
use crate::shift::perron::{perron_root_interval, NonnegMatrix};
use crate::shift::{ConvergenceStatus, EntropyResult, Word};
use crate::transcend::ln_interval_outer;
use num_bigint::BigUint;
use num_traits::One;
use std::collections::{HashMap, HashSet};

/// An SFT over alphabet {0, …, d−1} given by finitely many forbidden words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForbiddenSetSft {
    d: usize,
    forbidden: Vec<Word>,
}

impl ForbiddenSetSft {
    /// Validates symbols against the alphabet and rejects empty words
    /// (an empty forbidden word would forbid everything vacuously and
    /// has no sensible place in the recoding).  The set is kept sorted
    /// by (length, lex) and deduplicated.
    pub fn new(d: usize, mut forbidden: Vec<Word>) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidInput("alphabet must have at least one symbol".into()));
        }
        for w in &forbidden {
            if w.is_empty() {
                return Err(Error::InvalidInput("forbidden words must be nonempty".into()));
            }
            for &s in w {
                if s >= d as u64 {
                    return Err(Error::AlphabetMismatch { symbol: s, alphabet: d });
                }
            }
        }
        forbidden.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        forbidden.dedup();
        Ok(ForbiddenSetSft { d, forbidden })
    }

    pub fn full_shift(d: usize) -> Result<Self> {
        ForbiddenSetSft::new(d, vec![])
    }

    /// The golden-mean shift: binary, no two consecutive 1s.
    pub fn golden_mean() -> Self {
        ForbiddenSetSft::new(2, vec![vec![1, 1]]).unwrap()
    }

    pub fn alphabet_size(&self) -> usize {
        self.d
    }

    pub fn forbidden(&self) -> &[Word] {
        &self.forbidden
    }
}

/// A 0/1 transition matrix presenting a vertex shift.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransitionMatrix {
    m: NonnegMatrix,
}

impl TransitionMatrix {
    pub fn new(rows: Vec<Vec<u64>>) -> Result<Self> {
        let m = NonnegMatrix::new(rows)?;
        for i in 0..m.dim() {
            for j in 0..m.dim() {
                if m.entry(i, j) > 1 {
                    return Err(Error::InvalidInput(format!(
                        "transition matrix entries must be 0 or 1, found {} at ({i}, {j})",
                        m.entry(i, j)
                    )));
                }
            }
        }
        Ok(TransitionMatrix { m })
    }

    /// The full shift on d symbols as a vertex shift (all-ones matrix).
    pub fn full(d: usize) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidInput("alphabet must have at least one symbol".into()));
        }
        TransitionMatrix::new(vec![vec![1; d]; d])
    }

    pub fn dim(&self) -> usize {
        self.m.dim()
    }

    pub fn connects(&self, i: usize, j: usize) -> bool {
        self.m.entry(i, j) == 1
    }

    pub fn as_nonneg(&self) -> &NonnegMatrix {
        &self.m
    }

    fn from_nonneg(m: NonnegMatrix) -> Self {
        debug_assert!((0..m.dim()).all(|i| (0..m.dim()).all(|j| m.entry(i, j) <= 1)));
        TransitionMatrix { m }
    }
}

/// All d^len words of the given length over {0, …, d−1}, in lex order.
pub(crate) fn all_words(d: usize, len: usize) -> Vec<Word> {
    let mut out = Vec::new();
    let mut w = vec![0u64; len];
    loop {
        out.push(w.clone());
        // Odometer increment; done when it wraps.
        let mut i = len;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            w[i] += 1;
            if w[i] < d as u64 {
                break;
            }
            w[i] = 0;
        }
    }
}

pub(crate) fn contains_word(hay: &[u64], needle: &[u64]) -> bool {
    needle.len() <= hay.len() && hay.windows(needle.len()).any(|w| w == needle)
}

fn hits_forbidden(w: &[u64], forbidden: &[Word]) -> bool {
    forbidden.iter().any(|f| contains_word(w, f))
}

/// The step-N vertex shift conjugate to an SFT, N = max(1, L−1) for L the
/// longest forbidden word: vertices are allowed N-words, edges are allowed
/// (N+1)-word overlaps.  `blocks[i]` is the word of vertex i; the matrix is
/// trimmed to the bi-essential part, so every vertex lies on a bi-infinite
/// path.
#[derive(Debug, Clone)]
pub(crate) struct Recoding {
    pub step: usize,
    pub blocks: Vec<Word>,
    pub matrix: TransitionMatrix,
}

pub(crate) fn higher_block(x: &ForbiddenSetSft) -> Result<Recoding> {
    let d = x.d;
    let l_max = x.forbidden.iter().map(|w| w.len()).max().unwrap_or(1);
    let step = l_max.saturating_sub(1).max(1);

    let blocks: Vec<Word> = all_words(d, step)
        .into_iter()
        .filter(|w| !hits_forbidden(w, &x.forbidden))
        .collect();
    if blocks.is_empty() {
        return Err(Error::EmptyShift);
    }

    let n = blocks.len();
    let mut m = NonnegMatrix::zeros(n);
    let mut glued = Vec::with_capacity(step + 1);
    for (i, u) in blocks.iter().enumerate() {
        for (j, v) in blocks.iter().enumerate() {
            if u[1..] != v[..step - 1] {
                continue;
            }
            glued.clear();
            glued.extend_from_slice(u);
            glued.push(v[step - 1]);
            if !hits_forbidden(&glued, &x.forbidden) {
                m.set(i, j, 1);
            }
        }
    }

    let (trimmed, kept) = m.trim().ok_or(Error::EmptyShift)?;
    let blocks = kept.into_iter().map(|i| blocks[i].clone()).collect();
    Ok(Recoding { step, blocks, matrix: TransitionMatrix::from_nonneg(trimmed) })
}

/// Recode to a one-step (vertex) shift; the matrix indexes the allowed
/// higher blocks in lex order after trimming.
pub fn recode_to_one_step(x: &ForbiddenSetSft) -> Result<TransitionMatrix> {
    higher_block(x).map(|r| r.matrix)
}

/// Exact membership in the extendable language, built once per SFT.
struct Membership {
    step: usize,
    short: HashSet<Word>,
    index: HashMap<Word, usize>,
    matrix: TransitionMatrix,
}

impl Membership {
    fn build(x: &ForbiddenSetSft) -> Result<Option<Membership>> {
        let r = match higher_block(x) {
            Ok(r) => r,
            Err(Error::EmptyShift) => return Ok(None),
            Err(e) => return Err(e),
        };
        let mut short = HashSet::new();
        for b in &r.blocks {
            for len in 1..=r.step {
                for w in b.windows(len) {
                    short.insert(w.to_vec());
                }
            }
        }
        let index = r.blocks.iter().enumerate().map(|(i, b)| (b.clone(), i)).collect();
        Ok(Some(Membership { step: r.step, short, index, matrix: r.matrix }))
    }

    fn contains(&self, w: &[u64]) -> bool {
        let n = w.len();
        if n == 0 {
            return true; // ε occurs in every point of a nonempty shift
        }
        if n <= self.step {
            return self.short.contains(w);
        }
        // Trimmed vertices extend bi-infinitely, so a path through them
        // is exactly an occurring word.
        let mut prev = match self.index.get(&w[..self.step]) {
            Some(&i) => i,
            None => return false,
        };
        for i in 1..=n - self.step {
            let cur = match self.index.get(&w[i..i + self.step]) {
                Some(&j) => j,
                None => return false,
            };
            if !self.matrix.connects(prev, cur) {
                return false;
            }
            prev = cur;
        }
        true
    }
}

/// The canonical minimal forbidden set of the shift: the antichain of
/// words w ∉ 𝓛 whose two maximal proper subwords are both in 𝓛.  This
/// presents the same shift with no redundancy, and is generally *not* a
/// subset of the input (forbidden {00, 01} minimizes to {0}).  Minimal
/// words never exceed the longest input word in length.  For the empty
/// shift the convention is to forbid every single letter.  Cost grows as
/// dᴸ in the longest forbidden word L.
pub fn minimal_forbidden_set(x: &ForbiddenSetSft) -> Result<ForbiddenSetSft> {
    if x.forbidden.is_empty() {
        return Ok(x.clone());
    }
    let memb = match Membership::build(x)? {
        Some(m) => m,
        None => {
            let letters = (0..x.d as u64).map(|s| vec![s]).collect();
            return ForbiddenSetSft::new(x.d, letters);
        }
    };
    let l_max = x.forbidden.iter().map(|w| w.len()).max().unwrap();
    let mut out = Vec::new();
    for len in 1..=l_max {
        for w in all_words(x.d, len) {
            if memb.contains(&w) {
                continue;
            }
            if len >= 2 && (!memb.contains(&w[1..]) || !memb.contains(&w[..len - 1])) {
                continue;
            }
            out.push(w);
        }
    }
    ForbiddenSetSft::new(x.d, out)
}

/// Exact number of length-n words in the extendable language of the
/// vertex shift: paths of n vertices through the trimmed graph.
pub fn count_words(a: &TransitionMatrix, n: u64) -> Result<BigUint> {
    if n == 0 {
        return Err(Error::InvalidInput("word length must be ≥ 1".into()));
    }
    let (trimmed, _) = a.as_nonneg().trim().ok_or(Error::EmptyShift)?;
    let dim = trimmed.dim();
    let memo = PathCountMemo::new(trimmed, vec![BigUint::one(); dim]);
    Ok(memo.count(n - 1))
}

/// h_top of a vertex shift: ln of the Perron root, as a validated
/// rational enclosure of width < 2⁻ᵖ.  Always converges — the status is
/// part of the shared entropy-result shape.
pub fn entropy_sft(a: &TransitionMatrix, p: u32) -> Result<EntropyResult> {
    if a.as_nonneg().trim().is_none() {
        return Err(Error::EmptyShift);
    }
    // Transient vertices sit in trivial SCCs and cannot change the
    // spectral radius, so no explicit trim is needed here.
    let (lo, hi) = perron_root_interval(a.as_nonneg(), p + 3);
    let iv = ln_interval_outer(&lo, &hi, p + 3)?;
    Ok(EntropyResult::new(iv.lo_q(), iv.hi_q(), ConvergenceStatus::Converged))
}

/// h_top of an SFT given by forbidden words, via higher-block recoding.
pub fn entropy_sft_forbidden(x: &ForbiddenSetSft, p: u32) -> Result<EntropyResult> {
    let r = higher_block(x)?;
    entropy_sft(&r.matrix, p)
}

/// A word-counting oracle for the SFT's extendable language.  Short words
/// (up to the recoding step) are counted as distinct subwords of the
/// allowed blocks; longer words biject with paths in the trimmed graph.
pub fn sft_language_oracle(x: &ForbiddenSetSft) -> Result<LanguageOracle> {
    let r = higher_block(x)?;
    let step = r.step as u64;
    let mut short: Vec<BigUint> = Vec::with_capacity(r.step);
    for len in 1..=r.step {
        let mut set: HashSet<&[u64]> = HashSet::new();
        for b in &r.blocks {
            for w in b.windows(len) {
                set.insert(w);
            }
        }
        short.push(BigUint::from(set.len()));
    }
    let dim = r.matrix.dim();
    let memo = PathCountMemo::new(r.matrix.as_nonneg().clone(), vec![BigUint::one(); dim]);
    Ok(LanguageOracle::from_fn(move |n| {
        if n <= step {
            short[(n - 1) as usize].clone()
        } else {
            memo.count(n - step)
        }
    }))
}
