//! Sofic shifts presented by labeled graphs.
//!
//! Entropy goes through the subset construction: starting the
//! determinization from the full (trimmed) vertex set makes words of the
//! shift correspond bijectively to paths from the start state, so word
//! counts become path counts and entropy becomes ln of a Perron root.

use crate::error::{Error, Result};
use crate::shift::language::{LanguageOracle, PathCountMemo};
use crate::shift::perron::{perron_root_interval, NonnegMatrix};
use crate::shift::{ConvergenceStatus, EntropyResult};
use crate::transcend::ln_interval_outer;
use num_bigint::BigUint;
use num_traits::{One, Zero};
use std::collections::{BTreeSet, HashMap};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LabeledEdge {
    pub from: usize,
    pub to: usize,
    pub label: u64,
}

/// A finite directed multigraph with edges labeled over {0, …, d−1}.
/// The sofic shift it presents is the set of bi-infinite label sequences
/// of bi-infinite paths.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledGraph {
    vertices: usize,
    alphabet: usize,
    edges: Vec<LabeledEdge>,
}

impl LabeledGraph {
    pub fn new(vertices: usize, alphabet: usize, edges: Vec<LabeledEdge>) -> Result<Self> {
        if vertices == 0 {
            return Err(Error::InvalidInput("a presentation needs at least one vertex".into()));
        }
        if alphabet == 0 {
            return Err(Error::InvalidInput("alphabet must have at least one symbol".into()));
        }
        for e in &edges {
            if e.from >= vertices || e.to >= vertices {
                return Err(Error::InvalidInput(format!(
                    "edge ({}, {}) out of range for {} vertices",
                    e.from, e.to, vertices
                )));
            }
            if e.label >= alphabet as u64 {
                return Err(Error::AlphabetMismatch { symbol: e.label, alphabet });
            }
        }
        Ok(LabeledGraph { vertices, alphabet, edges })
    }

    /// The even shift: binary sequences where every maximal block of 0s
    /// between two 1s has even length.  Strictly sofic — no forbidden-set
    /// presentation exists.
    pub fn even_shift() -> Self {
        LabeledGraph::new(
            2,
            2,
            vec![
                LabeledEdge { from: 0, to: 0, label: 1 },
                LabeledEdge { from: 0, to: 1, label: 0 },
                LabeledEdge { from: 1, to: 0, label: 0 },
            ],
        )
        .unwrap()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet
    }

    pub fn edges(&self) -> &[LabeledEdge] {
        &self.edges
    }

    /// At most one edge per (source, label): word-to-path lifting is
    /// unique from a fixed start vertex.
    pub fn is_right_resolving(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.edges.iter().all(|e| seen.insert((e.from, e.label)))
    }

    /// Edge multiplicities, labels forgotten.
    pub(crate) fn count_matrix(&self) -> NonnegMatrix {
        let mut m = NonnegMatrix::zeros(self.vertices);
        for e in &self.edges {
            m.add_to(e.from, e.to, 1);
        }
        m
    }

    /// Restrict to vertices lying on bi-infinite paths.  Returns the
    /// restricted graph and the kept original indices, or None when
    /// nothing survives (the presented shift is empty).
    pub fn trim(&self) -> Option<(LabeledGraph, Vec<usize>)> {
        let (_, kept) = self.count_matrix().trim()?;
        let pos: HashMap<usize, usize> = kept.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let edges = self
            .edges
            .iter()
            .filter_map(|e| {
                let from = *pos.get(&e.from)?;
                let to = *pos.get(&e.to)?;
                Some(LabeledEdge { from, to, label: e.label })
            })
            .collect();
        Some((LabeledGraph { vertices: kept.len(), alphabet: self.alphabet, edges }, kept))
    }
}

/// Subset construction seeded with the *full* trimmed vertex set.  The
/// start state then accepts exactly the language of the shift, and
/// determinism makes words correspond one-to-one with paths from it.
/// State 0 of the result is that start state; every state is reachable
/// from it and has at least one outgoing edge.
pub fn determinize(g: &LabeledGraph) -> Result<LabeledGraph> {
    let (t, _) = g.trim().ok_or(Error::EmptyShift)?;
    let mut by_label: Vec<Vec<Vec<usize>>> = vec![vec![Vec::new(); t.vertices]; t.alphabet];
    for e in &t.edges {
        by_label[e.label as usize][e.from].push(e.to);
    }

    let s0: Vec<usize> = (0..t.vertices).collect();
    let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
    index.insert(s0.clone(), 0);
    let mut states = vec![s0];
    let mut edges = Vec::new();
    let mut qi = 0;
    while qi < states.len() {
        let cur = states[qi].clone();
        for a in 0..t.alphabet as u64 {
            let mut tgt: BTreeSet<usize> = BTreeSet::new();
            for &v in &cur {
                tgt.extend(&by_label[a as usize][v]);
            }
            if tgt.is_empty() {
                continue;
            }
            let key: Vec<usize> = tgt.into_iter().collect();
            let next = states.len();
            let j = *index.entry(key.clone()).or_insert_with(|| {
                states.push(key);
                next
            });
            edges.push(LabeledEdge { from: qi, to: j, label: a });
        }
        qi += 1;
    }
    LabeledGraph::new(states.len(), t.alphabet, edges)
}

/// h_top of the sofic shift, as a validated enclosure of width < 2⁻ᵖ.
///
/// Word counts equal path counts from the determinized start state, and
/// since every state is reachable from it and no state is a dead end,
/// their growth rate is the full spectral radius of the edge-count
/// matrix — no further trimming needed.
pub fn entropy_sofic(g: &LabeledGraph, p: u32) -> Result<EntropyResult> {
    let det = determinize(g)?;
    let (lo, hi) = perron_root_interval(&det.count_matrix(), p + 3);
    let iv = ln_interval_outer(&lo, &hi, p + 3)?;
    Ok(EntropyResult::new(iv.lo_q(), iv.hi_q(), ConvergenceStatus::Converged))
}

/// Exact word counts for the sofic language: length-n words biject with
/// n-edge paths from the determinized start state.
pub fn sofic_language_oracle(g: &LabeledGraph) -> Result<LanguageOracle> {
    let det = determinize(g)?;
    let m = det.count_matrix();
    let mut init = vec![BigUint::zero(); m.dim()];
    init[0] = BigUint::one();
    let memo = PathCountMemo::new(m, init);
    Ok(LanguageOracle::from_fn(move |n| memo.count(n)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{pow2, q_to_f64};
    use crate::shift::sft::{entropy_sft_forbidden, ForbiddenSetSft};

    #[test]
    fn construction_validates() {
        let bad_label = vec![LabeledEdge { from: 0, to: 0, label: 2 }];
        assert!(matches!(
            LabeledGraph::new(1, 2, bad_label),
            Err(Error::AlphabetMismatch { symbol: 2, alphabet: 2 })
        ));
        let bad_vertex = vec![LabeledEdge { from: 1, to: 0, label: 0 }];
        assert!(matches!(LabeledGraph::new(1, 2, bad_vertex), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn even_shift_determinizes_to_three_states() {
        let det = determinize(&LabeledGraph::even_shift()).unwrap();
        // {v0, v1}, {v1}, {v0}: label 0 maps the start into itself.
        assert_eq!(det.vertex_count(), 3);
        assert!(det.is_right_resolving());
    }

    #[test]
    fn even_shift_counts() {
        let o = sofic_language_oracle(&LabeledGraph::even_shift()).unwrap();
        let want = [2u32, 4, 7, 12];
        for (i, &c) in want.iter().enumerate() {
            assert_eq!(o.count((i + 1) as u64).unwrap(), BigUint::from(c));
        }
    }

    /// Direct characterization: w is in the even-shift language iff every
    /// maximal run of 0s bounded by 1s on *both* sides has even length.
    fn even_member(w: &[u64]) -> bool {
        let ones: Vec<usize> = (0..w.len()).filter(|&i| w[i] == 1).collect();
        ones.windows(2).all(|p| (p[1] - p[0] - 1) % 2 == 0)
    }

    #[test]
    fn even_shift_counts_match_direct_characterization() {
        let o = sofic_language_oracle(&LabeledGraph::even_shift()).unwrap();
        for n in 1..=10usize {
            let mut count = 0u64;
            for w in crate::shift::sft::all_words(2, n) {
                if even_member(&w) {
                    count += 1;
                }
            }
            assert_eq!(o.count(n as u64).unwrap(), BigUint::from(count), "length {n}");
        }
    }

    #[test]
    fn even_shift_entropy_is_golden() {
        let r = entropy_sofic(&LabeledGraph::even_shift(), 16).unwrap();
        let phi_ln = ((1.0 + 5f64.sqrt()) / 2.0).ln();
        assert!(q_to_f64(&r.lo) <= phi_ln && phi_ln <= q_to_f64(&r.hi));
        assert!(r.width() <= pow2(-16));
    }

    #[test]
    fn vertex_shift_as_labeled_graph_agrees_with_sft() {
        // Golden mean: label each edge by its target vertex symbol.
        let g = LabeledGraph::new(
            2,
            2,
            vec![
                LabeledEdge { from: 0, to: 0, label: 0 },
                LabeledEdge { from: 0, to: 1, label: 1 },
                LabeledEdge { from: 1, to: 0, label: 0 },
            ],
        )
        .unwrap();
        let a = entropy_sofic(&g, 20).unwrap();
        let b = entropy_sft_forbidden(&ForbiddenSetSft::golden_mean(), 20).unwrap();
        // Both enclose the same number.
        assert!(a.lo.max(b.lo.clone()) <= a.hi.clone().min(b.hi));
    }

    #[test]
    fn dead_ends_are_trimmed() {
        // Vertex 2 is reachable but reaches no cycle; vertex 3 is isolated.
        let g = LabeledGraph::new(
            4,
            2,
            vec![
                LabeledEdge { from: 0, to: 0, label: 1 },
                LabeledEdge { from: 0, to: 1, label: 0 },
                LabeledEdge { from: 1, to: 0, label: 0 },
                LabeledEdge { from: 0, to: 2, label: 0 },
            ],
        )
        .unwrap();
        let (t, kept) = g.trim().unwrap();
        assert_eq!(kept, vec![0, 1]);
        assert_eq!(t.edges().len(), 3);
        // Same shift as the even shift after trimming.
        let r = entropy_sofic(&g, 14).unwrap();
        let phi_ln = ((1.0 + 5f64.sqrt()) / 2.0).ln();
        assert!(q_to_f64(&r.lo) <= phi_ln && phi_ln <= q_to_f64(&r.hi));
    }

    #[test]
    fn empty_presentation_errors() {
        let g = LabeledGraph::new(2, 2, vec![]).unwrap();
        assert!(matches!(determinize(&g), Err(Error::EmptyShift)));
        assert!(matches!(entropy_sofic(&g, 10), Err(Error::EmptyShift)));
    }

    #[test]
    fn full_shift_presentation() {
        let edges = (0..3u64).map(|a| LabeledEdge { from: 0, to: 0, label: a }).collect();
        let g = LabeledGraph::new(1, 3, edges).unwrap();
        let r = entropy_sofic(&g, 20).unwrap();
        let ln3 = 3f64.ln();
        assert!(q_to_f64(&r.lo) <= ln3 && ln3 <= q_to_f64(&r.hi));
        let o = sofic_language_oracle(&g).unwrap();
        assert_eq!(o.count(5).unwrap(), BigUint::from(243u32));
    }

    #[test]
    fn determinize_is_stable() {
        let det = determinize(&LabeledGraph::even_shift()).unwrap();
        let det2 = determinize(&det).unwrap();
        // Determinizing a right-resolving trimmed graph can only merge
        // states; language counts must not change.
        let o1 = sofic_language_oracle(&det).unwrap();
        let o2 = sofic_language_oracle(&det2).unwrap();
        for n in 1..=8u64 {
            assert_eq!(o1.count(n).unwrap(), o2.count(n).unwrap());
        }
    }
}
