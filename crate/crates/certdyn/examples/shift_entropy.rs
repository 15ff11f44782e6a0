//! Certified topological entropy for the three shift presentations.
//!
//! Every figure printed here is an endpoint of a proven enclosure; the
//! floating-point rendering is for reading only.

use certdyn::rational::{q, q_to_f64};
use certdyn::shift::{
    entropy_coded, entropy_sft_forbidden, entropy_sofic, sft_language_oracle,
    zero_entropy_semialgorithm, EntropyResult, ForbiddenSetSft, GeneratingSet, LabeledGraph,
    LanguageOracle, ZeroEntropyOutcome,
};
use num_bigint::BigUint;

fn show(name: &str, r: &EntropyResult) {
    println!(
        "  {name:<26} [{:.10}, {:.10}]   width 2^{:>6.1}   {:?}",
        q_to_f64(&r.lo),
        q_to_f64(&r.hi),
        q_to_f64(&r.width()).log2(),
        r.status,
    );
}

fn main() -> certdyn::Result<()> {
    println!("shifts of finite type (p = 30):");
    let golden = ForbiddenSetSft::golden_mean();
    show("golden mean {11}", &entropy_sft_forbidden(&golden, 30)?);
    // ln((1+√5)/2) = 0.4812118250596…

    let s_gap = ForbiddenSetSft::new(2, vec![vec![1, 0, 1], vec![0, 0, 0]])?;
    show("gaps of 0 or 2 {101,000}", &entropy_sft_forbidden(&s_gap, 30)?);
    // largest root of λ³ = λ² + 1: ln 1.4655712… = 0.3822231…

    let full3 = ForbiddenSetSft::full_shift(3)?;
    show("full 3-shift", &entropy_sft_forbidden(&full3, 30)?);

    println!("\nsofic (p = 30):");
    show("even shift", &entropy_sofic(&LabeledGraph::even_shift(), 30)?);

    println!("\ncoded, golden mean as closure of {{0, 01}}* (p = 12):");
    let gens = GeneratingSet::new(2, vec![vec![0], vec![0, 1]])?;
    let oracle = sft_language_oracle(&golden)?;
    let rep = entropy_coded(&gens, &oracle, 12, 2, 1024)?;
    for (m, lo) in &rep.lower_bounds {
        println!("  after {m} generators   lower ≥ {:.10}", q_to_f64(lo));
    }
    for (n, hi) in rep.upper_bounds.iter().filter(|(n, _)| n.is_power_of_two()) {
        println!("  word length {n:>4}      upper ≤ {:.10}", q_to_f64(hi));
    }
    show("final", &rep.result);

    println!("\nzero-entropy semi-algorithm, period-2 orbit, eps = 1/10:");
    let two_points = LanguageOracle::from_fn(|_| BigUint::from(2u32));
    match zero_entropy_semialgorithm(&two_points, &q(1, 10), 100)? {
        ZeroEntropyOutcome::Value { h, n } => {
            println!("  certified |h| < 1/10 at word length {n}; reported h = {:.6}", q_to_f64(&h));
        }
        ZeroEntropyOutcome::Inconclusive { best } => {
            println!("  inconclusive; best upper bound {:.6}", q_to_f64(&best));
        }
    }
    Ok(())
}
