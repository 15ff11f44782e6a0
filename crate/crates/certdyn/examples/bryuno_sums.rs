//! Brjuno partial sums from verified continued fractions.
//!
//! The series Σ ln(q_{n+1})/q_n over the convergent denominators of a
//! rotation number decides linearizability at an irrationally
//! indifferent point. Oracles only ever yield finitely many certain
//! partial quotients, so what is computable — and printed here — are
//! enclosures of partial sums, plus honest refusals when the expansion
//! terminates (rationals) or outruns the oracle (precision exhaustion).

use certdyn::error::Error;
use certdyn::julia::bryuno_partial_sums;
use certdyn::oracle::RealOracle;
use certdyn::rational::{q, q_to_f64, Q};
use num_traits::Zero;

fn table(name: &str, theta: &RealOracle, terms: usize) -> certdyn::Result<()> {
    let r = bryuno_partial_sums(theta, terms)?;
    println!("{name}:");
    println!("   n  a_n        q_n          S_n");
    for n in 0..r.partial_quotients.len() {
        let s = &r.partial_sums[n];
        println!(
            "  {:>2}  {:<9}  {:<11}  [{:.9}, {:.9}]",
            n + 1,
            r.partial_quotients[n],
            r.denominators[n + 1],
            q_to_f64(&s.lo_q()),
            q_to_f64(&s.hi_q()),
        );
    }
    Ok(())
}

fn main() -> certdyn::Result<()> {
    // (√5 − 1)/2 = [0; 1, 1, 1, …]: denominators are the Fibonacci
    // numbers, the slowest-growing continued fraction there is, and the
    // partial sums crawl upward — the golden rotation is Brjuno with the
    // worst possible margin.
    table("inverse golden mean", &RealOracle::golden(), 10)?;

    // A doubly exponential expansion: each quotient squares the last.
    // The denominators explode, yet that makes the *tail* terms tiny —
    // the Brjuno sum converges faster the wilder the quotients grow,
    // until they grow so fast (ln q_{n+1} ≫ q_n) that it diverges.
    let mut x = Q::zero();
    for a in [2u64, 4, 16, 256, 65536].iter().rev() {
        x = (Q::from_integer((*a).into()) + x).recip();
    }
    table("\n[0; 2, 4, 16, 256, 65536]", &RealOracle::constant(x), 5)?;

    // Rational rotation numbers terminate: asking past the end is an
    // error, not a guess.
    println!();
    match bryuno_partial_sums(&RealOracle::constant(q(113, 355)), 10) {
        Err(e @ Error::RationalDetected(_)) => println!("113/355, 10 terms: {e}"),
        other => println!("unexpected: {:?}", other.map(|_| ())),
    }
    table("113/355, 3 terms", &RealOracle::constant(q(113, 355)), 3)?;

    // The same value behind a black-box oracle: the remainder entering
    // the third step is exactly 1/16, and no finite enclosure around it
    // distinguishes [0; 3, 7, 16] from [0; 3, 7, 15, 1, …], so the
    // expansion gives up at step 3 instead of guessing.
    let proxy = RealOracle::proc(|_| q(113, 355));
    match bryuno_partial_sums(&proxy, 4) {
        Err(e @ Error::PrecisionExhausted(_)) => {
            println!("\nsame number as a black box, 4 terms: {e}")
        }
        other => println!("unexpected: {:?}", other.map(|_| ())),
    }
    Ok(())
}
