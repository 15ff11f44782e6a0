//! Pointwise entropy along a single orbit (Katok–Brin) and the Birkhoff
//! empirical measure it generates, compared to Lebesgue in W1.
//!
//! Everything here is an estimator: one trajectory, no certificates —
//! the interesting part is how close the readings land to ln 2 anyway.

use certdyn::measure::{
    discretize_reference, wasserstein1, MetricChoice, ReferenceMeasure,
};
use certdyn::metric_entropy::{
    birkhoff_measure, katok_brin_estimate, orbit, pseudo_random_start, IntervalMap,
};
use certdyn::rational::{q, q_to_f64};

fn main() -> certdyn::Result<()> {
    let f = IntervalMap::Doubling;
    let x0 = pseudo_random_start(0);
    println!("start x0 = {x0} (denominator 3^13: never cycles within 10^6 steps)");

    let n_orbit = 1_000_000u64;
    let sample = orbit(&f, &x0, n_orbit, 20)?;
    for n in [8u64, 12, 16] {
        let r = katok_brin_estimate(&sample, &q(1, 4), n)?;
        println!(
            "katok-brin eps=1/4 n={n:>2}: estimate {:.6}  ({} hits / {} windows)",
            q_to_f64(&r.estimate),
            r.hits,
            r.windows,
        );
    }
    println!("target ln 2 = {:.6}", 2f64.ln());

    // Empirical measure of a 10^5-point orbit vs. discretized Lebesgue.
    let mu = birkhoff_measure(&f, &x0, 100_000, 20)?;
    println!("\nbirkhoff measure: {} distinct atoms", mu.len());
    // Snap to 2^-12 bin centers (moves W1 by < 2^-12; exact merge).
    let mu = mu.snap_to_grid(12);
    println!("snapped to 2^-12 grid: {} atoms", mu.len());
    let leb = discretize_reference(ReferenceMeasure::LebesgueInterval { atoms: 64 }, 30)?;
    // Circle metric: distances between rational points are rational, so the
    // transport costs are exact and the reported error is zero.
    let r = wasserstein1(&mu, &leb, MetricChoice::Circle, 25)?;
    println!(
        "W1(orbit measure, lebesgue-64) = {:.6} ± {:.1e}  (bin radius 1/128 ≈ 0.0078)",
        q_to_f64(&r.value),
        q_to_f64(&r.error),
    );

    // The same reading on a period-2 orbit: ln(2)/n, tending to zero.
    let periodic = orbit(&f, &q(1, 3), 1000, 20)?;
    let r = katok_brin_estimate(&periodic, &q(1, 5), 10)?;
    println!(
        "\nperiod-2 orbit, n=10: estimate {:.6} = ln(2)/10 (true pointwise entropy 0)",
        q_to_f64(&r.estimate),
    );
    Ok(())
}
