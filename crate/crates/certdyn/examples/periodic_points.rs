//! Classified periodic points: attracting, repelling, and the honest
//! boundary between "provably parabolic" and "cannot tell".
//!
//! Points that snap to Gaussian rationals get exact verdicts; everything
//! else is classified from interval multipliers, which can prove strict
//! inequalities (|λ| ≠ 1) but only ever *suspect* equalities.

use certdyn::julia::{basin_box, classify_periodic, PointClass};
use certdyn::oracle::ComplexOracle;
use certdyn::poly::{qc, qc_int, PolySpec};
use certdyn::rational::{pow2, q, q_to_f64, Q};
use certdyn::transcend::sin_cos_tau;
use num_traits::Zero;

fn show(f: &PolySpec, k: usize) -> certdyn::Result<()> {
    let tol = pow2(-40);
    for r in classify_periodic(f, k, &tol)? {
        let (x, y) = r.point.midpoint();
        let (mx, my) = r.multiplier.midpoint();
        let exact = if r.exact_point.is_some() { "exact" } else { "interval" };
        print!(
            "  period {k}: ({:+.6}, {:+.6})  λ ≈ ({:+.4}, {:+.4})  {:?} [{exact}",
            q_to_f64(&x),
            q_to_f64(&y),
            q_to_f64(&mx),
            q_to_f64(&my),
            r.class,
        );
        if r.multiplicity > 1 {
            print!(", multiplicity {}", r.multiplicity);
        }
        print!("]");
        if r.class == PointClass::Attracting {
            if let Some(b) = basin_box(f, &r, 60) {
                print!("  invariant box half-width {}", q_to_f64(&b.re.width().to_q()) / 2.0);
            }
        }
        println!();
    }
    Ok(())
}

fn main() -> certdyn::Result<()> {
    println!("z² (fixed points 0 and 1, 2-cycle at the cube roots of unity):");
    let f = PolySpec::quadratic(qc_int(0, 0));
    show(&f, 1)?;
    show(&f, 2)?;

    println!("\nz² − 1 (superattracting 2-cycle {{0, −1}}):");
    let f = PolySpec::quadratic(qc_int(-1, 0));
    show(&f, 2)?;

    println!("\nz² + 1/4 (parabolic: fixed points collide at 1/2 with λ = 1):");
    let f = PolySpec::quadratic(qc(q(1, 4), Q::zero()));
    show(&f, 1)?;

    println!("\nz² + (37+16i)/100 (λ = (3+4i)/5: |λ| = 1 exactly, yet no root of unity):");
    let f = PolySpec::quadratic(qc(q(37, 100), q(16, 100)));
    show(&f, 1)?;

    // Siegel-candidate multiplier e^{2πiθ} at the inverse golden mean:
    // the coefficient c = λ/2 − λ²/4 is only available as an oracle, so
    // verdicts are about a 96-bit proxy and the neutral point stays
    // unresolved — deciding linearizability needs the rotation number's
    // arithmetic (see the bryuno_sums example), not more precision here.
    println!("\nz² + c, c = λ/2 − λ²/4, λ = e^(2πi·(√5−1)/2):");
    let c = ComplexOracle::proc(|n| {
        let theta = certdyn::oracle::RealOracle::golden().query(n + 8);
        let (s, co) = sin_cos_tau(&theta, n + 8);
        let (lr, li) = (co.midpoint(), s.midpoint());
        // c = λ/2 − λ²/4 with λ = lr + i·li, carried out in ℚ.
        let re = &lr / q(2, 1) - (&lr * &lr - &li * &li) / q(4, 1);
        let im = &li / q(2, 1) - &lr * &li / q(2, 1);
        (re, im)
    });
    let f = PolySpec::new(2, vec![c])?;
    show(&f, 1)?;
    Ok(())
}
