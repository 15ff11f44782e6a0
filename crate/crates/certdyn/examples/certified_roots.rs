//! Root boxes with existence–uniqueness certificates.
//!
//! Floating point proposes, interval Newton disposes: every box below
//! that says "certified" provably contains exactly one root of the exact
//! polynomial. Multiplicities come from exact squarefree decomposition,
//! never from clustering heuristics.

use certdyn::poly::{qc, qc_int, QPoly, QC};
use certdyn::rational::{pow2, q, q_int, q_to_f64};
use certdyn::roots::all_roots;
use num_traits::One;

fn linear(root: QC) -> QPoly {
    QPoly::new(vec![-root, QC::one()])
}

fn show(name: &str, f: &QPoly) -> certdyn::Result<()> {
    println!("{name}:");
    let mut worst = q_int(0);
    for r in all_roots(f, &pow2(-40))? {
        let (x, y) = r.point.midpoint();
        let w = r.point.re.width().to_q();
        println!(
            "  ({:+.12}, {:+.12})  box width 2^{:>7.1}  mult {}  {}",
            q_to_f64(&x),
            q_to_f64(&y),
            q_to_f64(&w).log2(),
            r.multiplicity,
            if r.certified { "certified" } else { "UNCERTIFIED" },
        );
        let v = f.eval(&qc(x, y));
        let res = &v.re * &v.re + &v.im * &v.im;
        if res > worst {
            worst = res;
        }
    }
    println!("  worst |f(midpoint)|² = {:.2e} (exact rational arithmetic)", q_to_f64(&worst));
    Ok(())
}

fn main() -> certdyn::Result<()> {
    // z⁵ − 1: four of the five roots are irrational points on the unit
    // circle; each gets its own proven box.
    let z5 = QPoly::new(vec![
        qc_int(-1, 0),
        qc_int(0, 0),
        qc_int(0, 0),
        qc_int(0, 0),
        qc_int(0, 0),
        qc_int(1, 0),
    ]);
    show("z⁵ − 1", &z5)?;

    // Roots 1 and 1001/1000 are only 10⁻³ apart; the certificates must
    // keep their boxes disjoint or fail — silently merging them is not an
    // option.
    let clustered = linear(qc_int(1, 0))
        .mul(&linear(qc(q(1001, 1000), q_int(0))))
        .mul(&linear(qc_int(0, -1)));
    show("\n(z − 1)(z − 1001/1000)(z + i)", &clustered)?;

    // A double and a triple root: Yun's decomposition reads the
    // multiplicities off exactly, and interval Newton certifies the
    // roots of the squarefree parts.
    let multiple = linear(qc_int(1, 0))
        .mul(&linear(qc_int(1, 0)))
        .mul(&linear(qc_int(-2, 0)))
        .mul(&linear(qc_int(-2, 0)))
        .mul(&linear(qc_int(-2, 0)));
    show("\n(z − 1)²(z + 2)³", &multiple)?;
    Ok(())
}
