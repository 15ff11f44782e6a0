//! Certified box classification of filled Julia sets.
//!
//! Every `#` below is a box proven to lie in the interior of K and every
//! blank a box proven to escape; `·` is honestly unknown. Area bounds
//! come straight from counting: they are theorems about K, not samples.

use certdyn::dyadic::Dyadic;
use certdyn::julia::{escape_radius, filled_julia_approx, BoxClass, BoxGrid};
use certdyn::poly::{qc_int, PolySpec};
use certdyn::rational::{q_to_f64, Q};

fn summarize(name: &str, g: &BoxGrid) {
    let (esc, int, unk) = g.counts();
    let total = g.side * g.side;
    println!(
        "{name}: {}×{} boxes of side 2^-{}, window radius {}",
        g.side,
        g.side,
        g.resolution,
        q_to_f64(&g.radius.to_q()),
    );
    println!(
        "  escaping {esc} ({:.1}%)   interior {int} ({:.1}%)   unknown {unk} ({:.1}%)   interface {:.3}",
        100.0 * esc as f64 / total as f64,
        100.0 * int as f64 / total as f64,
        100.0 * unk as f64 / total as f64,
        g.interface_fraction,
    );
    // Counting boxes bounds the area of K: interior boxes are inside it,
    // and everything not escaping covers it.
    let box_area = {
        let s = Dyadic::from_parts(1, -(g.resolution as i64)).to_q();
        &s * &s
    };
    let lower = Q::from_integer(int.into()) * &box_area;
    let upper = Q::from_integer((int + unk).into()) * &box_area;
    println!(
        "  area(K) in [{:.4}, {:.4}]",
        q_to_f64(&lower),
        q_to_f64(&upper)
    );
}

fn render(g: &BoxGrid, cols: usize) {
    let step = g.side.div_ceil(cols);
    // Terminal cells are about twice as tall as wide.
    let mut lines = vec![];
    let mut iy = g.side;
    while iy >= 2 * step {
        iy -= 2 * step;
        let mut line = String::new();
        for ix in (0..g.side).step_by(step) {
            line.push(match g.class_at(ix, iy) {
                BoxClass::Escaping(_) => ' ',
                BoxClass::Interior => '#',
                BoxClass::Unknown => '·',
            });
        }
        lines.push(line.trim_end().to_string());
    }
    let first = lines.iter().position(|l| !l.is_empty()).unwrap_or(0);
    let last = lines.iter().rposition(|l| !l.is_empty()).unwrap_or(0);
    for line in &lines[first..=last] {
        println!("  {line}");
    }
}

fn main() -> certdyn::Result<()> {
    // Radii beyond which one application already doubles the modulus;
    // they become the (grid-rounded) window sizes below.
    for (name, c) in [("z²", qc_int(0, 0)), ("z² − 1", qc_int(-1, 0)), ("z² + i", qc_int(0, 1))] {
        let r = escape_radius(&PolySpec::quadratic(c));
        println!("escape radius of {name}: {}", q_to_f64(&r.to_q()));
    }

    // z²: K is the closed unit disk, area π = 3.14159…, and the bounds
    // below must trap it.
    let circle = PolySpec::quadratic(qc_int(0, 0));
    let g = filled_julia_approx(&circle, 6, 96)?;
    summarize("\nz²", &g);

    // z² − 1: the basilica. Interior certificates flow from the
    // superattracting 2-cycle {0, −1}.
    let basilica = PolySpec::quadratic(qc_int(-1, 0));
    let g = filled_julia_approx(&basilica, 6, 96)?;
    summarize("\nz² − 1", &g);
    render(&g, 96);

    // z² + i: a dendrite — K has empty interior, so soundness demands
    // zero interior boxes at every resolution.
    let dendrite = PolySpec::quadratic(qc_int(0, 1));
    let g = filled_julia_approx(&dendrite, 5, 64)?;
    summarize("\nz² + i", &g);

    // z² + 1/4: parabolic. The interior is nonempty but no cycle
    // attracts, so no box can currently be certified interior — the
    // unknown share stays honestly large.
    let cauliflower = PolySpec::quadratic(certdyn::poly::qc(
        certdyn::rational::q(1, 4),
        Q::from_integer(0.into()),
    ));
    let g = filled_julia_approx(&cauliflower, 5, 64)?;
    summarize("\nz² + 1/4", &g);
    Ok(())
}
