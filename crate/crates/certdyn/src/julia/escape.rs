//! The escape circle: a radius beyond which orbits provably diverge.

use crate::dyadic::Dyadic;
use crate::poly::PolySpec;

/// R = 2 + Σ|cᵢ|, upper-rounded, with coefficient oracles queried at 2⁻⁸.
///
/// Why this works: for |z| ≥ R ≥ 2 and i ≤ d−2,
///   |f(z)| ≥ |z|^d − Σ|cᵢ||z|^i ≥ |z|^{d−2}(|z|² − Σ|cᵢ|),
/// and |z|² ≥ R|z| = (2 + Σ|cᵢ|)|z| ≥ 2|z| + Σ|cᵢ| since |z| ≥ 1, so
/// |f(z)| ≥ 2|z|. Once past the circle the modulus at least doubles each
/// step, hence |z| ≥ R certifies escape.
pub fn escape_radius(f: &PolySpec) -> Dyadic {
    let mut sum = Dyadic::from_int(2);
    for c in f.coeff_boxes(8, 24) {
        // Upper bound on |c| from the box: √(ub of |c|²), outward.
        let bound = c.norm_sqr(24).sqrt(12);
        sum = &sum + bound.hi();
    }
    sum
}
