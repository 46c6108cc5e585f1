//! SAT blow-up on the affine line: given an interval union A of positive
//! density mass, find γ = (q, s) ∈ ℚ⋊ℚ⁺ with mass(γA) ≥ target by zooming at
//! a density point of A — dilate hard about the midpoint of the widest
//! component interval, recentered on the measure's mode.

use crate::error::{Error, Result};
use crate::measures::{DensityMeasure, IntervalUnion};
use crate::rat;
use crate::systems::AffineElement;
use crate::Rat;

/// Doublings of the dilation before giving up. At s = 2⁶⁰ the zoomed widest
/// interval spans ~10¹⁸ half-widths of the Cauchy density, so hitting this
/// cap signals an A that is pathological at numeric resolution.
const MAX_DOUBLINGS: u64 = 60;

/// Denominator used when rationalizing the density point.
const DENOM_CAP: i64 = 1 << 40;

fn rationalize(x: f64) -> Rat {
    rat((x * DENOM_CAP as f64).round() as i64, DENOM_CAP)
}

/// Deterministic search for γ with mass(γA) ≥ target. γ acts by
/// x ↦ sx + q; the candidate family is s = 2^k, q = −s·x₀ with x₀ the
/// midpoint of the widest component interval (an interior density point), so
/// γ maps a neighborhood of x₀ onto a huge interval around the mode.
pub fn sat_blowup_search(
    a: &IntervalUnion,
    mu: DensityMeasure,
    target: f64,
) -> Result<(AffineElement, f64)> {
    let mass = mu.mass(a);
    if !(mass > 0.0 && mass < 1.0) {
        return Err(Error::InvalidParameter {
            reason: format!("density mass of A must lie in (0,1), got {mass}"),
        });
    }
    if target >= 1.0 {
        return Err(Error::InvalidParameter {
            reason: "target mass must be below 1".into(),
        });
    }

    let identity = AffineElement::new(rat(0, 1), rat(1, 1))?;
    if mass >= target {
        return Ok((identity, mass));
    }

    let &(lo, hi) = a
        .intervals()
        .iter()
        .max_by(|x, y| (x.1 - x.0).partial_cmp(&(y.1 - y.0)).unwrap())
        .expect("positive mass implies a nonempty union");
    let x0 = rationalize((lo + hi) / 2.0);
    let x0_f = num::ToPrimitive::to_f64(&x0).unwrap();

    let mut s = rat(2, 1);
    let mut s_f = 2.0;
    let mut best = mass;
    for _ in 0..MAX_DOUBLINGS {
        let achieved = mu.mass(&a.map_affine(s_f, -s_f * x0_f));
        if achieved >= target {
            let gamma = AffineElement::new(-&s * &x0, s)?;
            return Ok((gamma, achieved));
        }
        best = best.max(achieved);
        s = &s * rat(2, 1);
        s_f *= 2.0;
    }
    Err(Error::SearchExhausted {
        iterations: MAX_DOUBLINGS as usize,
        achieved: best,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng;
    use rand::Rng;

    #[test]
    fn symmetric_interval_blows_up() {
        let a = IntervalUnion::new(vec![(-1.0, 1.0)]);
        let (gamma, achieved) = sat_blowup_search(&a, DensityMeasure::Cauchy, 0.99).unwrap();
        assert!(achieved >= 0.99);
        assert!(*gamma.dilation() > rat(1, 1));
        // Pure dilation about 0 suffices here, so q = 0.
        assert_eq!(*gamma.translation(), rat(0, 1));
    }

    #[test]
    fn near_full_mass_returns_identity() {
        // Cauchy mass of (−R, R) → 1; at R = 1e9 the mass is 1 − O(1e-9).
        let a = IntervalUnion::new(vec![(-1e9, 1e9)]);
        let (gamma, achieved) = sat_blowup_search(&a, DensityMeasure::Cauchy, 0.5).unwrap();
        assert_eq!(*gamma.dilation(), rat(1, 1));
        assert_eq!(*gamma.translation(), rat(0, 1));
        assert!(achieved > 1.0 - 1e-8);
    }

    #[test]
    fn offset_interval_needs_translation() {
        let a = IntervalUnion::new(vec![(100.0, 101.0)]);
        let (gamma, achieved) = sat_blowup_search(&a, DensityMeasure::Cauchy, 0.99).unwrap();
        assert!(achieved >= 0.99);
        assert!(*gamma.translation() < rat(0, 1));
    }

    #[test]
    fn random_sparse_unions_succeed() {
        // The acceptance-style workload: random unions of 20 intervals with
        // modest total mass, target 0.99.
        let mut rng = rng::stream(7, "sat-unit", 0);
        for _ in 0..5 {
            let intervals: Vec<(f64, f64)> = (0..20)
                .map(|_| {
                    let c: f64 = rng.gen_range(-10.0..10.0);
                    let w: f64 = rng.gen_range(0.01..0.3);
                    (c - w, c + w)
                })
                .collect();
            let a = IntervalUnion::new(intervals);
            let (_, achieved) = sat_blowup_search(&a, DensityMeasure::Cauchy, 0.99).unwrap();
            assert!(achieved >= 0.99);
        }
    }

    #[test]
    fn full_line_rejected() {
        let a = IntervalUnion::new(vec![(f64::NEG_INFINITY, f64::INFINITY)]);
        assert!(sat_blowup_search(&a, DensityMeasure::Cauchy, 0.99).is_err());
    }
}
