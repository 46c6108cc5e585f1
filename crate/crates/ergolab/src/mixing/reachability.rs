//! Monte-Carlo double-ergodicity evidence: sample pairs from a source set of
//! X×X and walks η₁, η₂, … of the step distribution, and record for each
//! target set whether some diagonal image (η_n·x, η_n·y) lands in it within
//! n_max steps. Positive frequencies for all targets are evidence consistent
//! with double ergodicity; a structurally unreachable target (an invariant
//! separates source from target) shows up as frequency exactly 0.

use crate::error::Result;
use crate::measures::StepDistribution;
use crate::randomwalk::sample_walk;
use crate::rng::derive_seed;
use crate::systems::Group;
use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct ReachabilityReport {
    pub trials: usize,
    pub n_max: usize,
    pub seed: u64,
    /// Per-target hit counts over the trials.
    pub hits: Vec<usize>,
    /// hits / trials.
    pub frequencies: Vec<f64>,
    /// Trials whose orbit left the representable space before n_max (the
    /// remaining steps are skipped, hits up to that point still count).
    pub truncated_trials: usize,
}

/// Runs `trials` independent (pair, walk) samples. Time n = 0 (the identity)
/// counts, so target = source reports frequency 1. The action may fail on a
/// finitely-represented space (e.g. boundary prefixes running out of depth);
/// such a trial keeps its hits so far and is tallied in `truncated_trials`.
pub fn de_reachability<G: Group, P: Clone, R: rand::Rng>(
    m: &StepDistribution<G>,
    action: impl Fn(&G, &P, &P) -> Result<(P, P)>,
    source: impl Fn(&mut R) -> (P, P),
    mut source_rng: R,
    targets: &[&dyn Fn(&P, &P) -> bool],
    n_max: usize,
    trials: usize,
    seed: u64,
) -> ReachabilityReport {
    let mut hits = vec![0usize; targets.len()];
    let mut truncated_trials = 0;
    for trial in 0..trials {
        let (x0, y0) = source(&mut source_rng);
        let walk = sample_walk(m, n_max, derive_seed(seed, "de-walk", trial as u64));
        let mut hit = vec![false; targets.len()];
        for n in 0..=n_max {
            let g = walk.position(n);
            let (x, y) = match action(&g, &x0, &y0) {
                Ok(pair) => pair,
                Err(_) => {
                    truncated_trials += 1;
                    break;
                }
            };
            for (t, target) in targets.iter().enumerate() {
                if !hit[t] && target(&x, &y) {
                    hit[t] = true;
                }
            }
            if hit.iter().all(|&h| h) {
                break;
            }
        }
        for (t, &h) in hit.iter().enumerate() {
            if h {
                hits[t] += 1;
            }
        }
    }
    let frequencies = hits.iter().map(|&h| h as f64 / trials as f64).collect();
    ReachabilityReport {
        trials,
        n_max,
        seed,
        hits,
        frequencies,
        truncated_trials,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::uniform_f2;
    use crate::rat;
    use crate::rng;
    use crate::systems::{boundary_act, AffineElement, BoundaryPoint, FreeWord, Letter};
    use rand::Rng;

    #[test]
    fn target_equal_to_source_hits_at_time_zero() {
        let m = uniform_f2();
        let source = |rng: &mut rand_chacha::ChaCha8Rng| {
            (
                BoundaryPoint::random_eta(rng, 30),
                BoundaryPoint::random_eta(rng, 30),
            )
        };
        let everything = |_: &BoundaryPoint, _: &BoundaryPoint| true;
        let report = de_reachability(
            &m,
            |g, x, y| Ok((boundary_act(g, x)?, boundary_act(g, y)?)),
            source,
            rng::stream(3, "de-src", 0),
            &[&everything],
            0,
            50,
            3,
        );
        assert_eq!(report.frequencies, vec![1.0]);
    }

    #[test]
    fn affine_cross_order_unreachable() {
        // Source {x < y}, target {x > y}: the order sign is invariant, so the
        // frequency is exactly 0 no matter the walk.
        let m = StepDistribution::uniform(vec![
            AffineElement::new(rat(1, 1), rat(1, 1)).unwrap(),
            AffineElement::new(rat(-1, 1), rat(1, 1)).unwrap(),
            AffineElement::new(rat(0, 1), rat(2, 1)).unwrap(),
            AffineElement::new(rat(0, 1), rat(1, 2)).unwrap(),
        ])
        .unwrap();
        let source = |rng: &mut rand_chacha::ChaCha8Rng| {
            let x = rat(rng.gen_range(-100..100), 7);
            (x.clone(), x + rat(1, rng.gen_range(1..20)))
        };
        let crossed = |x: &crate::Rat, y: &crate::Rat| x > y;
        let report = de_reachability(
            &m,
            |g: &AffineElement, x: &crate::Rat, y: &crate::Rat| Ok((g.apply(x), g.apply(y))),
            source,
            rng::stream(3, "de-affine", 0),
            &[&crossed],
            50,
            100,
            3,
        );
        assert_eq!(report.frequencies, vec![0.0]);
    }

    #[test]
    fn boundary_cylinders_reached() {
        // Small version of the acceptance workload: level-1 cylinder pairs
        // are all reachable from η-random pairs.
        let m = uniform_f2();
        let source = |rng: &mut rand_chacha::ChaCha8Rng| {
            (
                BoundaryPoint::random_eta(rng, 120),
                BoundaryPoint::random_eta(rng, 120),
            )
        };
        let t_ab = |x: &BoundaryPoint, y: &BoundaryPoint| {
            x.prefix().first() == Some(&Letter::A) && y.prefix().first() == Some(&Letter::B)
        };
        let t_aa = |x: &BoundaryPoint, y: &BoundaryPoint| {
            x.prefix().first() == Some(&Letter::AInv) && y.prefix().first() == Some(&Letter::AInv)
        };
        let report = de_reachability(
            &m,
            |g: &FreeWord, x: &BoundaryPoint, y: &BoundaryPoint| {
                Ok((boundary_act(g, x)?, boundary_act(g, y)?))
            },
            source,
            rng::stream(3, "de-boundary", 0),
            &[&t_ab, &t_aa],
            100,
            100,
            3,
        );
        for (t, f) in report.frequencies.iter().enumerate() {
            assert!(*f > 0.0, "target {t} never reached");
        }
    }
}
