//! The lazy symmetric lattice walk: hold with probability `hold_prob`, else
//! step to a uniform neighbor. Recurrent in dimension 2, transient in
//! dimension 4 (the cartesian square), and the contrast shows up in the
//! growth of the mean return count with the horizon.
//!
//! Return convention, pinned: a return is any time t ≥ 1 with position 0 —
//! holding at the origin counts every step, and leaving first is not
//! required. The convention is recorded in the profile.

use rayon::prelude::*;
use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct RecurrenceProfile {
    pub dimension: usize,
    pub walk_length: usize,
    pub trials: usize,
    pub hold_prob: f64,
    pub seed: u64,
    pub convention: String,
    /// Return counts to the origin per trial, at the full horizon.
    pub returns: Vec<u64>,
    /// Horizons at which the running mean is recorded: every power of 10 up
    /// to the walk length, plus the walk length itself.
    pub checkpoint_times: Vec<usize>,
    /// Mean return count over the trials at each checkpoint.
    pub checkpoint_means: Vec<f64>,
}

impl RecurrenceProfile {
    pub fn mean_returns(&self) -> f64 {
        self.returns.iter().sum::<u64>() as f64 / self.trials as f64
    }
}

fn checkpoints(walk_length: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut t = 10;
    while t < walk_length {
        out.push(t);
        t *= 10;
    }
    out.push(walk_length);
    out
}

/// Simulates `trials` independent lazy walks of `walk_length` steps on ℤ^d
/// and counts returns under the pinned convention. Trials run in parallel
/// but the per-trial stream is derived from (seed, trial), so the profile is
/// deterministic regardless of thread schedule.
pub fn recurrence_profile(
    d: usize,
    walk_length: usize,
    trials: usize,
    hold_prob: f64,
    seed: u64,
) -> RecurrenceProfile {
    assert!(d >= 1 && trials > 0);
    assert!((0.0..=1.0).contains(&hold_prob), "hold_prob in [0,1]");
    let times = checkpoints(walk_length);

    let per_trial: Vec<(u64, Vec<u64>)> = (0..trials)
        .into_par_iter()
        .map(|trial| {
            use rand::Rng;
            let mut rng = crate::rng::stream(seed, "recurrence", trial as u64);
            let mut pos = vec![0i64; d];
            let mut away = 0usize; // coordinates with pos != 0
            let mut count = 0u64;
            let mut at_checkpoints = Vec::with_capacity(times.len());
            let mut next_cp = 0;
            for t in 1..=walk_length {
                if rng.gen::<f64>() >= hold_prob {
                    let dir = rng.gen_range(0..2 * d);
                    let axis = dir / 2;
                    let delta = if dir % 2 == 0 { 1 } else { -1 };
                    let before = pos[axis];
                    pos[axis] += delta;
                    if before == 0 {
                        away += 1;
                    } else if pos[axis] == 0 {
                        away -= 1;
                    }
                }
                if away == 0 {
                    count += 1;
                }
                if next_cp < times.len() && t == times[next_cp] {
                    at_checkpoints.push(count);
                    next_cp += 1;
                }
            }
            (count, at_checkpoints)
        })
        .collect();

    let returns: Vec<u64> = per_trial.iter().map(|(c, _)| *c).collect();
    let checkpoint_means = (0..times.len())
        .map(|i| per_trial.iter().map(|(_, cps)| cps[i]).sum::<u64>() as f64 / trials as f64)
        .collect();
    RecurrenceProfile {
        dimension: d,
        walk_length,
        trials,
        hold_prob,
        seed,
        convention: "return = any time t >= 1 at the origin, holds included".into(),
        returns,
        checkpoint_times: times,
        checkpoint_means,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_hold_prob_is_plain_symmetric_walk() {
        let p = recurrence_profile(2, 100, 10, 0.0, 1);
        assert_eq!(p.returns.len(), 10);
    }

    #[test]
    fn never_moving_walk_returns_every_step() {
        // Under the pinned convention a walk that never leaves the origin
        // scores a return at every t >= 1.
        let p = recurrence_profile(1, 1000, 5, 1.0, 7);
        for &r in &p.returns {
            assert_eq!(r, 1000);
        }
    }

    #[test]
    fn deterministic_given_seed() {
        let a = recurrence_profile(2, 2000, 8, 0.25, 42);
        let b = recurrence_profile(2, 2000, 8, 0.25, 42);
        assert_eq!(a.returns, b.returns);
        assert_eq!(a.checkpoint_means, b.checkpoint_means);
    }

    #[test]
    fn checkpoints_cover_powers_of_ten() {
        let p = recurrence_profile(2, 100_000, 2, 0.25, 1);
        assert_eq!(p.checkpoint_times, vec![10, 100, 1000, 10_000, 100_000]);
        // Running means are nondecreasing in the horizon by construction.
        for w in p.checkpoint_means.windows(2) {
            assert!(w[0] <= w[1]);
        }
    }

    #[test]
    fn planar_walk_returns_more_than_z4() {
        let p2 = recurrence_profile(2, 20_000, 100, 0.25, 5);
        let p4 = recurrence_profile(4, 20_000, 100, 0.25, 5);
        assert!(p2.mean_returns() > 2.0 * p4.mean_returns());
    }
}
