//! F_m-proximality evidence: for each n, the mₙ-mass of group elements g
//! whose pushforward gθ is still far from every point mass. The distance to
//! the nearest point mass is d(ν, δ_X) := inf over atoms c of the ν-mass
//! outside the closed ε-ball at c, i.e. 1 − concentration_score(ν, ε); an
//! element g exceeds when that distance is > ε. A decreasing exceedance
//! trend is evidence of F_m-proximality — with a two-atom θ this is exactly
//! the pair criterion mₙ{g : d(gx, gy) > ε} → 0.
//!
//! Cesàro tables are kept in f64 with a support cap (the exact tables are
//! infeasible at interesting n); the truncated mass per n is reported as an
//! uncertainty band on the exceedance.

use crate::error::Result;
use crate::measures::{EmpiricalMeasure, StepDistribution};
use crate::randomwalk::{convolve_step_f64, sample_walk, table_f64_from_step};
use crate::rng::derive_seed;
use crate::systems::Group;
use serde::Serialize;
use std::collections::HashMap;

#[derive(Debug, Clone, Serialize)]
pub struct ProximalityReport {
    pub eps: f64,
    pub n_max: usize,
    /// Exceedance mass at n = 1..=n_max, computed over the retained support.
    pub exceedance: Vec<f64>,
    /// Mass lost to table truncation at each n — the exceedance may be off
    /// by at most this much in either direction.
    pub truncation: Vec<f64>,
}

impl ProximalityReport {
    /// Evidence criterion: final exceedance plus its uncertainty band below
    /// the threshold.
    pub fn final_exceedance_below(&self, threshold: f64) -> bool {
        let last = self.exceedance.last().copied().unwrap_or(0.0);
        let band = self.truncation.last().copied().unwrap_or(0.0);
        last + band < threshold
    }
}

/// Runs the per-n exceedance computation. The exceed predicate is cached per
/// group element across all n (an element's pushforward does not depend on
/// n), so the cost is one pushforward per distinct retained element.
pub fn proximality_test<G: Group, P: Clone>(
    m: &StepDistribution<G>,
    action: impl Fn(&G, &P) -> Result<P>,
    theta: &EmpiricalMeasure<P>,
    metric: impl Fn(&P, &P) -> f64,
    eps: f64,
    n_max: usize,
    support_cap: usize,
) -> Result<ProximalityReport> {
    assert!(n_max >= 1 && eps > 0.0);
    let mut exceed_cache: HashMap<G, bool> = HashMap::new();
    let mut exceeds = |g: &G| -> Result<bool> {
        if let Some(&e) = exceed_cache.get(g) {
            return Ok(e);
        }
        let image = theta.pushforward(|p| action(g, p))?;
        let distance = 1.0 - image.concentration_score(&metric, eps);
        let e = distance > eps;
        exceed_cache.insert(g.clone(), e);
        Ok(e)
    };

    let mut power = table_f64_from_step(m);
    // Running sum Σ_{j≤n} m⁽ʲ⁾(g) over retained atoms.
    let mut cesaro: HashMap<G, f64> = HashMap::new();
    let mut cesaro_retained = 0.0;
    let mut exceedance = Vec::with_capacity(n_max);
    let mut truncation = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        for (g, w) in &power.atoms {
            *cesaro.entry(g.clone()).or_insert(0.0) += w;
        }
        cesaro_retained += power.retained_mass();
        let mut mass = 0.0;
        for (g, w) in &cesaro {
            if exceeds(g)? {
                mass += w;
            }
        }
        exceedance.push(mass / n as f64);
        truncation.push(1.0 - cesaro_retained / n as f64);
        if n < n_max {
            power = convolve_step_f64(&power, m, support_cap);
        }
    }
    Ok(ProximalityReport {
        eps,
        n_max,
        exceedance,
        truncation,
    })
}

/// Monte-Carlo estimate of the same exceedance curve, for n beyond exact
/// table reach (the support of m⁽ⁿ⁾ grows exponentially). Each trial is one
/// sampled walk; exceedance[n] is the mean over trials of the per-trial
/// Cesàro indicator average (1/n)·#{k ≤ n : position at k exceeds}, and the
/// `truncation` slot carries a 3σ standard-error band for that mean instead
/// of a truncated-mass bound.
pub fn proximality_sampled<G: Group, P: Clone>(
    m: &StepDistribution<G>,
    action: impl Fn(&G, &P) -> Result<P>,
    theta: &EmpiricalMeasure<P>,
    metric: impl Fn(&P, &P) -> f64,
    eps: f64,
    n_max: usize,
    trials: usize,
    seed: u64,
) -> Result<ProximalityReport> {
    assert!(n_max >= 1 && trials >= 2 && eps > 0.0);
    let mut exceed_cache: HashMap<G, bool> = HashMap::new();
    let mut flags = vec![vec![false; n_max]; trials];
    for (trial, row) in flags.iter_mut().enumerate() {
        let walk = sample_walk(m, n_max, derive_seed(seed, "prox", trial as u64));
        for (k, flag) in row.iter_mut().enumerate() {
            let g = walk.position(k + 1);
            *flag = match exceed_cache.get(&g) {
                Some(&e) => e,
                None => {
                    let image = theta.pushforward(|p| action(&g, p))?;
                    let e = 1.0 - image.concentration_score(&metric, eps) > eps;
                    exceed_cache.insert(g, e);
                    e
                }
            };
        }
    }

    let mut exceedance = Vec::with_capacity(n_max);
    let mut band = Vec::with_capacity(n_max);
    let mut counts = vec![0usize; trials];
    for n in 1..=n_max {
        for (t, row) in flags.iter().enumerate() {
            counts[t] += row[n - 1] as usize;
        }
        let cesaros: Vec<f64> = counts.iter().map(|&c| c as f64 / n as f64).collect();
        let mean = cesaros.iter().sum::<f64>() / trials as f64;
        let var = cesaros.iter().map(|c| (c - mean).powi(2)).sum::<f64>() / (trials - 1) as f64;
        exceedance.push(mean);
        band.push(3.0 * (var / trials as f64).sqrt());
    }
    Ok(ProximalityReport {
        eps,
        n_max,
        exceedance,
        truncation: band,
    })
}
