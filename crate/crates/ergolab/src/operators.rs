//! The Markov convolution operator 𝔸f(x) = Σ_g m(g)·f(gx) on grid functions,
//! Cesàro averages 𝔸ₙf = (1/n) Σ_{j≤n} 𝔸ʲf, and the oscillation-decay test
//! for unique ergodicity: if there is a unique m-stationary measure, 𝔸ₙf
//! converges uniformly to a constant for every continuous f, so oscillation
//! decay over a spanning family is one-sided numerical evidence (never a
//! proof) of unique ergodicity.
//!
//! Functions live on a uniform angle grid of ℙ¹ with periodic linear
//! interpolation; interpolated values are convex combinations of grid values,
//! so the Markov contraction osc(𝔸f) ≤ osc(f) survives discretization.

use crate::error::Result;
use crate::measures::{EmpiricalMeasure, StepDistribution};
use crate::randomwalk::{cesaro_average, sample_walk, stationarity_defect};
use crate::systems::{Group, ProjectivePoint};
use crate::Rat;
use num::ToPrimitive;
use serde::Serialize;
use std::f64::consts::PI;

/// Uniform grid θ_i = i·π/n on ℙ¹.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AngleGrid {
    pub points: usize,
}

impl AngleGrid {
    pub fn theta(self, i: usize) -> f64 {
        PI * i as f64 / self.points as f64
    }

    pub fn thetas(self) -> impl Iterator<Item = f64> {
        let n = self.points;
        (0..n).map(move |i| PI * i as f64 / n as f64)
    }
}

/// A test function sampled on an angle grid, with periodic linear
/// interpolation between grid points.
#[derive(Debug, Clone)]
pub struct GridFunction {
    pub grid: AngleGrid,
    pub values: Vec<f64>,
}

impl GridFunction {
    pub fn sample(grid: AngleGrid, f: impl Fn(f64) -> f64) -> GridFunction {
        GridFunction {
            grid,
            values: grid.thetas().map(f).collect(),
        }
    }

    pub fn constant(grid: AngleGrid, c: f64) -> GridFunction {
        GridFunction {
            grid,
            values: vec![c; grid.points],
        }
    }

    /// Interpolation weights for an off-grid angle: (left index, left weight).
    fn locate(&self, theta: f64) -> (usize, f64) {
        let n = self.grid.points;
        let x = theta.rem_euclid(PI) / PI * n as f64;
        let i = (x.floor() as usize).min(n - 1);
        (i, 1.0 - (x - i as f64))
    }

    pub fn eval(&self, theta: f64) -> f64 {
        let n = self.grid.points;
        let (i, wl) = self.locate(theta);
        self.values[i] * wl + self.values[(i + 1) % n] * (1.0 - wl)
    }

    /// Oscillation max − min.
    pub fn osc(&self) -> f64 {
        let max = self.values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let min = self.values.iter().cloned().fold(f64::INFINITY, f64::min);
        max - min
    }

    pub fn min(&self) -> f64 {
        self.values.iter().cloned().fold(f64::INFINITY, f64::min)
    }
}

/// Precomputed Markov operator for one (m, action, grid) triple: for each
/// support element and grid point, the image angle's interpolation stencil.
pub struct MarkovOperator {
    grid: AngleGrid,
    // For each grid point: list of (index, combined weight) pairs.
    stencil: Vec<Vec<(usize, f64)>>,
}

impl MarkovOperator {
    pub fn build<G>(
        m: &StepDistribution<G>,
        grid: AngleGrid,
        action: impl Fn(&G, ProjectivePoint) -> ProjectivePoint,
    ) -> MarkovOperator
    where
        G: Group,
    {
        let n = grid.points;
        let mut stencil: Vec<Vec<(usize, f64)>> = vec![Vec::new(); n];
        for (g, w) in m.atoms() {
            let wf = w.to_f64().unwrap();
            for i in 0..n {
                let img = action(g, ProjectivePoint::new(grid.theta(i)));
                let x = img.theta() / PI * n as f64;
                let j = (x.floor() as usize).min(n - 1);
                let wl = 1.0 - (x - j as f64);
                stencil[i].push((j, wf * wl));
                stencil[i].push(((j + 1) % n, wf * (1.0 - wl)));
            }
        }
        MarkovOperator { grid, stencil }
    }

    /// One application of 𝔸. Positivity and unitality hold by construction
    /// (stencil weights are nonnegative and sum to 1 per row); the Markov
    /// contraction osc(𝔸f) ≤ osc(f) is asserted on every application.
    pub fn apply(&self, f: &GridFunction) -> GridFunction {
        assert_eq!(f.grid, self.grid, "grid mismatch");
        let values: Vec<f64> = self
            .stencil
            .iter()
            .map(|row| row.iter().map(|&(j, w)| w * f.values[j]).sum())
            .collect();
        let out = GridFunction {
            grid: self.grid,
            values,
        };
        debug_assert!(
            out.osc() <= f.osc() * (1.0 + 1e-12) + 1e-12,
            "Markov contraction violated: {} > {}",
            out.osc(),
            f.osc()
        );
        out
    }
}

/// (𝔸f)(x) = Σ_g m(g) f(gx): one-shot convenience over [`MarkovOperator`].
pub fn markov_apply<G: Group>(
    m: &StepDistribution<G>,
    f: &GridFunction,
    action: impl Fn(&G, ProjectivePoint) -> ProjectivePoint,
) -> GridFunction {
    MarkovOperator::build(m, f.grid, action).apply(f)
}

/// 𝔸ₙf = (1/n) Σ_{j=1..n} 𝔸ʲf by iterated application. The semigroup
/// identity 𝔸ʲ ↔ m⁽ʲ⁾ is pinned against the convolution-table route in the
/// tests.
pub fn cesaro_apply<G: Group>(
    m: &StepDistribution<G>,
    f: &GridFunction,
    action: impl Fn(&G, ProjectivePoint) -> ProjectivePoint,
    n: usize,
) -> GridFunction {
    assert!(n >= 1);
    let op = MarkovOperator::build(m, f.grid, action);
    let mut power = f.clone();
    let mut sum = vec![0.0; f.grid.points];
    for _ in 1..=n {
        power = op.apply(&power);
        for (s, v) in sum.iter_mut().zip(&power.values) {
            *s += v;
        }
    }
    GridFunction {
        grid: f.grid,
        values: sum.into_iter().map(|s| s / n as f64).collect(),
    }
}

/// Decay curve of one test function.
#[derive(Debug, Clone, Serialize)]
pub struct FunctionDecay {
    pub function_id: String,
    /// osc(𝔸ₙf) for n = 1..=n_max, no gaps.
    pub oscillations: Vec<f64>,
}

/// Oscillation-decay report for a family of test functions.
#[derive(Debug, Clone, Serialize)]
pub struct DecayReport {
    pub n_max: usize,
    pub tolerance: f64,
    pub curves: Vec<FunctionDecay>,
    /// Per-step contraction osc(𝔸ʲ⁺¹f) ≤ osc(𝔸ʲf) held throughout.
    pub contraction_held: bool,
    /// True iff every final oscillation fell below the tolerance: evidence
    /// consistent with unique ergodicity, never a proof.
    pub consistent_with_unique_ergodicity: bool,
}

impl DecayReport {
    /// CSV rows (n, function id, oscillation).
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,function_id,oscillation\r\n");
        for curve in &self.curves {
            for (i, osc) in curve.oscillations.iter().enumerate() {
                out.push_str(&format!("{},{},{}\r\n", i + 1, curve.function_id, osc));
            }
        }
        out
    }
}

/// Runs the Theorem-style decay test: records osc(𝔸ₙf) for each f over
/// n ≤ n_max and verdicts "consistent with unique ergodicity" iff all final
/// oscillations fall below `tol`.
pub fn unique_ergodicity_test<G: Group>(
    m: &StepDistribution<G>,
    action: impl Fn(&G, ProjectivePoint) -> ProjectivePoint,
    test_functions: &[(String, GridFunction)],
    n_max: usize,
    tol: f64,
) -> DecayReport {
    let mut curves = Vec::with_capacity(test_functions.len());
    let mut contraction_held = true;
    for (id, f) in test_functions {
        let op = MarkovOperator::build(m, f.grid, &action);
        let mut power = f.clone();
        let mut sum = vec![0.0; f.grid.points];
        let mut oscillations = Vec::with_capacity(n_max);
        let mut prev_osc = f.osc();
        for n in 1..=n_max {
            power = op.apply(&power);
            if power.osc() > prev_osc * (1.0 + 1e-12) + 1e-12 {
                contraction_held = false;
            }
            prev_osc = power.osc();
            for (s, v) in sum.iter_mut().zip(&power.values) {
                *s += v;
            }
            let avg = GridFunction {
                grid: f.grid,
                values: sum.iter().map(|s| s / n as f64).collect(),
            };
            oscillations.push(avg.osc());
        }
        curves.push(FunctionDecay {
            function_id: id.clone(),
            oscillations,
        });
    }
    let consistent = curves
        .iter()
        .all(|c| *c.oscillations.last().unwrap() < tol);
    DecayReport {
        n_max,
        tolerance: tol,
        curves,
        contraction_held,
        consistent_with_unique_ergodicity: consistent,
    }
}

/// Trigonometric test family on ℙ¹: cos(2kθ), sin(2kθ) for k = 1..=degree
/// (π-periodic, linearly spanning the trigonometric polynomials).
pub fn trig_family(grid: AngleGrid, degree: usize) -> Vec<(String, GridFunction)> {
    let mut fns = Vec::new();
    for k in 1..=degree {
        fns.push((
            format!("cos{}theta", 2 * k),
            GridFunction::sample(grid, |t| (2.0 * k as f64 * t).cos()),
        ));
        fns.push((
            format!("sin{}theta", 2 * k),
            GridFunction::sample(grid, |t| (2.0 * k as f64 * t).sin()),
        ));
    }
    fns
}

/// Exact Cesàro fixed-point iteration: returns mₙ∗θ₀ = Σ_g mₙ(g)·(g·θ₀)
/// through the exact convolution tables. Valid as an exact computation only
/// while the table truncation mass is zero (small n or small support).
pub fn stationary_iterate_exact<G: Group, P: Clone, K: Ord + Clone>(
    m: &StepDistribution<G>,
    action: impl Fn(&G, &P) -> Result<P>,
    theta0: &EmpiricalMeasure<P>,
    iters: usize,
    support_cap: usize,
    key: impl Fn(&P) -> K,
) -> Result<(EmpiricalMeasure<P>, Rat)> {
    let table = cesaro_average(m, iters, support_cap);
    let mut parts = Vec::with_capacity(table.atoms().len());
    for (g, w) in table.atoms() {
        parts.push((w.clone(), theta0.pushforward(|p| action(g, p))?));
    }
    // Renormalize if the cap truncated mass.
    let retained = table.retained_mass();
    let parts = parts
        .into_iter()
        .map(|(w, mu)| (w / &retained, mu))
        .collect();
    let out = EmpiricalMeasure::mixture(parts)?;
    let defect = stationarity_defect(m, &out, &action, &key)?;
    Ok((out, defect))
}

/// Sampled Cesàro fixed-point iteration for large n: averages the
/// pushforwards of θ₀ under the partial products η₁…η_iters of `walks`
/// independent walks (η_j is distributed as m⁽ʲ⁾).
pub fn stationary_iterate_sampled<G: Group, P: Clone>(
    m: &StepDistribution<G>,
    action: impl Fn(&G, &P) -> Result<P>,
    theta0: &EmpiricalMeasure<P>,
    iters: usize,
    walks: usize,
    seed: u64,
) -> Result<EmpiricalMeasure<P>> {
    assert!(iters >= 1 && walks >= 1);
    let share = Rat::new(1.into(), ((iters * walks) as i64).into());
    let mut parts = Vec::with_capacity(iters * walks);
    for r in 0..walks {
        let walk = sample_walk(m, iters, crate::rng::derive_seed(seed, "stationary", r as u64));
        for j in 1..=iters {
            let eta = walk.position(j);
            parts.push((share.clone(), theta0.pushforward(|p| action(&eta, p))?));
        }
    }
    EmpiricalMeasure::mixture(parts)
}
