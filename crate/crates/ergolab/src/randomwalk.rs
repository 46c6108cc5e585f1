//! The m-random walk ηₙ = ξ₁ξ₂⋯ξₙ, exact convolution powers m⁽ʲ⁾, Cesàro
//! averages mₙ = (1/n)(m + m⁽²⁾ + ⋯ + m⁽ⁿ⁾), and conditional-measure
//! estimation by pushing a measure along one sampled walk.

use crate::error::Result;
use crate::measures::{total_variation, EmpiricalMeasure, StepDistribution};
use crate::systems::Group;
use crate::Rat;
use num::{One, ToPrimitive, Zero};
use std::collections::HashMap;

/// One sampled trajectory of the walk: i.i.d. steps and their left partial
/// products η_k = ξ₁⋯ξ_k, reproducible from (m, n, seed).
#[derive(Debug, Clone)]
pub struct WalkPath<G> {
    steps: Vec<G>,
    partials: Vec<G>,
    seed: u64,
}

impl<G: Group> WalkPath<G> {
    pub fn steps(&self) -> &[G] {
        &self.steps
    }

    /// η_1 … η_n (η_0 = identity is implicit).
    pub fn partials(&self) -> &[G] {
        &self.partials
    }

    /// η_k, with η_0 = identity.
    pub fn position(&self, k: usize) -> G {
        if k == 0 {
            G::identity()
        } else {
            self.partials[k - 1].clone()
        }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }
}

/// Samples the walk to time n. Deterministic given the seed; partial products
/// accumulate by right multiplication: η_k = η_{k−1}·ξ_k.
pub fn sample_walk<G: Group>(m: &StepDistribution<G>, n: usize, seed: u64) -> WalkPath<G> {
    let mut rng = crate::rng::from_seed(seed);
    let mut steps = Vec::with_capacity(n);
    let mut partials = Vec::with_capacity(n);
    let mut eta = G::identity();
    for _ in 0..n {
        let xi = m.sample(&mut rng).clone();
        eta = eta.op(&xi);
        steps.push(xi);
        partials.push(eta.clone());
    }
    WalkPath {
        steps,
        partials,
        seed,
    }
}

/// An exactly accounted finitely supported measure: the retained atoms of a
/// convolution power or Cesàro average, plus the exact mass discarded by the
/// support cap. Retained weights + truncation_mass = 1 exactly.
#[derive(Debug, Clone)]
pub struct ConvolutionTable<G> {
    atoms: Vec<(G, Rat)>,
    order: usize,
    truncation_mass: Rat,
}

impl<G: Group> ConvolutionTable<G> {
    pub fn atoms(&self) -> &[(G, Rat)] {
        &self.atoms
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn truncation_mass(&self) -> &Rat {
        &self.truncation_mass
    }

    pub fn retained_mass(&self) -> Rat {
        self.atoms.iter().map(|(_, w)| w).sum()
    }

    pub fn weight(&self, g: &G) -> Rat {
        self.atoms
            .iter()
            .find(|(h, _)| h == g)
            .map(|(_, w)| w.clone())
            .unwrap_or_else(Rat::zero)
    }

    /// JSON form with weights as exact fraction strings.
    pub fn to_json(&self, show: impl Fn(&G) -> String) -> serde_json::Value {
        serde_json::json!({
            "order": self.order,
            "truncation_mass": self.truncation_mass.to_string(),
            "atoms": self.atoms.iter().map(|(g, w)| {
                serde_json::json!({ "element": show(g), "weight": w.to_string() })
            }).collect::<Vec<_>>(),
        })
    }

    fn from_map(map: HashMap<G, Rat>, order: usize, cap: usize) -> ConvolutionTable<G> {
        let mut atoms: Vec<(G, Rat)> = map.into_iter().collect();
        // Heaviest first; lexicographic tie-break on the canonical element
        // encoding keeps truncation deterministic.
        atoms.sort_by(|(g1, w1), (g2, w2)| w2.cmp(w1).then_with(|| g1.cmp(g2)));
        let mut truncation = Rat::zero();
        if atoms.len() > cap {
            for (_, w) in atoms.drain(cap..) {
                truncation += w;
            }
        }
        ConvolutionTable {
            atoms,
            order,
            truncation_mass: truncation,
        }
    }
}

/// Exact j-fold left convolution power of m, keeping at most `support_cap`
/// heaviest atoms. Mass lost to the cap is recorded, never raised.
pub fn convolve_power<G: Group>(
    m: &StepDistribution<G>,
    j: usize,
    support_cap: usize,
) -> ConvolutionTable<G> {
    assert!(j >= 1, "convolution order must be at least 1");
    let mut table: HashMap<G, Rat> = m
        .atoms()
        .iter()
        .map(|(g, w)| (g.clone(), w.clone()))
        .collect();
    let mut out = ConvolutionTable::from_map(table, 1, support_cap);
    for order in 2..=j {
        table = HashMap::with_capacity(out.atoms.len() * m.atoms().len());
        for (g, wg) in &out.atoms {
            for (h, wh) in m.atoms() {
                let gh = g.op(h);
                *table.entry(gh).or_insert_with(Rat::zero) += wg * wh;
            }
        }
        let prior_truncation = out.truncation_mass.clone();
        out = ConvolutionTable::from_map(table, order, support_cap);
        out.truncation_mass += prior_truncation;
        // Products of retained-mass deficits are already inside the sum:
        // retained + truncation stays exactly 1 because each step's map total
        // equals the previous retained mass.
        out.truncation_mass = Rat::one() - out.retained_mass();
    }
    out
}

/// Exact Cesàro average mₙ = (1/n) Σ_{j=1..n} m⁽ʲ⁾ with weighted truncation
/// accounting.
pub fn cesaro_average<G: Group>(
    m: &StepDistribution<G>,
    n: usize,
    support_cap: usize,
) -> ConvolutionTable<G> {
    assert!(n >= 1);
    let inv_n = Rat::new(1.into(), (n as i64).into());
    let mut acc: HashMap<G, Rat> = HashMap::new();
    let mut truncation = Rat::zero();
    let mut power: Option<ConvolutionTable<G>> = None;
    for j in 1..=n {
        let next = match power.take() {
            None => convolve_power(m, 1, support_cap),
            Some(prev) => {
                let mut table: HashMap<G, Rat> =
                    HashMap::with_capacity(prev.atoms.len() * m.atoms().len());
                for (g, wg) in &prev.atoms {
                    for (h, wh) in m.atoms() {
                        *table.entry(g.op(h)).or_insert_with(Rat::zero) += wg * wh;
                    }
                }
                let mut t = ConvolutionTable::from_map(table, j, support_cap);
                t.truncation_mass = Rat::one() - t.retained_mass();
                t
            }
        };
        for (g, w) in &next.atoms {
            *acc.entry(g.clone()).or_insert_with(Rat::zero) += &inv_n * w;
        }
        truncation += &inv_n * &next.truncation_mass;
        power = Some(next);
    }
    let mut out = ConvolutionTable::from_map(acc, n, support_cap);
    out.truncation_mass += truncation;
    out.truncation_mass = Rat::one() - out.retained_mass();
    out
}

/// One sample of the conditional measure: pushes μ forward under η_n for a
/// single walk ω drawn from the given seed. Repeated calls with fresh seeds
/// sample fresh ω.
pub fn conditional_measure_estimate<G: Group, P: Clone>(
    m: &StepDistribution<G>,
    mu: &EmpiricalMeasure<P>,
    action: impl Fn(&G, &P) -> Result<P>,
    n: usize,
    seed: u64,
) -> Result<EmpiricalMeasure<P>> {
    let walk = sample_walk(m, n, seed);
    let eta = walk.position(n);
    mu.pushforward(|p| action(&eta, p))
}

/// Distance between μ and m∗μ = Σ_g m(g)·(g·μ), as exact total variation of
/// the keyed mass tables. The key canonicalizes atoms to a common resolution
/// (e.g. a cylinder prefix shorter than the depth loss of the action); the
/// defect is 0 iff μ is stationary at that resolution.
pub fn stationarity_defect<G: Group, P: Clone, K: Ord + Clone>(
    m: &StepDistribution<G>,
    mu: &EmpiricalMeasure<P>,
    action: impl Fn(&G, &P) -> Result<P>,
    key: impl Fn(&P) -> K,
) -> Result<Rat> {
    let mut convolved = Vec::with_capacity(m.atoms().len());
    for (g, w) in m.atoms() {
        convolved.push((w.clone(), mu.pushforward(|p| action(g, p))?));
    }
    let nu = EmpiricalMeasure::mixture(convolved)?;
    Ok(total_variation(&mu.group_by(&key), &nu.group_by(&key)))
}

/// f64 convolution tables for statistical testers that need large n: same
/// recursion as [`convolve_power`] with floating weights and heaviest-atom
/// truncation. Retained mass is tracked; 1 − retained is the uncertainty band.
#[derive(Debug, Clone)]
pub struct ConvolutionTableF64<G> {
    pub atoms: Vec<(G, f64)>,
    pub order: usize,
}

impl<G: Group> ConvolutionTableF64<G> {
    pub fn retained_mass(&self) -> f64 {
        self.atoms.iter().map(|(_, w)| w).sum()
    }
}

pub fn convolve_step_f64<G: Group>(
    prev: &ConvolutionTableF64<G>,
    m: &StepDistribution<G>,
    support_cap: usize,
) -> ConvolutionTableF64<G> {
    let weights: Vec<(G, f64)> = m
        .atoms()
        .iter()
        .map(|(g, w)| (g.clone(), w.to_f64().unwrap()))
        .collect();
    let mut map: HashMap<G, f64> = HashMap::with_capacity(prev.atoms.len() * weights.len());
    for (g, wg) in &prev.atoms {
        for (h, wh) in &weights {
            *map.entry(g.op(h)).or_insert(0.0) += wg * wh;
        }
    }
    let mut atoms: Vec<(G, f64)> = map.into_iter().collect();
    atoms.sort_by(|(g1, w1), (g2, w2)| w2.total_cmp(w1).then_with(|| g1.cmp(g2)));
    atoms.truncate(support_cap);
    ConvolutionTableF64 {
        atoms,
        order: prev.order + 1,
    }
}

pub fn table_f64_from_step<G: Group>(m: &StepDistribution<G>) -> ConvolutionTableF64<G> {
    ConvolutionTableF64 {
        atoms: m
            .atoms()
            .iter()
            .map(|(g, w)| (g.clone(), w.to_f64().unwrap()))
            .collect(),
        order: 1,
    }
}
