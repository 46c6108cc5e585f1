//! Exact cylinder/product measures, the Cauchy reference measure on ℝ,
//! finitely supported step distributions on groups, and empirical measures.
//!
//! Exactness policy: cylinder masses and step-distribution weights are exact
//! rationals and all normalization sums are exactly 1; only metric
//! computations (concentration scores, arc distances) go through `f64`.

use crate::error::{Error, Result};
use crate::systems::free::{check_reduced, Letter};
use crate::systems::odometer::OdometerPoint;
use crate::systems::{BoundaryPoint, Group, ProjectivePoint};
use crate::{rat, Rat};
use num::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use serde::Serialize;
use std::collections::BTreeMap;

/// Boundary cylinder measure η(C(ε₁,…,εₙ)) = 1 / (4·3ⁿ⁻¹).
///
/// The empty prefix denotes the whole space (mass 1). Errors with
/// `NotReduced` if the prefix contains a cancellation.
pub fn eta_cylinder(prefix: &[Letter]) -> Result<Rat> {
    check_reduced(prefix)?;
    let n = prefix.len();
    if n == 0 {
        return Ok(Rat::one());
    }
    let denom = rat(4, 1) * Rat::from(num::BigInt::from(3).pow(n as u32 - 1));
    Ok(denom.recip())
}

/// Bernoulli product cylinder mass: p per 0-bit, (1−p) per 1-bit.
pub fn mu_p_cylinder(pattern: &[u8], p: &Rat) -> Result<Rat> {
    check_probability(p)?;
    let one_minus = Rat::one() - p;
    let mut mass = Rat::one();
    for &b in pattern {
        mass *= if b == 0 { p } else { &one_minus };
    }
    Ok(mass)
}

/// Radon–Nikodym derivative dμ_p∘T / dμ_p of the adding machine at ω.
///
/// T flips the leading run of k ones to zeros and the following zero to one,
/// so the image cylinder (0,…,0,1) has mass pᵏ(1−p) against the source
/// cylinder (1,…,1,0) of mass (1−p)ᵏp; the ratio is (p/(1−p))^(k−1). The
/// closed form is pinned against the cylinder-mass quotient in the tests.
pub fn rn_derivative_odometer(omega: &OdometerPoint, p: &Rat) -> Result<Rat> {
    check_probability(p)?;
    if omega.is_all_ones() {
        return Err(Error::Overflow {
            depth: omega.depth(),
        });
    }
    let k = omega.carry_run() as i32;
    let ratio = p / (Rat::one() - p);
    Ok(pow_rat(&ratio, k - 1))
}

fn pow_rat(r: &Rat, e: i32) -> Rat {
    if e >= 0 {
        num::pow::pow(r.clone(), e as usize)
    } else {
        num::pow::pow(r.recip(), (-e) as usize)
    }
}

fn check_probability(p: &Rat) -> Result<()> {
    if p <= &Rat::zero() || p >= &Rat::one() {
        return Err(Error::InvalidParameter {
            reason: format!("p must lie in (0,1), got {p}"),
        });
    }
    Ok(())
}

/// A finite union of open intervals of ℝ, normalized to sorted disjoint form.
/// Unbounded endpoints are allowed.
#[derive(Debug, Clone, Serialize)]
pub struct IntervalUnion {
    intervals: Vec<(f64, f64)>,
}

impl IntervalUnion {
    pub fn empty() -> IntervalUnion {
        IntervalUnion { intervals: vec![] }
    }

    pub fn new(mut intervals: Vec<(f64, f64)>) -> IntervalUnion {
        intervals.retain(|&(a, b)| a < b);
        intervals.sort_by(|x, y| x.0.total_cmp(&y.0));
        let mut merged: Vec<(f64, f64)> = Vec::new();
        for (a, b) in intervals {
            match merged.last_mut() {
                Some(last) if a <= last.1 => last.1 = last.1.max(b),
                _ => merged.push((a, b)),
            }
        }
        IntervalUnion { intervals: merged }
    }

    pub fn intervals(&self) -> &[(f64, f64)] {
        &self.intervals
    }

    /// Image under an order-preserving affine map x ↦ s·x + q.
    pub fn map_affine(&self, s: f64, q: f64) -> IntervalUnion {
        IntervalUnion::new(
            self.intervals
                .iter()
                .map(|&(a, b)| (s * a + q, s * b + q))
                .collect(),
        )
    }
}

/// Absolutely continuous reference measure with closed-form CDF.
/// Standard Cauchy by default; equivalent to Lebesgue (positive density).
#[derive(Debug, Clone, Copy, Serialize)]
pub enum DensityMeasure {
    Cauchy,
}

impl DensityMeasure {
    pub fn cdf(self, x: f64) -> f64 {
        match self {
            DensityMeasure::Cauchy => {
                if x == f64::INFINITY {
                    1.0
                } else if x == f64::NEG_INFINITY {
                    0.0
                } else {
                    0.5 + x.atan() / std::f64::consts::PI
                }
            }
        }
    }

    /// Mass of a finite union of open intervals, as a sum of CDF increments.
    pub fn mass(self, a: &IntervalUnion) -> f64 {
        a.intervals()
            .iter()
            .map(|&(lo, hi)| self.cdf(hi) - self.cdf(lo))
            .sum()
    }
}

/// A finitely supported probability measure on a group, with exact weights.
#[derive(Debug, Clone)]
pub struct StepDistribution<G> {
    atoms: Vec<(G, Rat)>,
    cum: Vec<f64>,
}

impl<G: Group> StepDistribution<G> {
    pub fn new(atoms: Vec<(G, Rat)>) -> Result<StepDistribution<G>> {
        if atoms.is_empty() {
            return Err(Error::InvalidDistribution {
                reason: "empty support".into(),
            });
        }
        let mut total = Rat::zero();
        for (i, (g, w)) in atoms.iter().enumerate() {
            if !w.is_positive() {
                return Err(Error::InvalidDistribution {
                    reason: format!("weight {i} is not positive"),
                });
            }
            if atoms[..i].iter().any(|(h, _)| h == g) {
                return Err(Error::InvalidDistribution {
                    reason: format!("duplicate support element at {i}"),
                });
            }
            total += w;
        }
        if total != Rat::one() {
            return Err(Error::InvalidDistribution {
                reason: format!("weights sum to {total}, not 1"),
            });
        }
        let mut cum = Vec::with_capacity(atoms.len());
        let mut acc = 0.0;
        for (_, w) in &atoms {
            acc += w.to_f64().unwrap();
            cum.push(acc);
        }
        Ok(StepDistribution { atoms, cum })
    }

    pub fn uniform(elements: Vec<G>) -> Result<StepDistribution<G>> {
        let n = elements.len();
        let w = Rat::new(1.into(), (n as i64).into());
        StepDistribution::new(elements.into_iter().map(|g| (g, w.clone())).collect())
    }

    pub fn point_mass(g: G) -> StepDistribution<G> {
        StepDistribution::new(vec![(g, Rat::one())]).expect("point mass is a distribution")
    }

    pub fn atoms(&self) -> &[(G, Rat)] {
        &self.atoms
    }

    pub fn weight(&self, g: &G) -> Rat {
        self.atoms
            .iter()
            .find(|(h, _)| h == g)
            .map(|(_, w)| w.clone())
            .unwrap_or_else(Rat::zero)
    }

    /// Closed under inverses with matching weights.
    pub fn is_symmetric(&self) -> bool {
        self.atoms
            .iter()
            .all(|(g, w)| self.weight(&g.inverse()) == *w)
    }

    /// "Non-degeneracy at desk scale": the support generates every group
    /// element expressible as a product of at most `max_len` support factors
    /// that also appears among `targets`. A config knob, not a theorem.
    pub fn semigroup_reaches(&self, targets: &[G], max_len: usize) -> bool {
        let mut reached: std::collections::HashSet<G> = std::collections::HashSet::new();
        let mut frontier = vec![G::identity()];
        reached.insert(G::identity());
        for _ in 0..max_len {
            let mut next = Vec::new();
            for g in &frontier {
                for (h, _) in &self.atoms {
                    let gh = g.op(h);
                    if reached.insert(gh.clone()) {
                        next.push(gh);
                    }
                }
            }
            frontier = next;
        }
        targets.iter().all(|t| reached.contains(t))
    }

    pub fn sample<R: Rng>(&self, rng: &mut R) -> &G {
        let u: f64 = rng.gen();
        let idx = self
            .cum
            .iter()
            .position(|&c| u < c)
            .unwrap_or(self.atoms.len() - 1);
        &self.atoms[idx].0
    }
}

/// The driving measure m = ¼(δ_a + δ_b + δ_{a⁻¹} + δ_{b⁻¹}) on F₂.
pub fn uniform_f2() -> StepDistribution<crate::systems::FreeWord> {
    use crate::systems::FreeWord;
    StepDistribution::uniform(
        Letter::all()
            .into_iter()
            .map(FreeWord::generator)
            .collect(),
    )
    .expect("four distinct generators")
}

/// A weighted sample cloud on a space, with exactly normalized weights.
#[derive(Debug, Clone)]
pub struct EmpiricalMeasure<P> {
    atoms: Vec<(P, Rat)>,
}

impl<P: Clone> EmpiricalMeasure<P> {
    pub fn new(atoms: Vec<(P, Rat)>) -> Result<EmpiricalMeasure<P>> {
        let mut total = Rat::zero();
        for (_, w) in &atoms {
            if !w.is_positive() {
                return Err(Error::InvalidDistribution {
                    reason: "empirical weight is not positive".into(),
                });
            }
            total += w;
        }
        if total != Rat::one() {
            return Err(Error::InvalidDistribution {
                reason: format!("empirical weights sum to {total}, not 1"),
            });
        }
        Ok(EmpiricalMeasure { atoms })
    }

    pub fn uniform(points: Vec<P>) -> EmpiricalMeasure<P> {
        let n = points.len() as i64;
        let w = Rat::new(1.into(), n.into());
        EmpiricalMeasure {
            atoms: points.into_iter().map(|p| (p, w.clone())).collect(),
        }
    }

    pub fn atoms(&self) -> &[(P, Rat)] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn total_mass(&self) -> Rat {
        self.atoms.iter().map(|(_, w)| w).sum()
    }

    /// Pushforward under a point map: atoms mapped, weights preserved.
    /// Action errors (depth loss, overflow) propagate.
    pub fn pushforward<Q>(&self, f: impl Fn(&P) -> Result<Q>) -> Result<EmpiricalMeasure<Q>> {
        let mut atoms = Vec::with_capacity(self.atoms.len());
        for (p, w) in &self.atoms {
            atoms.push((f(p)?, w.clone()));
        }
        Ok(EmpiricalMeasure { atoms })
    }

    /// Mixture Σ cᵢ·μᵢ; the caller guarantees Σ cᵢ = 1 over all parts.
    pub fn mixture(parts: Vec<(Rat, EmpiricalMeasure<P>)>) -> Result<EmpiricalMeasure<P>> {
        let mut atoms = Vec::new();
        for (c, mu) in parts {
            for (p, w) in mu.atoms {
                atoms.push((p, &c * &w));
            }
        }
        EmpiricalMeasure::new(atoms)
    }

    /// Maximal total weight inside a closed ε-ball centered at an atom.
    pub fn concentration_score(&self, metric: impl Fn(&P, &P) -> f64, eps: f64) -> f64 {
        let weights: Vec<f64> = self.atoms.iter().map(|(_, w)| w.to_f64().unwrap()).collect();
        let mut best = 0.0f64;
        for (i, (c, _)) in self.atoms.iter().enumerate() {
            let mut mass = 0.0;
            for (j, (p, _)) in self.atoms.iter().enumerate() {
                if metric(c, p) <= eps {
                    mass += weights[j];
                }
            }
            if mass > best {
                best = mass;
            }
            let _ = i;
        }
        best.min(1.0)
    }

    /// Exact masses after grouping atoms by a canonical key (e.g. a cylinder
    /// prefix or a bin index).
    pub fn group_by<K: Ord>(&self, key: impl Fn(&P) -> K) -> BTreeMap<K, Rat> {
        let mut out: BTreeMap<K, Rat> = BTreeMap::new();
        for (p, w) in &self.atoms {
            *out.entry(key(p)).or_insert_with(Rat::zero) += w;
        }
        out
    }

    /// JSON form: space tag, atom list, weights as exact fraction strings.
    pub fn to_json(&self, space: &str, show: impl Fn(&P) -> String) -> serde_json::Value {
        serde_json::json!({
            "space": space,
            "atoms": self.atoms.iter().map(|(p, w)| {
                serde_json::json!({ "point": show(p), "weight": w.to_string() })
            }).collect::<Vec<_>>(),
        })
    }
}

/// Total variation distance ½ Σ |μ(k) − ν(k)| between keyed mass tables.
pub fn total_variation<K: Ord + Clone>(mu: &BTreeMap<K, Rat>, nu: &BTreeMap<K, Rat>) -> Rat {
    let mut keys: Vec<&K> = mu.keys().chain(nu.keys()).collect();
    keys.sort();
    keys.dedup();
    let mut acc = Rat::zero();
    for k in keys {
        let a = mu.get(k).cloned().unwrap_or_else(Rat::zero);
        let b = nu.get(k).cloned().unwrap_or_else(Rat::zero);
        acc += (a - b).abs();
    }
    acc / rat(2, 1)
}

/// Boundary metric d(z, z′) = 3^−(common prefix length); cylinders are balls.
pub fn boundary_metric(z1: &BoundaryPoint, z2: &BoundaryPoint) -> f64 {
    if z1 == z2 {
        return 0.0;
    }
    3f64.powi(-(z1.common_prefix_len(z2) as i32))
}

/// Arc metric on ℙ¹.
pub fn proj_metric(p1: &ProjectivePoint, p2: &ProjectivePoint) -> f64 {
    p1.dist(*p2)
}

#[cfg(test)]
mod tests;
