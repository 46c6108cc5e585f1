//! A certified ping-pong (Schottky) pair of hyperbolic Möbius maps on ℙ¹.
//!
//! The generators are the diagonal/rotated-diagonal family
//!   T_a = diag(s, 1/s),
//!   T_b = R(π/4) · diag(s, 1/s) · R(−π/4) = [[s²+1, s²−1], [s²−1, s²+1]] / 2s,
//! which is exact rational for rational s (the π/4 rotation conjugation
//! collapses to rational entries). The four closed arcs are centered at the
//! attracting/repelling directions θ = 0, π/2 (for a) and π/4, 3π/4 (for b),
//! and the ping-pong inclusions T_g(ℙ¹ ∖ I(g⁻¹)°) ⊂ I(g) are verified
//! numerically on a grid; the result is returned as a certificate, not a proof.

use super::free::Letter;
use super::mobius::{apply_f64, MobiusMap, ProjectivePoint};
use crate::error::{Error, Result};
use crate::{rat, Rat};
use num::One;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Closed arc {θ : dist(θ, center) ≤ half_width} on ℙ¹.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct Arc {
    pub center: f64,
    pub half_width: f64,
}

impl Arc {
    pub fn contains(&self, p: ProjectivePoint) -> bool {
        p.dist(ProjectivePoint::new(self.center)) <= self.half_width
    }

    pub fn center_point(&self) -> ProjectivePoint {
        ProjectivePoint::new(self.center)
    }

    pub fn disjoint_from(&self, other: &Arc) -> bool {
        self.center_point().dist(other.center_point()) > self.half_width + other.half_width
    }
}

/// Grid-verified ping-pong certificate.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PingPongCertificate {
    /// Separation parameter s as a fraction string.
    pub separation: String,
    pub grid_points: usize,
    /// Worst-case slack: min over letters and grid points of
    /// half_width(I(g)) − dist(image, center(I(g))). Positive means verified.
    pub margin: f64,
}

/// A certified pair (T_a, T_b) with its four ping-pong arcs.
#[derive(Debug, Clone)]
pub struct SchottkyPair {
    pub t_a: MobiusMap,
    pub t_b: MobiusMap,
    arcs: [Arc; 4],
    pub certificate: PingPongCertificate,
}

/// Half-width of the four arcs. Centers sit π/4 apart, so anything below π/8
/// keeps them disjoint; π/10 leaves a comfortable gap and admits separations
/// down to s₀ = cot(π/10) ≈ 3.0777.
pub const ARC_HALF_WIDTH: f64 = PI / 10.0;

/// Smallest separation the grid certificate accepts with the π/10 arcs, found
/// by grid search over s (pinned constant; see `certificate_boundary` test).
pub const MIN_SEPARATION: f64 = 3.08;

/// Default certified separation used by the experiments: s = 16/5.
pub fn default_separation() -> Rat {
    Rat::new(16.into(), 5.into())
}

impl SchottkyPair {
    pub fn arc(&self, l: Letter) -> &Arc {
        match l {
            Letter::A => &self.arcs[0],
            Letter::AInv => &self.arcs[1],
            Letter::B => &self.arcs[2],
            Letter::BInv => &self.arcs[3],
        }
    }

    pub fn arcs(&self) -> &[Arc; 4] {
        &self.arcs
    }

    pub fn generators(&self) -> (MobiusMap, MobiusMap) {
        (self.t_a.clone(), self.t_b.clone())
    }

    fn matrix_for(&self, l: Letter) -> MobiusMap {
        match l {
            Letter::A => self.t_a.clone(),
            Letter::AInv => self.t_a.inverse(),
            Letter::B => self.t_b.clone(),
            Letter::BInv => self.t_b.inverse(),
        }
    }
}

/// Builds the pair at the given separation s > 1 and verifies the ping-pong
/// inclusions on `grid_points` sample angles per letter.
pub fn schottky_pair(separation: &Rat, grid_points: usize) -> Result<SchottkyPair> {
    if *separation <= Rat::one() {
        return Err(Error::InvalidParameter {
            reason: "separation must exceed 1".into(),
        });
    }
    let s = separation.clone();
    let one = Rat::one();
    let t_a = MobiusMap::new(s.clone(), rat(0, 1), rat(0, 1), s.recip())?;
    let s2 = &s * &s;
    let t_b = MobiusMap::new(&s2 + &one, &s2 - &one, &s2 - &one, &s2 + &one)?;
    certify(t_a, t_b, separation, grid_points)
}

fn certify(
    t_a: MobiusMap,
    t_b: MobiusMap,
    separation: &Rat,
    grid_points: usize,
) -> Result<SchottkyPair> {
    let w = ARC_HALF_WIDTH;
    let arcs = [
        Arc { center: 0.0, half_width: w },
        Arc { center: PI / 2.0, half_width: w },
        Arc { center: PI / 4.0, half_width: w },
        Arc { center: 3.0 * PI / 4.0, half_width: w },
    ];
    for i in 0..4 {
        for j in (i + 1)..4 {
            if !arcs[i].disjoint_from(&arcs[j]) {
                return Err(Error::PingPongFailed {
                    reason: format!("arcs {i} and {j} overlap"),
                });
            }
        }
    }
    let pair = SchottkyPair {
        t_a,
        t_b,
        arcs,
        certificate: PingPongCertificate {
            separation: separation.to_string(),
            grid_points,
            margin: f64::INFINITY,
        },
    };
    let mut margin = f64::INFINITY;
    for l in Letter::all() {
        let m = pair.matrix_for(l).to_f64_det1();
        let target = pair.arc(l);
        let source_excluded = pair.arc(l.inverse());
        for i in 0..grid_points {
            let theta = PI * i as f64 / grid_points as f64;
            let p = ProjectivePoint::new(theta);
            if source_excluded.contains(p) {
                continue;
            }
            let img = apply_f64(m, p);
            let slack = target.half_width - img.dist(target.center_point());
            margin = margin.min(slack);
            if slack <= 0.0 {
                return Err(Error::PingPongFailed {
                    reason: format!(
                        "letter {l}: image of θ={theta:.6} misses its arc by {:.3e}",
                        -slack
                    ),
                });
            }
        }
    }
    let mut pair = pair;
    pair.certificate.margin = margin;
    Ok(pair)
}

/// "Identity pair" probe used by tests: certify arbitrary generators.
pub fn certify_pair(t_a: MobiusMap, t_b: MobiusMap, grid_points: usize) -> Result<SchottkyPair> {
    certify(t_a, t_b, &Rat::one(), grid_points)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    #[test]
    fn default_pair_certifies() {
        let pair = schottky_pair(&default_separation(), 2000).unwrap();
        assert!(pair.certificate.margin > 0.0);
        for i in 0..4 {
            for j in (i + 1)..4 {
                assert!(pair.arcs()[i].disjoint_from(&pair.arcs()[j]));
            }
        }
    }

    #[test]
    fn identity_pair_fails() {
        let e = certify_pair(MobiusMap::identity(), MobiusMap::identity(), 500);
        assert!(matches!(e, Err(Error::PingPongFailed { .. })));
    }

    #[test]
    fn certificate_boundary() {
        // Pins MIN_SEPARATION: s = 3.08 ≳ cot(π/10) passes, s = 3 fails.
        assert!(schottky_pair(&rat(308, 100), 2000).is_ok());
        assert!(schottky_pair(&rat(3, 1), 2000).is_err());
    }

    #[test]
    fn separation_below_one_rejected() {
        assert!(matches!(
            schottky_pair(&rat(1, 1), 100),
            Err(Error::InvalidParameter { .. })
        ));
    }
}
