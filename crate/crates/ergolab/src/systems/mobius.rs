//! Möbius maps acting on the projective line ℙ¹ ≅ 𝕋/{±1}.
//!
//! A map is a 2×2 nondegenerate matrix of exact rationals up to nonzero
//! scalar. Points come in two flavours: the canonical floating model is an
//! angle θ ∈ [0, π) (the line of direction θ), and the exact model is a pair
//! of homogeneous rational coordinates. The cross-ratio is always evaluated
//! through the homogeneous (bracket) formula, so the point at θ = π/2
//! (t = ∞ in the tangent chart) needs no special casing.

use super::free::{FreeWord, Letter};
use crate::dd::{bracket, Dd, DdMat2};
use crate::error::{Error, Result};
use crate::{Rat, TAU_EQ};
use num::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

pub(crate) fn rat_to_f64(r: &Rat) -> f64 {
    r.to_f64().expect("rational within f64 range")
}

/// A 2×2 nondegenerate exact-rational matrix, identified up to scalar.
///
/// Entries are canonically normalized on construction (first nonzero entry
/// in row-major order scaled to 1), so `Eq`/`Ord`/`Hash` respect the
/// projective identification.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct MobiusMap {
    a: Rat,
    b: Rat,
    c: Rat,
    d: Rat,
}

impl MobiusMap {
    /// Integer matrix representing the same projective map (denominators
    /// cleared by their lcm). Companion to [`ProjPointQ::homogeneous_int`].
    pub fn to_int(&self) -> [num::BigInt; 4] {
        use num::Integer;
        let entries = [&self.a, &self.b, &self.c, &self.d];
        let mut l = num::BigInt::one();
        for e in entries {
            l = l.lcm(e.denom());
        }
        entries.map(|e| e.numer() * (&l / e.denom()))
    }

    pub fn new(a: Rat, b: Rat, c: Rat, d: Rat) -> Result<MobiusMap> {
        let det = &a * &d - &b * &c;
        if det.is_zero() {
            return Err(Error::SingularMatrix);
        }
        let mut m = MobiusMap { a, b, c, d };
        m.normalize();
        Ok(m)
    }

    fn normalize(&mut self) {
        let pivot = [&self.a, &self.b, &self.c, &self.d]
            .into_iter()
            .find(|e| !e.is_zero())
            .cloned()
            .expect("nondegenerate matrix has a nonzero entry");
        self.a /= &pivot;
        self.b /= &pivot;
        self.c /= &pivot;
        self.d /= &pivot;
    }

    pub fn identity() -> MobiusMap {
        MobiusMap {
            a: Rat::one(),
            b: Rat::zero(),
            c: Rat::zero(),
            d: Rat::one(),
        }
    }

    pub fn entries(&self) -> [&Rat; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn det(&self) -> Rat {
        &self.a * &self.d - &self.b * &self.c
    }

    /// Matrix product (composition of maps).
    pub fn compose(&self, o: &MobiusMap) -> MobiusMap {
        let mut m = MobiusMap {
            a: &self.a * &o.a + &self.b * &o.c,
            b: &self.a * &o.b + &self.b * &o.d,
            c: &self.c * &o.a + &self.d * &o.c,
            d: &self.c * &o.b + &self.d * &o.d,
        };
        m.normalize();
        m
    }

    /// Inverse up to scalar (adjugate).
    pub fn inverse(&self) -> MobiusMap {
        let mut m = MobiusMap {
            a: self.d.clone(),
            b: -self.b.clone(),
            c: -self.c.clone(),
            d: self.a.clone(),
        };
        m.normalize();
        m
    }

    /// Entries as `f64`, rescaled to determinant ±1 for numerical headroom.
    pub fn to_f64_det1(&self) -> [f64; 4] {
        let det = rat_to_f64(&self.det()).abs();
        let s = det.sqrt();
        [
            rat_to_f64(&self.a) / s,
            rat_to_f64(&self.b) / s,
            rat_to_f64(&self.c) / s,
            rat_to_f64(&self.d) / s,
        ]
    }

    pub fn to_dd_det1(&self) -> DdMat2 {
        let [a, b, c, d] = self.to_f64_det1();
        DdMat2::from_f64(a, b, c, d)
    }
}

/// A point of ℙ¹ in the canonical angle chart θ ∈ [0, π).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProjectivePoint {
    theta: f64,
}

impl ProjectivePoint {
    pub fn new(theta: f64) -> ProjectivePoint {
        ProjectivePoint {
            theta: theta.rem_euclid(std::f64::consts::PI),
        }
    }

    pub fn theta(self) -> f64 {
        self.theta
    }

    /// Arc distance on ℙ¹ (circle of circumference π).
    pub fn dist(self, other: ProjectivePoint) -> f64 {
        let d = (self.theta - other.theta).abs();
        d.min(std::f64::consts::PI - d)
    }

    pub fn approx_eq(self, other: ProjectivePoint) -> bool {
        self.dist(other) <= TAU_EQ
    }

    /// Homogeneous unit representative [cos θ : sin θ].
    pub fn homogeneous(self) -> (f64, f64) {
        (self.theta.cos(), self.theta.sin())
    }
}

/// Image of the line [cos θ : sin θ] under the matrix, renormalized to [0, π).
pub fn mobius_apply(m: &MobiusMap, p: ProjectivePoint) -> ProjectivePoint {
    let [a, b, c, d] = m.to_f64_det1();
    apply_f64([a, b, c, d], p)
}

/// Same, for a pre-converted f64 matrix (hot loops).
pub fn apply_f64(m: [f64; 4], p: ProjectivePoint) -> ProjectivePoint {
    let (x, y) = p.homogeneous();
    let xi = m[0] * x + m[1] * y;
    let yi = m[2] * x + m[3] * y;
    ProjectivePoint::new(yi.atan2(xi))
}

/// Exact projective point: homogeneous rational coordinates, canonically
/// normalized (y = 1, or x = 1 for the point at infinity of the tangent chart).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ProjPointQ {
    x: Rat,
    y: Rat,
}

impl ProjPointQ {
    pub fn new(x: Rat, y: Rat) -> Result<ProjPointQ> {
        if x.is_zero() && y.is_zero() {
            return Err(Error::InvalidParameter {
                reason: "homogeneous coordinates must not both vanish".into(),
            });
        }
        let mut p = ProjPointQ { x, y };
        p.normalize();
        Ok(p)
    }

    /// The point with tangent-chart coordinate t = tan θ.
    pub fn from_tangent(t: Rat) -> ProjPointQ {
        ProjPointQ { x: t, y: Rat::one() }
    }

    /// The point θ = π/2 (t = ∞).
    pub fn infinity() -> ProjPointQ {
        ProjPointQ {
            x: Rat::one(),
            y: Rat::zero(),
        }
    }

    fn normalize(&mut self) {
        if !self.y.is_zero() {
            self.x /= &self.y.clone();
            self.y = Rat::one();
        } else {
            self.x = Rat::one();
        }
    }

    pub fn coords(&self) -> (&Rat, &Rat) {
        (&self.x, &self.y)
    }

    pub fn apply(&self, m: &MobiusMap) -> ProjPointQ {
        let mut p = ProjPointQ {
            x: &m.a * &self.x + &m.b * &self.y,
            y: &m.c * &self.x + &m.d * &self.y,
        };
        p.normalize();
        p
    }

    /// Bracket x_p·y_q − y_p·x_q; zero iff the points coincide in ℙ¹.
    pub fn bracket(&self, q: &ProjPointQ) -> Rat {
        &self.x * &q.y - &self.y * &q.x
    }

    pub fn to_angle(&self) -> ProjectivePoint {
        if self.y.is_zero() {
            ProjectivePoint::new(std::f64::consts::FRAC_PI_2)
        } else {
            ProjectivePoint::new(rat_to_f64(&self.x).atan())
        }
    }

    /// Integer homogeneous representative (denominators cleared). Same
    /// projective point; lets bulk pipelines stay in BigInt and skip the
    /// gcd every Rat operation performs.
    pub fn homogeneous_int(&self) -> (num::BigInt, num::BigInt) {
        // Canonical form is (t, 1) or (1, 0), so one denominator suffices.
        (self.x.numer().clone(), self.x.denom() * self.y.numer())
    }
}

/// Exact cross-ratio of four pairwise distinct points through the homogeneous
/// bracket formula ([p₁,p₃][p₂,p₄]) / ([p₂,p₃][p₁,p₄]); in the tangent chart
/// this is ((t₁−t₃)(t₂−t₄)) / ((t₂−t₃)(t₁−t₄)).
pub fn cross_ratio_exact(
    p1: &ProjPointQ,
    p2: &ProjPointQ,
    p3: &ProjPointQ,
    p4: &ProjPointQ,
) -> Result<Rat> {
    let pts = [p1, p2, p3, p4];
    for i in 0..4 {
        for j in (i + 1)..4 {
            if pts[i].bracket(pts[j]).is_zero() {
                return Err(Error::DegenerateTuple { i, j });
            }
        }
    }
    Ok((p1.bracket(p3) * p2.bracket(p4)) / (p2.bracket(p3) * p1.bracket(p4)))
}

/// Floating cross-ratio of four angle-model points, same bracket formula
/// (brackets of unit representatives are sines of angle differences).
pub fn cross_ratio(
    p1: ProjectivePoint,
    p2: ProjectivePoint,
    p3: ProjectivePoint,
    p4: ProjectivePoint,
) -> Result<f64> {
    let pts = [p1, p2, p3, p4];
    for i in 0..4 {
        for j in (i + 1)..4 {
            if pts[i].dist(pts[j]) <= TAU_EQ {
                return Err(Error::DegenerateTuple { i, j });
            }
        }
    }
    let s = |p: ProjectivePoint, q: ProjectivePoint| (q.theta - p.theta).sin();
    Ok((s(p1, p3) * s(p2, p4)) / (s(p2, p3) * s(p1, p4)))
}

/// Floating cross-ratio of the images of four points under a word matrix,
/// evaluated in compensated double-double arithmetic. This is the honest
/// floating route: the images are actually computed and the brackets taken,
/// with no use of determinant multiplicativity.
pub fn cross_ratio_after_word_dd(m: &DdMat2, pts: &[(f64, f64); 4]) -> f64 {
    let imgs: Vec<(Dd, Dd)> = pts
        .iter()
        .map(|&(x, y)| m.apply(Dd::from(x), Dd::from(y)))
        .collect();
    let b13 = bracket(imgs[0], imgs[2]);
    let b24 = bracket(imgs[1], imgs[3]);
    let b23 = bracket(imgs[1], imgs[2]);
    let b14 = bracket(imgs[0], imgs[3]);
    b13.mul(b24).div(b23.mul(b14)).to_f64()
}

/// Evaluates the homomorphism a ↦ gens.0, b ↦ gens.1 on a reduced word.
pub fn word_to_mobius(w: &FreeWord, gens: &(MobiusMap, MobiusMap)) -> MobiusMap {
    let a_inv = gens.0.inverse();
    let b_inv = gens.1.inverse();
    let mut m = MobiusMap::identity();
    for &l in w.letters() {
        let g = match l {
            Letter::A => &gens.0,
            Letter::B => &gens.1,
            Letter::AInv => &a_inv,
            Letter::BInv => &b_inv,
        };
        m = m.compose(g);
    }
    m
}

/// Same evaluation in plain f64 with per-step sup-norm normalization (the
/// matrix only matters projectively). Adequate where only coarse geometry is
/// needed — long products lose relative precision to the separation ratio.
pub fn word_to_f64(w: &FreeWord, gens: &(MobiusMap, MobiusMap)) -> [f64; 4] {
    let mats = [
        gens.0.to_f64_det1(),
        gens.1.to_f64_det1(),
        gens.0.inverse().to_f64_det1(),
        gens.1.inverse().to_f64_det1(),
    ];
    let mut m = [1.0, 0.0, 0.0, 1.0];
    for &l in w.letters() {
        let g = match l {
            Letter::A => mats[0],
            Letter::B => mats[1],
            Letter::AInv => mats[2],
            Letter::BInv => mats[3],
        };
        m = [
            m[0] * g[0] + m[1] * g[2],
            m[0] * g[1] + m[1] * g[3],
            m[2] * g[0] + m[3] * g[2],
            m[2] * g[1] + m[3] * g[3],
        ];
        let norm = m.iter().fold(0.0f64, |acc, x| acc.max(x.abs()));
        for x in &mut m {
            *x /= norm;
        }
    }
    m
}

/// Same evaluation in double-double arithmetic with det-1 generators.
pub fn word_to_dd(w: &FreeWord, gens: &(MobiusMap, MobiusMap)) -> DdMat2 {
    let mats = [
        gens.0.to_dd_det1(),
        gens.1.to_dd_det1(),
        gens.0.inverse().to_dd_det1(),
        gens.1.inverse().to_dd_det1(),
    ];
    let mut m = DdMat2::IDENTITY;
    for &l in w.letters() {
        let g = match l {
            Letter::A => mats[0],
            Letter::B => mats[1],
            Letter::AInv => mats[2],
            Letter::BInv => mats[3],
        };
        m = m.mul(g);
    }
    m
}
