//! The exactly-invariant statistics that obstruct double ergodicity: the
//! order sign on the affine square, the dyadic difference on the odometer
//! square, the cross-ratio on ℙ¹ quadruples, and the cyclic order type of
//! four points — each realized as a trajectory statistic whose deviation is
//! zero along diagonal orbits.

use super::InvariantWitness;
use crate::error::{Error, Result};
use crate::rat;
use crate::systems::odometer::odometer_step;
use crate::systems::schottky::Arc;
use crate::dd::DdMat2;
use crate::systems::{
    cross_ratio_after_word_dd, cross_ratio_exact, word_to_dd, word_to_mobius, AffineElement,
    FreeWord, MobiusMap, OdometerPoint, ProjPointQ,
};
use crate::Rat;
use num::{BigInt, BigUint, Signed, Zero};
use std::f64::consts::{FRAC_PI_2, PI};

fn sign(x: &Rat) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

/// sign(y − x) under the diagonal affine action: exactly invariant because
/// every γ = (q, s) has s > 0.
pub fn affine_order_invariant(
    pairs: &[(Rat, Rat)],
    elements: &[AffineElement],
) -> Result<InvariantWitness> {
    let mut witness = InvariantWitness::new("affine-order-sign", true);
    for (x, y) in pairs {
        if x == y {
            return Err(Error::InvalidParameter {
                reason: "order statistic needs x != y".into(),
            });
        }
        let s0 = sign(&(y - x));
        witness.record(format!("{s0}"), 0.0);
        for g in elements {
            let s1 = sign(&(g.apply(y) - g.apply(x)));
            witness.record(format!("{s1}"), (s1 - s0).abs() as f64);
        }
    }
    Ok(witness)
}

/// The dyadic difference ω′ − ω mod 2^N under the diagonal odometer step
/// T×T: both coordinates advance by 1, so the difference is fixed. Exact
/// integer arithmetic; Overflow is forwarded from either coordinate.
pub fn odometer_square_invariant(
    omega: &OdometerPoint,
    omega_prime: &OdometerPoint,
    steps: usize,
) -> Result<InvariantWitness> {
    if omega.depth() != omega_prime.depth() {
        return Err(Error::InvalidParameter {
            reason: "odometer pair must share a depth".into(),
        });
    }
    let modulus = BigUint::from(1u8) << omega.depth();
    let diff =
        |w: &OdometerPoint, wp: &OdometerPoint| (wp.value() + &modulus - w.value()) % &modulus;

    let mut witness = InvariantWitness::new("odometer-dyadic-difference", true);
    let d0 = diff(omega, omega_prime);
    witness.record(d0.to_string(), 0.0);
    let mut w = omega.clone();
    let mut wp = omega_prime.clone();
    for _ in 0..steps {
        w = odometer_step(&w)?.0;
        wp = odometer_step(&wp)?.0;
        let d = diff(&w, &wp);
        let dev = if d == d0 { 0.0 } else { 1.0 };
        witness.record(d.to_string(), dev);
    }
    Ok(witness)
}

/// Exact cross-ratio invariance: the quadruple is given in homogeneous
/// rational coordinates and every word image is computed exactly, so the
/// deviation is exactly zero (this is the algebraic identity, tested rather
/// than assumed).
pub fn cross_ratio_invariance_exact(
    quad: &[ProjPointQ; 4],
    words: &[FreeWord],
    gens: &(MobiusMap, MobiusMap),
) -> Result<InvariantWitness> {
    let mats: Vec<MobiusMap> = words.iter().map(|w| word_to_mobius(w, gens)).collect();
    cross_ratio_invariance_exact_mats(quad, &mats)
}

/// Same, against precomputed word matrices — hoists the exact matrix
/// products when many quadruples share one word sample, and works on
/// cleared-denominator integer representatives so the inner loop performs
/// no rational normalization (the cross-ratio is compared as an unreduced
/// fraction by cross-multiplication).
pub fn cross_ratio_invariance_exact_mats(
    quad: &[ProjPointQ; 4],
    mats: &[MobiusMap],
) -> Result<InvariantWitness> {
    let base = cross_ratio_exact(&quad[0], &quad[1], &quad[2], &quad[3])?;
    let base_str = base.to_string();
    let mut witness = InvariantWitness::new("cross-ratio-exact", true);
    witness.record(base_str.clone(), 0.0);

    let pts: Vec<(BigInt, BigInt)> = quad.iter().map(|p| p.homogeneous_int()).collect();
    let br = |p: &(BigInt, BigInt), q: &(BigInt, BigInt)| &p.0 * &q.1 - &p.1 * &q.0;
    for m in mats {
        let [a, b, c, d] = m.to_int();
        let img: Vec<(BigInt, BigInt)> = pts
            .iter()
            .map(|(x, y)| (&a * x + &b * y, &c * x + &d * y))
            .collect();
        let num = br(&img[0], &img[2]) * br(&img[1], &img[3]);
        let den = br(&img[1], &img[2]) * br(&img[0], &img[3]);
        if &num * base.denom() == &den * base.numer() {
            witness.record(base_str.clone(), 0.0);
        } else {
            witness.record(Rat::new(num, den).to_string(), 1.0);
        }
    }
    Ok(witness)
}

/// Float-backend cross-ratio invariance. The word image of the quadruple is
/// pushed through a double-double matrix product and the cross-ratio is
/// evaluated in double-double arithmetic — plain f64 loses the cancellation
/// battle long before word length 20 at the default separation.
pub fn cross_ratio_invariance_float(
    quad: &[(f64, f64); 4],
    words: &[FreeWord],
    gens: &(MobiusMap, MobiusMap),
) -> Result<InvariantWitness> {
    let mats: Vec<DdMat2> = words.iter().map(|w| word_to_dd(w, gens)).collect();
    cross_ratio_invariance_float_mats(quad, &mats)
}

/// Float counterpart over precomputed double-double word matrices.
pub fn cross_ratio_invariance_float_mats(
    quad: &[(f64, f64); 4],
    mats: &[DdMat2],
) -> Result<InvariantWitness> {
    let base = cross_ratio_after_word_dd(&DdMat2::IDENTITY, quad);
    let mut witness = InvariantWitness::new("cross-ratio-float", false);
    witness.record(format!("{base:.15}"), 0.0);
    for m in mats {
        let cr = cross_ratio_after_word_dd(m, quad);
        witness.record(format!("{cr:.15}"), (cr - base).abs());
    }
    Ok(witness)
}

/// Counterclockwise predicate for three distinct points of ℙ¹ in homogeneous
/// coordinates: the sign of [p,q][q,r][r,p] is independent of the chosen
/// representatives (flipping any one representative flips exactly two of the
/// three brackets).
fn ccw(p: &ProjPointQ, q: &ProjPointQ, r: &ProjPointQ) -> Result<bool> {
    let prod = p.bracket(q) * q.bracket(r) * r.bracket(p);
    if prod.is_zero() {
        return Err(Error::InvalidParameter {
            reason: "ccw predicate on coincident points".into(),
        });
    }
    Ok(prod.is_negative())
}

/// Cyclic sequence of the labels 0..4 in counterclockwise order, canonical up
/// to rotation and reversal: rotated to start at 0, then the lexicographic
/// minimum of the sequence and its reversal.
fn order_type(pts: &[ProjPointQ; 4]) -> Result<[usize; 4]> {
    let mut seq = if ccw(&pts[0], &pts[1], &pts[2])? {
        vec![0, 1, 2]
    } else {
        vec![0, 2, 1]
    };
    // Insert 3 into the unique ccw gap (a, b).
    let mut inserted = false;
    for i in 0..3 {
        let a = seq[i];
        let b = seq[(i + 1) % 3];
        if ccw(&pts[a], &pts[3], &pts[b])? {
            seq.insert(i + 1, 3);
            inserted = true;
            break;
        }
    }
    assert!(inserted, "a point of P^1 lies in some gap");

    let start = seq.iter().position(|&l| l == 0).unwrap();
    seq.rotate_left(start);
    let forward = [seq[0], seq[1], seq[2], seq[3]];
    let reversed = [seq[0], seq[3], seq[2], seq[1]];
    Ok(forward.min(reversed))
}

/// Rational homogeneous representative of an angle: (cos θ : sin θ) becomes
/// (1 : tan θ) rationalized, with the vertical direction sent to (0 : 1).
fn rational_direction(theta: f64) -> ProjPointQ {
    let t = theta.rem_euclid(PI);
    if (t - FRAC_PI_2).abs() < 1e-9 {
        return ProjPointQ::infinity();
    }
    let denom: i64 = 1 << 40;
    ProjPointQ::from_tangent(rat((t.tan() * denom as f64).round() as i64, denom))
}

/// Cyclic order type (up to orientation) of the four arc centers under every
/// word image, decided by the exact orientation predicate — word images of
/// the centers can be exponentially close, far beyond f64 angular resolution.
pub fn cyclic_order_invariant(
    arcs: &[Arc; 4],
    words: &[FreeWord],
    gens: &(MobiusMap, MobiusMap),
) -> Result<InvariantWitness> {
    for i in 0..4 {
        for j in (i + 1)..4 {
            if !arcs[i].disjoint_from(&arcs[j]) {
                return Err(Error::InvalidParameter {
                    reason: format!("arcs {i} and {j} intersect"),
                });
            }
        }
    }
    let centers: [ProjPointQ; 4] = [
        rational_direction(arcs[0].center),
        rational_direction(arcs[1].center),
        rational_direction(arcs[2].center),
        rational_direction(arcs[3].center),
    ];

    let show = |t: &[usize; 4]| format!("{}{}{}{}", t[0], t[1], t[2], t[3]);
    let base = order_type(&centers)?;
    let mut witness = InvariantWitness::new("cyclic-order-type", true);
    witness.record(show(&base), 0.0);
    for word in words {
        let m = word_to_mobius(word, gens);
        let img = [
            centers[0].apply(&m),
            centers[1].apply(&m),
            centers[2].apply(&m),
            centers[3].apply(&m),
        ];
        let t = order_type(&img).map_err(|e| match e {
            Error::InvalidParameter { .. } => Error::ArcCollision {
                word: word.to_string(),
            },
            other => other,
        })?;
        let dev = if t == base { 0.0 } else { 1.0 };
        witness.record(show(&t), dev);
    }
    Ok(witness)
}
