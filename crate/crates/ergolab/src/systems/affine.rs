//! The rational affine group ℚ ⋊ ℚ⁺ acting on ℝ by x ↦ s·x + q.

use super::Group;
use crate::error::{Error, Result};
use crate::Rat;
use num::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// An element (q, s) with s > 0: translation part q, dilation part s.
///
/// Composition is (q₁,s₁)∘(q₂,s₂) = (s₁q₂ + q₁, s₁s₂), matching the action
/// composition (g₁g₂)(x) = g₁(g₂(x)).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct AffineElement {
    q: Rat,
    s: Rat,
}

impl AffineElement {
    pub fn new(q: Rat, s: Rat) -> Result<AffineElement> {
        if !s.is_positive() {
            return Err(Error::InvalidParameter {
                reason: format!("dilation part must be positive, got {s}"),
            });
        }
        Ok(AffineElement { q, s })
    }

    pub fn translation(&self) -> &Rat {
        &self.q
    }

    pub fn dilation(&self) -> &Rat {
        &self.s
    }

    /// Exact action on a rational point.
    pub fn apply(&self, x: &Rat) -> Rat {
        &self.s * x + &self.q
    }

    /// Floating action, for measure computations on ℝ.
    pub fn apply_f64(&self, x: f64) -> f64 {
        self.s.to_f64().unwrap() * x + self.q.to_f64().unwrap()
    }
}

impl Group for AffineElement {
    fn identity() -> Self {
        AffineElement {
            q: Rat::zero(),
            s: Rat::one(),
        }
    }

    fn op(&self, other: &Self) -> Self {
        AffineElement {
            q: &self.s * &other.q + &self.q,
            s: &self.s * &other.s,
        }
    }

    fn inverse(&self) -> Self {
        let s_inv = self.s.recip();
        AffineElement {
            q: -(&s_inv * &self.q),
            s: s_inv,
        }
    }
}

impl std::fmt::Display for AffineElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(q={}, s={})", self.q, self.s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    #[test]
    fn identity_action() {
        let e = AffineElement::identity();
        assert_eq!(e.apply(&rat(7, 3)), rat(7, 3));
    }

    #[test]
    fn arithmetic() {
        let g = AffineElement::new(rat(1, 1), rat(2, 1)).unwrap();
        assert_eq!(g.apply(&rat(3, 1)), rat(7, 1));
    }

    #[test]
    fn composition_matches_successive_application() {
        // apply (0,2) then (1,1) equals apply (1,2).
        let dilate = AffineElement::new(rat(0, 1), rat(2, 1)).unwrap();
        let shift = AffineElement::new(rat(1, 1), rat(1, 1)).unwrap();
        let composed = shift.op(&dilate);
        assert_eq!(composed, AffineElement::new(rat(1, 1), rat(2, 1)).unwrap());
        let x = rat(5, 4);
        assert_eq!(composed.apply(&x), shift.apply(&dilate.apply(&x)));
    }

    #[test]
    fn nonpositive_dilation_rejected() {
        assert!(AffineElement::new(rat(0, 1), rat(0, 1)).is_err());
        assert!(AffineElement::new(rat(0, 1), rat(-2, 1)).is_err());
    }

    #[test]
    fn order_preserved() {
        let mut rng = crate::rng::from_seed(3);
        use rand::Rng;
        for _ in 0..200 {
            let g = AffineElement::new(
                rat(rng.gen_range(-20..20), rng.gen_range(1..10)),
                rat(rng.gen_range(1..30), rng.gen_range(1..30)),
            )
            .unwrap();
            let x = rat(rng.gen_range(-50..50), rng.gen_range(1..10));
            let y = rat(rng.gen_range(-50..50), rng.gen_range(1..10));
            if x < y {
                assert!(g.apply(&x) < g.apply(&y));
            }
        }
    }

    #[test]
    fn inverse_law() {
        let g = AffineElement::new(rat(5, 3), rat(7, 2)).unwrap();
        assert_eq!(g.op(&g.inverse()), AffineElement::identity());
        assert_eq!(g.inverse().op(&g), AffineElement::identity());
    }
}
