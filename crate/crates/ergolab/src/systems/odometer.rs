//! The dyadic adding machine Tω = ω + (1, 0, 0, …) on depth-truncated binary
//! sequences, least significant bit first.

use crate::error::{Error, Result};
use num::BigUint;
use serde::{Deserialize, Serialize};

/// A binary sequence of fixed depth. Depth is shared within a computation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct OdometerPoint {
    bits: Vec<u8>,
}

impl OdometerPoint {
    pub fn new(bits: Vec<u8>) -> Result<OdometerPoint> {
        if bits.iter().any(|&b| b > 1) {
            return Err(Error::InvalidParameter {
                reason: "odometer bits must be 0 or 1".into(),
            });
        }
        Ok(OdometerPoint { bits })
    }

    pub fn zeros(depth: usize) -> OdometerPoint {
        OdometerPoint {
            bits: vec![0; depth],
        }
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    pub fn depth(&self) -> usize {
        self.bits.len()
    }

    pub fn is_all_ones(&self) -> bool {
        self.bits.iter().all(|&b| b == 1)
    }

    /// Number of leading ones (the carry run T would flip).
    pub fn carry_run(&self) -> usize {
        self.bits.iter().take_while(|&&b| b == 1).count()
    }

    /// The value Σ bitᵢ·2ⁱ as an unsigned integer.
    pub fn value(&self) -> BigUint {
        let mut v = BigUint::ZERO;
        for &b in self.bits.iter().rev() {
            v = (v << 1) + BigUint::from(b);
        }
        v
    }

    pub fn random<R: rand::Rng>(rng: &mut R, depth: usize) -> OdometerPoint {
        OdometerPoint {
            bits: (0..depth).map(|_| rng.gen_range(0..2u8)).collect(),
        }
    }
}

/// Binary addition of 1 with carry. Returns the successor and the carry run
/// (the number of leading 1s flipped to 0). Errors with `Overflow` at the
/// all-ones pattern: the truncation is exhausted and the caller must deepen.
pub fn odometer_step(omega: &OdometerPoint) -> Result<(OdometerPoint, usize)> {
    if omega.is_all_ones() {
        return Err(Error::Overflow {
            depth: omega.depth(),
        });
    }
    let k = omega.carry_run();
    let mut bits = omega.bits.clone();
    for b in bits.iter_mut().take(k) {
        *b = 0;
    }
    bits[k] = 1;
    Ok((OdometerPoint { bits }, k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn step_from_zero() {
        let (next, run) = odometer_step(&OdometerPoint::zeros(5)).unwrap();
        assert_eq!(next.bits(), &[1, 0, 0, 0, 0]);
        assert_eq!(run, 0);
    }

    #[test]
    fn step_with_carry() {
        let omega = OdometerPoint::new(vec![1, 1, 0, 0]).unwrap();
        let (next, run) = odometer_step(&omega).unwrap();
        assert_eq!(next.bits(), &[0, 0, 1, 0]);
        assert_eq!(run, 2);
    }

    #[test]
    fn overflow_at_all_ones() {
        let omega = OdometerPoint::new(vec![1, 1, 1]).unwrap();
        assert!(matches!(
            odometer_step(&omega),
            Err(Error::Overflow { depth: 3 })
        ));
    }

    #[test]
    fn orbit_of_zero_visits_every_pattern() {
        for depth in 1..=12 {
            let mut seen = HashSet::new();
            let mut omega = OdometerPoint::zeros(depth);
            seen.insert(omega.clone());
            for step in 1..(1usize << depth) {
                let (next, _) = odometer_step(&omega).unwrap();
                assert_eq!(next.value(), BigUint::from(step));
                omega = next;
                assert!(seen.insert(omega.clone()), "revisit at step {step}");
            }
            assert_eq!(seen.len(), 1 << depth);
            assert!(omega.is_all_ones());
        }
    }

    #[test]
    fn injective_below_overflow() {
        // Successors of the 2^N − 1 non-terminal patterns are pairwise
        // distinct (N = 8, exhaustive).
        let depth = 8;
        let mut images = HashSet::new();
        let mut omega = OdometerPoint::zeros(depth);
        loop {
            match odometer_step(&omega) {
                Ok((next, _)) => {
                    assert!(images.insert(next.clone()));
                    omega = next;
                }
                Err(_) => break,
            }
        }
        assert_eq!(images.len(), (1 << depth) - 1);
    }
}
