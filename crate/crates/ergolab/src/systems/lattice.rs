//! Lattice sites of ℤᵈ for the lazy symmetric walks.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct LatticePoint {
    coords: Vec<i64>,
}

impl LatticePoint {
    pub fn origin(d: usize) -> LatticePoint {
        LatticePoint {
            coords: vec![0; d],
        }
    }

    pub fn new(coords: Vec<i64>) -> LatticePoint {
        LatticePoint { coords }
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn is_origin(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    /// Translate one coordinate by ±1.
    pub fn step(&self, axis: usize, delta: i64) -> LatticePoint {
        let mut coords = self.coords.clone();
        coords[axis] += delta;
        LatticePoint { coords }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn step_and_origin() {
        let p = LatticePoint::origin(2);
        assert!(p.is_origin());
        let q = p.step(1, -1);
        assert_eq!(q.coords(), &[0, -1]);
        assert!(!q.is_origin());
        assert!(q.step(1, 1).is_origin());
    }
}
