//! Induced transformation on a base state of a Markov chain: sample
//! excursions from a₀ back to a₀ and study the empirical distribution over
//! return blocks. For a genuine Markov chain consecutive blocks are i.i.d.
//! (the strong Markov property), so a chi-square independence statistic over
//! consecutive block pairs witnesses the induced Bernoulli structure.

use crate::error::{Error, Result};
use crate::rng::stream;
use crate::systems::LatticePoint;
use rand::Rng;
use serde::Serialize;
use statrs::distribution::{ChiSquared, ContinuousCDF};
use std::collections::{HashMap, VecDeque};

/// A Markov chain with a distinguished base state, sampled one step at a
/// time. Implementations are expected (not proven) to return to the base;
/// the horizon cap in [`induced_block_distribution`] handles the rest.
pub trait ChainSampler {
    type State: Clone + Eq + Ord + std::hash::Hash;
    fn base(&self) -> Self::State;
    fn step<R: Rng>(&self, s: &Self::State, rng: &mut R) -> Self::State;
}

/// An explicit finite chain given by row-stochastic transition weights.
#[derive(Debug, Clone)]
pub struct FiniteChain {
    transitions: Vec<Vec<(usize, f64)>>,
    base: usize,
}

impl FiniteChain {
    /// Validates stochasticity and irreducibility (strong connectivity of
    /// the positive-weight transition graph, checked by BFS in both edge
    /// directions from the base).
    pub fn new(transitions: Vec<Vec<(usize, f64)>>, base: usize) -> Result<FiniteChain> {
        let n = transitions.len();
        if base >= n {
            return Err(Error::InvalidParameter {
                reason: "base state out of range".into(),
            });
        }
        for (i, row) in transitions.iter().enumerate() {
            let total: f64 = row.iter().map(|&(_, w)| w).sum();
            if (total - 1.0).abs() > 1e-12 || row.iter().any(|&(j, w)| j >= n || w < 0.0) {
                return Err(Error::InvalidDistribution {
                    reason: format!("row {i} is not a distribution over states"),
                });
            }
        }
        let reachable = |forward: bool| -> usize {
            let mut seen = vec![false; n];
            let mut queue = VecDeque::from([base]);
            seen[base] = true;
            let mut count = 1;
            while let Some(i) = queue.pop_front() {
                for (j, row) in transitions.iter().enumerate() {
                    for &(k, w) in row {
                        if w <= 0.0 {
                            continue;
                        }
                        let (from, to) = if forward { (j, k) } else { (k, j) };
                        if from == i && !seen[to] {
                            seen[to] = true;
                            count += 1;
                            queue.push_back(to);
                        }
                    }
                }
            }
            count
        };
        if reachable(true) != n || reachable(false) != n {
            return Err(Error::InvalidParameter {
                reason: "chain is not irreducible".into(),
            });
        }
        Ok(FiniteChain { transitions, base })
    }
}

impl ChainSampler for FiniteChain {
    type State = usize;

    fn base(&self) -> usize {
        self.base
    }

    fn step<R: Rng>(&self, s: &usize, rng: &mut R) -> usize {
        let row = &self.transitions[*s];
        let mut u: f64 = rng.gen();
        for &(j, w) in row {
            u -= w;
            if u < 0.0 {
                return j;
            }
        }
        row.last().expect("validated row").0
    }
}

/// The lazy symmetric walk on ℤ^d viewed as a chain with base = origin.
#[derive(Debug, Clone)]
pub struct LazyLatticeChain {
    pub dimension: usize,
    pub hold_prob: f64,
}

impl ChainSampler for LazyLatticeChain {
    type State = LatticePoint;

    fn base(&self) -> LatticePoint {
        LatticePoint::origin(self.dimension)
    }

    fn step<R: Rng>(&self, s: &LatticePoint, rng: &mut R) -> LatticePoint {
        if rng.gen::<f64>() < self.hold_prob {
            return s.clone();
        }
        let dir = rng.gen_range(0..2 * self.dimension);
        s.step(dir / 2, if dir % 2 == 0 { 1 } else { -1 })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BlockDistribution<S> {
    /// The K most frequent return blocks with their counts. A block is the
    /// state sequence (s₁, …, s_k) of one excursion, s_k = a₀, so the block
    /// length is exactly the excursion length.
    pub blocks: Vec<(Vec<S>, usize)>,
    pub completed_excursions: usize,
    /// Excursions cut off by the horizon; reported as censored mass, and the
    /// consecutive-pair statistic never pairs across a censoring reset.
    pub censored: usize,
    pub horizon: usize,
    pub seed: u64,
    pub chi_square: f64,
    pub degrees_of_freedom: usize,
    pub p_value: f64,
    /// p_value > 0.01: consistent with i.i.d. blocks at the 1% level.
    pub independent_at_1pct: bool,
}

/// Samples `samples` excursions from the base state and tests consecutive
/// return blocks for independence. Blocks are categorized as the `top_k`
/// most frequent types plus a pooled remainder; the chi-square statistic is
/// the usual contingency test on consecutive pairs.
pub fn induced_block_distribution<C: ChainSampler>(
    chain: &C,
    samples: usize,
    horizon: usize,
    top_k: usize,
    seed: u64,
) -> Result<BlockDistribution<C::State>> {
    assert!(samples > 0 && horizon > 0 && top_k > 0);
    let base = chain.base();
    let mut rng = stream(seed, "induced-blocks", 0);
    let mut counts: HashMap<Vec<C::State>, usize> = HashMap::new();
    // Sequence of block keys with None marking a censoring reset.
    let mut sequence: Vec<Option<Vec<C::State>>> = Vec::with_capacity(samples);
    let mut censored = 0;
    for _ in 0..samples {
        let mut s = base.clone();
        let mut block = Vec::new();
        let mut returned = false;
        for _ in 0..horizon {
            s = chain.step(&s, &mut rng);
            block.push(s.clone());
            if s == base {
                returned = true;
                break;
            }
        }
        if returned {
            *counts.entry(block.clone()).or_insert(0) += 1;
            sequence.push(Some(block));
        } else {
            censored += 1;
            sequence.push(None);
        }
    }
    if counts.is_empty() {
        return Err(Error::HorizonExceeded { horizon });
    }

    let mut blocks: Vec<(Vec<C::State>, usize)> = counts.into_iter().collect();
    blocks.sort_by(|(b1, c1), (b2, c2)| c2.cmp(c1).then_with(|| b1.cmp(b2)));
    blocks.truncate(top_k);

    // Category index: position among the top blocks, or top_k for "other".
    let category = |block: &Vec<C::State>| -> usize {
        blocks
            .iter()
            .position(|(b, _)| b == block)
            .unwrap_or(blocks.len())
    };
    let ncat = blocks.len() + 1;
    let mut table = vec![vec![0usize; ncat]; ncat];
    let mut pairs = 0usize;
    for w in sequence.windows(2) {
        if let (Some(a), Some(b)) = (&w[0], &w[1]) {
            table[category(a)][category(b)] += 1;
            pairs += 1;
        }
    }

    let (chi_square, dof, p_value) = chi_square_independence(&table, pairs);
    Ok(BlockDistribution {
        blocks,
        completed_excursions: samples - censored,
        censored,
        horizon,
        seed,
        chi_square,
        degrees_of_freedom: dof,
        p_value,
        independent_at_1pct: p_value > 0.01,
    })
}

/// Pearson chi-square for independence on a square contingency table; rows
/// and columns with zero marginals are dropped. Degenerate tables (fewer
/// than two effective categories on either axis) report p = 1.
fn chi_square_independence(table: &[Vec<usize>], total: usize) -> (f64, usize, f64) {
    if total == 0 {
        return (0.0, 0, 1.0);
    }
    let n = table.len();
    let row_sums: Vec<usize> = (0..n).map(|i| table[i].iter().sum()).collect();
    let col_sums: Vec<usize> = (0..n).map(|j| (0..n).map(|i| table[i][j]).sum()).collect();
    let rows: Vec<usize> = (0..n).filter(|&i| row_sums[i] > 0).collect();
    let cols: Vec<usize> = (0..n).filter(|&j| col_sums[j] > 0).collect();
    if rows.len() < 2 || cols.len() < 2 {
        return (0.0, 0, 1.0);
    }
    let mut chi = 0.0;
    for &i in &rows {
        for &j in &cols {
            let expected = row_sums[i] as f64 * col_sums[j] as f64 / total as f64;
            let diff = table[i][j] as f64 - expected;
            chi += diff * diff / expected;
        }
    }
    let dof = (rows.len() - 1) * (cols.len() - 1);
    let dist = ChiSquared::new(dof as f64).expect("dof >= 1");
    (chi, dof, 1.0 - dist.cdf(chi))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_two_state_chain() {
        // a₀ → a₁ → a₀ forever: one block [a₁, a₀] with probability 1.
        let chain =
            FiniteChain::new(vec![vec![(1, 1.0)], vec![(0, 1.0)]], 0).unwrap();
        let d = induced_block_distribution(&chain, 500, 10, 5, 1).unwrap();
        assert_eq!(d.blocks.len(), 1);
        assert_eq!(d.blocks[0].0, vec![1, 0]);
        assert_eq!(d.blocks[0].1, 500);
        assert_eq!(d.censored, 0);
        assert!(d.independent_at_1pct); // degenerate table, p = 1
    }

    #[test]
    fn block_lengths_are_excursion_lengths() {
        // Three-state loop a₀ → a₁ → a₂ → a₀: the unique block has length 3.
        let chain = FiniteChain::new(
            vec![vec![(1, 1.0)], vec![(2, 1.0)], vec![(0, 1.0)]],
            0,
        )
        .unwrap();
        let d = induced_block_distribution(&chain, 100, 10, 5, 1).unwrap();
        assert_eq!(d.blocks[0].0.len(), 3);
    }

    #[test]
    fn reducible_chain_rejected() {
        // State 2 unreachable from the base.
        let chain = FiniteChain::new(
            vec![vec![(1, 1.0)], vec![(0, 1.0)], vec![(2, 1.0)]],
            0,
        );
        assert!(chain.is_err());
    }

    #[test]
    fn non_stochastic_row_rejected() {
        assert!(FiniteChain::new(vec![vec![(0, 0.5)]], 0).is_err());
    }

    #[test]
    fn horizon_exhaustion_reported() {
        // A chain that drifts away: from state 0 go to 1, from 1 bounce
        // between 1 and 2 with tiny return probability — at a short horizon
        // most excursions are censored but some complete.
        let chain = FiniteChain::new(
            vec![
                vec![(1, 1.0)],
                vec![(2, 0.9), (0, 0.1)],
                vec![(1, 1.0)],
            ],
            0,
        )
        .unwrap();
        let d = induced_block_distribution(&chain, 1000, 6, 5, 1).unwrap();
        assert!(d.censored > 0);
        assert!(d.completed_excursions > 0);
        assert_eq!(d.censored + d.completed_excursions, 1000);
    }

    #[test]
    fn random_two_state_chain_blocks_independent() {
        let chain = FiniteChain::new(
            vec![
                vec![(0, 0.5), (1, 0.5)],
                vec![(0, 0.5), (1, 0.5)],
            ],
            0,
        )
        .unwrap();
        let d = induced_block_distribution(&chain, 10_000, 100, 6, 2).unwrap();
        assert!(d.independent_at_1pct, "p = {}", d.p_value);
    }

    #[test]
    fn lazy_planar_walk_blocks_independent() {
        let chain = LazyLatticeChain {
            dimension: 2,
            hold_prob: 0.25,
        };
        let d = induced_block_distribution(&chain, 10_000, 1000, 6, 3).unwrap();
        assert!(d.completed_excursions > 5000);
        assert!(d.independent_at_1pct, "p = {}", d.p_value);
        // Shortest block: holding at the origin for one step.
        assert_eq!(d.blocks[0].0, vec![LatticePoint::origin(2)]);
    }
}
