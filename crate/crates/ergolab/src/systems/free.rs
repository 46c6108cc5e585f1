//! The free group F₂ = ⟨a, b⟩ and its boundary of right-infinite reduced
//! words, truncated at a fixed depth.

use super::Group;
use crate::error::{Error, Result};
use rand::Rng;
use serde::{Deserialize, Serialize};
use std::fmt;

/// One of the four letters a, b, a⁻¹, b⁻¹.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Letter {
    A,
    B,
    AInv,
    BInv,
}

pub const LETTERS: [Letter; 4] = [Letter::A, Letter::B, Letter::AInv, Letter::BInv];

impl Letter {
    pub fn inverse(self) -> Letter {
        match self {
            Letter::A => Letter::AInv,
            Letter::AInv => Letter::A,
            Letter::B => Letter::BInv,
            Letter::BInv => Letter::B,
        }
    }

    pub fn all() -> [Letter; 4] {
        LETTERS
    }

    /// Uniform letter.
    pub fn random<R: Rng>(rng: &mut R) -> Letter {
        LETTERS[rng.gen_range(0..4)]
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Letter::A => "a",
            Letter::B => "b",
            Letter::AInv => "A",
            Letter::BInv => "B",
        };
        write!(f, "{s}")
    }
}

/// A fully reduced word over {a, b, a⁻¹, b⁻¹}; the empty word is the identity.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct FreeWord {
    letters: Vec<Letter>,
}

impl FreeWord {
    pub fn identity() -> FreeWord {
        FreeWord { letters: Vec::new() }
    }

    pub fn generator(l: Letter) -> FreeWord {
        FreeWord { letters: vec![l] }
    }

    /// Builds a word from an arbitrary letter sequence, reducing it.
    pub fn from_letters(letters: impl IntoIterator<Item = Letter>) -> FreeWord {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        FreeWord { letters: out }
    }

    /// Parses a word from a string using `a b A B` for a, b, a⁻¹, b⁻¹.
    pub fn parse(s: &str) -> Result<FreeWord> {
        let mut letters = Vec::new();
        for (i, c) in s.chars().enumerate() {
            letters.push(match c {
                'a' => Letter::A,
                'b' => Letter::B,
                'A' => Letter::AInv,
                'B' => Letter::BInv,
                _ => {
                    return Err(Error::InvalidParameter {
                        reason: format!("bad letter {c:?} at {i}"),
                    })
                }
            });
        }
        Ok(FreeWord::from_letters(letters))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> FreeWord {
        FreeWord {
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    /// A uniformly random reduced word of exactly the given length.
    pub fn random_reduced<R: Rng>(rng: &mut R, len: usize) -> FreeWord {
        FreeWord {
            letters: random_reduced_letters(rng, len, None),
        }
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "e");
        }
        for l in &self.letters {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl Group for FreeWord {
    fn identity() -> Self {
        FreeWord::identity()
    }

    fn op(&self, other: &Self) -> Self {
        word_mul(self, other)
    }

    fn inverse(&self) -> Self {
        self.inverse()
    }
}

/// Reduced concatenation u·v. Total; associative; `u · u⁻¹ = e`.
pub fn word_mul(u: &FreeWord, v: &FreeWord) -> FreeWord {
    let mut out = u.letters.clone();
    for &l in &v.letters {
        if out.last() == Some(&l.inverse()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    FreeWord { letters: out }
}

/// Checks that a raw letter sequence is reduced.
pub fn check_reduced(letters: &[Letter]) -> Result<()> {
    for (i, pair) in letters.windows(2).enumerate() {
        if pair[1] == pair[0].inverse() {
            return Err(Error::NotReduced { position: i });
        }
    }
    Ok(())
}

fn random_reduced_letters<R: Rng>(
    rng: &mut R,
    len: usize,
    forbidden_first: Option<Letter>,
) -> Vec<Letter> {
    let mut letters: Vec<Letter> = Vec::with_capacity(len);
    for i in 0..len {
        let prev_inv = if i == 0 {
            forbidden_first
        } else {
            Some(letters[i - 1].inverse())
        };
        let choices: Vec<Letter> = LETTERS
            .into_iter()
            .filter(|&l| Some(l) != prev_inv)
            .collect();
        letters.push(choices[rng.gen_range(0..choices.len())]);
    }
    letters
}

/// A depth-truncated boundary point: the first `depth` letters of a right
/// infinite reduced word.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct BoundaryPoint {
    prefix: Vec<Letter>,
}

impl BoundaryPoint {
    pub fn new(prefix: Vec<Letter>) -> Result<BoundaryPoint> {
        check_reduced(&prefix)?;
        Ok(BoundaryPoint { prefix })
    }

    pub fn prefix(&self) -> &[Letter] {
        &self.prefix
    }

    pub fn depth(&self) -> usize {
        self.prefix.len()
    }

    /// First `k` letters.
    pub fn truncate(&self, k: usize) -> BoundaryPoint {
        BoundaryPoint {
            prefix: self.prefix[..k.min(self.prefix.len())].to_vec(),
        }
    }

    /// Samples a point distributed according to the cylinder measure η at the
    /// stored depth: uniform first letter, then uniform over the three
    /// non-cancelling continuations.
    pub fn random_eta<R: Rng>(rng: &mut R, depth: usize) -> BoundaryPoint {
        BoundaryPoint {
            prefix: random_reduced_letters(rng, depth, None),
        }
    }

    /// Samples from η conditioned on the cylinder of the given reduced prefix.
    pub fn random_in_cylinder<R: Rng>(
        rng: &mut R,
        cylinder: &[Letter],
        depth: usize,
    ) -> Result<BoundaryPoint> {
        check_reduced(cylinder)?;
        if depth < cylinder.len() {
            return Err(Error::InvalidParameter {
                reason: "depth shorter than cylinder prefix".into(),
            });
        }
        let mut prefix = cylinder.to_vec();
        let forbid = prefix.last().map(|l| l.inverse());
        prefix.extend(random_reduced_letters(rng, depth - cylinder.len(), forbid));
        // The tail was generated to not cancel against the cylinder prefix.
        debug_assert!(check_reduced(&prefix).is_ok());
        Ok(BoundaryPoint { prefix })
    }

    /// Length of the common prefix with another point.
    pub fn common_prefix_len(&self, other: &BoundaryPoint) -> usize {
        self.prefix
            .iter()
            .zip(&other.prefix)
            .take_while(|(x, y)| x == y)
            .count()
    }

    /// Deterministic extension of a reduced prefix to the given depth, used
    /// for cylinder-uniform discretizations: continues with the first
    /// non-cancelling letter in the fixed order a, b, a⁻¹, b⁻¹.
    pub fn extend_deterministic(cylinder: &[Letter], depth: usize) -> Result<BoundaryPoint> {
        check_reduced(cylinder)?;
        let mut prefix = cylinder.to_vec();
        while prefix.len() < depth {
            let forbid = prefix.last().map(|l| l.inverse());
            let next = LETTERS
                .into_iter()
                .find(|&l| Some(l) != forbid)
                .expect("four letters, at most one forbidden");
            prefix.push(next);
        }
        Ok(BoundaryPoint { prefix })
    }
}

impl fmt::Display for BoundaryPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.prefix {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// Left action of F₂ on the truncated boundary.
///
/// Returns the reduced word g·z truncated to depth(z) − length(g): those
/// letters are fully determined by the stored prefix whenever the junction
/// cancellation does not consume the prefix entirely. Depth loss is explicit
/// in the output; `DepthExhausted` is raised when either the requested output
/// depth would be zero or the whole prefix cancels (in which case letters
/// beyond the stored prefix could cancel further into g, so no output letter
/// is certain).
pub fn boundary_act(g: &FreeWord, z: &BoundaryPoint) -> Result<BoundaryPoint> {
    if g.is_empty() {
        return Ok(z.clone());
    }
    let depth = z.depth();
    if depth <= g.len() {
        return Err(Error::DepthExhausted {
            word_len: g.len(),
            depth,
        });
    }
    let mut out = g.letters().to_vec();
    let mut cancelled = 0usize;
    for &l in &z.prefix {
        if out.last() == Some(&l.inverse()) {
            out.pop();
            cancelled += 1;
        } else {
            out.push(l);
        }
    }
    if cancelled == depth {
        return Err(Error::DepthExhausted {
            word_len: g.len(),
            depth,
        });
    }
    out.truncate(depth - g.len());
    Ok(BoundaryPoint { prefix: out })
}

/// All reduced words of exactly the given length, in lexicographic order.
/// There are 4·3^(n−1) of them for n ≥ 1.
pub fn reduced_words_of_length(n: usize) -> Vec<Vec<Letter>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut words: Vec<Vec<Letter>> = LETTERS.iter().map(|&l| vec![l]).collect();
    for _ in 1..n {
        let mut next = Vec::with_capacity(words.len() * 3);
        for w in &words {
            let last_inv = w.last().unwrap().inverse();
            for &l in &LETTERS {
                if l != last_inv {
                    let mut v = w.clone();
                    v.push(l);
                    next.push(v);
                }
            }
        }
        words = next;
    }
    words
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Brute-force reduction oracle: scans for one mutually inverse adjacent
    /// pair per pass until no pass cancels anything.
    fn reduce_oracle(mut letters: Vec<Letter>) -> Vec<Letter> {
        loop {
            let mut cancelled = false;
            for i in 0..letters.len().saturating_sub(1) {
                if letters[i + 1] == letters[i].inverse() {
                    letters.drain(i..=i + 1);
                    cancelled = true;
                    break;
                }
            }
            if !cancelled {
                return letters;
            }
        }
    }

    fn w(s: &str) -> FreeWord {
        FreeWord::parse(s).unwrap()
    }

    #[test]
    fn inverse_cancellation() {
        assert_eq!(word_mul(&w("a"), &w("A")), FreeWord::identity());
    }

    #[test]
    fn forced_reduction() {
        assert_eq!(word_mul(&w("ab"), &w("Ba")), w("aa"));
    }

    #[test]
    fn reduction_matches_oracle() {
        // (a b a⁻¹)·(a b⁻¹) reduces to a.
        let u = w("abA");
        let v = w("aB");
        let concat: Vec<Letter> = u
            .letters()
            .iter()
            .chain(v.letters())
            .copied()
            .collect();
        assert_eq!(word_mul(&u, &v).letters(), reduce_oracle(concat));
        assert_eq!(word_mul(&u, &v), w("a"));
    }

    #[test]
    fn associativity_exhaustive_short_words() {
        // All triples of words of length ≤ 2 (1 + 4 + 12 = 17 words).
        let mut words = vec![FreeWord::identity()];
        for n in 1..=2 {
            words.extend(reduced_words_of_length(n).into_iter().map(FreeWord::from_letters));
        }
        for u in &words {
            for v in &words {
                for t in &words {
                    assert_eq!(
                        word_mul(&word_mul(u, v), t),
                        word_mul(u, &word_mul(v, t))
                    );
                }
            }
        }
    }

    #[test]
    fn length_subadditive_and_inverse_law() {
        let mut rng = crate::rng::from_seed(11);
        for _ in 0..200 {
            let u_len = rng.gen_range(0..8);
            let u = FreeWord::random_reduced(&mut rng, u_len);
            let v_len = rng.gen_range(0..8);
            let v = FreeWord::random_reduced(&mut rng, v_len);
            assert!(word_mul(&u, &v).len() <= u.len() + v.len());
            assert_eq!(word_mul(&u, &u.inverse()), FreeWord::identity());
        }
    }

    #[test]
    fn boundary_head_cancellation() {
        // g = a, z = a⁻¹ b a b... → b a b...
        let z = BoundaryPoint::new(vec![Letter::AInv, Letter::B, Letter::A, Letter::B]).unwrap();
        let img = boundary_act(&w("a"), &z).unwrap();
        assert_eq!(img.prefix(), &[Letter::B, Letter::A, Letter::B]);
    }

    #[test]
    fn boundary_identity_action() {
        let z = BoundaryPoint::new(vec![Letter::A, Letter::B]).unwrap();
        assert_eq!(boundary_act(&FreeWord::identity(), &z).unwrap(), z);
    }

    #[test]
    fn boundary_one_cancellation() {
        // g = ba, z = a⁻¹ a⁻¹ ... → b a⁻¹ ... (one cancellation at junction).
        let z = BoundaryPoint::new(vec![
            Letter::AInv,
            Letter::AInv,
            Letter::AInv,
            Letter::AInv,
        ])
        .unwrap();
        let img = boundary_act(&w("ba"), &z).unwrap();
        assert_eq!(img.prefix(), &[Letter::B, Letter::AInv]);
    }

    #[test]
    fn boundary_full_cancellation_is_depth_exhausted() {
        let z = BoundaryPoint::new(vec![Letter::AInv, Letter::BInv]).unwrap();
        // g = a b a b cancels the whole prefix.
        let err = boundary_act(&w("abab"), &z).unwrap_err();
        assert!(matches!(err, Error::DepthExhausted { .. }));
    }

    #[test]
    fn action_law_on_retained_prefix() {
        let mut rng = crate::rng::from_seed(23);
        for _ in 0..200 {
            let u_len = rng.gen_range(0..5);
            let u = FreeWord::random_reduced(&mut rng, u_len);
            let v_len = rng.gen_range(0..5);
            let v = FreeWord::random_reduced(&mut rng, v_len);
            let z = BoundaryPoint::random_eta(&mut rng, 24);
            let uv = word_mul(&u, &v);
            let lhs = boundary_act(&uv, &z);
            let rhs = boundary_act(&v, &z).and_then(|vz| boundary_act(&u, &vz));
            if let (Ok(lhs), Ok(rhs)) = (lhs, rhs) {
                let k = lhs.depth().min(rhs.depth());
                assert_eq!(lhs.truncate(k), rhs.truncate(k), "u={u} v={v} z={z}");
            }
        }
    }

    #[test]
    fn reduced_word_counts() {
        for n in 1..=6 {
            assert_eq!(
                reduced_words_of_length(n).len(),
                4 * 3usize.pow(n as u32 - 1)
            );
        }
    }
}
