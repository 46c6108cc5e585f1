//! Property tests for the structural laws the library leans on everywhere:
//! free-group reduction, cylinder-measure additivity, odometer arithmetic,
//! and the projective bracket.

use ergolab::measures::eta_cylinder;
use ergolab::systems::free::reduced_words_of_length;
use ergolab::systems::{odometer_step, word_mul, FreeWord, Letter, OdometerPoint, ProjPointQ};
use ergolab::{rat, Rat};
use num::{One, ToPrimitive, Zero};
use proptest::prelude::*;

fn letter() -> impl Strategy<Value = Letter> {
    prop_oneof![
        Just(Letter::A),
        Just(Letter::AInv),
        Just(Letter::B),
        Just(Letter::BInv),
    ]
}

fn free_word() -> impl Strategy<Value = FreeWord> {
    proptest::collection::vec(letter(), 0..24).prop_map(|ls| {
        ls.into_iter()
            .fold(FreeWord::identity(), |w, l| word_mul(&w, &FreeWord::generator(l)))
    })
}

proptest! {
    #[test]
    fn word_times_inverse_is_identity(w in free_word()) {
        prop_assert!(word_mul(&w, &w.inverse()).is_empty());
        prop_assert!(word_mul(&w.inverse(), &w).is_empty());
    }

    #[test]
    fn multiplication_never_leaves_reduced_words(v in free_word(), w in free_word()) {
        let p = word_mul(&v, &w);
        // No adjacent cancelling pair survives.
        for pair in p.letters().windows(2) {
            prop_assert!(pair[0] != pair[1].inverse());
        }
        // Lengths can only differ by the cancelled middle.
        prop_assert!(p.len() <= v.len() + w.len());
        prop_assert_eq!((v.len() + w.len()) % 2, p.len() % 2);
    }

    #[test]
    fn cylinder_mass_splits_over_children(w in free_word()) {
        let prefix = w.letters();
        let children: Rat = Letter::all()
            .iter()
            .filter(|l| Some(&l.inverse()) != prefix.last())
            .map(|l| {
                let mut c = prefix.to_vec();
                c.push(*l);
                eta_cylinder(&c).unwrap()
            })
            .sum();
        prop_assert_eq!(children, eta_cylinder(prefix).unwrap());
    }

    #[test]
    fn cylinder_mass_matches_closed_form(n in 1usize..7) {
        let expected = (rat(4, 1) * Rat::from_integer(num::BigInt::from(3).pow(n as u32 - 1))).recip();
        for w in reduced_words_of_length(n) {
            prop_assert_eq!(eta_cylinder(&w).unwrap(), expected.clone());
        }
    }

    #[test]
    fn odometer_adds_one(bits in proptest::collection::vec(any::<bool>(), 1..40)) {
        prop_assume!(!bits.iter().all(|&b| b));
        let omega = OdometerPoint::new(bits.iter().map(|&b| b as u8).collect()).unwrap();
        let before = omega.value();
        let (next, _) = odometer_step(&omega).unwrap();
        prop_assert_eq!(next.value(), before + 1u32);
    }

    #[test]
    fn bracket_is_antisymmetric(a in -500i64..500, b in 1i64..60, c in -500i64..500, d in 1i64..60) {
        let p = ProjPointQ::from_tangent(rat(a, b));
        let q = ProjPointQ::from_tangent(rat(c, d));
        prop_assert_eq!(p.bracket(&q), -q.bracket(&p));
        prop_assert!(p.bracket(&p).is_zero());
        // Zero bracket exactly at coincidence.
        prop_assert_eq!(p.bracket(&q).is_zero(), rat(a, b) == rat(c, d));
    }

    #[test]
    fn level_masses_sum_to_one(n in 1usize..7) {
        let total: Rat = reduced_words_of_length(n)
            .iter()
            .map(|w| eta_cylinder(w).unwrap())
            .sum();
        prop_assert!(total.is_one());
    }
}

#[test]
fn odometer_value_round_trip() {
    // Deterministic companion to the proptest: values 0..2^10 enumerate once.
    let mut x = OdometerPoint::zeros(10);
    for expected in 0u32..1023 {
        assert_eq!(x.value().to_u32(), Some(expected));
        x = odometer_step(&x).unwrap().0;
    }
}
