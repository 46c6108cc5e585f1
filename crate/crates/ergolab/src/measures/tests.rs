use super::*;
use crate::rat;
use crate::systems::free::reduced_words_of_length;
use crate::systems::{AffineElement, FreeWord};

#[test]
fn eta_basic_values() {
    assert_eq!(eta_cylinder(&[Letter::A]).unwrap(), rat(1, 4));
    assert_eq!(eta_cylinder(&[Letter::A, Letter::B]).unwrap(), rat(1, 12));
    assert_eq!(eta_cylinder(&[]).unwrap(), rat(1, 1));
}

#[test]
fn eta_rejects_unreduced() {
    assert!(matches!(
        eta_cylinder(&[Letter::A, Letter::AInv]),
        Err(Error::NotReduced { position: 0 })
    ));
}

#[test]
fn eta_level_sums_are_one() {
    for n in 1..=8 {
        let total: Rat = reduced_words_of_length(n)
            .iter()
            .map(|w| eta_cylinder(w).unwrap())
            .sum();
        assert_eq!(total, Rat::one(), "level {n}");
    }
}

#[test]
fn eta_kolmogorov_consistency() {
    // Each reduced prefix has exactly 3 reduced one-letter extensions.
    for n in 1..=6 {
        for w in reduced_words_of_length(n) {
            let last_inv = w.last().unwrap().inverse();
            let extended: Rat = Letter::all()
                .into_iter()
                .filter(|&l| l != last_inv)
                .map(|l| {
                    let mut v = w.clone();
                    v.push(l);
                    eta_cylinder(&v).unwrap()
                })
                .sum();
            assert_eq!(extended, eta_cylinder(&w).unwrap());
        }
    }
}

#[test]
fn mu_p_values() {
    let p = rat(1, 3);
    assert_eq!(mu_p_cylinder(&[0], &p).unwrap(), rat(1, 3));
    assert_eq!(mu_p_cylinder(&[1, 1, 0], &p).unwrap(), rat(4, 27));
}

#[test]
fn mu_p_level_sums() {
    let p = rat(2, 7);
    for n in 1..=16 {
        let mut total = Rat::zero();
        for pattern in 0..(1u32 << n) {
            let bits: Vec<u8> = (0..n).map(|i| ((pattern >> i) & 1) as u8).collect();
            total += mu_p_cylinder(&bits, &p).unwrap();
        }
        assert_eq!(total, Rat::one(), "level {n}");
    }
}

#[test]
fn rn_derivative_measure_preserving_case() {
    let p = rat(1, 2);
    let mut rng = crate::rng::from_seed(2);
    for _ in 0..50 {
        let omega = OdometerPoint::random(&mut rng, 10);
        if omega.is_all_ones() {
            continue;
        }
        assert_eq!(rn_derivative_odometer(&omega, &p).unwrap(), Rat::one());
    }
}

#[test]
fn rn_derivative_leading_zero() {
    // ω starting with 0: one bit flips 0→1, ratio (1−p)/p.
    let p = rat(1, 3);
    let omega = OdometerPoint::new(vec![0, 1, 0, 1]).unwrap();
    assert_eq!(
        rn_derivative_odometer(&omega, &p).unwrap(),
        (Rat::one() - &p) / &p
    );
}

#[test]
fn rn_derivative_matches_cylinder_quotient_oracle() {
    // dμ∘T/dμ at ω equals μ(image first-(k+1) cylinder)/μ(source cylinder),
    // for all patterns of depth ≤ 10 and p ∈ {1/3, 1/2, 2/3}.
    use crate::systems::odometer_step;
    for p in [rat(1, 3), rat(1, 2), rat(2, 3)] {
        for depth in 1..=10usize {
            for pattern in 0..(1u32 << depth) {
                let bits: Vec<u8> = (0..depth).map(|i| ((pattern >> i) & 1) as u8).collect();
                let omega = OdometerPoint::new(bits.clone()).unwrap();
                if omega.is_all_ones() {
                    continue;
                }
                let (image, _) = odometer_step(&omega).unwrap();
                let oracle = mu_p_cylinder(image.bits(), &p).unwrap()
                    / mu_p_cylinder(omega.bits(), &p).unwrap();
                assert_eq!(rn_derivative_odometer(&omega, &p).unwrap(), oracle);
            }
        }
    }
}

#[test]
fn cauchy_masses() {
    let mu = DensityMeasure::Cauchy;
    assert_eq!(mu.mass(&IntervalUnion::empty()), 0.0);
    assert!((mu.mass(&IntervalUnion::new(vec![(f64::NEG_INFINITY, f64::INFINITY)])) - 1.0).abs() < 1e-15);
    // Cauchy mass of (−1, 1) is exactly 1/2 by the arctan formula;
    // cross-check with midpoint quadrature of the density.
    let m = mu.mass(&IntervalUnion::new(vec![(-1.0, 1.0)]));
    assert!((m - 0.5).abs() < 1e-15);
    let n = 200_000;
    let quad: f64 = (0..n)
        .map(|i| {
            let x = -1.0 + 2.0 * (i as f64 + 0.5) / n as f64;
            (1.0 / (std::f64::consts::PI * (1.0 + x * x))) * (2.0 / n as f64)
        })
        .sum();
    assert!((m - quad).abs() < 1e-9);
}

#[test]
fn interval_union_normalizes() {
    let u = IntervalUnion::new(vec![(3.0, 4.0), (0.0, 1.0), (0.5, 2.0), (5.0, 5.0)]);
    assert_eq!(u.intervals(), &[(0.0, 2.0), (3.0, 4.0)]);
}

#[test]
fn step_distribution_validation() {
    let bad = StepDistribution::new(vec![(FreeWord::parse("a").unwrap(), rat(1, 2))]);
    assert!(bad.is_err());
    let dup = StepDistribution::new(vec![
        (FreeWord::parse("a").unwrap(), rat(1, 2)),
        (FreeWord::parse("a").unwrap(), rat(1, 2)),
    ]);
    assert!(dup.is_err());
    let m = uniform_f2();
    assert!(m.is_symmetric());
    assert_eq!(m.weight(&FreeWord::parse("a").unwrap()), rat(1, 4));
    // Support generates words of length ≤ 3 as a semigroup.
    let targets: Vec<FreeWord> = reduced_words_of_length(3)
        .into_iter()
        .map(FreeWord::from_letters)
        .collect();
    assert!(m.semigroup_reaches(&targets, 3));
}

#[test]
fn pushforward_identity_and_constant() {
    let mu = EmpiricalMeasure::uniform(vec![rat(0, 1), rat(1, 1), rat(2, 1)]);
    let same = mu.pushforward(|x| Ok(x.clone())).unwrap();
    assert_eq!(same.atoms(), mu.atoms());
    let collapsed = mu.pushforward(|_| Ok(rat(9, 1))).unwrap();
    assert_eq!(collapsed.total_mass(), Rat::one());
    assert!(collapsed.atoms().iter().all(|(p, _)| *p == rat(9, 1)));
}

#[test]
fn pushforward_affine_atoms() {
    let g = AffineElement::new(rat(1, 1), rat(2, 1)).unwrap();
    let mu = EmpiricalMeasure::uniform(vec![rat(0, 1), rat(3, 1)]);
    let nu = mu.pushforward(|x| Ok(g.apply(x))).unwrap();
    let pts: Vec<&Rat> = nu.atoms().iter().map(|(p, _)| p).collect();
    assert_eq!(pts, vec![&rat(1, 1), &rat(7, 1)]);
    assert_eq!(nu.total_mass(), Rat::one());
}

#[test]
fn concentration_single_and_split() {
    let single = EmpiricalMeasure::uniform(vec![ProjectivePoint::new(0.3)]);
    assert_eq!(single.concentration_score(proj_metric, 0.01), 1.0);
    let two = EmpiricalMeasure::uniform(vec![
        ProjectivePoint::new(0.2),
        ProjectivePoint::new(1.5),
    ]);
    assert!((two.concentration_score(proj_metric, 0.1) - 0.5).abs() < 1e-15);
}

#[test]
fn concentration_uniform_grid() {
    // 100 uniform atoms on ℙ¹, ε = 0.1π: the ball holds 21 atoms
    // (center plus 10 on each side), so the score is 0.21 = 0.1·π·(2/π)+1/100.
    let pts: Vec<ProjectivePoint> = (0..100)
        .map(|i| ProjectivePoint::new(std::f64::consts::PI * i as f64 / 100.0))
        .collect();
    let mu = EmpiricalMeasure::uniform(pts);
    let score = mu.concentration_score(proj_metric, 0.1 * std::f64::consts::PI);
    assert!((score - 0.21).abs() < 1e-12, "score {score}");
}

#[test]
fn total_variation_basics() {
    let mu = EmpiricalMeasure::uniform(vec![0u8, 1]);
    let nu = EmpiricalMeasure::uniform(vec![1u8, 2]);
    let tv = total_variation(&mu.group_by(|x| *x), &nu.group_by(|x| *x));
    assert_eq!(tv, rat(1, 2));
    assert_eq!(
        total_variation(&mu.group_by(|x| *x), &mu.group_by(|x| *x)),
        Rat::zero()
    );
}

#[test]
fn boundary_metric_is_cylinder_radius() {
    let z1 = BoundaryPoint::new(vec![Letter::A, Letter::B, Letter::A]).unwrap();
    let z2 = BoundaryPoint::new(vec![Letter::A, Letter::B, Letter::B]).unwrap();
    assert!((boundary_metric(&z1, &z2) - 3f64.powi(-2)).abs() < 1e-15);
    assert_eq!(boundary_metric(&z1, &z1), 0.0);
}
