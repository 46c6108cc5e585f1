//! The acceptance gate: one test per criterion, each printing a single
//! pass/fail line (visible with `cargo test --test acceptance -- --nocapture`).
//! Every tolerance, seed, and runtime budget is pinned here or in the
//! config defaults; statistical criteria run on fixed seeds.

use std::time::Instant;

use ergolab::config::{Backend, ExperimentConfig};
use ergolab::experiments::run;
use ergolab::measures::{eta_cylinder, uniform_f2, EmpiricalMeasure};
use ergolab::randomwalk::stationarity_defect;
use ergolab::systems::free::reduced_words_of_length;
use ergolab::systems::{boundary_act, BoundaryPoint, Letter};
use ergolab::{rat, Rat};
use num::{One, Zero};

fn gate(n: usize, name: &str, ok: bool, detail: &str) {
    println!(
        "criterion {n:2} ({name}): {} {detail}",
        if ok { "PASS" } else { "FAIL" }
    );
    assert!(ok, "criterion {n} ({name}) failed: {detail}");
}

fn config_in(dir: &tempfile::TempDir) -> ExperimentConfig {
    let mut cfg = ExperimentConfig::default();
    cfg.out = dir.path().to_path_buf();
    cfg
}

#[test]
fn criterion_01_exact_boundary_measure() {
    let t0 = Instant::now();
    let a = eta_cylinder(&[Letter::A]).unwrap();
    let ab = eta_cylinder(&[Letter::A, Letter::B]).unwrap();
    let mut ok = a == rat(1, 4) && ab == rat(1, 12);
    for n in 1..=8 {
        let sum: Rat = reduced_words_of_length(n)
            .iter()
            .map(|w| eta_cylinder(w).unwrap())
            .sum();
        ok &= sum == Rat::one();
    }
    for n in 1..=6 {
        for w in reduced_words_of_length(n) {
            let children: Rat = Letter::all()
                .iter()
                .filter(|l| Some(&l.inverse()) != w.last())
                .map(|l| {
                    let mut c = w.clone();
                    c.push(*l);
                    eta_cylinder(&c).unwrap()
                })
                .sum();
            ok &= children == eta_cylinder(&w).unwrap();
        }
    }
    let elapsed = t0.elapsed();
    ok &= elapsed.as_secs_f64() < 1.0;
    gate(1, "exact boundary measure", ok, &format!("{elapsed:.2?}"));
}

#[test]
fn criterion_02_cross_ratio_invariance() {
    let dir = tempfile::tempdir().unwrap();
    let t0 = Instant::now();
    let mut cfg = config_in(&dir);
    cfg.backend = Backend::Float;
    let float_report = run("cross-ratio", &cfg).unwrap();
    cfg.backend = Backend::Exact;
    let exact_report = run("cross-ratio", &cfg).unwrap();
    let elapsed = t0.elapsed();
    let ok = float_report.passed && exact_report.passed && elapsed.as_secs_f64() < 10.0;
    gate(2, "cross-ratio invariance", ok, &format!("{elapsed:.2?}"));
}

#[test]
fn criterion_03_cyclic_order_invariance() {
    let dir = tempfile::tempdir().unwrap();
    let report = run("cyclic-order", &config_in(&dir)).unwrap();
    gate(3, "cyclic-order invariance", report.passed, "");
}

#[test]
fn criterion_04_odometer_square_invariant() {
    let dir = tempfile::tempdir().unwrap();
    let report = run("odometer-square", &config_in(&dir)).unwrap();
    gate(4, "odometer square invariant", report.passed, "");
}

#[test]
fn criterion_05_affine_order_invariant() {
    let dir = tempfile::tempdir().unwrap();
    let report = run("affine-order", &config_in(&dir)).unwrap();
    gate(5, "affine order invariant", report.passed, "");
}

#[test]
fn criterion_06_sat_blowup() {
    let dir = tempfile::tempdir().unwrap();
    let t0 = Instant::now();
    let report = run("sat-blowup", &config_in(&dir)).unwrap();
    let elapsed = t0.elapsed();
    let ok = report.passed && elapsed.as_secs_f64() < 30.0;
    gate(6, "SAT blow-up", ok, &format!("{elapsed:.2?}"));
}

#[test]
fn criterion_07_unique_ergodicity_decay() {
    let dir = tempfile::tempdir().unwrap();
    let report = run("unique-ergodicity", &config_in(&dir)).unwrap();
    gate(7, "unique-ergodicity decay", report.passed, "");
}

#[test]
fn criterion_08_conditional_concentration() {
    let dir = tempfile::tempdir().unwrap();
    let report = run("conditional-measures", &config_in(&dir)).unwrap();
    gate(8, "conditional-measure concentration", report.passed, "");
}

#[test]
fn criterion_09_recurrence_dichotomy() {
    let dir = tempfile::tempdir().unwrap();
    let t0 = Instant::now();
    let report = run("recurrence", &config_in(&dir)).unwrap();
    let elapsed = t0.elapsed();
    let ok = report.passed && elapsed.as_secs_f64() < 120.0;
    gate(9, "recurrence dichotomy", ok, &format!("{elapsed:.2?}"));
}

#[test]
fn criterion_10_de_reachability() {
    let dir = tempfile::tempdir().unwrap();
    let report = run("de-reachability", &config_in(&dir)).unwrap();
    gate(10, "DE reachability evidence", report.passed, "");
}

#[test]
fn criterion_11_stationarity_exactness() {
    let m = uniform_f2();
    let mut atoms = Vec::new();
    for w in reduced_words_of_length(4) {
        atoms.push((
            BoundaryPoint::extend_deterministic(&w, 24).unwrap(),
            eta_cylinder(&w).unwrap(),
        ));
    }
    let mu = EmpiricalMeasure::new(atoms).unwrap();
    // One convolution costs one cylinder level: compare at level 3.
    let defect = stationarity_defect(
        &m,
        &mu,
        |g, z| boundary_act(g, z),
        |z| z.prefix()[..3].to_vec(),
    )
    .unwrap();
    gate(
        11,
        "stationarity exactness",
        defect.is_zero(),
        &format!("defect {defect}"),
    );
}

#[test]
fn criterion_12_determinism() {
    let mut ok = true;
    for id in ["unique-ergodicity", "induced-blocks"] {
        let (d1, d2) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
        run(id, &config_in(&d1)).unwrap();
        run(id, &config_in(&d2)).unwrap();
        for entry in std::fs::read_dir(d1.path()).unwrap() {
            let name = entry.unwrap().file_name();
            let b1 = std::fs::read(d1.path().join(&name)).unwrap();
            let b2 = std::fs::read(d2.path().join(&name)).unwrap();
            if name == "report.json" {
                let scrub = |bytes: &[u8]| -> serde_json::Value {
                    let mut v: serde_json::Value = serde_json::from_slice(bytes).unwrap();
                    // `out` differs by construction here; config is otherwise compared.
                    v["timestamp"] = 0.into();
                    v["config"]["out"] = "".into();
                    v
                };
                ok &= scrub(&b1) == scrub(&b2);
            } else {
                ok &= b1 == b2;
            }
        }
    }
    gate(12, "determinism", ok, "reports identical modulo timestamp");
}
