//! End-to-end acceptance suite: one test per shipping criterion, exact
//! integer checks throughout. Library-level criteria drive gabra-core
//! directly; CLI criteria spawn the built binary.

use std::collections::HashSet;
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use gabra_core::algebra::{AlgebraContext, AlgebraElement};
use gabra_core::group::{build_group, sweep_specs};
use gabra_core::units::{
    central_product_check, closure, embedded_group, enumerate_normalized_units, is_subgroup,
    random_normalized_unit, star_image, symmetric_units, ConjectureReport,
};

const CAP: u64 = 1 << 24;
const SEED: u64 = 20260817;

fn ctx(spec: &str, p: u64) -> Arc<AlgebraContext> {
    AlgebraContext::new(build_group(spec).unwrap(), p).unwrap()
}

fn gabra() -> Command {
    Command::new(env!("CARGO_BIN_EXE_gabra"))
}

/// Criterion 1: the quaternion counterexample reproduces through the CLI
/// in under a second: |V| = 128, |S*| = 16, |⟨G,S*⟩| = 64, verdict false.
#[test]
fn a01_quaternion_counterexample_under_one_second() {
    let start = Instant::now();
    let out = gabra()
        .args(["check", "--group", "q8", "--prime", "2", "--format", "json"])
        .output()
        .expect("binary runs");
    let elapsed = start.elapsed();
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["order_V"], 128);
    assert_eq!(report["order_S"], 16);
    assert_eq!(report["order_H"], 64);
    assert_eq!(report["conjecture_holds"], false);
    assert!(
        elapsed < Duration::from_secs(1),
        "took {elapsed:?}, expected < 1s"
    );
}

/// Criterion 2: all 16 members of S*(KQ₈) are central.
#[test]
fn a02_symmetric_units_of_kq8_are_central() {
    let q8 = ctx("q8", 2);
    let s = symmetric_units(&q8, CAP).unwrap();
    assert_eq!(s.len(), 16);
    for x in s.iter() {
        assert!(x.is_central(), "not central: {x}");
    }
}

/// Criterion 3: S*(KQ₈) is a subgroup and all pairs of members commute.
#[test]
fn a03_symmetric_units_of_kq8_form_a_commuting_subgroup() {
    let q8 = ctx("q8", 2);
    let s = symmetric_units(&q8, CAP).unwrap();
    assert!(is_subgroup(&s));
    for x in s.iter() {
        for y in s.iter() {
            assert_eq!(x.mul(y).unwrap(), y.mul(x).unwrap(), "{x} vs {y}");
        }
    }
}

/// Criterion 4: s·s = 1 for all 16 members of S*(KQ₈).
#[test]
fn a04_symmetric_units_of_kq8_square_to_one() {
    let q8 = ctx("q8", 2);
    let one = AlgebraElement::one(&q8);
    let s = symmetric_units(&q8, CAP).unwrap();
    assert_eq!(s.len(), 16);
    for x in s.iter() {
        assert_eq!(x.mul(x).unwrap(), one, "does not square to 1: {x}");
    }
}

/// Criterion 5: the central product structure of ⟨Q₈, S*⟩:
/// Q₈ ∩ S* = {1, a²} = Z(Q₈) and |⟨Q₈,S*⟩| = 16·8/2 = 64.
#[test]
fn a05_central_product_structure_of_the_closure() {
    let q8 = ctx("q8", 2);
    let g = embedded_group(&q8);
    let s = symmetric_units(&q8, CAP).unwrap();

    let inter = g.intersection(&s).unwrap();
    let expected: HashSet<AlgebraElement> =
        [AlgebraElement::one(&q8), AlgebraElement::embed(&q8, 2)].into();
    assert_eq!(inter.len(), 2);
    assert!(
        expected.iter().all(|z| inter.contains(z)),
        "Q₈ ∩ S* ≠ {{1, a²}}"
    );
    let center: Vec<usize> = q8.group().center();
    assert_eq!(center, vec![0, 2], "Z(Q₈) = {{1, a²}}");

    let mut gens: Vec<AlgebraElement> = g.sorted_elements();
    gens.extend(s.sorted_elements());
    let h = closure(&q8, &gens, CAP).unwrap();
    assert_eq!(h.len(), 16 * 8 / 2);
    assert!(central_product_check(&g, &s).unwrap());
}

/// Criterion 6: the involution is an antiautomorphism and the augmentation
/// is multiplicative, on 1000 seeded random pairs in each of KQ₈ and KD₈.
#[test]
fn a06_antiautomorphism_on_random_pairs() {
    for spec in ["q8", "d8"] {
        let c = ctx(spec, 2);
        let mut rng = ChaCha8Rng::seed_from_u64(SEED);
        for i in 0..1000 {
            let x = random_normalized_unit(&c, &mut rng);
            let y = random_normalized_unit(&c, &mut rng);
            assert_eq!(
                x.mul(&y).unwrap().involution(),
                y.involution().mul(&x.involution()).unwrap(),
                "{spec} pair {i} (seed {SEED}): (xy)* ≠ y*x*"
            );
            assert_eq!(x.involution().involution(), x, "{spec} pair {i}: x** ≠ x");
            assert_eq!(
                x.mul(&y).unwrap().augmentation(),
                (x.augmentation() * y.augmentation()) % 2,
                "{spec} pair {i}: aug not multiplicative"
            );
        }
    }
}

/// Criterion 7: x*·x is symmetric for 1000 seeded random normalized units
/// in each of KQ₈ and KD₈.
#[test]
fn a07_star_x_times_x_is_symmetric() {
    for spec in ["q8", "d8"] {
        let c = ctx(spec, 2);
        let mut rng = ChaCha8Rng::seed_from_u64(SEED);
        for i in 0..1000 {
            let x = random_normalized_unit(&c, &mut rng);
            assert!(
                x.involution().mul(&x).unwrap().is_symmetric(),
                "{spec} unit {i} (seed {SEED}): x*x not symmetric"
            );
        }
    }
}

/// Criterion 8: the star image of 50 random closed subgroups of V(KQ₈)
/// (closures of at most two random units) is again a subgroup.
#[test]
fn a08_star_images_of_random_subgroups_are_subgroups() {
    let q8 = ctx("q8", 2);
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for round in 0..50 {
        let mut gens = vec![random_normalized_unit(&q8, &mut rng)];
        if round % 2 == 1 {
            gens.push(random_normalized_unit(&q8, &mut rng));
        }
        let h = closure(&q8, &gens, CAP).unwrap();
        let image = star_image(&h);
        assert!(
            is_subgroup(&image),
            "round {round} (seed {SEED}): star image not a subgroup"
        );
    }
}

/// Criterion 9: for every catalog group of order ≤ 16 at p = 2, the
/// structural symmetric-unit enumeration equals the brute-force filter of
/// the fully enumerated V, and |V| = 2^(|G|−1); all under a minute.
#[test]
fn a09_structural_symmetric_units_match_brute_force() {
    let start = Instant::now();
    for spec in sweep_specs(2) {
        let c = ctx(spec, 2);
        let v = enumerate_normalized_units(&c, CAP).unwrap();
        assert_eq!(
            v.len() as u64,
            1u64 << (c.group().order() - 1),
            "{spec}: |V| ≠ 2^(|G|−1)"
        );
        let brute: HashSet<AlgebraElement> =
            v.iter().filter(|x| x.is_symmetric()).cloned().collect();
        let structural: HashSet<AlgebraElement> =
            symmetric_units(&c, CAP).unwrap().iter().cloned().collect();
        assert_eq!(brute, structural, "{spec}: filters disagree");
    }
    let elapsed = start.elapsed();
    assert!(
        elapsed < Duration::from_secs(60),
        "took {elapsed:?}, expected < 1 min"
    );
}

/// Criterion 10: mul(x, inverse_normalized(x)) = 1 exactly for 1000 seeded
/// random normalized units in each of KQ₈ and K(C₄×C₂).
#[test]
fn a10_geometric_series_inversion_is_exact() {
    for spec in ["q8", "c4xc2"] {
        let c = ctx(spec, 2);
        let one = AlgebraElement::one(&c);
        let mut rng = ChaCha8Rng::seed_from_u64(SEED);
        for i in 0..1000 {
            let x = random_normalized_unit(&c, &mut rng);
            let inv = x.inverse_normalized().unwrap();
            assert_eq!(
                x.mul(&inv).unwrap(),
                one,
                "{spec} unit {i} (seed {SEED}): x·x⁻¹ ≠ 1"
            );
        }
    }
}

/// Criterion 11: the CLI contract — stable JSON schema that round-trips
/// byte-identically, and exit statuses 0 (computed), 2 (bad input),
/// 3 (cap exceeded).
#[test]
fn a11_cli_contract() {
    // Successful computation exits 0 and emits the full schema.
    let out = gabra()
        .args(["check", "--group", "q8", "--prime", "2", "--format", "json"])
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let value: Value = serde_json::from_str(text.trim()).unwrap();
    for field in [
        "group",
        "prime",
        "order_group",
        "order_V",
        "order_S",
        "order_H",
        "S_is_subgroup",
        "S_central",
        "H_symmetric",
        "conjecture_holds",
        "enumerated_V",
    ] {
        assert!(value.get(field).is_some(), "missing field {field}");
    }
    // Round trip through the typed report is byte-identical.
    let typed: ConjectureReport = serde_json::from_str(text.trim()).unwrap();
    assert_eq!(serde_json::to_string(&typed).unwrap(), text.trim());

    // Bad input exits 2: non-modular prime, unknown group atom.
    let non_modular = gabra()
        .args(["check", "--group", "q8", "--prime", "3"])
        .output()
        .unwrap();
    assert_eq!(non_modular.status.code(), Some(2));
    assert!(
        !non_modular.stderr.is_empty(),
        "diagnostic expected on stderr"
    );
    let unknown = gabra()
        .args(["check", "--group", "zz", "--prime", "2"])
        .output()
        .unwrap();
    assert_eq!(unknown.status.code(), Some(2));

    // Cap exhaustion exits 3, for enumeration and closure guards alike.
    let capped = gabra()
        .args(["units", "--group", "q8", "--prime", "2", "--cap", "10"])
        .output()
        .unwrap();
    assert_eq!(capped.status.code(), Some(3));
    let capped_closure = gabra()
        .args([
            "closure",
            "--group",
            "q8",
            "--prime",
            "2",
            "--with-symmetric",
            "--cap",
            "20",
        ])
        .output()
        .unwrap();
    assert_eq!(capped_closure.status.code(), Some(3));
}
