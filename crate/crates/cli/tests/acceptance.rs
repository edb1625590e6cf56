//! End-to-end acceptance gate: one test per headline result, each printing a
//! single `acceptance N (...): PASS|FAIL` line (run with `--nocapture` to see
//! them).  Everything here is exact integer / GF(2) arithmetic.

use std::panic::{catch_unwind, resume_unwind, UnwindSafe};
use std::process::Command;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use kncover::builtin;
use kncover::cover::{build_action, classify, orbits, theta_shift, Sign};
use kncover::linalg::{Gf2Vector, Int, IntMatrix, IntVector};
use kncover::monodromy::{
    focus_focus_shear, h1_theta, AffineRep, AffineTriple, Letter, Presentation, Word,
};
use kncover::monoid::{
    build_local_model, ghost_rank, monodromy_cone, monoid_generators, RationalCone,
};
use kncover::Scenario;

/// Run `check`, print the verdict line for this criterion, and re-raise any
/// failure so the harness still reports it.
fn criterion(number: usize, label: &str, check: impl FnOnce() + UnwindSafe) {
    let outcome = catch_unwind(check);
    let verdict = if outcome.is_ok() { "PASS" } else { "FAIL" };
    println!("acceptance {number} ({label}): {verdict}");
    if let Err(payload) = outcome {
        resume_unwind(payload);
    }
}

fn run_cli(args: &[&str]) -> (i32, String) {
    let output = Command::new(env!("CARGO_BIN_EXE_kncover"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        output.status.code().expect("exit code"),
        String::from_utf8(output.stdout).expect("utf-8 stdout"),
    )
}

fn shear(rows: [[Int; 2]; 2]) -> IntMatrix {
    IntMatrix::new(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
}

fn zero_two() -> Gf2Vector {
    Gf2Vector::zeros(2)
}

#[test]
fn acceptance_1_quartic_real_locus_classification() {
    criterion(1, "quartic K3 real-locus classification", || {
        let (code, stdout) = run_cli(&[
            "classify",
            "example:quartic-k3",
            "--fiber",
            "+1",
            "--format",
            "json",
        ]);
        assert_eq!(code, 0);
        let value: serde_json::Value = serde_json::from_str(&stdout).unwrap();
        assert_eq!(value["ok"], serde_json::json!(true));
        let components = value["report"]["components"].as_array().unwrap();
        assert_eq!(components.len(), 2);
        let mut degrees: Vec<u64> = components
            .iter()
            .map(|c| c["degree"].as_u64().unwrap())
            .collect();
        degrees.sort();
        assert_eq!(degrees, [1, 3]);
        for c in components {
            let branch = c["branch"].as_array().unwrap();
            assert_eq!(branch.len(), 24);
            let simple = branch.iter().filter(|b| b["simple"] == true).count();
            match c["degree"].as_u64().unwrap() {
                1 => {
                    assert_eq!(c["euler"].as_i64().unwrap(), 2);
                    assert_eq!(c["genus"].as_i64().unwrap(), 0);
                    assert_eq!(simple, 0);
                }
                3 => {
                    assert_eq!(c["euler"].as_i64().unwrap(), -18);
                    assert_eq!(c["genus"].as_i64().unwrap(), 10);
                    // 24 simple branch points: one transposition each.
                    assert_eq!(simple, 24);
                    for b in branch {
                        let mut lengths: Vec<u64> = b["cycle_lengths"]
                            .as_array()
                            .unwrap()
                            .iter()
                            .map(|l| l.as_u64().unwrap())
                            .collect();
                        lengths.sort();
                        assert_eq!(lengths, [1, 2]);
                    }
                }
                d => panic!("unexpected degree {d}"),
            }
        }
    });
}

#[test]
fn acceptance_2_shear_permutations_on_the_half_integral_points() {
    criterion(2, "shear permutations fix u0 and transpose pairs", || {
        let shears = [
            shear([[1, 0], [1, 1]]),
            shear([[2, -1], [1, 0]]),
            shear([[1, -1], [0, 1]]),
        ];
        let presentation = Presentation::new(
            vec!["g1".into(), "g2".into(), "g3".into()],
            Vec::new(),
            true,
        )
        .unwrap();
        let triples = shears
            .iter()
            .map(|t| AffineTriple {
                t: t.clone(),
                lambda: IntVector::zeros(2),
                theta: zero_two(),
            })
            .collect();
        let rep = AffineRep::new(2, presentation, triples).unwrap();
        let action = build_action(&rep, Sign::Plus).unwrap();

        // Fiber indexing: 0 = (0,0), 1 = (1,0), 2 = (0,1), 3 = (1,1).
        assert_eq!(Gf2Vector::from_index(1, 2).bits(), [1u8, 0].as_slice());
        assert_eq!(Gf2Vector::from_index(2, 2).bits(), [0u8, 1].as_slice());
        assert_eq!(Gf2Vector::from_index(3, 2).bits(), [1u8, 1].as_slice());

        // The three shears act as the transpositions (23), (12), (13).
        assert_eq!(action.maps[0], vec![0, 1, 3, 2]);
        assert_eq!(action.maps[1], vec![0, 2, 1, 3]);
        assert_eq!(action.maps[2], vec![0, 3, 2, 1]);
        for map in &action.maps {
            assert_eq!(map[0], 0, "u0 must be fixed");
        }
    });
}

#[test]
fn acceptance_3_focus_focus_shears_from_direction_and_conormal() {
    criterion(3, "focus-focus shear matrices", || {
        let cases = [
            ([0, 1], [1, 0], [[1, 0], [1, 1]]),
            ([1, 1], [1, -1], [[2, -1], [1, 0]]),
            ([1, 0], [0, -1], [[1, -1], [0, 1]]),
        ];
        for (d, n, expected) in cases {
            let got = focus_focus_shear(&IntVector::from(d), &IntVector::from(n)).unwrap();
            assert_eq!(got, shear(expected), "shear for d={d:?}, n={n:?}");
        }
    });
}

#[test]
fn acceptance_4_alternating_sphere_rep_covers() {
    criterion(4, "24-shear sphere rep: orbits by theta class", || {
        let Some(Scenario::Monodromy(scenario)) = builtin::by_name("simple-k3") else {
            panic!("simple-k3 is a monodromy scenario");
        };
        let rep = scenario.to_rep().unwrap();
        // The sphere relation closes exactly: the composite is the identity.
        assert!(rep.verify().unwrap().is_ok());

        // theta = 0: two components.
        let plain = orbits(&build_action(&rep, Sign::Plus).unwrap());
        assert_eq!(plain.len(), 2);

        // Every nonzero class returned by h1_theta: a single size-4 orbit.
        let h1 = h1_theta(&rep, 16).unwrap();
        assert!(h1.representatives.len() > 1);
        assert!(h1.representatives[0]
            .iter()
            .all(|v| v.bits().iter().all(|&b| b == 0)));
        for class in &h1.representatives[1..] {
            let twisted = rep.with_theta(class).unwrap();
            assert!(twisted.verify().unwrap().is_ok());
            let parts = orbits(&build_action(&twisted, Sign::Plus).unwrap());
            assert_eq!(parts.len(), 1);
            assert_eq!(parts[0].len(), 4);
        }
    });
}

fn random_unimodular(rng: &mut ChaCha8Rng, n: usize) -> IntMatrix {
    let mut acc = IntMatrix::identity(n);
    for _ in 0..4 {
        if n == 1 {
            break;
        }
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n);
        while j == i {
            j = rng.gen_range(0..n);
        }
        let mut rows: Vec<Vec<Int>> = (0..n)
            .map(|r| (0..n).map(|c| Int::from(r == c)).collect())
            .collect();
        rows[i][j] = rng.gen_range(-2..=2);
        acc = acc.mat_mul(&IntMatrix::new(rows).unwrap()).unwrap();
    }
    acc
}

fn random_rep(rng: &mut ChaCha8Rng, generators: usize, rank: usize) -> AffineRep {
    let names = (1..=generators).map(|i| format!("g{i}")).collect();
    let presentation = Presentation::new(names, Vec::new(), true).unwrap();
    let triples = (0..generators)
        .map(|_| AffineTriple {
            t: random_unimodular(rng, rank),
            lambda: IntVector((0..rank).map(|_| rng.gen_range(-3..=3)).collect()),
            theta: Gf2Vector::new((0..rank).map(|_| rng.gen_range(0..=1)).collect()).unwrap(),
        })
        .collect();
    AffineRep::new(rank, presentation, triples).unwrap()
}

#[test]
fn acceptance_5_fiber_cardinalities_over_both_signs() {
    criterion(5, "fiber sizes sum to 2^(n+1)", || {
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        for _ in 0..100 {
            let rank = rng.gen_range(1..=4);
            let generators = rng.gen_range(1..=4);
            let rep = random_rep(&mut rng, generators, rank);
            let mut total = 0usize;
            for sign in [Sign::Plus, Sign::Minus] {
                let action = build_action(&rep, sign).unwrap();
                total += action.fiber_size();
                let degrees: usize = orbits(&action).iter().map(Vec::len).sum();
                assert_eq!(degrees, 1 << rank);
            }
            assert_eq!(total, 1 << (rank + 1));
        }
    });
}

/// Per component: the degree and the sorted branch cycle data.
type Shape = Vec<(usize, Vec<(String, Vec<usize>)>)>;

/// Degree plus sorted branch cycle data per component, sorted overall.
fn shape(rep: &AffineRep, sign: Sign) -> Shape {
    let action = build_action(rep, sign).unwrap();
    let report = classify(&action, &rep.presentation.generators, 2).unwrap();
    let mut shape: Shape = report
        .components
        .iter()
        .map(|c| {
            let mut cycles: Vec<(String, Vec<usize>)> = c
                .branch
                .iter()
                .map(|b| (b.generator.clone(), b.cycle_lengths.clone()))
                .collect();
            cycles.sort();
            (c.degree, cycles)
        })
        .collect();
    shape.sort();
    shape
}

#[test]
fn acceptance_6_twisted_cocycle_property_suite() {
    criterion(6, "composition law, inverses, gauge invariance", || {
        let mut rng = ChaCha8Rng::seed_from_u64(4096);
        let random_word = |rng: &mut ChaCha8Rng, generators: usize, max_len: usize| -> Word {
            let len = rng.gen_range(0..=max_len);
            (0..len)
                .map(|_| Letter {
                    gen: rng.gen_range(0..generators),
                    inverse: rng.gen_bool(0.5),
                })
                .collect()
        };
        for _ in 0..500 {
            let rank = rng.gen_range(1..=3);
            let rep = random_rep(&mut rng, 3, rank);
            let w1 = random_word(&mut rng, 3, 5);
            let w2 = random_word(&mut rng, 3, 5);
            let mut both = w1.clone();
            both.extend_from_slice(&w2);
            let concatenated = rep.compose(&both).unwrap();
            let pieced = rep
                .compose(&w1)
                .unwrap()
                .then(&rep.compose(&w2).unwrap())
                .unwrap();
            assert_eq!(concatenated, pieced);

            let mut cancelling = w1.clone();
            cancelling.extend(w1.iter().rev().map(|l| Letter {
                gen: l.gen,
                inverse: !l.inverse,
            }));
            assert!(rep.compose(&cancelling).unwrap().is_identity());
        }
        // Gauge invariance: coboundary shifts never change the classification.
        for _ in 0..100 {
            let rank = rng.gen_range(1..=3);
            let generators = rng.gen_range(1..=3);
            let rep = random_rep(&mut rng, generators, rank);
            let phi = Gf2Vector::new((0..rank).map(|_| rng.gen_range(0..=1)).collect()).unwrap();
            let shifted = theta_shift(&rep, &phi).unwrap();
            for sign in [Sign::Plus, Sign::Minus] {
                assert_eq!(shape(&rep, sign), shape(&shifted, sign));
            }
        }
    });
}

#[test]
fn acceptance_7_focus_focus_local_model() {
    criterion(
        7,
        "focus-focus local model, standardness, ghost rank",
        || {
            let Some(Scenario::LocalModel(scenario)) = builtin::by_name("focus-focus") else {
                panic!("focus-focus is a local-model scenario");
            };
            let spec = scenario.to_spec();
            let model = build_local_model(&spec, 4).unwrap();
            assert!(model.consistent);
            let gens = model.monoid.generators();
            assert_eq!(gens.len(), 4);
            // The single relation g1 + g2 = g3 + g4 among the four generators.
            let sum = |a: &IntVector, b: &IntVector| a.add(b).unwrap();
            assert_eq!(sum(&gens[0], &gens[3]), sum(&gens[1], &gens[2]));

            // Standardness of the monodromy cone: interval [0,1] yes, [0,2] no.
            let standard = monodromy_cone(&spec).unwrap();
            assert!(standard.is_standard);
            let mut stretched = spec.clone();
            stretched.polytopes[1] = vec![IntVector::from([0]), IntVector::from([2])];
            let wide = monodromy_cone(&stretched).unwrap();
            assert!(!wide.is_standard);

            // Ghost rank of the vertex {0} of the base monoid N: real fiber 2.
            let line = RationalCone::new(1, vec![IntVector::from([1])]).unwrap();
            let naturals = monoid_generators(&line, 4).unwrap();
            let ghost = ghost_rank(&naturals, &[]).unwrap();
            assert_eq!(ghost.rank, 1);
            assert_eq!(ghost.fiber_size, 2);
        },
    );
}

#[test]
fn acceptance_8_kink_balancing_at_the_quartic_vertices() {
    criterion(
        8,
        "quartic kinks balance; a bad kink breaks both ends",
        || {
            let Some(Scenario::Complex(scenario)) = builtin::by_name("quartic-k3") else {
                panic!("quartic-k3 is a complex scenario");
            };
            let data = scenario.to_complex().unwrap();
            let report = data.complex.validate_balancing(&data.mpl).unwrap();
            assert!(report.is_balanced());

            // Bumping one kink to 2 breaks balancing at both ends of that edge,
            // and nowhere else.
            let edge = data.complex.cell_index(1, "e01").unwrap();
            let ends: Vec<String> = data.complex.cells(1)[edge]
                .faces
                .iter()
                .map(|&v| data.complex.cells(0)[v].id.clone())
                .collect();
            let bumped = data.mpl.with_kink(edge, 2);
            let broken = data.complex.validate_balancing(&bumped).unwrap();
            let mut violated: Vec<String> =
                broken.violations.iter().map(|v| v.vertex.clone()).collect();
            violated.sort();
            let mut expected = ends.clone();
            expected.sort();
            assert_eq!(violated, expected);
            assert_eq!(violated.len(), 2);
        },
    );
}
