//! Acceptance suite: one test per criterion, each printing a PASS line with
//! its runtime (visible with `cargo test --test acceptance -- --nocapture`).
//! Every tolerance is pinned here; a failed assertion is a failed criterion.

use csl_core::gaussian::{gi, parse_gaussian_rational, GaussianRational};
use csl_core::par::ExecMode;
use csl_core::series::{CountingFunction, PredictedGrowth};
use csl_core::shifted::{self, ClosureOutcome, ShiftClass, ShiftedOcKind};
use csl_core::square::{self, PlanarCoincidence};
use csl_core::{arith, cubic, diamond, lattice, oracle, series};
use num_bigint::BigInt;
use num_traits::Zero;
use std::time::Instant;

fn report(criterion: &str, start: Instant) {
    println!("acceptance {criterion}: PASS ({} ms)", start.elapsed().as_millis());
}

fn shift(s: &str) -> GaussianRational {
    parse_gaussian_rational(s).expect("valid shift literal")
}

/// Criterion 1: square-lattice golden table for m <= 100 by enumeration
/// plus CSL deduplication.
#[test]
fn criterion_01_square_golden_table() {
    let t0 = Instant::now();
    let mut counts = vec![0u64; 101];
    let mut seen = std::collections::BTreeSet::new();
    for c in square::enumerate_coincidences(100, true) {
        if seen.insert(c.csl().basis().key()) {
            counts[c.sigma_u64() as usize] += 1;
        }
    }
    for m in 1..=100u64 {
        assert_eq!(counts[m as usize], series::f_z2(m), "f(m) mismatch at m={m}");
    }
    for m in [5u64, 13, 17, 25, 29, 37, 41, 53, 61, 73] {
        assert_eq!(counts[m as usize], 2, "m={m}");
    }
    assert_eq!(counts[65], 4);
    assert!(t0.elapsed().as_secs_f64() < 1.0, "criterion 1 exceeded 1 s");
    report("1 (square golden table m<=100)", t0);
}

/// Criterion 2a: the half-diagonal shift keeps the full coincidence set at
/// every index up to 100.
#[test]
fn criterion_02a_delaunay_center_shift() {
    let t0 = Instant::now();
    let x = ShiftClass::rational(shift("(1+1i)/2"));
    for c in square::enumerate_coincidences(100, true) {
        assert!(shifted::is_member(&c, &x), "{c} must stay a coincidence");
    }
    assert!(t0.elapsed().as_secs_f64() < 5.0);
    report("2a (x=(1+i)/2 keeps OC)", t0);
}

/// Criterion 2b: x = 1/2 halves the rotation counts: f-hat = 2 f.
#[test]
fn criterion_02b_half_shift_rotation_counts() {
    let t0 = Instant::now();
    let f = CountingFunction::ShiftedSquare(ShiftClass::rational(shift("1/2")));
    let rot = f.rotation_counts(100, ExecMode::auto()).unwrap();
    let csl = f.coefficients(100, ExecMode::auto()).unwrap();
    for m in 1..=100u64 {
        assert_eq!(csl[m as usize], series::f_z2(m), "f at m={m}");
        assert_eq!(rot[m as usize], 2 * csl[m as usize], "f-hat at m={m}");
        assert_eq!(
            2 * rot[m as usize],
            4 * series::f_z2(m),
            "half of the unshifted rotation count at m={m}"
        );
    }
    assert!(t0.elapsed().as_secs_f64() < 5.0);
    report("2b (x=1/2 halves rotation counts)", t0);
}

/// Criterion 2c: x = 1/5 reproduces the series with the 5-part removed
/// through m = 229.
#[test]
fn criterion_02c_fifth_shift_series() {
    let t0 = Instant::now();
    let f = CountingFunction::ShiftedSquare(ShiftClass::rational(shift("1/5")));
    let table = f.coefficients(229, ExecMode::auto()).unwrap();
    for m in 1..=229u64 {
        let want = if m % 5 == 0 { 0 } else { series::f_z2(m) };
        assert_eq!(table[m as usize], want, "m={m}");
    }
    // the published coefficients
    for m in [13u64, 17, 29, 37, 41, 53, 61, 73, 89, 97, 101, 109, 113, 137, 149, 157, 169, 173, 181, 193, 197, 229] {
        assert_eq!(table[m as usize], 2, "m={m}");
    }
    assert_eq!(table[221], 4);
    assert_eq!(table[5], 0);
    assert_eq!(table[25], 0);
    assert!(t0.elapsed().as_secs_f64() < 5.0);
    report("2c (x=1/5 series through 229)", t0);
}

/// Criterion 2d: x = (2+i)/5 doubles the 5-part and fails to be a group.
#[test]
fn criterion_02d_exnotgroup_series_and_closure() {
    let t0 = Instant::now();
    let x = shift("(2+1i)/5");
    let f = CountingFunction::ShiftedSquare(ShiftClass::rational(x.clone()));
    let table = f.coefficients(73, ExecMode::auto()).unwrap();
    let rule = |m: u64| -> u64 {
        arith::factorize_u64(m)
            .into_iter()
            .map(|(p, _r)| if p == 5 { 4u64 } else if p % 4 == 1 { 2 } else { 0 })
            .product()
    };
    for m in 1..=73u64 {
        assert_eq!(table[m as usize], rule(m), "m={m}");
    }
    assert_eq!(table[5], 4);
    assert_eq!(table[65], 8);
    match shifted::group_closure_check(&x, 25) {
        ClosureOutcome::Counterexample { first, second, product } => {
            assert!(first.is_reflection() && second.is_reflection());
            assert!(!shifted::is_member(&product, &ShiftClass::rational(x)));
        }
        other => panic!("expected a composition counterexample, got {other:?}"),
    }
    assert!(t0.elapsed().as_secs_f64() < 5.0);
    report("2d (x=(2+i)/5 series and closure failure)", t0);
}

/// Criterion 2e: x = 1/3 + i/6 filters rotation counts by m = 1 (mod 3).
#[test]
fn criterion_02e_sixth_shift_rotations() {
    let t0 = Instant::now();
    let f = CountingFunction::ShiftedSquare(ShiftClass::rational(shift("1/3+1/6i")));
    let rot = f.rotation_counts(97, ExecMode::auto()).unwrap();
    for m in 1..=97u64 {
        let want = if m % 3 == 1 { series::f_z2(m) } else { 0 };
        assert_eq!(rot[m as usize], want, "m={m}");
    }
    for (m, f) in [(13u64, 2), (25, 2), (37, 2), (61, 2), (73, 2), (85, 4), (97, 2)] {
        assert_eq!(rot[m as usize], f, "published coefficient at m={m}");
    }
    assert_eq!(rot[5], 0);
    assert!(t0.elapsed().as_secs_f64() < 5.0);
    report("2e (x=1/3+i/6 rotation counts through 97)", t0);
}

/// Criterion 3: all classification branches for irrational shifts, one
/// representative input per branch.
#[test]
fn criterion_03_irrational_branches() {
    let t0 = Instant::now();
    use ShiftedOcKind::*;
    let cases: Vec<(ShiftClass, ShiftedOcKind)> = vec![
        // (i) a irrational, 2b integral: the real-axis reflection
        (
            ShiftClass::IrrationalRe { b: csl_core::mat::rat(1, 2) },
            SingleReflection(PlanarCoincidence::symmetry_reflection(csl_core::gaussian::Unit::One)),
        ),
        // (i) otherwise: trivial
        (ShiftClass::IrrationalRe { b: csl_core::mat::rat(1, 3) }, Trivial),
        // (ii) b irrational, 2a integral: T_{1,-1}
        (
            ShiftClass::IrrationalIm { a: csl_core::mat::rat(3, 2) },
            SingleReflection(PlanarCoincidence::symmetry_reflection(
                csl_core::gaussian::Unit::MinusOne,
            )),
        ),
        // (iii)(a) independent: trivial
        (ShiftClass::Independent, Trivial),
        // (iii)(b) p2 q2 even, q1 | 2 q2
        (
            ShiftClass::dependent(1, 2, 1, 2).unwrap(),
            SingleReflection(
                PlanarCoincidence::from_ratio(&gi(1, 2), csl_core::gaussian::Unit::One, true)
                    .unwrap(),
            ),
        ),
        // (iii)(b) p2 q2 odd, q1 | q2
        (
            ShiftClass::dependent(1, 3, 1, 3).unwrap(),
            SingleReflection(
                PlanarCoincidence::from_ratio(&gi(2, 1), csl_core::gaussian::Unit::I, true)
                    .unwrap(),
            ),
        ),
        // (iii)(b) even case without divisibility: trivial
        (ShiftClass::dependent(1, 5, 1, 2).unwrap(), Trivial),
        // (iii)(b) odd case without divisibility: trivial
        (ShiftClass::dependent(1, 3, 1, 1).unwrap(), Trivial),
    ];
    for (sc, want) in cases {
        let got = shifted::classify_irrational(&sc).unwrap();
        assert_eq!(got.kind, want, "classification of {sc:?}");
        assert_eq!(got.is_group, Some(true));
    }
    report("3 (irrational shift classification, all branches)", t0);
}

/// Criterion 4: cubic golden table for m <= 25 by enumeration.
#[test]
fn criterion_04_cubic_golden_table() {
    let t0 = Instant::now();
    let counts = cubic::count_csls(25, ExecMode::auto());
    let published = [
        (3u64, 4u64),
        (5, 6),
        (7, 8),
        (9, 12),
        (11, 12),
        (13, 14),
        (15, 24),
        (17, 18),
        (19, 20),
        (21, 32),
        (23, 24),
    ];
    for (m, f) in published {
        assert_eq!(counts[m as usize], f, "published coefficient at m={m}");
    }
    for m in 1..=25u64 {
        assert_eq!(counts[m as usize], series::f_z3(m), "rule at m={m}");
    }
    assert!(t0.elapsed().as_secs_f64() < 5.0, "criterion 4 exceeded 5 s");
    report("4 (cubic golden table m<=25)", t0);
}

/// Criterion 5: span-set bases equal the oracle intersection and carry the
/// odd-part index for every primitive quaternion with norm up to 100.
#[test]
fn criterion_05_spanset_soundness() {
    let t0 = Instant::now();
    let r = oracle::verify::suite_cubic(100, ExecMode::auto());
    assert!(r.passed(), "{:?}", r.checks.iter().filter(|c| !c.pass).collect::<Vec<_>>());
    assert!(t0.elapsed().as_secs_f64() < 30.0, "criterion 5 exceeded 30 s");
    report("5 (span-set soundness |q|^2 <= 100)", t0);
}

/// Criterion 6: diamond golden table for m <= 17 and the closed case table
/// against the multilattice engine for |q|^2 <= 50.
#[test]
fn criterion_06_diamond_golden_and_engine() {
    let t0 = Instant::now();
    let published = [1u64, 1, 4, 0, 6, 4, 8, 0, 12, 6, 12, 0, 14, 8, 24, 0, 18];
    for (i, want) in published.iter().enumerate() {
        let m = i as u64 + 1;
        assert_eq!(diamond::f_diamond(m), *want, "rule at m={m}");
    }
    let counts = diamond::count_csmls(17, ExecMode::auto());
    for (i, want) in published.iter().enumerate() {
        assert_eq!(counts[i + 1], *want, "enumerated CSML count at m={}", i + 1);
    }
    let ml = diamond::diamond_multilattice();
    for q in csl_core::quat::enumerate_primitive(50) {
        for improper in [false, true] {
            let iso = diamond::DiamondIsometry::new(q, improper).unwrap();
            let closed = diamond::diamond_coincidence(&iso).unwrap();
            let engine = lattice::multilattice_coincidence(&ml, &iso.matrix(), ExecMode::auto())
                .unwrap()
                .expect("coincidence");
            assert_eq!(closed.index, engine.index, "q={q} improper={improper}");
            assert_eq!(
                closed.cosets.coset_count(),
                engine.coset_count(),
                "q={q} improper={improper}"
            );
        }
    }
    assert!(t0.elapsed().as_secs_f64() < 30.0, "criterion 6 exceeded 30 s");
    report("6 (diamond golden table and engine agreement)", t0);
}

/// Criterion 7: the oracle sweep: every CSL/ACSL/coset from the closed-form
/// modules is reproduced by the independent Diophantine intersection.
#[test]
fn criterion_07_oracle_equivalence_sweep() {
    let t0 = Instant::now();
    for r in [
        oracle::verify::suite_square(200, ExecMode::auto()),
        oracle::verify::suite_shifted(200, ExecMode::auto()),
        oracle::verify::suite_cubic(50, ExecMode::auto()),
        oracle::verify::suite_diamond(50, ExecMode::auto()),
        oracle::verify::suite_multilattice(50, ExecMode::auto()),
    ] {
        assert!(
            r.passed(),
            "suite {} failed: {:?}",
            r.suite,
            r.checks.iter().filter(|c| !c.pass).collect::<Vec<_>>()
        );
    }
    report("7 (oracle equivalence sweep)", t0);
}

/// Criterion 8: the exact property suites over their stated ranges.
#[test]
fn criterion_08_property_suites() {
    let t0 = Instant::now();
    let shifts: Vec<GaussianRational> = [
        "(1+1i)/2",
        "1/2",
        "(1+1i)/3",
        "(2+1i)/4",
        "1/5",
        "2/5",
        "(2+1i)/5",
        "(2+1i)/6",
    ]
    .iter()
    .map(|s| shift(s))
    .collect();

    // inverse closure and coprime-index product closure, indices <= 65
    for x in &shifts {
        let sc = ShiftClass::rational(x.clone());
        let members: Vec<PlanarCoincidence> =
            shifted::enumerate_shifted(x, 65, ExecMode::auto())
                .into_iter()
                .map(|m| m.coincidence)
                .collect();
        for c in &members {
            assert!(shifted::is_member(&c.inverse(), &sc), "inverse closure at x={x}: {c}");
        }
        for a in &members {
            for b in &members {
                if arith::gcd_u64(a.sigma_u64(), b.sigma_u64()) == 1 {
                    let p = b.compose(a);
                    assert!(
                        shifted::is_member(&p, &sc),
                        "coprime product at x={x}: {a} then {b}"
                    );
                }
            }
        }
        // SOC closure under composition on all rotation pairs <= 65
        let rotations: Vec<&PlanarCoincidence> =
            members.iter().filter(|c| !c.is_reflection()).collect();
        for a in &rotations {
            for b in &rotations {
                let p = b.compose(a);
                assert!(shifted::is_member(&p, &sc), "SOC closure at x={x}: {a} then {b}");
            }
        }
    }

    // divisor, intersection and conjugate laws on enumerated ranges
    let all = square::enumerate_coincidences(100, false);
    let member = |c: &PlanarCoincidence, q: &csl_core::gaussian::GaussianInt| {
        shifted::soc_membership_rational(c, q).unwrap()
    };
    for (q1, q2) in [
        (gi(1, 1), gi(2, 0)),
        (gi(2, 0), gi(4, 0)),
        (gi(3, 0), gi(6, 0)),
        (gi(1, 2), gi(5, 0)),
    ] {
        for c in &all {
            if member(c, &q2) {
                assert!(member(c, &q1), "divisor law {q1} | {q2}: {c}");
            }
        }
    }
    for (q1, q2, l) in [
        (gi(2, 0), gi(3, 0), gi(6, 0)),
        (gi(1, 2), gi(1, -2), gi(5, 0)),
        (gi(3, 0), gi(5, 0), gi(15, 0)),
        (gi(2, 0), gi(5, 0), gi(10, 0)),
    ] {
        for c in &all {
            assert_eq!(
                member(c, &q1) && member(c, &q2),
                member(c, &l),
                "intersection law lcm({q1},{q2})={l}: {c}"
            );
        }
    }
    for q in [gi(1, 2), gi(3, 2), gi(2, 1), gi(3, 4)] {
        for c in &all {
            assert_eq!(member(c, &q), member(c, &q.conj()), "conjugate law {q}: {c}");
        }
    }

    // odd q: at most one unit per numerator, q never divides the index,
    // and nontrivial members satisfy 2*sigma > q^2 — exhaustive to 200
    for q in [3i64, 5, 7, 9] {
        let qg = gi(q, 0);
        for z in square::enumerate_numerators(200) {
            let mut units = Vec::new();
            for unit in csl_core::gaussian::Unit::ALL {
                let c = PlanarCoincidence::new(z.clone(), unit, false).unwrap();
                if member(&c, &qg) {
                    units.push(unit);
                }
            }
            assert!(units.len() <= 1, "odd q={q} unit uniqueness at z={z}");
            if !units.is_empty() {
                assert!(
                    !(&z.norm() % BigInt::from(q)).is_zero(),
                    "odd q={q} divides index at z={z}"
                );
                if z != gi(1, 0) {
                    assert!(
                        BigInt::from(2) * z.norm() > BigInt::from(q * q),
                        "index bound at q={q}, z={z}"
                    );
                }
            }
        }
    }
    report("8 (exact property suites)", t0);
}

/// Criterion 9: summatory asymptotics, non-normative tolerances pinned to
/// 2% (square, N = 10^6) and 5% (diamond, N = 10^4).
#[test]
fn criterion_09_asymptotics() {
    let t0 = Instant::now();
    let square_start = Instant::now();
    let ratio = CountingFunction::SquareCsl
        .summatory_ratio(1_000_000, &PredictedGrowth::square_family(), ExecMode::auto())
        .unwrap();
    assert!(
        (0.98..=1.02).contains(&ratio),
        "square summatory over N/pi out of band: {ratio}"
    );
    assert!(square_start.elapsed().as_secs_f64() < 60.0);

    let diamond_start = Instant::now();
    let ratio = CountingFunction::DiamondCsml
        .summatory_ratio(10_000, &PredictedGrowth::diamond_family(), ExecMode::auto())
        .unwrap();
    assert!(
        (0.95..=1.05).contains(&ratio),
        "diamond summatory over 9N^2/(2 pi^2) out of band: {ratio}"
    );
    assert!(diamond_start.elapsed().as_secs_f64() < 60.0);
    report("9 (summatory asymptotics)", t0);
}
