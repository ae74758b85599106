//! Acceptance suite: one test per criterion, each printing a single
//! `criterion NN name: PASS/FAIL` line before asserting.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use rivergeo::error::Error;
use rivergeo::metric::{distance, Point};
use rivergeo::noncompact::{mnc, modulus_estimate, nuc_characteristic, Measure};
use rivergeo::properties::{prolongation_set, run_check, Check, ProlongationResult};
use rivergeo::segment::{metric_segment, midpoint, point_at_arclength};
use rivergeo::sets::{convex_hull, distance_to_set, is_convex, SetDescription};
use rivergeo::wstructure::{takahashi_residual, w_point, w_point_arclength};

fn conclude(number: u32, name: &str, pass: bool) {
    println!(
        "criterion {number:02} {name}: {}",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "criterion {number:02} {name} failed");
}

fn pt(x: f64, y: f64) -> Point {
    Point::new(x, y).unwrap()
}

fn random_point(rng: &mut impl Rng) -> Point {
    pt(rng.gen_range(-10.0..=10.0), rng.gen_range(-10.0..=10.0))
}

#[test]
fn criterion_01_metric_axioms() {
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let start = Instant::now();
    let mut ok = true;
    for _ in 0..100_000 {
        let (p, q, r) = (
            random_point(&mut rng),
            random_point(&mut rng),
            random_point(&mut rng),
        );
        let (dpq, dqr, dpr) = (distance(p, q), distance(q, r), distance(p, r));
        ok &= dpq >= 0.0 && distance(p, p) == 0.0;
        ok &= dpq.to_bits() == distance(q, p).to_bits();
        ok &= dpr <= dpq + dqr + 1e-9;
        ok &= dpq <= dpr + dqr + 1e-9;
        ok &= dqr <= dpq + dpr + 1e-9;
    }
    let elapsed = start.elapsed();
    conclude(
        1,
        "metric axioms",
        ok && elapsed < Duration::from_secs(1),
    );
}

#[test]
fn criterion_02_takahashi_structure() {
    let mut rng = ChaCha8Rng::seed_from_u64(202);
    let start = Instant::now();
    let mut min_residual = f64::INFINITY;
    let mut max_disagreement: f64 = 0.0;
    for i in 0..100_000u32 {
        let u = random_point(&mut rng);
        let v1 = random_point(&mut rng);
        let v2 = random_point(&mut rng);
        let lambda = match i % 50 {
            0 => 0.0,
            1 => 1.0,
            _ => rng.gen_range(0.0..=1.0),
        };
        min_residual = min_residual.min(takahashi_residual(u, v1, v2, lambda).unwrap());
        let direct = w_point(v1, v2, lambda).unwrap();
        let via_arclength = w_point_arclength(v1, v2, lambda).unwrap();
        max_disagreement = max_disagreement
            .max((direct.x() - via_arclength.x()).abs())
            .max((direct.y() - via_arclength.y()).abs());
    }
    let elapsed = start.elapsed();
    conclude(
        2,
        "takahashi structure",
        min_residual >= -1e-9 && max_disagreement <= 1e-12 && elapsed < Duration::from_secs(2),
    );
}

#[test]
fn criterion_03_exact_reference_values() {
    let mut ok = distance(pt(1.0, 1.0), pt(3.0, 0.0)) == 3.0;

    let m = midpoint(pt(0.0, 2.0), pt(4.0, 1.0));
    ok &= m.x() == 1.5 && m.y() == 0.0;

    let prolonged = prolongation_set(pt(1.0, 1.0), pt(3.0, 0.0), 4.0).unwrap();
    match prolonged.result {
        ProlongationResult::Polyline { ref vertices } => {
            ok &= vertices.contains(&pt(3.0, 1.0)) && vertices.contains(&pt(3.0, -1.0));
        }
        ProlongationResult::Unique { .. } => ok = false,
    }
    conclude(3, "exact reference values", ok);
}

/// A segment counterexample must have both endpoints in the set while some
/// interior quarter point leaves it by more than the tolerance.
fn counterexample_exits(set: &SetDescription, p: Point, q: Point) -> bool {
    if !(set.contains(p, 1e-9) && set.contains(q, 1e-9)) {
        return false;
    }
    let d = distance(p, q);
    [0.25, 0.5, 0.75].iter().any(|&t| {
        let z = point_at_arclength(p, q, t * d).unwrap();
        distance_to_set(z, set) > 1e-9
    })
}

#[test]
fn criterion_04_box_convexity_law() {
    let grid: Vec<f64> = (0..20).map(|i| -2.0 + 0.2 * i as f64).collect();
    let start = Instant::now();
    let mut ok = true;
    for &a in &grid {
        for &b in &grid {
            if a > b {
                continue;
            }
            for &c in &grid {
                for &d in &grid {
                    if c > d {
                        continue;
                    }
                    let set = SetDescription::Box { a, b, c, d };
                    let verdict = is_convex(&set).unwrap();
                    let expected = (c <= 0.0 && 0.0 <= d) || a == b;
                    ok &= verdict.convex == expected;
                    if !verdict.convex {
                        let (p, q) = verdict.counterexample.expect("counterexample present");
                        ok &= counterexample_exits(&set, p, q);
                    }
                }
            }
        }
    }
    let elapsed = start.elapsed();
    conclude(
        4,
        "box convexity law",
        ok && elapsed < Duration::from_secs(5),
    );
}

#[test]
fn criterion_05_hull_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(505);
    let start = Instant::now();
    let mut disagreements = 0u64;
    let mut probe_failures = 0u64;
    for _ in 0..200 {
        let n = rng.gen_range(1..=6);
        let cloud: Vec<Point> = (0..n)
            .map(|_| {
                pt(
                    rng.gen_range(-5i32..=5) as f64,
                    rng.gen_range(-5i32..=5) as f64,
                )
            })
            .collect();
        let hull = convex_hull(&cloud).unwrap();

        let mut members: Vec<Point> = Vec::new();
        for i in 0..100 {
            for j in 0..100 {
                let g = pt(-5.0 + 0.1 * i as f64, -5.0 + 0.1 * j as f64);
                let oracle_in = cloud.iter().enumerate().any(|(k, &p)| {
                    cloud[k..].iter().any(|&q| {
                        distance(p, g) + distance(g, q) <= distance(p, q) + 1e-6
                    })
                });
                let hull_in = hull.contains(g, 1e-6);
                if oracle_in != hull_in {
                    disagreements += 1;
                } else if hull_in {
                    members.push(g);
                }
            }
        }

        // Combination stability: weighted points of hull members stay inside.
        if members.len() >= 2 {
            let picks = [
                (members[0], members[members.len() - 1]),
                (members[0], members[members.len() / 2]),
                (members[members.len() / 2], members[members.len() - 1]),
            ];
            for (p, q) in picks {
                for j in 0..=100 {
                    let w = w_point(p, q, j as f64 / 100.0).unwrap();
                    if !hull.contains(w, 1e-6) {
                        probe_failures += 1;
                    }
                }
            }
        }
    }
    let elapsed = start.elapsed();
    conclude(
        5,
        "hull oracle",
        disagreements == 0 && probe_failures == 0 && elapsed < Duration::from_secs(30),
    );
}

/// Random convex primitive plus a point certified to lie inside it.
fn random_convex_with_witness(rng: &mut impl Rng) -> (SetDescription, Point) {
    match rng.gen_range(0..3) {
        0 => {
            let center = random_point(rng);
            let radius = rng.gen_range(0.1..=4.0);
            (
                SetDescription::Ball {
                    center,
                    radius,
                    closed: true,
                },
                center,
            )
        }
        1 => {
            let a = rng.gen_range(-8.0..=8.0);
            let b = a + rng.gen_range(0.0..=4.0);
            let c = -rng.gen_range(0.0..=4.0);
            let d = rng.gen_range(0.0..=4.0);
            (
                SetDescription::Box { a, b, c, d },
                pt((a + b) / 2.0, 0.0),
            )
        }
        _ => {
            let x = rng.gen_range(-8.0..=8.0);
            let y_lo = rng.gen_range(-5.0..=4.0);
            let y_hi = y_lo + rng.gen_range(0.1..=3.0);
            (
                SetDescription::VerticalSegment { x, y_lo, y_hi },
                pt(x, (y_lo + y_hi) / 2.0),
            )
        }
    }
}

/// Random convex primitive guaranteed to contain the given point.
fn random_convex_through(rng: &mut impl Rng, w: Point) -> SetDescription {
    match rng.gen_range(0..3) {
        0 => {
            let center = random_point(rng);
            let radius = distance(center, w) * (1.0 + rng.gen_range(0.0..=0.5)) + 0.1;
            SetDescription::Ball {
                center,
                radius,
                closed: true,
            }
        }
        1 => SetDescription::Box {
            a: w.x() - rng.gen_range(0.0..=3.0),
            b: w.x() + rng.gen_range(0.0..=3.0),
            c: w.y().min(0.0) - rng.gen_range(0.0..=3.0),
            d: w.y().max(0.0) + rng.gen_range(0.0..=3.0),
        },
        _ => SetDescription::VerticalSegment {
            x: w.x(),
            y_lo: w.y() - rng.gen_range(0.1..=3.0),
            y_hi: w.y() + rng.gen_range(0.1..=3.0),
        },
    }
}

#[test]
fn criterion_06_union_of_intersecting_convex_sets() {
    let mut rng = ChaCha8Rng::seed_from_u64(606);
    let mut ok = true;
    for _ in 0..1000 {
        let (first, witness) = random_convex_with_witness(&mut rng);
        let second = random_convex_through(&mut rng, witness);
        ok &= first.contains(witness, 1e-12) && second.contains(witness, 1e-12);
        ok &= is_convex(&first).unwrap().convex && is_convex(&second).unwrap().convex;
        let union = SetDescription::UnionOf {
            members: vec![first, second],
        };
        ok &= is_convex(&union).unwrap().convex;
    }
    conclude(6, "union of intersecting convex sets", ok);
}

fn random_valid_set(rng: &mut impl Rng) -> SetDescription {
    fn primitive(rng: &mut impl Rng) -> SetDescription {
        match rng.gen_range(0..4) {
            0 => SetDescription::FinitePoints {
                points: (0..rng.gen_range(1..=4))
                    .map(|_| random_point(rng))
                    .collect(),
            },
            1 => {
                let a = rng.gen_range(-8.0..=8.0);
                let c = rng.gen_range(-8.0..=8.0);
                SetDescription::Box {
                    a,
                    b: a + rng.gen_range(0.0..=4.0),
                    c,
                    d: c + rng.gen_range(0.0..=4.0),
                }
            }
            2 => SetDescription::Ball {
                center: random_point(rng),
                radius: rng.gen_range(0.1..=4.0),
                closed: true,
            },
            _ => {
                let y_lo = rng.gen_range(-8.0..=8.0);
                SetDescription::VerticalSegment {
                    x: rng.gen_range(-8.0..=8.0),
                    y_lo,
                    y_hi: y_lo + rng.gen_range(0.0..=4.0),
                }
            }
        }
    }
    if rng.gen_bool(0.3) {
        SetDescription::UnionOf {
            members: (0..rng.gen_range(1..=4)).map(|_| primitive(rng)).collect(),
        }
    } else {
        primitive(rng)
    }
}

#[test]
fn criterion_07_noncompactness_identities() {
    let mut ok = true;

    let box_report = mnc(&SetDescription::Box {
        a: 0.0,
        b: 1.0,
        c: -0.2,
        d: 0.5,
    });
    ok &= box_report.y_star == 0.5;

    let ball_report = mnc(&SetDescription::Ball {
        center: pt(0.3, -0.3),
        radius: 1.0,
        closed: true,
    });
    ok &= ball_report.y_star == 0.7;

    let vertical_ball = mnc(&SetDescription::Ball {
        center: pt(0.0, 2.0),
        radius: 1.0,
        closed: true,
    });
    ok &= vertical_ball.y_star == 0.0;

    let mut rng = ChaCha8Rng::seed_from_u64(707);
    for _ in 0..200 {
        let set = random_valid_set(&mut rng);
        let report = mnc(&set);
        ok &= report.alpha == 2.0 * report.chi;
        ok &= report.beta == report.chi;
        ok &= report.chi == report.y_star;
    }
    conclude(7, "noncompactness identities", ok);
}

#[test]
fn criterion_08_moduli_sweeps() {
    let start = Instant::now();
    let mut ok = true;
    for i in 1..=10 {
        let eps = 0.2 * i as f64;
        let estimate = modulus_estimate(Measure::Alpha, eps, 200).unwrap();
        ok &= (estimate.value - eps / 2.0).abs() <= 0.02;
    }
    for measure in [Measure::Chi, Measure::Beta] {
        for i in 1..=10 {
            let eps = 0.1 * i as f64;
            let estimate = modulus_estimate(measure, eps, 200).unwrap();
            ok &= (estimate.value - eps).abs() <= 0.02;
        }
    }
    let alpha_grid: Vec<f64> = (1..=20).map(|i| i as f64 / 10.0).collect();
    let unit_grid: Vec<f64> = (1..=10).map(|i| i as f64 / 10.0).collect();
    ok &= nuc_characteristic(Measure::Alpha, &alpha_grid, 60).unwrap() == 0.0;
    ok &= nuc_characteristic(Measure::Chi, &unit_grid, 60).unwrap() == 0.0;
    ok &= nuc_characteristic(Measure::Beta, &unit_grid, 60).unwrap() == 0.0;
    let elapsed = start.elapsed();
    conclude(
        8,
        "moduli sweeps",
        ok && elapsed < Duration::from_secs(60),
    );
}

#[test]
fn criterion_09_convexity_property_suites() {
    let suites = [
        Check::BallConvexity,
        Check::DistanceConvexity,
        Check::Npbc,
        Check::StrictConvexity,
        Check::TotalConvexity,
        Check::ExternalConvexity,
    ];
    let mut ok = true;
    for check in suites {
        let start = Instant::now();
        let report = run_check(check, 100_000, 909, 1e-9);
        ok &= report.violations == 0 && start.elapsed() < Duration::from_secs(10);
    }
    let strictness = run_check(Check::StrictConvexity, 10_000, 910, 1e-9);
    ok &= strictness.min_margin > 0.0;
    conclude(9, "convexity property suites", ok);
}

#[test]
fn criterion_10_uniform_convexity() {
    let admissible = run_check(Check::UniformConvexity, 100_000, 1010, 1e-9);
    let degenerate = run_check(Check::UniformConvexityDegenerate, 100_000, 1011, 1e-9);
    conclude(
        10,
        "uniform convexity",
        admissible.violations == 0
            && admissible.samples == 100_000
            && degenerate.violations == 0
            && degenerate.samples == 100_000,
    );
}

fn run_cli(args: &[&str]) -> (String, bool) {
    let output = Command::new(env!("CARGO_BIN_EXE_rivergeo"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        String::from_utf8(output.stdout).expect("utf8 output"),
        output.status.success(),
    )
}

#[test]
fn criterion_11_cli_golden_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let path = |name: &str| dir.path().join(name);
    let file = |name: &str, text: &str| {
        std::fs::write(path(name), text).unwrap();
        path(name).to_str().unwrap().to_owned()
    };

    let points = file("points.json", "[[0,2],[3,-1],[-1,0]]");
    let tall_box = file("tall_box.json", r#"{"type":"box","a":0,"b":1,"c":1,"d":2}"#);
    let two_boxes = file(
        "two_boxes.json",
        r#"{"type":"union","members":[
            {"type":"box","a":0,"b":2,"c":-1,"d":1},
            {"type":"box","a":1,"b":3,"c":-0.5,"d":2}
        ]}"#,
    );
    let ball = file("ball.json", r#"{"type":"ball","center":[0.3,-0.3],"radius":1}"#);
    let scene_full = file(
        "scene_full.json",
        r#"{
            "viewport": {"x": [-3, 5], "y": [-3, 4]},
            "objects": [
                {"kind": "ball", "center": [0, 0.5], "radius": 2},
                {"kind": "segment", "from": [0, 2], "to": [4, 1]},
                {"kind": "hull", "points": [[0, 2], [3, -1], [-1, 0]]},
                {"kind": "box", "a": 1, "b": 3, "c": -1, "d": 1},
                {"kind": "point", "at": [4, 1]}
            ]
        }"#,
    );
    let scene_high_ball = file(
        "scene_high_ball.json",
        r#"{"viewport": {"x": [-2, 2], "y": [-1, 4]},
            "objects": [{"kind": "ball", "center": [0, 2], "radius": 1}]}"#,
    );
    let scene_empty = file(
        "scene_empty.json",
        r#"{"viewport": {"x": [-1, 1], "y": [-1, 1]}, "objects": []}"#,
    );

    let json_commands: Vec<Vec<&str>> = vec![
        vec!["dist", "[1,1]", "[3,0]"],
        vec!["segment", "[0,2]", "[4,1]"],
        vec!["w", "[0,2]", "[4,1]", "0.25"],
        vec!["w", "[0,2]", "[4,1]", "1.0"],
        vec!["midpoint", "[0,2]", "[4,1]"],
        vec!["hull", &points],
        vec!["convex-check", &tall_box],
        vec!["convex-check", &two_boxes],
        vec!["mnc", &ball],
        vec!["modulus", "--measure", "alpha", "--eps", "1.0", "--grid", "60"],
        vec!["modulus", "--measure", "chi", "--eps", "0.5", "--grid", "60"],
        vec!["nuc-sweep", "--grid", "40"],
        vec!["properties", "--check", "takahashi", "--samples", "2000", "--seed", "7"],
        vec![
            "properties",
            "--check",
            "w-point-agreement",
            "--samples",
            "2000",
            "--seed",
            "7",
        ],
    ];

    let mut ok = true;
    for args in &json_commands {
        let (first, first_ok) = run_cli(args);
        let (second, second_ok) = run_cli(args);
        ok &= first_ok && second_ok;
        ok &= first == second;
        ok &= serde_json::from_str::<serde_json::Value>(&first).is_ok();
    }

    // Emitted set descriptions must parse back into the library's own types.
    let (hull_text, _) = run_cli(&["hull", &points]);
    ok &= serde_json::from_str::<SetDescription>(&hull_text).is_ok();

    for scene in [&scene_full, &scene_high_ball, &scene_empty] {
        let out_a = path("a.svg");
        let out_b = path("b.svg");
        let (_, ok_a) = run_cli(&["render", scene, "-o", out_a.to_str().unwrap()]);
        let (_, ok_b) = run_cli(&["render", scene, "-o", out_b.to_str().unwrap()]);
        ok &= ok_a && ok_b;
        ok &= std::fs::read(&out_a).unwrap() == std::fs::read(&out_b).unwrap();
    }

    conclude(11, "cli golden outputs", ok);
}

#[test]
fn rejects_are_reported_not_panicked() {
    assert_eq!(
        w_point(pt(0.0, 2.0), pt(4.0, 1.0), 1.5),
        Err(Error::LambdaOutOfRange(1.5))
    );
    assert!(matches!(
        modulus_estimate(Measure::Alpha, 3.0, 50),
        Err(Error::EpsilonOutOfRange { .. })
    ));
}
