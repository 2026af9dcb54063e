//! Acceptance suite: one test per criterion, each printing a pass/fail
//! line (run with `cargo test -p henon-cli --test acceptance -- --nocapture`
//! to see them). Tolerances are pinned in the asserts.

use std::fs;
use std::process::Command;
use std::time::Instant;

use henon_core::sampling::SampleRng;
use henon_core::{
    bottcher_numeric, bottcher_radius, classify_point, construct_partner,
    enumerate_rigidity_params, eval_forward, green_numeric, q_polynomial, verify_composition_identity,
    verify_q_relation, verify_series_relations, verify_unequal_jacobian, zeta_series, Complex64,
    CoverDynamics, CoverPoint, DeckIndex, MonicCenteredHenon, OrbitClassification, Point2,
    Precision, QPolynomial, RigidityParams,
};
use henon_cli::render::{render_slice, SliceSpec};
use tempfile::TempDir;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn worked_map() -> MonicCenteredHenon {
    MonicCenteredHenon::new(vec![c(0.0, 0.0)], c(1.0, 0.0)).unwrap()
}

/// The shared pair population: 20 random maps per degree 2..=6 with
/// coefficients in the closed unit disc and `1/2 <= |delta| <= 2`.
fn population() -> Vec<MonicCenteredHenon> {
    let mut rng = SampleRng::new(0xacce_97ed);
    let mut maps = Vec::new();
    for d in 2..=6usize {
        for _ in 0..20 {
            let coeffs = (0..d - 1).map(|_| rng.in_disc(1.0)).collect();
            let delta = rng.in_annulus(0.5, 2.0);
            maps.push(MonicCenteredHenon::new(coeffs, delta).unwrap());
        }
    }
    maps
}

fn report_line(criterion: u32, label: &str, detail: String) {
    println!("criterion {criterion} ({label}): PASS ({detail})");
}

#[test]
fn criterion_1_worked_degree_two_example() {
    let start = Instant::now();
    let h = worked_map();

    // q-poly returns Q(z) = z^3 + 1/4
    let q = q_polynomial(&h, 8).unwrap();
    let mut worst_q = (q.coeff_a(1)).norm();
    worst_q = worst_q.max((q.coeff_a(0) - c(0.25, 0.0)).norm());
    assert!(worst_q <= 1e-12, "Q residual {worst_q:e}");

    // zeta series at order 8: frozen values from the exact expansion of
    // the telescoping product (see the rational oracle in henon-core)
    let z = zeta_series(&h, 8).unwrap();
    let frozen = [
        (1, 0.0),
        (2, -0.25),
        (3, 0.0),
        (4, 0.0),
        (5, -7.0 / 32.0),
    ];
    let mut worst_l = 0.0_f64;
    for (k, want) in frozen {
        worst_l = worst_l.max((z.coeff(k) - c(want, 0.0)).norm());
    }
    assert!(worst_l <= 1e-12, "L residual {worst_l:e}");

    // cross-oracle: Fourier fit of the numeric Böttcher function on a circle
    let radius = 40.0;
    assert!(radius > bottcher_radius(&h));
    let samples = 128;
    let zero = c(0.0, 0.0);
    let mut worst_fit = 0.0_f64;
    for k in 1..=5usize {
        let mut acc = c(0.0, 0.0);
        for j in 0..samples {
            let theta = 2.0 * std::f64::consts::PI * j as f64 / samples as f64;
            let y = Complex64::from_polar(radius, theta);
            let phi = bottcher_numeric(&h, Point2::new(zero, y), 1e-16).unwrap();
            acc += (phi - y) * Complex64::from_polar(1.0, k as f64 * theta);
        }
        let fitted = acc / samples as f64 * radius.powi(k as i32);
        worst_fit = worst_fit.max((fitted - z.coeff(k)).norm());
    }
    assert!(worst_fit <= 1e-4, "Fourier fit residual {worst_fit:e}");

    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "took {elapsed:?}");
    report_line(
        1,
        "worked d=2 example",
        format!("Q {worst_q:.1e}, L {worst_l:.1e}, Fourier {worst_fit:.1e}, {elapsed:?}"),
    );
}

#[test]
fn criterion_2_composition_identity_population() {
    let start = Instant::now();
    let mut worst = 0.0_f64;
    let mut pairs = 0usize;
    for h in population() {
        for params in enumerate_rigidity_params(h.degree()) {
            let f = construct_partner(&h, &params);
            let rep = verify_composition_identity(&h, &f, &params);
            assert!(rep.overall, "d={} {params:?}: {rep:?}", h.degree());
            worst = worst.max(rep.max_residual());
            pairs += 1;
        }
    }
    assert!(worst <= 1e-12);
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 10.0, "took {elapsed:?}");
    report_line(
        2,
        "composition identity",
        format!("{pairs} pairs, worst residual {worst:.1e}, {elapsed:?}"),
    );
}

#[test]
fn criterion_3_q_coefficient_relation() {
    let start = Instant::now();
    let mut worst = 0.0_f64;
    let mut pairs = 0usize;
    for h in population() {
        let d = h.degree();
        for a in 0..(d * d - 1) as u64 {
            let params = RigidityParams::new(d, a, 0).unwrap();
            let f = construct_partner(&h, &params);
            let rep = verify_q_relation(&h, &f, &params, 2 * d, 1e-9, Precision::Double).unwrap();
            assert!(rep.overall, "d={d} a={a}: {rep:?}");
            worst = worst.max(rep.max_residual());
            pairs += 1;
        }
    }
    let elapsed = start.elapsed();
    report_line(
        3,
        "Q coefficient relation",
        format!("{pairs} pairs, worst residual {worst:.1e}, {elapsed:?}"),
    );
}

#[test]
fn criterion_4_series_relations() {
    let start = Instant::now();
    let mut worst = 0.0_f64;
    let mut pairs = 0usize;
    for h in population() {
        let d = h.degree();
        for a in 0..(d * d - 1) as u64 {
            let params = RigidityParams::new(d, a, 0).unwrap();
            let f = construct_partner(&h, &params);
            let rep =
                verify_series_relations(&h, &f, &params, 2 * d, 1e-9, Precision::Double).unwrap();
            assert!(rep.overall, "d={d} a={a}: {rep:?}");
            worst = worst.max(rep.max_residual());
            pairs += 1;
        }
    }
    let elapsed = start.elapsed();
    report_line(
        4,
        "tail-coefficient relations",
        format!("{pairs} pairs, worst residual {worst:.1e}, {elapsed:?}"),
    );
}

#[test]
fn criterion_5_unequal_jacobian_suite() {
    let start = Instant::now();
    // (i) delta_F^{d-1} = delta_H^{d-1} for every constructed pair,
    // (iii) lifted iterate matches the closed form for d <= 4
    let mut worst_jac = 0.0_f64;
    let mut worst_lift = 0.0_f64;
    for h in population() {
        let d = h.degree();
        for params in enumerate_rigidity_params(d) {
            let f = construct_partner(&h, &params);
            let dh = h.delta().powu(d as u32 - 1);
            let df = f.delta().powu(d as u32 - 1);
            let r = (dh - df).norm() / dh.norm().max(1.0);
            assert!(r <= 1e-12, "jacobian power residual {r:e}");
            worst_jac = worst_jac.max(r);
        }
        if d <= 4 {
            let params = RigidityParams::new(d, 1, if d > 2 { 1 } else { 0 }).unwrap();
            let f = construct_partner(&h, &params);
            let rep = verify_unequal_jacobian(&h, &f, &params, 1e-8, Precision::Double).unwrap();
            let lift = rep.check("lift_iterate_closed_form").unwrap();
            assert!(lift.passed, "{rep:?}");
            worst_lift = worst_lift.max(lift.max_residual);
            assert!(lift.max_residual <= 1e-10);
        }
    }

    // (ii) alpha-tilde search succeeds for d = 3 pairs with gamma != 1
    let mut rng = SampleRng::new(0x5000);
    let mut worst_search = 0.0_f64;
    for _ in 0..10 {
        let coeffs = (0..2).map(|_| rng.in_disc(1.0)).collect();
        let h = MonicCenteredHenon::new(coeffs, rng.in_annulus(0.5, 2.0)).unwrap();
        for a in 0..8u64 {
            let params = RigidityParams::new(3, a, 1).unwrap();
            assert!(!params.has_equal_jacobian());
            let f = construct_partner(&h, &params);
            let rep = verify_unequal_jacobian(&h, &f, &params, 1e-8, Precision::Double).unwrap();
            let search = rep.check("alpha_tilde_search").unwrap();
            assert!(search.passed, "{rep:?}");
            worst_search = worst_search.max(search.max_residual);
        }
    }
    let elapsed = start.elapsed();
    report_line(
        5,
        "iterated-lift suite",
        format!(
            "jacobian {worst_jac:.1e}, lift {worst_lift:.1e}, search {worst_search:.1e}, {elapsed:?}"
        ),
    );
}

#[test]
fn criterion_6_functional_equations() {
    let start = Instant::now();
    let maps = vec![
        worked_map(),
        MonicCenteredHenon::new(vec![c(0.4, 0.3), c(-0.2, 0.5)], c(1.2, -0.4)).unwrap(),
    ];
    let mut worst_phi = 0.0_f64;
    let mut worst_green = 0.0_f64;
    let mut worst_log = 0.0_f64;
    for map in &maps {
        let d = map.degree();
        let rp = bottcher_radius(map);
        let growth = henon_core::filtration_radius_value(map).ln();
        let mut rng = SampleRng::new(0xfe0d + d as u64);
        for _ in 0..500 {
            let ny = rp * (1.0 + 4.0 * rng.unit());
            let y = rng.on_circle(ny);
            let x = rng.in_disc(0.99 * ny);
            let p = Point2::new(x, y);
            let hp = eval_forward(map, p);

            // phi(H(P)) = phi(P)^d, relative 1e-8
            let phi = bottcher_numeric(map, p, 1e-15).unwrap();
            let phi_h = bottcher_numeric(map, hp, 1e-15).unwrap();
            let pw = phi.powu(d as u32);
            let r = (phi_h - pw).norm() / pw.norm();
            assert!(r <= 1e-8, "phi functional equation residual {r:e}");
            worst_phi = worst_phi.max(r);

            // G(H(P)) = d G(P) within combined error bounds
            let g = green_numeric(map, p, 1e-12, 400);
            let gh = green_numeric(map, hp, 1e-12, 400);
            let slack = gh.error_bound + d as f64 * g.error_bound + 1e-12;
            let diff = (gh.value - d as f64 * g.value).abs();
            assert!(diff <= slack, "green functional equation: {diff:e} > {slack:e}");
            worst_green = worst_green.max(diff);

            // G = log|phi|, 1e-8
            let lr = (g.value - phi.norm().ln()).abs();
            assert!(lr <= 1e-8 + g.error_bound, "G vs log|phi|: {lr:e}");
            worst_log = worst_log.max(lr);

            // logarithmic sandwich with L = log(2 + sum|a_i| + |delta|)
            let logp = y.norm().ln().max(0.0);
            assert!(g.value >= logp - growth - 1e-12 && g.value <= logp + growth + 1e-12);
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 5.0, "took {elapsed:?}");
    report_line(
        6,
        "functional equations",
        format!("phi {worst_phi:.1e}, green {worst_green:.1e}, log {worst_log:.1e}, {elapsed:?}"),
    );
}

#[test]
fn criterion_7_deck_suite() {
    let start = Instant::now();
    let mut rng = SampleRng::new(0xdecaf);
    let mut worst = 0.0_f64;
    for d in 2..=4usize {
        let coeffs = (0..d - 1).map(|_| rng.in_disc(1.0)).collect();
        let map = MonicCenteredHenon::new(coeffs, rng.in_annulus(0.5, 2.0)).unwrap();
        let q = q_polynomial(&map, d).unwrap();
        let cov = CoverDynamics::new(q, map.delta()).unwrap();
        let rep = cov.deck_suite(100, 1e-10);
        assert!(rep.overall, "d={d}: {rep:?}");
        worst = worst.max(rep.max_residual());
    }

    // the d=2 hand examples, reproduced to 1e-12:
    // gamma_{1/2}(z, zeta) = (z + 4 zeta^3, -zeta) and lift ∘ gamma_{1/2} = lift
    let q = QPolynomial::from_lower_coeffs(vec![c(0.0, 0.0), c(0.25, 0.0)]).unwrap();
    let cov = CoverDynamics::new(q, c(1.0, 0.0)).unwrap();
    let half = DeckIndex::new(1, 1, 2).unwrap();
    let mut hand_rng = SampleRng::new(0x7a2d);
    let mut worst_hand = 0.0_f64;
    for _ in 0..100 {
        let zeta = hand_rng.in_annulus(1.0 + 1e-9, 2.0);
        let z = hand_rng.in_disc(2.0);
        let p = CoverPoint::new(z, zeta).unwrap();
        let g = cov.deck(&half, &p);
        let expect_z = z + 4.0 * zeta.powu(3);
        worst_hand = worst_hand
            .max((g.z() - expect_z).norm())
            .max((g.zeta() + zeta).norm());
        let lhs = cov.lift(&g);
        let rhs = cov.lift(&p);
        worst_hand = worst_hand
            .max((lhs.z() - rhs.z()).norm())
            .max((lhs.zeta() - rhs.zeta()).norm());
    }
    assert!(worst_hand <= 1e-12, "hand example residual {worst_hand:e}");

    let elapsed = start.elapsed();
    report_line(
        7,
        "deck transformations",
        format!("suite {worst:.1e}, hand examples {worst_hand:.1e}, {elapsed:?}"),
    );
}

#[test]
fn criterion_8_negative_control_exit_code() {
    let start = Instant::now();
    let dir = TempDir::new().unwrap();
    let h = MonicCenteredHenon::new(vec![c(0.35, -0.15), c(0.2, 0.45)], c(1.05, 0.3)).unwrap();
    let params = RigidityParams::new(3, 2, 0).unwrap();
    let f = construct_partner(&h, &params);
    let mut coeffs = f.coeffs().to_vec();
    coeffs[0] += c(1e-3, 0.0);
    let bad = MonicCenteredHenon::new(coeffs, f.delta()).unwrap();

    let to_spec = |m: &MonicCenteredHenon| {
        serde_json::json!({
            "degree": m.degree(),
            "coeffs": m.coeffs().iter().map(|c| [c.re, c.im]).collect::<Vec<_>>(),
            "delta": [m.delta().re, m.delta().im],
        })
    };
    let pair = serde_json::json!({
        "H": to_spec(&h), "F": to_spec(&bad), "alpha_index": 2, "gamma_index": 0
    });
    let pair_path = dir.path().join("pair.json");
    fs::write(&pair_path, pair.to_string()).unwrap();

    let output = Command::new(env!("CARGO_BIN_EXE_henon"))
        .args(["verify", "--pair", pair_path.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(1), "verify must exit 1");
    let report: serde_json::Value = serde_json::from_slice(&output.stdout).unwrap();
    assert_eq!(report["overall"], serde_json::json!(false));
    let comp = report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == "composition_identity")
        .unwrap();
    let residual = comp["max_residual"].as_f64().unwrap();
    assert!(
        (1e-4..=1e-2).contains(&residual),
        "perturbation of 1e-3 reported as {residual:e}"
    );
    let elapsed = start.elapsed();
    report_line(
        8,
        "negative control",
        format!("exit 1, residual {residual:.2e}, {elapsed:?}"),
    );
}

#[test]
fn criterion_9_render_determinism() {
    let start = Instant::now();
    let map = worked_map();
    let slice = SliceSpec::new(
        Point2::new(c(0.0, 0.0), c(0.0, 0.0)),
        Point2::new(c(1.0, 0.0), c(0.0, 0.0)),
        Point2::new(c(0.0, 0.0), c(1.0, 0.0)),
        [-2.5, 2.5, -2.5, 2.5],
        256,
        256,
    )
    .unwrap();

    let pool = |n: usize| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .unwrap()
    };
    let run_a = pool(1).install(|| render_slice(&map, &slice, 50, 1e-9, None));
    let run_b = pool(1).install(|| render_slice(&map, &slice, 50, 1e-9, None));
    let run_c = pool(8).install(|| render_slice(&map, &slice, 50, 1e-9, None));

    assert_eq!(run_a.ppm_escape, run_b.ppm_escape);
    assert_eq!(run_a.ppm_green, run_b.ppm_green);
    assert_eq!(run_a.csv, run_b.csv);
    assert_eq!(run_a.checksum, run_b.checksum);
    assert_eq!(run_a.ppm_escape, run_c.ppm_escape);
    assert_eq!(run_a.ppm_green, run_c.ppm_green);
    assert_eq!(run_a.csv, run_c.csv);
    assert_eq!(run_a.checksum, run_c.checksum);

    // classification layer equals pointwise classify_point
    let mut rng = SampleRng::new(0x9e9e);
    for _ in 0..1000 {
        let col = (rng.unit() * 256.0) as u32 % 256;
        let row = (rng.unit() * 256.0) as u32 % 256;
        let p = slice.point_at(col, row);
        let want = match classify_point(&map, p, 50) {
            OrbitClassification::Escaping { entry_step } => entry_step as i64,
            OrbitClassification::Undecided { .. } => -1,
        };
        assert_eq!(run_a.steps[(row * 256 + col) as usize], want);
    }

    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 5.0, "took {elapsed:?}");
    report_line(
        9,
        "render determinism",
        format!("checksum {:016x}, {elapsed:?}", run_a.checksum),
    );
}
