//! Acceptance criteria. Every test prints exactly one `PASS`/`FAIL` line and
//! then asserts the same condition. Run with `--nocapture` to see the lines.

use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use clocklab::classical::brackets::DEFAULT_STEP;
use clocklab::classical::{
    dirac_table_error, integrate, proper_time_residual, ClockSystem, Electromagnetic,
    ExtendedPhaseSpacePoint, StaticField,
};
use clocklab::gedanken::{
    box_uncertainties, efield_uncertainties, BoxExperiment, EFieldExperiment,
};
use clocklab::quantum::{
    chirped_gaussian_state, commutator_residual, evolve, expectation, gaussian_state,
    optimize_clock_width, salecker_wigner_check, tau_moments_simulated, two_hump_state,
    uncertainty_product, variance_law_predict, GaussianClockSpec, MomentumSpaceState, Observable,
};
use clocklab::scenario::probe_point;
use clocklab::UnitContext;

fn verdict(n: u32, title: &str, passed: bool, detail: String) {
    println!(
        "{} criterion {n:>2} {title}: {detail}",
        if passed { "PASS" } else { "FAIL" }
    );
    assert!(passed, "criterion {n} ({title}) failed: {detail}");
}

fn natural() -> UnitContext {
    UnitContext::natural()
}

fn log_uniform(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    rng.gen_range(lo.ln()..hi.ln()).exp()
}

#[test]
fn c01_gedanken_cancellation() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut worst: f64 = 0.0;
    for units in [UnitContext::si(), natural()] {
        for _ in 0..100 {
            let dq = log_uniform(&mut rng, 1e-12, 1.0);
            let t = log_uniform(&mut rng, 1e-6, 1e3);
            let g = log_uniform(&mut rng, 1e-3, 1e3);
            let r = box_uncertainties(&BoxExperiment::new(dq, t, g).unwrap(), &units);
            worst = worst.max((r.product_ratio - 1.0).abs());

            let v = rng.gen_range(1e-6..0.99) * units.c;
            let e = log_uniform(&mut rng, 1e-3, 1e6);
            let q = log_uniform(&mut rng, 1e-20, 1.0);
            let r = efield_uncertainties(&EFieldExperiment::new(dq, t, e, q, v).unwrap(), &units)
                .unwrap();
            worst = worst.max((r.product_ratio - 1.0).abs());
        }
    }
    let secs = start.elapsed().as_secs_f64();
    verdict(
        1,
        "gedanken product ratio",
        worst <= 1e-12 && secs < 1.0,
        format!("max |ratio - 1| = {worst:.2e} (tol 1e-12) over 400 sets, {secs:.2} s (limit 1 s)"),
    );
}

#[test]
fn c02_dirac_bracket_table() {
    let start = Instant::now();
    let worst = (0..50)
        .map(|i| dirac_table_error(&probe_point(2024, i), DEFAULT_STEP))
        .fold(0.0, f64::max);
    let secs = start.elapsed().as_secs_f64();
    verdict(
        2,
        "Dirac bracket table",
        worst <= 1e-6 && secs < 5.0,
        format!("max entry error {worst:.2e} (tol 1e-6) at 50 points, h = {DEFAULT_STEP:e}, {secs:.2} s (limit 5 s)"),
    );
}

fn flat_run(v: f64) -> (f64, f64) {
    let c = 1.0;
    let flat = StaticField::flat(c);
    let sys = ClockSystem::new(&flat, 0.0, c);
    let p = v / (c * (c * c - v * v).sqrt());
    let traj = integrate(
        &sys,
        ExtendedPhaseSpacePoint::on_surface(0.0, 1.0, [0.0; 3], [p, 0.0, 0.0]),
        10.0,
        1e-3,
    )
    .unwrap();
    (traj.last().tau, proper_time_residual(&traj, &sys).unwrap())
}

fn held_clock(sys: &ClockSystem<'_, StaticField>, q: f64, t: f64) -> f64 {
    let start = ExtendedPhaseSpacePoint::on_surface(0.0, 1.0, [q, 0.0, 0.0], [0.0; 3]);
    integrate(sys, start, t, 1e-3).unwrap().last().tau
}

#[test]
fn c03_proper_time_and_redshift() {
    let start = Instant::now();
    let (tau, residual) = flat_run(0.6);
    let tau_err = (tau - 8.0).abs();

    let (g, t) = (1e-6, 10.0);
    let field = StaticField::uniform_lapse(g, 1.0);
    let sys = ClockSystem::new(&field, 0.0, 1.0);
    let floor = held_clock(&sys, 0.0, t);
    let redshift_err = [0.5, 1.0, 2.0]
        .iter()
        .map(|&q| ((held_clock(&sys, q, t) - floor) / t / (g * q) - 1.0).abs())
        .fold(0.0, f64::max);
    let secs = start.elapsed().as_secs_f64();
    verdict(
        3,
        "proper time and weak-field rate",
        tau_err <= 1e-9 && residual <= 1e-8 && redshift_err <= 1e-8 && secs < 5.0,
        format!(
            "|tau - 8| = {tau_err:.2e} (tol 1e-9), residual {residual:.2e} (tol 1e-8), \
             redshift rel. error {redshift_err:.2e} (tol 1e-8), {secs:.2} s (limit 5 s)"
        ),
    );
}

#[test]
fn c04_constraint_and_conservation_drift() {
    let start = Instant::now();
    let c = 1.0;
    let fields = [
        (StaticField::flat(c), 0.0, [0.6, 0.0, 0.0], [0.0; 3]),
        (
            StaticField::uniform_lapse(1e-6, c),
            0.0,
            [0.0; 3],
            [1.0, 0.0, 0.0],
        ),
        (
            StaticField::isotropic(1e-4, c),
            0.0,
            [0.0, 0.3, 0.0],
            [2.0, 0.0, 0.0],
        ),
        (
            StaticField::flat(c).with_em(Electromagnetic::Electric {
                field: [0.5, 0.0, 0.0],
            }),
            1.0,
            [0.0; 3],
            [0.0; 3],
        ),
    ];
    let mut worst: f64 = 0.0;
    let mut steps = 0;
    for (field, charge, p, x) in &fields {
        let sys = ClockSystem::new(field, *charge, c);
        let traj = integrate(
            &sys,
            ExtendedPhaseSpacePoint::on_surface(0.0, 1.0, *x, *p),
            10.0,
            1e-3,
        )
        .unwrap();
        steps = steps.max(traj.len() - 1);
        worst = worst.max(traj.drift(&sys).unwrap().max());
    }
    let secs = start.elapsed().as_secs_f64();
    verdict(
        4,
        "constraint and conservation drift",
        worst <= 1e-9 && secs < 5.0,
        format!("max drift {worst:.2e} (tol 1e-9) over {} trajectories of {steps} steps, {secs:.2} s (limit 5 s)", fields.len()),
    );
}

fn random_spec(rng: &mut ChaCha8Rng) -> GaussianClockSpec {
    let e0 = rng.gen_range(5.0..20.0);
    let sigma_e = rng.gen_range(0.2..1.0);
    let p0 = rng.gen_range(-5.0..5.0);
    let sigma_p = rng.gen_range(0.1..1.0);
    GaussianClockSpec::new(e0, sigma_e, p0, sigma_p).with_tau0(rng.gen_range(-5.0..5.0))
}

#[test]
fn c05_commutation_relation() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let s = gaussian_state(&random_spec(&mut rng), 1.0, natural()).unwrap();
        worst = worst.max(commutator_residual(&s).unwrap());
    }
    let secs = start.elapsed().as_secs_f64();
    verdict(
        5,
        "[tau, E] = i hbar",
        worst <= 1e-8 && secs < 2.0,
        format!(
            "max relative residual {worst:.2e} (tol 1e-8) on 20 states, {secs:.2} s (limit 2 s)"
        ),
    );
}

#[test]
fn c06_uncertainty_floor() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut corpus: Vec<(&str, MomentumSpaceState)> = Vec::new();
    for _ in 0..20 {
        corpus.push((
            "gaussian",
            gaussian_state(&random_spec(&mut rng), 1.0, natural()).unwrap(),
        ));
    }
    for _ in 0..15 {
        let spec =
            GaussianClockSpec::new(rng.gen_range(8.0..15.0), rng.gen_range(0.2..0.8), 0.0, 0.5);
        let beta = rng.gen_range(-1.0..1.0);
        corpus.push((
            "chirp",
            chirped_gaussian_state(&spec, beta, 1.0, natural()).unwrap(),
        ));
    }
    for _ in 0..15 {
        let spec =
            GaussianClockSpec::new(rng.gen_range(8.0..15.0), rng.gen_range(0.2..0.8), 0.0, 0.5);
        let a = rng.gen_range(0.1..2.5);
        corpus.push((
            "two-hump",
            two_hump_state(&spec, a, 1.0, natural()).unwrap(),
        ));
    }
    let mut min_excess = f64::INFINITY;
    let mut worst_saturation: f64 = 0.0;
    for (kind, s) in &corpus {
        let u = uncertainty_product(s).unwrap();
        min_excess = min_excess.min(u.product - u.lower);
        if *kind == "gaussian" {
            worst_saturation = worst_saturation.max((u.product - u.lower).abs());
        }
    }
    let secs = start.elapsed().as_secs_f64();
    verdict(
        6,
        "uncertainty floor",
        min_excess >= -1e-6 && worst_saturation <= 1e-6 && secs < 5.0,
        format!(
            "min (product - hbar/2) = {min_excess:.2e} (floor -1e-6) over {} states, \
             Gaussian saturation {worst_saturation:.2e} (tol 1e-6), {secs:.2} s (limit 5 s)",
            corpus.len()
        ),
    );
}

#[test]
fn c07_exact_variance_law() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (mut var_err, mut mean_err): (f64, f64) = (0.0, 0.0);
    for _ in 0..10 {
        let s = gaussian_state(&random_spec(&mut rng), 100.0, natural()).unwrap();
        let law = variance_law_predict(&s).unwrap();
        for t in [1.0, 10.0, 100.0] {
            let m = tau_moments_simulated(&s, t).unwrap();
            var_err = var_err.max((m.var_tau / law.variance_at(t) - 1.0).abs());
            mean_err =
                mean_err.max((m.mean_tau - law.mean_at(t)).abs() / law.mean_at(t).abs().max(1.0));
        }
    }
    let secs = start.elapsed().as_secs_f64();
    verdict(
        7,
        "exact variance law",
        var_err <= 1e-7 && mean_err <= 1e-8 && secs < 10.0,
        format!(
            "max variance rel. error {var_err:.2e} (tol 1e-7), mean rel. error {mean_err:.2e} (tol 1e-8), \
             10 specs x t in {{1, 10, 100}}, {secs:.2} s (limit 10 s)"
        ),
    );
}

#[test]
fn c08_gaussian_cross_term() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut worst: f64 = 0.0;
    for tau0 in [-50.0, -7.5, 0.0, 3.0, 20.0, 80.0] {
        let spec = GaussianClockSpec::new(
            rng.gen_range(5.0..20.0),
            rng.gen_range(0.2..1.0),
            rng.gen_range(-5.0..5.0),
            0.5,
        )
        .with_tau0(tau0);
        let s = gaussian_state(&spec, 1.0, natural()).unwrap();
        worst = worst.max(variance_law_predict(&s).unwrap().lin.abs());
    }
    let secs = start.elapsed().as_secs_f64();
    verdict(
        8,
        "Gaussian cross term",
        worst <= 1e-9 && secs < 2.0,
        format!(
            "max |lin| = {worst:.2e} (tol 1e-9) for tau0 in [-50, 80], {secs:.2} s (limit 2 s)"
        ),
    );
}

#[test]
fn c09_salecker_wigner_bound() {
    let start = Instant::now();
    let (e0, t_max) = (10.0, 100.0);

    // peaked family
    let mut peaked = 0;
    let mut worst_shortfall: f64 = f64::NEG_INFINITY;
    for sigma_p in [0.05, 0.5] {
        for k in 0..8 {
            let sigma_e = 0.05 * 1.35_f64.powi(k);
            let s = gaussian_state(
                &GaussianClockSpec::new(e0, sigma_e, 0.0, sigma_p),
                t_max,
                natural(),
            )
            .unwrap();
            for t in [10.0, 50.0, 100.0] {
                let c = salecker_wigner_check(&s, t).unwrap();
                if c.sharpness > 0.05 {
                    continue;
                }
                peaked += 1;
                worst_shortfall = worst_shortfall.max((c.rhs - c.lhs) / c.rhs);
            }
        }
    }
    let family_ok = peaked > 0 && worst_shortfall <= 0.0;

    // optimizer, boosted clock against hbar t / <H>
    let boosted = optimize_clock_width(e0, 7.5, 1e-3, t_max, natural());
    let (boosted_ok, boosted_msg) = match &boosted {
        Ok(o) => (
            o.min_var >= o.bound * (1.0 - 1e-9) && o.min_var <= 1.05 * o.bound,
            format!(
                "boosted min var {:.4} vs hbar t/<H> {:.4}",
                o.min_var, o.bound
            ),
        ),
        Err(e) => (false, format!("boosted: {e}")),
    };

    // optimizer, clock at rest against hbar t / <E>
    let rest = optimize_clock_width(e0, 0.0, 0.05, t_max, natural());
    let (rest_ok, rest_msg) = match &rest {
        Ok(o) => {
            let bound = t_max / e0;
            (
                o.min_var >= bound * (1.0 - 1e-9) && o.min_var <= 1.05 * bound,
                format!("rest min var {:.4} vs hbar t/<E> {bound:.4}", o.min_var),
            )
        }
        Err(e) => (false, format!("rest: {e}")),
    };
    let secs = start.elapsed().as_secs_f64();
    verdict(
        9,
        "Salecker-Wigner bound",
        family_ok && boosted_ok && rest_ok && secs < 20.0,
        format!(
            "peaked family ({peaked} points) worst (rhs - lhs)/rhs = {worst_shortfall:.3} (must be <= 0); \
             {boosted_msg}; {rest_msg} (within 5%); {secs:.2} s (limit 20 s)"
        ),
    );
}

#[test]
fn c10_negative_mass() {
    let start = Instant::now();
    let s = gaussian_state(
        &GaussianClockSpec::new(-10.0, 0.5, 0.0, 0.5),
        100.0,
        natural(),
    )
    .unwrap();
    let mean_d = expectation(&s, Observable::D).unwrap();
    let law = variance_law_predict(&s).unwrap();
    let ts = [0.0, 1.0, 10.0, 100.0];
    let moments: Vec<_> = ts
        .iter()
        .map(|&t| tau_moments_simulated(&s, t).unwrap())
        .collect();
    let decreasing = moments.windows(2).all(|w| w[1].mean_tau < w[0].mean_tau);
    let unitarity = ts
        .iter()
        .map(|&t| (evolve(&s, t).norm_squared() - 1.0).abs())
        .fold(0.0, f64::max);
    let law_err = moments[1..]
        .iter()
        .map(|m| (m.var_tau / law.variance_at(m.t) - 1.0).abs())
        .fold(0.0, f64::max);
    let secs = start.elapsed().as_secs_f64();
    verdict(
        10,
        "negative mass clock",
        mean_d < 0.0 && decreasing && unitarity <= 1e-12 && law_err <= 1e-7,
        format!(
            "<D> = {mean_d:.6}, <tau>(100) = {:.4}, decreasing: {decreasing}, |norm - 1| = {unitarity:.1e} (tol 1e-12), \
             variance-law rel. error {law_err:.2e} (tol 1e-7), {secs:.2} s",
            moments[3].mean_tau
        ),
    );
}

fn scenarios_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("scenarios")
}

fn clocklab(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_clocklab"))
        .args(args)
        .output()
        .expect("spawn clocklab")
}

#[test]
fn c11_cli_determinism() {
    let start = Instant::now();
    let dir = tempfile::tempdir().unwrap();
    let runs = [
        ("gedanken", "box", "box.conf"),
        ("gedanken", "efield", "efield.conf"),
        ("classical", "trajectory", "trajectory.conf"),
        ("classical", "brackets", "brackets.conf"),
        ("quantum", "moments", "moments.conf"),
        ("quantum", "bound", "bound.conf"),
        ("quantum", "optimize", "optimize.conf"),
    ];
    let mut mismatched = Vec::new();
    for (group, sub, file) in runs {
        let conf = scenarios_dir().join(file);
        let mut outputs = Vec::new();
        let out = dir.path().join(format!("{sub}.csv"));
        let set = format!("output={}", out.display());
        for _ in 0..2 {
            let _ = std::fs::remove_file(&out);
            let r = clocklab(&[
                group,
                sub,
                "--config",
                conf.to_str().unwrap(),
                "--set",
                &set,
            ]);
            outputs.push((
                r.status.code(),
                r.stdout,
                std::fs::read(&out).unwrap_or_default(),
            ));
        }
        if outputs[0] != outputs[1] || outputs[0].2.is_empty() {
            mismatched.push(sub);
        }
    }

    let box_conf = scenarios_dir().join("box.conf");
    let box_conf = box_conf.to_str().unwrap();
    let induced: [&[&str]; 5] = [
        &["gedanken", "box", "--config", "/nonexistent/box.conf"],
        &[
            "gedanken",
            "box",
            "--config",
            box_conf,
            "--set",
            "gedanken.t=fast",
        ],
        &[
            "gedanken",
            "box",
            "--config",
            box_conf,
            "--set",
            "gedanken.g=9.81 kg",
        ],
        &["quantum", "moments", "--set", "quantum.e0=10"],
        &["classical", "trajectory", "--config", box_conf],
    ];
    let wrong_codes: Vec<_> = induced
        .iter()
        .filter_map(|args| {
            let code = clocklab(args).status.code();
            (code != Some(2)).then(|| format!("{} -> {code:?}", args.join(" ")))
        })
        .collect();
    let secs = start.elapsed().as_secs_f64();
    verdict(
        11,
        "CLI determinism and exit codes",
        mismatched.is_empty() && wrong_codes.is_empty(),
        format!(
            "non-identical reruns: {mismatched:?}; config errors not exiting 2: {wrong_codes:?}; {} kinds, {secs:.1} s",
            runs.len()
        ),
    );
}
