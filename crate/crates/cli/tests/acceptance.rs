// SPDX-License-Identifier: Apache-2.0

//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Criteria listed in `KNOWN_FAILURES` are expected to fail for reasons
//! documented in the README; they still print FAIL. The process exits
//! nonzero when any other criterion fails or a known failure starts passing.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use dtcm_cli::commands::{run_sweep, thread_pool};
use dtcm_cli::config::ScenarioConfig;
use dtcm_cli::presets::PRESETS;
use dtcm_core::analysis::{pair_concurrence, DEFAULT_MIN_ZERO_POINTS, DEFAULT_ZERO_TOL};
use dtcm_core::dynamics::{thermal_cutoff, PairAmplitudes};
use dtcm_core::entanglement::{concurrence_general, concurrence_x, is_x_form};
use dtcm_core::oracle::compare_pipelines;
use dtcm_core::state::validate_density;
use dtcm_core::{
    classify_regime, detect_esb, detect_esd, pair_map, pair_map_explicit, partial_trace,
    sweep_concurrence, x_coeff, BellType, ConcurrenceCurve, EsdEvents, FieldSpec, Model, Pair,
    Scenario, XCoefficientKey,
};

/// `(criterion, reason)`.
const KNOWN_FAILURES: &[(u32, &str)] = &[(
    6,
    "exact two-atom-per-cavity phi dynamics lose sudden death near sin^2(alpha) = 0.36, \
     not at the 1/sqrt(2) predicted by the excitation-counting argument",
)];

type Outcome = Result<String, String>;

fn taus(stop: f64, points: usize) -> Vec<f64> {
    (0..points).map(|k| stop * k as f64 / (points - 1) as f64).collect()
}

/// Default sampling: `[0, 25]` with step 0.01.
fn default_taus() -> Vec<f64> {
    taus(25.0, 2501)
}

fn vacuum(model: Model, bell: BellType) -> Scenario {
    Scenario::new(model, bell, FieldSpec::Vacuum, FieldSpec::Vacuum)
}

fn curve(s: &Scenario, pair: Pair, alpha: f64, tau: &[f64]) -> ConcurrenceCurve {
    sweep_concurrence(s, pair, &[alpha], tau).expect("sweep").remove(0)
}

fn esd(c: &ConcurrenceCurve) -> EsdEvents {
    detect_esd(c, DEFAULT_ZERO_TOL, DEFAULT_MIN_ZERO_POINTS).expect("curve long enough")
}

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn within_time(elapsed: Duration, limit: Duration) -> bool {
    elapsed < limit
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut worst: f64 = 0.0;
    for _ in 0..200 {
        let tau = rng.gen_range(0.0..20.0);
        for m in 0..=50 {
            for (i, k) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
                let mut norm = 0.0;
                for (p, q) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
                    let key = XCoefficientKey::new(i, k, p, q, m, tau).unwrap();
                    if key.target_photons().is_some() {
                        norm += x_coeff(&key).unwrap().norm_sqr();
                    }
                }
                worst = worst.max((norm - 1.0).abs());
            }
        }
    }
    let elapsed = start.elapsed();
    check(
        worst <= 1e-12 && within_time(elapsed, Duration::from_secs(1)),
        format!("max |sum |X|^2 - 1| = {worst:.2e} (tol 1e-12), {:.3}s (limit 1s)", elapsed.as_secs_f64()),
    )
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    let fields = [FieldSpec::Vacuum, FieldSpec::Fock(1), FieldSpec::Fock(3), FieldSpec::thermal(1.0)];
    for field in &fields {
        for tau in taus(20.0, 50) {
            for ket in 0..4u8 {
                for bra in 0..4u8 {
                    let (i, k, j, l) = (ket >> 1, ket & 1, bra >> 1, bra & 1);
                    let g = pair_map(i, k, j, l, field, tau).unwrap();
                    let e = pair_map_explicit(i, k, j, l, field, tau).unwrap();
                    worst = worst.max(g.max_abs_diff(&e));
                }
            }
        }
    }
    let elapsed = start.elapsed();
    check(
        worst <= 1e-12 && within_time(elapsed, Duration::from_secs(5)),
        format!("max entry deviation {worst:.2e} (tol 1e-12), {:.3}s (limit 5s)", elapsed.as_secs_f64()),
    )
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let alphas = [0.0, PI / 8.0, PI / 4.0, 3.0 * PI / 8.0];
    let grid = taus(10.0, 20);
    let mut exact: f64 = 0.0;
    for bell in [BellType::Psi, BellType::Phi] {
        for field in [FieldSpec::Vacuum, FieldSpec::Fock(1)] {
            let s = Scenario::new(Model::Dtcm, bell, field, field);
            let dev = compare_pipelines(&s, &alphas, &grid, 6).map_err(|e| e.to_string())?;
            exact = exact.max(dev.state);
        }
    }
    let mut thermal: f64 = 0.0;
    let field = FieldSpec::thermal(1.0);
    let n_max = thermal_cutoff(1.0, 1e-10) as usize + 3;
    for bell in [BellType::Psi, BellType::Phi] {
        let s = Scenario::new(Model::Dtcm, bell, field, field);
        let dev = compare_pipelines(&s, &alphas, &grid, n_max).map_err(|e| e.to_string())?;
        thermal = thermal.max(dev.state);
    }
    let elapsed = start.elapsed();
    check(
        exact <= 1e-8 && thermal <= 1e-6 && within_time(elapsed, Duration::from_secs(60)),
        format!(
            "vacuum/Fock max deviation {exact:.2e} (tol 1e-8), thermal nbar=1 {thermal:.2e} (tol 1e-6, n_max {n_max}), {:.2}s (limit 60s)",
            elapsed.as_secs_f64()
        ),
    )
}

fn criterion_4() -> Outcome {
    let s = vacuum(Model::Djcm, BellType::Psi);
    let grid = default_taus();
    let c = curve(&s, Pair::AB, FRAC_PI_4, &grid);
    let window_min = grid
        .iter()
        .zip(&c.values)
        .filter(|(&t, _)| t > 0.0 && t < 1.5 * PI && (t - FRAC_PI_2).abs() > 1e-12)
        .map(|(_, &v)| v)
        .fold(f64::INFINITY, f64::min);
    let at_half_pi = pair_concurrence(&s.pair_state(Pair::AB, FRAC_PI_4, FRAC_PI_2).unwrap()).unwrap();
    let events = esd(&c);
    check(
        window_min > 0.0 && at_half_pi <= 1e-10 && !events.has_esd(),
        format!(
            "min C on grid in (0, 3pi/2) minus pi/2 = {window_min:.2e} (> 0), C(pi/2) = {at_half_pi:.1e} (<= 1e-10), ESD = {}",
            events.has_esd()
        ),
    )
}

fn criterion_5() -> Outcome {
    let s = vacuum(Model::Dtcm, BellType::Psi);
    let grid = default_taus();
    let mut failures = Vec::new();
    let mut latest_death: f64 = 0.0;
    for k in 1..=9 {
        let alpha = 0.05 * k as f64 * PI;
        let e = esd(&curve(&s, Pair::AB, alpha, &grid));
        match (e.death_time, e.revival_time) {
            (Some(d), Some(r)) if d < FRAC_PI_2 && r > d => latest_death = latest_death.max(d),
            _ => failures.push(format!("{:.2}pi", alpha / PI)),
        }
    }
    check(
        failures.is_empty(),
        format!("ESD at 9/9 angles, latest death {latest_death:.2} < pi/2; failing: {failures:?}"),
    )
}

/// ESD verdicts on the 0.01*pi grid against the predicted threshold; returns
/// (mismatches outside one grid step, observed boundary description).
fn threshold_scan(model: Model, sin2_threshold: f64) -> (Vec<f64>, String) {
    let s = vacuum(model, BellType::Phi);
    let grid = default_taus();
    let step = 0.01 * PI;
    let alphas: Vec<f64> = (1..50).map(|k| k as f64 * step).collect();
    let curves = sweep_concurrence(&s, Pair::AB, &alphas, &grid).unwrap();
    let predicted_alpha = sin2_threshold.sqrt().asin();
    let mut mismatches = Vec::new();
    let mut last_esd = None;
    for c in &curves {
        let observed = esd(c).has_esd();
        let regime = classify_regime(BellType::Phi, c.alpha, model, &FieldSpec::Vacuum, &FieldSpec::Vacuum);
        if observed {
            last_esd = Some(c.alpha);
        }
        if observed != regime.predicted_esd && (c.alpha - predicted_alpha).abs() > step + 1e-12 {
            mismatches.push(c.alpha / PI);
        }
    }
    let boundary = match last_esd {
        Some(a) => format!(
            "ESD up to alpha = {:.2}pi (sin^2 = {:.3}), predicted {:.3}pi (sin^2 = {:.3})",
            a / PI,
            a.sin().powi(2),
            predicted_alpha / PI,
            sin2_threshold
        ),
        None => "no ESD found".into(),
    };
    (mismatches, boundary)
}

fn criterion_6() -> Outcome {
    let (dtcm_bad, dtcm) = threshold_scan(Model::Dtcm, 1.0 / 2f64.sqrt());
    let (djcm_bad, djcm) = threshold_scan(Model::Djcm, 0.5);
    check(
        dtcm_bad.is_empty() && djcm_bad.is_empty(),
        format!(
            "DTCM: {dtcm}, {} mismatched angles; DJCM: {djcm}, {} mismatched angles",
            dtcm_bad.len(),
            djcm_bad.len()
        ),
    )
}

fn criterion_7() -> Outcome {
    let grid = default_taus();
    let mut missing = Vec::new();
    for bell in [BellType::Psi, BellType::Phi] {
        let s = Scenario::new(Model::Dtcm, bell, FieldSpec::Fock(1), FieldSpec::Fock(1));
        for k in 1..=9 {
            let alpha = 0.05 * k as f64 * PI;
            if !esd(&curve(&s, Pair::AB, alpha, &grid)).has_esd() {
                missing.push(format!("{bell:?} {:.2}pi", alpha / PI));
            }
        }
    }
    let deaths: Vec<Option<f64>> = [0, 1, 2, 5]
        .iter()
        .map(|&n| {
            let s = Scenario::new(Model::Dtcm, BellType::Psi, FieldSpec::Fock(n), FieldSpec::Fock(n));
            esd(&curve(&s, Pair::AB, FRAC_PI_4, &grid)).death_time
        })
        .collect();
    let monotone = deaths.iter().all(Option::is_some)
        && deaths.windows(2).all(|w| w[1].unwrap() <= w[0].unwrap());
    check(
        missing.is_empty() && monotone,
        format!("angles without ESD: {missing:?}; death times for n = 0,1,2,5: {deaths:?}"),
    )
}

fn criterion_8() -> Outcome {
    let s = Scenario::new(Model::Dtcm, BellType::Psi, FieldSpec::Fock(1), FieldSpec::Fock(1));
    let grid = default_taus();
    let births: Vec<Option<f64>> = [0.0, 0.1, 0.2, 0.25]
        .iter()
        .map(|&a| detect_esb(&curve(&s, Pair::BD, a * PI, &grid), DEFAULT_ZERO_TOL).birth_time)
        .collect();
    let late = detect_esb(&curve(&s, Pair::BD, 0.45 * PI, &grid), DEFAULT_ZERO_TOL).birth_time;
    let increasing = births.iter().all(Option::is_some)
        && births.windows(2).all(|w| w[1].unwrap() > w[0].unwrap());
    check(
        births[0] == Some(0.0) && increasing && late.is_none(),
        format!("birth times at 0, 0.1pi, 0.2pi, 0.25pi: {births:?}; at 0.45pi: {late:?}"),
    )
}

fn criterion_9() -> Outcome {
    let alphas = taus(FRAC_PI_2, 20);
    let grid = taus(25.0, 20);
    let mut ab_cd: f64 = 0.0;
    let mut cross: f64 = 0.0;
    let fields = [FieldSpec::Vacuum, FieldSpec::Fock(1), FieldSpec::thermal(1.0)];
    for field in fields {
        for bell in [BellType::Psi, BellType::Phi] {
            let s = Scenario::new(Model::Dtcm, bell, field, field);
            for &tau in &grid {
                let (ch_a, ch_b) = s.channels(tau).unwrap();
                for &a in &alphas {
                    let rho = s.state_with(PairAmplitudes::from_angle(a), &ch_a, &ch_b).unwrap();
                    let c = |r: &dtcm_core::DensityMatrix, p: Pair| {
                        pair_concurrence(&partial_trace(r, &p.atoms()).unwrap()).unwrap()
                    };
                    ab_cd = ab_cd.max((c(&rho, Pair::AB) - c(&rho, Pair::CD)).abs());
                    if bell == BellType::Psi {
                        let shifted = s
                            .state_with(PairAmplitudes::from_angle(a + FRAC_PI_2), &ch_a, &ch_b)
                            .unwrap();
                        cross = cross.max((c(&rho, Pair::AC) - c(&shifted, Pair::BD)).abs());
                    }
                }
            }
        }
    }
    check(
        ab_cd <= 1e-10 && cross <= 1e-10,
        format!("max |C_AB - C_CD| = {ab_cd:.1e}, max |C_AC(a) - C_BD(a + pi/2)| = {cross:.1e} (tol 1e-10)"),
    )
}

/// Thermal tails are cut at 1e-14 here: with the default 1e-10 the retained
/// trace is short by about 2e-10, beyond the 1e-12 trace tolerance.
fn with_tight_tail(field: FieldSpec) -> FieldSpec {
    match field {
        FieldSpec::Thermal { nbar, .. } => FieldSpec::Thermal { nbar, tail_mass_epsilon: 1e-14 },
        other => other,
    }
}

fn criterion_10() -> Outcome {
    let start = Instant::now();
    let mut states = 0usize;
    let mut invalid = 0usize;
    let mut x_failures = 0usize;
    let mut worst_gap: f64 = 0.0;
    for (name, text) in PRESETS {
        let cfg = ScenarioConfig::parse(text).unwrap();
        let mut s = cfg.scenario();
        s.field_a = with_tight_tail(s.field_a);
        s.field_b = with_tight_tail(s.field_b);
        let pairs: &[Pair] = if s.model == Model::Dtcm { &Pair::ALL } else { &[Pair::AB] };
        let alphas = cfg.alphas();
        let per_tau: Vec<(usize, usize, usize, f64)> = cfg
            .taus()
            .par_iter()
            .map(|&tau| {
                let (ch_a, ch_b) = s.channels(tau).unwrap();
                let mut acc = (0, 0, 0, 0.0f64);
                for &a in &alphas {
                    let rho = s.state_with(PairAmplitudes::from_angle(a), &ch_a, &ch_b).unwrap();
                    for p in pairs {
                        let r = partial_trace(&rho, &p.atoms()).unwrap();
                        acc.0 += 1;
                        if !validate_density(&r, 1e-12, 1e-12, 1e-9).passes() {
                            acc.1 += 1;
                        }
                        match is_x_form(&r, 1e-10) {
                            Some(x) => {
                                let gap = (concurrence_general(&r).unwrap() - concurrence_x(&x)).abs();
                                acc.3 = acc.3.max(gap);
                            }
                            None => acc.2 += 1,
                        }
                    }
                }
                acc
            })
            .collect();
        for (n, bad, nx, gap) in per_tau {
            states += n;
            invalid += bad;
            x_failures += nx;
            worst_gap = worst_gap.max(gap);
        }
        if invalid > 0 {
            return Err(format!("{name}: {invalid} invalid reduced states"));
        }
    }
    check(
        invalid == 0 && worst_gap <= 1e-9,
        format!(
            "{states} reduced states over all presets: {invalid} invalid, {x_failures} not X-form, \
             max |C_general - C_x| = {worst_gap:.1e} (tol 1e-9), {:.1}s",
            start.elapsed().as_secs_f64()
        ),
    )
}

fn criterion_11() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_dtcm");
    let start = Instant::now();
    let status = Command::new(bin)
        .args(["--threads", "1", "verify", "quick"])
        .output()
        .map_err(|e| format!("cannot run {bin}: {e}"))?;
    let quick = start.elapsed();
    if !status.status.success() {
        return Err(format!("verify quick failed:\n{}", String::from_utf8_lossy(&status.stdout)));
    }

    // every preset, plus the extra curves of the overlaid figures
    let mut runs: Vec<(String, Vec<String>)> = PRESETS.iter().map(|(n, _)| (n.to_string(), vec![])).collect();
    let set = |a: &str, b: &str| vec![format!("field_a={a}"), format!("field_b={b}")];
    for n in ["fock:0", "fock:2", "fock:5"] {
        runs.push(("fig4".into(), set(n, n)));
    }
    runs.push(("fig5".into(), set("thermal:1", "thermal:1")));
    runs.push(("fig11".into(), set("thermal:1", "thermal:1")));
    let pool = thread_pool(0).map_err(|e| e.to_string())?;
    let start = Instant::now();
    for (name, overrides) in &runs {
        let text = PRESETS.iter().find(|(n, _)| n == name).unwrap().1;
        let cfg = ScenarioConfig::parse_with_overrides(text, overrides).map_err(|e| e.to_string())?;
        run_sweep(&cfg, &pool).map_err(|e| format!("{name}: {e}"))?;
    }
    let sweep = start.elapsed();
    check(
        within_time(quick, Duration::from_secs(30)) && within_time(sweep, Duration::from_secs(600)),
        format!(
            "verify quick (1 thread) {:.2}s (limit 30s); {} preset sweeps {:.1}s (limit 600s)",
            quick.as_secs_f64(),
            runs.len(),
            sweep.as_secs_f64()
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [(u32, &str, fn() -> Outcome); 11] = [
        (1, "coefficient normalization", criterion_1),
        (2, "generic vs closed-form maps", criterion_2),
        (3, "oracle equivalence", criterion_3),
        (4, "one-atom psi vacuum touches zero only", criterion_4),
        (5, "two-atom psi vacuum sudden death", criterion_5),
        (6, "phi sudden death thresholds", criterion_6),
        (7, "Fock fields force sudden death", criterion_7),
        (8, "sudden birth delays", criterion_8),
        (9, "pair symmetries", criterion_9),
        (10, "state validity and concurrence paths", criterion_10),
        (11, "verification and preset timing", criterion_11),
    ];
    let mut unexpected = Vec::new();
    for (n, name, f) in criteria {
        let outcome = f();
        let known = KNOWN_FAILURES.iter().find(|(k, _)| *k == n);
        match (&outcome, known) {
            (Ok(d), None) => println!("criterion {n:>2} PASS  {name}: {d}"),
            (Ok(d), Some(_)) => {
                println!("criterion {n:>2} PASS  {name}: {d} (listed as known failure)");
                unexpected.push(n);
            }
            (Err(d), None) => {
                println!("criterion {n:>2} FAIL  {name}: {d}");
                unexpected.push(n);
            }
            (Err(d), Some((_, why))) => println!("criterion {n:>2} FAIL  {name}: {d} [known: {why}]"),
        }
    }
    if unexpected.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("unexpected outcomes for criteria {unexpected:?}");
        ExitCode::FAILURE
    }
}
