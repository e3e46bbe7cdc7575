// SPDX-License-Identifier: Apache-2.0

//! Invariant suites run by `dtcm verify`.

use std::collections::HashMap;
use std::fmt;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use dtcm_core::dynamics::{pair_map, pair_map_explicit, PairAmplitudes};
use dtcm_core::entanglement::{concurrence_general, concurrence_x, is_x_form};
use dtcm_core::oracle::compare_pipelines;
use dtcm_core::state::validate_density;
use dtcm_core::{
    partial_trace, x_coeff, BellType, FieldSpec, Model, Pair, Scenario, XCoefficientKey,
};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Level {
    Quick,
    Full,
}

impl std::str::FromStr for Level {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "quick" => Ok(Level::Quick),
            "full" => Ok(Level::Full),
            _ => Err(format!("expected quick or full, got `{s}`")),
        }
    }
}

/// Evolution coefficient source, `(i, k, p, q, m, tau) -> X`.
pub type CoeffFn = dyn Fn(u8, u8, u8, u8, u32, f64) -> Complex64 + Sync;

pub fn closed_form_coeff(i: u8, k: u8, p: u8, q: u8, m: u32, tau: f64) -> Complex64 {
    x_coeff(&XCoefficientKey { i, k, p, q, m, tau }).expect("valid coefficient arguments")
}

#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub name: &'static str,
    pub max_deviation: f64,
    pub tolerance: f64,
    pub checks: usize,
    pub elapsed: Duration,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.max_deviation.is_finite() && self.max_deviation <= self.tolerance
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:<14} max deviation {:.3e}  tolerance {:.0e}  checks {:>7}  {:>7.2}s  {}",
            self.name,
            self.max_deviation,
            self.tolerance,
            self.checks,
            self.elapsed.as_secs_f64(),
            if self.passed() { "PASS" } else { "FAIL" }
        )
    }
}

#[derive(Debug, Clone, Default)]
pub struct VerifyReport {
    pub suites: Vec<SuiteReport>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(SuiteReport::passed)
    }

    pub fn failed_suites(&self) -> Vec<&'static str> {
        self.suites.iter().filter(|s| !s.passed()).map(|s| s.name).collect()
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.suites {
            writeln!(f, "{s}")?;
        }
        match self.failed_suites().as_slice() {
            [] => writeln!(f, "all suites passed"),
            failed => writeln!(f, "failed suites: {}", failed.join(", ")),
        }
    }
}

struct Tracker {
    max: f64,
    checks: usize,
}

impl Tracker {
    fn new() -> Self {
        Tracker { max: 0.0, checks: 0 }
    }

    fn record(&mut self, dev: f64) {
        // NaN must fail the suite
        self.max = if dev.is_nan() { f64::NAN } else { self.max.max(dev) };
        self.checks += 1;
    }

    fn finish(self, name: &'static str, tolerance: f64, start: Instant) -> SuiteReport {
        SuiteReport { name, max_deviation: self.max, tolerance, checks: self.checks, elapsed: start.elapsed() }
    }
}

fn photon_shift(i: u8, k: u8, p: u8, q: u8) -> i64 {
    let sign = |b: u8| if b == 0 { 1 } else { -1 };
    sign(i) * p as i64 + sign(k) * q as i64
}

/// Column norms (the sum of `|X|^2` over all outputs) and orthogonality of
/// distinct input columns within one excitation sector.
pub fn normalization_suite(coeff: &CoeffFn) -> SuiteReport {
    let start = Instant::now();
    let mut t = Tracker::new();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    const M_MAX: u32 = 50;
    for _ in 0..200 {
        let tau: f64 = rng.gen_range(0.0..20.0);
        // column (ik, m) -> {(st, n) -> amplitude}
        let mut columns: HashMap<(u8, u32), Vec<((u8, i64), Complex64)>> = HashMap::new();
        for m in 0..=M_MAX {
            for ik in 0..4u8 {
                let (i, k) = (ik >> 1, ik & 1);
                let mut col = Vec::with_capacity(4);
                for pq in 0..4u8 {
                    let (p, q) = (pq >> 1, pq & 1);
                    let n = m as i64 - photon_shift(i, k, p, q);
                    if n < 0 {
                        continue;
                    }
                    col.push((((i ^ p) << 1 | (k ^ q), n), coeff(i, k, p, q, m, tau)));
                }
                let norm: f64 = col.iter().map(|(_, x)| x.norm_sqr()).sum();
                t.record((norm - 1.0).abs());
                columns.insert((ik, m), col);
            }
        }
        // inputs sharing the excitation number e = bits(ik) + m
        for e in 0..=M_MAX {
            let inputs: Vec<(u8, u32)> = (0..4u8)
                .filter_map(|ik| {
                    let bits = (ik >> 1) as u32 + (ik & 1) as u32;
                    (e >= bits).then(|| (ik, e - bits))
                })
                .collect();
            for (a, x) in inputs.iter().enumerate() {
                for y in &inputs[a + 1..] {
                    let (cx, cy) = (&columns[x], &columns[y]);
                    let inner: Complex64 = cx
                        .iter()
                        .flat_map(|(kx, ax)| cy.iter().filter(move |(ky, _)| ky == kx).map(move |(_, ay)| ax * ay.conj()))
                        .sum();
                    t.record(inner.norm());
                }
            }
        }
    }
    t.finish("normalization", 1e-12, start)
}

fn tau_grid(start: f64, stop: f64, n: usize) -> Vec<f64> {
    (0..n).map(|k| start + (stop - start) * k as f64 / (n - 1) as f64).collect()
}

/// Generic map expansion against the transcribed closed forms.
pub fn equivalence_suite() -> Result<SuiteReport, CliError> {
    let start = Instant::now();
    let mut t = Tracker::new();
    let fields = [FieldSpec::Vacuum, FieldSpec::Fock(1), FieldSpec::Fock(3), FieldSpec::thermal(1.0)];
    for field in &fields {
        for tau in tau_grid(0.0, 20.0, 50) {
            for ket in 0..4u8 {
                for bra in 0..4u8 {
                    let (i, k, j, l) = (ket >> 1, ket & 1, bra >> 1, bra & 1);
                    let g = pair_map(i, k, j, l, field, tau)?;
                    let e = pair_map_explicit(i, k, j, l, field, tau)?;
                    t.record(g.max_abs_diff(&e));
                }
            }
        }
    }
    Ok(t.finish("equivalence", 1e-12, start))
}

fn oracle_cases(level: Level) -> Vec<(Scenario, usize, f64)> {
    let mut cases = Vec::new();
    for bell in [BellType::Psi, BellType::Phi] {
        for field in [FieldSpec::Vacuum, FieldSpec::Fock(1)] {
            cases.push((Scenario::new(Model::Dtcm, bell, field, field), 6, 1e-8));
            cases.push((Scenario::new(Model::Djcm, bell, field, field), 6, 1e-8));
        }
        if level == Level::Full {
            for nbar in [0.1, 1.0] {
                let field = FieldSpec::thermal(nbar);
                let n_max = field.resolve().expect("valid thermal field").max_photons() as usize + 3;
                cases.push((Scenario::new(Model::Dtcm, bell, field, field), n_max, 1e-6));
            }
        }
    }
    cases
}

/// Closed-form states against brute-force Hamiltonian evolution. The
/// reported deviation is relative to each case's tolerance.
pub fn oracle_suite(level: Level) -> Result<SuiteReport, CliError> {
    let start = Instant::now();
    let mut t = Tracker::new();
    let alphas = [0.0, std::f64::consts::PI / 8.0, std::f64::consts::PI / 4.0, 3.0 * std::f64::consts::PI / 8.0];
    let taus = tau_grid(0.0, 10.0, 20);
    for (scenario, n_max, tol) in oracle_cases(level) {
        let dev = compare_pipelines(&scenario, &alphas, &taus, n_max)?;
        t.record(dev.state.max(dev.concurrence) / tol);
    }
    Ok(t.finish("oracle", 1.0, start))
}

fn symmetry_fields() -> [FieldSpec; 3] {
    [FieldSpec::Vacuum, FieldSpec::Fock(1), FieldSpec::thermal(1.0)]
}

/// `C_AB = C_CD`, and `C_AC(alpha) = C_BD(alpha + pi/2)` for psi-type pairs.
pub fn symmetry_suite(level: Level) -> Result<SuiteReport, CliError> {
    let start = Instant::now();
    let mut t = Tracker::new();
    let n = if level == Level::Full { 20 } else { 8 };
    let alphas = tau_grid(0.0, std::f64::consts::FRAC_PI_2, n);
    let taus = tau_grid(0.0, 25.0, n);
    for field in symmetry_fields() {
        for bell in [BellType::Psi, BellType::Phi] {
            let s = Scenario::new(Model::Dtcm, bell, field, field);
            for &tau in &taus {
                let c = s.concurrences_at(&[Pair::AB, Pair::CD], &alphas, tau)?;
                for pair in c.chunks(2) {
                    t.record((pair[0] - pair[1]).abs());
                }
                if bell == BellType::Psi {
                    let (ch_a, ch_b) = s.channels(tau)?;
                    for &a in &alphas {
                        let ac = s.state_with(PairAmplitudes::from_angle(a), &ch_a, &ch_b)?;
                        let bd = s.state_with(PairAmplitudes::from_angle(a + std::f64::consts::FRAC_PI_2), &ch_a, &ch_b)?;
                        let c_ac = dtcm_core::pair_concurrence(&partial_trace(&ac, &Pair::AC.atoms())?)?;
                        let c_bd = dtcm_core::pair_concurrence(&partial_trace(&bd, &Pair::BD.atoms())?)?;
                        t.record((c_ac - c_bd).abs());
                    }
                }
            }
        }
    }
    Ok(t.finish("symmetry", 1e-10, start))
}

/// Every reduced pair state is a valid density matrix in X form, and both
/// concurrence formulas agree on it. Thermal tails are cut at `1e-14` so the
/// retained trace is within the trace tolerance.
pub fn validity_suite(level: Level) -> Result<SuiteReport, CliError> {
    let start = Instant::now();
    let mut t = Tracker::new();
    let n = if level == Level::Full { 20 } else { 6 };
    let alphas = tau_grid(0.0, std::f64::consts::FRAC_PI_2, n);
    let taus = tau_grid(0.0, 25.0, n);
    let fields = [
        FieldSpec::Vacuum,
        FieldSpec::Fock(2),
        FieldSpec::Thermal { nbar: 1.0, tail_mass_epsilon: 1e-14 },
    ];
    for model in [Model::Dtcm, Model::Djcm] {
        let pairs: &[Pair] = if model == Model::Dtcm { &Pair::ALL } else { &[Pair::AB] };
        for field in fields {
            for bell in [BellType::Psi, BellType::Phi] {
                let s = Scenario::new(model, bell, field, field);
                for &tau in &taus {
                    let (ch_a, ch_b) = s.channels(tau)?;
                    for &a in &alphas {
                        let rho = s.state_with(PairAmplitudes::from_angle(a), &ch_a, &ch_b)?;
                        for p in pairs {
                            let r = partial_trace(&rho, &p.atoms())?;
                            let v = validate_density(&r, 1e-12, 1e-12, 1e-9);
                            t.record(if v.passes() { 0.0 } else { f64::INFINITY });
                            match is_x_form(&r, 1e-10) {
                                Some(x) => t.record((concurrence_general(&r)? - concurrence_x(&x)).abs()),
                                None => t.record(f64::INFINITY),
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(t.finish("validity", 1e-9, start))
}

pub fn run_verify(level: Level) -> Result<VerifyReport, CliError> {
    run_verify_with(level, &closed_form_coeff)
}

/// Same as [`run_verify`] with the normalization suite fed by `coeff`.
pub fn run_verify_with(level: Level, coeff: &CoeffFn) -> Result<VerifyReport, CliError> {
    Ok(VerifyReport {
        suites: vec![
            normalization_suite(coeff),
            equivalence_suite()?,
            oracle_suite(level)?,
            symmetry_suite(level)?,
            validity_suite(level)?,
        ],
    })
}
