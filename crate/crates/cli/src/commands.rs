// SPDX-License-Identifier: Apache-2.0

//! Sweeps behind `simulate`, `events` and `plotdata`.

use rayon::prelude::*;
use rayon::ThreadPool;

use dtcm_core::{detect_esb, detect_esd, ConcurrenceCurve, EsdEvents, Pair};

use crate::config::ScenarioConfig;
use crate::error::CliError;
use crate::output;

/// Concurrence on the full `(tau, alpha, pair)` grid.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub alphas: Vec<f64>,
    pub taus: Vec<f64>,
    pub pairs: Vec<Pair>,
    /// Indexed `[tau][alpha][pair]`.
    values: Vec<f64>,
}

impl SweepResult {
    pub fn value(&self, alpha: usize, tau: usize, pair: usize) -> f64 {
        self.values[(tau * self.alphas.len() + alpha) * self.pairs.len() + pair]
    }

    pub fn curve(&self, alpha: usize, pair: usize) -> ConcurrenceCurve {
        let values = (0..self.taus.len()).map(|t| self.value(alpha, t, pair)).collect();
        ConcurrenceCurve::new(self.pairs[pair], self.alphas[alpha], self.taus.clone(), values)
            .expect("sweep grids are ascending and consistent")
    }
}

/// `threads == 0` lets rayon pick.
pub fn thread_pool(threads: usize) -> Result<ThreadPool, CliError> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| CliError::Numerical(format!("cannot start worker threads: {e}")))
}

/// Runs every time slice in parallel; slices are merged by grid index.
pub fn run_sweep(config: &ScenarioConfig, pool: &ThreadPool) -> Result<SweepResult, CliError> {
    let scenario = config.scenario();
    let alphas = config.alphas();
    let taus = config.taus();
    let pairs = config.pairs.clone();
    // resolve the fields once so configuration problems surface before the sweep
    scenario.field_a.resolve()?;
    scenario.field_b.resolve()?;
    let slices: Vec<Vec<f64>> = pool.install(|| {
        taus.par_iter()
            .map(|&tau| scenario.concurrences_at(&pairs, &alphas, tau))
            .collect::<Result<_, _>>()
    })?;
    Ok(SweepResult { alphas, taus, pairs, values: slices.concat() })
}

pub fn detect_events(config: &ScenarioConfig, result: &SweepResult) -> Result<Vec<(f64, Pair, EsdEvents)>, CliError> {
    let mut rows = Vec::with_capacity(result.alphas.len() * result.pairs.len());
    for (ia, &alpha) in result.alphas.iter().enumerate() {
        for (ip, &pair) in result.pairs.iter().enumerate() {
            let curve = result.curve(ia, ip);
            let mut events = detect_esd(&curve, config.zero_tol, config.min_zero_points)?;
            events.birth_time = detect_esb(&curve, config.zero_tol).birth_time;
            rows.push((alpha, pair, events));
        }
    }
    Ok(rows)
}

pub fn simulate(config: &ScenarioConfig, pool: &ThreadPool) -> Result<String, CliError> {
    Ok(output::simulate_csv(&run_sweep(config, pool)?))
}

pub fn events(config: &ScenarioConfig, pool: &ThreadPool) -> Result<String, CliError> {
    let result = run_sweep(config, pool)?;
    Ok(output::events_csv(&detect_events(config, &result)?))
}

pub fn plotdata(config: &ScenarioConfig, pool: &ThreadPool) -> Result<String, CliError> {
    Ok(output::plotdata(&run_sweep(config, pool)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    const CFG: &str = "model = dtcm\nbell_type = psi\nalpha = 0.2, 0.7\nfield_a = vacuum\nfield_b = vacuum\ntau = 0:2:21\npairs = AB, BD\n";

    #[test]
    fn sweep_layout_matches_pointwise() {
        let cfg = ScenarioConfig::parse(CFG).unwrap();
        let r = run_sweep(&cfg, &thread_pool(2).unwrap()).unwrap();
        let s = cfg.scenario();
        for (ia, &a) in r.alphas.iter().enumerate() {
            for (it, &t) in r.taus.iter().enumerate() {
                let c = s.concurrences_at(&r.pairs, &[a], t).unwrap();
                assert_eq!(r.value(ia, it, 0), c[0]);
                assert_eq!(r.value(ia, it, 1), c[1]);
            }
        }
    }

    #[test]
    fn thread_count_does_not_change_output() {
        let cfg = ScenarioConfig::parse(CFG).unwrap();
        let a = simulate(&cfg, &thread_pool(1).unwrap()).unwrap();
        let b = simulate(&cfg, &thread_pool(4).unwrap()).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.lines().count(), 1 + 2 * 21 * 2);
        assert!(a.starts_with("tau,alpha,pair,concurrence\n0,0.2,AB,"));
    }
}
