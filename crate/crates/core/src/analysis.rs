// SPDX-License-Identifier: Apache-2.0

//! Interaction-regime classification, concurrence sweeps and detection of
//! entanglement sudden death (ESD) and sudden birth (ESB) on sampled curves.

use alloc::format;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::dynamics::{
    assemble_with_amplitudes, BellPairSpec, BellType, CavityChannel, FieldSpec, Model,
    PairAmplitudes,
};
use crate::entanglement::{concurrence_general, concurrence_x, is_x_form};
use crate::error::{Error, Result};
use crate::state::{partial_trace, Atom, DensityMatrix};

/// Off-pattern magnitude below which a pair state takes the X-form path.
pub const X_FORM_TOL: f64 = 1e-12;
pub const DEFAULT_ZERO_TOL: f64 = 1e-9;
pub const DEFAULT_MIN_ZERO_POINTS: usize = 3;
/// Probabilities closer than this count as tied (and so as weak).
pub const REGIME_TIE_TOL: f64 = 1e-12;

/// Two-atom subsystem whose concurrence is tracked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Pair {
    AB,
    AC,
    BD,
    CD,
}

impl Pair {
    /// Lexicographic order, which is also the output order of sweeps.
    pub const ALL: [Pair; 4] = [Pair::AB, Pair::AC, Pair::BD, Pair::CD];

    pub fn atoms(self) -> [Atom; 2] {
        match self {
            Pair::AB => [Atom::A, Atom::B],
            Pair::AC => [Atom::A, Atom::C],
            Pair::BD => [Atom::B, Atom::D],
            Pair::CD => [Atom::C, Atom::D],
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Pair::AB => "AB",
            Pair::AC => "AC",
            Pair::BD => "BD",
            Pair::CD => "CD",
        }
    }
}

impl fmt::Display for Pair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Pair {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "AB" => Ok(Pair::AB),
            "AC" => Ok(Pair::AC),
            "BD" => Ok(Pair::BD),
            "CD" => Ok(Pair::CD),
            other => Err(Error::invalid("pair", format!("unknown pair `{other}`"))),
        }
    }
}

/// Everything except the preparation angle and time.
///
/// Both atom pairs share the Bell type and the angle.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub model: Model,
    pub bell_type: BellType,
    pub field_a: FieldSpec,
    pub field_b: FieldSpec,
}

impl Scenario {
    pub fn new(model: Model, bell_type: BellType, field_a: FieldSpec, field_b: FieldSpec) -> Self {
        Scenario { model, bell_type, field_a, field_b }
    }

    /// Rejects pairs the model does not contain (`Djcm` has only `AB`).
    pub fn check_pair(&self, pair: Pair) -> Result<()> {
        if self.model == Model::Djcm && pair != Pair::AB {
            return Err(Error::invalid(
                "pair",
                format!("the one-atom-per-cavity model has no pair {pair}"),
            ));
        }
        Ok(())
    }

    pub fn channels(&self, tau: f64) -> Result<(CavityChannel, CavityChannel)> {
        Ok((
            CavityChannel::new(self.model, &self.field_a, tau)?,
            CavityChannel::new(self.model, &self.field_b, tau)?,
        ))
    }

    /// Atomic state for a validated angle in `[0, pi/2]`.
    pub fn state(&self, alpha: f64, tau: f64) -> Result<DensityMatrix> {
        let spec = BellPairSpec::new(self.bell_type, alpha)?;
        let (a, b) = self.channels(tau)?;
        self.state_with(spec.amplitudes(), &a, &b)
    }

    /// Atomic state for `cos(angle)`/`sin(angle)` amplitudes taken literally,
    /// so any real angle is accepted.
    pub fn state_for_angle(&self, angle: f64, tau: f64) -> Result<DensityMatrix> {
        let (a, b) = self.channels(tau)?;
        self.state_with(PairAmplitudes::from_angle(angle), &a, &b)
    }

    pub fn state_with(
        &self,
        amps: PairAmplitudes,
        channel_a: &CavityChannel,
        channel_b: &CavityChannel,
    ) -> Result<DensityMatrix> {
        assemble_with_amplitudes(self.bell_type, amps, amps, channel_a, channel_b)
    }

    pub fn pair_state(&self, pair: Pair, alpha: f64, tau: f64) -> Result<DensityMatrix> {
        self.check_pair(pair)?;
        partial_trace(&self.state(alpha, tau)?, &pair.atoms())
    }

    /// Concurrence of every `(alpha, pair)` combination at one time, sharing
    /// the cavity channels. Returned alpha-major: `out[ia * pairs.len() + ip]`.
    pub fn concurrences_at(&self, pairs: &[Pair], alphas: &[f64], tau: f64) -> Result<Vec<f64>> {
        for &p in pairs {
            self.check_pair(p)?;
        }
        let (a, b) = self.channels(tau)?;
        let mut out = Vec::with_capacity(pairs.len() * alphas.len());
        for &alpha in alphas {
            let spec = BellPairSpec::new(self.bell_type, alpha)?;
            let rho = self.state_with(spec.amplitudes(), &a, &b)?;
            for &p in pairs {
                out.push(pair_concurrence(&partial_trace(&rho, &p.atoms())?)?);
            }
        }
        Ok(out)
    }
}

/// Concurrence of a two-qubit state: X-form closed form when the state has
/// that shape, general formula otherwise.
pub fn pair_concurrence(rho: &DensityMatrix) -> Result<f64> {
    match is_x_form(rho, X_FORM_TOL) {
        Some(x) => Ok(concurrence_x(&x)),
        None => concurrence_general(rho),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Strong,
    Weak,
}

/// Probabilities that the number of initially excited atoms does or does not
/// reach the number of cavities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegimeReport {
    pub p_geq: f64,
    pub p_less: f64,
    pub n_cavities: u32,
    pub verdict: Verdict,
    pub predicted_esd: bool,
}

/// Strong regime iff `P_>= > P_<` strictly; a tie (up to [`REGIME_TIE_TOL`]) is weak. Any field other
/// than the vacuum puts every atom in interaction, so it is always strong.
pub fn classify_regime(
    bell_type: BellType,
    alpha: f64,
    model: Model,
    field_a: &FieldSpec,
    field_b: &FieldSpec,
) -> RegimeReport {
    const N_CAVITIES: u32 = 2;
    if !(field_a.is_vacuum() && field_b.is_vacuum()) {
        return RegimeReport {
            p_geq: 1.0,
            p_less: 0.0,
            n_cavities: N_CAVITIES,
            verdict: Verdict::Strong,
            predicted_esd: true,
        };
    }
    let amps = PairAmplitudes::from_angle(alpha);
    // (probability, excited atoms) for one pair
    let pair_terms: Vec<(f64, u32)> = (0..2u8)
        .map(|bit| {
            let w = amps.get(bit) * amps.get(bit);
            (w, bit as u32 + bell_type.partner_bit(bit) as u32)
        })
        .collect();
    let mut p_geq = 0.0;
    let mut p_less = 0.0;
    let mut tally = |w: f64, excited: u32| {
        if excited >= N_CAVITIES {
            p_geq += w;
        } else {
            p_less += w;
        }
    };
    match model {
        Model::Djcm => pair_terms.iter().for_each(|&(w, e)| tally(w, e)),
        Model::Dtcm => {
            for &(w1, e1) in &pair_terms {
                for &(w2, e2) in &pair_terms {
                    tally(w1 * w2, e1 + e2);
                }
            }
        }
    }
    let verdict = if p_geq > p_less + REGIME_TIE_TOL { Verdict::Strong } else { Verdict::Weak };
    RegimeReport {
        p_geq,
        p_less,
        n_cavities: N_CAVITIES,
        verdict,
        predicted_esd: verdict == Verdict::Strong,
    }
}

/// Sampled concurrence of one pair at one preparation angle.
#[derive(Debug, Clone, PartialEq)]
pub struct ConcurrenceCurve {
    pub pair: Pair,
    pub alpha: f64,
    pub tau_grid: Vec<f64>,
    pub values: Vec<f64>,
}

impl ConcurrenceCurve {
    pub fn new(pair: Pair, alpha: f64, tau_grid: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if tau_grid.len() != values.len() {
            return Err(Error::invalid(
                "values",
                format!("{} samples for {} grid points", values.len(), tau_grid.len()),
            ));
        }
        if tau_grid.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::invalid("tau_grid", "must be strictly ascending"));
        }
        Ok(ConcurrenceCurve { pair, alpha, tau_grid, values })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// One curve per angle, serially. Callers wanting parallelism can split the
/// work per time with [`Scenario::concurrences_at`].
pub fn sweep_concurrence(
    scenario: &Scenario,
    pair: Pair,
    alpha_grid: &[f64],
    tau_grid: &[f64],
) -> Result<Vec<ConcurrenceCurve>> {
    let mut columns = Vec::with_capacity(tau_grid.len());
    for &tau in tau_grid {
        columns.push(scenario.concurrences_at(&[pair], alpha_grid, tau)?);
    }
    alpha_grid
        .iter()
        .enumerate()
        .map(|(ia, &alpha)| {
            let values = columns.iter().map(|c| c[ia]).collect();
            ConcurrenceCurve::new(pair, alpha, tau_grid.to_vec(), values)
        })
        .collect()
}

/// Events found on a concurrence curve.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct EsdEvents {
    /// First zero sample of the first qualifying zero interval.
    pub death_time: Option<f64>,
    /// First positive sample after that interval.
    pub revival_time: Option<f64>,
    /// Onset of entanglement for initially unentangled pairs.
    pub birth_time: Option<f64>,
    /// `revival_time - death_time`, zero when there is no ESD.
    pub zero_interval_length: f64,
    /// Bracketed zero runs too short to count as an interval.
    pub touch_zeros: Vec<f64>,
}

impl EsdEvents {
    pub fn has_esd(&self) -> bool {
        self.death_time.is_some()
    }
}

/// Finds the first run of at least `min_zero_points` samples below
/// `zero_tol` with entangled samples on both sides.
pub fn detect_esd(curve: &ConcurrenceCurve, zero_tol: f64, min_zero_points: usize) -> Result<EsdEvents> {
    if min_zero_points == 0 {
        return Err(Error::invalid("min_zero_points", "must be at least 1"));
    }
    if curve.len() < min_zero_points {
        return Err(Error::invalid(
            "curve",
            format!("{} samples, fewer than min_zero_points = {min_zero_points}", curve.len()),
        ));
    }
    let zero: Vec<bool> = curve.values.iter().map(|&c| c < zero_tol).collect();
    let mut events = EsdEvents::default();
    let mut i = 0;
    while i < zero.len() {
        if !zero[i] {
            i += 1;
            continue;
        }
        let start = i;
        while i < zero.len() && zero[i] {
            i += 1;
        }
        let bracketed = start > 0 && i < zero.len();
        if !bracketed {
            continue;
        }
        if i - start >= min_zero_points {
            if events.death_time.is_none() {
                let (death, revival) = (curve.tau_grid[start], curve.tau_grid[i]);
                events.death_time = Some(death);
                events.revival_time = Some(revival);
                events.zero_interval_length = revival - death;
            }
        } else {
            events.touch_zeros.push(curve.tau_grid[start]);
        }
    }
    Ok(events)
}

/// Entanglement onset for a curve that starts unentangled: the last
/// unentangled sample right before the first entangled one. A curve that is
/// entangled from its first sample has no birth.
pub fn detect_esb(curve: &ConcurrenceCurve, zero_tol: f64) -> EsdEvents {
    let birth_time = match curve.values.iter().position(|&c| c >= zero_tol) {
        Some(first) if first > 0 => Some(curve.tau_grid[first - 1]),
        _ => None,
    };
    EsdEvents { birth_time, ..EsdEvents::default() }
}
