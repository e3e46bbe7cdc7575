// SPDX-License-Identifier: Apache-2.0

//! Scenario configuration files.
//!
//! Flat `key = value` lines, `#` starts a comment. Keys:
//!
//! ```text
//! model     = dtcm | djcm
//! bell_type = psi | phi
//! alpha     = 0.3            # single value
//! alpha     = pi/12, pi/8    # list
//! alpha     = 0:pi/2:51      # grid start:stop:points
//! field_a   = vacuum | fock:<n> | thermal:<nbar>[,<eps>]
//! field_b   = ...
//! tau       = 0:25:2501
//! pairs     = AB, CD
//! output    = out.csv        # optional
//! zero_tol  = 1e-9           # optional
//! min_zero_points = 3        # optional
//! ```
//!
//! Numbers accept `pi` as a factor: `pi`, `pi/4`, `0.05*pi`, `3pi/8`.

use std::fmt;
use std::path::PathBuf;

use dtcm_core::analysis::{Scenario, DEFAULT_MIN_ZERO_POINTS, DEFAULT_ZERO_TOL};
use dtcm_core::dynamics::DEFAULT_TAIL_MASS_EPSILON;
use dtcm_core::{BellType, FieldSpec, Model, Pair};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
#[error("{key}: {message}")]
pub struct ConfigError {
    pub key: String,
    pub message: String,
}

impl ConfigError {
    pub fn new(key: impl Into<String>, message: impl Into<String>) -> Self {
        ConfigError { key: key.into(), message: message.into() }
    }
}

type Result<T> = std::result::Result<T, ConfigError>;

/// Evenly spaced grid, both ends included.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub start: f64,
    pub stop: f64,
    pub points: usize,
}

impl Grid {
    pub fn new(start: f64, stop: f64, points: usize) -> std::result::Result<Self, String> {
        if points < 2 {
            return Err(format!("grid needs at least 2 points, got {points}"));
        }
        if !start.is_finite() || !stop.is_finite() || stop <= start {
            return Err(format!("grid span must be positive, got {start}..{stop}"));
        }
        Ok(Grid { start, stop, points })
    }

    pub fn values(&self) -> Vec<f64> {
        let step = (self.stop - self.start) / (self.points - 1) as f64;
        (0..self.points)
            .map(|k| if k + 1 == self.points { self.stop } else { self.start + k as f64 * step })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum AlphaSpec {
    List(Vec<f64>),
    Grid(Grid),
}

impl AlphaSpec {
    pub fn values(&self) -> Vec<f64> {
        match self {
            AlphaSpec::List(v) => v.clone(),
            AlphaSpec::Grid(g) => g.values(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub model: Model,
    pub bell_type: BellType,
    pub alpha: AlphaSpec,
    pub field_a: FieldSpec,
    pub field_b: FieldSpec,
    pub tau: Grid,
    pub pairs: Vec<Pair>,
    pub output: Option<PathBuf>,
    pub zero_tol: f64,
    pub min_zero_points: usize,
}

impl ScenarioConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let mut raw = RawConfig::default();
        raw.apply_text(text)?;
        raw.finish()
    }

    /// Parses `text`, then applies `key=value` overrides in order.
    pub fn parse_with_overrides(text: &str, overrides: &[String]) -> Result<Self> {
        let mut raw = RawConfig::default();
        raw.apply_text(text)?;
        for o in overrides {
            raw.apply_line(o, None)?;
        }
        raw.finish()
    }

    pub fn scenario(&self) -> Scenario {
        Scenario::new(self.model, self.bell_type, self.field_a, self.field_b)
    }

    pub fn alphas(&self) -> Vec<f64> {
        self.alpha.values()
    }

    pub fn taus(&self) -> Vec<f64> {
        self.tau.values()
    }

    /// Config text that parses back to an equal value.
    pub fn to_config_string(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for ScenarioConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let model = match self.model {
            Model::Dtcm => "dtcm",
            Model::Djcm => "djcm",
        };
        let bell = match self.bell_type {
            BellType::Psi => "psi",
            BellType::Phi => "phi",
        };
        writeln!(f, "model = {model}")?;
        writeln!(f, "bell_type = {bell}")?;
        match &self.alpha {
            AlphaSpec::List(v) => {
                let items: Vec<String> = v.iter().map(|x| format!("{x:?}")).collect();
                writeln!(f, "alpha = {}", items.join(", "))?;
            }
            AlphaSpec::Grid(g) => writeln!(f, "alpha = {:?}:{:?}:{}", g.start, g.stop, g.points)?,
        }
        writeln!(f, "field_a = {}", field_to_string(&self.field_a))?;
        writeln!(f, "field_b = {}", field_to_string(&self.field_b))?;
        writeln!(f, "tau = {:?}:{:?}:{}", self.tau.start, self.tau.stop, self.tau.points)?;
        let pairs: Vec<&str> = self.pairs.iter().map(|p| p.label()).collect();
        writeln!(f, "pairs = {}", pairs.join(", "))?;
        if let Some(out) = &self.output {
            writeln!(f, "output = {}", out.display())?;
        }
        writeln!(f, "zero_tol = {:?}", self.zero_tol)?;
        writeln!(f, "min_zero_points = {}", self.min_zero_points)
    }
}

fn field_to_string(field: &FieldSpec) -> String {
    match *field {
        FieldSpec::Vacuum => "vacuum".into(),
        FieldSpec::Fock(n) => format!("fock:{n}"),
        FieldSpec::Thermal { nbar, tail_mass_epsilon } => format!("thermal:{nbar:?},{tail_mass_epsilon:?}"),
    }
}

#[derive(Debug, Default)]
struct RawConfig {
    model: Option<Model>,
    bell_type: Option<BellType>,
    alpha: Option<AlphaSpec>,
    field_a: Option<FieldSpec>,
    field_b: Option<FieldSpec>,
    tau: Option<Grid>,
    pairs: Option<Vec<Pair>>,
    output: Option<PathBuf>,
    zero_tol: Option<f64>,
    min_zero_points: Option<usize>,
}

impl RawConfig {
    fn apply_text(&mut self, text: &str) -> Result<()> {
        for (n, line) in text.lines().enumerate() {
            self.apply_line(line, Some(n + 1))?;
        }
        Ok(())
    }

    fn apply_line(&mut self, line: &str, line_no: Option<usize>) -> Result<()> {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            return Ok(());
        }
        let at = |msg: String| match line_no {
            Some(n) => format!("line {n}: {msg}"),
            None => msg,
        };
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| ConfigError::new("config", at(format!("expected key = value, got `{line}`"))))?;
        let (key, value) = (key.trim(), value.trim());
        let err = |msg: String| ConfigError::new(key, at(msg));
        match key {
            "model" => {
                self.model = Some(match value.to_ascii_lowercase().as_str() {
                    "dtcm" => Model::Dtcm,
                    "djcm" => Model::Djcm,
                    _ => return Err(err(format!("expected dtcm or djcm, got `{value}`"))),
                })
            }
            "bell_type" => {
                self.bell_type = Some(match value.to_ascii_lowercase().as_str() {
                    "psi" => BellType::Psi,
                    "phi" => BellType::Phi,
                    _ => return Err(err(format!("expected psi or phi, got `{value}`"))),
                })
            }
            "alpha" => self.alpha = Some(parse_alpha(value).map_err(err)?),
            "field_a" => self.field_a = Some(parse_field(value).map_err(err)?),
            "field_b" => self.field_b = Some(parse_field(value).map_err(err)?),
            "tau" => {
                let grid = parse_grid(value).map_err(err)?;
                if grid.start < 0.0 {
                    return Err(err(format!("times must be nonnegative, got start {}", grid.start)));
                }
                self.tau = Some(grid);
            }
            "pairs" => {
                let pairs = value
                    .split(',')
                    .map(str::trim)
                    .filter(|s| !s.is_empty())
                    .map(|s| s.parse::<Pair>().map_err(|_| err(format!("unknown pair `{s}`"))))
                    .collect::<Result<Vec<_>>>()?;
                if pairs.is_empty() {
                    return Err(err("pair list is empty".into()));
                }
                self.pairs = Some(pairs);
            }
            "output" => self.output = (!value.is_empty()).then(|| PathBuf::from(value)),
            "zero_tol" => {
                let v = parse_number(value).map_err(err)?;
                if !(v > 0.0 && v.is_finite()) {
                    return Err(err(format!("must be positive, got {value}")));
                }
                self.zero_tol = Some(v);
            }
            "min_zero_points" => {
                let v: usize = value.parse().map_err(|_| err(format!("expected a positive integer, got `{value}`")))?;
                if v == 0 {
                    return Err(err("must be at least 1".into()));
                }
                self.min_zero_points = Some(v);
            }
            _ => return Err(ConfigError::new(key, at("unknown key".into()))),
        }
        Ok(())
    }

    fn finish(self) -> Result<ScenarioConfig> {
        let missing = |k: &str| ConfigError::new(k, "missing required key");
        let model = self.model.ok_or_else(|| missing("model"))?;
        let pairs = self.pairs.ok_or_else(|| missing("pairs"))?;
        if model == Model::Djcm {
            if let Some(p) = pairs.iter().find(|&&p| p != Pair::AB) {
                return Err(ConfigError::new("pairs", format!("djcm has only pair AB, got {p}")));
            }
        }
        Ok(ScenarioConfig {
            model,
            bell_type: self.bell_type.ok_or_else(|| missing("bell_type"))?,
            alpha: self.alpha.ok_or_else(|| missing("alpha"))?,
            field_a: self.field_a.ok_or_else(|| missing("field_a"))?,
            field_b: self.field_b.ok_or_else(|| missing("field_b"))?,
            tau: self.tau.ok_or_else(|| missing("tau"))?,
            pairs,
            output: self.output,
            zero_tol: self.zero_tol.unwrap_or(DEFAULT_ZERO_TOL),
            min_zero_points: self.min_zero_points.unwrap_or(DEFAULT_MIN_ZERO_POINTS),
        })
    }
}

/// A real number, optionally multiplied or divided by `pi` and other numbers.
pub fn parse_number(s: &str) -> std::result::Result<f64, String> {
    let s = s.trim();
    if s.is_empty() {
        return Err("empty number".into());
    }
    let mut value = 1.0;
    let mut divide = false;
    let mut rest = s;
    loop {
        let end = rest.find(['*', '/']).unwrap_or(rest.len());
        let factor = parse_factor(rest[..end].trim()).ok_or_else(|| format!("cannot parse number `{s}`"))?;
        value = if divide { value / factor } else { value * factor };
        if end == rest.len() {
            break;
        }
        divide = rest.as_bytes()[end] == b'/';
        rest = &rest[end + 1..];
    }
    if !value.is_finite() {
        return Err(format!("number `{s}` is not finite"));
    }
    Ok(value)
}

fn parse_factor(s: &str) -> Option<f64> {
    let lower = s.to_ascii_lowercase();
    if let Some(coef) = lower.strip_suffix("pi") {
        let coef = coef.trim();
        let c = match coef {
            "" => 1.0,
            "-" => -1.0,
            _ => coef.parse::<f64>().ok()?,
        };
        return Some(c * std::f64::consts::PI);
    }
    lower.parse::<f64>().ok()
}

pub fn parse_grid(s: &str) -> std::result::Result<Grid, String> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 3 {
        return Err(format!("expected start:stop:points, got `{s}`"));
    }
    let points: usize = parts[2].trim().parse().map_err(|_| format!("bad point count `{}`", parts[2].trim()))?;
    Grid::new(parse_number(parts[0])?, parse_number(parts[1])?, points)
}

fn check_alpha(a: f64) -> std::result::Result<f64, String> {
    const SLACK: f64 = 1e-12;
    if !(-SLACK..=std::f64::consts::FRAC_PI_2 + SLACK).contains(&a) {
        return Err(format!("alpha must lie in [0, pi/2], got {a}"));
    }
    Ok(a.clamp(0.0, std::f64::consts::FRAC_PI_2))
}

fn parse_alpha(s: &str) -> std::result::Result<AlphaSpec, String> {
    if s.contains(':') {
        let g = parse_grid(s)?;
        check_alpha(g.start)?;
        check_alpha(g.stop)?;
        let g = Grid::new(g.start.max(0.0), g.stop.min(std::f64::consts::FRAC_PI_2), g.points)?;
        return Ok(AlphaSpec::Grid(g));
    }
    let values = s
        .split(',')
        .map(|v| parse_number(v).and_then(check_alpha))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    Ok(AlphaSpec::List(values))
}

pub fn parse_field(s: &str) -> std::result::Result<FieldSpec, String> {
    let s = s.trim().to_ascii_lowercase();
    let (kind, arg) = match s.split_once(':') {
        Some((k, a)) => (k.trim(), Some(a.trim())),
        None => (s.as_str(), None),
    };
    match (kind, arg) {
        ("vacuum", None) => Ok(FieldSpec::Vacuum),
        ("fock", Some(n)) => n
            .parse::<u32>()
            .map(FieldSpec::Fock)
            .map_err(|_| format!("bad photon number `{n}`")),
        ("thermal", Some(args)) => {
            let (nbar, eps) = match args.split_once(',') {
                Some((n, e)) => (parse_number(n)?, parse_number(e)?),
                None => (parse_number(args)?, DEFAULT_TAIL_MASS_EPSILON),
            };
            if !(nbar > 0.0) {
                return Err(format!("thermal nbar must be positive, got {nbar}"));
            }
            if !(eps > 0.0 && eps < 1.0) {
                return Err(format!("tail mass epsilon must lie in (0, 1), got {eps}"));
            }
            Ok(FieldSpec::Thermal { nbar, tail_mass_epsilon: eps })
        }
        _ => Err(format!("expected vacuum, fock:<n> or thermal:<nbar>[,<eps>], got `{s}`")),
    }
}
