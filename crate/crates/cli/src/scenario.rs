//! Scenario files. Complex numbers are `[re, im]` pairs.

use std::fmt;
use std::path::Path;

use pseudospin_core::dynamics::TimeGrid;
use pseudospin_core::rabi::RabiParameters;
use pseudospin_core::{ComplexVector3, Spinor, Vec3, C64};
use serde::Deserialize;

use crate::error::{CliError, Result};

pub type Complex = [f64; 2];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    Check,
    Metric,
    Evolve,
    Bloch,
    Rabi,
    Suppress,
    #[serde(alias = "grassmann-verify")]
    GrassmannVerify,
    Sweep,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Kind::Check => "check",
            Kind::Metric => "metric",
            Kind::Evolve => "evolve",
            Kind::Bloch => "bloch",
            Kind::Rabi => "rabi",
            Kind::Suppress => "suppress",
            Kind::GrassmannVerify => "grassmann-verify",
            Kind::Sweep => "sweep",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MetricTag {
    #[default]
    Canonical,
    Eta,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ObservableTag {
    #[default]
    Dressed,
    Bare,
}

/// Right-hand side used by `bloch`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Model {
    #[default]
    DampedPrecession,
    Llg,
    SpinTorque,
}

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TimeSpec {
    #[serde(default)]
    pub start: f64,
    pub end: f64,
    pub step: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RabiSpec {
    pub b: Option<f64>,
    pub b_z: f64,
    pub omega: f64,
    pub alpha: f64,
    #[serde(default)]
    pub a: f64,
}

/// One sweep axis: a single value, an explicit list, or `count` evenly
/// spaced values from `start` to `end`.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum Axis {
    Value(f64),
    List(Vec<f64>),
    Range { start: f64, end: f64, count: usize },
}

impl Default for Axis {
    fn default() -> Self {
        Axis::Value(0.0)
    }
}

impl Axis {
    pub fn values(&self) -> Vec<f64> {
        match self {
            Axis::Value(v) => vec![*v],
            Axis::List(v) => v.clone(),
            Axis::Range { start, end, count } => match count {
                0 => Vec::new(),
                1 => vec![*start],
                n => (0..*n).map(|k| start + (end - start) * k as f64 / (*n - 1) as f64).collect(),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    pub b: Axis,
    pub b_z: Axis,
    pub omega: Axis,
    pub alpha: Axis,
    #[serde(default)]
    pub a: Axis,
}

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub kind: Option<Kind>,
    /// Complex field `F`.
    pub field: Option<[Complex; 3]>,
    /// Real field `B` (metric partner, LLG field, or Grassmann Hamiltonian).
    pub real_field: Option<[f64; 3]>,
    pub state: Option<[Complex; 2]>,
    /// Apply the isometry to `state` before evolving.
    #[serde(default)]
    pub map_initial_state: bool,
    /// Initial classical unit vector for `bloch`.
    pub bloch: Option<[f64; 3]>,
    pub time: Option<TimeSpec>,
    #[serde(default)]
    pub metric: MetricTag,
    #[serde(default)]
    pub observables: ObservableTag,
    #[serde(default)]
    pub model: Model,
    pub alpha: Option<f64>,
    pub a: Option<f64>,
    /// Pinned-layer magnetization for the spin-torque model.
    pub pinned: Option<[f64; 3]>,
    #[serde(default)]
    pub renormalize: bool,
    pub rabi: Option<RabiSpec>,
    pub sweep: Option<SweepSpec>,
    pub tol: Option<f64>,
}

fn finite(name: &str, values: &[f64]) -> Result<()> {
    if values.iter().all(|v| v.is_finite()) {
        Ok(())
    } else {
        Err(CliError::Validation(format!("`{name}` must contain finite numbers")))
    }
}

fn complex(z: Complex) -> C64 {
    C64::new(z[0], z[1])
}

impl Scenario {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Self::parse(&text).map_err(|e| match e {
            CliError::Validation(message) => CliError::Parse { path: path.into(), message },
            other => other,
        })
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| CliError::Validation(e.to_string()))
    }

    /// Rejects a `kind` that disagrees with the requested command.
    pub fn check_kind(&self, command: Kind) -> Result<()> {
        match self.kind {
            Some(k) if k != command => Err(CliError::Validation(format!(
                "scenario kind `{k}` does not match command `{command}`"
            ))),
            _ => Ok(()),
        }
    }

    pub fn field(&self, command: Kind) -> Result<ComplexVector3> {
        let f = self.field.ok_or_else(|| CliError::missing("field", &command.to_string()))?;
        finite("field", &f.concat())?;
        Ok(ComplexVector3::from_array(f.map(complex)))
    }

    pub fn real_field(&self) -> Result<Option<Vec3>> {
        match self.real_field {
            Some(b) => {
                finite("real_field", &b)?;
                Ok(Some(Vec3::from(b)))
            }
            None => Ok(None),
        }
    }

    pub fn state(&self, command: Kind) -> Result<Spinor> {
        let s = self.state.ok_or_else(|| CliError::missing("state", &command.to_string()))?;
        finite("state", &s.concat())?;
        Ok(Spinor::new(complex(s[0]), complex(s[1])))
    }

    pub fn bloch(&self, command: Kind) -> Result<Vec3> {
        let n = self.bloch.ok_or_else(|| CliError::missing("bloch", &command.to_string()))?;
        finite("bloch", &n)?;
        Vec3::from(n)
            .normalized()
            .ok_or_else(|| CliError::Validation("`bloch` must be a nonzero vector".into()))
    }

    /// Time grid, with `step` overridden when given.
    pub fn grid(&self, command: Kind, step: Option<f64>) -> Result<TimeGrid> {
        let t = self.time.ok_or_else(|| CliError::missing("time", &command.to_string()))?;
        let step = step.unwrap_or(t.step);
        Ok(TimeGrid::new(t.start, t.end, step)?)
    }

    pub fn rabi(&self, command: Kind, need_b: bool) -> Result<RabiParameters> {
        let r = self.rabi.ok_or_else(|| CliError::missing("rabi", &command.to_string()))?;
        let b = match (r.b, need_b) {
            (Some(b), _) => b,
            (None, false) => 0.0,
            (None, true) => return Err(CliError::missing("rabi.b", &command.to_string())),
        };
        finite("rabi", &[b, r.b_z, r.omega, r.alpha, r.a])?;
        Ok(RabiParameters::new(b, r.b_z, r.omega, r.alpha).with_spin_torque(r.a))
    }

    pub fn number(&self, key: &str, value: Option<f64>, command: Kind) -> Result<f64> {
        let v = value.ok_or_else(|| CliError::missing(key, &command.to_string()))?;
        finite(key, &[v])?;
        Ok(v)
    }

    /// `--tol` beats the scenario value, which beats `default`.
    pub fn tolerance(&self, cli: Option<f64>, default: f64) -> Result<f64> {
        let tol = cli.or(self.tol).unwrap_or(default);
        if !(tol > 0.0) || !tol.is_finite() {
            return Err(CliError::Validation(format!("tolerance must be positive, got {tol}")));
        }
        Ok(tol)
    }
}
