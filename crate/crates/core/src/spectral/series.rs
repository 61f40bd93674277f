use std::io::Write;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{
    ehrenfest_residual, force_expectation, momentum_expectation, momentum_rate, packet_value, position_expectation,
    WavePacket, WellConfig,
};
use crate::{par, Error, Execution, Result};

/// Observables that can be sampled over a time grid.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Observable {
    Position,
    Momentum,
    MomentumRate,
    Force,
    EhrenfestResidual,
}

impl Observable {
    pub const ALL: [Observable; 5] = [
        Observable::Position,
        Observable::Momentum,
        Observable::MomentumRate,
        Observable::Force,
        Observable::EhrenfestResidual,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Observable::Position => "position",
            Observable::Momentum => "momentum",
            Observable::MomentumRate => "momentum_rate",
            Observable::Force => "force",
            Observable::EhrenfestResidual => "ehrenfest_residual",
        }
    }

    pub fn eval(self, p: &WavePacket, t: f64, cfg: &WellConfig) -> f64 {
        match self {
            Observable::Position => position_expectation(p, t, cfg),
            Observable::Momentum => momentum_expectation(p, t, cfg),
            Observable::MomentumRate => momentum_rate(p, t, cfg),
            Observable::Force => force_expectation(p, t, cfg),
            Observable::EhrenfestResidual => ehrenfest_residual(p, t, cfg),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SeriesValues {
    Real(Vec<f64>),
    Complex(Vec<Complex64>),
}

impl SeriesValues {
    pub fn len(&self) -> usize {
        match self {
            SeriesValues::Real(v) => v.len(),
            SeriesValues::Complex(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn as_real(&self) -> Option<&[f64]> {
        match self {
            SeriesValues::Real(v) => Some(v),
            SeriesValues::Complex(_) => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeriesMetadata {
    pub packet_digest: String,
    pub config: WellConfig,
}

/// A sampled observable.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TimeSeries {
    label: String,
    metadata: SeriesMetadata,
    times: Vec<f64>,
    values: SeriesValues,
}

impl TimeSeries {
    pub fn new(
        label: impl Into<String>,
        times: Vec<f64>,
        values: SeriesValues,
        metadata: SeriesMetadata,
    ) -> Result<Self> {
        if times.len() != values.len() {
            return Err(Error::InvalidTimeSeries(format!("{} times but {} values", times.len(), values.len())));
        }
        if times.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::InvalidTimeSeries("times must be strictly increasing".into()));
        }
        Ok(TimeSeries { label: label.into(), metadata, times, values })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn values(&self) -> &SeriesValues {
        &self.values
    }

    pub fn metadata(&self) -> &SeriesMetadata {
        &self.metadata
    }

    /// `t,value` (or `t,re,im`) with every number at 17 significant digits.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        match &self.values {
            SeriesValues::Real(v) => {
                out.write_record(["t", "value"])?;
                for (t, y) in self.times.iter().zip(v) {
                    out.write_record([fmt17(*t), fmt17(*y)])?;
                }
            }
            SeriesValues::Complex(v) => {
                out.write_record(["t", "re", "im"])?;
                for (t, y) in self.times.iter().zip(v) {
                    out.write_record([fmt17(*t), fmt17(y.re), fmt17(y.im)])?;
                }
            }
        }
        out.flush()?;
        Ok(())
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

/// Fixed 17-significant-digit scientific notation.
pub(crate) fn fmt17(x: f64) -> String {
    format!("{x:.16e}")
}

/// `steps` equally spaced points from `start` to `end` inclusive.
pub fn time_grid(start: f64, end: f64, steps: usize) -> Result<Vec<f64>> {
    if steps == 0 || !start.is_finite() || !end.is_finite() {
        return Err(Error::InvalidTimeSeries("time grid needs finite bounds and at least one step".into()));
    }
    if steps == 1 {
        return Ok(vec![start]);
    }
    if !(end > start) {
        return Err(Error::InvalidTimeSeries(format!("t_end {end} must exceed t_start {start}")));
    }
    let dt = (end - start) / (steps - 1) as f64;
    Ok((0..steps).map(|i| start + i as f64 * dt).collect())
}

/// Sample `observable` at every time in `times`.
pub fn evaluate_series(
    observable: Observable,
    p: &WavePacket,
    times: &[f64],
    cfg: &WellConfig,
    exec: Execution,
) -> Result<TimeSeries> {
    let values = par::map(exec, times, |&t| observable.eval(p, t, cfg));
    TimeSeries::new(
        observable.label(),
        times.to_vec(),
        SeriesValues::Real(values),
        SeriesMetadata { packet_digest: p.digest(), config: *cfg },
    )
}

/// Sample the amplitude `Ψ(x, t)` at a fixed position.
pub fn evaluate_amplitude_series(
    p: &WavePacket,
    x: f64,
    times: &[f64],
    cfg: &WellConfig,
    exec: Execution,
) -> Result<TimeSeries> {
    let values = par::map(exec, times, |&t| packet_value(p, x, t, cfg));
    TimeSeries::new(
        format!("amplitude(x={x})"),
        times.to_vec(),
        SeriesValues::Complex(values),
        SeriesMetadata { packet_digest: p.digest(), config: *cfg },
    )
}
