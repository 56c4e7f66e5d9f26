//! Parameter sweeps producing the bound-versus-N tables behind the erasure and
//! dephasing figures.

use std::cmp::Ordering;
use std::io::Write;

use rayon::prelude::*;
use serde::Serialize;

use crate::combinatorics::{frac, int, ExactRational};
use crate::dephasing::{qfi_lower_bound_dephasing, qfi_lower_bound_iid};
use crate::erasure::qfi_lower_bound_erasure;
use crate::error::{Error, Result};
use crate::render::{f64_to_decimal, to_decimal, to_f64};

/// Fixed CSV column order.
pub const CSV_HEADER: [&str; 11] = [
    "mode",
    "N",
    "g",
    "n",
    "u",
    "noise_param",
    "bound",
    "bound_over_N",
    "bound_over_N2",
    "exponent",
    "error",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SweepMode {
    Erasure,
    DephasingSingle,
    DephasingIid,
}

impl SweepMode {
    pub fn as_str(&self) -> &'static str {
        match self {
            SweepMode::Erasure => "erasure",
            SweepMode::DephasingSingle => "dephasing_single",
            SweepMode::DephasingIid => "dephasing_iid",
        }
    }

    /// The `u` of the probe family used by this mode.
    pub fn u(&self) -> u64 {
        match self {
            SweepMode::Erasure => 1,
            _ => 2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub mode: SweepMode,
    pub n_values: Vec<u64>,
    /// `t` (erasure), `lambda` (single error) or `t_expected` (i.i.d.).
    pub noise_values: Vec<ExactRational>,
    pub max_qubits: u64,
}

impl SweepConfig {
    /// Erasure grid: `n = 2..6`, `t = 1..3`, `N <= 200`.
    pub fn fig1() -> Self {
        Self {
            mode: SweepMode::Erasure,
            n_values: (2..=6).collect(),
            noise_values: (1..=3).map(int).collect(),
            max_qubits: 200,
        }
    }

    /// Single-error dephasing grid: `lambda = 1/2`, `n = 2..6`, `N <= 200`.
    pub fn fig2() -> Self {
        Self {
            mode: SweepMode::DephasingSingle,
            n_values: (2..=6).collect(),
            noise_values: vec![frac(1, 2)],
            max_qubits: 200,
        }
    }

    pub fn preset(name: &str) -> Result<Self> {
        match name {
            "fig1" => Ok(Self::fig1()),
            "fig2" => Ok(Self::fig2()),
            other => Err(Error::Domain(format!("unknown preset {other:?} (expected fig1 or fig2)"))),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_values.is_empty() || self.noise_values.is_empty() {
            return Err(Error::Domain("sweep lists must be non-empty".into()));
        }
        if self.n_values.contains(&0) {
            return Err(Error::Domain("n values must be >= 1".into()));
        }
        if self.mode == SweepMode::Erasure && self.noise_values.iter().any(|t| !t.is_integer() || t < &int(0)) {
            return Err(Error::Domain("erasure t values must be non-negative integers".into()));
        }
        Ok(())
    }
}

/// One output row; numeric fields are already rendered.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRecord {
    pub mode: String,
    #[serde(rename = "N")]
    pub big_n: u64,
    pub g: u64,
    pub n: u64,
    pub u: u64,
    pub noise_param: String,
    pub bound: String,
    #[serde(rename = "bound_over_N")]
    pub bound_over_n: String,
    #[serde(rename = "bound_over_N2")]
    pub bound_over_n2: String,
    pub exponent: String,
    pub error: String,
}

/// A computed point with its exact value kept alongside the record.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepPoint {
    pub mode: SweepMode,
    pub g: u64,
    pub n: u64,
    pub noise: ExactRational,
    pub bound: Result<ExactRational>,
}

impl SweepPoint {
    pub fn qubits(&self) -> u64 {
        self.g * self.n * self.mode.u()
    }

    pub fn record(&self) -> SweepRecord {
        let big_n = self.qubits();
        let mut rec = SweepRecord {
            mode: self.mode.as_str().to_string(),
            big_n,
            g: self.g,
            n: self.n,
            u: self.mode.u(),
            noise_param: to_decimal(&self.noise),
            bound: String::new(),
            bound_over_n: String::new(),
            bound_over_n2: String::new(),
            exponent: String::new(),
            error: String::new(),
        };
        match &self.bound {
            Ok(b) => {
                let x = int(big_n as i64);
                rec.bound = to_decimal(b);
                rec.bound_over_n = to_decimal(&(b / &x));
                rec.bound_over_n2 = to_decimal(&(b / (&x * &x)));
                let bf = to_f64(b);
                if bf > 0.0 && big_n > 1 {
                    rec.exponent = f64_to_decimal(bf.ln() / (big_n as f64).ln());
                }
            }
            Err(e) => rec.error = e.to_string(),
        }
        rec
    }
}

/// Evaluate one point of the given mode.
pub fn evaluate(mode: SweepMode, g: u64, n: u64, noise: &ExactRational) -> Result<ExactRational> {
    match mode {
        SweepMode::Erasure => {
            let t = noise
                .to_integer()
                .try_into()
                .map_err(|_| Error::Domain("erasure t out of range".into()))?;
            qfi_lower_bound_erasure(g, n, t)
        }
        SweepMode::DephasingSingle => qfi_lower_bound_dephasing(g, n, noise),
        SweepMode::DephasingIid => qfi_lower_bound_iid(g, n, noise).map(|b| b.value),
    }
}

fn grid(config: &SweepConfig) -> Vec<(u64, u64, ExactRational)> {
    let u = config.mode.u();
    let mut out = Vec::new();
    for &n in &config.n_values {
        for noise in &config.noise_values {
            let mut g = 1;
            while g * n * u <= config.max_qubits {
                let keep = match config.mode {
                    // only points satisfying t < min(g, n)
                    SweepMode::Erasure => {
                        let t = noise.to_integer();
                        t < g.into() && t < n.into()
                    }
                    _ => true,
                };
                if keep {
                    out.push((g, n, noise.clone()));
                }
                g += 1;
            }
        }
    }
    out
}

fn point_order(a: &SweepPoint, b: &SweepPoint) -> Ordering {
    (a.mode, a.n)
        .cmp(&(b.mode, b.n))
        .then_with(|| a.noise.cmp(&b.noise))
        .then_with(|| a.qubits().cmp(&b.qubits()))
}

/// Evaluate every grid point (in parallel) and return them in
/// `(mode, n, noise_param, N)` order.
pub fn run_sweep(config: &SweepConfig) -> Result<Vec<SweepPoint>> {
    config.validate()?;
    let mode = config.mode;
    let mut points: Vec<SweepPoint> = grid(config)
        .into_par_iter()
        .map(|(g, n, noise)| {
            let bound = evaluate(mode, g, n, &noise);
            SweepPoint { mode, g, n, noise, bound }
        })
        .collect();
    points.sort_by(point_order);
    Ok(points)
}

pub fn write_csv<W: Write>(records: &[SweepRecord], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in records {
        w.write_record([
            r.mode.as_str(),
            &r.big_n.to_string(),
            &r.g.to_string(),
            &r.n.to_string(),
            &r.u.to_string(),
            &r.noise_param,
            &r.bound,
            &r.bound_over_n,
            &r.bound_over_n2,
            &r.exponent,
            &r.error,
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_json<W: Write>(records: &[SweepRecord], mut out: W) -> Result<()> {
    serde_json::to_writer_pretty(&mut out, records)?;
    writeln!(out)?;
    Ok(())
}

pub fn write_records<W: Write>(records: &[SweepRecord], format: OutputFormat, out: W) -> Result<()> {
    match format {
        OutputFormat::Csv => write_csv(records, out),
        OutputFormat::Json => write_json(records, out),
    }
}
