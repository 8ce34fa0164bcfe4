use std::io::{self, Write};

use dirac2d::{QuantumNumbers, Result};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Pretty,
}

/// One row of `levels` or `zeeman` output. Every key is always present;
/// quantities that do not apply are `null` in JSON and empty in CSV.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OutputRecord {
    pub label: String,
    pub n: u32,
    pub n_prime: u32,
    pub kappa: String,
    pub mu: Option<String>,
    pub l: u32,
    pub energy: f64,
    pub shift_e1: Option<f64>,
    pub shift_nonrel: Option<f64>,
    pub energy_in_field: Option<f64>,
}

impl OutputRecord {
    pub fn level(qn: &QuantumNumbers, energy: f64) -> Self {
        Self {
            label: qn.label(),
            n: qn.n,
            n_prime: qn.n_prime,
            kappa: qn.kappa.to_string(),
            mu: None,
            l: qn.l,
            energy: round_decimals(energy, 12),
            shift_e1: None,
            shift_nonrel: None,
            energy_in_field: None,
        }
    }
}

/// Value as printed with `places` decimals, so every format carries the same number.
pub fn round_decimals(x: f64, places: usize) -> f64 {
    format!("{x:.places$}").parse().expect("formatted float parses")
}

pub fn round_significant(x: f64, digits: usize) -> f64 {
    let places = digits - 1;
    format!("{x:.places$e}").parse().expect("formatted float parses")
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Sample {
    pub r: f64,
    #[serde(rename = "F")]
    pub large: f64,
    #[serde(rename = "G")]
    pub small: f64,
    pub density: f64,
}

fn opt(x: Option<f64>) -> String {
    match x {
        None => "-".to_string(),
        Some(v) if v != 0.0 && v.abs() < 1e-3 => format!("{v:.11e}"),
        Some(v) => v.to_string(),
    }
}

pub fn render_records(records: &[OutputRecord], format: Format, out: &mut impl Write) -> Result<()> {
    match format {
        Format::Csv => write_csv(records, out),
        Format::Json => write_json(records, out),
        Format::Pretty => {
            let io = (|| -> io::Result<()> {
                writeln!(
                    out,
                    "{:<8} {:>2} {:>3} {:>5} {:>5} {:>2} {:>16} {:>20} {:>6} {:>16}",
                    "state", "n", "n'", "kappa", "mu", "l", "energy", "E1", "EN", "E(B)"
                )?;
                for r in records {
                    writeln!(
                        out,
                        "{:<8} {:>2} {:>3} {:>5} {:>5} {:>2} {:>16.12} {:>20} {:>6} {:>16}",
                        r.label,
                        r.n,
                        r.n_prime,
                        r.kappa,
                        r.mu.as_deref().unwrap_or("-"),
                        r.l,
                        r.energy,
                        opt(r.shift_e1),
                        opt(r.shift_nonrel),
                        opt(r.energy_in_field),
                    )?;
                }
                Ok(())
            })();
            io.map_err(io_error)
        }
    }
}

pub fn render_samples(samples: &[Sample], format: Format, out: &mut impl Write) -> Result<()> {
    match format {
        Format::Csv => write_csv(samples, out),
        Format::Json => write_json(samples, out),
        Format::Pretty => {
            let io = (|| -> io::Result<()> {
                writeln!(out, "{:>12} {:>22} {:>22} {:>22}", "r", "F", "G", "density")?;
                for s in samples {
                    writeln!(out, "{:>12.6} {:>22.15e} {:>22.15e} {:>22.15e}", s.r, s.large, s.small, s.density)?;
                }
                Ok(())
            })();
            io.map_err(io_error)
        }
    }
}

fn write_csv<T: Serialize>(rows: &[T], out: &mut impl Write) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row).map_err(|e| dirac2d::Error::Internal(e.to_string()))?;
    }
    w.flush().map_err(io_error)
}

fn write_json<T: Serialize>(rows: &[T], out: &mut impl Write) -> Result<()> {
    serde_json::to_writer_pretty(&mut *out, rows).map_err(|e| dirac2d::Error::Internal(e.to_string()))?;
    writeln!(out).map_err(io_error)
}

fn io_error(e: io::Error) -> dirac2d::Error {
    dirac2d::Error::Internal(e.to_string())
}
