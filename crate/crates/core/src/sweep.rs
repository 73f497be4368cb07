//! Threshold sweeps over polarization and multiplicative error, as CSV.

use std::fmt;
use std::io::{self, Write};
use std::str::FromStr;

use crate::corpus::NamedCircuit;
use crate::error::{Error, Result};
use crate::error_analysis::{uniform_check, BOUND_TOLERANCE};
use crate::model::Polarization;
use crate::reductions::{choose_r, multiplicative_gap_unchecked};

/// `start:stop:step`, inclusive of `stop` up to roundoff.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl Grid {
    pub fn values(&self) -> Vec<f64> {
        let count = ((self.stop - self.start) / self.step + 1e-9).floor() as usize + 1;
        (0..count)
            .map(|i| self.start + i as f64 * self.step)
            .collect()
    }
}

impl FromStr for Grid {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Precondition(format!("expected start:stop:step, got `{s}`"));
        let parts: Vec<f64> = s
            .split(':')
            .map(|p| p.trim().parse::<f64>().map_err(|_| bad()))
            .collect::<Result<_>>()?;
        let grid = match parts[..] {
            [v] => Grid {
                start: v,
                stop: v,
                step: 1.0,
            },
            [start, stop, step] => Grid { start, stop, step },
            _ => return Err(bad()),
        };
        if grid.step.is_nan()
            || grid.step <= 0.0
            || !grid.start.is_finite()
            || !grid.stop.is_finite()
            || grid.stop < grid.start
        {
            return Err(Error::Precondition(format!("empty or invalid grid `{s}`")));
        }
        Ok(grid)
    }
}

/// Fractions of `eps/(1-eps)` used by [`CGrid::Auto`].
pub const AUTO_C_FRACTIONS: [f64; 4] = [0.5, 0.9, 1.0, 1.1];

#[derive(Debug, Clone, PartialEq)]
pub enum CGrid {
    Auto,
    Values(Grid),
}

impl FromStr for CGrid {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "auto" {
            Ok(CGrid::Auto)
        } else {
            s.parse().map(CGrid::Values)
        }
    }
}

#[derive(Debug, Clone)]
pub struct SweepSpec {
    pub epsilons: Grid,
    pub c_grid: CGrid,
    pub delta: f64,
    pub circuits: Vec<NamedCircuit>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepValues {
    pub c_star_uniform: f64,
    pub bound: f64,
    pub r: u32,
    pub gap_multiplicative: f64,
    /// `c_star_uniform <= eps/(1-eps)`.
    pub uniform_pass: bool,
    /// `c >= eps/(1-eps)`: the uniform distribution is an admissible answer.
    pub c_admits_uniform: bool,
    /// `c <= eps - 1/delta`.
    pub hard_regime: bool,
    pub gap_pass: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub circuit_id: String,
    pub n: usize,
    pub epsilon: f64,
    pub c: Option<f64>,
    pub values: std::result::Result<SweepValues, String>,
}

pub const CSV_HEADER: &str = "circuit_id,n,epsilon,c,c_star_uniform,bound,r,gap_multiplicative,\
uniform_pass,c_admits_uniform,hard_regime,gap_pass,error";

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        let eps = self.epsilons.values();
        if eps.iter().any(|e| !(0.0..=1.0).contains(e)) {
            return Err(Error::Precondition(
                "epsilon grid must lie in [0, 1]".into(),
            ));
        }
        if !(self.delta > 0.0 && self.delta.is_finite()) {
            return Err(Error::Precondition(format!(
                "delta must be positive, got {}",
                self.delta
            )));
        }
        if self.circuits.is_empty() {
            return Err(Error::Precondition("empty circuit corpus".into()));
        }
        if let Some(c) = self
            .circuits
            .iter()
            .find(|c| c.circuit.n() > crate::model::DEFAULT_MAX_QUBITS)
        {
            return Err(Error::QubitCap {
                n: c.circuit.n(),
                cap: crate::model::DEFAULT_MAX_QUBITS,
            });
        }
        Ok(())
    }
}

fn c_values(grid: &CGrid, bound: Option<f64>) -> std::result::Result<Vec<f64>, String> {
    match grid {
        CGrid::Values(g) => Ok(g.values()),
        CGrid::Auto => bound
            .map(|b| AUTO_C_FRACTIONS.iter().map(|f| f * b).collect())
            .ok_or_else(|| "auto c grid needs eps < 1".to_string()),
    }
}

/// Computes every `(circuit, eps, c)` row; failures are kept per row.
pub fn run_sweep(spec: &SweepSpec) -> Result<Vec<SweepRow>> {
    spec.validate()?;
    let mut rows = Vec::new();
    for named in &spec.circuits {
        let n = named.circuit.n();
        for epsilon in spec.epsilons.values() {
            let eps = Polarization::new(epsilon)?;
            let report = uniform_check(&named.circuit, eps).map_err(|e| e.to_string());
            let r = choose_r(epsilon, spec.delta).map_err(|e| e.to_string());
            let cs = match c_values(&spec.c_grid, eps.uniform_bound().ok()) {
                Ok(cs) => cs,
                Err(msg) => {
                    rows.push(SweepRow {
                        circuit_id: named.id.clone(),
                        n,
                        epsilon,
                        c: None,
                        values: Err(msg),
                    });
                    continue;
                }
            };
            for c in cs {
                let values = match (&report, &r) {
                    (Ok(rep), Ok(r)) => {
                        let gap = multiplicative_gap_unchecked(epsilon, c, *r);
                        Ok(SweepValues {
                            c_star_uniform: rep.c_star,
                            bound: rep.bound,
                            r: *r,
                            gap_multiplicative: gap,
                            uniform_pass: rep.pass,
                            c_admits_uniform: c >= rep.bound,
                            hard_regime: c <= epsilon - 1.0 / spec.delta + BOUND_TOLERANCE,
                            gap_pass: gap >= 1.0 / spec.delta - BOUND_TOLERANCE,
                        })
                    }
                    (Err(e), _) | (_, Err(e)) => Err(e.clone()),
                };
                rows.push(SweepRow {
                    circuit_id: named.id.clone(),
                    n,
                    epsilon,
                    c: Some(c),
                    values,
                });
            }
        }
    }
    Ok(rows)
}

struct Field<'a>(&'a str);

impl fmt::Display for Field<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.contains([',', '"', '\n']) {
            write!(f, "\"{}\"", self.0.replace('"', "\"\""))
        } else {
            f.write_str(self.0)
        }
    }
}

pub fn write_csv<W: Write>(rows: &[SweepRow], mut out: W) -> io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for row in rows {
        write!(out, "{},{},{},", Field(&row.circuit_id), row.n, row.epsilon)?;
        match row.c {
            Some(c) => write!(out, "{c},")?,
            None => write!(out, ",")?,
        }
        match &row.values {
            Ok(v) => writeln!(
                out,
                "{},{},{},{},{},{},{},{},",
                v.c_star_uniform,
                v.bound,
                v.r,
                v.gap_multiplicative,
                v.uniform_pass,
                v.c_admits_uniform,
                v.hard_regime,
                v.gap_pass
            )?,
            Err(e) => writeln!(out, ",,,,,,,,{}", Field(e))?,
        }
    }
    Ok(())
}
