//! Grid construction and the generic deterministic sweep runner.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::emit::{Table, Value};
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scale {
    Linear,
    Log,
}

/// One sweep axis: `count` points from `start` to `stop` inclusive.
#[derive(Debug, Clone)]
pub struct Axis {
    pub name: String,
    pub start: f64,
    pub stop: f64,
    pub count: usize,
    pub scale: Scale,
}

impl Axis {
    pub fn linear(name: &str, start: f64, stop: f64, count: usize) -> Result<Self, CliError> {
        Axis {
            name: name.to_string(),
            start,
            stop,
            count,
            scale: Scale::Linear,
        }
        .validated()
    }

    pub fn log(name: &str, start: f64, stop: f64, count: usize) -> Result<Self, CliError> {
        Axis {
            name: name.to_string(),
            start,
            stop,
            count,
            scale: Scale::Log,
        }
        .validated()
    }

    fn validated(self) -> Result<Self, CliError> {
        if self.count == 0 {
            return Err(CliError::Model(format!(
                "axis {}: count must be at least 1",
                self.name
            )));
        }
        if self.start > self.stop {
            return Err(CliError::Model(format!(
                "axis {}: start must not exceed stop",
                self.name
            )));
        }
        if self.scale == Scale::Log && (self.start <= 0.0 || self.stop <= 0.0) {
            return Err(CliError::Model(format!(
                "axis {}: log scale needs positive bounds",
                self.name
            )));
        }
        Ok(self)
    }

    pub fn values(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.start];
        }
        (0..self.count)
            .map(|k| {
                let f = k as f64 / (self.count - 1) as f64;
                match self.scale {
                    Scale::Linear => self.start + f * (self.stop - self.start),
                    Scale::Log => self.start * (self.stop / self.start).powf(f),
                }
            })
            .collect()
    }

    /// Values with multiplicative jitter of the grid spacing; `frac = 0`
    /// reproduces [`Axis::values`] exactly.
    pub fn values_jittered(&self, frac: f64, rng: &mut ChaCha8Rng) -> Vec<f64> {
        let base = self.values();
        if frac == 0.0 || self.count < 2 {
            return base;
        }
        let mut out = Vec::with_capacity(base.len());
        for (k, v) in base.iter().enumerate() {
            let left = if k == 0 { 0.0 } else { (v - base[k - 1]).abs() };
            let right = if k + 1 == base.len() {
                0.0
            } else {
                (base[k + 1] - v).abs()
            };
            let span = 0.5 * left.max(right);
            out.push(v + span * frac * rng.random_range(-1.0..1.0));
        }
        out
    }
}

/// Evaluate `eval` at every grid point of the cartesian product of the axes,
/// one output row per point in grid order (last axis fastest), regardless of
/// parallel execution. Per-point model errors land in the trailing status
/// column instead of aborting the sweep.
pub fn run_sweep(
    axes: &[Axis],
    extra_columns: &[&str],
    eval: impl Fn(&[f64]) -> Result<Vec<Value>, CliError> + Sync,
) -> Result<Table, CliError> {
    if axes.is_empty() {
        return Err(CliError::Model("sweep needs at least one axis".into()));
    }
    let grids: Vec<Vec<f64>> = axes.iter().map(|a| a.values()).collect();
    let total: usize = grids.iter().map(|g| g.len()).product();

    let mut columns: Vec<&str> = axes.iter().map(|a| a.name.as_str()).collect();
    columns.extend_from_slice(extra_columns);
    columns.push("status");
    let mut table = Table::new(&columns);

    let rows: Vec<Vec<Value>> = (0..total)
        .into_par_iter()
        .map(|flat| {
            let mut idx = flat;
            let mut point = Vec::with_capacity(grids.len());
            for g in grids.iter().rev() {
                point.push(g[idx % g.len()]);
                idx /= g.len();
            }
            point.reverse();
            let mut row: Vec<Value> = point.iter().map(|&v| Value::F(v)).collect();
            match eval(&point) {
                Ok(mut cells) => {
                    cells.resize(extra_columns.len(), Value::Empty);
                    row.extend(cells);
                    row.push(Value::S("ok".into()));
                }
                Err(e) => {
                    row.extend(std::iter::repeat_n(Value::Empty, extra_columns.len()));
                    row.push(Value::S(e.brief()));
                }
            }
            row
        })
        .collect();
    for row in rows {
        table.push(row);
    }
    Ok(table)
}
