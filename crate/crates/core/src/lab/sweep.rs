use std::fmt;
use std::io::Write;
use std::str::FromStr;

use serde::Serialize;

use super::monte_carlo::{lookup_metric, monte_carlo};
use super::LabError;
use crate::rng::derive_seed;
use crate::sampler::SampleConfig;
use crate::topology::{regime_classify, RegimePoint};

/// Evenly spaced values `start, …, end` (`steps` points; one point means `start`).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AxisRange {
    pub start: f64,
    pub end: f64,
    pub steps: usize,
}

impl AxisRange {
    pub fn single(value: f64) -> Self {
        AxisRange {
            start: value,
            end: value,
            steps: 1,
        }
    }

    pub fn values(&self) -> Vec<f64> {
        if self.steps <= 1 {
            return vec![self.start];
        }
        let step = (self.end - self.start) / (self.steps - 1) as f64;
        (0..self.steps).map(|i| self.start + step * i as f64).collect()
    }
}

impl FromStr for AxisRange {
    type Err = LabError;

    /// `start:end:steps` or a single value.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || LabError::InvalidGrid(format!("cannot read axis `{s}`"));
        let parts: Vec<&str> = s.split(':').map(str::trim).collect();
        let axis = match parts.as_slice() {
            [v] => AxisRange::single(v.parse().map_err(|_| bad())?),
            [a, b, k] => AxisRange {
                start: a.parse().map_err(|_| bad())?,
                end: b.parse().map_err(|_| bad())?,
                steps: k.parse().map_err(|_| bad())?,
            },
            _ => return Err(bad()),
        };
        if axis.steps == 0 || !axis.start.is_finite() || !axis.end.is_finite() {
            return Err(bad());
        }
        Ok(axis)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepMetric {
    ConnectedFraction,
    CertifiedFraction,
    /// Fraction of trials with at least one isolated vertex.
    IsolatedVertexFraction,
    MeanDimension,
    /// Expands to one row per dimension: `mean_f0`, `mean_f1`, `mean_f2`.
    MeanFVector,
}

impl SweepMetric {
    /// Registry metrics evaluated per cell, with the name written to the CSV.
    fn components(self) -> Vec<(&'static str, &'static str)> {
        match self {
            SweepMetric::ConnectedFraction => vec![("connected", "connected_fraction")],
            SweepMetric::CertifiedFraction => vec![("certified", "certified_fraction")],
            SweepMetric::IsolatedVertexFraction => {
                vec![("has_isolated_vertex", "isolated_vertex_fraction")]
            }
            SweepMetric::MeanDimension => vec![("dimension", "mean_dimension")],
            SweepMetric::MeanFVector => vec![("f0", "mean_f0"), ("f1", "mean_f1"), ("f2", "mean_f2")],
        }
    }
}

impl fmt::Display for SweepMetric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SweepMetric::ConnectedFraction => "connected_fraction",
            SweepMetric::CertifiedFraction => "certified_fraction",
            SweepMetric::IsolatedVertexFraction => "isolated_vertex_fraction",
            SweepMetric::MeanDimension => "mean_dimension",
            SweepMetric::MeanFVector => "mean_f_vector",
        })
    }
}

impl FromStr for SweepMetric {
    type Err = LabError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "connected_fraction" => Ok(SweepMetric::ConnectedFraction),
            "certified_fraction" => Ok(SweepMetric::CertifiedFraction),
            "isolated_vertex_fraction" => Ok(SweepMetric::IsolatedVertexFraction),
            "mean_dimension" => Ok(SweepMetric::MeanDimension),
            "mean_f_vector" => Ok(SweepMetric::MeanFVector),
            _ => Err(LabError::UnknownMetric(s.to_string())),
        }
    }
}

/// Exponent grid for `p_i = n^{-α_i}`, `i = 0, 1, 2`.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepGrid {
    pub axes: [AxisRange; 3],
    pub n: u32,
    pub trials: u64,
    pub metric: SweepMetric,
}

impl SweepGrid {
    pub fn validate(&self) -> Result<(), LabError> {
        if self.trials == 0 {
            return Err(LabError::ZeroTrials);
        }
        if self.n == 0 {
            return Err(LabError::InvalidGrid("n must be positive".into()));
        }
        for axis in &self.axes {
            if axis.steps == 0 {
                return Err(LabError::InvalidGrid("every axis needs a step".into()));
            }
            if axis.values().iter().any(|&a| a < 0.0) {
                return Err(LabError::InvalidGrid("exponents must be >= 0".into()));
            }
        }
        Ok(())
    }

    /// Cells in row-major order, `α_0` slowest.
    pub fn cells(&self) -> Vec<[f64; 3]> {
        let [a, b, c] = self.axes.map(|ax| ax.values());
        let mut out = Vec::with_capacity(a.len() * b.len() * c.len());
        for &x in &a {
            for &y in &b {
                for &z in &c {
                    out.push([x, y, z]);
                }
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepRow {
    pub alpha0: f64,
    pub alpha1: f64,
    pub alpha2: f64,
    pub n: u32,
    pub trials: u64,
    pub metric: String,
    pub estimate: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub regime: String,
}

/// One Monte Carlo estimate per cell (per dimension for `mean_f_vector`);
/// cell `i` draws from `derive_seed(seed, i)`.
pub fn sweep(grid: &SweepGrid, seed: u64) -> Result<Vec<SweepRow>, LabError> {
    grid.validate()?;
    let mut rows = Vec::new();
    for (i, alpha) in grid.cells().into_iter().enumerate() {
        let point = RegimePoint::new(alpha.to_vec())?;
        let regime = regime_classify(&point).to_string();
        let params = point.parameters(grid.n)?;
        let config = SampleConfig::new(grid.n, params, derive_seed(seed, i as u64), grid.trials)?;
        for (registry_name, column) in grid.metric.components() {
            debug_assert!(lookup_metric(registry_name).is_some());
            let report = monte_carlo(registry_name, &config)?;
            rows.push(SweepRow {
                alpha0: alpha[0],
                alpha1: alpha[1],
                alpha2: alpha[2],
                n: grid.n,
                trials: grid.trials,
                metric: column.to_string(),
                estimate: report.estimate,
                ci_low: report.ci_low,
                ci_high: report.ci_high,
                regime: regime.clone(),
            });
        }
    }
    Ok(rows)
}

/// CSV with header `alpha0,alpha1,alpha2,n,trials,metric,estimate,ci_low,ci_high,regime`.
pub fn write_csv<W: Write>(rows: &[SweepRow], out: W) -> Result<(), LabError> {
    let mut writer = csv::Writer::from_writer(out);
    if rows.is_empty() {
        writer.write_record([
            "alpha0", "alpha1", "alpha2", "n", "trials", "metric", "estimate", "ci_low", "ci_high", "regime",
        ])?;
    }
    for row in rows {
        writer.serialize(row)?;
    }
    writer.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(axes: [&str; 3], n: u32, trials: u64, metric: SweepMetric) -> SweepGrid {
        SweepGrid {
            axes: axes.map(|a| a.parse().unwrap()),
            n,
            trials,
            metric,
        }
    }

    #[test]
    fn axis_parsing() {
        let a: AxisRange = "0:1:5".parse().unwrap();
        assert_eq!(a.values(), vec![0.0, 0.25, 0.5, 0.75, 1.0]);
        assert_eq!("0.3".parse::<AxisRange>().unwrap().values(), vec![0.3]);
        assert!("1:2".parse::<AxisRange>().is_err());
        assert!("0:1:0".parse::<AxisRange>().is_err());
    }

    #[test]
    fn two_by_two_grid_has_four_rows() {
        let g = grid(["0:0.5:2", "0.2:0.4:2", "0"], 30, 5, SweepMetric::ConnectedFraction);
        let rows = sweep(&g, 1).unwrap();
        assert_eq!(rows.len(), 4);
        assert_eq!((rows[1].alpha0, rows[1].alpha1), (0.0, 0.4));
        assert_eq!(rows[2].alpha0, 0.5);
        let mut buf = Vec::new();
        write_csv(&rows, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("alpha0,alpha1,alpha2,n,trials,metric,estimate,ci_low,ci_high,regime\n"));
        assert_eq!(text.lines().count(), 5);
    }

    #[test]
    fn f_vector_expands_and_is_reproducible() {
        let g = grid(["0.1", "0.2", "0.0"], 20, 4, SweepMetric::MeanFVector);
        let rows = sweep(&g, 8).unwrap();
        let names: Vec<&str> = rows.iter().map(|r| r.metric.as_str()).collect();
        assert_eq!(names, ["mean_f0", "mean_f1", "mean_f2"]);
        assert_eq!(rows, sweep(&g, 8).unwrap());
    }

    #[test]
    fn invalid_grids() {
        assert!(sweep(&grid(["0", "0", "0"], 10, 0, SweepMetric::MeanDimension), 0).is_err());
        assert!(sweep(&grid(["-1", "0", "0"], 10, 2, SweepMetric::MeanDimension), 0).is_err());
        assert!("volume".parse::<SweepMetric>().is_err());
    }
}
