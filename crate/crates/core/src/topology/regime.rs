use std::fmt;

use serde::Serialize;

use super::TopologyError;
use crate::measure::{MeasureError, ParameterVector};

const EDGE_TOLERANCE: f64 = 1e-12;

/// Exponents `α_i` with `p_i = n^{-α_i}`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RegimePoint {
    alpha: Vec<f64>,
}

impl RegimePoint {
    pub fn new(alpha: Vec<f64>) -> Result<Self, TopologyError> {
        if let Some((index, &value)) = alpha
            .iter()
            .enumerate()
            .find(|(_, a)| !a.is_finite() || **a < 0.0)
        {
            return Err(TopologyError::InvalidExponent { index, value });
        }
        if alpha.len() < 3 {
            return Err(TopologyError::MissingExponents(alpha.len()));
        }
        Ok(RegimePoint { alpha })
    }

    pub fn alpha(&self) -> &[f64] {
        &self.alpha
    }

    /// `(n^{-α_0}, …, n^{-α_r})`.
    pub fn parameters(&self, n: u32) -> Result<ParameterVector, MeasureError> {
        let n = n as f64;
        ParameterVector::new(self.alpha.iter().map(|a| n.powf(-a)).collect())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    SimplyConnected,
    Connected,
    Disconnected,
    Boundary,
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Regime::SimplyConnected => "simply_connected",
            Regime::Connected => "connected",
            Regime::Disconnected => "disconnected",
            Regime::Boundary => "boundary",
        })
    }
}

/// `α_0 + 3α_1 + 2α_2 < 1` gives simple connectivity, `α_0 + α_1 < 1`
/// connectivity and `α_0 + α_1 > 1` disconnection; equality in either sum is
/// a boundary point.
pub fn regime_classify(point: &RegimePoint) -> Regime {
    let a = point.alpha();
    let connect = a[0] + a[1];
    let simple = a[0] + 3.0 * a[1] + 2.0 * a[2];
    if (connect - 1.0).abs() <= EDGE_TOLERANCE || (simple - 1.0).abs() <= EDGE_TOLERANCE {
        return Regime::Boundary;
    }
    if simple < 1.0 {
        debug_assert!(connect < 1.0);
        Regime::SimplyConnected
    } else if connect < 1.0 {
        Regime::Connected
    } else {
        Regime::Disconnected
    }
}
