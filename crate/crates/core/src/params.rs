//! Closed-form transforms of parameter vectors: links, link intersections,
//! products of independent complexes, restriction, degree laws and presets.
//!
//! Every law here is monomial in the input, so transforms are carried as
//! integer exponent matrices and only evaluated at the end.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use statrs::distribution::{Binomial, Discrete};
use statrs::function::factorial::binomial;
use thiserror::Error;

use crate::measure::{MeasureError, ParameterVector};

#[derive(Debug, Error)]
pub enum ParamsError {
    #[error("simplex dimension {k} needs k < r = {r}")]
    LinkDimension { k: usize, r: usize },
    #[error("degree law of a {k}-simplex needs k + 1 <= r = {r}")]
    DegreeDimension { k: usize, r: usize },
    #[error("a {k}-simplex does not fit on {n} vertices")]
    DegreeVertices { k: usize, n: u64 },
    #[error("intersection of links needs at least one vertex, got {0}")]
    LinkCount(usize),
    #[error("the parameter vector has no edge layer")]
    NoEdgeLayer,
    #[error("the degree-zero expectation needs r >= 2, got r = {0}")]
    NeedsTriangles(usize),
    #[error("vectors of lengths {0} and {1} cannot be multiplied")]
    LengthMismatch(usize, usize),
    #[error("unknown model `{0}`")]
    UnknownPreset(String),
    #[error("model {preset} has r = {natural}, asked for r = {r}")]
    PresetDimension { preset: String, natural: usize, r: usize },
    #[error(transparent)]
    Measure(#[from] MeasureError),
}

/// `p'_i = ∏_j p_j^{e[i][j]}`, a monomial map from length `input` to length `rows.len()`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExponentMap {
    input: usize,
    rows: Vec<Vec<u64>>,
}

impl ExponentMap {
    pub fn identity(len: usize) -> Self {
        let rows = (0..len)
            .map(|i| (0..len).map(|j| (i == j) as u64).collect())
            .collect();
        ExponentMap { input: len, rows }
    }

    /// Link of a vertex: `p'_i = p_i p_{i+1}`, from length `r + 1` to `r`.
    pub fn vertex_link(r: usize) -> Self {
        let rows = (0..r)
            .map(|i| (0..=r).map(|j| (j == i || j == i + 1) as u64).collect())
            .collect();
        ExponentMap { input: r + 1, rows }
    }

    /// Link of a `k`-simplex: `p'_i = ∏_{j=i}^{i+k+1} p_j^{C(k+1, j-i)}`.
    pub fn simplex_link(r: usize, k: usize) -> Self {
        let rows = (0..r - k)
            .map(|i| {
                (0..=r)
                    .map(|j| {
                        if j >= i && j - i <= k + 1 {
                            binomial((k + 1) as u64, (j - i) as u64).round() as u64
                        } else {
                            0
                        }
                    })
                    .collect()
            })
            .collect();
        ExponentMap { input: r + 1, rows }
    }

    /// Intersection of the links of `k` vertices: `p'_i = p_i p_{i+1}^k`.
    pub fn links_intersection(r: usize, k: usize) -> Self {
        let rows = (0..r)
            .map(|i| {
                (0..=r)
                    .map(|j| match j {
                        _ if j == i => 1,
                        _ if j == i + 1 => k as u64,
                        _ => 0,
                    })
                    .collect()
            })
            .collect();
        ExponentMap { input: r + 1, rows }
    }

    pub fn input_len(&self) -> usize {
        self.input
    }

    pub fn output_len(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.rows
    }

    /// `outer ∘ self`: first apply `self`, then `outer`.
    pub fn then(&self, outer: &ExponentMap) -> ExponentMap {
        assert_eq!(outer.input, self.rows.len(), "exponent maps do not compose");
        let rows = outer
            .rows
            .iter()
            .map(|orow| {
                (0..self.input)
                    .map(|j| orow.iter().zip(&self.rows).map(|(a, row)| a * row[j]).sum())
                    .collect()
            })
            .collect();
        ExponentMap { input: self.input, rows }
    }

    pub fn apply(&self, params: &ParameterVector) -> Result<ParameterVector, MeasureError> {
        params.check_len(self.input - 1)?;
        let out = self
            .rows
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(_, &e)| e > 0)
                    .map(|(j, &e)| pow_u64(params.p(j), e))
                    .product()
            })
            .collect();
        ParameterVector::new(out)
    }
}

fn pow_u64(base: f64, exp: u64) -> f64 {
    match i32::try_from(exp) {
        Ok(e) => base.powi(e),
        Err(_) => base.powf(exp as f64),
    }
}

/// Parameters of the link of a fixed `k`-simplex, given that it is present.
pub fn link_parameters(params: &ParameterVector, k: usize) -> Result<ParameterVector, ParamsError> {
    let r = params.r();
    if k >= r {
        return Err(ParamsError::LinkDimension { k, r });
    }
    Ok(ExponentMap::simplex_link(r, k).apply(params)?)
}

/// Parameters of the common link of `k` fixed vertices, given that all are present.
pub fn links_intersection_parameters(
    params: &ParameterVector,
    k: usize,
) -> Result<ParameterVector, ParamsError> {
    if k == 0 {
        return Err(ParamsError::LinkCount(k));
    }
    let r = params.r();
    if r == 0 {
        return Err(ParamsError::NoEdgeLayer);
    }
    Ok(ExponentMap::links_intersection(r, k).apply(params)?)
}

/// Parameters of `Y ∩ Y'` for independent `Y ~ P_p`, `Y' ~ P_{p'}`.
pub fn intersection_parameters(
    a: &ParameterVector,
    b: &ParameterVector,
) -> Result<ParameterVector, ParamsError> {
    if a.len() != b.len() {
        return Err(ParamsError::LengthMismatch(a.len(), b.len()));
    }
    let out = a.as_slice().iter().zip(b.as_slice()).map(|(x, y)| x * y).collect();
    Ok(ParameterVector::new(out)?)
}

/// Deleting a vertex from the ground set leaves the law unchanged on `n - 1` vertices.
pub fn restriction_parameters(params: &ParameterVector) -> ParameterVector {
    params.clone()
}

/// Distribution of the degree of a fixed `k`-simplex given that it is present.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DegreeLaw {
    pub trials: u64,
    pub success: f64,
}

impl DegreeLaw {
    pub fn pmf(&self, j: u64) -> f64 {
        if j > self.trials {
            return 0.0;
        }
        if self.success == 1.0 {
            return (j == self.trials) as u8 as f64;
        }
        Binomial::new(self.success, self.trials)
            .expect("success is a probability")
            .pmf(j)
    }

    pub fn mean(&self) -> f64 {
        self.trials as f64 * self.success
    }
}

pub fn degree_law(params: &ParameterVector, n: u64, k: usize) -> Result<DegreeLaw, ParamsError> {
    let r = params.r();
    if k + 1 > r {
        return Err(ParamsError::DegreeDimension { k, r });
    }
    if n < k as u64 + 1 {
        return Err(ParamsError::DegreeVertices { k, n });
    }
    let success = (0..=k + 1)
        .map(|i| pow_u64(params.p(i), binomial((k + 1) as u64, i as u64).round() as u64))
        .product();
    Ok(DegreeLaw {
        trials: n - k as u64 - 1,
        success,
    })
}

/// Expected number of edges of degree zero, `C(n,2) p_0² p_1 (1 - p_0 p_1² p_2)^{n-2}`.
pub fn edge_degree_zero_bound(params: &ParameterVector, n: u64) -> Result<f64, ParamsError> {
    let r = params.r();
    if r < 2 {
        return Err(ParamsError::NeedsTriangles(r));
    }
    let (p0, p1, p2) = (params.p(0), params.p(1), params.p(2));
    let pairs = n as f64 * n.saturating_sub(1) as f64 / 2.0;
    let miss = 1.0 - p0 * p1 * p1 * p2;
    Ok(pairs * p0 * p0 * p1 * miss.powf(n.saturating_sub(2) as f64))
}

/// Named special cases of the multi-parameter model.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Preset {
    ErdosRenyi(f64),
    LinialMeshulam(f64),
    MeshulamWallach { r: usize, p: f64 },
    Clique(f64),
}

impl Preset {
    /// The dimension a preset is defined in, if it fixes one.
    pub fn natural_r(&self) -> Option<usize> {
        match *self {
            Preset::ErdosRenyi(_) => Some(1),
            Preset::LinialMeshulam(_) => Some(2),
            Preset::MeshulamWallach { r, .. } => Some(r),
            Preset::Clique(_) => None,
        }
    }

    pub fn parameters(&self, r: usize) -> Result<ParameterVector, ParamsError> {
        if let Some(natural) = self.natural_r() {
            if natural != r {
                return Err(ParamsError::PresetDimension {
                    preset: self.to_string(),
                    natural,
                    r,
                });
            }
        }
        let mut v = vec![1.0; r + 1];
        match *self {
            Preset::ErdosRenyi(p) | Preset::LinialMeshulam(p) | Preset::MeshulamWallach { p, .. } => {
                v[r] = p
            }
            Preset::Clique(p) => {
                if r == 0 {
                    return Err(ParamsError::NoEdgeLayer);
                }
                v[1] = p
            }
        }
        Ok(ParameterVector::new(v)?)
    }

    /// Parameters at the preset's own dimension, or at `fallback_r` for clique complexes.
    pub fn default_parameters(&self, fallback_r: usize) -> Result<ParameterVector, ParamsError> {
        self.parameters(self.natural_r().unwrap_or(fallback_r))
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Preset::ErdosRenyi(p) => write!(f, "erdos_renyi({p})"),
            Preset::LinialMeshulam(p) => write!(f, "linial_meshulam({p})"),
            Preset::MeshulamWallach { r, p } => write!(f, "meshulam_wallach({r},{p})"),
            Preset::Clique(p) => write!(f, "clique({p})"),
        }
    }
}

impl FromStr for Preset {
    type Err = ParamsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let unknown = || ParamsError::UnknownPreset(s.to_string());
        let s = s.trim();
        let (name, rest) = s.split_once('(').ok_or_else(unknown)?;
        let args: Vec<&str> = rest
            .strip_suffix(')')
            .ok_or_else(unknown)?
            .split(',')
            .map(str::trim)
            .collect();
        let prob = |a: &str| -> Result<f64, ParamsError> {
            let p: f64 = a.parse().map_err(|_| unknown())?;
            if !(0.0..=1.0).contains(&p) {
                return Err(MeasureError::InvalidParameter { index: 0, value: p }.into());
            }
            Ok(p)
        };
        match (name.trim(), args.as_slice()) {
            ("erdos_renyi", [p]) => Ok(Preset::ErdosRenyi(prob(p)?)),
            ("linial_meshulam", [p]) => Ok(Preset::LinialMeshulam(prob(p)?)),
            ("meshulam_wallach", [r, p]) => Ok(Preset::MeshulamWallach {
                r: r.parse().map_err(|_| unknown())?,
                p: prob(p)?,
            }),
            ("clique", [p]) => Ok(Preset::Clique(prob(p)?)),
            _ => Err(unknown()),
        }
    }
}
