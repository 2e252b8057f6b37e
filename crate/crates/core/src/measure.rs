//! Exact evaluation of the multi-parameter measure `P_{r,p}` and its closed-form
//! containment, sandwich, vertex-count and isolated-subcomplex probabilities.
//!
//! Everything is carried in the log domain. A factor `base^exp` contributes
//! `exp · ln(base)` when `exp > 0` and nothing otherwise, which realises the
//! `0^0 = 1` convention; a zero base with a positive exponent gives `-∞`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use statrs::function::factorial::ln_binomial;
use thiserror::Error;

use crate::complex::{ComplexError, Simplex, SimplicialComplex};

/// Largest external-face set the inclusion–exclusion reconstruction will expand.
pub const MAX_RECONSTRUCTION_FACES: usize = 24;

#[derive(Debug, Error)]
pub enum MeasureError {
    #[error("parameter vector must not be empty")]
    EmptyParameters,
    #[error("parameter p_{index} = {value} is not a probability")]
    InvalidParameter { index: usize, value: f64 },
    #[error("expected {expected} parameters (r + 1), got {got}")]
    ParameterLength { expected: usize, got: usize },
    #[error("sandwich precondition violated: lower complex is not contained in the upper one")]
    NotNested,
    #[error("sandwich precondition violated: boundary of external face {face} of the upper complex is not in the lower one")]
    ExternalBoundaryOutsideLower { face: Simplex },
    #[error("vertex count {t} outside 0..={n}")]
    CountOutOfRange { t: u64, n: u64 },
    #[error("edge statistics need r >= 1")]
    NoEdgeLayer,
    #[error("no containment value supplied for {0}")]
    MissingContainment(String),
    #[error("{0} external faces exceed the inclusion-exclusion limit")]
    TooManyExternalFaces(usize),
    #[error("subcomplex lives on {got} vertices, larger than n = {n}")]
    GroundSetTooSmall { got: u32, n: u32 },
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

/// The multi-parameter `(p_0, …, p_r)`; `q_i = 1 - p_i`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct ParameterVector(Vec<f64>);

impl ParameterVector {
    pub fn new(p: Vec<f64>) -> Result<Self, MeasureError> {
        if p.is_empty() {
            return Err(MeasureError::EmptyParameters);
        }
        if let Some((index, &value)) = p
            .iter()
            .enumerate()
            .find(|(_, v)| !(0.0..=1.0).contains(*v))
        {
            return Err(MeasureError::InvalidParameter { index, value });
        }
        Ok(ParameterVector(p))
    }

    /// The vector of length `r + 1` with every entry equal to one.
    pub fn ones(r: usize) -> Self {
        ParameterVector(vec![1.0; r + 1])
    }

    pub fn r(&self) -> usize {
        self.0.len() - 1
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn p(&self, i: usize) -> f64 {
        self.0[i]
    }

    pub fn q(&self, i: usize) -> f64 {
        1.0 - self.0[i]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    /// `ω = n · p_0`, the expected number of vertices.
    pub fn omega(&self, n: u32) -> f64 {
        n as f64 * self.0[0]
    }

    pub(crate) fn check_len(&self, r: usize) -> Result<(), MeasureError> {
        if self.0.len() != r + 1 {
            return Err(MeasureError::ParameterLength {
                expected: r + 1,
                got: self.0.len(),
            });
        }
        Ok(())
    }
}

impl TryFrom<Vec<f64>> for ParameterVector {
    type Error = MeasureError;
    fn try_from(v: Vec<f64>) -> Result<Self, Self::Error> {
        ParameterVector::new(v)
    }
}

impl From<ParameterVector> for Vec<f64> {
    fn from(p: ParameterVector) -> Self {
        p.0
    }
}

impl FromStr for ParameterVector {
    type Err = String;

    /// Parses a comma-separated list such as `0.6,0.5,0.4`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let values = s
            .split(',')
            .map(|t| t.trim().parse::<f64>().map_err(|e| format!("bad entry {t:?}: {e}")))
            .collect::<Result<Vec<_>, _>>()?;
        ParameterVector::new(values).map_err(|e| e.to_string())
    }
}

impl fmt::Display for ParameterVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

/// A probability stored as its natural logarithm; `-∞` encodes zero.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd, Serialize)]
pub struct LogProbability(f64);

impl LogProbability {
    pub const ZERO: LogProbability = LogProbability(f64::NEG_INFINITY);
    pub const ONE: LogProbability = LogProbability(0.0);

    pub fn from_probability(p: f64) -> Self {
        LogProbability(p.ln())
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn probability(self) -> f64 {
        self.0.exp()
    }

    pub fn is_zero(self) -> bool {
        self.0 == f64::NEG_INFINITY
    }
}

/// `exp · ln(base)` under `0^0 = 1`.
pub(crate) fn log_power(base: f64, exp: u64) -> f64 {
    if exp == 0 {
        0.0
    } else if base == 0.0 {
        f64::NEG_INFINITY
    } else {
        exp as f64 * base.ln()
    }
}

fn log_face_product(params: &ParameterVector, counts: &[u64]) -> f64 {
    counts
        .iter()
        .enumerate()
        .map(|(i, &c)| log_power(params.p(i), c))
        .sum()
}

fn log_external_product(params: &ParameterVector, counts: &[u64]) -> f64 {
    counts
        .iter()
        .enumerate()
        .map(|(i, &c)| log_power(params.q(i), c))
        .sum()
}

fn finish(log: f64) -> LogProbability {
    // -inf + finite stays -inf; there is no +inf source
    LogProbability(log)
}

/// `P_{r,p}(Y) = ∏ p_i^{f_i(Y)} · ∏ q_i^{e_i(Y)}`.
pub fn measure(y: &SimplicialComplex, params: &ParameterVector) -> Result<LogProbability, MeasureError> {
    params.check_len(y.r())?;
    let profile = y.face_profile();
    Ok(finish(
        log_face_product(params, &profile.f) + log_external_product(params, &profile.e),
    ))
}

/// `P(Y ⊇ A) = ∏ p_i^{f_i(A)}`.
pub fn containment_probability(
    a: &SimplicialComplex,
    params: &ParameterVector,
) -> Result<LogProbability, MeasureError> {
    params.check_len(a.r())?;
    Ok(finish(log_face_product(params, &a.f_vector())))
}

/// `P(A ⊆ Y ⊆ B) = ∏ p_i^{f_i(A)} · ∏ q_i^{e_i(B)}`, valid only when every external face
/// of `B` has its boundary inside `A`. The precondition is checked.
pub fn sandwich_probability(
    lower: &SimplicialComplex,
    upper: &SimplicialComplex,
    params: &ParameterVector,
) -> Result<LogProbability, MeasureError> {
    params.check_len(upper.r())?;
    if !lower.is_subcomplex(upper)? {
        return Err(MeasureError::NotNested);
    }
    let external = upper.external_faces();
    if let Some(face) = external
        .iter()
        .find(|s| s.facets().any(|f| !lower.contains(&f)))
    {
        return Err(MeasureError::ExternalBoundaryOutsideLower { face: face.clone() });
    }
    let mut e = vec![0u64; upper.r() + 1];
    for s in &external {
        e[s.dim()] += 1;
    }
    Ok(finish(
        log_face_product(params, &lower.f_vector()) + log_external_product(params, &e),
    ))
}

/// `P(f_0(Y) = t) = C(n,t) p_0^t q_0^{n-t}`.
pub fn vertex_count_pmf(t: u64, n: u64, params: &ParameterVector) -> Result<f64, MeasureError> {
    if t > n {
        return Err(MeasureError::CountOutOfRange { t, n });
    }
    let log = ln_binomial(n, t) + log_power(params.p(0), t) + log_power(params.q(0), n - t);
    Ok(log.exp())
}

/// Probability that `Y ⊇ S` with no edge of `Y` joining `V(S)` to the rest:
/// `[q_0 + p_0 q_1^{f_0(S)}]^{n - f_0(S)} · ∏ p_i^{f_i(S)}`.
pub fn isolated_subcomplex_probability(
    s: &SimplicialComplex,
    n: u32,
    params: &ParameterVector,
) -> Result<LogProbability, MeasureError> {
    params.check_len(s.r())?;
    if s.n() > n {
        return Err(MeasureError::GroundSetTooSmall { got: s.n(), n });
    }
    let f = s.f_vector();
    let v = f[0];
    // with r = 0 there are no edges, so q_1 is effectively 1
    let q1 = if params.r() >= 1 { params.q(1) } else { 1.0 };
    let q1_pow = if v == 0 { 1.0 } else { q1.powi(v as i32) };
    let base = params.q(0) + params.p(0) * q1_pow;
    Ok(finish(log_power(base, n as u64 - v) + log_face_product(params, &f)))
}

/// `E f_1 = C(n,2) p_0^2 p_1`.
pub fn expected_edge_count(n: u32, params: &ParameterVector) -> Result<f64, MeasureError> {
    if params.r() < 1 {
        return Err(MeasureError::NoEdgeLayer);
    }
    let n = n as f64;
    Ok(n * (n - 1.0) / 2.0 * params.p(0) * params.p(0) * params.p(1))
}

/// Inclusion–exclusion over the external faces of `a0`:
/// `Σ_{S ⊆ E(a0)} (-1)^{|S|} P(Y ⊇ a0 ∪ S)`.
///
/// `containment` supplies `P(Y ⊇ A)` for the complexes it is asked about; any
/// source works (closed form, enumeration, an empirical table).
pub fn reconstruct_from_containment<F>(
    containment: F,
    a0: &SimplicialComplex,
    params: &ParameterVector,
) -> Result<f64, MeasureError>
where
    F: Fn(&SimplicialComplex) -> Option<f64>,
{
    params.check_len(a0.r())?;
    let external = a0.external_faces();
    if external.len() > MAX_RECONSTRUCTION_FACES {
        return Err(MeasureError::TooManyExternalFaces(external.len()));
    }
    let mut total = 0.0;
    for mask in 0u64..(1u64 << external.len()) {
        let mut grown = a0.clone();
        for (i, face) in external.iter().enumerate() {
            if mask >> i & 1 == 1 {
                grown.insert_unchecked(face.clone());
            }
        }
        let value = containment(&grown)
            .ok_or_else(|| MeasureError::MissingContainment(grown.to_canonical_json()))?;
        if mask.count_ones() % 2 == 0 {
            total += value;
        } else {
            total -= value;
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use approx::assert_abs_diff_eq;

    use super::*;

    fn pv(v: &[f64]) -> ParameterVector {
        ParameterVector::new(v.to_vec()).unwrap()
    }

    fn cx(n: u32, r: usize, gens: &[&[u32]]) -> SimplicialComplex {
        SimplicialComplex::from_lists(n, r, gens).unwrap()
    }

    #[test]
    fn parameter_validation() {
        assert!(ParameterVector::new(vec![]).is_err());
        assert!(ParameterVector::new(vec![0.5, 1.5]).is_err());
        assert!(ParameterVector::new(vec![f64::NAN]).is_err());
        let p: ParameterVector = "0.6, 0.5,0.4".parse().unwrap();
        assert_eq!(p.as_slice(), &[0.6, 0.5, 0.4]);
        assert_eq!(p.q(1), 1.0 - 0.5);
        assert_eq!(p.omega(10), 6.0);
        assert!("0.5,x".parse::<ParameterVector>().is_err());
    }

    #[test]
    fn measure_examples() {
        let edge = cx(2, 1, &[&[1, 2]]);
        assert_abs_diff_eq!(measure(&edge, &pv(&[0.5, 0.5])).unwrap().probability(), 0.125, epsilon = 1e-15);

        let p = pv(&[0.3, 0.7, 0.2]);
        let empty = SimplicialComplex::empty(5, 2);
        assert_abs_diff_eq!(measure(&empty, &p).unwrap().probability(), 0.7f64.powi(5), epsilon = 1e-15);

        let p = pv(&[0.5, 0.0]);
        assert!(measure(&cx(3, 1, &[&[1, 2]]), &p).unwrap().is_zero());
        assert!(measure(&cx(3, 1, &[&[1, 2]]), &pv(&[0.5])).is_err());
    }

    #[test]
    fn zero_exponent_convention() {
        // p_1 = 0 but no edges: factor 0^0 = 1; q_1 = 1 for the single external edge
        let y = cx(2, 1, &[&[1], &[2]]);
        let p = pv(&[0.5, 0.0]);
        assert_abs_diff_eq!(measure(&y, &p).unwrap().probability(), 0.25, epsilon = 1e-15);
        // p_0 = 1 makes every complex with a missing vertex impossible
        assert!(measure(&cx(2, 1, &[&[1]]), &pv(&[1.0, 0.5])).unwrap().is_zero());
        assert_abs_diff_eq!(
            measure(&cx(2, 1, &[&[1, 2]]), &pv(&[1.0, 1.0])).unwrap().probability(),
            1.0
        );
    }

    #[test]
    fn containment_examples() {
        let tri = SimplicialComplex::full(3, 2);
        let p = pv(&[0.9, 0.8, 0.7]);
        assert_abs_diff_eq!(
            containment_probability(&tri, &p).unwrap().probability(),
            0.2612736,
            epsilon = 1e-12
        );
        assert_eq!(
            containment_probability(&SimplicialComplex::empty(3, 2), &p).unwrap(),
            LogProbability::ONE
        );
    }

    #[test]
    fn sandwich_examples() {
        let a = cx(2, 0, &[&[1]]);
        let b = cx(2, 0, &[&[1], &[2]]);
        let p = pv(&[0.5]);
        assert_abs_diff_eq!(sandwich_probability(&a, &b, &p).unwrap().probability(), 0.5, epsilon = 1e-15);

        let y = cx(4, 2, &[&[1, 2, 3], &[3, 4]]);
        let p = pv(&[0.6, 0.5, 0.4]);
        assert_abs_diff_eq!(
            sandwich_probability(&y, &y, &p).unwrap().probability(),
            measure(&y, &p).unwrap().probability(),
            epsilon = 1e-15
        );
    }

    #[test]
    fn sandwich_precondition_is_enforced() {
        let p = pv(&[0.6, 0.5]);
        // B = two vertices has external edge (1,2) whose boundary is not in A = ∅
        let a = SimplicialComplex::empty(2, 1);
        let b = cx(2, 1, &[&[1], &[2]]);
        assert!(matches!(
            sandwich_probability(&a, &b, &p),
            Err(MeasureError::ExternalBoundaryOutsideLower { .. })
        ));
        assert!(matches!(sandwich_probability(&b, &a, &p), Err(MeasureError::NotNested)));
    }

    #[test]
    fn tree_plus_isolated_set_sandwich() {
        // T = path 1-2-3 (v = 3), K = {4, 5}, t = 5, n = 6, r = 2
        let (n, v, t) = (6u32, 3i32, 5i32);
        let a = cx(n, 2, &[&[1, 2], &[2, 3], &[4], &[5]]);
        let b = cx(n, 2, &[&[1, 2, 3], &[4, 5]]);
        let p = pv(&[0.6, 0.5, 0.4]);
        let (p0, p1) = (0.6f64, 0.5f64);
        let expected = p0.powi(t) * p1.powi(v - 1) * (1.0 - p0).powi(n as i32 - t) * (1.0 - p1).powi(v * (t - v));
        assert_abs_diff_eq!(sandwich_probability(&a, &b, &p).unwrap().probability(), expected, epsilon = 1e-15);
    }

    #[test]
    fn vertex_count_examples() {
        let p = pv(&[0.5, 0.3]);
        assert_abs_diff_eq!(vertex_count_pmf(0, 7, &p).unwrap(), 0.5f64.powi(7), epsilon = 1e-15);
        assert_abs_diff_eq!(vertex_count_pmf(1, 3, &p).unwrap(), 0.375, epsilon = 1e-15);
        let p = pv(&[0.37]);
        let total: f64 = (0..=20).map(|t| vertex_count_pmf(t, 20, &p).unwrap()).sum();
        assert_abs_diff_eq!(total, 1.0, epsilon = 1e-12);
        assert!(vertex_count_pmf(4, 3, &p).is_err());
    }

    #[test]
    fn isolated_examples() {
        let p = pv(&[0.5, 0.5]);
        let vertex = cx(3, 1, &[&[1]]);
        assert_abs_diff_eq!(
            isolated_subcomplex_probability(&vertex, 3, &p).unwrap().probability(),
            0.28125,
            epsilon = 1e-15
        );
        let p = pv(&[0.3, 0.2, 0.9]);
        let (p0, p1) = (0.3f64, 0.2f64);
        let n = 10u32;
        let vertex = cx(n, 2, &[&[4]]);
        assert_abs_diff_eq!(
            isolated_subcomplex_probability(&vertex, n, &p).unwrap().probability(),
            p0 * (1.0 - p0 * p1).powi(n as i32 - 1),
            epsilon = 1e-15
        );
        let tree = cx(n, 2, &[&[1, 2], &[2, 3], &[2, 4]]);
        let v = 4;
        let expected = ((1.0 - p0) + p0 * (1.0 - p1).powi(v)).powi(n as i32 - v) * p0.powi(v) * p1.powi(v - 1);
        assert_abs_diff_eq!(
            isolated_subcomplex_probability(&tree, n, &p).unwrap().probability(),
            expected,
            epsilon = 1e-15
        );
    }

    #[test]
    fn expected_edges() {
        assert_abs_diff_eq!(expected_edge_count(2, &pv(&[1.0, 1.0])).unwrap(), 1.0);
        assert_abs_diff_eq!(expected_edge_count(10, &pv(&[0.5, 0.1])).unwrap(), 1.125, epsilon = 1e-15);
        assert_eq!(expected_edge_count(10, &pv(&[0.5, 0.0])).unwrap(), 0.0);
        assert!(matches!(expected_edge_count(10, &pv(&[0.5])), Err(MeasureError::NoEdgeLayer)));
    }

    #[test]
    fn reconstruction_examples() {
        let full = SimplicialComplex::full(3, 1);
        let p = pv(&[0.6, 0.5]);
        let closed = |a: &SimplicialComplex| containment_probability(a, &p).ok().map(|l| l.probability());
        assert_abs_diff_eq!(
            reconstruct_from_containment(closed, &full, &p).unwrap(),
            containment_probability(&full, &p).unwrap().probability(),
            epsilon = 1e-15
        );

        let p = pv(&[0.3]);
        let closed = |a: &SimplicialComplex| containment_probability(a, &p).ok().map(|l| l.probability());
        let empty = SimplicialComplex::empty(1, 0);
        assert_abs_diff_eq!(reconstruct_from_containment(closed, &empty, &p).unwrap(), 0.7, epsilon = 1e-15);

        let missing = |_: &SimplicialComplex| None;
        assert!(matches!(
            reconstruct_from_containment(missing, &empty, &p),
            Err(MeasureError::MissingContainment(_))
        ));
    }
}
