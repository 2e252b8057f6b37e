use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::space::{guard_from_env, SpaceIndex};
use super::LabError;
use crate::complex::{canonical_key, decode_key, Simplex, SimplicialComplex};
use crate::measure::{measure, ParameterVector};

/// A probability table over `Ω_n^r`, keyed by canonical complex encoding.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExactDistribution {
    pub n: u32,
    pub r: usize,
    pub entries: BTreeMap<String, f64>,
    pub total: f64,
}

impl ExactDistribution {
    fn from_entries(n: u32, r: usize, entries: BTreeMap<String, f64>) -> Self {
        let total = entries.values().sum();
        ExactDistribution { n, r, entries, total }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn probability(&self, y: &SimplicialComplex) -> f64 {
        self.entries.get(&canonical_key(y)).copied().unwrap_or(0.0)
    }

    pub fn complexes(&self) -> Result<Vec<(SimplicialComplex, f64)>, LabError> {
        self.entries
            .iter()
            .map(|(k, &p)| Ok((decode_key(self.n, self.r, k)?, p)))
            .collect()
    }

    fn check_space(&self, n: u32, r: usize) -> Result<(), LabError> {
        if (self.n, self.r) != (n, r) {
            return Err(LabError::SpaceMismatch {
                expected: (self.n, self.r),
                got: (n, r),
            });
        }
        Ok(())
    }

    /// Largest entrywise difference over the union of both supports.
    pub fn max_abs_diff(&self, other: &ExactDistribution) -> Result<f64, LabError> {
        self.check_space(other.n, other.r)?;
        let keys: BTreeSet<&String> = self.entries.keys().chain(other.entries.keys()).collect();
        Ok(keys
            .into_iter()
            .map(|k| {
                let a = self.entries.get(k).copied().unwrap_or(0.0);
                let b = other.entries.get(k).copied().unwrap_or(0.0);
                (a - b).abs()
            })
            .fold(0.0, f64::max))
    }
}

/// Mask-level table used by the verification suite.
pub(crate) struct MaskTable {
    pub space: SpaceIndex,
    pub masks: Vec<u128>,
    pub probs: Vec<f64>,
}

impl MaskTable {
    pub fn new(n: u32, r: usize, params: &ParameterVector) -> Result<Self, LabError> {
        params.check_len(r)?;
        let space = SpaceIndex::new(n, r)?;
        let masks = space.enumerate(guard_from_env())?;
        let probs = masks
            .iter()
            .map(|&m| Ok(measure(&space.to_complex(m), params)?.probability()))
            .collect::<Result<Vec<_>, LabError>>()?;
        Ok(MaskTable { space, masks, probs })
    }

    pub fn distribution(&self) -> ExactDistribution {
        let entries = self
            .masks
            .iter()
            .zip(&self.probs)
            .map(|(&m, &p)| (canonical_key(&self.space.to_complex(m)), p))
            .collect();
        ExactDistribution::from_entries(self.space.n, self.space.r, entries)
    }
}

/// `P_{r,p}` on every complex of `Ω_n^r`.
pub fn enumerate_distribution(n: u32, r: usize, params: &ParameterVector) -> Result<ExactDistribution, LabError> {
    Ok(MaskTable::new(n, r, params)?.distribution())
}

/// Maps under which the exact law is pushed forward.
#[derive(Clone, Debug, PartialEq)]
pub enum Transform {
    /// Condition on `σ0 ∈ Y`, then take `lk_Y(σ0)` relabeled onto the remaining vertices.
    LinkOfSimplex(Simplex),
    /// Condition on all listed vertices being present, then intersect their links.
    IntersectLinks(Vec<u32>),
    /// `Y ∩ Y'` with `Y'` independent and distributed by these parameters.
    IntersectWith(ParameterVector),
    /// Delete a vertex from the ground set.
    DropVertex(u32),
}

fn accumulate(
    out: &mut BTreeMap<String, f64>,
    y: &SimplicialComplex,
    mass: f64,
) {
    *out.entry(canonical_key(y)).or_insert(0.0) += mass;
}

fn normalized(n: u32, r: usize, mut entries: BTreeMap<String, f64>, mass: f64) -> Result<ExactDistribution, LabError> {
    if mass <= 0.0 {
        return Err(LabError::ZeroProbabilityCondition);
    }
    for p in entries.values_mut() {
        *p /= mass;
    }
    Ok(ExactDistribution::from_entries(n, r, entries))
}

fn check_vertices(dist: &ExactDistribution, vertices: &[u32]) -> Result<(), LabError> {
    if let Some(&v) = vertices.iter().find(|&&v| v == 0 || v > dist.n) {
        return Err(LabError::InvalidTransform(format!("vertex {v} outside 1..={}", dist.n)));
    }
    Ok(())
}

/// Conditional law of the link of `σ0`, its normalizing mass `P(σ0 ∈ Y)`.
pub fn conditional_link(dist: &ExactDistribution, sigma: &Simplex) -> Result<(ExactDistribution, f64), LabError> {
    check_vertices(dist, sigma.vertices())?;
    if sigma.dim() >= dist.r {
        return Err(LabError::InvalidTransform(format!(
            "link of {sigma} needs dimension below r = {}",
            dist.r
        )));
    }
    let k = sigma.dim();
    let (n, r) = (dist.n - k as u32 - 1, dist.r - k - 1);
    let mut entries = BTreeMap::new();
    let mut mass = 0.0;
    for (y, p) in dist.complexes()? {
        if y.contains(sigma) {
            mass += p;
            accumulate(&mut entries, &y.link(sigma)?.complex, p);
        }
    }
    Ok((normalized(n, r, entries, mass)?, mass))
}

/// Conditional law of `∩ lk(v)` over the listed vertices, with `P(all present)`.
pub fn conditional_links_intersection(
    dist: &ExactDistribution,
    vertices: &[u32],
) -> Result<(ExactDistribution, f64), LabError> {
    check_vertices(dist, vertices)?;
    let set: BTreeSet<u32> = vertices.iter().copied().collect();
    if set.is_empty() || set.len() != vertices.len() || set.len() as u32 >= dist.n || dist.r == 0 {
        return Err(LabError::InvalidTransform(format!(
            "cannot intersect links of {vertices:?} in Ω_{}^{}",
            dist.n, dist.r
        )));
    }
    let (n, r) = (dist.n - set.len() as u32, dist.r - 1);
    let mut entries = BTreeMap::new();
    let mut mass = 0.0;
    for (y, p) in dist.complexes()? {
        if !set.iter().all(|&v| y.contains_vertex(v)) {
            continue;
        }
        mass += p;
        let mut common: Option<SimplicialComplex> = None;
        for &v in &set {
            let link = y.link_in_place(&Simplex::vertex(v))?;
            common = Some(match common {
                None => link,
                Some(c) => c.intersection(&link)?,
            });
        }
        let (z, _) = common.expect("at least one vertex").compact_without(&set, r);
        accumulate(&mut entries, &z, p);
    }
    Ok((normalized(n, r, entries, mass)?, mass))
}

pub fn exact_pushforward(dist: &ExactDistribution, map: &Transform) -> Result<ExactDistribution, LabError> {
    match map {
        Transform::LinkOfSimplex(sigma) => Ok(conditional_link(dist, sigma)?.0),
        Transform::IntersectLinks(vertices) => Ok(conditional_links_intersection(dist, vertices)?.0),
        Transform::IntersectWith(other) => {
            let second = enumerate_distribution(dist.n, dist.r, other)?;
            let left = dist.complexes()?;
            let right = second.complexes()?;
            let mut entries = BTreeMap::new();
            for (y, p) in &left {
                for (y2, q) in &right {
                    accumulate(&mut entries, &y.intersection(y2)?, p * q);
                }
            }
            Ok(ExactDistribution::from_entries(dist.n, dist.r, entries))
        }
        Transform::DropVertex(v) => {
            check_vertices(dist, &[*v])?;
            let removed = BTreeSet::from([*v]);
            let mut entries = BTreeMap::new();
            for (y, p) in dist.complexes()? {
                accumulate(&mut entries, &y.compact_without(&removed, dist.r).0, p);
            }
            Ok(ExactDistribution::from_entries(dist.n - 1, dist.r, entries))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::{intersection_parameters, link_parameters, links_intersection_parameters};
    use approx::assert_abs_diff_eq;

    fn pv(v: &[f64]) -> ParameterVector {
        ParameterVector::new(v.to_vec()).unwrap()
    }

    #[test]
    fn five_complex_table() {
        let d = enumerate_distribution(2, 1, &pv(&[0.5, 0.5])).unwrap();
        let expect = [
            ("[]", 0.25),
            ("[[1]]", 0.25),
            ("[[2]]", 0.25),
            ("[[1],[2]]", 0.125),
            ("[[1,2]]", 0.125),
        ];
        assert_eq!(d.len(), 5);
        for (k, p) in expect {
            assert_abs_diff_eq!(d.entries[k], p, epsilon = 1e-15);
        }
        assert_abs_diff_eq!(d.total, 1.0, epsilon = 1e-15);
    }

    #[test]
    fn full_vertex_parameter_kills_partial_vertex_sets() {
        let d = enumerate_distribution(3, 1, &pv(&[1.0, 0.4])).unwrap();
        for (y, p) in d.complexes().unwrap() {
            if y.f_vector()[0] < 3 {
                assert_eq!(p, 0.0);
            }
        }
    }

    #[test]
    fn vertex_link_law() {
        let p = pv(&[0.6, 0.5, 0.4]);
        let d = enumerate_distribution(4, 2, &p).unwrap();
        let (link, mass) = conditional_link(&d, &Simplex::vertex(1)).unwrap();
        assert_abs_diff_eq!(mass, 0.6, epsilon = 1e-14);
        let expected = enumerate_distribution(3, 1, &link_parameters(&p, 0).unwrap()).unwrap();
        assert!(link.max_abs_diff(&expected).unwrap() < 1e-12);
    }

    #[test]
    fn links_intersection_and_products() {
        let p = pv(&[0.6, 0.5, 0.4]);
        let d = enumerate_distribution(4, 2, &p).unwrap();
        let z = exact_pushforward(&d, &Transform::IntersectLinks(vec![1, 2])).unwrap();
        let expected = enumerate_distribution(2, 1, &links_intersection_parameters(&p, 2).unwrap()).unwrap();
        assert!(z.max_abs_diff(&expected).unwrap() < 1e-12);

        let a = pv(&[0.7, 0.3]);
        let b = pv(&[0.5, 0.9]);
        let d = enumerate_distribution(3, 1, &a).unwrap();
        let z = exact_pushforward(&d, &Transform::IntersectWith(b.clone())).unwrap();
        let expected = enumerate_distribution(3, 1, &intersection_parameters(&a, &b).unwrap()).unwrap();
        assert!(z.max_abs_diff(&expected).unwrap() < 1e-12);

        let dropped = exact_pushforward(&d, &Transform::DropVertex(2)).unwrap();
        let expected = enumerate_distribution(2, 1, &a).unwrap();
        assert!(dropped.max_abs_diff(&expected).unwrap() < 1e-12);
    }

    #[test]
    fn transform_errors() {
        let d = enumerate_distribution(3, 1, &pv(&[0.0, 0.5])).unwrap();
        assert!(matches!(
            exact_pushforward(&d, &Transform::LinkOfSimplex(Simplex::vertex(1))),
            Err(LabError::ZeroProbabilityCondition)
        ));
        assert!(exact_pushforward(&d, &Transform::DropVertex(4)).is_err());
        assert!(exact_pushforward(&d, &Transform::IntersectLinks(vec![1, 1])).is_err());
        let e = enumerate_distribution(2, 1, &pv(&[0.5, 0.5])).unwrap();
        assert!(d.max_abs_diff(&e).is_err());
    }
}
