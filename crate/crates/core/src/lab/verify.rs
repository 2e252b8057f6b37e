use std::collections::HashMap;

use super::exact::{conditional_link, conditional_links_intersection, enumerate_distribution, exact_pushforward, MaskTable, Transform};
use super::monte_carlo::{ExperimentReport, Outcome};
use super::LabError;
use crate::complex::Simplex;
use crate::measure::{
    containment_probability, expected_edge_count, isolated_subcomplex_probability, measure,
    reconstruct_from_containment, sandwich_probability, vertex_count_pmf, ParameterVector,
};
use crate::params::{
    degree_law, edge_degree_zero_bound, intersection_parameters, link_parameters,
    links_intersection_parameters, restriction_parameters,
};

/// Tolerance for total mass, containment and sandwich sums.
pub const SUM_TOLERANCE: f64 = 1e-12;
/// Tolerance for every other identity.
pub const IDENTITY_TOLERANCE: f64 = 1e-10;

struct Collector<'a> {
    params: &'a ParameterVector,
    reports: Vec<ExperimentReport>,
}

impl Collector<'_> {
    fn push(&mut self, name: &str, cases: u64, max_error: f64, tolerance: f64) {
        if cases == 0 {
            return;
        }
        self.reports.push(ExperimentReport {
            metric: format!("{name}@{}", self.params),
            estimate: max_error,
            ci_low: max_error,
            ci_high: max_error,
            trials: cases,
            seed: 0,
            verdict: Some(Outcome::from_bool(max_error <= tolerance)),
        });
    }
}

fn track(worst: &mut f64, a: f64, b: f64) {
    let d = (a - b).abs();
    *worst = if d.is_nan() { f64::INFINITY } else { worst.max(d) };
}

/// Every closed-form law checked against the enumerated distribution of
/// `Ω_n^r`, once per parameter vector. Each report carries the largest
/// absolute error in `estimate` and the number of cases in `trials`.
pub fn verify_identities(n: u32, r: usize, grid: &[ParameterVector]) -> Result<Vec<ExperimentReport>, LabError> {
    let mut all = Vec::new();
    for params in grid {
        all.extend(verify_one(n, r, params)?);
    }
    Ok(all)
}

fn verify_one(n: u32, r: usize, params: &ParameterVector) -> Result<Vec<ExperimentReport>, LabError> {
    let table = MaskTable::new(n, r, params)?;
    let space = &table.space;
    let masks = &table.masks;
    let probs = &table.probs;
    let mut out = Collector {
        params,
        reports: Vec::new(),
    };

    let total: f64 = probs.iter().sum();
    out.push("total_mass", masks.len() as u64, (total - 1.0).abs(), SUM_TOLERANCE);

    // containment sums per mask
    let contained: Vec<f64> = masks
        .iter()
        .map(|&a| masks.iter().zip(probs).filter(|(&y, _)| a & !y == 0).map(|(_, &p)| p).sum())
        .collect();
    let by_mask: HashMap<u128, f64> = masks.iter().copied().zip(contained.iter().copied()).collect();

    let complexes: Vec<_> = masks.iter().map(|&m| space.to_complex(m)).collect();

    let mut worst = 0.0;
    for (y, &c) in complexes.iter().zip(&contained) {
        track(&mut worst, containment_probability(y, params)?.probability(), c);
    }
    out.push("containment", masks.len() as u64, worst, SUM_TOLERANCE);

    // sandwich: admissible iff A ⊆ B and every external face of B has its boundary in A
    let boundary_of_external: Vec<u128> = masks
        .iter()
        .map(|&b| {
            (0..space.simplices.len())
                .filter(|&i| b >> i & 1 == 0 && space.facets[i] & !b == 0)
                .fold(0, |acc, i| acc | space.facets[i])
        })
        .collect();
    let (mut worst, mut cases) = (0.0, 0u64);
    for (ia, &a) in masks.iter().enumerate() {
        for (ib, &b) in masks.iter().enumerate() {
            if a & !b != 0 {
                continue;
            }
            let admissible = boundary_of_external[ib] & !a == 0;
            let closed = sandwich_probability(&complexes[ia], &complexes[ib], params);
            if admissible != closed.is_ok() {
                worst = f64::INFINITY;
                continue;
            }
            if let Ok(closed) = closed {
                let sum: f64 = masks
                    .iter()
                    .zip(probs)
                    .filter(|(&y, _)| a & !y == 0 && y & !b == 0)
                    .map(|(_, &p)| p)
                    .sum();
                track(&mut worst, closed.probability(), sum);
                cases += 1;
            }
        }
    }
    out.push("sandwich", cases, worst, SUM_TOLERANCE);

    let mut worst = 0.0;
    for y in &complexes {
        let lookup = |g: &crate::complex::SimplicialComplex| by_mask.get(&space.mask_of(g)).copied();
        let rebuilt = reconstruct_from_containment(lookup, y, params)?;
        track(&mut worst, rebuilt, measure(y, params)?.probability());
    }
    out.push("characterisation", masks.len() as u64, worst, IDENTITY_TOLERANCE);

    // isolated subcomplexes: S ⊆ Y and no edge of Y leaves V(S)
    let vertex_bits = |m: u128| -> u32 {
        space.layers[0].clone().filter(|&i| m >> i & 1 == 1).fold(0, |acc, i| acc | 1 << i)
    };
    let edge_pairs: Vec<Vec<u32>> = masks
        .iter()
        .map(|&y| match space.layers.get(1) {
            Some(range) => range
                .clone()
                .filter(|&i| y >> i & 1 == 1)
                .map(|i| space.simplices[i].vertices().iter().fold(0u32, |acc, &v| acc | 1 << (v - 1)))
                .collect(),
            None => Vec::new(),
        })
        .collect();
    let mut worst = 0.0;
    for (s_idx, &s) in masks.iter().enumerate() {
        let vs = vertex_bits(s);
        let sum: f64 = masks
            .iter()
            .enumerate()
            .filter(|&(iy, &y)| {
                s & !y == 0 && edge_pairs[iy].iter().all(|&e| (e & vs == 0) || (e & !vs == 0))
            })
            .map(|(iy, _)| probs[iy])
            .sum();
        let closed = isolated_subcomplex_probability(&complexes[s_idx], n, params)?.probability();
        track(&mut worst, closed, sum);
    }
    out.push("isolated_subcomplex", masks.len() as u64, worst, IDENTITY_TOLERANCE);

    let mut worst = 0.0;
    for t in 0..=n as u64 {
        let sum: f64 = complexes
            .iter()
            .zip(probs)
            .filter(|(y, _)| y.f_vector()[0] == t)
            .map(|(_, &p)| p)
            .sum();
        track(&mut worst, vertex_count_pmf(t, n as u64, params)?, sum);
    }
    out.push("vertex_count_pmf", n as u64 + 1, worst, IDENTITY_TOLERANCE);

    for k in 0..r.min(n as usize - 1).min(2) {
        let sigma = Simplex::new(1..=k as u32 + 1)?;
        let law = degree_law(params, n as u64, k)?;
        let mass: f64 = complexes
            .iter()
            .zip(probs)
            .filter(|(y, _)| y.contains(&sigma))
            .map(|(_, &p)| p)
            .sum();
        if mass == 0.0 {
            continue;
        }
        let mut worst = 0.0;
        for j in 0..=law.trials {
            let hit: f64 = complexes
                .iter()
                .zip(probs)
                .filter(|(y, _)| y.contains(&sigma) && y.degree(&sigma).expect("present") as u64 == j)
                .map(|(_, &p)| p)
                .sum();
            track(&mut worst, law.pmf(j), hit / mass);
        }
        out.push(&format!("degree_law_k{k}"), law.trials + 1, worst, IDENTITY_TOLERANCE);
    }

    if r >= 1 {
        let mean_edges: f64 = complexes.iter().zip(probs).map(|(y, &p)| p * y.f_vector()[1] as f64).sum();
        out.push(
            "expected_edges",
            1,
            (mean_edges - expected_edge_count(n, params)?).abs(),
            IDENTITY_TOLERANCE,
        );
    }
    if r >= 2 {
        let mean_zero: f64 = complexes
            .iter()
            .zip(probs)
            .map(|(y, &p)| p * crate::topology::zero_degree_edge_count(y) as f64)
            .sum();
        out.push(
            "degree_zero_edges",
            1,
            (mean_zero - edge_degree_zero_bound(params, n as u64)?).abs(),
            IDENTITY_TOLERANCE,
        );
    }

    let dist = table.distribution();
    for k in 0..r.min(2) {
        if (k as u32) + 1 >= n {
            break;
        }
        let sigma = Simplex::new(1..=k as u32 + 1)?;
        let (link, mass) = match conditional_link(&dist, &sigma) {
            Ok(v) => v,
            Err(LabError::ZeroProbabilityCondition) => continue,
            Err(e) => return Err(e),
        };
        let expected = enumerate_distribution(n - k as u32 - 1, r - k - 1, &link_parameters(params, k)?)?;
        let normalizer: f64 = (0..=k)
            .map(|i| params.p(i).powi(binomial(k + 1, i + 1) as i32))
            .product();
        let worst = link.max_abs_diff(&expected)?.max((mass - normalizer).abs());
        out.push(&format!("link_law_k{k}"), expected.len() as u64, worst, IDENTITY_TOLERANCE);
    }
    if r >= 1 && n >= 3 {
        match conditional_links_intersection(&dist, &[1, 2]) {
            Ok((z, _)) => {
                let expected = enumerate_distribution(n - 2, r - 1, &links_intersection_parameters(params, 2)?)?;
                out.push(
                    "links_intersection_law",
                    expected.len() as u64,
                    z.max_abs_diff(&expected)?,
                    IDENTITY_TOLERANCE,
                );
            }
            Err(LabError::ZeroProbabilityCondition) => {}
            Err(e) => return Err(e),
        }
    }
    let companion = ParameterVector::new(params.as_slice().iter().map(|p| 1.0 - p / 2.0).collect())?;
    let product = exact_pushforward(&dist, &Transform::IntersectWith(companion.clone()))?;
    let expected = enumerate_distribution(n, r, &intersection_parameters(params, &companion)?)?;
    out.push(
        "intersection_law",
        expected.len() as u64,
        product.max_abs_diff(&expected)?,
        IDENTITY_TOLERANCE,
    );
    if n >= 2 {
        let dropped = exact_pushforward(&dist, &Transform::DropVertex(n))?;
        let expected = enumerate_distribution(n - 1, r, &restriction_parameters(params))?;
        out.push(
            "restriction_law",
            expected.len() as u64,
            dropped.max_abs_diff(&expected)?,
            IDENTITY_TOLERANCE,
        );
    }
    Ok(out.reports)
}

fn binomial(n: usize, k: usize) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i as u64 + 1))
}
