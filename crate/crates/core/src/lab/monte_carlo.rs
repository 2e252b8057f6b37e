use std::collections::HashMap;

use serde::Serialize;

use super::exact::ExactDistribution;
use super::stats::{mean_interval, pearson, wilson_interval, Z95};
use super::LabError;
use crate::complex::{canonical_key, SimplicialComplex};
use crate::sampler::{SampleConfig, Sampler};
use crate::topology;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Pass,
    Fail,
}

impl Outcome {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Outcome::Pass
        } else {
            Outcome::Fail
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExperimentReport {
    pub metric: String,
    pub estimate: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub trials: u64,
    pub seed: u64,
    pub verdict: Option<Outcome>,
}

impl ExperimentReport {
    pub fn passed(&self) -> bool {
        self.verdict != Some(Outcome::Fail)
    }
}

pub type EventFn = fn(&SimplicialComplex) -> bool;
pub type StatisticFn = fn(&SimplicialComplex) -> f64;

/// Named yes/no events over a complex.
pub const EVENTS: &[(&str, EventFn)] = &[
    ("connected", topology::is_connected),
    ("disconnected", |y| !topology::is_connected(y)),
    ("has_isolated_vertex", |y| !topology::isolated_vertices(y).is_empty()),
    ("certified", |y| topology::certify_simply_connected(y).is_certified()),
    ("edges_on_triangles", |y| topology::min_edge_degree(y).is_none_or(|d| d >= 1)),
    ("pairwise_links_connected", topology::pairwise_link_intersections_connected),
    ("triples_have_common_neighbour", |y| {
        topology::all_k_tuples_have_common_neighbour(y, 3).expect("k = 3 is valid")
    }),
    ("empty", SimplicialComplex::is_empty),
];

/// Named real-valued statistics over a complex.
pub const STATISTICS: &[(&str, StatisticFn)] = &[
    ("f0", |y| y.f_vector()[0] as f64),
    ("f1", |y| y.f_vector().get(1).copied().unwrap_or(0) as f64),
    ("f2", |y| y.f_vector().get(2).copied().unwrap_or(0) as f64),
    ("isolated_vertex_count", |y| topology::isolated_vertices(y).len() as f64),
    ("component_count", |y| topology::connected_components(y).len() as f64),
    ("zero_degree_edges", |y| topology::zero_degree_edge_count(y) as f64),
    // -1 for the empty complex
    ("dimension", |y| topology::dimension(y).map_or(-1.0, |d| d as f64)),
    ("vertex_1_degree", |y| {
        y.edges().filter(|&(a, b)| a == 1 || b == 1).count() as f64
    }),
];

#[derive(Clone, Copy, Debug)]
pub enum Metric {
    Event(EventFn),
    Statistic(StatisticFn),
}

pub fn lookup_metric(name: &str) -> Option<Metric> {
    EVENTS
        .iter()
        .find(|(n, _)| *n == name)
        .map(|&(_, f)| Metric::Event(f))
        .or_else(|| {
            STATISTICS
                .iter()
                .find(|(n, _)| *n == name)
                .map(|&(_, f)| Metric::Statistic(f))
        })
}

pub fn metric_names() -> impl Iterator<Item = &'static str> {
    EVENTS.iter().map(|(n, _)| *n).chain(STATISTICS.iter().map(|(n, _)| *n))
}

/// Runs `config.count` trials of a named event or statistic.
///
/// Events report a Wilson interval, statistics a normal-approximation interval
/// around the sample mean.
pub fn monte_carlo(name: &str, config: &SampleConfig) -> Result<ExperimentReport, LabError> {
    let metric = lookup_metric(name).ok_or_else(|| LabError::UnknownMetric(name.to_string()))?;
    let sampler = Sampler::new(config.clone())?;
    let (estimate, ci_low, ci_high) = match metric {
        Metric::Event(f) => {
            let hits = sampler.map_trials(|_, y| f(y)).into_iter().filter(|&h| h).count() as u64;
            let (lo, hi) = wilson_interval(hits, config.count, Z95);
            (hits as f64 / config.count as f64, lo, hi)
        }
        Metric::Statistic(f) => mean_interval(&sampler.map_trials(|_, y| f(y)), Z95),
    };
    Ok(ExperimentReport {
        metric: name.to_string(),
        estimate,
        ci_low,
        ci_high,
        trials: config.count,
        seed: config.seed,
        verdict: None,
    })
}

/// Pearson test of sampled complexes against an exact law, bins keyed by complex.
pub fn chi_square_test<I>(
    samples: I,
    exact: &ExactDistribution,
    significance: f64,
    seed: u64,
) -> Result<ExperimentReport, LabError>
where
    I: IntoIterator<Item = SimplicialComplex>,
{
    let keys: Vec<&String> = exact.entries.keys().collect();
    let slot: HashMap<&str, usize> = keys.iter().enumerate().map(|(i, k)| (k.as_str(), i)).collect();
    let mut observed = vec![0u64; keys.len()];
    let mut unbinned = 0;
    let mut trials = 0;
    for y in samples {
        if (y.n(), y.r()) != (exact.n, exact.r) {
            return Err(LabError::SpaceMismatch {
                expected: (exact.n, exact.r),
                got: (y.n(), y.r()),
            });
        }
        trials += 1;
        match slot.get(canonical_key(&y).as_str()) {
            Some(&i) => observed[i] += 1,
            None => unbinned += 1,
        }
    }
    if trials == 0 {
        return Err(LabError::ZeroTrials);
    }
    let probs: Vec<f64> = keys.iter().map(|k| exact.entries[*k]).collect();
    let test = pearson(&observed, &probs, unbinned);
    Ok(ExperimentReport {
        metric: "chi_square_p_value".to_string(),
        estimate: test.p_value,
        ci_low: test.p_value,
        ci_high: test.p_value,
        trials,
        seed,
        verdict: Some(Outcome::from_bool(test.p_value >= significance)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lab::enumerate_distribution;
    use crate::measure::ParameterVector;
    use crate::sampler::sample_stream;

    fn config(n: u32, p: &[f64], seed: u64, count: u64) -> SampleConfig {
        SampleConfig::new(n, ParameterVector::new(p.to_vec()).unwrap(), seed, count).unwrap()
    }

    #[test]
    fn registry_names_resolve() {
        for name in metric_names() {
            assert!(lookup_metric(name).is_some());
        }
        assert!(lookup_metric("nope").is_none());
        assert!(matches!(
            monte_carlo("nope", &config(3, &[0.5], 0, 1)),
            Err(LabError::UnknownMetric(_))
        ));
    }

    #[test]
    fn connected_with_all_ones_is_certain() {
        let r = monte_carlo("connected", &config(8, &[1.0, 1.0, 1.0], 4, 50)).unwrap();
        assert_eq!(r.estimate, 1.0);
        assert!(r.ci_low <= 1.0 && r.ci_high == 1.0);
        assert_eq!(r.trials, 50);
    }

    #[test]
    fn vertex_mean_tracks_n_p0() {
        let r = monte_carlo("f0", &config(1000, &[0.05], 9, 400)).unwrap();
        assert!(r.ci_low < 50.0 && 50.0 < r.ci_high, "{r:?}");
        let again = monte_carlo("f0", &config(1000, &[0.05], 9, 400)).unwrap();
        assert_eq!(r, again);
    }

    #[test]
    fn chi_square_accepts_own_law_and_checks_space() {
        let p = [0.6, 0.5, 0.4];
        let exact = enumerate_distribution(3, 2, &ParameterVector::new(p.to_vec()).unwrap()).unwrap();
        let c = config(3, &p, 21, 20_000);
        let report = chi_square_test(sample_stream(&c).unwrap(), &exact, 0.01, 21).unwrap();
        assert_eq!(report.verdict, Some(Outcome::Pass), "{report:?}");
        let wrong = enumerate_distribution(2, 2, &ParameterVector::new(p.to_vec()).unwrap()).unwrap();
        assert!(matches!(
            chi_square_test(sample_stream(&c).unwrap(), &wrong, 0.01, 21),
            Err(LabError::SpaceMismatch { .. })
        ));
    }
}
