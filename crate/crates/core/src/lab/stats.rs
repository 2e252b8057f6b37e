use statrs::distribution::{ChiSquared, ContinuousCDF};

/// Two-sided 95% normal quantile.
pub const Z95: f64 = 1.959_963_984_540_054;
/// Bins whose expected count falls below this are pooled into one tail bin.
pub const POOLING_THRESHOLD: f64 = 5.0;
pub const DEFAULT_SIGNIFICANCE: f64 = 0.01;

/// Wilson score interval for `successes` out of `trials`.
pub fn wilson_interval(successes: u64, trials: u64, z: f64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let n = trials as f64;
    let phat = successes as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let centre = (phat + z2 / (2.0 * n)) / denom;
    let half = z * (phat * (1.0 - phat) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    let lo = if successes == 0 { 0.0 } else { (centre - half).max(0.0) };
    let hi = if successes == trials { 1.0 } else { (centre + half).min(1.0) };
    (lo, hi)
}

/// Sample mean with a normal-approximation interval `mean ± z·s/√n`.
pub fn mean_interval(values: &[f64], z: f64) -> (f64, f64, f64) {
    let n = values.len() as f64;
    if values.is_empty() {
        return (f64::NAN, f64::NAN, f64::NAN);
    }
    let mean = values.iter().sum::<f64>() / n;
    if values.len() == 1 {
        return (mean, mean, mean);
    }
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
    let half = z * (var / n).sqrt();
    (mean, mean - half, mean + half)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChiSquare {
    pub statistic: f64,
    pub dof: usize,
    pub p_value: f64,
}

/// Pearson goodness of fit of `observed` counts against bin probabilities.
///
/// Bins expected below [`POOLING_THRESHOLD`] are merged into a tail bin, as is
/// `unbinned`, an observed count outside every listed bin.
pub fn pearson(observed: &[u64], probs: &[f64], unbinned: u64) -> ChiSquare {
    assert_eq!(observed.len(), probs.len());
    let total = observed.iter().sum::<u64>() + unbinned;
    let n = total as f64;
    let mut cells: Vec<(f64, f64)> = Vec::new();
    let (mut tail_obs, mut tail_exp) = (unbinned as f64, 0.0);
    for (&o, &p) in observed.iter().zip(probs) {
        let e = p * n;
        if e < POOLING_THRESHOLD {
            tail_obs += o as f64;
            tail_exp += e;
        } else {
            cells.push((o as f64, e));
        }
    }
    if tail_obs > 0.0 || tail_exp > 0.0 {
        if tail_exp < POOLING_THRESHOLD && !cells.is_empty() && tail_exp > 0.0 {
            // fold a thin tail into the smallest regular cell
            let smallest = cells
                .iter()
                .enumerate()
                .min_by(|a, b| a.1 .1.total_cmp(&b.1 .1))
                .map(|(i, _)| i)
                .expect("nonempty");
            cells[smallest].0 += tail_obs;
            cells[smallest].1 += tail_exp;
        } else {
            cells.push((tail_obs, tail_exp));
        }
    }
    let statistic: f64 = cells
        .iter()
        .map(|&(o, e)| {
            if e == 0.0 {
                if o == 0.0 {
                    0.0
                } else {
                    f64::INFINITY
                }
            } else {
                (o - e).powi(2) / e
            }
        })
        .sum();
    let dof = cells.len().saturating_sub(1);
    let p_value = if !statistic.is_finite() {
        0.0
    } else if dof == 0 {
        1.0
    } else {
        ChiSquared::new(dof as f64).expect("positive dof").sf(statistic)
    };
    ChiSquare {
        statistic,
        dof,
        p_value,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::TrialStream;
    use approx::assert_abs_diff_eq;

    #[test]
    fn wilson_reference_values() {
        // closed-form reference for 10/100 at z = 1.96
        let (lo, hi) = wilson_interval(10, 100, 1.96);
        assert_abs_diff_eq!(lo, 0.055_228_542, epsilon = 1e-8);
        assert_abs_diff_eq!(hi, 0.174_367_304, epsilon = 1e-8);
        let (lo, hi) = wilson_interval(0, 50, Z95);
        assert_eq!(lo, 0.0);
        assert!(hi > 0.0 && hi < 0.1);
        assert_eq!(wilson_interval(7, 7, Z95).1, 1.0);
    }

    #[test]
    fn wilson_coverage() {
        // 2000 synthetic experiments of 200 Bernoulli draws each
        for &p in &[0.05, 0.5, 0.95] {
            let mut covered = 0;
            for rep in 0..2000u64 {
                let s = TrialStream::new(11, rep);
                let k = (0..200u128).filter(|&i| s.bernoulli(0, i, p)).count() as u64;
                let (lo, hi) = wilson_interval(k, 200, Z95);
                if lo <= p && p <= hi {
                    covered += 1;
                }
            }
            let rate = covered as f64 / 2000.0;
            assert!((0.92..=0.975).contains(&rate), "p={p} coverage {rate}");
        }
    }

    #[test]
    fn mean_interval_basics() {
        let (m, lo, hi) = mean_interval(&[1.0, 2.0, 3.0, 4.0], 1.96);
        assert_eq!(m, 2.5);
        assert_abs_diff_eq!(hi - m, 1.96 * (5.0f64 / 3.0 / 4.0).sqrt(), epsilon = 1e-12);
        assert_abs_diff_eq!(m - lo, hi - m, epsilon = 1e-12);
        assert_eq!(mean_interval(&[2.0, 2.0], Z95), (2.0, 2.0, 2.0));
    }

    #[test]
    fn pearson_reference() {
        // scipy.stats.chisquare([18, 22, 30, 30], [25, 25, 25, 25]) -> 4.32, p = 0.22892
        let c = pearson(&[18, 22, 30, 30], &[0.25; 4], 0);
        assert_abs_diff_eq!(c.statistic, 4.32, epsilon = 1e-12);
        assert_eq!(c.dof, 3);
        assert_abs_diff_eq!(c.p_value, 0.228_918_864, epsilon = 1e-6);
    }

    #[test]
    fn pearson_pooling_and_impossible_bins() {
        let c = pearson(&[50, 48, 1, 1], &[0.5, 0.48, 0.01, 0.01], 0);
        assert_eq!(c.dof, 1);
        let c = pearson(&[50, 50], &[0.5, 0.5], 3);
        assert_eq!(c.p_value, 0.0);
    }
}
