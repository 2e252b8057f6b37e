//! Seeded sampling from `P_{r,p}` by the layered Bernoulli process.
//!
//! Vertices are retained with probability `p_0`; then, layer by layer, every
//! `i`-simplex whose full boundary survived is kept with probability `p_i`.
//! The coin for a simplex is drawn from the counter-based stream at
//! `(seed, trial, dimension, colex rank)`, so a trial's output does not depend
//! on how trials are scheduled or on which candidates were visited.

use std::collections::HashSet;
use std::ops::Range;

use rayon::prelude::*;
use smallvec::SmallVec;
use thiserror::Error;

use crate::bits::BitRow;
use crate::complex::{Simplex, SimplicialComplex};
use crate::measure::{MeasureError, ParameterVector};
use crate::rng::TrialStream;

#[derive(Debug, Error)]
pub enum SampleError {
    #[error("sample count must be at least 1")]
    ZeroCount,
    #[error("trial index {index} out of range for count {count}")]
    IndexOutOfRange { index: u64, count: u64 },
    #[error("simplex ranks for n = {n}, r = {r} do not fit in 128 bits")]
    RankOverflow { n: u32, r: usize },
    #[error("trial count must stay below 2^56")]
    TooManyTrials,
    #[error(transparent)]
    Params(#[from] MeasureError),
}

#[derive(Clone, Debug)]
pub struct SampleConfig {
    pub n: u32,
    pub r: usize,
    pub params: ParameterVector,
    pub seed: u64,
    pub count: u64,
}

impl SampleConfig {
    pub fn new(n: u32, params: ParameterVector, seed: u64, count: u64) -> Result<Self, SampleError> {
        let config = SampleConfig {
            n,
            r: params.r(),
            params,
            seed,
            count,
        };
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<(), SampleError> {
        if self.count == 0 {
            return Err(SampleError::ZeroCount);
        }
        if self.count >= 1 << 56 {
            return Err(SampleError::TooManyTrials);
        }
        self.params.check_len(self.r)?;
        Ok(())
    }
}

type Face = SmallVec<[u32; 4]>;

/// A validated configuration plus the binomial table used to rank simplices.
pub struct Sampler {
    config: SampleConfig,
    // binom[k][v] = C(v, k) for 1 <= k <= r + 1 and 0 <= v < n
    binom: Vec<Vec<u128>>,
}

impl Sampler {
    pub fn new(config: SampleConfig) -> Result<Self, SampleError> {
        config.validate()?;
        let n = config.n as usize;
        let top = config.r + 1;
        let mut binom = vec![vec![0u128; n]; top + 1];
        for v in 0..n {
            binom[0][v] = 1;
            for k in 1..=top {
                binom[k][v] = if v == 0 {
                    0
                } else {
                    binom[k - 1][v - 1]
                        .checked_add(binom[k][v - 1])
                        .ok_or(SampleError::RankOverflow { n: config.n, r: config.r })?
                };
            }
        }
        Ok(Sampler { config, binom })
    }

    pub fn config(&self) -> &SampleConfig {
        &self.config
    }

    /// Colexicographic rank of a simplex given by increasing 1-based labels.
    #[inline]
    fn rank(&self, labels: &[u32]) -> u128 {
        labels
            .iter()
            .enumerate()
            .map(|(j, &v)| self.binom[j + 1][v as usize - 1])
            .sum()
    }

    pub fn sample(&self, index: u64) -> Result<SimplicialComplex, SampleError> {
        if index >= self.config.count {
            return Err(SampleError::IndexOutOfRange {
                index,
                count: self.config.count,
            });
        }
        Ok(self.generate(index))
    }

    fn generate(&self, index: u64) -> SimplicialComplex {
        let SampleConfig { n, r, ref params, seed, .. } = self.config;
        let stream = TrialStream::new(seed, index);
        let draw = |layer: usize, labels: &[u32]| -> bool {
            let p = params.p(layer);
            p == 1.0 || (p > 0.0 && stream.bernoulli(layer as u64, self.rank(labels), p))
        };

        let verts: Vec<u32> = (1..=n).filter(|&v| draw(0, &[v])).collect();
        let mut layers: Vec<Vec<Simplex>> = vec![Vec::new(); r + 1];
        layers[0] = verts.iter().map(|&v| Simplex::vertex(v)).collect();

        let m = verts.len();
        let need_adjacency = r >= 2;
        let mut adjacency: Vec<BitRow> = if need_adjacency {
            vec![BitRow::new(m); m]
        } else {
            Vec::new()
        };
        // faces of the previous layer on compact indices
        let mut prev: Vec<Face> = Vec::new();
        if r >= 1 && params.p(1) > 0.0 {
            for a in 0..m {
                for b in a + 1..m {
                    if draw(1, &[verts[a], verts[b]]) {
                        prev.push(smallvec::smallvec![a as u32, b as u32]);
                        if need_adjacency {
                            adjacency[a].insert(b);
                            adjacency[b].insert(a);
                        }
                    }
                }
            }
        }
        if r >= 1 {
            layers[1] = prev.iter().map(|f| to_simplex(f, &verts)).collect();
        }

        for dim in 2..=r {
            if prev.is_empty() || params.p(dim) == 0.0 {
                break;
            }
            let lookup: HashSet<&Face> = if dim >= 3 { prev.iter().collect() } else { HashSet::new() };
            let mut next: Vec<Face> = Vec::new();
            let mut labels: Face = SmallVec::new();
            let mut facet: Face = SmallVec::new();
            for base in &prev {
                let rows: SmallVec<[&BitRow; 4]> = base.iter().map(|&v| &adjacency[v as usize]).collect();
                let top = *base.last().expect("faces are nonempty") as usize;
                for w in BitRow::common_ones(&rows, top + 1) {
                    if dim >= 3 {
                        // facets through w: drop one vertex of the base, add w
                        let all_present = (0..base.len()).all(|skip| {
                            facet.clear();
                            facet.extend(base.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v));
                            facet.push(w as u32);
                            lookup.contains(&facet)
                        });
                        if !all_present {
                            continue;
                        }
                    }
                    labels.clear();
                    labels.extend(base.iter().map(|&v| verts[v as usize]));
                    labels.push(verts[w]);
                    if draw(dim, &labels) {
                        let mut face = base.clone();
                        face.push(w as u32);
                        next.push(face);
                    }
                }
            }
            layers[dim] = next.iter().map(|f| to_simplex(f, &verts)).collect();
            prev = next;
        }
        SimplicialComplex::from_sorted_layers(n, r, layers)
    }

    /// Trials `range` in index order; generated in parallel.
    pub fn sample_range(&self, range: Range<u64>) -> Result<Vec<SimplicialComplex>, SampleError> {
        if range.end > self.config.count {
            return Err(SampleError::IndexOutOfRange {
                index: range.end - 1,
                count: self.config.count,
            });
        }
        Ok(range.into_par_iter().map(|i| self.generate(i)).collect())
    }

    pub fn sample_all(&self) -> Vec<SimplicialComplex> {
        (0..self.config.count)
            .into_par_iter()
            .map(|i| self.generate(i))
            .collect()
    }

    /// Maps every trial through `f` in parallel, returning results in index order.
    pub fn map_trials<T, F>(&self, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(u64, &SimplicialComplex) -> T + Sync + Send,
    {
        (0..self.config.count)
            .into_par_iter()
            .map(|i| f(i, &self.generate(i)))
            .collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = SimplicialComplex> + '_ {
        (0..self.config.count).map(|i| self.generate(i))
    }
}

fn to_simplex(face: &Face, verts: &[u32]) -> Simplex {
    Simplex::from_sorted_unchecked(face.iter().map(|&i| verts[i as usize]).collect())
}

/// Draws trial `index` of `config`.
pub fn sample(config: &SampleConfig, index: u64) -> Result<SimplicialComplex, SampleError> {
    Sampler::new(config.clone())?.sample(index)
}

/// The trials `0..count` in order.
pub fn sample_stream(config: &SampleConfig) -> Result<impl Iterator<Item = SimplicialComplex>, SampleError> {
    let sampler = Sampler::new(config.clone())?;
    Ok((0..config.count).map(move |i| sampler.generate(i)))
}
