use std::collections::HashMap;
use std::ops::Range;

use itertools::Itertools;

use super::LabError;
use crate::complex::{Simplex, SimplicialComplex};

pub const DEFAULT_GUARD: u64 = 10_000_000;
pub const GUARD_ENV: &str = "RANDCOMPLEX_GUARD";

/// The enumeration guard, overridable through `RANDCOMPLEX_GUARD`.
pub fn guard_from_env() -> u64 {
    std::env::var(GUARD_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_GUARD)
}

/// All simplices of `Δ_n^{(r)}` with ids, so complexes become `u128` masks.
pub(crate) struct SpaceIndex {
    pub n: u32,
    pub r: usize,
    pub simplices: Vec<Simplex>,
    pub facets: Vec<u128>,
    pub layers: Vec<Range<usize>>,
    ids: HashMap<Simplex, usize>,
}

impl SpaceIndex {
    pub fn new(n: u32, r: usize) -> Result<Self, LabError> {
        let mut simplices = Vec::new();
        let mut layers = Vec::new();
        for d in 0..=r {
            let start = simplices.len();
            for combo in (1..=n).combinations(d + 1) {
                simplices.push(Simplex::new(combo).expect("combinations are increasing"));
                if simplices.len() > 128 {
                    return Err(LabError::SpaceTooLarge { n, r });
                }
            }
            layers.push(start..simplices.len());
        }
        let ids: HashMap<Simplex, usize> = simplices.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        let facets = simplices
            .iter()
            .map(|s| s.facets().fold(0u128, |m, f| m | 1 << ids[&f]))
            .collect();
        Ok(SpaceIndex {
            n,
            r,
            simplices,
            facets,
            layers,
            ids,
        })
    }

    pub fn to_complex(&self, mask: u128) -> SimplicialComplex {
        let layers = self
            .layers
            .iter()
            .map(|range| {
                range
                    .clone()
                    .filter(|&i| mask >> i & 1 == 1)
                    .map(|i| self.simplices[i].clone())
                    .collect()
            })
            .collect();
        SimplicialComplex::from_sorted_layers(self.n, self.r, layers)
    }

    pub fn mask_of(&self, y: &SimplicialComplex) -> u128 {
        y.iter().fold(0, |m, s| m | 1 << self.ids[s])
    }

    /// Every closed mask, depth-first over layers; errors once more than `guard` exist.
    pub fn enumerate(&self, guard: u64) -> Result<Vec<u128>, LabError> {
        let mut out = Vec::new();
        self.descend(0, 0, guard, &mut out)?;
        Ok(out)
    }

    fn descend(&self, layer: usize, mask: u128, guard: u64, out: &mut Vec<u128>) -> Result<(), LabError> {
        if layer > self.r {
            if out.len() as u64 >= guard {
                return Err(LabError::GuardExceeded { n: self.n, r: self.r, guard });
            }
            out.push(mask);
            return Ok(());
        }
        let candidates: Vec<usize> = self.layers[layer]
            .clone()
            .filter(|&i| self.facets[i] & !mask == 0)
            .collect();
        if candidates.is_empty() {
            return self.descend(self.r + 1, mask, guard, out);
        }
        if candidates.len() >= 64 || 1u64 << candidates.len() > guard {
            return Err(LabError::GuardExceeded { n: self.n, r: self.r, guard });
        }
        for subset in 0..1u64 << candidates.len() {
            let chosen = candidates
                .iter()
                .enumerate()
                .filter(|&(b, _)| subset >> b & 1 == 1)
                .fold(mask, |m, (_, &i)| m | 1 << i);
            self.descend(layer + 1, chosen, guard, out)?;
        }
        Ok(())
    }

    /// Per-dimension counts of faces and of external faces of a mask.
    #[cfg(test)]
    pub fn profile(&self, mask: u128) -> (Vec<u64>, Vec<u64>) {
        let mut f = vec![0; self.r + 1];
        let mut e = vec![0; self.r + 1];
        for (d, range) in self.layers.iter().enumerate() {
            for i in range.clone() {
                if mask >> i & 1 == 1 {
                    f[d] += 1;
                } else if self.facets[i] & !mask == 0 {
                    e[d] += 1;
                }
            }
        }
        (f, e)
    }
}

/// Every subcomplex of `Δ_n^{(r)}`, each once, in depth-first layer order
/// (vertex subsets first, then edge subsets over them, and so on).
pub fn enumerate_space(n: u32, r: usize) -> Result<Vec<SimplicialComplex>, LabError> {
    enumerate_space_with_guard(n, r, guard_from_env())
}

pub fn enumerate_space_with_guard(n: u32, r: usize, guard: u64) -> Result<Vec<SimplicialComplex>, LabError> {
    let space = SpaceIndex::new(n, r)?;
    Ok(space
        .enumerate(guard)?
        .into_iter()
        .map(|m| space.to_complex(m))
        .collect())
}
