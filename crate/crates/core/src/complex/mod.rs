//! Simplicial complexes on the labeled ground set `{1..n}` with a dimension cap `r`.
//!
//! A [`SimplicialComplex`] stores every face explicitly, bucketed by dimension,
//! so membership tests are cheap and external faces can be enumerated directly
//! from the faces one dimension lower.

mod codec;
mod local;
mod simplex;

use std::collections::BTreeSet;

use itertools::Itertools;
use thiserror::Error;

pub use codec::{canonical_key, decode_key, CanonicalComplex};
pub use local::{join_with_simplex, Link};
pub use simplex::Simplex;

#[derive(Debug, Error)]
pub enum ComplexError {
    #[error("the empty simplex is not a face")]
    EmptySimplex,
    #[error("vertex labels {0:?} are not strictly increasing")]
    NotStrictlyIncreasing(Vec<u32>),
    #[error("vertex label {label} outside the ground set 1..={n}")]
    LabelOutOfRange { label: u32, n: u32 },
    #[error("simplex {simplex} has dimension {dim} above the cap {r}")]
    DimensionExceedsCap { simplex: Simplex, dim: usize, r: usize },
    #[error("{0} is not a face of the complex")]
    NotAFace(Simplex),
    #[error("complexes live in different spaces: (n={n1}, r={r1}) vs (n={n2}, r={r2})")]
    SpaceMismatch { n1: u32, r1: usize, n2: u32, r2: usize },
    #[error("{0} shares vertices with the complex it is joined to")]
    OverlappingVertices(Simplex),
    #[error("malformed canonical encoding: {0}")]
    Codec(#[from] serde_json::Error),
}

/// Face counts `f_i` and external-face counts `e_i`, both indexed by dimension `0..=r`.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct FaceProfile {
    pub f: Vec<u64>,
    pub e: Vec<u64>,
}

/// A downward-closed set of simplices over `{1..n}` with every face of dimension at most `r`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimplicialComplex {
    n: u32,
    r: usize,
    faces: Vec<BTreeSet<Simplex>>,
}

impl SimplicialComplex {
    pub fn empty(n: u32, r: usize) -> Self {
        SimplicialComplex {
            n,
            r,
            faces: vec![BTreeSet::new(); r + 1],
        }
    }

    /// The skeleton `Δ_n^{(r)}`: every simplex on `{1..n}` of dimension at most `r`.
    pub fn full(n: u32, r: usize) -> Self {
        let mut y = SimplicialComplex::empty(n, r);
        for d in 0..=r {
            for combo in (1..=n).combinations(d + 1) {
                y.faces[d].insert(Simplex::from_sorted_unchecked(combo.into_iter().collect()));
            }
        }
        y
    }

    /// The downward closure of `generators`.
    pub fn build<I>(n: u32, r: usize, generators: I) -> Result<Self, ComplexError>
    where
        I: IntoIterator<Item = Simplex>,
    {
        let mut y = SimplicialComplex::empty(n, r);
        for g in generators {
            y.check_simplex(&g)?;
            y.insert_closed(&g);
        }
        Ok(y)
    }

    /// Convenience constructor from raw label lists.
    pub fn from_lists(n: u32, r: usize, generators: &[&[u32]]) -> Result<Self, ComplexError> {
        let simplices = generators
            .iter()
            .map(|g| Simplex::from_unsorted(g.iter().copied()))
            .collect::<Result<Vec<_>, _>>()?;
        SimplicialComplex::build(n, r, simplices)
    }

    fn check_simplex(&self, s: &Simplex) -> Result<(), ComplexError> {
        if let Some(&bad) = s.vertices().iter().find(|&&v| v > self.n) {
            return Err(ComplexError::LabelOutOfRange { label: bad, n: self.n });
        }
        if s.dim() > self.r {
            return Err(ComplexError::DimensionExceedsCap {
                simplex: s.clone(),
                dim: s.dim(),
                r: self.r,
            });
        }
        Ok(())
    }

    pub(crate) fn insert_closed(&mut self, s: &Simplex) {
        if self.faces[s.dim()].contains(s) {
            return;
        }
        for face in s.faces() {
            self.faces[face.dim()].insert(face);
        }
    }

    /// Inserts a simplex whose boundary is already present.
    pub(crate) fn insert_unchecked(&mut self, s: Simplex) {
        let d = s.dim();
        self.faces[d].insert(s);
    }

    /// Assembles a complex from per-dimension face lists already known to be closed.
    pub(crate) fn from_sorted_layers(n: u32, r: usize, layers: Vec<Vec<Simplex>>) -> Self {
        debug_assert_eq!(layers.len(), r + 1);
        SimplicialComplex {
            n,
            r,
            faces: layers.into_iter().map(BTreeSet::from_iter).collect(),
        }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.faces.get(s.dim()).is_some_and(|layer| layer.contains(s))
    }

    pub fn contains_vertex(&self, v: u32) -> bool {
        self.faces[0].contains(&Simplex::vertex(v))
    }

    pub fn is_empty(&self) -> bool {
        self.faces[0].is_empty()
    }

    /// The faces of dimension `d` in canonical order; empty above the cap.
    pub fn faces_of_dim(&self, d: usize) -> impl Iterator<Item = &Simplex> + '_ {
        self.faces.get(d).into_iter().flatten()
    }

    /// All faces, dimension-major.
    pub fn iter(&self) -> impl Iterator<Item = &Simplex> + '_ {
        self.faces.iter().flatten()
    }

    pub fn vertices(&self) -> impl Iterator<Item = u32> + '_ {
        self.faces[0].iter().map(|s| s.vertices()[0])
    }

    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.faces_of_dim(1).map(|e| (e.vertices()[0], e.vertices()[1]))
    }

    pub fn face_count(&self) -> usize {
        self.faces.iter().map(BTreeSet::len).sum()
    }

    pub fn f_vector(&self) -> Vec<u64> {
        self.faces.iter().map(|layer| layer.len() as u64).collect()
    }

    /// Largest face dimension; `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.faces.iter().rposition(|layer| !layer.is_empty())
    }

    /// Faces not contained in a larger face, in lexicographic order of their label lists.
    pub fn maximal_faces(&self) -> Vec<Simplex> {
        let mut out: Vec<Simplex> = Vec::new();
        for d in 0..=self.r {
            let covered: BTreeSet<Simplex> = self
                .faces
                .get(d + 1)
                .into_iter()
                .flatten()
                .flat_map(|t| t.facets())
                .collect();
            out.extend(self.faces[d].iter().filter(|s| !covered.contains(*s)).cloned());
        }
        out.sort();
        out
    }

    /// Simplices of `Δ_n^{(r)}` outside the complex whose whole boundary lies inside it.
    ///
    /// Every missing vertex is external. Higher candidates are generated once each,
    /// by extending a face with a vertex above its largest label.
    pub fn external_faces(&self) -> Vec<Simplex> {
        let mut out: Vec<Simplex> = (1..=self.n)
            .filter(|&v| !self.contains_vertex(v))
            .map(Simplex::vertex)
            .collect();
        let vertices: Vec<u32> = self.vertices().collect();
        for d in 1..=self.r {
            let mut layer = Vec::new();
            for base in &self.faces[d - 1] {
                let top = base.max_vertex();
                for &w in vertices.iter().filter(|&&w| w > top) {
                    let candidate = base.with_vertex(w);
                    if self.faces[d].contains(&candidate) {
                        continue;
                    }
                    if candidate.facets().all(|f| self.faces[d - 1].contains(&f)) {
                        layer.push(candidate);
                    }
                }
            }
            layer.sort();
            out.extend(layer);
        }
        out
    }

    pub fn face_profile(&self) -> FaceProfile {
        let mut e = vec![0u64; self.r + 1];
        for s in self.external_faces() {
            e[s.dim()] += 1;
        }
        FaceProfile {
            f: self.f_vector(),
            e,
        }
    }

    /// Checks that every simplex of `Δ_n^{(r)}` missing from the complex contains an external face.
    ///
    /// Exhaustive over the skeleton, so only meant for small ground sets.
    pub fn complement_is_open_star_union(&self) -> bool {
        let external: BTreeSet<Simplex> = self.external_faces().into_iter().collect();
        (0..=self.r).all(|d| {
            (1..=self.n).combinations(d + 1).all(|combo| {
                let s = Simplex::from_sorted_unchecked(combo.into_iter().collect());
                self.contains(&s) || s.faces().any(|f| external.contains(&f))
            })
        })
    }

    fn check_same_space(&self, other: &SimplicialComplex) -> Result<(), ComplexError> {
        if self.n != other.n || self.r != other.r {
            return Err(ComplexError::SpaceMismatch {
                n1: self.n,
                r1: self.r,
                n2: other.n,
                r2: other.r,
            });
        }
        Ok(())
    }

    /// Whether every face of `self` is a face of `other`.
    pub fn is_subcomplex(&self, other: &SimplicialComplex) -> Result<bool, ComplexError> {
        self.check_same_space(other)?;
        Ok(self
            .faces
            .iter()
            .zip(&other.faces)
            .all(|(a, b)| a.len() <= b.len() && a.is_subset(b)))
    }

    /// Containment decided through external faces: `self ⊆ other` iff every external
    /// face of `other` has a face that is external to `self`.
    pub fn is_subcomplex_by_external_faces(
        &self,
        other: &SimplicialComplex,
    ) -> Result<bool, ComplexError> {
        self.check_same_space(other)?;
        let mine: BTreeSet<Simplex> = self.external_faces().into_iter().collect();
        Ok(other
            .external_faces()
            .iter()
            .all(|s| s.faces().any(|f| mine.contains(&f))))
    }

    pub fn intersection(&self, other: &SimplicialComplex) -> Result<Self, ComplexError> {
        self.check_same_space(other)?;
        Ok(SimplicialComplex {
            n: self.n,
            r: self.r,
            faces: self
                .faces
                .iter()
                .zip(&other.faces)
                .map(|(a, b)| a.intersection(b).cloned().collect())
                .collect(),
        })
    }

    /// The faces avoiding `removed`, relabeled onto `{1..n-|removed|}` preserving order.
    /// Returns the compacted complex and the map from new label (index + 1) to old label.
    pub fn compact_without(&self, removed: &BTreeSet<u32>, r: usize) -> (Self, Vec<u32>) {
        let kept: Vec<u32> = (1..=self.n).filter(|v| !removed.contains(v)).collect();
        let mut new_label = vec![0u32; self.n as usize + 1];
        for (i, &v) in kept.iter().enumerate() {
            new_label[v as usize] = i as u32 + 1;
        }
        let mut out = SimplicialComplex::empty(kept.len() as u32, r);
        for s in self.iter() {
            if s.dim() > r || s.vertices().iter().any(|v| removed.contains(v)) {
                continue;
            }
            let relabeled = s.vertices().iter().map(|&v| new_label[v as usize]).collect();
            out.insert_unchecked(Simplex::from_sorted_unchecked(relabeled));
        }
        (out, kept)
    }
}

impl std::fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Complex(n={}, r={}, max={:?})", self.n, self.r, self.maximal_faces())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn cx(n: u32, r: usize, gens: &[&[u32]]) -> SimplicialComplex {
        SimplicialComplex::from_lists(n, r, gens).unwrap()
    }

    #[test]
    fn build_examples() {
        assert_eq!(cx(3, 2, &[&[1, 2, 3]]).f_vector(), vec![3, 3, 1]);
        assert_eq!(cx(2, 1, &[]).f_vector(), vec![0, 0]);
        assert_eq!(cx(4, 2, &[&[1, 2], &[3]]).f_vector(), vec![3, 1, 0]);
    }

    #[test]
    fn build_rejects_out_of_range_and_oversized() {
        assert!(matches!(
            SimplicialComplex::from_lists(3, 2, &[&[1, 4]]),
            Err(ComplexError::LabelOutOfRange { label: 4, n: 3 })
        ));
        assert!(matches!(
            SimplicialComplex::from_lists(4, 1, &[&[1, 2, 3]]),
            Err(ComplexError::DimensionExceedsCap { dim: 2, r: 1, .. })
        ));
    }

    #[test]
    fn build_is_idempotent() {
        let y = cx(5, 3, &[&[1, 2, 4], &[2, 3], &[5]]);
        let again = SimplicialComplex::build(5, 3, y.iter().cloned()).unwrap();
        assert_eq!(y, again);
        let from_max = SimplicialComplex::build(5, 3, y.maximal_faces()).unwrap();
        assert_eq!(y, from_max);
    }

    #[test]
    fn external_face_examples() {
        let y = cx(2, 1, &[&[1], &[2]]);
        assert_eq!(y.face_profile().e, vec![0, 1]);

        let hollow = cx(3, 2, &[&[1, 2], &[1, 3], &[2, 3]]);
        let prof = hollow.face_profile();
        assert_eq!(prof.f, vec![3, 3, 0]);
        assert_eq!(prof.e, vec![0, 0, 1]);

        let empty = SimplicialComplex::empty(4, 2);
        assert_eq!(empty.face_profile().e, vec![4, 0, 0]);
    }

    #[test]
    fn open_star_identity_examples() {
        assert!(cx(3, 2, &[&[1, 2], &[1, 3], &[2, 3]]).complement_is_open_star_union());
        assert!(SimplicialComplex::empty(3, 2).complement_is_open_star_union());
    }

    #[test]
    fn subcomplex_examples() {
        let full = cx(3, 2, &[&[1, 2, 3]]);
        let hollow = cx(3, 2, &[&[1, 2], &[1, 3], &[2, 3]]);
        let empty = SimplicialComplex::empty(3, 2);
        assert!(empty.is_subcomplex(&full).unwrap());
        assert!(hollow.is_subcomplex(&full).unwrap());
        assert!(!full.is_subcomplex(&hollow).unwrap());
        let a = cx(3, 1, &[&[1, 2]]);
        let b = cx(3, 1, &[&[1, 3], &[2]]);
        assert!(!a.is_subcomplex(&b).unwrap());
        assert!(!a.is_subcomplex_by_external_faces(&b).unwrap());
        assert!(a.is_subcomplex(&full).is_err());
    }

    #[test]
    fn maximal_faces_sorted() {
        let y = cx(5, 2, &[&[3, 4], &[1, 2, 3], &[5]]);
        let max: Vec<Vec<u32>> = y.maximal_faces().iter().map(|s| s.vertices().to_vec()).collect();
        assert_eq!(max, vec![vec![1, 2, 3], vec![3, 4], vec![5]]);
        assert_eq!(y.dim(), Some(2));
        assert_eq!(SimplicialComplex::empty(3, 1).dim(), None);
    }

    #[test]
    fn compaction_preserves_order() {
        let y = cx(5, 2, &[&[1, 3, 5], &[2, 4]]);
        let removed: BTreeSet<u32> = [2].into_iter().collect();
        let (c, labels) = y.compact_without(&removed, 2);
        assert_eq!(labels, vec![1, 3, 4, 5]);
        assert_eq!(c, cx(4, 2, &[&[1, 2, 4], &[3]]));
    }
}
