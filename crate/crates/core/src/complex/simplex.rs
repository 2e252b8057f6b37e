use std::fmt;

use smallvec::SmallVec;

use super::ComplexError;

/// Inline capacity for vertex lists; faces up to dimension 3 never allocate.
pub(crate) type VertexList = SmallVec<[u32; 4]>;

/// A nonempty simplex given by its strictly increasing, 1-based vertex labels.
///
/// Ordering is lexicographic on the label list, which is the canonical order
/// used when listing faces of a fixed dimension.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Simplex(VertexList);

impl Simplex {
    /// Builds a simplex from labels that must already be strictly increasing and positive.
    pub fn new<I: IntoIterator<Item = u32>>(vertices: I) -> Result<Self, ComplexError> {
        let list: VertexList = vertices.into_iter().collect();
        if list.is_empty() {
            return Err(ComplexError::EmptySimplex);
        }
        if list[0] == 0 {
            return Err(ComplexError::LabelOutOfRange { label: 0, n: 0 });
        }
        if list.windows(2).any(|w| w[0] >= w[1]) {
            return Err(ComplexError::NotStrictlyIncreasing(list.to_vec()));
        }
        Ok(Simplex(list))
    }

    /// Sorts the labels first; duplicates are still an error.
    pub fn from_unsorted<I: IntoIterator<Item = u32>>(vertices: I) -> Result<Self, ComplexError> {
        let mut list: VertexList = vertices.into_iter().collect();
        list.sort_unstable();
        Simplex::new(list)
    }

    pub fn vertex(v: u32) -> Self {
        assert!(v >= 1, "vertex labels are 1-based");
        Simplex(smallvec::smallvec![v])
    }

    /// Internal constructor; caller guarantees the invariant.
    pub(crate) fn from_sorted_unchecked(list: VertexList) -> Self {
        debug_assert!(!list.is_empty() && list.windows(2).all(|w| w[0] < w[1]));
        Simplex(list)
    }

    pub fn vertices(&self) -> &[u32] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Always false: the empty simplex is not representable.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn max_vertex(&self) -> u32 {
        self.0[self.0.len() - 1]
    }

    pub fn contains_vertex(&self, v: u32) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn is_face_of(&self, other: &Simplex) -> bool {
        let mut it = other.0.iter();
        self.0.iter().all(|v| it.any(|w| w == v))
    }

    pub fn is_disjoint(&self, other: &Simplex) -> bool {
        self.0.iter().all(|v| !other.contains_vertex(*v))
    }

    /// The codimension-one faces; empty for a vertex (its boundary is the empty set).
    pub fn facets(&self) -> impl Iterator<Item = Simplex> + '_ {
        let len = self.0.len();
        (0..if len > 1 { len } else { 0 }).map(move |skip| {
            Simplex(
                self.0
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != skip)
                    .map(|(_, v)| *v)
                    .collect(),
            )
        })
    }

    /// All nonempty faces, including the simplex itself.
    pub fn faces(&self) -> impl Iterator<Item = Simplex> + '_ {
        let len = self.0.len();
        (1u64..(1u64 << len)).map(move |mask| {
            Simplex(
                self.0
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| mask >> i & 1 == 1)
                    .map(|(_, v)| *v)
                    .collect(),
            )
        })
    }

    /// Vertex-set union.
    pub fn union(&self, other: &Simplex) -> Simplex {
        let mut out = VertexList::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() || j < other.0.len() {
            let a = self.0.get(i).copied().unwrap_or(u32::MAX);
            let b = other.0.get(j).copied().unwrap_or(u32::MAX);
            match a.cmp(&b) {
                std::cmp::Ordering::Less => {
                    out.push(a);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push(a);
                    i += 1;
                    j += 1;
                }
            }
        }
        Simplex(out)
    }

    pub(crate) fn with_vertex(&self, v: u32) -> Simplex {
        let mut out = self.0.clone();
        match out.binary_search(&v) {
            Ok(_) => {}
            Err(pos) => out.insert(pos, v),
        }
        Simplex(out)
    }

    /// Removes the given vertices; `None` when nothing is left.
    pub(crate) fn without(&self, removed: &Simplex) -> Option<Simplex> {
        let rest: VertexList = self
            .0
            .iter()
            .copied()
            .filter(|v| !removed.contains_vertex(*v))
            .collect();
        if rest.is_empty() {
            None
        } else {
            Some(Simplex(rest))
        }
    }
}

impl fmt::Debug for Simplex {
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

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}
