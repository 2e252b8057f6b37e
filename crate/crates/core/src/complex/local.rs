use std::collections::BTreeSet;

use super::{ComplexError, Simplex, SimplicialComplex};

/// A link re-indexed over the compacted ground set `{1..n-|σ|}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Link {
    pub complex: SimplicialComplex,
    /// `labels[i]` is the parent label of compacted vertex `i + 1`.
    pub labels: Vec<u32>,
}

impl Link {
    pub fn parent_label(&self, v: u32) -> u32 {
        self.labels[v as usize - 1]
    }
}

impl SimplicialComplex {
    fn require_face(&self, sigma: &Simplex) -> Result<(), ComplexError> {
        if self.contains(sigma) {
            Ok(())
        } else {
            Err(ComplexError::NotAFace(sigma.clone()))
        }
    }

    fn cofaces<'a>(&'a self, sigma: &'a Simplex) -> impl Iterator<Item = &'a Simplex> + 'a {
        (sigma.dim()..=self.r())
            .flat_map(move |d| self.faces_of_dim(d))
            .filter(move |rho| sigma.is_face_of(rho))
    }

    /// `St_Y(σ)`: faces `τ` such that `V(σ) ∪ V(τ)` spans a face.
    pub fn star(&self, sigma: &Simplex) -> Result<SimplicialComplex, ComplexError> {
        self.require_face(sigma)?;
        let mut out = SimplicialComplex::empty(self.n(), self.r());
        for rho in self.cofaces(sigma) {
            out.insert_closed(rho);
        }
        Ok(out)
    }

    /// The link of `σ` kept on the parent ground set (no relabeling).
    pub fn link_in_place(&self, sigma: &Simplex) -> Result<SimplicialComplex, ComplexError> {
        self.require_face(sigma)?;
        let mut out = SimplicialComplex::empty(self.n(), self.r());
        for rho in self.cofaces(sigma) {
            if let Some(tau) = rho.without(sigma) {
                out.insert_unchecked(tau);
            }
        }
        Ok(out)
    }

    /// `lk_Y(σ)` as an element of `Ω_{n-k-1}^{r-k-1}` for a `k`-face `σ`.
    ///
    /// For a top-dimensional `σ` (k = r) the link is empty and carries cap 0.
    pub fn link(&self, sigma: &Simplex) -> Result<Link, ComplexError> {
        let in_place = self.link_in_place(sigma)?;
        let removed: BTreeSet<u32> = sigma.vertices().iter().copied().collect();
        let cap = self.r().saturating_sub(sigma.dim() + 1);
        let (complex, labels) = in_place.compact_without(&removed, cap);
        Ok(Link { complex, labels })
    }

    /// Number of `(k+1)`-faces containing the `k`-face `σ`.
    pub fn degree(&self, sigma: &Simplex) -> Result<usize, ComplexError> {
        self.require_face(sigma)?;
        Ok(self
            .faces_of_dim(sigma.dim() + 1)
            .filter(|rho| sigma.is_face_of(rho))
            .count())
    }
}

/// The join `σ0 ∗ L` inside the ground set of `L`; for a vertex `σ0` this is the cone over `L`.
///
/// The result has cap `L.r() + dim σ0 + 1`.
pub fn join_with_simplex(
    sigma0: &Simplex,
    base: &SimplicialComplex,
) -> Result<SimplicialComplex, ComplexError> {
    if let Some(&bad) = sigma0.vertices().iter().find(|&&v| v > base.n()) {
        return Err(ComplexError::LabelOutOfRange { label: bad, n: base.n() });
    }
    if sigma0.vertices().iter().any(|&v| base.contains_vertex(v)) {
        return Err(ComplexError::OverlappingVertices(sigma0.clone()));
    }
    let mut out = SimplicialComplex::empty(base.n(), base.r() + sigma0.dim() + 1);
    out.insert_closed(sigma0);
    for rho in base.iter() {
        out.insert_closed(&rho.union(sigma0));
    }
    Ok(out)
}
