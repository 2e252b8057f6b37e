//! Connectivity, isolation, degree and common-neighbour checks, plus the
//! sufficient certificate for simple connectivity.

mod certificate;
mod index;
mod regime;

use petgraph::unionfind::UnionFind;
use thiserror::Error;

use crate::bits::BitRow;
use crate::complex::{ComplexError, SimplicialComplex};

pub use certificate::{
    audit_nerve, certify_simply_connected, pairwise_link_intersections_connected, Certificate,
    Condition, NerveAudit, Verdict,
};
pub(crate) use index::SkeletonIndex;
pub use regime::{regime_classify, Regime, RegimePoint};

#[derive(Debug, Error)]
pub enum TopologyError {
    #[error("the given complex is not a subcomplex")]
    NotSubcomplex,
    #[error("vertex {0} is not in the complex")]
    VertexAbsent(u32),
    #[error("vertex {0} appears twice in the tuple")]
    DuplicateVertex(u32),
    #[error("tuples must have at least one vertex")]
    EmptyTuple,
    #[error("exponent {index} is {value}, expected a finite value >= 0")]
    InvalidExponent { index: usize, value: f64 },
    #[error("a regime point needs exponents for dimensions 0, 1 and 2, got {0}")]
    MissingExponents(usize),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

/// Vertex sets of the connected components, each sorted, ordered by least vertex.
pub fn connected_components(y: &SimplicialComplex) -> Vec<Vec<u32>> {
    let index = SkeletonIndex::new(y, false);
    let mut uf = UnionFind::<u32>::new(index.len());
    for &(a, b) in &index.edge_list {
        uf.union(a, b);
    }
    let mut groups: Vec<Vec<u32>> = Vec::new();
    let mut slot = vec![usize::MAX; index.len()];
    for (i, &label) in index.labels.iter().enumerate() {
        let root = uf.find(i as u32) as usize;
        if slot[root] == usize::MAX {
            slot[root] = groups.len();
            groups.push(Vec::new());
        }
        groups[slot[root]].push(label);
    }
    groups
}

/// Exactly one component; the empty complex is not connected.
pub fn is_connected(y: &SimplicialComplex) -> bool {
    connected_components(y).len() == 1
}

pub fn isolated_vertices(y: &SimplicialComplex) -> Vec<u32> {
    let index = SkeletonIndex::new(y, false);
    index
        .labels
        .iter()
        .zip(&index.adjacency)
        .filter(|(_, row)| row.is_clear())
        .map(|(&v, _)| v)
        .collect()
}

/// Whether no edge of `y` joins a vertex of `s` to a vertex outside `s`.
pub fn is_isolated_subcomplex(y: &SimplicialComplex, s: &SimplicialComplex) -> Result<bool, TopologyError> {
    if !s.is_subcomplex(y)? {
        return Err(TopologyError::NotSubcomplex);
    }
    Ok(y.edges().all(|(a, b)| s.contains_vertex(a) == s.contains_vertex(b)))
}

fn edge_degrees(y: &SimplicialComplex) -> Vec<usize> {
    let index = SkeletonIndex::new(y, true);
    index.apex.iter().map(BitRow::count).collect()
}

/// Least number of triangles on an edge; `None` without edges.
pub fn min_edge_degree(y: &SimplicialComplex) -> Option<usize> {
    edge_degrees(y).into_iter().min()
}

pub fn zero_degree_edge_count(y: &SimplicialComplex) -> usize {
    edge_degrees(y).into_iter().filter(|&d| d == 0).count()
}

fn tuple_positions(index: &SkeletonIndex, vertices: &[u32]) -> Result<Vec<usize>, TopologyError> {
    if vertices.is_empty() {
        return Err(TopologyError::EmptyTuple);
    }
    let mut seen = Vec::with_capacity(vertices.len());
    for &v in vertices {
        let p = index.position(v).ok_or(TopologyError::VertexAbsent(v))?;
        if seen.contains(&p) {
            return Err(TopologyError::DuplicateVertex(v));
        }
        seen.push(p);
    }
    Ok(seen)
}

/// Some vertex outside the tuple is adjacent to every tuple member.
pub fn common_neighbour_exists(y: &SimplicialComplex, vertices: &[u32]) -> Result<bool, TopologyError> {
    let index = SkeletonIndex::new(y, false);
    let tuple = tuple_positions(&index, vertices)?;
    let rows: Vec<&BitRow> = tuple.iter().map(|&p| &index.adjacency[p]).collect();
    // no loops, so tuple members never appear in the intersection of their own rows
    let found = BitRow::common_ones(&rows, 0).next().is_some();
    Ok(found)
}

/// First `k`-subset of `V(Y)` (in lexicographic order) without a common neighbour.
pub fn tuple_without_common_neighbour(y: &SimplicialComplex, k: usize) -> Result<Option<Vec<u32>>, TopologyError> {
    if k == 0 {
        return Err(TopologyError::EmptyTuple);
    }
    let index = SkeletonIndex::new(y, false);
    Ok(find_bad_tuple(&index, k).map(|t| t.iter().map(|&p| index.labels[p]).collect()))
}

pub fn all_k_tuples_have_common_neighbour(y: &SimplicialComplex, k: usize) -> Result<bool, TopologyError> {
    Ok(tuple_without_common_neighbour(y, k)?.is_none())
}

pub(crate) fn find_bad_tuple(index: &SkeletonIndex, k: usize) -> Option<Vec<usize>> {
    let m = index.len();
    if k > m {
        return None;
    }
    let mut full = BitRow::new(m);
    for i in 0..m {
        full.insert(i);
    }
    let mut tuple = Vec::with_capacity(k);
    search_tuples(index, k, 0, &full, &mut tuple).then_some(tuple)
}

fn search_tuples(index: &SkeletonIndex, k: usize, start: usize, common: &BitRow, tuple: &mut Vec<usize>) -> bool {
    let remaining = k - tuple.len();
    if remaining == 1 {
        let c = common.words();
        let last = (start..index.len()).find(|&v| {
            let row = index.adjacency[v].words();
            c.iter().zip(row).all(|(a, b)| a & b == 0)
        });
        if let Some(v) = last {
            tuple.push(v);
            return true;
        }
        return false;
    }
    let mut next = common.clone();
    for v in start..=index.len() - remaining {
        next.clone_from(common);
        next.and_assign(&index.adjacency[v]);
        tuple.push(v);
        if search_tuples(index, k, v + 1, &next, tuple) {
            return true;
        }
        tuple.pop();
    }
    false
}

pub fn dimension(y: &SimplicialComplex) -> Option<usize> {
    y.dim()
}
