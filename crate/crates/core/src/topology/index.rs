use std::collections::HashMap;

use crate::bits::BitRow;
use crate::complex::SimplicialComplex;

const ABSENT: u32 = u32::MAX;
const DENSE_EDGE_LIMIT: usize = 2048;

enum EdgeIds {
    Dense(Vec<u32>),
    Sparse(HashMap<(u32, u32), u32>),
}

/// The 2-skeleton of a complex on compact vertex ids `0..m`.
///
/// `apex[e]` holds the third vertices of the triangles on edge `e`, so the
/// link of a vertex `i` has the rows `apex(i, a)` for `a` in `N(i)`.
pub(crate) struct SkeletonIndex {
    pub labels: Vec<u32>,
    pos: Vec<u32>,
    pub adjacency: Vec<BitRow>,
    edges: EdgeIds,
    pub edge_list: Vec<(u32, u32)>,
    pub apex: Vec<BitRow>,
}

impl SkeletonIndex {
    pub fn new(y: &SimplicialComplex, with_triangles: bool) -> Self {
        let labels: Vec<u32> = y.vertices().collect();
        let m = labels.len();
        let mut pos = vec![ABSENT; y.n() as usize + 1];
        for (i, &v) in labels.iter().enumerate() {
            pos[v as usize] = i as u32;
        }
        let mut adjacency = vec![BitRow::new(m); m];
        let mut edge_list = Vec::new();
        let mut edges = if m <= DENSE_EDGE_LIMIT {
            EdgeIds::Dense(vec![ABSENT; m * m])
        } else {
            EdgeIds::Sparse(HashMap::new())
        };
        for (u, v) in y.edges() {
            let (a, b) = (pos[u as usize], pos[v as usize]);
            adjacency[a as usize].insert(b as usize);
            adjacency[b as usize].insert(a as usize);
            let id = edge_list.len() as u32;
            match &mut edges {
                EdgeIds::Dense(table) => {
                    table[a as usize * m + b as usize] = id;
                    table[b as usize * m + a as usize] = id;
                }
                EdgeIds::Sparse(map) => {
                    map.insert((a, b), id);
                }
            }
            edge_list.push((a, b));
        }
        let mut index = SkeletonIndex {
            labels,
            pos,
            adjacency,
            edges,
            edge_list,
            apex: Vec::new(),
        };
        if with_triangles {
            let mut apex = vec![BitRow::new(m); index.edge_list.len()];
            for t in y.faces_of_dim(2) {
                let [a, b, c] = [0, 1, 2].map(|k| index.pos[t.vertices()[k] as usize]);
                apex[index.edge_id(a, b).expect("boundary edge")].insert(c as usize);
                apex[index.edge_id(a, c).expect("boundary edge")].insert(b as usize);
                apex[index.edge_id(b, c).expect("boundary edge")].insert(a as usize);
            }
            index.apex = apex;
        }
        index
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn position(&self, label: u32) -> Option<usize> {
        match self.pos.get(label as usize) {
            Some(&p) if p != ABSENT => Some(p as usize),
            _ => None,
        }
    }

    pub fn edge_id(&self, a: u32, b: u32) -> Option<usize> {
        let id = match &self.edges {
            EdgeIds::Dense(table) => table[a as usize * self.len() + b as usize],
            EdgeIds::Sparse(map) => *map.get(&(a.min(b), a.max(b)))?,
        };
        (id != ABSENT).then_some(id as usize)
    }

    /// Triangles on the edge `{a, b}`; `None` when the edge is absent.
    pub fn apex_of(&self, a: u32, b: u32) -> Option<&BitRow> {
        self.edge_id(a, b).map(|e| &self.apex[e])
    }
}
