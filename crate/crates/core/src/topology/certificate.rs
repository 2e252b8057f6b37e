use rayon::prelude::*;
use serde::Serialize;

use super::index::SkeletonIndex;
use super::find_bad_tuple;
use crate::bits::{ones_in, BitRow};
use crate::complex::SimplicialComplex;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Certified,
    Unknown,
}

/// The condition that stopped certification, in the order they are checked.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Condition {
    Connected,
    EdgeDegree,
    LinkIntersections,
    CommonNeighbour,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub verdict: Verdict,
    pub failed_condition: Option<Condition>,
    pub witness: Option<Vec<u32>>,
}

impl Certificate {
    fn certified() -> Self {
        Certificate {
            verdict: Verdict::Certified,
            failed_condition: None,
            witness: None,
        }
    }

    fn failed(condition: Condition, witness: Option<Vec<u32>>) -> Self {
        Certificate {
            verdict: Verdict::Unknown,
            failed_condition: Some(condition),
            witness,
        }
    }

    pub fn is_certified(&self) -> bool {
        self.verdict == Verdict::Certified
    }
}

#[derive(Default)]
struct Scratch {
    common: Vec<u64>,
    seen: Vec<u64>,
    stack: Vec<usize>,
}

/// Whether `lk(i) ∩ lk(j)` restricted to `N(i) ∩ N(j)` is nonempty and connected.
fn link_pair_ok(index: &SkeletonIndex, i: usize, j: usize, scratch: &mut Scratch) -> bool {
    let (ni, nj) = (index.adjacency[i].words(), index.adjacency[j].words());
    let Scratch { common, seen, stack } = scratch;
    common.clear();
    common.extend(ni.iter().zip(nj).map(|(a, b)| a & b));
    let total: u32 = common.iter().map(|w| w.count_ones()).sum();
    let Some(start) = ones_in(common).next() else {
        return false;
    };
    seen.clear();
    seen.resize(common.len(), 0);
    seen[start >> 6] |= 1 << (start & 63);
    stack.clear();
    stack.push(start);
    let mut reached = 1;
    while let Some(a) = stack.pop() {
        let ti = index.apex_of(i as u32, a as u32).expect("a is adjacent to i").words();
        let tj = index.apex_of(j as u32, a as u32).expect("a is adjacent to j").words();
        for w in 0..common.len() {
            let fresh = ti[w] & tj[w] & common[w] & !seen[w];
            if fresh != 0 {
                seen[w] |= fresh;
                reached += fresh.count_ones();
                stack.extend(ones_in(&[fresh]).map(|b| b + (w << 6)));
            }
        }
        if reached == total {
            return true;
        }
    }
    false
}

fn find_bad_link_pair(index: &SkeletonIndex) -> Option<(usize, usize)> {
    let m = index.len();
    (0..m).into_par_iter().find_map_first(|i| {
        let mut scratch = Scratch::default();
        (i + 1..m)
            .find(|&j| !link_pair_ok(index, i, j, &mut scratch))
            .map(|j| (i, j))
    })
}

/// Every pair of vertices has a nonempty, connected intersection of links.
pub fn pairwise_link_intersections_connected(y: &SimplicialComplex) -> bool {
    let index = SkeletonIndex::new(y, true);
    find_bad_link_pair(&index).is_none()
}

fn separated_pair(index: &SkeletonIndex) -> Option<Vec<u32>> {
    let m = index.len();
    let mut seen = BitRow::new(m);
    seen.insert(0);
    let mut stack = vec![0];
    while let Some(a) = stack.pop() {
        for b in index.adjacency[a].ones() {
            if !seen.contains(b) {
                seen.insert(b);
                stack.push(b);
            }
        }
    }
    (0..m)
        .find(|&v| !seen.contains(v))
        .map(|v| vec![index.labels[0], index.labels[v]])
}

/// Sufficient test for simple connectivity: `Y` connected, every edge on a
/// triangle, every two vertices with connected nonempty common link, and
/// every three vertices with a common neighbour.
pub fn certify_simply_connected(y: &SimplicialComplex) -> Certificate {
    let index = SkeletonIndex::new(y, true);
    let label = |p: usize| index.labels[p];
    if index.len() == 0 {
        return Certificate::failed(Condition::Connected, None);
    }
    if let Some(pair) = separated_pair(&index) {
        return Certificate::failed(Condition::Connected, Some(pair));
    }
    if let Some(e) = index.apex.iter().position(BitRow::is_clear) {
        let (a, b) = index.edge_list[e];
        return Certificate::failed(Condition::EdgeDegree, Some(vec![label(a as usize), label(b as usize)]));
    }
    if let Some((i, j)) = find_bad_link_pair(&index) {
        return Certificate::failed(Condition::LinkIntersections, Some(vec![label(i), label(j)]));
    }
    if let Some(t) = find_bad_tuple(&index, 3) {
        return Certificate::failed(Condition::CommonNeighbour, Some(t.into_iter().map(label).collect()));
    }
    Certificate::certified()
}

/// Outcome of checking the vertex-star cover directly.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NerveAudit {
    pub stars_pairwise_connected: bool,
    pub nerve_two_skeleton_complete: bool,
    pub witness: Option<Vec<u32>>,
}

impl NerveAudit {
    pub fn holds(&self) -> bool {
        self.stars_pairwise_connected && self.nerve_two_skeleton_complete
    }
}

/// Closed stars on the 2-skeleton: `rows[i][x]` is the set of `y` with
/// `{i, x, y}` spanning a face of `Y` (for `x == i`, the neighbours of `i`).
struct StarCover {
    labels: Vec<u32>,
    closed: Vec<BitRow>,
    // star rows of vertex i, aligned with the sorted closed neighbourhood `members[i]`
    members: Vec<Vec<usize>>,
    rows: Vec<Vec<BitRow>>,
}

impl StarCover {
    fn new(y: &SimplicialComplex) -> Self {
        let labels: Vec<u32> = y.vertices().collect();
        let m = labels.len();
        let mut at = vec![usize::MAX; y.n() as usize + 1];
        for (i, &v) in labels.iter().enumerate() {
            at[v as usize] = i;
        }
        let edges: Vec<(usize, usize)> = y.edges().map(|(u, v)| (at[u as usize], at[v as usize])).collect();
        let mut closed = vec![BitRow::new(m); m];
        for i in 0..m {
            closed[i].insert(i);
        }
        for &(a, b) in &edges {
            closed[a].insert(b);
            closed[b].insert(a);
        }
        let members: Vec<Vec<usize>> = closed.iter().map(|c| c.ones().collect()).collect();
        let mut rows: Vec<Vec<BitRow>> = members.iter().map(|list| vec![BitRow::new(m); list.len()]).collect();
        let mut mark = |i: usize, x: usize, z: usize| {
            let slot = members[i].binary_search(&x).expect("x is in the closed neighbourhood");
            rows[i][slot].insert(z);
        };
        for &(a, b) in &edges {
            for (i, o) in [(a, b), (b, a)] {
                mark(i, i, o);
                mark(i, o, i);
            }
        }
        for t in y.faces_of_dim(2) {
            let [a, b, c] = [0, 1, 2].map(|k| at[t.vertices()[k] as usize]);
            for (i, x, z) in [(a, b, c), (b, a, c), (c, a, b)] {
                mark(i, x, z);
                mark(i, z, x);
            }
        }
        StarCover {
            labels,
            closed,
            members,
            rows,
        }
    }

    fn row(&self, i: usize, x: usize) -> Option<&BitRow> {
        self.members[i].binary_search(&x).ok().map(|slot| &self.rows[i][slot])
    }

    /// Connected components of `St(i) ∩ St(j)` reach its whole vertex set.
    fn pair_connected(&self, i: usize, j: usize) -> Option<bool> {
        let mut verts = self.closed[i].clone();
        verts.and_assign(&self.closed[j]);
        let start = verts.ones().next()?;
        let size = verts.count();
        let mut seen = BitRow::new(self.labels.len());
        seen.insert(start);
        let mut reached = 1;
        let mut queue = std::collections::VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            if reached == size {
                break;
            }
            let (Some(ri), Some(rj)) = (self.row(i, x), self.row(j, x)) else {
                continue;
            };
            let (ri, rj, vs) = (ri.words(), rj.words(), verts.words());
            let seen = seen.words_mut();
            for w in 0..vs.len() {
                let fresh = ri[w] & rj[w] & vs[w] & !seen[w];
                seen[w] |= fresh;
                reached += fresh.count_ones() as usize;
                queue.extend(ones_in(&[fresh]).map(|z| z + (w << 6)));
            }
        }
        Some(reached == size)
    }
}

/// Checks the nerve hypotheses on the closed vertex stars of `Y`: every two
/// stars meet in a nonempty connected set and every three stars meet.
pub fn audit_nerve(y: &SimplicialComplex) -> NerveAudit {
    let cover = StarCover::new(y);
    let m = cover.labels.len();
    let label = |p: usize| cover.labels[p];
    let mut audit = NerveAudit {
        stars_pairwise_connected: true,
        nerve_two_skeleton_complete: true,
        witness: None,
    };
    'pairs: for i in 0..m {
        for j in i + 1..m {
            match cover.pair_connected(i, j) {
                Some(true) => {}
                outcome => {
                    audit.stars_pairwise_connected = false;
                    audit.nerve_two_skeleton_complete = outcome.is_some();
                    audit.witness = Some(vec![label(i), label(j)]);
                    break 'pairs;
                }
            }
        }
    }
    if !audit.nerve_two_skeleton_complete {
        return audit;
    }
    for i in 0..m {
        for j in i + 1..m {
            let mut both = cover.closed[i].clone();
            both.and_assign(&cover.closed[j]);
            for k in j + 1..m {
                let third = cover.closed[k].words();
                if both.words().iter().zip(third).all(|(a, b)| a & b == 0) {
                    audit.nerve_two_skeleton_complete = false;
                    audit.witness.get_or_insert_with(|| vec![label(i), label(j), label(k)]);
                    return audit;
                }
            }
        }
    }
    audit
}
