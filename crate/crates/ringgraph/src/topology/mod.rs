//! Homotopy tests, edge-width, distances, frames, disk-bounding curves and
//! flat separations.

pub mod curves;
pub mod frame;

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{EGraph, Edge, Vertex, PLUS};
use crate::surgery::{raw_cut, CutBoundary};

pub use curves::{enumerate_disk_curves, is_flat_separation, Curve, DiskCurve, FlatSeparation};
pub use frame::{build_frame, check_frame_optimal, optimize_frame, segments, Frame, OptimalityViolation, Segment};

/// Which surface a homotopy question refers to: the surface with the ring
/// holes (`Sigma`) or the capped surface (`SigmaHat`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ambient {
    Sigma,
    SigmaHat,
}

/// `g` with every ring face occupied by a marker hub adjacent to the ring
/// walk.  Ring designations are dropped; a disk side of a cut avoids the
/// holes of Sigma iff it contains no hub.
pub(crate) struct Marked {
    pub graph: EGraph,
    pub hubs: Vec<Vertex>,
}

pub(crate) fn marked(g: &EGraph) -> Marked {
    if g.rings().is_empty() {
        return Marked { graph: g.clone(), hubs: Vec::new() };
    }
    let faces = g.trace_faces();
    let nv = g.nv();
    let mut edges = g.edges().to_vec();
    let mut sign: Vec<i8> = (0..g.ne()).map(|e| g.sign(e)).collect();
    let mut rot: Vec<Vec<usize>> = (0..nv).map(|v| g.rotation(v).to_vec()).collect();
    let mut hubs = Vec::new();
    // insertion slot per ring vertex: the corner of the ring face
    let mut insertions: Vec<(Vertex, usize, usize)> = Vec::new(); // (vertex, corner slot, new half-edge)
    for (ri, r) in g.rings().iter().enumerate() {
        let hub = nv + ri;
        hubs.push(hub);
        let mut hub_rot = Vec::new();
        for &v in &r.walk {
            let e = edges.len();
            edges.push((hub, v));
            sign.push(PLUS);
            hub_rot.push(2 * e);
            if g.degree(v) == 0 {
                insertions.push((v, usize::MAX, 2 * e + 1));
            } else {
                let corner = faces.corner_face[v]
                    .iter()
                    .position(|&f| f == r.face)
                    .expect("ring vertex has a ring face corner");
                insertions.push((v, corner, 2 * e + 1));
            }
        }
        rot.push(hub_rot);
    }
    for (v, corner, he) in insertions {
        if corner == usize::MAX {
            rot[v] = vec![he];
        } else {
            rot[v].insert(corner + 1, he);
        }
    }
    let graph = EGraph::new(nv + g.rings().len(), edges, sign_fix(edges_len_check(edges.len()), rot), sign, Vec::new(), 0)
        .expect("marking preserves validity");
    Marked { graph, hubs }
}

// small helpers keeping the call above readable
fn edges_len_check(n: usize) -> usize {
    n
}
fn sign_fix(_n: usize, rot: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    rot
}

/// Does the cycle bound a disk in the chosen ambient surface?  Implemented
/// by cutting along the cycle and classifying the sides.  One-sided cycles
/// are never null-homotopic.  Homotopy refers to the traced surface; a
/// positive genus surplus is invisible here, so callers cut curves first.
pub fn is_null_homotopic(g: &EGraph, cycle: &[Vertex], ambient: Ambient) -> Result<bool> {
    crate::surgery::cycle_edges(g, cycle)?;
    match ambient {
        Ambient::SigmaHat => Ok(null_in_marked(g, &[], cycle)),
        Ambient::Sigma => {
            let m = marked(g);
            Ok(null_in_marked(&m.graph, &m.hubs, cycle))
        }
    }
}

/// Core disk test on an already-marked graph.
pub(crate) fn null_in_marked(mg: &EGraph, hubs: &[Vertex], cycle: &[Vertex]) -> bool {
    let cut = match raw_cut(mg, cycle) {
        Ok(c) => c,
        Err(_) => return false,
    };
    let (near, far) = match cut.boundary {
        CutBoundary::OneSided { .. } => return false,
        CutBoundary::TwoSided { near, far } => (near, far),
    };
    let (comp, _) = cut.graph.components();
    if comp[near[0]] == comp[far[0]] {
        return false;
    }
    let genera = cut.graph.component_genera();
    for side in [&near, &far] {
        let k = comp[side[0]];
        if genera[k] == 0 && hubs.iter().all(|&h| comp[h] != k) {
            return true;
        }
    }
    false
}

/// Crate-facing access to the marked graph (ring faces hubbed).
pub(crate) fn marked_public(g: &EGraph) -> (EGraph, Vec<Vertex>) {
    let m = marked(g);
    (m.graph, m.hubs)
}

/// BFS distance between two vertex sets; `None` when disconnected.
pub fn distance(g: &EGraph, s1: &BTreeSet<Vertex>, s2: &BTreeSet<Vertex>) -> Result<Option<usize>> {
    if s1.is_empty() || s2.is_empty() {
        return Err(Error::precondition("distance-empty-set", "both sets must be nonempty"));
    }
    if s1.intersection(s2).next().is_some() {
        return Ok(Some(0));
    }
    let mut dist = vec![usize::MAX; g.nv()];
    let mut q = std::collections::VecDeque::new();
    for &v in s1 {
        dist[v] = 0;
        q.push_back(v);
    }
    while let Some(v) = q.pop_front() {
        for u in g.neighbors(v).collect::<Vec<_>>() {
            if dist[u] == usize::MAX {
                dist[u] = dist[v] + 1;
                if s2.contains(&u) {
                    return Ok(Some(dist[u]));
                }
                q.push_back(u);
            }
        }
    }
    Ok(None)
}

/// Distance from every vertex to a set (usize::MAX when unreachable).
pub fn distances_from(g: &EGraph, set: &BTreeSet<Vertex>) -> Vec<usize> {
    let mut dist = vec![usize::MAX; g.nv()];
    let mut q = std::collections::VecDeque::new();
    for &v in set {
        dist[v] = 0;
        q.push_back(v);
    }
    while let Some(v) = q.pop_front() {
        for u in g.neighbors(v).collect::<Vec<_>>() {
            if dist[u] == usize::MAX {
                dist[u] = dist[v] + 1;
                q.push_back(u);
            }
        }
    }
    dist
}

/// Search configuration for shortest non-null-homotopic cycles.
struct CycleSearch<'a> {
    g: &'a EGraph,
    /// weight per edge (0 is allowed)
    weight: Vec<usize>,
    /// vertices the cycle may use
    allowed: Vec<bool>,
    /// test applied to candidate cycles
    is_target: Box<dyn Fn(&[Vertex]) -> bool + 'a>,
}

impl<'a> CycleSearch<'a> {
    /// Exact minimum target-cycle weight, or None when no target cycle
    /// exists.  Phase A: fundamental cycles of BFS trees from every root
    /// give an upper bound (and certify vacuity when none qualifies —
    /// a component all of whose fundamental cycles bound disks lies in a
    /// disk, so all its cycles bound disks).  Phase B: exhaustive bounded
    /// enumeration below the upper bound.
    fn run(&self) -> Option<(usize, Vec<Vertex>)> {
        let mut best: Option<(usize, Vec<Vertex>)> = None;
        // Phase A over every root.
        for root in 0..self.g.nv() {
            if !self.allowed[root] {
                continue;
            }
            let mut parent = vec![usize::MAX; self.g.nv()];
            let mut seen = vec![false; self.g.nv()];
            seen[root] = true;
            parent[root] = root;
            let mut order = vec![root];
            let mut qi = 0;
            while qi < order.len() {
                let v = order[qi];
                qi += 1;
                for u in self.g.neighbors(v).collect::<Vec<_>>() {
                    if self.allowed[u] && !seen[u] {
                        seen[u] = true;
                        parent[u] = v;
                        order.push(u);
                    }
                }
            }
            let depth = |mut v: Vertex| {
                let mut d = 0;
                while parent[v] != v {
                    v = parent[v];
                    d += 1;
                }
                d
            };
            for e in 0..self.g.ne() {
                let (u, v) = self.g.edge_ends(e);
                if !self.allowed[u] || !self.allowed[v] || !seen[u] || !seen[v] {
                    continue;
                }
                if parent[u] == v || parent[v] == u {
                    continue;
                }
                // fundamental cycle through e
                let (mut a, mut b) = (u, v);
                let (mut pa, mut pb) = (vec![a], vec![b]);
                let (mut da, mut db) = (depth(a), depth(b));
                while da > db {
                    a = parent[a];
                    pa.push(a);
                    da -= 1;
                }
                while db > da {
                    b = parent[b];
                    pb.push(b);
                    db -= 1;
                }
                while a != b {
                    a = parent[a];
                    pa.push(a);
                    b = parent[b];
                    pb.push(b);
                }
                pb.pop();
                pb.reverse();
                pa.extend(pb);
                let cyc = pa;
                if cyc.len() < 3 {
                    continue;
                }
                let w = self.cycle_weight(&cyc);
                if best.as_ref().map_or(true, |(bw, _)| w < *bw) && (self.is_target)(&cyc) {
                    best = Some((w, cyc));
                }
            }
        }
        let ub = match &best {
            None => return None,
            Some((w, _)) => *w,
        };
        // Phase B: every simple cycle of weight < ub, smallest root first.
        let mut best = best;
        let mut path: Vec<Vertex> = Vec::new();
        for root in 0..self.g.nv() {
            if !self.allowed[root] {
                continue;
            }
            path.clear();
            path.push(root);
            let mut on_path = vec![false; self.g.nv()];
            on_path[root] = true;
            self.dfs(root, root, 0, &mut path, &mut on_path, &mut best);
        }
        best
    }

    fn cycle_weight(&self, cyc: &[Vertex]) -> usize {
        (0..cyc.len())
            .map(|i| {
                let e = self.g.edge_between(cyc[i], cyc[(i + 1) % cyc.len()]).unwrap();
                self.weight[e]
            })
            .sum()
    }

    fn dfs(
        &self,
        root: Vertex,
        v: Vertex,
        w: usize,
        path: &mut Vec<Vertex>,
        on_path: &mut Vec<bool>,
        best: &mut Option<(usize, Vec<Vertex>)>,
    ) {
        let bound = best.as_ref().map_or(usize::MAX, |(bw, _)| *bw);
        if w >= bound {
            return;
        }
        for he in self.g.rotation(v).to_vec() {
            let e = he / 2;
            let u = self.g.he_other(he);
            if !self.allowed[u] || u < root {
                continue;
            }
            let nw = w + self.weight[e];
            if nw >= bound {
                continue;
            }
            if u == root {
                if path.len() >= 3 && (self.is_target)(path) {
                    *best = Some((nw, path.clone()));
                }
                continue;
            }
            if on_path[u] {
                continue;
            }
            path.push(u);
            on_path[u] = true;
            self.dfs(root, u, nw, path, on_path, best);
            path.pop();
            on_path[u] = false;
        }
    }
}

/// Shortest cycle that is non-null-homotopic in the capped surface,
/// weighted by non-ring edge count (edge-width condition 1).
pub fn shortest_noncontractible_capped(g: &EGraph) -> Option<(usize, Vec<Vertex>)> {
    if g.component_genera().iter().all(|&gc| gc == 0) {
        return None;
    }
    let ring_edges = g.ring_edges();
    let search = CycleSearch {
        g,
        weight: (0..g.ne()).map(|e| usize::from(!ring_edges.contains(&e))).collect(),
        allowed: vec![true; g.nv()],
        is_target: Box::new(move |cyc| !null_in_marked(g, &[], cyc)),
    };
    search.run()
}

/// Shortest cycle disjoint from all rings that is non-null-homotopic in
/// Sigma (edge-width condition 2), unit weights.
pub fn shortest_noncontractible_in_sigma(g: &EGraph) -> Option<(usize, Vec<Vertex>)> {
    let m = marked(g);
    let ring_vertices = g.ring_vertices();
    let mg = m.graph.clone();
    let hubs = m.hubs.clone();
    let mut allowed = vec![true; g.nv()];
    for &v in &ring_vertices {
        allowed[v] = false;
    }
    let search = CycleSearch {
        g,
        weight: vec![1; g.ne()],
        allowed,
        is_target: Box::new(move |cyc| !null_in_marked(&mg, &hubs, cyc)),
    };
    search.run()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EdgeWidth {
    /// min non-ring edges on a cycle non-null-homotopic in the capped
    /// surface; None = no such cycle
    pub capped: Option<usize>,
    /// min length of a ring-disjoint cycle non-null-homotopic in Sigma
    pub sigma: Option<usize>,
    /// min distance between distinct rings
    pub ring_dist: Option<usize>,
}

impl EdgeWidth {
    /// The edge-width itself; None means infinity (all conditions vacuous).
    pub fn value(&self) -> Option<usize> {
        [self.capped, self.sigma, self.ring_dist].into_iter().flatten().min()
    }
}

/// Edge-width of an embedded graph with rings: the largest k such that
/// capped-non-null cycles have >= k non-ring edges, Sigma-non-null
/// ring-disjoint cycles have length >= k, and distinct rings are >= k
/// apart.
pub fn edge_width(g: &EGraph) -> EdgeWidth {
    let capped = shortest_noncontractible_capped(g).map(|(w, _)| w);
    let sigma = shortest_noncontractible_in_sigma(g).map(|(w, _)| w);
    let mut ring_dist = None;
    for i in 0..g.rings().len() {
        for j in i + 1..g.rings().len() {
            let s1: BTreeSet<Vertex> = g.rings()[i].walk.iter().copied().collect();
            let s2: BTreeSet<Vertex> = g.rings()[j].walk.iter().copied().collect();
            if let Ok(Some(d)) = distance(g, &s1, &s2) {
                ring_dist = Some(ring_dist.map_or(d, |cur: usize| cur.min(d)));
            }
        }
    }
    EdgeWidth { capped, sigma, ring_dist }
}

/// Edge ids of a ring walk, for weight assignment.
pub(crate) fn ring_edge_set(g: &EGraph) -> BTreeSet<Edge> {
    g.ring_edges()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn all_cycles_contract_in_the_sphere() {
        let g = fixtures::k4_planar();
        assert!(is_null_homotopic(&g, &[0, 1, 2], Ambient::SigmaHat).unwrap());
        assert!(is_null_homotopic(&g, &[0, 1, 3], Ambient::Sigma).unwrap());
    }

    #[test]
    fn middle_ring_of_cylinder_is_essential_in_sigma_only() {
        let g = fixtures::cylinder(4, 10);
        let mid: Vec<usize> = (0..4).map(|i| 5 * 4 + i).collect();
        assert!(!is_null_homotopic(&g, &mid, Ambient::Sigma).unwrap());
        assert!(is_null_homotopic(&g, &mid, Ambient::SigmaHat).unwrap());
    }

    #[test]
    fn nonseparating_triangle_of_k7_is_essential() {
        let g = fixtures::k7_torus();
        // (0, 1, 3) is a face; (0, 1, 2) uses edges of three different faces
        assert!(!is_null_homotopic(&g, &[0, 1, 2], Ambient::SigmaHat).unwrap());
    }

    #[test]
    fn k7_edge_width_is_three() {
        let g = fixtures::k7_torus();
        let ew = edge_width(&g);
        assert_eq!(ew.value(), Some(3));
    }

    #[test]
    fn cylinder_edge_width_formula() {
        for n in 2..=10 {
            let g = fixtures::cylinder(4, n);
            let ew = edge_width(&g).value();
            assert_eq!(ew, Some(4.min(n - 1)), "C4 x P{n}");
        }
    }

    #[test]
    fn planar_no_rings_has_infinite_edge_width() {
        let g = fixtures::k4_planar();
        assert_eq!(edge_width(&g).value(), None);
    }

    #[test]
    fn distances() {
        let g = fixtures::cylinder(4, 10);
        let s1: BTreeSet<usize> = (0..4).collect();
        let s2: BTreeSet<usize> = (36..40).collect();
        assert_eq!(distance(&g, &s1, &s2).unwrap(), Some(9));
        let overlapping: BTreeSet<usize> = (2..6).collect();
        assert_eq!(distance(&g, &s1, &overlapping).unwrap(), Some(0));
    }
}
