//! Embedded graphs with rings.
//!
//! An [`EGraph`] is a simple graph together with a rotation system (cyclic
//! order of half-edges at every vertex), an edge signature (+1/-1 per edge,
//! for non-orientable surfaces), a set of distinguished ring faces and a
//! nonnegative `genus_surplus` accounting for ambient surfaces in which the
//! embedding is not 2-cell.
//!
//! Half-edge `2*e` is the end of edge `e` at `edges[e].0`, half-edge `2*e+1`
//! the end at `edges[e].1`.  An *arc* is a directed edge: arc `2*e` runs
//! `edges[e].0 -> edges[e].1`, arc `2*e+1` the other way.
//!
//! Faces are traced with the standard embedding-scheme rule: a traversal
//! state is an arc plus a local orientation; crossing an edge of sign -1
//! flips the orientation, and the next departure is the rotation successor
//! (orientation +1) or predecessor (orientation -1) of the arrival
//! half-edge.  Orbits come in mirror pairs; each pair is one face.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};

pub type Vertex = usize;
pub type Edge = usize;
/// Half-edge id: `2*e` at `edges[e].0`, `2*e+1` at `edges[e].1`.
pub type HalfEdge = usize;
/// Directed edge id, same encoding as half-edges (`2*e + dir`).
pub type Arc = usize;
pub type Face = usize;

pub const PLUS: i8 = 1;
pub const MINUS: i8 = -1;

/// A distinguished ring: its face in the traced embedding plus the vertex
/// walk of that face (a cycle, the two ends of a single edge, or one
/// isolated vertex).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingSpec {
    pub face: Face,
    pub walk: Vec<Vertex>,
}

impl RingSpec {
    pub fn len(&self) -> usize {
        self.walk.len()
    }

    pub fn is_cycle(&self) -> bool {
        self.walk.len() >= 3
    }
}

/// One face of the traced embedding: the arcs of one boundary traversal.
/// Isolated vertices get a zero-length face recorded in `isolated`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceWalk {
    pub arcs: Vec<Arc>,
    pub isolated: Option<Vertex>,
}

impl FaceWalk {
    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }
}

/// Face structure of an embedding (possibly of a subgraph view).
#[derive(Debug, Clone)]
pub struct Faces {
    pub walks: Vec<FaceWalk>,
    /// For every vertex and every rotation slot `i` (of the traced view),
    /// the face owning the corner between slot `i` and slot `i+1`.
    pub corner_face: Vec<Vec<Face>>,
    /// Per face, its corners `(vertex, slot)` in walk order; empty for
    /// vertex faces.
    pub face_corners: Vec<Vec<(Vertex, usize)>>,
    /// Rotation of the traced view (equals the graph rotation when tracing
    /// the full graph, a filtered rotation when tracing a subgraph).
    pub view_rot: Vec<Vec<HalfEdge>>,
}

impl Faces {
    pub fn count(&self) -> usize {
        self.walks.len()
    }

    /// Vertex sequence of a face walk (tails of its arcs).
    pub fn vertex_walk(&self, g: &EGraph, f: Face) -> Vec<Vertex> {
        let w = &self.walks[f];
        if let Some(v) = w.isolated {
            return vec![v];
        }
        w.arcs.iter().map(|&a| g.arc_tail(a)).collect()
    }

    /// Faces incident with a vertex, deduplicated, ascending.
    pub fn faces_at(&self, v: Vertex) -> Vec<Face> {
        let mut fs: Vec<Face> = self.corner_face[v].clone();
        fs.sort_unstable();
        fs.dedup();
        fs
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SurfaceSummary {
    /// Number of connected components (graph components; in a 2-cell
    /// embedding these are exactly the surface components).
    pub components: usize,
    /// Euler genus of the capped surface, including `genus_surplus`.
    pub euler_genus: usize,
    pub ring_count: usize,
    pub ring_vertex_total: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EGraph {
    nv: usize,
    edges: Vec<(Vertex, Vertex)>,
    rot: Vec<Vec<HalfEdge>>,
    sign: Vec<i8>,
    rings: Vec<RingSpec>,
    surplus: usize,
}

impl EGraph {
    /// Build and validate an embedded graph with rings.  Ring walks are
    /// resolved against the traced faces; failures surface as validation
    /// errors with stable names.
    pub fn new(
        nv: usize,
        edges: Vec<(Vertex, Vertex)>,
        rot: Vec<Vec<HalfEdge>>,
        sign: Vec<i8>,
        ring_walks: Vec<Vec<Vertex>>,
        surplus: usize,
    ) -> Result<EGraph> {
        let mut g = EGraph { nv, edges, rot, sign, rings: Vec::new(), surplus };
        g.validate_structure()?;
        let faces = g.trace_faces();
        let mut rings = Vec::new();
        for walk in ring_walks {
            rings.push(g.resolve_ring(&faces, walk)?);
        }
        g.rings = rings;
        g.validate_rings()?;
        Ok(g)
    }

    /// Same, but the rotation is given as neighbor lists (only valid for
    /// simple graphs, which is all we have).  Edges are created in first
    /// encounter order unless `edges` is given.
    pub fn from_neighbor_rotations(
        nv: usize,
        nbr_rot: Vec<Vec<Vertex>>,
        sign_of: impl Fn(Vertex, Vertex) -> i8,
        ring_walks: Vec<Vec<Vertex>>,
        surplus: usize,
    ) -> Result<EGraph> {
        let mut index: BTreeMap<(Vertex, Vertex), Edge> = BTreeMap::new();
        let mut edges: Vec<(Vertex, Vertex)> = Vec::new();
        for (u, nbrs) in nbr_rot.iter().enumerate() {
            for &v in nbrs {
                let key = (u.min(v), u.max(v));
                index.entry(key).or_insert_with(|| {
                    edges.push(key);
                    edges.len() - 1
                });
            }
        }
        let mut rot = vec![Vec::new(); nv];
        for (u, nbrs) in nbr_rot.iter().enumerate() {
            for &v in nbrs {
                let e = index[&(u.min(v), u.max(v))];
                let he = if edges[e].0 == u { 2 * e } else { 2 * e + 1 };
                rot[u].push(he);
            }
        }
        let sign = edges.iter().map(|&(u, v)| sign_of(u, v)).collect();
        EGraph::new(nv, edges, rot, sign, ring_walks, surplus)
    }

    pub fn nv(&self) -> usize {
        self.nv
    }

    pub fn ne(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    pub fn edge_ends(&self, e: Edge) -> (Vertex, Vertex) {
        self.edges[e]
    }

    pub fn rotation(&self, v: Vertex) -> &[HalfEdge] {
        &self.rot[v]
    }

    pub fn sign(&self, e: Edge) -> i8 {
        self.sign[e]
    }

    pub fn rings(&self) -> &[RingSpec] {
        &self.rings
    }

    pub fn genus_surplus(&self) -> usize {
        self.surplus
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.rot[v].len()
    }

    pub fn he_vertex(&self, he: HalfEdge) -> Vertex {
        let (u, v) = self.edges[he / 2];
        if he % 2 == 0 {
            u
        } else {
            v
        }
    }

    pub fn he_other(&self, he: HalfEdge) -> Vertex {
        let (u, v) = self.edges[he / 2];
        if he % 2 == 0 {
            v
        } else {
            u
        }
    }

    pub fn arc_tail(&self, a: Arc) -> Vertex {
        self.he_vertex(a)
    }

    pub fn arc_head(&self, a: Arc) -> Vertex {
        self.he_other(a)
    }

    pub fn arc_rev(&self, a: Arc) -> Arc {
        a ^ 1
    }

    pub fn neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.rot[v].iter().map(move |&he| self.he_other(he))
    }

    pub fn edge_between(&self, u: Vertex, v: Vertex) -> Option<Edge> {
        self.rot[u]
            .iter()
            .map(|&he| he / 2)
            .find(|&e| self.edges[e] == (u.min(v), u.max(v)) || self.edges[e] == (v, u) || self.edges[e] == (u, v))
            .filter(|&e| {
                let (a, b) = self.edges[e];
                (a == u && b == v) || (a == v && b == u)
            })
    }

    pub fn ring_vertices(&self) -> BTreeSet<Vertex> {
        self.rings.iter().flat_map(|r| r.walk.iter().copied()).collect()
    }

    pub fn ring_edges(&self) -> BTreeSet<Edge> {
        let mut out = BTreeSet::new();
        for r in &self.rings {
            match r.walk.len() {
                0 | 1 => {}
                2 => {
                    if let Some(e) = self.edge_between(r.walk[0], r.walk[1]) {
                        out.insert(e);
                    }
                }
                m => {
                    for i in 0..m {
                        if let Some(e) = self.edge_between(r.walk[i], r.walk[(i + 1) % m]) {
                            out.insert(e);
                        }
                    }
                }
            }
        }
        out
    }

    fn validate_structure(&self) -> Result<()> {
        if self.sign.len() != self.edges.len() {
            return Err(Error::validation("sign-arity", "one sign per edge required"));
        }
        if self.rot.len() != self.nv {
            return Err(Error::validation("rotation-arity", "one rotation per vertex required"));
        }
        let mut seen_edges = BTreeSet::new();
        for (e, &(u, v)) in self.edges.iter().enumerate() {
            if u >= self.nv || v >= self.nv {
                return Err(Error::validation("edge-endpoint", format!("edge {e} endpoint out of range")));
            }
            if u == v {
                return Err(Error::validation("no-loops", format!("edge {e} is a loop")));
            }
            if !seen_edges.insert((u.min(v), u.max(v))) {
                return Err(Error::validation("no-multiedges", format!("edge {e} duplicates an earlier edge")));
            }
        }
        for s in &self.sign {
            if *s != PLUS && *s != MINUS {
                return Err(Error::validation("sign-value", "signs must be +1 or -1"));
            }
        }
        let mut placed = vec![false; 2 * self.edges.len()];
        for (v, r) in self.rot.iter().enumerate() {
            for &he in r {
                if he >= 2 * self.edges.len() {
                    return Err(Error::validation("halfedge-range", format!("half-edge {he} out of range")));
                }
                if self.he_vertex(he) != v {
                    return Err(Error::validation(
                        "halfedge-home",
                        format!("half-edge {he} listed at vertex {v} but belongs to {}", self.he_vertex(he)),
                    ));
                }
                if placed[he] {
                    return Err(Error::validation("halfedge-once", format!("half-edge {he} appears twice")));
                }
                placed[he] = true;
            }
        }
        if let Some(he) = placed.iter().position(|&p| !p) {
            return Err(Error::validation("halfedge-once", format!("half-edge {he} missing from rotations")));
        }
        Ok(())
    }

    fn validate_rings(&self) -> Result<()> {
        let mut seen_faces = BTreeSet::new();
        let mut seen_vertices: BTreeSet<Vertex> = BTreeSet::new();
        for r in &self.rings {
            if !seen_faces.insert(r.face) {
                return Err(Error::validation("ring-face-reused", "two rings designate the same face"));
            }
            for &v in &r.walk {
                if !seen_vertices.insert(v) {
                    return Err(Error::validation("rings-not-disjoint", format!("vertex {v} on two rings")));
                }
            }
        }
        Ok(())
    }

    /// Match a ring walk against the traced faces.  The walk must be the
    /// full boundary of some face: a cycle visiting each ring vertex once,
    /// the two ends of a single edge, or one isolated vertex.
    fn resolve_ring(&self, faces: &Faces, walk: Vec<Vertex>) -> Result<RingSpec> {
        for &v in &walk {
            if v >= self.nv {
                return Err(Error::validation("ring-walk-shape", format!("ring vertex {v} out of range")));
            }
        }
        match walk.len() {
            0 => Err(Error::validation("ring-walk-shape", "empty ring walk")),
            1 => {
                let v = walk[0];
                if self.degree(v) != 0 {
                    return Err(Error::validation(
                        "ring-not-a-face",
                        format!("one-vertex ring at {v} requires an isolated vertex"),
                    ));
                }
                let f = faces
                    .walks
                    .iter()
                    .position(|w| w.isolated == Some(v))
                    .ok_or_else(|| Error::validation("ring-not-a-face", format!("no vertex face at {v}")))?;
                Ok(RingSpec { face: f, walk })
            }
            2 => {
                let (u, v) = (walk[0], walk[1]);
                let e = self
                    .edge_between(u, v)
                    .ok_or_else(|| Error::validation("ring-not-a-face", format!("no edge {u}-{v} for ring")))?;
                // the two-sided face u,e,v,e exists iff both ends have degree 1
                let f = faces
                    .walks
                    .iter()
                    .position(|w| w.arcs.len() == 2 && w.arcs[0] / 2 == e && w.arcs[1] / 2 == e)
                    .ok_or_else(|| {
                        Error::validation("ring-not-a-face", format!("edge {u}-{v} does not bound a two-sided face"))
                    })?;
                Ok(RingSpec { face: f, walk })
            }
            m => {
                let distinct: BTreeSet<Vertex> = walk.iter().copied().collect();
                if distinct.len() != m {
                    return Err(Error::validation("ring-walk-shape", "ring cycle repeats a vertex"));
                }
                for i in 0..m {
                    if self.edge_between(walk[i], walk[(i + 1) % m]).is_none() {
                        return Err(Error::validation(
                            "ring-walk-shape",
                            format!("ring walk misses edge {}-{}", walk[i], walk[(i + 1) % m]),
                        ));
                    }
                }
                let f = (0..faces.walks.len())
                    .find(|&f| {
                        let fw = &faces.walks[f];
                        fw.arcs.len() == m && Self::walk_matches(&faces.vertex_walk(self, f), &walk)
                    })
                    .ok_or_else(|| Error::validation("ring-not-a-face", "ring walk is not a traced face"))?;
                Ok(RingSpec { face: f, walk })
            }
        }
    }

    fn walk_matches(face_walk: &[Vertex], ring_walk: &[Vertex]) -> bool {
        let m = ring_walk.len();
        if face_walk.len() != m {
            return false;
        }
        for shift in 0..m {
            if (0..m).all(|i| face_walk[(i + shift) % m] == ring_walk[i]) {
                return true;
            }
            if (0..m).all(|i| face_walk[(shift + m - i) % m] == ring_walk[i]) {
                return true;
            }
        }
        false
    }

    /// Trace all faces of the full embedding.
    pub fn trace_faces(&self) -> Faces {
        self.trace_faces_view(&|_| true)
    }

    /// Trace the faces of the spanning subgraph keeping the edges selected
    /// by `keep`.  All vertices stay; vertices with no kept edges become
    /// isolated and contribute a vertex face.
    pub fn trace_faces_view(&self, keep: &dyn Fn(Edge) -> bool) -> Faces {
        let mut view_rot: Vec<Vec<HalfEdge>> = Vec::with_capacity(self.nv);
        for v in 0..self.nv {
            view_rot.push(self.rot[v].iter().copied().filter(|&he| keep(he / 2)).collect());
        }
        // slot_of[he] = index in view rotation of its vertex
        let mut slot_of = vec![usize::MAX; 2 * self.edges.len()];
        for r in &view_rot {
            for (i, &he) in r.iter().enumerate() {
                slot_of[he] = i;
            }
        }

        // state = 2*arc + (orientation == MINUS)
        let nstates = 4 * self.edges.len();
        let next = |state: usize| -> usize {
            let arc = state / 2;
            let o_minus = state % 2 == 1;
            let e = arc / 2;
            let o2_minus = if self.sign[e] == MINUS { !o_minus } else { o_minus };
            let head = self.arc_head(arc);
            let arrival: HalfEdge = arc ^ 1;
            let r = &view_rot[head];
            let deg = r.len();
            let i = slot_of[arrival];
            let j = if o2_minus { (i + deg - 1) % deg } else { (i + 1) % deg };
            let dep = r[j];
            let dep_arc = dep; // departing along half-edge `dep` = arc with the same id
            2 * dep_arc + o2_minus as usize
        };
        let mirror = |state: usize| -> usize {
            let arc = state / 2;
            let o_minus = state % 2 == 1;
            let e = arc / 2;
            let o2_minus = if self.sign[e] == MINUS { !o_minus } else { o_minus };
            2 * (arc ^ 1) + (!o2_minus) as usize
        };

        let mut claimed = vec![false; nstates];
        for e in 0..self.edges.len() {
            if !keep(e) {
                for s in 4 * e..4 * e + 4 {
                    claimed[s] = true;
                }
            }
        }
        let mut walks = Vec::new();
        let mut corner_face: Vec<Vec<Face>> = view_rot.iter().map(|r| vec![usize::MAX; r.len()]).collect();
        let mut face_corners: Vec<Vec<(Vertex, usize)>> = Vec::new();
        for start in 0..nstates {
            if claimed[start] {
                continue;
            }
            let fid = walks.len();
            let mut arcs = Vec::new();
            let mut corners = Vec::new();
            let mut s = start;
            loop {
                claimed[s] = true;
                claimed[mirror(s)] = true;
                let arc = s / 2;
                arcs.push(arc);
                // corner consumed on arrival at head(arc)
                let e = arc / 2;
                let o_minus = s % 2 == 1;
                let o2_minus = if self.sign[e] == MINUS { !o_minus } else { o_minus };
                let head = self.arc_head(arc);
                let deg = view_rot[head].len();
                let i = slot_of[arc ^ 1];
                let corner = if o2_minus { (i + deg - 1) % deg } else { i };
                corner_face[head][corner] = fid;
                corners.push((head, corner));
                s = next(s);
                if s == start {
                    break;
                }
            }
            walks.push(FaceWalk { arcs, isolated: None });
            face_corners.push(corners);
        }
        for v in 0..self.nv {
            if view_rot[v].is_empty() {
                walks.push(FaceWalk { arcs: Vec::new(), isolated: Some(v) });
                face_corners.push(Vec::new());
            }
        }
        debug_assert!(corner_face.iter().flatten().all(|&f| f != usize::MAX));
        Faces { walks, corner_face, face_corners, view_rot }
    }

    /// Connected components (by edges); isolated vertices are their own
    /// components.  Returns (component id per vertex, component count).
    pub fn components(&self) -> (Vec<usize>, usize) {
        let mut comp = vec![usize::MAX; self.nv];
        let mut n = 0;
        for s in 0..self.nv {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = n;
            n += 1;
            let mut stack = vec![s];
            comp[s] = id;
            while let Some(v) = stack.pop() {
                for u in self.neighbors(v).collect::<Vec<_>>() {
                    if comp[u] == usize::MAX {
                        comp[u] = id;
                        stack.push(u);
                    }
                }
            }
        }
        (comp, n)
    }

    /// Per-component Euler genus of the traced (capped) surface, not
    /// counting the surplus.
    pub fn component_genera(&self) -> Vec<usize> {
        let faces = self.trace_faces();
        let (comp, n) = self.components();
        let mut v_cnt = vec![0usize; n];
        let mut e_cnt = vec![0usize; n];
        let mut f_cnt = vec![0usize; n];
        for v in 0..self.nv {
            v_cnt[comp[v]] += 1;
        }
        for &(u, _) in &self.edges {
            e_cnt[comp[u]] += 1;
        }
        for w in &faces.walks {
            let c = if let Some(v) = w.isolated { comp[v] } else { comp[self.arc_tail(w.arcs[0])] };
            f_cnt[c] += 1;
        }
        (0..n)
            .map(|c| {
                let chi = v_cnt[c] as i64 - e_cnt[c] as i64 + f_cnt[c] as i64;
                let g = 2 - chi;
                debug_assert!(g >= 0, "traced Euler characteristic exceeds 2");
                g as usize
            })
            .collect()
    }

    /// Whether the embedding scheme of every component is orientable, i.e.
    /// the signs can be removed by vertex flips.
    pub fn is_orientable(&self) -> bool {
        let mut pot = vec![0i8; self.nv];
        for s in 0..self.nv {
            if pot[s] != 0 {
                continue;
            }
            pot[s] = 1;
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for &he in &self.rot[v] {
                    let u = self.he_other(he);
                    let want = pot[v] * self.sign[he / 2];
                    if pot[u] == 0 {
                        pot[u] = want;
                        stack.push(u);
                    } else if pot[u] != want {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn surface_summary(&self) -> SurfaceSummary {
        let (_, h) = self.components();
        let genus: usize = self.component_genera().iter().sum();
        SurfaceSummary {
            components: h,
            euler_genus: self.surplus + genus,
            ring_count: self.rings.len(),
            ring_vertex_total: self.rings.iter().map(|r| r.walk.len()).sum(),
        }
    }

    /// Flip a vertex: reverse its rotation and negate the signs of all
    /// incident edges.  Preserves the embedded surface.
    pub(crate) fn flipped(&self, v: Vertex) -> EGraph {
        let mut g = self.clone();
        g.rot[v].reverse();
        for &he in &g.rot[v].clone() {
            g.sign[he / 2] = -g.sign[he / 2];
        }
        g
    }

    /// Mirror image: reverse every rotation.
    pub fn mirrored(&self) -> Result<EGraph> {
        let rot = self.rot.iter().map(|r| r.iter().rev().copied().collect()).collect();
        EGraph::new(
            self.nv,
            self.edges.clone(),
            rot,
            self.sign.clone(),
            self.rings.iter().map(|r| r.walk.clone()).collect(),
            self.surplus,
        )
    }

    /// Core of `curve_cut`: a non-null-homotopic curve disjoint from the
    /// graph exists only when the ambient surface is not 2-cell, i.e. when
    /// the surplus is positive.  Cutting along it removes one unit of
    /// surplus and leaves the graph untouched.
    pub fn curve_cut(&self) -> Result<EGraph> {
        if self.surplus == 0 {
            return Err(Error::precondition(
                "embedding-is-2-cell",
                "no non-null-homotopic curve disjoint from the graph exists",
            ));
        }
        let mut g = self.clone();
        g.surplus -= 1;
        Ok(g)
    }

    pub(crate) fn with_surplus(&self, surplus: usize) -> EGraph {
        let mut g = self.clone();
        g.surplus = surplus;
        g
    }

    /// Raw parts accessor for surgery code.
    pub(crate) fn into_parts(self) -> (usize, Vec<(Vertex, Vertex)>, Vec<Vec<HalfEdge>>, Vec<i8>, Vec<RingSpec>, usize) {
        (self.nv, self.edges, self.rot, self.sign, self.rings, self.surplus)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn single_edge_has_one_face_of_length_two() {
        let g = EGraph::from_neighbor_rotations(2, vec![vec![1], vec![0]], |_, _| PLUS, vec![], 0).unwrap();
        let faces = g.trace_faces();
        assert_eq!(faces.count(), 1);
        assert_eq!(faces.walks[0].len(), 2);
        assert_eq!(g.surface_summary().euler_genus, 0);
    }

    #[test]
    fn planar_k4_has_four_triangles() {
        let g = fixtures::k4_planar();
        let faces = g.trace_faces();
        assert_eq!(faces.count(), 4);
        assert!(faces.walks.iter().all(|w| w.len() == 3));
        let s = g.surface_summary();
        assert_eq!(
            s,
            SurfaceSummary { components: 1, euler_genus: 0, ring_count: 0, ring_vertex_total: 0 }
        );
    }

    #[test]
    fn face_lengths_sum_to_twice_edges() {
        for g in [fixtures::k4_planar(), fixtures::k5_torus(), fixtures::k6_projective(), fixtures::k7_torus()] {
            let faces = g.trace_faces();
            let total: usize = faces.walks.iter().map(|w| w.len()).sum();
            assert_eq!(total, 2 * g.ne());
            let mut edge_uses = vec![0usize; g.ne()];
            for w in &faces.walks {
                for &a in &w.arcs {
                    edge_uses[a / 2] += 1;
                }
            }
            assert!(edge_uses.iter().all(|&c| c == 2));
        }
    }

    #[test]
    fn isolated_ring_vertex_is_smallest_canvas() {
        let g = EGraph::new(1, vec![], vec![vec![]], vec![], vec![vec![0]], 0).unwrap();
        assert_eq!(g.rings().len(), 1);
        let s = g.surface_summary();
        assert_eq!(s.euler_genus, 0);
        assert_eq!(s.ring_vertex_total, 1);
    }

    #[test]
    fn ring_walk_must_be_a_face() {
        // K4 with a "ring" on a non-facial triangle ordering still works,
        // but a walk that is no face at all must fail.
        let err = EGraph::from_neighbor_rotations(
            4,
            vec![vec![1, 2, 3], vec![0, 3, 2], vec![0, 1, 3], vec![0, 2, 1]],
            |_, _| PLUS,
            vec![vec![0, 1, 2, 3]],
            0,
        )
        .unwrap_err();
        match err {
            Error::Validation { name, .. } => assert_eq!(name, "ring-not-a-face"),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn genus_invariant_under_vertex_flip() {
        for g in [fixtures::k5_torus(), fixtures::k6_projective(), fixtures::k7_torus()] {
            let before = g.surface_summary().euler_genus;
            for v in 0..g.nv() {
                let flipped = g.flipped(v);
                assert_eq!(flipped.surface_summary().euler_genus, before);
            }
        }
    }

    #[test]
    fn orientability_detection() {
        assert!(fixtures::k4_planar().is_orientable());
        assert!(fixtures::k7_torus().is_orientable());
        assert!(!fixtures::k6_projective().is_orientable());
    }
}
