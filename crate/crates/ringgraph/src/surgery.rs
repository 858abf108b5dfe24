//! Surface surgery: cutting along cycles, cylindrical excision, gluing ring
//! pairs back together, and crossing replacement.
//!
//! Cutting along a cycle C works on the rotation system directly.  Signs
//! along C are first normalised to +1 by vertex flips (always possible for
//! all but possibly the last edge; the leftover sign decides one- vs
//! two-sided).  Every cycle vertex splits in two, the incident fans are
//! assigned to the sides read off the rotation between the two cycle
//! half-edges, and the cycle edges are duplicated.  A two-sided cut yields
//! two boundary cycles of length |C|, a one-sided cut a single boundary
//! cycle of length 2|C|.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::graph::{EGraph, Edge, HalfEdge, Vertex, PLUS};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CutBoundary {
    /// Two boundary cycles, in the index order of the input cycle; `near`
    /// keeps the original vertex ids.
    TwoSided { near: Vec<Vertex>, far: Vec<Vertex> },
    /// One boundary cycle of twice the length.
    OneSided { boundary: Vec<Vertex> },
}

#[derive(Debug, Clone)]
pub struct RawCut {
    /// The cut graph.  Rings are dropped; the caller re-attaches what it
    /// needs.  Original vertex and edge ids survive (twins are appended).
    pub graph: EGraph,
    pub boundary: CutBoundary,
}

/// Check that `cycle` is a simple cycle of `g` and return its edges.
pub fn cycle_edges(g: &EGraph, cycle: &[Vertex]) -> Result<Vec<Edge>> {
    let m = cycle.len();
    if m < 3 {
        return Err(Error::precondition("not-a-cycle", "cycles have at least three vertices"));
    }
    let distinct: BTreeSet<Vertex> = cycle.iter().copied().collect();
    if distinct.len() != m {
        return Err(Error::precondition("not-a-cycle", "cycle repeats a vertex"));
    }
    (0..m)
        .map(|i| {
            g.edge_between(cycle[i], cycle[(i + 1) % m]).ok_or_else(|| {
                Error::precondition("not-a-cycle", format!("missing edge {}-{}", cycle[i], cycle[(i + 1) % m]))
            })
        })
        .collect()
}

/// Cut the surface open along a cycle.  Purely combinatorial; no homotopy
/// precondition (callers that need one check it first).
pub fn raw_cut(g: &EGraph, cycle: &[Vertex]) -> Result<RawCut> {
    let m = cycle.len();
    let ce = cycle_edges(g, cycle)?;

    // Normalise signs along the cycle: flip vertices so that all cycle
    // edges except possibly the last carry +1.
    let mut g = g.clone();
    for i in 1..m {
        if g.sign(ce[i - 1]) != PLUS {
            g = g.flipped(cycle[i]);
        }
    }
    let two_sided = g.sign(ce[m - 1]) == PLUS;

    let (nv, mut edges, mut rot, mut sign, _rings, surplus) = g.into_parts();
    let twin = |i: usize| nv + i;

    // Fans: rotation of cycle[i] split at the two cycle half-edges.
    // he_in points towards cycle[i-1], he_out towards cycle[i+1].
    let mut near_rot: Vec<Vec<HalfEdge>> = Vec::with_capacity(m);
    let mut far_fans: Vec<Vec<HalfEdge>> = Vec::with_capacity(m);
    for i in 0..m {
        let v = cycle[i];
        let e_in = ce[(i + m - 1) % m];
        let e_out = ce[i];
        let he_at = |e: Edge| -> HalfEdge {
            if edges[e].0 == v {
                2 * e
            } else {
                2 * e + 1
            }
        };
        let he_in = he_at(e_in);
        let he_out = he_at(e_out);
        let r = &rot[v];
        let pos_in = r.iter().position(|&h| h == he_in).unwrap();
        let deg = r.len();
        let mut near = vec![he_in];
        let mut far = Vec::new();
        let mut seen_out = false;
        for k in 1..deg {
            let h = r[(pos_in + k) % deg];
            if h == he_out {
                near.push(h);
                seen_out = true;
            } else if seen_out {
                far.push(h);
            } else {
                near.push(h);
            }
        }
        debug_assert!(seen_out);
        near_rot.push(near);
        far_fans.push(far);
    }

    // Move far fans to the twins.
    for i in 0..m {
        let v = cycle[i];
        for &h in &far_fans[i] {
            let e = h / 2;
            if h % 2 == 0 {
                debug_assert_eq!(edges[e].0, v);
                edges[e].0 = twin(i);
            } else {
                debug_assert_eq!(edges[e].1, v);
                edges[e].1 = twin(i);
            }
        }
    }

    let boundary;
    if two_sided {
        // Duplicate every cycle edge for the far side.
        let mut far_edge = vec![0usize; m];
        for i in 0..m {
            far_edge[i] = edges.len();
            edges.push((twin(i), twin((i + 1) % m)));
            sign.push(PLUS);
        }
        for i in 0..m {
            let e_in = far_edge[(i + m - 1) % m];
            let e_out = far_edge[i];
            let mut r = vec![2 * e_out]; // half-edge at twin(i), the .0 end
            r.extend(far_fans[i].iter().copied());
            r.push(2 * e_in + 1); // .1 end of the incoming far edge
            rot.push(r);
        }
        for i in 0..m {
            rot[cycle[i]] = near_rot[i].clone();
        }
        boundary = CutBoundary::TwoSided {
            near: cycle.to_vec(),
            far: (0..m).map(twin).collect(),
        };
    } else {
        // One-sided: the near and far copies join into one boundary cycle
        // of length 2m.  The twisted edge ce[m-1] now runs from cycle[m-1]
        // to twin(0); a fresh edge closes the loop from twin(m-1) to
        // cycle[0].
        let e_twist = ce[m - 1];
        let he_twist_at_v0 = if edges[e_twist].0 == cycle[0] {
            2 * e_twist
        } else {
            2 * e_twist + 1
        };
        if edges[e_twist].0 == cycle[0] {
            edges[e_twist].0 = twin(0);
        } else {
            edges[e_twist].1 = twin(0);
        }
        sign[e_twist] = PLUS;

        let mut far_edge = vec![0usize; m]; // far_edge[i]: twin(i) -> twin(i+1), i < m-1
        for i in 0..m - 1 {
            far_edge[i] = edges.len();
            edges.push((twin(i), twin(i + 1)));
            sign.push(PLUS);
        }
        let e_close = edges.len(); // twin(m-1) -> cycle[0]
        edges.push((twin(m - 1), cycle[0]));
        sign.push(PLUS);

        for i in 0..m {
            let he_out = if i + 1 < m { 2 * far_edge[i] } else { 2 * e_close };
            let he_in = if i == 0 {
                // arrives from cycle[m-1] along the twisted edge
                if edges[e_twist].0 == twin(0) {
                    2 * e_twist
                } else {
                    2 * e_twist + 1
                }
            } else {
                2 * far_edge[i - 1] + 1
            };
            let mut r = vec![he_out];
            r.extend(far_fans[i].iter().copied());
            r.push(he_in);
            rot.push(r);
        }
        // cycle[0] keeps its near rotation, with the slot that held the
        // twisted half-edge now holding the closing edge's far end.
        for i in 0..m {
            let mut r = near_rot[i].clone();
            if i == 0 {
                for h in r.iter_mut() {
                    if *h == he_twist_at_v0 {
                        *h = 2 * e_close + 1;
                    }
                }
            }
            rot[cycle[i]] = r;
        }
        let mut b: Vec<Vertex> = cycle.to_vec();
        b.extend((0..m).map(twin));
        boundary = CutBoundary::OneSided { boundary: b };
    }

    let graph = EGraph::new(nv + m, edges, rot, sign, Vec::new(), surplus)?;
    Ok(RawCut { graph, boundary })
}

/// Cut along a non-null-homotopic cycle, keeping the old rings and turning
/// the cut boundary into one or two new rings (Definition of cycle
/// cutting).
pub fn cut_cycle(g: &EGraph, cycle: &[Vertex]) -> Result<EGraph> {
    cycle_edges(g, cycle)?;
    let on_cycle: BTreeSet<Vertex> = cycle.iter().copied().collect();
    if g.rings().iter().any(|r| r.walk.iter().any(|v| on_cycle.contains(v))) {
        return Err(Error::precondition("cut-meets-ring", "cycle shares a vertex with a ring"));
    }
    if crate::topology::is_null_homotopic(g, cycle, crate::topology::Ambient::Sigma)? {
        return Err(Error::precondition(
            "cut-requires-noncontractible",
            "cycle is null-homotopic in the ambient surface",
        ));
    }
    let cut = raw_cut(g, cycle)?;
    let mut ring_walks: Vec<Vec<Vertex>> = g.rings().iter().map(|r| r.walk.clone()).collect();
    match &cut.boundary {
        CutBoundary::TwoSided { near, far } => {
            ring_walks.push(near.clone());
            ring_walks.push(far.clone());
        }
        CutBoundary::OneSided { boundary } => ring_walks.push(boundary.clone()),
    }
    let (nv, edges, rot, sign, _, surplus) = cut.graph.into_parts();
    EGraph::new(nv, edges, rot, sign, ring_walks, surplus)
}

/// The subgraph induced on a vertex set, re-labelled in ascending id order,
/// with the given ring walks (in old ids).  Returns the piece and the
/// old->new vertex map.
pub fn extract_piece(
    g: &EGraph,
    keep: &BTreeSet<Vertex>,
    ring_walks_old: Vec<Vec<Vertex>>,
    surplus: usize,
) -> Result<(EGraph, BTreeMap<Vertex, Vertex>)> {
    let mut vmap = BTreeMap::new();
    for &v in keep {
        let id = vmap.len();
        vmap.insert(v, id);
    }
    let mut emap: BTreeMap<Edge, Edge> = BTreeMap::new();
    let mut edges = Vec::new();
    let mut sign = Vec::new();
    for e in 0..g.ne() {
        let (u, v) = g.edge_ends(e);
        if keep.contains(&u) && keep.contains(&v) {
            emap.insert(e, edges.len());
            edges.push((vmap[&u], vmap[&v]));
            sign.push(g.sign(e));
        }
    }
    let mut rot = vec![Vec::new(); vmap.len()];
    for (&v, &nid) in &vmap {
        for &he in g.rotation(v) {
            if let Some(&ne) = emap.get(&(he / 2)) {
                rot[nid] = rot[nid].clone();
                rot[nid].push(2 * ne + (he % 2));
            }
        }
    }
    let ring_walks = ring_walks_old
        .into_iter()
        .map(|w| w.into_iter().map(|v| vmap[&v]).collect())
        .collect();
    let piece = EGraph::new(vmap.len(), edges, rot, sign, ring_walks, surplus)?;
    Ok((piece, vmap))
}

/// Cylindrical excision: the subgraph drawn in the cylinder cobounded by
/// two disjoint cycles, returned as a two-ring cylinder canvas.
pub fn excise_cylinder(g: &EGraph, c1: &[Vertex], c2: &[Vertex]) -> Result<EGraph> {
    excise_cylinder_with_map(g, c1, c2).map(|(p, _)| p)
}

/// Like `excise_cylinder`, also returning for every piece vertex the
/// original vertex it came from (cut copies map to their source).
pub fn excise_cylinder_with_map(
    g: &EGraph,
    c1: &[Vertex],
    c2: &[Vertex],
) -> Result<(EGraph, Vec<Vertex>)> {
    cycle_edges(g, c1)?;
    cycle_edges(g, c2)?;
    let s1: BTreeSet<Vertex> = c1.iter().copied().collect();
    let s2: BTreeSet<Vertex> = c2.iter().copied().collect();
    if !s1.is_disjoint(&s2) {
        return Err(Error::precondition("not-a-cylinder-pair", "cycles share a vertex"));
    }
    // A cycle may coincide with a ring; otherwise it must avoid the rings.
    for r in g.rings() {
        let rv: BTreeSet<Vertex> = r.walk.iter().copied().collect();
        for s in [&s1, &s2] {
            if !rv.is_disjoint(s) && rv != *s {
                return Err(Error::precondition(
                    "not-a-cylinder-pair",
                    "cycle meets a ring without being that ring",
                ));
            }
        }
    }

    let cut1 = raw_cut(g, c1)?;
    let (b1_near, b1_far) = match cut1.boundary {
        CutBoundary::TwoSided { near, far } => (near, far),
        CutBoundary::OneSided { .. } => {
            return Err(Error::precondition("not-a-cylinder-pair", "first cycle is one-sided"))
        }
    };
    let cut2 = raw_cut(&cut1.graph, c2)?;
    let (b2_near, b2_far) = match cut2.boundary {
        CutBoundary::TwoSided { near, far } => (near, far),
        CutBoundary::OneSided { .. } => {
            return Err(Error::precondition("not-a-cylinder-pair", "second cycle is one-sided"))
        }
    };

    let h = &cut2.graph;
    // origin of every h vertex in g
    let mut origin: Vec<Vertex> = (0..h.nv()).collect();
    for (i, &tw) in b1_far.iter().enumerate() {
        origin[tw] = c1[i];
    }
    for (i, &tw) in b2_far.iter().enumerate() {
        origin[tw] = c2[i];
    }
    let (comp, _) = h.components();
    let genera = h.component_genera();
    // Ring vertices of g that are not on c1/c2 must stay outside the piece.
    let hole_vertices: BTreeSet<Vertex> = g
        .rings()
        .iter()
        .flat_map(|r| r.walk.iter().copied())
        .filter(|v| !s1.contains(v) && !s2.contains(v))
        .collect();

    for w1 in [&b1_near, &b1_far] {
        for w2 in [&b2_near, &b2_far] {
            let k1 = comp[w1[0]];
            if k1 != comp[w2[0]] {
                continue;
            }
            // the other two copies must be elsewhere
            let other1 = if std::ptr::eq(w1, &b1_near) { &b1_far } else { &b1_near };
            let other2 = if std::ptr::eq(w2, &b2_near) { &b2_far } else { &b2_near };
            if comp[other1[0]] == k1 || comp[other2[0]] == k1 {
                continue;
            }
            if genera[k1] != 0 {
                continue;
            }
            let keep: BTreeSet<Vertex> = (0..h.nv()).filter(|&v| comp[v] == k1).collect();
            if hole_vertices.iter().any(|v| keep.contains(v)) {
                continue;
            }
            let (piece, vmap) = extract_piece(h, &keep, vec![w1.clone(), w2.clone()], 0)?;
            let mut back = vec![0; piece.nv()];
            for (&old, &new) in &vmap {
                back[new] = origin[old];
            }
            return Ok((piece, back));
        }
    }
    Err(Error::precondition("not-a-cylinder-pair", "the cycles do not cobound a cylinder"))
}

/// Identify ring `rb` with ring `ra` of the same graph (index-aligned
/// walks, position i of `ra` merging with position i of `rb`).  The exact
/// inverse of a two-sided `raw_cut`, and the primitive behind sleeve
/// reassembly.
pub fn glue_rings(g: &EGraph, ra: usize, rb: usize, offset: usize) -> Result<EGraph> {
    if ra == rb || ra >= g.rings().len() || rb >= g.rings().len() {
        return Err(Error::precondition("glue-rings", "need two distinct ring indices"));
    }
    let wa = g.rings()[ra].walk.clone();
    let wb_raw = g.rings()[rb].walk.clone();
    let m = wa.len();
    if wb_raw.len() != m {
        return Err(Error::precondition("ring-length-mismatch", "rings have different lengths"));
    }
    if m < 3 {
        return Err(Error::precondition("glue-rings", "only cycle rings can be glued"));
    }
    let wb: Vec<Vertex> = (0..m).map(|i| wb_raw[(i + offset) % m]).collect();

    let faces = g.trace_faces();
    let fa = g.rings()[ra].face;
    let fb = g.rings()[rb].face;

    // Linearised rotation of a ring vertex starting right after its ring
    // face corner; first and last entries are the two ring half-edges.
    let linearize = |v: Vertex, f: usize| -> Vec<HalfEdge> {
        let r = g.rotation(v);
        let deg = r.len();
        let corner = faces.corner_face[v].iter().position(|&cf| cf == f).expect("ring corner");
        (1..=deg).map(|k| r[(corner + k) % deg]).collect()
    };

    let partner: BTreeMap<Vertex, Vertex> = wb.iter().copied().zip(wa.iter().copied()).collect();
    let b_cycle_edges: BTreeSet<Edge> = (0..m)
        .map(|i| g.edge_between(wb[i], wb[(i + 1) % m]).expect("ring edge"))
        .collect();

    // New edge ids: drop the b-side ring edges, remap endpoints.
    let mut emap: BTreeMap<Edge, Edge> = BTreeMap::new();
    let mut edges = Vec::new();
    let mut sign = Vec::new();
    for e in 0..g.ne() {
        if b_cycle_edges.contains(&e) {
            continue;
        }
        let (u, v) = g.edge_ends(e);
        let nu = *partner.get(&u).unwrap_or(&u);
        let nvx = *partner.get(&v).unwrap_or(&v);
        emap.insert(e, edges.len());
        edges.push((nu, nvx));
        sign.push(g.sign(e));
    }
    // Map a half-edge of g to the merged graph, tracking the endpoint it
    // sits at (needed because partner-merging can swap endpoint roles).
    let he_map = |he: HalfEdge| -> HalfEdge {
        let e = he / 2;
        let ne = emap[&e];
        let v = g.he_vertex(he);
        let nv_at = *partner.get(&v).unwrap_or(&v);
        if edges[ne].0 == nv_at && edges[ne].1 == {
            let o = g.he_other(he);
            *partner.get(&o).unwrap_or(&o)
        } {
            2 * ne
        } else {
            2 * ne + 1
        }
    };

    // Merged rotations.
    let mut rot: Vec<Vec<HalfEdge>> = vec![Vec::new(); g.nv()];
    let b_vertices: BTreeSet<Vertex> = wb.iter().copied().collect();
    for v in 0..g.nv() {
        if b_vertices.contains(&v) {
            continue; // merged into the partner
        }
        if let Some(i) = wa.iter().position(|&x| x == v) {
            // ring vertex of a: [he_in^a, fan_a..., he_out^a] then b's fan.
            let la = linearize(v, fa);
            let bv = wb[i];
            let lb = linearize(bv, fb);
            let mut r: Vec<HalfEdge> = Vec::new();
            r.extend(la.iter().map(|&h| he_map(h)));
            // b's two ring half-edges disappear; keep its interior fan in
            // stored order.
            for &h in lb[1..lb.len() - 1].iter() {
                r.push(he_map(h));
            }
            rot[v] = r;
        } else {
            rot[v] = g.rotation(v).iter().map(|&h| he_map(h)).collect();
        }
    }

    // Compact vertex ids (b ring vertices vanish).
    let mut vmap: BTreeMap<Vertex, Vertex> = BTreeMap::new();
    for v in 0..g.nv() {
        if !b_vertices.contains(&v) {
            let id = vmap.len();
            vmap.insert(v, id);
        }
    }
    let edges: Vec<(Vertex, Vertex)> = edges.into_iter().map(|(u, v)| (vmap[&u], vmap[&v])).collect();
    let rot: Vec<Vec<HalfEdge>> = (0..g.nv()).filter(|v| !b_vertices.contains(v)).map(|v| rot[v].clone()).collect();
    let ring_walks: Vec<Vec<Vertex>> = g
        .rings()
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != ra && i != rb)
        .map(|(_, r)| r.walk.iter().map(|v| vmap[v]).collect())
        .collect();
    EGraph::new(vmap.len(), edges, rot, sign, ring_walks, g.genus_surplus())
}

/// Identify antipodal positions of a single even ring with itself: walk
/// position i merges with position i+m (where the ring has 2m vertices).
/// The exact inverse of a one-sided `raw_cut`; the edge closing the merged
/// cycle gets sign -1, restoring the cross-cap.
pub fn glue_ring_self(g: &EGraph, r: usize) -> Result<EGraph> {
    if r >= g.rings().len() {
        return Err(Error::precondition("glue-rings", "no such ring"));
    }
    let w = g.rings()[r].walk.clone();
    if w.len() % 2 != 0 || w.len() < 6 {
        return Err(Error::precondition("glue-rings", "self-gluing needs an even ring of length >= 6"));
    }
    let m = w.len() / 2;
    let faces = g.trace_faces();
    let fr = g.rings()[r].face;
    let linearize = |v: Vertex| -> Vec<HalfEdge> {
        let rot = g.rotation(v);
        let deg = rot.len();
        let corner = faces.corner_face[v].iter().position(|&cf| cf == fr).expect("ring corner");
        (1..=deg).map(|k| rot[(corner + k) % deg]).collect()
    };
    // partner: w[i+m] -> w[i]
    let partner: BTreeMap<Vertex, Vertex> = (0..m).map(|i| (w[i + m], w[i])).collect();
    let walk_edge = |i: usize| g.edge_between(w[i], w[(i + 1) % w.len()]).expect("ring edge");
    let dropped: BTreeSet<Edge> = (m..2 * m).map(walk_edge).collect();
    let twist_edge = walk_edge(m - 1);

    let mut emap: BTreeMap<Edge, Edge> = BTreeMap::new();
    let mut edges = Vec::new();
    let mut sign = Vec::new();
    for e in 0..g.ne() {
        if dropped.contains(&e) {
            continue;
        }
        let (u, v) = g.edge_ends(e);
        let nu = *partner.get(&u).unwrap_or(&u);
        let nvx = *partner.get(&v).unwrap_or(&v);
        emap.insert(e, edges.len());
        edges.push((nu, nvx));
        sign.push(if e == twist_edge { -g.sign(e) } else { g.sign(e) });
    }
    let he_map = |he: HalfEdge| -> HalfEdge {
        let e = he / 2;
        let ne = emap[&e];
        let v = g.he_vertex(he);
        let o = g.he_other(he);
        let nv_at = *partner.get(&v).unwrap_or(&v);
        let nv_ot = *partner.get(&o).unwrap_or(&o);
        if edges[ne] == (nv_at, nv_ot) {
            2 * ne
        } else {
            2 * ne + 1
        }
    };
    let b_vertices: BTreeSet<Vertex> = (m..2 * m).map(|i| w[i]).collect();
    let mut rot: Vec<Vec<HalfEdge>> = vec![Vec::new(); g.nv()];
    for v in 0..g.nv() {
        if b_vertices.contains(&v) {
            continue;
        }
        if let Some(i) = (0..m).find(|&i| w[i] == v) {
            let la = linearize(v);
            let lb = linearize(w[i + m]);
            let mut rr: Vec<HalfEdge> = la.iter().map(|&h| he_map(h)).collect();
            for &h in lb[1..lb.len() - 1].iter() {
                rr.push(he_map(h));
            }
            rot[v] = rr;
        } else {
            rot[v] = g.rotation(v).iter().map(|&h| he_map(h)).collect();
        }
    }
    let mut vmap: BTreeMap<Vertex, Vertex> = BTreeMap::new();
    for v in 0..g.nv() {
        if !b_vertices.contains(&v) {
            let id = vmap.len();
            vmap.insert(v, id);
        }
    }
    let edges: Vec<(Vertex, Vertex)> = edges.into_iter().map(|(u, v)| (vmap[&u], vmap[&v])).collect();
    let rot: Vec<Vec<HalfEdge>> = (0..g.nv()).filter(|v| !b_vertices.contains(v)).map(|v| rot[v].clone()).collect();
    let ring_walks: Vec<Vec<Vertex>> = g
        .rings()
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != r)
        .map(|(_, rw)| rw.walk.iter().map(|v| vmap[v]).collect())
        .collect();
    EGraph::new(vmap.len(), edges, rot, sign, ring_walks, g.genus_surplus())
}

/// How a sleeve is attached: ring `host_ring` of the host graph is
/// identified with ring `sleeve_ring` of the sleeve, walk position i of the
/// host matching walk position `(i + offset) mod m` of the sleeve, after
/// optionally mirroring the sleeve.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RingPairing {
    pub host_ring: usize,
    pub sleeve_ring: usize,
    pub offset: usize,
    pub mirror: bool,
}

/// Adjoin a two-ring sleeve graph to a host along two ring pairings
/// (Definition of adjoining).  The merged graph has two fewer rings than
/// host and sleeve combined per pairing.
pub fn adjoin_sleeve(host: &EGraph, sleeve: &EGraph, pairings: &[RingPairing]) -> Result<EGraph> {
    let sleeve = if pairings.iter().any(|p| p.mirror) {
        if !pairings.iter().all(|p| p.mirror) {
            return Err(Error::precondition("adjoin-pairing", "mirror flag must agree across pairings"));
        }
        sleeve.mirrored()?
    } else {
        sleeve.clone()
    };
    for p in pairings {
        let lh = host.rings()[p.host_ring].walk.len();
        let ls = sleeve.rings()[p.sleeve_ring].walk.len();
        if lh != ls {
            return Err(Error::precondition(
                "ring-length-mismatch",
                format!("host ring has {lh} vertices, sleeve ring {ls}"),
            ));
        }
    }
    // Disjoint union, then glue pairing by pairing.
    let off_v = host.nv();
    let off_e = host.ne();
    let mut edges = host.edges().to_vec();
    edges.extend(sleeve.edges().iter().map(|&(u, v)| (u + off_v, v + off_v)));
    let mut sign: Vec<i8> = (0..host.ne()).map(|e| host.sign(e)).collect();
    sign.extend((0..sleeve.ne()).map(|e| sleeve.sign(e)));
    let mut rot: Vec<Vec<HalfEdge>> = (0..host.nv()).map(|v| host.rotation(v).to_vec()).collect();
    rot.extend((0..sleeve.nv()).map(|v| sleeve.rotation(v).iter().map(|&h| h + 2 * off_e).collect()));
    let mut ring_walks: Vec<Vec<Vertex>> = host.rings().iter().map(|r| r.walk.clone()).collect();
    ring_walks.extend(sleeve.rings().iter().map(|r| r.walk.iter().map(|&v| v + off_v).collect::<Vec<_>>()));
    let union = EGraph::new(
        off_v + sleeve.nv(),
        edges,
        rot,
        sign,
        ring_walks,
        host.genus_surplus() + sleeve.genus_surplus(),
    )?;

    let mut cur = union;
    // Glue pairings one at a time; ring indices shift as rings disappear.
    let mut host_rings: Vec<usize> = pairings.iter().map(|p| p.host_ring).collect();
    let mut sleeve_rings: Vec<usize> = pairings.iter().map(|p| p.sleeve_ring + host.rings().len()).collect();
    for k in 0..pairings.len() {
        let ra = host_rings[k];
        let rb = sleeve_rings[k];
        cur = glue_rings(&cur, ra, rb, pairings[k].offset)?;
        for j in k + 1..pairings.len() {
            for idx in [&mut host_rings[j], &mut sleeve_rings[j]] {
                let mut shift = 0;
                if *idx > ra {
                    shift += 1;
                }
                if *idx > rb {
                    shift += 1;
                }
                *idx -= shift;
            }
        }
    }
    Ok(cur)
}

/// Replace crossing edge pairs of a drawn graph by degree-four vertices
/// (the crossing-replacement construction).
pub fn planarize_crossings(g: &EGraph, crossing_pairs: &[(Edge, Edge)]) -> Result<EGraph> {
    let mut used: BTreeSet<Edge> = BTreeSet::new();
    for &(e, f) in crossing_pairs {
        if e >= g.ne() || f >= g.ne() || e == f {
            return Err(Error::precondition("crossing-pair", "bad edge pair"));
        }
        if !used.insert(e) || !used.insert(f) {
            return Err(Error::precondition("crossing-pair", "an edge crosses more than one other edge"));
        }
        let (u1, v1) = g.edge_ends(e);
        let (u2, v2) = g.edge_ends(f);
        let ends = BTreeSet::from([u1, v1, u2, v2]);
        if ends.len() != 4 {
            return Err(Error::precondition(
                "crossing-shares-endpoint",
                "crossing edges share an endpoint (redrawable)",
            ));
        }
    }
    let mut nv = g.nv();
    let mut edges = g.edges().to_vec();
    let mut sign: Vec<i8> = (0..g.ne()).map(|e| g.sign(e)).collect();
    let mut rot: Vec<Vec<HalfEdge>> = (0..g.nv()).map(|v| g.rotation(v).to_vec()).collect();

    // Replace each pair (u1v1, u2v2): edge u1v1 becomes u1-w, edge u2v2
    // becomes u2-w, and two fresh edges w-v1, w-v2 complete the star.  The
    // rotation at w is u1, u2, v1, v2, matching a transversal crossing.
    for &(e, f) in crossing_pairs {
        let w = nv;
        nv += 1;
        let (u1, v1) = edges[e];
        let (u2, v2) = edges[f];
        let he_e_at_v1 = if g.edge_ends(e).0 == v1 { 2 * e } else { 2 * e + 1 };
        let he_f_at_v2 = if g.edge_ends(f).0 == v2 { 2 * f } else { 2 * f + 1 };
        // reuse e as u1-w and f as u2-w
        if edges[e].0 == v1 {
            edges[e].0 = w;
        } else {
            edges[e].1 = w;
        }
        if edges[f].0 == v2 {
            edges[f].0 = w;
        } else {
            edges[f].1 = w;
        }
        let e_wv1 = edges.len();
        edges.push((w, v1));
        sign.push(PLUS);
        let e_wv2 = edges.len();
        edges.push((w, v2));
        sign.push(PLUS);
        // v1 and v2 keep their rotation slots, now holding the new edges.
        for h in rot[v1].iter_mut() {
            if *h == he_e_at_v1 {
                *h = 2 * e_wv1 + 1;
            }
        }
        for h in rot[v2].iter_mut() {
            if *h == he_f_at_v2 {
                *h = 2 * e_wv2 + 1;
            }
        }
        let he_e_at_w = if edges[e].0 == w { 2 * e } else { 2 * e + 1 };
        let he_f_at_w = if edges[f].0 == w { 2 * f } else { 2 * f + 1 };
        rot.push(vec![he_e_at_w, he_f_at_w, 2 * e_wv1, 2 * e_wv2]);
        let _ = (u1, u2);
    }
    let ring_walks = g.rings().iter().map(|r| r.walk.clone()).collect();
    EGraph::new(nv, edges, rot, sign, ring_walks, g.genus_surplus())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn genera_sum(g: &EGraph) -> usize {
        g.component_genera().iter().sum()
    }

    #[test]
    fn cutting_middle_ring_of_cylinder_splits_into_two_cylinders() {
        let g = fixtures::cylinder(4, 10);
        let mid: Vec<usize> = (0..4).map(|i| 5 * 4 + i).collect();
        let cut = cut_cycle(&g, &mid).unwrap();
        let s = cut.surface_summary();
        assert_eq!(s.components, 2);
        assert_eq!(s.euler_genus, 0);
        assert_eq!(s.ring_count, 4);
        assert_eq!(cut.nv(), 44);
        // genera add up below the original genus
        assert!(genera_sum(&cut) <= g.surface_summary().euler_genus);
    }

    #[test]
    fn cutting_facial_triangle_of_k4_is_rejected() {
        let g = fixtures::k4_planar();
        let err = cut_cycle(&g, &[0, 1, 3]).unwrap_err();
        match err {
            Error::Precondition { name, .. } => assert_eq!(name, "cut-requires-noncontractible"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn cutting_torus_grid_meridian_gives_cylinder() {
        let g = fixtures::torus_grid(4, 6);
        let meridian: Vec<usize> = (0..4).collect();
        let cut = cut_cycle(&g, &meridian).unwrap();
        let s = cut.surface_summary();
        assert_eq!(s.components, 1);
        assert_eq!(s.euler_genus, 0);
        assert_eq!(s.ring_count, 2);
        assert_eq!(cut.nv(), g.nv() + 4);
    }

    #[test]
    fn one_sided_cut_in_projective_plane() {
        // A 5-cycle through the projective plane: in K6 with the fixture
        // scheme, any cycle whose sign product is -1 is one-sided.
        let g = fixtures::k6_projective();
        // find a short one-sided cycle by brute force over triangles
        let mut found = None;
        'outer: for a in 0..6 {
            for b in a + 1..6 {
                for c in b + 1..6 {
                    let cyc = [a, b, c];
                    let ce = cycle_edges(&g, &cyc).unwrap();
                    let prod: i32 = ce.iter().map(|&e| g.sign(e) as i32).product();
                    if prod == -1 {
                        found = Some(cyc);
                        break 'outer;
                    }
                }
            }
        }
        let cyc = found.expect("K6 in N1 has a one-sided triangle");
        let cut = raw_cut(&g, &cyc).unwrap();
        match cut.boundary {
            CutBoundary::OneSided { ref boundary } => assert_eq!(boundary.len(), 6),
            _ => panic!("expected a one-sided cut"),
        }
        // genus drops from 1 to 0
        assert_eq!(genera_sum(&cut.graph), 0);
    }

    #[test]
    fn excising_end_rings_returns_whole_cylinder() {
        let g = fixtures::cylinder(4, 10);
        let c1: Vec<usize> = (0..4).collect();
        let c2: Vec<usize> = (36..40).collect();
        let piece = excise_cylinder(&g, &c1, &c2).unwrap();
        assert_eq!(piece.nv(), 40);
        assert_eq!(piece.rings().len(), 2);
        assert_eq!(piece.surface_summary().euler_genus, 0);
    }

    #[test]
    fn excising_inner_copies_gives_subproduct() {
        let g = fixtures::cylinder(4, 10);
        let i = 2usize;
        let j = 7usize;
        let c1: Vec<usize> = (0..4).map(|t| i * 4 + t).collect();
        let c2: Vec<usize> = (0..4).map(|t| j * 4 + t).collect();
        let piece = excise_cylinder(&g, &c1, &c2).unwrap();
        assert_eq!(piece.nv(), 4 * (j - i + 1));
        assert_eq!(piece.rings().len(), 2);
        // oracle: BFS between the cycles in the original graph
        let between: usize = (i..=j).map(|_| 4).sum();
        assert_eq!(piece.nv(), between);
    }

    #[test]
    fn facial_triangles_of_k7_do_not_cobound_a_cylinder() {
        let g = fixtures::k7_torus();
        let faces = g.trace_faces();
        // two vertex-disjoint triangular faces
        let mut tris: Vec<Vec<usize>> = faces.walks.iter().map(|w| w.arcs.iter().map(|&a| g.arc_tail(a)).collect()).collect();
        tris.retain(|t| t.len() == 3);
        let mut pair = None;
        'outer: for x in 0..tris.len() {
            for y in x + 1..tris.len() {
                let sx: BTreeSet<usize> = tris[x].iter().copied().collect();
                let sy: BTreeSet<usize> = tris[y].iter().copied().collect();
                if sx.is_disjoint(&sy) {
                    pair = Some((tris[x].clone(), tris[y].clone()));
                    break 'outer;
                }
            }
        }
        let (t1, t2) = pair.expect("K7 has disjoint facial triangles");
        assert!(excise_cylinder(&g, &t1, &t2).is_err());
    }

    #[test]
    fn glue_undoes_cut_on_torus_grid() {
        let g = fixtures::torus_grid(4, 6);
        let meridian: Vec<usize> = (0..4).collect();
        let cut = cut_cycle(&g, &meridian).unwrap();
        // rings 0 and 1 are the two copies; glue them back
        let glued = glue_rings(&cut, 0, 1, 0).unwrap();
        assert_eq!(glued.nv(), g.nv());
        assert_eq!(glued.surface_summary().euler_genus, 2);
        assert!(crate::canon::isomorphic(&glued, &g));
    }

    #[test]
    fn planarize_k5_single_crossing() {
        // K5 drawn in the plane with edges 03 and 12 crossing once:
        // rotation chosen so the drawing is consistent.
        let g = EGraph::from_neighbor_rotations(
            5,
            vec![
                vec![1, 4, 3, 2],
                vec![2, 4, 0, 3],
                vec![0, 3, 4, 1],
                vec![1, 0, 4, 2],
                vec![0, 1, 2, 3],
            ],
            |_, _| PLUS,
            vec![],
            0,
        )
        .unwrap();
        let e = g.edge_between(0, 3).unwrap();
        let f = g.edge_between(1, 2).unwrap();
        let p = planarize_crossings(&g, &[(e, f)]).unwrap();
        assert_eq!(p.nv(), 6);
        assert_eq!(p.degree(5), 4);
        let mut nbrs: Vec<usize> = p.neighbors(5).collect();
        nbrs.sort_unstable();
        assert_eq!(nbrs, vec![0, 1, 2, 3]);
    }

    #[test]
    fn planarize_zero_crossings_is_identity() {
        let g = fixtures::k4_planar();
        let p = planarize_crossings(&g, &[]).unwrap();
        assert_eq!(p, g);
    }

    #[test]
    fn self_glue_undoes_one_sided_cut() {
        let g = fixtures::k6_projective();
        let mut cyc = None;
        'outer: for a in 0..6 {
            for b in a + 1..6 {
                for c in b + 1..6 {
                    let ce = cycle_edges(&g, &[a, b, c]).unwrap();
                    if ce.iter().map(|&e| g.sign(e) as i32).product::<i32>() == -1 {
                        cyc = Some(vec![a, b, c]);
                        break 'outer;
                    }
                }
            }
        }
        let cyc = cyc.unwrap();
        let cut = cut_cycle(&g, &cyc).unwrap();
        assert_eq!(cut.rings().len(), 1);
        assert_eq!(cut.rings()[0].walk.len(), 6);
        let glued = glue_ring_self(&cut, 0).unwrap();
        assert_eq!(glued.nv(), g.nv());
        assert_eq!(glued.surface_summary().euler_genus, 1);
        assert!(crate::canon::isomorphic(&glued, &g));
    }
}
