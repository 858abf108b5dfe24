//! Disk-bounding vertex-face curves and flat separations.
//!
//! A curve alternates vertices and faces of the embedding (the radial
//! graph model): it crosses each listed face once, entering and leaving at
//! corners.  We realise curves as cycles in an augmented graph that has a
//! center vertex in every non-ring face joined to each corner through a
//! private subdivision vertex, plus a marker hub in every ring face.
//! Cutting the augmented graph along such a cycle classifies the two sides;
//! a side that is a disk containing no ring hub is a disk in Sigma and its
//! original vertices form the curve's interior.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use crate::error::{Error, Result};
use crate::graph::{EGraph, Face, Vertex, PLUS};
use crate::surgery::{raw_cut, CutBoundary};

/// Alternating vertex/face closed sequence; `steps[i].face` lies between
/// `steps[i].vertex` and `steps[i+1].vertex`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Curve {
    pub steps: Vec<CurveStep>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CurveStep {
    pub vertex: Vertex,
    pub face: Face,
}

impl Curve {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn vertices(&self) -> Vec<Vertex> {
        self.steps.iter().map(|s| s.vertex).collect()
    }
}

/// A curve together with the interior of one disk it bounds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiskCurve {
    pub curve: Curve,
    /// vertices strictly inside the open disk (curve vertices excluded)
    pub interior: BTreeSet<Vertex>,
}

pub(crate) struct RadialAug {
    pub graph: EGraph,
    pub n_orig: usize,
    pub hubs: Vec<Vertex>,
    /// center vertex per non-ring face
    pub center_of: BTreeMap<Face, Vertex>,
    /// sub vertex -> (original vertex, face)
    pub sub_info: BTreeMap<Vertex, (Vertex, Face)>,
}

pub(crate) fn radial_augment(g: &EGraph) -> RadialAug {
    let faces = g.trace_faces();
    let ring_faces: BTreeSet<Face> = g.rings().iter().map(|r| r.face).collect();
    let n = g.nv();
    let mut edges = g.edges().to_vec();
    let mut sign: Vec<i8> = (0..g.ne()).map(|e| g.sign(e)).collect();
    let mut rot: Vec<Vec<usize>> = (0..n).map(|v| g.rotation(v).to_vec()).collect();
    let mut next_id = n;
    let mut hubs = Vec::new();
    let mut center_of = BTreeMap::new();
    let mut sub_info = BTreeMap::new();
    // insertions[v]: (slot, half-edge) pairs to splice after slot
    let mut insertions: BTreeMap<Vertex, Vec<(usize, usize)>> = BTreeMap::new();
    let mut isolated_attach: BTreeMap<Vertex, usize> = BTreeMap::new();

    for r in g.rings() {
        let hub = next_id;
        next_id += 1;
        hubs.push(hub);
        let mut hub_rot = Vec::new();
        for &v in &r.walk {
            let e = edges.len();
            edges.push((hub, v));
            sign.push(PLUS);
            hub_rot.push(2 * e);
            if g.degree(v) == 0 {
                isolated_attach.insert(v, 2 * e + 1);
            } else {
                let corner = faces.corner_face[v].iter().position(|&f| f == r.face).expect("ring corner");
                insertions.entry(v).or_default().push((corner, 2 * e + 1));
            }
        }
        rot.push(hub_rot);
    }
    for (fid, corners) in faces.face_corners.iter().enumerate() {
        if ring_faces.contains(&fid) {
            continue;
        }
        if let Some(v) = faces.walks[fid].isolated {
            // вeртex face of a non-ring isolated vertex
            let center = next_id;
            next_id += 1;
            center_of.insert(fid, center);
            let sub = next_id;
            next_id += 1;
            sub_info.insert(sub, (v, fid));
            let e_cs = edges.len();
            edges.push((center, sub));
            sign.push(PLUS);
            let e_sv = edges.len();
            edges.push((sub, v));
            sign.push(PLUS);
            rot.push(vec![2 * e_cs]); // center
            rot.push(vec![2 * e_cs + 1, 2 * e_sv]); // sub
            isolated_attach.insert(v, 2 * e_sv + 1);
            continue;
        }
        let center = next_id;
        next_id += 1;
        center_of.insert(fid, center);
        let mut center_rot = Vec::new();
        let mut sub_rots = Vec::new();
        for &(v, slot) in corners {
            let sub = next_id;
            next_id += 1;
            sub_info.insert(sub, (v, fid));
            let e_cs = edges.len();
            edges.push((center, sub));
            sign.push(PLUS);
            let e_sv = edges.len();
            edges.push((sub, v));
            sign.push(PLUS);
            center_rot.push(2 * e_cs);
            sub_rots.push(vec![2 * e_cs + 1, 2 * e_sv]);
            insertions.entry(v).or_default().push((slot, 2 * e_sv + 1));
        }
        rot.push(center_rot);
        for sr in sub_rots {
            rot.push(sr);
        }
    }
    // splice insertions into original rotations
    for v in 0..n {
        if g.degree(v) == 0 {
            if let Some(he) = isolated_attach.get(&v) {
                rot[v] = vec![*he];
            }
            continue;
        }
        if let Some(ins) = insertions.get(&v) {
            let old = g.rotation(v);
            let mut by_slot: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
            for &(slot, he) in ins {
                by_slot.entry(slot).or_default().push(he);
            }
            let mut r = Vec::with_capacity(old.len() + ins.len());
            for (i, &he) in old.iter().enumerate() {
                r.push(he);
                if let Some(added) = by_slot.get(&i) {
                    r.extend(added.iter().copied());
                }
            }
            rot[v] = r;
        }
    }
    let graph = EGraph::new(next_id, edges, rot, sign, Vec::new(), 0).expect("radial augmentation is valid");
    RadialAug { graph, n_orig: n, hubs, center_of, sub_info }
}

/// The disk sides of a realised curve cycle: interiors of sides that are
/// disks avoiding every ring hub.
fn disk_sides(aug: &RadialAug, cyc: &[Vertex], xset: &BTreeSet<Vertex>) -> Vec<BTreeSet<Vertex>> {
    let cut = match raw_cut(&aug.graph, cyc) {
        Ok(c) => c,
        Err(_) => return Vec::new(),
    };
    let (near, far) = match cut.boundary {
        CutBoundary::OneSided { .. } => return Vec::new(),
        CutBoundary::TwoSided { near, far } => (near, far),
    };
    let (comp, ncomp) = cut.graph.components();
    if comp[near[0]] == comp[far[0]] {
        return Vec::new();
    }
    let genera = cut.graph.component_genera();
    let mut members: Vec<Vec<Vertex>> = vec![Vec::new(); ncomp];
    for v in 0..cut.graph.nv() {
        members[comp[v]].push(v);
    }
    let mut out = Vec::new();
    for side in [&near, &far] {
        let k = comp[side[0]];
        if genera[k] != 0 {
            continue;
        }
        if aug.hubs.iter().any(|&h| comp[h] == k) {
            continue;
        }
        let interior: BTreeSet<Vertex> = members[k]
            .iter()
            .copied()
            .filter(|&v| v < aug.n_orig && !xset.contains(&v))
            .collect();
        out.push(interior);
    }
    out
}

/// Enumerate all simple disk-bounding curves with at most `max_len`
/// vertices, each paired with the interior of a disk side.  A curve
/// bounding disks on both sides appears once per side.
pub fn enumerate_disk_curves(g: &EGraph, max_len: usize) -> Result<Vec<DiskCurve>> {
    if max_len < 2 {
        return Err(Error::precondition("curve-length", "curves have at least two vertices"));
    }
    let aug = radial_augment(g);
    let mut seen: HashSet<Vec<Vertex>> = HashSet::new();
    let mut out = Vec::new();

    // DFS over alternating orig/center cycles in the augmented graph.
    // Canonical start: the minimum original vertex on the curve.
    for v0 in 0..g.nv() {
        let mut stack_path: Vec<Vertex> = vec![v0]; // aug vertices incl subs/centers
        let mut faces_used: BTreeSet<Vertex> = BTreeSet::new();
        let mut verts_used: BTreeSet<Vertex> = BTreeSet::new();
        verts_used.insert(v0);
        dfs_curves(
            g,
            &aug,
            v0,
            v0,
            1,
            max_len,
            &mut stack_path,
            &mut faces_used,
            &mut verts_used,
            &mut seen,
            &mut out,
        );
    }
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn dfs_curves(
    g: &EGraph,
    aug: &RadialAug,
    v0: Vertex,
    v: Vertex,
    nx: usize,
    max_len: usize,
    path: &mut Vec<Vertex>,
    faces_used: &mut BTreeSet<Vertex>,
    verts_used: &mut BTreeSet<Vertex>,
    seen: &mut HashSet<Vec<Vertex>>,
    out: &mut Vec<DiskCurve>,
) {
    // moves: v -> sub -> center -> sub' -> v'
    for &he in aug.graph.rotation(v) {
        let s = aug.graph.he_other(he);
        if !aug.sub_info.contains_key(&s) {
            continue;
        }
        let (_, f) = aug.sub_info[&s];
        let center = aug.center_of[&f];
        if faces_used.contains(&center) {
            continue;
        }
        for &he2 in aug.graph.rotation(center) {
            let s2 = aug.graph.he_other(he2);
            if s2 == s {
                continue;
            }
            let (v2, _) = aug.sub_info[&s2];
            if v2 == v0 {
                if nx < 2 {
                    continue;
                }
                // close the cycle
                let mut cyc = path.clone();
                cyc.extend([s, center, s2]);
                let key = canonical_curve_key(&cyc);
                if seen.insert(key) {
                    let xset: BTreeSet<Vertex> = cyc.iter().copied().filter(|&x| x < aug.n_orig).collect();
                    for interior in disk_sides(aug, &cyc, &xset) {
                        out.push(DiskCurve { curve: curve_from_aug_cycle(aug, &cyc), interior });
                    }
                }
                continue;
            }
            if v2 < v0 || verts_used.contains(&v2) || nx >= max_len {
                continue;
            }
            path.extend([s, center, s2, v2]);
            faces_used.insert(center);
            verts_used.insert(v2);
            dfs_curves(g, aug, v0, v2, nx + 1, max_len, path, faces_used, verts_used, seen, out);
            verts_used.remove(&v2);
            faces_used.remove(&center);
            path.truncate(path.len() - 4);
        }
    }
}

/// Orientation-independent key: the smaller of the two traversal
/// directions, anchored at the starting vertex.
fn canonical_curve_key(cyc: &[Vertex]) -> Vec<Vertex> {
    let mut rev = cyc.to_vec();
    rev[1..].reverse();
    if *cyc <= rev[..] {
        cyc.to_vec()
    } else {
        rev
    }
}

fn curve_from_aug_cycle(aug: &RadialAug, cyc: &[Vertex]) -> Curve {
    let mut steps = Vec::new();
    let mut i = 0;
    while i < cyc.len() {
        let v = cyc[i];
        let center = cyc[(i + 2) % cyc.len()];
        let face = *aug
            .center_of
            .iter()
            .find(|&(_, &c)| c == center)
            .map(|(f, _)| f)
            .expect("center face");
        steps.push(CurveStep { vertex: v, face });
        i += 4;
    }
    Curve { steps }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FlatWitness {
    /// The whole surface is a closed disk containing A.
    WholeDisk,
    Curve(DiskCurve),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlatSeparation {
    pub a: BTreeSet<Vertex>,
    pub b: BTreeSet<Vertex>,
    pub witness: FlatWitness,
}

/// Verify the separation property and search for a disk witness among the
/// enumerated disk curves (up to `max_len`, default |A∩B| + 2).
pub fn is_flat_separation(
    g: &EGraph,
    a: &BTreeSet<Vertex>,
    b: &BTreeSet<Vertex>,
    max_len: Option<usize>,
) -> Result<Option<FlatSeparation>> {
    let all: BTreeSet<Vertex> = (0..g.nv()).collect();
    let union: BTreeSet<Vertex> = a.union(b).copied().collect();
    if union != all {
        return Err(Error::precondition("not-a-separation", "A ∪ B must cover the vertex set"));
    }
    let a_only: BTreeSet<Vertex> = a.difference(b).copied().collect();
    let b_only: BTreeSet<Vertex> = b.difference(a).copied().collect();
    for &(u, v) in g.edges() {
        if (a_only.contains(&u) && b_only.contains(&v)) || (a_only.contains(&v) && b_only.contains(&u)) {
            return Ok(None);
        }
    }
    let ring_vertices = g.ring_vertices();
    if a_only.iter().any(|v| ring_vertices.contains(v)) {
        return Ok(None); // B must contain every ring vertex
    }
    // whole-surface witness for disk canvases
    let s = g.surface_summary();
    if s.euler_genus == 0 && s.ring_count == 1 && s.components == 1 {
        return Ok(Some(FlatSeparation { a: a.clone(), b: b.clone(), witness: FlatWitness::WholeDisk }));
    }
    let cap = max_len.unwrap_or_else(|| (a.intersection(b).count() + 2).max(2));
    for dc in enumerate_disk_curves(g, cap)? {
        let x: BTreeSet<Vertex> = dc.curve.vertices().into_iter().collect();
        if a_only.iter().all(|v| dc.interior.contains(v))
            && a.intersection(b).all(|v| dc.interior.contains(v) || x.contains(v))
        {
            return Ok(Some(FlatSeparation { a: a.clone(), b: b.clone(), witness: FlatWitness::Curve(dc) }));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn k4_disk_curve_through_ring_triangle_encloses_center() {
        let g = fixtures::k4_disk();
        let curves = enumerate_disk_curves(&g, 3).unwrap();
        assert!(curves.iter().any(|dc| {
            dc.curve.len() == 3
                && dc.curve.vertices().iter().all(|&v| v < 3)
                && dc.interior == BTreeSet::from([3])
        }));
    }

    #[test]
    fn cylinder_meridian_curve_is_not_disk_bounding() {
        let g = fixtures::cylinder(4, 10);
        // every enumerated curve bounds a disk by construction; check that
        // no curve through a middle copy separates the two rings
        let curves = enumerate_disk_curves(&g, 4).unwrap();
        for dc in &curves {
            let rings: Vec<BTreeSet<usize>> =
                g.rings().iter().map(|r| r.walk.iter().copied().collect()).collect();
            let inside0 = rings[0].iter().all(|v| dc.interior.contains(v));
            let inside1 = rings[1].iter().all(|v| dc.interior.contains(v));
            assert!(!inside0 && !inside1, "a disk side cannot contain a ring face");
        }
    }

    #[test]
    fn torus_has_no_short_disk_curves_enclosing_things() {
        let g = fixtures::k7_torus();
        let curves = enumerate_disk_curves(&g, 3).unwrap();
        // K7 triangulates the torus; short curves bound only empty disks
        for dc in curves {
            assert!(dc.interior.is_empty());
        }
    }

    #[test]
    fn star_separation_is_flat() {
        let g = fixtures::wheel(4);
        // A = hub + ring, B = ring: hub strictly inside the disk
        let a: BTreeSet<usize> = (0..5).collect();
        let b: BTreeSet<usize> = (0..4).collect();
        let fs = is_flat_separation(&g, &a, &b, None).unwrap();
        assert!(fs.is_some());
    }

    #[test]
    fn edge_across_separation_fails() {
        let g = fixtures::cylinder(4, 4);
        let a: BTreeSet<usize> = (0..8).collect();
        let b: BTreeSet<usize> = (4..16).collect();
        // vertices 0..4 are A-only and adjacent to 4..8 which are in A∩B: fine;
        // but 0..4 are ring vertices, so A-B contains ring vertices -> fail
        assert!(is_flat_separation(&g, &a, &b, None).unwrap().is_none());
    }
}
