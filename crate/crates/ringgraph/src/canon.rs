//! Canonical forms for embedded graphs with rings, up to embedding
//! isomorphism (relabeling, vertex flips, reflection) with ring
//! correspondence.  The code is a flag-rooted BFS labeling minimised over
//! all starting flags; two graphs are isomorphic iff their codes agree.

use std::collections::BTreeMap;

use crate::graph::{EGraph, Vertex};

/// Canonical code.  Opaque; compare for equality or order.
pub type Code = Vec<i64>;

const TOKEN_NEW: i64 = -1;
const TOKEN_END: i64 = -2;

/// Code of one component from one starting flag.
fn component_code_from(
    g: &EGraph,
    root: Vertex,
    root_slot: usize,
    root_dir: i8,
    comp_vertices: &[Vertex],
) -> Code {
    let mut label = vec![usize::MAX; g.nv()];
    // per labeled vertex: (entry half-edge, reading direction, potential)
    let mut entry = vec![(usize::MAX, 1i8, 1i8); g.nv()];
    label[root] = 0;
    let root_entry = if g.degree(root) > 0 { g.rotation(root)[root_slot] } else { usize::MAX };
    entry[root] = (root_entry, root_dir, 1);
    let mut order = vec![root];
    let mut next_label = 1usize;
    let mut code = Vec::new();
    let mut qi = 0;
    while qi < order.len() {
        let v = order[qi];
        qi += 1;
        let (ent, dir, pot) = entry[v];
        let deg = g.degree(v);
        code.push(deg as i64);
        if deg == 0 {
            code.push(TOKEN_END);
            continue;
        }
        let rot = g.rotation(v);
        let start = rot.iter().position(|&h| h == ent).unwrap();
        for k in 0..deg {
            let idx = (start as i64 + dir as i64 * k as i64).rem_euclid(deg as i64) as usize;
            let h = rot[idx];
            let e = h / 2;
            let u = g.he_other(h);
            if label[u] == usize::MAX {
                label[u] = next_label;
                next_label += 1;
                let pot_u = pot * g.sign(e);
                entry[u] = (h ^ 1, dir, pot_u);
                order.push(u);
                code.push(TOKEN_NEW);
            } else {
                let (_, _, pot_u) = entry[u];
                let s = pot * pot_u * g.sign(e);
                code.push((2 * label[u]) as i64 + i64::from(s < 0));
            }
        }
        code.push(TOKEN_END);
    }
    debug_assert_eq!(order.len(), comp_vertices.len());
    // ring data in label space
    let mut ring_codes: Vec<Vec<i64>> = Vec::new();
    for r in g.rings() {
        if label[r.walk[0]] == usize::MAX {
            continue;
        }
        let w: Vec<i64> = r.walk.iter().map(|&v| label[v] as i64).collect();
        ring_codes.push(canonical_cycle(&w));
    }
    ring_codes.sort();
    code.push(TOKEN_END);
    code.push(ring_codes.len() as i64);
    for rc in ring_codes {
        code.push(rc.len() as i64);
        code.extend(rc);
    }
    code
}

fn canonical_cycle(w: &[i64]) -> Vec<i64> {
    let m = w.len();
    if m <= 2 {
        let mut v = w.to_vec();
        v.sort_unstable();
        return v;
    }
    let mut best: Option<Vec<i64>> = None;
    for s in 0..m {
        for dir in [1i64, -1] {
            let cand: Vec<i64> = (0..m).map(|i| w[(s as i64 + dir * i as i64).rem_euclid(m as i64) as usize]).collect();
            if best.as_ref().map_or(true, |b| cand < *b) {
                best = Some(cand);
            }
        }
    }
    best.unwrap()
}

/// Canonical code of the whole embedded graph with rings.
pub fn canonical_code(g: &EGraph) -> Code {
    let (comp, n) = g.components();
    let mut members: Vec<Vec<Vertex>> = vec![Vec::new(); n];
    for v in 0..g.nv() {
        members[comp[v]].push(v);
    }
    let mut comp_codes: Vec<Code> = Vec::new();
    for verts in &members {
        let mut best: Option<Code> = None;
        for &root in verts {
            let deg = g.degree(root);
            let slots: Vec<usize> = if deg == 0 { vec![0] } else { (0..deg).collect() };
            for slot in slots {
                for dir in [1i8, -1] {
                    let c = component_code_from(g, root, slot, dir, verts);
                    if best.as_ref().map_or(true, |b| c < *b) {
                        best = Some(c);
                    }
                }
            }
        }
        comp_codes.push(best.unwrap());
    }
    comp_codes.sort();
    let mut code = vec![g.genus_surplus() as i64, n as i64];
    for c in comp_codes {
        code.push(c.len() as i64);
        code.extend(c);
    }
    code
}

pub fn isomorphic(a: &EGraph, b: &EGraph) -> bool {
    if a.nv() != b.nv() || a.ne() != b.ne() || a.rings().len() != b.rings().len() {
        return false;
    }
    canonical_code(a) == canonical_code(b)
}

/// Canonical code for an embedded graph together with per-vertex color
/// lists (used for corpus deduplication of canvases).  Lists enter the
/// component code through a relabeling of colors in first-use order, so two
/// canvases match iff they agree up to embedding isomorphism plus a color
/// bijection.
pub fn canonical_code_with_lists(g: &EGraph, lists: &[u64]) -> Code {
    let (comp, n) = g.components();
    let mut members: Vec<Vec<Vertex>> = vec![Vec::new(); n];
    for v in 0..g.nv() {
        members[comp[v]].push(v);
    }
    let mut comp_codes: Vec<Code> = Vec::new();
    for verts in &members {
        let mut best: Option<Code> = None;
        for &root in verts {
            let deg = g.degree(root);
            let slots: Vec<usize> = if deg == 0 { vec![0] } else { (0..deg).collect() };
            for slot in slots {
                for dir in [1i8, -1] {
                    let mut c = component_code_from(g, root, slot, dir, verts);
                    c.extend(list_code_from(g, root, slot, dir, lists));
                    if best.as_ref().map_or(true, |b| c < *b) {
                        best = Some(c);
                    }
                }
            }
        }
        comp_codes.push(best.unwrap());
    }
    comp_codes.sort();
    let mut code = vec![g.genus_surplus() as i64, n as i64];
    for c in comp_codes {
        code.push(c.len() as i64);
        code.extend(c);
    }
    code
}

/// The per-vertex lists in BFS order with colors renamed in first-use
/// order; must iterate exactly like `component_code_from`.
fn list_code_from(g: &EGraph, root: Vertex, root_slot: usize, root_dir: i8, lists: &[u64]) -> Code {
    let mut label = vec![usize::MAX; g.nv()];
    let mut entry = vec![(usize::MAX, 1i8); g.nv()];
    label[root] = 0;
    let root_entry = if g.degree(root) > 0 { g.rotation(root)[root_slot] } else { usize::MAX };
    entry[root] = (root_entry, root_dir);
    let mut order = vec![root];
    let mut qi = 0;
    while qi < order.len() {
        let v = order[qi];
        qi += 1;
        let (ent, dir) = entry[v];
        let deg = g.degree(v);
        if deg == 0 {
            continue;
        }
        let rot = g.rotation(v);
        let start = rot.iter().position(|&h| h == ent).unwrap();
        for k in 0..deg {
            let idx = (start as i64 + dir as i64 * k as i64).rem_euclid(deg as i64) as usize;
            let h = rot[idx];
            let u = g.he_other(h);
            if label[u] == usize::MAX {
                label[u] = order.len();
                entry[u] = (h ^ 1, dir);
                order.push(u);
            }
        }
    }
    let mut rename: BTreeMap<u8, i64> = BTreeMap::new();
    let mut code = Vec::new();
    for &v in &order {
        let mut colors: Vec<u8> = (0..64).filter(|&c| lists[v] & (1u64 << c) != 0).collect();
        colors.sort_unstable();
        code.push(colors.len() as i64);
        for c in colors {
            let next = rename.len() as i64;
            let t = *rename.entry(c).or_insert(next);
            code.push(t);
        }
    }
    code
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::graph::PLUS;

    #[test]
    fn relabeled_torus_grids_are_isomorphic() {
        let a = fixtures::torus_grid(4, 5);
        // same grid built with shifted ids
        let k = 4;
        let n = 5;
        let id = |i: usize, j: usize| ((j + 2) % n) * k + ((i + 1) % k);
        let mut rot = vec![Vec::new(); k * n];
        for j in 0..n {
            for i in 0..k {
                rot[id(i, j)] = vec![
                    id((i + 1) % k, j),
                    id(i, (j + 1) % n),
                    id((i + k - 1) % k, j),
                    id(i, (j + n - 1) % n),
                ];
            }
        }
        let b = EGraph::from_neighbor_rotations(k * n, rot, |_, _| PLUS, vec![], 0).unwrap();
        assert!(isomorphic(&a, &b));
    }

    #[test]
    fn different_genus_embeddings_differ() {
        let cyl = fixtures::cylinder(4, 4);
        let grid = fixtures::torus_grid(4, 4);
        assert!(!isomorphic(&cyl, &grid));
    }

    #[test]
    fn mirror_images_are_identified() {
        let g = fixtures::k7_torus();
        let m = g.mirrored().unwrap();
        assert!(isomorphic(&g, &m));
    }

    #[test]
    fn ring_designation_matters() {
        let with_rings = fixtures::cylinder(4, 4);
        let walks: Vec<Vec<usize>> = Vec::new();
        let without = EGraph::new(
            with_rings.nv(),
            with_rings.edges().to_vec(),
            (0..with_rings.nv()).map(|v| with_rings.rotation(v).to_vec()).collect(),
            (0..with_rings.ne()).map(|e| with_rings.sign(e)).collect(),
            walks,
            0,
        )
        .unwrap();
        assert!(!isomorphic(&with_rings, &without));
    }
}
