//! Canonical embedded instances used by tests, the corpus generator and the
//! documentation examples.

use crate::error::Result;
use crate::graph::{EGraph, MINUS, PLUS};

/// Planar K4, no rings: four triangular faces.
pub fn k4_planar() -> EGraph {
    EGraph::from_neighbor_rotations(
        4,
        vec![vec![1, 3, 2], vec![2, 3, 0], vec![0, 3, 1], vec![0, 1, 2]],
        |_, _| PLUS,
        vec![],
        0,
    )
    .expect("planar K4 fixture")
}

/// Planar K4 with the outer triangle 0,1,2 designated as a ring.
pub fn k4_disk() -> EGraph {
    EGraph::from_neighbor_rotations(
        4,
        vec![vec![1, 3, 2], vec![2, 3, 0], vec![0, 3, 1], vec![0, 1, 2]],
        |_, _| PLUS,
        vec![vec![0, 1, 2]],
        0,
    )
    .expect("K4 disk fixture")
}

/// K5 embedded with five faces, hence Euler genus 2 (torus).
pub fn k5_torus() -> EGraph {
    circulant(5, &[1, 2, 3, 4], |_| PLUS).expect("K5 torus fixture")
}

/// K6 embedded with ten triangular faces in the projective plane.
pub fn k6_projective() -> EGraph {
    circulant(6, &[1, 2, 3, 4, 5], |d| if d == 1 { MINUS } else { PLUS }).expect("K6 projective fixture")
}

/// The classical triangular embedding of K7 in the torus: 14 faces.
pub fn k7_torus() -> EGraph {
    circulant(7, &[1, 3, 2, 6, 4, 5], |_| PLUS).expect("K7 torus fixture")
}

/// Circulant rotation scheme on Z_n: vertex i sees i+d for the listed
/// differences, in that cyclic order.  `sign_of` keys off min(d, n-d).
pub fn circulant(n: usize, diffs: &[usize], sign_of: impl Fn(usize) -> i8) -> Result<EGraph> {
    let rot: Vec<Vec<usize>> = (0..n).map(|i| diffs.iter().map(|&d| (i + d) % n).collect()).collect();
    EGraph::from_neighbor_rotations(
        n,
        rot,
        |u, v| {
            let d = (v + n - u) % n;
            sign_of(d.min(n - d))
        },
        vec![],
        0,
    )
}

/// Cartesian product C_k x P_n embedded in the sphere, with the two end
/// cycles designated as rings: the standard two-ring cylinder canvas.
/// Vertex (i, j) has id j*k + i; i runs around the cycle, j along the path.
pub fn cylinder(k: usize, n: usize) -> EGraph {
    assert!(k >= 3 && n >= 2, "cylinder needs a cycle and at least two copies");
    let id = |i: usize, j: usize| j * k + i;
    let mut rot = vec![Vec::new(); k * n];
    for j in 0..n {
        for i in 0..k {
            let mut r = Vec::new();
            r.push(id((i + 1) % k, j));
            if j + 1 < n {
                r.push(id(i, j + 1));
            }
            r.push(id((i + k - 1) % k, j));
            if j > 0 {
                r.push(id(i, j - 1));
            }
            rot[id(i, j)] = r;
        }
    }
    let rings = vec![(0..k).map(|i| id(i, 0)).collect(), (0..k).map(|i| id(i, n - 1)).collect()];
    EGraph::from_neighbor_rotations(k * n, rot, |_, _| PLUS, rings, 0).expect("cylinder fixture")
}

/// C_k x C_n on the torus (the cylinder with its ends identified), no rings.
pub fn torus_grid(k: usize, n: usize) -> EGraph {
    assert!(k >= 3 && n >= 3);
    let id = |i: usize, j: usize| j * k + i;
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
    EGraph::from_neighbor_rotations(k * n, rot, |_, _| PLUS, vec![], 0).expect("torus grid fixture")
}

/// A plane cycle with the outer face as its single ring (a bare disk ring).
pub fn ring_cycle(k: usize) -> EGraph {
    assert!(k >= 3);
    let rot: Vec<Vec<usize>> = (0..k).map(|i| vec![(i + 1) % k, (i + k - 1) % k]).collect();
    EGraph::from_neighbor_rotations(k, rot, |_, _| PLUS, vec![(0..k).collect()], 0).expect("ring cycle fixture")
}

/// Wheel: ring C_k plus a hub adjacent to every ring vertex.
pub fn wheel(k: usize) -> EGraph {
    assert!(k >= 3);
    let hub = k;
    let mut rot: Vec<Vec<usize>> = (0..k).map(|i| vec![(i + 1) % k, hub, (i + k - 1) % k]).collect();
    rot.push((0..k).rev().collect());
    EGraph::from_neighbor_rotations(k + 1, rot, |_, _| PLUS, vec![(0..k).collect()], 0).expect("wheel fixture")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_embeddings_have_expected_face_counts() {
        assert_eq!(k5_torus().trace_faces().count(), 5);
        assert_eq!(k6_projective().trace_faces().count(), 10);
        assert_eq!(k7_torus().trace_faces().count(), 14);
    }

    #[test]
    fn named_embeddings_have_expected_genera() {
        assert_eq!(k4_planar().surface_summary().euler_genus, 0);
        assert_eq!(k5_torus().surface_summary().euler_genus, 2);
        assert_eq!(k6_projective().surface_summary().euler_genus, 1);
        assert_eq!(k7_torus().surface_summary().euler_genus, 2);
    }

    #[test]
    fn cylinder_is_planar_with_two_rings() {
        let g = cylinder(4, 10);
        let s = g.surface_summary();
        assert_eq!(s.euler_genus, 0);
        assert_eq!(s.ring_count, 2);
        assert_eq!(s.ring_vertex_total, 8);
        assert_eq!(g.trace_faces().count(), 38);
    }

    #[test]
    fn torus_grid_has_genus_two() {
        let g = torus_grid(4, 6);
        assert_eq!(g.surface_summary().euler_genus, 2);
    }
}
