//! Closed-form coloring bounds on plane canvases: deficiency, the linear
//! isoperimetric inequality for critical disks, the exponential
//! lower bounds on extension counts, and the (P1)/(P2) predicates.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::coloring::critical::{count_ge_two_pow, is_critical, Subgraph};
use crate::coloring::{ColorProblem, Coloring, ListAssignment};
use crate::error::{Error, Result};
use crate::graph::{EGraph, Vertex};

/// A 2-connected plane graph with its outer cycle designated as the single
/// ring; returns that ring's walk.
fn outer_cycle(g: &EGraph) -> Result<Vec<Vertex>> {
    let s = g.surface_summary();
    if s.euler_genus != 0 || s.components != 1 || g.rings().len() != 1 || !g.rings()[0].is_cycle() {
        return Err(Error::precondition("not-a-plane-canvas", "need a connected plane graph with one cycle ring"));
    }
    if !is_two_connected(g) {
        return Err(Error::precondition("not-two-connected", "deficiency needs a 2-connected plane graph"));
    }
    Ok(g.rings()[0].walk.clone())
}

fn is_two_connected(g: &EGraph) -> bool {
    let n = g.nv();
    if n < 3 {
        return false;
    }
    // no cut vertex, connected
    let (_, ncomp) = g.components();
    if ncomp != 1 {
        return false;
    }
    for cut in 0..n {
        let mut seen = vec![false; n];
        seen[cut] = true;
        let start = (0..n).find(|&v| v != cut).unwrap();
        let mut stack = vec![start];
        seen[start] = true;
        let mut cnt = 1;
        while let Some(v) = stack.pop() {
            for u in g.neighbors(v).collect::<Vec<_>>() {
                if !seen[u] {
                    seen[u] = true;
                    cnt += 1;
                    stack.push(u);
                }
            }
        }
        if cnt != n - 1 {
            return false;
        }
    }
    true
}

/// def(G) = |C| - 3 - sum over internal faces of (|f| - 3).
pub fn deficiency(g: &EGraph) -> Result<i64> {
    let c = outer_cycle(g)?;
    let faces = g.trace_faces();
    let ring_face = g.rings()[0].face;
    let mut sum = 0i64;
    for (fid, w) in faces.walks.iter().enumerate() {
        if fid == ring_face {
            continue;
        }
        sum += w.len() as i64 - 3;
    }
    Ok(c.len() as i64 - 3 - sum)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrongLinearReport {
    pub interior_vertices: usize,
    pub face_excess: usize,
    pub ring_length: usize,
    pub pass: bool,
}

/// The linear isoperimetric inequality for C-critical plane canvases with
/// 5-lists: |V - V(C)| / 18 + sum(|f| - 3) <= |C| - 4, checked exactly by
/// clearing the denominator.
pub fn check_strong_linear(g: &EGraph, l: &ListAssignment, budget: u64) -> Result<StrongLinearReport> {
    let c = outer_cycle(g)?;
    if !is_critical(g, &Subgraph::rings(g), l, budget)? {
        return Err(Error::precondition("not-critical", "instance is not C-critical"));
    }
    let faces = g.trace_faces();
    let ring_face = g.rings()[0].face;
    let face_excess: usize = faces
        .walks
        .iter()
        .enumerate()
        .filter(|&(fid, _)| fid != ring_face)
        .map(|(_, w)| w.len() - 3)
        .sum();
    let interior = g.nv() - c.len();
    let lhs = interior as i64 + 18 * face_excess as i64;
    let rhs = 18 * (c.len() as i64 - 4);
    Ok(StrongLinearReport { interior_vertices: interior, face_excess, ring_length: c.len(), pass: lhs <= rhs })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpBoundReport {
    pub extensions: BigUint,
    pub interior_vertices: usize,
    pub ring_length: usize,
    /// log2 E >= (n - 19(|C|-3)) / 9, always asserted
    pub many_disc_pass: bool,
    /// log2 E >= n / 9 for |C| <= 4, unless the four-cycle has a universal
    /// interior neighbor; None when not applicable
    pub four_cycle_pass: Option<bool>,
}

impl ExpBoundReport {
    pub fn pass(&self) -> bool {
        self.many_disc_pass && self.four_cycle_pass.unwrap_or(true)
    }
}

/// Exponential lower bounds on the number of extensions of a ring coloring
/// of a plane canvas, exact integer comparisons after clearing
/// denominators.
pub fn check_exp_lower_bounds(g: &EGraph, l: &ListAssignment, phi: &Coloring) -> Result<ExpBoundReport> {
    let c = outer_cycle(g)?;
    let prob = ColorProblem::new(g, l);
    let count = prob.count(phi)?;
    if count.is_zero() {
        return Err(Error::precondition("phi-does-not-extend", "the ring coloring has no extension"));
    }
    let n = g.nv() - c.len();
    // ExpManyDisc: E^9 >= 2^(n - 19(|C|-3))
    let many_num = n as i128 - 19 * (c.len() as i128 - 3);
    let many_disc_pass = count_ge_two_pow(&count, many_num, 9);
    // ExpFourCycle for |C| <= 4
    let four_cycle_pass = if c.len() <= 4 {
        let exception = c.len() == 4 && {
            let cset: BTreeSet<Vertex> = c.iter().copied().collect();
            (0..g.nv()).any(|v| !cset.contains(&v) && cset.iter().all(|&u| g.edge_between(u, v).is_some()))
        };
        if exception {
            None
        } else {
            Some(count_ge_two_pow(&count, n as i128, 9))
        }
    } else {
        None
    };
    Ok(ExpBoundReport {
        extensions: count,
        interior_vertices: n,
        ring_length: c.len(),
        many_disc_pass,
        four_cycle_pass,
    })
}

/// Property (P1) primitive: the number of distinct L-colorings of the
/// cycle that extend to the (planar) graph; the property asks for >= 5.
pub fn check_property_p1(g: &EGraph, l: &ListAssignment, cycle: &[Vertex]) -> Result<(u64, bool)> {
    let s = g.surface_summary();
    if s.euler_genus != 0 {
        return Err(Error::precondition("not-planar", "(P1) applies to planar subgraphs"));
    }
    crate::surgery::cycle_edges(g, cycle)?;
    let cyc_vertices: BTreeSet<Vertex> = cycle.iter().copied().collect();
    let cyc_edges: BTreeSet<usize> = (0..cycle.len())
        .map(|i| g.edge_between(cycle[i], cycle[(i + 1) % cycle.len()]).unwrap())
        .collect();
    let cyc_prob = ColorProblem::on_subgraph(g, l, &cyc_vertices, &cyc_edges);
    let full = ColorProblem::new(g, l);
    let mut extendable = 0u64;
    cyc_prob.for_each_solution(&Coloring::new(), &mut |phi| {
        if full.solve(phi).map(|o| o.is_some()).unwrap_or(false) {
            extendable += 1;
        }
        true
    })?;
    Ok((extendable, extendable >= 5))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct P2Report {
    pub j1_size: usize,
    pub j2_size: usize,
    pub size_bound_pass: bool,
    pub transfer_pass: bool,
}

/// Property (P2) witness check on a cylindrical excision G' with boundary
/// cycles C1, C2 and candidate absorbers J1, J2: disjointness, the size
/// bound |V(J_i)| <= gamma |V(C_i)| (gamma = 20), and the extension
/// transfer (every coloring of C1 ∪ C2 extending to J1 ∪ J2 extends
/// to G'), exhaustively.
pub fn check_property_p2_witness(
    gprime: &EGraph,
    c1: &[Vertex],
    c2: &[Vertex],
    j1: &Subgraph,
    j2: &Subgraph,
    l: &ListAssignment,
    gamma: usize,
) -> Result<P2Report> {
    if !j1.vertices.is_disjoint(&j2.vertices) {
        return Err(Error::precondition("p2-witness", "J1 and J2 must be disjoint"));
    }
    for (c, j) in [(c1, j1), (c2, j2)] {
        for &v in c {
            if !j.vertices.contains(&v) {
                return Err(Error::precondition("p2-witness", "C_i must be a subgraph of J_i"));
            }
        }
    }
    let size_bound_pass = j1.vertices.len() <= gamma * c1.len() && j2.vertices.len() <= gamma * c2.len();
    // colorings of C1 ∪ C2
    let mut cv: BTreeSet<Vertex> = c1.iter().copied().collect();
    cv.extend(c2.iter().copied());
    let mut ce: BTreeSet<usize> = BTreeSet::new();
    for c in [c1, c2] {
        for i in 0..c.len() {
            ce.insert(gprime.edge_between(c[i], c[(i + 1) % c.len()]).unwrap());
        }
    }
    let c_prob = ColorProblem::on_subgraph(gprime, l, &cv, &ce);
    let jv: BTreeSet<Vertex> = j1.vertices.union(&j2.vertices).copied().collect();
    let je: BTreeSet<usize> = j1.edges.union(&j2.edges).copied().collect();
    let j_prob = ColorProblem::on_subgraph(gprime, l, &jv, &je);
    let full = ColorProblem::new(gprime, l);
    let mut transfer_pass = true;
    c_prob.for_each_solution(&Coloring::new(), &mut |phi| {
        let ext_j = j_prob.solve(phi).map(|o| o.is_some()).unwrap_or(false);
        if ext_j {
            let ext_g = full.solve(phi).map(|o| o.is_some()).unwrap_or(false);
            if !ext_g {
                transfer_pass = false;
                return false;
            }
        }
        true
    })?;
    Ok(P2Report { j1_size: j1.vertices.len(), j2_size: j2.vertices.len(), size_bound_pass, transfer_pass })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn deficiency_of_bare_triangle_is_zero() {
        let g = fixtures::ring_cycle(3);
        assert_eq!(deficiency(&g).unwrap(), 0);
    }

    #[test]
    fn deficiency_of_c4_with_chord_is_one() {
        // outer C4 = ring, one chord: two triangular internal faces
        let g = EGraph::from_neighbor_rotations(
            4,
            vec![vec![1, 2, 3], vec![2, 0], vec![3, 0, 1], vec![0, 2]],
            |_, _| 1,
            vec![vec![0, 1, 2, 3]],
            0,
        )
        .unwrap();
        assert_eq!(deficiency(&g).unwrap(), 1);
    }

    #[test]
    fn deficiency_of_bare_c5_is_zero() {
        let g = fixtures::ring_cycle(5);
        assert_eq!(deficiency(&g).unwrap(), 0);
    }

    #[test]
    fn exp_bounds_on_ring_alone_are_vacuous() {
        let g = fixtures::ring_cycle(5);
        let l = ListAssignment::uniform(5, &[0, 1, 2, 3, 4]);
        let phi: Coloring = (0..5).map(|v| (v, [0u8, 1, 0, 1, 2][v])).collect();
        let rep = check_exp_lower_bounds(&g, &l, &phi).unwrap();
        assert!(rep.pass());
        assert_eq!(rep.extensions, BigUint::from(1u8));
    }

    #[test]
    fn exp_bounds_wheel_four() {
        let g = fixtures::wheel(4);
        let l = ListAssignment::uniform(5, &[0, 1, 2, 3, 4]);
        let phi: Coloring = [(0usize, 0u8), (1, 1), (2, 0), (3, 1)].into_iter().collect();
        let rep = check_exp_lower_bounds(&g, &l, &phi).unwrap();
        // hub adjacent to all of C4: the four-cycle exception path
        assert!(rep.four_cycle_pass.is_none());
        assert!(rep.many_disc_pass);
    }

    #[test]
    fn p1_on_k4_disk_with_five_lists() {
        let g = fixtures::k4_disk();
        let l = ListAssignment::uniform(4, &[0, 1, 2, 3, 4]);
        let (count, pass) = check_property_p1(&g, &l, &[0, 1, 2]).unwrap();
        assert!(pass, "only {count} extendable colorings");
    }

    #[test]
    fn p2_trivial_witness_on_empty_cylinder() {
        let g = fixtures::cylinder(4, 2);
        let l = ListAssignment::uniform(8, &[0, 1, 2, 3, 4]);
        let c1: Vec<usize> = (0..4).collect();
        let c2: Vec<usize> = (4..8).collect();
        let j1 = Subgraph {
            vertices: c1.iter().copied().collect(),
            edges: (0..4).map(|i| g.edge_between(c1[i], c1[(i + 1) % 4]).unwrap()).collect(),
        };
        let j2 = Subgraph {
            vertices: c2.iter().copied().collect(),
            edges: (0..4).map(|i| g.edge_between(c2[i], c2[(i + 1) % 4]).unwrap()).collect(),
        };
        let rep = check_property_p2_witness(&g, &c1, &c2, &j1, &j2, &l, 20).unwrap();
        assert!(rep.size_bound_pass);
        assert!(rep.transfer_pass);
    }

    #[test]
    fn p2_size_bound_violation_detected() {
        let g = fixtures::cylinder(4, 2);
        let l = ListAssignment::uniform(8, &[0, 1, 2, 3, 4]);
        let c1: Vec<usize> = (0..4).collect();
        let c2: Vec<usize> = (4..8).collect();
        let j1 = Subgraph {
            vertices: c1.iter().copied().collect(),
            edges: (0..4).map(|i| g.edge_between(c1[i], c1[(i + 1) % 4]).unwrap()).collect(),
        };
        let j2 = Subgraph {
            vertices: c2.iter().copied().collect(),
            edges: (0..4).map(|i| g.edge_between(c2[i], c2[(i + 1) % 4]).unwrap()).collect(),
        };
        let rep = check_property_p2_witness(&g, &c1, &c2, &j1, &j2, &l, 0).unwrap();
        assert!(!rep.size_bound_pass);
    }
}
