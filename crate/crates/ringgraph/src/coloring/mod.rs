//! List coloring: bitset lists, a deterministic MRV backtracking solver,
//! exact extension counting, criticality, kernels, and the closed-form
//! coloring bounds.

pub mod bounds;
pub mod critical;

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graph::{EGraph, Edge, Vertex};

pub use bounds::{
    check_exp_lower_bounds, check_property_p1, check_property_p2_witness, check_strong_linear, deficiency,
    ExpBoundReport, StrongLinearReport,
};
pub use critical::{extract_kernel, is_critical, is_exp_critical, KernelResult};

/// Per-vertex color lists as bitsets; the color universe is 0..63.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ListAssignment {
    masks: Vec<u64>,
}

impl ListAssignment {
    pub fn from_lists(lists: &[Vec<u8>]) -> Result<ListAssignment> {
        let mut masks = Vec::with_capacity(lists.len());
        for (v, l) in lists.iter().enumerate() {
            let mut m = 0u64;
            for &c in l {
                if c >= 64 {
                    return Err(Error::validation("color-universe", format!("color {c} at vertex {v}")));
                }
                m |= 1 << c;
            }
            masks.push(m);
        }
        Ok(ListAssignment { masks })
    }

    pub fn uniform(n: usize, colors: &[u8]) -> ListAssignment {
        let mut m = 0u64;
        for &c in colors {
            m |= 1 << c;
        }
        ListAssignment { masks: vec![m; n] }
    }

    pub fn len(&self) -> usize {
        self.masks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.masks.is_empty()
    }

    pub fn mask(&self, v: Vertex) -> u64 {
        self.masks[v]
    }

    pub fn masks(&self) -> &[u64] {
        &self.masks
    }

    pub fn size(&self, v: Vertex) -> u32 {
        self.masks[v].count_ones()
    }

    pub fn colors(&self, v: Vertex) -> Vec<u8> {
        (0..64).filter(|&c| self.masks[v] & (1 << c) != 0).collect()
    }

    /// Every list nonempty on the given vertex set.
    pub fn all_nonempty(&self, vertices: impl Iterator<Item = Vertex>) -> bool {
        let mut vs = vertices;
        vs.all(|v| self.masks[v] != 0)
    }
}

/// A total coloring (by original vertex id over the active set).
pub type Coloring = BTreeMap<Vertex, u8>;

/// Which canvas class a list assignment puts an embedded graph in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ListClass {
    /// 5-lists everywhere off the rings
    List5,
    /// 4-lists, every triangle is a ring
    List4TriangleFree,
    /// 3-lists, every cycle of length at most 4 is a ring
    List3Girth5,
    Other,
}

/// Canvas class test: k-lists off the rings plus "every cycle of length at
/// most 7-k equals a ring".  Reports the largest applicable k.
pub fn classify_assignment(g: &EGraph, l: &ListAssignment) -> ListClass {
    let ring_vertices = g.ring_vertices();
    let min_nonring = (0..g.nv())
        .filter(|v| !ring_vertices.contains(v))
        .map(|v| l.size(v))
        .min()
        .unwrap_or(u32::MAX);
    if min_nonring >= 5 {
        return ListClass::List5;
    }
    if min_nonring >= 4 && short_cycles_are_rings(g, 3) {
        return ListClass::List4TriangleFree;
    }
    if min_nonring >= 3 && short_cycles_are_rings(g, 4) {
        return ListClass::List3Girth5;
    }
    ListClass::Other
}

/// True iff every cycle of length at most `cap` is (the cycle of) a ring.
pub fn short_cycles_are_rings(g: &EGraph, cap: usize) -> bool {
    let ring_cycles: Vec<BTreeSet<Vertex>> = g
        .rings()
        .iter()
        .filter(|r| r.is_cycle())
        .map(|r| r.walk.iter().copied().collect())
        .collect();
    let mut ok = true;
    enumerate_short_cycles(g, cap, &mut |cyc| {
        let set: BTreeSet<Vertex> = cyc.iter().copied().collect();
        if !ring_cycles.iter().any(|rc| *rc == set && rc.len() == cyc.len()) {
            ok = false;
        }
        ok
    });
    ok
}

/// Call `f` on every simple cycle with at most `cap` vertices (vertex sets
/// enumerated once, smallest-vertex rooted); stop when `f` returns false.
pub fn enumerate_short_cycles(g: &EGraph, cap: usize, f: &mut dyn FnMut(&[Vertex]) -> bool) {
    fn dfs(
        g: &EGraph,
        root: Vertex,
        v: Vertex,
        cap: usize,
        path: &mut Vec<Vertex>,
        on: &mut Vec<bool>,
        f: &mut dyn FnMut(&[Vertex]) -> bool,
    ) -> bool {
        for u in g.neighbors(v).collect::<Vec<_>>() {
            if u == root && path.len() >= 3 {
                // canonical direction: second vertex smaller than last
                if path[1] < path[path.len() - 1] && !f(path) {
                    return false;
                }
            }
            if u <= root || on[u] || path.len() >= cap {
                continue;
            }
            path.push(u);
            on[u] = true;
            let cont = dfs(g, root, u, cap, path, on, f);
            path.pop();
            on[u] = false;
            if !cont {
                return false;
            }
        }
        true
    }
    for root in 0..g.nv() {
        let mut path = vec![root];
        let mut on = vec![false; g.nv()];
        on[root] = true;
        if !dfs(g, root, root, cap, &mut path, &mut on, f) {
            return;
        }
    }
}

/// A coloring instance: the active vertices of a (sub)graph with their
/// adjacency and list masks.
#[derive(Debug, Clone)]
pub struct ColorProblem {
    pub active: Vec<Vertex>,
    index: BTreeMap<Vertex, usize>,
    adj: Vec<Vec<usize>>,
    masks: Vec<u64>,
}

impl ColorProblem {
    pub fn new(g: &EGraph, l: &ListAssignment) -> ColorProblem {
        let vertices: BTreeSet<Vertex> = (0..g.nv()).collect();
        let edges: BTreeSet<Edge> = (0..g.ne()).collect();
        ColorProblem::on_subgraph(g, l, &vertices, &edges)
    }

    pub fn on_subgraph(
        g: &EGraph,
        l: &ListAssignment,
        vertices: &BTreeSet<Vertex>,
        edges: &BTreeSet<Edge>,
    ) -> ColorProblem {
        let active: Vec<Vertex> = vertices.iter().copied().collect();
        let index: BTreeMap<Vertex, usize> = active.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut adj = vec![Vec::new(); active.len()];
        for &e in edges {
            let (u, v) = g.edge_ends(e);
            let (iu, iv) = (index[&u], index[&v]);
            adj[iu].push(iv);
            adj[iv].push(iu);
        }
        let masks = active.iter().map(|&v| l.mask(v)).collect();
        ColorProblem { active, index, adj, masks }
    }

    fn domains_with(&self, pre: &Coloring) -> Result<Vec<u64>> {
        let mut dom = self.masks.clone();
        for (&v, &c) in pre {
            let i = *self
                .index
                .get(&v)
                .ok_or_else(|| Error::precondition("precoloring-domain", format!("vertex {v} not in instance")))?;
            if dom[i] & (1 << c) == 0 {
                return Err(Error::precondition(
                    "precoloring-respects-lists",
                    format!("color {c} not in the list of vertex {v}"),
                ));
            }
            dom[i] = 1 << c;
        }
        // propagate and check properness of the precoloring itself
        for (&v, &c) in pre {
            let i = self.index[&v];
            for &j in &self.adj[i] {
                let u = self.active[j];
                if let Some(&cu) = pre.get(&u) {
                    if cu == c && u > v {
                        return Err(Error::precondition(
                            "precoloring-proper",
                            format!("adjacent vertices {v} and {u} share color {c}"),
                        ));
                    }
                }
            }
        }
        Ok(dom)
    }

    /// Deterministic backtracking solve: minimum-remaining-values vertex
    /// selection with lowest-id tie break, colors ascending.
    pub fn solve(&self, pre: &Coloring) -> Result<Option<Coloring>> {
        let mut dom = self.domains_with(pre)?;
        let mut fixed: Vec<Option<u8>> = vec![None; self.active.len()];
        for (&v, &c) in pre {
            fixed[self.index[&v]] = Some(c);
        }
        let mut assignment = fixed.clone();
        if self.solve_rec(&mut dom, &mut assignment) {
            let out = self
                .active
                .iter()
                .enumerate()
                .map(|(i, &v)| (v, assignment[i].unwrap()))
                .collect();
            Ok(Some(out))
        } else {
            Ok(None)
        }
    }

    fn solve_rec(&self, dom: &mut Vec<u64>, assignment: &mut Vec<Option<u8>>) -> bool {
        // MRV over unassigned
        let mut pick = usize::MAX;
        let mut best = u32::MAX;
        for i in 0..self.active.len() {
            if assignment[i].is_none() {
                let sz = dom[i].count_ones();
                if sz == 0 {
                    return false;
                }
                if sz < best {
                    best = sz;
                    pick = i;
                }
            }
        }
        if pick == usize::MAX {
            return true;
        }
        let mut avail = dom[pick];
        while avail != 0 {
            let c = avail.trailing_zeros() as u8;
            avail &= avail - 1;
            let saved: Vec<(usize, u64)> = self.adj[pick].iter().map(|&j| (j, dom[j])).collect();
            assignment[pick] = Some(c);
            let old_dom = dom[pick];
            dom[pick] = 1 << c;
            let mut ok = true;
            for &j in &self.adj[pick] {
                if assignment[j].is_none() {
                    dom[j] &= !(1 << c);
                    if dom[j] == 0 {
                        ok = false;
                    }
                } else if assignment[j] == Some(c) {
                    ok = false;
                }
            }
            if ok && self.solve_rec(dom, assignment) {
                return true;
            }
            assignment[pick] = None;
            dom[pick] = old_dom;
            for (j, m) in saved {
                dom[j] = m;
            }
        }
        false
    }

    /// Exact number of proper list colorings extending `pre`.
    pub fn count(&self, pre: &Coloring) -> Result<BigUint> {
        let mut dom = self.domains_with(pre)?;
        let mut fixed: Vec<bool> = vec![false; self.active.len()];
        for &v in pre.keys() {
            fixed[self.index[&v]] = true;
        }
        // eliminate colored vertices: strip their color from neighbors
        for i in 0..self.active.len() {
            if fixed[i] {
                let c = dom[i];
                for &j in &self.adj[i].clone() {
                    if !fixed[j] {
                        dom[j] &= !c;
                    }
                }
            }
        }
        let todo: Vec<usize> = (0..self.active.len()).filter(|&i| !fixed[i]).collect();
        Ok(self.count_rec(&todo, &dom))
    }

    fn count_rec(&self, todo: &[usize], dom: &[u64]) -> BigUint {
        // free vertices (no uncolored neighbor among todo) factor out
        let todo_set: BTreeSet<usize> = todo.iter().copied().collect();
        let mut factor = BigUint::one();
        let mut rest: Vec<usize> = Vec::new();
        for &i in todo {
            if self.adj[i].iter().all(|j| !todo_set.contains(j)) {
                let k = dom[i].count_ones();
                if k == 0 {
                    return BigUint::zero();
                }
                factor *= BigUint::from(k);
            } else {
                rest.push(i);
            }
        }
        if rest.is_empty() {
            return factor;
        }
        // split into connected components of the remaining instance
        let rest_set: BTreeSet<usize> = rest.iter().copied().collect();
        let mut seen: BTreeSet<usize> = BTreeSet::new();
        let mut product = factor;
        for &s in &rest {
            if seen.contains(&s) {
                continue;
            }
            let mut comp = vec![s];
            seen.insert(s);
            let mut qi = 0;
            while qi < comp.len() {
                let v = comp[qi];
                qi += 1;
                for &u in &self.adj[v] {
                    if rest_set.contains(&u) && seen.insert(u) {
                        comp.push(u);
                    }
                }
            }
            product *= self.count_component(&comp, dom);
            if product.is_zero() {
                return product;
            }
        }
        product
    }

    fn count_component(&self, comp: &[usize], dom: &[u64]) -> BigUint {
        // branch on the MRV vertex of the component
        let &pick = comp
            .iter()
            .min_by_key(|&&i| (dom[i].count_ones(), i))
            .expect("nonempty component");
        let rest: Vec<usize> = comp.iter().copied().filter(|&i| i != pick).collect();
        let mut total = BigUint::zero();
        let mut avail = dom[pick];
        while avail != 0 {
            let c = avail.trailing_zeros();
            avail &= avail - 1;
            let mut dom2 = dom.to_vec();
            let mut dead = false;
            for &j in &self.adj[pick] {
                if rest.contains(&j) {
                    dom2[j] &= !(1u64 << c);
                    if dom2[j] == 0 {
                        dead = true;
                        break;
                    }
                }
            }
            if !dead {
                total += self.count_rec(&rest, &dom2);
            }
        }
        total
    }

    /// Visit every proper list coloring extending `pre`.
    pub fn for_each_solution(&self, pre: &Coloring, f: &mut dyn FnMut(&Coloring) -> bool) -> Result<()> {
        let mut dom = self.domains_with(pre)?;
        let mut assignment: Vec<Option<u8>> = vec![None; self.active.len()];
        for (&v, &c) in pre {
            assignment[self.index[&v]] = Some(c);
        }
        self.enumerate_rec(&mut dom, &mut assignment, f);
        Ok(())
    }

    fn enumerate_rec(
        &self,
        dom: &mut Vec<u64>,
        assignment: &mut Vec<Option<u8>>,
        f: &mut dyn FnMut(&Coloring) -> bool,
    ) -> bool {
        let mut pick = usize::MAX;
        let mut best = u32::MAX;
        for i in 0..self.active.len() {
            if assignment[i].is_none() {
                let sz = dom[i].count_ones();
                if sz == 0 {
                    return true;
                }
                if sz < best {
                    best = sz;
                    pick = i;
                }
            }
        }
        if pick == usize::MAX {
            let out: Coloring = self
                .active
                .iter()
                .enumerate()
                .map(|(i, &v)| (v, assignment[i].unwrap()))
                .collect();
            return f(&out);
        }
        let mut avail = dom[pick];
        while avail != 0 {
            let c = avail.trailing_zeros() as u8;
            avail &= avail - 1;
            let saved: Vec<(usize, u64)> = self.adj[pick].iter().map(|&j| (j, dom[j])).collect();
            assignment[pick] = Some(c);
            let old = dom[pick];
            dom[pick] = 1 << c;
            let mut ok = true;
            for &j in &self.adj[pick] {
                if assignment[j].is_none() {
                    dom[j] &= !(1 << c);
                } else if assignment[j] == Some(c) {
                    ok = false;
                }
            }
            let cont = !ok || self.enumerate_rec(dom, assignment, f);
            assignment[pick] = None;
            dom[pick] = old;
            for (j, m) in saved {
                dom[j] = m;
            }
            if !cont {
                return false;
            }
        }
        true
    }
}

/// Solve on the whole graph.
pub fn solve(g: &EGraph, l: &ListAssignment, pre: &Coloring) -> Result<Option<Coloring>> {
    ColorProblem::new(g, l).solve(pre)
}

/// Exact extension count on the whole graph.
pub fn count_extensions(g: &EGraph, l: &ListAssignment, pre: &Coloring) -> Result<BigUint> {
    ColorProblem::new(g, l).count(pre)
}

/// The union-of-rings subgraph.
pub fn ring_subgraph(g: &EGraph) -> (BTreeSet<Vertex>, BTreeSet<Edge>) {
    (g.ring_vertices(), g.ring_edges())
}

/// A canvas: an embedded graph with rings plus a list assignment whose
/// ring union is colorable.
#[derive(Debug, Clone)]
pub struct Canvas {
    pub graph: EGraph,
    pub lists: ListAssignment,
}

impl Canvas {
    pub fn new(graph: EGraph, lists: ListAssignment) -> Result<Canvas> {
        if lists.len() != graph.nv() {
            return Err(Error::validation("lists-arity", "one list per vertex required"));
        }
        if !lists.all_nonempty(0..graph.nv()) {
            return Err(Error::validation("list-nonempty", "every list must be nonempty"));
        }
        let (rv, re) = ring_subgraph(&graph);
        if !rv.is_empty() {
            let prob = ColorProblem::on_subgraph(&graph, &lists, &rv, &re);
            if prob.solve(&Coloring::new())?.is_none() {
                return Err(Error::validation("ring-uncolorable", "the union of rings is not L-colorable"));
            }
        }
        Ok(Canvas { graph, lists })
    }
}

/// All proper list colorings of the ring union, in deterministic order.
/// Errors with a resource budget violation if the product of ring list
/// sizes exceeds `budget`.
pub fn ring_colorings(g: &EGraph, l: &ListAssignment, budget: u64) -> Result<Vec<Coloring>> {
    let (rv, re) = ring_subgraph(g);
    let mut space = 1u128;
    for &v in &rv {
        space = space.saturating_mul(l.size(v) as u128);
        if space > budget as u128 {
            return Err(Error::resource(format!(
                "ring coloring space exceeds budget {budget}"
            )));
        }
    }
    let prob = ColorProblem::on_subgraph(g, l, &rv, &re);
    let mut out = Vec::new();
    prob.for_each_solution(&Coloring::new(), &mut |c| {
        out.push(c.clone());
        true
    })?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn path3() -> EGraph {
        EGraph::from_neighbor_rotations(3, vec![vec![1], vec![0, 2], vec![1]], |_, _| 1, vec![], 0).unwrap()
    }

    fn triangle() -> EGraph {
        fixtures::ring_cycle(3)
    }

    #[test]
    fn triangle_with_distinct_pairs_has_a_coloring() {
        let g = triangle();
        let l = ListAssignment::from_lists(&[vec![1, 2], vec![2, 3], vec![1, 3]]).unwrap();
        let c = solve(&g, &l, &Coloring::new()).unwrap().unwrap();
        assert_eq!(c.len(), 3);
        // proper and list-respecting
        for i in 0..3 {
            assert!(l.colors(i).contains(&c[&i]));
            assert_ne!(c[&i], c[&((i + 1) % 3)]);
        }
    }

    #[test]
    fn k4_with_three_colors_has_none() {
        let g = fixtures::k4_planar();
        let l = ListAssignment::uniform(4, &[1, 2, 3]);
        assert!(solve(&g, &l, &Coloring::new()).unwrap().is_none());
    }

    #[test]
    fn single_vertex_counts_its_list() {
        let g = EGraph::new(1, vec![], vec![vec![]], vec![], vec![], 0).unwrap();
        let l = ListAssignment::uniform(1, &[0, 1, 2, 3, 4]);
        assert_eq!(count_extensions(&g, &l, &Coloring::new()).unwrap(), BigUint::from(5u32));
        let l1 = ListAssignment::uniform(1, &[7]);
        let c = solve(&g, &l1, &Coloring::new()).unwrap().unwrap();
        assert_eq!(c[&0], 7);
    }

    #[test]
    fn triangle_three_colors_has_six_colorings() {
        // chromatic polynomial P(K3, 3) = 6, brute-force oracle
        let g = triangle();
        let l = ListAssignment::uniform(3, &[1, 2, 3]);
        assert_eq!(count_extensions(&g, &l, &Coloring::new()).unwrap(), BigUint::from(6u32));
        // independent brute force over all 27 assignments
        let mut brute = 0u32;
        for a in [1u8, 2, 3] {
            for b in [1u8, 2, 3] {
                for c in [1u8, 2, 3] {
                    if a != b && b != c && a != c {
                        brute += 1;
                    }
                }
            }
        }
        assert_eq!(brute, 6);
    }

    #[test]
    fn count_matches_solve_existence() {
        let g = path3();
        let l = ListAssignment::from_lists(&[vec![1], vec![1], vec![1]]).unwrap();
        assert!(count_extensions(&g, &l, &Coloring::new()).unwrap().is_zero());
        assert!(solve(&g, &l, &Coloring::new()).unwrap().is_none());
    }

    #[test]
    fn wheel_hub_interior_count() {
        // ring C4 colored with 3 distinct colors: hub keeps |L| - 3 options
        let g = fixtures::wheel(4);
        let l = ListAssignment::uniform(5, &[0, 1, 2, 3, 4]);
        let pre: Coloring = [(0usize, 0u8), (1, 1), (2, 0), (3, 2)].into_iter().collect();
        let cnt = count_extensions(&g, &l, &pre).unwrap();
        assert_eq!(cnt, BigUint::from(2u32)); // hub avoids {0,1,2}
    }

    #[test]
    fn color_permutation_invariance() {
        let g = fixtures::wheel(5);
        let l = ListAssignment::from_lists(&[
            vec![0, 1, 2],
            vec![1, 2, 3],
            vec![2, 3, 4],
            vec![0, 3, 4],
            vec![0, 1, 4],
            vec![0, 1, 2, 3, 4],
        ])
        .unwrap();
        let base = count_extensions(&g, &l, &Coloring::new()).unwrap();
        // permute colors by c -> (c + 2) mod 5
        let permuted: Vec<Vec<u8>> = (0..6).map(|v| l.colors(v).iter().map(|&c| (c + 2) % 5).collect()).collect();
        let lp = ListAssignment::from_lists(&permuted).unwrap();
        assert_eq!(count_extensions(&g, &lp, &Coloring::new()).unwrap(), base);
    }

    #[test]
    fn classify_all_fives_is_c5() {
        let g = fixtures::k4_disk();
        let l = ListAssignment::uniform(4, &[0, 1, 2, 3, 4]);
        assert_eq!(classify_assignment(&g, &l), ListClass::List5);
    }

    #[test]
    fn classify_triangle_with_four_lists_is_other() {
        let g = fixtures::k4_planar();
        let l = ListAssignment::uniform(4, &[0, 1, 2, 3]);
        assert_eq!(classify_assignment(&g, &l), ListClass::Other);
    }

    #[test]
    fn classify_girth5_three_lists() {
        let g = fixtures::ring_cycle(5);
        let l = ListAssignment::uniform(5, &[0, 1, 2]);
        assert_eq!(classify_assignment(&g, &l), ListClass::List3Girth5);
    }

    #[test]
    fn canvas_requires_colorable_rings() {
        let g = fixtures::ring_cycle(3);
        let l = ListAssignment::uniform(3, &[0, 1]);
        assert!(Canvas::new(g, l).is_err());
    }
}
