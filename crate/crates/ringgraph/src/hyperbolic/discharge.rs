//! Discharging verifiers: the checkers verify the lemmas' conclusions
//! after testing their hypotheses exhaustively; a conclusion violation
//! would falsify the implementation, since the lemmas are theorems.

use crate::error::{Error, Result};
use crate::graph::EGraph;
use crate::hyperbolic::ViolationCertificate;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DischargeKind {
    /// disk, interior degrees >= 7: n <= k - 6
    Deg7,
    /// disk, interior degrees >= 6 with the escape clauses: n <= 9k - 48
    Deg6,
    /// rings, non-ring degrees >= 4, face-size conditions:
    /// |V| <= 20 (g + R - 2)
    Ring44,
}

impl DischargeKind {
    pub fn parse(s: &str) -> Option<DischargeKind> {
        match s {
            "deg7" => Some(DischargeKind::Deg7),
            "deg6" => Some(DischargeKind::Deg6),
            "ring44" => Some(DischargeKind::Ring44),
            _ => None,
        }
    }
}

#[derive(Debug, Clone)]
pub enum DischargeOutcome {
    Pass,
    /// vacuous pass (the lemma assumes at least one interior vertex)
    Vacuous,
    HypothesisFailure(String),
    Violation(ViolationCertificate),
}

impl DischargeOutcome {
    pub fn is_pass(&self) -> bool {
        matches!(self, DischargeOutcome::Pass | DischargeOutcome::Vacuous)
    }
}

/// A disk canvas: connected, genus 0, one cycle ring.  Returns (k, n) =
/// (boundary length, interior count).
fn disk_shape(g: &EGraph) -> Result<(usize, usize)> {
    let s = g.surface_summary();
    if s.euler_genus != 0 || s.components != 1 || s.ring_count != 1 || !g.rings()[0].is_cycle() {
        return Err(Error::precondition("not-a-disk-canvas", "need a connected disk with one cycle ring"));
    }
    let k = g.rings()[0].walk.len();
    Ok((k, g.nv() - k))
}

pub fn check_discharging(g: &EGraph, kind: DischargeKind) -> Result<DischargeOutcome> {
    match kind {
        DischargeKind::Deg7 => {
            let (k, n) = disk_shape(g)?;
            if n == 0 {
                return Ok(DischargeOutcome::Vacuous);
            }
            let ring = g.ring_vertices();
            for v in 0..g.nv() {
                if !ring.contains(&v) && g.degree(v) < 7 {
                    return Ok(DischargeOutcome::HypothesisFailure(format!(
                        "interior vertex {v} has degree {} < 7",
                        g.degree(v)
                    )));
                }
            }
            if n as i64 <= k as i64 - 6 {
                Ok(DischargeOutcome::Pass)
            } else {
                Ok(DischargeOutcome::Violation(ViolationCertificate::Discharging {
                    kind: "deg7",
                    measured: n as i64,
                    bound: k as i64 - 6,
                }))
            }
        }
        DischargeKind::Deg6 => {
            let (k, n) = disk_shape(g)?;
            if n == 0 {
                return Ok(DischargeOutcome::Vacuous);
            }
            let ring = g.ring_vertices();
            let faces = g.trace_faces();
            for v in 0..g.nv() {
                if ring.contains(&v) {
                    continue;
                }
                let deg = g.degree(v);
                if deg < 6 {
                    return Ok(DischargeOutcome::HypothesisFailure(format!(
                        "interior vertex {v} has degree {deg} < 6"
                    )));
                }
                if deg == 6 {
                    let big_face = faces.corner_face[v].iter().any(|&f| faces.walks[f].len() >= 4);
                    let big_nbr = g.neighbors(v).any(|u| g.degree(u) >= 7);
                    let ring_nbr = g.neighbors(v).any(|u| ring.contains(&u));
                    if !(big_face || big_nbr || ring_nbr) {
                        return Ok(DischargeOutcome::HypothesisFailure(format!(
                            "degree-6 interior vertex {v} has no large face, no degree-7 neighbor and no boundary neighbor"
                        )));
                    }
                }
            }
            if n as i64 <= 9 * k as i64 - 48 {
                Ok(DischargeOutcome::Pass)
            } else {
                Ok(DischargeOutcome::Violation(ViolationCertificate::Discharging {
                    kind: "deg6",
                    measured: n as i64,
                    bound: 9 * k as i64 - 48,
                }))
            }
        }
        DischargeKind::Ring44 => {
            let s = g.surface_summary();
            if s.ring_count == 0 {
                return Err(Error::precondition("no-rings", "the ring bound needs at least one ring"));
            }
            let ring_v = g.ring_vertices();
            let ring_e = g.ring_edges();
            for v in 0..g.nv() {
                if !ring_v.contains(&v) && g.degree(v) < 4 {
                    return Ok(DischargeOutcome::HypothesisFailure(format!(
                        "non-ring vertex {v} has degree {} < 4",
                        g.degree(v)
                    )));
                }
            }
            let faces = g.trace_faces();
            for (fid, w) in faces.walks.iter().enumerate() {
                match w.len() {
                    3 => {
                        if !w.arcs.iter().any(|&a| ring_e.contains(&(a / 2))) {
                            return Ok(DischargeOutcome::HypothesisFailure(format!(
                                "face {fid} of size 3 touches no ring edge"
                            )));
                        }
                    }
                    4 => {
                        let vs: Vec<usize> = w.arcs.iter().map(|&a| g.arc_tail(a)).collect();
                        let ok = vs.iter().any(|&v| g.degree(v) >= 5)
                            || vs.iter().any(|&v| ring_v.contains(&v) && g.degree(v) >= 1);
                        if !ok {
                            return Ok(DischargeOutcome::HypothesisFailure(format!(
                                "face {fid} of size 4 has no degree-5 vertex and no ring vertex"
                            )));
                        }
                    }
                    _ => {}
                }
            }
            let bound = 20 * (s.euler_genus as i64 + s.ring_vertex_total as i64 - 2);
            if (g.nv() as i64) <= bound {
                Ok(DischargeOutcome::Pass)
            } else {
                Ok(DischargeOutcome::Violation(ViolationCertificate::Discharging {
                    kind: "ring44",
                    measured: g.nv() as i64,
                    bound,
                }))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn deg7_vacuous_on_bare_disk() {
        let g = fixtures::ring_cycle(8);
        match check_discharging(&g, DischargeKind::Deg7).unwrap() {
            DischargeOutcome::Vacuous => {}
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn deg7_hypothesis_failure_on_low_degree_interior() {
        let g = fixtures::wheel(5); // hub degree 5 < 7
        match check_discharging(&g, DischargeKind::Deg7).unwrap() {
            DischargeOutcome::HypothesisFailure(_) => {}
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn ring44_on_quad_cylinder() {
        let g = fixtures::cylinder(4, 3);
        // interior degrees 4; quad faces all touch a ring vertex
        match check_discharging(&g, DischargeKind::Ring44).unwrap() {
            DischargeOutcome::Pass => {}
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn ring44_hypothesis_fails_on_deep_cylinder() {
        let g = fixtures::cylinder(4, 5);
        // middle band quads have only degree-4 non-ring vertices
        match check_discharging(&g, DischargeKind::Ring44).unwrap() {
            DischargeOutcome::HypothesisFailure(_) => {}
            other => panic!("unexpected {other:?}"),
        }
    }
}
