//! The EGR text format.
//!
//! Line-based UTF-8, `#` starts a comment:
//!
//! ```text
//! V <n>
//! E <id> <u> <v> <sign>          sign is +1 or -1
//! R <vertex> <h1,h2,...>         rotation, cyclic; half-edge 2e is the end
//!                                of edge e at its first endpoint, 2e+1 the
//!                                other end
//! RING <v1,v2,...>               a ring face walk
//! SURPLUS <k>                    optional extra Euler genus
//! L <vertex> <c1,c2,...>         color list, consumed by the coloring side
//! ```
//!
//! Canonical serialization sorts blocks by id, starts every rotation at its
//! smallest half-edge and normalizes ring walks, so parse∘serialize is the
//! identity on canonical text.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::EGraph;

#[derive(Debug, Clone)]
pub struct ParsedCanvas {
    pub graph: EGraph,
    /// Color lists per vertex, when any `L` line was present.
    pub lists: Option<Vec<Vec<u8>>>,
}

pub fn parse_egr(text: &str) -> Result<EGraph> {
    Ok(parse_canvas(text)?.graph)
}

pub fn parse_canvas(text: &str) -> Result<ParsedCanvas> {
    let mut nv: Option<usize> = None;
    let mut edge_lines: BTreeMap<usize, (usize, usize, i8)> = BTreeMap::new();
    let mut rot_lines: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    let mut ring_walks: Vec<Vec<usize>> = Vec::new();
    let mut surplus = 0usize;
    let mut lists: BTreeMap<usize, Vec<u8>> = BTreeMap::new();

    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let mut it = content.split_whitespace();
        let tag = it.next().unwrap();
        match tag {
            "V" => {
                let n = parse_num(it.next(), line, "vertex count")?;
                if nv.replace(n).is_some() {
                    return Err(Error::parse(line, "duplicate V line"));
                }
            }
            "E" => {
                let id: usize = parse_num(it.next(), line, "edge id")?;
                let u: usize = parse_num(it.next(), line, "edge endpoint")?;
                let v: usize = parse_num(it.next(), line, "edge endpoint")?;
                let s = match it.next() {
                    Some("+1") | Some("1") | Some("+") => 1i8,
                    Some("-1") | Some("-") => -1i8,
                    Some(other) => return Err(Error::parse(line, format!("bad sign {other:?}"))),
                    None => return Err(Error::parse(line, "missing sign")),
                };
                if edge_lines.insert(id, (u, v, s)).is_some() {
                    return Err(Error::parse(line, format!("duplicate edge id {id}")));
                }
            }
            "R" => {
                let v: usize = parse_num(it.next(), line, "rotation vertex")?;
                let rest = it.next().unwrap_or("");
                let hes = parse_list(rest, line)?;
                if rot_lines.insert(v, hes).is_some() {
                    return Err(Error::parse(line, format!("duplicate rotation for vertex {v}")));
                }
            }
            "RING" => {
                let rest = it.next().ok_or_else(|| Error::parse(line, "empty RING line"))?;
                ring_walks.push(parse_list(rest, line)?);
            }
            "SURPLUS" => {
                surplus = parse_num(it.next(), line, "surplus")?;
            }
            "L" => {
                let v: usize = parse_num(it.next(), line, "list vertex")?;
                let rest = it.next().unwrap_or("");
                let colors: Vec<usize> = parse_list(rest, line)?;
                let mut cs = Vec::new();
                for c in colors {
                    if c >= 64 {
                        return Err(Error::parse(line, format!("color {c} outside the 0..63 universe")));
                    }
                    cs.push(c as u8);
                }
                if lists.insert(v, cs).is_some() {
                    return Err(Error::parse(line, format!("duplicate list for vertex {v}")));
                }
            }
            other => return Err(Error::parse(line, format!("unknown tag {other:?}"))),
        }
        if let Some(extra) = it.next() {
            return Err(Error::parse(line, format!("trailing token {extra:?}")));
        }
    }

    let nv = nv.ok_or_else(|| Error::parse(0, "missing V line"))?;
    let ne = edge_lines.len();
    if edge_lines.keys().enumerate().any(|(i, &id)| i != id) {
        return Err(Error::parse(0, "edge ids must be 0..m-1"));
    }
    let mut edges = Vec::with_capacity(ne);
    let mut sign = Vec::with_capacity(ne);
    for (_, (u, v, s)) in edge_lines {
        edges.push((u, v));
        sign.push(s);
    }
    let mut rot = vec![Vec::new(); nv];
    for (v, hes) in rot_lines {
        if v >= nv {
            return Err(Error::parse(0, format!("rotation vertex {v} out of range")));
        }
        rot[v] = hes;
    }
    let graph = EGraph::new(nv, edges, rot, sign, ring_walks, surplus)?;
    let lists_vec = if lists.is_empty() {
        None
    } else {
        let mut out = vec![Vec::new(); nv];
        for (v, cs) in lists {
            if v >= nv {
                return Err(Error::parse(0, format!("list vertex {v} out of range")));
            }
            out[v] = cs;
        }
        Some(out)
    };
    Ok(ParsedCanvas { graph, lists: lists_vec })
}

fn parse_num<T: std::str::FromStr>(tok: Option<&str>, line: usize, what: &str) -> Result<T> {
    let t = tok.ok_or_else(|| Error::parse(line, format!("missing {what}")))?;
    t.parse().map_err(|_| Error::parse(line, format!("bad {what} {t:?}")))
}

fn parse_list<T: std::str::FromStr>(s: &str, line: usize) -> Result<Vec<T>> {
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| t.parse().map_err(|_| Error::parse(line, format!("bad list entry {t:?}"))))
        .collect()
}

pub fn serialize_egr(g: &EGraph) -> Result<String> {
    serialize_canvas(g, None)
}

pub fn serialize_canvas(g: &EGraph, lists: Option<&[Vec<u8>]>) -> Result<String> {
    if g.nv() == 0 {
        return Err(Error::validation("non-null-required", "refusing to serialize the null graph"));
    }
    let mut out = String::new();
    out.push_str(&format!("V {}\n", g.nv()));
    for e in 0..g.ne() {
        let (u, v) = g.edge_ends(e);
        out.push_str(&format!("E {e} {u} {v} {}\n", if g.sign(e) > 0 { "+1" } else { "-1" }));
    }
    for v in 0..g.nv() {
        let r = g.rotation(v);
        if r.is_empty() {
            continue;
        }
        let start = r.iter().enumerate().min_by_key(|&(_, &he)| he).map(|(i, _)| i).unwrap();
        let cycled: Vec<String> = (0..r.len()).map(|i| r[(start + i) % r.len()].to_string()).collect();
        out.push_str(&format!("R {v} {}\n", cycled.join(",")));
    }
    let mut ring_lines: Vec<String> = g
        .rings()
        .iter()
        .map(|r| {
            let w = canonical_walk(&r.walk);
            w.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
        })
        .collect();
    ring_lines.sort();
    for rl in ring_lines {
        out.push_str(&format!("RING {rl}\n"));
    }
    if g.genus_surplus() > 0 {
        out.push_str(&format!("SURPLUS {}\n", g.genus_surplus()));
    }
    if let Some(ls) = lists {
        for (v, cs) in ls.iter().enumerate() {
            if cs.is_empty() {
                continue;
            }
            let mut cs = cs.clone();
            cs.sort_unstable();
            out.push_str(&format!("L {v} {}\n", cs.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")));
        }
    }
    Ok(out)
}

/// Rotate a cycle walk to start at its smallest vertex and run in the
/// lexicographically smaller direction.  K1/K2 walks are just sorted.
fn canonical_walk(walk: &[usize]) -> Vec<usize> {
    if walk.len() <= 2 {
        let mut w = walk.to_vec();
        w.sort_unstable();
        return w;
    }
    let m = walk.len();
    let pos = walk.iter().enumerate().min_by_key(|&(_, &v)| v).map(|(i, _)| i).unwrap();
    let fwd: Vec<usize> = (0..m).map(|i| walk[(pos + i) % m]).collect();
    let bwd: Vec<usize> = (0..m).map(|i| walk[(pos + m - i) % m]).collect();
    if fwd <= bwd {
        fwd
    } else {
        bwd
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn k4_round_trip_is_bit_exact() {
        let g = fixtures::k4_planar();
        let text = serialize_egr(&g).unwrap();
        let g2 = parse_egr(&text).unwrap();
        assert_eq!(serialize_egr(&g2).unwrap(), text);
        assert_eq!(g2, g);
    }

    #[test]
    fn cylinder_round_trip_is_bit_exact() {
        let g = fixtures::cylinder(4, 10);
        let text = serialize_egr(&g).unwrap();
        let g2 = parse_egr(&text).unwrap();
        assert_eq!(serialize_egr(&g2).unwrap(), text);
    }

    #[test]
    fn null_graph_is_rejected() {
        let g = EGraph::new(0, vec![], vec![], vec![], vec![], 0).unwrap();
        let err = serialize_egr(&g).unwrap_err();
        match err {
            crate::Error::Validation { name, .. } => assert_eq!(name, "non-null-required"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn minimal_isolated_ring_vertex_file() {
        let text = "V 1\nRING 0\n";
        let g = parse_egr(text).unwrap();
        assert_eq!(g.nv(), 1);
        assert_eq!(g.ne(), 0);
        assert_eq!(g.rings().len(), 1);
    }

    #[test]
    fn parse_error_carries_line_number() {
        let err = parse_egr("V 3\nE 0 0 1 ?\n").unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn lists_round_trip() {
        let text = "V 3\nE 0 0 1 +1\nE 1 1 2 +1\nR 0 0\nR 1 1,2\nR 2 3\nL 0 1,2,3\nL 2 0,5\n";
        let pc = parse_canvas(text).unwrap();
        let lists = pc.lists.unwrap();
        assert_eq!(lists[0], vec![1, 2, 3]);
        assert_eq!(lists[1], Vec::<u8>::new());
        let again = serialize_canvas(&pc.graph, Some(&lists)).unwrap();
        assert!(again.contains("L 0 1,2,3"));
        assert!(again.contains("L 2 0,5"));
    }
}
