//! DIMACS-like edge lists for induced subgraphs.
//!
//! ```text
//! c <free-form comment>
//! p edge <V> <E>
//! e <u> <v>
//! ```
//!
//! Vertex ids are `rank + 1` in the ambient graph, so `V = k^n`. Every edge is written
//! once with `u < v`, sorted ascending by `(u, v)`.

use std::collections::HashSet;
use std::io::Write;

use crate::construction::{self, SetSpec};
use crate::error::{Error, Result};
use crate::hamming::{rank_of, GraphParams};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeList {
    pub vertex_count: u64,
    pub edges: Vec<(u64, u64)>,
}

impl EdgeList {
    pub fn parse(text: &str) -> Result<EdgeList> {
        let mut header: Option<(u64, u64)> = None;
        let mut edges = Vec::new();
        let mut seen = HashSet::new();
        for (lineno, line) in text.lines().enumerate() {
            let err = |msg: String| Error::Parse(format!("line {}: {msg}", lineno + 1));
            let mut fields = line.split_ascii_whitespace();
            match fields.next() {
                None | Some("c") => continue,
                Some("p") => {
                    if header.is_some() {
                        return Err(err("second problem line".into()));
                    }
                    if fields.next() != Some("edge") {
                        return Err(err("expected `p edge V E`".into()));
                    }
                    let v = parse_id(fields.next(), &err)?;
                    let e = parse_id(fields.next(), &err)?;
                    if fields.next().is_some() {
                        return Err(err("trailing fields on problem line".into()));
                    }
                    header = Some((v, e));
                    edges.reserve(e.min(1 << 16) as usize);
                }
                Some("e") => {
                    let (vertex_count, _) = header.ok_or_else(|| err("edge before problem line".into()))?;
                    let u = parse_id(fields.next(), &err)?;
                    let v = parse_id(fields.next(), &err)?;
                    if fields.next().is_some() {
                        return Err(err("trailing fields on edge line".into()));
                    }
                    if u == 0 || v > vertex_count || u >= v {
                        return Err(err(format!("edge {u} {v} needs 1 <= u < v <= {vertex_count}")));
                    }
                    if !seen.insert((u, v)) {
                        return Err(err(format!("duplicate edge {u} {v}")));
                    }
                    edges.push((u, v));
                }
                Some(other) => return Err(err(format!("unknown line type {other:?}"))),
            }
        }
        let (vertex_count, edge_count) = header.ok_or_else(|| Error::Parse("missing problem line".into()))?;
        if edges.len() as u64 != edge_count {
            return Err(Error::Parse(format!(
                "problem line declares {edge_count} edges, found {}",
                edges.len()
            )));
        }
        Ok(EdgeList { vertex_count, edges })
    }

    pub fn write(&self, out: &mut (impl Write + ?Sized), comment: Option<&str>) -> std::io::Result<()> {
        if let Some(c) = comment {
            writeln!(out, "c {c}")?;
        }
        writeln!(out, "p edge {} {}", self.vertex_count, self.edges.len())?;
        for (u, v) in &self.edges {
            writeln!(out, "e {u} {v}")?;
        }
        Ok(())
    }
}

fn parse_id(field: Option<&str>, err: &impl Fn(String) -> Error) -> Result<u64> {
    let field = field.ok_or_else(|| err("missing field".into()))?;
    if !field.bytes().all(|b| b.is_ascii_digit()) {
        return Err(err(format!("bad integer {field:?}")));
    }
    field.parse().map_err(|_| err(format!("bad integer {field:?}")))
}

/// Edges of the subgraph induced by `spec`, as `(rank+1, rank+1)` pairs sorted ascending.
pub fn induced_edges(spec: SetSpec, params: &GraphParams, workers: usize) -> Result<EdgeList> {
    let membership = spec.membership(params)?;
    let vertex_count = params.vertex_count()?;
    let k = params.k();
    let mut edges = Vec::new();
    construction::for_each_member(spec, params, workers, |v| {
        let u = rank_of(v.coords(), k);
        let mut coords = v.coords().to_vec();
        let mut higher = Vec::new();
        for i in 0..coords.len() {
            let orig = coords[i];
            for value in 0..k {
                if value == orig {
                    continue;
                }
                coords[i] = value;
                if membership.contains(&coords) {
                    let w = rank_of(&coords, k);
                    if w > u {
                        higher.push(w);
                    }
                }
            }
            coords[i] = orig;
        }
        higher.sort_unstable();
        edges.extend(higher.into_iter().map(|w| (u + 1, w + 1)));
        Ok(())
    })?;
    Ok(EdgeList { vertex_count, edges })
}
