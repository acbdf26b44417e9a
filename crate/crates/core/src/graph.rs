//! Finite connected loopless multigraphs.
//!
//! Vertices are dense indices `0..n`. Edges are kept as a symmetric matrix of
//! multiplicities, which is all the chip-firing machinery needs.

use serde::{Deserialize, Serialize};

use crate::divisor::Divisor;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Multigraph {
    n: usize,
    adjacency: Vec<u32>,
}

/// JSON form: `{"n": 3, "edges": [[0,1],[1,2],[2,0]]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

impl Multigraph {
    /// Builds a graph from an edge list; parallel edges are repeated entries.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("graph must have at least one vertex"));
        }
        let mut adjacency = vec![0u32; n * n];
        for (i, &(u, v)) in edges.iter().enumerate() {
            if u >= n || v >= n {
                return Err(Error::invalid(format!(
                    "edge {i} ({u},{v}) has an endpoint outside 0..{n}"
                )));
            }
            if u == v {
                return Err(Error::invalid(format!("edge {i} is a loop at vertex {u}")));
            }
            adjacency[u * n + v] += 1;
            adjacency[v * n + u] += 1;
        }
        Self::validated(n, adjacency)
    }

    pub fn from_adjacency(rows: Vec<Vec<u32>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::invalid("graph must have at least one vertex"));
        }
        let mut adjacency = Vec::with_capacity(n * n);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != n {
                return Err(Error::invalid(format!(
                    "adjacency row {i} has length {}, expected {n}",
                    row.len()
                )));
            }
            adjacency.extend(row);
        }
        for u in 0..n {
            if adjacency[u * n + u] != 0 {
                return Err(Error::invalid(format!("loop at vertex {u}")));
            }
            for v in 0..u {
                if adjacency[u * n + v] != adjacency[v * n + u] {
                    return Err(Error::invalid(format!("adjacency not symmetric at ({u},{v})")));
                }
            }
        }
        Self::validated(n, adjacency)
    }

    fn validated(n: usize, adjacency: Vec<u32>) -> Result<Self> {
        let g = Multigraph { n, adjacency };
        if !g.is_connected() {
            return Err(Error::invalid("graph is not connected"));
        }
        Ok(g)
    }

    fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(u) = stack.pop() {
            for v in 0..self.n {
                if !seen[v] && self.multiplicity(u, v) > 0 {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(|&m| m as usize).sum::<usize>() / 2
    }

    pub fn multiplicity(&self, u: usize, v: usize) -> u32 {
        self.adjacency[u * self.n + v]
    }

    pub fn valence(&self, v: usize) -> i64 {
        self.row(v).iter().map(|&m| i64::from(m)).sum()
    }

    pub fn row(&self, v: usize) -> &[u32] {
        &self.adjacency[v * self.n..(v + 1) * self.n]
    }

    /// Cyclomatic number |E| − |V| + 1.
    pub fn genus(&self) -> i64 {
        self.edge_count() as i64 - self.n as i64 + 1
    }

    /// K(v) = valence(v) − 2.
    pub fn canonical(&self) -> Divisor {
        Divisor::new((0..self.n).map(|v| self.valence(v) - 2).collect())
    }

    /// Edge list with `u < v`, parallel edges repeated, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for v in u + 1..self.n {
                for _ in 0..self.multiplicity(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Parses either the plain text format or the JSON format, chosen by the
    /// first non-blank character.
    pub fn parse(input: &str) -> Result<Self> {
        if input.trim_start().starts_with('{') {
            Self::from_json(input)
        } else {
            Self::from_text(input)
        }
    }

    /// `n m` on the first line, followed by `m` lines `u v`.
    pub fn from_text(input: &str) -> Result<Self> {
        let mut lines = input
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());

        let (hline, header) = lines.next().ok_or_else(|| Error::parse("line 1", "empty graph file"))?;
        let (n, m) = parse_pair(hline, header, "header `n m`")?;

        let mut edges = Vec::with_capacity(m);
        for (lineno, line) in lines.by_ref().take(m) {
            edges.push(parse_pair(lineno, line, "edge `u v`")?);
        }
        if edges.len() != m {
            return Err(Error::parse(
                "end of file",
                format!("header announces {m} edges, found {}", edges.len()),
            ));
        }
        if let Some((lineno, _)) = lines.next() {
            return Err(Error::parse(format!("line {lineno}"), "unexpected trailing content"));
        }
        Self::from_edges(n, &edges)
    }

    pub fn from_json(input: &str) -> Result<Self> {
        let raw: GraphJson = serde_json::from_str(input).map_err(|e| {
            Error::parse(format!("line {} column {}", e.line(), e.column()), e.to_string())
        })?;
        let edges: Vec<(usize, usize)> = raw.edges.iter().map(|&[u, v]| (u, v)).collect();
        Self::from_edges(raw.n, &edges)
    }

    pub fn to_text(&self) -> String {
        let edges = self.edges();
        let mut s = format!("{} {}\n", self.n, edges.len());
        for (u, v) in edges {
            s.push_str(&format!("{u} {v}\n"));
        }
        s
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            n: self.n,
            edges: self.edges().into_iter().map(|(u, v)| [u, v]).collect(),
        }
    }
}

fn parse_pair(lineno: usize, line: &str, what: &str) -> Result<(usize, usize)> {
    let loc = || format!("line {lineno}");
    let mut it = line.split_whitespace();
    let mut next = |field: &str| -> Result<usize> {
        let tok = it
            .next()
            .ok_or_else(|| Error::parse(loc(), format!("missing field `{field}` in {what}")))?;
        tok.parse()
            .map_err(|_| Error::parse(loc(), format!("field `{field}` is not a non-negative integer: {tok:?}")))
    };
    let (a, b) = if what.starts_with("header") {
        (next("n")?, next("m")?)
    } else {
        (next("u")?, next("v")?)
    };
    if it.next().is_some() {
        return Err(Error::parse(loc(), format!("too many fields in {what}")));
    }
    Ok((a, b))
}
