//! Hypergraph core: storage, validation, degrees, incidence graph, and the
//! text/JSON instance formats.
//!
//! Vertices are `0..n`. Edges are vertex sets stored sorted; duplicate edge
//! sets are permitted and distinguished by index (a multi-set of edges), so
//! two edges may be equal as sets and still count as distinct edges of a
//! Berge cycle. `r = 0` marks a non-uniform instance; `r >= 2` asserts that
//! every edge has exactly `r` vertices.

use std::collections::BTreeSet;
use std::fmt;
use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::{Error, Result};

/// Structural defect reported by [`Hypergraph::validate`]. Violations are
/// data, not failures: an instance read from a file may carry several.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Violation {
    VertexOutOfRange { edge: usize, vertex: usize },
    DuplicateVertex { edge: usize, vertex: usize },
    WrongEdgeSize { edge: usize, size: usize, expected: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::VertexOutOfRange { edge, vertex } => {
                write!(f, "edge {edge}: vertex {vertex} out of range")
            }
            Violation::DuplicateVertex { edge, vertex } => {
                write!(f, "edge {edge}: vertex {vertex} repeated")
            }
            Violation::WrongEdgeSize { edge, size, expected } => {
                write!(f, "edge {edge}: {size} vertices, expected {expected}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypergraph {
    n: usize,
    r: usize,
    edges: Vec<Vec<usize>>,
}

impl Hypergraph {
    /// Build from raw edge lists. Each edge is sorted; nothing is checked,
    /// call [`validate`](Self::validate) or [`checked`](Self::checked).
    pub fn new(n: usize, r: usize, edges: Vec<Vec<usize>>) -> Self {
        let mut edges = edges;
        for e in &mut edges {
            e.sort_unstable();
        }
        Hypergraph { n, r, edges }
    }

    /// Build and require a clean [`validate`](Self::validate).
    pub fn checked(n: usize, r: usize, edges: Vec<Vec<usize>>) -> Result<Self> {
        let h = Self::new(n, r, edges);
        let v = h.validate();
        if v.is_empty() {
            Ok(h)
        } else {
            Err(Error::InvalidHypergraph(v))
        }
    }

    /// Complete r-uniform hypergraph on n vertices: every r-subset is an edge.
    pub fn complete(n: usize, r: usize) -> Self {
        use itertools::Itertools;
        let edges = (0..n).combinations(r).collect();
        Hypergraph { n, r, edges }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Declared uniformity, 0 for non-uniform instances.
    pub fn r(&self) -> usize {
        self.r
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Sorted vertex list of edge `id`.
    pub fn edge(&self, id: usize) -> &[usize] {
        &self.edges[id]
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn edge_contains(&self, id: usize, v: usize) -> bool {
        self.edges[id].binary_search(&v).is_ok()
    }

    /// All defects, in edge order. Empty result means the instance is sound.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for (id, e) in self.edges.iter().enumerate() {
            if self.r > 0 && e.len() != self.r {
                out.push(Violation::WrongEdgeSize { edge: id, size: e.len(), expected: self.r });
            }
            for w in e.windows(2) {
                if w[0] == w[1] {
                    out.push(Violation::DuplicateVertex { edge: id, vertex: w[0] });
                }
            }
            for &v in e {
                if v >= self.n {
                    out.push(Violation::VertexOutOfRange { edge: id, vertex: v });
                }
            }
        }
        out
    }

    /// Number of edges containing `v`.
    pub fn degree(&self, v: usize) -> Result<usize> {
        if v >= self.n {
            return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
        }
        Ok(self.edges.iter().filter(|e| e.binary_search(&v).is_ok()).count())
    }

    /// Minimum degree over all vertices; 0 for a vertex-free instance.
    pub fn min_degree(&self) -> usize {
        let mut deg = vec![0usize; self.n];
        for e in &self.edges {
            for &v in e {
                deg[v] += 1;
            }
        }
        deg.into_iter().min().unwrap_or(0)
    }

    /// Vertices sharing at least one edge with `v`, excluding `v` itself.
    pub fn neighborhood(&self, v: usize) -> Result<BTreeSet<usize>> {
        if v >= self.n {
            return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
        }
        let mut out = BTreeSet::new();
        for e in &self.edges {
            if e.binary_search(&v).is_ok() {
                out.extend(e.iter().copied().filter(|&u| u != v));
            }
        }
        Ok(out)
    }

    /// Bipartite incidence structure: one left node per vertex, one right
    /// node per edge, adjacency by membership.
    pub fn incidence_graph(&self) -> IncidenceGraph {
        let mut vertex_to_edges = vec![Vec::new(); self.n];
        for (id, e) in self.edges.iter().enumerate() {
            for &v in e {
                vertex_to_edges[v].push(id);
            }
        }
        IncidenceGraph { vertex_to_edges, edge_to_vertices: self.edges.clone() }
    }

    /// Canonical byte string: `n r` then lexicographically sorted edges.
    /// Stable across runs and platforms, used for hashing and dedup.
    pub fn canonical_bytes(&self) -> Vec<u8> {
        let mut sorted: Vec<&Vec<usize>> = self.edges.iter().collect();
        sorted.sort();
        let mut out = format!("{} {}\n", self.n, self.r).into_bytes();
        for e in sorted {
            let line: Vec<String> = e.iter().map(|v| v.to_string()).collect();
            out.extend(line.join(" ").into_bytes());
            out.push(b'\n');
        }
        out
    }

    /// Hex SHA-256 prefix of the canonical form.
    pub fn instance_hash(&self) -> String {
        let digest = Sha256::digest(self.canonical_bytes());
        digest.iter().take(8).map(|b| format!("{b:02x}")).collect()
    }

    /// Parse the text format: `#` comment lines, then `n m r`, then `m`
    /// whitespace-separated vertex lines. Errors carry 1-based line numbers.
    pub fn read_text(reader: impl BufRead) -> Result<Self> {
        let mut header: Option<(usize, usize, usize)> = None;
        let mut edges: Vec<Vec<usize>> = Vec::new();
        let mut last_line = 0;
        for (idx, line) in reader.lines().enumerate() {
            let lineno = idx + 1;
            last_line = lineno;
            let line = line?;
            let body = line.trim();
            if body.is_empty() || body.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = body.split_whitespace().collect();
            let nums: Vec<usize> = fields
                .iter()
                .map(|f| {
                    f.parse::<usize>().map_err(|_| Error::Parse {
                        line: lineno,
                        msg: format!("expected a non-negative integer, got `{f}`"),
                    })
                })
                .collect::<Result<_>>()?;
            match header {
                None => {
                    if nums.len() != 3 {
                        return Err(Error::Parse {
                            line: lineno,
                            msg: format!("header must be `n m r`, got {} fields", nums.len()),
                        });
                    }
                    header = Some((nums[0], nums[1], nums[2]));
                }
                Some((_, m, _)) => {
                    if edges.len() == m {
                        return Err(Error::Parse {
                            line: lineno,
                            msg: format!("more than the declared {m} edges"),
                        });
                    }
                    if nums.is_empty() {
                        return Err(Error::Parse { line: lineno, msg: "empty edge".into() });
                    }
                    edges.push(nums);
                }
            }
        }
        let (n, m, r) = header.ok_or(Error::Parse { line: last_line, msg: "missing `n m r` header".into() })?;
        if edges.len() != m {
            return Err(Error::Parse {
                line: last_line,
                msg: format!("declared {m} edges, found {}", edges.len()),
            });
        }
        let h = Hypergraph::new(n, r, edges);
        let violations = h.validate();
        if let Some(v) = violations.first() {
            // Edge k sits k+1 data lines after the header; report roughly.
            return Err(Error::Parse { line: 0, msg: format!("invalid instance: {v}") });
        }
        Ok(h)
    }

    pub fn write_text(&self, mut w: impl Write, comments: &[String]) -> Result<()> {
        for c in comments {
            writeln!(w, "# {c}")?;
        }
        writeln!(w, "{} {} {}", self.n, self.edges.len(), self.r)?;
        for e in &self.edges {
            let line: Vec<String> = e.iter().map(|v| v.to_string()).collect();
            writeln!(w, "{}", line.join(" "))?;
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&HypergraphJson {
            n: self.n,
            r: self.r,
            edges: self.edges.clone(),
        })
        .expect("serialize")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let raw: HypergraphJson = serde_json::from_str(s)?;
        Hypergraph::checked(raw.n, raw.r, raw.edges)
    }

    /// Read either format: a leading `{` selects JSON, anything else text.
    pub fn read_str(s: &str) -> Result<Self> {
        if s.trim_start().starts_with('{') {
            Self::from_json(s)
        } else {
            Self::read_text(s.as_bytes())
        }
    }
}

#[derive(Serialize, Deserialize)]
struct HypergraphJson {
    n: usize,
    r: usize,
    edges: Vec<Vec<usize>>,
}

/// Bipartite incidence graph of a hypergraph. Left nodes are vertices,
/// right nodes are edge ids; both adjacency directions are kept sorted.
#[derive(Debug, Clone)]
pub struct IncidenceGraph {
    vertex_to_edges: Vec<Vec<usize>>,
    edge_to_vertices: Vec<Vec<usize>>,
}

impl IncidenceGraph {
    pub fn n_vertices(&self) -> usize {
        self.vertex_to_edges.len()
    }

    pub fn n_edges(&self) -> usize {
        self.edge_to_vertices.len()
    }

    /// Edge ids incident to vertex `v`, ascending.
    pub fn edges_of(&self, v: usize) -> &[usize] {
        &self.vertex_to_edges[v]
    }

    /// Vertices of edge `id`, ascending.
    pub fn vertices_of(&self, id: usize) -> &[usize] {
        &self.edge_to_vertices[id]
    }

    /// Inverse of [`Hypergraph::incidence_graph`].
    pub fn to_hypergraph(&self, r: usize) -> Hypergraph {
        Hypergraph::new(self.vertex_to_edges.len(), r, self.edge_to_vertices.clone())
    }

    /// Flatten to a simple graph on `n + m` nodes: vertex `v` is node `v`,
    /// edge `id` is node `n + id`. Connectivity of a hypergraph is defined
    /// as connectivity of this graph.
    pub fn to_graph(&self) -> crate::graph::Graph {
        let n = self.n_vertices();
        let total = n + self.n_edges();
        let mut g = crate::graph::Graph::empty(total);
        for (id, verts) in self.edge_to_vertices.iter().enumerate() {
            for &v in verts {
                g.add_edge(v, n + id);
            }
        }
        g
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k5_3() -> Hypergraph {
        Hypergraph::complete(5, 3)
    }

    #[test]
    fn complete_graph_counts() {
        let h = k5_3();
        assert_eq!(h.m(), 10);
        // every vertex lies in C(4,2) triples
        for v in 0..5 {
            assert_eq!(h.degree(v).unwrap(), 6);
        }
        assert_eq!(h.min_degree(), 6);
    }

    #[test]
    fn validate_reports_each_defect() {
        let h = Hypergraph::new(3, 3, vec![vec![0, 1, 2], vec![0, 1, 1], vec![0, 5, 1], vec![0, 1]]);
        let v = h.validate();
        assert!(v.contains(&Violation::DuplicateVertex { edge: 1, vertex: 1 }));
        assert!(v.contains(&Violation::VertexOutOfRange { edge: 2, vertex: 5 }));
        assert!(v.contains(&Violation::WrongEdgeSize { edge: 3, size: 2, expected: 3 }));
        assert_eq!(v.len(), 3);
    }

    #[test]
    fn non_uniform_skips_size_check() {
        let h = Hypergraph::new(4, 0, vec![vec![0, 1], vec![0, 1, 2, 3]]);
        assert!(h.validate().is_empty());
    }

    #[test]
    fn duplicate_edge_sets_are_distinct_edges() {
        let h = Hypergraph::checked(3, 3, vec![vec![0, 1, 2], vec![2, 1, 0]]).unwrap();
        assert_eq!(h.m(), 2);
        assert_eq!(h.edge(0), h.edge(1));
        assert_eq!(h.degree(0).unwrap(), 2);
    }

    #[test]
    fn isolated_vertex_zeroes_min_degree() {
        let h = Hypergraph::new(4, 3, vec![vec![0, 1, 2]]);
        assert_eq!(h.min_degree(), 0);
    }

    #[test]
    fn degree_out_of_range_is_an_error() {
        let h = k5_3();
        assert!(matches!(h.degree(5), Err(Error::VertexOutOfRange { vertex: 5, n: 5 })));
    }

    #[test]
    fn neighborhood_excludes_self() {
        let h = Hypergraph::new(5, 3, vec![vec![0, 1, 2], vec![2, 3, 4]]);
        let nb = h.neighborhood(2).unwrap();
        assert_eq!(nb.into_iter().collect::<Vec<_>>(), vec![0, 1, 3, 4]);
        let nb0 = h.neighborhood(0).unwrap();
        assert_eq!(nb0.into_iter().collect::<Vec<_>>(), vec![1, 2]);
    }

    #[test]
    fn incidence_round_trip() {
        let h = Hypergraph::new(6, 3, vec![vec![0, 1, 2], vec![1, 2, 3], vec![3, 4, 5]]);
        let inc = h.incidence_graph();
        assert_eq!(inc.edges_of(1), &[0, 1]);
        assert_eq!(inc.edges_of(5), &[2]);
        let back = inc.to_hypergraph(3);
        assert_eq!(back, h);
    }

    #[test]
    fn incidence_degrees_match() {
        // left degree = vertex degree, right degree = r
        let h = Hypergraph::complete(6, 3);
        let inc = h.incidence_graph();
        for v in 0..6 {
            assert_eq!(inc.edges_of(v).len(), h.degree(v).unwrap());
        }
        for id in 0..h.m() {
            assert_eq!(inc.vertices_of(id).len(), 3);
        }
    }

    #[test]
    fn text_round_trip() {
        let h = Hypergraph::new(5, 3, vec![vec![0, 1, 2], vec![2, 3, 4]]);
        let mut buf = Vec::new();
        h.write_text(&mut buf, &["sample".into()]).unwrap();
        let back = Hypergraph::read_text(&buf[..]).unwrap();
        assert_eq!(back, h);
    }

    #[test]
    fn text_parse_errors_carry_line_numbers() {
        let err = Hypergraph::read_text("# c\n5 2 3\n0 1 2\n0 x 4\n".as_bytes()).unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 4),
            other => panic!("unexpected {other:?}"),
        }
        let err = Hypergraph::read_text("5 2\n".as_bytes()).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
        let err = Hypergraph::read_text("5 2 3\n0 1 2\n".as_bytes()).unwrap_err();
        assert!(matches!(err, Error::Parse { .. }));
    }

    #[test]
    fn json_round_trip() {
        let h = Hypergraph::new(5, 3, vec![vec![0, 1, 2], vec![2, 3, 4]]);
        let s = h.to_json();
        let back = Hypergraph::from_json(&s).unwrap();
        assert_eq!(back, h);
        let sniffed = Hypergraph::read_str(&s).unwrap();
        assert_eq!(sniffed, h);
    }

    #[test]
    fn empty_hypergraph_is_valid() {
        let h = Hypergraph::new(0, 3, vec![]);
        assert!(h.validate().is_empty());
        assert_eq!(h.min_degree(), 0);
    }

    #[test]
    fn canonical_hash_ignores_edge_order() {
        let a = Hypergraph::new(5, 3, vec![vec![0, 1, 2], vec![2, 3, 4]]);
        let b = Hypergraph::new(5, 3, vec![vec![4, 3, 2], vec![2, 1, 0]]);
        assert_eq!(a.instance_hash(), b.instance_hash());
        let c = Hypergraph::new(5, 3, vec![vec![0, 1, 3], vec![2, 3, 4]]);
        assert_ne!(a.instance_hash(), c.instance_hash());
    }
}
