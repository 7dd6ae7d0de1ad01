//! Berge cycles and paths: structural validation and exact search.
//!
//! Search runs on the incidence structure. Cycles of length c correspond to
//! cycles of length 2c in the incidence graph, which pins the smallest
//! admissible length at c = 2 (two vertices on two distinct edges); the
//! degenerate one-vertex loop is rejected everywhere.
//!
//! The exact searches are depth-first with three sound prunes: cycles are
//! anchored at their lowest vertex, orientation is fixed lexicographically,
//! and a branch is cut when its vertex count plus the unvisited vertices
//! still reachable through unused edges cannot beat the incumbent. Branching
//! is vertex-major ascending, so the first witness recorded at the final
//! length is the lexicographically least one (vertex sequence, then edge
//! ids). Budgets count node expansions; an exceeded budget flags the result
//! as incomplete instead of failing.

use serde::{Deserialize, Serialize};

use crate::bits::BitSet;
use crate::hypergraph::Hypergraph;

/// Alternating vertex/edge cycle; `vertices[i]` and `vertices[i+1 mod c]`
/// both lie in `edge_ids[i]`. Both sequences have the same length c >= 2.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BergeCycle {
    pub vertices: Vec<usize>,
    pub edge_ids: Vec<usize>,
}

impl BergeCycle {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PathKind {
    /// u_0, f_0, u_1, ..., f_{l-1}, u_l: one more vertex than edges.
    Full,
    /// f_0, u_1, f_1, ..., f_{l-1}, u_l: leading edge, equal counts.
    Partial,
}

/// Berge path. For `Full` the vertex list leads; for `Partial` the first
/// edge precedes the first vertex, so both lists have equal length.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BergePath {
    pub vertices: Vec<usize>,
    pub edge_ids: Vec<usize>,
    pub kind: PathKind,
}

impl BergePath {
    /// Number of edges, the path length.
    pub fn len(&self) -> usize {
        self.edge_ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edge_ids.is_empty()
    }

    pub fn trivial(v: usize) -> Self {
        BergePath { vertices: vec![v], edge_ids: Vec::new(), kind: PathKind::Full }
    }

    pub fn first_vertex(&self) -> usize {
        self.vertices[0]
    }

    pub fn last_vertex(&self) -> usize {
        *self.vertices.last().unwrap()
    }
}

fn ids_distinct(ids: &[usize]) -> bool {
    let mut s = ids.to_vec();
    s.sort_unstable();
    s.windows(2).all(|w| w[0] != w[1])
}

/// True iff `c` is a Berge cycle of `h`.
pub fn validate_cycle(h: &Hypergraph, c: &BergeCycle) -> bool {
    let len = c.vertices.len();
    if len < 2 || c.edge_ids.len() != len {
        return false;
    }
    if c.vertices.iter().any(|&v| v >= h.n()) || c.edge_ids.iter().any(|&e| e >= h.m()) {
        return false;
    }
    if !ids_distinct(&c.vertices) || !ids_distinct(&c.edge_ids) {
        return false;
    }
    (0..len).all(|i| {
        let e = c.edge_ids[i];
        h.edge_contains(e, c.vertices[i]) && h.edge_contains(e, c.vertices[(i + 1) % len])
    })
}

/// True iff `p` is a (full or partial) Berge path of `h`.
pub fn validate_path(h: &Hypergraph, p: &BergePath) -> bool {
    let nv = p.vertices.len();
    let ne = p.edge_ids.len();
    let shape_ok = match p.kind {
        PathKind::Full => nv == ne + 1 && nv >= 1,
        PathKind::Partial => nv == ne && nv >= 1,
    };
    if !shape_ok {
        return false;
    }
    if p.vertices.iter().any(|&v| v >= h.n()) || p.edge_ids.iter().any(|&e| e >= h.m()) {
        return false;
    }
    if !ids_distinct(&p.vertices) || !ids_distinct(&p.edge_ids) {
        return false;
    }
    match p.kind {
        PathKind::Full => (0..ne).all(|i| {
            h.edge_contains(p.edge_ids[i], p.vertices[i])
                && h.edge_contains(p.edge_ids[i], p.vertices[i + 1])
        }),
        PathKind::Partial => {
            h.edge_contains(p.edge_ids[0], p.vertices[0])
                && (1..ne).all(|i| {
                    h.edge_contains(p.edge_ids[i], p.vertices[i - 1])
                        && h.edge_contains(p.edge_ids[i], p.vertices[i])
                })
        }
    }
}

/// Result of a budgeted exact search. `complete` certifies the reported
/// length is exact (the space was exhausted or an upper bound was met).
#[derive(Debug, Clone, Serialize)]
pub struct SearchOutcome {
    pub length: usize,
    pub witness: Option<BergeCycle>,
    pub complete: bool,
    pub expansions: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct PathOutcome {
    pub length: usize,
    pub witness: Option<BergePath>,
    pub complete: bool,
    pub expansions: u64,
}

/// Exact circumference: the longest Berge cycle length, 0 if none exists.
pub fn circumference(h: &Hypergraph, budget: u64) -> SearchOutcome {
    let stop_at = h.n().min(h.m());
    let mut search = CycleSearch::new(h, budget);
    search.run_best(1, stop_at);
    SearchOutcome {
        length: search.best.as_ref().map_or(0, |c| c.vertices.len()),
        witness: search.best,
        complete: !search.truncated,
        expansions: search.expansions,
    }
}

/// Is there a Berge cycle through all n vertices? Requires m >= n edges;
/// fewer edges answer `false` immediately. The search only explores
/// branches that can still reach length n.
pub fn has_hamiltonian_berge_cycle(h: &Hypergraph, budget: u64) -> SearchOutcome {
    let n = h.n();
    if h.m() < n || n < 2 {
        return SearchOutcome { length: 0, witness: None, complete: true, expansions: 0 };
    }
    let mut search = CycleSearch::new(h, budget);
    search.run_best(n - 1, n);
    SearchOutcome {
        length: search.best.as_ref().map_or(0, |c| c.vertices.len()),
        witness: search.best,
        complete: !search.truncated,
        expansions: search.expansions,
    }
}

/// Enumerate every Berge cycle of length exactly `len` (each once, as its
/// lexicographically least rotation/orientation, but every distinct edge
/// assignment separately). Returns false if the budget truncated the sweep.
pub fn for_each_cycle_of_length(
    h: &Hypergraph,
    len: usize,
    budget: u64,
    f: &mut dyn FnMut(&[usize], &[usize]),
) -> bool {
    if len < 2 {
        return true;
    }
    let mut search = CycleSearch::new(h, budget);
    search.run_emit(len, f);
    !search.truncated
}

/// Longest full Berge path by edge count; a vertex-free instance has none,
/// otherwise the trivial single-vertex path always exists.
pub fn longest_berge_path(h: &Hypergraph, budget: u64) -> PathOutcome {
    let mut search = PathSearch::new(h, budget);
    search.run();
    PathOutcome {
        length: search.best.as_ref().map_or(0, |p| p.edge_ids.len()),
        witness: search.best,
        complete: !search.truncated,
        expansions: search.expansions,
    }
}

struct CycleSearch<'a> {
    h: &'a Hypergraph,
    edges_of: Vec<Vec<usize>>,
    budget: u64,
    expansions: u64,
    truncated: bool,
    best: Option<BergeCycle>,
    best_len: usize,
    stop_at: usize,
    emit_len: usize,
    verts: Vec<usize>,
    eids: Vec<usize>,
    visited: BitSet,
    used: BitSet,
    // scratch for the reachability prune
    reach_seen: BitSet,
    reach_edge: BitSet,
}

impl<'a> CycleSearch<'a> {
    fn new(h: &'a Hypergraph, budget: u64) -> Self {
        let mut edges_of = vec![Vec::new(); h.n()];
        for (id, e) in h.edges().iter().enumerate() {
            for &v in e {
                edges_of[v].push(id);
            }
        }
        CycleSearch {
            h,
            edges_of,
            budget,
            expansions: 0,
            truncated: false,
            best: None,
            best_len: 0,
            stop_at: usize::MAX,
            emit_len: 0,
            verts: Vec::new(),
            eids: Vec::new(),
            visited: BitSet::new(h.n()),
            used: BitSet::new(h.m()),
            reach_seen: BitSet::new(h.n()),
            reach_edge: BitSet::new(h.m()),
        }
    }

    /// Best mode: track the longest cycle above `floor`, stop at `stop_at`.
    fn run_best(&mut self, floor: usize, stop_at: usize) {
        self.best_len = floor;
        self.stop_at = stop_at;
        self.emit_len = 0;
        self.run_anchors(&mut |_, _| {});
        if self.best.is_none() {
            self.best_len = 0;
        }
    }

    /// Emit mode: report every cycle of length exactly `len`.
    fn run_emit(&mut self, len: usize, f: &mut dyn FnMut(&[usize], &[usize])) {
        self.best_len = len - 1;
        self.stop_at = usize::MAX;
        self.emit_len = len;
        self.run_anchors(f);
    }

    fn done(&self) -> bool {
        self.truncated || (self.emit_len == 0 && self.best_len >= self.stop_at)
    }

    fn run_anchors(&mut self, f: &mut dyn FnMut(&[usize], &[usize])) {
        for a in 0..self.h.n() {
            if self.done() {
                return;
            }
            self.visited.clear();
            self.used.clear();
            self.verts.clear();
            self.eids.clear();
            self.visited.insert(a);
            self.verts.push(a);
            self.extend(a, a, f);
        }
    }

    fn spend(&mut self) -> bool {
        if self.expansions >= self.budget {
            self.truncated = true;
            return false;
        }
        self.expansions += 1;
        true
    }

    /// Unvisited vertices above the anchor reachable from `cur` through
    /// unused edges. Upper-bounds how much the current path can still grow.
    fn reachable(&mut self, anchor: usize, cur: usize) -> usize {
        self.reach_seen.clear();
        self.reach_edge.clear();
        let mut stack = vec![cur];
        let mut count = 0;
        while let Some(v) = stack.pop() {
            for &e in &self.edges_of[v] {
                if self.used.contains(e) || self.reach_edge.contains(e) {
                    continue;
                }
                self.reach_edge.insert(e);
                for &w in self.h.edge(e) {
                    if w > anchor && !self.visited.contains(w) && !self.reach_seen.contains(w) {
                        self.reach_seen.insert(w);
                        count += 1;
                        stack.push(w);
                    }
                }
            }
        }
        count
    }

    fn try_close(&mut self, anchor: usize, cur: usize, f: &mut dyn FnMut(&[usize], &[usize])) {
        let len = self.verts.len();
        if len < 2 {
            return;
        }
        if self.emit_len > 0 && len != self.emit_len {
            return;
        }
        if self.emit_len == 0 && len < self.best_len.max(2) {
            return;
        }
        // canonical orientation: second vertex below the last (free for 2-cycles)
        if len > 2 && self.verts[1] > self.verts[len - 1] {
            return;
        }
        for &e in &self.edges_of[anchor] {
            if self.used.contains(e) || !self.h.edge_contains(e, cur) {
                continue;
            }
            self.eids.push(e);
            if self.emit_len > 0 {
                f(&self.verts, &self.eids);
            } else {
                let better = len > self.best_len
                    || (len == self.best_len
                        && self.best.as_ref().is_some_and(|b| {
                            (&self.verts, &self.eids) < (&&b.vertices, &&b.edge_ids)
                        }));
                if len > self.best_len || self.best.is_none() || better {
                    self.best_len = len;
                    self.best =
                        Some(BergeCycle { vertices: self.verts.clone(), edge_ids: self.eids.clone() });
                }
            }
            self.eids.pop();
            if self.emit_len == 0 && self.best_len >= self.stop_at {
                return;
            }
        }
    }

    fn extend(&mut self, anchor: usize, cur: usize, f: &mut dyn FnMut(&[usize], &[usize])) {
        if !self.spend() {
            return;
        }
        self.try_close(anchor, cur, f);
        if self.done() {
            return;
        }
        let len = self.verts.len();
        let target = if self.emit_len > 0 { self.emit_len } else { self.best_len + 1 };
        if len + 1 > self.h.n().min(self.h.m()) && self.emit_len == 0 {
            return;
        }
        // cheap bound, then the reachability refinement
        if len + (self.h.n() - self.visited.count()) < target {
            return;
        }
        if len + self.reachable(anchor, cur) < target {
            return;
        }
        // closing later needs an unused edge at the anchor
        if !self.edges_of[anchor].iter().any(|&e| !self.used.contains(e)) {
            return;
        }
        // vertex-major ascending branching
        let mut steps: Vec<(usize, usize)> = Vec::new();
        for &e in &self.edges_of[cur] {
            if self.used.contains(e) {
                continue;
            }
            for &w in self.h.edge(e) {
                if w > anchor && !self.visited.contains(w) {
                    steps.push((w, e));
                }
            }
        }
        steps.sort_unstable();
        for (w, e) in steps {
            if self.done() {
                return;
            }
            self.visited.insert(w);
            self.used.insert(e);
            self.verts.push(w);
            self.eids.push(e);
            self.extend(anchor, w, f);
            self.eids.pop();
            self.verts.pop();
            self.used.remove(e);
            self.visited.remove(w);
        }
    }
}

struct PathSearch<'a> {
    h: &'a Hypergraph,
    edges_of: Vec<Vec<usize>>,
    budget: u64,
    expansions: u64,
    truncated: bool,
    best: Option<BergePath>,
    verts: Vec<usize>,
    eids: Vec<usize>,
    visited: BitSet,
    used: BitSet,
}

impl<'a> PathSearch<'a> {
    fn new(h: &'a Hypergraph, budget: u64) -> Self {
        let mut edges_of = vec![Vec::new(); h.n()];
        for (id, e) in h.edges().iter().enumerate() {
            for &v in e {
                edges_of[v].push(id);
            }
        }
        PathSearch {
            h,
            edges_of,
            budget,
            expansions: 0,
            truncated: false,
            best: None,
            verts: Vec::new(),
            eids: Vec::new(),
            visited: BitSet::new(h.n()),
            used: BitSet::new(h.m()),
        }
    }

    fn best_len(&self) -> usize {
        self.best.as_ref().map_or(0, |p| p.edge_ids.len())
    }

    fn max_possible(&self) -> usize {
        self.h.m().min(self.h.n().saturating_sub(1))
    }

    fn run(&mut self) {
        for start in 0..self.h.n() {
            if self.truncated || (self.best.is_some() && self.best_len() == self.max_possible()) {
                return;
            }
            self.visited.clear();
            self.used.clear();
            self.verts.clear();
            self.eids.clear();
            self.visited.insert(start);
            self.verts.push(start);
            self.extend(start);
        }
    }

    fn record(&mut self) {
        // a path and its reversal coincide; keep the ascending orientation
        let len = self.eids.len();
        if len >= 1 && self.verts[0] > *self.verts.last().unwrap() {
            return;
        }
        let better = match &self.best {
            None => true,
            Some(b) => {
                len > b.edge_ids.len()
                    || (len == b.edge_ids.len()
                        && (&self.verts, &self.eids) < (&&b.vertices, &&b.edge_ids))
            }
        };
        if better {
            self.best = Some(BergePath {
                vertices: self.verts.clone(),
                edge_ids: self.eids.clone(),
                kind: PathKind::Full,
            });
        }
    }

    fn extend(&mut self, cur: usize) {
        if self.expansions >= self.budget {
            self.truncated = true;
            return;
        }
        self.expansions += 1;
        self.record();
        // bound: each further edge needs a fresh vertex
        if self.eids.len() + (self.h.n() - self.visited.count()) <= self.best_len() {
            return;
        }
        let mut steps: Vec<(usize, usize)> = Vec::new();
        for &e in &self.edges_of[cur] {
            if self.used.contains(e) {
                continue;
            }
            for &w in self.h.edge(e) {
                if !self.visited.contains(w) {
                    steps.push((w, e));
                }
            }
        }
        steps.sort_unstable();
        for (w, e) in steps {
            if self.truncated {
                return;
            }
            self.visited.insert(w);
            self.used.insert(e);
            self.verts.push(w);
            self.eids.push(e);
            self.extend(w);
            self.eids.pop();
            self.verts.pop();
            self.used.remove(e);
            self.visited.remove(w);
        }
    }
}
