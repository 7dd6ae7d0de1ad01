//! Vertex connectivity and aligned path extraction.
//!
//! Connectivity of a hypergraph means connectivity of its incidence graph.
//! The computation is unit-capacity max-flow with node splitting, taking the
//! minimum of local connectivities over non-adjacent pairs; sources range
//! over the first `best + 1` nodes, which is enough because a minimum
//! separator cannot contain all of them.

use crate::graph::Graph;
use crate::hypergraph::Hypergraph;
use crate::{Error, Result};

/// Internally vertex-disjoint s-t paths in `g`, for non-adjacent s, t.
/// Node splitting: `v_in = 2v`, `v_out = 2v + 1`; interior nodes carry
/// capacity 1, endpoint capacities are effectively unbounded.
fn local_connectivity(g: &Graph, s: usize, t: usize, limit: usize) -> usize {
    let n = g.n();
    let big = n as u32 + 1;
    let mut net = FlowNet::new(2 * n);
    for v in 0..n {
        let cap = if v == s || v == t { big } else { 1 };
        net.arc(2 * v, 2 * v + 1, cap);
    }
    for u in 0..n {
        for v in g.neighbors(u) {
            net.arc(2 * u + 1, 2 * v, big);
        }
    }
    net.max_flow(2 * s + 1, 2 * t, limit as u32) as usize
}

/// Vertex connectivity of a simple graph. Complete graphs give n - 1,
/// the empty and one-node graphs give 0.
pub fn graph_vertex_connectivity(g: &Graph) -> usize {
    let n = g.n();
    if n <= 1 {
        return 0;
    }
    if g.is_complete() {
        return n - 1;
    }
    let mut best = n - 1;
    let mut s = 0;
    while s <= best && s < n {
        for t in 0..n {
            if t != s && !g.has_edge(s, t) {
                best = best.min(local_connectivity(g, s, t, best));
                if best == 0 {
                    return 0;
                }
            }
        }
        s += 1;
    }
    best
}

/// Vertex connectivity of the incidence graph of `h`.
pub fn vertex_connectivity(h: &Hypergraph) -> usize {
    graph_vertex_connectivity(&h.incidence_graph().to_graph())
}

/// Is `h` k-connected, i.e. is its incidence graph k-connected? Fast paths
/// cover the k <= 2 tests that dominate instance generation.
pub fn is_k_connected(h: &Hypergraph, k: usize) -> bool {
    if k == 0 {
        return true;
    }
    let g = h.incidence_graph().to_graph();
    match k {
        1 => g.n() >= 2 && g.is_connected(),
        2 => g.is_biconnected(),
        _ => {
            // cheap necessary bound first: kappa <= min degree
            if (0..g.n()).any(|v| g.degree(v) < k) {
                return false;
            }
            graph_vertex_connectivity(&g) >= k
        }
    }
}

/// A pair of paths from `x`: one to `z`, one to `y`, sharing only `x`,
/// each aligned with the reference path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlignedPaths {
    pub to_z: Vec<usize>,
    pub to_y: Vec<usize>,
}

/// Given a path `q` from x to y in a 2-connected graph and a target
/// `z != y`, find an x,z-path and an x,y-path meeting only in x, both
/// aligned with `q` (shared nodes keep their order along `q`). Existence
/// is guaranteed for 2-connected inputs; the search is exhaustive
/// backtracking with a node budget, returning the lexicographically least
/// pair (to_z first, then to_y) under node-sequence order.
pub fn aligned_disjoint_paths(
    g: &Graph,
    q: &[usize],
    z: usize,
    budget: u64,
) -> Result<AlignedPaths> {
    let n = g.n();
    if !g.is_biconnected() {
        return Err(Error::precondition("graph is not 2-connected"));
    }
    if q.is_empty() {
        return Err(Error::input("reference path is empty"));
    }
    if q.iter().any(|&v| v >= n) {
        return Err(Error::input("reference path leaves the vertex range"));
    }
    {
        let mut seen = vec![false; n];
        for &v in q {
            if seen[v] {
                return Err(Error::input("reference path repeats a node"));
            }
            seen[v] = true;
        }
    }
    if q.windows(2).any(|w| !g.has_edge(w[0], w[1])) {
        return Err(Error::input("reference path uses a missing edge"));
    }
    let x = q[0];
    let y = *q.last().unwrap();
    if z == y {
        return Err(Error::input("target z equals the path end y"));
    }
    if z >= n {
        return Err(Error::VertexOutOfRange { vertex: z, n });
    }

    let mut q_pos = vec![usize::MAX; n];
    for (i, &v) in q.iter().enumerate() {
        q_pos[v] = i;
    }

    let mut search = PairSearch {
        g,
        q_pos: &q_pos,
        z,
        y,
        budget,
        used1: vec![false; n],
        used2: vec![false; n],
        p1: vec![x],
        p2: Vec::new(),
        found: None,
    };
    search.used1[x] = true;
    search.dfs_p1(x, 0)?;
    match search.found {
        Some(pair) => {
            debug_assert!(validate_aligned(g, q, z, &pair));
            Ok(pair)
        }
        None => Err(Error::input("no aligned disjoint pair exists for this input")),
    }
}

/// Full structural check of an [`AlignedPaths`] result against its inputs.
pub fn validate_aligned(g: &Graph, q: &[usize], z: usize, pair: &AlignedPaths) -> bool {
    let x = q[0];
    let y = *q.last().unwrap();
    let simple_path = |p: &[usize]| -> bool {
        !p.is_empty()
            && p.windows(2).all(|w| g.has_edge(w[0], w[1]))
            && {
                let mut s = p.to_vec();
                s.sort_unstable();
                s.windows(2).all(|w| w[0] != w[1])
            }
    };
    let aligned = |p: &[usize]| -> bool {
        let mut last = None;
        for &v in p {
            if let Some(pos) = q.iter().position(|&u| u == v) {
                if let Some(prev) = last {
                    if pos <= prev {
                        return false;
                    }
                }
                last = Some(pos);
            }
        }
        true
    };
    let (p1, p2) = (&pair.to_z, &pair.to_y);
    simple_path(p1)
        && simple_path(p2)
        && p1[0] == x
        && *p1.last().unwrap() == z
        && p2[0] == x
        && *p2.last().unwrap() == y
        && p1.iter().filter(|v| p2.contains(v)).count() == 1
        && aligned(p1)
        && aligned(p2)
}

struct PairSearch<'a> {
    g: &'a Graph,
    q_pos: &'a [usize],
    z: usize,
    y: usize,
    budget: u64,
    used1: Vec<bool>,
    used2: Vec<bool>,
    p1: Vec<usize>,
    p2: Vec<usize>,
    found: Option<AlignedPaths>,
}

impl PairSearch<'_> {
    fn spend(&mut self) -> Result<()> {
        if self.budget == 0 {
            return Err(Error::BudgetExhausted("aligned path search".into()));
        }
        self.budget -= 1;
        Ok(())
    }

    /// Extend p1 toward z; `last_q` is the largest q-position seen on p1.
    fn dfs_p1(&mut self, at: usize, last_q: usize) -> Result<()> {
        self.spend()?;
        if at == self.z {
            let x = self.p1[0];
            self.p2.push(x);
            self.used2.iter_mut().for_each(|u| *u = false);
            self.used2[x] = true;
            self.dfs_p2(x, self.q_pos[x])?;
            self.p2.pop();
            return Ok(());
        }
        let nbrs: Vec<usize> = self.g.neighbors(at).collect();
        for v in nbrs {
            if self.found.is_some() {
                return Ok(());
            }
            if self.used1[v] {
                continue;
            }
            // shared nodes must advance along q
            let pos = self.q_pos[v];
            if pos != usize::MAX && pos <= last_q {
                continue;
            }
            let next_q = if pos == usize::MAX { last_q } else { pos };
            self.used1[v] = true;
            self.p1.push(v);
            self.dfs_p1(v, next_q)?;
            self.p1.pop();
            self.used1[v] = false;
        }
        Ok(())
    }

    fn dfs_p2(&mut self, at: usize, last_q: usize) -> Result<()> {
        self.spend()?;
        if at == self.y {
            self.found = Some(AlignedPaths { to_z: self.p1.clone(), to_y: self.p2.clone() });
            return Ok(());
        }
        let nbrs: Vec<usize> = self.g.neighbors(at).collect();
        for v in nbrs {
            if self.found.is_some() {
                return Ok(());
            }
            // p2 may touch p1 only at its own start x
            if self.used1[v] || self.used2[v] {
                continue;
            }
            let pos = self.q_pos[v];
            if pos != usize::MAX && pos <= last_q {
                continue;
            }
            let next_q = if pos == usize::MAX { last_q } else { pos };
            self.used2[v] = true;
            self.p2.push(v);
            self.dfs_p2(v, next_q)?;
            self.p2.pop();
            self.used2[v] = false;
        }
        Ok(())
    }
}

/// Unit-capacity max flow (Edmonds-Karp), small and allocation-friendly.
struct FlowNet {
    to: Vec<usize>,
    cap: Vec<u32>,
    adj: Vec<Vec<usize>>,
}

impl FlowNet {
    fn new(n: usize) -> Self {
        FlowNet { to: Vec::new(), cap: Vec::new(), adj: vec![Vec::new(); n] }
    }

    fn arc(&mut self, u: usize, v: usize, c: u32) {
        self.adj[u].push(self.to.len());
        self.to.push(v);
        self.cap.push(c);
        self.adj[v].push(self.to.len());
        self.to.push(u);
        self.cap.push(0);
    }

    /// Flow value from s to t, stopping early once `limit` is reached.
    fn max_flow(&mut self, s: usize, t: usize, limit: u32) -> u32 {
        let n = self.adj.len();
        let mut flow = 0;
        while flow < limit {
            let mut pred: Vec<Option<usize>> = vec![None; n];
            let mut queue = std::collections::VecDeque::new();
            queue.push_back(s);
            'bfs: while let Some(u) = queue.pop_front() {
                for &a in &self.adj[u] {
                    let v = self.to[a];
                    if self.cap[a] > 0 && pred[v].is_none() && v != s {
                        pred[v] = Some(a);
                        if v == t {
                            break 'bfs;
                        }
                        queue.push_back(v);
                    }
                }
            }
            let Some(_) = pred[t] else { break };
            // unit augmentation along the predecessor chain
            let mut v = t;
            while v != s {
                let a = pred[v].unwrap();
                self.cap[a] -= 1;
                self.cap[a ^ 1] += 1;
                v = self.to[a ^ 1];
            }
            flow += 1;
        }
        flow
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    /// Oracle: smallest vertex set whose removal disconnects the rest;
    /// n - 1 for complete graphs.
    fn connectivity_oracle(g: &Graph) -> usize {
        let n = g.n();
        if n <= 1 {
            return 0;
        }
        if g.is_complete() {
            return n - 1;
        }
        for k in 0..n - 1 {
            let mut pick = vec![0usize; k];
            if separator_exists(g, &mut pick, 0, 0) {
                return k;
            }
        }
        n - 1
    }

    fn separator_exists(g: &Graph, pick: &mut [usize], depth: usize, start: usize) -> bool {
        if depth == pick.len() {
            return disconnects(g, pick);
        }
        for v in start..g.n() {
            pick[depth] = v;
            if separator_exists(g, pick, depth + 1, v + 1) {
                return true;
            }
        }
        false
    }

    fn disconnects(g: &Graph, removed: &[usize]) -> bool {
        let n = g.n();
        let mut blocked = vec![false; n];
        for &v in removed {
            blocked[v] = true;
        }
        let rest: Vec<usize> = (0..n).filter(|&v| !blocked[v]).collect();
        if rest.len() < 2 {
            return false;
        }
        let mut seen = blocked.clone();
        let mut stack = vec![rest[0]];
        seen[rest[0]] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for v in g.neighbors(u) {
                if !seen[v] {
                    seen[v] = true;
                    count += 1;
                    stack.push(v);
                }
            }
        }
        count < rest.len()
    }

    #[test]
    fn complete_graph_connectivity() {
        assert_eq!(graph_vertex_connectivity(&Graph::complete(4)), 3);
    }

    #[test]
    fn path_graph_connectivity() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2)]);
        assert_eq!(graph_vertex_connectivity(&g), 1);
    }

    #[test]
    fn cycle_and_disconnected() {
        assert_eq!(graph_vertex_connectivity(&Graph::cycle(6)), 2);
        let g = Graph::from_edges(4, &[(0, 1), (2, 3)]);
        assert_eq!(graph_vertex_connectivity(&g), 0);
    }

    #[test]
    fn flow_matches_separator_oracle_on_random_graphs() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..300 {
            let n = rng.gen_range(2..=7);
            let p = rng.gen_range(0.2..0.9);
            let mut g = Graph::empty(n);
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(p) {
                        g.add_edge(u, v);
                    }
                }
            }
            assert_eq!(
                graph_vertex_connectivity(&g),
                connectivity_oracle(&g),
                "mismatch on {g:?}"
            );
        }
    }

    #[test]
    fn incidence_connectivity_bounded_by_degree_and_rank() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..120 {
            let n = rng.gen_range(3..=6);
            let r = rng.gen_range(2..=3.min(n));
            let m = rng.gen_range(1..=6);
            let mut edges = Vec::new();
            for _ in 0..m {
                let mut e: Vec<usize> = (0..n).collect();
                e.shuffle(&mut rng);
                e.truncate(r);
                edges.push(e);
            }
            let h = Hypergraph::new(n, r, edges);
            let kappa = vertex_connectivity(&h);
            assert!(kappa <= r.min(h.min_degree().max(0)).max(0) || h.m() == 0);
            for k in 0..=4 {
                assert_eq!(is_k_connected(&h, k), kappa >= k || k == 0);
            }
        }
    }

    #[test]
    fn biconnected_matches_flow_on_incidence_graphs() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..80 {
            let n = rng.gen_range(3..=6);
            let m = rng.gen_range(2..=7);
            let mut edges = Vec::new();
            for _ in 0..m {
                let mut e: Vec<usize> = (0..n).collect();
                e.shuffle(&mut rng);
                e.truncate(2);
                edges.push(e);
            }
            let h = Hypergraph::new(n, 2, edges);
            let g = h.incidence_graph().to_graph();
            assert_eq!(g.is_biconnected(), graph_vertex_connectivity(&g) >= 2);
        }
    }

    #[test]
    fn aligned_paths_square_example() {
        let g = Graph::cycle(4);
        let pair = aligned_disjoint_paths(&g, &[0, 1, 2], 3, 1 << 20).unwrap();
        assert_eq!(pair.to_z, vec![0, 3]);
        assert_eq!(pair.to_y, vec![0, 1, 2]);
    }

    #[test]
    fn aligned_paths_rejects_bad_inputs() {
        let g = Graph::cycle(4);
        assert!(matches!(
            aligned_disjoint_paths(&g, &[0, 1, 2], 2, 1000),
            Err(Error::InvalidInput(_))
        ));
        assert!(matches!(
            aligned_disjoint_paths(&g, &[0, 2], 3, 1000),
            Err(Error::InvalidInput(_))
        ));
        let path = Graph::from_edges(3, &[(0, 1), (1, 2)]);
        assert!(matches!(
            aligned_disjoint_paths(&path, &[0, 1], 2, 1000),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn aligned_paths_budget_error() {
        let g = Graph::complete(6);
        assert!(matches!(
            aligned_disjoint_paths(&g, &[0, 1, 2, 3], 4, 3),
            Err(Error::BudgetExhausted(_))
        ));
    }

    #[test]
    fn aligned_paths_valid_on_random_biconnected_graphs() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let mut tested = 0;
        while tested < 150 {
            let n = rng.gen_range(3..=7);
            let p = rng.gen_range(0.3..0.9);
            let mut g = Graph::cycle(n.max(3));
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(p) {
                        g.add_edge(u, v);
                    }
                }
            }
            if !g.is_biconnected() {
                continue;
            }
            // random simple path by walk
            let mut q = vec![rng.gen_range(0..n)];
            loop {
                let last = *q.last().unwrap();
                let options: Vec<usize> =
                    g.neighbors(last).filter(|v| !q.contains(v)).collect();
                if options.is_empty() || (q.len() > 1 && rng.gen_bool(0.4)) {
                    break;
                }
                q.push(options[rng.gen_range(0..options.len())]);
            }
            if q.len() < 2 {
                continue;
            }
            let y = *q.last().unwrap();
            let z = (0..n).filter(|&v| v != y).choose(&mut rng).unwrap();
            let pair = aligned_disjoint_paths(&g, &q, z, 1 << 22).unwrap();
            assert!(validate_aligned(&g, &q, z, &pair));
            tested += 1;
        }
    }
}
