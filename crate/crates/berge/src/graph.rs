//! Simple undirected graphs. Thin adjacency-set representation used for
//! incidence graphs, connectivity queries, and path extraction; 2-uniform
//! hypergraphs stay hypergraphs and only pass through here when flattened.

use std::collections::BTreeSet;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<BTreeSet<usize>>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph { adj: vec![BTreeSet::new(); n] }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    /// Cycle graph 0-1-...-(n-1)-0.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3);
        let mut g = Graph::empty(n);
        for i in 0..n {
            g.add_edge(i, (i + 1) % n);
        }
        g
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.len()).sum::<usize>() / 2
    }

    /// Self loops are ignored; parallel edges collapse.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        if u == v {
            return;
        }
        self.adj[u].insert(v);
        self.adj[v].insert(u);
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.adj[u].remove(&v);
        self.adj[v].remove(&u);
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(&v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter().copied()
    }

    pub fn is_complete(&self) -> bool {
        let n = self.n();
        self.adj.iter().all(|a| a.len() == n - 1)
    }

    pub fn is_connected(&self) -> bool {
        let n = self.n();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for v in self.neighbors(u) {
                if !seen[v] {
                    seen[v] = true;
                    count += 1;
                    stack.push(v);
                }
            }
        }
        count == n
    }

    /// 2-connected: at least 3 nodes, connected, no cut vertex. Linear-time
    /// low-link pass, iterative to keep the stack flat on big instances.
    pub fn is_biconnected(&self) -> bool {
        let n = self.n();
        if n < 3 {
            return false;
        }
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0usize; n];
        let mut parent = vec![usize::MAX; n];
        let mut timer = 0usize;
        let mut root_children = 0usize;
        // frames: (node, neighbor iterator position via Vec).
        let nbrs: Vec<Vec<usize>> = (0..n).map(|v| self.neighbors(v).collect()).collect();
        let mut stack: Vec<(usize, usize)> = Vec::new();
        disc[0] = timer;
        low[0] = timer;
        timer += 1;
        stack.push((0, 0));
        loop {
            let Some(&(u, idx)) = stack.last() else { break };
            if idx < nbrs[u].len() {
                stack.last_mut().unwrap().1 += 1;
                let v = nbrs[u][idx];
                if disc[v] == usize::MAX {
                    parent[v] = u;
                    if u == 0 {
                        root_children += 1;
                    }
                    disc[v] = timer;
                    low[v] = timer;
                    timer += 1;
                    stack.push((v, 0));
                } else if v != parent[u] {
                    low[u] = low[u].min(disc[v]);
                }
            } else {
                stack.pop();
                if let Some(&(p, _)) = stack.last() {
                    low[p] = low[p].min(low[u]);
                    // non-root articulation test
                    if p != 0 && low[u] >= disc[p] {
                        return false;
                    }
                }
            }
        }
        if timer != n {
            return false; // disconnected
        }
        root_children <= 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_has_cut_vertex() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2)]);
        assert!(g.is_connected());
        assert!(!g.is_biconnected());
    }

    #[test]
    fn cycle_is_biconnected() {
        assert!(Graph::cycle(5).is_biconnected());
        assert!(Graph::complete(4).is_biconnected());
    }

    #[test]
    fn two_triangles_sharing_a_vertex_are_not() {
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)]);
        assert!(!g.is_biconnected());
    }

    #[test]
    fn disconnected_detected() {
        let g = Graph::from_edges(4, &[(0, 1), (2, 3)]);
        assert!(!g.is_connected());
        assert!(!g.is_biconnected());
    }

    #[test]
    fn tiny_graphs_are_not_biconnected() {
        assert!(!Graph::complete(2).is_biconnected());
        assert!(!Graph::empty(1).is_biconnected());
    }

    #[test]
    fn brute_force_cut_vertex_agreement() {
        // remove each vertex and test connectivity of the rest
        let cases = [
            Graph::cycle(6),
            Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 0), (3, 4), (4, 5), (5, 3)]),
            Graph::complete(5),
            Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]),
        ];
        for g in cases {
            let n = g.n();
            let mut has_cut = false;
            for v in 0..n {
                let mut h = Graph::empty(n);
                for u in 0..n {
                    for w in g.neighbors(u) {
                        if u != v && w != v {
                            h.add_edge(u, w);
                        }
                    }
                }
                // connectivity of g minus v, ignoring v itself
                let mut seen = vec![false; n];
                seen[v] = true;
                if let Some(start) = (0..n).find(|&u| u != v) {
                    let mut stack = vec![start];
                    seen[start] = true;
                    while let Some(u) = stack.pop() {
                        for w in h.neighbors(u) {
                            if !seen[w] {
                                seen[w] = true;
                                stack.push(w);
                            }
                        }
                    }
                }
                if seen.iter().any(|s| !s) {
                    has_cut = true;
                }
            }
            let expect = g.n() >= 3 && g.is_connected() && !has_cut;
            assert_eq!(g.is_biconnected(), expect);
        }
    }
}
