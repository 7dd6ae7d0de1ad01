//! Sharpness constructions: instance generators with self-describing
//! expected metadata.
//!
//! Each generator returns the hypergraph together with the honest expected
//! values (minimum degree, a circumference bound with its direction, a
//! connectivity level). Degenerate parameter corners that break the classic
//! expectations are still generated, but their metadata states what is
//! actually true and a warning records why.
//!
//! Canonical numbering, shared by every generator: the special vertices
//! (`x = 0`, `y = 1`, or the whole block `X` starting at 0) take the lowest
//! indices and the blades/blocks follow in parameter order, so identical
//! parameters always produce identical edge lists.

use std::collections::BTreeMap;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::hypergraph::Hypergraph;
use crate::{Error, Result};

/// A circumference expectation and its direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Bound {
    Exactly(usize),
    AtMost(usize),
    AtLeast(usize),
}

impl Bound {
    /// Does an observed value satisfy this bound?
    pub fn admits(self, observed: usize) -> bool {
        match self {
            Bound::Exactly(v) => observed == v,
            Bound::AtMost(v) => observed <= v,
            Bound::AtLeast(v) => observed >= v,
        }
    }

    pub fn value(self) -> usize {
        match self {
            Bound::Exactly(v) | Bound::AtMost(v) | Bound::AtLeast(v) => v,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expected {
    pub min_degree: usize,
    pub circumference: Bound,
    /// Claimed connectivity level of the incidence graph (a lower bound).
    pub connectivity: usize,
}

/// Generator output metadata: which construction, with which parameters,
/// expecting what. Written as a `#` JSON header by the instance writer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionSpec {
    pub name: String,
    pub parameters: BTreeMap<String, usize>,
    pub expected: Expected,
    #[serde(default)]
    pub warnings: Vec<String>,
}

impl ConstructionSpec {
    fn new(name: &str, params: &[(&str, usize)], expected: Expected) -> Self {
        ConstructionSpec {
            name: name.to_string(),
            parameters: params.iter().map(|&(k, v)| (k.to_string(), v)).collect(),
            expected,
            warnings: Vec::new(),
        }
    }

    pub fn header_comment(&self) -> String {
        serde_json::to_string(self).expect("construction metadata serializes")
    }
}

pub(crate) fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut out = 1usize;
    for i in 0..k {
        out = out * (n - i) / (i + 1);
    }
    out
}

/// Blade construction: vertices `x = 0`, `y = 1` plus `m` blades of `r - 1`
/// vertices; blade `i` contributes the `k - 1` edges `(A_i - a) + {x, y}`
/// for its first `k - 1` elements `a`.
///
/// Sharp for the main degree bound when `k >= 4`: minimum degree `k - 2`,
/// circumference exactly `2k - 2`, 2-connected. At `k = 3` the omitted
/// blade vertices each lie in a single edge, so connectivity drops to 1;
/// with `r = 3` every blade vertex is such a vertex and the circumference
/// collapses to 2. The metadata reports the true values and a warning
/// flags the collapse.
pub fn gen_hk(r: usize, k: usize, m: usize) -> Result<(Hypergraph, ConstructionSpec)> {
    if r < 3 || k < 3 || k > r || m < 2 {
        return Err(Error::precondition(format!(
            "blade construction needs r >= 3, 3 <= k <= r, m >= 2 (got r={r}, k={k}, m={m})"
        )));
    }
    let n = m * (r - 1) + 2;
    let mut edges = Vec::with_capacity(m * (k - 1));
    for blade in 0..m {
        let first = 2 + blade * (r - 1);
        let members: Vec<usize> = (first..first + r - 1).collect();
        for omit in 0..k - 1 {
            let mut e = vec![0, 1];
            e.extend(members.iter().copied().filter(|&v| v != members[omit]));
            edges.push(e);
        }
    }
    let h = Hypergraph::new(n, r, edges);
    let degenerate = k == 3;
    let collapsed = degenerate && r == 3;
    let expected = Expected {
        min_degree: k - 2,
        circumference: Bound::Exactly(if collapsed { 2 } else { 2 * k - 2 }),
        connectivity: if degenerate { 1 } else { 2 },
    };
    let mut spec =
        ConstructionSpec::new("Hk", &[("r", r), ("k", k), ("m", m)], expected);
    if degenerate {
        spec.warnings.push(format!(
            "k = 3 leaves each omitted blade vertex in a single edge: the \
             instance is only 1-connected{}",
            if collapsed { " and the circumference drops to 2" } else { "" }
        ));
    }
    Ok((h, spec))
}

/// Clique-blocks construction: `q` blocks of `k - 2` vertices, each block
/// spanning all r-subsets of itself plus `{x, y}`. Minimum degree
/// `C(k-1, r-1)`, circumference at most `2k - 2`.
pub fn gen_h1(r: usize, k: usize, q: usize) -> Result<(Hypergraph, ConstructionSpec)> {
    if q < 2 || r < 3 || k < r + 1 {
        return Err(Error::precondition(format!(
            "clique-blocks construction needs q >= 2, 4 <= r + 1 <= k (got r={r}, k={k}, q={q})"
        )));
    }
    let n = q * (k - 2) + 2;
    let mut edges = Vec::new();
    for block in 0..q {
        let first = 2 + block * (k - 2);
        let mut pool: Vec<usize> = vec![0, 1];
        pool.extend(first..first + (k - 2));
        pool.sort_unstable();
        for combo in pool.into_iter().combinations(r) {
            edges.push(combo);
        }
    }
    let h = Hypergraph::new(n, r, edges);
    let expected = Expected {
        min_degree: binom(k - 1, r - 1),
        circumference: Bound::AtMost(2 * k - 2),
        connectivity: 2,
    };
    let spec = ConstructionSpec::new("H1", &[("r", r), ("k", k), ("q", q)], expected);
    Ok((h, spec))
}

/// Thin-side construction: a core `X` of `k - 1` vertices, the rest `Y`,
/// and every r-set touching `Y` at most once. Minimum degree `C(k-1, r-1)`
/// and circumference at most `2k - 2`. Removing fewer than `k - 1` vertices
/// never disconnects it, but the recorded connectivity level is
/// `min(k - 1, r)` because incidence-graph connectivity caps at the edge
/// size. `k = r` is accepted with a warning: every edge then contains all
/// of `X`, the `Y` side has degree 1 and connectivity collapses to 1.
pub fn gen_h2(r: usize, k: usize, n: usize) -> Result<(Hypergraph, ConstructionSpec)> {
    if r < 3 || k < r || n < k {
        return Err(Error::precondition(format!(
            "thin-side construction needs r >= 3, k >= r, n >= k (got r={r}, k={k}, n={n})"
        )));
    }
    let x: Vec<usize> = (0..k - 1).collect();
    let mut edges = Vec::new();
    if r <= k - 1 {
        for combo in x.iter().copied().combinations(r) {
            edges.push(combo);
        }
    }
    for y in k - 1..n {
        for combo in x.iter().copied().combinations(r - 1) {
            let mut e = combo;
            e.push(y);
            edges.push(e);
        }
    }
    let h = Hypergraph::new(n, r, edges);
    let tight = k == r;
    let expected = Expected {
        min_degree: binom(k - 1, r - 1),
        circumference: Bound::AtMost(2 * k - 2),
        connectivity: if tight { 1 } else { (k - 1).min(r) },
    };
    let mut spec = ConstructionSpec::new("H2", &[("r", r), ("k", k), ("n", n)], expected);
    if tight {
        spec.warnings.push(
            "k = r sits outside the stated range k >= r + 1: every edge is X plus \
             one Y vertex, so Y degrees are 1 and connectivity is 1"
                .to_string(),
        );
    }
    Ok((h, spec))
}

/// Chained bipartite graph: complete joins P1-P2, P2-P3, P3-P4 with part
/// sizes `a' - b`, `a`, `b`, `b' - a`. Bipartition (P1+P3, P2+P4) has sizes
/// `(a', b')`, side degrees at least `(a, b)`, and the circumference
/// expectation is the degree-form lower bound `2 min{b', a+b-1, 2a-2}`.
pub fn gen_g3(a: usize, b: usize, a_prime: usize, b_prime: usize) -> Result<(Hypergraph, ConstructionSpec)> {
    if a < 1 || b < 1 || a_prime < b_prime || b_prime + 1 < a + b {
        return Err(Error::precondition(format!(
            "chained bipartite construction needs a, b >= 1 and a' >= b' >= a + b - 1 \
             (got a={a}, b={b}, a'={a_prime}, b'={b_prime})"
        )));
    }
    let sizes = [a_prime - b, a, b, b_prime - a];
    let mut start = [0usize; 4];
    for i in 1..4 {
        start[i] = start[i - 1] + sizes[i - 1];
    }
    let n = a_prime + b_prime;
    let part = |i: usize| start[i]..start[i] + sizes[i];
    let mut edges = Vec::new();
    for (p, q) in [(0, 1), (1, 2), (2, 3)] {
        for u in part(p) {
            for v in part(q) {
                edges.push(vec![u, v]);
            }
        }
    }
    let h = Hypergraph::new(n, 2, edges);
    // only a singleton middle part with a nonempty outer neighbor cuts
    let biconnected =
        n >= 3 && !(a == 1 && a_prime > b) && !(b == 1 && b_prime > a);
    let degrees = [
        (sizes[0] > 0).then_some(a),
        Some(a_prime),
        Some(b_prime),
        (sizes[3] > 0).then_some(b),
    ];
    let expected = Expected {
        min_degree: degrees.into_iter().flatten().min().unwrap(),
        circumference: Bound::AtLeast(
            2 * b_prime.min(a + b - 1).min((2 * a).saturating_sub(2)),
        ),
        connectivity: if biconnected { 2 } else { 1 },
    };
    let spec = ConstructionSpec::new(
        "G3",
        &[("a", a), ("b", b), ("a_prime", a_prime), ("b_prime", b_prime)],
        expected,
    );
    Ok((h, spec))
}

/// Complete bipartite `K_{k-1, n-k+1}`. Minimum degree `k - 1` and
/// circumference exactly `2k - 2` for `k >= 3`; at `k = 2` the graph is a
/// star with no cycle at all, reported honestly with a warning.
pub fn gen_kbip(k: usize, n: usize) -> Result<(Hypergraph, ConstructionSpec)> {
    if k < 2 || 2 * k > n {
        return Err(Error::precondition(format!(
            "complete bipartite construction needs 2 <= k <= n/2 (got k={k}, n={n})"
        )));
    }
    let mut edges = Vec::new();
    for u in 0..k - 1 {
        for v in k - 1..n {
            edges.push(vec![u, v]);
        }
    }
    let h = Hypergraph::new(n, 2, edges);
    let star = k == 2;
    let expected = Expected {
        min_degree: k - 1,
        circumference: Bound::Exactly(if star { 0 } else { 2 * k - 2 }),
        connectivity: if star { 1 } else { 2 },
    };
    let mut spec = ConstructionSpec::new("Kbip", &[("k", k), ("n", n)], expected);
    if star {
        spec.warnings.push("k = 2 is a star: it has no Berge cycle".to_string());
    }
    Ok((h, spec))
}
