//! Random instance generation and batch verification of the degree and
//! connectivity bounds on Berge circumference.
//!
//! Four checkable statements, named by their id strings:
//!
//! * `theorem19`: a 2-connected r-graph with 3 <= k <= r+1 <= n and
//!   min degree >= k has circumference >= min{2k, n, m}.
//! * `dirac`: a 2-connected graph (r = 2) with n >= k >= 2 and min degree
//!   >= k has a cycle of length >= min{2k, n}.
//! * `jackson-cor`: a 2-connected r-graph with 2 <= k <= r-1 and min
//!   degree >= k+1 has circumference >= min{2k, n, m}.
//! * `mainold2`: an r-graph with 3 <= r < n and, for t = floor((n-1)/2),
//!   either r <= t and min degree >= C(t, r-1)+1, or r >= n/2 and min
//!   degree >= r, has a hamiltonian Berge cycle.
//!
//! Reports are bit-for-bit reproducible from their config: all randomness
//! is seeded, records sort by instance hash, and nothing time-dependent is
//! recorded.

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::connectivity::is_k_connected;
use crate::constructions::binom;
use crate::cycles::{circumference, BergeCycle};
use crate::hypergraph::Hypergraph;
use crate::{parallel, Error, Result};

pub const DEFAULT_BUDGET: u64 = 10_000_000;
pub const DEFAULT_SAMPLES: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TheoremId {
    Theorem19,
    Dirac,
    JacksonCor,
    MainOld2,
}

impl TheoremId {
    pub const ALL: [TheoremId; 4] =
        [TheoremId::Theorem19, TheoremId::Dirac, TheoremId::JacksonCor, TheoremId::MainOld2];

    pub fn name(self) -> &'static str {
        match self {
            TheoremId::Theorem19 => "theorem19",
            TheoremId::Dirac => "dirac",
            TheoremId::JacksonCor => "jackson-cor",
            TheoremId::MainOld2 => "mainold2",
        }
    }

    pub fn parse(name: &str) -> Option<TheoremId> {
        TheoremId::ALL.iter().copied().find(|t| t.name() == name)
    }

    /// Parameter-range part of the hypotheses (no degree or connectivity).
    fn params_ok(self, n: usize, r: usize, k: usize) -> bool {
        match self {
            TheoremId::Theorem19 => 3 <= k && k <= r + 1 && r + 1 <= n,
            TheoremId::Dirac => r == 2 && 2 <= k && k <= n,
            TheoremId::JacksonCor => 2 <= k && k + 1 <= r,
            TheoremId::MainOld2 => 3 <= r && r < n,
        }
    }

    /// Minimum degree the statement's hypotheses demand, if expressible.
    fn degree_demand(self, n: usize, r: usize, k: usize) -> usize {
        match self {
            TheoremId::Theorem19 | TheoremId::Dirac => k,
            TheoremId::JacksonCor => k + 1,
            TheoremId::MainOld2 => {
                if 2 * r >= n {
                    r
                } else {
                    binom((n - 1) / 2, r - 1) + 1
                }
            }
        }
    }

    fn needs_two_connected(self) -> bool {
        !matches!(self, TheoremId::MainOld2)
    }

    /// The circumference bound asserted when the hypotheses hold.
    fn bound(self, n: usize, m: usize, k: usize) -> usize {
        match self {
            TheoremId::Theorem19 | TheoremId::JacksonCor => (2 * k).min(n).min(m),
            TheoremId::Dirac => (2 * k).min(n),
            TheoremId::MainOld2 => n,
        }
    }
}

// ---------------------------------------------------------------------------
// random instances

/// Random r-uniform hypergraph with min degree >= d that is 2-connected:
/// distinct edges join in a seed-shuffled order until both predicates
/// hold, then removal passes strip every edge whose loss preserves them,
/// pushing m toward the sparse regime. Deterministic per seed; not claimed
/// uniform over its support.
pub fn random_2connected_rgraph(n: usize, r: usize, d: usize, seed: u64) -> Result<Hypergraph> {
    if r < 2 || d < 2 || n < r + 1 {
        return Err(Error::precondition(format!(
            "need r >= 2, d >= 2, n >= r+1; got n = {n}, r = {r}, d = {d}"
        )));
    }
    if d > binom(n - 1, r - 1) {
        return Err(Error::precondition(format!(
            "even the complete {r}-graph on {n} vertices has min degree {} < {d}",
            binom(n - 1, r - 1)
        )));
    }
    let pool_size = binom(n, r);
    if pool_size > 1_000_000 {
        return Err(Error::precondition(format!(
            "edge pool of size {pool_size} is beyond this sampler's desk scale"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pool: Vec<Vec<usize>> = (0..n).combinations(r).collect();
    pool.shuffle(&mut rng);

    let good = |edges: &[Vec<usize>]| {
        let h = Hypergraph::new(n, r, edges.to_vec());
        h.min_degree() >= d && is_k_connected(&h, 2)
    };
    let mut edges: Vec<Vec<usize>> = Vec::new();
    let mut ok = false;
    for e in pool {
        edges.push(e);
        // degree first: the connectivity check walks the incidence graph
        if Hypergraph::new(n, r, edges.clone()).min_degree() >= d && good(&edges) {
            ok = true;
            break;
        }
    }
    if !ok {
        return Err(Error::precondition(format!(
            "no 2-connected {r}-graph with min degree {d} on {n} vertices in the pool"
        )));
    }
    loop {
        let mut order = edges.clone();
        order.shuffle(&mut rng);
        let mut removed = false;
        for e in order {
            if edges.len() <= 2 {
                break;
            }
            let cand: Vec<Vec<usize>> = edges.iter().filter(|x| **x != e).cloned().collect();
            if good(&cand) {
                edges = cand;
                removed = true;
            }
        }
        if !removed {
            break;
        }
    }
    Ok(Hypergraph::new(n, r, edges))
}

// ---------------------------------------------------------------------------
// verification

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Holds,
    Violation,
    /// Hypotheses hold but the search budget ran out below the bound.
    Inconclusive,
    /// Hypotheses fail; says nothing about the bound.
    NotApplicable,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InstanceRecord {
    pub instance: String,
    pub n: usize,
    pub r: usize,
    pub m: usize,
    pub min_degree: usize,
    pub two_connected: bool,
    pub hypotheses_hold: bool,
    pub bound: usize,
    /// exact when `search_complete`, otherwise the best length found;
    /// absent when the hypotheses fail and no search runs
    pub circumference: Option<usize>,
    pub witness: Option<BergeCycle>,
    pub search_complete: bool,
    pub expansions: u64,
    pub verdict: Verdict,
}

/// Check one statement on one instance. `k` is the statement's degree
/// parameter (ignored by `mainold2`, whose demand is a function of n and
/// r alone). Holds-verdicts are certificate-backed: either the search
/// completed, or the witness already meets the bound.
pub fn verify_theorem(
    h: &Hypergraph,
    k: usize,
    theorem: TheoremId,
    budget: u64,
) -> Result<InstanceRecord> {
    let violations = h.validate();
    if !violations.is_empty() {
        return Err(Error::InvalidHypergraph(violations));
    }
    let (n, r, m) = (h.n(), h.r(), h.m());
    let min_degree = h.min_degree();
    let two_connected = is_k_connected(h, 2);
    let hypotheses_hold = theorem.params_ok(n, r, k)
        && min_degree >= theorem.degree_demand(n, r, k)
        && (!theorem.needs_two_connected() || two_connected);
    let bound = theorem.bound(n, m, k);
    let mut record = InstanceRecord {
        instance: h.instance_hash(),
        n,
        r,
        m,
        min_degree,
        two_connected,
        hypotheses_hold,
        bound,
        circumference: None,
        witness: None,
        search_complete: false,
        expansions: 0,
        verdict: Verdict::NotApplicable,
    };
    if !hypotheses_hold {
        return Ok(record);
    }
    let search = circumference(h, budget);
    record.circumference = Some(search.length);
    record.witness = search.witness;
    record.search_complete = search.complete;
    record.expansions = search.expansions;
    record.verdict = if search.length >= bound {
        Verdict::Holds
    } else if search.complete {
        Verdict::Violation
    } else {
        Verdict::Inconclusive
    };
    Ok(record)
}

// ---------------------------------------------------------------------------
// batch runs

fn default_samples() -> usize {
    DEFAULT_SAMPLES
}

fn default_budget() -> u64 {
    DEFAULT_BUDGET
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    pub n: Vec<usize>,
    pub r: Vec<usize>,
    pub k: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BatchConfig {
    pub theorem: String,
    pub grid: GridSpec,
    #[serde(default = "default_samples")]
    pub samples: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_budget")]
    pub budget: u64,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    /// conclusive hypothesis-holding records: holds + violations
    pub checked: usize,
    pub holds: usize,
    pub violations: usize,
    pub inconclusive: usize,
    pub not_applicable: usize,
}

impl Summary {
    fn absorb(&mut self, v: Verdict) {
        match v {
            Verdict::Holds => {
                self.holds += 1;
                self.checked += 1;
            }
            Verdict::Violation => {
                self.violations += 1;
                self.checked += 1;
            }
            Verdict::Inconclusive => self.inconclusive += 1,
            Verdict::NotApplicable => self.not_applicable += 1,
        }
    }

    fn add(&mut self, other: &Summary) {
        self.checked += other.checked;
        self.holds += other.holds;
        self.violations += other.violations;
        self.inconclusive += other.inconclusive;
        self.not_applicable += other.not_applicable;
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CellReport {
    pub n: usize,
    pub r: usize,
    pub k: usize,
    pub samples: usize,
    /// records after in-cell dedup by instance hash, sorted by that hash
    pub records: Vec<InstanceRecord>,
    pub summary: Summary,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerificationReport {
    pub theorem: String,
    pub seed: u64,
    pub samples_per_cell: usize,
    pub budget: u64,
    /// grid cells outside the statement's parameter range, never sampled
    pub skipped_cells: Vec<[usize; 3]>,
    pub cells: Vec<CellReport>,
    pub summary: Summary,
}

impl VerificationReport {
    pub fn holds(&self) -> bool {
        self.summary.violations == 0 && self.summary.inconclusive == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Stable per-cell seed derived from the config seed and the cell params.
pub fn cell_seed(seed: u64, n: usize, r: usize, k: usize) -> u64 {
    let mut x = seed ^ 0x9E37_79B9_7F4A_7C15;
    for v in [n as u64, r as u64, k as u64] {
        x ^= v.wrapping_add(0x9E37_79B9_7F4A_7C15).wrapping_add(x << 6).wrapping_add(x >> 2);
        x = x.wrapping_mul(0xBF58_476D_1CE4_E5B9);
        x ^= x >> 27;
    }
    x
}

/// The per-instance generator seeds a batch cell consumes, in order.
pub fn instance_seeds(seed: u64, n: usize, r: usize, k: usize, samples: usize) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(cell_seed(seed, n, r, k));
    (0..samples).map(|_| rng.next_u64()).collect()
}

/// Run a statement over a sampled parameter grid. Cells whose parameters
/// fall outside the statement's range (or admit no instance at all) are
/// skipped, not sampled. Instances within a cell are deduplicated by hash.
/// The report depends only on the config, never on thread interleaving.
pub fn batch_verify(config: &BatchConfig) -> Result<VerificationReport> {
    let theorem = TheoremId::parse(&config.theorem)
        .ok_or_else(|| Error::input(format!("unknown theorem id {:?}", config.theorem)))?;
    let mut skipped: Vec<[usize; 3]> = Vec::new();
    let mut cells: Vec<(usize, usize, usize)> = Vec::new();
    for &n in &config.grid.n {
        for &r in &config.grid.r {
            for &k in &config.grid.k {
                let d = if theorem.params_ok(n, r, k) {
                    theorem.degree_demand(n, r, k)
                } else {
                    skipped.push([n, r, k]);
                    continue;
                };
                let feasible =
                    r >= 2 && d >= 2 && n >= r + 1 && d <= binom(n - 1, r - 1);
                if feasible {
                    cells.push((n, r, k));
                } else {
                    skipped.push([n, r, k]);
                }
            }
        }
    }
    let cell_reports: Vec<Result<CellReport>> = parallel::map_collect(&cells, |&(n, r, k)| {
        let seeds = instance_seeds(config.seed, n, r, k, config.samples);
        let verified: Vec<Result<InstanceRecord>> = parallel::map_collect(&seeds, |&s| {
            let h = random_2connected_rgraph(n, r, theorem.degree_demand(n, r, k), s)?;
            verify_theorem(&h, k, theorem, config.budget)
        });
        let mut records = Vec::with_capacity(verified.len());
        for v in verified {
            records.push(v?);
        }
        records.sort_by(|a, b| a.instance.cmp(&b.instance));
        records.dedup_by(|a, b| a.instance == b.instance);
        let mut summary = Summary::default();
        for rec in &records {
            summary.absorb(rec.verdict);
        }
        Ok(CellReport { n, r, k, samples: config.samples, records, summary })
    });
    let mut out = Vec::with_capacity(cell_reports.len());
    let mut summary = Summary::default();
    for c in cell_reports {
        let c = c?;
        summary.add(&c.summary);
        out.push(c);
    }
    Ok(VerificationReport {
        theorem: config.theorem.clone(),
        seed: config.seed,
        samples_per_cell: config.samples,
        budget: config.budget,
        skipped_cells: skipped,
        cells: out,
        summary,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{gen_h2, gen_kbip};

    #[test]
    fn sampler_meets_both_predicates() {
        let h = random_2connected_rgraph(7, 3, 3, 1).unwrap();
        assert_eq!(h.r(), 3);
        assert!(h.min_degree() >= 3);
        assert!(is_k_connected(&h, 2));
        // determinism per seed
        let again = random_2connected_rgraph(7, 3, 3, 1).unwrap();
        assert_eq!(h.canonical_bytes(), again.canonical_bytes());
    }

    #[test]
    fn sampler_handles_fat_edges_and_rejects_bad_ranges() {
        let h = random_2connected_rgraph(6, 5, 3, 0).unwrap();
        assert!(h.min_degree() >= 3 && is_k_connected(&h, 2));
        // n too small to fit r+1 vertices
        assert!(random_2connected_rgraph(3, 3, 4, 0).is_err());
        // degree demand above the complete graph's degree
        assert!(random_2connected_rgraph(6, 3, 11, 0).is_err());
    }

    #[test]
    fn sparsification_reaches_removal_minimal_instances() {
        let h = random_2connected_rgraph(7, 3, 3, 9).unwrap();
        for drop in 0..h.m() {
            let edges: Vec<Vec<usize>> = (0..h.m())
                .filter(|&i| i != drop)
                .map(|i| h.edge(i).to_vec())
                .collect();
            let smaller = Hypergraph::new(h.n(), h.r(), edges);
            assert!(
                smaller.min_degree() < 3 || !is_k_connected(&smaller, 2),
                "edge {drop} was removable, sparsification missed it"
            );
        }
    }

    #[test]
    fn verify_holds_with_equality_on_thin_side_instance() {
        let (h, _) = gen_h2(3, 4, 8).unwrap();
        let rec = verify_theorem(&h, 3, TheoremId::Theorem19, 1 << 24).unwrap();
        assert!(rec.hypotheses_hold);
        assert_eq!(rec.bound, 6);
        assert_eq!(rec.circumference, Some(6));
        assert_eq!(rec.verdict, Verdict::Holds);
        assert!(rec.witness.is_some());
    }

    #[test]
    fn verify_marks_failed_hypotheses_not_applicable() {
        // K_{3,5} has min degree 3 < 4: the graph statement does not apply
        let (h, _) = gen_kbip(4, 8).unwrap();
        let rec = verify_theorem(&h, 4, TheoremId::Dirac, 1 << 20).unwrap();
        assert!(!rec.hypotheses_hold);
        assert_eq!(rec.verdict, Verdict::NotApplicable);
        assert_eq!(rec.circumference, None);
    }

    #[test]
    fn verify_hamiltonicity_statement_on_complete_3_graph() {
        let h = Hypergraph::complete(5, 3);
        // r = 3 >= 5/2 and min degree C(4,2) = 6 >= r: branch (b) applies
        let rec = verify_theorem(&h, 0, TheoremId::MainOld2, 1 << 22).unwrap();
        assert!(rec.hypotheses_hold);
        assert_eq!(rec.bound, 5);
        assert_eq!(rec.verdict, Verdict::Holds);
    }

    #[test]
    fn batch_reports_are_reproducible_and_clean() {
        let config = BatchConfig {
            theorem: "theorem19".into(),
            grid: GridSpec { n: vec![6], r: vec![3], k: vec![3, 5] },
            samples: 20,
            seed: 7,
            budget: 1 << 22,
        };
        let a = batch_verify(&config).unwrap();
        let b = batch_verify(&config).unwrap();
        assert_eq!(a.to_json(), b.to_json());
        // k = 5 > r+1 is outside the statement's range: skipped, not run
        assert_eq!(a.skipped_cells, vec![[6, 3, 5]]);
        assert_eq!(a.cells.len(), 1);
        assert_eq!(a.summary.violations, 0);
        assert_eq!(a.summary.inconclusive, 0);
        assert!(a.holds());
        assert!(a.summary.checked > 0);
        assert_eq!(a.summary.checked, a.summary.holds);
    }

    #[test]
    fn batch_covers_the_graph_statement() {
        let config = BatchConfig {
            theorem: "dirac".into(),
            grid: GridSpec { n: vec![7], r: vec![2], k: vec![3] },
            samples: 20,
            seed: 3,
            budget: 1 << 22,
        };
        let rep = batch_verify(&config).unwrap();
        assert!(rep.holds());
        let cell = &rep.cells[0];
        assert!(cell.records.iter().all(|r| r.verdict == Verdict::Holds));
        assert!(cell.records.windows(2).all(|w| w[0].instance < w[1].instance));
    }

    #[test]
    fn batch_covers_the_corollary_with_raised_degree() {
        let config = BatchConfig {
            theorem: "jackson-cor".into(),
            grid: GridSpec { n: vec![7], r: vec![4], k: vec![2, 3] },
            samples: 10,
            seed: 5,
            budget: 1 << 22,
        };
        let rep = batch_verify(&config).unwrap();
        assert!(rep.holds());
        assert_eq!(rep.cells.len(), 2);
        for cell in &rep.cells {
            for rec in &cell.records {
                assert!(rec.min_degree >= cell.k + 1);
            }
        }
    }

    #[test]
    fn unknown_theorem_id_is_an_input_error() {
        let config = BatchConfig {
            theorem: "fermat".into(),
            grid: GridSpec { n: vec![6], r: vec![3], k: vec![3] },
            samples: 1,
            seed: 0,
            budget: 1 << 16,
        };
        assert!(matches!(batch_verify(&config), Err(Error::InvalidInput(_))));
    }
}
