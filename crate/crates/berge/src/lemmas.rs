//! Counting bounds for spread subsets of a graph cycle, long-segment
//! extraction, and expanding-set predicates.
//!
//! The bound claims live on an abstract cycle `v_0, e_0, ..., v_{s-1},
//! e_{s-1}, v_0`: sets of vertex or edge positions whose pairwise circular
//! distances are at least some `q` force lower bounds on `s`. Each claim is
//! a hypothesis check plus a bound formula, and [`verify_claims_exhaustive`]
//! sweeps every configuration up to a ceiling and confirms `s >= bound`.
//!
//! Distance conventions, used everywhere:
//! * position distance is circular, `min(|i-j|, s-|i-j|)`;
//! * the distance from a vertex to edge `e_j = v_j v_{j+1}` is the smaller
//!   of the distances to its two endpoints;
//! * distance parameters are capped at `floor(s/2)`, the largest circular
//!   distance a cycle of length `s` can realize. Configurations whose
//!   hypotheses constrain no pair (for example `A = B` a singleton) accept
//!   any `q` up to that cap; an uncapped `q` would assert spacing no cycle
//!   can exhibit and falsify the bounds vacuously.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::bits::BitSet;
use crate::cycles::{validate_cycle, BergeCycle, BergePath, PathKind};
use crate::hypergraph::Hypergraph;
use crate::{parallel, Error, Result};

/// The six bound claims on cycle configurations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum CycleClaim {
    /// Vertex sets `A`, `B` with cross distances `>= q >= 2`:
    /// `s >= q|A|` when `A = B`, else `s >= |A| + |B| + 2q - 3` with
    /// equality only if one set contains the other.
    SpreadVertices,
    /// The same bounds for edge sets (positions index edges).
    SpreadEdges,
    /// SpreadVertices plus a vertex set `F`, disjoint from `A` and `B` and
    /// `q`-spread against everything: each bound gains `q|F|`.
    SpreadWithContraction,
    /// Independent vertex set `I` vs edge set `B` at distance `>= q >= 1`:
    /// `s >= 2|I| + |B| + 2(q-1)`.
    IndependentVsEdges,
    /// Vertex set `A` at distance `>= q'` from every edge of `B`, edges of
    /// `B` pairwise `>= q` apart: `s >= |A| + q|B| + 2q' - q`.
    VerticesVsSpacedEdges,
    /// Independent vertex set `I` vs vertex set `A` at distance 0 or
    /// `>= q >= 3`: `s >= q|I|` when `A = I`, `s >= 2|I| + (q-2)(|A|+1)`
    /// when `A` is a proper subset of `I`, else `s >= 2|I| + |A| + 2q - 3`.
    /// `I` a proper subset of `A` is outside the claim's domain: there the
    /// last bound fails (`s = 6`, `I = {0}`, `A = {0, 3}`, `q = 3` asks for
    /// 7) and the hypotheses reject it.
    IndependentVsVertices,
}

impl CycleClaim {
    pub const ALL: [CycleClaim; 6] = [
        CycleClaim::SpreadVertices,
        CycleClaim::SpreadEdges,
        CycleClaim::SpreadWithContraction,
        CycleClaim::IndependentVsEdges,
        CycleClaim::VerticesVsSpacedEdges,
        CycleClaim::IndependentVsVertices,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CycleClaim::SpreadVertices => "spread-vertices",
            CycleClaim::SpreadEdges => "spread-edges",
            CycleClaim::SpreadWithContraction => "spread-with-contraction",
            CycleClaim::IndependentVsEdges => "independent-vs-edges",
            CycleClaim::VerticesVsSpacedEdges => "vertices-vs-spaced-edges",
            CycleClaim::IndependentVsVertices => "independent-vs-vertices",
        }
    }

    pub fn parse(name: &str) -> Option<CycleClaim> {
        CycleClaim::ALL.iter().copied().find(|c| c.name() == name)
    }
}

/// A configuration on the abstract cycle. Which fields a claim reads:
/// `a`/`b` for the spread claims (vertex or edge positions), `f` for the
/// contraction variant, `i` for the independent-set claims, `q_prime` for
/// [`CycleClaim::VerticesVsSpacedEdges`] only.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleConfig {
    pub s: usize,
    #[serde(default)]
    pub a: BTreeSet<usize>,
    #[serde(default)]
    pub b: BTreeSet<usize>,
    #[serde(default)]
    pub i: BTreeSet<usize>,
    #[serde(default)]
    pub f: BTreeSet<usize>,
    #[serde(default)]
    pub q: usize,
    #[serde(default)]
    pub q_prime: usize,
}

/// Circular distance between positions on a length-`s` cycle.
pub fn circular_distance(s: usize, i: usize, j: usize) -> usize {
    let d = i.abs_diff(j);
    d.min(s - d)
}

/// Distance from vertex position `v` to edge `e_j = v_j v_{j+1}`.
pub fn vertex_edge_distance(s: usize, v: usize, j: usize) -> usize {
    circular_distance(s, v, j).min(circular_distance(s, v, (j + 1) % s))
}

fn in_range(s: usize, sets: &[&BTreeSet<usize>]) -> Result<()> {
    for set in sets {
        if let Some(&p) = set.iter().next_back() {
            if p >= s {
                return Err(Error::input(format!("position {p} out of range for s = {s}")));
            }
        }
    }
    Ok(())
}

fn cross_ok(s: usize, a: &BTreeSet<usize>, b: &BTreeSet<usize>, q: usize) -> bool {
    a.iter().all(|&x| b.iter().all(|&y| x == y || circular_distance(s, x, y) >= q))
}

fn independent(s: usize, i: &BTreeSet<usize>) -> bool {
    i.iter().all(|&x| i.iter().all(|&y| x == y || circular_distance(s, x, y) >= 2))
}

/// Do the claim's distance and shape hypotheses hold for `cfg`? Structural
/// defects (positions outside `[0, s)`) are errors, failed hypotheses are
/// a plain `false`.
pub fn check_hypotheses(cfg: &CycleConfig, claim: CycleClaim) -> Result<bool> {
    let s = cfg.s;
    in_range(s, &[&cfg.a, &cfg.b, &cfg.i, &cfg.f])?;
    if s < 3 {
        return Ok(false);
    }
    let half = s / 2;
    let q = cfg.q;
    let ok = match claim {
        CycleClaim::SpreadVertices | CycleClaim::SpreadEdges => {
            !cfg.a.is_empty()
                && !cfg.b.is_empty()
                && (2..=half).contains(&q)
                && cross_ok(s, &cfg.a, &cfg.b, q)
        }
        CycleClaim::SpreadWithContraction => {
            !cfg.a.is_empty()
                && !cfg.b.is_empty()
                && (2..=half).contains(&q)
                && cfg.a.is_disjoint(&cfg.f)
                && cfg.b.is_disjoint(&cfg.f)
                && q * cfg.f.len() < s
                && cross_ok(s, &cfg.a, &cfg.b, q)
                && cfg.f.iter().all(|&x| {
                    let near = |&y: &usize| x == y || circular_distance(s, x, y) >= q;
                    cfg.f.iter().all(near) && cfg.a.iter().all(near) && cfg.b.iter().all(near)
                })
        }
        CycleClaim::IndependentVsEdges => {
            !cfg.i.is_empty()
                && !cfg.b.is_empty()
                && (1..=half).contains(&q)
                && independent(s, &cfg.i)
                && cfg
                    .i
                    .iter()
                    .all(|&v| cfg.b.iter().all(|&e| vertex_edge_distance(s, v, e) >= q))
        }
        CycleClaim::VerticesVsSpacedEdges => {
            !cfg.a.is_empty()
                && !cfg.b.is_empty()
                && (1..=half).contains(&q)
                && cfg.q_prime >= q.saturating_sub(1).max(1)
                && cfg.q_prime <= half
                && cfg
                    .a
                    .iter()
                    .all(|&v| cfg.b.iter().all(|&e| vertex_edge_distance(s, v, e) >= cfg.q_prime))
                && cross_ok(s, &cfg.b, &cfg.b, q)
        }
        CycleClaim::IndependentVsVertices => {
            !cfg.i.is_empty()
                && !cfg.a.is_empty()
                && (3..=half).contains(&q)
                && independent(s, &cfg.i)
                && !(cfg.i.is_subset(&cfg.a) && cfg.i != cfg.a)
                && cross_ok(s, &cfg.i, &cfg.a, q)
        }
    };
    Ok(ok)
}

/// The claim's lower bound on `s`, with the correct case selected. Errors
/// if the hypotheses fail.
pub fn claim_bound(cfg: &CycleConfig, claim: CycleClaim) -> Result<usize> {
    if !check_hypotheses(cfg, claim)? {
        return Err(Error::precondition(format!(
            "hypotheses of claim {} do not hold",
            claim.name()
        )));
    }
    let q = cfg.q;
    let (ka, kb, ki) = (cfg.a.len(), cfg.b.len(), cfg.i.len());
    Ok(match claim {
        CycleClaim::SpreadVertices | CycleClaim::SpreadEdges => {
            if cfg.a == cfg.b {
                q * ka
            } else {
                ka + kb + 2 * q - 3
            }
        }
        CycleClaim::SpreadWithContraction => {
            let base = if cfg.a == cfg.b { q * ka } else { ka + kb + 2 * q - 3 };
            base + q * cfg.f.len()
        }
        CycleClaim::IndependentVsEdges => 2 * ki + kb + 2 * (q - 1),
        CycleClaim::VerticesVsSpacedEdges => ka + q * kb + 2 * cfg.q_prime - q,
        CycleClaim::IndependentVsVertices => {
            if cfg.a == cfg.i {
                q * ki
            } else if cfg.a.is_subset(&cfg.i) {
                2 * ki + (q - 2) * (ka + 1)
            } else {
                2 * ki + ka + 2 * q - 3
            }
        }
    })
}

/// Largest exhaustive sweep the tables support.
pub const SWEEP_CEILING: usize = 16;
/// Default ceiling; [`verify_claims_exhaustive`] rejects anything larger.
pub const DEFAULT_SWEEP_CEILING: usize = 12;

const WITNESS_CAP: usize = 8;

#[derive(Debug, Clone, Serialize)]
pub struct SweepViolation {
    pub claim: String,
    pub config: CycleConfig,
    pub bound: usize,
    /// "bound" for `s < bound`, "equality-condition" for a tight case
    /// without the required nesting.
    pub kind: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct EqualityWitness {
    pub config: CycleConfig,
    pub bound: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClaimSummary {
    pub claim: String,
    pub configs: u64,
    /// Configurations meeting their bound exactly, in the cases that carry
    /// an equality condition.
    pub equality_cases: u64,
    pub equality_witnesses: Vec<EqualityWitness>,
    pub violations: Vec<SweepViolation>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClaimReport {
    pub max_s: usize,
    pub total_configs: u64,
    pub total_violations: usize,
    pub claims: Vec<ClaimSummary>,
}

impl ClaimReport {
    pub fn violation_count(&self) -> usize {
        self.total_violations
    }
}

/// Check every configuration of every claim on cycles of length `3..=max_s`
/// against its bound. Expected outcome: zero violations.
pub fn verify_claims_exhaustive(max_s: usize) -> Result<ClaimReport> {
    verify_claims_capped(max_s, DEFAULT_SWEEP_CEILING)
}

/// Same sweep with an explicit ceiling (still hard-limited to
/// [`SWEEP_CEILING`]; the tables grow as `s * 4^s`).
pub fn verify_claims_capped(max_s: usize, ceiling: usize) -> Result<ClaimReport> {
    if max_s > ceiling.min(SWEEP_CEILING) {
        return Err(Error::precondition(format!(
            "max_s = {max_s} exceeds the sweep ceiling {}",
            ceiling.min(SWEEP_CEILING)
        )));
    }
    let mut tallies: Vec<Tally> = vec![Tally::default(); CycleClaim::ALL.len()];
    for s in 3..=max_s.max(2) {
        if s < 3 {
            break;
        }
        let tables = Tables::new(s);
        for (idx, claim) in CycleClaim::ALL.into_iter().enumerate() {
            let slice = match claim {
                CycleClaim::SpreadVertices | CycleClaim::SpreadEdges => {
                    sweep_spread(claim, &tables, 0)
                }
                CycleClaim::SpreadWithContraction => sweep_contraction(&tables),
                CycleClaim::IndependentVsEdges => sweep_independent_vs_edges(&tables),
                CycleClaim::VerticesVsSpacedEdges => sweep_vertices_vs_spaced_edges(&tables),
                CycleClaim::IndependentVsVertices => sweep_independent_vs_vertices(&tables),
            };
            tallies[idx].merge(slice);
        }
    }
    let claims: Vec<ClaimSummary> = CycleClaim::ALL
        .into_iter()
        .zip(tallies)
        .map(|(claim, t)| ClaimSummary {
            claim: claim.name().to_string(),
            configs: t.configs,
            equality_cases: t.equality,
            equality_witnesses: t.witnesses,
            violations: t.violations,
        })
        .collect();
    Ok(ClaimReport {
        max_s,
        total_configs: claims.iter().map(|c| c.configs).sum(),
        total_violations: claims.iter().map(|c| c.violations.len()).sum(),
        claims,
    })
}

const INF: u16 = u16::MAX;

/// Per-length lookup tables: minima of circular distances from a position
/// into a bitmask of positions. `minvv` skips equal positions (claims allow
/// `i = j`), `minved` measures vertex-to-edge, `minpair` is the least
/// distance within a mask.
struct Tables {
    s: usize,
    size: usize,
    half: usize,
    minvv: Vec<u16>,
    minved: Vec<u16>,
    minpair: Vec<u16>,
}

impl Tables {
    fn new(s: usize) -> Self {
        let size = 1usize << s;
        let d = |i: usize, j: usize| circular_distance(s, i, j) as u16;
        let mut minvv = vec![INF; s * size];
        let mut minved = vec![INF; s * size];
        for v in 0..s {
            for mask in 1..size {
                let low = mask.trailing_zeros() as usize;
                let rest = mask & (mask - 1);
                let vv = if low == v { INF } else { d(v, low) };
                let ve = d(v, low).min(d(v, (low + 1) % s));
                minvv[v * size + mask] = vv.min(minvv[v * size + rest]);
                minved[v * size + mask] = ve.min(minved[v * size + rest]);
            }
        }
        let mut minpair = vec![INF; size];
        for mask in 1..size {
            let low = mask.trailing_zeros() as usize;
            let rest = mask & (mask - 1);
            minpair[mask] = minpair[rest].min(minvv[low * size + rest]);
        }
        Tables { s, size, half: s / 2, minvv, minved, minpair }
    }

    fn cross_vv(&self, amask: usize, bmask: usize) -> u16 {
        let mut best = INF;
        let mut m = amask;
        while m != 0 {
            let a = m.trailing_zeros() as usize;
            m &= m - 1;
            best = best.min(self.minvv[a * self.size + bmask]);
        }
        best
    }

    fn cross_ved(&self, amask: usize, bmask: usize) -> u16 {
        let mut best = INF;
        let mut m = amask;
        while m != 0 {
            let a = m.trailing_zeros() as usize;
            m &= m - 1;
            best = best.min(self.minved[a * self.size + bmask]);
        }
        best
    }
}

fn mask_to_set(mask: usize) -> BTreeSet<usize> {
    let mut out = BTreeSet::new();
    let mut m = mask;
    while m != 0 {
        out.insert(m.trailing_zeros() as usize);
        m &= m - 1;
    }
    out
}

#[derive(Debug, Default, Clone)]
struct Tally {
    configs: u64,
    equality: u64,
    witnesses: Vec<EqualityWitness>,
    violations: Vec<SweepViolation>,
}

impl Tally {
    fn merge(&mut self, other: Tally) {
        self.configs += other.configs;
        self.equality += other.equality;
        for w in other.witnesses {
            if self.witnesses.len() < WITNESS_CAP {
                self.witnesses.push(w);
            }
        }
        self.violations.extend(other.violations);
    }
}

fn spread_config(
    claim: CycleClaim,
    s: usize,
    amask: usize,
    bmask: usize,
    fmask: usize,
    q: usize,
) -> CycleConfig {
    let _ = claim;
    CycleConfig {
        s,
        a: mask_to_set(amask),
        b: mask_to_set(bmask),
        f: mask_to_set(fmask),
        q,
        ..CycleConfig::default()
    }
}

/// Record one checked configuration of a spread-style case, including the
/// equality condition when `A != B`.
#[allow(clippy::too_many_arguments)]
fn record_spread(
    tally: &mut Tally,
    claim: CycleClaim,
    tables: &Tables,
    amask: usize,
    bmask: usize,
    fmask: usize,
    q: usize,
    bound: usize,
) {
    let s = tables.s;
    tally.configs += 1;
    if s < bound {
        tally.violations.push(SweepViolation {
            claim: claim.name().to_string(),
            config: spread_config(claim, s, amask, bmask, fmask, q),
            bound,
            kind: "bound".to_string(),
        });
        return;
    }
    if amask != bmask && s == bound {
        tally.equality += 1;
        if tally.witnesses.len() < WITNESS_CAP {
            tally.witnesses.push(EqualityWitness {
                config: spread_config(claim, s, amask, bmask, fmask, q),
                bound,
            });
        }
        let nested = (amask & bmask) == amask || (amask & bmask) == bmask;
        if !nested {
            tally.violations.push(SweepViolation {
                claim: claim.name().to_string(),
                config: spread_config(claim, s, amask, bmask, fmask, q),
                bound,
                kind: "equality-condition".to_string(),
            });
        }
    }
}

/// Shared sweep for the two plain spread claims and the `F = {}` face of
/// the contraction claim (`extra_per_q` = |F| there, always 0 here).
fn sweep_spread(claim: CycleClaim, tables: &Tables, extra_per_q: usize) -> Tally {
    let size = tables.size;
    let outer: Vec<usize> = (1..size).collect();
    let parts = parallel::map_collect(&outer, |&amask| {
        let mut t = Tally::default();
        let ka = amask.count_ones() as usize;
        for bmask in 1..size {
            let qm = tables.cross_vv(amask, bmask);
            let qmax = if qm == INF { tables.half } else { qm as usize };
            let kb = bmask.count_ones() as usize;
            for q in 2..=qmax {
                let base = if amask == bmask { q * ka } else { ka + kb + 2 * q - 3 };
                record_spread(&mut t, claim, tables, amask, bmask, 0, q, base + q * extra_per_q);
            }
        }
        t
    });
    let mut out = Tally::default();
    for p in parts {
        out.merge(p);
    }
    out
}

fn sweep_contraction(tables: &Tables) -> Tally {
    let claim = CycleClaim::SpreadWithContraction;
    let s = tables.s;
    let size = tables.size;
    // the empty-F face is exactly the plain vertex sweep with |F| = 0
    let mut out = sweep_spread(claim, tables, 0);
    // remaining faces: fix q and a q-spread F, then range A and B over the
    // positions far enough from F
    let mut jobs: Vec<(usize, usize)> = Vec::new();
    for q in 2..=tables.half {
        for fmask in 1..size {
            let kf = fmask.count_ones() as usize;
            if q * kf < s && tables.minpair[fmask] >= q as u16 {
                jobs.push((q, fmask));
            }
        }
    }
    let parts = parallel::map_collect(&jobs, |&(q, fmask)| {
        let mut t = Tally::default();
        let mut pmask = 0usize;
        for p in 0..s {
            if fmask & (1 << p) == 0 && tables.minvv[p * size + fmask] >= q as u16 {
                pmask |= 1 << p;
            }
        }
        let kf = fmask.count_ones() as usize;
        let mut amask = pmask;
        while amask != 0 {
            let ka = amask.count_ones() as usize;
            let mut bmask = pmask;
            while bmask != 0 {
                let qm = tables.cross_vv(amask, bmask);
                if qm == INF || qm as usize >= q {
                    let kb = bmask.count_ones() as usize;
                    let base = if amask == bmask { q * ka } else { ka + kb + 2 * q - 3 };
                    record_spread(&mut t, claim, tables, amask, bmask, fmask, q, base + q * kf);
                }
                bmask = (bmask - 1) & pmask;
            }
            amask = (amask - 1) & pmask;
        }
        t
    });
    for p in parts {
        out.merge(p);
    }
    out
}

fn independent_masks(tables: &Tables) -> Vec<usize> {
    (1..tables.size).filter(|&m| tables.minpair[m] >= 2).collect()
}

fn sweep_independent_vs_edges(tables: &Tables) -> Tally {
    let claim = CycleClaim::IndependentVsEdges;
    let s = tables.s;
    let size = tables.size;
    let outer = independent_masks(tables);
    let parts = parallel::map_collect(&outer, |&imask| {
        let mut t = Tally::default();
        let ki = imask.count_ones() as usize;
        for bmask in 1..size {
            let qmax = tables.cross_ved(imask, bmask) as usize;
            let kb = bmask.count_ones() as usize;
            for q in 1..=qmax {
                t.configs += 1;
                let bound = 2 * ki + kb + 2 * (q - 1);
                if s < bound {
                    t.violations.push(SweepViolation {
                        claim: claim.name().to_string(),
                        config: CycleConfig {
                            s,
                            i: mask_to_set(imask),
                            b: mask_to_set(bmask),
                            q,
                            ..CycleConfig::default()
                        },
                        bound,
                        kind: "bound".to_string(),
                    });
                }
            }
        }
        t
    });
    let mut out = Tally::default();
    for p in parts {
        out.merge(p);
    }
    out
}

fn sweep_vertices_vs_spaced_edges(tables: &Tables) -> Tally {
    let claim = CycleClaim::VerticesVsSpacedEdges;
    let s = tables.s;
    let size = tables.size;
    let outer: Vec<usize> = (1..size).collect();
    let parts = parallel::map_collect(&outer, |&amask| {
        let mut t = Tally::default();
        let ka = amask.count_ones() as usize;
        for bmask in 1..size {
            let qpmax = tables.cross_ved(amask, bmask) as usize;
            if qpmax == 0 {
                continue;
            }
            let kb = bmask.count_ones() as usize;
            let qmax =
                if kb >= 2 { tables.minpair[bmask] as usize } else { tables.half };
            for q in 1..=qmax {
                for qp in (q.saturating_sub(1)).max(1)..=qpmax {
                    t.configs += 1;
                    let bound = ka + q * kb + 2 * qp - q;
                    if s < bound {
                        t.violations.push(SweepViolation {
                            claim: claim.name().to_string(),
                            config: CycleConfig {
                                s,
                                a: mask_to_set(amask),
                                b: mask_to_set(bmask),
                                q,
                                q_prime: qp,
                                ..CycleConfig::default()
                            },
                            bound,
                            kind: "bound".to_string(),
                        });
                    }
                }
            }
        }
        t
    });
    let mut out = Tally::default();
    for p in parts {
        out.merge(p);
    }
    out
}

fn sweep_independent_vs_vertices(tables: &Tables) -> Tally {
    let claim = CycleClaim::IndependentVsVertices;
    let s = tables.s;
    let size = tables.size;
    let outer = independent_masks(tables);
    let parts = parallel::map_collect(&outer, |&imask| {
        let mut t = Tally::default();
        let ki = imask.count_ones() as usize;
        for amask in 1..size {
            if imask & amask == imask && imask != amask {
                continue;
            }
            let qm = tables.cross_vv(amask, imask);
            let qmax = if qm == INF { tables.half } else { qm as usize };
            let ka = amask.count_ones() as usize;
            for q in 3..=qmax {
                t.configs += 1;
                let bound = if amask == imask {
                    q * ki
                } else if amask & imask == amask {
                    2 * ki + (q - 2) * (ka + 1)
                } else {
                    2 * ki + ka + 2 * q - 3
                };
                if s < bound {
                    t.violations.push(SweepViolation {
                        claim: claim.name().to_string(),
                        config: CycleConfig {
                            s,
                            i: mask_to_set(imask),
                            a: mask_to_set(amask),
                            q,
                            ..CycleConfig::default()
                        },
                        bound,
                        kind: "bound".to_string(),
                    });
                }
            }
        }
        t
    });
    let mut out = Tally::default();
    for p in parts {
        out.merge(p);
    }
    out
}

/// Anchor on a concrete Berge cycle, by vertex or edge id.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Anchor {
    Vertex(usize),
    Edge(usize),
}

/// The longer of the two arcs determined by two anchors, as a vertex id
/// sequence. With `c = |C|` the result has at least `ceil(c/2)` vertices
/// for edge-edge anchors, `ceil((c+1)/2)` for edge-vertex and
/// `ceil((c+2)/2)` for vertex-vertex: edge anchors are excluded from their
/// arcs, vertex anchors are included (in both arcs). Ties return the
/// lexicographically smaller sequence.
pub fn long_segment(cycle: &BergeCycle, a1: Anchor, a2: Anchor) -> Result<Vec<usize>> {
    let c = cycle.len();
    if c < 2 {
        return Err(Error::input("long_segment needs a cycle of length >= 2"));
    }
    let locate = |anchor: Anchor| -> Result<(bool, usize)> {
        match anchor {
            Anchor::Vertex(v) => cycle
                .vertices
                .iter()
                .position(|&x| x == v)
                .map(|p| (false, p))
                .ok_or_else(|| Error::input(format!("vertex {v} is not on the cycle"))),
            Anchor::Edge(e) => cycle
                .edge_ids
                .iter()
                .position(|&x| x == e)
                .map(|p| (true, p))
                .ok_or_else(|| Error::input(format!("edge {e} is not on the cycle"))),
        }
    };
    let (mut x, mut y) = (locate(a1)?, locate(a2)?);
    if x == y {
        return Err(Error::input("anchors must be distinct"));
    }
    // normalize to edge-first so each kind has one arc formula
    if !x.0 && y.0 {
        std::mem::swap(&mut x, &mut y);
    }
    let ((e1, i), (e2, j)) = (x, y);
    // an arc is the inclusive run of positions from `from` to `to`
    let span = |from: usize, to: usize| -> Vec<usize> {
        let len = (to + c - from) % c + 1;
        (0..len).map(|t| cycle.vertices[(from + t) % c]).collect()
    };
    let (arc1, arc2) = match (e1, e2) {
        // both edges removed: the arcs are the leftover paths
        (true, true) => (span((i + 1) % c, j), span((j + 1) % c, i)),
        // edge removed, vertex shared by both arcs
        (true, false) => (span((i + 1) % c, j), span(j, i)),
        // both vertices shared by both arcs
        (false, false) => (span(i, j), span(j, i)),
        (false, true) => unreachable!("normalized above"),
    };
    Ok(match arc1.len().cmp(&arc2.len()) {
        std::cmp::Ordering::Greater => arc1,
        std::cmp::Ordering::Less => arc2,
        std::cmp::Ordering::Equal => arc1.min(arc2),
    })
}

/// A connector path certifying one pair of an expanding set.
#[derive(Debug, Clone, Serialize)]
pub struct Connector {
    pub from: usize,
    pub to: usize,
    pub path: BergePath,
}

/// Is `w` expanding for `(u, cycle)`: every pair of `w` joined by a path
/// whose internal vertices avoid `V(C) + u` and whose edges avoid `E(C)`?
/// Returns the per-pair witnesses, or `None` when some pair has no
/// connector. Paths are found pairwise; they need not be disjoint from
/// each other.
pub fn is_expanding(
    h: &Hypergraph,
    cycle: &BergeCycle,
    u: usize,
    w: &[usize],
) -> Result<Option<Vec<Connector>>> {
    if !validate_cycle(h, cycle) {
        return Err(Error::input("not a Berge cycle of this hypergraph"));
    }
    if u >= h.n() {
        return Err(Error::VertexOutOfRange { vertex: u, n: h.n() });
    }
    if cycle.vertices.contains(&u) {
        return Err(Error::precondition("u must lie outside the cycle"));
    }
    let wset: BTreeSet<usize> = w.iter().copied().collect();
    for &v in &wset {
        if !cycle.vertices.contains(&v) {
            return Err(Error::precondition(format!("vertex {v} of w is not on the cycle")));
        }
    }
    let mut edge_banned = BitSet::new(h.m());
    for &e in &cycle.edge_ids {
        edge_banned.insert(e);
    }
    let mut vertex_banned = BitSet::new(h.n());
    for &v in &cycle.vertices {
        vertex_banned.insert(v);
    }
    vertex_banned.insert(u);
    let pairs: Vec<(usize, usize)> = {
        let vs: Vec<usize> = wset.iter().copied().collect();
        let mut out = Vec::new();
        for i in 0..vs.len() {
            for j in i + 1..vs.len() {
                out.push((vs[i], vs[j]));
            }
        }
        out
    };
    let mut connectors = Vec::new();
    for (from, to) in pairs {
        match connect(h, &edge_banned, &vertex_banned, from, to) {
            Some(path) => connectors.push(Connector { from, to, path }),
            None => return Ok(None),
        }
    }
    Ok(Some(connectors))
}

/// Shortest path from `from` to `to` through allowed edges whose internal
/// vertices are allowed; endpoints may be banned. BFS by vertex layers, so
/// the edge sequence of the result never repeats an edge.
fn connect(
    h: &Hypergraph,
    edge_banned: &BitSet,
    vertex_banned: &BitSet,
    from: usize,
    to: usize,
) -> Option<BergePath> {
    let mut prev: Vec<Option<(usize, usize)>> = vec![None; h.n()];
    let mut seen = BitSet::new(h.n());
    seen.insert(from);
    let mut frontier = vec![from];
    let mut found = false;
    'bfs: while !frontier.is_empty() {
        let mut next = Vec::new();
        for &x in &frontier {
            let mut steps: Vec<(usize, usize)> = Vec::new();
            for e in 0..h.m() {
                if !edge_banned.contains(e) && h.edge_contains(e, x) {
                    for &y in h.edge(e) {
                        if !seen.contains(y) {
                            steps.push((y, e));
                        }
                    }
                }
            }
            steps.sort_unstable();
            for (y, e) in steps {
                if seen.contains(y) {
                    continue;
                }
                if y == to {
                    seen.insert(y);
                    prev[y] = Some((x, e));
                    found = true;
                    break 'bfs;
                }
                if !vertex_banned.contains(y) {
                    seen.insert(y);
                    prev[y] = Some((x, e));
                    next.push(y);
                }
            }
        }
        frontier = next;
    }
    if !found {
        return None;
    }
    let mut vertices = vec![to];
    let mut edge_ids = Vec::new();
    let mut cur = to;
    while let Some((p, e)) = prev[cur] {
        vertices.push(p);
        edge_ids.push(e);
        cur = p;
    }
    vertices.reverse();
    edge_ids.reverse();
    Some(BergePath { vertices, edge_ids, kind: PathKind::Full })
}

/// The two interval inequalities tying an expanding set `w` to the cycle
/// edges containing `u`. On a longest cycle both must hold; a failure
/// certifies the cycle was not longest (or `w` not expanding).
#[derive(Debug, Clone, Serialize)]
pub struct IntervalBounds {
    /// `|W| <= c - (b + q) + 2` where `q` counts intervals of `B`.
    pub holds_edge_form: bool,
    /// `b <= c - (|W| + q') + 2` where `q'` counts intervals of `W`.
    pub holds_vertex_form: bool,
    pub b: usize,
    pub q: usize,
    pub q_prime: usize,
}

pub fn no3_bounds(
    h: &Hypergraph,
    cycle: &BergeCycle,
    u: usize,
    w: &[usize],
) -> Result<IntervalBounds> {
    if is_expanding(h, cycle, u, w)?.is_none() {
        return Err(Error::precondition("w is not an expanding set"));
    }
    let c = cycle.len();
    let wset: BTreeSet<usize> = w.iter().copied().collect();
    let w_positions: BTreeSet<usize> = cycle
        .vertices
        .iter()
        .enumerate()
        .filter(|(_, v)| wset.contains(v))
        .map(|(p, _)| p)
        .collect();
    let b_positions: BTreeSet<usize> = cycle
        .edge_ids
        .iter()
        .enumerate()
        .filter(|(_, &e)| h.edge_contains(e, u))
        .map(|(p, _)| p)
        .collect();
    let b = b_positions.len();
    let q = intervals(c, &b_positions);
    let q_prime = intervals(c, &w_positions);
    Ok(IntervalBounds {
        holds_edge_form: wset.len() + b + q <= c + 2,
        holds_vertex_form: b + wset.len() + q_prime <= c + 2,
        b,
        q,
        q_prime,
    })
}

/// Number of maximal circular runs of consecutive positions.
fn intervals(c: usize, positions: &BTreeSet<usize>) -> usize {
    if positions.is_empty() {
        return 0;
    }
    if positions.len() == c {
        return 1;
    }
    positions.iter().filter(|&&p| !positions.contains(&((p + c - 1) % c))).count()
}
