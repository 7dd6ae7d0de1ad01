//! Extremal cycle-path structures: lollipops, disjoint cycle-path pairs,
//! disjoint cycle-cycle pairs, their rank vectors, the reusable improvement
//! moves, and a heuristic long-cycle driver built on them.
//!
//! The rank order is lexicographic: cycle size, then off-cycle path size,
//! then path-vertex incidences on cycle edges counted with multiplicity,
//! then (for pairs only) cycle-beats-path, then the number of path edges
//! fully inside the off-cycle vertices. A structure is a local optimum when
//! no move strictly raises its rank or lengthens its cycle.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cycles::{
    circumference, for_each_cycle_of_length, validate_cycle, validate_path, BergeCycle,
    BergePath, PathKind,
};
use crate::hypergraph::Hypergraph;
use crate::lemmas::is_expanding;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LollipopKind {
    /// Path starts at a cycle vertex; shares exactly that vertex, no edges.
    Ordinary,
    /// Partial path starts with a cycle edge; shares exactly that edge,
    /// no vertices.
    Partial,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lollipop {
    pub cycle: BergeCycle,
    pub path: BergePath,
    pub kind: LollipopKind,
}

/// A cycle and a path with disjoint defining vertices and edges.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DcpPair {
    pub cycle: BergeCycle,
    pub path: BergePath,
}

/// A cycle and a second cycle with disjoint defining vertices and edges.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DccPair {
    pub cycle: BergeCycle,
    pub second_cycle: BergeCycle,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Structure {
    Lollipop(Lollipop),
    Dcp(DcpPair),
    Dcc(DccPair),
}

impl Structure {
    pub fn cycle(&self) -> &BergeCycle {
        match self {
            Structure::Lollipop(l) => &l.cycle,
            Structure::Dcp(p) => &p.cycle,
            Structure::Dcc(p) => &p.cycle,
        }
    }

    pub fn family(&self) -> RankFamily {
        match self {
            Structure::Lollipop(_) => RankFamily::Lollipop,
            _ => RankFamily::Pair,
        }
    }
}

/// Lollipops are ranked among lollipops, dcp- and dcc-pairs jointly among
/// pairs; the two orders are incomparable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RankFamily {
    Lollipop,
    Pair,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankVector {
    pub family: RankFamily,
    pub r1: usize,
    pub r2: usize,
    pub r3: usize,
    /// 1 when the secondary object is itself a cycle; 0 otherwise.
    /// Always 0 in the lollipop family, where it never discriminates.
    pub s4: usize,
    pub r4: usize,
}

impl RankVector {
    fn key(&self) -> (usize, usize, usize, usize, usize) {
        (self.r1, self.r2, self.r3, self.s4, self.r4)
    }

    /// Lexicographic comparison; mixing families is an input error.
    pub fn compare(&self, other: &RankVector) -> Result<Ordering> {
        if self.family != other.family {
            return Err(Error::input("rank vectors from different structure families"));
        }
        Ok(self.key().cmp(&other.key()))
    }
}

fn vset(it: &[usize]) -> BTreeSet<usize> {
    it.iter().copied().collect()
}

/// Validate a structure against its defining invariants and `h`.
pub fn validate_structure(h: &Hypergraph, s: &Structure) -> Result<()> {
    let bad = |msg: &str| Err(Error::input(msg.to_string()));
    match s {
        Structure::Lollipop(l) => {
            if !validate_cycle(h, &l.cycle) {
                return bad("lollipop cycle is not a Berge cycle");
            }
            if !validate_path(h, &l.path) {
                return bad("lollipop path is not a Berge path");
            }
            let cv = vset(&l.cycle.vertices);
            let ce = vset(&l.cycle.edge_ids);
            let shared_v = l.path.vertices.iter().filter(|v| cv.contains(v)).count();
            let shared_e = l.path.edge_ids.iter().filter(|e| ce.contains(e)).count();
            match l.kind {
                LollipopKind::Ordinary => {
                    if l.path.kind != PathKind::Full {
                        return bad("ordinary lollipop requires a full path");
                    }
                    if !cv.contains(&l.path.first_vertex()) || shared_v != 1 || shared_e != 0 {
                        return bad("ordinary lollipop must share exactly its first vertex");
                    }
                }
                LollipopKind::Partial => {
                    if l.path.kind != PathKind::Partial {
                        return bad("partial lollipop requires a partial path");
                    }
                    if !ce.contains(&l.path.edge_ids[0]) || shared_v != 0 || shared_e != 1 {
                        return bad("partial lollipop must share exactly its leading edge");
                    }
                }
            }
        }
        Structure::Dcp(p) => {
            if !validate_cycle(h, &p.cycle) {
                return bad("pair cycle is not a Berge cycle");
            }
            if p.path.kind != PathKind::Full || !validate_path(h, &p.path) {
                return bad("pair path is not a full Berge path");
            }
            let cv = vset(&p.cycle.vertices);
            let ce = vset(&p.cycle.edge_ids);
            if p.path.vertices.iter().any(|v| cv.contains(v))
                || p.path.edge_ids.iter().any(|e| ce.contains(e))
            {
                return bad("pair path must avoid the cycle's defining vertices and edges");
            }
        }
        Structure::Dcc(p) => {
            if !validate_cycle(h, &p.cycle) || !validate_cycle(h, &p.second_cycle) {
                return bad("both cycles of a cycle-cycle pair must be Berge cycles");
            }
            let cv = vset(&p.cycle.vertices);
            let ce = vset(&p.cycle.edge_ids);
            if p.second_cycle.vertices.iter().any(|v| cv.contains(v))
                || p.second_cycle.edge_ids.iter().any(|e| ce.contains(e))
            {
                return bad("cycle-cycle pair must have disjoint defining elements");
            }
        }
    }
    Ok(())
}

/// Rank of a structure: see the module docs for the component meanings.
/// For pairs the off-cycle sets are the whole path sets by disjointness.
pub fn rank(h: &Hypergraph, s: &Structure) -> Result<RankVector> {
    validate_structure(h, s)?;
    let cycle = s.cycle();
    let ce = vset(&cycle.edge_ids);
    let (pv_off, pe, s4): (BTreeSet<usize>, Vec<usize>, usize) = match s {
        Structure::Lollipop(l) => {
            let cv = vset(&l.cycle.vertices);
            let off = l.path.vertices.iter().copied().filter(|v| !cv.contains(v)).collect();
            (off, l.path.edge_ids.clone(), 0)
        }
        Structure::Dcp(p) => (vset(&p.path.vertices), p.path.edge_ids.clone(), 0),
        Structure::Dcc(p) => (vset(&p.second_cycle.vertices), p.second_cycle.edge_ids.clone(), 1),
    };
    let pe_set = vset(&pe);
    let r3 = cycle
        .edge_ids
        .iter()
        .filter(|e| !pe_set.contains(e))
        .map(|&e| h.edge(e).iter().filter(|v| pv_off.contains(v)).count())
        .sum();
    let r4 = pe
        .iter()
        .filter(|&&f| !ce.contains(&f) && h.edge(f).iter().all(|v| pv_off.contains(v)))
        .count();
    Ok(RankVector { family: s.family(), r1: cycle.len(), r2: pv_off.len(), r3, s4, r4 })
}

// ---------------------------------------------------------------------------
// exhaustive enumeration

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StructureFamily {
    Lollipop,
    Dcp,
    Dcc,
}

#[derive(Debug, Clone)]
pub struct BestOutcome {
    pub best: Option<(Structure, RankVector)>,
    /// false when the budget ran out before the enumeration finished
    pub complete: bool,
    pub expansions: u64,
}

struct Enumerator<'a> {
    h: &'a Hypergraph,
    family: StructureFamily,
    budget: u64,
    expansions: u64,
    truncated: bool,
    best: Option<(Structure, RankVector)>,
}

impl<'a> Enumerator<'a> {
    fn spend(&mut self) -> bool {
        if self.expansions >= self.budget {
            self.truncated = true;
            return false;
        }
        self.expansions += 1;
        true
    }

    fn offer(&mut self, s: Structure) {
        let r = match rank(self.h, &s) {
            Ok(r) => r,
            Err(_) => return,
        };
        // first-found wins ties, so the scan order fixes the witness
        match &self.best {
            Some((_, cur)) if r.compare(cur).unwrap() != Ordering::Greater => {}
            _ => self.best = Some((s, r)),
        }
    }

    /// DFS over paths hanging off `cycle`. `nodes` holds the path vertices
    /// so far (for ordinary lollipops including the on-cycle start), `links`
    /// the edges between them; `lead` is the shared leading cycle edge of a
    /// partial lollipop.
    fn paths(
        &mut self,
        cycle: &BergeCycle,
        cv: &BTreeSet<usize>,
        ce: &BTreeSet<usize>,
        nodes: &mut Vec<usize>,
        links: &mut Vec<usize>,
        lead: Option<usize>,
        attach: bool,
    ) {
        if !self.spend() {
            return;
        }
        self.record(cycle, ce, nodes, links, lead, attach);
        let last = *nodes.last().unwrap();
        for e in 0..self.h.m() {
            if ce.contains(&e) || links.contains(&e) || !self.h.edge_contains(e, last) {
                continue;
            }
            for &w in self.h.edge(e) {
                if w == last || cv.contains(&w) || nodes.contains(&w) {
                    continue;
                }
                nodes.push(w);
                links.push(e);
                self.paths(cycle, cv, ce, nodes, links, lead, attach);
                nodes.pop();
                links.pop();
                if self.truncated {
                    return;
                }
            }
        }
    }

    fn record(
        &mut self,
        cycle: &BergeCycle,
        ce: &BTreeSet<usize>,
        nodes: &[usize],
        links: &[usize],
        lead: Option<usize>,
        attach: bool,
    ) {
        match self.family {
            StructureFamily::Lollipop => {
                let path = if let Some(f0) = lead {
                    let mut eids = vec![f0];
                    eids.extend_from_slice(links);
                    BergePath { vertices: nodes.to_vec(), edge_ids: eids, kind: PathKind::Partial }
                } else {
                    BergePath {
                        vertices: nodes.to_vec(),
                        edge_ids: links.to_vec(),
                        kind: PathKind::Full,
                    }
                };
                let kind = if lead.is_some() { LollipopKind::Partial } else { LollipopKind::Ordinary };
                debug_assert!(attach == lead.is_none());
                self.offer(Structure::Lollipop(Lollipop { cycle: cycle.clone(), path, kind }));
            }
            StructureFamily::Dcp => {
                let path = BergePath {
                    vertices: nodes.to_vec(),
                    edge_ids: links.to_vec(),
                    kind: PathKind::Full,
                };
                self.offer(Structure::Dcp(DcpPair { cycle: cycle.clone(), path }));
            }
            StructureFamily::Dcc => {
                if nodes.len() < 2 {
                    return;
                }
                let (first, last) = (nodes[0], *nodes.last().unwrap());
                for g in 0..self.h.m() {
                    if ce.contains(&g)
                        || links.contains(&g)
                        || !self.h.edge_contains(g, first)
                        || !self.h.edge_contains(g, last)
                    {
                        continue;
                    }
                    let mut eids = links.to_vec();
                    eids.push(g);
                    let second = BergeCycle { vertices: nodes.to_vec(), edge_ids: eids };
                    self.offer(Structure::Dcc(DccPair { cycle: cycle.clone(), second_cycle: second }));
                }
            }
        }
    }
}

/// Exhaustively find a best structure of the family: enumerate all longest
/// cycles (up to vertex/edge sets), then all secondary objects on each.
/// Intended for desk-scale instances; the budget counts search nodes.
pub fn enumerate_best(
    h: &Hypergraph,
    family: StructureFamily,
    budget: u64,
) -> Result<BestOutcome> {
    let search = circumference(h, budget);
    let mut en = Enumerator {
        h,
        family,
        budget,
        expansions: search.expansions,
        truncated: !search.complete,
        best: None,
    };
    if search.length == 0 {
        return Ok(BestOutcome { best: None, complete: search.complete, expansions: en.expansions });
    }
    let mut groups: Vec<BergeCycle> = Vec::new();
    let mut seen: BTreeSet<(Vec<usize>, Vec<usize>)> = BTreeSet::new();
    let left = budget.saturating_sub(en.expansions);
    let complete_cycles = for_each_cycle_of_length(h, search.length, left, &mut |vs, es| {
        let mut key = (vs.to_vec(), es.to_vec());
        key.0.sort_unstable();
        key.1.sort_unstable();
        if seen.insert(key) {
            groups.push(BergeCycle { vertices: vs.to_vec(), edge_ids: es.to_vec() });
        }
    });
    if !complete_cycles {
        en.truncated = true;
    }
    for cycle in &groups {
        let cv = vset(&cycle.vertices);
        let ce = vset(&cycle.edge_ids);
        match family {
            StructureFamily::Lollipop => {
                for &a in &cycle.vertices {
                    let mut nodes = vec![a];
                    en.paths(cycle, &cv, &ce, &mut nodes, &mut Vec::new(), None, true);
                }
                for &f0 in &cycle.edge_ids {
                    for &u1 in h.edge(f0) {
                        if cv.contains(&u1) {
                            continue;
                        }
                        let mut nodes = vec![u1];
                        en.paths(cycle, &cv, &ce, &mut nodes, &mut Vec::new(), Some(f0), false);
                    }
                }
            }
            StructureFamily::Dcp | StructureFamily::Dcc => {
                for u1 in 0..h.n() {
                    if cv.contains(&u1) {
                        continue;
                    }
                    let mut nodes = vec![u1];
                    en.paths(cycle, &cv, &ce, &mut nodes, &mut Vec::new(), None, false);
                }
            }
        }
        if en.truncated {
            break;
        }
    }
    Ok(BestOutcome { best: en.best, complete: !en.truncated, expansions: en.expansions })
}

// ---------------------------------------------------------------------------
// improvement moves

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Move {
    PathExtension,
    CycleClosure,
    EdgeSwap,
    SegmentDetour,
    SegmentSplice,
    ChordReversal,
    ExpandingSet,
    PathReversal,
}

impl Move {
    pub fn name(self) -> &'static str {
        match self {
            Move::PathExtension => "path-extension",
            Move::CycleClosure => "cycle-closure",
            Move::EdgeSwap => "edge-swap",
            Move::SegmentDetour => "segment-detour",
            Move::SegmentSplice => "segment-splice",
            Move::ChordReversal => "chord-reversal",
            Move::ExpandingSet => "expanding-set",
            Move::PathReversal => "path-reversal",
        }
    }
}

#[derive(Debug, Clone)]
pub enum MoveOutcome {
    /// Same cycle, strictly better rank in the structure's family.
    Structure(Structure),
    /// A Berge cycle strictly longer than the structure's cycle.
    Cycle(BergeCycle),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Origin {
    Ordinary,
    Partial,
    Dcp,
    Dcc,
}

/// One end-to-end reading of a structure's secondary object as a path:
/// `nodes[i]` joined to `nodes[i+1]` by `links[i]`. Lollipops and dcp-pairs
/// have a single view; a dcc-pair has one per rotation and direction of its
/// second cycle (any consecutive pair may serve as the path's ends).
struct View<'a> {
    h: &'a Hypergraph,
    cycle: &'a BergeCycle,
    cv: BTreeSet<usize>,
    ce: BTreeSet<usize>,
    /// every edge of the structure's secondary object (for H' and swaps)
    se: BTreeSet<usize>,
    nodes: Vec<usize>,
    links: Vec<usize>,
    /// leading shared cycle edge of a partial lollipop
    lead: Option<usize>,
    /// nodes[0] sits on the cycle (ordinary lollipop)
    attach: bool,
    origin: Origin,
}

impl<'a> View<'a> {
    fn node_set(&self) -> BTreeSet<usize> {
        vset(&self.nodes)
    }

    /// Off-cycle path vertices.
    fn off_set(&self) -> BTreeSet<usize> {
        let mut s = self.node_set();
        if self.attach {
            s.remove(&self.nodes[0]);
        }
        s
    }

    fn in_hprime(&self, e: usize) -> bool {
        !self.ce.contains(&e) && !self.se.contains(&e)
    }

    /// Walk along the path between node positions, in either direction.
    fn walk(&self, from: usize, to: usize) -> (Vec<usize>, Vec<usize>) {
        if from <= to {
            (self.nodes[from..=to].to_vec(), self.links[from..to].to_vec())
        } else {
            let mut ns = self.nodes[to..=from].to_vec();
            let mut ls = self.links[to..from].to_vec();
            ns.reverse();
            ls.reverse();
            (ns, ls)
        }
    }

    /// Rebuild a structure around the same cycle from modified path pieces.
    /// A shrunken dcc view (its closure edge dropped) comes back as a
    /// dcp-pair.
    fn rebuild(&self, nodes: Vec<usize>, links: Vec<usize>) -> Structure {
        match self.origin {
            Origin::Ordinary => Structure::Lollipop(Lollipop {
                cycle: self.cycle.clone(),
                path: BergePath { vertices: nodes, edge_ids: links, kind: PathKind::Full },
                kind: LollipopKind::Ordinary,
            }),
            Origin::Partial => {
                let mut eids = vec![self.lead.unwrap()];
                eids.extend(links);
                Structure::Lollipop(Lollipop {
                    cycle: self.cycle.clone(),
                    path: BergePath { vertices: nodes, edge_ids: eids, kind: PathKind::Partial },
                    kind: LollipopKind::Partial,
                })
            }
            Origin::Dcp | Origin::Dcc => Structure::Dcp(DcpPair {
                cycle: self.cycle.clone(),
                path: BergePath { vertices: nodes, edge_ids: links, kind: PathKind::Full },
            }),
        }
    }
}

fn make_views<'a>(h: &'a Hypergraph, s: &'a Structure) -> Vec<View<'a>> {
    match s {
        Structure::Lollipop(l) => {
            let (nodes, links, lead, origin) = match l.kind {
                LollipopKind::Ordinary => {
                    (l.path.vertices.clone(), l.path.edge_ids.clone(), None, Origin::Ordinary)
                }
                LollipopKind::Partial => (
                    l.path.vertices.clone(),
                    l.path.edge_ids[1..].to_vec(),
                    Some(l.path.edge_ids[0]),
                    Origin::Partial,
                ),
            };
            vec![View {
                h,
                cycle: &l.cycle,
                cv: vset(&l.cycle.vertices),
                ce: vset(&l.cycle.edge_ids),
                se: vset(&l.path.edge_ids),
                nodes,
                links,
                lead,
                attach: l.kind == LollipopKind::Ordinary,
                origin,
            }]
        }
        Structure::Dcp(p) => vec![View {
            h,
            cycle: &p.cycle,
            cv: vset(&p.cycle.vertices),
            ce: vset(&p.cycle.edge_ids),
            se: vset(&p.path.edge_ids),
            nodes: p.path.vertices.clone(),
            links: p.path.edge_ids.clone(),
            lead: None,
            attach: false,
            origin: Origin::Dcp,
        }],
        Structure::Dcc(p) => {
            let l = p.second_cycle.len();
            let vs = &p.second_cycle.vertices;
            let es = &p.second_cycle.edge_ids;
            let mut views = Vec::with_capacity(2 * l);
            for t in 0..l {
                // forward: nodes w_t.. w_{t-1}, dropping the edge back into w_t
                let nodes: Vec<usize> = (0..l).map(|i| vs[(t + i) % l]).collect();
                let links: Vec<usize> = (0..l - 1).map(|i| es[(t + i) % l]).collect();
                views.push((nodes, links));
                // backward: reverse the same run
                let nodes: Vec<usize> = (0..l).map(|i| vs[(t + l - i) % l]).collect();
                let links: Vec<usize> = (0..l - 1).map(|i| es[(t + l - 1 - i) % l]).collect();
                views.push((nodes, links));
            }
            views
                .into_iter()
                .map(|(nodes, links)| View {
                    h,
                    cycle: &p.cycle,
                    cv: vset(&p.cycle.vertices),
                    ce: vset(&p.cycle.edge_ids),
                    se: vset(&p.second_cycle.edge_ids),
                    nodes,
                    links,
                    lead: None,
                    attach: false,
                    origin: Origin::Dcc,
                })
                .collect()
        }
    }
}

/// Assemble a cycle from a kept cycle arc plus a path walk:
/// arc vertices, connector edge, walk, connector edge back to the arc start.
fn splice(
    cycle: &BergeCycle,
    keep_from: usize,
    keep_count: usize,
    conn_first: usize,
    wnodes: &[usize],
    wlinks: &[usize],
    conn_last: usize,
) -> BergeCycle {
    let c = cycle.len();
    let mut vertices = Vec::with_capacity(keep_count + wnodes.len());
    let mut edge_ids = Vec::with_capacity(keep_count + wnodes.len());
    for i in 0..keep_count {
        vertices.push(cycle.vertices[(keep_from + i) % c]);
    }
    for i in 0..keep_count.saturating_sub(1) {
        edge_ids.push(cycle.edge_ids[(keep_from + i) % c]);
    }
    edge_ids.push(conn_first);
    vertices.extend_from_slice(wnodes);
    edge_ids.extend_from_slice(wlinks);
    edge_ids.push(conn_last);
    BergeCycle { vertices, edge_ids }
}

fn m1_path_extension(v: &View) -> Option<MoveOutcome> {
    let last = *v.nodes.last().unwrap();
    let taken = v.node_set();
    for e in 0..v.h.m() {
        if !v.in_hprime(e) || !v.h.edge_contains(e, last) {
            continue;
        }
        for &w in v.h.edge(e) {
            if w == last || v.cv.contains(&w) || taken.contains(&w) {
                continue;
            }
            let mut nodes = v.nodes.clone();
            let mut links = v.links.clone();
            nodes.push(w);
            links.push(e);
            return Some(MoveOutcome::Structure(v.rebuild(nodes, links)));
        }
    }
    None
}

fn m8_cycle_closure(h: &Hypergraph, p: &DcpPair) -> Option<MoveOutcome> {
    if p.path.vertices.len() < 2 {
        return None;
    }
    let ce = vset(&p.cycle.edge_ids);
    let (first, last) = (p.path.first_vertex(), p.path.last_vertex());
    for g in 0..h.m() {
        if ce.contains(&g)
            || p.path.edge_ids.contains(&g)
            || !h.edge_contains(g, first)
            || !h.edge_contains(g, last)
        {
            continue;
        }
        let mut eids = p.path.edge_ids.clone();
        eids.push(g);
        let second = BergeCycle { vertices: p.path.vertices.clone(), edge_ids: eids };
        return Some(MoveOutcome::Structure(Structure::Dcc(DccPair {
            cycle: p.cycle.clone(),
            second_cycle: second,
        })));
    }
    None
}

fn m3_edge_swap(v: &View, s: &Structure) -> Option<MoveOutcome> {
    let off = v.off_set();
    let c = v.cycle.len();
    for i in 0..c {
        let ei = v.cycle.edge_ids[i];
        if v.lead == Some(ei) {
            continue; // a partial lollipop keeps its shared leading edge
        }
        let cur = v.h.edge(ei).iter().filter(|x| off.contains(x)).count();
        let (a, b) = (v.cycle.vertices[i], v.cycle.vertices[(i + 1) % c]);
        for g in 0..v.h.m() {
            if !v.in_hprime(g) || !v.h.edge_contains(g, a) || !v.h.edge_contains(g, b) {
                continue;
            }
            if v.h.edge(g).iter().filter(|x| off.contains(x)).count() <= cur {
                continue;
            }
            let mut eids = v.cycle.edge_ids.clone();
            eids[i] = g;
            let cycle = BergeCycle { vertices: v.cycle.vertices.clone(), edge_ids: eids };
            if !validate_cycle(v.h, &cycle) {
                continue;
            }
            let swapped = match s {
                Structure::Lollipop(l) => {
                    Structure::Lollipop(Lollipop { cycle, path: l.path.clone(), kind: l.kind })
                }
                Structure::Dcp(p) => Structure::Dcp(DcpPair { cycle, path: p.path.clone() }),
                Structure::Dcc(p) => {
                    Structure::Dcc(DccPair { cycle, second_cycle: p.second_cycle.clone() })
                }
            };
            return Some(MoveOutcome::Structure(swapped));
        }
    }
    None
}

/// Detour through the path: an edge g joins a path vertex to v_i while a
/// cycle edge at v_i (or an H'-edge at a neighbor of v_i) also meets the
/// path, so the short cycle segment can ride along the path instead.
fn m2_segment_detour(v: &View) -> Option<MoveOutcome> {
    let c = v.cycle.len();
    let first_off = if v.attach { 1 } else { 0 };
    for g in 0..v.h.m() {
        if v.ce.contains(&g) {
            continue;
        }
        for mp in first_off..v.nodes.len() {
            if !v.h.edge_contains(g, v.nodes[mp]) {
                continue;
            }
            for ci in 0..c {
                if !v.h.edge_contains(g, v.cycle.vertices[ci]) {
                    continue;
                }
                let prev = v.cycle.edge_ids[(ci + c - 1) % c];
                let next = v.cycle.edge_ids[ci];
                let vprev = v.cycle.vertices[(ci + c - 1) % c];
                let vnext = v.cycle.vertices[(ci + 1) % c];
                // connectors entering the path on either side of v_ci
                let mut firsts = vec![prev];
                let mut lasts = vec![next];
                for e2 in 0..v.h.m() {
                    if v.in_hprime(e2) && e2 != g {
                        if v.h.edge_contains(e2, vprev) {
                            firsts.push(e2);
                        }
                        if v.h.edge_contains(e2, vnext) {
                            lasts.push(e2);
                        }
                    }
                }
                for &cf in &firsts {
                    for jp in first_off..v.nodes.len() {
                        if !v.h.edge_contains(cf, v.nodes[jp]) {
                            continue;
                        }
                        let (wn, wl) = v.walk(jp, mp);
                        let cand = splice(v.cycle, ci, c, cf, &wn, &wl, g);
                        if validate_cycle(v.h, &cand) {
                            return Some(MoveOutcome::Cycle(cand));
                        }
                    }
                }
                for &cl in &lasts {
                    for jp in first_off..v.nodes.len() {
                        if !v.h.edge_contains(cl, v.nodes[jp]) {
                            continue;
                        }
                        let (wn, wl) = v.walk(mp, jp);
                        let cand = splice(v.cycle, (ci + 1) % c, c, g, &wn, &wl, cl);
                        if validate_cycle(v.h, &cand) {
                            return Some(MoveOutcome::Cycle(cand));
                        }
                    }
                }
            }
        }
    }
    None
}

/// Replace a short cycle arc between two path-incident cycle edges (or
/// connector edges) by the path itself.
fn m6_segment_splice(v: &View) -> Option<MoveOutcome> {
    let c = v.cycle.len();
    let lp = v.nodes.len() - 1;
    if lp == 0 && v.attach {
        return None;
    }
    let first_off = if v.attach { 1 } else { 0 };
    let dist = |a: usize, b: usize| (b + c - a) % c;
    let try_cand = |cand: BergeCycle| -> Option<MoveOutcome> {
        if cand.len() > c && validate_cycle(v.h, &cand) {
            Some(MoveOutcome::Cycle(cand))
        } else {
            None
        }
    };
    // cycle edges holding the path's last vertex
    let ej: Vec<usize> = (0..c)
        .filter(|&j| v.h.edge_contains(v.cycle.edge_ids[j], v.nodes[lp]))
        .collect();
    for qp in first_off..lp {
        let uq = v.nodes[qp];
        // both ends on cycle edges
        for i in (0..c).filter(|&i| v.h.edge_contains(v.cycle.edge_ids[i], uq)) {
            for &j in &ej {
                if i == j {
                    continue;
                }
                let (wn, wl) = v.walk(qp, lp);
                let keep = dist(j + 1, i) + 1;
                let cand = splice(
                    v.cycle,
                    (j + 1) % c,
                    keep,
                    v.cycle.edge_ids[i],
                    &wn,
                    &wl,
                    v.cycle.edge_ids[j],
                );
                if let Some(out) = try_cand(cand) {
                    return Some(out);
                }
                let (wn, wl) = v.walk(lp, qp);
                let keep = dist(i + 1, j) + 1;
                let cand = splice(
                    v.cycle,
                    (i + 1) % c,
                    keep,
                    v.cycle.edge_ids[j],
                    &wn,
                    &wl,
                    v.cycle.edge_ids[i],
                );
                if let Some(out) = try_cand(cand) {
                    return Some(out);
                }
            }
        }
        // one or both ends on non-cycle connector edges
        for e in 0..v.h.m() {
            if v.ce.contains(&e) || !v.h.edge_contains(e, uq) {
                continue;
            }
            for i in (0..c).filter(|&i| v.h.edge_contains(e, v.cycle.vertices[i])) {
                for &j in &ej {
                    let (wn, wl) = v.walk(qp, lp);
                    let keep = dist(j + 1, i) + 1;
                    let cand =
                        splice(v.cycle, (j + 1) % c, keep, e, &wn, &wl, v.cycle.edge_ids[j]);
                    if let Some(out) = try_cand(cand) {
                        return Some(out);
                    }
                    let (wn, wl) = v.walk(lp, qp);
                    let keep = dist(i, j) + 1;
                    let cand = splice(v.cycle, i, keep, v.cycle.edge_ids[j], &wn, &wl, e);
                    if let Some(out) = try_cand(cand) {
                        return Some(out);
                    }
                }
                for f in 0..v.h.m() {
                    if f == e || v.ce.contains(&f) || !v.h.edge_contains(f, v.nodes[lp]) {
                        continue;
                    }
                    for j in (0..c).filter(|&j| v.h.edge_contains(f, v.cycle.vertices[j])) {
                        if i == j {
                            continue;
                        }
                        let (wn, wl) = v.walk(qp, lp);
                        let keep = dist(j, i) + 1;
                        let cand = splice(v.cycle, j, keep, e, &wn, &wl, f);
                        if let Some(out) = try_cand(cand) {
                            return Some(out);
                        }
                        let (wn, wl) = v.walk(lp, qp);
                        let keep = dist(i, j) + 1;
                        let cand = splice(v.cycle, i, keep, f, &wn, &wl, e);
                        if let Some(out) = try_cand(cand) {
                            return Some(out);
                        }
                    }
                }
            }
        }
    }
    None
}

/// Swap an interior path edge for an H'-edge through the path's last vertex
/// that also contains or is contained in the off-cycle path vertices,
/// reversing the tail. `require_gain` keeps only swaps that raise the count
/// of path edges fully inside the off-cycle vertices.
fn m5_chord_swaps(v: &View, require_gain: bool) -> Vec<Structure> {
    let mut out = Vec::new();
    if v.origin == Origin::Dcc || v.links.len() < 2 {
        return out;
    }
    let off = v.off_set();
    let last = *v.nodes.last().unwrap();
    let lo = if v.attach { 1 } else { 0 };
    let inside = |e: usize| v.h.edge(e).iter().all(|x| off.contains(x));
    for t in lo..v.links.len() - 1 {
        let old_in = inside(v.links[t]) as isize;
        for g in 0..v.h.m() {
            if !v.in_hprime(g)
                || !v.h.edge_contains(g, last)
                || !v.h.edge_contains(g, v.nodes[t])
            {
                continue;
            }
            let contains_off = off.iter().all(|&x| v.h.edge_contains(g, x));
            if !contains_off && !inside(g) {
                continue;
            }
            let gain = inside(g) as isize - old_in;
            if (require_gain && gain <= 0) || (!require_gain && gain != 0) {
                continue;
            }
            let mut nodes: Vec<usize> = v.nodes[..=t].to_vec();
            nodes.push(last);
            nodes.extend(v.nodes[t + 1..v.nodes.len() - 1].iter().rev());
            let mut links: Vec<usize> = v.links[..t].to_vec();
            links.push(g);
            links.extend(v.links[t + 1..].iter().rev());
            out.push(v.rebuild(nodes, links));
        }
    }
    out
}

/// Re-root the path: when its last vertex lies in an interior path edge,
/// the tail beyond that edge can be traversed in reverse. Rank-preserving.
fn m4_path_reversals(v: &View) -> Vec<Structure> {
    let mut out = Vec::new();
    if v.origin == Origin::Dcc || v.links.len() < 2 {
        return out;
    }
    let last = *v.nodes.last().unwrap();
    for t in 0..v.links.len() - 1 {
        if !v.h.edge_contains(v.links[t], last) {
            continue;
        }
        let mut nodes: Vec<usize> = v.nodes[..=t].to_vec();
        nodes.push(last);
        nodes.extend(v.nodes[t + 1..v.nodes.len() - 1].iter().rev());
        let mut links: Vec<usize> = v.links[..=t].to_vec();
        links.extend(v.links[t + 1..].iter().rev());
        out.push(v.rebuild(nodes, links));
    }
    out
}

/// Expanding-set lengthening: an off-cycle vertex u inside two cycle edges
/// e_i, e_j whose left endpoints are joined by a connector path off the
/// cycle yields a cycle one vertex longer.
fn m7_expanding_set(h: &Hypergraph, cycle: &BergeCycle) -> Option<MoveOutcome> {
    let c = cycle.len();
    let cv = vset(&cycle.vertices);
    for u in 0..h.n() {
        if cv.contains(&u) {
            continue;
        }
        let incident: Vec<usize> =
            (0..c).filter(|&i| h.edge_contains(cycle.edge_ids[i], u)).collect();
        for (a, &p) in incident.iter().enumerate() {
            for &q in &incident[a + 1..] {
                let (vi, vj) = (cycle.vertices[p], cycle.vertices[q]);
                let conn = match is_expanding(h, cycle, u, &[vi, vj]) {
                    Ok(Some(mut cs)) if !cs.is_empty() => cs.remove(0),
                    _ => continue,
                };
                let mut rp = conn.path;
                if rp.first_vertex() != vi {
                    rp.vertices.reverse();
                    rp.edge_ids.reverse();
                }
                // v_0..v_p, R, v_q, reversed arc v_{q-1}..v_{p+1}, u, v_{q+1}..
                let mut vertices: Vec<usize> = cycle.vertices[..=p].to_vec();
                vertices.extend_from_slice(&rp.vertices[1..]);
                vertices.extend(cycle.vertices[p + 1..q].iter().rev());
                vertices.push(u);
                vertices.extend_from_slice(&cycle.vertices[q + 1..]);
                let mut edge_ids: Vec<usize> = cycle.edge_ids[..p].to_vec();
                edge_ids.extend_from_slice(&rp.edge_ids);
                edge_ids.extend(cycle.edge_ids[p + 1..q].iter().rev());
                edge_ids.push(cycle.edge_ids[p]);
                edge_ids.push(cycle.edge_ids[q]);
                edge_ids.extend_from_slice(&cycle.edge_ids[q + 1..]);
                let cand = BergeCycle { vertices, edge_ids };
                if cand.len() > c && validate_cycle(h, &cand) {
                    return Some(MoveOutcome::Cycle(cand));
                }
            }
        }
    }
    None
}

/// All improving moves available from `s`, in catalog order (cheapest
/// first), at most one application per move. Every returned outcome either
/// strictly raises the rank within the structure's family or is a cycle
/// strictly longer than the structure's. An empty list marks a local
/// optimum.
pub fn improvement_moves(
    h: &Hypergraph,
    s: &Structure,
) -> Result<Vec<(Move, MoveOutcome)>> {
    validate_structure(h, s)?;
    let base = rank(h, s)?;
    let views = make_views(h, s);
    let mut out: Vec<(Move, MoveOutcome)> = Vec::new();
    let push = |mv: Move, o: MoveOutcome, out: &mut Vec<(Move, MoveOutcome)>| -> bool {
        let ok = match &o {
            MoveOutcome::Cycle(c) => c.len() > s.cycle().len() && validate_cycle(h, c),
            MoveOutcome::Structure(ns) => match rank(h, ns) {
                Ok(r) => r.compare(&base).map(|o| o == Ordering::Greater).unwrap_or(false),
                Err(_) => false,
            },
        };
        debug_assert!(ok, "{} produced a non-improving outcome", mv.name());
        if ok {
            out.push((mv, o));
        }
        ok
    };
    for v in &views {
        if let Some(o) = m1_path_extension(v) {
            if push(Move::PathExtension, o, &mut out) {
                break;
            }
        }
    }
    if let Structure::Dcp(p) = s {
        if let Some(o) = m8_cycle_closure(h, p) {
            push(Move::CycleClosure, o, &mut out);
        }
    }
    if let Some(o) = m3_edge_swap(&views[0], s) {
        push(Move::EdgeSwap, o, &mut out);
    }
    for v in &views {
        if let Some(o) = m2_segment_detour(v) {
            if push(Move::SegmentDetour, o, &mut out) {
                break;
            }
        }
    }
    for v in &views {
        if let Some(o) = m6_segment_splice(v) {
            if push(Move::SegmentSplice, o, &mut out) {
                break;
            }
        }
    }
    if let Some(ns) = m5_chord_swaps(&views[0], true).into_iter().next() {
        push(Move::ChordReversal, MoveOutcome::Structure(ns), &mut out);
    }
    if let Some(o) = m7_expanding_set(h, s.cycle()) {
        push(Move::ExpandingSet, o, &mut out);
    }
    Ok(out)
}

/// Rank-preserving variants of `s` for escaping stalls: path re-rootings
/// and rank-equal chord swaps. Each result is valid and has the same rank.
pub fn diversification_moves(h: &Hypergraph, s: &Structure) -> Result<Vec<Structure>> {
    validate_structure(h, s)?;
    let base = rank(h, s)?;
    let views = make_views(h, s);
    let mut out = Vec::new();
    for v in &views {
        for cand in m4_path_reversals(v).into_iter().chain(m5_chord_swaps(v, false)) {
            let same_rank = rank(h, &cand)
                .map(|r| r.compare(&base).unwrap() == Ordering::Equal)
                .unwrap_or(false);
            if cand != *s && same_rank {
                out.push(cand);
            }
        }
        if v.origin == Origin::Dcc {
            break; // rotations of the second cycle change nothing set-wise
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// neighbor sets of the path's last vertex

/// S1: H'-neighbors of the path's last vertex inside V(P).
/// S2: path vertices u_m (including u_0, the attach vertex, or v_c for a
/// partial lollipop) whose outgoing path edge f_m contains the last vertex
/// and which are not already in S1. Their union meets the cycle in at most
/// the attach vertex.
pub fn s_sets(h: &Hypergraph, lol: &Lollipop) -> Result<(BTreeSet<usize>, BTreeSet<usize>)> {
    validate_structure(h, &Structure::Lollipop(lol.clone()))?;
    let ul = lol.path.last_vertex();
    let ce = vset(&lol.cycle.edge_ids);
    let pe = vset(&lol.path.edge_ids);
    let pv = vset(&lol.path.vertices);
    let mut s1 = BTreeSet::new();
    for e in 0..h.m() {
        if ce.contains(&e) || pe.contains(&e) || !h.edge_contains(e, ul) {
            continue;
        }
        for &w in h.edge(e) {
            if w != ul && pv.contains(&w) {
                s1.insert(w);
            }
        }
    }
    // u_0 by convention: the path start, or for a partial lollipop the
    // lower-position endpoint of the shared cycle edge
    let u0 = match lol.kind {
        LollipopKind::Ordinary => lol.path.first_vertex(),
        LollipopKind::Partial => {
            let f0 = lol.path.edge_ids[0];
            let t = lol.cycle.edge_ids.iter().position(|&e| e == f0).unwrap();
            lol.cycle.vertices[t]
        }
    };
    let mut s2 = BTreeSet::new();
    for m in 0..lol.path.edge_ids.len() {
        if !h.edge_contains(lol.path.edge_ids[m], ul) {
            continue;
        }
        let um = match lol.kind {
            LollipopKind::Ordinary => lol.path.vertices[m],
            LollipopKind::Partial => {
                if m == 0 {
                    u0
                } else {
                    lol.path.vertices[m - 1]
                }
            }
        };
        if um != ul && !s1.contains(&um) {
            s2.insert(um);
        }
    }
    let cv = vset(&lol.cycle.vertices);
    debug_assert!(
        s1.union(&s2).filter(|v| cv.contains(v)).all(|&v| v == u0),
        "S1 and S2 may meet the cycle only in the attach vertex"
    );
    Ok((s1, s2))
}

// ---------------------------------------------------------------------------
// heuristic driver

#[derive(Debug, Clone, Serialize)]
pub struct StallDump {
    pub structure: Structure,
    pub rank: RankVector,
}

#[derive(Debug, Clone, Serialize)]
pub struct HeuristicOutcome {
    pub cycle: BergeCycle,
    pub restarts: u64,
    pub steps: u64,
    /// the last locally optimal structure, for counterexample triage
    pub stall: Option<StallDump>,
}

/// A randomized walk that tries to close into a cycle; each loop iteration
/// spends one step of the budget.
fn greedy_cycle(
    h: &Hypergraph,
    rng: &mut ChaCha8Rng,
    steps: &mut u64,
    budget: u64,
) -> Option<BergeCycle> {
    if h.n() == 0 || h.m() < 2 {
        return None;
    }
    let start = rng.gen_range(0..h.n());
    let mut verts = vec![start];
    let mut eids: Vec<usize> = Vec::new();
    loop {
        if *steps >= budget {
            return None;
        }
        *steps += 1;
        let last = *verts.last().unwrap();
        let closures: Vec<usize> = (0..h.m())
            .filter(|e| {
                verts.len() >= 2
                    && !eids.contains(e)
                    && h.edge_contains(*e, last)
                    && h.edge_contains(*e, start)
            })
            .collect();
        let extends: Vec<(usize, usize)> = (0..h.m())
            .filter(|e| !eids.contains(e) && h.edge_contains(*e, last))
            .flat_map(|e| {
                h.edge(e)
                    .iter()
                    .filter(|w| !verts.contains(w))
                    .map(|&w| (e, w))
                    .collect::<Vec<_>>()
            })
            .collect();
        if !closures.is_empty() && (extends.is_empty() || rng.gen_bool(0.33)) {
            let g = closures[rng.gen_range(0..closures.len())];
            eids.push(g);
            let cand = BergeCycle { vertices: verts, edge_ids: eids };
            debug_assert!(validate_cycle(h, &cand));
            return Some(cand);
        }
        if extends.is_empty() {
            return None;
        }
        let (e, w) = extends[rng.gen_range(0..extends.len())];
        verts.push(w);
        eids.push(e);
    }
}

/// Wrap a cycle as a dcp-pair whose path is the off-cycle vertex with the
/// most incidences on cycle edges (rule-R3 seeding); none when the cycle
/// spans every vertex.
fn wrap(h: &Hypergraph, cycle: &BergeCycle) -> Option<Structure> {
    let cv = vset(&cycle.vertices);
    let mut best: Option<(usize, usize)> = None; // (count, vertex)
    for u in 0..h.n() {
        if cv.contains(&u) {
            continue;
        }
        let d = cycle.edge_ids.iter().filter(|&&e| h.edge_contains(e, u)).count();
        if best.map(|(bd, _)| d > bd).unwrap_or(true) {
            best = Some((d, u));
        }
    }
    best.map(|(_, u)| {
        Structure::Dcp(DcpPair { cycle: cycle.clone(), path: BergePath::trivial(u) })
    })
}

/// Heuristic long-cycle search: greedy seed cycles, improvement moves to a
/// fixed point, rank-preserving diversification at stalls, seeded restarts.
/// The reported best length never decreases during a run. Fails with
/// [`Error::NoCycle`] when no cycle was found at all.
pub fn find_long_cycle(h: &Hypergraph, seed: u64, budget: u64) -> Result<HeuristicOutcome> {
    let violations = h.validate();
    if !violations.is_empty() {
        return Err(Error::InvalidHypergraph(violations));
    }
    let cap = h.n().min(h.m());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut steps = 0u64;
    let mut restarts = 0u64;
    let mut best: Option<BergeCycle> = None;
    let mut stall: Option<StallDump> = None;
    'outer: while steps < budget {
        let Some(mut cycle) = greedy_cycle(h, &mut rng, &mut steps, budget) else {
            continue;
        };
        restarts += 1;
        if best.as_ref().map(|b| cycle.len() > b.len()).unwrap_or(true) {
            best = Some(cycle.clone());
        }
        'improve: loop {
            if cycle.len() >= cap || steps >= budget {
                continue 'outer;
            }
            let Some(mut s) = wrap(h, &cycle) else {
                continue 'outer;
            };
            loop {
                if steps >= budget {
                    break 'outer;
                }
                steps += 1;
                let moves = improvement_moves(h, &s)?;
                match moves.into_iter().next() {
                    Some((_, MoveOutcome::Cycle(c))) => {
                        cycle = c;
                        if best.as_ref().map(|b| cycle.len() > b.len()).unwrap_or(true) {
                            best = Some(cycle.clone());
                        }
                        continue 'improve;
                    }
                    Some((_, MoveOutcome::Structure(ns))) => {
                        s = ns;
                    }
                    None => {
                        let mut escaped = false;
                        for d in diversification_moves(h, &s)? {
                            steps += 1;
                            if !improvement_moves(h, &d)?.is_empty() {
                                s = d;
                                escaped = true;
                                break;
                            }
                        }
                        if escaped {
                            continue;
                        }
                        stall = Some(StallDump { rank: rank(h, &s)?, structure: s });
                        continue 'outer;
                    }
                }
            }
        }
    }
    match best {
        Some(cycle) => Ok(HeuristicOutcome { cycle, restarts, steps, stall }),
        None => Err(Error::NoCycle),
    }
}
