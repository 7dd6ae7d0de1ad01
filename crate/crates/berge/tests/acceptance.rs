//! Acceptance gate: one test per criterion, each prints a single summary
//! line (visible with --nocapture). Criteria 1 and 7 share one instance
//! grid through the harness seed derivation, so the heuristic is measured
//! on exactly the instances the theorem harness checked.

use std::cmp::Ordering;
use std::time::Instant;

use berge::connectivity::{aligned_disjoint_paths, is_k_connected, validate_aligned};
use berge::constructions::{gen_h2, gen_hk, gen_kbip};
use berge::cycles::{circumference, BergeCycle};
use berge::graph::Graph;
use berge::harness::{
    batch_verify, instance_seeds, random_2connected_rgraph, BatchConfig, GridSpec,
    DEFAULT_BUDGET,
};
use berge::lemmas::{long_segment, verify_claims_exhaustive, Anchor};
use berge::structures::{
    enumerate_best, find_long_cycle, improvement_moves, rank, RankFamily, RankVector, Structure,
    StructureFamily,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// The grid shared by criteria 1 and 7: per uniformity, every admissible
/// degree bound 3 <= k <= r+1 and n in 6..=8.
const GRID_SEED: u64 = 0;
const GRID_SAMPLES: usize = 1000;

fn grid_configs() -> Vec<BatchConfig> {
    [(3usize, vec![3usize, 4]), (4, vec![3, 4, 5])]
        .into_iter()
        .map(|(r, k)| BatchConfig {
            theorem: "theorem19".into(),
            grid: GridSpec { n: vec![6, 7, 8], r: vec![r], k },
            samples: GRID_SAMPLES,
            seed: GRID_SEED,
            budget: DEFAULT_BUDGET,
        })
        .collect()
}

#[test]
fn criterion_1_minimum_degree_theorem_grid_is_clean() {
    let t = Instant::now();
    let mut cells = 0;
    for config in grid_configs() {
        let report = batch_verify(&config).expect("batch must run");
        assert!(
            report.skipped_cells.is_empty(),
            "FAIL criterion 1: sampler skipped cells {:?}",
            report.skipped_cells
        );
        for cell in &report.cells {
            assert_eq!(cell.samples, GRID_SAMPLES);
            assert!(!cell.records.is_empty());
        }
        let s = &report.summary;
        assert_eq!(s.violations, 0, "FAIL criterion 1: bound violated");
        assert_eq!(s.inconclusive, 0, "FAIL criterion 1: truncated searches");
        assert_eq!(s.not_applicable, 0, "FAIL criterion 1: hypotheses failed");
        assert_eq!(s.holds, s.checked);
        cells += report.cells.len();
    }
    assert_eq!(cells, 15);
    let secs = t.elapsed().as_secs_f64();
    assert!(secs <= 600.0, "FAIL criterion 1: {secs:.0}s exceeds the budget");
    println!(
        "PASS criterion 1: long-cycle bound holds on {cells} cells x {GRID_SAMPLES} samples, \
         0 violations, 0 inconclusive, {secs:.1}s"
    );
}

#[test]
fn criterion_2_graph_dirac_grid_is_clean() {
    let config = BatchConfig {
        theorem: "dirac".into(),
        grid: GridSpec { n: (6..=10).collect(), r: vec![2], k: vec![3, 4, 5] },
        samples: GRID_SAMPLES,
        seed: GRID_SEED,
        budget: DEFAULT_BUDGET,
    };
    let report = batch_verify(&config).expect("batch must run");
    assert!(report.skipped_cells.is_empty(), "FAIL criterion 2: skipped cells");
    assert_eq!(report.cells.len(), 15);
    let s = &report.summary;
    assert_eq!(s.violations, 0, "FAIL criterion 2: min(2k, n) violated");
    assert_eq!(s.inconclusive, 0, "FAIL criterion 2: truncated searches");
    assert_eq!(s.not_applicable, 0);
    println!(
        "PASS criterion 2: graph circumference bound holds on 15 cells x {GRID_SAMPLES} samples"
    );
}

#[test]
fn criterion_3_sharpness_families_are_exact() {
    let (hk, _) = gen_hk(4, 4, 2).unwrap();
    assert_eq!(hk.min_degree(), 2, "FAIL criterion 3: H_k degree is off");
    let out = circumference(&hk, DEFAULT_BUDGET);
    assert!(out.complete);
    assert_eq!(out.length, 6, "FAIL criterion 3: H_k circumference is off");

    let (h2, _) = gen_h2(3, 4, 8).unwrap();
    assert_eq!(h2.min_degree(), 3, "FAIL criterion 3: H_2 degree is off");
    let out = circumference(&h2, DEFAULT_BUDGET);
    assert!(out.complete);
    assert_eq!(out.length, 6, "FAIL criterion 3: H_2 circumference is off");
    assert!(is_k_connected(&h2, 3), "FAIL criterion 3: H_2 is not 3-connected");

    let (kb, _) = gen_kbip(4, 8).unwrap();
    let out = circumference(&kb, DEFAULT_BUDGET);
    assert!(out.complete);
    assert_eq!(out.length, 6, "FAIL criterion 3: bipartite-style circumference is off");

    println!("PASS criterion 3: all three sharpness families hit their exact values");
}

#[test]
fn criterion_4_segment_claims_exhaustive_to_s12() {
    let t = Instant::now();
    let report = verify_claims_exhaustive(12).expect("sweep must run");
    let secs = t.elapsed().as_secs_f64();
    assert_eq!(report.claims.len(), 6);
    for claim in &report.claims {
        assert!(
            claim.violations.is_empty(),
            "FAIL criterion 4: {} has {} violations",
            claim.claim,
            claim.violations.len()
        );
    }
    assert_eq!(report.total_violations, 0);
    assert!(secs <= 300.0, "FAIL criterion 4: {secs:.0}s exceeds the budget");
    println!(
        "PASS criterion 4: {} configurations across 6 claims, 0 violations \
         (equality condition included), {secs:.1}s",
        report.total_configs
    );
}

#[test]
fn criterion_5_long_segment_bounds_exhaustive_to_c20() {
    let mut checked = 0u64;
    for c in 2..=20usize {
        // ids deliberately non-contiguous so position math is exercised
        let cycle = BergeCycle {
            vertices: (0..c).map(|i| 3 * i + 1).collect(),
            edge_ids: (0..c).map(|i| 5 * i + 2).collect(),
        };
        let pos = |v: usize| cycle.vertices.iter().position(|&x| x == v).unwrap();
        let mut anchors: Vec<Anchor> = cycle.vertices.iter().map(|&v| Anchor::Vertex(v)).collect();
        anchors.extend(cycle.edge_ids.iter().map(|&e| Anchor::Edge(e)));
        for &a1 in &anchors {
            for &a2 in &anchors {
                if a1 == a2 {
                    assert!(long_segment(&cycle, a1, a2).is_err());
                    continue;
                }
                let need = match (a1, a2) {
                    (Anchor::Edge(_), Anchor::Edge(_)) => c.div_ceil(2),
                    (Anchor::Vertex(_), Anchor::Vertex(_)) => (c + 2).div_ceil(2),
                    _ => (c + 1).div_ceil(2),
                };
                let seg = long_segment(&cycle, a1, a2).expect("segment must exist");
                assert!(
                    seg.len() >= need,
                    "FAIL criterion 5: |segment| = {} < {need} for c = {c}, {a1:?}, {a2:?}",
                    seg.len()
                );
                // the result must be one contiguous arc of the cycle
                for w in seg.windows(2) {
                    assert_eq!((pos(w[0]) + 1) % c, pos(w[1]));
                }
                // vertex anchors bound their arc
                for a in [a1, a2] {
                    if let Anchor::Vertex(v) = a {
                        assert!(seg[0] == v || *seg.last().unwrap() == v);
                    }
                }
                checked += 1;
            }
        }
    }
    println!("PASS criterion 5: {checked} anchor pairs over c = 2..=20, all bounds met");
}

/// Every simple path with >= 2 vertices in `g`, paired with every z != y.
fn check_all_aligned_pairs(g: &Graph) -> u64 {
    let n = g.n();
    let mut calls = 0u64;
    let mut stack: Vec<Vec<usize>> = (0..n).map(|v| vec![v]).collect();
    while let Some(q) = stack.pop() {
        let y = *q.last().unwrap();
        for nb in g.neighbors(y) {
            if !q.contains(&nb) {
                let mut q2 = q.clone();
                q2.push(nb);
                stack.push(q2);
            }
        }
        if q.len() < 2 {
            continue;
        }
        for z in 0..n {
            if z == y {
                continue;
            }
            let pair = aligned_disjoint_paths(g, &q, z, 10_000_000)
                .expect("FAIL criterion 6: no aligned pair found");
            assert!(
                validate_aligned(g, &q, z, &pair),
                "FAIL criterion 6: invalid pair for q = {q:?}, z = {z} in {g:?}"
            );
            calls += 1;
        }
    }
    calls
}

#[test]
fn criterion_6_aligned_pair_lemma_on_small_graphs() {
    // every labeled 2-connected graph on 3..=5 vertices, every (path, z)
    let mut graphs = 0u64;
    let mut calls = 0u64;
    for n in 3..=5usize {
        let all_pairs: Vec<(usize, usize)> =
            (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        for mask in 0u32..1 << all_pairs.len() {
            let edges: Vec<(usize, usize)> = all_pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            let g = Graph::from_edges(n, &edges);
            if !g.is_biconnected() {
                continue;
            }
            graphs += 1;
            calls += check_all_aligned_pairs(&g);
        }
    }
    // 1 + 10 + 238 labeled biconnected graphs on 3, 4, 5 vertices
    assert_eq!(graphs, 249);

    // 10^4 random labeled 2-connected graphs on 6 and 7 vertices, spread
    // over densities from removal-minimal up to (near-)complete
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for i in 0..10_000u64 {
        let n = 6 + (i % 2) as usize;
        let pmax = if n == 6 { 1.0 } else { 0.7 };
        let h = random_2connected_rgraph(n, 2, 2, i).expect("sampler must succeed");
        let mut edges: Vec<(usize, usize)> = h.edges().iter().map(|e| (e[0], e[1])).collect();
        let p = rng.gen_range(0.0..pmax);
        for a in 0..n {
            for b in a + 1..n {
                if !edges.contains(&(a, b)) && rng.gen_bool(p) {
                    edges.push((a, b));
                }
            }
        }
        let g = Graph::from_edges(n, &edges);
        assert!(g.is_biconnected());
        graphs += 1;
        calls += check_all_aligned_pairs(&g);
    }
    println!("PASS criterion 6: {calls} aligned-pair calls over {graphs} graphs, all valid");
}

#[test]
fn criterion_7_heuristic_matches_oracle_on_the_grid() {
    const HEURISTIC_BUDGET: u64 = 1000;
    let mut total = 0u64;
    let mut exact = 0u64;
    let mut reached_bound = 0u64;
    let mut dumps = 0u64;
    for config in grid_configs() {
        let r = config.grid.r[0];
        for &n in &config.grid.n {
            for &k in &config.grid.k {
                for seed in instance_seeds(GRID_SEED, n, r, k, GRID_SAMPLES) {
                    let h = random_2connected_rgraph(n, r, k, seed).unwrap();
                    let oracle = circumference(&h, DEFAULT_BUDGET);
                    assert!(oracle.complete);
                    let bound = (2 * k).min(h.n()).min(h.m());
                    let out = find_long_cycle(&h, seed, HEURISTIC_BUDGET)
                        .expect("heuristic must find some cycle");
                    total += 1;
                    if out.cycle.len() >= bound {
                        reached_bound += 1;
                    }
                    if out.cycle.len() == oracle.length {
                        exact += 1;
                    } else {
                        // each shortfall must carry a locally optimal dump
                        let dump = out.stall.expect("FAIL criterion 7: shortfall without dump");
                        dumps += 1;
                        println!(
                            "shortfall: n={n} r={r} k={k} seed={seed} got {} want {} dump {}",
                            out.cycle.len(),
                            oracle.length,
                            serde_json::to_string(&dump).unwrap()
                        );
                    }
                }
            }
        }
    }
    let exact_rate = exact as f64 / total as f64;
    let bound_rate = reached_bound as f64 / total as f64;
    assert!(
        exact_rate >= 0.95,
        "FAIL criterion 7: exact rate {exact_rate:.4} below 0.95"
    );
    assert!(
        bound_rate >= 0.99,
        "FAIL criterion 7: bound rate {bound_rate:.4} below 0.99"
    );
    println!(
        "PASS criterion 7: exact on {exact}/{total} ({exact_rate:.3}), bound on \
         {reached_bound}/{total} ({bound_rate:.3}), {dumps} shortfall dumps logged"
    );
}

fn random_vector(rng: &mut ChaCha8Rng, family: RankFamily) -> RankVector {
    RankVector {
        family,
        r1: rng.gen_range(0..5),
        r2: rng.gen_range(0..4),
        r3: rng.gen_range(0..4),
        s4: if family == RankFamily::Pair { rng.gen_range(0..2) } else { 0 },
        r4: rng.gen_range(0..3),
    }
}

#[test]
fn criterion_8_rank_order_laws_and_local_optima() {
    // order laws on random vectors, small component ranges to force ties
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..100_000 {
        let family =
            if rng.gen_bool(0.5) { RankFamily::Lollipop } else { RankFamily::Pair };
        let a = random_vector(&mut rng, family);
        let b = random_vector(&mut rng, family);
        let c = random_vector(&mut rng, family);
        let ab = a.compare(&b).unwrap();
        assert_eq!(ab.reverse(), b.compare(&a).unwrap(), "antisymmetry fails");
        assert_eq!(a.compare(&a).unwrap(), Ordering::Equal);
        let bc = b.compare(&c).unwrap();
        if ab != Ordering::Less && bc != Ordering::Less {
            assert_ne!(a.compare(&c).unwrap(), Ordering::Less, "transitivity fails");
        }
    }

    // exhaustive optima admit no catalog move on sampled instances
    let mut instances = 0u64;
    let mut optima = 0u64;
    let mut seed = 0u64;
    while instances < 120 {
        let n = 5 + (seed % 3) as usize;
        seed += 1;
        let h = match random_2connected_rgraph(n, 3, 2, seed) {
            Ok(h) => h,
            Err(_) => continue,
        };
        let lol = enumerate_best(&h, StructureFamily::Lollipop, 1 << 24).unwrap();
        let dcp = enumerate_best(&h, StructureFamily::Dcp, 1 << 24).unwrap();
        let dcc = enumerate_best(&h, StructureFamily::Dcc, 1 << 24).unwrap();
        if !(lol.complete && dcp.complete && dcc.complete) {
            continue;
        }
        instances += 1;
        let pair_best = match (dcp.best, dcc.best) {
            (Some(a), Some(b)) => {
                Some(if a.1.compare(&b.1).unwrap() == Ordering::Less { b } else { a })
            }
            (a, b) => a.or(b),
        };
        for best in [lol.best, pair_best].into_iter().flatten() {
            let (s, r): (Structure, RankVector) = best;
            assert_eq!(rank(&h, &s).unwrap(), r);
            assert!(
                improvement_moves(&h, &s).unwrap().is_empty(),
                "FAIL criterion 8: a move improves an exhaustive optimum on {h:?}"
            );
            optima += 1;
        }
    }
    println!(
        "PASS criterion 8: order laws on 10^5 triples; {optima} optima over \
         {instances} instances admit no move"
    );
}

#[test]
fn criterion_9_reports_are_byte_identical() {
    let mut configs = grid_configs();
    configs.truncate(1);
    configs.push(BatchConfig {
        theorem: "dirac".into(),
        grid: GridSpec { n: vec![7, 9], r: vec![2], k: vec![3, 4] },
        samples: 300,
        seed: 17,
        budget: DEFAULT_BUDGET,
    });
    configs.push(BatchConfig {
        theorem: "jackson-cor".into(),
        grid: GridSpec { n: vec![7], r: vec![4], k: vec![2, 3] },
        samples: 300,
        seed: 23,
        budget: DEFAULT_BUDGET,
    });
    configs.push(BatchConfig {
        theorem: "mainold2".into(),
        grid: GridSpec { n: vec![6, 7], r: vec![3], k: vec![3] },
        samples: 200,
        seed: 29,
        budget: DEFAULT_BUDGET,
    });
    for config in &configs {
        let a = batch_verify(config).unwrap().to_json();
        let b = batch_verify(config).unwrap().to_json();
        assert_eq!(a, b, "FAIL criterion 9: reports differ for {}", config.theorem);
    }
    println!("PASS criterion 9: {} configs produced byte-identical reports twice", configs.len());
}
