//! Structural invariants, checked exhaustively on small graphs and sampled with proptest.

mod common;

use std::collections::{BTreeMap, HashSet};

use proptest::prelude::*;

use hamming_witness::construction::{self, SetSpec};
use hamming_witness::hamming::{self, GraphParams, Vertex, VertexRank};
use hamming_witness::oracle::{self, FOptions};
use hamming_witness::verifier::{self, DegreeStrategy, VerifyOptions};

use common::*;

fn p(n: usize, k: u32) -> GraphParams {
    GraphParams::new(n, k).unwrap()
}

/// `(n, k)` with `k_min <= k <= k_max` and `k^n <= limit`.
fn grid(k_min: u32, k_max: u32, limit: u64) -> Vec<(usize, u32)> {
    let mut out = Vec::new();
    for k in k_min..=k_max {
        let mut n = 1;
        while pow(k, n) <= limit {
            out.push((n, k));
            n += 1;
        }
    }
    out
}

fn every_spec(params: &GraphParams) -> Vec<SetSpec> {
    let (n, k) = (params.n(), params.k());
    let mut specs: Vec<SetSpec> = (0..k).map(|s| SetSpec::X { s }).collect();
    for s in 0..k {
        for t in 1..k {
            specs.push(SetSpec::Y { s, t });
            specs.extend((1..=n).map(|c| SetSpec::Z { s, t, c }));
        }
    }
    if k >= 3 {
        specs.push(SetSpec::W);
    }
    specs
}

/// Reference membership written from the set definitions.
fn naive_member(spec: SetSpec, v: &[u32], k: u32) -> bool {
    match spec {
        SetSpec::X { s } => sum_mod(v, k) == s,
        SetSpec::Y { s, t } => in_y(v, s, t, k),
        SetSpec::Z { s, t, c } => in_y(v, s, t, k) && last_nonzero(v).map(|(i, _)| i) == Some(c),
        SetSpec::W => in_w(v, k),
    }
}

fn naive_size(spec: SetSpec, n: usize, k: u32) -> u64 {
    match spec {
        SetSpec::X { .. } => pow(k, n - 1),
        SetSpec::Y { s, t } => y_size(s, t, n, k),
        SetSpec::Z { s, t, c: 1 } => u64::from(s == t),
        SetSpec::Z { c, .. } => pow(k, c - 2),
        SetSpec::W => pow(k, n - 1) + 1,
    }
}

#[test]
fn rank_round_trip_exhaustive() {
    for (n, k) in grid(2, 12, 100_000) {
        let params = p(n, k);
        let total = pow(k, n);
        for r in 0..total {
            let v = hamming::unrank(VertexRank(r), &params).unwrap();
            assert_eq!(v.coords(), all_coords_one(r, n, k).as_slice());
            assert_eq!(hamming::rank(&v, &params).unwrap(), VertexRank(r));
        }
        assert!(hamming::unrank(VertexRank(total), &params).is_err());
    }
}

fn all_coords_one(mut r: u64, n: usize, k: u32) -> Vec<u32> {
    (0..n)
        .map(|_| {
            let c = (r % k as u64) as u32;
            r /= k as u64;
            c
        })
        .collect()
}

#[test]
fn neighbour_stream_matches_pairwise_distance() {
    for (n, k) in grid(2, 12, 2_000) {
        let params = p(n, k);
        let verts = all_coords(n, k);
        for a in &verts {
            let v = Vertex::new(a.clone(), &params).unwrap();
            let streamed: HashSet<Vec<u32>> = hamming::neighbors(&v, &params).map(Vertex::into_coords).collect();
            let pairwise: HashSet<Vec<u32>> = verts.iter().filter(|b| adjacent(a, b)).cloned().collect();
            assert_eq!(streamed, pairwise, "H({n},{k}) at {v}");
            assert_eq!(streamed.len() as u64, params.degree());
            for b in &streamed {
                // adjacent vertices lie in different X(s)
                assert_ne!(sum_mod(a, k), sum_mod(b, k));
            }
        }
    }
}

#[test]
fn partitions_a_and_b() {
    for (n, k) in grid(2, 12, 100_000) {
        let params = p(n, k);
        let mut x_count = vec![0u64; k as usize];
        let mut y_owner: BTreeMap<(u32, u32), u64> = BTreeMap::new();
        for v in hamming::all_vertices(&params).unwrap() {
            let in_x: Vec<u32> = (0..k).filter(|&s| construction::in_x(&v, s, &params)).collect();
            assert_eq!(in_x.len(), 1, "{v} lies in {} X sets", in_x.len());
            let s = in_x[0];
            x_count[s as usize] += 1;
            let owners: Vec<u32> = (1..k)
                .filter(|&t| construction::in_y(&v, s, t, &params).unwrap())
                .collect();
            let expected = usize::from(!v.is_zero());
            assert_eq!(owners.len(), expected, "{v} lies in {} Y({s},t) sets", owners.len());
            for t in owners {
                *y_owner.entry((s, t)).or_default() += 1;
            }
        }
        assert!(x_count.iter().all(|&c| c == pow(k, n - 1)), "H({n},{k}): {x_count:?}");
        for ((s, t), count) in y_owner {
            assert_eq!(count, y_size(s, t, n, k));
        }
    }
}

#[test]
fn enumeration_agrees_with_predicates_and_formulas() {
    for (n, k) in grid(2, 12, 10_000) {
        let params = p(n, k);
        let verts = all_coords(n, k);
        for spec in every_spec(&params) {
            let expected: Vec<Vec<u32>> = verts.iter().filter(|v| naive_member(spec, v, k)).cloned().collect();
            let listed: Vec<Vec<u32>> = construction::enumerate_set(spec, &params)
                .unwrap()
                .map(Vertex::into_coords)
                .collect();
            assert_eq!(listed, expected, "{spec} in H({n},{k})");
            let membership = spec.membership(&params).unwrap();
            for v in &verts {
                assert_eq!(membership.contains(v), naive_member(spec, v, k));
            }
            let size = construction::size_of(spec, &params).unwrap();
            assert_eq!(size, naive_size(spec, n, k).into(), "{spec} in H({n},{k})");
            assert_eq!(expected.len() as u64, naive_size(spec, n, k));
        }
    }
}

#[test]
fn constructive_enumerators_match_filter() {
    for (n, k) in grid(2, 12, 100_000) {
        let params = p(n, k);
        for s in 0..k {
            let x: Vec<Vertex> = construction::enumerate_x_constructive(s, &params).unwrap().collect();
            assert_eq!(x.len() as u64, pow(k, n - 1));
            assert!(x.windows(2).all(|w| hamming::rank(&w[0], &params).unwrap() < hamming::rank(&w[1], &params).unwrap()));
            assert!(x.iter().all(|v| sum_mod(v.coords(), k) == s));
            for t in 1..k {
                let y: Vec<Vertex> = construction::enumerate_y_constructive(s, t, &params).unwrap().collect();
                assert_eq!(y.len() as u64, y_size(s, t, n, k), "Y({s},{t}) in H({n},{k})");
                assert!(y.iter().all(|v| in_y(v.coords(), s, t, k)));
            }
        }
    }
}

#[test]
fn x_sets_and_fixed_s_unions_are_independent() {
    for (n, k) in grid(3, 6, 1_000) {
        let params = p(n, k);
        for s in 0..k {
            for v in construction::enumerate_set(SetSpec::X { s }, &params).unwrap() {
                let d = verifier::induced_degree(&v, |c| sum_mod(c, k) == s, &params).unwrap();
                assert_eq!(d, 0, "{v} has a neighbour in X({s})");
            }
        }
        let sweep = verifier::sweep_independence(&params, u64::MAX).unwrap();
        assert!(sweep.passed(), "H({n},{k}): {:?}", sweep.counterexample);
    }
}

#[test]
fn partner_is_a_bijection_y11_to_y22() {
    for (n, k) in grid(3, 12, 50_000) {
        let params = p(n, k);
        let mut images = HashSet::new();
        for v in construction::enumerate_set(SetSpec::Y { s: 1, t: 1 }, &params).unwrap() {
            let w = construction::partner(&v, 1, 2, &params).unwrap();
            assert!(in_y(w.coords(), 2, 2, k), "partner of {v} is {w}");
            assert!(adjacent(v.coords(), w.coords()));
            assert!(images.insert(w.into_coords()));
        }
        assert_eq!(images.len() as u64, y_size(2, 2, n, k));
    }
}

#[test]
fn witness_matching_structure() {
    for (n, k) in grid(3, 12, 20_000) {
        let params = p(n, k);
        let audit = verifier::verify_w(&params, VerifyOptions::new(1)).unwrap();
        let r = &audit.report;
        let y11 = y_size(1, 1, n, k);
        assert_eq!(r.vertex_count, pow(k, n - 1) + 1);
        assert_eq!(r.max_degree, 1);
        assert_eq!(r.edge_count, y11);
        let mut histogram = BTreeMap::from([(1usize, 2 * y11)]);
        if r.vertex_count > 2 * y11 {
            histogram.insert(0, r.vertex_count - 2 * y11);
        }
        assert_eq!(r.degree_histogram, histogram, "H({n},{k})");
        assert!(r.is_consistent());
    }
}

#[test]
fn dense_graph_is_regular_and_matches_pairwise() {
    for (n, k) in grid(2, 12, 300) {
        let params = p(n, k);
        let g = oracle::build_dense(&params, 300).unwrap();
        let verts = all_coords(n, k);
        for a in 0..verts.len() {
            assert!(!g.is_adjacent(a, a));
            assert_eq!(g.degree(a) as u64, params.degree());
            for b in 0..verts.len() {
                assert_eq!(g.is_adjacent(a, b), adjacent(&verts[a], &verts[b]));
            }
        }
    }
}

#[test]
fn f_on_small_hypercubes_and_construction_minimum() {
    for n in 1..=2usize {
        let params = p(n, 2);
        let g = oracle::build_dense(&params, 16).unwrap();
        let alpha = oracle::exact_mis(&g).unwrap();
        let f = oracle::exact_f(&g, alpha, &FOptions::default()).unwrap();
        assert_eq!(f.value as u64, oracle::ceil_sqrt(n as u64));
        assert_eq!(f.value as u64, oracle::predicted_f(&params));
    }
    for (n, k) in [(1usize, 3u32), (2, 3), (1, 4), (1, 5), (2, 4), (1, 6)] {
        let params = p(n, k);
        let g = oracle::build_dense(&params, 64).unwrap();
        let alpha = oracle::exact_mis(&g).unwrap();
        let w: Vec<usize> = construction::enumerate_set(SetSpec::W, &params)
            .unwrap()
            .map(|v| hamming::rank(&v, &params).unwrap().0 as usize)
            .collect();
        let seeded = oracle::exact_f(&g, alpha, &FOptions { seed: Some(w.clone()), ..FOptions::default() }).unwrap();
        assert_eq!(seeded.value, 1, "H({n},{k})");
        assert_eq!(g.induced_max_degree(&w), seeded.value);
    }
}

fn params_strategy() -> impl Strategy<Value = GraphParams> {
    (2u32..=7, 1usize..=5)
        .prop_filter("small graphs", |&(k, n)| pow(k, n) <= 20_000)
        .prop_map(|(k, n)| p(n, k))
}

fn vertex_pair() -> impl Strategy<Value = (GraphParams, Vec<u32>, Vec<u32>)> {
    params_strategy().prop_flat_map(|params| {
        let coords = proptest::collection::vec(0..params.k(), params.n());
        (Just(params), coords.clone(), coords)
    })
}

proptest! {
    #[test]
    fn adjacency_is_symmetric_and_irreflexive((params, a, b) in vertex_pair()) {
        let va = Vertex::new(a.clone(), &params).unwrap();
        let vb = Vertex::new(b.clone(), &params).unwrap();
        prop_assert!(!hamming::are_adjacent(&va, &va).unwrap());
        prop_assert_eq!(hamming::are_adjacent(&va, &vb).unwrap(), hamming::are_adjacent(&vb, &va).unwrap());
        prop_assert_eq!(hamming::are_adjacent(&va, &vb).unwrap(), adjacent(&a, &b));
    }

    #[test]
    fn vertex_text_round_trip((params, a, _b) in vertex_pair()) {
        let v = Vertex::new(a, &params).unwrap();
        let text = hamming::format_vertex(&v, &params);
        prop_assert_eq!(hamming::parse_vertex(&text, &params).unwrap(), v);
    }

    #[test]
    fn rank_round_trip_sampled(k in 2u32..=40, n in 1usize..=10, seed in any::<u64>()) {
        prop_assume!((k as f64).powi(n as i32) < 1e18);
        let params = p(n, k);
        let r = seed % pow(k, n);
        let v = hamming::unrank(VertexRank(r), &params).unwrap();
        prop_assert_eq!(hamming::rank(&v, &params).unwrap(), VertexRank(r));
        prop_assert_eq!(rank(v.coords(), k), r);
    }

    #[test]
    fn audit_reports_satisfy_handshake(params in params_strategy(), s in 0u32..7, t in 1u32..7, table in any::<bool>()) {
        let k = params.k();
        let specs = [SetSpec::X { s: s % k }, SetSpec::Y { s: s % k, t: 1 + t % (k - 1) }];
        let strategy = if table { DegreeStrategy::Table } else { DegreeStrategy::Streaming };
        for spec in specs {
            let r = verifier::audit_set(spec, &params, 1, strategy).unwrap();
            prop_assert!(r.is_consistent());
            prop_assert_eq!(r.max_degree, 0);
            prop_assert_eq!(r.vertex_count, naive_size(spec, params.n(), k));
        }
        if k >= 3 {
            let r = verifier::audit_set(SetSpec::W, &params, 2, strategy).unwrap();
            let degree_sum: u64 = r.degree_histogram.iter().map(|(d, c)| *d as u64 * c).sum();
            prop_assert_eq!(degree_sum, 2 * r.edge_count);
            prop_assert_eq!(r.degree_histogram.values().sum::<u64>(), r.vertex_count);
        }
    }

    #[test]
    fn classification_holds_for_random_adjacent_pairs((params, a, _b) in vertex_pair(), i in 0usize..5, bump in 1u32..7) {
        let k = params.k();
        prop_assume!(k >= 3);
        let mut b = a.clone();
        let i = i % params.n();
        b[i] = (b[i] + 1 + bump % (k - 1)) % k;
        let (va, vb) = (Vertex::new(a, &params).unwrap(), Vertex::new(b, &params).unwrap());
        prop_assume!(!va.is_zero() && !vb.is_zero());
        let c = verifier::classify_adjacency(&va, &vb, &params).unwrap();
        if c.t1 != c.t2 {
            prop_assert!(c.congruence_holds, "{} {}", va, vb);
        }
    }
}

#[test]
fn naive_size_for_z_matches_definition() {
    // independent count of Z(s,t,c) for c >= 2: v(2..c-1) free, v(1) forced
    for (n, k) in grid(2, 12, 3_000) {
        for c in 2..=n {
            let z = SetSpec::Z { s: 0, t: 1, c };
            let counted = all_coords(n, k).iter().filter(|v| naive_member(z, v, k)).count() as u64;
            assert_eq!(counted, pow(k, c - 2));
        }
    }
}
