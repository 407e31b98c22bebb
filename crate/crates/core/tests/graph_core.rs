use std::collections::HashSet;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use plansccs::gen::{gen_planar, gen_planar_with_frame, random_triangulation};
use plansccs::graph::embedding::Embedding;
use plansccs::graph::planarity::planarity_embed;
use plansccs::graph::{Direction, PlanarDigraph};
use plansccs::oracle::{reach_count, scc_labels, scc_stats};

/// Non-planar iff a Kuratowski subdivision exists. On at most six vertices
/// that is a K5 (at most one edge subdivided once) or a K3,3.
fn kuratowski_nonplanar(n: usize, edges: &[(u32, u32)]) -> bool {
    let mut adj = vec![[false; 6]; 6];
    for &(a, b) in edges {
        adj[a as usize][b as usize] = true;
        adj[b as usize][a as usize] = true;
    }
    let all: Vec<usize> = (0..n).collect();
    for mask in 0u32..(1 << n) {
        if mask.count_ones() != 5 {
            continue;
        }
        let s: Vec<usize> = all.iter().copied().filter(|&v| mask & (1 << v) != 0).collect();
        let rest: Vec<usize> = all.iter().copied().filter(|&v| mask & (1 << v) == 0).collect();
        let missing: Vec<(usize, usize)> = (0..5)
            .flat_map(|i| (i + 1..5).map(move |j| (i, j)))
            .map(|(i, j)| (s[i], s[j]))
            .filter(|&(a, b)| !adj[a][b])
            .collect();
        match missing[..] {
            [] => return true,
            [(a, b)] => {
                if rest.iter().any(|&w| adj[a][w] && adj[w][b]) {
                    return true;
                }
            }
            _ => {}
        }
    }
    if n == 6 {
        for mask in 0u32..64 {
            if mask.count_ones() != 3 || mask & 1 == 0 {
                continue;
            }
            let a: Vec<usize> = (0..6).filter(|&v| mask & (1 << v) != 0).collect();
            let b: Vec<usize> = (0..6).filter(|&v| mask & (1 << v) == 0).collect();
            if a.iter().all(|&x| b.iter().all(|&y| adj[x][y])) {
                return true;
            }
        }
    }
    false
}

/// Euler characteristic check written against the raw rotation system.
fn euler_ok(emb: &Embedding) -> bool {
    let n = emb.num_vertices();
    let mut seen = HashSet::new();
    let mut faces = 0i64;
    for v in 0..n as u32 {
        for &d in emb.rotation(v) {
            if seen.contains(&d) {
                continue;
            }
            faces += 1;
            let mut x = d;
            loop {
                seen.insert(x);
                // next dart of the face: rotation successor of the reversed dart
                let r = x ^ 1;
                let h = emb.tail(r);
                let rot = emb.rotation(h);
                let i = rot.iter().position(|&y| y == r).unwrap();
                x = rot[(i + 1) % rot.len()];
                if x == d {
                    break;
                }
            }
        }
    }
    let e = emb.num_live_edges() as i64;
    // count components by union-find over edges
    let mut p: Vec<usize> = (0..n).collect();
    fn f(p: &mut [usize], x: usize) -> usize {
        if p[x] != x {
            let r = f(p, p[x]);
            p[x] = r;
        }
        p[x]
    }
    for ed in emb.live_edges() {
        let [a, b] = emb.ends(ed);
        let (x, y) = (f(&mut p, a as usize), f(&mut p, b as usize));
        p[x] = y;
    }
    let mut comps = 0i64;
    let mut isolated = 0i64;
    for v in 0..n {
        if f(&mut p, v) == v {
            comps += 1;
        }
        if emb.rotation(v as u32).is_empty() {
            isolated += 1;
        }
    }
    // each component contributes V - E + F = 2; isolated vertices have no darts
    n as i64 - e + faces + isolated == 2 * comps
}

#[test]
fn planarity_matches_kuratowski_on_all_small_graphs() {
    for n in 5..=6usize {
        let pairs: Vec<(u32, u32)> = (0..n as u32).flat_map(|a| (a + 1..n as u32).map(move |b| (a, b))).collect();
        let mut planar = 0;
        for mask in 0u32..(1 << pairs.len()) {
            let edges: Vec<(u32, u32)> = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, &e)| e)
                .collect();
            let got = planarity_embed(n, &edges);
            assert_eq!(got.is_err(), kuratowski_nonplanar(n, &edges), "n={n} edges={edges:?}");
            if let Ok(emb) = got {
                planar += 1;
                assert!(euler_ok(&emb), "bad embedding for {edges:?}");
            }
        }
        assert!(planar > 0);
    }
}

#[test]
fn triangulations_have_only_triangles() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for n in [4, 7, 30, 200] {
        let t = random_triangulation(n, &mut rng);
        let g = PlanarDigraph::from_edges(n, &t).unwrap();
        let f = g.embedding().faces();
        assert_eq!(f.len(), 2 * n - 4);
        assert!(f.walks.iter().all(|w| w.len() == 3));
        assert!(euler_ok(g.embedding()));
    }
}

#[test]
fn frame_insertions_stay_planar() {
    let mut accepted = 0;
    for seed in 0..20 {
        let (mut g, frame) = gen_planar_with_frame(300, 0.0, seed);
        for &(a, b) in frame.iter().take(500) {
            g.insert_edge(a, b).unwrap();
            accepted += 1;
        }
        assert!(euler_ok(g.embedding()));
    }
    assert_eq!(accepted, 10_000);
}

#[test]
fn k5_insertion_is_rejected() {
    let edges: Vec<(u32, u32)> = (0..5u32).flat_map(|a| (a + 1..5).map(move |b| (a, b))).filter(|&e| e != (3, 4)).collect();
    let mut g = PlanarDigraph::from_edges(5, &edges).unwrap();
    assert!(g.insert_edge(3, 4).is_err());
    assert_eq!(g.num_edges(), 9);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn tarjan_matches_kosaraju(n in 1usize..120, density in 0.0f64..1.0, seed in 0u64..1000) {
        let g = gen_planar(n, density, seed);
        let part = g.scc();
        let labels = scc_labels(&g);
        let (k, big) = scc_stats(&labels);
        prop_assert_eq!(part.count(), k);
        prop_assert_eq!(part.largest(), big);
        for u in 0..n as u32 {
            for v in [0, n as u32 / 2, n as u32 - 1] {
                prop_assert_eq!(part.component_of(u) == part.component_of(v), labels[u as usize] == labels[v as usize]);
            }
        }
    }

    #[test]
    fn reach_sets_match_bfs(n in 1usize..120, seed in 0u64..1000) {
        let g = gen_planar(n, 0.7, seed);
        for s in [0, n as u32 - 1] {
            let f = g.reach_sets(&[s], Direction::Forward);
            prop_assert_eq!(f.iter().filter(|&&b| b).count(), reach_count(&g, s));
        }
    }

    #[test]
    fn text_roundtrip(n in 1usize..60, seed in 0u64..1000) {
        let g = gen_planar(n, 0.6, seed);
        let h = PlanarDigraph::parse(&g.to_text()).unwrap();
        let a: Vec<_> = g.edges().map(|(_, u, v)| (u, v)).collect();
        let b: Vec<_> = h.edges().map(|(_, u, v)| (u, v)).collect();
        prop_assert_eq!(a, b);
    }
}
