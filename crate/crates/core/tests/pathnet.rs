use plansccs::gen::random_piece;
use plansccs::graph::embedding::Embedding;
use plansccs::oracle;
use plansccs::pathnet::erds::Erds;
use plansccs::pathnet::{Part, PathNet, PathNetInput, Semigroup, Sink};
use plansccs::piece::{EdgeKind, Hole, PieceGraph};
use plansccs::Error;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const OPS: [Semigroup; 3] = [Semigroup::Sum, Semigroup::Max, Semigroup::Min];

fn weights(p: &PieceGraph, seed: u64) -> Vec<Vec<Option<i64>>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let w: Vec<Option<i64>> = (0..p.num_vertices())
        .map(|v| p.is_real(v as u32).then(|| rng.gen_range(-20..50)))
        .collect();
    vec![w.clone(), w.clone(), w]
}

fn build(p: &PieceGraph, w: Vec<Vec<Option<i64>>>) -> PathNet {
    PathNet::build(PathNetInput::from_piece(p, OPS.to_vec(), w))
}

/// Checks every query of `trials` random closed sets against the oracle.
fn check_piece(p: &PieceGraph, seed: u64, trials: usize) {
    let w = weights(p, seed);
    let net = build(p, w.clone());
    let bd = p.boundary();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    for _ in 0..trials {
        let k = rng.gen_range(0..=bd.len());
        let a0: Vec<u32> = bd.choose_multiple(&mut rng, k).copied().collect();
        let a = oracle::close(p, &a0);
        let want = oracle::path_net_interior(p, &a);
        let res = net.query(&a).unwrap();
        let mut got: Vec<u32> = res.iter().collect();
        got.sort_unstable();
        assert_eq!(got, want, "seed {seed} A={a:?} depth={}", net.depth());
        for (c, op) in OPS.iter().enumerate() {
            let agg = op.fold(want.iter().map(|&v| w[c][v as usize]));
            assert_eq!(res.aggregate()[c], agg, "seed {seed} channel {c}");
        }
    }
}

#[test]
fn single_hole_pieces_match_oracle() {
    for seed in 0..60 {
        let p = random_piece(12 + (seed as usize % 30), 1, 0, 0.2, seed);
        check_piece(&p, seed, 15);
    }
}

#[test]
fn multi_hole_pieces_match_oracle() {
    for seed in 100..160 {
        let holes = 2 + (seed as usize % 2);
        let p = random_piece(16 + (seed as usize % 40), holes, 0, 0.2, seed);
        check_piece(&p, seed, 15);
    }
}

#[test]
fn point_holes_match_oracle() {
    for seed in 200..240 {
        let p = random_piece(14 + (seed as usize % 30), 1, 1 + seed as usize % 2, 0.1, seed);
        check_piece(&p, seed, 15);
    }
}

/// a -> x -> b, with a and b also joined by two scaffold edges bounding a
/// two-sided hole that x does not touch.
fn path_piece() -> PieceGraph {
    let ends = vec![[0, 1], [1, 2], [0, 2], [0, 2]];
    for rot_b in [vec![3, 5, 7], vec![3, 7, 5]] {
        let rot = vec![vec![0, 4, 6], vec![1, 2], rot_b];
        let emb = Embedding::from_rotations(ends.clone(), vec![true; 4], rot);
        let faces = emb.faces();
        let Some(walk) = faces.walks.iter().find(|w| w.iter().all(|&d| d >> 1 >= 2)).cloned() else {
            continue;
        };
        let kind = vec![EdgeKind::Real(0), EdgeKind::Real(1), EdgeKind::Scaffold, EdgeKind::Scaffold];
        let mut p = PieceGraph::new(emb, kind, vec![10, 11, 12]);
        p.holes.push(Hole::from_walk(&p.emb, walk));
        p.boundary_from_holes();
        return p;
    }
    unreachable!("one of the rotations has a digon face")
}

#[test]
fn empty_query_is_empty() {
    let p = random_piece(20, 1, 0, 0.2, 7);
    let net = build(&p, weights(&p, 7));
    let res = net.query(&[]).unwrap();
    assert_eq!(res.iter().count(), 0);
    assert_eq!(res.aggregate(), &[None, None, None]);
}

#[test]
fn path_through_one_vertex() {
    let p = path_piece();
    assert!(p.emb.is_planar_embedding());
    assert_eq!(p.boundary(), vec![0, 2]);
    let ones = vec![Some(1), Some(1), Some(1)];
    let net = build(&p, vec![ones.clone(), ones.clone(), ones]);
    let res = net.query(&[0, 2]).unwrap();
    assert_eq!(res.iter().collect::<Vec<_>>(), vec![1]);
    assert_eq!(res.aggregate()[0], Some(1));
}

#[test]
fn non_boundary_query_is_rejected() {
    let p = random_piece(20, 1, 0, 0.2, 3);
    let net = build(&p, weights(&p, 3));
    let inner = (0..p.num_vertices() as u32).find(|&v| !p.is_boundary[v as usize]).unwrap();
    assert_eq!(net.query(&[inner]).unwrap_err(), Error::NotBoundary(inner));
}

#[test]
fn debug_mode_rejects_open_sets() {
    for seed in 0..40 {
        let p = random_piece(25, 1, 0, 0.1, seed);
        let mut net = build(&p, weights(&p, seed));
        net.debug_closedness = true;
        let bd = p.boundary();
        for &a in &bd {
            for &b in &bd {
                let set = [a, b];
                let closed = oracle::close(&p, &set);
                let mut s = set.to_vec();
                s.sort_unstable();
                s.dedup();
                if closed != s {
                    assert!(matches!(net.query(&set), Err(Error::NotClosed(_))));
                    return;
                }
            }
        }
    }
    panic!("no open pair found");
}

/// Single-hole pieces whose proxy needs no cut, with their nets.
fn leaf_cases(count: usize) -> Vec<(PieceGraph, PathNet)> {
    let mut out = Vec::new();
    let mut seed = 1000;
    while out.len() < count {
        let p = random_piece(15 + (seed as usize % 50), 1, 0, 0.15, seed);
        let net = build(&p, weights(&p, seed));
        if net.depth() == 0 && net.singles()[0].num_terminals() >= 3 {
            out.push((p, net));
        }
        seed += 1;
    }
    out
}

fn expand(net: &PathNet, parts: &[Part]) -> Vec<u32> {
    let sh = &net.singles()[0];
    let mut v = Vec::new();
    for part in parts {
        match *part {
            Part::Store { start, len, .. } => v.extend_from_slice(sh.stored(start, len)),
            Part::Path { path, lo, hi, .. } => v.extend_from_slice(sh.path_inner(path, lo, hi)),
            _ => panic!("unexpected part {part:?}"),
        }
    }
    v.sort_unstable();
    v
}

#[test]
fn base_instances_match_winding_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut checked = [0usize; 9];
    for (_, net) in leaf_cases(60) {
        let sh = &net.singles()[0];
        let dag = &net.proxy().dag;
        let walk = &dag.holes[0];
        let m = sh.num_terminals() as u32;
        let at: Vec<usize> = sh
            .y
            .iter()
            .map(|&v| walk.iter().position(|&d| dag.emb.tail(d) == v).unwrap())
            .collect();
        let on = dag.on_holes();
        for _ in 0..300 {
            // greedy: each new terminal may relate only to its predecessor
            let mut b: Vec<u32> = Vec::new();
            let keep = rng.gen_range(0.3..1.0);
            for x in 0..m {
                if !rng.gen_bool(keep) {
                    continue;
                }
                let n = b.len();
                if (0..n.saturating_sub(1)).all(|i| !sh.related(b[i], x)) {
                    b.push(x);
                }
            }
            let k = b.len();
            if k < 2 {
                continue;
            }
            let tags: Vec<bool> = (0..k)
                .map(|i| sh.related(b[i], b[(i + 1) % k]) && rng.gen_bool(0.6))
                .collect();
            if k == 2 && tags[0] && tags[1] {
                continue;
            }
            let mut sink = Sink::new(3);
            sh.solve_base(&b, &tags, &mut sink);
            let got = expand(&net, &sink.parts);

            let mut curve = Vec::new();
            for i in 0..k {
                let (x, y) = (b[i], b[(i + 1) % k]);
                if tags[i] {
                    curve.extend(sh.curve_darts(x, y));
                } else {
                    let (s, t) = (at[x as usize], at[y as usize]);
                    let len = (t + walk.len() - s) % walk.len();
                    let len = if len == 0 { walk.len() } else { len };
                    curve.extend((0..len).map(|o| walk[(s + o) % walk.len()]));
                }
            }
            let inside = oracle::inside_closed_curve(&dag.emb, walk[0], &curve);
            let src: Vec<u32> = b.iter().map(|&i| sh.y[i as usize]).collect();
            let f = plansccs::graph::scc::reach_mask(dag.n(), |v| dag.out[v as usize].iter().map(|e| e.0), src.iter().copied());
            let g = plansccs::graph::scc::reach_mask(dag.n(), |v| dag.inn[v as usize].iter().map(|e| e.0), src.iter().copied());
            let want: Vec<u32> = (0..dag.n() as u32)
                .filter(|&v| f[v as usize] && g[v as usize] && !on[v as usize] && inside[v as usize] == Some(true))
                .collect();
            assert_eq!(got, want, "B={b:?} tags={tags:?}");
            checked[k] += 1;
        }
    }
    assert!(checked[5..].iter().sum::<usize>() > 50, "too few large base instances: {checked:?}");
}

#[test]
fn reach_partition_and_erds_match_bfs() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for (_, net) in leaf_cases(40) {
        let sh = &net.singles()[0];
        let m = sh.num_terminals();
        for i in 0..m {
            for j in 0..m {
                if i != j {
                    assert_eq!(sh.lf.covers(i, j), sh.reaches(i as u32, j as u32));
                    assert_eq!(sh.lr.covers(i, j), sh.reaches(j as u32, i as u32));
                }
            }
        }
        // every terminal sits in few pairs
        let bound = 2 * (usize::BITS - m.leading_zeros()) as usize + 2;
        assert!(sh.lf.sources_of.iter().all(|s| s.len() <= bound));
        for _ in 0..50 {
            let z: Vec<usize> = (0..m).filter(|_| rng.gen_bool(0.3)).collect();
            let mut set = Erds::new(&sh.lf);
            for &x in &z {
                set.insert(x);
            }
            for v in 0..m {
                if z.contains(&v) {
                    continue;
                }
                let any = z.iter().any(|&x| sh.reaches(v as u32, x as u32));
                match set.query_any(v) {
                    Some(x) => assert!(z.contains(&x) && sh.reaches(v as u32, x as u32)),
                    None => assert!(!any),
                }
            }
        }
    }
}

#[test]
fn canonical_paths_meet_in_one_subpath() {
    for (_, net) in leaf_cases(30) {
        let sh = &net.singles()[0];
        let np = sh.paths.len() as u32;
        for p in 0..np {
            for q in 0..np {
                let (vp, vq) = (&sh.paths[p as usize].verts, &sh.paths[q as usize].verts);
                let hits: Vec<usize> = (0..vp.len()).filter(|&i| vq.contains(&vp[i])).collect();
                match sh.intersection_on(p, q) {
                    None => assert!(hits.is_empty()),
                    Some((a, b)) => assert_eq!(hits, (a..=b).collect::<Vec<_>>()),
                }
            }
        }
    }
}

#[test]
fn left_sides_shrink_along_the_hole() {
    for (_, net) in leaf_cases(30) {
        let sh = &net.singles()[0];
        let m = sh.num_terminals() as u32;
        for a in 0..m {
            let related: Vec<u32> = (1..m).map(|d| (a + d) % m).filter(|&b| sh.related(a, b)).collect();
            for w in related.windows(2) {
                let (l1, l2) = (sh.left_of(a, w[0]), sh.left_of(a, w[1]));
                // not left of an earlier path implies not left of a later one
                assert!(l2.is_subset(l1), "a={a} b={:?}", w);
            }
        }
    }
}

#[test]
fn cuts_keep_sizes_bounded() {
    let mut seen = 0;
    for seed in 300..400 {
        let p = random_piece(20 + (seed as usize % 40), 2 + seed as usize % 2, seed as usize % 2, 0.1, seed);
        let net = build(&p, weights(&p, seed));
        assert!(net.depth() < p.holes.len().max(1));
        if net.depth() > 0 {
            seen += 1;
            let c = &net.cuts()[0];
            assert!(c.twin.len() == c.q.len());
        }
    }
    assert!(seen > 20);
}

/// Path net of `a` in `dag` minus every hole vertex.
fn dag_net(dag: &plansccs::pathnet::plane::PlaneDag, a: &[u32]) -> Vec<u32> {
    use plansccs::graph::scc::reach_mask;
    let f = reach_mask(dag.n(), |v| dag.out[v as usize].iter().map(|e| e.0), a.iter().copied());
    let g = reach_mask(dag.n(), |v| dag.inn[v as usize].iter().map(|e| e.0), a.iter().copied());
    let on = dag.on_holes();
    (0..dag.n() as u32).filter(|&v| f[v as usize] && g[v as usize] && !on[v as usize]).collect()
}

#[test]
fn one_cut_splits_the_net_exactly() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut checked = 0;
    for seed in 400..480 {
        let p = random_piece(20 + (seed as usize % 50), 2 + seed as usize % 2, 0, 0.1, seed);
        let net = build(&p, weights(&p, seed));
        let mut parent = &net.proxy().dag;
        for c in net.cuts() {
            let bd: Vec<u32> = (0..parent.n() as u32).filter(|&v| parent.boundary[v as usize]).collect();
            for _ in 0..20 {
                let k = rng.gen_range(0..=bd.len());
                let a: Vec<u32> = bd.choose_multiple(&mut rng, k).copied().collect();
                let (a2, range) = c.descend(&a);
                assert!(a2.iter().all(|&v| c.child.boundary[v as usize]));
                let mut got = dag_net(&c.child, &a2);
                if let Some((lo, hi)) = range {
                    got.extend_from_slice(&c.q[lo..=hi]);
                }
                let n = got.len();
                got.sort_unstable();
                got.dedup();
                assert_eq!(got.len(), n, "cut parts overlap");
                assert_eq!(got, dag_net(parent, &a), "seed {seed}");
                checked += 1;
            }
            assert!(c.child.n() <= 3 * parent.n());
            let nb = |d: &plansccs::pathnet::plane::PlaneDag| d.boundary.iter().filter(|&&b| b).count();
            assert!(nb(&c.child) <= 5 * nb(parent));
            assert_eq!(c.child.holes.len() + 1, parent.holes.len());
            parent = &c.child;
        }
    }
    assert!(checked > 500);
}
