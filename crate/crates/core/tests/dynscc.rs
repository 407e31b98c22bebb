use plansccs::dynscc::{default_r, DynScc, SccKind, SccOptions};
use plansccs::gen::{gen_planar, gen_trace, TraceParams};
use plansccs::graph::PlanarDigraph;
use plansccs::trace::{Command, Mode};

fn check(d: &DynScc) {
    let g = d.graph();
    let want = g.scc();
    let view = d.view();
    assert_eq!(view.scc_count, want.count(), "scc count");
    assert_eq!(view.largest, want.largest(), "largest");
    assert!(view.queries <= view.boundary_total);
    if let Some(h) = view.largest_scc {
        assert_eq!(h.size, view.largest);
        assert_eq!(d.members(&h).unwrap().len(), view.largest);
    }
    for v in 0..g.num_vertices() as u32 {
        let h = d.scc_of(v).unwrap();
        let mut got = d.members(&h).unwrap();
        got.sort_unstable();
        let mut exp = want.members[want.component_of(v) as usize].clone();
        exp.sort_unstable();
        assert_eq!(got, exp, "members of the scc of {v}");
        assert_eq!(h.size, exp.len());
    }
}

fn run(n: usize, steps: usize, r: usize, seed: u64) {
    let t = gen_trace(&TraceParams::new(n, steps, seed, Mode::Scc));
    let mut d = DynScc::with_options(
        t.graph.clone(),
        r,
        SccOptions {
            debug_closedness: true,
            ..Default::default()
        },
    ).unwrap();
    check(&d);
    for c in &t.commands {
        match *c {
            Command::Add(u, v) => {
                d.insert_edge(u, v).unwrap();
                check(&d);
            }
            Command::Del(u, v) => {
                d.delete_edge(u, v).unwrap();
                check(&d);
            }
            Command::Query(_) => {}
        }
    }
}

#[test]
fn static_graphs_match_tarjan() {
    for seed in 0..8 {
        for r in [16, 32, 64] {
            let g = gen_planar(300, 0.5 + 0.06 * seed as f64, seed);
            let d = DynScc::new(g, r).unwrap();
            check(&d);
        }
    }
}

#[test]
fn updates_match_tarjan() {
    for (i, r) in [16, 32, 64].into_iter().enumerate() {
        run(150, 40, r, 100 + i as u64);
    }
}

#[test]
fn one_big_cycle() {
    let n = 120;
    let edges: Vec<(u32, u32)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    let mut d = DynScc::new(PlanarDigraph::from_edges(n as usize, &edges).unwrap(), 16).unwrap();
    assert_eq!(d.view().scc_count, 1);
    assert_eq!(d.view().largest, n as usize);
    check(&d);
    d.delete_edge(5, 6).unwrap();
    assert_eq!(d.view().scc_count, n as usize);
    check(&d);
    d.insert_edge(5, 6).unwrap();
    assert_eq!(d.view().scc_count, 1);
}

#[test]
fn interior_sccs_are_counted_once() {
    for seed in 0..6 {
        let g = gen_planar(400, 0.9, seed);
        let want = g.scc();
        let d = DynScc::new(g, 32).unwrap();
        // every interior class is either a real SCC or inside exactly one boundary SCC
        let mut swallowed = vec![0usize; d.view().boundary.len()];
        for (p, c, size, by) in d.interior_sccs() {
            let v = d.div.pieces[p].graph.global[d.slots[p].scc.members[c as usize][0] as usize];
            let whole = want.members[want.component_of(v) as usize].len();
            match by {
                Some(k) => {
                    swallowed[k as usize] += 1;
                    assert!(whole > size);
                }
                None => assert_eq!(whole, size),
            }
        }
        let mut counted = vec![0usize; swallowed.len()];
        for &(_, k, c) in &d.view().swallowed {
            counted[k as usize] += c;
        }
        assert_eq!(counted, swallowed);
    }
}

#[test]
fn handles_are_stable_between_members() {
    let g = gen_planar(200, 0.9, 4);
    let d = DynScc::new(g, 16).unwrap();
    for v in 0..200 {
        let h = d.scc_of(v).unwrap();
        for u in d.members(&h).unwrap() {
            assert_eq!(d.scc_of(u).unwrap(), h);
        }
        if let SccKind::Interior { piece, .. } = h.kind {
            assert!(d.div.pieces_of[v as usize].contains(&piece));
        }
    }
}

#[test]
fn fault_injection_is_detected() {
    let g = gen_planar(300, 0.9, 2);
    let mut d = DynScc::new(g, 32).unwrap();
    let good = d.view().scc_count;
    d.options.fault_injection = true;
    let (u, v) = d.graph().edges().next().map(|(_, a, b)| (a, b)).unwrap();
    d.delete_edge(u, v).unwrap();
    d.insert_edge(u, v).unwrap();
    if d.view().boundary.iter().any(|b| !b.pieces.is_empty()) {
        assert_ne!(d.view().scc_count, good);
    }
}

#[test]
fn default_r_is_a_power_of_two() {
    for n in [10, 100, 1000, 100_000] {
        let r = default_r(n);
        assert!(r.is_power_of_two() && r <= n);
    }
    assert_eq!(default_r(100_000), 32);
}

#[test]
fn sizes_partition_the_vertex_set() {
    for seed in 0..5 {
        let d = DynScc::new(gen_planar(300, 0.85, seed), 32).unwrap();
        let b: usize = d.view().boundary.iter().map(|s| s.size).sum();
        let i: usize = d.interior_sccs().iter().filter(|x| x.3.is_none()).map(|x| x.2).sum();
        assert_eq!(b + i, 300);
    }
}

#[test]
fn path_net_answers_equal_scc_intersections() {
    for seed in 0..5 {
        let g = gen_planar(300, 0.85, seed);
        let want = g.scc();
        let d = DynScc::new(g, 32).unwrap();
        for (k, bs) in d.view().boundary.iter().enumerate() {
            let rep = d.union.classes[k][0];
            let comp = want.component_of(rep);
            for (p, local) in &bs.pieces {
                let pg = &d.div.pieces[*p].graph;
                let mut got: Vec<u32> = d.slots[*p].net.query(local).unwrap().iter().map(|v| pg.global[v as usize]).collect();
                got.sort_unstable();
                let mut exp: Vec<u32> = (0..pg.num_vertices() as u32)
                    .filter(|&v| pg.is_real(v) && !pg.is_boundary[v as usize])
                    .map(|v| pg.global[v as usize])
                    .filter(|&v| want.component_of(v) == comp)
                    .collect();
                exp.sort_unstable();
                assert_eq!(got, exp);
            }
        }
    }
}

#[test]
fn interior_update_rebuilds_one_slot() {
    let g = gen_planar(400, 0.7, 11);
    let mut d = DynScc::new(g, 32).unwrap();
    let e = d
        .graph()
        .edges()
        .map(|(_, a, b)| (a, b))
        .find(|&(a, b)| !d.div.is_boundary(a) && !d.div.is_boundary(b))
        .unwrap();
    d.delete_edge(e.0, e.1).unwrap();
    assert_eq!(d.last_rebuilt, 1);
    check(&d);
}

#[test]
fn edgeless_graph() {
    let d = DynScc::new(PlanarDigraph::new(50), 8).unwrap();
    assert_eq!(d.view().scc_count, 50);
    assert_eq!(d.view().largest, 1);
    let h = d.scc_of(7).unwrap();
    assert_eq!(h.size, 1);
    assert_eq!(d.members(&h).unwrap(), vec![7]);
}
