use std::collections::HashSet;

use plansccs::dynsc::{boundary_cycle, sc_with_cycle, DynSc};
use plansccs::gen::{gen_planar, gen_trace, TraceParams};
use plansccs::graph::scc::reach_mask;
use plansccs::graph::{Direction, PlanarDigraph};
use plansccs::ssr::{DynSsr, SsrPieceCore};
use plansccs::trace::{Command, Mode, Query};

fn sc_oracle(g: &PlanarDigraph) -> bool {
    g.scc().count() == 1
}

fn bfs_count(g: &PlanarDigraph, s: u32) -> usize {
    g.reach_sets(&[s], Direction::Forward).iter().filter(|&&b| b).count()
}

fn cycle(n: u32) -> PlanarDigraph {
    let e: Vec<(u32, u32)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    PlanarDigraph::from_edges(n as usize, &e).unwrap()
}

#[test]
fn cycle_then_cut() {
    let mut d = DynSc::new(cycle(50), 8).unwrap();
    assert!(d.is_strongly_connected());
    assert!(!d.delete_edge(10, 11).unwrap());
    assert!(d.insert_edge(10, 11).unwrap());
    assert!(d.insert_edge(0, 25).unwrap());
}

#[test]
fn disjoint_cycles_are_not_connected() {
    let mut e: Vec<(u32, u32)> = (0..10).map(|i| (i, (i + 1) % 10)).collect();
    e.extend((10..20).map(|i| (i, 10 + (i + 1 - 10) % 10)));
    let d = DynSc::new(PlanarDigraph::from_edges(20, &e).unwrap(), 4).unwrap();
    assert!(!d.is_strongly_connected());
}

#[test]
fn piece_bits_follow_their_definition() {
    for seed in 0..4 {
        let d = DynSc::new(gen_planar(200, 0.9, seed), 16).unwrap();
        for (p, piece) in d.div.pieces.iter().enumerate() {
            let g = &piece.graph;
            let c = boundary_cycle(piece);
            let set: HashSet<u32> = c.iter().copied().collect();
            assert_eq!(set, g.boundary().into_iter().collect::<HashSet<_>>());
            // strongly connected iff one real vertex reaches and is reached by all
            let real: Vec<u32> = (0..g.num_vertices() as u32).filter(|&v| g.is_real(v)).collect();
            let extra = |v: u32| -> Vec<u32> {
                if c.len() < 2 {
                    return vec![];
                }
                let i = c.iter().position(|&x| x == v);
                i.map(|i| vec![c[(i + 1) % c.len()]]).unwrap_or_default()
            };
            let back = |v: u32| -> Vec<u32> {
                if c.len() < 2 {
                    return vec![];
                }
                let i = c.iter().position(|&x| x == v);
                i.map(|i| vec![c[(i + c.len() - 1) % c.len()]]).unwrap_or_default()
            };
            let n = g.num_vertices();
            let f = reach_mask(n, |v| g.out[v as usize].iter().copied().chain(extra(v)).collect::<Vec<_>>(), [real[0]]);
            let b = reach_mask(n, |v| g.inn[v as usize].iter().copied().chain(back(v)).collect::<Vec<_>>(), [real[0]]);
            let want = real.iter().all(|&v| f[v as usize] && b[v as usize]);
            assert_eq!(d.bits[p], want);
            assert_eq!(sc_with_cycle(piece), want);
        }
    }
}

fn sc_trace(seed: u64, steps: usize, rs: [usize; 2]) -> Vec<bool> {
    let mut p = TraceParams::new(120, steps, seed, Mode::Sc);
    p.density = 0.95;
    let t = gen_trace(&p);
    let mut ds: Vec<DynSc> = rs.iter().map(|&r| DynSc::new(t.graph.clone(), r).unwrap()).collect();
    let mut g = t.graph.clone();
    let mut verdicts = vec![];
    for c in &t.commands {
        match *c {
            Command::Add(u, v) => {
                g.insert_edge(u, v).unwrap();
                for d in &mut ds {
                    d.insert_edge(u, v).unwrap();
                }
            }
            Command::Del(u, v) => {
                g.delete_edge(u, v).unwrap();
                for d in &mut ds {
                    d.delete_edge(u, v).unwrap();
                }
            }
            Command::Query(_) => continue,
        }
        let want = sc_oracle(&g);
        for d in &ds {
            assert_eq!(d.is_strongly_connected(), want);
        }
        verdicts.push(want);
    }
    verdicts
}

#[test]
fn sc_traces_match_tarjan_for_two_r() {
    let mut seen = [false; 2];
    for seed in 0..3 {
        for b in sc_trace(seed, 150, [8, 32]) {
            seen[b as usize] = true;
        }
    }
    assert_eq!(seen, [true, true], "traces should visit both verdicts");
}

#[test]
fn star_counts() {
    let n = 30u32;
    let out: Vec<(u32, u32)> = (1..n).map(|i| (0, i)).collect();
    let d = DynSsr::new(PlanarDigraph::from_edges(n as usize, &out).unwrap(), 8).unwrap();
    assert_eq!(d.count_reachable(0).unwrap(), n as usize);
    let inn: Vec<(u32, u32)> = (1..n).map(|i| (i, 0)).collect();
    let d = DynSsr::new(PlanarDigraph::from_edges(n as usize, &inn).unwrap(), 8).unwrap();
    assert_eq!(d.count_reachable(0).unwrap(), 1);
}

#[test]
fn piece_terms_match_multi_source_search() {
    for seed in 0..4 {
        let d = DynSsr::new(gen_planar(250, 0.8, seed), 16).unwrap();
        for s in (0..250).step_by(17) {
            let (sb, _) = d.search(s).unwrap();
            for (p, core) in d.cores.iter().enumerate() {
                let g = &d.div.pieces[p].graph;
                let src: Vec<u32> = g.boundary().into_iter().filter(|&v| sb.contains(&g.global[v as usize])).collect();
                let f = reach_mask(g.num_vertices(), |v| g.out[v as usize].iter().copied(), src.iter().copied());
                let want = (0..g.num_vertices()).filter(|&v| f[v] && g.is_real(v as u32)).count();
                assert_eq!(core.count(&sb), want);
                assert_eq!(SsrPieceCore::build(&d.div.pieces[p]).masks.len(), core.masks.len());
            }
        }
    }
}

#[test]
fn ssr_traces_match_bfs() {
    for seed in 0..3 {
        let t = gen_trace(&TraceParams::new(150, 120, seed, Mode::Ssr));
        let mut d = DynSsr::new(t.graph.clone(), 16).unwrap();
        let mut g = t.graph.clone();
        for c in &t.commands {
            match *c {
                Command::Add(u, v) => {
                    g.insert_edge(u, v).unwrap();
                    d.insert_edge(u, v).unwrap();
                }
                Command::Del(u, v) => {
                    g.delete_edge(u, v).unwrap();
                    d.delete_edge(u, v).unwrap();
                }
                Command::Query(Query::Reach(s)) => assert_eq!(d.count_reachable(s).unwrap(), bfs_count(&g, s)),
                Command::Query(_) => {}
            }
        }
        for s in 0..150 {
            assert_eq!(d.count_reachable(s).unwrap(), bfs_count(&g, s));
        }
    }
}
