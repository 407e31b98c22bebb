//! Random planar instances and update traces.

use std::collections::{HashMap, HashSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::planarity::planarity_embed;
use crate::graph::{PlanarDigraph, VertexId};
use crate::piece::{face_walk, EdgeKind, Hole, PieceGraph};
use crate::trace::{Command, Mode, Query, Trace};

/// Undirected edges of a random maximal planar graph on `0..n`, built by
/// random face splits followed by random flips. Vertex labels are shuffled.
pub fn random_triangulation(n: usize, rng: &mut impl Rng) -> Vec<(u32, u32)> {
    if n < 2 {
        return Vec::new();
    }
    if n == 2 {
        return vec![(0, 1)];
    }
    let mut tris: Vec<[u32; 3]> = vec![[0, 1, 2], [0, 2, 1]];
    for v in 3..n as u32 {
        let i = rng.gen_range(0..tris.len());
        let [a, b, c] = tris[i];
        tris[i] = [a, b, v];
        tris.push([b, c, v]);
        tris.push([c, a, v]);
    }
    // directed side (x, y) of a triangle -> triangle index
    let mut side: HashMap<(u32, u32), usize> = HashMap::new();
    for (i, t) in tris.iter().enumerate() {
        for k in 0..3 {
            side.insert((t[k], t[(k + 1) % 3]), i);
        }
    }
    let mut edges: Vec<(u32, u32)> = side.keys().filter(|(a, b)| a < b).copied().collect();
    edges.sort_unstable();
    let mut present: HashSet<(u32, u32)> = edges.iter().copied().collect();
    for _ in 0..2 * n {
        let (a, b) = edges[rng.gen_range(0..edges.len())];
        let (Some(&t1), Some(&t2)) = (side.get(&(a, b)), side.get(&(b, a))) else {
            continue;
        };
        let third = |t: [u32; 3], x: u32, y: u32| t.into_iter().find(|&z| z != x && z != y).unwrap();
        let c = third(tris[t1], a, b);
        let d = third(tris[t2], a, b);
        let key = (c.min(d), c.max(d));
        if c == d || present.contains(&key) {
            continue;
        }
        // (a,b,c) and (b,a,d) become (c,d,b)... keeping orientation
        for t in [t1, t2] {
            let tri = tris[t];
            for k in 0..3 {
                side.remove(&(tri[k], tri[(k + 1) % 3]));
            }
        }
        tris[t1] = [a, d, c];
        tris[t2] = [b, c, d];
        for t in [t1, t2] {
            let tri = tris[t];
            for k in 0..3 {
                side.insert((tri[k], tri[(k + 1) % 3]), t);
            }
        }
        present.remove(&(a.min(b), a.max(b)));
        present.insert(key);
        let pos = edges.iter().position(|&e| e == (a.min(b), a.max(b))).unwrap();
        edges[pos] = key;
    }
    let mut perm: Vec<u32> = (0..n as u32).collect();
    perm.shuffle(rng);
    let mut out: Vec<(u32, u32)> = edges
        .into_iter()
        .map(|(a, b)| {
            let (x, y) = (perm[a as usize], perm[b as usize]);
            (x.min(y), x.max(y))
        })
        .collect();
    out.sort_unstable();
    out
}

/// Random planar digraph: each triangulation edge is kept with probability
/// `density` and oriented uniformly at random. Also returns the underlying
/// triangulation, any subset of which stays planar.
pub fn gen_planar_with_frame(n: usize, density: f64, seed: u64) -> (PlanarDigraph, Vec<(u32, u32)>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let frame = random_triangulation(n, &mut rng);
    let mut edges = Vec::new();
    for &(a, b) in &frame {
        if rng.gen_bool(density.clamp(0.0, 1.0)) {
            edges.push(if rng.gen_bool(0.5) { (a, b) } else { (b, a) });
        }
    }
    let g = PlanarDigraph::from_edges(n, &edges).expect("triangulation subsets are planar");
    (g, frame)
}

pub fn gen_planar(n: usize, density: f64, seed: u64) -> PlanarDigraph {
    gen_planar_with_frame(n, density, seed).0
}

#[derive(Clone, Debug)]
pub struct TraceParams {
    pub n: usize,
    pub steps: usize,
    pub seed: u64,
    pub mode: Mode,
    pub density: f64,
    /// Queries issued after each update (ssr: one query every
    /// `1 / queries_per_step` updates when below one).
    pub queries_per_step: f64,
}

impl TraceParams {
    pub fn new(n: usize, steps: usize, seed: u64, mode: Mode) -> Self {
        let queries_per_step = match mode {
            Mode::Scc => 10.0,
            Mode::Sc => 1.0,
            Mode::Ssr => 1.0 / 6.0,
        };
        TraceParams {
            n,
            steps,
            seed,
            mode,
            density: 0.6,
            queries_per_step,
        }
    }
}

/// A trace whose insertions are absent edges of a fixed triangulation, so
/// every insertion preserves planarity; deletions hit present edges.
///
/// In sc mode the start graph is the whole triangulation under a strong
/// orientation and insertions restore that orientation, so the verdict
/// changes often.
pub fn gen_trace(p: &TraceParams) -> Trace {
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed ^ 0x9e37_79b9_7f4a_7c15);
    let (g, frame) = if p.mode == Mode::Sc {
        let frame = random_triangulation(p.n, &mut ChaCha8Rng::seed_from_u64(p.seed));
        let oriented = strong_orientation(p.n, &frame);
        let g = PlanarDigraph::from_edges(p.n, &oriented).expect("triangulations are planar");
        (g, oriented)
    } else {
        gen_planar_with_frame(p.n, p.density, p.seed)
    };
    let strong: HashMap<(u32, u32), (u32, u32)> = frame.iter().map(|&(a, b)| ((a.min(b), a.max(b)), (a, b))).collect();
    let mut live: Vec<(u32, u32)> = g.edges().map(|(_, t, h)| (t, h)).collect();
    let key = |(a, b): (u32, u32)| (a.min(b), a.max(b));
    let present: HashSet<(u32, u32)> = live.iter().map(|&e| key(e)).collect();
    let mut absent: Vec<(u32, u32)> = frame.iter().map(|&e| key(e)).filter(|e| !present.contains(e)).collect();
    let mut commands = Vec::new();
    let mut credit = 0.0;
    let n = p.n as VertexId;
    for _ in 0..p.steps {
        let insert = !absent.is_empty() && (live.is_empty() || rng.gen_bool(0.5));
        if insert {
            let i = rng.gen_range(0..absent.len());
            let (a, b) = absent.swap_remove(i);
            let e = if p.mode == Mode::Sc {
                strong[&(a, b)]
            } else if rng.gen_bool(0.5) {
                (a, b)
            } else {
                (b, a)
            };
            live.push(e);
            commands.push(Command::Add(e.0, e.1));
        } else if !live.is_empty() {
            let i = rng.gen_range(0..live.len());
            let e = live.swap_remove(i);
            absent.push(key(e));
            commands.push(Command::Del(e.0, e.1));
        }
        credit += p.queries_per_step;
        while credit >= 1.0 - 1e-9 {
            credit -= 1.0;
            let q = match p.mode {
                Mode::Scc => {
                    if commands.last().is_some_and(|c| !matches!(c, Command::Query(_))) {
                        commands.push(Command::Query(Query::NumSccs));
                        commands.push(Command::Query(Query::Largest));
                    }
                    Query::SccOf(rng.gen_range(0..n))
                }
                Mode::Sc => Query::StronglyConnected,
                Mode::Ssr => Query::Reach(rng.gen_range(0..n)),
            };
            commands.push(Command::Query(q));
        }
    }
    Trace {
        mode: p.mode,
        seed: p.seed,
        graph: g,
        commands,
    }
}

/// Orients a connected bridgeless graph strongly: DFS tree edges point
/// away from the root, all other edges point back up.
pub fn strong_orientation(n: usize, edges: &[(u32, u32)]) -> Vec<(u32, u32)> {
    let mut adj = vec![Vec::new(); n];
    for (i, &(a, b)) in edges.iter().enumerate() {
        adj[a as usize].push((b, i));
        adj[b as usize].push((a, i));
    }
    let mut depth = vec![usize::MAX; n];
    let mut out = edges.to_vec();
    let mut done = vec![false; edges.len()];
    for root in 0..n {
        if depth[root] != usize::MAX {
            continue;
        }
        depth[root] = 0;
        let mut stack = vec![(root, 0usize)];
        while let Some(&mut (v, ref mut k)) = stack.last_mut() {
            if *k == adj[v].len() {
                stack.pop();
                continue;
            }
            let (w, i) = adj[v][*k];
            *k += 1;
            if done[i] {
                continue;
            }
            done[i] = true;
            if depth[w as usize] == usize::MAX {
                depth[w as usize] = depth[v] + 1;
                out[i] = (v as u32, w);
                stack.push((w as usize, 0));
            } else {
                // w is an ancestor of v in a DFS tree
                out[i] = (v as u32, w);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangulation_edge_count() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in [3, 4, 10, 100] {
            let t = random_triangulation(n, &mut rng);
            assert_eq!(t.len(), 3 * n - 6);
            let g = PlanarDigraph::from_edges(n, &t).unwrap();
            assert_eq!(g.embedding().faces().len(), 2 * n - 4);
        }
    }

    #[test]
    fn five_vertices_full_density() {
        let g = gen_planar(5, 1.0, 1);
        assert!(g.num_edges() <= 3 * 5 - 6);
    }

    #[test]
    fn strong_orientation_of_triangulation() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let t = random_triangulation(60, &mut rng);
        let g = PlanarDigraph::from_edges(60, &strong_orientation(60, &t)).unwrap();
        assert_eq!(g.scc().count(), 1);
    }

    #[test]
    fn traces_are_deterministic() {
        let p = TraceParams::new(40, 50, 9, Mode::Scc);
        assert_eq!(gen_trace(&p).to_text(), gen_trace(&p).to_text());
    }
}

/// Random piece for path-net tests: a triangulation on `n` vertices with
/// `holes` pairwise non-adjacent vertices deleted, each leaving a hole, plus
/// `point_holes` one-vertex holes. Edges are oriented at random; a fraction
/// `scaffold` of them only shapes faces.
pub fn random_piece(n: usize, holes: usize, point_holes: usize, scaffold: f64, seed: u64) -> PieceGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let frame = random_triangulation(n, &mut rng);
    let edges: Vec<(u32, u32)> = frame
        .iter()
        .map(|&(a, b)| if rng.gen_bool(0.5) { (a, b) } else { (b, a) })
        .collect();
    let mut emb = planarity_embed(n, &edges).expect("triangulations are planar");
    let kind: Vec<EdgeKind> = (0..edges.len())
        .map(|e| {
            if rng.gen_bool(scaffold.clamp(0.0, 1.0)) {
                EdgeKind::Scaffold
            } else {
                EdgeKind::Real(e as u32)
            }
        })
        .collect();

    let mut order: Vec<u32> = (0..n as u32).collect();
    order.shuffle(&mut rng);
    let mut gone = vec![false; n];
    let mut blocked = vec![false; n];
    let mut starts = Vec::new();
    for &x in &order {
        if starts.len() == holes || n < 6 {
            break;
        }
        if blocked[x as usize] || emb.degree(x) < 2 {
            continue;
        }
        gone[x as usize] = true;
        blocked[x as usize] = true;
        for &d in emb.rotation(x) {
            blocked[emb.head(d) as usize] = true;
        }
        let d1 = emb.rotation(x)[0];
        starts.push(emb.face_next(emb.face_next(crate::graph::embedding::rev(d1))));
    }
    for x in 0..n as u32 {
        if gone[x as usize] {
            let es: Vec<u32> = emb.rotation(x).iter().map(|&d| d >> 1).collect();
            for e in es {
                emb.remove_edge(e);
            }
        }
    }
    let map = emb.compact_vertices(&gone);
    let global: Vec<VertexId> = (0..n as u32).filter(|&v| !gone[v as usize]).collect();
    debug_assert!(global.iter().enumerate().all(|(i, &g)| map[g as usize] == i as u32));
    let mut p = PieceGraph::new(emb, kind, global);
    for d in starts {
        let walk = face_walk(&p.emb, d);
        p.holes.push(Hole::from_walk(&p.emb, walk));
    }
    p.boundary_from_holes();
    let k = p.num_vertices() as u32;
    for _ in 0..point_holes {
        if k == 0 {
            break;
        }
        let v = rng.gen_range(0..k);
        p.add_point_hole(v);
    }
    p.rebuild_adjacency();
    p
}
