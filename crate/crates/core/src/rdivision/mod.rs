//! r-divisions with few holes, maintained under edge updates.
//!
//! Pieces partition the edges of a connected supergraph `G⁺` whose faces are
//! triangles (see [`supergraph`]). Holes of a piece are the faces of its
//! induced embedding that are not faces of `G⁺`; the boundary of a piece is
//! every real vertex on a hole. Deleted edges stay in their piece as
//! scaffolding. Inserted edges become two-vertex pieces until the next full
//! rebuild.

pub mod separator;
pub mod supergraph;

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::embedding::{Embedding, NONE};
use crate::graph::{EdgeId, PlanarDigraph, VertexId};
use crate::piece::{EdgeKind, Hole, PieceGraph};
use supergraph::Supergraph;

#[derive(Clone, Debug)]
pub struct Params {
    pub r: usize,
    pub h_max: usize,
    pub c1: usize,
    pub c2: usize,
    pub c3: usize,
    pub f_max: usize,
}

impl Params {
    pub fn new(r: usize) -> Self {
        Params {
            r,
            h_max: 5,
            c1: 2,
            c2: 4,
            c3: 6,
            f_max: 8usize.max((r as f64).sqrt().ceil() as usize),
        }
    }

    pub fn max_vertices(&self) -> usize {
        self.c1 * self.r
    }

    pub fn max_boundary(&self) -> usize {
        (self.c2 as f64 * (self.r as f64).sqrt()).floor() as usize
    }
}

#[derive(Clone, Debug)]
pub struct Piece {
    pub graph: PieceGraph,
    /// Real vertices, sorted.
    pub vertices: Vec<VertexId>,
    /// Two-vertex piece holding one inserted edge.
    pub mini: bool,
}

impl Piece {
    /// Boundary vertices as global ids, sorted.
    pub fn boundary(&self) -> Vec<VertexId> {
        let mut b: Vec<VertexId> = self
            .graph
            .boundary()
            .into_iter()
            .map(|v| self.graph.global[v as usize])
            .collect();
        b.sort_unstable();
        b
    }

    pub fn is_boundary(&self, v: VertexId) -> bool {
        self.graph
            .local_of
            .get(&v)
            .is_some_and(|&l| self.graph.is_boundary[l as usize])
    }

    pub fn edges(&self) -> Vec<EdgeId> {
        let mut e: Vec<EdgeId> = self.graph.real_edges().map(|(_, g)| g).collect();
        e.sort_unstable();
        e
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Update {
    Insert(VertexId, VertexId),
    Delete(VertexId, VertexId),
}

#[derive(Clone, Debug, Default)]
pub struct UpdateOutcome {
    pub edge: EdgeId,
    /// Pieces whose contents changed (all pieces after a full rebuild).
    pub dirty: Vec<usize>,
    pub rebuilt: bool,
}

#[derive(Clone, Debug)]
pub struct RDivision {
    pub params: Params,
    pub graph: PlanarDigraph,
    pub pieces: Vec<Piece>,
    /// Pieces containing each real vertex.
    pub pieces_of: Vec<Vec<usize>>,
    /// Owning piece of each live edge (`NONE` otherwise), by edge id.
    pub owner: Vec<u32>,
    /// Ids of two-vertex pieces created since the last full rebuild.
    pub fresh: Vec<usize>,
    pub epoch: u64,
}

impl RDivision {
    pub fn build(graph: PlanarDigraph, params: Params) -> Result<Self> {
        let n = graph.num_vertices();
        if params.r < 1 || params.r > n.max(1) || n == 0 {
            return Err(Error::InvalidR { r: params.r, n });
        }
        let mut d = RDivision {
            params,
            graph,
            pieces: Vec::new(),
            pieces_of: Vec::new(),
            owner: Vec::new(),
            fresh: Vec::new(),
            epoch: 0,
        };
        d.rebuild();
        Ok(d)
    }

    pub fn num_vertices(&self) -> usize {
        self.graph.num_vertices()
    }

    fn rebuild(&mut self) {
        let sg = Supergraph::build(&self.graph);
        self.pieces = divide(&sg, &self.params);
        self.fresh.clear();
        self.reindex();
    }

    fn reindex(&mut self) {
        self.pieces_of = vec![Vec::new(); self.num_vertices()];
        self.owner = vec![NONE; self.graph.edge_slots()];
        for (i, p) in self.pieces.iter().enumerate() {
            for &v in &p.vertices {
                self.pieces_of[v as usize].push(i);
            }
            for e in p.edges() {
                self.owner[e as usize] = i as u32;
            }
        }
    }

    pub fn is_boundary(&self, v: VertexId) -> bool {
        self.pieces_of[v as usize].iter().any(|&p| self.pieces[p].is_boundary(v))
    }

    /// `∂R`, sorted.
    pub fn boundary(&self) -> Vec<VertexId> {
        (0..self.num_vertices() as VertexId).filter(|&v| self.is_boundary(v)).collect()
    }

    /// Forces a full rebuild of the division of the current graph.
    pub fn full_rebuild(&mut self) -> Vec<usize> {
        self.rebuild();
        self.epoch += 1;
        (0..self.pieces.len()).collect()
    }

    pub fn apply_update(&mut self, up: Update) -> Result<UpdateOutcome> {
        match up {
            Update::Delete(u, v) => {
                let e = self.graph.delete_edge(u, v)?;
                let p = self.owner[e as usize];
                debug_assert_ne!(p, NONE);
                self.owner[e as usize] = NONE;
                self.pieces[p as usize].graph.demote_edge(e);
                Ok(UpdateOutcome {
                    edge: e,
                    dirty: vec![p as usize],
                    rebuilt: false,
                })
            }
            Update::Insert(u, v) => {
                let (e, _) = self.graph.insert_edge(u, v)?;
                self.owner.resize(self.graph.edge_slots(), NONE);
                if self.fresh.len() + 1 > self.params.f_max {
                    return Ok(UpdateOutcome {
                        edge: e,
                        dirty: self.full_rebuild(),
                        rebuilt: true,
                    });
                }
                // endpoints interior to a piece need a point hole there
                let mut need: Vec<(usize, VertexId)> = Vec::new();
                for x in [u, v] {
                    if let [p] = self.pieces_of[x as usize][..] {
                        if !self.pieces[p].is_boundary(x) {
                            need.push((p, x));
                        }
                    }
                }
                for &(p, _) in &need {
                    let extra = need.iter().filter(|&&(q, _)| q == p).count();
                    let g = &self.pieces[p].graph;
                    let b = g.is_boundary.iter().filter(|&&x| x).count();
                    if g.holes.len() + extra > self.params.h_max || b + extra > self.params.max_boundary() {
                        return Ok(UpdateOutcome {
                            edge: e,
                            dirty: self.full_rebuild(),
                            rebuilt: true,
                        });
                    }
                }
                let mut dirty = Vec::new();
                for (p, x) in need {
                    let l = self.pieces[p].graph.local_of[&x];
                    self.pieces[p].graph.add_point_hole(l);
                    dirty.push(p);
                }
                let id = self.pieces.len();
                self.pieces.push(mini_piece(u, v, e));
                self.pieces_of[u as usize].push(id);
                self.pieces_of[v as usize].push(id);
                self.owner[e as usize] = id as u32;
                self.fresh.push(id);
                dirty.push(id);
                dirty.dedup();
                Ok(UpdateOutcome {
                    edge: e,
                    dirty,
                    rebuilt: false,
                })
            }
        }
    }

    /// One line per piece: `piece <id> V:<list> B:<list> H:<hole count>`.
    pub fn dump(&self) -> String {
        let join = |xs: &[VertexId]| xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        let mut s = String::new();
        for (i, p) in self.pieces.iter().enumerate() {
            let _ = writeln!(
                s,
                "piece {i} V:{} B:{} H:{}",
                join(&p.vertices),
                join(&p.boundary()),
                p.graph.holes.len()
            );
        }
        s
    }

    /// Checks every structural invariant; returns the first violation.
    pub fn validate(&self) -> std::result::Result<(), String> {
        let n = self.num_vertices();
        let prm = &self.params;
        let mut cover = vec![0u32; self.graph.edge_slots()];
        let mut count_in = vec![0u32; n];
        for (i, p) in self.pieces.iter().enumerate() {
            let g = &p.graph;
            if p.vertices.len() > prm.max_vertices() {
                return Err(format!("piece too large: piece {i} has {} vertices", p.vertices.len()));
            }
            let b = g.is_boundary.iter().filter(|&&x| x).count();
            if b > prm.max_boundary() {
                return Err(format!("boundary too large: piece {i} has {b}"));
            }
            if g.holes.len() > prm.h_max {
                return Err(format!("too many holes: piece {i} has {}", g.holes.len()));
            }
            if !g.emb.is_planar_embedding() {
                return Err(format!("piece {i} embedding is inconsistent"));
            }
            if g.num_vertices() > 1 && g.emb.components().0 != 1 {
                return Err(format!("piece {i} is disconnected"));
            }
            let faces = g.emb.faces();
            let mut on_hole = vec![false; g.num_vertices()];
            let mut used = vec![false; faces.len()];
            for h in &g.holes {
                let f = faces.face_of[h.walk[0] as usize];
                if used[f as usize] || faces.walks[f as usize].len() != h.walk.len() {
                    return Err(format!("hole is not a face: piece {i}"));
                }
                used[f as usize] = true;
                for (j, &d) in h.walk.iter().enumerate() {
                    if g.emb.face_next(d) != h.walk[(j + 1) % h.walk.len()] {
                        return Err(format!("hole is not a face: piece {i}"));
                    }
                    on_hole[g.emb.tail(d) as usize] = true;
                }
            }
            for v in 0..g.num_vertices() {
                if g.is_boundary[v] && !on_hole[v] {
                    return Err(format!("boundary vertex off holes: piece {i}"));
                }
                if g.is_boundary[v] && !g.is_real(v as u32) {
                    return Err(format!("artificial boundary vertex: piece {i}"));
                }
            }
            let mut vs: Vec<VertexId> = g.global.iter().copied().filter(|&x| x != NONE).collect();
            vs.sort_unstable();
            if vs != p.vertices {
                return Err(format!("vertex list mismatch: piece {i}"));
            }
            for &v in &p.vertices {
                count_in[v as usize] += 1;
                if !self.pieces_of[v as usize].contains(&i) {
                    return Err(format!("incidence map misses vertex {v} in piece {i}"));
                }
            }
            for (le, ge) in g.real_edges() {
                let Some((t, h)) = self.graph.edge(ge) else {
                    return Err(format!("edge {ge} in piece {i} is not in G"));
                };
                let [lt, lh] = g.emb.ends(le);
                if g.global[lt as usize] != t || g.global[lh as usize] != h {
                    return Err(format!("edge {ge} has wrong endpoints in piece {i}"));
                }
                cover[ge as usize] += 1;
            }
        }
        for (e, _, _) in self.graph.edges() {
            match cover[e as usize] {
                1 => {}
                0 => return Err(format!("edge {e} not covered")),
                _ => return Err(format!("edge {e} covered twice")),
            }
        }
        for v in 0..n {
            if count_in[v] == 0 {
                return Err(format!("vertex {v} in no piece"));
            }
            if count_in[v] >= 2 {
                for &p in &self.pieces_of[v] {
                    if !self.pieces[p].is_boundary(v as VertexId) {
                        return Err(format!("shared vertex not in ∂P: vertex {v}, piece {p}"));
                    }
                }
            }
        }
        let bound = prm.c3 * n.div_ceil(prm.r) + self.fresh.len();
        if self.pieces.len() > bound {
            return Err(format!("too many pieces: {} > {bound}", self.pieces.len()));
        }
        Ok(())
    }
}

fn mini_piece(u: VertexId, v: VertexId, e: EdgeId) -> Piece {
    let emb = Embedding::from_rotations(vec![[0, 1]], vec![true], vec![vec![0], vec![1]]);
    let mut graph = PieceGraph::new(emb, vec![EdgeKind::Real(e)], vec![u, v]);
    graph.holes = vec![Hole::from_walk(&graph.emb, vec![0, 1])];
    graph.boundary_from_holes();
    let mut vertices = vec![u, v];
    vertices.sort_unstable();
    Piece {
        graph,
        vertices,
        mini: false,
    }
    .into_mini()
}

impl Piece {
    fn into_mini(mut self) -> Self {
        self.mini = true;
        self
    }
}

/// Induced piece on a set of supergraph edges (sorted ids).
fn induce(sg: &Supergraph, edges: &[u32], mark: &mut [u32]) -> PieceGraph {
    for (i, &e) in edges.iter().enumerate() {
        mark[e as usize] = i as u32;
    }
    let mut verts: Vec<u32> = edges
        .iter()
        .flat_map(|&e| sg.emb.ends(e))
        .collect();
    verts.sort_unstable();
    verts.dedup();
    let loc = |x: u32| verts.binary_search(&x).unwrap() as u32;
    let ends: Vec<[u32; 2]> = edges
        .iter()
        .map(|&e| {
            let [a, b] = sg.emb.ends(e);
            [loc(a), loc(b)]
        })
        .collect();
    let rot: Vec<Vec<u32>> = verts
        .iter()
        .map(|&x| {
            sg.emb
                .rotation(x)
                .iter()
                .filter(|&&d| mark[(d >> 1) as usize] != NONE)
                .map(|&d| 2 * mark[(d >> 1) as usize] + (d & 1))
                .collect()
        })
        .collect();
    let emb = Embedding::from_rotations(ends, vec![true; edges.len()], rot);
    let kind = edges
        .iter()
        .map(|&e| if sg.is_real_edge(e) { EdgeKind::Real(e) } else { EdgeKind::Scaffold })
        .collect();
    let global = verts
        .iter()
        .map(|&x| if (x as usize) < sg.n_real { x } else { NONE })
        .collect();
    let mut g = PieceGraph::new(emb, kind, global);
    // holes: faces that differ from supergraph faces
    let faces = g.emb.faces();
    for walk in faces.walks {
        let gd = |d: u32| 2 * edges[(d >> 1) as usize] + (d & 1);
        let f = sg.faces.face_of[gd(walk[0]) as usize];
        let same = walk.len() == sg.faces.walks[f as usize].len()
            && walk.iter().all(|&d| sg.faces.face_of[gd(d) as usize] == f);
        if !same {
            g.holes.push(Hole::from_walk(&g.emb, walk));
        }
    }
    g.boundary_from_holes();
    for &e in edges {
        mark[e as usize] = NONE;
    }
    g
}

fn components_of(emb: &Embedding, side: &[bool], want: bool, local_edges: &[u32]) -> Vec<Vec<u32>> {
    let k = emb.num_vertices();
    let mut uf: Vec<u32> = (0..k as u32).collect();
    fn find(uf: &mut [u32], mut x: u32) -> u32 {
        while uf[x as usize] != x {
            uf[x as usize] = uf[uf[x as usize] as usize];
            x = uf[x as usize];
        }
        x
    }
    let chosen: Vec<u32> = emb.live_edges().filter(|&e| side[e as usize] == want).collect();
    for &e in &chosen {
        let [a, b] = emb.ends(e);
        let (ra, rb) = (find(&mut uf, a), find(&mut uf, b));
        uf[ra as usize] = rb;
    }
    let mut groups: std::collections::BTreeMap<u32, Vec<u32>> = Default::default();
    for &e in &chosen {
        let r = find(&mut uf, emb.ends(e)[0]);
        groups.entry(r).or_default().push(local_edges[e as usize]);
    }
    groups
        .into_values()
        .map(|mut g| {
            g.sort_unstable();
            g
        })
        .collect()
}

/// Recursive division of all supergraph edges.
fn divide(sg: &Supergraph, prm: &Params) -> Vec<Piece> {
    let all: Vec<u32> = sg.emb.live_edges().collect();
    if all.is_empty() {
        let emb = Embedding::with_vertices(sg.n_real);
        let graph = PieceGraph::new(emb, Vec::new(), (0..sg.n_real as u32).collect());
        return vec![Piece {
            graph,
            vertices: (0..sg.n_real as u32).collect(),
            mini: false,
        }];
    }
    let mut mark = vec![NONE; sg.emb.edge_slots()];
    let mut pieces = Vec::new();
    let mut work = vec![all];
    while let Some(edges) = work.pop() {
        let g = induce(sg, &edges, &mut mark);
        let real = g.global.iter().filter(|&&x| x != NONE).count();
        let bnd = g.is_boundary.iter().filter(|&&x| x).count();
        let too_big = real > prm.max_vertices();
        let too_wide = bnd > prm.max_boundary();
        let too_holey = g.holes.len() > prm.h_max;
        if edges.len() == 1 || !(too_big || too_wide || too_holey) {
            let mut vertices: Vec<VertexId> = g.global.iter().copied().filter(|&x| x != NONE).collect();
            vertices.sort_unstable();
            pieces.push(Piece {
                graph: g,
                vertices,
                mini: false,
            });
            continue;
        }
        let k = g.num_vertices();
        let weight: Vec<u64> = (0..k)
            .map(|v| {
                let real = g.is_real(v as u32);
                if too_big {
                    real as u64
                } else if too_wide {
                    g.is_boundary[v] as u64
                } else {
                    0
                }
            })
            .collect();
        let cost: Vec<u32> = (0..k)
            .map(|v| (g.is_real(v as u32) && !g.is_boundary[v]) as u32)
            .collect();
        let hole_weight = (!too_big && !too_wide) as u64;
        let walks: Vec<Vec<u32>> = g.holes.iter().map(|h| h.walk.clone()).collect();
        let side = separator::cycle_split(&g.emb, &walks, &weight, &cost, hole_weight)
            .unwrap_or_else(|| separator::bfs_half_split(&g.emb));
        let parts: Vec<Vec<u32>> = components_of(&g.emb, &side, true, &edges)
            .into_iter()
            .chain(components_of(&g.emb, &side, false, &edges))
            .collect();
        if parts.len() == 1 {
            // cannot happen: both sides are nonempty
            unreachable!("split produced a single part");
        }
        // push in reverse so pieces come out in a stable left-to-right order
        work.extend(parts.into_iter().rev());
    }
    pieces
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(w: u32, h: u32) -> PlanarDigraph {
        let mut e = Vec::new();
        for y in 0..h {
            for x in 0..w {
                let v = y * w + x;
                if x + 1 < w {
                    e.push((v, v + 1));
                }
                if y + 1 < h {
                    e.push((v + w, v));
                }
            }
        }
        PlanarDigraph::from_edges((w * h) as usize, &e).unwrap()
    }

    #[test]
    fn whole_graph_single_piece() {
        let g = grid(4, 4);
        let d = RDivision::build(g, Params::new(16)).unwrap();
        assert_eq!(d.pieces.len(), 1);
        assert!(d.pieces[0].boundary().is_empty());
        assert_eq!(d.pieces[0].graph.holes.len(), 0);
        d.validate().unwrap();
    }

    #[test]
    fn grid_division_validates() {
        let d = RDivision::build(grid(16, 16), Params::new(64)).unwrap();
        d.validate().unwrap();
        assert!(d.pieces.len() > 1);
    }

    #[test]
    fn invalid_r() {
        assert!(matches!(
            RDivision::build(grid(2, 2), Params::new(5)),
            Err(Error::InvalidR { r: 5, n: 4 })
        ));
        assert!(RDivision::build(grid(2, 2), Params::new(0)).is_err());
    }

    #[test]
    fn dropped_boundary_vertex_is_reported() {
        let mut d = RDivision::build(grid(16, 16), Params::new(64)).unwrap();
        let p = (0..d.pieces.len()).find(|&p| d.pieces[p].boundary().len() > 0).unwrap();
        let v = d.pieces[p].graph.boundary()[0];
        d.pieces[p].graph.is_boundary[v as usize] = false;
        let err = d.validate().unwrap_err();
        assert!(err.contains("shared vertex not in ∂P"), "{err}");
    }

    #[test]
    fn updates_keep_division_valid() {
        let mut d = RDivision::build(grid(10, 10), Params::new(16)).unwrap();
        let out = d.apply_update(Update::Delete(1, 2)).unwrap();
        assert_eq!(out.dirty.len(), 1);
        d.validate().unwrap();
        for i in 0..=d.params.f_max as u32 {
            d.apply_update(Update::Insert(i * 10, i * 10 + 11)).unwrap();
            d.validate().unwrap();
        }
    }

    #[test]
    fn fresh_overflow_triggers_one_rebuild() {
        let mut d = RDivision::build(grid(10, 10), Params::new(16)).unwrap();
        // parallel copies between boundary vertices never need point holes
        let pairs: Vec<(u32, u32)> = d
            .graph
            .edges()
            .filter(|&(_, t, h)| d.is_boundary(t) && d.is_boundary(h))
            .map(|(_, t, h)| (t, h))
            .collect();
        assert!(pairs.len() > d.params.f_max);
        let mut rebuilds = 0;
        for &(t, h) in &pairs[..=d.params.f_max] {
            let out = d.apply_update(Update::Insert(t, h)).unwrap();
            rebuilds += out.rebuilt as usize;
            d.validate().unwrap();
        }
        assert_eq!(rebuilds, 1);
        assert_eq!(d.epoch, 1);
        assert!(d.fresh.is_empty());
    }
}
