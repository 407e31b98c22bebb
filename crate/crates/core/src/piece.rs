//! Embedded pieces: a plane graph in which some edges are directed graph
//! edges and the rest are scaffolding that only shapes the faces.

use std::collections::HashMap;

use crate::graph::embedding::{Dart, Embedding, NONE};
use crate::graph::{EdgeId, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeKind {
    /// Directed edge from `ends[0]` to `ends[1]` carrying a global id.
    Real(EdgeId),
    Scaffold,
}

/// A face of the piece carrying boundary vertices.
#[derive(Clone, Debug)]
pub struct Hole {
    /// Face walk as local darts; the walk visits `tail(walk[i])`.
    pub walk: Vec<Dart>,
    /// Distinct walk vertices by first occurrence.
    pub order: Vec<u32>,
    /// Walk index of the chosen (first) occurrence of each vertex in `order`.
    pub index: Vec<usize>,
}

impl Hole {
    pub fn from_walk(emb: &Embedding, walk: Vec<Dart>) -> Self {
        let mut seen = HashMap::new();
        let mut order = Vec::new();
        let mut index = Vec::new();
        for (i, &d) in walk.iter().enumerate() {
            let v = emb.tail(d);
            if let std::collections::hash_map::Entry::Vacant(e) = seen.entry(v) {
                e.insert(());
                order.push(v);
                index.push(i);
            }
        }
        Hole { walk, order, index }
    }

    /// Recomputes the walk starting from its first dart.
    pub fn refresh(&mut self, emb: &Embedding) {
        let start = self.walk[0];
        *self = Hole::from_walk(emb, face_walk(emb, start));
    }
}

pub fn face_walk(emb: &Embedding, start: Dart) -> Vec<Dart> {
    let mut walk = vec![start];
    let mut d = emb.face_next(start);
    while d != start {
        walk.push(d);
        d = emb.face_next(d);
    }
    walk
}

/// A piece with local vertex ids `0..k`.
#[derive(Clone, Debug)]
pub struct PieceGraph {
    pub emb: Embedding,
    pub kind: Vec<EdgeKind>,
    /// Global id of each local vertex; `NONE` for artificial vertices.
    pub global: Vec<VertexId>,
    pub local_of: HashMap<VertexId, u32>,
    pub is_boundary: Vec<bool>,
    pub holes: Vec<Hole>,
    pub out: Vec<Vec<u32>>,
    pub inn: Vec<Vec<u32>>,
}

impl PieceGraph {
    pub fn new(emb: Embedding, kind: Vec<EdgeKind>, global: Vec<VertexId>) -> Self {
        let local_of = global
            .iter()
            .enumerate()
            .filter(|(_, &g)| g != NONE)
            .map(|(i, &g)| (g, i as u32))
            .collect();
        let k = global.len();
        let mut p = PieceGraph {
            emb,
            kind,
            global,
            local_of,
            is_boundary: vec![false; k],
            holes: Vec::new(),
            out: Vec::new(),
            inn: Vec::new(),
        };
        p.rebuild_adjacency();
        p
    }

    pub fn num_vertices(&self) -> usize {
        self.global.len()
    }

    pub fn is_real(&self, v: u32) -> bool {
        self.global[v as usize] != NONE
    }

    pub fn rebuild_adjacency(&mut self) {
        let k = self.global.len();
        self.out = vec![Vec::new(); k];
        self.inn = vec![Vec::new(); k];
        for e in self.emb.live_edges() {
            if let EdgeKind::Real(_) = self.kind[e as usize] {
                let [t, h] = self.emb.ends(e);
                self.out[t as usize].push(h);
                self.inn[h as usize].push(t);
            }
        }
    }

    /// Sets the boundary to every real vertex on a hole walk.
    pub fn boundary_from_holes(&mut self) {
        self.is_boundary = vec![false; self.global.len()];
        for h in &self.holes {
            for &v in &h.order {
                if self.is_real(v) {
                    self.is_boundary[v as usize] = true;
                }
            }
        }
    }

    pub fn boundary(&self) -> Vec<u32> {
        (0..self.global.len() as u32).filter(|&v| self.is_boundary[v as usize]).collect()
    }

    /// All vertices on hole walks.
    pub fn extended_boundary(&self) -> Vec<bool> {
        let mut m = vec![false; self.global.len()];
        for h in &self.holes {
            for &v in &h.order {
                m[v as usize] = true;
            }
        }
        m
    }

    pub fn real_edges(&self) -> impl Iterator<Item = (u32, EdgeId)> + '_ {
        self.emb.live_edges().filter_map(|e| match self.kind[e as usize] {
            EdgeKind::Real(g) => Some((e, g)),
            EdgeKind::Scaffold => None,
        })
    }

    /// Turns the real edge with global id `g` into scaffolding.
    pub fn demote_edge(&mut self, g: EdgeId) -> bool {
        let hit = self
            .emb
            .live_edges()
            .find(|&e| self.kind[e as usize] == EdgeKind::Real(g));
        match hit {
            Some(e) => {
                self.kind[e as usize] = EdgeKind::Scaffold;
                self.rebuild_adjacency();
                true
            }
            None => false,
        }
    }

    /// Adds a scaffold loop at `v` that bounds a new one-dart face, and
    /// records that face as a hole.
    pub fn add_point_hole(&mut self, v: u32) {
        let e = self.emb.add_edge_unplaced(v, v);
        self.kind.push(EdgeKind::Scaffold);
        let mut r = self.emb.rotation(v).to_vec();
        r.splice(0..0, [2 * e + 1, 2 * e]);
        self.emb.set_rotation(v, r);
        for h in self.holes.iter_mut() {
            h.refresh(&self.emb);
        }
        self.holes.push(Hole::from_walk(&self.emb, vec![2 * e]));
        if self.is_real(v) {
            self.is_boundary[v as usize] = true;
        }
    }

    pub fn hole_of_dart(&self) -> HashMap<Dart, usize> {
        let mut m = HashMap::new();
        for (i, h) in self.holes.iter().enumerate() {
            for &d in &h.walk {
                m.insert(d, i);
            }
        }
        m
    }
}
