//! Embedded planar digraphs and classic primitives on them.

pub mod embedding;
pub mod perturb;
pub mod planarity;
pub mod scc;

use std::fmt::Write as _;

pub use embedding::{Dart, Embedding, Faces};
pub use perturb::{unique_shortest_path, PerturbedWeight};
pub use planarity::{is_planar, planarity_embed};
pub use scc::{reach_mask, tarjan_scc, SccPartition};

use crate::error::{Error, Result};

pub type VertexId = u32;
pub type EdgeId = u32;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Backward,
}

/// A digraph together with a planar rotation system. Edge `e` is directed
/// from `ends(e)[0]` to `ends(e)[1]`; ids are never reused.
#[derive(Clone, Debug)]
pub struct PlanarDigraph {
    emb: Embedding,
}

impl PlanarDigraph {
    pub fn new(n: usize) -> Self {
        PlanarDigraph {
            emb: Embedding::with_vertices(n),
        }
    }

    pub fn from_edges(n: usize, edges: &[(VertexId, VertexId)]) -> Result<Self> {
        Ok(PlanarDigraph {
            emb: planarity_embed(n, edges)?,
        })
    }

    pub fn num_vertices(&self) -> usize {
        self.emb.num_vertices()
    }

    pub fn num_edges(&self) -> usize {
        self.emb.num_live_edges()
    }

    pub fn edge_slots(&self) -> usize {
        self.emb.edge_slots()
    }

    pub fn embedding(&self) -> &Embedding {
        &self.emb
    }

    pub fn is_live(&self, e: EdgeId) -> bool {
        (e as usize) < self.emb.edge_slots() && self.emb.is_alive(e)
    }

    /// `(tail, head)` of a live edge.
    pub fn edge(&self, e: EdgeId) -> Option<(VertexId, VertexId)> {
        self.is_live(e).then(|| {
            let [t, h] = self.emb.ends(e);
            (t, h)
        })
    }

    pub fn edges(&self) -> impl Iterator<Item = (EdgeId, VertexId, VertexId)> + '_ {
        self.emb.live_edges().map(|e| {
            let [t, h] = self.emb.ends(e);
            (e, t, h)
        })
    }

    pub fn out_neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.emb
            .rotation(v)
            .iter()
            .filter(|&&d| d & 1 == 0)
            .map(|&d| self.emb.head(d))
    }

    pub fn in_neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.emb
            .rotation(v)
            .iter()
            .filter(|&&d| d & 1 == 1)
            .map(|&d| self.emb.head(d))
    }

    /// Lowest-id live edge `u -> v`.
    pub fn find_edge(&self, u: VertexId, v: VertexId) -> Option<EdgeId> {
        if u as usize >= self.num_vertices() {
            return None;
        }
        self.emb
            .rotation(u)
            .iter()
            .filter(|&&d| d & 1 == 0 && self.emb.head(d) == v)
            .map(|&d| d >> 1)
            .min()
    }

    fn check_vertex(&self, v: VertexId) -> Result<()> {
        if (v as usize) < self.num_vertices() {
            Ok(())
        } else {
            Err(Error::UnknownVertex(v))
        }
    }

    /// Inserts `u -> v`. Uses a shared face when one exists, otherwise
    /// re-embeds the whole graph. Returns the new edge id and whether the
    /// embedding was recomputed.
    pub fn insert_edge(&mut self, u: VertexId, v: VertexId) -> Result<(EdgeId, bool)> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        let (_, comp) = self.emb.components();
        let isolated = self.emb.degree(u) == 0 || self.emb.degree(v) == 0;
        if isolated || comp[u as usize] != comp[v as usize] {
            let bu = self.emb.rotation(u).first().copied();
            let bv = self.emb.rotation(v).first().copied();
            return Ok((self.emb.add_edge(u, bu, v, bv), false));
        }
        if let Some((du, dv)) = self.emb.common_face(u, v) {
            return Ok((self.emb.add_edge(u, Some(du), v, Some(dv)), false));
        }
        let slots = self.emb.edge_slots();
        let mut ends: Vec<[u32; 2]> = (0..slots as u32).map(|e| self.emb.ends(e)).collect();
        ends.push([u, v]);
        let mut alive: Vec<bool> = (0..slots as u32).map(|e| self.emb.is_alive(e)).collect();
        alive.push(true);
        let emb = embed_slots(self.num_vertices(), &ends, &alive).map_err(|_| Error::NonPlanarInsert(u, v))?;
        self.emb = emb;
        Ok((slots as EdgeId, true))
    }

    /// Deletes the lowest-id live edge `u -> v`.
    pub fn delete_edge(&mut self, u: VertexId, v: VertexId) -> Result<EdgeId> {
        let e = self.find_edge(u, v).ok_or(Error::UnknownEdge(u, v))?;
        self.emb.remove_edge(e);
        Ok(e)
    }

    pub fn scc(&self) -> SccPartition {
        tarjan_scc(self.num_vertices(), |v| self.out_neighbors(v))
    }

    pub fn reach_sets(&self, sources: &[VertexId], dir: Direction) -> Vec<bool> {
        let src = sources.iter().copied();
        match dir {
            Direction::Forward => reach_mask(self.num_vertices(), |v| self.out_neighbors(v), src),
            Direction::Backward => reach_mask(self.num_vertices(), |v| self.in_neighbors(v), src),
        }
    }

    /// Parses the `p n m` / `e tail head` text format. Lines starting with
    /// `c` or `#` are comments.
    pub fn parse(text: &str) -> Result<Self> {
        let (n, edges) = parse_edge_list(text)?;
        Self::from_edges(n, &edges)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "p {} {}", self.num_vertices(), self.num_edges());
        for (_, t, h) in self.edges() {
            let _ = writeln!(s, "e {t} {h}");
        }
        s
    }
}

/// Embeds a slot-indexed edge table where only `alive` slots are present.
pub fn embed_slots(n: usize, ends: &[[u32; 2]], alive: &[bool]) -> Result<Embedding> {
    let live: Vec<u32> = (0..ends.len() as u32).filter(|&e| alive[e as usize]).collect();
    let list: Vec<(u32, u32)> = live.iter().map(|&e| (ends[e as usize][0], ends[e as usize][1])).collect();
    let compact = planarity_embed(n, &list)?;
    let rot: Vec<Vec<Dart>> = (0..n as u32)
        .map(|v| {
            compact
                .rotation(v)
                .iter()
                .map(|&d| 2 * live[(d >> 1) as usize] + (d & 1))
                .collect()
        })
        .collect();
    Ok(Embedding::from_rotations(ends.to_vec(), alive.to_vec(), rot))
}

/// Parses the graph text format into a vertex count and an edge list.
pub fn parse_edge_list(text: &str) -> Result<(usize, Vec<(VertexId, VertexId)>)> {
    let mut n: Option<usize> = None;
    let mut declared_m = 0usize;
    let mut edges = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line_no = i + 1;
        let mut it = line.split_whitespace();
        let Some(tag) = it.next() else { continue };
        let err = |msg: &str| Error::Parse {
            line: line_no,
            msg: msg.to_string(),
        };
        let mut num = |what: &str| -> Result<usize> {
            it.next()
                .ok_or_else(|| err(&format!("missing {what}")))?
                .parse::<usize>()
                .map_err(|_| err(&format!("bad {what}")))
        };
        match tag {
            "c" | "#" => {}
            "p" => {
                if n.is_some() {
                    return Err(err("duplicate header"));
                }
                n = Some(num("vertex count")?);
                declared_m = num("edge count")?;
            }
            "e" => {
                let nv = n.ok_or_else(|| err("edge before header"))?;
                let t = num("tail")?;
                let h = num("head")?;
                if t >= nv || h >= nv {
                    return Err(err("vertex out of range"));
                }
                if t == h {
                    return Err(Error::SelfLoop(t as VertexId));
                }
                edges.push((t as VertexId, h as VertexId));
            }
            _ => return Err(err("unknown line tag")),
        }
    }
    let n = n.ok_or(Error::Parse {
        line: 0,
        msg: "missing header".into(),
    })?;
    if edges.len() != declared_m {
        return Err(Error::Parse {
            line: 0,
            msg: format!("header declares {declared_m} edges, found {}", edges.len()),
        });
    }
    Ok((n, edges))
}
