//! Dynamic strong connectivity: whether the whole graph is one SCC.
//!
//! `G` is strongly connected iff it is connected, `∂R` lies in one SCC of
//! the certificate union, and every piece stays strongly connected once a
//! directed cycle through its boundary is added.

use std::collections::HashSet;

use crate::certificates::{CertUnion, Certificate};
use crate::connectivity::Connectivity;
use crate::dynscc::round_r;
use crate::error::Result;
use crate::graph::scc::tarjan_scc;
use crate::graph::{PlanarDigraph, VertexId};
use crate::rdivision::{Params, Piece, RDivision, Update};

/// `n^{2/3}` rounded to the nearest power of two.
pub fn default_r(n: usize) -> usize {
    round_r(n, 2.0 / 3.0)
}

/// Boundary of a piece in hole order, each vertex once.
pub fn boundary_cycle(piece: &Piece) -> Vec<u32> {
    let g = &piece.graph;
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for h in &g.holes {
        for &v in &h.order {
            if g.is_boundary[v as usize] && seen.insert(v) {
                out.push(v);
            }
        }
    }
    out
}

/// Whether the real part of the piece plus the boundary cycle is strongly connected.
pub fn sc_with_cycle(piece: &Piece) -> bool {
    let g = &piece.graph;
    let n = g.num_vertices();
    let cycle = boundary_cycle(piece);
    let mut next = vec![None; n];
    if cycle.len() > 1 {
        for (i, &v) in cycle.iter().enumerate() {
            next[v as usize] = Some(cycle[(i + 1) % cycle.len()]);
        }
    }
    let part = tarjan_scc(n, |v| g.out[v as usize].iter().copied().chain(next[v as usize]));
    let mut comp = None;
    for v in 0..n as u32 {
        if g.is_real(v) {
            let c = part.comp[v as usize];
            if *comp.get_or_insert(c) != c {
                return false;
            }
        }
    }
    true
}

#[derive(Clone, Debug)]
pub struct DynSc {
    pub div: RDivision,
    pub bits: Vec<bool>,
    pub certs: Vec<Certificate>,
    versions: Vec<u64>,
    next_version: u64,
    conn: Connectivity,
    verdict: bool,
    pub last_rebuilt: usize,
}

impl DynSc {
    pub fn new(g: PlanarDigraph, r: usize) -> Result<Self> {
        let mut conn = Connectivity::new(g.num_vertices());
        for (_, u, v) in g.edges() {
            conn.insert(u, v);
        }
        let div = RDivision::build(g, Params::new(r))?;
        let mut d = DynSc {
            div,
            bits: Vec::new(),
            certs: Vec::new(),
            versions: Vec::new(),
            next_version: 0,
            conn,
            verdict: false,
            last_rebuilt: 0,
        };
        let all: Vec<usize> = (0..d.div.pieces.len()).collect();
        d.rebuild(&all);
        d.refresh()?;
        Ok(d)
    }

    pub fn is_strongly_connected(&self) -> bool {
        self.verdict
    }

    pub fn graph(&self) -> &PlanarDigraph {
        &self.div.graph
    }

    pub fn insert_edge(&mut self, u: VertexId, v: VertexId) -> Result<bool> {
        self.update(Update::Insert(u, v))?;
        self.conn.insert(u, v);
        self.refresh()?;
        Ok(self.verdict)
    }

    pub fn delete_edge(&mut self, u: VertexId, v: VertexId) -> Result<bool> {
        self.update(Update::Delete(u, v))?;
        self.conn.delete(u, v);
        self.refresh()?;
        Ok(self.verdict)
    }

    fn update(&mut self, up: Update) -> Result<()> {
        let out = self.div.apply_update(up)?;
        if out.rebuilt {
            self.bits.clear();
            self.certs.clear();
            self.versions.clear();
        }
        self.rebuild(&out.dirty);
        Ok(())
    }

    fn rebuild(&mut self, dirty: &[usize]) {
        let mut seen = HashSet::new();
        for &p in dirty {
            if !seen.insert(p) {
                continue;
            }
            self.next_version += 1;
            let piece = &self.div.pieces[p];
            let bit = sc_with_cycle(piece);
            let cert = Certificate::build(piece, p, self.next_version);
            if p < self.bits.len() {
                self.bits[p] = bit;
                self.certs[p] = cert;
                self.versions[p] = self.next_version;
            } else {
                self.bits.push(bit);
                self.certs.push(cert);
                self.versions.push(self.next_version);
            }
        }
        self.last_rebuilt = seen.len();
    }

    fn refresh(&mut self) -> Result<()> {
        let union = CertUnion::build(&self.certs, &self.versions)?;
        self.verdict = self.conn.is_connected() && union.num_classes() <= 1 && self.bits.iter().all(|&b| b);
        Ok(())
    }
}
