//! Dynamic single-source reachability counting.
//!
//! For a source `s` in piece `P_s`, a search on `P_s ∪ X` finds the reached
//! boundary `S ⊆ ∂R` and the reached interior `T` of `P_s`. Every other
//! piece contributes the vertices reached from `S ∩ ∂P` inside it, minus
//! `S ∩ ∂P` itself. Per piece, a mask of the boundary vertices reaching each
//! vertex answers that count exactly.

use std::collections::HashSet;

use fixedbitset::FixedBitSet;

use crate::certificates::{CertUnion, Certificate};
use crate::dynscc::round_r;
use crate::error::{Error, Result};
use crate::graph::scc::reach_mask;
use crate::graph::{PlanarDigraph, VertexId};
use crate::rdivision::{Params, Piece, RDivision, Update};

/// `n^{2/5}` rounded to the nearest power of two.
pub fn default_r(n: usize) -> usize {
    round_r(n, 2.0 / 5.0)
}

/// Vertices of a piece reachable from its boundary, with their masks.
#[derive(Clone, Debug)]
pub struct SsrPieceCore {
    /// Boundary vertices as global ids; mask bits index into this.
    pub boundary: Vec<VertexId>,
    /// `(local vertex, boundary vertices reaching it)` for the proxy vertices.
    pub masks: Vec<(u32, FixedBitSet)>,
}

impl SsrPieceCore {
    pub fn build(piece: &Piece) -> Self {
        let g = &piece.graph;
        let n = g.num_vertices();
        let local = g.boundary();
        let mut all = vec![FixedBitSet::with_capacity(local.len()); n];
        for (i, &b) in local.iter().enumerate() {
            let f = reach_mask(n, |v| g.out[v as usize].iter().copied(), [b]);
            for v in 0..n {
                if f[v] {
                    all[v].insert(i);
                }
            }
        }
        let masks = all
            .into_iter()
            .enumerate()
            .filter(|(v, m)| g.is_real(*v as u32) && !m.is_clear())
            .map(|(v, m)| (v as u32, m))
            .collect();
        let boundary: Vec<VertexId> = local.iter().map(|&v| g.global[v as usize]).collect();
        SsrPieceCore {
            boundary,
            masks,
        }
    }

    /// `|S_P|` for the reached boundary set `s`.
    pub fn count(&self, s: &HashSet<VertexId>) -> usize {
        let mut sel = FixedBitSet::with_capacity(self.boundary.len());
        for (i, v) in self.boundary.iter().enumerate() {
            if s.contains(v) {
                sel.insert(i);
            }
        }
        if sel.is_clear() {
            return 0;
        }
        self.masks.iter().filter(|(_, m)| !m.is_disjoint(&sel)).count()
    }
}

#[derive(Clone, Debug)]
pub struct DynSsr {
    pub div: RDivision,
    pub cores: Vec<SsrPieceCore>,
    pub certs: Vec<Certificate>,
    versions: Vec<u64>,
    next_version: u64,
    union: CertUnion,
    pub last_rebuilt: usize,
}

impl DynSsr {
    pub fn new(g: PlanarDigraph, r: usize) -> Result<Self> {
        let div = RDivision::build(g, Params::new(r))?;
        let mut d = DynSsr {
            div,
            cores: Vec::new(),
            certs: Vec::new(),
            versions: Vec::new(),
            next_version: 0,
            union: CertUnion::build(&[], &[])?,
            last_rebuilt: 0,
        };
        let all: Vec<usize> = (0..d.div.pieces.len()).collect();
        d.rebuild(&all);
        d.union = CertUnion::build(&d.certs, &d.versions)?;
        Ok(d)
    }

    pub fn graph(&self) -> &PlanarDigraph {
        &self.div.graph
    }

    pub fn insert_edge(&mut self, u: VertexId, v: VertexId) -> Result<()> {
        self.update(Update::Insert(u, v))
    }

    pub fn delete_edge(&mut self, u: VertexId, v: VertexId) -> Result<()> {
        self.update(Update::Delete(u, v))
    }

    fn update(&mut self, up: Update) -> Result<()> {
        let out = self.div.apply_update(up)?;
        if out.rebuilt {
            self.cores.clear();
            self.certs.clear();
            self.versions.clear();
        }
        self.rebuild(&out.dirty);
        self.union = CertUnion::build(&self.certs, &self.versions)?;
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
            let core = SsrPieceCore::build(piece);
            let cert = Certificate::build(piece, p, self.next_version);
            if p < self.cores.len() {
                self.cores[p] = core;
                self.certs[p] = cert;
                self.versions[p] = self.next_version;
            } else {
                self.cores.push(core);
                self.certs.push(cert);
                self.versions.push(self.next_version);
            }
        }
        self.last_rebuilt = seen.len();
    }

    /// Search from `s` on `P_s ∪ X`: reached `∂R` vertices and reached
    /// interior vertices of `P_s`, as global ids.
    pub fn search(&self, s: VertexId) -> Result<(HashSet<VertexId>, HashSet<VertexId>)> {
        if s as usize >= self.div.num_vertices() {
            return Err(Error::UnknownVertex(s));
        }
        let ps = self.div.pieces_of[s as usize][0];
        let g = &self.div.pieces[ps].graph;
        let u = &self.union;
        let mut seen: HashSet<VertexId> = HashSet::from([s]);
        let mut stack = vec![s];
        while let Some(x) = stack.pop() {
            if let Some(&l) = g.local_of.get(&x) {
                for &y in &g.out[l as usize] {
                    let y = g.global[y as usize];
                    if seen.insert(y) {
                        stack.push(y);
                    }
                }
            }
            if let Some(&i) = u.index.get(&x) {
                for &j in &u.out[i as usize] {
                    let y = u.vertices[j as usize];
                    if seen.insert(y) {
                        stack.push(y);
                    }
                }
            }
        }
        let (bound, inner): (HashSet<VertexId>, HashSet<VertexId>) =
            seen.into_iter().partition(|v| u.index.contains_key(v));
        Ok((bound, inner))
    }

    pub fn count_reachable(&self, s: VertexId) -> Result<usize> {
        let (sb, t) = self.search(s)?;
        let ps = self.div.pieces_of[s as usize][0];
        let mut total = sb.len() + t.len();
        for (p, core) in self.cores.iter().enumerate() {
            if p == ps {
                continue;
            }
            let on = core.boundary.iter().filter(|v| sb.contains(v)).count();
            if on > 0 {
                total += core.count(&sb) - on;
            }
        }
        Ok(total)
    }
}
