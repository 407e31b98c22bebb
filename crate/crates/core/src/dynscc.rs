//! Fully dynamic strongly connected components.
//!
//! SCCs meeting `∂R` are the SCCs of the certificate union restricted to the
//! boundary; every other SCC is an SCC of one piece avoiding its boundary and
//! not swallowed by a boundary SCC. Sizes and swallowed counts come from
//! path-net queries with a unit channel and an SCC-representative channel.

use std::collections::HashSet;

use fixedbitset::FixedBitSet;

use crate::certificates::{CertUnion, Certificate};
use crate::error::{Error, Result};
use crate::graph::scc::{reach_mask, tarjan_scc, SccPartition};
use crate::graph::{PlanarDigraph, VertexId};
use crate::pathnet::{PathNet, PathNetInput, Semigroup};
use crate::rdivision::{Params, Piece, RDivision, Update};

const UNIT: usize = 0;
const REP: usize = 1;

/// `n^e` rounded to the nearest power of two, at least 2 and at most `n`.
pub fn round_r(n: usize, e: f64) -> usize {
    let x = (n.max(1) as f64).powf(e);
    2usize.pow(x.log2().round().max(1.0) as u32).min(n.max(1))
}

/// `n^{2/7}` rounded to the nearest power of two.
pub fn default_r(n: usize) -> usize {
    round_r(n, 2.0 / 7.0)
}

/// Everything derived from one piece.
#[derive(Clone, Debug)]
pub struct PieceSlot {
    pub version: u64,
    pub scc: SccPartition,
    /// Per local class: whether it meets `∂P`.
    pub touches: Vec<bool>,
    /// Local classes avoiding `∂P` that hold real vertices.
    pub interior: Vec<u32>,
    pub largest_interior: usize,
    pub largest_interior_class: u32,
    /// A boundary vertex of each touching class, local id.
    pub class_boundary: Vec<u32>,
    /// Local boundary vertices; masks index into this list.
    pub blist: Vec<u32>,
    /// `reached_by[v]`: boundary vertices reaching `v`; `reaches[v]`: reached from `v`.
    pub reached_by: Vec<FixedBitSet>,
    pub reaches: Vec<FixedBitSet>,
    pub net: PathNet,
    pub cert: Certificate,
}

impl PieceSlot {
    fn build(piece: &Piece, id: usize, version: u64) -> Self {
        let g = &piece.graph;
        let n = g.num_vertices();
        let scc = tarjan_scc(n, |v| g.out[v as usize].iter().copied());
        let k = scc.count();
        let mut touches = vec![false; k];
        let mut class_boundary = vec![u32::MAX; k];
        for v in 0..n {
            if g.is_boundary[v] {
                let c = scc.comp[v] as usize;
                touches[c] = true;
                if class_boundary[c] == u32::MAX {
                    class_boundary[c] = v as u32;
                }
            }
        }
        let interior: Vec<u32> = (0..k as u32)
            .filter(|&c| !touches[c as usize] && g.is_real(scc.members[c as usize][0]))
            .collect();
        let (largest_interior, largest_interior_class) = interior
            .iter()
            .map(|&c| (scc.members[c as usize].len(), c))
            .max_by_key(|&(size, c)| (size, std::cmp::Reverse(c)))
            .unwrap_or((0, u32::MAX));

        // unit weight on real vertices; one mark per interior class, on its
        // member with the smallest global id
        let unit: Vec<Option<i64>> = (0..n as u32).map(|v| g.is_real(v).then_some(1)).collect();
        let mut rep: Vec<Option<i64>> = (0..n as u32).map(|v| g.is_real(v).then_some(0)).collect();
        for &c in &interior {
            let best = *scc.members[c as usize]
                .iter()
                .min_by_key(|&&v| g.global[v as usize])
                .expect("nonempty class");
            rep[best as usize] = Some(1);
        }
        let net = PathNet::build(PathNetInput::from_piece(g, vec![Semigroup::Sum, Semigroup::Sum], vec![unit, rep]));

        let blist = g.boundary();
        let mut reached_by = vec![FixedBitSet::with_capacity(blist.len()); n];
        let mut reaches = vec![FixedBitSet::with_capacity(blist.len()); n];
        for (i, &b) in blist.iter().enumerate() {
            let f = reach_mask(n, |v| g.out[v as usize].iter().copied(), [b]);
            let r = reach_mask(n, |v| g.inn[v as usize].iter().copied(), [b]);
            for v in 0..n {
                if f[v] {
                    reached_by[v].insert(i);
                }
                if r[v] {
                    reaches[v].insert(i);
                }
            }
        }
        PieceSlot {
            version,
            scc,
            touches,
            interior,
            largest_interior,
            largest_interior_class,
            class_boundary,
            blist,
            reached_by,
            reaches,
            net,
            cert: Certificate::build(piece, id, version),
        }
    }
}

/// One boundary SCC `S_B` of the current graph.
#[derive(Clone, Debug)]
pub struct BoundaryScc {
    pub size: usize,
    /// Pieces meeting `B`, with `B ∩ ∂P` in local ids.
    pub pieces: Vec<(usize, Vec<u32>)>,
}

#[derive(Clone, Debug)]
pub struct SccView {
    pub epoch: u64,
    pub scc_count: usize,
    pub largest: usize,
    /// An SCC of size `largest`; interior only if strictly larger than every boundary SCC.
    pub largest_scc: Option<SccHandle>,
    pub boundary: Vec<BoundaryScc>,
    /// `Σ_P |S_{P∖∂P}|`
    pub interior_count: usize,
    /// `(piece, boundary class, c_{P,B})` for every nonzero count.
    pub swallowed: Vec<(usize, u32, usize)>,
    /// Path-net queries issued by the refresh.
    pub queries: usize,
    /// `Σ_P |∂P|` at the refresh.
    pub boundary_total: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SccKind {
    Boundary(u32),
    Interior { piece: usize, class: u32 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SccHandle {
    pub kind: SccKind,
    pub size: usize,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct SccOptions {
    /// Check query closedness inside every path net.
    pub debug_closedness: bool,
    /// Test hook: skews one `c_{P,B}` at every refresh.
    pub fault_injection: bool,
}

#[derive(Debug)]
pub struct DynScc {
    pub div: RDivision,
    pub slots: Vec<PieceSlot>,
    pub union: CertUnion,
    view: SccView,
    next_version: u64,
    /// Slots rebuilt by the last update.
    pub last_rebuilt: usize,
    pub options: SccOptions,
}

impl DynScc {
    pub fn new(g: PlanarDigraph, r: usize) -> Result<Self> {
        Self::with_options(g, r, SccOptions::default())
    }

    pub fn with_options(g: PlanarDigraph, r: usize, options: SccOptions) -> Result<Self> {
        let div = RDivision::build(g, Params::new(r))?;
        let mut d = DynScc {
            div,
            slots: Vec::new(),
            union: CertUnion::build(&[], &[])?,
            view: empty_view(),
            next_version: 0,
            last_rebuilt: 0,
            options,
        };
        let all: Vec<usize> = (0..d.div.pieces.len()).collect();
        d.rebuild_slots(&all);
        d.refresh()?;
        Ok(d)
    }

    pub fn view(&self) -> &SccView {
        &self.view
    }

    pub fn graph(&self) -> &PlanarDigraph {
        &self.div.graph
    }

    pub fn insert_edge(&mut self, u: VertexId, v: VertexId) -> Result<&SccView> {
        self.update(Update::Insert(u, v))
    }

    pub fn delete_edge(&mut self, u: VertexId, v: VertexId) -> Result<&SccView> {
        self.update(Update::Delete(u, v))
    }

    fn update(&mut self, up: Update) -> Result<&SccView> {
        let out = self.div.apply_update(up)?;
        if out.rebuilt {
            self.slots.clear();
        }
        self.rebuild_slots(&out.dirty);
        self.refresh()?;
        Ok(&self.view)
    }

    fn rebuild_slots(&mut self, dirty: &[usize]) {
        let mut seen = HashSet::new();
        for &p in dirty {
            if !seen.insert(p) {
                continue;
            }
            self.next_version += 1;
            let mut slot = PieceSlot::build(&self.div.pieces[p], p, self.next_version);
            slot.net.debug_closedness = self.options.debug_closedness;
            if p < self.slots.len() {
                self.slots[p] = slot;
            } else {
                debug_assert_eq!(p, self.slots.len(), "pieces are appended in order");
                self.slots.push(slot);
            }
        }
        self.last_rebuilt = seen.len();
    }

    fn refresh(&mut self) -> Result<()> {
        let certs: Vec<Certificate> = self.slots.iter().map(|s| s.cert.clone()).collect();
        let versions: Vec<u64> = self.slots.iter().map(|s| s.version).collect();
        self.union = CertUnion::build(&certs, &versions)?;
        let mut view = empty_view();
        view.epoch = self.div.epoch * 1_000_000 + self.next_version;
        view.boundary_total = self.slots.iter().map(|s| s.blist.len()).sum();
        let mut swallowed_total = 0usize;
        let mut fault = self.options.fault_injection;
        for (b, members) in self.union.classes.iter().enumerate() {
            let mut size = members.len();
            let mut pieces = Vec::new();
            for (p, verts) in &self.union.by_piece[b] {
                let g = &self.div.pieces[*p].graph;
                let local: Vec<u32> = verts.iter().map(|v| g.local_of[v]).collect();
                let res = self.slots[*p].net.query(&local)?;
                view.queries += 1;
                size += res.aggregate()[UNIT].unwrap_or(0) as usize;
                let mut c = res.aggregate()[REP].unwrap_or(0) as usize;
                if fault {
                    c += 1;
                    fault = false;
                }
                if c > 0 {
                    view.swallowed.push((*p, b as u32, c));
                    swallowed_total += c;
                }
                pieces.push((*p, local));
            }
            if size > view.largest {
                view.largest = size;
                view.largest_scc = Some(SccHandle {
                    kind: SccKind::Boundary(b as u32),
                    size,
                });
            }
            view.boundary.push(BoundaryScc { size, pieces });
        }
        view.interior_count = self.slots.iter().map(|s| s.interior.len()).sum();
        for (p, s) in self.slots.iter().enumerate() {
            if s.largest_interior > view.largest {
                view.largest = s.largest_interior;
                view.largest_scc = Some(SccHandle {
                    kind: SccKind::Interior {
                        piece: p,
                        class: s.largest_interior_class,
                    },
                    size: s.largest_interior,
                });
            }
        }
        view.scc_count = (self.union.num_classes() + view.interior_count).saturating_sub(swallowed_total);
        debug_assert!(view.queries <= view.boundary_total);
        self.view = view;
        Ok(())
    }

    /// Boundary class swallowing interior class `c` of piece `p`, if any.
    fn swallower(&self, p: usize, c: u32) -> Option<u32> {
        let slot = &self.slots[p];
        let g = &self.div.pieces[p].graph;
        let v = slot.scc.members[c as usize][0] as usize;
        let class = |i: usize| self.union.class_of(g.global[slot.blist[i] as usize]).expect("boundary vertex in X");
        let from: HashSet<u32> = slot.reached_by[v].ones().map(class).collect();
        slot.reaches[v].ones().map(class).find(|k| from.contains(k))
    }

    pub fn scc_of(&self, v: VertexId) -> Result<SccHandle> {
        if v as usize >= self.div.num_vertices() {
            return Err(Error::UnknownVertex(v));
        }
        let boundary = |k: u32| SccHandle {
            kind: SccKind::Boundary(k),
            size: self.view.boundary[k as usize].size,
        };
        if let Some(k) = self.union.class_of(v) {
            return Ok(boundary(k));
        }
        let p = self.div.pieces_of[v as usize][0];
        let g = &self.div.pieces[p].graph;
        let slot = &self.slots[p];
        let c = slot.scc.comp[g.local_of[&v] as usize];
        if slot.touches[c as usize] {
            let b = g.global[slot.class_boundary[c as usize] as usize];
            return Ok(boundary(self.union.class_of(b).expect("boundary vertex in X")));
        }
        if let Some(k) = self.swallower(p, c) {
            return Ok(boundary(k));
        }
        Ok(SccHandle {
            kind: SccKind::Interior { piece: p, class: c },
            size: slot.scc.members[c as usize].len(),
        })
    }

    /// Members of an SCC: boundary members first, then piece by piece.
    pub fn members(&self, h: &SccHandle) -> Result<Vec<VertexId>> {
        match h.kind {
            SccKind::Boundary(k) => {
                let mut out = self.union.classes[k as usize].clone();
                for (p, local) in &self.view.boundary[k as usize].pieces {
                    let g = &self.div.pieces[*p].graph;
                    let res = self.slots[*p].net.query(local)?;
                    out.extend(res.iter().map(|v| g.global[v as usize]));
                }
                Ok(out)
            }
            SccKind::Interior { piece, class } => {
                let g = &self.div.pieces[piece].graph;
                Ok(self.slots[piece].scc.members[class as usize]
                    .iter()
                    .map(|&v| g.global[v as usize])
                    .collect())
            }
        }
    }

    /// Every interior class with its size and swallowing boundary class.
    pub fn interior_sccs(&self) -> Vec<(usize, u32, usize, Option<u32>)> {
        let mut out = Vec::new();
        for (p, slot) in self.slots.iter().enumerate() {
            for &c in &slot.interior {
                out.push((p, c, slot.scc.members[c as usize].len(), self.swallower(p, c)));
            }
        }
        out
    }
}

fn empty_view() -> SccView {
    SccView {
        epoch: 0,
        scc_count: 0,
        largest: 0,
        largest_scc: None,
        boundary: Vec::new(),
        interior_count: 0,
        swallowed: Vec::new(),
        queries: 0,
        boundary_total: 0,
    }
}
