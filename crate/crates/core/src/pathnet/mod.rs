//! Path nets of a piece: given a closed set `A` of boundary vertices,
//! aggregate or report the non-boundary vertices lying on paths between
//! vertices of `A`.
//!
//! The query runs on an acyclic proxy (SCCs contracted), descends a chain of
//! cuts that leaves holes pairwise unrelated, and ends in one single-hole
//! instance per hole.

pub mod agg;
pub mod cut;
pub mod erds;
pub mod plane;
pub mod proxy;
pub mod single;

use fixedbitset::FixedBitSet;

use crate::graph::embedding::{Dart, Embedding, NONE};
use crate::graph::scc::reach_mask;
use crate::piece::{EdgeKind, PieceGraph};
use crate::{Error, Result};

pub use agg::{Agg, Semigroup};
use cut::{cut_level, Cut};
use proxy::{build_proxy, Proxy};
use single::{Instance, SingleHole};

/// A chunk of the answer, resolved lazily by [`QueryResult::iter`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Part {
    /// Stored vertex list of a single-hole table.
    Store { slot: u32, start: u32, len: u32 },
    /// Interior vertices `lo..hi` of a canonical path.
    Path { slot: u32, path: u32, lo: u32, hi: u32 },
    /// Vertices `lo..=hi` of the cut path of a level.
    Cut { level: u32, lo: u32, hi: u32 },
    /// Members of one proxy vertex.
    Members { proxy: u32 },
}

/// Accumulates the parts of one query.
#[derive(Debug)]
pub struct Sink {
    pub agg: Agg,
    pub parts: Vec<Part>,
    /// Base instances handed out, when tracing.
    pub instances: Option<Vec<Instance>>,
}

impl Sink {
    pub fn new(channels: usize) -> Self {
        Sink {
            agg: Agg::empty(channels),
            parts: Vec::new(),
            instances: None,
        }
    }
}

/// What a path net is built from. Vertex and edge ids are the caller's.
#[derive(Clone, Debug)]
pub struct PathNetInput {
    pub emb: Embedding,
    /// Directed edges `ends[0] -> ends[1]`; other live edges are scaffolding.
    pub real: Vec<bool>,
    /// One dart of every hole walk.
    pub hole_starts: Vec<Dart>,
    pub boundary: Vec<bool>,
    /// Vertices that may be reported; everything else is artificial.
    pub vertex_real: Vec<bool>,
    pub ops: Vec<Semigroup>,
    /// `weights[c][v]`
    pub weights: Vec<Vec<Option<i64>>>,
}

impl PathNetInput {
    pub fn from_piece(p: &PieceGraph, ops: Vec<Semigroup>, weights: Vec<Vec<Option<i64>>>) -> Self {
        let real = p
            .kind
            .iter()
            .map(|k| matches!(k, EdgeKind::Real(_)))
            .collect();
        PathNetInput {
            emb: p.emb.clone(),
            real,
            hole_starts: p.holes.iter().map(|h| h.walk[0]).collect(),
            boundary: p.is_boundary.clone(),
            vertex_real: (0..p.num_vertices() as u32).map(|v| p.is_real(v)).collect(),
            ops,
            weights,
        }
    }
}

#[derive(Clone, Debug)]
pub struct PathNet {
    ops: Vec<Semigroup>,
    boundary: Vec<bool>,
    out: Vec<Vec<u32>>,
    inn: Vec<Vec<u32>>,
    proxy: Proxy,
    cuts: Vec<Cut>,
    singles: Vec<SingleHole>,
    /// Leaf vertex to the single-hole instance whose hole carries it.
    single_of: Vec<u32>,
    /// Operation counter for preprocessing.
    pub build_ops: u64,
    pub debug_closedness: bool,
}

impl PathNet {
    pub fn build(input: PathNetInput) -> Self {
        let PathNetInput {
            emb,
            real,
            hole_starts,
            boundary,
            vertex_real,
            ops,
            weights,
        } = input;
        let n = emb.num_vertices();
        let mut counter = (n + emb.edge_slots()) as u64;
        let mut out = vec![Vec::new(); n];
        let mut inn = vec![Vec::new(); n];
        for e in emb.live_edges() {
            if real[e as usize] {
                let [t, h] = emb.ends(e);
                out[t as usize].push(h);
                inn[h as usize].push(t);
            }
        }
        let proxy = build_proxy(&emb, &real, &hole_starts, &boundary, &vertex_real, &ops, &weights);
        counter += (n + emb.edge_slots()) as u64;

        let mut cuts = Vec::new();
        let mut dag = proxy.dag.clone();
        while let Some((c, child)) = cut_level(&dag, &ops, &mut counter) {
            cuts.push(c);
            dag = child;
        }
        let mut singles = Vec::new();
        let mut single_of = vec![NONE; dag.n()];
        for h in 0..dag.holes.len() {
            let slot = singles.len() as u32;
            let sh = SingleHole::build(&dag, h, slot, &ops, &mut counter);
            for &v in &sh.y {
                debug_assert_eq!(single_of[v as usize], NONE, "leaf holes share a vertex");
                single_of[v as usize] = slot;
            }
            singles.push(sh);
        }
        PathNet {
            ops,
            boundary,
            out,
            inn,
            proxy,
            cuts,
            singles,
            single_of,
            build_ops: counter,
            debug_closedness: false,
        }
    }

    pub fn channels(&self) -> usize {
        self.ops.len()
    }

    /// Number of cuts in the chain.
    pub fn depth(&self) -> usize {
        self.cuts.len()
    }

    pub fn proxy_size(&self) -> usize {
        self.proxy.dag.n()
    }

    pub fn proxy(&self) -> &Proxy {
        &self.proxy
    }

    pub fn cuts(&self) -> &[Cut] {
        &self.cuts
    }

    pub fn singles(&self) -> &[SingleHole] {
        &self.singles
    }

    pub fn query(&self, a: &[u32]) -> Result<QueryResult<'_>> {
        self.query_with(a, false)
    }

    /// Like [`PathNet::query`]; with `trace` set, the base instances are kept.
    pub fn query_with(&self, a: &[u32], trace: bool) -> Result<QueryResult<'_>> {
        for &v in a {
            if !self.boundary.get(v as usize).copied().unwrap_or(false) {
                return Err(Error::NotBoundary(v));
            }
        }
        if self.debug_closedness {
            self.check_closed(a)?;
        }
        let mut sink = Sink::new(self.ops.len());
        if trace {
            sink.instances = Some(Vec::new());
        }
        let mut cur: Vec<u32> = a.iter().map(|&v| self.proxy.of[v as usize]).collect();
        cur.sort_unstable();
        cur.dedup();
        for &p in &cur {
            if !self.proxy.members[p as usize].is_empty() {
                sink.agg.add(&self.ops, &self.proxy_weight(p));
                sink.parts.push(Part::Members { proxy: p });
            }
        }
        for (level, c) in self.cuts.iter().enumerate() {
            let (next, range) = c.descend(&cur);
            if let Some((lo, hi)) = range {
                for (k, t) in c.tables.iter().enumerate() {
                    sink.agg.vals[k] = self.ops[k].combine(sink.agg.vals[k], t.query(lo, hi + 1));
                }
                sink.parts.push(Part::Cut {
                    level: level as u32,
                    lo: lo as u32,
                    hi: hi as u32,
                });
            }
            cur = next;
        }
        let mut groups: Vec<Vec<u32>> = vec![Vec::new(); self.singles.len()];
        for &v in &cur {
            let s = self.single_of[v as usize];
            debug_assert!(s != NONE, "query vertex is not a leaf terminal");
            if s != NONE {
                groups[s as usize].push(self.singles[s as usize].index_of[&v]);
            }
        }
        for (s, mut b) in groups.into_iter().enumerate() {
            b.sort_unstable();
            self.singles[s].solve(&b, &mut sink);
        }
        Ok(QueryResult { net: self, sink })
    }

    fn proxy_weight(&self, p: u32) -> Vec<Option<i64>> {
        self.proxy.dag.weights.iter().map(|w| w[p as usize]).collect()
    }

    /// Proxy vertices behind a part.
    fn part_proxies(&self, part: &Part) -> &[u32] {
        match *part {
            Part::Store { slot, start, len } => self.singles[slot as usize].stored(start, len),
            Part::Path { slot, path, lo, hi } => self.singles[slot as usize].path_inner(path, lo, hi),
            Part::Cut { level, lo, hi } => &self.cuts[level as usize].q[lo as usize..=hi as usize],
            Part::Members { .. } => &[],
        }
    }

    fn check_closed(&self, a: &[u32]) -> Result<()> {
        let n = self.boundary.len();
        let f = reach_mask(n, |v| self.out[v as usize].iter().copied(), a.iter().copied());
        let b = reach_mask(n, |v| self.inn[v as usize].iter().copied(), a.iter().copied());
        let mut in_a = FixedBitSet::with_capacity(n);
        for &v in a {
            in_a.insert(v as usize);
        }
        for v in 0..n {
            if f[v] && b[v] && self.boundary[v] && !in_a.contains(v) {
                return Err(Error::NotClosed(v as u32));
            }
        }
        Ok(())
    }
}

/// Answer of one query: the aggregate is ready; vertices are produced lazily.
#[derive(Debug)]
pub struct QueryResult<'a> {
    net: &'a PathNet,
    sink: Sink,
}

impl<'a> QueryResult<'a> {
    pub fn aggregate(&self) -> &[Option<i64>] {
        &self.sink.agg.vals
    }

    pub fn parts(&self) -> &[Part] {
        &self.sink.parts
    }

    pub fn instances(&self) -> Option<&[Instance]> {
        self.sink.instances.as_deref()
    }

    /// Reported vertices in the caller's ids.
    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        let net = self.net;
        self.sink.parts.iter().flat_map(move |part| {
            let direct: &[u32] = match *part {
                Part::Members { proxy } => &net.proxy.members[proxy as usize],
                _ => &[],
            };
            let via = net
                .part_proxies(part)
                .iter()
                .flat_map(move |&p| net.proxy.members[p as usize].iter().copied());
            direct.iter().copied().chain(via)
        })
    }
}
