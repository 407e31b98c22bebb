//! Queries whose terminals lie on one hole of an acyclic level graph.
//!
//! Terminals are indexed by their position in the hole order. A curve over an
//! ascending terminal list `b` is a tag per cyclic segment `(b[i], b[i+1])`:
//! `true` means the canonical path between the two, `false` the hole arc.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use super::agg::{prefixes, Agg, RangeTable, Semigroup};
use super::erds::{Erds, ReachPartition};
use super::plane::PlaneDag;
use super::{Part, Sink};
use crate::graph::embedding::{Dart, NONE};
use crate::graph::perturb::{shortest_path_tree, topological_order};

const EMPTY: u16 = u16::MAX;

#[derive(Clone, Debug)]
pub struct CanonPath {
    /// Terminal indices `(from, to)` in graph direction.
    pub from: u32,
    pub to: u32,
    pub verts: Vec<u32>,
    /// Darts in graph direction; `darts[i]` goes `verts[i] -> verts[i+1]`.
    pub darts: Vec<Dart>,
    /// `rank[i]`: interior vertices among `verts[..i]`.
    rank: Vec<u32>,
    inner: Vec<u32>,
    tables: Vec<RangeTable>,
}

#[derive(Clone, Debug)]
struct Entry {
    start: u32,
    len: u32,
    agg: Box<[Option<i64>]>,
}

/// `X'` of a 4-tuple sorted by decreasing distance of `z_{b3,x}` from `b3`.
#[derive(Clone, Debug)]
struct XList {
    start: u32,
    zdist: Vec<u32>,
    pre: Vec<Vec<Option<i64>>>,
}

/// A sub-instance handed to the base case, kept for audits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub b: Vec<u32>,
    pub tags: Vec<bool>,
}

#[derive(Clone, Debug)]
pub struct SingleHole {
    pub slot: u32,
    pub hole: usize,
    /// Terminals (boundary vertices of the hole) in hole order.
    pub y: Vec<u32>,
    pub index_of: HashMap<u32, u32>,
    pub interior: FixedBitSet,
    m: usize,
    ops: Vec<Semigroup>,
    /// Channel values, `None` off the interior.
    weights: Vec<Vec<Option<i64>>>,
    /// `reach[i]`: vertices reachable from terminal `i`; `coreach[i]`: reaching it.
    reach: Vec<FixedBitSet>,
    coreach: Vec<FixedBitSet>,
    /// Path id of each unordered related pair, `m * m`, `NONE` if unrelated.
    pid: Vec<u32>,
    pub paths: Vec<CanonPath>,
    /// `left[p][0]`: strictly left of the path as a curve from the smaller
    /// terminal index to the larger; `left[p][1]` the other direction.
    left: Vec<[FixedBitSet; 2]>,
    /// Intersection subpaths per path pair: inclusive ranges on both.
    inter: Vec<[u16; 4]>,
    small: HashMap<u64, Entry>,
    xlists: HashMap<u64, XList>,
    store: Vec<u32>,
    /// `zdist[a][v]`: distance from `a` to `z_{a,v}` in hole order.
    zdist: Vec<Vec<u32>>,
    pub lf: ReachPartition,
    pub lr: ReachPartition,
}

fn small_key(b: &[u32], mask: u32) -> u64 {
    let mut k = 0u64;
    for (i, &x) in b.iter().enumerate() {
        k |= (x as u64 + 1) << (14 * i);
    }
    k | ((mask as u64) << 56) | ((b.len() as u64) << 60)
}

impl SingleHole {
    pub fn build(dag: &PlaneDag, hole: usize, slot: u32, ops: &[Semigroup], counter: &mut u64) -> Self {
        let n = dag.n();
        let on = dag.on_holes();
        let mut interior = FixedBitSet::with_capacity(n);
        for v in 0..n {
            if !on[v] {
                interior.insert(v);
            }
        }
        let y: Vec<u32> = dag
            .hole_order(hole)
            .into_iter()
            .filter(|&v| dag.boundary[v as usize])
            .collect();
        let m = y.len();
        assert!(m < (1 << 14) - 1, "too many terminals on one hole");
        let index_of: HashMap<u32, u32> = y.iter().enumerate().map(|(i, &v)| (v, i as u32)).collect();
        let reach: Vec<FixedBitSet> = y.iter().map(|&v| dag.reach(v, true)).collect();
        let coreach: Vec<FixedBitSet> = y.iter().map(|&v| dag.reach(v, false)).collect();
        *counter += (2 * m * (n + dag.emb.edge_slots())) as u64;

        let mut sh = SingleHole {
            slot,
            hole,
            y,
            index_of,
            interior,
            m,
            ops: ops.to_vec(),
            weights: Vec::new(),
            reach,
            coreach,
            pid: vec![NONE; m * m],
            paths: Vec::new(),
            left: Vec::new(),
            inter: Vec::new(),
            small: HashMap::new(),
            xlists: HashMap::new(),
            store: Vec::new(),
            zdist: Vec::new(),
            lf: ReachPartition::default(),
            lr: ReachPartition::default(),
        };
        sh.weights = dag
            .weights
            .iter()
            .map(|ch| {
                (0..n)
                    .map(|v| if sh.interior.contains(v) { ch[v] } else { None })
                    .collect()
            })
            .collect();
        sh.build_paths(dag, counter);
        sh.build_intersections(counter);
        sh.build_small(counter);
        sh.build_z(counter);
        sh.build_xlists(counter);
        let (reach, coreach) = (&sh.reach, &sh.coreach);
        let yv = &sh.y;
        sh.lf = ReachPartition::build(m, |i, j| reach[i].contains(yv[j] as usize));
        sh.lr = ReachPartition::build(m, |i, j| coreach[i].contains(yv[j] as usize));
        *counter += (m * m) as u64;
        sh
    }

    pub fn num_terminals(&self) -> usize {
        self.m
    }

    pub fn reaches(&self, i: u32, j: u32) -> bool {
        self.reach[i as usize].contains(self.y[j as usize] as usize)
    }

    pub fn related(&self, i: u32, j: u32) -> bool {
        self.pid[i as usize * self.m + j as usize] != NONE
    }

    pub fn path_id(&self, i: u32, j: u32) -> Option<u32> {
        let p = self.pid[i as usize * self.m + j as usize];
        (p != NONE).then_some(p)
    }

    /// Vertices strictly left of the canonical path between terminals `i`
    /// and `j`, seen as a curve from `i` to `j`.
    pub fn left_of(&self, i: u32, j: u32) -> &FixedBitSet {
        let p = self.pid[i as usize * self.m + j as usize];
        assert!(p != NONE, "no canonical path between {i} and {j}");
        &self.left[p as usize][usize::from(i > j)]
    }

    /// Darts of the canonical path between `i` and `j` as a curve from `i`.
    pub fn curve_darts(&self, i: u32, j: u32) -> Vec<Dart> {
        let p = &self.paths[self.path_id(i, j).expect("related") as usize];
        if p.from == i {
            p.darts.clone()
        } else {
            p.darts.iter().rev().map(|&d| d ^ 1).collect()
        }
    }

    fn build_paths(&mut self, dag: &PlaneDag, counter: &mut u64) {
        let m = self.m;
        let n = dag.n();
        let (pairs, ids) = dag.real_edges();
        let order = topological_order(n, &pairs).expect("level graph must be acyclic");
        let faces = dag.emb.faces();
        *counter += (pairs.len() + faces.len()) as u64;
        for i in 0..m {
            let src = self.y[i];
            let parent = shortest_path_tree(n, &pairs, &order, src);
            *counter += (pairs.len() * pairs.len().div_ceil(64).max(1)) as u64;
            for j in 0..m {
                if i == j || !self.reach[i].contains(self.y[j] as usize) {
                    continue;
                }
                let mut verts = vec![self.y[j]];
                let mut darts = Vec::new();
                let mut x = self.y[j];
                while x != src {
                    let e = parent[x as usize];
                    darts.push(2 * ids[e as usize]);
                    x = pairs[e as usize].0;
                    verts.push(x);
                }
                verts.reverse();
                darts.reverse();
                let p = self.paths.len() as u32;
                self.pid[i * m + j] = p;
                self.pid[j * m + i] = p;
                let mut rank = vec![0u32];
                let mut inner = Vec::new();
                for &v in &verts {
                    if self.interior.contains(v as usize) {
                        inner.push(v);
                    }
                    rank.push(inner.len() as u32);
                }
                let tables = self
                    .ops
                    .iter()
                    .enumerate()
                    .map(|(c, &op)| {
                        let vals: Vec<Option<i64>> = verts
                            .iter()
                            .map(|&v| self.weights[c][v as usize])
                            .collect();
                        RangeTable::new(op, &vals)
                    })
                    .collect();
                let lo = i.min(j) as u32;
                // curve from lo to hi
                let fwd: Vec<Dart> = if i as u32 == lo {
                    darts.clone()
                } else {
                    darts.iter().rev().map(|&d| d ^ 1).collect()
                };
                let bwd: Vec<Dart> = fwd.iter().rev().map(|&d| d ^ 1).collect();
                let mut l0 = dag.left_of(&faces, self.hole, &fwd);
                let mut l1 = dag.left_of(&faces, self.hole, &bwd);
                l0.intersect_with(&self.interior);
                l1.intersect_with(&self.interior);
                *counter += (2 * (n + faces.len())) as u64;
                self.left.push([l0, l1]);
                self.paths.push(CanonPath {
                    from: i as u32,
                    to: j as u32,
                    verts,
                    darts,
                    rank,
                    inner,
                    tables,
                });
            }
        }
    }

    fn build_intersections(&mut self, counter: &mut u64) {
        let np = self.paths.len();
        self.inter = vec![[EMPTY; 4]; np * np];
        let n = self.interior.len();
        let mut at = vec![u16::MAX; n];
        for p in 0..np {
            for (k, &v) in self.paths[p].verts.iter().enumerate() {
                at[v as usize] = k as u16;
            }
            for q in p..np {
                let mut r = [EMPTY; 4];
                for (k, &v) in self.paths[q].verts.iter().enumerate() {
                    let a = at[v as usize];
                    if a != u16::MAX {
                        if r[0] == EMPTY {
                            r = [a, a, k as u16, k as u16];
                        } else {
                            r[0] = r[0].min(a);
                            r[1] = r[1].max(a);
                            r[3] = k as u16;
                        }
                    }
                }
                *counter += self.paths[q].verts.len() as u64;
                self.inter[p * np + q] = r;
                self.inter[q * np + p] = [r[2], r[3], r[0], r[1]];
            }
            for &v in &self.paths[p].verts {
                at[v as usize] = u16::MAX;
            }
        }
    }

    /// Intersection of paths `p` and `q` as an inclusive index range on `p`.
    pub fn intersection_on(&self, p: u32, q: u32) -> Option<(usize, usize)> {
        let r = self.inter[p as usize * self.paths.len() + q as usize];
        (r[0] != EMPTY).then_some((r[0] as usize, r[1] as usize))
    }

    fn union_pi(&self, b: &[u32]) -> FixedBitSet {
        let mut f = FixedBitSet::with_capacity(self.interior.len());
        let mut t = FixedBitSet::with_capacity(self.interior.len());
        for &x in b {
            f.union_with(&self.reach[x as usize]);
            t.union_with(&self.coreach[x as usize]);
        }
        f.intersect_with(&t);
        f.intersect_with(&self.interior);
        f
    }

    /// Vertices on some path connecting terminals `i` and `j`.
    fn connecting(&self, i: u32, j: u32) -> FixedBitSet {
        let (i, j) = (i as usize, j as usize);
        let mut a = self.reach[i].clone();
        a.intersect_with(&self.coreach[j]);
        let mut b = self.reach[j].clone();
        b.intersect_with(&self.coreach[i]);
        a.union_with(&b);
        a.intersect_with(&self.interior);
        a
    }

    fn build_small(&mut self, counter: &mut u64) {
        let m = self.m as u32;
        let words = self.interior.len().div_ceil(32) as u64;
        let mut small = HashMap::new();
        let mut store = std::mem::take(&mut self.store);
        let mut tuple = Vec::new();
        for q in 2..=4u32.min(m) {
            combos(m, q as usize, &mut tuple, &mut |b| {
                let base = self.union_pi(b);
                *counter += words * q as u64;
                if base.is_clear() {
                    return;
                }
                for mask in 0..(1u32 << q) {
                    let mut set = base.clone();
                    let mut ok = true;
                    for s in 0..q as usize {
                        if mask >> s & 1 == 1 {
                            let (x, y) = (b[s], b[(s + 1) % q as usize]);
                            if !self.related(x, y) {
                                ok = false;
                                break;
                            }
                            set.intersect_with(self.left_of(x, y));
                        }
                    }
                    if !ok {
                        continue;
                    }
                    *counter += words * q as u64;
                    if set.is_clear() {
                        continue;
                    }
                    let e = push_entry(&mut store, &self.ops, &self.weights, set.ones().map(|v| v as u32));
                    small.insert(small_key(b, mask), e);
                }
            });
        }
        self.small = small;
        self.store = store;
    }

    fn build_z(&mut self, counter: &mut u64) {
        let m = self.m;
        let n = self.interior.len();
        let mut zdist = vec![vec![m as u32; n]; m];
        for a in 0..m {
            let mut open = self.interior.clone();
            for d in 1..m {
                let b = (a + d) % m;
                if !self.related(a as u32, b as u32) {
                    continue;
                }
                let left = self.left_of(a as u32, b as u32);
                let done: Vec<usize> = open.ones().filter(|&v| !left.contains(v)).collect();
                for v in done {
                    zdist[a][v] = d as u32;
                    open.remove(v);
                }
                *counter += n as u64;
            }
        }
        self.zdist = zdist;
    }

    fn build_xlists(&mut self, counter: &mut u64) {
        let m = self.m as u32;
        if m < 5 {
            return;
        }
        let words = self.interior.len().div_ceil(32) as u64;
        let mut xlists = HashMap::new();
        let mut store = std::mem::take(&mut self.store);
        let mut tuple = Vec::new();
        combos(m, 4, &mut tuple, &mut |sorted| {
            for rot in 0..4 {
                let b: Vec<u32> = (0..4).map(|i| sorted[(i + rot) % 4]).collect();
                if !self.related(b[1], b[2]) {
                    continue;
                }
                let mut base = self.connecting(b[1], b[2]);
                if self.related(b[0], b[1]) {
                    base.difference_with(&self.connecting(b[0], b[1]));
                }
                *counter += 3 * words;
                if base.is_clear() {
                    continue;
                }
                for mask in 0..8u32 {
                    let mut set = base.clone();
                    let mut ok = true;
                    for s in 0..3 {
                        if mask >> s & 1 == 1 {
                            if !self.related(b[s], b[s + 1]) {
                                ok = false;
                                break;
                            }
                            set.intersect_with(self.left_of(b[s], b[s + 1]));
                        }
                    }
                    if !ok {
                        continue;
                    }
                    *counter += 3 * words;
                    if set.is_clear() {
                        continue;
                    }
                    let z = &self.zdist[b[3] as usize];
                    let mut items: Vec<u32> = set.ones().map(|v| v as u32).collect();
                    items.sort_by_key(|&v| (std::cmp::Reverse(z[v as usize]), v));
                    *counter += items.len() as u64 * (1 + items.len().ilog2() as u64);
                    let start = store.len() as u32;
                    store.extend_from_slice(&items);
                    let pre = self
                        .ops
                        .iter()
                        .enumerate()
                        .map(|(c, &op)| prefixes(op, items.iter().map(|&v| self.weights[c][v as usize])))
                        .collect();
                    let zd = items.iter().map(|&v| z[v as usize]).collect();
                    xlists.insert(small_key(&b, mask), XList { start, zdist: zd, pre });
                }
            }
        });
        self.xlists = xlists;
        self.store = store;
    }

    fn emit_store(&self, start: u32, len: u32, agg: &[Option<i64>], sink: &mut Sink) {
        if len == 0 {
            return;
        }
        sink.agg.add(&self.ops, agg);
        sink.parts.push(Part::Store {
            slot: self.slot,
            start,
            len,
        });
    }

    /// Interior vertices of path `p` at indices `lo..=hi`.
    fn emit_path(&self, p: u32, lo: usize, hi: usize, sink: &mut Sink) {
        let path = &self.paths[p as usize];
        let (a, b) = (path.rank[lo], path.rank[hi + 1]);
        if a == b {
            return;
        }
        for (c, t) in path.tables.iter().enumerate() {
            sink.agg.vals[c] = self.ops[c].combine(sink.agg.vals[c], t.query(lo, hi + 1));
        }
        sink.parts.push(Part::Path {
            slot: self.slot,
            path: p,
            lo: a,
            hi: b,
        });
    }

    pub fn path_inner(&self, p: u32, lo: u32, hi: u32) -> &[u32] {
        &self.paths[p as usize].inner[lo as usize..hi as usize]
    }

    pub fn stored(&self, start: u32, len: u32) -> &[u32] {
        &self.store[start as usize..(start + len) as usize]
    }

    /// Base instance: ascending terminals `b` with related pairs only among
    /// cyclic neighbours.
    pub fn solve_base(&self, b: &[u32], tags: &[bool], sink: &mut Sink) {
        let k = b.len();
        debug_assert_eq!(tags.len(), k);
        if let Some(list) = sink.instances.as_mut() {
            list.push(Instance {
                b: b.to_vec(),
                tags: tags.to_vec(),
            });
        }
        if k < 2 {
            return;
        }
        if cfg!(debug_assertions) {
            for i in 0..k {
                for j in i + 1..k {
                    if self.related(b[i], b[j]) {
                        debug_assert!(j == i + 1 || (i == 0 && j == k - 1), "base requirement violated");
                    }
                }
            }
        }
        if k <= 4 {
            let mask = tags.iter().enumerate().fold(0, |acc, (i, &t)| acc | (u32::from(t) << i));
            if let Some(e) = self.small.get(&small_key(b, mask)) {
                self.emit_store(e.start, e.len, &e.agg, sink);
            }
            return;
        }
        for i in 0..k {
            let tau: Vec<u32> = (0..5).map(|d| b[(i + k - 1 + d) % k]).collect();
            let mask = (0..3).fold(0, |acc, s| acc | (u32::from(tags[(i + k - 1 + s) % k]) << s));
            let Some(x) = self.xlists.get(&small_key(&tau[..4], mask)) else {
                continue;
            };
            let count = if tags[(i + 2) % k] {
                let d = (tau[4] + self.m as u32 - tau[3]) % self.m as u32;
                x.zdist.partition_point(|&z| z > d)
            } else {
                x.zdist.len()
            };
            let agg: Vec<Option<i64>> = x.pre.iter().map(|p| p[count]).collect();
            self.emit_store(x.start, count as u32, &agg, sink);
        }
    }

    /// General single-hole query over ascending terminals `b`.
    pub fn solve(&self, b: &[u32], sink: &mut Sink) {
        let k = b.len();
        if k < 2 {
            return;
        }
        let mut s: Vec<u32> = vec![b[0], b[1]];
        let mut stags: Vec<bool> = vec![false];
        let mut spos: HashMap<u32, usize> = HashMap::from([(b[0], 0), (b[1], 1)]);
        let mut lz = Erds::new(&self.lf);
        let mut rz = Erds::new(&self.lr);
        lz.insert(b[0] as usize);
        rz.insert(b[0] as usize);
        for &t1 in &b[2..] {
            let mut x: Vec<u32> = Vec::new();
            while let Some(z) = lz.query_any(t1 as usize) {
                lz.delete(z);
                rz.delete(z);
                x.push(z as u32);
            }
            while let Some(z) = rz.query_any(t1 as usize) {
                lz.delete(z);
                rz.delete(z);
                x.push(z as u32);
            }
            let p = s.len();
            if x.is_empty() {
                let sp = s[p - 1] as usize;
                lz.insert(sp);
                rz.insert(sp);
                spos.insert(t1, p);
                s.push(t1);
                stags.push(false);
                continue;
            }
            x.sort_by_key(|v| spos[v]);
            let idx: Vec<usize> = x.iter().map(|v| spos[v]).collect();
            let l = x.len();

            // vertices on the cutting paths not on the curve
            for i in 0..l {
                self.emit_cut_path(t1, &x, i, &idx, &s, &stags, sink);
            }
            // type 1
            for i in 0..l.saturating_sub(1) {
                let mut bb: Vec<u32> = s[idx[i]..=idx[i + 1]].to_vec();
                let mut tt: Vec<bool> = stags[idx[i]..idx[i + 1]].to_vec();
                bb.push(t1);
                tt.push(true);
                tt.push(true);
                self.solve_base(&bb, &tt, sink);
            }
            // type 2
            {
                let mut bb: Vec<u32> = s[idx[l - 1]..].to_vec();
                let mut tt: Vec<bool> = stags[idx[l - 1]..].to_vec();
                bb.push(t1);
                tt.push(false);
                tt.push(true);
                self.solve_base(&bb, &tt, sink);
            }
            // type 3 continues with S = S_0 + t1 and Z = S_0
            let g = idx[0];
            for &v in &s[g + 1..p - 1] {
                lz.delete(v as usize);
                rz.delete(v as usize);
            }
            lz.insert(s[g] as usize);
            rz.insert(s[g] as usize);
            s.truncate(g + 1);
            stags.truncate(g);
            stags.push(true);
            spos.insert(t1, s.len());
            s.push(t1);
        }
        stags.push(false);
        self.solve_base(&s, &stags, sink);
    }

    #[allow(clippy::too_many_arguments)]
    fn emit_cut_path(
        &self,
        t1: u32,
        x: &[u32],
        i: usize,
        idx: &[usize],
        s: &[u32],
        stags: &[bool],
        sink: &mut Sink,
    ) {
        let pid = self.path_id(t1, x[i]).expect("cut path exists");
        let len = self.paths[pid as usize].verts.len();
        let mut cut: Vec<(usize, usize)> = Vec::new();
        if i > 0 {
            let q = self.path_id(t1, x[i - 1]).expect("cut path exists");
            cut.extend(self.intersection_on(pid, q));
        }
        let j = idx[i];
        let lo = j.saturating_sub(2);
        let hi = (j + 2).min(stags.len().saturating_sub(1));
        for jj in lo..=hi.min(stags.len().saturating_sub(1)) {
            if jj < stags.len() && stags[jj] {
                let q = self.path_id(s[jj], s[jj + 1]).expect("curve path exists");
                cut.extend(self.intersection_on(pid, q));
            }
        }
        if cfg!(debug_assertions) {
            let path = &self.paths[pid as usize];
            for jj in 0..stags.len() {
                if stags[jj] && (jj < lo || jj > hi) {
                    let q = self.path_id(s[jj], s[jj + 1]).expect("curve path exists");
                    if let Some((a, b)) = self.intersection_on(pid, q) {
                        debug_assert_eq!(path.rank[a], path.rank[b + 1], "curve meets a cut path outside the window");
                    }
                }
            }
        }
        cut.sort_unstable();
        let mut at = 0usize;
        for (a, b) in cut {
            if a > at {
                self.emit_path(pid, at, a - 1, sink);
            }
            at = at.max(b + 1);
        }
        if at < len {
            self.emit_path(pid, at, len - 1, sink);
        }
    }
}

fn push_entry(
    store: &mut Vec<u32>,
    ops: &[Semigroup],
    weights: &[Vec<Option<i64>>],
    items: impl Iterator<Item = u32>,
) -> Entry {
    let start = store.len() as u32;
    store.extend(items);
    let mut agg = Agg::empty(ops.len());
    for &v in &store[start as usize..] {
        for (c, &op) in ops.iter().enumerate() {
            agg.vals[c] = op.combine(agg.vals[c], weights[c][v as usize]);
        }
    }
    Entry {
        start,
        len: store.len() as u32 - start,
        agg: agg.vals.into_boxed_slice(),
    }
}

/// Calls `f` on every ascending `q`-subset of `0..m`.
fn combos(m: u32, q: usize, buf: &mut Vec<u32>, f: &mut impl FnMut(&[u32])) {
    if buf.len() == q {
        f(buf);
        return;
    }
    let start = buf.last().map_or(0, |&x| x + 1);
    let need = (q - buf.len()) as u32;
    for x in start..=m.saturating_sub(need) {
        if x + need > m {
            break;
        }
        buf.push(x);
        combos(m, q, buf, f);
        buf.pop();
    }
}
