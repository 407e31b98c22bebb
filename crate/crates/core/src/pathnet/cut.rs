//! Cutting a level graph along a path between two holes.
//!
//! The cut path `Q = u_0 .. u_{q-1}` runs from a vertex of one hole to a vertex
//! of another and meets the holes only at its ends. Every `u_k` is split into
//! `u'_k` (keeping the id) and `u''_k` (a new vertex); the edges of `Q` are
//! doubled, and the two holes become one.

use std::collections::VecDeque;

use crate::graph::embedding::{rev, Dart, NONE};

use super::agg::{RangeTable, Semigroup};
use super::plane::PlaneDag;

/// One cut of the chain: the data that maps a query on the uncut graph to a
/// query on the cut graph.
#[derive(Clone, Debug)]
pub struct Cut {
    /// Vertices of `Q` in the uncut graph.
    pub q: Vec<u32>,
    /// `u''` copy of every `Q` vertex in the cut graph.
    pub twin: Vec<u32>,
    /// Earliest `Q` index reachable from each boundary vertex, `NONE` if none.
    pub first: Vec<u32>,
    /// Latest `Q` index reaching each boundary vertex, `NONE` if none.
    pub last: Vec<u32>,
    /// Aggregates over `Q` with both ends masked out.
    pub tables: Vec<RangeTable>,
    /// The cut graph, kept for audits.
    pub child: PlaneDag,
}

impl Cut {
    /// Maps `a` (boundary vertices of the uncut graph) to the query on the cut
    /// graph. The inclusive range of `Q` indices to report directly is
    /// returned alongside, ends excluded.
    pub fn descend(&self, a: &[u32]) -> (Vec<u32>, Option<(usize, usize)>) {
        let (s, t) = (self.q[0], *self.q.last().expect("nonempty cut"));
        let mut f = NONE;
        let mut l = 0u32;
        let mut any_l = false;
        for &v in a {
            f = f.min(self.first[v as usize]);
            if self.last[v as usize] != NONE {
                l = l.max(self.last[v as usize]);
                any_l = true;
            }
        }
        let mut out: Vec<u32> = a.iter().copied().filter(|&v| v != s && v != t).collect();
        let mut range = None;
        if f != NONE && any_l && f <= l {
            let (f, l) = (f as usize, l as usize);
            out.extend([self.q[f], self.twin[f], self.q[l], self.twin[l]]);
            let lo = f.max(1);
            let hi = l.min(self.q.len().saturating_sub(2));
            if lo <= hi && self.q.len() >= 3 {
                range = Some((lo, hi));
            }
        }
        out.sort_unstable();
        out.dedup();
        (out, range)
    }
}

/// Picks a cut path if two holes are related; returns
/// `(Q darts, Q vertices, hole i, hole j)`.
fn choose_path(dag: &PlaneDag) -> Option<(Vec<Dart>, Vec<u32>, usize, usize)> {
    let n = dag.n();
    let h = dag.holes.len();
    let mut hole_of = vec![NONE; n];
    let mut shared: Option<(u32, usize, usize)> = None;
    for (i, walk) in dag.holes.iter().enumerate() {
        for &d in walk {
            let v = dag.emb.tail(d);
            let o = hole_of[v as usize];
            if o == NONE {
                hole_of[v as usize] = i as u32;
            } else if o as usize != i {
                let cand = (v, o as usize, i);
                if shared.is_none_or(|c| cand < c) {
                    shared = Some(cand);
                }
            }
        }
    }
    if let Some((v, i, j)) = shared {
        return Some((Vec::new(), vec![v], i, j));
    }
    let mut best: Option<(Vec<Dart>, Vec<u32>, usize, usize)> = None;
    for i in 0..h {
        let mut parent = vec![NONE; n];
        let mut dist = vec![NONE; n];
        let mut qu = VecDeque::new();
        for v in dag.hole_order(i) {
            dist[v as usize] = 0;
            qu.push_back(v);
        }
        let mut hit = None;
        'bfs: while let Some(v) = qu.pop_front() {
            for &(w, e) in &dag.out[v as usize] {
                if dist[w as usize] != NONE {
                    continue;
                }
                dist[w as usize] = dist[v as usize] + 1;
                parent[w as usize] = e;
                let o = hole_of[w as usize];
                if o != NONE {
                    if o as usize != i {
                        hit = Some((w, o as usize));
                        break 'bfs;
                    }
                    continue;
                }
                qu.push_back(w);
            }
        }
        let Some((t, j)) = hit else { continue };
        if best.as_ref().is_some_and(|b| b.0.len() <= dist[t as usize] as usize) {
            continue;
        }
        let mut darts = Vec::new();
        let mut verts = vec![t];
        let mut x = t;
        while dist[x as usize] > 0 {
            let e = parent[x as usize];
            darts.push(2 * e);
            x = dag.emb.ends(e)[0];
            verts.push(x);
        }
        darts.reverse();
        verts.reverse();
        best = Some((darts, verts, i, j));
    }
    best
}

/// Darts of `v` from `from` (inclusive) to `to` (exclusive) in rotation order.
fn arc(rot: &[Dart], from: Dart, to: Dart) -> Vec<Dart> {
    let k = rot.len();
    let a = rot.iter().position(|&d| d == from).expect("dart at vertex");
    let mut out = Vec::new();
    let mut p = a;
    loop {
        out.push(rot[p]);
        p = (p + 1) % k;
        if rot[p] == to {
            break;
        }
        if p == a {
            break;
        }
    }
    out
}

/// Cuts `dag` if it has two related holes. Returns the cut and the cut graph.
pub fn cut_level(dag: &PlaneDag, ops: &[Semigroup], counter: &mut u64) -> Option<(Cut, PlaneDag)> {
    let (qd, qv, hi, hj) = choose_path(dag)?;
    let n = dag.n();
    *counter += (dag.holes.len() * (n + dag.emb.edge_slots())) as u64;
    let emb0 = &dag.emb;
    let first_dart = |h: usize, v: u32| -> Dart {
        *dag.holes[h]
            .iter()
            .find(|&&d| emb0.tail(d) == v)
            .expect("vertex on hole")
    };
    let len = qv.len();
    let w_s = first_dart(hi, qv[0]);
    let w_t = first_dart(hj, qv[len - 1]);

    let mut emb = dag.emb.clone();
    let mut real = dag.real.clone();
    let twin: Vec<u32> = (0..len).map(|_| emb.add_vertex()).collect();
    // doubled edges of Q: twin_edge[k] joins twin[k] -> twin[k+1]
    let twin_edge: Vec<u32> = (0..len.saturating_sub(1))
        .map(|k| {
            let e = emb.add_edge_unplaced(twin[k], twin[k + 1]);
            real.push(true);
            e
        })
        .collect();
    let mut rots: Vec<(u32, Vec<Dart>)> = Vec::new();
    if len == 1 {
        let rot = emb0.rotation(qv[0]);
        rots.push((qv[0], arc(rot, w_s, w_t)));
        rots.push((twin[0], arc(rot, w_t, w_s)));
    } else {
        for k in 0..len {
            let v = qv[k];
            let rot = emb0.rotation(v);
            // in-dart (towards u_{k-1}) and out-dart (towards u_{k+1})
            let a = if k > 0 { rev(qd[k - 1]) } else { w_s };
            let b = if k + 1 < len { qd[k] } else { w_t };
            let a2 = if k > 0 { Some(2 * twin_edge[k - 1] + 1) } else { None };
            let b2 = if k + 1 < len { Some(2 * twin_edge[k]) } else { None };
            let mut one = arc(rot, a, b);
            let mut two: Vec<Dart> = arc(rot, b, a);
            if k + 1 < len {
                one.push(b);
                two.remove(0);
                two.insert(0, b2.unwrap());
            }
            if k > 0 {
                // `a` leads `one` and is its own first copy; the twin copy ends `two`
                two.push(a2.unwrap());
            }
            rots.push((v, one));
            rots.push((twin[k], two));
        }
    }
    for (v, r) in rots {
        emb.set_rotation(v, r);
    }
    let mut starts: Vec<Dart> = Vec::new();
    for (h, walk) in dag.holes.iter().enumerate() {
        if h == hj {
            continue;
        }
        starts.push(if h == hi { w_s } else { walk[0] });
    }
    debug_assert!(emb.is_planar_embedding(), "cut broke the embedding");

    // reach summaries of the boundary into Q
    let mut first = vec![NONE; n];
    let mut last = vec![NONE; n];
    let mut at = vec![NONE; n];
    for (k, &v) in qv.iter().enumerate() {
        at[v as usize] = k as u32;
    }
    for b in 0..n {
        if !dag.boundary[b] {
            continue;
        }
        let fw = dag.reach(b as u32, true);
        let bw = dag.reach(b as u32, false);
        for (k, &v) in qv.iter().enumerate() {
            if fw.contains(v as usize) && first[b] == NONE {
                first[b] = k as u32;
            }
            if bw.contains(v as usize) {
                last[b] = k as u32;
            }
        }
        *counter += (2 * (n + dag.emb.edge_slots())) as u64;
    }
    let tables = dag
        .weights
        .iter()
        .zip(ops)
        .map(|(w, &op)| {
            let vals: Vec<Option<i64>> = qv
                .iter()
                .enumerate()
                .map(|(k, &v)| if k == 0 || k + 1 == len { None } else { w[v as usize] })
                .collect();
            RangeTable::new(op, &vals)
        })
        .collect();

    let m = emb.num_vertices();
    let mut boundary = vec![false; m];
    for b in 0..n {
        if dag.boundary[b] && b as u32 != qv[0] && b as u32 != qv[len - 1] {
            boundary[b] = true;
        }
        for k in [first[b], last[b]] {
            if dag.boundary[b] && k != NONE {
                boundary[qv[k as usize] as usize] = true;
                boundary[twin[k as usize] as usize] = true;
            }
        }
    }
    let weights = dag
        .weights
        .iter()
        .map(|w| {
            let mut w = w.clone();
            w.resize(m, None);
            w
        })
        .collect();
    let child = PlaneDag::new(emb, real, &starts, boundary, weights);
    debug_assert!(child.is_acyclic());
    let merged = if hj < hi { hi - 1 } else { hi };
    debug_assert!(child.holes[merged].contains(&w_t), "holes did not merge");
    let cut = Cut {
        q: qv,
        twin,
        first,
        last,
        tables,
        child: child.clone(),
    };
    Some((cut, child))
}
