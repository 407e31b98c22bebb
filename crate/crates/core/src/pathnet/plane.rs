//! The embedded digraph each path-net level works on.

use std::collections::VecDeque;

use fixedbitset::FixedBitSet;

use crate::graph::embedding::{rev, Dart, Embedding, Faces};
use crate::piece::face_walk;

/// Embedded graph whose `real` edges are directed `ends[0] -> ends[1]`; other
/// edges only shape faces. Holes are faces given by their walks.
#[derive(Clone, Debug)]
pub struct PlaneDag {
    pub emb: Embedding,
    pub real: Vec<bool>,
    pub holes: Vec<Vec<Dart>>,
    pub boundary: Vec<bool>,
    /// `weights[c][v]`
    pub weights: Vec<Vec<Option<i64>>>,
    pub out: Vec<Vec<(u32, u32)>>,
    pub inn: Vec<Vec<(u32, u32)>>,
}

impl PlaneDag {
    /// `hole_starts` holds one dart of every hole walk.
    pub fn new(
        emb: Embedding,
        real: Vec<bool>,
        hole_starts: &[Dart],
        boundary: Vec<bool>,
        weights: Vec<Vec<Option<i64>>>,
    ) -> Self {
        let holes = hole_starts.iter().map(|&d| face_walk(&emb, d)).collect();
        let n = emb.num_vertices();
        let mut out = vec![Vec::new(); n];
        let mut inn = vec![Vec::new(); n];
        for e in emb.live_edges() {
            if real[e as usize] {
                let [t, h] = emb.ends(e);
                out[t as usize].push((h, e));
                inn[h as usize].push((t, e));
            }
        }
        for l in out.iter_mut().chain(inn.iter_mut()) {
            l.sort_unstable();
        }
        PlaneDag {
            emb,
            real,
            holes,
            boundary,
            weights,
            out,
            inn,
        }
    }

    pub fn n(&self) -> usize {
        self.emb.num_vertices()
    }

    /// Vertices of hole `h` in walk order, first occurrence kept.
    pub fn hole_order(&self, h: usize) -> Vec<u32> {
        let mut seen = vec![false; self.n()];
        let mut order = Vec::new();
        for &d in &self.holes[h] {
            let v = self.emb.tail(d);
            if !seen[v as usize] {
                seen[v as usize] = true;
                order.push(v);
            }
        }
        order
    }

    /// Every vertex on some hole walk.
    pub fn on_holes(&self) -> Vec<bool> {
        let mut m = vec![false; self.n()];
        for walk in &self.holes {
            for &d in walk {
                m[self.emb.tail(d) as usize] = true;
            }
        }
        m
    }

    pub fn reach(&self, src: u32, forward: bool) -> FixedBitSet {
        let adj = if forward { &self.out } else { &self.inn };
        let mut seen = FixedBitSet::with_capacity(self.n());
        seen.insert(src as usize);
        let mut stack = vec![src];
        while let Some(v) = stack.pop() {
            for &(w, _) in &adj[v as usize] {
                if !seen.put(w as usize) {
                    stack.push(w);
                }
            }
        }
        seen
    }

    /// Real edges as `(tail, head)` pairs together with their edge slots.
    pub fn real_edges(&self) -> (Vec<(u32, u32)>, Vec<u32>) {
        let mut pairs = Vec::new();
        let mut ids = Vec::new();
        for e in self.emb.live_edges() {
            if self.real[e as usize] {
                let [t, h] = self.emb.ends(e);
                pairs.push((t, h));
                ids.push(e);
            }
        }
        (pairs, ids)
    }

    pub fn is_acyclic(&self) -> bool {
        let (pairs, _) = self.real_edges();
        crate::graph::perturb::topological_order(self.n(), &pairs).is_some()
    }

    /// Vertices strictly left of the directed curve `curve` (a dart sequence
    /// between two vertices of hole `h`), closed up through the hole.
    /// Curve vertices are never included.
    ///
    /// The hole is split into one sector per walk dart, as if a vertex inside
    /// it were joined to every corner; the curve is closed by the two spokes
    /// at the first occurrences of its ends. This keeps lobes of a pinched
    /// hole apart exactly as the closed curve does.
    pub fn left_of(&self, faces: &Faces, h: usize, curve: &[Dart]) -> FixedBitSet {
        let n = self.n();
        let walk = &self.holes[h];
        let hole_face = faces.face_of[walk[0] as usize];
        let nf = faces.len();
        let mut sector_of = std::collections::HashMap::with_capacity(walk.len());
        for (k, &d) in walk.iter().enumerate() {
            sector_of.insert(d, k);
        }
        let node = |d: Dart| -> usize {
            if faces.face_of[d as usize] == hole_face {
                nf + sector_of[&d]
            } else {
                faces.face_of[d as usize] as usize
            }
        };
        let first_at = |v: u32| walk.iter().position(|&d| self.emb.tail(d) == v);
        let mut barrier = FixedBitSet::with_capacity(self.emb.edge_slots());
        let mut on_curve = FixedBitSet::with_capacity(n);
        for &d in curve {
            barrier.insert((d >> 1) as usize);
            on_curve.insert(self.emb.tail(d) as usize);
            on_curve.insert(self.emb.head(d) as usize);
        }
        // spoke k separates sectors k-1 and k
        let mut spoke_cut = vec![false; walk.len()];
        if let (Some(&d0), Some(&d1)) = (curve.first(), curve.last()) {
            for v in [self.emb.tail(d0), self.emb.head(d1)] {
                if let Some(k) = first_at(v) {
                    spoke_cut[k] = true;
                }
            }
        }
        let mut region = FixedBitSet::with_capacity(nf + walk.len());
        let mut q = VecDeque::new();
        let push = |x: usize, region: &mut FixedBitSet, q: &mut VecDeque<usize>| {
            if !region.put(x) {
                q.push_back(x);
            }
        };
        for &d in curve {
            // a face walk keeps its face on the side of `d`; left is the twin's face
            push(node(rev(d)), &mut region, &mut q);
        }
        let w = walk.len();
        while let Some(x) = q.pop_front() {
            if x < nf {
                for &d in &faces.walks[x] {
                    if !barrier.contains((d >> 1) as usize) {
                        push(node(rev(d)), &mut region, &mut q);
                    }
                }
            } else {
                let k = x - nf;
                let d = walk[k];
                if !barrier.contains((d >> 1) as usize) {
                    push(node(rev(d)), &mut region, &mut q);
                }
                if !spoke_cut[k] {
                    push(nf + (k + w - 1) % w, &mut region, &mut q);
                }
                if !spoke_cut[(k + 1) % w] {
                    push(nf + (k + 1) % w, &mut region, &mut q);
                }
            }
        }
        let mut left = FixedBitSet::with_capacity(n);
        for v in 0..n as u32 {
            if on_curve.contains(v as usize) {
                continue;
            }
            if self
                .emb
                .rotation(v)
                .iter()
                .any(|&d| faces.face_of[d as usize] != hole_face && region.contains(faces.face_of[d as usize] as usize))
            {
                left.insert(v as usize);
            }
        }
        left
    }
}
