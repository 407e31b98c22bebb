//! Contraction of the strongly connected components of a piece.

use crate::graph::embedding::{Dart, Embedding, NONE};
use crate::graph::scc::tarjan_scc;
use crate::piece::face_walk;

use super::agg::Semigroup;
use super::plane::PlaneDag;

/// Acyclic proxy of a piece: every SCC becomes one vertex.
#[derive(Clone, Debug)]
pub struct Proxy {
    pub dag: PlaneDag,
    /// Piece vertex to proxy vertex.
    pub of: Vec<u32>,
    /// Non-boundary members of each proxy vertex.
    pub members: Vec<Vec<u32>>,
}

/// `real` flags directed edges; `boundary` marks ∂P; `vertex_real` marks
/// the vertices that may be reported; `weights[c][v]` are channel values.
pub fn build_proxy(
    emb: &Embedding,
    real: &[bool],
    hole_starts: &[Dart],
    boundary: &[bool],
    vertex_real: &[bool],
    ops: &[Semigroup],
    weights: &[Vec<Option<i64>>],
) -> Proxy {
    let n = emb.num_vertices();
    let mut out: Vec<Vec<u32>> = vec![Vec::new(); n];
    for e in emb.live_edges() {
        if real[e as usize] {
            let [t, h] = emb.ends(e);
            out[t as usize].push(h);
        }
    }
    let part = tarjan_scc(n, |v| out[v as usize].iter().copied());
    let comp = &part.comp;

    let walks: Vec<Vec<Dart>> = hole_starts.iter().map(|&d| face_walk(emb, d)).collect();
    let mut g = emb.clone();
    // spanning forest of every SCC over its internal real edges
    let mut seen = vec![false; n];
    let mut merged = vec![false; n];
    let mut tree = Vec::new();
    for s in 0..n as u32 {
        if seen[s as usize] || part.members[comp[s as usize] as usize].len() < 2 {
            continue;
        }
        seen[s as usize] = true;
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            for &d in emb.rotation(v) {
                let e = d >> 1;
                if !real[e as usize] {
                    continue;
                }
                let w = emb.head(d);
                if comp[w as usize] == comp[v as usize] && !seen[w as usize] {
                    seen[w as usize] = true;
                    tree.push(e);
                    stack.push(w);
                }
            }
        }
    }
    for e in tree {
        let gone = g.contract_edge(e);
        merged[gone as usize] = true;
    }
    let map = g.compact_vertices(&merged);
    let k = g.num_vertices();

    let mut of = vec![NONE; n];
    let mut rep = vec![NONE; part.count()];
    for v in 0..n {
        if !merged[v] {
            rep[comp[v] as usize] = map[v];
        }
    }
    for v in 0..n {
        of[v] = rep[comp[v] as usize];
    }
    let mut members = vec![Vec::new(); k];
    let mut pboundary = vec![false; k];
    for v in 0..n {
        let p = of[v] as usize;
        if boundary[v] {
            pboundary[p] = true;
        } else if vertex_real[v] {
            members[p].push(v as u32);
        }
    }
    let mut pweights = vec![vec![None; k]; ops.len()];
    for (c, op) in ops.iter().enumerate() {
        for (p, ms) in members.iter().enumerate() {
            pweights[c][p] = op.fold(ms.iter().map(|&v| weights[c][v as usize]));
        }
    }
    let mut preal = real.to_vec();
    for e in 0..g.edge_slots() as u32 {
        if g.is_alive(e) {
            let [t, h] = g.ends(e);
            if t == h {
                preal[e as usize] = false;
            }
        }
    }
    let starts: Vec<Dart> = walks
        .iter()
        .map(|w| {
            *w.iter()
                .find(|&&d| g.is_alive(d >> 1))
                .expect("hole walk keeps a live dart")
        })
        .collect();
    let dag = PlaneDag::new(g, preal, &starts, pboundary, pweights);
    debug_assert!(dag.is_acyclic());
    Proxy { dag, of, members }
}
