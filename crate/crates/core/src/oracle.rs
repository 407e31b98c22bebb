//! Brute-force references the library is checked against.

use std::collections::HashMap;

use crate::graph::embedding::{rev, Dart, Embedding};
use crate::graph::scc::reach_mask;
use crate::graph::PlanarDigraph;
use crate::piece::PieceGraph;

/// Vertices of the piece that are reachable from `a` and reach `a`.
pub fn path_net(p: &PieceGraph, a: &[u32]) -> Vec<bool> {
    let n = p.num_vertices();
    let f = reach_mask(n, |v| p.out[v as usize].iter().copied(), a.iter().copied());
    let b = reach_mask(n, |v| p.inn[v as usize].iter().copied(), a.iter().copied());
    (0..n).map(|v| f[v] && b[v]).collect()
}

/// Real non-boundary path-net vertices, ascending.
pub fn path_net_interior(p: &PieceGraph, a: &[u32]) -> Vec<u32> {
    path_net(p, a)
        .iter()
        .enumerate()
        .filter(|&(v, &on)| on && !p.is_boundary[v] && p.is_real(v as u32))
        .map(|(v, _)| v as u32)
        .collect()
}

/// Smallest closed superset of `a`: the boundary part of its path net.
pub fn close(p: &PieceGraph, a: &[u32]) -> Vec<u32> {
    path_net(p, a)
        .iter()
        .enumerate()
        .filter(|&(v, &on)| on && p.is_boundary[v])
        .map(|(v, _)| v as u32)
        .collect()
}

/// Vertices strictly inside the closed dart sequence `curve`, by winding
/// number, with the face of `outside` (a dart) taken as winding zero.
/// Returns `None` for vertices on the curve.
pub fn inside_closed_curve(emb: &Embedding, outside: Dart, curve: &[Dart]) -> Vec<Option<bool>> {
    let faces = emb.faces();
    let mut count: HashMap<Dart, i64> = HashMap::new();
    let mut on = vec![false; emb.num_vertices()];
    for &d in curve {
        *count.entry(d).or_default() += 1;
        on[emb.tail(d) as usize] = true;
        on[emb.head(d) as usize] = true;
    }
    let mut wind = vec![None; faces.len()];
    let f0 = faces.face_of[outside as usize] as usize;
    wind[f0] = Some(0i64);
    let mut stack = vec![f0];
    while let Some(f) = stack.pop() {
        let w = wind[f].unwrap();
        for &x in &faces.walks[f] {
            // `f` lies right of `x`; stepping to its left crosses every curve
            // use of `x` one way and of its twin the other way
            let g = faces.face_of[rev(x) as usize] as usize;
            let step = count.get(&x).copied().unwrap_or(0) - count.get(&rev(x)).copied().unwrap_or(0);
            match wind[g] {
                None => {
                    wind[g] = Some(w + step);
                    stack.push(g);
                }
                Some(old) => debug_assert_eq!(old, w + step, "curve is not closed"),
            }
        }
    }
    (0..emb.num_vertices() as u32)
        .map(|v| {
            if on[v as usize] {
                return None;
            }
            let d = *emb.rotation(v).first()?;
            Some(wind[faces.face_of[d as usize] as usize].unwrap_or(0) != 0)
        })
        .collect()
}

/// SCC label of every vertex by Kosaraju's two passes, labels numbered in
/// order of discovery in the second pass. Independent of the library's Tarjan.
pub fn scc_labels(g: &PlanarDigraph) -> Vec<usize> {
    let n = g.num_vertices();
    let out: Vec<Vec<u32>> = (0..n as u32).map(|v| g.out_neighbors(v).collect()).collect();
    let inn: Vec<Vec<u32>> = (0..n as u32).map(|v| g.in_neighbors(v).collect()).collect();
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    for r in 0..n {
        if seen[r] {
            continue;
        }
        seen[r] = true;
        let mut stack = vec![(r, 0usize)];
        while let Some((v, i)) = stack.pop() {
            if let Some(&w) = out[v].get(i) {
                stack.push((v, i + 1));
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    stack.push((w as usize, 0));
                }
            } else {
                order.push(v);
            }
        }
    }
    let mut label = vec![usize::MAX; n];
    let mut next = 0;
    for &r in order.iter().rev() {
        if label[r] != usize::MAX {
            continue;
        }
        label[r] = next;
        let mut stack = vec![r];
        while let Some(v) = stack.pop() {
            for &w in &inn[v] {
                if label[w as usize] == usize::MAX {
                    label[w as usize] = next;
                    stack.push(w as usize);
                }
            }
        }
        next += 1;
    }
    label
}

/// `(count, largest size)` of the SCCs.
pub fn scc_stats(labels: &[usize]) -> (usize, usize) {
    let k = labels.iter().map(|&l| l + 1).max().unwrap_or(0);
    let mut size = vec![0usize; k];
    for &l in labels {
        size[l] += 1;
    }
    (k, size.into_iter().max().unwrap_or(0))
}

/// Members of the SCC of `v`, ascending.
pub fn scc_members(labels: &[usize], v: u32) -> Vec<u32> {
    (0..labels.len() as u32).filter(|&u| labels[u as usize] == labels[v as usize]).collect()
}

/// Vertices reachable from `s`, by breadth-first search.
pub fn reach_count(g: &PlanarDigraph, s: u32) -> usize {
    let n = g.num_vertices();
    let mut seen = vec![false; n];
    seen[s as usize] = true;
    let mut q = std::collections::VecDeque::from([s]);
    let mut c = 1;
    while let Some(v) = q.pop_front() {
        for w in g.out_neighbors(v) {
            if !seen[w as usize] {
                seen[w as usize] = true;
                c += 1;
                q.push_back(w);
            }
        }
    }
    c
}
