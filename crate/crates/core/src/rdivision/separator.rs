//! Fundamental-cycle separators on a piece whose holes are temporarily
//! filled by star vertices.

use std::collections::VecDeque;

use super::supergraph::add_face_star;
use crate::graph::embedding::{rev, Dart, Embedding, NONE};

/// Splits the live edges of `emb` by a fundamental cycle. `weight` and
/// `cost` are per vertex of `emb`; `hole_weight` is given to each hole star.
/// Each side is balanced with respect to `weight` as far as possible, cheap in
/// `cost` otherwise. Returns the side of every edge slot (`true` = inside) or
/// `None` if no cycle splits the edges into two nonempty parts.
pub fn cycle_split(
    emb: &Embedding,
    holes: &[Vec<Dart>],
    weight: &[u64],
    cost: &[u32],
    hole_weight: u64,
) -> Option<Vec<bool>> {
    let mut h = emb.clone();
    let k0 = emb.num_vertices();
    let base_slots = emb.edge_slots();
    let mut w = weight.to_vec();
    let mut c = cost.to_vec();
    for walk in holes {
        add_face_star(&mut h, walk);
        w.push(hole_weight);
        c.push(0);
    }
    let k = h.num_vertices();
    if k < 3 {
        return None;
    }
    let root = if k > k0 { k0 as u32 } else { 0 };

    // BFS tree
    let mut parent_dart = vec![NONE; k];
    let mut depth = vec![u32::MAX; k];
    let mut tree_edge = vec![false; h.edge_slots()];
    depth[root as usize] = 0;
    let mut q = VecDeque::from([root]);
    while let Some(v) = q.pop_front() {
        for &d in h.rotation(v) {
            let x = h.head(d);
            if depth[x as usize] == u32::MAX {
                depth[x as usize] = depth[v as usize] + 1;
                parent_dart[x as usize] = rev(d);
                tree_edge[(d >> 1) as usize] = true;
                q.push_back(x);
            }
        }
    }
    if depth.iter().any(|&d| d == u32::MAX) {
        return None;
    }

    // dual tree over the non-tree edges
    let faces = h.faces();
    let nf = faces.len();
    let mut dual: Vec<Vec<(u32, u32)>> = vec![Vec::new(); nf];
    for e in h.live_edges() {
        if tree_edge[e as usize] {
            continue;
        }
        let f1 = faces.face_of[(2 * e) as usize];
        let f2 = faces.face_of[(2 * e + 1) as usize];
        dual[f1 as usize].push((f2, e));
        dual[f2 as usize].push((f1, e));
    }
    let mut fparent_edge = vec![NONE; nf];
    let mut tin = vec![u32::MAX; nf];
    let mut tout = vec![0u32; nf];
    let mut order = Vec::with_capacity(nf);
    let mut stack: Vec<(u32, usize)> = vec![(0, 0)];
    tin[0] = 0;
    order.push(0u32);
    let mut clock = 1u32;
    while let Some(&mut (f, ref mut i)) = stack.last_mut() {
        if *i < dual[f as usize].len() {
            let (g, e) = dual[f as usize][*i];
            *i += 1;
            if tin[g as usize] == u32::MAX {
                tin[g as usize] = clock;
                clock += 1;
                fparent_edge[g as usize] = e;
                order.push(g);
                stack.push((g, 0));
            }
        } else {
            tout[f as usize] = clock;
            stack.pop();
        }
    }
    if order.len() != nf {
        return None;
    }

    // assign each vertex's weight to the face of its first dart
    let assign: Vec<u32> = (0..k as u32)
        .map(|v| faces.face_of[h.rotation(v)[0] as usize])
        .collect();
    let mut sub = vec![0u64; nf];
    for v in 0..k {
        sub[assign[v] as usize] += w[v];
    }
    for &f in order.iter().rev() {
        let pe = fparent_edge[f as usize];
        if pe == NONE {
            continue;
        }
        let [a, b] = [faces.face_of[(2 * pe) as usize], faces.face_of[(2 * pe + 1) as usize]];
        let p = if a == f { b } else { a };
        sub[p as usize] += sub[f as usize];
    }
    let total: u64 = w.iter().sum();

    let mut best: Option<(bool, u64, u64, u32)> = None; // (unbalanced, cost, max side, child face)
    let mut stamp = vec![u32::MAX; k];
    for (idx, &f) in order.iter().enumerate() {
        let e = fparent_edge[f as usize];
        if e == NONE {
            continue;
        }
        let [a, b] = h.ends(e);
        let mut cyc = Vec::new();
        let (mut x, mut y) = (a, b);
        while depth[x as usize] > depth[y as usize] {
            cyc.push(x);
            x = h.head(parent_dart[x as usize]);
        }
        while depth[y as usize] > depth[x as usize] {
            cyc.push(y);
            y = h.head(parent_dart[y as usize]);
        }
        while x != y {
            cyc.push(x);
            cyc.push(y);
            x = h.head(parent_dart[x as usize]);
            y = h.head(parent_dart[y as usize]);
        }
        cyc.push(x);
        let mut cw = 0u64;
        let mut cc = 0u64;
        let mut corr = 0u64;
        for &v in &cyc {
            if stamp[v as usize] == idx as u32 {
                continue;
            }
            stamp[v as usize] = idx as u32;
            cw += w[v as usize];
            cc += c[v as usize] as u64;
            let t = tin[assign[v as usize] as usize];
            if tin[f as usize] <= t && t < tout[f as usize] {
                corr += w[v as usize];
            }
        }
        let inside = sub[f as usize] - corr;
        let outside = total - inside - cw;
        let mx = inside.max(outside);
        let unbalanced = 3 * mx > 2 * total;
        let cand = (unbalanced, if unbalanced { mx } else { cc }, if unbalanced { cc } else { mx }, f);
        if best.is_none_or(|bst| (cand.0, cand.1, cand.2) < (bst.0, bst.1, bst.2)) {
            best = Some(cand);
        }
    }
    let (_, _, _, f) = best?;
    let lo = tin[f as usize];
    let hi = tout[f as usize];
    let inside_face = |g: u32| (lo..hi).contains(&tin[g as usize]);
    let mut side = vec![false; base_slots];
    let (mut n_in, mut n_out) = (0, 0);
    for e in emb.live_edges() {
        let s = inside_face(faces.face_of[(2 * e) as usize]) || inside_face(faces.face_of[(2 * e + 1) as usize]);
        side[e as usize] = s;
        if s {
            n_in += 1;
        } else {
            n_out += 1;
        }
    }
    (n_in > 0 && n_out > 0).then_some(side)
}

/// Splits live edges into the first half in BFS discovery order and the rest.
pub fn bfs_half_split(emb: &Embedding) -> Vec<bool> {
    let k = emb.num_vertices();
    let mut seen_v = vec![false; k];
    let mut seen_e = vec![false; emb.edge_slots()];
    let mut order = Vec::new();
    for s in 0..k as u32 {
        if seen_v[s as usize] {
            continue;
        }
        seen_v[s as usize] = true;
        let mut q = VecDeque::from([s]);
        while let Some(v) = q.pop_front() {
            for &d in emb.rotation(v) {
                let e = d >> 1;
                if !seen_e[e as usize] {
                    seen_e[e as usize] = true;
                    order.push(e);
                }
                let x = emb.head(d);
                if !seen_v[x as usize] {
                    seen_v[x as usize] = true;
                    q.push_back(x);
                }
            }
        }
    }
    let mut side = vec![false; emb.edge_slots()];
    for &e in &order[..order.len().div_ceil(2)] {
        side[e as usize] = true;
    }
    side
}
