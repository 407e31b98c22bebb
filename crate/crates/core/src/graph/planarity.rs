//! Planarity testing with embedding output.
//!
//! Blocks (biconnected components) of the underlying simple graph are
//! embedded by the Demoucron–Malgrange–Pertuiset path-addition method and
//! glued at cut vertices by concatenating rotations. Parallel edges are
//! placed next to their representative afterwards.

use std::collections::HashMap;

use super::embedding::{Dart, Embedding};
use crate::error::{Error, Result};

/// Embeds the undirected graph underlying `edges` on vertices `0..n`.
/// Edge ids of the result equal indices into `edges`.
pub fn planarity_embed(n: usize, edges: &[(u32, u32)]) -> Result<Embedding> {
    for &(u, v) in edges {
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        if u as usize >= n || v as usize >= n {
            return Err(Error::UnknownVertex(u.max(v)));
        }
    }
    // quick rejection by the simple-graph edge bound
    let mut rep: HashMap<(u32, u32), u32> = HashMap::new();
    let mut parallels: Vec<(u32, u32)> = Vec::new();
    let mut simple: Vec<u32> = Vec::new();
    for (i, &(u, v)) in edges.iter().enumerate() {
        let key = (u.min(v), u.max(v));
        match rep.get(&key) {
            Some(&r) => parallels.push((i as u32, r)),
            None => {
                rep.insert(key, i as u32);
                simple.push(i as u32);
            }
        }
    }
    if n >= 3 && simple.len() > 3 * n - 6 {
        return Err(Error::NonPlanar);
    }

    let mut adj: Vec<Vec<(u32, u32)>> = vec![Vec::new(); n];
    for &e in &simple {
        let (u, v) = edges[e as usize];
        adj[u as usize].push((v, e));
        adj[v as usize].push((u, e));
    }

    // rotation per vertex, as darts of the final embedding
    let mut rot: Vec<Vec<Dart>> = vec![Vec::new(); n];
    let dart_from = |e: u32, from: u32| -> Dart {
        if edges[e as usize].0 == from {
            2 * e
        } else {
            2 * e + 1
        }
    };
    for block in biconnected_blocks(n, &adj) {
        if block.len() == 1 {
            let e = block[0];
            let (u, v) = edges[e as usize];
            rot[u as usize].push(dart_from(e, u));
            rot[v as usize].push(dart_from(e, v));
            continue;
        }
        let local = embed_block(&block, edges)?;
        for (v, darts) in local {
            rot[v as usize].extend(darts.iter().map(|&(e, from)| dart_from(e, from)));
        }
    }

    let ends: Vec<[u32; 2]> = edges.iter().map(|&(u, v)| [u, v]).collect();
    let mut alive = vec![false; edges.len()];
    for &e in &simple {
        alive[e as usize] = true;
    }
    let mut emb = Embedding::from_rotations(ends.clone(), alive, rot);
    for (e, r) in parallels {
        let (u, v) = edges[e as usize];
        let du = dart_from(r, u);
        let dv = dart_from(r, v);
        // copy sits right after the representative at u and right before it at v
        let mut ru = emb.rotation(u).to_vec();
        let pu = ru.iter().position(|&d| d == du).unwrap();
        ru.insert(pu + 1, 2 * e);
        let mut rv = emb.rotation(v).to_vec();
        let pv = rv.iter().position(|&d| d == dv).unwrap();
        rv.insert(pv, 2 * e + 1);
        let mut all_rot: Vec<Vec<Dart>> = (0..n as u32).map(|x| emb.rotation(x).to_vec()).collect();
        all_rot[u as usize] = ru;
        all_rot[v as usize] = rv;
        let mut alive: Vec<bool> = (0..edges.len() as u32).map(|x| emb.is_alive(x)).collect();
        alive[e as usize] = true;
        emb = Embedding::from_rotations(ends.clone(), alive, all_rot);
    }
    debug_assert!(emb.is_planar_embedding());
    Ok(emb)
}

/// Returns true iff the underlying undirected graph is planar.
pub fn is_planar(n: usize, edges: &[(u32, u32)]) -> bool {
    planarity_embed(n, edges).is_ok()
}

/// Edge sets of the biconnected components of a simple graph.
fn biconnected_blocks(n: usize, adj: &[Vec<(u32, u32)>]) -> Vec<Vec<u32>> {
    const UNSEEN: u32 = u32::MAX;
    let mut disc = vec![UNSEEN; n];
    let mut low = vec![0u32; n];
    let mut time = 0u32;
    let mut blocks = Vec::new();
    let mut estack: Vec<u32> = Vec::new();
    // frame: (vertex, parent edge, next adjacency index)
    let mut stack: Vec<(u32, u32, usize)> = Vec::new();
    for root in 0..n {
        if disc[root] != UNSEEN {
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        stack.push((root as u32, UNSEEN, 0));
        while let Some(&mut (v, pe, ref mut idx)) = stack.last_mut() {
            if *idx < adj[v as usize].len() {
                let (w, e) = adj[v as usize][*idx];
                *idx += 1;
                if e == pe {
                    continue;
                }
                if disc[w as usize] == UNSEEN {
                    disc[w as usize] = time;
                    low[w as usize] = time;
                    time += 1;
                    estack.push(e);
                    stack.push((w, e, 0));
                } else if disc[w as usize] < disc[v as usize] {
                    estack.push(e);
                    low[v as usize] = low[v as usize].min(disc[w as usize]);
                }
            } else {
                stack.pop();
                if let Some(&(p, _, _)) = stack.last() {
                    low[p as usize] = low[p as usize].min(low[v as usize]);
                    if low[v as usize] >= disc[p as usize] {
                        let mut block = Vec::new();
                        while let Some(e) = estack.pop() {
                            block.push(e);
                            if e == pe {
                                break;
                            }
                        }
                        blocks.push(block);
                    }
                }
            }
        }
    }
    blocks
}

/// Embeds one biconnected block; returns per-vertex ccw rotation as
/// `(edge id, from-vertex)` darts.
fn embed_block(block: &[u32], edges: &[(u32, u32)]) -> Result<Vec<(u32, Vec<(u32, u32)>)>> {
    // local numbering
    let mut id: HashMap<u32, u32> = HashMap::new();
    let mut verts: Vec<u32> = Vec::new();
    for &e in block {
        let (u, v) = edges[e as usize];
        for x in [u, v] {
            id.entry(x).or_insert_with(|| {
                verts.push(x);
                (verts.len() - 1) as u32
            });
        }
    }
    let k = verts.len();
    if k >= 3 && block.len() > 3 * k - 6 {
        return Err(Error::NonPlanar);
    }
    let mut adj: Vec<Vec<(u32, u32)>> = vec![Vec::new(); k];
    let mut local_edges: Vec<(u32, u32)> = Vec::new();
    let mut edge_key: HashMap<(u32, u32), u32> = HashMap::new();
    for &e in block {
        let (u, v) = edges[e as usize];
        let (a, b) = (id[&u], id[&v]);
        let le = local_edges.len() as u32;
        local_edges.push((a, b));
        adj[a as usize].push((b, le));
        adj[b as usize].push((a, le));
        edge_key.insert((a.min(b), a.max(b)), e);
    }

    let faces = dmp(k, &adj, &local_edges)?;

    // rotation from oriented faces: for consecutive (x, y, z), next(y->x) = y->z
    let mut succ: HashMap<(u32, u32), u32> = HashMap::new();
    for f in &faces {
        let m = f.len();
        for i in 0..m {
            let x = f[i];
            let y = f[(i + 1) % m];
            let z = f[(i + 2) % m];
            succ.insert((y, x), z);
        }
    }
    let mut out = Vec::with_capacity(k);
    for y in 0..k as u32 {
        let start = adj[y as usize][0].0;
        let mut cyc = vec![start];
        let mut cur = succ[&(y, start)];
        while cur != start {
            cyc.push(cur);
            cur = succ[&(y, cur)];
        }
        if cyc.len() != adj[y as usize].len() {
            return Err(Error::NonPlanar);
        }
        let g = verts[y as usize];
        let darts = cyc
            .into_iter()
            .map(|x| (edge_key[&(x.min(y), x.max(y))], g))
            .collect();
        out.push((g, darts));
    }
    Ok(out)
}

/// Path addition on a biconnected simple graph. Returns oriented face cycles.
fn dmp(k: usize, adj: &[Vec<(u32, u32)>], edges: &[(u32, u32)]) -> Result<Vec<Vec<u32>>> {
    let m = edges.len();
    let mut in_h = vec![false; k];
    let mut e_in_h = vec![false; m];
    let cycle = find_cycle(k, adj);
    for i in 0..cycle.len() {
        let a = cycle[i];
        let b = cycle[(i + 1) % cycle.len()];
        in_h[a as usize] = true;
        let e = adj[a as usize].iter().find(|&&(w, _)| w == b).unwrap().1;
        e_in_h[e as usize] = true;
    }
    let mut rev_cycle = cycle.clone();
    rev_cycle.reverse();
    let mut faces: Vec<Vec<u32>> = vec![cycle, rev_cycle];
    let mut embedded = e_in_h.iter().filter(|&&x| x).count();

    while embedded < m {
        // fragments
        let mut frags: Vec<(Vec<u32>, Vec<u32>)> = Vec::new(); // (attachments, path when chord)
        for (e, &(a, b)) in edges.iter().enumerate() {
            if !e_in_h[e] && in_h[a as usize] && in_h[b as usize] {
                frags.push((vec![a, b], vec![a, b]));
            }
        }
        let mut comp = vec![u32::MAX; k];
        let mut comp_frag: Vec<usize> = Vec::new();
        for s in 0..k {
            if in_h[s] || comp[s] != u32::MAX {
                continue;
            }
            let cid = comp_frag.len() as u32;
            comp[s] = cid;
            let mut stack = vec![s as u32];
            let mut attach = Vec::new();
            while let Some(v) = stack.pop() {
                for &(w, _) in &adj[v as usize] {
                    if in_h[w as usize] {
                        attach.push(w);
                    } else if comp[w as usize] == u32::MAX {
                        comp[w as usize] = cid;
                        stack.push(w);
                    }
                }
            }
            attach.sort_unstable();
            attach.dedup();
            comp_frag.push(frags.len());
            frags.push((attach, Vec::new()));
        }

        let mut faces_at: Vec<Vec<u32>> = vec![Vec::new(); k];
        for (fi, f) in faces.iter().enumerate() {
            for &v in f {
                faces_at[v as usize].push(fi as u32);
            }
        }
        for l in faces_at.iter_mut() {
            l.sort_unstable();
            l.dedup();
        }
        let mut best: Option<(usize, u32, usize)> = None; // (frag, face, count)
        for (fi, (attach, _)) in frags.iter().enumerate() {
            let pivot = *attach
                .iter()
                .min_by_key(|&&a| faces_at[a as usize].len())
                .expect("fragment without attachments");
            let mut count = 0;
            let mut first = u32::MAX;
            for &f in &faces_at[pivot as usize] {
                if attach.iter().all(|&a| faces_at[a as usize].binary_search(&f).is_ok()) {
                    if count == 0 {
                        first = f;
                    }
                    count += 1;
                }
            }
            if count == 0 {
                return Err(Error::NonPlanar);
            }
            if best.is_none_or(|(_, _, c)| count < c) {
                best = Some((fi, first, count));
            }
            if count == 1 {
                break;
            }
        }
        let (fi, face, _) = best.unwrap();
        let (attach, chord) = &frags[fi];
        let path: Vec<u32> = if !chord.is_empty() {
            chord.clone()
        } else {
            let cid = comp_frag.iter().position(|&x| x == fi).unwrap() as u32;
            fragment_path(adj, &comp, cid, &in_h, attach)
        };
        // embed path into face
        let f = faces[face as usize].clone();
        let a = path[0];
        let b = *path.last().unwrap();
        let i = f.iter().position(|&x| x == a).unwrap();
        let j = f.iter().position(|&x| x == b).unwrap();
        let len = f.len();
        let mut f1 = Vec::new();
        let mut t = i;
        loop {
            f1.push(f[t]);
            if t == j {
                break;
            }
            t = (t + 1) % len;
        }
        f1.extend(path[1..path.len() - 1].iter().rev());
        let mut f2 = Vec::new();
        let mut t = j;
        loop {
            f2.push(f[t]);
            if t == i {
                break;
            }
            t = (t + 1) % len;
        }
        f2.extend(path[1..path.len() - 1].iter());
        faces[face as usize] = f1;
        faces.push(f2);
        for w in path.windows(2) {
            let e = adj[w[0] as usize].iter().find(|&&(x, _)| x == w[1]).unwrap().1;
            if !e_in_h[e as usize] {
                e_in_h[e as usize] = true;
                embedded += 1;
            }
        }
        for &v in &path {
            in_h[v as usize] = true;
        }
    }
    Ok(faces)
}

fn find_cycle(k: usize, adj: &[Vec<(u32, u32)>]) -> Vec<u32> {
    let mut parent = vec![u32::MAX; k];
    let mut depth = vec![u32::MAX; k];
    let mut stack: Vec<(u32, usize)> = vec![(0, 0)];
    depth[0] = 0;
    while let Some(&mut (v, ref mut idx)) = stack.last_mut() {
        if *idx >= adj[v as usize].len() {
            stack.pop();
            continue;
        }
        let (w, _) = adj[v as usize][*idx];
        *idx += 1;
        if w == parent[v as usize] {
            continue;
        }
        if depth[w as usize] == u32::MAX {
            depth[w as usize] = depth[v as usize] + 1;
            parent[w as usize] = v;
            stack.push((w, 0));
        } else if depth[w as usize] < depth[v as usize] {
            let mut cyc = vec![v];
            let mut x = v;
            while x != w {
                x = parent[x as usize];
                cyc.push(x);
            }
            return cyc;
        }
    }
    unreachable!("biconnected block without a cycle")
}

/// A path through fragment component `cid` between two distinct attachments.
fn fragment_path(adj: &[Vec<(u32, u32)>], comp: &[u32], cid: u32, in_h: &[bool], attach: &[u32]) -> Vec<u32> {
    let a = attach[0];
    let k = adj.len();
    let mut prev = vec![u32::MAX; k];
    let mut queue = std::collections::VecDeque::new();
    for &(w, _) in &adj[a as usize] {
        if !in_h[w as usize] && comp[w as usize] == cid && prev[w as usize] == u32::MAX {
            prev[w as usize] = a;
            queue.push_back(w);
        }
    }
    while let Some(v) = queue.pop_front() {
        for &(w, _) in &adj[v as usize] {
            if in_h[w as usize] {
                if w != a {
                    let mut path = vec![w, v];
                    let mut x = v;
                    while prev[x as usize] != a {
                        x = prev[x as usize];
                        path.push(x);
                    }
                    path.push(a);
                    path.reverse();
                    return path;
                }
            } else if prev[w as usize] == u32::MAX {
                prev[w as usize] = v;
                queue.push_back(w);
            }
        }
    }
    unreachable!("fragment of a biconnected graph has two attachments")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(n: u32) -> Vec<(u32, u32)> {
        let mut e = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                e.push((i, j));
            }
        }
        e
    }

    #[test]
    fn k4_embeds_with_four_faces() {
        let emb = planarity_embed(4, &complete(4)).unwrap();
        assert!(emb.is_planar_embedding());
        assert_eq!(emb.faces().len(), 4);
    }

    #[test]
    fn k5_and_k33_fail() {
        assert_eq!(planarity_embed(5, &complete(5)).unwrap_err(), Error::NonPlanar);
        let mut k33 = Vec::new();
        for i in 0..3 {
            for j in 3..6 {
                k33.push((i, j));
            }
        }
        assert!(!is_planar(6, &k33));
    }

    #[test]
    fn parallel_edges_and_trees() {
        let edges = vec![(0, 1), (1, 0), (1, 2), (0, 1), (3, 2)];
        let emb = planarity_embed(5, &edges).unwrap();
        assert!(emb.is_planar_embedding());
        // tree part has one face, each extra parallel copy adds one
        assert_eq!(emb.faces().len(), 3);
    }

    #[test]
    fn self_loop_rejected() {
        assert_eq!(planarity_embed(2, &[(1, 1)]).unwrap_err(), Error::SelfLoop(1));
    }

    #[test]
    fn k5_minus_edge_is_planar() {
        let mut e = complete(5);
        e.pop();
        assert!(is_planar(5, &e));
    }
}
