//! Perturbed edge weights that make shortest paths in a DAG unique.
//!
//! Edge `i` of an `m`-edge graph weighs `2^m + 2^i`. A path weight is stored
//! as its edge count plus the bitset of its edges; the order is length first,
//! then the bitset read as an unsigned integer.

use std::cmp::Ordering;

use fixedbitset::FixedBitSet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PerturbedWeight {
    pub length: u32,
    pub fingerprint: FixedBitSet,
}

impl PerturbedWeight {
    pub fn zero(m: usize) -> Self {
        PerturbedWeight {
            length: 0,
            fingerprint: FixedBitSet::with_capacity(m),
        }
    }

    pub fn plus_edge(&self, e: usize) -> Self {
        let mut w = self.clone();
        w.length += 1;
        w.fingerprint.insert(e);
        w
    }
}

fn cmp_bits(a: &FixedBitSet, b: &FixedBitSet) -> Ordering {
    let (x, y) = (a.as_slice(), b.as_slice());
    let n = x.len().max(y.len());
    for i in (0..n).rev() {
        let p = x.get(i).copied().unwrap_or(0);
        let q = y.get(i).copied().unwrap_or(0);
        match p.cmp(&q) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    Ordering::Equal
}

impl Ord for PerturbedWeight {
    fn cmp(&self, other: &Self) -> Ordering {
        self.length
            .cmp(&other.length)
            .then_with(|| cmp_bits(&self.fingerprint, &other.fingerprint))
    }
}

impl PartialOrd for PerturbedWeight {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Topological order of the digraph `edges` on `0..n`, or `None` if cyclic.
pub fn topological_order(n: usize, edges: &[(u32, u32)]) -> Option<Vec<u32>> {
    let mut indeg = vec![0u32; n];
    let mut out: Vec<Vec<u32>> = vec![Vec::new(); n];
    for &(u, v) in edges {
        indeg[v as usize] += 1;
        out[u as usize].push(v);
    }
    let mut order: Vec<u32> = (0..n as u32).filter(|&v| indeg[v as usize] == 0).collect();
    let mut i = 0;
    while i < order.len() {
        let v = order[i];
        i += 1;
        for &w in &out[v as usize] {
            indeg[w as usize] -= 1;
            if indeg[w as usize] == 0 {
                order.push(w);
            }
        }
    }
    (order.len() == n).then_some(order)
}

/// Shortest-path tree from `source` in a DAG under perturbed weights.
/// Returns the parent edge id of every reached vertex (`u32::MAX` for the
/// source and for unreached vertices).
pub fn shortest_path_tree(n: usize, edges: &[(u32, u32)], order: &[u32], source: u32) -> Vec<u32> {
    let m = edges.len();
    let mut incoming: Vec<Vec<u32>> = vec![Vec::new(); n];
    for (i, &(_, v)) in edges.iter().enumerate() {
        incoming[v as usize].push(i as u32);
    }
    let mut best: Vec<Option<PerturbedWeight>> = vec![None; n];
    let mut parent = vec![u32::MAX; n];
    best[source as usize] = Some(PerturbedWeight::zero(m));
    let start = order.iter().position(|&v| v == source).expect("source not in order");
    for &w in &order[start + 1..] {
        let mut cand: Option<(PerturbedWeight, u32)> = None;
        for &e in &incoming[w as usize] {
            let p = edges[e as usize].0;
            if let Some(bp) = &best[p as usize] {
                let c = bp.plus_edge(e as usize);
                if cand.as_ref().is_none_or(|(x, _)| c < *x) {
                    cand = Some((c, e));
                }
            }
        }
        if let Some((c, e)) = cand {
            best[w as usize] = Some(c);
            parent[w as usize] = e;
        }
    }
    parent
}

/// The minimum perturbed-weight `u -> v` path in a DAG, as edge ids.
pub fn unique_shortest_path(n: usize, edges: &[(u32, u32)], u: u32, v: u32) -> Option<Vec<u32>> {
    let order = topological_order(n, edges).expect("graph must be acyclic");
    let parent = shortest_path_tree(n, edges, &order, u);
    if u == v {
        return Some(Vec::new());
    }
    if parent[v as usize] == u32::MAX {
        return None;
    }
    let mut path = Vec::new();
    let mut x = v;
    while x != u {
        let e = parent[x as usize];
        path.push(e);
        x = edges[e as usize].0;
    }
    path.reverse();
    Some(path)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn weight_of(path: &[u32], m: usize) -> PerturbedWeight {
        let mut w = PerturbedWeight::zero(m);
        for &e in path {
            w = w.plus_edge(e as usize);
        }
        w
    }

    #[test]
    fn single_edge() {
        assert_eq!(unique_shortest_path(2, &[(0, 1)], 0, 1), Some(vec![0]));
        assert_eq!(unique_shortest_path(2, &[(0, 1)], 1, 0), None);
    }

    #[test]
    fn diamond_picks_smaller_fingerprint() {
        // u=0, a=1, b=2, v=3; path via a uses {0,1}, via b uses {2,3}
        let edges = [(0, 1), (1, 3), (0, 2), (2, 3)];
        let via_a = weight_of(&[0, 1], 4);
        let via_b = weight_of(&[2, 3], 4);
        assert!(via_a < via_b);
        assert_eq!(unique_shortest_path(4, &edges, 0, 3), Some(vec![0, 1]));
        // swap ids so the b-route holds the low bits
        let permuted = [(0, 2), (2, 3), (0, 1), (1, 3)];
        assert_eq!(unique_shortest_path(4, &permuted, 0, 3), Some(vec![0, 1]));
        assert_eq!(permuted[0].1, 2);
    }

    #[test]
    fn length_dominates_fingerprint() {
        let edges = [(0, 1), (1, 2), (0, 2)];
        assert_eq!(unique_shortest_path(3, &edges, 0, 2), Some(vec![2]));
    }

    fn all_paths(n: usize, edges: &[(u32, u32)], u: u32, v: u32) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fn go(x: u32, v: u32, edges: &[(u32, u32)], cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            if x == v {
                out.push(cur.clone());
                return;
            }
            for (i, &(a, b)) in edges.iter().enumerate() {
                if a == x {
                    cur.push(i as u32);
                    go(b, v, edges, cur, out);
                    cur.pop();
                }
            }
        }
        let _ = n;
        go(u, v, edges, &mut cur, &mut out);
        out
    }

    proptest! {
        #[test]
        fn matches_enumeration_and_substructure(
            raw in proptest::collection::vec((0u32..7, 0u32..7), 0..18)
        ) {
            let edges: Vec<(u32, u32)> = raw.into_iter().filter(|&(u, v)| u < v).collect();
            let m = edges.len();
            for u in 0..7u32 {
                for v in 0..7u32 {
                    let got = unique_shortest_path(7, &edges, u, v);
                    let paths = all_paths(7, &edges, u, v);
                    let best = paths.iter().min_by_key(|p| weight_of(p, m)).cloned();
                    prop_assert_eq!(&got, &best);
                    if let Some(p) = got {
                        // every subpath is itself canonical
                        for i in 0..p.len() {
                            for j in i + 1..=p.len() {
                                let a = edges[p[i] as usize].0;
                                let b = edges[p[j - 1] as usize].1;
                                let sub = unique_shortest_path(7, &edges, a, b).unwrap();
                                prop_assert_eq!(&sub[..], &p[i..j]);
                            }
                        }
                    }
                }
            }
        }
    }
}
