//! Existential reachability among the vertices of one face.
//!
//! Vertices are identified by their index in the face order. The partition
//! splits contiguous index ranges in halves; for a half `A` and the other
//! half `B`, each source in `A` reaches an interval of the reachable part of
//! `B` in face order.

use std::collections::{BTreeSet, HashMap};

#[derive(Clone, Debug, Default)]
pub struct ReachPartition {
    /// `T_i` in its order.
    pub targets: Vec<Vec<u32>>,
    /// Per vertex: `(pair, l, r)` for every pair listing it as a source.
    pub sources_of: Vec<Vec<(u32, u32, u32)>>,
    /// Per vertex: `(pair, position)` for every pair listing it as a target.
    pub targets_of: Vec<Vec<(u32, u32)>>,
}

impl ReachPartition {
    /// `reaches(i, j)` tells whether face vertex `i` reaches face vertex `j`.
    pub fn build(m: usize, reaches: impl Fn(usize, usize) -> bool) -> Self {
        let mut rp = ReachPartition {
            targets: Vec::new(),
            sources_of: vec![Vec::new(); m],
            targets_of: vec![Vec::new(); m],
        };
        let mut stack = vec![(0usize, m)];
        while let Some((lo, hi)) = stack.pop() {
            if hi - lo < 2 {
                continue;
            }
            let mid = lo + (hi - lo).div_ceil(2);
            rp.add_pair(lo..mid, mid..hi, &reaches);
            rp.add_pair(mid..hi, lo..mid, &reaches);
            stack.push((lo, mid));
            stack.push((mid, hi));
        }
        rp
    }

    fn add_pair(
        &mut self,
        from: std::ops::Range<usize>,
        to: std::ops::Range<usize>,
        reaches: &impl Fn(usize, usize) -> bool,
    ) {
        let t: Vec<u32> = to
            .clone()
            .filter(|&j| from.clone().any(|i| reaches(i, j)))
            .map(|j| j as u32)
            .collect();
        if t.is_empty() {
            return;
        }
        let id = self.targets.len() as u32;
        for i in from {
            let hit: Vec<u32> = (0..t.len() as u32).filter(|&p| reaches(i, t[p as usize] as usize)).collect();
            if let (Some(&l), Some(&r)) = (hit.first(), hit.last()) {
                debug_assert_eq!((r - l + 1) as usize, hit.len(), "reachable targets are not contiguous");
                self.sources_of[i].push((id, l, r));
            }
        }
        for (p, &j) in t.iter().enumerate() {
            self.targets_of[j as usize].push((id, p as u32));
        }
        self.targets.push(t);
    }

    /// Whether `(i, j)` is covered by some pair through the interval test.
    pub fn covers(&self, i: usize, j: usize) -> bool {
        self.sources_of[i].iter().any(|&(p, l, r)| {
            self.targets_of[j]
                .iter()
                .any(|&(q, pos)| q == p && l <= pos && pos <= r)
        })
    }
}

/// The set `Z` over a reach partition, private to one query.
#[derive(Debug)]
pub struct Erds<'a> {
    rp: &'a ReachPartition,
    sets: HashMap<u32, BTreeSet<u32>>,
}

impl<'a> Erds<'a> {
    pub fn new(rp: &'a ReachPartition) -> Self {
        Erds {
            rp,
            sets: HashMap::new(),
        }
    }

    pub fn insert(&mut self, z: usize) {
        for &(p, pos) in &self.rp.targets_of[z] {
            self.sets.entry(p).or_default().insert(pos);
        }
    }

    pub fn delete(&mut self, z: usize) {
        for &(p, pos) in &self.rp.targets_of[z] {
            if let Some(s) = self.sets.get_mut(&p) {
                s.remove(&pos);
            }
        }
    }

    /// Some member of `Z` that `v` reaches.
    pub fn query_any(&self, v: usize) -> Option<usize> {
        for &(p, l, r) in &self.rp.sources_of[v] {
            if let Some(s) = self.sets.get(&p) {
                if let Some(&pos) = s.range(l..=r).next() {
                    return Some(self.rp.targets[p as usize][pos as usize] as usize);
                }
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn singleton_has_no_pairs() {
        let rp = ReachPartition::build(1, |_, _| true);
        assert!(rp.targets.is_empty());
    }

    #[test]
    fn example_pairs_are_covered_exactly() {
        // 1->3, 1->4, 2->4 with face order 1,2,3,4
        let edges = [(0, 2), (0, 3), (1, 3)];
        let reach = |i: usize, j: usize| edges.contains(&(i, j));
        let rp = ReachPartition::build(4, reach);
        for i in 0..4 {
            for j in 0..4 {
                if i != j {
                    assert_eq!(rp.covers(i, j), reach(i, j), "{i} {j}");
                }
            }
        }
    }

    #[test]
    fn empty_set_answers_none() {
        let rp = ReachPartition::build(3, |i, j| i < j);
        let z = Erds::new(&rp);
        assert_eq!(z.query_any(0), None);
    }

    #[test]
    fn path_finds_last() {
        let rp = ReachPartition::build(3, |i, j| i < j);
        let mut z = Erds::new(&rp);
        z.insert(2);
        assert_eq!(z.query_any(0), Some(2));
        z.delete(2);
        assert_eq!(z.query_any(0), None);
    }
}
