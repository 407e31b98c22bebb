//! Undirected connectivity under edge insertions and deletions.
//!
//! A spanning forest is kept explicitly. Deleting a forest edge searches the
//! two sides in lockstep, so only the smaller side is scanned for a
//! replacement edge.

use std::collections::{HashMap, HashSet, VecDeque};

#[derive(Clone, Debug)]
pub struct Connectivity {
    /// Multiplicity of each undirected pair `(min, max)`.
    count: HashMap<(u32, u32), u32>,
    adj: Vec<HashSet<u32>>,
    forest: Vec<HashSet<u32>>,
    components: usize,
}

fn key(u: u32, v: u32) -> (u32, u32) {
    (u.min(v), u.max(v))
}

impl Connectivity {
    pub fn new(n: usize) -> Self {
        Connectivity {
            count: HashMap::new(),
            adj: vec![HashSet::new(); n],
            forest: vec![HashSet::new(); n],
            components: n,
        }
    }

    pub fn components(&self) -> usize {
        self.components
    }

    pub fn is_connected(&self) -> bool {
        self.components <= 1
    }

    pub fn insert(&mut self, u: u32, v: u32) {
        if u == v {
            return;
        }
        let c = self.count.entry(key(u, v)).or_insert(0);
        *c += 1;
        if *c > 1 {
            return;
        }
        self.adj[u as usize].insert(v);
        self.adj[v as usize].insert(u);
        if self.split_side(u, v).is_some() {
            self.forest[u as usize].insert(v);
            self.forest[v as usize].insert(u);
            self.components -= 1;
        }
    }

    pub fn delete(&mut self, u: u32, v: u32) {
        let k = key(u, v);
        let Some(c) = self.count.get_mut(&k) else {
            return;
        };
        *c -= 1;
        if *c > 0 {
            return;
        }
        self.count.remove(&k);
        self.adj[u as usize].remove(&v);
        self.adj[v as usize].remove(&u);
        if !self.forest[u as usize].remove(&v) {
            return;
        }
        self.forest[v as usize].remove(&u);
        let side = self.split_side(u, v).expect("forest edge removal splits its tree");
        for &x in &side {
            if let Some(&y) = self.adj[x as usize].iter().find(|y| !side.contains(y)) {
                self.forest[x as usize].insert(y);
                self.forest[y as usize].insert(x);
                return;
            }
        }
        self.components += 1;
    }

    /// `None` if `u` and `v` are in one forest tree, otherwise the vertices
    /// of the smaller of their two trees.
    fn split_side(&self, u: u32, v: u32) -> Option<HashSet<u32>> {
        let mut seen = [HashSet::from([u]), HashSet::from([v])];
        let mut queue = [VecDeque::from([u]), VecDeque::from([v])];
        loop {
            for s in 0..2 {
                let Some(x) = queue[s].pop_front() else {
                    return Some(std::mem::take(&mut seen[s]));
                };
                for &y in &self.forest[x as usize] {
                    if seen[1 - s].contains(&y) {
                        return None;
                    }
                    if seen[s].insert(y) {
                        queue[s].push_back(y);
                    }
                }
            }
        }
    }
}
