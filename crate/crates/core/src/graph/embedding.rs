//! Combinatorial embeddings stored as rotation systems.
//!
//! Edge `e` owns two darts: `2e` leaves `ends[e][0]` and `2e + 1` leaves
//! `ends[e][1]`. Each vertex keeps its darts in counterclockwise order. A face
//! walk follows `next(d) = rot_next(head(d), rev(d))`, so the corner between
//! `rev(d)` and `next(d)` belongs to the face of `d`.

pub type Dart = u32;

pub const NONE: u32 = u32::MAX;

#[inline]
pub fn rev(d: Dart) -> Dart {
    d ^ 1
}

#[inline]
pub fn edge_of(d: Dart) -> u32 {
    d >> 1
}

#[derive(Clone, Debug, Default)]
pub struct Embedding {
    ends: Vec<[u32; 2]>,
    alive: Vec<bool>,
    rot: Vec<Vec<Dart>>,
    pos: Vec<u32>,
}

/// Face decomposition of an embedding.
#[derive(Clone, Debug)]
pub struct Faces {
    pub face_of: Vec<u32>,
    pub walks: Vec<Vec<Dart>>,
}

impl Faces {
    pub fn len(&self) -> usize {
        self.walks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.walks.is_empty()
    }
}

impl Embedding {
    pub fn with_vertices(n: usize) -> Self {
        Embedding {
            ends: Vec::new(),
            alive: Vec::new(),
            rot: vec![Vec::new(); n],
            pos: Vec::new(),
        }
    }

    /// Builds an embedding from explicit rotations. Every live edge must
    /// appear exactly once in the rotation of each endpoint.
    pub fn from_rotations(ends: Vec<[u32; 2]>, alive: Vec<bool>, rot: Vec<Vec<Dart>>) -> Self {
        let mut emb = Embedding {
            pos: vec![NONE; ends.len() * 2],
            ends,
            alive,
            rot,
        };
        emb.reindex_all();
        emb
    }

    fn reindex_all(&mut self) {
        self.pos.iter_mut().for_each(|p| *p = NONE);
        self.pos.resize(self.ends.len() * 2, NONE);
        for v in 0..self.rot.len() {
            self.reindex(v as u32);
        }
    }

    fn reindex(&mut self, v: u32) {
        for (i, &d) in self.rot[v as usize].iter().enumerate() {
            self.pos[d as usize] = i as u32;
        }
    }

    pub fn num_vertices(&self) -> usize {
        self.rot.len()
    }

    /// Number of edge slots, including removed edges.
    pub fn edge_slots(&self) -> usize {
        self.ends.len()
    }

    pub fn num_live_edges(&self) -> usize {
        self.alive.iter().filter(|&&a| a).count()
    }

    pub fn is_alive(&self, e: u32) -> bool {
        self.alive[e as usize]
    }

    pub fn ends(&self, e: u32) -> [u32; 2] {
        self.ends[e as usize]
    }

    pub fn live_edges(&self) -> impl Iterator<Item = u32> + '_ {
        (0..self.ends.len() as u32).filter(move |&e| self.alive[e as usize])
    }

    #[inline]
    pub fn tail(&self, d: Dart) -> u32 {
        self.ends[(d >> 1) as usize][(d & 1) as usize]
    }

    #[inline]
    pub fn head(&self, d: Dart) -> u32 {
        self.ends[(d >> 1) as usize][((d & 1) ^ 1) as usize]
    }

    pub fn rotation(&self, v: u32) -> &[Dart] {
        &self.rot[v as usize]
    }

    pub fn degree(&self, v: u32) -> usize {
        self.rot[v as usize].len()
    }

    #[inline]
    pub fn rot_next(&self, d: Dart) -> Dart {
        let r = &self.rot[self.tail(d) as usize];
        let p = self.pos[d as usize] as usize;
        r[(p + 1) % r.len()]
    }

    #[inline]
    pub fn rot_prev(&self, d: Dart) -> Dart {
        let r = &self.rot[self.tail(d) as usize];
        let p = self.pos[d as usize] as usize;
        r[(p + r.len() - 1) % r.len()]
    }

    /// Successor of `d` on its face.
    #[inline]
    pub fn face_next(&self, d: Dart) -> Dart {
        self.rot_next(rev(d))
    }

    pub fn add_vertex(&mut self) -> u32 {
        self.rot.push(Vec::new());
        (self.rot.len() - 1) as u32
    }

    /// Adds edge `u - v`. Its dart at `u` is placed right before `before_u`
    /// (or appended when `None`), likewise at `v`. Returns the edge id.
    pub fn add_edge(&mut self, u: u32, before_u: Option<Dart>, v: u32, before_v: Option<Dart>) -> u32 {
        let e = self.ends.len() as u32;
        self.ends.push([u, v]);
        self.alive.push(true);
        self.pos.push(NONE);
        self.pos.push(NONE);
        self.insert_dart(u, 2 * e, before_u);
        self.insert_dart(v, 2 * e + 1, before_v);
        e
    }

    fn insert_dart(&mut self, v: u32, d: Dart, before: Option<Dart>) {
        let at = match before {
            Some(b) => {
                debug_assert_eq!(self.tail(b), v);
                self.pos[b as usize] as usize
            }
            None => self.rot[v as usize].len(),
        };
        self.rot[v as usize].insert(at, d);
        self.reindex(v);
    }

    pub fn remove_edge(&mut self, e: u32) {
        if !self.alive[e as usize] {
            return;
        }
        self.alive[e as usize] = false;
        for side in 0..2 {
            let d = 2 * e + side;
            let v = self.tail(d);
            let p = self.pos[d as usize] as usize;
            self.rot[v as usize].remove(p);
            self.pos[d as usize] = NONE;
            self.reindex(v);
        }
    }

    pub fn faces(&self) -> Faces {
        let mut face_of = vec![NONE; self.ends.len() * 2];
        let mut walks = Vec::new();
        for e in 0..self.ends.len() as u32 {
            if !self.alive[e as usize] {
                continue;
            }
            for start in [2 * e, 2 * e + 1] {
                if face_of[start as usize] != NONE {
                    continue;
                }
                let f = walks.len() as u32;
                let mut walk = Vec::new();
                let mut d = start;
                loop {
                    face_of[d as usize] = f;
                    walk.push(d);
                    d = self.face_next(d);
                    if d == start {
                        break;
                    }
                }
                walks.push(walk);
            }
        }
        Faces { face_of, walks }
    }

    /// Connected components (undirected, over live edges) as a label per vertex.
    pub fn components(&self) -> (usize, Vec<u32>) {
        let n = self.rot.len();
        let mut comp = vec![NONE; n];
        let mut count = 0u32;
        let mut stack = Vec::new();
        for s in 0..n {
            if comp[s] != NONE {
                continue;
            }
            comp[s] = count;
            stack.push(s as u32);
            while let Some(v) = stack.pop() {
                for &d in &self.rot[v as usize] {
                    let w = self.head(d);
                    if comp[w as usize] == NONE {
                        comp[w as usize] = count;
                        stack.push(w);
                    }
                }
            }
            count += 1;
        }
        (count as usize, comp)
    }

    /// Checks that the rotation system is consistent and every connected
    /// component satisfies `V - E + F = 2` (an isolated vertex counts one face).
    pub fn is_planar_embedding(&self) -> bool {
        for v in 0..self.rot.len() {
            for (i, &d) in self.rot[v].iter().enumerate() {
                if !self.alive[(d >> 1) as usize] || self.tail(d) != v as u32 || self.pos[d as usize] != i as u32 {
                    return false;
                }
            }
        }
        for e in self.live_edges() {
            if self.pos[(2 * e) as usize] == NONE || self.pos[(2 * e + 1) as usize] == NONE {
                return false;
            }
        }
        let (c, comp) = self.components();
        let faces = self.faces();
        let mut chi = vec![0i64; c];
        for v in 0..self.rot.len() {
            chi[comp[v] as usize] += 1;
            if self.rot[v].is_empty() {
                chi[comp[v] as usize] += 1;
            }
        }
        for e in self.live_edges() {
            chi[comp[self.ends[e as usize][0] as usize] as usize] -= 1;
        }
        for w in &faces.walks {
            chi[comp[self.tail(w[0]) as usize] as usize] += 1;
        }
        chi.iter().all(|&x| x == 2)
    }

    /// Finds a face containing both `u` and `v`, returning one corner dart at
    /// each (the dart leaving the vertex along that face).
    pub fn common_face(&self, u: u32, v: u32) -> Option<(Dart, Dart)> {
        if self.rot[u as usize].is_empty() || self.rot[v as usize].is_empty() {
            return None;
        }
        let faces = self.faces();
        let mut at_u: Vec<(u32, Dart)> = self.rot[u as usize]
            .iter()
            .map(|&d| (faces.face_of[d as usize], d))
            .collect();
        at_u.sort_unstable();
        for &d in &self.rot[v as usize] {
            let f = faces.face_of[d as usize];
            if let Ok(i) = at_u.binary_search_by(|&(g, _)| g.cmp(&f)) {
                return Some((at_u[i].1, d));
            }
        }
        None
    }

    /// Contracts edge `e`, merging its second endpoint into the first. The
    /// merged rotation replaces the dart of `e` at the kept endpoint by the
    /// other endpoint's darts, in order, starting after the dart of `e`.
    /// Returns the vertex that disappeared (it keeps an empty rotation).
    pub fn contract_edge(&mut self, e: u32) -> u32 {
        let [u, v] = self.ends[e as usize];
        assert_ne!(u, v, "cannot contract a loop");
        let du = 2 * e;
        let dv = 2 * e + 1;
        let rv = std::mem::take(&mut self.rot[v as usize]);
        let pv = self.pos[dv as usize] as usize;
        let moved: Vec<Dart> = (1..rv.len()).map(|i| rv[(pv + i) % rv.len()]).collect();
        for &d in &moved {
            let side = (d & 1) as usize;
            self.ends[(d >> 1) as usize][side] = u;
        }
        let pu = self.pos[du as usize] as usize;
        let ru = &mut self.rot[u as usize];
        ru.splice(pu..pu + 1, moved);
        self.alive[e as usize] = false;
        self.pos[du as usize] = NONE;
        self.pos[dv as usize] = NONE;
        self.reindex(u);
        v
    }

    /// Removes vertices with empty rotation that are flagged in `drop` and
    /// renumbers the rest compactly. Returns the old-to-new map.
    pub fn compact_vertices(&mut self, drop: &[bool]) -> Vec<u32> {
        let mut map = vec![NONE; self.rot.len()];
        let mut next = 0u32;
        for v in 0..self.rot.len() {
            if !drop[v] {
                map[v] = next;
                next += 1;
            } else {
                debug_assert!(self.rot[v].is_empty());
            }
        }
        for e in 0..self.ends.len() {
            if self.alive[e] {
                for s in 0..2 {
                    self.ends[e][s] = map[self.ends[e][s] as usize];
                }
            }
        }
        let old = std::mem::take(&mut self.rot);
        self.rot = old
            .into_iter()
            .enumerate()
            .filter(|(v, _)| !drop[*v])
            .map(|(_, r)| r)
            .collect();
        map
    }

    /// Drops dead edge slots and renumbers live edges compactly. Returns the
    /// old-to-new edge map.
    pub fn compact_edges(&mut self) -> Vec<u32> {
        let mut map = vec![NONE; self.ends.len()];
        let mut ends = Vec::new();
        for e in 0..self.ends.len() {
            if self.alive[e] {
                map[e] = ends.len() as u32;
                ends.push(self.ends[e]);
            }
        }
        for r in self.rot.iter_mut() {
            for d in r.iter_mut() {
                *d = 2 * map[(*d >> 1) as usize] + (*d & 1);
            }
        }
        self.alive = vec![true; ends.len()];
        self.ends = ends;
        self.reindex_all();
        map
    }

    /// Replaces the rotation of `v` wholesale (used by vertex splitting).
    pub fn set_rotation(&mut self, v: u32, darts: Vec<Dart>) {
        for &d in &darts {
            let side = (d & 1) as usize;
            self.ends[(d >> 1) as usize][side] = v;
        }
        self.rot[v as usize] = darts;
        self.reindex(v);
    }

    /// Adds an edge slot without placing its darts; the caller must put the
    /// darts into rotations through [`Embedding::set_rotation`].
    pub fn add_edge_unplaced(&mut self, u: u32, v: u32) -> u32 {
        let e = self.ends.len() as u32;
        self.ends.push([u, v]);
        self.alive.push(true);
        self.pos.push(NONE);
        self.pos.push(NONE);
        e
    }

    /// Marks an edge dead without touching rotations; the caller must remove
    /// its darts through [`Embedding::set_rotation`].
    pub fn kill_edge_unplaced(&mut self, e: u32) {
        self.alive[e as usize] = false;
        self.pos[(2 * e) as usize] = NONE;
        self.pos[(2 * e + 1) as usize] = NONE;
    }

    pub fn position(&self, d: Dart) -> u32 {
        self.pos[d as usize]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> Embedding {
        // ccw rotations that give two triangular faces
        let ends = vec![[0, 1], [1, 2], [2, 0]];
        let rot = vec![vec![0, 5], vec![2, 1], vec![4, 3]];
        Embedding::from_rotations(ends, vec![true; 3], rot)
    }

    #[test]
    fn triangle_has_two_faces() {
        let emb = triangle();
        assert!(emb.is_planar_embedding());
        let f = emb.faces();
        assert_eq!(f.len(), 2);
        assert!(f.walks.iter().all(|w| w.len() == 3));
    }

    #[test]
    fn contraction_keeps_euler() {
        let mut emb = triangle();
        let gone = emb.contract_edge(0);
        assert_eq!(gone, 1);
        let mut drop = vec![false; 3];
        drop[1] = true;
        emb.compact_vertices(&drop);
        // a digon remains
        assert!(emb.is_planar_embedding());
        assert_eq!(emb.faces().len(), 2);
    }

    #[test]
    fn remove_edge_merges_faces() {
        let mut emb = triangle();
        emb.remove_edge(1);
        assert!(emb.is_planar_embedding());
        assert_eq!(emb.faces().len(), 1);
    }

    #[test]
    fn loop_in_corner_makes_unit_face() {
        let mut emb = triangle();
        // loop at 0 inserted as [rev, fwd] before dart 0
        let e = emb.add_edge_unplaced(0, 0);
        let mut r = emb.rotation(0).to_vec();
        let p = r.iter().position(|&d| d == 0).unwrap();
        r.splice(p..p, [2 * e + 1, 2 * e]);
        emb.set_rotation(0, r);
        assert!(emb.is_planar_embedding());
        let f = emb.faces();
        assert_eq!(f.walks[f.face_of[(2 * e) as usize] as usize].len(), 1);
    }
}
