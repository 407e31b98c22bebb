//! The connected, face-triangulated supergraph whose edges get divided.

use crate::graph::embedding::{Dart, Embedding, Faces};
use crate::graph::PlanarDigraph;

/// Supergraph of `G`: edge ids below `real_slots` mirror `G`, higher ids are
/// scaffolding; vertex ids below `n_real` mirror `G`.
#[derive(Clone, Debug)]
pub struct Supergraph {
    pub emb: Embedding,
    pub n_real: usize,
    pub real_slots: usize,
    pub faces: Faces,
}

impl Supergraph {
    pub fn build(g: &PlanarDigraph) -> Self {
        let mut emb = g.embedding().clone();
        let n = emb.num_vertices();
        let real_slots = emb.edge_slots();
        let (count, comp) = emb.components();
        if count > 1 {
            let mut rep = vec![u32::MAX; count];
            for v in 0..n as u32 {
                let c = comp[v as usize] as usize;
                if rep[c] == u32::MAX {
                    rep[c] = v;
                }
            }
            let root = rep[comp[0] as usize];
            for &r in rep.iter().filter(|&&r| r != root) {
                let bu = emb.rotation(root).first().copied();
                let bv = emb.rotation(r).first().copied();
                emb.add_edge(root, bu, r, bv);
            }
        }
        let faces = emb.faces();
        for walk in faces.walks.iter().filter(|w| w.len() > 3) {
            add_face_star(&mut emb, walk);
        }
        debug_assert!(emb.is_planar_embedding());
        let faces = emb.faces();
        Supergraph {
            emb,
            n_real: n,
            real_slots,
            faces,
        }
    }

    pub fn is_real_edge(&self, e: u32) -> bool {
        (e as usize) < self.real_slots
    }
}

/// Adds a vertex inside the face with the given walk, joined to every corner.
/// Returns the new vertex.
pub fn add_face_star(emb: &mut Embedding, walk: &[Dart]) -> u32 {
    let f = emb.add_vertex();
    for &d in walk.iter().rev() {
        let c = emb.tail(d);
        emb.add_edge(f, None, c, Some(d));
    }
    f
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn star_triangulates_a_square() {
        let g = PlanarDigraph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let s = Supergraph::build(&g);
        assert!(s.emb.is_planar_embedding());
        assert_eq!(s.emb.num_vertices(), 6);
        assert!(s.faces.walks.iter().all(|w| w.len() == 3));
    }

    #[test]
    fn components_get_joined() {
        let g = PlanarDigraph::from_edges(5, &[(0, 1), (2, 3)]).unwrap();
        let s = Supergraph::build(&g);
        assert!(s.emb.is_planar_embedding());
        assert_eq!(s.emb.components().0, 1);
        assert!(s.faces.walks.iter().all(|w| w.len() <= 3));
    }
}
