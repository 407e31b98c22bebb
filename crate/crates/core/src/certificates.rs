//! Boundary reachability certificates of pieces and their union.
//!
//! The certificate of a piece is the transitive closure of its boundary: an
//! edge `a -> b` for every pair of boundary vertices with `a` reaching `b`
//! inside the piece.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph::scc::{reach_mask, tarjan_scc};
use crate::graph::VertexId;
use crate::rdivision::Piece;

#[derive(Clone, Debug)]
pub struct Certificate {
    pub piece: usize,
    /// Piece version the certificate was computed from.
    pub version: u64,
    /// Boundary of the piece, global ids, sorted.
    pub boundary: Vec<VertexId>,
    /// Edges in global ids.
    pub edges: Vec<(VertexId, VertexId)>,
    /// Largest edge count this construction can produce: `|∂P|²`.
    pub size_bound: usize,
}

impl Certificate {
    pub fn build(piece: &Piece, id: usize, version: u64) -> Self {
        let g = &piece.graph;
        let n = g.num_vertices();
        let local = g.boundary();
        let mut edges = Vec::new();
        for &a in &local {
            let seen = reach_mask(n, |v| g.out[v as usize].iter().copied(), [a]);
            for &b in &local {
                if a != b && seen[b as usize] {
                    edges.push((g.global[a as usize], g.global[b as usize]));
                }
            }
        }
        edges.sort_unstable();
        let boundary = piece.boundary();
        Certificate {
            piece: id,
            version,
            size_bound: boundary.len() * boundary.len(),
            boundary,
            edges,
        }
    }
}

/// The union of all certificates and its SCCs.
#[derive(Clone, Debug)]
pub struct CertUnion {
    /// `∂R`, sorted; vertices of `X` are indices into it.
    pub vertices: Vec<VertexId>,
    pub index: HashMap<VertexId, u32>,
    pub out: Vec<Vec<u32>>,
    /// SCC class of each vertex of `X`.
    pub class: Vec<u32>,
    /// Members of each class, global ids, sorted.
    pub classes: Vec<Vec<VertexId>>,
    /// Per class: `(piece, B ∩ ∂P)` for every piece it meets, pieces ascending.
    pub by_piece: Vec<Vec<(usize, Vec<VertexId>)>>,
}

impl CertUnion {
    /// `versions[p]` is the current version of piece `p`.
    pub fn build(certs: &[Certificate], versions: &[u64]) -> Result<Self> {
        for (p, c) in certs.iter().enumerate() {
            if c.piece != p || versions.get(p) != Some(&c.version) {
                return Err(Error::StaleCertificate(p));
            }
        }
        let mut vertices: Vec<VertexId> = certs.iter().flat_map(|c| c.boundary.iter().copied()).collect();
        vertices.sort_unstable();
        vertices.dedup();
        let index: HashMap<VertexId, u32> = vertices.iter().enumerate().map(|(i, &v)| (v, i as u32)).collect();
        let mut out = vec![Vec::new(); vertices.len()];
        for c in certs {
            for &(a, b) in &c.edges {
                out[index[&a] as usize].push(index[&b]);
            }
        }
        let part = tarjan_scc(vertices.len(), |v| out[v as usize].iter().copied());
        let classes: Vec<Vec<VertexId>> = part
            .members
            .iter()
            .map(|m| {
                let mut m: Vec<VertexId> = m.iter().map(|&i| vertices[i as usize]).collect();
                m.sort_unstable();
                m
            })
            .collect();
        let mut by_piece: Vec<Vec<(usize, Vec<VertexId>)>> = vec![Vec::new(); classes.len()];
        for c in certs {
            let mut local: HashMap<u32, Vec<VertexId>> = HashMap::new();
            for &v in &c.boundary {
                local.entry(part.comp[index[&v] as usize]).or_default().push(v);
            }
            let mut local: Vec<_> = local.into_iter().collect();
            local.sort_unstable();
            for (k, vs) in local {
                by_piece[k as usize].push((c.piece, vs));
            }
        }
        Ok(CertUnion {
            vertices,
            index,
            out,
            class: part.comp,
            classes,
            by_piece,
        })
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn class_of(&self, v: VertexId) -> Option<u32> {
        self.index.get(&v).map(|&i| self.class[i as usize])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::gen_planar;
    use crate::graph::PlanarDigraph;
    use crate::rdivision::{Params, RDivision};

    #[test]
    fn closure_matches_pairwise_search() {
        for seed in 0..5 {
            let g = gen_planar(200, 0.7, seed);
            let d = RDivision::build(g, Params::new(16)).unwrap();
            for (i, p) in d.pieces.iter().enumerate() {
                let c = Certificate::build(p, i, 0);
                assert!(c.edges.len() <= c.size_bound);
                let gr = &p.graph;
                for &a in &gr.boundary() {
                    for &b in &gr.boundary() {
                        if a == b {
                            continue;
                        }
                        let want = reach_mask(gr.num_vertices(), |v| gr.out[v as usize].iter().copied(), [a])[b as usize];
                        let e = (gr.global[a as usize], gr.global[b as usize]);
                        assert_eq!(c.edges.binary_search(&e).is_ok(), want);
                    }
                }
            }
        }
    }

    #[test]
    fn union_classes_match_global_sccs() {
        for seed in 0..5 {
            let g = gen_planar(300, 0.8, seed);
            let glob = g.scc();
            let d = RDivision::build(g, Params::new(32)).unwrap();
            let certs: Vec<Certificate> = d.pieces.iter().enumerate().map(|(i, p)| Certificate::build(p, i, 0)).collect();
            let u = CertUnion::build(&certs, &vec![0; certs.len()]).unwrap();
            for &a in &u.vertices {
                for &b in &u.vertices {
                    let same = glob.component_of(a) == glob.component_of(b);
                    assert_eq!(u.class_of(a) == u.class_of(b), same);
                }
            }
        }
    }

    #[test]
    fn stale_certificate_is_reported() {
        let g = PlanarDigraph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let d = RDivision::build(g, Params::new(2)).unwrap();
        let certs: Vec<Certificate> = d.pieces.iter().enumerate().map(|(i, p)| Certificate::build(p, i, 0)).collect();
        let mut v = vec![0; certs.len()];
        v[0] = 1;
        assert_eq!(CertUnion::build(&certs, &v).unwrap_err(), Error::StaleCertificate(0));
    }
}
