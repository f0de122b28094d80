//! Oriented graph chain complexes and exact homology.
//!
//! The degree-d chain space is spanned by the nonzero oriented classes with
//! d internal edges; the differential sends a class to the signed sum of
//! all one-vertex expansions, with the new edge placed first in the edge
//! ordering and H_1 transported along the contraction isomorphism.

use crate::canonical::canonicalize;
use crate::enumerate::{enumerate_graphs, EnumerationRequest, GradedBasis};
use crate::graph::{GraphError, GraphKind, MobiusGraph};
use crate::linalg::{q_int, Q, SparseMat};
use crate::orient::{
    orientation_sign, oriented_class, reference_orientation, OrientationData, OrientedClass,
};
use crate::surface::TopologicalType;
use num::traits::Zero;
use serde::Serialize;
use std::collections::BTreeMap;

/// A finite cochain complex of rational vector spaces graded by edge count.
#[derive(Debug, Clone)]
pub struct GradedComplexQ {
    pub kind: GraphKind,
    /// nonzero oriented classes per degree
    pub basis: Vec<Vec<OrientedClass>>,
    /// boundary[d]: chain map degree d -> d+1 (rows indexed by degree d+1)
    pub boundary: Vec<SparseMat>,
}

/// Exact Betti data per degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomologyReport {
    pub dims: Vec<usize>,
    /// ranks[d] = rank of the boundary leaving degree d
    pub ranks: Vec<usize>,
    pub betti: Vec<usize>,
}

impl GradedComplexQ {
    pub fn dims(&self) -> Vec<usize> {
        self.basis.iter().map(|b| b.len()).collect()
    }

    /// Verifies d^2 = 0 exactly; returns the offending degree otherwise.
    pub fn check_d_squared(&self) -> Result<(), GraphError> {
        for d in 0..self.boundary.len().saturating_sub(1) {
            let prod = self.boundary[d + 1].mul(&self.boundary[d]);
            if !prod.is_zero() {
                return Err(GraphError::DSquaredNonzero(d));
            }
        }
        Ok(())
    }

    /// Exact Betti numbers by fraction-free elimination.
    pub fn homology_ranks(&self) -> Result<HomologyReport, GraphError> {
        self.check_d_squared()?;
        let dims = self.dims();
        let ranks: Vec<usize> = self.boundary.iter().map(|m| m.rank()).collect();
        let mut betti = Vec::with_capacity(dims.len());
        for d in 0..dims.len() {
            let out_rank = if d < ranks.len() { ranks[d] } else { 0 };
            let in_rank = if d > 0 { ranks[d - 1] } else { 0 };
            betti.push(dims[d] - out_rank - in_rank);
        }
        Ok(HomologyReport {
            dims,
            ranks,
            betti,
        })
    }
}

/// Index of canonical forms into (degree, position) for nonzero classes.
struct BasisIndex {
    map: BTreeMap<Vec<u8>, (usize, usize)>,
}

/// Expands every vertex of `g` and yields, per expansion, the expanded
/// graph, presented orientation data (new edge first, lifted cycles), and
/// nothing else; `g_data` is the reference orientation of `g`.
fn expansion_terms(
    g: &MobiusGraph,
    g_data: &OrientationData,
) -> Vec<(MobiusGraph, OrientationData)> {
    let mut out = Vec::new();
    let old_edges = g.topology.edges();
    for v in 0..g.topology.num_vertices() {
        for (gx, new_edge_id, _) in g.expansions_of_vertex(v) {
            let new_edges = gx.topology.edges();
            debug_assert_eq!(new_edges.len(), old_edges.len() + 1);
            // old edges keep their ids because the new pair has the largest
            // half-edge ids and sorts last
            debug_assert_eq!(new_edge_id, new_edges.len() - 1);
            let mut edge_order = Vec::with_capacity(new_edges.len());
            edge_order.push(new_edge_id);
            edge_order.extend(g_data.edge_order.iter().copied());
            // lift cycles: same coefficients, plus a multiple of the new
            // edge closing the boundary at the two split vertices
            let (na, nb) = new_edges[new_edge_id];
            let (va, vb) = (gx.topology.vertex_of[na], gx.topology.vertex_of[nb]);
            let cycles = g_data
                .cycles
                .iter()
                .map(|c| {
                    let mut lifted = vec![Q::zero(); new_edges.len()];
                    lifted[..c.len()].clone_from_slice(c);
                    // boundary of the partial chain at vb (new edge adds
                    // vb - va, so coefficient alpha must cancel it)
                    let mut beta = Q::zero();
                    for (e, coef) in c.iter().enumerate() {
                        if coef.is_zero() {
                            continue;
                        }
                        let (a, b) = new_edges[e];
                        if gx.topology.vertex_of[b] == vb {
                            beta += coef.clone();
                        }
                        if gx.topology.vertex_of[a] == vb {
                            beta -= coef.clone();
                        }
                    }
                    let _ = va;
                    lifted[new_edge_id] = -beta;
                    lifted
                })
                .collect();
            out.push((
                gx,
                OrientationData {
                    edge_order,
                    cycles,
                },
            ));
        }
    }
    out
}

fn build_from_basis(
    kind: GraphKind,
    graded: &GradedBasis,
    reduced: bool,
) -> Result<GradedComplexQ, GraphError> {
    let mut basis: Vec<Vec<OrientedClass>> = Vec::new();
    let mut index = BasisIndex {
        map: BTreeMap::new(),
    };
    for (d, classes) in graded.degrees.iter().enumerate() {
        let mut level = Vec::new();
        for (cf, g) in classes {
            let oc = oriented_class(g, reduced);
            if oc.nonzero {
                index.map.insert(cf.encoding.clone(), (d, level.len()));
                level.push(oc);
            }
        }
        basis.push(level);
    }
    let ndeg = basis.len();
    let mut boundary = Vec::new();
    for d in 0..ndeg.saturating_sub(1) {
        let mut m = SparseMat::zero(basis[d + 1].len(), basis[d].len());
        for (j, class) in basis[d].iter().enumerate() {
            let data = reference_orientation(&class.graph);
            for (gx, presented) in expansion_terms(&class.graph, &data) {
                let (cf, _) = canonicalize(&gx, reduced);
                let Some(&(dt, i)) = index.map.get(&cf.encoding) else {
                    continue; // target class is zero
                };
                debug_assert_eq!(dt, d + 1);
                let target = &basis[d + 1][i];
                let s = orientation_sign(&gx, &presented, target, reduced)?;
                if s != 0 {
                    m.add_to(i, j, q_int(s));
                }
            }
        }
        boundary.push(m);
    }
    Ok(GradedComplexQ {
        kind,
        basis,
        boundary,
    })
}

/// Builds the oriented graph complex of one topological type.
pub fn build_graph_complex(req: &EnumerationRequest) -> Result<GradedComplexQ, GraphError> {
    let graded = enumerate_graphs(req)?;
    build_from_basis(req.kind, &graded, req.reduced)
}

/// Builds the direct sum over all (g, u, h) with `2g + u + h - 1 = genus`
/// of the Möbius (or ribbon, u = 0) complexes, as one complex.
pub fn build_genus_sum_complex(
    kind: GraphKind,
    genus: usize,
    n: usize,
) -> Result<GradedComplexQ, GraphError> {
    let mut types = Vec::new();
    for g in 0..=(genus + 1) / 2 {
        for u in 0..=2usize.min(genus + 1) {
            if kind == GraphKind::Ribbon && u != 0 {
                continue;
            }
            let rest = (genus + 1).checked_sub(2 * g + u);
            let Some(h) = rest else { continue };
            if h == 0 {
                continue;
            }
            types.push(TopologicalType { g, u, h, n });
        }
    }
    types.sort();
    let mut merged = GradedBasis::default();
    for t in types {
        let req = EnumerationRequest {
            kind,
            ttype: t,
            reduced: true,
        };
        if matches!(
            enumerate_graphs(&req),
            Err(GraphError::UnstableType(_))
        ) {
            continue;
        }
        let b = enumerate_graphs(&req)?;
        if merged.degrees.len() < b.degrees.len() {
            merged.degrees.resize(b.degrees.len(), Vec::new());
        }
        for (d, classes) in b.degrees.into_iter().enumerate() {
            merged.degrees[d].extend(classes);
        }
    }
    for level in &mut merged.degrees {
        level.sort_by(|a, b| a.0.cmp(&b.0));
        level.dedup_by(|a, b| a.0 == b.0);
    }
    build_from_basis(kind, &merged, true)
}

/// The dianalytic complex of type `(genus, n)`, built directly.
pub fn build_dianalytic_complex(genus: usize, n: usize) -> Result<GradedComplexQ, GraphError> {
    // dianalytic classes of operadic genus ĝ: enumerate via a Möbius-style
    // request; the enumerator keys dianalytic types on (ĝ, n) through any
    // (g, u, h) with the right genus, so pick u = 0, h = ĝ + 1 - 2g... use
    // the direct request with g = 0, u = 0, h = genus + 1 when possible.
    let req = EnumerationRequest {
        kind: GraphKind::Dianalytic,
        ttype: TopologicalType {
            g: 0,
            u: 0,
            h: genus + 1,
            n,
        },
        reduced: true,
    };
    build_graph_complex(&req)
}

/// The per-degree matrices of the colour-forgetting chain map from a ribbon
/// or Möbius complex onto the dianalytic complex of the same (genus, n).
pub fn forget_colors_chain_map(
    src: &GradedComplexQ,
    dst: &GradedComplexQ,
) -> Result<Vec<SparseMat>, GraphError> {
    if dst.kind != GraphKind::Dianalytic || src.kind == GraphKind::Dianalytic {
        return Err(GraphError::TypeMismatch);
    }
    let src_genus = src
        .basis
        .iter()
        .flatten()
        .next()
        .map(|c| c.graph.operadic_genus());
    let dst_genus = dst
        .basis
        .iter()
        .flatten()
        .next()
        .map(|c| c.graph.operadic_genus());
    if src_genus.is_some() && dst_genus.is_some() && src_genus != dst_genus {
        return Err(GraphError::TypeMismatch);
    }
    let ndeg = src.basis.len().max(dst.basis.len());
    let mut index: BTreeMap<Vec<u8>, (usize, usize)> = BTreeMap::new();
    for (d, level) in dst.basis.iter().enumerate() {
        for (i, class) in level.iter().enumerate() {
            let (cf, _) = canonicalize(&class.graph, true);
            index.insert(cf.encoding, (d, i));
        }
    }
    let mut maps = Vec::new();
    for d in 0..ndeg {
        let ncols = src.basis.get(d).map_or(0, |l| l.len());
        let nrows = dst.basis.get(d).map_or(0, |l| l.len());
        let mut m = SparseMat::zero(nrows, ncols);
        for (j, class) in src.basis.get(d).into_iter().flatten().enumerate() {
            let mut g = class.graph.clone();
            g.kind = GraphKind::Dianalytic;
            let (cf, _) = canonicalize(&g, true);
            let Some(&(dt, i)) = index.get(&cf.encoding) else {
                continue;
            };
            debug_assert_eq!(dt, d);
            let data = reference_orientation(&class.graph);
            let s = orientation_sign(&g, &data, &dst.basis[d][i], true)?;
            if s != 0 {
                m.add_to(i, j, q_int(s));
            }
        }
        maps.push(m);
    }
    Ok(maps)
}

/// The signed permutation matrices of the leg-relabelling action on a
/// complex: labels permute twisted by the sign of the permutation.  A
/// graph's class maps to the class of the relabelled graph with the
/// transported orientation times `sgn(perm)`.
pub fn leg_action_chain_map(
    c: &GradedComplexQ,
    perm: &[usize],
    reduced: bool,
) -> Result<Vec<SparseMat>, GraphError> {
    let twist = crate::linalg::permutation_sign(perm);
    let mut index: BTreeMap<Vec<u8>, (usize, usize)> = BTreeMap::new();
    for (d, level) in c.basis.iter().enumerate() {
        for (i, class) in level.iter().enumerate() {
            let (cf, _) = canonicalize(&class.graph, reduced);
            index.insert(cf.encoding, (d, i));
        }
    }
    let mut maps = Vec::new();
    for level in &c.basis {
        let mut m = SparseMat::zero(level.len(), level.len());
        for (j, class) in level.iter().enumerate() {
            let g = class.graph.relabel_legs(perm);
            let (cf, _) = canonicalize(&g, reduced);
            let Some(&(_, i)) = index.get(&cf.encoding) else {
                continue; // relabelled class is zero (or absent)
            };
            let data = reference_orientation(&class.graph);
            let s = orientation_sign(&g, &data, &c.basis[index[&cf.encoding].0][i], reduced)?;
            if s != 0 {
                m.add_to(i, j, q_int(s * twist));
            }
        }
        maps.push(m);
    }
    Ok(maps)
}

/// Flip the colour of one leg on every class: the generator of the
/// Z_2^n action on a Möbius complex.
pub fn leg_colour_flip_chain_map(
    c: &GradedComplexQ,
    leg: usize,
) -> Result<Vec<SparseMat>, GraphError> {
    let mut index: BTreeMap<Vec<u8>, (usize, usize)> = BTreeMap::new();
    for (d, level) in c.basis.iter().enumerate() {
        for (i, class) in level.iter().enumerate() {
            let (cf, _) = canonicalize(&class.graph, true);
            index.insert(cf.encoding, (d, i));
        }
    }
    let mut maps = Vec::new();
    for (d, level) in c.basis.iter().enumerate() {
        let mut m = SparseMat::zero(level.len(), level.len());
        for (j, class) in level.iter().enumerate() {
            let mut g = class.graph.clone();
            let h = g.topology.legs[leg - 1];
            g.colour[h] ^= 1;
            let (cf, _) = canonicalize(&g, true);
            let Some(&(dt, i)) = index.get(&cf.encoding) else {
                continue;
            };
            debug_assert_eq!(dt, d);
            let data = reference_orientation(&class.graph);
            let s = orientation_sign(&g, &data, &c.basis[d][i], true)?;
            if s != 0 {
                m.add_to(i, j, q_int(s));
            }
        }
        maps.push(m);
    }
    Ok(maps)
}

/// Checks that a collection of per-degree maps commutes with the
/// boundaries of `c` (i.e. is a chain map); exact equality.
pub fn is_chain_map(c: &GradedComplexQ, maps: &[SparseMat]) -> bool {
    for d in 0..c.boundary.len() {
        if d + 1 >= maps.len() {
            break;
        }
        let lhs = maps[d + 1].mul(&c.boundary[d]);
        let rhs = c.boundary[d].mul(&maps[d]);
        let mut diff = lhs.clone();
        for (j, col) in rhs.cols.iter().enumerate() {
            for (&i, v) in col {
                diff.add_to(i, j, -v.clone());
            }
        }
        if !diff.is_zero() {
            return false;
        }
    }
    true
}
