//! Orientations of graphs and signs of isomorphisms.
//!
//! An orientation of a graph G is an orientation of Q^{edges} ⊕ H_1(|G|).
//! An isomorphism acts on it by the parity of the induced edge permutation
//! times the determinant sign of the induced map on a cycle basis; a
//! reflected vertex of valence k contributes the sign of reversing k flags,
//! (-1)^{k(k-1)/2}, coming from the sign-twist of the dual-operad
//! decorations.  A class is zero when some automorphism acts by -1.

use crate::canonical::{automorphism_group, canonicalize, Relabeling};
use crate::graph::{GraphError, MobiusGraph};
use crate::linalg::{det_sign, permutation_sign, q_int, Q, SparseMat};
use num::traits::Zero;

/// A cycle as a rational vector over the directed internal edges of a
/// graph; edge e is directed from the vertex of its smaller half edge to
/// the vertex of the larger one.
pub type Cycle = Vec<Q>;

/// A presentation of an orientation: an ordering of the internal edges and
/// an ordered basis of H_1 in edge coordinates.
#[derive(Debug, Clone)]
pub struct OrientationData {
    pub edge_order: Vec<usize>,
    pub cycles: Vec<Cycle>,
}

/// Fundamental cycle basis from a breadth-first spanning tree, ordered by
/// the non-tree edge id; this is the reference orientation of a graph.
pub fn reference_orientation(g: &MobiusGraph) -> OrientationData {
    let t = &g.topology;
    let edges = t.edges();
    let nv = t.num_vertices();
    // BFS tree: parent edge for every vertex except the root
    let mut parent_edge: Vec<Option<(usize, bool)>> = vec![None; nv]; // (edge id, points to parent?)
    let mut depth = vec![usize::MAX; nv];
    let mut in_tree = vec![false; edges.len()];
    let mut queue = std::collections::VecDeque::new();
    if nv > 0 {
        depth[0] = 0;
        queue.push_back(0usize);
    }
    while let Some(v) = queue.pop_front() {
        for (e, &(a, b)) in edges.iter().enumerate() {
            let (va, vb) = (t.vertex_of[a], t.vertex_of[b]);
            let w = if va == v {
                vb
            } else if vb == v {
                va
            } else {
                continue;
            };
            if depth[w] == usize::MAX {
                depth[w] = depth[v] + 1;
                in_tree[e] = true;
                // edge directed va -> vb; does it point from w to v?
                parent_edge[w] = Some((e, t.vertex_of[edges[e].0] == w));
                queue.push_back(w);
            }
        }
    }
    let mut cycles = Vec::new();
    for (e, &(a, b)) in edges.iter().enumerate() {
        if in_tree[e] {
            continue;
        }
        // cycle: e plus the tree path from head back to tail
        let mut vec = vec![Q::zero(); edges.len()];
        vec[e] = q_int(1);
        let head = t.vertex_of[b];
        let tail = t.vertex_of[a];
        // walk both endpoints to the root, recording signed tree edges
        let mut add_path_to_root = |mut v: usize, sign: i64, vec: &mut Vec<Q>| {
            while let Some((pe, towards_parent_is_reverse)) = parent_edge[v] {
                // tree edge pe directed x -> y; walking v -> parent
                let s = if towards_parent_is_reverse { sign } else { -sign };
                vec[pe] += q_int(s);
                let (x, y) = edges[pe];
                let (vx, vy) = (t.vertex_of[x], t.vertex_of[y]);
                v = if vx == v { vy } else { vx };
            }
        };
        add_path_to_root(head, 1, &mut vec);
        add_path_to_root(tail, -1, &mut vec);
        cycles.push(vec);
    }
    OrientationData {
        edge_order: (0..edges.len()).collect(),
        cycles,
    }
}

/// Boundary-consistency check used in debug assertions.
fn is_cycle(g: &MobiusGraph, c: &Cycle) -> bool {
    let t = &g.topology;
    let edges = t.edges();
    let mut bd = vec![Q::zero(); t.num_vertices()];
    for (e, coef) in c.iter().enumerate() {
        if coef.is_zero() {
            continue;
        }
        let (a, b) = edges[e];
        bd[t.vertex_of[a]] -= coef;
        bd[t.vertex_of[b]] += coef;
    }
    bd.iter().all(|x| x.is_zero())
}

/// Decoration sign contributed by reflecting a vertex of valence k.
///
/// Expanding a vertex of valence k into valences k1 + k2 = k + 2 must
/// commute with reflections, which forces the multiplicative rule
/// ψ(k)=ψ(k1)ψ(k2); the two solutions are ψ ≡ 1 and ψ(k) = (-1)^k.  The
/// latter is the one reproducing the moduli homology anchors (nonzero
/// top cohomology for the nonempty dianalytic types) and the closed,
/// non-exact degree-one cycle of the five-leg complex.
pub fn reversal_sign(k: usize) -> i64 {
    if k % 2 == 0 {
        1
    } else {
        -1
    }
}

/// How a concrete half-edge map transports orientation data.
///
/// `f` maps half edges of `src` to half edges of `dst`; `reflected` flags
/// the reflected vertices of `src`.  Returns the edge permutation (src edge
/// id -> dst edge id), the transported cycles, and the vertex twist sign.
pub fn transport(
    src: &MobiusGraph,
    dst: &MobiusGraph,
    f: &[usize],
    reflected: &[bool],
    data: &OrientationData,
) -> (Vec<usize>, Vec<Cycle>, i64) {
    let se = src.topology.edges();
    let de = dst.topology.edges();
    let mut edge_index_of_half = vec![usize::MAX; dst.topology.num_half_edges()];
    for (i, &(a, b)) in de.iter().enumerate() {
        edge_index_of_half[a] = i;
        edge_index_of_half[b] = i;
    }
    // src edge id -> (dst edge id, direction sign)
    let mut edge_map = Vec::with_capacity(se.len());
    let mut dir_sign = Vec::with_capacity(se.len());
    for &(a, _b) in &se {
        let fa = f[a];
        let e2 = edge_index_of_half[fa];
        edge_map.push(e2);
        dir_sign.push(if de[e2].0 == fa { 1i64 } else { -1 });
    }
    let cycles: Vec<Cycle> = data
        .cycles
        .iter()
        .map(|c| {
            let mut out = vec![Q::zero(); de.len()];
            for (e, coef) in c.iter().enumerate() {
                if !coef.is_zero() {
                    out[edge_map[e]] += coef * q_int(dir_sign[e]);
                }
            }
            debug_assert!(is_cycle(dst, &out));
            out
        })
        .collect();
    let mut twist = 1i64;
    for (v, &r) in reflected.iter().enumerate() {
        if r {
            twist *= reversal_sign(src.valence(v));
        }
    }
    let edge_order: Vec<usize> = data.edge_order.iter().map(|&e| edge_map[e]).collect();
    (edge_order, cycles, twist)
}

/// Expresses `cycles` in terms of `basis` (both bases of the cycle space of
/// the same graph) and returns the determinant sign, or 0 if degenerate.
pub fn cycle_basis_det_sign(basis: &[Cycle], cycles: &[Cycle]) -> i64 {
    assert_eq!(basis.len(), cycles.len());
    if basis.is_empty() {
        return 1;
    }
    let ne = basis[0].len();
    let mut m = SparseMat::zero(ne, basis.len());
    for (j, b) in basis.iter().enumerate() {
        for (i, v) in b.iter().enumerate() {
            if !v.is_zero() {
                m.set(i, j, v.clone());
            }
        }
    }
    let mut cols = Vec::new();
    for c in cycles {
        match m.solve(c) {
            Some(x) => cols.push(x),
            None => return 0,
        }
    }
    det_sign(&cols)
}

/// Sign relating `(src, data)` to the reference orientation of `dst` under
/// the half-edge map `f` (with reflection flags); 0 when degenerate.
pub fn orientation_sign_under(
    src: &MobiusGraph,
    dst: &MobiusGraph,
    f: &[usize],
    reflected: &[bool],
    data: &OrientationData,
) -> i64 {
    let reference = reference_orientation(dst);
    let (edge_order, cycles, twist) = transport(src, dst, f, reflected, data);
    // edge permutation relative to the reference order (identity order)
    let mut perm = vec![usize::MAX; edge_order.len()];
    for (pos, &e) in edge_order.iter().enumerate() {
        perm[pos] = e;
    }
    let edge_sign = permutation_sign(&perm);
    let cycle_sign = cycle_basis_det_sign(&reference.cycles, &cycles);
    edge_sign * cycle_sign * twist
}

/// An isomorphism class together with its orientation status.
#[derive(Debug, Clone)]
pub struct OrientedClass {
    pub graph: MobiusGraph,
    /// false when some automorphism acts with odd sign
    pub nonzero: bool,
}

/// Decides whether the class of `g` (a canonical representative) is killed
/// by an orientation-reversing automorphism.
pub fn oriented_class(g: &MobiusGraph, reduced: bool) -> OrientedClass {
    let data = reference_orientation(g);
    let mut nonzero = true;
    for aut in automorphism_group(g, reduced) {
        if aut.is_identity() {
            continue;
        }
        let s = orientation_sign_under(g, g, &aut.half_edge_map, &aut.reflected, &data);
        if s != 1 {
            nonzero = false;
            break;
        }
    }
    OrientedClass {
        graph: g.clone(),
        nonzero,
    }
}

/// Sign relating a presented oriented graph to the canonical class of its
/// isomorphism type: +1/-1, or 0 if the class is zero.  `NotIsomorphic`
/// when the presented graph is not in the class.
pub fn orientation_sign(
    presented: &MobiusGraph,
    data: &OrientationData,
    canonical: &OrientedClass,
    reduced: bool,
) -> Result<i64, GraphError> {
    if !canonical.nonzero {
        return Ok(0);
    }
    let (cf_p, rel_p) = canonicalize(presented, reduced);
    let (cf_c, rel_c) = canonicalize(&canonical.graph, reduced);
    if cf_p != cf_c {
        return Err(GraphError::NotIsomorphic);
    }
    // presented --rel_p--> canonical encoding <--rel_c-- canonical.graph
    let f = compose_into(presented, &canonical.graph, &rel_p, &rel_c);
    let s = orientation_sign_under(presented, &canonical.graph, &f.0, &f.1, data);
    Ok(s)
}

/// Composes `rel_p` with the inverse of `rel_c` into a direct half-edge map
/// presented -> canonical.graph, with reflection flags on the source.
fn compose_into(
    presented: &MobiusGraph,
    canonical: &MobiusGraph,
    rel_p: &Relabeling,
    rel_c: &Relabeling,
) -> (Vec<usize>, Vec<bool>) {
    let n = presented.topology.num_half_edges();
    let mut inv_c = vec![usize::MAX; n];
    for (old, &new) in rel_c.half_edge_map.iter().enumerate() {
        inv_c[new] = old;
    }
    let f: Vec<usize> = (0..n).map(|h| inv_c[rel_p.half_edge_map[h]]).collect();
    // reflection flags compose: source vertex v is net-reflected when
    // exactly one of (rel_p at v, rel_c at image vertex) reflects.
    let mut reflected = vec![false; presented.topology.num_vertices()];
    for v in 0..reflected.len() {
        let img_enc = rel_p.vertex_map[v];
        let img_c = rel_c.vertex_map.iter().position(|&x| x == img_enc).unwrap();
        reflected[v] = rel_p.reflected[v] ^ rel_c.reflected[img_c];
    }
    let _ = canonical;
    (f, reflected)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canonical::canonical_graph;
    use crate::graph::GraphKind;

    #[test]
    fn tree_identity_sign_positive() {
        let g = MobiusGraph::new(
            GraphKind::Ribbon,
            vec![0, 0],
            vec![vec![0, 1, 2], vec![3, 4, 5]],
            &[(2, 3)],
            vec![0, 1, 4, 5],
            vec![0; 6],
        )
        .unwrap();
        let g = canonical_graph(&g, true);
        let data = reference_orientation(&g);
        let class = oriented_class(&g, true);
        assert!(class.nonzero);
        assert_eq!(orientation_sign(&g, &data, &class, true).unwrap(), 1);
    }

    #[test]
    fn edge_swap_flips_sign() {
        // two-vertex graph with two parallel edges and a leg at each vertex
        let g = MobiusGraph::new(
            GraphKind::Ribbon,
            vec![0, 0],
            vec![vec![0, 1, 2], vec![3, 4, 5]],
            &[(0, 4), (1, 3)],
            vec![2, 5],
            vec![0; 6],
        )
        .unwrap();
        let g = canonical_graph(&g, true);
        let class = oriented_class(&g, true);
        let mut data = reference_orientation(&g);
        let plus = orientation_sign(&g, &data, &class, true).unwrap();
        data.edge_order.swap(0, 1);
        let minus = orientation_sign(&g, &data, &class, true).unwrap();
        if class.nonzero {
            assert_eq!(plus, -minus);
        } else {
            assert_eq!((plus, minus), (0, 0));
        }
    }

    #[test]
    fn handle_graph_class_status() {
        let g = MobiusGraph::corolla(
            GraphKind::Mobius,
            vec![0, 1, 2, 3, 4],
            &[(0, 2), (1, 3)],
            vec![4],
            vec![0; 5],
        )
        .unwrap();
        let g = canonical_graph(&g, true);
        // Mobius: only the identity automorphism, class survives
        assert!(oriented_class(&g, true).nonzero);
    }

    #[test]
    fn annulus_loop_dianalytic_survives() {
        // one untwisted loop plus leg; the reversal automorphism swaps the
        // loop halves: edge fixed (+1), cycle reversed (-1), trivalent
        // reflection (-1): net +1, the class survives.
        let g = MobiusGraph::corolla(
            GraphKind::Dianalytic,
            vec![0, 1, 2],
            &[(0, 1)],
            vec![2],
            vec![0; 3],
        )
        .unwrap();
        let g = canonical_graph(&g, true);
        assert_eq!(automorphism_group(&g, true).len(), 2);
        assert!(oriented_class(&g, true).nonzero);
    }

    #[test]
    fn reference_cycles_are_cycles() {
        let g = MobiusGraph::corolla(
            GraphKind::Ribbon,
            vec![0, 2, 1, 3, 4],
            &[(0, 2), (1, 3)],
            vec![4],
            vec![0; 5],
        )
        .unwrap();
        let data = reference_orientation(&g);
        assert_eq!(data.cycles.len(), 2);
        for c in &data.cycles {
            assert!(is_cycle(&g, c));
        }
    }
}
