//! Surface classification of a graph by boundary-walk tracing.
//!
//! Thickening replaces vertices by discs and edges by strips; a strip is
//! glued with a half twist exactly when its two half edges have different
//! colours.  Boundary components are orbits of a walk on side-marked half
//! edges, orientability is a parity two-colouring problem, and the rest
//! follows from the Euler characteristic `V - E`.

use crate::graph::{GraphError, MobiusGraph};
use serde::{Deserialize, Serialize};

/// Topological type (g, u, h, n) of the thickened surface, with `u`
/// normalized to {0, 1, 2} via crosscap/handle trading.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TopologicalType {
    pub g: usize,
    pub u: usize,
    pub h: usize,
    pub n: usize,
}

impl TopologicalType {
    pub fn new(g: usize, u: usize, h: usize, n: usize) -> Self {
        let t = TopologicalType { g, u, h, n };
        t.normalized()
    }

    /// Trades triples of crosscaps for handle + crosscap until `u <= 2`.
    pub fn normalized(self) -> Self {
        let TopologicalType { g, u, h, n } = self;
        if u <= 2 {
            return self;
        }
        let u_new = if u % 2 == 1 { 1 } else { 2 };
        TopologicalType {
            g: g + (u - u_new) / 2,
            u: u_new,
            h,
            n,
        }
    }

    /// `2g + h + u - 1`, invariant under crosscap normalization.
    pub fn operadic_genus(&self) -> usize {
        2 * self.g + self.h + self.u - 1
    }

    pub fn is_orientable(&self) -> bool {
        self.u == 0
    }

    /// Top cohomological degree of the associated graph complex,
    /// `6g + 3u + 3h + n - 6 = 3 * operadic_genus + n - 3`.
    pub fn top_degree(&self) -> Option<usize> {
        (3 * self.operadic_genus() + self.n).checked_sub(3)
    }
}

impl std::fmt::Display for TopologicalType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(g={}, u={}, h={}, n={})", self.g, self.u, self.h, self.n)
    }
}

fn twist(g: &MobiusGraph, h: usize) -> u8 {
    let p = g.topology.pairing[h];
    g.colour[h] ^ g.colour[p]
}

/// Number of boundary components of the thickened surface.
///
/// States are (half edge, direction); a state means "just passed this stub
/// moving in this rotational direction".  Crossing a twisted strip reverses
/// the direction, a leg makes a u-turn around its tip without reversing.
/// Each boundary circle appears as two mirror orbits unless it is its own
/// mirror, so orbits are counted up to the mirror identification.
pub fn boundary_components(g: &MobiusGraph) -> usize {
    let n = g.topology.num_half_edges();
    if n == 0 {
        return 0;
    }
    let state = |h: usize, s: u8| -> usize { 2 * h + s as usize };
    let step = |h: usize, s: u8| -> (usize, u8) {
        let h2 = if s == 0 { g.next(h) } else { g.prev(h) };
        let p = g.topology.pairing[h2];
        if p == h2 {
            (h2, s)
        } else {
            (p, s ^ twist(g, h2))
        }
    };
    let mirror = |h: usize, s: u8| -> (usize, u8) {
        let h2 = if s == 0 { g.next(h) } else { g.prev(h) };
        (h2, s ^ 1)
    };
    let mut orbit_of = vec![usize::MAX; 2 * n];
    let mut orbits: Vec<usize> = Vec::new(); // orbit id -> representative state
    for h0 in 0..n {
        for s0 in 0..2u8 {
            if orbit_of[state(h0, s0)] != usize::MAX {
                continue;
            }
            let id = orbits.len();
            orbits.push(state(h0, s0));
            let (mut h, mut s) = (h0, s0);
            loop {
                orbit_of[state(h, s)] = id;
                let (nh, ns) = step(h, s);
                if orbit_of[state(nh, ns)] == id {
                    break;
                }
                h = nh;
                s = ns;
            }
        }
    }
    // identify each orbit with its mirror orbit
    let mut classes = 0usize;
    let mut seen = vec![false; orbits.len()];
    for (id, &rep) in orbits.iter().enumerate() {
        if seen[id] {
            continue;
        }
        seen[id] = true;
        let (h, s) = (rep / 2, (rep % 2) as u8);
        let (mh, ms) = mirror(h, s);
        let mid = orbit_of[state(mh, ms)];
        seen[mid] = true;
        classes += 1;
    }
    classes
}

/// Whether the thickened surface is orientable: some set of vertex
/// reflections makes every edge untwisted.
pub fn is_orientable(g: &MobiusGraph) -> bool {
    let nv = g.topology.num_vertices();
    let mut parity: Vec<Option<u8>> = vec![None; nv];
    for v0 in 0..nv {
        if parity[v0].is_some() {
            continue;
        }
        parity[v0] = Some(0);
        let mut stack = vec![v0];
        while let Some(v) = stack.pop() {
            let pv = parity[v].unwrap();
            for &h in &g.cyclic_order[v] {
                let p = g.topology.pairing[h];
                if p == h {
                    continue;
                }
                let w = g.topology.vertex_of[p];
                let want = pv ^ twist(g, h);
                match parity[w] {
                    None => {
                        parity[w] = Some(want);
                        stack.push(w);
                    }
                    Some(q) if q != want => return false,
                    _ => {}
                }
            }
        }
    }
    true
}

/// Classifies the surface obtained by thickening `g`.
///
/// Vertex genera must be zero: the construction replaces vertices by discs.
pub fn topological_type(g: &MobiusGraph) -> Result<TopologicalType, GraphError> {
    g.validate()?;
    if let Some(v) = g.topology.vertex_genus.iter().position(|&x| x > 0) {
        return Err(GraphError::PositiveVertexGenus(v));
    }
    let v = g.topology.num_vertices();
    let e = g.topology.num_edges();
    let n = g.topology.legs.len();
    let chi = v as i64 - e as i64;
    let h = boundary_components(g);
    let orientable = is_orientable(g);
    // chi = 2 - 2g - u - h
    let rest = 2 - chi - h as i64;
    debug_assert!(rest >= 0);
    let rest = rest as usize;
    let (genus, u) = if orientable {
        debug_assert_eq!(rest % 2, 0);
        (rest / 2, 0)
    } else {
        let u = if rest % 2 == 1 { 1 } else { 2 };
        ((rest - u) / 2, u)
    };
    let t = TopologicalType {
        g: genus,
        u,
        h,
        n,
    };
    debug_assert_eq!(t.operadic_genus(), g.operadic_genus());
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::GraphKind;

    pub fn handle_graph() -> MobiusGraph {
        MobiusGraph::corolla(
            GraphKind::Mobius,
            vec![0, 1, 2, 3, 4],
            &[(0, 2), (1, 3)],
            vec![4],
            vec![0; 5],
        )
        .unwrap()
    }

    pub fn crosscap_graph() -> MobiusGraph {
        MobiusGraph::corolla(
            GraphKind::Mobius,
            vec![0, 1, 2],
            &[(0, 1)],
            vec![2],
            vec![0, 1, 0],
        )
        .unwrap()
    }

    pub fn annulus_graph() -> MobiusGraph {
        MobiusGraph::corolla(
            GraphKind::Mobius,
            vec![0, 1, 2],
            &[(0, 1)],
            vec![2],
            vec![0, 0, 0],
        )
        .unwrap()
    }

    #[test]
    fn basic_surfaces() {
        assert_eq!(
            topological_type(&handle_graph()).unwrap(),
            TopologicalType { g: 1, u: 0, h: 1, n: 1 }
        );
        assert_eq!(
            topological_type(&crosscap_graph()).unwrap(),
            TopologicalType { g: 0, u: 1, h: 1, n: 1 }
        );
        assert_eq!(
            topological_type(&annulus_graph()).unwrap(),
            TopologicalType { g: 0, u: 0, h: 2, n: 1 }
        );
    }

    #[test]
    fn three_twisted_loops_is_handle_plus_crosscap() {
        let g = MobiusGraph::corolla(
            GraphKind::Mobius,
            vec![0, 1, 2, 3, 4, 5, 6],
            &[(0, 1), (2, 3), (4, 5)],
            vec![6],
            vec![0, 1, 0, 1, 0, 1, 0],
        )
        .unwrap();
        let t = topological_type(&g).unwrap();
        assert_eq!(t, TopologicalType { g: 1, u: 1, h: 1, n: 1 });
        assert_eq!(t.operadic_genus(), 3);
    }

    #[test]
    fn disc_with_three_legs() {
        let g = MobiusGraph::corolla(GraphKind::Ribbon, vec![0, 1, 2], &[], vec![0, 1, 2], vec![0; 3])
            .unwrap();
        assert_eq!(
            topological_type(&g).unwrap(),
            TopologicalType { g: 0, u: 0, h: 1, n: 3 }
        );
    }

    #[test]
    fn positive_vertex_genus_rejected() {
        let g = MobiusGraph::new(
            GraphKind::Ribbon,
            vec![1],
            vec![vec![0, 1, 2]],
            &[],
            vec![0, 1, 2],
            vec![0; 3],
        )
        .unwrap();
        assert!(matches!(
            topological_type(&g),
            Err(GraphError::PositiveVertexGenus(0))
        ));
    }

    #[test]
    fn crosscap_normalization() {
        let t = TopologicalType::new(0, 5, 1, 0);
        assert_eq!(t, TopologicalType { g: 2, u: 1, h: 1, n: 0 });
        assert_eq!(t.operadic_genus(), TopologicalType { g: 0, u: 5, h: 1, n: 0 }.operadic_genus());
    }

    #[test]
    fn type_invariant_under_contraction() {
        // two-vertex graph with a twisted loop at one vertex
        let g = MobiusGraph::new(
            GraphKind::Mobius,
            vec![0, 0],
            vec![vec![0, 1, 2], vec![3, 4, 5, 6]],
            &[(2, 3), (4, 5)],
            vec![0, 1, 6],
            vec![0, 0, 0, 1, 0, 1, 0],
        )
        .unwrap();
        let t0 = topological_type(&g).unwrap();
        let (c, _) = g.contract_edge(0).unwrap();
        assert_eq!(topological_type(&c).unwrap(), t0);
    }
}
