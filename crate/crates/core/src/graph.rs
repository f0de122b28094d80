//! Half-edge graphs with cyclic orders, colourings and labelled legs.

use thiserror::Error;

/// Errors produced by graph validation and the basic graph operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("pairing is not an involution or its fixed points do not match the legs")]
    NonInvolutivePairing,
    #[error("graph is not connected")]
    DisconnectedGraph,
    #[error("cyclic order at vertex {0} is not a permutation of its half edges")]
    CyclicOrderMismatch(usize),
    #[error("ribbon graph carries a half edge of colour 1")]
    ColouredRibbon,
    #[error("edge {0} is a loop; contraction is undefined")]
    LoopContraction(usize),
    #[error("{0} does not identify an internal edge")]
    NotAnEdge(usize),
    #[error("graphs have different kinds")]
    KindMismatch,
    #[error("vertex {0} has positive genus")]
    PositiveVertexGenus(usize),
    #[error("leg {0} out of range")]
    LegOutOfRange(usize),
    #[error("self-gluing needs two distinct legs")]
    SameLeg,
    #[error("topological type is unstable or invalid: {0}")]
    UnstableType(String),
    #[error("graphs are not isomorphic")]
    NotIsomorphic,
    #[error("boundary matrices do not compose to zero at degree {0}")]
    DSquaredNonzero(usize),
    #[error("source and target complexes have mismatched types")]
    TypeMismatch,
}

/// The three flavours of structure carried by the cyclic orders and colours.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GraphKind {
    /// All colours are zero; isomorphisms preserve cyclic orders.
    Ribbon,
    /// Colours are structural; isomorphisms may reflect vertices, reversing
    /// the cyclic order and flipping the colours there.
    Mobius,
    /// Colours are carried but ignored; isomorphisms may reverse cyclic
    /// orders at vertices freely.
    Dianalytic,
}

impl GraphKind {
    pub fn as_str(self) -> &'static str {
        match self {
            GraphKind::Ribbon => "ribbon",
            GraphKind::Mobius => "mobius",
            GraphKind::Dianalytic => "dianalytic",
        }
    }
}

/// The underlying half-edge structure: vertices, the involution pairing
/// half edges into edges, per-vertex genus and the labelled legs.
///
/// Half edges are indexed `0..num_half_edges`; `pairing[h] == h` exactly when
/// `h` is a leg.  `legs[i]` is the half edge carrying label `i + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GraphTopology {
    pub vertex_of: Vec<usize>,
    pub pairing: Vec<usize>,
    pub vertex_genus: Vec<u32>,
    pub legs: Vec<usize>,
}

impl GraphTopology {
    pub fn num_half_edges(&self) -> usize {
        self.vertex_of.len()
    }

    pub fn num_vertices(&self) -> usize {
        self.vertex_genus.len()
    }

    /// Internal edges as pairs `(h, pairing[h])` with `h < pairing[h]`,
    /// listed by increasing `h`.  The position in this list is the edge id.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for h in 0..self.num_half_edges() {
            let p = self.pairing[h];
            if p > h {
                out.push((h, p));
            }
        }
        out
    }

    pub fn num_edges(&self) -> usize {
        self.edges().len()
    }

    pub fn is_leg(&self, h: usize) -> bool {
        self.pairing[h] == h
    }
}

/// A ribbon, Möbius or dianalytic graph.
///
/// `cyclic_order[v]` lists the half edges at `v` in cyclic order; only the
/// cyclic class of the list matters.  `colour[h]` is 0 or 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MobiusGraph {
    pub topology: GraphTopology,
    pub cyclic_order: Vec<Vec<usize>>,
    pub colour: Vec<u8>,
    pub kind: GraphKind,
}

impl MobiusGraph {
    /// Builds a graph from per-vertex half-edge lists (in cyclic order).
    ///
    /// `pairs` lists the internal edges, `legs[i]` the half edge labelled
    /// `i + 1`.  Validates before returning.
    pub fn new(
        kind: GraphKind,
        vertex_genus: Vec<u32>,
        cyclic_order: Vec<Vec<usize>>,
        pairs: &[(usize, usize)],
        legs: Vec<usize>,
        colour: Vec<u8>,
    ) -> Result<Self, GraphError> {
        let num_half: usize = cyclic_order.iter().map(|c| c.len()).sum();
        let mut vertex_of = vec![usize::MAX; num_half];
        for (v, cyc) in cyclic_order.iter().enumerate() {
            for &h in cyc {
                if h >= num_half || vertex_of[h] != usize::MAX {
                    return Err(GraphError::CyclicOrderMismatch(v));
                }
                vertex_of[h] = v;
            }
        }
        let mut pairing: Vec<usize> = (0..num_half).collect();
        for &(a, b) in pairs {
            if a >= num_half || b >= num_half || a == b {
                return Err(GraphError::NonInvolutivePairing);
            }
            pairing[a] = b;
            pairing[b] = a;
        }
        let g = MobiusGraph {
            topology: GraphTopology {
                vertex_of,
                pairing,
                vertex_genus,
                legs,
            },
            cyclic_order,
            colour,
            kind,
        };
        g.validate()?;
        Ok(g)
    }

    /// A one-vertex graph from a single cyclic order.
    pub fn corolla(
        kind: GraphKind,
        cyclic: Vec<usize>,
        pairs: &[(usize, usize)],
        legs: Vec<usize>,
        colour: Vec<u8>,
    ) -> Result<Self, GraphError> {
        Self::new(kind, vec![0], vec![cyclic], pairs, legs, colour)
    }

    /// Checks every structural invariant.
    pub fn validate(&self) -> Result<(), GraphError> {
        let t = &self.topology;
        let n = t.num_half_edges();
        if t.vertex_of.len() != n || t.pairing.len() != n || self.colour.len() != n {
            return Err(GraphError::NonInvolutivePairing);
        }
        // pairing is an involution with fixed points exactly the legs
        let mut leg_seen = vec![false; n];
        for &l in &t.legs {
            if l >= n || leg_seen[l] {
                return Err(GraphError::NonInvolutivePairing);
            }
            leg_seen[l] = true;
        }
        for h in 0..n {
            let p = t.pairing[h];
            if p >= n || t.pairing[p] != h {
                return Err(GraphError::NonInvolutivePairing);
            }
            if (p == h) != leg_seen[h] {
                return Err(GraphError::NonInvolutivePairing);
            }
        }
        // cyclic orders partition the half edges by vertex
        if self.cyclic_order.len() != t.num_vertices() {
            return Err(GraphError::CyclicOrderMismatch(0));
        }
        let mut seen = vec![false; n];
        for (v, cyc) in self.cyclic_order.iter().enumerate() {
            if cyc.is_empty() {
                return Err(GraphError::CyclicOrderMismatch(v));
            }
            for &h in cyc {
                if h >= n || seen[h] || t.vertex_of[h] != v {
                    return Err(GraphError::CyclicOrderMismatch(v));
                }
                seen[h] = true;
            }
        }
        if seen.iter().any(|&s| !s) {
            return Err(GraphError::CyclicOrderMismatch(0));
        }
        for &c in &self.colour {
            if c > 1 {
                return Err(GraphError::ColouredRibbon);
            }
        }
        if self.kind == GraphKind::Ribbon && self.colour.iter().any(|&c| c != 0) {
            return Err(GraphError::ColouredRibbon);
        }
        // connectivity of the incidence structure
        if t.num_vertices() > 0 {
            let mut reached = vec![false; t.num_vertices()];
            let mut stack = vec![0usize];
            reached[0] = true;
            while let Some(v) = stack.pop() {
                for &h in &self.cyclic_order[v] {
                    let w = t.vertex_of[t.pairing[h]];
                    if !reached[w] {
                        reached[w] = true;
                        stack.push(w);
                    }
                }
            }
            if reached.iter().any(|&r| !r) {
                return Err(GraphError::DisconnectedGraph);
            }
        }
        Ok(())
    }

    /// `E - V + 1 + sum of vertex genera`.
    pub fn operadic_genus(&self) -> usize {
        let t = &self.topology;
        let e = t.num_edges();
        let v = t.num_vertices();
        let extra: u32 = t.vertex_genus.iter().sum();
        e + 1 + extra as usize - v
    }

    pub fn num_legs(&self) -> usize {
        self.topology.legs.len()
    }

    pub fn valence(&self, v: usize) -> usize {
        self.cyclic_order[v].len()
    }

    /// Position of `h` in the cyclic order at its vertex.
    fn position(&self, h: usize) -> usize {
        let v = self.topology.vertex_of[h];
        self.cyclic_order[v].iter().position(|&x| x == h).unwrap()
    }

    /// Reflects vertex `v`: reverses its cyclic order and flips the colours
    /// of all half edges at `v`.  For dianalytic graphs colours are left
    /// untouched since they carry no meaning.
    pub fn reflect_vertex(&mut self, v: usize) {
        self.cyclic_order[v].reverse();
        if self.kind != GraphKind::Dianalytic {
            for &h in &self.cyclic_order[v] {
                self.colour[h] ^= 1;
            }
        }
    }

    /// Flips both colours of the internal edge `e` (the reduced-graph
    /// colour move).
    pub fn flip_edge_colours(&mut self, e: usize) {
        let (a, b) = self.topology.edges()[e];
        self.colour[a] ^= 1;
        self.colour[b] ^= 1;
    }

    /// Contracts the non-loop internal edge with id `e`.
    ///
    /// If the two half edges carry different colours the endpoint whose half
    /// edge is coloured 1 is reflected first, so the merged vertex is glued
    /// along colour-0 half edges.  Returns the contracted graph together
    /// with the map from old half-edge ids to new ones (contracted halves
    /// map to `usize::MAX`).
    pub fn contract_edge(&self, e: usize) -> Result<(MobiusGraph, Vec<usize>), GraphError> {
        let edges = self.topology.edges();
        let &(a, b) = edges.get(e).ok_or(GraphError::NotAnEdge(e))?;
        let va = self.topology.vertex_of[a];
        let vb = self.topology.vertex_of[b];
        if va == vb {
            return Err(GraphError::LoopContraction(e));
        }
        let mut g = self.clone();
        if g.kind != GraphKind::Dianalytic {
            if g.colour[a] == 1 {
                g.reflect_vertex(va);
            }
            if g.colour[b] == 1 {
                g.reflect_vertex(vb);
            }
        }
        // splice: rotate both vertices so the contracted halves sit first,
        // then concatenate the tails.
        let rot = |cyc: &[usize], h: usize| -> Vec<usize> {
            let p = cyc.iter().position(|&x| x == h).unwrap();
            let mut out = Vec::with_capacity(cyc.len());
            out.extend_from_slice(&cyc[p..]);
            out.extend_from_slice(&cyc[..p]);
            out
        };
        let ca = rot(&g.cyclic_order[va], a);
        let cb = rot(&g.cyclic_order[vb], b);
        let mut merged: Vec<usize> = Vec::with_capacity(ca.len() + cb.len() - 2);
        merged.extend_from_slice(&ca[1..]);
        merged.extend_from_slice(&cb[1..]);

        let keep_v: Vec<usize> = (0..g.topology.num_vertices())
            .filter(|&v| v != va && v != vb)
            .collect();
        let n = g.topology.num_half_edges();
        let mut half_map = vec![usize::MAX; n];
        let mut next = 0usize;
        let mut new_cyc: Vec<Vec<usize>> = Vec::new();
        let mut new_vertex_genus = Vec::new();
        // merged vertex comes first, then the survivors in old order
        let assign = |cyc: &[usize], half_map: &mut Vec<usize>, next: &mut usize| -> Vec<usize> {
            cyc.iter()
                .map(|&h| {
                    half_map[h] = *next;
                    *next += 1;
                    half_map[h]
                })
                .collect()
        };
        new_cyc.push(assign(&merged, &mut half_map, &mut next));
        new_vertex_genus.push(g.topology.vertex_genus[va] + g.topology.vertex_genus[vb]);
        for &v in &keep_v {
            new_cyc.push(assign(&g.cyclic_order[v], &mut half_map, &mut next));
            new_vertex_genus.push(g.topology.vertex_genus[v]);
        }
        let mut new_vertex_of = vec![usize::MAX; next];
        for (v, cyc) in new_cyc.iter().enumerate() {
            for &h in cyc {
                new_vertex_of[h] = v;
            }
        }
        let mut new_pairing: Vec<usize> = (0..next).collect();
        let mut new_colour = vec![0u8; next];
        for h in 0..n {
            let nh = half_map[h];
            if nh == usize::MAX {
                continue;
            }
            new_colour[nh] = g.colour[h];
            let p = g.topology.pairing[h];
            if p != h {
                let np = half_map[p];
                debug_assert_ne!(np, usize::MAX);
                new_pairing[nh] = np;
            }
        }
        let new_legs: Vec<usize> = g.topology.legs.iter().map(|&l| half_map[l]).collect();
        let out = MobiusGraph {
            topology: GraphTopology {
                vertex_of: new_vertex_of,
                pairing: new_pairing,
                vertex_genus: new_vertex_genus,
                legs: new_legs,
            },
            cyclic_order: new_cyc,
            colour: new_colour,
            kind: g.kind,
        };
        debug_assert!(out.validate().is_ok());
        Ok((out, half_map))
    }

    /// All expansions of vertex `v` into two vertices joined by a new edge,
    /// both of valence at least 3.  Splitting data: an ordered pair of gaps
    /// in the cyclic order at `v` cutting it into two arcs of length >= 2.
    ///
    /// Returns one graph per splitting, each with the id of the new edge and
    /// the half-edge relabelling map (old -> new).  Valence <= 3 yields the
    /// empty set.  The two new half edges are coloured 0.
    pub fn expansions_of_vertex(&self, v: usize) -> Vec<(MobiusGraph, usize, Vec<usize>)> {
        let k = self.valence(v);
        let mut out = Vec::new();
        if k < 4 || self.topology.vertex_genus[v] != 0 {
            return out;
        }
        let cyc = &self.cyclic_order[v];
        // gap g sits before cyc[g]; arcs [i..j) and [j..i) (cyclically)
        for i in 0..k {
            for d in 2..=(k - 2) {
                let j = (i + d) % k;
                if j < i {
                    continue; // count each unordered gap pair once
                }
                let arc1: Vec<usize> = (i..j).map(|t| cyc[t]).collect();
                let arc2: Vec<usize> = (0..(k - d)).map(|t| cyc[(j + t) % k]).collect();
                out.push(self.expand_at(v, &arc1, &arc2));
            }
        }
        out
    }

    /// Splits vertex `v` into (new-half-a, arc1) and (new-half-b, arc2).
    fn expand_at(&self, v: usize, arc1: &[usize], arc2: &[usize]) -> (MobiusGraph, usize, Vec<usize>) {
        let n = self.topology.num_half_edges();
        // new ids: old half edges keep their id, new halves are n and n+1
        let half_map: Vec<usize> = (0..n).collect();
        let ha = n;
        let hb = n + 1;
        let mut cyclic_order: Vec<Vec<usize>> = Vec::new();
        let mut vertex_genus: Vec<u32> = Vec::new();
        for (w, cyc) in self.cyclic_order.iter().enumerate() {
            if w == v {
                let mut c1 = vec![ha];
                c1.extend_from_slice(arc1);
                cyclic_order.push(c1);
                vertex_genus.push(0);
            } else {
                cyclic_order.push(cyc.clone());
                vertex_genus.push(self.topology.vertex_genus[w]);
            }
        }
        let mut c2 = vec![hb];
        c2.extend_from_slice(arc2);
        cyclic_order.push(c2);
        vertex_genus.push(0);

        let mut vertex_of = self.topology.vertex_of.clone();
        vertex_of.push(v); // ha
        vertex_of.push(cyclic_order.len() - 1); // hb
        for &h in arc2 {
            vertex_of[h] = cyclic_order.len() - 1;
        }
        let mut pairing = self.topology.pairing.clone();
        pairing.push(hb);
        pairing.push(ha);
        let mut colour = self.colour.clone();
        colour.push(0);
        colour.push(0);
        let g = MobiusGraph {
            topology: GraphTopology {
                vertex_of,
                pairing,
                vertex_genus,
                legs: self.topology.legs.clone(),
            },
            cyclic_order,
            colour,
            kind: self.kind,
        };
        debug_assert!(g.validate().is_ok());
        let edge_id = g.topology.edges().iter().position(|&(x, y)| (x, y) == (ha, hb)).unwrap();
        (g, edge_id, half_map)
    }

    /// Relabels the legs by a permutation: leg with label `i+1` gets label
    /// `perm[i]+1`.
    pub fn relabel_legs(&self, perm: &[usize]) -> MobiusGraph {
        assert_eq!(perm.len(), self.num_legs());
        let mut g = self.clone();
        for (i, &l) in self.topology.legs.iter().enumerate() {
            g.topology.legs[perm[i]] = l;
        }
        g
    }

    /// Cyclic successor of `h` at its vertex.
    pub fn next(&self, h: usize) -> usize {
        let v = self.topology.vertex_of[h];
        let cyc = &self.cyclic_order[v];
        let p = self.position(h);
        cyc[(p + 1) % cyc.len()]
    }

    /// Cyclic predecessor of `h` at its vertex.
    pub fn prev(&self, h: usize) -> usize {
        let v = self.topology.vertex_of[h];
        let cyc = &self.cyclic_order[v];
        let p = self.position(h);
        cyc[(p + cyc.len() - 1) % cyc.len()]
    }
}

/// Validates a graph, reporting the first violated invariant.
pub fn validate_graph(g: &MobiusGraph) -> Result<(), GraphError> {
    g.validate()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn three_leg_corolla() -> MobiusGraph {
        MobiusGraph::corolla(GraphKind::Ribbon, vec![0, 1, 2], &[], vec![0, 1, 2], vec![0; 3])
            .unwrap()
    }

    #[test]
    fn corolla_is_valid_and_genus_zero() {
        let g = three_leg_corolla();
        assert_eq!(g.operadic_genus(), 0);
        assert_eq!(g.num_legs(), 3);
    }

    #[test]
    fn non_involutive_pairing_rejected() {
        // pairing h0 -> h1 but h1 -> h2 cannot even be expressed through
        // `new`, so poke the raw struct.
        let mut g = three_leg_corolla();
        g.topology.pairing = vec![1, 2, 0];
        g.topology.legs = vec![];
        assert_eq!(g.validate(), Err(GraphError::NonInvolutivePairing));
    }

    #[test]
    fn disconnected_rejected() {
        let g = MobiusGraph::new(
            GraphKind::Ribbon,
            vec![0, 0],
            vec![vec![0, 1, 2], vec![3, 4, 5]],
            &[],
            vec![0, 1, 2, 3, 4, 5],
            vec![0; 6],
        );
        assert_eq!(g.unwrap_err(), GraphError::DisconnectedGraph);
    }

    #[test]
    fn coloured_ribbon_rejected() {
        let g = MobiusGraph::corolla(GraphKind::Ribbon, vec![0, 1, 2], &[], vec![0, 1, 2], vec![0, 1, 0]);
        assert_eq!(g.unwrap_err(), GraphError::ColouredRibbon);
    }

    #[test]
    fn genus_of_two_loops() {
        // one vertex, two loops, one leg
        let g = MobiusGraph::corolla(
            GraphKind::Ribbon,
            vec![0, 2, 1, 3, 4],
            &[(0, 2), (1, 3)],
            vec![4],
            vec![0; 5],
        )
        .unwrap();
        assert_eq!(g.operadic_genus(), 2);
    }

    #[test]
    fn genus_additive_on_trees() {
        let g = MobiusGraph::new(
            GraphKind::Ribbon,
            vec![1, 2],
            vec![vec![0, 1, 2], vec![3, 4, 5]],
            &[(2, 3)],
            vec![0, 1, 4, 5],
            vec![0; 6],
        )
        .unwrap();
        assert_eq!(g.operadic_genus(), 3);
    }

    #[test]
    fn contract_two_corollas_glued() {
        // two 3-valent ribbon corollas joined by one edge -> 4-leg corolla
        let g = MobiusGraph::new(
            GraphKind::Ribbon,
            vec![0, 0],
            vec![vec![0, 1, 2], vec![3, 4, 5]],
            &[(2, 3)],
            vec![0, 1, 4, 5],
            vec![0; 6],
        )
        .unwrap();
        let (c, _) = g.contract_edge(0).unwrap();
        assert_eq!(c.topology.num_vertices(), 1);
        assert_eq!(c.num_legs(), 4);
        assert_eq!(c.topology.num_edges(), 0);
        // spliced order: at v0 rotate to (2,0,1), at v1 rotate to (3,4,5);
        // merged = (0,1,4,5) in old labels, i.e. legs 1,2,3,4 in order.
        let labels: Vec<usize> = c.cyclic_order[0]
            .iter()
            .map(|&h| c.topology.legs.iter().position(|&l| l == h).unwrap() + 1)
            .collect();
        assert_eq!(labels, vec![1, 2, 3, 4]);
    }

    #[test]
    fn mixed_colour_contraction_matches_paper_tree() {
        // The two-vertex Möbius tree displayed before the MAss definition:
        // v0 carries legs 1 (colour 0), 2 (colour 1) and the edge half h2
        // (colour 0); v1 carries the edge half h3 (colour 1), leg 3
        // (colour 0) and the output leg 4 (colour 1).  Contraction gives a
        // corolla with legs cyclically reordered and recoloured.
        let g = MobiusGraph::new(
            GraphKind::Mobius,
            vec![0, 0],
            vec![vec![0, 1, 2], vec![3, 4, 5]],
            &[(2, 3)],
            vec![0, 1, 4, 5],
            vec![0, 1, 0, 1, 0, 1],
        )
        .unwrap();
        let (c, hm) = g.contract_edge(0).unwrap();
        assert_eq!(c.topology.num_vertices(), 1);
        assert_eq!(c.num_legs(), 4);
        // v1's half was coloured 1, so v1 was reflected: its legs flip
        // colour and reverse order.  legs 3 (was 0) and 4 (was 1):
        assert_eq!(c.colour[hm[4]], 1);
        assert_eq!(c.colour[hm[5]], 0);
        // v0 untouched
        assert_eq!(c.colour[hm[0]], 0);
        assert_eq!(c.colour[hm[1]], 1);
    }

    #[test]
    fn loop_contraction_rejected() {
        let g = MobiusGraph::corolla(
            GraphKind::Ribbon,
            vec![0, 1, 2],
            &[(0, 1)],
            vec![2],
            vec![0; 3],
        )
        .unwrap();
        assert!(matches!(g.contract_edge(0), Err(GraphError::LoopContraction(0))));
        assert!(matches!(g.contract_edge(7), Err(GraphError::NotAnEdge(7))));
    }

    #[test]
    fn four_valent_corolla_has_two_expansions() {
        let g = MobiusGraph::corolla(GraphKind::Ribbon, vec![0, 1, 2, 3], &[], vec![0, 1, 2, 3], vec![0; 4])
            .unwrap();
        let ex = g.expansions_of_vertex(0);
        assert_eq!(ex.len(), 2);
        for (h, e, _) in &ex {
            assert_eq!(h.topology.num_vertices(), 2);
            let (back, _) = h.contract_edge(*e).unwrap();
            assert_eq!(back.topology.num_vertices(), 1);
        }
    }

    #[test]
    fn three_valent_vertex_has_no_expansion() {
        let g = three_leg_corolla();
        assert!(g.expansions_of_vertex(0).is_empty());
    }

    #[test]
    fn five_valent_corolla_has_five_expansions() {
        let g = MobiusGraph::corolla(
            GraphKind::Mobius,
            vec![0, 1, 2, 3, 4],
            &[],
            vec![0, 1, 2, 3, 4],
            vec![0; 5],
        )
        .unwrap();
        assert_eq!(g.expansions_of_vertex(0).len(), 5);
    }
}
