use mobius_core::complex::{build_dianalytic_complex, build_graph_complex, forget_colors_chain_map};
use mobius_core::enumerate::EnumerationRequest;
use mobius_core::graph::GraphKind;
use mobius_core::linalg::{q_int, Q, SparseMat};
use mobius_core::orient::{orientation_sign, OrientationData};
use mobius_core::surface::TopologicalType;
use mobius_core::trees::{tree_to_graph, PTree};
use num::traits::Zero;

fn leaf(l: u8) -> PTree { PTree::Leaf(l) }
fn node(ch: Vec<PTree>) -> PTree { PTree::Node(ch) }

#[test]
fn t_lift_oracle() {
    let dia = build_dianalytic_complex(0, 5).unwrap();
    let rib = build_graph_complex(&EnumerationRequest {
        kind: GraphKind::Ribbon,
        ttype: TopologicalType { g: 0, u: 0, h: 1, n: 5 },
        reduced: true,
    })
    .unwrap();
    let q = forget_colors_chain_map(&rib, &dia).unwrap();
    // build T in the dianalytic degree-1 space
    let terms: Vec<(PTree, i64)> = vec![
        (node(vec![leaf(1), leaf(2), node(vec![leaf(3), leaf(4)])]), 1),
        (node(vec![leaf(2), leaf(1), node(vec![leaf(3), leaf(4)])]), -1),
        (node(vec![leaf(2), node(vec![leaf(1), leaf(3), leaf(4)])]), 1),
        (node(vec![leaf(1), node(vec![leaf(2), leaf(3), leaf(4)])]), -1),
        (node(vec![leaf(1), node(vec![leaf(2), leaf(3)]), leaf(4)]), 1),
        (node(vec![leaf(2), node(vec![leaf(1), leaf(3)]), leaf(4)]), -1),
        (node(vec![node(vec![leaf(2), leaf(1), leaf(3)]), leaf(4)]), 1),
        (node(vec![node(vec![leaf(1), leaf(2), leaf(3)]), leaf(4)]), -1),
    ];
    let mut t = vec![Q::zero(); dia.basis[1].len()];
    for (k, (tree, coeff)) in terms.iter().enumerate() {
        let g = tree_to_graph(tree, GraphKind::Dianalytic, 0);
        let data = OrientationData { edge_order: vec![0], cycles: vec![] };
        for (i, class) in dia.basis[1].iter().enumerate() {
            if let Ok(s) = orientation_sign(&g, &data, class, true) {
                let twist = if k % 2 == 1 { -1 } else { 1 };
                t[i] += q_int(coeff * twist * s);
                break;
            }
        }
    }
    let dt = dia.boundary[1].apply(&t);
    assert!(dt.iter().all(|x| x.is_zero()), "dT != 0");
    // solve: x in ribbon degree 1 with d_rib(x) = 0 and q(x) = T
    let nrib = rib.basis[1].len();
    let rows_d = rib.basis[2].len();
    let rows_q = dia.basis[1].len();
    let mut m = SparseMat::zero(rows_d + rows_q, nrib);
    for (j, col) in rib.boundary[1].cols.iter().enumerate() {
        for (&i, v) in col {
            m.add_to(i, j, v.clone());
        }
    }
    for (j, col) in q[1].cols.iter().enumerate() {
        for (&i, v) in col {
            m.add_to(rows_d + i, j, v.clone());
        }
    }
    let mut rhs = vec![Q::zero(); rows_d + rows_q];
    for (i, v) in t.iter().enumerate() {
        rhs[rows_d + i] = v.clone();
    }
    let liftable = m.solve(&rhs).is_some();
    println!("T liftable to a ribbon cycle: {liftable}");
    println!("T exact in dianalytic: {}", dia.boundary[0].in_image(&t));
    // ribbon homology for reference
    let rr = rib.homology_ranks().unwrap();
    println!("ribbon Betti {:?}", rr.betti);
    let dr = dia.homology_ranks().unwrap();
    println!("dianalytic Betti {:?}", dr.betti);
}
