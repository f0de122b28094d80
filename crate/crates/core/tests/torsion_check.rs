use mobius_core::complex::build_dianalytic_complex;
use mobius_core::graph::GraphKind;
use mobius_core::linalg::{q_int, Q};
use mobius_core::orient::{orientation_sign, OrientationData};
use mobius_core::trees::{tree_to_graph, PTree};
use num::traits::Zero;

fn leaf(l: u8) -> PTree { PTree::Leaf(l) }
fn node(ch: Vec<PTree>) -> PTree { PTree::Node(ch) }

#[test]
fn t_is_two_torsion() {
    let dia = build_dianalytic_complex(0, 5).unwrap();
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
    let y = dia.boundary[0].solve(&t).expect("rationally exact");
    // the boundary map is injective (rank 12), so y is unique; print its
    // denominators
    let denoms: Vec<String> = y.iter().map(|v| v.denom().to_string()).collect();
    println!("solution denominators: {:?}", denoms);
    let max_denom = y.iter().map(|v| v.denom().clone()).max().unwrap();
    println!("max denominator: {max_denom}");
}
