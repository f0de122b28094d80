use mobius_algebra::ainf::odd_superalgebra;
use mobius_algebra::graded::{q_int, Q};
use mobius_algebra::qme::{sym_space, Poly};

#[test]
fn show_brackets() {
    let a = odd_superalgebra();
    let s = sym_space(&a).unwrap();
    println!("W degrees: {:?}", s.degrees);
    println!("B = {:?}", s.b.iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>());
    let show = |p: &Poly| -> String {
        p.terms.iter().map(|(m, c)| format!("{c}*{m:?}")).collect::<Vec<_>>().join(" + ")
    };
    for (x, y) in [(vec![0u16], vec![0u16, 1]), (vec![0u16], vec![0u16]), (vec![1u16], vec![1u16]), (vec![0u16], vec![1u16])] {
        let fx = Poly { terms: [(x.clone(), q_int(1))].into() };
        let fy = Poly { terms: [(y.clone(), q_int(1))].into() };
        let xy = s.bracket(&fx, &fy);
        let yx = s.bracket(&fy, &fx);
        println!("{{{x:?},{y:?}}} = {}   |||   {{{y:?},{x:?}}} = {}", show(&xy), show(&yx));
    }
    let _ = Q::zero();
}
