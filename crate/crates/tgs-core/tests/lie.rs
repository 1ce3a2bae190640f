use tgs_core::lie::{build_chevalley, LieAlgebra};
use tgs_core::roots::RootSystem;

#[test]
fn chevalley_axioms_hold() {
    for name in ["A2", "B2", "G2", "A5", "D5", "F4", "E6"] {
        let sc = build_chevalley(&RootSystem::of_type(name).unwrap()).unwrap();
        sc.check_axioms().unwrap();
    }
}

#[test]
fn compact_forms_satisfy_jacobi() {
    for (name, dim) in [("A1", 3), ("A2", 8), ("B2", 10), ("G2", 14), ("A5", 35), ("D5", 45), ("F4", 52), ("E6", 78)] {
        let g = LieAlgebra::of_type(name).unwrap();
        assert_eq!(g.dim(), dim, "{name}");
        g.check_jacobi().unwrap();
        assert!(g.killing_negative_definite(), "{name}");
    }
}

#[test]
fn g2_extraspecial_signs() {
    let sc = build_chevalley(&RootSystem::of_type("G2").unwrap()).unwrap();
    // N_{a1,a2} = 1, N_{a1,a1+a2} = 2, N_{a1,2a1+a2} = 3
    assert_eq!(sc.n(0, 1), 1);
    assert_eq!(sc.n(0, 2), 2);
    assert_eq!(sc.n(0, 3), 3);
}

#[test]
fn killing_trace_on_sl2() {
    // compact su(2): kappa(ih, ih) = -8 with h the coroot
    let g = LieAlgebra::of_type("A1").unwrap();
    assert_eq!(g.killing_basis(0, 0), -8);
    assert_eq!(g.killing_basis(1, 1), -8);
}
