use tgs_core::roots::{RestrictedRootSystem, RootSystem};

const E6_POSITIVE: [[i64; 6]; 36] = [
    [1, 0, 0, 0, 0, 0],
    [0, 1, 0, 0, 0, 0],
    [0, 0, 1, 0, 0, 0],
    [0, 0, 0, 1, 0, 0],
    [0, 0, 0, 0, 1, 0],
    [0, 0, 0, 0, 0, 1],
    [1, 0, 1, 0, 0, 0],
    [0, 1, 0, 1, 0, 0],
    [0, 0, 1, 1, 0, 0],
    [0, 0, 0, 1, 1, 0],
    [0, 0, 0, 0, 1, 1],
    [1, 0, 1, 1, 0, 0],
    [0, 1, 1, 1, 0, 0],
    [0, 1, 0, 1, 1, 0],
    [0, 0, 1, 1, 1, 0],
    [0, 0, 0, 1, 1, 1],
    [1, 1, 1, 1, 0, 0],
    [1, 0, 1, 1, 1, 0],
    [0, 1, 1, 1, 1, 0],
    [0, 1, 0, 1, 1, 1],
    [0, 0, 1, 1, 1, 1],
    [1, 1, 1, 1, 1, 0],
    [1, 0, 1, 1, 1, 1],
    [0, 1, 1, 1, 1, 1],
    [0, 1, 1, 2, 1, 0],
    [1, 1, 1, 1, 1, 1],
    [1, 1, 1, 2, 1, 0],
    [0, 1, 1, 2, 1, 1],
    [1, 1, 1, 2, 1, 1],
    [1, 1, 2, 2, 1, 0],
    [0, 1, 1, 2, 2, 1],
    [1, 1, 1, 2, 2, 1],
    [1, 1, 2, 2, 1, 1],
    [1, 1, 2, 2, 2, 1],
    [1, 1, 2, 3, 2, 1],
    [1, 2, 2, 3, 2, 1],
];

#[test]
fn e6_positive_roots_in_canonical_order() {
    let rs = RootSystem::of_type("E6").unwrap();
    assert_eq!(rs.positives.len(), 36);
    for (k, r) in E6_POSITIVE.iter().enumerate() {
        assert_eq!(rs.positives[k].as_slice(), r, "alpha_{}", k + 1);
    }
}

#[test]
fn root_counts() {
    for (name, n) in [("A1", 1), ("A2", 3), ("A5", 15), ("B2", 4), ("C3", 9), ("D5", 20), ("E6", 36), ("F4", 24), ("G2", 6)] {
        assert_eq!(RootSystem::of_type(name).unwrap().positives.len(), n, "{name}");
    }
}

#[test]
fn g2_highest_root_and_lengths() {
    let rs = RootSystem::of_type("G2").unwrap();
    assert_eq!(rs.highest_root(), vec![3, 2]);
    assert_eq!(rs.inner(&[1, 0], &[1, 0]) * 3, rs.inner(&[0, 1], &[0, 1]));
}

#[test]
fn a1_single_root() {
    let rs = RootSystem::of_type("A1").unwrap();
    assert_eq!(rs.positives, vec![vec![1]]);
}

#[test]
fn non_finite_cartan_rejected() {
    assert!(RootSystem::from_cartan(vec![vec![2, -3], vec![-2, 2]]).is_err());
}

#[test]
fn reflections_are_involutions() {
    let rs = RootSystem::of_type("E6").unwrap();
    for r in rs.all_roots() {
        for a in &rs.positives {
            let s = rs.reflect_root(&r, a);
            assert!(rs.is_root(&s));
            assert_eq!(rs.reflect_root(&s, a), r);
        }
    }
}

#[test]
fn closed_subsystems() {
    let rs = RootSystem::of_type("A2").unwrap();
    let a1 = vec![vec![1, 0], vec![-1, 0]];
    assert!(rs.is_closed_subsystem(&a1).unwrap());
    let not_closed = vec![vec![1, 0], vec![-1, 0], vec![0, 1], vec![0, -1]];
    assert!(!rs.is_closed_subsystem(&not_closed).unwrap());
    assert!(rs.is_closed_subsystem(&[vec![2, 0]]).is_err());
}

#[test]
fn restricted_systems() {
    let bc2 = RestrictedRootSystem::bc2([8, 6, 8, 6, 1, 1]);
    assert_eq!(bc2.all_roots().len(), 12);
    assert_eq!(bc2.weyl_group().len(), 8);
    let g2 = RestrictedRootSystem::g2(2);
    assert_eq!(g2.weyl_group().len(), 12);
    let a2 = RestrictedRootSystem::a2(8);
    assert_eq!(a2.weyl_group().len(), 6);
}
