use tgs_core::identities::curvature_identities;
use tgs_core::space::{SpaceKind, SpaceModel, G2_PHASES};
use tgs_core::Scalar;

#[test]
fn g2_identities_hold_exactly() {
    let sp = SpaceModel::build_kind(SpaceKind::G2Group).unwrap();
    let fams = curvature_identities(&sp).unwrap();
    assert_eq!(fams.len(), 1);
    assert_eq!(fams[0].members.len(), 14);
    for m in &fams[0].members {
        assert!(m.exact, "{}", m.name);
        assert!(m.phase_invariant(), "{}", m.name);
    }
    assert_eq!(G2_PHASES[0], (2, false));
    assert_eq!(G2_PHASES[5], (2, false));
}

#[test]
fn g2_identities_need_the_frozen_phases() {
    let sp = SpaceModel::build_with_phases(SpaceKind::G2Group, &[tgs_core::space::Phase::new(0, false); 6]).unwrap();
    let fams = curvature_identities(&sp).unwrap();
    assert!(!fams[0].exact());
    assert!(fams[0].phase_invariant());
}

// Measured values: the EIII coefficients come out 8 times the quoted ones.
#[test]
fn eiii_identities_measured() {
    let sp = SpaceModel::build_kind(SpaceKind::EIII).unwrap();
    let fams = curvature_identities(&sp).unwrap();
    assert_eq!(fams.len(), 6);
    for f in &fams {
        assert!(f.subspace(), "{}", f.name);
        assert!(!f.exact());
        for m in f.members.iter().filter(|m| !m.exact) {
            assert_eq!(m.norm_ratio, Scalar::int(64), "{} {}", f.name, m.name);
        }
    }
    let uf = |k: usize| fams[k].uniform_factor();
    assert_eq!(uf(0), Some(Scalar::int(8)));
    assert_eq!(uf(2), Some(Scalar::int(-8)));
    assert_eq!(uf(4), Some(Scalar::int(8)));
    assert_eq!(uf(5), Some(Scalar::int(8)));
    for f in [&fams[1], &fams[3]] {
        assert_eq!(f.members.iter().filter(|m| m.exact).count(), 48);
    }
    for m in fams[3].members.iter().filter(|m| !m.exact) {
        assert_eq!(m.factor, Some(Scalar::int(8)));
    }
    // The a-part of R(l1#, v) w has factor 8, the M_2l1 part factor -8.
    let signs: Vec<i64> = fams[1].members.iter().filter(|m| !m.exact).map(|m| if m.factor == Some(Scalar::int(8)) { 1 } else { -1 }).collect();
    assert_eq!(signs.iter().filter(|&&s| s == 1).count(), 8);
    assert_eq!(signs.len(), 16);
}

#[test]
fn eiv_identities_measured() {
    let sp = SpaceModel::build_kind(SpaceKind::EIV).unwrap();
    let fams = curvature_identities(&sp).unwrap();
    assert!(fams[0].subspace());
    assert_eq!(fams[0].uniform_factor(), Some(&Scalar::int(-2) * &Scalar::sqrt_int(2).unwrap()));
    for m in &fams[0].members {
        assert_eq!(m.norm_ratio, Scalar::int(8));
    }
}
