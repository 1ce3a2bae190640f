use proptest::prelude::*;
use tgs_core::linalg::{add, is_zero, scale, unit, zeros, Vector};
use tgs_core::space::{angle_from_name, angle_name, SpaceKind, SpaceModel};
use tgs_core::Scalar;

use std::sync::OnceLock;

fn model(k: SpaceKind) -> &'static SpaceModel {
    static M: OnceLock<Vec<SpaceModel>> = OnceLock::new();
    let all = M.get_or_init(|| SpaceKind::all().into_iter().map(|k| SpaceModel::build_kind(k).unwrap()).collect());
    all.iter().find(|m| m.kind == k).unwrap()
}

fn a(x: i64, y: i64, n: usize) -> Vector {
    let mut v = zeros(n);
    v[0] = Scalar::int(x);
    v[1] = Scalar::int(y);
    v
}

#[test]
fn dimensions_and_multiplicities() {
    let expect = [
        (SpaceKind::EIII, 32, 46, vec![8, 8, 6, 6, 1, 1], "1/48"),
        (SpaceKind::EIV, 26, 52, vec![8, 8, 8], "1/24"),
        (SpaceKind::G2Group, 14, 0, vec![2; 6], "1/12"),
    ];
    for (k, m, kk, mult, c) in expect {
        let sp = model(k);
        assert_eq!(sp.dim_m(), m, "{}", k.name());
        assert_eq!(sp.dim_k(), kk, "{}", k.name());
        assert_eq!(sp.restricted.mult, mult, "{}", k.name());
        assert_eq!(sp.metric_scale.to_string(), c);
        assert_eq!(sp.dim_m() - 2, sp.restricted.mult.iter().sum::<usize>());
    }
}

#[test]
fn sigma_is_an_involutive_automorphism() {
    for k in [SpaceKind::EIII, SpaceKind::EIV] {
        model(k).check_sigma().unwrap();
    }
}

#[test]
fn sigma_orbits() {
    let (o, f) = model(SpaceKind::EIII).sigma_orbit_report();
    assert_eq!((o.len(), f.len()), (16, 6));
    let (o, f) = model(SpaceKind::EIV).sigma_orbit_report();
    assert_eq!((o.len(), f.len()), (12, 12));
}

#[test]
fn shortest_roots_have_length_one() {
    for k in SpaceKind::all() {
        let sp = model(k);
        let min = sp
            .restricted
            .labels
            .iter()
            .map(|l| sp.norm_sq(&sp.sharp(l).unwrap()).as_rational().unwrap())
            .min()
            .unwrap();
        assert_eq!(min.to_string(), "1", "{}", k.name());
    }
}

#[test]
fn j_squares_to_minus_one_and_is_isometric() {
    let sp = model(SpaceKind::EIII);
    let n = sp.dim_m();
    for p in 0..n {
        let e = unit(n, p);
        let je = sp.apply_j(&e).unwrap();
        assert_eq!(sp.apply_j(&je).unwrap(), scale(&Scalar::int(-1), &e));
        assert_eq!(sp.norm_sq(&je), sp.norm_sq(&e));
    }
    assert!(model(SpaceKind::EIV).apply_j(&unit(26, 0)).is_err());
}

#[test]
fn j_permutes_root_spaces() {
    let sp = model(SpaceKind::EIII);
    let n = sp.dim_m();
    let labels_of = |v: &[Scalar]| -> Vec<Option<String>> {
        let mut ls: Vec<Option<String>> = (0..n).filter(|&p| !v[p].is_zero()).map(|p| sp.label_of_index(p).map(String::from)).collect();
        ls.dedup();
        ls
    };
    for (from, to) in [("l1", "l1"), ("l2", "l2"), ("l3", "l4"), ("l4", "l3")] {
        for p in sp.root_space(from) {
            let ls = labels_of(&sp.apply_j(&unit(n, p)).unwrap());
            assert!(ls.iter().all(|l| l.as_deref() == Some(to)), "{from}: {ls:?}");
        }
    }
    let ja = add(&sp.apply_j(&unit(n, 0)).unwrap(), &sp.apply_j(&unit(n, 1)).unwrap());
    for l in labels_of(&ja) {
        assert!(matches!(l.as_deref(), Some("2l1") | Some("2l2")), "{l:?}");
    }
}

#[test]
fn isotropy_angles() {
    let sp = model(SpaceKind::EIII);
    let l2 = sp.sharp("l2").unwrap();
    assert_eq!(sp.isotropy_angle(&l2).unwrap().name, Some("0"));
    let l4 = scale(&Scalar::sqrt_int(2).unwrap().inv().unwrap(), &sp.sharp("l4").unwrap());
    assert_eq!(sp.isotropy_angle(&l4).unwrap().name, Some("pi/4"));
    let g = model(SpaceKind::G2Group);
    let d = g.isotropy_angle(&a(9, 5, 14)).unwrap();
    assert_eq!(d.tan_sq, Scalar::frac(1, 27));
    assert_eq!(d.name, Some("arctan(1/(3*sqrt(3)))"));
    let e = model(SpaceKind::EIV);
    assert_eq!(e.isotropy_angle(&e.sharp("l1").unwrap()).unwrap().name, Some("pi/6"));
    assert!(sp.isotropy_angle(&zeros(32)).is_err());
}

#[test]
fn angle_names_round_trip() {
    for n in ["0", "pi/6", "pi/4", "pi/3", "arctan(1/2)", "arctan(1/3)", "arctan(1/(3*sqrt(3)))"] {
        assert_eq!(angle_name(&angle_from_name(n).unwrap()), Some(n));
    }
    assert_eq!(angle_from_name("pi/5"), None);
}

#[test]
fn curvature_of_a_vanishes() {
    for k in SpaceKind::all() {
        let sp = model(k);
        let n = sp.dim_m();
        assert!(is_zero(&sp.curvature(&a(1, 0, n), &a(0, 1, n), &a(3, -2, n))));
    }
}

fn index_triple(n: usize) -> impl Strategy<Value = (usize, usize, usize, usize)> {
    (0..n, 0..n, 0..n, 0..n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn curvature_symmetries_eiii((i, j, k, l) in index_triple(32)) {
        curvature_symmetries(SpaceKind::EIII, i, j, k, l)?;
    }

    #[test]
    fn curvature_symmetries_eiv((i, j, k, l) in index_triple(26)) {
        curvature_symmetries(SpaceKind::EIV, i, j, k, l)?;
    }

    #[test]
    fn curvature_symmetries_g2((i, j, k, l) in index_triple(14)) {
        curvature_symmetries(SpaceKind::G2Group, i, j, k, l)?;
    }
}

fn curvature_symmetries(kind: SpaceKind, i: usize, j: usize, k: usize, l: usize) -> Result<(), TestCaseError> {
    let sp = model(kind);
    let n = sp.dim_m();
    let (x, y, z, w) = (unit(n, i), unit(n, j), unit(n, k), unit(n, l));
    let r = |a: &[Scalar], b: &[Scalar], c: &[Scalar]| sp.curvature(a, b, c);
    prop_assert_eq!(r(&x, &y, &z), scale(&Scalar::int(-1), &r(&y, &x, &z)));
    prop_assert_eq!(sp.inner(&r(&x, &y, &z), &w), sp.inner(&r(&z, &w, &x), &y));
    let b = add(&add(&r(&x, &y, &z), &r(&y, &z, &x)), &r(&z, &x, &y));
    prop_assert!(is_zero(&b));
    Ok(())
}

#[test]
fn unknown_space_is_rejected() {
    assert!(SpaceKind::parse("EVIII").is_err());
    assert_eq!(SpaceKind::parse("EIII").unwrap(), SpaceKind::EIII);
}
