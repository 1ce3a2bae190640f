use proptest::prelude::*;
use tgs_core::catalog::*;
use tgs_core::linalg::zeros;
use tgs_core::lts::is_lts;
use tgs_core::space::{SpaceKind, SpaceModel};
use tgs_core::{Error, Rational, Scalar};

const SEED: u64 = 7;

#[test]
fn g2_catalog() {
    let sp = SpaceModel::build_kind(SpaceKind::G2Group).unwrap();
    let r = verify_catalog(&sp, SEED).unwrap();
    assert_eq!(r.families, 10);
    assert_eq!((r.count(Status::Pass), r.count(Status::Fail), r.count(Status::Skipped)), (24, 0, 0));
    assert_eq!(ambient_diagram(&sp).unwrap(), "2=>>2");
}

#[test]
fn eiv_catalog() {
    let sp = SpaceModel::build_kind(SpaceKind::EIV).unwrap();
    let r = verify_catalog(&sp, SEED).unwrap();
    assert_eq!(r.families, 7);
    assert_eq!((r.count(Status::Pass), r.count(Status::Fail), r.count(Status::Skipped)), (32, 0, 0));
    assert_eq!(ambient_diagram(&sp).unwrap(), "8-8");
}

#[test]
fn eiii_catalog() {
    let sp = SpaceModel::build_kind(SpaceKind::EIII).unwrap();
    let r = verify_catalog(&sp, SEED).unwrap();
    assert_eq!(r.families, 14);
    assert_eq!((r.count(Status::Pass), r.count(Status::Fail), r.count(Status::Skipped)), (50, 0, 3));
    for row in r.rows.iter().filter(|x| x.status == Status::Skipped) {
        assert!(row.expected.label.is_opaque(), "{}", row.expected.label);
    }
    assert_eq!(ambient_diagram(&sp).unwrap(), "6<=>8[1]");
}

#[test]
fn containments() {
    for (k, rows, pass, skip) in [(SpaceKind::G2Group, 20, 18, 2), (SpaceKind::EIV, 28, 28, 0), (SpaceKind::EIII, 66, 62, 4)] {
        let sp = SpaceModel::build_kind(k).unwrap();
        let r = verify_containments(&sp, SEED);
        let n = |s: Status| r.iter().filter(|x| x.status == s).count();
        assert_eq!((r.len(), n(Status::Pass), n(Status::Skipped), n(Status::Fail)), (rows, pass, skip, 0), "{}", k.name());
    }
}

#[test]
fn quarter_turn_witness() {
    let sp = SpaceModel::build_kind(SpaceKind::EIII).unwrap();
    let rows = verify_containments(&sp, SEED);
    let q: Vec<_> = rows.iter().filter(|r| matches!(r.method, Method::QuarterTurn(_))).collect();
    assert!(!q.is_empty());
    for r in q {
        assert_eq!(r.status, Status::Pass, "{}", r.certificate);
    }
}

#[test]
fn derived_catalogs() {
    let expect = [
        (SpaceKind::EIII, "(DIII)", 20, "4<=>4[1]", 13, 5),
        (SpaceKind::EIII, "(G2H4, (Sp2))", 10, "2=>2", 4, 5),
        (SpaceKind::EIV, "(AII)", 14, "4-4", 18, 3),
        (SpaceKind::EIV, "(A2)", 8, "2-2", 13, 1),
        (SpaceKind::G2Group, "(G)", 8, "1=>>1", 12, 1),
    ];
    for (k, host, dim, dg, pass, skip) in expect {
        let sp = SpaceModel::build_kind(k).unwrap();
        let r = derived_space_catalog(&sp, host, SEED).unwrap();
        assert_eq!((r.host_dim, r.host_diagram.as_str()), (dim, dg), "{host}");
        assert_eq!((r.count(Status::Pass), r.count(Status::Fail), r.count(Status::Skipped)), (pass, 0, skip), "{host}");
    }
    let sp = SpaceModel::build_kind(SpaceKind::G2Group).unwrap();
    assert!(derived_space_catalog(&sp, "(AI)", SEED).is_err());
}

#[test]
fn unit_lattice_and_geodesic_length() {
    let sp = SpaceModel::build_kind(SpaceKind::G2Group).unwrap();
    let b = unit_lattice_basis(&sp).unwrap();
    assert_eq!(b, [[Rational::int(4), Rational::ZERO], [Rational::ZERO, Rational::new(4, 3)]]);

    // Oracle: the lattice generators 4 l#/|l#|^2 and the basis span each other.
    let gens: Vec<[Rational; 2]> = sp
        .restricted
        .labels
        .iter()
        .map(|l| {
            let v = sp.sharp(l).unwrap();
            let f = &Rational::int(4) / &sp.norm_sq(&v).as_rational().unwrap();
            [&f * &v[0].as_rational().unwrap(), &f * &v[1].as_rational().unwrap()]
        })
        .collect();
    for g in &gens {
        let x = &g[0] / &b[0][0];
        let y = &g[1] / &b[1][1];
        assert!(x.is_integer() && y.is_integer());
    }

    let mut h = zeros(sp.dim_m());
    let r = Scalar::sqrt_int(21).unwrap().inv().unwrap();
    h[0] = &Scalar::int(9) * &r;
    h[1] = &Scalar::int(5) * &r;
    let t = geodesic_length(&sp, &h).unwrap();
    assert_eq!(t, &Scalar::frac(4, 3) * &Scalar::sqrt_int(21).unwrap());
    // t H = (12, 20/3) = 3 b1 + 5 b2 with gcd(3, 5) = 1.
    assert_eq!(&t * &h[0], Scalar::int(12));
    assert_eq!(&t * &h[1], Scalar::frac(20, 3));
}

#[test]
fn skew_sphere_curvature() {
    let sp = SpaceModel::build_kind(SpaceKind::G2Group).unwrap();
    let s = prototype_from_text(&sp, "(S, phi=arctan(1/(3*sqrt(3))), 3)").unwrap();
    assert!(is_lts(&sp, &s));
    assert_eq!(rank_one_root_norm(&sp, &s, SEED).unwrap(), Scalar::frac(3, 28));
}

#[test]
fn unit_lattice_is_g2_only() {
    let sp = SpaceModel::build_kind(SpaceKind::EIV).unwrap();
    assert!(matches!(unit_lattice_basis(&sp), Err(Error::Unsupported(_))));
}

#[test]
fn tables_parse() {
    for k in SpaceKind::all() {
        let rows = expected_rows(k).unwrap();
        assert!(!rows.is_empty());
        for r in &rows {
            assert_eq!(TypeLabel::parse(k, &r.label.to_string()).unwrap(), r.label);
        }
    }
    assert!(parse_table(SpaceKind::G2Group, "(Geo)\t1\n").is_err());
    assert!(TypeLabel::parse(SpaceKind::EIII, "P, phi=0").is_err());
    assert!(TypeLabel::parse(SpaceKind::EIII, "(P, phi=pi/5)").is_err());
}

#[test]
fn non_lts_is_detected() {
    let sp = SpaceModel::build_kind(SpaceKind::G2Group).unwrap();
    let s = tgs_core::lts::subspace_from_lines(&sp, &["V[l1](1)".to_string(), "V[l2](1)".to_string()]).unwrap();
    assert!(!is_lts(&sp, &s));
}

fn field() -> impl Strategy<Value = Field> {
    prop_oneof![Just(Field::R), Just(Field::C), Just(Field::H), Just(Field::O)]
}

fn param() -> impl Strategy<Value = Param> {
    prop_oneof![
        prop::sample::select(vec!["0", "pi/6", "pi/4", "pi/3", "arctan(1/2)", "arctan(1/3)", "arctan(1/(3*sqrt(3)))"])
            .prop_map(|n| Param::Angle(tgs_core::space::angle_from_name(n).unwrap())),
        (1usize..20).prop_map(Param::Int),
        field().prop_map(Param::Field),
        (field(), 1usize..9).prop_map(|(k, l)| Param::Pair(k, l)),
        (1usize..9).prop_map(Param::Sphere),
        field().prop_map(Param::Plane),
        Just(Param::Word("tau".to_string())),
    ]
}

proptest! {
    #[test]
    fn type_label_round_trip(fam in "[A-Z][A-Za-z0-9]{0,5}", params in prop::collection::vec(param(), 0..4)) {
        let l = TypeLabel::new(SpaceKind::EIII, &fam, params);
        prop_assert_eq!(TypeLabel::parse(SpaceKind::EIII, &l.to_string()).unwrap(), l);
    }
}
