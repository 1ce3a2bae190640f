use proptest::prelude::*;
use tgs_core::lts::{format_vector, parse_a_expr, parse_subspace_text, parse_vector, subspace_from_lines};
use tgs_core::space::{SpaceKind, SpaceModel};
use tgs_core::Scalar;

use std::sync::OnceLock;

fn eiii() -> &'static SpaceModel {
    static M: OnceLock<SpaceModel> = OnceLock::new();
    M.get_or_init(|| SpaceModel::build_kind(SpaceKind::EIII).unwrap())
}

fn g2() -> &'static SpaceModel {
    static M: OnceLock<SpaceModel> = OnceLock::new();
    M.get_or_init(|| SpaceModel::build_kind(SpaceKind::G2Group).unwrap())
}

#[test]
fn scalar_literals() {
    let s = |t: &str| Scalar::parse(t).unwrap();
    assert_eq!(s("3/4*sqrt(3)"), &Scalar::frac(3, 4) * &Scalar::sqrt_int(3).unwrap());
    assert_eq!(s("sqrt(8)"), &Scalar::int(2) * &Scalar::sqrt_int(2).unwrap());
    assert_eq!(s("-i"), -&Scalar::i());
    assert_eq!(s("2i + 1"), &Scalar::one() + &(&Scalar::int(2) * &Scalar::i()));
    assert_eq!(s("1/sqrt(3)"), &Scalar::sqrt_int(3).unwrap() * &Scalar::frac(1, 3));
    assert!(Scalar::parse("sqrt(11)").is_err());
    assert!(Scalar::parse("1/0").is_err());
    assert!(Scalar::parse("(1").is_err());
    assert!(Scalar::parse("").is_err());
}

#[test]
fn scalar_display_round_trip() {
    for t in ["0", "1", "-1/2", "3/4*sqrt(3)", "i", "1 - 2*i*sqrt(5)", "sqrt(2) + sqrt(3) + sqrt(6)"] {
        let v = Scalar::parse(t).unwrap();
        assert_eq!(Scalar::parse(&v.to_string()).unwrap(), v, "{t}");
    }
}

#[test]
fn vector_terms() {
    let sp = eiii();
    let v = parse_vector(sp, "M[l1](1,0,0,0) - 2*M[2l2](1) + a(1/2, 0) + (sqrt(2))*H[l3](1)").unwrap();
    assert_eq!(v[0], Scalar::frac(1, 2));
    assert_eq!(format_vector(sp, &parse_vector(sp, &format_vector(sp, &v)).unwrap()), format_vector(sp, &v));
    assert!(parse_vector(sp, "M[l9](1)").is_err());
    assert!(parse_vector(sp, "M[l1](1,0)").is_err());
    assert!(parse_vector(sp, "M[2l1](i)").is_err());
    assert!(parse_vector(sp, "Q(1)").is_err());
}

#[test]
fn subspace_files() {
    let (k, lines) = parse_subspace_text("# flat\nspace G2group\nV[l1](1)\n\nV[l2](1)\n").unwrap();
    assert_eq!(k, SpaceKind::G2Group);
    assert_eq!(subspace_from_lines(g2(), &lines).unwrap().dim(), 2);
    assert!(parse_subspace_text("V[l1](1)").is_err());
    assert!(parse_subspace_text("").is_err());
}

#[test]
fn a_expressions() {
    let sp = g2();
    let h = parse_a_expr(sp, "(9*l1 + 5*l2)/sqrt(21)").unwrap();
    let r = Scalar::sqrt_int(21).unwrap().inv().unwrap();
    assert_eq!(h[0], &Scalar::int(9) * &r);
    assert_eq!(h[1], &Scalar::int(5) * &r);
    let alt = parse_a_expr(sp, "(2*l2 + 3*l5)/sqrt(21)").unwrap();
    assert_eq!(alt, h);
    assert!(parse_a_expr(sp, "l1 + 1").is_err());
    assert!(parse_a_expr(sp, "l1*l2").is_err());
    assert!(parse_a_expr(sp, "l7").is_err());
}

fn coeff() -> impl Strategy<Value = Scalar> {
    (-3i64..=3, 1i64..=3, -3i64..=3).prop_map(|(a, b, c)| &Scalar::frac(a, b) + &(&Scalar::i() * &Scalar::int(c)))
}

proptest! {
    #[test]
    fn format_parse_round_trip(cs in prop::collection::vec(coeff(), 6), x in -4i64..4, y in -4i64..4) {
        let sp = g2();
        let mut v = sp.chart("l1", &[cs[0].clone()]).unwrap();
        for (k, l) in ["l2", "l3", "l4", "l5", "l6"].iter().enumerate() {
            v = tgs_core::linalg::add(&v, &sp.chart(l, &[cs[k + 1].clone()]).unwrap());
        }
        v[0] = Scalar::int(x);
        v[1] = Scalar::int(y);
        prop_assert_eq!(parse_vector(sp, &format_vector(sp, &v)).unwrap(), v);
    }
}
