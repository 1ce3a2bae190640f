use proptest::prelude::*;
use tgs_core::cayley::*;
use tgs_core::Rational;

fn r(n: i64) -> Rational {
    Rational::int(n)
}

fn oct(c: [i64; 8]) -> Octonion {
    let v: Vec<Cx> = c.iter().map(|&x| Cx::real(r(x))).collect();
    Octonion::from_coords(&v)
}

// Independent integer Cayley-Dickson oracle over the quaternion basis 1, i, j, k.
fn qmul(a: [i64; 4], b: [i64; 4]) -> [i64; 4] {
    [
        a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3],
        a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2],
        a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1],
        a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0],
    ]
}

fn qconj(a: [i64; 4]) -> [i64; 4] {
    [a[0], -a[1], -a[2], -a[3]]
}

fn omul(x: [i64; 8], y: [i64; 8]) -> [i64; 8] {
    let h = |v: [i64; 8], k: usize| [v[4 * k], v[4 * k + 1], v[4 * k + 2], v[4 * k + 3]];
    let (x1, x2, y1, y2) = (h(x, 0), h(x, 1), h(y, 0), h(y, 1));
    let a = qmul(x1, y1);
    let b = qmul(qconj(y2), x2);
    let c = qmul(x2, qconj(y1));
    let d = qmul(y2, x1);
    [a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3], c[0] + d[0], c[1] + d[1], c[2] + d[2], c[3] + d[3]]
}

fn e(k: usize) -> [i64; 8] {
    let mut v = [0; 8];
    v[k] = 1;
    v
}

#[test]
fn basis_products_match_oracle() {
    for a in 0..8 {
        for b in 0..8 {
            assert_eq!(oct_mul(&Octonion::basis(a), &Octonion::basis(b)), oct(omul(e(a), e(b))), "e{a} e{b}");
        }
    }
}

#[test]
fn frozen_products() {
    let (i, j, ee) = (Octonion::basis(1), Octonion::basis(2), Octonion::e());
    assert_eq!(&i * &ee, Octonion::basis(5));
    assert_eq!(&ee * &i, -&Octonion::basis(5));
    assert_eq!(&i * &j, Octonion::basis(3));
    assert_eq!(&ee * &ee, -&Octonion::one());
    // (i e)(j e) against i ((e)(j e)): associator is nonzero.
    let ie = &i * &ee;
    let je = &j * &ee;
    assert_ne!(&ie * &je, &i * &(&ee * &je));
}

#[test]
fn imaginary_units_anticommute() {
    for a in 1..8 {
        let x = Octonion::basis(a);
        assert_eq!(&x * &x, -&Octonion::one());
        for b in 1..8 {
            if a != b {
                let y = Octonion::basis(b);
                assert_eq!(&x * &y, -&(&y * &x));
            }
        }
    }
}

#[test]
fn eiii_membership() {
    assert!(eiii_member(&JordanElement::p0()).unwrap());
    assert!(eiii_member(&JordanElement::diag([0, 0, 1])).unwrap());
    assert!(!eiii_member(&JordanElement::diag([1, 1, 0])).unwrap());
    assert!(eiii_member(&JordanElement::zero()).is_err());
    // z = w w* for w = (1, i, 0) gives a rank-one element.
    let mut z = JordanElement::diag([1, 1, 0]);
    z.x[2] = Octonion::basis(1);
    assert!(eiii_member(&z).unwrap(), "{:?}", eiii_equations(&z));
    let mut bad = z.clone();
    bad.x[2] = Octonion::basis(1).scale(&Cx::real(r(2)));
    assert_eq!(eiii_equations(&bad), [true, true, false, true, true, true]);
}

#[test]
fn involutions_fix_base_point() {
    let p = ProjPoint::p0();
    assert_eq!(p.lambda().unwrap(), p);
    assert_eq!(p.gamma().unwrap(), p);
    assert_eq!(p.sigma().unwrap(), p);
}

#[test]
fn g2_homomorphism() {
    let g1 = Quaternion::rational([Rational::new(3, 5), Rational::new(4, 5), r(0), r(0)]);
    assert!(phi_g2_is_automorphism(&g1, &Quaternion::one()).unwrap());
    let k = phi_g2_kernel();
    assert_eq!(k.len(), 2);
    for (a, b) in &k {
        assert_eq!(a, b);
        assert!(*a == Quaternion::one() || *a == -&Quaternion::one());
    }
    let half = Quaternion::ints([1, 1, 0, 0], 2);
    assert!(phi_g2(&half, &Quaternion::one(), &Octonion::one()).is_err());
}

#[test]
fn so5_diagonal_in_u5() {
    // diag(B, B^-1) lies in U(5) exactly for the involutions B, not only for B = id.
    let (ident, invol, n) = so5_diag_in_u5();
    assert!(!ident);
    assert!(invol);
    assert_eq!(n, 13);
}

#[test]
fn all_models_verify() {
    let checks = verify_models(7).unwrap();
    assert_eq!(checks.len(), 29);
    for c in &checks {
        assert!(c.passed, "{}: {}", c.name, c.detail);
    }
}

fn small() -> impl Strategy<Value = [i64; 8]> {
    prop::array::uniform8(-5i64..=5)
}

proptest! {
    #[test]
    fn product_matches_oracle(x in small(), y in small()) {
        prop_assert_eq!(&oct(x) * &oct(y), oct(omul(x, y)));
    }

    #[test]
    fn alternative_laws(x in small(), y in small()) {
        let (x, y) = (oct(x), oct(y));
        prop_assert_eq!(&x * &(&x * &y), &(&x * &x) * &y);
        prop_assert_eq!(&(&y * &x) * &x, &y * &(&x * &x));
        prop_assert_eq!(&(&x * &y) * &x, &x * &(&y * &x));
    }

    #[test]
    fn norm_is_multiplicative(x in small(), y in small()) {
        let (x, y) = (oct(x), oct(y));
        prop_assert_eq!((&x * &y).norm(), &x.norm() * &y.norm());
    }

    #[test]
    fn conjugation_reverses_products(x in small(), y in small()) {
        let (x, y) = (oct(x), oct(y));
        prop_assert_eq!((&x * &y).conj(), &y.conj() * &x.conj());
    }
}
