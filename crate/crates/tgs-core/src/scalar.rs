//! Exact elements of the field Q(i, sqrt2, sqrt3, sqrt5, sqrt7).
//!
//! A scalar is a sum of terms `c_d * sqrt(d)` with `d` a squarefree divisor of
//! 210 and `c_d` a Gaussian rational. The sixteen radicals are linearly
//! independent over Q(i), so the canonical form (sorted keys, no zero
//! coefficients) decides equality.

use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::Zero;

use crate::rational::{isqrt_exact, Rational};
use crate::Error;

/// The primes whose square roots generate the field, indexed by key bit.
pub const PRIMES: [i64; 4] = [2, 3, 5, 7];

/// Radicand encoded by a key (bit k set means PRIMES[k] divides it).
pub fn radicand(key: u8) -> i64 {
    let mut d = 1;
    for (k, p) in PRIMES.iter().enumerate() {
        if key & (1 << k) != 0 {
            d *= p;
        }
    }
    d
}

/// Key of a squarefree radicand dividing 210.
pub fn key_of(d: i64) -> Option<u8> {
    if d <= 0 {
        return None;
    }
    let mut rest = d;
    let mut key = 0u8;
    for (k, p) in PRIMES.iter().enumerate() {
        if rest % p == 0 {
            rest /= p;
            key |= 1 << k;
            if rest % p == 0 {
                return None;
            }
        }
    }
    if rest == 1 {
        Some(key)
    } else {
        None
    }
}

/// A Gaussian rational `re + im*i`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Gauss {
    pub re: Rational,
    pub im: Rational,
}

impl Gauss {
    pub fn real(re: Rational) -> Self {
        Gauss { re, im: Rational::ZERO }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn add(&self, o: &Gauss) -> Gauss {
        Gauss { re: &self.re + &o.re, im: &self.im + &o.im }
    }

    fn mul(&self, o: &Gauss) -> Gauss {
        if self.im.is_zero() && o.im.is_zero() {
            return Gauss::real(&self.re * &o.re);
        }
        Gauss {
            re: &(&self.re * &o.re) - &(&self.im * &o.im),
            im: &(&self.re * &o.im) + &(&self.im * &o.re),
        }
    }

    fn scale(&self, r: &Rational) -> Gauss {
        Gauss { re: &self.re * r, im: &self.im * r }
    }

    fn neg(&self) -> Gauss {
        Gauss { re: -&self.re, im: -&self.im }
    }

    fn conj(&self) -> Gauss {
        Gauss { re: self.re.clone(), im: -&self.im }
    }
}

/// Exact element of Q(i, sqrt2, sqrt3, sqrt5, sqrt7).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    terms: Vec<(u8, Gauss)>,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Scalar::from_rational(Rational::ONE)
    }

    pub fn i() -> Self {
        Scalar { terms: alloc::vec![(0, Gauss { re: Rational::ZERO, im: Rational::ONE })] }
    }

    pub fn int(n: i64) -> Self {
        Scalar::from_rational(Rational::int(n))
    }

    pub fn frac(n: i64, d: i64) -> Self {
        Scalar::from_rational(Rational::new(n, d))
    }

    pub fn from_rational(r: Rational) -> Self {
        if r.is_zero() {
            Scalar::zero()
        } else {
            Scalar { terms: alloc::vec![(0, Gauss::real(r))] }
        }
    }

    pub fn gauss(re: Rational, im: Rational) -> Self {
        Scalar::from_terms(alloc::vec![(0, Gauss { re, im })])
    }

    /// `sqrt(d)` for a positive integer `d` whose squarefree part divides 210.
    pub fn sqrt_int(d: i64) -> Result<Self, Error> {
        Scalar::int(d).sqrt_if_expressible()?.ok_or(Error::Inexpressible)
    }

    /// Builds a scalar from raw terms, merging duplicates and dropping zeros.
    pub fn from_terms(raw: Vec<(u8, Gauss)>) -> Self {
        let mut acc: [Option<Gauss>; 16] = Default::default();
        for (k, c) in raw {
            let slot = &mut acc[k as usize];
            *slot = Some(match slot.take() {
                Some(g) => g.add(&c),
                None => c,
            });
        }
        Scalar::collect(acc)
    }

    fn collect(acc: [Option<Gauss>; 16]) -> Self {
        let terms = acc
            .into_iter()
            .enumerate()
            .filter_map(|(k, g)| g.filter(|g| !g.is_zero()).map(|g| (k as u8, g)))
            .collect();
        Scalar { terms }
    }

    /// The canonical term list, sorted by radicand key.
    pub fn terms(&self) -> &[(u8, Gauss)] {
        &self.terms
    }

    /// Re-canonicalizes; the stored form is always canonical, so this is a copy.
    pub fn canonical(&self) -> Self {
        Scalar::from_terms(self.terms.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms[0].0 == 0
            && self.terms[0].1.re.is_one()
            && self.terms[0].1.im.is_zero()
    }

    /// True when every coefficient is real, i.e. the value lies in Q(sqrt2, ..., sqrt7).
    pub fn is_real(&self) -> bool {
        self.terms.iter().all(|(_, g)| g.im.is_zero())
    }

    /// The rational value, if the scalar is a real rational.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.terms.as_slice() {
            [] => Some(Rational::ZERO),
            [(0, g)] if g.im.is_zero() => Some(g.re.clone()),
            _ => None,
        }
    }

    /// Real part with respect to the complex conjugation `i -> -i`.
    pub fn re(&self) -> Self {
        Scalar::from_terms(self.terms.iter().map(|(k, g)| (*k, Gauss::real(g.re.clone()))).collect())
    }

    /// Imaginary part with respect to the complex conjugation `i -> -i`.
    pub fn im(&self) -> Self {
        Scalar::from_terms(self.terms.iter().map(|(k, g)| (*k, Gauss::real(g.im.clone()))).collect())
    }

    /// Complex conjugation `i -> -i`.
    pub fn conj_i(&self) -> Self {
        Scalar { terms: self.terms.iter().map(|(k, g)| (*k, g.conj())).collect() }
    }

    /// The field automorphism `sqrt(p) -> -sqrt(p)`.
    pub fn conj_prime(&self, bit: u8) -> Self {
        Scalar {
            terms: self
                .terms
                .iter()
                .map(|(k, g)| (*k, if k & (1 << bit) != 0 { g.neg() } else { g.clone() }))
                .collect(),
        }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Scalar::zero();
        }
        Scalar { terms: self.terms.iter().map(|(k, g)| (*k, g.scale(r))).collect() }
    }

    /// Exact multiplicative inverse via the 32 field conjugates.
    pub fn inv(&self) -> Result<Self, Error> {
        if self.is_zero() {
            return Err(Error::ZeroDivision);
        }
        if let Some(r) = self.as_rational() {
            return Ok(Scalar::from_rational(r.recip()));
        }
        let mut num = Scalar::one();
        let mut den = self.clone();
        // Each step makes `den` invariant under one more generator.
        let step = |c: Scalar, num: &mut Scalar, den: &mut Scalar| {
            *num = &*num * &c;
            *den = &*den * &c;
        };
        if !den.is_real() {
            let c = den.conj_i();
            step(c, &mut num, &mut den);
        }
        for bit in 0..4u8 {
            if den.terms.iter().any(|(k, _)| k & (1 << bit) != 0) {
                let c = den.conj_prime(bit);
                step(c, &mut num, &mut den);
            }
        }
        let d = den.as_rational().expect("norm is rational");
        Ok(num.scale(&d.recip()))
    }

    /// Returns `s` with `s*s = self` when `self = r^2 * d` for rational `r` and
    /// squarefree `d | 210`; `None` otherwise.
    pub fn sqrt_if_expressible(&self) -> Result<Option<Self>, Error> {
        let q = self.as_rational().ok_or(Error::NotRationalTerm)?;
        if q.signum() < 0 {
            return Ok(None);
        }
        if q.is_zero() {
            return Ok(Some(Scalar::zero()));
        }
        // sqrt(n/d) = sqrt(n*d)/d
        let den = q.denom();
        let mut m: BigInt = q.numer() * &den;
        let mut key = 0u8;
        let mut outside = BigInt::from(1);
        for (k, p) in PRIMES.iter().enumerate() {
            let p = BigInt::from(*p);
            let mut e = 0u32;
            while (&m % &p).is_zero() {
                m /= &p;
                e += 1;
            }
            if e % 2 == 1 {
                key |= 1 << k;
            }
            outside *= p.pow(e / 2);
        }
        let Some(r) = isqrt_exact(&m) else { return Ok(None) };
        outside *= r;
        let coeff = Rational::from_big(num_rational::BigRational::new(outside, den));
        Ok(Some(Scalar { terms: alloc::vec![(key, Gauss::real(coeff))] }))
    }

    /// Sign of a real scalar, decided exactly by recursive squaring.
    pub fn sign(&self) -> Result<i32, Error> {
        if !self.is_real() {
            return Err(Error::NotReal);
        }
        Ok(real_sign(&self.terms))
    }

    /// Exact comparison of real scalars.
    pub fn cmp_real(&self, o: &Self) -> Result<Ordering, Error> {
        Ok(match (self - o).sign()? {
            -1 => Ordering::Less,
            0 => Ordering::Equal,
            _ => Ordering::Greater,
        })
    }

    /// Floating-point view of the real part, used only for display.
    pub fn to_f64(&self) -> f64 {
        self.terms.iter().map(|(k, g)| g.re.to_f64() * (radicand(*k) as f64).sqrt()).sum()
    }

    /// Floating-point view of the imaginary part, used only for display.
    pub fn im_f64(&self) -> f64 {
        self.terms.iter().map(|(k, g)| g.im.to_f64() * (radicand(*k) as f64).sqrt()).sum()
    }

    /// `|z|^2 = z * conj_i(z)`.
    pub fn norm_sq(&self) -> Self {
        self * &self.conj_i()
    }

    pub fn parse(s: &str) -> Result<Self, Error> {
        crate::parse::parse_scalar(s)
    }
}

fn real_sign(terms: &[(u8, Gauss)]) -> i32 {
    if terms.is_empty() {
        return 0;
    }
    // Split off the highest prime present: x = a + b*sqrt(p).
    let top = (0..4u8).rev().find(|bit| terms.iter().any(|(k, _)| k & (1 << bit) != 0));
    let Some(bit) = top else {
        return terms[0].1.re.signum();
    };
    let mask = 1u8 << bit;
    let a: Vec<(u8, Gauss)> = terms.iter().filter(|(k, _)| k & mask == 0).cloned().collect();
    let b: Vec<(u8, Gauss)> =
        terms.iter().filter(|(k, _)| k & mask != 0).map(|(k, g)| (k & !mask, g.clone())).collect();
    let sa = real_sign(&a);
    let sb = real_sign(&b);
    if sb == 0 {
        return sa;
    }
    if sa == 0 || sa == sb {
        return sb;
    }
    let a = Scalar { terms: a };
    let b = Scalar { terms: b };
    let p = Rational::int(PRIMES[bit as usize]);
    let diff = &(&a * &a) - &(&b * &b).scale(&p);
    sa * real_sign(&diff.terms)
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.terms.len() + o.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < o.terms.len() {
            let ka = self.terms.get(i).map(|t| t.0).unwrap_or(u8::MAX);
            let kb = o.terms.get(j).map(|t| t.0).unwrap_or(u8::MAX);
            match ka.cmp(&kb) {
                Ordering::Less => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(o.terms[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let g = self.terms[i].1.add(&o.terms[j].1);
                    if !g.is_zero() {
                        out.push((ka, g));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Scalar { terms: out }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        self + &(-o)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        if self.is_zero() || o.is_zero() {
            return Scalar::zero();
        }
        if self.terms.len() == 1 && o.terms.len() == 1 {
            let (ka, ga) = &self.terms[0];
            let (kb, gb) = &o.terms[0];
            let g = ga.mul(gb);
            let common = ka & kb;
            let g = if common != 0 { g.scale(&Rational::int(radicand(common))) } else { g };
            return Scalar { terms: alloc::vec![(ka ^ kb, g)] };
        }
        let mut acc: [Option<Gauss>; 16] = Default::default();
        for (ka, ga) in &self.terms {
            for (kb, gb) in &o.terms {
                let mut g = ga.mul(gb);
                let common = ka & kb;
                if common != 0 {
                    g = g.scale(&Rational::int(radicand(common)));
                }
                let slot = &mut acc[(ka ^ kb) as usize];
                *slot = Some(match slot.take() {
                    Some(h) => h.add(&g),
                    None => g,
                });
            }
        }
        Scalar::collect(acc)
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn div(self, o: &Scalar) -> Scalar {
        self * &o.inv().expect("division by zero scalar")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { terms: self.terms.iter().map(|(k, g)| (*k, g.neg())).collect() }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: &Scalar) -> Scalar {
                (&self).$m(o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, o: &Scalar) {
        if !o.is_zero() {
            *self = &*self + o;
        }
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, o: &Scalar) {
        if !o.is_zero() {
            *self = &*self - o;
        }
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::int(n)
    }
}

impl From<Rational> for Scalar {
    fn from(r: Rational) -> Self {
        Scalar::from_rational(r)
    }
}

fn fmt_radical(f: &mut fmt::Formatter<'_>, coeff: &Rational, unit: &str, key: u8) -> fmt::Result {
    let d = radicand(key);
    let mut parts: Vec<String> = Vec::new();
    let abs = coeff.abs();
    if !abs.is_one() || (unit.is_empty() && key == 0) {
        parts.push(alloc::format!("{abs}"));
    }
    if !unit.is_empty() {
        parts.push(String::from(unit));
    }
    if key != 0 {
        parts.push(alloc::format!("sqrt({d})"));
    }
    // Put a denominator last so `3/4*sqrt(3)` reads naturally.
    write!(f, "{}", parts.join("*"))
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, g) in &self.terms {
            for (c, unit) in [(&g.re, ""), (&g.im, "i")] {
                if c.is_zero() {
                    continue;
                }
                if first {
                    if c.signum() < 0 {
                        write!(f, "-")?;
                    }
                } else if c.signum() < 0 {
                    write!(f, " - ")?;
                } else {
                    write!(f, " + ")?;
                }
                fmt_radical(f, c, unit, *k)?;
                first = false;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar({self})")
    }
}
