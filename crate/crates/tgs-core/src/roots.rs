//! Root systems from Cartan matrices, positive-root enumeration in the
//! canonical order, Weyl reflections and closed subsystems; restricted root
//! systems of rank two with multiplicities.
//!
//! E6 uses the Satake-diagram numbering: nodes 1, 3, 4, 5, 6 form the long
//! chain and node 2 is attached to node 4.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::rational::Rational;
use crate::scalar::Scalar;
use crate::Error;

pub type Root = Vec<i64>;

/// A finite root system given by its Cartan matrix.
///
/// `cartan[i][j] = 2(a_i, a_j)/(a_j, a_j)`.
#[derive(Clone, Debug)]
pub struct RootSystem {
    pub name: String,
    pub cartan: Vec<Vec<i64>>,
    /// Half squared lengths of the simple roots, smallest equal to 1.
    pub half_len: Vec<i64>,
    /// Symmetrized form `(a_i, a_j) = cartan[i][j] * half_len[j]`.
    pub sym: Vec<Vec<i64>>,
    /// Positive roots in canonical order.
    pub positives: Vec<Root>,
}

fn chain_cartan(n: usize) -> Vec<Vec<i64>> {
    let mut c = vec![vec![0i64; n]; n];
    for i in 0..n {
        c[i][i] = 2;
        if i + 1 < n {
            c[i][i + 1] = -1;
            c[i + 1][i] = -1;
        }
    }
    c
}

/// Cartan matrix of a named type (`A1`..`An`, `Bn`, `Cn`, `Dn`, `E6`, `F4`, `G2`).
pub fn cartan_of_type(name: &str) -> Result<Vec<Vec<i64>>, Error> {
    let name = name.trim();
    let bad = || Error::Parse(format!("unknown Cartan type {name:?}"));
    let (family, rank) = name.split_at(1);
    let n: usize = rank.parse().map_err(|_| bad())?;
    let c = match (family, n) {
        ("A", n) if n >= 1 => chain_cartan(n),
        ("B", n) if n >= 2 => {
            let mut c = chain_cartan(n);
            // last node short: (a_{n-1}, a_n) / (a_n, a_n) doubled
            c[n - 2][n - 1] = -2;
            c
        }
        ("C", n) if n >= 2 => {
            let mut c = chain_cartan(n);
            c[n - 1][n - 2] = -2;
            c
        }
        ("D", n) if n >= 3 => {
            let mut c = chain_cartan(n);
            c[n - 2][n - 1] = 0;
            c[n - 1][n - 2] = 0;
            c[n - 3][n - 1] = -1;
            c[n - 1][n - 3] = -1;
            c
        }
        ("E", 6) => {
            let mut c = vec![vec![0i64; 6]; 6];
            for i in 0..6 {
                c[i][i] = 2;
            }
            for (a, b) in [(1, 3), (3, 4), (4, 5), (5, 6), (2, 4)] {
                c[a - 1][b - 1] = -1;
                c[b - 1][a - 1] = -1;
            }
            c
        }
        ("F", 4) => {
            let mut c = chain_cartan(4);
            c[1][2] = -2;
            c
        }
        ("G", 2) => vec![vec![2, -1], vec![-3, 2]],
        _ => return Err(bad()),
    };
    Ok(c)
}

impl RootSystem {
    pub fn of_type(name: &str) -> Result<Self, Error> {
        let mut rs = RootSystem::from_cartan(cartan_of_type(name)?)?;
        rs.name = name.trim().to_string();
        Ok(rs)
    }

    pub fn from_cartan(cartan: Vec<Vec<i64>>) -> Result<Self, Error> {
        let n = cartan.len();
        if n == 0 || cartan.iter().any(|r| r.len() != n) {
            return Err(Error::NotFiniteType);
        }
        for i in 0..n {
            if cartan[i][i] != 2 {
                return Err(Error::NotFiniteType);
            }
            for j in 0..n {
                if i != j && (cartan[i][j] > 0 || (cartan[i][j] == 0) != (cartan[j][i] == 0)) {
                    return Err(Error::NotFiniteType);
                }
            }
        }
        let half_len = symmetrize(&cartan)?;
        let sym: Vec<Vec<i64>> =
            (0..n).map(|i| (0..n).map(|j| cartan[i][j] * half_len[j]).collect()).collect();
        let positives = enumerate_positive_roots(&cartan)?;
        Ok(RootSystem { name: String::from("custom"), cartan, half_len, sym, positives })
    }

    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    /// Symmetrized inner product (simple roots of minimal length have square 2).
    pub fn inner(&self, a: &[i64], b: &[i64]) -> i64 {
        let n = self.rank();
        let mut s = 0;
        for i in 0..n {
            if a[i] == 0 {
                continue;
            }
            for j in 0..n {
                s += a[i] * self.sym[i][j] * b[j];
            }
        }
        s
    }

    /// `<b, a_i^vee> = 2(b, a_i)/(a_i, a_i)`.
    pub fn pairing_simple(&self, b: &[i64], i: usize) -> i64 {
        (0..self.rank()).map(|j| b[j] * self.cartan[j][i]).sum()
    }

    pub fn height(r: &[i64]) -> i64 {
        r.iter().sum()
    }

    /// All roots: positives followed by their negatives.
    pub fn all_roots(&self) -> Vec<Root> {
        let mut v = self.positives.clone();
        v.extend(self.positives.iter().map(|r| r.iter().map(|x| -x).collect::<Root>()));
        v
    }

    /// Index into `all_roots()`.
    pub fn index_of(&self, r: &[i64]) -> Option<usize> {
        let np = self.positives.len();
        if let Some(k) = self.positives.iter().position(|p| p.as_slice() == r) {
            return Some(k);
        }
        let neg: Root = r.iter().map(|x| -x).collect();
        self.positives.iter().position(|p| *p == neg).map(|k| k + np)
    }

    pub fn is_root(&self, r: &[i64]) -> bool {
        self.index_of(r).is_some()
    }

    pub fn highest_root(&self) -> Root {
        self.positives.last().cloned().expect("nonempty")
    }

    /// Dual Coxeter number `1 + sum of the coroot marks of the highest root`.
    pub fn dual_coxeter(&self) -> i64 {
        let theta = self.highest_root();
        let dmax = *self.half_len.iter().max().expect("nonempty");
        1 + theta.iter().zip(&self.half_len).map(|(c, d)| c * d).sum::<i64>() / dmax
    }

    /// Inner product of roots under the dual of the Killing form.
    pub fn killing_inner(&self, a: &[i64], b: &[i64]) -> Rational {
        let dmax = *self.half_len.iter().max().expect("nonempty");
        Rational::new(self.inner(a, b), 2 * dmax * self.dual_coxeter())
    }

    /// Gram matrix of the simple roots under `scale` times the Killing dual form.
    pub fn gram(&self, scale: &Scalar) -> Vec<Vec<Scalar>> {
        let n = self.rank();
        let e = |i: usize| -> Root { (0..n).map(|k| (k == i) as i64).collect() };
        (0..n)
            .map(|i| (0..n).map(|j| scale * &Scalar::from(self.killing_inner(&e(i), &e(j)))).collect())
            .collect()
    }

    /// Reflection of an integer root-coordinate vector in the hyperplane of `a`.
    pub fn reflect_root(&self, v: &[i64], a: &[i64]) -> Root {
        let k = 2 * self.inner(v, a) / self.inner(a, a);
        v.iter().zip(a).map(|(x, y)| x - k * y).collect()
    }

    /// Reflection of a vector with exact coordinates in the hyperplane of `a`.
    pub fn reflect(&self, v: &[Scalar], a: &[i64]) -> Vec<Scalar> {
        let n = self.rank();
        let mut va = Scalar::zero();
        for i in 0..n {
            for j in 0..n {
                if a[j] != 0 && self.sym[i][j] != 0 {
                    va += &(&v[i] * &Scalar::int(self.sym[i][j] * a[j]));
                }
            }
        }
        let aa = Scalar::int(self.inner(a, a));
        let k = &(&va * &Scalar::int(2)) / &aa;
        v.iter().zip(a).map(|(x, y)| x - &(&k * &Scalar::int(*y))).collect()
    }

    /// Closed-subsystem test for an explicit set of roots.
    pub fn is_closed_subsystem(&self, sub: &[Root]) -> Result<bool, Error> {
        let all = self.all_roots();
        is_closed_subsystem(sub, &all)
    }
}

/// Half squared lengths making `cartan` symmetric, normalized to minimum 1.
fn symmetrize(cartan: &[Vec<i64>]) -> Result<Vec<i64>, Error> {
    let n = cartan.len();
    let mut d: Vec<Option<Rational>> = vec![None; n];
    for start in 0..n {
        if d[start].is_some() {
            continue;
        }
        d[start] = Some(Rational::ONE);
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            for j in 0..n {
                if i == j || cartan[i][j] == 0 {
                    continue;
                }
                // cartan[i][j] d_j = cartan[j][i] d_i
                let dj = &(d[i].clone().expect("set") * Rational::int(cartan[j][i]))
                    / &Rational::int(cartan[i][j]);
                match &d[j] {
                    None => {
                        d[j] = Some(dj);
                        stack.push(j);
                    }
                    Some(old) if *old != dj => return Err(Error::NotFiniteType),
                    _ => {}
                }
            }
        }
    }
    let d: Vec<Rational> = d.into_iter().map(|x| x.expect("set")).collect();
    let min = d.iter().min().cloned().expect("nonempty");
    let d: Vec<Rational> = d.iter().map(|x| x / &min).collect();
    // Clear denominators.
    let mut lcm = 1i64;
    for x in &d {
        let den = x.denom();
        let den: i64 = i64::try_from(den).map_err(|_| Error::NotFiniteType)?;
        lcm = num_integer::lcm(lcm, den);
    }
    d.iter()
        .map(|x| (x * &Rational::int(lcm)).to_i64().ok_or(Error::NotFiniteType))
        .collect()
}

/// Positive roots in generation order: simple roots first, then each new
/// height layer is produced by trying every simple root `a_i` in turn
/// against the previous layer (in its own order), keeping first occurrences.
pub fn enumerate_positive_roots(cartan: &[Vec<i64>]) -> Result<Vec<Root>, Error> {
    const MAX_ROOTS: usize = 4096;
    let n = cartan.len();
    let mut found: BTreeSet<Root> = BTreeSet::new();
    let mut layer: Vec<Root> = (0..n).map(|i| (0..n).map(|k| (k == i) as i64).collect()).collect();
    let mut order: Vec<Root> = layer.clone();
    for r in &layer {
        found.insert(r.clone());
    }
    while !layer.is_empty() {
        let mut next: Vec<Root> = Vec::new();
        for i in 0..n {
            for b in &layer {
                // p: largest k with b - k a_i a positive root
                let mut p = 0;
                loop {
                    let mut c = b.clone();
                    c[i] -= p + 1;
                    if c.iter().all(|&x| x >= 0) && found.contains(&c) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                let pair: i64 = (0..n).map(|j| b[j] * cartan[j][i]).sum();
                if p - pair > 0 {
                    let mut c = b.clone();
                    c[i] += 1;
                    if !found.contains(&c) && !next.contains(&c) {
                        next.push(c);
                    }
                }
            }
        }
        for r in &next {
            found.insert(r.clone());
        }
        if found.len() > MAX_ROOTS {
            return Err(Error::NotFiniteType);
        }
        order.extend(next.iter().cloned());
        layer = next;
    }
    Ok(order)
}

/// True iff `sub` is closed under negation and under sums that are roots of `all`.
pub fn is_closed_subsystem(sub: &[Root], all: &[Root]) -> Result<bool, Error> {
    for r in sub {
        if !all.contains(r) {
            return Err(Error::NotSubset(format!("{r:?}")));
        }
    }
    let set: BTreeSet<&Root> = sub.iter().collect();
    for r in sub {
        let neg: Root = r.iter().map(|x| -x).collect();
        if !set.contains(&neg) {
            return Ok(false);
        }
    }
    for a in sub {
        for b in sub {
            let s: Root = a.iter().zip(b).map(|(x, y)| x + y).collect();
            if all.contains(&s) && !set.contains(&s) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The rank-two restricted root system types that occur.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RestrictedKind {
    A2,
    B2,
    BC2,
    G2,
}

impl RestrictedKind {
    pub fn name(self) -> &'static str {
        match self {
            RestrictedKind::A2 => "A2",
            RestrictedKind::B2 => "B2",
            RestrictedKind::BC2 => "BC2",
            RestrictedKind::G2 => "G2",
        }
    }
}

/// A labelled rank-two restricted root system with multiplicities.
///
/// Roots are given by integer coordinates over two simple restricted roots,
/// positive roots only; the Gram matrix of the simple roots is exact.
#[derive(Clone, Debug)]
pub struct RestrictedRootSystem {
    pub kind: RestrictedKind,
    pub labels: Vec<String>,
    pub coords: Vec<Root>,
    pub mult: Vec<usize>,
    /// Gram matrix of the two simple roots.
    pub simple_gram: [[Rational; 2]; 2],
    pub metric_scale: Scalar,
}

impl RestrictedRootSystem {
    /// BC2 labelled as in EIII: simple roots l1 (short) and l3 (long).
    pub fn bc2(mult: [usize; 6]) -> Self {
        RestrictedRootSystem {
            kind: RestrictedKind::BC2,
            labels: ["l1", "l2", "l3", "l4", "2l1", "2l2"].iter().map(|s| s.to_string()).collect(),
            coords: vec![vec![1, 0], vec![1, 1], vec![0, 1], vec![2, 1], vec![2, 0], vec![2, 2]],
            mult: mult.to_vec(),
            simple_gram: [
                [Rational::ONE, Rational::int(-1)],
                [Rational::int(-1), Rational::int(2)],
            ],
            metric_scale: Scalar::one(),
        }
    }

    /// A2 labelled as in EIV: simple roots l1, l2 and l3 = l1 + l2.
    pub fn a2(m: usize) -> Self {
        RestrictedRootSystem {
            kind: RestrictedKind::A2,
            labels: ["l1", "l2", "l3"].iter().map(|s| s.to_string()).collect(),
            coords: vec![vec![1, 0], vec![0, 1], vec![1, 1]],
            mult: vec![m; 3],
            simple_gram: [
                [Rational::ONE, Rational::new(-1, 2)],
                [Rational::new(-1, 2), Rational::ONE],
            ],
            metric_scale: Scalar::one(),
        }
    }

    /// G2 with l1 short and l2 long; l6 = 3 l1 + 2 l2.
    pub fn g2(m: usize) -> Self {
        RestrictedRootSystem {
            kind: RestrictedKind::G2,
            labels: ["l1", "l2", "l3", "l4", "l5", "l6"].iter().map(|s| s.to_string()).collect(),
            coords: vec![vec![1, 0], vec![0, 1], vec![1, 1], vec![2, 1], vec![3, 1], vec![3, 2]],
            mult: vec![m; 6],
            simple_gram: [
                [Rational::ONE, Rational::new(-3, 2)],
                [Rational::new(-3, 2), Rational::int(3)],
            ],
            metric_scale: Scalar::one(),
        }
    }

    pub fn inner(&self, a: &[i64], b: &[i64]) -> Rational {
        let mut s = Rational::ZERO;
        for i in 0..2 {
            for j in 0..2 {
                s += &(&self.simple_gram[i][j] * &Rational::int(a[i] * b[j]));
            }
        }
        s
    }

    pub fn index_of_label(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// All roots (positive then negative) as coordinate vectors.
    pub fn all_roots(&self) -> Vec<Root> {
        let mut v = self.coords.clone();
        v.extend(self.coords.iter().map(|r| r.iter().map(|x| -x).collect::<Root>()));
        v
    }

    pub fn reflect_root(&self, v: &[i64], a: &[i64]) -> Root {
        let k = &(&self.inner(v, a) * &Rational::int(2)) / &self.inner(a, a);
        let k = k.to_i64().expect("integral reflection coefficient");
        v.iter().zip(a).map(|(x, y)| x - k * y).collect()
    }

    /// Reflection of an exact coordinate vector.
    pub fn reflect(&self, v: &[Scalar], a: &[i64]) -> Vec<Scalar> {
        let mut va = Scalar::zero();
        for i in 0..2 {
            for j in 0..2 {
                va += &(&v[i] * &Scalar::from(&self.simple_gram[i][j] * &Rational::int(a[j])));
            }
        }
        let k = &(&va * &Scalar::int(2)) / &Scalar::from(self.inner(a, a));
        v.iter().zip(a).map(|(x, y)| x - &(&k * &Scalar::int(*y))).collect()
    }

    pub fn is_closed_subsystem(&self, sub: &[Root]) -> Result<bool, Error> {
        is_closed_subsystem(sub, &self.all_roots())
    }

    /// Elements of the Weyl group as 2x2 integer matrices acting on coordinates.
    pub fn weyl_group(&self) -> Vec<[[i64; 2]; 2]> {
        let simple = [vec![1i64, 0], vec![0i64, 1]];
        let refl = |a: &Root| -> [[i64; 2]; 2] {
            let c0 = self.reflect_root(&simple[0], a);
            let c1 = self.reflect_root(&simple[1], a);
            [[c0[0], c1[0]], [c0[1], c1[1]]]
        };
        let gens: Vec<[[i64; 2]; 2]> = self.coords.iter().map(refl).collect();
        let id = [[1, 0], [0, 1]];
        let mut group = vec![id];
        let mut k = 0;
        while k < group.len() {
            let g = group[k];
            for s in &gens {
                let h = mat2_mul(s, &g);
                if !group.contains(&h) {
                    group.push(h);
                }
            }
            k += 1;
        }
        group
    }
}

pub fn mat2_mul(a: &[[i64; 2]; 2], b: &[[i64; 2]; 2]) -> [[i64; 2]; 2] {
    let mut c = [[0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            c[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    c
}
