//! Chevalley basis structure constants and the compact real form.
//!
//! The compact basis is ordered as `i h_1, ..., i h_r` followed by the pairs
//! `u_a = x_a - x_{-a}`, `v_a = i (x_a + x_{-a})` for the positive roots `a`
//! in canonical order.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::linalg::{zeros, Vector};
use crate::rational::Rational;
use crate::roots::{Root, RootSystem};
use crate::scalar::Scalar;
use crate::Error;

/// Coordinates over the compact basis.
pub type AlgElement = Vector;

/// Signed structure constants `N_{a,b}` for all pairs of roots.
#[derive(Clone, Debug)]
pub struct StructureConstants {
    pub rs: RootSystem,
    /// Positive roots followed by negative roots.
    pub roots: Vec<Root>,
    /// `sum[a * 2N + b]` = index of `roots[a] + roots[b]` when that is a root.
    sum: Vec<Option<usize>>,
    /// `n[a * 2N + b]`, zero when the sum is not a root.
    n: Vec<i64>,
}

impl StructureConstants {
    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }

    pub fn num_positive(&self) -> usize {
        self.roots.len() / 2
    }

    pub fn neg(&self, a: usize) -> usize {
        let np = self.num_positive();
        if a < np {
            a + np
        } else {
            a - np
        }
    }

    pub fn sum_index(&self, a: usize, b: usize) -> Option<usize> {
        self.sum[a * self.roots.len() + b]
    }

    pub fn n(&self, a: usize, b: usize) -> i64 {
        self.n[a * self.roots.len() + b]
    }

    /// Largest `p` with `roots[b] - p roots[a]` a root.
    pub fn string_p(&self, a: usize, b: usize) -> i64 {
        let mut p = 0;
        let mut cur = b;
        while let Some(next) = self.sum_index(self.neg(a), cur) {
            p += 1;
            cur = next;
        }
        p
    }

    /// All nonzero entries `(a, b, N_{a,b})`.
    pub fn entries(&self) -> Vec<(usize, usize, i64)> {
        let m = self.roots.len();
        let mut out = Vec::new();
        for a in 0..m {
            for b in 0..m {
                let v = self.n(a, b);
                if v != 0 {
                    out.push((a, b, v));
                }
            }
        }
        out
    }

    /// Checks antisymmetry and `|N_{a,b}| = p + 1`.
    pub fn check_axioms(&self) -> Result<(), Error> {
        let m = self.roots.len();
        for a in 0..m {
            for b in 0..m {
                if self.sum_index(a, b).is_none() {
                    continue;
                }
                let v = self.n(a, b);
                if v != -self.n(b, a) || v.abs() != self.string_p(a, b) + 1 {
                    return Err(Error::SignSolveFailure(format!("N({a},{b}) = {v}")));
                }
            }
        }
        Ok(())
    }
}

/// Structure constants by the extraspecial-pair convention: `N > 0` on each
/// extraspecial pair, all other signs forced by the Chevalley relations.
pub fn build_chevalley(rs: &RootSystem) -> Result<StructureConstants, Error> {
    let roots = rs.all_roots();
    let m = roots.len();
    let np = m / 2;
    let mut sum = vec![None; m * m];
    for a in 0..m {
        for b in 0..m {
            let s: Root = roots[a].iter().zip(&roots[b]).map(|(x, y)| x + y).collect();
            sum[a * m + b] = rs.index_of(&s);
        }
    }
    let len2: Vec<i64> = roots.iter().map(|r| rs.inner(r, r)).collect();
    let mut sc = StructureConstants { rs: rs.clone(), roots, sum, n: vec![0; m * m] };
    let mut set = vec![false; np * np];

    // Any N(a, b) reduced to positive pairs already determined.
    fn n_any(sc: &StructureConstants, set: &[bool], len2: &[i64], a: usize, b: usize) -> Rational {
        let np = sc.num_positive();
        let z = sc.sum_index(a, b).expect("sum is a root");
        match (a < np, b < np) {
            (true, true) => {
                assert!(set[a * np + b], "positive pair not yet determined");
                Rational::int(sc.n(a, b))
            }
            (false, false) => -n_any(sc, set, len2, sc.neg(a), sc.neg(b)),
            (true, false) => {
                if z < np {
                    // N_{a,b} = -(z,z)/(a,a) N_{-b,z}
                    let v = n_any(sc, set, len2, sc.neg(b), z);
                    -(&v * &Rational::new(len2[z], len2[a]))
                } else {
                    // N_{a,b} = (z,z)/(b,b) N_{-z,a}
                    let v = n_any(sc, set, len2, sc.neg(z), a);
                    &v * &Rational::new(len2[z], len2[b])
                }
            }
            (false, true) => -n_any(sc, set, len2, b, a),
        }
    }

    for xi in 0..np {
        let pairs: Vec<(usize, usize)> = (0..np)
            .filter_map(|a| {
                let b = sc.sum_index(a, sc.neg(xi)).map(|d| sc.neg(d))?;
                // b = xi - a must be positive and come after a
                (b < np && a < b).then_some((a, b))
            })
            .collect();
        let Some(&(g, d)) = pairs.first() else { continue };
        let ngd = sc.string_p(g, d) + 1;
        sc.n[g * m + d] = ngd;
        sc.n[d * m + g] = -ngd;
        set[g * np + d] = true;
        set[d * np + g] = true;
        for &(a, b) in &pairs[1..] {
            let mut acc = Rational::ZERO;
            if let Some(bg) = sc.sum_index(b, sc.neg(g)) {
                let t = &n_any(&sc, &set, &len2, b, sc.neg(g)) * &n_any(&sc, &set, &len2, a, sc.neg(d));
                acc += &(&t / &Rational::int(len2[bg]));
            }
            if let Some(ag) = sc.sum_index(a, sc.neg(g)) {
                let t = &n_any(&sc, &set, &len2, sc.neg(g), a) * &n_any(&sc, &set, &len2, b, sc.neg(d));
                acc += &(&t / &Rational::int(len2[ag]));
            }
            let v = &(&acc * &Rational::int(len2[xi])) / &Rational::int(ngd);
            let v = v.to_i64().ok_or_else(|| Error::SignSolveFailure(format!("N({a},{b}) = {v}")))?;
            sc.n[a * m + b] = v;
            sc.n[b * m + a] = -v;
            set[a * np + b] = true;
            set[b * np + a] = true;
        }
    }
    // Fill the mixed and negative pairs.
    let mut full = sc.n.clone();
    for a in 0..m {
        for b in 0..m {
            if sc.sum_index(a, b).is_some() && (a >= np || b >= np) {
                let v = n_any(&sc, &set, &len2, a, b);
                full[a * m + b] =
                    v.to_i64().ok_or_else(|| Error::SignSolveFailure(format!("N({a},{b})")))?;
            }
        }
    }
    sc.n = full;
    sc.check_axioms()?;
    Ok(sc)
}

/// The compact real form with its sparse bracket table and Killing form.
#[derive(Clone, Debug)]
pub struct LieAlgebra {
    pub sc: StructureConstants,
    dim: usize,
    rank: usize,
    table: Vec<Vec<(u32, i64)>>,
    killing: Vec<Vec<i64>>,
}

/// Complex Chevalley-basis element: coefficients over `h_1..h_r, x_{roots}`.
type Complex = Vec<(usize, Scalar)>;

impl LieAlgebra {
    pub fn new(rs: &RootSystem) -> Result<Self, Error> {
        let sc = build_chevalley(rs)?;
        let rank = rs.rank();
        let np = sc.num_positive();
        let dim = rank + 2 * np;
        let mut alg = LieAlgebra { sc, dim, rank, table: Vec::new(), killing: Vec::new() };
        let basis: Vec<Complex> = (0..dim).map(|k| alg.to_complex(k)).collect();
        let mut table = vec![Vec::new(); dim * dim];
        for p in 0..dim {
            for q in 0..dim {
                let mut acc: Vec<Scalar> = zeros(rank + 2 * np);
                for (x, cx) in &basis[p] {
                    for (y, cy) in &basis[q] {
                        let c = cx * cy;
                        for (z, cz) in alg.complex_bracket(*x, *y) {
                            acc[z] += &(&c * &Scalar::int(cz));
                        }
                    }
                }
                table[p * dim + q] = alg.from_complex(&acc)?;
            }
        }
        alg.table = table;
        alg.killing = alg.compute_killing();
        Ok(alg)
    }

    pub fn of_type(name: &str) -> Result<Self, Error> {
        LieAlgebra::new(&RootSystem::of_type(name)?)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn rs(&self) -> &RootSystem {
        &self.sc.rs
    }

    /// Basis index of `u_a` for the `k`-th positive root.
    pub fn u(&self, k: usize) -> usize {
        self.rank + 2 * k
    }

    /// Basis index of `v_a` for the `k`-th positive root.
    pub fn v(&self, k: usize) -> usize {
        self.rank + 2 * k + 1
    }

    /// Basis index of `i h_j`.
    pub fn h(&self, j: usize) -> usize {
        j
    }

    fn to_complex(&self, k: usize) -> Complex {
        let r = self.rank;
        let np = self.sc.num_positive();
        if k < r {
            return vec![(k, Scalar::i())];
        }
        let a = (k - r) / 2;
        let (pos, neg) = (r + a, r + a + np);
        if (k - r) % 2 == 0 {
            vec![(pos, Scalar::one()), (neg, Scalar::int(-1))]
        } else {
            vec![(pos, Scalar::i()), (neg, Scalar::i())]
        }
    }

    /// Bracket of complex Chevalley basis elements, integer coefficients.
    fn complex_bracket(&self, x: usize, y: usize) -> Vec<(usize, i64)> {
        let r = self.rank;
        let rs = &self.sc.rs;
        match (x < r, y < r) {
            (true, true) => Vec::new(),
            (true, false) => {
                let a = y - r;
                vec![(y, rs.pairing_simple(&self.sc.roots[a], x))]
            }
            (false, true) => {
                let a = x - r;
                vec![(x, -rs.pairing_simple(&self.sc.roots[a], y))]
            }
            (false, false) => {
                let (a, b) = (x - r, y - r);
                if self.sc.neg(a) == b {
                    // [x_a, x_{-a}] = h_a, the coroot in simple coroots
                    let root = &self.sc.roots[a];
                    let half = rs.inner(root, root) / 2;
                    (0..r)
                        .filter(|&i| root[i] != 0)
                        .map(|i| (i, root[i] * rs.half_len[i] / half))
                        .collect()
                } else if let Some(s) = self.sc.sum_index(a, b) {
                    vec![(r + s, self.sc.n(a, b))]
                } else {
                    Vec::new()
                }
            }
        }
    }

    fn from_complex(&self, acc: &[Scalar]) -> Result<Vec<(u32, i64)>, Error> {
        let r = self.rank;
        let np = self.sc.num_positive();
        let mut out = Vec::new();
        let mut push = |idx: usize, c: Scalar| -> Result<(), Error> {
            if c.is_zero() {
                return Ok(());
            }
            let v = c
                .as_rational()
                .and_then(|q| q.to_i64())
                .ok_or_else(|| Error::SignSolveFailure(format!("non-integral compact constant {c}")))?;
            out.push((idx as u32, v));
            Ok(())
        };
        for j in 0..r {
            // h_j = -i (i h_j)
            push(j, &acc[j] * &(-Scalar::i()))?;
        }
        let half = Scalar::frac(1, 2);
        for k in 0..np {
            let a = &acc[r + k];
            let b = &acc[r + k + np];
            push(self.u(k), &(a - b) * &half)?;
            push(self.v(k), &(&(a + b) * &half) * &(-Scalar::i()))?;
        }
        Ok(out)
    }

    /// Sparse bracket of two basis elements.
    pub fn basis_bracket(&self, p: usize, q: usize) -> &[(u32, i64)] {
        &self.table[p * self.dim + q]
    }

    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Result<AlgElement, Error> {
        if x.len() != self.dim || y.len() != self.dim {
            return Err(Error::AlgebraMismatch);
        }
        Ok(self.bracket_unchecked(x, y))
    }

    pub fn bracket_unchecked(&self, x: &[Scalar], y: &[Scalar]) -> AlgElement {
        let mut out = zeros(self.dim);
        let ys: Vec<usize> = (0..self.dim).filter(|&q| !y[q].is_zero()).collect();
        for (p, xp) in x.iter().enumerate() {
            if xp.is_zero() {
                continue;
            }
            for &q in &ys {
                let entries = &self.table[p * self.dim + q];
                if entries.is_empty() {
                    continue;
                }
                let c = xp * &y[q];
                for &(k, n) in entries {
                    out[k as usize] += &c.scale(&Rational::int(n));
                }
            }
        }
        out
    }

    /// Integer Killing form on basis elements.
    pub fn killing_basis(&self, p: usize, q: usize) -> i64 {
        self.killing[p][q]
    }

    pub fn killing_form(&self, x: &[Scalar], y: &[Scalar]) -> Result<Scalar, Error> {
        if x.len() != self.dim || y.len() != self.dim {
            return Err(Error::AlgebraMismatch);
        }
        let mut acc = Scalar::zero();
        for p in 0..self.dim {
            if x[p].is_zero() {
                continue;
            }
            for q in 0..self.dim {
                let k = self.killing[p][q];
                if k != 0 && !y[q].is_zero() {
                    acc += &(&x[p] * &y[q]).scale(&Rational::int(k));
                }
            }
        }
        Ok(acc)
    }

    fn compute_killing(&self) -> Vec<Vec<i64>> {
        let d = self.dim;
        let mut k = vec![vec![0i64; d]; d];
        for i in 0..d {
            for j in 0..d {
                // tr(ad b_i ad b_j) = sum_l sum_k c^k_{j l} c^l_{i k}
                let mut s = 0;
                for l in 0..d {
                    for &(kk, c1) in &self.table[j * d + l] {
                        for &(ll, c2) in &self.table[i * d + kk as usize] {
                            if ll as usize == l {
                                s += c1 * c2;
                            }
                        }
                    }
                }
                k[i][j] = s;
            }
        }
        k
    }

    /// Exhaustive Jacobi check over all basis triples; returns the first violation.
    pub fn check_jacobi(&self) -> Result<(), Error> {
        let d = self.dim;
        let mut acc = vec![0i64; d];
        for i in 0..d {
            for j in (i + 1)..d {
                for k in (j + 1)..d {
                    for x in acc.iter_mut() {
                        *x = 0;
                    }
                    for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
                        for &(m, c1) in &self.table[a * d + b] {
                            for &(n, c2) in &self.table[m as usize * d + c] {
                                acc[n as usize] += c1 * c2;
                            }
                        }
                    }
                    if acc.iter().any(|&x| x != 0) {
                        return Err(Error::SignSolveFailure(format!("basis triple ({i},{j},{k})")));
                    }
                }
            }
        }
        Ok(())
    }

    /// Checks that the Killing Gram matrix is negative definite by exact
    /// Cholesky elimination of its negation.
    pub fn killing_negative_definite(&self) -> bool {
        let d = self.dim;
        let mut m: Vec<Vec<Rational>> =
            (0..d).map(|i| (0..d).map(|j| Rational::int(-self.killing[i][j])).collect()).collect();
        for p in 0..d {
            if m[p][p].signum() <= 0 {
                return false;
            }
            let piv = m[p][p].clone();
            for r in (p + 1)..d {
                if m[r][p].is_zero() {
                    continue;
                }
                let f = &m[r][p] / &piv;
                for c in p..d {
                    if !m[p][c].is_zero() {
                        let t = &f * &m[p][c];
                        m[r][c] -= &t;
                    }
                }
            }
        }
        true
    }

    /// Matrix of `ad(x)` as columns: `ad(x) b_q = sum_k col[q][k] b_k`.
    pub fn ad_columns(&self, x: &[Scalar]) -> Vec<AlgElement> {
        (0..self.dim)
            .map(|q| {
                let mut e = zeros(self.dim);
                e[q] = Scalar::one();
                self.bracket_unchecked(x, &e)
            })
            .collect()
    }

    pub fn basis_vector(&self, k: usize) -> AlgElement {
        let mut e = zeros(self.dim);
        e[k] = Scalar::one();
        e
    }

    /// Index of the positive root with the given coordinates.
    pub fn positive_index(&self, r: &[i64]) -> Option<usize> {
        self.sc.rs.positives.iter().position(|p| p.as_slice() == r)
    }
}
