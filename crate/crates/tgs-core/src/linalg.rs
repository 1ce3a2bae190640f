//! Dense exact linear algebra over `Scalar`: row reduction, span membership,
//! kernels and intersections.

use alloc::vec;
use alloc::vec::Vec;

use crate::scalar::Scalar;

pub type Vector = Vec<Scalar>;

pub fn zeros(n: usize) -> Vector {
    vec![Scalar::zero(); n]
}

pub fn unit(n: usize, k: usize) -> Vector {
    let mut v = zeros(n);
    v[k] = Scalar::one();
    v
}

pub fn is_zero(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

pub fn add(a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(c: &Scalar, a: &[Scalar]) -> Vector {
    if c.is_zero() {
        return zeros(a.len());
    }
    a.iter().map(|x| c * x).collect()
}

pub fn neg(a: &[Scalar]) -> Vector {
    a.iter().map(|x| -x).collect()
}

/// `y += c * x`
pub fn axpy(y: &mut [Scalar], c: &Scalar, x: &[Scalar]) {
    if c.is_zero() {
        return;
    }
    for (yi, xi) in y.iter_mut().zip(x) {
        if !xi.is_zero() {
            *yi += &(c * xi);
        }
    }
}

/// Plain bilinear dot product (no conjugation).
pub fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    let mut acc = Scalar::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += &(x * y);
        }
    }
    acc
}

/// Linear combination `sum c_k v_k`.
pub fn combine(coeffs: &[Scalar], vecs: &[Vector], n: usize) -> Vector {
    let mut out = zeros(n);
    for (c, v) in coeffs.iter().zip(vecs) {
        axpy(&mut out, c, v);
    }
    out
}

/// Reduced row-echelon basis of a subspace, built incrementally.
#[derive(Clone, Debug)]
pub struct Echelon {
    dim: usize,
    rows: Vec<Vector>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(dim: usize) -> Self {
        Echelon { dim, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn from_vectors(dim: usize, vs: &[Vector]) -> Self {
        let mut e = Echelon::new(dim);
        for v in vs {
            e.insert(v);
        }
        e
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vector] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Residual of `v` after eliminating every pivot.
    pub fn reduce(&self, v: &[Scalar]) -> Vector {
        let mut r = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !r[p].is_zero() {
                let c = -&r[p];
                axpy(&mut r, &c, row);
            }
        }
        r
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        is_zero(&self.reduce(v))
    }

    /// Adds `v` to the span; returns false when it was already contained.
    pub fn insert(&mut self, v: &[Scalar]) -> bool {
        let r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else { return false };
        let inv = r[p].inv().expect("nonzero pivot");
        let r = scale(&inv, &r);
        for row in self.rows.iter_mut() {
            if !row[p].is_zero() {
                let c = -&row[p];
                axpy(row, &c, &r);
            }
        }
        self.rows.push(r);
        self.pivots.push(p);
        true
    }

    /// Coordinates of `v` with respect to the echelon rows, if `v` is in the span.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vector> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    pub fn contains_all(&self, other: &Echelon) -> bool {
        other.rows.iter().all(|r| self.contains(r))
    }
}

/// Basis of `{x : A x = 0}` for the matrix whose rows are `rows` (each of length `ncols`).
pub fn nullspace(rows: &[Vector], ncols: usize) -> Vec<Vector> {
    let e = Echelon::from_vectors(ncols, rows);
    let mut out = Vec::new();
    let pivot_set: Vec<bool> = (0..ncols).map(|c| e.pivots.contains(&c)).collect();
    for f in 0..ncols {
        if pivot_set[f] {
            continue;
        }
        let mut x = zeros(ncols);
        x[f] = Scalar::one();
        for (row, &p) in e.rows.iter().zip(&e.pivots) {
            if !row[f].is_zero() {
                x[p] = -&row[f];
            }
        }
        out.push(x);
    }
    out
}

/// Basis of the intersection of two subspaces of the same ambient space.
pub fn intersection(a: &[Vector], b: &[Vector], n: usize) -> Vec<Vector> {
    let ea = Echelon::from_vectors(n, a);
    let eb = Echelon::from_vectors(n, b);
    let (ra, rb) = (ea.rows.clone(), eb.rows.clone());
    let k = ra.len() + rb.len();
    // Solve sum x_i a_i - sum y_j b_j = 0 column by column.
    let mut eqs: Vec<Vector> = Vec::with_capacity(n);
    for c in 0..n {
        let mut eq = zeros(k);
        for (i, r) in ra.iter().enumerate() {
            eq[i] = r[c].clone();
        }
        for (j, r) in rb.iter().enumerate() {
            eq[ra.len() + j] = -&r[c];
        }
        if !is_zero(&eq) {
            eqs.push(eq);
        }
    }
    let mut out = Echelon::new(n);
    for x in nullspace(&eqs, k) {
        out.insert(&combine(&x[..ra.len()], &ra, n));
    }
    out.rows
}

/// Transpose of a list of equal-length vectors.
pub fn transpose(m: &[Vector], ncols: usize) -> Vec<Vector> {
    (0..ncols).map(|c| m.iter().map(|r| r[c].clone()).collect()).collect()
}
