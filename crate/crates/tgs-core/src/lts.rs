//! Lie triple system checks and reports for subspaces of `m`.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::lie::AlgElement;
use crate::linalg::{axpy, combine, intersection, is_zero, nullspace, scale, zeros, Echelon, Vector};
use crate::roots::Root;
use crate::scalar::Scalar;
use crate::space::{AngleDescriptor, SpaceKind, SpaceModel};
use crate::Error;

/// A linear subspace of `m` given by independent rows of frame coordinates.
#[derive(Clone, Debug)]
pub struct Subspace {
    basis: Vec<Vector>,
    ech: Echelon,
}

impl Subspace {
    /// Independent rows; dependent input is rejected.
    pub fn new(dim_m: usize, rows: Vec<Vector>) -> Result<Self, Error> {
        let mut ech = Echelon::new(dim_m);
        for r in &rows {
            if r.len() != dim_m {
                return Err(Error::Dimension(format!("row of length {} in m of dim {dim_m}", r.len())));
            }
            if !ech.insert(r) {
                return Err(Error::Dimension("rows are linearly dependent".to_string()));
            }
        }
        Ok(Subspace { basis: rows, ech })
    }

    /// Span of arbitrary rows (dependent rows dropped).
    pub fn span(dim_m: usize, rows: &[Vector]) -> Self {
        let mut ech = Echelon::new(dim_m);
        let mut basis = Vec::new();
        for r in rows {
            if ech.insert(r) {
                basis.push(r.clone());
            }
        }
        Subspace { basis, ech }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ech.dim()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.ech.contains(v)
    }

    pub fn contains_subspace(&self, o: &Subspace) -> bool {
        o.basis.iter().all(|r| self.contains(r))
    }

    pub fn same_as(&self, o: &Subspace) -> bool {
        self.dim() == o.dim() && self.contains_subspace(o)
    }

    pub fn intersect(&self, o: &Subspace) -> Subspace {
        Subspace::span(self.ambient_dim(), &intersection(&self.basis, &o.basis, self.ambient_dim()))
    }

    pub fn sum(&self, o: &Subspace) -> Subspace {
        let mut rows = self.basis.clone();
        rows.extend(o.basis.iter().cloned());
        Subspace::span(self.ambient_dim(), &rows)
    }
}

/// An offending triple: `R(b_i, b_j) b_k` is not in the span.
#[derive(Clone, Debug, PartialEq)]
pub struct ClosureFailure {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub value: Vector,
}

/// Exact closure check over all basis triples (`i < j`, any `k`).
pub fn check_lts(sp: &SpaceModel, s: &Subspace) -> Result<(), ClosureFailure> {
    let b = s.basis();
    for i in 0..b.len() {
        for j in (i + 1)..b.len() {
            for k in 0..b.len() {
                let r = sp.curvature(&b[i], &b[j], &b[k]);
                if !s.contains(&r) {
                    return Err(ClosureFailure { i, j, k, value: r });
                }
            }
        }
    }
    Ok(())
}

pub fn is_lts(sp: &SpaceModel, s: &Subspace) -> bool {
    check_lts(sp, s).is_ok()
}

/// `[x, y]` of frame vectors as an algebra element.
fn bracket(sp: &SpaceModel, x: &[Scalar], y: &[Scalar]) -> AlgElement {
    sp.bracket_k(x, y)
}

fn is_abelian(sp: &SpaceModel, rows: &[Vector]) -> bool {
    for i in 0..rows.len() {
        for j in (i + 1)..rows.len() {
            if !is_zero(&bracket(sp, &rows[i], &rows[j])) {
                return false;
            }
        }
    }
    true
}

/// `{w in S : [v, w] = 0}`.
pub fn centralizer_in(sp: &SpaceModel, s: &Subspace, v: &[Scalar]) -> Subspace {
    let cols: Vec<AlgElement> = s.basis().iter().map(|b| bracket(sp, v, b)).collect();
    let d = sp.alg.dim();
    let rows: Vec<Vector> = (0..d)
        .map(|r| cols.iter().map(|c| c[r].clone()).collect::<Vector>())
        .filter(|row| !is_zero(row))
        .collect();
    let ker = nullspace(&rows, s.dim());
    let vecs: Vec<Vector> = ker.iter().map(|x| combine(x, s.basis(), s.ambient_dim())).collect();
    Subspace::span(s.ambient_dim(), &vecs)
}

/// Number of samples drawn by the flat search.
pub const FLAT_SAMPLES: usize = 6;

fn sample_combination(rng: &mut ChaCha8Rng, s: &Subspace) -> Vector {
    let mut v = zeros(s.ambient_dim());
    for b in s.basis() {
        let c = (rng.next_u32() % 15) as i64 - 7;
        let c = if c == 0 { 8 } else { c };
        axpy(&mut v, &Scalar::int(c), b);
    }
    v
}

/// Rank and a maximal flat. `S cap a` is preferred when it already has full rank.
pub fn rank_and_flat(sp: &SpaceModel, s: &Subspace, seed: u64) -> Result<(usize, Subspace), Error> {
    if s.dim() == 0 {
        return Ok((0, s.clone()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best: Option<Subspace> = None;
    for _ in 0..FLAT_SAMPLES {
        let v = sample_combination(&mut rng, s);
        let n = centralizer_in(sp, s, &v);
        if !is_abelian(sp, n.basis()) {
            continue;
        }
        if best.as_ref().map_or(true, |b| n.dim() < b.dim()) {
            best = Some(n);
        }
    }
    let flat = best.ok_or(Error::FlatSearchInconclusive)?;
    let rank = flat.dim();
    if !extends_to_cartan(sp, &flat, seed) {
        return Err(Error::NotAFlat);
    }
    let sa = s.intersect(&a_subspace(sp));
    if sa.dim() == rank {
        return Ok((rank, sa));
    }
    Ok((rank, flat))
}

/// The Cartan subspace `a` in frame coordinates.
pub fn a_subspace(sp: &SpaceModel) -> Subspace {
    let n = sp.dim_m();
    let mut rows = vec![zeros(n), zeros(n)];
    rows[0][0] = Scalar::one();
    rows[1][1] = Scalar::one();
    Subspace::span(n, &rows)
}

/// Whether an abelian subspace lies in an abelian subspace of `m` of full rank.
pub fn extends_to_cartan(sp: &SpaceModel, flat: &Subspace, seed: u64) -> bool {
    let m = full_m(sp);
    let mut z = m.clone();
    for b in flat.basis() {
        z = centralizer_in(sp, &z, b);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9);
    for _ in 0..FLAT_SAMPLES {
        let v = sample_combination(&mut rng, &z);
        let c = centralizer_in(sp, &z, &v);
        if c.dim() == 2 && is_abelian(sp, c.basis()) && c.contains_subspace(flat) {
            return true;
        }
    }
    false
}

pub fn full_m(sp: &SpaceModel) -> Subspace {
    let n = sp.dim_m();
    Subspace::span(n, &(0..n).map(|k| crate::linalg::unit(n, k)).collect::<Vec<_>>())
}

/// A restricted root of a sub-system with its multiplicity.
#[derive(Clone, Debug)]
pub struct SubRoot {
    /// Values on the flat basis.
    pub values: Vec<Scalar>,
    /// Ambient labels restricting to this root (up to sign).
    pub ambient: Vec<String>,
    pub mult: usize,
    pub space: Subspace,
}

/// Root-space decomposition of `S` with respect to a flat `a' = S cap a`, or a
/// rank-one flat spanned by any `H`.
pub fn sub_restricted_roots(sp: &SpaceModel, s: &Subspace, flat: &Subspace) -> Result<Vec<SubRoot>, Error> {
    if !is_abelian(sp, flat.basis()) || !s.contains_subspace(flat) {
        return Err(Error::NotAFlat);
    }
    if flat.dim() == 0 {
        return Ok(Vec::new());
    }
    let a = a_subspace(sp);
    let roots = if a.contains_subspace(flat) {
        roots_in_a(sp, s, flat)?
    } else if flat.dim() == 1 {
        roots_rank_one(sp, s, &flat.basis()[0])?
    } else {
        return Err(Error::NotAFlat);
    };
    let total: usize = roots.iter().map(|r| r.mult).sum::<usize>() + flat.dim();
    if total != s.dim() {
        return Err(Error::NotAFlat);
    }
    Ok(roots)
}

fn roots_in_a(sp: &SpaceModel, s: &Subspace, flat: &Subspace) -> Result<Vec<SubRoot>, Error> {
    let n = sp.dim_m();
    let rs = &sp.restricted;
    let mut out: Vec<SubRoot> = Vec::new();
    for (l, c) in rs.labels.iter().zip(&rs.coords) {
        let vals: Vec<Scalar> = flat.basis().iter().map(|h| sp.root_value(c, h)).collect();
        if vals.iter().all(Scalar::is_zero) {
            // Orthogonality: S must be orthogonal to m_l.
            let idx = sp.root_space(l);
            for b in s.basis() {
                let w = crate::lts::project(b, &idx, n);
                if !is_zero(&w) {
                    return Err(Error::NotAFlat);
                }
            }
            continue;
        }
        let neg: Vec<Scalar> = vals.iter().map(|x| -x).collect();
        if let Some(r) = out.iter_mut().find(|r| r.values == vals || r.values == neg) {
            r.ambient.push(l.clone());
        } else {
            out.push(SubRoot { values: vals, ambient: vec![l.clone()], mult: 0, space: Subspace::span(n, &[]) });
        }
    }
    for r in out.iter_mut() {
        let mut idx = Vec::new();
        for l in &r.ambient {
            idx.extend(sp.root_space(l));
        }
        let rows: Vec<Vector> = idx.iter().map(|&k| crate::linalg::unit(n, k)).collect();
        r.space = s.intersect(&Subspace::span(n, &rows));
        r.mult = r.space.dim();
    }
    out.retain(|r| r.mult > 0);
    Ok(out)
}

fn project(v: &[Scalar], idx: &[usize], n: usize) -> Vector {
    let mut w = zeros(n);
    for &k in idx {
        w[k] = v[k].clone();
    }
    w
}

/// Matrix of `ad(H)^2` on `S`, columns in the basis of `S`.
fn ad_sq_on(sp: &SpaceModel, s: &Subspace, h: &[Scalar]) -> Result<Vec<Vector>, Error> {
    let hz = sp.to_alg(h);
    let mut cols = Vec::new();
    let coords = Echelon::from_vectors(s.ambient_dim(), s.basis());
    for b in s.basis() {
        let x = sp.alg.bracket_unchecked(&hz, &sp.alg.bracket_unchecked(&hz, &sp.to_alg(b)));
        let f = sp.to_frame(&x)?;
        if !coords.contains(&f) {
            return Err(Error::NotAFlat);
        }
        cols.push(express(s, &f)?);
    }
    Ok(cols)
}

/// Coordinates of `v` over the basis of `S`.
pub fn express(s: &Subspace, v: &[Scalar]) -> Result<Vector, Error> {
    let d = s.dim();
    let n = s.ambient_dim();
    let mut rows: Vec<Vector> = Vec::new();
    for r in 0..n {
        let mut row: Vector = s.basis().iter().map(|b| b[r].clone()).collect();
        row.push(-&v[r]);
        if !is_zero(&row) {
            rows.push(row);
        }
    }
    let ker = nullspace(&rows, d + 1);
    for k in ker {
        if !k[d].is_zero() {
            let inv = k[d].inv()?;
            return Ok(scale(&inv, &k[..d]));
        }
    }
    Err(Error::Dimension("vector not in subspace".to_string()))
}

fn mat_vec(cols: &[Vector], x: &[Scalar]) -> Vector {
    let d = x.len();
    let mut out = zeros(cols.first().map_or(d, |c| c.len()));
    for (c, xi) in cols.iter().zip(x) {
        axpy(&mut out, xi, c);
    }
    out
}

fn roots_rank_one(sp: &SpaceModel, s: &Subspace, h: &[Scalar]) -> Result<Vec<SubRoot>, Error> {
    let cols = ad_sq_on(sp, s, h)?;
    let d = s.dim();
    // Minimal polynomial of A by Krylov iteration from each basis vector.
    let mut poly: Vec<Scalar> = vec![Scalar::one()];
    for start in 0..d {
        let mut kr = vec![crate::linalg::unit(d, start)];
        loop {
            let next = mat_vec(&cols, kr.last().expect("nonempty"));
            let e = Echelon::from_vectors(d, &kr);
            if e.contains(&next) {
                let c = express(&Subspace::span(d, &kr), &next)?;
                let mut p: Vec<Scalar> = c.iter().map(|x| -x).collect();
                p.push(Scalar::one());
                poly = poly_lcm_monic(&poly, &p);
                break;
            }
            kr.push(next);
        }
    }
    let mut eig: Vec<Scalar> = Vec::new();
    let mut p = poly.clone();
    while p.len() > 1 && p[0].is_zero() {
        p.remove(0);
    }
    match p.len() {
        1 => {}
        2 => eig.push(-&p[0]),
        3 => {
            let disc = &(&p[1] * &p[1]) - &(&p[0] * &Scalar::int(4));
            let r = disc.sqrt_if_expressible()?.ok_or(Error::Inexpressible)?;
            let half = Scalar::frac(1, 2);
            eig.push(&(&(-&p[1]) + &r) * &half);
            eig.push(&(&(-&p[1]) - &r) * &half);
        }
        _ => return Err(Error::Inexpressible),
    }
    let mut out = Vec::new();
    for e in eig {
        // e = -alpha(H)^2
        let a2 = -&e;
        let alpha = a2.sqrt_if_expressible()?.ok_or(Error::Inexpressible)?;
        let shifted: Vec<Vector> = cols
            .iter()
            .enumerate()
            .map(|(k, c)| {
                let mut c = c.clone();
                c[k] = &c[k] - &e;
                c
            })
            .collect();
        let rows = crate::linalg::transpose(&shifted, d);
        let ker = nullspace(&rows, d);
        let vecs: Vec<Vector> = ker.iter().map(|x| combine(x, s.basis(), s.ambient_dim())).collect();
        let space = Subspace::span(s.ambient_dim(), &vecs);
        out.push(SubRoot { values: vec![alpha], ambient: Vec::new(), mult: space.dim(), space });
    }
    Ok(out)
}

fn poly_mul(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += &(x * y);
        }
    }
    out
}

fn poly_divmod(a: &[Scalar], b: &[Scalar]) -> (Vec<Scalar>, Vec<Scalar>) {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    if r.len() < b.len() {
        return (vec![Scalar::zero()], r);
    }
    let mut q = vec![Scalar::zero(); r.len() - db];
    let lead = b[db].inv().expect("monic divisor");
    for k in (0..q.len()).rev() {
        let c = &r[k + db] * &lead;
        if c.is_zero() {
            continue;
        }
        for (m, bm) in b.iter().enumerate() {
            r[k + m] = &r[k + m] - &(&c * bm);
        }
        q[k] = c;
    }
    r.truncate(db.max(1));
    while r.len() > 1 && r.last().map_or(false, Scalar::is_zero) {
        r.pop();
    }
    (q, r)
}

fn poly_gcd(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    let (mut x, mut y) = (a.to_vec(), b.to_vec());
    while !(y.len() == 1 && y[0].is_zero()) {
        let (_, r) = poly_divmod(&x, &y);
        x = y;
        y = r;
    }
    let lead = x.last().expect("nonempty").inv().expect("nonzero");
    x.iter().map(|c| c * &lead).collect()
}

fn poly_lcm_monic(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    let g = poly_gcd(a, b);
    let (q, _) = poly_divmod(&poly_mul(a, b), &g);
    q
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Complexity {
    Complex,
    TotallyReal,
    Neither,
}

impl Complexity {
    pub fn name(self) -> &'static str {
        match self {
            Complexity::Complex => "complex",
            Complexity::TotallyReal => "totally_real",
            Complexity::Neither => "neither",
        }
    }
}

pub fn complexity_class(sp: &SpaceModel, s: &Subspace) -> Result<Complexity, Error> {
    if sp.kind != SpaceKind::EIII {
        return Err(Error::NoComplexStructure);
    }
    let js: Vec<Vector> = s.basis().iter().map(|b| sp.apply_j(b)).collect::<Result<_, _>>()?;
    if js.iter().all(|v| s.contains(v)) {
        return Ok(Complexity::Complex);
    }
    let perp = js.iter().all(|v| s.basis().iter().all(|b| sp.inner(v, b).is_zero()));
    Ok(if perp { Complexity::TotallyReal } else { Complexity::Neither })
}

/// `a` plus all root spaces of a closed set of positive restricted roots.
pub fn lts_from_closed_subsystem(sp: &SpaceModel, labels: &[&str]) -> Result<Subspace, Error> {
    let rs = &sp.restricted;
    let mut sub: Vec<Root> = Vec::new();
    for l in labels {
        let k = rs.index_of_label(l).ok_or_else(|| Error::UnknownLabel(l.to_string()))?;
        sub.push(rs.coords[k].clone());
        sub.push(rs.coords[k].iter().map(|x| -x).collect());
    }
    if !rs.is_closed_subsystem(&sub)? {
        return Err(Error::NotClosed);
    }
    let n = sp.dim_m();
    let mut rows = vec![crate::linalg::unit(n, 0), crate::linalg::unit(n, 1)];
    for l in labels {
        for k in sp.root_space(l) {
            rows.push(crate::linalg::unit(n, k));
        }
    }
    Ok(Subspace::span(n, &rows))
}

/// `Ad(exp(pi/2 Z)) v` for `Z` in `k`, when `ad(Z)^2` acts as `0` or `-1` on the pieces of `v`.
pub fn isotropy_rotate(sp: &SpaceModel, z: &AlgElement, v: &[Scalar]) -> Result<Vector, Error> {
    let ad = |x: &AlgElement| sp.alg.bracket_unchecked(z, x);
    let vz = sp.to_alg(v);
    let w = ad(&vz);
    let w2 = ad(&w);
    // v = v0 + v1 with ad(Z) v0 = 0 and ad(Z)^2 v1 = -v1.
    let v1: AlgElement = w2.iter().map(|x| -x).collect();
    let v0: AlgElement = vz.iter().zip(&v1).map(|(a, b)| a - b).collect();
    if !is_zero(&ad(&v0)) || ad(&ad(&v1)) != v1.iter().map(|x| -x).collect::<AlgElement>() {
        return Err(Error::NotQuarterTurnCompatible);
    }
    let out: AlgElement = v0.iter().zip(&w).map(|(a, b)| a + b).collect();
    sp.to_frame(&out)
}

/// Scale `t` such that `ad(tK)^2 = -1` on the `m`-part where `ad(K)` is nonzero, if uniform.
pub fn quarter_turn_scale(sp: &SpaceModel, k: &AlgElement, probe: &[Scalar]) -> Result<Scalar, Error> {
    let x = sp.to_alg(probe);
    let y = sp.alg.bracket_unchecked(k, &sp.alg.bracket_unchecked(k, &x));
    let p = (0..x.len()).find(|&p| !x[p].is_zero() && !y[p].is_zero()).ok_or(Error::ZeroVector)?;
    let mu = -&(&y[p] / &x[p]);
    let s = mu.sqrt_if_expressible()?.ok_or(Error::Inexpressible)?;
    s.inv()
}

/// Full report of a subspace.
#[derive(Clone, Debug)]
pub struct LtsReport {
    pub is_lts: bool,
    pub failure: Option<ClosureFailure>,
    pub dim: usize,
    pub rank: usize,
    pub flat: Option<Subspace>,
    pub roots: Vec<SubRoot>,
    pub angle: Option<AngleDescriptor>,
    pub complexity: Option<Complexity>,
}

pub fn report(sp: &SpaceModel, s: &Subspace, seed: u64) -> Result<LtsReport, Error> {
    let failure = check_lts(sp, s).err();
    let complexity = if sp.kind == SpaceKind::EIII { Some(complexity_class(sp, s)?) } else { None };
    if failure.is_some() {
        return Ok(LtsReport {
            is_lts: false,
            failure,
            dim: s.dim(),
            rank: 0,
            flat: None,
            roots: Vec::new(),
            angle: None,
            complexity,
        });
    }
    let (rank, flat) = rank_and_flat(sp, s, seed)?;
    let roots = sub_restricted_roots(sp, s, &flat)?;
    let angle = if rank == 1 && a_subspace(sp).contains_subspace(&flat) {
        Some(sp.isotropy_angle(&flat.basis()[0])?)
    } else {
        None
    };
    Ok(LtsReport { is_lts: true, failure: None, dim: s.dim(), rank, flat: Some(flat), roots, angle, complexity })
}

/// Parses one vector line such as `M[l1](1,0,0,0) + M[l2](i,0,0,0) + a(1/2, 0)`.
///
/// Terms: `M[label](c, ...)`, `H[label](t)` for `t * label#`, and `a(x, y)` for
/// coordinates over the simple-root duals; an optional scalar factor may precede
/// a term as `(expr)*` or `expr*`.
pub fn parse_vector(sp: &SpaceModel, line: &str) -> Result<Vector, Error> {
    let n = sp.dim_m();
    let mut out = zeros(n);
    for (sign, term) in split_terms(line)? {
        let term = term.trim();
        let (factor, body) = split_factor(term)?;
        let factor = if sign < 0 { -factor } else { factor };
        let v = parse_term(sp, body)?;
        axpy(&mut out, &factor, &v);
    }
    Ok(out)
}

fn split_terms(line: &str) -> Result<Vec<(i32, String)>, Error> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    let mut sign = 1;
    let chars: Vec<char> = line.chars().collect();
    for &c in chars.iter() {
        match c {
            '(' | '[' => {
                depth += 1;
                cur.push(c);
            }
            ')' | ']' => {
                depth -= 1;
                cur.push(c);
            }
            '+' | '-' if depth == 0 => {
                let prev = cur.trim_end().chars().last();
                if cur.trim().is_empty() || matches!(prev, Some('*')) {
                    if c == '-' && cur.trim().is_empty() {
                        sign = -sign;
                    } else {
                        cur.push(c);
                    }
                    continue;
                }
                out.push((sign, core::mem::take(&mut cur)));
                sign = if c == '-' { -1 } else { 1 };
            }
            _ => cur.push(c),
        }
    }
    if depth != 0 {
        return Err(Error::Parse(format!("unbalanced brackets in {line:?}")));
    }
    if !cur.trim().is_empty() {
        out.push((sign, cur));
    }
    if out.is_empty() {
        return Err(Error::Parse("empty vector".to_string()));
    }
    Ok(out)
}

fn split_factor(term: &str) -> Result<(Scalar, &str), Error> {
    // The term body starts at the last top-level `*`.
    let mut depth = 0i32;
    let mut star = None;
    for (k, c) in term.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            '*' if depth == 0 => star = Some(k),
            _ => {}
        }
    }
    match star {
        Some(k) => Ok((Scalar::parse(term[..k].trim())?, term[k + 1..].trim())),
        None => Ok((Scalar::one(), term)),
    }
}

fn parse_args(s: &str) -> Result<Vec<Scalar>, Error> {
    let s = s.trim();
    if !s.starts_with('(') || !s.ends_with(')') {
        return Err(Error::Parse(format!("expected (..) in {s:?}")));
    }
    let inner = &s[1..s.len() - 1];
    let mut out = Vec::new();
    let mut depth = 0;
    let mut cur = String::new();
    for c in inner.chars() {
        match c {
            '(' => {
                depth += 1;
                cur.push(c);
            }
            ')' => {
                depth -= 1;
                cur.push(c);
            }
            ',' if depth == 0 => out.push(Scalar::parse(core::mem::take(&mut cur).trim())?),
            _ => cur.push(c),
        }
    }
    out.push(Scalar::parse(cur.trim())?);
    Ok(out)
}

fn parse_term(sp: &SpaceModel, body: &str) -> Result<Vector, Error> {
    let body = body.trim();
    let bracketed = |rest: &str| -> Result<(String, Vec<Scalar>), Error> {
        let close = rest.find(']').ok_or_else(|| Error::Parse(format!("missing ] in {body:?}")))?;
        if !rest.starts_with('[') {
            return Err(Error::Parse(format!("expected [label] in {body:?}")));
        }
        Ok((rest[1..close].trim().to_string(), parse_args(&rest[close + 1..])?))
    };
    if let Some(rest) = body.strip_prefix('M').or_else(|| body.strip_prefix('V')) {
        let (label, args) = bracketed(rest)?;
        return sp.chart(&label, &args);
    }
    if let Some(rest) = body.strip_prefix('H') {
        let (label, args) = bracketed(rest)?;
        if args.len() != 1 {
            return Err(Error::Parse("H[label] takes one argument".to_string()));
        }
        return Ok(scale(&args[0], &sp.sharp(&label)?));
    }
    if let Some(rest) = body.strip_prefix('a') {
        let args = parse_args(rest)?;
        if args.len() != 2 {
            return Err(Error::Parse("a(..) takes two coordinates".to_string()));
        }
        let mut v = zeros(sp.dim_m());
        v[0] = args[0].clone();
        v[1] = args[1].clone();
        return Ok(v);
    }
    Err(Error::Parse(format!("unknown term {body:?}")))
}

/// Reads the subspace text format: a header line `space NAME`, then one vector per line.
/// Blank lines and lines starting with `#` are ignored.
pub fn parse_subspace_text(text: &str) -> Result<(SpaceKind, Vec<String>), Error> {
    let mut kind = None;
    let mut lines = Vec::new();
    for raw in text.lines() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if kind.is_none() {
            let name = line.strip_prefix("space").ok_or_else(|| Error::Parse("missing `space NAME` header".to_string()))?;
            kind = Some(SpaceKind::parse(name)?);
            continue;
        }
        lines.push(line.to_string());
    }
    Ok((kind.ok_or_else(|| Error::Parse("empty file".to_string()))?, lines))
}

pub fn subspace_from_lines(sp: &SpaceModel, lines: &[String]) -> Result<Subspace, Error> {
    let rows: Vec<Vector> = lines.iter().map(|l| parse_vector(sp, l)).collect::<Result<_, _>>()?;
    Subspace::new(sp.dim_m(), rows)
}

/// Writes frame coordinates in the vector syntax read by [`parse_vector`].
pub fn format_vector(sp: &SpaceModel, v: &[Scalar]) -> String {
    let mut terms: Vec<String> = Vec::new();
    if !v[0].is_zero() || !v[1].is_zero() {
        terms.push(format!("a({}, {})", v[0], v[1]));
    }
    let chart = if sp.kind == SpaceKind::G2Group { "V" } else { "M" };
    for label in &sp.restricted.labels {
        let obs = sp.orbits_of(label);
        let cs: Vec<Scalar> = obs
            .iter()
            .map(|o| {
                if o.real {
                    v[o.offset].clone()
                } else {
                    &v[o.offset] + &(&Scalar::i() * &v[o.offset + 1])
                }
            })
            .collect();
        if cs.iter().all(Scalar::is_zero) {
            continue;
        }
        let args: Vec<String> = cs.iter().map(|c| c.to_string()).collect();
        terms.push(format!("{chart}[{label}]({})", args.join(", ")));
    }
    if terms.is_empty() {
        return "0".to_string();
    }
    terms.join(" + ")
}

fn substitute_labels(sp: &SpaceModel, expr: &str, value: &dyn Fn(usize) -> i64) -> Result<String, Error> {
    let b = expr.as_bytes();
    let mut out = String::new();
    let mut k = 0;
    while k < b.len() {
        let prev_ident = k > 0 && (b[k - 1].is_ascii_alphanumeric() || b[k - 1] == b'_');
        if b[k] == b'l' && !prev_ident && k + 1 < b.len() && b[k + 1].is_ascii_digit() {
            let mut e = k + 1;
            while e < b.len() && b[e].is_ascii_digit() {
                e += 1;
            }
            let label = &expr[k..e];
            let idx = sp.restricted.index_of_label(label).ok_or_else(|| Error::UnknownLabel(label.to_string()))?;
            out.push_str(&format!("({})", value(idx)));
            k = e;
        } else {
            out.push(b[k] as char);
            k += 1;
        }
    }
    Ok(out)
}

/// Reads an element of `a` written as a linear expression in the root vectors,
/// e.g. `(9*l1 + 5*l2)/sqrt(21)` where `lk` stands for `lk#`.
pub fn parse_a_expr(sp: &SpaceModel, expr: &str) -> Result<Vector, Error> {
    let eval = |value: &dyn Fn(usize) -> i64| -> Result<Scalar, Error> { Scalar::parse(&substitute_labels(sp, expr, value)?) };
    if !eval(&|_| 0)?.is_zero() {
        return Err(Error::Parse(format!("{expr:?} has a constant term")));
    }
    // Additivity and homogeneity on two generic assignments.
    let u = |k: usize| k as i64 + 1;
    let w = |k: usize| 3 * (k as i64) * (k as i64) - 2;
    let (eu, ew) = (eval(&u)?, eval(&w)?);
    if eval(&|k| u(k) + w(k))? != &eu + &ew || eval(&|k| 2 * u(k))? != &eu * &Scalar::int(2) {
        return Err(Error::Parse(format!("{expr:?} is not linear in the roots")));
    }
    let mut out = zeros(sp.dim_m());
    for (p, slot) in out.iter_mut().take(2).enumerate() {
        *slot = eval(&|k| sp.restricted.coords[k][p])?;
    }
    Ok(out)
}
