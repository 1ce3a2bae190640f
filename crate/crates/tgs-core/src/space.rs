//! Compact symmetric spaces EIII, EIV and the group G2 as `(g, sigma)` pairs.
//!
//! Vectors of `m` are handled in frame coordinates: the first two entries are
//! the coefficients over `s1#, s2#` (duals of the two simple restricted roots),
//! followed by the chart vectors `M(1), M(i)` of every sigma-orbit in table
//! order (a single entry `M(1)` for orbits with `sigma(a) = -a`).

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::lie::{AlgElement, LieAlgebra};
use crate::linalg::{axpy, is_zero, nullspace, scale, zeros, Echelon, Vector};
use crate::rational::Rational;
use crate::roots::{RestrictedKind, RestrictedRootSystem, Root};
use crate::scalar::Scalar;
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SpaceKind {
    EIII,
    EIV,
    G2Group,
}

impl SpaceKind {
    pub fn parse(s: &str) -> Result<Self, Error> {
        match s.trim().to_ascii_uppercase().as_str() {
            "EIII" | "E3" => Ok(SpaceKind::EIII),
            "EIV" | "E4" => Ok(SpaceKind::EIV),
            "G2GROUP" | "G2" => Ok(SpaceKind::G2Group),
            _ => Err(Error::Parse(format!("unknown space {s}"))),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            SpaceKind::EIII => "EIII",
            SpaceKind::EIV => "EIV",
            SpaceKind::G2Group => "G2group",
        }
    }

    pub fn all() -> [SpaceKind; 3] {
        [SpaceKind::EIII, SpaceKind::EIV, SpaceKind::G2Group]
    }
}

/// Orbit tables: (restricted root, a, b) for the orbit `{alpha_a, -alpha_b}`,
/// 1-based root numbers, chart order within each restricted root.
pub const EIII_ORBITS: [(&str, usize, usize); 16] = [
    ("l1", 1, 21),
    ("l1", 6, 18),
    ("l1", 7, 16),
    ("l1", 11, 12),
    ("2l1", 23, 23),
    ("l2", 17, 31),
    ("l2", 20, 30),
    ("l2", 22, 28),
    ("l2", 24, 27),
    ("2l2", 36, 36),
    ("l3", 2, 25),
    ("l3", 8, 19),
    ("l3", 13, 14),
    ("l4", 26, 35),
    ("l4", 29, 34),
    ("l4", 32, 33),
];
pub const EIII_FIXED: [usize; 6] = [3, 4, 5, 9, 10, 15];

pub const EIV_ORBITS: [(&str, usize, usize); 12] = [
    ("l1", 1, 30),
    ("l1", 7, 27),
    ("l1", 12, 22),
    ("l1", 17, 18),
    ("l2", 6, 31),
    ("l2", 11, 28),
    ("l2", 16, 24),
    ("l2", 20, 21),
    ("l3", 23, 36),
    ("l3", 26, 35),
    ("l3", 29, 34),
    ("l3", 32, 33),
];
pub const EIV_FIXED: [usize; 12] = [2, 3, 4, 5, 8, 9, 10, 13, 14, 15, 19, 25];

/// Calibrated chart phases (rotation power of i, conjugation) per orbit, table order.
pub const EIII_PHASES: [(u8, bool); 16] = [
    (0, false),
    (0, false),
    (0, false),
    (0, false),
    (2, false),
    (0, false),
    (0, false),
    (0, false),
    (0, false),
    (2, false),
    (0, false),
    (0, false),
    (2, false),
    (0, false),
    (0, false),
    (2, false),
];
pub const EIV_PHASES: [(u8, bool); 12] = [(0, false); 12];
pub const G2_PHASES: [(u8, bool); 6] = [(2, false), (0, false), (0, false), (0, false), (0, false), (2, false)];

/// A chart reparametrisation `c -> w c` or `c -> w conj(c)` with `w = i^rot`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Phase {
    pub rot: u8,
    pub conj: bool,
}

impl Phase {
    pub const ID: Phase = Phase { rot: 0, conj: false };

    pub fn new(rot: u8, conj: bool) -> Self {
        Phase { rot: rot % 4, conj }
    }

    pub fn all() -> [Phase; 8] {
        let mut out = [Phase::ID; 8];
        for k in 0..8 {
            out[k] = Phase::new((k % 4) as u8, k >= 4);
        }
        out
    }

    pub fn signs() -> [Phase; 2] {
        [Phase::ID, Phase::new(2, false)]
    }

    /// Image of `x + i y` as a real pair.
    pub fn apply(&self, x: &Scalar, y: &Scalar) -> (Scalar, Scalar) {
        let (x, y) = if self.conj { (x.clone(), -y) } else { (x.clone(), y.clone()) };
        match self.rot {
            0 => (x, y),
            1 => (-y, x),
            2 => (-x, -y),
            _ => (y, -x),
        }
    }

    /// The 2x2 integer matrix of the map on `(re, im)`.
    pub fn matrix(&self) -> [[i64; 2]; 2] {
        let one = Scalar::one();
        let z = Scalar::zero();
        let c0 = self.apply(&one, &z);
        let c1 = self.apply(&z, &one);
        let f = |s: &Scalar| s.as_rational().and_then(|r| r.to_i64()).unwrap_or(0);
        [[f(&c0.0), f(&c1.0)], [f(&c0.1), f(&c1.1)]]
    }
}

/// One sigma-orbit `{alpha, -beta}` and its place in the frame.
#[derive(Clone, Debug)]
pub struct Orbit {
    pub label: String,
    /// 0-based positive root indices; `alpha == beta` for real orbits.
    pub alpha: usize,
    pub beta: usize,
    pub real: bool,
    /// Index of the first frame coordinate.
    pub offset: usize,
    pub phase: Phase,
    /// Unit raw chart vectors from `u_alpha`, `v_alpha` (m side and k side).
    raw_m: Vec<AlgElement>,
    raw_k: Vec<AlgElement>,
}

impl Orbit {
    pub fn width(&self) -> usize {
        if self.real {
            1
        } else {
            2
        }
    }

    pub fn raw_m(&self) -> &[AlgElement] {
        &self.raw_m
    }
}

/// Reported angle of a vector in `a` measured from the base ray of the chamber.
#[derive(Clone, Debug, PartialEq)]
pub struct AngleDescriptor {
    pub tan_sq: Scalar,
    pub name: Option<&'static str>,
    /// Weyl-reduced vector in the closed chamber (frame coordinates of `a`).
    pub reduced: [Scalar; 2],
}

#[derive(Clone, Debug)]
pub struct OrbitReport {
    pub label: String,
    pub alpha: usize,
    pub beta: usize,
}

#[derive(Clone, Debug)]
pub struct SpaceModel {
    pub kind: SpaceKind,
    pub alg: LieAlgebra,
    /// Sparse image of each compact basis vector under sigma.
    sigma: Vec<Vec<(usize, Scalar)>>,
    /// Root-level involution: image index and lift sign per root (2N entries).
    pub sigma_root: Vec<(usize, i64)>,
    pub restricted: RestrictedRootSystem,
    pub orbits: Vec<Orbit>,
    pub fixed_roots: Vec<usize>,
    /// `<X, Y> = -metric_scale * kappa(X, Y)`.
    pub metric_scale: Rational,
    pub k_basis: Vec<AlgElement>,
    frame: Vec<AlgElement>,
    dual: Vec<AlgElement>,
    gram: Vec<Vec<Scalar>>,
    gram_inv_a: [[Scalar; 2]; 2],
    tensor: Vec<Vec<(u16, Scalar)>>,
    j: Option<AlgElement>,
    jmat: Option<Vec<Vector>>,
    /// Base ray of the closed chamber, coordinates over the simple duals.
    base_ray: [i64; 2],
}

fn sq(x: &Scalar, y: &Scalar) -> Scalar {
    x * y
}

fn rat(s: &Scalar) -> Result<Rational, Error> {
    s.as_rational().ok_or(Error::NotRationalTerm)
}

fn inv_sqrt(n2: &Scalar) -> Result<Scalar, Error> {
    let s = n2.sqrt_if_expressible()?.ok_or(Error::Inexpressible)?;
    s.inv()
}

impl SpaceModel {
    pub fn build(name: &str) -> Result<Self, Error> {
        Self::build_kind(SpaceKind::parse(name)?)
    }

    pub fn build_kind(kind: SpaceKind) -> Result<Self, Error> {
        let phases: Vec<Phase> = match kind {
            SpaceKind::EIII => EIII_PHASES.iter().map(|&(r, c)| Phase::new(r, c)).collect(),
            SpaceKind::EIV => EIV_PHASES.iter().map(|&(r, c)| Phase::new(r, c)).collect(),
            SpaceKind::G2Group => G2_PHASES.iter().map(|&(r, c)| Phase::new(r, c)).collect(),
        };
        Self::build_with_phases(kind, &phases)
    }

    /// Builds the model with explicit per-orbit chart phases (used by calibration).
    pub fn build_with_phases(kind: SpaceKind, phases: &[Phase]) -> Result<Self, Error> {
        let alg = LieAlgebra::of_type(match kind {
            SpaceKind::G2Group => "G2",
            _ => "E6",
        })?;
        let n2 = alg.sc.num_roots();
        let np = n2 / 2;
        let rank = alg.rank();
        let dim = alg.dim();

        // Orbit table rows.
        let rows: Vec<(String, usize, usize)> = match kind {
            SpaceKind::EIII => EIII_ORBITS.iter().map(|&(l, a, b)| (l.to_string(), a - 1, b - 1)).collect(),
            SpaceKind::EIV => EIV_ORBITS.iter().map(|&(l, a, b)| (l.to_string(), a - 1, b - 1)).collect(),
            SpaceKind::G2Group => (0..np).map(|k| (format!("l{}", k + 1), k, k)).collect(),
        };
        let fixed: Vec<usize> = match kind {
            SpaceKind::EIII => EIII_FIXED.iter().map(|k| k - 1).collect(),
            SpaceKind::EIV => EIV_FIXED.iter().map(|k| k - 1).collect(),
            SpaceKind::G2Group => Vec::new(),
        };
        if phases.len() != rows.len() {
            return Err(Error::Dimension(format!("{} phases for {} orbits", phases.len(), rows.len())));
        }

        let (sigma_root, sigma) = match kind {
            SpaceKind::G2Group => {
                let sr = (0..n2).map(|r| (alg.sc.neg(r), 1)).collect();
                let s = (0..dim).map(|p| vec![(p, Scalar::int(-1))]).collect();
                (sr, s)
            }
            _ => {
                let sr = root_involution(&alg, &rows, &fixed)?;
                lift_involution(&alg, &sr, &fixed)?
            }
        };
        let apply_sigma = |x: &[Scalar]| -> AlgElement {
            let mut out = zeros(dim);
            for (p, xp) in x.iter().enumerate() {
                if xp.is_zero() {
                    continue;
                }
                for (q, c) in &sigma[p] {
                    out[*q] += &(xp * c);
                }
            }
            out
        };
        let half = Scalar::frac(1, 2);
        let proj = |x: &AlgElement, sign: i64| -> AlgElement {
            let s = apply_sigma(x);
            x.iter().zip(&s).map(|(a, b)| &(a + &(b * &Scalar::int(sign))) * &half).collect()
        };

        // k basis.
        let mut ke = Echelon::new(dim);
        let mut me = Echelon::new(dim);
        for p in 0..dim {
            let e = alg.basis_vector(p);
            ke.insert(&proj(&e, 1));
            me.insert(&proj(&e, -1));
        }
        let k_basis = ke.rows().to_vec();
        if ke.rank() + me.rank() != dim {
            return Err(Error::LiftFailure);
        }

        // a: the (-1)-eigenspace of sigma on t.
        let mut t_eqs: Vec<Vector> = Vec::new();
        for q in 0..dim {
            let row: Vector = (0..rank)
                .map(|p| {
                    let mut c = Scalar::zero();
                    for (qq, s) in &sigma[p] {
                        if *qq == q {
                            c = s.clone();
                        }
                    }
                    if p == q {
                        c = &c + &Scalar::one();
                    }
                    c
                })
                .collect();
            if !is_zero(&row) {
                t_eqs.push(row);
            }
        }
        let a_raw: Vec<AlgElement> = nullspace(&t_eqs, rank)
            .into_iter()
            .map(|x| {
                let mut v = zeros(dim);
                v[..rank].clone_from_slice(&x);
                v
            })
            .collect();
        if a_raw.len() != 2 {
            return Err(Error::Dimension(format!("dim a = {}", a_raw.len())));
        }

        // Restricted functional of a positive root on the raw a basis.
        let functional = |root: usize| -> [Scalar; 2] {
            let r = &alg.sc.roots[root];
            let mut out = [Scalar::zero(), Scalar::zero()];
            for (m, b) in a_raw.iter().enumerate() {
                for j in 0..rank {
                    let c = alg.rs().pairing_simple(r, j);
                    if c != 0 {
                        out[m] += &b[j].scale(&Rational::int(c));
                    }
                }
            }
            out
        };
        // -kappa on the raw a basis.
        let mut ga = [[Scalar::zero(), Scalar::zero()], [Scalar::zero(), Scalar::zero()]];
        for p in 0..2 {
            for q in 0..2 {
                ga[p][q] = -alg.killing_form(&a_raw[p], &a_raw[q])?;
            }
        }
        let ga_inv = inv2(&ga)?;
        let norm1 = |f: &[Scalar; 2]| -> Scalar {
            let mut s = Scalar::zero();
            for p in 0..2 {
                for q in 0..2 {
                    s += &(&(&f[p] * &ga_inv[p][q]) * &f[q]);
                }
            }
            s
        };

        let mut restricted = match kind {
            SpaceKind::EIII => RestrictedRootSystem::bc2([0; 6]),
            SpaceKind::EIV => RestrictedRootSystem::a2(0),
            SpaceKind::G2Group => RestrictedRootSystem::g2(0),
        };
        let label_fn = |l: &str| -> Result<[Scalar; 2], Error> {
            let (_, a, _) = rows
                .iter()
                .find(|(lab, _, _)| lab == l)
                .ok_or_else(|| Error::UnknownLabel(l.to_string()))?;
            Ok(functional(*a))
        };
        let simple: Vec<String> = restricted
            .labels
            .iter()
            .zip(&restricted.coords)
            .filter(|(_, c)| (c[0] == 1 && c[1] == 0) || (c[0] == 0 && c[1] == 1))
            .map(|(l, _)| l.clone())
            .collect();
        let f1 = label_fn(&simple[0])?;
        let f2 = label_fn(&simple[1])?;
        // Every orbit must restrict to the combination its label prescribes.
        for (l, a, b) in &rows {
            let idx = restricted.index_of_label(l).ok_or_else(|| Error::UnknownLabel(l.clone()))?;
            let c = &restricted.coords[idx];
            let want: Vec<Scalar> = (0..2)
                .map(|m| &f1[m].scale(&Rational::int(c[0])) + &f2[m].scale(&Rational::int(c[1])))
                .collect();
            for r in [*a, *b] {
                let got = functional(r);
                if got[0] != want[0] || got[1] != want[1] {
                    return Err(Error::NotSubset(format!("alpha{} does not restrict to {l}", r + 1)));
                }
            }
            restricted.mult[idx] += if a == b && kind != SpaceKind::G2Group { 1 } else { 2 };
        }
        // Metric scale: shortest restricted root has length 1.
        let mut c_scale: Option<Rational> = None;
        for l in restricted.labels.clone() {
            let n = rat(&norm1(&label_fn(&l)?))?;
            c_scale = Some(match c_scale {
                Some(c) if c <= n => c,
                _ => n,
            });
        }
        let metric_scale = c_scale.ok_or(Error::Dimension("no roots".to_string()))?;
        let cs = Scalar::from(metric_scale.clone());
        // Gram of the simple roots must match the abstract system.
        for (p, fp) in [&f1, &f2].iter().enumerate() {
            for (q, fq) in [&f1, &f2].iter().enumerate() {
                let mut s = Scalar::zero();
                for x in 0..2 {
                    for y in 0..2 {
                        s += &(&(&fp[x] * &ga_inv[x][y]) * &fq[y]);
                    }
                }
                let s = &s / &cs;
                if s != Scalar::from(restricted.simple_gram[p][q].clone()) {
                    return Err(Error::Dimension(format!("restricted Gram entry ({p},{q}) = {s}")));
                }
            }
        }
        let sharp = |f: &[Scalar; 2]| -> AlgElement {
            let mut v = zeros(dim);
            for p in 0..2 {
                let mut coef = Scalar::zero();
                for q in 0..2 {
                    coef += &(&ga_inv[p][q] * &f[q]);
                }
                let coef = &coef / &cs;
                axpy(&mut v, &coef, &a_raw[p]);
            }
            v
        };

        let inner = |x: &AlgElement, y: &AlgElement| -> Result<Scalar, Error> {
            Ok(-&(&alg.killing_form(x, y)? * &cs))
        };

        // Frame.
        let mut frame: Vec<AlgElement> = vec![sharp(&f1), sharp(&f2)];
        let mut orbits = Vec::new();
        for ((l, a, b), ph) in rows.iter().zip(phases) {
            let real = a == b && kind != SpaceKind::G2Group;
            let u = alg.basis_vector(alg.u(*a));
            let v = alg.basis_vector(alg.v(*a));
            let (raw_m, raw_k) = if kind == SpaceKind::G2Group {
                (vec![u, v], Vec::new())
            } else if real {
                let (pu, pv) = (proj(&u, -1), proj(&v, -1));
                if is_zero(&pu) {
                    (vec![pv], vec![proj(&u, 1)])
                } else {
                    (vec![pu], vec![proj(&v, 1)])
                }
            } else {
                (vec![proj(&u, -1), proj(&v, -1)], vec![proj(&u, 1), proj(&v, 1)])
            };
            let mut nm = Vec::new();
            for x in &raw_m {
                nm.push(scale(&inv_sqrt(&inner(x, x)?)?, x));
            }
            let mut nk = Vec::new();
            for x in &raw_k {
                nk.push(scale(&inv_sqrt(&(-&(&alg.killing_form(x, x)? * &cs)))?, x));
            }
            let orbit = Orbit {
                label: l.clone(),
                alpha: *a,
                beta: *b,
                real,
                offset: frame.len(),
                phase: if real { Phase::new(ph.rot & 2, false) } else { *ph },
                raw_m: nm,
                raw_k: nk,
            };
            for vtx in orbit_vectors(&orbit, &orbit.raw_m) {
                frame.push(vtx);
            }
            orbits.push(orbit);
        }
        if frame.len() != me.rank() {
            return Err(Error::Dimension(format!("frame {} vs dim m {}", frame.len(), me.rank())));
        }

        let n = frame.len();
        let mut gram = vec![vec![Scalar::zero(); n]; n];
        for p in 0..n {
            for q in p..n {
                let s = inner(&frame[p], &frame[q])?;
                gram[p][q] = s.clone();
                gram[q][p] = s;
            }
        }
        for p in 2..n {
            for q in 0..n {
                let want = if p == q { Scalar::one() } else { Scalar::zero() };
                if gram[p][q] != want {
                    return Err(Error::NotOrthonormal);
                }
            }
        }
        let gram_inv_a = inv2(&[[gram[0][0].clone(), gram[0][1].clone()], [gram[1][0].clone(), gram[1][1].clone()]])?;
        // dual[p] . X = <frame[p], X>
        let dual: Vec<AlgElement> = frame
            .iter()
            .map(|f| {
                let mut w = zeros(dim);
                for (p, fp) in f.iter().enumerate() {
                    if fp.is_zero() {
                        continue;
                    }
                    for q in 0..dim {
                        let k = alg.killing_basis(p, q);
                        if k != 0 {
                            w[q] += &fp.scale(&(&Rational::int(-k) * &metric_scale));
                        }
                    }
                }
                w
            })
            .collect();

        let base_ray = match kind {
            SpaceKind::EIII => [1, 1],
            SpaceKind::EIV => [2, 1],
            SpaceKind::G2Group => [2, 1],
        };
        let mut sp = SpaceModel {
            kind,
            alg,
            sigma,
            sigma_root,
            restricted,
            orbits,
            fixed_roots: fixed,
            metric_scale,
            k_basis,
            frame,
            dual,
            gram,
            gram_inv_a,
            tensor: Vec::new(),
            j: None,
            jmat: None,
            base_ray,
        };
        sp.tensor = sp.compute_tensor()?;
        if kind == SpaceKind::EIII {
            let j = sp.compute_j()?;
            let jm: Result<Vec<Vector>, Error> =
                sp.frame.iter().map(|f| sp.to_frame(&sp.alg.bracket_unchecked(&j, f))).collect();
            sp.jmat = Some(jm?);
            sp.j = Some(j);
        }
        Ok(sp)
    }

    pub fn dim_m(&self) -> usize {
        self.frame.len()
    }

    pub fn dim_k(&self) -> usize {
        self.k_basis.len()
    }

    pub fn frame(&self) -> &[AlgElement] {
        &self.frame
    }

    pub fn gram(&self) -> &[Vec<Scalar>] {
        &self.gram
    }

    pub fn sigma_apply(&self, x: &[Scalar]) -> AlgElement {
        let mut out = zeros(self.alg.dim());
        for (p, xp) in x.iter().enumerate() {
            if xp.is_zero() {
                continue;
            }
            for (q, c) in &self.sigma[p] {
                out[*q] += &(xp * c);
            }
        }
        out
    }

    /// Exhaustive check that sigma is an involutive automorphism.
    pub fn check_sigma(&self) -> Result<(), Error> {
        let d = self.alg.dim();
        for p in 0..d {
            let e = self.alg.basis_vector(p);
            if self.sigma_apply(&self.sigma_apply(&e)) != e {
                return Err(Error::LiftFailure);
            }
        }
        let images: Vec<AlgElement> = (0..d).map(|p| self.sigma_apply(&self.alg.basis_vector(p))).collect();
        for p in 0..d {
            for q in (p + 1)..d {
                let lhs = self.alg.bracket_unchecked(&images[p], &images[q]);
                let mut br = zeros(d);
                for &(k, c) in self.alg.basis_bracket(p, q) {
                    br[k as usize] = Scalar::int(c);
                }
                if lhs != self.sigma_apply(&br) {
                    return Err(Error::LiftFailure);
                }
            }
        }
        Ok(())
    }

    /// `<X, Y>` for algebra elements.
    pub fn inner_alg(&self, x: &[Scalar], y: &[Scalar]) -> Result<Scalar, Error> {
        Ok(-&self.alg.killing_form(x, y)?.scale(&self.metric_scale))
    }

    /// `<x, y>` for frame coordinate vectors.
    pub fn inner(&self, x: &[Scalar], y: &[Scalar]) -> Scalar {
        let mut s = Scalar::zero();
        for p in 0..2 {
            for q in 0..2 {
                if !x[p].is_zero() && !y[q].is_zero() {
                    s += &(&(&x[p] * &self.gram[p][q]) * &y[q]);
                }
            }
        }
        for p in 2..x.len() {
            if !x[p].is_zero() && !y[p].is_zero() {
                s += &(&x[p] * &y[p]);
            }
        }
        s
    }

    pub fn norm_sq(&self, x: &[Scalar]) -> Scalar {
        self.inner(x, x)
    }

    /// Algebra element of a frame coordinate vector.
    pub fn to_alg(&self, x: &[Scalar]) -> AlgElement {
        let mut out = zeros(self.alg.dim());
        for (c, f) in x.iter().zip(&self.frame) {
            axpy(&mut out, c, f);
        }
        out
    }

    /// Frame coordinates of an element of `m`; `NotInM` otherwise.
    pub fn to_frame(&self, x: &[Scalar]) -> Result<Vector, Error> {
        let n = self.frame.len();
        let ys: Vector = self.dual.iter().map(|w| crate::linalg::dot(w, x)).collect();
        let mut out = zeros(n);
        for p in 0..2 {
            for q in 0..2 {
                out[p] += &(&self.gram_inv_a[p][q] * &ys[q]);
            }
        }
        out[2..n].clone_from_slice(&ys[2..n]);
        if self.to_alg(&out).as_slice() != x {
            return Err(Error::NotInM);
        }
        Ok(out)
    }

    fn compute_tensor(&self) -> Result<Vec<Vec<(u16, Scalar)>>, Error> {
        let n = self.frame.len();
        let mut t = vec![Vec::new(); n * n * n];
        for i in 0..n {
            for j in (i + 1)..n {
                let b = self.alg.bracket_unchecked(&self.frame[i], &self.frame[j]);
                if is_zero(&b) {
                    continue;
                }
                for k in 0..n {
                    let r = self.alg.bracket_unchecked(&b, &self.frame[k]);
                    if is_zero(&r) {
                        continue;
                    }
                    let c = self.to_frame(&r)?;
                    let pos: Vec<(u16, Scalar)> =
                        c.iter().enumerate().filter(|(_, s)| !s.is_zero()).map(|(m, s)| (m as u16, -s)).collect();
                    let neg: Vec<(u16, Scalar)> = pos.iter().map(|(m, s)| (*m, -s)).collect();
                    t[(i * n + j) * n + k] = pos;
                    t[(j * n + i) * n + k] = neg;
                }
            }
        }
        Ok(t)
    }

    /// `R(f_i, f_j) f_k` on frame basis vectors, sparse.
    pub fn tensor_entry(&self, i: usize, j: usize, k: usize) -> &[(u16, Scalar)] {
        let n = self.frame.len();
        &self.tensor[(i * n + j) * n + k]
    }

    /// `R(x, y) z = -[[x, y], z]` on frame coordinates.
    pub fn curvature(&self, x: &[Scalar], y: &[Scalar], z: &[Scalar]) -> Vector {
        let n = self.frame.len();
        let mut out = zeros(n);
        let sx: Vec<usize> = (0..n).filter(|&p| !x[p].is_zero()).collect();
        let sy: Vec<usize> = (0..n).filter(|&p| !y[p].is_zero()).collect();
        let sz: Vec<usize> = (0..n).filter(|&p| !z[p].is_zero()).collect();
        for &i in &sx {
            for &j in &sy {
                if i == j {
                    continue;
                }
                let cij = &x[i] * &y[j];
                for &k in &sz {
                    let e = &self.tensor[(i * n + j) * n + k];
                    if e.is_empty() {
                        continue;
                    }
                    let c = &cij * &z[k];
                    for (m, s) in e {
                        out[*m as usize] += &(&c * s);
                    }
                }
            }
        }
        out
    }

    /// Curvature on algebra elements; rejects arguments with a k-component.
    pub fn curvature_alg(&self, x: &[Scalar], y: &[Scalar], z: &[Scalar]) -> Result<AlgElement, Error> {
        let (fx, fy, fz) = (self.to_frame(x)?, self.to_frame(y)?, self.to_frame(z)?);
        Ok(self.to_alg(&self.curvature(&fx, &fy, &fz)))
    }

    /// `[x, y]` of two frame vectors, as an algebra element of `k`.
    pub fn bracket_k(&self, x: &[Scalar], y: &[Scalar]) -> AlgElement {
        self.alg.bracket_unchecked(&self.to_alg(x), &self.to_alg(y))
    }

    pub fn orbits_of(&self, label: &str) -> Vec<&Orbit> {
        self.orbits.iter().filter(|o| o.label == label).collect()
    }

    /// Frame coordinates of `M_label(c_1, ..., c_n)`.
    pub fn chart(&self, label: &str, c: &[Scalar]) -> Result<Vector, Error> {
        let obs = self.orbits_of(label);
        if obs.is_empty() {
            return Err(Error::UnknownLabel(label.to_string()));
        }
        if obs.len() != c.len() {
            return Err(Error::Dimension(format!("{label} takes {} entries, got {}", obs.len(), c.len())));
        }
        let mut out = zeros(self.frame.len());
        for (o, ci) in obs.iter().zip(c) {
            if o.real {
                if !ci.is_real() {
                    return Err(Error::NotReal);
                }
                out[o.offset] += ci;
            } else {
                out[o.offset] += &ci.re();
                out[o.offset + 1] += &ci.im();
            }
        }
        Ok(out)
    }

    /// `K_label(c_1, ..., c_n)` as an algebra element of `k`.
    pub fn k_chart(&self, label: &str, c: &[Scalar]) -> Result<AlgElement, Error> {
        let obs = self.orbits_of(label);
        if obs.len() != c.len() || obs.is_empty() || self.kind == SpaceKind::G2Group {
            return Err(Error::UnknownLabel(label.to_string()));
        }
        let mut out = zeros(self.alg.dim());
        for (o, ci) in obs.iter().zip(c) {
            let vs = orbit_vectors(o, &o.raw_k);
            if o.real {
                axpy(&mut out, ci, &vs[0]);
            } else {
                axpy(&mut out, &ci.re(), &vs[0]);
                axpy(&mut out, &ci.im(), &vs[1]);
            }
        }
        Ok(out)
    }

    /// `K` chart of a single orbit given by its positive root (0-based).
    pub fn k_chart_root(&self, root: usize, c: &Scalar) -> Result<AlgElement, Error> {
        let o = self
            .orbits
            .iter()
            .find(|o| o.alpha == root || o.beta == root)
            .ok_or_else(|| Error::UnknownLabel(format!("alpha{}", root + 1)))?;
        let vs = orbit_vectors(o, &o.raw_k);
        if vs.is_empty() {
            return Err(Error::UnknownLabel(format!("alpha{}", root + 1)));
        }
        let mut out = zeros(self.alg.dim());
        axpy(&mut out, &c.re(), &vs[0]);
        if !o.real {
            axpy(&mut out, &c.im(), &vs[1]);
        }
        Ok(out)
    }

    /// Frame coordinates of `lambda#` for a restricted root label.
    pub fn sharp(&self, label: &str) -> Result<Vector, Error> {
        let idx = self.restricted.index_of_label(label).ok_or_else(|| Error::UnknownLabel(label.to_string()))?;
        let c = &self.restricted.coords[idx];
        let mut out = zeros(self.frame.len());
        out[0] = Scalar::int(c[0]);
        out[1] = Scalar::int(c[1]);
        Ok(out)
    }

    /// `lambda(v)` for `v` with coordinates in the `a` block.
    pub fn root_value(&self, coords: &[i64], v: &[Scalar]) -> Scalar {
        let g = &self.restricted.simple_gram;
        let mut s = Scalar::zero();
        for p in 0..2 {
            for q in 0..2 {
                s += &v[p].scale(&(&g[p][q] * &Rational::int(coords[q])));
            }
        }
        s
    }

    /// Frame index range of the restricted root space of a label.
    pub fn root_space(&self, label: &str) -> Vec<usize> {
        let mut out = Vec::new();
        for o in self.orbits_of(label) {
            for k in 0..o.width() {
                out.push(o.offset + k);
            }
        }
        out
    }

    /// Label of the restricted root space containing frame index `p` (`None` for `a`).
    pub fn label_of_index(&self, p: usize) -> Option<&str> {
        self.orbits.iter().find(|o| p >= o.offset && p < o.offset + o.width()).map(|o| o.label.as_str())
    }

    pub fn j(&self) -> Result<&AlgElement, Error> {
        self.j.as_ref().ok_or(Error::NotHermitian)
    }

    /// `J x` on frame coordinates.
    pub fn apply_j(&self, x: &[Scalar]) -> Result<Vector, Error> {
        let jm = self.jmat.as_ref().ok_or(Error::NotHermitian)?;
        let mut out = zeros(self.frame.len());
        for (c, col) in x.iter().zip(jm) {
            axpy(&mut out, c, col);
        }
        Ok(out)
    }

    /// Basis of the center of `k`.
    pub fn center_of_k(&self) -> Vec<AlgElement> {
        let nk = self.k_basis.len();
        let d = self.alg.dim();
        let mut cols: Vec<Vec<AlgElement>> = Vec::with_capacity(nk);
        for p in 0..nk {
            cols.push(self.k_basis.iter().map(|q| self.alg.bracket_unchecked(&self.k_basis[p], q)).collect());
        }
        let mut eqs = Vec::new();
        for q in 0..nk {
            for r in 0..d {
                let row: Vector = (0..nk).map(|p| cols[p][q][r].clone()).collect();
                if !is_zero(&row) {
                    eqs.push(row);
                }
            }
        }
        nullspace(&eqs, nk)
            .into_iter()
            .map(|x| {
                let mut z = zeros(d);
                for (c, b) in x.iter().zip(&self.k_basis) {
                    axpy(&mut z, c, b);
                }
                z
            })
            .collect()
    }

    /// The element `alpha#` of `t` dual to a root under `-kappa`.
    pub fn root_sharp_t(&self, root: &[i64]) -> Result<AlgElement, Error> {
        let r = self.alg.rank();
        let mut g = vec![vec![Scalar::zero(); r]; r];
        for p in 0..r {
            for q in 0..r {
                g[p][q] = Scalar::int(-self.alg.killing_basis(p, q));
            }
        }
        let rhs: Vector = (0..r).map(|j| Scalar::int(self.alg.rs().pairing_simple(root, j))).collect();
        let x = solve(&g, &rhs)?;
        let mut out = zeros(self.alg.dim());
        out[..r].clone_from_slice(&x);
        Ok(out)
    }

    fn compute_j(&self) -> Result<AlgElement, Error> {
        let z = self.center_of_k();
        if z.len() != 1 {
            return Err(Error::NotHermitian);
        }
        let j0 = &z[0];
        let f = &self.frame[0];
        let jj = self.alg.bracket_unchecked(j0, &self.alg.bracket_unchecked(j0, f));
        // jj = -mu f
        let p = f.iter().position(|s| !s.is_zero()).ok_or(Error::ZeroVector)?;
        let mu = -&(&jj[p] / &f[p]);
        let mut j = scale(&inv_sqrt(&mu)?, j0);
        let target = self.j_torus_target()?;
        let d = crate::linalg::dot(&target[..self.alg.rank()], &j[..self.alg.rank()]);
        if d.sign()? < 0 {
            j = scale(&Scalar::int(-1), &j);
        }
        Ok(j)
    }

    /// `2/3 (a1# - a6#) + 1/3 (a3# - a5#)` in `t`.
    pub fn j_torus_target(&self) -> Result<AlgElement, Error> {
        let unit = |k: usize| -> Root { (0..6).map(|m| (m == k) as i64).collect() };
        let mut out = zeros(self.alg.dim());
        for (k, c) in [(0, Scalar::frac(2, 3)), (5, Scalar::frac(-2, 3)), (2, Scalar::frac(1, 3)), (4, Scalar::frac(-1, 3))] {
            axpy(&mut out, &c, &self.root_sharp_t(&unit(k))?);
        }
        Ok(out)
    }

    /// Weyl-reduces `v` (coordinates over the simple duals) into the closed chamber
    /// and reports its angle from the base ray.
    pub fn isotropy_angle(&self, v: &[Scalar]) -> Result<AngleDescriptor, Error> {
        if v.len() < 2 || (v[0].is_zero() && v[1].is_zero()) {
            return Err(Error::ZeroVector);
        }
        if v[2..].iter().any(|s| !s.is_zero()) {
            return Err(Error::Dimension("vector is not in a".to_string()));
        }
        let mut w = [v[0].clone(), v[1].clone()];
        let simple = [[1i64, 0], [0, 1]];
        let mut guard = 0;
        loop {
            let mut moved = false;
            for s in &simple {
                if self.root_value(s, &w).sign()? < 0 {
                    let r = self.restricted.reflect(&w, s);
                    w = [r[0].clone(), r[1].clone()];
                    moved = true;
                }
            }
            guard += 1;
            if !moved || guard > 32 {
                break;
            }
        }
        let b = [Scalar::int(self.base_ray[0]), Scalar::int(self.base_ray[1])];
        let ip = |x: &[Scalar; 2], y: &[Scalar; 2]| -> Scalar {
            let g = &self.restricted.simple_gram;
            let mut s = Scalar::zero();
            for p in 0..2 {
                for q in 0..2 {
                    s += &(&(&x[p] * &y[q]) * &Scalar::from(g[p][q].clone()));
                }
            }
            s
        };
        let c = ip(&w, &b);
        let num = &sq(&ip(&w, &w), &ip(&b, &b)) - &sq(&c, &c);
        let tan_sq = &num / &sq(&c, &c);
        Ok(AngleDescriptor { name: angle_name(&tan_sq), tan_sq, reduced: w })
    }

    /// Orbits of sigma recomputed from the lifted involution.
    pub fn sigma_orbit_report(&self) -> (Vec<OrbitReport>, Vec<usize>) {
        let np = self.alg.sc.num_positive();
        let mut seen = vec![false; np];
        let mut out = Vec::new();
        let mut fixed = Vec::new();
        for a in 0..np {
            if seen[a] {
                continue;
            }
            let (img, _) = self.sigma_root[a];
            if img == a {
                fixed.push(a);
                continue;
            }
            if img < np {
                continue;
            }
            let b = img - np;
            seen[a] = true;
            seen[b] = true;
            let label = self
                .orbits
                .iter()
                .find(|o| o.alpha == a || o.beta == a)
                .map(|o| o.label.clone())
                .unwrap_or_default();
            out.push(OrbitReport { label, alpha: a, beta: b });
        }
        (out, fixed)
    }

    pub fn restricted_kind(&self) -> RestrictedKind {
        self.restricted.kind
    }
}

/// Frame vectors `M(1), M(i)` of an orbit from its unit raw vectors and phase.
fn orbit_vectors(o: &Orbit, raw: &[AlgElement]) -> Vec<AlgElement> {
    if raw.is_empty() {
        return Vec::new();
    }
    let comb = |x: &Scalar, y: &Scalar| -> AlgElement {
        let mut v = scale(x, &raw[0]);
        if raw.len() > 1 {
            axpy(&mut v, y, &raw[1]);
        }
        v
    };
    let (one, zero) = (Scalar::one(), Scalar::zero());
    let p1 = o.phase.apply(&one, &zero);
    if o.real || raw.len() == 1 {
        return vec![comb(&p1.0, &p1.1)];
    }
    let pi = o.phase.apply(&zero, &one);
    vec![comb(&p1.0, &p1.1), comb(&pi.0, &pi.1)]
}

fn angle_table() -> [(Scalar, &'static str); 7] {
    [
        (Scalar::zero(), "0"),
        (Scalar::frac(1, 3), "pi/6"),
        (Scalar::one(), "pi/4"),
        (Scalar::int(3), "pi/3"),
        (Scalar::frac(1, 4), "arctan(1/2)"),
        (Scalar::frac(1, 9), "arctan(1/3)"),
        (Scalar::frac(1, 27), "arctan(1/(3*sqrt(3)))"),
    ]
}

pub fn angle_name(tan_sq: &Scalar) -> Option<&'static str> {
    angle_table().into_iter().find(|(v, _)| v == tan_sq).map(|(_, n)| n)
}

/// Inverse of [`angle_name`]: `tan^2` of a named angle.
pub fn angle_from_name(name: &str) -> Option<Scalar> {
    angle_table().into_iter().find(|(_, n)| *n == name).map(|(v, _)| v)
}

fn inv2(m: &[[Scalar; 2]; 2]) -> Result<[[Scalar; 2]; 2], Error> {
    let det = &(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0]);
    let di = det.inv()?;
    Ok([
        [&m[1][1] * &di, -&(&m[0][1] * &di)],
        [-&(&m[1][0] * &di), &m[0][0] * &di],
    ])
}

/// Solves a square nonsingular system exactly.
pub fn solve(a: &[Vec<Scalar>], b: &[Scalar]) -> Result<Vector, Error> {
    let n = a.len();
    let mut m: Vec<Vector> = a.iter().zip(b).map(|(r, x)| {
        let mut r = r.clone();
        r.push(x.clone());
        r
    }).collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !m[r][c].is_zero()).ok_or(Error::ZeroDivision)?;
        m.swap(c, p);
        let inv = m[c][c].inv()?;
        m[c] = scale(&inv, &m[c]);
        for r in 0..n {
            if r != c && !m[r][c].is_zero() {
                let f = -&m[r][c];
                let row = m[c].clone();
                axpy(&mut m[r], &f, &row);
            }
        }
    }
    Ok(m.iter().map(|r| r[n].clone()).collect())
}

/// Sigma on all roots from the orbit table; validates the table.
fn root_involution(
    alg: &LieAlgebra,
    rows: &[(String, usize, usize)],
    fixed: &[usize],
) -> Result<Vec<(usize, i64)>, Error> {
    let sc = &alg.sc;
    let np = sc.num_positive();
    let rank = alg.rank();
    let mut index: BTreeMap<Root, usize> = BTreeMap::new();
    for (k, r) in sc.roots.iter().enumerate() {
        index.insert(r.clone(), k);
    }
    // Images of the simple roots as root vectors.
    let mut simple_img: Vec<Option<Root>> = vec![None; rank];
    for i in 0..rank {
        if fixed.contains(&i) {
            simple_img[i] = Some(sc.roots[i].clone());
        }
        for (_, a, b) in rows {
            if *a == i {
                simple_img[i] = Some(sc.roots[*b].iter().map(|x| -x).collect());
            } else if *b == i {
                simple_img[i] = Some(sc.roots[*a].iter().map(|x| -x).collect());
            }
        }
    }
    let simple_img: Vec<Root> = simple_img
        .into_iter()
        .enumerate()
        .map(|(i, r)| r.ok_or_else(|| Error::NotSubset(format!("no image for alpha{}", i + 1))))
        .collect::<Result<_, _>>()?;
    let mut out = Vec::with_capacity(2 * np);
    for r in &sc.roots {
        let mut img = vec![0i64; rank];
        for i in 0..rank {
            for m in 0..rank {
                img[m] += r[i] * simple_img[i][m];
            }
        }
        let k = *index.get(&img).ok_or_else(|| Error::NotSubset(format!("{img:?}")))?;
        out.push((k, 1));
    }
    for (k, &(img, _)) in out.iter().enumerate() {
        if out[img].0 != k {
            return Err(Error::LiftFailure);
        }
    }
    // Table rows and the fixed set.
    for (l, a, b) in rows {
        if out[*a].0 != sc.neg(*b) {
            return Err(Error::NotSubset(format!("orbit {{alpha{}, -alpha{}}} of {l}", a + 1, b + 1)));
        }
    }
    let fixed_calc: Vec<usize> = (0..np).filter(|&k| out[k].0 == k).collect();
    if fixed_calc != fixed {
        return Err(Error::NotSubset("fixed roots".to_string()));
    }
    let covered = (0..np).all(|k| fixed.contains(&k) || rows.iter().any(|(_, a, b)| *a == k || *b == k));
    if !covered {
        return Err(Error::NotSubset("orbit table incomplete".to_string()));
    }
    Ok(out)
}

type Lifted = (Vec<(usize, i64)>, Vec<Vec<(usize, Scalar)>>);

/// Searches signs `sigma(e_a) = c_a e_{sigma a}` making sigma an involutive automorphism.
fn lift_involution(alg: &LieAlgebra, sr: &[(usize, i64)], fixed: &[usize]) -> Result<Lifted, Error> {
    let sc = &alg.sc;
    let np = sc.num_positive();
    let rank = alg.rank();
    let free: Vec<usize> = (0..rank).filter(|i| !fixed.contains(i)).collect();
    let target_m = np - fixed.len() + 2;
    'search: for mask in 0u32..(1 << free.len()) {
        let mut c = vec![0i64; 2 * np];
        for i in 0..rank {
            c[i] = 1;
        }
        for (b, &i) in free.iter().enumerate() {
            if mask & (1 << b) != 0 {
                c[i] = -1;
            }
        }
        for xi in rank..np {
            let r = &sc.roots[xi];
            let mut done = false;
            for i in 0..rank {
                if r[i] == 0 {
                    continue;
                }
                let rest: Root = r.iter().enumerate().map(|(m, x)| x - (m == i) as i64).collect();
                let Some(j) = sc.roots[..np].iter().position(|p| *p == rest) else { continue };
                let n0 = sc.n(i, j);
                let n1 = sc.n(sr[i].0, sr[j].0);
                if n0 == 0 || n1.abs() != n0.abs() {
                    continue 'search;
                }
                c[xi] = c[i] * c[j] * (n1 / n0);
                done = true;
                break;
            }
            if !done {
                return Err(Error::LiftFailure);
            }
        }
        for k in 0..np {
            c[k + np] = c[k];
        }
        // Involution and automorphism on root pairs.
        for a in 0..2 * np {
            if c[sr[a].0] != c[a] {
                continue 'search;
            }
            for b in 0..2 * np {
                if let Some(s) = sc.sum_index(a, b) {
                    if c[s] * sc.n(a, b) != c[a] * c[b] * sc.n(sr[a].0, sr[b].0) {
                        continue 'search;
                    }
                }
            }
        }
        let sigma = compact_sigma(alg, sr, &c);
        // dim m = 2 (a) + #non-fixed positive roots, counting each orbit pair once per root.
        let mut me = Echelon::new(alg.dim());
        for p in 0..alg.dim() {
            let mut v = zeros(alg.dim());
            v[p] = Scalar::one();
            for (q, s) in &sigma[p] {
                v[*q] -= s;
            }
            me.insert(&v);
        }
        if me.rank() != target_m {
            continue;
        }
        let sr2 = sr.iter().enumerate().map(|(k, &(img, _))| (img, c[k])).collect();
        return Ok((sr2, sigma));
    }
    Err(Error::LiftFailure)
}

fn compact_sigma(alg: &LieAlgebra, sr: &[(usize, i64)], c: &[i64]) -> Vec<Vec<(usize, Scalar)>> {
    let sc = &alg.sc;
    let np = sc.num_positive();
    let rank = alg.rank();
    let rs = alg.rs();
    let mut out = vec![Vec::new(); alg.dim()];
    for j in 0..rank {
        // i h_j -> i h_{sigma a_j}
        let img = &sc.roots[sr[j].0];
        let half = rs.inner(img, img) / 2;
        for i in 0..rank {
            if img[i] != 0 {
                out[alg.h(j)].push((alg.h(i), Scalar::int(img[i] * rs.half_len[i] / half)));
            }
        }
    }
    for k in 0..np {
        let (img, _) = sr[k];
        let ck = c[k];
        if img < np {
            out[alg.u(k)].push((alg.u(img), Scalar::int(ck)));
            out[alg.v(k)].push((alg.v(img), Scalar::int(ck)));
        } else {
            let b = img - np;
            out[alg.u(k)].push((alg.u(b), Scalar::int(-ck)));
            out[alg.v(k)].push((alg.v(b), Scalar::int(ck)));
        }
    }
    out
}
