//! Prototype Lie triple systems, expected tables, containment checks and the
//! unit-lattice geodesic length of the group G2.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::linalg::{add, scale, unit, Vector};
use crate::lts::{self, Complexity, SubRoot, Subspace};
use crate::rational::Rational;
use crate::scalar::Scalar;
use crate::space::{angle_from_name, angle_name, solve, SpaceKind, SpaceModel};
use crate::Error;

const EIII_TABLE: &str = include_str!("../data/eiii.tsv");
const EIV_TABLE: &str = include_str!("../data/eiv.tsv");
const G2_TABLE: &str = include_str!("../data/g2.tsv");

pub fn table_text(kind: SpaceKind) -> &'static str {
    match kind {
        SpaceKind::EIII => EIII_TABLE,
        SpaceKind::EIV => EIV_TABLE,
        SpaceKind::G2Group => G2_TABLE,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Field {
    R,
    C,
    H,
    O,
}

impl Field {
    pub fn letter(self) -> &'static str {
        match self {
            Field::R => "R",
            Field::C => "C",
            Field::H => "H",
            Field::O => "O",
        }
    }

    pub fn parse(s: &str) -> Option<Field> {
        match s {
            "R" => Some(Field::R),
            "C" => Some(Field::C),
            "H" => Some(Field::H),
            "O" => Some(Field::O),
            _ => None,
        }
    }

    pub fn real_dim(self) -> usize {
        match self {
            Field::R => 1,
            Field::C => 2,
            Field::H => 4,
            Field::O => 8,
        }
    }
}

/// One parameter of a type label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Param {
    /// Isotropy angle, stored as `tan^2`.
    Angle(Scalar),
    Int(usize),
    Field(Field),
    /// `(K, l)`.
    Pair(Field, usize),
    /// `S^k`.
    Sphere(usize),
    /// `KP2`.
    Plane(Field),
    /// A bare word such as `tau`.
    Word(String),
    /// An opaque parenthesised sub-type, stored without whitespace.
    Sub(String),
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Param::Angle(t) => match angle_name(t) {
                Some(n) => write!(f, "phi={n}"),
                None => write!(f, "phi=arctan(sqrt({t}))"),
            },
            Param::Int(n) => write!(f, "{n}"),
            Param::Field(k) => write!(f, "{}", k.letter()),
            Param::Pair(k, l) => write!(f, "({},{l})", k.letter()),
            Param::Sphere(k) => write!(f, "S^{k}"),
            Param::Plane(k) => write!(f, "{}P2", k.letter()),
            Param::Word(w) => write!(f, "{w}"),
            Param::Sub(s) => write!(f, "({s})"),
        }
    }
}

/// Name of a type of Lie triple systems, e.g. `(P, phi=pi/4, OP2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeLabel {
    pub space: SpaceKind,
    pub family: String,
    pub params: Vec<Param>,
}

impl fmt::Display for TypeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}", self.family)?;
        for p in &self.params {
            write!(f, ", {p}")?;
        }
        write!(f, ")")
    }
}

fn split_top(s: &str) -> Result<Vec<&str>, Error> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (k, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return Err(Error::Parse(format!("unbalanced parentheses in {s}")));
                }
            }
            ',' if depth == 0 => {
                out.push(&s[start..k]);
                start = k + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(Error::Parse(format!("unbalanced parentheses in {s}")));
    }
    out.push(&s[start..]);
    Ok(out)
}

fn parse_param(tok: &str) -> Result<Param, Error> {
    if tok.is_empty() {
        return Err(Error::Parse("empty parameter".to_string()));
    }
    if let Some(name) = tok.strip_prefix("phi=") {
        if let Some(t) = angle_from_name(name) {
            return Ok(Param::Angle(t));
        }
        if let Some(inner) = name.strip_prefix("arctan(sqrt(").and_then(|r| r.strip_suffix("))")) {
            return Ok(Param::Angle(Scalar::parse(inner)?));
        }
        return Err(Error::Parse(format!("unknown angle {name}")));
    }
    if tok.bytes().all(|b| b.is_ascii_digit()) {
        return tok.parse().map(Param::Int).map_err(|_| Error::Parse(tok.to_string()));
    }
    if let Some(k) = Field::parse(tok) {
        return Ok(Param::Field(k));
    }
    if let Some(k) = tok.strip_prefix("S^") {
        return k.parse().map(Param::Sphere).map_err(|_| Error::Parse(tok.to_string()));
    }
    if tok.len() == 3 && tok.ends_with("P2") {
        if let Some(k) = Field::parse(&tok[..1]) {
            return Ok(Param::Plane(k));
        }
    }
    if let Some(inner) = tok.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
        let parts = split_top(inner)?;
        if parts.len() == 2 {
            if let (Some(k), Ok(l)) = (Field::parse(parts[0]), parts[1].parse::<usize>()) {
                return Ok(Param::Pair(k, l));
            }
        }
        return Ok(Param::Sub(inner.to_string()));
    }
    if tok.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
        return Ok(Param::Word(tok.to_string()));
    }
    Err(Error::Parse(format!("cannot read parameter {tok}")))
}

impl TypeLabel {
    pub fn new(space: SpaceKind, family: &str, params: Vec<Param>) -> Self {
        TypeLabel { space, family: family.to_string(), params }
    }

    pub fn parse(space: SpaceKind, text: &str) -> Result<Self, Error> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let inner = s
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("type label must be parenthesised: {text}")))?;
        let parts = split_top(inner)?;
        let family = parts[0];
        if family.is_empty() || !family.chars().all(|c| c.is_ascii_alphanumeric()) {
            return Err(Error::Parse(format!("bad family name in {text}")));
        }
        let params = parts[1..].iter().map(|t| parse_param(t)).collect::<Result<_, _>>()?;
        Ok(TypeLabel { space, family: family.to_string(), params })
    }

    pub fn angle(&self) -> Option<&Scalar> {
        self.params.iter().find_map(|p| if let Param::Angle(t) = p { Some(t) } else { None })
    }

    /// Sub-types that are only named through the classification of a host space.
    pub fn is_opaque(&self) -> bool {
        self.params.iter().any(|p| matches!(p, Param::Word(_) | Param::Sub(_)))
    }

    /// Family key used to count the families of a classification theorem.
    pub fn family_key(&self) -> String {
        if self.is_opaque() {
            return format!("{},tau", self.family);
        }
        let angle = || self.angle().map(|t| format!(",{}", Param::Angle(t.clone()))).unwrap_or_default();
        match (self.space, self.family.as_str()) {
            (SpaceKind::EIII, "P") | (SpaceKind::G2Group, "S") => format!("{}{}", self.family, angle()),
            (SpaceKind::EIII, "PxP1") => match (&self.params[0], &self.params[1]) {
                (Param::Pair(k1, _), Param::Field(k2)) => format!("PxP1,{},{}", k1.letter(), k2.letter()),
                _ => self.family.clone(),
            },
            (SpaceKind::G2Group, "P") => match self.params.get(1) {
                Some(Param::Pair(k, _)) => format!("P,{}", k.letter()),
                _ => self.family.clone(),
            },
            _ => self.family.clone(),
        }
    }
}

/// One row of an expected table.
#[derive(Clone, Debug)]
pub struct ExpectedRow {
    pub label: TypeLabel,
    pub dim: Option<usize>,
    pub rank: Option<usize>,
    pub complexity: Option<Complexity>,
    /// Maximality as claimed by the table; reported, not re-proved.
    pub maximal: bool,
    pub diagram: Option<String>,
    pub isometry: String,
    /// `theorem` for rows of the classification table, `extension` for the
    /// additional prototypes used by the identification and containment rows.
    pub source: String,
}

fn opt<T: core::str::FromStr>(s: &str) -> Result<Option<T>, Error> {
    if s == "-" {
        return Ok(None);
    }
    s.parse().map(Some).map_err(|_| Error::Parse(format!("bad table entry {s}")))
}

fn parse_complexity(s: &str) -> Result<Option<Complexity>, Error> {
    Ok(match s {
        "-" => None,
        "complex" => Some(Complexity::Complex),
        "totally_real" => Some(Complexity::TotallyReal),
        "neither" => Some(Complexity::Neither),
        _ => return Err(Error::Parse(format!("bad complexity {s}"))),
    })
}

/// Parses an expected table in the tab-separated data format.
pub fn parse_table(kind: SpaceKind, text: &str) -> Result<Vec<ExpectedRow>, Error> {
    let mut out = Vec::new();
    for line in text.lines() {
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let f: Vec<&str> = line.split('\t').collect();
        if f.len() != 8 {
            return Err(Error::Parse(format!("expected 8 columns: {line}")));
        }
        out.push(ExpectedRow {
            label: TypeLabel::parse(kind, f[0])?,
            dim: opt(f[1])?,
            rank: opt(f[2])?,
            complexity: parse_complexity(f[3])?,
            maximal: match f[4] {
                "yes" => true,
                "no" => false,
                _ => return Err(Error::Parse(format!("bad maximal entry {}", f[4]))),
            },
            diagram: if f[5] == "-" { None } else { Some(f[5].to_string()) },
            isometry: f[6].to_string(),
            source: f[7].to_string(),
        });
    }
    Ok(out)
}

pub fn expected_rows(kind: SpaceKind) -> Result<Vec<ExpectedRow>, Error> {
    parse_table(kind, table_text(kind))
}

/// Number of type families in the rows of a table.
pub fn family_count(rows: &[ExpectedRow]) -> usize {
    let mut keys: Vec<String> = rows.iter().filter(|r| r.source == "theorem").map(|r| r.label.family_key()).collect();
    keys.sort();
    keys.dedup();
    keys.len()
}

// ---------------------------------------------------------------------------
// Prototypes

struct Kit<'a> {
    sp: &'a SpaceModel,
}

impl<'a> Kit<'a> {
    fn n(&self) -> usize {
        self.sp.dim_m()
    }

    fn sharp(&self, l: &str) -> Result<Vector, Error> {
        self.sp.sharp(l)
    }

    /// `M_label` with the given entries, zero elsewhere.
    fn m(&self, label: &str, entries: &[(usize, Scalar)]) -> Result<Vector, Error> {
        let k = self.sp.orbits_of(label).len();
        let mut c = vec![Scalar::zero(); k];
        for (p, v) in entries {
            if *p >= k {
                return Err(Error::Dimension(format!("{label} has {k} entries")));
            }
            c[*p] = v.clone();
        }
        self.sp.chart(label, &c)
    }

    fn m1(&self, label: &str, p: usize, v: Scalar) -> Result<Vector, Error> {
        self.m(label, &[(p, v)])
    }

    /// `M_label` over the given slots, real or complex.
    fn slots(&self, label: &str, slots: &[usize], field: Field) -> Result<Vec<Vector>, Error> {
        let mut out = Vec::new();
        for &s in slots {
            out.push(self.m1(label, s, Scalar::one())?);
            if field == Field::C {
                out.push(self.m1(label, s, Scalar::i())?);
            }
        }
        Ok(out)
    }

    fn whole(&self, label: &str) -> Vec<Vector> {
        self.sp.root_space(label).into_iter().map(|k| unit(self.n(), k)).collect()
    }

    fn a(&self) -> Vec<Vector> {
        vec![unit(self.n(), 0), unit(self.n(), 1)]
    }

    fn span(&self, rows: Vec<Vector>) -> Result<Subspace, Error> {
        Subspace::new(self.n(), rows)
    }
}

fn sqrt_tan(t: &Scalar) -> Result<Scalar, Error> {
    t.sqrt_if_expressible()?.ok_or(Error::Inexpressible)
}

fn unknown(label: &TypeLabel) -> Error {
    Error::UnknownLabel(label.to_string())
}

fn c_or_r(k: Field) -> bool {
    matches!(k, Field::R | Field::C)
}

fn eiii_sphere_rows(k: &Kit) -> Result<Vec<Vector>, Error> {
    let one = Scalar::one;
    let i = Scalar::i;
    let h = add(&k.sharp("l1")?, &k.sharp("l2")?);
    let ht = add(&k.m1("2l1", 0, one())?, &k.m1("2l2", 0, one())?);
    Ok(vec![
        h,
        k.m1("l4", 1, one())?,
        k.m1("l4", 1, i())?,
        k.m1("l4", 2, one())?,
        k.m1("l4", 2, i())?,
        ht,
        k.m1("l4", 0, one())?,
        k.m1("l4", 0, i())?,
    ])
}

/// `M_l1(c) + M_l2(c2, c1, -c4, -c3)` for `c` a single complex unit in slot `s`.
fn eiii_op_pair(k: &Kit, s: usize, u: Scalar) -> Result<Vector, Error> {
    let (t, sign) = match s {
        0 => (1, 1),
        1 => (0, 1),
        2 => (3, -1),
        3 => (2, -1),
        _ => return Err(Error::Dimension("slot".to_string())),
    };
    let w = if sign < 0 { -&u } else { u.clone() };
    Ok(add(&k.m1("l1", s, u)?, &k.m1("l2", t, w)?))
}

fn eiii_prototype(k: &Kit, label: &TypeLabel) -> Result<Vec<Vector>, Error> {
    let one = Scalar::one;
    let i = Scalar::i;
    let p = &label.params;
    let h = || -> Result<Vector, Error> { Ok(add(&k.sharp("l1")?, &k.sharp("l2")?)) };
    let ht = || -> Result<Vector, Error> { Ok(add(&k.m1("2l1", 0, one())?, &k.m1("2l2", 0, one())?)) };
    let mut rows = Vec::new();
    match (label.family.as_str(), p.as_slice()) {
        ("Geo", [Param::Angle(t)]) => {
            let tan = sqrt_tan(t)?;
            rows.push(add(&k.sharp("l2")?, &scale(&tan, &k.sharp("l1")?)));
        }
        ("P", [Param::Angle(t), Param::Pair(f, l)]) if t.is_zero() && c_or_r(*f) && (1..=5).contains(l) => {
            rows.push(k.sharp("l2")?);
            rows.extend(k.slots("l2", &(0..l - 1).collect::<Vec<_>>(), *f)?);
            if *f == Field::C {
                rows.push(k.m1("2l2", 0, one())?);
            }
        }
        ("P", [Param::Angle(t), Param::Sphere(n)]) if t.is_one() && (1..=8).contains(n) => {
            rows.extend(eiii_sphere_rows(k)?.into_iter().take(*n));
        }
        ("P", [Param::Angle(t), Param::Plane(f)]) if t.is_one() => {
            rows.push(h()?);
            match f {
                Field::R => rows.push(add(&k.m1("l1", 0, one())?, &k.m1("l2", 1, one())?)),
                Field::C => {
                    for u in [one(), i()] {
                        rows.push(add(&k.m1("l1", 0, u.clone())?, &k.m1("l2", 1, u)?));
                    }
                    rows.push(ht()?);
                }
                Field::H => {
                    for u in [one(), i()] {
                        rows.push(add(&k.m1("l1", 0, u.clone())?, &k.m1("l2", 1, u.clone())?));
                        rows.push(add(&k.m1("l1", 1, u.clone())?, &k.m1("l2", 0, u)?));
                    }
                    rows.extend(k.slots("l4", &[2], Field::C)?);
                    rows.push(ht()?);
                }
                Field::O => {
                    rows.extend(k.slots("l4", &[0, 1, 2], Field::C)?);
                    for s in 0..4 {
                        for u in [one(), i()] {
                            rows.push(eiii_op_pair(k, s, u)?);
                        }
                    }
                    rows.push(ht()?);
                }
            }
        }
        ("PxP1", [Param::Pair(k1, l), Param::Field(k2)]) if c_or_r(*k1) && c_or_r(*k2) && (1..=5).contains(l) => {
            rows.extend(k.a());
            rows.extend(k.slots("l1", &(0..l - 1).collect::<Vec<_>>(), *k1)?);
            if *k1 == Field::C {
                rows.push(k.m1("2l1", 0, one())?);
            }
            if *k2 == Field::C {
                rows.push(k.m1("2l2", 0, one())?);
            }
        }
        ("Q", []) => {
            rows.extend(k.a());
            rows.extend(k.whole("l3"));
            rows.extend(k.whole("l4"));
            rows.extend(k.whole("2l1"));
            rows.extend(k.whole("2l2"));
        }
        ("G2C6", []) => {
            rows.extend(k.a());
            rows.extend(k.slots("l1", &[0, 1], Field::C)?);
            rows.extend(k.slots("l2", &[0, 1], Field::C)?);
            rows.extend(k.slots("l3", &[2], Field::C)?);
            rows.extend(k.slots("l4", &[2], Field::C)?);
            rows.extend(k.whole("2l1"));
            rows.extend(k.whole("2l2"));
        }
        ("G2H4", []) => {
            rows.extend(k.a());
            rows.extend(k.slots("l1", &[0, 1, 2, 3], Field::R)?);
            for s in 0..4 {
                rows.push(k.m1("l2", s, i())?);
            }
            rows.extend(k.slots("l3", &[0, 1, 2], Field::R)?);
            rows.extend(k.slots("l4", &[0, 1, 2], Field::R)?);
        }
        ("DIII", []) => {
            rows.extend(k.a());
            rows.extend(k.slots("l1", &[0, 2], Field::C)?);
            rows.extend(k.slots("l2", &[0, 2], Field::C)?);
            rows.extend(k.slots("l3", &[1, 2], Field::C)?);
            rows.extend(k.slots("l4", &[1, 2], Field::C)?);
            rows.extend(k.whole("2l1"));
            rows.extend(k.whole("2l2"));
        }
        _ => return Err(unknown(label)),
    }
    Ok(rows)
}

/// The vectors `v0, ..., w7` spanning the projective-plane prototypes of EIV.
fn eiv_vectors(k: &Kit) -> Result<Vec<(&'static str, Vector)>, Error> {
    let one = Scalar::one;
    let i = Scalar::i;
    let pair = |s: usize, a: Scalar, b: Scalar| -> Result<Vector, Error> { Ok(add(&k.m1("l1", s, a)?, &k.m1("l2", s, b)?)) };
    Ok(vec![
        ("v0", pair(0, one(), one())?),
        ("v1", pair(0, i(), -&i())?),
        ("v0C", pair(3, i(), -&i())?),
        ("v1C", pair(3, one(), one())?),
        ("v0H", pair(2, i(), -&i())?),
        ("v1H", pair(2, one(), one())?),
        ("v0CH", pair(1, one(), one())?),
        ("v1CH", pair(1, -&i(), i())?),
        ("v0O", pair(0, i(), i())?),
        ("v0CO", pair(3, one(), -&one())?),
        ("v0HO", pair(2, one(), -&one())?),
        ("v0CHO", pair(1, -&i(), -&i())?),
        ("H", k.sharp("l3")?),
        ("w1", k.m1("l3", 0, one())?),
        ("w2", k.m1("l3", 1, one())?),
        ("w3", k.m1("l3", 2, i())?),
        ("w4", k.m1("l3", 3, one())?),
        ("w5", k.m1("l3", 0, -&i())?),
        ("w6", k.m1("l3", 1, i())?),
        ("w7", k.m1("l3", 2, one())?),
    ])
}

fn eiv_plane_names(f: Field, l: usize) -> Option<&'static [&'static str]> {
    Some(match (f, l) {
        (Field::R, 2) => &["H", "v0"],
        (Field::R, 3) => &["H", "v0", "v1"],
        (Field::C, 2) => &["H", "v0", "v0C", "w1"],
        (Field::C, 3) => &["H", "v0", "v0C", "v1", "v1C", "w1"],
        (Field::H, 2) => &["H", "v0", "v0C", "v0H", "v0CH", "w1", "w2", "w3"],
        (Field::H, 3) => &["H", "v0", "v0C", "v0H", "v0CH", "v1", "v1C", "v1H", "v1CH", "w1", "w2", "w3"],
        (Field::O, 2) => &[
            "H", "v0", "v0C", "v0H", "v0CH", "v0O", "v0CO", "v0HO", "v0CHO", "w1", "w2", "w3", "w4", "w5", "w6", "w7",
        ],
        _ => return None,
    })
}

fn eiv_prototype(k: &Kit, label: &TypeLabel) -> Result<Vec<Vector>, Error> {
    let one = Scalar::one;
    let i = Scalar::i;
    let p = &label.params;
    let pi6 = Scalar::frac(1, 3);
    let mut rows = Vec::new();
    match (label.family.as_str(), p.as_slice()) {
        ("Geo", [Param::Angle(t)]) => {
            let c = &Scalar::sqrt_int(3)? * &sqrt_tan(t)?;
            let base = add(&k.sharp("l1")?, &k.sharp("l3")?);
            rows.push(add(&base, &scale(&c, &k.sharp("l2")?)));
        }
        ("S", [Param::Angle(t), Param::Int(l)]) if *t == pi6 && (1..=9).contains(l) => {
            rows.push(k.sharp("l1")?);
            rows.extend(k.whole("l1").into_iter().take(l - 1));
        }
        ("P", [Param::Angle(t), Param::Pair(f, l)]) if *t == pi6 => {
            let names = eiv_plane_names(*f, *l).ok_or_else(|| unknown(label))?;
            let vs = eiv_vectors(k)?;
            for n in names {
                rows.push(vs.iter().find(|(m, _)| m == n).map(|(_, v)| v.clone()).ok_or_else(|| unknown(label))?);
            }
        }
        ("AI", []) => {
            rows.extend(k.a());
            rows.push(k.m1("l1", 0, one())?);
            rows.push(k.m1("l2", 0, one())?);
            rows.push(k.m1("l3", 3, i())?);
        }
        ("A2", []) => {
            rows.extend(k.a());
            rows.extend(k.slots("l1", &[0], Field::C)?);
            rows.extend(k.slots("l2", &[0], Field::C)?);
            rows.extend(k.slots("l3", &[3], Field::C)?);
        }
        ("AII", []) => {
            rows.extend(k.a());
            rows.extend(k.slots("l1", &[0, 1], Field::C)?);
            rows.extend(k.slots("l2", &[0, 1], Field::C)?);
            rows.extend(k.slots("l3", &[2, 3], Field::C)?);
        }
        ("SxS1", [Param::Int(l)]) if (1..=9).contains(l) => {
            rows.extend(k.a());
            rows.extend(k.whole("l1").into_iter().take(l - 1));
        }
        _ => return Err(unknown(label)),
    }
    Ok(rows)
}

fn g2_prototype(k: &Kit, label: &TypeLabel) -> Result<Vec<Vector>, Error> {
    let one = Scalar::one;
    let i = Scalar::i;
    let p = &label.params;
    let v = |l: &str, c: Scalar| k.m1(l, 0, c);
    let s3 = Scalar::sqrt_int(3)?;
    let mut rows = Vec::new();
    match (label.family.as_str(), p.as_slice()) {
        ("Geo", [Param::Angle(t)]) => {
            let c = &sqrt_tan(t)? / &s3;
            rows.push(add(&k.sharp("l4")?, &scale(&c, &k.sharp("l2")?)));
        }
        ("S", [Param::Angle(t), Param::Int(l)]) if (1..=3).contains(l) => {
            let all = if t.is_zero() {
                vec![k.sharp("l1")?, v("l1", one())?, v("l1", i())?]
            } else if *t == Scalar::frac(1, 27) {
                let c = &Scalar::sqrt_int(5)? * &Scalar::frac(1, 3);
                let h = add(&scale(&Scalar::int(9), &k.sharp("l1")?), &scale(&Scalar::int(5), &k.sharp("l2")?));
                vec![
                    h,
                    add(&v("l1", one())?, &v("l2", c.clone())?),
                    add(&v("l1", i())?, &v("l2", &c * &i())?),
                ]
            } else if *t == Scalar::frac(1, 3) {
                vec![k.sharp("l6")?, v("l6", one())?, v("l6", i())?]
            } else {
                return Err(unknown(label));
            };
            rows.extend(all.into_iter().take(*l));
        }
        ("P", [Param::Angle(t), Param::Pair(Field::R, l)]) if *t == Scalar::frac(1, 3) && (1..=3).contains(l) => {
            let all = vec![
                k.sharp("l6")?,
                add(&v("l2", one())?, &v("l4", s3.clone())?),
                add(&v("l2", i())?, &v("l4", -&(&s3 * &i()))?),
            ];
            rows.extend(all.into_iter().take(*l));
        }
        ("P", [Param::Angle(t), Param::Pair(Field::C, 2)]) if *t == Scalar::frac(1, 3) => {
            rows.push(k.sharp("l6")?);
            rows.push(add(&v("l2", one())?, &v("l4", s3.clone())?));
            rows.push(add(&v("l3", &s3 * &i())?, &v("l5", i())?));
            rows.push(v("l6", one())?);
        }
        ("SxS", [Param::Int(l), Param::Int(m)]) if (1..=3).contains(l) && (1..=3).contains(m) => {
            rows.extend(k.a());
            rows.extend(vec![v("l1", one())?, v("l1", i())?].into_iter().take(l - 1));
            rows.extend(vec![v("l6", one())?, v("l6", i())?].into_iter().take(m - 1));
        }
        ("AI", []) => {
            rows.extend(k.a());
            rows.push(v("l2", one())?);
            rows.push(v("l5", one())?);
            rows.push(v("l6", i())?);
        }
        ("A2", []) => {
            rows.extend(k.a());
            for l in ["l2", "l5", "l6"] {
                rows.extend(k.whole(l));
            }
        }
        ("G", []) => {
            rows.extend(k.a());
            rows.push(v("l1", one())?);
            rows.push(v("l2", one())?);
            rows.push(v("l3", i())?);
            rows.push(v("l4", one())?);
            rows.push(v("l5", i())?);
            rows.push(v("l6", one())?);
        }
        _ => return Err(unknown(label)),
    }
    Ok(rows)
}

/// The prototype subspace of a type, as written in the classification.
pub fn make_prototype(sp: &SpaceModel, label: &TypeLabel) -> Result<Subspace, Error> {
    if label.space != sp.kind || label.is_opaque() {
        return Err(unknown(label));
    }
    let k = Kit { sp };
    let rows = match sp.kind {
        SpaceKind::EIII => eiii_prototype(&k, label)?,
        SpaceKind::EIV => eiv_prototype(&k, label)?,
        SpaceKind::G2Group => g2_prototype(&k, label)?,
    };
    k.span(rows)
}

pub fn prototype_from_text(sp: &SpaceModel, text: &str) -> Result<Subspace, Error> {
    make_prototype(sp, &TypeLabel::parse(sp.kind, text)?)
}

// ---------------------------------------------------------------------------
// Dynkin diagrams with multiplicities

fn flat_gram(sp: &SpaceModel, flat: &Subspace) -> Vec<Vec<Scalar>> {
    let b = flat.basis();
    b.iter().map(|x| b.iter().map(|y| sp.inner(x, y)).collect()).collect()
}

/// Renders the restricted Dynkin diagram with multiplicities of a root
/// decomposition: nodes are simple roots labelled by multiplicity (with the
/// multiplicity of the double in brackets), longer roots first; `-`, `=>`,
/// `<=>` and `=>>` for single, double (reduced or not) and triple bonds, and
/// ` x ` for orthogonal simple roots.
pub fn diagram(sp: &SpaceModel, flat: &Subspace, roots: &[SubRoot]) -> Result<String, Error> {
    if roots.is_empty() {
        return Ok("flat".to_string());
    }
    let g = flat_gram(sp, flat);
    let ip = |v: &[Scalar], w: &[Scalar]| -> Result<Scalar, Error> {
        let x = solve(&g, w)?;
        Ok(v.iter().zip(&x).fold(Scalar::zero(), |acc, (a, b)| &acc + &(a * b)))
    };
    let d = flat.dim();
    let probe = |vals: &[Scalar], q: &Scalar| -> Scalar {
        if d == 1 {
            vals[0].clone()
        } else {
            &vals[0] + &(&vals[1] * q)
        }
    };
    let mut q = Scalar::frac(1, 1000);
    for k in 0..16 {
        if roots.iter().all(|r| !probe(&r.values, &q).is_zero()) {
            break;
        }
        q = Scalar::frac(1, 1009 + 2 * k);
    }
    let mut pos: Vec<(Vec<Scalar>, usize)> = Vec::new();
    for r in roots {
        let s = probe(&r.values, &q).sign()?;
        let v: Vec<Scalar> = if s > 0 { r.values.clone() } else { r.values.iter().map(|x| -x).collect() };
        pos.push((v, r.mult));
    }
    let twice = |v: &[Scalar]| -> Vec<Scalar> { v.iter().map(|x| x + x).collect() };
    let reduced: Vec<usize> = (0..pos.len()).filter(|&a| !pos.iter().any(|(w, _)| twice(w) == pos[a].0)).collect();
    let mut simple: Vec<usize> = Vec::new();
    for &a in &reduced {
        let dec = reduced.iter().any(|&b| {
            reduced.iter().any(|&c| {
                let s: Vec<Scalar> = pos[b].0.iter().zip(&pos[c].0).map(|(x, y)| x + y).collect();
                s == pos[a].0
            })
        });
        if !dec {
            simple.push(a);
        }
    }
    let mut nodes = Vec::new();
    for &a in &simple {
        let len = ip(&pos[a].0, &pos[a].0)?;
        let dbl = pos.iter().find(|(w, _)| *w == twice(&pos[a].0)).map(|(_, m)| *m);
        nodes.push((a, len, pos[a].1, dbl));
    }
    let mut err = None;
    nodes.sort_by(|x, y| match y.1.cmp_real(&x.1) {
        Ok(core::cmp::Ordering::Equal) => y.2.cmp(&x.2),
        Ok(o) => o,
        Err(e) => {
            err = Some(e);
            core::cmp::Ordering::Equal
        }
    });
    if let Some(e) = err {
        return Err(e);
    }
    let text = |n: &(usize, Scalar, usize, Option<usize>)| match n.3 {
        Some(k) => format!("{}[{}]", n.2, k),
        None => format!("{}", n.2),
    };
    if nodes.len() == 1 {
        return Ok(text(&nodes[0]));
    }
    if nodes.len() > 2 {
        return Ok(nodes.iter().map(text).collect::<Vec<_>>().join(" x "));
    }
    let (a, b) = (&nodes[0], &nodes[1]);
    let c = ip(&pos[a.0].0, &pos[b.0].0)?;
    let bond = &(&(&c * &c) * &Scalar::int(4)) / &(&a.1 * &b.1);
    let conn = if bond.is_zero() {
        " x "
    } else if bond == Scalar::one() {
        "-"
    } else if bond == Scalar::int(2) {
        if a.3.is_some() || b.3.is_some() {
            "<=>"
        } else {
            "=>"
        }
    } else if bond == Scalar::int(3) {
        "=>>"
    } else {
        return Err(Error::NotAFlat);
    };
    Ok(format!("{}{}{}", text(a), conn, text(b)))
}

/// Diagram of the ambient space itself.
pub fn ambient_diagram(sp: &SpaceModel) -> Result<String, Error> {
    let m = lts::full_m(sp);
    let a = lts::a_subspace(sp);
    let roots = lts::sub_restricted_roots(sp, &m, &a)?;
    diagram(sp, &a, &roots)
}

// ---------------------------------------------------------------------------
// Sweeps

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIPPED",
        }
    }
}

/// Data computed for one subspace.
#[derive(Clone, Debug)]
pub struct Computed {
    pub is_lts: bool,
    pub dim: usize,
    pub rank: usize,
    pub complexity: Option<Complexity>,
    pub angle: Option<Scalar>,
    pub diagram: Option<String>,
    pub mults: Vec<usize>,
}

pub fn compute(sp: &SpaceModel, s: &Subspace, seed: u64) -> Result<(Computed, String), Error> {
    let r = lts::report(sp, s, seed)?;
    let mut cert = String::new();
    if let Some(f) = &r.failure {
        cert = format!("closure fails at basis triple ({}, {}, {})", f.i, f.j, f.k);
    }
    let diagram = match &r.flat {
        Some(flat) => Some(diagram(sp, flat, &r.roots)?),
        None => None,
    };
    let mut mults: Vec<usize> = r.roots.iter().map(|x| x.mult).collect();
    mults.sort_unstable();
    Ok((
        Computed {
            is_lts: r.is_lts,
            dim: r.dim,
            rank: r.rank,
            complexity: r.complexity,
            angle: r.angle.map(|a| a.tan_sq),
            diagram,
            mults,
        },
        cert,
    ))
}

/// Verification result of one expected row.
#[derive(Clone, Debug)]
pub struct RowCheck {
    pub expected: ExpectedRow,
    pub computed: Option<Computed>,
    pub status: Status,
    pub certificate: String,
}

pub fn verify_row(sp: &SpaceModel, row: &ExpectedRow, seed: u64) -> RowCheck {
    if row.label.is_opaque() {
        return RowCheck {
            expected: row.clone(),
            computed: None,
            status: Status::Skipped,
            certificate: "sub-type named through the classification of its host; checked via host containment".to_string(),
        };
    }
    let fail = |msg: String| RowCheck { expected: row.clone(), computed: None, status: Status::Fail, certificate: msg };
    let s = match make_prototype(sp, &row.label) {
        Ok(s) => s,
        Err(e) => return fail(format!("prototype: {e}")),
    };
    let (c, mut cert) = match compute(sp, &s, seed) {
        Ok(x) => x,
        Err(e) => return fail(format!("analysis: {e}")),
    };
    let mut bad: Vec<String> = Vec::new();
    if !c.is_lts {
        bad.push(cert.clone());
    }
    if let Some(d) = row.dim {
        if d != c.dim {
            bad.push(format!("dim {} != {}", c.dim, d));
        }
    }
    if let (Some(r), true) = (row.rank, c.is_lts) {
        if r != c.rank {
            bad.push(format!("rank {} != {}", c.rank, r));
        }
    }
    if row.complexity.is_some() && row.complexity != c.complexity {
        bad.push(format!("complexity {:?} != {:?}", c.complexity, row.complexity));
    }
    if let (Some(t), Some(1)) = (row.label.angle(), row.rank) {
        if c.angle.as_ref() != Some(t) {
            bad.push(format!("angle tan^2 {:?} != {}", c.angle.as_ref().map(|x| x.to_string()), t));
        }
    }
    if let Some(dg) = &row.diagram {
        if c.diagram.as_deref() != Some(dg.as_str()) {
            bad.push(format!("diagram {:?} != {}", c.diagram, dg));
        }
    }
    let status = if bad.is_empty() { Status::Pass } else { Status::Fail };
    if status == Status::Pass {
        cert = format!(
            "closed; rank {}; diagram {}; multiplicities {:?}",
            c.rank,
            c.diagram.clone().unwrap_or_default(),
            c.mults
        );
    } else {
        cert = bad.join("; ");
    }
    RowCheck { expected: row.clone(), computed: Some(c), status, certificate: cert }
}

#[derive(Clone, Debug)]
pub struct CatalogReport {
    pub space: SpaceKind,
    pub families: usize,
    pub rows: Vec<RowCheck>,
}

impl CatalogReport {
    pub fn count(&self, s: Status) -> usize {
        self.rows.iter().filter(|r| r.status == s).count()
    }
}

pub fn verify_catalog(sp: &SpaceModel, seed: u64) -> Result<CatalogReport, Error> {
    let rows = expected_rows(sp.kind)?;
    let families = family_count(&rows);
    let rows = rows.iter().map(|r| verify_row(sp, r, seed)).collect();
    Ok(CatalogReport { space: sp.kind, families, rows })
}

// ---------------------------------------------------------------------------
// Containments

/// How a containment row is checked.
#[derive(Clone, Debug)]
pub enum Method {
    /// `prototype(small)` is a subspace of `prototype(big)`.
    Direct,
    /// Both prototypes coincide.
    Identical,
    /// The image of `prototype(small)` under `Ad(exp(pi/2 Z))` with
    /// `Z = t K_alpha(1)` for the given positive root (0-based).
    QuarterTurn(usize),
    /// Another representative of the small type, given as frame vectors.
    Representative(String),
    Skipped(String),
}

#[derive(Clone, Debug)]
pub struct ContainmentRow {
    pub small: String,
    pub big: String,
    pub method: Method,
    pub status: Status,
    pub certificate: String,
}

fn direct(s: &str, b: &str) -> (String, String, Method) {
    (s.to_string(), b.to_string(), Method::Direct)
}

fn skipped(s: &str, b: &str, why: &str) -> (String, String, Method) {
    (s.to_string(), b.to_string(), Method::Skipped(why.to_string()))
}

const NO_WITNESS: &str = "requires a conjugation that is not given explicitly";
const OPAQUE: &str = "opaque sub-type; its internal taxonomy is not reconstructed";

/// Rows of the containment and identification tables checkable at prototype level.
pub fn containment_rows(kind: SpaceKind) -> Vec<(String, String, Method)> {
    let mut out = Vec::new();
    match kind {
        SpaceKind::EIII => {
            for a in ["0", "arctan(1/3)", "arctan(1/2)", "pi/4"] {
                out.push(direct(&format!("(Geo, phi={a})"), "(PxP1, (R,1), R)"));
            }
            for k in 1..=8 {
                out.push(direct(&format!("(P, phi=pi/4, S^{k})"), "(P, phi=pi/4, OP2)"));
            }
            for f in ["R", "C"] {
                for l in 1..=5 {
                    out.push(direct(&format!("(PxP1, ({f},{l}), R)"), &format!("(PxP1, ({f},{l}), C)")));
                }
            }
            for f in ["R", "C"] {
                for l in 1..=5 {
                    if (f, l) != ("C", 5) {
                        out.push(direct(&format!("(PxP1, ({f},{l}), C)"), "(PxP1, (C,5), C)"));
                    }
                }
            }
            out.push(skipped("(Q, tau)", "(Q)", OPAQUE));
            out.push(skipped("(G2C6, tau)", "(G2C6)", OPAQUE));
            out.push(skipped("(G2H4, tau)", "(G2H4)", OPAQUE));
            out.push(("(P, phi=0, (R,1))".to_string(), "(Geo, phi=0)".to_string(), Method::Identical));
            out.push(direct("(P, phi=0, (R,2))", "(G2C6)"));
            out.push(direct("(P, phi=0, (R,3))", "(G2C6)"));
            out.push(skipped("(P, phi=0, (R,4))", "(G2C6)", NO_WITNESS));
            out.push((
                "(P, phi=0, (R,5))".to_string(),
                "(G2H4)".to_string(),
                Method::Representative("R l2# + M_l2(iR,iR,iR,iR)".to_string()),
            ));
            for l in 1..=4 {
                out.push((format!("(P, phi=0, (C,{l}))"), "(Q)".to_string(), Method::QuarterTurn(6)));
            }
            for k in 1..=8 {
                out.push(direct(&format!("(P, phi=pi/4, S^{k})"), "(Q)"));
            }
            for f in ["R", "C", "H"] {
                out.push(direct(&format!("(P, phi=pi/4, {f}P2)"), "(G2C6)"));
            }
            for f in ["R", "C"] {
                for l in 1..=3 {
                    for g in ["R", "C"] {
                        out.push(direct(&format!("(PxP1, ({f},{l}), {g})"), "(G2C6)"));
                    }
                }
            }
        }
        SpaceKind::EIV => {
            for a in ["0", "pi/6", "pi/4", "pi/3"] {
                out.push(direct(&format!("(Geo, phi={a})"), "(SxS1, 1)"));
            }
            for l in 1..=9 {
                out.push(direct(&format!("(S, phi=pi/6, {l})"), &format!("(SxS1, {l})")));
            }
            for f in ["R", "C", "H"] {
                out.push(direct(&format!("(P, phi=pi/6, ({f},2))"), "(P, phi=pi/6, (O,2))"));
            }
            for f in ["R", "C"] {
                out.push(direct(&format!("(P, phi=pi/6, ({f},3))"), "(P, phi=pi/6, (H,3))"));
            }
            out.push(direct("(AI)", "(A2)"));
            out.push(direct("(A2)", "(AII)"));
            for l in 1..=8 {
                out.push(direct(&format!("(SxS1, {l})"), "(SxS1, 9)"));
            }
        }
        SpaceKind::G2Group => {
            for a in ["0", "arctan(1/(3*sqrt(3)))", "pi/6"] {
                out.push(direct(&format!("(Geo, phi={a})"), "(SxS, 1, 1)"));
            }
            for l in 2..=3 {
                out.push(direct(&format!("(S, phi=0, {l})"), &format!("(SxS, {l}, 1)")));
            }
            out.push(direct("(S, phi=arctan(1/(3*sqrt(3))), 2)", "(G)"));
            for l in 2..=3 {
                out.push(direct(&format!("(S, phi=pi/6, {l})"), &format!("(SxS, 1, {l})")));
            }
            for l in 2..=3 {
                out.push(skipped(&format!("(P, phi=pi/6, (R,{l}))"), &format!("(SxS, {l}, {l})"), NO_WITNESS));
            }
            out.push(direct("(P, phi=pi/6, (C,2))", "(G)"));
            for l in 1..=3 {
                for m in 1..=3 {
                    if (l, m) != (3, 3) {
                        out.push(direct(&format!("(SxS, {l}, {m})"), "(SxS, 3, 3)"));
                    }
                }
            }
            out.push(direct("(AI)", "(A2)"));
        }
    }
    out
}

fn representative(sp: &SpaceModel, small: &str) -> Result<Subspace, Error> {
    let k = Kit { sp };
    match (sp.kind, small) {
        (SpaceKind::EIII, "(P, phi=0, (R,5))") => {
            let mut rows = vec![k.sharp("l2")?];
            for s in 0..4 {
                rows.push(k.m1("l2", s, Scalar::i())?);
            }
            k.span(rows)
        }
        _ => Err(Error::UnknownLabel(small.to_string())),
    }
}

/// Checks that a representative carries the same data as the prototype of its type.
fn same_data(sp: &SpaceModel, a: &Subspace, b: &Subspace, seed: u64) -> Result<Option<String>, Error> {
    let (x, _) = compute(sp, a, seed)?;
    let (y, _) = compute(sp, b, seed)?;
    if !x.is_lts || x.dim != y.dim || x.rank != y.rank || x.complexity != y.complexity || x.angle != y.angle || x.mults != y.mults {
        return Ok(Some(format!("representative data {x:?} differ from prototype data {y:?}")));
    }
    Ok(None)
}

/// `Ad(exp(pi/2 Z)) S` for `Z = t K_root(1)` scaled so that `ad(Z)^2 = -1` off its kernel.
pub fn quarter_turn_image(sp: &SpaceModel, root: usize, s: &Subspace, probe: &[Scalar]) -> Result<(Subspace, Scalar), Error> {
    let kz = sp.k_chart_root(root, &Scalar::one())?;
    let t = lts::quarter_turn_scale(sp, &kz, probe)?;
    let z = scale(&t, &kz);
    let rows = s.basis().iter().map(|b| lts::isotropy_rotate(sp, &z, b)).collect::<Result<Vec<_>, _>>()?;
    Ok((Subspace::span(sp.dim_m(), &rows), t))
}

pub fn check_containment(sp: &SpaceModel, small: &str, big: &str, method: &Method, seed: u64) -> ContainmentRow {
    let row = |status: Status, certificate: String| ContainmentRow {
        small: small.to_string(),
        big: big.to_string(),
        method: method.clone(),
        status,
        certificate,
    };
    if let Method::Skipped(why) = method {
        return row(Status::Skipped, why.clone());
    }
    let run = || -> Result<(bool, String), Error> {
        let b = prototype_from_text(sp, big)?;
        let s = prototype_from_text(sp, small)?;
        Ok(match method {
            Method::Direct => {
                let ok = b.contains_subspace(&s);
                (ok, format!("dim {} inside dim {}", s.dim(), b.dim()))
            }
            Method::Identical => (b.same_as(&s), format!("both of dim {}", s.dim())),
            Method::QuarterTurn(root) => {
                let probe = Kit { sp }.m1("l2", 0, Scalar::one())?;
                let (img, t) = quarter_turn_image(sp, *root, &s, &probe)?;
                let ok = img.dim() == s.dim() && b.contains_subspace(&img);
                (ok, format!("Z = ({t}) K_alpha{}(1); image of dim {} inside dim {}", root + 1, img.dim(), b.dim()))
            }
            Method::Representative(desc) => {
                let r = representative(sp, small)?;
                if let Some(msg) = same_data(sp, &r, &s, seed)? {
                    return Ok((false, msg));
                }
                (b.contains_subspace(&r), format!("representative {desc} inside dim {}", b.dim()))
            }
            Method::Skipped(_) => unreachable!(),
        })
    };
    match run() {
        Ok((true, c)) => row(Status::Pass, c),
        Ok((false, c)) => row(Status::Fail, c),
        Err(e) => row(Status::Fail, e.to_string()),
    }
}

pub fn verify_containments(sp: &SpaceModel, seed: u64) -> Vec<ContainmentRow> {
    containment_rows(sp.kind).iter().map(|(s, b, m)| check_containment(sp, s, b, m, seed)).collect()
}

// ---------------------------------------------------------------------------
// Derived spaces

/// Host prototypes of the derived-space catalogs.
pub fn derived_hosts(kind: SpaceKind) -> &'static [&'static str] {
    match kind {
        SpaceKind::EIII => &["(DIII)", "(G2H4, (Sp2))"],
        SpaceKind::EIV => &["(AII)", "(A2)"],
        SpaceKind::G2Group => &["(G)"],
    }
}

#[derive(Clone, Debug)]
enum DerivedKind {
    Member,
    Rep(Vec<Vector>, &'static str),
    Intersection(&'static str, usize, &'static str),
    Skip(&'static str),
}

#[derive(Clone, Debug)]
pub struct DerivedRow {
    pub label: String,
    pub status: Status,
    pub certificate: String,
}

#[derive(Clone, Debug)]
pub struct DerivedReport {
    pub space: SpaceKind,
    pub host: String,
    pub host_dim: usize,
    pub host_diagram: String,
    pub rows: Vec<DerivedRow>,
}

impl DerivedReport {
    pub fn count(&self, s: Status) -> usize {
        self.rows.iter().filter(|r| r.status == s).count()
    }
}

const INTERNAL: &str = "type named in the classification of the host space; no explicit prototype in this model";
const POLAR: &str = "representative is built in a different model of the host; no explicit conjugation into the host prototype";

fn host_subspace(sp: &SpaceModel, host: &str) -> Result<Subspace, Error> {
    if sp.kind == SpaceKind::EIII && host == "(G2H4, (Sp2))" {
        let d = prototype_from_text(sp, "(DIII)")?;
        let g = prototype_from_text(sp, "(G2H4)")?;
        return Ok(d.intersect(&g));
    }
    if !derived_hosts(sp.kind).contains(&host) {
        return Err(Error::UnknownHost(host.to_string()));
    }
    prototype_from_text(sp, host)
}

fn derived_rows(sp: &SpaceModel, host: &str) -> Result<Vec<(String, DerivedKind)>, Error> {
    let k = Kit { sp };
    let one = Scalar::one;
    let mut out: Vec<(String, DerivedKind)> = Vec::new();
    let member = |s: String| (s, DerivedKind::Member);
    match (sp.kind, host) {
        (SpaceKind::EIII, "(DIII)") => {
            for a in ["0", "arctan(1/3)", "arctan(1/2)", "pi/4"] {
                out.push(member(format!("(Geo, phi={a})")));
            }
            for f in ["R", "C"] {
                out.push((format!("(P, phi=0, ({f},4))"), DerivedKind::Skip(POLAR)));
            }
            for n in [5, 6] {
                out.push(member(format!("(P, phi=pi/4, S^{n})")));
            }
            for f in [Field::R, Field::C] {
                for g in [Field::R, Field::C] {
                    let mut rows = k.a();
                    rows.extend(k.slots("l1", &[0, 2], f)?);
                    if f == Field::C {
                        rows.push(k.m1("2l1", 0, one())?);
                    }
                    if g == Field::C {
                        rows.push(k.m1("2l2", 0, one())?);
                    }
                    let name = format!("(PxP1, ({},3), {})", f.letter(), g.letter());
                    out.push((name, DerivedKind::Rep(rows, "m_l1' inside M_l1(C,0,C,0)")));
                }
            }
            out.push(("(Q, (G1,6))".to_string(), DerivedKind::Intersection("(Q)", 12, "1=>4")));
            out.push(("(Q, tau)".to_string(), DerivedKind::Skip(OPAQUE)));
            out.push(("(G2C6, (G2,(C,3)))".to_string(), DerivedKind::Intersection("(G2C6)", 12, "2<=>2[1]")));
            out.push(("(G2C6, tau)".to_string(), DerivedKind::Skip(OPAQUE)));
            out.push(("(G2H4, (Sp2))".to_string(), DerivedKind::Intersection("(G2H4)", 10, "2=>2")));
            out.push(("(G2H4, tau)".to_string(), DerivedKind::Skip(OPAQUE)));
        }
        (SpaceKind::EIII, "(G2H4, (Sp2))") => {
            for a in ["0", "arctan(1/3)", "arctan(1/2)", "pi/4"] {
                out.push(member(format!("(Geo, phi={a})")));
            }
            for t in [
                "(G2H4, (S,phi=arctan(1/3),l))",
                "(G2H4, (P,phi=pi/4,tau))",
                "(G2H4, (PxP,tau1,tau2))",
                "(G2H4, (S1xS5,l))",
                "(G2H4, (Q3))",
            ] {
                out.push((t.to_string(), DerivedKind::Skip(INTERNAL)));
            }
        }
        (SpaceKind::EIV, "(AII)") | (SpaceKind::EIV, "(A2)") => {
            let big = host == "(AII)";
            for a in ["0", "pi/6", "pi/4", "pi/3"] {
                out.push(member(format!("(Geo, phi={a})")));
            }
            let lmax = if big { 5 } else { 3 };
            for l in 1..=lmax {
                out.push(member(format!("(S, phi=pi/6, {l})")));
            }
            out.push(member("(P, phi=pi/6, (R,2))".to_string()));
            out.push(member("(P, phi=pi/6, (R,3))".to_string()));
            out.push(("(P, phi=pi/6, (C,2))".to_string(), DerivedKind::Skip(NO_WITNESS)));
            if big {
                out.push(("(P, phi=pi/6, (H,2))".to_string(), DerivedKind::Skip(NO_WITNESS)));
                out.push(("(P, phi=pi/6, (C,3))".to_string(), DerivedKind::Skip(NO_WITNESS)));
            }
            out.push(member("(AI)".to_string()));
            if big {
                out.push(member("(A2)".to_string()));
            }
            for l in 1..=lmax {
                out.push(member(format!("(SxS1, {l})")));
            }
        }
        (SpaceKind::G2Group, "(G)") => {
            for a in ["0", "arctan(1/(3*sqrt(3)))", "pi/6"] {
                out.push(member(format!("(Geo, phi={a})")));
            }
            out.push(member("(S, phi=0, 2)".to_string()));
            out.push(member("(S, phi=arctan(1/(3*sqrt(3))), 2)".to_string()));
            out.push(member("(S, phi=pi/6, 2)".to_string()));
            out.push(member("(P, phi=pi/6, (R,2))".to_string()));
            out.push(member("(P, phi=pi/6, (C,2))".to_string()));
            out.push(("(AI)".to_string(), DerivedKind::Skip(NO_WITNESS)));
            for l in 1..=2 {
                for m in 1..=2 {
                    out.push(member(format!("(SxS, {l}, {m})")));
                }
            }
        }
        _ => return Err(Error::UnknownHost(host.to_string())),
    }
    Ok(out)
}

/// Checks, for every type listed for a host, that a representative lies in the host prototype.
pub fn derived_space_catalog(sp: &SpaceModel, host: &str, seed: u64) -> Result<DerivedReport, Error> {
    let h = host_subspace(sp, host)?;
    let (hc, _) = compute(sp, &h, seed)?;
    if !hc.is_lts {
        return Err(Error::NotAFlat);
    }
    let mut rows = Vec::new();
    for (label, kind) in derived_rows(sp, host)? {
        let res = || -> Result<(Status, String), Error> {
            Ok(match &kind {
                DerivedKind::Skip(why) => (Status::Skipped, why.to_string()),
                DerivedKind::Member => {
                    let s = prototype_from_text(sp, &label)?;
                    let ok = h.contains_subspace(&s) && lts::is_lts(sp, &s);
                    (if ok { Status::Pass } else { Status::Fail }, format!("prototype of dim {} inside host", s.dim()))
                }
                DerivedKind::Rep(rows, desc) => {
                    let r = Subspace::new(sp.dim_m(), rows.clone())?;
                    let p = prototype_from_text(sp, &label)?;
                    if let Some(msg) = same_data(sp, &r, &p, seed)? {
                        (Status::Fail, msg)
                    } else {
                        let ok = h.contains_subspace(&r);
                        (if ok { Status::Pass } else { Status::Fail }, format!("representative with {desc}, dim {}", r.dim()))
                    }
                }
                DerivedKind::Intersection(other, dim, dg) => {
                    let o = prototype_from_text(sp, other)?;
                    let x = h.intersect(&o);
                    let (c, cert) = compute(sp, &x, seed)?;
                    let got = c.diagram.clone().unwrap_or_default();
                    let ok = c.is_lts && c.dim == *dim && got == *dg;
                    let msg = if c.is_lts { format!("host cap {other}: dim {}, diagram {got}", c.dim) } else { cert };
                    (if ok { Status::Pass } else { Status::Fail }, msg)
                }
            })
        };
        let (status, certificate) = res().unwrap_or_else(|e| (Status::Fail, e.to_string()));
        rows.push(DerivedRow { label, status, certificate });
    }
    Ok(DerivedReport {
        space: sp.kind,
        host: host.to_string(),
        host_dim: hc.dim,
        host_diagram: hc.diagram.unwrap_or_default(),
        rows,
    })
}

// ---------------------------------------------------------------------------
// Geodesic length in the group G2

fn to_big(r: &Rational) -> (BigInt, BigInt) {
    (r.numer(), r.denom())
}

/// A basis of `{v in a : exp(v) = e} / pi` over the simple duals, generated by
/// the vectors `2 X_l / pi = (4 / |l#|^2) l#` over all roots `l`.
pub fn unit_lattice_basis(sp: &SpaceModel) -> Result<[[Rational; 2]; 2], Error> {
    if sp.kind != SpaceKind::G2Group {
        return Err(Error::Unsupported("the unit lattice is computed for G2group only".to_string()));
    }
    let mut gens: Vec<[Rational; 2]> = Vec::new();
    for l in sp.restricted.labels.clone() {
        let v = sp.sharp(&l)?;
        let n = sp.norm_sq(&v).as_rational().ok_or(Error::NotRationalTerm)?;
        let f = &Rational::int(4) / &n;
        gens.push([&f * &v[0].as_rational().ok_or(Error::NotRationalTerm)?, &f * &v[1].as_rational().ok_or(Error::NotRationalTerm)?]);
    }
    let mut den = BigInt::one();
    for g in &gens {
        for x in g {
            den = den.lcm(&to_big(x).1);
        }
    }
    let mut iv: Vec<[BigInt; 2]> = gens
        .iter()
        .map(|g| {
            let c = |x: &Rational| {
                let (n, d) = to_big(x);
                n * (&den / d)
            };
            [c(&g[0]), c(&g[1])]
        })
        .collect();
    loop {
        let nz: Vec<usize> = (0..iv.len()).filter(|&k| !iv[k][0].is_zero()).collect();
        if nz.len() <= 1 {
            break;
        }
        let p = *nz.iter().min_by_key(|&&k| iv[k][0].abs()).unwrap();
        let pv = iv[p].clone();
        for &k in &nz {
            if k != p {
                let q = iv[k][0].div_floor(&pv[0]);
                iv[k][0] -= &q * &pv[0];
                iv[k][1] -= &q * &pv[1];
            }
        }
    }
    let first = iv.iter().find(|v| !v[0].is_zero()).cloned().ok_or(Error::NotInLatticeSpan)?;
    let g1 = iv.iter().filter(|v| v[0].is_zero()).fold(BigInt::zero(), |acc, v| acc.gcd(&v[1]));
    if g1.is_zero() {
        return Err(Error::NotInLatticeSpan);
    }
    let r = |n: &BigInt| Rational::from_big(num_rational::BigRational::new(n.clone(), den.clone()));
    Ok([[r(&first[0]), r(&first[1])], [Rational::ZERO, r(&g1)]])
}

/// Smallest `t > 0` with `t H` in the unit lattice, returned as `t / pi`.
pub fn geodesic_length(sp: &SpaceModel, h: &[Scalar]) -> Result<Scalar, Error> {
    if h.len() != sp.dim_m() || h[2..].iter().any(|x| !x.is_zero()) {
        return Err(Error::NotInLatticeSpan);
    }
    let basis = unit_lattice_basis(sp)?;
    let p = (0..2).find(|&k| !h[k].is_zero()).ok_or(Error::ZeroVector)?;
    let c = h[p].clone();
    let cinv = c.inv()?;
    let w: Vec<Rational> = (0..2)
        .map(|k| (&h[k] * &cinv).as_rational().ok_or(Error::NotInLatticeSpan))
        .collect::<Result<_, _>>()?;
    // w = x b1 + y b2 with b1 = (a, b), b2 = (0, d).
    let x = &w[0] / &basis[0][0];
    let y = &(&w[1] - &(&x * &basis[0][1])) / &basis[1][1];
    let (xn, xd) = to_big(&x);
    let (yn, yd) = to_big(&y);
    let l = xd.lcm(&yd);
    let g = (xn * (&l / xd)).gcd(&(yn * (&l / yd)));
    let s = Rational::from_big(num_rational::BigRational::new(l, g));
    let t = &Scalar::from(s) * &cinv;
    Ok(if t.sign()? < 0 { -&t } else { t })
}

/// `|alpha#|^2` for the single positive restricted root of a rank-one system.
pub fn rank_one_root_norm(sp: &SpaceModel, s: &Subspace, seed: u64) -> Result<Scalar, Error> {
    let (rank, flat) = lts::rank_and_flat(sp, s, seed)?;
    if rank != 1 {
        return Err(Error::NotAFlat);
    }
    let roots = lts::sub_restricted_roots(sp, s, &flat)?;
    let h = &flat.basis()[0];
    let hh = sp.norm_sq(h);
    let r = roots.iter().min_by(|a, b| {
        let x = &a.values[0] * &a.values[0];
        let y = &b.values[0] * &b.values[0];
        x.cmp_real(&y).unwrap_or(core::cmp::Ordering::Equal)
    });
    let r = r.ok_or(Error::NotAFlat)?;
    Ok(&(&r.values[0] * &r.values[0]) / &hh)
}
