//! Quoted curvature identities, evaluated exactly on the chart vectors.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;
use crate::linalg::{is_zero, scale, sub, Vector};
use crate::scalar::Scalar;
use crate::space::{SpaceKind, SpaceModel};

/// One identity `lhs = rhs`, compared at three levels.
#[derive(Clone, Debug)]
pub struct IdentityCheck {
    pub name: String,
    /// `lhs == rhs` exactly.
    pub exact: bool,
    /// `lhs` lies in the root spaces (and `a`) touched by `rhs`.
    pub subspace: bool,
    /// `|lhs|^2 / |rhs|^2`.
    pub norm_ratio: Scalar,
    /// `c` with `lhs = c rhs`, when such a scalar exists.
    pub factor: Option<Scalar>,
}

impl IdentityCheck {
    /// Norm and subspace agree; holds independently of chart phases.
    pub fn phase_invariant(&self) -> bool {
        self.subspace && self.norm_ratio.is_one()
    }
}

fn proportional(lhs: &[Scalar], rhs: &[Scalar]) -> Option<Scalar> {
    let p = rhs.iter().position(|s| !s.is_zero())?;
    let c = &lhs[p] / &rhs[p];
    if is_zero(&sub(lhs, &scale(&c, rhs))) {
        Some(c)
    } else {
        None
    }
}

fn compare(sp: &SpaceModel, name: String, lhs: &[Scalar], rhs: &[Scalar]) -> Result<IdentityCheck, Error> {
    let touched: Vec<Option<&str>> = (0..rhs.len()).filter(|&p| !rhs[p].is_zero()).map(|p| sp.label_of_index(p)).collect();
    let subspace = (0..lhs.len()).filter(|&p| !lhs[p].is_zero()).all(|p| touched.contains(&sp.label_of_index(p)));
    let nr = sp.norm_sq(rhs);
    let norm_ratio = if nr.is_zero() { sp.norm_sq(lhs) } else { &sp.norm_sq(lhs) / &nr };
    Ok(IdentityCheck {
        name,
        exact: is_zero(&sub(lhs, rhs)),
        subspace,
        norm_ratio,
        factor: proportional(lhs, rhs),
    })
}

/// Aggregate of a family of identities: every member compared, with the common factor if uniform.
#[derive(Clone, Debug)]
pub struct IdentityFamily {
    pub name: String,
    pub members: Vec<IdentityCheck>,
}

impl IdentityFamily {
    pub fn exact(&self) -> bool {
        self.members.iter().all(|m| m.exact)
    }

    pub fn phase_invariant(&self) -> bool {
        self.members.iter().all(|m| m.phase_invariant())
    }

    pub fn subspace(&self) -> bool {
        self.members.iter().all(|m| m.subspace)
    }

    /// The factor shared by every member, if there is one.
    pub fn uniform_factor(&self) -> Option<Scalar> {
        let first = self.members.first()?.factor.clone()?;
        self.members.iter().all(|m| m.factor.as_ref() == Some(&first)).then_some(first)
    }
}

fn c(re: i64, im: i64) -> Scalar {
    &Scalar::int(re) + &(&Scalar::i() * &Scalar::int(im))
}

fn chart1(sp: &SpaceModel, label: &str, k: usize, z: Scalar) -> Result<Vector, Error> {
    let n = sp.orbits_of(label).len();
    let mut e = vec![Scalar::zero(); n];
    e[k] = z;
    sp.chart(label, &e)
}

/// Single frame vectors of a restricted root space.
fn basis_of(sp: &SpaceModel, label: &str) -> Vec<Vector> {
    sp.root_space(label).into_iter().map(|p| crate::linalg::unit(sp.dim_m(), p)).collect()
}

fn eiii(sp: &SpaceModel) -> Result<Vec<IdentityFamily>, Error> {
    let mut out = Vec::new();
    let eighth = Scalar::frac(1, 8);
    for k in ["l1", "l2"] {
        let h = sp.sharp(k)?;
        let m2 = sp.chart(&format!("2{k}"), &[Scalar::one()])?;
        let mut fam = IdentityFamily { name: format!("R({k}#, v) M_2{k}(1) = -1/8 J v"), members: Vec::new() };
        for (p, v) in basis_of(sp, k).iter().enumerate() {
            let lhs = sp.curvature(&h, v, &m2);
            let rhs = scale(&-&eighth, &sp.apply_j(v)?);
            fam.members.push(compare(sp, format!("v = e{p}"), &lhs, &rhs)?);
        }
        out.push(fam);

        let mut law = IdentityFamily {
            name: format!("R({k}#, v) w = 1/8 <v,w> {k}# + 1/8 <v,Jw> M_2{k}(1)"),
            members: Vec::new(),
        };
        let b = basis_of(sp, k);
        for (p, v) in b.iter().enumerate() {
            for (q, w) in b.iter().enumerate() {
                let lhs = sp.curvature(&h, v, w);
                let mut rhs = scale(&(&eighth * &sp.inner(v, w)), &h);
                crate::linalg::axpy(&mut rhs, &(&eighth * &sp.inner(v, &sp.apply_j(w)?)), &m2);
                law.members.push(compare(sp, format!("v = e{p}, w = e{q}"), &lhs, &rhs)?);
            }
        }
        out.push(law);
    }

    let s2 = Scalar::sqrt_int(2)?;
    let coef = &s2 * &Scalar::frac(1, 16);
    let m3 = sp.chart("l3", &[Scalar::zero(), Scalar::zero(), Scalar::one()])?;
    for (k, other, sign) in [("l1", "l2", 1i64), ("l2", "l1", -1)] {
        let h = sp.sharp(k)?;
        let mut fam = IdentityFamily {
            name: format!("R({k}#, M_{k}(c)) M_l3(0,0,1) = {}sqrt(2)/16 M_{other}(c1 i, c2 i, -c3 i, -c4 i)", if sign < 0 { "-" } else { "" }),
            members: Vec::new(),
        };
        for slot in 0..4 {
            for z in [c(1, 0), c(0, 1)] {
                let v = chart1(sp, k, slot, z.clone())?;
                let s = if slot < 2 { 1 } else { -1 };
                let img = &z * &(&Scalar::i() * &Scalar::int(s));
                let rhs = scale(&(&coef * &Scalar::int(sign)), &chart1(sp, other, slot, img)?);
                let lhs = sp.curvature(&h, &v, &m3);
                fam.members.push(compare(sp, format!("c{} = {}", slot + 1, z), &lhs, &rhs)?);
            }
        }
        out.push(fam);
    }
    Ok(out)
}

fn eiv(sp: &SpaceModel) -> Result<Vec<IdentityFamily>, Error> {
    let s = &Scalar::sqrt_int(2)? * &Scalar::frac(1, 8);
    let h = sp.sharp("l1")?;
    let v1 = chart1(sp, "l1", 0, Scalar::one())?;
    let v2 = chart1(sp, "l2", 0, Scalar::one())?;
    let i = Scalar::i();
    let mut fam = IdentityFamily { name: "R(l1#, .) . on M_l1, M_l2, M_l3 with coefficient sqrt(2)/8".to_string(), members: Vec::new() };
    let cases: Vec<(String, Vector, Vector, Vector)> = vec![
        ("R(l1#, v1) v2 = sqrt(2)/8 M_l3(0,0,0,i)".into(), v1.clone(), v2.clone(), scale(&s, &chart1(sp, "l3", 3, i.clone())?)),
        (
            "R(l1#, M_l1(i,0,0,0)) v2 = -sqrt(2)/8 M_l3(0,0,0,1)".into(),
            chart1(sp, "l1", 0, i.clone())?,
            v2.clone(),
            scale(&-&s, &chart1(sp, "l3", 3, Scalar::one())?),
        ),
        (
            "R(l1#, v1) M_l3(0,0,0,1) = -sqrt(2)/8 M_l2(i,0,0,0)".into(),
            v1.clone(),
            chart1(sp, "l3", 3, Scalar::one())?,
            scale(&-&s, &chart1(sp, "l2", 0, i.clone())?),
        ),
        (
            "R(l1#, M_l1(0,1,0,0)) v2 = sqrt(2)/8 M_l3(0,0,i,0)".into(),
            chart1(sp, "l1", 1, Scalar::one())?,
            v2.clone(),
            scale(&s, &chart1(sp, "l3", 2, i.clone())?),
        ),
        (
            "R(l1#, v1) M_l3(0,0,1,0) = sqrt(2)/8 M_l2(0,i,0,0)".into(),
            v1,
            chart1(sp, "l3", 2, Scalar::one())?,
            scale(&s, &chart1(sp, "l2", 1, i)?),
        ),
    ];
    for (name, x, z, rhs) in cases {
        let lhs = sp.curvature(&h, &x, &z);
        fam.members.push(compare(sp, name, &lhs, &rhs)?);
    }
    Ok(vec![fam])
}

fn g2(sp: &SpaceModel) -> Result<Vec<IdentityFamily>, Error> {
    let h = sp.sharp("l1")?;
    let v = |l: &str, z: Scalar| sp.chart(l, &[z]);
    let (one, i) = (Scalar::one(), Scalar::i());
    let r3 = Scalar::sqrt_int(3)?;
    let a = &r3 * &Scalar::frac(3, 4);
    let b = &r3 * &Scalar::frac(1, 4);
    let half = Scalar::frac(1, 2);
    let comb = |terms: &[(&Scalar, Vector)]| -> Vector {
        let mut out = vec![Scalar::zero(); sp.dim_m()];
        for (k, x) in terms {
            crate::linalg::axpy(&mut out, k, x);
        }
        out
    };
    let mut fam = IdentityFamily { name: "R(l1#, V(.)) V(.) identities".to_string(), members: Vec::new() };
    let mut cases: Vec<(String, Vector, Vector, Vector)> = vec![
        ("R(l1#, V2(1)) V1(1) = 3sqrt(3)/4 V3(i)".into(), v("l2", one.clone())?, v("l1", one.clone())?, comb(&[(&a, v("l3", i.clone())?)])),
        (
            "R(l1#, V3(i)) V1(1) = sqrt(3)/4 V2(1) - 1/2 V4(1)".into(),
            v("l3", i.clone())?,
            v("l1", one.clone())?,
            comb(&[(&b, v("l2", one.clone())?), (&-&half, v("l4", one.clone())?)]),
        ),
        (
            "R(l1#, V4(1)) V1(1) = 1/2 V3(i) - sqrt(3)/4 V5(i)".into(),
            v("l4", one.clone())?,
            v("l1", one.clone())?,
            comb(&[(&half, v("l3", i.clone())?), (&-&b, v("l5", i.clone())?)]),
        ),
        ("R(l1#, V5(i)) V2(1) = 3sqrt(3)/4 V6(1)".into(), v("l5", i.clone())?, v("l2", one.clone())?, comb(&[(&a, v("l6", one.clone())?)])),
        ("R(l1#, V2(1)) V5(1) = -3sqrt(3)/4 V6(i)".into(), v("l2", one.clone())?, v("l5", one.clone())?, comb(&[(&-&a, v("l6", i.clone())?)])),
    ];
    let rh = &r3 * &Scalar::frac(1, 2);
    for cc in [c(1, 0), c(0, 1), c(1, 2)] {
        for d in [c(1, 0), c(0, 1), c(2, -1)] {
            let cd = &cc * &d;
            cases.push((
                format!("R(l1#, V1({cc})) V3({d}) = sqrt(3)/2 V2(conj(c) d i) + V4(c d i)"),
                v("l1", cc.clone())?,
                v("l3", d.clone())?,
                comb(&[(&rh, v("l2", &(&cc.conj_i() * &d) * &i)?), (&one, v("l4", &cd * &i)?)]),
            ));
        }
    }
    for (name, x, z, rhs) in cases {
        let lhs = sp.curvature(&h, &x, &z);
        fam.members.push(compare(sp, name, &lhs, &rhs)?);
    }
    Ok(vec![fam])
}

/// All quoted curvature identities of a space under its frozen chart phases.
pub fn curvature_identities(sp: &SpaceModel) -> Result<Vec<IdentityFamily>, Error> {
    match sp.kind {
        SpaceKind::EIII => eiii(sp),
        SpaceKind::EIV => eiv(sp),
        SpaceKind::G2Group => g2(sp),
    }
}
