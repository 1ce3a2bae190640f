use std::path::Path;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use tgs_core::catalog::{self, TypeLabel};
use tgs_core::identities;
use tgs_core::linalg::{add, is_zero, scale, unit};
use tgs_core::lts::{self, format_vector, parse_a_expr, parse_vector};
use tgs_core::space::{SpaceKind, SpaceModel};
use tgs_core::{cayley, Error, Scalar};

use crate::report::{item, Item, Report, Status};

fn build(name: &str) -> Result<SpaceModel, Error> {
    SpaceModel::build(name)
}

pub fn space_info(name: &str, seed: u64) -> Result<Report, Error> {
    let sp = build(name)?;
    let roots: Vec<Value> = sp
        .restricted
        .labels
        .iter()
        .enumerate()
        .map(|(k, l)| {
            let h = sp.sharp(l)?;
            let angle = sp.isotropy_angle(&h)?;
            Ok(json!({
                "label": l,
                "coords": sp.restricted.coords[k],
                "multiplicity": sp.restricted.mult[k],
                "norm_sq": sp.norm_sq(&h).to_string(),
                "angle": angle.name.map(str::to_string).unwrap_or_else(|| format!("arctan(sqrt({}))", angle.tan_sq)),
            }))
        })
        .collect::<Result<_, Error>>()?;
    let data = json!({
        "algebra_dim": sp.alg.dim(),
        "dim_k": sp.dim_k(),
        "dim_m": sp.dim_m(),
        "restricted_type": sp.restricted_kind().name(),
        "metric": format!("<X,Y> = -({}) B(X,Y)", sp.metric_scale),
        "diagram": catalog::ambient_diagram(&sp)?,
        "hermitian": sp.j().is_ok(),
        "chart_phases": sp.orbits.iter().map(|o| json!({"label": o.label, "rot": o.phase.rot, "conj": o.phase.conj})).collect::<Vec<_>>(),
        "roots": roots,
    });
    Ok(Report::new("space info", Some(sp.kind.name()), seed, Vec::new(), data))
}

pub fn verify_foundations(name: &str, seed: u64) -> Result<Report, Error> {
    let sp = build(name)?;
    let n = sp.dim_m();
    let mut items: Vec<Item> = Vec::new();
    let d = sp.alg.dim();
    items.push(match sp.alg.check_jacobi() {
        Ok(()) => item("Jacobi identity", Status::Pass, format!("all {} basis triples", d * (d - 1) * (d - 2) / 6)),
        Err(e) => item("Jacobi identity", Status::Fail, e.to_string()),
    });
    items.push(item("Killing form negative definite", Status::from_bool(sp.alg.killing_negative_definite()), format!("dim {d}")));
    if sp.kind != SpaceKind::G2Group {
        items.push(match sp.check_sigma() {
            Ok(()) => item("sigma is an involutive automorphism", Status::Pass, format!("k {} + m {}", sp.dim_k(), n)),
            Err(e) => item("sigma is an involutive automorphism", Status::Fail, e.to_string()),
        });
    }
    let msum: usize = sp.restricted.mult.iter().sum();
    items.push(item("dim m = rank + sum of multiplicities", Status::from_bool(msum + 2 == n), format!("{n} = 2 + {msum}")));
    let min = sp.restricted.labels.iter().map(|l| sp.sharp(l).map(|h| sp.norm_sq(&h))).collect::<Result<Vec<_>, _>>()?;
    let shortest = min.iter().filter_map(Scalar::as_rational).min();
    items.push(item(
        "shortest restricted root has length 1",
        Status::from_bool(shortest.as_ref().map(|r| r.to_string()) == Some("1".to_string())),
        format!("metric scale {}", sp.metric_scale),
    ));
    if sp.j().is_ok() {
        let mut ok = true;
        for p in 0..n {
            let e = unit(n, p);
            let je = sp.apply_j(&e)?;
            ok &= sp.apply_j(&je)? == scale(&Scalar::int(-1), &e) && sp.norm_sq(&je) == sp.norm_sq(&e);
        }
        items.push(item("J^2 = -1 and J is isometric", Status::from_bool(ok), format!("{n} basis vectors")));
    }

    let r = |a: &[Scalar], b: &[Scalar], c: &[Scalar]| sp.curvature(a, b, c);
    let (mut skew, mut bianchi) = (true, true);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let (x, y, z) = (unit(n, i), unit(n, j), unit(n, k));
                let rxyz = r(&x, &y, &z);
                if j > i {
                    skew &= is_zero(&add(&rxyz, &r(&y, &x, &z)));
                }
                if i < j && j < k {
                    bianchi &= is_zero(&add(&add(&rxyz, &r(&y, &z, &x)), &r(&z, &x, &y)));
                }
            }
        }
    }
    items.push(item("R(x,y) = -R(y,x)", Status::from_bool(skew), "all basis triples"));
    items.push(item("first Bianchi identity", Status::from_bool(bianchi), "all basis triples"));
    let mut pair = true;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut below = |m: usize| (rng.next_u64() % m as u64) as usize;
    let samples = 4000;
    for _ in 0..samples {
        let (i, j, k, l) = (below(n), below(n), below(n), below(n));
        let (x, y, z, w) = (unit(n, i), unit(n, j), unit(n, k), unit(n, l));
        pair &= sp.inner(&r(&x, &y, &z), &w) == sp.inner(&r(&z, &w, &x), &y);
    }
    items.push(item("<R(x,y)z,w> = <R(z,w)x,y>", Status::from_bool(pair), format!("{samples} seeded basis quadruples")));
    let data = json!({ "dim_m": n, "algebra_dim": d });
    Ok(Report::new("space verify-foundations", Some(sp.kind.name()), seed, items, data))
}

pub fn catalog_verify(name: &str, seed: u64) -> Result<Report, Error> {
    let sp = build(name)?;
    let r = catalog::verify_catalog(&sp, seed)?;
    let items = r.rows.iter().map(|row| item(row.expected.label.to_string(), row.status.into(), row.certificate.clone())).collect();
    let rows: Vec<Value> = r
        .rows
        .iter()
        .map(|row| {
            let c = row.computed.as_ref();
            json!({
                "label": row.expected.label.to_string(),
                "source": row.expected.source,
                "expected": {
                    "dim": row.expected.dim,
                    "rank": row.expected.rank,
                    "complexity": row.expected.complexity.map(|x| x.name()),
                    "maximal": row.expected.maximal,
                    "diagram": row.expected.diagram,
                    "isometry": row.expected.isometry,
                },
                "computed": c.map(|c| json!({
                    "lts": c.is_lts,
                    "dim": c.dim,
                    "rank": c.rank,
                    "complexity": c.complexity.map(|x| x.name()),
                    "angle_tan_sq": c.angle.as_ref().map(|a| a.to_string()),
                    "diagram": c.diagram,
                    "multiplicities": c.mults,
                })),
                "maximality": if row.expected.maximal { "consistent-with-table" } else { "-" },
            })
        })
        .collect();
    let data = json!({ "families": r.families, "ambient_diagram": catalog::ambient_diagram(&sp)?, "rows": rows });
    Ok(Report::new("catalog verify", Some(sp.kind.name()), seed, items, data))
}

pub fn catalog_containments(name: &str, seed: u64) -> Result<Report, Error> {
    let sp = build(name)?;
    let rows = catalog::verify_containments(&sp, seed);
    let items = rows.iter().map(|r| item(format!("{} in {}", r.small, r.big), r.status.into(), r.certificate.clone())).collect();
    Ok(Report::new("catalog containments", Some(sp.kind.name()), seed, items, json!({ "rows": rows.len() })))
}

pub fn catalog_derived(name: &str, host: &str, seed: u64) -> Result<Report, Error> {
    let sp = build(name)?;
    let host = TypeLabel::parse(sp.kind, host)?.to_string();
    let r = catalog::derived_space_catalog(&sp, &host, seed)?;
    let items = r.rows.iter().map(|x| item(x.label.clone(), x.status.into(), x.certificate.clone())).collect();
    let data = json!({ "host": r.host, "host_dim": r.host_dim, "host_diagram": r.host_diagram });
    Ok(Report::new("catalog derived", Some(sp.kind.name()), seed, items, data))
}

pub fn lts_check(file: &Path, seed: u64) -> Result<Report, Error> {
    let text = std::fs::read_to_string(file).map_err(|e| Error::Parse(format!("{}: {e}", file.display())))?;
    let (kind, lines) = lts::parse_subspace_text(&text)?;
    let sp = SpaceModel::build_kind(kind)?;
    let s = lts::subspace_from_lines(&sp, &lines)?;
    let (c, cert) = catalog::compute(&sp, &s, seed)?;
    let mut items = vec![item(
        "closed under R",
        Status::from_bool(c.is_lts),
        if c.is_lts { format!("{} basis vectors", s.dim()) } else { cert },
    )];
    let mut candidates = Vec::new();
    if c.is_lts {
        for row in catalog::expected_rows(kind)? {
            let angle_ok = match (row.label.angle(), &c.angle) {
                (Some(t), Some(a)) => t == a,
                (Some(_), None) => false,
                _ => true,
            };
            if row.dim == Some(c.dim) && row.rank == Some(c.rank) && (row.complexity.is_none() || row.complexity == c.complexity) && angle_ok && (row.diagram.is_none() || row.diagram == c.diagram) {
                candidates.push(row.label.to_string());
            }
        }
        items.push(item("matches a table row", if candidates.is_empty() { Status::Skipped } else { Status::Pass }, candidates.join("; ")));
    }
    let data = json!({
        "dim": c.dim,
        "rank": if c.is_lts { Some(c.rank) } else { None },
        "complexity": c.complexity.map(|x| x.name()),
        "angle_tan_sq": c.angle.as_ref().map(|a| a.to_string()),
        "angle": c.angle.as_ref().and_then(tgs_core::space::angle_name),
        "diagram": c.diagram,
        "multiplicities": c.mults,
        "candidates": candidates,
    });
    Ok(Report::new("lts check", Some(kind.name()), seed, items, data))
}

pub fn curvature_eval(name: &str, x: &str, y: &str, z: &str, seed: u64) -> Result<Report, Error> {
    let sp = build(name)?;
    let (vx, vy, vz) = (parse_vector(&sp, x)?, parse_vector(&sp, y)?, parse_vector(&sp, z)?);
    let out = sp.curvature(&vx, &vy, &vz);
    let data = json!({
        "x": format_vector(&sp, &vx),
        "y": format_vector(&sp, &vy),
        "z": format_vector(&sp, &vz),
        "result": format_vector(&sp, &out),
        "norm_sq": sp.norm_sq(&out).to_string(),
    });
    Ok(Report::new("curvature eval", Some(sp.kind.name()), seed, Vec::new(), data))
}

pub fn curvature_identities(name: &str, seed: u64) -> Result<Report, Error> {
    let sp = build(name)?;
    let fams = identities::curvature_identities(&sp)?;
    let mut items = Vec::new();
    let mut details = Vec::new();
    for f in &fams {
        let factor = f.uniform_factor().map(|s| s.to_string());
        let ratios: Vec<String> = {
            let mut v: Vec<String> = f.members.iter().filter(|m| !m.exact).map(|m| m.norm_ratio.to_string()).collect();
            v.sort();
            v.dedup();
            v
        };
        items.push(item(
            format!("{} [exact]", f.name),
            Status::from_bool(f.exact()),
            match &factor {
                Some(c) if !f.exact() => format!("measured = ({c}) x quoted"),
                _ => format!("{} of {} members", f.members.iter().filter(|m| m.exact).count(), f.members.len()),
            },
        ));
        items.push(item(
            format!("{} [norm and subspace]", f.name),
            Status::from_bool(f.phase_invariant()),
            if ratios.is_empty() { "all members exact".to_string() } else { format!("subspace {}; |lhs|^2/|rhs|^2 in {{{}}}", f.subspace(), ratios.join(", ")) },
        ));
        details.push(json!({
            "family": f.name,
            "uniform_factor": factor,
            "members": f.members.iter().map(|m| json!({
                "name": m.name,
                "exact": m.exact,
                "subspace": m.subspace,
                "norm_ratio": m.norm_ratio.to_string(),
                "factor": m.factor.as_ref().map(|s| s.to_string()),
            })).collect::<Vec<_>>(),
        }));
    }
    Ok(Report::new("curvature identities", Some(sp.kind.name()), seed, items, json!({ "families": details })))
}

/// `t` with `t / pi` given, written with an explicit `pi`.
pub fn with_pi(t_over_pi: &Scalar) -> String {
    if let Some(q) = t_over_pi.as_rational() {
        return if q.to_string() == "1" { "pi".to_string() } else { format!("{q}*pi") };
    }
    let s = t_over_pi.to_string();
    match s.find("sqrt(") {
        Some(0) if !s.contains(' ') => format!("pi*{s}"),
        Some(p) if !s.contains(' ') => format!("{}pi*{}", &s[..p], &s[p..]),
        _ => format!("({s})*pi"),
    }
}

pub fn geodesic_length(space: &str, h: &str, seed: u64) -> Result<Report, Error> {
    let sp = build(space)?;
    let v = parse_a_expr(&sp, h)?;
    let t = catalog::geodesic_length(&sp, &v)?;
    let lattice = catalog::unit_lattice_basis(&sp)?;
    let data = json!({
        "H": format_vector(&sp, &v),
        "length": with_pi(&t),
        "length_over_pi": t.to_string(),
        "unit_lattice_basis_over_pi": lattice.iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
    });
    Ok(Report::new("geodesic length", Some(sp.kind.name()), seed, Vec::new(), data))
}

pub fn models_verify(seed: u64) -> Result<Report, Error> {
    let checks = cayley::verify_models(seed)?;
    let items = checks.iter().map(|c: &cayley::ModelCheck| item(c.name.clone(), Status::from_bool(c.passed), c.detail.clone())).collect();
    Ok(Report::new("models verify", None, seed, items, json!({})))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pi_formatting() {
        let s = |t: &str| with_pi(&Scalar::parse(t).unwrap());
        assert_eq!(s("4/3*sqrt(21)"), "4/3*pi*sqrt(21)");
        assert_eq!(s("sqrt(3)"), "pi*sqrt(3)");
        assert_eq!(s("1"), "pi");
        assert_eq!(s("2/3"), "2/3*pi");
        assert_eq!(s("1 + sqrt(2)"), "(1 + sqrt(2))*pi");
    }
}
