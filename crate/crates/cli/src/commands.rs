use std::fmt::Write as _;

use hochrr::cech::{cohomology_dims, euler_characteristic, subsets, MixedClass, Variety};
use hochrr::charclass::{
    verify_at_jacobi, verify_at_symmetry, verify_l_adjoint, verify_td_annihilation, Geometry,
    Report, Status,
};
use hochrr::expr::{parse_sheaf, parse_variety};
use hochrr::hochschild::{
    cohomology_dim, comparison_phi, contraction, hkr_chain_on_homology, hkr_cochain,
    monomials_up_to, polyvector_basis, polyvector_dim, KoszulElement,
};
use hochrr::polyalg::{canonical_pairing, ExteriorElement, ExteriorKind, LaurentPoly};
use hochrr::ratseries::{l_coefficients, t_coefficients};
use hochrr::scalar::{factorial, one, to_text};
use serde_json::{json, Value};

use crate::config::JobConfig;

/// Result of one command: whether the mathematics checked out, the JSON
/// payload and a plain-text rendering.
pub struct Outcome {
    pub ok: bool,
    pub result: Value,
    pub text: String,
}

/// Errors that are the caller's fault (exit 2), as opposed to failed identities.
#[derive(Debug)]
pub struct UsageError(pub String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

type Run = Result<Outcome, UsageError>;

pub fn dispatch(cfg: &JobConfig) -> Run {
    match cfg.command() {
        "hh" => hh(cfg),
        "hkr-check" => hkr_check(cfg),
        "cohomology" => cohomology(cfg),
        "chern" => chern(cfg),
        "todd" => todd(cfg),
        "atiyah-check" => reports(cfg, |g| {
            Ok(vec![verify_at_symmetry(g)?, verify_at_jacobi(g)?])
        }),
        "todd-annihilation" => reports(cfg, |g| Ok(vec![verify_td_annihilation(g)?])),
        "l-adjoint" => reports(cfg, |g| {
            Ok(vec![
                verify_l_adjoint(g, true)?,
                verify_l_adjoint(g, false)?,
            ])
        }),
        "rr-verify" => rr_verify(cfg),
        "coefficients" => coefficients(cfg),
        other => Err(UsageError(format!("unknown command '{other}'"))),
    }
}

fn variety(cfg: &JobConfig) -> Result<Variety, UsageError> {
    let v = cfg
        .variety
        .as_deref()
        .ok_or_else(|| UsageError("--variety is required".into()))?;
    Ok(parse_variety(v)?)
}

fn sheaves(cfg: &JobConfig, v: &Variety) -> Result<Vec<hochrr::cech::Sheaf>, UsageError> {
    if cfg.sheaf.is_empty() {
        return Err(UsageError("--sheaf is required".into()));
    }
    cfg.sheaf
        .iter()
        .map(|s| Ok(parse_sheaf(s)?.eval(v)?))
        .collect()
}

fn boxes(n: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    let mut out: Vec<Vec<i64>> = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|p| (lo..=hi).map(move |x| [p.clone(), vec![x]].concat()))
            .collect();
    }
    out
}

fn hh(cfg: &JobConfig) -> Run {
    let n = cfg.nvars.unwrap_or(2);
    let len = cfg.max_length.unwrap_or(n).min(n + 1);
    let cap = cfg.max_degree.unwrap_or(4);
    let wmax = cfg.weight_max.unwrap_or(1);
    let mut entries = Vec::new();
    let mut text = format!(
        "HH^i of k[x_1..x_{n}], inputs of degree <= {cap}\n  i  weight          HH  polyvectors\n"
    );
    let mut ok = true;
    for i in 0..=len {
        for w in boxes(n, -1, wmax) {
            let h = cohomology_dim(n, i, cap, &w);
            let p = polyvector_dim(n, i, &w);
            ok &= h == p;
            if h > 0 || p > 0 {
                let _ = writeln!(text, "{i:>3}  {:<14}{h:>4}  {p:>11}", format!("{w:?}"));
            }
            entries.push(json!({ "degree": i, "weight": w, "hh": h, "polyvector": p }));
        }
    }
    Ok(Outcome {
        ok,
        result: json!({ "nvars": n, "max_degree": cap, "entries": entries }),
        text,
    })
}

fn hkr_check(cfg: &JobConfig) -> Run {
    let nmax = cfg.nvars.unwrap_or(2);
    let len = cfg.max_length.unwrap_or(3);
    let cap = cfg.max_degree.unwrap_or(4);
    let mut checks = Vec::new();
    let mut text = String::new();
    let mut record = |name: &str, n: usize, i: usize, cases: usize, passed: bool| {
        let _ = writeln!(
            text,
            "{name:<22} n={n} i={i} cases={cases:<4} {}",
            if passed { "ok" } else { "FAILED" }
        );
        checks.push(
            json!({ "name": name, "nvars": n, "degree": i, "cases": cases, "passed": passed }),
        );
        passed
    };
    let mut ok = true;
    for n in 1..=nmax {
        for i in 0..=n.min(len) {
            let basis = polyvector_basis(n, i, 1);
            let mut cocycles = true;
            for p in &basis {
                cocycles &= hkr_cochain(p, cap)?.is_cocycle();
            }
            ok &= record("hkr-cocycle", n, i, basis.len(), cocycles);
            let mut comparison = true;
            let mut cases = 0;
            for p in &basis {
                let f = hkr_cochain(p, cap)?;
                for s in subsets(n, i) {
                    let k = KoszulElement::generator(vec![0; n], vec![0; n], s.clone(), one())?;
                    let lhs = contraction(&f, &comparison_phi(&k).collapse())?;
                    let v = ExteriorElement::basis(ExteriorKind::Form, n, &s, LaurentPoly::one(n))?;
                    comparison &= lhs == canonical_pairing(p, &v)?.scale(&factorial(i));
                    cases += 1;
                }
            }
            ok &= record("hkr-comparison", n, i, cases, comparison);
            if i < len {
                let degrees = monomials_up_to(n, 0, cap);
                let mut kills = true;
                for m in &degrees {
                    kills &= hkr_chain_on_homology(n, i, m)?.0;
                }
                ok &= record("hkr-kills-boundaries", n, i, degrees.len(), kills);
            }
        }
    }
    Ok(Outcome {
        ok,
        result: json!({ "max_degree": cap, "checks": checks }),
        text,
    })
}

fn cohomology(cfg: &JobConfig) -> Run {
    let v = variety(cfg)?;
    let mut items = Vec::new();
    let mut text = String::new();
    for (expr, e) in cfg.sheaf.iter().zip(sheaves(cfg, &v)?) {
        let dims = cohomology_dims(&e)?;
        let chi = euler_characteristic(&e)?;
        let _ = writeln!(text, "h^*({v}, {expr}) = {dims:?}, chi = {chi}");
        items.push(json!({ "sheaf": expr, "dims": dims, "euler_characteristic": chi }));
    }
    Ok(Outcome {
        ok: true,
        result: json!({ "variety": v.to_string(), "sheaves": items }),
        text,
    })
}

fn class_json(g: &Geometry, m: &MixedClass) -> Result<(Value, String), UsageError> {
    let mut out = Vec::new();
    let mut text = String::new();
    for (p, a, x) in g.intersection_numbers(m)? {
        let _ = writeln!(text, "  p={p}  h^{a:?}  {}", to_text(&x));
        out.push(json!({ "p": p, "monomial": a, "value": to_text(&x) }));
    }
    Ok((Value::Array(out), text))
}

fn chern(cfg: &JobConfig) -> Run {
    let v = variety(cfg)?;
    let g = Geometry::new(&v)?;
    let mut items = Vec::new();
    let mut text = format!("ch on {v}, paired with hyperplane monomials of complementary degree\n");
    for (expr, e) in cfg.sheaf.iter().zip(sheaves(cfg, &v)?) {
        let (numbers, t) = class_json(&g, &g.chern_character(&e)?)?;
        let _ = write!(text, "{expr} (rank {})\n{t}", e.rank());
        items.push(json!({ "sheaf": expr, "rank": e.rank(), "intersection_numbers": numbers }));
    }
    Ok(Outcome {
        ok: true,
        result: json!({ "variety": v.to_string(), "sheaves": items }),
        text,
    })
}

fn todd(cfg: &JobConfig) -> Run {
    let v = variety(cfg)?;
    let g = Geometry::new(&v)?;
    let td = g.todd_class()?;
    let (numbers, t) = class_json(&g, &td)?;
    let integral = to_text(&g.integrate(&td)?);
    let text = format!("td({v}), paired with hyperplane monomials of complementary degree\n{t}  integral {integral}\n");
    Ok(Outcome {
        ok: true,
        result: json!({ "variety": v.to_string(), "intersection_numbers": numbers, "integral": integral }),
        text,
    })
}

fn reports(cfg: &JobConfig, f: impl Fn(&Geometry) -> hochrr::Result<Vec<Report>>) -> Run {
    let v = variety(cfg)?;
    let g = Geometry::new(&v)?;
    let rs = f(&g)?;
    let mut text = String::new();
    for r in &rs {
        let _ = writeln!(
            text,
            "{} on {}: {}",
            r.identity,
            r.variety,
            if r.passed() { "passed" } else { "FAILED" }
        );
        for c in &r.components {
            let status = match c.status {
                Status::Success => "success",
                Status::Failure => "failure",
                Status::Vacuous => "vacuous",
            };
            let _ = writeln!(
                text,
                "  p={} degree={} dim={:<4} {status}",
                c.p, c.degree, c.dim_target
            );
        }
    }
    Ok(Outcome {
        ok: rs.iter().all(Report::passed),
        result: json!({ "reports": rs }),
        text,
    })
}

fn rr_verify(cfg: &JobConfig) -> Run {
    let v = variety(cfg)?;
    let g = Geometry::new(&v)?;
    let mut rs = Vec::new();
    let mut text = String::new();
    for (expr, e) in cfg.sheaf.iter().zip(sheaves(cfg, &v)?) {
        let r = g.hrr_verify(&e)?;
        let _ = writeln!(
            text,
            "{expr} on {v}: chi_cohomology = {}, chi_rr = {}, {}",
            to_text(&r.chi_cohomology),
            to_text(&r.chi_rr),
            if r.equal { "equal" } else { "DIFFERENT" }
        );
        let mut value = serde_json::to_value(&r)?;
        value["sheaf"] = json!(expr);
        rs.push((r.equal, value));
    }
    let ok = rs.iter().all(|(e, _)| *e);
    let reports: Vec<Value> = rs.into_iter().map(|(_, v)| v).collect();
    Ok(Outcome {
        ok,
        result: json!({ "reports": reports }),
        text,
    })
}

fn coefficients(cfg: &JobConfig) -> Run {
    let which = cfg.which.as_deref().unwrap_or("l");
    let order = cfg.order.unwrap_or(8);
    let (first, cs) = match which {
        "l" => (0, l_coefficients(order)),
        _ => (1, t_coefficients(order)),
    };
    let cs: Vec<String> = cs.iter().map(to_text).collect();
    let text = format!("{which}_{first}..{which}_{order} = [{}]\n", cs.join(", "));
    Ok(Outcome {
        ok: true,
        result: json!({ "which": which, "first_index": first, "coefficients": cs }),
        text,
    })
}
