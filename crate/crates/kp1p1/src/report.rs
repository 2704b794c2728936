//! JSON artifacts and text summaries for each pipeline stage.
//!
//! Every artifact carries `schema_version` and the run configuration. Keys are emitted in
//! sorted order and contain no timings, so identical configurations give identical bytes.

use crate::canonical::{eigen_check, CanonicalData, CanonicalFrame};
use crate::error::{Error, Result};
use crate::exactseries::scalar::{frac, int, to_text};
use crate::exactseries::Scalar;
use crate::finitegen::{Convention, Genus2, HaeConstant, PolyFit};
use crate::frobenius::{Params, Sector};
use crate::genus0::ifunction::check_picard_fuchs;
use crate::genus0::relations::{connection_matrices, third_specialization};
use crate::genus0::{i_function, run_suite};
use crate::graphsum::{stable_graphs, PsiCache};
use crate::rmatrix::grading::{grading_fit, too_small_fit};
use crate::rmatrix::{example_r1, r1_from_qde, wick_r1, RMatrix};
use serde_json::{json, Value};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub params: Params,
    /// Total q-degree.
    pub trunc: u32,
    /// z-order of the I-function and the R-matrix.
    pub depth: u32,
    pub genus: u32,
    /// Include the genus-zero term in the anomaly equation's split sum.
    pub genus0_split: bool,
    pub constant: HaeConstant,
}

impl RunConfig {
    pub fn new(lambda: Scalar, mu: Scalar, trunc: u32, depth: u32, genus: u32) -> Result<Self> {
        let params = Params::new(lambda, mu)?;
        let cfg = RunConfig { params, trunc, depth, genus, genus0_split: false, constant: HaeConstant::Propagator };
        if cfg.trunc == 0 {
            return Err(Error::InvalidConfig("D must be positive".into()));
        }
        Ok(cfg)
    }

    /// Genus-dependent requirements of `fg`, `hae` and `all`.
    pub fn check_genus(&self, need_full_trunc: bool) -> Result<()> {
        if self.genus != 2 {
            return Err(Error::InvalidConfig(format!(
                "g = {} is not available: the finite-generation and anomaly stages run at g = 2 only",
                self.genus
            )));
        }
        if self.depth + 3 < 3 * self.genus {
            return Err(Error::InvalidConfig(format!("K = {} is below 3g-3 = {}", self.depth, 3 * self.genus - 3)));
        }
        if need_full_trunc && self.trunc < 3 * self.genus {
            return Err(Error::InvalidConfig(format!("D = {} is below 3g = {}", self.trunc, 3 * self.genus)));
        }
        Ok(())
    }

    fn convention(&self) -> Convention {
        if self.genus0_split { Convention::WithGenusZero } else { Convention::StableSplits }
    }

    fn to_json(&self) -> Value {
        json!({
            "lambda": to_text(&self.params.lambda),
            "mu": to_text(&self.params.mu),
            "D": self.trunc,
            "K": self.depth,
            "g": self.genus,
            "hae_genus0_split": self.genus0_split,
            "hae_constant": self.constant.label(),
        })
    }
}

/// One stage's output.
#[derive(Clone, Debug)]
pub struct Artifact {
    pub command: &'static str,
    pub ok: bool,
    pub summary: Vec<String>,
    pub body: Value,
}

impl Artifact {
    fn new(command: &'static str, cfg: &RunConfig, ok: bool, summary: Vec<String>, body: Value) -> Self {
        let body = json!({
            "schema_version": SCHEMA_VERSION,
            "command": command,
            "config": cfg.to_json(),
            "ok": ok,
            "result": body,
        });
        Artifact { command, ok, summary, body }
    }

    /// Pretty JSON with a trailing newline.
    pub fn render(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.body).expect("JSON values always serialize");
        s.push('\n');
        s
    }
}

fn mark(ok: bool) -> &'static str {
    if ok { "ok" } else { "FAILED" }
}

pub fn iseries(cfg: &RunConfig) -> Result<Artifact> {
    let depth = cfg.depth.max(2) as usize;
    let fam = i_function(&cfg.params, cfg.trunc, depth);
    let pf = check_picard_fuchs(&fam);
    let ok = pf.is_ok();
    let summary = vec![format!(
        "I-function to q-degree {} and z-depth {depth}: Picard-Fuchs residuals {}",
        cfg.trunc,
        if ok { "vanish".to_string() } else { format!("nonzero ({})", pf.as_ref().unwrap_err()) }
    )];
    let body = json!({
        "I_k": fam.ik.iter().map(|c| c.to_json()).collect::<Vec<_>>(),
        "picard_fuchs_residuals_vanish": ok,
    });
    Ok(Artifact::new("iseries", cfg, ok, summary, body))
}

pub fn relations(cfg: &RunConfig) -> Result<Artifact> {
    let p = &cfg.params;
    let rep = run_suite(p, &third_specialization(p), cfg.trunc)?;
    let conn = connection_matrices(p, cfg.trunc)?;
    let frames = CanonicalFrame::all(p, cfg.trunc)?;
    let eig = eigen_check(&conn, &frames);
    let eig_ok = eig.iter().all(|(_, _, r)| r.is_zero());
    let ok = rep.all_asserted_hold() && eig_ok;
    let mut summary: Vec<String> = rep
        .results
        .iter()
        .map(|r| {
            let tag = if r.asserted { mark(r.holds) } else if r.holds { "matches" } else { "differs (compared only)" };
            match &r.first_offending {
                Some(w) => format!("{:<58} {tag} at {w}", r.name),
                None => format!("{:<58} {tag}", r.name),
            }
        })
        .collect();
    summary.push(format!("{:<58} {}", "det(A1 - M) = det(A2 - L) = 0 in all sectors", mark(eig_ok)));
    let body = json!({
        "trunc": cfg.trunc,
        "relations": rep.results,
        "eigenvalue_determinants_vanish": eig_ok,
        "A1": conn.a1.to_json(),
        "A2": conn.a2.to_json(),
    });
    Ok(Artifact::new("relations", cfg, ok, summary, body))
}

/// `-(lambda^2 + lambda mu + mu^2) / (24 lambda mu (lambda + mu))`.
pub fn example_origin_value(p: &Params) -> Scalar {
    let (l, m) = (&p.lambda, &p.mu);
    -(l * l + l * m + m * m) / (int(24) * l * m * (l + m))
}

pub fn rmatrix(cfg: &RunConfig) -> Result<Artifact> {
    let p = &cfg.params;
    let k = cfg.depth.max(1);
    let data = CanonicalData::new(p, cfg.trunc)?;
    let r = RMatrix::compute(&data, k)?;
    let wick = wick_r1(p, k)?;
    let qde = r.check_qde(&data);
    let example = example_r1(p);
    let closed_form = wick[1] == example;
    let f00 = data.frame(Sector::new(0, 0));
    let as_series = example.eval(f00)? == r.sector(Sector::new(0, 0)).r1[1];
    let origin = example.eval_at_origin(f00);
    let origin_ok = origin == example_origin_value(p) && wick[1].eval_at_origin(f00) == origin;
    let route_k = (k as usize).min(2);
    let mut routes = Vec::new();
    for s in Sector::ALL {
        let w = &r.sector(s).r1[..=route_k];
        let consts: Vec<Scalar> = w.iter().map(|x| x.constant_term().clone()).collect();
        let agree = r1_from_qde(&data, s, &consts).map(|q| q == w).unwrap_or(false);
        routes.push((s, agree));
    }
    let routes_ok = routes.iter().all(|x| x.1);
    let ok = qde.is_none() && closed_form && as_series && origin_ok && routes_ok;
    let mut summary = vec![
        format!("QDE residual through z^{k} in all sectors: {}", if qde.is_none() { "zero".into() } else { format!("{qde:?}") }),
        format!("(R_1)_1 from Wick equals the five-diagram closed form: {}", mark(closed_form && as_series)),
        format!("(R_1)_1 at q = 0 in sector (0,0): {} ({})", to_text(&origin), mark(origin_ok)),
    ];
    for (s, a) in &routes {
        summary.push(format!("QDE route reproduces Wick for k <= {route_k} in sector {}: {}", s.label(), mark(*a)));
    }
    let sectors: Vec<Value> = Sector::ALL
        .iter()
        .map(|&s| {
            let sr = r.sector(s);
            json!({
                "sector": s.label(),
                "R_1": sr.r1.iter().map(|x| x.to_json()).collect::<Vec<_>>(),
                "R_H1": sr.h1.iter().map(|x| x.to_json()).collect::<Vec<_>>(),
                "R_H2": sr.h2.iter().map(|x| x.to_json()).collect::<Vec<_>>(),
                "R_H1H2_by_X_power": sr.h12.iter().map(|x| x.to_json()).collect::<Vec<_>>(),
            })
        })
        .collect();
    let body = json!({
        "generators": data.gens.to_json(),
        "wick_R1": wick.iter().map(|w| w.to_json()).collect::<Vec<_>>(),
        "sectors": sectors,
        "qde_residual_zero": qde.is_none(),
        "closed_form_match": closed_form && as_series,
        "origin_value": to_text(&origin),
        "route_equality": routes.iter().map(|(s, a)| json!({"sector": s.label(), "agree": a})).collect::<Vec<_>>(),
    });
    Ok(Artifact::new("rmatrix", cfg, ok, summary, body))
}

pub fn fit(cfg: &RunConfig) -> Result<Artifact> {
    let p = &cfg.params;
    let kmax = cfg.depth.clamp(1, 2);
    let mut lines = Vec::new();
    for k in 1..=kmax {
        for s in Sector::ALL {
            lines.extend(grading_fit(p, s, k)?);
        }
    }
    let control = too_small_fit(p, Sector::new(0, 0))?;
    let ok = lines.iter().all(|l| l.certified) && control.outcome == "inconsistent";
    let mut summary: Vec<String> = lines
        .iter()
        .map(|l| {
            format!(
                "{:<30} sector {} in G_({},{}) at D={}: {} ({} eq, {} unknowns, rank {})",
                l.what, l.sector, l.m, l.n, l.trunc, l.outcome, l.equations, l.unknowns, l.rank
            )
        })
        .collect();
    summary.push(format!("control {}: {}", control.what, control.outcome));
    let body = json!({ "fits": lines, "control": control });
    Ok(Artifact::new("fit", cfg, ok, summary, body))
}

fn polyfit_json(f: &PolyFit) -> Value {
    json!({
        "outcome": f.label(),
        "certificate": f.certificate(),
        "representation": f.rep().map(|r| r.to_json()),
    })
}

pub fn fg_from(cfg: &RunConfig, g2: &Genus2) -> Artifact {
    let rep = g2.fit.rep();
    let x_degree = rep.and_then(|r| r.x_degree());
    let fitted_derivative = g2.dd_x_fitted().is_some_and(|d| d == g2.dd_x_f2());
    let ok = g2.fit.certificate().overdetermined()
        && x_degree.is_some_and(|d| d <= 3)
        && fitted_derivative
        && matches!(g2.fit_without_x, PolyFit::Inconsistent(_))
        && matches!(g2.fit_control, PolyFit::Inconsistent(_));
    let c = g2.fit.certificate();
    let f0 = g2.inputs.f2.eval(&g2.inputs.x);
    let summary = vec![
        format!("F_2(0) = {}", to_text(f0.constant_term())),
        format!(
            "F_2 over X^j C_i at D={}: {} ({} eq, {} unknowns, rank {}), X-degree {}",
            g2.trunc,
            g2.fit.label(),
            c.equations,
            c.unknowns,
            c.rank,
            x_degree.map_or("-".into(), |d| d.to_string())
        ),
        format!("d/dX through the fit matches the graph sum: {}", mark(fitted_derivative)),
        format!("control, X withheld: {}", g2.fit_without_x.label()),
        format!("control, unrelated series: {}", g2.fit_control.label()),
    ];
    let body = json!({
        "stable_graphs_g2": stable_graphs(2, 0).len(),
        "F2_by_X_power": g2.inputs.f2.to_json(),
        "F2_series": f0.to_json(),
        "fit": polyfit_json(&g2.fit),
        "fit_without_X": polyfit_json(&g2.fit_without_x),
        "fit_unrelated_series": polyfit_json(&g2.fit_control),
        "ddX_through_fit_matches": fitted_derivative,
    });
    Artifact::new("fg", cfg, ok, summary, body)
}

pub fn hae_from(cfg: &RunConfig, g2: &Genus2) -> Artifact {
    let table = g2.hae();
    let chosen = g2.hae_row(cfg.constant, cfg.convention());
    let closing: Vec<_> = table.iter().filter(|r| r.closes).collect();
    let ok = chosen.closes;
    let mut summary: Vec<String> = table
        .iter()
        .map(|r| {
            let tail = match &r.first_nonzero {
                None => format!("residual 0 to q-degree {}", g2.trunc),
                Some((a, b, v)) => format!("residual {v} at q1^{a} q2^{b}"),
            };
            format!("constant {:<4} ({:<10}) convention {:<21} {tail}", r.constant, r.constant_label, r.convention.name())
        })
        .collect();
    summary.push(format!(
        "selected: constant {}, convention {} -> {}",
        cfg.constant.label(),
        cfg.convention().name(),
        if ok { "closes" } else { "does not close" }
    ));
    let body = json!({
        "genus": 2,
        "table": table,
        "closing": closing,
        "selected": chosen,
        "F2_by_X_power": g2.inputs.f2.to_json(),
        "one_point_g1_by_X_power": g2.inputs.h_g1.to_json(),
        "two_point_g1_by_X_power": g2.inputs.hh_g1.to_json(),
        "one_point_g0": g2.inputs.h_g0.to_json(),
        "formal_identity_unit_constant": g2.inputs.formal_residual(&int(1)).is_zero(),
        "formal_identity_printed_constant": g2.inputs.formal_residual(&frac(-1, 2)).is_zero(),
    });
    Artifact::new("hae", cfg, ok, summary, body)
}

pub fn genus2(cfg: &RunConfig, psi: &PsiCache) -> Result<Genus2> {
    Genus2::compute_with_depth(&cfg.params, cfg.trunc, cfg.depth, psi)
}

pub fn fg(cfg: &RunConfig, psi: &PsiCache) -> Result<Artifact> {
    cfg.check_genus(true)?;
    Ok(fg_from(cfg, &genus2(cfg, psi)?))
}

pub fn hae(cfg: &RunConfig, psi: &PsiCache) -> Result<Artifact> {
    cfg.check_genus(false)?;
    Ok(hae_from(cfg, &genus2(cfg, psi)?))
}

/// Every stage, sharing the genus-2 computation.
pub fn all(cfg: &RunConfig, psi: &PsiCache) -> Result<Vec<Artifact>> {
    cfg.check_genus(true)?;
    let mut out = vec![iseries(cfg)?, relations(cfg)?, rmatrix(cfg)?, fit(cfg)?];
    let g2 = genus2(cfg, psi)?;
    out.push(fg_from(cfg, &g2));
    out.push(hae_from(cfg, &g2));
    Ok(out)
}
