//! The computations behind each subcommand, with their text and JSON
//! renderings.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use superspace_core::exact::Rational;
use superspace_core::homology::{betti_table, betti_window, is_gorenstein, BettiTable, GorensteinReport};
use superspace_core::multiplets::{component_fields, hdim_koszul, multiplet, universal_checks, MultipletKind, MultipletTable};
use superspace_core::poly::{buchberger, krull_dim, HilbertSeries, MonomialOrder};
use superspace_core::prolong::{derivation_complex_h0, tanaka_prolongation, Status};
use superspace_core::susy::{check_conformal_type, derivations_deg0, SupertranslationAlgebra};
use superspace_core::twist::{determinantal_placement, named_twist, twist};

use crate::cache::{cache_key, Cache};
use crate::error::CliError;
use crate::spec::{AlgebraBody, AlgebraSpec};

pub const SCHEMA: u32 = 1;

/// Output of one command.
#[derive(Clone, Debug)]
pub struct Report {
    pub json: Value,
    pub text: String,
    /// False when a check inside the command failed.
    pub ok: bool,
}

pub struct Context {
    pub cache: Option<Cache>,
    pub budget: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
struct CachedBetti {
    triples: Vec<(usize, i64, u64)>,
    complete: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
struct VarietyData {
    groebner_basis: Vec<String>,
    hilbert: HilbertSeries,
    dim_y: i64,
    gorenstein: GorensteinReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProlongDims {
    pub dims: BTreeMap<i64, usize>,
    pub status: Status,
}

fn quadric_strings(alg: &SupertranslationAlgebra) -> Vec<String> {
    let ring = alg.ring();
    alg.quadrics().iter().map(|q| q.render(&ring)).collect()
}

/// Key parts identifying the ring, the quadrics and the term order.
fn algebra_key(alg: &SupertranslationAlgebra) -> Vec<(&'static str, String)> {
    let ring = alg.ring();
    vec![
        ("ring", format!("{:?} {:?}", ring.names, ring.weights)),
        ("generators", quadric_strings(alg).join(";")),
        ("order", MonomialOrder::for_ring(&ring).name()),
    ]
}

impl Context {
    fn cached<T, F>(&mut self, alg: &SupertranslationAlgebra, analysis: &str, compute: F) -> Result<T, CliError>
    where
        T: Serialize + for<'de> Deserialize<'de>,
        F: FnOnce() -> Result<T, CliError>,
    {
        let Some(cache) = self.cache.as_mut() else {
            return compute();
        };
        let mut parts = algebra_key(alg);
        parts.push(("analysis", analysis.to_string()));
        let refs: Vec<(&str, &str)> = parts.iter().map(|(a, b)| (*a, b.as_str())).collect();
        cache.get_or_compute(&cache_key(&refs), compute)
    }

    pub fn betti(&mut self, alg: &SupertranslationAlgebra, kind: &MultipletKind, window: Option<i64>) -> Result<BettiTable, CliError> {
        let budget = self.budget;
        let label = match window {
            Some(w) => format!("betti-v1 {kind} window {w}"),
            None => format!("betti-v1 {kind}"),
        };
        let c = self.cached(alg, &label, || {
            let m = multiplet(alg, kind, budget)?;
            let t = match window {
                Some(w) => betti_window(&m.module, w, budget)?,
                None => betti_table(&m.module, budget)?,
            };
            Ok(CachedBetti { triples: t.triples(), complete: t.complete })
        })?;
        Ok(BettiTable::from_entries(&c.triples, c.complete))
    }

    pub fn dim_y(&mut self, alg: &SupertranslationAlgebra) -> Result<i64, CliError> {
        let budget = self.budget;
        self.cached(alg, "krull-dim-v1", || {
            let ideal = alg.ideal();
            if ideal.is_empty() {
                return Ok(alg.k as i64);
            }
            Ok(krull_dim(&buchberger(&alg.ring(), &ideal, budget)?))
        })
    }

    pub fn hdim(&mut self, alg: &SupertranslationAlgebra) -> Result<i64, CliError> {
        let dim_y = self.dim_y(alg)?;
        Ok(alg.hdim_from_dim_y(dim_y))
    }

    fn variety_data(&mut self, alg: &SupertranslationAlgebra) -> Result<VarietyData, CliError> {
        let budget = self.budget;
        self.cached(alg, "variety-v1", || {
            let ring = alg.ring();
            let ideal = alg.ideal();
            let gb = buchberger(&ring, &ideal, budget)?;
            Ok(VarietyData {
                groebner_basis: gb.polynomials().iter().map(|p| p.render(&ring)).collect(),
                hilbert: HilbertSeries::of_quotient(&gb),
                dim_y: krull_dim(&gb),
                gorenstein: is_gorenstein(&ring, &ideal, budget)?,
            })
        })
    }

    pub fn gorenstein(&mut self, alg: &SupertranslationAlgebra) -> Result<GorensteinReport, CliError> {
        Ok(self.variety_data(alg)?.gorenstein)
    }

    pub fn prolongation(&mut self, alg: &SupertranslationAlgebra, cap: usize) -> Result<ProlongDims, CliError> {
        self.cached(alg, &format!("prolong-v1 cap {cap}"), || {
            let g0 = derivations_deg0(alg)?;
            let p = tanaka_prolongation(alg, &g0, cap)?;
            Ok(ProlongDims { dims: p.dims(), status: p.status })
        })
    }
}

fn algebra_json(alg: &SupertranslationAlgebra) -> Value {
    json!({ "name": alg.name, "odd_dim": alg.k, "even_dim": alg.d })
}

fn header(command: &str, alg: &SupertranslationAlgebra) -> serde_json::Map<String, Value> {
    let mut m = serde_json::Map::new();
    m.insert("schema".into(), json!(SCHEMA));
    m.insert("command".into(), json!(command));
    m.insert("algebra".into(), algebra_json(alg));
    m
}

fn dims_label(alg: &SupertranslationAlgebra) -> String {
    format!("{} ({}|{})", alg.name, alg.k, alg.d)
}

pub fn betti_json(t: &BettiTable) -> Value {
    json!(t.triples().iter().map(|&(i, j, b)| json!([i, j, b])).collect::<Vec<_>>())
}

pub fn cells_json(t: &MultipletTable) -> Value {
    json!(t.cells.iter().map(|(&(r, c), f)| json!([r, c, f.dimension])).collect::<Vec<_>>())
}

/// Betti table with rows j - i and columns i.
pub fn render_betti(t: &BettiTable) -> String {
    let Some(top) = t.projective_dimension() else {
        return "(zero module)\n".into();
    };
    let rows: Vec<i64> = {
        let mut r: Vec<i64> = t.entries.keys().map(|&(i, j)| j - i as i64).collect();
        r.sort();
        r.dedup();
        r
    };
    let (rmin, rmax) = (rows[0], rows[rows.len() - 1]);
    let width = t.entries.values().map(|b| b.to_string().len()).chain([t.total().to_string().len()]).max().unwrap_or(1);
    let mut out = format!("{:>7}", "");
    for i in 0..=top {
        out.push_str(&format!(" {:>width$}", i));
    }
    out.push_str(&format!("\n{:>7}", "total:"));
    for i in 0..=top {
        let s: u64 = t.entries.iter().filter(|(k, _)| k.0 == i).map(|(_, b)| b).sum();
        out.push_str(&format!(" {:>width$}", s));
    }
    out.push('\n');
    for r in rmin..=rmax {
        out.push_str(&format!("{:>7}", format!("{r}:")));
        for i in 0..=top {
            match t.get(i, r + i as i64) {
                0 => out.push_str(&format!(" {:>width$}", ".")),
                b => out.push_str(&format!(" {:>width$}", b)),
            }
        }
        out.push('\n');
    }
    if !t.complete {
        out.push_str("(truncated)\n");
    }
    out
}

pub fn info(ctx: &mut Context, alg: &SupertranslationAlgebra) -> Result<Report, CliError> {
    let _ = ctx;
    let g0 = derivations_deg0(alg)?;
    let conf = check_conformal_type(alg)?;
    let ideal: Vec<String> = {
        let ring = alg.ring();
        alg.ideal().iter().map(|q| q.render(&ring)).collect()
    };
    let form = conf
        .invariant_form
        .as_ref()
        .map(|h| (0..h.nrows()).map(|i| h.row(i).iter().map(|x| x.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>());
    let mut j = header("info", alg);
    j.insert("g0_dim".into(), json!(g0.dim()));
    j.insert("rho2_image_dim".into(), json!(g0.rho2_image_dim()));
    j.insert("ker_rho2_dim".into(), json!(g0.ker_rho2_dim()));
    j.insert(
        "conformal".into(),
        json!({
            "gamma_rank": conf.gamma_rank,
            "gamma_surjective": conf.gamma_surjective,
            "image_dim": conf.image_dim,
            "expected_image_dim": conf.expected_image_dim,
            "conformal_type": conf.conformal_type,
            "invariant_form": form,
        }),
    );
    j.insert("ideal".into(), json!(ideal));
    let mut text = format!("algebra: {}\n", dims_label(alg));
    text.push_str(&format!("g0: dim {}\n", g0.dim()));
    text.push_str(&format!("rho2 image: dim {} (kernel {})\n", g0.rho2_image_dim(), g0.ker_rho2_dim()));
    text.push_str(&format!(
        "conformal type: {} (gamma rank {}{}, image {} of {})\n",
        if conf.conformal_type { "yes" } else { "no" },
        conf.gamma_rank,
        if conf.gamma_surjective { ", surjective" } else { "" },
        conf.image_dim,
        conf.expected_image_dim
    ));
    text.push_str(&format!("ideal ({} generators):\n", ideal.len()));
    for q in &ideal {
        text.push_str(&format!("  {q}\n"));
    }
    Ok(Report { json: Value::Object(j), text, ok: true })
}

pub fn variety(ctx: &mut Context, alg: &SupertranslationAlgebra) -> Result<Report, CliError> {
    let v = ctx.variety_data(alg)?;
    let hdim = alg.hdim_from_dim_y(v.dim_y);
    let mut j = header("variety", alg);
    j.insert("groebner_basis".into(), json!(v.groebner_basis));
    j.insert(
        "hilbert_series".into(),
        json!({ "min_degree": v.hilbert.min_degree, "numerator": v.hilbert.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>(), "weights": v.hilbert.weights }),
    );
    j.insert("dim_y".into(), json!(v.dim_y));
    j.insert("hdim".into(), json!(hdim));
    let g = v.gorenstein;
    j.insert(
        "gorenstein".into(),
        json!({ "cohen_macaulay": g.cohen_macaulay, "gorenstein": g.gorenstein, "projective_dimension": g.projective_dimension, "codimension": g.codimension }),
    );
    let mut text = format!("algebra: {}\n", dims_label(alg));
    text.push_str(&format!("Groebner basis ({} elements):\n", v.groebner_basis.len()));
    for p in &v.groebner_basis {
        text.push_str(&format!("  {p}\n"));
    }
    let num: Vec<String> = v.hilbert.coeffs.iter().map(|c| c.to_string()).collect();
    text.push_str(&format!("Hilbert series: t^{} ({}) / (1-t)^{}\n", v.hilbert.min_degree, num.join(" "), v.hilbert.weights.len()));
    text.push_str(&format!("dim Y: {}\nhdim: {hdim}\n", v.dim_y));
    text.push_str(&format!(
        "Cohen-Macaulay: {}\nGorenstein: {}\nprojective dimension {}, codimension {}\n",
        g.cohen_macaulay, g.gorenstein, g.projective_dimension, g.codimension
    ));
    Ok(Report { json: Value::Object(j), text, ok: true })
}

/// Cells of a possibly truncated Betti table.
fn table_of(t: &BettiTable) -> Result<MultipletTable, CliError> {
    let mut full = t.clone();
    full.complete = true;
    Ok(component_fields(&full)?)
}

pub fn multiplet_report(
    ctx: &mut Context,
    alg: &SupertranslationAlgebra,
    kind: &MultipletKind,
    window: Option<i64>,
) -> Result<Report, CliError> {
    let betti = ctx.betti(alg, kind, window)?;
    let table = table_of(&betti)?;
    let mut j = header("multiplet", alg);
    j.insert("kind".into(), json!(kind.to_string()));
    j.insert("window".into(), json!(window));
    j.insert("complete".into(), json!(betti.complete));
    j.insert("betti".into(), betti_json(&betti));
    j.insert("table".into(), cells_json(&table));
    let mut text = format!("algebra: {}\nmultiplet: {kind}\n\nBetti numbers (rows j-i, columns i):\n", dims_label(alg));
    text.push_str(&render_betti(&betti));
    text.push_str("\ncomponent fields (rows j-i, columns 2i-j):\n");
    text.push_str(&table.render());
    let mut ok = true;
    if *kind == MultipletKind::Conf && betti.complete {
        let g0 = derivations_deg0(alg)?;
        let report = universal_checks(alg, &table, &g0);
        ok = report.passed();
        j.insert(
            "universal_checks".into(),
            json!(report
                .checks
                .iter()
                .map(|c| json!({ "name": c.name, "cell": [c.cell.0, c.cell.1], "table": c.table, "expected": c.expected, "ok": c.ok }))
                .collect::<Vec<_>>()),
        );
        text.push_str("\nuniversal checks:\n");
        for c in &report.checks {
            text.push_str(&format!(
                "  {:<20} cell ({},{}) = {:>4}, expected {:>4}  {}\n",
                c.name,
                c.cell.0,
                c.cell.1,
                c.table,
                c.expected,
                if c.ok { "ok" } else { "MISMATCH" }
            ));
        }
    }
    Ok(Report { json: Value::Object(j), text, ok })
}

pub fn hdim_report(ctx: &mut Context, alg: &SupertranslationAlgebra, cross_check: bool) -> Result<Report, CliError> {
    let dim_y = ctx.dim_y(alg)?;
    let h = alg.hdim_from_dim_y(dim_y);
    let mut j = header("hdim", alg);
    j.insert("hdim".into(), json!(h));
    j.insert("dim_y".into(), json!(dim_y));
    let mut text = format!("{h}\n");
    let mut ok = true;
    if cross_check {
        let k = hdim_koszul(alg)?;
        ok = k == Some(h);
        j.insert("koszul_hdim".into(), json!(k));
        j.insert("agree".into(), json!(ok));
        text.push_str(&match k {
            Some(k) => format!("cohomological check: {k} ({})\n", if ok { "agrees" } else { "DISAGREES" }),
            None => "cohomological check: no nonzero cohomology found in the searched window\n".into(),
        });
    }
    Ok(Report { json: Value::Object(j), text, ok })
}

/// A q given either as comma-separated rationals or as a catalog name.
pub fn resolve_q(spec: &AlgebraSpec, alg: &SupertranslationAlgebra, arg: &str) -> Result<Vec<Rational>, CliError> {
    let looks_numeric = arg.chars().all(|c| c.is_ascii_digit() || "-/, ".contains(c));
    if looks_numeric {
        let q: Vec<Rational> = arg
            .split(',')
            .map(|s| s.trim().parse::<Rational>().map_err(|_| CliError::Usage(format!("'{s}' is not a rational number"))))
            .collect::<Result<_, _>>()?;
        if q.len() != alg.k {
            return Err(CliError::Usage(format!("q has {} entries but the odd dimension is {}", q.len(), alg.k)));
        }
        return Ok(q);
    }
    match &spec.body {
        AlgebraBody::Standard { dimension, susy } => Ok(named_twist(*dimension, *susy, arg)?),
        AlgebraBody::Explicit { .. } => Err(CliError::Usage(format!("named twist '{arg}' needs a standard algebra; give q as a vector"))),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Analysis {
    Conf,
    Determinantal,
}

impl std::str::FromStr for Analysis {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        match s {
            "conf" => Ok(Analysis::Conf),
            "determinantal" => Ok(Analysis::Determinantal),
            _ => Err(CliError::Usage(format!("unknown analysis '{s}' (expected conf or determinantal)"))),
        }
    }
}

pub fn twist_report(
    ctx: &mut Context,
    spec: &AlgebraSpec,
    alg: &SupertranslationAlgebra,
    q_arg: &str,
    analyses: &[Analysis],
) -> Result<Report, CliError> {
    let q = resolve_q(spec, alg, q_arg)?;
    let g0 = derivations_deg0(alg)?;
    let r = twist(alg, &g0, &q)?;
    let t = &r.twisted;
    let (h_src, h_tw) = (ctx.hdim(alg)?, ctx.hdim(t)?);
    let preserved = h_src == h_tw;
    let mut j = header("twist", alg);
    j.insert("q".into(), json!(q.iter().map(|x| x.to_string()).collect::<Vec<_>>()));
    j.insert("twisted".into(), json!({ "odd_dim": t.k, "even_dim": t.d }));
    j.insert("kernel_dim".into(), json!(r.kernel.len()));
    j.insert("orbit_dim".into(), json!(r.orbit.len()));
    j.insert("image_dim".into(), json!(r.image.len()));
    j.insert("hdim".into(), json!({ "source": h_src, "twisted": h_tw, "preserved": preserved }));
    let twisted_spec = AlgebraSpec::explicit(t).render();
    j.insert("twisted_spec".into(), json!(twisted_spec));
    let mut text = format!(
        "algebra: {}\ntwisted: ({}|{})\nker gamma(q,-): {}, orbit: {}, image: {}\nhdim: {h_src} -> {h_tw} ({})\n",
        dims_label(alg),
        t.k,
        t.d,
        r.kernel.len(),
        r.orbit.len(),
        r.image.len(),
        if preserved { "preserved" } else { "NOT preserved" }
    );
    if analyses.contains(&Analysis::Determinantal) {
        let p = determinantal_placement(t);
        j.insert("determinantal".into(), json!(p.as_ref().map(|p| p.entries)));
        text.push_str(&format!("2x2 minors of a 2x3 matrix: {}\n", if p.is_some() { "yes" } else { "no" }));
    }
    if analyses.contains(&Analysis::Conf) {
        let betti = ctx.betti(t, &MultipletKind::Conf, None)?;
        let table = component_fields(&betti)?;
        j.insert("conf".into(), json!({ "betti": betti_json(&betti), "table": cells_json(&table) }));
        text.push_str("\ntwisted conf component fields:\n");
        text.push_str(&table.render());
    }
    text.push_str("\ntwisted algebra:\n");
    text.push_str(&twisted_spec);
    Ok(Report { json: Value::Object(j), text, ok: preserved })
}

pub fn prolong_report(ctx: &mut Context, alg: &SupertranslationAlgebra, cap: usize, jacobi: bool) -> Result<Report, CliError> {
    let (dims, status, jacobi_ok) = if jacobi {
        let g0 = derivations_deg0(alg)?;
        let p = tanaka_prolongation(alg, &g0, cap)?;
        let ok = p.check_jacobi()?;
        (p.dims(), p.status, Some(ok))
    } else {
        let p = ctx.prolongation(alg, cap)?;
        (p.dims, p.status, None)
    };
    let (mut even, mut odd) = (0, 0);
    for (&m, &n) in &dims {
        if m.rem_euclid(2) == 1 {
            odd += n;
        } else {
            even += n;
        }
    }
    let status_name = match status {
        Status::Terminated => "terminated",
        Status::Capped => "capped",
    };
    let mut j = header("prolong", alg);
    j.insert("cap".into(), json!(cap));
    j.insert("status".into(), json!(status_name));
    j.insert("dims".into(), json!(dims.iter().map(|(m, n)| json!([m, n])).collect::<Vec<_>>()));
    j.insert("totals".into(), json!({ "even": even, "odd": odd }));
    if let Some(ok) = jacobi_ok {
        j.insert("jacobi".into(), json!(ok));
    }
    let mut text = format!("algebra: {}\n", dims_label(alg));
    for (m, n) in &dims {
        text.push_str(&format!("  degree {m:>3}: {n:>4} {}\n", if m.rem_euclid(2) == 1 { "odd" } else { "even" }));
    }
    text.push_str(&format!("status: {status_name} (cap {cap})\ntotal: {even}|{odd}\n"));
    if let Some(ok) = jacobi_ok {
        text.push_str(&format!("Jacobi identity: {}\n", if ok { "holds" } else { "FAILS" }));
    }
    Ok(Report { json: Value::Object(j), text, ok: jacobi_ok.unwrap_or(true) })
}

/// Dimensions of distribution-preserving vector fields by weight.
pub fn field_dims(alg: &SupertranslationAlgebra, cutoff: u32) -> Result<BTreeMap<i64, usize>, CliError> {
    Ok(derivation_complex_h0(alg, cutoff)?.by_weight)
}
