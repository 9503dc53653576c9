//! Reference cases checked by `verify`.

use std::collections::{BTreeMap, BTreeSet};

use serde::Deserialize;
use serde_json::{json, Value};

use superspace_core::multiplets::{component_fields, MultipletKind};
use superspace_core::prolong::Status;
use superspace_core::susy::derivations_deg0;
use superspace_core::twist::{determinantal_placement, twist};

use crate::analysis::{field_dims, resolve_q, Context, Report, SCHEMA};
use crate::error::CliError;
use crate::spec::{catalog_shorthand, parse_spec, AlgebraSpec};

const FILES: &[(&str, &str)] = &[
    ("hdim.toml", include_str!("../fixtures/hdim.toml")),
    ("gorenstein.toml", include_str!("../fixtures/gorenstein.toml")),
    ("multiplets.toml", include_str!("../fixtures/multiplets.toml")),
    ("twists.toml", include_str!("../fixtures/twists.toml")),
    ("prolong.toml", include_str!("../fixtures/prolong.toml")),
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Tier {
    Fast,
    Slow,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum Check {
    Hdim {
        value: i64,
    },
    Gorenstein {
        value: bool,
    },
    Betti {
        multiplet: String,
        entries: Vec<[i64; 3]>,
    },
    Table {
        multiplet: String,
        cells: Vec<[i64; 3]>,
        #[serde(default)]
        universal: bool,
        /// Compare only cells of internal degree at most this.
        window: Option<i64>,
    },
    Twist {
        q: String,
        dims: [usize; 2],
        #[serde(default = "yes")]
        hdim_preserved: bool,
        determinantal: Option<bool>,
        conf_row0_sum: Option<u64>,
    },
    Prolong {
        cap: usize,
        dims: Option<Vec<[i64; 2]>>,
        status: Option<String>,
        totals: Option<[usize; 2]>,
        /// Compare with the vector-field count at this coefficient cutoff.
        oracle_cutoff: Option<u32>,
    },
}

fn yes() -> bool {
    true
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FixtureCase {
    pub name: String,
    pub tier: Tier,
    pub source: String,
    /// Catalog shorthand such as `6d(2,0)`.
    pub algebra: Option<String>,
    /// Full spec text, for algebras outside the catalog.
    pub spec: Option<String>,
    pub check: Check,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FixtureFile {
    case: Vec<FixtureCase>,
}

impl FixtureCase {
    pub fn algebra_spec(&self) -> Result<AlgebraSpec, CliError> {
        match (&self.algebra, &self.spec) {
            (Some(a), None) => catalog_shorthand(a).ok_or_else(|| CliError::Fixture(format!("{}: unknown algebra '{a}'", self.name))),
            (None, Some(s)) => parse_spec(s).map_err(|err| CliError::Spec { path: format!("fixture {}", self.name), err }),
            _ => Err(CliError::Fixture(format!("{}: give exactly one of algebra and spec", self.name))),
        }
    }
}

pub fn load_fixtures() -> Result<Vec<FixtureCase>, CliError> {
    let mut out = Vec::new();
    let mut names = BTreeSet::new();
    for (file, text) in FILES {
        let parsed: FixtureFile = toml::from_str(text).map_err(|e| CliError::Fixture(format!("{file}: {e}")))?;
        for c in parsed.case {
            if c.source.trim().is_empty() {
                return Err(CliError::Fixture(format!("{file}: case {} has no source", c.name)));
            }
            if !names.insert(c.name.clone()) {
                return Err(CliError::Fixture(format!("{file}: duplicate case {}", c.name)));
            }
            out.push(c);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub name: String,
    pub tier: Tier,
    pub source: String,
    pub mismatches: Vec<String>,
    pub error: Option<String>,
}

impl Outcome {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty() && self.error.is_none()
    }
}

fn compare<T: PartialEq + std::fmt::Debug>(out: &mut Vec<String>, what: &str, expected: T, actual: T) {
    if expected != actual {
        out.push(format!("{what}: expected {expected:?}, got {actual:?}"));
    }
}

fn kind(s: &str) -> Result<MultipletKind, CliError> {
    Ok(s.parse::<MultipletKind>()?)
}

fn run_check(ctx: &mut Context, case: &FixtureCase) -> Result<Vec<String>, CliError> {
    let spec = case.algebra_spec()?;
    let alg = spec.build()?;
    let mut m = Vec::new();
    match &case.check {
        Check::Hdim { value } => compare(&mut m, "hdim", *value, ctx.hdim(&alg)?),
        Check::Gorenstein { value } => compare(&mut m, "gorenstein", *value, ctx.gorenstein(&alg)?.gorenstein),
        Check::Betti { multiplet, entries } => {
            let t = ctx.betti(&alg, &kind(multiplet)?, None)?;
            let expected: Vec<(usize, i64, u64)> = entries.iter().map(|e| (e[0] as usize, e[1], e[2] as u64)).collect();
            compare(&mut m, "betti", expected, t.triples());
            compare(&mut m, "complete", true, t.complete);
        }
        Check::Table { multiplet, cells, universal, window } => {
            let kind = kind(multiplet)?;
            let betti = ctx.betti(&alg, &kind, *window)?;
            if window.is_none() && !betti.complete {
                m.push("resolution incomplete".into());
                return Ok(m);
            }
            let mut full = betti.clone();
            full.complete = true;
            let table = component_fields(&full)?;
            let in_window = |r: i64, c: i64| window.is_none_or(|w| 2 * r + c <= w);
            let expected: BTreeMap<(i64, i64), u64> =
                cells.iter().filter(|e| in_window(e[0], e[1])).map(|e| ((e[0], e[1]), e[2] as u64)).collect();
            let actual: BTreeMap<(i64, i64), u64> =
                table.cells.iter().filter(|(k, _)| in_window(k.0, k.1)).map(|(k, f)| (*k, f.dimension)).collect();
            for key in expected.keys().chain(actual.keys()).collect::<BTreeSet<_>>() {
                let (e, a) = (expected.get(key).copied().unwrap_or(0), actual.get(key).copied().unwrap_or(0));
                if e != a {
                    m.push(format!("cell ({},{}): expected {e}, got {a}", key.0, key.1));
                }
            }
            if *universal {
                let g0 = derivations_deg0(&alg)?;
                for c in superspace_core::multiplets::universal_checks(&alg, &table, &g0).checks {
                    if !c.ok {
                        m.push(format!("{} at ({},{}): table {}, expected {}", c.name, c.cell.0, c.cell.1, c.table, c.expected));
                    }
                }
            }
        }
        Check::Twist { q, dims, hdim_preserved, determinantal, conf_row0_sum } => {
            let qv = resolve_q(&spec, &alg, q)?;
            let r = twist(&alg, &derivations_deg0(&alg)?, &qv)?;
            compare(&mut m, "twisted dims", *dims, [r.twisted.k, r.twisted.d]);
            let preserved = ctx.hdim(&alg)? == ctx.hdim(&r.twisted)?;
            compare(&mut m, "hdim preserved", *hdim_preserved, preserved);
            if let Some(det) = determinantal {
                compare(&mut m, "determinantal", *det, determinantal_placement(&r.twisted).is_some());
            }
            if let Some(sum) = conf_row0_sum {
                let betti = ctx.betti(&r.twisted, &MultipletKind::Conf, None)?;
                let table = component_fields(&betti)?;
                compare(&mut m, "conf row 0 sum", *sum, table.row(0).iter().sum());
            }
        }
        Check::Prolong { cap, dims, status, totals, oracle_cutoff } => {
            let p = ctx.prolongation(&alg, *cap)?;
            if let Some(d) = dims {
                for &[deg, n] in d {
                    compare(&mut m, &format!("degree {deg}"), n as usize, p.dims.get(&deg).copied().unwrap_or(0));
                }
            }
            if let Some(s) = status {
                let actual = match p.status {
                    Status::Terminated => "terminated",
                    Status::Capped => "capped",
                };
                compare(&mut m, "status", s.as_str(), actual);
            }
            if let Some([e, o]) = totals {
                let (mut te, mut to) = (0, 0);
                for (&deg, &n) in &p.dims {
                    if deg.rem_euclid(2) == 1 {
                        to += n;
                    } else {
                        te += n;
                    }
                }
                compare(&mut m, "totals", (*e, *o), (te, to));
            }
            if let Some(cutoff) = oracle_cutoff {
                let fields = field_dims(&alg, *cutoff)?;
                for (deg, n) in &p.dims {
                    if let Some(f) = fields.get(deg) {
                        compare(&mut m, &format!("oracle degree {deg}"), *f, *n);
                    }
                }
            }
        }
    }
    Ok(m)
}

pub fn run_case(ctx: &mut Context, case: &FixtureCase) -> Outcome {
    let (mismatches, error) = match run_check(ctx, case) {
        Ok(m) => (m, None),
        Err(e) => (Vec::new(), Some(e.to_string())),
    };
    Outcome { name: case.name.clone(), tier: case.tier, source: case.source.clone(), mismatches, error }
}

/// Runs the selected fixtures. Unknown case names are a usage error.
pub fn verify(ctx: &mut Context, tier: Tier, case: Option<&str>) -> Result<Report, CliError> {
    let all = load_fixtures()?;
    let selected: Vec<&FixtureCase> = match case {
        Some(name) => {
            let hits: Vec<&FixtureCase> = all.iter().filter(|c| c.name == name || c.name.starts_with(&format!("{name}/"))).collect();
            if hits.is_empty() {
                return Err(CliError::Usage(format!("no fixture named '{name}'")));
            }
            hits
        }
        None => all.iter().filter(|c| c.tier <= tier).collect(),
    };
    let mut outcomes = Vec::new();
    let mut text = String::new();
    for c in selected {
        let o = run_case(ctx, c);
        if o.passed() {
            text.push_str(&format!("PASS {}\n", o.name));
        } else {
            text.push_str(&format!("FAIL {}\n", o.name));
            for line in &o.mismatches {
                text.push_str(&format!("     {line}\n"));
            }
            if let Some(e) = &o.error {
                text.push_str(&format!("     error: {e}\n"));
            }
        }
        outcomes.push(o);
    }
    let failed = outcomes.iter().filter(|o| !o.passed()).count();
    text.push_str(&format!("{} passed, {failed} failed\n", outcomes.len() - failed));
    let cases: Vec<Value> = outcomes
        .iter()
        .map(|o| {
            json!({
                "name": o.name,
                "tier": match o.tier { Tier::Fast => "fast", Tier::Slow => "slow" },
                "source": o.source,
                "ok": o.passed(),
                "mismatches": o.mismatches,
                "error": o.error,
            })
        })
        .collect();
    let json = json!({
        "schema": SCHEMA,
        "command": "verify",
        "tier": match tier { Tier::Fast => "fast", Tier::Slow => "all" },
        "cases": cases,
        "passed": outcomes.len() - failed,
        "failed": failed,
    });
    Ok(Report { json, text, ok: failed == 0 })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_parse_and_build() {
        let all = load_fixtures().unwrap();
        assert!(all.iter().any(|c| c.tier == Tier::Fast));
        for c in &all {
            c.algebra_spec().unwrap().build().unwrap();
            if let Check::Betti { multiplet, .. } | Check::Table { multiplet, .. } = &c.check {
                kind(multiplet).unwrap();
            }
        }
    }
}
