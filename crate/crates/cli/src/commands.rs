//! Subcommand bodies. Each returns the report as a JSON value.

use anyhow::{bail, Context};
use cosetforge::bch::{self, BchCode, Recognition};
use cosetforge::cosets::closed_form;
use cosetforge::distance::{self, DistanceOptions, DistanceResult};
use cosetforge::verify::{self, GridOverrides, VerifyOptions};
use cosetforge::{arith, CosetTable, CyclicCode, DefiningSet, Family, FieldTower};
use serde_json::{json, Value};

use crate::{CodeCmd, CosetsArgs, DistanceArgs, DuallyArgs, LengthArgs, Outcome, VerifyArgs};

fn done(report: Value) -> anyhow::Result<Outcome> {
    Ok(Outcome {
        report,
        failed: false,
    })
}

/// `(n, m)` for the requested length, where `m = ord_n(q)` for raw lengths.
fn resolve_length(a: &LengthArgs) -> anyhow::Result<(u64, u32)> {
    match a.family {
        Family::Raw => {
            let Some(n) = a.n else {
                bail!("--family raw needs --n");
            };
            if n < 2 {
                bail!("--n must be at least 2");
            }
            let m = arith::mult_order(a.q, n)
                .with_context(|| format!("--n {n} is not coprime to --q {}", a.q))?;
            Ok((n, m))
        }
        family => {
            let Some(m) = a.m else {
                bail!("--family {family} needs --m");
            };
            let n = family.length(a.q, m)?;
            if let Some(given) = a.n {
                if given != n {
                    bail!("--n {given} disagrees with the {family} family length {n}");
                }
            }
            Ok((n, m))
        }
    }
}

fn coset_json(t: &CosetTable, s: u64, max_elements: usize) -> Value {
    let c = t.coset(s);
    let mut v = json!({
        "n": c.n,
        "q": c.q,
        "leader": c.leader,
        "size": c.size(),
    });
    if c.size() <= max_elements {
        v["elements"] = json!(c.elements);
    }
    v
}

pub fn cosets(a: &CosetsArgs) -> anyhow::Result<Outcome> {
    let (n, _) = resolve_length(&a.len)?;
    let t = CosetTable::new(a.len.q, n)?;
    let mut report = json!({ "q": a.len.q, "n": n, "family": a.len.family });
    if let Some(s) = a.leader {
        if s >= n {
            bail!("--leader {s} must be below n = {n}");
        }
        report["coset"] = coset_json(&t, s, a.max_elements);
    } else if let Some(k) = a.top {
        let top = t.top_k(k);
        report["cosets"] = top
            .iter()
            .map(|&l| coset_json(&t, l, a.max_elements))
            .collect();
        report["top"] = json!(top);
    } else {
        report["count"] = json!(t.leaders().len());
        report["cosets"] = t
            .leaders()
            .iter()
            .map(|&l| coset_json(&t, l, a.max_elements))
            .collect();
    }
    if let (Some(m), Family::Plus | Family::Minus) = (a.len.m, a.len.family) {
        if let Ok(d1) = closed_form::delta1_closed_form(a.len.q, m, a.len.family) {
            report["closed_form"] = json!({
                "delta1": d1,
                "delta1_size": closed_form::delta1_coset_size_closed_form(a.len.q, m, a.len.family)?,
            });
        }
    }
    done(report)
}

fn build_code(c: &CodeCmd) -> anyhow::Result<(FieldTower, BchCode)> {
    let (n, m) = resolve_length(&c.len)?;
    let tower = FieldTower::for_q(c.len.q, m)?;
    let code = BchCode::new(&tower, c.len.family, n, c.delta, c.b)?;
    Ok((tower, code))
}

fn set_json(ds: &DefiningSet) -> Value {
    json!({ "size": ds.len(), "source_cosets": ds.source_cosets })
}

fn recognition_json(r: &Recognition) -> Value {
    json!({
        "verdict": r.is_bch(),
        "status": r.status,
        "witness": r.witness,
        "c0_witness": r.c0_witness,
    })
}

fn distance_json(
    tower: &FieldTower,
    code: &CyclicCode,
    d: &DistanceArgs,
    lower_bound: u64,
) -> anyhow::Result<Option<DistanceResult>> {
    if !d.true_distance {
        return Ok(None);
    }
    let opts = DistanceOptions {
        method: d.method,
        budget: d.max_codewords,
        lower_bound,
    };
    Ok(Some(distance::min_distance_enumerate(tower, code, &opts)?))
}

fn header(c: &CodeCmd, code: &BchCode) -> Value {
    json!({
        "q": code.q,
        "m": code.m,
        "family": c.len.family,
        "n": code.n,
        "b": code.b,
        "delta": code.delta,
    })
}

pub fn code(c: &CodeCmd) -> anyhow::Result<Outcome> {
    let (tower, code) = build_code(c)?;
    let mut report = header(c, &code);
    report["dim"] = json!(code.dimension);
    report["bch_bound"] = json!(code.bch_bound);
    report["genpoly"] = json!(code.genpoly.coeffs());
    report["defining_set"] = set_json(&code.defining_set);
    let dual_set = code.dual_defining_set();
    report["dually_bch"] = recognition_json(&bch::recognize_bch(&dual_set));
    report["bounds"] = json!({ "designed": code.delta, "bch_run": code.bch_bound });
    if let Some(r) = distance_json(&tower, &code.cyclic(), &c.dist, code.bch_bound)? {
        report["distance"] = json!(r);
    }
    done(report)
}

pub fn dual(c: &CodeCmd) -> anyhow::Result<Outcome> {
    let (tower, code) = build_code(c)?;
    let dual = code.cyclic().dual(&tower)?;
    let tperp = code.dual_defining_set();
    let run = bch::bch_bound(&tperp);
    let mut report = header(c, &code);
    report["dim"] = json!(dual.dimension());
    report["genpoly"] = json!(dual.generator.coeffs());
    report["defining_set"] = set_json(&tperp);
    report["bch_bound"] = json!(run);
    report["recognition"] = recognition_json(&bch::recognize_bch(&tperp));
    let mut bounds = json!({ "bch_run": run });
    if c.len.family == Family::Plus && c.b == 1 {
        if let Ok(b) = distance::dual_bound_closed_form(code.q, code.m, Family::Plus, code.delta) {
            bounds["closed_form"] = json!(b);
        }
    }
    report["bounds"] = bounds;
    if let Some(r) = distance_json(&tower, &dual, &c.dist, run)? {
        report["distance"] = json!(r);
    }
    done(report)
}

pub fn dually_bch(a: &DuallyArgs) -> anyhow::Result<Outcome> {
    let (n, m) = resolve_length(&a.len)?;
    let q = a.len.q;
    let table = CosetTable::new(q, n)?;
    let mut report = json!({ "q": q, "m": m, "family": a.len.family, "n": n });
    let predicted = match a.len.family {
        Family::Raw => None,
        f => closed_form::dually_bch_ranges(q, m, f).ok(),
    };
    if a.sweep {
        let entries = bch::dually_bch_sweep_in(&table)?;
        let mut ranges: Vec<[u64; 2]> = Vec::new();
        for e in entries.iter().filter(|e| e.verdict) {
            match ranges.last_mut() {
                Some(r) if r[1] + 1 == e.delta => r[1] = e.delta,
                _ => ranges.push([e.delta, e.delta]),
            }
        }
        report["true_ranges"] = json!(ranges);
        report["entries"] = json!(entries);
        if let Some(p) = predicted {
            let p: Vec<[u64; 2]> = p.into_iter().map(|(a, b)| [a, b]).collect();
            report["agrees_with_prediction"] = json!(p == ranges);
            report["predicted_ranges"] = json!(p);
        }
    } else {
        let delta = a.delta.expect("clap requires --delta without --sweep");
        let r = bch::is_dually_bch_in(&table, delta)?;
        report["delta"] = json!(delta);
        report["verdict"] = json!(r.verdict);
        report["recognition"] = recognition_json(&r.recognition);
        report["tperp"] = set_json(&r.tperp);
        if let Some(p) = predicted {
            report["predicted"] = json!(p.iter().any(|&(lo, hi)| lo <= delta && delta <= hi));
        }
    }
    done(report)
}

pub fn verify(a: &VerifyArgs) -> anyhow::Result<Outcome> {
    let opts = VerifyOptions {
        budget: a.max_codewords,
    };
    let overrides = GridOverrides::parse(&a.grid)?;
    let reports = if a.all {
        if !overrides.is_empty() {
            bail!("--grid applies to a single --claim");
        }
        verify::verify_all(&opts)?
    } else {
        let id = a
            .claim
            .as_deref()
            .expect("clap requires --claim without --all");
        vec![verify::verify_claim(id, &overrides, &opts)?]
    };
    let failed = reports.iter().any(|r| !r.all_passed());
    let report = if a.all {
        let mut total = verify::Summary::default();
        for r in &reports {
            total.add(&r.summary);
        }
        json!({ "claims": reports, "summary": total })
    } else {
        json!(reports[0])
    };
    Ok(Outcome { report, failed })
}

pub fn claims() -> Outcome {
    Outcome {
        report: json!({ "claims": verify::list_claims() }),
        failed: false,
    }
}
