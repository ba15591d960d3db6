//! Per-claim checkers. Expected values come from `closed_form`; observed
//! values from coset tables, defining sets and enumeration.

use rayon::prelude::*;

use super::{to_ranges, Point, Quantity, VerifyError, VerifyOptions};
use crate::arith::{ceil_div, checked_pow, pow};
use crate::bch::{self, CyclicCode};
use crate::cosets::closed_form as cf;
use crate::cosets::{self, CosetTable, Family};
use crate::distance::{self, DistanceOptions, Method};
use crate::gf::FieldTower;

pub(super) fn run(
    id: &str,
    q: u64,
    m: u32,
    opts: &VerifyOptions,
) -> Result<Vec<Point>, VerifyError> {
    match id {
        "CLM-QM1" => qm1(q, m),
        "CLM-LIFT" => lift(q, m),
        "CLM-D1P" => d1p(q, m),
        "CLM-SZP" => szp(q, m),
        "CLM-T1" => t1(q, m, opts),
        "CLM-FAM" => fam(q, m),
        "CLM-2ND4" => second4(q),
        "CLM-IDP" => idp(q, m),
        "CLM-IDM" => idm(q, m),
        "CLM-B1002" => b1002(q, m, opts),
        "CLM-LB1002" => lb1002(q, m, opts),
        "CLM-T2" | "CLM-T3" => sweep(q, m, Family::Plus),
        "CLM-RUP" => rup(q, m),
        "CLM-THETA" => theta(q, m, opts),
        "CLM-SZM" => szm(q, m),
        "CLM-T5" => sweep(q, m, Family::Minus),
        other => Err(VerifyError::UnknownClaim(other.to_string())),
    }
}

fn table(q: u64, m: u32, family: Family) -> Result<CosetTable, VerifyError> {
    Ok(CosetTable::new(q, family.length(q, m)?)?)
}

fn largest_leader(t: &CosetTable) -> u64 {
    *t.leaders().last().expect("Z_n has at least one coset")
}

fn qm1(q: u64, m: u32) -> Result<Vec<Point>, VerifyError> {
    let expected = cf::full_modulus_top3(q, m)?.to_vec();
    let observed = CosetTable::new(q, pow(q, m) - 1)?.top_k(3);
    Ok(vec![Point::new(q, m).compare(
        Quantity::Ints(expected),
        Quantity::Ints(observed),
    )])
}

/// At most this many `h` per divisor, evenly strided.
const LIFT_SAMPLES: u64 = 200;

fn lift(q: u64, m: u32) -> Result<Vec<Point>, VerifyError> {
    let full = pow(q, m) - 1;
    let mut divisors = Vec::new();
    if m % 2 == 0 {
        divisors.push(q + 1);
    }
    if q >= 3 {
        divisors.push(q - 1);
    }
    let mut out = Vec::new();
    for d in divisors {
        let n = full / d;
        let stride = ceil_div(n, LIFT_SAMPLES).max(1);
        let hs: Vec<u64> = (0..n).step_by(stride as usize).map(|j| j * d).collect();
        let mut agree = 0u64;
        for &h in &hs {
            if cosets::lift_correspondence_check(q, m, h, d)? {
                agree += 1;
            }
        }
        out.push(
            Point::new(q, m)
                .param("divisor", d)
                .detail("stride", stride)
                .compare(Quantity::Int(hs.len() as u64), Quantity::Int(agree)),
        );
    }
    Ok(out)
}

fn d1p(q: u64, m: u32) -> Result<Vec<Point>, VerifyError> {
    let expected = cf::delta1_closed_form(q, m, Family::Plus)?;
    let t = table(q, m, Family::Plus)?;
    Ok(vec![Point::new(q, m).param("n", t.n()).compare(
        Quantity::Int(expected),
        Quantity::Int(largest_leader(&t)),
    )])
}

fn szp(q: u64, m: u32) -> Result<Vec<Point>, VerifyError> {
    let expected = cf::delta1_coset_size_closed_form(q, m, Family::Plus)?;
    let t = table(q, m, Family::Plus)?;
    let d1 = largest_leader(&t);
    Ok(vec![Point::new(q, m).param("delta1", d1).compare(
        Quantity::Int(expected),
        Quantity::Int(t.orbit(d1).len() as u64),
    )])
}

/// Direct minimum distance when `q^k · n` is within the work limit.
fn enumerate_distance(
    tower: &FieldTower,
    code: &CyclicCode,
    opts: &VerifyOptions,
) -> Result<Option<u64>, VerifyError> {
    let k = code.dimension();
    match checked_pow(code.q, k as u32) {
        Some(s) if s <= opts.budget && s.saturating_mul(code.n) <= opts.work_limit() => {}
        _ => return Ok(None),
    }
    let r = distance::min_distance_enumerate(
        tower,
        code,
        &DistanceOptions {
            method: Method::Direct,
            budget: opts.budget,
            lower_bound: 1,
        },
    )?;
    Ok(r.d)
}

/// Dimension and distance of the narrow-sense code at the largest leader.
fn largest_leader_code(
    q: u64,
    m: u32,
    family: Family,
    expected_size: u64,
    opts: &VerifyOptions,
) -> Result<Vec<Point>, VerifyError> {
    let t = table(q, m, family)?;
    let d1 = largest_leader(&t);
    if d1 < 2 {
        let reason =
            "largest leader is below 2, so no narrow-sense code has it as designed distance";
        return Ok(vec![
            Point::new(q, m)
                .aspect("dimension")
                .param("delta1", d1)
                .skipped(reason),
            Point::new(q, m)
                .aspect("distance")
                .param("delta1", d1)
                .skipped(reason),
        ]);
    }
    let ds = bch::defining_set_in(&t, d1, 1)?;
    let dim = t.n() - ds.len() as u64;
    let dimension = Point::new(q, m)
        .aspect("dimension")
        .param("delta1", d1)
        .compare(Quantity::Int(expected_size + 1), Quantity::Int(dim));

    let tower = FieldTower::for_q(q, m)?;
    let code = CyclicCode {
        q,
        n: t.n(),
        generator: bch::generator_polynomial(&tower, &ds)?,
    };
    let distance = Point::new(q, m).aspect("distance").param("delta1", d1);
    let distance = match enumerate_distance(&tower, &code, opts)? {
        Some(d) => distance
            .detail("d", d)
            .detail("k", dim)
            .compare(Quantity::Bool(true), Quantity::Bool(d >= d1)),
        None => distance.detail("k", dim).skipped("over enumeration budget"),
    };
    Ok(vec![dimension, distance])
}

fn t1(q: u64, m: u32, opts: &VerifyOptions) -> Result<Vec<Point>, VerifyError> {
    let size = cf::delta1_coset_size_closed_form(q, m, Family::Plus)?;
    largest_leader_code(q, m, Family::Plus, size, opts)
}

fn fam(q: u64, m: u32) -> Result<Vec<Point>, VerifyError> {
    let t = table(q, m, Family::Plus)?;
    Ok(cf::plus_leader_families(q, m)?
        .into_iter()
        .map(|f| {
            let p = Point::new(q, m)
                .param("value", f.value)
                .param("param", f.param as u64)
                .detail("family", f.label);
            let observed = Quantity::Bool(t.is_leader(f.value));
            if f.claimed {
                p.compare(Quantity::Bool(true), observed)
            } else {
                p.detail("note", "odd l above m/2 is outside the stated range")
                    .info(Quantity::Bool(true), observed)
            }
        })
        .collect())
}

fn second4(q: u64) -> Result<Vec<Point>, VerifyError> {
    let expected = Quantity::Int(cf::second_largest_m4_plus_formula(q));
    let t = table(q, 4, Family::Plus)?;
    let observed = Quantity::Int(t.top_k(2).get(1).copied().unwrap_or(0));
    let p = Point::new(q, 4);
    Ok(vec![if q % 2 == 1 {
        p.compare(expected, observed)
    } else {
        p.detail("note", "stated for odd q only")
            .info(expected, observed)
    }])
}

/// Observed `I(δ)` over a bracket, with the `δ` that disagree with `value`.
fn bracket_scan(
    t: &CosetTable,
    b: &cf::Bracket,
) -> Result<(Vec<u64>, Vec<u64>, u64, u64), VerifyError> {
    let lo = (b.lo + 1).max(2);
    let hi = b.hi.min(t.n() - 1);
    if lo > hi {
        return Ok((Vec::new(), Vec::new(), lo, hi));
    }
    let obs: Vec<(u64, u64)> = (lo..=hi)
        .into_par_iter()
        .map(|d| Ok((d, bch::i_of_delta_in(t, d)?)))
        .collect::<Result<_, VerifyError>>()?;
    let mut values: Vec<u64> = obs.iter().map(|x| x.1).collect();
    values.sort_unstable();
    values.dedup();
    let bad = obs.iter().filter(|x| x.1 != b.value).map(|x| x.0).collect();
    Ok((values, bad, lo, hi))
}

fn idp(q: u64, m: u32) -> Result<Vec<Point>, VerifyError> {
    let t = table(q, m, Family::Plus)?;
    let mut out = Vec::new();
    for b in cf::plus_break_brackets(q, m)? {
        let (values, _, lo, hi) = bracket_scan(&t, &b)?;
        let p = Point::new(q, m).param("t", b.t as u64);
        if values.is_empty() {
            out.push(p.skipped("bracket has no designed distance in 2..n-1"));
            continue;
        }
        out.push(
            p.detail("deltas", vec![lo, hi])
                .compare(Quantity::Ints(vec![b.value]), Quantity::Ints(values)),
        );
    }
    Ok(out)
}

fn idm(q: u64, m: u32) -> Result<Vec<Point>, VerifyError> {
    let t = table(q, m, Family::Minus)?;
    let mut out = Vec::new();
    for b in cf::minus_break_brackets(q, m)? {
        let (values, bad, lo, hi) = bracket_scan(&t, &b)?;
        let p = Point::new(q, m).param("t", b.t as u64);
        if values.is_empty() {
            out.push(p.skipped("bracket has no designed distance in 2..n-1"));
            continue;
        }
        let p = p.detail("deltas", vec![lo, hi]);
        let expected = Quantity::Ints(vec![b.value]);
        let observed = Quantity::Ints(values);
        out.push(
            if !bad.is_empty() && bad.iter().all(|&d| d == lo || d == hi) {
                p.detail("endpoint_mismatches", bad)
                    .info(expected, observed)
            } else {
                p.compare(expected, observed)
            },
        );
    }
    Ok(out)
}

/// `(δ, true dual distance, run bound on the dual)`.
type DualPoint = (u64, u64, u64);

/// True dual distance of `C(q,n,δ)` for each `δ` in `deltas` whose dual is
/// enumerable, with the run-based bound on `T^⊥`. Stops at the first `δ` over
/// budget since defining sets only grow with `δ`.
fn dual_distances(
    tower: &FieldTower,
    t: &CosetTable,
    deltas: impl Iterator<Item = u64>,
    opts: &VerifyOptions,
) -> Result<(Vec<DualPoint>, u64), VerifyError> {
    let mut out = Vec::new();
    let mut skipped = 0u64;
    let mut cache: Option<(usize, u64, u64)> = None;
    let mut over = false;
    for delta in deltas {
        if over {
            skipped += 1;
            continue;
        }
        let ds = bch::defining_set_in(t, delta, 1)?;
        let (d, run) = match cache {
            Some((size, d, run)) if size == ds.len() => (d, run),
            _ => {
                let code = CyclicCode {
                    q: t.q(),
                    n: t.n(),
                    generator: bch::generator_polynomial(tower, &ds)?,
                };
                let dual = code.dual(tower)?;
                let Some(d) = enumerate_distance(tower, &dual, opts)? else {
                    over = true;
                    skipped += 1;
                    continue;
                };
                let run = bch::bch_bound(&bch::dual_defining_set(&ds));
                cache = Some((ds.len(), d, run));
                (d, run)
            }
        };
        out.push((delta, d, run));
    }
    Ok((out, skipped))
}

fn b1002(q: u64, m: u32, opts: &VerifyOptions) -> Result<Vec<Point>, VerifyError> {
    let tower = FieldTower::for_q(q, m)?;
    let t = table(q, m, Family::Plus)?;
    let (rows, skipped) = dual_distances(&tower, &t, 2..=t.n(), opts)?;
    let mut closed_bad = Vec::new();
    let mut chain_bad = Vec::new();
    for &(delta, d, run) in &rows {
        let bound = crate::distance::dual_bound_closed_form(q, m, Family::Plus, delta)?;
        if bound > d {
            closed_bad.push(delta);
        }
        if bound > run || run > d {
            chain_bad.push(delta);
        }
    }
    let base = || {
        Point::new(q, m)
            .detail("checked_deltas", rows.len() as u64)
            .detail("skipped_deltas", skipped)
    };
    if rows.is_empty() {
        return Ok(vec![
            base().aspect("closed-form").skipped("no enumerable dual"),
            base().aspect("bch-run").skipped("no enumerable dual"),
        ]);
    }
    Ok(vec![
        base()
            .aspect("closed-form")
            .detail("violations", closed_bad.clone())
            .compare(Quantity::Bool(true), Quantity::Bool(closed_bad.is_empty())),
        base()
            .aspect("bch-run")
            .detail("violations", chain_bad.clone())
            .compare(Quantity::Bool(true), Quantity::Bool(chain_bad.is_empty())),
    ])
}

fn lb1002(q: u64, m: u32, opts: &VerifyOptions) -> Result<Vec<Point>, VerifyError> {
    let tower = FieldTower::for_q(q, m)?;
    let t = table(q, m, Family::Plus)?;
    let bound = (pow(q, m - 1) + 2 * pow(q, m - 2) - 1) / (q + 1);
    let (rows, _) = dual_distances(&tower, &t, 2..q, opts)?;
    Ok((2..q)
        .map(|delta| {
            let p = Point::new(q, m)
                .param("delta", delta)
                .detail("bound", bound);
            match rows.iter().find(|r| r.0 == delta) {
                Some(&(_, d, _)) => p
                    .detail("d", d)
                    .compare(Quantity::Bool(true), Quantity::Bool(bound <= d)),
                None => p.skipped("over enumeration budget"),
            }
        })
        .collect())
}

fn sweep(q: u64, m: u32, family: Family) -> Result<Vec<Point>, VerifyError> {
    let expected: Vec<[u64; 2]> = cf::dually_bch_ranges(q, m, family)?
        .into_iter()
        .map(|(a, b)| [a, b])
        .collect();
    let t = table(q, m, family)?;
    let entries = bch::dually_bch_sweep_in(&t)?;
    let observed = to_ranges(entries.iter().map(|e| (e.delta, e.verdict)));
    let c0 = entries.iter().filter(|e| e.verdict).all(|e| e.c0_anchored);
    let aspect = match (family, q, m) {
        (Family::Plus, 2, _) => "binary",
        (Family::Plus, _, 4) => "m=4",
        (Family::Plus, _, _) => "m>4",
        _ => "minus",
    };
    Ok(vec![Point::new(q, m)
        .param("n", t.n())
        .aspect(aspect)
        .detail("c0_anchored", c0)
        .compare(
            Quantity::Ranges(expected),
            Quantity::Ranges(observed),
        )])
}

fn rup(q: u64, m: u32) -> Result<Vec<Point>, VerifyError> {
    let expected = cf::theta_digits(q, m)?;
    let sum: u64 = (1..q)
        .map(|t| pow(q, (ceil_div(m as u64 * t, q - 1) - 1) as u32))
        .sum();
    let observed = cosets::q_adic(sum, q, m)?;
    Ok(vec![Point::new(q, m)
        .detail("t1", expected.t1)
        .detail("t2", expected.t2)
        .compare(
            Quantity::Ints(expected.digits),
            Quantity::Ints(observed.digits),
        )])
}

fn theta(q: u64, m: u32, opts: &VerifyOptions) -> Result<Vec<Point>, VerifyError> {
    let expected = cf::delta1_closed_form(q, m, Family::Minus)?;
    let t = table(q, m, Family::Minus)?;
    let leader = Point::new(q, m)
        .aspect("leader")
        .param("n", t.n())
        .compare(Quantity::Int(expected), Quantity::Int(largest_leader(&t)));
    let size = cf::delta1_coset_size_closed_form(q, m, Family::Minus)?;
    let mut out = vec![leader];
    out.extend(
        largest_leader_code(q, m, Family::Minus, size, opts)?
            .into_iter()
            .filter(|p| p.aspect == Some("distance")),
    );
    Ok(out)
}

fn szm(q: u64, m: u32) -> Result<Vec<Point>, VerifyError> {
    let expected = cf::delta1_coset_size_closed_form(q, m, Family::Minus)?;
    let t = table(q, m, Family::Minus)?;
    let th = largest_leader(&t);
    let size = Point::new(q, m).aspect("size").param("theta", th).compare(
        Quantity::Int(expected),
        Quantity::Int(t.orbit(th).len() as u64),
    );
    let ds = bch::defining_set_in(&t, th, 1)?;
    let dim = Point::new(q, m)
        .aspect("dimension")
        .param("theta", th)
        .compare(
            Quantity::Int(expected + 1),
            Quantity::Int(t.n() - ds.len() as u64),
        );
    Ok(vec![size, dim])
}
