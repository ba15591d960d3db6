//! Claim registry: each claim pairs a closed-form prediction with an
//! independent brute-force observation over a parameter grid.
//!
//! The observed side of every check is computed from coset tables, defining
//! sets and codeword enumeration only; the closed forms under test appear on
//! the expected side.

mod checks;

use std::collections::BTreeMap;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::arith::{self, checked_pow};
use crate::bch::BchError;
use crate::cosets::CosetError;
use crate::distance::{DistanceError, DEFAULT_BUDGET};
use crate::gf::{GfError, ORDER_GUARD};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("unknown claim {0:?}; run `claims` for the list")]
    UnknownClaim(String),
    #[error("grid point q={q}, m={m} needs q^m <= {ORDER_GUARD}")]
    GridTooLarge { q: u64, m: u32 },
    #[error("bad grid: {0}")]
    BadGrid(String),
    #[error(transparent)]
    Coset(#[from] CosetError),
    #[error(transparent)]
    Bch(#[from] BchError),
    #[error(transparent)]
    Gf(#[from] GfError),
    #[error(transparent)]
    Distance(#[from] DistanceError),
}

/// Which family a claim's grid ranges over, plus extra restrictions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Domain {
    /// `n = q^m - 1`.
    FullModulus,
    Plus,
    /// Plus family with `q > 2`.
    PlusOddOrEvenQ,
    /// Plus family, `q = 2`.
    PlusBinary,
    /// Plus family, `m = 4`.
    PlusM4,
    Minus,
}

/// A registered claim.
#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Claim {
    pub id: &'static str,
    /// What is checked, in one line.
    pub statement: &'static str,
    /// Parameter domains of the default grid.
    pub grid_schema: &'static str,
    /// Whether points are sampled rather than exhaustive.
    pub sampled: bool,
    #[serde(skip)]
    domain: Domain,
    #[serde(skip)]
    default_grid: fn() -> Vec<(u64, u32)>,
}

fn cartesian(qs: &[u64], ms: &[u32]) -> Vec<(u64, u32)> {
    qs.iter()
        .flat_map(|&q| ms.iter().map(move |&m| (q, m)))
        .collect()
}

fn plus_grid() -> Vec<(u64, u32)> {
    let mut g = cartesian(&[2, 3, 4, 5, 7], &[4, 6]);
    g.extend([(2, 8), (3, 8)]);
    g.sort();
    g
}

fn plus_grid_q_gt2() -> Vec<(u64, u32)> {
    plus_grid().into_iter().filter(|&(q, _)| q > 2).collect()
}

fn minus_grid() -> Vec<(u64, u32)> {
    let mut g = cartesian(&[3, 4, 5, 7, 8, 9], &[4, 5]);
    g.extend([(3, 6), (4, 6)]);
    g.sort();
    g
}

fn binary_grid() -> Vec<(u64, u32)> {
    cartesian(&[2], &[4, 6, 8, 10])
}

fn m4_grid() -> Vec<(u64, u32)> {
    cartesian(&[2, 3, 4, 5, 7, 8, 9], &[4])
}

fn full_modulus_grid() -> Vec<(u64, u32)> {
    cartesian(&[2, 3, 4, 5, 7], &[4, 5, 6])
}

const REGISTRY: &[Claim] = &[
    Claim {
        id: "CLM-QM1",
        statement: "The three largest leaders modulo q^m-1 are (q-1)q^(m-1)-1 and that value minus q^floor((m-1)/2) and q^floor((m+1)/2)",
        grid_schema: "q in {2,3,4,5,7}, m in {4,5,6}",
        sampled: false,
        domain: Domain::FullModulus,
        default_grid: full_modulus_grid,
    },
    Claim {
        id: "CLM-LIFT",
        statement: "For d | q^m-1 and d | h: h is a leader modulo q^m-1 iff h/d is a leader modulo (q^m-1)/d",
        grid_schema: "plus and minus grids, d in {q+1 (m even), q-1 (q>=3)}, h sampled by fixed stride",
        sampled: true,
        domain: Domain::FullModulus,
        default_grid: full_modulus_grid,
    },
    Claim {
        id: "CLM-D1P",
        statement: "Largest leader modulo (q^m-1)/(q+1) is ((q-1)q^(m-1) - q^((m-2)/2 or m/2) - 1)/(q+1) by m mod 4",
        grid_schema: "q in {2,3,4,5,7}, m in {4,6}; m=8 for q in {2,3}",
        sampled: false,
        domain: Domain::Plus,
        default_grid: plus_grid,
    },
    Claim {
        id: "CLM-SZP",
        statement: "The largest plus-family leader has coset size m when m = 0 mod 4 and m/2 when m = 2 mod 4",
        grid_schema: "plus grid",
        sampled: false,
        domain: Domain::Plus,
        default_grid: plus_grid,
    },
    Claim {
        id: "CLM-T1",
        statement: "C(q,n,d1) on the plus family has dimension |C_d1|+1 and minimum distance at least d1",
        grid_schema: "plus grid; distance aspect skipped over budget",
        sampled: false,
        domain: Domain::Plus,
        default_grid: plus_grid,
    },
    Claim {
        id: "CLM-FAM",
        statement: "(q^l+1)/(q+1) (odd l <= m/2), (q^t-1)/(q+1) (even t), the all-ones family values and (q^m-q^(m-1)-q^(m-2)-1)/(q+1) are plus-family leaders",
        grid_schema: "plus grid; odd l > m/2 reported as info",
        sampled: false,
        domain: Domain::Plus,
        default_grid: plus_grid,
    },
    Claim {
        id: "CLM-2ND4",
        statement: "For odd q the second largest leader modulo (q^4-1)/(q+1) is ((q-1)q^3-q^2-q-2)/(q+1)",
        grid_schema: "m=4, q in {2,3,4,5,7,8,9}; even q reported as info",
        sampled: false,
        domain: Domain::PlusM4,
        default_grid: m4_grid,
    },
    Claim {
        id: "CLM-IDP",
        statement: "Plus family: I(d) = (q^(m-t)-1)/(q+1) for (q^t-1)/(q+1) < d <= (q^(t+1)+2q^t-1)/(q+1), t even",
        grid_schema: "plus grid, every d in every bracket",
        sampled: false,
        domain: Domain::Plus,
        default_grid: plus_grid,
    },
    Claim {
        id: "CLM-IDM",
        statement: "Minus family: I(d) = (q^(m-t)-1)/(q-1) for (q^t-1)/(q-1) < d <= (q^(t+1)-1)/(q-1), and I(d) = 1 above (q^(m-1)-1)/(q-1)",
        grid_schema: "minus grid, every d in every bracket; endpoint-only mismatches reported as info",
        sampled: false,
        domain: Domain::Minus,
        default_grid: minus_grid,
    },
    Claim {
        id: "CLM-B1002",
        statement: "The piecewise closed-form bound on the dual distance of plus-family codes never exceeds the true dual distance",
        grid_schema: "plus grid, every d whose dual is enumerable",
        sampled: false,
        domain: Domain::Plus,
        default_grid: plus_grid,
    },
    Claim {
        id: "CLM-LB1002",
        statement: "For 2 <= d <= q-1 the dual distance of plus-family codes is at least (q^(m-1)+2q^(m-2)-1)/(q+1)",
        grid_schema: "plus grid with q > 2, d in 2..q-1 where enumerable",
        sampled: false,
        domain: Domain::PlusOddOrEvenQ,
        default_grid: plus_grid_q_gt2,
    },
    Claim {
        id: "CLM-T2",
        statement: "Binary plus family: C(2,n,d) is dually-BCH iff d >= d1+1",
        grid_schema: "q=2, m in {4,6,8,10}, full d sweep",
        sampled: false,
        domain: Domain::PlusBinary,
        default_grid: binary_grid,
    },
    Claim {
        id: "CLM-T3",
        statement: "Plus family, q > 2: dually-BCH iff d = 2 or d >= d1 (m = 4), iff d >= d1+1 (m > 4)",
        grid_schema: "plus grid with q > 2, full d sweep",
        sampled: false,
        domain: Domain::PlusOddOrEvenQ,
        default_grid: plus_grid_q_gt2,
    },
    Claim {
        id: "CLM-RUP",
        statement: "With q-1 = m*t1 + t2, the base-q digits of sum_t q^(ceil(mt/(q-1))-1) are ceil((q-1)/m) on the positions ceil(m*g/t2)-1 and floor((q-1)/m) elsewhere",
        grid_schema: "minus grid",
        sampled: false,
        domain: Domain::Minus,
        default_grid: minus_grid,
    },
    Claim {
        id: "CLM-THETA",
        statement: "Largest leader modulo (q^m-1)/(q-1) is theta = (q^m - sum_t q^(ceil(mt/(q-1))-1) - 1)/(q-1), and C(q,n,theta) has distance at least theta",
        grid_schema: "q in {3,4,5,7,8,9}, m in {4,5}; m=6 for q in {3,4}",
        sampled: false,
        domain: Domain::Minus,
        default_grid: minus_grid,
    },
    Claim {
        id: "CLM-SZM",
        statement: "The largest minus-family leader has coset size m/gcd(m,q-1), so C(q,n,theta) has dimension that plus one",
        grid_schema: "minus grid",
        sampled: false,
        domain: Domain::Minus,
        default_grid: minus_grid,
    },
    Claim {
        id: "CLM-T5",
        statement: "Minus family, q >= 3: C(q,n,d) is dually-BCH iff d >= theta+1",
        grid_schema: "minus grid, full d sweep",
        sampled: false,
        domain: Domain::Minus,
        default_grid: minus_grid,
    },
];

/// All registered claims, in a fixed order.
pub fn list_claims() -> &'static [Claim] {
    REGISTRY
}

pub fn find_claim(id: &str) -> Result<&'static Claim, VerifyError> {
    REGISTRY
        .iter()
        .find(|c| c.id.eq_ignore_ascii_case(id))
        .ok_or_else(|| VerifyError::UnknownClaim(id.to_string()))
}

/// A checked value. Everything is integral.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Quantity {
    Int(u64),
    Bool(bool),
    Ints(Vec<u64>),
    /// Inclusive `[lo, hi]` ranges.
    Ranges(Vec<[u64; 2]>),
    Missing,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Over budget or outside the claim's stated range.
    Skipped,
    /// Reported but not asserted.
    Info,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Point {
    pub params: BTreeMap<&'static str, u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub aspect: Option<&'static str>,
    pub expected: Quantity,
    pub observed: Quantity,
    pub pass: bool,
    pub status: Status,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub detail: BTreeMap<&'static str, serde_json::Value>,
}

impl Point {
    fn new(q: u64, m: u32) -> Self {
        Point {
            params: BTreeMap::from([("q", q), ("m", m as u64)]),
            aspect: None,
            expected: Quantity::Missing,
            observed: Quantity::Missing,
            pass: false,
            status: Status::Skipped,
            detail: BTreeMap::new(),
        }
    }

    fn param(mut self, key: &'static str, v: u64) -> Self {
        self.params.insert(key, v);
        self
    }

    fn aspect(mut self, a: &'static str) -> Self {
        self.aspect = Some(a);
        self
    }

    fn detail(mut self, key: &'static str, v: impl Into<serde_json::Value>) -> Self {
        self.detail.insert(key, v.into());
        self
    }

    /// Pass iff the two sides are equal.
    fn compare(mut self, expected: Quantity, observed: Quantity) -> Self {
        self.pass = expected == observed;
        self.status = if self.pass {
            Status::Pass
        } else {
            Status::Fail
        };
        self.expected = expected;
        self.observed = observed;
        self
    }

    /// Records both sides without asserting.
    fn info(mut self, expected: Quantity, observed: Quantity) -> Self {
        self.expected = expected;
        self.observed = observed;
        self.pass = false;
        self.status = Status::Info;
        self
    }

    fn skipped(mut self, reason: &str) -> Self {
        self.pass = false;
        self.status = Status::Skipped;
        self.detail.insert("reason", reason.into());
        self
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: u64,
    pub fail: u64,
    pub skipped: u64,
    pub info: u64,
    pub total: u64,
}

impl Summary {
    fn of(points: &[Point]) -> Self {
        let mut s = Summary::default();
        for p in points {
            match p.status {
                Status::Pass => s.pass += 1,
                Status::Fail => s.fail += 1,
                Status::Skipped => s.skipped += 1,
                Status::Info => s.info += 1,
            }
        }
        s.total = points.len() as u64;
        s
    }

    pub fn add(&mut self, other: &Summary) {
        self.pass += other.pass;
        self.fail += other.fail;
        self.skipped += other.skipped;
        self.info += other.info;
        self.total += other.total;
    }
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ClaimReport {
    pub claim_id: &'static str,
    pub statement: &'static str,
    pub points: Vec<Point>,
    pub summary: Summary,
    /// Milliseconds; the only field that varies between identical runs.
    pub wall_time: u64,
}

impl ClaimReport {
    pub fn all_passed(&self) -> bool {
        self.summary.fail == 0
    }
}

/// Explicit grid values replacing the defaults, e.g. from `q=3,q=4,m=4`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GridOverrides {
    pub q: Vec<u64>,
    pub m: Vec<u32>,
}

impl GridOverrides {
    /// Parses comma-separated `key=value` items; keys repeat to list values.
    pub fn parse<S: AsRef<str>>(items: &[S]) -> Result<Self, VerifyError> {
        let mut out = GridOverrides::default();
        for item in items.iter().flat_map(|s| s.as_ref().split(',')) {
            let item = item.trim();
            if item.is_empty() {
                continue;
            }
            let (k, v) = item
                .split_once('=')
                .ok_or_else(|| VerifyError::BadGrid(format!("expected key=value, got {item:?}")))?;
            let bad = || VerifyError::BadGrid(format!("{k}: not a number: {v:?}"));
            match k.trim() {
                "q" => out.q.push(v.trim().parse().map_err(|_| bad())?),
                "m" => out.m.push(v.trim().parse().map_err(|_| bad())?),
                other => {
                    return Err(VerifyError::BadGrid(format!(
                        "unknown grid key {other:?} (expected q or m)"
                    )))
                }
            }
        }
        Ok(out)
    }

    pub fn is_empty(&self) -> bool {
        self.q.is_empty() && self.m.is_empty()
    }
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    /// Largest code size enumerated for distance sub-checks.
    pub budget: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            budget: DEFAULT_BUDGET,
        }
    }
}

impl VerifyOptions {
    /// Codeword count times length allowed per enumeration.
    fn work_limit(&self) -> u64 {
        self.budget.saturating_mul(100)
    }
}

fn resolve_grid(claim: &Claim, overrides: &GridOverrides) -> Result<Vec<(u64, u32)>, VerifyError> {
    let grid = if overrides.is_empty() {
        (claim.default_grid)()
    } else {
        let defaults = (claim.default_grid)();
        let mut qs = overrides.q.clone();
        if qs.is_empty() {
            qs = defaults.iter().map(|p| p.0).collect();
        }
        let mut ms = overrides.m.clone();
        if ms.is_empty() {
            ms = defaults.iter().map(|p| p.1).collect();
        }
        qs.sort_unstable();
        qs.dedup();
        ms.sort_unstable();
        ms.dedup();
        cartesian(&qs, &ms)
    };
    for &(q, m) in &grid {
        validate_point(claim, q, m)?;
    }
    Ok(grid)
}

fn validate_point(claim: &Claim, q: u64, m: u32) -> Result<(), VerifyError> {
    let bad = |msg: String| Err(VerifyError::BadGrid(format!("{}: {msg}", claim.id)));
    if arith::prime_power(q).is_none() {
        return bad(format!("q={q} is not a prime power"));
    }
    match checked_pow(q, m) {
        Some(v) if v <= ORDER_GUARD => {}
        _ => return Err(VerifyError::GridTooLarge { q, m }),
    }
    let plus_ok = m >= 4 && m % 2 == 0;
    match claim.domain {
        Domain::FullModulus if m < 4 => bad(format!("needs m >= 4, got m={m}")),
        Domain::Plus if !plus_ok => bad(format!("needs even m >= 4, got m={m}")),
        Domain::PlusOddOrEvenQ if !plus_ok || q == 2 => {
            bad(format!("needs q > 2 and even m >= 4, got q={q}, m={m}"))
        }
        Domain::PlusBinary if !plus_ok || q != 2 => {
            bad(format!("needs q = 2 and even m >= 4, got q={q}, m={m}"))
        }
        Domain::PlusM4 if m != 4 => bad(format!("needs m = 4, got m={m}")),
        Domain::Minus if q < 3 || m < 4 => {
            bad(format!("needs q >= 3 and m >= 4, got q={q}, m={m}"))
        }
        _ => Ok(()),
    }
}

/// Runs one claim over its grid.
pub fn verify_claim(
    id: &str,
    overrides: &GridOverrides,
    opts: &VerifyOptions,
) -> Result<ClaimReport, VerifyError> {
    let claim = find_claim(id)?;
    let grid = resolve_grid(claim, overrides)?;
    let start = Instant::now();
    let per_point: Vec<Vec<Point>> = grid
        .par_iter()
        .map(|&(q, m)| checks::run(claim.id, q, m, opts))
        .collect::<Result<_, _>>()?;
    let points: Vec<Point> = per_point.into_iter().flatten().collect();
    Ok(ClaimReport {
        claim_id: claim.id,
        statement: claim.statement,
        summary: Summary::of(&points),
        points,
        wall_time: start.elapsed().as_millis() as u64,
    })
}

/// Every claim on its default grid.
pub fn verify_all(opts: &VerifyOptions) -> Result<Vec<ClaimReport>, VerifyError> {
    REGISTRY
        .iter()
        .map(|c| verify_claim(c.id, &GridOverrides::default(), opts))
        .collect()
}

/// Converts contiguous true entries into inclusive ranges.
fn to_ranges(entries: impl IntoIterator<Item = (u64, bool)>) -> Vec<[u64; 2]> {
    let mut out: Vec<[u64; 2]> = Vec::new();
    for (x, on) in entries {
        if !on {
            continue;
        }
        match out.last_mut() {
            Some(r) if r[1] + 1 == x => r[1] = x,
            _ => out.push([x, x]),
        }
    }
    out
}
