//! Exact minimum distances by exhaustive enumeration, weight enumerators, the
//! MacWilliams transform, and the closed-form lower bound on dual distances.
//!
//! Enumeration walks the additive group of the code in p-ary Gray-code order:
//! over GF(p) the code has basis `ω^t · x^j · g(x)`, and every step adds
//! exactly one basis vector, so the Hamming weight is updated from the
//! generator's support alone. The walk is split by fixing the top message
//! digits; the split is independent of the thread count.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::arith::{checked_pow, pow};
use crate::bch::{BchError, CyclicCode};
use crate::cosets::{CosetError, Family};
use crate::gf::{FieldTower, Level, Subfield};

/// Default cap on the number of codewords one enumeration may visit.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// Environment variable overriding [`DEFAULT_BUDGET`].
pub const BUDGET_ENV: &str = "COSETFORGE_BUDGET";

/// Partitions are fixed to at least this many for parallel walks.
const MIN_PARTITIONS: u64 = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DistanceError {
    #[error("enumerating {needed} codewords exceeds the budget of {budget}")]
    BudgetExceeded { needed: String, budget: u64 },
    #[error("MacWilliams transform produced a non-integer at weight {weight}")]
    NonIntegerTransform { weight: usize },
    #[error("weight enumerator sums to {total}, not q^k")]
    InvalidEnumerator { total: String },
    #[error("designed distance {delta} outside 2..={n}")]
    DeltaOutOfRange { delta: u64, n: u64 },
    #[error(transparent)]
    Coset(#[from] CosetError),
    #[error(transparent)]
    Bch(#[from] BchError),
}

/// Budget from [`BUDGET_ENV`] if set and parseable, else [`DEFAULT_BUDGET`].
pub fn budget_from_env() -> u64 {
    std::env::var(BUDGET_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_BUDGET)
}

/// `A_0, …, A_n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeightEnumerator {
    pub n: u64,
    #[serde(serialize_with = "serialize_counts")]
    pub counts: Vec<BigUint>,
}

/// Counts that fit in `u64` are written as numbers, larger ones as strings.
fn serialize_counts<S: Serializer>(counts: &[BigUint], s: S) -> Result<S::Ok, S::Error> {
    let vals: Vec<serde_json::Value> = counts
        .iter()
        .map(|c| match c.to_u64() {
            Some(v) => v.into(),
            None => c.to_string().into(),
        })
        .collect();
    vals.serialize(s)
}

impl WeightEnumerator {
    pub fn total(&self) -> BigUint {
        self.counts.iter().sum()
    }

    /// Smallest nonzero weight with a codeword, if the code is nonzero.
    pub fn min_distance(&self) -> Option<u64> {
        self.counts
            .iter()
            .enumerate()
            .skip(1)
            .find(|(_, c)| !c.is_zero())
            .map(|(i, _)| i as u64)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Method {
    #[serde(rename = "auto")]
    Auto,
    #[serde(rename = "direct-enum")]
    Direct,
    #[serde(rename = "dual-macwilliams")]
    DualMacwilliams,
    #[serde(rename = "bound-only")]
    BoundOnly,
}

impl std::str::FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "auto" => Ok(Method::Auto),
            "direct" | "direct-enum" => Ok(Method::Direct),
            "dual-macwilliams" => Ok(Method::DualMacwilliams),
            "bound-only" => Ok(Method::BoundOnly),
            _ => Err(format!(
                "unknown method {s:?} (expected auto, direct, dual-macwilliams or bound-only)"
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DistanceResult {
    /// Exact minimum distance; `None` for bound-only results and the zero code.
    pub d: Option<u64>,
    /// Never [`Method::Auto`].
    pub method: Method,
    /// Codewords visited, including the zero word.
    pub enumerated: u64,
}

#[derive(Debug, Clone, Copy)]
pub struct DistanceOptions {
    pub method: Method,
    pub budget: u64,
    /// A known lower bound on the distance; direct walks stop once it is met.
    pub lower_bound: u64,
}

impl Default for DistanceOptions {
    fn default() -> Self {
        DistanceOptions {
            method: Method::Auto,
            budget: DEFAULT_BUDGET,
            lower_bound: 1,
        }
    }
}

/// `q^k` if it fits the budget.
fn code_size_within(q: u64, k: u64, budget: u64) -> Option<u64> {
    let k = u32::try_from(k).ok()?;
    checked_pow(q, k).filter(|&s| s <= budget)
}

fn over_budget(q: u64, k: u64, budget: u64) -> DistanceError {
    DistanceError::BudgetExceeded {
        needed: format!("{q}^{k}"),
        budget,
    }
}

/// The minimum distance of `code`, choosing the enumeration path by `opts.method`.
pub fn min_distance_enumerate(
    t: &FieldTower,
    code: &CyclicCode,
    opts: &DistanceOptions,
) -> Result<DistanceResult, DistanceError> {
    let k = code.dimension();
    let direct_ok = code_size_within(code.q, k, opts.budget).is_some();
    let dual_ok = code_size_within(code.q, code.n - k, opts.budget).is_some();
    let use_method = match opts.method {
        Method::Auto if direct_ok => Method::Direct,
        Method::Auto if dual_ok => Method::DualMacwilliams,
        Method::Auto => Method::BoundOnly,
        Method::Direct if !direct_ok => return Err(over_budget(code.q, k, opts.budget)),
        Method::DualMacwilliams if !dual_ok => {
            return Err(over_budget(code.q, code.n - k, opts.budget))
        }
        m => m,
    };
    match use_method {
        Method::Direct => {
            let walker = Walker::new(t, code);
            let (d, enumerated) = walker.min_weight(opts.lower_bound);
            Ok(DistanceResult {
                d,
                method: Method::Direct,
                enumerated,
            })
        }
        Method::DualMacwilliams => {
            let dual = code.dual(t)?;
            let wd = Walker::new(t, &dual).enumerator();
            let enumerated = wd.total().to_u64().unwrap_or(u64::MAX);
            let w = macwilliams_transform(&wd, code.q, code.n - k)?;
            Ok(DistanceResult {
                d: w.min_distance(),
                method: Method::DualMacwilliams,
                enumerated,
            })
        }
        _ => Ok(DistanceResult {
            d: None,
            method: Method::BoundOnly,
            enumerated: 0,
        }),
    }
}

/// Full weight distribution by direct enumeration.
pub fn weight_enumerator(
    t: &FieldTower,
    code: &CyclicCode,
    budget: u64,
) -> Result<WeightEnumerator, DistanceError> {
    let k = code.dimension();
    if code_size_within(code.q, k, budget).is_none() {
        return Err(over_budget(code.q, k, budget));
    }
    Ok(Walker::new(t, code).enumerator())
}

/// Weight enumerator of the dual of an `[n, k]` code over GF(q).
pub fn macwilliams_transform(
    w: &WeightEnumerator,
    q: u64,
    k: u64,
) -> Result<WeightEnumerator, DistanceError> {
    let n = w.n as usize;
    let size = BigInt::from(q).pow(k as u32);
    let total = BigInt::from(w.total());
    if total != size {
        return Err(DistanceError::InvalidEnumerator {
            total: total.to_string(),
        });
    }
    let mut acc = vec![BigInt::zero(); n + 1];
    for (i, a) in w.counts.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        let a = BigInt::from(a.clone());
        for (j, kj) in krawtchouk_row(n, q, i).into_iter().enumerate() {
            acc[j] += &a * kj;
        }
    }
    let counts = acc
        .into_iter()
        .enumerate()
        .map(|(j, v)| {
            if v.is_negative() || !(&v % &size).is_zero() {
                return Err(DistanceError::NonIntegerTransform { weight: j });
            }
            Ok((v / &size).to_biguint().expect("checked nonnegative"))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(WeightEnumerator { n: w.n, counts })
}

/// `K_j(i)` for `j = 0..=n`: coefficients of `(1 + (q-1)z)^(n-i) (1 - z)^i`.
fn krawtchouk_row(n: usize, q: u64, i: usize) -> Vec<BigInt> {
    let mut poly = vec![BigInt::one()];
    let qm1 = BigInt::from(q - 1);
    let mul = |poly: &mut Vec<BigInt>, c: &BigInt, times: usize| {
        for _ in 0..times {
            poly.push(BigInt::zero());
            for d in (1..poly.len()).rev() {
                let prev = poly[d - 1].clone();
                poly[d] += prev * c;
            }
        }
    };
    mul(&mut poly, &qm1, n - i);
    mul(&mut poly, &BigInt::from(-1), i);
    poly
}

/// Lower bound on the dual distance of the narrow-sense plus-family code,
/// taking the largest bound among the ranges containing `δ`.
pub fn dual_bound_closed_form(
    q: u64,
    m: u32,
    family: Family,
    delta: u64,
) -> Result<u64, DistanceError> {
    if family != Family::Plus {
        return Err(CosetError::FamilyConstraint(
            "the dual distance bound is stated for the plus family".into(),
        )
        .into());
    }
    crate::cosets::closed_form::check_plus(q, m)?;
    let n = family.length(q, m)?;
    if delta < 2 || delta > n {
        return Err(DistanceError::DeltaOutOfRange { delta, n });
    }
    let qp1 = q + 1;
    let first = (pow(q, m - 1) + 2 * pow(q, m - 2) - 1) / qp1;
    let mut best: Option<u64> = None;
    let mut take = |v: u64| best = Some(best.map_or(v, |b| b.max(v)));
    if delta < q {
        take(first);
    }
    for t in (0..=m - 2).step_by(2) {
        let lo = (pow(q, t) - 1) / qp1;
        let mid = (pow(q, t + 1) + 2 * pow(q, t) - 1) / qp1;
        if lo < delta && delta <= mid {
            take((pow(q, m - t) - 1) / qp1 + 1);
        }
        if t != m - 2 {
            let hi = (pow(q, t + 2) - 1) / qp1;
            if mid < delta && delta <= hi {
                take((pow(q, m - t - 2) - 1) / qp1 + 1);
            }
        }
    }
    if delta > first {
        take(2);
    }
    Ok(best.expect("the ranges cover 2..=n"))
}

/// Gray-code walk over all codewords of a cyclic code.
struct Walker<'a> {
    sub: &'a Subfield,
    n: usize,
    p: u64,
    /// Basis over GF(p), digit `j·e + t` is `ω^t x^j g`; sparse `(position, value)`.
    basis: Vec<Vec<(u32, u8)>>,
}

impl<'a> Walker<'a> {
    fn new(t: &'a FieldTower, code: &CyclicCode) -> Self {
        assert_eq!(code.generator.level(), Level::Sub);
        let sub = t.subfield();
        let e = sub.degree();
        let k = code.dimension() as usize;
        let g = code.generator.coeffs();
        let mut basis = Vec::with_capacity(k * e as usize);
        for j in 0..k {
            for tt in 0..e {
                let w = sub.generator_pow(tt as u64);
                basis.push(
                    g.iter()
                        .enumerate()
                        .filter(|(_, &c)| c != 0)
                        .map(|(i, &c)| ((i + j) as u32, sub.mul(c as u8, w)))
                        .collect(),
                );
            }
        }
        Walker {
            sub,
            n: code.n as usize,
            p: sub.characteristic(),
            basis,
        }
    }

    /// Number of fixed top digits and of free digits per partition.
    fn split(&self) -> (usize, usize) {
        let d = self.basis.len();
        let mut fixed = 0;
        while fixed < d && pow(self.p, fixed as u32) < MIN_PARTITIONS {
            fixed += 1;
        }
        (fixed, d - fixed)
    }

    /// Visits every codeword of partition `part`, calling `f` with its weight
    /// until `f` returns false. Returns the number visited.
    fn walk(&self, part: u64, free: usize, mut f: impl FnMut(u32) -> bool) -> u64 {
        let mut word = vec![0u8; self.n];
        let mut weight = 0u32;
        let add = |word: &mut [u8], weight: &mut u32, v: &[(u32, u8)]| {
            for &(pos, val) in v {
                let old = word[pos as usize];
                let new = self.sub.add(old, val);
                word[pos as usize] = new;
                *weight = *weight + (new != 0) as u32 - (old != 0) as u32;
            }
        };
        let mut rest = part;
        let mut digit = free;
        while rest > 0 {
            for _ in 0..rest % self.p {
                add(&mut word, &mut weight, &self.basis[digit]);
            }
            rest /= self.p;
            digit += 1;
        }
        let mut visited = 1u64;
        if !f(weight) {
            return visited;
        }
        let steps = pow(self.p, free as u32);
        for s in 1..steps {
            let mut j = 0;
            let mut r = s;
            while r % self.p == 0 {
                r /= self.p;
                j += 1;
            }
            add(&mut word, &mut weight, &self.basis[j]);
            visited += 1;
            if !f(weight) {
                break;
            }
        }
        visited
    }

    fn enumerator(&self) -> WeightEnumerator {
        let (fixed, free) = self.split();
        let parts = pow(self.p, fixed as u32);
        let counts = (0..parts)
            .into_par_iter()
            .map(|part| {
                let mut hist = vec![0u64; self.n + 1];
                self.walk(part, free, |w| {
                    hist[w as usize] += 1;
                    true
                });
                hist
            })
            .reduce(
                || vec![0u64; self.n + 1],
                |mut a, b| {
                    a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                    a
                },
            );
        WeightEnumerator {
            n: self.n as u64,
            counts: counts.into_iter().map(BigUint::from).collect(),
        }
    }

    /// Minimum nonzero weight and codewords visited; each partition stops
    /// early once it sees a word of weight `lower_bound`.
    fn min_weight(&self, lower_bound: u64) -> (Option<u64>, u64) {
        let (fixed, free) = self.split();
        let parts = pow(self.p, fixed as u32);
        let (best, visited) = (0..parts)
            .into_par_iter()
            .map(|part| {
                let mut best = u32::MAX;
                let visited = self.walk(part, free, |w| {
                    if w != 0 && w < best {
                        best = w;
                    }
                    (best as u64) > lower_bound
                });
                (best, visited)
            })
            .reduce(|| (u32::MAX, 0), |a, b| (a.0.min(b.0), a.1 + b.1));
        ((best != u32::MAX).then_some(best as u64), visited)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bch::BchCode;
    use crate::gf::Polynomial;

    fn counts(v: &[u64]) -> Vec<BigUint> {
        v.iter().map(|&x| BigUint::from(x)).collect()
    }

    #[test]
    fn macwilliams_classical_pair() {
        let rep = WeightEnumerator {
            n: 3,
            counts: counts(&[1, 0, 0, 1]),
        };
        let even = macwilliams_transform(&rep, 2, 1).unwrap();
        assert_eq!(even.counts, counts(&[1, 0, 3, 0]));
        assert_eq!(macwilliams_transform(&even, 2, 2).unwrap(), rep);
        let bad = WeightEnumerator {
            n: 3,
            counts: counts(&[1, 3, 0, 0]),
        };
        assert!(matches!(
            macwilliams_transform(&bad, 2, 2),
            Err(DistanceError::NonIntegerTransform { .. })
        ));
    }

    #[test]
    fn repetition_code() {
        let t = FieldTower::for_q(2, 6).unwrap();
        let g = Polynomial::new(Level::Sub, vec![1; 21]);
        let code = CyclicCode {
            q: 2,
            n: 21,
            generator: g,
        };
        let w = weight_enumerator(&t, &code, 100).unwrap();
        assert_eq!(w.counts[0], BigUint::from(1u32));
        assert_eq!(w.counts[21], BigUint::from(1u32));
        assert_eq!(w.total(), BigUint::from(2u32));
        let r = min_distance_enumerate(&t, &code, &DistanceOptions::default()).unwrap();
        assert_eq!(r.d, Some(21));
    }

    #[test]
    fn zero_code() {
        let t = FieldTower::for_q(2, 6).unwrap();
        let g = t.x_n_minus_one(Level::Sub, 21);
        let code = CyclicCode {
            q: 2,
            n: 21,
            generator: g,
        };
        let w = weight_enumerator(&t, &code, 100).unwrap();
        assert_eq!(w.counts[0], BigUint::from(1u32));
        assert_eq!(w.total(), BigUint::from(1u32));
        assert_eq!(w.min_distance(), None);
    }

    #[test]
    fn enumeration_counts_match_dimension() {
        let (t, code) = BchCode::narrow_sense(3, 4, Family::Plus, 11).unwrap();
        let w = weight_enumerator(&t, &code.cyclic(), 1000).unwrap();
        assert_eq!(w.total(), BigUint::from(243u32));
        assert!(w.min_distance().unwrap() >= 11);
    }

    #[test]
    fn gf4_enumeration_visits_every_word() {
        let (t, code) = BchCode::narrow_sense(4, 4, Family::Plus, 35).unwrap();
        let w = weight_enumerator(&t, &code.cyclic(), 2000).unwrap();
        assert_eq!(w.total(), BigUint::from(1024u32));
    }

    #[test]
    fn dual_distances() {
        let (t, code) = BchCode::narrow_sense(3, 4, Family::Plus, 2).unwrap();
        let dual = code.cyclic().dual(&t).unwrap();
        let r = min_distance_enumerate(&t, &dual, &DistanceOptions::default()).unwrap();
        assert_eq!((r.d, r.method), (Some(12), Method::Direct));
    }

    #[test]
    fn macwilliams_path_matches_direct() {
        let (t, code) = BchCode::narrow_sense(2, 6, Family::Plus, 9).unwrap();
        let dual = code.cyclic().dual(&t).unwrap();
        assert_eq!(dual.dimension(), 17);
        let direct = DistanceOptions {
            method: Method::Direct,
            ..Default::default()
        };
        let via = DistanceOptions {
            method: Method::DualMacwilliams,
            ..Default::default()
        };
        let a = min_distance_enumerate(&t, &dual, &direct).unwrap();
        let b = min_distance_enumerate(&t, &dual, &via).unwrap();
        assert_eq!(a.d, b.d);
        assert_eq!(b.enumerated, 16);
        let wd = weight_enumerator(&t, &dual, u64::MAX).unwrap();
        let wp = weight_enumerator(&t, &code.cyclic(), u64::MAX).unwrap();
        assert_eq!(macwilliams_transform(&wp, 2, 4).unwrap(), wd);
    }

    #[test]
    fn budget_paths() {
        let (t, code) = BchCode::narrow_sense(3, 4, Family::Plus, 2).unwrap();
        let tight = DistanceOptions {
            budget: 10,
            ..Default::default()
        };
        let r = min_distance_enumerate(&t, &code.cyclic(), &tight).unwrap();
        assert_eq!(r.method, Method::BoundOnly);
        let direct = DistanceOptions {
            method: Method::Direct,
            budget: 10,
            ..Default::default()
        };
        assert!(matches!(
            min_distance_enumerate(&t, &code.cyclic(), &direct),
            Err(DistanceError::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn closed_form_bound_examples() {
        assert_eq!(dual_bound_closed_form(3, 4, Family::Plus, 2).unwrap(), 11);
        assert_eq!(dual_bound_closed_form(2, 6, Family::Plus, 2).unwrap(), 6);
        assert_eq!(dual_bound_closed_form(3, 4, Family::Plus, 12).unwrap(), 2);
        assert!(dual_bound_closed_form(3, 4, Family::Minus, 2).is_err());
        assert!(dual_bound_closed_form(3, 4, Family::Plus, 21).is_err());
    }
}
