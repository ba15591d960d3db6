//! q-cyclotomic cosets modulo `n`, coset leaders and q-adic digit tooling.
//!
//! Everything in this file is brute force and accepts any modulus coprime to
//! `q`. The formulas for specific leaders live in [`closed_form`].

pub mod closed_form;

use serde::Serialize;
use thiserror::Error;

use crate::arith::{self, mul_mod};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CosetError {
    #[error("gcd({n}, {q}) != 1")]
    NotCoprime { q: u64, n: u64 },
    #[error("modulus must be positive")]
    ZeroModulus,
    #[error("base q must be at least 2, got {0}")]
    BadBase(u64),
    #[error("{value} is out of range (must be < {bound})")]
    OutOfRange { value: u64, bound: u64 },
    #[error("{0}")]
    FamilyConstraint(String),
    #[error("{divisor} does not divide {h}")]
    NotDivisible { h: u64, divisor: u64 },
    #[error("q^m overflows for q={q}, m={m}")]
    Overflow { q: u64, m: u32 },
}

/// The two code-length families, plus explicit lengths.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    /// `n = (q^m - 1)/(q + 1)`, `m` even.
    Plus,
    /// `n = (q^m - 1)/(q - 1)`, `q ≥ 3`.
    Minus,
    /// Any `n` coprime to `q`.
    Raw,
}

impl Family {
    /// Code length for the family. `Raw` has no formula and is rejected.
    pub fn length(self, q: u64, m: u32) -> Result<u64, CosetError> {
        if arith::prime_power(q).is_none() {
            return Err(CosetError::FamilyConstraint(format!(
                "q={q} is not a prime power"
            )));
        }
        let qm = arith::checked_pow(q, m).ok_or(CosetError::Overflow { q, m })?;
        match self {
            Family::Plus => {
                if m == 0 || m % 2 != 0 {
                    return Err(CosetError::FamilyConstraint(format!(
                        "plus family needs even m, got m={m}"
                    )));
                }
                Ok((qm - 1) / (q + 1))
            }
            Family::Minus => {
                if q < 3 {
                    return Err(CosetError::FamilyConstraint(format!(
                        "minus family needs q >= 3, got q={q}"
                    )));
                }
                if m == 0 {
                    return Err(CosetError::FamilyConstraint("m must be positive".into()));
                }
                Ok((qm - 1) / (q - 1))
            }
            Family::Raw => Err(CosetError::FamilyConstraint(
                "raw family has no length formula; pass n explicitly".into(),
            )),
        }
    }

    /// `q + 1` or `q - 1`: the factor relating `n` to `q^m - 1`.
    pub fn divisor(self, q: u64) -> Option<u64> {
        match self {
            Family::Plus => Some(q + 1),
            Family::Minus => Some(q - 1),
            Family::Raw => None,
        }
    }
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Family::Plus => "plus",
            Family::Minus => "minus",
            Family::Raw => "raw",
        })
    }
}

impl std::str::FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "plus" => Ok(Family::Plus),
            "minus" => Ok(Family::Minus),
            "raw" => Ok(Family::Raw),
            other => Err(format!("unknown family {other:?} (plus, minus, raw)")),
        }
    }
}

fn check_params(q: u64, n: u64) -> Result<(), CosetError> {
    if q < 2 {
        return Err(CosetError::BadBase(q));
    }
    if n == 0 {
        return Err(CosetError::ZeroModulus);
    }
    if arith::gcd(q, n) != 1 {
        return Err(CosetError::NotCoprime { q, n });
    }
    Ok(())
}

fn check_residue(s: u64, n: u64) -> Result<(), CosetError> {
    if s >= n {
        return Err(CosetError::OutOfRange { value: s, bound: n });
    }
    Ok(())
}

/// The orbit of `s` under multiplication by `q` modulo `n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CyclotomicCoset {
    pub n: u64,
    pub q: u64,
    pub leader: u64,
    /// Sorted ascending.
    pub elements: Vec<u64>,
}

impl CyclotomicCoset {
    pub fn size(&self) -> usize {
        self.elements.len()
    }
}

pub fn cyclotomic_coset(q: u64, n: u64, s: u64) -> Result<CyclotomicCoset, CosetError> {
    check_params(q, n)?;
    check_residue(s, n)?;
    let mut elements = orbit(q, n, s);
    elements.sort_unstable();
    Ok(CyclotomicCoset {
        n,
        q,
        leader: elements[0],
        elements,
    })
}

/// Orbit in generation order `s, sq, sq^2, …`.
pub(crate) fn orbit(q: u64, n: u64, s: u64) -> Vec<u64> {
    let mut out = vec![s];
    let mut x = mul_mod(s, q, n);
    while x != s {
        out.push(x);
        x = mul_mod(x, q, n);
    }
    out
}

/// `s·q^ℓ mod n ≥ s` for every `ℓ`.
pub fn is_coset_leader(q: u64, n: u64, s: u64) -> Result<bool, CosetError> {
    check_params(q, n)?;
    check_residue(s, n)?;
    let mut x = mul_mod(s, q, n);
    while x != s {
        if x < s {
            return Ok(false);
        }
        x = mul_mod(x, q, n);
    }
    Ok(true)
}

/// Partition of `Z_n` into cyclotomic cosets, computed by a single sieve.
#[derive(Debug, Clone)]
pub struct CosetTable {
    q: u64,
    n: u64,
    leader_of: Vec<u32>,
    leaders: Vec<u64>,
}

impl CosetTable {
    pub fn new(q: u64, n: u64) -> Result<Self, CosetError> {
        check_params(q, n)?;
        if n > u32::MAX as u64 {
            return Err(CosetError::OutOfRange {
                value: n,
                bound: u32::MAX as u64,
            });
        }
        let mut leader_of = vec![u32::MAX; n as usize];
        let mut leaders = Vec::new();
        for s in 0..n {
            if leader_of[s as usize] != u32::MAX {
                continue;
            }
            leaders.push(s);
            let mut x = s;
            loop {
                leader_of[x as usize] = s as u32;
                x = mul_mod(x, q, n);
                if x == s {
                    break;
                }
            }
        }
        Ok(CosetTable {
            q,
            n,
            leader_of,
            leaders,
        })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    /// All leaders, ascending.
    pub fn leaders(&self) -> &[u64] {
        &self.leaders
    }

    pub fn leader_of(&self, s: u64) -> u64 {
        self.leader_of[(s % self.n) as usize] as u64
    }

    pub fn is_leader(&self, s: u64) -> bool {
        self.leader_of(s) == s % self.n
    }

    /// The coset containing `s`, in generation order starting at `s`.
    pub fn orbit(&self, s: u64) -> Vec<u64> {
        orbit(self.q, self.n, s % self.n)
    }

    pub fn coset(&self, s: u64) -> CyclotomicCoset {
        let mut elements = self.orbit(s);
        elements.sort_unstable();
        CyclotomicCoset {
            n: self.n,
            q: self.q,
            leader: elements[0],
            elements,
        }
    }

    /// The `k` largest leaders, descending.
    pub fn top_k(&self, k: usize) -> Vec<u64> {
        self.leaders.iter().rev().take(k).copied().collect()
    }
}

pub fn coset_leaders(q: u64, n: u64) -> Result<Vec<u64>, CosetError> {
    Ok(CosetTable::new(q, n)?.leaders)
}

pub fn top_k_leaders(q: u64, n: u64, k: usize) -> Result<Vec<u64>, CosetError> {
    Ok(CosetTable::new(q, n)?.top_k(k))
}

/// Base-`q` expansion with exactly `m` digits, most significant first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QAdic {
    pub value: u64,
    pub q: u64,
    pub m: u32,
    pub digits: Vec<u64>,
}

pub fn q_adic(a: u64, q: u64, m: u32) -> Result<QAdic, CosetError> {
    if q < 2 {
        return Err(CosetError::BadBase(q));
    }
    let bound = arith::checked_pow(q, m).ok_or(CosetError::Overflow { q, m })?;
    if a >= bound {
        return Err(CosetError::OutOfRange { value: a, bound });
    }
    let mut digits = vec![0u64; m as usize];
    let mut r = a;
    for d in digits.iter_mut().rev() {
        *d = r % q;
        r /= q;
    }
    Ok(QAdic {
        value: a,
        q,
        m,
        digits,
    })
}

/// Lexicographic comparison of digit vectors, most significant digit first.
pub fn q_adic_gt(a: u64, b: u64, q: u64, m: u32) -> Result<bool, CosetError> {
    let (da, db) = (q_adic(a, q, m)?, q_adic(b, q, m)?);
    for (x, y) in da.digits.iter().zip(&db.digits) {
        if x != y {
            return Ok(x > y);
        }
    }
    Ok(false)
}

/// Whether `h` is a leader modulo `q^m - 1` exactly when `h / divisor` is a
/// leader modulo `(q^m - 1)/divisor`. Always true; exposed for the harness.
pub fn lift_correspondence_check(q: u64, m: u32, h: u64, divisor: u64) -> Result<bool, CosetError> {
    let full = arith::checked_pow(q, m).ok_or(CosetError::Overflow { q, m })? - 1;
    if divisor == 0 || full % divisor != 0 || h % divisor != 0 {
        return Err(CosetError::NotDivisible { h, divisor });
    }
    let n = full / divisor;
    check_residue(h, full)?;
    Ok(is_coset_leader(q, full, h)? == is_coset_leader(q, n, h / divisor)?)
}
