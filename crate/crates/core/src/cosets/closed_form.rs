//! Closed-form coset leaders, coset sizes and break points for the two length
//! families. Nothing here enumerates cosets; the brute-force counterparts are
//! in the parent module.

use serde::Serialize;

use super::{CosetError, Family};
use crate::arith::{self, ceil_div, gcd, pow};

fn require(cond: bool, msg: impl FnOnce() -> String) -> Result<(), CosetError> {
    if cond {
        Ok(())
    } else {
        Err(CosetError::FamilyConstraint(msg()))
    }
}

fn check_q_m(q: u64, m: u32) -> Result<(), CosetError> {
    require(arith::prime_power(q).is_some(), || {
        format!("q={q} is not a prime power")
    })?;
    arith::checked_pow(q, m).ok_or(CosetError::Overflow { q, m })?;
    Ok(())
}

/// Plus family closed forms need `m ≥ 4` even.
pub fn check_plus(q: u64, m: u32) -> Result<(), CosetError> {
    check_q_m(q, m)?;
    require(m >= 4 && m % 2 == 0, || {
        format!("plus family closed forms need even m >= 4, got m={m}")
    })
}

/// Minus family closed forms need `q ≥ 3` and `m ≥ 4`.
pub fn check_minus(q: u64, m: u32) -> Result<(), CosetError> {
    check_q_m(q, m)?;
    require(q >= 3, || format!("minus family needs q >= 3, got q={q}"))?;
    require(m >= 4, || {
        format!("minus family closed forms need m >= 4, got m={m}")
    })
}

fn check_family(q: u64, m: u32, family: Family) -> Result<(), CosetError> {
    match family {
        Family::Plus => check_plus(q, m),
        Family::Minus => check_minus(q, m),
        Family::Raw => Err(CosetError::FamilyConstraint(
            "closed forms exist only for the plus and minus families".into(),
        )),
    }
}

/// The three largest leaders modulo `q^m - 1`, descending.
pub fn full_modulus_top3(q: u64, m: u32) -> Result<[u64; 3], CosetError> {
    check_q_m(q, m)?;
    require(m >= 4, || format!("needs m >= 4, got m={m}"))?;
    let base = (q - 1) * pow(q, m - 1) - 1;
    Ok([
        base,
        base - pow(q, (m - 1) / 2),
        base - pow(q, m.div_ceil(2)),
    ])
}

/// `Σ_{t=1}^{q-1} q^(⌈mt/(q-1)⌉ - 1)`.
pub fn theta_exponent_sum(q: u64, m: u32) -> u64 {
    (1..q)
        .map(|t| pow(q, (ceil_div(m as u64 * t, q - 1) - 1) as u32))
        .sum()
}

/// Largest coset leader modulo `n` for the family.
pub fn delta1_closed_form(q: u64, m: u32, family: Family) -> Result<u64, CosetError> {
    check_family(q, m, family)?;
    Ok(match family {
        Family::Plus => {
            let top = (q - 1) * pow(q, m - 1) - 1;
            let cut = if m % 4 == 2 {
                pow(q, (m - 2) / 2)
            } else {
                pow(q, m / 2)
            };
            (top - cut) / (q + 1)
        }
        Family::Minus => (pow(q, m) - theta_exponent_sum(q, m) - 1) / (q - 1),
        Family::Raw => unreachable!(),
    })
}

/// `|C_δ₁|` for the family's largest leader.
pub fn delta1_coset_size_closed_form(q: u64, m: u32, family: Family) -> Result<u64, CosetError> {
    check_family(q, m, family)?;
    let m = m as u64;
    Ok(match family {
        Family::Plus if m % 4 == 0 => m,
        Family::Plus => m / 2,
        Family::Minus => m / gcd(m, q - 1),
        Family::Raw => unreachable!(),
    })
}

/// Second largest leader modulo `(q^4 - 1)/(q + 1)` for odd `q`.
pub fn second_largest_m4_plus(q: u64) -> Result<u64, CosetError> {
    check_plus(q, 4)?;
    require(q % 2 == 1, || format!("stated for odd q only, got q={q}"))?;
    Ok(second_largest_m4_plus_formula(q))
}

/// The same formula without the odd-`q` restriction, for reporting.
pub fn second_largest_m4_plus_formula(q: u64) -> u64 {
    ((q - 1) * pow(q, 3) - q * q - q - 2) / (q + 1)
}

/// Digits of [`theta_exponent_sum`] predicted from `q - 1 = m·t1 + t2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ThetaDigits {
    /// `a_{m-1}, …, a_0`.
    pub digits: Vec<u64>,
    /// Positions carrying the rounded-up digit; empty when `t2 = 0`.
    pub upsilon: Vec<u64>,
    pub t1: u64,
    pub t2: u64,
}

pub fn theta_digits(q: u64, m: u32) -> Result<ThetaDigits, CosetError> {
    check_minus(q, m)?;
    let mm = m as u64;
    let (t1, t2) = ((q - 1) / mm, (q - 1) % mm);
    let upsilon: Vec<u64> = (1..=t2).map(|g| ceil_div(mm * g, t2) - 1).collect();
    let digits = (0..mm)
        .rev()
        .map(|i| if upsilon.contains(&i) { t1 + 1 } else { t1 })
        .collect();
    Ok(ThetaDigits {
        digits,
        upsilon,
        t1,
        t2,
    })
}

/// One member of the plus-family leader list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LeaderFamilyMember {
    pub label: &'static str,
    /// `l` or `t` for the parametrised members, 0 otherwise.
    pub param: u32,
    /// Reduced modulo `n`.
    pub value: u64,
    /// False for odd `l > m/2`, where `(q^l+1)/(q+1)` is generally not a leader.
    pub claimed: bool,
}

/// Values asserted to be leaders modulo `(q^m - 1)/(q + 1)`.
pub fn plus_leader_families(q: u64, m: u32) -> Result<Vec<LeaderFamilyMember>, CosetError> {
    check_plus(q, m)?;
    let n = (pow(q, m) - 1) / (q + 1);
    let all_ones: u64 = (0..m).map(|i| pow(q, i)).sum();
    let mut out = Vec::new();
    for l in (1..m).step_by(2) {
        out.push(LeaderFamilyMember {
            label: "(q^l+1)/(q+1)",
            param: l,
            value: ((pow(q, l) + 1) / (q + 1)) % n,
            claimed: 2 * l <= m,
        });
    }
    for t in (2..m).step_by(2) {
        out.push(LeaderFamilyMember {
            label: "(q^t-1)/(q+1)",
            param: t,
            value: ((pow(q, t) - 1) / (q + 1)) % n,
            claimed: true,
        });
    }
    out.push(LeaderFamilyMember {
        label: "sum(q^i)/(q+1)",
        param: 0,
        value: (all_ones / (q + 1)) % n,
        claimed: true,
    });
    out.push(LeaderFamilyMember {
        label: "(q-2)sum(q^i)/(q+1)",
        param: 0,
        value: ((q - 2) * all_ones / (q + 1)) % n,
        claimed: true,
    });
    out.push(LeaderFamilyMember {
        label: "(q^m-q^(m-1)-q^(m-2)-1)/(q+1)",
        param: 0,
        value: ((pow(q, m) - pow(q, m - 1) - pow(q, m - 2) - 1) / (q + 1)) % n,
        claimed: true,
    });
    Ok(out)
}

/// A range of designed distances `lo < δ ≤ hi` with its predicted `I(δ)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Bracket {
    pub t: u32,
    /// Exclusive.
    pub lo: u64,
    /// Inclusive.
    pub hi: u64,
    pub value: u64,
}

impl Bracket {
    pub fn contains(&self, delta: u64) -> bool {
        self.lo < delta && delta <= self.hi
    }
}

/// Plus family: `I(δ) = (q^(m-t) - 1)/(q + 1)` on
/// `(q^t - 1)/(q + 1) < δ ≤ (q^(t+1) + 2q^t - 1)/(q + 1)`, `t` even in `2..=m-2`.
pub fn plus_break_brackets(q: u64, m: u32) -> Result<Vec<Bracket>, CosetError> {
    check_plus(q, m)?;
    Ok((2..=m - 2)
        .step_by(2)
        .map(|t| Bracket {
            t,
            lo: (pow(q, t) - 1) / (q + 1),
            hi: (pow(q, t + 1) + 2 * pow(q, t) - 1) / (q + 1),
            value: (pow(q, m - t) - 1) / (q + 1),
        })
        .collect())
}

/// Minus family: `I(δ) = (q^(m-t) - 1)/(q - 1)` on
/// `(q^t - 1)/(q - 1) < δ ≤ (q^(t+1) - 1)/(q - 1)` for `1 ≤ t ≤ m - 2`, and
/// `I(δ) = 1` on `(q^(m-1) - 1)/(q - 1) < δ < n` (reported as `t = m - 1`).
pub fn minus_break_brackets(q: u64, m: u32) -> Result<Vec<Bracket>, CosetError> {
    check_minus(q, m)?;
    let n = (pow(q, m) - 1) / (q - 1);
    let mut out: Vec<Bracket> = (1..=m - 2)
        .map(|t| Bracket {
            t,
            lo: (pow(q, t) - 1) / (q - 1),
            hi: (pow(q, t + 1) - 1) / (q - 1),
            value: (pow(q, m - t) - 1) / (q - 1),
        })
        .collect();
    out.push(Bracket {
        t: m - 1,
        lo: (pow(q, m - 1) - 1) / (q - 1),
        hi: n - 1,
        value: 1,
    });
    Ok(out)
}

/// Designed distances for which the narrow-sense code is predicted to be
/// dually-BCH, as an inclusive range list.
pub fn dually_bch_ranges(q: u64, m: u32, family: Family) -> Result<Vec<(u64, u64)>, CosetError> {
    let d1 = delta1_closed_form(q, m, family)?;
    let n = family.length(q, m)?;
    Ok(match family {
        Family::Plus if q > 2 && m == 4 => {
            // δ = 2, then δ₁ ≤ δ ≤ n; merge when δ₁ ≤ 3.
            if d1 <= 3 {
                vec![(2, n)]
            } else {
                vec![(2, 2), (d1, n)]
            }
        }
        _ => vec![((d1 + 1).max(2), n)],
    })
}

/// Membership form of [`dually_bch_ranges`].
pub fn dually_bch_predicted(
    q: u64,
    m: u32,
    family: Family,
    delta: u64,
) -> Result<bool, CosetError> {
    Ok(dually_bch_ranges(q, m, family)?
        .iter()
        .any(|&(lo, hi)| lo <= delta && delta <= hi))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn delta1_examples() {
        assert_eq!(delta1_closed_form(3, 4, Family::Plus).unwrap(), 11);
        assert_eq!(delta1_closed_form(4, 4, Family::Plus).unwrap(), 35);
        assert_eq!(delta1_closed_form(5, 4, Family::Plus).unwrap(), 79);
        assert_eq!(delta1_closed_form(2, 6, Family::Plus).unwrap(), 9);
        assert_eq!(delta1_closed_form(3, 4, Family::Minus).unwrap(), 25);
        assert!(delta1_closed_form(3, 5, Family::Plus).is_err());
        assert!(delta1_closed_form(2, 4, Family::Minus).is_err());
        assert!(delta1_closed_form(3, 4, Family::Raw).is_err());
    }

    #[test]
    fn size_examples() {
        assert_eq!(
            delta1_coset_size_closed_form(3, 4, Family::Plus).unwrap(),
            4
        );
        assert_eq!(
            delta1_coset_size_closed_form(2, 6, Family::Plus).unwrap(),
            3
        );
        assert_eq!(
            delta1_coset_size_closed_form(3, 4, Family::Minus).unwrap(),
            2
        );
    }

    #[test]
    fn second_largest_examples() {
        assert_eq!(second_largest_m4_plus(3).unwrap(), 10);
        assert_eq!(second_largest_m4_plus(5).unwrap(), 78);
        assert_eq!(second_largest_m4_plus(7).unwrap(), 250);
        assert!(second_largest_m4_plus(4).is_err());
    }

    #[test]
    fn theta_digit_examples() {
        let d = theta_digits(5, 4).unwrap();
        assert_eq!((d.t2, d.digits.clone()), (0, vec![1, 1, 1, 1]));
        let d = theta_digits(4, 4).unwrap();
        assert_eq!(d.t2, 3);
        assert_eq!(d.upsilon, vec![1, 2, 3]);
        assert_eq!(d.digits, vec![1, 1, 1, 0]);
        assert_eq!(theta_exponent_sum(4, 4), 84);
        let d = theta_digits(3, 4).unwrap();
        assert_eq!((d.t2, d.upsilon.clone()), (2, vec![1, 3]));
        assert_eq!(d.digits, vec![1, 0, 1, 0]);
        assert_eq!(theta_exponent_sum(3, 4), 30);
    }

    #[test]
    fn top3_example() {
        assert_eq!(full_modulus_top3(2, 6).unwrap(), [31, 27, 23]);
    }

    #[test]
    fn predicted_ranges() {
        assert_eq!(
            dually_bch_ranges(2, 6, Family::Plus).unwrap(),
            vec![(10, 21)]
        );
        assert_eq!(
            dually_bch_ranges(3, 4, Family::Plus).unwrap(),
            vec![(2, 2), (11, 20)]
        );
        assert_eq!(
            dually_bch_ranges(3, 4, Family::Minus).unwrap(),
            vec![(26, 40)]
        );
        assert_eq!(dually_bch_ranges(2, 4, Family::Plus).unwrap(), vec![(2, 5)]);
    }

    #[test]
    fn brackets() {
        let b = plus_break_brackets(2, 6).unwrap();
        assert_eq!(
            b[0],
            Bracket {
                t: 2,
                lo: 1,
                hi: 5,
                value: 5
            }
        );
        let b = minus_break_brackets(3, 4).unwrap();
        assert_eq!(
            b[0],
            Bracket {
                t: 1,
                lo: 1,
                hi: 4,
                value: 13
            }
        );
        assert_eq!(b.last().unwrap().value, 1);
    }
}
