//! Finite-field tower GF(p) ⊂ GF(q) ⊂ GF(q^m) and dense polynomial algebra.
//!
//! Every element of GF(q^m) is stored *packed*: the coefficient vector
//! `(c_0, …, c_{D-1})` of its residue modulo the primitive modulus, read as
//! the base-`p` integer `Σ c_i p^i`. The primitive element α is the residue
//! of `x`, and log/antilog tables keyed by α give O(1) multiplication.
//!
//! GF(q) elements are stored as *subfield indices*: `0` is zero and `k ≥ 1`
//! stands for `ω^(k-1)` where `ω = α^g`, `g = (q^m - 1)/(q - 1)`. GF(p)
//! elements are plain residues `0..p`.

use serde::Serialize;
use thiserror::Error;

use crate::arith::{self, checked_pow};

/// Upper bound on `p^(e·m)` so that the log tables stay a few hundred MB at most.
pub const ORDER_GUARD: u64 = 1 << 26;

/// Largest `q` for which GF(q) lookup tables are built.
pub const SUBFIELD_LIMIT: u64 = 256;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GfError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("field order {p}^{degree} exceeds the table guard 2^26")]
    OrderTooLarge { p: u64, degree: u32 },
    #[error("extension degrees must be positive (e={e}, m={m})")]
    ZeroDegree { e: u32, m: u32 },
    #[error("subfield GF({0}) is larger than the supported {SUBFIELD_LIMIT}")]
    SubfieldTooLarge(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("polynomial levels differ: {left:?} vs {right:?}")]
    LevelMismatch { left: Level, right: Level },
    #[error("reduction modulo the zero polynomial")]
    ModByZero,
    #[error("{n} does not divide q^m - 1 = {group_order}")]
    NotADivisor { n: u64, group_order: u64 },
    #[error("value {value} is not an element of {level:?}")]
    NotAnElement { level: Level, value: u32 },
    #[error("coefficient {value} of a minimal polynomial escaped GF(q)")]
    CoefficientEscape { value: u32 },
}

/// Which field of the tower a polynomial's coefficients live in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    /// GF(p), residues `0..p`.
    Prime,
    /// GF(q), subfield indices `0..q`.
    Sub,
    /// GF(q^m), packed vectors `0..p^(e·m)`.
    Ext,
}

/// Lookup tables for GF(q) in subfield-index form.
#[derive(Debug, Clone)]
pub struct Subfield {
    q: usize,
    p: u64,
    e: u32,
    add: Vec<u8>,
    neg: Vec<u8>,
    lift: Vec<u32>,
}

impl Subfield {
    pub fn order(&self) -> usize {
        self.q
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    /// Degree of GF(q) over GF(p).
    pub fn degree(&self) -> u32 {
        self.e
    }

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: u8) -> u8 {
        self.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: u8, b: u8) -> u8 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        if a == 0 || b == 0 {
            return 0;
        }
        let qm1 = self.q - 1;
        ((a as usize - 1 + b as usize - 1) % qm1 + 1) as u8
    }

    pub fn inv(&self, a: u8) -> Result<u8, GfError> {
        if a == 0 {
            return Err(GfError::DivisionByZero);
        }
        let qm1 = self.q - 1;
        Ok(((qm1 - (a as usize - 1)) % qm1 + 1) as u8)
    }

    /// `ω^k` as a subfield index.
    pub fn generator_pow(&self, k: u64) -> u8 {
        (k % (self.q as u64 - 1) + 1) as u8
    }

    /// The packed GF(q^m) element a subfield index stands for.
    pub fn lift(&self, a: u8) -> u32 {
        self.lift[a as usize]
    }
}

/// GF(p) ⊂ GF(q = p^e) ⊂ GF(q^m) with a fixed primitive element α.
#[derive(Debug, Clone)]
pub struct FieldTower {
    p: u64,
    e: u32,
    m: u32,
    modulus: Vec<u32>,
    order: u64,
    antilog: Vec<u32>,
    log: Vec<u32>,
    subfield_gen_exp: u64,
    sub: Subfield,
}

/// Serializable summary of a tower for reports.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TowerSummary {
    pub p: u64,
    pub e: u32,
    pub m: u32,
    pub modulus: Vec<u32>,
}

impl FieldTower {
    /// Builds the tower using the lexicographically smallest primitive
    /// polynomial of degree `e·m` over GF(p).
    pub fn new(p: u64, e: u32, m: u32) -> Result<Self, GfError> {
        if !arith::is_prime(p) {
            return Err(GfError::NotPrime(p));
        }
        if e == 0 || m == 0 {
            return Err(GfError::ZeroDegree { e, m });
        }
        let degree = e * m;
        let order = checked_pow(p, degree)
            .filter(|&o| o <= ORDER_GUARD)
            .ok_or(GfError::OrderTooLarge { p, degree })?;
        let q = arith::pow(p, e);
        if q > SUBFIELD_LIMIT {
            return Err(GfError::SubfieldTooLarge(q));
        }

        let modulus = smallest_primitive(p, degree as usize, order);
        let (antilog, log) = build_tables(p, &modulus, order);
        let subfield_gen_exp = (order - 1) / (q - 1);

        let mut tower = FieldTower {
            p,
            e,
            m,
            modulus: modulus.iter().map(|&c| c as u32).collect(),
            order,
            antilog,
            log,
            subfield_gen_exp,
            sub: Subfield {
                q: q as usize,
                p,
                e,
                add: Vec::new(),
                neg: Vec::new(),
                lift: Vec::new(),
            },
        };
        tower.sub = tower.build_subfield();
        Ok(tower)
    }

    /// Tower for GF(q^m) given `q` as a prime power.
    pub fn for_q(q: u64, m: u32) -> Result<Self, GfError> {
        let (p, e) = arith::prime_power(q).ok_or(GfError::NotPrime(q))?;
        Self::new(p, e, m)
    }

    fn build_subfield(&self) -> Subfield {
        let q = arith::pow(self.p, self.e) as usize;
        let mut lift = vec![0u32; q];
        for (k, slot) in lift.iter_mut().enumerate().skip(1) {
            *slot = self.alpha_pow(self.subfield_gen_exp * (k as u64 - 1));
        }
        let index_of = |x: u32| -> u8 {
            if x == 0 {
                0
            } else {
                let l = self.log[x as usize] as u64;
                debug_assert_eq!(l % self.subfield_gen_exp, 0);
                (l / self.subfield_gen_exp + 1) as u8
            }
        };
        let mut add = vec![0u8; q * q];
        for a in 0..q {
            for b in 0..q {
                add[a * q + b] = index_of(self.add(lift[a], lift[b]));
            }
        }
        let neg = (0..q).map(|a| index_of(self.neg(lift[a]))).collect();
        Subfield {
            q,
            p: self.p,
            e: self.e,
            add,
            neg,
            lift,
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// `q = p^e`.
    pub fn q(&self) -> u64 {
        self.sub.q as u64
    }

    /// `p^(e·m)`, the size of the top field.
    pub fn order(&self) -> u64 {
        self.order
    }

    /// Ascending coefficients of the primitive modulus over GF(p).
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// `g` such that `α^g` generates GF(q)*.
    pub fn subfield_gen_exp(&self) -> u64 {
        self.subfield_gen_exp
    }

    pub fn subfield(&self) -> &Subfield {
        &self.sub
    }

    pub fn summary(&self) -> TowerSummary {
        TowerSummary {
            p: self.p,
            e: self.e,
            m: self.m,
            modulus: self.modulus.clone(),
        }
    }

    #[inline]
    pub fn alpha_pow(&self, k: u64) -> u32 {
        self.antilog[(k % (self.order - 1)) as usize]
    }

    /// Discrete log base α; `None` for zero.
    #[inline]
    pub fn log(&self, a: u32) -> Option<u64> {
        (a != 0).then(|| self.log[a as usize] as u64)
    }

    pub fn contains(&self, level: Level, a: u32) -> bool {
        match level {
            Level::Prime => (a as u64) < self.p,
            Level::Sub => (a as usize) < self.sub.q,
            Level::Ext => (a as u64) < self.order,
        }
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.p == 2 {
            return a ^ b;
        }
        self.digitwise(a, b, |x, y| (x + y) % self.p)
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        if self.p == 2 {
            return a ^ b;
        }
        self.digitwise(a, b, |x, y| (x + self.p - y) % self.p)
    }

    pub fn neg(&self, a: u32) -> u32 {
        self.sub(0, a)
    }

    fn digitwise(&self, a: u32, b: u32, f: impl Fn(u64, u64) -> u64) -> u32 {
        let (mut a, mut b) = (a as u64, b as u64);
        let mut out = 0u64;
        let mut place = 1u64;
        while a > 0 || b > 0 {
            out += f(a % self.p, b % self.p) * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        out as u32
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let s = self.log[a as usize] as u64 + self.log[b as usize] as u64;
        self.antilog[(s % (self.order - 1)) as usize]
    }

    pub fn inv(&self, a: u32) -> Result<u32, GfError> {
        if a == 0 {
            return Err(GfError::DivisionByZero);
        }
        let l = self.log[a as usize] as u64;
        Ok(self.alpha_pow(self.order - 1 - l))
    }

    /// `a^k`; `0^0 = 1`.
    pub fn pow(&self, a: u32, k: u64) -> u32 {
        if k == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let l = self.log[a as usize] as u128 * k as u128;
        self.antilog[(l % (self.order as u128 - 1)) as usize]
    }

    /// Maps an element of any level to its packed GF(q^m) value.
    pub fn lift(&self, level: Level, a: u32) -> u32 {
        match level {
            Level::Prime | Level::Ext => a,
            Level::Sub => self.sub.lift(a as u8),
        }
    }

    /// Re-expresses a packed element as a subfield index, if it lies in GF(q).
    pub fn to_subfield(&self, a: u32) -> Option<u8> {
        match self.log(a) {
            None => Some(0),
            Some(l) if l % self.subfield_gen_exp == 0 => {
                Some((l / self.subfield_gen_exp + 1) as u8)
            }
            Some(_) => None,
        }
    }

    /// `β = α^((q^m-1)/n)`, a primitive `n`-th root of unity.
    pub fn root_of_unity(&self, n: u64) -> Result<u32, GfError> {
        let group_order = self.order - 1;
        if n == 0 || group_order % n != 0 {
            return Err(GfError::NotADivisor { n, group_order });
        }
        Ok(self.alpha_pow(group_order / n))
    }

    fn ops(&self, level: Level) -> Ops<'_> {
        match level {
            Level::Prime => Ops::Prime(self.p),
            Level::Sub => Ops::Sub(&self.sub),
            Level::Ext => Ops::Ext(self),
        }
    }

    fn check(&self, f: &Polynomial) -> Result<(), GfError> {
        match f.coeffs.iter().find(|&&c| !self.contains(f.level, c)) {
            Some(&value) => Err(GfError::NotAnElement {
                level: f.level,
                value,
            }),
            None => Ok(()),
        }
    }

    fn same_level(&self, f: &Polynomial, g: &Polynomial) -> Result<Level, GfError> {
        if f.level != g.level {
            return Err(GfError::LevelMismatch {
                left: f.level,
                right: g.level,
            });
        }
        self.check(f)?;
        self.check(g)?;
        Ok(f.level)
    }

    pub fn poly_add(&self, f: &Polynomial, g: &Polynomial) -> Result<Polynomial, GfError> {
        let level = self.same_level(f, g)?;
        let ops = self.ops(level);
        let len = f.coeffs.len().max(g.coeffs.len());
        let coeffs = (0..len).map(|i| ops.add(f.coeff(i), g.coeff(i))).collect();
        Ok(Polynomial::new(level, coeffs))
    }

    pub fn poly_mul(&self, f: &Polynomial, g: &Polynomial) -> Result<Polynomial, GfError> {
        let level = self.same_level(f, g)?;
        Ok(self.mul_unchecked(f, g, level))
    }

    fn mul_unchecked(&self, f: &Polynomial, g: &Polynomial, level: Level) -> Polynomial {
        if f.is_zero() || g.is_zero() {
            return Polynomial::zero(level);
        }
        let ops = self.ops(level);
        let mut out = vec![0u32; f.coeffs.len() + g.coeffs.len() - 1];
        for (i, &a) in f.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in g.coeffs.iter().enumerate() {
                out[i + j] = ops.add(out[i + j], ops.mul(a, b));
            }
        }
        Polynomial::new(level, out)
    }

    /// Quotient and remainder of `f` by `g`.
    pub fn poly_divrem(
        &self,
        f: &Polynomial,
        g: &Polynomial,
    ) -> Result<(Polynomial, Polynomial), GfError> {
        let level = self.same_level(f, g)?;
        let ops = self.ops(level);
        let dg = g.degree().ok_or(GfError::ModByZero)?;
        let lead_inv = ops.inv(g.coeffs[dg])?;
        let mut rem = f.coeffs.clone();
        let Some(df) = f.degree() else {
            return Ok((Polynomial::zero(level), Polynomial::zero(level)));
        };
        if df < dg {
            return Ok((Polynomial::zero(level), f.clone()));
        }
        let mut quot = vec![0u32; df - dg + 1];
        for i in (dg..=df).rev() {
            let c = rem[i];
            if c == 0 {
                continue;
            }
            let factor = ops.mul(c, lead_inv);
            quot[i - dg] = factor;
            for (j, &gc) in g.coeffs.iter().enumerate() {
                let k = i - dg + j;
                rem[k] = ops.sub(rem[k], ops.mul(factor, gc));
            }
        }
        rem.truncate(dg);
        Ok((Polynomial::new(level, quot), Polynomial::new(level, rem)))
    }

    pub fn poly_rem(&self, f: &Polynomial, g: &Polynomial) -> Result<Polynomial, GfError> {
        Ok(self.poly_divrem(f, g)?.1)
    }

    /// Scales a nonzero polynomial to be monic; zero stays zero.
    pub fn make_monic(&self, f: &Polynomial) -> Result<Polynomial, GfError> {
        self.check(f)?;
        let Some(d) = f.degree() else {
            return Ok(f.clone());
        };
        let ops = self.ops(f.level);
        let inv = ops.inv(f.coeffs[d])?;
        Ok(Polynomial::new(
            f.level,
            f.coeffs.iter().map(|&c| ops.mul(c, inv)).collect(),
        ))
    }

    /// Monic greatest common divisor.
    pub fn poly_gcd(&self, f: &Polynomial, g: &Polynomial) -> Result<Polynomial, GfError> {
        self.same_level(f, g)?;
        let (mut a, mut b) = (f.clone(), g.clone());
        while !b.is_zero() {
            let r = self.poly_rem(&a, &b)?;
            a = b;
            b = r;
        }
        self.make_monic(&a)
    }

    /// Monic least common multiple `f·g / gcd(f, g)`.
    pub fn poly_lcm(&self, f: &Polynomial, g: &Polynomial) -> Result<Polynomial, GfError> {
        let level = self.same_level(f, g)?;
        if f.is_zero() || g.is_zero() {
            return Ok(Polynomial::zero(level));
        }
        let d = self.poly_gcd(f, g)?;
        let (q, _) = self.poly_divrem(&self.mul_unchecked(f, g, level), &d)?;
        self.make_monic(&q)
    }

    /// Evaluates `f` at a packed GF(q^m) point.
    pub fn poly_eval(&self, f: &Polynomial, x: u32) -> Result<u32, GfError> {
        self.check(f)?;
        if !self.contains(Level::Ext, x) {
            return Err(GfError::NotAnElement {
                level: Level::Ext,
                value: x,
            });
        }
        Ok(f.coeffs.iter().rev().fold(0u32, |acc, &c| {
            self.add(self.mul(acc, x), self.lift(f.level, c))
        }))
    }

    /// Applies `c ↦ c^q` to every coefficient (polynomial lifted to GF(q^m)).
    pub fn frobenius(&self, f: &Polynomial) -> Polynomial {
        let q = self.q();
        Polynomial::new(
            Level::Ext,
            f.coeffs
                .iter()
                .map(|&c| self.pow(self.lift(f.level, c), q))
                .collect(),
        )
    }

    /// `x^n - 1` at the given level.
    pub fn x_n_minus_one(&self, level: Level, n: u64) -> Polynomial {
        let ops = self.ops(level);
        let mut coeffs = vec![0u32; n as usize + 1];
        coeffs[0] = ops.neg(1);
        coeffs[n as usize] = 1;
        Polynomial::new(level, coeffs)
    }

    /// Minimal polynomial over GF(q) of `β^i`, `β` a primitive `n`-th root of
    /// unity; returned at [`Level::Sub`].
    pub fn minimal_polynomial(&self, n: u64, i: u64) -> Result<Polynomial, GfError> {
        let beta = self.root_of_unity(n)?;
        let q = self.q();
        let i = i % n;
        let mut orbit = vec![i];
        let mut s = arith::mul_mod(i, q, n);
        while s != i {
            orbit.push(s);
            s = arith::mul_mod(s, q, n);
        }
        self.product_of_roots(beta, &orbit)
    }

    /// `∏ (x - β^s)` over the given exponents, re-expressed over GF(q).
    pub fn product_of_roots(&self, beta: u32, exponents: &[u64]) -> Result<Polynomial, GfError> {
        let mut coeffs = vec![1u32];
        for &s in exponents {
            let root = self.neg(self.pow(beta, s));
            let mut next = vec![0u32; coeffs.len() + 1];
            for (j, &c) in coeffs.iter().enumerate() {
                next[j + 1] = self.add(next[j + 1], c);
                next[j] = self.add(next[j], self.mul(c, root));
            }
            coeffs = next;
        }
        let sub = coeffs
            .into_iter()
            .map(|c| {
                self.to_subfield(c)
                    .map(u32::from)
                    .ok_or(GfError::CoefficientEscape { value: c })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Polynomial::new(Level::Sub, sub))
    }
}

#[derive(Clone, Copy)]
enum Ops<'a> {
    Prime(u64),
    Sub(&'a Subfield),
    Ext(&'a FieldTower),
}

impl Ops<'_> {
    fn add(self, a: u32, b: u32) -> u32 {
        match self {
            Ops::Prime(p) => ((a as u64 + b as u64) % p) as u32,
            Ops::Sub(s) => s.add(a as u8, b as u8) as u32,
            Ops::Ext(t) => t.add(a, b),
        }
    }

    fn neg(self, a: u32) -> u32 {
        match self {
            Ops::Prime(p) => ((p - a as u64 % p) % p) as u32,
            Ops::Sub(s) => s.neg(a as u8) as u32,
            Ops::Ext(t) => t.neg(a),
        }
    }

    fn sub(self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    fn mul(self, a: u32, b: u32) -> u32 {
        match self {
            Ops::Prime(p) => ((a as u64 * b as u64) % p) as u32,
            Ops::Sub(s) => s.mul(a as u8, b as u8) as u32,
            Ops::Ext(t) => t.mul(a, b),
        }
    }

    fn inv(self, a: u32) -> Result<u32, GfError> {
        match self {
            Ops::Prime(p) => {
                if a == 0 {
                    return Err(GfError::DivisionByZero);
                }
                // Fermat: a^(p-2).
                let mut acc = 1u64;
                let mut base = a as u64 % p;
                let mut k = p - 2;
                while k > 0 {
                    if k & 1 == 1 {
                        acc = acc * base % p;
                    }
                    base = base * base % p;
                    k >>= 1;
                }
                Ok(acc as u32)
            }
            Ops::Sub(s) => s.inv(a as u8).map(u32::from),
            Ops::Ext(t) => t.inv(a),
        }
    }
}

/// Dense polynomial with ascending coefficients at one level of the tower.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    level: Level,
    coeffs: Vec<u32>,
}

impl Polynomial {
    /// Trailing zero coefficients are dropped.
    pub fn new(level: Level, mut coeffs: Vec<u32>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Polynomial { level, coeffs }
    }

    pub fn zero(level: Level) -> Self {
        Polynomial {
            level,
            coeffs: Vec::new(),
        }
    }

    pub fn one(level: Level) -> Self {
        Polynomial {
            level,
            coeffs: vec![1],
        }
    }

    /// `x^k`.
    pub fn monomial(level: Level, k: usize) -> Self {
        let mut coeffs = vec![0u32; k + 1];
        coeffs[k] = 1;
        Polynomial { level, coeffs }
    }

    pub fn level(&self) -> Level {
        self.level
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u32 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&1)
    }

    /// `x^deg f · f(1/x)`.
    pub fn reversed(&self) -> Polynomial {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        Polynomial::new(self.level, coeffs)
    }
}

/// Polynomial arithmetic over GF(p) on plain `u64` residues, used only for the
/// modulus search.
fn mulmod_prime(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    let d = f.len() - 1;
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    // f is monic.
    for i in (d..prod.len()).rev() {
        let c = prod[i];
        if c == 0 {
            continue;
        }
        for (j, &fj) in f.iter().enumerate().take(d) {
            let k = i - d + j;
            prod[k] = (prod[k] + (p - c) * fj) % p;
        }
        prod[i] = 0;
    }
    prod.truncate(d);
    prod.resize(d, 0);
    prod
}

fn x_pow_mod(k: u64, f: &[u64], p: u64) -> Vec<u64> {
    let d = f.len() - 1;
    let mut result = vec![0u64; d];
    result[0] = 1;
    let mut base = vec![0u64; d];
    if d == 1 {
        base[0] = (p - f[0]) % p;
    } else {
        base[1] = 1;
    }
    let mut k = k;
    while k > 0 {
        if k & 1 == 1 {
            result = mulmod_prime(&result, &base, f, p);
        }
        base = mulmod_prime(&base, &base, f, p);
        k >>= 1;
    }
    result
}

fn is_one(v: &[u64]) -> bool {
    v[0] == 1 && v[1..].iter().all(|&c| c == 0)
}

/// Residue of `x` has order exactly `order - 1` modulo `f`.
fn is_primitive(f: &[u64], p: u64, order: u64, primes: &[u64]) -> bool {
    if f[0] == 0 {
        return false;
    }
    let group = order - 1;
    is_one(&x_pow_mod(group, f, p)) && primes.iter().all(|&r| !is_one(&x_pow_mod(group / r, f, p)))
}

/// Candidates are ordered by the base-`p` integer `Σ c_i p^i` of the
/// non-leading coefficients; the first primitive one wins.
fn smallest_primitive(p: u64, degree: usize, order: u64) -> Vec<u64> {
    let primes = arith::prime_factors(order - 1);
    (0..order)
        .map(|k| {
            let mut f = vec![0u64; degree + 1];
            let mut r = k;
            for c in f.iter_mut().take(degree) {
                *c = r % p;
                r /= p;
            }
            f[degree] = 1;
            f
        })
        .find(|f| is_primitive(f, p, order, &primes))
        .expect("a primitive polynomial exists for every degree")
}

fn build_tables(p: u64, modulus: &[u64], order: u64) -> (Vec<u32>, Vec<u32>) {
    let d = modulus.len() - 1;
    let group = (order - 1) as usize;
    let mut antilog = Vec::with_capacity(group);
    let mut log = vec![u32::MAX; order as usize];
    let mut state = vec![0u64; d];
    state[0] = 1;
    let pack = |s: &[u64]| s.iter().rev().fold(0u64, |acc, &c| acc * p + c) as u32;
    for k in 0..group {
        let packed = pack(&state);
        antilog.push(packed);
        log[packed as usize] = k as u32;
        // state *= x
        let top = state[d - 1];
        for j in (1..d).rev() {
            state[j] = state[j - 1];
        }
        state[0] = 0;
        if top != 0 {
            for j in 0..d {
                state[j] = (state[j] + (p - top) * modulus[j]) % p;
            }
        }
    }
    (antilog, log)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Naive order of α by repeated multiplication.
    fn order_by_repetition(t: &FieldTower, a: u32) -> u64 {
        let mut x = a;
        let mut k = 1u64;
        while x != 1 {
            x = t.mul(x, a);
            k += 1;
        }
        k
    }

    #[test]
    fn gf4_modulus_is_x2_x_1() {
        let t = FieldTower::new(2, 1, 2).unwrap();
        assert_eq!(t.modulus(), &[1, 1, 1]);
        assert_eq!(t.order(), 4);
        let a = t.alpha_pow(1);
        assert_eq!(t.mul(a, t.alpha_pow(2)), 1);
        assert_eq!(t.pow(a, 3), 1);
    }

    #[test]
    fn gf81_alpha_has_order_80() {
        let t = FieldTower::new(3, 1, 4).unwrap();
        assert_eq!(t.order(), 81);
        assert_eq!(order_by_repetition(&t, t.alpha_pow(1)), 80);
        let a40 = t.alpha_pow(40);
        let mut sq = 1;
        for _ in 0..2 {
            sq = t.mul(sq, a40);
        }
        assert_eq!(sq, 1);
    }

    #[test]
    fn gf9_inverse_of_alpha() {
        let t = FieldTower::new(3, 1, 2).unwrap();
        let a = t.alpha_pow(1);
        assert_eq!(t.inv(a).unwrap(), t.alpha_pow(7));
        assert_eq!(t.inv(0), Err(GfError::DivisionByZero));
    }

    #[test]
    fn gf256_over_gf4_subfield_closure() {
        let t = FieldTower::new(2, 2, 4).unwrap();
        assert_eq!(t.subfield_gen_exp(), 85);
        let members: Vec<u32> = std::iter::once(0)
            .chain((0..3).map(|j| t.alpha_pow(85 * j)))
            .collect();
        for &a in &members {
            for &b in &members {
                assert!(members.contains(&t.add(a, b)));
                assert!(members.contains(&t.mul(a, b)));
            }
        }
    }

    #[test]
    fn log_antilog_roundtrip() {
        for (p, e, m) in [(2, 1, 6), (3, 1, 4), (2, 2, 3), (5, 1, 2), (7, 1, 3)] {
            let t = FieldTower::new(p, e, m).unwrap();
            for a in 1..t.order() as u32 {
                assert_eq!(t.alpha_pow(t.log(a).unwrap()), a);
            }
        }
    }

    #[test]
    fn rejects_bad_towers() {
        assert_eq!(FieldTower::new(4, 1, 2).unwrap_err(), GfError::NotPrime(4));
        assert!(matches!(
            FieldTower::new(2, 1, 27),
            Err(GfError::OrderTooLarge { .. })
        ));
    }

    #[test]
    fn poly_examples() {
        let t = FieldTower::new(3, 1, 1).unwrap();
        let f = Polynomial::new(Level::Prime, vec![1, 1]);
        let g = Polynomial::new(Level::Prime, vec![2, 1]);
        assert_eq!(t.poly_mul(&f, &g).unwrap().coeffs(), &[2, 0, 1]);

        let t2 = FieldTower::new(2, 1, 1).unwrap();
        let xp1 = Polynomial::new(Level::Prime, vec![1, 1]);
        let x2p1 = Polynomial::new(Level::Prime, vec![1, 0, 1]);
        assert_eq!(t2.poly_lcm(&xp1, &xp1).unwrap(), xp1);
        assert_eq!(t2.poly_gcd(&x2p1, &xp1).unwrap(), xp1);
    }

    #[test]
    fn poly_errors() {
        let t = FieldTower::new(2, 1, 3).unwrap();
        let a = Polynomial::one(Level::Prime);
        let b = Polynomial::one(Level::Sub);
        assert!(matches!(
            t.poly_mul(&a, &b),
            Err(GfError::LevelMismatch { .. })
        ));
        assert_eq!(
            t.poly_rem(&a, &Polynomial::zero(Level::Prime)),
            Err(GfError::ModByZero)
        );
    }

    #[test]
    fn minimal_polynomial_examples() {
        let t = FieldTower::new(2, 1, 6).unwrap();
        let m0 = t.minimal_polynomial(21, 0).unwrap();
        assert_eq!(m0.degree(), Some(1));
        // x - 1 with -1 = ω^0 in GF(2), i.e. index 1.
        assert_eq!(m0.coeffs(), &[1, 1]);
        let m1 = t.minimal_polynomial(21, 1).unwrap();
        assert_eq!(m1.degree(), Some(6));
        let xn = t.x_n_minus_one(Level::Sub, 21);
        assert!(t.poly_rem(&xn, &m1).unwrap().is_zero());

        let t3 = FieldTower::new(3, 1, 4).unwrap();
        let m = t3.minimal_polynomial(20, 1).unwrap();
        assert_eq!(m.degree(), Some(4));
        assert!(t3
            .poly_rem(&t3.x_n_minus_one(Level::Sub, 20), &m)
            .unwrap()
            .is_zero());
    }

    #[test]
    fn minimal_polynomial_rejects_non_divisor() {
        let t = FieldTower::new(2, 1, 4).unwrap();
        assert!(matches!(
            t.minimal_polynomial(7, 1),
            Err(GfError::NotADivisor { .. })
        ));
    }
}
