//! Defining sets, BCH generator polynomials, duals, the BCH bound and
//! recognition of consecutive-coset unions.
//!
//! Exponents always refer to a fixed primitive `n`-th root of unity
//! `β = α^((q^m-1)/n)` from the [`FieldTower`].

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::arith;
use crate::cosets::{CosetError, CosetTable, Family};
use crate::gf::{FieldTower, GfError, Level, Polynomial};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BchError {
    #[error("designed distance {delta} outside 2..={max}")]
    DeltaOutOfRange { delta: u64, max: u64 },
    #[error("tower GF({q_tower}^{m}) cannot host length {n} over GF({q})")]
    TowerMismatch {
        q: u64,
        n: u64,
        q_tower: u64,
        m: u32,
    },
    #[error("generator does not divide x^{n} - 1")]
    NotCyclic { n: u64 },
    #[error(transparent)]
    Coset(#[from] CosetError),
    #[error(transparent)]
    Gf(#[from] GfError),
}

/// A `q`-closed subset of `Z_n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DefiningSet {
    pub q: u64,
    pub n: u64,
    /// Ascending.
    pub exponents: Vec<u64>,
    /// Leaders of the cosets making up the set, ascending.
    pub source_cosets: Vec<u64>,
}

impl DefiningSet {
    /// Builds the set from a membership mask that is already closed under
    /// multiplication by `q`.
    fn from_mask(table: &CosetTable, mask: &[bool]) -> Self {
        let exponents: Vec<u64> = (0..table.n()).filter(|&i| mask[i as usize]).collect();
        let source_cosets = exponents
            .iter()
            .copied()
            .filter(|&i| table.is_leader(i))
            .collect();
        DefiningSet {
            q: table.q(),
            n: table.n(),
            exponents,
            source_cosets,
        }
    }

    pub fn empty(q: u64, n: u64) -> Self {
        DefiningSet {
            q,
            n,
            exponents: Vec::new(),
            source_cosets: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exponents.is_empty()
    }

    pub fn contains(&self, i: u64) -> bool {
        self.exponents.binary_search(&(i % self.n)).is_ok()
    }

    pub fn mask(&self) -> Vec<bool> {
        let mut mask = vec![false; self.n as usize];
        for &i in &self.exponents {
            mask[i as usize] = true;
        }
        mask
    }

    pub fn is_subset_of(&self, other: &DefiningSet) -> bool {
        self.exponents.iter().all(|&i| other.contains(i))
    }
}

fn check_delta(n: u64, delta: u64) -> Result<(), BchError> {
    if delta < 2 || delta > n {
        return Err(BchError::DeltaOutOfRange { delta, max: n });
    }
    Ok(())
}

/// `C_b ∪ C_{b+1} ∪ … ∪ C_{b+δ-2}`, indices mod `n`.
pub fn defining_set(q: u64, n: u64, delta: u64, b: u64) -> Result<DefiningSet, BchError> {
    let table = CosetTable::new(q, n)?;
    defining_set_in(&table, delta, b)
}

/// [`defining_set`] against a prebuilt coset table.
pub fn defining_set_in(table: &CosetTable, delta: u64, b: u64) -> Result<DefiningSet, BchError> {
    let n = table.n();
    check_delta(n, delta)?;
    Ok(DefiningSet::from_mask(
        table,
        &consecutive_mask(table, delta, b),
    ))
}

fn consecutive_mask(table: &CosetTable, delta: u64, b: u64) -> Vec<bool> {
    let n = table.n();
    let mut wanted = vec![false; n as usize];
    for i in 0..delta - 1 {
        wanted[table.leader_of(b + i) as usize] = true;
    }
    (0..n)
        .map(|i| wanted[table.leader_of(i) as usize])
        .collect()
}

fn check_tower(t: &FieldTower, q: u64, n: u64) -> Result<(), BchError> {
    if t.q() != q || (t.order() - 1) % n != 0 {
        return Err(BchError::TowerMismatch {
            q,
            n,
            q_tower: t.q(),
            m: t.m(),
        });
    }
    Ok(())
}

/// Product of the minimal polynomials of the source cosets, over GF(q).
///
/// Large sets are handled through the complement: `(x^n - 1)` divided by the
/// product over the missing cosets, which keeps the work near `n · min(|T|, n-|T|)`.
pub fn generator_polynomial(t: &FieldTower, ds: &DefiningSet) -> Result<Polynomial, BchError> {
    check_tower(t, ds.q, ds.n)?;
    if 2 * ds.len() as u64 <= ds.n {
        return product_of_minimal_polys(t, ds.n, &ds.source_cosets);
    }
    let table = CosetTable::new(ds.q, ds.n)?;
    let missing: Vec<u64> = table
        .leaders()
        .iter()
        .copied()
        .filter(|&l| !ds.contains(l))
        .collect();
    let h = product_of_minimal_polys(t, ds.n, &missing)?;
    let (g, r) = t.poly_divrem(&t.x_n_minus_one(Level::Sub, ds.n), &h)?;
    debug_assert!(r.is_zero());
    Ok(g)
}

fn product_of_minimal_polys(
    t: &FieldTower,
    n: u64,
    leaders: &[u64],
) -> Result<Polynomial, BchError> {
    let mut g = Polynomial::one(Level::Sub);
    for &leader in leaders {
        let mp = t.minimal_polynomial(n, leader)?;
        g = t.poly_mul(&g, &mp)?;
    }
    Ok(g)
}

/// `Z_n \ T^{-1}`, the defining set of the dual code.
pub fn dual_defining_set(ds: &DefiningSet) -> DefiningSet {
    let n = ds.n;
    let mut mask = vec![true; n as usize];
    for &i in &ds.exponents {
        mask[((n - i) % n) as usize] = false;
    }
    let table = CosetTable::new(ds.q, n).expect("defining set parameters were validated");
    DefiningSet::from_mask(&table, &mask)
}

/// Length of the longest cyclically consecutive run, plus one.
pub fn bch_bound(ds: &DefiningSet) -> u64 {
    longest_run(&ds.mask()) + 1
}

fn longest_run(mask: &[bool]) -> u64 {
    let n = mask.len();
    if mask.iter().all(|&x| x) {
        return n as u64;
    }
    // Start just after a gap so wrapping runs are counted once.
    let gap = mask.iter().position(|&x| !x).unwrap();
    let (mut best, mut cur) = (0u64, 0u64);
    for k in 1..=n {
        if mask[(gap + k) % n] {
            cur += 1;
            best = best.max(cur);
        } else {
            cur = 0;
        }
    }
    best
}

/// A BCH representation `⋃_{i=b}^{b+δ-2} C_i` of a defining set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub b: u64,
    pub delta: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RecognitionStatus {
    Bch,
    /// The empty set; counted as BCH by convention.
    EmptySet,
    NotBch,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Recognition {
    pub status: RecognitionStatus,
    /// Largest `δ`, then smallest `b`, with `b` a coset leader.
    pub witness: Option<Witness>,
    /// Best witness with `b = 0`, if any.
    pub c0_witness: Option<Witness>,
}

impl Recognition {
    pub fn is_bch(&self) -> bool {
        self.status != RecognitionStatus::NotBch
    }
}

/// Decides whether the set is a union of consecutive cosets `C_b, …, C_{b+δ-2}`.
///
/// Any window of consecutive exponents lies inside one maximal run of the
/// set, and a longer window covers at least the cosets of a shorter one, so
/// per run only the window from its first leader to the run's end needs
/// checking. The total work is linear in `n`.
pub fn recognize_bch(ds: &DefiningSet) -> Recognition {
    let table = CosetTable::new(ds.q, ds.n).expect("defining set parameters were validated");
    recognize_bch_in(&table, ds)
}

pub fn recognize_bch_in(table: &CosetTable, ds: &DefiningSet) -> Recognition {
    if ds.is_empty() {
        return Recognition {
            status: RecognitionStatus::EmptySet,
            witness: None,
            c0_witness: None,
        };
    }
    let n = ds.n as usize;
    let mask = ds.mask();
    let needed = ds.source_cosets.len();
    let mut stamp = vec![usize::MAX; n];
    let mut covers = |start: usize, len: usize, tag: usize| -> bool {
        let mut seen = 0;
        for k in 0..len {
            let l = table.leader_of(((start + k) % n) as u64) as usize;
            if stamp[l] != tag {
                stamp[l] = tag;
                seen += 1;
            }
        }
        seen == needed
    };

    let mut candidates: Vec<Witness> = Vec::new();
    let mut c0_witness = None;
    if ds.len() == n {
        // One circular run: every window of length n-1 misses a single exponent.
        for (tag, &b) in table.leaders().iter().enumerate() {
            if covers(b as usize, n - 1, tag) {
                candidates.push(Witness { b, delta: n as u64 });
                break;
            }
        }
        if candidates.first().map(|w| w.b) == Some(0) {
            c0_witness = candidates.first().copied();
        }
    } else {
        let gap = mask.iter().position(|&x| !x).unwrap();
        let mut k = 1;
        let mut tag = 0;
        while k <= n {
            let pos = (gap + k) % n;
            if !mask[pos] {
                k += 1;
                continue;
            }
            let mut len = 0;
            while k + len <= n && mask[(gap + k + len) % n] {
                len += 1;
            }
            let first_leader = (0..len).find(|&j| table.is_leader(((pos + j) % n) as u64));
            if let Some(j) = first_leader {
                let start = (pos + j) % n;
                let wlen = len - j;
                if covers(start, wlen, tag) {
                    candidates.push(Witness {
                        b: start as u64,
                        delta: wlen as u64 + 1,
                    });
                }
                tag += 1;
            }
            // The window from 0 is shorter than the run's window whenever 0 is
            // not the run's first leader, so check it separately.
            if let Some(off) = (0..len).find(|&j| (pos + j) % n == 0) {
                let wlen = len - off;
                if covers(0, wlen, tag) {
                    c0_witness = Some(Witness {
                        b: 0,
                        delta: wlen as u64 + 1,
                    });
                }
                tag += 1;
            }
            k += len;
        }
    }
    let witness = candidates
        .into_iter()
        .min_by_key(|w| (std::cmp::Reverse(w.delta), w.b));
    Recognition {
        status: if witness.is_some() {
            RecognitionStatus::Bch
        } else {
            RecognitionStatus::NotBch
        },
        witness,
        c0_witness,
    }
}

/// Result of the dually-BCH decision for a narrow-sense code.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DuallyBch {
    pub verdict: bool,
    pub recognition: Recognition,
    pub tperp: DefiningSet,
}

/// Whether the narrow-sense BCH code of designed distance `δ` has a BCH dual.
pub fn is_dually_bch(q: u64, m: u32, family: Family, delta: u64) -> Result<DuallyBch, BchError> {
    let n = family.length(q, m)?;
    let table = CosetTable::new(q, n)?;
    is_dually_bch_in(&table, delta)
}

pub fn is_dually_bch_in(table: &CosetTable, delta: u64) -> Result<DuallyBch, BchError> {
    let t = defining_set_in(table, delta, 1)?;
    let tperp = dual_defining_set_in(table, &t);
    let recognition = recognize_bch_in(table, &tperp);
    Ok(DuallyBch {
        verdict: recognition.is_bch(),
        recognition,
        tperp,
    })
}

fn dual_defining_set_in(table: &CosetTable, ds: &DefiningSet) -> DefiningSet {
    let n = ds.n;
    let mut mask = vec![true; n as usize];
    for &i in &ds.exponents {
        mask[((n - i) % n) as usize] = false;
    }
    DefiningSet::from_mask(table, &mask)
}

/// One row of a designed-distance sweep.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepEntry {
    pub delta: u64,
    pub verdict: bool,
    pub witness: Option<Witness>,
    pub c0_anchored: bool,
}

/// [`is_dually_bch`] for every `δ` in `2..=n`, in parallel.
pub fn dually_bch_sweep(q: u64, m: u32, family: Family) -> Result<Vec<SweepEntry>, BchError> {
    let n = family.length(q, m)?;
    let table = CosetTable::new(q, n)?;
    dually_bch_sweep_in(&table)
}

pub fn dually_bch_sweep_in(table: &CosetTable) -> Result<Vec<SweepEntry>, BchError> {
    (2..=table.n())
        .into_par_iter()
        .map(|delta| {
            let r = is_dually_bch_in(table, delta)?;
            Ok(SweepEntry {
                delta,
                verdict: r.verdict,
                witness: r.recognition.witness,
                c0_anchored: r.recognition.c0_witness.is_some()
                    || r.recognition.status == RecognitionStatus::EmptySet,
            })
        })
        .collect()
}

/// Smallest `i ≥ 0` missing from `T^⊥` of the narrow-sense code.
pub fn i_of_delta(q: u64, n: u64, delta: u64) -> Result<u64, BchError> {
    let table = CosetTable::new(q, n)?;
    i_of_delta_in(&table, delta)
}

pub fn i_of_delta_in(table: &CosetTable, delta: u64) -> Result<u64, BchError> {
    let n = table.n();
    if delta < 2 || delta >= n {
        return Err(BchError::DeltaOutOfRange {
            delta,
            max: n.saturating_sub(1),
        });
    }
    let t = defining_set_in(table, delta, 1)?;
    let tperp = dual_defining_set_in(table, &t);
    Ok((0..n).find(|&i| !tperp.contains(i)).unwrap_or(n))
}

/// A cyclic code over GF(q) given by its generator polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicCode {
    pub q: u64,
    pub n: u64,
    /// Monic, at [`Level::Sub`].
    pub generator: Polynomial,
}

impl CyclicCode {
    pub fn dimension(&self) -> u64 {
        self.n - self.generator.degree().unwrap_or(0) as u64
    }

    /// The dual code, generated by the monic reciprocal of `(x^n - 1)/g`.
    pub fn dual(&self, t: &FieldTower) -> Result<CyclicCode, BchError> {
        check_tower(t, self.q, self.n)?;
        let xn = t.x_n_minus_one(Level::Sub, self.n);
        let (h, r) = t.poly_divrem(&xn, &self.generator)?;
        if !r.is_zero() {
            return Err(BchError::NotCyclic { n: self.n });
        }
        Ok(CyclicCode {
            q: self.q,
            n: self.n,
            generator: t.make_monic(&h.reversed())?,
        })
    }
}

/// A BCH code `C_(q,n,δ,b)` with its defining set and generator.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BchCode {
    pub q: u64,
    pub m: u32,
    pub family: Family,
    pub n: u64,
    pub b: u64,
    pub delta: u64,
    #[serde(rename = "T")]
    pub defining_set: DefiningSet,
    /// Ascending subfield-index coefficients.
    #[serde(serialize_with = "serialize_poly")]
    pub genpoly: Polynomial,
    #[serde(rename = "dim")]
    pub dimension: u64,
    pub bch_bound: u64,
}

fn serialize_poly<S: serde::Serializer>(p: &Polynomial, s: S) -> Result<S::Ok, S::Error> {
    p.coeffs().serialize(s)
}

impl BchCode {
    /// Builds the code inside `t`; `n` must divide `|GF(q^m)*|`.
    pub fn new(
        t: &FieldTower,
        family: Family,
        n: u64,
        delta: u64,
        b: u64,
    ) -> Result<Self, BchError> {
        check_tower(t, t.q(), n)?;
        let ds = defining_set(t.q(), n, delta, b)?;
        let genpoly = generator_polynomial(t, &ds)?;
        let bch_bound = bch_bound(&ds);
        Ok(BchCode {
            q: t.q(),
            m: t.m(),
            family,
            n,
            b,
            delta,
            dimension: n - ds.len() as u64,
            defining_set: ds,
            genpoly,
            bch_bound,
        })
    }

    /// Narrow-sense code of the given family, with a freshly built tower.
    pub fn narrow_sense(
        q: u64,
        m: u32,
        family: Family,
        delta: u64,
    ) -> Result<(FieldTower, Self), BchError> {
        let n = family.length(q, m)?;
        let t = FieldTower::for_q(q, m)?;
        let code = BchCode::new(&t, family, n, delta, 1)?;
        Ok((t, code))
    }

    /// Length `n` coprime to `q`, with `m = ord_n(q)`.
    pub fn raw(q: u64, n: u64, delta: u64, b: u64) -> Result<(FieldTower, Self), BchError> {
        let m = arith::mult_order(q, n).ok_or(CosetError::NotCoprime { q, n })?;
        let t = FieldTower::for_q(q, m)?;
        let code = BchCode::new(&t, Family::Raw, n, delta, b)?;
        Ok((t, code))
    }

    pub fn cyclic(&self) -> CyclicCode {
        CyclicCode {
            q: self.q,
            n: self.n,
            generator: self.genpoly.clone(),
        }
    }

    pub fn dual_defining_set(&self) -> DefiningSet {
        dual_defining_set(&self.defining_set)
    }
}

/// Monic reciprocal of the check polynomial `(x^n - 1)/g`, generating the dual.
pub fn dual_generator(t: &FieldTower, code: &BchCode) -> Result<Polynomial, BchError> {
    Ok(code.cyclic().dual(t)?.generator)
}

/// Exponents `i` with `f(β^i) = 0`, `β` the tower's primitive `n`-th root.
pub fn root_exponents(t: &FieldTower, f: &Polynomial, n: u64) -> Result<Vec<u64>, BchError> {
    let beta = t.root_of_unity(n)?;
    let lifted = Polynomial::new(
        Level::Ext,
        f.coeffs().iter().map(|&c| t.lift(f.level(), c)).collect(),
    );
    let mut out = Vec::new();
    for i in 0..n {
        if t.poly_eval(&lifted, t.pow(beta, i))? == 0 {
            out.push(i);
        }
    }
    Ok(out)
}
