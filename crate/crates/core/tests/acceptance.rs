//! Acceptance suite: ten end-to-end criteria, each reported as one
//! `PASS`/`FAIL` line. Expected values come from brute force in this file
//! or from the worked examples.
//!
//! Runs without the libtest harness so the report is always printed; the
//! process exits non-zero if any criterion fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use cosetforge::bch::{self, BchCode};
use cosetforge::cosets::closed_form as cf;
use cosetforge::distance::{self, DistanceOptions, Method};
use cosetforge::{CosetTable, CyclicCode, Family, FieldTower, Level};

type Outcome = Result<String, String>;
type Criterion = fn() -> Outcome;
type Ranges = &'static [(u64, u64)];

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn naive_orbit(q: u64, n: u64, s: u64) -> Vec<u64> {
    let mut out = vec![s];
    let mut x = s * q % n;
    while x != s {
        out.push(x);
        x = x * q % n;
    }
    out
}

/// Largest coset leader by scanning residues downwards.
fn brute_largest_leader(q: u64, n: u64) -> u64 {
    (1..n)
        .rev()
        .find(|&s| naive_orbit(q, n, s).iter().all(|&e| e >= s))
        .unwrap_or(0)
}

fn naive_union(q: u64, n: u64, delta: u64) -> BTreeSet<u64> {
    (1..delta).flat_map(|i| naive_orbit(q, n, i % n)).collect()
}

/// First exponent missing from the dual root set, from the root set itself.
fn naive_i_of_delta(q: u64, n: u64, delta: u64) -> u64 {
    let t = naive_union(q, n, delta);
    (0..n).find(|&i| t.contains(&((n - i) % n))).unwrap()
}

fn true_distance(t: &FieldTower, code: &CyclicCode) -> Option<u64> {
    let opts = DistanceOptions {
        method: Method::Direct,
        budget: u64::MAX,
        lower_bound: 1,
    };
    distance::min_distance_enumerate(t, code, &opts).unwrap().d
}

fn within(start: Instant, limit: Duration, what: &str) -> Result<(), String> {
    let e = start.elapsed();
    ensure!(e <= limit, "{what} took {e:?}, limit {limit:?}");
    Ok(())
}

const PLUS_GRID: &[(u64, u32)] = &[
    (2, 4),
    (2, 6),
    (3, 4),
    (3, 6),
    (4, 4),
    (4, 6),
    (5, 4),
    (5, 6),
    (7, 4),
    (7, 6),
    (2, 8),
    (3, 8),
];

const MINUS_GRID: &[(u64, u32)] = &[
    (3, 4),
    (3, 5),
    (4, 4),
    (4, 5),
    (5, 4),
    (5, 5),
    (7, 4),
    (7, 5),
    (8, 4),
    (8, 5),
    (9, 4),
    (9, 5),
    (3, 6),
    (4, 6),
];

fn plus_largest_leader() -> Outcome {
    let start = Instant::now();
    for &(q, m) in PLUS_GRID {
        let n = Family::Plus.length(q, m).unwrap();
        let brute = brute_largest_leader(q, n);
        let closed = cf::delta1_closed_form(q, m, Family::Plus).unwrap();
        ensure!(
            brute == closed,
            "q={q} m={m}: brute {brute}, closed form {closed}"
        );
    }
    within(start, Duration::from_secs(30), "plus grid")?;
    Ok(format!("{} points", PLUS_GRID.len()))
}

fn minus_largest_leader() -> Outcome {
    let start = Instant::now();
    for &(q, m) in MINUS_GRID {
        let n = Family::Minus.length(q, m).unwrap();
        let brute = brute_largest_leader(q, n);
        let closed = cf::delta1_closed_form(q, m, Family::Minus).unwrap();
        ensure!(
            brute == closed,
            "q={q} m={m}: brute {brute}, closed form {closed}"
        );
        let digits = cf::theta_digits(q, m).unwrap();
        let sum = digits.digits.iter().fold(0u64, |acc, &d| acc * q + d);
        let theta = (q.pow(m) - sum - 1) / (q - 1);
        ensure!(
            theta == brute,
            "q={q} m={m}: digit expansion gives {theta}, brute {brute}"
        );
    }
    within(start, Duration::from_secs(60), "minus grid")?;
    Ok(format!("{} points", MINUS_GRID.len()))
}

fn largest_coset_sizes() -> Outcome {
    let mut checked = 0;
    for (family, grid) in [(Family::Plus, PLUS_GRID), (Family::Minus, MINUS_GRID)] {
        for &(q, m) in grid {
            let n = family.length(q, m).unwrap();
            let lead = brute_largest_leader(q, n);
            if lead < 2 {
                continue;
            }
            let size = naive_orbit(q, n, lead).len() as u64;
            let closed = cf::delta1_coset_size_closed_form(q, m, family).unwrap();
            ensure!(
                size == closed,
                "{family} q={q} m={m}: size {size}, closed form {closed}"
            );
            let dim = n - naive_union(q, n, lead).len() as u64;
            ensure!(
                dim == size + 1,
                "{family} q={q} m={m}: dimension {dim}, expected {}",
                size + 1
            );
            checked += 1;
        }
    }
    let th = cf::delta1_closed_form(3, 4, Family::Minus).unwrap();
    let size = naive_orbit(3, 40, th).len();
    ensure!(size == 2, "(3,4) minus: size {size}, expected 2");
    let (_, code) = BchCode::narrow_sense(3, 4, Family::Minus, th).unwrap();
    ensure!(
        code.dimension == 3,
        "(3,4) minus: dimension {}",
        code.dimension
    );
    Ok(format!("{checked} points"))
}

fn code_dimensions() -> Outcome {
    let cases = [
        (2, 6, Family::Plus, 21, 4),
        (3, 4, Family::Plus, 20, 5),
        (4, 4, Family::Plus, 51, 5),
        (5, 4, Family::Plus, 104, 5),
        (3, 4, Family::Minus, 40, 3),
    ];
    for (q, m, family, n, k) in cases {
        let delta = brute_largest_leader(q, n);
        let (t, code) = BchCode::narrow_sense(q, m, family, delta).unwrap();
        ensure!(
            code.n == n && code.dimension == k,
            "q={q} m={m}: [{}, {}], expected [{n}, {k}]",
            code.n,
            code.dimension
        );
        let xn = t.x_n_minus_one(Level::Sub, n);
        ensure!(
            t.poly_rem(&xn, &code.genpoly).unwrap().is_zero(),
            "q={q} m={m}: generator does not divide x^n - 1"
        );
    }
    Ok("[21,4] [20,5] [51,5] [104,5] [40,3]".into())
}

fn example_dual_distances() -> Outcome {
    let mut found = Vec::new();
    for (q, m, expected) in [(3, 4, 12), (2, 6, 8)] {
        let start = Instant::now();
        let (t, code) = BchCode::narrow_sense(q, m, Family::Plus, 2).unwrap();
        let dual = code.cyclic().dual(&t).unwrap();
        let d = true_distance(&t, &dual);
        ensure!(
            d == Some(expected),
            "q={q} m={m}: dual distance {d:?}, expected {expected}"
        );
        within(start, Duration::from_secs(5), "dual enumeration")?;
        found.push(expected);
    }
    Ok(format!("d = {found:?}"))
}

fn dual_bound_ordering() -> Outcome {
    for (q, m, expected) in [(3, 4, 11), (2, 6, 6)] {
        let b = distance::dual_bound_closed_form(q, m, Family::Plus, 2).unwrap();
        ensure!(
            b == expected,
            "q={q} m={m}: closed-form bound {b}, expected {expected}"
        );
    }
    let mut points = 0;
    for (q, m) in [(2, 4), (2, 6), (3, 4), (4, 4), (5, 4)] {
        let n = Family::Plus.length(q, m).unwrap();
        let t = FieldTower::for_q(q, m).unwrap();
        let table = CosetTable::new(q, n).unwrap();
        for delta in 2..=n {
            let ds = bch::defining_set_in(&table, delta, 1).unwrap();
            let tperp = bch::dual_defining_set(&ds);
            let closed = distance::dual_bound_closed_form(q, m, Family::Plus, delta).unwrap();
            let run = bch::bch_bound(&tperp);
            ensure!(
                closed <= run,
                "q={q} m={m} delta={delta}: closed {closed} > run {run}"
            );
            let k_dual = ds.len() as u64;
            if (q as f64).powi(k_dual as i32) > 2e6 {
                continue;
            }
            let code = CyclicCode {
                q,
                n,
                generator: bch::generator_polynomial(&t, &ds).unwrap(),
            };
            let dual = code.dual(&t).unwrap();
            if let Some(d) = true_distance(&t, &dual) {
                ensure!(run <= d, "q={q} m={m} delta={delta}: run {run} > true {d}");
                points += 1;
            }
        }
    }
    ensure!(points >= 5, "only {points} enumerable points");
    Ok(format!("{points} enumerable points"))
}

fn ranges(entries: &[bch::SweepEntry]) -> Vec<(u64, u64)> {
    let mut out: Vec<(u64, u64)> = Vec::new();
    for e in entries.iter().filter(|e| e.verdict) {
        match out.last_mut() {
            Some(r) if r.1 + 1 == e.delta => r.1 = e.delta,
            _ => out.push((e.delta, e.delta)),
        }
    }
    out
}

/// Dually-BCH by exhaustive search for a consecutive run reproducing `T⊥`.
fn brute_dually_bch(q: u64, n: u64, delta: u64) -> bool {
    let t = naive_union(q, n, delta);
    let tperp: BTreeSet<u64> = (0..n).filter(|&i| !t.contains(&((n - i) % n))).collect();
    if tperp.is_empty() {
        return true;
    }
    (0..n).any(|b| {
        let mut acc = BTreeSet::new();
        for len in 0..n {
            acc.extend(naive_orbit(q, n, (b + len) % n));
            if acc == tperp {
                return true;
            }
            if !acc.is_subset(&tperp) {
                return false;
            }
        }
        false
    })
}

fn sweeps() -> Outcome {
    let start = Instant::now();
    let expected: [(u64, u32, Family, Ranges); 3] = [
        (2, 6, Family::Plus, &[(10, 21)]),
        (3, 4, Family::Plus, &[(2, 2), (11, 20)]),
        (3, 4, Family::Minus, &[(26, 40)]),
    ];
    for (q, m, family, want) in expected {
        let entries = bch::dually_bch_sweep(q, m, family).unwrap();
        let got = ranges(&entries);
        ensure!(
            got == want,
            "{family} q={q} m={m}: {got:?}, expected {want:?}"
        );
        let n = family.length(q, m).unwrap();
        for e in &entries {
            ensure!(
                e.verdict == brute_dually_bch(q, n, e.delta),
                "{family} q={q} m={m} delta={}: disagrees with exhaustive search",
                e.delta
            );
        }
    }
    for (q, m, family) in [
        (2, 8, Family::Plus),
        (3, 6, Family::Plus),
        (4, 4, Family::Minus),
    ] {
        let got = ranges(&bch::dually_bch_sweep(q, m, family).unwrap());
        let want = cf::dually_bch_ranges(q, m, family).unwrap();
        ensure!(
            got == want,
            "{family} q={q} m={m}: {got:?}, predicted {want:?}"
        );
    }
    within(start, Duration::from_secs(300), "sweeps")?;
    Ok("6 sweeps".into())
}

fn i_of_delta_brackets() -> Outcome {
    let mut checked = 0;
    for (q, m, family) in [
        (2, 6, Family::Plus),
        (3, 4, Family::Plus),
        (3, 4, Family::Minus),
    ] {
        let n = family.length(q, m).unwrap();
        let brackets = match family {
            Family::Plus => cf::plus_break_brackets(q, m).unwrap(),
            _ => cf::minus_break_brackets(q, m).unwrap(),
        };
        for b in brackets {
            for delta in (b.lo + 1).max(2)..=b.hi.min(n - 1) {
                let naive = naive_i_of_delta(q, n, delta);
                let lib = bch::i_of_delta(q, n, delta).unwrap();
                ensure!(
                    naive == lib,
                    "{family} q={q} m={m} delta={delta}: library {lib}, naive {naive}"
                );
                ensure!(
                    naive == b.value,
                    "{family} q={q} m={m} delta={delta}: I = {naive}, bracket t={} gives {}",
                    b.t,
                    b.value
                );
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} designed distances"))
}

/// Structural invariants on every designed distance of a few lengths.
fn invariants() -> Outcome {
    let mut checked = 0;
    for (q, m, family) in [
        (2, 6, Family::Plus),
        (3, 4, Family::Plus),
        (4, 4, Family::Plus),
        (3, 4, Family::Minus),
    ] {
        let n = family.length(q, m).unwrap();
        let t = FieldTower::for_q(q, m).unwrap();
        let xn = t.x_n_minus_one(Level::Sub, n);
        let mut prev: Option<(BTreeSet<u64>, BTreeSet<u64>)> = None;
        for delta in 2..=n {
            let (_, code) = BchCode::narrow_sense(q, m, family, delta).unwrap();
            ensure!(
                t.poly_rem(&xn, &code.genpoly).unwrap().is_zero(),
                "delta={delta}: g does not divide x^n - 1"
            );
            ensure!(
                code.bch_bound >= delta,
                "delta={delta}: run bound below designed distance"
            );
            let dual = code.cyclic().dual(&t).unwrap();
            let prod = t
                .poly_mul(&code.genpoly, &dual.generator.reversed())
                .unwrap();
            ensure!(
                code.dimension == 0 || prod.degree().unwrap_or(0) as u64 == n,
                "delta={delta}: g times reversed dual generator has wrong degree"
            );
            let tset: BTreeSet<u64> = code.defining_set.exponents.iter().copied().collect();
            let pset: BTreeSet<u64> = code.dual_defining_set().exponents.iter().copied().collect();
            if let Some((pt, pp)) = &prev {
                ensure!(pt.is_subset(&tset), "delta={delta}: T shrank");
                ensure!(pset.is_subset(pp), "delta={delta}: dual root set grew");
            }
            prev = Some((tset, pset));
            if code.dimension <= 6 && code.dimension > 0 {
                let w = distance::weight_enumerator(&t, &code.cyclic(), u64::MAX).unwrap();
                let wd = distance::macwilliams_transform(&w, q, code.dimension).unwrap();
                let back = distance::macwilliams_transform(&wd, q, n - code.dimension).unwrap();
                ensure!(
                    back == w,
                    "delta={delta}: MacWilliams transform is not an involution"
                );
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} codes"))
}

fn enumerable(q: u64, k: u64) -> bool {
    match q {
        2 | 3 => k <= 12,
        4 | 5 => k <= 8,
        _ => false,
    }
}

fn largest_leader_distances() -> Outcome {
    let mut points = 0;
    let grid = PLUS_GRID
        .iter()
        .map(|&(q, m)| (q, m, Family::Plus))
        .chain(MINUS_GRID.iter().map(|&(q, m)| (q, m, Family::Minus)));
    for (q, m, family) in grid {
        let n = family.length(q, m).unwrap();
        let delta = cf::delta1_closed_form(q, m, family).unwrap();
        if delta < 2 {
            continue;
        }
        let (t, code) = BchCode::narrow_sense(q, m, family, delta).unwrap();
        if !enumerable(q, code.dimension) {
            continue;
        }
        let d = true_distance(&t, &code.cyclic()).unwrap();
        ensure!(
            d >= delta,
            "{family} q={q} m={m}: distance {d} below designed {delta} (n={n})"
        );
        points += 1;
    }
    ensure!(points >= 5, "only {points} enumerable points");
    Ok(format!("{points} enumerable points"))
}

fn main() -> ExitCode {
    let criteria: [(&str, Criterion); 10] = [
        (
            "plus-family largest leader closed form",
            plus_largest_leader,
        ),
        (
            "minus-family largest leader closed form",
            minus_largest_leader,
        ),
        (
            "largest coset sizes and code dimensions",
            largest_coset_sizes,
        ),
        ("example code dimensions", code_dimensions),
        ("example dual distances", example_dual_distances),
        (
            "closed-form dual bound <= run bound <= true distance",
            dual_bound_ordering,
        ),
        ("dually-BCH sweeps", sweeps),
        ("I(delta) brackets", i_of_delta_brackets),
        ("structural invariants", invariants),
        ("largest-leader code distances", largest_leader_distances),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let ms = start.elapsed().as_millis();
        match outcome {
            Ok(note) => println!("PASS {:>2} {name}: {note} ({ms} ms)", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why} ({ms} ms)", i + 1);
            }
        }
    }
    println!("{} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
