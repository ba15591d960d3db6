//! Library results checked against deliberately naive re-implementations
//! written here, independent of the library's own algorithms.

use std::collections::BTreeSet;

use cosetforge::bch::{self, BchCode, Witness};
use cosetforge::cosets::{self, closed_form};
use cosetforge::distance::{self, DistanceOptions, Method};
use cosetforge::{CosetTable, CyclicCode, Family, FieldTower, Level, Polynomial};

/// Orbit of `s` by repeated multiplication, as a set.
fn naive_coset(q: u64, n: u64, s: u64) -> BTreeSet<u64> {
    let mut out = BTreeSet::new();
    let mut x = s % n;
    while out.insert(x) {
        x = x * q % n;
    }
    out
}

fn naive_leaders(q: u64, n: u64) -> Vec<u64> {
    (0..n)
        .filter(|&s| *naive_coset(q, n, s).iter().next().unwrap() == s)
        .collect()
}

fn naive_union(q: u64, n: u64, from: u64, count: u64) -> BTreeSet<u64> {
    (0..count)
        .flat_map(|i| naive_coset(q, n, (from + i) % n))
        .collect()
}

/// Every `(b, δ)` with `b` a leader, largest `δ` then smallest `b`.
fn naive_recognize(q: u64, n: u64, set: &BTreeSet<u64>) -> Option<Witness> {
    let mut best: Option<Witness> = None;
    for b in naive_leaders(q, n) {
        for delta in 2..=n {
            if naive_union(q, n, b, delta - 1) == *set {
                let better = match best {
                    None => true,
                    Some(w) => delta > w.delta || (delta == w.delta && b < w.b),
                };
                if better {
                    best = Some(Witness { b, delta });
                }
            }
        }
    }
    best
}

#[test]
fn leaders_match_naive_orbits() {
    for (q, n) in [
        (2, 21),
        (3, 20),
        (3, 40),
        (4, 51),
        (5, 104),
        (2, 85),
        (7, 50),
        (9, 82),
    ] {
        let t = CosetTable::new(q, n).unwrap();
        assert_eq!(t.leaders(), naive_leaders(q, n).as_slice(), "q={q} n={n}");
    }
}

#[test]
fn small_leader_lists() {
    assert_eq!(
        cosets::coset_leaders(3, 20).unwrap(),
        vec![0, 1, 2, 4, 5, 10, 11]
    );
    assert_eq!(
        cosets::coset_leaders(2, 21).unwrap(),
        vec![0, 1, 3, 5, 7, 9]
    );
}

#[test]
fn plus_largest_leaders_match_brute_force() {
    for (q, m) in [
        (2, 6),
        (2, 8),
        (3, 4),
        (3, 6),
        (4, 4),
        (4, 6),
        (5, 4),
        (7, 4),
    ] {
        let n = Family::Plus.length(q, m).unwrap();
        let brute = *naive_leaders(q, n).last().unwrap();
        assert_eq!(
            closed_form::delta1_closed_form(q, m, Family::Plus).unwrap(),
            brute
        );
    }
}

#[test]
fn minus_largest_leaders_match_brute_force() {
    for (q, m) in [
        (3, 4),
        (3, 5),
        (4, 4),
        (4, 5),
        (5, 4),
        (7, 4),
        (8, 4),
        (9, 4),
    ] {
        let n = Family::Minus.length(q, m).unwrap();
        let brute = *naive_leaders(q, n).last().unwrap();
        assert_eq!(
            closed_form::delta1_closed_form(q, m, Family::Minus).unwrap(),
            brute
        );
    }
}

#[test]
fn defining_sets_match_naive_unions() {
    for (q, n, delta, b) in [
        (2, 21, 9, 1),
        (3, 20, 11, 1),
        (3, 40, 7, 0),
        (4, 51, 20, 3),
        (2, 21, 4, 19),
    ] {
        let ds = bch::defining_set(q, n, delta, b).unwrap();
        let naive: Vec<u64> = naive_union(q, n, b, delta - 1).into_iter().collect();
        assert_eq!(ds.exponents, naive);
    }
    let ds = bch::defining_set(2, 21, 9, 1).unwrap();
    let sizes: Vec<usize> = ds
        .source_cosets
        .iter()
        .map(|&l| naive_coset(2, 21, l).len())
        .collect();
    assert_eq!(sizes, vec![6, 3, 6, 2]);
}

#[test]
fn recognition_matches_exhaustive_scan() {
    // Every union of cosets for small moduli.
    for (q, n) in [(2, 15), (2, 21), (3, 8), (3, 13), (4, 15), (5, 12)] {
        let leaders = naive_leaders(q, n);
        let t = CosetTable::new(q, n).unwrap();
        let subsets = 1u64 << leaders.len().min(12);
        for mask in 1..subsets {
            let set: BTreeSet<u64> = leaders
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .flat_map(|(_, &l)| naive_coset(q, n, l))
                .collect();
            let ds = bch::DefiningSet {
                q,
                n,
                exponents: set.iter().copied().collect(),
                source_cosets: leaders
                    .iter()
                    .copied()
                    .filter(|l| set.contains(l))
                    .collect(),
            };
            let r = bch::recognize_bch_in(&t, &ds);
            assert_eq!(
                r.witness,
                naive_recognize(q, n, &set),
                "q={q} n={n} set={set:?}"
            );
        }
    }
}

#[test]
fn recognition_examples() {
    let t = CosetTable::new(2, 21).unwrap();
    let mk = |leaders: &[u64]| {
        let set: BTreeSet<u64> = leaders
            .iter()
            .flat_map(|&l| naive_coset(2, 21, l))
            .collect();
        bch::DefiningSet {
            q: 2,
            n: 21,
            exponents: set.into_iter().collect(),
            source_cosets: leaders.to_vec(),
        }
    };
    assert_eq!(
        bch::recognize_bch_in(&t, &mk(&[5])).witness,
        Some(Witness { b: 5, delta: 2 })
    );
    assert_eq!(bch::recognize_bch_in(&t, &mk(&[1, 5])).witness, None);
}

#[test]
fn i_of_delta_matches_naive_dual() {
    for (q, n, delta, expected) in [(2, 21, 4, 5), (3, 20, 2, 11), (3, 40, 2, 13)] {
        let t = naive_union(q, n, 1, delta - 1);
        let tperp: BTreeSet<u64> = (0..n).filter(|&i| !t.contains(&((n - i) % n))).collect();
        let naive = (0..n).find(|i| !tperp.contains(i)).unwrap();
        assert_eq!(naive, expected);
        assert_eq!(bch::i_of_delta(q, n, delta).unwrap(), expected);
    }
}

/// Every message in lexicographic order, multiplied out naively.
fn naive_enumerator(t: &FieldTower, code: &CyclicCode) -> Vec<u64> {
    let q = code.q;
    let k = code.dimension() as usize;
    let n = code.n as usize;
    let g = code.generator.coeffs();
    let sub = t.subfield();
    let mut hist = vec![0u64; n + 1];
    let mut msg = vec![0u8; k];
    loop {
        let mut word = vec![0u8; n];
        for (i, &a) in msg.iter().enumerate() {
            for (j, &c) in g.iter().enumerate() {
                word[i + j] = sub.add(word[i + j], sub.mul(a, c as u8));
            }
        }
        hist[word.iter().filter(|&&x| x != 0).count()] += 1;
        // Odometer increment.
        let mut pos = 0;
        loop {
            if pos == k {
                return hist;
            }
            msg[pos] += 1;
            if (msg[pos] as u64) < q {
                break;
            }
            msg[pos] = 0;
            pos += 1;
        }
    }
}

#[test]
fn gray_walk_matches_lexicographic_enumeration() {
    for (q, m, family, delta) in [
        (2, 6, Family::Plus, 9),
        (3, 4, Family::Plus, 11),
        (3, 4, Family::Minus, 25),
        (4, 4, Family::Plus, 35),
        (4, 4, Family::Plus, 30),
        (5, 4, Family::Plus, 79),
        (8, 4, Family::Minus, 418),
    ] {
        let (t, code) = BchCode::narrow_sense(q, m, family, delta).unwrap();
        let w = distance::weight_enumerator(&t, &code.cyclic(), u64::MAX).unwrap();
        let naive = naive_enumerator(&t, &code.cyclic());
        let got: Vec<u64> = w.counts.iter().map(|c| c.try_into().unwrap()).collect();
        assert_eq!(got, naive, "q={q} m={m} delta={delta}");
    }
}

#[test]
fn example_dual_distances() {
    for (q, m, expected) in [(3, 4, 12), (2, 6, 8)] {
        let (t, code) = BchCode::narrow_sense(q, m, Family::Plus, 2).unwrap();
        let dual = code.cyclic().dual(&t).unwrap();
        let naive = naive_enumerator(&t, &dual);
        let d = naive.iter().skip(1).position(|&c| c > 0).unwrap() as u64 + 1;
        assert_eq!(d, expected);
        let r = distance::min_distance_enumerate(
            &t,
            &dual,
            &DistanceOptions {
                method: Method::Direct,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(r.d, Some(expected));
    }
}

#[test]
fn tower_multiplication_matches_polynomial_reduction() {
    // GF(3^4) with the tower's modulus; multiply packed vectors by schoolbook
    // convolution and reduce, then compare with the table product.
    let t = FieldTower::new(3, 1, 4).unwrap();
    let f = t.modulus().to_vec();
    let p = 3u32;
    let unpack = |mut a: u32| {
        (0..4)
            .map(|_| {
                let d = a % p;
                a /= p;
                d
            })
            .collect::<Vec<u32>>()
    };
    let pack = |v: &[u32]| v.iter().rev().fold(0u32, |acc, &d| acc * p + d);
    for a in 0..81u32 {
        for b in 0..81u32 {
            let (x, y) = (unpack(a), unpack(b));
            let mut prod = [0u32; 7];
            for i in 0..4 {
                for j in 0..4 {
                    prod[i + j] = (prod[i + j] + x[i] * y[j]) % p;
                }
            }
            for d in (4..7).rev() {
                let c = prod[d];
                for (i, &fi) in f.iter().enumerate() {
                    prod[d - 4 + i] = (prod[d - 4 + i] + (p - c) * fi % p) % p;
                }
            }
            assert_eq!(t.mul(a, b), pack(&prod[..4]), "{a} * {b}");
        }
    }
}

#[test]
fn generator_divides_and_has_the_right_roots() {
    let (t, code) = BchCode::narrow_sense(2, 6, Family::Plus, 9).unwrap();
    assert_eq!(code.genpoly.degree(), Some(17));
    let xn = t.x_n_minus_one(Level::Sub, 21);
    assert!(t.poly_rem(&xn, &code.genpoly).unwrap().is_zero());
    // C_0 alone gives x - 1.
    let (t2, c0) = BchCode::raw(3, 20, 2, 0).unwrap();
    let minus_one = t2.subfield().neg(1) as u32;
    assert_eq!(c0.genpoly, Polynomial::new(Level::Sub, vec![minus_one, 1]));
    // The repetition-style code has distance n.
    let rep = CyclicCode {
        q: 2,
        n: 21,
        generator: Polynomial::new(Level::Sub, vec![1; 21]),
    };
    let r = distance::min_distance_enumerate(&t, &rep, &DistanceOptions::default()).unwrap();
    assert_eq!(r.d, Some(21));
}
