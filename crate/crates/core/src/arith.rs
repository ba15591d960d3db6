//! Small integer helpers shared by the field tower and the coset code.

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// `base^exp`, or `None` on overflow.
pub fn checked_pow(base: u64, exp: u32) -> Option<u64> {
    base.checked_pow(exp)
}

pub fn pow(base: u64, exp: u32) -> u64 {
    checked_pow(base, exp).expect("integer power overflowed u64")
}

pub fn mul_mod(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 * b as u128) % n as u128) as u64
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime factors in increasing order (trial division).
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Splits `q = p^e` with `p` prime.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    let factors = prime_factors(q);
    if factors.len() != 1 {
        return None;
    }
    let p = factors[0];
    let mut e = 0u32;
    let mut r = q;
    while r > 1 {
        r /= p;
        e += 1;
    }
    Some((p, e))
}

/// Multiplicative order of `q` modulo `n`; `n = 1` gives 1.
pub fn mult_order(q: u64, n: u64) -> Option<u32> {
    if n == 1 {
        return Some(1);
    }
    if gcd(q % n, n) != 1 {
        return None;
    }
    let mut x = q % n;
    let mut k = 1u32;
    while x != 1 {
        x = mul_mod(x, q, n);
        k += 1;
    }
    Some(k)
}

/// `ceil(a / b)` for positive `b`.
pub fn ceil_div(a: u64, b: u64) -> u64 {
    a.div_ceil(b)
}
