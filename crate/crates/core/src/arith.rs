//! Small integer helpers: overflow-checked i128 arithmetic, gcd, extended
//! Euclid, modular arithmetic on u64 moduli, trial-division factorization.

use crate::error::{Error, Result};

#[inline]
pub(crate) fn add(x: i128, y: i128, ctx: &'static str) -> Result<i128> {
    x.checked_add(y).ok_or(Error::Overflow(ctx))
}

#[inline]
pub(crate) fn sub(x: i128, y: i128, ctx: &'static str) -> Result<i128> {
    x.checked_sub(y).ok_or(Error::Overflow(ctx))
}

#[inline]
pub(crate) fn mul(x: i128, y: i128, ctx: &'static str) -> Result<i128> {
    x.checked_mul(y).ok_or(Error::Overflow(ctx))
}

/// Sum of products `Σ xᵢ·yᵢ`, every step checked.
pub(crate) fn dot(terms: &[(i128, i128)], ctx: &'static str) -> Result<i128> {
    terms
        .iter()
        .try_fold(0i128, |acc, &(x, y)| add(acc, mul(x, y, ctx)?, ctx))
}

/// Non-negative gcd; `gcd(0, 0) = 0`.
pub fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a as i128
}

pub fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Extended Euclid: returns `(g, s, t)` with `s·a + t·b = g` and `g ≥ 0`.
///
/// Deterministic: the classical remainder sequence on `(a, b)` with signs
/// flipped at the end when the gcd comes out negative.
pub fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (1i128, 0i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let (g, s, _) = ext_gcd(a as i128, m as i128);
    (g == 1).then(|| s.rem_euclid(m as i128) as u64)
}

/// `x mod m` for signed `x`, result in `[0, m)`.
#[inline]
pub fn rem_i128(x: i128, m: u64) -> u64 {
    x.rem_euclid(m as i128) as u64
}

/// Prime factorization by trial division, ascending primes.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut push = |p: u64, n: &mut u64| {
        let mut e = 0;
        while *n % p == 0 {
            *n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
    };
    push(2, &mut n);
    push(3, &mut n);
    let mut p = 5u64;
    while p.saturating_mul(p) <= n {
        push(p, &mut n);
        push(p + 2, &mut n);
        p += 6;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Integer cube root `⌊n^{1/3}⌋`.
pub fn icbrt(n: u64) -> u64 {
    let cube = |r: u64| r.checked_mul(r).and_then(|s| s.checked_mul(r));
    let mut r = (n as f64).cbrt() as u64;
    while cube(r).map_or(true, |c| c > n) {
        r -= 1;
    }
    while cube(r + 1).is_some_and(|c| c <= n) {
        r += 1;
    }
    r
}
