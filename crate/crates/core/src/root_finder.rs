//! Roots of `X³ ≡ 2 (mod m)`.
//!
//! [`roots_bruteforce`] scans every residue and serves as the oracle.
//! [`roots_fast`] factors `m` by trial division, solves modulo each prime
//! (closed form for `p ≡ 2 mod 3`, a cube-root analogue of Tonelli–Shanks
//! for `p ≡ 1 mod 3`), lifts to prime powers and recombines by CRT.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{factorize, inv_mod, mul_mod, pow_mod};
use crate::error::{Error, Result};

/// A modulus `m ≥ 1` and a residue `ν ∈ [0, m)` with `ν³ ≡ 2 (mod m)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RootPair {
    pub m: u64,
    pub nu: u64,
}

impl RootPair {
    /// Validates `m ≥ 1`, `ν < m` and `ν³ ≡ 2 (mod m)`.
    pub fn new(m: u64, nu: u64) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidArgument("modulus must be positive".into()));
        }
        if nu >= m || !is_root(nu, m) {
            return Err(Error::NotARoot { m, nu });
        }
        Ok(RootPair { m, nu })
    }

    /// `(ν mod m, ν² mod m)`.
    pub fn residues(&self) -> (u64, u64) {
        (self.nu % self.m, mul_mod(self.nu, self.nu, self.m))
    }
}

#[inline]
fn is_root(nu: u64, m: u64) -> bool {
    mul_mod(mul_mod(nu, nu, m), nu, m) == 2 % m
}

fn check_modulus(m: u64) -> Result<()> {
    if m == 0 {
        Err(Error::InvalidArgument("modulus must be positive".into()))
    } else {
        Ok(())
    }
}

/// Every `ν ∈ [0, m)` with `ν³ ≡ 2 (mod m)`, by exhaustive scan.
pub fn roots_bruteforce(m: u64) -> Result<Vec<u64>> {
    check_modulus(m)?;
    Ok((0..m).filter(|&nu| is_root(nu, m)).collect())
}

/// Same output as [`roots_bruteforce`], computed from the factorization of `m`.
pub fn roots_fast(m: u64) -> Result<Vec<u64>> {
    check_modulus(m)?;
    let mut modulus = 1u64;
    let mut acc = vec![0u64];
    for (p, e) in factorize(m) {
        let q = p.pow(e);
        let local = roots_mod_prime_power(p, e);
        if local.is_empty() {
            return Ok(Vec::new());
        }
        let inv = inv_mod(modulus % q, q).expect("coprime prime-power factors");
        let mut next = Vec::with_capacity(acc.len() * local.len());
        for &r1 in &acc {
            for &r2 in &local {
                // x ≡ r1 (mod modulus), x ≡ r2 (mod q)
                let diff = (r2 + q - r1 % q) % q;
                let k = mul_mod(diff, inv, q);
                next.push(r1 + modulus * k);
            }
        }
        modulus *= q;
        acc = next;
    }
    acc.sort_unstable();
    Ok(acc)
}

/// Roots modulo a prime `p`, ascending.
fn roots_mod_prime(p: u64) -> Vec<u64> {
    match p {
        2 => vec![0],
        3 => vec![2],
        _ if p % 3 == 2 => {
            // Cubing is a bijection; 3·(2p−1)/3 ≡ 1 (mod p−1).
            vec![pow_mod(2, (2 * p - 1) / 3, p)]
        }
        _ => {
            if pow_mod(2, (p - 1) / 3, p) != 1 {
                return Vec::new();
            }
            let z = (2..p)
                .find(|&z| pow_mod(z, (p - 1) / 3, p) != 1)
                .expect("a cubic non-residue exists for p ≡ 1 (mod 3)");
            let omega = pow_mod(z, (p - 1) / 3, p);
            let r = cube_root_mod_prime(2, p, z);
            let mut roots = vec![
                r,
                mul_mod(r, omega, p),
                mul_mod(r, mul_mod(omega, omega, p), p),
            ];
            roots.sort_unstable();
            roots
        }
    }
}

/// A cube root of the cubic residue `a` modulo a prime `p ≡ 1 (mod 3)`,
/// given a cubic non-residue `z`.
fn cube_root_mod_prime(a: u64, p: u64, z: u64) -> u64 {
    let mut s = 0u32;
    let mut t = p - 1;
    while t % 3 == 0 {
        t /= 3;
        s += 1;
    }
    let a_inv = inv_mod(a, p).expect("a is a unit");
    let mut x = if t % 3 == 2 {
        pow_mod(a, (t + 1) / 3, p)
    } else {
        pow_mod(a, (2 * t + 1) / 3, p)
    };
    // Invariant: x³ = a·b with b of 3-power order dividing 3^r.
    let mut b = mul_mod(pow_mod(x, 3, p), a_inv, p);
    let mut c = pow_mod(z, t, p);
    let mut r = s;
    while b != 1 {
        let mut i = 0u32;
        let mut probe = b;
        while probe != 1 {
            probe = pow_mod(probe, 3, p);
            i += 1;
        }
        debug_assert!(i >= 1 && i < r);
        let d = pow_mod(c, 3u64.pow(r - i - 1), p);
        let d3 = pow_mod(d, 3, p);
        let zeta_b = pow_mod(b, 3u64.pow(i - 1), p);
        let zeta_d = pow_mod(d3, 3u64.pow(i - 1), p);
        let j = if mul_mod(zeta_b, zeta_d, p) == 1 {
            1
        } else {
            2
        };
        x = mul_mod(x, pow_mod(d, j, p), p);
        b = mul_mod(b, pow_mod(d3, j, p), p);
        c = d3;
        r = i;
    }
    x
}

/// Roots modulo `p^e`, ascending.
fn roots_mod_prime_power(p: u64, e: u32) -> Vec<u64> {
    let mut roots = roots_mod_prime(p);
    let mut modulus = p;
    for _ in 1..e {
        let next = modulus * p;
        roots = if p > 3 {
            // Newton step; f'(r) = 3r² is a unit since p ∤ 6 and r ≢ 0.
            roots
                .iter()
                .map(|&r| {
                    let f = (mul_mod(mul_mod(r, r, next), r, next) + next - 2) % next;
                    let deriv = mul_mod(3, mul_mod(r, r, p), p);
                    let inv = inv_mod(deriv, p).expect("derivative is a unit mod p");
                    // f ≡ 0 (mod modulus), so f = modulus·f'.
                    let step = mul_mod((f / modulus) % p, inv, p);
                    (r + next - step * modulus) % next
                })
                .collect()
        } else {
            // Derivative vanishes mod 2 and 3: test all p lifts of each root.
            roots
                .iter()
                .flat_map(|&r| (0..p).map(move |j| r + j * modulus))
                .filter(|&cand| is_root(cand, next))
                .collect()
        };
        roots.sort_unstable();
        if roots.is_empty() {
            break;
        }
        modulus = next;
    }
    roots
}

/// All root pairs with `lo < m ≤ hi`, ordered by `(m, ν)`.
pub fn root_pairs_in_range(lo: u64, hi: u64) -> Vec<RootPair> {
    let per_m: Vec<Vec<RootPair>> = (lo.saturating_add(1).max(1)..=hi)
        .into_par_iter()
        .map(|m| {
            roots_fast(m)
                .expect("m ≥ 1")
                .into_iter()
                .map(|nu| RootPair { m, nu })
                .collect()
        })
        .collect();
    per_m.into_iter().flatten().collect()
}

/// The set `S` of root pairs with `M < m ≤ 2M`, ordered by `(m, ν)`.
pub fn enumerate_root_pairs(big_m: u64) -> Result<Vec<RootPair>> {
    if big_m == 0 {
        return Err(Error::InvalidArgument("M must be at least 1".into()));
    }
    let hi = big_m.checked_mul(2).ok_or(Error::Overflow("2M"))?;
    Ok(root_pairs_in_range(big_m, hi))
}
