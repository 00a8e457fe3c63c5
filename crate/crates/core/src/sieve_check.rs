//! Direct evaluation of the large sieve inequality for the points
//! `(ν/m, ν²/m)`, `M < m ≤ 2M`:
//!
//! ```text
//! Σ_{m,ν} |Σ_{k≤K} Σ_{l≤L} a_{k,l} e((kν + lν²)/m)|²  ≪  (M + K)(M + L) Σ|a_{k,l}|²
//! ```
//!
//! Phases are reduced mod `m` in integers before conversion, so `e(·)` is
//! looked up from a per-modulus table of `e(j/m)`.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::mul_mod;
use crate::error::{Error, Result};
use crate::root_finder::{enumerate_root_pairs, RootPair};

/// Coefficients `a_{k,l}` for `1 ≤ k ≤ K`, `1 ≤ l ≤ L`, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct CoeffSeq {
    k: usize,
    l: usize,
    values: Vec<Complex64>,
    descriptor: String,
    seed: Option<u64>,
}

fn check_dims(k: usize, l: usize) -> Result<()> {
    if k == 0 || l == 0 {
        return Err(Error::InvalidArgument(format!(
            "K = {k}, L = {l}: both must be at least 1"
        )));
    }
    Ok(())
}

/// `e(j/m)` for `0 ≤ j < m`.
fn phase_table(m: u64) -> Vec<Complex64> {
    let step = std::f64::consts::TAU / m as f64;
    (0..m)
        .map(|j| {
            let (s, c) = (step * j as f64).sin_cos();
            Complex64::new(c, s)
        })
        .collect()
}

impl CoeffSeq {
    /// `values[(k−1)·L + (l−1)] = a_{k,l}`.
    pub fn from_values(
        k: usize,
        l: usize,
        values: Vec<Complex64>,
        descriptor: impl Into<String>,
    ) -> Result<Self> {
        check_dims(k, l)?;
        if values.len() != k * l {
            return Err(Error::InvalidArgument(format!(
                "expected {} coefficients, got {}",
                k * l,
                values.len()
            )));
        }
        if values
            .iter()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::InvalidArgument("coefficients must be finite".into()));
        }
        Ok(CoeffSeq {
            k,
            l,
            values,
            descriptor: descriptor.into(),
            seed: None,
        })
    }

    pub fn make_ones(k: usize, l: usize) -> Result<Self> {
        check_dims(k, l)?;
        Self::from_values(k, l, vec![Complex64::new(1.0, 0.0); k * l], "ones")
    }

    /// `a_{k,l} = e(−(kν₀ + lν₀²)/m₀)`, aligned with the pair `(m₀, ν₀)`.
    pub fn make_spike(m0: u64, nu0: u64, k: usize, l: usize) -> Result<Self> {
        check_dims(k, l)?;
        let p = RootPair::new(m0, nu0)?;
        let table = phase_table(p.m);
        let (nu, nu2) = p.residues();
        let mut values = Vec::with_capacity(k * l);
        for kk in 1..=k as u64 {
            let x = mul_mod(kk % p.m, nu, p.m);
            for ll in 1..=l as u64 {
                let idx = (x + mul_mod(ll % p.m, nu2, p.m)) % p.m;
                values.push(table[((p.m - idx) % p.m) as usize]);
            }
        }
        Self::from_values(k, l, values, format!("spike(m0={m0},nu0={nu0})"))
    }

    /// Independent `±1` entries from a ChaCha8 stream seeded with `seed`.
    pub fn make_random(k: usize, l: usize, seed: u64) -> Result<Self> {
        check_dims(k, l)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let values = (0..k * l)
            .map(|_| Complex64::new(if rng.random::<bool>() { 1.0 } else { -1.0 }, 0.0))
            .collect();
        let mut s = Self::from_values(k, l, values, "random_pm1")?;
        s.seed = Some(seed);
        Ok(s)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn get(&self, k: usize, l: usize) -> Option<Complex64> {
        if (1..=self.k).contains(&k) && (1..=self.l).contains(&l) {
            Some(self.values[(k - 1) * self.l + (l - 1)])
        } else {
            None
        }
    }

    pub fn descriptor(&self) -> &str {
        &self.descriptor
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    pub fn norm_sq(&self) -> f64 {
        self.values.iter().map(Complex64::norm_sqr).sum()
    }

    pub fn scaled(&self, z: Complex64) -> Self {
        let mut s = self.clone();
        s.values.iter_mut().for_each(|v| *v *= z);
        s.descriptor = format!("{}*({z})", self.descriptor);
        s
    }

    fn row(&self, k: usize) -> &[Complex64] {
        &self.values[(k - 1) * self.l..k * self.l]
    }

    /// `Σ_k e(kν/m) Σ_l a_{k,l} e(lν²/m)`.
    fn exp_sum(&self, p: &RootPair) -> Complex64 {
        let table = phase_table(p.m);
        let (nu, nu2) = p.residues();
        let w: Vec<Complex64> = (1..=self.l as u64)
            .map(|l| table[mul_mod(l % p.m, nu2, p.m) as usize])
            .collect();
        let mut total = Complex64::new(0.0, 0.0);
        for k in 1..=self.k {
            let row: Complex64 = self.row(k).iter().zip(&w).map(|(a, w)| a * w).sum();
            total += table[mul_mod(k as u64 % p.m, nu, p.m) as usize] * row;
        }
        total
    }
}

fn check_big_m(big_m: u64) -> Result<()> {
    if big_m == 0 {
        return Err(Error::InvalidArgument("M must be at least 1".into()));
    }
    Ok(())
}

/// `|S(m, ν)|²` for each pair, in pair order.
fn pair_terms(pairs: &[RootPair], s: &CoeffSeq) -> Vec<f64> {
    pairs.par_iter().map(|p| s.exp_sum(p).norm_sqr()).collect()
}

pub fn sieve_lhs(big_m: u64, s: &CoeffSeq) -> Result<f64> {
    check_big_m(big_m)?;
    Ok(pair_terms(&enumerate_root_pairs(big_m)?, s).iter().sum())
}

/// `(M + K)(M + L)·Σ|a|²`.
pub fn sieve_rhs(big_m: u64, s: &CoeffSeq) -> Result<f64> {
    check_big_m(big_m)?;
    Ok((big_m as f64 + s.k as f64) * (big_m as f64 + s.l as f64) * s.norm_sq())
}

/// Both sides of the inequality for one sequence.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SieveReport {
    #[serde(rename = "M")]
    pub big_m: u64,
    #[serde(rename = "K")]
    pub k: usize,
    #[serde(rename = "L")]
    pub l: usize,
    pub lhs: f64,
    pub rhs: f64,
    pub ratio: f64,
    pub pair_count: usize,
    pub seq_descriptor: String,
    pub seed: Option<u64>,
    /// Cauchy–Schwarz bound `K·L·pair_count·Σ|a|²` on the left side.
    pub trivial_bound: f64,
    /// `K·L ≤ M`, where the trivial bound beats the right side.
    pub trivial_regime: bool,
}

pub fn sieve_ratio(big_m: u64, s: &CoeffSeq) -> Result<SieveReport> {
    check_big_m(big_m)?;
    let norm = s.norm_sq();
    if norm == 0.0 {
        return Err(Error::Degenerate(
            "coefficient sequence is identically zero".into(),
        ));
    }
    let pairs = enumerate_root_pairs(big_m)?;
    let lhs: f64 = pair_terms(&pairs, s).iter().sum();
    let rhs = sieve_rhs(big_m, s)?;
    let kl = s.k as f64 * s.l as f64;
    Ok(SieveReport {
        big_m,
        k: s.k,
        l: s.l,
        lhs,
        rhs,
        ratio: lhs / rhs,
        pair_count: pairs.len(),
        seq_descriptor: s.descriptor.clone(),
        seed: s.seed,
        trivial_bound: kl * pairs.len() as f64 * norm,
        trivial_regime: (s.k as u64).saturating_mul(s.l as u64) <= big_m,
    })
}

/// Dual form: `Σ_{k≤K} Σ_{l≤L} |Σ_{m,ν} b_{m,ν} e((kν + lν²)/m)|²`.
pub fn dual_lhs(big_m: u64, k: usize, l: usize, b: &[(RootPair, Complex64)]) -> Result<f64> {
    check_big_m(big_m)?;
    check_dims(k, l)?;
    let hi = big_m.checked_mul(2).ok_or(Error::Overflow("2M"))?;
    let mut xs = Vec::with_capacity(b.len());
    let mut ys = Vec::with_capacity(b.len());
    for (p, coeff) in b {
        let p = RootPair::new(p.m, p.nu)?;
        if p.m <= big_m || p.m > hi {
            return Err(Error::InvalidArgument(format!(
                "pair {p:?} outside ({big_m}, {hi}]"
            )));
        }
        let table = phase_table(p.m);
        let (nu, nu2) = p.residues();
        xs.push(
            (1..=k as u64)
                .map(|kk| coeff * table[mul_mod(kk % p.m, nu, p.m) as usize])
                .collect::<Vec<_>>(),
        );
        ys.push(
            (1..=l as u64)
                .map(|ll| table[mul_mod(ll % p.m, nu2, p.m) as usize])
                .collect::<Vec<_>>(),
        );
    }
    let rows: Vec<f64> = (0..k)
        .into_par_iter()
        .map(|kk| {
            let mut acc = vec![Complex64::new(0.0, 0.0); l];
            for (x, y) in xs.iter().zip(&ys) {
                let bx = x[kk];
                acc.iter_mut().zip(y).for_each(|(a, y)| *a += bx * y);
            }
            acc.iter().map(Complex64::norm_sqr).sum()
        })
        .collect();
    Ok(rows.iter().sum())
}

/// Dual left side against `(M + K)(M + L)·Σ|b|²`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DualReport {
    pub lhs: f64,
    pub rhs: f64,
    pub ratio: f64,
    pub support: usize,
}

pub fn dual_ratio(
    big_m: u64,
    k: usize,
    l: usize,
    b: &[(RootPair, Complex64)],
) -> Result<DualReport> {
    let norm: f64 = b.iter().map(|(_, z)| z.norm_sqr()).sum();
    if norm == 0.0 {
        return Err(Error::Degenerate(
            "dual coefficients are identically zero".into(),
        ));
    }
    let lhs = dual_lhs(big_m, k, l, b)?;
    let rhs = (big_m as f64 + k as f64) * (big_m as f64 + l as f64) * norm;
    Ok(DualReport {
        lhs,
        rhs,
        ratio: lhs / rhs,
        support: b.len(),
    })
}
