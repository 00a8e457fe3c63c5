//! Root pairs `(m, ν)` versus primitive ideals of `Z[2^{1/3}]`.
//!
//! A primitive ideal of norm `m` has the Hermite basis
//! `(m,0,0), (t21,1,0), (t31,0,1)` against `1, θ, θ²` with
//! `t21 ≡ −ν` and `t31 ≡ −ν²`. General 3×3 Hermite bases are accepted by
//! [`is_ideal_lattice`], which tests closure under multiplication by `θ`.

use serde::{Deserialize, Serialize};

use crate::arith::{self, mul_mod, rem_i128};
use crate::cubic_ring::CubicInt;
use crate::error::{Error, Result};
use crate::root_finder::RootPair;

/// Hermite basis of a primitive ideal, residues normalized to `[0, m)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IdealHnf {
    pub m: u64,
    pub t21: u64,
    pub t31: u64,
}

impl IdealHnf {
    /// Validates ranges and the integrality congruences
    /// `t31 ≡ −t21²` and `t21·t31 ≡ 2 (mod m)`.
    pub fn new(m: u64, t21: u64, t31: u64) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidArgument("ideal norm must be positive".into()));
        }
        if t21 >= m || t31 >= m {
            return Err(Error::NotAnIdeal(format!(
                "residues ({t21}, {t31}) not reduced mod {m}"
            )));
        }
        let neg_sq = (m - mul_mod(t21, t21, m)) % m;
        if t31 != neg_sq || mul_mod(t21, t31, m) != 2 % m {
            return Err(Error::NotAnIdeal(format!(
                "({m}, {t21}, {t31}) violates t31 = -t21^2, t21*t31 = 2 (mod m)"
            )));
        }
        Ok(IdealHnf { m, t21, t31 })
    }

    pub fn matrix(&self) -> HnfMatrix {
        HnfMatrix([
            [self.m as i128, 0, 0],
            [self.t21 as i128, 1, 0],
            [self.t31 as i128, 0, 1],
        ])
    }

    /// Determinant of the basis, equal to the index `[O : I]`.
    pub fn index(&self) -> u64 {
        self.m
    }
}

/// A 3×3 integer matrix, rows are lattice basis vectors against `1, θ, θ²`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct HnfMatrix(pub [[i128; 3]; 3]);

impl HnfMatrix {
    pub fn identity() -> Self {
        HnfMatrix([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    }

    /// Lower triangular, positive diagonal, below-diagonal entries reduced
    /// modulo the diagonal entry of their column.
    pub fn validate(&self) -> Result<()> {
        let a = &self.0;
        if a[0][1] != 0 || a[0][2] != 0 || a[1][2] != 0 {
            return Err(Error::NotHermite("not lower triangular".into()));
        }
        if (0..3).any(|i| a[i][i] <= 0) {
            return Err(Error::NotHermite("diagonal must be positive".into()));
        }
        let reduced = |x: i128, d: i128| (0..d).contains(&x);
        if !reduced(a[1][0], a[0][0]) || !reduced(a[2][0], a[0][0]) || !reduced(a[2][1], a[1][1]) {
            return Err(Error::NotHermite("off-diagonal entries not reduced".into()));
        }
        Ok(())
    }

    fn det(&self) -> i128 {
        self.0[0][0] * self.0[1][1] * self.0[2][2]
    }
}

pub fn root_to_ideal(p: &RootPair) -> Result<IdealHnf> {
    let p = RootPair::new(p.m, p.nu)?;
    let (nu, nu2) = p.residues();
    let neg = |x: u64| (p.m - x) % p.m;
    Ok(IdealHnf {
        m: p.m,
        t21: neg(nu),
        t31: neg(nu2),
    })
}

pub fn ideal_to_root(ideal: &IdealHnf) -> Result<RootPair> {
    let ideal = IdealHnf::new(ideal.m, ideal.t21, ideal.t31)?;
    let nu = (ideal.m - ideal.t21) % ideal.m;
    RootPair::new(ideal.m, nu).map_err(|_| Error::NotAnIdeal(format!("{ideal:?}")))
}

/// Whether the lattice spanned by `H·(1, θ, θ²)ᵀ` is an ideal of `O`, i.e.
/// `H·T·H⁻¹` is integral where `T` is multiplication by `θ`. Checked as
/// exact divisibility of the nine entries of `H·T·adj(H)` by `det H`.
pub fn is_ideal_lattice(h: &HnfMatrix) -> Result<bool> {
    h.validate()?;
    const CTX: &str = "ideal lattice test";
    let a = &h.0;
    // H·T: T maps basis row e_i to θ·e_i, so columns shift: (x,y,z)·T = (2z, x, y).
    let mut ht = [[0i128; 3]; 3];
    for i in 0..3 {
        ht[i] = [arith::mul(2, a[i][2], CTX)?, a[i][0], a[i][1]];
    }
    let adj = adjugate3(a, CTX)?;
    let det = h.det();
    let adj_cols: [[i128; 3]; 3] = std::array::from_fn(|j| [adj[0][j], adj[1][j], adj[2][j]]);
    for row in &ht {
        for col in &adj_cols {
            let entry = arith::dot(&[(row[0], col[0]), (row[1], col[1]), (row[2], col[2])], CTX)?;
            if entry % det != 0 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

pub(crate) fn adjugate3(a: &[[i128; 3]; 3], ctx: &'static str) -> Result<[[i128; 3]; 3]> {
    let mut adj = [[0i128; 3]; 3];
    for (i, adj_row) in adj.iter_mut().enumerate() {
        for (j, entry) in adj_row.iter_mut().enumerate() {
            // adj[i][j] = cofactor of entry (j, i)
            let (r0, r1) = match j {
                0 => (1, 2),
                1 => (0, 2),
                _ => (0, 1),
            };
            let (c0, c1) = match i {
                0 => (1, 2),
                1 => (0, 2),
                _ => (0, 1),
            };
            let minor = arith::sub(
                arith::mul(a[r0][c0], a[r1][c1], ctx)?,
                arith::mul(a[r0][c1], a[r1][c0], ctx)?,
                ctx,
            )?;
            *entry = if (i + j) % 2 == 0 { minor } else { -minor };
        }
    }
    Ok(adj)
}

/// Whether `x ∈ I`: the reduction `O → Z/mZ`, `θ ↦ ν`, sends `x` to zero.
pub fn membership(x: &CubicInt, ideal: &IdealHnf) -> Result<bool> {
    let root = ideal_to_root(ideal)?;
    let m = root.m;
    let (nu, nu2) = root.residues();
    let value = [
        rem_i128(x.a, m),
        mul_mod(rem_i128(x.b, m), nu, m),
        mul_mod(rem_i128(x.c, m), nu2, m),
    ]
    .iter()
    .fold(0u64, |acc, &t| {
        ((acc as u128 + t as u128) % m as u128) as u64
    });
    Ok(value == 0)
}
