//! Arithmetic in the order `O = Z[θ]`, `θ = 2^{1/3}`.
//!
//! Elements are integer triples `(a, b, c)` standing for `a + bθ + cθ²`.
//! Multiplication uses `θ³ = 2`; every integer operation is overflow-checked
//! and reports [`Error::Overflow`] instead of wrapping.
//!
//! Real embeddings are evaluated in double-double arithmetic. When the real
//! embedding is much smaller than the coefficients (heavy cancellation, e.g.
//! negative powers of the unit), it is recovered instead as
//! `N(x) / σ₁(N(x)/x)`, which is evaluated without cancellation.

use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::arith;
use crate::error::{Error, Result};

/// `2^{1/3}` as a double-double.
const CBRT2: (f64, f64) = (1.259_921_049_894_873_2, -2.589_933_375_300_507e-17);
/// `2^{2/3}` as a double-double.
const CBRT4: (f64, f64) = (1.587_401_051_968_199_6, -1.086_900_819_419_782_3e-16);

/// Real embedding of the fundamental unit `1 + θ + θ²`.
pub const EPSILON_REAL: f64 = 3.847_322_101_863_072_8;

/// An element `a + b·2^{1/3} + c·2^{2/3}` of `Z[2^{1/3}]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CubicInt {
    pub a: i128,
    pub b: i128,
    pub c: i128,
}

/// The coefficients `(a²−2bc, 2c²−ab, b²−ac)` of `N(α)/α`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CofactorTriple {
    pub g1: i128,
    pub g2: i128,
    pub g3: i128,
}

impl CofactorTriple {
    pub fn as_cubic(&self) -> CubicInt {
        CubicInt::new(self.g1, self.g2, self.g3)
    }

    pub fn gcd(&self) -> i128 {
        arith::gcd(arith::gcd(self.g1, self.g2), self.g3)
    }
}

impl CubicInt {
    pub const ZERO: CubicInt = CubicInt::new(0, 0, 0);
    pub const ONE: CubicInt = CubicInt::new(1, 0, 0);
    pub const THETA: CubicInt = CubicInt::new(0, 1, 0);
    pub const THETA_SQ: CubicInt = CubicInt::new(0, 0, 1);
    /// The fundamental unit `ε = 1 + θ + θ²`.
    pub const EPSILON: CubicInt = CubicInt::new(1, 1, 1);
    /// `ε⁻¹ = −1 + θ`.
    pub const EPSILON_INV: CubicInt = CubicInt::new(-1, 1, 0);

    pub const fn new(a: i128, b: i128, c: i128) -> Self {
        CubicInt { a, b, c }
    }

    pub fn is_zero(&self) -> bool {
        *self == Self::ZERO
    }

    pub fn checked_neg(&self) -> Result<Self> {
        let neg = |x: i128| x.checked_neg().ok_or(Error::Overflow("negation"));
        Ok(Self::new(neg(self.a)?, neg(self.b)?, neg(self.c)?))
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        const CTX: &str = "addition";
        Ok(Self::new(
            arith::add(self.a, other.a, CTX)?,
            arith::add(self.b, other.b, CTX)?,
            arith::add(self.c, other.c, CTX)?,
        ))
    }

    /// Exact product in `O`.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        const CTX: &str = "multiplication";
        let (a, b, c) = (self.a, self.b, self.c);
        let (d, e, f) = (other.a, other.b, other.c);
        let two = |x: i128| arith::mul(2, x, CTX);
        Ok(Self::new(
            arith::dot(&[(a, d), (two(b)?, f), (two(c)?, e)], CTX)?,
            arith::dot(&[(a, e), (b, d), (two(c)?, f)], CTX)?,
            arith::dot(&[(a, f), (b, e), (c, d)], CTX)?,
        ))
    }

    pub fn checked_scale(&self, k: i128) -> Result<Self> {
        const CTX: &str = "scaling";
        Ok(Self::new(
            arith::mul(self.a, k, CTX)?,
            arith::mul(self.b, k, CTX)?,
            arith::mul(self.c, k, CTX)?,
        ))
    }

    /// `self^k` for `k ≥ 0` by repeated squaring.
    pub fn checked_pow(&self, mut k: u32) -> Result<Self> {
        let mut base = *self;
        let mut acc = Self::ONE;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.checked_mul(&base)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.checked_mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// `ε^k` for any integer `k`.
    pub fn unit_power(k: i64) -> Result<Self> {
        let exp = u32::try_from(k.unsigned_abs()).map_err(|_| Error::Overflow("unit power"))?;
        if k >= 0 {
            Self::EPSILON.checked_pow(exp)
        } else {
            Self::EPSILON_INV.checked_pow(exp)
        }
    }

    /// Norm form `a³ + 2b³ + 4c³ − 6abc`.
    pub fn norm(&self) -> Result<i128> {
        const CTX: &str = "norm";
        let (a, b, c) = (self.a, self.b, self.c);
        let cube = |x: i128| arith::mul(arith::mul(x, x, CTX)?, x, CTX);
        let abc = arith::mul(arith::mul(a, b, CTX)?, c, CTX)?;
        let mut n = cube(a)?;
        n = arith::add(n, arith::mul(2, cube(b)?, CTX)?, CTX)?;
        n = arith::add(n, arith::mul(4, cube(c)?, CTX)?, CTX)?;
        arith::sub(n, arith::mul(6, abc, CTX)?, CTX)
    }

    /// The triple `(a²−2bc, 2c²−ab, b²−ac)`; as an element it equals `N(x)/x`.
    pub fn cofactor(&self) -> Result<CofactorTriple> {
        const CTX: &str = "cofactor";
        let (a, b, c) = (self.a, self.b, self.c);
        Ok(CofactorTriple {
            g1: arith::sub(
                arith::mul(a, a, CTX)?,
                arith::mul(2, arith::mul(b, c, CTX)?, CTX)?,
                CTX,
            )?,
            g2: arith::sub(
                arith::mul(2, arith::mul(c, c, CTX)?, CTX)?,
                arith::mul(a, b, CTX)?,
                CTX,
            )?,
            g3: arith::sub(arith::mul(b, b, CTX)?, arith::mul(a, c, CTX)?, CTX)?,
        })
    }

    /// Field trace; `Tr(θ) = Tr(θ²) = 0`, so this is `3a`.
    pub fn trace(&self) -> Result<i128> {
        arith::mul(3, self.a, "trace")
    }

    /// Exact `Tr(num / den)` as a rational, via `num/den = num·cofactor(den)/N(den)`.
    pub fn trace_of_quotient(num: &CubicInt, den: &CubicInt) -> Result<Ratio<i128>> {
        let n = den.norm()?;
        if n == 0 {
            return Err(Error::ZeroNorm);
        }
        let scaled = num.checked_mul(&den.cofactor()?.as_cubic())?;
        Ok(Ratio::new(scaled.trace()?, n))
    }

    /// The real embedding `a + b·2^{1/3} + c·2^{2/3}`.
    pub fn embed_real(&self) -> f64 {
        let direct = self.embed_real_direct();
        let scale = self
            .a
            .unsigned_abs()
            .max(self.b.unsigned_abs())
            .max(self.c.unsigned_abs()) as f64;
        if direct.abs() >= scale * 0.0625 {
            return direct;
        }
        // σ₁(x) · |σ₂(x)|² = N(x) and |σ₂(x)|² = σ₁(N(x)/x), the latter free of cancellation here.
        match (self.norm(), self.cofactor()) {
            (Ok(n), Ok(cof)) if n != 0 => n as f64 / cof.as_cubic().embed_real_direct(),
            _ => direct,
        }
    }

    fn embed_real_direct(&self) -> f64 {
        let sum = dd::add(
            dd::from_i128(self.a),
            dd::add(
                dd::mul(dd::from_i128(self.b), CBRT2),
                dd::mul(dd::from_i128(self.c), CBRT4),
            ),
        );
        sum.0 + sum.1
    }

    /// `|σ₂(x)| = |σ₃(x)| = sqrt(|N(x)| / |σ₁(x)|)`.
    pub fn embed_complex_abs(&self) -> Result<f64> {
        if self.is_zero() {
            return Err(Error::ZeroNorm);
        }
        let n = self.norm()?;
        Ok((n.unsigned_abs() as f64 / self.embed_real().abs()).sqrt())
    }
}

impl fmt::Display for CubicInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

impl From<(i128, i128, i128)> for CubicInt {
    fn from((a, b, c): (i128, i128, i128)) -> Self {
        CubicInt::new(a, b, c)
    }
}

/// Minimal double-double arithmetic (hi, lo) with |lo| ≤ ulp(hi)/2.
mod dd {
    pub type DD = (f64, f64);

    #[inline]
    fn two_sum(a: f64, b: f64) -> DD {
        let s = a + b;
        let bb = s - a;
        (s, (a - (s - bb)) + (b - bb))
    }

    #[inline]
    fn quick_two_sum(a: f64, b: f64) -> DD {
        let s = a + b;
        (s, b - (s - a))
    }

    pub fn from_i128(v: i128) -> DD {
        let hi = v as f64;
        match v.checked_sub(hi as i128) {
            Some(rest) if hi.abs() < 1.7e38 => quick_two_sum(hi, rest as f64),
            _ => (hi, 0.0),
        }
    }

    pub fn add(x: DD, y: DD) -> DD {
        let (s, e) = two_sum(x.0, y.0);
        let (t, f) = two_sum(x.1, y.1);
        let (s, e) = quick_two_sum(s, e + t);
        quick_two_sum(s, e + f)
    }

    pub fn mul(x: DD, y: DD) -> DD {
        let p = x.0 * y.0;
        let e = x.0.mul_add(y.0, -p);
        quick_two_sum(p, e + (x.0 * y.1 + x.1 * y.0))
    }
}
