//! Generators of primitive ideals and the approximations they produce.
//!
//! Every primitive ideal is principal, `I = (α)` with `α = a + bθ + cθ²`,
//! and `α` is unique once it is reduced into the fundamental domain
//!
//! ```text
//! D = { α : N(α) > 0,  N(α)^{1/3} / (2·ε₁) ≤ σ₁(α) < N(α)^{1/3} / 2 }
//! ```
//!
//! where `ε₁ ≈ 3.8473` is the real embedding of the fundamental unit. For a
//! primitive generator the cofactor triple `(g1, g2, g3)` is coprime, so
//! Bezout data `(u, v, w)` with `u·g1 + v·g2 + w·g3 = 1` exists and
//!
//! ```text
//!     ⎡u  b  c⎤
//! γ = ⎢v  a  b⎥  ∈ SL₃(Z),   γ · [[m,0,0],[−ν,1,0],[−ν²,0,1]] = mult-by-α matrix.
//!     ⎣w 2c  a⎦
//! ```
//!
//! Each column of `γ⁻¹` gives a rational point `(−n1′/den, −n2′/den)` within
//! `O(1/m)` of `(ν/m, ν²/m)` on the torus, with `den ∈ {g1, g2, g3}`.

use std::cmp::Ordering;

use num_rational::Ratio;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{self, ext_gcd, mul_mod};
use crate::cubic_ring::{CofactorTriple, CubicInt, EPSILON_REAL};
use crate::error::{Error, Result};
use crate::ideal_correspondence::{adjugate3, membership, root_to_ideal};
use crate::root_finder::RootPair;
use crate::torus_geometry::{TorsionPoint, TorusPoint};

/// Relative distance to a domain endpoint below which placement is decided
/// by the tie rule (ties go to the lower of the two adjacent intervals).
pub const TIE_TOLERANCE: f64 = 1e-10;

/// Search box for [`generator_from_root`]: `|a|, |b|, |c| ≤ 20·m^{1/3}`.
pub const GENERATOR_BOX_FACTOR: f64 = 20.0;

const CTX: &str = "parametrization";

/// `[N^{1/3}/(2ε₁), N^{1/3}/2)`, the admissible range of `σ₁(α)`.
pub fn domain_bounds(m: f64) -> (f64, f64) {
    let r = m.cbrt();
    (r / (2.0 * EPSILON_REAL), r / 2.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Placement {
    Below,
    Inside,
    Above,
}

/// Where `σ₁(x)` sits relative to the window for norm `m > 0`.
fn placement(x: &CubicInt, m: i128) -> Placement {
    let (lo, hi) = domain_bounds(m as f64);
    let x1 = x.embed_real();
    if ((x1 - hi) / hi).abs() < TIE_TOLERANCE {
        return Placement::Inside;
    }
    if ((x1 - lo) / lo).abs() < TIE_TOLERANCE {
        return Placement::Below;
    }
    if x1 < lo {
        Placement::Below
    } else if x1 >= hi {
        Placement::Above
    } else {
        Placement::Inside
    }
}

/// Whether `x` lies in the fundamental domain (positive norm, real embedding
/// in the half-open window).
pub fn in_domain(x: &CubicInt) -> Result<bool> {
    let n = x.norm()?;
    match n.cmp(&0) {
        Ordering::Equal => Err(Error::ZeroNorm),
        Ordering::Less => Ok(false),
        Ordering::Greater => Ok(placement(x, n) == Placement::Inside),
    }
}

/// The unique `±ε^k·x` in the fundamental domain.
pub fn reduce_to_domain(x: &CubicInt) -> Result<CubicInt> {
    let n = x.norm()?;
    if n == 0 {
        return Err(Error::ZeroNorm);
    }
    let (mut y, n) = if n < 0 {
        (x.checked_neg()?, -n)
    } else {
        (*x, n)
    };
    let target = (n as f64).cbrt() / (2.0 * EPSILON_REAL.sqrt());
    let k = ((y.embed_real() / target).ln() / EPSILON_REAL.ln()).round();
    if !k.is_finite() || k.abs() > 1e6 {
        return Err(Error::Overflow("unit reduction exponent"));
    }
    if k != 0.0 {
        y = y.checked_mul(&CubicInt::unit_power(-(k as i64))?)?;
    }
    for _ in 0..8 {
        match placement(&y, n) {
            Placement::Inside => return Ok(y),
            Placement::Above => y = y.checked_mul(&CubicInt::EPSILON_INV)?,
            Placement::Below => y = y.checked_mul(&CubicInt::EPSILON)?,
        }
    }
    Err(Error::Internal(format!(
        "unit reduction of {x} did not converge"
    )))
}

/// `(x)` is primitive iff the cofactor triple is coprime.
pub fn is_primitive_generator(x: &CubicInt) -> Result<bool> {
    Ok(x.cofactor()?.gcd() == 1)
}

/// Bezout data for the cofactor triple: extended Euclid on `(g1, g2)`,
/// then on `(gcd(g1, g2), g3)`, combined as `u = p·s, v = p·t, w = q`.
pub fn solve_uvw(x: &CubicInt) -> Result<(i128, i128, i128)> {
    let g = x.cofactor()?;
    solve_uvw_for(&g)
}

fn solve_uvw_for(g: &CofactorTriple) -> Result<(i128, i128, i128)> {
    let (d, s, t) = ext_gcd(g.g1, g.g2);
    let (one, p, q) = ext_gcd(d, g.g3);
    if one != 1 {
        return Err(Error::NotPrimitive(one));
    }
    Ok((arith::mul(p, s, CTX)?, arith::mul(p, t, CTX)?, q))
}

/// `−ν = a(bw − av) + 2c(au − cw) + 2b(cv − bu)`, reduced mod `m`.
fn nu_from_data(a: i128, b: i128, c: i128, u: i128, v: i128, w: i128, m: u64) -> Result<u64> {
    let t1 = arith::sub(arith::mul(b, w, CTX)?, arith::mul(a, v, CTX)?, CTX)?;
    let t2 = arith::sub(arith::mul(a, u, CTX)?, arith::mul(c, w, CTX)?, CTX)?;
    let t3 = arith::sub(arith::mul(c, v, CTX)?, arith::mul(b, u, CTX)?, CTX)?;
    let neg_nu = arith::dot(
        &[
            (a, t1),
            (arith::mul(2, c, CTX)?, t2),
            (arith::mul(2, b, CTX)?, t3),
        ],
        CTX,
    )?;
    Ok(arith::rem_i128(-neg_nu, m))
}

/// The root pair of the primitive ideal `(x)`.
pub fn root_from_generator(x: &CubicInt) -> Result<RootPair> {
    Ok(GammaData::from_generator(x)?.root())
}

/// A generator together with Bezout data, i.e. the entries of `γ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GammaData {
    pub a: i128,
    pub b: i128,
    pub c: i128,
    pub u: i128,
    pub v: i128,
    pub w: i128,
    pub m: u64,
    pub nu: u64,
}

impl GammaData {
    /// Uses the deterministic Bezout data of [`solve_uvw`].
    pub fn from_generator(x: &CubicInt) -> Result<Self> {
        let g = x.cofactor()?;
        if g.gcd() != 1 {
            return Err(Error::NotPrimitive(g.gcd()));
        }
        let (u, v, w) = solve_uvw_for(&g)?;
        Self::with_uvw(x, u, v, w)
    }

    /// Checks `u·g1 + v·g2 + w·g3 = 1` and `N(x) > 0`, then derives `(m, ν)`.
    pub fn with_uvw(x: &CubicInt, u: i128, v: i128, w: i128) -> Result<Self> {
        let g = x.cofactor()?;
        let det = arith::dot(&[(u, g.g1), (v, g.g2), (w, g.g3)], CTX)?;
        if det != 1 {
            return Err(Error::NotUnimodular(det));
        }
        let n = x.norm()?;
        if n <= 0 {
            return Err(Error::NonPositiveNorm(n));
        }
        let m = u64::try_from(n).map_err(|_| Error::Overflow("norm exceeds u64"))?;
        let nu = nu_from_data(x.a, x.b, x.c, u, v, w, m)?;
        let data = GammaData {
            a: x.a,
            b: x.b,
            c: x.c,
            u,
            v,
            w,
            m,
            nu,
        };
        if mul_mod(mul_mod(nu, nu, m), nu, m) != 2 % m {
            return Err(Error::Internal(format!(
                "{data:?} does not yield a cube root of 2"
            )));
        }
        Ok(data)
    }

    pub fn generator(&self) -> CubicInt {
        CubicInt::new(self.a, self.b, self.c)
    }

    pub fn root(&self) -> RootPair {
        RootPair {
            m: self.m,
            nu: self.nu,
        }
    }

    pub fn cofactor(&self) -> CofactorTriple {
        self.generator()
            .cofactor()
            .expect("validated on construction")
    }

    /// Rows `(u,b,c), (v,a,b), (w,2c,a)`.
    pub fn gamma(&self) -> [[i128; 3]; 3] {
        let (a, b, c) = (self.a, self.b, self.c);
        [[self.u, b, c], [self.v, a, b], [self.w, 2 * c, a]]
    }

    /// `γ⁻¹`, written out from the cofactor triple and `(u, v, w)`.
    pub fn gamma_inverse(&self) -> Result<[[i128; 3]; 3]> {
        let (a, b, c, u, v, w) = (self.a, self.b, self.c, self.u, self.v, self.w);
        let g = self.cofactor();
        let d = |x: i128, y: i128, z: i128, t: i128| {
            arith::sub(arith::mul(x, y, CTX)?, arith::mul(z, t, CTX)?, CTX)
        };
        let two_c = arith::mul(2, c, CTX)?;
        Ok([
            [g.g1, g.g2, g.g3],
            [d(b, w, a, v)?, d(a, u, c, w)?, d(c, v, b, u)?],
            [d(two_c, v, a, w)?, d(b, w, two_c, u)?, d(a, u, b, v)?],
        ])
    }

    /// `det γ = 1` and `γ·H = A_α` where `H = γ⁻¹·A_α` must have the shape
    /// `[[m,0,0],[x,1,0],[y,0,1]]` with `x ≡ −ν`, `y ≡ −ν² (mod m)`.
    pub fn check_matrix_identity(&self) -> Result<()> {
        let gamma = self.gamma();
        let inv = self.gamma_inverse()?;
        if mat_mul(&gamma, &inv)? != IDENTITY3 {
            return Err(Error::NotUnimodular(det3(&gamma)?));
        }
        let mult = multiplication_matrix(&self.generator())?;
        let h = mat_mul(&inv, &mult)?;
        let m = self.m as i128;
        let shape_ok = h[0] == [m, 0, 0] && h[1][1..] == [1, 0] && h[2][1..] == [0, 1];
        let nu = self.nu as i128;
        let residues_ok = (h[1][0] + nu).rem_euclid(m) == 0
            && arith::rem_i128(h[2][0], self.m) == arith::rem_i128(-(nu * nu), self.m);
        if !shape_ok || !residues_ok {
            return Err(Error::Internal(format!(
                "γ⁻¹·A_α = {h:?} is not the ideal basis of {self:?}"
            )));
        }
        if mat_mul(&gamma, &h)? != mult {
            return Err(Error::Internal("γ·H ≠ A_α".into()));
        }
        Ok(())
    }

    /// Right-multiply `γ` by `[[1,0,0],[k,1,0],[l,0,1]]`, the freedom in
    /// choosing `(u, v, w)`.
    pub fn shifted(&self, k: i128, l: i128) -> Result<Self> {
        let comb = |x: i128, y: i128, z: i128| {
            arith::add(
                x,
                arith::add(arith::mul(k, y, CTX)?, arith::mul(l, z, CTX)?, CTX)?,
                CTX,
            )
        };
        let (a, b, c) = (self.a, self.b, self.c);
        Self::with_uvw(
            &self.generator(),
            comb(self.u, b, c)?,
            comb(self.v, a, b)?,
            comb(self.w, arith::mul(2, c, CTX)?, a)?,
        )
    }

    /// Checks all invariants: positive norm, Bezout identity, unimodular `γ`
    /// and the matrix identity with the ideal basis.
    pub fn validate(&self) -> Result<()> {
        let fresh = Self::with_uvw(&self.generator(), self.u, self.v, self.w)?;
        if fresh != *self {
            return Err(Error::Internal(format!(
                "stored (m, ν) disagrees with {fresh:?}"
            )));
        }
        self.check_matrix_identity()
    }
}

const IDENTITY3: [[i128; 3]; 3] = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];

/// Rows `α, θα, θ²α` against `1, θ, θ²`.
pub fn multiplication_matrix(x: &CubicInt) -> Result<[[i128; 3]; 3]> {
    let (a, b, c) = (x.a, x.b, x.c);
    let two = |t: i128| arith::mul(2, t, CTX);
    Ok([[a, b, c], [two(c)?, a, b], [two(b)?, two(c)?, a]])
}

fn mat_mul(x: &[[i128; 3]; 3], y: &[[i128; 3]; 3]) -> Result<[[i128; 3]; 3]> {
    let mut out = [[0i128; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = arith::dot(
                &[(x[i][0], y[0][j]), (x[i][1], y[1][j]), (x[i][2], y[2][j])],
                CTX,
            )?;
        }
    }
    Ok(out)
}

fn det3(x: &[[i128; 3]; 3]) -> Result<i128> {
    let adj = adjugate3(x, CTX)?;
    arith::dot(
        &[
            (x[0][0], adj[0][0]),
            (x[0][1], adj[1][0]),
            (x[0][2], adj[2][0]),
        ],
        CTX,
    )
}

/// The point `(n1/den, n2/den)`, kept unreduced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RationalPoint {
    pub n1: i128,
    pub n2: i128,
    pub den: i128,
}

impl RationalPoint {
    pub fn new(n1: i128, n2: i128, den: i128) -> Result<Self> {
        if den == 0 {
            return Err(Error::Degenerate("zero denominator".into()));
        }
        Ok(RationalPoint { n1, n2, den })
    }

    /// Rebuilds the unreduced point from two rationals: the denominator is
    /// the lcm of the reduced denominators, which is exact when
    /// `gcd(den, n1, n2) = 1`.
    pub fn from_fractions(x: Ratio<i128>, y: Ratio<i128>) -> Result<Self> {
        let (dx, dy) = (*x.denom(), *y.denom());
        let den = arith::mul(dx / arith::gcd(dx, dy), dy, CTX)?;
        Self::new(
            arith::mul(*x.numer(), den / dx, CTX)?,
            arith::mul(*y.numer(), den / dy, CTX)?,
            den,
        )
    }

    pub fn fractions(&self) -> (Ratio<i128>, Ratio<i128>) {
        (Ratio::new(self.n1, self.den), Ratio::new(self.n2, self.den))
    }

    /// The torus point, reduced mod 1 in exact arithmetic first.
    pub fn to_torus(&self) -> TorusPoint {
        let d = self.den.abs();
        let s = self.den.signum();
        let r = |n: i128| (s * n).rem_euclid(d) as f64 / d as f64;
        TorusPoint::new(r(self.n1), r(self.n2))
    }

    pub fn to_torsion(&self) -> Result<TorsionPoint> {
        let s = self.den.signum();
        let g = arith::gcd(arith::gcd(self.n1, self.n2), self.den);
        let narrow =
            |x: i128| i64::try_from(s * x / g).map_err(|_| Error::Overflow("torsion point"));
        TorsionPoint::new(narrow(self.n1)?, narrow(self.n2)?, narrow(self.den)?)
    }

    /// The `γ⁻¹` column `(den, −n1, −n2)` this point was read from.
    pub fn column(&self) -> [i128; 3] {
        [self.den, -self.n1, -self.n2]
    }
}

/// The three approximations to `(ν/m, ν²/m)`, each the intersection of two
/// of the lines `bX + cY = u`, `aX + bY = v`, `2cX + aY = w`:
///
/// 1. `((bu − cv)/g3, (bv − au)/g3)`
/// 2. `((cw − au)/g2, (2cu − bw)/g2)`
/// 3. `((av − bw)/g1, (aw − 2cv)/g1)`
pub fn approximations(g: &GammaData) -> Result<[RationalPoint; 3]> {
    let inv = g.gamma_inverse()?;
    let point = |col: usize| RationalPoint::new(-inv[1][col], -inv[2][col], inv[0][col]);
    Ok([point(2)?, point(1)?, point(0)?])
}

/// `γ⁻¹` columns in matrix order, from the three approximation points.
pub fn columns_from_points(points: &[RationalPoint; 3]) -> [[i128; 3]; 3] {
    [points[2].column(), points[1].column(), points[0].column()]
}

/// Inverts the recovery matrix: `cols` are the three columns of `γ⁻¹`,
/// each `(den, n1′, n2′)`. Returns the `GammaData` read off `γ = adj(γ⁻¹)`.
pub fn recover_root(cols: &[[i128; 3]; 3]) -> Result<GammaData> {
    let mut inv = [[0i128; 3]; 3];
    for (j, col) in cols.iter().enumerate() {
        for i in 0..3 {
            inv[i][j] = col[i];
        }
    }
    let det = det3(&inv)?;
    if det != 1 {
        return Err(Error::NotUnimodular(det));
    }
    let gamma = adjugate3(&inv, CTX)?;
    let [[u, b, c], [v, a, b2], [w, two_c, a2]] = gamma;
    if b2 != b || a2 != a || Some(two_c) != c.checked_mul(2) {
        return Err(Error::Degenerate(format!(
            "inverse {gamma:?} is not of the form [[u,b,c],[v,a,b],[w,2c,a]]"
        )));
    }
    GammaData::with_uvw(&CubicInt::new(a, b, c), u, v, w)
}

/// All domain elements in the search box of `root` that generate its ideal.
pub fn domain_generators_in_box(root: &RootPair, box_factor: f64) -> Result<Vec<CubicInt>> {
    let root = RootPair::new(root.m, root.nu)?;
    let ideal = root_to_ideal(&root)?;
    let m = root.m as i128;
    let bound = (box_factor * (root.m as f64).cbrt()).ceil() as i128;
    let (lo, hi) = domain_bounds(root.m as f64);
    let (nu, nu2) = root.residues();
    let (theta, theta2) = (2f64.cbrt(), 4f64.cbrt());
    let mut found = Vec::new();
    for c in -bound..=bound {
        for b in -bound..=bound {
            let base = theta * b as f64 + theta2 * c as f64;
            let a_min = ((lo - base).floor() as i128 - 1).max(-bound);
            let a_max = ((hi - base).ceil() as i128 + 1).min(bound);
            if a_min > a_max {
                continue;
            }
            // a ≡ −(bν + cν²) (mod m) puts a + bθ + cθ² in the ideal.
            let target = (-(b * nu as i128 + c * nu2 as i128)).rem_euclid(m);
            let mut a = a_min + (target - a_min).rem_euclid(m);
            while a <= a_max {
                let x = CubicInt::new(a, b, c);
                if x.norm()? == m && in_domain(&x)? {
                    debug_assert!(membership(&x, &ideal)?);
                    found.push(x);
                }
                a += m;
            }
        }
    }
    Ok(found)
}

/// The domain generator of the ideal attached to `root`.
pub fn generator_from_root(root: &RootPair) -> Result<CubicInt> {
    let mut found = domain_generators_in_box(root, GENERATOR_BOX_FACTOR)?;
    if found.is_empty() {
        found = domain_generators_in_box(root, 2.0 * GENERATOR_BOX_FACTOR)?;
    }
    match found.as_slice() {
        [x] => Ok(*x),
        [] => Err(Error::Internal(format!(
            "no domain generator found for {root:?}"
        ))),
        many => Err(Error::Internal(format!(
            "{} domain generators for {root:?}",
            many.len()
        ))),
    }
}

/// One [`GammaData`] per root pair with `lo < m ≤ hi`, ordered by `(m, ν)`.
///
/// Walks the fundamental domain directly: for `σ₁(α)` in the window and
/// `|σ₂(α)|² = N/σ₁(α)` bounded, the coefficients satisfy
/// `|b| ≤ (σ₁ + 2|σ₂|)/(3θ)`, `|c| ≤ (σ₁ + 2|σ₂|)/(3θ²)`, and `a` ranges over
/// the window shifted by `bθ + cθ²`.
pub fn enumerate_generators_range(lo: u64, hi: u64) -> Result<Vec<GammaData>> {
    if hi <= lo {
        return Ok(Vec::new());
    }
    let m_min = lo + 1;
    let (x1_lo, _) = domain_bounds(m_min as f64);
    let (_, x1_hi) = domain_bounds(hi as f64);
    let x2_max = (2.0 * EPSILON_REAL).sqrt() * (hi as f64).cbrt();
    let spread = x1_hi + 2.0 * x2_max;
    let (theta, theta2) = (2f64.cbrt(), 4f64.cbrt());
    let b_max = (spread / (3.0 * theta)).ceil() as i128 + 1;
    let c_max = (spread / (3.0 * theta2)).ceil() as i128 + 1;

    let per_c: Vec<Result<Vec<GammaData>>> = (-c_max..=c_max)
        .into_par_iter()
        .map(|c| {
            let mut out = Vec::new();
            for b in -b_max..=b_max {
                let base = theta * b as f64 + theta2 * c as f64;
                let a_min = (x1_lo - base).floor() as i128 - 1;
                let a_max = (x1_hi - base).ceil() as i128 + 1;
                for a in a_min..=a_max {
                    let x = CubicInt::new(a, b, c);
                    let n = x.norm()?;
                    if n <= lo as i128 || n > hi as i128 || !in_domain(&x)? {
                        continue;
                    }
                    if is_primitive_generator(&x)? {
                        out.push(GammaData::from_generator(&x)?);
                    }
                }
            }
            Ok(out)
        })
        .collect();
    let mut all = Vec::new();
    for chunk in per_c {
        all.extend(chunk?);
    }
    all.sort_by_key(|g| (g.m, g.nu));
    Ok(all)
}

/// One generator per root pair with `M < m ≤ 2M`.
pub fn enumerate_generators(big_m: u64) -> Result<Vec<GammaData>> {
    if big_m == 0 {
        return Err(Error::InvalidArgument("M must be at least 1".into()));
    }
    let hi = big_m.checked_mul(2).ok_or(Error::Overflow("2M"))?;
    enumerate_generators_range(big_m, hi)
}
