//! Points on `R²/Z²`, lattices of integral lines through torsion points,
//! and disc counts.
//!
//! For a torsion point `t = (r/q, s/q)` the integral lines `AX + BY = C`
//! through a representative form the index-`q` lattice
//! `Λ_t = {(A, B) : Ar + Bs ≡ 0 (mod q)}`. Its dual is `Z² + Z·t`, which in
//! two dimensions is `Λ_t` rotated by a right angle and scaled by `1/q`, so
//! any distinct torsion point of order `q₁` is at distance at least
//! `λ₁(Λ_t)/(q·q₁)`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::arith::{self, ext_gcd, gcd, inv_mod};
use crate::error::{Error, Result};
use crate::parametrization::GammaData;

const CTX: &str = "torus geometry";

/// A point of `R²/Z²` with both coordinates in `[0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TorusPoint {
    pub x: f64,
    pub y: f64,
}

fn wrap(t: f64) -> f64 {
    let r = t.rem_euclid(1.0);
    if r >= 1.0 {
        0.0
    } else {
        r
    }
}

/// Shortest signed representative of `t` modulo 1, in `[-1/2, 1/2]`.
fn centered(t: f64) -> f64 {
    let r = wrap(t);
    if r > 0.5 {
        r - 1.0
    } else {
        r
    }
}

impl TorusPoint {
    pub fn new(x: f64, y: f64) -> Self {
        TorusPoint {
            x: wrap(x),
            y: wrap(y),
        }
    }

    /// Minimal-image displacement `other − self`.
    pub fn delta(&self, other: &TorusPoint) -> (f64, f64) {
        (centered(other.x - self.x), centered(other.y - self.y))
    }

    pub fn distance(&self, other: &TorusPoint) -> f64 {
        let (dx, dy) = self.delta(other);
        dx.hypot(dy)
    }

    pub fn sup_distance(&self, other: &TorusPoint) -> f64 {
        let (dx, dy) = self.delta(other);
        dx.abs().max(dy.abs())
    }
}

pub fn torus_distance(p: &TorusPoint, q: &TorusPoint) -> f64 {
    p.distance(q)
}

pub fn torus_distance_sup(p: &TorusPoint, q: &TorusPoint) -> f64 {
    p.sup_distance(q)
}

/// `(r/q, s/q)` normalized to `q ≥ 1`, `gcd(r, s, q) = 1`, `0 ≤ r, s < q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TorsionPoint {
    r: i64,
    s: i64,
    q: i64,
}

impl TorsionPoint {
    pub fn new(r: i64, s: i64, q: i64) -> Result<Self> {
        if q == 0 {
            return Err(Error::Degenerate("torsion order must be nonzero".into()));
        }
        let (r, s, q) = (r as i128, s as i128, q as i128);
        let g = gcd(gcd(r, s), q) * q.signum();
        let (r, s, q) = (r / g, s / g, q / g);
        Ok(TorsionPoint {
            r: r.rem_euclid(q) as i64,
            s: s.rem_euclid(q) as i64,
            q: q as i64,
        })
    }

    pub fn r(&self) -> i64 {
        self.r
    }

    pub fn s(&self) -> i64 {
        self.s
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    pub fn to_torus(&self) -> TorusPoint {
        TorusPoint::new(self.r as f64 / self.q as f64, self.s as f64 / self.q as f64)
    }

    /// All torsion points of exact order `q`, ordered by `(r, s)`.
    pub fn all_of_order(q: i64) -> Vec<TorsionPoint> {
        let mut out = Vec::new();
        for r in 0..q {
            for s in 0..q {
                if gcd(gcd(r as i128, s as i128), q as i128) == 1 {
                    out.push(TorsionPoint { r, s, q });
                }
            }
        }
        out
    }
}

/// `(q·q₁)² · dist²(t, t₁)`, an exact integer.
pub fn scaled_distance_sq(t: &TorsionPoint, t1: &TorsionPoint) -> i128 {
    let qq = t.q as i128 * t1.q as i128;
    let nearest = |num: i128| {
        let r = num.rem_euclid(qq);
        r.min(qq - r)
    };
    let dx = nearest(t.r as i128 * t1.q as i128 - t1.r as i128 * t.q as i128);
    let dy = nearest(t.s as i128 * t1.q as i128 - t1.s as i128 * t.q as i128);
    dx * dx + dy * dy
}

/// A rank-2 sublattice of `Z²` spanned by `v1, v2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Lattice2 {
    pub v1: [i64; 2],
    pub v2: [i64; 2],
}

fn norm_sq(v: [i128; 2]) -> i128 {
    v[0] * v[0] + v[1] * v[1]
}

impl Lattice2 {
    pub fn new(v1: [i64; 2], v2: [i64; 2]) -> Result<Self> {
        let l = Lattice2 { v1, v2 };
        if l.det() == 0 {
            return Err(Error::Degenerate(format!(
                "basis {v1:?}, {v2:?} is singular"
            )));
        }
        Ok(l)
    }

    pub fn det(&self) -> i128 {
        self.v1[0] as i128 * self.v2[1] as i128 - self.v1[1] as i128 * self.v2[0] as i128
    }

    pub fn contains(&self, v: [i64; 2]) -> bool {
        let d = self.det();
        let cross =
            |p: [i64; 2], q: [i64; 2]| p[0] as i128 * q[1] as i128 - p[1] as i128 * q[0] as i128;
        cross(v, self.v2) % d == 0 && cross(self.v1, v) % d == 0
    }

    /// Canonical basis `(p, x), (0, d)` with `p, d > 0` and `0 ≤ x < d`.
    pub fn hnf(&self) -> Lattice2 {
        let (a, b) = (self.v1.map(i128::from), self.v2.map(i128::from));
        let (p, s, t) = ext_gcd(a[0], b[0]);
        let x0 = s * a[1] + t * b[1];
        let d = ((b[0] / p) * a[1] - (a[0] / p) * b[1]).abs();
        Lattice2 {
            v1: [p as i64, x0.rem_euclid(d) as i64],
            v2: [0, d as i64],
        }
    }

    pub fn same_lattice(&self, other: &Lattice2) -> bool {
        self.hnf() == other.hnf()
    }
}

/// `{(A, B) : A·r + B·s ≡ 0 (mod q)}`, determinant `q`.
pub fn line_lattice(t: &TorsionPoint) -> Lattice2 {
    let g = gcd(t.s as i128, t.q as i128) as i64;
    let h = t.q / g;
    // A ≡ 0 (mod g); with A = g·A′, B ≡ −A′·r·(s/g)⁻¹ (mod q/g).
    let x = if h == 1 {
        0
    } else {
        let inv = inv_mod(((t.s / g) % h) as u64, h as u64).expect("s/g is a unit mod q/g") as i128;
        (-(t.r as i128) * inv).rem_euclid(h as i128) as i64
    };
    Lattice2 {
        v1: [g, x],
        v2: [0, h],
    }
}

/// Lagrange–Gauss reduction. Returns a shortest nonzero vector and a
/// reduced basis whose first vector is that vector.
pub fn gauss_reduce(l: &Lattice2) -> Result<([i64; 2], Lattice2)> {
    if l.det() == 0 {
        return Err(Error::Degenerate("singular lattice".into()));
    }
    let mut u = l.v1.map(i128::from);
    let mut v = l.v2.map(i128::from);
    loop {
        if norm_sq(u) > norm_sq(v) {
            std::mem::swap(&mut u, &mut v);
        }
        let n = norm_sq(u);
        let dot = u[0] * v[0] + u[1] * v[1];
        let mu = (2 * dot + n).div_euclid(2 * n);
        if mu == 0 {
            break;
        }
        v = [v[0] - mu * u[0], v[1] - mu * u[1]];
    }
    let narrow = |w: [i128; 2]| -> Result<[i64; 2]> {
        Ok([
            i64::try_from(w[0]).map_err(|_| Error::Overflow(CTX))?,
            i64::try_from(w[1]).map_err(|_| Error::Overflow(CTX))?,
        ])
    };
    let (u, v) = (narrow(u)?, narrow(v)?);
    Ok((u, Lattice2 { v1: u, v2: v }))
}

/// Squared norm of a shortest nonzero vector in the line lattice.
pub fn min_line_norm_sq(t: &TorsionPoint) -> i128 {
    let (v, _) = gauss_reduce(&line_lattice(t)).expect("line lattices are nonsingular");
    norm_sq(v.map(i128::from))
}

/// `min{√(A² + B²) : A·r/q + B·s/q ∈ Z, (A, B) ≠ 0}`.
pub fn min_line_norm(t: &TorsionPoint) -> f64 {
    (min_line_norm_sq(t) as f64).sqrt()
}

/// `min_line_norm(t)/(q·Q)`: no distinct torsion point of order `≤ Q` is
/// closer to `t`.
pub fn torsion_spacing_bound(t: &TorsionPoint, big_q: u64) -> Result<f64> {
    if big_q == 0 {
        return Err(Error::InvalidArgument("Q must be at least 1".into()));
    }
    Ok(min_line_norm(t) / (t.q as f64 * big_q as f64))
}

/// Exact form of the spacing bound between `t` and a distinct `t1` with
/// `q₁ ≤ Q`: `(q·q₁)²·dist² · Q² ≥ λ₁² · q₁²`.
pub fn spacing_bound_holds(t: &TorsionPoint, t1: &TorsionPoint, big_q: u64) -> bool {
    let lhs = scaled_distance_sq(t, t1) * (big_q as i128).pow(2);
    lhs >= min_line_norm_sq(t) * (t1.q as i128).pow(2)
}

/// Outcome of checking the spacing bound over all pairs of torsion points.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpacingCheck {
    pub pairs_checked: u64,
    pub violations: Vec<(TorsionPoint, TorsionPoint, u64)>,
}

/// Every ordered pair of distinct torsion points of order `≤ q_max`, against
/// every `Q` with `q₁ ≤ Q ≤ big_q_max`.
pub fn check_spacing_exhaustive(q_max: i64, big_q_max: u64) -> SpacingCheck {
    let points: Vec<TorsionPoint> = (1..=q_max).flat_map(TorsionPoint::all_of_order).collect();
    let mut check = SpacingCheck {
        pairs_checked: 0,
        violations: Vec::new(),
    };
    for t in &points {
        for t1 in &points {
            if t == t1 {
                continue;
            }
            for big_q in (t1.q as u64).max(1)..=big_q_max {
                check.pairs_checked += 1;
                if !spacing_bound_holds(t, t1, big_q) {
                    check.violations.push((*t, *t1, big_q));
                }
            }
        }
    }
    check
}

/// The integral-line lattices of the three approximation points, in point
/// order; determinants are `g3, g2, g1` up to sign.
pub fn approx_lattices(g: &GammaData) -> Result<[Lattice2; 3]> {
    let n = |x: i128| i64::try_from(x).map_err(|_| Error::Overflow(CTX));
    let two_c = arith::mul(2, g.c, CTX)?;
    let (a, b, c, tc) = (n(g.a)?, n(g.b)?, n(g.c)?, n(two_c)?);
    Ok([
        Lattice2::new([b, c], [a, b])?,
        Lattice2::new([tc, a], [b, c])?,
        Lattice2::new([a, b], [tc, a])?,
    ])
}

/// Disc statistics for a point set at a fixed radius.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiscStats {
    /// Largest number of points in one closed disc of the radius.
    pub max_count: usize,
    /// Largest number of points within twice the radius of a point; bounds
    /// every disc count from above.
    pub max_neighbor_count: usize,
    /// Neighbor count (within twice the radius, self included) → number of points.
    pub histogram: BTreeMap<usize, usize>,
}

const DISC_SLACK: f64 = 1e-9;

/// Bucketed neighbor lists: indices within `reach` of each point.
fn neighbor_lists(points: &[TorusPoint], reach: f64) -> Vec<Vec<usize>> {
    let cells = ((1.0 / reach).floor() as usize).max(1);
    let cell_of = |t: f64| ((t * cells as f64) as usize).min(cells - 1);
    let mut grid: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for (i, p) in points.iter().enumerate() {
        grid.entry((cell_of(p.x), cell_of(p.y)))
            .or_default()
            .push(i);
    }
    let limit = reach * (1.0 + DISC_SLACK);
    points
        .iter()
        .map(|p| {
            let (cx, cy) = (cell_of(p.x), cell_of(p.y));
            let mut seen = std::collections::BTreeSet::new();
            for dx in [cells - 1, 0, 1] {
                for dy in [cells - 1, 0, 1] {
                    seen.insert(((cx + dx) % cells, (cy + dy) % cells));
                }
            }
            let mut near: Vec<usize> = seen
                .iter()
                .filter_map(|cell| grid.get(cell))
                .flatten()
                .copied()
                .filter(|&j| p.distance(&points[j]) <= limit)
                .collect();
            near.sort_unstable();
            near
        })
        .collect()
}

/// Lifts `d + (i, j)` of a displacement, `i, j ∈ {−1, 0, 1}`, no longer than `reach`.
fn lifts_within(d: (f64, f64), reach: f64) -> impl Iterator<Item = (f64, f64)> {
    let limit = reach * (1.0 + DISC_SLACK);
    (-1..=1)
        .flat_map(move |i| (-1..=1).map(move |j| (d.0 + i as f64, d.1 + j as f64)))
        .filter(move |e| e.0.hypot(e.1) <= limit)
}

fn check_radius(radius: f64) -> Result<()> {
    if !(radius > 0.0 && radius < 0.5) {
        return Err(Error::InvalidArgument(format!(
            "radius {radius} outside (0, 1/2)"
        )));
    }
    Ok(())
}

/// Centres of the two circles of radius `r` through `p` and `p + d`.
fn circle_centres(p: &TorusPoint, d: (f64, f64), r: f64) -> Option<[TorusPoint; 2]> {
    let len_sq = d.0 * d.0 + d.1 * d.1;
    let h_sq = r * r - len_sq / 4.0;
    if h_sq < 0.0 || len_sq == 0.0 {
        return None;
    }
    let scale = (h_sq / len_sq).sqrt();
    let (mx, my) = (p.x + d.0 / 2.0, p.y + d.1 / 2.0);
    Some([
        TorusPoint::new(mx - d.1 * scale, my + d.0 * scale),
        TorusPoint::new(mx + d.1 * scale, my - d.0 * scale),
    ])
}

/// Exact maximum disc count plus the dominating neighbor statistic.
///
/// For `r < 1/2` a disc holds at most one lift of each point, so torus
/// discs behave like planar discs over the lifted point set. An optimal
/// closed disc can be moved until it is centred on a point or has two points
/// on its boundary, and every point it holds lies within `2r` of any other,
/// so candidate centres come from neighbor pairs only.
pub fn disc_count_stats(points: &[TorusPoint], radius: f64) -> Result<DiscStats> {
    check_radius(radius)?;
    let lists = neighbor_lists(points, 2.0 * radius);
    let limit = radius * (1.0 + DISC_SLACK);
    let mut stats = DiscStats {
        max_count: 0,
        max_neighbor_count: 0,
        histogram: BTreeMap::new(),
    };
    for (i, near) in lists.iter().enumerate() {
        *stats.histogram.entry(near.len()).or_default() += 1;
        stats.max_neighbor_count = stats.max_neighbor_count.max(near.len());
        let count_at = |c: &TorusPoint| {
            near.iter()
                .filter(|&&k| c.distance(&points[k]) <= limit)
                .count()
        };
        let p = &points[i];
        stats.max_count = stats.max_count.max(count_at(p));
        for &j in near {
            if j == i {
                continue;
            }
            for d in lifts_within(p.delta(&points[j]), 2.0 * radius) {
                if let Some(centres) = circle_centres(p, d, radius) {
                    for c in &centres {
                        stats.max_count = stats.max_count.max(count_at(c));
                    }
                }
            }
        }
    }
    Ok(stats)
}

/// Maximum disc count by brute force over all candidate centres, `O(n³)`.
pub fn max_disc_count_exact(points: &[TorusPoint], radius: f64) -> Result<usize> {
    check_radius(radius)?;
    let limit = radius * (1.0 + DISC_SLACK);
    let count_at = |c: &TorusPoint| points.iter().filter(|q| c.distance(q) <= limit).count();
    let mut best = 0;
    for (i, p) in points.iter().enumerate() {
        best = best.max(count_at(p));
        for q in &points[i + 1..] {
            for d in lifts_within(p.delta(q), 2.0 * radius) {
                if let Some(centres) = circle_centres(p, d, radius) {
                    for c in &centres {
                        best = best.max(count_at(c));
                    }
                }
            }
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cubic_ring::CubicInt;
    use crate::parametrization::{approximations, enumerate_generators_range};
    use proptest::prelude::*;

    fn tp(r: i64, s: i64, q: i64) -> TorsionPoint {
        TorsionPoint::new(r, s, q).unwrap()
    }

    #[test]
    fn distance_examples() {
        let o = TorusPoint::new(0.0, 0.0);
        assert!((torus_distance(&o, &TorusPoint::new(0.5, 0.5)) - 0.5f64.sqrt()).abs() < 1e-15);
        assert!(
            (torus_distance(&TorusPoint::new(0.9, 0.0), &TorusPoint::new(0.1, 0.0)) - 0.2).abs()
                < 1e-12
        );
        let p = TorusPoint::new(0.3, 0.7);
        assert_eq!(torus_distance(&p, &p), 0.0);
        assert!((torus_distance_sup(&o, &TorusPoint::new(0.9, 0.3)) - 0.3).abs() < 1e-12);
        assert_eq!(TorusPoint::new(-0.25, 1.5), TorusPoint::new(0.75, 0.5));
        assert_eq!(TorusPoint::new(-1e-20, 0.0).x, 0.0);
    }

    #[test]
    fn torsion_normalization() {
        assert_eq!(tp(2, 4, 6), tp(1, 2, 3));
        assert_eq!(tp(-1, 5, 3), tp(2, 2, 3));
        assert_eq!(tp(1, 1, -2), tp(1, 1, 2));
        assert_eq!(tp(3, 3, 3), tp(0, 0, 1));
        assert!(TorsionPoint::new(1, 1, 0).is_err());
        assert_eq!(TorsionPoint::all_of_order(2).len(), 3);
    }

    #[test]
    fn line_lattice_examples() {
        let l = line_lattice(&tp(0, 0, 1));
        assert_eq!(l.det().abs(), 1);
        let l = line_lattice(&tp(1, 2, 3));
        assert_eq!(l.det().abs(), 3);
        assert!(l.contains([1, 1]) && l.contains([3, 0]) && !l.contains([1, 0]));
        let l = line_lattice(&tp(1, 1, 2));
        assert_eq!(l.det().abs(), 2);
        assert!(l.contains([1, 1]) && !l.contains([0, 1]));
    }

    #[test]
    fn line_lattice_membership_exhaustive() {
        for q in 1..=30i64 {
            for t in TorsionPoint::all_of_order(q) {
                let l = line_lattice(&t);
                assert_eq!(l.det().abs(), q as i128);
                for a in -q..=q {
                    for b in -q..=q {
                        let on_line = (a * t.r() + b * t.s()).rem_euclid(q) == 0;
                        assert_eq!(l.contains([a, b]), on_line, "{t:?} ({a},{b})");
                    }
                }
            }
        }
    }

    #[test]
    fn gauss_examples() {
        let norm = |v1, v2| {
            let (v, _) = gauss_reduce(&Lattice2::new(v1, v2).unwrap()).unwrap();
            norm_sq(v.map(i128::from))
        };
        assert_eq!(norm([1, -1], [1, 1]), 2);
        assert_eq!(norm([1, 0], [0, 1]), 1);
        assert_eq!(norm([3, 0], [1, 1]), 2);
        assert!(Lattice2::new([1, 2], [2, 4]).is_err());
    }

    fn brute_min(l: &Lattice2, bound: i64) -> i128 {
        let mut best = i128::MAX;
        for x in -bound..=bound {
            for y in -bound..=bound {
                if (x, y) == (0, 0) {
                    continue;
                }
                let v = [
                    x as i128 * l.v1[0] as i128 + y as i128 * l.v2[0] as i128,
                    x as i128 * l.v1[1] as i128 + y as i128 * l.v2[1] as i128,
                ];
                best = best.min(norm_sq(v));
            }
        }
        best
    }

    #[test]
    fn gauss_matches_exhaustive_search() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let mut done = 0;
        while done < 1000 {
            let mut e = || rng.random_range(-1000i64..=1000);
            let Ok(l) = Lattice2::new([e(), e()], [e(), e()]) else {
                continue;
            };
            let (v, reduced) = gauss_reduce(&l).unwrap();
            assert!(reduced.same_lattice(&l));
            // In the reduced basis the shortest vector has coefficients ≤ 1 in size,
            // so a small coefficient box around it is exhaustive.
            assert_eq!(norm_sq(v.map(i128::from)), brute_min(&reduced, 3), "{l:?}");
            done += 1;
        }
    }

    #[test]
    fn gauss_matches_coefficient_box_on_small_lattices() {
        for a in -6i64..=6 {
            for b in -6i64..=6 {
                for c in [-5i64, -1, 2, 7] {
                    let Ok(l) = Lattice2::new([a, b], [c, 3]) else {
                        continue;
                    };
                    let (v, _) = gauss_reduce(&l).unwrap();
                    assert_eq!(norm_sq(v.map(i128::from)), brute_min(&l, 40), "{l:?}");
                }
            }
        }
    }

    #[test]
    fn min_line_norm_examples() {
        assert_eq!(min_line_norm(&tp(0, 0, 1)), 1.0);
        assert!((min_line_norm(&tp(1, 1, 2)) - 2f64.sqrt()).abs() < 1e-15);
        assert!((min_line_norm(&tp(1, 2, 3)) - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn spacing_bound_examples() {
        assert!(
            (torsion_spacing_bound(&tp(1, 2, 3), 3).unwrap() - 2f64.sqrt() / 9.0).abs() < 1e-15
        );
        assert!((torsion_spacing_bound(&tp(0, 0, 1), 7).unwrap() - 1.0 / 7.0).abs() < 1e-15);
        assert!(
            (torsion_spacing_bound(&tp(1, 1, 2), 2).unwrap() - 2f64.sqrt() / 4.0).abs() < 1e-15
        );
        assert!(torsion_spacing_bound(&tp(0, 0, 1), 0).is_err());
    }

    #[test]
    fn spacing_bound_exhaustive_small() {
        let check = check_spacing_exhaustive(8, 8);
        assert!(check.pairs_checked > 0);
        assert!(
            check.violations.is_empty(),
            "{:?}",
            &check.violations[..check.violations.len().min(5)]
        );
        // The bound is attained: (0,0) against (1/Q, 0).
        assert!(!spacing_bound_holds(&tp(0, 0, 1), &tp(1, 0, 5), 4));
        assert!(spacing_bound_holds(&tp(0, 0, 1), &tp(1, 0, 5), 5));
    }

    #[test]
    fn approx_lattice_examples() {
        let g = GammaData::with_uvw(&CubicInt::new(1, 1, -1), 1, 0, -1).unwrap();
        let [l1, l2, l3] = approx_lattices(&g).unwrap();
        assert_eq!((l1.v1, l1.v2), ([1, -1], [1, 1]));
        assert_eq!(l1.det().abs(), 2);
        assert_eq!(l2.det().abs(), 1);
        assert_eq!((l3.v1, l3.v2), ([1, 1], [-2, 1]));
        assert_eq!(l3.det().abs(), 3);
    }

    #[test]
    fn approx_lattices_are_line_lattices() {
        for g in enumerate_generators_range(0, 3000).unwrap() {
            let lattices = approx_lattices(&g).unwrap();
            let points = approximations(&g).unwrap();
            let c = g.cofactor();
            for ((l, p), den) in lattices.iter().zip(&points).zip([c.g3, c.g2, c.g1]) {
                assert_eq!(l.det().abs(), den);
                let t = p.to_torsion().unwrap();
                assert_eq!(t.q() as i128, den, "columns of γ⁻¹ are primitive");
                assert!(l.same_lattice(&line_lattice(&t)), "{g:?}");
            }
        }
    }

    #[test]
    fn disc_examples() {
        let one = [TorusPoint::new(0.3, 0.3)];
        assert_eq!(disc_count_stats(&one, 0.1).unwrap().max_count, 1);
        let two = [TorusPoint::new(0.1, 0.1), TorusPoint::new(0.4, 0.1)];
        let s = disc_count_stats(&two, 0.1).unwrap();
        assert_eq!((s.max_count, s.max_neighbor_count), (1, 1));
        let wrapped = [TorusPoint::new(0.02, 0.5), TorusPoint::new(0.97, 0.5)];
        assert_eq!(disc_count_stats(&wrapped, 0.03).unwrap().max_count, 2);
        assert!(disc_count_stats(&one, 0.5).is_err());
        assert!(disc_count_stats(&one, 0.0).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]
        #[test]
        fn bucketed_discs_match_brute_force(
            coords in prop::collection::vec((0.0f64..1.0, 0.0f64..1.0), 1..40),
            radius in 0.01f64..0.49,
        ) {
            let points: Vec<TorusPoint> = coords.iter().map(|&(x, y)| TorusPoint::new(x, y)).collect();
            let stats = disc_count_stats(&points, radius).unwrap();
            prop_assert_eq!(stats.max_count, max_disc_count_exact(&points, radius).unwrap());
            prop_assert!(stats.max_count <= stats.max_neighbor_count);
            prop_assert_eq!(stats.histogram.values().sum::<usize>(), points.len());
        }

        #[test]
        fn torus_distance_is_a_metric(
            p in (-2.0f64..2.0, -2.0f64..2.0),
            q in (-2.0f64..2.0, -2.0f64..2.0),
            s in (-2.0f64..2.0, -2.0f64..2.0),
        ) {
            let (p, q, s) = (TorusPoint::new(p.0, p.1), TorusPoint::new(q.0, q.1), TorusPoint::new(s.0, s.1));
            prop_assert!((p.distance(&q) - q.distance(&p)).abs() < 1e-12);
            prop_assert!(p.distance(&s) <= p.distance(&q) + q.distance(&s) + 1e-12);
            prop_assert!(p.distance(&q) <= 0.5f64.sqrt() + 1e-12);
            prop_assert!(p.sup_distance(&q) <= p.distance(&q) + 1e-15);
        }
    }
}
