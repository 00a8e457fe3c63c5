//! Measurement drivers shared by the CLI and the acceptance suite.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::arith;
use crate::error::Result;
use crate::parametrization::{
    approximations, enumerate_generators, enumerate_generators_range, GammaData,
};
use crate::root_finder::RootPair;
use crate::torus_geometry::{disc_count_stats, min_line_norm, DiscStats, TorsionPoint, TorusPoint};

/// `(ν/m, ν²/m)` on the torus.
pub fn root_point(p: &RootPair) -> TorusPoint {
    let (nu, nu2) = p.residues();
    TorusPoint::new(nu as f64 / p.m as f64, nu2 as f64 / p.m as f64)
}

/// `m · sup-distance` from each approximation point to its root point,
/// evaluated as an exact fraction before the final division.
pub fn scaled_errors(g: &GammaData) -> Result<[f64; 3]> {
    const CTX: &str = "scaled error";
    let (nu, nu2) = g.root().residues();
    let m = g.m as i128;
    let mut out = [0.0; 3];
    for (slot, p) in out.iter_mut().zip(approximations(g)?) {
        let den = p.den.abs();
        let modulus = arith::mul(den, m, CTX)?;
        // |n/den − t/m| reduced mod 1, scaled by den·m.
        let gap = |n: i128, t: u64| -> Result<i128> {
            let diff = arith::sub(
                arith::mul(n * p.den.signum(), m, CTX)?,
                arith::mul(t as i128, den, CTX)?,
                CTX,
            )?;
            let r = diff.rem_euclid(modulus);
            Ok(r.min(modulus - r))
        };
        *slot = gap(p.n1, nu)?.max(gap(p.n2, nu2)?) as f64 / den as f64;
    }
    Ok(out)
}

#[derive(Debug, Clone, Serialize)]
pub struct ApproxQuality {
    pub lo: u64,
    pub hi: u64,
    pub pair_count: usize,
    /// Largest `m · sup-distance` over all pairs and all three points.
    pub max_scaled_error: f64,
    pub worst_pair: Option<RootPair>,
    /// Extremes of `g_i / m^{2/3}` over all generators and all `i`.
    pub min_denominator_ratio: f64,
    pub max_denominator_ratio: f64,
}

/// Approximation quality over all root pairs with `lo < m ≤ hi`.
pub fn approximation_quality(lo: u64, hi: u64) -> Result<ApproxQuality> {
    let mut q = ApproxQuality {
        lo,
        hi,
        pair_count: 0,
        max_scaled_error: 0.0,
        worst_pair: None,
        min_denominator_ratio: f64::INFINITY,
        max_denominator_ratio: 0.0,
    };
    for g in enumerate_generators_range(lo, hi)? {
        q.pair_count += 1;
        let worst = scaled_errors(&g)?.into_iter().fold(0.0, f64::max);
        if worst > q.max_scaled_error {
            q.max_scaled_error = worst;
            q.worst_pair = Some(g.root());
        }
        let scale = (g.m as f64).powf(2.0 / 3.0);
        let c = g.cofactor();
        for gi in [c.g1, c.g2, c.g3] {
            let r = gi as f64 / scale;
            q.min_denominator_ratio = q.min_denominator_ratio.min(r);
            q.max_denominator_ratio = q.max_denominator_ratio.max(r);
        }
    }
    Ok(q)
}

#[derive(Debug, Clone, Serialize)]
pub struct SpacingStats {
    #[serde(rename = "M")]
    pub big_m: u64,
    pub radius: f64,
    pub pair_count: usize,
    /// Minimum over all approximation points of `min_line_norm / m^{1/3}`.
    pub min_line_norm_scaled: f64,
    pub max_line_norm_scaled: f64,
    pub disc: DiscStats,
}

/// Line-lattice minima of the approximation points and disc counts of the
/// root points at radius `radius_scale / M`, for `M < m ≤ 2M`.
pub fn spacing_stats(big_m: u64, radius_scale: f64) -> Result<SpacingStats> {
    let gens = enumerate_generators(big_m)?;
    let radius = radius_scale / big_m as f64;
    let mut lo = f64::INFINITY;
    let mut hi: f64 = 0.0;
    for g in &gens {
        let cube = (g.m as f64).cbrt();
        for p in approximations(g)? {
            let r = min_line_norm(&p.to_torsion()?) / cube;
            lo = lo.min(r);
            hi = hi.max(r);
        }
    }
    let points: Vec<TorusPoint> = gens.iter().map(|g| root_point(&g.root())).collect();
    Ok(SpacingStats {
        big_m,
        radius,
        pair_count: gens.len(),
        min_line_norm_scaled: lo,
        max_line_norm_scaled: hi,
        disc: disc_count_stats(&points, radius)?,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct CollisionReport {
    pub pair_count: usize,
    pub point_count: usize,
    pub distinct_points: usize,
    /// Torsion points produced by more than one root pair.
    pub shared_points: usize,
}

/// How often one approximation point serves several root pairs with
/// `lo < m ≤ hi`. Recorded only; no claim is made about the outcome.
pub fn approximation_collisions(lo: u64, hi: u64) -> Result<CollisionReport> {
    let gens = enumerate_generators_range(lo, hi)?;
    let mut owners: BTreeMap<TorsionPoint, Vec<RootPair>> = BTreeMap::new();
    for g in &gens {
        for p in approximations(g)? {
            let entry = owners.entry(p.to_torsion()?).or_default();
            if !entry.contains(&g.root()) {
                entry.push(g.root());
            }
        }
    }
    Ok(CollisionReport {
        pair_count: gens.len(),
        point_count: 3 * gens.len(),
        distinct_points: owners.len(),
        shared_points: owners.values().filter(|v| v.len() > 1).count(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_quality_run() {
        let q = approximation_quality(0, 500).unwrap();
        assert!(q.pair_count > 0);
        assert!(q.max_scaled_error.is_finite() && q.max_scaled_error > 0.0);
        assert!(q.min_denominator_ratio >= 0.1 && q.max_denominator_ratio <= 4.0);
    }

    #[test]
    fn small_spacing_run() {
        let s = spacing_stats(3, 1.0).unwrap();
        // (3, 6]: pairs (5,3), (6,2) at (3/5,4/5), (1/3,2/3), distance ≈ 0.298 ≤ 2/3.
        assert_eq!(s.pair_count, 2);
        assert_eq!(s.disc.max_count, 2);
        assert_eq!(spacing_stats(3, 0.4).unwrap().disc.max_count, 1);
        assert!(s.min_line_norm_scaled > 0.0);
    }

    #[test]
    fn collisions_are_counted() {
        let c = approximation_collisions(0, 200).unwrap();
        assert_eq!(c.point_count, 3 * c.pair_count);
        assert!(c.distinct_points <= c.point_count);
    }
}
