//! Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
//! criterion fails. Runs without the libtest harness so the lines always show.

use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use cubic_congruence::cubic_ring::CubicInt;
use cubic_congruence::experiments::{approximation_quality, spacing_stats};
use cubic_congruence::ideal_correspondence::{
    ideal_to_root, is_ideal_lattice, root_to_ideal, IdealHnf,
};
use cubic_congruence::output::sha256_hex;
use cubic_congruence::parametrization::{
    approximations, columns_from_points, enumerate_generators, enumerate_generators_range,
    in_domain, is_primitive_generator, recover_root,
};
use cubic_congruence::root_finder::{enumerate_root_pairs, roots_bruteforce, roots_fast};
use cubic_congruence::sieve_check::{dual_ratio, sieve_lhs, sieve_ratio, sieve_rhs, CoeffSeq};
use cubic_congruence::torus_geometry::check_spacing_exhaustive;
use cubic_congruence::HnfMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Upper bound on `m · sup-distance` of every approximation point.
const C_APPROX: f64 = 8.0;
/// Allowed spread (max/min) of per-dyad measured constants.
const DYADIC_SPREAD: f64 = 2.0;
/// Admissible band for `g_i / m^{2/3}`.
const DENOMINATOR_BAND: (f64, f64) = (0.1, 4.0);
/// Upper bound on the number of root points in a disc of radius `1/M`.
const C_DISC: usize = 2;
/// Allowed absolute spread of per-dyad maximal disc counts.
const DISC_SPREAD: usize = 2;
/// Upper bound on the sieve ratio, forward and dual. Spike sequences reach
/// 1/4, so no valid constant is smaller than that.
const C_SIEVE: f64 = 1.0;
/// Derived lower bound for spike sequences with `K, L ≥ M`.
const SPIKE_FLOOR: f64 = 0.05;
const HAND_TOLERANCE: f64 = 1e-12;

type Verdict = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e2s<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn dyads() -> Vec<u64> {
    (8..=13).map(|k| 1u64 << k).collect()
}

fn spread(values: &[f64]) -> f64 {
    let max = values.iter().cloned().fold(f64::MIN, f64::max);
    let min = values.iter().cloned().fold(f64::MAX, f64::min);
    max / min
}

fn oracle_equivalence() -> Verdict {
    for m in 1..=5000u64 {
        let fast = roots_fast(m).map_err(e2s)?;
        let brute = roots_bruteforce(m).map_err(e2s)?;
        ensure(fast == brute, || format!("m = {m}: {fast:?} vs {brute:?}"))?;
    }
    Ok("roots_fast = roots_bruteforce for m ≤ 5000".into())
}

fn ideal_bijection() -> Verdict {
    let mut pairs = 0;
    for m in 1..=2000u64 {
        for nu in roots_fast(m).map_err(e2s)? {
            let p = cubic_congruence::RootPair { m, nu };
            let ideal = root_to_ideal(&p).map_err(e2s)?;
            ensure(ideal_to_root(&ideal).map_err(e2s)? == p, || {
                format!("{p:?} does not round-trip")
            })?;
            pairs += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut sampled = BTreeSet::new();
    while sampled.len() < 50 {
        sampled.insert(rng.random_range(1..=2000u64));
    }
    for &m in &sampled {
        let mut accepted = BTreeSet::new();
        for t21 in 0..m {
            for t31 in 0..m {
                let h = HnfMatrix([[m as i128, 0, 0], [t21 as i128, 1, 0], [t31 as i128, 0, 1]]);
                if is_ideal_lattice(&h).map_err(e2s)? {
                    accepted.insert(IdealHnf { m, t21, t31 });
                }
            }
        }
        let expected: BTreeSet<IdealHnf> = roots_fast(m)
            .map_err(e2s)?
            .into_iter()
            .map(|nu| root_to_ideal(&cubic_congruence::RootPair { m, nu }))
            .collect::<Result<_, _>>()
            .map_err(e2s)?;
        ensure(accepted == expected, || {
            format!("m = {m}: accepted {accepted:?}, expected {expected:?}")
        })?;
    }
    Ok(format!(
        "{pairs} pairs round-trip; ideal test exact on 50 random m ≤ 2000"
    ))
}

fn generator_completeness() -> Verdict {
    let mut total = 0;
    for big_m in [100u64, 500, 1000] {
        let gens = enumerate_generators(big_m).map_err(e2s)?;
        let roots: Vec<_> = gens.iter().map(|g| g.root()).collect();
        ensure(roots == enumerate_root_pairs(big_m).map_err(e2s)?, || {
            format!("M = {big_m}: root multiset differs")
        })?;
        for g in &gens {
            let x = g.generator();
            ensure(in_domain(&x).map_err(e2s)?, || format!("{x} not in domain"))?;
            ensure(is_primitive_generator(&x).map_err(e2s)?, || {
                format!("{x} not primitive")
            })?;
            ensure(x.norm().map_err(e2s)? == g.m as i128, || {
                format!("{x} norm ≠ {}", g.m)
            })?;
            g.validate().map_err(|e| format!("{g:?}: {e}"))?;
        }
        total += gens.len();
    }
    Ok(format!(
        "{total} generators for M ∈ {{100, 500, 1000}} match the oracle with all identities"
    ))
}

fn algebraic_identities() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let bound = 1_000_000i128;
    for _ in 0..10_000 {
        let x = CubicInt::new(
            rng.random_range(-bound..=bound),
            rng.random_range(-bound..=bound),
            rng.random_range(-bound..=bound),
        );
        let n = x.norm().map_err(e2s)?;
        let cof = x.cofactor().map_err(e2s)?;
        let prod = x.checked_mul(&cof.as_cubic()).map_err(e2s)?;
        ensure(prod == CubicInt::new(n, 0, 0), || {
            format!("{x}·cofactor = {prod}")
        })?;
        if n != 0 {
            let twice = cof.as_cubic().cofactor().map_err(e2s)?.as_cubic();
            let back = [twice.a, twice.b, twice.c];
            ensure(back.iter().all(|t| t % n == 0), || {
                format!("cofactor² of {x} not divisible by N")
            })?;
            let back = CubicInt::new(back[0] / n, back[1] / n, back[2] / n);
            ensure(back == x, || format!("double cofactor of {x} gives {back}"))?;
        }
    }
    let gens = enumerate_generators_range(0, 5000).map_err(e2s)?;
    for _ in 0..1000 {
        let g = gens[rng.random_range(0..gens.len())];
        let (k, l) = (
            rng.random_range(-1000..=1000i128),
            rng.random_range(-1000..=1000i128),
        );
        let s = g.shifted(k, l).map_err(e2s)?;
        for (p, q) in approximations(&g)
            .map_err(e2s)?
            .iter()
            .zip(approximations(&s).map_err(e2s)?)
        {
            ensure(
                p.den == q.den && (q.n1 - p.n1) % p.den == 0 && (q.n2 - p.n2) % p.den == 0,
                || format!("{g:?} shifted by ({k},{l}) moves {p:?} to {q:?}"),
            )?;
        }
    }
    Ok("cofactor identities on 10⁴ random elements; torus invariance on 10³ shifts".into())
}

fn approximation_quality_regression() -> Verdict {
    let all = approximation_quality(0, 10_000).map_err(e2s)?;
    ensure(
        all.max_scaled_error.is_finite() && all.max_scaled_error <= C_APPROX,
        || {
            format!(
                "sup m·dist = {} at {:?} exceeds {C_APPROX}",
                all.max_scaled_error, all.worst_pair
            )
        },
    )?;
    let band = |q: &cubic_congruence::experiments::ApproxQuality| {
        q.min_denominator_ratio >= DENOMINATOR_BAND.0
            && q.max_denominator_ratio <= DENOMINATOR_BAND.1
    };
    ensure(band(&all), || {
        format!(
            "g_i/m^(2/3) ∈ [{}, {}]",
            all.min_denominator_ratio, all.max_denominator_ratio
        )
    })?;
    let mut maxima = Vec::new();
    for big_m in dyads() {
        let q = approximation_quality(big_m, 2 * big_m).map_err(e2s)?;
        ensure(band(&q), || {
            format!(
                "M = {big_m}: g_i/m^(2/3) ∈ [{}, {}]",
                q.min_denominator_ratio, q.max_denominator_ratio
            )
        })?;
        maxima.push(q.max_scaled_error);
    }
    let s = spread(&maxima);
    ensure(s <= DYADIC_SPREAD, || {
        format!("dyadic maxima {maxima:?} spread {s:.3}")
    })?;
    Ok(format!(
        "C_approx = {:.4} (m ≤ 10⁴, worst {:?}); dyadic maxima {:?} spread {s:.3}; g_i/m^(2/3) ∈ [{:.4}, {:.4}]",
        all.max_scaled_error,
        all.worst_pair.map(|p| (p.m, p.nu)),
        maxima.iter().map(|x| format!("{x:.3}")).collect::<Vec<_>>(),
        all.min_denominator_ratio,
        all.max_denominator_ratio
    ))
}

fn recovery_inverse() -> Verdict {
    let gens = enumerate_generators_range(0, 2000).map_err(e2s)?;
    for g in &gens {
        let points = approximations(g).map_err(e2s)?;
        let back = recover_root(&columns_from_points(&points)).map_err(e2s)?;
        ensure(back == *g, || format!("{g:?} recovers as {back:?}"))?;
    }
    Ok(format!(
        "recover_root ∘ approximations = id on {} generators with m ≤ 2000",
        gens.len()
    ))
}

fn torsion_spacing() -> Verdict {
    let check = check_spacing_exhaustive(12, 12);
    ensure(check.violations.is_empty(), || {
        format!(
            "{} violations, first {:?}",
            check.violations.len(),
            check.violations[0]
        )
    })?;
    Ok(format!(
        "{} (point, point, Q) triples satisfy the exact spacing bound",
        check.pairs_checked
    ))
}

fn approximation_spacing(per_dyad_limit: Duration) -> Verdict {
    let mut c0 = Vec::new();
    let mut discs = Vec::new();
    for big_m in dyads() {
        let start = Instant::now();
        let s = spacing_stats(big_m, 1.0).map_err(e2s)?;
        let took = start.elapsed();
        ensure(took <= per_dyad_limit, || {
            format!("M = {big_m} took {took:?}")
        })?;
        c0.push(s.min_line_norm_scaled);
        discs.push(s.disc.max_count);
    }
    let s = spread(&c0);
    ensure(c0.iter().all(|&c| c > 0.0) && s <= DYADIC_SPREAD, || {
        format!("c₀ per dyad {c0:?}, spread {s:.3}")
    })?;
    let (lo, hi) = (*discs.iter().min().unwrap(), *discs.iter().max().unwrap());
    ensure(hi <= C_DISC && hi - lo <= DISC_SPREAD, || {
        format!("disc maxima {discs:?} (C_disc = {C_DISC})")
    })?;
    Ok(format!(
        "c₀ per dyad {:?} spread {s:.3}; disc maxima {discs:?} ≤ {C_DISC}",
        c0.iter().map(|x| format!("{x:.4}")).collect::<Vec<_>>()
    ))
}

fn sieve_inequality() -> Verdict {
    let ones = CoeffSeq::make_ones(1, 1).map_err(e2s)?;
    let (lhs, rhs) = (
        sieve_lhs(5, &ones).map_err(e2s)?,
        sieve_rhs(5, &ones).map_err(e2s)?,
    );
    ensure((lhs - 2.0).abs() <= HAND_TOLERANCE && rhs == 36.0, || {
        format!("hand case lhs {lhs}, rhs {rhs}")
    })?;

    let sizes = [32usize, 128, 512, 2048];
    let mut by_m = Vec::new();
    for big_m in [128u64, 512] {
        let mut worst: f64 = 0.0;
        for &k in &sizes {
            for &l in &sizes {
                for seed in 1..=5u64 {
                    let r = sieve_ratio(big_m, &CoeffSeq::make_random(k, l, seed).map_err(e2s)?)
                        .map_err(e2s)?;
                    worst = worst.max(r.ratio);
                }
            }
        }
        by_m.push(worst);
    }
    let c_sieve = by_m.iter().cloned().fold(0.0, f64::max);
    ensure(c_sieve <= C_SIEVE, || {
        format!("max ratio {c_sieve} exceeds {C_SIEVE}")
    })?;
    ensure(by_m[1] <= DYADIC_SPREAD * by_m[0], || {
        format!("max ratio grows from {} to {}", by_m[0], by_m[1])
    })?;

    let mut spike_min = f64::INFINITY;
    for big_m in [128u64, 512] {
        let pairs = enumerate_root_pairs(big_m).map_err(e2s)?;
        let p0 = pairs[pairs.len() / 2];
        for &k in sizes.iter().filter(|&&k| k as u64 >= big_m) {
            for &l in sizes.iter().filter(|&&l| l as u64 >= big_m) {
                let r = sieve_ratio(
                    big_m,
                    &CoeffSeq::make_spike(p0.m, p0.nu, k, l).map_err(e2s)?,
                )
                .map_err(e2s)?;
                spike_min = spike_min.min(r.ratio);
            }
        }
    }
    ensure(spike_min >= SPIKE_FLOOR, || {
        format!("spike ratio {spike_min} below {SPIKE_FLOOR}")
    })?;

    let mut dual_max: f64 = 0.0;
    for big_m in [128u64, 512] {
        let pairs = enumerate_root_pairs(big_m).map_err(e2s)?;
        let mut rng = ChaCha8Rng::seed_from_u64(big_m);
        let random: Vec<_> = pairs
            .iter()
            .map(|&p| {
                (
                    p,
                    Complex64::new(if rng.random::<bool>() { 1.0 } else { -1.0 }, 0.0),
                )
            })
            .collect();
        let spike = [(pairs[pairs.len() / 2], Complex64::new(1.0, 0.0))];
        for &k in &sizes[..3] {
            for b in [&random[..], &spike[..]] {
                dual_max = dual_max.max(dual_ratio(big_m, k, k, b).map_err(e2s)?.ratio);
            }
        }
    }
    ensure(dual_max <= C_SIEVE, || {
        format!("dual ratio {dual_max} exceeds {C_SIEVE}")
    })?;

    // Reported only: with K·L ≤ M the Cauchy–Schwarz bound beats the right side.
    let small = sieve_ratio(128, &CoeffSeq::make_random(4, 32, 1).map_err(e2s)?).map_err(e2s)?;
    Ok(format!(
        "hand case 2/36; random max ratio per M {:?} ≤ C_sieve = {C_SIEVE}; spike min ratio {spike_min:.4}; \
         dual max ratio {dual_max:.4}; K·L = 128 ≤ M: trivial bound {:.3e} vs rhs {:.3e}",
        by_m.iter().map(|x| format!("{x:.4}")).collect::<Vec<_>>(),
        small.trivial_bound,
        small.rhs
    ))
}

fn cli_determinism() -> Verdict {
    let bin = env!("CARGO_BIN_EXE_cubic-congruence");
    let runs: [&[&str]; 6] = [
        &["roots", "--m", "31"],
        &["enumerate", "--M", "200"],
        &["approx", "--m", "5", "--nu", "3"],
        &["spacing", "--M", "256"],
        &[
            "sieve", "--M", "64", "--K", "16", "--L", "16", "--seq", "random", "--seed", "7",
        ],
        &[
            "sieve", "--M", "64", "--K", "64", "--L", "64", "--seq", "spike",
        ],
    ];
    let dir = std::env::temp_dir().join(format!("cc-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(e2s)?;
    for args in runs {
        let mut outputs = Vec::new();
        for i in 0..2 {
            let manifest = dir.join(format!("manifest-{i}.json"));
            let out = Command::new(bin)
                .args(args)
                .arg("--manifest")
                .arg(&manifest)
                .output()
                .map_err(e2s)?;
            ensure(out.status.success(), || {
                format!("{args:?} exited with {}", out.status)
            })?;
            let m: serde_json::Value =
                serde_json::from_slice(&std::fs::read(&manifest).map_err(e2s)?).map_err(e2s)?;
            ensure(m["output_digest"] == sha256_hex(&out.stdout), || {
                format!("{args:?}: manifest digest mismatch")
            })?;
            outputs.push(out.stdout);
        }
        ensure(outputs[0] == outputs[1], || {
            format!("{args:?} is not reproducible")
        })?;
    }
    let _ = std::fs::remove_dir_all(&dir);
    Ok(format!(
        "{} commands byte-identical across runs; manifest digests match",
        runs.len()
    ))
}

type Criterion = (u32, &'static str, Duration, Box<dyn FnOnce() -> Verdict>);

fn main() {
    let criteria: Vec<Criterion> = vec![
        (
            1,
            "root oracle equivalence",
            Duration::from_secs(60),
            Box::new(oracle_equivalence),
        ),
        (
            2,
            "root/ideal bijection",
            Duration::from_secs(60),
            Box::new(ideal_bijection),
        ),
        (
            3,
            "generator completeness",
            Duration::from_secs(120),
            Box::new(generator_completeness),
        ),
        (
            4,
            "algebraic identities",
            Duration::from_secs(120),
            Box::new(algebraic_identities),
        ),
        (
            5,
            "approximation quality",
            Duration::from_secs(300),
            Box::new(approximation_quality_regression),
        ),
        (
            6,
            "recovery inverse",
            Duration::from_secs(120),
            Box::new(recovery_inverse),
        ),
        (
            7,
            "torsion spacing bound",
            Duration::from_secs(120),
            Box::new(torsion_spacing),
        ),
        (
            8,
            "approximation spacing and disc counts",
            Duration::from_secs(6 * 120),
            Box::new(|| approximation_spacing(Duration::from_secs(120))),
        ),
        (
            9,
            "large sieve inequality",
            Duration::from_secs(600),
            Box::new(sieve_inequality),
        ),
        (
            10,
            "CLI determinism",
            Duration::from_secs(120),
            Box::new(cli_determinism),
        ),
    ];
    let mut failed = 0;
    for (n, name, limit, run) in criteria {
        let start = Instant::now();
        let verdict = run();
        let took = start.elapsed();
        let verdict = match verdict {
            Ok(d) if took > limit => Err(format!("{d}; took {took:.1?} > {limit:?}")),
            v => v,
        };
        match verdict {
            Ok(d) => println!("PASS criterion {n:>2} ({name}): {d} [{took:.1?}]"),
            Err(d) => {
                failed += 1;
                println!("FAIL criterion {n:>2} ({name}): {d} [{took:.1?}]");
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
