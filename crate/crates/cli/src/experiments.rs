//! The Monte Carlo and exact experiments behind `verify` and `shape`.

use serde::Serialize;

use concave_core::exact::CountTable;
use concave_core::limits::{
    build_profile, check_pochhammer_bounds, fit_constants, gumbel_cdf, joint_perimeter_cdf,
    length_sum_cdf, logistic_cdf, mixture_weights, partition_shape_deviation, shape_deviation,
    MixtureWeights, PochhammerCheck, Profile, Side,
};
use concave_core::sampler::{
    frequencies_to_partitions, local_limit_candidates, local_limit_exact, partition_params,
    run_batch, BoltzmannParams, BoltzmannSampler, RngSeed,
};
use concave_core::stats::{
    grid_deviation, ks_distance, normalize_length_sum, normalize_perimeter, normalize_tilt,
    summarize, summarize_frequencies, EmpiricalCDF, GoFReport, StatSummary,
};
use concave_core::{ConcaveComposition, Result};

/// Grid for the joint perimeter test.
pub const JOINT_GRID: [f64; 5] = [-1.0, 0.0, 1.0, 2.0, 3.0];

/// Shape statistics of `m` Boltzmann pairs at `q_n`, sample `i` drawn from
/// stream `i` of `seed`.
pub fn boltzmann_summaries(
    n: u64,
    m: u64,
    seed: u64,
    workers: usize,
    tail_eps: f64,
) -> Result<Vec<StatSummary>> {
    let sampler = BoltzmannSampler::new(BoltzmannParams::new(n, tail_eps)?);
    Ok(run_batch(seed, m, workers, |_, rng| {
        summarize_frequencies(&sampler.sample(rng))
    }))
}

fn ks_report<F: Fn(f64) -> f64>(
    name: &str,
    xs: Vec<f64>,
    cdf: F,
    threshold: f64,
) -> Result<GoFReport> {
    let mut r = ks_distance(&EmpiricalCDF::new(xs)?, cdf, threshold);
    r.test = name.into();
    Ok(r)
}

/// KS of the normalized `ℓ(λ⁺)` against the Gumbel law.
pub fn perimeter_report(s: &[StatSummary], n: u64, threshold: f64) -> Result<GoFReport> {
    let xs = s
        .iter()
        .map(|s| normalize_perimeter(s.len_plus, n))
        .collect();
    ks_report("perimeter-ks", xs, gumbel_cdf, threshold)
}

/// Empirical joint CDF of both normalized lengths on a 5×5 grid.
pub fn joint_perimeter_report(s: &[StatSummary], n: u64, threshold: f64) -> Result<GoFReport> {
    let pts: Vec<(f64, f64)> = s
        .iter()
        .map(|s| {
            (
                normalize_perimeter(s.len_minus, n),
                normalize_perimeter(s.len_plus, n),
            )
        })
        .collect();
    let mut r = grid_deviation(
        &pts,
        &JOINT_GRID,
        &JOINT_GRID,
        joint_perimeter_cdf,
        threshold,
    )?;
    r.test = "joint-perimeter-grid".into();
    Ok(r)
}

/// KS of the normalized `ℓ(λ⁻) − ℓ(λ⁺)` against the logistic law.
pub fn tilt_report(s: &[StatSummary], n: u64, threshold: f64) -> Result<GoFReport> {
    let xs = s.iter().map(|s| normalize_tilt(-s.tilt, n)).collect();
    ks_report("tilt-ks", xs, logistic_cdf, threshold)
}

/// KS of the normalized `ℓ(λ⁻) + ℓ(λ⁺)` against `2aK₁(2a)`.
pub fn length_report(s: &[StatSummary], n: u64, threshold: f64) -> Result<GoFReport> {
    let xs = s
        .iter()
        .map(|s| normalize_length_sum(s.len_minus + s.len_plus, n))
        .collect();
    ks_report("length-ks", xs, length_sum_cdf, threshold)
}

/// Exact and simulated `Q_{q_n}(N = n)` with both candidate constants.
#[derive(Debug, Clone, Serialize)]
pub struct LocalLimit {
    pub n: u64,
    pub exact: f64,
    pub candidate_48: f64,
    pub candidate_96: f64,
    pub ratio_48: f64,
    pub ratio_96: f64,
    /// `(hits, draws)` when a Monte Carlo check was requested.
    pub monte_carlo: Option<(u64, u64)>,
}

impl LocalLimit {
    /// `|freq − exact|` in binomial standard errors.
    pub fn mc_z_score(&self) -> Option<f64> {
        self.monte_carlo.map(|(hits, m)| {
            let se = (self.exact * (1.0 - self.exact) / m as f64).sqrt();
            (hits as f64 / m as f64 - self.exact).abs() / se
        })
    }

    /// `ratio_48` and `ratio_96` within `threshold` of 1 must hold for
    /// exactly one of the two; the statistic is the smaller miss.
    pub fn reports(&self, threshold: f64) -> Vec<GoFReport> {
        let d48 = (self.ratio_48 - 1.0).abs();
        let d96 = (self.ratio_96 - 1.0).abs();
        let mut r = GoFReport::new("local-limit-candidate", d48.min(d96), 1, threshold);
        r.pass = (d48 <= threshold) != (d96 <= threshold);
        let mut out = vec![r];
        if let (Some(z), Some((_, m))) = (self.mc_z_score(), self.monte_carlo) {
            out.push(GoFReport::new("local-limit-monte-carlo", z, m, 4.0));
        }
        out
    }
}

pub fn local_limit(
    n: u64,
    draws: Option<u64>,
    seed: u64,
    workers: usize,
    tail_eps: f64,
) -> Result<LocalLimit> {
    let table = CountTable::partition_counts(n as usize)?.pair_counts();
    let exact = local_limit_exact(n, &table)?;
    let (c48, c96) = local_limit_candidates(n);
    let monte_carlo = match draws {
        Some(m) => {
            let sampler = BoltzmannSampler::new(BoltzmannParams::new(n, tail_eps)?);
            // chunks of draws per stream keep the batch overhead small
            let chunk = 1000u64;
            let chunks = m.div_ceil(chunk);
            let hits: u64 = run_batch(seed, chunks, workers, |i, rng| {
                let len = chunk.min(m - i * chunk);
                (0..len).filter(|_| sampler.sample_size(rng) == n).count() as u64
            })
            .into_iter()
            .sum();
            Some((hits, m))
        }
        None => None,
    };
    Ok(LocalLimit {
        n,
        exact,
        candidate_48: c48,
        candidate_96: c96,
        ratio_48: exact / c48,
        ratio_96: exact / c96,
        monte_carlo,
    })
}

/// Tail cut-off `n^{0.8}` and Gaussian window `n^{3/4}` for the weights.
pub fn weights_reports(n: u64, threshold: f64) -> Result<(MixtureWeights, Vec<GoFReport>)> {
    let table = CountTable::partition_counts(n as usize)?.pair_counts();
    let w = mixture_weights(n, &table)?;
    let nf = n as f64;
    let exact = if w.sums_to_one_exactly() { 0.0 } else { 1.0 };
    let reports = vec![
        GoFReport::new("weights-exact-sum", exact, n, 0.0),
        GoFReport::new(
            "weights-gaussian",
            w.gaussian_deviation(nf.powf(0.75)),
            n,
            threshold,
        ),
        GoFReport::new("weights-tail", w.tail_mass(nf.powf(0.8)), n, 1e-6),
    ];
    Ok((w, reports))
}

/// Failure counts of the two inequalities (threshold 0) and the fitted
/// constant of the ratio bound.
pub fn pochhammer_reports(trials: u64, seed: u64, bound: f64) -> (PochhammerCheck, Vec<GoFReport>) {
    let mut rng = RngSeed::new(seed, 0).rng();
    let check = check_pochhammer_bounds(trials, &mut rng);
    let reports = vec![
        GoFReport::new(
            "pochhammer-inequality-1",
            check.failures_one as f64,
            trials,
            0.0,
        ),
        GoFReport::new(
            "pochhammer-inequality-2",
            check.failures_two as f64,
            trials,
            0.0,
        ),
        GoFReport::new("pochhammer-constant", check.fitted_constant, trials, bound),
    ];
    (check, reports)
}

/// Per-sample limit-shape data on a fixed y grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ShapeSample {
    pub deviation: f64,
    pub a_minus: f64,
    pub a_plus: f64,
    pub boundary_minus: Vec<f64>,
    pub boundary_plus: Vec<f64>,
}

fn boundaries(profile: &Profile, y_grid: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let side = |s| y_grid.iter().map(|&y| profile.boundary_x(s, y)).collect();
    (side(Side::Minus), side(Side::Plus))
}

/// Limit-shape data for one composition.
pub fn shape_sample(comp: &ConcaveComposition, y_grid: &[f64]) -> Result<ShapeSample> {
    let deviation = shape_deviation(comp, y_grid)?;
    let fc = fit_constants(&summarize(comp), comp.total());
    let (boundary_minus, boundary_plus) = boundaries(&build_profile(comp), y_grid);
    Ok(ShapeSample {
        deviation,
        a_minus: fc.a_minus,
        a_plus: fc.a_plus,
        boundary_minus,
        boundary_plus,
    })
}

/// Boltzmann pairs at `q_n`, each with its own fitted constants.
pub fn shape_samples(
    n: u64,
    m: u64,
    seed: u64,
    workers: usize,
    tail_eps: f64,
    y_grid: &[f64],
) -> Result<Vec<ShapeSample>> {
    let sampler = BoltzmannSampler::new(BoltzmannParams::new(n, tail_eps)?);
    run_batch(seed, m, workers, |_, rng| {
        let (minus, plus) = frequencies_to_partitions(&sampler.sample(rng));
        shape_sample(&ConcaveComposition::from_pair(minus, plus), y_grid)
    })
    .into_iter()
    .collect()
}

/// Single Boltzmann partitions at `e^{−π/√(6n)}` against Temperley's curve.
pub fn partition_shape_samples(
    n: u64,
    m: u64,
    seed: u64,
    workers: usize,
    tail_eps: f64,
    y_grid: &[f64],
) -> Result<Vec<ShapeSample>> {
    let sampler = BoltzmannSampler::new(partition_params(n, tail_eps)?);
    run_batch(seed, m, workers, |_, rng| {
        let lambda = sampler.sample_one_side(rng);
        let deviation = partition_shape_deviation(&lambda, y_grid)?;
        let (boundary_minus, boundary_plus) = boundaries(&Profile::from_partition(&lambda), y_grid);
        Ok(ShapeSample {
            deviation,
            a_minus: 0.0,
            a_plus: 0.0,
            boundary_minus,
            boundary_plus,
        })
    })
    .into_iter()
    .collect()
}

/// Median of a non-empty list; the mean of the two middle values for even
/// lengths.
pub fn median(values: &[f64]) -> f64 {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let k = v.len() / 2;
    if v.len() % 2 == 1 {
        v[k]
    } else {
        0.5 * (v[k - 1] + v[k])
    }
}
