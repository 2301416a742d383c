//! Fisher information about the radius, Cramér–Rao bounds, the mean-based
//! radius estimator and the √2 − Cₙ gap analysis.

use rayon::prelude::*;
use serde::Serialize;

use crate::chord::{c_n, score_from_beta_variable, sqrt2_minus_c_n};
use crate::error::{Error, Result};
use crate::sampling::{angular_norm, sample_chords, RngState, SampleBatch, SamplerKind};
use crate::scalar::Scalar;
use crate::specfun::{integrate, Quadrature, QuadratureSpec};

fn require_fisher_domain<T: Scalar>(op: &'static str, n: u32, r: T) -> Result<()> {
    if n <= 4 {
        return Err(Error::domain(
            op,
            format!("closed-form Fisher information needs n > 4 (got n = {n}); use fisher_numeric"),
        ));
    }
    require_radius(op, r)
}

fn require_radius<T: Scalar>(op: &'static str, r: T) -> Result<()> {
    if !(r > T::zero()) || !r.is_finite() {
        return Err(Error::domain(op, format!("radius r = {r} must be finite and > 0")));
    }
    Ok(())
}

/// I(r) = 4n(n − 1) / ((n − 4) r²) for n > 4.
pub fn fisher_closed<T: Scalar>(n: u32, r: T) -> Result<T> {
    require_fisher_domain("fisher_closed", n, r)?;
    let nn = T::from_count(n as usize);
    Ok(T::lit(4.0) * nn * (nn - T::one()) / ((nn - T::lit(4.0)) * r * r))
}

/// E[score²] by adaptive quadrature.
///
/// The expectation is taken over the polar angle θ with x = 2r sin(θ/2),
/// where s = sin²(θ/2) and 1 − s = cos²(θ/2) are exact and the integrand
/// behaves like (π − θ)^{n−5} at the far end. For n = 3, 4 that exponent
/// makes the integral diverge and the quadrature reports non-convergence.
/// For n = 2 the score is the constant −2/r and the value is 4/r².
pub fn fisher_numeric<T: Scalar>(n: u32, r: T, spec: &QuadratureSpec<T>) -> Result<Quadrature<T, T>> {
    if n < 2 {
        return Err(Error::domain("fisher_numeric", format!("n = {n} must be >= 2")));
    }
    require_radius("fisher_numeric", r)?;
    let norm = angular_norm::<T>(n);
    let half = T::lit(0.5);
    integrate(
        |theta: T| {
            let (sin_h, cos_h) = (half * theta).sin_cos();
            let (s, one_minus_s) = (sin_h * sin_h, cos_h * cos_h);
            if one_minus_s == T::zero() {
                return T::zero();
            }
            let score = score_from_beta_variable(n, r, s, one_minus_s);
            norm * theta.sin().powi(n as i32 - 1) * score * score
        },
        T::zero(),
        T::PI(),
        spec,
    )
}

/// ∫ score · f, which vanishes for a regular family.
pub fn score_mean_numeric<T: Scalar>(n: u32, r: T, spec: &QuadratureSpec<T>) -> Result<Quadrature<T, T>> {
    require_radius("score_mean_numeric", r)?;
    let norm = angular_norm::<T>(n);
    let half = T::lit(0.5);
    integrate(
        |theta: T| {
            let (sin_h, cos_h) = (half * theta).sin_cos();
            let one_minus_s = cos_h * cos_h;
            if one_minus_s == T::zero() {
                return T::zero();
            }
            norm * theta.sin().powi(n as i32 - 1) * score_from_beta_variable(n, r, sin_h * sin_h, one_minus_s)
        },
        T::zero(),
        T::PI(),
        spec,
    )
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FisherArgmin<T> {
    /// Minimizer of n(n−1)/(n−4) over real n > 4.
    pub continuous: T,
    /// All integer minimizers over the scanned range.
    pub integer: Vec<u32>,
    /// n(n−1)/(n−4) at the integer minimizers (I(1) = 4 × this).
    pub integer_value: T,
}

/// Minimizers of the dimension factor n(n−1)/(n−4) of I(r).
///
/// d/dn [n(n−1)/(n−4)] = (n² − 8n + 4)/(n − 4)², whose root above 4 is
/// 4 + 2√3. Integer minimizers are taken over 5..=30.
pub fn fisher_argmin<T: Scalar>() -> FisherArgmin<T> {
    let (integer, integer_value) = fisher_integer_argmin(5, 30).expect("5..=30 is a valid range");
    FisherArgmin {
        continuous: T::lit(4.0) + T::lit(2.0) * T::lit(3.0).sqrt(),
        integer,
        integer_value,
    }
}

/// Integer minimizers of n(n−1)/(n−4) over `lo..=hi` (n > 4), compared as
/// exact rationals so ties are found exactly.
pub fn fisher_integer_argmin<T: Scalar>(lo: u32, hi: u32) -> Result<(Vec<u32>, T)> {
    let lo = lo.max(5);
    if lo > hi {
        return Err(Error::domain("fisher_integer_argmin", format!("no n > 4 in range ..={hi}")));
    }
    // a/b < c/d  <=>  a d < c b  for positive denominators
    let ratio = |n: u64| (n * (n - 1), n - 4);
    let mut best = ratio(lo as u64);
    let mut integer = vec![lo];
    for n in lo + 1..=hi {
        let (a, b) = ratio(n as u64);
        let (c, d) = best;
        match ((a as u128) * (d as u128)).cmp(&((c as u128) * (b as u128))) {
            std::cmp::Ordering::Less => {
                best = (a, b);
                integer = vec![n];
            }
            std::cmp::Ordering::Equal => integer.push(n),
            std::cmp::Ordering::Greater => {}
        }
    }
    Ok((integer, T::from_count(best.0 as usize) / T::from_count(best.1 as usize)))
}

/// 1 / (m I(r)) = (n − 4) r² / (4 m n (n − 1)).
pub fn crlb<T: Scalar>(n: u32, r: T, m: usize) -> Result<T> {
    require_fisher_domain("crlb", n, r)?;
    if m == 0 {
        return Err(Error::domain("crlb", "sample count m must be >= 1"));
    }
    Ok(fisher_closed(n, r)?.recip() / T::from_count(m))
}

/// Var(X̄/Cₙ) = (2 − Cₙ²) r² / (m Cₙ²).
pub fn estimator_variance_closed<T: Scalar>(n: u32, r: T, m: usize) -> Result<T> {
    if n < 2 {
        return Err(Error::domain("estimator_variance_closed", format!("n = {n} must be >= 2")));
    }
    require_radius("estimator_variance_closed", r)?;
    if m == 0 {
        return Err(Error::domain("estimator_variance_closed", "sample count m must be >= 1"));
    }
    let c = c_n::<T>(n);
    let two_minus_c2 = sqrt2_minus_c_n::<T>(n) * (T::SQRT_2() + c);
    Ok(two_minus_c2 * r * r / (T::from_count(m) * c * c))
}

/// Where the closed-form variance and bound in a report were evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VarianceBasis {
    /// At the true radius (simulation mode).
    TrueRadius,
    /// At the estimate r̂ (plug-in mode).
    PlugIn,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EstimationReport<T> {
    pub n: u32,
    pub r_true: Option<T>,
    pub m: usize,
    pub r_hat: T,
    pub var_closed_form: T,
    pub crlb: Option<T>,
    /// crlb / var_closed_form
    pub efficiency: Option<T>,
    /// s²_X / (m Cₙ²): the variance of r̂ estimated from the batch itself.
    pub empirical_var: Option<T>,
    pub basis: VarianceBasis,
    pub crlb_note: Option<String>,
}

/// r̂ = X̄ / Cₙ with the closed-form variance, bound and efficiency.
pub fn estimate_radius<T: Scalar>(batch: &SampleBatch<T>, r_true: Option<T>) -> Result<EstimationReport<T>> {
    if batch.is_empty() {
        return Err(Error::domain("estimate_radius", "empty batch"));
    }
    if batch.n < 2 {
        return Err(Error::domain("estimate_radius", format!("n = {} must be >= 2", batch.n)));
    }
    let n = batch.n;
    let m = batch.len();
    let c = c_n::<T>(n);
    let r_hat = batch.mean() / c;
    let (r_eval, basis) = match r_true {
        Some(r) => (r, VarianceBasis::TrueRadius),
        None => (r_hat, VarianceBasis::PlugIn),
    };
    let var_closed_form = estimator_variance_closed(n, r_eval, m)?;
    let (crlb, efficiency, crlb_note) = if n > 4 {
        let b = crlb(n, r_eval, m)?;
        (Some(b), Some(b / var_closed_form), None)
    } else {
        (
            None,
            None,
            Some(format!("Cramér–Rao bound unavailable: Fisher information is not finite for n = {n} <= 4")),
        )
    };
    let empirical_var = (m >= 2).then(|| batch.sample_variance() / (T::from_count(m) * c * c));
    Ok(EstimationReport {
        n,
        r_true,
        m,
        r_hat,
        var_closed_form,
        crlb,
        efficiency,
        empirical_var,
        basis,
        crlb_note,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimulationSummary<T> {
    pub n: u32,
    pub r_true: T,
    pub m: usize,
    pub replications: usize,
    pub sampler: SamplerKind,
    pub seed: u64,
    pub mean_r_hat: T,
    pub bias: T,
    /// Standard error of `bias` from the spread of r̂ across replications.
    pub bias_se: T,
    /// Sample variance of r̂ across replications.
    pub between_replication_var: T,
    /// Average of the per-batch `empirical_var`.
    pub mean_empirical_var: T,
    pub var_closed_form: T,
    pub crlb: Option<T>,
    pub efficiency: Option<T>,
    pub reports: Vec<EstimationReport<T>>,
}

/// Runs `replications` independent batches on streams 0, 1, … of `seed`
/// in parallel. Aggregation is in stream order, so results do not depend on
/// thread scheduling.
pub fn simulate_estimates<T: Scalar>(
    n: u32,
    r_true: T,
    m: usize,
    replications: usize,
    seed: u64,
    sampler: SamplerKind,
) -> Result<SimulationSummary<T>> {
    if replications < 2 {
        return Err(Error::domain("simulate_estimates", "need at least two replications"));
    }
    if m < 2 {
        return Err(Error::domain("simulate_estimates", "need at least two samples per replication"));
    }
    let reports = (0..replications as u64)
        .into_par_iter()
        .map(|stream| {
            let batch = sample_chords(sampler, n, r_true, m, RngState::new(seed, stream))?;
            estimate_radius(&batch, Some(r_true))
        })
        .collect::<Result<Vec<_>>>()?;

    let k = T::from_count(replications);
    let mean_r_hat = reports.iter().map(|r| r.r_hat).sum::<T>() / k;
    let between = reports
        .iter()
        .map(|r| (r.r_hat - mean_r_hat) * (r.r_hat - mean_r_hat))
        .sum::<T>()
        / (k - T::one());
    let mean_empirical_var = reports.iter().filter_map(|r| r.empirical_var).sum::<T>() / k;
    let first = &reports[0];
    Ok(SimulationSummary {
        n,
        r_true,
        m,
        replications,
        sampler,
        seed,
        mean_r_hat,
        bias: mean_r_hat - r_true,
        bias_se: (between / k).sqrt(),
        between_replication_var: between,
        mean_empirical_var,
        var_closed_form: first.var_closed_form,
        crlb: first.crlb,
        efficiency: first.efficiency,
        reports,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GapRow<T> {
    pub n: u32,
    pub c_n: T,
    pub gap: T,
}

pub fn gap_table<T: Scalar>(n_min: u32, n_max: u32) -> Result<Vec<GapRow<T>>> {
    if n_min < 2 || n_min > n_max {
        return Err(Error::domain("gap_table", format!("need 2 <= n_min <= n_max (got {n_min}..={n_max})")));
    }
    Ok((n_min..=n_max)
        .map(|n| GapRow {
            n,
            c_n: c_n(n),
            gap: sqrt2_minus_c_n(n),
        })
        .collect())
}

/// Smallest n in the table whose gap is below `epsilon`.
pub fn detect_saturation<T: Scalar>(table: &[GapRow<T>], epsilon: T) -> Option<u32> {
    table.iter().find(|row| row.gap < epsilon).map(|row| row.n)
}

/// Threshold halfway between the gaps at n = 18 and n = 19, so that the
/// first dimension below it is 19.
pub fn default_saturation_epsilon<T: Scalar>() -> T {
    T::lit(0.5) * (sqrt2_minus_c_n::<T>(18) + sqrt2_minus_c_n::<T>(19))
}

/// (m − μ)²/σ² for the chord law, which the unimodal bound caps at 3/5.
pub fn median_deviation_ratio<T: Scalar>(n: u32) -> T {
    let gap = sqrt2_minus_c_n::<T>(n);
    let c = c_n::<T>(n);
    gap * gap / (T::lit(2.0) - c * c)
}

/// The same ratio after factoring 2 − Cₙ²: (√2 − Cₙ)/(√2 + Cₙ).
pub fn median_deviation_ratio_factored<T: Scalar>(n: u32) -> T {
    sqrt2_minus_c_n::<T>(n) / (T::SQRT_2() + c_n::<T>(n))
}
