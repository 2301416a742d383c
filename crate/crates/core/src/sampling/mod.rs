//! Chord-length samplers.
//!
//! Four routes to the same law, kept deliberately independent:
//! Euclidean distance between two uniform sphere points, the Beta
//! transform x = 2r√B with B ~ Beta(n/2, n/2), inversion of the CDF,
//! and the polar angle to a fixed pole pushed through x = 2r sin(θ/2).

mod csv;
pub mod ks;
mod rng;

use std::fmt;
use std::str::FromStr;

use rand::distr::{Distribution, Open01};
use rand::Rng;
use rand_distr::{Gamma, StandardNormal};
use serde::Serialize;

pub use self::csv::parse_batch_csv;
pub use self::rng::RngState;
use crate::chord::ChordDistribution;
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::specfun::ln_gamma_unchecked;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SamplerKind {
    Geometric,
    BetaTransform,
    InverseCdf,
    Angular,
}

impl SamplerKind {
    pub const ALL: [SamplerKind; 4] = [
        SamplerKind::Geometric,
        SamplerKind::BetaTransform,
        SamplerKind::InverseCdf,
        SamplerKind::Angular,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            SamplerKind::Geometric => "geometric",
            SamplerKind::BetaTransform => "beta_transform",
            SamplerKind::InverseCdf => "inverse_cdf",
            SamplerKind::Angular => "angular",
        }
    }
}

impl fmt::Display for SamplerKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SamplerKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SamplerKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| Error::domain("SamplerKind", format!("unknown sampler '{s}'")))
    }
}

/// Chord lengths drawn from one sampler, tagged with how they were made.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SampleBatch<T> {
    pub n: u32,
    pub r: T,
    pub sampler: SamplerKind,
    pub seed: RngState,
    pub values: Vec<T>,
}

impl<T: Scalar> SampleBatch<T> {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn mean(&self) -> T {
        let m = T::from_count(self.values.len());
        self.values.iter().copied().sum::<T>() / m
    }

    /// Unbiased sample variance; zero for fewer than two values.
    pub fn sample_variance(&self) -> T {
        let len = self.values.len();
        if len < 2 {
            return T::zero();
        }
        let mean = self.mean();
        let ss: T = self.values.iter().map(|&x| (x - mean) * (x - mean)).sum();
        ss / T::from_count(len - 1)
    }

    pub fn values_f64(&self) -> Vec<f64> {
        self.values.iter().map(|v| v.as_f64()).collect()
    }

    /// Checks that every value lies in the open support (0, 2r).
    pub fn validate(&self) -> Result<()> {
        let two_r = T::lit(2.0) * self.r;
        match self.values.iter().position(|&x| !(x > T::zero() && x < two_r)) {
            None => Ok(()),
            Some(i) => Err(Error::domain(
                "SampleBatch",
                format!("value #{i} = {} outside (0, {two_r})", self.values[i]),
            )),
        }
    }
}

fn check_params<T: Scalar>(op: &'static str, n: u32, r: T) -> Result<()> {
    if n < 1 {
        return Err(Error::domain(op, "n must be >= 1"));
    }
    if !(r > T::zero()) || !r.is_finite() {
        return Err(Error::domain(op, format!("radius r = {r} must be finite and > 0")));
    }
    Ok(())
}

fn fill_sphere_point<R: Rng + ?Sized>(rng: &mut R, radius: f64, out: &mut [f64]) {
    loop {
        let mut norm2 = 0.0;
        for v in out.iter_mut() {
            *v = StandardNormal.sample(rng);
            norm2 += *v * *v;
        }
        if norm2 > 0.0 {
            let scale = radius / norm2.sqrt();
            out.iter_mut().for_each(|v| *v *= scale);
            return;
        }
    }
}

/// Uniform point on the n-sphere of radius r in R^{n+1}: a standard normal
/// vector rescaled to norm r.
pub fn sample_sphere_point<T: Scalar, R: Rng + ?Sized>(n: u32, r: T, rng: &mut R) -> Result<Vec<T>> {
    check_params("sample_sphere_point", n, r)?;
    let mut buf = vec![0.0; n as usize + 1];
    fill_sphere_point(rng, r.as_f64(), &mut buf);
    Ok(buf.into_iter().map(T::lit).collect())
}

fn batch<T: Scalar>(n: u32, r: T, sampler: SamplerKind, seed: RngState, values: Vec<f64>) -> SampleBatch<T> {
    SampleBatch {
        n,
        r,
        sampler,
        seed,
        values: values.into_iter().map(T::lit).collect(),
    }
}

pub fn sample_chords_geometric<T: Scalar>(n: u32, r: T, count: usize, seed: RngState) -> Result<SampleBatch<T>> {
    check_params("sample_chords_geometric", n, r)?;
    let mut rng = seed.generator();
    let dim = n as usize + 1;
    let (mut p, mut q) = (vec![0.0; dim], vec![0.0; dim]);
    let rf = r.as_f64();
    let values = (0..count)
        .map(|_| {
            fill_sphere_point(&mut rng, rf, &mut p);
            fill_sphere_point(&mut rng, rf, &mut q);
            p.iter().zip(&q).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt()
        })
        .collect();
    Ok(batch(n, r, SamplerKind::Geometric, seed, values))
}

/// x = 2r√B with B = G₁/(G₁ + G₂), G₁, G₂ ~ Gamma(n/2, 1).
pub fn sample_chords_beta_transform<T: Scalar>(n: u32, r: T, count: usize, seed: RngState) -> Result<SampleBatch<T>> {
    check_params("sample_chords_beta_transform", n, r)?;
    let gamma = Gamma::new(n as f64 / 2.0, 1.0)
        .map_err(|e| Error::domain("sample_chords_beta_transform", e.to_string()))?;
    let mut rng = seed.generator();
    let two_r = 2.0 * r.as_f64();
    let values = (0..count)
        .map(|_| loop {
            let g1: f64 = gamma.sample(&mut rng);
            let g2: f64 = gamma.sample(&mut rng);
            let b = g1 / (g1 + g2);
            if b > 0.0 && b < 1.0 {
                break two_r * b.sqrt();
            }
        })
        .collect();
    Ok(batch(n, r, SamplerKind::BetaTransform, seed, values))
}

/// x = F⁻¹(u) with u uniform on the open unit interval.
pub fn sample_chords_inverse_cdf<T: Scalar>(n: u32, r: T, count: usize, seed: RngState) -> Result<SampleBatch<T>> {
    let dist = ChordDistribution::new(n, r.as_f64())?;
    let mut rng = seed.generator();
    let values = (0..count)
        .map(|_| dist.quantile(Open01.sample(&mut rng)))
        .collect::<Result<Vec<f64>>>()?;
    Ok(batch(n, r, SamplerKind::InverseCdf, seed, values))
}

/// Fixes one endpoint at the pole; the polar angle θ of a uniform point
/// gives the chord x = 2r sin(θ/2).
pub fn sample_chords_angular<T: Scalar>(n: u32, r: T, count: usize, seed: RngState) -> Result<SampleBatch<T>> {
    check_params("sample_chords_angular", n, r)?;
    let mut rng = seed.generator();
    let mut p = vec![0.0; n as usize + 1];
    let two_r = 2.0 * r.as_f64();
    let values = (0..count)
        .map(|_| {
            fill_sphere_point(&mut rng, 1.0, &mut p);
            let theta = p[n as usize].clamp(-1.0, 1.0).acos();
            two_r * (0.5 * theta).sin()
        })
        .collect();
    Ok(batch(n, r, SamplerKind::Angular, seed, values))
}

pub fn sample_chords<T: Scalar>(
    kind: SamplerKind,
    n: u32,
    r: T,
    count: usize,
    seed: RngState,
) -> Result<SampleBatch<T>> {
    match kind {
        SamplerKind::Geometric => sample_chords_geometric(n, r, count, seed),
        SamplerKind::BetaTransform => sample_chords_beta_transform(n, r, count, seed),
        SamplerKind::InverseCdf => sample_chords_inverse_cdf(n, r, count, seed),
        SamplerKind::Angular => sample_chords_angular(n, r, count, seed),
    }
}

/// Γ((n+1)/2) / (√π Γ(n/2)), the normalizer of the polar-angle density.
pub fn angular_norm<T: Scalar>(n: u32) -> T {
    let half = T::lit(0.5);
    let nn = T::from_count(n as usize);
    (ln_gamma_unchecked((nn + T::one()) * half) - half * T::PI().ln() - ln_gamma_unchecked(nn * half)).exp()
}

/// Density of the angle θ between two uniform points on the n-sphere.
pub fn angular_density<T: Scalar>(n: u32, theta: T) -> Result<T> {
    if n < 1 {
        return Err(Error::domain("angular_density", "n must be >= 1"));
    }
    if !(theta >= T::zero() && theta <= T::PI()) {
        return Err(Error::domain("angular_density", format!("theta = {theta} outside [0, π]")));
    }
    Ok(angular_norm::<T>(n) * theta.sin().powi(n as i32 - 1))
}
