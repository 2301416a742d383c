//! Volumes and surface areas of unit spheres across dimensions.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::specfun::ln_gamma_unchecked;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SphereMetrics<T> {
    pub n: u32,
    pub volume: T,
    pub surface_area: T,
}

impl<T: Scalar> SphereMetrics<T> {
    pub fn new(n: u32) -> Result<Self> {
        Ok(Self {
            n,
            volume: volume(n)?,
            surface_area: surface_area(n)?,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SphereMetric {
    Volume,
    SurfaceArea,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ArgmaxReport<T> {
    pub metric: SphereMetric,
    pub argmax: u32,
    pub table: Vec<(u32, T)>,
}

/// Vₙ = π^{n/2} / Γ(n/2 + 1), the volume of the unit ball bounded by an
/// (n−1)-sphere, i.e. the formula as written for "the n-sphere".
pub fn volume<T: Scalar>(n: u32) -> Result<T> {
    if n == 0 {
        return Err(Error::domain("volume", "n must be >= 1"));
    }
    let half_n = T::from_count(n as usize) * T::lit(0.5);
    Ok((half_n * T::PI().ln() - ln_gamma_unchecked(half_n + T::one())).exp())
}

/// Aₙ = 2π^{(n+1)/2} / Γ((n+1)/2), the area of the unit sphere Sⁿ ⊂ R^{n+1}.
pub fn surface_area<T: Scalar>(n: u32) -> Result<T> {
    if n == 0 {
        return Err(Error::domain("surface_area", "n must be >= 1"));
    }
    let h = T::from_count(n as usize + 1) * T::lit(0.5);
    Ok((T::LN_2() + h * T::PI().ln() - ln_gamma_unchecked(h)).exp())
}

/// Tabulates `metric` over `lo..=hi` and returns the maximizing dimension.
pub fn argmax_over<T: Scalar>(lo: u32, hi: u32, metric: SphereMetric) -> Result<ArgmaxReport<T>> {
    if lo > hi {
        return Err(Error::domain("argmax_over", format!("empty range {lo}..={hi}")));
    }
    let table = (lo..=hi)
        .map(|n| {
            let v = match metric {
                SphereMetric::Volume => volume::<T>(n),
                SphereMetric::SurfaceArea => surface_area::<T>(n),
            }?;
            Ok((n, v))
        })
        .collect::<Result<Vec<_>>>()?;
    let argmax = table
        .iter()
        .fold((lo, T::neg_infinity()), |best, &(n, v)| if v > best.1 { (n, v) } else { best })
        .0;
    Ok(ArgmaxReport { metric, argmax, table })
}

/// Integer dimension at which the maximum of the unit-sphere volume is
/// often quoted.
pub const QUOTED_VOLUME_ARGMAX: u32 = 7;

/// Explains how the computed argmaxes relate to the quoted dimension 7.
pub fn argmax_note(volume_argmax: u32, surface_argmax: u32) -> String {
    format!(
        "maximum quoted at dimension {QUOTED_VOLUME_ARGMAX} is not reproduced: \
         V_n = pi^(n/2)/Gamma(n/2+1) peaks at n = {volume_argmax}, \
         surface area A_n of S^n peaks at n = {surface_argmax}"
    )
}
