//! The chord-length distribution of two independent uniform points on the
//! n-sphere of radius r in R^{n+1}.
//!
//! With s = x²/(4r²) the chord length X maps to s ~ Beta(n/2, n/2), which is
//! the route used for the distribution function, quantiles and even moments.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::optimize::golden_section_max;
use crate::scalar::Scalar;
use crate::specfun::{
    inv_reg_inc_beta, ln_beta_unchecked, ln_gamma_unchecked, reg_inc_beta_unchecked,
};
use crate::specfun::{stirling_correction, STIRLING_MIN};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChordDistribution<T> {
    n: u32,
    r: T,
    #[serde(skip)]
    ln_norm: T,
}

/// Location of the density maximum. For n = 2 the density increases up to
/// the right end of the support and `boundary` is set.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Mode<T> {
    pub location: T,
    pub boundary: bool,
}

impl<T: Scalar> ChordDistribution<T> {
    pub fn new(n: u32, r: T) -> Result<Self> {
        if n < 2 {
            return Err(Error::domain("ChordDistribution", format!("dimension n = {n} must be >= 2")));
        }
        if !(r > T::zero()) || !r.is_finite() {
            return Err(Error::domain("ChordDistribution", format!("radius r = {r} must be finite and > 0")));
        }
        let half = T::lit(0.5);
        let ln_norm = -ln_beta_unchecked(T::from_count(n as usize) * half, half);
        Ok(Self { n, r, ln_norm })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn r(&self) -> T {
        self.r
    }

    fn half_n(&self) -> T {
        T::from_count(self.n as usize) * T::lit(0.5)
    }

    /// (s, 1 − s) for s = x²/(4r²), with 1 − s formed as (2r−x)(2r+x)/(4r²).
    fn beta_variable(&self, x: T) -> (T, T) {
        let two_r = T::lit(2.0) * self.r;
        let denom = two_r * two_r;
        (x * x / denom, (two_r - x) * (two_r + x) / denom)
    }

    pub fn log_pdf(&self, x: T) -> T {
        let two_r = T::lit(2.0) * self.r;
        if x.is_nan() {
            return x;
        }
        if x <= T::zero() || x > two_r {
            return T::neg_infinity();
        }
        if x == two_r {
            // n = 2: density limit 1/r; otherwise the (1 − s) factor vanishes.
            return if self.n == 2 { -self.r.ln() } else { T::neg_infinity() };
        }
        let (s, one_minus_s) = self.beta_variable(x);
        let base = x.ln() - T::lit(2.0) * self.r.ln() + self.ln_norm;
        if self.n == 2 {
            return base;
        }
        let power = T::from_count(self.n as usize - 2) * T::lit(0.5);
        base + power * (T::lit(4.0).ln() + s.ln() + one_minus_s.ln())
    }

    /// Probability density. Zero outside (0, 2r); at x = 2r the n = 2 density
    /// takes its limiting value 1/r.
    pub fn pdf(&self, x: T) -> T {
        self.log_pdf(x).exp()
    }

    pub fn cdf(&self, x: T) -> T {
        if x.is_nan() {
            return x;
        }
        if x <= T::zero() {
            return T::zero();
        }
        if x >= T::lit(2.0) * self.r {
            return T::one();
        }
        let (s, _) = self.beta_variable(x);
        let a = self.half_n();
        // The continued fraction converges for every shape used here.
        reg_inc_beta_unchecked(s, a, a).unwrap_or_else(|_| T::nan())
    }

    pub fn quantile(&self, p: T) -> Result<T> {
        if !(p >= T::zero() && p <= T::one()) {
            return Err(Error::domain("quantile", format!("p = {p} outside [0, 1]")));
        }
        let a = self.half_n();
        let s = inv_reg_inc_beta(p, a, a)?;
        Ok(T::lit(2.0) * self.r * s.sqrt())
    }

    /// E[X^k]. Even orders use E[s^j] = Π (a+i)/(2a+i) with a = n/2, which is
    /// exact for k = 2; odd orders use the Beta-function closed form in logs.
    pub fn raw_moment(&self, k: u32) -> T {
        if k == 0 {
            return T::one();
        }
        let a = self.half_n();
        if k % 2 == 0 {
            let four_r2 = T::lit(4.0) * self.r * self.r;
            let mut m = T::one();
            for i in 0..(k / 2) {
                let i = T::from_count(i as usize);
                m *= four_r2 * ((a + i) / (a + a + i));
            }
            return m;
        }
        let kk = T::from_count(k as usize);
        let nn = T::from_count(self.n as usize);
        let ln_m = (kk + nn - T::one()) * T::LN_2()
            + self.ln_norm
            + ln_beta_unchecked((kk + nn) * T::lit(0.5), a)
            + kk * self.r.ln();
        ln_m.exp()
    }

    pub fn mean(&self) -> T {
        c_n::<T>(self.n) * self.r
    }

    pub fn variance(&self) -> T {
        let (gap, c) = gap_and_c_n::<T>(self.n);
        // 2 − C² = (√2 − C)(√2 + C) keeps precision where C → √2.
        gap * (T::SQRT_2() + c) * self.r * self.r
    }

    pub fn std_dev(&self) -> T {
        self.variance().sqrt()
    }

    pub fn median(&self) -> T {
        T::SQRT_2() * self.r
    }

    pub fn mode(&self) -> Mode<T> {
        let two_r = T::lit(2.0) * self.r;
        if self.n == 2 {
            return Mode {
                location: two_r,
                boundary: true,
            };
        }
        let nn = T::from_count(self.n as usize);
        let ratio = (nn - T::one()) / (T::lit(2.0) * nn - T::lit(3.0));
        Mode {
            location: two_r * ratio.sqrt(),
            boundary: false,
        }
    }

    /// Argmax of the density by golden-section search on `log_pdf`.
    pub fn mode_numeric(&self) -> T {
        let two_r = T::lit(2.0) * self.r;
        if self.n == 2 {
            return two_r;
        }
        let tol = self.r * T::lit(1e-10).max(T::epsilon().sqrt() * T::lit(4.0));
        golden_section_max(|x| self.log_pdf(x), T::zero(), two_r, tol)
    }

    /// ∂/∂r log f(x; n, r) = (1/r)[−2 + (n−2)(2s−1)/(1−s)].
    pub fn score(&self, x: T) -> Result<T> {
        let two_r = T::lit(2.0) * self.r;
        if !(x > T::zero() && x < two_r) {
            return Err(Error::domain("score", format!("x = {x} outside open support (0, {two_r})")));
        }
        let (s, one_minus_s) = self.beta_variable(x);
        Ok(score_from_beta_variable(self.n, self.r, s, one_minus_s))
    }
}

pub(crate) fn score_from_beta_variable<T: Scalar>(n: u32, r: T, s: T, one_minus_s: T) -> T {
    let two = T::lit(2.0);
    let nm2 = T::from_count(n as usize) - two;
    (-two + nm2 * (two * s - T::one()) / one_minus_s) / r
}

/// ln(Cₙ/√2), computed so that the value near zero keeps full relative
/// precision for large n.
fn ln_c_n_over_sqrt2<T: Scalar>(n: u32) -> T {
    let half = T::lit(0.5);
    let nn = T::from_count(n as usize);
    if (nn + T::one()) * half >= T::lit(STIRLING_MIN) {
        // Stirling expansion of 2ⁿΓ²((n+1)/2)/(√π Γ(n+½)) relative to √2.
        return nn * (half / (nn + half)).ln_1p() - half
            + T::lit(2.0) * stirling_correction((nn + T::one()) * half)
            - stirling_correction(nn + half);
    }
    nn * T::LN_2() + T::lit(2.0) * ln_gamma_unchecked((nn + T::one()) * half)
        - half * T::PI().ln()
        - ln_gamma_unchecked(nn + half)
        - half * T::LN_2()
}

/// (√2 − Cₙ, Cₙ)
fn gap_and_c_n<T: Scalar>(n: u32) -> (T, T) {
    let l = ln_c_n_over_sqrt2::<T>(n);
    (-T::SQRT_2() * l.exp_m1(), T::SQRT_2() * l.exp())
}

/// Mean chord length of the unit n-sphere,
/// Cₙ = 2ⁿ Γ²((n+1)/2) / (√π Γ(n + ½)). Defined for n ≥ 1.
pub fn c_n<T: Scalar>(n: u32) -> T {
    gap_and_c_n::<T>(n).1
}

/// √2 − Cₙ, without cancellation.
pub fn sqrt2_minus_c_n<T: Scalar>(n: u32) -> T {
    gap_and_c_n::<T>(n).0
}
