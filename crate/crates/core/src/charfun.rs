//! Characteristic function φ(t) = E[e^{itX}] of the chord length.

use num_complex::Complex;
use serde::Serialize;

use crate::chord::ChordDistribution;
use crate::error::{Error, Result};
use crate::sampling::angular_norm;
use crate::scalar::Scalar;
use crate::specfun::{bessel_j, integrate_with_breakpoints, struve_h, QuadratureSpec, STRUVE_MAX_ARG};

pub type ComplexValue<T> = Complex<T>;

/// Largest |t|·r accepted by [`phi_numeric`].
pub const MAX_NUMERIC_RT: f64 = 1e3;
/// Below this |rt| the n = 3 form is replaced by its Taylor polynomial.
pub const N3_TAYLOR_RT: f64 = 1e-4;
/// Below this |rt| the n = 2 form is replaced by its power series.
pub const N2_SERIES_RT: f64 = 0.5;
const SUBDIVIDE_ABOVE: f64 = 50.0;

fn require_radius<T: Scalar>(op: &'static str, r: T) -> Result<()> {
    if !(r > T::zero()) || !r.is_finite() {
        return Err(Error::domain(op, format!("radius r = {r} must be finite and > 0")));
    }
    Ok(())
}

/// φ(t) by adaptive quadrature of e^{itx} against the density.
///
/// Integrates over the polar angle (x = 2r sin(θ/2)), where the density is
/// the smooth sinⁿ⁻¹θ instead of having an endpoint singularity in x. For
/// |t|·2r > 50 the range is split at the zeros of cos(tx).
pub fn phi_numeric<T: Scalar>(n: u32, r: T, t: T, spec: &QuadratureSpec<T>) -> Result<ComplexValue<T>> {
    if n < 2 {
        return Err(Error::domain("phi_numeric", format!("n = {n} must be >= 2")));
    }
    require_radius("phi_numeric", r)?;
    if !t.is_finite() || (t * r).abs() > T::lit(MAX_NUMERIC_RT) {
        return Err(Error::domain(
            "phi_numeric",
            format!("|t|·r = {} is past the supported oscillatory range {MAX_NUMERIC_RT}", (t * r).abs()),
        ));
    }
    if t == T::zero() {
        return Ok(Complex::new(T::one(), T::zero()));
    }
    let two_r = T::lit(2.0) * r;
    let half = T::lit(0.5);
    let norm = angular_norm::<T>(n);

    let mut points = vec![T::zero()];
    let at = t.abs();
    if (at * two_r).as_f64() > SUBDIVIDE_ABOVE {
        // cos(tx) = 0 at x = (k + ½)π/|t|
        let mut k = 0usize;
        loop {
            let x = (T::from_count(k) + half) * T::PI() / at;
            if x >= two_r {
                break;
            }
            points.push(T::lit(2.0) * (x / two_r).asin());
            k += 1;
        }
    }
    points.push(T::PI());

    let q = integrate_with_breakpoints(
        |theta: T| {
            let x = two_r * (half * theta).sin();
            let w = norm * theta.sin().powi(n as i32 - 1);
            let (s, c) = (t * x).sin_cos();
            Complex::new(w * c, w * s)
        },
        &points,
        spec,
    )?;
    Ok(q.value)
}

/// φ(t) = (−1 + e^{2irt}(1 − 2irt)) / (2r²t²) for the circle.
///
/// The closed form loses digits to cancellation for small |rt|, so below
/// |rt| = 0.5 the series Σ 2(2irt)ᵏ / (k! (k + 2)) is summed instead.
/// Uses no Bessel or Struve kernel.
pub fn phi_closed_n2<T: Scalar>(r: T, t: T) -> Result<ComplexValue<T>> {
    require_radius("phi_closed_n2", r)?;
    if !t.is_finite() {
        return Err(Error::domain("phi_closed_n2", "t must be finite"));
    }
    let z = T::lit(2.0) * r * t;
    if (r * t).abs() < T::lit(N2_SERIES_RT) {
        let iz = Complex::new(T::zero(), z);
        let mut power = Complex::new(T::one(), T::zero());
        let mut sum = Complex::new(T::one(), T::zero());
        for k in 1..40usize {
            power = power * iz / T::from_count(k);
            let term = power * T::lit(2.0) / T::from_count(k + 2);
            sum += term;
            if term.norm() <= T::epsilon() * T::lit(0.25) {
                break;
            }
        }
        return Ok(sum);
    }
    let e = Complex::new(z.cos(), z.sin());
    let num = e * Complex::new(T::one(), -z) - T::one();
    Ok(num / (T::lit(0.5) * z * z))
}

/// The three pieces of the n = 3 closed form at one t.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct N3Terms<T> {
    /// 32 rt / (15π), imaginary.
    pub linear: T,
    /// (2/r²t²)[J₂(2rt) − 2rt J₃(2rt)], real.
    pub bessel: T,
    /// (2/r²t²)[H₂(2rt) − 2rt H₃(2rt)], imaginary.
    pub struve: T,
}

impl<T: Scalar> N3Terms<T> {
    pub fn value(&self) -> ComplexValue<T> {
        Complex::new(self.bessel, self.linear + self.struve)
    }
}

/// Evaluates the three terms of the n = 3 form. Requires t ≠ 0.
pub fn phi_n3_terms<T: Scalar>(r: T, t: T) -> Result<N3Terms<T>> {
    require_radius("phi_n3_terms", r)?;
    if t == T::zero() || !t.is_finite() {
        return Err(Error::domain("phi_n3_terms", "t must be finite and nonzero"));
    }
    let z = T::lit(2.0) * r * t;
    if z.abs() > T::lit(STRUVE_MAX_ARG) {
        return Err(Error::domain(
            "phi_closed_n3",
            format!("|2rt| = {} is past the Struve range {STRUVE_MAX_ARG}", z.abs()),
        ));
    }
    let scale = T::lit(2.0) / (r * r * t * t);
    Ok(N3Terms {
        linear: T::lit(32.0) * r * t / (T::lit(15.0) * T::PI()),
        bessel: scale * (bessel_j(2, z)? - z * bessel_j(3, z)?),
        struve: scale * (struve_h(2, z)? - z * struve_h(3, z)?),
    })
}

/// φ(t) for the 2-sphere from Bessel J and Struve H of orders 2 and 3.
///
/// For |rt| < 1e-4 the fourth-order Taylor polynomial in the raw moments is
/// used instead.
pub fn phi_closed_n3<T: Scalar>(r: T, t: T) -> Result<ComplexValue<T>> {
    require_radius("phi_closed_n3", r)?;
    if !t.is_finite() {
        return Err(Error::domain("phi_closed_n3", "t must be finite"));
    }
    if (r * t).abs() < T::lit(N3_TAYLOR_RT) {
        let d = ChordDistribution::new(3, r)?;
        return Ok(taylor(&d, t, 4));
    }
    Ok(phi_n3_terms(r, t)?.value())
}

/// Σ_{k ≤ order} (it)ᵏ E[Xᵏ] / k!
fn taylor<T: Scalar>(d: &ChordDistribution<T>, t: T, order: u32) -> ComplexValue<T> {
    let it = Complex::new(T::zero(), t);
    let mut power = Complex::new(T::one(), T::zero());
    let mut sum = power;
    for k in 1..=order {
        power = power * it / T::from_count(k as usize);
        sum += power * d.raw_moment(k);
    }
    sum
}

/// Closed form for n ∈ {2, 3}; `None` for other dimensions.
pub fn phi_closed<T: Scalar>(n: u32, r: T, t: T) -> Option<Result<ComplexValue<T>>> {
    match n {
        2 => Some(phi_closed_n2(r, t)),
        3 => Some(phi_closed_n3(r, t)),
        _ => None,
    }
}

/// Per-term comparison of the n = 3 form against quadrature at one t.
///
/// The Bessel term is the whole real part and linear + Struve the whole
/// imaginary part, so each error is attributed to its own terms.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct N3Discrepancy<T> {
    pub t: T,
    pub terms: N3Terms<T>,
    pub closed: ComplexValue<T>,
    pub quadrature: ComplexValue<T>,
    /// closed.re − quadrature.re
    pub bessel_error: T,
    /// closed.im − quadrature.im
    pub linear_struve_error: T,
    pub deviation: T,
}

pub fn n3_discrepancy<T: Scalar>(r: T, t: T, spec: &QuadratureSpec<T>) -> Result<N3Discrepancy<T>> {
    let terms = phi_n3_terms(r, t)?;
    let closed = terms.value();
    let quadrature = phi_numeric(3, r, t, spec)?;
    Ok(N3Discrepancy {
        t,
        terms,
        closed,
        quadrature,
        bessel_error: closed.re - quadrature.re,
        linear_struve_error: closed.im - quadrature.im,
        deviation: (closed - quadrature).norm(),
    })
}
