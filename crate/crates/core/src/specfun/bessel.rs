use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub const MAX_ORDER: u32 = 10;
pub const BESSEL_MAX_ARG: f64 = 500.0;
const SERIES_LIMIT: f64 = 12.0;

/// Bessel function of the first kind J_k(z) for integer order 0..=10.
///
/// Ascending series for |z| ≤ 12. Beyond that the trapezoidal rule on
/// J_k(z) = (1/2π) ∫₀^{2π} cos(kθ − z sin θ) dθ, which converges
/// geometrically once the node count exceeds |z| + k by a margin of order
/// |z|^{1/3}.
pub fn bessel_j<T: Scalar>(k: u32, z: T) -> Result<T> {
    #[cfg(test)]
    super::kernel_calls::bump();
    if k > MAX_ORDER {
        return Err(Error::OrderOutOfRange {
            op: "bessel_j",
            order: k,
            max: MAX_ORDER,
        });
    }
    if !z.is_finite() || z.abs() > T::lit(BESSEL_MAX_ARG) {
        return Err(Error::domain("bessel_j", format!("|z| = {} exceeds {BESSEL_MAX_ARG}", z.abs())));
    }
    if z.abs() <= T::lit(SERIES_LIMIT) {
        Ok(series(k, z))
    } else {
        Ok(trapezoid(k, z))
    }
}

fn series<T: Scalar>(k: u32, z: T) -> T {
    if z == T::zero() {
        return if k == 0 { T::one() } else { T::zero() };
    }
    let half_z = T::lit(0.5) * z;
    let q = -(half_z * half_z);
    let mut term = T::one();
    for j in 1..=k {
        term *= half_z / T::from_count(j as usize);
    }
    let mut sum = term;
    let kk = T::from_count(k as usize);
    for m in 1..200usize {
        let mf = T::from_count(m);
        term *= q / (mf * (mf + kk));
        sum += term;
        if term.abs() <= T::epsilon() * sum.abs() * T::lit(0.5) && mf > half_z.abs() {
            break;
        }
    }
    sum
}

fn trapezoid<T: Scalar>(k: u32, z: T) -> T {
    let az = z.abs().as_f64();
    let nodes = (az + 10.0 * az.cbrt() + 40.0) as usize + k as usize;
    let step = T::TAU() / T::from_count(nodes);
    let kk = T::from_count(k as usize);
    let mut sum = T::zero();
    for j in 0..nodes {
        let theta = step * T::from_count(j);
        sum += (kk * theta - z * theta.sin()).cos();
    }
    sum / T::from_count(nodes)
}
