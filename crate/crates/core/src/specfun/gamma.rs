use crate::error::{Error, Result};
use crate::scalar::Scalar;

// Lanczos approximation, g = 7, nine coefficients.
const LANCZOS_G: f64 = 7.0;
#[allow(clippy::excessive_precision)]
const LANCZOS_COEF: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Natural logarithm of the Gamma function for positive arguments.
pub fn ln_gamma<T: Scalar>(x: T) -> Result<T> {
    if !(x > T::zero()) || !x.is_finite() {
        return Err(Error::domain("ln_gamma", format!("x = {x} must be finite and > 0")));
    }
    Ok(ln_gamma_unchecked(x))
}

pub(crate) fn ln_gamma_unchecked<T: Scalar>(x: T) -> T {
    let half = T::lit(0.5);
    if x < half {
        // Γ(x) = Γ(x + 1) / x keeps the Lanczos sum in its accurate region.
        return ln_gamma_unchecked(x + T::one()) - x.ln();
    }
    let z = x - T::one();
    let mut acc = T::lit(LANCZOS_COEF[0]);
    for (i, &c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        acc += T::lit(c) / (z + T::from_count(i));
    }
    let t = z + T::lit(LANCZOS_G) + half;
    T::lit(HALF_LN_TWO_PI) + (z + half) * t.ln() - t + acc.ln()
}

/// ln B(a, b) = ln Γ(a) + ln Γ(b) − ln Γ(a + b).
pub fn ln_beta<T: Scalar>(a: T, b: T) -> Result<T> {
    check_beta_args("ln_beta", a, b)?;
    Ok(ln_beta_unchecked(a, b))
}

pub(crate) fn ln_beta_unchecked<T: Scalar>(a: T, b: T) -> T {
    if a.min(b) >= T::lit(STIRLING_MIN) {
        // ln B = (a−½) ln(a/c) + (b−½) ln(b/c) − ½ ln c + ½ ln 2π + Δ, c = a + b.
        // Avoids subtracting three large ln Γ values.
        let half = T::lit(0.5);
        let c = a + b;
        return (a - half) * (a / c).ln() + (b - half) * (b / c).ln() - half * c.ln()
            + T::lit(HALF_LN_TWO_PI)
            + stirling_delta(a, b);
    }
    ln_gamma_unchecked(a) + ln_gamma_unchecked(b) - ln_gamma_unchecked(a + b)
}

pub(crate) const STIRLING_MIN: f64 = 10.0;
pub(crate) const HALF_LN_TWO_PI: f64 = 0.918_938_533_204_672_741_78;

/// Remainder of Stirling's series:
/// ln Γ(x) − [(x − ½) ln x − x + ½ ln 2π], accurate to rounding for x ≥ 10.
pub(crate) fn stirling_correction<T: Scalar>(x: T) -> T {
    const C: [f64; 7] = [
        1.0 / 12.0,
        -1.0 / 360.0,
        1.0 / 1260.0,
        -1.0 / 1680.0,
        1.0 / 1188.0,
        -691.0 / 360_360.0,
        1.0 / 156.0,
    ];
    let inv = x.recip();
    let inv2 = inv * inv;
    let mut acc = T::zero();
    for &c in C.iter().rev() {
        acc = acc * inv2 + T::lit(c);
    }
    acc * inv
}

/// δ(a) + δ(b) − δ(a + b) for the Stirling remainder δ.
pub(crate) fn stirling_delta<T: Scalar>(a: T, b: T) -> T {
    stirling_correction(a) + stirling_correction(b) - stirling_correction(a + b)
}

/// Euler Beta function B(a, b) = Γ(a)Γ(b)/Γ(a+b).
pub fn beta<T: Scalar>(a: T, b: T) -> Result<T> {
    check_beta_args("beta", a, b)?;
    Ok(ln_beta_unchecked(a, b).exp())
}

fn check_beta_args<T: Scalar>(op: &'static str, a: T, b: T) -> Result<()> {
    if !(a > T::zero() && b > T::zero()) || !a.is_finite() || !b.is_finite() {
        return Err(Error::domain(op, format!("a = {a}, b = {b} must be finite and > 0")));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ln_factorial(k: u32) -> f64 {
        (1..=k).map(|j| (j as f64).ln()).sum()
    }

    #[test]
    fn ln_gamma_reference_points() {
        assert!(ln_gamma(1.0_f64).unwrap().abs() < 1e-15);
        assert!(ln_gamma(2.0_f64).unwrap().abs() < 1e-15);
        assert!((ln_gamma(0.5_f64).unwrap() - 0.572_364_942_924_700_08).abs() < 1e-14);
        let lf = 362_880.0_f64.ln();
        assert!((ln_gamma(10.0_f64).unwrap() - 12.801_827_480_081_469).abs() < 1e-13 * lf);
        assert!((lf - 12.801_827_480_081_469).abs() < 1e-14);
    }

    #[test]
    fn ln_gamma_matches_log_factorials() {
        for k in 2..170u32 {
            let x = (k + 1) as f64;
            let exact = ln_factorial(k);
            let got = ln_gamma(x).unwrap();
            assert!(((got - exact) / exact).abs() < 1e-13, "k = {k}: {got} vs {exact}");
        }
    }

    #[test]
    fn ln_gamma_half_integers() {
        // Γ(k + 1/2) = (2k)! √π / (4^k k!)
        for k in 1..90u32 {
            let exact = ln_factorial(2 * k) + 0.5 * std::f64::consts::PI.ln()
                - (k as f64) * 4.0_f64.ln()
                - ln_factorial(k);
            let got = ln_gamma(k as f64 + 0.5).unwrap();
            assert!(((got - exact) / exact).abs() < 1e-13, "k = {k}");
        }
    }

    #[test]
    fn ln_gamma_small_arguments_use_recurrence() {
        let x = 0.1_f64;
        let lhs = ln_gamma(x).unwrap();
        let rhs = ln_gamma(x + 1.0).unwrap() - x.ln();
        assert!((lhs - rhs).abs() < 1e-14);
        // Γ(0.1) = 9.513507698668731836...
        assert!((lhs - 9.513_507_698_668_732_f64.ln()).abs() < 1e-14);
    }

    #[test]
    fn ln_gamma_rejects_non_positive() {
        assert!(ln_gamma(0.0_f64).is_err());
        assert!(ln_gamma(-1.5_f64).is_err());
        assert!(ln_gamma(f64::NAN).is_err());
    }

    #[test]
    fn beta_reference_points() {
        let pi = std::f64::consts::PI;
        assert!((beta(1.0, 0.5).unwrap() - 2.0_f64).abs() < 1e-14);
        assert!((beta(0.5, 0.5).unwrap() - pi).abs() < 1e-12 * pi);
        assert!((beta(1.5, 0.5).unwrap() - pi / 2.0).abs() < 1e-12 * pi);
        assert!(beta(0.0_f64, 1.0).is_err());
        assert!(beta(1.0_f64, -2.0).is_err());
    }

    #[test]
    fn beta_is_symmetric() {
        for i in 1..40 {
            for j in 1..40 {
                let a = 0.37 * i as f64;
                let b = 1.1 * j as f64;
                let ab = beta(a, b).unwrap();
                let ba = beta(b, a).unwrap();
                assert!(((ab - ba) / ab).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn stirling_branch_matches_direct_sum() {
        for &(a, b) in &[(10.0, 10.0), (12.5, 40.0), (100.0, 100.0), (300.0, 17.0)] {
            let direct = ln_gamma_unchecked(a) + ln_gamma_unchecked(b) - ln_gamma_unchecked(a + b);
            let stable: f64 = ln_beta_unchecked(a, b);
            assert!((direct - stable).abs() < 1e-12 * direct.abs(), "({a}, {b})");
        }
        // ln Γ(20) = ln(19!)
        let x = 20.0_f64;
        let st = (x - 0.5) * x.ln() - x + HALF_LN_TWO_PI + stirling_correction(x);
        assert!((st - ln_factorial(19)).abs() < 1e-14 * st);
    }

    #[test]
    fn single_precision_instantiation() {
        let v: f32 = ln_gamma(10.0_f32).unwrap();
        assert!((v - 12.801_828).abs() < 1e-4);
    }
}
