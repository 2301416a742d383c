//! Kolmogorov–Smirnov statistics with asymptotic critical values.

use serde::Serialize;

/// c(α) for α = 0.01 in the asymptotic Kolmogorov distribution.
pub const KS_C_ONE_PERCENT: f64 = 1.628;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KsResult {
    pub statistic: f64,
    pub effective_n: f64,
    pub p_value: f64,
    pub critical_one_percent: f64,
}

impl KsResult {
    fn new(statistic: f64, effective_n: f64) -> Self {
        let sqrt_n = effective_n.sqrt();
        let lambda = (sqrt_n + 0.12 + 0.11 / sqrt_n) * statistic;
        Self {
            statistic,
            effective_n,
            p_value: kolmogorov_survival(lambda),
            critical_one_percent: KS_C_ONE_PERCENT / sqrt_n,
        }
    }

    pub fn passes_one_percent(&self) -> bool {
        self.statistic < self.critical_one_percent
    }
}

/// Q_KS(λ) = 2 Σ_{j≥1} (−1)^{j−1} exp(−2 j² λ²).
pub fn kolmogorov_survival(lambda: f64) -> f64 {
    if lambda < 1e-3 {
        return 1.0;
    }
    let a2 = -2.0 * lambda * lambda;
    let mut sum = 0.0;
    let mut sign = 2.0;
    let mut prev = 0.0_f64;
    for j in 1..=100 {
        let j = j as f64;
        let term = sign * (a2 * j * j).exp();
        sum += term;
        if term.abs() <= 1e-3 * prev || term.abs() <= 1e-10 * sum.abs() {
            return sum.clamp(0.0, 1.0);
        }
        sign = -sign;
        prev = term.abs();
    }
    1.0
}

/// One-sample statistic D = sup |F_n − F| against the reference `cdf`.
pub fn ks_one_sample<F: Fn(f64) -> f64>(values: &[f64], cdf: F) -> KsResult {
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len() as f64;
    let mut d = 0.0_f64;
    for (i, &x) in sorted.iter().enumerate() {
        let f = cdf(x);
        let lo = i as f64 / n;
        let hi = (i + 1) as f64 / n;
        d = d.max((f - lo).abs()).max((hi - f).abs());
    }
    KsResult::new(d, n)
}

/// Two-sample statistic D = sup |F_a − F_b| over the pooled sample.
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> KsResult {
    let mut xa = a.to_vec();
    let mut xb = b.to_vec();
    xa.sort_by(f64::total_cmp);
    xb.sort_by(f64::total_cmp);
    let (na, nb) = (xa.len() as f64, xb.len() as f64);
    let (mut i, mut j) = (0usize, 0usize);
    let mut d = 0.0_f64;
    while i < xa.len() && j < xb.len() {
        let x = xa[i].min(xb[j]);
        while i < xa.len() && xa[i] <= x {
            i += 1;
        }
        while j < xb.len() && xb[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / na - j as f64 / nb).abs());
    }
    KsResult::new(d, na * nb / (na + nb))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn survival_function_reference_points() {
        // Q(1.628) ≈ 0.01, Q(1.358) ≈ 0.05
        assert!((kolmogorov_survival(1.628) - 0.01).abs() < 5e-4);
        assert!((kolmogorov_survival(1.358) - 0.05).abs() < 5e-4);
        assert_eq!(kolmogorov_survival(0.0), 1.0);
        assert!(kolmogorov_survival(5.0) < 1e-20);
    }

    #[test]
    fn one_sample_on_exact_quantile_grid() {
        let n = 1000;
        let v: Vec<f64> = (0..n).map(|i| (i as f64 + 0.5) / n as f64).collect();
        let r = ks_one_sample(&v, |x| x);
        assert!((r.statistic - 0.5 / n as f64).abs() < 1e-12);
        assert!(r.passes_one_percent());
    }

    #[test]
    fn two_sample_detects_shift() {
        let a: Vec<f64> = (0..500).map(|i| i as f64 / 500.0).collect();
        let b: Vec<f64> = a.iter().map(|x| x + 0.3).collect();
        let r = ks_two_sample(&a, &b);
        assert!((r.statistic - 0.3).abs() < 0.01);
        assert!(!r.passes_one_percent());
        let same = ks_two_sample(&a, &a);
        assert_eq!(same.statistic, 0.0);
    }
}
