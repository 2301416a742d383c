//! Acceptance suite: one line per criterion, non-zero exit if any fails.
//!
//! Run with `cargo test -p hyperchord --test acceptance`.

use std::f64::consts::{PI, SQRT_2};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use hyperchord::charfun::{phi_closed_n2, phi_closed_n3, phi_numeric};
use hyperchord::chord::{c_n, sqrt2_minus_c_n};
use hyperchord::geometry::{argmax_note, argmax_over, volume, SphereMetric, QUOTED_VOLUME_ARGMAX};
use hyperchord::inference::{
    crlb, default_saturation_epsilon, detect_saturation, estimator_variance_closed, fisher_argmin, fisher_closed,
    fisher_numeric, gap_table, median_deviation_ratio, median_deviation_ratio_factored, simulate_estimates,
};
use hyperchord::sampling::ks::{ks_one_sample, ks_two_sample};
use hyperchord::sampling::sample_chords;
use hyperchord::specfun::integrate_with_breakpoints;
use hyperchord::{ChordDistributionF64, QuadratureSpecF64, RngState, SampleBatchF64, SamplerKind};

const SEED: u64 = 20_240_601;

/// Outcome of one criterion: each failed check adds a message.
#[derive(Default)]
struct Checks {
    failures: Vec<String>,
    info: Vec<String>,
}

impl Checks {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }

    fn info(&mut self, s: String) {
        self.info.push(s);
    }
}

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Duration,
    run: fn(&mut Checks),
}

fn spec() -> QuadratureSpecF64 {
    QuadratureSpecF64::new(1e-14, 1e-13, 4000).unwrap()
}

fn normalization(c: &mut Checks) {
    let mut worst = 0.0_f64;
    for n in [2, 3, 5, 7, 19, 50] {
        for r in [0.5, 1.0, 10.0] {
            let d = ChordDistributionF64::new(n, r).unwrap();
            let q = integrate_with_breakpoints(|x: f64| d.pdf(x), &[0.0, d.mode().location, 2.0 * r], &spec());
            match q {
                Ok(q) => {
                    let err = (q.value - 1.0).abs();
                    worst = worst.max(err);
                    c.check(err < 1e-10, || format!("n={n} r={r}: integral {}", q.value));
                }
                Err(e) => c.check(false, || format!("n={n} r={r}: {e}")),
            }
        }
    }
    c.info(format!("max |integral - 1| = {worst:.2e}"));
}

fn universal_median(c: &mut Checks) {
    let mut worst = 0.0_f64;
    for n in 2..=60 {
        for r in [0.5, 1.0, 10.0] {
            let d = ChordDistributionF64::new(n, r).unwrap();
            let err = (d.cdf(SQRT_2 * r) - 0.5).abs();
            worst = worst.max(err);
            c.check(err < 1e-12, || format!("n={n} r={r}: cdf {}", d.cdf(SQRT_2 * r)));
        }
    }
    c.info(format!("max |cdf(sqrt2 r) - 1/2| = {worst:.2e}"));
}

fn mode_formula(c: &mut Checks) {
    let mut worst = 0.0_f64;
    for n in 3..=40u32 {
        for r in [1.0, 3.0] {
            let d = ChordDistributionF64::new(n, r).unwrap();
            let nf = n as f64;
            let closed = 2.0 * r * ((nf - 1.0) / (2.0 * nf - 3.0)).sqrt();
            let numeric = d.mode_numeric();
            let err = (numeric - closed).abs() / r;
            worst = worst.max(err);
            c.check(err < 1e-6, || format!("n={n} r={r}: numeric {numeric} closed {closed}"));
            c.check((d.mode().location - closed).abs() < 1e-14 * r, || format!("n={n}: library mode {}", d.mode().location));
        }
    }
    c.info(format!("max |argmax - closed|/r = {worst:.2e}"));
}

fn moments(c: &mut Checks) {
    for n in [2, 3, 7, 19, 50] {
        for r in [0.5, 1.0, 1.3, 10.0] {
            let d = ChordDistributionF64::new(n, r).unwrap();
            c.check(d.raw_moment(2) == 2.0 * r * r, || format!("n={n} r={r}: E[X^2] = {}", d.raw_moment(2)));
            let q = integrate_with_breakpoints(|x: f64| x * x * d.pdf(x), &[0.0, d.mode().location, 2.0 * r], &spec())
                .map(|q| q.value);
            c.check(q.as_ref().is_ok_and(|v| (v - 2.0 * r * r).abs() < 1e-10 * r * r), || {
                format!("n={n} r={r}: quadrature E[X^2] {q:?}")
            });
        }
    }
    let m1 = ChordDistributionF64::new(2, 1.0).unwrap().raw_moment(1);
    c.check((m1 - 4.0 / 3.0).abs() < 1e-12, || format!("n=2 mean {m1}"));
    for (i, n) in [2u32, 7, 19].into_iter().enumerate() {
        let d = ChordDistributionF64::new(n, 1.0).unwrap();
        let b: SampleBatchF64 = sample_chords(SamplerKind::Geometric, n, 1.0, 100_000, RngState::new(SEED, i as u64)).unwrap();
        let se = (b.sample_variance() / b.len() as f64).sqrt();
        let z = (b.mean() - d.mean()) / se;
        c.info(format!("n={n} MC z={z:+.2}"));
        c.check(z.abs() <= 4.0, || format!("n={n}: MC mean {} vs {} ({z:.2} SE)", b.mean(), d.mean()));
    }
}

fn fisher(c: &mut Checks) {
    let mut worst = 0.0_f64;
    for n in 5..=40 {
        for r in [0.5, 1.0, 10.0] {
            let closed = fisher_closed(n, r).unwrap();
            match fisher_numeric(n, r, &spec()) {
                Ok(q) => {
                    let rel = (q.value / closed - 1.0).abs();
                    worst = worst.max(rel);
                    c.check(rel < 1e-8, || format!("n={n} r={r}: numeric {} closed {closed}", q.value));
                }
                Err(e) => c.check(false, || format!("n={n} r={r}: {e}")),
            }
        }
    }
    c.info(format!("max rel dev numeric/closed = {worst:.2e}"));
    c.check(fisher_closed(5, 1.0).unwrap() == 80.0, || "I(1) at n=5 is not 80".into());
    let arg = fisher_argmin::<f64>();
    c.check(arg.integer == [7, 8] && 4.0 * arg.integer_value == 56.0, || {
        format!("integer minimum {:?} value {}", arg.integer, 4.0 * arg.integer_value)
    });
    // independent: bisection on the derivative numerator n² − 8n + 4
    let (mut lo, mut hi) = (5.0_f64, 10.0_f64);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid * mid - 8.0 * mid + 4.0 < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let root = 0.5 * (lo + hi);
    c.check((arg.continuous - root).abs() < 1e-9, || format!("continuous argmin {} vs {root}", arg.continuous));
    c.check((arg.continuous - (4.0 + 2.0 * 3f64.sqrt())).abs() < 1e-9, || "continuous argmin != 4 + 2 sqrt 3".into());
}

fn cramer_rao(c: &mut Checks) {
    for n in 5..=200 {
        let v = estimator_variance_closed(n, 1.0, 1).unwrap();
        let b = crlb(n, 1.0, 1).unwrap();
        c.check(v >= b, || format!("n={n}: variance {v} < bound {b}"));
    }
    let ratio = estimator_variance_closed(1000, 1.0_f64, 1000).unwrap() / crlb(1000, 1.0, 1000).unwrap();
    c.info(format!("variance/bound at n=1000: {ratio:.6}"));
    c.check((ratio / 2.0 - 1.0).abs() <= 0.02, || {
        format!("variance/bound at n=1000 is {ratio:.6}, not within 2% of 2 (exact asymptote is 1)")
    });
}

fn estimator_simulation(c: &mut Checks) {
    let s = simulate_estimates(10, 2.0_f64, 100_000, 50, SEED, SamplerKind::Geometric).unwrap();
    let z = s.bias / s.bias_se;
    c.info(format!("bias {:.3e} ({z:+.2} SE)", s.bias));
    c.check(z.abs() <= 3.0, || format!("bias {} is {z:.2} SE from 0", s.bias));
    let ratio = s.mean_empirical_var / s.var_closed_form;
    let between = s.between_replication_var / s.var_closed_form;
    c.info(format!("empirical/closed variance {ratio:.4}, between-replication/closed {between:.4}"));
    c.check((ratio - 1.0).abs() <= 0.05, || format!("empirical variance ratio {ratio}"));
}

fn sampler_triangulation(c: &mut Checks) {
    let kinds = [SamplerKind::Geometric, SamplerKind::BetaTransform, SamplerKind::InverseCdf];
    let mut min_p = 1.0_f64;
    for (i, n) in [2u32, 3, 7, 19, 50].into_iter().enumerate() {
        let batches: Vec<SampleBatchF64> = kinds
            .iter()
            .enumerate()
            .map(|(j, &k)| sample_chords(k, n, 1.0, 10_000, RngState::new(SEED, (10 * i + j) as u64)).unwrap())
            .collect();
        for a in 0..3 {
            for b in a + 1..3 {
                let ks = ks_two_sample(&batches[a].values, &batches[b].values);
                min_p = min_p.min(ks.p_value);
                c.check(ks.passes_one_percent(), || {
                    format!("n={n} {} vs {}: D={:.4} p={:.4}", kinds[a], kinds[b], ks.statistic, ks.p_value)
                });
            }
        }
        let d = ChordDistributionF64::new(n, 1.0).unwrap();
        let ks = ks_one_sample(&batches[1].values, |x| d.cdf(x));
        min_p = min_p.min(ks.p_value);
        c.check(ks.passes_one_percent(), || format!("n={n} beta_transform vs cdf: p={:.4}", ks.p_value));
    }
    c.info(format!("smallest KS p-value {min_p:.3}"));
}

fn characteristic_functions(c: &mut Checks) {
    let grid = |lo: f64, hi: f64, step: f64| {
        let count = ((hi - lo) / step).round() as usize + 1;
        (0..count).map(move |i| lo + i as f64 * step)
    };
    let (mut dev2, mut dev3) = (0.0_f64, 0.0_f64);
    for r in [0.5, 1.0] {
        for t in grid(-20.0, 20.0, 0.05) {
            let closed = phi_closed_n2(r, t).unwrap();
            let numeric = phi_numeric(2, r, t, &spec()).unwrap();
            dev2 = dev2.max((closed - numeric).norm());
            c.check(closed.norm() <= 1.0 + 1e-12, || format!("n=2 |phi({t})| > 1"));
            let conj = phi_closed_n2(r, -t).unwrap().conj();
            c.check((closed - conj).norm() < 1e-12, || format!("n=2 conjugate symmetry at t={t}"));
        }
        for t in grid(-10.0, 10.0, 0.05) {
            let closed = phi_closed_n3(r, t).unwrap();
            let numeric = phi_numeric(3, r, t, &spec()).unwrap();
            dev3 = dev3.max((closed - numeric).norm());
            c.check(closed.norm() <= 1.0 + 1e-12 && numeric.norm() <= 1.0 + 1e-12, || format!("n=3 |phi({t})| > 1"));
            let conj = phi_closed_n3(r, -t).unwrap().conj();
            c.check((closed - conj).norm() < 1e-12, || format!("n=3 conjugate symmetry at t={t}"));
        }
        for (name, v) in [
            ("n=2 closed", phi_closed_n2(r, 0.0).unwrap()),
            ("n=3 closed", phi_closed_n3(r, 0.0).unwrap()),
            ("n=2 quadrature", phi_numeric(2, r, 0.0, &spec()).unwrap()),
            ("n=3 quadrature", phi_numeric(3, r, 0.0, &spec()).unwrap()),
        ] {
            c.check(v.re == 1.0 && v.im == 0.0, || format!("{name}: phi(0) = {v}"));
        }
    }
    c.info(format!("max deviation n=2 {dev2:.2e}, n=3 {dev3:.2e}"));
    c.check(dev2 < 1e-10, || format!("n=2 deviation {dev2:e}"));
    c.check(dev3 < 1e-8, || format!("n=3 deviation {dev3:e}"));
}

fn critical_dimension(c: &mut Checks) {
    let table = gap_table::<f64>(2, 200).unwrap();
    c.check(table.windows(2).all(|w| w[1].gap < w[0].gap), || "gap not strictly decreasing".into());
    let g19 = sqrt2_minus_c_n::<f64>(19);
    let target = 1.0 / (2.0 * SQRT_2 * 19.0);
    let corrected = 1.0 / (4.0 * SQRT_2 * 19.0);
    c.info(format!(
        "gap(19) = {g19:.6e}; 1/(2 sqrt2 n) = {target:.6e} (ratio {:.4}); 1/(4 sqrt2 n) = {corrected:.6e} (ratio {:.4})",
        g19 / target,
        g19 / corrected
    ));
    c.check((g19 / target - 1.0).abs() <= 0.05, || {
        format!("gap(19)/(1/(2 sqrt2 19)) = {:.4}, outside 5%", g19 / target)
    });
    let sat = detect_saturation(&table, default_saturation_epsilon());
    c.check(sat == Some(19), || format!("saturation {sat:?}"));
}

fn geometry_tables(c: &mut Checks) {
    // oracle: V₀ = 1, V₁ = 2, Vₙ = 2π Vₙ₋₂ / n
    let mut v = vec![1.0_f64, 2.0];
    for n in 2..=20 {
        v.push(2.0 * PI * v[n - 2] / n as f64);
    }
    for n in 1..=20u32 {
        let lib = volume::<f64>(n).unwrap();
        let want = v[n as usize];
        c.check((lib - want).abs() <= 1e-12 * want.max(1.0), || format!("V_{n} = {lib} vs {want}"));
    }
    let vol = argmax_over::<f64>(1, 20, SphereMetric::Volume).unwrap();
    let area = argmax_over::<f64>(1, 20, SphereMetric::SurfaceArea).unwrap();
    c.check(vol.argmax == 5, || format!("volume argmax {}", vol.argmax));
    c.check(area.argmax == 6, || format!("surface area argmax {}", area.argmax));
    let note = argmax_note(vol.argmax, area.argmax);
    c.check(note.contains(&QUOTED_VOLUME_ARGMAX.to_string()), || "discrepancy note missing".into());
    c.info(note);
}

fn unimodal_inequality(c: &mut Checks) {
    let mut worst = (0.0_f64, 0);
    let mut diff = 0.0_f64;
    for n in 2..=200 {
        let a = median_deviation_ratio::<f64>(n);
        let b = median_deviation_ratio_factored::<f64>(n);
        if a > worst.0 {
            worst = (a, n);
        }
        diff = diff.max((a - b).abs());
        c.check(a <= 0.6, || format!("n={n}: ratio {a}"));
        c.check((a - b).abs() < 1e-12, || format!("n={n}: forms differ by {}", (a - b).abs()));
        let cn = c_n::<f64>(n);
        c.check((2.0 - cn * cn) > 0.0, || format!("n={n}: nonpositive variance"));
    }
    c.info(format!("max ratio {:.4} (n={}), max form difference {diff:.1e}", worst.0, worst.1));
}

fn main() -> ExitCode {
    let criteria = [
        Criterion { id: 1, name: "normalization", limit: Duration::from_secs(5), run: normalization },
        Criterion { id: 2, name: "universal median", limit: Duration::from_secs(1), run: universal_median },
        Criterion { id: 3, name: "mode formula", limit: Duration::from_secs(5), run: mode_formula },
        Criterion { id: 4, name: "moments", limit: Duration::from_secs(30), run: moments },
        Criterion { id: 5, name: "Fisher information", limit: Duration::from_secs(60), run: fisher },
        Criterion { id: 6, name: "Cramer-Rao bound", limit: Duration::from_secs(1), run: cramer_rao },
        Criterion { id: 7, name: "estimator simulation", limit: Duration::from_secs(60), run: estimator_simulation },
        Criterion { id: 8, name: "sampler triangulation", limit: Duration::from_secs(30), run: sampler_triangulation },
        Criterion { id: 9, name: "characteristic functions", limit: Duration::from_secs(60), run: characteristic_functions },
        Criterion { id: 10, name: "critical dimension", limit: Duration::from_secs(1), run: critical_dimension },
        Criterion { id: 11, name: "geometry tables", limit: Duration::from_secs(1), run: geometry_tables },
        Criterion { id: 12, name: "unimodal inequality", limit: Duration::from_secs(1), run: unimodal_inequality },
    ];
    let mut failed = 0;
    for crit in &criteria {
        let mut checks = Checks::default();
        let start = Instant::now();
        (crit.run)(&mut checks);
        let elapsed = start.elapsed();
        checks.check(elapsed <= crit.limit, || format!("runtime {elapsed:.2?} over {:?}", crit.limit));
        let ok = checks.failures.is_empty();
        failed += usize::from(!ok);
        println!(
            "AC{:<2} {} {:<26} {:>9.3?}  {}",
            crit.id,
            if ok { "PASS" } else { "FAIL" },
            crit.name,
            elapsed,
            checks.info.join("; ")
        );
        for f in checks.failures.iter().take(5) {
            println!("       - {f}");
        }
        if checks.failures.len() > 5 {
            println!("       - ... {} more", checks.failures.len() - 5);
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
