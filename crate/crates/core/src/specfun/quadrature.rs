//! Adaptive Gauss–Kronrod (G10/K21) quadrature.
//!
//! Global adaptive bisection: the interval with the largest error estimate
//! is split until the summed estimate falls below
//! `max(abs_tol, rel_tol * |result|)`. Complex integrands are integrated
//! componentwise through [`QuadValue`].

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec<T> {
    pub abs_tol: T,
    pub rel_tol: T,
    pub max_subdivisions: usize,
}

impl<T: Scalar> QuadratureSpec<T> {
    pub fn new(abs_tol: T, rel_tol: T, max_subdivisions: usize) -> Result<Self> {
        if !(abs_tol > T::zero()) || !(rel_tol > T::zero()) || max_subdivisions == 0 {
            return Err(Error::domain(
                "QuadratureSpec",
                format!(
                    "need abs_tol > 0, rel_tol > 0, max_subdivisions >= 1 \
                     (got {abs_tol}, {rel_tol}, {max_subdivisions})"
                ),
            ));
        }
        Ok(Self {
            abs_tol,
            rel_tol,
            max_subdivisions,
        })
    }
}

impl<T: Scalar> Default for QuadratureSpec<T> {
    fn default() -> Self {
        let floor = T::epsilon() * T::lit(100.0);
        Self {
            abs_tol: T::lit(1e-12).max(floor),
            rel_tol: T::lit(1e-12).max(floor),
            max_subdivisions: 2000,
        }
    }
}

/// Value types that can be integrated: real scalars and complex numbers.
pub trait QuadValue<T: Scalar>: Copy + Send + Sync {
    const PARTS: usize;
    fn part(&self, i: usize) -> T;
    fn from_parts(parts: [T; 2]) -> Self;
}

impl<T: Scalar> QuadValue<T> for T {
    const PARTS: usize = 1;
    #[inline]
    fn part(&self, _i: usize) -> T {
        *self
    }
    #[inline]
    fn from_parts(parts: [T; 2]) -> Self {
        parts[0]
    }
}

impl<T: Scalar> QuadValue<T> for Complex<T> {
    const PARTS: usize = 2;
    #[inline]
    fn part(&self, i: usize) -> T {
        if i == 0 {
            self.re
        } else {
            self.im
        }
    }
    #[inline]
    fn from_parts(parts: [T; 2]) -> Self {
        Complex::new(parts[0], parts[1])
    }
}

/// Converged integral with its error estimate.
#[derive(Debug, Clone, Copy)]
pub struct Quadrature<V, T> {
    pub value: V,
    pub abs_error: T,
    pub subdivisions: usize,
}

#[allow(clippy::excessive_precision)]
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];
#[allow(clippy::excessive_precision)]
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_958_109_831_074,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

#[derive(Debug, Clone, Copy)]
struct Segment<T> {
    lo: T,
    hi: T,
    value: [T; 2],
    error: T,
    // Error estimate is at the rounding floor; bisection cannot reduce it.
    roundoff: bool,
}

impl<T: Scalar> PartialEq for Segment<T> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl<T: Scalar> Eq for Segment<T> {}
impl<T: Scalar> PartialOrd for Segment<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<T: Scalar> Ord for Segment<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .partial_cmp(&other.error)
            .unwrap_or(Ordering::Equal)
    }
}

fn rescale_error<T: Scalar>(err: T, resabs: T, resasc: T) -> (T, bool) {
    let mut err = err.abs();
    if resasc != T::zero() && err != T::zero() {
        let scale = (T::lit(200.0) * err / resasc).powf(T::lit(1.5));
        err = resasc * scale.min(T::one());
    }
    let eps50 = T::lit(50.0) * T::epsilon();
    let floor = eps50 * resabs;
    if resabs > T::min_positive_value() / eps50 && err <= floor {
        return (floor, true);
    }
    (err, err == T::zero())
}

fn gauss_kronrod<T, V, F>(f: &F, lo: T, hi: T) -> Segment<T>
where
    T: Scalar,
    V: QuadValue<T>,
    F: Fn(T) -> V,
{
    let half = T::lit(0.5);
    let center = half * (lo + hi);
    let half_len = half * (hi - lo);
    let abs_half = half_len.abs();

    let mut left = [[T::zero(); 2]; 10];
    let mut right = [[T::zero(); 2]; 10];
    let fc = f(center);
    for j in 0..10 {
        let dx = half_len * T::lit(XGK[j]);
        let (a, b) = (f(center - dx), f(center + dx));
        for p in 0..V::PARTS {
            left[j][p] = a.part(p);
            right[j][p] = b.part(p);
        }
    }

    let mut value = [T::zero(); 2];
    let mut error = T::zero();
    let mut roundoff = true;
    for p in 0..V::PARTS {
        let c = fc.part(p);
        let mut kronrod = c * T::lit(WGK[10]);
        let mut gauss = T::zero();
        let mut resabs = kronrod.abs();
        for j in 0..10 {
            let (l, r) = (left[j][p], right[j][p]);
            let w = T::lit(WGK[j]);
            kronrod += w * (l + r);
            resabs += w * (l.abs() + r.abs());
            if j % 2 == 1 {
                gauss += T::lit(WG[j / 2]) * (l + r);
            }
        }
        let mean = half * kronrod;
        let mut resasc = T::lit(WGK[10]) * (c - mean).abs();
        for j in 0..10 {
            resasc += T::lit(WGK[j]) * ((left[j][p] - mean).abs() + (right[j][p] - mean).abs());
        }
        let err = (kronrod - gauss) * half_len;
        value[p] = kronrod * half_len;
        let (e, at_floor) = rescale_error(err, resabs * abs_half, resasc * abs_half);
        error += e;
        roundoff &= at_floor;
    }
    Segment {
        lo,
        hi,
        value,
        error,
        roundoff,
    }
}

/// Integrates `f` over `[lo, hi]`.
pub fn integrate<T, V, F>(f: F, lo: T, hi: T, spec: &QuadratureSpec<T>) -> Result<Quadrature<V, T>>
where
    T: Scalar,
    V: QuadValue<T>,
    F: Fn(T) -> V,
{
    integrate_with_breakpoints(f, &[lo, hi], spec)
}

/// Integrates `f` over `[points[0], points[last]]`, seeding the adaptive
/// scheme with one segment per consecutive pair of `points`.
pub fn integrate_with_breakpoints<T, V, F>(
    f: F,
    points: &[T],
    spec: &QuadratureSpec<T>,
) -> Result<Quadrature<V, T>>
where
    T: Scalar,
    V: QuadValue<T>,
    F: Fn(T) -> V,
{
    if points.len() < 2 || points.iter().any(|p| !p.is_finite()) {
        return Err(Error::domain("integrate", "need at least two finite limits"));
    }
    if points.windows(2).any(|w| w[1] < w[0]) && points.windows(2).any(|w| w[1] > w[0]) {
        return Err(Error::domain("integrate", "breakpoints must be monotone"));
    }

    let mut heap = BinaryHeap::new();
    let mut finished: Vec<Segment<T>> = Vec::new();
    let mut total = [T::zero(); 2];
    let mut total_err = T::zero();
    for w in points.windows(2) {
        if w[0] == w[1] {
            continue;
        }
        let seg = gauss_kronrod(&f, w[0], w[1]);
        for p in 0..2 {
            total[p] += seg.value[p];
        }
        total_err += seg.error;
        heap.push(seg);
    }

    let mut subdivisions = heap.len();
    let mut capped = false;
    let mut unresolved = false;
    let magnitude = |v: &[T; 2]| v[0].abs().max(v[1].abs());
    loop {
        let tol = spec.abs_tol.max(spec.rel_tol * magnitude(&total));
        if total_err <= tol {
            break;
        }
        let Some(worst) = heap.pop() else {
            break;
        };
        if worst.roundoff {
            // Every remaining segment has a smaller estimate; nothing left
            // that subdivision can improve beyond rounding.
            finished.push(worst);
            if heap.iter().all(|s| s.roundoff) {
                break;
            }
            continue;
        }
        if subdivisions >= spec.max_subdivisions {
            capped = true;
            finished.push(worst);
            break;
        }
        let mid = T::lit(0.5) * (worst.lo + worst.hi);
        if mid == worst.lo || mid == worst.hi {
            unresolved = true;
            finished.push(worst);
            continue;
        }
        let a = gauss_kronrod(&f, worst.lo, mid);
        let b = gauss_kronrod(&f, mid, worst.hi);
        for p in 0..2 {
            total[p] += a.value[p] + b.value[p] - worst.value[p];
        }
        total_err += a.error + b.error - worst.error;
        heap.push(a);
        heap.push(b);
        subdivisions += 1;
    }

    // Resum from the segment list to drop accumulated update drift.
    let mut value = [T::zero(); 2];
    let mut error = T::zero();
    let mut refinable_error = T::zero();
    for seg in heap.iter().chain(finished.iter()) {
        for p in 0..2 {
            value[p] += seg.value[p];
        }
        error += seg.error;
        if !seg.roundoff {
            refinable_error += seg.error;
        }
    }
    let tol = spec.abs_tol.max(spec.rel_tol * magnitude(&value));
    // Error that is pure rounding is accepted; anything else above the
    // tolerance means the cap was hit or a singularity was not resolved.
    if refinable_error > tol && (capped || unresolved) {
        return Err(Error::NonConvergence {
            op: "integrate",
            iterations: subdivisions,
            best: value[0].as_f64(),
            error: error.as_f64(),
        });
    }
    Ok(Quadrature {
        value: V::from_parts(value),
        abs_error: error,
        subdivisions,
    })
}
