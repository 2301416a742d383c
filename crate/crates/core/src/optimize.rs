use crate::scalar::Scalar;

/// Golden-section search for the maximizer of a unimodal `f` on `[lo, hi]`.
pub fn golden_section_max<T: Scalar, F: Fn(T) -> T>(f: F, mut lo: T, mut hi: T, tol: T) -> T {
    let inv_phi = (T::lit(5.0).sqrt() - T::one()) / T::lit(2.0);
    let mut c = hi - inv_phi * (hi - lo);
    let mut d = lo + inv_phi * (hi - lo);
    let mut fc = f(c);
    let mut fd = f(d);
    while (hi - lo).abs() > tol {
        if fc > fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - inv_phi * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + inv_phi * (hi - lo);
            fd = f(d);
        }
        if c >= d {
            break;
        }
    }
    T::lit(0.5) * (lo + hi)
}

/// Golden-section search for the minimizer of a unimodal `f`.
pub fn golden_section_min<T: Scalar, F: Fn(T) -> T>(f: F, lo: T, hi: T, tol: T) -> T {
    golden_section_max(|x| -f(x), lo, hi, tol)
}
