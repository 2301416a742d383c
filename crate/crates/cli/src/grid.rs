use std::str::FromStr;

const MAX_POINTS: usize = 10_000_000;
const ENDPOINT_TOL: f64 = 1e-12;

/// `lo:hi:step`, both endpoints included (hi within 1e-12).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub lo: f64,
    pub hi: f64,
    pub step: f64,
}

impl Grid {
    pub fn points(&self) -> Vec<f64> {
        let count = ((self.hi - self.lo + ENDPOINT_TOL) / self.step).floor() as usize + 1;
        let mut out: Vec<f64> = (0..count).map(|i| self.lo + i as f64 * self.step).collect();
        // land exactly on hi when the last step reaches it up to rounding
        if let Some(last) = out.last_mut() {
            if (*last - self.hi).abs() <= ENDPOINT_TOL {
                *last = self.hi;
            }
        }
        out
    }
}

impl FromStr for Grid {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let [lo, hi, step] = parts.as_slice() else {
            return Err(format!("grid '{s}' must be lo:hi:step"));
        };
        let num = |v: &str| v.trim().parse::<f64>().map_err(|_| format!("grid value '{v}' is not a number"));
        let (lo, hi, step) = (num(lo)?, num(hi)?, num(step)?);
        if !(lo.is_finite() && hi.is_finite() && step.is_finite()) {
            return Err("grid values must be finite".into());
        }
        if step <= 0.0 {
            return Err(format!("grid step {step} must be > 0"));
        }
        if hi < lo {
            return Err(format!("grid is empty: hi {hi} < lo {lo}"));
        }
        if (hi - lo) / step > MAX_POINTS as f64 {
            return Err(format!("grid has more than {MAX_POINTS} points"));
        }
        Ok(Grid { lo, hi, step })
    }
}

/// Inclusive integer range `a:b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IntRange {
    pub lo: u32,
    pub hi: u32,
}

impl FromStr for IntRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (a, b) = s.split_once(':').ok_or_else(|| format!("range '{s}' must be a:b"))?;
        let num = |v: &str| v.trim().parse::<u32>().map_err(|_| format!("range bound '{v}' is not a non-negative integer"));
        let (lo, hi) = (num(a)?, num(b)?);
        if hi < lo {
            return Err(format!("range {lo}:{hi} is empty"));
        }
        Ok(IntRange { lo, hi })
    }
}
