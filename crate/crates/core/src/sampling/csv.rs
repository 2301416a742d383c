use std::io::{self, BufRead, Write};

use super::{RngState, SampleBatch, SamplerKind};
use crate::error::{Error, Result};
use crate::format::format_float;
use crate::scalar::Scalar;

pub const VALUE_HEADER: &str = "chord_length";

impl<T: Scalar> SampleBatch<T> {
    /// Metadata comment line, a column header, then one value per line.
    pub fn write_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(
            w,
            "# n={},r={},sampler={},seed={},stream_id={}",
            self.n,
            format_float(self.r.as_f64()),
            self.sampler,
            self.seed.seed,
            self.seed.stream_id
        )?;
        writeln!(w, "{VALUE_HEADER}")?;
        for v in &self.values {
            writeln!(w, "{}", format_float(v.as_f64()))?;
        }
        Ok(())
    }
}

/// Reads a batch written by [`SampleBatch::write_csv`].
pub fn parse_batch_csv<T: Scalar, R: BufRead>(reader: R) -> Result<SampleBatch<T>> {
    let bad = |msg: String| Error::domain("parse_batch_csv", msg);
    let mut lines = reader.lines();
    let meta = lines
        .next()
        .ok_or_else(|| bad("empty input".into()))?
        .map_err(|e| bad(e.to_string()))?;
    let meta = meta
        .strip_prefix("# ")
        .ok_or_else(|| bad("missing metadata line".into()))?;

    let (mut n, mut r, mut sampler, mut seed, mut stream) = (None, None, None, None, None);
    for field in meta.split(',') {
        let (key, value) = field
            .split_once('=')
            .ok_or_else(|| bad(format!("malformed field '{field}'")))?;
        let num_err = |e: std::num::ParseIntError| bad(format!("{key}: {e}"));
        match key {
            "n" => n = Some(value.parse::<u32>().map_err(num_err)?),
            "r" => r = Some(value.parse::<f64>().map_err(|e| bad(format!("r: {e}")))?),
            "sampler" => sampler = Some(value.parse::<SamplerKind>()?),
            "seed" => seed = Some(value.parse::<u64>().map_err(num_err)?),
            "stream_id" => stream = Some(value.parse::<u64>().map_err(num_err)?),
            _ => return Err(bad(format!("unknown field '{key}'"))),
        }
    }
    let header = lines
        .next()
        .ok_or_else(|| bad("missing header".into()))?
        .map_err(|e| bad(e.to_string()))?;
    if header.trim() != VALUE_HEADER {
        return Err(bad(format!("expected header '{VALUE_HEADER}', got '{header}'")));
    }
    let values = lines
        .map(|l| {
            let l = l.map_err(|e| bad(e.to_string()))?;
            l.trim()
                .parse::<f64>()
                .map(T::lit)
                .map_err(|e| bad(format!("value '{l}': {e}")))
        })
        .collect::<Result<Vec<T>>>()?;

    let missing = |what: &str| bad(format!("metadata lacks {what}"));
    Ok(SampleBatch {
        n: n.ok_or_else(|| missing("n"))?,
        r: T::lit(r.ok_or_else(|| missing("r"))?),
        sampler: sampler.ok_or_else(|| missing("sampler"))?,
        seed: RngState::new(seed.ok_or_else(|| missing("seed"))?, stream.unwrap_or(0)),
        values,
    })
}
