use std::fmt;
use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::process::ExitCode;

use hyperchord::charfun::{n3_discrepancy, phi_closed, phi_numeric};
use hyperchord::chord::ChordDistribution;
use hyperchord::geometry::{argmax_note, argmax_over, SphereMetric, SphereMetrics};
use hyperchord::inference::{
    default_saturation_epsilon, detect_saturation, estimate_radius, fisher_argmin, fisher_closed,
    fisher_integer_argmin, gap_table, simulate_estimates,
};
use hyperchord::sampling::ks::{ks_one_sample, ks_two_sample};
use hyperchord::sampling::{parse_batch_csv, sample_chords};
use hyperchord::{Complex64, QuadratureSpecF64, RngState, SampleBatchF64};

use crate::output::{Cell, Envelope, Format};
use crate::{AnalyzeArgs, Analysis, CharfunArgs, Cli, Command, Common, DistArgs, EstimateArgs, SampleArgs, Source, Which};

/// Closed form vs quadrature disagreement that signals a bug.
const CONSISTENCY_LIMIT: f64 = 1e-6;

#[derive(Debug)]
pub enum CliError {
    Invalid(String),
    Numeric(String),
    Consistency(String),
    Io(io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Invalid(_) => ExitCode::from(2),
            CliError::Consistency(_) => ExitCode::from(3),
            CliError::Numeric(_) | CliError::Io(_) => ExitCode::FAILURE,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Invalid(m) | CliError::Numeric(m) | CliError::Consistency(m) => f.write_str(m),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl From<hyperchord::Error> for CliError {
    fn from(e: hyperchord::Error) -> Self {
        match e {
            hyperchord::Error::NonConvergence { .. } => CliError::Numeric(e.to_string()),
            _ => CliError::Invalid(e.to_string()),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

type CliResult<T> = Result<T, CliError>;

pub fn run(cli: Cli) -> CliResult<ExitCode> {
    let common = &cli.common;
    match cli.command {
        Command::Dist(a) => emit(common, &dist(&a, common)?),
        Command::Sample(a) => sample(&a, common),
        Command::Estimate(a) => emit(common, &estimate(&a, common)?),
        Command::Analyze(a) => emit(common, &analyze(&a, common)?),
        Command::Charfun(a) => {
            let (env, deviation) = charfun(&a, common)?;
            emit(common, &env)?;
            match deviation {
                Some(d) if d > CONSISTENCY_LIMIT => Err(CliError::Consistency(format!(
                    "closed form and quadrature differ by {d:e} (limit {CONSISTENCY_LIMIT:e})"
                ))),
                _ => Ok(ExitCode::SUCCESS),
            }
        }
    }
}

fn emit(common: &Common, env: &Envelope) -> CliResult<ExitCode> {
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    env.write(common.format, &mut out)?;
    out.flush()?;
    Ok(ExitCode::SUCCESS)
}

fn dist(a: &DistArgs, common: &Common) -> CliResult<Envelope> {
    let d = ChordDistribution::<f64>::new(a.n, a.r)?;
    let column = match a.which {
        Which::Pdf => "pdf",
        Which::Cdf => "cdf",
        Which::Quantile => "quantile",
    };
    let first = if a.which == Which::Quantile { "p" } else { "x" };
    let mut env = Envelope::new("dist", vec![first, column], None, common.timestamp);
    env.param("n", a.n).param("r", a.r).param("which", column).param("grid", grid_text(&a.grid));
    for x in a.grid.points() {
        let y = match a.which {
            Which::Pdf => d.pdf(x),
            Which::Cdf => d.cdf(x),
            Which::Quantile => d.quantile(x)?,
        };
        env.push(vec![x.into(), y.into()]);
    }
    let mode = d.mode();
    env.summary("mean", d.mean())
        .summary("variance", d.variance())
        .summary("median", d.median())
        .summary("mode", mode.location)
        .summary("mode_on_boundary", mode.boundary);
    Ok(env)
}

fn grid_text(g: &crate::grid::Grid) -> String {
    format!("{}:{}:{}", g.lo, g.hi, g.step)
}

fn sample(a: &SampleArgs, common: &Common) -> CliResult<ExitCode> {
    let seed = RngState::new(a.seed, a.stream);
    let batch: SampleBatchF64 = sample_chords(a.sampler, a.n, a.r, a.count, seed)?;
    let d = ChordDistribution::<f64>::new(a.n, a.r)?;

    let mut sink: Box<dyn Write> = match &a.output {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    match common.format {
        Format::Csv => batch.write_csv(&mut sink)?,
        Format::Json => {
            let mut env = Envelope::new("sample", vec!["chord_length"], Some(a.seed), common.timestamp);
            env.param("n", a.n)
                .param("r", a.r)
                .param("count", a.count)
                .param("sampler", a.sampler)
                .param("stream", a.stream);
            for &v in &batch.values {
                env.push(vec![v.into()]);
            }
            env.write(Format::Json, &mut sink)?;
        }
    }
    sink.flush()?;

    // the summary goes to stderr so the batch itself stays machine readable
    let mut err = io::stderr().lock();
    let mean = batch.mean();
    let analytic = d.mean();
    if batch.len() >= 2 {
        let se = (batch.sample_variance() / batch.len() as f64).sqrt();
        let z = (mean - analytic) / se;
        writeln!(
            err,
            "mean {mean:.10} analytic {analytic:.10} se {se:.3e} z {z:.3} within_4se {}",
            z.abs() <= 4.0
        )?;
        writeln!(
            err,
            "variance {:.10} analytic {:.10}",
            batch.sample_variance(),
            d.variance()
        )?;
        let ks = ks_one_sample(&batch.values, |x| d.cdf(x));
        writeln!(err, "ks_vs_cdf statistic {:.6} p_value {:.6}", ks.statistic, ks.p_value)?;
    }
    if let Some(other) = a.compare {
        let second: SampleBatchF64 = sample_chords(other, a.n, a.r, a.count, seed.with_stream(a.stream + 1))?;
        let ks = ks_two_sample(&batch.values, &second.values);
        writeln!(
            err,
            "ks_two_sample {} vs {} statistic {:.6} p_value {:.6} compatible_1pct {}",
            a.sampler,
            other,
            ks.statistic,
            ks.p_value,
            ks.passes_one_percent()
        )?;
    }
    Ok(ExitCode::SUCCESS)
}

const ESTIMATE_COLUMNS: [&str; 7] = [
    "replication",
    "r_hat",
    "var_closed_form",
    "crlb",
    "efficiency",
    "empirical_var",
    "basis",
];

fn estimate_row(i: usize, rep: &hyperchord::EstimationReportF64) -> Vec<Cell> {
    let basis = match rep.basis {
        hyperchord::inference::VarianceBasis::TrueRadius => "true_radius",
        hyperchord::inference::VarianceBasis::PlugIn => "plug_in",
    };
    vec![
        i.into(),
        rep.r_hat.into(),
        rep.var_closed_form.into(),
        rep.crlb.into(),
        rep.efficiency.into(),
        rep.empirical_var.into(),
        basis.into(),
    ]
}

fn estimate(a: &EstimateArgs, common: &Common) -> CliResult<Envelope> {
    if let Some(path) = &a.input {
        let file = File::open(path).map_err(|e| CliError::Invalid(format!("cannot open {}: {e}", path.display())))?;
        let batch: SampleBatchF64 = parse_batch_csv(BufReader::new(file))?;
        let rep = estimate_radius(&batch, a.r_true)?;
        let mut env = Envelope::new("estimate", ESTIMATE_COLUMNS.to_vec(), Some(batch.seed.seed), common.timestamp);
        env.param("input", path.display().to_string())
            .param("n", batch.n)
            .param("m", batch.len())
            .param("r_true", a.r_true);
        env.push(estimate_row(0, &rep));
        if let Some(note) = rep.crlb_note {
            env.notes.push(note);
        }
        env.summary("crlb_available", rep.crlb.is_some());
        return Ok(env);
    }

    let n = a.n.expect("clap requires --n without --input");
    let r = a
        .r_true
        .ok_or_else(|| CliError::Invalid("--r-true is required when simulating".into()))?;
    let sim = simulate_estimates(n, r, a.m, a.replications, a.seed, a.sampler)?;
    let mut env = Envelope::new("estimate", ESTIMATE_COLUMNS.to_vec(), Some(a.seed), common.timestamp);
    env.param("n", n)
        .param("r_true", r)
        .param("m", a.m)
        .param("replications", a.replications)
        .param("sampler", a.sampler);
    for (i, rep) in sim.reports.iter().enumerate() {
        env.push(estimate_row(i, rep));
    }
    let bias_z = if sim.bias_se > 0.0 { sim.bias / sim.bias_se } else { 0.0 };
    env.summary("mean_r_hat", sim.mean_r_hat)
        .summary("bias", sim.bias)
        .summary("bias_se", sim.bias_se)
        .summary("bias_within_3se", bias_z.abs() <= 3.0)
        .summary("between_replication_var", sim.between_replication_var)
        .summary("mean_empirical_var", sim.mean_empirical_var)
        .summary("var_closed_form", sim.var_closed_form)
        .summary("empirical_over_closed", sim.mean_empirical_var / sim.var_closed_form)
        .summary("crlb", sim.crlb)
        .summary("efficiency", sim.efficiency)
        .summary("crlb_available", sim.crlb.is_some());
    if let Some(note) = sim.reports.first().and_then(|r| r.crlb_note.clone()) {
        env.notes.push(note);
    }
    Ok(env)
}

fn analyze(a: &AnalyzeArgs, common: &Common) -> CliResult<Envelope> {
    let (lo, hi) = (a.range.lo, a.range.hi);
    if a.epsilon.is_some() && a.which != Analysis::Gap {
        return Err(CliError::Invalid("--epsilon only applies to --which gap".into()));
    }
    match a.which {
        Analysis::Gap => {
            let table = gap_table::<f64>(lo, hi)?;
            let epsilon = match a.epsilon {
                Some(e) if e > 0.0 && e.is_finite() => e,
                Some(e) => return Err(CliError::Invalid(format!("epsilon {e} must be > 0"))),
                None => default_saturation_epsilon(),
            };
            let mut env = Envelope::new("analyze", vec!["n", "c_n", "gap"], None, common.timestamp);
            env.param("which", "gap").param("range", format!("{lo}:{hi}")).param("epsilon", epsilon);
            for row in &table {
                env.push(vec![row.n.into(), row.c_n.into(), row.gap.into()]);
            }
            env.summary("epsilon", epsilon)
                .summary("saturation", detect_saturation(&table, epsilon));
            Ok(env)
        }
        Analysis::Fisher => {
            let (integer, value) = fisher_integer_argmin::<f64>(lo, hi)?;
            let mut env = Envelope::new("analyze", vec!["n", "fisher_r1"], None, common.timestamp);
            env.param("which", "fisher").param("range", format!("{lo}:{hi}"));
            for n in lo.max(5)..=hi {
                env.push(vec![n.into(), fisher_closed(n, 1.0)?.into()]);
            }
            if lo <= 4 {
                env.notes
                    .push(format!("n = {lo}..{} omitted: Fisher information is not finite for n <= 4", lo.max(4).min(hi)));
            }
            env.summary("continuous_argmin", fisher_argmin::<f64>().continuous)
                .summary("integer_argmin", integer)
                .summary("integer_min_fisher_r1", 4.0 * value);
            Ok(env)
        }
        Analysis::Volume => {
            let volume = argmax_over::<f64>(lo, hi, SphereMetric::Volume)?;
            let area = argmax_over::<f64>(lo, hi, SphereMetric::SurfaceArea)?;
            let mut env = Envelope::new("analyze", vec!["n", "volume", "surface_area"], None, common.timestamp);
            env.param("which", "volume").param("range", format!("{lo}:{hi}"));
            for n in lo..=hi {
                let m = SphereMetrics::<f64>::new(n)?;
                env.push(vec![n.into(), m.volume.into(), m.surface_area.into()]);
            }
            env.summary("volume_argmax", volume.argmax)
                .summary("surface_area_argmax", area.argmax);
            env.notes.push(argmax_note(volume.argmax, area.argmax));
            Ok(env)
        }
    }
}

fn charfun(a: &CharfunArgs, common: &Common) -> CliResult<(Envelope, Option<f64>)> {
    let spec = QuadratureSpecF64::new(1e-14, 1e-13, 4000)?;
    let closed_available = a.source == Source::Auto && matches!(a.n, 2 | 3);
    let mut env = Envelope::new("charfun", vec!["t", "re", "im", "abs", "source"], None, common.timestamp);
    env.param("n", a.n)
        .param("r", a.r)
        .param("t", grid_text(&a.t))
        .param("source", if closed_available { "closed" } else { "quadrature" });

    let mut max_dev: Option<(f64, f64)> = None;
    let (mut max_bessel, mut max_struve) = (0.0_f64, 0.0_f64);
    let mut max_abs = 0.0_f64;
    for t in a.t.points() {
        let numeric: Complex64 = phi_numeric(a.n, a.r, t, &spec)?;
        let (value, source) = if closed_available {
            let closed = phi_closed(a.n, a.r, t).expect("n is 2 or 3")?;
            let dev = (closed - numeric).norm();
            if max_dev.is_none_or(|(d, _)| dev > d) {
                max_dev = Some((dev, t));
            }
            if a.n == 3 && t != 0.0 {
                let report = n3_discrepancy(a.r, t, &spec)?;
                max_bessel = max_bessel.max(report.bessel_error.abs());
                max_struve = max_struve.max(report.linear_struve_error.abs());
            }
            (closed, "closed")
        } else {
            (numeric, "quadrature")
        };
        max_abs = max_abs.max(value.norm());
        env.push(vec![t.into(), value.re.into(), value.im.into(), value.norm().into(), source.into()]);
    }
    env.summary("max_abs", max_abs);
    if let Some((dev, t)) = max_dev {
        env.summary("max_deviation", dev).summary("max_deviation_t", t);
        if a.n == 3 {
            env.summary("max_bessel_term_error", max_bessel)
                .summary("max_linear_struve_term_error", max_struve);
        }
    }
    Ok((env, max_dev.map(|(d, _)| d)))
}
