//! The subcommands. Each returns an exit status or a [`CliError`].

use rayon::prelude::*;
use resonance_core::counting::{assemble_counting, channel_cutoff, CountingOptions};
use resonance_core::engine::{
    covering_check, find_channel_zeros, low_channel_zeros, Channel, ChannelRun, ResonanceZero, StepPotential,
    SEEDED_MIN_ORDER,
};
use resonance_core::maps::{self, RegionSpec};
use resonance_core::special::{MAX_ABS_ARGUMENT, MAX_ORDER};
use resonance_core::validation::{run_suite, Suite};
use resonance_core::Error;
use serde::Serialize;

use crate::output::{emit, float};
use crate::{
    ChannelArgs, Common, CountArgs, Format, RegionArgs, ResonanceArgs, ValidateArgs, EXIT_BAD_ARGS,
    EXIT_NO_CONVERGENCE, EXIT_OK, EXIT_VALIDATION,
};

/// A failure with its exit status.
#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    fn bad_args(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_BAD_ARGS,
            message: message.into(),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Convergence(_) => EXIT_NO_CONVERGENCE,
            Error::Domain(_) | Error::InvalidInput(_) => EXIT_BAD_ARGS,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::bad_args(format!("cannot write output: {e}"))
    }
}

type Outcome = Result<u8, CliError>;

fn warn(msg: &str) {
    eprintln!("warning: {msg}");
}

/// Checks shared by the resonance commands and returns the potential and region.
fn validate_common(c: &Common) -> Result<(StepPotential, RegionSpec), CliError> {
    if c.dim < 2 || c.dim % 2 != 0 {
        return Err(CliError::bad_args(format!("--dim must be even and >= 2, got {}", c.dim)));
    }
    if !(c.v0 > 0.0) || !c.v0.is_finite() {
        return Err(CliError::bad_args(format!("--v0 must be positive, got {}", c.v0)));
    }
    if c.sheet == 0 {
        return Err(CliError::bad_args("--sheet must be nonzero"));
    }
    if !(0.02..=0.3).contains(&c.eps) {
        return Err(CliError::bad_args(format!("--eps must lie in [0.02, 0.3], got {}", c.eps)));
    }
    if !(c.rmax > 0.0) || c.rmax > MAX_ABS_ARGUMENT {
        return Err(CliError::bad_args(format!("--rmax must lie in (0, {MAX_ABS_ARGUMENT}], got {}", c.rmax)));
    }
    Ok((StepPotential::new(c.dim, c.v0)?, RegionSpec::new(c.eps)?))
}

fn check_alpha(alpha: f64) -> Result<(), CliError> {
    if alpha > 1.0 && alpha.is_finite() {
        Ok(())
    } else {
        Err(CliError::bad_args(format!("--alpha must exceed 1, got {alpha}")))
    }
}

/// Largest order needed for `r_max` must be inside the evaluator envelope.
fn check_order_envelope(r_max: f64) -> Result<u32, CliError> {
    let top = channel_cutoff(r_max);
    if top > MAX_ORDER {
        let limit = f64::from(MAX_ORDER - 2) * maps::z0();
        return Err(CliError::bad_args(format!(
            "--rmax {r_max} needs orders up to {top}; the supported maximum is {MAX_ORDER} (rmax <= {limit:.1})"
        )));
    }
    Ok(top)
}

fn run_channel(ch: Channel, m: i64, v0: f64, spec: &RegionSpec, r_max: f64) -> resonance_core::Result<ChannelRun> {
    if ch.nu >= SEEDED_MIN_ORDER {
        find_channel_zeros(ch, m, v0, spec, r_max)
    } else {
        low_channel_zeros(ch, m, v0, r_max)
    }
}

fn report_failures(run: &ChannelRun) {
    for (k, msg) in &run.failures {
        match k {
            Some(k) => warn(&format!("nu = {}, seed {k}: {msg}", run.channel.nu)),
            None => warn(&format!("nu = {}: {msg}", run.channel.nu)),
        }
    }
}

#[derive(Serialize)]
struct Row {
    ell: u32,
    nu: u32,
    sheet: i64,
    re_lambda0: f64,
    im_lambda0: f64,
    modulus: f64,
    arg_on_sheet: f64,
    multiplicity: u64,
    residual: f64,
    seed_k: Option<i64>,
}

impl From<&ResonanceZero> for Row {
    fn from(z: &ResonanceZero) -> Self {
        Row {
            ell: z.channel.ell,
            nu: z.channel.nu,
            sheet: z.sheet,
            re_lambda0: z.lambda0.re,
            im_lambda0: z.lambda0.im,
            modulus: z.lambda_on_sheet.modulus,
            arg_on_sheet: z.lambda_on_sheet.argument,
            multiplicity: z.channel.multiplicity,
            residual: z.residual,
            seed_k: z.seed_k,
        }
    }
}

const CSV_HEADER: &str = "ell,nu,sheet,re_lambda0,im_lambda0,modulus,arg_on_sheet,multiplicity,residual,seed_k";

fn render_rows(rows: &[Row], format: Format) -> Result<String, CliError> {
    match format {
        Format::Csv => {
            let mut s = String::from(CSV_HEADER);
            s.push('\n');
            for r in rows {
                let seed = r.seed_k.map(|k| k.to_string()).unwrap_or_default();
                s.push_str(&format!(
                    "{},{},{},{},{},{},{},{},{},{}\n",
                    r.ell,
                    r.nu,
                    r.sheet,
                    float(r.re_lambda0),
                    float(r.im_lambda0),
                    float(r.modulus),
                    float(r.arg_on_sheet),
                    r.multiplicity,
                    float(r.residual),
                    seed
                ));
            }
            Ok(s)
        }
        Format::Json => Ok(json(&rows)?),
    }
}

fn json<T: Serialize + ?Sized>(value: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| CliError::bad_args(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

/// Rows ordered by channel, then seed index, contour-derived zeros last.
fn ordered_rows(runs: &[ChannelRun]) -> Vec<Row> {
    let mut rows: Vec<(u32, Option<i64>, usize, Row)> = Vec::new();
    for run in runs {
        for (i, z) in run.zeros.iter().enumerate() {
            rows.push((run.channel.nu, z.seed_k, i, Row::from(z)));
        }
    }
    rows.sort_by_key(|(nu, k, i, _)| (*nu, k.is_none(), *k, *i));
    rows.into_iter().map(|(_, _, _, r)| r).collect()
}

pub fn resonances(a: &ResonanceArgs) -> Outcome {
    let (pot, spec) = validate_common(&a.common)?;
    check_alpha(a.alpha)?;
    let top = check_order_envelope(a.common.rmax)?;
    let offset = (pot.d - 2) / 2;
    let channels: Vec<Channel> = (0..=top.saturating_sub(offset))
        .map(|ell| Channel::new(ell, pot.d))
        .collect::<resonance_core::Result<_>>()?;
    let runs: Vec<ChannelRun> = channels
        .par_iter()
        .map(|&ch| run_channel(ch, a.common.sheet, pot.v0, &spec, a.common.rmax))
        .collect::<resonance_core::Result<_>>()?;
    runs.iter().for_each(report_failures);
    let rows = ordered_rows(&runs);
    emit(a.common.out.as_deref(), &render_rows(&rows, a.format)?)?;
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct CountOutput {
    dim: u32,
    v0: f64,
    sheet: i64,
    grid: Vec<(f64, u64)>,
    fitted_order: Option<f64>,
    seed_total: u64,
    contour_total: Option<u64>,
    warnings: Vec<String>,
}

pub fn count(a: &CountArgs) -> Outcome {
    let (pot, spec) = validate_common(&a.common)?;
    check_order_envelope(a.common.rmax)?;
    let options = CountingOptions {
        r_min: a.rmin,
        ..CountingOptions::default()
    };
    let report = assemble_counting(pot, a.common.sheet, a.common.rmax, a.grid_points, &spec, options)?;
    report.warnings.iter().for_each(|w| warn(w));
    let out = CountOutput {
        dim: pot.d,
        v0: pot.v0,
        sheet: report.sheet,
        grid: report.samples.clone(),
        fitted_order: report.fitted_order,
        seed_total: report.seed_total,
        contour_total: report.contour_total,
        warnings: report.warnings.clone(),
    };
    emit(a.common.out.as_deref(), &json(&out)?)?;
    Ok(EXIT_OK)
}

pub fn channel(a: &ChannelArgs) -> Outcome {
    let (pot, spec) = validate_common(&a.common)?;
    check_alpha(a.alpha)?;
    let ch = Channel::new(a.ell, pot.d)?;
    if ch.nu > MAX_ORDER {
        return Err(CliError::bad_args(format!("order {} exceeds the supported maximum {MAX_ORDER}", ch.nu)));
    }
    let run = run_channel(ch, a.common.sheet, pot.v0, &spec, a.common.rmax)?;
    report_failures(&run);
    emit(a.common.out.as_deref(), &render_rows(&ordered_rows(std::slice::from_ref(&run)), a.format)?)?;
    if !a.contour_check {
        return Ok(EXIT_OK);
    }
    if run.contour_derived {
        eprintln!("contour check: zeros of order {} come from the contour search itself", ch.nu);
        return Ok(EXIT_OK);
    }
    let (count, inside) = covering_check(&run, pot.v0, &spec, a.alpha)?;
    eprintln!("contour check: argument-principle count {count}, Newton zeros in the covering box {inside}");
    if count >= 0 && count as usize == inside {
        Ok(EXIT_OK)
    } else {
        Ok(EXIT_VALIDATION)
    }
}

pub fn validate(a: &ValidateArgs) -> Outcome {
    let suite: Suite = a.suite.parse()?;
    let v0 = a.v0.unwrap_or(if suite == Suite::Freecase { 0.0 } else { 10.0 });
    let report = run_suite(suite, v0)?;
    for c in report.checks.iter().filter(|c| !c.passed) {
        eprintln!("failed: {} = {:e}", c.name, c.value);
    }
    emit(a.out.as_deref(), &json(&report)?)?;
    Ok(if report.passed { EXIT_OK } else { EXIT_VALIDATION })
}

pub fn region(a: &RegionArgs) -> Outcome {
    if a.samples < 2 {
        return Err(CliError::bad_args(format!("--samples must be at least 2, got {}", a.samples)));
    }
    let mut s = String::from("t,re_z,im_z\n");
    let last = (a.samples - 1) as f64;
    for i in 0..a.samples {
        let t = 2.0 * i as f64 / last;
        let z = maps::boundary_by_parameter(t)?;
        s.push_str(&format!("{},{},{}\n", float(t), float(z.re), float(z.im)));
    }
    emit(a.out.as_deref(), &s)?;
    Ok(EXIT_OK)
}
