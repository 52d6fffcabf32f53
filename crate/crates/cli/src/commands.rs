//! The four subcommands.

use std::f64::consts::TAU;
use std::io::Write;

use rmgen_core::spectra::{
    histogram, spacing_sup_norm, surmise_cdf, uniform_phase_cdf, ChiSquareResult, HistogramAccumulator,
};
use rmgen_core::{
    check, chi_square_uniform, dedup_kramers, eigenphases, embed_matrix, ks_test, spacings, ComplexMatrix,
    EnsembleKind, Error, GofReport, HistogramData, Property, RingMatrix, SurmiseBeta,
};
use serde::Serialize;

use crate::config::{Format, RunConfig};
use crate::error::{CliError, EXIT_OK, EXIT_VERIFY_FAILED};
use crate::output::{coefficient_columns, num, write_matrix_csv, MatrixJson, Sinks};

/// Samples per parallel batch; bounds memory for long `sample` runs.
const CHUNK: u64 = 256;

/// Tolerance `verify` applies to every residual.
pub const VERIFY_TOLERANCE: f64 = 1e-10;

/// Tolerance for pairing the doubly degenerate CSE eigenphases.
pub const KRAMERS_TOLERANCE: f64 = 1e-8;

fn chunks(count: u64) -> impl Iterator<Item = std::ops::Range<u64>> {
    (0..count).step_by(CHUNK as usize).map(move |s| s..(s + CHUNK).min(count))
}

#[derive(Serialize)]
struct SampleRecord<'a> {
    ensemble: EnsembleKind,
    n: usize,
    seed: u64,
    index: u64,
    matrix: MatrixJson,
    config: &'a RunConfig,
}

pub fn cmd_sample(config: &RunConfig, sinks: &mut Sinks) -> Result<i32, CliError> {
    let spec = config.spec()?;
    let mut out = sinks.primary(&config.out_path)?;
    let mut header_written = false;
    for range in chunks(config.count) {
        let batch = spec.sample_batch::<f64>(range.clone())?;
        for (index, m) in range.zip(&batch) {
            match config.format {
                Format::Json => {
                    let rec = SampleRecord {
                        ensemble: config.ensemble,
                        n: config.n,
                        seed: config.seed,
                        index,
                        matrix: m.into(),
                        config,
                    };
                    serde_json::to_writer(&mut out, &rec)?;
                    writeln!(out)?;
                }
                Format::Csv => {
                    if !header_written {
                        writeln!(out, "# {}", serde_json::to_string(config)?)?;
                        writeln!(out, "index,row,col,{}", coefficient_columns(m))?;
                        header_written = true;
                    }
                    write_matrix_csv(&mut out, index, m)?;
                }
            }
        }
    }
    out.flush()?;
    Ok(EXIT_OK)
}

fn unitary_view(m: RingMatrix<f64>) -> ComplexMatrix {
    match m {
        RingMatrix::Quaternion(q) => embed_matrix(&q).matrix,
        other => other.to_complex(),
    }
}

fn require_unitary(config: &RunConfig) -> Result<(), CliError> {
    if config.ensemble.is_unitary() {
        Ok(())
    } else {
        Err(CliError::Usage(format!(
            "{} is not a unitary ensemble; eigenphase statistics need one",
            config.ensemble
        )))
    }
}

/// Undersampled histograms yield no χ² test rather than an error.
fn chi_square_or_none(h: &HistogramData) -> Result<Option<ChiSquareResult>, CliError> {
    match chi_square_uniform(h) {
        Ok(c) => Ok(Some(c)),
        Err(Error::UndersampledBins { .. }) => Ok(None),
        Err(e) => Err(e.into()),
    }
}

#[derive(Serialize)]
struct DensityReport<'a> {
    config: &'a RunConfig,
    gof: GofReport,
    reference_density: f64,
    max_relative_deviation: f64,
    sample_size: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    histogram: Option<&'a HistogramData>,
}

pub fn cmd_experiment_density(config: &RunConfig, sinks: &mut Sinks) -> Result<i32, CliError> {
    require_unitary(config)?;
    let spec = config.spec()?;
    let bins = config.bins.expect("resolved for experiments");
    let mut acc = HistogramAccumulator::new(0.0, TAU, bins)?;
    let mut phases = Vec::new();
    for range in chunks(config.count) {
        let sets = spec.map_batch::<f64, _, _>(range, |_, m| eigenphases(&unitary_view(m)))?;
        for e in sets {
            acc.extend(e.phases.iter().copied());
            phases.extend(e.phases);
        }
    }
    let h = acc.finish()?;
    let gof = GofReport::new(ks_test(&phases, uniform_phase_cdf)?, chi_square_or_none(&h)?);
    let reference = 1.0 / TAU;
    let max_rel = h.density.iter().map(|d| (d / reference - 1.0).abs()).fold(0.0, f64::max);
    let mut report = DensityReport {
        config,
        gof,
        reference_density: reference,
        max_relative_deviation: max_rel,
        sample_size: h.total(),
        histogram: None,
    };
    match config.format {
        Format::Csv => {
            let mut out = sinks.primary(&config.out_path)?;
            writeln!(out, "bin_left,bin_right,count,density")?;
            for i in 0..h.bins() {
                let (l, r) = (h.bin_edges[i], h.bin_edges[i + 1]);
                writeln!(out, "{},{},{},{}", num(l), num(r), h.counts[i], num(h.density[i]))?;
            }
            out.flush()?;
            drop(out);
            let mut side = sinks.sidecar(&config.out_path)?;
            serde_json::to_writer_pretty(&mut side, &report)?;
            writeln!(side)?;
            side.flush()?;
        }
        Format::Json => {
            report.histogram = Some(&h);
            let mut out = sinks.primary(&config.out_path)?;
            serde_json::to_writer_pretty(&mut out, &report)?;
            writeln!(out)?;
            out.flush()?;
        }
    }
    Ok(EXIT_OK)
}

/// Symmetry index of the reference spacing law for each circular ensemble.
pub fn ensemble_beta(kind: EnsembleKind) -> Option<SurmiseBeta> {
    match kind {
        EnsembleKind::Cue | EnsembleKind::CueWrong => Some(SurmiseBeta::Two),
        EnsembleKind::Coe => Some(SurmiseBeta::One),
        EnsembleKind::Cse => Some(SurmiseBeta::Four),
        _ => None,
    }
}

#[derive(Serialize)]
struct SpacingReport<'a> {
    config: &'a RunConfig,
    gof: GofReport,
    beta: SurmiseBeta,
    sup_norm: f64,
    sample_size: u64,
    overflow: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    histogram: Option<&'a HistogramData>,
}

pub fn cmd_experiment_spacing(config: &RunConfig, sinks: &mut Sinks) -> Result<i32, CliError> {
    let beta = ensemble_beta(config.ensemble).ok_or_else(|| {
        CliError::Usage(format!(
            "spacing reference exists only for cue, cue_wrong, coe and cse, not {}",
            config.ensemble
        ))
    })?;
    let spec = config.spec()?;
    let bins = config.bins.expect("resolved for experiments");
    let kramers = config.ensemble == EnsembleKind::Cse;
    if config.n < 2 && !kramers {
        return Err(CliError::Usage("spacings need --dim of at least 2".into()));
    }
    let mut s = Vec::new();
    for range in chunks(config.count) {
        let batch = spec.map_batch::<f64, _, _>(range, |_, m| {
            let mut e = eigenphases(&unitary_view(m))?;
            if kramers {
                e = dedup_kramers(&e, KRAMERS_TOLERANCE)?;
            }
            Ok(spacings(&e)?.s)
        });
        // a single Kramers pair has no neighbours to space against
        let batch = match batch {
            Err(Error::TooFewValues { .. }) => {
                return Err(CliError::Usage("spacings need at least two distinct eigenphases".into()))
            }
            other => other?,
        };
        for v in batch {
            s.extend(v);
        }
    }
    let h = histogram(&s, 0.0, 4.0, bins)?;
    let gof = GofReport::new(ks_test(&s, |x| surmise_cdf(x, beta))?, None);
    let mut report = SpacingReport {
        config,
        gof,
        beta,
        sup_norm: spacing_sup_norm(&h, beta),
        sample_size: h.total(),
        overflow: h.overflow,
        histogram: None,
    };
    match config.format {
        Format::Csv => {
            let mut out = sinks.primary(&config.out_path)?;
            writeln!(out, "bin_left,bin_right,count,density,surmise")?;
            for i in 0..h.bins() {
                let (l, r) = (h.bin_edges[i], h.bin_edges[i + 1]);
                let reference = (surmise_cdf(r, beta) - surmise_cdf(l, beta)) / (r - l);
                writeln!(
                    out,
                    "{},{},{},{},{}",
                    num(l),
                    num(r),
                    h.counts[i],
                    num(h.density[i]),
                    num(reference)
                )?;
            }
            out.flush()?;
            drop(out);
            let mut side = sinks.sidecar(&config.out_path)?;
            serde_json::to_writer_pretty(&mut side, &report)?;
            writeln!(side)?;
            side.flush()?;
        }
        Format::Json => {
            report.histogram = Some(&h);
            let mut out = sinks.primary(&config.out_path)?;
            serde_json::to_writer_pretty(&mut out, &report)?;
            writeln!(out)?;
            out.flush()?;
        }
    }
    Ok(EXIT_OK)
}

/// Membership properties advertised by each ensemble, checked on the
/// complex form of the sample (quaternion samples via their embedding).
pub fn membership_properties(kind: EnsembleKind) -> &'static [Property] {
    match kind {
        EnsembleKind::Cue | EnsembleKind::CueWrong => &[Property::Unitarity, Property::DeterminantModulus],
        EnsembleKind::Coe => &[Property::Unitarity, Property::Symmetry],
        EnsembleKind::Cse => &[Property::Unitarity, Property::SelfDuality],
        EnsembleKind::Orthogonal => &[Property::Orthogonality, Property::DeterminantModulus],
        EnsembleKind::Usp => &[Property::Unitarity, Property::SymplecticJ],
        EnsembleKind::SpQuaternion => &[Property::Unitarity, Property::SymplecticOmega],
        EnsembleKind::GinibreReal | EnsembleKind::GinibreComplex | EnsembleKind::GinibreQuaternion => &[],
    }
}

fn residuals(m: RingMatrix<f64>, props: &[Property]) -> rmgen_core::Result<Vec<f64>> {
    let residual = |p| -> rmgen_core::Result<f64> {
        Ok(match &m {
            // orthogonality also asks for real entries, so check the real form
            RingMatrix::Real(r) => check(r, p, VERIFY_TOLERANCE)?.residual,
            RingMatrix::Complex(c) => check(c, p, VERIFY_TOLERANCE)?.residual,
            RingMatrix::Quaternion(q) => check(&embed_matrix(q).matrix, p, VERIFY_TOLERANCE)?.residual,
        })
    };
    props.iter().map(|&p| residual(p)).collect()
}

#[derive(Serialize)]
struct PropertySummary {
    property: &'static str,
    max_residual: f64,
    tolerance: f64,
    pass: bool,
}

#[derive(Serialize)]
struct VerifyReport<'a> {
    config: &'a RunConfig,
    results: Vec<PropertySummary>,
    pass: bool,
}

pub fn cmd_verify(config: &RunConfig, sinks: &mut Sinks) -> Result<i32, CliError> {
    let props = membership_properties(config.ensemble);
    if props.is_empty() {
        return Err(CliError::Usage(format!(
            "{} has no group-membership property to verify",
            config.ensemble
        )));
    }
    let spec = config.spec()?;
    let mut worst = vec![0.0f64; props.len()];
    for range in chunks(config.count) {
        let batch = spec.map_batch::<f64, _, _>(range, |_, m| residuals(m, props))?;
        for rs in batch {
            for (w, r) in worst.iter_mut().zip(rs) {
                // a NaN residual sticks and fails the run
                if r.is_nan() || r > *w {
                    *w = r;
                }
            }
        }
    }
    let results: Vec<PropertySummary> = props
        .iter()
        .zip(&worst)
        .map(|(p, &r)| PropertySummary {
            property: p.as_str(),
            max_residual: r,
            tolerance: VERIFY_TOLERANCE,
            pass: r <= VERIFY_TOLERANCE,
        })
        .collect();
    let pass = results.iter().all(|r| r.pass);
    let mut out = sinks.primary(&config.out_path)?;
    match config.format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut out, &VerifyReport { config, results, pass })?;
            writeln!(out)?;
        }
        Format::Csv => {
            writeln!(out, "# {}", serde_json::to_string(config)?)?;
            writeln!(out, "property,max_residual,tolerance,pass")?;
            for r in &results {
                writeln!(out, "{},{},{},{}", r.property, num(r.max_residual), num(r.tolerance), r.pass)?;
            }
        }
    }
    out.flush()?;
    Ok(if pass { EXIT_OK } else { EXIT_VERIFY_FAILED })
}
