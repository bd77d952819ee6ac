//! Command-line front end.
//!
//! Exit codes: 0 when the check passes or a certificate is issued, 2 when the
//! mathematical verdict is negative (refuted, refused, inconclusive), 1 for
//! usage and input errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::certify::{brunn_minkowski_gap, certify_nonspectral, CertifyError, NonSpectralityCertificate};
use crate::config::AnalysisConfig;
use crate::fourier::{autocorrelation, autocorrelation_grid, dft_oracle, FrequencyPoint, IndicatorTransform};
use crate::geometry::{symmetry_report, Point, Polytope, SymmetryReport};
use crate::io::{
    parse_box, parse_f64_list, parse_lattice, parse_polytope, parse_probes, parse_rational_list, parse_spectrum,
    read_file, to_json_string, SpectrumInput,
};
use crate::lattice::{AxisBox, Lattice};
use crate::number::{exact_root, parse_rational, to_f64, Rational};
use crate::spectral::{verify_lattice_spectrum, verify_spectrum_window, SpectrumReport, SpectrumTolerances, Verdict};
use crate::tiling::{
    support_condition_necessary, tiling_level_exact, verify_tiling, NecessaryReport, Tile, TilingReport,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_NEGATIVE: i32 = 2;

/// Environment variable capping the worker thread count.
pub const THREADS_ENV: &str = "SPECTILE_THREADS";

#[derive(Debug, Parser)]
#[command(
    name = "spectile",
    version,
    about = "Polytope Fourier transforms, tiling checks and non-spectrality certificates"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Common {
    /// Relative tolerance for declaring a transform value zero.
    #[arg(long, default_value_t = crate::fourier::DEFAULT_ZERO_TOLERANCE)]
    tol_zero: f64,
    /// Tolerance on the completeness deviation.
    #[arg(long, default_value_t = crate::spectral::DEFAULT_COMPLETENESS_TOLERANCE)]
    tol_completeness: f64,
    /// Maximum number of lattice points enumerated in one window.
    #[arg(long, default_value_t = crate::lattice::DEFAULT_POINT_CAP)]
    point_cap: usize,
    /// Write the JSON report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate the closed-form transform of a body indicator at one frequency.
    FtEval {
        #[arg(long)]
        body: PathBuf,
        /// Frequency, comma separated.
        #[arg(long, allow_hyphen_values = true)]
        xi: String,
        /// Also run the grid oracle with this spacing.
        #[arg(long)]
        oracle_h: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Autocorrelation `x ↦ vol(H ∩ (H + x))` of a body.
    Autocorr {
        #[arg(long)]
        body: PathBuf,
        /// Grid spacing for the sampled autocorrelation.
        #[arg(long, default_value = "1/64")]
        h: String,
        /// Write the sampled grid as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Exact value at this shift, comma separated.
        #[arg(long, allow_hyphen_values = true)]
        at: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Check that a body tiles by translations from a lattice.
    VerifyTiling {
        #[arg(long)]
        body: PathBuf,
        #[arg(long)]
        lattice: PathBuf,
        /// Core box: "lo,hi" for every axis or one pair per axis.
        #[arg(long, default_value = "-1,1", allow_hyphen_values = true)]
        core: String,
        #[arg(long, default_value = "1/64")]
        h: String,
        /// Dual-lattice scan radius (default: 8 × longest dual generator).
        #[arg(long)]
        radius: Option<f64>,
        #[command(flatten)]
        common: Common,
    },
    /// Check a candidate spectrum on a finite window.
    VerifySpectrum {
        #[arg(long)]
        body: PathBuf,
        /// Lattice JSON or point-set JSON.
        #[arg(long)]
        spectrum: PathBuf,
        /// Half-width of the lattice window.
        #[arg(long, default_value = "20")]
        window: String,
        /// Probe grid "lo,hi,count" per axis.
        #[arg(long, default_value = "-0.5,0.5,64", allow_hyphen_values = true)]
        probes: String,
        #[command(flatten)]
        common: Common,
    },
    /// Issue a non-spectrality certificate for a non-symmetric body.
    Certify {
        #[arg(long)]
        body: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Symmetry, Brunn–Minkowski gap, then a certificate or a lattice sweep.
    Analyze {
        #[arg(long)]
        body: PathBuf,
        #[arg(long, default_value = "20")]
        window: String,
        #[arg(long, default_value = "-0.5,0.5,64", allow_hyphen_values = true)]
        probes: String,
        #[command(flatten)]
        common: Common,
    },
}

/// Every report has this envelope.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Document<T> {
    pub command: String,
    pub status: String,
    pub config: AnalysisConfig,
    pub result: T,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FtEvalResult {
    pub xi: Vec<f64>,
    pub re: f64,
    pub im: f64,
    pub abs: f64,
    #[serde(with = "crate::io::rational")]
    pub volume: Rational,
    pub oracle: Option<OracleResult>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleResult {
    #[serde(with = "crate::io::rational")]
    pub h: Rational,
    pub re: f64,
    pub im: f64,
    pub abs_error: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AutocorrResult {
    /// `f(0) = vol H`.
    #[serde(with = "crate::io::rational")]
    pub value_at_zero: Rational,
    /// `f̂(0) = (vol H)²`.
    #[serde(with = "crate::io::rational")]
    pub transform_at_zero: Rational,
    pub at: Option<Point>,
    #[serde(with = "crate::io::rational_opt")]
    pub value_at: Option<Rational>,
    #[serde(with = "crate::io::rational")]
    pub spacing: Rational,
    pub samples: usize,
    pub grid_integral: f64,
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TilingResult {
    pub body: Polytope,
    pub lattice: Lattice,
    /// `∫1_P · dens Λ`.
    #[serde(with = "crate::io::rational")]
    pub expected_level: Rational,
    pub tiling: TilingReport,
    pub necessary: NecessaryReport,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumResult {
    pub body: Polytope,
    pub spectrum: Option<Lattice>,
    pub report: SpectrumReport,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Refusal {
    pub reason: String,
    pub center: Option<Point>,
    pub suggestion: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertifyResult {
    pub certificate: Option<NonSpectralityCertificate>,
    pub refusal: Option<Refusal>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepEntry {
    pub lattice: Lattice,
    pub verdict: Verdict,
    pub completeness_deviation: f64,
    pub tail_bound: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalyzeResult {
    pub body: Polytope,
    pub symmetry: SymmetryReport,
    #[serde(with = "crate::io::rational")]
    pub vol: Rational,
    #[serde(with = "crate::io::rational")]
    pub vol_h: Rational,
    #[serde(with = "crate::io::rational")]
    pub bm_gap: Rational,
    pub certificate: Option<NonSpectralityCertificate>,
    pub lattice_sweep: Vec<SweepEntry>,
}

#[derive(Debug)]
struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

/// Runs one command line and returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(stderr, "{text}")
            } else {
                write!(stdout, "{text}")
            };
            return code;
        }
    };
    if let Err(msg) = configure_threads() {
        let _ = writeln!(stderr, "error: {msg}");
        return EXIT_ERROR;
    }
    match dispatch(cli.command, stdout) {
        Ok(code) => code,
        Err(Failure(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_ERROR
        }
    }
}

fn configure_threads() -> Result<(), String> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| format!("{THREADS_ENV} must be a positive integer, got {raw:?}"))?;
    // A pool may already exist when called twice in one process; keep it.
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

fn config_from(common: &Common) -> Result<AnalysisConfig, Failure> {
    let config = AnalysisConfig {
        tolerance_zero: common.tol_zero,
        tolerance_completeness: common.tol_completeness,
        point_cap: common.point_cap,
        output_path: common.out.clone(),
        ..AnalysisConfig::default()
    };
    config.validate()?;
    Ok(config)
}

fn load_body(path: &Path) -> Result<Polytope, Failure> {
    Ok(parse_polytope(&read_file(path)?)?)
}

fn emit<T: Serialize>(
    stdout: &mut dyn Write,
    command: &str,
    status: &str,
    config: &AnalysisConfig,
    result: T,
) -> Result<(), Failure> {
    let doc = Document {
        command: command.to_string(),
        status: status.to_string(),
        config: config.clone(),
        result,
    };
    let text = to_json_string(&doc);
    match &config.output_path {
        Some(path) => std::fs::write(path, text).map_err(|e| Failure(format!("{}: {e}", path.display())))?,
        None => stdout.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn dispatch(command: Command, stdout: &mut dyn Write) -> Result<i32, Failure> {
    match command {
        Command::FtEval {
            body,
            xi,
            oracle_h,
            common,
        } => {
            let config = config_from(&common)?;
            let p = load_body(&body)?;
            let xi = parse_f64_list(&xi)?;
            if xi.len() != p.dim() {
                return Err(Failure(format!(
                    "frequency has {} coordinates, body has dimension {}",
                    xi.len(),
                    p.dim()
                )));
            }
            let v = IndicatorTransform::new(&p).eval(&xi);
            let oracle = match oracle_h {
                Some(h) => {
                    let h = positive_rational(&h, "oracle-h")?;
                    let o = dft_oracle(&p, &FrequencyPoint::new(xi.clone()), to_f64(&h))?;
                    Some(OracleResult {
                        h,
                        re: o.re,
                        im: o.im,
                        abs_error: (o - v).norm(),
                    })
                }
                None => None,
            };
            let result = FtEvalResult {
                xi,
                re: v.re,
                im: v.im,
                abs: v.norm(),
                volume: p.volume(),
                oracle,
            };
            emit(stdout, "ft-eval", "ok", &config, result)?;
            Ok(EXIT_OK)
        }
        Command::Autocorr {
            body,
            h,
            csv,
            at,
            common,
        } => {
            let mut config = config_from(&common)?;
            let p = load_body(&body)?;
            let h = positive_rational(&h, "h")?;
            config.grid_spacing = h.clone();
            let at = match at {
                Some(text) => {
                    let coords = parse_rational_list(&text)?;
                    if coords.len() != p.dim() {
                        return Err(Failure(format!(
                            "shift has {} coordinates, body has dimension {}",
                            coords.len(),
                            p.dim()
                        )));
                    }
                    Some(Point(coords))
                }
                None => None,
            };
            let vol = p.volume();
            let grid = autocorrelation_grid(&p, &h)?;
            if let Some(path) = &csv {
                let file = std::fs::File::create(path).map_err(|e| Failure(format!("{}: {e}", path.display())))?;
                grid.write_csv(std::io::BufWriter::new(file))?;
            }
            let result = AutocorrResult {
                value_at_zero: autocorrelation(&p, &Point::origin(p.dim())),
                transform_at_zero: &vol * &vol,
                value_at: at.as_ref().map(|x| autocorrelation(&p, x)),
                at,
                spacing: h,
                samples: grid.values().len(),
                grid_integral: grid.integral(),
                csv,
            };
            emit(stdout, "autocorr", "ok", &config, result)?;
            Ok(EXIT_OK)
        }
        Command::VerifyTiling {
            body,
            lattice,
            core,
            h,
            radius,
            common,
        } => {
            let mut config = config_from(&common)?;
            let p = load_body(&body)?;
            let l = parse_lattice(&read_file(&lattice)?)?;
            if l.dim() != p.dim() {
                return Err(Failure(format!(
                    "lattice dimension {} differs from body dimension {}",
                    l.dim(),
                    p.dim()
                )));
            }
            let core = parse_box(&core, p.dim())?;
            let h = positive_rational(&h, "h")?;
            config.grid_spacing = h.clone();
            config.check_radius = radius;
            config.validate()?;
            let (lo, hi) = p.bounding_box();
            let window = core.minus(&AxisBox { lo, hi });
            let translates = l.enumerate_window_capped(&window, config.point_cap)?;
            let tiling = verify_tiling(Tile::Indicator(&p), &translates, &core, &h)?;
            let necessary = support_condition_necessary(&p, &l, config.tolerance_zero, radius)?;
            let expected_level = tiling_level_exact(&p.volume(), &l);
            let level_ok = (tiling.level_estimate - to_f64(&expected_level)).abs() <= config.tolerance_zero;
            let tiles = tiling.max_deviation <= config.tolerance_zero && level_ok;
            let status = match (tiles, necessary.holds) {
                (true, true) => "tiling",
                (false, _) => "not-a-tiling",
                (true, false) => "inconsistent",
            };
            let result = TilingResult {
                body: p,
                lattice: l,
                expected_level,
                tiling,
                necessary,
            };
            emit(stdout, "verify-tiling", status, &config, result)?;
            Ok(if status == "tiling" { EXIT_OK } else { EXIT_NEGATIVE })
        }
        Command::VerifySpectrum {
            body,
            spectrum,
            window,
            probes,
            common,
        } => {
            let mut config = config_from(&common)?;
            let p = load_body(&body)?;
            let input = parse_spectrum(&read_file(&spectrum)?)?;
            config.window_radius = positive_rational(&window, "window")?;
            let probes = parse_probes(&probes, p.dim())?;
            let spectrum_dim = match &input {
                SpectrumInput::Lattice(l) => l.dim(),
                SpectrumInput::Points(s) => s.dim,
            };
            if spectrum_dim != p.dim() {
                return Err(Failure(format!(
                    "spectrum dimension {spectrum_dim} differs from body dimension {}",
                    p.dim()
                )));
            }
            let tolerances = SpectrumTolerances {
                zero: config.tolerance_zero,
                completeness: config.tolerance_completeness,
            };
            let (lattice, report) = match input {
                SpectrumInput::Lattice(l) => {
                    let r =
                        verify_lattice_spectrum(&p, &l, &config.window_radius, config.point_cap, &probes, tolerances)?;
                    (Some(l), r)
                }
                SpectrumInput::Points(s) => (None, verify_spectrum_window(&p, &s, &probes, tolerances)?),
            };
            let verdict = report.verdict;
            let result = SpectrumResult {
                body: p,
                spectrum: lattice,
                report,
            };
            emit(stdout, "verify-spectrum", verdict.as_str(), &config, result)?;
            Ok(if verdict == Verdict::VerifiedOnWindow {
                EXIT_OK
            } else {
                EXIT_NEGATIVE
            })
        }
        Command::Certify { body, common } => {
            let config = config_from(&common)?;
            let p = load_body(&body)?;
            let (status, result, code) = match certify_nonspectral(&p) {
                Ok(c) => (
                    "certificate-issued",
                    CertifyResult {
                        certificate: Some(c),
                        refusal: None,
                    },
                    EXIT_OK,
                ),
                Err(CertifyError::SymmetricBody { center }) => (
                    "refused",
                    CertifyResult {
                        certificate: None,
                        refusal: Some(Refusal {
                            reason: "SymmetricBody".into(),
                            center: Some(center),
                            suggestion: "the body is centrally symmetric; run `analyze` for a lattice spectrum sweep"
                                .into(),
                        }),
                    },
                    EXIT_NEGATIVE,
                ),
                Err(e) => return Err(e.into()),
            };
            emit(stdout, "certify", status, &config, result)?;
            Ok(code)
        }
        Command::Analyze {
            body,
            window,
            probes,
            common,
        } => {
            let mut config = config_from(&common)?;
            let p = load_body(&body)?;
            config.window_radius = positive_rational(&window, "window")?;
            let probes = parse_probes(&probes, p.dim())?;
            let symmetry = symmetry_report(&p);
            let (vol_h, bm_gap) = brunn_minkowski_gap(&p);
            let mut certificate = None;
            let mut sweep = Vec::new();
            if symmetry.is_symmetric {
                let tolerances = SpectrumTolerances {
                    zero: config.tolerance_zero,
                    completeness: config.tolerance_completeness,
                };
                for l in candidate_lattices(&p) {
                    let r =
                        verify_lattice_spectrum(&p, &l, &config.window_radius, config.point_cap, &probes, tolerances)?;
                    sweep.push(SweepEntry {
                        lattice: l,
                        verdict: r.verdict,
                        completeness_deviation: r.completeness_deviation,
                        tail_bound: r.tail_bound,
                    });
                }
            } else {
                certificate = Some(certify_nonspectral(&p)?);
            }
            let positive = certificate.is_some() || sweep.iter().any(|e| e.verdict == Verdict::VerifiedOnWindow);
            let status = match (&certificate, positive) {
                (Some(_), _) => "certificate-issued",
                (None, true) => "spectrum-verified-on-window",
                (None, false) => "no-lattice-spectrum-found",
            };
            let result = AnalyzeResult {
                vol: p.volume(),
                body: p,
                symmetry,
                vol_h,
                bm_gap,
                certificate,
                lattice_sweep: sweep,
            };
            emit(stdout, "analyze", status, &config, result)?;
            Ok(if positive { EXIT_OK } else { EXIT_NEGATIVE })
        }
    }
}

fn positive_rational(text: &str, what: &str) -> Result<Rational, Failure> {
    let q = parse_rational(text.trim()).map_err(|e| Failure(format!("--{what}: {e}")))?;
    if q <= Rational::from_integer(0.into()) {
        return Err(Failure(format!("--{what} must be positive, got {q}")));
    }
    Ok(q)
}

/// Lattices of density `vol P` to try as spectra of a symmetric body: the
/// scaled integer lattice when the scale is rational, and the axis
/// stretchings `diag(1, …, 1/vol, …, 1)`.
pub fn candidate_lattices(p: &Polytope) -> Vec<Lattice> {
    let d = p.dim();
    let vol = p.volume();
    let mut out: Vec<Lattice> = Vec::new();
    if let Some(s) = exact_root(&vol.recip(), d as u32) {
        if let Ok(l) = Lattice::diagonal(&vec![s; d]) {
            out.push(l);
        }
    }
    if !vol.is_one() {
        for a in 0..d {
            let mut diag = vec![Rational::one(); d];
            diag[a] = vol.recip();
            if let Ok(l) = Lattice::diagonal(&diag) {
                if !out.contains(&l) {
                    out.push(l);
                }
            }
        }
    }
    out
}
