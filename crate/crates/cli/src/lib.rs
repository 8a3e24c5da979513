//! Front end for the sedgeo engine: every verification as a subcommand.

pub mod checks;
pub mod report;
pub mod reproduce;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use sedgeo_core::cayley_dickson::{
    annihilator_basis, format_element, format_table, parse_element, standard_zero_divisors,
    ZeroDivisorPair,
};
use sedgeo_core::g2::{joint_isotropy, G2Vector};
use sedgeo_core::homogeneous::{
    einstein_locus, gr_metric, metric_from_origin, natural_reductive_scalings, plane_sweep,
    ricci_reductive, sectional_curvature, sectional_curvature_plane, sectional_polynomial, Carrier,
    Origin,
};
use sedgeo_core::scalar::{format_rational, parse_rational, Rational};
use sedgeo_core::sos::{
    build_certificate, golden_sectional_polynomial, sos_decomposition, CertLabel,
};
use sedgeo_core::Error;

pub use report::{Format, RunReport, Status};

#[derive(Parser, Debug)]
#[command(
    name = "sedgeo",
    version,
    about = "Exact sedenion zero-divisor geometry"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Sedenion zero divisors.
    #[command(subcommand)]
    Zd(ZdCmd),
    /// Invariant metrics and curvature.
    #[command(subcommand)]
    Curvature(CurvatureCmd),
    /// Sum-of-squares certificates.
    #[command(subcommand)]
    Sos(SosCmd),
    /// Run every acceptance criterion.
    Reproduce,
}

#[derive(Subcommand, Debug)]
pub enum ZdCmd {
    /// List the 84 standard zero divisors.
    Enumerate,
    /// Compare the enumeration with the golden table.
    VerifyTable,
    /// Exact kernel of left multiplication.
    Annihilator {
        element: String,
        #[arg(long, default_value_t = 4)]
        level: u32,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
pub enum Space {
    #[value(name = "Z")]
    Z,
    #[value(name = "ZD")]
    Zd,
}

#[derive(Subcommand, Debug)]
pub enum CurvatureCmd {
    /// Induced metric at an origin: a pair `(u,v)` or an element.
    Metric {
        #[arg(long)]
        origin: String,
    },
    /// Ricci tensor of the pair metric (Z) or of the family g_r (ZD).
    Ricci {
        #[arg(long, value_enum)]
        space: Space,
        #[arg(long)]
        r: Option<String>,
    },
    /// Sectional curvature of g_r.
    Sectional {
        #[arg(long)]
        r: String,
        #[arg(long, num_args = 2, value_names = ["I", "J"])]
        plane: Option<Vec<usize>>,
    },
    /// The quartic F_r, compared with the golden file.
    Poly(EmitArg),
}

#[derive(Args, Debug)]
pub struct EmitArg {
    /// Write the artifact to this file.
    #[arg(long)]
    pub emit: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum SosCmd {
    /// Exact PSD test and Gram identity for one certificate.
    Verify {
        #[arg(long)]
        cert: String,
    },
    /// F_r >= 0 on [0, 4/9] against the geometry pipeline.
    Interval,
    /// Explicit weighted squares of a certificate.
    Decompose {
        #[arg(long)]
        cert: String,
        #[command(flatten)]
        emit: EmitArg,
    },
}

/// Failure to run a command at all, as opposed to a failed assertion.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Io(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Io(m) => f.write_str(m),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

type CliResult = std::result::Result<RunReport, CliError>;

fn parse_r(s: &str) -> std::result::Result<Rational, CliError> {
    parse_rational(s).map_err(|e| CliError::Usage(format!("--r {s}: {e}")))
}

fn cert_label(s: &str) -> std::result::Result<CertLabel, CliError> {
    CertLabel::parse(s).map_err(|e| CliError::Usage(e.to_string()))
}

/// Engine errors after parsing are assertion failures.
fn failed(command: &str, e: Error) -> RunReport {
    RunReport::new(
        command,
        false,
        format!("error: {e}\n"),
        json!({ "error": e.to_string() }),
    )
}

fn from_check(command: &str, c: sedgeo_core::Result<checks::Check>) -> RunReport {
    match c {
        Ok(c) => RunReport::new(command, c.pass, c.text, c.details),
        Err(e) => failed(command, e),
    }
}

fn write_file(path: &Path, text: &str) -> std::result::Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

pub fn execute(cli: &Cli) -> CliResult {
    let start = Instant::now();
    let mut report = match &cli.command {
        Command::Zd(c) => cmd_zd(c)?,
        Command::Curvature(c) => cmd_curvature(c)?,
        Command::Sos(c) => cmd_sos(c)?,
        Command::Reproduce => cmd_reproduce(),
    };
    report.timing_ms = start.elapsed().as_millis();
    Ok(report)
}

pub fn cmd_zd(c: &ZdCmd) -> CliResult {
    Ok(match c {
        ZdCmd::Enumerate => {
            let zd = standard_zero_divisors();
            RunReport::new(
                "zd enumerate",
                zd.len() == 84,
                format_table(&zd),
                json!({ "count": zd.len(), "pairs": zd.iter().map(|p| p.to_string()).collect::<Vec<_>>() }),
            )
        }
        ZdCmd::VerifyTable => from_check("zd verify-table", checks::table_reproduction()),
        ZdCmd::Annihilator { element, level } => {
            let u = parse_element(element, *level)?;
            let cmd = "zd annihilator";
            match annihilator_basis(&u) {
                Ok(basis) => {
                    let elems: Vec<String> = basis.iter().map(format_element).collect();
                    let mut text = format!("dimension {}\n", basis.len());
                    for b in &elems {
                        let _ = writeln!(text, "{b}");
                    }
                    RunReport::new(
                        cmd,
                        true,
                        text,
                        json!({
                            "element": format_element(&u),
                            "level": level,
                            "dimension": basis.len(),
                            "basis": elems,
                        }),
                    )
                }
                Err(e) => failed(cmd, e),
            }
        }
    })
}

fn parse_origin(s: &str) -> std::result::Result<Origin, CliError> {
    if s.trim_start().starts_with('(') {
        Ok(Origin::Pair(ZeroDivisorPair::parse(s)?))
    } else {
        Ok(Origin::Element(parse_element(s, 4)?))
    }
}

pub fn cmd_curvature(c: &CurvatureCmd) -> CliResult {
    match c {
        CurvatureCmd::Metric { origin } => {
            let o = parse_origin(origin)?;
            let cmd = "curvature metric";
            let m = match metric_from_origin(&o) {
                Ok(m) => m,
                Err(e) => return Ok(failed(cmd, e)),
            };
            let iso = match &o {
                Origin::Pair(p) => joint_isotropy(&[&p.u, &p.v]),
                Origin::Element(u) => joint_isotropy(&[u]),
            }?;
            let blocks = natural_reductive_scalings(&m)
                .map(|b| b.iter().map(ToString::to_string).collect::<Vec<_>>());
            let mut text = format!(
                "carrier {}\nisotropy dimension {}\n",
                m.carrier.name(),
                iso.len()
            );
            text.push_str(&m.to_text());
            if let Some(b) = &blocks {
                let _ = writeln!(text, "naturally reductive, blocks ({})", b.join(", "));
            }
            Ok(RunReport::new(
                cmd,
                true,
                text,
                json!({
                    "carrier": m.carrier.name(),
                    "isotropy_dim": iso.len(),
                    "metric": m.to_text().lines().collect::<Vec<_>>(),
                    "natural_reductive_blocks": blocks,
                }),
            ))
        }
        CurvatureCmd::Ricci { space, r } => {
            let r = r.as_deref().map(parse_r).transpose()?;
            match space {
                Space::Z => {
                    let mut rep = from_check("curvature ricci", checks::ricci_z());
                    if let Ok(m) = checks::z_metric() {
                        if let Ok(full) = ricci_reductive(&m) {
                            rep.text.push_str(&full.to_text());
                        }
                    }
                    Ok(rep)
                }
                Space::Zd => Ok(ricci_zd(r.as_ref())),
            }
        }
        CurvatureCmd::Sectional { r, plane } => {
            let r = parse_r(r)?;
            let cmd = "curvature sectional";
            let g = gr_metric();
            if let Some(p) = plane {
                let (i, j) = (p[0], p[1]);
                let m = Carrier::ReductiveM.indices();
                if i == j || !m.contains(&i) || !m.contains(&j) {
                    return Err(CliError::Usage(format!(
                        "--plane {i} {j}: need two distinct indices in {}..{}",
                        m.start, m.end
                    )));
                }
                let res = sectional_curvature(&G2Vector::basis(i), &G2Vector::basis(j), &g, &r)
                    .and_then(|k| Ok((k, sectional_curvature_plane(i, j, &g)?)));
                return Ok(match res {
                    Ok((k, sym)) => RunReport::new(
                        cmd,
                        true,
                        format!("kappa(pi_{i}{j}) = {k}\nas a function of r: {sym}\n"),
                        json!({ "r": format_rational(&r), "plane": [i, j], "kappa": k.to_string(), "symbolic": sym.to_string() }),
                    ),
                    Err(e) => failed(cmd, e),
                });
            }
            Ok(match plane_sweep(&g, &r) {
                Ok(sweep) => {
                    let mut text = String::new();
                    for p in &sweep {
                        let _ = writeln!(text, "kappa(pi_{}_{}) = {}", p.i, p.j, p.kappa);
                    }
                    let planes: Vec<_> = sweep
                        .iter()
                        .map(|p| json!({ "i": p.i, "j": p.j, "kappa": p.kappa.to_string() }))
                        .collect();
                    RunReport::new(
                        cmd,
                        true,
                        text,
                        json!({ "r": format_rational(&r), "planes": planes }),
                    )
                }
                Err(e) => failed(cmd, e),
            })
        }
        CurvatureCmd::Poly(EmitArg { emit }) => {
            let cmd = "curvature poly";
            let f = match sectional_polynomial(&gr_metric()) {
                Ok(f) => f,
                Err(e) => return Ok(failed(cmd, e)),
            };
            if let Some(path) = emit {
                write_file(path, &f.to_text())?;
            }
            Ok(from_check(cmd, checks::polynomial_match(&f)))
        }
    }
}

fn ricci_zd(r: Option<&Rational>) -> RunReport {
    let cmd = "curvature ricci";
    let rep = match ricci_reductive(&gr_metric()) {
        Ok(rep) => rep,
        Err(e) => return failed(cmd, e),
    };
    let locus = einstein_locus(&rep);
    let mut text = rep.to_text();
    let _ = writeln!(text, "Einstein: {locus}");
    let mut details = json!({
        "ricci_diagonal": rep.ricci_diagonal().iter().map(ToString::to_string).collect::<Vec<_>>(),
        "scal": rep.scalar.to_string(),
        "einstein": locus.to_string(),
    });
    if let Some(r) = r {
        if let Err(e) = gr_metric().check_positive_definite(r) {
            return failed(cmd, e);
        }
        let at = rep.ricci_at(r);
        let diag: Vec<String> = (0..at.len()).map(|a| format_rational(&at[a][a])).collect();
        let einstein = rep.is_einstein_at(r);
        let _ = writeln!(
            text,
            "at r = {}: diagonal ({})",
            format_rational(r),
            diag.join(", ")
        );
        if einstein {
            let _ = writeln!(text, "Einstein with constant {}", diag[0]);
        } else {
            let _ = writeln!(text, "not Einstein");
        }
        details["r"] = json!(format_rational(r));
        details["ricci_at_r"] = json!(diag);
        details["einstein_at_r"] = json!(einstein);
        details["einstein_constant"] = json!(einstein.then(|| diag[0].clone()));
    }
    RunReport::new(cmd, true, text, details)
}

pub fn cmd_sos(c: &SosCmd) -> CliResult {
    Ok(match c {
        SosCmd::Verify { cert } => {
            let label = cert_label(cert)?;
            let res = build_certificate(label)
                .and_then(|h| checks::verify_certificate(&h, &golden_sectional_polynomial()?));
            from_check("sos verify", res)
        }
        SosCmd::Interval => from_check("sos interval", checks::interval_certificate()),
        SosCmd::Decompose { cert, emit } => {
            let label = cert_label(cert)?;
            let cmd = "sos decompose";
            let squares = match build_certificate(label).and_then(|h| sos_decomposition(&h)) {
                Ok(s) => s,
                Err(e) => return Ok(failed(cmd, e)),
            };
            let body: String = squares.iter().map(|s| s.to_text() + "\n").collect();
            if let Some(path) = &emit.emit {
                write_file(path, &body)?;
            }
            let weights: Vec<String> = squares.iter().map(|s| format_rational(&s.weight)).collect();
            RunReport::new(
                cmd,
                true,
                format!("{} weighted squares\n{body}", squares.len()),
                json!({
                    "certificate": label.name(),
                    "squares": squares.len(),
                    "weights": weights,
                    "forms": squares.iter().map(|s| s.to_text()).collect::<Vec<_>>(),
                }),
            )
        }
    })
}

pub fn cmd_reproduce() -> RunReport {
    let outcomes = reproduce::run_all();
    let ok = outcomes.iter().all(reproduce::Outcome::ok);
    let mut text = String::new();
    for o in &outcomes {
        let verdict = if o.ok() { "pass" } else { "FAIL" };
        let _ = writeln!(text, "criterion {:>2} {verdict}: {}", o.id, o.name);
        for line in o.text.lines() {
            let _ = writeln!(text, "    {line}");
        }
    }
    let criteria: Vec<_> = outcomes
        .iter()
        .map(|o| {
            json!({
                "id": o.id,
                "name": o.name,
                "status": if o.ok() { "pass" } else { "fail" },
                "within_bound": o.within_bound,
                "bound_ms": o.bound.map(|b| b.as_millis()),
                "timing_ms": o.elapsed.as_millis(),
                "details": o.details,
            })
        })
        .collect();
    RunReport::new("reproduce", ok, text, json!({ "criteria": criteria }))
}

/// Parses, runs and prints; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(&cli) {
        Ok(report) => {
            print!("{}", cli.format.render(&report));
            if cli.format == Format::Text {
                eprintln!("elapsed {} ms", report.timing_ms);
            }
            if report.passed() {
                0
            } else {
                1
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}
