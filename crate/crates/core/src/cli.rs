//! Command-line front end. Exit codes: 0 success, 1 a relation or
//! cross-check failed, 2 usage, input or runtime error.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::config::{default_params, gen_cocyclic, gen_cyclic, gen_random, VectorConfig};
use crate::exactnum::parse_rat;
use crate::faces::{self, f_matrix, farkas_complement_oracle, fstar_matrix, fstar_matrix_of};
use crate::gmatrix::{
    check_contraction_deletion, g_closed_form_neighborly, g_of_pair, GMatrix, MinorMode,
};
use crate::motion::{detect_mutations, detect_with_perturbation, g_of_path, MotionPath};
use crate::relations::{
    check_antipodal, check_dehn_sommerville, check_duality, check_totals, RelationReport,
};
use crate::span::{self, Mode, SpanReport};
use crate::{Error, Result};

#[derive(Parser, Debug)]
#[command(
    name = "levels",
    version,
    about = "Face counts, g-matrices and mutations of vector configurations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write a cyclic, cocyclic or random configuration.
    Gen(GenArgs),
    /// f-matrix of a configuration.
    Faces(FacesArgs),
    /// f*-matrix of a configuration.
    Fstar(FstarArgs),
    /// g-matrix of a pair.
    G(GArgs),
    /// Mutations along the straight-line motion between two configurations.
    Motion(MotionArgs),
    /// Check one relation; exits 1 if it fails.
    Verify(VerifyArgs),
    /// Exact span dimension of sampled g-, f- or f*-matrices.
    Span(SpanArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Kind {
    Cyclic,
    Cocyclic,
    Random,
}

#[derive(Args, Debug)]
struct GenArgs {
    #[arg(long)]
    kind: Kind,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    r: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Random configurations only: lift to (1, p).
    #[arg(long)]
    pointed: bool,
    /// Moment-curve parameters, e.g. `0,1/2,3`.
    #[arg(long, value_delimiter = ',')]
    params: Option<Vec<String>>,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug)]
struct FacesArgs {
    config: PathBuf,
    /// Also list the dissection patterns.
    #[arg(long)]
    patterns: bool,
    #[arg(short, long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Oracle {
    Farkas,
    Gale,
    Both,
}

#[derive(Args, Debug)]
struct FstarArgs {
    config: PathBuf,
    #[arg(long, value_enum, default_value_t = Oracle::Gale)]
    oracle: Oracle,
    #[arg(short, long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Via {
    Algebraic,
    Motion,
    Both,
}

#[derive(Args, Debug)]
struct GArgs {
    #[arg(long)]
    from: PathBuf,
    #[arg(long)]
    to: PathBuf,
    #[arg(long, value_enum, default_value_t = Via::Algebraic)]
    via: Via,
    /// Print the full (r+1) x (n-r+1) matrix instead of the small one.
    #[arg(long)]
    full: bool,
    /// Seed for perturbing the target when the straight line is not generic.
    #[arg(long, default_value_t = 0)]
    perturb_seed: u64,
    /// Fail instead of perturbing a non-generic straight line.
    #[arg(long)]
    no_perturb: bool,
}

#[derive(Args, Debug)]
struct MotionArgs {
    #[arg(long)]
    from: PathBuf,
    #[arg(long)]
    to: PathBuf,
    /// Print every event rather than a summary.
    #[arg(long)]
    trace: bool,
    /// Seed for perturbing the target when the straight line is not generic.
    #[arg(long, default_value_t = 0)]
    perturb_seed: u64,
    /// Fail instead of perturbing a non-generic straight line.
    #[arg(long)]
    no_perturb: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Relation {
    Ds,
    Antipodal,
    Totals,
    Duality,
    Skew,
    Contraction,
    Deletion,
    ClosedForm,
    SpanDim,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, value_enum)]
    relation: Relation,
    /// A configuration (ds, antipodal, totals, duality), a pair of them
    /// (skew, contraction, deletion) or a g-matrix file (skew).
    files: Vec<PathBuf>,
    /// closed-form and span-dim only.
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    r: Option<usize>,
    #[arg(long)]
    pointed: bool,
    #[arg(long, default_value_t = 12)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum QuantityArg {
    G,
    F,
    Fstar,
}

#[derive(Args, Debug)]
struct SpanArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    r: usize,
    #[arg(long)]
    pointed: bool,
    #[arg(long, default_value_t = 12)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = QuantityArg::G)]
    quantity: QuantityArg,
}

/// Parses `args` (including the program name) and runs the command,
/// printing to stdout.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    run_with(args, &mut std::io::stdout().lock())
}

/// Like [`run`], writing results to `out`. Diagnostics still go to stderr.
pub fn run_with<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::CrossCheck(_) => 1,
                _ => 2,
            }
        }
    }
}

/// `Ok(false)` means a checked relation does not hold.
fn dispatch(command: Command, out: &mut dyn Write) -> Result<bool> {
    match command {
        Command::Gen(a) => gen(a, out),
        Command::Faces(a) => faces_cmd(a, out),
        Command::Fstar(a) => fstar_cmd(a, out),
        Command::G(a) => g_cmd(a, out),
        Command::Motion(a) => motion_cmd(a, out),
        Command::Verify(a) => verify(a, out),
        Command::Span(a) => span_cmd(a, out),
    }
}

fn read_config(path: &Path) -> Result<VectorConfig> {
    let text =
        fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    VectorConfig::from_json(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn emit(out: &mut dyn Write, output: Option<&Path>, text: &str) -> Result<()> {
    let mut text = text.to_string();
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match output {
        Some(p) => fs::write(p, text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("output types serialize")
}

fn gen(a: GenArgs, out: &mut dyn Write) -> Result<bool> {
    let params = match &a.params {
        Some(ps) => ps
            .iter()
            .map(|p| parse_rat(p.trim()))
            .collect::<Result<Vec<_>>>()?,
        None => default_params(a.n),
    };
    let config = match a.kind {
        Kind::Cyclic => gen_cyclic(a.n, a.r, &params)?,
        Kind::Cocyclic => gen_cocyclic(a.n, a.r, &params)?,
        Kind::Random => gen_random(a.n, a.r, a.seed, a.pointed)?,
    };
    emit(out, a.output.as_deref(), &config.to_json())?;
    Ok(true)
}

fn faces_cmd(a: FacesArgs, out: &mut dyn Write) -> Result<bool> {
    let v = read_config(&a.config)?;
    let patterns = faces::dissection_patterns(&v);
    let f = faces::f_matrix_of(&patterns, v.d(), v.n());
    let text = match (a.format, a.patterns) {
        (Format::Json, false) => json(&f),
        (Format::Json, true) => json(&serde_json::json!({ "f": f, "patterns": patterns })),
        (Format::Csv, false) => f.to_csv(),
        (Format::Csv, true) => {
            let list: Vec<String> = patterns.iter().map(|p| p.to_string()).collect();
            format!("{}\n{}", f.to_csv().trim_end(), list.join("\n"))
        }
    };
    emit(out, a.output.as_deref(), &text)?;
    Ok(true)
}

fn fstar_cmd(a: FstarArgs, out: &mut dyn Write) -> Result<bool> {
    let v = read_config(&a.config)?;
    let m = match a.oracle {
        Oracle::Gale => fstar_matrix(&v),
        Oracle::Farkas => fstar_matrix_of(&farkas_complement_oracle(&v)?, v.r(), v.n()),
        Oracle::Both => {
            let gale = fstar_matrix(&v);
            let farkas = fstar_matrix_of(&farkas_complement_oracle(&v)?, v.r(), v.n());
            if gale != farkas {
                return Err(Error::CrossCheck(
                    "Gale and Farkas f*-matrices differ".into(),
                ));
            }
            gale
        }
    };
    let text = match a.format {
        Format::Json => json(&m),
        Format::Csv => m.to_csv(),
    };
    emit(out, a.output.as_deref(), &text)?;
    Ok(true)
}

/// The motion to `w`, or to a perturbation of `w` with the same f-matrix.
fn trace_motion(
    v: &VectorConfig,
    w: &VectorConfig,
    seed: u64,
    no_perturb: bool,
) -> Result<(VectorConfig, MotionPath)> {
    let (target, path) = if no_perturb {
        (w.clone(), detect_mutations(v, w)?)
    } else {
        detect_with_perturbation(v, w, seed)?
    };
    if &target != w {
        eprintln!("note: straight line was not generic; target perturbed with seed {seed}");
    }
    Ok((target, path))
}

fn g_cmd(a: GArgs, out: &mut dyn Write) -> Result<bool> {
    let (v, w) = (read_config(&a.from)?, read_config(&a.to)?);
    let g = match a.via {
        Via::Algebraic => g_of_pair(&v, &w)?,
        Via::Motion => g_of_path(
            v.r(),
            v.n(),
            &trace_motion(&v, &w, a.perturb_seed, a.no_perturb)?.1.events,
        ),
        Via::Both => {
            let alg = g_of_pair(&v, &w)?;
            let moved = g_of_path(
                v.r(),
                v.n(),
                &trace_motion(&v, &w, a.perturb_seed, a.no_perturb)?.1.events,
            );
            if alg != moved {
                return Err(Error::CrossCheck(format!(
                    "motion gives {:?}, f-matrices give {:?}",
                    moved.rows(),
                    alg.rows()
                )));
            }
            alg
        }
    };
    let text = if a.full { json(&g) } else { json(&g.small()) };
    emit(out, None, &text)?;
    Ok(true)
}

#[derive(Serialize)]
struct MotionSummary {
    events: usize,
    perturbed: bool,
    g: crate::gmatrix::SmallGMatrix,
}

fn motion_cmd(a: MotionArgs, out: &mut dyn Write) -> Result<bool> {
    let (v, w) = (read_config(&a.from)?, read_config(&a.to)?);
    let (target, path) = trace_motion(&v, &w, a.perturb_seed, a.no_perturb)?;
    let text = if a.trace {
        path.trace_json()
    } else {
        json(&MotionSummary {
            events: path.events.len(),
            perturbed: target != w,
            g: g_of_path(v.r(), v.n(), &path.events).small(),
        })
    };
    emit(out, None, &text)?;
    Ok(true)
}

fn verify(a: VerifyArgs, out: &mut dyn Write) -> Result<bool> {
    let reports = match a.relation {
        Relation::Ds | Relation::Antipodal | Relation::Totals | Relation::Duality => {
            let v = read_config(one_file(&a.files)?)?;
            let f = f_matrix(&v);
            vec![match a.relation {
                Relation::Ds => check_dehn_sommerville(&f),
                Relation::Antipodal => check_antipodal(&f),
                Relation::Totals => check_totals(&f),
                _ => check_duality(&v),
            }]
        }
        Relation::Skew => vec![verify_skew(&a.files)?],
        Relation::Contraction | Relation::Deletion => {
            let (v, w) = two_files(&a.files)?;
            let mode = if a.relation == Relation::Contraction {
                MinorMode::Contract
            } else {
                MinorMode::Delete
            };
            vec![check_contraction_deletion(&v, &w, mode)?]
        }
        Relation::ClosedForm => {
            let (n, r) = shape(&a)?;
            let got =
                g_of_pair(&crate::config::cocyclic(n, r), &crate::config::cyclic(n, r))?.small();
            let want = g_closed_form_neighborly(n, r)?;
            vec![if got == want {
                RelationReport::pass("closed-form")
            } else {
                RelationReport::fail(
                    "closed-form",
                    format!("enumerated {:?}, formula {:?}", got.g, want.g),
                )
            }]
        }
        Relation::SpanDim => {
            let (n, r) = shape(&a)?;
            let mode = if a.pointed {
                Mode::Pointed
            } else {
                Mode::General
            };
            let g = span::g_span_rank(n, r, mode, a.samples, a.seed)?;
            let f = span::f_affine_span_rank(n, r, mode, a.samples, a.seed)?;
            vec![
                span_report("span-dim (g)", &g),
                span_report("span-dim (f)", &f),
            ]
        }
    };
    emit(out, None, &json(&reports))?;
    Ok(reports.iter().all(|r| r.holds))
}

fn span_report(name: &str, rep: &SpanReport) -> RelationReport {
    if rep.reached {
        RelationReport::pass(name)
    } else {
        RelationReport::fail(
            name,
            format!(
                "rank {} of dimension {} after {} samples",
                rep.achieved_rank, rep.theoretical_dim, rep.samples_used
            ),
        )
    }
}

fn verify_skew(files: &[PathBuf]) -> Result<RelationReport> {
    if files.len() == 1 {
        let text = fs::read_to_string(&files[0])?;
        #[derive(serde::Deserialize)]
        struct Raw {
            r: usize,
            n: usize,
            g: Vec<Vec<i64>>,
        }
        let raw: Raw = serde_json::from_str(&text)
            .map_err(|e| Error::Parse(format!("{}: {e}", files[0].display())))?;
        return Ok(match GMatrix::new(raw.r, raw.n, raw.g) {
            Ok(_) => RelationReport::pass("skew"),
            Err(Error::InconsistentInput(w)) => RelationReport::fail("skew", w),
            Err(e) => return Err(e),
        });
    }
    // g is built skew-symmetric, so for a pair check the Gale antisymmetry
    let (v, w) = two_files(files)?;
    let g = g_of_pair(&v, &w)?;
    let dual = g_of_pair(&v.gale_dual()?, &w.gale_dual()?)?;
    Ok(if dual == g.gale_dual() {
        RelationReport::pass("skew")
    } else {
        RelationReport::fail(
            "skew",
            format!("g = {:?} but dual pair gives {:?}", g.rows(), dual.rows()),
        )
    })
}

fn one_file(files: &[PathBuf]) -> Result<&Path> {
    match files {
        [f] => Ok(f),
        _ => Err(Error::Parse(format!(
            "expected one configuration file, got {}",
            files.len()
        ))),
    }
}

fn two_files(files: &[PathBuf]) -> Result<(VectorConfig, VectorConfig)> {
    match files {
        [a, b] => Ok((read_config(a)?, read_config(b)?)),
        _ => Err(Error::Parse(format!(
            "expected two configuration files, got {}",
            files.len()
        ))),
    }
}

fn shape(a: &VerifyArgs) -> Result<(usize, usize)> {
    match (a.n, a.r) {
        (Some(n), Some(r)) => Ok((n, r)),
        _ => Err(Error::Parse("--n and --r are required".into())),
    }
}

fn span_cmd(a: SpanArgs, out: &mut dyn Write) -> Result<bool> {
    let mode = if a.pointed {
        Mode::Pointed
    } else {
        Mode::General
    };
    let rep = match a.quantity {
        QuantityArg::G => span::g_span_rank(a.n, a.r, mode, a.samples, a.seed)?,
        QuantityArg::F => span::f_affine_span_rank(a.n, a.r, mode, a.samples, a.seed)?,
        QuantityArg::Fstar => span::fstar_span_rank(a.n, a.r, mode, a.samples, a.seed)?,
    };
    emit(out, None, &rep.to_json())?;
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_every_subcommand() {
        for args in [
            vec![
                "levels", "gen", "--kind", "cyclic", "--n", "6", "--r", "3", "-o", "c.json",
            ],
            vec!["levels", "faces", "c.json", "--patterns", "--format", "csv"],
            vec!["levels", "fstar", "c.json", "--oracle", "both"],
            vec![
                "levels", "g", "--from", "a.json", "--to", "b.json", "--via", "both",
            ],
            vec![
                "levels",
                "motion",
                "--from",
                "a.json",
                "--to",
                "b.json",
                "--trace",
                "--perturb-seed",
                "3",
            ],
            vec![
                "levels",
                "verify",
                "--relation",
                "closed-form",
                "--n",
                "5",
                "--r",
                "3",
            ],
            vec![
                "levels",
                "verify",
                "--relation",
                "span-dim",
                "--n",
                "5",
                "--r",
                "3",
                "--pointed",
            ],
            vec![
                "levels",
                "span",
                "--n",
                "7",
                "--r",
                "3",
                "--samples",
                "8",
                "--seed",
                "1",
            ],
        ] {
            assert!(Cli::try_parse_from(&args).is_ok(), "{args:?}");
        }
    }

    #[test]
    fn usage_errors_exit_2() {
        let mut out = Vec::new();
        assert_eq!(run_with(["levels", "gen", "--bogus"], &mut out), 2);
        assert_eq!(run_with(["levels", "frobnicate"], &mut out), 2);
        assert_eq!(
            run_with(["levels", "faces", "/nonexistent/config.json"], &mut out),
            2
        );
        assert_eq!(
            run_with(["levels", "verify", "--relation", "closed-form"], &mut out),
            2
        );
        assert!(out.is_empty());
    }

    #[test]
    fn closed_form_verifies() {
        let mut out = Vec::new();
        let code = run_with(
            [
                "levels",
                "verify",
                "--relation",
                "closed-form",
                "--n",
                "5",
                "--r",
                "3",
            ],
            &mut out,
        );
        assert_eq!(code, 0);
        assert!(String::from_utf8(out).unwrap().contains("\"holds\": true"));
    }
}
