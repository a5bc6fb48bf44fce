//! The `annulus` command line. Parsing and dispatch live here so that tests
//! can drive the commands without spawning a process.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::Path;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::json;

use crate::algebra::Model;
use crate::cosilting::{
    ann_generators, classify, complete_partial, family_of, BandParameters, PartialAsympTriangulation,
};
use crate::error::{Error, Result};
use crate::extensions::ext_table;
use crate::field::{Field, Fp, Rationals};
use crate::fixtures;
use crate::kcomplex::string_complex;
use crate::render::{cover_svg, quiver_dot};
use crate::strings::{classify_asymptotic, ArcString, Word};
use crate::suites::{run_suite, SuiteConfig, SUITES};
use crate::surface::{parse_triangulation, Arc};

pub const EXIT_INPUT: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Dot,
    Svg,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "annulus", version, about = "Arcs, strings and cosilting modules of annulus triangulations")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Field size: a prime, or 0 for the rationals.
    #[arg(long, global = true, default_value_t = 7)]
    pub field: u64,
    #[arg(long, global = true)]
    pub winding_bound: Option<i64>,
    /// Word length for test modules; for `classify`, their dimension.
    #[arg(long, global = true)]
    pub length_bound: Option<usize>,
    /// Depth of complex windows.
    #[arg(long, global = true)]
    pub depth: Option<usize>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    #[arg(long, global = true, default_value_t = 2024)]
    pub seed: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Quiver with relations, as DOT and JSON.
    Quiver { triangulation: String },
    /// The string of an arc, given as JSON or a file.
    String { triangulation: String, arc: String },
    /// `dim Ext¹` between test modules, as CSV.
    Exttable { triangulation: String },
    /// All asymptotic triangulations up to the winding bound.
    Classify { triangulation: String },
    /// Complete a partial asymptotic triangulation.
    Complete { triangulation: String, partial: String },
    /// Run a verification suite (`A1`…`A9`, a suite name, or `all`).
    Verify { suite: String },
    /// SVG of the universal cover with the given arcs drawn in.
    Render { triangulation: String, arcs: Option<String> },
}

/// What a command printed and how it exits.
#[derive(Debug)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `args` (program name first) and runs the command.
pub fn main_with<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    execute(&cli)
}

pub fn execute(cli: &Cli) -> Outcome {
    let run = || match cli.field {
        0 => dispatch(cli, &Rationals),
        p => match Fp::new(p) {
            Ok(f) => dispatch(cli, &f),
            Err(e) => Err(e),
        },
    };
    let result = match cli.jobs {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build() {
            Ok(pool) => pool.install(run),
            Err(e) => Err(Error::Input(e.to_string())),
        },
        None => run(),
    };
    match result {
        Ok((stdout, ok)) => Outcome { code: if ok { 0 } else { EXIT_VERIFY }, stdout, stderr: String::new() },
        Err(e) => {
            let code = match e {
                Error::CompletionBlocked(_) | Error::ExactnessFailure(_) => EXIT_VERIFY,
                _ => EXIT_INPUT,
            };
            Outcome { code, stdout: String::new(), stderr: format!("error: {e}\n") }
        }
    }
}

/// File contents, or the argument itself when it is inline JSON.
fn read_json_arg(arg: &str) -> Result<String> {
    let t = arg.trim_start();
    if t.starts_with('{') || t.starts_with('[') {
        return Ok(arg.to_string());
    }
    std::fs::read_to_string(arg).map_err(|e| Error::Input(format!("{arg}: {e}")))
}

/// A triangulation file, or a shipped fixture by name.
pub fn load_model(arg: &str) -> Result<Model> {
    if !Path::new(arg).exists() {
        if let Some(m) = fixtures::by_name(arg) {
            return Ok(m);
        }
    }
    Ok(Model::new(parse_triangulation(&read_json_arg(arg)?)?))
}

#[derive(Deserialize)]
#[serde(untagged)]
enum PartialInput {
    Bare(Vec<Arc>),
    Full {
        arcs: Vec<Arc>,
        #[serde(default)]
        params: Option<BandParameters>,
    },
}

#[derive(Deserialize)]
#[serde(untagged)]
enum ArcsInput {
    One(Arc),
    Many(Vec<Arc>),
}

fn parse_arcs(arg: &str) -> Result<Vec<Arc>> {
    Ok(match serde_json::from_str(&read_json_arg(arg)?)? {
        ArcsInput::One(a) => vec![a],
        ArcsInput::Many(v) => v,
    })
}

fn to_json(v: &impl serde::Serialize) -> Result<String> {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

/// Output text and whether every check passed.
fn dispatch<F: Field>(cli: &Cli, field: &F) -> Result<(String, bool)> {
    let fmt = cli.format;
    match &cli.command {
        Command::Quiver { triangulation } => {
            let m = load_model(triangulation)?;
            let dot = quiver_dot(&m.pres, "Q");
            let js = to_json(&m.pres.to_json())?;
            Ok((
                match fmt {
                    Some(Format::Dot) => dot,
                    Some(Format::Json) => js,
                    _ => format!("{dot}\n{js}"),
                },
                true,
            ))
        }
        Command::String { triangulation, arc } => {
            let m = load_model(triangulation)?;
            let arcs = parse_arcs(arc)?;
            let mut out = String::new();
            let mut rows = Vec::new();
            for a in &arcs {
                let (text, word) = match m.string_of_arc(a)? {
                    ArcString::InTriangulation(_) => ("@in-triangulation".to_string(), None),
                    ArcString::Word(w) => (w.render(&m.pres), Some(w)),
                };
                let asym = match &word {
                    Some(w @ Word::NString { .. }) => {
                        Some(format!("{:?}", classify_asymptotic(&m.pres, w)?).to_lowercase())
                    }
                    _ => None,
                };
                rows.push(json!({
                    "arc": a.to_string(),
                    "word": text,
                    "pretty": word.as_ref().map(|w| w.pretty(&m.pres)),
                    "asymptotics": asym,
                }));
                let _ = writeln!(out, "{text}");
                if let (Some(d), Some(w @ Word::Finite { .. })) = (cli.depth, &word) {
                    out.push_str(&string_complex(&m.pres, w, d, 1)?.ascii(&m.pres));
                }
            }
            Ok((if fmt == Some(Format::Json) { to_json(&rows)? } else { out }, true))
        }
        Command::Exttable { triangulation } => {
            let m = load_model(triangulation)?;
            let (labels, rows) = ext_table(&m, field, cli.length_bound.unwrap_or(4), &[1, 2, 3])?;
            if fmt == Some(Format::Json) {
                return Ok((to_json(&json!({ "labels": labels, "ext1": rows }))?, true));
            }
            let quote = |s: &str| if s.contains(',') { format!("\"{s}\"") } else { s.to_string() };
            let mut out = String::from("ext1");
            for l in &labels {
                let _ = write!(out, ",{}", quote(l));
            }
            out.push('\n');
            for (l, r) in labels.iter().zip(&rows) {
                out.push_str(&quote(l));
                for x in r {
                    let _ = write!(out, ",{x}");
                }
                out.push('\n');
            }
            Ok((out, true))
        }
        Command::Classify { triangulation } => {
            let m = load_model(triangulation)?;
            let c = classify(&m, field, cli.winding_bound.unwrap_or(3), cli.length_bound.unwrap_or(6))?;
            let ok = c.non_strict.iter().all(|e| e.verified) && c.strict.iter().all(|e| e.rigid);
            Ok((to_json(&c)?, ok))
        }
        Command::Complete { triangulation, partial } => {
            let m = load_model(triangulation)?;
            let (arcs, params) = match serde_json::from_str(&read_json_arg(partial)?)? {
                PartialInput::Bare(a) => (a, None),
                PartialInput::Full { arcs, params } => (arcs, params),
            };
            let t = PartialAsympTriangulation::new(&m.tri.surface, arcs, params)?;
            let s = complete_partial(&m, &t, cli.winding_bound.unwrap_or(3))?;
            let d = family_of(&m, &s.t)?;
            if fmt == Some(Format::Text) {
                return Ok((format!("{}\n", s.t), true));
            }
            let out = json!({
                "arcs": s.t.arcs.iter().map(|a| a.to_string()).collect::<Vec<_>>(),
                "params": s.t.params,
                "bound": s.bound,
                "members": d.members.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                "annGenerators": ann_generators(&m.pres, &d.annihilator),
            });
            Ok((to_json(&out)?, true))
        }
        Command::Verify { suite } => {
            let cfg = SuiteConfig {
                length_bound: cli.length_bound,
                winding_bound: cli.winding_bound,
                depth: cli.depth.unwrap_or(4),
                seed: cli.seed,
                ..SuiteConfig::default()
            };
            let keys: Vec<&str> =
                if suite == "all" { SUITES.iter().map(|s| s.0).collect() } else { vec![suite.as_str()] };
            let reports = keys.iter().map(|k| run_suite(k, field, &cfg)).collect::<Result<Vec<_>>>()?;
            let ok = reports.iter().all(|r| r.passed());
            let out = if fmt == Some(Format::Json) {
                to_json(&reports)?
            } else {
                reports.iter().map(|r| r.line() + "\n").collect()
            };
            Ok((out, ok))
        }
        Command::Render { triangulation, arcs } => {
            let m = load_model(triangulation)?;
            let arcs = match arcs {
                Some(a) => parse_arcs(a)?,
                None => Vec::new(),
            };
            match fmt {
                Some(Format::Dot) => Ok((quiver_dot(&m.pres, "Q"), true)),
                Some(Format::Text) => {
                    let mut out = String::new();
                    for a in &arcs {
                        if let ArcString::Word(w @ Word::Finite { .. }) = m.string_of_arc(a)? {
                            let _ = writeln!(out, "{a}: {}", w.render(&m.pres));
                            out.push_str(&string_complex(&m.pres, &w, cli.depth.unwrap_or(4), 1)?.ascii(&m.pres));
                        }
                    }
                    Ok((out, true))
                }
                Some(Format::Json | Format::Csv) => Err(Error::Input("render writes svg, dot or text".into())),
                _ => Ok((cover_svg(&m.tri, &arcs, 2), true)),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> Outcome {
        main_with(std::iter::once("annulus").chain(args.iter().copied()))
    }

    #[test]
    fn kronecker_quiver_dot() {
        let o = run(&["quiver", "fixture-11", "--format", "dot"]);
        assert_eq!(o.code, 0);
        assert_eq!(o.stdout.matches(" -> ").count(), 2);
    }

    #[test]
    fn malformed_json_exits_2() {
        let o = run(&["quiver", "{not json"]);
        assert_eq!(o.code, EXIT_INPUT, "{o:?}");
        assert!(!o.stderr.is_empty());
    }

    #[test]
    fn bad_field_exits_2() {
        assert_eq!(run(&["quiver", "fixture-11", "--field", "6"]).code, EXIT_INPUT);
    }

    #[test]
    fn arc_in_triangulation() {
        let o = run(&["string", "fixture-32", r#"{"type":"bridging","outer":0,"inner":0}"#]);
        assert_eq!(o.stdout.trim(), "@in-triangulation");
    }
}
