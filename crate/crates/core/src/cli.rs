//! Command-line front end.
//!
//! Exit codes: 0 = verified / success, 1 = a checked property was violated (the
//! counterexample is printed) or output failed, 2 = invalid invocation.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::construction::{self, SetSpec};
use crate::edges;
use crate::error::Error;
use crate::hamming::{self, format_vertex, GraphParams};
use crate::oracle::{self, FOptions};
use crate::report::Document;
use crate::verifier::{self, CrossLemma, DegreeStrategy, VerifyOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "hamming-witness",
    version,
    about = "Build and audit (alpha+1)-vertex induced subgraphs of maximum degree 1 in Hamming graphs H(n,k)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the members of X:s, Y:s,t, Z:s,t,c or W in ascending rank order.
    Gen(GenArgs),
    /// Audit W: k^(n-1)+1 vertices and induced maximum degree exactly 1.
    Verify(VerifyArgs),
    /// Closed-form set sizes (arbitrary precision).
    Stats(StatsArgs),
    /// Brute-force independence number (mis) or f(G) (f) on a tiny graph.
    Oracle(OracleArgs),
    /// Exhaustively check one of the supporting lemmas.
    CheckLemma(CheckLemmaArgs),
}

#[derive(Debug, Args)]
struct ParamArgs {
    /// Dimension (number of coordinates).
    #[arg(short = 'n')]
    n: usize,
    /// Alphabet size.
    #[arg(short = 'k')]
    k: u32,
}

impl ParamArgs {
    fn params(&self) -> Result<GraphParams, Error> {
        GraphParams::new(self.n, self.k)
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum GenFormat {
    /// Vertex text form, one per line.
    Digits,
    /// Decimal rank, one per line.
    Ranks,
    /// DIMACS-like edge list of the induced subgraph.
    Edges,
}

#[derive(Debug, Args)]
struct GenArgs {
    #[arg(long)]
    spec: SetSpec,
    #[command(flatten)]
    params: ParamArgs,
    #[arg(long, value_enum, default_value = "digits")]
    format: GenFormat,
    #[arg(long, default_value_t = 1)]
    workers: usize,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum StrategyArg {
    Streaming,
    Table,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[command(flatten)]
    params: ParamArgs,
    #[arg(long, default_value_t = 1)]
    workers: usize,
    /// Write the matching certificate (`pair`/`isolated` lines) to this file.
    #[arg(long)]
    certificate: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "streaming")]
    strategy: StrategyArg,
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args)]
struct StatsArgs {
    #[command(flatten)]
    params: ParamArgs,
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OracleWhich {
    Mis,
    F,
}

#[derive(Debug, Args)]
struct OracleArgs {
    which: OracleWhich,
    #[command(flatten)]
    params: ParamArgs,
    /// Maximum number of (alpha+1)-subsets for `f`.
    #[arg(long, default_value_t = oracle::DEFAULT_SUBSET_BUDGET)]
    budget: u64,
    /// Maximum k^n to materialize.
    #[arg(long, default_value_t = oracle::DEFAULT_CAP)]
    cap: u64,
    /// Do not seed the `f` scan with W.
    #[arg(long)]
    no_seed: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum LemmaWhich {
    Independence,
    Classify,
    NoCross,
    UniquePartner,
}

#[derive(Debug, Args)]
struct CheckLemmaArgs {
    which: LemmaWhich,
    #[command(flatten)]
    params: ParamArgs,
    /// Check every (n', k') with 1 <= n' <= n and 3 <= k' <= k instead of (n, k) alone.
    #[arg(long)]
    sweep: bool,
    /// Vertex-neighbour probe budget per individual check.
    #[arg(long, default_value_t = verifier::DEFAULT_PROBE_BUDGET)]
    budget: u64,
    #[arg(long)]
    json: bool,
}

enum Failure {
    Usage(Error),
    Violation(Document),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

/// Parses `args` (program name first) and runs the command, writing results to `out`
/// and diagnostics to `err`. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            if code == 0 {
                let _ = out.write_all(text.as_bytes());
            } else {
                let _ = err.write_all(text.as_bytes());
            }
            return if code == 0 { EXIT_OK } else { EXIT_USAGE };
        }
    };
    let mut out = BufWriter::new(out);
    let result = match cli.command {
        Command::Gen(a) => cmd_gen(&a, &mut out),
        Command::Verify(a) => cmd_verify(&a, &mut out),
        Command::Stats(a) => cmd_stats(&a, &mut out),
        Command::Oracle(a) => cmd_oracle(&a, &mut out),
        Command::CheckLemma(a) => cmd_check_lemma(&a, &mut out),
    };
    let flushed = out.flush();
    match (result, flushed) {
        (Ok(()), Ok(())) => EXIT_OK,
        (Err(Failure::Usage(Error::VerificationFailed(c))), _) => {
            let _ = writeln!(err, "error: verification failed: {c}");
            EXIT_VIOLATION
        }
        (Err(Failure::Usage(e)), _) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
        (Err(Failure::Violation(doc)), _) => {
            let _ = writeln!(
                err,
                "error: property violated: {}",
                doc.get("counterexample").unwrap_or("see report")
            );
            EXIT_VIOLATION
        }
        (Err(Failure::Io(e)), _) | (Ok(()), Err(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_VIOLATION
        }
    }
}

fn emit(doc: &Document, json: bool, out: &mut dyn Write) -> io::Result<()> {
    if json {
        writeln!(out, "{}", doc.to_json())
    } else {
        out.write_all(doc.to_text().as_bytes())
    }
}

fn cmd_gen(args: &GenArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let params = args.params.params()?;
    args.spec.validate(&params)?;
    if args.workers == 0 {
        return Err(Error::InvalidParams("--workers must be at least 1".into()).into());
    }
    match args.format {
        GenFormat::Digits | GenFormat::Ranks => {
            let ranks = matches!(args.format, GenFormat::Ranks);
            let mut io_err = None;
            let walked = construction::for_each_member(args.spec, &params, args.workers, |v| {
                let line = if ranks {
                    hamming::rank_of(v.coords(), params.k()).to_string()
                } else {
                    format_vertex(v, &params)
                };
                writeln!(out, "{line}").map_err(|e| {
                    let msg = e.to_string();
                    io_err = Some(e);
                    Error::Parse(msg)
                })
            });
            if let Some(e) = io_err {
                return Err(Failure::Io(e));
            }
            walked?;
        }
        GenFormat::Edges => {
            let list = edges::induced_edges(args.spec, &params, args.workers)?;
            let comment = format!("{params} induced by {}; vertex id = rank + 1", args.spec);
            list.write(out, Some(&comment))?;
        }
    }
    Ok(())
}

fn cmd_verify(args: &VerifyArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let params = args.params.params()?;
    params.require_construction()?;
    let options = VerifyOptions {
        workers: args.workers,
        strategy: match args.strategy {
            StrategyArg::Streaming => DegreeStrategy::Streaming,
            StrategyArg::Table => DegreeStrategy::Table,
        },
    };
    match verifier::verify_w(&params, options) {
        Ok(audit) => {
            let mut doc = audit.report.to_document();
            doc.push("expected_vertex_count", construction::size_w(&params)?)
                .push("pairs", audit.certificate.pairs.len())
                .push("isolated", audit.certificate.isolated.len())
                .push("status", "verified");
            emit(&doc, args.json, out)?;
            if let Some(path) = &args.certificate {
                let mut file = BufWriter::new(File::create(path)?);
                file.write_all(audit.certificate.to_text(&params).as_bytes())?;
                file.flush()?;
            }
            Ok(())
        }
        Err(Error::VerificationFailed(c)) => {
            let mut doc = Document::new();
            doc.push("n", params.n())
                .push("k", params.k())
                .push("spec", SetSpec::W)
                .push("status", "failed")
                .push("counterexample", &c);
            emit(&doc, args.json, out)?;
            Err(Failure::Violation(doc))
        }
        Err(e) => Err(e.into()),
    }
}

fn cmd_stats(args: &StatsArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let params = args.params.params()?;
    let mut doc = Document::new();
    doc.push("n", params.n())
        .push("k", params.k())
        .push("alpha", construction::size_alpha(&params))
        .push("y_size_s_eq_t", construction::size_y(1, 1, &params)?)
        .push("y_size_s_ne_t", construction::size_y(0, 1, &params)?);
    match params.require_construction() {
        Ok(()) => {
            doc.push("w_size", construction::size_w(&params)?)
                .push("w_edges", construction::predicted_w_edges(&params)?);
        }
        Err(e) => {
            doc.push("w_status", e);
        }
    }
    emit(&doc, args.json, out)?;
    Ok(())
}

fn cmd_oracle(args: &OracleArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let params = args.params.params()?;
    let start = Instant::now();
    let g = oracle::build_dense(&params, args.cap)?;
    let mut doc = Document::new();
    doc.push("method", "oracle").push("n", params.n()).push("k", params.k());
    let agrees;
    match args.which {
        OracleWhich::Mis => {
            let mis = oracle::maximum_independent_set(&g)?;
            let predicted = construction::size_alpha(&params);
            agrees = num_bigint::BigUint::from(mis.size) == predicted;
            doc.push("which", "mis")
                .push("value", mis.size)
                .push("predicted", predicted)
                .push("subsets_examined", mis.nodes);
        }
        OracleWhich::F => {
            let alpha = oracle::exact_mis(&g)?;
            let mut options = FOptions {
                budget: args.budget,
                seed: None,
            };
            let mut construction_degree = None;
            if params.k() >= 3 && !args.no_seed {
                let w: Vec<usize> = construction::enumerate_set(SetSpec::W, &params)?
                    .map(|v| hamming::rank_of(v.coords(), params.k()) as usize)
                    .collect();
                construction_degree = Some(g.induced_max_degree(&w));
                options.seed = Some(w);
            }
            let f = oracle::exact_f(&g, alpha, &options)?;
            let predicted = oracle::predicted_f(&params);
            agrees = f.value as u64 == predicted && construction_degree.is_none_or(|d| d == f.value);
            doc.push("which", "f")
                .push("alpha", alpha)
                .push("value", f.value)
                .push("predicted", predicted)
                .push("seed", if options.seed.is_some() { "W" } else { "none" });
            if let Some(d) = construction_degree {
                doc.push("construction_max_degree", d);
            }
            doc.push("subsets_examined", f.subsets_examined)
                .push("nodes", f.nodes);
        }
    }
    doc.push("elapsed", format!("{:.3}s", start.elapsed().as_secs_f64()))
        .push("status", if agrees { "agrees" } else { "disagrees" });
    emit(&doc, args.json, out)?;
    if agrees {
        Ok(())
    } else {
        doc.push("counterexample", "oracle value differs from the predicted value");
        Err(Failure::Violation(doc))
    }
}

fn sweep_params(args: &CheckLemmaArgs) -> Result<Vec<GraphParams>, Error> {
    let top = args.params.params()?;
    if !args.sweep {
        return Ok(vec![top]);
    }
    let k_lo = top.k().min(3);
    let mut out = Vec::new();
    for k in k_lo..=top.k() {
        for n in 1..=top.n() {
            out.push(GraphParams::new(n, k)?);
        }
    }
    Ok(out)
}

fn bump(doc: &mut Document, key: &str, by: u64) {
    let cur: u64 = doc.get(key).and_then(|v| v.parse().ok()).unwrap_or(0);
    doc.push(key, cur + by);
}

fn cmd_check_lemma(args: &CheckLemmaArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let grid = sweep_params(args)?;
    let name = match args.which {
        LemmaWhich::Independence => "independence",
        LemmaWhich::Classify => "classify",
        LemmaWhich::NoCross => "no-cross",
        LemmaWhich::UniquePartner => "unique-partner",
    };
    let mut doc = Document::new();
    doc.push("lemma", name)
        .push("n", args.params.n)
        .push("k", args.params.k)
        .push("sweep", args.sweep)
        .push("param_sets", grid.len());
    let mut counterexample = None;
    let mut counts = Document::new();
    for params in &grid {
        let found = match args.which {
            LemmaWhich::Independence => {
                let s = verifier::sweep_independence(params, args.budget)?;
                bump(&mut counts, "sets_checked", s.sets_checked);
                s.counterexample.map(|c| c.to_string())
            }
            LemmaWhich::Classify => {
                let s = verifier::sweep_classify(params, args.budget)?;
                bump(&mut counts, "pairs_checked", s.pairs_checked);
                for case in [verifier::AdjacencyCase::Greater, verifier::AdjacencyCase::Less, verifier::AdjacencyCase::Equal] {
                    bump(&mut counts, &format!("case_{case}"), s.by_case.get(&case).copied().unwrap_or(0));
                }
                bump(&mut counts, "equal_last_value_skipped", s.equal_last_value);
                bump(&mut counts, "zero_vector_pairs_excluded", s.zero_vector_pairs);
                s.counterexample.map(|c| c.to_string())
            }
            LemmaWhich::NoCross | LemmaWhich::UniquePartner => {
                let lemma = if args.which == LemmaWhich::NoCross {
                    CrossLemma::NoCrossEdges
                } else {
                    CrossLemma::UniquePartner
                };
                let s = verifier::sweep_quadruples(lemma, params, args.budget)?;
                bump(&mut counts, "quadruples", s.quadruples);
                bump(&mut counts, "applicable", s.applicable);
                for (class, count) in &s.by_class {
                    let key = format!("class_{}", class.replace("t1=t2", "t1_eq_t2").replace('+', "_"));
                    bump(&mut counts, &key, *count);
                }
                s.counterexample
                    .map(|((s1, t1, s2, t2), c)| format!("(s1,t1,s2,t2) = ({s1},{t1},{s2},{t2}): {c}"))
            }
        };
        if let Some(c) = found {
            counterexample = Some(format!("{params}: {c}"));
            break;
        }
    }
    doc.extend(&counts);
    if args.which == LemmaWhich::Classify {
        doc.push("note", "the zero vector lies in no Y set; pairs touching it are excluded");
    }
    match counterexample {
        None => {
            doc.push("status", "passed");
            emit(&doc, args.json, out)?;
            Ok(())
        }
        Some(c) => {
            doc.push("status", "failed").push("counterexample", c);
            emit(&doc, args.json, out)?;
            Err(Failure::Violation(doc))
        }
    }
}
