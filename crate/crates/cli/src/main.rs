mod report;

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use niho_core::field::ExtCtx;
use niho_core::mvpoly::{gcd_univariate, parse_with_resolver, pseudo_divrem, resultant, Corpus, MvPoly, KNOWN_VARS};
use niho_core::pp::{criterion, is_pp_exhaustive, is_pp_mu, TrinomialInstance, EXHAUSTIVE_MAX_BITS};
use niho_core::replay::{derive_certificates, run_all, with_dependencies, Stage, Status};
use niho_core::sweep::{verify_theorem, Necessity, SweepConfig};

use report::{Outcome, Report, ResultEntry};

/// Permutation checks for X^4(1 + a X^(q-1) + b X^(3(q-1))) over F_{q^2}, q = 2^n.
#[derive(Debug, Parser)]
#[command(name = "niho", version)]
struct Cli {
    /// Print the structured report instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide whether one trinomial permutes F_{q^2}.
    PpCheck {
        #[arg(long)]
        n: u32,
        /// Element of F_q, e.g. 0x3.
        #[arg(long)]
        a: String,
        /// Element of F_{q^2} as u:v, meaning u + v z.
        #[arg(long)]
        b: String,
        #[arg(long, value_enum, default_value_t = Method::All)]
        method: Method,
    },
    /// Sweep a whole field: every pair the criterion accepts, plus necessity checks.
    VerifyTheorem {
        #[arg(long)]
        n: u32,
        /// Random off-diagonal pairs to test when the field is too big to sweep.
        #[arg(long, default_value_t = 10_000)]
        budget: u64,
        #[arg(long, default_value_t = default_workers())]
        workers: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Test every off-diagonal pair regardless of field size.
        #[arg(long)]
        all_pairs: bool,
    },
    /// Recompute the symbolic argument stage by stage.
    Replay {
        /// Comma-separated stage names, or "all". Dependencies are added.
        #[arg(long, default_value = "all")]
        stages: String,
        #[arg(long)]
        corpus_dir: Option<PathBuf>,
    },
    /// Polynomial tools over F2. Inputs may use @name for corpus entries.
    Poly {
        #[arg(value_enum)]
        tool: Tool,
        f: String,
        g: String,
        #[arg(long)]
        var: String,
        #[arg(long)]
        corpus_dir: Option<PathBuf>,
    },
    /// Maintain a corpus directory.
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },
}

#[derive(Debug, Subcommand)]
enum CorpusAction {
    /// Write the built-in corpus and its manifest to a directory.
    Export { dir: PathBuf },
    /// Rederive the membership multipliers of a corpus directory and rewrite it.
    Certify {
        #[arg(long)]
        corpus_dir: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Criterion,
    Mu,
    Exhaustive,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Tool {
    Resultant,
    Gcd,
    PseudoRem,
}

fn default_workers() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

/// Parse or usage problem, as opposed to a mathematical disagreement.
const EXIT_USAGE: u8 = 1;
const EXIT_DISAGREE: u8 = 2;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok((report, text)) => {
            if cli.json {
                println!("{}", report.to_json());
            } else {
                print!("{text}");
            }
            if report.failed() {
                ExitCode::from(EXIT_DISAGREE)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn run(cli: &Cli) -> Result<(Report, String)> {
    match &cli.command {
        Command::PpCheck { n, a, b, method } => pp_check(*n, a, b, *method),
        Command::VerifyTheorem {
            n,
            budget,
            workers,
            seed,
            all_pairs,
        } => verify(*n, *budget, *workers, *seed, *all_pairs),
        Command::Replay { stages, corpus_dir } => replay(stages, corpus_dir.as_ref()),
        Command::Poly {
            tool,
            f,
            g,
            var,
            corpus_dir,
        } => poly(*tool, f, g, var, corpus_dir.as_ref()),
        Command::Corpus { action } => corpus(action),
    }
}

fn load_corpus(dir: Option<&PathBuf>) -> Result<Corpus> {
    match dir {
        None => Ok(Corpus::builtin()),
        Some(d) => Corpus::load_dir(d).with_context(|| format!("loading corpus from {}", d.display())),
    }
}

fn pp_check(n: u32, a: &str, b: &str, method: Method) -> Result<(Report, String)> {
    let start = Instant::now();
    let ext = ExtCtx::of_degree(n)?;
    let a_val = ext.base().parse(a).with_context(|| format!("parsing a = {a:?}"))?;
    let b_val = ext.parse(b).with_context(|| format!("parsing b = {b:?}"))?;
    let inst = TrinomialInstance::new(&ext, a_val, b_val)?;

    let mut verdicts: Vec<(&str, &str, bool)> = Vec::new();
    if matches!(method, Method::Criterion | Method::All) {
        verdicts.push(("criterion", "a = b and X^3+X+1/a has no root in F_q", criterion(&inst)?));
    }
    if matches!(method, Method::Mu | Method::All) {
        verdicts.push(("mu", "bijection on the circle of order q+1", is_pp_mu(&inst)));
    }
    let exhaustive_fits = 2 * n <= EXHAUSTIVE_MAX_BITS;
    if method == Method::Exhaustive || (method == Method::All && exhaustive_fits) {
        verdicts.push(("exhaustive", "image of every x in F_{q^2}", is_pp_exhaustive(&inst)?));
    }

    let agree = verdicts.windows(2).all(|w| w[0].2 == w[1].2);
    let mut results: Vec<ResultEntry> = verdicts
        .iter()
        .map(|&(m, anchor, pp)| ResultEntry::new(m, anchor, Outcome::Info).with("pp", pp))
        .collect();
    if verdicts.len() > 1 {
        let status = if agree { Outcome::Pass } else { Outcome::Fail };
        results.push(ResultEntry::new("agreement", "all methods give the same verdict", status));
    }

    let mut text = format!("q = {}, a = {}, b = {}\n", ext.q(), ext.base().format(a_val), ext.format(b_val));
    for (m, _, pp) in &verdicts {
        let _ = writeln!(text, "{m:<11} {}", if *pp { "PP" } else { "not PP" });
    }
    if verdicts.len() > 1 {
        let _ = writeln!(text, "{:<11} {}", "agreement", if agree { "yes" } else { "NO" });
    }
    let config = json!({ "n": n, "a": a, "b": b, "method": format!("{method:?}").to_lowercase() });
    Ok((Report::new("pp-check", config, results, start.elapsed().as_millis()), text))
}

fn verify(n: u32, budget: u64, workers: usize, seed: u64, all_pairs: bool) -> Result<(Report, String)> {
    let start = Instant::now();
    let mut cfg = SweepConfig::new(n, budget, workers, seed);
    if all_pairs {
        cfg.necessity = Necessity::All;
    }
    let r = verify_theorem(&cfg)?;
    let pass = |ok| if ok { Outcome::Pass } else { Outcome::Fail };
    // A sufficiency failure is a criterion pair the other oracles reject.
    let (suff, nec): (Vec<_>, Vec<_>) = r.disagreements.iter().partition(|d| d.criterion);
    let results = vec![
        ResultEntry::new("counts", "number of PPs equals number of a with X^3+X+1/a rootless", pass(r.pp_count == r.rootless_count))
            .with("pp_count", r.pp_count)
            .with("rootless_count", r.rootless_count),
        ResultEntry::new("sufficiency", "b = a is a PP for every a with X^3+X+1/a rootless", pass(suff.is_empty()))
            .with("checked", r.diagonal_checked)
            .with("disagreements", &suff),
        ResultEntry::new("necessity", "pairs outside the criterion are not PPs", pass(nec.is_empty()))
            .with("checked", r.off_diagonal_checked)
            .with("exhaustive_checked", r.exhaustive_checked)
            .with("disagreements", &nec),
    ];
    let mut text = format!("q = {}: {} diagonal and {} off-diagonal pairs", r.q, r.diagonal_checked, r.off_diagonal_checked);
    if r.exhaustive_checked > 0 {
        let _ = write!(text, ", {} also scanned over F_{{q^2}}", r.exhaustive_checked);
    }
    let _ = writeln!(text, "\nPP pairs {} / rootless cubics {}", r.pp_count, r.rootless_count);
    for d in &r.disagreements {
        let _ = writeln!(text, "DISAGREEMENT a = {} b = {}: criterion {} mu {} exhaustive {:?}", d.a, d.b, d.criterion, d.mu, d.exhaustive);
    }
    let _ = writeln!(text, "{}", if r.ok() { "ok" } else { "FAILED" });
    let config = serde_json::to_value(&cfg)?;
    Ok((Report::new("verify-theorem", config, results, start.elapsed().as_millis()), text))
}

fn parse_stages(spec: &str) -> Result<Vec<Stage>> {
    if spec.trim() == "all" {
        return Ok(Stage::ALL.to_vec());
    }
    let named = spec
        .split(',')
        .map(|s| s.trim().parse::<Stage>())
        .collect::<Result<Vec<_>, _>>()?;
    if named.is_empty() {
        bail!("no stages given");
    }
    Ok(with_dependencies(&named))
}

fn replay(stages: &str, corpus_dir: Option<&PathBuf>) -> Result<(Report, String)> {
    let start = Instant::now();
    let stages = parse_stages(stages)?;
    let corpus = load_corpus(corpus_dir)?;
    let run = run_all(&corpus, &stages)?;

    let mut results = Vec::new();
    let mut text = String::new();
    let corpus_ok = run.corpus.mismatches.is_empty();
    results.push(
        ResultEntry::new("corpus/digests", "every corpus file matches its manifest digest", if corpus_ok { Outcome::Pass } else { Outcome::Fail })
            .with("entries", run.corpus.entries)
            .with("mismatches", &run.corpus.mismatches),
    );
    let _ = writeln!(text, "corpus: {} entries, {} digest mismatches", run.corpus.entries, run.corpus.mismatches.len());
    for m in &run.corpus.mismatches {
        let _ = writeln!(text, "  {m}");
    }
    for st in &run.stages {
        let _ = writeln!(text, "== {} ({} ms)", st.stage, st.millis);
        for r in &st.records {
            let (outcome, tag) = match r.status {
                Status::Pass => (Outcome::Pass, "PASS"),
                Status::Fail => (Outcome::Fail, "FAIL"),
                Status::DisplayMismatch => (Outcome::Pass, "DISP"),
            };
            let _ = writeln!(text, "{tag} {:<24} {:>6} ms  {}", r.id, r.millis, r.anchor);
            for note in &r.notes {
                let _ = writeln!(text, "       {note}");
            }
            if let Some(w) = &r.witness {
                let _ = writeln!(text, "       {w}");
            }
            let mut e = ResultEntry::new(format!("{}/{}", st.stage, r.id), &r.anchor, outcome)
                .with("replay_status", r.status)
                .with("millis", r.millis);
            if let Some(w) = &r.witness {
                e = e.with("witness", w);
            }
            if !r.notes.is_empty() {
                e = e.with("notes", &r.notes);
            }
            results.push(e);
        }
    }
    let report = Report::new(
        "replay",
        json!({ "stages": stages, "corpus_dir": corpus_dir }),
        results,
        start.elapsed().as_millis(),
    );
    let _ = writeln!(text, "{} passed, {} failed", report.summary.pass, report.summary.fail);
    Ok((report, text))
}

fn poly(tool: Tool, f: &str, g: &str, var: &str, corpus_dir: Option<&PathBuf>) -> Result<(Report, String)> {
    let start = Instant::now();
    let corpus = load_corpus(corpus_dir)?;
    let resolve = |name: &str| corpus.get(name).ok().cloned();
    let read = |text: &str| -> Result<MvPoly> {
        parse_with_resolver(text, KNOWN_VARS, &resolve).with_context(|| format!("parsing {text:?}"))
    };
    let (pf, pg) = (read(f)?, read(g)?);
    let mut entry = ResultEntry::new(format!("{tool:?}").to_lowercase(), format!("{f} , {g} in {var}"), Outcome::Info);
    let out = match tool {
        Tool::Resultant => resultant(&pf, &pg, var)?,
        Tool::Gcd => gcd_univariate(&pf, &pg, var)?,
        Tool::PseudoRem => {
            let d = pseudo_divrem(&pf, &pg, var)?;
            entry = entry.with("exponent", d.exponent);
            d.remainder
        }
    };
    let text = out.to_text();
    entry = entry.with("output", &text);
    let config = json!({ "tool": entry.id, "f": f, "g": g, "var": var });
    Ok((Report::new("poly", config, vec![entry], start.elapsed().as_millis()), format!("{text}\n")))
}

fn corpus(action: &CorpusAction) -> Result<(Report, String)> {
    let start = Instant::now();
    let (dir, mut corpus, certify) = match action {
        CorpusAction::Export { dir } => (dir, Corpus::builtin(), false),
        CorpusAction::Certify { corpus_dir } => (corpus_dir, load_corpus(Some(corpus_dir))?, true),
    };
    let mut added = 0;
    if certify {
        for e in derive_certificates(&corpus)? {
            corpus.insert(e);
            added += 1;
        }
    }
    std::fs::create_dir_all(dir)?;
    corpus.write_dir(dir)?;
    let text = format!("wrote {} entries to {} ({added} certificates)\n", corpus.len(), dir.display());
    let entry = ResultEntry::new("write", "corpus directory written", Outcome::Info)
        .with("entries", corpus.len())
        .with("certificates", added);
    let config = json!({ "dir": dir, "certify": certify });
    Ok((Report::new("corpus", config, vec![entry], start.elapsed().as_millis()), text))
}
