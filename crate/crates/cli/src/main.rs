use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use lfr::check::TraceEvent;
use lfr::lfi::text::print_lsig;
use lfr::load::Loaded;
use lfr::oracle::declarative_check;
use lfr::print::Printer;
use lfr::subst::DEFAULT_FUEL;
use lfr::translate::{trans_sig, verify, verify_queries, Fault, TransOptions, TransResult, VerifyError};
use lfr::{eta_expand, erase_type, load_str, Atomic, Checker, Context, Decl, Diagnostic, Head, Options, Span, Stage};

#[derive(Parser)]
#[command(name = "lfr", version, about = "Check LF signatures with refinement types and translate them to LF with irrelevance")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Parse, type-check and sort-check a signature.
    Check {
        #[command(flatten)]
        common: Common,
        /// Cross-check every sort declaration with the bounded declarative rules.
        #[arg(long, value_name = "N")]
        oracle_depth: Option<u32>,
    },
    /// Translate a signature; writes OUT and OUT.prov.
    Translate {
        #[command(flatten)]
        common: Common,
        /// Output file (default: FILE with extension .lfi).
        #[arg(short = 'o', value_name = "OUT")]
        out: Option<PathBuf>,
        /// Skip checking the translated signature.
        #[arg(long)]
        no_verify: bool,
    },
    /// Translate a signature and check the result, including every proof constant.
    Verify {
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args)]
struct Common {
    file: PathBuf,
    /// Print every rule applied, per declaration.
    #[arg(long)]
    trace: bool,
    /// Allow at most one sort declaration per constant.
    #[arg(long)]
    strict: bool,
    #[arg(long, value_enum, hide = true)]
    inject_fault: Option<FaultArg>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FaultArg {
    SwapProjections,
}

const EXIT_CHECK: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_VERIFY: u8 = 3;

struct Failure {
    code: u8,
    lines: Vec<String>,
}

impl Failure {
    fn new(code: u8, line: String) -> Failure {
        Failure { code, lines: vec![line] }
    }
}

fn stage_code(stage: Stage) -> u8 {
    match stage {
        Stage::Parse => EXIT_PARSE,
        Stage::Check => EXIT_CHECK,
        Stage::Verify => EXIT_VERIFY,
    }
}

fn fuel() -> Result<u64, Failure> {
    match std::env::var("LFR_FUEL") {
        Err(_) => Ok(DEFAULT_FUEL),
        Ok(v) => v.trim().parse().map_err(|_| Failure::new(EXIT_PARSE, format!("lfr: error: LFR_FUEL must be a number, found `{v}`"))),
    }
}

struct Session<'a> {
    common: &'a Common,
    name: String,
    fuel: u64,
}

impl Session<'_> {
    fn diag(&self, d: &Diagnostic) -> Failure {
        Failure::new(stage_code(d.stage), d.render(&self.name))
    }

    fn load(&self) -> Result<(Loaded, Duration), Failure> {
        let text = std::fs::read_to_string(&self.common.file)
            .map_err(|e| Failure::new(EXIT_PARSE, format!("{}: error: cannot read file: {e}", self.name)))?;
        let opts = Options { strict: self.common.strict, fuel: self.fuel, trace: self.common.trace };
        let start = Instant::now();
        let loaded = load_str(&text, &opts).map_err(|d| self.diag(&d))?;
        Ok((loaded, start.elapsed()))
    }

    fn trans_opts(&self) -> TransOptions {
        TransOptions {
            fault: self.common.inject_fault.map(|FaultArg::SwapProjections| Fault::SwapProjections),
            fuel: Some(self.fuel),
            trace: self.common.trace,
        }
    }

    fn translate(&self, loaded: &Loaded) -> Result<(TransResult, Vec<(usize, TraceEvent)>), Failure> {
        trans_sig(&loaded.sig, &self.trans_opts()).map_err(|(i, e)| {
            let d = Diagnostic::verify(loaded.spans[i], format!("translation failed: {e}"));
            self.diag(&d)
        })
    }

    fn verify(&self, loaded: &Loaded, tr: &TransResult) -> Result<usize, Failure> {
        let opts = self.trans_opts();
        let fail = |span: Span, e: VerifyError| self.diag(&Diagnostic::verify(span, format!("internal error: {e}")));
        let proofs = verify(&loaded.sig, tr, &opts).map_err(|e| {
            let span = loaded.spans.get(e.source_index(Some(tr))).copied().unwrap_or_default();
            fail(span, e)
        })?;
        let queries: Vec<_> = loaded.queries.iter().map(|q| (q.term.clone(), q.sort.clone(), q.ty.clone())).collect();
        verify_queries(&loaded.sig, tr, &opts, &queries).map_err(|e| {
            let span = loaded.queries[e.source_index(None)].span;
            fail(span, e)
        })?;
        Ok(proofs + queries.len())
    }
}

type Duration = std::time::Duration;

fn print_trace(sig: &lfr::Signature, label: &str, trace: &[(usize, TraceEvent)]) {
    let p = Printer::new(sig);
    let mut last = None;
    for (i, ev) in trace {
        if last != Some(*i) {
            println!("{label} {}", p.decl(&sig.decls()[*i]));
            last = Some(*i);
        }
        if ev.detail.is_empty() {
            println!("  {}", ev.rule);
        } else {
            println!("  {} {}", ev.rule, ev.detail);
        }
    }
}

fn summary(loaded: &Loaded) -> String {
    let mut counts = [0usize; 5];
    for d in loaded.sig.decls() {
        let k = match d {
            Decl::TypeFam(..) => 0,
            Decl::TermConst(..) => 1,
            Decl::SortFam(..) => 2,
            Decl::ConstRef(..) => 3,
            Decl::SubDecl(..) => 4,
        };
        counts[k] += 1;
    }
    format!(
        "{} declarations ({} type families, {} constants, {} sort families, {} sort declarations, {} subsorts)",
        loaded.sig.decls().len(),
        counts[0],
        counts[1],
        counts[2],
        counts[3],
        counts[4]
    )
}

/// Runs the bounded declarative rules on `η(c) ⇐ S` for every `c :: S`.
fn oracle_report(loaded: &Loaded, depth: u32) -> (usize, usize) {
    let sig = &loaded.sig;
    let ch = Checker::new(sig);
    let ctx = Context::new();
    let mut total = 0;
    let mut confirmed = 0;
    for d in sig.decls() {
        let Decl::ConstRef(c, s) = d else { continue };
        let Some(a) = sig.const_type(c) else { continue };
        let eta = eta_expand(&erase_type(a), &Atomic { head: Head::Const(c.clone()), spine: vec![] });
        total += 1;
        if declarative_check(&ch, &ctx, &eta, s, depth) {
            confirmed += 1;
        }
    }
    (confirmed, total)
}

fn default_out(file: &Path) -> PathBuf {
    file.with_extension("lfi")
}

fn provenance_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".prov");
    PathBuf::from(s)
}

fn provenance(loaded: &Loaded, tr: &TransResult) -> String {
    let p = Printer::new(&loaded.sig);
    let mut out = String::new();
    for (d, &i) in tr.sig.decls().iter().zip(&tr.provenance) {
        let line = loaded.spans[i].start.line;
        out.push_str(&format!("{} <- {} (line {line})\n", d.name(), p.decl(&loaded.sig.decls()[i])));
    }
    out
}

fn run(cli: &Cli) -> Result<(), Failure> {
    let common = match &cli.cmd {
        Cmd::Check { common, .. } | Cmd::Translate { common, .. } | Cmd::Verify { common } => common,
    };
    let session = Session { common, name: common.file.display().to_string(), fuel: fuel()? };
    let (loaded, elapsed) = session.load()?;
    if common.trace {
        print_trace(&loaded.sig, "check", &loaded.trace);
    }
    match &cli.cmd {
        Cmd::Check { oracle_depth, .. } => {
            println!("{}: ok, {} in {:.3}s", session.name, summary(&loaded), elapsed.as_secs_f64());
            if let Some(depth) = oracle_depth {
                let (ok, total) = oracle_report(&loaded, *depth);
                println!("oracle (depth {depth}): {ok} of {total} sort declarations confirmed");
            }
        }
        Cmd::Translate { out, no_verify, .. } => {
            let (tr, trace) = session.translate(&loaded)?;
            if common.trace {
                print_trace(&loaded.sig, "translate", &trace);
            }
            if !no_verify {
                session.verify(&loaded, &tr)?;
            }
            let out = out.clone().unwrap_or_else(|| default_out(&common.file));
            let write = |path: &Path, text: String| {
                std::fs::write(path, text)
                    .map_err(|e| Failure::new(EXIT_PARSE, format!("{}: error: cannot write: {e}", path.display())))
            };
            write(&out, print_lsig(&tr.sig))?;
            let prov = provenance_path(&out);
            write(&prov, provenance(&loaded, &tr))?;
            println!("{}: wrote {} declarations to {} ({})", session.name, tr.sig.decls().len(), out.display(), prov.display());
        }
        Cmd::Verify { .. } => {
            let (tr, trace) = session.translate(&loaded)?;
            if common.trace {
                print_trace(&loaded.sig, "translate", &trace);
            }
            let proofs = session.verify(&loaded, &tr)?;
            println!(
                "{}: ok, {} target declarations check, {proofs} proofs of sort declarations and queries check",
                session.name,
                tr.sig.decls().len()
            );
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            for l in &f.lines {
                eprintln!("{l}");
            }
            ExitCode::from(f.code)
        }
    }
}
