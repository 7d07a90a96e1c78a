use std::path::PathBuf;
use std::process::ExitCode;

use bsf_kit::corpus::{self, EntryReport};
use bsf_kit::render;
use bsf_kit::run::run_text;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::Value;

#[derive(Parser)]
#[command(name = "bsf-kit", version, about = "Run commutative-algebra and blow-up jobs")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run a job file.
    Run {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// List or run the golden corpus.
    Corpus {
        #[command(subcommand)]
        action: CorpusCmd,
    },
}

#[derive(Subcommand)]
enum CorpusCmd {
    List,
    Run {
        /// Entry name, or `all`.
        name: String,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

fn emit(doc: &Value, format: Format) {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(doc).expect("serializable")),
        Format::Text => print!("{}", render::text(doc)),
    }
}

fn corpus_text(reports: &[EntryReport]) -> String {
    let mut out = String::new();
    for r in reports {
        out.push_str(&format!("{} {}\n", if r.passed { "PASS" } else { "FAIL" }, r.name));
        for f in &r.failures {
            out.push_str(&format!("    {f}\n"));
        }
    }
    let passed = reports.iter().filter(|r| r.passed).count();
    out.push_str(&format!("{passed}/{} entries passed\n", reports.len()));
    out
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match cli.cmd {
        Cmd::Run { file, format } => {
            let text = match std::fs::read_to_string(&file) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("bsf-kit: cannot read {}: {e}", file.display());
                    return ExitCode::from(1);
                }
            };
            let out = run_text(&text);
            emit(&out.doc, format);
            ExitCode::from(out.exit as u8)
        }
        Cmd::Corpus { action: CorpusCmd::List } => {
            for e in corpus::ENTRIES {
                println!("{}", e.name);
            }
            ExitCode::SUCCESS
        }
        Cmd::Corpus { action: CorpusCmd::Run { name, format } } => {
            let selected: Vec<_> = if name == "all" {
                corpus::ENTRIES.iter().collect()
            } else {
                match corpus::find(&name) {
                    Some(e) => vec![e],
                    None => {
                        eprintln!("bsf-kit: no corpus entry `{name}` (try `bsf-kit corpus list`)");
                        return ExitCode::from(1);
                    }
                }
            };
            let reports = corpus::run_entries(&selected);
            match format {
                Format::Json => emit(&corpus::summary(&reports), format),
                Format::Text => print!("{}", corpus_text(&reports)),
            }
            if reports.iter().all(|r| r.passed) {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
    }
}
