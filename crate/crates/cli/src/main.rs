use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use hypernorm::classifier::{check_against_oracle, classify, render_machine, render_text};
use hypernorm::dsl::{compile_str, Evaluation};
use hypernorm::dump::{from_json_lines, to_json_lines, DumpError};
use hypernorm::exemplar::{build_exemplar, load_rows, read_rows, to_program, BUNDLED_ROWS};
use hypernorm::serializer::{render, render_axiom, RenderOptions};
use hypernorm::{FacetRegistry, Ontology};

/// Compile, classify and check pattern-built ontologies.
#[derive(Parser)]
#[command(name = "hypernorm", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Expand a program and print it as Manchester syntax.
    Compile {
        input: PathBuf,
        /// Write to this file instead of stdout.
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Include annotation sections (pattern provenance, labels, comments).
        #[arg(long)]
        annotations: bool,
        /// Include object property frames.
        #[arg(long)]
        properties: bool,
        /// Start with prefix declarations and the ontology line.
        #[arg(long)]
        header: bool,
        /// Print the axioms produced by each form to stderr.
        #[arg(long)]
        trace: bool,
    },
    /// Print the inferred class hierarchy.
    Classify {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Report classes outside the facet fragment instead of failing.
        #[arg(long)]
        skip_non_fragment: bool,
    },
    /// Compare the classifier with the brute-force oracle on every pair.
    Check {
        input: PathBuf,
        /// Give non-covering facets one synthetic extra value.
        #[arg(long)]
        open_world_pad: bool,
    },
    /// Build the amino-acid ontology and write it with its classification.
    Exemplar {
        /// Amino-acid table (defaults to the bundled Alanine row).
        #[arg(long)]
        rows: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Machine,
}

struct Loaded {
    ontology: Ontology,
    registry: FacetRegistry,
    evaluation: Option<Evaluation>,
}

/// Reads a JSON Lines dump (`.jsonl`) or a program in the DSL.
fn load(path: &Path) -> Result<Loaded> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("{}: cannot read input", path.display()))?;
    if path.extension().is_some_and(|e| e == "jsonl") {
        let ontology = from_json_lines(&text).map_err(|e| match &e {
            DumpError::Json { line, .. } | DumpError::Model { line, .. } => {
                anyhow!("{}:{line}:1: {e}", path.display())
            }
            DumpError::MissingHeader => anyhow!("{}:1:1: {e}", path.display()),
        })?;
        let registry = FacetRegistry::from_ontology(&ontology);
        return Ok(Loaded {
            ontology,
            registry,
            evaluation: None,
        });
    }
    let evaluation = compile_str(&text).map_err(|e| {
        anyhow!(
            "{}:{}:{}: {}",
            path.display(),
            e.pos.line,
            e.pos.col,
            e.kind
        )
    })?;
    Ok(Loaded {
        ontology: evaluation.ontology.clone(),
        registry: evaluation.registry.clone(),
        evaluation: Some(evaluation),
    })
}

fn write_output(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("{}: cannot write", p.display())),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Compile {
            input,
            output,
            annotations,
            properties,
            header,
            trace,
        } => {
            let loaded = load(&input)?;
            if trace {
                let mut err = std::io::stderr().lock();
                for entry in loaded.evaluation.iter().flat_map(|e| &e.trace) {
                    writeln!(
                        err,
                        "{}:{}: {}",
                        input.display(),
                        entry.form.pos,
                        entry.form
                    )?;
                    for ax in &entry.axioms {
                        writeln!(err, "    {}", render_axiom(ax))?;
                    }
                }
            }
            let opts = RenderOptions {
                include_annotations: annotations,
                include_properties: properties,
                include_header: header,
            };
            write_output(output.as_deref(), &render(&loaded.ontology, &opts))
        }
        Command::Classify {
            input,
            format,
            skip_non_fragment,
        } => {
            let loaded = load(&input)?;
            let dag = classify(&loaded.ontology, &loaded.registry, skip_non_fragment)
                .map_err(|e| anyhow!("{}: {e}", input.display()))?;
            let text = match format {
                Format::Text => render_text(&dag),
                Format::Machine => render_machine(&dag),
            };
            write_output(None, &text)
        }
        Command::Check {
            input,
            open_world_pad,
        } => {
            let loaded = load(&input)?;
            let report = check_against_oracle(&loaded.ontology, &loaded.registry, open_world_pad)
                .map_err(|e| anyhow!("{}: {e}", input.display()))?;
            for m in &report.mismatches {
                eprintln!(
                    "{}: mismatch: {} below {}: classifier {}, oracle {}",
                    input.display(),
                    m.sub,
                    m.sup,
                    m.classifier,
                    m.oracle
                );
            }
            for s in &report.skipped {
                eprintln!("{}: skipped {}: {}", input.display(), s.class, s.reason);
            }
            println!("{}", report.summary());
            if !report.passed() {
                bail!("{}: classifier disagrees with the oracle", input.display());
            }
            Ok(())
        }
        Command::Exemplar { rows, out } => {
            let rows = match &rows {
                Some(p) => load_rows(p).map_err(|e| anyhow!("{}: {e}", p.display()))?,
                None => read_rows(BUNDLED_ROWS.as_bytes())?,
            };
            let ex = build_exemplar(&rows)?;
            fs::create_dir_all(&out)
                .with_context(|| format!("{}: cannot create", out.display()))?;
            let dag = classify(&ex.ontology, &ex.registry, false)?;
            let files = [
                ("exemplar.onto", to_program(&rows)),
                ("exemplar.omn", render(&ex.ontology, &RenderOptions::full())),
                ("exemplar.jsonl", to_json_lines(&ex.ontology)),
                ("classification.txt", render_text(&dag)),
                ("classification.json", render_machine(&dag)),
            ];
            for (name, text) in files {
                let path = out.join(name);
                fs::write(&path, text)
                    .with_context(|| format!("{}: cannot write", path.display()))?;
            }
            println!(
                "{} classes ({} defined, {} gems), {} axioms written to {}",
                ex.ontology.classes().count(),
                ex.defined.len(),
                ex.gems.len(),
                ex.ontology.axiom_count(),
                out.display()
            );
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{e:#}");
            ExitCode::from(1)
        }
    }
}
