//! Command-line driver: parses diagram files, runs the decomposition pipeline
//! and prints text, JSON or DOT output.
//!
//! Exit codes: 0 success, 1 input error, 2 invariant violation, 3 oracle
//! disagreement.

pub mod render;

use std::ffi::OsString;
use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use coxeter_jsj::oracle::{self, SpectrumClass, JSJ_LIMIT, SPLITTER_LIMIT};
use coxeter_jsj::orbifold::classify_all;
use coxeter_jsj::{
    classify_subset, coxeter_graph_components, jsj_with, minimal_splitters, parse_diagram, realize_orbifold,
    verify_trace, virtually_abelian_structure, write_diagram, CoxeterDiagram, Error, GenSet, IrreducibleType,
    JsjOptions, SplitPick, VertexKind,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_INVARIANT: i32 = 2;
pub const EXIT_ORACLE: i32 = 3;

const ORACLE_ORDERS: u64 = 10;

#[derive(Debug, Parser)]
#[command(name = "coxjsj", version, about = "Visual JSJ decompositions of Coxeter groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Virtually abelian structure of a generator subset.
    Classify {
        file: PathBuf,
        /// Comma-separated generator names; defaults to all generators.
        #[arg(long, value_delimiter = ',')]
        subset: Option<Vec<String>>,
    },
    /// Minimal splitters of every vertex at one stage of the decomposition.
    Splitters {
        file: PathBuf,
        #[arg(long, default_value_t = 0)]
        stage: usize,
        /// Use brute-force subset enumeration instead of the pruned search.
        #[arg(long)]
        exhaustive: bool,
    },
    /// The JSJ decomposition with rigid/orbifold tags.
    Jsj {
        file: PathBuf,
        /// Print every stage and the splits that produced it.
        #[arg(long)]
        trace: bool,
        #[arg(long)]
        json: bool,
        /// Write one `stage_<i>.dot` file per stage into this directory.
        #[arg(long)]
        dot: Option<PathBuf>,
        /// Pick splitters in a seeded random order.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Cross-check the pipeline against brute-force and spectral oracles.
    Oracle {
        file: PathBuf,
        /// First seed of the randomized split orders compared against the canonical one.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Emit a diagram built from a path union.
    Generate {
        #[arg(long)]
        orbifold: PathBuf,
    },
}

/// An error carrying its own exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for Failure {}

fn failure(code: i32, message: impl Into<String>) -> anyhow::Error {
    Failure { code, message: message.into() }.into()
}

pub fn exit_code(e: &anyhow::Error) -> i32 {
    if let Some(f) = e.downcast_ref::<Failure>() {
        return f.code;
    }
    match e.downcast_ref::<Error>() {
        Some(
            Error::CompatibilityViolation { .. } | Error::OrbifoldVerification(_) | Error::NotSeparating | Error::UnknownVertex,
        ) => EXIT_INVARIANT,
        _ => EXIT_INPUT,
    }
}

pub fn run_cli<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match run(cli.command, out, err) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            exit_code(&e)
        }
    }
}

fn load(path: &Path) -> Result<CoxeterDiagram> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let d = parse_diagram(&text).with_context(|| format!("parsing {}", path.display()))?;
    Ok(d)
}

fn run(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    match command {
        Command::Classify { file, subset } => classify(&load(&file)?, subset, out),
        Command::Splitters { file, stage, exhaustive } => splitters(&load(&file)?, stage, exhaustive, out),
        Command::Jsj { file, trace, json, dot, seed } => {
            let pick = seed.map_or(SplitPick::Canonical, SplitPick::Seeded);
            jsj(&load(&file)?, JsjOptions { pick }, trace, json, dot.as_deref(), out, err)
        }
        Command::Oracle { file, seed } => oracle_check(&load(&file)?, seed, out),
        Command::Generate { orbifold } => {
            let t = load(&orbifold)?;
            out.write_all(write_diagram(&realize_orbifold(&t)?).as_bytes())?;
            Ok(())
        }
    }
}

fn classify(d: &CoxeterDiagram, subset: Option<Vec<String>>, out: &mut dyn Write) -> Result<()> {
    let a = match subset {
        Some(names) => d.subset(&names)?,
        None => d.all(),
    };
    match virtually_abelian_structure(d, a) {
        Some(s) => out.write_all(render::va_structure(d, &s).as_bytes())?,
        None => {
            writeln!(out, "not virtually abelian")?;
            for c in coxeter_graph_components(d, a) {
                writeln!(out, "  {} {}", d.format_set(c), classify_subset(d, c)?)?;
            }
        }
    }
    Ok(())
}

fn splitters(d: &CoxeterDiagram, stage: usize, exhaustive: bool, out: &mut dyn Write) -> Result<()> {
    let trace = jsj_with(d, JsjOptions::default())?;
    let Some(g) = trace.stages.get(stage) else {
        return Err(failure(EXIT_INPUT, format!("stage {stage} out of range, trace has {} stages", trace.stages.len())));
    };
    for (id, vset) in g.vertices_sorted() {
        writeln!(out, "vertex {}", d.format_set(vset))?;
        if exhaustive {
            for a in oracle::exhaustive_splitters(d, g, id)? {
                writeln!(out, "  {}", d.format_set(a))?;
            }
        } else {
            for r in minimal_splitters(d, g, id)? {
                writeln!(out, "{}", render::splitter_line(d, &r))?;
            }
        }
    }
    Ok(())
}

fn jsj(
    d: &CoxeterDiagram,
    options: JsjOptions,
    show_trace: bool,
    json: bool,
    dot: Option<&Path>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<()> {
    let trace = jsj_with(d, options)?;
    let last = trace.final_stage();
    let kinds = classify_all(d, last)?;
    if json {
        serde_json::to_writer_pretty(&mut *out, &render::jsj_document(d, &trace, &kinds))?;
        writeln!(out)?;
    } else {
        if show_trace {
            for (i, g) in trace.stages.iter().enumerate() {
                writeln!(out, "stage {i}:")?;
                for s in trace.splits.get(i.wrapping_sub(1)).into_iter().flatten() {
                    writeln!(
                        out,
                        "  split {} of {} along {}",
                        d.format_set(s.piece),
                        d.format_set(s.origin),
                        d.format_set(s.splitter)
                    )?;
                }
                out.write_all(render::stage_text(d, g).as_bytes())?;
            }
            writeln!(out, "final:")?;
        }
        out.write_all(render::final_text(d, last, &kinds).as_bytes())?;
    }
    if let Some(dir) = dot {
        std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        for (i, g) in trace.stages.iter().enumerate() {
            let path = dir.join(format!("stage_{i}.dot"));
            std::fs::write(&path, render::dot(d, g, &format!("stage_{i}")))
                .with_context(|| format!("writing {}", path.display()))?;
        }
    }
    for (set, kind) in &kinds {
        if let VertexKind::Orbifold(o) = kind {
            for m in &o.alternative_m_parts {
                writeln!(err, "note: vertex {} also admits M = {}", d.format_set(*set), d.format_set(*m))?;
            }
        }
    }
    let mut problems = verify_trace(d, &trace)?;
    problems.extend(trace.diagnostics.iter().cloned());
    if problems.is_empty() {
        Ok(())
    } else {
        Err(failure(EXIT_INVARIANT, format!("invariant checks failed:\n  {}", problems.join("\n  "))))
    }
}

fn table_agrees(d: &CoxeterDiagram, a: GenSet) -> Result<bool> {
    let spectral = oracle::gram_spectrum_classify(d, a);
    Ok(match classify_subset(d, a)? {
        IrreducibleType::Finite(_) => spectral == SpectrumClass::PositiveDefinite,
        IrreducibleType::Affine(_) => spectral == SpectrumClass::PositiveSemidefinite && oracle::gram_nullity(d, a) == 1,
        IrreducibleType::Indefinite => {
            spectral == SpectrumClass::Indefinite
                || (spectral == SpectrumClass::PositiveSemidefinite && oracle::gram_nullity(d, a) != 1)
        }
    })
}

fn oracle_check(d: &CoxeterDiagram, seed: u64, out: &mut dyn Write) -> Result<()> {
    let mut disagreements = Vec::new();

    if d.len() <= SPLITTER_LIMIT {
        let mut checked = 0;
        for a in d.all().subsets() {
            if a.is_empty() || coxeter_graph_components(d, a).len() != 1 {
                continue;
            }
            checked += 1;
            if !table_agrees(d, a)? {
                disagreements.push(format!("classification of {}", d.format_set(a)));
            }
        }
        writeln!(out, "classification: {checked} irreducible subsets checked")?;
    } else {
        writeln!(out, "classification: skipped, {} generators exceed {SPLITTER_LIMIT}", d.len())?;
    }

    let trace = jsj_with(d, JsjOptions::default())?;
    let (mut compared, mut skipped) = (0, 0);
    for (i, g) in trace.stages.iter().enumerate() {
        for (id, vset) in g.vertices_sorted() {
            if vset.len() > SPLITTER_LIMIT {
                skipped += 1;
                continue;
            }
            compared += 1;
            let mut fast: Vec<GenSet> = minimal_splitters(d, g, id)?.iter().map(|r| r.subset).collect();
            fast.sort();
            if fast != oracle::exhaustive_splitters(d, g, id)? {
                disagreements.push(format!("minimal splitters of {} at stage {i}", d.format_set(vset)));
            }
        }
    }
    writeln!(out, "splitters: {compared} vertices compared, {skipped} skipped")?;

    let family: Vec<GenSet> = trace.final_stage().vertex_family().into_iter().collect();
    if d.len() <= JSJ_LIMIT {
        let all = oracle::exhaustive_jsj(d)?;
        if all.len() != 1 || !all.contains(&family) {
            disagreements.push(format!("exhaustive search found {} final families", all.len()));
        }
        writeln!(out, "exhaustive jsj: final families found: {}", all.len())?;
    } else {
        writeln!(out, "exhaustive jsj: skipped, {} generators exceed {JSJ_LIMIT}", d.len())?;
    }

    for s in seed..seed.saturating_add(ORACLE_ORDERS) {
        let other = jsj_with(d, JsjOptions { pick: SplitPick::Seeded(s) })?;
        if other.final_stage().vertex_family().into_iter().collect::<Vec<_>>() != family {
            disagreements.push(format!("split order with seed {s}"));
        }
    }
    writeln!(out, "split orders: {ORACLE_ORDERS} seeded orders compared")?;

    if disagreements.is_empty() {
        writeln!(out, "oracle: agree")?;
        Ok(())
    } else {
        Err(failure(EXIT_ORACLE, format!("oracle disagreement:\n  {}", disagreements.join("\n  "))))
    }
}
