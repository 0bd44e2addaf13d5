//! `structmap`: validate, render, query and summarize structure catalogs.
//!
//! Exit status is 0 on success, 1 when the catalog (or a name or selector
//! referring into it) is wrong, and 2 when a file cannot be read or written.

use std::collections::BTreeMap;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use structmap_core::emit::{emit, EmitOptions, Format};
use structmap_core::layout::{layout_with, size_nodes, LayoutConfig};
use structmap_core::pipeline::{compile, plan_map, select_maps, CompileError, Compiled, MapSelector};
use structmap_core::query::neighborhood;
use structmap_core::seed::{SEED_CATALOG, SEED_PATH};

#[derive(Debug, Parser)]
#[command(
    name = "structmap",
    version,
    about = "Maps of mathematical structures from a catalog file"
)]
struct Cli {
    /// Catalog file. Defaults to the bundled seed catalog.
    #[arg(long, global = true, value_name = "PATH")]
    input: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parse and check the catalog.
    Validate,
    /// Write one file per map and format.
    Render {
        #[arg(long, value_name = "PATH")]
        out_dir: PathBuf,
        /// Comma-separated subset of svg, tikz, dot, html.
        #[arg(long, value_delimiter = ',', default_value = "svg,html", num_args = 1..)]
        formats: Vec<Format>,
        /// `suite`, `all`, `top` or a section id.
        #[arg(long, default_value = "suite", value_name = "SELECTOR")]
        map: MapSelector,
        /// Name-only boxes.
        #[arg(long)]
        outline: bool,
    },
    /// Print the neighborhood of one structure as DOT.
    Query {
        #[arg(long, value_name = "STRUCTURE")]
        name: String,
        #[arg(long, default_value_t = 1)]
        radius: u32,
        #[arg(long)]
        outline: bool,
    },
    /// Catalog counts, per-section sizes and the level histogram.
    Stats,
}

enum Failure {
    Catalog(String),
    Io(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Catalog(_) => 1,
            Failure::Io(_) => 2,
        }
    }
}

struct Input {
    label: String,
    text: String,
}

fn read_input(path: Option<&Path>) -> Result<Input, Failure> {
    match path {
        None => Ok(Input {
            label: SEED_PATH.to_string(),
            text: SEED_CATALOG.to_string(),
        }),
        Some(p) => std::fs::read_to_string(p)
            .map(|text| Input {
                label: p.display().to_string(),
                text,
            })
            .map_err(|e| Failure::Io(format!("cannot read {}: {e}", p.display()))),
    }
}

fn compile_input(input: &Input) -> Result<Compiled, Failure> {
    let compiled = compile(&input.text).map_err(|e| {
        let text = match e {
            CompileError::Parse(p) => format!("{}:{p}", input.label),
            CompileError::Semantic(errors) => errors
                .iter()
                .map(|e| format!("{}:{e}", input.label))
                .collect::<Vec<_>>()
                .join("\n"),
        };
        Failure::Catalog(text)
    })?;
    for w in &compiled.warnings {
        eprintln!("{}: warning: {w}", input.label);
    }
    Ok(compiled)
}

fn ok_line(c: &Compiled) -> String {
    let stats = c.catalog.stats();
    format!(
        "OK: {} structures, {} edges, {} sections",
        stats.structures, stats.edges, stats.sections
    )
}

fn stats_report(c: &Compiled) -> String {
    let mut out = ok_line(c);
    let mut per_section: BTreeMap<&str, usize> = c.catalog.sections.iter().map(|s| (s.id.as_str(), 0)).collect();
    for s in &c.catalog.structures {
        for id in &s.sections {
            *per_section.entry(id.as_str()).or_default() += 1;
        }
    }
    out.push_str("\nsections:");
    for (id, n) in per_section {
        out.push_str(&format!("\n  {id}\t{n}"));
    }
    let mut levels: BTreeMap<u32, usize> = BTreeMap::new();
    for node in &c.graph.nodes {
        *levels.entry(node.level).or_default() += 1;
    }
    out.push_str("\nlevels:");
    for (level, n) in levels {
        out.push_str(&format!("\n  {level}\t{n}"));
    }
    out
}

/// Writes through a temporary file in the same directory, so a reader
/// never sees a half-written map.
fn write_atomic(dir: &Path, name: &str, contents: &str) -> Result<(), Failure> {
    let io = |e: std::io::Error| Failure::Io(format!("cannot write {}: {e}", dir.join(name).display()));
    let mut tmp = tempfile::Builder::new()
        .prefix(&format!(".{name}."))
        .tempfile_in(dir)
        .map_err(io)?;
    tmp.write_all(contents.as_bytes()).map_err(io)?;
    tmp.persist(dir.join(name)).map_err(|e| io(e.error))?;
    Ok(())
}

fn render(
    c: &Compiled,
    out_dir: &Path,
    formats: &[Format],
    selector: &MapSelector,
    outline: bool,
) -> Result<(), Failure> {
    let maps = select_maps(&c.graph, selector).map_err(|e| Failure::Catalog(e.to_string()))?;
    std::fs::create_dir_all(out_dir).map_err(|e| Failure::Io(format!("cannot create {}: {e}", out_dir.display())))?;

    // Everything is emitted before the first write.
    let mut files = Vec::new();
    for map in &maps {
        for (child, parent) in &map.view.dangling_parents {
            eprintln!(
                "note: map {}: {child:?} extends {parent:?}, which is not on this map",
                map.name
            );
        }
        let plan = plan_map(&map.view.graph, outline);
        for &format in formats {
            let opts = EmitOptions {
                format,
                include_body: !outline,
                title: Some(map.name.clone()),
            };
            let file_name = format!("{}.{}", map.name, format.extension());
            files.push((map.name.as_str(), format, file_name, emit(&plan, &opts)));
        }
    }
    let stdout = std::io::stdout();
    let mut manifest = stdout.lock();
    for (map, format, file_name, contents) in &files {
        write_atomic(out_dir, file_name, contents)?;
        let _ = writeln!(manifest, "{map}\t{}\t{file_name}", format.name());
    }
    Ok(())
}

fn query(c: &Compiled, name: &str, radius: u32, outline: bool) -> Result<String, Failure> {
    let hood = neighborhood(&c.graph, name, radius).map_err(|e| Failure::Catalog(e.to_string()))?;
    let mut g = hood.graph;
    size_nodes(&mut g);
    let mut plan = layout_with(&g, &LayoutConfig { outline });
    plan.nodes[hood.focus].focus = true;
    let mut opts = EmitOptions::new(Format::Dot).titled(name);
    opts.include_body = !outline;
    Ok(emit(&plan, &opts))
}

fn run(cli: Cli) -> Result<(), Failure> {
    let input = read_input(cli.input.as_deref())?;
    let compiled = compile_input(&input)?;
    match cli.command {
        Command::Validate => println!("{}", ok_line(&compiled)),
        Command::Stats => println!("{}", stats_report(&compiled)),
        Command::Render {
            out_dir,
            formats,
            map,
            outline,
        } => render(&compiled, &out_dir, &formats, &map, outline)?,
        Command::Query { name, radius, outline } => print!("{}", query(&compiled, &name, radius, outline)?),
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let (Failure::Catalog(msg) | Failure::Io(msg)) = &f;
            eprintln!("{msg}");
            ExitCode::from(f.code())
        }
    }
}
