use std::fs;
use std::io::{self, Read};
use std::process::ExitCode;
use std::str::FromStr;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use serde_json::json;

use bundlecert::chern::{chern_of_presentation, dual_chern};
use bundlecert::cohomology::{
    exterior_power_complex, h0_vanishing_chase, line_cohomology, sheaf_cohomology, Ambient,
    ChaseResult,
};
use bundlecert::pipeline::{
    analyze_all, builtin_entry, builtin_table, emit_report, parse_entries, parse_entry,
    AnalysisOptions, ReportFormat, TableEntry,
};

#[derive(Parser)]
#[command(name = "bundlecert")]
#[command(
    about = "Certify slope-(semi)stability of bundles given by two-term line-bundle presentations"
)]
#[command(version)]
struct Cli {
    #[command(flatten)]
    output: OutputFlags,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct OutputFlags {
    /// Emit JSON instead of text
    #[arg(long, global = true)]
    json: bool,

    /// Print full certificate chains
    #[arg(long, global = true)]
    verbose: bool,

    /// Run every route on each entry, not only the one selected by rank
    #[arg(long, global = true)]
    try_all_routes: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze the sixteen built-in entries
    Table,
    /// Parse entries from a file (or `-` for stdin) and analyze them
    Check {
        /// Input file, one `rank=.. n=.. m=..` entry per line
        input: String,
    },
    /// Chern classes of an entry on P^4
    Chern {
        /// Built-in name (V1..V16) or an entry in the input grammar
        entry: String,
    },
    /// Print the resolution of an exterior power of the dual bundle
    Wedge {
        /// Built-in name (V1..V16) or an entry in the input grammar
        entry: String,
        #[arg(long)]
        q: u64,
        /// p<N>, quintic, or hyp:<n>:<d>
        #[arg(long, default_value = "p4")]
        ambient: AmbientArg,
    },
    /// Cohomology table of a line bundle O(k)
    Cohom {
        #[arg(long, allow_hyphen_values = true)]
        twist: i64,
        /// p<N>, quintic, or hyp:<n>:<d>
        #[arg(long)]
        ambient: AmbientArg,
    },
}

#[derive(Clone, Copy)]
struct AmbientArg(Ambient);

impl FromStr for AmbientArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let lower = s.trim().to_ascii_lowercase();
        let ambient = if lower == "quintic" {
            Ok(Ambient::QUINTIC)
        } else if let Some(rest) = lower.strip_prefix("hyp:") {
            let (n, d) = rest
                .split_once(':')
                .ok_or_else(|| format!("expected hyp:<n>:<d>, got {s}"))?;
            let n = n.parse().map_err(|_| format!("bad dimension in {s}"))?;
            let d = d.parse().map_err(|_| format!("bad degree in {s}"))?;
            Ambient::hypersurface(n, d)
        } else if let Some(n) = lower.strip_prefix('p') {
            let n = n.parse().map_err(|_| format!("bad dimension in {s}"))?;
            Ambient::projective(n)
        } else {
            return Err(format!(
                "unknown ambient {s}; use p<N>, quintic or hyp:<n>:<d>"
            ));
        };
        ambient.map(AmbientArg).map_err(|e| e.to_string())
    }
}

fn resolve_entry(arg: &str) -> anyhow::Result<TableEntry> {
    if let Some(e) = builtin_entry(arg.trim()) {
        return Ok(e);
    }
    parse_entry(arg)
        .with_context(|| format!("'{arg}' is neither a built-in name nor a valid entry"))
}

fn read_input(path: &str) -> anyhow::Result<String> {
    if path == "-" {
        let mut buf = String::new();
        io::stdin()
            .read_to_string(&mut buf)
            .context("reading stdin")?;
        Ok(buf)
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {path}"))
    }
}

fn analyze(entries: &[TableEntry], flags: OutputFlags) -> anyhow::Result<String> {
    let options = AnalysisOptions {
        try_all_routes: flags.try_all_routes,
    };
    let reports = analyze_all(entries, options)?;
    let format = if flags.json {
        ReportFormat::Json
    } else {
        ReportFormat::Text
    };
    Ok(emit_report(&reports, format, flags.verbose)?)
}

fn chern(arg: &str, flags: OutputFlags) -> anyhow::Result<String> {
    let entry = resolve_entry(arg)?;
    let v = chern_of_presentation(&entry.presentation(), 4)?;
    let e = dual_chern(&v)?;
    if flags.json {
        let doc = json!({
            "name": entry.name(),
            "rank": entry.rank(),
            "chern": { "c1": v.c(1), "c2": v.c(2), "c3": v.c(3) },
            "total_chern_v": v.coefficients(),
            "total_chern_dual": e.coefficients(),
        });
        return Ok(serde_json::to_string_pretty(&doc)? + "\n");
    }
    Ok(format!(
        "{} (rank {}) on P^4: c1 = {}, c2 = {}, c3 = {}\n  c(V)  = {v}\n  c(V*) = {e}\n",
        entry.name(),
        entry.rank(),
        v.c(1),
        v.c(2),
        v.c(3)
    ))
}

fn wedge(arg: &str, q: u64, ambient: Ambient, flags: OutputFlags) -> anyhow::Result<String> {
    let entry = resolve_entry(arg)?;
    let e = entry.dual_presentation();
    if q == 0 || q > e.rank() {
        bail!("--q must lie in 1..={} for {}", e.rank(), entry.name());
    }
    let complex = exterior_power_complex(&e, q)?;
    let chase = h0_vanishing_chase(&complex, ambient)?;
    if flags.json {
        let tables = complex
            .terms()
            .iter()
            .map(|t| sheaf_cohomology(t, ambient))
            .collect::<bundlecert::Result<Vec<_>>>()?;
        let doc = json!({
            "name": entry.name(),
            "q": q,
            "ambient": ambient,
            "presentation": e.to_string(),
            "resolution": complex,
            "term_cohomology": tables,
            "chase": chase,
        });
        return Ok(serde_json::to_string_pretty(&doc)? + "\n");
    }
    let mut out = format!("{}: E = V*, {e}\n{complex}\n", entry.name());
    for (i, term) in complex.terms().iter().enumerate() {
        let table = sheaf_cohomology(term, ambient)?;
        out += &format!("  F_{i} = {term}\n    h^*({ambient}) = {table}\n");
    }
    match chase {
        ChaseResult::Vanishes(cert) => {
            out += &format!("H^0({ambient}, {}) = 0\n", complex.label());
            if flags.verbose {
                for fact in &cert.facts {
                    out += &format!("  {fact}\n");
                }
            }
        }
        ChaseResult::Inconclusive { index, value, .. } => {
            out += &format!("vanishing not certified: h^{index}(F_{index}) = {value}\n");
        }
    }
    Ok(out)
}

fn cohom(twist: i64, ambient: Ambient, flags: OutputFlags) -> anyhow::Result<String> {
    let table = line_cohomology(twist, ambient)?;
    if flags.json {
        let doc = json!({ "ambient": ambient, "twist": twist, "h": table.dims() });
        return Ok(serde_json::to_string_pretty(&doc)? + "\n");
    }
    let mut out = String::new();
    for (i, h) in table.dims().iter().enumerate() {
        out += &format!("h^{i}({ambient}, O({twist})) = {h}\n");
    }
    Ok(out)
}

fn run(cli: Cli) -> anyhow::Result<String> {
    let flags = cli.output;
    match cli.command {
        Command::Table => analyze(&builtin_table(), flags),
        Command::Check { input } => {
            let text = read_input(&input)?;
            let entries = parse_entries(&text)?;
            analyze(&entries, flags)
        }
        Command::Chern { entry } => chern(&entry, flags),
        Command::Wedge { entry, q, ambient } => wedge(&entry, q, ambient.0, flags),
        Command::Cohom { twist, ambient } => cohom(twist, ambient.0, flags),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
