use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use genus_census::census::{self, HypermapRecord, NonOrientableRecord};
use genus_census::epi::{count_kernels, set_default_budget};
use genus_census::groups::{build_group, GroupSpec};
use genus_census::signatures::{enumerate_signatures, parse_rational, teich_dim, Signature};
use genus_census::Error;

/// Automorphism groups of Riemann surfaces of genus p+1.
#[derive(Parser)]
#[command(name = "genus-census", version)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads; output does not depend on this.
    #[arg(long, global = true, value_name = "N")]
    threads: Option<usize>,
    /// Maximum candidate tuples per search; exceeding it is an error.
    #[arg(long, global = true, value_name = "N")]
    budget: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Signatures with ρ = |G|/(g−1), one per line.
    EnumerateSignatures {
        #[arg(long, value_name = "RATIONAL")]
        rho: String,
    },
    /// Every action on genus p+1 with p dividing |G|.
    Classify {
        #[arg(long, value_name = "PRIME")]
        p: u32,
        /// Only records with this ρ.
        #[arg(long, value_name = "N")]
        rho: Option<u32>,
    },
    /// Orientably regular maps and hypermaps of genus p+1.
    Hypermaps {
        #[arg(long, value_name = "PRIME")]
        p: u32,
    },
    /// Non-orientable quotients of the reflexible hypermaps.
    Nonorientable {
        #[arg(long, value_name = "PRIME")]
        p: u32,
    },
    /// Normal surface subgroups of Γ(σ) with quotient G.
    CountKernels {
        #[arg(long, value_name = "SIGNATURE")]
        sig: String,
        #[arg(long, value_name = "SPEC")]
        group: String,
    },
    /// Isogeny decompositions of the Jacobians in each family.
    Jacobian {
        #[arg(long, value_name = "PRIME")]
        p: u32,
    },
    /// Recompute every embedded table and compare.
    Verify,
}

fn is_input_error(e: &Error) -> bool {
    matches!(
        e,
        Error::Parse { .. }
            | Error::Invalid(_)
            | Error::InvalidGroup(_)
            | Error::NotHyperbolic(_)
            | Error::Unsupported(_)
    )
}

/// Prints JSON or text lines; a closed pipe ends output quietly.
fn emit<T: Serialize>(json: bool, value: &T, text: impl FnOnce() -> Vec<String>) -> Result<(), Error> {
    let lines = if json {
        vec![serde_json::to_string_pretty(value).map_err(|e| Error::Inconsistent(e.to_string()))?]
    } else {
        text()
    };
    let mut out = std::io::stdout().lock();
    for line in lines {
        match writeln!(out, "{line}") {
            Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => return Ok(()),
            r => r.map_err(|e| Error::Invalid(format!("cannot write output: {e}")))?,
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct SignatureJson {
    signature: String,
    area: String,
    real_dimension: i64,
}

#[derive(Serialize)]
struct KernelCountJson {
    signature: String,
    group: String,
    order: usize,
    kernels: u128,
}

fn hypermap_line(r: &HypermapRecord) -> String {
    let mut s = format!(
        "({}) {} G={} genus={} petrie={} {} A={} mirror-orbit={} duality-orbit={}",
        r.case_id,
        r.hypermap_type,
        r.group,
        r.genus,
        r.petrie,
        if r.reflexible { "reflexible" } else { "chiral" },
        r.full_group,
        r.pair_orbit,
        r.full_orbit
    );
    if let Some(c) = &r.conder_ref {
        s += &format!(" conder={c}");
    }
    if let Some(h) = &r.hall {
        s += &format!(" trace²={} square={}", h.trace_squared, h.is_square);
    }
    if let Some(n) = &r.note {
        s += &format!(" ({n})");
    }
    s
}

fn nonorientable_line(r: &NonOrientableRecord) -> String {
    let b = &r.base;
    let mut s = format!("({}) {} G={} χ={}", b.case_id, b.hypermap_type, b.group, r.euler_characteristic);
    if !r.quotient_exists {
        return s + &format!(" no quotient (A={})", b.full_group);
    }
    if let Some(c) = &b.conder_ref {
        s += &format!(" cover={c}");
    }
    if let Some(p) = r.petrie {
        s += &format!(" petrie={p}");
    }
    if let Some(e) = &r.entry {
        s += &format!(" entry={e}");
    }
    s
}

/// Returns the exit code for a completed command.
fn run(cli: Cli) -> Result<u8, Error> {
    let json = cli.global.json;
    match cli.command {
        Command::EnumerateSignatures { rho } => {
            let sigs = enumerate_signatures(parse_rational(&rho)?, None)?;
            let rows: Vec<SignatureJson> = sigs
                .iter()
                .map(|s| SignatureJson {
                    signature: s.to_string(),
                    area: s.area().to_string(),
                    real_dimension: teich_dim(s),
                })
                .collect();
            emit(json, &rows, || sigs.iter().map(Signature::to_string).collect())?;
        }
        Command::Classify { p, rho } => {
            let mut records = census::classify(p, rho.unwrap_or(1))?;
            if let Some(r) = rho {
                records.retain(|x| x.rho == r);
            }
            emit(json, &records, || records.iter().map(ToString::to_string).collect())?;
        }
        Command::Hypermaps { p } => {
            let records = census::hypermap_census(p)?;
            emit(json, &records, || records.iter().map(hypermap_line).collect())?;
        }
        Command::Nonorientable { p } => {
            let records = census::nonorientable_census(p)?;
            emit(json, &records, || records.iter().map(nonorientable_line).collect())?;
        }
        Command::CountKernels { sig, group } => {
            let sig: Signature = sig.parse()?;
            let g = build_group(&group.parse::<GroupSpec>()?)?;
            let kernels = count_kernels(&sig, &g)?;
            let row =
                KernelCountJson { signature: sig.to_string(), group: g.name().to_string(), order: g.order(), kernels };
            emit(json, &row, || vec![kernels.to_string()])?;
        }
        Command::Jacobian { p } => {
            let reports = census::jacobian_census(p)?;
            emit(json, &reports, || reports.iter().map(|r| format!("({}) G={} {r}", r.case_id, r.group)).collect())?;
        }
        Command::Verify => {
            let report = census::verify_embedded_tables()?;
            emit(json, &report, || {
                let mut lines: Vec<String> = report.items.iter().map(ToString::to_string).collect();
                let count = |s| report.with_status(s).count();
                lines.push(format!(
                    "{} items: {} pass, {} deviation, {} fail",
                    report.items.len(),
                    count(census::ItemStatus::Pass),
                    count(census::ItemStatus::Deviation),
                    count(census::ItemStatus::Fail)
                ));
                lines
            })?;
            return Ok(if report.all_pass() { 0 } else { 1 });
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.global.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: cannot start {n} threads: {e}");
            return ExitCode::from(2);
        }
    }
    if let Some(b) = cli.global.budget {
        set_default_budget(b);
    }
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if is_input_error(&e) { 2 } else { 1 })
        }
    }
}
