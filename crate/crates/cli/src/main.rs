//! Command-line front end for the unit-group computations: parse a group
//! spec, run the requested pipeline, and emit text or JSON.
//!
//! Exit statuses are stable: 0 for a completed computation (the conjecture
//! verdict is data, never an error), 2 for bad input, 3 for a size guard
//! (cap or order overflow). Data goes to stdout, diagnostics to stderr.

use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use gabra_core::algebra::{AlgebraContext, AlgebraElement};
use gabra_core::group::{build_group, is_prime, sweep_specs};
use gabra_core::units::{
    check_conjecture, closure, enumerate_normalized_units, random_normalized_unit, symmetric_units,
    ConjectureReport, UnitSet,
};
use gabra_core::{Error, Result};

const DEFAULT_CAP: u64 = 1 << 24;

#[derive(Parser)]
#[command(
    name = "gabra",
    version,
    about = "Normalized and symmetric units of modular group algebras KG over GF(p)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compare |V(KG)| against |<G,S*>| and report the verdict
    Check(Target),
    /// Enumerate the normalized unit group V(KG)
    Units(Listing),
    /// Enumerate the symmetric normalized units S*
    Symmetric(Listing),
    /// Close a generating set inside V(KG)
    Closure(Closure),
    /// Run the check across all catalog groups of order <= 16 for a prime
    Sweep(Sweep),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct Target {
    /// Group spec: q8, d8, d16, c{m}, elem{p}e{k}, or products like c4xc2
    #[arg(long)]
    group: String,

    /// Field characteristic; the group order must be a power of it
    #[arg(long)]
    prime: u64,

    /// Largest set any computation may materialize
    #[arg(long, env = "GABRA_CAP", default_value_t = DEFAULT_CAP,
          value_parser = clap::value_parser!(u64).range(1..))]
    cap: u64,

    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct Listing {
    #[command(flatten)]
    target: Target,

    /// Print every element, in lexicographic coefficient order
    #[arg(long)]
    list: bool,
}

#[derive(Args)]
struct Closure {
    #[command(flatten)]
    target: Target,

    /// Print every element, in lexicographic coefficient order
    #[arg(long)]
    list: bool,

    /// Include the symmetric units S* among the generators
    #[arg(long)]
    with_symmetric: bool,

    /// Add K seeded random normalized units to the generators
    #[arg(long, value_name = "K", default_value_t = 0)]
    random: usize,

    /// Seed for the random generators
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Leave the embedded group out of the generators
    #[arg(long)]
    no_group: bool,
}

#[derive(Args)]
struct Sweep {
    /// Field characteristic selecting the compatible catalog groups
    #[arg(long)]
    prime: u64,

    /// Largest set any computation may materialize
    #[arg(long, env = "GABRA_CAP", default_value_t = DEFAULT_CAP,
          value_parser = clap::value_parser!(u64).range(1..))]
    cap: u64,

    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

/// Cardinality report for units/symmetric/closure, with the elements
/// included only when requested.
#[derive(Serialize, Deserialize)]
struct ListingReport {
    group: String,
    prime: u64,
    count: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    elements: Option<Vec<String>>,
}

/// Sweep row for a group whose computation hit a size guard.
#[derive(Serialize, Deserialize)]
struct SkippedRow {
    group: String,
    prime: u64,
    skipped: bool,
    reason: String,
}

fn main() {
    // Die quietly when stdout is a closed pipe (`gabra sweep | head`),
    // like other line-oriented tools, instead of panicking mid-write.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    if let Err(e) = run(cli) {
        eprintln!("error: {e}");
        std::process::exit(match e {
            Error::CapExceeded { .. }
            | Error::ClosureCapExceeded { .. }
            | Error::OrderOverflow { .. } => 3,
            _ => 2,
        });
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Check(t) => {
            let report = check_conjecture(&t.group, t.prime, t.cap)?;
            match t.format {
                Format::Text => print_check_text(&report),
                Format::Json => println!("{}", to_json(&report)),
            }
        }
        Command::Units(l) => {
            let ctx = context_for(&l.target)?;
            let set = enumerate_normalized_units(&ctx, l.target.cap)?;
            emit_listing(&l.target, l.list, &ctx, &set);
        }
        Command::Symmetric(l) => {
            let ctx = context_for(&l.target)?;
            let set = symmetric_units(&ctx, l.target.cap)?;
            emit_listing(&l.target, l.list, &ctx, &set);
        }
        Command::Closure(c) => {
            let ctx = context_for(&c.target)?;
            let mut generators: Vec<AlgebraElement> = Vec::new();
            if !c.no_group {
                generators.extend((0..ctx.group().order()).map(|g| AlgebraElement::embed(&ctx, g)));
            }
            if c.with_symmetric {
                generators.extend(symmetric_units(&ctx, c.target.cap)?.sorted_elements());
            }
            if c.random > 0 {
                let mut rng = ChaCha8Rng::seed_from_u64(c.seed);
                generators.extend((0..c.random).map(|_| random_normalized_unit(&ctx, &mut rng)));
            }
            let set = closure(&ctx, &generators, c.target.cap)?;
            emit_listing(&c.target, c.list, &ctx, &set);
        }
        Command::Sweep(s) => run_sweep(&s)?,
    }
    Ok(())
}

fn context_for(target: &Target) -> Result<Arc<AlgebraContext>> {
    AlgebraContext::new(build_group(&target.group)?, target.prime)
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("reports serialize")
}

fn print_check_text(r: &ConjectureReport) {
    println!("group: {}", r.group);
    println!("prime: {}", r.prime);
    println!("|G|: {}", r.order_group);
    println!("|V(KG)|: {}", r.order_v);
    println!("|S*|: {}", r.order_s);
    println!("|<G,S*>|: {}", r.order_h);
    println!("S* is a subgroup: {}", r.s_is_subgroup);
    println!("S* is central: {}", r.s_central);
    println!("<G,S*> is symmetric: {}", r.h_symmetric);
    println!("conjecture holds: {}", r.conjecture_holds);
    println!("V enumerated: {}", r.enumerated_v);
}

fn emit_listing(target: &Target, list: bool, ctx: &Arc<AlgebraContext>, set: &UnitSet) {
    match target.format {
        Format::Text => {
            println!("count: {}", set.len());
            if list {
                for element in set.sorted_elements() {
                    println!("{element}");
                }
            }
        }
        Format::Json => {
            let elements = list.then(|| {
                set.sorted_elements()
                    .iter()
                    .map(ToString::to_string)
                    .collect()
            });
            let report = ListingReport {
                group: ctx.group().name().to_string(),
                prime: ctx.prime(),
                count: set.len() as u64,
                elements,
            };
            println!("{}", to_json(&report));
        }
    }
}

fn run_sweep(s: &Sweep) -> Result<()> {
    if !is_prime(s.prime) {
        return Err(Error::NotPrime(s.prime));
    }
    let mut json_rows: Vec<String> = Vec::new();
    for spec in sweep_specs(s.prime) {
        match check_conjecture(spec, s.prime, s.cap) {
            Ok(r) => match s.format {
                Format::Text => println!(
                    "{}: |G|={} |V|={} |S*|={} |H|={} S*subgroup={} S*central={} \
                     Hsymmetric={} holds={} enumeratedV={}",
                    r.group,
                    r.order_group,
                    r.order_v,
                    r.order_s,
                    r.order_h,
                    r.s_is_subgroup,
                    r.s_central,
                    r.h_symmetric,
                    r.conjecture_holds,
                    r.enumerated_v
                ),
                Format::Json => json_rows.push(to_json(&r)),
            },
            Err(
                e @ (Error::CapExceeded { .. }
                | Error::ClosureCapExceeded { .. }
                | Error::OrderOverflow { .. }),
            ) => {
                let row = SkippedRow {
                    group: spec.to_string(),
                    prime: s.prime,
                    skipped: true,
                    reason: e.to_string(),
                };
                match s.format {
                    Format::Text => println!("{}: skipped ({})", row.group, row.reason),
                    Format::Json => json_rows.push(to_json(&row)),
                }
            }
            Err(e) => return Err(e),
        }
    }
    if s.format == Format::Json {
        // Concatenate the pre-serialized rows so field order is preserved.
        println!("[{}]", json_rows.join(","));
    }
    Ok(())
}
