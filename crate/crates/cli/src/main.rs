use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use modpoints::blowup::{self, ChartName};
use modpoints::cohomology::{self, kirwan, BettiTable};
use modpoints::forms_git::{self, PointConfig};
use modpoints::fqspace::{self, FqVector, OrthogonalGroup};
use modpoints::picard;
use modpoints::verify::Registry;

#[derive(Parser)]
#[command(
    name = "modpoints",
    version,
    about = "Exact invariants of the moduli of eight points on the line"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification suites and report each check.
    Run(RunArgs),
    /// The discriminant quadratic space over F_2.
    #[command(subcommand)]
    Fq(FqCommand),
    /// Blow-up charts of the Luna slice.
    #[command(subcommand)]
    Slice(SliceCommand),
    /// Betti numbers.
    #[command(subcommand)]
    Betti(BettiCommand),
    /// Divisor-class ledger.
    #[command(subcommand)]
    Picard(PicardCommand),
    /// GIT stability of point configurations.
    #[command(subcommand)]
    Stability(StabilityCommand),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct RunArgs {
    /// Suite name or `all`.
    suite: Option<String>,
    #[arg(long = "suite", conflicts_with = "suite")]
    suite_flag: Option<String>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Run suites on separate threads.
    #[arg(long)]
    parallel: bool,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum FqCommand {
    Census,
    /// Census of the perp of an isotropic vector given in hex.
    Perp {
        vector: String,
    },
    Group,
}

#[derive(Subcommand)]
enum SliceCommand {
    Transversality {
        /// P, Q, R or all.
        #[arg(long, default_value = "all")]
        chart: String,
    },
    Stabilizers,
}

#[derive(Subcommand)]
enum BettiCommand {
    Kirwan,
    Tor {
        #[arg(long, conflicts_with = "unordered")]
        ordered: bool,
        #[arg(long)]
        unordered: bool,
    },
    Boundary,
}

#[derive(Subcommand)]
enum PicardCommand {
    Verify,
    Intersections,
    Obstruction,
}

#[derive(Subcommand)]
enum StabilityCommand {
    Classify {
        /// Multiplicities, e.g. `4,4`.
        #[arg(long)]
        config: String,
    },
    Table {
        #[arg(long, default_value_t = 8)]
        n: u32,
    },
}

/// Failure carrying the exit status: 1 for failed checks, 2 for bad input.
struct Failure(u8, String);

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure(2, e.to_string())
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn by_degree(t: &BettiTable) -> Value {
    let mut m = Map::new();
    for (d, b) in t.by_degree() {
        m.insert(d.to_string(), json!(b));
    }
    Value::Object(m)
}

fn run(args: RunArgs) -> Result<(), Failure> {
    let name = args
        .suite_flag
        .or(args.suite)
        .unwrap_or_else(|| "all".to_string());
    let registry = Registry::standard();
    let report = registry.run(&name, args.parallel).map_err(|e| {
        usage(format!(
            "{e}; expected all or one of {}",
            registry.names().join(", ")
        ))
    })?;
    let text = match args.format {
        Format::Json => report.to_json() + "\n",
        Format::Text => report.to_text(),
    };
    match &args.out {
        Some(path) => fs::write(path, &text)
            .map_err(|e| Failure(1, format!("cannot write {}: {e}", path.display())))?,
        None => print!("{text}"),
    }
    if report.passed() {
        Ok(())
    } else {
        Err(Failure(1, String::new()))
    }
}

fn fq(cmd: FqCommand) -> Result<(), Failure> {
    match cmd {
        FqCommand::Census => {
            let c = fqspace::census();
            print_json(&json!(c));
        }
        FqCommand::Perp { vector } => {
            let h: FqVector = vector.parse().map_err(usage)?;
            let c = fqspace::perp_census(h).map_err(usage)?;
            print_json(
                &json!({ "h": h.to_string(), "isotropic": c.isotropic, "nonisotropic": c.nonisotropic }),
            );
        }
        FqCommand::Group => {
            let g = OrthogonalGroup::generate().map_err(|e| Failure(1, e.to_string()))?;
            let mut orbit_sizes: Vec<usize> = g.nonzero_orbits().iter().map(Vec::len).collect();
            orbit_sizes.sort_unstable();
            let h = FqVector::new(0x20).expect("in range");
            let stab = g
                .stab_orbits_on_perp(h)
                .map_err(|e| Failure(1, e.to_string()))?;
            print_json(&json!({
                "order": g.order(),
                "orbit_sizes": orbit_sizes,
                "stab_order": stab.stab_order,
                "stab_perp_orbits": { "isotropic": stab.isotropic, "nonisotropic": stab.nonisotropic },
            }));
        }
    }
    Ok(())
}

fn slice(cmd: SliceCommand) -> Result<(), Failure> {
    match cmd {
        SliceCommand::Transversality { chart } => {
            let names: Vec<ChartName> = if chart.eq_ignore_ascii_case("all") {
                ChartName::ALL.to_vec()
            } else {
                vec![chart.parse().map_err(usage)?]
            };
            let mut reports = Vec::new();
            for n in names {
                let r = blowup::discriminant_pullback(&blowup::chart(n))
                    .map_err(|e| Failure(1, e.to_string()))?;
                reports.push(json!(r));
            }
            print_json(&Value::Array(reports));
        }
        SliceCommand::Stabilizers => {
            let s = blowup::scan_stabilizers();
            print_json(&json!({ "scan": s, "e_candidates": s.e_candidates() }));
        }
    }
    Ok(())
}

fn betti(cmd: BettiCommand) -> Result<(), Failure> {
    let fail = |e: cohomology::CohomologyError| Failure(1, e.to_string());
    match cmd {
        BettiCommand::Kirwan => {
            let k = kirwan::kirwan_betti_m_k().map_err(fail)?;
            print_json(&json!({
                "semistable": k.semistable.to_string(),
                "main_correction": k.main.to_string(),
                "extra_correction_min_degree": k.extra_min_degree,
                "truncated": k.truncated.to_string(),
                "betti": by_degree(&k.betti),
            }));
        }
        BettiCommand::Tor { ordered, unordered } => {
            let t = if ordered || !unordered {
                cohomology::tor_betti_ordered()
            } else {
                cohomology::tor_betti_unordered()
            }
            .map_err(fail)?;
            print_json(&by_degree(&t));
        }
        BettiCommand::Boundary => print_json(&by_degree(&cohomology::unordered_fiber())),
    }
    Ok(())
}

fn picard_cmd(cmd: PicardCommand) -> Result<(), Failure> {
    match cmd {
        PicardCommand::Verify => {
            let ids = picard::verify_blowup_identities().map_err(|e| Failure(1, e.to_string()))?;
            let all = ids.iter().all(|i| i.holds);
            let rows: Vec<Value> = ids
                .iter()
                .map(|i| {
                    json!({
                        "id": i.id,
                        "identity": i.name,
                        "status": if i.holds { "pass" } else { "fail" },
                        "lhs": i.lhs,
                        "rhs": i.rhs,
                    })
                })
                .collect();
            print_json(&Value::Array(rows));
            if !all {
                return Err(Failure(1, String::new()));
            }
        }
        PicardCommand::Intersections => {
            let g = OrthogonalGroup::generate().map_err(|e| Failure(1, e.to_string()))?;
            let s = picard::top_self_intersections(cohomology::ORDERED_CUSPS, g.order() as u64);
            print_json(&json!({
                "normal_bundle": picard::normal_bundle_boundary(),
                "self_intersections": s,
            }));
        }
        PicardCommand::Obstruction => {
            let g = OrthogonalGroup::generate().map_err(|e| Failure(1, e.to_string()))?;
            let s = picard::top_self_intersections(cohomology::ORDERED_CUSPS, g.order() as u64);
            let e: Vec<u64> = blowup::scan_stabilizers()
                .e_candidates()
                .into_iter()
                .map(u64::from)
                .collect();
            let cert = picard::k_equivalence_obstruction(&s.unordered, 7, 5, &e);
            let obstructed = cert.obstructed;
            print_json(&json!(cert));
            if !obstructed {
                return Err(Failure(1, String::new()));
            }
        }
    }
    Ok(())
}

fn stability(cmd: StabilityCommand) -> Result<(), Failure> {
    match cmd {
        StabilityCommand::Classify { config } => {
            let c: PointConfig = config.parse().map_err(usage)?;
            let v = forms_git::classify(&c);
            print_json(
                &json!({ "config": c.to_string(), "stability": v.stability, "polystable": v.polystable }),
            );
        }
        StabilityCommand::Table { n } => {
            let t = forms_git::stability_table(n).map_err(usage)?;
            let rows: Vec<Value> = t
                .iter()
                .map(|(c, v)| json!({ "config": c.to_string(), "stability": v.stability, "polystable": v.polystable }))
                .collect();
            print_json(&Value::Array(rows));
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run(a) => run(a),
        Command::Fq(c) => fq(c),
        Command::Slice(c) => slice(c),
        Command::Betti(c) => betti(c),
        Command::Picard(c) => picard_cmd(c),
        Command::Stability(c) => stability(c),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure(code, msg)) => {
            if !msg.is_empty() {
                eprintln!("modpoints: {msg}");
            }
            ExitCode::from(code)
        }
    }
}
