//! `wada` — build and inspect Wada dessins over cyclic projective spaces.
//!
//! Exit codes: 0 success, 1 reference-fixture mismatch, 2 usage or input
//! error, 3 internal invariant failure, 4 search budget exhausted, 5 size
//! guard tripped.

mod report;
mod reproduce;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use wada_core::dessin::DEFAULT_EDGE_LIMIT;
use wada_core::ordering::DEFAULT_SEARCH_BUDGET;
use wada_core::{
    autgrp, build_dessin_with_limit, check_automorphism, check_prime_case_conditions,
    find_compatible_ordering, frobenius_group_report, generate_singer_set, space_params,
    subgroup_feasibility, Dessin, DifferenceSet, Error, OrderedDifferenceSet, SpaceParams,
    VertexMap,
};

#[derive(Debug)]
enum CliError {
    Core(Error),
    Usage(String),
    Io(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Usage(msg) => write!(f, "{msg}"),
            CliError::Io(msg) => write!(f, "{msg}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(Error::BudgetExhausted { .. }) => 4,
            CliError::Core(Error::SizeGuard { .. }) => 5,
            CliError::Core(Error::Internal(_)) => 3,
            CliError::Core(_) => 2,
            CliError::Usage(_) => 2,
            CliError::Io(_) => 2,
        }
    }
}

type CliResult<T> = Result<T, CliError>;

#[derive(Parser)]
#[command(
    name = "wada",
    version,
    about = "Singer difference sets, Wada dessins and their automorphisms"
)]
struct Cli {
    /// Emit machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parameters of P^m(F_n) and the group feasibility conditions.
    Space(SpaceArgs),
    /// Generate and verify the Singer difference set of a space.
    Diffset(DiffsetArgs),
    /// Search for a Wada (optionally Frobenius) compatible ordering.
    Order(OrderArgs),
    /// Build the dessin and report cells, signature, genus and Wada status.
    Dessin(DessinArgs),
    /// Certify automorphism candidates of a dessin.
    Aut(AutArgs),
    /// Re-run the reference fixtures and report pass/fail per item.
    Reproduce(ReproduceArgs),
}

#[derive(Args, Clone)]
struct SpaceSelector {
    /// Projective dimension m (at least 2).
    #[arg(short, long)]
    m: Option<u32>,
    /// Prime p of the base field.
    #[arg(short, long)]
    p: Option<u64>,
    /// Exponent e with n = p^e.
    #[arg(short, long, default_value_t = 1)]
    e: u32,
}

impl SpaceSelector {
    fn params(&self) -> CliResult<SpaceParams> {
        let (Some(m), Some(p)) = (self.m, self.p) else {
            return Err(CliError::Usage(
                "this command needs a space: -m <M> -p <P> [-e <E>]".into(),
            ));
        };
        Ok(space_params(m, p, self.e)?)
    }
}

#[derive(Args)]
struct SpaceArgs {
    #[command(flatten)]
    space: SpaceSelector,
}

#[derive(Args)]
struct DiffsetArgs {
    #[command(flatten)]
    space: SpaceSelector,
    /// Also print the multiplier orbit decomposition.
    #[arg(long)]
    orbits: bool,
    /// Also print the family of fixed shifted sets.
    #[arg(long)]
    shifts: bool,
}

#[derive(Args)]
struct OrderArgs {
    #[command(flatten)]
    space: SpaceSelector,
    /// Difference set to order, as a JSON file {"modulus": .., "elements": [..]}.
    #[arg(long, value_name = "FILE", conflicts_with_all = ["m", "p"])]
    set: Option<PathBuf>,
    /// Demand the block structure of the Frobenius multiplier.
    #[arg(long)]
    frobenius: bool,
    /// Search node budget.
    #[arg(long, default_value_t = DEFAULT_SEARCH_BUDGET)]
    budget: u64,
    /// Multiplier for --frobenius when the set comes from a file.
    #[arg(long)]
    multiplier: Option<u64>,
    /// Group order for --frobenius when the set comes from a file.
    #[arg(long)]
    group_order: Option<u64>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum OrderingStrategy {
    /// Search for an ordering with all consecutive differences prime to l.
    Wada,
    /// Search for a Frobenius-compatible ordering (implies the Wada check).
    Frobenius,
    /// Use the elements in ascending order as-is.
    Sorted,
}

#[derive(Args)]
struct DessinInputs {
    #[command(flatten)]
    space: SpaceSelector,
    /// Difference set JSON file instead of generating from a space.
    #[arg(long, value_name = "FILE")]
    set: Option<PathBuf>,
    /// Ordered difference set JSON file {"modulus": .., "order": [..]}.
    #[arg(long, value_name = "FILE")]
    order: Option<PathBuf>,
    /// How to order the set when no --order file is given (dessin defaults
    /// to wada, aut to frobenius).
    #[arg(long, value_enum)]
    ordering: Option<OrderingStrategy>,
    /// Search node budget for the ordering strategies.
    #[arg(long, default_value_t = DEFAULT_SEARCH_BUDGET)]
    budget: u64,
    /// Cap on the edge count q*l of the map.
    #[arg(long, default_value_t = DEFAULT_EDGE_LIMIT)]
    max_edges: u64,
    /// Build even past the edge cap.
    #[arg(long)]
    force_large: bool,
}

#[derive(Args)]
struct DessinArgs {
    #[command(flatten)]
    inputs: DessinInputs,
    /// Write a DOT rendering of the bipartite graph.
    #[arg(long, value_name = "FILE")]
    dot: Option<PathBuf>,
    /// Tint DOT edges by cell.
    #[arg(long)]
    color_cells: bool,
    /// Write a schematic SVG rendering.
    #[arg(long, value_name = "FILE")]
    svg: Option<PathBuf>,
}

#[derive(Args)]
struct AutArgs {
    #[command(flatten)]
    inputs: DessinInputs,
    /// Check one affine map t,s (x -> t*x + s mod l).
    #[arg(long, value_name = "T,S")]
    map: Option<String>,
    /// Report on the whole cyclic multiplier group (default when -m/-p given).
    #[arg(long)]
    group: bool,
}

#[derive(Args)]
struct ReproduceArgs {
    /// Re-run the worked reference examples.
    #[arg(long)]
    examples: bool,
    /// Re-run the reference parameter table end to end.
    #[arg(long)]
    table2: bool,
    /// Search node budget.
    #[arg(long, default_value_t = DEFAULT_SEARCH_BUDGET)]
    budget: u64,
    /// Also build the maps that exceed the default size guard.
    #[arg(long)]
    force_large: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(cli: &Cli) -> CliResult<ExitCode> {
    if !cli.json {
        println!("# wada {}", env!("CARGO_PKG_VERSION"));
    }
    match &cli.command {
        Command::Space(args) => cmd_space(cli.json, args),
        Command::Diffset(args) => cmd_diffset(cli.json, args),
        Command::Order(args) => cmd_order(cli.json, args),
        Command::Dessin(args) => cmd_dessin(cli.json, args),
        Command::Aut(args) => cmd_aut(cli.json, args),
        Command::Reproduce(args) => reproduce::run(cli.json, args),
    }
}

fn cmd_space(json: bool, args: &SpaceArgs) -> CliResult<ExitCode> {
    let params = args.space.params()?;
    let prime_case = check_prime_case_conditions(&params);
    let subgroups = subgroup_feasibility(&params);
    if json {
        let payload = serde_json::json!({
            "params": params,
            "prime_case": prime_case,
            "subgroups": subgroups,
        });
        println!("{}", serde_json::to_string_pretty(&payload).unwrap());
    } else {
        report::print_space(&params, &prime_case, &subgroups);
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_diffset(json: bool, args: &DiffsetArgs) -> CliResult<ExitCode> {
    let params = args.space.params()?;
    let set = generate_singer_set(&params)?;
    let orbits = if args.orbits {
        Some(wada_core::frobenius_orbits(
            &set,
            params.p,
            params.f as u64,
        )?)
    } else {
        None
    };
    let shifts = if args.shifts {
        Some(wada_core::frobenius_shift_family(&set, params.p)?)
    } else {
        None
    };
    if json {
        let mut payload = serde_json::json!({
            "params": params,
            "set": set,
            "fixed_by_multiplier": set.is_fixed_by_multiplier(params.p),
        });
        if let Some(orbits) = &orbits {
            payload["orbits"] = serde_json::to_value(orbits).unwrap();
        }
        if let Some(shifts) = &shifts {
            payload["shifts"] = serde_json::to_value(shifts).unwrap();
        }
        println!("{}", serde_json::to_string_pretty(&payload).unwrap());
    } else {
        report::print_diffset(&params, &set, orbits.as_ref(), shifts.as_deref());
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_order(json: bool, args: &OrderArgs) -> CliResult<ExitCode> {
    let (set, p, f) = match &args.set {
        Some(path) => {
            let set: DifferenceSet = read_json(path)?;
            let (p, f) = if args.frobenius {
                match (args.multiplier, args.group_order) {
                    (Some(p), Some(f)) => (p, f),
                    _ => {
                        return Err(CliError::Usage(
                            "--frobenius with --set needs --multiplier and --group-order".into(),
                        ))
                    }
                }
            } else {
                (args.multiplier.unwrap_or(1), args.group_order.unwrap_or(1))
            };
            (set, p, f)
        }
        None => {
            let params = args.space.params()?;
            let set = generate_singer_set(&params)?;
            (set, params.p, params.f as u64)
        }
    };
    let found = find_compatible_ordering(&set, p, f, args.frobenius, args.budget)?;
    match found {
        Some(ordering) => {
            let compat = if set.is_fixed_by_multiplier(p) && f > 1 {
                wada_core::full_report(&ordering, p, f)?
            } else {
                wada_core::is_wada_compatible(&ordering)
            };
            if json {
                let payload = serde_json::json!({
                    "found": true,
                    "ordering": ordering,
                    "compatibility": compat,
                });
                println!("{}", serde_json::to_string_pretty(&payload).unwrap());
            } else {
                report::print_ordering(&ordering, &compat);
            }
        }
        None => {
            if json {
                let payload = serde_json::json!({
                    "found": false,
                    "exhausted": true,
                });
                println!("{}", serde_json::to_string_pretty(&payload).unwrap());
            } else {
                println!(
                    "NOT-FOUND: search space exhausted; no compatible ordering of this set exists"
                );
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

/// Resolves the dessin inputs into a built map plus the space parameters
/// when they are known.
fn obtain_dessin(
    inputs: &DessinInputs,
    default_strategy: OrderingStrategy,
) -> CliResult<(Dessin, Option<SpaceParams>)> {
    let max_edges = if inputs.force_large {
        u64::MAX
    } else {
        inputs.max_edges
    };
    if let Some(path) = &inputs.order {
        let ordering: OrderedDifferenceSet = read_json(path)?;
        let params = maybe_params(&inputs.space)?;
        if let Some(params) = &params {
            if params.l != ordering.modulus() {
                return Err(CliError::Usage(format!(
                    "ordering modulus {} does not match the space (l = {})",
                    ordering.modulus(),
                    params.l
                )));
            }
        }
        let dessin = build_dessin_with_limit(&ordering, max_edges)?;
        return Ok((dessin, params));
    }
    let (set, params) = match &inputs.set {
        Some(path) => (
            read_json::<DifferenceSet>(path)?,
            maybe_params(&inputs.space)?,
        ),
        None => {
            let params = inputs.space.params()?;
            (generate_singer_set(&params)?, Some(params))
        }
    };
    let strategy = inputs.ordering.unwrap_or(default_strategy);
    let ordering = match strategy {
        OrderingStrategy::Sorted => {
            OrderedDifferenceSet::new(set.clone(), set.elements().to_vec())?
        }
        OrderingStrategy::Wada | OrderingStrategy::Frobenius => {
            let require_frobenius = strategy == OrderingStrategy::Frobenius;
            let (p, f) = match &params {
                Some(params) => (params.p, params.f as u64),
                None => {
                    if require_frobenius {
                        return Err(CliError::Usage(
                            "--ordering frobenius with --set needs -m/-p/-e for the multiplier"
                                .into(),
                        ));
                    }
                    (1, 1)
                }
            };
            find_compatible_ordering(&set, p, f, require_frobenius, inputs.budget)?.ok_or(
                CliError::Usage(
                    "no compatible ordering exists for this set; try --ordering sorted".into(),
                ),
            )?
        }
    };
    let dessin = build_dessin_with_limit(&ordering, max_edges)?;
    Ok((dessin, params))
}

fn maybe_params(space: &SpaceSelector) -> CliResult<Option<SpaceParams>> {
    if space.m.is_some() && space.p.is_some() {
        Ok(Some(space.params()?))
    } else {
        Ok(None)
    }
}

fn cmd_dessin(json: bool, args: &DessinArgs) -> CliResult<ExitCode> {
    let (dessin, _) = obtain_dessin(&args.inputs, OrderingStrategy::Wada)?;
    if let Some(path) = &args.dot {
        write_file(path, &wada_core::export::to_dot(&dessin, args.color_cells))?;
    }
    if let Some(path) = &args.svg {
        write_file(path, &wada_core::export::to_svg(&dessin))?;
    }
    let report = dessin.report();
    if json {
        println!("{}", serde_json::to_string_pretty(&report).unwrap());
    } else {
        report::print_dessin(&dessin, &report);
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_aut(json: bool, args: &AutArgs) -> CliResult<ExitCode> {
    let (dessin, params) = obtain_dessin(&args.inputs, OrderingStrategy::Frobenius)?;
    let map = match &args.map {
        Some(spec) => Some(parse_map(spec)?),
        None => None,
    };
    let want_group = args.group || map.is_none();

    let map_report = match map {
        Some(map) => Some(check_automorphism(&dessin, &map)?),
        None => None,
    };
    let group_report = if want_group {
        let params = params.ok_or_else(|| {
            CliError::Usage("--group needs the space parameters (-m/-p/-e)".into())
        })?;
        Some(frobenius_group_report(&dessin, params.p, params.f)?)
    } else {
        None
    };

    if json {
        let mut payload = serde_json::Map::new();
        if let Some(r) = &map_report {
            payload.insert("map_check".into(), serde_json::to_value(r).unwrap());
        }
        if let Some(r) = &group_report {
            payload.insert("group".into(), serde_json::to_value(r).unwrap());
        }
        println!(
            "{}",
            serde_json::to_string_pretty(&serde_json::Value::Object(payload)).unwrap()
        );
    } else {
        if let Some(r) = &map_report {
            report::print_aut_report(r);
        }
        if let Some(r) = &group_report {
            report::print_group_report(r);
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn parse_map(spec: &str) -> CliResult<VertexMap> {
    let parts: Vec<&str> = spec.split(',').collect();
    if parts.len() != 2 {
        return Err(CliError::Usage(format!("--map expects T,S; got '{spec}'")));
    }
    let t = parts[0]
        .trim()
        .parse::<u64>()
        .map_err(|_| CliError::Usage(format!("bad multiplier in --map '{spec}'")))?;
    let s = parts[1]
        .trim()
        .parse::<u64>()
        .map_err(|_| CliError::Usage(format!("bad shift in --map '{spec}'")))?;
    Ok(autgrp::VertexMap::affine(t, s))
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> CliResult<T> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::Io(format!("cannot parse {}: {e}", path.display())))
}

fn write_file(path: &Path, content: &str) -> CliResult<()> {
    std::fs::write(path, content)
        .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))
}
