//! `zp`: generate, solve, simulate, and verify zombie and cop pursuit games
//! on finite connected graphs.
//!
//! Reports go to stdout and are deterministic for fixed flags and inputs;
//! timing goes to stderr. Exit codes: 0 success or pass, 1 a verification
//! claim was refuted, 2 usage error, 3 state budget exceeded.

mod input;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use zp_core::{
    cartesian_product, extract_strategies, families, is_dismantlable, pursuit_number, simulate,
    solve_fixed, verify_pursuer_policy, verify_survivor_policy, Budget, DistanceMatrix, Factor,
    GameState, GreedyPursuer, OptimalPursuer, OptimalSurvivor, Outcome, PetalSurvivorPolicy,
    ProductZombiePolicy, PursuerKind, PursuerVerdict, PursuitOutcome, Rules, SimulationTrace,
    SolveError, SolveResult, SurvivorVerdict, TurnOrder, VerifyError, VertexId,
};

use input::{load, GraphInput};

#[derive(Parser)]
#[command(
    name = "zp",
    version,
    about = "Zombie and cop pursuit games on finite connected graphs",
    after_help = "GRAPH arguments are edge-list files (first line `n m`, then one `u v` line \
                  per edge) or family specs: path:N, cycle:N, complete:N, hypercube:D, petal:K, \
                  with shorthands pN cN kN qN petalK.\n\
                  ZP_MEM_BUDGET caps solver and verifier state counts (default 50000000)."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Who moves first within each round.
    #[arg(long, global = true, value_enum, default_value_t = TurnOrderArg::PursuersFirst)]
    turn_order: TurnOrderArg,

    /// The survivor may step onto an occupied vertex without being caught.
    #[arg(long, global = true)]
    no_entry_capture: bool,

    /// The survivor must move every round instead of being allowed to stay.
    #[arg(long, global = true)]
    no_survivor_pass: bool,

    /// One machine-readable tab-separated summary line instead of the report.
    #[arg(long, global = true)]
    tsv: bool,

    /// Worker threads for exhaustive verification (default: all cores).
    #[arg(long, global = true, value_name = "N")]
    threads: Option<usize>,
}

impl Cli {
    fn rules(&self, kind: PursuerKind) -> Rules {
        let base = match kind {
            PursuerKind::Zombie => Rules::zombie(),
            PursuerKind::Cop => Rules::cop(),
        };
        base.with_turn_order(self.turn_order.into())
            .with_entry_capture(!self.no_entry_capture)
            .with_survivor_pass(!self.no_survivor_pass)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Generate a graph family or transform as an edge list
    Gen(GenArgs),
    /// Cartesian product of two graphs as an edge list
    Product(ProductArgs),
    /// Compute who wins, or the least winning pursuer count with --min
    Solve(SolveArgs),
    /// Play one game out and print the trace
    Simulate(SimulateArgs),
    /// Check the composed-product bound or the petal walk exhaustively
    Verify(VerifyArgs),
    /// Render a graph in DOT format
    Export(ExportArgs),
    /// Vertex, edge, degree, diameter, and dismantlability summary
    Info(InfoArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TurnOrderArg {
    PursuersFirst,
    SurvivorFirst,
}

impl From<TurnOrderArg> for TurnOrder {
    fn from(arg: TurnOrderArg) -> TurnOrder {
        match arg {
            TurnOrderArg::PursuersFirst => TurnOrder::PursuersFirst,
            TurnOrderArg::SurvivorFirst => TurnOrder::SurvivorFirst,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PursuerArg {
    Zombie,
    Cop,
}

impl From<PursuerArg> for PursuerKind {
    fn from(arg: PursuerArg) -> PursuerKind {
        match arg {
            PursuerArg::Zombie => PursuerKind::Zombie,
            PursuerArg::Cop => PursuerKind::Cop,
        }
    }
}

#[derive(Args)]
struct GenArgs {
    /// Family or transform to build.
    #[arg(long, value_enum)]
    family: Family,

    /// Vertex count for path/cycle/complete, dimension for hypercube.
    #[arg(long, value_name = "N")]
    n: Option<usize>,

    /// Petal parameter, or subdivisions per edge for subdivide-keep.
    #[arg(long, value_name = "K")]
    k: Option<usize>,

    /// Base graph for the pendant and subdivide-keep transforms.
    #[arg(long, value_name = "GRAPH")]
    base: Option<String>,

    /// Pendant attachment points: one new leaf per entry, added in order, so
    /// later entries may name earlier leaves.
    #[arg(long, value_delimiter = ',', value_name = "V,V,...")]
    attach: Vec<VertexId>,

    /// Write here instead of stdout.
    #[arg(short, long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Path,
    Cycle,
    Complete,
    Hypercube,
    Petal,
    /// Leaf vertices added to --base at the --attach points.
    Pendant,
    /// Every edge of --base subdivided K times, original edges kept.
    SubdivideKeep,
}

#[derive(Args)]
struct ProductArgs {
    /// Left factor: edge-list file or family spec.
    g: String,
    /// Right factor: edge-list file or family spec.
    h: String,
    /// Write here instead of stdout.
    #[arg(short, long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SolveArgs {
    /// Edge-list file or family spec.
    graph: String,

    /// Pursuer kind the rules use.
    #[arg(long, value_enum)]
    pursuer: PursuerArg,

    /// Solve for exactly this many pursuers.
    #[arg(
        long,
        value_name = "K",
        required_unless_present = "min",
        conflicts_with = "min"
    )]
    k: Option<usize>,

    /// Find the least pursuer count that wins.
    #[arg(long)]
    min: bool,

    /// Largest count --min tries (default: the vertex count).
    #[arg(long, value_name = "K")]
    kmax: Option<usize>,
}

#[derive(Args)]
struct SimulateArgs {
    /// Edge-list file or family spec.
    graph: String,

    /// Pursuer kind the rules use.
    #[arg(long, value_enum, default_value_t = PursuerArg::Zombie)]
    pursuer: PursuerArg,

    /// Number of pursuers.
    #[arg(long, value_name = "K", default_value_t = 1)]
    k: usize,

    /// greedy: smallest geodesic step each; optimal: the solver's strategy
    /// from its best placement.
    #[arg(long, value_enum, default_value_t = PursuerPolicyArg::Greedy)]
    pursuer_policy: PursuerPolicyArg,

    /// optimal: the solver's strategy; petal: the staged hub walk (petal
    /// specs only).
    #[arg(long, value_enum, default_value_t = SurvivorPolicyArg::Optimal)]
    survivor_policy: SurvivorPolicyArg,

    /// Clockwise start distance from the hub for the petal walk.
    #[arg(long, value_name = "1|2", default_value_t = 2)]
    start_offset: usize,

    /// Stop after this many rounds without capture or repetition.
    #[arg(long, value_name = "N", default_value_t = 100)]
    max_rounds: usize,

    /// Write the trace here instead of stdout.
    #[arg(short, long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PursuerPolicyArg {
    Greedy,
    Optimal,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SurvivorPolicyArg {
    Optimal,
    Petal,
}

#[derive(Args)]
#[command(group = clap::ArgGroup::new("claim").required(true))]
struct VerifyArgs {
    /// Solve both factors, compose their zombies on the product, and check
    /// the composition captures against exhaustive survivor play.
    #[arg(long, num_args = 2, value_names = ["G", "H"], group = "claim")]
    thm1: Option<Vec<String>>,

    /// Build the petal graph for this parameter and check its walk outlives
    /// one fewer zombie, over every placement and every zombie line.
    #[arg(long, value_name = "K", group = "claim")]
    thm2: Option<usize>,

    /// Clockwise start distance from the hub for the petal walk (--thm2).
    #[arg(long, value_name = "1|2", default_value_t = 2)]
    start_offset: usize,

    /// Largest factor pursuit count tried (--thm1; default: vertex count).
    #[arg(long, value_name = "K")]
    kmax: Option<usize>,
}

#[derive(Args)]
struct ExportArgs {
    /// Edge-list file or family spec.
    graph: String,
    /// Write here instead of stdout.
    #[arg(short, long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct InfoArgs {
    /// Edge-list file or family spec.
    graph: String,
}

enum Failure {
    Usage(String),
    Budget(String),
}

fn usage<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Usage(e.to_string())
}

fn solve_failure(e: SolveError) -> Failure {
    match e {
        SolveError::BudgetExceeded { .. } => Failure::Budget(e.to_string()),
        SolveError::NoPursuers => Failure::Usage(e.to_string()),
    }
}

fn budget_from_env() -> Result<Budget, Failure> {
    match std::env::var("ZP_MEM_BUDGET") {
        Ok(text) => {
            let max_states = text.trim().parse().map_err(|_| {
                Failure::Usage(format!("ZP_MEM_BUDGET must be a state count, got {text:?}"))
            })?;
            Ok(Budget { max_states })
        }
        Err(_) => Ok(Budget::default()),
    }
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => {
            fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn join(ids: &[VertexId], sep: &str) -> String {
    ids.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(sep)
}

fn rules_line(rules: &Rules) -> String {
    let kind = match rules.pursuer_kind {
        PursuerKind::Zombie => "zombie",
        PursuerKind::Cop => "cop",
    };
    let order = match rules.turn_order {
        TurnOrder::PursuersFirst => "pursuers-first",
        TurnOrder::SurvivorFirst => "survivor-first",
    };
    let flag = |on: bool| if on { "on" } else { "off" };
    format!(
        "pursuers={kind} order={order} entry-capture={} pass={} must-move={}",
        flag(rules.capture_on_survivor_entry),
        flag(rules.survivor_may_pass),
        flag(rules.pursuers_must_move),
    )
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
        {
            eprintln!("error: --threads: {e}");
            return ExitCode::from(2);
        }
    }
    let started = Instant::now();
    let code = match run(&cli) {
        Ok(code) => code,
        Err(Failure::Usage(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
        Err(Failure::Budget(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(3)
        }
    };
    eprintln!("elapsed: {:?}", started.elapsed());
    code
}

fn run(cli: &Cli) -> Result<ExitCode, Failure> {
    match &cli.command {
        Command::Gen(args) => run_gen(args),
        Command::Product(args) => run_product(args),
        Command::Solve(args) => run_solve(cli, args),
        Command::Simulate(args) => run_simulate(cli, args),
        Command::Verify(args) => run_verify(cli, args),
        Command::Export(args) => run_export(args),
        Command::Info(args) => run_info(cli, args),
    }
}

fn run_gen(args: &GenArgs) -> Result<ExitCode, Failure> {
    let need = |value: Option<usize>, flag: &str| {
        value.ok_or_else(|| Failure::Usage(format!("this family needs {flag}")))
    };
    let base = |args: &GenArgs| -> Result<GraphInput, Failure> {
        let arg = args
            .base
            .as_deref()
            .ok_or_else(|| Failure::Usage("this transform needs --base GRAPH".to_string()))?;
        load(arg).map_err(Failure::Usage)
    };
    let graph = match args.family {
        Family::Path => families::path(need(args.n, "--n")?).map_err(usage)?,
        Family::Cycle => families::cycle(need(args.n, "--n")?).map_err(usage)?,
        Family::Complete => families::complete(need(args.n, "--n")?).map_err(usage)?,
        Family::Hypercube => families::hypercube(need(args.n, "--n")?).map_err(usage)?,
        Family::Petal => families::petal(need(args.k, "--k")?).map_err(usage)?.0,
        Family::Pendant => {
            if args.attach.is_empty() {
                return Err(Failure::Usage("pendant needs --attach V,V,...".to_string()));
            }
            let mut graph = base(args)?.graph;
            for &v in &args.attach {
                graph = graph.add_pendants(&[v]).map_err(usage)?;
            }
            graph
        }
        Family::SubdivideKeep => base(args)?.graph.subdivide_and_keep(need(args.k, "--k")?),
    };
    emit(&args.out, &graph.to_edge_list())?;
    Ok(ExitCode::SUCCESS)
}

fn run_product(args: &ProductArgs) -> Result<ExitCode, Failure> {
    let left = load(&args.g).map_err(Failure::Usage)?;
    let right = load(&args.h).map_err(Failure::Usage)?;
    let product = cartesian_product(&left.graph, &right.graph);
    emit(&args.out, &product.to_edge_list())?;
    Ok(ExitCode::SUCCESS)
}

fn run_export(args: &ExportArgs) -> Result<ExitCode, Failure> {
    let input = load(&args.graph).map_err(Failure::Usage)?;
    emit(&args.out, &input.graph.to_dot())?;
    Ok(ExitCode::SUCCESS)
}

fn run_info(cli: &Cli, args: &InfoArgs) -> Result<ExitCode, Failure> {
    let input = load(&args.graph).map_err(Failure::Usage)?;
    let graph = &input.graph;
    let dist = DistanceMatrix::compute(graph);
    let n = graph.vertex_count();
    let (mut deg_min, mut deg_max) = (usize::MAX, 0);
    for v in 0..n {
        deg_min = deg_min.min(graph.degree(v));
        deg_max = deg_max.max(graph.degree(v));
    }
    let dist_ref = &dist;
    let diameter = (0..n)
        .flat_map(|u| (0..n).map(move |v| dist_ref.get(u, v)))
        .max()
        .unwrap_or(0);
    let dismantlable = if is_dismantlable(graph) { "yes" } else { "no" };
    if cli.tsv {
        println!(
            "info\tgraph={}\tn={n}\tm={}\tdeg-min={deg_min}\tdeg-max={deg_max}\t\
             diameter={diameter}\tdismantlable={dismantlable}",
            input.name,
            graph.edge_count(),
        );
    } else {
        println!(
            "graph {}: {n} vertices, {} edges",
            input.name,
            graph.edge_count()
        );
        println!(
            "degree: min {deg_min}, max {deg_max}, mean {:.2}",
            2.0 * graph.edge_count() as f64 / n as f64
        );
        println!("diameter: {diameter}");
        println!("dismantlable: {dismantlable}");
    }
    Ok(ExitCode::SUCCESS)
}

/// Longest optimal resistance over survivor starts, in plies, for a winning
/// placement.
fn resistance(result: &SolveResult, placement: &[VertexId], rules: &Rules) -> u32 {
    let first = rules.first_side();
    (0..result.vertex_count())
        .filter_map(|s| result.rank_of(&GameState::new(placement.to_vec(), s, first)))
        .max()
        .unwrap_or(0)
}

fn run_solve(cli: &Cli, args: &SolveArgs) -> Result<ExitCode, Failure> {
    let input = load(&args.graph).map_err(Failure::Usage)?;
    let graph = &input.graph;
    let rules = cli.rules(args.pursuer.into());
    let dist = DistanceMatrix::compute(graph);
    let budget = budget_from_env()?;
    let letter = match rules.pursuer_kind {
        PursuerKind::Zombie => 'z',
        PursuerKind::Cop => 'c',
    };
    let kind = match args.pursuer {
        PursuerArg::Zombie => "zombie",
        PursuerArg::Cop => "cop",
    };
    if !cli.tsv {
        println!(
            "graph {}: {} vertices, {} edges",
            input.name,
            graph.vertex_count(),
            graph.edge_count()
        );
        println!("rules: {}", rules_line(&rules));
    }
    if args.min {
        let kmax = args.kmax.unwrap_or(graph.vertex_count());
        match pursuit_number(graph, &dist, &rules, kmax, &budget).map_err(solve_failure)? {
            PursuitOutcome::Found { number, result } => {
                let placement = result
                    .winning_placement()
                    .expect("a found number has a placement")
                    .to_vec();
                let plies = resistance(&result, &placement, &rules);
                if cli.tsv {
                    println!(
                        "solve\tgraph={}\tpursuer={kind}\tmode=min\tnumber={number}\t\
                         placement={}\tplies={plies}\tstates={}",
                        input.name,
                        join(&placement, ","),
                        result.state_count(),
                    );
                } else {
                    println!("{letter} = {number}");
                    println!("winning placement: {}", join(&placement, " "));
                    println!("longest resistance: {plies} plies");
                    println!("states: {}", result.state_count());
                }
            }
            PursuitOutcome::Unknown { k_max } => {
                if cli.tsv {
                    println!(
                        "solve\tgraph={}\tpursuer={kind}\tmode=min\tnumber=unknown\tkmax={k_max}",
                        input.name,
                    );
                } else {
                    println!("{letter} > {k_max} (no count up to {k_max} wins; raise --kmax)");
                }
            }
        }
        return Ok(ExitCode::SUCCESS);
    }
    let k = args.k.expect("clap requires --k without --min");
    let result = solve_fixed(graph, &dist, k, &rules, &budget).map_err(solve_failure)?;
    if result.pursuer_wins_game() {
        let placement = result
            .winning_placement()
            .expect("a won game has a placement")
            .to_vec();
        let plies = resistance(&result, &placement, &rules);
        if cli.tsv {
            println!(
                "solve\tgraph={}\tpursuer={kind}\tmode=k\tk={k}\twinner=pursuers\t\
                 placement={}\tplies={plies}\tstates={}",
                input.name,
                join(&placement, ","),
                result.state_count(),
            );
        } else {
            println!(
                "pursuers win: placement {} captures from every start",
                join(&placement, " ")
            );
            println!("longest resistance: {plies} plies");
            println!("states: {}", result.state_count());
        }
    } else if cli.tsv {
        println!(
            "solve\tgraph={}\tpursuer={kind}\tmode=k\tk={k}\twinner=survivor\tstates={}",
            input.name,
            result.state_count(),
        );
    } else {
        println!("survivor wins: some start outlasts every placement of {k} pursuer(s)");
        println!("states: {}", result.state_count());
    }
    Ok(ExitCode::SUCCESS)
}

fn run_simulate(cli: &Cli, args: &SimulateArgs) -> Result<ExitCode, Failure> {
    let input = load(&args.graph).map_err(Failure::Usage)?;
    let graph = &input.graph;
    let rules = cli.rules(args.pursuer.into());
    let dist = DistanceMatrix::compute(graph);
    let budget = budget_from_env()?;

    let needs_solver = args.pursuer_policy == PursuerPolicyArg::Optimal
        || args.survivor_policy == SurvivorPolicyArg::Optimal;
    let solved = if needs_solver {
        Some(solve_fixed(graph, &dist, args.k, &rules, &budget).map_err(solve_failure)?)
    } else {
        None
    };
    let strategies = solved
        .as_ref()
        .map(|result| extract_strategies(graph, &dist, result));

    let petal_walk = || -> Result<PetalSurvivorPolicy, Failure> {
        let descriptor = input.petal.as_ref().ok_or_else(|| {
            Failure::Usage("the petal walk needs a petal:K graph spec".to_string())
        })?;
        if !(1..=2).contains(&args.start_offset) {
            return Err(Failure::Usage("--start-offset must be 1 or 2".to_string()));
        }
        Ok(PetalSurvivorPolicy::new(descriptor, &dist)
            .with_start_offset(args.start_offset)
            .with_turn_order(rules.turn_order))
    };

    let trace = match (args.pursuer_policy, args.survivor_policy) {
        (PursuerPolicyArg::Greedy, SurvivorPolicyArg::Optimal) => {
            let result = solved.as_ref().unwrap();
            let survivor = OptimalSurvivor::new(result, &strategies.as_ref().unwrap().1);
            let pursuer = GreedyPursuer::new(graph, &dist, args.k);
            simulate(graph, &dist, &rules, &pursuer, &survivor, args.max_rounds)
        }
        (PursuerPolicyArg::Greedy, SurvivorPolicyArg::Petal) => {
            let pursuer = GreedyPursuer::new(graph, &dist, args.k);
            simulate(
                graph,
                &dist,
                &rules,
                &pursuer,
                &petal_walk()?,
                args.max_rounds,
            )
        }
        (PursuerPolicyArg::Optimal, SurvivorPolicyArg::Optimal) => {
            let result = solved.as_ref().unwrap();
            let (ps, ss) = strategies.as_ref().unwrap();
            let pursuer = OptimalPursuer::new(result, ps);
            let survivor = OptimalSurvivor::new(result, ss);
            simulate(graph, &dist, &rules, &pursuer, &survivor, args.max_rounds)
        }
        (PursuerPolicyArg::Optimal, SurvivorPolicyArg::Petal) => {
            let result = solved.as_ref().unwrap();
            let pursuer = OptimalPursuer::new(result, &strategies.as_ref().unwrap().0);
            simulate(
                graph,
                &dist,
                &rules,
                &pursuer,
                &petal_walk()?,
                args.max_rounds,
            )
        }
    }
    .map_err(usage)?;

    if args.out.is_some() {
        emit(&args.out, &trace.to_text())?;
    }
    if cli.tsv {
        println!(
            "simulate\tgraph={}\tk={}\t{}",
            input.name,
            args.k,
            outcome_fields(&trace)
        );
    } else if args.out.is_none() {
        print!("{}", trace.to_text());
    }
    Ok(ExitCode::SUCCESS)
}

fn outcome_fields(trace: &SimulationTrace) -> String {
    match trace.outcome {
        Outcome::Captured { round } => format!("outcome=captured\tround={round}"),
        Outcome::SurvivesForever {
            first_round,
            repeat_round,
        } => {
            format!("outcome=survives-forever\tfirst={first_round}\trepeat={repeat_round}")
        }
        Outcome::Cutoff { rounds } => format!("outcome=cutoff\trounds={rounds}"),
    }
}

fn run_verify(cli: &Cli, args: &VerifyArgs) -> Result<ExitCode, Failure> {
    if let Some(pair) = &args.thm1 {
        run_product_bound(cli, &pair[0], &pair[1], args.kmax)
    } else if let Some(k) = args.thm2 {
        run_petal_walk(cli, k, args.start_offset)
    } else {
        unreachable!("clap requires one claim")
    }
}

fn run_product_bound(
    cli: &Cli,
    left_arg: &str,
    right_arg: &str,
    kmax: Option<usize>,
) -> Result<ExitCode, Failure> {
    let rules = cli.rules(PursuerKind::Zombie);
    let budget = budget_from_env()?;
    let left = load(left_arg).map_err(Failure::Usage)?;
    let right = load(right_arg).map_err(Failure::Usage)?;
    let solve_factor =
        |input: &GraphInput| -> Result<(DistanceMatrix, SolveResult, usize), Failure> {
            let dist = DistanceMatrix::compute(&input.graph);
            let cap = kmax.unwrap_or(input.graph.vertex_count());
            match pursuit_number(&input.graph, &dist, &rules, cap, &budget)
                .map_err(solve_failure)?
            {
                PursuitOutcome::Found { number, result } => Ok((dist, result, number)),
                PursuitOutcome::Unknown { k_max } => Err(Failure::Usage(format!(
                    "{}: no pursuer count up to {k_max} wins; raise --kmax",
                    input.name
                ))),
            }
        };
    let (left_dist, left_result, left_z) = solve_factor(&left)?;
    let (right_dist, right_result, right_z) = solve_factor(&right)?;
    let (left_strategy, _) = extract_strategies(&left.graph, &left_dist, &left_result);
    let (right_strategy, _) = extract_strategies(&right.graph, &right_dist, &right_result);
    let product = cartesian_product(&left.graph, &right.graph);
    let dist = DistanceMatrix::compute(&product);
    let policy = ProductZombiePolicy::new(
        &product,
        Factor {
            graph: &left.graph,
            dist: &left_dist,
            strategy: &left_strategy,
            placement: left_result
                .winning_placement()
                .expect("factor was won")
                .to_vec(),
        },
        Factor {
            graph: &right.graph,
            dist: &right_dist,
            strategy: &right_strategy,
            placement: right_result
                .winning_placement()
                .expect("factor was won")
                .to_vec(),
        },
    )
    .map_err(usage)?;
    let zombies = left_z + right_z;
    if !cli.tsv {
        println!("z({}) = {left_z}, z({}) = {right_z}", left.name, right.name);
        println!(
            "product: {} vertices, {zombies} zombies composed from the factor strategies",
            product.vertex_count()
        );
    }
    match verify_pursuer_policy(&product, &dist, &rules, &policy, &budget) {
        Err(e @ VerifyError::BudgetExceeded { .. }) => Err(Failure::Budget(e.to_string())),
        Err(e) => {
            println!("fail: {e}");
            Ok(ExitCode::from(1))
        }
        Ok(PursuerVerdict::Captures {
            survivor_starts,
            explored,
            worst_case_rounds,
        }) => {
            if cli.tsv {
                println!(
                    "verify\tclaim=product-bound\tleft={}\tright={}\tzombies={zombies}\t\
                     result=pass\tstarts={survivor_starts}\tworst-rounds={worst_case_rounds}\t\
                     explored={explored}",
                    left.name, right.name,
                );
            } else {
                println!(
                    "pass: captured from every survivor start ({survivor_starts}), \
                     worst case {worst_case_rounds} rounds, explored {explored} states"
                );
            }
            Ok(ExitCode::SUCCESS)
        }
        Ok(PursuerVerdict::Escapes { counterexample }) => {
            if cli.tsv {
                println!(
                    "verify\tclaim=product-bound\tleft={}\tright={}\tzombies={zombies}\tresult=fail",
                    left.name, right.name,
                );
            } else {
                println!("fail: the survivor escapes the composed zombies");
                print!("{}", counterexample.to_text());
            }
            Ok(ExitCode::from(1))
        }
    }
}

fn run_petal_walk(cli: &Cli, k: usize, start_offset: usize) -> Result<ExitCode, Failure> {
    if k < 2 {
        return Err(Failure::Usage(
            "--thm2 needs K >= 2; the K = 1 claim is trivial".to_string(),
        ));
    }
    if !(1..=2).contains(&start_offset) {
        return Err(Failure::Usage("--start-offset must be 1 or 2".to_string()));
    }
    let rules = cli.rules(PursuerKind::Zombie);
    let budget = budget_from_env()?;
    let (graph, descriptor) = families::petal(k).map_err(usage)?;
    let dist = DistanceMatrix::compute(&graph);
    let policy = PetalSurvivorPolicy::new(&descriptor, &dist)
        .with_start_offset(start_offset)
        .with_turn_order(rules.turn_order);
    let zombies = k - 1;
    if !cli.tsv {
        println!(
            "petal {k}: {} vertices, walk start offset {start_offset}, vs {zombies} zombie(s)",
            graph.vertex_count()
        );
    }
    match verify_survivor_policy(&graph, &dist, &rules, &policy, zombies, &budget) {
        Err(e @ VerifyError::BudgetExceeded { .. }) => Err(Failure::Budget(e.to_string())),
        Err(e) => {
            println!("fail: {e}");
            Ok(ExitCode::from(1))
        }
        Ok(SurvivorVerdict::Survives {
            placements,
            explored,
        }) => {
            if cli.tsv {
                println!(
                    "verify\tclaim=petal-walk\tk={k}\tzombies={zombies}\toffset={start_offset}\t\
                     result=pass\tplacements={placements}\texplored={explored}"
                );
            } else {
                println!(
                    "pass: the walk outlives every placement ({placements}), \
                     explored {explored} round states"
                );
            }
            Ok(ExitCode::SUCCESS)
        }
        Ok(SurvivorVerdict::Caught { counterexample }) => {
            if cli.tsv {
                println!(
                    "verify\tclaim=petal-walk\tk={k}\tzombies={zombies}\toffset={start_offset}\t\
                     result=fail\tplacement={}",
                    join(counterexample.placement(), ","),
                );
            } else {
                println!(
                    "fail: placement {} catches the walk",
                    join(counterexample.placement(), " ")
                );
                print!("{}", counterexample.to_text());
            }
            Ok(ExitCode::from(1))
        }
    }
}
