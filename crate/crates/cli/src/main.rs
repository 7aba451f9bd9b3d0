use std::io::{self, BufRead, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use bopdepth::bop::{recognize_bop, Dissection};
use bopdepth::efgame::{
    depth_csv_row, evaluate_bound, is_partial_iso, AsStructure, BoundFormula, RelStructure, Side, Solver,
    ALL_FORMULAS, DEPTH_CSV_HEADER,
};
use bopdepth::facing::{facing, facing_of_dissection, validate_layout, GraphWithLayout};
use bopdepth::params::{fineness, yuppie_set};
use bopdepth::pseudo::check_pseudo_bop;
use bopdepth::toolkit::experiment::ExperimentConfig;
use bopdepth::toolkit::{enumerate_dissections, run_experiment, sample_rng, Sampler};
use bopdepth::{verify, Error, Graph};
use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(name = "bopdepth", version, about = "Outerplanar graphs, facing structures and Ehrenfeucht game depth")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report BOP and pseudo-BOP structure of a graph or dissection file.
    Check { file: PathBuf },
    /// Print the facing structure (graph with layout) of a graph or dissection.
    Facing { file: PathBuf },
    /// Least number of rounds in which Spoiler wins.
    Game {
        left: PathBuf,
        right: PathBuf,
        #[arg(long = "max-k", default_value_t = 6)]
        max_k: usize,
        /// Play on the facing structures instead of the graphs.
        #[arg(long)]
        facing: bool,
        /// Print a `left,right,maxK,depth` row instead of prose.
        #[arg(long)]
        csv: bool,
    },
    /// Evaluate a closed-form depth bound.
    Bound {
        formula: String,
        #[arg(allow_negative_numbers = true)]
        params: Vec<f64>,
    },
    /// Degree, diameter, fineness and yuppies of a graph (fineness and
    /// yuppies of the dual tree for BOP input).
    Params {
        file: PathBuf,
        #[arg(long, default_value_t = 1)]
        r: usize,
        #[arg(long)]
        cap: Option<usize>,
    },
    /// List every dissection of the n-gon.
    Enumerate { n: usize },
    /// Draw uniform random dissections.
    Sample {
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        count: usize,
    },
    /// Run a random-dissection experiment described by a TOML file.
    Experiment { config: PathBuf },
    /// Run the acceptance checks.
    Verify {
        /// Only run the given criteria.
        #[arg(long, value_delimiter = ',')]
        only: Vec<usize>,
    },
    /// Play Duplicator against the solver.
    Play {
        left: PathBuf,
        right: PathBuf,
        #[arg(long)]
        rounds: Option<usize>,
    },
}

enum Failure {
    Usage(String),
    Violation(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Violation(m) | Error::NotPseudoBop(m) => Failure::Violation(m),
            other => Failure::Usage(other.to_string()),
        }
    }
}

type Outcome = Result<(), Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

enum Input {
    Graph(Graph),
    Dissection(Dissection),
    Layout(GraphWithLayout),
}

fn load(path: &Path) -> Result<Input, Failure> {
    let text = read(path)?;
    let first = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .unwrap_or("");
    let in_context = |e: Error| Failure::Usage(format!("{}: {e}", path.display()));
    if first.starts_with("polygon") {
        return Dissection::from_text(&text).map(Input::Dissection).map_err(in_context);
    }
    let layout = text.lines().any(|l| l.trim_start().starts_with("l ") || l.trim_start().starts_with("c "));
    if layout {
        GraphWithLayout::from_text(&text).map(Input::Layout).map_err(in_context)
    } else {
        Graph::from_text(&text).map(Input::Graph).map_err(in_context)
    }
}

fn load_graph(path: &Path) -> Result<Graph, Failure> {
    match load(path)? {
        Input::Graph(g) => Ok(g),
        Input::Dissection(d) => Ok(d.graph()),
        Input::Layout(_) => Err(Failure::Usage(format!("{}: expected a graph, found a layout", path.display()))),
    }
}

fn load_structure(path: &Path, on_facing: bool) -> Result<RelStructure, Failure> {
    Ok(match (load(path)?, on_facing) {
        (Input::Layout(t), _) => t.as_structure(),
        (Input::Dissection(d), true) => facing_of_dissection(&d).as_structure(),
        (Input::Dissection(d), false) => d.graph().as_structure(),
        (Input::Graph(g), true) => facing(&g)?.as_structure(),
        (Input::Graph(g), false) => g.as_structure(),
    })
}

fn check(file: &Path) -> Outcome {
    let g = load_graph(file)?;
    println!("order {} size {}", g.order(), g.edge_count());
    match recognize_bop(&g) {
        Some(rec) => {
            println!("BOP: yes, outer cycle {:?}", rec.order);
            println!("dissection: {}", rec.dissection);
        }
        None => println!("BOP: no"),
    }
    let report = check_pseudo_bop(&g);
    println!("pseudo-facial cycles: {}", report.cycles.len());
    for c in &report.cycles {
        println!("  {c}");
    }
    println!("outer edges: {:?}", report.outer_edges);
    if report.is_pseudo_bop {
        println!("pseudo-BOP: yes");
        Ok(())
    } else {
        println!("pseudo-BOP: no");
        for v in &report.violations {
            println!("  {v:?}");
        }
        Err(Failure::Violation("not pseudo-BOP".into()))
    }
}

fn show_facing(file: &Path) -> Outcome {
    let f = match load(file)? {
        Input::Dissection(d) => facing_of_dissection(&d),
        Input::Graph(g) => facing(&g)?,
        Input::Layout(_) => return Err(Failure::Usage("input is already a graph with layout".into())),
    };
    print!("{}", f.gwl.to_text());
    let violations = validate_layout(&f.gwl);
    if !violations.is_empty() {
        eprintln!("layout is not valid:");
        for v in violations {
            eprintln!("  {:?} {:?}", v.condition, v.witnesses);
        }
    }
    Ok(())
}

fn stem(p: &Path) -> String {
    p.file_stem().map_or_else(|| p.display().to_string(), |s| s.to_string_lossy().into_owned())
}

fn game(left: &Path, right: &Path, max_k: usize, on_facing: bool, csv: bool) -> Outcome {
    let a = load_structure(left, on_facing)?;
    let b = load_structure(right, on_facing)?;
    let depth = Solver::new(&a, &b).depth(&[], max_k)?;
    if csv {
        println!("{DEPTH_CSV_HEADER}");
        println!("{}", depth_csv_row(&stem(left), &stem(right), max_k, depth));
    } else {
        match depth {
            Some(d) => println!("Spoiler wins in {d} rounds"),
            None => println!("Duplicator survives {max_k} rounds"),
        }
    }
    Ok(())
}

fn bound(name: &str, params: &[f64]) -> Outcome {
    let formula: BoundFormula = name.parse().map_err(|e: Error| {
        let names: Vec<&str> = ALL_FORMULAS.iter().map(|f| f.name()).collect();
        Failure::Usage(format!("{e}; known: {}", names.join(", ")))
    })?;
    let b = evaluate_bound(formula, params)?;
    println!("{formula}({}) {b}", params.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", "));
    Ok(())
}

fn params(file: &Path, r: usize, cap: Option<usize>) -> Outcome {
    let g = load_graph(file)?;
    println!("max degree {}", g.max_degree());
    println!("diameter {}", g.diameter()?);
    let tree = if g.is_tree() {
        Some(g.clone())
    } else {
        let report = check_pseudo_bop(&g);
        if report.is_pseudo_bop {
            let f = facing(&g)?;
            let longest = report.cycles.iter().map(|c| c.len()).max().unwrap_or(0);
            println!("facial circumference {longest}");
            println!("dual max degree {}", f.gwl.h.max_degree());
            f.gwl.h.is_tree().then_some(f.gwl.h)
        } else {
            None
        }
    };
    match tree {
        Some(t) => {
            let label = if g.is_tree() { "" } else { "dual " };
            let cap = cap.unwrap_or(t.order().max(1));
            println!("{label}fineness {}", fineness(&t, cap)?);
            println!("{label}{r}-yuppies {:?}", yuppie_set(&t, r)?);
        }
        None => println!("yuppies ({r}) {:?}", yuppie_set(&g, r)?),
    }
    Ok(())
}

fn enumerate(n: usize) -> Outcome {
    let all = enumerate_dissections(n)?;
    for d in &all {
        println!("{d}");
    }
    println!("# {} dissections", all.len());
    Ok(())
}

fn sample(n: usize, seed: u64, count: usize) -> Outcome {
    let sampler = Sampler::new(n)?;
    for i in 0..count {
        println!("{}", sampler.sample(&mut sample_rng(seed, n, i)));
    }
    Ok(())
}

fn experiment(config: &Path) -> Outcome {
    let cfg = ExperimentConfig::load(config)?;
    let out = run_experiment(&cfg)?;
    println!("{} samples written to {}", out.records.len(), cfg.output_path.display());
    Ok(())
}

fn run_verify(only: &[usize]) -> Outcome {
    let mut failed = Vec::new();
    for (i, criterion) in verify::all_criteria().into_iter().enumerate() {
        if !only.is_empty() && !only.contains(&(i + 1)) {
            continue;
        }
        let report = criterion();
        println!("{report}");
        if !report.passed() {
            failed.push(report.id);
        }
    }
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::Violation(format!("criteria {failed:?} failed")))
    }
}

fn play(left: &Path, right: &Path, rounds: Option<usize>) -> Outcome {
    let a = load_structure(left, false)?;
    let b = load_structure(right, false)?;
    let total = rounds.unwrap_or(a.size().min(b.size()) + 1);
    let mut solver = Solver::new(&a, &b);
    let mut config: Vec<(usize, usize)> = Vec::new();
    println!("left has {} vertices, right has {}; you play Duplicator for {total} rounds", a.size(), b.size());
    let stdin = io::stdin();
    let mut lines = stdin.lock().lines();
    for round in 1..=total {
        let left_rounds = total - round + 1;
        let mv = solver.best_move(left_rounds, &config)?.unwrap_or_else(|| {
            let vertex = (0..a.size()).find(|&x| config.iter().all(|p| p.0 != x)).unwrap_or(0);
            bopdepth::efgame::SpoilerMove { side: Side::Left, vertex }
        });
        let (here, there, other_size) = match mv.side {
            Side::Left => ("left", "right", b.size()),
            Side::Right => ("right", "left", a.size()),
        };
        print!("round {round}: Spoiler selects {} in {here}; your vertex in {there} (0..{}): ", mv.vertex, other_size - 1);
        io::stdout().flush().ok();
        let reply = loop {
            let Some(Ok(line)) = lines.next() else {
                println!();
                return Ok(());
            };
            match line.trim().parse::<usize>() {
                Ok(y) if y < other_size => break y,
                _ if line.trim() == "q" => return Ok(()),
                _ => {
                    print!("enter a vertex below {other_size} or q: ");
                    io::stdout().flush().ok();
                }
            }
        };
        config.push(match mv.side {
            Side::Left => (mv.vertex, reply),
            Side::Right => (reply, mv.vertex),
        });
        if !is_partial_iso(&a, &b, &config)? {
            println!("not a partial isomorphism: Spoiler wins in round {round}");
            return Ok(());
        }
    }
    println!("Duplicator survives {total} rounds");
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Check { file } => check(file),
        Command::Facing { file } => show_facing(file),
        Command::Game { left, right, max_k, facing, csv } => game(left, right, *max_k, *facing, *csv),
        Command::Bound { formula, params: p } => bound(formula, p),
        Command::Params { file, r, cap } => params(file, *r, *cap),
        Command::Enumerate { n } => enumerate(*n),
        Command::Sample { n, seed, count } => sample(*n, *seed, *count),
        Command::Experiment { config } => experiment(config),
        Command::Verify { only } => run_verify(only),
        Command::Play { left, right, rounds } => play(left, right, *rounds),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Violation(m)) => {
            eprintln!("violation: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}
