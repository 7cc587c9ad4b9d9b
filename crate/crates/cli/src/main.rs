use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use relmod::action::{act, verify_axioms, Generator, ModuleVector};
use relmod::classify::classify_window;
use relmod::derived::{build_g_of_l, build_gbar, down_edges, is_realization, maximal_chains, satisfies};
use relmod::findim::{build_finite_dimensional, finite_dimensional_module};
use relmod::io::{graph_from_json, graph_to_json, shift_from_text, tableau_from_json};
use relmod::sample::random_realization;
use relmod::{Error, RelationModule, ShiftVector, Tableau, TriGraph};

#[derive(Parser)]
#[command(name = "relmod", version, about = "Relation Gelfand-Tsetlin modules over gl(n)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Emit {
    Text,
    Dot,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Check conditions (I)-(VI) of a relation graph.
    ValidateGraph { graph: PathBuf },
    /// Whether a tableau satisfies and realizes a graph.
    Realize {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        tableau: PathBuf,
    },
    /// G(L) of a tableau; with a graph also Gbar, G(L) \ Gbar and its down edges.
    Derived {
        #[arg(long)]
        tableau: PathBuf,
        #[arg(long)]
        graph: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "text")]
        emit: Emit,
    },
    /// Apply a generator E_ij to the basis tableau T(L + z) of the module
    /// with seed L.
    Act {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        tableau: PathBuf,
        #[arg(long)]
        gen: String,
        /// Shift from the seed, top row first: "0,0,0|1,0|0".
        #[arg(long)]
        z: Option<String>,
    },
    /// Maximal chains of a graph and/or of G(T) for a shift z.
    Chains {
        #[arg(long)]
        graph: Option<PathBuf>,
        #[arg(long)]
        tableau: Option<PathBuf>,
        #[arg(long, allow_hyphen_values = true)]
        z: String,
    },
    /// Classify a window of the module by reduced signature.
    Classify {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        tableau: PathBuf,
        #[arg(long, default_value_t = 4)]
        radius: i64,
        #[arg(long, value_enum, default_value = "text")]
        emit: Emit,
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Check the gl(n) relations exactly on a window, or on L(lambda).
    Verify {
        #[arg(long, conflicts_with = "lambda")]
        graph: Option<PathBuf>,
        /// Seed tableau; a random realization is drawn when omitted.
        #[arg(long, requires = "graph")]
        tableau: Option<PathBuf>,
        #[arg(long, default_value_t = 2)]
        radius: i64,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        lambda: Option<Vec<i64>>,
        /// PRNG seed for the random realization.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Dimension and standard basis of the simple module L(lambda).
    Findim {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        lambda: Vec<i64>,
        #[arg(long)]
        basis: bool,
    },
}

/// Outcome of a failed command: exit 1 for a rejected input, 2 for a
/// malformed one.
enum Failure {
    Rejected(String),
    Malformed(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_)
            | Error::InvalidVertex(..)
            | Error::InvalidRank(_)
            | Error::SelfLoop(_)
            | Error::DuplicateArrow(..)
            | Error::TopRowImmutable(_)
            | Error::RankMismatch { .. } => Failure::Malformed(e.to_string()),
            other => Failure::Rejected(other.to_string()),
        }
    }
}

type Outcome = Result<(), Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Malformed(format!("{}: {e}", path.display())))
}

fn load_graph(path: &Path) -> Result<TriGraph, Failure> {
    graph_from_json(&read(path)?).map_err(|e| Failure::Malformed(format!("{}: {e}", path.display())))
}

fn load_tableau(path: &Path) -> Result<Tableau, Failure> {
    tableau_from_json(&read(path)?).map_err(|e| Failure::Malformed(format!("{}: {e}", path.display())))
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn load_module(graph: &Path, tableau: &Path) -> Result<RelationModule, Failure> {
    let g = load_graph(graph)?;
    let t = load_tableau(tableau)?;
    if g.n() != t.n() {
        return Err(Failure::Malformed(format!(
            "graph has n = {} but tableau has n = {}",
            g.n(),
            t.n()
        )));
    }
    Ok(RelationModule::new(g, t)?)
}

fn validate_graph(path: &Path) -> Outcome {
    let report = load_graph(path)?.validate();
    print!("{report}");
    if report.is_valid() {
        Ok(())
    } else {
        Err(Failure::Rejected(String::new()))
    }
}

fn realize(graph: &Path, tableau: &Path) -> Outcome {
    let g = load_graph(graph)?;
    let t = load_tableau(tableau)?;
    let (sat, real) = (satisfies(&t, &g), is_realization(&t, &g));
    println!("satisfies: {}; realization: {}", yes(sat), yes(real));
    if real {
        Ok(())
    } else {
        Err(Failure::Rejected(String::new()))
    }
}

fn derived(tableau: &Path, graph: Option<&Path>, emit: Emit) -> Outcome {
    let t = load_tableau(tableau)?;
    let gl = build_g_of_l(&t);
    match emit {
        Emit::Dot => {
            print!("{}", gl.to_dot("G_of_L"));
            return Ok(());
        }
        Emit::Json => {
            println!("{}", serde_json::to_string_pretty(&graph_to_json(&gl)).expect("json renders"));
            return Ok(());
        }
        Emit::Text => {}
    }
    println!("G(L): {gl}");
    if let Some(path) = graph {
        let g = load_graph(path)?;
        let gbar = build_gbar(&g);
        let reduced = gl.difference(&gbar);
        println!("Gbar: {gbar}");
        println!("G(L) \\ Gbar: {reduced}");
        println!("down edges of G(L) \\ Gbar: {}", down_edges(&reduced));
        println!("generic: {}", yes(reduced.is_generic()));
    }
    Ok(())
}

fn act_command(graph: &Path, tableau: &Path, gen: &str, z: Option<&str>) -> Outcome {
    let m = load_module(graph, tableau)?;
    let g = Generator::parse(m.n(), gen)?;
    let z = match z {
        Some(text) => shift_from_text(m.n(), text)?,
        None => ShiftVector::zero(m.n()),
    };
    if !m.contains(&z) {
        return Err(Failure::Rejected(format!("NotRealization: T(L + [{z}]) is not in the module")));
    }
    let out = act(&m, g, &ModuleVector::basis(z.clone()))?;
    println!("{g} . {}", m.tableau(&z));
    if out.is_zero() {
        println!("  = 0");
    }
    for (t, c) in out.terms() {
        println!("  + ({c}) {}", m.tableau(t));
    }
    Ok(())
}

fn chains(graph: Option<&Path>, tableau: Option<&Path>, z: &str) -> Outcome {
    if graph.is_none() && tableau.is_none() {
        return Err(Failure::Malformed("chains needs --graph or --tableau".into()));
    }
    let mut sources = Vec::new();
    if let Some(p) = graph {
        sources.push(("graph chains", load_graph(p)?));
    }
    if let Some(p) = tableau {
        sources.push(("G(T) chains", build_g_of_l(&load_tableau(p)?)));
    }
    for (label, g) in sources {
        let z = shift_from_text(g.n(), z)?;
        println!("{label}:");
        for c in maximal_chains(&g, &z)? {
            println!("  {c}");
        }
    }
    Ok(())
}

fn classify(graph: &Path, tableau: &Path, radius: i64, emit: Emit, jobs: Option<usize>) -> Outcome {
    if radius < 1 {
        return Err(Failure::Malformed("--radius must be positive".into()));
    }
    let m = load_module(graph, tableau)?;
    let run = || classify_window(&m, radius);
    let report = match jobs {
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build()
            .map_err(|e| Failure::Malformed(e.to_string()))?
            .install(run),
        None => run(),
    };
    match emit {
        Emit::Text => print!("{report}"),
        Emit::Dot => print!("{}", report.to_dot()),
        Emit::Json => println!("{}", serde_json::to_string_pretty(&report.to_json()).expect("json renders")),
    }
    Ok(())
}

fn verify(graph: Option<&Path>, tableau: Option<&Path>, radius: i64, lambda: Option<&[i64]>, seed: u64) -> Outcome {
    let (m, window) = match (graph, lambda) {
        (_, Some(lambda)) => {
            let m = finite_dimensional_module(lambda)?;
            let basis = build_finite_dimensional(lambda)?.basis;
            let window = basis.iter().map(|t| m.locate(t)).collect::<relmod::Result<Vec<_>>>()?;
            (m, window)
        }
        (Some(g), None) => {
            let m = match tableau {
                Some(t) => load_module(g, t)?,
                None => {
                    let g = load_graph(g)?;
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    let t = random_realization(&g, &mut rng, 3)?;
                    println!("seed tableau: {t}");
                    RelationModule::new(g, t)?
                }
            };
            let window = m.window(radius);
            (m, window)
        }
        (None, None) => return Err(Failure::Malformed("verify needs --graph or --lambda".into())),
    };
    let report = verify_axioms(&m, &window)?;
    println!("{report}");
    if report.is_clean() {
        Ok(())
    } else {
        Err(Failure::Rejected(String::new()))
    }
}

fn findim(lambda: &[i64], basis: bool) -> Outcome {
    let fd = build_finite_dimensional(lambda)?;
    println!("dimension {}", fd.dimension());
    if basis {
        for t in &fd.basis {
            println!("  {t}");
        }
    }
    Ok(())
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::ValidateGraph { graph } => validate_graph(&graph),
        Command::Realize { graph, tableau } => realize(&graph, &tableau),
        Command::Derived { tableau, graph, emit } => derived(&tableau, graph.as_deref(), emit),
        Command::Act { graph, tableau, gen, z } => act_command(&graph, &tableau, &gen, z.as_deref()),
        Command::Chains { graph, tableau, z } => chains(graph.as_deref(), tableau.as_deref(), &z),
        Command::Classify {
            graph,
            tableau,
            radius,
            emit,
            jobs,
        } => classify(&graph, &tableau, radius, emit, jobs),
        Command::Verify {
            graph,
            tableau,
            radius,
            lambda,
            seed,
        } => verify(graph.as_deref(), tableau.as_deref(), radius, lambda.as_deref(), seed),
        Command::Findim { lambda, basis } => findim(&lambda, basis),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Rejected(msg)) => {
            if !msg.is_empty() {
                eprintln!("error: {msg}");
            }
            ExitCode::from(1)
        }
        Err(Failure::Malformed(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
