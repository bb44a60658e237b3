use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::Value;

use flowframe::io::{self, Instance};
use flowframe::layerings::Framing;
use flowframe::mutation::build_framing_poset;
use flowframe::oracle::{self, VerificationReport, VerifyOptions};
use flowframe::reduction::{decontract, Placement, ReductionMap};
use flowframe::routes::enumerate_routes;
use flowframe::triangulation::{build_triangulation, simplex_normalized_volume};
use flowframe::{check_nondegenerate, unit_netflow, validate_strong_planarity, EmbeddedDag, Error};

#[derive(Parser)]
#[command(name = "flowframe", version, about = "Framing triangulations of flow polytopes of strongly planar DAGs")]
struct Cli {
    /// Upper bound on enumerated routes, flows and cliques.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    limit: usize,
    /// Print JSON documents instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Suppress notes on the error stream.
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check strong planarity and nondegeneracy of an instance.
    Validate { file: PathBuf },
    /// Decontract to a balanced instance.
    Reduce {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = PlacementArg::Below)]
        placement: PlacementArg,
    },
    /// List all routes.
    Routes { file: PathBuf },
    /// List all layerings and their unit flows.
    Layerings { file: PathBuf },
    /// Decompose a flow into its layering-clique combination.
    Decompose {
        file: PathBuf,
        /// JSON flow: an object from edge id to value, or an array in edge
        /// order, given inline or as a file path.
        #[arg(long)]
        flow: String,
    },
    /// Maximal layering-cliques and their simplices.
    Triangulate { file: PathBuf },
    /// The framing poset.
    Poset {
        file: PathBuf,
        /// Print the Hasse diagram in DOT.
        #[arg(long)]
        dot: bool,
    },
    /// Check the triangulation against independent oracles.
    Verify {
        file: PathBuf,
        #[arg(long, default_value_t = 5)]
        face_cutoff: usize,
        #[arg(long, default_value_t = 50)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Certify that the K3,3 flow polytope has no lattice triangulation.
    K33Check,
    /// Print a random balanced instance.
    Generate {
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        max_edges: usize,
        #[arg(long, default_value_t = 3)]
        max_sources: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum PlacementArg {
    Below,
    Above,
}

/// A failure together with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Structural(_) | Error::InvalidInput(_) => 1,
            Error::LimitExceeded { .. } => 3,
            Error::InternalInvariantViolated(_) => 4,
        };
        Failure { code, message: e.to_string() }
    }
}

fn fail(code: u8, message: impl Into<String>) -> Failure {
    Failure { code, message: message.into() }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| fail(2, format!("cannot read {}: {e}", path.display())))
}

fn load(path: &Path) -> Result<Instance, Failure> {
    Ok(io::parse_instance(&read(path)?)?)
}

/// A validated balanced dag for the instance, decontracting when the file
/// carries a netflow other than the unit netflow.
struct Balanced {
    dag: EmbeddedDag,
    reduction: Option<ReductionMap>,
}

impl Cli {
    fn note(&self, msg: &str) {
        if !self.quiet {
            eprintln!("{msg}");
        }
    }

    fn emit(&self, doc: &Value, text: impl FnOnce() -> String) {
        if self.json {
            print!("{}", io::render(doc));
        } else {
            print!("{}", text());
        }
    }

    fn balanced(&self, path: &Path) -> Result<Balanced, Failure> {
        let Instance { dag, netflow } = load(path)?;
        let planarity = validate_strong_planarity(&dag);
        if !planarity.ok() {
            return Err(fail(1, format!("instance is not strongly planar: {}", planarity.summary())));
        }
        let unit = unit_netflow(&dag);
        let a = netflow.unwrap_or_else(|| unit.clone());
        let report = check_nondegenerate(&dag, &a);
        if !report.ok() {
            return Err(fail(1, format!("netflow is degenerate: {}", report.summary())));
        }
        if a == unit {
            return Ok(Balanced { dag, reduction: None });
        }
        let map = decontract(&dag, &a, Placement::Below)?;
        self.note(&format!(
            "note: decontracted to a balanced dag with {} vertices and {} edges",
            map.reduced.num_vertices(),
            map.reduced.num_edges()
        ));
        Ok(Balanced { dag: map.reduced.clone(), reduction: Some(map) })
    }
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Validate { file } => validate(cli, file),
        Command::Reduce { file, placement } => {
            let Instance { dag, netflow } = load(file)?;
            let a = netflow.unwrap_or_else(|| unit_netflow(&dag));
            let placement = match placement {
                PlacementArg::Below => Placement::Below,
                PlacementArg::Above => Placement::Above,
            };
            let map = decontract(&dag, &a, placement)?;
            print!("{}", io::instance_to_json(&map.reduced, None));
            Ok(())
        }
        Command::Routes { file } => {
            let b = cli.balanced(file)?;
            let routes = enumerate_routes(&b.dag, cli.limit)?;
            cli.emit(&io::routes_doc(&b.dag, &routes), || {
                let mut s = format!("{} routes\n", routes.len());
                for r in &routes {
                    s += &format!("  {}\n", r.names(&b.dag).join(" "));
                }
                s
            });
            Ok(())
        }
        Command::Layerings { file } => {
            let framing = Framing::new(&cli.balanced(file)?.dag, cli.limit)?;
            cli.emit(&io::layerings_doc(&framing), || {
                let mut s = format!("{} layerings, dimension {}\n", framing.num_layerings(), framing.dimension);
                for id in 0..framing.num_layerings() {
                    s += &format!("  {id}: {}\n", layering_text(&framing, id));
                }
                s
            });
            Ok(())
        }
        Command::Decompose { file, flow } => {
            let b = cli.balanced(file)?;
            let text = if flow.trim_start().starts_with(['{', '[']) { flow.clone() } else { read(Path::new(flow))? };
            let framing = Framing::new(&b.dag, cli.limit)?;
            let mut f = io::parse_flow(b.reduction.as_ref().map_or(&b.dag, |m| &m.original), &text)?;
            if let Some(map) = &b.reduction {
                f = map.lift_flow(&f)?;
            }
            let dec = framing.decompose_flow(&f)?;
            cli.emit(&io::decomposition_doc(&framing, &dec), || {
                let mut s = format!("{} terms\n", dec.terms.len());
                for (id, c) in &dec.terms {
                    s += &format!("  {} x [{}]\n", io::format_rational(c), layering_text(&framing, *id));
                }
                s
            });
            Ok(())
        }
        Command::Triangulate { file } => {
            let framing = Framing::new(&cli.balanced(file)?.dag, cli.limit)?;
            let tri = build_triangulation(&framing, cli.limit)?;
            let volumes = tri
                .cells
                .iter()
                .map(|c| simplex_normalized_volume(&c.vertices, &tri.basis))
                .collect::<Result<Vec<_>, _>>()?;
            cli.emit(&io::triangulation_doc(&framing, &tri, &volumes), || {
                let total: num_bigint::BigInt = volumes.iter().sum();
                let mut s = format!("{} cells, dimension {}, volume {total}\n", tri.cells.len(), tri.dimension);
                for (k, c) in tri.cells.iter().enumerate() {
                    s += &format!("  {k}: layerings {:?}\n", c.clique.layerings);
                }
                s
            });
            Ok(())
        }
        Command::Poset { file, dot } => {
            let framing = Framing::new(&cli.balanced(file)?.dag, cli.limit)?;
            let poset = build_framing_poset(&framing, cli.limit)?;
            if *dot {
                print!("{}", io::emit_dot(&poset));
                return Ok(());
            }
            cli.emit(&io::poset_doc(&poset), || {
                let mut s = format!(
                    "{} cliques, {} cover relations, maximal {:?}, minimal {:?}\n",
                    poset.nodes.len(),
                    poset.covers().count(),
                    poset.maximal_elements(),
                    poset.minimal_elements()
                );
                for e in poset.covers() {
                    s += &format!("  {} > {} ({})\n", e.from, e.to, e.kind.name());
                }
                s
            });
            Ok(())
        }
        Command::Verify { file, face_cutoff, samples, seed } => {
            let framing = Framing::new(&cli.balanced(file)?.dag, cli.limit)?;
            let tri = build_triangulation(&framing, cli.limit)?;
            let opts = VerifyOptions { face_cutoff: *face_cutoff, samples: *samples, seed: *seed, limit: cli.limit };
            report(cli, &oracle::verify_triangulation(&framing, &tri, &opts))
        }
        Command::K33Check => report(cli, &oracle::k33_obstruction_check()),
        Command::Generate { seed, max_edges, max_sources } => {
            let dag = oracle::random_instance(*seed, *max_edges, *max_sources)?;
            print!("{}", io::instance_to_json(&dag, None));
            Ok(())
        }
    }
}

fn layering_text(framing: &Framing, id: usize) -> String {
    framing.layerings[id].iter().map(|&r| framing.routes[r].names(&framing.dag).join(" ")).collect::<Vec<_>>().join(" | ")
}

fn validate(cli: &Cli, file: &Path) -> Outcome {
    let Instance { dag, netflow } = load(file)?;
    let planarity = validate_strong_planarity(&dag);
    let a = netflow.unwrap_or_else(|| unit_netflow(&dag));
    let nondegenerate = check_nondegenerate(&dag, &a);
    cli.emit(&io::validation_doc(&dag, &planarity, &nondegenerate), || {
        let mut s = String::new();
        for v in planarity.violations.iter().chain(&nondegenerate.violations) {
            s += &format!("violation [{}]: {}\n", v.rule, v.detail);
        }
        if s.is_empty() {
            s = format!("ok: {} vertices, {} edges\n", dag.num_vertices(), dag.num_edges());
        }
        s
    });
    if planarity.ok() && nondegenerate.ok() {
        Ok(())
    } else {
        Err(fail(1, "validation failed"))
    }
}

fn report(cli: &Cli, report: &VerificationReport) -> Outcome {
    cli.emit(&io::verification_doc(report), || {
        let mut s = String::new();
        for c in &report.checks {
            s += &format!("{} {}: {}\n", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
        }
        s
    });
    if report.overall() {
        Ok(())
    } else {
        Err(fail(1, "verification failed"))
    }
}
