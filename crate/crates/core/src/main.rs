use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use reebdeco::compare::{distance_matrix, fgw, gw, mds_embed, FgwConfig};
use reebdeco::decorate::{
    decorate_all, farthest_point_sample, images_from_barcodes, DecorationConfig, ImageGrid,
};
use reebdeco::graph_build::{
    eccentricity_field, height_field, knn_graph, pagerank_field, radius_graph,
};
use reebdeco::io::{
    load_drg, load_function_graph, read_csv_rows, read_point_cloud_file, save_drg,
    save_function_graph, write_csv_rows,
};
use reebdeco::persistence::{bottleneck, reduce_and_extract, vr_filtration, SliceSchedule};
use reebdeco::pipeline::{run_pipeline, PipelineConfig};
use reebdeco::quotient::{smooth_quotient, QuotientSpec};
use reebdeco::reeb_radius::{reeb_radius_from, reeb_radius_matrix};
use reebdeco::render::{render_barcode, render_drg, render_graph, render_heatmap};
use reebdeco::synthetic::{generate_synthetic, Shape};
use reebdeco::{
    Barcode, DecoratedReebGraph, Decoration, DistanceMatrix, Error, PointCloud, Result,
};

const EXIT_CODES: &str = "Exit codes:\n  0  success\n  1  other error (invalid argument, i/o)\n  2  schema error or non-simple graph\n  3  disconnected graph\n  4  simplex capacity exceeded\n  5  no convergence\n\nREEBDECO_THREADS caps the number of worker threads.";

#[derive(Parser)]
#[command(name = "reebdeco", version, about = "Decorated Reeb graphs of point clouds", after_help = EXIT_CODES)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a neighbourhood graph from a point cloud
    #[command(subcommand)]
    Graph(GraphCommand),
    /// Put a scalar field on a graph
    #[command(subcommand)]
    Field(FieldCommand),
    /// Reeb radii from one node, or the full matrix
    Radius(RadiusArgs),
    /// Reeb quotient or its epsilon-smoothing
    Quotient(QuotientArgs),
    /// Vietoris-Rips barcode of a point cloud
    Persistence(PersistenceArgs),
    /// Decorate the classes of a quotient with barcodes or images
    Decorate(DecorateArgs),
    /// Distances between decorated graphs or barcodes
    #[command(subcommand)]
    Compare(CompareCommand),
    /// Classical MDS of a distance matrix
    Embed(EmbedArgs),
    /// Run every stage from a JSON config
    Pipeline(PipelineArgs),
    /// Write synthetic point clouds
    Generate(GenerateArgs),
    /// Draw a graph, quotient, barcode or distance matrix as SVG
    #[command(subcommand)]
    Render(RenderCommand),
    /// Print the exit code table as JSON
    ExitCodes,
}

#[derive(Subcommand)]
enum GraphCommand {
    /// kNN or radius graph; writes graph JSON with positions and Euclidean metric
    Build(GraphBuildArgs),
}

#[derive(Args)]
#[command(group = clap::ArgGroup::new("kind").required(true).args(["knn", "radius"]))]
struct GraphBuildArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    knn: Option<usize>,
    #[arg(long)]
    radius: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct GraphIo {
    /// Graph JSON to read
    #[arg(long)]
    graph: PathBuf,
    /// Where to write the graph with its new values (stdout if absent)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum FieldCommand {
    /// Coordinate `axis` of the node positions
    Height {
        #[arg(long)]
        axis: usize,
        #[command(flatten)]
        io: GraphIo,
    },
    /// p-eccentricity in the node metric
    Ecc {
        #[arg(long, default_value_t = 2.0)]
        p: f64,
        #[command(flatten)]
        io: GraphIo,
    },
    /// PageRank of the graph
    Pagerank {
        #[arg(long, default_value_t = 0.85)]
        damping: f64,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        #[command(flatten)]
        io: GraphIo,
    },
}

#[derive(Args)]
#[command(group = clap::ArgGroup::new("what").required(true).args(["source", "matrix"]))]
struct RadiusArgs {
    #[arg(long)]
    graph: PathBuf,
    /// Print the radius vector from this node
    #[arg(long)]
    source: Option<usize>,
    /// Write the full matrix to this CSV file
    #[arg(long)]
    matrix: Option<PathBuf>,
}

#[derive(Args)]
struct QuotientArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long, default_value_t = 0.0)]
    epsilon: f64,
    /// Round values to multiples of this step first
    #[arg(long)]
    round: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct PersistenceArgs {
    #[arg(long)]
    cloud: PathBuf,
    #[arg(long, default_value_t = 1)]
    dim: usize,
    #[arg(long)]
    rmax: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct DecorateArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    drg: PathBuf,
    #[arg(long, default_value_t = 1.0)]
    lambda: f64,
    #[arg(long, default_value_t = 0.0)]
    c: f64,
    #[arg(long, default_value_t = 1)]
    dim: usize,
    #[arg(long)]
    rmax: f64,
    /// Restrict the Rips complexes to this many farthest-point landmarks
    #[arg(long)]
    landmarks: Option<usize>,
    /// Persistence image resolution, ROWSxCOLS
    #[arg(long, value_parser = parse_resolution)]
    image: Option<(usize, usize)>,
    #[arg(long, requires = "image")]
    sigma: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum CompareCommand {
    /// Fused Gromov-Wasserstein matrix over every *.json DRG in a directory
    Fgw(FgwArgs),
    /// Bottleneck distance between two barcode JSON files
    Bottleneck { a: PathBuf, b: PathBuf },
}

#[derive(Args)]
struct FgwArgs {
    #[arg(long)]
    drgs: PathBuf,
    /// 1 gives plain Gromov-Wasserstein on the quotient metrics
    #[arg(long, default_value_t = 0.5)]
    alpha: f64,
    #[arg(long, default_value_t = 1e-2)]
    ot_eps: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct EmbedArgs {
    #[arg(long)]
    dist: PathBuf,
    #[arg(long, default_value_t = 2)]
    dims: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct PipelineArgs {
    /// Pipeline config JSON
    #[arg(long)]
    config: PathBuf,
    /// Overrides the output directory of the config
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args)]
struct GenerateArgs {
    /// torus_wedge_circle, sphere, torus, cycle or four_class_set
    #[arg(long)]
    shape: Shape,
    #[arg(long, default_value_t = 1000)]
    n: usize,
    #[arg(long, default_value_t = 0.0)]
    noise: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// CSV file, or a directory for four_class_set
    #[arg(long)]
    out: PathBuf,
}

#[derive(Subcommand)]
enum RenderCommand {
    /// Function graph JSON, laid out by positions or a seeded spring layout
    Graph {
        input: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Decorated Reeb graph JSON
    Drg {
        input: PathBuf,
        /// Graph the quotient came from, for positions and colours
        #[arg(long)]
        graph: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Barcode JSON as a persistence diagram
    Barcode {
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Distance matrix CSV
    Heatmap {
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

fn parse_resolution(s: &str) -> std::result::Result<(usize, usize), String> {
    let (a, b) = s.split_once(['x', 'X']).ok_or("expected ROWSxCOLS")?;
    let a: usize = a.trim().parse().map_err(|e| format!("{e}"))?;
    let b: usize = b.trim().parse().map_err(|e| format!("{e}"))?;
    if a == 0 || b == 0 {
        return Err("resolution must be positive".into());
    }
    Ok((a, b))
}

fn read(path: &Path) -> Result<Vec<u8>> {
    fs::read(path).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))
}

fn emit(out: Option<&Path>, bytes: &[u8]) -> Result<()> {
    match out {
        Some(p) => fs::write(p, bytes)?,
        None => std::io::stdout().write_all(bytes)?,
    }
    Ok(())
}

fn load_matrix(path: &Path) -> Result<DistanceMatrix> {
    DistanceMatrix::from_rows(&read_csv_rows(read(path)?.as_slice())?)
}

fn load_barcode(path: &Path) -> Result<Barcode> {
    Ok(serde_json::from_slice(&read(path)?)?)
}

fn set_field(
    io: &GraphIo,
    f: impl FnOnce(&reebdeco::FunctionGraph) -> Result<Vec<f64>>,
) -> Result<()> {
    let graph = load_function_graph(&read(&io.graph)?)?;
    let values = f(&graph)?;
    let graph = graph.with_scalar_values(&values)?;
    emit(io.out.as_deref(), &save_function_graph(&graph)?)
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Graph(GraphCommand::Build(a)) => {
            let cloud = read_point_cloud_file(&a.input)?;
            let graph = match (a.knn, a.radius) {
                (Some(k), _) => knn_graph(&cloud, k)?,
                (None, Some(r)) => radius_graph(&cloud, r)?,
                (None, None) => unreachable!("clap requires one of --knn, --radius"),
            };
            emit(a.out.as_deref(), &save_function_graph(&graph)?)
        }
        Command::Field(FieldCommand::Height { axis, io }) => set_field(&io, |g| {
            let pos = g
                .positions()
                .ok_or_else(|| Error::InvalidInput("height needs node positions".into()))?;
            height_field(&PointCloud::new(pos.to_vec())?, axis)
        }),
        Command::Field(FieldCommand::Ecc { p, io }) => {
            set_field(&io, |g| eccentricity_field(g.require_metric()?, p))
        }
        Command::Field(FieldCommand::Pagerank { damping, tol, io }) => {
            set_field(&io, |g| pagerank_field(g, damping, tol))
        }
        Command::Radius(a) => {
            let graph = load_function_graph(&read(&a.graph)?)?;
            if let Some(x) = a.source {
                if x >= graph.node_count() {
                    return Err(Error::InvalidInput(format!("source {x} out of range")));
                }
                let rho = reeb_radius_from(&graph, x).rho;
                println!("{}", serde_json::to_string(&rho)?);
            }
            if let Some(path) = a.matrix {
                fs::write(path, write_csv_rows(&reeb_radius_matrix(&graph).rows()))?;
            }
            Ok(())
        }
        Command::Quotient(a) => {
            let graph = load_function_graph(&read(&a.graph)?)?;
            let drg = smooth_quotient(
                &graph,
                &QuotientSpec {
                    epsilon: a.epsilon,
                    round_step: a.round,
                },
            )?;
            emit(a.out.as_deref(), &save_drg(&drg)?)
        }
        Command::Persistence(a) => {
            let cloud = read_point_cloud_file(&a.cloud)?;
            let complex = vr_filtration(&cloud, a.rmax, a.dim + 1)?;
            let barcode = reduce_and_extract(&complex, a.dim);
            emit(a.out.as_deref(), &serde_json::to_vec_pretty(&barcode)?)
        }
        Command::Decorate(a) => {
            let graph = load_function_graph(&read(&a.graph)?)?;
            let drg = load_drg(&read(&a.drg)?)?;
            let mut cfg = DecorationConfig::new(SliceSchedule::new(a.lambda, a.c)?, a.dim, a.rmax);
            if let Some(m) = a.landmarks {
                cfg = cfg.with_support(farthest_point_sample(&graph, m)?);
            }
            let (mut drg, failures) = decorate_all(&graph, &drg, &cfg)?;
            for f in &failures {
                eprintln!("class {} left undecorated: {}", f.class, f.reason);
            }
            if let Some(resolution) = a.image {
                let mut grid = ImageGrid::fit(
                    drg.decorations
                        .iter()
                        .flatten()
                        .filter_map(Decoration::as_barcode),
                    resolution,
                );
                if let Some(s) = a.sigma {
                    grid.sigma = s;
                }
                drg = images_from_barcodes(&drg, &grid)?;
            }
            emit(a.out.as_deref(), &save_drg(&drg)?)
        }
        Command::Compare(CompareCommand::Fgw(a)) => {
            let mut paths: Vec<PathBuf> = fs::read_dir(&a.drgs)?
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|p| p.extension().is_some_and(|x| x == "json"))
                .collect();
            paths.sort();
            let drgs: Vec<DecoratedReebGraph> = paths
                .iter()
                .map(|p| load_drg(&read(p)?))
                .collect::<Result<_>>()?;
            let cfg = FgwConfig {
                alpha: a.alpha,
                ot_eps: a.ot_eps,
                ..FgwConfig::default()
            };
            let (dist, unconverged) = if a.alpha >= 1.0 {
                distance_matrix(drgs.len(), |i, j| gw(&drgs[i], &drgs[j], &cfg))?
            } else {
                distance_matrix(drgs.len(), |i, j| fgw(&drgs[i], &drgs[j], &cfg))?
            };
            if unconverged > 0 {
                eprintln!("{unconverged} pairs reached the iteration cap");
            }
            for (i, p) in paths.iter().enumerate() {
                eprintln!("{i}\t{}", p.display());
            }
            emit(a.out.as_deref(), &write_csv_rows(&dist.rows()))
        }
        Command::Compare(CompareCommand::Bottleneck { a, b }) => {
            println!("{}", bottleneck(&load_barcode(&a)?, &load_barcode(&b)?)?);
            Ok(())
        }
        Command::Embed(a) => {
            let coords = mds_embed(&load_matrix(&a.dist)?, a.dims)?;
            emit(a.out.as_deref(), &write_csv_rows(&coords))
        }
        Command::Pipeline(a) => {
            let mut cfg: PipelineConfig = serde_json::from_slice(&read(&a.config)?)?;
            if let Some(out) = a.out {
                cfg.output_dir = Some(out);
            }
            if let Some(seed) = a.seed {
                cfg.seed = seed;
            }
            let out = run_pipeline(&cfg)?;
            for (stage, secs) in &out.report.timings {
                eprintln!("{stage:>9} {secs:.3} s");
            }
            if cfg.output_dir.is_none() {
                println!("{}", serde_json::to_string_pretty(&out.report)?);
            }
            Ok(())
        }
        Command::Generate(a) => {
            let clouds = generate_synthetic(a.shape, a.n, a.noise, a.seed)?;
            if let [cloud] = clouds.as_slice() {
                fs::write(&a.out, write_csv_rows(&cloud.to_rows()))?;
            } else {
                fs::create_dir_all(&a.out)?;
                for (i, cloud) in clouds.iter().enumerate() {
                    fs::write(
                        a.out.join(format!("sample_{i:03}.csv")),
                        write_csv_rows(&cloud.to_rows()),
                    )?;
                }
            }
            Ok(())
        }
        Command::Render(r) => {
            let (svg, out) = match r {
                RenderCommand::Graph { input, seed, out } => (
                    render_graph(&load_function_graph(&read(&input)?)?, seed),
                    out,
                ),
                RenderCommand::Drg { input, graph, out } => {
                    let drg = load_drg(&read(&input)?)?;
                    let graph = graph.map(|g| load_function_graph(&read(&g)?)).transpose()?;
                    (render_drg(&drg, graph.as_ref()), out)
                }
                RenderCommand::Barcode { input, out } => {
                    (render_barcode(&load_barcode(&input)?), out)
                }
                RenderCommand::Heatmap { input, out } => {
                    (render_heatmap(&load_matrix(&input)?), out)
                }
            };
            fs::write(out, svg)?;
            Ok(())
        }
        Command::ExitCodes => {
            let table = serde_json::json!({
                "ok": 0, "other": 1, "schema": 2, "non_simple": 2,
                "disconnected": 3, "capacity": 4, "nonconvergence": 5
            });
            println!("{table}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = std::env::var("REEBDECO_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
    {
        if n > 0 {
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build_global();
        }
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
