use clap::{Args, Parser, Subcommand, ValueEnum};
use cosetforge::analysis::{
    analyze_graph, csv_header, edge_transitivity_flag, markdown_header, markdown_row, CsvRecord,
};
use cosetforge::geometry::{
    is_configuration, is_connected_geometry, is_core_free, is_stable, levi_graph, parse_geometry,
    CosetGeometry,
};
use cosetforge::graph::{
    builtin, certificate, parse_edge_list, parse_graph6_file, to_dot, write_graph6, BuiltinGraph,
    CertificateMode, ColoredBipartiteGraph, BUILTIN_NAMES,
};
use cosetforge::perm::{automorphism_group, transporter, AutMode, PermGroup, Permutation};
use cosetforge::{Error, RunConfig};
use rayon::prelude::*;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

/// Writes one line to stdout; a closed pipe (e.g. `| head`) ends the
/// program quietly instead of panicking.
fn emit(line: std::fmt::Arguments) -> Result<(), u8> {
    let mut out = std::io::stdout().lock();
    match out.write_fmt(line).and_then(|_| out.write_all(b"\n")) {
        Ok(()) => Ok(()),
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Err(0),
        Err(_) => Err(1),
    }
}

macro_rules! outln {
    ($($arg:tt)*) => {
        if let Err(code) = emit(format_args!($($arg)*)) {
            return Ok(code);
        }
    };
}

#[derive(Parser)]
#[command(
    name = "cosetforge",
    about = "Coset geometries from edge-transitive bipartite graphs, and back",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze every edge-transitive subgroup of each input graph
    Analyze(AnalyzeArgs),
    /// Build the Levi graph of a coset geometry file
    Levi(LeviArgs),
    /// Run the applicable invariants on a graph or geometry input
    Check(CheckArgs),
    /// List the builtin fixture graphs
    Builtins,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RowFormat {
    Csv,
    Json,
    Markdown,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GraphFormat {
    Graph6,
    Dot,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum InputFormat {
    Graph6,
    Edges,
}

#[derive(Args, Clone)]
struct CapArgs {
    /// Largest automorphism-group order for subgroup enumeration
    #[arg(long, default_value_t = 5_000)]
    subgroup_cap: u128,
    /// Largest group order for explicit element listing
    #[arg(long, default_value_t = 20_000)]
    element_cap: u128,
    /// Stop the k-arc transitivity search at this k
    #[arg(long, default_value_t = 8)]
    k_arc_cap: u32,
    /// Largest number of flags a Levi construction may walk
    #[arg(long, default_value_t = 200_000)]
    flag_cap: u128,
    /// Base edge override as "black,white" vertex ids
    #[arg(long)]
    seed_edge: Option<String>,
    /// Accept any duality instead of only those normalizing H
    #[arg(long)]
    any_duality: bool,
}

impl CapArgs {
    fn to_config(&self) -> Result<RunConfig, String> {
        let seed_edge_override = match &self.seed_edge {
            None => None,
            Some(s) => {
                let (b, w) = s
                    .split_once(',')
                    .ok_or_else(|| format!("--seed-edge wants `b,w`, got `{s}`"))?;
                let b = b.trim().parse().map_err(|_| format!("bad vertex `{b}`"))?;
                let w = w.trim().parse().map_err(|_| format!("bad vertex `{w}`"))?;
                Some((b, w))
            }
        };
        Ok(RunConfig {
            subgroup_order_cap: self.subgroup_cap,
            element_cap: self.element_cap,
            k_arc_cap: self.k_arc_cap,
            flag_cap: self.flag_cap,
            seed_edge_override,
            duality_normalizes: !self.any_duality,
            ..RunConfig::default()
        })
    }
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Graph file (graph6 records or edge-list text)
    input: Option<PathBuf>,
    /// Use a builtin fixture instead of a file
    #[arg(long, conflicts_with = "input")]
    builtin: Option<String>,
    /// Input file format; inferred from the extension when omitted
    #[arg(long, value_enum)]
    input_format: Option<InputFormat>,
    #[arg(long, value_enum, default_value_t = RowFormat::Csv)]
    format: RowFormat,
    #[command(flatten)]
    caps: CapArgs,
}

#[derive(Args)]
struct LeviArgs {
    /// Geometry file: degree plus generator lists for the group, sub0, sub1
    geometry_file: PathBuf,
    #[arg(long, value_enum, default_value_t = GraphFormat::Dot)]
    format: GraphFormat,
    #[command(flatten)]
    caps: CapArgs,
}

#[derive(Args)]
struct CheckArgs {
    /// Graph file (graph6 or edge list), unless --builtin or --geometry
    input: Option<PathBuf>,
    #[arg(long, conflicts_with_all = ["input", "geometry"])]
    builtin: Option<String>,
    /// Treat the input as a geometry file
    #[arg(long)]
    geometry: bool,
    #[arg(long, value_enum)]
    input_format: Option<InputFormat>,
    #[command(flatten)]
    caps: CapArgs,
}

fn main() -> ExitCode {
    if let Ok(threads) = std::env::var("COSETFORGE_THREADS") {
        if let Ok(n) = threads.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Analyze(args) => cmd_analyze(args),
        Command::Levi(args) => cmd_levi(args),
        Command::Check(args) => cmd_check(args),
        Command::Builtins => (|| {
            for (name, desc) in BUILTIN_NAMES {
                outln!("{name:24}{desc}");
            }
            Ok(0)
        })(),
    };
    match code {
        Ok(0) => ExitCode::SUCCESS,
        Ok(c) => ExitCode::from(c),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn load_builtin(name: &str) -> Result<ColoredBipartiteGraph, String> {
    match builtin(name).map_err(|e| e.to_string())? {
        BuiltinGraph::Colored(g) => Ok(g),
        BuiltinGraph::Uncolored(_) => Err(format!(
            "builtin `{name}` is not bipartite; only its subdivision can be analyzed"
        )),
    }
}

type LoadedGraphs = Vec<(String, Result<ColoredBipartiteGraph, Error>)>;

/// Loads the input graphs, tagging each with an id; parse failures stay in
/// the list so batch processing can report and continue.
fn load_graphs(input: &Path, format: Option<InputFormat>) -> Result<LoadedGraphs, String> {
    let contents = std::fs::read_to_string(input)
        .map_err(|e| format!("cannot read {}: {e}", input.display()))?;
    let stem = input
        .file_stem()
        .map(|s| s.to_string_lossy().to_string())
        .unwrap_or_else(|| "graph".into());
    let format = format.unwrap_or_else(|| {
        match input.extension().and_then(|e| e.to_str()) {
            Some("g6") | Some("graph6") => InputFormat::Graph6,
            _ => InputFormat::Edges,
        }
    });
    Ok(match format {
        InputFormat::Graph6 => parse_graph6_file(&contents)
            .into_iter()
            .enumerate()
            .map(|(i, r)| {
                let id = format!("{stem}#{i}");
                let r = r.map(|mut g| {
                    g.set_id(id.clone());
                    g
                });
                (id, r)
            })
            .collect(),
        InputFormat::Edges => {
            let r = parse_edge_list(&contents).map(|mut g| {
                g.set_id(stem.clone());
                g
            });
            vec![(stem, r)]
        }
    })
}

fn cmd_analyze(args: AnalyzeArgs) -> Result<u8, String> {
    let config = args.caps.to_config()?;
    let graphs: LoadedGraphs = if let Some(name) = &args.builtin {
        vec![(name.clone(), load_builtin(name).map_err(Error::Parse))]
    } else {
        let input = args.input.as_ref().ok_or("no input given")?;
        load_graphs(input, args.input_format)?
    };

    let results: Vec<(String, Result<Vec<cosetforge::analysis::AnalysisRow>, String>)> = graphs
        .into_par_iter()
        .map(|(id, g)| {
            let rows = match g {
                Err(e) => Err(e.to_string()),
                Ok(g) => analyze_graph(&g, &config).map_err(|e| match e {
                    // Distinguish graphs whose dualities carry all the
                    // edge-transitivity: flagged, not analyzed further.
                    Error::NotEdgeTransitive => match edge_transitivity_flag(&g) {
                        cosetforge::analysis::EdgeTransitivityFlag::WeaklyFlagTransitive => {
                            format!("{e} (weakly flag-transitive: only the full group moves every edge)")
                        }
                        _ => e.to_string(),
                    },
                    other => other.to_string(),
                }),
            };
            (id, rows)
        })
        .collect();

    let mut failures = 0usize;
    let mut header_done = false;
    for (id, result) in results {
        match result {
            Err(msg) => {
                eprintln!("{id}: {msg}");
                failures += 1;
            }
            Ok(rows) => match args.format {
                RowFormat::Csv => {
                    if !header_done {
                        outln!("{}", csv_header());
                        header_done = true;
                    }
                    for row in &rows {
                        outln!("{}", CsvRecord::from_row(row).to_line());
                    }
                }
                RowFormat::Json => {
                    for row in &rows {
                        outln!(
                            "{}",
                            serde_json::to_string(row).expect("rows serialize cleanly")
                        );
                    }
                }
                RowFormat::Markdown => {
                    if !header_done {
                        outln!("{}", markdown_header());
                        header_done = true;
                    }
                    for row in &rows {
                        outln!("{}", markdown_row(row));
                    }
                }
            },
        }
    }
    Ok(if failures > 0 { 2 } else { 0 })
}

fn cmd_levi(args: LeviArgs) -> Result<u8, String> {
    let config = args.caps.to_config()?;
    let contents = std::fs::read_to_string(&args.geometry_file)
        .map_err(|e| format!("cannot read {}: {e}", args.geometry_file.display()))?;
    let geom = parse_geometry(&contents, &config).map_err(|e| e.to_string())?;
    let levi = levi_graph(&geom, &config).map_err(|e| e.to_string())?;
    match args.format {
        GraphFormat::Graph6 => outln!("{}", write_graph6(levi.graph.graph())),
        GraphFormat::Dot => outln!("{}", to_dot(&levi.graph, Some(&levi.labels)).trim_end()),
    }
    let (connected, components) = is_connected_geometry(&geom).map_err(|e| e.to_string())?;
    let core_free = is_core_free(&geom, &config).map_err(|e| e.to_string())?;
    // Stability needs the automorphism group of the Levi graph, which is a
    // backtracking search; skip it past desk scale.
    const STABILITY_VERTEX_LIMIT: usize = 256;
    let stable = if connected && core_free && levi.graph.n() <= STABILITY_VERTEX_LIMIT {
        is_stable(&geom, &config)
            .map(|s| s.to_string())
            .map_err(|e| e.to_string())?
    } else {
        "n/a".to_string()
    };
    eprintln!(
        "group_order: {} sub0_order: {} sub1_order: {} borel_order: {} \
         vertices: {}+{} edges: {} connected: {} components: {} core_free: {} \
         stable: {} configuration: {}",
        geom.group().order(),
        geom.sub0().order(),
        geom.sub1().order(),
        geom.borel().order(),
        levi.graph.black_vertices().len(),
        levi.graph.white_vertices().len(),
        levi.graph.edges().len(),
        connected,
        components,
        core_free,
        stable,
        is_configuration(&levi.graph),
    );
    Ok(0)
}

struct Report {
    lines: Vec<String>,
    failures: usize,
}

impl Report {
    fn property(&mut self, name: &str, value: impl std::fmt::Display) {
        self.lines.push(format!("property {name}: {value}"));
    }

    fn invariant(&mut self, name: &str, ok: bool) {
        self.lines
            .push(format!("invariant {name}: {}", if ok { "pass" } else { "fail" }));
        if !ok {
            self.failures += 1;
        }
    }
}

fn cmd_check(args: CheckArgs) -> Result<u8, String> {
    let config = args.caps.to_config()?;
    let mut report = Report {
        lines: Vec::new(),
        failures: 0,
    };
    if args.geometry {
        let input = args.input.as_ref().ok_or("no input given")?;
        let contents = std::fs::read_to_string(input)
            .map_err(|e| format!("cannot read {}: {e}", input.display()))?;
        let geom = parse_geometry(&contents, &config).map_err(|e| e.to_string())?;
        check_geometry(&geom, &config, &mut report)?;
    } else {
        let graph = if let Some(name) = &args.builtin {
            load_builtin(name)?
        } else {
            let input = args.input.as_ref().ok_or("no input given")?;
            let mut graphs = load_graphs(input, args.input_format)?;
            if graphs.is_empty() {
                return Err(format!("{}: no graph records", input.display()));
            }
            let (_, first) = graphs.swap_remove(0);
            first.map_err(|e| e.to_string())?
        };
        check_graph(&graph, &config, &mut report)?;
    }
    for line in &report.lines {
        outln!("{line}");
    }
    Ok(if report.failures > 0 { 1 } else { 0 })
}

fn check_graph(
    g: &ColoredBipartiteGraph,
    config: &RunConfig,
    report: &mut Report,
) -> Result<(), String> {
    report.property("vertices", g.n());
    report.property("edges", g.edges().len());
    report.property("connected", g.is_connected());
    report.property(
        "girth",
        g.girth().map(|v| v.to_string()).unwrap_or_else(|| "inf".into()),
    );
    report.property("girth6_configuration", is_configuration(g));

    // Round-trip through the interchange format.
    let enc = write_graph6(g.graph());
    let back = cosetforge::graph::parse_graph6(&enc).map_err(|e| e.to_string())?;
    report.invariant("graph6_round_trip", back.edges() == g.edges());

    // Certificates must not depend on labeling; exercise a few rotations.
    let n = g.n();
    let mut invariant_ok = true;
    for shift in 1..=3usize.min(n.saturating_sub(1)) {
        let images: Vec<usize> = (0..n).map(|v| (v + shift) % n).collect();
        let perm = Permutation::from_images(images).expect("rotation is a bijection");
        let relabeled = g.graph().relabel(&perm);
        if let Ok(colored) = ColoredBipartiteGraph::with_computed_coloring(relabeled, None) {
            let same = certificate(&colored, CertificateMode::Ignore)
                == certificate(g, CertificateMode::Ignore);
            invariant_ok &= same;
        }
    }
    report.invariant("certificate_relabeling_invariance", invariant_ok);

    let aut_full = automorphism_group(g, AutMode::Full);
    let aut_o = automorphism_group(g, AutMode::ColorPreserving);
    report.property("aut_order", aut_full.order());
    report.property("aut_o_order", aut_o.order());
    if g.is_connected() {
        let index = aut_full.order() / aut_o.order();
        report.invariant("color_preserving_index_1_or_2", index == 1 || index == 2);
    }

    // Orbit-stabilizer products over the color-preserving group.
    let mut orbstab_ok = true;
    for v in 0..g.n() {
        let orbit = aut_o.orbit(v).len() as u128;
        let stab = aut_o.point_stabilizer(v).order();
        orbstab_ok &= orbit * stab == aut_o.order();
    }
    report.invariant("orbit_stabilizer_products", orbstab_ok);

    let flag = edge_transitivity_flag(g);
    report.property("edge_transitivity", format!("{flag:?}"));
    if g.is_connected() && flag == cosetforge::analysis::EdgeTransitivityFlag::FlagTransitive {
        let geom = cosetforge::geometry::gamma_psi(g, config).map_err(|e| e.to_string())?;
        let levi = levi_graph(&geom, config).map_err(|e| e.to_string())?;
        report.invariant(
            "levi_round_trip_certificate",
            certificate(&levi.graph, CertificateMode::PreserveClasses)
                == certificate(g, CertificateMode::PreserveClasses),
        );
        report.property("core_free", is_core_free(&geom, config).map_err(|e| e.to_string())?);
    }
    Ok(())
}

fn check_geometry(
    geom: &CosetGeometry,
    config: &RunConfig,
    report: &mut Report,
) -> Result<(), String> {
    report.property("group_order", geom.group().order());
    report.property("sub0_order", geom.sub0().order());
    report.property("sub1_order", geom.sub1().order());
    report.property("borel_order", geom.borel().order());
    report.invariant(
        "borel_divides_parabolics",
        geom.sub0().order().is_multiple_of(geom.borel().order())
            && geom.sub1().order().is_multiple_of(geom.borel().order()),
    );

    let (connected, components) = is_connected_geometry(geom).map_err(|e| e.to_string())?;
    report.property("connected", connected);
    report.property("components", components);

    let levi = levi_graph(geom, config).map_err(|e| e.to_string())?;
    report.invariant(
        "component_count_matches_levi",
        levi.graph.graph().connected_components().len() as u128 == components,
    );
    report.invariant(
        "edge_count_is_borel_index",
        levi.graph.edges().len() as u128 == geom.group().order() / geom.borel().order(),
    );
    report.invariant(
        "vertex_counts_are_parabolic_indices",
        levi.graph.black_vertices().len() as u128 == geom.group().order() / geom.sub0().order()
            && levi.graph.white_vertices().len() as u128
                == geom.group().order() / geom.sub1().order(),
    );

    // The core-free report is informational: a crafted geometry with a
    // non-trivial core is a valid input.
    let core_free = is_core_free(geom, config).map_err(|e| e.to_string())?;
    report.property("core_free", core_free);
    report.property("configuration", is_configuration(&levi.graph));
    if connected && core_free {
        report.property("stable", is_stable(geom, config).map_err(|e| e.to_string())?);
    }

    // Stabilizer orders in the vertex action match the parabolic orders.
    if connected {
        let image_gens: Vec<Permutation> = geom
            .group()
            .generators()
            .iter()
            .map(|p| levi.vertex_action(p))
            .collect();
        let image = PermGroup::from_generators(levi.graph.n(), &image_gens)
            .map_err(|e| e.to_string())?;
        let kernel_order = geom.group().order() / image.order();
        let b0 = levi.base_black_vertex();
        let w0 = levi.base_white_vertex();
        let stab_ok = image.point_stabilizer(b0).order() * kernel_order
            == geom.sub0().order()
            && image.point_stabilizer(w0).order() * kernel_order == geom.sub1().order();
        report.invariant("vertex_stabilizer_orders", stab_ok);
        if image.order() <= 2000 {
            let s_a = image.point_stabilizer(b0);
            let others = levi.graph.black_vertices();
            let mut conjugate_ok = true;
            for &v in others.iter().take(3) {
                let s_b = image.point_stabilizer(v);
                conjugate_ok &= transporter(&image, &s_a, &s_b, config.element_cap)
                    .map_err(|e| e.to_string())?
                    .is_some();
            }
            report.invariant("point_stabilizers_conjugate", conjugate_ok);
        }
    }
    Ok(())
}
