//! `kgeom`: build, export and verify the Kneser incidence geometries.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or parameter
//! error, 3 I/O error.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use kneser_geom::gamma::{build_gamma, predicted_diagram, GammaGeometry};
use kneser_geom::group::{
    automorphism_witness, chamber_orbit_certificate, flag_orbit_count, GeneratorSet,
};
use kneser_geom::incidence::type_subsets;
use kneser_geom::kneser::{self, kneser_graph, neighborhood_geometry};
use kneser_geom::locally_x::{is_locally_x_with, residue_reference_graph, LocallyXOptions};
use kneser_geom::{GammaParams, Graph, KneserParams, Length};

#[derive(Parser)]
#[command(name = "kgeom", version, about = "Kneser graph incidence geometries")]
struct Cli {
    /// Worker threads for parallel checks (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Args)]
struct Params {
    #[arg(long)]
    n: u32,
    #[arg(long)]
    k: u32,
    #[arg(long, default_value_t = 3)]
    r: u32,
}

impl Params {
    fn gamma(&self) -> Result<GammaParams, Failure> {
        GammaParams::new(self.n, self.k, self.r).map_err(|e| Failure::Usage(e.to_string()))
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Dot,
    Graph6,
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
enum Check {
    Geometry,
    ResidualConnectivity,
    Thickness,
    Diagram,
    Ip2,
    FlagTransitivity,
    LocallyX,
    OddGirth,
    Gonality,
    Diameter,
}

impl Check {
    fn name(self) -> &'static str {
        match self {
            Check::Geometry => "geometry",
            Check::ResidualConnectivity => "residual-connectivity",
            Check::Thickness => "thickness",
            Check::Diagram => "diagram",
            Check::Ip2 => "ip2",
            Check::FlagTransitivity => "flag-transitivity",
            Check::LocallyX => "locally-x",
            Check::OddGirth => "odd-girth",
            Check::Gonality => "gonality",
            Check::Diameter => "diameter",
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Build Γ(KG(n,k), r) and export it.
    Build {
        #[command(flatten)]
        params: Params,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Write here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run checks and print a certificate.
    Verify {
        #[command(flatten)]
        params: Params,
        /// Run every check.
        #[arg(long, conflicts_with = "check")]
        all: bool,
        #[arg(long, value_enum, num_args = 1.., required_unless_present = "all")]
        check: Vec<Check>,
        /// Check one vertex per type in the locally-x check.
        #[arg(long)]
        assume_transitive: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check that every neighborhood of GRAPH is isomorphic to REFERENCE (graph6 files).
    LocallyX {
        graph: PathBuf,
        reference: PathBuf,
        /// Check only these vertices.
        #[arg(long, value_delimiter = ',')]
        representatives: Option<Vec<usize>>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print KG(n,k) (or its bipartite double cover) as graph6.
    Graph {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        double_cover: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum Failure {
    Usage(String),
    Io(String),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if t == 0 {
            eprintln!("error: --threads must be positive");
            return ExitCode::from(2);
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .expect("thread pool is configured once");
    }
    match run(cli.cmd) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Io(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Io(format!("{}: {e}", p.display()))),
        None => io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Io(e.to_string())),
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json serializes");
    s.push('\n');
    s
}

fn run(cmd: Command) -> Result<bool, Failure> {
    match cmd {
        Command::Build {
            params,
            format,
            out,
        } => {
            let gamma = build_gamma(params.gamma()?).map_err(|e| Failure::Usage(e.to_string()))?;
            let sys = gamma.system();
            let text = match format {
                Format::Json => pretty(&sys.to_json()),
                Format::Graph6 => format!("{}\n", sys.graph().to_graph6()),
                Format::Dot => match sys.buekenhout_diagram(true) {
                    Ok(d) => d.to_dot(),
                    Err(e) => {
                        eprintln!("error: {e}");
                        return Ok(false);
                    }
                },
            };
            emit(out.as_deref(), &text)?;
            Ok(true)
        }
        Command::Verify {
            params,
            all,
            mut check,
            assume_transitive,
            out,
        } => {
            let p = params.gamma()?;
            if all {
                check = Check::value_variants().to_vec();
            }
            check.sort();
            check.dedup();
            let gamma = build_gamma(p).map_err(|e| Failure::Usage(e.to_string()))?;
            let mut checks = serde_json::Map::new();
            let mut ok = true;
            for c in check {
                let (pass, detail) = run_check(c, &gamma, assume_transitive);
                ok &= pass;
                let mut entry = json!({ "pass": pass });
                if let (Value::Object(e), Value::Object(d)) = (&mut entry, detail) {
                    e.extend(d);
                }
                checks.insert(c.name().to_string(), entry);
            }
            let cert = json!({
                "schema": "cert/1",
                "params": { "n": p.n(), "k": p.k(), "r": p.r() },
                "checks": checks,
                "pass": ok,
            });
            emit(out.as_deref(), &pretty(&cert))?;
            Ok(ok)
        }
        Command::LocallyX {
            graph,
            reference,
            representatives,
            out,
        } => {
            let g = read_graph6(&graph)?;
            let x = read_graph6(&reference)?;
            if let Some(bad) = representatives.iter().flatten().find(|&&v| v >= g.order()) {
                return Err(Failure::Usage(format!("vertex {bad} out of range")));
            }
            let opts = LocallyXOptions {
                orbit_representatives: representatives,
            };
            let report = is_locally_x_with(&g, &x, &opts);
            emit(out.as_deref(), &pretty(&report.to_json()))?;
            Ok(report.passed())
        }
        Command::Graph {
            n,
            k,
            double_cover,
            out,
        } => {
            let p = KneserParams::new(n, k).map_err(|e| Failure::Usage(e.to_string()))?;
            let mut g = kneser_graph(p);
            if double_cover {
                g = g.bipartite_double_cover();
            }
            emit(out.as_deref(), &format!("{}\n", g.to_graph6()))?;
            Ok(true)
        }
    }
}

fn read_graph6(path: &Path) -> Result<Graph, Failure> {
    let bytes = fs::read(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    let line = bytes.split(|&b| b == b'\n').next().unwrap_or_default();
    let line = line.strip_suffix(b"\r").unwrap_or(line);
    Graph::from_graph6(line).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn length(l: Length) -> Value {
    serde_json::to_value(l).expect("length serializes")
}

fn run_check(c: Check, gamma: &GammaGeometry, assume_transitive: bool) -> (bool, Value) {
    let p = gamma.params();
    let kp = p.kneser();
    let sys = gamma.system();
    match c {
        Check::Geometry => {
            let g = sys.is_geometry();
            (g.is_geometry, json!({ "witness": g.witness }))
        }
        Check::ResidualConnectivity => {
            let r = sys.is_residually_connected();
            (
                r.connected,
                json!({ "failing_flag": r.failing, "flags_checked": r.flags_checked }),
            )
        }
        Check::Thickness => {
            let min = sys.min_rank_one_residue();
            (
                sys.is_thick(),
                json!({ "firm": sys.is_firm(), "min_rank_one_residue": min }),
            )
        }
        Check::Diagram => {
            let predicted = predicted_diagram(p);
            match sys.buekenhout_diagram(true) {
                Ok(d) => {
                    let labels: Vec<String> = d.edges.iter().map(|e| e.summary.label()).collect();
                    (
                        d == predicted,
                        json!({
                            "computed": d,
                            "predicted": predicted,
                            "labels": labels,
                            "dot": d.to_dot(),
                        }),
                    )
                }
                Err(e) => (
                    false,
                    json!({ "error": e.to_string(), "predicted": predicted }),
                ),
            }
        }
        Check::Ip2 => {
            let r = sys.satisfies_ip2();
            let failing = r
                .failing
                .map(|((i, j), f)| json!({ "types": [i, j], "flag": f }));
            (
                r.satisfied,
                json!({
                    "satisfied": r.satisfied,
                    "failing": failing,
                    "residues_checked": r.residues_checked,
                    "predicted": p.n() == 2 * p.k() + 1,
                }),
            )
        }
        Check::FlagTransitivity => {
            let maps = match GeneratorSet::symmetric(p.ground_size()).element_maps(gamma) {
                Ok(m) => m,
                Err(e) => return (false, json!({ "error": e.to_string() })),
            };
            let mut orbit_counts = serde_json::Map::new();
            let mut transitive = true;
            for size in 1..=sys.rank() {
                for types in type_subsets(sys.rank(), size) {
                    let count = flag_orbit_count(&sys, &maps, &types);
                    transitive &= count == 1;
                    let key = types
                        .iter()
                        .map(|t| t.to_string())
                        .collect::<Vec<_>>()
                        .join(",");
                    orbit_counts.insert(key, json!(count));
                }
            }
            let chambers = chamber_orbit_certificate(gamma);
            let auts = automorphism_witness(gamma, 200_000);
            match (chambers, auts) {
                (Ok(c), Ok(a)) => (
                    transitive && c.transitive && a.all_verified(),
                    json!({
                        "chambers": c,
                        "flag_orbit_counts": orbit_counts,
                        "automorphism_lower_bound": a,
                    }),
                ),
                (Err(e), _) | (_, Err(e)) => (false, json!({ "error": e.to_string() })),
            }
        }
        Check::LocallyX => {
            let x = match residue_reference_graph(p) {
                Ok(x) => x,
                Err(e) => return (true, json!({ "skipped": true, "reason": e.to_string() })),
            };
            let reps = assume_transitive.then(|| {
                (0..sys.rank())
                    .map(|t| t * gamma.per_type())
                    .collect::<Vec<_>>()
            });
            let report = is_locally_x_with(
                sys.graph(),
                &x,
                &LocallyXOptions {
                    orbit_representatives: reps,
                },
            );
            (report.passed(), report.to_json())
        }
        Check::OddGirth => {
            let g = kneser_graph(kp);
            let computed = g.odd_girth();
            let predicted = kneser::predicted_odd_girth(kp);
            (
                computed == Length::Finite(predicted),
                json!({
                    "computed": length(computed),
                    "predicted": predicted,
                    "witness_cycle": g.shortest_odd_cycle(),
                }),
            )
        }
        Check::Gonality | Check::Diameter => {
            let nbhd = neighborhood_geometry(&kneser_graph(kp));
            let s = match nbhd.rank2_summary() {
                Ok(s) => s,
                Err(e) => return (false, json!({ "error": e.to_string() })),
            };
            if c == Check::Gonality {
                let predicted = kneser::predicted_gonality(kp);
                (
                    s.gonality == Length::Finite(predicted),
                    json!({ "computed": length(s.gonality), "predicted": predicted }),
                )
            } else {
                let predicted = Length::Finite(kneser::predicted_diameter(kp));
                (
                    s.d_ij == predicted && s.d_ji == predicted,
                    json!({
                        "d_ij": length(s.d_ij),
                        "d_ji": length(s.d_ji),
                        "predicted": length(predicted),
                    }),
                )
            }
        }
    }
}
