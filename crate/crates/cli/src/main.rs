use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use activegraph::experiment::write_rows;
use activegraph::io::{
    knn_graph, knn_unweighted, parse_ratio, ratings_to_hypergraph, read_edge_list, read_edge_list_real,
    read_hyperedge_list, read_labels, read_points, read_ratings, write_edge_list, write_edge_list_real,
    write_hyperedge_list, write_labels, ScaledGraph, ScaledHypergraph, SelectionDoc,
};
use activegraph::ratio::RatioRepr;
use activegraph::select::select_target;
use activegraph::{
    compute_psi, error_certificate, label_prop_predict, mincut_predict, run_experiment, select_budget, Error,
    ExperimentData, ExperimentSpec, LabelPropParams, Labeling, Method, NodeSet, Oracle, Predictor, Rational, RealGraph,
    Strength, Weight,
};

#[derive(Parser)]
#[command(
    name = "activegraph",
    version,
    about = "Label selection and prediction on graphs and hypergraphs"
)]
struct Cli {
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// How `--input` files are read.
    #[arg(long, global = true, value_enum, default_value_t = OracleArg::Graph)]
    oracle: OracleArg,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OracleArg {
    Graph,
    Hypergraph,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PredictorArg {
    Mincut,
    Labelprop,
}

impl From<PredictorArg> for Predictor {
    fn from(p: PredictorArg) -> Self {
        match p {
            PredictorArg::Mincut => Predictor::Mincut,
            PredictorArg::Labelprop => Predictor::LabelProp,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Build a symmetrized k-nearest-neighbor graph from points.
    BuildKnn {
        #[arg(long)]
        points: PathBuf,
        #[arg(long, default_value_t = 10)]
        k: usize,
        /// Gaussian weights instead of unit weights.
        #[arg(long)]
        weighted: bool,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Build an item hypergraph from user ratings.
    BuildRatings {
        #[arg(long)]
        ratings: PathBuf,
        /// Items need strictly more ratings than this to be kept.
        #[arg(long, default_value_t = 10)]
        min_ratings: usize,
        #[arg(long, short)]
        output: Option<PathBuf>,
        /// Where to write the item id of each node, one per line.
        #[arg(long)]
        items: Option<PathBuf>,
    },
    /// Strength of a node set.
    Psi {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        set: SetArg,
    },
    /// Choose nodes to label.
    Select {
        #[command(flatten)]
        input: Input,
        /// Smallest set reaching this strength, e.g. `5/2`.
        #[arg(
            long,
            value_name = "P/Q",
            conflicts_with = "budget",
            required_unless_present = "budget"
        )]
        target_psi: Option<String>,
        /// Strongest set of at most this many nodes.
        #[arg(long)]
        budget: Option<usize>,
        /// Stop the budget search once the bracket is this tight (relative).
        #[arg(long, value_name = "R", requires = "budget")]
        rel_gap: Option<String>,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Predict every node from labeled nodes.
    Predict {
        #[command(flatten)]
        input: Input,
        /// Labels of the labeled nodes.
        #[arg(long)]
        labels: PathBuf,
        #[arg(long, value_enum, default_value_t = PredictorArg::Mincut)]
        method: PredictorArg,
        #[command(flatten)]
        real: RealInput,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Check the error bound of a prediction against the truth.
    Certify {
        #[command(flatten)]
        input: Input,
        /// Labels revealed to the predictor; their nodes form the labeled set.
        #[arg(long)]
        labels: PathBuf,
        /// Full ground truth.
        #[arg(long)]
        truth: PathBuf,
        /// A complete prediction; computed with `--method` when absent.
        #[arg(long)]
        prediction: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = PredictorArg::Mincut)]
        method: PredictorArg,
        #[command(flatten)]
        real: RealInput,
    },
    /// Compare selection methods against a known truth.
    Experiment {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        truth: PathBuf,
        #[arg(long, value_delimiter = ',', default_value = "psi-max,random")]
        methods: Vec<String>,
        #[arg(long, value_enum, default_value_t = PredictorArg::Mincut)]
        predictor: PredictorArg,
        #[arg(long, value_delimiter = ',', required = true)]
        label_counts: Vec<usize>,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[command(flatten)]
        real: RealInput,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}

#[derive(Args)]
struct Input {
    /// Edge list, or hyperedge list with `--oracle hypergraph`.
    #[arg(long, short)]
    input: PathBuf,
}

#[derive(Args)]
struct RealInput {
    /// Real-weighted edge list for label propagation; defaults to `--input`.
    #[arg(long)]
    weighted_input: Option<PathBuf>,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct SetArg {
    /// Comma-separated node indices.
    #[arg(long, value_delimiter = ',')]
    nodes: Option<Vec<usize>>,
    /// A labels file; its labeled nodes form the set.
    #[arg(long)]
    labels: Option<PathBuf>,
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::DeskScaleLimit { .. } => 3,
            Error::InvalidArgument(_) => 1,
            _ => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Error::from(e).into()
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 1,
        message: message.into(),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn open(path: &Path) -> Result<BufReader<File>, Failure> {
    File::open(path)
        .map(BufReader::new)
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())).into())
}

fn sink(path: &Option<PathBuf>) -> Result<Box<dyn Write>, Failure> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).map_err(|e| Error::Io(format!("{}: {e}", p.display())))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

/// The cut oracle of an input file with the factor its weights were scaled by.
struct Loaded {
    oracle: Oracle,
    scale: Weight,
    graph: Option<ScaledGraph<Weight>>,
}

impl Loaded {
    fn read(kind: OracleArg, path: &Path) -> Result<Self, Failure> {
        Ok(match kind {
            OracleArg::Graph => {
                let g = read_edge_list::<Weight, _>(open(path)?)?;
                Loaded {
                    oracle: g.graph.clone().into(),
                    scale: g.scale,
                    graph: Some(g),
                }
            }
            OracleArg::Hypergraph => {
                let h = read_hyperedge_list::<Weight, _>(open(path)?)?;
                Loaded {
                    oracle: h.hypergraph.into(),
                    scale: h.scale,
                    graph: None,
                }
            }
        })
    }

    fn n(&self) -> usize {
        self.oracle.universe()
    }

    fn unscale(&self, r: &Strength) -> Strength {
        match r {
            Strength::Finite(r) => Strength::Finite(r / self.scale),
            Strength::Infinite => Strength::Infinite,
        }
    }

    fn real_graph(&self, extra: &RealInput) -> Result<RealGraph, Failure> {
        let g = match (&extra.weighted_input, &self.graph) {
            (Some(path), _) => read_edge_list_real::<f64, _>(open(path)?)?,
            (None, Some(g)) => g.to_real(),
            (None, None) => return Err(usage("label propagation needs a graph; pass --weighted-input")),
        };
        if g.node_count() != self.n() {
            return Err(Error::DatasetMismatch(format!(
                "weighted graph has {} nodes, input has {}",
                g.node_count(),
                self.n()
            ))
            .into());
        }
        Ok(g)
    }
}

fn parse_rational(text: &str, what: &str) -> Result<Rational, Failure> {
    parse_ratio::<Weight>(text).ok_or_else(|| usage(format!("{what}: cannot read `{text}` as a rational")))
}

fn repr(r: &Strength) -> Result<RatioRepr, Failure> {
    Ok(RatioRepr::from_ext(r)?)
}

fn emit_json(out: &mut dyn Write, value: &serde_json::Value) -> Result<(), Failure> {
    writeln!(
        out,
        "{}",
        serde_json::to_string_pretty(value).expect("json value serializes")
    )?;
    out.flush()?;
    Ok(())
}

fn predict(
    loaded: &Loaded,
    l: &NodeSet,
    y_l: &Labeling,
    method: PredictorArg,
    real: &RealInput,
) -> Result<Labeling, Failure> {
    Ok(match method {
        PredictorArg::Mincut => mincut_predict(&loaded.oracle, l, y_l)?,
        PredictorArg::Labelprop => label_prop_predict(&loaded.real_graph(real)?, l, y_l, &LabelPropParams::default())?,
    })
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::BuildKnn {
            points,
            k,
            weighted,
            output,
        } => {
            let pts = read_points::<f64, _>(open(&points)?)?;
            let out = sink(&output)?;
            if weighted {
                write_edge_list_real(&knn_graph(&pts, k, true)?, out)?;
            } else {
                write_edge_list(&ScaledGraph::unit(knn_unweighted::<Weight, f64>(&pts, k)?), out)?;
            }
        }
        Command::BuildRatings {
            ratings,
            min_ratings,
            output,
            items,
        } => {
            let rows = read_ratings(open(&ratings)?)?;
            let built = ratings_to_hypergraph::<Weight>(&rows, min_ratings)?;
            eprintln!(
                "nodes\t{}\nhyperedges\t{}",
                built.hypergraph.node_count(),
                built.hypergraph.edges().len()
            );
            if let Some(path) = items {
                let mut out = sink(&Some(path))?;
                for item in &built.items {
                    writeln!(out, "{item}")?;
                }
                out.flush()?;
            }
            let h = ScaledHypergraph {
                hypergraph: built.hypergraph,
                scale: 1,
            };
            write_hyperedge_list(&h, sink(&output)?)?;
        }
        Command::Psi { input, set } => {
            let loaded = Loaded::read(cli.oracle, &input.input)?;
            let n = loaded.n();
            let s = match (set.nodes, set.labels) {
                (Some(nodes), _) => NodeSet::from_indices(n, nodes)?,
                (None, Some(path)) => read_labels(open(&path)?, n)?.defined(),
                (None, None) => unreachable!("clap requires one of the two"),
            };
            let cert = compute_psi(&loaded.oracle, &s)?;
            emit_json(
                &mut *sink(&None)?,
                &json!({
                    "set": s.to_vec(),
                    "psi": repr(&loaded.unscale(&cert.psi))?,
                    "witness": cert.witness.to_vec(),
                    "iterations": cert.iterations,
                }),
            )?;
        }
        Command::Select {
            input,
            target_psi,
            budget,
            rel_gap,
            output,
        } => {
            let loaded = Loaded::read(cli.oracle, &input.input)?;
            let result = match (target_psi, budget) {
                (Some(t), _) => {
                    let lambda = parse_rational(&t, "--target-psi")? * loaded.scale;
                    select_target(&loaded.oracle, &lambda)?
                }
                (None, Some(k)) => {
                    let gap = match rel_gap {
                        Some(r) => parse_rational(&r, "--rel-gap")?,
                        None => activegraph::select::default_rel_gap(),
                    };
                    select_budget(&loaded.oracle, k, &gap)?
                }
                (None, None) => unreachable!("clap requires one of the two"),
            };
            let doc = SelectionDoc::from_result(&result, loaded.scale)?;
            let mut out = sink(&output)?;
            writeln!(out, "{}", doc.to_json())?;
            out.flush()?;
        }
        Command::Predict {
            input,
            labels,
            method,
            real,
            output,
        } => {
            let loaded = Loaded::read(cli.oracle, &input.input)?;
            let y_l = read_labels(open(&labels)?, loaded.n())?;
            let y = predict(&loaded, &y_l.defined(), &y_l, method, &real)?;
            let mut out = sink(&output)?;
            write_labels(&y, &mut out)?;
            out.flush()?;
        }
        Command::Certify {
            input,
            labels,
            truth,
            prediction,
            method,
            real,
        } => {
            let loaded = Loaded::read(cli.oracle, &input.input)?;
            let n = loaded.n();
            let y_l = read_labels(open(&labels)?, n)?;
            let l = y_l.defined();
            let y = read_labels(open(&truth)?, n)?;
            y.require_total()?;
            if let Some(v) = l.iter().find(|&v| y_l.get(v) != y.get(v)) {
                return Err(Error::DatasetMismatch(format!("label of node {v} disagrees with the truth")).into());
            }
            let y_prime = match prediction {
                Some(path) => {
                    let p = read_labels(open(&path)?, n)?;
                    p.require_total()?;
                    p
                }
                None => predict(&loaded, &l, &y_l, method, &real)?,
            };
            let report = error_certificate(&loaded.oracle, &l, &y, &y_prime)?;
            let phi = |w: Weight| repr(&Strength::Finite(Rational::new(w, loaded.scale)));
            emit_json(
                &mut *sink(&None)?,
                &json!({
                    "labeled": l.len(),
                    "effective_labeled": report.effective_labeled.to_vec(),
                    "disagreements": report.disagreements,
                    "phi_truth": phi(report.phi_truth)?,
                    "phi_predicted": phi(report.phi_predicted)?,
                    "psi": repr(&loaded.unscale(&report.psi))?,
                    "bound": repr(&report.bound)?,
                    "vacuous": report.vacuous,
                    "bound_holds": report.bound_holds,
                }),
            )?;
        }
        Command::Experiment {
            input,
            truth,
            methods,
            predictor,
            label_counts,
            trials,
            real,
            output,
        } => {
            let loaded = Loaded::read(cli.oracle, &input.input)?;
            let methods = methods
                .iter()
                .map(|m| m.parse::<Method>())
                .collect::<Result<Vec<_>, _>>()?;
            let truth = read_labels(open(&truth)?, loaded.n())?;
            let graph = match predictor {
                PredictorArg::Labelprop => Some(loaded.real_graph(&real)?),
                PredictorArg::Mincut => None,
            };
            let spec = ExperimentSpec {
                methods,
                predictor: predictor.into(),
                label_counts,
                trials,
                seed: cli.seed,
            };
            let data = ExperimentData::new(loaded.oracle, graph, truth)?;
            let rows = run_experiment(&data, &spec)?;
            write_rows(&rows, sink(&output)?)?;
        }
    }
    Ok(())
}
