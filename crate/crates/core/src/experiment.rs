//! Selection-versus-baseline experiments with known ground truth.
//!
//! For each label count `k` and each trial a label set `L` is chosen, the
//! truth is revealed on `L`, the rest is predicted, and the error is the
//! fraction of unlabeled nodes predicted wrongly.
//!
//! `psi-max` runs the budgeted search once per `k` to fix the target
//! strength, then for every trial reruns the capped greedy for that target on
//! a randomly relabeled copy of the data, so tie-breaking varies across
//! trials. `random` draws a fresh uniform `L` per trial. Trial `t` for count
//! `k` uses its own ChaCha stream derived from `(seed, k, t)`.

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use num_rational::Ratio;
use rand::seq::{index::sample, SliceRandom};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::labeling::Labeling;
use crate::oracle::CutOracle;
use crate::predict::{label_prop_predict, mincut_predict, LabelPropParams};
use crate::scalar::Exact;
use crate::select::{default_rel_gap, select_budget, select_target_with, GreedyMode};
use crate::set::NodeSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    PsiMax,
    Random,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Predictor {
    Mincut,
    LabelProp,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::PsiMax => "psi-max",
            Method::Random => "random",
        })
    }
}

impl FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "psi-max" => Ok(Method::PsiMax),
            "random" => Ok(Method::Random),
            _ => Err(Error::InvalidArgument(format!("unknown method `{s}`"))),
        }
    }
}

impl fmt::Display for Predictor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Predictor::Mincut => "mincut",
            Predictor::LabelProp => "labelprop",
        })
    }
}

impl FromStr for Predictor {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "mincut" => Ok(Predictor::Mincut),
            "labelprop" => Ok(Predictor::LabelProp),
            _ => Err(Error::InvalidArgument(format!("unknown predictor `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExperimentSpec {
    pub methods: Vec<Method>,
    pub predictor: Predictor,
    pub label_counts: Vec<usize>,
    pub trials: usize,
    pub seed: u64,
}

/// The data an experiment runs on. Label propagation needs `graph`, a real
/// weighted copy of the structure behind `oracle`.
#[derive(Debug, Clone)]
pub struct ExperimentData<W> {
    oracle: CutOracle<W>,
    graph: Option<WeightedGraph<f64>>,
    truth: Labeling,
}

impl<W: Exact> ExperimentData<W> {
    pub fn new(oracle: CutOracle<W>, graph: Option<WeightedGraph<f64>>, truth: Labeling) -> Result<Self> {
        let n = oracle.universe();
        if truth.len() != n {
            return Err(Error::DatasetMismatch(format!("{} labels for {n} nodes", truth.len())));
        }
        if let Some(v) = (0..n).find(|&v| truth.get(v).is_none()) {
            return Err(Error::DatasetMismatch(format!("node {v} has no ground-truth label")));
        }
        if let Some(g) = &graph {
            if g.node_count() != n {
                return Err(Error::DatasetMismatch(format!(
                    "graph has {} nodes, oracle has {n}",
                    g.node_count()
                )));
            }
        }
        Ok(ExperimentData { oracle, graph, truth })
    }

    fn permuted(&self, perm: &[usize]) -> Result<Self> {
        let mut truth = Labeling::undefined(perm.len());
        for (i, &p) in perm.iter().enumerate() {
            truth.set(p, self.truth.get(i).expect("truth is total"))?;
        }
        Ok(ExperimentData {
            oracle: self.oracle.permuted(perm)?,
            graph: self.graph.as_ref().map(|g| g.permuted(perm)).transpose()?,
            truth,
        })
    }

    fn predict(&self, predictor: Predictor, l: &NodeSet) -> Result<Labeling> {
        let y_l = self.truth.restrict(l);
        match predictor {
            Predictor::Mincut => mincut_predict(&self.oracle, l, &y_l),
            Predictor::LabelProp => {
                let g = self
                    .graph
                    .as_ref()
                    .ok_or_else(|| Error::InvalidArgument("label propagation needs a graph dataset".into()))?;
                label_prop_predict(g, l, &y_l, &LabelPropParams::default())
            }
        }
    }

    /// Fraction of nodes outside `l` on which `predicted` is wrong.
    pub fn error(&self, l: &NodeSet, predicted: &Labeling) -> f64 {
        let unlabeled = l.complement();
        if unlabeled.is_empty() {
            return 0.0;
        }
        let wrong = unlabeled
            .iter()
            .filter(|&v| predicted.get(v) != self.truth.get(v))
            .count();
        wrong as f64 / unlabeled.len() as f64
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentRow {
    pub method: String,
    pub predictor: String,
    pub k: usize,
    pub mean_error: f64,
    pub std: f64,
    pub trials: usize,
}

fn trial_rng(seed: u64, method: Method, k: usize, trial: usize) -> ChaCha8Rng {
    let tag = match method {
        Method::PsiMax => 0x5053_494d_4158_0000,
        Method::Random => 0x5241_4e44_4f4d_0000,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ tag);
    rng.set_stream(((k as u64) << 32) | trial as u64);
    rng
}

fn summarize(method: Method, predictor: Predictor, k: usize, errors: &[f64]) -> ExperimentRow {
    let t = errors.len() as f64;
    let mean = errors.iter().sum::<f64>() / t;
    let std = if errors.len() > 1 {
        (errors.iter().map(|e| (e - mean) * (e - mean)).sum::<f64>() / (t - 1.0)).sqrt()
    } else {
        0.0
    };
    ExperimentRow {
        method: method.to_string(),
        predictor: predictor.to_string(),
        k,
        mean_error: mean,
        std,
        trials: errors.len(),
    }
}

/// Per-trial errors for one method and label count.
pub fn trial_errors<W: Exact>(
    data: &ExperimentData<W>,
    method: Method,
    predictor: Predictor,
    k: usize,
    trials: usize,
    seed: u64,
) -> Result<Vec<f64>> {
    let n = data.oracle.universe();
    if k == 0 || k > n {
        return Err(Error::InvalidArgument(format!("label count {k} outside 1..={n}")));
    }
    if trials == 0 {
        return Err(Error::InvalidArgument("at least one trial is required".into()));
    }
    match method {
        Method::Random => (0..trials)
            .map(|t| {
                let mut rng = trial_rng(seed, method, k, t);
                let l = NodeSet::from_indices(n, sample(&mut rng, n, k))?;
                Ok(data.error(&l, &data.predict(predictor, &l)?))
            })
            .collect(),
        Method::PsiMax => {
            let base = select_budget(&data.oracle, k, &default_rel_gap())?;
            if base.saturated {
                return Ok(vec![0.0; trials]);
            }
            let lambda = base
                .target_lambda
                .unwrap_or_else(|| Ratio::new(W::one(), W::from_count(n).expect("node count fits the weight type")));
            (0..trials)
                .map(|t| {
                    let mut rng = trial_rng(seed, method, k, t);
                    let mut perm: Vec<usize> = (0..n).collect();
                    perm.shuffle(&mut rng);
                    let relabeled = data.permuted(&perm)?;
                    let chosen = select_target_with(&relabeled.oracle, &lambda, GreedyMode::Lazy, Some(k))?.chosen;
                    Ok(relabeled.error(&chosen, &relabeled.predict(predictor, &chosen)?))
                })
                .collect()
        }
    }
}

pub fn run_experiment<W: Exact>(data: &ExperimentData<W>, spec: &ExperimentSpec) -> Result<Vec<ExperimentRow>> {
    let n = data.oracle.universe();
    if spec.trials == 0 {
        return Err(Error::InvalidArgument("at least one trial is required".into()));
    }
    if let Some(&k) = spec.label_counts.iter().find(|&&k| k == 0 || k > n) {
        return Err(Error::DatasetMismatch(format!("label count {k} outside 1..={n}")));
    }
    let mut rows = Vec::new();
    for &method in &spec.methods {
        for &k in &spec.label_counts {
            let errors = trial_errors(data, method, spec.predictor, k, spec.trials, spec.seed)?;
            rows.push(summarize(method, spec.predictor, k, &errors));
        }
    }
    Ok(rows)
}

pub fn write_rows<O: Write>(rows: &[ExperimentRow], out: O) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row).map_err(|e| Error::Io(e.to_string()))?;
    }
    w.flush()?;
    Ok(())
}
