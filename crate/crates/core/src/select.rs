//! Label-set selection.
//!
//! `F_λ` is monotone and submodular in `S`, and its zero level set is exactly
//! `{S : Ψ(S) ≥ λ}`. Reaching `Ψ(S) ≥ λ` with few labels is therefore a
//! submodular set cover problem, solved greedily. The budgeted variant
//! bisects over `λ` and keeps the best certified set of at most `k` nodes.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use num_rational::Ratio;
use num_traits::Zero;
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::flow::StrengthSolver;
use crate::oracle::CutOracle;
use crate::psi::{compute_psi, eval_f_lambda, FLambda};
use crate::ratio::ExtRatio;
use crate::scalar::Exact;
use crate::set::NodeSet;

/// Default stopping gap `(hi − lo)/hi` for budgeted selection.
pub const DEFAULT_REL_GAP: (i64, i64) = (1, 10_000);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TraceStep<W: Exact> {
    pub node: usize,
    /// `F_λ(S)` right after adding `node`.
    pub f_lambda: Ratio<W>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SelectionResult<W: Exact> {
    pub chosen: NodeSet,
    /// `Ψ(chosen)`, recomputed from scratch on the returned set.
    pub achieved_psi: ExtRatio<W>,
    pub target_lambda: Option<Ratio<W>>,
    pub trace: Vec<TraceStep<W>>,
    /// Candidate `F_λ` evaluations made while ranking gains.
    pub oracle_evaluations: usize,
    /// Set when the budget covers every node and `V` itself is returned.
    pub saturated: bool,
}

impl<W: Exact> SelectionResult<W> {
    /// Nodes in the order the greedy added them.
    pub fn order(&self) -> Vec<usize> {
        self.trace.iter().map(|s| s.node).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum GreedyMode {
    /// Priority queue of stale gain upper bounds, re-evaluated on demand.
    #[default]
    Lazy,
    /// Re-evaluates every candidate at every step.
    Naive,
}

/// Outcome of one greedy run before certification.
struct GreedyRun<W: Exact> {
    chosen: NodeSet,
    trace: Vec<TraceStep<W>>,
    evaluations: usize,
    final_value: Ratio<W>,
}

impl<W: Exact> GreedyRun<W> {
    fn feasible(&self) -> bool {
        self.final_value.is_zero()
    }
}

/// Heap entry ordered by gain, then by lower node index.
struct Candidate<W: Exact> {
    /// Exact gain when `fresh` is the current round, an upper bound otherwise.
    gain: Ratio<W>,
    node: usize,
    fresh: Option<usize>,
    /// Largest minimizer of `F_λ(S ∪ {node})`, when it was evaluated.
    minimizer: Option<NodeSet>,
}

impl<W: Exact> PartialEq for Candidate<W> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl<W: Exact> Eq for Candidate<W> {}

impl<W: Exact> PartialOrd for Candidate<W> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<W: Exact> Ord for Candidate<W> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.gain.cmp(&other.gain).then_with(|| other.node.cmp(&self.node))
    }
}

/// `F_λ` along the growing greedy set. Cut oracles keep one maximum flow
/// and re-augment it; other oracles are evaluated from scratch.
enum Evaluator<'a, W: Exact> {
    Warm(StrengthSolver<W>),
    Direct {
        oracle: &'a CutOracle<W>,
        lambda: Ratio<W>,
        chosen: NodeSet,
    },
}

impl<'a, W: Exact> Evaluator<'a, W> {
    fn new(oracle: &'a CutOracle<W>, lambda: &Ratio<W>, warm: bool) -> Result<Self> {
        let chosen = NodeSet::empty(oracle.universe());
        match oracle.flow_structure() {
            Some(structure) if warm => Ok(Evaluator::Warm(StrengthSolver::new(structure, &chosen, *lambda)?)),
            _ => Ok(Evaluator::Direct {
                oracle,
                lambda: *lambda,
                chosen,
            }),
        }
    }

    fn current(&self) -> Result<FLambda<W>> {
        match self {
            Evaluator::Warm(solver) => {
                let (value, minimizer) = solver.value();
                Ok(FLambda { value, minimizer })
            }
            Evaluator::Direct { oracle, lambda, chosen } => eval_f_lambda(oracle, chosen, lambda),
        }
    }

    fn extended(&self, v: usize) -> Result<FLambda<W>> {
        match self {
            Evaluator::Warm(solver) => {
                let (value, minimizer) = solver.extended(v)?;
                Ok(FLambda { value, minimizer })
            }
            Evaluator::Direct { oracle, lambda, chosen } => eval_f_lambda(oracle, &chosen.with(v), lambda),
        }
    }

    fn add(&mut self, v: usize) -> Result<()> {
        match self {
            Evaluator::Warm(solver) => solver.add(v),
            Evaluator::Direct { chosen, .. } => {
                chosen.insert(v);
                Ok(())
            }
        }
    }
}

/// Greedily maximizes `F_λ` from `S = ∅` until it reaches zero or `cap`
/// nodes have been chosen. Ties go to the lowest node index in both modes.
fn greedy<W: Exact>(
    oracle: &CutOracle<W>,
    lambda: &Ratio<W>,
    mode: GreedyMode,
    cap: Option<usize>,
) -> Result<GreedyRun<W>> {
    let n = oracle.universe();
    let mut chosen = NodeSet::empty(n);
    let mut evaluator = Evaluator::new(oracle, lambda, mode == GreedyMode::Lazy)?;
    let start = evaluator.current()?;
    let mut current = start.value;
    let mut t_star = start.minimizer;
    let mut trace = Vec::new();
    let mut evaluations = 0usize;
    let cap = cap.unwrap_or(n);
    let mut heap: BinaryHeap<Candidate<W>> = BinaryHeap::new();
    let mut round = 0usize;

    while current < Ratio::zero() && chosen.len() < cap {
        let (node, value) = match mode {
            GreedyMode::Naive => {
                let mut best: Option<(usize, Ratio<W>)> = None;
                for v in 0..n {
                    if chosen.contains(v) {
                        continue;
                    }
                    let value = evaluator.extended(v)?.value;
                    evaluations += 1;
                    if best.is_none_or(|(_, b)| value > b) {
                        best = Some((v, value));
                    }
                }
                best.expect("a free node exists while F_λ < 0")
            }
            GreedyMode::Lazy => {
                // Tighten every bound with Γ(T*∖{v}) − Γ(T*) + λ, where T* is
                // the largest minimizer for the current set. Nodes outside T*
                // leave F_λ unchanged, so their gain is exactly zero.
                let deltas = oracle.removal_deltas(&t_star)?;
                let cap_gain = -current;
                let previous: Vec<Candidate<W>> = if round == 0 {
                    (0..n)
                        .map(|node| Candidate {
                            gain: cap_gain,
                            node,
                            fresh: None,
                            minimizer: None,
                        })
                        .collect()
                } else {
                    std::mem::take(&mut heap).into_vec()
                };
                let mut refreshed = Vec::with_capacity(previous.len());
                for mut c in previous {
                    c.minimizer = None;
                    if t_star.contains(c.node) {
                        let bound = Ratio::from_integer(deltas[c.node]) + *lambda;
                        c.gain = c.gain.min(bound).min(cap_gain);
                        c.fresh = None;
                    } else {
                        c.gain = Ratio::zero();
                        c.fresh = Some(round);
                    }
                    refreshed.push(c);
                }
                heap = BinaryHeap::from(refreshed);
                loop {
                    let top = heap.pop().expect("a free node exists while F_λ < 0");
                    if top.fresh == Some(round) {
                        if let Some(m) = top.minimizer {
                            t_star = m;
                        }
                        break (top.node, current + top.gain);
                    }
                    let f = evaluator.extended(top.node)?;
                    evaluations += 1;
                    heap.push(Candidate {
                        gain: f.value - current,
                        node: top.node,
                        fresh: Some(round),
                        minimizer: Some(f.minimizer),
                    });
                }
            }
        };
        chosen.insert(node);
        evaluator.add(node)?;
        current = value;
        trace.push(TraceStep { node, f_lambda: value });
        round += 1;
    }
    Ok(GreedyRun {
        chosen,
        trace,
        evaluations,
        final_value: current,
    })
}

fn certify<W: Exact>(
    oracle: &CutOracle<W>,
    run: GreedyRun<W>,
    lambda: Option<Ratio<W>>,
    evaluations: usize,
) -> Result<SelectionResult<W>> {
    let achieved_psi = compute_psi(oracle, &run.chosen)?.psi;
    Ok(SelectionResult {
        chosen: run.chosen,
        achieved_psi,
        target_lambda: lambda,
        trace: run.trace,
        oracle_evaluations: evaluations,
        saturated: false,
    })
}

/// Smallest-possible set with `Ψ(S) ≥ λ`, approximately: greedy submodular
/// set cover on `F_λ`.
pub fn select_target<W: Exact>(oracle: &CutOracle<W>, lambda: &Ratio<W>) -> Result<SelectionResult<W>> {
    select_target_with(oracle, lambda, GreedyMode::Lazy, None)
}

/// [`select_target`] with an explicit greedy mode and an optional size cap.
/// With a cap the returned set may fall short of the target.
pub fn select_target_with<W: Exact>(
    oracle: &CutOracle<W>,
    lambda: &Ratio<W>,
    mode: GreedyMode,
    cap: Option<usize>,
) -> Result<SelectionResult<W>> {
    if *lambda < Ratio::zero() {
        return Err(Error::InvalidArgument(format!("negative target {lambda}")));
    }
    let run = greedy(oracle, lambda, mode, cap)?;
    let evaluations = run.evaluations;
    certify(oracle, run, Some(*lambda), evaluations)
}

/// Best `Ψ` reachable with at most `k` labels.
///
/// Probes `λ_hi = max_v Γ({v})` first, then `1/n` (the smallest positive
/// value `Ψ` can take with integer weights), then bisects between the best
/// feasible and the lowest infeasible probe until `(hi − lo)/hi < rel_gap`.
/// Each probe runs the greedy capped at `k`; the result is the feasible probe
/// whose set certifies the largest `Ψ`. When no positive probe is feasible the
/// capped greedy set of the `1/n` probe is returned with its (zero) strength.
pub fn select_budget<W: Exact>(oracle: &CutOracle<W>, k: usize, rel_gap: &Ratio<W>) -> Result<SelectionResult<W>> {
    let n = oracle.universe();
    if k == 0 {
        return Err(Error::InvalidArgument("budget must be at least 1".into()));
    }
    if *rel_gap <= Ratio::zero() {
        return Err(Error::InvalidArgument(format!(
            "relative gap {rel_gap} must be positive"
        )));
    }
    if k >= n {
        let chosen = NodeSet::full(n);
        return Ok(SelectionResult {
            trace: chosen
                .iter()
                .map(|node| TraceStep {
                    node,
                    f_lambda: Ratio::zero(),
                })
                .collect(),
            chosen,
            achieved_psi: ExtRatio::Infinite,
            target_lambda: None,
            oracle_evaluations: 0,
            saturated: true,
        });
    }

    let mut evaluations = 0usize;
    let mut probe = |lambda: Ratio<W>| -> Result<GreedyRun<W>> {
        let run = greedy(oracle, &lambda, GreedyMode::Lazy, Some(k))?;
        evaluations += run.evaluations;
        Ok(run)
    };

    let hi_start = oracle
        .singleton_values()?
        .into_iter()
        .max()
        .map(Ratio::from_integer)
        .unwrap_or_else(Ratio::zero);
    let floor = Ratio::new(W::one(), W::from_count(n).ok_or(Error::Overflow("node count"))?);

    let mut best: Option<(GreedyRun<W>, Ratio<W>, ExtRatio<W>)> = None;
    let mut consider = |run: GreedyRun<W>, lambda: Ratio<W>| -> Result<bool> {
        if !run.feasible() {
            return Ok(false);
        }
        let psi = compute_psi(oracle, &run.chosen)?.psi;
        if best.as_ref().is_none_or(|(_, _, b)| psi > *b) {
            best = Some((run, lambda, psi));
        }
        Ok(true)
    };

    if hi_start.is_zero() || floor > hi_start {
        // Every singleton has zero cut: nothing positive is reachable.
        let run = probe(Ratio::zero())?;
        consider(run, Ratio::zero())?;
    } else {
        let top = probe(hi_start)?;
        if !consider(top, hi_start)? {
            let bottom_run = probe(floor)?;
            let bottom_feasible = bottom_run.feasible();
            if bottom_feasible {
                consider(bottom_run, floor)?;
                let (mut lo, mut hi) = (floor, hi_start);
                let two = Ratio::from_integer(W::one() + W::one());
                while (hi - lo) / hi >= *rel_gap {
                    let mid = (lo + hi) / two;
                    let run = probe(mid)?;
                    if consider(run, mid)? {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
            } else {
                let psi = compute_psi(oracle, &bottom_run.chosen)?.psi;
                best = Some((bottom_run, floor, psi));
            }
        }
    }

    let (run, lambda, psi) = best.expect("at least one probe is recorded");
    let feasible = run.feasible();
    Ok(SelectionResult {
        chosen: run.chosen,
        achieved_psi: psi,
        target_lambda: feasible.then_some(lambda),
        trace: run.trace,
        oracle_evaluations: evaluations,
        saturated: false,
    })
}

/// Uniform sample of `k` of the `n` nodes, reproducible from `seed`.
pub fn random_select(n: usize, k: usize, seed: u64) -> Result<NodeSet> {
    if k > n {
        return Err(Error::InvalidArgument(format!("cannot pick {k} of {n} nodes")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    NodeSet::from_indices(n, sample(&mut rng, n, k))
}

/// `rel_gap` default as a ratio in any exact type.
pub fn default_rel_gap<W: Exact>() -> Ratio<W> {
    Ratio::new(
        W::one(),
        W::from_i64(DEFAULT_REL_GAP.1).expect("default gap fits every exact type"),
    )
}
