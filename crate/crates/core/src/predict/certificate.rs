use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::labeling::Labeling;
use crate::oracle::{phi, CutOracle};
use crate::psi::compute_psi;
use crate::ratio::ExtRatio;
use crate::scalar::Exact;
use crate::set::NodeSet;

/// Error bound `‖y − y′‖² ≤ (Φ(y) + Φ(y′)) / Ψ(L)` evaluated exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct PredictionReport<W: Exact> {
    pub predicted: Labeling,
    /// Labeled nodes on which the prediction agrees with the truth; the bound
    /// is taken over this set.
    pub effective_labeled: NodeSet,
    pub disagreements: usize,
    pub phi_truth: W,
    pub phi_predicted: W,
    pub psi: ExtRatio<W>,
    pub bound: ExtRatio<W>,
    /// `Ψ = 0`: the bound is `+∞` and says nothing.
    pub vacuous: bool,
    pub bound_holds: bool,
}

pub fn error_certificate<W: Exact>(
    oracle: &CutOracle<W>,
    l: &NodeSet,
    y: &Labeling,
    y_prime: &Labeling,
) -> Result<PredictionReport<W>> {
    let n = oracle.universe();
    l.check_universe(n)?;
    let disagreements = y.disagreements(y_prime)?;
    let phi_truth = phi(oracle, y)?;
    let phi_predicted = phi(oracle, y_prime)?;
    let effective_labeled = y.agreement(y_prime, l);
    let psi = compute_psi(oracle, &effective_labeled)?.psi;
    let total = phi_truth
        .checked_add(&phi_predicted)
        .ok_or(Error::Overflow("phi sum"))?;
    let (bound, vacuous) = match psi {
        ExtRatio::Infinite => (ExtRatio::zero(), false),
        ExtRatio::Finite(r) if r == Ratio::from_integer(W::zero()) => (ExtRatio::Infinite, true),
        ExtRatio::Finite(r) => (ExtRatio::Finite(Ratio::from_integer(total) / r), false),
    };
    let errors = W::from_count(disagreements).ok_or(Error::Overflow("node count"))?;
    let bound_holds = ExtRatio::Finite(Ratio::from_integer(errors)) <= bound;
    Ok(PredictionReport {
        predicted: y_prime.clone(),
        effective_labeled,
        disagreements,
        phi_truth,
        phi_predicted,
        psi,
        bound,
        vacuous,
        bound_holds,
    })
}
