//! Strength `Ψ(S) = min_{∅≠T⊆V∖S} Γ(T)/|T|` and the parametric surrogate
//! `F_λ(S) = min_{T⊆V∖S} Γ(T) − λ|T|`.

use num_rational::Ratio;
use num_traits::Zero;

use crate::enumerate::for_each_subset;
use crate::error::{Error, Result};
use crate::flow::strength_network;
use crate::labeling::Labeling;
use crate::oracle::CutOracle;
use crate::ratio::ExtRatio;
use crate::scalar::Exact;
use crate::set::NodeSet;

/// Value of `F_λ(S)` together with the largest minimizing `T`.
#[derive(Debug, Clone, PartialEq)]
pub struct FLambda<W: Exact> {
    pub value: Ratio<W>,
    pub minimizer: NodeSet,
}

/// Evaluates `F_λ(S)`.
///
/// Cut oracles go through a single max-flow; symmetrized generic oracles are
/// minimized by enumeration and fail with [`Error::DeskScaleLimit`] beyond
/// that scale. Either way the returned minimizer is the largest one (the
/// minimizers of a submodular function are closed under union).
pub fn eval_f_lambda<W: Exact>(oracle: &CutOracle<W>, s: &NodeSet, lambda: &Ratio<W>) -> Result<FLambda<W>> {
    let n = oracle.universe();
    s.check_universe(n)?;
    if *lambda < Ratio::zero() {
        return Err(Error::InvalidArgument(format!("negative lambda {lambda}")));
    }
    if let Some(structure) = oracle.flow_structure() {
        let (value, minimizer) = strength_network(structure, s, *lambda)?.solve()?;
        return Ok(FLambda { value, minimizer });
    }

    let (p, d) = (*lambda.numer(), *lambda.denom());
    let free = s.complement().to_vec();
    let mut best = W::zero();
    let mut best_set = NodeSet::empty(n);
    for_each_subset(n, &free, |t| {
        let size = W::from_count(t.len()).ok_or(Error::Overflow("node count"))?;
        let scaled = oracle
            .eval(&t)?
            .checked_mul(&d)
            .and_then(|g| p.checked_mul(&size).map(|ps| g - ps))
            .ok_or(Error::Overflow("shifted objective"))?;
        if scaled < best || (scaled == best && t.len() > best_set.len()) {
            best = scaled;
            best_set = t;
        }
        Ok(())
    })?;
    Ok(FLambda {
        value: Ratio::new(best, d),
        minimizer: best_set,
    })
}

/// Exact `Ψ(S)` with a minimizing witness.
#[derive(Debug, Clone, PartialEq)]
pub struct PsiCertificate<W: Exact> {
    pub psi: ExtRatio<W>,
    /// A nonempty `T ⊆ V∖S` with `Γ(T)/|T| = Ψ(S)`; empty only when `S = V`.
    pub witness: NodeSet,
    /// Number of `F_λ` evaluations performed.
    pub iterations: usize,
    /// The sequence of ratio estimates visited, strictly decreasing.
    pub lambdas: Vec<Ratio<W>>,
}

fn ratio_of<W: Exact>(oracle: &CutOracle<W>, t: &NodeSet) -> Result<Ratio<W>> {
    let size = W::from_count(t.len()).ok_or(Error::Overflow("node count"))?;
    Ok(Ratio::new(oracle.eval(t)?, size))
}

/// Computes `Ψ(S)` by the parametric descent: start from `T = V∖S`, set
/// `λ = Γ(T)/|T|`, replace `T` by the minimizer of `Γ(T̂) − λ|T̂|` and repeat
/// until that minimum is zero.
pub fn compute_psi<W: Exact>(oracle: &CutOracle<W>, s: &NodeSet) -> Result<PsiCertificate<W>> {
    let n = oracle.universe();
    s.check_universe(n)?;
    if s.is_full() {
        return Ok(PsiCertificate {
            psi: ExtRatio::Infinite,
            witness: NodeSet::empty(n),
            iterations: 0,
            lambdas: Vec::new(),
        });
    }
    let mut t = s.complement();
    let mut lambdas = Vec::new();
    let mut iterations = 0;
    loop {
        let lambda = ratio_of(oracle, &t)?;
        lambdas.push(lambda);
        if lambda.is_zero() {
            break;
        }
        let f = eval_f_lambda(oracle, s, &lambda)?;
        iterations += 1;
        if f.value.is_zero() {
            break;
        }
        debug_assert!(!f.minimizer.is_empty());
        t = f.minimizer;
    }
    Ok(PsiCertificate {
        psi: ExtRatio::Finite(*lambdas.last().expect("at least one estimate")),
        witness: t,
        iterations,
        lambdas,
    })
}

/// Worst-case labelings showing that `1/Ψ(L)` cannot be improved: the
/// prediction `y′` is all ones and the truth `y` is zero exactly on the
/// witness `T` of `Ψ(L)`, so `(Φ(y) + Φ(y′)) / ‖y − y′‖² = Ψ(L)`.
///
/// Returns `(y, y′)`.
pub fn adversarial_labeling<W: Exact>(oracle: &CutOracle<W>, l: &NodeSet) -> Result<(Labeling, Labeling)> {
    let cert = compute_psi(oracle, l)?;
    match cert.psi {
        ExtRatio::Infinite => Err(Error::ConstructionUndefined(
            "strength is infinite (every node is labeled)".into(),
        )),
        ExtRatio::Finite(r) if r.is_zero() => Err(Error::ConstructionUndefined(
            "strength is zero (a zero-cut set avoids the labeled nodes)".into(),
        )),
        ExtRatio::Finite(_) => {
            let n = oracle.universe();
            let y = Labeling::indicator(&cert.witness.complement());
            Ok((y, Labeling::constant(n, true)))
        }
    }
}
