//! Exhaustive reference oracles, usable whenever at most
//! [`DESK_SCALE_LIMIT`](crate::enumerate::DESK_SCALE_LIMIT) nodes are free.
//!
//! These evaluate the defining minimizations directly and share no code with
//! the flow-based paths they are used to check.

use num_rational::Ratio;

use crate::enumerate::for_each_subset;
use crate::error::{Error, Result};
use crate::oracle::CutOracle;
use crate::ratio::ExtRatio;
use crate::scalar::Exact;
use crate::set::NodeSet;

fn count<W: Exact>(k: usize) -> Result<W> {
    W::from_count(k).ok_or(Error::Overflow("node count"))
}

/// `min Γ(T)/|T|` over nonempty `T ⊆ V∖S`, by enumeration; `+∞` when `S = V`.
pub fn brute_psi<W: Exact>(oracle: &CutOracle<W>, s: &NodeSet) -> Result<ExtRatio<W>> {
    s.check_universe(oracle.universe())?;
    let free = s.complement().to_vec();
    let mut best = ExtRatio::Infinite;
    for_each_subset(oracle.universe(), &free, |t| {
        if !t.is_empty() {
            let r = ExtRatio::Finite(Ratio::new(oracle.eval(&t)?, count(t.len())?));
            if r < best {
                best = r;
            }
        }
        Ok(())
    })?;
    Ok(best)
}

/// `F_λ(S) = min_{T⊆V∖S} Γ(T) − λ|T|`, by enumeration.
pub fn brute_f_lambda<W: Exact>(oracle: &CutOracle<W>, s: &NodeSet, lambda: &Ratio<W>) -> Result<Ratio<W>> {
    s.check_universe(oracle.universe())?;
    let free = s.complement().to_vec();
    let mut best = Ratio::from_integer(W::zero());
    for_each_subset(oracle.universe(), &free, |t| {
        let v = Ratio::from_integer(oracle.eval(&t)?) - *lambda * Ratio::from_integer(count(t.len())?);
        if v < best {
            best = v;
        }
        Ok(())
    })?;
    Ok(best)
}

/// `min Γ(S)` over `pos ⊆ S ⊆ V∖neg`, by enumeration.
pub fn brute_seeded_min<W: Exact>(oracle: &CutOracle<W>, pos: &NodeSet, neg: &NodeSet) -> Result<W> {
    let n = oracle.universe();
    let free = pos.union(neg).complement().to_vec();
    let mut best: Option<W> = None;
    for_each_subset(n, &free, |t| {
        let v = oracle.eval(&t.union(pos))?;
        if best.is_none_or(|b| v < b) {
            best = Some(v);
        }
        Ok(())
    })?;
    Ok(best.expect("at least the empty subset is visited"))
}
