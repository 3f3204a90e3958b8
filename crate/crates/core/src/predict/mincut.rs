use crate::enumerate::for_each_subset;
use crate::error::{Error, Result};
use crate::flow::seeded_min_cut;
use crate::labeling::Labeling;
use crate::oracle::CutOracle;
use crate::scalar::Exact;
use crate::set::NodeSet;

/// Completes `y_l` to the labeling of least `Φ` that agrees with it on `l`.
///
/// Among several minimizers the one with the fewest nodes labeled 1 is
/// returned. Cut oracles use one max-flow; generic oracles enumerate the
/// unlabeled nodes and fail beyond the desk-scale limit.
pub fn mincut_predict<W: Exact>(oracle: &CutOracle<W>, l: &NodeSet, y_l: &Labeling) -> Result<Labeling> {
    let n = oracle.universe();
    l.check_universe(n)?;
    if y_l.len() != n {
        return Err(Error::UniverseMismatch {
            expected: n,
            found: y_l.len(),
        });
    }
    let defined = y_l.defined();
    if let Some(v) = l.difference(&defined).iter().next() {
        return Err(Error::IncompleteLabeling(v));
    }
    if let Some(v) = defined.difference(l).iter().next() {
        return Err(Error::InvalidArgument(format!(
            "node {v} is labeled but not in the labeled set"
        )));
    }
    let pos = y_l.with_label(true);
    let neg = y_l.with_label(false);

    let ones = match oracle.flow_structure() {
        Some(structure) => seeded_min_cut(structure, &pos, &neg)?.one_side,
        None => {
            let free = l.complement().to_vec();
            let mut best: Option<(W, NodeSet)> = None;
            for_each_subset(n, &free, |t| {
                let s = t.union(&pos);
                let v = oracle.eval(&s)?;
                let better = match &best {
                    None => true,
                    Some((b, bs)) => v < *b || (v == *b && s.len() < bs.len()),
                };
                if better {
                    best = Some((v, s));
                }
                Ok(())
            })?;
            best.expect("empty subset always visited").1
        }
    };
    Ok(Labeling::indicator(&ones))
}
