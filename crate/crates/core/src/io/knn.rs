use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::scalar::{Exact, Real};

fn validate<F: Real>(points: &[Vec<F>], k: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    if points.len() < k + 1 {
        return Err(Error::TooFewPoints {
            need: k + 1,
            got: points.len(),
        });
    }
    let dim = points[0].len();
    for (i, p) in points.iter().enumerate() {
        if p.len() != dim {
            return Err(Error::InvalidArgument(format!(
                "point {i} has {} coordinates, expected {dim}",
                p.len()
            )));
        }
        if p.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidArgument(format!("point {i} has a non-finite coordinate")));
        }
    }
    Ok(())
}

fn sq_dist<F: Real>(a: &[F], b: &[F]) -> F {
    a.iter().zip(b).fold(F::zero(), |acc, (&x, &y)| acc + (x - y) * (x - y))
}

/// The `k` nearest other points of each point with their squared distances,
/// nearest first; equal distances go to the lower index.
fn nearest<F: Real>(points: &[Vec<F>], k: usize) -> Result<Vec<Vec<(usize, F)>>> {
    validate(points, k)?;
    Ok(points
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let mut others: Vec<(usize, F)> = points
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(j, q)| (j, sq_dist(p, q)))
                .collect();
            others.sort_by(|a, b| a.1.partial_cmp(&b.1).expect("finite distances").then(a.0.cmp(&b.0)));
            others.truncate(k);
            others
        })
        .collect())
}

pub fn neighbor_lists<F: Real>(points: &[Vec<F>], k: usize) -> Result<Vec<Vec<usize>>> {
    Ok(nearest(points, k)?
        .into_iter()
        .map(|row| row.into_iter().map(|(j, _)| j).collect())
        .collect())
}

fn union_pairs<F: Real>(lists: &[Vec<(usize, F)>]) -> Vec<(usize, usize, F)> {
    let mut seen = BTreeSet::new();
    let mut pairs = Vec::new();
    for (i, row) in lists.iter().enumerate() {
        for &(j, d) in row {
            let key = (i.min(j), i.max(j));
            if seen.insert(key) {
                pairs.push((key.0, key.1, d));
            }
        }
    }
    pairs.sort_by_key(|&(u, v, _)| (u, v));
    pairs
}

/// Symmetrized k-NN graph with unit weights over an exact weight type.
pub fn knn_unweighted<W: Exact, F: Real>(points: &[Vec<F>], k: usize) -> Result<WeightedGraph<W>> {
    let lists = nearest(points, k)?;
    WeightedGraph::from_edges(
        points.len(),
        union_pairs(&lists).into_iter().map(|(u, v, _)| (u, v, W::one())),
    )
}

/// Symmetrized k-NN graph. The weighted variant uses
/// `exp(−‖x_i − x_j‖² / 2σ²)` with `σ` from [`sigma_heuristic`]; otherwise
/// every edge has weight 1.
pub fn knn_graph<F: Real>(points: &[Vec<F>], k: usize, weighted: bool) -> Result<WeightedGraph<F>> {
    let lists = nearest(points, k)?;
    let pairs = union_pairs(&lists);
    if !weighted {
        return WeightedGraph::from_edges(points.len(), pairs.into_iter().map(|(u, v, _)| (u, v, F::one())));
    }
    let sigma = sigma_from_lists(&lists, k)?;
    let two = F::one() + F::one();
    let denom = two * sigma * sigma;
    WeightedGraph::from_edges(
        points.len(),
        pairs.into_iter().map(|(u, v, d2)| (u, v, (-d2 / denom).exp())),
    )
}

fn sigma_from_lists<F: Real>(lists: &[Vec<(usize, F)>], k: usize) -> Result<F> {
    let kth: Vec<F> = lists.iter().map(|row| row[k - 1].1.sqrt()).collect();
    sigma_from_kth_distances(&kth)
}

/// One third of the mean distance from each point to its k-th nearest
/// neighbor.
pub fn sigma_heuristic<F: Real>(points: &[Vec<F>], k: usize) -> Result<F> {
    sigma_from_lists(&nearest(points, k)?, k)
}

/// The bandwidth rule applied to precomputed k-th-neighbor distances.
pub fn sigma_from_kth_distances<F: Real>(distances: &[F]) -> Result<F> {
    if distances.is_empty() {
        return Err(Error::TooFewPoints { need: 1, got: 0 });
    }
    if distances.iter().any(|d| !d.is_finite() || *d < F::zero()) {
        return Err(Error::InvalidArgument(
            "distances must be finite and non-negative".into(),
        ));
    }
    let sum = distances.iter().fold(F::zero(), |a, &d| a + d);
    let three = F::from_u8(3).unwrap();
    let sigma = sum / F::from_usize(distances.len()).unwrap() / three;
    if sigma <= F::zero() {
        return Err(Error::DegenerateBandwidth);
    }
    Ok(sigma)
}
