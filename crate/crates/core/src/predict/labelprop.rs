//! Label propagation by the quadratic criterion
//!
//! ```text
//! C(f) = Σ_{i∈L} (f_i − y_i)² + μ Σ_{i<j} W_ij (f_i − f_j)² + μ ε Σ_i f_i²
//! ```
//!
//! solved per class indicator column by conjugate gradients with a diagonal
//! preconditioner on the optimality conditions `(S + μ(D − W) + μ ε I) f = S y`,
//! where `S` is the diagonal indicator of labeled nodes and `D` the weighted
//! degrees.

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::labeling::Labeling;
use crate::scalar::Real;
use crate::set::NodeSet;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LabelPropParams<F> {
    pub mu: F,
    pub eps: F,
    /// Iteration stops once every residual entry, both raw and divided by
    /// the matching diagonal entry, is below this.
    pub tol: F,
    pub max_iter: usize,
}

impl<F: Real> Default for LabelPropParams<F> {
    fn default() -> Self {
        LabelPropParams {
            mu: F::from_f64(1e-6).unwrap(),
            eps: F::from_f64(1e-6).unwrap(),
            tol: F::from_f64(1e-8).unwrap(),
            max_iter: 100_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Propagated<F> {
    pub scores: Vec<F>,
    pub iterations: usize,
    /// `max_i |((S + μL + μεI) f − S y)_i|` at the returned scores.
    pub residual: F,
}

/// Max-norm residual of the optimality conditions at `f`.
pub fn optimality_residual<F: Real>(
    g: &WeightedGraph<F>,
    targets: &[Option<F>],
    f: &[F],
    params: &LabelPropParams<F>,
) -> F {
    let adj = g.adjacency();
    let mut worst = F::zero();
    for i in 0..g.node_count() {
        let (s, y) = match targets[i] {
            Some(y) => (F::one(), y),
            None => (F::zero(), F::zero()),
        };
        let mut lf = F::zero();
        for &(j, w) in &adj[i] {
            lf = lf + w * (f[i] - f[j]);
        }
        let r = s * (f[i] - y) + params.mu * lf + params.mu * params.eps * f[i];
        worst = worst.max(r.abs());
    }
    worst
}

/// Minimizes the criterion for one column of targets.
pub fn propagate<F: Real>(
    g: &WeightedGraph<F>,
    targets: &[Option<F>],
    params: &LabelPropParams<F>,
) -> Result<Propagated<F>> {
    let n = g.node_count();
    if targets.len() != n {
        return Err(Error::UniverseMismatch {
            expected: n,
            found: targets.len(),
        });
    }
    if g.edges().iter().any(|e| !e.weight.is_finite()) {
        return Err(Error::InvalidArgument("non-finite edge weight".into()));
    }
    let adj = g.adjacency();
    let degrees = g.degrees();
    let ridge = params.mu * params.eps;
    let labeled = |i: usize| if targets[i].is_some() { F::one() } else { F::zero() };
    let diag: Vec<F> = (0..n).map(|i| labeled(i) + params.mu * degrees[i] + ridge).collect();
    let apply = |x: &[F]| -> Vec<F> {
        (0..n)
            .map(|i| {
                let mut pull = F::zero();
                for &(j, w) in &adj[i] {
                    pull = pull + w * x[j];
                }
                diag[i] * x[i] - params.mu * pull
            })
            .collect()
    };
    let b: Vec<F> = targets.iter().map(|t| t.unwrap_or_else(F::zero)).collect();
    let precondition = |r: &[F]| -> Vec<F> {
        r.iter()
            .zip(&diag)
            .map(|(&r, &d)| if d > F::zero() { r / d } else { F::zero() })
            .collect()
    };
    let dot = |a: &[F], b: &[F]| a.iter().zip(b).fold(F::zero(), |acc, (&x, &y)| acc + x * y);
    let converged = |r: &[F], z: &[F]| {
        r.iter()
            .zip(z)
            .all(|(r, z)| r.abs() < params.tol && z.abs() < params.tol)
    };
    let true_residual = |f: &[F]| -> Vec<F> { apply(f).iter().zip(&b).map(|(&a, &b)| b - a).collect() };

    let mut f = vec![F::zero(); n];
    let mut r = b.clone();
    let mut z = precondition(&r);
    let mut p = z.clone();
    let mut rz = dot(&r, &z);
    for iteration in 0..=params.max_iter {
        if converged(&r, &z) {
            // Confirm against the recomputed residual; restart if it drifted.
            r = true_residual(&f);
            z = precondition(&r);
            if converged(&r, &z) {
                let residual = optimality_residual(g, targets, &f, params);
                return Ok(Propagated {
                    scores: f,
                    iterations: iteration,
                    residual,
                });
            }
            p = z.clone();
            rz = dot(&r, &z);
        }
        if iteration == params.max_iter {
            break;
        }
        let ap = apply(&p);
        let curvature = dot(&p, &ap);
        if curvature.is_nan() || curvature <= F::zero() {
            break;
        }
        let alpha = rz / curvature;
        for i in 0..n {
            f[i] = f[i] + alpha * p[i];
            r[i] = r[i] - alpha * ap[i];
        }
        z = precondition(&r);
        let next = dot(&r, &z);
        let beta = next / rz;
        rz = next;
        for i in 0..n {
            p[i] = z[i] + beta * p[i];
        }
    }
    let residual = optimality_residual(g, targets, &f, params);
    Err(Error::Convergence {
        iterations: params.max_iter,
        residual: residual.to_f64().unwrap_or(f64::NAN),
    })
}

/// Rescales class column `c` by `proportions[c] / Σ_i scores[i][c]` and
/// returns the per-node argmax (ties to the lower class index).
pub fn class_mass_normalize<F: Real>(scores: &[Vec<F>], proportions: &[F]) -> Result<Vec<usize>> {
    let classes = proportions.len();
    if classes == 0 {
        return Err(Error::InvalidArgument("no classes".into()));
    }
    if proportions.iter().any(|&p| p < F::zero() || !p.is_finite()) {
        return Err(Error::InvalidArgument(
            "class proportions must be finite and non-negative".into(),
        ));
    }
    let total = proportions.iter().fold(F::zero(), |a, &p| a + p);
    let slack = F::from_f64(1e-9).unwrap();
    if (total - F::one()).abs() > slack {
        return Err(Error::InvalidArgument(format!(
            "class proportions sum to {total}, not 1"
        )));
    }
    let mut mass = vec![F::zero(); classes];
    for (i, row) in scores.iter().enumerate() {
        if row.len() != classes {
            return Err(Error::InvalidArgument(format!(
                "node {i} has {} class scores, expected {classes}",
                row.len()
            )));
        }
        for (c, &s) in row.iter().enumerate() {
            if s < F::zero() {
                return Err(Error::InvalidArgument(format!(
                    "negative score for node {i}, class {c}"
                )));
            }
            mass[c] = mass[c] + s;
        }
    }
    let mut scale = vec![F::zero(); classes];
    for c in 0..classes {
        if proportions[c] > F::zero() {
            if mass[c] <= F::zero() {
                return Err(Error::DegenerateNormalization(c));
            }
            scale[c] = proportions[c] / mass[c];
        }
    }
    Ok(scores
        .iter()
        .map(|row| {
            let mut best = 0;
            for c in 1..classes {
                if row[c] * scale[c] > row[best] * scale[best] {
                    best = c;
                }
            }
            best
        })
        .collect())
}

/// Binary label propagation with class mass normalization.
///
/// Each class gets an indicator column; the normalized argmax picks the
/// label. When every labeled node carries the same label, that label is
/// predicted everywhere; with no labeled nodes every node gets label 0.
pub fn label_prop_predict<F: Real>(
    g: &WeightedGraph<F>,
    l: &NodeSet,
    y_l: &Labeling,
    params: &LabelPropParams<F>,
) -> Result<Labeling> {
    let n = g.node_count();
    l.check_universe(n)?;
    if y_l.len() != n {
        return Err(Error::UniverseMismatch {
            expected: n,
            found: y_l.len(),
        });
    }
    if let Some(v) = l.difference(&y_l.defined()).iter().next() {
        return Err(Error::IncompleteLabeling(v));
    }
    if l.is_empty() {
        // Every score is zero; the argmax tie goes to class 0.
        return Ok(Labeling::constant(n, false));
    }
    let positives = l.iter().filter(|&i| y_l.get(i) == Some(true)).count();
    if positives == 0 || positives == l.len() {
        return Ok(Labeling::constant(n, positives > 0));
    }

    let mut columns = Vec::with_capacity(2);
    for class in [false, true] {
        let targets: Vec<Option<F>> = (0..n)
            .map(|i| {
                if l.contains(i) {
                    Some(if y_l.get(i) == Some(class) { F::one() } else { F::zero() })
                } else {
                    None
                }
            })
            .collect();
        columns.push(propagate(g, &targets, params)?.scores);
    }
    let labeled = F::from_usize(l.len()).unwrap();
    let p1 = F::from_usize(positives).unwrap() / labeled;
    let proportions = [F::one() - p1, p1];
    // The exact scores are non-negative; clip round-off from the solver.
    let clip = |x: F| x.max(F::zero());
    let scores: Vec<Vec<F>> = (0..n).map(|i| vec![clip(columns[0][i]), clip(columns[1][i])]).collect();
    let decisions = class_mass_normalize(&scores, &proportions)?;
    Ok(Labeling::total(decisions.into_iter().map(|c| c == 1).collect()))
}
