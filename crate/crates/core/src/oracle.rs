//! Symmetric submodular cut oracles Γ.
//!
//! Every oracle is normalized (`Γ(∅) = Γ(V) = 0`), symmetric and
//! submodular. Graph and hypergraph cuts additionally have a flow
//! representation, which the rest of the crate uses for exact polynomial
//! minimization; symmetrized generic functions fall back to exhaustive search.

use std::fmt;
use std::sync::Arc;

use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::{check_permutation, Hypergraph, WeightedGraph};
use crate::labeling::Labeling;
use crate::scalar::Exact;
use crate::set::NodeSet;

/// An arbitrary set function over a fixed universe.
pub trait SetFunction<W>: Send + Sync {
    fn eval(&self, s: &NodeSet) -> W;
}

impl<W, F> SetFunction<W> for F
where
    F: Fn(&NodeSet) -> W + Send + Sync,
{
    fn eval(&self, s: &NodeSet) -> W {
        self(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OracleKind {
    GraphCut,
    HypergraphCut,
    SymmetrizedGeneric,
}

/// `Γ(S) = F(S) + F(V∖S) − F(V)` for a user-supplied submodular `F`.
#[derive(Clone)]
pub struct Symmetrized<W> {
    n: usize,
    f: Arc<dyn SetFunction<W>>,
    f_full: W,
}

impl<W: Exact> Symmetrized<W> {
    fn eval(&self, s: &NodeSet) -> W {
        self.f.eval(s) + self.f.eval(&s.complement()) - self.f_full
    }
}

impl<W: fmt::Debug> fmt::Debug for Symmetrized<W> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Symmetrized")
            .field("n", &self.n)
            .field("f_full", &self.f_full)
            .finish_non_exhaustive()
    }
}

#[derive(Debug, Clone)]
pub enum CutOracle<W> {
    Graph(WeightedGraph<W>),
    Hypergraph(Hypergraph<W>),
    Symmetrized(Symmetrized<W>),
}

impl<W: Exact> CutOracle<W> {
    pub fn universe(&self) -> usize {
        match self {
            CutOracle::Graph(g) => g.node_count(),
            CutOracle::Hypergraph(h) => h.node_count(),
            CutOracle::Symmetrized(s) => s.n,
        }
    }

    pub fn kind(&self) -> OracleKind {
        match self {
            CutOracle::Graph(_) => OracleKind::GraphCut,
            CutOracle::Hypergraph(_) => OracleKind::HypergraphCut,
            CutOracle::Symmetrized(_) => OracleKind::SymmetrizedGeneric,
        }
    }

    /// True when minimizations over this oracle reduce to max-flow.
    pub fn has_flow_form(&self) -> bool {
        !matches!(self, CutOracle::Symmetrized(_))
    }

    pub fn eval(&self, s: &NodeSet) -> Result<W> {
        match self {
            CutOracle::Graph(g) => g.cut(s),
            CutOracle::Hypergraph(h) => h.cut(s),
            CutOracle::Symmetrized(f) => {
                s.check_universe(f.n)?;
                Ok(f.eval(s))
            }
        }
    }

    /// The same function with node `i` renamed `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        Ok(match self {
            CutOracle::Graph(g) => CutOracle::Graph(g.permuted(perm)?),
            CutOracle::Hypergraph(h) => CutOracle::Hypergraph(h.permuted(perm)?),
            CutOracle::Symmetrized(f) => {
                check_permutation(perm, f.n)?;
                let mut inverse = vec![0; f.n];
                for (i, &p) in perm.iter().enumerate() {
                    inverse[p] = i;
                }
                let inner = Arc::clone(&f.f);
                let n = f.n;
                let renamed = move |s: &NodeSet| {
                    let mut original = NodeSet::empty(n);
                    for v in s.iter() {
                        original.insert(inverse[v]);
                    }
                    inner.eval(&original)
                };
                CutOracle::Symmetrized(Symmetrized {
                    n,
                    f: Arc::new(renamed),
                    f_full: f.f_full,
                })
            }
        })
    }

    /// `Γ(T∖{v}) − Γ(T)` for every `v ∈ T`; zero elsewhere.
    pub(crate) fn removal_deltas(&self, t: &NodeSet) -> Result<Vec<W>> {
        let n = self.universe();
        t.check_universe(n)?;
        let mut delta = vec![W::zero(); n];
        match self {
            CutOracle::Graph(g) => {
                for e in g.edges() {
                    match (t.contains(e.u), t.contains(e.v)) {
                        (true, true) => {
                            delta[e.u] = delta[e.u] + e.weight;
                            delta[e.v] = delta[e.v] + e.weight;
                        }
                        (true, false) => delta[e.u] = delta[e.u] - e.weight,
                        (false, true) => delta[e.v] = delta[e.v] - e.weight,
                        (false, false) => {}
                    }
                }
            }
            CutOracle::Hypergraph(h) => {
                for e in h.edges() {
                    let inside = e.members().iter().filter(|&&v| t.contains(v)).count();
                    let after = if inside >= 2 { e.weight } else { W::zero() };
                    let before = if inside < e.members().len() {
                        e.weight
                    } else {
                        W::zero()
                    };
                    for &v in e.members().iter().filter(|&&v| t.contains(v)) {
                        delta[v] = delta[v] + after - before;
                    }
                }
            }
            CutOracle::Symmetrized(_) => {
                let base = self.eval(t)?;
                for v in t.iter() {
                    let mut without = t.clone();
                    without.remove(v);
                    delta[v] = self.eval(&without)? - base;
                }
            }
        }
        Ok(delta)
    }

    /// `Γ({v})` for every node.
    pub fn singleton_values(&self) -> Result<Vec<W>> {
        let n = self.universe();
        (0..n).map(|v| self.eval(&NodeSet::from_indices(n, [v])?)).collect()
    }
}

impl<W> From<WeightedGraph<W>> for CutOracle<W> {
    fn from(g: WeightedGraph<W>) -> Self {
        CutOracle::Graph(g)
    }
}

impl<W> From<Hypergraph<W>> for CutOracle<W> {
    fn from(h: Hypergraph<W>) -> Self {
        CutOracle::Hypergraph(h)
    }
}

/// Turns a submodular `f` over `0..n` into a symmetric normalized oracle.
///
/// `f_full` must equal `f(V)`. The result is probed on `∅`, `V` and every
/// singleton and co-singleton: a nonzero value at `∅` or `V` or a negative
/// value anywhere rejects `f`. Feeding an already symmetric normalized `f`
/// yields `2f`.
pub fn symmetrize<W, F>(n: usize, f: F, f_full: W) -> Result<CutOracle<W>>
where
    W: Exact,
    F: SetFunction<W> + 'static,
{
    let oracle = Symmetrized {
        n,
        f: Arc::new(f),
        f_full,
    };
    let full = NodeSet::full(n);
    if oracle.f.eval(&full) != f_full {
        return Err(Error::InvalidOracle(format!(
            "supplied f(V) = {f_full} but f evaluates to {} on V",
            oracle.f.eval(&full)
        )));
    }
    let empty_value = oracle.eval(&NodeSet::empty(n));
    if !empty_value.is_zero() {
        return Err(Error::InvalidOracle(format!(
            "symmetrized value at the empty set is {empty_value}, expected 0 (is f normalized?)"
        )));
    }
    for v in 0..n {
        let single = NodeSet::from_indices(n, [v])?;
        let value = oracle.eval(&single);
        if value < W::zero() {
            return Err(Error::InvalidOracle(format!(
                "negative value {value} on {{{v}}}; f is not submodular"
            )));
        }
    }
    Ok(CutOracle::Symmetrized(oracle))
}

/// `Φ(y) = Γ(V_{y=1})`.
pub fn phi<W: Exact>(oracle: &CutOracle<W>, y: &Labeling) -> Result<W> {
    if y.len() != oracle.universe() {
        return Err(Error::UniverseMismatch {
            expected: oracle.universe(),
            found: y.len(),
        });
    }
    oracle.eval(&y.ones()?)
}

fn random_subset<R: Rng + ?Sized>(n: usize, rng: &mut R) -> NodeSet {
    let mut s = NodeSet::empty(n);
    for i in 0..n {
        if rng.gen_bool(0.5) {
            s.insert(i);
        }
    }
    s
}

/// Samples pairs `(A, B)` and returns the first one violating
/// `Γ(A) + Γ(B) ≥ Γ(A∪B) + Γ(A∩B)`, if any.
pub fn find_submodularity_violation<W: Exact, R: Rng + ?Sized>(
    oracle: &CutOracle<W>,
    samples: usize,
    rng: &mut R,
) -> Result<Option<(NodeSet, NodeSet)>> {
    let n = oracle.universe();
    for _ in 0..samples {
        let a = random_subset(n, rng);
        let b = random_subset(n, rng);
        let lhs = oracle.eval(&a)? + oracle.eval(&b)?;
        let rhs = oracle.eval(&a.union(&b))? + oracle.eval(&a.intersection(&b))?;
        if lhs < rhs {
            return Ok(Some((a, b)));
        }
    }
    Ok(None)
}

/// Samples sets and returns the first one where symmetry, non-negativity or
/// normalization fails.
pub fn find_symmetry_violation<W: Exact, R: Rng + ?Sized>(
    oracle: &CutOracle<W>,
    samples: usize,
    rng: &mut R,
) -> Result<Option<NodeSet>> {
    let n = oracle.universe();
    for extreme in [NodeSet::empty(n), NodeSet::full(n)] {
        if !oracle.eval(&extreme)?.is_zero() {
            return Ok(Some(extreme));
        }
    }
    for _ in 0..samples {
        let s = random_subset(n, rng);
        let v = oracle.eval(&s)?;
        if v < W::zero() || v != oracle.eval(&s.complement())? {
            return Ok(Some(s));
        }
    }
    Ok(None)
}
