//! Undirected weighted graphs and hypergraphs over the node universe `0..n`.

use std::collections::HashMap;
use std::ops::Add;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::set::NodeSet;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge<W> {
    pub u: usize,
    pub v: usize,
    pub weight: W,
}

/// Undirected graph with at most one stored edge per unordered pair.
///
/// Adding a second edge between the same pair merges it into the first by
/// summing weights.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedGraph<W> {
    n: usize,
    edges: Vec<Edge<W>>,
    index: HashMap<(usize, usize), usize>,
}

impl<W> WeightedGraph<W>
where
    W: Copy + Zero + PartialOrd + Add<Output = W>,
{
    pub fn new(n: usize) -> Self {
        WeightedGraph {
            n,
            edges: Vec::new(),
            index: HashMap::new(),
        }
    }

    pub fn from_edges<I: IntoIterator<Item = (usize, usize, W)>>(n: usize, edges: I) -> Result<Self> {
        let mut g = WeightedGraph::new(n);
        for (u, v, w) in edges {
            g.add_edge(u, v, w)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: usize, v: usize, weight: W) -> Result<()> {
        for i in [u, v] {
            if i >= self.n {
                return Err(Error::IndexOutOfRange { index: i, n: self.n });
            }
        }
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        if weight < W::zero() {
            return Err(Error::NegativeWeight);
        }
        let key = (u.min(v), u.max(v));
        match self.index.get(&key) {
            Some(&at) => {
                let e = &mut self.edges[at];
                e.weight = e.weight + weight;
            }
            None => {
                self.index.insert(key, self.edges.len());
                self.edges.push(Edge {
                    u: key.0,
                    v: key.1,
                    weight,
                });
            }
        }
        Ok(())
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Edge<W>] {
        &self.edges
    }

    pub fn weight(&self, u: usize, v: usize) -> W {
        self.index
            .get(&(u.min(v), u.max(v)))
            .map(|&i| self.edges[i].weight)
            .unwrap_or_else(W::zero)
    }

    /// Weighted degree of every node.
    pub fn degrees(&self) -> Vec<W> {
        let mut d = vec![W::zero(); self.n];
        for e in &self.edges {
            d[e.u] = d[e.u] + e.weight;
            d[e.v] = d[e.v] + e.weight;
        }
        d
    }

    /// Adjacency lists `(neighbor, weight)`.
    pub fn adjacency(&self) -> Vec<Vec<(usize, W)>> {
        let mut adj = vec![Vec::new(); self.n];
        for e in &self.edges {
            adj[e.u].push((e.v, e.weight));
            adj[e.v].push((e.u, e.weight));
        }
        adj
    }

    /// Same structure with every weight passed through `f`.
    pub fn map_weights<V, F>(&self, mut f: F) -> WeightedGraph<V>
    where
        F: FnMut(W) -> V,
    {
        WeightedGraph {
            n: self.n,
            edges: self
                .edges
                .iter()
                .map(|e| Edge {
                    u: e.u,
                    v: e.v,
                    weight: f(e.weight),
                })
                .collect(),
            index: self.index.clone(),
        }
    }

    /// Relabels node `i` as `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        check_permutation(perm, self.n)?;
        WeightedGraph::from_edges(self.n, self.edges.iter().map(|e| (perm[e.u], perm[e.v], e.weight)))
    }

    /// Total weight of edges with exactly one endpoint in `s`.
    pub fn cut(&self, s: &NodeSet) -> Result<W> {
        s.check_universe(self.n)?;
        Ok(self
            .edges
            .iter()
            .filter(|e| s.contains(e.u) != s.contains(e.v))
            .fold(W::zero(), |acc, e| acc + e.weight))
    }
}

/// Hyperedge: a weight and a sorted, duplicate-free member list.
#[derive(Debug, Clone, PartialEq)]
pub struct Hyperedge<W> {
    pub weight: W,
    members: Vec<usize>,
}

impl<W> Hyperedge<W> {
    pub fn members(&self) -> &[usize] {
        &self.members
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Hypergraph<W> {
    n: usize,
    edges: Vec<Hyperedge<W>>,
}

impl<W> Hypergraph<W>
where
    W: Copy + Zero + PartialOrd + Add<Output = W>,
{
    pub fn new(n: usize) -> Self {
        Hypergraph { n, edges: Vec::new() }
    }

    pub fn add_edge<I: IntoIterator<Item = usize>>(&mut self, weight: W, members: I) -> Result<()> {
        if weight < W::zero() {
            return Err(Error::NegativeWeight);
        }
        let mut members: Vec<usize> = members.into_iter().collect();
        if let Some(&bad) = members.iter().find(|&&v| v >= self.n) {
            return Err(Error::IndexOutOfRange { index: bad, n: self.n });
        }
        members.sort_unstable();
        members.dedup();
        if members.is_empty() {
            return Err(Error::EmptyHyperedge(self.edges.len()));
        }
        self.edges.push(Hyperedge { weight, members });
        Ok(())
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Hyperedge<W>] {
        &self.edges
    }

    /// Total weight of hyperedges with members on both sides of `s`.
    pub fn cut(&self, s: &NodeSet) -> Result<W> {
        s.check_universe(self.n)?;
        Ok(self
            .edges
            .iter()
            .filter(|e| {
                let inside = e.members.iter().filter(|&&v| s.contains(v)).count();
                inside > 0 && inside < e.members.len()
            })
            .fold(W::zero(), |acc, e| acc + e.weight))
    }

    /// Relabels node `i` as `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        check_permutation(perm, self.n)?;
        let mut h = Hypergraph::new(self.n);
        for e in &self.edges {
            h.add_edge(e.weight, e.members.iter().map(|&v| perm[v]))?;
        }
        Ok(h)
    }

    /// Number of member incidences summed over all hyperedges.
    pub fn incidence_count(&self) -> usize {
        self.edges.iter().map(|e| e.members.len()).sum()
    }
}

impl<W> From<&WeightedGraph<W>> for Hypergraph<W>
where
    W: Copy + Zero + PartialOrd + Add<Output = W> + One,
{
    /// One 2-member hyperedge per graph edge.
    fn from(g: &WeightedGraph<W>) -> Self {
        Hypergraph {
            n: g.n,
            edges: g
                .edges
                .iter()
                .map(|e| Hyperedge {
                    weight: e.weight,
                    members: vec![e.u, e.v],
                })
                .collect(),
        }
    }
}

/// `Σ_{i∈s, j∉s} W_ij`.
pub fn graph_cut<W>(g: &WeightedGraph<W>, s: &NodeSet) -> Result<W>
where
    W: Copy + Zero + PartialOrd + Add<Output = W>,
{
    g.cut(s)
}

pub fn hypergraph_cut<W>(h: &Hypergraph<W>, s: &NodeSet) -> Result<W>
where
    W: Copy + Zero + PartialOrd + Add<Output = W>,
{
    h.cut(s)
}

/// Fails unless `perm` is a permutation of `0..n`.
pub fn check_permutation(perm: &[usize], n: usize) -> Result<()> {
    if perm.len() != n {
        return Err(Error::InvalidArgument(format!(
            "permutation of length {} for {n} nodes",
            perm.len()
        )));
    }
    let mut seen = vec![false; n];
    for &p in perm {
        if p >= n || std::mem::replace(&mut seen[p], true) {
            return Err(Error::InvalidArgument(format!(
                "not a permutation: image {p} repeated or out of range"
            )));
        }
    }
    Ok(())
}
