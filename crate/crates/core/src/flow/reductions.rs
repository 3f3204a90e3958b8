//! Network constructions that turn constrained cut minimizations into
//! minimum s-t cuts.
//!
//! Every network built here numbers the structure's nodes `0..n`, puts the
//! source at `n` and the sink at `n + 1`, and appends auxiliary nodes after.

use num_rational::Ratio;
use num_traits::Zero;

use super::network::{min_st_cut, FlowNetwork, WarmFlow};
use crate::error::{Error, Result};
use crate::graph::{Hypergraph, WeightedGraph};
use crate::oracle::CutOracle;
use crate::scalar::Exact;
use crate::set::NodeSet;

/// A cut function that can be embedded in a flow network so that any s-t cut
/// pays `scale · Γ(sink side ∩ V)`.
pub trait CutStructure<W: Exact> {
    fn structure_nodes(&self) -> usize;

    fn attach(&self, net: &mut FlowNetwork<W>, scale: W) -> Result<()>;
}

fn scaled<W: Exact>(w: W, scale: W) -> Result<W> {
    w.checked_mul(&scale).ok_or(Error::Overflow("scaled capacity"))
}

impl<W: Exact> CutStructure<W> for WeightedGraph<W> {
    fn structure_nodes(&self) -> usize {
        self.node_count()
    }

    fn attach(&self, net: &mut FlowNetwork<W>, scale: W) -> Result<()> {
        for e in self.edges() {
            if e.weight.is_zero() {
                continue;
            }
            let c = scaled(e.weight, scale)?;
            net.add_arc(e.u, e.v, c)?;
            net.add_arc(e.v, e.u, c)?;
        }
        Ok(())
    }
}

impl<W: Exact> CutStructure<W> for Hypergraph<W> {
    fn structure_nodes(&self) -> usize {
        self.node_count()
    }

    fn attach(&self, net: &mut FlowNetwork<W>, scale: W) -> Result<()> {
        add_gadgets(self, net, scale).map(|_| ())
    }
}

/// Two auxiliary nodes per hyperedge joined by an arc of the edge's weight;
/// members feed the first and are fed by the second through infinite arcs.
fn add_gadgets<W: Exact>(h: &Hypergraph<W>, net: &mut FlowNetwork<W>, scale: W) -> Result<Vec<(usize, usize)>> {
    let mut gadgets = Vec::with_capacity(h.edges().len());
    for e in h.edges() {
        let entry = net.add_node();
        let exit = net.add_node();
        net.add_arc(entry, exit, scaled(e.weight, scale)?)?;
        for &v in e.members() {
            net.add_infinite_arc(v, entry)?;
            net.add_infinite_arc(exit, v)?;
        }
        gadgets.push((entry, exit));
    }
    Ok(gadgets)
}

impl<W: Exact> CutOracle<W> {
    /// The flow representation of graph and hypergraph cut oracles.
    pub fn flow_structure(&self) -> Option<&dyn CutStructure<W>> {
        match self {
            CutOracle::Graph(g) => Some(g),
            CutOracle::Hypergraph(h) => Some(h),
            CutOracle::Symmetrized(_) => None,
        }
    }
}

fn terminal_network<W: Exact>(n: usize) -> FlowNetwork<W> {
    FlowNetwork::new(n + 2, n, n + 1).expect("distinct terminals")
}

/// Flow network for a hypergraph alone, with terminals but no terminal arcs.
#[derive(Debug, Clone)]
pub struct HypergraphFlow<W> {
    pub network: FlowNetwork<W>,
    /// `(entry, exit)` auxiliary nodes of each hyperedge, in edge order.
    pub gadgets: Vec<(usize, usize)>,
}

pub fn hypergraph_flow<W: Exact>(h: &Hypergraph<W>) -> Result<HypergraphFlow<W>> {
    let mut network = terminal_network(h.node_count());
    let gadgets = add_gadgets(h, &mut network, W::one())?;
    Ok(HypergraphFlow { network, gadgets })
}

/// Network whose minimum cut equals `min_{T⊆V∖S} [d·Γ(T) − p·|T|] + p·|V∖S|`
/// for `λ = p/d`.
#[derive(Debug, Clone)]
pub struct StrengthNetwork<W> {
    pub network: FlowNetwork<W>,
    pub lambda: Ratio<W>,
    /// Nodes outside `S`.
    pub free: NodeSet,
}

pub fn strength_network<W: Exact>(
    structure: &dyn CutStructure<W>,
    s: &NodeSet,
    lambda: Ratio<W>,
) -> Result<StrengthNetwork<W>> {
    let n = structure.structure_nodes();
    s.check_universe(n)?;
    if lambda < Ratio::zero() {
        return Err(Error::InvalidArgument(format!("negative lambda {lambda}")));
    }
    let (p, d) = (*lambda.numer(), *lambda.denom());
    let mut network = terminal_network(n);
    let (source, sink) = (network.source(), network.sink());
    structure.attach(&mut network, d)?;
    for v in 0..n {
        if s.contains(v) {
            network.add_infinite_arc(source, v)?;
        } else if !p.is_zero() {
            network.add_arc(v, sink, p)?;
        }
    }
    Ok(StrengthNetwork {
        network,
        lambda,
        free: s.complement(),
    })
}

impl<W: Exact> StrengthNetwork<W> {
    /// Minimum of `Γ(T) − λ|T|` over `T ⊆ V∖S` and the largest minimizer.
    pub fn solve(&self) -> Result<(Ratio<W>, NodeSet)> {
        let cut = min_st_cut(&self.network)?;
        let p = *self.lambda.numer();
        let free = W::from_count(self.free.len()).ok_or(Error::Overflow("node count"))?;
        let offset = p.checked_mul(&free).ok_or(Error::Overflow("strength offset"))?;
        let shifted = cut.value - offset;
        let n = self.free.universe();
        let mut minimizer = NodeSet::empty(n);
        for v in self.free.iter() {
            if cut.sink_side.contains(v) {
                minimizer.insert(v);
            }
        }
        Ok((Ratio::new(shifted, *self.lambda.denom()), minimizer))
    }
}

/// `F_λ` at a set `S` that grows one node at a time, with one-node
/// extensions evaluated by re-augmenting the current maximum flow.
#[derive(Debug, Clone)]
pub struct StrengthSolver<W> {
    flow: WarmFlow<W>,
    lambda: Ratio<W>,
    /// `p·|V∖S₀|` for the set `S₀` the network was built for.
    offset: W,
    chosen: NodeSet,
}

impl<W: Exact> StrengthSolver<W> {
    pub fn new(structure: &dyn CutStructure<W>, s: &NodeSet, lambda: Ratio<W>) -> Result<Self> {
        let net = strength_network(structure, s, lambda)?;
        let free = W::from_count(net.free.len()).ok_or(Error::Overflow("node count"))?;
        let offset = lambda
            .numer()
            .checked_mul(&free)
            .ok_or(Error::Overflow("strength offset"))?;
        Ok(StrengthSolver {
            flow: WarmFlow::new(&net.network, s.universe())?,
            lambda,
            offset,
            chosen: s.clone(),
        })
    }

    pub fn chosen(&self) -> &NodeSet {
        &self.chosen
    }

    /// `F_λ(S)` and its largest minimizer.
    pub fn value(&self) -> (Ratio<W>, NodeSet) {
        let cut = self.flow.cut();
        // Seeded nodes keep their sink arcs, which the offset accounts for.
        let shifted = cut.value - self.offset;
        let mut minimizer = NodeSet::empty(self.chosen.universe());
        for v in self.chosen.complement().iter() {
            if cut.sink_side.contains(v) {
                minimizer.insert(v);
            }
        }
        (Ratio::new(shifted, *self.lambda.denom()), minimizer)
    }

    /// `F_λ(S ∪ {v})` and its largest minimizer, leaving `S` unchanged.
    pub fn extended(&self, v: usize) -> Result<(Ratio<W>, NodeSet)> {
        let mut next = self.clone();
        next.add(v)?;
        Ok(next.value())
    }

    pub fn add(&mut self, v: usize) -> Result<()> {
        self.flow.seed(v)?;
        self.chosen.insert(v);
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SeededCut<W> {
    pub value: W,
    /// The smallest minimizing `S` with `pos ⊆ S` and `S ∩ neg = ∅`.
    pub one_side: NodeSet,
}

/// `min Γ(S)` subject to `pos ⊆ S ⊆ V∖neg`.
pub fn seeded_min_cut<W: Exact>(structure: &dyn CutStructure<W>, pos: &NodeSet, neg: &NodeSet) -> Result<SeededCut<W>> {
    let n = structure.structure_nodes();
    pos.check_universe(n)?;
    neg.check_universe(n)?;
    if let Some(v) = pos.intersection(neg).iter().next() {
        return Err(Error::ContradictorySeeds(v));
    }
    let mut network = terminal_network(n);
    let (source, sink) = (network.source(), network.sink());
    structure.attach(&mut network, W::one())?;
    for v in pos.iter() {
        network.add_infinite_arc(source, v)?;
    }
    for v in neg.iter() {
        network.add_infinite_arc(v, sink)?;
    }
    let cut = min_st_cut(&network)?;
    let mut one_side = NodeSet::empty(n);
    for v in 0..n {
        if !cut.sink_side.contains(v) {
            one_side.insert(v);
        }
    }
    Ok(SeededCut {
        value: cut.value,
        one_side,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path4() -> WeightedGraph<i64> {
        WeightedGraph::from_edges(4, [(0, 1, 1), (1, 2, 1), (2, 3, 1)]).unwrap()
    }

    fn set(n: usize, s: &[usize]) -> NodeSet {
        NodeSet::from_indices(n, s.iter().copied()).unwrap()
    }

    #[test]
    fn strength_on_path() {
        let g = path4();
        let net = strength_network(&g, &set(4, &[0]), Ratio::new(1, 3)).unwrap();
        let (value, t) = net.solve().unwrap();
        assert_eq!(value, Ratio::from_integer(0));
        assert_eq!(t.to_vec(), vec![1, 2, 3]);

        let net = strength_network(&g, &set(4, &[0]), Ratio::new(1, 2)).unwrap();
        let (value, t) = net.solve().unwrap();
        assert_eq!(value, Ratio::new(-1, 2));
        assert_eq!(t.to_vec(), vec![1, 2, 3]);

        let net = strength_network(&g, &NodeSet::full(4), Ratio::new(5, 2)).unwrap();
        let (value, t) = net.solve().unwrap();
        assert_eq!(value, Ratio::from_integer(0));
        assert!(t.is_empty());
    }

    #[test]
    fn seeded_cut_on_path() {
        let g = path4();
        let cut = seeded_min_cut(&g, &set(4, &[1]), &set(4, &[2])).unwrap();
        assert_eq!(cut.value, 1);
        assert_eq!(cut.one_side.to_vec(), vec![0, 1]);

        let cut = seeded_min_cut(&g, &NodeSet::empty(4), &NodeSet::empty(4)).unwrap();
        assert_eq!(cut.value, 0);
        assert!(cut.one_side.is_empty());

        assert_eq!(
            seeded_min_cut(&g, &set(4, &[1, 2]), &set(4, &[2])),
            Err(Error::ContradictorySeeds(2))
        );
    }

    #[test]
    fn seeded_cut_on_two_triangles() {
        let g = WeightedGraph::from_edges(6, [(0, 1, 1i64), (1, 2, 1), (0, 2, 1), (3, 4, 1), (4, 5, 1), (3, 5, 1)])
            .unwrap();
        let cut = seeded_min_cut(&g, &set(6, &[1]), &set(6, &[4])).unwrap();
        assert_eq!(cut.value, 0);
        assert_eq!(cut.one_side.to_vec(), vec![0, 1, 2]);
    }

    #[test]
    fn hyperedge_seeded_cut() {
        let mut h = Hypergraph::new(3);
        h.add_edge(1i64, [0, 1, 2]).unwrap();
        let cut = seeded_min_cut(&h, &set(3, &[0]), &set(3, &[2])).unwrap();
        assert_eq!(cut.value, 1);
        assert_eq!(cut.one_side.to_vec(), vec![0]);

        let flow = hypergraph_flow(&h).unwrap();
        assert_eq!(flow.gadgets, vec![(5, 6)]);
        assert_eq!(flow.network.node_count(), 7);
    }

    #[test]
    fn solver_extensions_match_fresh_networks() {
        let g = WeightedGraph::from_edges(
            6,
            [
                (0, 1, 3i64),
                (1, 2, 1),
                (2, 3, 5),
                (3, 4, 1),
                (4, 5, 2),
                (5, 0, 1),
                (1, 4, 2),
            ],
        )
        .unwrap();
        let mut h = Hypergraph::new(6);
        h.add_edge(2i64, [0, 1, 2]).unwrap();
        h.add_edge(1, [2, 3, 4, 5]).unwrap();
        h.add_edge(3, [1, 5]).unwrap();
        let structures: [&dyn CutStructure<i64>; 2] = [&g, &h];
        for structure in structures {
            for lambda in [Ratio::new(1, 2), Ratio::new(5, 3), Ratio::from_integer(4)] {
                let mut solver = StrengthSolver::new(structure, &set(6, &[2]), lambda).unwrap();
                for v in [4, 0, 4, 5] {
                    let fresh = strength_network(structure, &solver.chosen().with(v), lambda)
                        .unwrap()
                        .solve()
                        .unwrap();
                    assert_eq!(solver.extended(v).unwrap(), fresh);
                    solver.add(v).unwrap();
                    assert_eq!(solver.value(), fresh);
                }
            }
        }
    }

    #[test]
    fn negative_lambda_rejected() {
        let g = path4();
        assert!(strength_network(&g, &NodeSet::empty(4), Ratio::new(-1, 2)).is_err());
    }
}
