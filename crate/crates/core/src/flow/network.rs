use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scalar::Exact;
use crate::set::NodeSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Capacity<W> {
    Finite(W),
    /// Resolved at solve time to `1 + Σ finite capacities`.
    Infinite,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FlowArc<W> {
    pub from: usize,
    pub to: usize,
    pub capacity: Capacity<W>,
}

/// Directed network with a distinguished source and sink.
#[derive(Debug, Clone, PartialEq)]
pub struct FlowNetwork<W> {
    node_count: usize,
    arcs: Vec<FlowArc<W>>,
    source: usize,
    sink: usize,
}

/// A minimum s-t cut. `sink_side` holds every node not reachable from the
/// source in the final residual network, so it is the largest sink side
/// among all minimum cuts and its complement the smallest source side.
#[derive(Debug, Clone, PartialEq)]
pub struct MinCut<W> {
    pub value: W,
    pub sink_side: NodeSet,
}

impl<W> MinCut<W> {
    pub fn source_side(&self) -> NodeSet {
        self.sink_side.complement()
    }
}

impl<W: Exact> FlowNetwork<W> {
    pub fn new(node_count: usize, source: usize, sink: usize) -> Result<Self> {
        for t in [source, sink] {
            if t >= node_count {
                return Err(Error::IndexOutOfRange {
                    index: t,
                    n: node_count,
                });
            }
        }
        if source == sink {
            return Err(Error::SourceIsSink);
        }
        Ok(FlowNetwork {
            node_count,
            arcs: Vec::new(),
            source,
            sink,
        })
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn sink(&self) -> usize {
        self.sink
    }

    pub fn arcs(&self) -> &[FlowArc<W>] {
        &self.arcs
    }

    pub fn add_node(&mut self) -> usize {
        self.node_count += 1;
        self.node_count - 1
    }

    fn push_arc(&mut self, from: usize, to: usize, capacity: Capacity<W>) -> Result<()> {
        for i in [from, to] {
            if i >= self.node_count {
                return Err(Error::IndexOutOfRange {
                    index: i,
                    n: self.node_count,
                });
            }
        }
        self.arcs.push(FlowArc { from, to, capacity });
        Ok(())
    }

    pub fn add_arc(&mut self, from: usize, to: usize, capacity: W) -> Result<()> {
        if capacity < W::zero() {
            return Err(Error::NegativeWeight);
        }
        self.push_arc(from, to, Capacity::Finite(capacity))
    }

    pub fn add_infinite_arc(&mut self, from: usize, to: usize) -> Result<()> {
        self.push_arc(from, to, Capacity::Infinite)
    }

    /// `1 + Σ finite capacities`; larger than any cut made of finite arcs.
    pub fn infinite_capacity(&self) -> Result<W> {
        self.arcs
            .iter()
            .filter_map(|a| match a.capacity {
                Capacity::Finite(c) => Some(c),
                Capacity::Infinite => None,
            })
            .try_fold(W::one(), |acc, c| acc.checked_add(&c))
            .ok_or(Error::Overflow("infinite capacity"))
    }

    /// Capacity of the arcs leaving `source_side`, with infinite arcs at
    /// their resolved value.
    pub fn cut_value(&self, source_side: &NodeSet) -> Result<W> {
        source_side.check_universe(self.node_count)?;
        let inf = self.infinite_capacity()?;
        self.arcs
            .iter()
            .filter(|a| source_side.contains(a.from) && !source_side.contains(a.to))
            .map(|a| match a.capacity {
                Capacity::Finite(c) => c,
                Capacity::Infinite => inf,
            })
            .try_fold(W::zero(), |acc, c| acc.checked_add(&c))
            .ok_or(Error::Overflow("cut value"))
    }
}

/// Residual arcs grouped by tail: the arcs leaving `v` are
/// `start[v]..start[v + 1]`, and `rev[e]` is the opposite arc of `e`.
#[derive(Debug)]
struct Topology {
    start: Vec<u32>,
    head: Vec<u32>,
    rev: Vec<u32>,
}

impl Topology {
    fn nodes(&self) -> usize {
        self.start.len() - 1
    }

    fn arcs(&self, v: usize) -> std::ops::Range<usize> {
        self.start[v] as usize..self.start[v + 1] as usize
    }
}

/// Residual graph for Dinic's blocking-flow algorithm. Cloning copies only
/// the capacities.
#[derive(Debug, Clone)]
struct Residual<W> {
    topology: Arc<Topology>,
    cap: Vec<W>,
}

fn index_u32(i: usize) -> Result<u32> {
    u32::try_from(i).map_err(|_| Error::Overflow("network size"))
}

impl<W: Exact> Residual<W> {
    /// Builds the residual graph of `net` plus `extra` source arcs of zero
    /// capacity, whose residual indices are returned in order.
    fn build(net: &FlowNetwork<W>, extra: &[usize]) -> Result<(Self, Vec<usize>)> {
        let inf = net.infinite_capacity()?;
        let n = net.node_count;
        let arcs: Vec<(usize, usize, W)> = net
            .arcs
            .iter()
            .map(|a| {
                let c = match a.capacity {
                    Capacity::Finite(c) => c,
                    Capacity::Infinite => inf,
                };
                (a.from, a.to, c)
            })
            .chain(extra.iter().map(|&v| (net.source, v, W::zero())))
            .collect();
        index_u32(2 * arcs.len())?;
        index_u32(n)?;

        let mut start = vec![0u32; n + 1];
        for &(from, to, _) in &arcs {
            start[from + 1] += 1;
            start[to + 1] += 1;
        }
        for v in 0..n {
            start[v + 1] += start[v];
        }
        let total = 2 * arcs.len();
        let mut cursor: Vec<usize> = start[..n].iter().map(|&x| x as usize).collect();
        let mut head = vec![0u32; total];
        let mut rev = vec![0u32; total];
        let mut cap = vec![W::zero(); total];
        let mut positions = Vec::with_capacity(arcs.len());
        for &(from, to, c) in &arcs {
            let forward = cursor[from];
            cursor[from] += 1;
            let backward = cursor[to];
            cursor[to] += 1;
            head[forward] = to as u32;
            head[backward] = from as u32;
            rev[forward] = backward as u32;
            rev[backward] = forward as u32;
            cap[forward] = c;
            positions.push(forward);
        }
        let handles = positions.split_off(net.arcs.len());
        let topology = Arc::new(Topology { start, head, rev });
        Ok((Residual { topology, cap }, handles))
    }

    /// Augments to a maximum flow and returns the amount added.
    fn saturate(&mut self, s: usize, t: usize) -> Result<W> {
        let mut value = W::zero();
        loop {
            let level = self.levels(s, Some(t));
            if level[t] == u32::MAX {
                return Ok(value);
            }
            let pushed = self.blocking_flow(s, t, &level)?;
            value = value.checked_add(&pushed).ok_or(Error::Overflow("flow value"))?;
        }
    }

    /// Nodes not reachable from `s` with positive residual capacity.
    fn unreachable(&self, s: usize) -> NodeSet {
        let level = self.levels(s, None);
        let mut sink_side = NodeSet::full(level.len());
        for (v, &l) in level.iter().enumerate() {
            if l != u32::MAX {
                sink_side.remove(v);
            }
        }
        sink_side
    }

    /// BFS distances from `s` over arcs with residual capacity. With a
    /// target, nodes at or beyond its distance are not expanded.
    fn levels(&self, s: usize, target: Option<usize>) -> Vec<u32> {
        let topology = &*self.topology;
        let mut level = vec![u32::MAX; topology.nodes()];
        level[s] = 0;
        let mut queue = Vec::with_capacity(topology.nodes());
        queue.push(s as u32);
        let mut front = 0;
        while front < queue.len() {
            let v = queue[front] as usize;
            front += 1;
            if target.is_some_and(|t| level[v] >= level[t]) {
                break;
            }
            for e in topology.arcs(v) {
                let w = topology.head[e] as usize;
                if level[w] == u32::MAX && self.cap[e] > W::zero() {
                    level[w] = level[v] + 1;
                    queue.push(w as u32);
                }
            }
        }
        level
    }

    fn blocking_flow(&mut self, s: usize, t: usize, level: &[u32]) -> Result<W> {
        let topology = Arc::clone(&self.topology);
        let n = topology.nodes();
        let mut next: Vec<usize> = topology.start[..n].iter().map(|&x| x as usize).collect();
        let mut dead = vec![false; n];
        let mut path: Vec<usize> = Vec::new();
        let mut total = W::zero();
        let mut v = s;
        loop {
            if v == t {
                let bottleneck = path.iter().map(|&e| self.cap[e]).min().expect("nonempty path");
                let mut first_saturated = None;
                for (i, &e) in path.iter().enumerate() {
                    let back = topology.rev[e] as usize;
                    self.cap[e] = self.cap[e] - bottleneck;
                    self.cap[back] = self.cap[back] + bottleneck;
                    if first_saturated.is_none() && self.cap[e].is_zero() {
                        first_saturated = Some(i);
                    }
                }
                total = total.checked_add(&bottleneck).ok_or(Error::Overflow("flow value"))?;
                let cut_at = first_saturated.expect("bottleneck arc saturates");
                path.truncate(cut_at);
                v = path.last().map_or(s, |&e| topology.head[e] as usize);
                continue;
            }
            let end = topology.start[v + 1] as usize;
            let mut advanced = false;
            while next[v] < end {
                let e = next[v];
                let w = topology.head[e] as usize;
                if !dead[w] && level[w] == level[v].wrapping_add(1) && self.cap[e] > W::zero() {
                    path.push(e);
                    v = w;
                    advanced = true;
                    break;
                }
                next[v] += 1;
            }
            if !advanced {
                if v == s {
                    return Ok(total);
                }
                dead[v] = true;
                let e = path.pop().expect("retreat from non-source node");
                v = topology.head[topology.rev[e] as usize] as usize;
                next[v] += 1;
            }
        }
    }
}

/// Exact maximum flow / minimum s-t cut.
pub fn min_st_cut<W: Exact>(net: &FlowNetwork<W>) -> Result<MinCut<W>> {
    let (mut residual, _) = Residual::build(net, &[])?;
    let value = residual.saturate(net.source, net.sink)?;
    Ok(MinCut {
        value,
        sink_side: residual.unreachable(net.source),
    })
}

/// A maximum flow kept in residual form, so that infinite source arcs to
/// chosen nodes can be added later and the flow re-augmented instead of
/// recomputed. Clones share the arc structure.
#[derive(Debug, Clone)]
pub struct WarmFlow<W> {
    residual: Residual<W>,
    /// Residual index of the dormant source arc of each seedable node.
    seed_arcs: Vec<usize>,
    infinite: W,
    value: W,
    source: usize,
    sink: usize,
}

impl<W: Exact> WarmFlow<W> {
    /// Maximum flow of `net`, with nodes `0..seedable` open to seeding.
    pub fn new(net: &FlowNetwork<W>, seedable: usize) -> Result<Self> {
        let nodes: Vec<usize> = (0..seedable).collect();
        for &v in &nodes {
            if v >= net.node_count {
                return Err(Error::IndexOutOfRange {
                    index: v,
                    n: net.node_count,
                });
            }
        }
        let (mut residual, seed_arcs) = Residual::build(net, &nodes)?;
        let value = residual.saturate(net.source, net.sink)?;
        Ok(WarmFlow {
            residual,
            seed_arcs,
            infinite: net.infinite_capacity()?,
            value,
            source: net.source,
            sink: net.sink,
        })
    }

    /// Adds an infinite arc from the source to `v` and restores maximality.
    pub fn seed(&mut self, v: usize) -> Result<()> {
        let arc = *self.seed_arcs.get(v).ok_or(Error::IndexOutOfRange {
            index: v,
            n: self.seed_arcs.len(),
        })?;
        // A dormant arc has no residual capacity in either direction.
        let back = self.residual.topology.rev[arc] as usize;
        if self.residual.cap[back].is_zero() && self.residual.cap[arc].is_zero() {
            self.residual.cap[arc] = self.infinite;
        }
        let added = self.residual.saturate(self.source, self.sink)?;
        self.value = self.value.checked_add(&added).ok_or(Error::Overflow("flow value"))?;
        Ok(())
    }

    pub fn cut(&self) -> MinCut<W> {
        MinCut {
            value: self.value,
            sink_side: self.residual.unreachable(self.source),
        }
    }
}
