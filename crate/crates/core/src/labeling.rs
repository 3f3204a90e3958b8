use crate::error::{Error, Result};
use crate::set::NodeSet;

/// Binary labels in `{0, 1}` over `0..n`, possibly defined on only some nodes.
///
/// `true` stands for label 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Labeling {
    values: Vec<Option<bool>>,
}

impl Labeling {
    pub fn total(values: Vec<bool>) -> Self {
        Labeling {
            values: values.into_iter().map(Some).collect(),
        }
    }

    pub fn from_bits(bits: &[u8]) -> Result<Self> {
        bits.iter()
            .enumerate()
            .map(|(i, &b)| match b {
                0 => Ok(false),
                1 => Ok(true),
                _ => Err(Error::InvalidArgument(format!("label {b} on node {i} is not 0 or 1"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Labeling::total)
    }

    pub fn undefined(n: usize) -> Self {
        Labeling { values: vec![None; n] }
    }

    pub fn constant(n: usize, label: bool) -> Self {
        Labeling::total(vec![label; n])
    }

    /// Label 1 on `ones`, label 0 elsewhere.
    pub fn indicator(ones: &NodeSet) -> Self {
        Labeling::total((0..ones.universe()).map(|i| ones.contains(i)).collect())
    }

    pub fn partial<I: IntoIterator<Item = (usize, bool)>>(n: usize, pairs: I) -> Result<Self> {
        let mut l = Labeling::undefined(n);
        for (i, y) in pairs {
            l.set(i, y)?;
        }
        Ok(l)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, i: usize) -> Option<bool> {
        self.values.get(i).copied().flatten()
    }

    pub fn set(&mut self, i: usize, y: bool) -> Result<()> {
        let n = self.values.len();
        let slot = self.values.get_mut(i).ok_or(Error::IndexOutOfRange { index: i, n })?;
        *slot = Some(y);
        Ok(())
    }

    pub fn is_total(&self) -> bool {
        self.values.iter().all(Option::is_some)
    }

    pub fn defined(&self) -> NodeSet {
        let mut s = NodeSet::empty(self.len());
        for (i, v) in self.values.iter().enumerate() {
            if v.is_some() {
                s.insert(i);
            }
        }
        s
    }

    /// Nodes carrying label `y`.
    pub fn with_label(&self, y: bool) -> NodeSet {
        let mut s = NodeSet::empty(self.len());
        for (i, v) in self.values.iter().enumerate() {
            if *v == Some(y) {
                s.insert(i);
            }
        }
        s
    }

    /// `V_{y=1}`; errors on a partial labeling.
    pub fn ones(&self) -> Result<NodeSet> {
        self.require_total()?;
        Ok(self.with_label(true))
    }

    pub fn require_total(&self) -> Result<()> {
        match self.values.iter().position(Option::is_none) {
            Some(i) => Err(Error::IncompleteLabeling(i)),
            None => Ok(()),
        }
    }

    pub fn flip(&self) -> Labeling {
        Labeling {
            values: self.values.iter().map(|v| v.map(|b| !b)).collect(),
        }
    }

    /// Keeps labels on `keep` only.
    pub fn restrict(&self, keep: &NodeSet) -> Labeling {
        Labeling {
            values: self
                .values
                .iter()
                .enumerate()
                .map(|(i, v)| if keep.contains(i) { *v } else { None })
                .collect(),
        }
    }

    /// `‖y − y′‖²` for total labelings: the number of nodes where they differ.
    pub fn disagreements(&self, other: &Labeling) -> Result<usize> {
        if self.len() != other.len() {
            return Err(Error::UniverseMismatch {
                expected: self.len(),
                found: other.len(),
            });
        }
        self.require_total()?;
        other.require_total()?;
        Ok(self.values.iter().zip(&other.values).filter(|(a, b)| a != b).count())
    }

    /// Nodes of `among` where both labelings are defined and equal.
    pub fn agreement(&self, other: &Labeling, among: &NodeSet) -> NodeSet {
        let mut s = NodeSet::empty(self.len());
        for i in among.iter() {
            if self.get(i).is_some() && self.get(i) == other.get(i) {
                s.insert(i);
            }
        }
        s
    }

    pub fn iter(&self) -> impl Iterator<Item = Option<bool>> + '_ {
        self.values.iter().copied()
    }
}
