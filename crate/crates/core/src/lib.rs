//! Offline active semi-supervised learning on graphs and hypergraphs.
//!
//! Given a symmetric submodular cut function `Γ` (graph cut, hypergraph cut,
//! or a symmetrized submodular function), the crate
//!
//! * computes the strength `Ψ(S) = min_{∅≠T⊆V∖S} Γ(T)/|T|` exactly,
//! * selects label sets with large `Ψ` by greedy submodular set cover,
//! * predicts the remaining labels by constrained cut minimization or label
//!   propagation, and
//! * certifies the deterministic error bound
//!   `‖y − y′‖² ≤ (Φ(y) + Φ(y′)) / Ψ(L)`.
//!
//! Cut and strength computations are generic over an exact integer weight
//! ([`Exact`]); label propagation and k-NN construction are generic over a
//! float ([`Real`]). The aliases below fix the common choices.

pub mod brute;
pub mod enumerate;
pub mod error;
pub mod experiment;
pub mod flow;
pub mod graph;
pub mod io;
pub mod labeling;
pub mod oracle;
pub mod predict;
pub mod psi;
pub mod ratio;
pub mod scalar;
pub mod select;
pub mod set;

pub use error::{Error, Result};
pub use experiment::{run_experiment, ExperimentData, ExperimentRow, ExperimentSpec, Method, Predictor};
pub use graph::{graph_cut, hypergraph_cut, Hypergraph, WeightedGraph};
pub use labeling::Labeling;
pub use oracle::{phi, symmetrize, CutOracle, OracleKind, SetFunction};
pub use predict::{error_certificate, label_prop_predict, mincut_predict, LabelPropParams, PredictionReport};
pub use psi::{adversarial_labeling, compute_psi, eval_f_lambda, FLambda, PsiCertificate};
pub use ratio::ExtRatio;
pub use scalar::{Exact, Real};
pub use select::{random_select, select_budget, select_target, SelectionResult};
pub use set::NodeSet;

/// Integer weight used by the aliases and the command-line tool.
pub type Weight = i64;
/// Exact rational over [`Weight`].
pub type Rational = num_rational::Ratio<Weight>;
/// Exact rational with `+∞` over [`Weight`].
pub type Strength = ExtRatio<Weight>;
pub type Graph = WeightedGraph<Weight>;
/// Real-weighted graph for label propagation.
pub type RealGraph = WeightedGraph<f64>;
pub type Hyper = Hypergraph<Weight>;
pub type Oracle = CutOracle<Weight>;
