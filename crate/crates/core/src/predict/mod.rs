//! Transductive prediction from a labeled set and the matching error bound.

mod certificate;
mod labelprop;
mod mincut;

pub use certificate::{error_certificate, PredictionReport};
pub use labelprop::{
    class_mass_normalize, label_prop_predict, optimality_residual, propagate, LabelPropParams, Propagated,
};
pub use mincut::mincut_predict;
