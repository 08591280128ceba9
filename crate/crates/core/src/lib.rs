//! Dependency distance distributions: treebank ingestion, an ensemble of
//! distance models fitted by maximum likelihood, model selection, sampling
//! from fitted models and the Ω optimality score.

pub mod cli;
pub mod error;
pub mod estimation;
pub mod models;
pub mod omega;
pub mod sampling;
pub mod treebank;
