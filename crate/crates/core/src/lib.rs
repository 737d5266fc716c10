//! Double brackets on free associative algebras, their Jacobiators, and the
//! Poisson structures they induce on representation spaces.

pub mod bimodule;
pub mod cli;
pub mod commpoly;
pub mod dbracket;
pub mod freealg;
pub mod repspace;
pub mod ybe;
pub mod gradient;
