//! Homology of the normalized HOMFLYPT Yang-Baxter precubic module.

pub mod cache;
pub mod chainmaps;
pub mod complex;
pub mod config;
pub mod conjectures;
pub mod counting;
pub mod homology;
pub mod matrix;
pub mod pipeline;
pub mod reference;
pub mod ring;
pub mod smith;
pub mod ybop;
