pub mod repkit;
pub mod liepoisson;
pub mod potential;
pub mod dynamics;
pub mod spectral;
pub mod cli;
