//! Exact Fourier analysis of convex polytopes: indicator transforms,
//! autocorrelations, lattice tilings, spectrum checks on finite windows, and
//! non-spectrality certificates for non-symmetric bodies.

pub mod certify;
pub mod cli;
pub mod config;
pub mod fourier;
pub mod geometry;
pub mod io;
pub mod lattice;
pub mod number;
pub mod spectral;
pub mod tiling;

#[cfg(test)]
mod properties;
