//! Generalized block-low-rank (GBLR) structured matrices and their
//! differentiable frequency-domain parameterization.
//!
//! A GBLR matrix is a sum of `K` zero-padded rank-1 blocks with cyclic row and
//! column windows. The window geometry (a width and a location per axis per
//! block) is the *structure*; the rank-1 factors are the *content*. Frozen
//! matrices ([`gblr::GblrMatrix`]) store cropped content and support a
//! matrix-vector product whose multiplication count is exactly the sum of the
//! window widths. Trainable matrices ([`gaudi::GaudiGblrMatrix`]) relax the
//! structure to real values through Gaussian-smoothed Dirichlet masks built in
//! the frequency domain ([`mask`]), which makes widths and locations
//! differentiable. Proximal gradient descent over the relaxed structure
//! ([`optim`], [`nn`]) shrinks widths under a FLOPs budget, and [`init`]
//! seeds the parameterization from a dense target matrix.
//!
//! [`verify`] hosts independent oracles (brute-force DFT, finite differences,
//! dense reference products) and the randomized property suites used to keep
//! the analytic pieces honest.

pub mod error;
pub mod gblr;
pub mod mask;
pub mod verify;

pub use error::{Error, Result};
