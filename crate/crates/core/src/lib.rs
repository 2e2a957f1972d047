//! Weighted orthogonal matrices over finite fields and a linear block
//! cipher keyed by them.
//!
//! - [`gf`]: arithmetic in GF(p^a) with a canonical element enumeration.
//! - [`matrix`]: dense matrices, Gram matrices and weight detection.
//! - [`construct`]: self-orthogonal, weighted, anti-orthogonal, order-2q and
//!   Hadamard-Kronecker constructions.
//! - [`cipher`]: key formation, `C = W*M` encryption and `M = l*W^T*C`
//!   decryption, message codecs and file formats.
//! - [`analysis`]: per-field verification reports, key-space figures and
//!   known-plaintext parameter search.

pub mod analysis;
pub mod cipher;
pub mod construct;
pub mod error;
pub mod gf;
pub mod matrix;
pub mod worked_example;

pub use cipher::{CipherKey, CipherVector, KeyMaterial, MessageVector};
pub use error::{Error, Result};
pub use gf::{Felt, FieldCtx};
pub use matrix::GfMatrix;
