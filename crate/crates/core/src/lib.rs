//! Exact enumeration of orthogonal equipartitions of point sets in ℝ³.
//!
//! A set of `8n` points admits an orthogonal equipartition when three
//! mutually orthogonal planes split it into eight closed octant regions of
//! `n` points each. [`engine::find_all_equipartitions`] enumerates every such
//! partition by solving for plane triples through 3-2-1 and 2-2-2 point
//! supports, with all side tests decided exactly in ℚ[√q].

pub mod engine;
pub mod error;
pub mod exact;
pub mod experiments;
pub mod frames;
pub mod moment;
pub mod plant;
pub mod solver;

pub use error::{Error, Result};
