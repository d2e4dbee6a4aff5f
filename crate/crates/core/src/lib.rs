//! Topology-change toolkit for Lorentzian cobordisms.
//!
//! The crate decides when a Lorentzian, weak Lorentzian or Spin(1,n)0
//! Lorentzian cobordism exists between two closed manifolds, classifies
//! manifolds in the corresponding cobordism groups, synthesizes explicit
//! connected-sum witness recipes, evaluates gravitational kink numbers, and
//! realizes the pointwise Lorentzian-metric construction numerically.
//!
//! Modules:
//! - [`homology`]: exact chain-complex homology (the brute-force oracle),
//! - [`manifold`]: closed-manifold descriptors and their algebra,
//! - [`rules`]: existence theorems as total decision functions,
//! - [`witness`]: connected-sum recipes zeroing the Euler characteristic,
//! - [`kink`]: gravitational kink arithmetic,
//! - [`metric`]: the pointwise Lorentzian metric constructor and its inverse.

pub mod homology;
pub mod kink;
pub mod manifold;
pub mod metric;
pub mod rules;
pub mod witness;
