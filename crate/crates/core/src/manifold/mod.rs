//! Closed-manifold invariant records and their algebra: a catalog of
//! building blocks closed under connected sum, cartesian product and
//! disjoint union, with Euler and Kervaire semi-characteristics.

pub mod catalog;
mod descriptor;
mod ops;

pub use catalog::{catalog, catalog_complex, split_fused_atom, Catalog, BUILTIN_NAMES};
pub use descriptor::{
    sphere_euler_characteristic, CobordismDescriptor, CoefficientField, ManifoldDescriptor,
    ManifoldError, TriState,
};
pub use ops::{connected_sum, disjoint_union, product};
