//! Modular group algebras of finite p-groups over the prime field GF(p).
//!
//! For a finite p-group G and K = GF(p), the group algebra KG is modular:
//! its augmentation ideal is nilpotent, so the normalized units
//! V(KG) = 1 + I(G) form a group of order p^(|G|−1) that is computable by
//! brute force for small G. This crate builds such groups from a catalog
//! ([`group`]), implements KG with its classical involution
//! Σλ_g·g ↦ Σλ_g·g⁻¹ ([`algebra`]), and enumerates unit sets, symmetric
//! units, and subgroup closures inside V(KG) ([`units`]).
//!
//! The heavy set computations run on rayon when the default `parallel`
//! feature is enabled; sequential twins (`*_seq`) are always compiled and
//! produce identical sets.

pub mod algebra;
pub mod error;
pub mod group;
pub mod units;

pub use algebra::{AlgebraContext, AlgebraElement};
pub use error::{Error, Result};
pub use group::{build_group, direct_product, sweep_specs, FiniteGroup};
pub use units::{check_conjecture, ConjectureReport, UnitSet};
