//! L-space Dehn fillings of Floer simple manifolds, computed exactly from
//! Turaev torsion data, with independent oracles for every decision path.
//!
//! H₁(∂Y) has basis (m, l) with l the homological longitude. A slope
//! a·m + b·l has projective coordinate a/b, so m sits at ∞ and l at 0.

pub mod abelian;
pub mod cfd;
pub mod coloring;
pub mod corpus;
pub mod error;
pub mod gluing;
pub mod interval;
pub mod seifert;
pub mod selftest;
pub mod torsion;

pub use abelian::{FinAbGroup, GluingMatrix, GroupElement, ProjInterval, Slope};
pub use error::{Error, Result};
pub use torsion::{FloerSimpleManifold, ManifoldRecord};

/// Exact rationals.
pub type Rat = num_rational::Ratio<i128>;
