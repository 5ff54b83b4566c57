//! Exact rational models of universal fibrations with Poincaré duality fibres:
//! graded-commutative algebra, derivation Lie algebras, Chevalley–Eilenberg
//! models, complete intersections, fibre integration and κ-classes.

pub mod cemodel;
pub mod cintersect;
pub mod derlie;
pub mod error;
pub mod eulerring;
pub mod fibint;
pub mod gcalg;
pub mod linalg;
pub mod sample;
pub mod spaces;
pub mod verify;

pub use cemodel::{LieAction, RelativeSullivanModel};
pub use cintersect::{CompleteIntersection, Orientation};
pub use derlie::{DerivationLie, DgLieAlgebra};
pub use error::{Error, Result};
pub use eulerring::{EulerRingReport, KappaTable};
pub use fibint::{FibreIntegration, LerayHirsch};
pub use gcalg::{AlgElement, Derivation, Differential, FreeGcAlgebra, Generator, Monomial};
pub use spaces::{Space, UniversalModel};

/// Exact rational coefficients.
pub type Q = num_rational::BigRational;
