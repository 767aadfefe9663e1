//! Exact computation of stable homology invariants for graded
//! hypersurface singularities presented by matrix factorizations:
//! Hochster's theta pairing, the Herbrand difference, Milnor-algebra
//! residue pairings, and constancy checks for flat families over the
//! integers.

pub mod exact;
pub mod family;
pub mod groebner;
pub mod homology;
pub mod matrix_factorization;
pub mod milnor;
pub mod theta;

pub use exact::coeff::{Coeff, CoeffDomain};
pub use family::{ConstancyReport, FamilyError, FamilySpec, FiberId, FiberValidation, LiftReport};
pub use exact::matrix::PolyMatrix;
pub use exact::parse::{parse_poly, ParseError};
pub use exact::poly::{Monomial, MonomialOrder, PolyRing, Polynomial};
pub use groebner::{FreeModule, KDim, Submodule};
pub use homology::{HomologyError, TorProfile};
pub use matrix_factorization::{MatrixFactorization, MfError, PresentedModule};
pub use milnor::{MilnorAlgebra, MilnorError};
pub use theta::{PairingKind, RigidityReport, RigidityVerdict, ThetaReport};
