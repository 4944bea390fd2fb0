//! Combinatorics of cubical complexes.
//!
//! The crate is organised around a small ranked-poset kernel ([`poset`]) that
//! every other module consumes:
//!
//! - [`builders`]: cube boundaries, zonotope boundaries from generic hyperplane
//!   arrangements, antipodal quotients and a named catalogue.
//! - [`derivative`]: the paired-facet complex `NK`, the derivative complex `DK`
//!   and the join map back into `K`.
//! - [`mod2`]: GF(2) matrices, chains and (co)homology.
//! - [`parity`]: bicolorings, Eulerian degree, vertex colour counts and the
//!   flag-level chain operators with the odd-dimensional sphere parity check.
//! - [`lattice`]: f-polynomials, the zonotopal f-vector family, integer normal
//!   forms and modular-equation mining.
//! - [`cubation`]: from a normal-crossing simplicial immersion into a sphere to a
//!   cubical sphere whose face counts match the multiple-point strata mod 2.
//!
//! Interchange formats live in [`json`].

pub mod builders;
pub mod cubation;
pub mod derivative;
pub mod json;
pub mod lattice;
pub mod mod2;
pub mod parity;
pub mod poset;

pub use builders::{catalogue, cube_boundary, Arrangement, Zonotope};
pub use derivative::DerivativeComplex;
pub use lattice::{AffineLattice, FPolynomial};
pub use mod2::{BitMatrix, Mod2Chain};
pub use poset::{validate_cubical, CubicalComplex, ElemId, Flag, PosetError, RankedPoset};
