//! Exact symbolic machinery for quantum OGZ algebras inside skew group
//! algebras, together with the verification suites that mechanically check
//! every finitely checkable structural claim about them.
//!
//! Layering (each module only depends on the ones above it):
//!
//! * [`scalar`] — the coefficient field `F = Q(zeta_m)(q)`: exact cyclotomic
//!   rationals and normalized rational functions in the quantum parameter.
//! * [`laurent`] — sparse multivariate Laurent polynomials over `F`, their
//!   rational functions in canonical form, and exact multivariate gcd.
//! * [`reflection`] — the complex reflection groups `G(m,p,n)`, their action
//!   on Laurent polynomials, invariant generators, coset data.
//! * [`lattice`] — small exact integer-lattice utilities (Hermite form,
//!   monoid generation certificates).
//! * [`skew`] — the skew group algebra `L * M^` of the variable torus by the
//!   q-shift lattice, with the group action lifted to it.
//! * [`ogz`] — construction of the quantum OGZ generators and the
//!   verification suites for invariance, support, and relation claims.
//! * [`noether`] — the q-difference Noether machinery: quantum torus, power
//!   map, eigenspace decomposition, the psi embedding, and the Weyl-field
//!   parameter bookkeeping.
//! * [`report`] / [`campaign`] — check records, deterministic report
//!   rendering, campaign configuration and the suite runner behind the CLI.

pub mod campaign;
pub mod error;
pub mod lattice;
pub mod laurent;
pub mod noether;
pub mod ogz;
pub mod reflection;
pub mod report;
pub mod scalar;
pub mod skew;

pub use error::Error;
pub use laurent::{LaurentPoly, RatFunc, VarIndex, VarTable};
pub use ogz::AlgebraSpec;
pub use scalar::{CyclotomicRational, Scalar};
