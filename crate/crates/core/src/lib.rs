//! Exact toric geometry over the integers and rationals.
//!
//! The crate models simplicial rational fans, torus-invariant divisors on the
//! associated toric varieties, their Cartier data and section polytopes, and
//! intersection numbers with invariant curves. On top of that sit fan builders
//! for projective spaces, split projective bundles and invariant blow-ups, plus
//! Picard-lattice bookkeeping for point blow-ups of surfaces.
//!
//! All arithmetic is exact (`BigInt` / `BigRational`). Verdicts such as "nef"
//! or "base point free" are exact dichotomies and never depend on a tolerance.
//!
//! Runnable walkthroughs live in `examples/`:
//!
//! ```bash
//! cargo run --example sato_threefold
//! cargo run --example bundle_blowup
//! cargo run --example double_cover_ledger
//! ```

pub mod constructions;
pub mod divisor;
pub mod error;
pub mod fan;
pub mod intersection;
pub mod io;
pub mod lattice;
pub mod picard;
pub mod report;

pub use error::{Error, Result};
pub use fan::{Cone, Fan, FanMap};
pub use lattice::{IntegerMatrix, LatticeVector, RationalCovector};

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

/// Outcome of a yes/no check that carries a certificate when the answer is no.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict<W> {
    Holds,
    Fails(W),
}

impl<W> Verdict<W> {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Verdict::Holds => None,
            Verdict::Fails(w) => Some(w),
        }
    }
}
