//! Exact computation of lower Bruhat intervals `≤θ(λ)` in affine Weyl groups.
//!
//! The size of the interval below `θ(λ)` is computed three independent ways:
//!
//! * by brute-force enumeration of the Bruhat interval along a reduced word
//!   ([`weyl::interval_size`], [`weyl::lower_interval`]),
//! * by counting coset lattice points in the orbit polytope `Conv(W_f·λ)`
//!   ([`orbitpoly::interval_size_lattice`]),
//! * by evaluating a weighted sum of face volumes with the geometric
//!   coefficients ([`geocoeff::evaluate_formula`]).
//!
//! All arithmetic is exact. The crate is `no_std` and only needs `alloc`; file
//! formats, JSON and the command line live in the companion `bruhat-cli` crate.
#![no_std]
#![warn(missing_debug_implementations)]

extern crate alloc;

mod error;
pub mod exact;
pub mod geocoeff;
pub mod orbitpoly;
pub mod rootsys;
pub mod volume;
pub mod weyl;

pub use error::{Error, Result};
pub use exact::{Integer, MPoly, QMatrix, QVector, RadScalar, Rational};
pub use geocoeff::{GeometricCoefficients, Provenance};
pub use orbitpoly::{DominantCoweight, FaceDescriptor};
pub use rootsys::{Family, RootSystemData, RootSystemId};
pub use volume::VolumePolynomial;
pub use weyl::AffineElement;

/// Library version; part of the coefficient cache key.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Size limits for the enumerative parts of the library.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Maximum number of elements in an enumerated Bruhat interval or finite Weyl group.
    pub interval_cap: usize,
    /// Maximum number of points visited by a box enumeration.
    pub box_cap: u64,
    /// Maximum rank for which all `2^n` volume polynomials and coefficients are built.
    pub max_subset_rank: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            interval_cap: 1_000_000,
            box_cap: 50_000_000,
            max_subset_rank: 8,
        }
    }
}
