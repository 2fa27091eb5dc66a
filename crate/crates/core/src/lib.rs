//! Exact lattice-polyhedral invariants of hypersurface and complete
//! intersection singularities.
//!
//! The crate computes, from the exponent support of a polynomial (or a tuple
//! of polynomials), the combinatorial data of its Newton polyhedra and the
//! invariants these determine for non-degenerate members: monodromy zeta
//! functions (local, at infinity, complete intersection, meromorphic),
//! Milnor numbers, equivariant Hodge-Deligne tables, Jordan block counts of
//! the monodromies, and the Hodge spectrum at infinity.
//!
//! All arithmetic is exact. The geometry kernel in [`lattice_geom`] is
//! generic over an integer scalar (`i64` for small inputs, `BigInt` by
//! default, see [`Scalar`]); everything downstream of it is generic over the
//! same parameter. The crate-root aliases fix the default instantiation.

pub mod equivariant_hodge;
pub mod error;
pub mod jordan_spectrum;
pub mod lattice_geom;
pub mod newton;
pub mod poly;
pub mod qz;
pub mod scalar;
pub mod stapledon;
pub mod zeta;

pub use error::Error;
pub use scalar::Scalar;

/// Default exact integer scalar.
pub type Int = num_bigint::BigInt;
/// Default exact rational scalar.
pub type Rat = num_rational::Ratio<Int>;

/// Result alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

pub type Polytope = lattice_geom::Polytope<Int>;
pub type Cone = lattice_geom::Cone<Int>;
pub type Fan = lattice_geom::Fan<Int>;
pub type Support = newton::Support<Int>;
pub type NewtonPolyhedron = newton::NewtonPolyhedron<Int>;
pub type FaceGeometry = newton::FaceGeometry<Int>;
pub type ZetaFunction = zeta::ZetaFunction<Int>;
pub type CharPoly = zeta::CharPoly<Int>;
pub type WeightedPolytope = equivariant_hodge::WeightedPolytope<Int>;
pub type EHodgeTable = equivariant_hodge::EHodgeTable<Int>;
pub type JordanTable = jordan_spectrum::JordanTable<Int>;
pub type Spectrum = jordan_spectrum::Spectrum<Int>;
pub type PolySubdivision = stapledon::PolySubdivision<Int>;
