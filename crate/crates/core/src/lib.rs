//! Exact computations for right-angled Coxeter groups, their products and the
//! automorphism groups of free products built from them: cohomology of finite
//! complexes, virtual and Bredon cohomological dimensions, and tree counts.
//!
//! The crate is organised bottom-up:
//!
//! * [`simplicial`]: graphs, abstract simplicial complexes, delta complexes and
//!   the constructions used everywhere else (flag complexes, subdivisions,
//!   cones, full subcomplexes).
//! * [`homology`]: sparse integer matrices, Smith normal form and integral
//!   (reduced, absolute, relative) cohomology.
//! * [`racg`]: combinatorial criteria for right-angled Coxeter groups read off
//!   the defining graph and its nerve.
//! * [`gp`]: the `Z_p`-equivariant construction of the nerve `L_p` and the
//!   verification of its cohomological claims.
//! * [`product`]: tensor/Tor arithmetic, the Künneth band evaluator and product
//!   dimension bounds.
//! * [`spine`]: quotient trees of free splittings and the resulting bounds for
//!   `Out(G)` and `Aut(G)`.
//!
//! Matrix algebra is generic over the coefficient ring (see [`scalar`]); the
//! aliases below fix the arbitrary-precision instances used by the pipelines.

pub mod error;
pub mod gp;
pub mod homology;
pub mod product;
pub mod racg;
pub mod scalar;
pub mod simplicial;
pub mod spine;

pub use error::{Error, Result};
pub use homology::{FgAbelianGroup, SnfResult, SparseMatrix};
pub use simplicial::{DeltaComplex, Graph, Simplex, SimplicialComplex};

/// Arbitrary-precision integers: the coefficient ring of every cochain complex.
pub type Integer = num_bigint::BigInt;

/// Exact rationals, used for field-coefficient rank computations.
pub type Rational = num_rational::BigRational;

/// Integer matrices with arbitrary-precision entries.
pub type IntegerMatrix = SparseMatrix<Integer>;

/// Smith normal form over the arbitrary-precision integers.
pub type IntegerSnf = SnfResult<Integer>;
