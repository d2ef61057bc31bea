//! Combinatorial toolkit for bilinearized Legendrian contact homology over GF(2).
//!
//! The pipeline is: a [`Dga`] (free graded algebra with a differential),
//! its [`Augmentation`]s, the bilinearized [`ChainComplex`] of a pair of
//! augmentations, and the Poincaré polynomial of its homology. On top of
//! that sit the homotopy classification of augmentations ([`homotopy`]),
//! polynomial-level geography ([`geography`]) and built-in example
//! families ([`families`]).
//!
//! Polynomial coefficients are generic over the scalar ([`LaurentPolynomial`]);
//! homology dimensions use the [`LaurentPoly`] alias over `i64`.

pub mod augment;
pub mod complex;
pub mod dga;
pub mod families;
pub mod geography;
pub mod gf2;
pub mod homotopy;
pub mod laurent;

pub use augment::{bilinearize, enumerate_augmentations, is_augmentation, linearize, Augmentation};
pub use complex::{betti, poincare, ChainComplex};
pub use dga::{parse_dga, Dga, DgaBuilder, Poly, Word};
pub use gf2::BitMatrix;
pub use laurent::LaurentPolynomial;

/// Poincaré polynomials and other integer Laurent polynomials.
pub type LaurentPoly = LaurentPolynomial<i64>;

/// Wider coefficients for polynomial arithmetic that may overflow `i64`.
pub type WideLaurentPoly = LaurentPolynomial<i128>;
