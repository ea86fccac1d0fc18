//! Exact algebra of permutation products and cycle index polynomials.
//!
//! The crate is organised bottom-up:
//!
//! * [`permutations`]: permutations as image words, cycles, the intransitive
//!   (shifted concatenation) and Cartesian products, explicit permutation groups.
//! * [`symfunc`]: symmetric functions in the power-sum basis with the ordinary
//!   product and the `star` product, monomial expansion, finite-alphabet
//!   specialization and the prime-signature embedding.
//! * [`cycle_index`]: the cycle-type monomial of a permutation and the Pólya
//!   cycle index of a group.
//! * [`polya_enum`]: generating functions of weighted bipartite graphs, the
//!   Feynman-diagram series and brute-force orbit census.
//! * [`fqsym`]: the noncommutative lift to free quasi-symmetric functions.
//! * [`diagrams`]: packed weight matrices, labelled diagrams, orbit
//!   canonicalization and renderers.
//!
//! All coefficients are exact rationals.

pub mod cycle_index;
pub mod diagrams;
mod error;
pub mod format;
pub mod fqsym;
pub mod permutations;
pub mod polya_enum;
pub mod symfunc;

pub use error::{Error, Result};
pub use num_bigint::BigInt;
pub use num_rational::BigRational;

pub use cycle_index::{cycle_index, frak_z, frak_z_linear};
pub use diagrams::{DiagramClass, LabelledDiagram, WeightMatrix};
pub use fqsym::FQSymElement;
pub use permutations::{Cycle, Permutation, PermutationGroup};
pub use polya_enum::{EdgeType, FeynmanTable};
pub use symfunc::{
    MonomialPolynomial, Partition, PowerSumPolynomial, PrimeSignatureElement, YPolynomial,
};
