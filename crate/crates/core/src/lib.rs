//! Finite Wajsberg algebras: validation, construction from chains, ideals and
//! quotients, isomorphism testing and enumeration of labeled tables.
//!
//! ```
//! use wajsberg::{chain, product, isomorphic};
//!
//! let c2 = chain(2).unwrap();
//! let square = product(&c2, &c2);
//! assert!(!square.is_chain());
//! assert!(!isomorphic(&square, &chain(4).unwrap()).unwrap());
//! ```

pub mod construct;
pub mod document;
pub mod enumerate;
pub mod error;
pub mod ideal;
pub mod iso;
pub mod regression;
pub mod table;

pub use construct::{chain, chain_product, product, product_all, transport, Bijection};
pub use document::{read_document, Format, TableDocument};
pub use enumerate::{iso_classes, labeled_census, multiplicative_partitions, pi, CensusConfig, CensusReport};
pub use error::{Error, Result};
pub use ideal::{
    congruence, decompose, enumerate_ideals, is_ideal, is_prime_ideal, is_prime_ideal_with, quotient,
    Decomposition, IdealSet, PrimeQuantifier, QuotientAlgebra,
};
pub use iso::{
    automorphisms, find_isomorphism, is_homomorphism, isomorphic, poset_isomorphic, signature, ChainSignature,
};
pub use table::{check_axioms, from_mv, validate, Element, MvView, ViolationKind, ViolationReport, WajsbergTable};
