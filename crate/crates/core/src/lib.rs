//! Latin squares read as Cayley tables.
//!
//! A table of order `n` is a binary operation on the symbols `0..n`, with
//! the row as left operand. This crate decides the Latin property,
//! associativity (exhaustively and by Light's test), identities, inverses
//! and commutativity, classifies the resulting structure, and checks that
//! every associative Latin square is a group table, exhaustively at small
//! orders or on random samples.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

pub mod axioms;
pub mod classify;
pub mod generate;
pub mod table;
pub mod verify;

pub use axioms::{
    associativity_light, associativity_naive, find_identity, idempotents, inverse_map,
    is_commutative, AssocWitness, InverseError, InverseMap,
};
pub use classify::{
    classify, classify_with, element_orders, theorem_check, AssocAlgorithm, ClassificationReport,
    ProofStep, StructureClass, TheoremDetails, TheoremVerdict,
};
pub use generate::{
    cyclic_table, direct_product, enumerate_latin, fixture_intro_square, fixture_remark_loop,
    random_latin, EnumPrefix, GenerateError, OrderGuard, SampleConfig,
};
pub use table::{latin_check, Axis, CayleyTable, LatinReport, LatinViolation, Symbol, TableError};
pub use verify::{
    associative_census, verify_exhaustive, verify_sampled, TheoremViolation, VerificationReport,
    VerifyMode,
};
