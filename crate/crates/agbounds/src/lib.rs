//! Distance and coset-distance bounds for two-point algebraic geometry codes.
//!
//! The model is purely combinatorial: a curve with two distinguished rational
//! points P and Q is described by its genus, the order m of the class of P - Q,
//! and the degrees of the m "discrepancy" divisor classes.  Everything else
//! (Riemann-Roch dimensions, the semigroups Gamma_P and Gamma_Q, delta sets,
//! and the bound machinery built on them) is derived from that profile.
//!
//! Concrete codes live in [`codes`]: Hermitian curves over small fields with
//! brute-force distance oracles, used to validate the bounds, plus the
//! secret-sharing access structure analysis.  [`decoder`] implements majority
//! coset decoding driven by the chain witnesses produced in [`bounds`].
//!
//! All structures are immutable after construction; nothing here locks or
//! shares mutable state, so callers may parallelize freely.

pub mod bounds;
pub mod cli;
pub mod codes;
pub mod curve;
pub mod decoder;
pub mod delta;
pub mod field;
pub mod linalg;
