//! Exact q-series workbench.
//!
//! * [`exactnum`]: big integers, rationals, Eisenstein integers, Bernoulli
//!   numbers and the Möbius function.
//! * [`qseries`]: truncated power series over ℤ, ℚ and ℤ[ω].
//! * [`catalog`]: Pochhammer products and the named sum/product sides.
//! * [`recognizer`]: infinite-product factorization via Möbius inversion.
//! * [`asymptotics`]: q → 1 expansions of infinite products, exact and numeric.
//! * [`harness`]: expression language, identity registry, relation finder, CLI.

pub mod exactnum;
pub mod par;
pub mod qseries;
pub mod catalog;
pub mod recognizer;
pub mod asymptotics;
pub mod harness;
