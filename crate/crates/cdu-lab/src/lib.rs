//! Exact-arithmetic toolkit for c-differential uniformity analysis over GF(p^n).
//!
//! The crate measures the multiplicative differential behavior of functions
//! on small finite fields with integer-exact results throughout: c-derivatives
//! and c-differential uniformity, PcN/APcN classification, Walsh transforms as
//! cyclotomic integers, first-kind Dickson polynomial identities, closed-form
//! number-theoretic criteria paired with brute-force cross-checks, exhaustive
//! PcN exponent searches, and a collection of perturbation constructions.
//!
//! Entry points:
//! - [`field::FieldCtx`] builds GF(p^n) with exp/log/Zech tables (O(1) ops).
//! - [`function::FunctionSpec`] describes a function family and
//!   [`function::materialize`] turns it into a dense value table.
//! - [`cdiff`] measures uniformity, spectra and Walsh values.
//! - [`theory`] holds the closed-form predicates and exponent algebra.
//! - [`search`] runs exhaustive PcN monomial searches with orbit sharding.
//! - [`perturb`] implements the perturbation constructions and their checks.
//! - [`verify`] bundles the brute-force cross-check matrices used by the
//!   `cdu-lab verify` subcommand and the acceptance suite.
//!
//! The `cdu-lab` binary is a thin front end over these modules; the
//! `examples/` directory shows one runnable tour per capability.

pub mod cdiff;
pub mod cli;
pub mod cyclo;
pub mod field;
pub mod function;
pub mod perturb;
pub mod poly;
pub mod report;
pub mod search;
pub mod theory;
pub mod verify;

pub use cdiff::{c_derivative, c_spectrum, cdu, is_pcn, walsh, CDiffResult, Spectrum};
pub use cyclo::CycloInt;
pub use field::{Elt, FieldCtx, FieldError, FieldSpec};
pub use function::{materialize, FuncTable, FunctionSpec};
pub use poly::PolyFp;
