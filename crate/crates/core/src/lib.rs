//! Exact-arithmetic toolkit for populations of Bethe-ansatz critical points
//! and the non-monic Schrödinger operators attached to them.
//!
//! Everything is computed over ℚ (or over quotient rings ℚ[t]/(q) for
//! algebraic pole locations, with D5-style dynamic splitting); floating
//! point appears only in the numeric root oracle used for Bethe-equation
//! residual checks.
//!
//! Module map:
//! - [`exactalg`]: rationals, dense polynomials, rational functions,
//!   quotient-ring elements, Laurent expansion, exact linear solving and
//!   the Aberth root oracle.
//! - [`populations`]: pairs (y₀,y₁) and data (T₀,T₁), genericity and
//!   fertility, reproduction, population enumeration, Weyl degree
//!   bookkeeping and super-fertile normalization.
//! - [`theta`]: the φ/θ recursion generating the population of the
//!   trivial critical point, Adler–Moser specialization and polynomial
//!   change of variables.
//! - [`operators`]: operators P⁻¹(∂²−U), Fuchsian checks, modified
//!   exponents, the Δ(s,λ) determinant criterion and residue checks.
//! - [`darboux`]: Darboux transformations at pair and potential level,
//!   exponent reduction, operator→pair recovery and the P=xᵏ
//!   classification.

pub mod error;
pub mod exactalg;
pub mod populations;
pub mod theta;
pub mod operators;
pub mod darboux;

pub use error::Error;
pub use exactalg::{Poly, Rat, RationalFunction};
