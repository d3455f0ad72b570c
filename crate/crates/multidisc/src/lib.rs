//! Exact critical values of multivariate polynomials via iterated
//! discriminants.
//!
//! Given a polynomial map `f : R^n → R` with rational coefficients, the
//! critical values of `f` are roots of a single univariate polynomial
//! `F(v)`, obtained by eliminating the variables of `f - v` one at a time
//! with univariate discriminants. This crate provides:
//!
//! * exact multivariate polynomial arithmetic over the rationals
//!   ([`poly`], [`univar`], [`parse`]),
//! * resultants, discriminants, and the iterated ("multiple") discriminant
//!   with degeneracy reporting and an optional squarefree fallback
//!   ([`elim`]),
//! * the critical-value pipeline `f ↦ F(v)` ([`critvals`]),
//! * exact real-root isolation with multiplicities ([`roots`]),
//! * first-order discriminant variation and leading-coefficient
//!   specialization identities ([`variation`]),
//! * a floating-point oracle that independently locates critical points and
//!   checks containment of their values among the exact roots ([`numeric`]).
//!
//! # Example
//!
//! ```
//! use multidisc::critvals::{critical_value_polynomial, isolate_real_roots,
//!                           CriticalValueProblem};
//! use multidisc::parse::parse_poly;
//!
//! // f(x) = x^3 - 3x has critical points at x = ±1 with values ∓2.
//! let (f, _ring) = parse_poly("x^3 - 3*x").unwrap();
//! let problem = CriticalValueProblem::new(f).unwrap();
//! let fv = critical_value_polynomial(&problem).unwrap();
//! assert_eq!(fv.f_poly.to_string(), "-27*v^2 + 108");
//!
//! let roots = isolate_real_roots(&fv).unwrap();
//! let values: Vec<f64> = roots.roots.iter().map(|r| r.value.approx()).collect();
//! assert_eq!(values, vec![-2.0, 2.0]);
//! ```

pub mod rat;
pub mod ring;
pub mod monomial;
pub mod poly;
pub mod univar;
pub mod parse;
pub mod elim;
pub mod variation;
pub mod roots;
pub mod critvals;
pub mod numeric;

pub use crate::critvals::{
    critical_value_polynomial, isolate_real_roots, CritError, CriticalValuePolynomial,
    CriticalValueProblem,
};
pub use crate::elim::{
    discriminant_wrt, multiple_discriminant, resultant, ElimError, MdOptions, MdResult,
};
pub use crate::numeric::{
    find_critical_points_numeric, numeric_discriminant_via_roots, numeric_roots,
    verify_containment, ContainmentReport, NumericError, OracleConfig,
};
pub use crate::parse::{parse_in_ring, parse_poly, ParseError};
pub use crate::poly::{MultiPoly, PolyError};
pub use crate::rat::Rat;
pub use crate::ring::Ring;
pub use crate::roots::{isolate_real_roots_coeffs, IsolatedRoot, RealRoots, RootValue};
