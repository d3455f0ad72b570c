//! From a polynomial f to the critical-value equation F(v) = 0.
//!
//! Adjoin a fresh unknown v, form the shifted polynomial p = f − v, and
//! eliminate every variable of f by the iterated discriminant. The surviving
//! univariate polynomial F(v) vanishes at every critical value of f — and
//! possibly at finitely many spurious values, which the numeric oracle in
//! [`crate::numeric`] weeds out.

use std::sync::atomic::AtomicBool;
use std::sync::Arc;

use thiserror::Error;

use crate::elim::{multiple_discriminant, ElimError, MdOptions};
use crate::poly::{MultiPoly, PolyError};
use crate::roots::{isolate_real_roots_coeffs, RealRoots, RootError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CritError {
    #[error(transparent)]
    Elim(#[from] ElimError),
    #[error("f must be nonconstant")]
    ConstantInput,
    #[error("value variable {name} collides with a variable of f")]
    ValueVarCollision { name: String },
    #[error("order must list every variable of f exactly once (missing: {missing:?}; unknown or absent: {unexpected:?}; duplicated: {duplicates:?})")]
    BadOrder {
        missing: Vec<String>,
        unexpected: Vec<String>,
        duplicates: Vec<String>,
    },
    #[error("elimination left variables {vars:?} in the result")]
    Incomplete { vars: Vec<String> },
}

/// A critical-value computation: the polynomial f, the name of the adjoined
/// value variable, the elimination order, and options.
#[derive(Clone, Debug)]
pub struct CriticalValueProblem {
    f: MultiPoly,
    v_name: String,
    /// Variables of f, outermost first; the last entry is eliminated first.
    order: Vec<String>,
    squarefree: bool,
    cancel: Option<Arc<AtomicBool>>,
}

impl CriticalValueProblem {
    /// Default problem: value variable "v", elimination order = f's
    /// variables as listed in its ring.
    pub fn new(f: MultiPoly) -> Result<CriticalValueProblem, CritError> {
        if f.is_constant() {
            return Err(CritError::ConstantInput);
        }
        let order = f
            .vars_present()
            .into_iter()
            .map(|i| f.ring().name(i).to_string())
            .collect();
        Ok(CriticalValueProblem {
            f,
            v_name: "v".to_string(),
            order,
            squarefree: false,
            cancel: None,
        })
    }

    /// Replace the elimination order; must name each variable of f exactly
    /// once.
    pub fn with_order(mut self, order: Vec<String>) -> Result<CriticalValueProblem, CritError> {
        let present: Vec<String> = self
            .f
            .vars_present()
            .into_iter()
            .map(|i| self.f.ring().name(i).to_string())
            .collect();
        let mut duplicates = Vec::new();
        let mut seen: Vec<&String> = Vec::new();
        for name in &order {
            if seen.contains(&name) {
                duplicates.push(name.clone());
            }
            seen.push(name);
        }
        let missing: Vec<String> = present
            .iter()
            .filter(|p| !order.contains(p))
            .cloned()
            .collect();
        let unexpected: Vec<String> = order
            .iter()
            .filter(|o| !present.contains(o))
            .cloned()
            .collect();
        if !missing.is_empty() || !unexpected.is_empty() || !duplicates.is_empty() {
            return Err(CritError::BadOrder { missing, unexpected, duplicates });
        }
        self.order = order;
        Ok(self)
    }

    pub fn with_squarefree(mut self, on: bool) -> CriticalValueProblem {
        self.squarefree = on;
        self
    }

    /// Rename the adjoined value variable (default "v").
    pub fn with_value_var(mut self, name: &str) -> Result<CriticalValueProblem, CritError> {
        if self.f.ring().contains(name) {
            return Err(CritError::ValueVarCollision { name: name.to_string() });
        }
        if !crate::ring::valid_var_name(name) {
            return Err(CritError::Elim(ElimError::Poly(PolyError::BadVarName(
                name.to_string(),
            ))));
        }
        self.v_name = name.to_string();
        Ok(self)
    }

    /// Cooperative cancellation, checked between elimination stages.
    pub fn with_cancel(mut self, flag: Arc<AtomicBool>) -> CriticalValueProblem {
        self.cancel = Some(flag);
        self
    }

    pub fn f(&self) -> &MultiPoly {
        &self.f
    }

    pub fn v_name(&self) -> &str {
        &self.v_name
    }

    pub fn order(&self) -> &[String] {
        &self.order
    }

    pub fn squarefree(&self) -> bool {
        self.squarefree
    }
}

/// The critical-value polynomial F(v), with any stage warnings.
#[derive(Clone, Debug)]
pub struct CriticalValuePolynomial {
    /// F as a polynomial over f's ring extended by the value variable
    /// (always the last ring slot); free of all original variables.
    pub f_poly: MultiPoly,
    /// Ring index of the value variable inside `f_poly`.
    pub v_index: usize,
    pub warnings: Vec<String>,
}

impl CriticalValuePolynomial {
    /// Dense coefficients of F in v (slot k = coefficient of v^k).
    pub fn coeffs(&self) -> Vec<crate::rat::Rat> {
        self.f_poly
            .to_univariate(self.v_index)
            .expect("F is univariate in the value variable")
    }

    pub fn degree(&self) -> i64 {
        self.f_poly.degree_in(self.v_index)
    }
}

/// p = f − v over f's ring extended by the value variable.
pub fn build_shifted_polynomial(prob: &CriticalValueProblem) -> Result<MultiPoly, CritError> {
    let ring = prob.f.ring();
    let ext = ring
        .extended(&prob.v_name)
        .map_err(|_| CritError::ValueVarCollision { name: prob.v_name.clone() })?;
    let f_ext = prob.f.in_ring(&ext).map_err(ElimError::from)?;
    let v = MultiPoly::variable(&ext, ext.len() - 1);
    Ok(f_ext.checked_sub(&v).map_err(ElimError::from)?)
}

/// The critical-value polynomial: the multiple discriminant of p = f − v
/// over the problem's elimination order. Every critical value of f is a root
/// of the result; not every root need be a critical value.
pub fn critical_value_polynomial(
    prob: &CriticalValueProblem,
) -> Result<CriticalValuePolynomial, CritError> {
    let p = build_shifted_polynomial(prob)?;
    let opts = MdOptions {
        squarefree_each_stage: prob.squarefree,
        cancel: prob.cancel.clone(),
    };
    let md = multiple_discriminant(&p, &prob.order, &opts)?;
    let v_index = p.ring().len() - 1;
    let leftover: Vec<String> = md
        .value
        .vars_present()
        .into_iter()
        .filter(|&i| i != v_index)
        .map(|i| p.ring().name(i).to_string())
        .collect();
    if !leftover.is_empty() {
        return Err(CritError::Incomplete { vars: leftover });
    }
    Ok(CriticalValuePolynomial { f_poly: md.value, v_index, warnings: md.warnings })
}

/// Real roots of F(v), isolated exactly.
pub fn isolate_real_roots(f: &CriticalValuePolynomial) -> Result<RealRoots, RootError> {
    isolate_real_roots_coeffs(&f.coeffs())
}
