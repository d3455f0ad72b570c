//! Ordered variable lists shared by all polynomials of one computation.

use std::fmt;
use std::sync::Arc;

use crate::poly::PolyError;

/// An ordered list of distinct variable names. Cloning is cheap (shared).
///
/// Two rings are equal exactly when their name lists are equal; every
/// arithmetic operation on polynomials demands equal rings and reports a
/// mismatch otherwise.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Ring(Arc<Vec<String>>);

/// `true` when `name` is a letter followed by letters, digits or underscores.
pub fn valid_var_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Ring {
    /// Build a ring from variable names, rejecting malformed or duplicate names.
    pub fn new(vars: Vec<String>) -> Result<Ring, PolyError> {
        for (i, v) in vars.iter().enumerate() {
            if !valid_var_name(v) {
                return Err(PolyError::BadVarName(v.clone()));
            }
            if vars[..i].contains(v) {
                return Err(PolyError::DuplicateVar(v.clone()));
            }
        }
        Ok(Ring(Arc::new(vars)))
    }

    /// Convenience constructor from string slices; panics on invalid names
    /// (intended for statically known lists).
    pub fn of(vars: &[&str]) -> Ring {
        Ring::new(vars.iter().map(|s| s.to_string()).collect())
            .expect("valid static variable list")
    }

    pub fn vars(&self) -> &[String] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|v| v == name)
    }

    pub fn name(&self, idx: usize) -> &str {
        &self.0[idx]
    }

    pub fn contains(&self, name: &str) -> bool {
        self.index_of(name).is_some()
    }

    /// New ring with `name` appended.
    pub fn extended(&self, name: &str) -> Result<Ring, PolyError> {
        if self.contains(name) {
            return Err(PolyError::DuplicateVar(name.to_string()));
        }
        let mut vars = self.0.as_ref().clone();
        vars.push(name.to_string());
        Ring::new(vars)
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.0.join(", "))
    }
}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ring{self}")
    }
}
