//! Sparse multivariate polynomials over exact rationals.
//!
//! A `MultiPoly` is a map from monomials to nonzero rational coefficients,
//! keyed by the graded-lexicographic order, over a fixed `Ring` of named
//! variables. Every operation is pure; values are cheap to share across
//! threads. Arithmetic between polynomials of different rings is an error,
//! never a coercion.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::monomial::Monomial;
use crate::rat::{rat_str, rat_to_f64, rational_content, Rat};
use crate::ring::Ring;

/// Errors from polynomial construction and arithmetic.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum PolyError {
    #[error("ring mismatch: {left} vs {right}")]
    RingMismatch { left: String, right: String },
    #[error("substitution value contains the substituted variable {var}")]
    ValueContainsVar { var: String },
    #[error("exact division left a nonzero remainder")]
    DivisionRemainder { remainder: Box<MultiPoly> },
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("operation requires a nonzero polynomial")]
    ZeroPolynomial,
    #[error("degree in {var} is {found}, but at least {need} is required")]
    DegreeTooLow { var: String, found: i64, need: i64 },
    #[error("invalid variable name {0:?}")]
    BadVarName(String),
    #[error("duplicate variable name {0:?}")]
    DuplicateVar(String),
    #[error("variable {name} is not in ring {ring}")]
    UnknownVariable { name: String, ring: String },
    #[error("polynomial is not univariate: variables {found:?} present")]
    NotUnivariate { found: Vec<String> },
}

/// Sparse polynomial with rational coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly {
    ring: Ring,
    terms: BTreeMap<Monomial, Rat>,
}

impl MultiPoly {
    pub fn zero(ring: &Ring) -> MultiPoly {
        MultiPoly { ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn one(ring: &Ring) -> MultiPoly {
        MultiPoly::constant(ring, Rat::one())
    }

    pub fn constant(ring: &Ring, c: Rat) -> MultiPoly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::unit(ring.len()), c);
        }
        MultiPoly { ring: ring.clone(), terms }
    }

    /// The polynomial `var` (first power). Panics on an out-of-range index.
    pub fn variable(ring: &Ring, var: usize) -> MultiPoly {
        assert!(var < ring.len(), "variable index {var} out of range for {ring}");
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::of_var(ring.len(), var, 1), Rat::one());
        MultiPoly { ring: ring.clone(), terms }
    }

    /// Build from arbitrary (monomial, coefficient) pairs, merging duplicates
    /// and dropping zeros.
    pub fn from_terms(
        ring: &Ring,
        terms: impl IntoIterator<Item = (Monomial, Rat)>,
    ) -> MultiPoly {
        let mut p = MultiPoly::zero(ring);
        for (m, c) in terms {
            assert_eq!(m.len(), ring.len(), "monomial arity must match ring {ring}");
            p.add_term(m, c);
        }
        p
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.keys().next().unwrap().is_unit())
    }

    /// The constant value if this polynomial is constant.
    pub fn as_constant(&self) -> Option<Rat> {
        if self.terms.is_empty() {
            return Some(Rat::zero());
        }
        if self.is_constant() {
            return Some(self.terms.values().next().unwrap().clone());
        }
        None
    }

    /// Greatest term in graded-lex order.
    pub fn leading(&self) -> Option<(&Monomial, &Rat)> {
        self.terms.iter().next_back()
    }

    pub fn coeff(&self, m: &Monomial) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check_ring(&self, other: &MultiPoly) -> Result<(), PolyError> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(PolyError::RingMismatch {
                left: self.ring.to_string(),
                right: other.ring.to_string(),
            })
        }
    }

    /// Sum; errors when the rings differ.
    pub fn checked_add(&self, other: &MultiPoly) -> Result<MultiPoly, PolyError> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    /// Difference; errors when the rings differ.
    pub fn checked_sub(&self, other: &MultiPoly) -> Result<MultiPoly, PolyError> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    /// Product; errors when the rings differ.
    pub fn checked_mul(&self, other: &MultiPoly) -> Result<MultiPoly, PolyError> {
        self.check_ring(other)?;
        let mut out = MultiPoly::zero(&self.ring);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    /// `self * c` for a scalar.
    pub fn scaled(&self, c: &Rat) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(&self.ring);
        }
        MultiPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    /// `self * c * m` for a single term.
    pub fn mul_term(&self, m: &Monomial, c: &Rat) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(&self.ring);
        }
        MultiPoly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(mm, v)| (mm.mul(m), v * c))
                .collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> MultiPoly {
        let mut acc = MultiPoly::one(&self.ring);
        let mut sq = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.checked_mul(&sq).expect("same ring");
            }
            e >>= 1;
            if e > 0 {
                sq = sq.checked_mul(&sq).expect("same ring");
            }
        }
        acc
    }

    /// Partial derivative with respect to `var`.
    pub fn partial_derivative(&self, var: usize) -> MultiPoly {
        let mut out = MultiPoly::zero(&self.ring);
        for (m, c) in &self.terms {
            let e = m.exp(var);
            if e == 0 {
                continue;
            }
            let mut exps = m.exps().to_vec();
            exps[var] = e - 1;
            out.add_term(Monomial::new(exps), c * Rat::from_integer(e.into()));
        }
        out
    }

    /// Degree in one variable; -1 for the zero polynomial.
    pub fn degree_in(&self, var: usize) -> i64 {
        self.terms
            .keys()
            .map(|m| m.exp(var) as i64)
            .max()
            .unwrap_or(-1)
    }

    /// Total degree; -1 for the zero polynomial.
    pub fn total_degree(&self) -> i64 {
        self.terms
            .keys()
            .map(|m| m.total_degree() as i64)
            .max()
            .unwrap_or(-1)
    }

    /// Indices of variables that actually occur.
    pub fn vars_present(&self) -> Vec<usize> {
        (0..self.ring.len())
            .filter(|&v| self.terms.keys().any(|m| m.exp(v) > 0))
            .collect()
    }

    /// Replace `var` by `value` (a polynomial over the same ring, itself free
    /// of `var`).
    pub fn substitute(&self, var: usize, value: &MultiPoly) -> Result<MultiPoly, PolyError> {
        self.check_ring(value)?;
        if value.degree_in(var) > 0 {
            return Err(PolyError::ValueContainsVar {
                var: self.ring.name(var).to_string(),
            });
        }
        let max_e = self.degree_in(var).max(0) as u32;
        // powers[e] = value^e, built incrementally
        let mut powers = Vec::with_capacity(max_e as usize + 1);
        powers.push(MultiPoly::one(&self.ring));
        for e in 1..=max_e {
            let next = powers[(e - 1) as usize].checked_mul(value)?;
            powers.push(next);
        }
        let mut out = MultiPoly::zero(&self.ring);
        for (m, c) in &self.terms {
            let e = m.exp(var);
            let rest = m.without_var(var);
            for (pm, pc) in &powers[e as usize].terms {
                out.add_term(rest.mul(pm), c * pc);
            }
        }
        Ok(out)
    }

    /// Replace `var` by a rational constant.
    pub fn substitute_rat(&self, var: usize, value: &Rat) -> MultiPoly {
        let v = MultiPoly::constant(&self.ring, value.clone());
        self.substitute(var, &v).expect("constant is free of var")
    }

    /// Exact quotient `self / d`; the error carries the division remainder
    /// when `d` does not divide `self`.
    pub fn exact_divide(&self, d: &MultiPoly) -> Result<MultiPoly, PolyError> {
        self.check_ring(d)?;
        if d.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        let (dm, dc) = {
            let (m, c) = d.leading().unwrap();
            (m.clone(), c.clone())
        };
        let mut rem = self.clone();
        let mut quot = MultiPoly::zero(&self.ring);
        while let Some((rm, rc)) = rem.leading().map(|(m, c)| (m.clone(), c.clone())) {
            let Some(qm) = rm.try_div(&dm) else {
                return Err(PolyError::DivisionRemainder { remainder: Box::new(rem) });
            };
            let qc = &rc / &dc;
            quot.add_term(qm.clone(), qc.clone());
            rem = rem.checked_sub(&d.mul_term(&qm, &qc))?;
        }
        Ok(quot)
    }

    /// Full evaluation: one rational per ring variable.
    pub fn eval_rat(&self, point: &[Rat]) -> Rat {
        assert_eq!(point.len(), self.ring.len());
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    t *= crate::rat::rat_pow(&point[v], e);
                }
            }
            acc += t;
        }
        acc
    }

    /// Floating-point evaluation at one point per ring variable.
    pub fn eval_f64(&self, point: &[f64]) -> f64 {
        assert_eq!(point.len(), self.ring.len());
        let mut acc = 0.0;
        for (m, c) in &self.terms {
            let mut t = rat_to_f64(c);
            for (v, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    t *= point[v].powi(e as i32);
                }
            }
            acc += t;
        }
        acc
    }

    /// Re-express over `target`, which must contain every variable of this
    /// ring (matched by name).
    pub fn in_ring(&self, target: &Ring) -> Result<MultiPoly, PolyError> {
        if &self.ring == target {
            return Ok(self.clone());
        }
        let map: Vec<usize> = self
            .ring
            .vars()
            .iter()
            .map(|name| {
                target.index_of(name).ok_or_else(|| PolyError::UnknownVariable {
                    name: name.clone(),
                    ring: target.to_string(),
                })
            })
            .collect::<Result<_, _>>()?;
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.remap(&map, target.len()), c.clone()))
            .collect::<BTreeMap<_, _>>();
        Ok(MultiPoly { ring: target.clone(), terms })
    }

    /// Dense coefficient vector when the polynomial involves at most the one
    /// variable `var`; slot `k` is the coefficient of `var^k`.
    pub fn to_univariate(&self, var: usize) -> Result<Vec<Rat>, PolyError> {
        let extra: Vec<String> = self
            .vars_present()
            .into_iter()
            .filter(|&v| v != var)
            .map(|v| self.ring.name(v).to_string())
            .collect();
        if !extra.is_empty() {
            return Err(PolyError::NotUnivariate { found: extra });
        }
        let deg = self.degree_in(var).max(0) as usize;
        let mut coeffs = vec![Rat::zero(); deg + 1];
        for (m, c) in &self.terms {
            coeffs[m.exp(var) as usize] = c.clone();
        }
        Ok(coeffs)
    }

    /// Positive rational content (gcd of coefficients as a reduced fraction);
    /// 1 for the zero polynomial.
    pub fn content(&self) -> Rat {
        rational_content(self.terms.values())
    }

    /// `self` divided by its content: integer, coprime coefficients. The sign
    /// is left untouched.
    pub fn primitive(&self) -> MultiPoly {
        let c = self.content();
        if c.is_one() {
            return self.clone();
        }
        self.scaled(&c.recip())
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

// Operator sugar for contexts where both sides are known to share a ring
// (internal algorithms, tests). Panics on a mismatch; use the checked_*
// methods when the rings come from outside.
impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.checked_add(rhs).expect("ring mismatch in +")
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self.checked_sub(rhs).expect("ring mismatch in -")
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.checked_mul(rhs).expect("ring mismatch in *")
    }
}

/// Canonical text form: terms in descending graded-lex order, explicit `*`
/// between factors, `^` only for exponents ≥ 2, unit coefficients omitted.
/// The output re-parses to an equal polynomial.
impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = c.abs();
            let mut factors: Vec<String> = Vec::new();
            if !mag.is_one() || m.is_unit() {
                factors.push(rat_str(&mag));
            }
            for (v, &e) in m.exps().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.ring.name(v).to_string()),
                    _ => factors.push(format!("{}^{}", self.ring.name(v), e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly[{} | {}]", self.ring, self)
    }
}
