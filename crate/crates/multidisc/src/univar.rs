//! Univariate views: a multivariate polynomial read as a dense polynomial in
//! one distinguished variable, with coefficients that are polynomials in the
//! remaining variables.
//!
//! This is the working representation for resultants, discriminants, and the
//! squarefree reduction. The coefficient slots never mention the main
//! variable; slot `k` holds the coefficient of `var^k`, and the top slot of a
//! nonzero view is nonzero.

use num_traits::One;

use crate::poly::{MultiPoly, PolyError};
use crate::rat::{rat_int, Rat};
use crate::ring::Ring;

/// A polynomial viewed along one variable.
#[derive(Clone, Debug, PartialEq)]
pub struct UniView {
    ring: Ring,
    var: usize,
    /// coeffs[k] is the coefficient of var^k; empty means the zero polynomial.
    coeffs: Vec<MultiPoly>,
}

impl UniView {
    /// Split `p` along `var`. The zero polynomial yields an empty view.
    pub fn of(p: &MultiPoly, var: usize) -> UniView {
        let ring = p.ring().clone();
        assert!(var < ring.len(), "variable index {var} out of range for {ring}");
        let deg = p.degree_in(var);
        let mut coeffs = vec![MultiPoly::zero(&ring); (deg + 1).max(0) as usize];
        for (m, c) in p.terms() {
            let e = m.exp(var) as usize;
            let rest = m.without_var(var);
            let slot = &coeffs[e];
            coeffs[e] = slot.checked_add(&MultiPoly::from_terms(&ring, [(rest, c.clone())]))
                .expect("same ring");
        }
        let mut view = UniView { ring, var, coeffs };
        view.normalize();
        view
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn var(&self) -> usize {
        self.var
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree in the main variable; -1 for zero.
    pub fn degree(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    /// Coefficient of `var^k` (zero past the degree).
    pub fn coeff(&self, k: usize) -> MultiPoly {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(|| MultiPoly::zero(&self.ring))
    }

    pub fn coeffs(&self) -> &[MultiPoly] {
        &self.coeffs
    }

    /// Leading coefficient; zero polynomial for the zero view.
    pub fn leading(&self) -> MultiPoly {
        self.coeffs
            .last()
            .cloned()
            .unwrap_or_else(|| MultiPoly::zero(&self.ring))
    }

    /// Derivative in the main variable.
    pub fn derivative(&self) -> UniView {
        if self.coeffs.len() <= 1 {
            return UniView { ring: self.ring.clone(), var: self.var, coeffs: vec![] };
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c.scaled(&rat_int(k as i64)))
            .collect();
        let mut out = UniView { ring: self.ring.clone(), var: self.var, coeffs };
        out.normalize();
        out
    }

    /// Reconstruct the flat multivariate polynomial.
    pub fn reassemble(&self) -> MultiPoly {
        let mut acc = MultiPoly::zero(&self.ring);
        for (k, c) in self.coeffs.iter().enumerate() {
            let shifted = c.mul_term(
                &crate::monomial::Monomial::of_var(self.ring.len(), self.var, k as u32),
                &Rat::one(),
            );
            acc = acc.checked_add(&shifted).expect("same ring");
        }
        acc
    }

    fn from_coeffs(ring: &Ring, var: usize, coeffs: Vec<MultiPoly>) -> UniView {
        let mut v = UniView { ring: ring.clone(), var, coeffs };
        v.normalize();
        v
    }

    /// Multiply every coefficient by `f` (which must not involve the main
    /// variable — callers pass coefficient-ring values only).
    fn scale_by(&self, f: &MultiPoly) -> UniView {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.checked_mul(f).expect("same ring"))
            .collect();
        UniView::from_coeffs(&self.ring, self.var, coeffs)
    }

    /// Positive rational number dividing all coefficients (content of the
    /// whole flat polynomial); 1 for zero.
    fn numeric_content(&self) -> Rat {
        self.reassemble().content()
    }
}

/// Pseudo-remainder: returns `prem` with `lc(g)^(deg f - deg g + 1) * f =
/// q*g + prem`. Requires `deg f >= deg g >= 0` and nonzero `g`.
fn pseudo_rem(f: &UniView, g: &UniView) -> UniView {
    assert!(!g.is_zero());
    assert!(f.degree() >= g.degree());
    let ring = f.ring().clone();
    let var = f.var;
    let lg = g.leading();
    let dg = g.degree() as usize;
    let mut rem = f.coeffs.clone();
    // classic pseudo-division: scale the remainder by lc(g) before each
    // subtraction step so the division stays in the polynomial ring
    let steps = f.degree() - g.degree() + 1;
    let mut performed = 0i64;
    while rem.len() as i64 - 1 >= dg as i64 {
        let top = rem.last().cloned().unwrap_or_else(|| MultiPoly::zero(&ring));
        if top.is_zero() {
            rem.pop();
            continue;
        }
        // rem <- lc(g)*rem - top * x^(dr-dg) * g
        let dr = rem.len() - 1;
        for c in rem.iter_mut() {
            *c = c.checked_mul(&lg).expect("same ring");
        }
        for (k, gc) in g.coeffs.iter().enumerate() {
            let idx = dr - dg + k;
            let sub = top.checked_mul(gc).expect("same ring");
            rem[idx] = rem[idx].checked_sub(&sub).expect("same ring");
        }
        debug_assert!(rem.last().unwrap().is_zero());
        rem.pop();
        performed += 1;
    }
    // make the scaling exponent deterministic: bring it up to the standard
    // lc(g)^(deg f - deg g + 1) so the identity above holds exactly
    let mut out = UniView::from_coeffs(&ring, var, rem);
    while performed < steps {
        out = out.scale_by(&lg);
        performed += 1;
    }
    out
}

/// Exact univariate division of views: `f / g` when the division has no
/// remainder (used for quotients by a known divisor).
fn uni_exact_div(f: &UniView, g: &UniView) -> Result<UniView, PolyError> {
    if g.is_zero() {
        return Err(PolyError::DivisionByZero);
    }
    let fm = f.reassemble();
    let gm = g.reassemble();
    let q = fm.exact_divide(&gm)?;
    Ok(UniView::of(&q, f.var))
}

/// Strip positive numeric content from every coefficient, keeping the sign.
fn strip_numeric_content(f: &UniView) -> UniView {
    let c = f.numeric_content();
    if c.is_one() || f.is_zero() {
        return f.clone();
    }
    let inv = MultiPoly::constant(f.ring(), c.recip());
    f.scale_by(&inv)
}

/// Polynomial gcd of `f` and `g` in the main variable, computed with a
/// primitive pseudo-remainder sequence. The result is defined up to a factor
/// from the coefficient ring.
fn prs_gcd(f: &UniView, g: &UniView) -> UniView {
    let mut a = strip_numeric_content(f);
    let mut b = strip_numeric_content(g);
    if a.degree() < b.degree() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_zero() {
        let r = if b.degree() == 0 {
            // a nonzero constant (in the main variable) divides everything
            UniView::from_coeffs(a.ring(), a.var, vec![])
        } else {
            pseudo_rem(&a, &b)
        };
        a = b;
        b = strip_numeric_content(&r);
    }
    strip_numeric_content(&a)
}

/// The squarefree part of `f` with respect to its main variable: `f / gcd(f,
/// f')`, defined up to a nonzero factor free of the main variable. Numeric
/// content is stripped from the answer. Errors on zero input and on views of
/// degree < 1.
pub fn squarefree_part(f: &UniView) -> Result<UniView, PolyError> {
    if f.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    if f.degree() < 1 {
        return Err(PolyError::DegreeTooLow {
            var: f.ring().name(f.var).to_string(),
            found: f.degree(),
            need: 1,
        });
    }
    let fp = strip_numeric_content(f);
    let g = prs_gcd(&fp, &fp.derivative());
    if g.degree() <= 0 {
        // already squarefree in the main variable
        return Ok(fp);
    }
    // exact pseudo-quotient: lc(g)^(deg f - deg g + 1) * f = q * g exactly
    // when g | f, and g = gcd(f, f') always divides f
    let steps = (fp.degree() - g.degree() + 1) as u32;
    let m = g.leading().pow(steps);
    let scaled = fp.scale_by(&m);
    let q = uni_exact_div(&scaled, &g)?;
    Ok(strip_numeric_content(&q))
}
