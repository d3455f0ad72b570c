//! First variations of discriminants.
//!
//! For the generic monic polynomial `x^n + a_{n-1} x^{n-1} + … + a_0` the
//! discriminant D is a polynomial in the formal coefficients `a_i`. Moving
//! the coefficients along a direction `(b_0, …, b_{n-1})` changes D at the
//! first-order rate
//!
//! ```text
//! δD = Σ_i (∂D/∂a_i)(a) · b_i
//! ```
//!
//! This module computes the generic discriminant together with all of its
//! partials (cached per degree), evaluates δD for concrete numeric
//! polynomial/variation pairs, and checks the scaling law that relates the
//! discriminant of a non-monic polynomial to that of its monic rescaling:
//! `D(p) = lc^(2n-2) · D(p/lc)`.

use std::sync::OnceLock;

use num_traits::{One, Zero};

use crate::elim::{discriminant_wrt, ElimError};
use crate::poly::{MultiPoly, PolyError};
use crate::rat::{rat_pow, Rat};
use crate::ring::Ring;
use crate::univar::UniView;

pub const GENERIC_DEGREE_MIN: usize = 2;
pub const GENERIC_DEGREE_MAX: usize = 6;

/// Discriminant of the generic monic polynomial of one degree, with all
/// coefficient partials.
#[derive(Debug)]
pub struct GenericDiscriminant {
    degree: usize,
    ring: Ring,
    disc: MultiPoly,
    partials: Vec<MultiPoly>,
}

impl GenericDiscriminant {
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Ring {a0, …, a_{n-1}, x}; the discriminant itself is free of x.
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn disc(&self) -> &MultiPoly {
        &self.disc
    }

    /// Slot i holds ∂D/∂a_i.
    pub fn partials(&self) -> &[MultiPoly] {
        &self.partials
    }

    fn point(&self, coeffs: &[Rat]) -> Vec<Rat> {
        debug_assert_eq!(coeffs.len(), self.degree);
        let mut point = coeffs.to_vec();
        point.push(Rat::zero()); // the x slot, unused
        point
    }

    /// D evaluated at concrete low coefficients a_0..a_{n-1}.
    pub fn disc_at(&self, coeffs: &[Rat]) -> Rat {
        self.disc.eval_rat(&self.point(coeffs))
    }

    /// ∂D/∂a_i evaluated at concrete low coefficients.
    pub fn partial_at(&self, i: usize, coeffs: &[Rat]) -> Rat {
        self.partials[i].eval_rat(&self.point(coeffs))
    }
}

fn build_generic(n: usize) -> GenericDiscriminant {
    let mut names: Vec<String> = (0..n).map(|i| format!("a{i}")).collect();
    names.push("x".to_string());
    let ring = Ring::new(names).expect("generated names are valid");
    let x = ring.len() - 1;
    let mut p = MultiPoly::variable(&ring, x).pow(n as u32);
    for i in 0..n {
        let term = MultiPoly::variable(&ring, i)
            .checked_mul(&MultiPoly::variable(&ring, x).pow(i as u32))
            .expect("same ring");
        p = p.checked_add(&term).expect("same ring");
    }
    let disc = discriminant_wrt(&p, x).expect("generic monic polynomial has degree n in x");
    let partials = (0..n).map(|i| disc.partial_derivative(i)).collect();
    GenericDiscriminant { degree: n, ring, disc, partials }
}

/// The cached generic discriminant for `2 ≤ n ≤ 6`.
pub fn generic_discriminant(n: usize) -> Result<&'static GenericDiscriminant, ElimError> {
    if !(GENERIC_DEGREE_MIN..=GENERIC_DEGREE_MAX).contains(&n) {
        return Err(ElimError::UnsupportedDegree {
            n: n as i64,
            min: GENERIC_DEGREE_MIN as i64,
            max: GENERIC_DEGREE_MAX as i64,
        });
    }
    const NEW: OnceLock<GenericDiscriminant> = OnceLock::new();
    static CACHE: [OnceLock<GenericDiscriminant>; GENERIC_DEGREE_MAX - GENERIC_DEGREE_MIN + 1] =
        [NEW; GENERIC_DEGREE_MAX - GENERIC_DEGREE_MIN + 1];
    Ok(CACHE[n - GENERIC_DEGREE_MIN].get_or_init(|| build_generic(n)))
}

/// A monic numeric polynomial together with a first-variation direction.
#[derive(Clone, Debug)]
pub struct VariationPair {
    var: usize,
    /// a[i] is the coefficient of x^i in p; a[n] = 1.
    a: Vec<Rat>,
    /// b[i] is the coefficient of x^i in δp; degree < n.
    b: Vec<Rat>,
    p: MultiPoly,
    delta_p: MultiPoly,
}

impl VariationPair {
    /// `p` must be monic of degree n ≥ 2 in a single variable; `delta_p`
    /// must live in the same ring, involve at most that variable, and have
    /// degree < n.
    pub fn new(p: MultiPoly, delta_p: MultiPoly) -> Result<VariationPair, ElimError> {
        if p.ring() != delta_p.ring() {
            return Err(ElimError::Poly(PolyError::RingMismatch {
                left: p.ring().to_string(),
                right: delta_p.ring().to_string(),
            }));
        }
        let used = p.vars_present();
        if used.len() != 1 {
            return Err(ElimError::Poly(PolyError::NotUnivariate {
                found: used.iter().map(|&i| p.ring().name(i).to_string()).collect(),
            }));
        }
        let var = used[0];
        let a = p.to_univariate(var)?;
        let n = a.len() - 1;
        if n < 2 {
            return Err(ElimError::Poly(PolyError::DegreeTooLow {
                var: p.ring().name(var).to_string(),
                found: n as i64,
                need: 2,
            }));
        }
        if !a[n].is_one() {
            return Err(ElimError::NotMonic { var: p.ring().name(var).to_string() });
        }
        let mut b = delta_p.to_univariate(var)?;
        if b.len() > n {
            return Err(ElimError::VariationDegreeTooHigh {
                found: b.len() as i64 - 1,
                max: n as i64 - 1,
            });
        }
        b.resize(n, Rat::zero());
        Ok(VariationPair { var, a, b, p, delta_p })
    }

    pub fn degree(&self) -> usize {
        self.a.len() - 1
    }

    pub fn p(&self) -> &MultiPoly {
        &self.p
    }

    pub fn delta_p(&self) -> &MultiPoly {
        &self.delta_p
    }

    pub fn var(&self) -> usize {
        self.var
    }
}

/// The first variation of the discriminant:
/// `δD = Σ_i (∂D/∂a_i at p's coefficients) · b_i`, exact.
pub fn delta_discriminant(pair: &VariationPair) -> Result<Rat, ElimError> {
    let n = pair.degree();
    let table = generic_discriminant(n)?;
    let coeffs = &pair.a[..n];
    let mut acc = Rat::zero();
    for (i, b) in pair.b.iter().enumerate() {
        if b.is_zero() {
            continue;
        }
        acc += table.partial_at(i, coeffs) * b;
    }
    Ok(acc)
}

/// Check the scaling law `D(p) = lc(sample)^(2n-2) · D(monic p)` at one
/// specialization point of the coefficient parameter.
///
/// `p` is a view in the main variable whose coefficients involve at most the
/// single parameter `y_var`; `sample` is the value substituted for that
/// parameter. The left side specializes the symbolic discriminant; the right
/// side specializes first, rescales to monic over the rationals, and takes
/// the discriminant there.
pub fn check_leading_coeff_relation(
    p: &UniView,
    y_var: usize,
    sample: &Rat,
) -> Result<bool, ElimError> {
    let n = p.degree();
    if n < 2 {
        return Err(ElimError::Poly(PolyError::DegreeTooLow {
            var: p.ring().name(p.var()).to_string(),
            found: n,
            need: 2,
        }));
    }
    let flat = p.reassemble();
    let main = p.var();
    for v in flat.vars_present() {
        if v != main && v != y_var {
            return Err(ElimError::Poly(PolyError::NotUnivariate {
                found: vec![flat.ring().name(v).to_string()],
            }));
        }
    }
    let lc_at = p
        .leading()
        .substitute_rat(y_var, sample)
        .as_constant()
        .expect("coefficients involve only y_var");
    if lc_at.is_zero() {
        return Err(ElimError::LeadingCoefficientVanished {
            var: flat.ring().name(y_var).to_string(),
            at: crate::rat::rat_str(sample),
        });
    }

    let left = discriminant_wrt(&flat, main)?
        .substitute_rat(y_var, sample)
        .as_constant()
        .expect("discriminant is free of the main variable");

    let specialized = flat.substitute_rat(y_var, sample);
    let monic = specialized.scaled(&lc_at.recip());
    let d_monic = discriminant_wrt(&monic, main)?
        .as_constant()
        .expect("specialized discriminant is constant");
    let right = rat_pow(&lc_at, (2 * n - 2) as u32) * d_monic;
    Ok(left == right)
}
