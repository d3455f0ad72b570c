//! Resultants, discriminants, and the iterated multiple discriminant.
//!
//! The univariate discriminant of p (degree n ≥ 2 in the chosen variable) is
//!
//! ```text
//! D(p) = (-1)^(n(n-1)/2) * Res(p, p') / lc(p)
//! ```
//!
//! computed from the Sylvester matrix of p and p'. Degree-1 polynomials have
//! discriminant 1 by convention. The multiple discriminant of a multivariate
//! polynomial folds this operation over an ordered list of variables, from
//! the innermost (last listed) outward.

use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::poly::{MultiPoly, PolyError};
use crate::rat::Rat;
use crate::ring::Ring;
use crate::univar::{squarefree_part, UniView};

/// Errors from elimination routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ElimError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("variable {var} does not occur in the polynomial")]
    VariableAbsent { var: String },
    #[error("discriminant vanished identically at stage {stage} while eliminating {var}")]
    Degenerate { stage: usize, var: String, input: Box<MultiPoly> },
    #[error("degree {n} is outside the supported range {min}..={max}")]
    UnsupportedDegree { n: i64, min: i64, max: i64 },
    #[error("polynomial must be monic in {var}")]
    NotMonic { var: String },
    #[error("variation degree {found} exceeds the maximum {max}")]
    VariationDegreeTooHigh { found: i64, max: i64 },
    #[error("leading coefficient vanishes at {var} = {at}")]
    LeadingCoefficientVanished { var: String, at: String },
    #[error("computation canceled")]
    Canceled,
}

/// Dense square matrix of polynomials over one ring.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyMatrix {
    size: usize,
    ring: Ring,
    entries: Vec<MultiPoly>,
}

impl PolyMatrix {
    pub fn zero(ring: &Ring, size: usize) -> PolyMatrix {
        PolyMatrix {
            size,
            ring: ring.clone(),
            entries: vec![MultiPoly::zero(ring); size * size],
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn at(&self, row: usize, col: usize) -> &MultiPoly {
        &self.entries[row * self.size + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: MultiPoly) {
        assert_eq!(value.ring(), &self.ring, "matrix entries share one ring");
        self.entries[row * self.size + col] = value;
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.size {
            self.entries.swap(a * self.size + j, b * self.size + j);
        }
    }
}

/// Sylvester matrix of p and q with respect to their shared main variable:
/// a square matrix of size deg p + deg q. The first deg q rows carry p's
/// coefficients in descending order (row i shifted i columns right), the
/// remaining deg p rows carry q's the same way.
pub fn sylvester_matrix(p: &UniView, q: &UniView) -> Result<PolyMatrix, ElimError> {
    if p.is_zero() || q.is_zero() {
        return Err(ElimError::Poly(PolyError::ZeroPolynomial));
    }
    if p.degree() == 0 && q.degree() == 0 {
        return Err(ElimError::Poly(PolyError::DegreeTooLow {
            var: p.ring().name(p.var()).to_string(),
            found: 0,
            need: 1,
        }));
    }
    let m = p.degree() as usize;
    let k = q.degree() as usize;
    let size = m + k;
    let mut s = PolyMatrix::zero(p.ring(), size);
    for row in 0..k {
        for (t, idx) in (0..=m).rev().enumerate() {
            s.set(row, row + t, p.coeff(idx));
        }
    }
    for row in 0..m {
        for (t, idx) in (0..=k).rev().enumerate() {
            s.set(k + row, row + t, q.coeff(idx));
        }
    }
    Ok(s)
}

fn minor_expansion(m: &PolyMatrix) -> MultiPoly {
    let n = m.size;
    match n {
        0 => MultiPoly::one(&m.ring),
        1 => m.at(0, 0).clone(),
        2 => &(m.at(0, 0) * m.at(1, 1)) - &(m.at(0, 1) * m.at(1, 0)),
        _ => {
            let mut acc = MultiPoly::zero(&m.ring);
            for col in 0..n {
                let c = m.at(0, col);
                if c.is_zero() {
                    continue;
                }
                let mut sub = PolyMatrix::zero(&m.ring, n - 1);
                for i in 1..n {
                    let mut jj = 0;
                    for j in 0..n {
                        if j == col {
                            continue;
                        }
                        sub.set(i - 1, jj, m.at(i, j).clone());
                        jj += 1;
                    }
                }
                let term = c * &minor_expansion(&sub);
                acc = if col % 2 == 0 { &acc + &term } else { &acc - &term };
            }
            acc
        }
    }
}

fn bareiss_symbolic(m: &PolyMatrix) -> MultiPoly {
    let n = m.size;
    if n == 0 {
        return MultiPoly::one(&m.ring);
    }
    let mut w = m.clone();
    let mut sign = 1i32;
    let mut prev = MultiPoly::one(&m.ring);
    for k in 0..n - 1 {
        if w.at(k, k).is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !w.at(r, k).is_zero()) else {
                return MultiPoly::zero(&m.ring);
            };
            w.swap_rows(k, r);
            sign = -sign;
        }
        let pivot = w.at(k, k).clone();
        for i in k + 1..n {
            let lead = w.at(i, k).clone();
            for j in k + 1..n {
                let num = &(w.at(i, j) * &pivot) - &(&lead * w.at(k, j));
                let val = num
                    .exact_divide(&prev)
                    .expect("Bareiss updates divide exactly in an integral domain");
                w.set(i, j, val);
            }
            w.set(i, k, MultiPoly::zero(&m.ring));
        }
        prev = pivot;
    }
    let det = w.at(n - 1, n - 1).clone();
    if sign < 0 {
        -&det
    } else {
        det
    }
}

/// Determinant by fraction-free (Bareiss) elimination, with direct cofactor
/// expansion for sizes up to 4.
pub fn determinant(m: &PolyMatrix) -> MultiPoly {
    if m.size <= 4 {
        minor_expansion(m)
    } else {
        bareiss_symbolic(m)
    }
}

/// Determinant of an all-constant matrix: rows are scaled to integers, the
/// integer Bareiss elimination runs over `BigInt`, and the scale is divided
/// back out.
fn det_rational(rows: &[Vec<Rat>]) -> Rat {
    let n = rows.len();
    if n == 0 {
        return Rat::one();
    }
    let mut scale = BigInt::one();
    let mut w: Vec<Vec<BigInt>> = Vec::with_capacity(n);
    for row in rows {
        let mut l = BigInt::one();
        for e in row {
            l = l.lcm(e.denom());
        }
        scale *= &l;
        w.push(
            row.iter()
                .map(|e| (e * Rat::from_integer(l.clone())).to_integer())
                .collect(),
        );
    }
    let mut sign = 1i32;
    let mut prev = BigInt::one();
    for k in 0..n.saturating_sub(1) {
        if w[k][k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !w[r][k].is_zero()) else {
                return Rat::zero();
            };
            w.swap(k, r);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &w[i][j] * &w[k][k] - &w[i][k] * &w[k][j];
                debug_assert!((&num % &prev).is_zero());
                w[i][j] = num / &prev;
            }
            w[i][k] = BigInt::zero();
        }
        prev = w[k][k].clone();
    }
    let det = Rat::new(w[n - 1][n - 1].clone(), scale);
    if sign < 0 {
        -det
    } else {
        det
    }
}

const NEWTON_NODE_LIMIT: u32 = 1 << 20;

fn node(i: usize) -> Rat {
    // 0, 1, -1, 2, -2, ...
    let k = (i as i64 + 1) / 2;
    Rat::from_integer(if i % 2 == 1 { k } else { -k }.into())
}

/// Determinant via evaluation and Newton interpolation along `var`. Exact:
/// the determinant is a polynomial of degree at most Σ_rows max_cols
/// deg_var(entry) in `var`, and that many + 1 nodes are used.
fn det_by_interpolation(m: &PolyMatrix, var: usize) -> MultiPoly {
    let n = m.size;
    let mut bound: i64 = 0;
    for i in 0..n {
        let row_max = (0..n).map(|j| m.at(i, j).degree_in(var)).max().unwrap_or(-1);
        if row_max < 0 {
            return MultiPoly::zero(&m.ring); // a zero row
        }
        bound += row_max;
    }
    let samples = (bound + 1) as usize;
    assert!(samples as u32 <= NEWTON_NODE_LIMIT, "interpolation degree bound too large");

    let mut nodes: Vec<Rat> = Vec::with_capacity(samples);
    let mut values: Vec<MultiPoly> = Vec::with_capacity(samples);
    for s in 0..samples {
        let x = node(s);
        let mut inst = PolyMatrix::zero(&m.ring, n);
        for i in 0..n {
            for j in 0..n {
                inst.set(i, j, m.at(i, j).substitute_rat(var, &x));
            }
        }
        nodes.push(x);
        values.push(det_smart(&inst));
    }

    // Newton divided differences; coefficients live in the polynomial ring.
    let mut dd = values;
    for level in 1..samples {
        for i in (level..samples).rev() {
            let num = &dd[i] - &dd[i - 1];
            let den = &nodes[i] - &nodes[i - level];
            dd[i] = num.scaled(&den.recip());
        }
    }
    let xvar = MultiPoly::variable(&m.ring, var);
    let mut acc = MultiPoly::zero(&m.ring);
    let mut basis = MultiPoly::one(&m.ring);
    for (i, coeff) in dd.iter().enumerate() {
        acc = &acc + &(coeff * &basis);
        if i + 1 < samples {
            let shift = &xvar - &MultiPoly::constant(&m.ring, nodes[i].clone());
            basis = &basis * &shift;
        }
    }
    acc
}

/// Adaptive exact determinant: rational elimination for constant matrices,
/// cofactor expansion for small sizes, evaluation/interpolation when few
/// variables are active, symbolic Bareiss otherwise. Always agrees with
/// [`determinant`].
pub fn det_smart(m: &PolyMatrix) -> MultiPoly {
    let n = m.size;
    let mut active: Vec<usize> = Vec::new();
    let mut all_const = true;
    for e in &m.entries {
        if !e.is_constant() {
            all_const = false;
            for v in e.vars_present() {
                if !active.contains(&v) {
                    active.push(v);
                }
            }
        }
    }
    if all_const {
        let rows: Vec<Vec<Rat>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| m.at(i, j).as_constant().expect("constant entry"))
                    .collect()
            })
            .collect();
        return MultiPoly::constant(&m.ring, det_rational(&rows));
    }
    if n <= 4 {
        return minor_expansion(m);
    }
    if n >= 6 && active.len() <= 2 {
        // interpolate along the most prevalent variable
        let var = *active
            .iter()
            .max_by_key(|&&v| {
                m.entries
                    .iter()
                    .map(|e| e.degree_in(v).max(0))
                    .sum::<i64>()
            })
            .expect("at least one active variable");
        return det_by_interpolation(m, var);
    }
    bareiss_symbolic(m)
}

/// Resultant of p and q with respect to `var`: the determinant of their
/// Sylvester matrix. Errors if either polynomial is zero.
pub fn resultant(p: &MultiPoly, q: &MultiPoly, var: usize) -> Result<MultiPoly, ElimError> {
    let pv = UniView::of(p, var);
    let qv = UniView::of(q, var);
    let s = sylvester_matrix(&pv, &qv)?;
    Ok(det_smart(&s))
}

/// Discriminant with respect to `var`:
/// `(-1)^(n(n-1)/2) * Res(p, ∂p/∂var) / lc_var(p)` for degree n ≥ 2, and 1
/// for degree 1. Errors when `var` does not occur.
pub fn discriminant_wrt(p: &MultiPoly, var: usize) -> Result<MultiPoly, ElimError> {
    let view = UniView::of(p, var);
    let n = view.degree();
    if n <= 0 {
        return Err(ElimError::VariableAbsent {
            var: p.ring().name(var).to_string(),
        });
    }
    if n == 1 {
        return Ok(MultiPoly::one(p.ring()));
    }
    let s = sylvester_matrix(&view, &view.derivative())?;
    let res = det_smart(&s);
    let quot = res
        .exact_divide(&view.leading())
        .expect("the leading coefficient divides Res(p, p')");
    if (n * (n - 1) / 2) % 2 == 1 {
        Ok(-&quot)
    } else {
        Ok(quot)
    }
}

/// Options for the multiple-discriminant fold.
#[derive(Clone, Default)]
pub struct MdOptions {
    /// Replace each stage's polynomial by its squarefree part (in the stage
    /// variable) before taking the discriminant. Rescues inputs with
    /// repeated factors, at the cost of scaling the result by a nonzero
    /// factor.
    pub squarefree_each_stage: bool,
    /// Cooperative cancellation flag, checked between stages.
    pub cancel: Option<Arc<AtomicBool>>,
}

impl MdOptions {
    pub fn squarefree() -> MdOptions {
        MdOptions { squarefree_each_stage: true, cancel: None }
    }
}

/// Result of the multiple-discriminant fold.
#[derive(Clone, Debug)]
pub struct MdResult {
    pub value: MultiPoly,
    /// Human-readable notes about skipped or degree-1 stages.
    pub warnings: Vec<String>,
}

/// Iterated discriminant of `p` over the variables named in `order`,
/// eliminating the *last* listed variable first:
/// `multiple_discriminant(p, ["x", "y"], ..)` computes `D_x(D_y(p))`.
///
/// Stage behavior, for stage polynomial g and stage variable t:
/// - deg_t g ≥ 2: g becomes its discriminant with respect to t; an
///   identically zero discriminant aborts with [`ElimError::Degenerate`]
///   (retrying with `squarefree_each_stage` usually resolves it).
/// - deg_t g = 1: the discriminant convention would give the constant 1 and
///   erase all structure, so g becomes its leading coefficient in t instead,
///   with a warning.
/// - deg_t g = 0: the stage is skipped, with a warning.
pub fn multiple_discriminant(
    p: &MultiPoly,
    order: &[String],
    opts: &MdOptions,
) -> Result<MdResult, ElimError> {
    let ring = p.ring();
    let mut indices = Vec::with_capacity(order.len());
    for name in order {
        let idx = ring.index_of(name).ok_or_else(|| PolyError::UnknownVariable {
            name: name.clone(),
            ring: ring.to_string(),
        })?;
        if indices.contains(&idx) {
            return Err(ElimError::Poly(PolyError::DuplicateVar(name.clone())));
        }
        indices.push(idx);
    }

    let mut current = p.clone();
    let mut warnings = Vec::new();
    for (stage, &var) in indices.iter().rev().enumerate() {
        let stage_no = stage + 1;
        if let Some(flag) = &opts.cancel {
            if flag.load(Ordering::Relaxed) {
                return Err(ElimError::Canceled);
            }
        }
        let name = ring.name(var);
        let mut deg = current.degree_in(var);
        if deg <= 0 {
            warnings.push(format!(
                "stage {stage_no}: {name} does not occur; stage skipped"
            ));
            continue;
        }
        if opts.squarefree_each_stage && deg >= 2 {
            let reduced = squarefree_part(&UniView::of(&current, var))?.reassemble();
            let new_deg = reduced.degree_in(var);
            if new_deg < deg {
                warnings.push(format!(
                    "stage {stage_no}: squarefree reduction lowered the degree in {name} from {deg} to {new_deg}"
                ));
            }
            current = reduced;
            deg = new_deg;
        }
        if deg == 1 {
            warnings.push(format!(
                "stage {stage_no}: degree in {name} is 1; continuing with its leading coefficient"
            ));
            current = UniView::of(&current, var).leading();
            continue;
        }
        let d = discriminant_wrt(&current, var)?;
        if d.is_zero() {
            return Err(ElimError::Degenerate {
                stage: stage_no,
                var: name.to_string(),
                input: Box::new(current),
            });
        }
        current = d;
    }
    Ok(MdResult { value: current, warnings })
}
