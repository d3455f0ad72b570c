//! Floating-point verification layer.
//!
//! Everything exact lives elsewhere; this module answers one question with
//! honest floating point: do the critical values that a numeric method can
//! actually find all appear among the exact roots of F(v)? It provides
//! polynomial root finding (simultaneous Aberth-style iteration), a
//! multistart Newton search for critical points of f, the containment check,
//! and a product-of-root-differences discriminant as an independent numeric
//! cross-check.

use num_complex::Complex64;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::critvals::{CriticalValuePolynomial, CriticalValueProblem};
use crate::poly::{MultiPoly, PolyError};
use crate::rat::rat_to_f64;
use crate::roots::{IsolatedRoot, RealRoots};

/// Relative/absolute tolerance for matching a numeric critical value to an
/// exact root of F.
pub const MATCH_TOL: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NumericError {
    #[error("numeric root finding needs degree at least 1, got {0}")]
    DegreeTooLow(i64),
    #[error("coefficients overflow floating point")]
    Overflow,
    #[error("polynomial must be monic")]
    NotMonic,
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Search/convergence parameters for the numeric oracle.
#[derive(Clone, Debug)]
pub struct OracleConfig {
    pub box_radius: f64,
    pub grid_per_axis: usize,
    pub newton_tol: f64,
    pub max_steps: usize,
}

impl OracleConfig {
    /// Desk-scale defaults, keyed to the number of variables: a 7-per-axis
    /// grid through 2 variables, 5 per axis beyond that.
    pub fn default_for(nvars: usize) -> OracleConfig {
        OracleConfig {
            box_radius: 8.0,
            grid_per_axis: if nvars <= 2 { 7 } else { 5 },
            newton_tol: 1e-10,
            max_steps: 60,
        }
    }
}

/// A numerically found critical point of f.
#[derive(Clone, Debug)]
pub struct NumericCriticalPoint {
    /// One coordinate per active variable of f, in ring order.
    pub coordinates: Vec<f64>,
    /// f at the point.
    pub value: f64,
    /// max |∂f/∂x_i| at the point.
    pub residual: f64,
}

/// Outcome of the multistart search.
#[derive(Clone, Debug)]
pub struct CriticalPointSearch {
    pub points: Vec<NumericCriticalPoint>,
    pub diverged_starts: usize,
    pub total_starts: usize,
    /// Standing limitation of the method, repeated into every containment
    /// report: the search box can miss critical points outside it.
    pub caveat: String,
}

/// Verdict of checking numeric critical values against the exact roots.
#[derive(Clone, Debug)]
pub struct ContainmentReport {
    pub matched: Vec<(NumericCriticalPoint, IsolatedRoot)>,
    /// Numeric critical values with no exact root nearby — containment
    /// violations. Must be empty.
    pub unmatched_points: Vec<NumericCriticalPoint>,
    /// Exact roots with no numeric witness — allowed.
    pub spurious_roots: Vec<IsolatedRoot>,
    pub diverged_starts: usize,
    pub total_starts: usize,
    pub caveat: String,
}

impl ContainmentReport {
    pub fn violations(&self) -> usize {
        self.unmatched_points.len()
    }
}

fn horner_complex(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::zero();
    let mut dp = Complex64::zero();
    for c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

fn float_coeffs(p: &MultiPoly) -> Result<(Vec<f64>, usize), NumericError> {
    let used = p.vars_present();
    if used.len() > 1 {
        return Err(NumericError::Poly(PolyError::NotUnivariate {
            found: used.iter().map(|&i| p.ring().name(i).to_string()).collect(),
        }));
    }
    let Some(&var) = used.first() else {
        // constant polynomial: degree 0 (or none at all for zero)
        let coeffs = match p.as_constant() {
            Some(c) if !c.is_zero() => vec![rat_to_f64(&c)],
            _ => vec![],
        };
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(NumericError::Overflow);
        }
        return Ok((coeffs, 0));
    };
    let exact = p.to_univariate(var)?;
    let coeffs: Vec<f64> = exact.iter().map(rat_to_f64).collect();
    if coeffs.iter().any(|c| !c.is_finite()) {
        return Err(NumericError::Overflow);
    }
    Ok((coeffs, var))
}

/// All complex roots of a univariate polynomial, deterministically ordered
/// by (re, im). Zero roots are deflated exactly; degree ≤ 2 uses closed
/// forms; higher degrees run a simultaneous Aberth-style iteration with a
/// Newton polish.
pub fn numeric_roots(p: &MultiPoly) -> Result<Vec<Complex64>, NumericError> {
    let (coeffs, _) = float_coeffs(p)?;
    let deg = coeffs.len() as i64 - 1;
    if deg < 1 {
        return Err(NumericError::DegreeTooLow(deg));
    }
    if coeffs.last().copied() == Some(0.0) {
        return Err(NumericError::Overflow); // leading coefficient underflowed
    }
    let zero_mult = coeffs.iter().take_while(|c| **c == 0.0).count();
    let mut roots = vec![Complex64::zero(); zero_mult];
    let reduced = &coeffs[zero_mult..];
    roots.extend(nonzero_roots(reduced));
    roots.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    Ok(roots)
}

fn nonzero_roots(coeffs: &[f64]) -> Vec<Complex64> {
    let n = coeffs.len() - 1;
    match n {
        0 => vec![],
        1 => vec![Complex64::new(-coeffs[0] / coeffs[1], 0.0)],
        2 => {
            let (a, b, c) = (coeffs[2], coeffs[1], coeffs[0]);
            let disc = Complex64::new(b * b - 4.0 * a * c, 0.0).sqrt();
            // avoid cancellation: pick the large-magnitude branch first
            let q = if b >= 0.0 { -(Complex64::new(b, 0.0) + disc) } else { -(Complex64::new(b, 0.0) - disc) };
            let q = q * 0.5;
            if q.norm() == 0.0 {
                vec![Complex64::zero(), Complex64::zero()]
            } else {
                vec![q / a, Complex64::new(c, 0.0) / q]
            }
        }
        _ => aberth(coeffs),
    }
}

fn aberth(coeffs: &[f64]) -> Vec<Complex64> {
    let n = coeffs.len() - 1;
    let lc = coeffs[n];
    let monic: Vec<Complex64> = coeffs
        .iter()
        .map(|c| Complex64::new(c / lc, 0.0))
        .collect();
    let bound = 1.0 + monic[..n].iter().map(|c| c.norm()).fold(0.0, f64::max);
    let radius = monic[0].norm().powf(1.0 / n as f64).clamp(0.25, bound);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.3927;
            radius * Complex64::new(theta.cos(), theta.sin())
        })
        .collect();

    for _ in 0..400 {
        let mut max_step = 0.0f64;
        for k in 0..n {
            let (pz, dpz) = horner_complex(&monic, z[k]);
            if pz.norm() == 0.0 {
                continue;
            }
            if dpz.norm() == 0.0 {
                z[k] += Complex64::new(1e-4, 1e-4);
                max_step = f64::MAX;
                continue;
            }
            let newton = pz / dpz;
            let mut repulsion = Complex64::zero();
            for j in 0..n {
                if j != k {
                    let d = z[k] - z[j];
                    if d.norm() > 1e-300 {
                        repulsion += d.inv();
                    } else {
                        repulsion += Complex64::new(1e150, 0.0);
                    }
                }
            }
            let denom = Complex64::one() - newton * repulsion;
            let w = if denom.norm() > 1e-300 { newton / denom } else { newton };
            z[k] -= w;
            max_step = max_step.max(w.norm() / (1.0 + z[k].norm()));
        }
        if max_step < 1e-14 {
            break;
        }
    }
    // Newton polish (no-op on clustered roots, sharpens the simple ones)
    for zk in z.iter_mut() {
        for _ in 0..3 {
            let (pz, dpz) = horner_complex(&monic, *zk);
            if dpz.norm() == 0.0 {
                break;
            }
            let step = pz / dpz;
            if !step.re.is_finite() || !step.im.is_finite() {
                break;
            }
            let candidate = *zk - step;
            let (pnew, _) = horner_complex(&monic, candidate);
            if pnew.norm() <= pz.norm() {
                *zk = candidate;
            } else {
                break;
            }
        }
    }
    z
}

/// Gaussian elimination with partial pivoting; None on (near-)singular.
fn solve_linear(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    for k in 0..n {
        let piv = (k..n).max_by(|&i, &j| a[i][k].abs().total_cmp(&a[j][k].abs()))?;
        if a[piv][k].abs() < 1e-12 {
            return None;
        }
        a.swap(k, piv);
        b.swap(k, piv);
        for i in k + 1..n {
            let m = a[i][k] / a[k][k];
            for j in k..n {
                a[i][j] -= m * a[k][j];
            }
            b[i] -= m * b[k];
        }
    }
    let mut x = vec![0.0; n];
    for k in (0..n).rev() {
        let mut s = b[k];
        for j in k + 1..n {
            s -= a[k][j] * x[j];
        }
        x[k] = s / a[k][k];
    }
    Some(x)
}

struct GradientSystem {
    ring_len: usize,
    active: Vec<usize>,
    grad: Vec<MultiPoly>,
    hess: Vec<Vec<MultiPoly>>,
}

impl GradientSystem {
    fn new(f: &MultiPoly) -> GradientSystem {
        let active = f.vars_present();
        let grad: Vec<MultiPoly> = active.iter().map(|&v| f.partial_derivative(v)).collect();
        let hess = grad
            .iter()
            .map(|g| active.iter().map(|&v| g.partial_derivative(v)).collect())
            .collect();
        GradientSystem { ring_len: f.ring().len(), active, grad, hess }
    }

    fn full_point(&self, x: &[f64]) -> Vec<f64> {
        let mut full = vec![0.0; self.ring_len];
        for (slot, &var) in self.active.iter().enumerate() {
            full[var] = x[slot];
        }
        full
    }

    fn grad_at(&self, x: &[f64]) -> Vec<f64> {
        let full = self.full_point(x);
        self.grad.iter().map(|g| g.eval_f64(&full)).collect()
    }

    fn hess_at(&self, x: &[f64]) -> Vec<Vec<f64>> {
        let full = self.full_point(x);
        self.hess
            .iter()
            .map(|row| row.iter().map(|h| h.eval_f64(&full)).collect())
            .collect()
    }
}

fn inf_norm(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.abs()))
}

/// Multistart damped Newton on the gradient system ∇f = 0. Starts form a
/// `grid_per_axis`-per-axis lattice over `[-box_radius, box_radius]^n` in
/// the active variables; converged points are deduplicated at L∞ 1e-8 and
/// reported in deterministic (sorted) order. Points that wander outside the
/// box are kept.
pub fn find_critical_points_numeric(f: &MultiPoly, cfg: &OracleConfig) -> CriticalPointSearch {
    let sys = GradientSystem::new(f);
    let n = sys.active.len();
    let caveat = format!(
        "multistart Newton over [-{r}, {r}]^{n} with {g} starts per axis; critical points outside the box (or missed by all starts) are not found",
        r = cfg.box_radius,
        g = cfg.grid_per_axis
    );
    if n == 0 || n > 4 {
        return CriticalPointSearch {
            points: vec![],
            diverged_starts: 0,
            total_starts: 0,
            caveat,
        };
    }

    let g = cfg.grid_per_axis.max(2);
    let axis: Vec<f64> = (0..g)
        .map(|t| -cfg.box_radius + 2.0 * cfg.box_radius * t as f64 / (g - 1) as f64)
        .collect();
    let total_starts = axis.len().pow(n as u32);
    let mut found: Vec<NumericCriticalPoint> = Vec::new();
    let mut diverged = 0usize;

    for start_idx in 0..total_starts {
        let mut x: Vec<f64> = (0..n)
            .map(|d| {
                let mut idx = start_idx;
                for _ in 0..d {
                    idx /= axis.len();
                }
                axis[idx % axis.len()]
            })
            .collect();

        let mut ok = false;
        for _ in 0..cfg.max_steps {
            let gval = sys.grad_at(&x);
            let gnorm = inf_norm(&gval);
            if !gnorm.is_finite() || inf_norm(&x) > 1e8 {
                break;
            }
            if gnorm <= cfg.newton_tol {
                ok = true;
                break;
            }
            let h = sys.hess_at(&x);
            let Some(step) = solve_linear(h, gval.clone()) else {
                break;
            };
            // damped line search on the gradient norm
            let mut lambda = 1.0;
            let mut advanced = false;
            while lambda > 1e-6 {
                let cand: Vec<f64> = x
                    .iter()
                    .zip(&step)
                    .map(|(xi, si)| xi - lambda * si)
                    .collect();
                let cnorm = inf_norm(&sys.grad_at(&cand));
                if cnorm < gnorm || cnorm <= cfg.newton_tol {
                    x = cand;
                    advanced = true;
                    break;
                }
                lambda *= 0.5;
            }
            if !advanced {
                break;
            }
        }

        if ok {
            let full = sys.full_point(&x);
            found.push(NumericCriticalPoint {
                residual: inf_norm(&sys.grad_at(&x)),
                value: f.eval_f64(&full),
                coordinates: x,
            });
        } else {
            diverged += 1;
        }
    }

    // deterministic order, then L∞ dedup keeping the first representative
    found.sort_by(|a, b| {
        for (x, y) in a.coordinates.iter().zip(&b.coordinates) {
            let c = x.total_cmp(y);
            if c != std::cmp::Ordering::Equal {
                return c;
            }
        }
        std::cmp::Ordering::Equal
    });
    let mut points: Vec<NumericCriticalPoint> = Vec::new();
    'next: for cand in found {
        for kept in &points {
            let dist = cand
                .coordinates
                .iter()
                .zip(&kept.coordinates)
                .fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
            if dist <= 1e-8 {
                continue 'next;
            }
        }
        points.push(cand);
    }

    CriticalPointSearch { points, diverged_starts: diverged, total_starts, caveat }
}

/// Check Theorem-style containment: every numeric critical value must sit
/// within `max(MATCH_TOL, MATCH_TOL·|value|)` of some exact root enclosure.
/// Roots nobody matched are reported as spurious (which is legal); numeric
/// values nobody matched are violations.
pub fn verify_containment(
    prob: &CriticalValueProblem,
    _f: &CriticalValuePolynomial,
    roots: &RealRoots,
    cfg: &OracleConfig,
) -> ContainmentReport {
    let search = find_critical_points_numeric(prob.f(), cfg);
    let mut matched: Vec<(NumericCriticalPoint, IsolatedRoot)> = Vec::new();
    let mut unmatched: Vec<NumericCriticalPoint> = Vec::new();
    let mut used = vec![false; roots.roots.len()];

    for point in search.points {
        let tol = MATCH_TOL * 1.0f64.max(point.value.abs());
        let best = roots
            .roots
            .iter()
            .enumerate()
            .map(|(i, r)| (i, r.value.distance_to(point.value)))
            .min_by(|a, b| a.1.total_cmp(&b.1));
        match best {
            Some((i, d)) if d <= tol => {
                used[i] = true;
                matched.push((point, roots.roots[i].clone()));
            }
            _ => unmatched.push(point),
        }
    }

    let spurious = roots
        .roots
        .iter()
        .zip(&used)
        .filter(|(_, u)| !**u)
        .map(|(r, _)| r.clone())
        .collect();

    ContainmentReport {
        matched,
        unmatched_points: unmatched,
        spurious_roots: spurious,
        diverged_starts: search.diverged_starts,
        total_starts: search.total_starts,
        caveat: search.caveat,
    }
}

/// Discriminant of a monic polynomial from its numeric roots:
/// ∏_{i<j} (z_i − z_j)². Real up to floating-point noise; the real part is
/// returned.
pub fn numeric_discriminant_via_roots(p: &MultiPoly) -> Result<f64, NumericError> {
    let (coeffs, _) = float_coeffs(p)?;
    let deg = coeffs.len() as i64 - 1;
    if deg < 2 {
        return Err(NumericError::DegreeTooLow(deg));
    }
    // exact monicity check on the rational leading coefficient
    let used = p.vars_present();
    let var = used.first().copied().unwrap_or(0);
    let exact = p.to_univariate(var)?;
    if !exact.last().expect("nonzero").is_one() {
        return Err(NumericError::NotMonic);
    }
    let roots = numeric_roots(p)?;
    let mut prod = Complex64::one();
    for i in 0..roots.len() {
        for j in i + 1..roots.len() {
            let d = roots[i] - roots[j];
            prod *= d * d;
        }
    }
    Ok(prod.re)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::critvals::{critical_value_polynomial, isolate_real_roots, CriticalValueProblem};
    use crate::parse::parse_poly;

    fn poly(text: &str) -> MultiPoly {
        parse_poly(text).unwrap().0
    }

    fn assert_residual_contract(p: &MultiPoly, roots: &[Complex64]) {
        let (coeffs, _) = float_coeffs(p).unwrap();
        let lc = *coeffs.last().unwrap();
        let deg = coeffs.len() as i32 - 1;
        let cplx: Vec<Complex64> = coeffs.iter().map(|c| Complex64::new(*c, 0.0)).collect();
        for z in roots {
            let (pz, _) = horner_complex(&cplx, *z);
            let bound = 1e-10 * (1.0 + lc.abs()) * 1.0f64.max(z.norm()).powi(deg);
            assert!(
                pz.norm() <= bound,
                "residual {} exceeds {} at {}",
                pz.norm(),
                bound,
                z
            );
        }
    }

    #[test]
    fn roots_of_simple_quadratics() {
        let r = numeric_roots(&poly("x^2 - 1")).unwrap();
        assert!((r[0].re + 1.0).abs() < 1e-12 && r[0].im.abs() < 1e-14);
        assert!((r[1].re - 1.0).abs() < 1e-12 && r[1].im.abs() < 1e-14);

        let r = numeric_roots(&poly("x^2 + 1")).unwrap();
        assert!((r[0].im + 1.0).abs() < 1e-12);
        assert!((r[1].im - 1.0).abs() < 1e-12);
        assert!(r[0].re.abs() < 1e-14 && r[1].re.abs() < 1e-14);
    }

    #[test]
    fn cubic_with_double_root() {
        let p = poly("x^3 - 3*x + 2"); // (x-1)^2 (x+2)
        let r = numeric_roots(&p).unwrap();
        assert_eq!(r.len(), 3);
        assert!((r[0].re + 2.0).abs() < 1e-8);
        assert!((r[1].re - 1.0).abs() < 1e-5);
        assert!((r[2].re - 1.0).abs() < 1e-5);
        assert_residual_contract(&p, &r);
    }

    #[test]
    fn high_degree_residuals() {
        // x^5 - 5x^3 + 4x = x(x-1)(x+1)(x-2)(x+2)
        let p = poly("x^5 - 5*x^3 + 4*x");
        let r = numeric_roots(&p).unwrap();
        assert_eq!(r.len(), 5);
        let expected = [-2.0, -1.0, 0.0, 1.0, 2.0];
        for (z, e) in r.iter().zip(expected) {
            assert!((z.re - e).abs() < 1e-9, "{z} vs {e}");
            assert!(z.im.abs() < 1e-9);
        }
        assert_residual_contract(&p, &r);
    }

    #[test]
    fn degree_zero_is_an_error() {
        assert!(matches!(
            numeric_roots(&poly("7")),
            Err(NumericError::DegreeTooLow(_))
        ));
    }

    #[test]
    fn critical_points_of_cubic() {
        let f = poly("x^3 - 3*x");
        let cfg = OracleConfig::default_for(1);
        let search = find_critical_points_numeric(&f, &cfg);
        assert_eq!(search.points.len(), 2);
        let p0 = &search.points[0];
        let p1 = &search.points[1];
        assert!((p0.coordinates[0] + 1.0).abs() < 1e-8 && (p0.value - 2.0).abs() < 1e-8);
        assert!((p1.coordinates[0] - 1.0).abs() < 1e-8 && (p1.value + 2.0).abs() < 1e-8);
        assert!(p0.residual <= cfg.newton_tol);
    }

    #[test]
    fn critical_points_of_bowl_and_saddle() {
        let cfg = OracleConfig::default_for(2);
        for text in ["x^2 + y^2", "x^2 - y^2"] {
            let search = find_critical_points_numeric(&poly(text), &cfg);
            assert_eq!(search.points.len(), 1, "{text}");
            let p = &search.points[0];
            assert!(p.coordinates.iter().all(|c| c.abs() < 1e-9));
            assert!(p.value.abs() < 1e-9);
        }
    }

    #[test]
    fn containment_on_worked_examples() {
        for (text, expect_matched) in [("x^3 - 3*x", 2), ("x^2 + y^2", 1), ("x^2 - y^2", 1)] {
            let prob = CriticalValueProblem::new(poly(text)).unwrap();
            let fv = critical_value_polynomial(&prob).unwrap();
            let roots = isolate_real_roots(&fv).unwrap();
            let cfg = OracleConfig::default_for(2);
            let report = verify_containment(&prob, &fv, &roots, &cfg);
            assert_eq!(report.violations(), 0, "{text}");
            assert_eq!(report.matched.len(), expect_matched, "{text}");
            assert!(report.caveat.contains("outside the box"));
        }
    }

    #[test]
    fn spurious_roots_are_not_violations() {
        // f = x^4 + x^2: F has real root -1/4 witnessed only by complex
        // critical points; the real search matches 0 and leaves -1/4
        // spurious.
        let prob = CriticalValueProblem::new(poly("x^4 + x^2")).unwrap();
        let fv = critical_value_polynomial(&prob).unwrap();
        let roots = isolate_real_roots(&fv).unwrap();
        let cfg = OracleConfig::default_for(1);
        let report = verify_containment(&prob, &fv, &roots, &cfg);
        assert_eq!(report.violations(), 0);
        assert!(!report.spurious_roots.is_empty());
    }

    #[test]
    fn numeric_discriminant_examples() {
        assert!((numeric_discriminant_via_roots(&poly("x^2 - 1")).unwrap() - 4.0).abs() < 1e-9);
        assert!(numeric_discriminant_via_roots(&poly("x^2 - 2*x + 1")).unwrap().abs() < 1e-9);
        let d = numeric_discriminant_via_roots(&poly("x^3 - 3*x")).unwrap();
        assert!((d - 108.0).abs() / 108.0 < 1e-6);
        assert!(matches!(
            numeric_discriminant_via_roots(&poly("2*x^2 - 1")),
            Err(NumericError::NotMonic)
        ));
    }
}
