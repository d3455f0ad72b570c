//! Property-based checks of the algebraic core: ring axioms, calculus
//! identities, elimination-theory laws, and root-isolation invariants, all
//! exercised through the public API on randomized inputs.

use std::sync::atomic::AtomicBool;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use multidisc::critvals::{critical_value_polynomial, CritError, CriticalValueProblem};
use multidisc::elim::{
    det_smart, determinant, discriminant_wrt, multiple_discriminant, resultant, ElimError,
    MdOptions, PolyMatrix,
};
use multidisc::variation::{delta_discriminant, generic_discriminant, VariationPair};
use multidisc::monomial::Monomial;
use multidisc::parse::parse_in_ring;
use multidisc::poly::MultiPoly;
use multidisc::rat::{rat, rat_int, Rat};
use multidisc::ring::Ring;
use multidisc::roots::{isolate_real_roots_coeffs, simplest_in, RootValue};
use multidisc::univar::UniView;

// ---- data-level strategies (built into polynomials inside each test so
// ---- every operand shares one ring value) ----

type TermData = (Vec<u32>, (i32, u32));

fn term_data(nvars: usize, max_exp: u32) -> impl Strategy<Value = TermData> {
    (
        proptest::collection::vec(0..=max_exp, nvars),
        (-6i32..=6, 1u32..=4),
    )
}

fn poly_data(nvars: usize, max_exp: u32, max_terms: usize) -> impl Strategy<Value = Vec<TermData>> {
    proptest::collection::vec(term_data(nvars, max_exp), 0..=max_terms)
}

fn build(ring: &Ring, data: &[TermData]) -> MultiPoly {
    MultiPoly::from_terms(
        ring,
        data.iter()
            .map(|(exps, (n, d))| (Monomial::new(exps.clone()), rat(*n as i64, *d as i64))),
    )
}

fn small_rat() -> impl Strategy<Value = Rat> {
    (-9i64..=9, 1i64..=8).prop_map(|(n, d)| rat(n, d))
}

// dense univariate helpers over Rat (slot k = coefficient of t^k)

fn dense_mul(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            let slot = &out[i + j] + &(x * y);
            out[i + j] = slot;
        }
    }
    out
}

fn dense_eval(coeffs: &[Rat], at: &Rat) -> Rat {
    let mut acc = Rat::zero();
    for c in coeffs.iter().rev() {
        acc = &acc * at + c;
    }
    acc
}

fn dense_to_poly(ring: &Ring, var: usize, coeffs: &[Rat]) -> MultiPoly {
    MultiPoly::from_terms(
        ring,
        coeffs
            .iter()
            .enumerate()
            .map(|(e, c)| (Monomial::of_var(ring.len(), var, e as u32), c.clone())),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn ring_axioms(
        a in poly_data(3, 3, 4),
        b in poly_data(3, 3, 4),
        c in poly_data(3, 3, 4),
    ) {
        let ring = Ring::of(&["x", "y", "z"]);
        let (a, b, c) = (build(&ring, &a), build(&ring, &b), build(&ring, &c));
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a - &a, MultiPoly::zero(&ring));
        prop_assert_eq!(&a * &MultiPoly::one(&ring), a.clone());
    }

    #[test]
    fn product_rule_for_partial_derivatives(
        f in poly_data(2, 3, 4),
        g in poly_data(2, 3, 4),
        var in 0usize..2,
    ) {
        let ring = Ring::of(&["x", "y"]);
        let (f, g) = (build(&ring, &f), build(&ring, &g));
        let lhs = (&f * &g).partial_derivative(var);
        let rhs = &(&f * &g.partial_derivative(var)) + &(&g * &f.partial_derivative(var));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn exact_division_inverts_multiplication(
        f in poly_data(2, 3, 4),
        g in poly_data(2, 3, 3),
    ) {
        let ring = Ring::of(&["x", "y"]);
        let (f, g) = (build(&ring, &f), build(&ring, &g));
        prop_assume!(!g.is_zero());
        let quot = (&f * &g).exact_divide(&g).unwrap();
        prop_assert_eq!(quot, f);
    }

    #[test]
    fn univariate_view_round_trips(
        p in poly_data(3, 4, 5),
        var in 0usize..3,
    ) {
        let ring = Ring::of(&["x", "y", "z"]);
        let p = build(&ring, &p);
        let view = UniView::of(&p, var);
        prop_assert_eq!(view.reassemble(), p);
    }

    #[test]
    fn display_parse_round_trip(p in poly_data(3, 4, 5)) {
        let ring = Ring::of(&["x", "y", "z"]);
        let p = build(&ring, &p);
        let text = p.to_string();
        prop_assert_eq!(&parse_in_ring(&text, &ring).unwrap(), &p);
        // whitespace between tokens carries no meaning (rational literals
        // like 3/4 are single tokens and stay intact)
        prop_assert_eq!(&parse_in_ring(&text.replace(' ', ""), &ring).unwrap(), &p);
        let spaced = text
            .replace('*', "  *  ")
            .replace('^', "  ^  ")
            .replace('+', "  +  ");
        prop_assert_eq!(&parse_in_ring(&spaced, &ring).unwrap(), &p);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn resultant_is_multiplicative_in_the_first_argument(
        p in proptest::collection::vec(small_rat(), 2..=4),
        q in proptest::collection::vec(small_rat(), 2..=4),
        r in proptest::collection::vec(small_rat(), 2..=4),
    ) {
        let ring = Ring::of(&["x"]);
        prop_assume!(!p.last().unwrap().is_zero());
        prop_assume!(!q.last().unwrap().is_zero());
        prop_assume!(!r.last().unwrap().is_zero());
        let pp = dense_to_poly(&ring, 0, &p);
        let qp = dense_to_poly(&ring, 0, &q);
        let rp = dense_to_poly(&ring, 0, &r);
        let lhs = resultant(&(&pp * &qp), &rp, 0).unwrap();
        let rhs = &resultant(&pp, &rp, 0).unwrap() * &resultant(&qp, &rp, 0).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn resultant_swap_changes_sign_by_degree_parity(
        p in proptest::collection::vec(small_rat(), 2..=5),
        q in proptest::collection::vec(small_rat(), 2..=5),
    ) {
        let ring = Ring::of(&["x"]);
        prop_assume!(!p.last().unwrap().is_zero());
        prop_assume!(!q.last().unwrap().is_zero());
        let pp = dense_to_poly(&ring, 0, &p);
        let qp = dense_to_poly(&ring, 0, &q);
        let forward = resultant(&pp, &qp, 0).unwrap();
        let backward = resultant(&qp, &pp, 0).unwrap();
        let mp = (p.len() - 1) as u32;
        let mq = (q.len() - 1) as u32;
        let expected = if (mp * mq) % 2 == 1 { -&backward } else { backward };
        prop_assert_eq!(forward, expected);
    }

    #[test]
    fn resultant_vanishes_exactly_on_shared_roots(
        root in small_rat(),
        p in proptest::collection::vec(small_rat(), 1..=3),
        q in proptest::collection::vec(small_rat(), 1..=3),
    ) {
        let ring = Ring::of(&["x"]);
        prop_assume!(!p.last().unwrap().is_zero());
        prop_assume!(!q.last().unwrap().is_zero());
        let linear = vec![-&root, Rat::one()];
        let pp = dense_to_poly(&ring, 0, &dense_mul(&linear, &p));
        let qp = dense_to_poly(&ring, 0, &dense_mul(&linear, &q));
        let res = resultant(&pp, &qp, 0).unwrap();
        prop_assert!(res.is_zero());
    }

    #[test]
    fn determinant_strategies_agree(
        size in 1usize..=5,
        data in proptest::collection::vec(term_data(2, 2), 25),
    ) {
        let ring = Ring::of(&["x", "y"]);
        let mut m = PolyMatrix::zero(&ring, size);
        for row in 0..size {
            for col in 0..size {
                let cell = &data[row * 5 + col];
                m.set(row, col, build(&ring, std::slice::from_ref(cell)));
            }
        }
        prop_assert_eq!(det_smart(&m), determinant(&m));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn isolated_roots_recover_constructed_factors(
        roots in proptest::collection::btree_set((-9i64..=9, 1i64..=6), 1..=3),
        mults in proptest::collection::vec(1u32..=3, 3),
        lead in (1i64..=5, 1i64..=3),
    ) {
        // f = lc * prod (t - r_i)^(m_i) with pairwise distinct rational roots
        let roots: Vec<Rat> = roots.into_iter().map(|(n, d)| rat(n, d)).collect();
        prop_assume!(roots.len() == roots.iter().collect::<std::collections::BTreeSet<_>>().len());
        let mut f = vec![rat(lead.0, lead.1)];
        for (r, m) in roots.iter().zip(&mults) {
            let linear = vec![-r, Rat::one()];
            for _ in 0..*m {
                f = dense_mul(&f, &linear);
            }
        }
        let isolated = isolate_real_roots_coeffs(&f).unwrap();
        prop_assert_eq!(isolated.complex_count, 0);
        prop_assert_eq!(isolated.roots.len(), roots.len());

        let mut expected: Vec<(Rat, u32)> = roots
            .iter()
            .cloned()
            .zip(mults.iter().copied())
            .collect();
        expected.sort_by(|a, b| a.0.cmp(&b.0));
        for (found, (root, mult)) in isolated.roots.iter().zip(&expected) {
            prop_assert_eq!(found.multiplicity, *mult);
            match &found.value {
                RootValue::Exact(x) => prop_assert_eq!(x, root),
                RootValue::Interval { lo, hi } => {
                    prop_assert!(lo < root && root < hi, "{} not inside ({}, {})", root, lo, hi);
                }
            }
        }
    }

    #[test]
    fn isolation_invariants_on_arbitrary_polynomials(
        coeffs in proptest::collection::vec(small_rat(), 1..=7),
    ) {
        prop_assume!(coeffs.iter().any(|c| !c.is_zero()));
        let isolated = isolate_real_roots_coeffs(&coeffs).unwrap();
        let trimmed: Vec<Rat> = {
            let mut v = coeffs.clone();
            while v.last().is_some_and(|c| c.is_zero()) {
                v.pop();
            }
            v
        };
        let degree = trimmed.len() - 1;
        let with_mult: usize = isolated.roots.iter().map(|r| r.multiplicity as usize).sum();
        prop_assert_eq!(with_mult + isolated.complex_count, degree);

        // sorted, pairwise disjoint, and exact sign behavior at endpoints
        let mut prev_hi: Option<Rat> = None;
        for item in &isolated.roots {
            match &item.value {
                RootValue::Exact(x) => {
                    prop_assert!(dense_eval(&trimmed, x).is_zero());
                    if let Some(ph) = &prev_hi {
                        prop_assert!(ph < x);
                    }
                    prev_hi = Some(x.clone());
                }
                RootValue::Interval { lo, hi } => {
                    prop_assert!(lo < hi);
                    if let Some(ph) = &prev_hi {
                        prop_assert!(ph <= lo);
                    }
                    let at_lo = dense_eval(&trimmed, lo);
                    let at_hi = dense_eval(&trimmed, hi);
                    prop_assert!(!at_lo.is_zero() && !at_hi.is_zero());
                    if item.multiplicity % 2 == 1 {
                        prop_assert!(at_lo.is_positive() != at_hi.is_positive());
                    } else {
                        prop_assert!(at_lo.is_positive() == at_hi.is_positive());
                    }
                    prev_hi = Some(hi.clone());
                }
            }
        }
    }

    #[test]
    fn simplest_rational_has_minimal_denominator(
        a in small_rat(),
        b in small_rat(),
    ) {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        let s = simplest_in(&lo, &hi);
        prop_assert!(&lo <= &s && &s <= &hi);
        // no rational with a smaller denominator fits in [lo, hi]
        let denom = s.denom().clone();
        let mut q = num_bigint::BigInt::from(1);
        while q < denom {
            let scaled_lo = &lo * Rat::from_integer(q.clone());
            let scaled_hi = &hi * Rat::from_integer(q.clone());
            prop_assert!(
                scaled_lo.ceil() > scaled_hi.floor(),
                "denominator {} admits a simpler rational in [{}, {}]",
                q, lo, hi
            );
            q += 1;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn discriminant_commutes_with_specialization(
        lead in (-5i64..=5).prop_filter("nonzero", |n| *n != 0),
        lower in proptest::collection::vec(poly_data(2, 2, 3), 2),
        sample in small_rat(),
    ) {
        // p = lead * x^2 + a1(y) * x + a0(y): constant leading coefficient,
        // so substituting y preserves the x-degree.
        let ring = Ring::of(&["x", "y"]);
        let x2 = MultiPoly::from_terms(&ring, [(Monomial::of_var(2, 0, 2), rat_int(lead))]);
        let mut p = x2;
        for (i, data) in lower.iter().enumerate() {
            let coeff = build(&ring, data);
            // wipe any x-dependence: substitute x -> 0 to get a pure y-coefficient
            let coeff = coeff.substitute_rat(0, &Rat::zero());
            let xi = MultiPoly::from_terms(&ring, [(Monomial::of_var(2, 0, i as u32), Rat::one())]);
            p = &p + &(&coeff * &xi);
        }
        let disc = discriminant_wrt(&p, 0).unwrap();
        let lhs = disc.substitute_rat(1, &sample);
        let rhs = discriminant_wrt(&p.substitute_rat(1, &sample), 0).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn double_roots_kill_discriminant_and_its_matched_variation(
        double_root in (-4i64..=4, 1i64..=3),
        others in proptest::collection::btree_set((-6i64..=6, 1i64..=3), 0..=2),
        delta_tail in proptest::collection::vec(small_rat(), 1..=2),
    ) {
        let r = rat(double_root.0, double_root.1);
        let simple: Vec<Rat> = others
            .into_iter()
            .map(|(n, d)| rat(n, d))
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .filter(|s| s != &r)
            .collect();

        // monic p = (t - r)^2 * prod (t - s)
        let linear_r = vec![-&r, Rat::one()];
        let mut dense = dense_mul(&linear_r, &linear_r);
        for s in &simple {
            dense = dense_mul(&dense, &[-s, Rat::one()]);
        }
        let n = dense.len() - 1;

        let ring = Ring::of(&["x"]);
        let p = dense_to_poly(&ring, 0, &dense);
        prop_assert!(discriminant_wrt(&p, 0).unwrap().is_zero());

        let coeffs: Vec<Rat> = dense[..n].to_vec();
        let gd = generic_discriminant(n).unwrap();
        prop_assert!(gd.disc_at(&coeffs).is_zero());

        // any variation with delta_p(r) = 0, here (t - r) * u(t)
        let mut u = delta_tail;
        u.truncate(n.saturating_sub(1).max(1));
        prop_assume!(u.iter().any(|c| !c.is_zero()));
        let delta_dense = dense_mul(&linear_r, &u);
        prop_assume!(delta_dense.len() - 1 < n);
        let delta_p = dense_to_poly(&ring, 0, &delta_dense);
        let pair = VariationPair::new(p, delta_p).unwrap();
        prop_assert_eq!(delta_discriminant(&pair).unwrap(), Rat::zero());
    }

    #[test]
    fn gradient_matches_finite_differences(
        f in poly_data(2, 3, 4),
        px in -20i64..=20,
        py in -20i64..=20,
    ) {
        let ring = Ring::of(&["x", "y"]);
        let f = build(&ring, &f);
        let point = [px as f64 / 10.0, py as f64 / 10.0];
        let h = 1e-6;
        for var in 0..2 {
            let exact = f.partial_derivative(var).eval_f64(&point);
            let mut hi = point;
            let mut lo = point;
            hi[var] += h;
            lo[var] -= h;
            let fd = (f.eval_f64(&hi) - f.eval_f64(&lo)) / (2.0 * h);
            let tol = 1e-4 * exact.abs().max(1.0);
            prop_assert!(
                (fd - exact).abs() <= tol,
                "var {}: finite difference {} vs exact {}",
                var, fd, exact
            );
        }
    }

    #[test]
    fn monic_quadratic_discriminant_closed_form(b in small_rat(), c in small_rat()) {
        let ring = Ring::of(&["x"]);
        let p = dense_to_poly(&ring, 0, &[c.clone(), b.clone(), Rat::one()]);
        let expected = &(&b * &b) - &(rat_int(4) * &c);
        let direct = discriminant_wrt(&p, 0).unwrap();
        prop_assert_eq!(direct.as_constant().unwrap(), expected.clone());
        let gd = generic_discriminant(2).unwrap();
        prop_assert_eq!(gd.disc_at(&[c, b]), expected);
    }

    #[test]
    fn staged_fold_matches_manual_dispatch(
        data in poly_data(2, 2, 5),
    ) {
        let ring = Ring::of(&["x", "y"]);
        let p = build(&ring, &data);
        prop_assume!(!p.is_zero());
        let order = ["x".to_string(), "y".to_string()];
        let staged = multiple_discriminant(&p, &order, &MdOptions::default());

        // replay the documented per-stage dispatch by hand
        let mut cur = p;
        let mut degenerate: Option<(usize, String)> = None;
        for (stage, vi) in [(1usize, 1usize), (2usize, 0usize)] {
            let d = cur.degree_in(vi);
            if d <= 0 {
                continue;
            }
            if d == 1 {
                cur = UniView::of(&cur, vi).leading();
                continue;
            }
            let disc = discriminant_wrt(&cur, vi).unwrap();
            if disc.is_zero() {
                degenerate = Some((stage, ring.name(vi).to_string()));
                break;
            }
            cur = disc;
        }

        match (staged, degenerate) {
            (Ok(md), None) => prop_assert_eq!(md.value, cur),
            (Err(ElimError::Degenerate { stage, var, .. }), Some((s, v))) => {
                prop_assert_eq!(stage, s);
                prop_assert_eq!(var, v);
            }
            (got, want) => prop_assert!(
                false,
                "fold mismatch: ok={} vs expected-degenerate={:?}",
                got.is_ok(),
                want
            ),
        }
    }
}

#[test]
fn staged_discriminants_are_thread_safe() {
    let handles: Vec<_> = (0..4)
        .map(|_| {
            std::thread::spawn(|| {
                let ring = Ring::of(&["x", "y", "v"]);
                let p = parse_in_ring("x^2 + y^2 - v", &ring).unwrap();
                let md = multiple_discriminant(
                    &p,
                    &["x".to_string(), "y".to_string()],
                    &MdOptions::default(),
                )
                .unwrap();
                md.value.to_string()
            })
        })
        .collect();
    for h in handles {
        assert_eq!(h.join().unwrap(), "64*v");
    }
}

#[test]
fn cancellation_flag_aborts_the_pipeline() {
    let ring = Ring::of(&["x", "y"]);
    let f = parse_in_ring("x^2 + y^2", &ring).unwrap();
    let flag = Arc::new(AtomicBool::new(true));
    let prob = CriticalValueProblem::new(f).unwrap().with_cancel(flag);
    let err = critical_value_polynomial(&prob).unwrap_err();
    assert!(matches!(err, CritError::Elim(ElimError::Canceled)));
}
