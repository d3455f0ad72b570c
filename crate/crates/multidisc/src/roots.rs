//! Exact isolation of the real roots of a univariate polynomial with
//! rational coefficients.
//!
//! The pipeline: strip zero roots, split into squarefree factors with known
//! multiplicities (Yun), bound the roots (Cauchy bound rounded to a power of
//! two so every interval endpoint stays dyadic), isolate with Sturm
//! sign-variation counts, then refine each interval by sign bisection to a
//! relative width of 2⁻⁵³. During refinement the simplest rational in the
//! current interval (by continued fractions) is probed periodically, so
//! rational roots are recognized exactly no matter how large their numerators
//! and denominators are.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::rat::{rat_to_f64, rational_content, Rat};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RootError {
    #[error("cannot isolate roots of the zero polynomial")]
    ZeroPolynomial,
}

/// Where a real root is: pinned exactly, or trapped in an open interval.
#[derive(Debug, Clone, PartialEq)]
pub enum RootValue {
    Exact(Rat),
    Interval { lo: Rat, hi: Rat },
}

impl RootValue {
    /// Best floating-point approximation (interval midpoint).
    pub fn approx(&self) -> f64 {
        match self {
            RootValue::Exact(r) => rat_to_f64(r),
            RootValue::Interval { lo, hi } => rat_to_f64(&((lo + hi) / Rat::from_integer(2.into()))),
        }
    }

    /// Closed rational enclosure (degenerate for exact roots).
    pub fn bounds(&self) -> (Rat, Rat) {
        match self {
            RootValue::Exact(r) => (r.clone(), r.clone()),
            RootValue::Interval { lo, hi } => (lo.clone(), hi.clone()),
        }
    }

    fn midpoint(&self) -> Rat {
        match self {
            RootValue::Exact(r) => r.clone(),
            RootValue::Interval { lo, hi } => (lo + hi) / Rat::from_integer(2.into()),
        }
    }

    /// Distance from a floating-point value to this root's enclosure
    /// (zero when the value lies inside it).
    pub fn distance_to(&self, x: f64) -> f64 {
        let (lo, hi) = self.bounds();
        let lo = rat_to_f64(&lo);
        let hi = rat_to_f64(&hi);
        if x < lo {
            lo - x
        } else if x > hi {
            x - hi
        } else {
            0.0
        }
    }
}

/// One distinct real root with its multiplicity.
#[derive(Debug, Clone, PartialEq)]
pub struct IsolatedRoot {
    pub value: RootValue,
    pub multiplicity: u32,
}

/// All real roots of a polynomial, sorted ascending, plus the number of
/// strictly complex roots (counted with multiplicity).
#[derive(Debug, Clone, PartialEq)]
pub struct RealRoots {
    pub roots: Vec<IsolatedRoot>,
    pub complex_count: usize,
}

// ---- dense rational polynomial helpers (slot k = coefficient of t^k) ----

fn trim(mut v: Vec<Rat>) -> Vec<Rat> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn deg(v: &[Rat]) -> i64 {
    v.len() as i64 - 1
}

fn eval(v: &[Rat], x: &Rat) -> Rat {
    let mut acc = Rat::zero();
    for c in v.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

fn derivative(v: &[Rat]) -> Vec<Rat> {
    if v.len() <= 1 {
        return vec![];
    }
    v.iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c * Rat::from_integer(BigInt::from(k)))
        .collect()
}

fn make_monic(v: &[Rat]) -> Vec<Rat> {
    let lc = v.last().expect("nonzero polynomial").clone();
    v.iter().map(|c| c / &lc).collect()
}

/// Positive rescaling to coprime integer coefficients (sign preserved).
fn scale_primitive(v: Vec<Rat>) -> Vec<Rat> {
    if v.is_empty() {
        return v;
    }
    let c = rational_content(v.iter());
    if c.is_one() {
        return v;
    }
    v.into_iter().map(|x| x / &c).collect()
}

fn div_rem(a: &[Rat], b: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    assert!(!b.is_empty(), "division by zero polynomial");
    let mut rem: Vec<Rat> = a.to_vec();
    let db = b.len() - 1;
    let lb = &b[db];
    if rem.len() <= db {
        return (vec![], trim(rem));
    }
    let mut quot = vec![Rat::zero(); rem.len() - db];
    while rem.len() > db {
        let dr = rem.len() - 1;
        let coef = rem.last().unwrap() / lb;
        if !coef.is_zero() {
            quot[dr - db] = coef.clone();
            for (k, bc) in b.iter().enumerate() {
                let idx = dr - db + k;
                let sub = bc * &coef;
                rem[idx] -= sub;
            }
        }
        rem.pop();
        rem = trim(rem);
        if rem.len() <= db {
            break;
        }
    }
    (trim(quot), trim(rem))
}

fn exact_div(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let (q, r) = div_rem(a, b);
    debug_assert!(r.is_empty(), "division expected to be exact");
    q
}

fn gcd_monic(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut x = trim(a.to_vec());
    let mut y = trim(b.to_vec());
    while !y.is_empty() {
        let (_, r) = div_rem(&x, &y);
        x = y;
        y = r;
    }
    if x.is_empty() {
        x
    } else {
        make_monic(&x)
    }
}

/// Yun's squarefree decomposition of a nonconstant polynomial (made monic
/// first): returns (squarefree monic factor, multiplicity) pairs with
/// pairwise coprime factors whose weighted product is the monic input.
fn yun_decompose(f: &[Rat]) -> Vec<(Vec<Rat>, u32)> {
    let f = make_monic(&trim(f.to_vec()));
    debug_assert!(deg(&f) >= 1);
    let fp = derivative(&f);
    let g = gcd_monic(&f, &fp);
    if deg(&g) <= 0 {
        return vec![(f, 1)];
    }
    let mut out = Vec::new();
    let mut c = exact_div(&f, &g);
    let mut d = {
        let t = exact_div(&fp, &g);
        sub_poly(&t, &derivative(&c))
    };
    let mut i = 1u32;
    while deg(&c) > 0 {
        let a = gcd_monic(&c, &d);
        if deg(&a) > 0 {
            out.push((a.clone(), i));
        }
        let a_or_one = if a.is_empty() { vec![Rat::one()] } else { a };
        c = exact_div(&c, &a_or_one);
        let dq = exact_div(&d, &a_or_one);
        d = sub_poly(&dq, &derivative(&c));
        i += 1;
    }
    out
}

fn sub_poly(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let n = a.len().max(b.len());
    let mut out = vec![Rat::zero(); n];
    for (k, c) in a.iter().enumerate() {
        out[k] += c;
    }
    for (k, c) in b.iter().enumerate() {
        out[k] -= c;
    }
    trim(out)
}

// ---- Sturm machinery ----

struct Sturm {
    chain: Vec<Vec<Rat>>,
}

impl Sturm {
    fn new(f: &[Rat]) -> Sturm {
        let mut chain = vec![scale_primitive(f.to_vec()), scale_primitive(derivative(f))];
        loop {
            let n = chain.len();
            if chain[n - 1].is_empty() || deg(&chain[n - 1]) == 0 {
                break;
            }
            let (_, r) = div_rem(&chain[n - 2], &chain[n - 1]);
            if r.is_empty() {
                break;
            }
            let neg: Vec<Rat> = r.into_iter().map(|c| -c).collect();
            chain.push(scale_primitive(neg));
        }
        Sturm { chain }
    }

    fn variations_at(&self, x: &Rat) -> usize {
        let mut count = 0;
        let mut last: i8 = 0;
        for p in &self.chain {
            let v = eval(p, x);
            let s: i8 = if v.is_zero() {
                0
            } else if v.is_positive() {
                1
            } else {
                -1
            };
            if s != 0 {
                if last != 0 && s != last {
                    count += 1;
                }
                last = s;
            }
        }
        count
    }

    /// Number of distinct real roots in (a, b], for non-root endpoints.
    fn count_in(&self, a: &Rat, b: &Rat) -> usize {
        self.variations_at(a).saturating_sub(self.variations_at(b))
    }
}

/// Cauchy root bound rounded up to a power of two: every (real or complex)
/// root has magnitude strictly below the result.
fn power_of_two_root_bound(f: &[Rat]) -> Rat {
    let lc = f.last().expect("nonzero");
    let mut max = Rat::zero();
    for c in &f[..f.len() - 1] {
        let m = (c / lc).abs();
        if m > max {
            max = m;
        }
    }
    let bound = max + Rat::one(); // strict Cauchy bound
    let mut pow = Rat::one();
    while pow < bound {
        pow *= Rat::from_integer(2.into());
    }
    pow
}

// ---- simplest rational in an interval (continued fractions) ----

/// The rational with the smallest denominator (then smallest numerator) in
/// the closed interval [lo, hi].
pub fn simplest_in(lo: &Rat, hi: &Rat) -> Rat {
    assert!(lo <= hi);
    if !lo.is_positive() && !hi.is_negative() {
        return Rat::zero();
    }
    if hi.is_negative() {
        return -simplest_pos(&-hi.clone(), &-lo.clone());
    }
    simplest_pos(lo, hi)
}

fn simplest_pos(lo: &Rat, hi: &Rat) -> Rat {
    debug_assert!(lo.is_positive() && lo <= hi);
    let ceil_lo = Rat::from_integer(lo.ceil().to_integer());
    if ceil_lo <= *hi {
        return ceil_lo;
    }
    let fl = Rat::from_integer(lo.floor().to_integer());
    // lo and hi share the same integer part and neither is an integer
    let inner = simplest_pos(&(hi - &fl).recip(), &(lo - &fl).recip());
    fl + inner.recip()
}

// ---- isolation ----

struct FactorRoots {
    exact: Vec<Rat>,
    intervals: Vec<(Rat, Rat)>,
    /// the (possibly deflated) squarefree polynomial the intervals refer to
    poly: Vec<Rat>,
}

/// Isolate all real roots of a squarefree polynomial with nonzero constant
/// term. Exact rational roots found along the way are deflated out.
fn isolate_squarefree(f: Vec<Rat>) -> FactorRoots {
    let mut poly = f;
    let mut exact: Vec<Rat> = Vec::new();
    'restart: loop {
        if deg(&poly) < 1 {
            return FactorRoots { exact, intervals: vec![], poly };
        }
        let sturm = Sturm::new(&poly);
        let bound = power_of_two_root_bound(&poly);
        let lo = -bound.clone();
        let total = sturm.count_in(&lo, &bound);
        let mut stack = vec![(lo, bound, total)];
        let mut intervals = Vec::new();
        while let Some((a, b, count)) = stack.pop() {
            match count {
                0 => {}
                1 => intervals.push((a, b)),
                _ => {
                    let mid = (&a + &b) / Rat::from_integer(2.into());
                    if eval(&poly, &mid).is_zero() {
                        // rational root hit head-on: record, deflate, restart
                        let linear = vec![-mid.clone(), Rat::one()];
                        poly = exact_div(&poly, &linear);
                        exact.push(mid);
                        continue 'restart;
                    }
                    let left = sturm.count_in(&a, &mid);
                    stack.push((a, mid.clone(), left));
                    stack.push((mid, b, count - left));
                }
            }
        }
        return FactorRoots { exact, intervals, poly };
    }
}

fn rel_width_target(mid: &Rat) -> Rat {
    let eps = Rat::new(BigInt::one(), BigInt::one() << 53);
    let m = mid.abs();
    if m > Rat::one() {
        eps * m
    } else {
        eps
    }
}

/// Shrink (lo, hi] around its single simple root until the width is at most
/// 2⁻⁵³·max(1, |midpoint|), probing simple rationals as it goes. Returns the
/// refined enclosure or the exact root.
fn refine_interval(poly: &[Rat], mut lo: Rat, mut hi: Rat) -> RootValue {
    let mut sign_lo = eval(poly, &lo).is_positive();
    debug_assert!(!eval(poly, &lo).is_zero() && !eval(poly, &hi).is_zero());
    debug_assert!(sign_lo != eval(poly, &hi).is_positive());
    let mut steps_since_probe = 0usize;
    loop {
        // probe the simplest rational the interval still admits
        if steps_since_probe == 0 {
            let guess = simplest_in(&lo, &hi);
            if eval(poly, &guess).is_zero() {
                return RootValue::Exact(guess);
            }
        }
        let mid = (&lo + &hi) / Rat::from_integer(2.into());
        let width = &hi - &lo;
        if width <= rel_width_target(&mid) {
            return RootValue::Interval { lo, hi };
        }
        let at_mid = eval(poly, &mid);
        if at_mid.is_zero() {
            return RootValue::Exact(mid);
        }
        if at_mid.is_positive() == sign_lo {
            lo = mid;
            sign_lo = at_mid.is_positive();
        } else {
            hi = mid;
        }
        steps_since_probe = (steps_since_probe + 1) % 8;
    }
}

/// Halve an interval enclosure once (used to separate near-coincident
/// enclosures from different factors); exact roots pass through.
fn refine_once(poly: &[Rat], value: RootValue) -> RootValue {
    match value {
        RootValue::Exact(r) => RootValue::Exact(r),
        RootValue::Interval { lo, hi } => {
            let mid = (&lo + &hi) / Rat::from_integer(2.into());
            let at_mid = eval(poly, &mid);
            if at_mid.is_zero() {
                return RootValue::Exact(mid);
            }
            if at_mid.is_positive() == eval(poly, &lo).is_positive() {
                RootValue::Interval { lo: mid, hi }
            } else {
                RootValue::Interval { lo, hi: mid }
            }
        }
    }
}

struct WorkItem {
    value: RootValue,
    multiplicity: u32,
    poly: Vec<Rat>, // squarefree factor owning the enclosure
}

fn overlap(a: &RootValue, b: &RootValue) -> bool {
    let (alo, ahi) = a.bounds();
    let (blo, bhi) = b.bounds();
    alo.max(blo) <= ahi.min(bhi)
}

/// Isolate all real roots of the polynomial with coefficient slots
/// `coeffs[k] = coefficient of t^k`. Roots are sorted ascending; enclosures
/// from different repeated-factor classes are pairwise disjoint.
pub fn isolate_real_roots_coeffs(coeffs: &[Rat]) -> Result<RealRoots, RootError> {
    let f = trim(coeffs.to_vec());
    if f.is_empty() {
        return Err(RootError::ZeroPolynomial);
    }
    let total_degree = deg(&f) as usize;
    if total_degree == 0 {
        return Ok(RealRoots { roots: vec![], complex_count: 0 });
    }

    let mut items: Vec<WorkItem> = Vec::new();

    // zero roots first
    let zero_mult = f.iter().take_while(|c| c.is_zero()).count();
    if zero_mult > 0 {
        items.push(WorkItem {
            value: RootValue::Exact(Rat::zero()),
            multiplicity: zero_mult as u32,
            poly: vec![Rat::zero(), Rat::one()],
        });
    }
    let reduced: Vec<Rat> = f[zero_mult..].to_vec();

    if deg(&reduced) >= 1 {
        for (factor, mult) in yun_decompose(&reduced) {
            let found = isolate_squarefree(factor);
            for r in found.exact {
                items.push(WorkItem {
                    value: RootValue::Exact(r),
                    multiplicity: mult,
                    poly: found.poly.clone(),
                });
            }
            for (lo, hi) in found.intervals {
                let refined = refine_interval(&found.poly, lo, hi);
                items.push(WorkItem { value: refined, multiplicity: mult, poly: found.poly.clone() });
            }
        }
    }

    // enforce global disjointness across factor classes
    loop {
        let mut touched = false;
        for i in 0..items.len() {
            for j in i + 1..items.len() {
                if overlap(&items[i].value, &items[j].value) {
                    let vi = refine_once(&items[i].poly, items[i].value.clone());
                    items[i].value = vi;
                    let vj = refine_once(&items[j].poly, items[j].value.clone());
                    items[j].value = vj;
                    touched = true;
                }
            }
        }
        if !touched {
            break;
        }
    }

    items.sort_by(|a, b| a.value.midpoint().cmp(&b.value.midpoint()));
    let real_mult_sum: usize = items.iter().map(|i| i.multiplicity as usize).sum();
    let roots = items
        .into_iter()
        .map(|i| IsolatedRoot { value: i.value, multiplicity: i.multiplicity })
        .collect();
    Ok(RealRoots { roots, complex_count: total_degree - real_mult_sum })
}
