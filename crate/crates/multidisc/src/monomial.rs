//! Exponent vectors with the graded-lexicographic term order.

use std::cmp::Ordering;

/// Exponent vector of one power product; the slot count always equals the
/// ring's variable count, with zero exponents stored explicitly.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Monomial {
        Monomial { exps }
    }

    /// The constant monomial (all exponents zero).
    pub fn unit(nvars: usize) -> Monomial {
        Monomial { exps: vec![0; nvars] }
    }

    /// `var^exp` as a monomial.
    pub fn of_var(nvars: usize, var: usize, exp: u32) -> Monomial {
        let mut exps = vec![0; nvars];
        exps[var] = exp;
        Monomial { exps }
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn exp(&self, var: usize) -> u32 {
        self.exps[var]
    }

    pub fn len(&self) -> usize {
        self.exps.len()
    }

    pub fn is_unit(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn total_degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// Componentwise quotient, or `None` when some exponent would go negative.
    pub fn try_div(&self, other: &Monomial) -> Option<Monomial> {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        let mut exps = Vec::with_capacity(self.exps.len());
        for (a, b) in self.exps.iter().zip(&other.exps) {
            if a < b {
                return None;
            }
            exps.push(a - b);
        }
        Some(Monomial { exps })
    }

    /// Copy with the exponent of `var` forced to zero.
    pub fn without_var(&self, var: usize) -> Monomial {
        let mut exps = self.exps.clone();
        exps[var] = 0;
        Monomial { exps }
    }

    /// Re-index exponents into a ring of `new_len` variables; `map[i]` is the
    /// target slot of source variable `i`.
    pub fn remap(&self, map: &[usize], new_len: usize) -> Monomial {
        let mut exps = vec![0; new_len];
        for (i, &e) in self.exps.iter().enumerate() {
            exps[map[i]] += e;
        }
        Monomial { exps }
    }
}

/// Graded lexicographic order: compare total degree first, then exponent
/// vectors lexicographically with earlier variables weighing more.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.exps.cmp(&other.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
