use std::cmp::Ordering;

use smallvec::SmallVec;

use crate::error::{Error, Result};

pub type Exponents = SmallVec<[u16; 12]>;

/// Positive integer weights, one per variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Grading {
    weights: Vec<u32>,
}

impl Grading {
    pub fn standard(nvars: usize) -> Self {
        Grading {
            weights: vec![1; nvars],
        }
    }

    pub fn weighted(weights: Vec<u32>) -> Result<Self> {
        if weights.contains(&0) {
            return Err(Error::UndefinedInput(
                "grading weights must be positive".into(),
            ));
        }
        Ok(Grading { weights })
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn nvars(&self) -> usize {
        self.weights.len()
    }

    pub fn is_standard(&self) -> bool {
        self.weights.iter().all(|&w| w == 1)
    }

    pub fn degree_of(&self, exps: &[u16]) -> u32 {
        exps.iter()
            .zip(&self.weights)
            .map(|(&e, &w)| e as u32 * w)
            .sum()
    }
}

/// An exponent vector together with its cached weighted degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Exponents,
    degree: u32,
}

impl Monomial {
    pub fn new(exps: &[u16], grading: &Grading) -> Self {
        debug_assert_eq!(exps.len(), grading.nvars());
        Monomial {
            degree: grading.degree_of(exps),
            exps: Exponents::from_slice(exps),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Monomial {
            exps: smallvec::smallvec![0; nvars],
            degree: 0,
        }
    }

    pub fn variable(index: usize, grading: &Grading) -> Self {
        let mut exps: Exponents = smallvec::smallvec![0; grading.nvars()];
        exps[index] = 1;
        Monomial {
            degree: grading.weights()[index],
            exps,
        }
    }

    #[inline]
    pub fn exponents(&self) -> &[u16] {
        &self.exps
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.degree
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    /// Sum of raw exponents, ignoring weights.
    pub fn total_exponent(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a + b)
                .collect(),
            degree: self.degree + other.degree,
        }
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self` when `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        Some(Monomial {
            exps: other
                .exps
                .iter()
                .zip(&self.exps)
                .map(|(a, b)| a - b)
                .collect(),
            degree: other.degree - self.degree,
        })
    }

    pub fn lcm(&self, other: &Monomial, grading: &Grading) -> Monomial {
        let exps: Exponents = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(&a, &b)| a.max(b))
            .collect();
        Monomial {
            degree: grading.degree_of(&exps),
            exps,
        }
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps
            .iter()
            .zip(&other.exps)
            .all(|(&a, &b)| a == 0 || b == 0)
    }

    /// Removes one factor of the given variable, if present.
    pub fn divide_by_variable(&self, index: usize, grading: &Grading) -> Option<Monomial> {
        if self.exps[index] == 0 {
            return None;
        }
        let mut exps = self.exps.clone();
        exps[index] -= 1;
        Some(Monomial {
            exps,
            degree: self.degree - grading.weights()[index],
        })
    }

    pub fn times_variable(&self, index: usize, grading: &Grading) -> Monomial {
        let mut exps = self.exps.clone();
        exps[index] += 1;
        Monomial {
            exps,
            degree: self.degree + grading.weights()[index],
        }
    }
}

/// Monomial orders with variable precedence given by variable index
/// (variable 0 is the largest).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    /// Weighted degree first, ties broken by the smallest exponent of the
    /// last variable where the exponent vectors differ.
    Grevlex,
    Lex,
}

impl MonomialOrder {
    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Grevlex => a.degree.cmp(&b.degree).then_with(|| {
                for (x, y) in a.exps.iter().zip(&b.exps).rev() {
                    if x != y {
                        return y.cmp(x);
                    }
                }
                Ordering::Equal
            }),
            MonomialOrder::Lex => a.exps.as_slice().cmp(b.exps.as_slice()),
        }
    }

    /// Comparison that rejects monomials from different ambient rings.
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Result<Ordering> {
        if a.nvars() != b.nvars() {
            return Err(Error::DimensionMismatch(format!(
                "comparing monomials in {} and {} variables",
                a.nvars(),
                b.nvars()
            )));
        }
        Ok(self.cmp(a, b))
    }
}

/// All exponent vectors of total (unweighted) degree exactly `d` in `nvars`
/// variables, in lexicographically decreasing order.
pub fn exponent_vectors_of_degree(nvars: usize, d: u32) -> Vec<Exponents> {
    fn rec(out: &mut Vec<Exponents>, cur: &mut Exponents, idx: usize, left: u32) {
        let n = cur.len();
        if idx + 1 == n {
            cur[idx] = left as u16;
            out.push(cur.clone());
            return;
        }
        for e in (0..=left).rev() {
            cur[idx] = e as u16;
            rec(out, cur, idx + 1, left - e);
        }
        cur[idx] = 0;
    }
    let mut out = Vec::new();
    if nvars == 0 {
        if d == 0 {
            out.push(Exponents::new());
        }
        return out;
    }
    let mut cur: Exponents = smallvec::smallvec![0; nvars];
    rec(&mut out, &mut cur, 0, d);
    out
}

/// Monomials of standard degree at most `d`, sorted descending in `order`.
pub fn monomials_up_to(
    nvars: usize,
    d: u32,
    grading: &Grading,
    order: MonomialOrder,
) -> Vec<Monomial> {
    let mut v: Vec<Monomial> = (0..=d)
        .flat_map(|k| exponent_vectors_of_degree(nvars, k))
        .map(|e| Monomial::new(&e, grading))
        .collect();
    v.sort_by(|a, b| order.cmp(b, a));
    v
}
