//! Sparse multivariate polynomials over GF(p).
//!
//! Terms are stored sorted strictly descending in the ring's monomial order,
//! so the leading term is always `terms[0]`.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use super::monomial::{Exponents, Monomial};
use super::ring::RingRef;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub monomial: Monomial,
    pub coeff: u32,
}

#[derive(Clone, Debug)]
pub struct Polynomial {
    ring: RingRef,
    terms: Vec<Term>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        self.same_ring(other) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl Polynomial {
    pub fn zero(ring: &RingRef) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: &RingRef, c: u32) -> Self {
        let c = c % ring.field().modulus();
        Self::from_sorted_terms(
            ring,
            if c == 0 {
                vec![]
            } else {
                vec![Term {
                    monomial: Monomial::one(ring.nvars()),
                    coeff: c,
                }]
            },
        )
    }

    pub fn variable(ring: &RingRef, index: usize) -> Self {
        Self::term(ring, Monomial::variable(index, ring.grading()), 1)
    }

    pub fn term(ring: &RingRef, monomial: Monomial, coeff: u32) -> Self {
        let coeff = coeff % ring.field().modulus();
        let terms = if coeff == 0 {
            vec![]
        } else {
            vec![Term { monomial, coeff }]
        };
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Builds a polynomial from arbitrary terms: duplicates are summed,
    /// zeros dropped, and the result sorted.
    pub fn from_terms<I>(ring: &RingRef, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, u32)>,
    {
        let field = ring.field();
        let mut acc: HashMap<Exponents, (Monomial, u32)> = HashMap::new();
        for (m, c) in terms {
            let c = c % field.modulus();
            let e = acc
                .entry(Exponents::from_slice(m.exponents()))
                .or_insert((m, 0));
            e.1 = field.add(e.1, c);
        }
        let mut terms: Vec<Term> = acc
            .into_values()
            .filter(|&(_, c)| c != 0)
            .map(|(monomial, coeff)| Term { monomial, coeff })
            .collect();
        let order = ring.order();
        terms.sort_by(|a, b| order.cmp(&b.monomial, &a.monomial));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub(crate) fn from_sorted_terms(ring: &RingRef, terms: Vec<Term>) -> Self {
        debug_assert!(terms
            .windows(2)
            .all(|w| ring.order().cmp(&w[0].monomial, &w[1].monomial) == Ordering::Greater));
        debug_assert!(terms.iter().all(|t| t.coeff != 0));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    #[inline]
    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    #[inline]
    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|t| t.monomial.is_one())
    }

    #[inline]
    pub fn leading_term(&self) -> Option<&Term> {
        self.terms.first()
    }

    /// Removes and returns the leading term.
    pub(crate) fn pop_leading(&mut self) -> Option<Term> {
        if self.terms.is_empty() {
            None
        } else {
            Some(self.terms.remove(0))
        }
    }

    #[inline]
    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.monomial)
    }

    pub fn leading_coeff(&self) -> Option<u32> {
        self.terms.first().map(|t| t.coeff)
    }

    /// Maximal weighted degree of a term; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.monomial.degree()).max()
    }

    /// The common degree of all terms, if the polynomial is homogeneous and
    /// nonzero.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let d = self.terms.first()?.monomial.degree();
        self.terms
            .iter()
            .all(|t| t.monomial.degree() == d)
            .then_some(d)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    pub fn coefficient(&self, m: &Monomial) -> u32 {
        self.terms
            .iter()
            .find(|t| t.monomial == *m)
            .map_or(0, |t| t.coeff)
    }

    #[inline]
    pub(crate) fn same_ring(&self, other: &Polynomial) -> bool {
        Arc::ptr_eq(&self.ring, &other.ring) || *self.ring == *other.ring
    }

    fn check_ring(&self, other: &Polynomial) -> Result<()> {
        if self.same_ring(other) {
            Ok(())
        } else {
            Err(Error::DimensionMismatch(format!(
                "polynomials over different rings ({} vs {} variables)",
                self.ring.nvars(),
                other.ring.nvars()
            )))
        }
    }

    /// `self + c * m * other`, merging the two sorted term lists.
    pub(crate) fn add_scaled(
        &self,
        c: u32,
        m: Option<&Monomial>,
        other: &Polynomial,
    ) -> Polynomial {
        let field = self.ring.field();
        let order = self.ring.order();
        if c == 0 || other.is_zero() {
            return self.clone();
        }
        let scaled = |t: &Term| Term {
            monomial: match m {
                Some(m) => m.mul(&t.monomial),
                None => t.monomial.clone(),
            },
            coeff: field.mul(c, t.coeff),
        };
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = other.terms.iter().map(scaled).peekable();
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => out.push(a.next().unwrap().clone()),
                (None, Some(_)) => out.push(b.next().unwrap()),
                (Some(x), Some(y)) => match order.cmp(&x.monomial, &y.monomial) {
                    Ordering::Greater => out.push(a.next().unwrap().clone()),
                    Ordering::Less => out.push(b.next().unwrap()),
                    Ordering::Equal => {
                        let s = field.add(x.coeff, y.coeff);
                        let y = b.next().unwrap();
                        a.next();
                        if s != 0 {
                            out.push(Term {
                                monomial: y.monomial,
                                coeff: s,
                            });
                        }
                    }
                },
            }
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: out,
        }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.add_scaled(1, None, other))
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        let minus_one = self.ring.field().modulus() - 1;
        Ok(self.add_scaled(minus_one, None, other))
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Polynomial::zero(&self.ring));
        }
        if self.terms.len() == 1 {
            let t = &self.terms[0];
            return Ok(other.mul_term(&t.monomial, t.coeff));
        }
        if other.terms.len() == 1 {
            let t = &other.terms[0];
            return Ok(self.mul_term(&t.monomial, t.coeff));
        }
        let field = self.ring.field();
        let mut acc: HashMap<Exponents, (Monomial, u64)> =
            HashMap::with_capacity(self.terms.len() * other.terms.len());
        let p = field.modulus() as u64;
        for s in &self.terms {
            for o in &other.terms {
                let m = s.monomial.mul(&o.monomial);
                let e = acc
                    .entry(Exponents::from_slice(m.exponents()))
                    .or_insert((m, 0));
                e.1 = (e.1 + s.coeff as u64 * o.coeff as u64) % p;
            }
        }
        let order = self.ring.order();
        let mut terms: Vec<Term> = acc
            .into_values()
            .filter(|&(_, c)| c != 0)
            .map(|(monomial, c)| Term {
                monomial,
                coeff: c as u32,
            })
            .collect();
        terms.sort_by(|a, b| order.cmp(&b.monomial, &a.monomial));
        Ok(Polynomial {
            ring: self.ring.clone(),
            terms,
        })
    }

    pub fn scalar_mul(&self, c: u32) -> Polynomial {
        let field = self.ring.field();
        let c = c % field.modulus();
        if c == 0 {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    monomial: t.monomial.clone(),
                    coeff: field.mul(c, t.coeff),
                })
                .collect(),
        }
    }

    /// `c * m * self`. Order is preserved since monomial orders are
    /// multiplicative.
    pub fn mul_term(&self, m: &Monomial, c: u32) -> Polynomial {
        let field = self.ring.field();
        let c = c % field.modulus();
        if c == 0 {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    monomial: m.mul(&t.monomial),
                    coeff: field.mul(c, t.coeff),
                })
                .collect(),
        }
    }

    pub fn neg(&self) -> Polynomial {
        self.scalar_mul(self.ring.field().modulus() - 1)
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut r = Polynomial::constant(&self.ring, 1);
        for _ in 0..e {
            r = &r * self;
        }
        r
    }

    /// Scales so that the leading coefficient is one.
    pub fn monic(&self) -> Result<Polynomial> {
        match self.leading_coeff() {
            None => Err(Error::UndefinedInput("monic of the zero polynomial".into())),
            Some(1) => Ok(self.clone()),
            Some(c) => Ok(self.scalar_mul(self.ring.field().inv(c)?)),
        }
    }

    /// Homogeneous component of highest weighted degree.
    pub fn highest_part(&self) -> Result<Polynomial> {
        let d = self
            .degree()
            .ok_or_else(|| Error::UndefinedInput("highest part of the zero polynomial".into()))?;
        Ok(self.homogeneous_part(d))
    }

    pub fn homogeneous_part(&self, d: u32) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .filter(|t| t.monomial.degree() == d)
                .cloned()
                .collect(),
        }
    }

    /// Formal partial derivative with respect to variable `index`.
    pub fn derivative(&self, index: usize) -> Polynomial {
        let field = self.ring.field();
        let grading = self.ring.grading();
        let terms = self.terms.iter().filter_map(|t| {
            let e = t.monomial.exponents()[index];
            let c = field.mul(t.coeff, field.from_u64(e as u64));
            if c == 0 {
                return None;
            }
            Some((t.monomial.divide_by_variable(index, grading)?, c))
        });
        Polynomial::from_terms(&self.ring, terms)
    }

    pub fn evaluate(&self, point: &[u32]) -> u32 {
        let field = self.ring.field();
        self.terms.iter().fold(0, |acc, t| {
            let v = t
                .monomial
                .exponents()
                .iter()
                .zip(point)
                .fold(t.coeff, |v, (&e, &x)| field.mul(v, field.pow(x, e as u64)));
            field.add(acc, v)
        })
    }

    /// Re-expresses the polynomial in a ring with the same variables and
    /// field (typically a different monomial order).
    pub fn to_ring(&self, ring: &RingRef) -> Result<Polynomial> {
        if ring.nvars() != self.ring.nvars() || ring.field() != self.ring.field() {
            return Err(Error::DimensionMismatch(
                "target ring has different variables or field".into(),
            ));
        }
        let grading = ring.grading();
        Ok(Polynomial::from_terms(
            ring,
            self.terms
                .iter()
                .map(|t| (Monomial::new(t.monomial.exponents(), grading), t.coeff)),
        ))
    }

    /// Maps each term's exponent vector through `f` into another ring.
    pub fn map_exponents<F>(&self, ring: &RingRef, mut f: F) -> Polynomial
    where
        F: FnMut(&[u16]) -> Vec<u16>,
    {
        let grading = ring.grading();
        Polynomial::from_terms(
            ring,
            self.terms
                .iter()
                .map(|t| (Monomial::new(&f(t.monomial.exponents()), grading), t.coeff)),
        )
    }
}

impl std::ops::Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("ring mismatch in addition")
    }
}

impl std::ops::Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("ring mismatch in subtraction")
    }
}

impl std::ops::Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs)
            .expect("ring mismatch in multiplication")
    }
}

impl std::ops::Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::neg(self)
    }
}

impl fmt::Display for Polynomial {
    /// `c*X1^a*X2` style, coefficients in symmetric representation.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let field = self.ring.field();
        for (i, t) in self.terms.iter().enumerate() {
            let c = field.to_symmetric(t.coeff);
            let (neg, abs) = (c < 0, c.unsigned_abs());
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { "-" } else { "+" })?;
            }
            let mut factors = Vec::new();
            for (name, &e) in self.ring.names().iter().zip(t.monomial.exponents()) {
                match e {
                    0 => {}
                    1 => factors.push(name.clone()),
                    _ => factors.push(format!("{name}^{e}")),
                }
            }
            if factors.is_empty() {
                write!(f, "{abs}")?;
            } else if abs == 1 {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{abs}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}
