//! Reduced Gröbner bases and their staircases of standard monomials.

use std::collections::HashSet;
use std::fmt;

use crate::algebra::{Monomial, MonomialOrder, Polynomial, RingRef};
use crate::error::{Error, Result};
use crate::reference::normal_form;

/// Default staircase cap when no expected size is known.
pub const DEFAULT_STAIRCASE_CAP: usize = 100_000;

/// A reduced, monic Gröbner basis sorted by increasing leading monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    ring: RingRef,
    polys: Vec<Polynomial>,
}

impl GroebnerBasis {
    /// Wraps polynomials that already form a reduced Gröbner basis, after
    /// making them monic and sorting them.
    pub fn from_reduced(ring: &RingRef, polys: Vec<Polynomial>) -> Result<Self> {
        let order = ring.order();
        let mut polys = polys
            .into_iter()
            .filter(|p| !p.is_zero())
            .map(|p| p.monic())
            .collect::<Result<Vec<_>>>()?;
        if polys.iter().any(|p| !Polynomial::zero(ring).same_ring(p)) {
            return Err(Error::DimensionMismatch(
                "basis element from another ring".into(),
            ));
        }
        polys.sort_by(|a, b| {
            order.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap())
        });
        Ok(GroebnerBasis {
            ring: ring.clone(),
            polys,
        })
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn order(&self) -> MonomialOrder {
        self.ring.order()
    }

    pub fn polynomials(&self) -> &[Polynomial] {
        &self.polys
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.polys
            .iter()
            .map(|p| p.leading_monomial().unwrap().clone())
            .collect()
    }

    /// Whether the ideal is the whole ring.
    pub fn is_unit(&self) -> bool {
        self.polys.iter().any(|p| p.is_constant())
    }

    pub fn reduce(&self, f: &Polynomial) -> Polynomial {
        normal_form(f, &self.polys)
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        self.reduce(f).is_zero()
    }

    /// Every variable has a pure power among the leading monomials.
    pub fn is_zero_dimensional(&self) -> bool {
        let lms = self.leading_monomials();
        (0..self.ring.nvars()).all(|i| {
            lms.iter().any(|m| {
                let e = m.exponents();
                e[i] > 0 && e.iter().enumerate().all(|(j, &x)| j == i || x == 0)
            })
        }) || self.is_unit()
    }

    /// Standard monomials, failing once more than `cap` have been found.
    pub fn staircase(&self, cap: usize) -> Result<Staircase> {
        let lms = self.leading_monomials();
        let grading = self.ring.grading();
        let n = self.ring.nvars();
        let standard = |m: &Monomial| !lms.iter().any(|l| l.divides(m));
        let one = Monomial::one(n);
        let mut found = Vec::new();
        if standard(&one) {
            let mut seen = HashSet::new();
            seen.insert(one.clone());
            let mut queue = vec![one];
            while let Some(m) = queue.pop() {
                found.push(m.clone());
                if found.len() > cap {
                    return Err(Error::PositiveDimension { cap });
                }
                for i in 0..n {
                    let next = m.times_variable(i, grading);
                    if standard(&next) && seen.insert(next.clone()) {
                        queue.push(next);
                    }
                }
            }
        }
        let order = self.order();
        found.sort_by(|a, b| order.cmp(a, b));
        Ok(Staircase { monomials: found })
    }

    /// Dimension of the quotient algebra.
    pub fn quotient_dimension(&self, cap: usize) -> Result<usize> {
        Ok(self.staircase(cap)?.len())
    }
}

/// One polynomial per line, leading term first.
impl fmt::Display for GroebnerBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.polys {
            writeln!(f, "{p}")?;
        }
        Ok(())
    }
}

/// Monomials outside the leading-term ideal, sorted increasingly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Staircase {
    monomials: Vec<Monomial>,
}

impl Staircase {
    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn index_of(&self, m: &Monomial, order: MonomialOrder) -> Option<usize> {
        self.monomials.binary_search_by(|x| order.cmp(x, m)).ok()
    }

    /// Number of standard monomials in each degree.
    pub fn degree_counts(&self) -> Vec<i64> {
        let mut out = Vec::new();
        for m in &self.monomials {
            let d = m.degree() as usize;
            if out.len() <= d {
                out.resize(d + 1, 0);
            }
            out[d] += 1;
        }
        out
    }

    /// Every divisor of a standard monomial is standard.
    pub fn is_closed_under_division(&self) -> bool {
        let set: HashSet<&[u16]> = self.monomials.iter().map(|m| m.exponents()).collect();
        self.monomials.iter().all(|m| {
            (0..m.nvars()).all(|i| {
                let mut e = m.exponents().to_vec();
                if e[i] == 0 {
                    return true;
                }
                e[i] -= 1;
                set.contains(e.as_slice())
            })
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_polynomial, PolyRing, PrimeField};

    #[test]
    fn staircase_of_running_example() {
        let r = PolyRing::standard(PrimeField::default(), 2);
        let p = |s| parse_polynomial(&r, s).unwrap();
        let gb = GroebnerBasis::from_reduced(&r, vec![p("X1^2-1"), p("X2")]).unwrap();
        assert_eq!(gb.polynomials()[0], p("X2"));
        assert!(gb.is_zero_dimensional());
        let st = gb.staircase(10).unwrap();
        assert_eq!(st.len(), 2);
        assert!(st.is_closed_under_division());
        assert_eq!(st.degree_counts(), vec![1, 1]);
        assert_eq!(gb.to_string(), "X2\nX1^2-1\n");
    }

    #[test]
    fn positive_dimension_is_detected() {
        let r = PolyRing::standard(PrimeField::default(), 2);
        let gb =
            GroebnerBasis::from_reduced(&r, vec![parse_polynomial(&r, "X1^2").unwrap()]).unwrap();
        assert!(!gb.is_zero_dimensional());
        assert!(matches!(
            gb.staircase(50),
            Err(Error::PositiveDimension { cap: 50 })
        ));
    }
}
