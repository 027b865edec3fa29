//! Exact arithmetic over GF(p): fields, monomials, orders and sparse
//! multivariate polynomials.

mod field;
mod monomial;
mod parse;
mod polynomial;
mod ring;

pub use field::{PrimeField, DEFAULT_PRIME};
pub use monomial::{
    exponent_vectors_of_degree, monomials_up_to, Exponents, Grading, Monomial, MonomialOrder,
};
pub use parse::{parse_polynomial, parse_polynomial_at};
pub use polynomial::{Polynomial, Term};
pub use ring::{PolyRing, RingRef};

/// Matrix of polynomials in row-major order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Polynomial>,
}

impl PolyMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Polynomial>) -> Self {
        assert_eq!(entries.len(), rows * cols);
        PolyMatrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn zeros(ring: &RingRef, rows: usize, cols: usize) -> Self {
        PolyMatrix {
            rows,
            cols,
            entries: vec![Polynomial::zero(ring); rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Polynomial {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Polynomial) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Polynomial] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn entries(&self) -> &[Polynomial] {
        &self.entries
    }

    pub fn checked_mul(&self, other: &PolyMatrix) -> crate::Result<PolyMatrix> {
        if self.cols != other.rows {
            return Err(crate::Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let ring = match self.entries.first().or(other.entries.first()) {
            Some(p) => p.ring().clone(),
            None => return Ok(PolyMatrix::new(self.rows, other.cols, Vec::new())),
        };
        let mut out = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Polynomial::zero(&ring);
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    let b = other.get(k, j);
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc.checked_add(&a.checked_mul(b)?)?;
                    }
                }
                out.push(acc);
            }
        }
        Ok(PolyMatrix::new(self.rows, other.cols, out))
    }
}
