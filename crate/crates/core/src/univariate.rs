//! Integer polynomials and rational power series in one variable `t`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// Univariate polynomial with `i64` coefficients, lowest degree first, with
/// no trailing zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<i64>,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPoly { coeffs: vec![1] }
    }

    pub fn from_coeffs(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    /// `c * t^k`.
    pub fn monomial(c: i64, k: usize) -> Self {
        let mut coeffs = vec![0; k + 1];
        coeffs[k] = c;
        Self::from_coeffs(coeffs)
    }

    /// `1 - t^e`; zero when `e = 0`.
    pub fn one_minus_t_pow(e: usize) -> Self {
        &Self::one() - &Self::monomial(1, e)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> i64 {
        self.coeffs.get(k).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, t: i64) -> i64 {
        self.coeffs.iter().rev().fold(0, |acc, &c| acc * t + c)
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    pub fn scale(&self, c: i64) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|&x| x * c).collect())
    }

    /// Exact quotient by `1 - t`, or `None` when `self(1) != 0`.
    pub fn div_one_minus_t(&self) -> Option<Self> {
        // self = (1 - t) q  <=>  q_k = sum_{j <= k} self_j
        if self.eval(1) != 0 {
            return None;
        }
        let mut acc = 0;
        let mut q = Vec::with_capacity(self.coeffs.len());
        for &c in &self.coeffs {
            acc += c;
            q.push(acc);
        }
        Some(Self::from_coeffs(q))
    }

    /// Multiplicity of `t = 1` as a root.
    pub fn order_at_one(&self) -> Option<usize> {
        if self.is_zero() {
            return None;
        }
        let mut k = 0;
        let mut cur = self.clone();
        while let Some(q) = cur.div_one_minus_t() {
            cur = q;
            k += 1;
        }
        Some(k)
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::from_coeffs((0..len).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::from_coeffs((0..len).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![0i64; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::from_coeffs(out)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        self.scale(-1)
    }
}

/// Highest power first, e.g. `t^5 + t^4 - 3*t^3 + 1`.
impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else { "+" };
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.unsigned_abs();
            match (k, a) {
                (0, _) => write!(f, "{a}")?,
                (_, 1) => {}
                _ => write!(f, "{a}*")?,
            }
            match k {
                0 => {}
                1 => write!(f, "t")?,
                _ => write!(f, "t^{k}")?,
            }
        }
        Ok(())
    }
}

/// `numerator / prod (1 - t^e)^m` expanded as a power series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalSeries {
    pub numerator: IntPoly,
    /// Pairs `(e, m)` for the factor `(1 - t^e)^m`.
    pub denominator: Vec<(usize, u32)>,
}

impl RationalSeries {
    pub fn new(numerator: IntPoly, denominator: Vec<(usize, u32)>) -> Self {
        RationalSeries {
            numerator,
            denominator,
        }
    }

    /// False when a factor `1 - t^0` makes the series undefined.
    pub fn is_expandable(&self) -> bool {
        self.denominator.iter().all(|&(e, m)| e > 0 || m == 0)
    }

    pub fn denominator_poly(&self) -> IntPoly {
        self.denominator
            .iter()
            .fold(IntPoly::one(), |acc, &(e, m)| {
                &acc * &IntPoly::one_minus_t_pow(e).pow(m)
            })
    }

    /// First `len` coefficients. Division by each `1 - t^e` is the running
    /// recurrence `c_k += c_{k-e}`.
    pub fn expand(&self, len: usize) -> Result<Vec<i64>> {
        if !self.is_expandable() {
            return Err(Error::UndefinedInput(
                "denominator factor 1 - t^0 vanishes".into(),
            ));
        }
        let mut c: Vec<i64> = (0..len).map(|k| self.numerator.coeff(k)).collect();
        for &(e, m) in &self.denominator {
            for _ in 0..m {
                for k in e..len {
                    c[k] += c[k - e];
                }
            }
        }
        Ok(c)
    }

    /// The series as a polynomial, if it terminates within `limit` terms.
    pub fn to_polynomial(&self, limit: usize) -> Result<IntPoly> {
        let num_deg = self.numerator.degree().unwrap_or(0);
        let den_deg: usize = self.denominator.iter().map(|&(e, m)| e * m as usize).sum();
        let len = limit.max(num_deg + 1);
        let c = self.expand(len)?;
        let cut = (num_deg + 1).saturating_sub(den_deg).min(len);
        if c[cut..].iter().any(|&x| x != 0) {
            return Err(Error::NonPolynomialSeries(format!(
                "expansion does not terminate within {len} terms"
            )));
        }
        Ok(IntPoly::from_coeffs(c[..cut].to_vec()))
    }
}
