//! Closed formulas: Hilbert series of the determinantal ideal and of the
//! critical ideal, degree of regularity, algebraic degree and the
//! arithmetic/geometric degree averages that drive the complexity bound.

use num_rational::Ratio;

use crate::combinat::{binomial, compositions};
use crate::critical::ProblemShape;
use crate::error::Result;
use crate::univariate::{IntPoly, RationalSeries};

/// Weighted Hilbert series of `Q[U]/D` where `D` is generated by the maximal
/// minors of the generic `(p+1) x n` matrix with `wdeg U_{i,j} = d_i - 1`.
///
/// When `d_0 = 1` the denominator contains `1 - t^0` and the series itself
/// is undefined; the numerator is still meaningful.
pub fn hs_determinantal(shape: &ProblemShape) -> RationalSeries {
    let n = shape.n() as u64;
    let p = shape.p() as u64;
    let w: Vec<usize> = shape.degrees().iter().map(|&d| d as usize - 1).collect();
    let mut num = IntPoly::one();
    for k in 0..(n - p) {
        let c = binomial(n, p + k + 1) as i64;
        let sign = if k % 2 == 0 { -1 } else { 1 };
        for i in compositions(k as u32, shape.p() + 1) {
            let e: usize = i
                .iter()
                .zip(&w)
                .map(|(&ij, &wj)| (ij as usize + 1) * wj)
                .sum();
            num = &num + &IntPoly::monomial(sign * c, e);
        }
    }
    let mut den: Vec<(usize, u32)> = Vec::new();
    for &e in &w {
        match den.iter_mut().find(|(f, _)| *f == e) {
            Some((_, m)) => *m += shape.n() as u32,
            None => den.push((e, shape.n() as u32)),
        }
    }
    RationalSeries::new(num, den)
}

/// Hilbert series of `GF(p)[X]/Icrit(q^inf, F^inf)`, a polynomial.
///
/// The factor `(1 - t^{d_i - 1})^n` of the determinantal denominator cancels
/// symbolically against the regular-sequence factor, leaving
/// `N(t) * prod_{i >= 1} (1 - t^{d_i}) / (1 - t)^n`.
pub fn hs_critical(shape: &ProblemShape) -> Result<IntPoly> {
    let det = hs_determinantal(shape);
    let num = shape.degrees()[1..].iter().fold(det.numerator, |acc, &d| {
        &acc * &IntPoly::one_minus_t_pow(d as usize)
    });
    let limit = 4 * shape.n() * shape.max_degree() as usize;
    RationalSeries::new(num, vec![(1, shape.n() as u32)]).to_polynomial(limit)
}

/// Hilbert series of the homogenized critical ideal in `n + 1` variables:
/// `hs_critical / (1 - t)`. Coefficients plateau at the algebraic degree.
pub fn hs_homogenized(shape: &ProblemShape) -> Result<RationalSeries> {
    Ok(RationalSeries::new(hs_critical(shape)?, vec![(1, 1)]))
}

/// `(n - p - 1) max(d_i - 1) - n - p + d_0 + 2 sum_{i >= 1} d_i`.
pub fn degree_of_regularity(shape: &ProblemShape) -> u32 {
    let n = shape.n() as i64;
    let p = shape.p() as i64;
    let m = shape.max_degree_minus_one() as i64;
    let d = shape.degrees();
    let sum: i64 = d[1..].iter().map(|&x| x as i64).sum();
    let v = (n - p - 1) * m - n - p + d[0] as i64 + 2 * sum;
    u32::try_from(v).expect("regularity is positive on valid shapes")
}

/// Upper bound on the witness degree; equal to the degree of regularity.
pub fn witness_degree_bound(shape: &ProblemShape) -> u32 {
    degree_of_regularity(shape)
}

/// `(prod_{i >= 1} d_i) * sum over compositions i of n - p of prod (d_j - 1)^{i_j}`.
pub fn algebraic_degree(shape: &ProblemShape) -> u64 {
    let d = shape.degrees();
    let prod: u64 = d[1..].iter().map(|&x| x as u64).product();
    let sum: u64 = compositions((shape.n() - shape.p()) as u32, shape.p() + 1)
        .iter()
        .map(|i| {
            i.iter()
                .zip(d)
                .map(|(&e, &dj)| (dj as u64 - 1).pow(e))
                .product::<u64>()
        })
        .sum();
    prod * sum
}

/// Complexity predictors of a shape. `A` and `G` are the arithmetic and
/// geometric means of the multiset
/// `{d_1, ..., d_p, max(d_i - 1) (n - p times)}`.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexityProfile {
    pub shape: ProblemShape,
    pub a: Ratio<u64>,
    /// `G^n`, exact.
    pub g_radicand: u128,
    /// Root index `n` of `G`.
    pub g_root: u32,
    pub g: f64,
    pub delta: u64,
    pub dreg: u32,
    pub dwit_bound: u32,
}

impl ComplexityProfile {
    pub fn a_f64(&self) -> f64 {
        *self.a.numer() as f64 / *self.a.denom() as f64
    }

    /// `log(A) / log(G)`; infinite when `G = 1`.
    pub fn log_a_over_log_g(&self) -> f64 {
        self.a_f64().ln() / self.g.ln()
    }

    /// Exact `A >= G`, i.e. `A^n >= G^n`.
    pub fn am_gm_holds(&self) -> bool {
        let n = self.g_root;
        let num = (*self.a.numer() as u128).pow(n);
        let den = (*self.a.denom() as u128).pow(n);
        num >= self.g_radicand * den
    }
}

pub fn averages(shape: &ProblemShape) -> ComplexityProfile {
    let n = shape.n() as u64;
    let p = shape.p() as u64;
    let m = shape.max_degree_minus_one() as u64;
    let cons = &shape.degrees()[1..];
    let sum: u64 = cons.iter().map(|&d| d as u64).sum();
    let a = Ratio::new((n - p) * m + sum, n);
    let radicand =
        (m as u128).pow((n - p) as u32) * cons.iter().map(|&d| d as u128).product::<u128>();
    let g = (radicand as f64).powf(1.0 / n as f64);
    ComplexityProfile {
        shape: shape.clone(),
        a,
        g_radicand: radicand,
        g_root: n as u32,
        g,
        delta: algebraic_degree(shape),
        dreg: degree_of_regularity(shape),
        dwit_bound: witness_degree_bound(shape),
    }
}
