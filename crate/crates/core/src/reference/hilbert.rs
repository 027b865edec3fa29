//! Hilbert function of a homogeneous ideal by brute force, computed twice:
//! from ranks of degree-wise coefficient matrices and from the staircase of
//! a Gröbner basis.

use std::collections::HashMap;

use crate::algebra::{
    exponent_vectors_of_degree, Exponents, MonomialOrder, Polynomial, PrimeField,
};
use crate::combinat::binomial;
use crate::error::{Error, Result};
use crate::univariate::IntPoly;

use super::buchberger::buchberger;

/// Rank over GF(p) of a dense matrix, by Gaussian elimination.
pub fn dense_rank(field: PrimeField, mut rows: Vec<Vec<u32>>) -> usize {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = field.inv(rows[rank][c]).unwrap();
        let pivot: Vec<u32> = rows[rank].iter().map(|&x| field.mul(x, inv)).collect();
        for r in rank + 1..rows.len() {
            let f = rows[r][c];
            if f != 0 {
                for (x, &y) in rows[r].iter_mut().zip(&pivot) {
                    *x = field.sub(*x, field.mul(f, y));
                }
            }
        }
        rows[rank] = pivot;
        rank += 1;
    }
    rank
}

/// `dim R_d - rank` of the span of all `mu * g` in degree `d`, for `d <= truncation`.
pub fn hilbert_by_rank(gens: &[Polynomial], truncation: u32) -> Result<Vec<i64>> {
    let ring = gens
        .first()
        .ok_or_else(|| Error::UndefinedInput("no generators".into()))?
        .ring()
        .clone();
    let n = ring.nvars();
    let gens: Vec<&Polynomial> = gens.iter().filter(|g| !g.is_zero()).collect();
    if gens.iter().any(|g| !g.is_homogeneous()) || !ring.grading().is_standard() {
        return Err(Error::UndefinedInput(
            "brute-force Hilbert function needs homogeneous generators".into(),
        ));
    }
    let mut out = Vec::with_capacity(truncation as usize + 1);
    for d in 0..=truncation {
        let cols: HashMap<Exponents, usize> = exponent_vectors_of_degree(n, d)
            .into_iter()
            .enumerate()
            .map(|(i, e)| (e, i))
            .collect();
        let mut rows = Vec::new();
        for g in &gens {
            let gd = g.degree().unwrap();
            if gd > d {
                continue;
            }
            for mu in exponent_vectors_of_degree(n, d - gd) {
                let mu = ring.monomial(&mu);
                let mut row = vec![0u32; cols.len()];
                for t in g.terms() {
                    row[cols[mu.mul(&t.monomial).exponents()]] = t.coeff;
                }
                rows.push(row);
            }
        }
        let total = binomial(n as u64 + d as u64 - 1, d as u64) as i64;
        let total = if n == 0 { i64::from(d == 0) } else { total };
        out.push(total - dense_rank(ring.field(), rows) as i64);
    }
    Ok(out)
}

/// Standard monomials per degree for a grevlex Gröbner basis of `gens`.
pub fn hilbert_by_staircase(gens: &[Polynomial], truncation: u32) -> Result<Vec<i64>> {
    let gb = buchberger(gens, MonomialOrder::Grevlex)?;
    let n = gb.ring().nvars();
    let lms = gb.leading_monomials();
    Ok((0..=truncation)
        .map(|d| {
            exponent_vectors_of_degree(n, d)
                .iter()
                .filter(|e| {
                    let m = gb.ring().monomial(e.as_slice());
                    !lms.iter().any(|l| l.divides(&m))
                })
                .count() as i64
        })
        .collect())
}

/// Hilbert series prefix up to `truncation`, checked by both methods.
pub fn hilbert_bruteforce(gens: &[Polynomial], truncation: u32) -> Result<IntPoly> {
    let by_rank = hilbert_by_rank(gens, truncation)?;
    let by_staircase = hilbert_by_staircase(gens, truncation)?;
    for (d, (&a, &b)) in by_rank.iter().zip(&by_staircase).enumerate() {
        if a != b {
            return Err(Error::HilbertMismatch {
                degree: d,
                by_rank: a,
                by_staircase: b,
            });
        }
    }
    Ok(IntPoly::from_coeffs(by_rank))
}
