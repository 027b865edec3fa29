//! Textbook Buchberger algorithm with the normal selection strategy and the
//! coprime and chain criteria.

use std::collections::{BTreeSet, HashSet};

use crate::algebra::{Monomial, MonomialOrder, Polynomial};
use crate::error::{Error, Result};
use crate::groebner::GroebnerBasis;

use super::normal_form::{interreduce, normal_form, s_polynomial};

/// Reduced monic Gröbner basis of the ideal generated by `gens` for `order`.
pub fn buchberger(gens: &[Polynomial], order: MonomialOrder) -> Result<GroebnerBasis> {
    let first = gens
        .first()
        .ok_or_else(|| Error::UndefinedInput("no generators".into()))?;
    let ring = first.ring().with_order(order);
    let mut basis: Vec<Polynomial> = Vec::new();
    for g in gens {
        let g = g.to_ring(&ring)?;
        if !g.is_zero() {
            basis.push(g.monic()?);
        }
    }
    if basis.is_empty() {
        return GroebnerBasis::from_reduced(&ring, Vec::new());
    }
    let grading = ring.grading().clone();
    let mut lms: Vec<Monomial> = basis
        .iter()
        .map(|p| p.leading_monomial().unwrap().clone())
        .collect();
    // queue ordered by (lcm degree, insertion stamp); `open` mirrors it by pair
    let mut queue: BTreeSet<(u32, usize, usize, usize)> = BTreeSet::new();
    let mut open: HashSet<(usize, usize)> = HashSet::new();
    let mut stamp = 0usize;
    let mut add_pairs = |queue: &mut BTreeSet<_>, open: &mut HashSet<_>, lms: &[Monomial]| {
        let j = lms.len() - 1;
        for i in 0..j {
            queue.insert((lms[i].lcm(&lms[j], &grading).degree(), stamp, i, j));
            open.insert((i, j));
            stamp += 1;
        }
    };
    for j in 1..=lms.len() {
        add_pairs(&mut queue, &mut open, &lms[..j]);
    }
    while let Some(key) = queue.pop_first() {
        let (_, _, i, j) = key;
        open.remove(&(i, j));
        let l = lms[i].lcm(&lms[j], ring.grading());
        let is_open = |a: usize, b: usize| open.contains(&(a.min(b), a.max(b)));
        let chain = (0..basis.len())
            .any(|k| k != i && k != j && lms[k].divides(&l) && !is_open(i, k) && !is_open(j, k));
        if lms[i].is_coprime(&lms[j]) || chain {
            continue;
        }
        let h = normal_form(&s_polynomial(&basis[i], &basis[j]), &basis);
        if h.is_zero() {
            continue;
        }
        let h = h.monic()?;
        lms.push(h.leading_monomial().unwrap().clone());
        basis.push(h);
        add_pairs(&mut queue, &mut open, &lms);
    }
    GroebnerBasis::from_reduced(&ring, interreduce(&basis))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_polynomial, PolyRing, PrimeField};
    use crate::reference::is_groebner;

    #[test]
    fn examples() {
        let r = PolyRing::standard(PrimeField::default(), 2);
        let p = |s| parse_polynomial(&r, s).unwrap();
        let gb = buchberger(&[p("X1"), p("X2")], MonomialOrder::Grevlex).unwrap();
        assert_eq!(gb.polynomials(), &[p("X2"), p("X1")]);
        let gb = buchberger(&[p("X1^2+X2^2-1"), p("2*X2")], MonomialOrder::Grevlex).unwrap();
        assert_eq!(gb.polynomials(), &[p("X2"), p("X1^2-1")]);
        let gb = buchberger(&[p("X1^2+X2"), p("X1*X2+1")], MonomialOrder::Grevlex).unwrap();
        assert!(is_groebner(gb.polynomials()));
        assert_eq!(gb.quotient_dimension(100).unwrap(), 3);
    }

    #[test]
    fn lex_basis() {
        let r = PolyRing::standard(PrimeField::default(), 2);
        let p = |s| parse_polynomial(&r, s).unwrap();
        let gb = buchberger(&[p("X1^2+X2^2-1"), p("X1-X2")], MonomialOrder::Lex).unwrap();
        let lr = r.with_order(MonomialOrder::Lex);
        let l = |s| parse_polynomial(&lr, s).unwrap();
        // 2 X2^2 = 1
        assert_eq!(gb.polynomials(), &[l("X2^2-32761"), l("X1-X2")]);
    }
}
