//! Reduction modulo a list of polynomials, S-polynomials and the Buchberger
//! criterion.

use std::cmp::Ordering;
use std::collections::hash_map::Entry;
use std::collections::{BinaryHeap, HashMap};

use crate::algebra::{Monomial, MonomialOrder, Polynomial, Term};

/// Heap entry ordered by the ring's monomial order.
struct Key(Monomial, MonomialOrder);

impl PartialEq for Key {
    fn eq(&self, other: &Self) -> bool {
        self.0 == other.0
    }
}

impl Eq for Key {}

impl PartialOrd for Key {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Key {
    fn cmp(&self, other: &Self) -> Ordering {
        self.1.cmp(&self.0, &other.0)
    }
}

/// Full reduction of `f` by `divisors`: no term of the result is divisible
/// by a leading monomial of a divisor.
pub fn normal_form(f: &Polynomial, divisors: &[Polynomial]) -> Polynomial {
    let ring = f.ring();
    let field = ring.field();
    let order = ring.order();
    let divisors: Vec<(&Polynomial, u32)> = divisors
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| (g, field.inv(g.leading_coeff().unwrap()).unwrap()))
        .collect();
    let mut acc: HashMap<Monomial, u32> = HashMap::with_capacity(2 * f.len());
    let mut heap = BinaryHeap::with_capacity(2 * f.len());
    for t in f.terms() {
        acc.insert(t.monomial.clone(), t.coeff);
        heap.push(Key(t.monomial.clone(), order));
    }
    let mut rem = Vec::new();
    while let Some(Key(m, _)) = heap.pop() {
        let c = acc.remove(&m).unwrap();
        if c == 0 {
            continue;
        }
        let hit = divisors
            .iter()
            .find(|(g, _)| g.leading_monomial().unwrap().divides(&m));
        match hit {
            Some(&(g, inv)) => {
                let q = g.leading_monomial().unwrap().quotient_of(&m).unwrap();
                let k = field.neg(field.mul(c, inv));
                for t in &g.terms()[1..] {
                    let mon = q.mul(&t.monomial);
                    let v = field.mul(k, t.coeff);
                    match acc.entry(mon) {
                        Entry::Occupied(mut e) => {
                            let x = e.get_mut();
                            *x = field.add(*x, v);
                        }
                        Entry::Vacant(e) => {
                            heap.push(Key(e.key().clone(), order));
                            e.insert(v);
                        }
                    }
                }
            }
            None => rem.push(Term {
                monomial: m,
                coeff: c,
            }),
        }
    }
    Polynomial::from_sorted_terms(ring, rem)
}

/// `lcm/LT(f) * f - lcm/LT(g) * g` with monic scaling.
pub fn s_polynomial(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let ring = f.ring();
    let field = ring.field();
    let (Some(a), Some(b)) = (f.leading_term(), g.leading_term()) else {
        return Polynomial::zero(ring);
    };
    let l = a.monomial.lcm(&b.monomial, ring.grading());
    let ma = a.monomial.quotient_of(&l).unwrap();
    let mb = b.monomial.quotient_of(&l).unwrap();
    let fa = f.mul_term(&ma, field.inv(a.coeff).unwrap());
    fa.add_scaled(field.neg(field.inv(b.coeff).unwrap()), Some(&mb), g)
}

/// Reduced monic form of a Gröbner basis: drops elements whose leading
/// monomial is a multiple of another's and fully reduces the tails.
pub fn interreduce(polys: &[Polynomial]) -> Vec<Polynomial> {
    let Some(first) = polys.first() else {
        return Vec::new();
    };
    let order = first.ring().order();
    let mut g: Vec<Polynomial> = polys
        .iter()
        .filter(|p| !p.is_zero())
        .map(|p| p.monic().unwrap())
        .collect();
    g.sort_by(|a, b| order.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
    let mut minimal: Vec<Polynomial> = Vec::new();
    for p in g {
        let lm = p.leading_monomial().unwrap();
        if !minimal
            .iter()
            .any(|q| q.leading_monomial().unwrap().divides(lm))
        {
            minimal.push(p);
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let mut p = minimal[i].clone();
        let lead = p.pop_leading().unwrap();
        let others: Vec<Polynomial> = minimal
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, q)| q.clone())
            .collect();
        let tail = normal_form(&p, &others);
        let head = Polynomial::term(p.ring(), lead.monomial, lead.coeff);
        out.push(&head + &tail);
    }
    out
}

/// First pair `(i, j)` whose S-polynomial does not reduce to zero, or `None`
/// if `basis` is a Gröbner basis. Pairs are visited by increasing lcm and
/// skipped by the coprime and chain criteria.
pub fn buchberger_criterion(basis: &[Polynomial]) -> Option<(usize, usize)> {
    let g: Vec<&Polynomial> = basis.iter().filter(|p| !p.is_zero()).collect();
    let idx: Vec<usize> = (0..basis.len()).filter(|&i| !basis[i].is_zero()).collect();
    let m = g.len();
    let ring = g.first()?.ring();
    let lms: Vec<_> = g
        .iter()
        .map(|p| p.leading_monomial().unwrap().clone())
        .collect();
    let lcms: Vec<Vec<Monomial>> = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| lms[i].lcm(&lms[j], ring.grading()))
                .collect()
        })
        .collect();
    let mut pairs: Vec<(usize, usize)> = (0..m).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    let order = ring.order();
    pairs.sort_by(|a, b| order.cmp(&lcms[a.0][a.1], &lcms[b.0][b.1]));
    // pairs with a strictly smaller lcm are all settled before a pair is
    // visited; pairs with an equal lcm need an explicit flag
    let mut settled = vec![vec![false; m]; m];
    let owned: Vec<Polynomial> = g.iter().map(|p| (*p).clone()).collect();
    for (i, j) in pairs {
        let l = &lcms[i][j];
        let ok = |a: usize, k: usize| settled[a][k] || lcms[a][k] != *l;
        let chain = (0..m).any(|k| k != i && k != j && lms[k].divides(l) && ok(i, k) && ok(j, k));
        if !chain
            && !lms[i].is_coprime(&lms[j])
            && !normal_form(&s_polynomial(g[i], g[j]), &owned).is_zero()
        {
            return Some((idx[i], idx[j]));
        }
        settled[i][j] = true;
        settled[j][i] = true;
    }
    None
}

pub fn is_groebner(basis: &[Polynomial]) -> bool {
    buchberger_criterion(basis).is_none()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_polynomial, PolyRing, PrimeField, RingRef};

    fn ring() -> RingRef {
        PolyRing::standard(PrimeField::default(), 2)
    }

    #[test]
    fn normal_form_examples() {
        let r = ring();
        let p = |s| parse_polynomial(&r, s).unwrap();
        assert!(normal_form(&p("X1^2"), &[p("X1")]).is_zero());
        assert_eq!(normal_form(&p("X1^2+X2"), &[p("X2")]), p("X1^2"));
        assert_eq!(normal_form(&p("X1^2+X2^2-1"), &[p("2*X2")]), p("X1^2-1"));
    }

    #[test]
    fn s_polynomial_example() {
        let r = ring();
        let p = |s| parse_polynomial(&r, s).unwrap();
        assert_eq!(s_polynomial(&p("X1^2+X2"), &p("X1*X2")), p("X2^2"));
    }

    #[test]
    fn criterion_detects_missing_elements() {
        let r = ring();
        let p = |s| parse_polynomial(&r, s).unwrap();
        assert!(is_groebner(&[p("X2"), p("X1^2-1")]));
        assert!(!is_groebner(&[p("X1^2+X2"), p("X1*X2+1")]));
    }

    #[test]
    fn interreduce_example() {
        let r = ring();
        let p = |s| parse_polynomial(&r, s).unwrap();
        let out = interreduce(&[p("X1^2+X2^2-1"), p("2*X2"), p("X1*X2")]);
        assert_eq!(out, vec![p("X2"), p("X1^2-1")]);
    }
}
