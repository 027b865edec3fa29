//! Multiplication tables of a zero-dimensional quotient and the FGLM change
//! of monomial order.

use crate::algebra::{Monomial, MonomialOrder, Polynomial, PrimeField};
use crate::error::{Error, Result};
use crate::groebner::{GroebnerBasis, Staircase};

/// For each variable `X_i`, the matrix of multiplication by `X_i` on the
/// quotient, in the staircase basis: column `j` holds the coordinates of
/// `NF(X_i * b_j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicationTables {
    field: PrimeField,
    staircase: Staircase,
    order: MonomialOrder,
    tables: Vec<Vec<Vec<u32>>>,
}

impl MultiplicationTables {
    pub fn new(gb: &GroebnerBasis, cap: usize) -> Result<Self> {
        let staircase = gb.staircase(cap)?;
        let ring = gb.ring();
        let order = gb.order();
        let delta = staircase.len();
        let mut tables = Vec::with_capacity(ring.nvars());
        for i in 0..ring.nvars() {
            let mut t = vec![vec![0u32; delta]; delta];
            for (j, b) in staircase.monomials().iter().enumerate() {
                let prod = Polynomial::term(ring, b.times_variable(i, ring.grading()), 1);
                for term in gb.reduce(&prod).terms() {
                    let r = staircase
                        .index_of(&term.monomial, order)
                        .ok_or_else(|| Error::Internal("normal form left the staircase".into()))?;
                    t[r][j] = term.coeff;
                }
            }
            tables.push(t);
        }
        Ok(MultiplicationTables {
            field: ring.field(),
            staircase,
            order,
            tables,
        })
    }

    pub fn dimension(&self) -> usize {
        self.staircase.len()
    }

    pub fn staircase(&self) -> &Staircase {
        &self.staircase
    }

    pub fn table(&self, i: usize) -> &[Vec<u32>] {
        &self.tables[i]
    }

    /// `M_i v`.
    pub fn apply(&self, i: usize, v: &[u32]) -> Vec<u32> {
        let p = self.field.modulus() as u64;
        self.tables[i]
            .iter()
            .map(|row| {
                (row.iter()
                    .zip(v)
                    .map(|(&a, &b)| a as u64 * b as u64 % p)
                    .sum::<u64>()
                    % p) as u32
            })
            .collect()
    }

    fn product(&self, a: usize, b: usize) -> Vec<Vec<u32>> {
        let d = self.dimension();
        let p = self.field.modulus() as u64;
        let (ma, mb) = (&self.tables[a], &self.tables[b]);
        (0..d)
            .map(|r| {
                (0..d)
                    .map(|c| {
                        ((0..d)
                            .map(|k| ma[r][k] as u64 * mb[k][c] as u64 % p)
                            .sum::<u64>()
                            % p) as u32
                    })
                    .collect()
            })
            .collect()
    }

    /// Whether all pairs of tables commute.
    pub fn commute(&self) -> bool {
        let n = self.tables.len();
        (0..n).all(|a| (a + 1..n).all(|b| self.product(a, b) == self.product(b, a)))
    }

    /// Coordinates of the class of `m`, computed through the tables.
    fn coordinates(&self, m: &Monomial) -> Vec<u32> {
        let mut v = vec![0u32; self.dimension()];
        let one = Monomial::one(m.nvars());
        v[self.staircase.index_of(&one, self.order).unwrap()] = 1;
        for (i, &e) in m.exponents().iter().enumerate() {
            for _ in 0..e {
                v = self.apply(i, &v);
            }
        }
        v
    }
}

struct EchelonRow {
    pivot: usize,
    vector: Vec<u32>,
    /// Coordinates of `vector` in terms of the new staircase elements.
    combo: Vec<u32>,
}

/// Reduced Gröbner basis of the same ideal for `target`, found by scanning
/// monomials in increasing `target` order for linear dependencies among
/// their normal forms.
pub fn fglm(gb: &GroebnerBasis, target: MonomialOrder, cap: usize) -> Result<GroebnerBasis> {
    let ring = gb.ring().with_order(target);
    if gb.is_unit() {
        return GroebnerBasis::from_reduced(&ring, vec![Polynomial::constant(&ring, 1)]);
    }
    let tables = MultiplicationTables::new(gb, cap)?;
    let field = ring.field();
    let n = ring.nvars();
    let grading = ring.grading().clone();

    let mut new_stair: Vec<(Monomial, Vec<u32>)> = Vec::new();
    let mut new_lms: Vec<Monomial> = Vec::new();
    let mut new_polys: Vec<Polynomial> = Vec::new();
    let mut echelon: Vec<EchelonRow> = Vec::new();
    let mut candidates = vec![Monomial::one(n)];

    while !candidates.is_empty() {
        let (idx, _) = candidates
            .iter()
            .enumerate()
            .min_by(|a, b| target.cmp(a.1, b.1))
            .unwrap();
        let m = candidates.swap_remove(idx);
        if new_lms.iter().any(|l| l.divides(&m)) {
            continue;
        }
        let v = match (0..n).find_map(|i| {
            let q = m.divide_by_variable(i, &grading)?;
            new_stair.iter().find(|(b, _)| *b == q).map(|(_, v)| (i, v))
        }) {
            Some((i, v)) => tables.apply(i, v),
            None => tables.coordinates(&m),
        };
        let mut r = v.clone();
        let mut combo = vec![0u32; new_stair.len() + 1];
        for row in &echelon {
            let c = r[row.pivot];
            if c == 0 {
                continue;
            }
            let f = field.neg(c);
            for (x, &y) in r.iter_mut().zip(&row.vector) {
                if y != 0 {
                    *x = field.add(*x, field.mul(f, y));
                }
            }
            for (x, &y) in combo.iter_mut().zip(&row.combo) {
                if y != 0 {
                    *x = field.add(*x, field.mul(f, y));
                }
            }
        }
        match r.iter().position(|&x| x != 0) {
            None => {
                // v(m) + sum combo_k v(b_k) = 0
                let terms = std::iter::once((m.clone(), 1)).chain(
                    new_stair
                        .iter()
                        .zip(&combo)
                        .filter(|(_, &c)| c != 0)
                        .map(|((b, _), &c)| (b.clone(), c)),
                );
                new_polys.push(Polynomial::from_terms(&ring, terms));
                new_lms.push(m);
            }
            Some(pivot) => {
                let s = new_stair.len();
                combo[s] = 1;
                let inv = field.inv(r[pivot])?;
                for x in r.iter_mut().chain(combo.iter_mut()) {
                    *x = field.mul(*x, inv);
                }
                for row in echelon.iter_mut() {
                    row.combo.push(0);
                }
                echelon.push(EchelonRow {
                    pivot,
                    vector: r,
                    combo,
                });
                for i in 0..n {
                    let next = m.times_variable(i, &grading);
                    if !candidates.contains(&next) {
                        candidates.push(next);
                    }
                }
                new_stair.push((m, v));
            }
        }
        if new_stair.len() > tables.dimension() {
            return Err(Error::Internal(
                "FGLM staircase outgrew the quotient".into(),
            ));
        }
    }
    GroebnerBasis::from_reduced(&ring, new_polys)
}

pub fn quotient_dimension(gb: &GroebnerBasis, cap: usize) -> Result<usize> {
    gb.quotient_dimension(cap)
}
