//! Macaulay-matrix solver: all multiples `mu * k` of the generators up to a
//! degree bound, reduced row echelon form over GF(p), and extraction of the
//! reduced grevlex Gröbner basis from the reduced rows.

use std::collections::HashMap;

use crate::algebra::{
    monomials_up_to, Exponents, Monomial, MonomialOrder, Polynomial, RingRef, Term,
};
use crate::combinat::binomial;
use crate::critical::{critical_generators, CriticalSystem, GeneratorSet};
use crate::error::{Error, Result};
use crate::groebner::GroebnerBasis;
use crate::hilbert::{algebraic_degree, witness_degree_bound};
use crate::reference::{buchberger_criterion, interreduce, normal_form};

/// Sparse row: `(column, value)` pairs with increasing column.
pub type SparseRow = Vec<(u32, u32)>;

/// Row `(generator, multiplier)` encodes `multiplier * generators[generator]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowLabel {
    pub generator: usize,
    pub multiplier: Monomial,
}

#[derive(Clone, Debug)]
pub struct MacaulayMatrix {
    ring: RingRef,
    degree: u32,
    columns: Vec<Monomial>,
    labels: Vec<RowLabel>,
    rows: Vec<SparseRow>,
    generators: Vec<Polynomial>,
    complete: bool,
    reduced: bool,
}

impl MacaulayMatrix {
    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// All monomials of degree at most `d`, decreasing in grevlex.
    pub fn columns(&self) -> &[Monomial] {
        &self.columns
    }

    /// Row labels; empty once the matrix has been reduced.
    pub fn labels(&self) -> &[RowLabel] {
        &self.labels
    }

    pub fn rows(&self) -> &[SparseRow] {
        &self.rows
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.columns.len()
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    /// Whether every nonzero generator fits under the degree bound.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn row_polynomial(&self, i: usize) -> Polynomial {
        let terms = self.rows[i]
            .iter()
            .map(|&(c, v)| Term {
                monomial: self.columns[c as usize].clone(),
                coeff: v,
            })
            .collect();
        Polynomial::from_sorted_terms(&self.ring, terms)
    }
}

pub fn build_macaulay(gens: &GeneratorSet, d: u32) -> Result<MacaulayMatrix> {
    build_macaulay_from(&gens.all(), d)
}

/// Rows ordered by generator index, then multiplier in increasing grevlex.
pub fn build_macaulay_from(gens: &[Polynomial], d: u32) -> Result<MacaulayMatrix> {
    let ring = gens
        .first()
        .ok_or_else(|| Error::UndefinedInput("no generators".into()))?
        .ring()
        .clone();
    if ring.order() != MonomialOrder::Grevlex {
        return Err(Error::UndefinedInput(
            "Macaulay matrices use grevlex".into(),
        ));
    }
    let n = ring.nvars();
    let grading = ring.grading().clone();
    let columns = monomials_up_to(n, d, &grading, MonomialOrder::Grevlex);
    let index: HashMap<Exponents, u32> = columns
        .iter()
        .enumerate()
        .map(|(i, m)| (Exponents::from_slice(m.exponents()), i as u32))
        .collect();
    let mut labels = Vec::new();
    let mut rows = Vec::new();
    let mut complete = true;
    for (g_idx, g) in gens.iter().enumerate() {
        let Some(gd) = g.degree() else { continue };
        if gd > d {
            complete = false;
            continue;
        }
        let mut multipliers = monomials_up_to(n, d - gd, &grading, MonomialOrder::Grevlex);
        multipliers.reverse();
        for mu in multipliers {
            // grevlex is a monomial order, so mu * g stays sorted
            let row: SparseRow = g
                .terms()
                .iter()
                .map(|t| (index[mu.mul(&t.monomial).exponents()], t.coeff))
                .collect();
            rows.push(row);
            labels.push(RowLabel {
                generator: g_idx,
                multiplier: mu,
            });
        }
    }
    if rows.is_empty() {
        return Err(Error::EmptyMatrix(d));
    }
    let bound = gens.len() as u64 * binomial(n as u64 + d as u64, n as u64);
    if rows.len() as u64 > bound {
        return Err(Error::Internal(format!(
            "{} rows exceed the bound {bound}",
            rows.len()
        )));
    }
    Ok(MacaulayMatrix {
        ring,
        degree: d,
        columns,
        labels,
        rows,
        generators: gens.to_vec(),
        complete,
        reduced: false,
    })
}

/// Reduced row echelon form: pivots on the largest remaining column, zero
/// rows dropped, rows sorted by pivot column.
pub fn row_echelon(m: &MacaulayMatrix) -> MacaulayMatrix {
    let field = m.ring.field();
    let p = field.modulus() as u64;
    let ncols = m.ncols();
    let mut pivot_of: Vec<Option<usize>> = vec![None; ncols];
    let mut pivots: Vec<SparseRow> = Vec::new();
    let mut scratch = vec![0u64; ncols];

    for row in &m.rows {
        let Some(&(first, _)) = row.first() else {
            continue;
        };
        for &(c, v) in row {
            scratch[c as usize] = v as u64;
        }
        let mut out: SparseRow = Vec::new();
        for c in first as usize..ncols {
            let v = scratch[c] % p;
            scratch[c] = 0;
            if v == 0 {
                continue;
            }
            match pivot_of[c] {
                Some(r) => {
                    let f = p - v;
                    for &(j, a) in &pivots[r][1..] {
                        scratch[j as usize] += f * a as u64;
                    }
                }
                None => out.push((c as u32, v as u32)),
            }
        }
        if out.is_empty() {
            continue;
        }
        let inv = field.inv(out[0].1).unwrap();
        for e in out.iter_mut() {
            e.1 = field.mul(e.1, inv);
        }
        pivot_of[out[0].0 as usize] = Some(pivots.len());
        pivots.push(out);
    }

    // back substitution, largest pivot column first
    let mut order: Vec<usize> = (0..pivots.len()).collect();
    order.sort_by_key(|&r| std::cmp::Reverse(pivots[r][0].0));
    for &r in &order {
        let lead = pivots[r][0].0 as usize;
        if !pivots[r][1..]
            .iter()
            .any(|&(c, _)| pivot_of[c as usize].is_some())
        {
            continue;
        }
        for &(c, v) in &pivots[r] {
            scratch[c as usize] = v as u64;
        }
        let mut out: SparseRow = vec![(lead as u32, 1)];
        scratch[lead] = 0;
        for c in lead + 1..ncols {
            let v = scratch[c] % p;
            scratch[c] = 0;
            if v == 0 {
                continue;
            }
            match pivot_of[c] {
                Some(o) => {
                    let f = p - v;
                    for &(j, a) in &pivots[o][1..] {
                        scratch[j as usize] += f * a as u64;
                    }
                }
                None => out.push((c as u32, v as u32)),
            }
        }
        pivots[r] = out;
    }
    pivots.sort_by_key(|r| r[0].0);
    MacaulayMatrix {
        ring: m.ring.clone(),
        degree: m.degree,
        columns: m.columns.clone(),
        labels: Vec::new(),
        rows: pivots,
        generators: m.generators.clone(),
        complete: m.complete,
        reduced: true,
    }
}

/// Reduced monic grevlex Gröbner basis from a reduced Macaulay matrix, or an
/// insufficient-degree error when the rows do not contain one.
pub fn extract_basis(m: &MacaulayMatrix) -> Result<GroebnerBasis> {
    if !m.reduced {
        return Err(Error::UndefinedInput(
            "matrix is not in reduced row echelon form".into(),
        ));
    }
    let degree = m.degree;
    if !m.complete {
        return Err(Error::InsufficientDegree {
            degree,
            reason: "some generator exceeds the degree bound".into(),
        });
    }
    let mut kept: Vec<Polynomial> = Vec::new();
    for i in (0..m.nrows()).rev() {
        let lm = &m.columns[m.rows[i][0].0 as usize];
        if !kept
            .iter()
            .any(|k| k.leading_monomial().unwrap().divides(lm))
        {
            kept.push(m.row_polynomial(i));
        }
    }
    let basis = interreduce(&kept);
    if let Some((i, j)) = buchberger_criterion(&basis) {
        let lm =
            |k: usize| Polynomial::term(&m.ring, basis[k].leading_monomial().unwrap().clone(), 1);
        return Err(Error::InsufficientDegree {
            degree,
            reason: format!(
                "S-polynomial of the pair ({}, {}) does not reduce to zero",
                lm(i),
                lm(j)
            ),
        });
    }
    if let Some(g) = m
        .generators
        .iter()
        .find(|g| !normal_form(g, &basis).is_zero())
    {
        return Err(Error::InsufficientDegree {
            degree,
            reason: format!("generator {g} does not reduce to zero"),
        });
    }
    GroebnerBasis::from_reduced(&m.ring, basis)
}

/// Build, reduce and extract at one degree.
pub fn basis_at_degree(gens: &[Polynomial], d: u32) -> Result<GroebnerBasis> {
    extract_basis(&row_echelon(&build_macaulay_from(gens, d)?))
}

#[derive(Clone, Debug)]
pub struct Solution {
    pub basis: GroebnerBasis,
    /// Degree at which extraction succeeded.
    pub degree: u32,
}

fn max_generator_degree(gens: &[Polynomial]) -> u32 {
    gens.iter().filter_map(|g| g.degree()).max().unwrap_or(0)
}

fn check_zero_dimensional(sys: &CriticalSystem, basis: &GroebnerBasis) -> Result<()> {
    let cap = (10 * algebraic_degree(sys.shape())).max(16) as usize;
    basis.staircase(cap).map(|_| ())
}

/// Grevlex Gröbner basis of `Icrit(q, F)`, starting at the witness degree
/// bound and retrying up to `n` degrees higher.
pub fn solve(sys: &CriticalSystem) -> Result<Solution> {
    let gens = critical_generators(sys).all();
    let bound = witness_degree_bound(sys.shape());
    let last = bound + sys.shape().n() as u32;
    for d in bound.max(max_generator_degree(&gens))..=last {
        match basis_at_degree(&gens, d) {
            Ok(basis) => {
                check_zero_dimensional(sys, &basis)?;
                return Ok(Solution { basis, degree: d });
            }
            Err(Error::InsufficientDegree { .. }) | Err(Error::EmptyMatrix(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::GenericityFailure { max_degree: last })
}

/// Smallest degree at which the Macaulay matrix yields the Gröbner basis.
pub fn dwit_empirical(sys: &CriticalSystem) -> Result<u32> {
    dwit_empirical_from(sys, &solve(sys)?)
}

/// Same as [`dwit_empirical`], reusing a solution. Success at degree `d`
/// implies success at `d + 1` (every reduced basis element is a row of the
/// reduced matrix once it lies in the row space), so the scan walks down
/// from the solved degree and stops at the first failure.
pub fn dwit_empirical_from(sys: &CriticalSystem, top: &Solution) -> Result<u32> {
    let gens = critical_generators(sys).all();
    let floor = max_generator_degree(&gens);
    let mut best = top.degree;
    while best > floor {
        match basis_at_degree(&gens, best - 1) {
            Ok(basis) if basis == top.basis => best -= 1,
            Ok(_) => return Err(Error::Internal("bases differ between degrees".into())),
            Err(Error::InsufficientDegree { .. }) | Err(Error::EmptyMatrix(_)) => break,
            Err(e) => return Err(e),
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_polynomial, PolyRing, PrimeField};
    use crate::critical::{random_instance, ProblemShape};
    use crate::reference::buchberger;

    fn running_example() -> CriticalSystem {
        let r = PolyRing::standard(PrimeField::default(), 2);
        let p = |s| parse_polynomial(&r, s).unwrap();
        CriticalSystem::new(
            ProblemShape::new(2, 1, vec![1, 2]).unwrap(),
            p("X1"),
            vec![p("X1^2+X2^2-1")],
        )
        .unwrap()
    }

    #[test]
    fn matrix_of_running_example() {
        let sys = running_example();
        let gens = critical_generators(&sys);
        let m = build_macaulay(&gens, 2).unwrap();
        assert_eq!(m.ncols(), 6);
        assert_eq!(m.nrows(), 4);
        let r = sys.ring();
        let label = |g, s: &str| RowLabel {
            generator: g,
            multiplier: parse_polynomial(r, s)
                .unwrap()
                .leading_monomial()
                .unwrap()
                .clone(),
        };
        assert_eq!(
            m.labels(),
            &[label(0, "1"), label(1, "1"), label(1, "X2"), label(1, "X1")]
        );
        let shape = sys.shape();
        let bound = (shape.p() as u64 + binomial(2, 2)) * binomial(4, 2);
        assert!(m.nrows() as u64 <= bound);
        assert!(matches!(
            build_macaulay(&gens, 0),
            Err(Error::EmptyMatrix(0))
        ));
    }

    #[test]
    fn echelon_of_running_example() {
        let sys = running_example();
        let m = row_echelon(&build_macaulay(&critical_generators(&sys), 2).unwrap());
        let r = sys.ring();
        let rows: Vec<Polynomial> = (0..m.nrows()).map(|i| m.row_polynomial(i)).collect();
        let want: Vec<Polynomial> = ["X1^2-1", "X1*X2", "X2^2", "X2"]
            .iter()
            .map(|s| parse_polynomial(r, s).unwrap())
            .collect();
        assert_eq!(rows, want);
        let gb = extract_basis(&m).unwrap();
        assert_eq!(gb.to_string(), "X2\nX1^2-1\n");
    }

    #[test]
    fn echelon_is_idempotent_and_drops_duplicates() {
        let sys = random_instance(
            &ProblemShape::new(3, 1, vec![2, 2]).unwrap(),
            PrimeField::default(),
            3,
        );
        let gens = critical_generators(&sys).all();
        let m = build_macaulay_from(&gens, 3).unwrap();
        let e = row_echelon(&m);
        let again = row_echelon(&e);
        assert_eq!(e.rows(), again.rows());
        let mut doubled = gens.clone();
        doubled.push(gens[0].clone());
        let e2 = row_echelon(&build_macaulay_from(&doubled, 3).unwrap());
        assert_eq!(e2.rows(), e.rows());
        // every original row lies in the span
        let basis: Vec<Polynomial> = (0..e.nrows()).map(|i| e.row_polynomial(i)).collect();
        for i in 0..m.nrows() {
            assert!(normal_form(&m.row_polynomial(i), &basis).is_zero());
        }
    }

    #[test]
    fn solve_running_example() {
        let sol = solve(&running_example()).unwrap();
        assert_eq!(sol.degree, 2);
        assert_eq!(sol.basis.to_string(), "X2\nX1^2-1\n");
        assert_eq!(dwit_empirical(&running_example()).unwrap(), 2);
    }

    #[test]
    fn random_instances_match_buchberger() {
        for (shape, delta) in [
            (ProblemShape::new(3, 1, vec![2, 2]).unwrap(), 6),
            (ProblemShape::new(3, 1, vec![3, 2]).unwrap(), 14),
        ] {
            for seed in 0..5 {
                let sys = random_instance(&shape, PrimeField::default(), seed);
                let sol = solve(&sys).unwrap();
                let oracle =
                    buchberger(&critical_generators(&sys).all(), MonomialOrder::Grevlex).unwrap();
                assert_eq!(sol.basis, oracle);
                assert_eq!(sol.basis.quotient_dimension(1000).unwrap(), delta);
                let emp = dwit_empirical_from(&sys, &sol).unwrap();
                assert!(emp <= witness_degree_bound(&shape));
                assert_eq!(
                    basis_at_degree(&critical_generators(&sys).all(), emp).unwrap(),
                    oracle
                );
            }
        }
    }

    #[test]
    fn downward_scan_matches_upward_scan() {
        for (shape, seeds) in [
            (ProblemShape::new(3, 1, vec![3, 2]).unwrap(), 0..4),
            (ProblemShape::new(3, 2, vec![1, 2, 3]).unwrap(), 0..3),
            (ProblemShape::new(2, 1, vec![4, 2]).unwrap(), 0..4),
        ] {
            for seed in seeds {
                let sys = random_instance(&shape, PrimeField::default(), seed);
                let gens = critical_generators(&sys).all();
                let start = gens.iter().filter_map(|g| g.degree()).max().unwrap();
                let upward = (start..)
                    .find(|&d| basis_at_degree(&gens, d).is_ok())
                    .unwrap();
                assert_eq!(dwit_empirical(&sys).unwrap(), upward, "{shape} seed {seed}");
            }
        }
    }

    #[test]
    fn low_degree_is_insufficient() {
        let shape = ProblemShape::new(3, 1, vec![3, 2]).unwrap();
        let sys = random_instance(&shape, PrimeField::default(), 11);
        let gens = critical_generators(&sys).all();
        let emp = dwit_empirical(&sys).unwrap();
        assert!(matches!(
            basis_at_degree(&gens, emp - 1),
            Err(Error::InsufficientDegree { .. })
        ));
    }

    #[test]
    fn degenerate_instance_is_reported() {
        let r = PolyRing::standard(PrimeField::default(), 2);
        let p = |s| parse_polynomial(&r, s).unwrap();
        let sys = CriticalSystem::new(
            ProblemShape::new(2, 1, vec![1, 2]).unwrap(),
            p("X1"),
            vec![p("X1^2")],
        )
        .unwrap();
        assert!(matches!(
            solve(&sys),
            Err(Error::PositiveDimension { .. }) | Err(Error::GenericityFailure { .. })
        ));
    }
}
