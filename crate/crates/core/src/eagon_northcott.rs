//! The Eagon-Northcott complex of the generic `(p+1) x n` matrix `U`, with
//! `wdeg U_{i,j} = d_i - 1`, built symbolically over `GF(p)[U]`.
//!
//! Stage 0 is `R`; stage `k >= 1` has basis `e_S (x) y^(m)` with `S` a
//! `(p+k)`-subset of the columns and `m` an exponent vector of degree `k-1`
//! on `p+1` letters (divided powers). The differential contracts one column:
//! `e_S (x) y^(m) -> sum_{j in S} sum_{m_i > 0} (-1)^{pos(j)} U_{i,j} e_{S-j} (x) y^(m - e_i)`,
//! and stage 1 maps `e_S` to the maximal minor on the columns `S`.

use crate::algebra::{
    Grading, MonomialOrder, PolyMatrix, PolyRing, Polynomial, PrimeField, RingRef,
};
use crate::combinat::{binomial, compositions, subsets};
use crate::critical::{maximal_minors, ProblemShape};
use crate::error::{Error, Result};
use crate::univariate::IntPoly;

/// Largest `n` for which the complex is built.
pub const MAX_N: usize = 7;

/// Ranks and degree shifts of one free module `R(-a_1) + ... + R(-a_r)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedFreeModule {
    pub shifts: Vec<u32>,
}

impl GradedFreeModule {
    pub fn rank(&self) -> usize {
        self.shifts.len()
    }
}

/// Basis element `e_S (x) y^(m)`; `subset` holds 0-based column indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisElement {
    pub subset: Vec<usize>,
    pub sym: Vec<u32>,
}

#[derive(Clone, Debug)]
pub struct GradedComplex {
    shape: ProblemShape,
    ring: RingRef,
    bases: Vec<Vec<BasisElement>>,
    modules: Vec<GradedFreeModule>,
    /// `differentials[k - 1]` maps stage `k` to stage `k - 1`; rows index
    /// stage `k - 1`.
    differentials: Vec<PolyMatrix>,
}

impl GradedComplex {
    pub fn shape(&self) -> &ProblemShape {
        &self.shape
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    /// Stages `0..=n-p`.
    pub fn modules(&self) -> &[GradedFreeModule] {
        &self.modules
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.modules.iter().map(|m| m.rank()).collect()
    }

    pub fn basis(&self, stage: usize) -> &[BasisElement] {
        &self.bases[stage]
    }

    /// The map from stage `k` to stage `k - 1`, `k >= 1`.
    pub fn differential(&self, k: usize) -> &PolyMatrix {
        &self.differentials[k - 1]
    }

    /// Weight of every `U` variable, `d_i - 1` for row `i`.
    pub fn weights(&self) -> Vec<u32> {
        u_weights(&self.shape)
    }
}

/// `GF(p)[U_{0,1}, ..., U_{p,n}]`, variable `U_{i,j}` at index `i*n + j - 1`.
pub fn u_ring(field: PrimeField, n: usize, p: usize) -> RingRef {
    let names = (0..=p)
        .flat_map(|i| (1..=n).map(move |j| format!("U{i}_{j}")))
        .collect::<Vec<_>>();
    let nvars = names.len();
    PolyRing::new(
        field,
        names,
        Grading::standard(nvars),
        MonomialOrder::Grevlex,
    )
    .expect("generated names are valid")
}

fn u_weights(shape: &ProblemShape) -> Vec<u32> {
    shape
        .degrees()
        .iter()
        .flat_map(|&d| std::iter::repeat_n(d - 1, shape.n()))
        .collect()
}

/// The generic matrix `U` over [`u_ring`].
pub fn generic_matrix(ring: &RingRef, n: usize, p: usize) -> PolyMatrix {
    let entries = (0..=p)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| Polynomial::variable(ring, i * n + j))
        .collect();
    PolyMatrix::new(p + 1, n, entries)
}

/// Determinant of the submatrix of `m` on `cols`, by the Leibniz formula.
fn leibniz_minor(m: &PolyMatrix, cols: &[usize]) -> Polynomial {
    let k = cols.len();
    let ring = m.get(0, 0).ring().clone();
    let mut perm: Vec<usize> = (0..k).collect();
    let mut det = Polynomial::zero(&ring);
    loop {
        let inversions = (0..k)
            .flat_map(|a| (a + 1..k).map(move |b| (a, b)))
            .filter(|&(a, b)| perm[a] > perm[b])
            .count();
        let term = (0..k).fold(Polynomial::constant(&ring, 1), |acc, r| {
            &acc * m.get(r, cols[perm[r]])
        });
        det = if inversions % 2 == 0 {
            &det + &term
        } else {
            &det - &term
        };
        if !next_permutation(&mut perm) {
            break;
        }
    }
    det
}

fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

pub fn build_complex(shape: &ProblemShape) -> Result<GradedComplex> {
    let (n, p) = (shape.n(), shape.p());
    if n > MAX_N {
        return Err(Error::SizeGuard(format!(
            "Eagon-Northcott complex for n = {n} (limit {MAX_N})"
        )));
    }
    let ring = u_ring(PrimeField::default(), n, p);
    let u = generic_matrix(&ring, n, p);
    let w: Vec<u32> = shape.degrees().iter().map(|&d| d - 1).collect();
    let s: u32 = w.iter().sum();

    let mut bases = vec![vec![BasisElement {
        subset: Vec::new(),
        sym: Vec::new(),
    }]];
    let mut modules = vec![GradedFreeModule { shifts: vec![0] }];
    for k in 1..=n - p {
        let syms = compositions(k as u32 - 1, p + 1);
        let basis: Vec<BasisElement> = subsets(n, p + k)
            .into_iter()
            .flat_map(|subset| {
                syms.iter().map(move |m| BasisElement {
                    subset: subset.clone(),
                    sym: m.clone(),
                })
            })
            .collect();
        let shifts = basis
            .iter()
            .map(|b| s + b.sym.iter().zip(&w).map(|(a, b)| a * b).sum::<u32>())
            .collect();
        modules.push(GradedFreeModule { shifts });
        bases.push(basis);
    }

    let mut differentials = Vec::with_capacity(n - p);
    let minors = bases[1]
        .iter()
        .map(|b| leibniz_minor(&u, &b.subset))
        .collect::<Vec<_>>();
    differentials.push(PolyMatrix::new(1, minors.len(), minors));
    for k in 2..=n - p {
        let (rows, cols) = (&bases[k - 1], &bases[k]);
        let mut mat = PolyMatrix::zeros(&ring, rows.len(), cols.len());
        for (c, b) in cols.iter().enumerate() {
            for (pos, &j) in b.subset.iter().enumerate() {
                let mut rest = b.subset.clone();
                rest.remove(pos);
                for i in 0..=p {
                    if b.sym[i] == 0 {
                        continue;
                    }
                    let mut m = b.sym.clone();
                    m[i] -= 1;
                    let r = rows
                        .iter()
                        .position(|x| x.subset == rest && x.sym == m)
                        .expect("contraction lands in the previous basis");
                    let v = u.get(i, j);
                    let entry = if pos % 2 == 0 {
                        mat.get(r, c) + v
                    } else {
                        mat.get(r, c) - v
                    };
                    mat.set(r, c, entry);
                }
            }
        }
        differentials.push(mat);
    }
    Ok(GradedComplex {
        shape: shape.clone(),
        ring,
        bases,
        modules,
        differentials,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub ranks: Vec<usize>,
    pub composites_checked: usize,
    pub entries_checked: usize,
}

fn weighted_degree(m: &[u16], weights: &[u32]) -> u32 {
    m.iter().zip(weights).map(|(&e, &w)| e as u32 * w).sum()
}

/// Checks `sigma_{k-1} sigma_k = 0`, weighted homogeneity of every entry, the
/// rank formula and that stage 1 maps onto the maximal minors of `U`.
pub fn verify_complex(c: &GradedComplex) -> Result<VerificationReport> {
    let (n, p) = (c.shape.n(), c.shape.p());
    let weights = c.weights();
    for (k, m) in c.modules.iter().enumerate().skip(1) {
        let want =
            binomial(n as u64, (p + k) as u64) * binomial((p + k - 1) as u64, (k - 1) as u64);
        if m.rank() as u64 != want {
            return Err(Error::NotAComplex(format!(
                "stage {k} has rank {}, expected {want}",
                m.rank()
            )));
        }
    }
    let mut entries_checked = 0;
    for k in 1..=n - p {
        let d = c.differential(k);
        let (src, dst) = (&c.modules[k], &c.modules[k - 1]);
        if d.rows() != dst.rank() || d.cols() != src.rank() {
            return Err(Error::NotAComplex(format!(
                "differential {k} has wrong size"
            )));
        }
        for r in 0..d.rows() {
            for col in 0..d.cols() {
                let want = src.shifts[col] as i64 - dst.shifts[r] as i64;
                for t in d.get(r, col).terms() {
                    if weighted_degree(t.monomial.exponents(), &weights) as i64 != want {
                        return Err(Error::NotAComplex(format!(
                            "differential {k} entry ({r},{col}) = {} is not of degree {want}",
                            d.get(r, col)
                        )));
                    }
                }
                entries_checked += 1;
            }
        }
    }
    let mut composites_checked = 0;
    for k in 2..=n - p {
        let prod = c.differential(k - 1).checked_mul(c.differential(k))?;
        for r in 0..prod.rows() {
            for col in 0..prod.cols() {
                if !prod.get(r, col).is_zero() {
                    return Err(Error::NotAComplex(format!(
                        "composite of differentials {} and {k} has entry ({r},{col}) = {}",
                        k - 1,
                        prod.get(r, col)
                    )));
                }
            }
        }
        composites_checked += 1;
    }
    let u = generic_matrix(&c.ring, n, p);
    let minors = maximal_minors(&u, p + 1)?;
    if c.differential(1).row(0) != minors.as_slice() {
        return Err(Error::NotAComplex(
            "stage 1 image differs from the maximal minors".into(),
        ));
    }
    Ok(VerificationReport {
        ranks: c.ranks(),
        composites_checked,
        entries_checked,
    })
}

/// `sum_k (-1)^k sum_{g in stage k} t^{shift(g)}`.
pub fn alternating_numerator(c: &GradedComplex) -> IntPoly {
    let mut out = IntPoly::zero();
    for (k, m) in c.modules.iter().enumerate() {
        let sign = if k % 2 == 0 { 1 } else { -1 };
        for &s in &m.shifts {
            out = &out + &IntPoly::monomial(sign, s as usize);
        }
    }
    out
}

/// Whether `b` equals `a` after permuting rows and columns and flipping the
/// signs of individual rows and columns.
pub fn equivalent_up_to_signed_permutation(a: &PolyMatrix, b: &PolyMatrix) -> bool {
    if a.rows() != b.rows() || a.cols() != b.cols() {
        return false;
    }
    let abs = |p: &Polynomial| -> Polynomial {
        match p.leading_coeff() {
            Some(c) if c > p.ring().field().modulus() / 2 => p.neg(),
            _ => p.clone(),
        }
    };
    let col_key = |m: &PolyMatrix, c: usize| {
        let mut v: Vec<String> = (0..m.rows())
            .map(|r| abs(m.get(r, c)).to_string())
            .collect();
        v.sort();
        v
    };
    let a_keys: Vec<_> = (0..a.cols()).map(|c| col_key(a, c)).collect();
    let b_keys: Vec<_> = (0..b.cols()).map(|c| col_key(b, c)).collect();
    let mut perm = Vec::with_capacity(a.cols());
    let mut used = vec![false; b.cols()];
    search(a, b, &a_keys, &b_keys, &mut perm, &mut used, &abs)
}

fn search(
    a: &PolyMatrix,
    b: &PolyMatrix,
    a_keys: &[Vec<String>],
    b_keys: &[Vec<String>],
    perm: &mut Vec<usize>,
    used: &mut [bool],
    abs: &dyn Fn(&Polynomial) -> Polynomial,
) -> bool {
    let c = perm.len();
    if c == a.cols() {
        return rows_match(a, b, perm, abs);
    }
    for cand in 0..b.cols() {
        if used[cand] || a_keys[c] != b_keys[cand] {
            continue;
        }
        used[cand] = true;
        perm.push(cand);
        if search(a, b, a_keys, b_keys, perm, used, abs) {
            return true;
        }
        perm.pop();
        used[cand] = false;
    }
    false
}

/// With columns fixed by `perm`, pairs rows by their absolute entries and
/// checks that a consistent choice of row and column signs exists.
fn rows_match(
    a: &PolyMatrix,
    b: &PolyMatrix,
    perm: &[usize],
    abs: &dyn Fn(&Polynomial) -> Polynomial,
) -> bool {
    let mut row_of = vec![usize::MAX; a.rows()];
    let mut taken = vec![false; b.rows()];
    for r in 0..a.rows() {
        let key: Vec<Polynomial> = (0..a.cols()).map(|c| abs(a.get(r, c))).collect();
        let Some(s) = (0..b.rows())
            .find(|&s| !taken[s] && (0..a.cols()).all(|c| abs(b.get(s, perm[c])) == key[c]))
        else {
            return false;
        };
        taken[s] = true;
        row_of[r] = s;
    }
    // sign[r] * sign[c] must equal a/b at every nonzero entry: 2-colour the
    // bipartite graph of nonzero entries.
    let (nr, nc) = (a.rows(), a.cols());
    let mut sign: Vec<Option<bool>> = vec![None; nr + nc];
    for start in 0..nr + nc {
        if sign[start].is_some() {
            continue;
        }
        sign[start] = Some(true);
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            let sv = sign[v].unwrap();
            let neighbours: Vec<(usize, usize, usize)> = if v < nr {
                (0..nc).map(|c| (v, c, nr + c)).collect()
            } else {
                (0..nr).map(|r| (r, v - nr, r)).collect()
            };
            for (r, c, other) in neighbours {
                let x = a.get(r, c);
                if x.is_zero() {
                    continue;
                }
                let same = *x == *b.get(row_of[r], perm[c]);
                let want = if same { sv } else { !sv };
                match sign[other] {
                    None => {
                        sign[other] = Some(want);
                        stack.push(other);
                    }
                    Some(s) if s != want => return false,
                    _ => {}
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_polynomial;
    use crate::hilbert::hs_determinantal;

    fn shape(n: usize, p: usize, d: &[u32]) -> ProblemShape {
        ProblemShape::new(n, p, d.to_vec()).unwrap()
    }

    fn matrix(ring: &RingRef, rows: &[&[&str]]) -> PolyMatrix {
        let cols = rows[0].len();
        let entries = rows
            .iter()
            .flat_map(|r| r.iter().map(|s| parse_polynomial(ring, s).unwrap()))
            .collect();
        PolyMatrix::new(rows.len(), cols, entries)
    }

    #[test]
    fn ranks_and_shifts_n4_p1() {
        let (d0, d1) = (5u32, 3u32);
        let c = build_complex(&shape(4, 1, &[d0, d1])).unwrap();
        assert_eq!(c.ranks(), vec![1, 6, 8, 3]);
        let sorted = |v: &[u32]| {
            let mut v = v.to_vec();
            v.sort();
            v
        };
        assert_eq!(c.modules()[1].shifts, vec![d0 + d1 - 2; 6]);
        let mut want2 = vec![2 * d0 + d1 - 3; 4];
        want2.extend(vec![d0 + 2 * d1 - 3; 4]);
        assert_eq!(sorted(&c.modules()[2].shifts), sorted(&want2));
        assert_eq!(
            sorted(&c.modules()[3].shifts),
            sorted(&[3 * d0 + d1 - 4, 2 * d0 + 2 * d1 - 4, d0 + 3 * d1 - 4])
        );
    }

    #[test]
    fn differentials_match_the_worked_example() {
        let c = build_complex(&shape(4, 1, &[2, 2])).unwrap();
        let r = c.ring();
        let sigma3 = matrix(
            r,
            &[
                &["U0_1", "U1_1", "0"],
                &["0", "U0_1", "U1_1"],
                &["U0_2", "U1_2", "0"],
                &["0", "U0_2", "U1_2"],
                &["U0_3", "U1_3", "0"],
                &["0", "U0_3", "U1_3"],
                &["U0_4", "U1_4", "0"],
                &["0", "U0_4", "U1_4"],
            ],
        );
        assert!(equivalent_up_to_signed_permutation(
            &sigma3,
            c.differential(3)
        ));
        let sigma2 = matrix(
            r,
            &[
                &["-U0_3", "-U1_3", "0", "0", "U0_1", "U1_1", "0", "0"],
                &["-U0_4", "-U1_4", "0", "0", "0", "0", "U0_1", "U1_1"],
                &["0", "0", "-U0_4", "-U1_4", "0", "0", "U0_2", "U1_2"],
                &["0", "0", "-U0_3", "-U1_3", "U0_2", "U1_2", "0", "0"],
                &["-U0_2", "-U1_2", "U0_1", "U1_1", "0", "0", "0", "0"],
                &["0", "0", "0", "0", "-U0_4", "-U1_4", "U0_3", "U1_3"],
            ],
        );
        assert!(equivalent_up_to_signed_permutation(
            &sigma2,
            c.differential(2)
        ));
        // a single corrupted entry breaks the equivalence
        let mut bad = sigma3.clone();
        bad.set(0, 0, parse_polynomial(r, "U0_2").unwrap());
        assert!(!equivalent_up_to_signed_permutation(
            &bad,
            c.differential(3)
        ));
    }

    #[test]
    fn two_stage_complex() {
        let c = build_complex(&shape(2, 1, &[2, 3])).unwrap();
        assert_eq!(c.ranks(), vec![1, 1]);
        let det = parse_polynomial(c.ring(), "U0_1*U1_2-U0_2*U1_1").unwrap();
        assert_eq!(c.differential(1).get(0, 0), &det);
        verify_complex(&c).unwrap();
    }

    #[test]
    fn rank_formula_n5_p2() {
        let c = build_complex(&shape(5, 2, &[2, 2, 3])).unwrap();
        assert_eq!(c.ranks(), vec![1, 10, 15, 6]);
        // stage k is wedge^{p+k} F (x) Sym_{k-1} G*
        for (k, &r) in c.ranks().iter().enumerate().skip(1) {
            let wedge = binomial(5, 2 + k as u64);
            let sym = compositions(k as u32 - 1, 3).len() as u64;
            assert_eq!(r as u64, wedge * sym);
        }
    }

    #[test]
    fn complexes_verify() {
        for n in 1..=5 {
            for p in 0..n {
                let degs: Vec<u32> = (0..=p as u32).map(|i| i + 2).collect();
                let s = shape(n, p, &degs);
                let c = build_complex(&s).unwrap();
                let report = verify_complex(&c).unwrap();
                assert_eq!(report.composites_checked, n - p - 1);
                assert_eq!(
                    alternating_numerator(&c),
                    hs_determinantal(&s).numerator,
                    "{s}"
                );
            }
        }
        assert!(build_complex(&shape(8, 1, &[2, 2])).is_err());
    }

    #[test]
    fn alternating_numerator_example() {
        let c = build_complex(&shape(3, 1, &[3, 2])).unwrap();
        assert_eq!(
            alternating_numerator(&c),
            IntPoly::from_coeffs(vec![1, 0, 0, -3, 1, 1])
        );
        let (d0, d1) = (4usize, 3usize);
        let c = build_complex(&shape(4, 1, &[d0 as u32, d1 as u32])).unwrap();
        let m = |c, k| IntPoly::monomial(c, k);
        let want = [
            m(1, 0),
            m(-6, d0 + d1 - 2),
            m(4, 2 * d0 + d1 - 3),
            m(4, d0 + 2 * d1 - 3),
            m(-1, 3 * d0 + d1 - 4),
            m(-1, 2 * d0 + 2 * d1 - 4),
            m(-1, d0 + 3 * d1 - 4),
        ]
        .iter()
        .fold(IntPoly::zero(), |acc, x| &acc + x);
        assert_eq!(alternating_numerator(&c), want);
    }

    #[test]
    fn corrupted_complex_is_rejected() {
        let mut c = build_complex(&shape(4, 1, &[2, 3])).unwrap();
        let r = c.ring().clone();
        c.differentials[2].set(0, 0, Polynomial::variable(&r, 5));
        assert!(matches!(verify_complex(&c), Err(Error::NotAComplex(_))));
    }
}
