//! Grothendieck polynomials by divided differences, and the K-polynomial of
//! the determinantal ideal obtained by evaluating them at powers of `t`.

use std::cmp::Reverse;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::critical::ProblemShape;
use crate::error::{Error, Result};
use crate::univariate::IntPoly;

/// Largest number of variables `t_1..t_m` handled.
pub const MAX_VARS: usize = 8;

/// Integer polynomial in `t_1, ..., t_m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntPolyMV {
    nvars: usize,
    terms: BTreeMap<Vec<u8>, i64>,
}

impl IntPolyMV {
    pub fn zero(nvars: usize) -> Self {
        IntPolyMV {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::term(nvars, vec![0; nvars], 1)
    }

    pub fn term(nvars: usize, exps: Vec<u8>, c: i64) -> Self {
        assert_eq!(exps.len(), nvars);
        let mut p = Self::zero(nvars);
        if c != 0 {
            p.terms.insert(exps, c);
        }
        p
    }

    /// `t_i`, 1-based.
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i - 1] = 1;
        Self::term(nvars, e, 1)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u8], i64)> {
        self.terms.iter().map(|(e, &c)| (e.as_slice(), c))
    }

    fn add_term(&mut self, e: Vec<u8>, c: i64) {
        use std::collections::btree_map::Entry;
        if c == 0 {
            return;
        }
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if *o.get() == 0 {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, &c) in &other.terms {
            out.add_term(e.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(-1))
    }

    pub fn scale(&self, c: i64) -> Self {
        let mut out = Self::zero(self.nvars);
        if c != 0 {
            out.terms = self
                .terms
                .iter()
                .map(|(e, &v)| (e.clone(), v * c))
                .collect();
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.nvars);
        for (a, &x) in &self.terms {
            for (b, &y) in &other.terms {
                let e = a.iter().zip(b).map(|(u, v)| u + v).collect();
                out.add_term(e, x * y);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(self.nvars), |acc, _| acc.mul(self))
    }

    /// Exchanges `t_i` and `t_j` (1-based).
    pub fn swap_vars(&self, i: usize, j: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, &c) in &self.terms {
            let mut e = e.clone();
            e.swap(i - 1, j - 1);
            out.terms.insert(e, c);
        }
        out
    }

    /// Degree in `t_i` (1-based); 0 for the zero polynomial.
    pub fn degree_in(&self, i: usize) -> u8 {
        self.terms.keys().map(|e| e[i - 1]).max().unwrap_or(0)
    }

    /// Substitutes `t_j -> t^{powers[j-1]}`.
    pub fn evaluate_powers(&self, powers: &[usize]) -> IntPoly {
        let mut coeffs: Vec<i64> = Vec::new();
        for (e, &c) in &self.terms {
            let k: usize = e.iter().zip(powers).map(|(&a, &w)| a as usize * w).sum();
            if coeffs.len() <= k {
                coeffs.resize(k + 1, 0);
            }
            coeffs[k] += c;
        }
        IntPoly::from_coeffs(coeffs)
    }
}

/// Graded, then lexicographically decreasing: `t1^2*t2 + t1*t2^2 - 3*t1*t2 + 1`.
impl fmt::Display for IntPolyMV {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by_key(|(e, _)| {
            Reverse((e.iter().map(|&x| x as u32).sum::<u32>(), (*e).clone()))
        });
        for (idx, (e, &c)) in terms.into_iter().enumerate() {
            if idx == 0 {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c < 0 { '-' } else { '+' })?;
            }
            let a = c.unsigned_abs();
            let factors: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x > 0)
                .map(|(i, &x)| match x {
                    1 => format!("t{}", i + 1),
                    _ => format!("t{}^{}", i + 1, x),
                })
                .collect();
            match (factors.is_empty(), a) {
                (true, _) => write!(f, "{a}")?,
                (false, 1) => write!(f, "{}", factors.join("*"))?,
                (false, _) => write!(f, "{a}*{}", factors.join("*"))?,
            }
        }
        Ok(())
    }
}

/// `(H - H|_{t_i <-> t_{i+1}}) / (t_i - t_{i+1})`, with `i` 1-based.
pub fn divided_difference(h: &IntPolyMV, i: usize) -> Result<IntPolyMV> {
    let m = h.nvars();
    if i == 0 || i >= m {
        return Err(Error::DimensionMismatch(format!(
            "divided difference index {i} outside 1..{}",
            m - 1
        )));
    }
    let mut rem = h.sub(&h.swap_vars(i, i + 1));
    let mut quot = IntPolyMV::zero(m);
    while let Some((e, c)) = rem
        .terms
        .iter()
        .max_by_key(|(e, _)| e[i - 1])
        .map(|(e, &c)| (e.clone(), c))
    {
        if e[i - 1] == 0 {
            return Err(Error::Internal(format!(
                "divided difference by t{i} - t{} is not exact",
                i + 1
            )));
        }
        // rem -= c * (e / t_i) * (t_i - t_{i+1})
        let mut q = e.clone();
        q[i - 1] -= 1;
        let mut shifted = q.clone();
        shifted[i] += 1;
        rem.add_term(e, -c);
        rem.add_term(shifted, c);
        quot.add_term(q, c);
    }
    Ok(quot)
}

/// A permutation of `{1, ..., m}` in one-line notation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u8>,
}

impl Permutation {
    pub fn new(images: Vec<u8>) -> Result<Self> {
        let m = images.len();
        let mut seen = vec![false; m + 1];
        for &x in &images {
            let x = x as usize;
            if x == 0 || x > m || seen[x] {
                return Err(Error::UndefinedInput(format!(
                    "{images:?} is not a permutation"
                )));
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(m: usize) -> Self {
        Permutation {
            images: (1..=m as u8).collect(),
        }
    }

    /// The longest element `i -> m + 1 - i`.
    pub fn longest(m: usize) -> Self {
        Permutation {
            images: (1..=m as u8).rev().collect(),
        }
    }

    pub fn size(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u8] {
        &self.images
    }

    /// Number of inversions.
    pub fn length(&self) -> usize {
        let w = &self.images;
        (0..w.len())
            .flat_map(|i| (i + 1..w.len()).map(move |j| (i, j)))
            .filter(|&(i, j)| w[i] > w[j])
            .count()
    }

    /// Values `i` such that `i` appears before `i + 1` in one-line
    /// notation, i.e. exchanging them lengthens `w`.
    pub fn ascents(&self) -> Vec<usize> {
        let pos = self.positions();
        (1..self.images.len())
            .filter(|&i| pos[i - 1] < pos[i])
            .collect()
    }

    /// `s_i w`: exchanges the values `i` and `i + 1`.
    pub fn swap_values(&self, i: usize) -> Self {
        let images = self
            .images
            .iter()
            .map(|&x| match x as usize {
                x if x == i => (i + 1) as u8,
                x if x == i + 1 => i as u8,
                x => x as u8,
            })
            .collect();
        Permutation { images }
    }

    /// `positions[v - 1]` is the position of value `v`.
    fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            pos[x as usize - 1] = i;
        }
        pos
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.images.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

/// `w(i) = i` for `i <= p`, `w(i) = i + 1` for `p < i <= n`, `w(n+1) = p + 1`.
pub fn determinantal_permutation(shape: &ProblemShape) -> Permutation {
    let (n, p) = (shape.n(), shape.p());
    let images = (1..=n + 1)
        .map(|i| match i {
            i if i <= p => i,
            i if i <= n => i + 1,
            _ => p + 1,
        } as u8)
        .collect();
    Permutation { images }
}

/// Memo table for the recursion `G_{w0} = prod (1 - t_i)^{m - i}`,
/// `G_w = -d_i(t_{i+1} G_{s_i w})` whenever `s_i w` is longer than `w`.
pub struct GrothendieckTable {
    m: usize,
    memo: HashMap<Permutation, IntPolyMV>,
}

impl GrothendieckTable {
    pub fn new(m: usize) -> Result<Self> {
        if m == 0 || m > MAX_VARS {
            return Err(Error::SizeGuard(format!(
                "Grothendieck polynomials on {m} letters (limit {MAX_VARS})"
            )));
        }
        Ok(GrothendieckTable {
            m,
            memo: HashMap::new(),
        })
    }

    fn base(&self) -> IntPolyMV {
        (1..=self.m).fold(IntPolyMV::one(self.m), |acc, i| {
            let f = IntPolyMV::one(self.m).sub(&IntPolyMV::var(self.m, i));
            acc.mul(&f.pow((self.m - i) as u32))
        })
    }

    fn check(&self, w: &Permutation) -> Result<()> {
        if w.size() != self.m {
            return Err(Error::DimensionMismatch(format!(
                "permutation of {} letters in a table for {}",
                w.size(),
                self.m
            )));
        }
        Ok(())
    }

    /// `G_w`, recursing through the smallest ascent.
    pub fn get(&mut self, w: &Permutation) -> Result<IntPolyMV> {
        self.check(w)?;
        if let Some(g) = self.memo.get(w) {
            return Ok(g.clone());
        }
        let g = match w.ascents().first() {
            None => self.base(),
            Some(&i) => self.via_ascent(w, i)?,
        };
        self.memo.insert(w.clone(), g.clone());
        Ok(g)
    }

    /// `-d_i(t_{i+1} G_{s_i w})` for a chosen ascent `i` of `w`.
    pub fn via_ascent(&mut self, w: &Permutation, i: usize) -> Result<IntPolyMV> {
        self.check(w)?;
        if !w.ascents().contains(&i) {
            return Err(Error::UndefinedInput(format!(
                "{i} is not an ascent of {w}"
            )));
        }
        let up = self.get(&w.swap_values(i))?;
        let h = IntPolyMV::var(self.m, i + 1).mul(&up);
        Ok(divided_difference(&h, i)?.scale(-1))
    }
}

pub fn grothendieck_poly(w: &Permutation) -> Result<IntPolyMV> {
    GrothendieckTable::new(w.size())?.get(w)
}

/// `G_w(t^{d_0 - 1}, ..., t^{d_p - 1})` for the determinantal permutation.
pub fn evaluate_kpoly(shape: &ProblemShape) -> Result<IntPoly> {
    let w = determinantal_permutation(shape);
    let g = grothendieck_poly(&w)?;
    let k = shape.p() + 1;
    if (k + 1..=g.nvars()).any(|j| g.degree_in(j) > 0) {
        return Err(Error::Internal(format!(
            "Grothendieck polynomial of {w} depends on variables beyond t{k}"
        )));
    }
    let mut powers = vec![0; g.nvars()];
    for (j, &d) in shape.degrees().iter().enumerate() {
        powers[j] = d as usize - 1;
    }
    Ok(g.evaluate_powers(&powers))
}
