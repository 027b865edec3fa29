//! Critical-point systems: the Jacobian of `(q, f_1, ..., f_p)`, its maximal
//! minors, homogenization, highest-degree parts and random generic
//! instances.

use std::collections::HashMap;
use std::fmt;
use std::path::Path;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{
    exponent_vectors_of_degree, parse_polynomial_at, Monomial, PolyMatrix, PolyRing, Polynomial,
    PrimeField, RingRef,
};
use crate::combinat::subsets;
use crate::error::{Error, Result};

/// Number of variables `n`, number of constraints `p` and the degree
/// sequence `(d_0, d_1, ..., d_p)` of the objective and the constraints.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProblemShape {
    n: usize,
    p: usize,
    degrees: Vec<u32>,
}

impl ProblemShape {
    pub fn new(n: usize, p: usize, degrees: Vec<u32>) -> Result<Self> {
        if p >= n {
            return Err(Error::InvalidShape(format!("need p < n, got p={p}, n={n}")));
        }
        if degrees.len() != p + 1 {
            return Err(Error::InvalidShape(format!(
                "expected {} degrees, got {}",
                p + 1,
                degrees.len()
            )));
        }
        if degrees[0] < 1 {
            return Err(Error::InvalidShape(
                "objective degree must be at least 1".into(),
            ));
        }
        if degrees[1..].iter().any(|&d| d < 2) {
            return Err(Error::InvalidShape(
                "constraint degrees must be at least 2".into(),
            ));
        }
        if p == 0 && degrees[0] == 1 {
            return Err(Error::InvalidShape(
                "a linear objective without constraints has no critical points".into(),
            ));
        }
        Ok(ProblemShape { n, p, degrees })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> usize {
        self.p
    }

    /// `(d_0, ..., d_p)`.
    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn max_degree(&self) -> u32 {
        *self.degrees.iter().max().unwrap()
    }

    /// `max_i (d_i - 1)`.
    pub fn max_degree_minus_one(&self) -> u32 {
        self.max_degree() - 1
    }

    /// Degree bound of a maximal minor of the Jacobian.
    pub fn minor_degree(&self) -> u32 {
        self.degrees.iter().map(|d| d - 1).sum()
    }

    pub fn is_all_quadratic(&self) -> bool {
        self.degrees.iter().all(|&d| d == 2)
    }

    pub fn degrees_string(&self) -> String {
        self.degrees
            .iter()
            .map(|d| d.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl fmt::Display for ProblemShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} p={} d=({})", self.n, self.p, self.degrees_string())
    }
}

/// An objective `q` and constraints `F = (f_1, ..., f_p)`. The ring may carry
/// extra variables beyond `X_1..X_n` (the homogenizing `H`); derivatives are
/// only taken with respect to the first `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriticalSystem {
    shape: ProblemShape,
    q: Polynomial,
    constraints: Vec<Polynomial>,
}

impl CriticalSystem {
    pub fn new(shape: ProblemShape, q: Polynomial, constraints: Vec<Polynomial>) -> Result<Self> {
        if constraints.len() != shape.p() {
            return Err(Error::InvalidShape(format!(
                "expected {} constraints, got {}",
                shape.p(),
                constraints.len()
            )));
        }
        if q.ring().nvars() < shape.n() {
            return Err(Error::DimensionMismatch(format!(
                "ring has {} variables, shape needs {}",
                q.ring().nvars(),
                shape.n()
            )));
        }
        for (i, f) in std::iter::once(&q).chain(&constraints).enumerate() {
            if !f.same_ring(&q) {
                return Err(Error::DimensionMismatch(
                    "objective and constraints live in different rings".into(),
                ));
            }
            if f.degree().unwrap_or(0) > shape.degrees()[i] {
                return Err(Error::InvalidShape(format!(
                    "polynomial {i} has degree {} > {}",
                    f.degree().unwrap_or(0),
                    shape.degrees()[i]
                )));
            }
        }
        Ok(CriticalSystem {
            shape,
            q,
            constraints,
        })
    }

    pub fn shape(&self) -> &ProblemShape {
        &self.shape
    }

    pub fn objective(&self) -> &Polynomial {
        &self.q
    }

    pub fn constraints(&self) -> &[Polynomial] {
        &self.constraints
    }

    pub fn ring(&self) -> &RingRef {
        self.q.ring()
    }

    pub fn field(&self) -> PrimeField {
        self.q.ring().field()
    }

    /// `(q, f_1, ..., f_p)`.
    pub fn polynomials(&self) -> impl Iterator<Item = &Polynomial> {
        std::iter::once(&self.q).chain(&self.constraints)
    }
}

/// Generators of `Icrit(q, F)`: the constraints followed by the maximal
/// minors of the Jacobian.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSet {
    pub constraints: Vec<Polynomial>,
    pub minors: Vec<Polynomial>,
}

impl GeneratorSet {
    /// Constraints first, then minors in column-subset order.
    pub fn all(&self) -> Vec<Polynomial> {
        self.constraints
            .iter()
            .chain(&self.minors)
            .cloned()
            .collect()
    }

    pub fn len(&self) -> usize {
        self.constraints.len() + self.minors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// `(p+1) x n` matrix whose row `i` is the gradient of the `i`-th polynomial
/// of `(q, f_1, ..., f_p)`.
pub fn jacobian(sys: &CriticalSystem) -> PolyMatrix {
    let n = sys.shape().n();
    let entries = sys
        .polynomials()
        .flat_map(|f| (0..n).map(move |j| f.derivative(j)))
        .collect();
    PolyMatrix::new(sys.shape().p() + 1, n, entries)
}

/// Determinants of the `k x k` submatrices on every k-subset of columns,
/// ordered lexicographically by column subset. Expansion is along the first
/// row, memoized on column subsets.
pub fn maximal_minors(m: &PolyMatrix, k: usize) -> Result<Vec<Polynomial>> {
    if k != m.rows() {
        return Err(Error::DimensionMismatch(format!(
            "minor size {k} for a matrix with {} rows",
            m.rows()
        )));
    }
    if k > m.cols() {
        return Err(Error::DimensionMismatch(format!(
            "minor size {k} exceeds {} columns",
            m.cols()
        )));
    }
    if k == 0 {
        return Err(Error::DimensionMismatch("empty matrix".into()));
    }
    let ring = m.get(0, 0).ring().clone();
    // Subsets of size s use the last s rows.
    let mut memo: HashMap<Vec<usize>, Polynomial> = HashMap::new();
    for j in 0..m.cols() {
        memo.insert(vec![j], m.get(k - 1, j).clone());
    }
    for s in 2..=k {
        let row = k - s;
        for cols in subsets(m.cols(), s) {
            let mut det = Polynomial::zero(&ring);
            for (pos, &c) in cols.iter().enumerate() {
                let a = m.get(row, c);
                if a.is_zero() {
                    continue;
                }
                let mut rest = cols.clone();
                rest.remove(pos);
                let sub = &memo[&rest];
                if sub.is_zero() {
                    continue;
                }
                let prod = a * sub;
                det = if pos % 2 == 0 {
                    &det + &prod
                } else {
                    &det - &prod
                };
            }
            memo.insert(cols, det);
        }
    }
    Ok(subsets(m.cols(), k)
        .into_iter()
        .map(|c| memo.remove(&c).unwrap())
        .collect())
}

pub fn critical_generators(sys: &CriticalSystem) -> GeneratorSet {
    let jac = jacobian(sys);
    let minors = maximal_minors(&jac, sys.shape().p() + 1).expect("p + 1 <= n by shape invariant");
    GeneratorSet {
        constraints: sys.constraints().to_vec(),
        minors,
    }
}

/// `H^deg(f) * f(X/H)` in the ring with one extra trailing variable.
pub fn homogenize_polynomial(f: &Polynomial, ring_h: &RingRef) -> Result<Polynomial> {
    let n = f.ring().nvars();
    if ring_h.nvars() != n + 1 || !f.ring().grading().is_standard() {
        return Err(Error::DimensionMismatch(
            "homogenization expects a standard-graded ring and one extra variable".into(),
        ));
    }
    let d = f.degree().unwrap_or(0);
    Ok(f.map_exponents(ring_h, |e| {
        let mut v = e.to_vec();
        let deg: u32 = e.iter().map(|&x| x as u32).sum();
        v.push((d - deg) as u16);
        v
    }))
}

/// Sets the last variable to one.
pub fn dehomogenize_polynomial(f: &Polynomial, ring: &RingRef) -> Result<Polynomial> {
    if f.ring().nvars() != ring.nvars() + 1 {
        return Err(Error::DimensionMismatch(
            "dehomogenization drops exactly one variable".into(),
        ));
    }
    let n = ring.nvars();
    Ok(f.map_exponents(ring, |e| e[..n].to_vec()))
}

/// Homogenizes every polynomial of the system with a new variable `H`.
pub fn homogenize(sys: &CriticalSystem) -> Result<CriticalSystem> {
    let n = sys.shape().n();
    if sys.ring().nvars() != n {
        return Err(Error::DimensionMismatch(
            "system is already homogenized".into(),
        ));
    }
    let ring_h = PolyRing::homogenized(sys.field(), n);
    let q = homogenize_polynomial(sys.objective(), &ring_h)?;
    let constraints = sys
        .constraints()
        .iter()
        .map(|f| homogenize_polynomial(f, &ring_h))
        .collect::<Result<Vec<_>>>()?;
    CriticalSystem::new(sys.shape().clone(), q, constraints)
}

/// `(q^inf, f_1^inf, ..., f_p^inf)`; fails if a component vanishes or its
/// degree differs from the shape.
pub fn highest_system(sys: &CriticalSystem) -> Result<CriticalSystem> {
    let mut parts = Vec::with_capacity(sys.shape().p() + 1);
    for (i, f) in sys.polynomials().enumerate() {
        let h = f.highest_part()?;
        let want = sys.shape().degrees()[i];
        if h.degree() != Some(want) {
            return Err(Error::UndefinedInput(format!(
                "component {i} has degree {:?}, expected {want}",
                h.degree()
            )));
        }
        parts.push(h);
    }
    let q = parts.remove(0);
    CriticalSystem::new(sys.shape().clone(), q, parts)
}

fn random_polynomial(ring: &RingRef, d: u32, rng: &mut ChaCha8Rng) -> Polynomial {
    let field = ring.field();
    let n = ring.nvars();
    let mut terms: Vec<(Monomial, u32)> = Vec::new();
    for k in 0..d {
        for e in exponent_vectors_of_degree(n, k) {
            terms.push((ring.monomial(&e), field.random(rng)));
        }
    }
    let top: Vec<_> = exponent_vectors_of_degree(n, d);
    loop {
        let coeffs: Vec<u32> = top.iter().map(|_| field.random(rng)).collect();
        if coeffs.iter().any(|&c| c != 0) {
            terms.extend(top.iter().zip(coeffs).map(|(e, c)| (ring.monomial(e), c)));
            break;
        }
    }
    Polynomial::from_terms(ring, terms)
}

/// Dense random polynomials of exact degrees `d_0..d_p` with uniform
/// coefficients; deterministic in `seed`.
pub fn random_instance(shape: &ProblemShape, field: PrimeField, seed: u64) -> CriticalSystem {
    let ring = PolyRing::standard(field, shape.n());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut polys: Vec<Polynomial> = shape
        .degrees()
        .iter()
        .map(|&d| random_polynomial(&ring, d, &mut rng))
        .collect();
    let q = polys.remove(0);
    CriticalSystem::new(shape.clone(), q, polys).expect("degrees match by construction")
}

/// Writes the instance file format:
///
/// ```text
/// prime = 65521
/// n = 2
/// p = 1
/// degrees = 1,2
/// q = X1
/// f1 = X1^2+X2^2-1
/// ```
pub fn write_instance(sys: &CriticalSystem) -> String {
    let shape = sys.shape();
    let mut out = String::new();
    out.push_str(&format!("prime = {}\n", sys.field().modulus()));
    out.push_str(&format!("n = {}\n", shape.n()));
    out.push_str(&format!("p = {}\n", shape.p()));
    out.push_str(&format!("degrees = {}\n", shape.degrees_string()));
    out.push_str(&format!("q = {}\n", sys.objective()));
    for (i, f) in sys.constraints().iter().enumerate() {
        out.push_str(&format!("f{} = {}\n", i + 1, f));
    }
    out
}

pub fn read_instance(text: &str) -> Result<CriticalSystem> {
    struct Entry<'a> {
        line: usize,
        col: usize,
        value: &'a str,
    }
    let mut entries: HashMap<String, Entry> = HashMap::new();
    let mut order = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let Some(eq) = content.find('=') else {
            return Err(Error::Parse {
                line,
                column: content.len() - content.trim_start().len() + 1,
                message: "expected `key = value`".into(),
            });
        };
        let key = content[..eq].trim().to_string();
        let value_start = eq + 1;
        let value = &content[value_start..];
        if entries.contains_key(&key) {
            return Err(Error::Parse {
                line,
                column: 1,
                message: format!("duplicate key {key:?}"),
            });
        }
        order.push(key.clone());
        entries.insert(
            key,
            Entry {
                line,
                col: content[..value_start].chars().count(),
                value,
            },
        );
    }
    let last_line = text.lines().count().max(1);
    let missing = |k: &str| Error::Parse {
        line: last_line,
        column: 1,
        message: format!("missing key {k:?}"),
    };
    let integer = |k: &str| -> Result<u64> {
        let e = entries.get(k).ok_or_else(|| missing(k))?;
        e.value.trim().parse::<u64>().map_err(|_| Error::Parse {
            line: e.line,
            column: e.col + 1 + e.value.len() - e.value.trim_start().len(),
            message: format!("{k} must be a non-negative integer"),
        })
    };

    let prime = integer("prime")?;
    let field = u32::try_from(prime)
        .map_err(|_| Error::InvalidModulus(u32::MAX))
        .and_then(PrimeField::new)?;
    let n = integer("n")? as usize;
    let p = integer("p")? as usize;
    let deg_entry = entries.get("degrees").ok_or_else(|| missing("degrees"))?;
    let degrees = deg_entry
        .value
        .split(',')
        .map(|s| s.trim().parse::<u32>())
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(|_| Error::Parse {
            line: deg_entry.line,
            column: deg_entry.col + 1,
            message: "degrees must be a comma-separated list of integers".into(),
        })?;
    let shape = ProblemShape::new(n, p, degrees)?;
    let ring = PolyRing::standard(field, n);
    let poly = |k: &str| -> Result<Polynomial> {
        let e = entries.get(k).ok_or_else(|| missing(k))?;
        parse_polynomial_at(&ring, e.value, e.line, e.col)
    };
    let q = poly("q")?;
    let constraints = (1..=p)
        .map(|i| poly(&format!("f{i}")))
        .collect::<Result<Vec<_>>>()?;
    let known = |k: &str| {
        matches!(k, "prime" | "n" | "p" | "degrees" | "q")
            || k.strip_prefix('f')
                .and_then(|i| i.parse::<usize>().ok())
                .is_some_and(|i| (1..=p).contains(&i))
    };
    if let Some(k) = order.iter().find(|k| !known(k)) {
        let e = &entries[k.as_str()];
        return Err(Error::Parse {
            line: e.line,
            column: 1,
            message: format!("unknown key {k:?}"),
        });
    }
    CriticalSystem::new(shape, q, constraints)
}

pub fn load_instance(path: &Path) -> Result<CriticalSystem> {
    read_instance(&std::fs::read_to_string(path)?)
}
