use std::sync::Arc;

use super::field::PrimeField;
use super::monomial::{Grading, Monomial, MonomialOrder};
use crate::error::{Error, Result};

/// Ambient polynomial ring: coefficient field, variable names, grading and
/// the monomial order used to sort terms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyRing {
    field: PrimeField,
    names: Vec<String>,
    grading: Grading,
    order: MonomialOrder,
}

pub type RingRef = Arc<PolyRing>;

impl PolyRing {
    pub fn new(
        field: PrimeField,
        names: Vec<String>,
        grading: Grading,
        order: MonomialOrder,
    ) -> Result<RingRef> {
        if names.len() != grading.nvars() {
            return Err(Error::DimensionMismatch(format!(
                "{} variable names for a grading on {} variables",
                names.len(),
                grading.nvars()
            )));
        }
        for (i, a) in names.iter().enumerate() {
            let valid = a.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
                && a.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !valid {
                return Err(Error::UndefinedInput(format!(
                    "invalid variable name {a:?}"
                )));
            }
            if names[..i].contains(a) {
                return Err(Error::UndefinedInput(format!(
                    "duplicate variable name {a:?}"
                )));
            }
        }
        Ok(Arc::new(PolyRing {
            field,
            names,
            grading,
            order,
        }))
    }

    /// `GF(p)[X1, ..., Xn]` with the standard grading and grevlex.
    pub fn standard(field: PrimeField, n: usize) -> RingRef {
        let names = (1..=n).map(|i| format!("X{i}")).collect();
        Self::new(field, names, Grading::standard(n), MonomialOrder::Grevlex)
            .expect("standard names are valid")
    }

    /// `GF(p)[X1, ..., Xn, H]`, the ring of homogenized polynomials.
    pub fn homogenized(field: PrimeField, n: usize) -> RingRef {
        let mut names: Vec<String> = (1..=n).map(|i| format!("X{i}")).collect();
        names.push("H".into());
        Self::new(
            field,
            names,
            Grading::standard(n + 1),
            MonomialOrder::Grevlex,
        )
        .expect("standard names are valid")
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn grading(&self) -> &Grading {
        &self.grading
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn monomial(&self, exps: &[u16]) -> Monomial {
        Monomial::new(exps, &self.grading)
    }

    /// Same ring with a different monomial order.
    pub fn with_order(&self, order: MonomialOrder) -> RingRef {
        Arc::new(PolyRing {
            order,
            ..self.clone()
        })
    }
}
