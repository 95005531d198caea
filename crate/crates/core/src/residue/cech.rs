use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::poly::Polynomial;
use crate::scalar::Field;

/// Σ c_e·x^e ⊗ dx in one variable, e ∈ ℤ; negative powers stand for α/x^{−e}.
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentDx<C: Field> {
    pub terms: BTreeMap<i64, C>,
}

impl<C: Field> LaurentDx<C> {
    pub fn zero() -> Self {
        LaurentDx { terms: BTreeMap::new() }
    }

    pub fn monomial(e: i64, c: C) -> Self {
        let mut out = Self::zero();
        out.add_term(e, c);
        out
    }

    pub fn add_term(&mut self, e: i64, c: C) {
        let v = self.terms.remove(&e).unwrap_or_else(C::zero) + c;
        if !v.is_zero() {
            self.terms.insert(e, v);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c.clone());
        }
        out
    }

    /// Multiply by x^e·c.
    pub fn shift(&self, e: i64, c: &C) -> Self {
        let mut out = Self::zero();
        for (k, v) in &self.terms {
            out.add_term(k + e, v.clone() * c.clone());
        }
        out
    }

    /// A polynomial coefficient of dx.
    pub fn from_poly(p: &Polynomial<C>) -> Self {
        assert_eq!(p.ring().nvars(), 1, "one-variable model");
        let mut out = Self::zero();
        for (m, c) in p.terms() {
            out.add_term(m.exponents()[0] as i64, c.clone());
        }
        out
    }
}

/// Class in k[x]_{(x)}[x⁻¹]/k[x]_{(x)}·α ⊗ Ω¹: the polynomial part and the
/// coefficients of α/x^j ⊗ dx for j ≥ 1.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Cech1Var<C: Field> {
    #[serde(skip)]
    pub poly: Option<Polynomial<C>>,
    #[serde(serialize_with = "ser_singular")]
    pub singular: BTreeMap<u32, C>,
}

fn ser_singular<C: Field, S: serde::Serializer>(m: &BTreeMap<u32, C>, s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeMap;
    let mut map = s.serialize_map(Some(m.len()))?;
    for (k, v) in m {
        map.serialize_entry(&k.to_string(), &v.to_string())?;
    }
    map.end()
}

impl<C: Field> Cech1Var<C> {
    /// α·c/x^j ⊗ dx
    pub fn pole(j: u32, c: C) -> Self {
        let mut singular = BTreeMap::new();
        if !c.is_zero() {
            singular.insert(j, c);
        }
        Cech1Var { poly: None, singular }
    }

    /// The residue: the coefficient of α/x ⊗ dx.
    pub fn residue(&self) -> C {
        self.singular.get(&1).cloned().unwrap_or_else(C::zero)
    }
}

impl<C: Field> fmt::Display for Cech1Var<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.singular.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .singular
            .iter()
            .map(|(j, c)| format!("({})·α/x^{} ⊗ dx", c, j))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Canonical representative: the polynomial part is a coboundary and is
/// dropped.
pub fn cech_1var_reduce<C: Field>(w: &LaurentDx<C>) -> Cech1Var<C> {
    let singular = w
        .terms
        .iter()
        .filter(|(e, c)| **e < 0 && !c.is_zero())
        .map(|(e, c)| ((-e) as u32, c.clone()))
        .collect();
    Cech1Var { poly: None, singular }
}

