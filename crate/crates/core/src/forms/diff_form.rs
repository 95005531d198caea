use std::collections::BTreeMap;
use std::fmt;


use crate::poly::{join_signed, render_monomial, render_scaled, Polynomial, Ring};
use crate::scalar::Field;

/// Sign of dx_S ∧ dx_T relative to dx_{S∪T}; None if S and T overlap.
pub(crate) fn wedge_sign(s: u32, t: u32) -> Option<bool> {
    if s & t != 0 {
        return None;
    }
    // count pairs (a ∈ S, b ∈ T) with a > b
    let mut inversions = 0u32;
    let mut rest = t;
    while rest != 0 {
        let b = rest.trailing_zeros();
        rest &= rest - 1;
        inversions += (s >> (b + 1)).count_ones();
    }
    Some(inversions % 2 == 1)
}

/// Differential form with polynomial coefficients; keys are bitmasks of
/// the variable indices in dx_S.
#[derive(Clone, PartialEq)]
pub struct DiffForm<C: Field> {
    ring: Ring,
    comps: BTreeMap<u32, Polynomial<C>>,
}

impl<C: Field> DiffForm<C> {
    pub fn zero(ring: &Ring) -> Self {
        assert!(ring.nvars() <= 31, "too many variables for forms");
        DiffForm {
            ring: ring.clone(),
            comps: BTreeMap::new(),
        }
    }

    pub fn function(p: Polynomial<C>) -> Self {
        Self::component(0, p)
    }

    /// p·dx_S for the index set encoded in `mask`.
    pub fn component(mask: u32, p: Polynomial<C>) -> Self {
        let mut out = Self::zero(p.ring());
        if !p.is_zero() {
            out.comps.insert(mask, p);
        }
        out
    }

    pub fn dx(ring: &Ring, i: usize) -> Self {
        Self::component(1 << i, Polynomial::one(ring))
    }

    /// dx₁∧⋯∧dxₙ with the given coefficient.
    pub fn top(p: Polynomial<C>) -> Self {
        let n = p.ring().nvars();
        Self::component(((1u64 << n) - 1) as u32, p)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn components(&self) -> impl Iterator<Item = (u32, &Polynomial<C>)> {
        self.comps.iter().map(|(k, v)| (*k, v))
    }

    pub fn coefficient(&self, mask: u32) -> Polynomial<C> {
        self.comps
            .get(&mask)
            .cloned()
            .unwrap_or_else(|| Polynomial::zero(&self.ring))
    }

    pub fn top_coefficient(&self) -> Polynomial<C> {
        let n = self.ring.nvars();
        self.coefficient(((1u64 << n) - 1) as u32)
    }

    /// Part of degree d.
    pub fn homogeneous(&self, d: u32) -> Self {
        DiffForm {
            ring: self.ring.clone(),
            comps: self
                .comps
                .iter()
                .filter(|(k, _)| k.count_ones() == d)
                .map(|(k, v)| (*k, v.clone()))
                .collect(),
        }
    }

    pub fn add_component(&mut self, mask: u32, p: Polynomial<C>) {
        if p.is_zero() {
            return;
        }
        let sum = match self.comps.remove(&mask) {
            Some(q) => &q + &p,
            None => p,
        };
        if !sum.is_zero() {
            self.comps.insert(mask, sum);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, v) in &other.comps {
            out.add_component(*k, v.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-C::one()))
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        DiffForm {
            ring: self.ring.clone(),
            comps: self.comps.iter().map(|(k, v)| (*k, v.scale(c))).collect(),
        }
    }

    pub fn mul_poly(&self, p: &Polynomial<C>) -> Self {
        let mut out = Self::zero(&self.ring);
        for (k, v) in &self.comps {
            out.add_component(*k, v * p);
        }
        out
    }

    pub fn wedge(&self, other: &Self) -> Self {
        let mut out = Self::zero(&self.ring);
        for (s, p) in &self.comps {
            for (t, q) in &other.comps {
                if let Some(neg) = wedge_sign(*s, *t) {
                    let prod = p * q;
                    out.add_component(s | t, if neg { -prod } else { prod });
                }
            }
        }
        out
    }

    pub fn de_rham(&self) -> Self {
        let mut out = Self::zero(&self.ring);
        for (s, p) in &self.comps {
            for i in 0..self.ring.nvars() {
                let dp = p.partial_derivative(i);
                if dp.is_zero() {
                    continue;
                }
                if let Some(neg) = wedge_sign(1 << i, *s) {
                    out.add_component(s | (1 << i), if neg { -dp } else { dp });
                }
            }
        }
        out
    }

    /// d of a function.
    pub fn d(p: &Polynomial<C>) -> Self {
        Self::function(p.clone()).de_rham()
    }

    pub fn is_even(&self) -> Option<bool> {
        let mut parities = self.comps.keys().map(|k| k.count_ones() % 2 == 0);
        let first = parities.next()?;
        if parities.all(|p| p == first) {
            Some(first)
        } else {
            None
        }
    }
}

impl<C: Field> fmt::Display for DiffForm<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = self.ring.names();
        let mut parts = Vec::new();
        for (mask, p) in &self.comps {
            let dxs: Vec<String> = (0..names.len())
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| format!("d{}", names[i]))
                .collect();
            let dx = dxs.join("∧");
            for (m, c) in p.terms().rev() {
                let mono = render_monomial(m, names);
                let body = match (mono.is_empty(), dx.is_empty()) {
                    (true, _) => dx.clone(),
                    (false, true) => mono,
                    (false, false) => format!("{}*{}", mono, dx),
                };
                parts.push(render_scaled(c, &body));
            }
        }
        f.write_str(&join_signed(parts.into_iter()))
    }
}

impl<C: Field> fmt::Debug for DiffForm<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DiffForm({})", self)
    }
}
