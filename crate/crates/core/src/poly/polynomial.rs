use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};



use super::{Monomial, Ring};
use crate::error::{Error, Result};
use crate::scalar::Field;

/// Sparse polynomial with terms kept in grevlex order, no zero coefficients.
#[derive(Clone)]
pub struct Polynomial<C> {
    ring: Ring,
    terms: BTreeMap<Monomial, C>,
}

impl<C: Field> Polynomial<C> {
    pub fn zero(ring: &Ring) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ring: &Ring) -> Self {
        Self::constant(ring, C::one())
    }

    pub fn constant(ring: &Ring, c: C) -> Self {
        Self::term(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn from_int(ring: &Ring, n: i64) -> Self {
        Self::constant(ring, C::from_i64(n))
    }

    pub fn var(ring: &Ring, i: usize) -> Self {
        Self::term(ring, Monomial::var(ring.nvars(), i), C::one())
    }

    pub fn term(ring: &Ring, m: Monomial, c: C) -> Self {
        assert_eq!(m.arity(), ring.nvars(), "monomial arity");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, C)>>(ring: &Ring, it: I) -> Self {
        let mut p = Self::zero(ring);
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending grevlex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    pub fn constant_coeff(&self) -> C {
        self.coeff(&Monomial::one(self.ring.nvars()))
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &C)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn add_term(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().clone() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn check_ring(&self, other: &Self) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::ArityMismatch)
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let mut out = Self::zero(&self.ring);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1.clone() * c2.clone());
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), a.clone() * c.clone()))
                .collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(n, a)| (n.mul(m), a.clone() * c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.ring);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn partial_derivative(&self, i: usize) -> Self {
        let mut out = Self::zero(&self.ring);
        for (m, c) in &self.terms {
            let e = m.exponents()[i];
            if e == 0 {
                continue;
            }
            let mut ex = m.exponents().to_vec();
            ex[i] -= 1;
            out.add_term(Monomial::from_exponents(ex), c.clone() * C::from_i64(e as i64));
        }
        out
    }

    /// Move into a ring with more variables, placing ours at `offset`.
    pub fn embed(&self, target: &Ring, offset: usize) -> Self {
        assert!(offset + self.ring.nvars() <= target.nvars());
        Polynomial {
            ring: target.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.embed(target.nvars(), offset), c.clone()))
                .collect(),
        }
    }

    /// Substitute polynomials (all in a common target ring) for the variables.
    pub fn substitute(&self, images: &[Polynomial<C>], target: &Ring) -> Self {
        assert_eq!(images.len(), self.ring.nvars());
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            let mut t = Self::constant(target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    t = &t * &images[i].pow(e);
                }
            }
            out = &out + &t;
        }
        out
    }
}

impl<C: Field> PartialEq for Polynomial<C> {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.terms == other.terms
    }
}

impl<C: Field> Eq for Polynomial<C> {}

impl<'a, C: Field> Add for &'a Polynomial<C> {
    type Output = Polynomial<C>;
    fn add(self, rhs: Self) -> Polynomial<C> {
        self.checked_add(rhs).expect("ring mismatch in +")
    }
}

impl<'a, C: Field> Sub for &'a Polynomial<C> {
    type Output = Polynomial<C>;
    fn sub(self, rhs: Self) -> Polynomial<C> {
        self.checked_sub(rhs).expect("ring mismatch in -")
    }
}

impl<'a, C: Field> Mul for &'a Polynomial<C> {
    type Output = Polynomial<C>;
    fn mul(self, rhs: Self) -> Polynomial<C> {
        self.checked_mul(rhs).expect("ring mismatch in *")
    }
}

impl<'a, C: Field> Neg for &'a Polynomial<C> {
    type Output = Polynomial<C>;
    fn neg(self) -> Polynomial<C> {
        self.scale(&-C::one())
    }
}

impl<C: Field> Add for Polynomial<C> {
    type Output = Polynomial<C>;
    fn add(self, rhs: Self) -> Polynomial<C> {
        &self + &rhs
    }
}

impl<C: Field> Sub for Polynomial<C> {
    type Output = Polynomial<C>;
    fn sub(self, rhs: Self) -> Polynomial<C> {
        &self - &rhs
    }
}

impl<C: Field> Mul for Polynomial<C> {
    type Output = Polynomial<C>;
    fn mul(self, rhs: Self) -> Polynomial<C> {
        &self * &rhs
    }
}

impl<C: Field> Neg for Polynomial<C> {
    type Output = Polynomial<C>;
    fn neg(self) -> Polynomial<C> {
        -&self
    }
}

pub(crate) fn render_monomial(m: &Monomial, names: &[String]) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.exponents().iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(names[i].clone()),
            _ => parts.push(format!("{}^{}", names[i], e)),
        }
    }
    parts.join("*")
}

/// Render `c * body` as a signed summand; returns (negative, text).
pub(crate) fn render_scaled<C: Field>(c: &C, body: &str) -> (bool, String) {
    let neg = c.is_negative();
    let a = c.abs();
    let text = if body.is_empty() {
        format!("{}", a)
    } else if a.is_one() {
        body.to_string()
    } else {
        format!("{}*{}", a, body)
    };
    (neg, text)
}

pub(crate) fn join_signed(parts: impl Iterator<Item = (bool, String)>) -> String {
    let mut out = String::new();
    for (k, (neg, text)) in parts.enumerate() {
        if k == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&text);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl<C: Field> fmt::Display for Polynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = self.ring.names();
        let s = join_signed(
            self.terms
                .iter()
                .rev()
                .map(|(m, c)| render_scaled(c, &render_monomial(m, names))),
        );
        f.write_str(&s)
    }
}

impl<C: Field> fmt::Debug for Polynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({})", self)
    }
}
