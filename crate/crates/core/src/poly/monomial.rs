use std::cmp::Ordering;

/// Exponent vector of a monomial in a fixed ring.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn from_exponents(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self` when `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        Some(Monomial(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect()))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.min(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn pure_power_of(&self) -> Option<usize> {
        let mut found = None;
        for (i, &e) in self.0.iter().enumerate() {
            if e > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some(i);
            }
        }
        found
    }

    /// Insert the exponents of `self` at `offset` inside a monomial with `nvars` variables.
    pub fn embed(&self, nvars: usize, offset: usize) -> Monomial {
        let mut e = vec![0; nvars];
        e[offset..offset + self.0.len()].copy_from_slice(&self.0);
        Monomial(e)
    }
}

/// Monomial orders available to Gröbner computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum MonomialOrder {
    Lex,
    GrLex,
    #[default]
    GRevLex,
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Lex => a.0.cmp(&b.0),
            MonomialOrder::GrLex => a.degree().cmp(&b.degree()).then_with(|| a.0.cmp(&b.0)),
            MonomialOrder::GRevLex => grevlex(a, b),
        }
    }
}

fn grevlex(a: &Monomial, b: &Monomial) -> Ordering {
    match a.degree().cmp(&b.degree()) {
        Ordering::Equal => {}
        o => return o,
    }
    for (x, y) in a.0.iter().rev().zip(b.0.iter().rev()) {
        if x != y {
            return y.cmp(x);
        }
    }
    Ordering::Equal
}

// Polynomials store their terms ordered by grevlex, which is also the
// canonical rendering order.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        grevlex(self, other).then_with(|| self.0.len().cmp(&other.0.len()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e.to_vec())
    }

    #[test]
    fn grevlex_basics() {
        // x > y > z in degree one
        assert!(m(&[1, 0, 0]) > m(&[0, 1, 0]));
        assert!(m(&[0, 1, 0]) > m(&[0, 0, 1]));
        // x*z < y^2 under grevlex, but not under lex
        assert!(m(&[1, 0, 1]) < m(&[0, 2, 0]));
        assert_eq!(
            MonomialOrder::Lex.cmp(&m(&[1, 0, 1]), &m(&[0, 2, 0])),
            Ordering::Greater
        );
        assert!(m(&[0, 0, 2]) > m(&[1, 0, 0]));
    }

    #[test]
    fn divisibility() {
        assert!(m(&[1, 1]).divides(&m(&[2, 1])));
        assert!(!m(&[1, 2]).divides(&m(&[2, 1])));
        assert_eq!(m(&[1, 2]).lcm(&m(&[2, 1])), m(&[2, 2]));
        assert_eq!(m(&[1, 0]).quotient_of(&m(&[3, 2])), Some(m(&[2, 2])));
        assert_eq!(m(&[0, 3]).pure_power_of(), Some(1));
        assert_eq!(m(&[1, 3]).pure_power_of(), None);
    }
}
