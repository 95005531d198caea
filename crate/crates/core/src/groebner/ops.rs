
use super::basis::{buchberger, GroebnerBasis, VectorPoly};
use super::mvec::MVec;
use crate::error::{Error, Result};
use crate::poly::{Monomial, MonomialOrder, PolyMatrix, Polynomial, Ring};
use crate::scalar::Field;

/// A finitely presented module Q^rank / ⟨relations⟩.
#[derive(Clone, Debug)]
pub struct ModulePresentation<C: Field> {
    pub ring: Ring,
    pub rank: usize,
    pub relations: Vec<VectorPoly<C>>,
}

/// Gröbner basis of the graph {(gᵢ, eᵢ)} used to express members of
/// ⟨g₁,…,gₘ⟩ in terms of the generators. The first `rank` positions
/// dominate, so eliminating them leaves the syzygies in the tail block.
#[derive(Clone, Debug)]
pub struct Lifter<C: Field> {
    rank: usize,
    ngens: usize,
    gb: GroebnerBasis<C>,
}

impl<C: Field> Lifter<C> {
    pub fn new(ring: &Ring, gens: &[VectorPoly<C>], rank: usize) -> Self {
        let m = gens.len();
        let aug: Vec<VectorPoly<C>> = gens
            .iter()
            .enumerate()
            .map(|(j, g)| {
                assert_eq!(g.len(), rank, "generator rank");
                let mut v = g.clone();
                for k in 0..m {
                    v.push(if k == j {
                        Polynomial::one(ring)
                    } else {
                        Polynomial::zero(ring)
                    });
                }
                v
            })
            .collect();
        Lifter {
            rank,
            ngens: m,
            gb: buchberger(ring, &aug, rank + m, MonomialOrder::default()),
        }
    }

    pub fn lift(&self, v: &[Polynomial<C>]) -> Result<Vec<Polynomial<C>>> {
        assert_eq!(v.len(), self.rank, "vector rank");
        let ring = self.gb.ring().clone();
        let mut padded = v.to_vec();
        padded.extend(std::iter::repeat(Polynomial::zero(&ring)).take(self.ngens));
        let rem = self
            .gb
            .reduce_mvec(MVec::from_vector(&padded, self.gb.order()));
        if rem.terms.iter().any(|t| t.pos < self.rank) {
            return Err(Error::NotInModule);
        }
        let full = rem.to_vector(&ring, self.rank + self.ngens);
        Ok(full[self.rank..].iter().map(|p| -p).collect())
    }

    /// Generators of the syzygy module of the generators.
    pub fn syzygies(&self) -> Vec<VectorPoly<C>> {
        self.gb
            .generators()
            .into_iter()
            .filter(|v| v[..self.rank].iter().all(Polynomial::is_zero))
            .map(|v| v[self.rank..].to_vec())
            .collect()
    }
}

/// Coefficients c with v = Σ cᵢ·gensᵢ.
pub fn lift<C: Field>(
    ring: &Ring,
    v: &[Polynomial<C>],
    gens: &[VectorPoly<C>],
) -> Result<Vec<Polynomial<C>>> {
    Lifter::new(ring, gens, v.len()).lift(v)
}

/// Generators of ker(M: Q^cols → Q^rows).
pub fn syzygies<C: Field>(m: &PolyMatrix<C>) -> Vec<VectorPoly<C>> {
    Lifter::new(m.ring(), &m.columns(), m.rows()).syzygies()
}

/// Smallest N ≤ cap with xᵢ^N ∈ J, with coefficients xᵢ^N = Σ aⱼ·Jⱼ.
pub fn power_membership<C: Field>(
    ring: &Ring,
    ideal: &[Polynomial<C>],
    i: usize,
    cap: u32,
) -> Result<(u32, Vec<Polynomial<C>>)> {
    let gb = GroebnerBasis::ideal(ring, ideal);
    let x = Polynomial::var(ring, i);
    let mut power = Polynomial::one(ring);
    for n in 1..=cap {
        power = &power * &x;
        if gb.reduce_poly(&power).is_zero() {
            let gens: Vec<VectorPoly<C>> = ideal.iter().map(|g| vec![g.clone()]).collect();
            let coeffs = Lifter::new(ring, &gens, 1).lift(std::slice::from_ref(&power))?;
            return Ok((n, coeffs));
        }
    }
    Err(Error::NotZeroDimensional)
}

pub const DEFAULT_POWER_CAP: u32 = 64;

impl<C: Field> GroebnerBasis<C> {
    /// Monomials outside the leading module, grouped by position, in
    /// ascending (position, grevlex) order.
    pub fn standard_monomials(&self) -> Result<Vec<(usize, Monomial)>> {
        let n = self.ring().nvars();
        let leads = self.leading_terms();
        let mut out = Vec::new();
        for pos in 0..self.rank() {
            let here: Vec<&Monomial> = leads
                .iter()
                .filter(|(p, _)| *p == pos)
                .map(|(_, m)| m)
                .collect();
            if here.iter().any(|m| m.is_one()) {
                continue;
            }
            if n == 0 {
                out.push((pos, Monomial::one(0)));
                continue;
            }
            let mut bounds = vec![None; n];
            for m in &here {
                if let Some(v) = m.pure_power_of() {
                    let e = m.exponents()[v];
                    bounds[v] = Some(bounds[v].map_or(e, |b: u32| b.min(e)));
                }
            }
            let bounds: Vec<u32> = match bounds.into_iter().collect::<Option<Vec<u32>>>() {
                Some(b) => b,
                None => return Err(Error::InfiniteLength),
            };
            let mut found = Vec::new();
            let mut exps = vec![0u32; n];
            enumerate_box(&bounds, 0, &mut exps, &here, &mut found);
            found.sort();
            out.extend(found.into_iter().map(|m| (pos, m)));
        }
        Ok(out)
    }

    pub fn quotient_dimension(&self) -> Result<usize> {
        Ok(self.standard_monomials()?.len())
    }
}

fn enumerate_box(bounds: &[u32], k: usize, exps: &mut Vec<u32>, leads: &[&Monomial], out: &mut Vec<Monomial>) {
    if k == bounds.len() {
        let m = Monomial::from_exponents(exps.clone());
        if !leads.iter().any(|l| l.divides(&m)) {
            out.push(m);
        }
        return;
    }
    for e in 0..bounds[k] {
        exps[k] = e;
        enumerate_box(bounds, k + 1, exps, leads, out);
    }
    exps[k] = 0;
}

impl<C: Field> ModulePresentation<C> {
    pub fn groebner(&self) -> GroebnerBasis<C> {
        GroebnerBasis::new(&self.ring, &self.relations, self.rank)
    }
}

/// dim_k of Q^r/⟨relations⟩.
pub fn quotient_dimension<C: Field>(pres: &ModulePresentation<C>) -> Result<usize> {
    pres.groebner().quotient_dimension()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;
    use crate::Rational;

    type P = Polynomial<Rational>;

    fn ring() -> Ring {
        Ring::new(&["x", "y"])
    }

    fn p(s: &str) -> P {
        parse_poly(s, &ring()).unwrap()
    }

    fn pres(rels: &[&str]) -> ModulePresentation<Rational> {
        ModulePresentation {
            ring: ring(),
            rank: 1,
            relations: rels.iter().map(|s| vec![p(s)]).collect(),
        }
    }

    #[test]
    fn lifting() {
        let r = ring();
        assert_eq!(lift(&r, &[p("x^2")], &[vec![p("x")]]).unwrap(), vec![p("x")]);
        let c = lift(&r, &[p("x^3")], &[vec![p("3*x^2")]]).unwrap();
        assert_eq!(c[0].to_string(), "1/3*x");
        assert_eq!(lift(&r, &[p("y")], &[vec![p("x")]]), Err(Error::NotInModule));
        let gens = vec![vec![p("x^2-y")], vec![p("x*y-1")]];
        let target = p("x^3*y - x*y^2 + x^2 - y");
        let c = lift(&r, &[target.clone()], &gens).unwrap();
        assert_eq!(&(&c[0] * &gens[0][0]) + &(&c[1] * &gens[1][0]), target);
    }

    #[test]
    fn syzygy_examples() {
        let r = ring();
        let m = PolyMatrix::from_rows(&r, vec![vec![p("x"), p("y")]]).unwrap();
        let s = syzygies(&m);
        assert_eq!(s.len(), 1);
        let (u, v) = (&s[0][0], &s[0][1]);
        assert!((&(&p("x") * u) + &(&p("y") * v)).is_zero());
        assert!(u == &p("y") || u == &p("-y"));
        assert!(syzygies(&PolyMatrix::<Rational>::identity(&r, 2)).is_empty());
        let col = PolyMatrix::from_rows(&r, vec![vec![p("x")], vec![p("y")]]).unwrap();
        assert!(syzygies(&col).is_empty());
    }

    #[test]
    fn powers() {
        let r = ring();
        let (n, c) = power_membership(&r, &[p("y"), p("x")], 0, 64).unwrap();
        assert_eq!(n, 1);
        assert_eq!(c, vec![p("0"), p("1")]);
        let (n, c) = power_membership(&r, &[p("3*x^2"), p("3*y^2")], 0, 64).unwrap();
        assert_eq!(n, 2);
        assert_eq!(c[0].to_string(), "1/3");
        assert!(c[1].is_zero());
        assert_eq!(
            power_membership(&r, &[p("x")], 1, 20),
            Err(Error::NotZeroDimensional)
        );
    }

    #[test]
    fn dimensions() {
        assert_eq!(quotient_dimension(&pres(&["x", "y"])), Ok(1));
        assert_eq!(quotient_dimension(&pres(&["3*x^2", "3*y^2"])), Ok(4));
        let r1 = Ring::new(&["x"]);
        let zero = ModulePresentation::<Rational> {
            ring: r1.clone(),
            rank: 1,
            relations: vec![vec![P::zero(&r1)]],
        };
        assert_eq!(quotient_dimension(&zero), Err(Error::InfiniteLength));
        assert_eq!(quotient_dimension(&pres(&["x^3", "y^2", "x*y"])), Ok(4));
        assert_eq!(quotient_dimension(&pres(&["1"])), Ok(0));
    }
}
