use std::cmp::Ordering;


use crate::poly::{Monomial, MonomialOrder, Polynomial, Ring};
use crate::scalar::Field;

#[derive(Clone, Debug, PartialEq)]
pub(crate) struct Term<C> {
    pub pos: usize,
    pub mono: Monomial,
    pub coeff: C,
}

/// Position-over-term comparison: a smaller position index is the larger term.
pub(crate) fn term_cmp(order: MonomialOrder, pa: usize, ma: &Monomial, pb: usize, mb: &Monomial) -> Ordering {
    pb.cmp(&pa).then_with(|| order.cmp(ma, mb))
}

/// Module element as a term list sorted ascending, so the leading term is last.
#[derive(Clone, Debug, PartialEq)]
pub(crate) struct MVec<C> {
    pub terms: Vec<Term<C>>,
}

impl<C: Field> MVec<C> {
    pub fn from_vector(v: &[Polynomial<C>], order: MonomialOrder) -> Self {
        let mut terms: Vec<Term<C>> = v
            .iter()
            .enumerate()
            .flat_map(|(pos, p)| {
                p.terms().map(move |(m, c)| Term {
                    pos,
                    mono: m.clone(),
                    coeff: c.clone(),
                })
            })
            .collect();
        terms.sort_by(|a, b| term_cmp(order, a.pos, &a.mono, b.pos, &b.mono));
        MVec { terms }
    }

    pub fn to_vector(&self, ring: &Ring, rank: usize) -> Vec<Polynomial<C>> {
        let mut out = vec![Polynomial::zero(ring); rank];
        for t in &self.terms {
            out[t.pos].add_term(t.mono.clone(), t.coeff.clone());
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> &Term<C> {
        self.terms.last().expect("lead of zero vector")
    }

    pub fn make_monic(&mut self) {
        let lc = self.lead().coeff.clone();
        if lc.is_one() {
            return;
        }
        let inv = lc.inv();
        for t in &mut self.terms {
            t.coeff = t.coeff.clone() * inv.clone();
        }
    }

    /// self − c·m·g
    pub fn sub_scaled(&self, g: &MVec<C>, m: &Monomial, c: &C, order: MonomialOrder) -> MVec<C> {
        let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
        let mut i = 0;
        let mut j = 0;
        let shifted = |t: &Term<C>| Term {
            pos: t.pos,
            mono: t.mono.mul(m),
            coeff: -(t.coeff.clone() * c.clone()),
        };
        while i < self.terms.len() || j < g.terms.len() {
            if j == g.terms.len() {
                out.push(self.terms[i].clone());
                i += 1;
                continue;
            }
            let gj = shifted(&g.terms[j]);
            if i == self.terms.len() {
                out.push(gj);
                j += 1;
                continue;
            }
            let a = &self.terms[i];
            match term_cmp(order, a.pos, &a.mono, gj.pos, &gj.mono) {
                Ordering::Less => {
                    out.push(a.clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(gj);
                    j += 1;
                }
                Ordering::Equal => {
                    let s = a.coeff.clone() + gj.coeff;
                    if !s.is_zero() {
                        out.push(Term {
                            pos: a.pos,
                            mono: a.mono.clone(),
                            coeff: s,
                        });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        MVec { terms: out }
    }
}
