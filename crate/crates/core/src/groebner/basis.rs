use std::cmp::Ordering;

use super::mvec::{term_cmp, MVec};
use crate::poly::{Monomial, MonomialOrder, Polynomial, Ring};
use crate::scalar::Field;

/// Element of a free module Q^r, one polynomial per position.
pub type VectorPoly<C> = Vec<Polynomial<C>>;

/// Reduced Gröbner basis of a submodule of Q^rank under a position-over-term
/// order (position 0 is the largest position).
#[derive(Clone, Debug)]
pub struct GroebnerBasis<C: Field> {
    ring: Ring,
    rank: usize,
    order: MonomialOrder,
    elems: Vec<MVec<C>>,
}

struct Pair {
    i: usize,
    j: usize,
    pos: usize,
    lcm: Monomial,
}

struct Builder<C> {
    order: MonomialOrder,
    rank: usize,
    store: Vec<MVec<C>>,
    active: Vec<usize>,
    pairs: Vec<Pair>,
}

impl<C: Field> Builder<C> {
    fn reduce(&self, p: MVec<C>) -> MVec<C> {
        reduce_full(&self.store, self.active.iter().copied(), p, self.order)
    }

    fn insert(&mut self, mut h: MVec<C>) {
        h.make_monic();
        let hidx = self.store.len();
        self.store.push(h);
        let (hpos, hmono) = {
            let l = self.store[hidx].lead();
            (l.pos, l.mono.clone())
        };
        // product criterion only holds for ideals
        let ideal = self.rank == 1;

        let cands: Vec<(usize, Monomial, bool)> = self
            .active
            .iter()
            .filter(|&&g| self.store[g].lead().pos == hpos)
            .map(|&g| {
                let gm = &self.store[g].lead().mono;
                (g, hmono.lcm(gm), ideal && hmono.is_coprime(gm))
            })
            .collect();

        let mut kept: Vec<(usize, Monomial, bool)> = Vec::new();
        for k in 0..cands.len() {
            let (g, ref l, disjoint) = cands[k];
            let dominated = cands[k + 1..].iter().any(|(_, l2, _)| l2.divides(l))
                || kept.iter().any(|(_, l2, _)| l2.divides(l));
            if disjoint || !dominated {
                kept.push((g, l.clone(), disjoint));
            }
        }

        let store = &self.store;
        self.pairs.retain(|p| {
            if p.pos != hpos || !hmono.divides(&p.lcm) {
                return true;
            }
            let li = store[p.i].lead().mono.lcm(&hmono);
            let lj = store[p.j].lead().mono.lcm(&hmono);
            li == p.lcm || lj == p.lcm
        });

        for (g, l, disjoint) in kept {
            if !disjoint {
                self.pairs.push(Pair {
                    i: g,
                    j: hidx,
                    pos: hpos,
                    lcm: l,
                });
            }
        }

        self.active.retain(|&g| {
            let lg = store[g].lead();
            !(lg.pos == hpos && hmono.divides(&lg.mono))
        });
        self.active.push(hidx);
    }

    fn next_pair(&mut self) -> Option<Pair> {
        if self.pairs.is_empty() {
            return None;
        }
        let order = self.order;
        let mut best = 0;
        for k in 1..self.pairs.len() {
            let a = &self.pairs[k];
            let b = &self.pairs[best];
            let c = term_cmp(order, a.pos, &a.lcm, b.pos, &b.lcm)
                .then_with(|| (a.j, a.i).cmp(&(b.j, b.i)));
            if c == Ordering::Less {
                best = k;
            }
        }
        Some(self.pairs.swap_remove(best))
    }

    fn spoly(&self, p: &Pair) -> MVec<C> {
        let gi = &self.store[p.i];
        let gj = &self.store[p.j];
        let qi = gi.lead().mono.quotient_of(&p.lcm).unwrap();
        let qj = gj.lead().mono.quotient_of(&p.lcm).unwrap();
        let zero = MVec { terms: Vec::new() };
        let a = zero.sub_scaled(gi, &qi, &-C::one(), self.order);
        a.sub_scaled(gj, &qj, &C::one(), self.order)
    }
}

pub(crate) fn find_reducer<'a, C: Field>(
    store: &'a [MVec<C>],
    basis: impl Iterator<Item = usize>,
    pos: usize,
    mono: &Monomial,
) -> Option<&'a MVec<C>> {
    for g in basis {
        let l = store[g].lead();
        if l.pos == pos && l.mono.divides(mono) {
            return Some(&store[g]);
        }
    }
    None
}

pub(crate) fn reduce_full<C: Field>(
    store: &[MVec<C>],
    basis: impl Iterator<Item = usize> + Clone,
    mut p: MVec<C>,
    order: MonomialOrder,
) -> MVec<C> {
    let mut rem = Vec::new();
    while let Some(lt) = p.terms.last() {
        match find_reducer(store, basis.clone(), lt.pos, &lt.mono) {
            Some(g) => {
                let gl = g.lead();
                let q = gl.mono.quotient_of(&lt.mono).unwrap();
                let c = lt.coeff.clone() / gl.coeff.clone();
                p = p.sub_scaled(g, &q, &c, order);
            }
            None => rem.push(p.terms.pop().unwrap()),
        }
    }
    rem.reverse();
    MVec { terms: rem }
}

/// Buchberger's algorithm with Gebauer–Möller pair elimination. The result
/// is the reduced basis, sorted by leading term, so it depends only on the
/// submodule and the order.
pub fn buchberger<C: Field>(
    ring: &Ring,
    gens: &[VectorPoly<C>],
    rank: usize,
    order: MonomialOrder,
) -> GroebnerBasis<C> {
    let mut b = Builder {
        order,
        rank,
        store: Vec::new(),
        active: Vec::new(),
        pairs: Vec::new(),
    };
    for g in gens {
        assert_eq!(g.len(), rank, "generator rank");
        let h = b.reduce(MVec::from_vector(g, order));
        if !h.is_zero() {
            b.insert(h);
        }
    }
    while let Some(p) = b.next_pair() {
        let h = b.reduce(b.spoly(&p));
        if !h.is_zero() {
            b.insert(h);
        }
    }

    // the active set is already minimal; interreduce tails
    let minimal: Vec<MVec<C>> = b.active.iter().map(|&i| b.store[i].clone()).collect();
    let mut elems = Vec::with_capacity(minimal.len());
    for (k, g) in minimal.iter().enumerate() {
        let others = (0..minimal.len()).filter(move |&o| o != k);
        let mut lead_only = g.clone();
        let lt = lead_only.terms.pop().unwrap();
        let mut tail = reduce_full(&minimal, others, lead_only, order);
        tail.terms.push(lt);
        tail.make_monic();
        elems.push(tail);
    }
    elems.sort_by(|a, b| {
        let (la, lb) = (a.lead(), b.lead());
        term_cmp(order, lb.pos, &lb.mono, la.pos, &la.mono)
    });
    GroebnerBasis {
        ring: ring.clone(),
        rank,
        order,
        elems,
    }
}

impl<C: Field> GroebnerBasis<C> {
    pub fn new(ring: &Ring, gens: &[VectorPoly<C>], rank: usize) -> Self {
        buchberger(ring, gens, rank, MonomialOrder::default())
    }

    /// Gröbner basis of an ideal.
    pub fn ideal(ring: &Ring, gens: &[Polynomial<C>]) -> Self {
        let v: Vec<VectorPoly<C>> = gens.iter().map(|g| vec![g.clone()]).collect();
        Self::new(ring, &v, 1)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn generators(&self) -> Vec<VectorPoly<C>> {
        self.elems
            .iter()
            .map(|e| e.to_vector(&self.ring, self.rank))
            .collect()
    }

    /// Leading (position, monomial) of each element.
    pub fn leading_terms(&self) -> Vec<(usize, Monomial)> {
        self.elems
            .iter()
            .map(|e| (e.lead().pos, e.lead().mono.clone()))
            .collect()
    }

    pub(crate) fn reduce_mvec(&self, v: MVec<C>) -> MVec<C> {
        reduce_full(&self.elems, 0..self.elems.len(), v, self.order)
    }

    pub fn normal_form(&self, v: &[Polynomial<C>]) -> VectorPoly<C> {
        assert_eq!(v.len(), self.rank, "vector rank");
        self.reduce_mvec(MVec::from_vector(v, self.order))
            .to_vector(&self.ring, self.rank)
    }

    pub fn contains(&self, v: &[Polynomial<C>]) -> bool {
        self.reduce_mvec(MVec::from_vector(v, self.order)).is_zero()
    }

    /// Normal form of a polynomial modulo an ideal basis.
    pub fn reduce_poly(&self, p: &Polynomial<C>) -> Polynomial<C> {
        assert_eq!(self.rank, 1);
        self.normal_form(std::slice::from_ref(p)).pop().unwrap()
    }

    /// Whether the two bases describe the same elements in the same order.
    pub fn same_as(&self, other: &Self) -> bool {
        self.rank == other.rank && self.elems == other.elems
    }
}
