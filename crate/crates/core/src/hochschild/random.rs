use rand::Rng;

use super::{Arrow, HochschildChain, MatCategory};
use crate::poly::{Monomial, PolyMatrix, Polynomial, Ring};
use crate::scalar::Field;

/// Random polynomial with small integer coefficients and bounded degree.
pub fn random_poly<C: Field, R: Rng>(ring: &Ring, rng: &mut R, max_deg: u32, max_terms: usize) -> Polynomial<C> {
    let n = ring.nvars();
    let mut p = Polynomial::zero(ring);
    for _ in 0..rng.gen_range(0..=max_terms) {
        let mut exps = vec![0u32; n];
        let mut budget = rng.gen_range(0..=max_deg);
        while budget > 0 && n > 0 {
            exps[rng.gen_range(0..n)] += 1;
            budget -= 1;
        }
        let c = rng.gen_range(-3i64..=3);
        p.add_term(Monomial::from_exponents(exps), C::from_i64(c));
    }
    p
}

/// Random homogeneous arrow src → tgt of the given parity.
pub fn random_arrow<C: Field, R: Rng>(
    cat: &MatCategory<C>,
    rng: &mut R,
    src: usize,
    tgt: usize,
    odd: bool,
    max_deg: u32,
) -> Arrow<C> {
    let (ro, co) = if cat.is_opposite() { (src, tgt) } else { (tgt, src) };
    let rp = cat.object(ro).parities.clone();
    let cp = cat.object(co).parities.clone();
    let ring = cat.ring().clone();
    let matrix = PolyMatrix::from_fn(&ring, rp.len(), cp.len(), |i, j| {
        if rp[i] ^ cp[j] == odd {
            random_poly(&ring, rng, max_deg, 2)
        } else {
            Polynomial::zero(&ring)
        }
    });
    Arrow { src, tgt, odd, matrix }
}

/// Random cyclic word of bar length `len` with random objects and parities.
pub fn random_word<C: Field, R: Rng>(cat: &MatCategory<C>, rng: &mut R, len: usize, max_deg: u32) -> Vec<Arrow<C>> {
    let k = cat.objects().len();
    let objs: Vec<usize> = (0..=len).map(|_| rng.gen_range(0..k)).collect();
    // letter i maps objs[i+1] → objs[i], the last one wraps to objs[0]
    (0..=len)
        .map(|i| {
            let src = objs[(i + 1) % (len + 1)];
            let odd = rng.gen_bool(0.5);
            random_arrow(cat, rng, src, objs[i], odd, max_deg)
        })
        .collect()
}

pub fn random_chain<C: Field, R: Rng>(cat: &MatCategory<C>, rng: &mut R, max_len: usize, terms: usize, max_deg: u32) -> HochschildChain<C> {
    let mut out = HochschildChain::zero();
    for _ in 0..terms {
        let len = rng.gen_range(0..=max_len);
        let w = random_word(cat, rng, len, max_deg);
        out.push(C::from_i64(rng.gen_range(1..=3)), w);
    }
    out
}
