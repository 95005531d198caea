use mfhrr::forms::{DiffForm, FormMatrix, MilnorAlgebra};
use mfhrr::groebner::{lift, GroebnerBasis};
use mfhrr::poly::{parse_poly, Monomial, Ring};
use mfhrr::residue::{res_general, residue_pairing};
use mfhrr::{Poly, Rational};
use proptest::prelude::*;

fn ring(n: usize) -> Ring {
    let names: Vec<String> = (0..n).map(|i| format!("x{}", i + 1)).collect();
    Ring::new(&names)
}

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn poly_strategy(n: usize, max_deg: u32, max_terms: usize) -> impl Strategy<Value = Poly> {
    let term = (prop::collection::vec(0..=max_deg, n), -5i64..=5, 1i64..=3);
    prop::collection::vec(term, 0..=max_terms).prop_map(move |terms| {
        let r = ring(n);
        Poly::from_terms(
            &r,
            terms
                .into_iter()
                .map(|(e, a, b)| (Monomial::from_exponents(e), q(a, b))),
        )
    })
}

/// A form on `n` variables with random components.
fn form_strategy(n: usize) -> impl Strategy<Value = DiffForm<Rational>> {
    prop::collection::vec((0u32..(1 << n), poly_strategy(n, 2, 2)), 0..=3).prop_map(move |parts| {
        let mut w = DiffForm::zero(&ring(n));
        for (mask, p) in parts {
            w.add_component(mask, p);
        }
        w
    })
}

fn homogeneous_form(n: usize, odd: bool) -> impl Strategy<Value = DiffForm<Rational>> {
    form_strategy(n).prop_map(move |w| {
        let mut out = DiffForm::zero(w.ring());
        for (mask, p) in w.components() {
            if (mask.count_ones() % 2 == 1) == odd {
                out.add_component(mask, p.clone());
            }
        }
        out
    })
}

/// A homogeneous form matrix on rows of parities `par` with total parity `odd`.
fn form_matrix(par: Vec<bool>, odd: bool) -> impl Strategy<Value = FormMatrix<Rational>> {
    let k = par.len();
    let even = prop::collection::vec(homogeneous_form(2, false), k * k);
    let oddf = prop::collection::vec(homogeneous_form(2, true), k * k);
    (even, oddf).prop_map(move |(ev, od)| {
        let mut m = FormMatrix::zeros(&ring(2), &par, &par);
        for i in 0..k {
            for j in 0..k {
                let entry_odd = odd ^ par[i] ^ par[j];
                m.set(i, j, if entry_odd { od[i * k + j].clone() } else { ev[i * k + j].clone() });
            }
        }
        m
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in poly_strategy(3, 3, 4), b in poly_strategy(3, 3, 4), c in poly_strategy(3, 3, 4)) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &Poly::one(a.ring()), a.clone());
    }

    #[test]
    fn derivative_is_a_derivation(a in poly_strategy(3, 3, 4), b in poly_strategy(3, 3, 4), i in 0usize..3) {
        let lhs = (&a * &b).partial_derivative(i);
        let rhs = &(&a.partial_derivative(i) * &b) + &(&a * &b.partial_derivative(i));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn parse_render_round_trip(a in poly_strategy(3, 4, 6)) {
        let text = a.to_string();
        prop_assert_eq!(parse_poly(&text, a.ring()).unwrap(), a);
    }

    #[test]
    fn normal_forms_and_lifts(
        g1 in poly_strategy(2, 2, 3),
        g2 in poly_strategy(2, 2, 3),
        c1 in poly_strategy(2, 2, 3),
        c2 in poly_strategy(2, 2, 3),
        p in poly_strategy(2, 3, 4),
    ) {
        let r = ring(2);
        let gens = [g1, g2];
        let gb = GroebnerBasis::ideal(&r, &gens);
        let member = &(&c1 * &gens[0]) + &(&c2 * &gens[1]);
        prop_assert!(gb.reduce_poly(&member).is_zero());
        let vgens: Vec<Vec<Poly>> = gens.iter().map(|g| vec![g.clone()]).collect();
        let c = lift(&r, std::slice::from_ref(&member), &vgens).unwrap();
        prop_assert_eq!(&(&c[0] * &gens[0]) + &(&c[1] * &gens[1]), member);
        // p − NF(p) lies in the ideal, and NF is idempotent
        let nf = gb.reduce_poly(&p);
        prop_assert_eq!(gb.reduce_poly(&nf), nf.clone());
        prop_assert!(gb.reduce_poly(&(&p - &nf)).is_zero());
    }

    #[test]
    fn de_rham_squares_to_zero(w in form_strategy(3)) {
        prop_assert!(w.de_rham().de_rham().is_zero());
    }

    #[test]
    fn wedge_is_graded_commutative(a in homogeneous_form(3, true), b in homogeneous_form(3, true), c in homogeneous_form(3, false)) {
        prop_assert_eq!(a.wedge(&b), b.wedge(&a).scale(&q(-1, 1)));
        prop_assert_eq!(a.wedge(&c), c.wedge(&a));
        prop_assert!(a.wedge(&a).is_zero());
    }

    #[test]
    fn leibniz_for_d(a in homogeneous_form(3, true), b in form_strategy(3), c in homogeneous_form(3, false)) {
        let lhs = a.wedge(&b).de_rham();
        let rhs = a.de_rham().wedge(&b).sub(&a.wedge(&b.de_rham()));
        prop_assert_eq!(lhs, rhs);
        let lhs = c.wedge(&b).de_rham();
        let rhs = c.de_rham().wedge(&b).add(&c.wedge(&b.de_rham()));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn supertrace_is_graded_symmetric(
        (m, n, sign) in (any::<bool>(), any::<bool>()).prop_flat_map(|(om, on)| {
            let par = vec![false, false, true];
            (form_matrix(par.clone(), om), form_matrix(par, on), Just(if om && on { -1 } else { 1 }))
        })
    ) {
        let mn = m.mul_graded(&n).unwrap().supertrace().unwrap();
        let nm = n.mul_graded(&m).unwrap().supertrace().unwrap();
        prop_assert_eq!(mn, nm.scale(&q(sign, 1)));
    }

    #[test]
    fn residue_pairing_is_symmetric_and_bilinear(
        g1 in poly_strategy(2, 3, 3),
        g2 in poly_strategy(2, 3, 3),
        h in poly_strategy(2, 3, 3),
        a in -4i64..=4,
        which in 0usize..3,
    ) {
        let r = ring(2);
        let f = parse_poly(["x1^3 + x2^3", "x1^2*x2 + x2^4", "x1^3 + x1*x2^2"][which], &r).unwrap();
        let milnor = MilnorAlgebra::new(&f).unwrap();
        let pair = |u: &Poly, v: &Poly| residue_pairing(&f, &milnor.class(u), &milnor.class(v)).unwrap();
        let combo = &g1.scale(&q(a, 1)) + &g2;
        prop_assert_eq!(pair(&combo, &h), q(a, 1) * pair(&g1, &h) + pair(&g2, &h));
        prop_assert_eq!(pair(&g1, &h), pair(&h, &g1));
    }

    #[test]
    fn residues_kill_the_ideal(h in poly_strategy(2, 3, 3), k in 0usize..2) {
        let r = ring(2);
        let dens = [parse_poly("x1^2 + x2^3", &r).unwrap(), parse_poly("x2^2", &r).unwrap()];
        prop_assert_eq!(res_general(&(&dens[k] * &h), &dens).unwrap(), q(0, 1));
    }
}
