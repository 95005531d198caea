use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::hochschild::random::random_poly;
use crate::poly::parse_poly;
use crate::{Poly, Rational};

fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn qq(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn xy() -> Ring {
    Ring::new(&["x", "y"])
}

fn p(r: &Ring, s: &str) -> Poly {
    parse_poly(s, r).unwrap()
}

#[test]
fn monomial_residues() {
    let r = Ring::new(&["x"]);
    assert_eq!(res_monomial(&p(&r, "1"), &[1]), q(1));
    assert_eq!(res_monomial(&p(&r, "1"), &[2]), q(0));
    assert_eq!(res_monomial(&p(&r, "x"), &[2]), q(1));
}

#[test]
fn transformation_law_examples() {
    let r = xy();
    assert_eq!(res_general(&p(&r, "1"), &[p(&r, "x"), p(&r, "y")]).unwrap(), q(1));
    assert_eq!(res_general(&p(&r, "1"), &[p(&r, "y"), p(&r, "x")]).unwrap(), q(-1));
    assert_eq!(
        res_general(&p(&r, "x*y"), &[p(&r, "3*x^2"), p(&r, "3*y^2")]).unwrap(),
        qq(1, 9)
    );
    assert_eq!(
        res_general(&p(&r, "1"), &[p(&r, "x^2"), p(&r, "y")]),
        Ok(q(0))
    );
    assert_eq!(
        res_general(&p(&r, "1"), &[p(&r, "x*y"), p(&r, "x")]),
        Err(Error::NotZeroDimensional)
    );
}

#[test]
fn pairing_examples() {
    let r = xy();
    let one = |f: &Poly| MilnorAlgebra::new(f).unwrap().class(&p(&r, "1"));
    let f = p(&r, "x*y");
    assert_eq!(residue_pairing(&f, &one(&f), &one(&f)).unwrap(), q(-1));
    let f = p(&r, "x^2 + y^2");
    assert_eq!(residue_pairing(&f, &one(&f), &one(&f)).unwrap(), qq(1, 4));
    let f = p(&r, "x^3 + y^3");
    let w = MilnorAlgebra::new(&f).unwrap().class(&p(&r, "3*y - 3*x"));
    assert_eq!(residue_pairing(&f, &w, &w).unwrap(), q(-2));
    let f = p(&r, "x^2");
    let c = MilnorClass { f: f.clone(), rep: p(&r, "1") };
    assert_eq!(residue_pairing(&f, &c, &c), Err(Error::NotIsolated));
}

#[test]
fn residues_kill_the_ideal_and_ignore_the_padding() {
    let r = xy();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let systems = [
        vec![p(&r, "x^2 + y"), p(&r, "y^2")],
        vec![p(&r, "x + y"), p(&r, "x^2 - x*y + y^2")],
        vec![p(&r, "3*x^2"), p(&r, "3*y^2 + x")],
    ];
    for dens in &systems {
        for _ in 0..5 {
            let h: Poly = random_poly(&r, &mut rng, 3, 4);
            let i = rng.gen_range(0..2);
            assert_eq!(res_general(&(&dens[i] * &h), dens).unwrap(), q(0));
            let g: Poly = random_poly(&r, &mut rng, 4, 4);
            let base = res_general(&g, dens).unwrap();
            assert_eq!(res_general_padded(&g, dens, 1).unwrap(), base);
            assert_eq!(res_general_padded(&g, dens, 3).unwrap(), base);
        }
    }
}

#[test]
fn pure_powers_agree_with_the_monomial_rule() {
    let r = Ring::new(&["a", "b", "c"]);
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..10 {
        let a: Vec<u32> = (0..3).map(|_| rng.gen_range(1..4)).collect();
        let dens: Vec<Poly> = (0..3).map(|i| Polynomial::var(&r, i).pow(a[i])).collect();
        let g: Poly = random_poly(&r, &mut rng, 6, 6);
        assert_eq!(res_general(&g, &dens).unwrap(), res_monomial(&g, &a));
    }
}

#[test]
fn pairing_is_symmetric_and_nondegenerate() {
    let r = xy();
    for f in ["x*y", "x^2 + y^2", "x^3 + y^3", "x^4 + y^4"] {
        let f = p(&r, f);
        let gram = pairing_gram(&f).unwrap();
        let n = gram.len();
        for i in 0..n {
            for j in 0..n {
                assert_eq!(gram[i][j], gram[j][i]);
            }
        }
        let rows = gram
            .iter()
            .map(|row| row.iter().enumerate().filter(|(_, c)| **c != q(0)).map(|(j, c)| (j, c.clone())).collect())
            .collect();
        assert_eq!(crate::linalg::rank(rows), n);
    }
}

#[test]
fn kunneth_sign() {
    let rx = Ring::new(&["x"]);
    let ry = Ring::new(&["y"]);
    let fx = GeneralizedFraction::new(p(&rx, "1"), vec![(p(&rx, "x"), 1)]).unwrap();
    let fy = GeneralizedFraction::new(p(&ry, "1"), vec![(p(&ry, "y"), 1)]).unwrap();
    let (lhs, rhs) = kunneth_residue_check(&fx, &fy).unwrap();
    assert_eq!((lhs.clone(), rhs), (q(-1), q(-1)));
    let fx2 = GeneralizedFraction::new(p(&rx, "x"), vec![(p(&rx, "x"), 2)]).unwrap();
    let (lhs, rhs) = kunneth_residue_check(&fx2, &fy).unwrap();
    assert_eq!(lhs, rhs);
    let empty = GeneralizedFraction::new(Polynomial::one(&Ring::new::<&str>(&[])), vec![]).unwrap();
    let (lhs, rhs) = kunneth_residue_check(&empty, &fy).unwrap();
    assert_eq!((lhs, rhs), (q(1), q(1)));
}

#[test]
fn cech_reduction() {
    let w = LaurentDx::monomial(-1, q(1));
    assert_eq!(cech_1var_reduce(&w).singular.into_iter().collect::<Vec<_>>(), vec![(1, q(1))]);
    let w = LaurentDx::monomial(1, q(1)).add(&LaurentDx::monomial(-2, q(1)));
    assert_eq!(cech_1var_reduce(&w).singular.into_iter().collect::<Vec<_>>(), vec![(2, q(1))]);
    let w = LaurentDx::monomial(-1, q(3)).add(&LaurentDx::monomial(-3, q(2)));
    let c = cech_1var_reduce(&w);
    assert_eq!(c.singular.into_iter().collect::<Vec<_>>(), vec![(1, q(3)), (3, q(2))]);
}
