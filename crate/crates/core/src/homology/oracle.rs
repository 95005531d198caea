//! Brute-force homology by finite linear algebra, independent of the
//! Gröbner machinery. Used to cross-check [`super::z2_homology_dims`].

use std::collections::HashMap;

use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::HomologyDims;
use crate::linalg::{rank, SparseRow};
use crate::mf::Z2FreeComplex;
use crate::poly::{Monomial, PolyMatrix};
use crate::scalar::Field;
use crate::Rational;

/// Homology of C ⊗ Q/m^N, computed so that it converges to the true
/// homology as N grows.
///
/// When the differential is homogeneous for some choice of basis shifts the
/// complex splits by internal degree and each degree is handled exactly,
/// keeping only the degrees whose monomials stay below N. Otherwise the
/// image of the cycles in P/m^N is approximated by cycles modulo m^{2N}.
pub fn truncated_oracle<C: Field>(c: &Z2FreeComplex<C>, n: u32) -> HomologyDims {
    if c.rank() == 0 {
        return HomologyDims { h0: 0, h1: 0 };
    }
    match grading(c) {
        Some(g) => graded(c, &g, n),
        None => ungraded(c, n),
    }
}

/// Double N from 8 until two consecutive answers agree.
pub fn stabilized_oracle<C: Field>(c: &Z2FreeComplex<C>, max_n: u32) -> Option<(HomologyDims, u32)> {
    let mut n = 8;
    let mut prev = truncated_oracle(c, n);
    while n * 2 <= max_n {
        n *= 2;
        let next = truncated_oracle(c, n);
        if next == prev {
            return Some((next, n));
        }
        prev = next;
    }
    None
}

struct Grading {
    // all scaled by a common denominator so they are integers
    weight: i64,
    shift: Vec<i64>,
    step: i64,
}

/// Solve s_i − s_j + c = deg δ_ij over ℚ for every nonzero homogeneous entry.
fn grading<C: Field>(c: &Z2FreeComplex<C>) -> Option<Grading> {
    let delta = c.delta();
    let p = delta.rows();
    let mut eqs: Vec<Vec<Rational>> = Vec::new();
    for i in 0..p {
        for j in 0..p {
            let e = delta.get(i, j);
            if e.is_zero() {
                continue;
            }
            let degs: Vec<u32> = e.terms().map(|(m, _)| m.degree()).collect();
            if degs.iter().any(|&d| d != degs[0]) {
                return None;
            }
            let mut row = vec![Rational::zero(); p + 2];
            row[i] = row[i].clone() + Rational::one();
            row[j] = row[j].clone() - Rational::one();
            row[p] = Rational::one();
            row[p + 1] = Rational::from_integer(degs[0].into());
            eqs.push(row);
        }
    }
    let sol = solve(eqs, p + 1)?;
    let den = sol
        .iter()
        .fold(num_bigint::BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let scaled: Vec<i64> = sol
        .iter()
        .map(|v| (v * Rational::from_integer(den.clone())).to_integer().to_i64())
        .collect::<Option<Vec<i64>>>()?;
    let weight = den.to_i64()?;
    Some(Grading {
        weight,
        shift: scaled[..p].to_vec(),
        step: scaled[p],
    })
}

/// Any solution of the affine system (last column is the right-hand side),
/// free variables set to zero.
fn solve(mut eqs: Vec<Vec<Rational>>, nvars: usize) -> Option<Vec<Rational>> {
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for col in 0..nvars {
        let Some(k) = (r..eqs.len()).find(|&k| !eqs[k][col].is_zero()) else {
            continue;
        };
        eqs.swap(r, k);
        let inv = Rational::one() / eqs[r][col].clone();
        for v in eqs[r].iter_mut() {
            *v = v.clone() * inv.clone();
        }
        for k in 0..eqs.len() {
            if k != r && !eqs[k][col].is_zero() {
                let f = eqs[k][col].clone();
                for c in 0..=nvars {
                    let v = eqs[r][c].clone() * f.clone();
                    eqs[k][c] = eqs[k][c].clone() - v;
                }
            }
        }
        pivot_cols.push(col);
        r += 1;
    }
    if eqs[r..].iter().any(|row| !row[nvars].is_zero()) {
        return None;
    }
    let mut sol = vec![Rational::zero(); nvars];
    for (k, &col) in pivot_cols.iter().enumerate() {
        sol[col] = eqs[k][nvars].clone();
    }
    Some(sol)
}

fn monomials_of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
    fn go(n: usize, k: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if k + 1 == n {
            cur[k] = left;
            out.push(Monomial::from_exponents(cur.clone()));
            return;
        }
        for e in (0..=left).rev() {
            cur[k] = e;
            go(n, k + 1, left - e, cur, out);
        }
    }
    let mut out = Vec::new();
    if nvars == 0 {
        if d == 0 {
            out.push(Monomial::one(0));
        }
        return out;
    }
    go(nvars, 0, d, &mut vec![0; nvars], &mut out);
    out
}

/// Basis of the degree-e part of ⊕_{j∈cols} Q·b_j where q·b_j has degree
/// weight·deg(q) − shift_j.
fn graded_piece(g: &Grading, nvars: usize, cols: &[usize], e: i64) -> Vec<(usize, Monomial)> {
    let mut out = Vec::new();
    for &j in cols {
        let t = e + g.shift[j];
        if t < 0 || t % g.weight != 0 {
            continue;
        }
        for m in monomials_of_degree(nvars, (t / g.weight) as u32) {
            out.push((j, m));
        }
    }
    out
}

/// Rank of the restriction of `delta` from `src` into the span of `tgt`.
fn map_rank<C: Field>(
    delta: &PolyMatrix<C>,
    src: &[(usize, Monomial)],
    tgt: &[(usize, Monomial)],
    keep: impl Fn(usize, &Monomial) -> bool,
) -> usize {
    let index: HashMap<(usize, &Monomial), usize> =
        tgt.iter().enumerate().map(|(k, (j, m))| ((*j, m), k)).collect();
    let rows: Vec<SparseRow<C>> = src
        .iter()
        .map(|(j, m)| {
            let mut row: Vec<(usize, C)> = Vec::new();
            for i in 0..delta.rows() {
                for (mono, coeff) in delta.get(i, *j).terms() {
                    let prod = mono.mul(m);
                    if !keep(i, &prod) {
                        continue;
                    }
                    if let Some(&k) = index.get(&(i, &prod)) {
                        row.push((k, coeff.clone()));
                    }
                }
            }
            row.sort_by_key(|e| e.0);
            // merge duplicates (cannot occur for distinct (i, mono), kept for safety)
            let mut merged: Vec<(usize, C)> = Vec::with_capacity(row.len());
            for (k, v) in row {
                match merged.last_mut() {
                    Some(last) if last.0 == k => last.1 = last.1.clone() + v,
                    _ => merged.push((k, v)),
                }
            }
            merged.retain(|e| !e.1.is_zero());
            merged
        })
        .collect();
    rank(rows)
}

fn graded<C: Field>(c: &Z2FreeComplex<C>, g: &Grading, n: u32) -> HomologyDims {
    let nvars = c.ring().nvars();
    let delta = c.delta();
    let p0 = c.p0();
    let even: Vec<usize> = (0..p0).collect();
    let odd: Vec<usize> = (p0..c.rank()).collect();
    let side = |here: &[usize], there: &[usize]| -> usize {
        // degrees e where every monomial of the piece has degree < n
        let max_shift = here.iter().map(|&j| g.shift[j]).max().unwrap_or(0);
        let lo = -max_shift;
        let hi = g.weight * n as i64 - max_shift;
        let mut total = 0usize;
        for e in lo..hi {
            let piece = graded_piece(g, nvars, here, e);
            if piece.is_empty() {
                continue;
            }
            let out = graded_piece(g, nvars, there, e + g.step);
            let inc = graded_piece(g, nvars, there, e - g.step);
            let r_out = map_rank(&delta, &piece, &out, |_, _| true);
            let r_in = map_rank(&delta, &inc, &piece, |_, _| true);
            total += piece.len() - r_out - r_in;
        }
        total
    };
    HomologyDims {
        h0: side(&even, &odd),
        h1: side(&odd, &even),
    }
}

fn below(nvars: usize, bound: u32, cols: &[usize]) -> Vec<(usize, Monomial)> {
    let mut out = Vec::new();
    for &j in cols {
        for d in 0..bound {
            for m in monomials_of_degree(nvars, d) {
                out.push((j, m));
            }
        }
    }
    out
}

fn ungraded<C: Field>(c: &Z2FreeComplex<C>, n: u32) -> HomologyDims {
    let nvars = c.ring().nvars();
    let delta = c.delta();
    let p0 = c.p0();
    let even: Vec<usize> = (0..p0).collect();
    let odd: Vec<usize> = (p0..c.rank()).collect();
    let big = 2 * n;
    let side = |here: &[usize], there: &[usize]| -> usize {
        // cycles modulo m^{2N}, projected to P/m^N, minus boundaries in P/m^N
        let v_big = below(nvars, big, here);
        let t_big = below(nvars, big, there);
        let rank_big = map_rank(&delta, &v_big, &t_big, |_, m| m.degree() < big);
        let w: Vec<(usize, Monomial)> = v_big
            .iter()
            .filter(|(_, m)| m.degree() >= n)
            .cloned()
            .collect();
        let rank_w = map_rank(&delta, &w, &t_big, |_, m| m.degree() < big);
        let cycles_mod_n = (v_big.len() - rank_big) - (w.len() - rank_w);
        let src = below(nvars, n, there);
        let tgt = below(nvars, n, here);
        let bounds = map_rank(&delta, &src, &tgt, |_, m| m.degree() < n);
        cycles_mod_n - bounds
    };
    HomologyDims {
        h0: side(&even, &odd),
        h1: side(&odd, &even),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mf::MatrixFactorization;
    use crate::poly::{parse_poly, Ring};
    use crate::{Matrix, Poly};

    fn ring() -> Ring {
        Ring::new(&["x", "y"])
    }

    fn p(s: &str) -> Poly {
        parse_poly(s, &ring()).unwrap()
    }

    #[test]
    fn koszul_complex() {
        let k = MatrixFactorization::koszul(&[p("x"), p("y")], &[p("0"), p("0")]).unwrap();
        assert_eq!(truncated_oracle(&k, 6), HomologyDims { h0: 1, h1: 0 });
        assert_eq!(ungraded(&k, 6), HomologyDims { h0: 1, h1: 0 });
    }

    #[test]
    fn hom_complex_of_xy() {
        let m = |s: &str| Matrix::from_rows(&ring(), vec![vec![p(s)]]).unwrap();
        let x = MatrixFactorization::new(m("x"), m("y"), p("x*y")).unwrap();
        let h = x.hom_complex(&x).unwrap();
        assert_eq!(truncated_oracle(&h, 8), HomologyDims { h0: 1, h1: 0 });
        assert_eq!(truncated_oracle(&h, 16), HomologyDims { h0: 1, h1: 0 });
        assert_eq!(stabilized_oracle(&h, 64).map(|r| r.0), Some(HomologyDims { h0: 1, h1: 0 }));
        let z = MatrixFactorization::zero(&ring(), p("0"));
        assert_eq!(truncated_oracle(&z, 3), HomologyDims { h0: 0, h1: 0 });
    }

    #[test]
    fn ungraded_fallback_matches() {
        // (x + y^2, y) is a regular sequence generating (x, y)
        let k = MatrixFactorization::koszul(&[p("x + y^2"), p("y")], &[p("0"), p("0")]).unwrap();
        assert!(grading(&k).is_none());
        assert_eq!(truncated_oracle(&k, 8), HomologyDims { h0: 1, h1: 0 });
    }
}
