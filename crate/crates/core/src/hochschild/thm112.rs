use serde::Serialize;

use super::chain::HochschildChain;
use super::{hochschild_b, shuffle_star, trace_hh0, Arrow, MatCategory};
use crate::error::Result;
use crate::forms::{delta_prime, hkr_epsilon, DiffForm, FormMatrix};
use crate::poly::{PolyMatrix, Polynomial, Ring};
use crate::residue::{cech_1var_reduce, Cech1Var, LaurentDx};
use crate::scalar::factorial;
use crate::{Poly, Rational};

/// End(K) for the Koszul factorization of x over k[x] with zero potential,
/// together with the generators e, e* of the exterior algebra Λ.
#[derive(Clone, Debug)]
pub struct OneVarModel {
    pub cat: MatCategory<Rational>,
    pub e: Arrow<Rational>,
    pub e_star: Arrow<Rational>,
}

fn elementary(ring: &Ring, i: usize, j: usize, p: Poly) -> PolyMatrix<Rational> {
    let mut m = PolyMatrix::zeros(ring, 2, 2);
    m.set(i, j, p);
    m
}

fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

impl OneVarModel {
    pub fn new() -> Self {
        let ring = Ring::new(&["x"]);
        let x = Polynomial::var(&ring, 0);
        let one = Polynomial::one(&ring);
        let mut cat = MatCategory::new(&ring, Polynomial::zero(&ring));
        cat.add_object("K", vec![false, true], elementary(&ring, 0, 1, x))
            .expect("odd differential");
        let e = Arrow {
            src: 0,
            tgt: 0,
            odd: true,
            matrix: elementary(&ring, 1, 0, one.clone()),
        };
        let e_star = Arrow {
            src: 0,
            tgt: 0,
            odd: true,
            matrix: elementary(&ring, 0, 1, one),
        };
        OneVarModel { cat, e, e_star }
    }

    fn word(&self, head: &Arrow<Rational>, j: usize) -> HochschildChain<Rational> {
        let mut w = vec![head.clone()];
        w.extend(std::iter::repeat(self.e_star.clone()).take(j));
        HochschildChain::word(q(1), w).expect("endomorphism words compose")
    }

    /// y^{(j)} = id[e*|⋯|e*]
    pub fn y(&self, j: usize) -> HochschildChain<Rational> {
        self.word(&self.cat.identity(0), j)
    }

    /// ω_j = e[e*|⋯|e*]
    pub fn omega(&self, j: usize) -> HochschildChain<Rational> {
        self.word(&self.e, j)
    }

    fn x_times(&self, c: &HochschildChain<Rational>) -> HochschildChain<Rational> {
        let x = self.cat.scalar(&Polynomial::var(self.cat.ring(), 0));
        let mut out = HochschildChain::zero();
        for (k, w) in &c.terms {
            let mut w = w.clone();
            w[0] = self.cat.compose(&x, &w[0]).expect("scalar");
            out.push(k.clone(), w);
        }
        out
    }

    /// ε(y^j) in the Čech model, via the cocycle
    /// η_j = y^j + j!·α·Σ_k x^{−(k+1)} ω_{j−k}.
    pub fn epsilon_y(&self, j: usize) -> Result<Cech1Var<Rational>> {
        let coeff = |w: &DiffForm<Rational>| w.coefficient(1);
        let mut acc = LaurentDx::from_poly(&coeff(&hkr_epsilon(&self.cat, &self.y(j))?));
        let jf: Rational = factorial(j);
        for k in 0..=j {
            let w = hkr_epsilon(&self.cat, &self.omega(j - k))?;
            acc = acc.add(&LaurentDx::from_poly(&coeff(&w)).shift(-(k as i64 + 1), &jf));
        }
        Ok(cech_1var_reduce(&acc))
    }
}

impl Default for OneVarModel {
    fn default() -> Self {
        Self::new()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Thm112Row {
    pub j: usize,
    pub epsilon: String,
    pub expected: String,
    pub trace: String,
    pub residue: String,
    pub y_is_cycle: bool,
    pub b_omega_ok: bool,
    pub star_power_ok: bool,
    pub epsilon_ok: bool,
    pub trace_ok: bool,
    pub residue_ok: bool,
}

impl Thm112Row {
    pub fn passed(&self) -> bool {
        self.y_is_cycle && self.b_omega_ok && self.star_power_ok && self.epsilon_ok && self.trace_ok && self.residue_ok
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Thm112Report {
    pub j_max: usize,
    pub str_e_estar: String,
    pub str_e_estar_ok: bool,
    pub d_k_prime_ok: bool,
    pub epsilon_omega_ok: bool,
    pub rows: Vec<Thm112Row>,
    pub first_failure: Option<usize>,
    pub passed: bool,
}

/// Check, for j ≤ j_max, ε(y^j) = −j!·α/x^{j+1} ⊗ dx, the traces of y^j and
/// res ∘ ε = −trace in the one-variable model.
pub fn thm112_verify(j_max: usize) -> Result<Thm112Report> {
    let m = OneVarModel::new();
    let cat = &m.cat;
    let ring = cat.ring().clone();
    let dx = DiffForm::dx(&ring, 0);

    let ee = cat.compose(&m.e, &m.e_star)?;
    let str_ee = FormMatrix::from_poly_matrix(&ee.matrix, &[false, true], &[false, true])
        .supertrace()?
        .coefficient(0);
    let str_ok = str_ee == Polynomial::constant(&ring, q(-1));

    let mut want_dk = FormMatrix::zeros(&ring, &[false, true], &[false, true]);
    want_dk.set(0, 1, dx.scale(&q(-1)));
    let d_k_prime_ok = delta_prime(cat, 0) == want_dk;

    let mut eps_omega_ok = hkr_epsilon(cat, &m.omega(0))? == dx.scale(&q(-1));
    for j in 1..=j_max.max(1) {
        eps_omega_ok &= hkr_epsilon(cat, &m.omega(j))?.is_zero();
    }

    let lambda = [m.e.clone(), m.e_star.clone()];
    let star_gen = HochschildChain::word(q(1), vec![cat.identity(0), m.e_star.clone()])?;
    let mut power = m.y(0);
    let mut rows = Vec::new();
    for j in 0..=j_max {
        if j > 0 {
            power = shuffle_star(cat, &power, &star_gen)?;
        }
        let jf: Rational = factorial(j);
        let star_power_ok = power.equals(&m.y(j).scale(&jf));
        let y_is_cycle = hochschild_b(cat, &m.y(j))?.is_zero();
        let mut want_b = m.x_times(&m.y(j));
        if j > 0 {
            want_b = want_b.sub(&m.y(j - 1));
        }
        let b_omega_ok = hochschild_b(cat, &m.omega(j))?.equals(&want_b);

        let eps = m.epsilon_y(j)?;
        let expected = Cech1Var::pole(j as u32 + 1, -jf.clone());
        let trace = trace_hh0(cat, &m.y(j), &lambda)?;
        let want_trace = if j == 0 { q(1) } else { q(0) };
        let residue = eps.residue();
        rows.push(Thm112Row {
            j,
            epsilon: eps.to_string(),
            expected: expected.to_string(),
            trace: trace.to_string(),
            residue: residue.to_string(),
            y_is_cycle,
            b_omega_ok,
            star_power_ok,
            epsilon_ok: eps == expected,
            trace_ok: trace == want_trace,
            residue_ok: residue == -trace,
        });
    }
    let first_failure = rows.iter().find(|r| !r.passed()).map(|r| r.j);
    let passed = str_ok && d_k_prime_ok && eps_omega_ok && first_failure.is_none();
    Ok(Thm112Report {
        j_max,
        str_e_estar: str_ee.to_string(),
        str_e_estar_ok: str_ok,
        d_k_prime_ok,
        epsilon_omega_ok: eps_omega_ok,
        rows,
        first_failure,
        passed,
    })
}
