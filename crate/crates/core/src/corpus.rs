//! Built-in factorizations and the Hirzebruch–Riemann–Roch comparison
//! χ(X, Y) = (−1)^{n(n−1)/2}⟨ch X, ch Y⟩ computed by independent engines.

use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::forms::chern;
use crate::homology::{euler_chi, stabilized_oracle, theta, z2_homology_dims, HomologyDims};
use crate::mf::MatrixFactorization;
use crate::poly::{parse_poly, PolyMatrix, Ring};
use crate::residue::residue_pairing;
use crate::{Poly, Rational};

type Mf = MatrixFactorization<Rational>;

#[derive(Clone, Debug)]
pub struct NamedMf {
    pub name: String,
    pub mf: Mf,
}

/// Value pinned by an independent computation.
#[derive(Clone, Debug, Serialize)]
pub struct Expected {
    pub x: String,
    pub y: String,
    pub chi: Option<i64>,
    pub pairing: Option<String>,
    pub provenance: &'static str,
}

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: String,
    pub ring: Ring,
    pub f: Poly,
    pub mfs: Vec<NamedMf>,
    pub expected: Vec<Expected>,
}

impl CorpusEntry {
    /// All ordered pairs of factorizations.
    pub fn pairs(&self) -> Vec<(&NamedMf, &NamedMf)> {
        self.mfs
            .iter()
            .flat_map(|x| self.mfs.iter().map(move |y| (x, y)))
            .collect()
    }
}

fn rows(ring: &Ring, rows: &[&[&str]]) -> PolyMatrix<Rational> {
    let parsed = rows
        .iter()
        .map(|r| r.iter().map(|s| parse_poly(s, ring).expect("corpus polynomial")).collect())
        .collect();
    PolyMatrix::from_rows(ring, parsed).expect("corpus matrix")
}

fn named(name: &str, mf: Mf) -> NamedMf {
    NamedMf {
        name: name.to_string(),
        mf,
    }
}

fn koszul(ring: &Ring, xs: &[&str], ys: &[&str]) -> Mf {
    let p = |s: &&str| parse_poly(s, ring).expect("corpus polynomial");
    let xs: Vec<Poly> = xs.iter().map(p).collect();
    let ys: Vec<Poly> = ys.iter().map(p).collect();
    MatrixFactorization::koszul(&xs, &ys).expect("corpus Koszul factorization")
}

/// N(D(X)), again a factorization of f.
fn nd(x: &Mf) -> Mf {
    x.dual().n_twist()
}

pub fn builtin_corpus() -> Vec<CorpusEntry> {
    let xy = Ring::new(&["x", "y"]);
    let p = |s: &str| parse_poly(s, &xy).expect("corpus polynomial");
    let mut out = Vec::new();

    let x = MatrixFactorization::new(rows(&xy, &[&["x"]]), rows(&xy, &[&["y"]]), p("x*y")).unwrap();
    out.push(CorpusEntry {
        name: "xy".into(),
        ring: xy.clone(),
        f: p("x*y"),
        mfs: vec![
            named("X", x.clone()),
            named("N(D(X))", nd(&x)),
            named("X+N(D(X))", x.direct_sum(&nd(&x)).unwrap()),
        ],
        expected: vec![Expected {
            x: "X".into(),
            y: "X".into(),
            chi: Some(1),
            pairing: Some("-1".into()),
            provenance: "homology engine and truncated oracle; transformation law with lifting [[0,1],[1,0]]",
        }],
    });

    let k = koszul(&xy, &["x", "y"], &["x", "y"]);
    out.push(CorpusEntry {
        name: "fermat2".into(),
        ring: xy.clone(),
        f: p("x^2 + y^2"),
        mfs: vec![named("K", k.clone()), named("N(D(K))", nd(&k))],
        expected: vec![],
    });

    let r = MatrixFactorization::new(
        rows(&xy, &[&["x + y"]]),
        rows(&xy, &[&["x^2 - x*y + y^2"]]),
        p("x^3 + y^3"),
    )
    .unwrap();
    let k = koszul(&xy, &["x", "y"], &["x^2", "y^2"]);
    out.push(CorpusEntry {
        name: "fermat3".into(),
        ring: xy.clone(),
        f: p("x^3 + y^3"),
        mfs: vec![
            named("R", r.clone()),
            named("K", k.clone()),
            named("R+K", r.direct_sum(&k).unwrap()),
        ],
        expected: vec![Expected {
            x: "R".into(),
            y: "R".into(),
            chi: Some(2),
            pairing: Some("-2".into()),
            provenance: "ch = 3(y - x)dx∧dy and the transformation law with lifting diag(1/3, 1/3)",
        }],
    });

    let k = koszul(&xy, &["x", "y"], &["x^3", "y^3"]);
    let k2 = koszul(&xy, &["x^2", "y^2"], &["x^2", "y^2"]);
    out.push(CorpusEntry {
        name: "fermat4".into(),
        ring: xy.clone(),
        f: p("x^4 + y^4"),
        mfs: vec![named("K", k.clone()), named("K2", k2), named("N(D(K))", nd(&k))],
        expected: vec![],
    });

    let q4 = Ring::new(&["x1", "x2", "y1", "y2"]);
    let k = koszul(&q4, &["x1", "x2"], &["y1", "y2"]);
    out.push(CorpusEntry {
        name: "quadric4".into(),
        ring: q4.clone(),
        f: parse_poly("x1*y1 + x2*y2", &q4).unwrap(),
        mfs: vec![named("K", k)],
        expected: vec![],
    });
    out
}

/// Entries whose name contains `filter`.
pub fn filtered_corpus(filter: Option<&str>) -> Vec<CorpusEntry> {
    builtin_corpus()
        .into_iter()
        .filter(|e| filter.map_or(true, |f| e.name.contains(f)))
        .collect()
}

/// (−1)^{n(n−1)/2}
pub fn hrr_sign(n: usize) -> i64 {
    if (n * (n.saturating_sub(1)) / 2) % 2 == 1 {
        -1
    } else {
        1
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct HrrCase {
    pub n: usize,
    pub chi: i64,
    /// θ(X, N(Y)), expected to equal (−1)^{n(n−1)/2}·χ(X, Y).
    pub theta: i64,
    pub theta_consistent: bool,
    pub ch_x: String,
    pub ch_y: String,
    pub pairing: String,
    pub sign: i64,
    pub verdict: bool,
}

/// Both sides of the identity for X, Y ∈ mf(Q, f).
pub fn hrr_case(x: &Mf, y: &Mf) -> Result<HrrCase> {
    let n = x.ring().nvars();
    if n % 2 == 1 {
        return Err(Error::OddDimension(n));
    }
    if x.ring() != y.ring() {
        return Err(Error::RingMismatch);
    }
    if x.potential() != y.potential() {
        return Err(Error::PotentialMismatch);
    }
    let chi = euler_chi(x, y)?;
    let th = theta(x, &y.n_twist())?;
    let (cx, cy) = (chern(x)?, chern(y)?);
    let pairing = residue_pairing(x.potential(), &cx, &cy)?;
    let sign = hrr_sign(n);
    let verdict = Rational::from_integer(chi.into()) == Rational::from_integer(sign.into()) * pairing.clone();
    Ok(HrrCase {
        n,
        chi,
        theta: th,
        theta_consistent: th == sign * chi,
        ch_x: cx.to_string(),
        ch_y: cy.to_string(),
        pairing: pairing.to_string(),
        sign,
        verdict,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct CaseReport {
    pub entry: String,
    pub f: String,
    pub x: String,
    pub y: String,
    #[serde(flatten)]
    pub result: HrrCase,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected_ok: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub millis: Option<u128>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CorpusReport {
    pub cases: Vec<CaseReport>,
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

impl CorpusReport {
    pub fn all_hold(&self) -> bool {
        self.failed == 0
    }
}

fn check_expected(entry: &CorpusEntry, x: &str, y: &str, case: &HrrCase) -> Option<bool> {
    let e = entry.expected.iter().find(|e| e.x == x && e.y == y)?;
    Some(e.chi.map_or(true, |c| c == case.chi) && e.pairing.as_ref().map_or(true, |p| *p == case.pairing))
}

/// Evaluate every ordered pair of every entry, in parallel; the report is
/// ordered by (entry, X, Y).
pub fn run_corpus(entries: &[CorpusEntry], timings: bool) -> Result<CorpusReport> {
    let jobs: Vec<(&CorpusEntry, &NamedMf, &NamedMf)> = entries
        .iter()
        .flat_map(|e| e.pairs().into_iter().map(move |(x, y)| (e, x, y)))
        .collect();
    let mut cases = jobs
        .par_iter()
        .map(|(e, x, y)| {
            let start = Instant::now();
            let result = hrr_case(&x.mf, &y.mf)?;
            Ok(CaseReport {
                entry: e.name.clone(),
                f: e.f.to_string(),
                x: x.name.clone(),
                y: y.name.clone(),
                expected_ok: check_expected(e, &x.name, &y.name, &result),
                result,
                millis: timings.then(|| start.elapsed().as_millis()),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    cases.sort_by(|a, b| (&a.entry, &a.x, &a.y).cmp(&(&b.entry, &b.x, &b.y)));
    let passed = cases
        .iter()
        .filter(|c| c.result.verdict && c.expected_ok != Some(false))
        .count();
    Ok(CorpusReport {
        total: cases.len(),
        failed: cases.len() - passed,
        passed,
        cases,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleCheck {
    pub entry: String,
    pub complex: String,
    pub engine: HomologyDims,
    pub oracle: Option<HomologyDims>,
    pub stabilized_at: Option<u32>,
    pub agree: bool,
}

/// Compare the Gröbner homology with the truncated oracle on the Hom
/// complexes and the tensor complexes X ⊗ N(Y) of an entry.
pub fn oracle_checks(entry: &CorpusEntry, max_n: u32) -> Result<Vec<OracleCheck>> {
    let mut jobs = Vec::new();
    for (x, y) in entry.pairs() {
        jobs.push((format!("Hom({}, {})", x.name, y.name), x.mf.hom_complex(&y.mf)?));
        jobs.push((format!("{} ⊗ N({})", x.name, y.name), x.mf.tensor(&y.mf.n_twist())?));
    }
    jobs.par_iter()
        .map(|(label, c)| {
            let engine = z2_homology_dims(c)?;
            let oracle = stabilized_oracle(c, max_n);
            Ok(OracleCheck {
                entry: entry.name.clone(),
                complex: label.clone(),
                engine,
                oracle: oracle.map(|o| o.0),
                stabilized_at: oracle.map(|o| o.1),
                agree: oracle.map_or(false, |o| o.0 == engine),
            })
        })
        .collect()
}
