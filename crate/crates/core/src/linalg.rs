//! Exact sparse Gaussian elimination, used by the brute-force oracles.

use std::collections::HashMap;

use crate::scalar::Field;

/// Sparse row: (column, nonzero value), sorted by column.
pub type SparseRow<C> = Vec<(usize, C)>;

fn axpy<C: Field>(row: &SparseRow<C>, pivot: &SparseRow<C>, factor: &C) -> SparseRow<C> {
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < pivot.len() {
        let take_row = j == pivot.len() || (i < row.len() && row[i].0 < pivot[j].0);
        let take_piv = i == row.len() || (j < pivot.len() && pivot[j].0 < row[i].0);
        if take_row {
            out.push(row[i].clone());
            i += 1;
        } else if take_piv {
            out.push((pivot[j].0, -(pivot[j].1.clone() * factor.clone())));
            j += 1;
        } else {
            let v = row[i].1.clone() - pivot[j].1.clone() * factor.clone();
            if !v.is_zero() {
                out.push((row[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Reduce `v` by echelon rows (each with leading entry 1 and an expression
/// in some basis); returns the remainder and v − remainder in that basis.
pub fn reduce_against<C: Field>(
    v: &SparseRow<C>,
    echelon: &[(SparseRow<C>, Vec<(usize, C)>)],
) -> (SparseRow<C>, Vec<(usize, C)>) {
    let mut r = v.clone();
    let mut combo: HashMap<usize, C> = HashMap::new();
    loop {
        let mut changed = false;
        for (row, expr) in echelon {
            let lead = row[0].0;
            let Ok(pos) = r.binary_search_by_key(&lead, |e| e.0) else { continue };
            let factor = r[pos].1.clone();
            r = axpy(&r, row, &factor);
            for (b, c) in expr {
                let e = combo.entry(*b).or_insert_with(C::zero);
                *e = e.clone() + c.clone() * factor.clone();
            }
            changed = true;
        }
        if !changed {
            break;
        }
    }
    let mut combo: Vec<(usize, C)> = combo.into_iter().filter(|(_, c)| !c.is_zero()).collect();
    combo.sort_by_key(|e| e.0);
    (r, combo)
}

/// Rank of the matrix with the given rows.
pub fn rank<C: Field>(mut rows: Vec<SparseRow<C>>) -> usize {
    rows.retain(|r| !r.is_empty());
    rows.sort_by_key(|r| r.len());
    let mut pivots: HashMap<usize, SparseRow<C>> = HashMap::new();
    for mut r in rows {
        while let Some((lead, val)) = r.first().cloned() {
            match pivots.get(&lead) {
                Some(p) => r = axpy(&r, p, &val),
                None => {
                    let inv = val.inv();
                    for e in r.iter_mut() {
                        e.1 = e.1.clone() * inv.clone();
                    }
                    pivots.insert(lead, r);
                    break;
                }
            }
        }
    }
    pivots.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn small_ranks() {
        let rows = vec![
            vec![(0, q(1)), (1, q(2))],
            vec![(0, q(2)), (1, q(4))],
            vec![(2, q(1))],
        ];
        assert_eq!(rank(rows), 2);
        assert_eq!(rank::<Rational>(vec![]), 0);
        let id: Vec<SparseRow<Rational>> = (0..5).map(|i| vec![(i, q(3))]).collect();
        assert_eq!(rank(id), 5);
    }
}
