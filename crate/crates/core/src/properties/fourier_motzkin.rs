//! Exact feasibility of `{x : A x <= b}` by Fourier–Motzkin elimination.
//!
//! Rows are kept over arbitrary-precision rationals; each elimination step
//! scales rows so the eliminated coefficient is ±1 and adds every
//! positive/negative pair. Rows are normalized by their first nonzero
//! coefficient and parallel duplicates keep only the tightest bound, which
//! keeps desk-scale systems (d <= 4, k <= 12) small.

use std::collections::HashMap;

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::hsystem::{HSet, HSystem};
use crate::rational::Rational;

struct Row {
    coeffs: Vec<BigRational>,
    bound: BigRational,
}

/// Decides nonemptiness of an H-set, eliminating variables `0..d` in order.
pub fn feasible(s: &HSet) -> bool {
    let order: Vec<usize> = (0..s.system().dim()).collect();
    feasible_with_order(s, &order)
}

/// Same as [`feasible`] with an explicit elimination order (a permutation of `0..d`).
pub fn feasible_with_order(s: &HSet, order: &[usize]) -> bool {
    feasible_offsets(s.system(), s.offsets(), order)
}

pub(crate) fn feasible_offsets(system: &HSystem, offsets: &[Rational], order: &[usize]) -> bool {
    let rows = system
        .normals()
        .iter()
        .zip(offsets)
        .map(|(n, b)| Row {
            coeffs: n.iter().map(|c| c.to_big()).collect(),
            bound: b.to_big(),
        })
        .collect();
    feasible_rows(rows, order)
}

/// Feasibility of raw `(a, b)` rows meaning `<a, x> <= b`.
pub fn feasible_system(rows: &[(Vec<BigRational>, BigRational)]) -> bool {
    let dim = rows.first().map_or(0, |(a, _)| a.len());
    let order: Vec<usize> = (0..dim).collect();
    let rows = rows
        .iter()
        .map(|(a, b)| Row {
            coeffs: a.clone(),
            bound: b.clone(),
        })
        .collect();
    feasible_rows(rows, &order)
}

fn feasible_rows(rows: Vec<Row>, order: &[usize]) -> bool {
    let mut rows = match normalize(rows) {
        Some(rows) => rows,
        None => return false,
    };
    for &var in order {
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        let mut next = Vec::new();
        for row in rows {
            let c = &row.coeffs[var];
            if c.is_positive() {
                pos.push(scale_by_abs(row, var));
            } else if c.is_negative() {
                neg.push(scale_by_abs(row, var));
            } else {
                next.push(row);
            }
        }
        for p in &pos {
            for n in &neg {
                let coeffs = p.coeffs.iter().zip(&n.coeffs).map(|(a, b)| a + b).collect();
                next.push(Row {
                    coeffs,
                    bound: &p.bound + &n.bound,
                });
            }
        }
        rows = match normalize(next) {
            Some(rows) => rows,
            None => return false,
        };
    }
    rows.iter().all(|r| !r.bound.is_negative())
}

fn scale_by_abs(row: Row, var: usize) -> Row {
    let s = row.coeffs[var].abs();
    Row {
        coeffs: row.coeffs.iter().map(|c| c / &s).collect(),
        bound: row.bound / s,
    }
}

/// Drops trivial rows, detects `0 <= negative`, and merges parallel rows.
/// Returns `None` on a contradiction.
fn normalize(rows: Vec<Row>) -> Option<Vec<Row>> {
    let mut tightest: HashMap<Vec<BigRational>, BigRational> = HashMap::new();
    let mut order = Vec::new();
    for row in rows {
        let lead = row.coeffs.iter().find(|c| !c.is_zero()).cloned();
        match lead {
            None => {
                if row.bound.is_negative() {
                    return None;
                }
            }
            Some(lead) => {
                let s = lead.abs();
                let coeffs: Vec<BigRational> = row.coeffs.iter().map(|c| c / &s).collect();
                let bound = row.bound / s;
                match tightest.get_mut(&coeffs) {
                    Some(b) => {
                        if bound < *b {
                            *b = bound;
                        }
                    }
                    None => {
                        order.push(coeffs.clone());
                        tightest.insert(coeffs, bound);
                    }
                }
            }
        }
    }
    Some(
        order
            .into_iter()
            .map(|coeffs| {
                let bound = tightest.remove(&coeffs).expect("inserted above");
                Row { coeffs, bound }
            })
            .collect(),
    )
}
