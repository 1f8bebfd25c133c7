use crate::bitset::{ElemSet, MAX_ORDER};
use crate::brace::{validate_brace, FiniteBrace};
use crate::error::{Error, Result};
use crate::substructure::classify;

/// The brace with `a + b = ab`.
pub fn trivial_brace(group_table: &[Vec<usize>]) -> Result<FiniteBrace> {
    validate_brace(group_table.len(), group_table, group_table, None)
}

/// Componentwise operations, `(i, j) ↦ i·n₂ + j`.
pub fn direct_product(b1: &FiniteBrace, b2: &FiniteBrace) -> Result<FiniteBrace> {
    let (n1, n2) = (b1.order(), b2.order());
    let n = n1 * n2;
    if n > MAX_ORDER {
        return Err(Error::OrderTooLarge {
            order: n,
            bound: MAX_ORDER,
        });
    }
    let mut add = vec![0u8; n * n];
    let mut mul = vec![0u8; n * n];
    for a in 0..n {
        let (a1, a2) = (a / n2, a % n2);
        for b in 0..n {
            let (c1, c2) = (b / n2, b % n2);
            add[a * n + b] = (b1.add(a1, c1) * n2 + b2.add(a2, c2)) as u8;
            mul[a * n + b] = (b1.mul(a1, c1) * n2 + b2.mul(a2, c2)) as u8;
        }
    }
    let name = match (b1.name(), b2.name()) {
        (Some(x), Some(y)) => Some(format!("{x} x {y}")),
        _ => None,
    };
    FiniteBrace::from_flat(n, add, mul, name)
}

/// `B/I` on cosets `b + I`, each represented by its smallest element and
/// numbered in increasing order of representatives; returns the quotient and
/// the projection table.
pub fn quotient(b: &FiniteBrace, ideal: ElemSet) -> Result<(FiniteBrace, Vec<usize>)> {
    if !classify(b, ideal).flags.ideal {
        return Err(Error::NotAnIdeal);
    }
    let n = b.order();
    let mut proj = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for x in 0..n {
        if proj[x] != usize::MAX {
            continue;
        }
        let k = reps.len();
        reps.push(x);
        for i in ideal {
            proj[b.add(x, i)] = k;
        }
    }
    let m = reps.len();
    let mut add = vec![0u8; m * m];
    let mut mul = vec![0u8; m * m];
    for (p, &x) in reps.iter().enumerate() {
        for (q, &y) in reps.iter().enumerate() {
            add[p * m + q] = proj[b.add(x, y)] as u8;
            mul[p * m + q] = proj[b.mul(x, y)] as u8;
        }
    }
    let q = FiniteBrace::from_flat(m, add, mul, None)?;
    Ok((q, proj))
}
