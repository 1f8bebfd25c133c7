//! Finite groups given by Cayley tables on `0..n` with identity 0.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use crate::bitset::{sort_canonical, ElemSet, MAX_ORDER};
use crate::canon::Algebra;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Group {
    n: usize,
    table: Vec<u8>,
    inv: Vec<u8>,
}

/// Identity of a square table, if any element acts as a two-sided identity.
pub(crate) fn find_identity(n: usize, t: &[u8]) -> Option<usize> {
    (0..n).find(|&e| (0..n).all(|x| t[e * n + x] as usize == x && t[x * n + e] as usize == x))
}

pub(crate) fn flatten(rows: &[Vec<usize>], label: &str) -> Result<Vec<u8>> {
    let n = rows.len();
    if n == 0 {
        return Err(Error::NotAGroup {
            operation: label.into(),
            witness: "empty table".into(),
        });
    }
    if n > MAX_ORDER {
        return Err(Error::OrderTooLarge {
            order: n,
            bound: MAX_ORDER,
        });
    }
    let mut flat = Vec::with_capacity(n * n);
    for (i, row) in rows.iter().enumerate() {
        if row.len() != n {
            return Err(Error::NotAGroup {
                operation: label.into(),
                witness: format!("row {i} has length {} instead of {n}", row.len()),
            });
        }
        for &x in row {
            if x >= n {
                return Err(Error::IndexOutOfRange { index: x, order: n });
            }
            flat.push(x as u8);
        }
    }
    Ok(flat)
}

/// Checks that a flat table with identity 0 is a group table.
pub(crate) fn check_group(n: usize, t: &[u8], label: &str) -> Result<()> {
    let bad = |w: String| {
        Err(Error::NotAGroup {
            operation: label.into(),
            witness: w,
        })
    };
    for x in 0..n {
        if t[x] as usize != x || t[x * n] as usize != x {
            return bad(format!(
                "0 is not an identity: 0*{x} or {x}*0 differs from {x}"
            ));
        }
    }
    for i in 0..n {
        let mut row = ElemSet::empty();
        let mut col = ElemSet::empty();
        for j in 0..n {
            row.insert(t[i * n + j] as usize);
            col.insert(t[j * n + i] as usize);
        }
        if row.len() != n {
            return bad(format!("row {i} is not a permutation"));
        }
        if col.len() != n {
            return bad(format!("column {i} is not a permutation"));
        }
    }
    for a in 0..n {
        for b in 0..n {
            let ab = t[a * n + b] as usize;
            for c in 0..n {
                let bc = t[b * n + c] as usize;
                if t[ab * n + c] != t[a * n + bc] {
                    return bad(format!("({a}*{b})*{c} != {a}*({b}*{c})"));
                }
            }
        }
    }
    Ok(())
}

pub(crate) fn inverse_table(n: usize, t: &[u8]) -> Vec<u8> {
    (0..n)
        .map(|a| (0..n).find(|&b| t[a * n + b] == 0).unwrap_or(0) as u8)
        .collect()
}

impl Group {
    /// Validates a Cayley table whose identity is 0.
    pub fn from_table(rows: &[Vec<usize>]) -> Result<Group> {
        Self::from_rows_labeled(rows, "group")
    }

    pub(crate) fn from_rows_labeled(rows: &[Vec<usize>], label: &str) -> Result<Group> {
        let flat = flatten(rows, label)?;
        Self::from_flat(rows.len(), flat, label)
    }

    pub(crate) fn from_flat(n: usize, table: Vec<u8>, label: &str) -> Result<Group> {
        check_group(n, &table, label)?;
        Ok(Self::from_flat_unchecked(n, table))
    }

    pub(crate) fn from_flat_unchecked(n: usize, table: Vec<u8>) -> Group {
        let inv = inverse_table(n, &table);
        Group { n, table, inv }
    }

    pub fn trivial() -> Group {
        Group::from_flat_unchecked(1, vec![0])
    }

    pub fn cyclic(n: usize) -> Group {
        Group::abelian(&[n])
    }

    /// `Z_{o_1} × … × Z_{o_k}` in mixed radix, last coordinate fastest.
    pub fn abelian(orders: &[usize]) -> Group {
        let n: usize = orders.iter().product();
        let digits = |mut x: usize| {
            let mut d = vec![0; orders.len()];
            for i in (0..orders.len()).rev() {
                d[i] = x % orders[i];
                x /= orders[i];
            }
            d
        };
        let index = |d: &[usize]| d.iter().zip(orders).fold(0, |acc, (v, o)| acc * o + v);
        let mut table = vec![0u8; n * n];
        for a in 0..n {
            let da = digits(a);
            for b in 0..n {
                let db = digits(b);
                let s: Vec<usize> = (0..orders.len())
                    .map(|i| (da[i] + db[i]) % orders[i])
                    .collect();
                table[a * n + b] = index(&s) as u8;
            }
        }
        Group::from_flat_unchecked(n, table)
    }

    pub fn direct_product(&self, other: &Group) -> Group {
        let (n1, n2) = (self.n, other.n);
        let n = n1 * n2;
        let mut table = vec![0u8; n * n];
        for a in 0..n {
            for b in 0..n {
                let x = self.op(a / n2, b / n2);
                let y = other.op(a % n2, b % n2);
                table[a * n + b] = (x * n2 + y) as u8;
            }
        }
        Group::from_flat_unchecked(n, table)
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn op(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    pub(crate) fn flat(&self) -> &[u8] {
        &self.table
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.n)
            .map(|a| (0..self.n).map(|b| self.op(a, b)).collect())
            .collect()
    }

    /// `x⁻¹ y⁻¹ x y` (additively `−x − y + x + y`).
    pub fn commutator(&self, x: usize, y: usize) -> usize {
        self.op(self.op(self.inv(x), self.inv(y)), self.op(x, y))
    }

    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        self.op(self.op(g, x), self.inv(g))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut k = 1;
        let mut y = a;
        while y != 0 {
            y = self.op(y, a);
            k += 1;
        }
        k
    }

    pub fn exponent(&self) -> usize {
        (0..self.n).map(|a| self.element_order(a)).fold(1, lcm)
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.n).all(|a| (0..a).all(|b| self.op(a, b) == self.op(b, a)))
    }

    pub fn is_cyclic(&self) -> bool {
        (0..self.n).any(|a| self.element_order(a) == self.n)
    }

    /// Subgroup generated by `s`.
    pub fn subgroup_generated(&self, s: ElemSet) -> ElemSet {
        self.extend_subgroup(ElemSet::singleton(0), s)
    }

    /// Subgroup generated by an existing subgroup `h` and extra elements.
    pub fn extend_subgroup(&self, h: ElemSet, extra: ElemSet) -> ElemSet {
        // right multiplication by generators reaches everything in a finite group
        let gens: Vec<usize> = h.union(extra).iter().collect();
        let mut set = h.union(extra);
        set.insert(0);
        let mut frontier: Vec<usize> = set.iter().collect();
        while let Some(x) = frontier.pop() {
            for &g in &gens {
                let y = self.op(x, g);
                if set.insert(y) {
                    frontier.push(y);
                }
            }
        }
        set
    }

    pub fn is_subgroup(&self, s: ElemSet) -> bool {
        s.contains(0)
            && s.iter()
                .all(|a| s.iter().all(|b| s.contains(self.op(a, b))))
    }

    pub fn is_normal(&self, s: ElemSet) -> bool {
        self.is_subgroup(s)
            && (0..self.n).all(|g| s.iter().all(|x| s.contains(self.conjugate(g, x))))
    }

    pub fn normal_closure(&self, s: ElemSet) -> ElemSet {
        let mut cur = self.subgroup_generated(s);
        loop {
            let conj: ElemSet = (0..self.n)
                .flat_map(|g| cur.iter().map(move |x| (g, x)))
                .map(|(g, x)| self.conjugate(g, x))
                .collect();
            let next = self.subgroup_generated(cur.union(conj));
            if next == cur {
                return cur;
            }
            cur = next;
        }
    }

    /// Subgroup generated by all commutators `[x, y]`, `x ∈ xs`, `y ∈ ys`.
    pub fn commutator_subgroup(&self, xs: ElemSet, ys: ElemSet) -> ElemSet {
        let gens: ElemSet = xs
            .iter()
            .flat_map(|x| ys.iter().map(move |y| (x, y)))
            .map(|(x, y)| self.commutator(x, y))
            .collect();
        self.subgroup_generated(gens)
    }

    pub fn centre(&self) -> ElemSet {
        (0..self.n)
            .filter(|&a| (0..self.n).all(|b| self.op(a, b) == self.op(b, a)))
            .collect()
    }

    /// `Z_0 = 1 ≤ Z_1 ≤ …` until stable; `Z_{k+1} = {g : [g, x] ∈ Z_k for all x}`.
    pub fn upper_central_series(&self) -> Vec<ElemSet> {
        let mut chain = vec![ElemSet::singleton(0)];
        loop {
            let z = *chain.last().unwrap();
            let next: ElemSet = (0..self.n)
                .filter(|&g| (0..self.n).all(|x| z.contains(self.commutator(g, x))))
                .collect();
            if next == z {
                return chain;
            }
            chain.push(next);
        }
    }

    /// All subgroups, in canonical order.
    pub fn subgroups(&self) -> Vec<ElemSet> {
        let mut seen: std::collections::HashSet<ElemSet> = std::collections::HashSet::new();
        let start = ElemSet::singleton(0);
        seen.insert(start);
        let mut queue = vec![start];
        while let Some(h) = queue.pop() {
            for x in 0..self.n {
                if h.contains(x) {
                    continue;
                }
                let k = self.extend_subgroup(h, ElemSet::singleton(x));
                if seen.insert(k) {
                    queue.push(k);
                }
            }
        }
        let mut out: Vec<ElemSet> = seen.into_iter().collect();
        sort_canonical(&mut out);
        out
    }

    fn algebra_tables(&self) -> [&[u8]; 1] {
        [&self.table]
    }

    /// All automorphisms as permutations of `0..n`.
    pub fn automorphisms(&self) -> Vec<Vec<usize>> {
        let t = self.algebra_tables();
        let alg = Algebra {
            n: self.n,
            tables: &t,
        };
        alg.homomorphic_bijections(&alg, false)
    }

    /// An isomorphism `self → other` if one exists.
    pub fn isomorphism(&self, other: &Group) -> Option<Vec<usize>> {
        if self.n != other.n || self.invariant() != other.invariant() {
            return None;
        }
        let t1 = self.algebra_tables();
        let t2 = other.algebra_tables();
        let a = Algebra {
            n: self.n,
            tables: &t1,
        };
        let b = Algebra {
            n: other.n,
            tables: &t2,
        };
        a.homomorphic_bijections(&b, true).into_iter().next()
    }

    /// Cheap isomorphism invariant.
    pub fn invariant(&self) -> (usize, bool, Vec<usize>, usize, usize) {
        let mut orders: Vec<usize> = (0..self.n).map(|a| self.element_order(a)).collect();
        orders.sort_unstable();
        let all = ElemSet::full(self.n);
        (
            self.n,
            self.is_abelian(),
            orders,
            self.centre().len(),
            self.commutator_subgroup(all, all).len(),
        )
    }
}

pub fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: usize, b: usize) -> usize {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

pub fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Largest order for which [`groups_of_order`] is complete: every group of
/// order below 60 is soluble, hence an iterated cyclic extension.
pub const GROUP_CATALOGUE_BOUND: usize = 59;

/// All groups of order `n` up to isomorphism, in a deterministic order.
pub fn groups_of_order(n: usize) -> Result<Vec<Group>> {
    if n == 0 || n > GROUP_CATALOGUE_BOUND {
        return Err(Error::OrderTooLarge {
            order: n,
            bound: GROUP_CATALOGUE_BOUND,
        });
    }
    static CACHE: OnceLock<Mutex<HashMap<usize, Vec<Group>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = cache.lock().unwrap().get(&n) {
        return Ok(v.clone());
    }
    let groups = build_groups_of_order(n)?;
    cache.lock().unwrap().insert(n, groups.clone());
    Ok(groups)
}

fn build_groups_of_order(n: usize) -> Result<Vec<Group>> {
    if n == 1 {
        return Ok(vec![Group::trivial()]);
    }
    let primes = prime_factors(n);
    if primes.len() == 1 && primes[0] == n {
        return Ok(vec![Group::cyclic(n)]);
    }
    let mut reps: Vec<Group> = Vec::new();
    let mut invariants: Vec<(usize, bool, Vec<usize>, usize, usize)> = Vec::new();
    for &p in &primes {
        for base in groups_of_order(n / p)? {
            for g in cyclic_extensions(&base, p) {
                let inv = g.invariant();
                let dup = reps
                    .iter()
                    .zip(&invariants)
                    .any(|(r, ri)| *ri == inv && r.isomorphism(&g).is_some());
                if !dup {
                    reps.push(g);
                    invariants.push(inv);
                }
            }
        }
    }
    // deterministic presentation: abelian groups first, then by invariant
    let mut paired: Vec<_> = invariants.into_iter().zip(reps).collect();
    paired.sort_by(|a, b| b.0 .1.cmp(&a.0 .1).then_with(|| a.0.cmp(&b.0)));
    Ok(paired.into_iter().map(|(_, g)| g).collect())
}

/// Groups `G = ⟨N, t⟩` with `N ⊴ G`, `G/N ≅ C_p`, `t^p = z ∈ N` and
/// `t⁻¹ m t = φ(m)`; requires `φ(z) = z` and `φ^p` = conjugation by `z`.
fn cyclic_extensions(base: &Group, p: usize) -> Vec<Group> {
    let m = base.order();
    let n = m * p;
    let auts = base.automorphisms();
    let mut out = Vec::new();
    for phi in &auts {
        let mut phi_p: Vec<usize> = (0..m).collect();
        for _ in 0..p {
            phi_p = phi_p.iter().map(|&x| phi[x]).collect();
        }
        for z in 0..m {
            if phi[z] != z {
                continue;
            }
            let zi = base.inv(z);
            if (0..m).any(|x| phi_p[x] != base.op(base.op(zi, x), z)) {
                continue;
            }
            // phi^j for j < p
            let mut pows = vec![(0..m).collect::<Vec<usize>>()];
            for j in 1..p {
                let prev = &pows[j - 1];
                pows.push(prev.iter().map(|&x| phi[x]).collect());
            }
            let mut table = vec![0u8; n * n];
            // element t^i m  ↦ index i*m + m
            for a in 0..n {
                let (i, x) = (a / m, a % m);
                for b in 0..n {
                    let (j, y) = (b / m, b % m);
                    let mut e = base.op(pows[j][x], y);
                    let mut k = i + j;
                    if k >= p {
                        k -= p;
                        e = base.op(z, e);
                    }
                    table[a * n + b] = (k * m + e) as u8;
                }
            }
            if check_group(n, &table, "extension").is_ok() {
                out.push(Group::from_flat_unchecked(n, table));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_group_counts() {
        // numbers of groups of small order
        let expected = [
            (1, 1),
            (2, 1),
            (4, 2),
            (6, 2),
            (8, 5),
            (9, 2),
            (12, 5),
            (16, 14),
            (18, 5),
        ];
        for (n, c) in expected {
            assert_eq!(groups_of_order(n).unwrap().len(), c, "order {n}");
        }
    }

    #[test]
    fn automorphism_counts() {
        assert_eq!(Group::cyclic(8).automorphisms().len(), 4);
        assert_eq!(Group::abelian(&[2, 2]).automorphisms().len(), 6);
        assert_eq!(Group::abelian(&[2, 2, 2]).automorphisms().len(), 168);
        assert_eq!(Group::abelian(&[4, 2]).automorphisms().len(), 8);
    }

    #[test]
    fn subgroups_of_klein_and_cyclic() {
        assert_eq!(Group::abelian(&[2, 2]).subgroups().len(), 5);
        assert_eq!(Group::cyclic(12).subgroups().len(), 6);
    }

    #[test]
    fn rejects_non_associative() {
        // a Latin square with identity 0 that is not associative (order 5 loop)
        let rows = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(matches!(
            Group::from_table(&rows),
            Err(Error::NotAGroup { .. })
        ));
    }
}
