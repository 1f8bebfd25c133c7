use std::collections::{HashMap, HashSet};

use rayon::prelude::*;

use super::iso::canonical_key;
use crate::brace::FiniteBrace;
use crate::error::{Error, Result};
use crate::group::{groups_of_order, Group, GROUP_CATALOGUE_BOUND};

/// Environment variable overriding the default enumeration bound.
pub const ENUM_BOUND_ENV: &str = "SKEWBRACE_ENUM_BOUND";
const DEFAULT_ENUM_BOUND: usize = 16;

pub fn enumeration_bound() -> usize {
    std::env::var(ENUM_BOUND_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_ENUM_BOUND)
        .min(GROUP_CATALOGUE_BOUND)
}

/// Brace whose multiplicative group is the regular subgroup
/// `{(f_b, b)} ≤ Hol(B,+) = Aut(B,+) ⋉ B`, transported to `B` through `(f, b) ↦ b`.
pub fn from_regular_subgroup(add: &Group, subgroup: &[(Vec<usize>, usize)]) -> Result<FiniteBrace> {
    let n = add.order();
    let mut seen: HashSet<(Vec<usize>, usize)> = HashSet::new();
    for (f, b) in subgroup {
        if *b >= n {
            return Err(Error::IndexOutOfRange {
                index: *b,
                order: n,
            });
        }
        if f.len() != n || !is_automorphism(add, f) {
            return Err(Error::NotASubgroup(format!(
                "the component of {b} is not an automorphism of (B,+)"
            )));
        }
        seen.insert((f.clone(), *b));
    }
    if !seen.contains(&((0..n).collect(), 0)) {
        return Err(Error::NotASubgroup(
            "the identity of the holomorph is missing".into(),
        ));
    }
    // (f1, b1)(f2, b2) = (f1 f2, b1 + f1(b2))
    for (f1, b1) in &seen {
        for (f2, b2) in &seen {
            let f: Vec<usize> = f2.iter().map(|&x| f1[x]).collect();
            let b = add.op(*b1, f1[*b2]);
            if !seen.contains(&(f, b)) {
                return Err(Error::NotASubgroup(format!(
                    "product of the elements over {b1} and {b2} is missing"
                )));
            }
        }
    }
    let mut lam: Vec<Option<&Vec<usize>>> = vec![None; n];
    for (f, b) in &seen {
        if lam[*b].replace(f).is_some() {
            return Err(Error::NotRegular(format!(
                "two elements translate 0 to {b}"
            )));
        }
    }
    if seen.len() != n {
        return Err(Error::NotRegular(format!(
            "subgroup has order {} instead of {n}",
            seen.len()
        )));
    }
    let mut mul = vec![0u8; n * n];
    for a in 0..n {
        let f = lam[a].expect("regular");
        for b in 0..n {
            mul[a * n + b] = add.op(a, f[b]) as u8;
        }
    }
    FiniteBrace::from_flat(n, add.flat().to_vec(), mul, None)
}

fn is_automorphism(g: &Group, f: &[usize]) -> bool {
    let n = g.order();
    let mut hit = vec![false; n];
    for &x in f {
        if x >= n || std::mem::replace(&mut hit[x], true) {
            return false;
        }
    }
    (0..n).all(|x| (0..n).all(|y| f[g.op(x, y)] == g.op(f[x], f[y])))
}

const NONE: u32 = u32::MAX;

struct Search<'a> {
    g: &'a Group,
    auts: Vec<Vec<u8>>,
    index: HashMap<Vec<u8>, u32>,
    identity: u32,
}

impl<'a> Search<'a> {
    fn new(g: &'a Group) -> Self {
        let auts: Vec<Vec<u8>> = g
            .automorphisms()
            .into_iter()
            .map(|f| f.into_iter().map(|x| x as u8).collect())
            .collect();
        let index: HashMap<Vec<u8>, u32> = auts
            .iter()
            .enumerate()
            .map(|(i, f)| (f.clone(), i as u32))
            .collect();
        let id: Vec<u8> = (0..g.order()).map(|x| x as u8).collect();
        let identity = index[&id];
        Search {
            g,
            auts,
            index,
            identity,
        }
    }

    fn compose(&self, f: u32, h: u32) -> u32 {
        let (f, h) = (&self.auts[f as usize], &self.auts[h as usize]);
        let c: Vec<u8> = h.iter().map(|&x| f[x as usize]).collect();
        self.index[&c]
    }

    #[inline]
    fn apply(&self, f: u32, x: usize) -> usize {
        self.auts[f as usize][x] as usize
    }

    /// `(x, f)` generates a cyclic subgroup of the holomorph meeting the
    /// stabiliser of 0 trivially.
    fn semiregular(&self, x: usize, f: u32) -> bool {
        let (mut b, mut h) = (x, f);
        loop {
            if b == 0 {
                return h == self.identity;
            }
            // (h, b)(f, x) = (h f, b + h(x))
            b = self.g.op(b, self.apply(h, x));
            h = self.compose(h, f);
        }
    }

    /// Assign `λ_x = f` and close under the product rule
    /// `λ_{a + λ_a(b)} = λ_a λ_b`. Returns false on a conflict.
    fn assign(&self, lam: &mut [u32], assigned: &mut Vec<usize>, x: usize, f: u32) -> bool {
        let mut queue = vec![(x, f)];
        while let Some((x, f)) = queue.pop() {
            if lam[x] != NONE {
                if lam[x] != f {
                    return false;
                }
                continue;
            }
            lam[x] = f;
            assigned.push(x);
            let count = assigned.len();
            for k in 0..count {
                let y = assigned[k];
                let fy = lam[y];
                queue.push((self.g.op(x, self.apply(f, y)), self.compose(f, fy)));
                queue.push((self.g.op(y, self.apply(fy, x)), self.compose(fy, f)));
            }
        }
        true
    }

    fn run(&self, lam: Vec<u32>, assigned: Vec<usize>, out: &mut Vec<Vec<u32>>) {
        let Some(x) = lam.iter().position(|&f| f == NONE) else {
            out.push(lam);
            return;
        };
        for f in 0..self.auts.len() as u32 {
            if !self.semiregular(x, f) {
                continue;
            }
            let mut l = lam.clone();
            let mut a = assigned.clone();
            if self.assign(&mut l, &mut a, x, f) {
                self.run(l, a, out);
            }
        }
    }

    fn start(&self) -> (Vec<u32>, Vec<usize>) {
        let n = self.g.order();
        let mut lam = vec![NONE; n];
        let mut assigned = Vec::new();
        let ok = self.assign(&mut lam, &mut assigned, 0, self.identity);
        debug_assert!(ok);
        (lam, assigned)
    }

    fn brace(&self, lam: &[u32]) -> FiniteBrace {
        let n = self.g.order();
        let mut mul = vec![0u8; n * n];
        for a in 0..n {
            for b in 0..n {
                mul[a * n + b] = self.g.op(a, self.apply(lam[a], b)) as u8;
            }
        }
        FiniteBrace::from_flat(n, self.g.flat().to_vec(), mul, None)
            .expect("closed regular subgroups of the holomorph give braces")
    }
}

/// All braces with the given additive table, one per regular subgroup of the
/// holomorph, in deterministic search order.
pub fn braces_over(add: &Group) -> Vec<FiniteBrace> {
    let s = Search::new(add);
    let (lam, assigned) = s.start();
    let Some(x) = lam.iter().position(|&f| f == NONE) else {
        return vec![s.brace(&lam)];
    };
    let branches: Vec<Vec<Vec<u32>>> = (0..s.auts.len() as u32)
        .into_par_iter()
        .map(|f| {
            let mut out = Vec::new();
            if s.semiregular(x, f) {
                let mut l = lam.clone();
                let mut a = assigned.clone();
                if s.assign(&mut l, &mut a, x, f) {
                    s.run(l, a, &mut out);
                }
            }
            out
        })
        .collect();
    branches
        .into_iter()
        .flatten()
        .map(|l| s.brace(&l))
        .collect()
}

/// Every brace of order `n`, optionally up to isomorphism (then in canonical labelling).
pub fn enumerate_braces(n: usize, up_to_iso: bool) -> Result<Vec<FiniteBrace>> {
    enumerate_braces_bounded(n, up_to_iso, enumeration_bound())
}

pub fn enumerate_braces_bounded(
    n: usize,
    up_to_iso: bool,
    bound: usize,
) -> Result<Vec<FiniteBrace>> {
    if n == 0 || n > bound || n > GROUP_CATALOGUE_BOUND {
        return Err(Error::OrderTooLarge {
            order: n,
            bound: bound.min(GROUP_CATALOGUE_BOUND),
        });
    }
    let groups = groups_of_order(n)?;
    let mut out = Vec::new();
    for g in &groups {
        let all = braces_over(g);
        if !up_to_iso {
            out.extend(all);
            continue;
        }
        let keyed: Vec<(Vec<u8>, FiniteBrace)> = all.par_iter().map(canonical_key).collect();
        let mut seen = HashSet::new();
        let mut reps: Vec<(Vec<u8>, FiniteBrace)> = keyed
            .into_iter()
            .filter(|(k, _)| seen.insert(k.clone()))
            .collect();
        reps.sort_by(|a, b| a.0.cmp(&b.0));
        out.extend(reps.into_iter().map(|(_, b)| b));
    }
    Ok(out)
}
