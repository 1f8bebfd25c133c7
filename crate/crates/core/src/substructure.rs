//! Closure operators and the lattices of subbraces, left ideals, strong left
//! ideals and ideals.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::bitset::{sort_canonical, ElemSet};
use crate::brace::FiniteBrace;
use crate::error::{inconsistent, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    Subbrace,
    LeftIdeal,
    StrongLeftIdeal,
    Ideal,
}

impl Kind {
    pub const ALL: [Kind; 4] = [
        Kind::Subbrace,
        Kind::LeftIdeal,
        Kind::StrongLeftIdeal,
        Kind::Ideal,
    ];

    pub fn parse(s: &str) -> Option<Kind> {
        match s.replace('-', "_").as_str() {
            "subbrace" => Some(Kind::Subbrace),
            "left_ideal" => Some(Kind::LeftIdeal),
            "strong_left_ideal" => Some(Kind::StrongLeftIdeal),
            "ideal" => Some(Kind::Ideal),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Flags {
    pub subbrace: bool,
    pub left_ideal: bool,
    pub strong_left_ideal: bool,
    pub ideal: bool,
}

impl Flags {
    pub fn has(&self, kind: Kind) -> bool {
        match kind {
            Kind::Subbrace => self.subbrace,
            Kind::LeftIdeal => self.left_ideal,
            Kind::StrongLeftIdeal => self.strong_left_ideal,
            Kind::Ideal => self.ideal,
        }
    }
}

/// A set of elements of a brace together with its classification.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubSet {
    #[serde(rename = "elements")]
    pub bits: ElemSet,
    pub flags: Flags,
}

impl SubSet {
    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn elements(&self) -> Vec<usize> {
        self.bits.to_vec()
    }
}

/// Decides all four flags of `bits` inside the subbrace `ambient`.
pub fn classify_within(b: &FiniteBrace, ambient: ElemSet, bits: ElemSet) -> Flags {
    let mut f = Flags::default();
    if !bits.contains(0) || !bits.is_subset(ambient) {
        return f;
    }
    let closed = bits.iter().all(|x| {
        bits.iter()
            .all(|y| bits.contains(b.add(x, y)) && bits.contains(b.mul(x, y)))
    });
    if !closed {
        return f;
    }
    f.subbrace = true;
    f.left_ideal = ambient
        .iter()
        .all(|z| bits.iter().all(|x| bits.contains(b.lambda(z, x))));
    if !f.left_ideal {
        return f;
    }
    f.strong_left_ideal = ambient
        .iter()
        .all(|z| bits.iter().all(|x| bits.contains(b.sub(b.add(z, x), z))));
    if !f.strong_left_ideal {
        return f;
    }
    f.ideal = ambient.iter().all(|z| {
        bits.iter()
            .all(|x| bits.contains(b.mul(b.mul(z, x), b.inv(z))))
    });
    f
}

pub fn classify(b: &FiniteBrace, bits: ElemSet) -> SubSet {
    SubSet {
        bits,
        flags: classify_within(b, b.elements(), bits),
    }
}

/// Least set containing `base ∪ seed ∪ {0}` closed under both operations and,
/// according to `kind`, under `λ_z`, additive and multiplicative conjugation
/// by every `z ∈ ambient`. `base` must already be closed.
pub fn closure_within(
    b: &FiniteBrace,
    kind: Kind,
    ambient: ElemSet,
    base: ElemSet,
    seed: ElemSet,
) -> ElemSet {
    let mut set = base;
    let mut queue: Vec<usize> = Vec::new();
    if set.insert(0) {
        queue.push(0);
    }
    for x in seed {
        if set.insert(x) {
            queue.push(x);
        }
    }
    let amb: Vec<usize> = ambient.to_vec();
    while let Some(x) = queue.pop() {
        let snapshot = set;
        let push = |y: usize, set: &mut ElemSet, queue: &mut Vec<usize>| {
            if set.insert(y) {
                queue.push(y);
            }
        };
        for y in snapshot {
            push(b.add(x, y), &mut set, &mut queue);
            push(b.add(y, x), &mut set, &mut queue);
            push(b.mul(x, y), &mut set, &mut queue);
            push(b.mul(y, x), &mut set, &mut queue);
        }
        if kind >= Kind::LeftIdeal {
            for &z in &amb {
                push(b.lambda(z, x), &mut set, &mut queue);
            }
        }
        if kind >= Kind::StrongLeftIdeal {
            for &z in &amb {
                push(b.sub(b.add(z, x), z), &mut set, &mut queue);
            }
        }
        if kind == Kind::Ideal {
            for &z in &amb {
                push(b.mul(b.mul(z, x), b.inv(z)), &mut set, &mut queue);
            }
        }
    }
    set
}

pub fn closure(b: &FiniteBrace, kind: Kind, e: ElemSet) -> ElemSet {
    closure_within(b, kind, b.elements(), ElemSet::empty(), e)
}

/// Smallest subbrace containing `e`.
pub fn subbrace_closure(b: &FiniteBrace, e: ElemSet) -> SubSet {
    classify(b, closure(b, Kind::Subbrace, e))
}

/// The ideal `E^B` generated by `e`.
pub fn ideal_closure(b: &FiniteBrace, e: ElemSet) -> SubSet {
    classify(b, closure(b, Kind::Ideal, e))
}

/// Additive subgroup generated by `e`.
pub fn additive_span(b: &FiniteBrace, e: ElemSet) -> ElemSet {
    let mut set = e;
    set.insert(0);
    let gens: Vec<usize> = set.to_vec();
    let mut frontier = gens.clone();
    while let Some(x) = frontier.pop() {
        for &g in &gens {
            let y = b.add(x, g);
            if set.insert(y) {
                frontier.push(y);
            }
        }
    }
    set
}

/// All members of the given kind, sorted by size then elements.
///
/// Enumerates the subgroups of `(B,+)` and filters them.
pub fn all_substructures(b: &FiniteBrace, kind: Kind) -> Vec<SubSet> {
    let mut out: Vec<SubSet> = b
        .additive_group()
        .subgroups()
        .into_iter()
        .map(|s| classify(b, s))
        .filter(|s| s.flags.has(kind))
        .collect();
    out.sort_by(|x, y| x.bits.canonical_cmp(&y.bits));
    out
}

/// Same family as [`all_substructures`], found instead by joining closures
/// of one extra element at a time inside `ambient`.
pub fn lattice_by_closure(b: &FiniteBrace, kind: Kind, ambient: ElemSet) -> Vec<ElemSet> {
    let start = ElemSet::singleton(0);
    let mut seen: HashSet<ElemSet> = HashSet::from([start]);
    let mut queue = vec![start];
    while let Some(s) = queue.pop() {
        for x in ambient.difference(s) {
            let t = closure_within(b, kind, ambient, s, ElemSet::singleton(x));
            if seen.insert(t) {
                queue.push(t);
            }
        }
    }
    let mut out: Vec<ElemSet> = seen.into_iter().collect();
    sort_canonical(&mut out);
    out
}

/// All ideals of `b`, sorted.
pub fn ideals(b: &FiniteBrace) -> Vec<ElemSet> {
    lattice_by_closure(b, Kind::Ideal, b.elements())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Minimal,
    Maximal,
}

/// Minimal non-zero members, or maximal proper members, of a family.
pub fn extremal_of(family: &[ElemSet], whole: ElemSet, direction: Direction) -> Vec<ElemSet> {
    let zero = ElemSet::singleton(0);
    match direction {
        Direction::Minimal => family
            .iter()
            .copied()
            .filter(|&s| s != zero)
            .filter(|&s| {
                !family
                    .iter()
                    .any(|&t| t != zero && t != s && t.is_subset(s))
            })
            .collect(),
        Direction::Maximal => family
            .iter()
            .copied()
            .filter(|&s| s != whole)
            .filter(|&s| {
                !family
                    .iter()
                    .any(|&t| t != whole && t != s && s.is_subset(t))
            })
            .collect(),
    }
}

pub fn extremal(b: &FiniteBrace, kind: Kind, direction: Direction) -> Vec<SubSet> {
    let family: Vec<ElemSet> = all_substructures(b, kind)
        .into_iter()
        .map(|s| s.bits)
        .collect();
    extremal_of(&family, b.elements(), direction)
        .into_iter()
        .map(|s| classify(b, s))
        .collect()
}

/// Largest ideal contained in the subbrace `c`.
pub fn core_of(b: &FiniteBrace, c: ElemSet) -> Result<SubSet> {
    if !classify(b, c).flags.subbrace {
        return Err(Error::NotASubbrace);
    }
    core_in_family(b, &ideals(b), c)
}

pub(crate) fn core_in_family(b: &FiniteBrace, ideals: &[ElemSet], c: ElemSet) -> Result<SubSet> {
    let inside: Vec<ElemSet> = ideals.iter().copied().filter(|i| i.is_subset(c)).collect();
    let union = inside
        .iter()
        .fold(ElemSet::singleton(0), |acc, &i| acc.union(i));
    let sum = ideal_closure(b, union);
    if !sum.bits.is_subset(c) || !inside.contains(&sum.bits) {
        return Err(inconsistent(
            "core_of",
            "the ideals inside the set have no largest member",
        ));
    }
    Ok(sum)
}

/// `I + J = {i + j}`, asserted equal to `IJ = {ij}`.
pub fn sum_and_product(b: &FiniteBrace, i: ElemSet, j: ElemSet) -> Result<SubSet> {
    for s in [i, j] {
        if !classify(b, s).flags.ideal {
            return Err(Error::NotAnIdeal);
        }
    }
    let sum: ElemSet = i
        .iter()
        .flat_map(|x| j.iter().map(move |y| (x, y)))
        .map(|(x, y)| b.add(x, y))
        .collect();
    let prod: ElemSet = i
        .iter()
        .flat_map(|x| j.iter().map(move |y| (x, y)))
        .map(|(x, y)| b.mul(x, y))
        .collect();
    if sum != prod {
        return Err(inconsistent("sum_and_product", "I + J differs from IJ"));
    }
    let s = classify(b, sum);
    if !s.flags.ideal {
        return Err(inconsistent("sum_and_product", "I + J is not an ideal"));
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brace::validate_brace;

    fn trivial(n: usize) -> FiniteBrace {
        let t: Vec<Vec<usize>> = (0..n)
            .map(|a| (0..n).map(|b| (a + b) % n).collect())
            .collect();
        validate_brace(n, &t, &t, None).unwrap()
    }

    #[test]
    fn zero_brace_lattice() {
        let b = trivial(1);
        for k in Kind::ALL {
            let l = all_substructures(&b, k);
            assert_eq!(l.len(), 1);
            assert_eq!(l[0].bits, ElemSet::singleton(0));
        }
    }

    #[test]
    fn prime_order_extremal() {
        let b = trivial(5);
        let min = extremal(&b, Kind::Ideal, Direction::Minimal);
        assert_eq!(min.len(), 1);
        assert_eq!(min[0].bits, b.elements());
        let max = extremal(&b, Kind::Ideal, Direction::Maximal);
        assert_eq!(max.len(), 1);
        assert_eq!(max[0].bits, ElemSet::singleton(0));
    }

    #[test]
    fn closure_of_empty_is_zero() {
        let b = trivial(6);
        assert_eq!(
            subbrace_closure(&b, ElemSet::empty()).bits,
            ElemSet::singleton(0)
        );
        assert_eq!(
            ideal_closure(&b, ElemSet::singleton(0)).bits,
            ElemSet::singleton(0)
        );
        assert_eq!(subbrace_closure(&b, ElemSet::singleton(2)).len(), 3);
    }
}
