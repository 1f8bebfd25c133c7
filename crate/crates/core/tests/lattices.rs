//! Substructure lattices and commutators checked against brute force over all
//! subsets of small braces, using nothing but the Cayley tables.

use proptest::prelude::*;

use skewbrace::commutator::commutator_ideal;
use skewbrace::construct::{enumerate_braces, quotient};
use skewbrace::fixtures::builtin_fixture;
use skewbrace::substructure::{
    all_substructures, closure, ideal_closure, ideals, lattice_by_closure, Kind,
};
use skewbrace::{ElemSet, FiniteBrace};

struct Tables {
    n: usize,
    add: Vec<Vec<usize>>,
    mul: Vec<Vec<usize>>,
    neg: Vec<usize>,
    inv: Vec<usize>,
}

impl Tables {
    fn new(b: &FiniteBrace) -> Tables {
        let add = b.add_rows();
        let mul = b.mul_rows();
        let n = add.len();
        let neg = (0..n)
            .map(|x| (0..n).find(|&y| add[x][y] == 0).unwrap())
            .collect();
        let inv = (0..n)
            .map(|x| (0..n).find(|&y| mul[x][y] == 0).unwrap())
            .collect();
        Tables {
            n,
            add,
            mul,
            neg,
            inv,
        }
    }

    fn lambda(&self, a: usize, x: usize) -> usize {
        self.add[self.neg[a]][self.mul[a][x]]
    }

    fn star(&self, a: usize, x: usize) -> usize {
        self.add[self.lambda(a, x)][self.neg[x]]
    }

    fn members(&self, mask: u32) -> Vec<usize> {
        (0..self.n).filter(|&x| mask >> x & 1 == 1).collect()
    }

    /// Definitional kind of a subset: 0 none, 1 subbrace, 2 left ideal,
    /// 3 strong left ideal, 4 ideal.
    fn kind(&self, mask: u32) -> u8 {
        let has = |x: usize| mask >> x & 1 == 1;
        let s = self.members(mask);
        if !has(0)
            || !s.iter().all(|&x| {
                s.iter()
                    .all(|&y| has(self.add[x][y]) && has(self.mul[x][y]))
            })
        {
            return 0;
        }
        let all = 0..self.n;
        if !all
            .clone()
            .all(|a| s.iter().all(|&x| has(self.lambda(a, x))))
        {
            return 1;
        }
        if !all.clone().all(|a| {
            s.iter()
                .all(|&x| has(self.add[self.add[a][x]][self.neg[a]]))
        }) {
            return 2;
        }
        if !all.clone().all(|a| {
            s.iter()
                .all(|&x| has(self.mul[self.mul[a][x]][self.inv[a]]))
        }) {
            return 3;
        }
        4
    }

    fn family(&self, min_kind: u8) -> Vec<u32> {
        (0..1u32 << self.n)
            .filter(|&m| m & 1 == 1 && self.kind(m) >= min_kind)
            .collect()
    }

    /// Smallest ideal `K` modulo which `I` and `J` commute additively and
    /// have trivial star products, taken as an intersection over all ideals.
    fn commutator(&self, ideals: &[u32], i: u32, j: u32) -> u32 {
        let (iv, jv) = (self.members(i), self.members(j));
        ideals
            .iter()
            .copied()
            .filter(|&k| {
                let has = |x: usize| k >> x & 1 == 1;
                iv.iter().all(|&x| {
                    jv.iter().all(|&y| {
                        has(self.star(x, y))
                            && has(self.star(y, x))
                            && has(self.add[self.add[self.neg[x]][self.neg[y]]][self.add[x][y]])
                    })
                })
            })
            .fold(u32::MAX >> (32 - self.n), |acc, k| acc & k)
    }
}

fn mask(s: ElemSet) -> u32 {
    s.iter().fold(0, |m, x| m | 1 << x)
}

fn small_braces() -> Vec<FiniteBrace> {
    (1..=12)
        .flat_map(|n| enumerate_braces(n, true).unwrap())
        .collect()
}

const KINDS: [(Kind, u8); 4] = [
    (Kind::Subbrace, 1),
    (Kind::LeftIdeal, 2),
    (Kind::StrongLeftIdeal, 3),
    (Kind::Ideal, 4),
];

#[test]
fn lattices_match_subset_search() {
    for b in small_braces() {
        let t = Tables::new(&b);
        for (kind, level) in KINDS {
            let mut expected = t.family(level);
            expected.sort_unstable();
            let mut filtered: Vec<u32> = all_substructures(&b, kind)
                .iter()
                .map(|s| mask(s.bits))
                .collect();
            filtered.sort_unstable();
            let mut closed: Vec<u32> = lattice_by_closure(&b, kind, b.elements())
                .into_iter()
                .map(mask)
                .collect();
            closed.sort_unstable();
            assert_eq!(
                filtered,
                expected,
                "{kind:?} by filtering, order {}",
                b.order()
            );
            assert_eq!(closed, expected, "{kind:?} by closure, order {}", b.order());
        }
    }
}

#[test]
fn closures_are_least_members_of_the_lattice() {
    for b in small_braces().into_iter().filter(|b| b.order() <= 8) {
        let t = Tables::new(&b);
        for (kind, level) in KINDS {
            let family = t.family(level);
            for seed in 0..1u32 << t.n {
                let least = family
                    .iter()
                    .filter(|&&m| m & seed == seed)
                    .fold(u32::MAX >> (32 - t.n), |a, &m| a & m);
                let s: ElemSet = t.members(seed).into_iter().collect();
                assert_eq!(
                    mask(closure(&b, kind, s)),
                    least,
                    "{kind:?} closure of {seed:#b}"
                );
            }
        }
    }
}

#[test]
fn commutators_match_definition() {
    for b in small_braces() {
        let t = Tables::new(&b);
        let family = t.family(4);
        let ids = ideals(&b);
        for &i in &ids {
            for &j in &ids {
                let c = commutator_ideal(&b, i, j).unwrap();
                assert_eq!(
                    mask(c.bits),
                    t.commutator(&family, mask(i), mask(j)),
                    "order {}",
                    b.order()
                );
            }
        }
    }
}

#[test]
fn quotients_are_braces_with_morphic_projection() {
    for b in small_braces() {
        for i in ideals(&b) {
            let (q, proj) = quotient(&b, i).unwrap();
            assert_eq!(q.order() * i.len(), b.order());
            for x in 0..b.order() {
                for y in 0..b.order() {
                    assert_eq!(proj[b.add(x, y)], q.add(proj[x], proj[y]));
                    assert_eq!(proj[b.mul(x, y)], q.mul(proj[x], proj[y]));
                }
            }
        }
    }
}

fn b24() -> FiniteBrace {
    builtin_fixture("b24").unwrap().build().unwrap().brace
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ideal_closure_is_least_ideal_above_seed(seed in proptest::collection::vec(0usize..24, 0..4)) {
        let b = b24();
        let s: ElemSet = seed.into_iter().collect();
        let c = ideal_closure(&b, s);
        prop_assert!(c.flags.ideal && s.is_subset(c.bits));
        for k in ideals(&b).into_iter().filter(|k| s.is_subset(*k)) {
            prop_assert!(c.bits.is_subset(k));
        }
    }

    #[test]
    fn intersections_and_sums_stay_ideals(x in 0usize..24, y in 0usize..24) {
        let b = b24();
        let i = ideal_closure(&b, ElemSet::singleton(x)).bits;
        let j = ideal_closure(&b, ElemSet::singleton(y)).bits;
        let t = Tables::new(&b);
        prop_assert_eq!(t.kind(mask(i.intersection(j))), 4);
        let sum = ideal_closure(&b, i.union(j)).bits;
        let direct: ElemSet = i.iter().flat_map(|p| j.iter().map(move |q| (p, q))).map(|(p, q)| b.add(p, q)).collect();
        prop_assert_eq!(sum, direct);
        let c = commutator_ideal(&b, i, j).unwrap().bits;
        prop_assert!(c.is_subset(i.intersection(j)));
    }
}
