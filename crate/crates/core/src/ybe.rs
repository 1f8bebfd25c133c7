//! The set-theoretic solution of the Yang–Baxter equation attached to a brace.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::brace::FiniteBrace;
use crate::error::{Error, Result};

/// A map `r(a, b) = (first[a][b], second[a][b])` on `{0, …, n−1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Solution {
    pub order: usize,
    pub first: Vec<Vec<usize>>,
    pub second: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BraidVerdict {
    pub holds: bool,
    /// Lexicographically least `(x, y, z)` where the two sides differ.
    pub witness: Option<[usize; 3]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct YbeSolution {
    #[serde(flatten)]
    pub solution: Solution,
    pub braid: BraidVerdict,
    pub nondegenerate_left: bool,
    pub nondegenerate_right: bool,
}

impl YbeSolution {
    pub fn nondegenerate(&self) -> bool {
        self.nondegenerate_left && self.nondegenerate_right
    }
}

impl Solution {
    pub fn from_tables(first: Vec<Vec<usize>>, second: Vec<Vec<usize>>) -> Result<Solution> {
        let n = first.len();
        let square = |t: &Vec<Vec<usize>>| {
            t.len() == n && t.iter().all(|r| r.len() == n && r.iter().all(|&v| v < n))
        };
        if !square(&first) || !square(&second) {
            return Err(Error::Parse(format!(
                "solution tables must both be {n}×{n} with entries below {n}"
            )));
        }
        Ok(Solution {
            order: n,
            first,
            second,
        })
    }

    pub fn flip(n: usize) -> Solution {
        let first = (0..n).map(|_| (0..n).collect()).collect();
        let second = (0..n).map(|a| vec![a; n]).collect();
        Solution {
            order: n,
            first,
            second,
        }
    }

    pub fn apply(&self, a: usize, b: usize) -> (usize, usize) {
        (self.first[a][b], self.second[a][b])
    }

    /// Every `b ↦ first[a][b]` is a permutation.
    pub fn left_nondegenerate(&self) -> bool {
        self.first
            .iter()
            .all(|row| is_permutation(row.iter().copied(), self.order))
    }

    /// Every `a ↦ second[a][b]` is a permutation.
    pub fn right_nondegenerate(&self) -> bool {
        (0..self.order)
            .all(|b| is_permutation((0..self.order).map(|a| self.second[a][b]), self.order))
    }
}

fn is_permutation(values: impl Iterator<Item = usize>, n: usize) -> bool {
    let mut seen = vec![false; n];
    values
        .filter(|&v| !std::mem::replace(&mut seen[v], true))
        .count()
        == n
}

/// `r₁₂r₂₃r₁₂ = r₂₃r₁₂r₂₃` on all triples.
pub fn check_braid(sol: &Solution) -> BraidVerdict {
    let n = sol.order;
    let r12 = |(x, y, z): (usize, usize, usize)| {
        let (p, q) = sol.apply(x, y);
        (p, q, z)
    };
    let r23 = |(x, y, z): (usize, usize, usize)| {
        let (p, q) = sol.apply(y, z);
        (x, p, q)
    };
    let witness = (0..n).into_par_iter().find_map_first(|x| {
        for y in 0..n {
            for z in 0..n {
                let t = (x, y, z);
                if r12(r23(r12(t))) != r23(r12(r23(t))) {
                    return Some([x, y, z]);
                }
            }
        }
        None
    });
    BraidVerdict {
        holds: witness.is_none(),
        witness,
    }
}

/// `r(a, b) = (λ_a(b), λ_a(b)⁻¹ab)`, with every property checked exhaustively.
pub fn solution_from_brace(b: &FiniteBrace) -> YbeSolution {
    let n = b.order();
    let mut first = vec![vec![0; n]; n];
    let mut second = vec![vec![0; n]; n];
    for a in 0..n {
        for c in 0..n {
            let l = b.lambda(a, c);
            first[a][c] = l;
            second[a][c] = b.mul(b.mul(b.inv(l), a), c);
        }
    }
    let solution = Solution {
        order: n,
        first,
        second,
    };
    YbeSolution {
        braid: check_braid(&solution),
        nondegenerate_left: solution.left_nondegenerate(),
        nondegenerate_right: solution.right_nondegenerate(),
        solution,
    }
}

/// `π × π` intertwines the solutions of `B` and of a quotient `B/I`.
pub fn projection_is_morphism(b: &FiniteBrace, quotient: &FiniteBrace, proj: &[usize]) -> bool {
    let r = solution_from_brace(b).solution;
    let s = solution_from_brace(quotient).solution;
    (0..b.order()).all(|x| {
        (0..b.order()).all(|y| {
            let (p, q) = r.apply(x, y);
            (proj[p], proj[q]) == s.apply(proj[x], proj[y])
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::trivial_brace;
    use crate::group::{groups_of_order, Group};

    #[test]
    fn flip_satisfies_braid() {
        let v = check_braid(&Solution::flip(4));
        assert!(v.holds);
    }

    #[test]
    fn shifted_flip_still_satisfies_braid() {
        // r(a, b) = (b + 1, a) is a permutation solution whose two maps commute.
        let n = 5;
        let first = (0..n)
            .map(|_| (0..n).map(|b| (b + 1) % n).collect())
            .collect();
        let second = (0..n).map(|a| vec![a; n]).collect();
        assert!(check_braid(&Solution::from_tables(first, second).unwrap()).holds);
    }

    #[test]
    fn shifting_the_second_coordinate_fails_with_witness() {
        // r(a, b) = (a, b + 1)
        let n = 3;
        let first = (0..n).map(|a| vec![a; n]).collect();
        let second = (0..n)
            .map(|_| (0..n).map(|b| (b + 1) % n).collect())
            .collect();
        let s = Solution::from_tables(first, second).unwrap();
        let v = check_braid(&s);
        assert!(!v.holds);
        let [x, y, z] = v.witness.unwrap();
        assert_eq!([x, y, z], [0, 0, 0]);
        // brute-force re-evaluation of the witness
        let (a1, b1) = s.apply(x, y);
        let (b2, c2) = s.apply(b1, z);
        let (a3, b3) = s.apply(a1, b2);
        let lhs = (a3, b3, c2);
        let (b1, c1) = s.apply(y, z);
        let (a2, b2) = s.apply(x, b1);
        let (b3, c3) = s.apply(b2, c1);
        assert_ne!(lhs, (a2, b3, c3));
    }

    #[test]
    fn trivial_abelian_brace_gives_flip() {
        let b = trivial_brace(&Group::abelian(&[2, 2]).rows()).unwrap();
        let y = solution_from_brace(&b);
        assert_eq!(y.solution, Solution::flip(4));
        assert!(y.braid.holds && y.nondegenerate());
    }

    #[test]
    fn trivial_brace_on_s3_gives_conjugation() {
        let s3 = groups_of_order(6)
            .unwrap()
            .into_iter()
            .find(|g| !g.is_abelian())
            .unwrap();
        let b = trivial_brace(&s3.rows()).unwrap();
        let y = solution_from_brace(&b);
        for a in 0..6 {
            for c in 0..6 {
                assert_eq!(y.solution.apply(a, c), (c, s3.op(s3.op(s3.inv(c), a), c)));
            }
        }
        assert!(y.braid.holds && y.nondegenerate());
    }
}
