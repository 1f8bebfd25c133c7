//! Finitely presented groups (coset enumeration) and the symbolic notation
//! used by fixture files: multiplicative words such as `m1 m2^-1 m4^2` and
//! additive expressions such as `3a1+2a2` over a product of cyclic groups.

use crate::error::{Error, Result};
use crate::group::{check_group, Group};

/// A word as a list of `(generator, exponent)` syllables.
pub type Word = Vec<(usize, i64)>;

pub fn parse_word(s: &str, generators: &[String]) -> Result<Word> {
    let mut out = Vec::new();
    for tok in s.split_whitespace() {
        if tok == "1" {
            continue;
        }
        let (name, exp) = match tok.split_once('^') {
            Some((g, e)) => (
                g,
                e.parse::<i64>()
                    .map_err(|_| Error::Parse(format!("bad exponent in `{tok}`")))?,
            ),
            None => (tok, 1),
        };
        let g = generators
            .iter()
            .position(|x| x == name)
            .ok_or_else(|| Error::Parse(format!("unknown generator `{name}` in `{s}`")))?;
        out.push((g, exp));
    }
    Ok(out)
}

/// Coset-table columns: generator `g` is `2g`, its inverse `2g + 1`.
fn columns(w: &Word) -> Vec<usize> {
    let mut out = Vec::new();
    for &(g, e) in w {
        let col = if e >= 0 { 2 * g } else { 2 * g + 1 };
        for _ in 0..e.unsigned_abs() {
            out.push(col);
        }
    }
    out
}

const UNDEF: usize = usize::MAX;

struct Enumerator {
    cols: usize,
    table: Vec<Vec<usize>>,
    parent: Vec<usize>,
    limit: usize,
}

impl Enumerator {
    fn rep(&mut self, c: usize) -> usize {
        let mut r = c;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut x = c;
        while self.parent[x] != r {
            let next = self.parent[x];
            self.parent[x] = r;
            x = next;
        }
        r
    }

    fn live(&self, c: usize) -> bool {
        self.parent[c] == c
    }

    fn define(&mut self, c: usize, x: usize) -> Result<()> {
        if self.table.len() >= self.limit {
            return Err(Error::OrderTooLarge {
                order: self.table.len(),
                bound: self.limit,
            });
        }
        let d = self.table.len();
        self.table.push(vec![UNDEF; self.cols]);
        self.parent.push(d);
        self.table[c][x] = d;
        self.table[d][x ^ 1] = c;
        Ok(())
    }

    fn merge(&mut self, k: usize, l: usize, queue: &mut Vec<usize>) {
        let (k, l) = (self.rep(k), self.rep(l));
        if k == l {
            return;
        }
        let (lo, hi) = (k.min(l), k.max(l));
        self.parent[hi] = lo;
        queue.push(hi);
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        let mut queue = Vec::new();
        self.merge(a, b, &mut queue);
        let mut k = 0;
        while k < queue.len() {
            let e = queue[k];
            k += 1;
            for x in 0..self.cols {
                let f = self.table[e][x];
                if f == UNDEF {
                    continue;
                }
                self.table[f][x ^ 1] = UNDEF;
                let e1 = self.rep(e);
                let f1 = self.rep(f);
                if self.table[e1][x] != UNDEF {
                    let t = self.table[e1][x];
                    self.merge(f1, t, &mut queue);
                } else if self.table[f1][x ^ 1] != UNDEF {
                    let t = self.table[f1][x ^ 1];
                    self.merge(e1, t, &mut queue);
                } else {
                    self.table[e1][x] = f1;
                    self.table[f1][x ^ 1] = e1;
                }
            }
        }
    }

    fn scan_and_fill(&mut self, c: usize, w: &[usize]) -> Result<()> {
        if w.is_empty() {
            return Ok(());
        }
        let (mut f, mut b) = (c, c);
        let (mut i, mut j) = (0isize, w.len() as isize - 1);
        loop {
            while i <= j && self.table[f][w[i as usize]] != UNDEF {
                f = self.table[f][w[i as usize]];
                i += 1;
            }
            if i > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j >= i && self.table[b][w[j as usize] ^ 1] != UNDEF {
                b = self.table[b][w[j as usize] ^ 1];
                j -= 1;
            }
            if j < i {
                self.coincidence(f, b);
                return Ok(());
            } else if i == j {
                let x = w[i as usize];
                self.table[f][x] = b;
                self.table[b][x ^ 1] = f;
                return Ok(());
            } else {
                self.define(f, w[i as usize])?;
            }
        }
    }
}

/// The regular representation of `⟨generators | relators⟩` found by
/// enumerating the cosets of the trivial subgroup.
#[derive(Clone, Debug)]
pub struct CosetTable {
    pub generators: Vec<String>,
    /// `action[g][c]`: coset `c` multiplied on the right by generator `g`.
    pub action: Vec<Vec<usize>>,
    pub inverse_action: Vec<Vec<usize>>,
    /// Shortest-first words (as table columns) reaching each coset from 0.
    words: Vec<Vec<usize>>,
}

impl CosetTable {
    pub fn enumerate(generators: &[String], relators: &[Word], limit: usize) -> Result<CosetTable> {
        let m = generators.len();
        let cols = 2 * m;
        let rels: Vec<Vec<usize>> = relators.iter().map(columns).collect();
        let mut e = Enumerator {
            cols,
            table: vec![vec![UNDEF; cols]],
            parent: vec![0],
            limit,
        };
        let mut c = 0;
        while c < e.table.len() {
            if e.live(c) {
                for r in &rels {
                    if !e.live(c) {
                        break;
                    }
                    e.scan_and_fill(c, r)?;
                }
                if e.live(c) {
                    for x in 0..cols {
                        if e.table[c][x] == UNDEF {
                            e.define(c, x)?;
                        }
                    }
                }
            }
            c += 1;
        }
        // standardise by breadth-first search from coset 0
        let mut number = vec![UNDEF; e.table.len()];
        let mut order = vec![0usize];
        let mut words: Vec<Vec<usize>> = vec![Vec::new()];
        number[0] = 0;
        let mut k = 0;
        while k < order.len() {
            let c = order[k];
            for x in 0..cols {
                let t = e.table[c][x];
                if t == UNDEF {
                    return Err(Error::Parse(
                        "coset enumeration left an incomplete table".into(),
                    ));
                }
                let d = e.rep(t);
                if number[d] == UNDEF {
                    number[d] = order.len();
                    order.push(d);
                    let mut w = words[k].clone();
                    w.push(x);
                    words.push(w);
                }
            }
            k += 1;
        }
        let mut action = vec![vec![0; order.len()]; m];
        let mut inverse_action = vec![vec![0; order.len()]; m];
        for (i, &c) in order.iter().enumerate() {
            for g in 0..m {
                let t = e.table[c][2 * g];
                action[g][i] = number[e.rep(t)];
                let t = e.table[c][2 * g + 1];
                inverse_action[g][i] = number[e.rep(t)];
            }
        }
        Ok(CosetTable {
            generators: generators.to_vec(),
            action,
            inverse_action,
            words,
        })
    }

    pub fn order(&self) -> usize {
        self.words.len()
    }

    fn apply_columns(&self, mut c: usize, cols: &[usize]) -> usize {
        for &x in cols {
            c = if x % 2 == 0 {
                self.action[x / 2][c]
            } else {
                self.inverse_action[x / 2][c]
            };
        }
        c
    }

    /// Index of the group element represented by `w`.
    pub fn element(&self, w: &Word) -> usize {
        self.apply_columns(0, &columns(w))
    }

    /// Representative word of element `c`, as `(generator, ±1)` syllables.
    pub fn word_of(&self, c: usize) -> Word {
        self.words[c]
            .iter()
            .map(|&x| (x / 2, if x % 2 == 0 { 1 } else { -1 }))
            .collect()
    }

    /// Cayley table: element `i` is the coset `0·w_i`, so `w_i w_j` is `i·w_j`.
    pub fn group(&self) -> Result<Group> {
        let n = self.order();
        let mut table = vec![0u8; n * n];
        for i in 0..n {
            for j in 0..n {
                table[i * n + j] = self.apply_columns(i, &self.words[j]) as u8;
            }
        }
        check_group(n, &table, "presented group")?;
        Ok(Group::from_flat_unchecked(n, table))
    }
}

/// A product of cyclic groups `Z_{o_1} × … × Z_{o_k}` with named generators.
#[derive(Clone, Debug)]
pub struct CyclicProduct {
    pub generators: Vec<String>,
    pub orders: Vec<usize>,
}

impl CyclicProduct {
    pub fn order(&self) -> usize {
        self.orders.iter().product()
    }

    pub fn group(&self) -> Group {
        Group::abelian(&self.orders)
    }

    /// Mixed-radix index of a coordinate vector (last coordinate fastest),
    /// matching [`Group::abelian`].
    pub fn index(&self, v: &[i64]) -> usize {
        v.iter().zip(&self.orders).fold(0usize, |acc, (&x, &o)| {
            acc * o + x.rem_euclid(o as i64) as usize
        })
    }

    pub fn coordinates(&self, mut x: usize) -> Vec<usize> {
        let mut d = vec![0; self.orders.len()];
        for i in (0..self.orders.len()).rev() {
            d[i] = x % self.orders[i];
            x /= self.orders[i];
        }
        d
    }

    /// Parses `0`, `x`, `3x+2y`, `a1-a2`, …
    pub fn parse(&self, s: &str) -> Result<usize> {
        Ok(self.index(&self.parse_coordinates(s)?))
    }

    pub fn parse_coordinates(&self, s: &str) -> Result<Vec<i64>> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut v = vec![0i64; self.orders.len()];
        if s == "0" {
            return Ok(v);
        }
        let bytes = s.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            let mut sign = 1;
            if bytes[i] == b'+' || bytes[i] == b'-' {
                if bytes[i] == b'-' {
                    sign = -1;
                }
                i += 1;
            }
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let coeff: i64 = if i > start {
                s[start..i].parse().unwrap()
            } else {
                1
            };
            let nstart = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            let name = &s[nstart..i];
            if name.is_empty() || !name.as_bytes()[0].is_ascii_alphabetic() {
                return Err(Error::Parse(format!("bad term in `{s}`")));
            }
            let g = self
                .generators
                .iter()
                .position(|x| x == name)
                .ok_or_else(|| Error::Parse(format!("unknown generator `{name}` in `{s}`")))?;
            v[g] += sign * coeff;
        }
        Ok(v)
    }

    /// Renders an element as `2x+y`, `0`, …
    pub fn render(&self, x: usize) -> String {
        let d = self.coordinates(x);
        let terms: Vec<String> = d
            .iter()
            .zip(&self.generators)
            .filter(|(c, _)| **c != 0)
            .map(|(c, g)| {
                if *c == 1 {
                    g.clone()
                } else {
                    format!("{c}{g}")
                }
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gens(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn dihedral_and_quaternion_orders() {
        let g = gens(&["r", "s"]);
        let rels: Vec<Word> = ["r^6", "s^2", "s r s^-1 r"]
            .iter()
            .map(|w| parse_word(w, &g).unwrap())
            .collect();
        let t = CosetTable::enumerate(&g, &rels, 10_000).unwrap();
        assert_eq!(t.order(), 12);
        let grp = t.group().unwrap();
        assert!(!grp.is_abelian());
        let q = gens(&["i", "j"]);
        let rels: Vec<Word> = ["i^4", "i^2 j^-2", "j^-1 i j i"]
            .iter()
            .map(|w| parse_word(w, &q).unwrap())
            .collect();
        let t = CosetTable::enumerate(&q, &rels, 10_000).unwrap();
        assert_eq!(t.order(), 8);
        // quaternion group: a unique involution
        let grp = t.group().unwrap();
        assert_eq!((1..8).filter(|&x| grp.element_order(x) == 2).count(), 1);
    }

    #[test]
    fn coincidences_collapse() {
        // ⟨a, b | a^3, b^2, a b a^-1 b^-1, a^2 b⟩ is trivial? a^2 = b^-1 has order 2 and 3 → trivial
        let g = gens(&["a", "b"]);
        let rels: Vec<Word> = ["a^3", "b^2", "a b a^-1 b^-1", "a^2 b"]
            .iter()
            .map(|w| parse_word(w, &g).unwrap())
            .collect();
        let t = CosetTable::enumerate(&g, &rels, 1000).unwrap();
        assert_eq!(t.order(), 1);
    }

    #[test]
    fn additive_expressions() {
        let p = CyclicProduct {
            generators: gens(&["a1", "a2", "a3"]),
            orders: vec![4, 4, 2],
        };
        let x = p.parse("3a1+2a2+a3").unwrap();
        assert_eq!(p.coordinates(x), vec![3, 2, 1]);
        assert_eq!(p.render(x), "3a1+2a2+a3");
        assert_eq!(p.parse("-a1").unwrap(), p.parse("3a1").unwrap());
        assert_eq!(p.parse("0").unwrap(), 0);
        assert!(p.parse("2b").is_err());
    }
}
