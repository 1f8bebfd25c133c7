//! Relabelling of finite algebras (one or more binary tables on `0..n`) by
//! breadth-first closure from a generating tuple. Used for canonical forms,
//! isomorphism certificates and automorphism enumeration.

/// Flat `n*n` tables sharing the identity 0.
#[derive(Clone, Copy)]
pub(crate) struct Algebra<'a> {
    pub n: usize,
    pub tables: &'a [&'a [u8]],
}

/// One derivation step: element at a new position is `tables[t](list[i], list[j])`.
pub(crate) type Step = (usize, usize, usize);

impl<'a> Algebra<'a> {
    #[inline]
    fn op(&self, t: usize, a: usize, b: usize) -> usize {
        self.tables[t][a * self.n + b] as usize
    }

    /// Breadth-first closure of `{0} ∪ seeds`; returns the discovery list and,
    /// for every element after the seeds, how it was obtained.
    pub fn closure_order(&self, seeds: &[usize]) -> (Vec<usize>, Vec<Step>) {
        let n = self.n;
        let mut pos = vec![usize::MAX; n];
        let mut list = Vec::with_capacity(n);
        let mut steps = Vec::new();
        pos[0] = 0;
        list.push(0);
        for &s in seeds {
            if pos[s] == usize::MAX {
                pos[s] = list.len();
                list.push(s);
            }
        }
        let mut idx = 0;
        while idx < list.len() {
            let a = list[idx];
            for j in 0..=idx {
                let b = list[j];
                for t in 0..self.tables.len() {
                    for (l, r, li, ri) in [(a, b, idx, j), (b, a, j, idx)] {
                        let z = self.op(t, l, r);
                        if pos[z] == usize::MAX {
                            pos[z] = list.len();
                            list.push(z);
                            steps.push((t, li, ri));
                        }
                    }
                }
            }
            idx += 1;
            if list.len() == n {
                break;
            }
        }
        (list, steps)
    }

    pub fn generates(&self, seeds: &[usize]) -> bool {
        self.closure_order(seeds).0.len() == self.n
    }

    /// Smallest `k` such that some `k`-subset generates, together with one such subset.
    pub fn min_generating_set(&self) -> Vec<usize> {
        let n = self.n;
        for k in 0..n {
            let mut found = None;
            combinations(1..n, k, &mut |c: &[usize]| {
                if self.generates(c) {
                    found = Some(c.to_vec());
                    true
                } else {
                    false
                }
            });
            if let Some(c) = found {
                return c;
            }
        }
        (1..n).collect()
    }

    /// Order of `x` under repeated application of table `t`.
    pub fn power_order(&self, t: usize, x: usize) -> usize {
        let mut k = 1;
        let mut y = x;
        while y != 0 {
            y = self.op(t, y, x);
            k += 1;
            if k > self.n + 1 {
                break;
            }
        }
        k
    }

    fn relabelled(&self, list: &[usize]) -> Vec<u8> {
        let n = self.n;
        let mut pos = vec![0usize; n];
        for (i, &x) in list.iter().enumerate() {
            pos[x] = i;
        }
        let mut out = Vec::with_capacity(self.tables.len() * n * n);
        for t in 0..self.tables.len() {
            for &a in list {
                for &b in list {
                    out.push(pos[self.op(t, a, b)] as u8);
                }
            }
        }
        out
    }

    /// Canonical form: the lexicographically least relabelled table family over
    /// all ordered minimal generating tuples whose element-invariant sequence is
    /// least. Returns the canonical tables and the relabelling (new index -> old).
    pub fn canonical_form(&self) -> (Vec<u8>, Vec<usize>) {
        let n = self.n;
        if n == 1 {
            return (vec![0; self.tables.len()], vec![0]);
        }
        let k = self.min_generating_set().len();
        let invariant: Vec<Vec<usize>> = (0..n)
            .map(|x| {
                (0..self.tables.len())
                    .map(|t| self.power_order(t, x))
                    .collect()
            })
            .collect();
        let mut elems: Vec<usize> = (1..n).collect();
        elems.sort_by(|a, b| invariant[*a].cmp(&invariant[*b]).then(a.cmp(b)));

        let mut best: Option<(Vec<&Vec<usize>>, Vec<u8>, Vec<usize>)> = None;
        let mut tuple = Vec::with_capacity(k);
        let mut used = vec![false; n];
        self.canon_rec(k, &elems, &invariant, &mut tuple, &mut used, &mut best);
        let (_, tables, list) = best.expect("a generating tuple of minimal length exists");
        (tables, list)
    }

    #[allow(clippy::type_complexity)]
    fn canon_rec<'b>(
        &self,
        k: usize,
        elems: &[usize],
        invariant: &'b [Vec<usize>],
        tuple: &mut Vec<usize>,
        used: &mut [bool],
        best: &mut Option<(Vec<&'b Vec<usize>>, Vec<u8>, Vec<usize>)>,
    ) {
        if let Some((seq, _, _)) = best.as_ref() {
            // prune on the invariant prefix
            let d = tuple.len();
            let prefix: Vec<&Vec<usize>> = tuple.iter().map(|&x| &invariant[x]).collect();
            if prefix.as_slice() > &seq[..d] {
                return;
            }
        }
        if tuple.len() == k {
            let (list, _) = self.closure_order(tuple);
            if list.len() != self.n {
                return;
            }
            let seq: Vec<&Vec<usize>> = tuple.iter().map(|&x| &invariant[x]).collect();
            let tables = self.relabelled(&list);
            let better = match best.as_ref() {
                None => true,
                Some((bs, bt, _)) => {
                    (seq.as_slice(), tables.as_slice()) < (bs.as_slice(), bt.as_slice())
                }
            };
            if better {
                *best = Some((seq, tables, list));
            }
            return;
        }
        for &x in elems {
            if used[x] {
                continue;
            }
            used[x] = true;
            tuple.push(x);
            self.canon_rec(k, elems, invariant, tuple, used, best);
            tuple.pop();
            used[x] = false;
        }
    }

    /// All bijections `f` with `f(0) = 0` preserving every table from `self`
    /// onto `other`, found by extending images of a minimal generating tuple.
    /// Stops after the first hit when `first_only` is set.
    pub fn homomorphic_bijections(&self, other: &Algebra<'_>, first_only: bool) -> Vec<Vec<usize>> {
        let n = self.n;
        if other.n != n || other.tables.len() != self.tables.len() {
            return Vec::new();
        }
        if n == 1 {
            return vec![vec![0]];
        }
        let gens = self.min_generating_set();
        let (list, steps) = self.closure_order(&gens);
        let inv_self: Vec<Vec<usize>> = (0..n)
            .map(|x| {
                (0..self.tables.len())
                    .map(|t| self.power_order(t, x))
                    .collect()
            })
            .collect();
        let inv_other: Vec<Vec<usize>> = (0..n)
            .map(|x| {
                (0..other.tables.len())
                    .map(|t| other.power_order(t, x))
                    .collect()
            })
            .collect();
        let candidates: Vec<Vec<usize>> = gens
            .iter()
            .map(|&g| (1..n).filter(|&h| inv_other[h] == inv_self[g]).collect())
            .collect();
        let mut out = Vec::new();
        let mut images = vec![0usize; gens.len()];
        self.hom_rec(
            other,
            &list,
            &steps,
            &candidates,
            0,
            &mut images,
            first_only,
            &mut out,
        );
        out
    }

    #[allow(clippy::too_many_arguments)]
    fn hom_rec(
        &self,
        other: &Algebra<'_>,
        list: &[usize],
        steps: &[Step],
        candidates: &[Vec<usize>],
        depth: usize,
        images: &mut Vec<usize>,
        first_only: bool,
        out: &mut Vec<Vec<usize>>,
    ) {
        if first_only && !out.is_empty() {
            return;
        }
        if depth == candidates.len() {
            if let Some(f) = self.extend(other, list, steps, images) {
                out.push(f);
            }
            return;
        }
        for &h in &candidates[depth] {
            if images[..depth].contains(&h) {
                continue;
            }
            images[depth] = h;
            self.hom_rec(
                other,
                list,
                steps,
                candidates,
                depth + 1,
                images,
                first_only,
                out,
            );
            if first_only && !out.is_empty() {
                return;
            }
        }
    }

    /// Extend generator images along the recorded derivation and verify.
    fn extend(
        &self,
        other: &Algebra<'_>,
        list: &[usize],
        steps: &[Step],
        images: &[usize],
    ) -> Option<Vec<usize>> {
        let n = self.n;
        let mut img_list = Vec::with_capacity(n);
        img_list.push(0usize);
        img_list.extend_from_slice(images);
        for &(t, i, j) in steps {
            img_list.push(other.op(t, img_list[i], img_list[j]));
        }
        let mut f = vec![usize::MAX; n];
        let mut hit = vec![false; n];
        for (x, y) in list.iter().zip(&img_list) {
            if hit[*y] {
                return None;
            }
            hit[*y] = true;
            f[*x] = *y;
        }
        for t in 0..self.tables.len() {
            for a in 0..n {
                for b in 0..n {
                    if f[self.op(t, a, b)] != other.op(t, f[a], f[b]) {
                        return None;
                    }
                }
            }
        }
        Some(f)
    }
}

/// Visit all `k`-combinations of `items` in lexicographic order until the visitor returns true.
pub(crate) fn combinations(
    items: impl Iterator<Item = usize>,
    k: usize,
    visit: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    let items: Vec<usize> = items.collect();
    let mut cur = Vec::with_capacity(k);
    fn rec(
        items: &[usize],
        start: usize,
        k: usize,
        cur: &mut Vec<usize>,
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        if cur.len() == k {
            return visit(cur);
        }
        for i in start..items.len() {
            if items.len() - i < k - cur.len() {
                break;
            }
            cur.push(items[i]);
            if rec(items, i + 1, k, cur, visit) {
                return true;
            }
            cur.pop();
        }
        false
    }
    rec(&items, 0, k, &mut cur, visit)
}
