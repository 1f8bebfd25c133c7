//! Fixed-width element sets for carriers of at most [`MAX_ORDER`] elements.

use std::cmp::Ordering;
use std::fmt;

pub const MAX_ORDER: usize = 128;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct ElemSet(u128);

impl ElemSet {
    pub const EMPTY: ElemSet = ElemSet(0);

    pub fn empty() -> Self {
        ElemSet(0)
    }

    pub fn singleton(i: usize) -> Self {
        ElemSet(1u128 << i)
    }

    /// `{0, 1, ..., n-1}`.
    pub fn full(n: usize) -> Self {
        if n >= 128 {
            ElemSet(u128::MAX)
        } else {
            ElemSet((1u128 << n) - 1)
        }
    }

    pub fn from_bits(bits: u128) -> Self {
        ElemSet(bits)
    }

    pub fn bits(self) -> u128 {
        self.0
    }

    #[inline]
    pub fn contains(self, i: usize) -> bool {
        i < 128 && (self.0 >> i) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, i: usize) -> bool {
        let had = self.contains(i);
        self.0 |= 1u128 << i;
        !had
    }

    #[inline]
    pub fn remove(&mut self, i: usize) {
        self.0 &= !(1u128 << i);
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, o: ElemSet) -> ElemSet {
        ElemSet(self.0 | o.0)
    }

    pub fn intersection(self, o: ElemSet) -> ElemSet {
        ElemSet(self.0 & o.0)
    }

    pub fn difference(self, o: ElemSet) -> ElemSet {
        ElemSet(self.0 & !o.0)
    }

    pub fn is_subset(self, o: ElemSet) -> bool {
        self.0 & !o.0 == 0
    }

    pub fn first(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize)
        }
    }

    pub fn iter(self) -> Iter {
        Iter(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// The deterministic order used for every listing: by size, then by the
    /// sorted element lists compared lexicographically.
    pub fn canonical_cmp(&self, other: &ElemSet) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.iter().cmp(other.iter()))
    }
}

impl FromIterator<usize> for ElemSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = ElemSet::empty();
        for i in iter {
            s.insert(i);
        }
        s
    }
}

impl<'a> FromIterator<&'a usize> for ElemSet {
    fn from_iter<I: IntoIterator<Item = &'a usize>>(iter: I) -> Self {
        iter.into_iter().copied().collect()
    }
}

impl IntoIterator for ElemSet {
    type Item = usize;
    type IntoIter = Iter;
    fn into_iter(self) -> Iter {
        self.iter()
    }
}

pub struct Iter(u128);

impl Iterator for Iter {
    type Item = usize;
    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl serde::Serialize for ElemSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

impl<'de> serde::Deserialize<'de> for ElemSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<usize>::deserialize(d)?;
        if let Some(&x) = v.iter().find(|&&x| x >= MAX_ORDER) {
            return Err(serde::de::Error::custom(format!(
                "element {x} exceeds the supported order"
            )));
        }
        Ok(v.into_iter().collect())
    }
}

impl fmt::Debug for ElemSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

pub fn sort_canonical(sets: &mut [ElemSet]) {
    sets.sort_by(|a, b| a.canonical_cmp(b));
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_ops() {
        let mut s = ElemSet::empty();
        assert!(s.insert(3));
        assert!(!s.insert(3));
        s.insert(127);
        s.insert(0);
        assert_eq!(s.to_vec(), vec![0, 3, 127]);
        assert_eq!(s.len(), 3);
        assert!(ElemSet::singleton(3).is_subset(s));
        assert_eq!(ElemSet::full(128).len(), 128);
        assert_eq!(ElemSet::full(5).to_vec(), vec![0, 1, 2, 3, 4]);
        s.remove(3);
        assert_eq!(s.first(), Some(0));
    }

    #[test]
    fn canonical_order() {
        let mut v = vec![
            ElemSet::from_iter([0usize, 2]),
            ElemSet::from_iter([0usize]),
            ElemSet::from_iter([0usize, 1]),
        ];
        sort_canonical(&mut v);
        assert_eq!(v[0].to_vec(), vec![0]);
        assert_eq!(v[1].to_vec(), vec![0, 1]);
        assert_eq!(v[2].to_vec(), vec![0, 2]);
    }
}
