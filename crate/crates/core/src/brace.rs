//! The finite left skew brace: two group tables on `0..n` sharing the identity 0.

use serde::{Deserialize, Serialize};

use crate::bitset::ElemSet;
use crate::error::{Error, Result};
use crate::group::{check_group, find_identity, flatten, inverse_table, Group};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteBrace {
    n: usize,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
    lambda: Vec<u8>,
    name: Option<String>,
}

/// JSON brace format; entry `[i][j]` is `i ∘ j`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct BraceJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub order: usize,
    pub add: Vec<Vec<usize>>,
    pub mul: Vec<Vec<usize>>,
}

/// Validates two Cayley tables as a left skew brace.
///
/// When both tables share an identity other than 0, the carrier is relabelled
/// by swapping that element with 0.
pub fn validate_brace(
    order: usize,
    add: &[Vec<usize>],
    mul: &[Vec<usize>],
    name: Option<&str>,
) -> Result<FiniteBrace> {
    if add.len() != order || mul.len() != order {
        return Err(Error::NotAGroup {
            operation: "addition".into(),
            witness: format!(
                "expected {order} rows, found {} and {}",
                add.len(),
                mul.len()
            ),
        });
    }
    let mut a = flatten(add, "addition")?;
    let mut m = flatten(mul, "multiplication")?;
    let n = order;
    let ea = find_identity(n, &a).ok_or_else(|| Error::NotAGroup {
        operation: "addition".into(),
        witness: "no identity element".into(),
    })?;
    let em = find_identity(n, &m).ok_or_else(|| Error::NotAGroup {
        operation: "multiplication".into(),
        witness: "no identity element".into(),
    })?;
    if ea != em {
        return Err(Error::IdentityMismatch {
            additive: ea,
            multiplicative: em,
        });
    }
    if ea != 0 {
        let mut perm: Vec<usize> = (0..n).collect();
        perm.swap(0, ea);
        a = permute_table(n, &a, &perm);
        m = permute_table(n, &m, &perm);
    }
    FiniteBrace::from_flat(n, a, m, name.map(str::to_string))
}

/// Table after renaming element `x` to `perm[x]` (`perm` an involution or any bijection).
pub(crate) fn permute_table(n: usize, t: &[u8], perm: &[usize]) -> Vec<u8> {
    let mut out = vec![0u8; n * n];
    for a in 0..n {
        for b in 0..n {
            out[perm[a] * n + perm[b]] = perm[t[a * n + b] as usize] as u8;
        }
    }
    out
}

impl FiniteBrace {
    /// Validates flat tables with identity 0.
    pub(crate) fn from_flat(
        n: usize,
        add: Vec<u8>,
        mul: Vec<u8>,
        name: Option<String>,
    ) -> Result<FiniteBrace> {
        check_group(n, &add, "addition")?;
        check_group(n, &mul, "multiplication")?;
        let b = Self::from_flat_unchecked(n, add, mul, name);
        b.check_brace_axioms()?;
        Ok(b)
    }

    pub(crate) fn from_flat_unchecked(
        n: usize,
        add: Vec<u8>,
        mul: Vec<u8>,
        name: Option<String>,
    ) -> FiniteBrace {
        let neg = inverse_table(n, &add);
        let inv = inverse_table(n, &mul);
        let mut lambda = vec![0u8; n * n];
        for a in 0..n {
            for b in 0..n {
                lambda[a * n + b] = add[neg[a] as usize * n + mul[a * n + b] as usize];
            }
        }
        FiniteBrace {
            n,
            add,
            mul,
            neg,
            inv,
            lambda,
            name,
        }
    }

    fn check_brace_axioms(&self) -> Result<()> {
        let n = self.n;
        for a in 0..n {
            let na = self.neg(a);
            for b in 0..n {
                let ab_na = self.add(self.mul(a, b), na);
                for c in 0..n {
                    if self.mul(a, self.add(b, c)) != self.add(ab_na, self.mul(a, c)) {
                        return Err(Error::DistributivityFailure { a, b, c });
                    }
                }
            }
        }
        // With distributivity every λ_a is an additive endomorphism fixing 0 and
        // a ↦ λ_a is multiplicative; both are re-checked here for the record.
        for a in 0..n {
            let row: ElemSet = (0..n).map(|b| self.lambda(a, b)).collect();
            if row.len() != n || self.lambda(a, 0) != 0 {
                return Err(Error::NotAGroup {
                    operation: "lambda".into(),
                    witness: format!("lambda_{a} is not a permutation fixing 0"),
                });
            }
            for b in 0..n {
                let ab = self.mul(a, b);
                for c in 0..n {
                    if self.lambda(ab, c) != self.lambda(a, self.lambda(b, c)) {
                        return Err(Error::NotAGroup {
                            operation: "lambda".into(),
                            witness: format!(
                                "lambda_({a}*{b}) differs from lambda_{a} o lambda_{b} at {c}"
                            ),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn from_json(json: &BraceJson) -> Result<FiniteBrace> {
        validate_brace(json.order, &json.add, &json.mul, json.name.as_deref())
    }

    pub fn to_json(&self) -> BraceJson {
        BraceJson {
            name: self.name.clone(),
            order: self.n,
            add: self.add_rows(),
            mul: self.mul_rows(),
        }
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.n + b] as usize
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.n + b] as usize
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        self.neg[a] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    /// `a − b = a + (−b)`.
    #[inline]
    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    /// `λ_a(b) = −a + ab`.
    #[inline]
    pub fn lambda(&self, a: usize, b: usize) -> usize {
        self.lambda[a * self.n + b] as usize
    }

    /// `a ∗ b = −a + ab − b`.
    #[inline]
    pub fn star_unchecked(&self, a: usize, b: usize) -> usize {
        self.sub(self.lambda(a, b), b)
    }

    pub fn star(&self, a: usize, b: usize) -> Result<usize> {
        for x in [a, b] {
            if x >= self.n {
                return Err(Error::IndexOutOfRange {
                    index: x,
                    order: self.n,
                });
            }
        }
        Ok(self.star_unchecked(a, b))
    }

    pub fn add_rows(&self) -> Vec<Vec<usize>> {
        (0..self.n)
            .map(|a| (0..self.n).map(|b| self.add(a, b)).collect())
            .collect()
    }

    pub fn mul_rows(&self) -> Vec<Vec<usize>> {
        (0..self.n)
            .map(|a| (0..self.n).map(|b| self.mul(a, b)).collect())
            .collect()
    }

    pub(crate) fn flat_tables(&self) -> [&[u8]; 2] {
        [&self.add, &self.mul]
    }

    pub fn additive_group(&self) -> Group {
        Group::from_flat_unchecked(self.n, self.add.clone())
    }

    pub fn multiplicative_group(&self) -> Group {
        Group::from_flat_unchecked(self.n, self.mul.clone())
    }

    pub fn elements(&self) -> ElemSet {
        ElemSet::full(self.n)
    }

    pub fn is_trivial(&self) -> bool {
        self.add == self.mul
    }

    pub fn is_abelian_type(&self) -> bool {
        (0..self.n).all(|a| (0..a).all(|b| self.add(a, b) == self.add(b, a)))
    }

    /// The subbrace `s` as a brace in its own right, elements in increasing
    /// order (so 0 stays 0), with the embedding into `self`.
    pub fn induced(&self, s: ElemSet) -> Result<(FiniteBrace, Vec<usize>)> {
        let elems = s.to_vec();
        if elems.first() != Some(&0) {
            return Err(Error::NotASubbrace);
        }
        let mut pos = vec![usize::MAX; self.n];
        for (i, &x) in elems.iter().enumerate() {
            pos[x] = i;
        }
        let m = elems.len();
        let mut add = Vec::with_capacity(m * m);
        let mut mul = Vec::with_capacity(m * m);
        for &a in &elems {
            for &b in &elems {
                let (x, y) = (pos[self.add(a, b)], pos[self.mul(a, b)]);
                if x == usize::MAX || y == usize::MAX {
                    return Err(Error::NotASubbrace);
                }
                add.push(x as u8);
                mul.push(y as u8);
            }
        }
        let b = FiniteBrace::from_flat_unchecked(m, add, mul, None);
        Ok((b, elems))
    }

    /// Exhaustive check of the three star-product identities.
    pub fn identity_audit(&self) -> IdentityAudit {
        identity_audit_flat(self.n, &self.add, &self.mul)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum StarIdentity {
    /// `(ab) ∗ c = a ∗ (b ∗ c) + b ∗ c + a ∗ c`
    ProductLeft,
    /// `ab = a + a ∗ b + b`
    ProductDecomposition,
    /// `a ∗ (b + c) = a ∗ b + b + a ∗ c − b`
    SumRight,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityAudit {
    pub passed: bool,
    pub triples_checked: usize,
    pub failure: Option<(StarIdentity, usize, usize, usize)>,
}

/// Audit of raw tables, which need not form a brace (e.g. a corrupted table).
pub fn identity_audit_tables(add: &[Vec<usize>], mul: &[Vec<usize>]) -> Result<IdentityAudit> {
    let n = add.len();
    let a = flatten(add, "addition")?;
    let m = flatten(mul, "multiplication")?;
    if m.len() != a.len() {
        return Err(Error::NotAGroup {
            operation: "multiplication".into(),
            witness: "size mismatch".into(),
        });
    }
    Ok(identity_audit_flat(n, &a, &m))
}

fn identity_audit_flat(n: usize, add: &[u8], mul: &[u8]) -> IdentityAudit {
    let neg = inverse_table(n, add);
    let ad = |x: usize, y: usize| add[x * n + y] as usize;
    let mu = |x: usize, y: usize| mul[x * n + y] as usize;
    let ng = |x: usize| neg[x] as usize;
    let star = |x: usize, y: usize| ad(ad(ng(x), mu(x, y)), ng(y));
    let mut checked = 0;
    for a in 0..n {
        for b in 0..n {
            let ab = mu(a, b);
            if ab != ad(ad(a, star(a, b)), b) {
                return IdentityAudit {
                    passed: false,
                    triples_checked: checked + 1,
                    failure: Some((StarIdentity::ProductDecomposition, a, b, 0)),
                };
            }
            for c in 0..n {
                checked += 1;
                let bc = star(b, c);
                let lhs = star(ab, c);
                let rhs = ad(ad(star(a, bc), bc), star(a, c));
                if lhs != rhs {
                    return IdentityAudit {
                        passed: false,
                        triples_checked: checked,
                        failure: Some((StarIdentity::ProductLeft, a, b, c)),
                    };
                }
                let lhs = star(a, ad(b, c));
                let rhs = ad(ad(ad(star(a, b), b), star(a, c)), ng(b));
                if lhs != rhs {
                    return IdentityAudit {
                        passed: false,
                        triples_checked: checked,
                        failure: Some((StarIdentity::SumRight, a, b, c)),
                    };
                }
            }
        }
    }
    IdentityAudit {
        passed: true,
        triples_checked: checked,
        failure: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyclic_rows(n: usize) -> Vec<Vec<usize>> {
        (0..n)
            .map(|a| (0..n).map(|b| (a + b) % n).collect())
            .collect()
    }

    #[test]
    fn zero_brace() {
        let b = validate_brace(1, &[vec![0]], &[vec![0]], None).unwrap();
        assert_eq!(b.order(), 1);
        let audit = b.identity_audit();
        assert!(audit.passed);
        assert_eq!(audit.triples_checked, 1);
    }

    #[test]
    fn trivial_c4_has_identity_lambda() {
        let t = cyclic_rows(4);
        let b = validate_brace(4, &t, &t, Some("C4")).unwrap();
        for a in 0..4 {
            for x in 0..4 {
                assert_eq!(b.lambda(a, x), x);
            }
        }
        assert_eq!(b.star(1, 3).unwrap(), 0);
        assert!(matches!(b.star(4, 0), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn order_four_multiplications_agree_with_brute_force() {
        let add = cyclic_rows(4);
        let perms = [
            [0, 1, 2, 3],
            [0, 2, 1, 3],
            [0, 1, 3, 2],
            [0, 3, 2, 1],
            [0, 2, 3, 1],
            [0, 3, 1, 2],
        ];
        let klein = |x: usize, y: usize| x ^ y;
        let cyc = |x: usize, y: usize| (x + y) % 4;
        let (mut valid_klein, mut invalid) = (0, 0);
        for (is_klein, op) in [
            (true, &klein as &dyn Fn(usize, usize) -> usize),
            (false, &cyc),
        ] {
            for p in perms {
                let mut pinv = [0; 4];
                for (i, &x) in p.iter().enumerate() {
                    pinv[x] = i;
                }
                let mul: Vec<Vec<usize>> = (0..4)
                    .map(|a| (0..4).map(|b| p[op(pinv[a], pinv[b])]).collect())
                    .collect();
                let violates = (0..4).any(|a| {
                    (0..4).any(|b| {
                        (0..4).any(|c| {
                            mul[a][add[b][c]] != add[add[mul[a][b]][(4 - a) % 4]][mul[a][c]]
                        })
                    })
                });
                let res = validate_brace(4, &add, &mul, None);
                assert_eq!(res.is_ok(), !violates, "labelling {p:?}");
                if violates {
                    invalid += 1;
                    assert!(matches!(res, Err(Error::DistributivityFailure { .. })));
                } else if is_klein {
                    valid_klein += 1;
                }
            }
        }
        // C4 carries braces with Klein multiplicative group; a relabelled C4
        // multiplication need not be compatible
        assert!(valid_klein > 0);
        assert!(invalid > 0);
    }

    #[test]
    fn identity_elsewhere_is_normalised() {
        // C3 with identity at label 2
        let t = vec![vec![1, 2, 0], vec![2, 0, 1], vec![0, 1, 2]];
        let b = validate_brace(3, &t, &t, None).unwrap();
        for x in 0..3 {
            assert_eq!(b.add(0, x), x);
        }
    }

    #[test]
    fn mismatched_identities() {
        let a = vec![vec![0, 1], vec![1, 0]];
        let m = vec![vec![1, 0], vec![0, 1]];
        assert!(matches!(
            validate_brace(2, &a, &m, None),
            Err(Error::IdentityMismatch { .. })
        ));
    }
}
