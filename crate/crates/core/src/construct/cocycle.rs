use serde::{Deserialize, Serialize};

use crate::brace::FiniteBrace;
use crate::error::{Error, Result};
use crate::group::Group;

/// Data of a bijective 1-cocycle `δ: C → (B,+)` relative to an action
/// `λ: C → Aut(B,+)`.
#[derive(Clone, Debug)]
pub struct CocycleSpec {
    pub additive: Group,
    pub actor: Group,
    /// `action[c][b] = λ_c(b)`.
    pub action: Vec<Vec<usize>>,
    pub delta: Vec<usize>,
    pub name: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CocycleSpecJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub additive: Vec<Vec<usize>>,
    pub actor: Vec<Vec<usize>>,
    pub action: Vec<Vec<usize>>,
    /// Either a table `c ↦ δ(c)` …
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<Vec<usize>>,
    /// … or the complement `D = {(δ(c), c)}` of the semidirect product as `[b, c]` pairs.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub complement: Option<Vec<[usize; 2]>>,
}

impl CocycleSpec {
    pub fn from_json(j: &CocycleSpecJson) -> Result<CocycleSpec> {
        let additive = Group::from_rows_labeled(&j.additive, "addition")?;
        let actor = Group::from_rows_labeled(&j.actor, "actor")?;
        let delta = match (&j.delta, &j.complement) {
            (Some(d), _) => d.clone(),
            (None, Some(pairs)) => delta_from_complement(actor.order(), pairs)?,
            (None, None) => {
                return Err(Error::Parse(
                    "cocycle spec needs `delta` or `complement`".into(),
                ))
            }
        };
        Ok(CocycleSpec {
            additive,
            actor,
            action: j.action.clone(),
            delta,
            name: j.name.clone(),
        })
    }

    pub fn to_json(&self) -> CocycleSpecJson {
        CocycleSpecJson {
            name: self.name.clone(),
            additive: self.additive.rows(),
            actor: self.actor.rows(),
            action: self.action.clone(),
            delta: Some(self.delta.clone()),
            complement: None,
        }
    }
}

/// Reads `δ` off a complement given as pairs `(δ(c), c)`.
pub(crate) fn delta_from_complement(order: usize, pairs: &[[usize; 2]]) -> Result<Vec<usize>> {
    let mut delta = vec![usize::MAX; order];
    for &[b, c] in pairs {
        if c >= order {
            return Err(Error::IndexOutOfRange { index: c, order });
        }
        if delta[c] != usize::MAX {
            return Err(Error::DeltaNotBijective(format!(
                "actor element {c} occurs twice in the complement"
            )));
        }
        delta[c] = b;
    }
    if let Some(c) = delta.iter().position(|&d| d == usize::MAX) {
        return Err(Error::DeltaNotBijective(format!(
            "actor element {c} is missing from the complement"
        )));
    }
    Ok(delta)
}

/// Brace on the carrier of `(B,+)` with `ab = δ(δ⁻¹(a) δ⁻¹(b))`.
pub fn from_cocycle(spec: &CocycleSpec) -> Result<FiniteBrace> {
    let b = &spec.additive;
    let c = &spec.actor;
    let n = b.order();
    if c.order() != n {
        return Err(Error::DeltaNotBijective(format!(
            "|B| = {n} but |C| = {}",
            c.order()
        )));
    }
    if spec.action.len() != n || spec.action.iter().any(|r| r.len() != n) {
        return Err(Error::ActionNotHomomorphism(
            "action table must be |C| x |B|".into(),
        ));
    }
    let lam = &spec.action;
    for (g, row) in lam.iter().enumerate() {
        let mut hit = vec![false; n];
        for &x in row {
            if x >= n || std::mem::replace(&mut hit[x], true) {
                return Err(Error::ActionNotHomomorphism(format!(
                    "lambda_{g} is not a permutation of B"
                )));
            }
        }
        for x in 0..n {
            for y in 0..n {
                if row[b.op(x, y)] != b.op(row[x], row[y]) {
                    return Err(Error::ActionNotHomomorphism(format!(
                        "lambda_{g} is not additive at ({x}, {y})"
                    )));
                }
            }
        }
    }
    for g in 0..n {
        for h in 0..n {
            let gh = c.op(g, h);
            if (0..n).any(|x| lam[gh][x] != lam[g][lam[h][x]]) {
                return Err(Error::ActionNotHomomorphism(format!(
                    "lambda_({g}{h}) differs from lambda_{g} lambda_{h}"
                )));
            }
        }
    }
    if spec.delta.len() != n {
        return Err(Error::DeltaNotBijective(format!(
            "delta has {} entries for |C| = {n}",
            spec.delta.len()
        )));
    }
    let mut delta_inv = vec![usize::MAX; n];
    for (g, &d) in spec.delta.iter().enumerate() {
        if d >= n {
            return Err(Error::IndexOutOfRange { index: d, order: n });
        }
        if delta_inv[d] != usize::MAX {
            return Err(Error::DeltaNotBijective(format!(
                "delta takes the value {d} twice"
            )));
        }
        delta_inv[d] = g;
    }
    let delta = &spec.delta;
    for g in 0..n {
        for h in 0..n {
            if delta[c.op(g, h)] != b.op(delta[g], lam[g][delta[h]]) {
                return Err(Error::CocycleIdentityFailure { c: g, d: h });
            }
        }
    }
    let mut mul = vec![0u8; n * n];
    for x in 0..n {
        for y in 0..n {
            mul[x * n + y] = delta[c.op(delta_inv[x], delta_inv[y])] as u8;
        }
    }
    FiniteBrace::from_flat(n, b.flat().to_vec(), mul, spec.name.clone())
}
