//! Fixture files: a brace given by a bijective 1-cocycle over a product of
//! cyclic groups, named subsets, and a manifest of claims about it.
//!
//! The actor group is given by a presentation; the action lists the images
//! of the additive generators under each presentation generator, and the
//! cocycle lists `[word, value]` rows, one per element of the actor.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::bitset::ElemSet;
use crate::brace::FiniteBrace;
use crate::construct::presentation::{parse_word, CosetTable, CyclicProduct};
use crate::construct::{from_cocycle, CocycleSpec};
use crate::error::{Error, Result};
use crate::substructure::additive_span;

/// Coset enumeration gives up beyond this many live cosets.
const COSET_LIMIT: usize = 1 << 16;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdditiveSpec {
    pub generators: Vec<String>,
    pub orders: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActorSpec {
    pub generators: Vec<String>,
    pub relators: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Claim {
    pub id: String,
    pub criterion: u32,
    pub op: String,
    #[serde(default)]
    pub args: Map<String, Value>,
    pub expect: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FixtureFile {
    pub id: String,
    #[serde(default)]
    pub description: String,
    /// Absent for manifests whose claims quantify over enumerated braces.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub additive: Option<AdditiveSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub actor: Option<ActorSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub action: BTreeMap<String, Vec<String>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub delta: Vec<[String; 2]>,
    /// Named additive subgroups, each given by generators.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub sets: BTreeMap<String, Vec<String>>,
    pub claims: Vec<Claim>,
}

/// A fixture with its brace constructed and its named sets resolved.
#[derive(Clone, Debug)]
pub struct Fixture {
    pub file: FixtureFile,
    pub brace: FiniteBrace,
    pub additive: CyclicProduct,
    /// Named sets, always including `"0"` and `"B"`.
    pub sets: BTreeMap<String, ElemSet>,
}

impl FixtureFile {
    pub fn parse(text: &str) -> Result<FixtureFile> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn has_brace(&self) -> bool {
        self.additive.is_some()
    }

    pub fn cocycle_spec(&self) -> Result<(CocycleSpec, CyclicProduct)> {
        let (Some(add), Some(act)) = (&self.additive, &self.actor) else {
            return Err(Error::Parse(format!(
                "fixture `{}` has no cocycle data",
                self.id
            )));
        };
        if add.generators.len() != add.orders.len() || add.orders.contains(&0) {
            return Err(Error::Parse(
                "additive generators and orders do not match".into(),
            ));
        }
        let cp = CyclicProduct {
            generators: add.generators.clone(),
            orders: add.orders.clone(),
        };
        let n = cp.order();
        let relators = act
            .relators
            .iter()
            .map(|r| parse_word(r, &act.generators))
            .collect::<Result<Vec<_>>>()?;
        let table = CosetTable::enumerate(&act.generators, &relators, COSET_LIMIT)?;
        if table.order() != n {
            return Err(Error::DeltaNotBijective(format!(
                "the actor has order {} but the additive group {n}",
                table.order()
            )));
        }
        let actor = table.group()?;

        // generator automorphisms and their inverses
        let mut gens = Vec::with_capacity(act.generators.len());
        for g in &act.generators {
            let images = self
                .action
                .get(g)
                .ok_or_else(|| Error::Parse(format!("no action given for generator `{g}`")))?;
            if images.len() != cp.generators.len() {
                return Err(Error::Parse(format!(
                    "action of `{g}` must list {} images",
                    cp.generators.len()
                )));
            }
            let imgs = images
                .iter()
                .map(|s| cp.parse_coordinates(s))
                .collect::<Result<Vec<_>>>()?;
            let perm: Vec<usize> = (0..n)
                .map(|x| {
                    let coords = cp.coordinates(x);
                    let mut v = vec![0i64; coords.len()];
                    for (c, img) in coords.iter().zip(&imgs) {
                        for (vi, &ii) in v.iter_mut().zip(img) {
                            *vi += *c as i64 * ii;
                        }
                    }
                    cp.index(&v)
                })
                .collect();
            let mut inverse = vec![usize::MAX; n];
            for (x, &y) in perm.iter().enumerate() {
                if inverse[y] != usize::MAX {
                    return Err(Error::ActionNotHomomorphism(format!(
                        "the action of `{g}` is not bijective"
                    )));
                }
                inverse[y] = x;
            }
            gens.push((perm, inverse));
        }

        // λ_c = λ_{s_1} ∘ … ∘ λ_{s_k} for the representative word s_1 … s_k of c
        let action: Vec<Vec<usize>> = (0..n)
            .map(|c| {
                let word = table.word_of(c);
                (0..n)
                    .map(|x| {
                        word.iter().rev().fold(
                            x,
                            |y, &(g, e)| if e > 0 { gens[g].0[y] } else { gens[g].1[y] },
                        )
                    })
                    .collect()
            })
            .collect();

        let mut delta = vec![usize::MAX; n];
        for [w, v] in &self.delta {
            let c = table.element(&parse_word(w, &act.generators)?);
            if delta[c] != usize::MAX {
                return Err(Error::DeltaNotBijective(format!(
                    "the cocycle lists `{w}` twice"
                )));
            }
            delta[c] = cp.parse(v)?;
        }
        if let Some(c) = delta.iter().position(|&d| d == usize::MAX) {
            let w: Vec<String> = table
                .word_of(c)
                .iter()
                .map(|&(g, e)| format!("{}^{e}", act.generators[g]))
                .collect();
            return Err(Error::DeltaNotBijective(format!(
                "no cocycle value for actor element `{}`",
                w.join(" ")
            )));
        }
        let spec = CocycleSpec {
            additive: cp.group(),
            actor,
            action,
            delta,
            name: Some(self.id.clone()),
        };
        Ok((spec, cp))
    }

    pub fn build(&self) -> Result<Fixture> {
        let (spec, cp) = self.cocycle_spec()?;
        let brace = from_cocycle(&spec)?;
        let mut sets = BTreeMap::new();
        sets.insert("0".to_string(), ElemSet::singleton(0));
        sets.insert("B".to_string(), brace.elements());
        for (name, gens) in &self.sets {
            let g = gens
                .iter()
                .map(|s| cp.parse(s))
                .collect::<Result<ElemSet>>()?;
            sets.insert(name.clone(), additive_span(&brace, g));
        }
        Ok(Fixture {
            file: self.clone(),
            brace,
            additive: cp,
            sets,
        })
    }
}

impl Fixture {
    pub fn set(&self, name: &str) -> Result<ElemSet> {
        self.sets
            .get(name)
            .copied()
            .ok_or_else(|| Error::Parse(format!("fixture `{}` has no set `{name}`", self.file.id)))
    }

    /// The name of `s` among the fixture's sets, if it has one.
    pub fn name_of(&self, s: ElemSet) -> Option<&str> {
        self.sets
            .iter()
            .find(|(_, &v)| v == s)
            .map(|(k, _)| k.as_str())
    }

    pub fn render(&self, x: usize) -> String {
        self.additive.render(x)
    }
}

const BUILTIN: [(&str, &str); 6] = [
    ("b16", include_str!("../fixtures/b16.json")),
    ("b32a", include_str!("../fixtures/b32a.json")),
    ("b32b", include_str!("../fixtures/b32b.json")),
    ("b24", include_str!("../fixtures/b24.json")),
    ("b32c", include_str!("../fixtures/b32c.json")),
    ("enumeration", include_str!("../fixtures/enumeration.json")),
];

/// The fixtures shipped with the crate.
pub fn builtin() -> Vec<FixtureFile> {
    BUILTIN
        .iter()
        .map(|(id, text)| {
            FixtureFile::parse(text).unwrap_or_else(|e| panic!("builtin fixture {id}: {e}"))
        })
        .collect()
}

pub fn builtin_fixture(id: &str) -> Option<FixtureFile> {
    BUILTIN
        .iter()
        .find(|(k, _)| *k == id)
        .map(|(_, text)| FixtureFile::parse(text).expect("builtin fixture parses"))
}

/// Raw text of the shipped fixtures, keyed by file name.
pub fn builtin_sources() -> Vec<(String, &'static str)> {
    BUILTIN
        .iter()
        .map(|(id, text)| (format!("{id}.json"), *text))
        .collect()
}

/// Every `*.json` file of a directory, in file-name order.
pub fn load_dir(dir: &Path) -> Result<Vec<FixtureFile>> {
    let mut paths: Vec<_> = std::fs::read_dir(dir)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", dir.display())))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    paths.sort();
    paths
        .iter()
        .map(|p| {
            let text = std::fs::read_to_string(p)
                .map_err(|e| Error::Parse(format!("cannot read {}: {e}", p.display())))?;
            FixtureFile::parse(&text).map_err(|e| Error::Parse(format!("{}: {e}", p.display())))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_fixtures_build() {
        for f in builtin().into_iter().filter(FixtureFile::has_brace) {
            let fx = f.build().unwrap_or_else(|e| panic!("{}: {e}", f.id));
            assert_eq!(
                fx.brace.order(),
                fx.file
                    .claims
                    .iter()
                    .find(|c| c.op == "order")
                    .unwrap()
                    .expect
                    .as_u64()
                    .unwrap() as usize
            );
        }
    }

    #[test]
    fn corrupted_cocycle_is_rejected() {
        let mut f = builtin_fixture("b16").unwrap();
        f.delta[3][1] = "x".into();
        assert!(f.build().is_err());
    }
}
