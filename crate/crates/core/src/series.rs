//! Central, derived, chief and relative (B-central) series.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bitset::ElemSet;
use crate::brace::FiniteBrace;
use crate::commutator::commutator_ideal;
use crate::construct::quotient;
use crate::error::{inconsistent, Error, Result};
use crate::radicals::centre;
use crate::substructure::{classify, core_of, extremal_of, ideals, Direction, SubSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SeriesKind {
    UpperCentral,
    LowerCentral,
    Derived,
    Chief,
    BLower,
    BUpper,
    IdealClosure,
}

impl SeriesKind {
    pub fn parse(s: &str) -> Option<SeriesKind> {
        Some(match s.replace('-', "_").as_str() {
            "upper" | "upper_central" => SeriesKind::UpperCentral,
            "lower" | "lower_central" => SeriesKind::LowerCentral,
            "derived" => SeriesKind::Derived,
            "chief" => SeriesKind::Chief,
            "b_lower" => SeriesKind::BLower,
            "b_upper" => SeriesKind::BUpper,
            "ideal_closure" => SeriesKind::IdealClosure,
            _ => return None,
        })
    }
}

/// A chain of subsets, computed until it stops changing. The repeated member
/// that witnessed stabilisation is not stored twice.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Series {
    pub kind: SeriesKind,
    pub chain: Vec<SubSet>,
    pub stabilised: bool,
    pub terminal: SubSet,
}

impl Series {
    fn build(
        b: &FiniteBrace,
        kind: SeriesKind,
        start: ElemSet,
        mut step: impl FnMut(ElemSet) -> Result<ElemSet>,
    ) -> Result<Series> {
        let mut chain = vec![classify(b, start)];
        let mut cur = start;
        // Strictly monotone chains in a set of size n have at most n + 1 members.
        for _ in 0..=b.order() {
            let next = step(cur)?;
            if next == cur {
                let terminal = *chain.last().unwrap();
                return Ok(Series {
                    kind,
                    chain,
                    stabilised: true,
                    terminal,
                });
            }
            chain.push(classify(b, next));
            cur = next;
        }
        Err(inconsistent(
            "series",
            format!("{kind:?} series failed to stabilise"),
        ))
    }

    pub fn len(&self) -> usize {
        self.chain.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chain.is_empty()
    }

    pub fn position(&self, s: ElemSet) -> Option<usize> {
        self.chain.iter().position(|m| m.bits == s)
    }

    /// `chain[k]`, or the terminal member for indices past stabilisation.
    pub fn term(&self, k: usize) -> ElemSet {
        self.chain.get(k).unwrap_or(&self.terminal).bits
    }
}

fn require_ideal(b: &FiniteBrace, i: ElemSet) -> Result<()> {
    if classify(b, i).flags.ideal {
        Ok(())
    } else {
        Err(Error::NotAnIdeal)
    }
}

fn lift(proj: &[usize], image: ElemSet) -> ElemSet {
    (0..proj.len())
        .filter(|&x| image.contains(proj[x]))
        .collect()
}

fn project(proj: &[usize], s: ElemSet) -> ElemSet {
    s.iter().map(|x| proj[x]).collect()
}

/// `ζ_{k+1}/ζ_k = ζ(B/ζ_k)`, starting from `{0}`.
pub fn upper_central_series(b: &FiniteBrace) -> Result<Series> {
    Series::build(b, SeriesKind::UpperCentral, ElemSet::singleton(0), |cur| {
        let (q, proj) = quotient(b, cur)?;
        Ok(lift(&proj, centre(&q)))
    })
}

/// `Γ_1 = B`, `Γ_{k+1} = [Γ_k, B]^B`.
pub fn lower_central_series(b: &FiniteBrace) -> Result<Series> {
    let all = b.elements();
    Series::build(b, SeriesKind::LowerCentral, all, |cur| {
        Ok(commutator_ideal(b, cur, all)?.bits)
    })
}

/// `∂_0 = I`, `∂_{k+1} = [∂_k, ∂_k]^B`; `I` defaults to `B`.
pub fn derived_series(b: &FiniteBrace, i: Option<ElemSet>) -> Result<Series> {
    let start = i.unwrap_or_else(|| b.elements());
    require_ideal(b, start)?;
    Series::build(b, SeriesKind::Derived, start, |cur| {
        Ok(commutator_ideal(b, cur, cur)?.bits)
    })
}

/// Index of the first zero member of the derived series.
pub fn derived_length(b: &FiniteBrace) -> Result<Option<usize>> {
    Ok(derived_series(b, None)?.position(ElemSet::singleton(0)))
}

/// Smallest `n` with `ζ_n = B`, checked against the smallest `n` with `Γ_{n+1} = 0`.
pub fn nilpotency_class(b: &FiniteBrace) -> Result<Option<usize>> {
    let upper = upper_central_series(b)?.position(b.elements());
    let lower = lower_central_series(b)?.position(ElemSet::singleton(0));
    if upper != lower {
        return Err(inconsistent(
            "nilpotency_class",
            format!("upper central series gives {upper:?}, lower central series gives {lower:?}"),
        ));
    }
    Ok(upper)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ChiefStrategy {
    /// Always take the minimal ideal whose sorted element list is smallest.
    Lexicographic,
    /// Take a pseudo-random minimal ideal; used to get a second, different chain.
    Seeded(u64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChiefFactor {
    pub lower: ElemSet,
    pub upper: ElemSet,
    pub order: usize,
    /// `upper/lower ⊆ ζ(B/lower)`.
    pub central: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChiefSeries {
    pub series: Series,
    pub factors: Vec<ChiefFactor>,
}

impl ChiefSeries {
    pub fn all_central(&self) -> bool {
        self.factors.iter().all(|f| f.central)
    }

    pub fn factor_orders(&self) -> Vec<usize> {
        self.factors.iter().map(|f| f.order).collect()
    }
}

/// An ascending chain `0 = J_0 < J_1 < … < J_m = B` of ideals of `B` in which
/// each `J_{k+1}/J_k` is a minimal ideal of `B/J_k`.
pub fn chief_series(b: &FiniteBrace, strategy: ChiefStrategy) -> Result<ChiefSeries> {
    let mut rng = match strategy {
        ChiefStrategy::Seeded(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        ChiefStrategy::Lexicographic => None,
    };
    let all = b.elements();
    let mut cur = ElemSet::singleton(0);
    let mut chain = vec![classify(b, cur)];
    let mut factors = Vec::new();
    while cur != all {
        let (q, proj) = quotient(b, cur)?;
        let family = ideals(&q);
        let mut minimal = extremal_of(&family, q.elements(), Direction::Minimal);
        minimal.sort_by_key(|m| m.to_vec());
        let choice = match rng.as_mut() {
            Some(r) => *minimal
                .choose(r)
                .expect("a non-zero quotient has a minimal ideal"),
            None => minimal[0],
        };
        let next = lift(&proj, choice);
        factors.push(ChiefFactor {
            lower: cur,
            upper: next,
            order: choice.len(),
            central: choice.is_subset(centre(&q)),
        });
        chain.push(classify(b, next));
        cur = next;
    }
    let terminal = *chain.last().unwrap();
    Ok(ChiefSeries {
        series: Series {
            kind: SeriesKind::Chief,
            chain,
            stabilised: true,
            terminal,
        },
        factors,
    })
}

/// Centre of `I` regarded as a brace on its own, as a subset of `B`.
pub fn centre_of_ideal(b: &FiniteBrace, i: ElemSet) -> Result<ElemSet> {
    let (sub, emb) = b.induced(i)?;
    Ok(centre(&sub).iter().map(|x| emb[x]).collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BDirection {
    Lower,
    Upper,
}

/// Lower: `Γ_1(I) = I`, `Γ_{k+1}(I) = [Γ_k(I), I]^B`. Upper: `ζ_0(I) = 0` and
/// `ζ_{k+1}(I)/ζ_k(I)` the largest ideal of `B/ζ_k(I)` inside `ζ(I/ζ_k(I))`.
pub fn b_central_series(b: &FiniteBrace, i: ElemSet, direction: BDirection) -> Result<Series> {
    require_ideal(b, i)?;
    match direction {
        BDirection::Lower => Series::build(b, SeriesKind::BLower, i, |cur| {
            Ok(commutator_ideal(b, cur, i)?.bits)
        }),
        BDirection::Upper => Series::build(b, SeriesKind::BUpper, ElemSet::singleton(0), |cur| {
            let (q, proj) = quotient(b, cur)?;
            let image = project(&proj, i);
            let z = centre_of_ideal(&q, image)?;
            Ok(lift(&proj, core_of(&q, z)?.bits))
        }),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BCentralVerdict {
    pub nilpotent: bool,
    /// Smallest `n` with `Γ_{n+1}(I)^B = 0`.
    pub class: Option<usize>,
    /// Smallest `n` with `ζ_n(I)^B = I`.
    pub upper_class: Option<usize>,
}

/// Whether `I` is B-centrally nilpotent; both series must agree.
pub fn b_central_verdict(b: &FiniteBrace, i: ElemSet) -> Result<BCentralVerdict> {
    let class = b_central_series(b, i, BDirection::Lower)?.position(ElemSet::singleton(0));
    let upper_class = b_central_series(b, i, BDirection::Upper)?.position(i);
    if class != upper_class {
        return Err(inconsistent(
            "b_central_verdict",
            format!("lower series gives class {class:?}, upper series gives {upper_class:?}"),
        ));
    }
    Ok(BCentralVerdict {
        nilpotent: class.is_some(),
        class,
        upper_class,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::trivial_brace;
    use crate::group::Group;

    fn trivial_of(g: &Group) -> FiniteBrace {
        trivial_brace(&g.rows()).unwrap()
    }

    #[test]
    fn zero_brace_has_class_zero() {
        let b = trivial_of(&Group::trivial());
        assert_eq!(nilpotency_class(&b).unwrap(), Some(0));
        assert_eq!(derived_length(&b).unwrap(), Some(0));
    }

    #[test]
    fn trivial_abelian_brace_has_class_one() {
        let b = trivial_of(&Group::cyclic(6));
        let up = upper_central_series(&b).unwrap();
        assert_eq!(up.chain.len(), 2);
        assert_eq!(up.terminal.bits, b.elements());
        assert_eq!(nilpotency_class(&b).unwrap(), Some(1));
        assert_eq!(derived_length(&b).unwrap(), Some(1));
    }

    #[test]
    fn trivial_brace_on_s3_is_not_nilpotent() {
        let s3 = crate::group::groups_of_order(6)
            .unwrap()
            .into_iter()
            .find(|g| !g.is_abelian())
            .unwrap();
        let b = trivial_of(&s3);
        assert_eq!(nilpotency_class(&b).unwrap(), None);
        assert_eq!(derived_length(&b).unwrap(), Some(2));
        let chief = chief_series(&b, ChiefStrategy::Lexicographic).unwrap();
        assert_eq!(chief.factor_orders(), vec![3, 2]);
        assert!(!chief.all_central());
    }

    #[test]
    fn chief_series_of_cyclic_p() {
        let b = trivial_of(&Group::cyclic(5));
        let c = chief_series(&b, ChiefStrategy::Seeded(3)).unwrap();
        assert_eq!(c.factor_orders(), vec![5]);
        assert!(c.all_central());
    }
}
