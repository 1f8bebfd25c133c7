//! Ideal-closure series and subideals, indices, idealiser reports and the
//! strong-left-ideal normaliser.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bitset::ElemSet;
use crate::brace::FiniteBrace;
use crate::error::{Error, Result};
use crate::series::{derived_length, nilpotency_class};
use crate::substructure::{
    all_substructures, classify, classify_within, closure_within, extremal_of, subbrace_closure,
    Direction, Kind,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureSeries {
    /// `C^{B,0} = B ⊇ C^{B,1} ⊇ …`, up to the first repeated member.
    pub chain: Vec<ElemSet>,
    pub stabilised: bool,
    /// Index of the first member equal to `C`, if any.
    pub defect: Option<usize>,
}

impl ClosureSeries {
    pub fn is_subideal(&self) -> bool {
        self.defect.is_some()
    }

    pub fn terminal(&self) -> ElemSet {
        *self.chain.last().unwrap()
    }
}

fn require_subbrace(b: &FiniteBrace, c: ElemSet) -> Result<()> {
    if classify(b, c).flags.subbrace {
        Ok(())
    } else {
        Err(Error::NotASubbrace)
    }
}

/// `C^{B,k+1}` is the ideal closure of `C` inside `C^{B,k}`.
pub fn ideal_closure_series(b: &FiniteBrace, c: ElemSet) -> Result<ClosureSeries> {
    require_subbrace(b, c)?;
    Ok(closure_series_within(b, b.elements(), c))
}

pub(crate) fn closure_series_within(
    b: &FiniteBrace,
    ambient: ElemSet,
    c: ElemSet,
) -> ClosureSeries {
    let mut chain = vec![ambient];
    let mut cur = ambient;
    loop {
        let next = closure_within(b, Kind::Ideal, cur, ElemSet::empty(), c);
        if next == cur {
            break;
        }
        chain.push(next);
        cur = next;
    }
    let defect = chain.iter().position(|&s| s == c);
    ClosureSeries {
        chain,
        stabilised: true,
        defect,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexReport {
    pub additive_index: usize,
    pub multiplicative_index: usize,
    pub common_index: Option<usize>,
    pub subideal: bool,
    pub defect: Option<usize>,
}

/// `|B : C|` in both groups (equal by Lagrange on the shared carrier).
pub fn index_of(b: &FiniteBrace, c: ElemSet) -> Result<IndexReport> {
    let series = ideal_closure_series(b, c)?;
    let idx = b.order() / c.len();
    Ok(IndexReport {
        additive_index: idx,
        multiplicative_index: idx,
        common_index: Some(idx),
        subideal: series.is_subideal(),
        defect: series.defect,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealiserReport {
    /// Every subbrace `N ⊇ S` in which `S` is an ideal.
    pub family: Vec<ElemSet>,
    /// The inclusion-maximal members of `family`.
    pub maximal: Vec<ElemSet>,
    /// The largest member, when one exists.
    pub idealiser: Option<ElemSet>,
    /// Two maximal members whose join does not have `S` as an ideal.
    pub witnesses: Option<(ElemSet, ElemSet)>,
    pub witness_join: Option<ElemSet>,
}

pub fn idealiser_report(b: &FiniteBrace, s: ElemSet) -> Result<IdealiserReport> {
    require_subbrace(b, s)?;
    let family: Vec<ElemSet> = all_substructures(b, Kind::Subbrace)
        .into_iter()
        .map(|n| n.bits)
        .filter(|&n| s.is_subset(n) && classify_within(b, n, s).ideal)
        .collect();
    let maximal: Vec<ElemSet> = family
        .iter()
        .copied()
        .filter(|&n| !family.iter().any(|&m| m != n && n.is_subset(m)))
        .collect();
    let idealiser = (maximal.len() == 1).then(|| maximal[0]);
    let mut witnesses = None;
    let mut witness_join = None;
    'outer: for (k, &t) in maximal.iter().enumerate() {
        for &u in &maximal[k + 1..] {
            let join = subbrace_closure(b, t.union(u)).bits;
            if !classify_within(b, join, s).ideal {
                witnesses = Some((t, u));
                witness_join = Some(join);
                break 'outer;
            }
        }
    }
    Ok(IdealiserReport {
        family,
        maximal,
        idealiser,
        witnesses,
        witness_join,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormaliserReport {
    /// Strong left ideals normalising `C` in both groups and under λ.
    pub qualifying: Vec<ElemSet>,
    /// The largest qualifying member; absent if there are several maximal ones.
    pub normaliser: Option<ElemSet>,
    pub maximal: Vec<ElemSet>,
    pub contains_c: bool,
}

fn normalises(b: &FiniteBrace, n: ElemSet, c: ElemSet) -> bool {
    n.iter().all(|x| {
        let add: ElemSet = c.iter().map(|y| b.sub(b.add(x, y), x)).collect();
        let mul: ElemSet = c.iter().map(|y| b.mul(b.mul(x, y), b.inv(x))).collect();
        let lam: ElemSet = c.iter().map(|y| b.lambda(x, y)).collect();
        add == c && mul == c && lam == c
    })
}

/// Largest strong left ideal `N` with `(N,+)` normalising `(C,+)`, `(N,·)`
/// normalising `(C,·)` and `λ_x(C) = C` for `x ∈ N`.
pub fn strong_left_normaliser(b: &FiniteBrace, c: ElemSet) -> Result<NormaliserReport> {
    require_subbrace(b, c)?;
    let qualifying: Vec<ElemSet> = all_substructures(b, Kind::StrongLeftIdeal)
        .into_iter()
        .map(|n| n.bits)
        .filter(|&n| normalises(b, n, c))
        .collect();
    let maximal: Vec<ElemSet> = qualifying
        .iter()
        .copied()
        .filter(|&n| !qualifying.iter().any(|&m| m != n && n.is_subset(m)))
        .collect();
    let normaliser = (maximal.len() == 1).then(|| maximal[0]);
    Ok(NormaliserReport {
        contains_c: normaliser.is_some_and(|n| c.is_subset(n)),
        qualifying,
        normaliser,
        maximal,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditEntry {
    pub subbrace: ElemSet,
    pub order: usize,
    pub subideal: bool,
    pub defect: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditReport {
    pub entries: Vec<AuditEntry>,
    pub all_subideal: bool,
    pub nilpotency_class: Option<usize>,
    pub derived_length: Option<usize>,
}

impl AuditReport {
    pub fn soluble(&self) -> bool {
        self.derived_length.is_some()
    }
}

/// Closure series of every subbrace.
pub fn subideal_audit(b: &FiniteBrace) -> Result<AuditReport> {
    let subs = all_substructures(b, Kind::Subbrace);
    let entries: Vec<AuditEntry> = subs
        .par_iter()
        .map(|s| {
            let series = closure_series_within(b, b.elements(), s.bits);
            AuditEntry {
                subbrace: s.bits,
                order: s.len(),
                subideal: series.is_subideal(),
                defect: series.defect,
            }
        })
        .collect();
    Ok(AuditReport {
        all_subideal: entries.iter().all(|e| e.subideal),
        entries,
        nilpotency_class: nilpotency_class(b)?,
        derived_length: derived_length(b)?,
    })
}

/// Maximal proper subbraces.
pub fn maximal_subbraces(b: &FiniteBrace) -> Vec<ElemSet> {
    let family: Vec<ElemSet> = all_substructures(b, Kind::Subbrace)
        .into_iter()
        .map(|s| s.bits)
        .collect();
    extremal_of(&family, b.elements(), Direction::Maximal)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::trivial_brace;
    use crate::group::{groups_of_order, Group};

    #[test]
    fn whole_brace_and_ideals() {
        let b = trivial_brace(&Group::cyclic(4).rows()).unwrap();
        assert_eq!(
            ideal_closure_series(&b, b.elements()).unwrap().defect,
            Some(0)
        );
        let half: ElemSet = [0, 2].into_iter().collect();
        assert_eq!(ideal_closure_series(&b, half).unwrap().defect, Some(1));
        assert_eq!(index_of(&b, half).unwrap().common_index, Some(2));
    }

    #[test]
    fn transpositions_of_s3_are_not_subideal() {
        let s3 = groups_of_order(6)
            .unwrap()
            .into_iter()
            .find(|g| !g.is_abelian())
            .unwrap();
        let b = trivial_brace(&s3.rows()).unwrap();
        let audit = subideal_audit(&b).unwrap();
        let order_two: Vec<_> = audit.entries.iter().filter(|e| e.order == 2).collect();
        assert_eq!(order_two.len(), 3);
        assert!(order_two.iter().all(|e| !e.subideal));
        assert!(!audit.all_subideal);
    }

    #[test]
    fn normaliser_of_zero_is_everything() {
        let b = trivial_brace(&Group::cyclic(6).rows()).unwrap();
        let r = strong_left_normaliser(&b, ElemSet::singleton(0)).unwrap();
        assert_eq!(r.normaliser, Some(b.elements()));
        let r = idealiser_report(&b, ElemSet::singleton(0)).unwrap();
        assert_eq!(r.idealiser, Some(b.elements()));
    }

    #[test]
    fn non_subbrace_rejected() {
        let b = trivial_brace(&Group::cyclic(4).rows()).unwrap();
        let s: ElemSet = [0, 1].into_iter().collect();
        assert!(matches!(
            ideal_closure_series(&b, s),
            Err(Error::NotASubbrace)
        ));
    }
}
