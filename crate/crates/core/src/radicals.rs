//! Distinguished ideals (socle, fix, centre, kernel of λ), Fitting and
//! Frattini ideals, centralisers, Sylow decomposition and element orders.

use serde::{Deserialize, Serialize};

use crate::bitset::ElemSet;
use crate::brace::FiniteBrace;
use crate::commutator::commutator_ideal;
use crate::construct::direct_product;
use crate::error::{inconsistent, Error, Result};
use crate::group::{lcm, prime_factors};
use crate::series::{
    b_central_verdict, centre_of_ideal, chief_series, nilpotency_class, ChiefSeries, ChiefStrategy,
};
use crate::substructure::{
    additive_span, all_substructures, classify, extremal_of, ideal_closure, ideals,
    subbrace_closure, Direction, Kind, SubSet,
};

/// `{a : ab = a + b = b + a for all b}`.
pub fn socle(b: &FiniteBrace) -> ElemSet {
    (0..b.order())
        .filter(|&a| {
            (0..b.order()).all(|x| b.mul(a, x) == b.add(a, x) && b.add(a, x) == b.add(x, a))
        })
        .collect()
}

/// `{a : λ_x(a) = a for all x}`.
pub fn fix(b: &FiniteBrace) -> ElemSet {
    (0..b.order())
        .filter(|&a| (0..b.order()).all(|x| b.lambda(x, a) == a))
        .collect()
}

/// `{a : λ_a = id}`.
pub fn kernel_lambda(b: &FiniteBrace) -> ElemSet {
    (0..b.order())
        .filter(|&a| (0..b.order()).all(|x| b.lambda(a, x) == x))
        .collect()
}

/// Socle ∩ fix: elements with `a + x = x + a = ax = xa` for every `x`.
pub fn centre(b: &FiniteBrace) -> ElemSet {
    (0..b.order())
        .filter(|&a| {
            (0..b.order()).all(|x| {
                let s = b.add(a, x);
                s == b.add(x, a) && s == b.mul(a, x) && s == b.mul(x, a)
            })
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Distinguished {
    Socle,
    Fix,
    Centre,
    KernelLambda,
}

impl Distinguished {
    pub const ALL: [Distinguished; 4] = [
        Distinguished::Socle,
        Distinguished::Fix,
        Distinguished::Centre,
        Distinguished::KernelLambda,
    ];
}

/// The requested set with its classification; socle and centre must be
/// ideals and fix a left ideal.
pub fn distinguished_ideal(b: &FiniteBrace, which: Distinguished) -> Result<SubSet> {
    let (set, need) = match which {
        Distinguished::Socle => (socle(b), Kind::Ideal),
        Distinguished::Fix => (fix(b), Kind::LeftIdeal),
        Distinguished::Centre => (centre(b), Kind::Ideal),
        Distinguished::KernelLambda => (kernel_lambda(b), Kind::Subbrace),
    };
    let s = classify(b, set);
    if !s.flags.has(need) {
        return Err(inconsistent(
            "distinguished_ideal",
            format!("{which:?} is not a {need:?}"),
        ));
    }
    if which == Distinguished::Centre && set != socle(b).intersection(fix(b)) {
        return Err(inconsistent(
            "distinguished_ideal",
            "centre differs from socle ∩ fix",
        ));
    }
    Ok(s)
}

fn sum_of(b: &FiniteBrace, family: impl IntoIterator<Item = ElemSet>) -> ElemSet {
    additive_span(
        b,
        family
            .into_iter()
            .fold(ElemSet::singleton(0), ElemSet::union),
    )
}

/// The ideals of `B` that are B-centrally nilpotent.
pub fn b_centrally_nilpotent_ideals(b: &FiniteBrace) -> Result<Vec<(ElemSet, usize)>> {
    let mut out = Vec::new();
    for i in ideals(b) {
        if let Some(c) = b_central_verdict(b, i)?.class {
            out.push((i, c));
        }
    }
    Ok(out)
}

/// Sum of all B-centrally nilpotent ideals; the sum is checked to be one itself.
pub fn fitting_ideal(b: &FiniteBrace) -> Result<SubSet> {
    let fit = sum_of(
        b,
        b_centrally_nilpotent_ideals(b)?.into_iter().map(|(i, _)| i),
    );
    let s = classify(b, fit);
    if !s.flags.ideal || !b_central_verdict(b, fit)?.nilpotent {
        return Err(inconsistent(
            "fitting_ideal",
            "the sum of the B-centrally nilpotent ideals is not one",
        ));
    }
    Ok(s)
}

pub fn maximal_left_ideals(b: &FiniteBrace) -> Vec<ElemSet> {
    let family: Vec<ElemSet> = all_substructures(b, Kind::LeftIdeal)
        .into_iter()
        .map(|s| s.bits)
        .collect();
    extremal_of(&family, b.elements(), Direction::Maximal)
}

/// Intersection of the maximal left ideals (`B` if there are none) with `Fit(B)`.
pub fn frattini_ideal(b: &FiniteBrace) -> Result<SubSet> {
    let meet = maximal_left_ideals(b)
        .into_iter()
        .fold(b.elements(), ElemSet::intersection);
    let s = classify(b, meet.intersection(fitting_ideal(b)?.bits));
    if !s.flags.ideal {
        return Err(inconsistent("frattini_ideal", "Frat(B) is not an ideal"));
    }
    Ok(s)
}

/// Elements `x` such that `⟨S, x⟩ = B` forces `S = B` for every subbrace `S`.
pub fn non_generators(b: &FiniteBrace) -> ElemSet {
    let all = b.elements();
    let proper: Vec<ElemSet> = all_substructures(b, Kind::Subbrace)
        .into_iter()
        .map(|s| s.bits)
        .filter(|&s| s != all)
        .collect();
    (0..b.order())
        .filter(|&x| {
            proper
                .iter()
                .all(|&s| subbrace_closure(b, s.union(ElemSet::singleton(x))).bits != all)
        })
        .collect()
}

/// Largest ideal `K` with `[K, I]^B ⊆ J` (`J = 0` by default).
pub fn centraliser(b: &FiniteBrace, i: ElemSet, modulo: Option<ElemSet>) -> Result<SubSet> {
    let family = ideals(b);
    centraliser_in(b, &family, i, modulo)
}

pub(crate) fn centraliser_in(
    b: &FiniteBrace,
    family: &[ElemSet],
    i: ElemSet,
    modulo: Option<ElemSet>,
) -> Result<SubSet> {
    let j = modulo.unwrap_or(ElemSet::singleton(0));
    if !family.contains(&i) || !family.contains(&j) {
        return Err(Error::NotAnIdeal);
    }
    if !j.is_subset(i) {
        return Err(Error::NotNested);
    }
    let mut qualifying = Vec::new();
    for &k in family {
        if commutator_ideal(b, k, i)?.bits.is_subset(j) {
            qualifying.push(k);
        }
    }
    let sum = sum_of(b, qualifying.iter().copied());
    if !qualifying.contains(&sum) {
        return Err(inconsistent(
            "centraliser",
            "the centralising ideals have no largest member",
        ));
    }
    Ok(classify(b, sum))
}

/// Intersection of the centralisers of the factors of a chief series.
pub fn chief_centraliser_meet(b: &FiniteBrace, chief: &ChiefSeries) -> Result<ElemSet> {
    let family = ideals(b);
    let mut meet = b.elements();
    for f in &chief.factors {
        meet = meet.intersection(centraliser_in(b, &family, f.upper, Some(f.lower))?.bits);
    }
    Ok(meet)
}

/// Largest ideal centralising every chief factor, computed along two
/// different chief series which must agree.
pub fn zeta_b_radical(b: &FiniteBrace) -> Result<SubSet> {
    let first = chief_centraliser_meet(b, &chief_series(b, ChiefStrategy::Lexicographic)?)?;
    let second = chief_centraliser_meet(b, &chief_series(b, ChiefStrategy::Seeded(0x5eed))?)?;
    if first != second {
        return Err(inconsistent(
            "zeta_b_radical",
            format!("two chief series give different radicals {first:?} and {second:?}"),
        ));
    }
    Ok(classify(b, first))
}

/// An ideal is an abelian brace iff `[I, I]^B = 0`.
pub fn is_abelian_ideal(b: &FiniteBrace, i: ElemSet) -> Result<bool> {
    Ok(commutator_ideal(b, i, i)?.bits == ElemSet::singleton(0))
}

pub fn minimal_ideals(b: &FiniteBrace) -> Vec<ElemSet> {
    extremal_of(&ideals(b), b.elements(), Direction::Minimal)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GaschutzReport {
    /// False when `Frat(B) ≠ 0`; the remaining fields are then only informative.
    pub applicable: bool,
    pub fitting: ElemSet,
    pub frattini: ElemSet,
    pub abelian_minimal_sum: ElemSet,
    pub holds: bool,
}

/// When `Frat(B) = 0`: `Fit(B)` equals the sum of the abelian minimal ideals.
pub fn gaschutz_check(b: &FiniteBrace) -> Result<GaschutzReport> {
    let fitting = fitting_ideal(b)?.bits;
    let frattini = frattini_ideal(b)?.bits;
    let mut abelian = Vec::new();
    for m in minimal_ideals(b) {
        if is_abelian_ideal(b, m)? {
            abelian.push(m);
        }
    }
    let abelian_minimal_sum = sum_of(b, abelian);
    let applicable = frattini == ElemSet::singleton(0);
    Ok(GaschutzReport {
        applicable,
        fitting,
        frattini,
        abelian_minimal_sum,
        holds: !applicable || fitting == abelian_minimal_sum,
    })
}

pub fn additive_order(b: &FiniteBrace, x: usize) -> usize {
    let (mut y, mut k) = (x, 1);
    while y != 0 {
        y = b.add(y, x);
        k += 1;
    }
    k
}

pub fn multiplicative_order(b: &FiniteBrace, x: usize) -> usize {
    let (mut y, mut k) = (x, 1);
    while y != 0 {
        y = b.mul(y, x);
        k += 1;
    }
    k
}

/// lcm over `S` of the additive and multiplicative orders.
pub fn brace_exponent(b: &FiniteBrace, s: ElemSet) -> usize {
    s.iter().fold(1, |e, x| {
        lcm(e, lcm(additive_order(b, x), multiplicative_order(b, x)))
    })
}

fn p_part(n: usize, p: usize) -> usize {
    let mut q = 1;
    let mut m = n;
    while m.is_multiple_of(p) {
        m /= p;
        q *= p;
    }
    q
}

fn is_p_power(mut n: usize, p: usize) -> bool {
    while n.is_multiple_of(p) {
        n /= p;
    }
    n == 1
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SylowPart {
    pub prime: usize,
    /// Elements of `p`-power additive order.
    pub additive: ElemSet,
    /// Elements of `p`-power multiplicative order.
    pub multiplicative: ElemSet,
    /// The additive Sylow `p`-subgroup is unique (its `p`-elements form a subgroup of full `p`-part order).
    pub additive_unique: bool,
    pub multiplicative_unique: bool,
    pub coincide: bool,
    pub ideal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SylowReport {
    pub centrally_nilpotent: bool,
    pub parts: Vec<SylowPart>,
    /// The map `(x_p) ↦ Σ x_p` from the product of the parts is a brace isomorphism.
    pub decomposes: bool,
    /// `forward[k]` is the image of product element `k` (product indices in prime order, last prime fastest).
    pub certificate: Option<Vec<usize>>,
    pub failures: Vec<String>,
}

/// Per-prime Sylow parts of both groups and, when every part is an ideal
/// shared by the two groups, a verified decomposition into their direct product.
pub fn sylow(b: &FiniteBrace, prime: Option<usize>) -> Result<SylowReport> {
    let n = b.order();
    let mut primes = prime_factors(n);
    if let Some(p) = prime {
        primes.retain(|&q| q == p);
    }
    let add_orders: Vec<usize> = (0..n).map(|x| additive_order(b, x)).collect();
    let mul_orders: Vec<usize> = (0..n).map(|x| multiplicative_order(b, x)).collect();
    let mut parts = Vec::new();
    let mut failures = Vec::new();
    for &p in &primes {
        let additive: ElemSet = (0..n).filter(|&x| is_p_power(add_orders[x], p)).collect();
        let multiplicative: ElemSet = (0..n).filter(|&x| is_p_power(mul_orders[x], p)).collect();
        let size = p_part(n, p);
        let closed = |s: ElemSet, op: &dyn Fn(usize, usize) -> usize| {
            s.iter().all(|x| s.iter().all(|y| s.contains(op(x, y))))
        };
        let additive_unique = additive.len() == size && closed(additive, &|x, y| b.add(x, y));
        let multiplicative_unique =
            multiplicative.len() == size && closed(multiplicative, &|x, y| b.mul(x, y));
        let coincide = additive == multiplicative;
        let ideal = additive_unique && classify(b, additive).flags.ideal;
        for (ok, what) in [
            (additive_unique, "additive Sylow subgroup is not unique"),
            (
                multiplicative_unique,
                "multiplicative Sylow subgroup is not unique",
            ),
            (coincide, "additive and multiplicative p-elements differ"),
            (ideal, "Sylow subgroup is not an ideal"),
        ] {
            if !ok {
                failures.push(format!("p = {p}: {what}"));
            }
        }
        parts.push(SylowPart {
            prime: p,
            additive,
            multiplicative,
            additive_unique,
            multiplicative_unique,
            coincide,
            ideal,
        });
    }
    let centrally_nilpotent = nilpotency_class(b)?.is_some();
    let mut certificate = None;
    if failures.is_empty() && prime.is_none() {
        match product_certificate(b, &parts)? {
            Some(c) => certificate = Some(c),
            None => failures
                .push("the sum map from the product of the parts is not an isomorphism".into()),
        }
    }
    Ok(SylowReport {
        centrally_nilpotent,
        decomposes: certificate.is_some(),
        parts,
        certificate,
        failures,
    })
}

fn product_certificate(b: &FiniteBrace, parts: &[SylowPart]) -> Result<Option<Vec<usize>>> {
    let mut product: Option<FiniteBrace> = None;
    let mut embeddings = Vec::new();
    for part in parts {
        let (sub, emb) = b.induced(part.additive)?;
        product = Some(match product {
            None => sub,
            Some(p) => direct_product(&p, &sub)?,
        });
        embeddings.push(emb);
    }
    let Some(product) = product else {
        return Ok(Some(vec![0]));
    };
    let sizes: Vec<usize> = embeddings.iter().map(Vec::len).collect();
    let forward: Vec<usize> = (0..product.order())
        .map(|mut k| {
            let mut coords = vec![0; sizes.len()];
            for (c, &m) in coords.iter_mut().zip(&sizes).rev() {
                *c = k % m;
                k /= m;
            }
            coords
                .iter()
                .zip(&embeddings)
                .fold(0, |acc, (&c, emb)| b.add(acc, emb[c]))
        })
        .collect();
    let bijective = forward
        .iter()
        .collect::<std::collections::HashSet<_>>()
        .len()
        == b.order();
    let hom = bijective
        && (0..product.order()).all(|x| {
            (0..product.order()).all(|y| {
                forward[product.add(x, y)] == b.add(forward[x], forward[y])
                    && forward[product.mul(x, y)] == b.mul(forward[x], forward[y])
            })
        });
    Ok(hom.then_some(forward))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementProfile {
    pub element: usize,
    pub additive_order: usize,
    pub multiplicative_order: usize,
    /// `|⟨b⟩|`, the order of the subbrace generated by the element.
    pub subbrace_order: usize,
    pub additive_primes: Vec<usize>,
    pub multiplicative_primes: Vec<usize>,
    pub subbrace_primes: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProfileReport {
    pub profiles: Vec<ElementProfile>,
    pub both_cyclic: bool,
    /// An element generating both groups, when both are cyclic.
    pub common_generator: Option<usize>,
}

pub fn element_profiles(b: &FiniteBrace) -> ProfileReport {
    let n = b.order();
    let profiles: Vec<ElementProfile> = (0..n)
        .map(|x| {
            let a = additive_order(b, x);
            let m = multiplicative_order(b, x);
            let s = subbrace_closure(b, ElemSet::singleton(x)).len();
            ElementProfile {
                element: x,
                additive_order: a,
                multiplicative_order: m,
                subbrace_order: s,
                additive_primes: prime_factors(a),
                multiplicative_primes: prime_factors(m),
                subbrace_primes: prime_factors(s),
            }
        })
        .collect();
    let both_cyclic = profiles.iter().any(|p| p.additive_order == n)
        && profiles.iter().any(|p| p.multiplicative_order == n);
    let common_generator = profiles
        .iter()
        .find(|p| p.additive_order == n && p.multiplicative_order == n)
        .map(|p| p.element);
    ProfileReport {
        profiles,
        both_cyclic,
        common_generator,
    }
}

/// Centre of `Fit(B)` as a standalone brace, as a subset of `B`.
pub fn centre_of_fitting(b: &FiniteBrace) -> Result<ElemSet> {
    centre_of_ideal(b, fitting_ideal(b)?.bits)
}

/// Ideal closure helper used by reports: the smallest ideal containing every set in `family`.
pub fn ideal_join(b: &FiniteBrace, family: &[ElemSet]) -> ElemSet {
    ideal_closure(
        b,
        family
            .iter()
            .fold(ElemSet::singleton(0), |a, &s| a.union(s)),
    )
    .bits
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::trivial_brace;
    use crate::group::Group;

    #[test]
    fn trivial_abelian_brace_distinguished_sets_are_everything() {
        let b = trivial_brace(&Group::abelian(&[2, 4]).rows()).unwrap();
        for w in Distinguished::ALL {
            assert_eq!(distinguished_ideal(&b, w).unwrap().bits, b.elements());
        }
    }

    #[test]
    fn cyclic_prime_radicals() {
        let b = trivial_brace(&Group::cyclic(5).rows()).unwrap();
        assert_eq!(fitting_ideal(&b).unwrap().bits, b.elements());
        assert_eq!(frattini_ideal(&b).unwrap().bits, ElemSet::singleton(0));
        assert_eq!(non_generators(&b), ElemSet::singleton(0));
        let g = gaschutz_check(&b).unwrap();
        assert!(g.applicable && g.holds);
        assert_eq!(
            centraliser(&b, ElemSet::singleton(0), None).unwrap().bits,
            b.elements()
        );
    }

    #[test]
    fn cyclic_six_splits_into_sylow_parts() {
        let b = trivial_brace(&Group::cyclic(6).rows()).unwrap();
        let r = sylow(&b, None).unwrap();
        assert!(r.decomposes);
        assert_eq!(
            r.parts.iter().map(|p| p.additive.len()).collect::<Vec<_>>(),
            vec![2, 3]
        );
    }

    #[test]
    fn common_generator_of_trivial_c4() {
        let b = trivial_brace(&Group::cyclic(4).rows()).unwrap();
        let r = element_profiles(&b);
        assert!(r.both_cyclic);
        assert_eq!(r.common_generator, Some(1));
        let z = trivial_brace(&Group::trivial().rows()).unwrap();
        assert_eq!(element_profiles(&z).common_generator, Some(0));
    }
}
