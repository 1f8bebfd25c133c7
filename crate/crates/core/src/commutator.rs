//! Ideal commutators `[I, J]^B`, computed two independent ways, and the
//! stochastic absorbing-polynomial witness.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bitset::ElemSet;
use crate::brace::FiniteBrace;
use crate::error::{inconsistent, Error, Result};
use crate::polynomial::{PolynomialWord, WordSource};
use crate::substructure::{additive_span, classify, ideal_closure, SubSet};

fn pairs(x: ElemSet, y: ElemSet) -> impl Iterator<Item = (usize, usize)> {
    x.iter().flat_map(move |a| y.iter().map(move |b| (a, b)))
}

/// Additive subgroup generated by `{x ∗ y}`.
pub fn star_span(b: &FiniteBrace, x: ElemSet, y: ElemSet) -> SubSet {
    let gens: ElemSet = pairs(x, y).map(|(p, q)| b.star_unchecked(p, q)).collect();
    classify(b, additive_span(b, gens))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Operation {
    Additive,
    Multiplicative,
}

/// Subgroup of `(B,+)` (or `(B,·)`) generated by the group commutators of `X × Y`.
pub fn commutator_span(b: &FiniteBrace, x: ElemSet, y: ElemSet, op: Operation) -> SubSet {
    let g = match op {
        Operation::Additive => b.additive_group(),
        Operation::Multiplicative => b.multiplicative_group(),
    };
    classify(b, g.commutator_subgroup(x, y))
}

/// `[X, Y]_+`.
pub fn additive_commutator_span(b: &FiniteBrace, x: ElemSet, y: ElemSet) -> SubSet {
    commutator_span(b, x, y, Operation::Additive)
}

/// `I ∗ J + J ∗ I + [I, J]_+` as an additive subgroup (no ideal closure).
pub fn star_sum(b: &FiniteBrace, i: ElemSet, j: ElemSet) -> ElemSet {
    let parts = star_span(b, i, j)
        .bits
        .union(star_span(b, j, i).bits)
        .union(additive_commutator_span(b, i, j).bits);
    additive_span(b, parts)
}

/// The raw generators `[I,J]_+ ∪ [I,J]_· ∪ {ij − (i + j)}`.
pub fn raw_generators(b: &FiniteBrace, i: ElemSet, j: ElemSet) -> ElemSet {
    let mut out = ElemSet::empty();
    for (x, y) in pairs(i, j) {
        // [x, y]_+ = −x − y + x + y
        out.insert(b.add(b.add(b.add(b.neg(x), b.neg(y)), x), y));
        // [x, y]_· = x⁻¹ y⁻¹ x y
        out.insert(b.mul(b.mul(b.mul(b.inv(x), b.inv(y)), x), y));
        // xy − (x + y)
        out.insert(b.sub(b.mul(x, y), b.add(x, y)));
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CommutatorRoutes {
    /// Ideal closure of `I ∗ J + J ∗ I + [I,J]_+`.
    pub star_route: ElemSet,
    /// Ideal closure of the raw generators.
    pub generator_route: ElemSet,
}

pub fn commutator_routes(b: &FiniteBrace, i: ElemSet, j: ElemSet) -> CommutatorRoutes {
    CommutatorRoutes {
        star_route: ideal_closure(b, star_sum(b, i, j)).bits,
        generator_route: ideal_closure(b, raw_generators(b, i, j)).bits,
    }
}

/// `[I, J]^B`; both characterisations are computed and must agree.
pub fn commutator_ideal(b: &FiniteBrace, i: ElemSet, j: ElemSet) -> Result<SubSet> {
    for s in [i, j] {
        if !classify(b, s).flags.ideal {
            return Err(Error::NotAnIdeal);
        }
    }
    let r = commutator_routes(b, i, j);
    if r.star_route != r.generator_route {
        return Err(inconsistent(
            "commutator_ideal",
            format!(
                "star route {:?} differs from generator route {:?}",
                r.star_route, r.generator_route
            ),
        ));
    }
    Ok(classify(b, r.star_route))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StarSumVerdict {
    pub is_ideal: bool,
    pub sum: Vec<usize>,
    /// An element of the ideal closure missing from the plain sum.
    pub witness: Option<usize>,
}

pub fn star_sum_is_ideal(b: &FiniteBrace, i: ElemSet, j: ElemSet) -> StarSumVerdict {
    let sum = star_sum(b, i, j);
    let flags = classify(b, sum).flags;
    let witness = if flags.ideal {
        None
    } else {
        ideal_closure(b, sum).bits.difference(sum).first()
    };
    StarSumVerdict {
        is_ideal: flags.ideal,
        sum: sum.to_vec(),
        witness,
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SamplerStats {
    /// Absorbing words kept (including the three canonical ones).
    pub absorbing_words: usize,
    /// Words drawn uniformly from the token grammar, and how many were absorbing.
    pub uniform_drawn: usize,
    pub uniform_absorbing: usize,
    /// Words assembled from absorbing building blocks, and how many passed the test.
    pub structured_drawn: usize,
    pub structured_absorbing: usize,
    pub max_length: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SampleReport {
    pub values: ElemSet,
    pub stats: SamplerStats,
}

/// Number of words drawn per independent stream.
const CHUNK: usize = 256;

/// Draws absorbing words until `samples` have been kept; each chunk uses its
/// own ChaCha stream so the result does not depend on thread scheduling.
pub fn sample_absorbing_words(
    b: &FiniteBrace,
    samples: usize,
    seed: u64,
) -> (Vec<PolynomialWord>, SamplerStats) {
    let mut words: Vec<PolynomialWord> = PolynomialWord::canonical().to_vec();
    let mut stats = SamplerStats::default();
    let target = samples.max(1);
    let mut next_chunk: u64 = 0;
    while words.len() < target + 3 {
        let remaining = target + 3 - words.len();
        let chunks = remaining.div_ceil(CHUNK / 2).clamp(1, 64) as u64;
        let batch: Vec<(Vec<PolynomialWord>, SamplerStats)> = (next_chunk..next_chunk + chunks)
            .into_par_iter()
            .map(|k| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(k);
                let mut local = SamplerStats::default();
                let mut kept = Vec::new();
                for t in 0..CHUNK {
                    let source = if t % 2 == 0 {
                        WordSource::Uniform
                    } else {
                        WordSource::Structured
                    };
                    let w = PolynomialWord::random(&mut rng, source);
                    let ok = w.is_absorbing(b);
                    match source {
                        WordSource::Uniform => {
                            local.uniform_drawn += 1;
                            local.uniform_absorbing += ok as usize;
                        }
                        WordSource::Structured => {
                            local.structured_drawn += 1;
                            local.structured_absorbing += ok as usize;
                        }
                    }
                    if ok {
                        kept.push(w);
                    }
                }
                (kept, local)
            })
            .collect();
        next_chunk += chunks;
        for (kept, local) in batch {
            stats.uniform_drawn += local.uniform_drawn;
            stats.uniform_absorbing += local.uniform_absorbing;
            stats.structured_drawn += local.structured_drawn;
            stats.structured_absorbing += local.structured_absorbing;
            words.extend(kept);
        }
    }
    words.truncate(target + 3);
    stats.absorbing_words = words.len();
    stats.max_length = words.iter().map(|w| w.len()).max().unwrap_or(0);
    (words, stats)
}

/// Union of the values of sampled absorbing words (always including the
/// three canonical ones) at all `(i, j) ∈ I × J`.
pub fn sample_absorbing_values(
    b: &FiniteBrace,
    i: ElemSet,
    j: ElemSet,
    samples: usize,
    seed: u64,
) -> SampleReport {
    let (words, stats) = sample_absorbing_words(b, samples, seed);
    let values = words
        .par_iter()
        .map(|w| {
            pairs(i, j)
                .map(|(x, y)| w.eval(b, x, y))
                .collect::<ElemSet>()
        })
        .reduce(ElemSet::empty, |a, c| a.union(c));
    SampleReport { values, stats }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SoundnessReport {
    pub words: usize,
    pub pairs_checked: usize,
    /// `(word index, i, j, value)` of values outside `[I, J]^B`.
    pub escapes: Vec<(usize, usize, usize, usize)>,
    pub stats: SamplerStats,
}

/// Evaluates every sampled word on all of `B × B` once and checks, for each
/// listed ideal pair, that the values on `I × J` lie in `[I, J]^B`.
pub fn absorbing_soundness(
    b: &FiniteBrace,
    ideal_pairs: &[(ElemSet, ElemSet)],
    samples: usize,
    seed: u64,
) -> Result<SoundnessReport> {
    let (words, stats) = sample_absorbing_words(b, samples, seed);
    let comms: Vec<ElemSet> = ideal_pairs
        .iter()
        .map(|&(i, j)| commutator_ideal(b, i, j).map(|s| s.bits))
        .collect::<Result<_>>()?;
    let n = b.order();
    let escapes: Vec<(usize, usize, usize, usize)> = words
        .par_iter()
        .enumerate()
        .flat_map_iter(|(k, w)| {
            let table = w.eval_table(b);
            let mut out = Vec::new();
            for (&(i, j), c) in ideal_pairs.iter().zip(&comms) {
                for (x, y) in pairs(i, j) {
                    let v = table[x * n + y] as usize;
                    if !c.contains(v) {
                        out.push((k, x, y, v));
                    }
                }
            }
            out
        })
        .collect();
    Ok(SoundnessReport {
        words: words.len(),
        pairs_checked: ideal_pairs.len(),
        escapes,
        stats,
    })
}
