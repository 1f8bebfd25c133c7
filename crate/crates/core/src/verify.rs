//! Evaluation of fixture claim manifests.
//!
//! Each claim names an operation, its arguments (set names refer to the
//! fixture's `sets`, with `"0"` and `"B"` always available) and an expected
//! value. Besides single-valued operations there are suites that bundle the
//! structural checks of one area and pass only if every sub-check passes.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::bitset::{sort_canonical, ElemSet};
use crate::brace::FiniteBrace;
use crate::commutator::{
    absorbing_soundness, commutator_ideal, commutator_routes, sample_absorbing_values, star_span,
    star_sum_is_ideal,
};
use crate::construct::{enumerate_braces, quotient, trivial_brace};
use crate::error::{Error, Result};
use crate::fixtures::{Fixture, FixtureFile};
use crate::group::{prime_factors, Group};
use crate::radicals::{
    b_centrally_nilpotent_ideals, brace_exponent, centraliser, centre, chief_centraliser_meet,
    distinguished_ideal, element_profiles, fitting_ideal, frattini_ideal, gaschutz_check,
    maximal_left_ideals, minimal_ideals, non_generators, sylow, zeta_b_radical, Distinguished,
};
use crate::series::{
    b_central_verdict, centre_of_ideal, chief_series, derived_length, derived_series,
    lower_central_series, nilpotency_class, upper_central_series, ChiefStrategy,
};
use crate::subideal::{
    ideal_closure_series, idealiser_report, index_of, maximal_subbraces, subideal_audit,
};
use crate::substructure::{
    additive_span, all_substructures, classify, classify_within, core_of, ideal_closure, ideals,
    subbrace_closure, Kind,
};
use crate::ybe::{projection_is_morphism, solution_from_brace, Solution};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClaimOutcome {
    pub id: String,
    pub criterion: u32,
    pub op: String,
    pub passed: bool,
    pub expected: Value,
    pub actual: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FixtureReport {
    pub id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<usize>,
    /// Set when the brace could not be constructed; every claim then fails.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub claims: Vec<ClaimOutcome>,
}

impl FixtureReport {
    pub fn passed(&self) -> bool {
        self.error.is_none() && self.claims.iter().all(|c| c.passed)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub fixtures: Vec<FixtureReport>,
    pub passed: bool,
}

impl VerifyReport {
    pub fn outcomes(&self) -> impl Iterator<Item = &ClaimOutcome> {
        self.fixtures.iter().flat_map(|f| f.claims.iter())
    }

    pub fn first_failure(&self) -> Option<&ClaimOutcome> {
        self.outcomes().find(|c| !c.passed)
    }

    /// `criterion ↦ (passed, total)` over all claims.
    pub fn by_criterion(&self) -> BTreeMap<u32, (usize, usize)> {
        let mut out: BTreeMap<u32, (usize, usize)> = BTreeMap::new();
        for c in self.outcomes() {
            let e = out.entry(c.criterion).or_default();
            e.0 += c.passed as usize;
            e.1 += 1;
        }
        out
    }
}

/// Caches enumerations shared between claims.
#[derive(Default)]
pub struct Context {
    enumerated: BTreeMap<usize, Vec<FiniteBrace>>,
}

impl Context {
    pub fn new() -> Context {
        Context::default()
    }

    fn braces_up_to(&mut self, max_order: usize) -> Result<Vec<(usize, &[FiniteBrace])>> {
        for n in 1..=max_order {
            if let std::collections::btree_map::Entry::Vacant(e) = self.enumerated.entry(n) {
                e.insert(enumerate_braces(n, true)?);
            }
        }
        Ok((1..=max_order)
            .map(|n| (n, self.enumerated[&n].as_slice()))
            .collect())
    }
}

pub fn verify_all(files: &[FixtureFile]) -> VerifyReport {
    let mut ctx = Context::new();
    let fixtures: Vec<FixtureReport> = files.iter().map(|f| verify_file(f, &mut ctx)).collect();
    VerifyReport {
        passed: fixtures.iter().all(FixtureReport::passed),
        fixtures,
    }
}

pub fn verify_file(file: &FixtureFile, ctx: &mut Context) -> FixtureReport {
    let fixture = if file.has_brace() {
        match file.build() {
            Ok(f) => Some(f),
            Err(e) => {
                let msg = e.to_string();
                let claims = file
                    .claims
                    .iter()
                    .map(|c| ClaimOutcome {
                        id: c.id.clone(),
                        criterion: c.criterion,
                        op: c.op.clone(),
                        passed: false,
                        expected: c.expect.clone(),
                        actual: json!({ "error": msg }),
                        detail: Some(format!("construction failed: {msg}")),
                    })
                    .collect();
                return FixtureReport {
                    id: file.id.clone(),
                    order: None,
                    error: Some(msg),
                    claims,
                };
            }
        }
    } else {
        None
    };
    let claims = file
        .claims
        .iter()
        .map(|c| {
            let result = match &fixture {
                Some(fx) => evaluate(fx, &c.op, &c.args),
                None => evaluate_enumeration(ctx, &c.op, &c.args),
            };
            let (passed, actual, detail) = match result {
                Ok(ev) => {
                    let (ok, why) = matches(fixture.as_ref(), &c.expect, &ev.actual);
                    (ok, render(fixture.as_ref(), &ev.actual), ev.detail.or(why))
                }
                Err(e) => (
                    false,
                    json!({ "error": e.to_string() }),
                    Some(e.to_string()),
                ),
            };
            ClaimOutcome {
                id: c.id.clone(),
                criterion: c.criterion,
                op: c.op.clone(),
                passed,
                expected: c.expect.clone(),
                actual,
                detail,
            }
        })
        .collect();
    FixtureReport {
        id: file.id.clone(),
        order: fixture.as_ref().map(|f| f.brace.order()),
        error: None,
        claims,
    }
}

/// The value an operation produced.
#[derive(Clone, Debug, PartialEq)]
pub enum Actual {
    Int(Option<usize>),
    Bool(bool),
    Str(String),
    Set(ElemSet),
    Sets(Vec<ElemSet>),
    Json(Value),
}

struct Evaluation {
    actual: Actual,
    detail: Option<String>,
}

impl From<Actual> for Evaluation {
    fn from(actual: Actual) -> Self {
        Evaluation {
            actual,
            detail: None,
        }
    }
}

fn set_json(fx: Option<&Fixture>, s: ElemSet) -> Value {
    match fx {
        Some(f) => match f.name_of(s) {
            Some(name) => json!({ "set": name, "size": s.len() }),
            None => {
                json!({ "elements": s.iter().map(|x| f.render(x)).collect::<Vec<_>>(), "size": s.len() })
            }
        },
        None => json!({ "elements": s.to_vec(), "size": s.len() }),
    }
}

fn render(fx: Option<&Fixture>, a: &Actual) -> Value {
    match a {
        Actual::Int(v) => json!(v),
        Actual::Bool(v) => json!(v),
        Actual::Str(v) => json!(v),
        Actual::Set(s) => set_json(fx, *s),
        Actual::Sets(v) => Value::Array(v.iter().map(|&s| set_json(fx, s)).collect()),
        Actual::Json(v) => v.clone(),
    }
}

fn named(fx: Option<&Fixture>, v: &Value) -> std::result::Result<ElemSet, String> {
    let name = v.as_str().ok_or("set names must be strings")?;
    fx.ok_or("no fixture sets available")?
        .set(name)
        .map_err(|e| e.to_string())
}

/// Whether `actual` meets `expect`, with a reason when it does not.
fn matches(fx: Option<&Fixture>, expect: &Value, actual: &Actual) -> (bool, Option<String>) {
    let fail = |why: String| (false, Some(why));
    match (expect, actual) {
        (Value::Object(o), _) => {
            if let Some(name) = o.get("set") {
                let Actual::Set(s) = actual else {
                    return fail("expected a set".into());
                };
                match named(fx, name) {
                    Ok(t) if t == *s => {}
                    Ok(_) => return fail(format!("set differs from {name}")),
                    Err(e) => return fail(e),
                }
            }
            if let Some(k) = o.get("size").and_then(Value::as_u64) {
                let Actual::Set(s) = actual else {
                    return fail("expected a set".into());
                };
                if s.len() as u64 != k {
                    return fail(format!("size {} instead of {k}", s.len()));
                }
            }
            if let Some(names) = o.get("sets") {
                let Actual::Sets(got) = actual else {
                    return fail("expected a list of sets".into());
                };
                let Some(names) = names.as_array() else {
                    return fail("`sets` must be a list".into());
                };
                let mut want = Vec::new();
                for n in names {
                    match named(fx, n) {
                        Ok(s) => want.push(s),
                        Err(e) => return fail(e),
                    }
                }
                let mut got = got.clone();
                sort_canonical(&mut want);
                sort_canonical(&mut got);
                if want != got {
                    return fail(format!(
                        "{} sets found, {} expected, or members differ",
                        got.len(),
                        want.len()
                    ));
                }
            }
            if let Some(k) = o.get("at_most").and_then(Value::as_u64) {
                match actual {
                    Actual::Int(Some(v)) if *v as u64 <= k => {}
                    _ => return fail(format!("not at most {k}")),
                }
            }
            (true, None)
        }
        (Value::Null, Actual::Int(None)) => (true, None),
        (Value::Number(n), Actual::Int(Some(v))) if n.as_u64() == Some(*v as u64) => (true, None),
        (Value::Bool(e), Actual::Bool(v)) if e == v => (true, None),
        (Value::String(e), Actual::Str(v)) if e == v => (true, None),
        (e, Actual::Json(v)) if e == v => (true, None),
        _ => fail("value differs".into()),
    }
}

struct Args<'a> {
    fx: &'a Fixture,
    map: &'a Map<String, Value>,
}

impl Args<'_> {
    fn value(&self, key: &str) -> Result<&Value> {
        self.map
            .get(key)
            .ok_or_else(|| Error::Parse(format!("missing argument `{key}`")))
    }

    fn set(&self, key: &str) -> Result<ElemSet> {
        let v = self.value(key)?;
        self.fx.set(
            v.as_str()
                .ok_or_else(|| Error::Parse(format!("argument `{key}` must be a set name")))?,
        )
    }

    fn opt_set(&self, key: &str) -> Result<Option<ElemSet>> {
        if self.map.contains_key(key) {
            self.set(key).map(Some)
        } else {
            Ok(None)
        }
    }

    fn sets(&self, key: &str) -> Result<Vec<ElemSet>> {
        let v = self
            .value(key)?
            .as_array()
            .ok_or_else(|| Error::Parse(format!("argument `{key}` must be a list")))?;
        v.iter()
            .map(|n| {
                self.fx.set(
                    n.as_str()
                        .ok_or_else(|| Error::Parse("set names must be strings".into()))?,
                )
            })
            .collect()
    }

    fn usize_or(&self, key: &str, default: usize) -> Result<usize> {
        match self.map.get(key) {
            None => Ok(default),
            Some(v) => v
                .as_u64()
                .map(|x| x as usize)
                .ok_or_else(|| Error::Parse(format!("argument `{key}` must be an integer"))),
        }
    }

    fn str(&self, key: &str) -> Result<&str> {
        self.value(key)?
            .as_str()
            .ok_or_else(|| Error::Parse(format!("argument `{key}` must be a string")))
    }
}

fn usize_arg(map: &Map<String, Value>, key: &str, default: usize) -> Result<usize> {
    match map.get(key) {
        None => Ok(default),
        Some(v) => v
            .as_u64()
            .map(|x| x as usize)
            .ok_or_else(|| Error::Parse(format!("argument `{key}` must be an integer"))),
    }
}

/// Standalone brace on an ideal or subbrace, with the map back into `B`.
fn standalone(b: &FiniteBrace, s: ElemSet) -> Result<(FiniteBrace, Vec<usize>, Vec<usize>)> {
    let (sub, emb) = b.induced(s)?;
    let mut back = vec![usize::MAX; b.order()];
    for (k, &x) in emb.iter().enumerate() {
        back[x] = k;
    }
    Ok((sub, emb, back))
}

fn pull(back: &[usize], s: ElemSet) -> ElemSet {
    s.iter().map(|x| back[x]).collect()
}

fn push(emb: &[usize], s: ElemSet) -> ElemSet {
    s.iter().map(|x| emb[x]).collect()
}

fn project(proj: &[usize], s: ElemSet) -> ElemSet {
    s.iter().map(|x| proj[x]).collect()
}

/// The strongest substructure kind `s` has, or `"none"`.
pub fn kind_name(b: &FiniteBrace, s: ElemSet) -> &'static str {
    let f = classify(b, s).flags;
    if f.ideal {
        "ideal"
    } else if f.strong_left_ideal {
        "strong_left_ideal"
    } else if f.left_ideal {
        "left_ideal"
    } else if f.subbrace {
        "subbrace"
    } else {
        "none"
    }
}

fn evaluate(fx: &Fixture, op: &str, map: &Map<String, Value>) -> Result<Evaluation> {
    let b = &fx.brace;
    let a = Args { fx, map };
    let zero = ElemSet::singleton(0);
    Ok(match op {
        "order" => Actual::Int(Some(b.order())).into(),
        "size" => Actual::Int(Some(a.set("set")?.len())).into(),
        "classify" => Actual::Str(kind_name(b, a.set("set")?).into()).into(),
        "is_ideal_of" => {
            let (s, within) = (a.set("set")?, a.set("within")?);
            Actual::Bool(s.is_subset(within) && classify_within(b, within, s).ideal).into()
        }
        "subbrace_closure" => Actual::Set(
            subbrace_closure(b, a.sets("sets")?.into_iter().fold(zero, ElemSet::union)).bits,
        )
        .into(),
        "sum" => Actual::Set(additive_span(b, a.set("left")?.union(a.set("right")?))).into(),
        "star_span" => Actual::Set(star_span(b, a.set("left")?, a.set("right")?).bits).into(),
        "star_sum_is_ideal" => {
            let v = star_sum_is_ideal(b, a.set("left")?, a.set("right")?);
            Evaluation {
                actual: Actual::Bool(v.is_ideal),
                detail: v.witness.map(|w| {
                    format!(
                        "{} lies in the ideal closure but not in the sum",
                        fx.render(w)
                    )
                }),
            }
        }
        "commutator_ideal" => {
            Actual::Set(commutator_ideal(b, a.set("left")?, a.set("right")?)?.bits).into()
        }
        "commutator_theorem" => commutator_theorem(b)?,
        "absorbing_oracle" => absorbing_oracle(
            b,
            a.usize_or("samples", 10_000)?,
            a.usize_or("seed", 1)? as u64,
        )?,
        "absorbing_generation" => {
            let (i, j) = (a.set("left")?, a.set("right")?);
            let samples = a.usize_or("samples", 10_000)?;
            let report = sample_absorbing_values(b, i, j, samples, a.usize_or("seed", 1)? as u64);
            let generated = ideal_closure(b, report.values).bits;
            let comm = commutator_ideal(b, i, j)?.bits;
            Evaluation {
                actual: Actual::Bool(generated == comm && report.stats.absorbing_words >= samples),
                detail: Some(format!(
                    "{} absorbing words, {} distinct values, closure of size {} against [I, J] of size {}",
                    report.stats.absorbing_words,
                    report.values.len(),
                    generated.len(),
                    comm.len()
                )),
            }
        }
        "ideals" => Actual::Sets(ideals(b)).into(),
        "ideals_of_order" => {
            let k = a.usize_or("order", 0)?;
            Actual::Sets(ideals(b).into_iter().filter(|s| s.len() == k).collect()).into()
        }
        "substructures" => {
            let kind = Kind::parse(a.str("kind")?)
                .ok_or_else(|| Error::Parse("unknown substructure kind".into()))?;
            let proper = map
                .get("proper_nonzero")
                .and_then(Value::as_bool)
                .unwrap_or(false);
            let all = b.elements();
            Actual::Sets(
                all_substructures(b, kind)
                    .into_iter()
                    .map(|s| s.bits)
                    .filter(|&s| !proper || (s != all && s != zero))
                    .collect(),
            )
            .into()
        }
        "distinguished" => {
            let which = match a.str("which")? {
                "socle" => Distinguished::Socle,
                "fix" => Distinguished::Fix,
                "centre" | "center" => Distinguished::Centre,
                "kernel_lambda" => Distinguished::KernelLambda,
                w => return Err(Error::Parse(format!("unknown distinguished set `{w}`"))),
            };
            match a.opt_set("within")? {
                None => Actual::Set(distinguished_ideal(b, which)?.bits).into(),
                Some(i) => {
                    let (sub, emb, _) = standalone(b, i)?;
                    Actual::Set(push(&emb, distinguished_ideal(&sub, which)?.bits)).into()
                }
            }
        }
        "nilpotency_class" => match a.opt_set("within")? {
            None => Actual::Int(nilpotency_class(b)?).into(),
            Some(i) => Actual::Int(nilpotency_class(&standalone(b, i)?.0)?).into(),
        },
        "central_chain" => {
            let within = a.set("within")?;
            let chain = a.sets("chain")?;
            let (sub, _, back) = standalone(b, within)?;
            Actual::Bool(is_central_chain(
                &sub,
                &chain.iter().map(|&s| pull(&back, s)).collect::<Vec<_>>(),
            )?)
            .into()
        }
        "count_b_centrally_nilpotent" => {
            let mut count = 0;
            for s in a.sets("sets")? {
                count += b_central_verdict(b, s)?.nilpotent as usize;
            }
            Actual::Int(Some(count)).into()
        }
        "is_subideal" => Actual::Bool(ideal_closure_series(b, a.set("set")?)?.is_subideal()).into(),
        "defect" => Actual::Int(ideal_closure_series(b, a.set("set")?)?.defect).into(),
        "index" => Actual::Int(index_of(b, a.set("set")?)?.common_index).into(),
        "contained_in_nilpotent_ideal" => {
            let s = a.set("set")?;
            let mut found = None;
            for i in ideals(b).into_iter().filter(|&i| s.is_subset(i)) {
                if nilpotency_class(&standalone(b, i)?.0)?.is_some() {
                    found = Some(i);
                    break;
                }
            }
            Evaluation {
                actual: Actual::Bool(found.is_some()),
                detail: found.map(|i| {
                    format!(
                        "contained in the centrally nilpotent ideal of order {}",
                        i.len()
                    )
                }),
            }
        }
        "idealiser_exists" => {
            Actual::Bool(idealiser_report(b, a.set("set")?)?.idealiser.is_some()).into()
        }
        "idealiser_witnesses" => {
            let r = idealiser_report(b, a.set("set")?)?;
            Evaluation {
                actual: Actual::Sets(r.witnesses.map(|(t, u)| vec![t, u]).unwrap_or_default()),
                detail: Some(format!(
                    "{} maximal members among {} candidates",
                    r.maximal.len(),
                    r.family.len()
                )),
            }
        }
        "idealiser_maximal" => Actual::Sets(idealiser_report(b, a.set("set")?)?.maximal).into(),
        "idealiser_pair_fails" => {
            let s = a.set("set")?;
            let pair = a.sets("sets")?;
            let r = idealiser_report(b, s)?;
            let join = subbrace_closure(b, pair.iter().fold(zero, |x, &y| x.union(y))).bits;
            let all_maximal = pair.iter().all(|p| r.maximal.contains(p));
            Evaluation {
                actual: Actual::Bool(all_maximal && !classify_within(b, join, s).ideal),
                detail: Some(format!(
                    "join of order {}; the given sets are maximal: {all_maximal}",
                    join.len()
                )),
            }
        }
        "all_subideal" => Actual::Bool(subideal_audit(b)?.all_subideal).into(),
        "maximal_subbraces" => Actual::Sets(maximal_subbraces(b)).into(),
        "derived_terminal" => Actual::Set(derived_series(b, None)?.terminal.bits).into(),
        "derived_term" => Actual::Set(derived_series(b, None)?.term(a.usize_or("k", 1)?)).into(),
        "derived_length" => Actual::Int(derived_length(b)?).into(),
        "lower_central_terminal" => Actual::Set(lower_central_series(b)?.terminal.bits).into(),
        "chief_factor_orders" => {
            Actual::Json(json!(
                chief_series(b, ChiefStrategy::Lexicographic)?.factor_orders()
            ))
            .into()
        }
        "sylow_decomposes" => {
            let r = sylow(b, None)?;
            Evaluation {
                actual: Actual::Bool(r.decomposes),
                detail: (!r.failures.is_empty()).then(|| r.failures.join("; ")),
            }
        }
        "series_suite" => suite(series_checks(b)?),
        "fitting_suite" => suite(fitting_checks(b)?),
        "sylow_suite" => suite(sylow_checks(b)?),
        "ybe" => suite(ybe_checks(b)?),
        other => return Err(Error::Parse(format!("unknown claim operation `{other}`"))),
    })
}

/// Every member is an ideal of `b` and each factor is central in the quotient.
fn is_central_chain(b: &FiniteBrace, chain: &[ElemSet]) -> Result<bool> {
    if chain.first() != Some(&ElemSet::singleton(0)) || chain.last() != Some(&b.elements()) {
        return Ok(false);
    }
    for w in chain.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        if !lo.is_subset(hi) || !classify(b, lo).flags.ideal || !classify(b, hi).flags.ideal {
            return Ok(false);
        }
        let (q, proj) = quotient(b, lo)?;
        if !project(&proj, hi).is_subset(centre(&q)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Named sub-checks of a suite.
#[derive(Default)]
struct Checks {
    run: usize,
    failures: Vec<String>,
}

impl Checks {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.run += 1;
        if !ok {
            self.failures.push(what());
        }
    }
}

fn suite(c: Checks) -> Evaluation {
    let detail = if c.failures.is_empty() {
        format!("{} checks passed", c.run)
    } else {
        format!(
            "{} of {} checks failed: {}",
            c.failures.len(),
            c.run,
            c.failures.join("; ")
        )
    };
    Evaluation {
        actual: Actual::Bool(c.failures.is_empty()),
        detail: Some(detail),
    }
}

fn commutator_theorem(b: &FiniteBrace) -> Result<Evaluation> {
    let ids = ideals(b);
    let mut c = Checks::default();
    for &i in &ids {
        for &j in &ids {
            let r = commutator_routes(b, i, j);
            c.check(r.star_route == r.generator_route, || {
                format!(
                    "routes differ on ideals of orders {} and {}",
                    i.len(),
                    j.len()
                )
            });
            c.check(
                r.star_route == commutator_routes(b, j, i).star_route,
                || "commutator not symmetric".into(),
            );
            c.check(r.star_route.is_subset(i.intersection(j)), || {
                "commutator escapes I ∩ J".into()
            });
        }
    }
    Ok(suite(c))
}

fn absorbing_oracle(b: &FiniteBrace, samples: usize, seed: u64) -> Result<Evaluation> {
    let ids = ideals(b);
    let pairs: Vec<(ElemSet, ElemSet)> = ids
        .iter()
        .flat_map(|&i| ids.iter().map(move |&j| (i, j)))
        .collect();
    let r = absorbing_soundness(b, &pairs, samples, seed)?;
    Ok(Evaluation {
        actual: Actual::Bool(r.escapes.is_empty() && r.words >= samples),
        detail: Some(format!(
            "{} absorbing words ({} of {} uniform and {} of {} structured draws kept, longest {}) on {} ideal pairs, {} escapes",
            r.words,
            r.stats.uniform_absorbing,
            r.stats.uniform_drawn,
            r.stats.structured_absorbing,
            r.stats.structured_drawn,
            r.stats.max_length,
            r.pairs_checked,
            r.escapes.len()
        )),
    })
}

fn valuation(mut n: usize, p: usize) -> u32 {
    let mut v = 0;
    while n.is_multiple_of(p) {
        n /= p;
        v += 1;
    }
    v
}

/// `e` divides `n^(2^i)`.
fn divides_power(e: usize, n: usize, i: u32) -> bool {
    prime_factors(e).into_iter().all(|p| {
        let vn = valuation(n, p) as u64;
        vn > 0
            && (valuation(e, p) as u64)
                <= vn.saturating_mul(1u64.checked_shl(i).unwrap_or(u64::MAX))
    })
}

fn is_p_power(n: usize, p: usize) -> bool {
    n > 1 && prime_factors(n) == vec![p]
}

/// No non-zero element of `s` generates a subbrace of `p`-power order.
fn p_free(b: &FiniteBrace, s: ElemSet, p: usize) -> bool {
    s.iter()
        .filter(|&x| x != 0)
        .all(|x| !is_p_power(subbrace_closure(b, ElemSet::singleton(x)).len(), p))
}

fn series_checks(b: &FiniteBrace) -> Result<Checks> {
    let mut c = Checks::default();
    let all = b.elements();
    let zero = ElemSet::singleton(0);
    let upper = upper_central_series(b)?;
    let lower = lower_central_series(b)?;
    let derived = derived_series(b, None)?;
    let up_n = upper.position(all);
    let low_n = lower.position(zero);
    c.check(up_n == low_n, || {
        format!("ζ_n = B at {up_n:?} but Γ_(n+1) = 0 at {low_n:?}")
    });
    let class = up_n;

    let depth = upper.len().max(lower.len()).max(derived.len()) + 1;
    for k in 0..depth {
        c.check(derived.term(k).is_subset(lower.term(k)), || {
            format!("∂_{k} ⊄ Γ_{}", k + 1)
        });
    }

    let za = b.additive_group().upper_central_series();
    let zm = b.multiplicative_group().upper_central_series();
    for k in 0..upper.len() {
        let bound = za[k.min(za.len() - 1)].intersection(zm[k.min(zm.len() - 1)]);
        c.check(upper.term(k).is_subset(bound), || {
            format!("ζ_{k} ⊄ Z_{k}(+) ∩ Z_{k}(·)")
        });
    }

    let z1 = upper.term(1);
    if upper.term(2) != z1 {
        let ca = b.additive_group().commutator_subgroup(all, all);
        let cm = b.multiplicative_group().commutator_subgroup(all, all);
        c.check(ca != all || cm != all, || {
            "ζ_2 > ζ but both commutator subgroups are B".into()
        });
    }

    // factors of the upper central series: exponent bound and p-freeness
    let n = brace_exponent(b, z1);
    let primes = prime_factors(b.order());
    let free_in_centre: Vec<usize> = primes
        .iter()
        .copied()
        .filter(|&p| p_free(b, z1, p))
        .collect();
    for k in 0..upper.len() {
        let zk = upper.term(k);
        if zk == all {
            break;
        }
        let (q, _) = quotient(b, zk)?;
        let factor = centre(&q);
        if k >= 1 {
            let e = brace_exponent(&q, factor);
            c.check(divides_power(e, n, k as u32), || {
                format!(
                    "ζ_{}/ζ_{k} has exponent {e}, not dividing {n}^(2^{k})",
                    k + 1
                )
            });
        }
        for &p in &free_in_centre {
            c.check(p_free(&q, factor, p), || {
                format!("ζ is {p}-free but ζ_{}/ζ_{k} is not", k + 1)
            });
        }
    }

    let chiefs = [
        chief_series(b, ChiefStrategy::Lexicographic)?,
        chief_series(b, ChiefStrategy::Seeded(0x5eed))?,
    ];
    for ch in &chiefs {
        c.check(ch.all_central() == class.is_some(), || {
            "central chief factors do not match central nilpotency".into()
        });
    }
    let mut o0 = chiefs[0].factor_orders();
    let mut o1 = chiefs[1].factor_orders();
    o0.sort_unstable();
    o1.sort_unstable();
    c.check(o0 == o1, || {
        format!("chief factor orders {o0:?} and {o1:?} differ")
    });

    let dl = derived_length(b)?;
    if let Some(cl) = class {
        c.check(dl.is_some_and(|d| d <= cl), || {
            format!("derived length {dl:?} exceeds class {cl}")
        });
        let z = centre(b);
        for m in minimal_ideals(b) {
            c.check(m.is_subset(z), || "a minimal ideal is not central".into());
            c.check(
                prime_factors(m.len()).len() == 1 && prime_factors(m.len())[0] == m.len(),
                || format!("a minimal ideal has order {}", m.len()),
            );
        }
        for m in maximal_subbraces(b) {
            c.check(classify(b, m).flags.ideal, || {
                "a maximal subbrace is not an ideal".into()
            });
        }
        for e in subideal_audit(b)?.entries {
            c.check(e.defect.is_some_and(|d| d <= cl), || {
                format!("a subbrace of order {} has defect {:?}", e.order, e.defect)
            });
        }
    }
    let bv = b_central_verdict(b, all)?;
    c.check(bv.class == class, || {
        format!("B-central class of B is {:?}, class is {class:?}", bv.class)
    });
    Ok(c)
}

fn fitting_checks(b: &FiniteBrace) -> Result<Checks> {
    let mut c = Checks::default();
    let zero = ElemSet::singleton(0);
    let bcn = b_centrally_nilpotent_ideals(b)?;
    for (k, &(i, n0)) in bcn.iter().enumerate() {
        for &(j, m0) in &bcn[k..] {
            let s = additive_span(b, i.union(j));
            let v = b_central_verdict(b, s)?;
            c.check(v.class.is_some_and(|cl| cl <= n0 + m0), || {
                format!(
                    "sum of B-centrally nilpotent ideals of classes {n0}, {m0} has class {:?}",
                    v.class
                )
            });
        }
        for m in minimal_ideals(b) {
            c.check(commutator_ideal(b, m, i)?.bits == zero, || {
                "a minimal ideal is not centralised by a B-centrally nilpotent ideal".into()
            });
        }
    }

    let fit = fitting_ideal(b)?.bits;
    for l in maximal_left_ideals(b) {
        c.check(classify(b, l.intersection(fit)).flags.ideal, || {
            "L ∩ Fit is not an ideal for a maximal left ideal L".into()
        });
    }
    for strategy in [ChiefStrategy::Lexicographic, ChiefStrategy::Seeded(0x5eed)] {
        let meet = chief_centraliser_meet(b, &chief_series(b, strategy)?)?;
        c.check(meet == fit, || {
            format!(
                "chief-factor centralisers ({strategy:?}) meet in {} elements, Fit has {}",
                meet.len(),
                fit.len()
            )
        });
    }
    c.check(zeta_b_radical(b)?.bits == fit, || {
        "ζ_B-radical differs from Fit".into()
    });

    let cf = centraliser(b, fit, None)?.bits;
    if derived_length(b)?.is_some() {
        // ζ(Fit) need not be an ideal of B; the centraliser is its largest B-ideal part
        let zf = core_of(b, centre_of_ideal(b, fit)?)?.bits;
        c.check(cf.is_subset(fit) && cf == zf, || {
            "C_B(Fit) differs from the B-core of ζ(Fit) in a soluble brace".into()
        });
    }
    let (q, proj) = quotient(b, fit)?;
    let image = project(&proj, additive_span(b, cf.union(fit)));
    for k in ideals(&q)
        .into_iter()
        .filter(|&k| k != ElemSet::singleton(0) && k.is_subset(image))
    {
        let soluble = derived_series(&q, Some(k))?
            .position(ElemSet::singleton(0))
            .is_some();
        c.check(!soluble, || {
            format!(
                "(C_B(Fit) + Fit)/Fit contains a soluble ideal of order {}",
                k.len()
            )
        });
    }

    for i in ideals(b) {
        let (q, proj) = quotient(b, i)?;
        let fq = fitting_ideal(&q)?.bits;
        c.check(project(&proj, fit).is_subset(fq), || {
            format!("image of Fit is not inside Fit(B/I) for |I| = {}", i.len())
        });
    }

    let frat = frattini_ideal(b)?.bits;
    if nilpotency_class(b)?.is_some() {
        c.check(frat == non_generators(b), || {
            "Frat differs from the non-generators".into()
        });
    }
    let g = gaschutz_check(b)?;
    c.check(g.holds, || {
        "Fit is not the sum of the abelian minimal ideals although Frat = 0".into()
    });
    Ok(c)
}

fn sylow_checks(b: &FiniteBrace) -> Result<Checks> {
    let mut c = Checks::default();
    let r = sylow(b, None)?;
    if r.centrally_nilpotent {
        c.check(r.failures.is_empty(), || r.failures.join("; "));
        c.check(r.decomposes, || "no direct-product certificate".into());
        for p in &r.parts {
            c.check(p.coincide && p.ideal, || {
                format!("Sylow {}-parts differ or are not ideals", p.prime)
            });
        }
        for e in element_profiles(b).profiles {
            c.check(e.additive_primes == e.multiplicative_primes, || {
                format!(
                    "element {} has additive order {} and multiplicative order {}",
                    e.element, e.additive_order, e.multiplicative_order
                )
            });
        }
    } else {
        // the decomposition may fail, but a reported certificate must still be genuine
        c.check(!r.decomposes || r.certificate.is_some(), || {
            "decomposition claimed without certificate".into()
        });
    }
    let prof = element_profiles(b);
    if prof.both_cyclic {
        c.check(prof.common_generator.is_some(), || {
            "both groups cyclic but no common generator".into()
        });
    }
    Ok(c)
}

fn ybe_checks(b: &FiniteBrace) -> Result<Checks> {
    let mut c = Checks::default();
    let s = solution_from_brace(b);
    c.check(s.braid.holds, || {
        format!("braid relation fails at {:?}", s.braid.witness)
    });
    c.check(s.nondegenerate(), || "solution is degenerate".into());
    for i in ideals(b) {
        let (q, proj) = quotient(b, i)?;
        c.check(projection_is_morphism(b, &q, &proj), || {
            format!(
                "projection modulo an ideal of order {} is not a morphism",
                i.len()
            )
        });
    }
    Ok(c)
}

fn evaluate_enumeration(
    ctx: &mut Context,
    op: &str,
    map: &Map<String, Value>,
) -> Result<Evaluation> {
    let max = usize_arg(map, "max_order", 12)?;
    Ok(match op {
        "enumeration_counts" => {
            let counts: Vec<usize> = ctx
                .braces_up_to(max)?
                .iter()
                .map(|(_, v)| v.len())
                .collect();
            Actual::Json(json!(counts)).into()
        }
        "enumerated_gaschutz" => {
            let mut c = Checks::default();
            let mut applicable = 0;
            for (n, braces) in ctx.braces_up_to(max)? {
                for (k, b) in braces.iter().enumerate() {
                    let g = gaschutz_check(b)?;
                    applicable += g.applicable as usize;
                    c.check(g.holds, || format!("brace {k} of order {n}"));
                }
            }
            let mut e = suite(c);
            e.detail = e
                .detail
                .map(|d| format!("{d}; Frat = 0 in {applicable} braces"));
            e
        }
        "order_six_fit_frat" => {
            let braces = ctx.braces_up_to(6)?;
            let mut found = None;
            for (k, b) in braces[5].1.iter().enumerate() {
                let fit = fitting_ideal(b)?.bits;
                let frat = frattini_ideal(b)?.bits;
                let (all, zero) = (b.elements(), ElemSet::singleton(0));
                let proper: Vec<ElemSet> = all_substructures(b, Kind::LeftIdeal)
                    .into_iter()
                    .map(|s| s.bits)
                    .filter(|&s| s != all && s != zero)
                    .collect();
                if fit == frat && fit.len() == 3 && proper == vec![fit] {
                    found = Some(k);
                    break;
                }
            }
            Evaluation {
                actual: Actual::Bool(found.is_some()),
                detail: found.map(|k| format!("brace {k} of order 6")),
            }
        }
        "enumerated_ybe" => {
            let mut c = Checks::default();
            for (n, braces) in ctx.braces_up_to(max)? {
                for (k, b) in braces.iter().enumerate() {
                    let s = solution_from_brace(b);
                    c.check(s.braid.holds && s.nondegenerate(), || {
                        format!("brace {k} of order {n}")
                    });
                }
            }
            suite(c)
        }
        "enumerated_common_generator" => {
            let mut c = Checks::default();
            let mut cyclic = 0;
            for (n, braces) in ctx.braces_up_to(max)? {
                for (k, b) in braces.iter().enumerate() {
                    let p = element_profiles(b);
                    if p.both_cyclic {
                        cyclic += 1;
                        c.check(p.common_generator.is_some(), || {
                            format!("brace {k} of order {n}")
                        });
                    }
                }
            }
            let mut e = suite(c);
            e.detail = e
                .detail
                .map(|d| format!("{d}; {cyclic} braces with both groups cyclic"));
            e
        }
        "trivial_flip" => {
            let n = usize_arg(map, "order", 6)?;
            let b = trivial_brace(&Group::cyclic(n).rows())?;
            Actual::Bool(solution_from_brace(&b).solution == Solution::flip(n)).into()
        }
        other => return Err(Error::Parse(format!("unknown claim operation `{other}`"))),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matcher_handles_every_expectation_shape() {
        assert!(matches(None, &json!(null), &Actual::Int(None)).0);
        assert!(!matches(None, &json!(3), &Actual::Int(None)).0);
        assert!(matches(None, &json!({ "at_most": 3 }), &Actual::Int(Some(2))).0);
        assert!(!matches(None, &json!({ "at_most": 3 }), &Actual::Int(Some(4))).0);
        assert!(
            matches(
                None,
                &json!({ "size": 2 }),
                &Actual::Set([0, 1].into_iter().collect())
            )
            .0
        );
        assert!(matches(None, &json!([1, 2]), &Actual::Json(json!([1, 2]))).0);
        assert!(matches(None, &json!("subbrace"), &Actual::Str("subbrace".into())).0);
    }

    #[test]
    fn divides_power_uses_valuations() {
        assert!(divides_power(4, 2, 1));
        assert!(!divides_power(8, 2, 1));
        assert!(divides_power(16, 2, 2));
        assert!(!divides_power(3, 2, 5));
        assert!(divides_power(1, 1, 3));
    }
}
