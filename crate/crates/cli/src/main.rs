//! `skewbrace` — analyse finite left skew braces from the command line.
//!
//! Every command prints one JSON document on standard output. Exit status is
//! 0 on success, 1 when the input is not a valid brace or a claim fails, and
//! 2 for usage errors and unreadable input.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use skewbrace::commutator::{absorbing_soundness, commutator_routes, star_span, star_sum_is_ideal};
use skewbrace::construct::{enumerate_braces, from_cocycle, CocycleSpec, CocycleSpecJson};
use skewbrace::fixtures::{builtin, load_dir, FixtureFile};
use skewbrace::radicals::{
    distinguished_ideal, element_profiles, fitting_ideal, frattini_ideal, sylow, zeta_b_radical,
    Distinguished,
};
use skewbrace::series::{
    b_central_series, chief_series, derived_length, derived_series, lower_central_series,
    nilpotency_class, upper_central_series, BDirection, ChiefStrategy, SeriesKind,
};
use skewbrace::subideal::{
    ideal_closure_series, idealiser_report, index_of, strong_left_normaliser, subideal_audit,
};
use skewbrace::substructure::{all_substructures, classify, ideals, Kind};
use skewbrace::verify::verify_all;
use skewbrace::ybe::solution_from_brace;
use skewbrace::{BraceJson, ElemSet, Error, FiniteBrace};

#[derive(Parser)]
#[command(
    name = "skewbrace",
    version,
    about = "Finite left skew braces: substructures, commutators, series, radicals"
)]
struct Cli {
    /// Also write the JSON output to this file.
    #[arg(long, global = true, value_name = "PATH")]
    json: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check that the input describes a skew brace.
    Validate { input: PathBuf },
    /// Summary of the structure of a brace.
    Analyze { input: PathBuf },
    /// Substructures of one kind (ideal by default).
    Ideals {
        input: PathBuf,
        #[arg(long, default_value = "ideal")]
        kind: String,
    },
    /// A series: upper, lower, derived, chief, b-lower, b-upper or ideal-closure.
    Series {
        input: PathBuf,
        #[arg(long, default_value = "upper")]
        kind: String,
        /// The ideal (or subbrace, for ideal-closure) the series is relative to.
        #[arg(long)]
        set: Option<String>,
        /// Choose minimal ideals pseudo-randomly for chief series.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// The commutator of two ideals, by both routes, with the absorbing-word check.
    Commutator {
        input: PathBuf,
        /// Give twice for [I, J]; once for [I, I]; omitted means B.
        #[arg(long)]
        set: Vec<String>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
    },
    /// Closure series, index, idealiser and normaliser of a subbrace.
    Subideal {
        input: PathBuf,
        #[arg(long)]
        set: String,
    },
    /// Subideal status of every subbrace.
    Audit { input: PathBuf },
    /// The set-theoretic solution of the Yang–Baxter equation of a brace.
    Ybe { input: PathBuf },
    /// All braces of a given order, up to isomorphism.
    Enumerate { order: usize },
    /// Run every claim of the fixture manifests.
    PaperVerify {
        #[arg(long, value_name = "DIR")]
        fixtures: Option<PathBuf>,
    },
}

/// Failure of a command, mapped to an exit status.
enum Failure {
    Usage(String),
    Invalid(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Json(_) | Error::Parse(_) => Failure::Usage(e.to_string()),
            _ => Failure::Invalid(e.to_string()),
        }
    }
}

type Outcome = Result<(Value, bool), Failure>;

/// A brace read from a file, with named sets when it came from a fixture.
struct Input {
    brace: FiniteBrace,
    fixture: Option<skewbrace::fixtures::Fixture>,
}

impl Input {
    fn render(&self, s: ElemSet) -> Value {
        match &self.fixture {
            Some(f) => json!(s.iter().map(|x| f.render(x)).collect::<Vec<_>>()),
            None => json!(s.to_vec()),
        }
    }

    fn set(&self, spec: &str) -> Result<ElemSet, Failure> {
        if let Some(f) = &self.fixture {
            if let Ok(s) = f.set(spec) {
                return Ok(s);
            }
        }
        let mut out = ElemSet::empty();
        for tok in spec.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let i: usize = tok.parse().map_err(|_| {
                Failure::Usage(format!("`{tok}` is not an element index or set name"))
            })?;
            if i >= self.brace.order() {
                return Err(Failure::Usage(format!(
                    "element {i} is out of range for order {}",
                    self.brace.order()
                )));
            }
            out.insert(i);
        }
        Ok(out)
    }
}

fn read_input(path: &Path) -> Result<Input, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    let value: Value =
        serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("malformed JSON: {e}")))?;
    let obj = value
        .as_object()
        .ok_or_else(|| Failure::Usage("expected a JSON object".into()))?;
    if obj.contains_key("claims") {
        let file: FixtureFile = serde_json::from_value(value)
            .map_err(|e| Failure::Usage(format!("bad fixture: {e}")))?;
        let fx = file.build()?;
        return Ok(Input {
            brace: fx.brace.clone(),
            fixture: Some(fx),
        });
    }
    if obj.contains_key("actor") {
        let spec: CocycleSpecJson = serde_json::from_value(value)
            .map_err(|e| Failure::Usage(format!("bad cocycle spec: {e}")))?;
        return Ok(Input {
            brace: from_cocycle(&CocycleSpec::from_json(&spec)?)?,
            fixture: None,
        });
    }
    let json: BraceJson = serde_json::from_value(value)
        .map_err(|e| Failure::Usage(format!("bad brace file: {e}")))?;
    Ok(Input {
        brace: FiniteBrace::from_json(&json)?,
        fixture: None,
    })
}

fn to_value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("report types serialise")
}

fn validate(path: &Path) -> Outcome {
    match read_input(path) {
        Ok(i) => {
            let b = &i.brace;
            Ok((
                json!({
                    "valid": true,
                    "order": b.order(),
                    "name": b.name(),
                    "abelian_type": b.is_abelian_type(),
                    "trivial": b.is_trivial(),
                }),
                true,
            ))
        }
        Err(Failure::Invalid(e)) => Ok((json!({ "valid": false, "error": e }), false)),
        Err(e) => Err(e),
    }
}

fn analyze(input: &Input) -> Outcome {
    let b = &input.brace;
    let mut counts = serde_json::Map::new();
    for k in Kind::ALL {
        counts.insert(
            format!("{k:?}").to_lowercase(),
            json!(all_substructures(b, k).len()),
        );
    }
    let mut distinguished = serde_json::Map::new();
    for d in Distinguished::ALL {
        distinguished.insert(
            format!("{d:?}").to_lowercase(),
            input.render(distinguished_ideal(b, d)?.bits),
        );
    }
    let chief = chief_series(b, ChiefStrategy::Lexicographic)?;
    let sy = sylow(b, None)?;
    let y = solution_from_brace(b);
    let profiles = element_profiles(b);
    Ok((
        json!({
            "order": b.order(),
            "abelian_type": b.is_abelian_type(),
            "trivial": b.is_trivial(),
            "substructure_counts": counts,
            "ideals": ideals(b).into_iter().map(|s| input.render(s)).collect::<Vec<_>>(),
            "distinguished": distinguished,
            "nilpotency_class": nilpotency_class(b)?,
            "derived_length": derived_length(b)?,
            "chief_factor_orders": chief.factor_orders(),
            "chief_factors_central": chief.all_central(),
            "fitting": input.render(fitting_ideal(b)?.bits),
            "frattini": input.render(frattini_ideal(b)?.bits),
            "zeta_b_radical": input.render(zeta_b_radical(b)?.bits),
            "sylow_decomposes": sy.decomposes,
            "common_cyclic_generator": profiles.common_generator,
            "ybe": { "braid": y.braid.holds, "nondegenerate": y.nondegenerate() },
        }),
        true,
    ))
}

fn list_kind(input: &Input, kind: &str) -> Outcome {
    let k = Kind::parse(kind).ok_or_else(|| Failure::Usage(format!("unknown kind `{kind}`")))?;
    let b = &input.brace;
    let members: Vec<Value> = all_substructures(b, k)
        .into_iter()
        .map(|s| json!({ "elements": input.render(s.bits), "order": s.len(), "flags": s.flags }))
        .collect();
    Ok((
        json!({ "kind": kind, "count": members.len(), "members": members }),
        true,
    ))
}

fn series(input: &Input, kind: &str, set: Option<&str>, seed: Option<u64>) -> Outcome {
    let b = &input.brace;
    let k = SeriesKind::parse(kind)
        .ok_or_else(|| Failure::Usage(format!("unknown series `{kind}`")))?;
    let rel = set.map(|s| input.set(s)).transpose()?;
    let chain_json = |chain: &[ElemSet]| {
        chain
            .iter()
            .map(|&s| json!({ "elements": input.render(s), "order": s.len() }))
            .collect::<Vec<_>>()
    };
    let out = match k {
        SeriesKind::UpperCentral
        | SeriesKind::LowerCentral
        | SeriesKind::Derived
        | SeriesKind::BLower
        | SeriesKind::BUpper => {
            let s = match k {
                SeriesKind::UpperCentral => upper_central_series(b)?,
                SeriesKind::LowerCentral => lower_central_series(b)?,
                SeriesKind::Derived => derived_series(b, rel)?,
                SeriesKind::BLower => {
                    b_central_series(b, rel.unwrap_or(b.elements()), BDirection::Lower)?
                }
                _ => b_central_series(b, rel.unwrap_or(b.elements()), BDirection::Upper)?,
            };
            let chain: Vec<ElemSet> = s.chain.iter().map(|m| m.bits).collect();
            json!({ "kind": s.kind, "chain": chain_json(&chain), "stabilised": s.stabilised, "terminal": input.render(s.terminal.bits) })
        }
        SeriesKind::Chief => {
            let strategy = seed.map_or(ChiefStrategy::Lexicographic, ChiefStrategy::Seeded);
            let c = chief_series(b, strategy)?;
            let chain: Vec<ElemSet> = c.series.chain.iter().map(|m| m.bits).collect();
            json!({
                "kind": "chief",
                "strategy": strategy,
                "chain": chain_json(&chain),
                "factor_orders": c.factor_orders(),
                "central": c.factors.iter().map(|f| f.central).collect::<Vec<_>>(),
            })
        }
        SeriesKind::IdealClosure => {
            let c = rel.ok_or_else(|| Failure::Usage("ideal-closure needs --set".into()))?;
            let s = ideal_closure_series(b, c)?;
            json!({ "kind": "ideal_closure", "chain": chain_json(&s.chain), "subideal": s.is_subideal(), "defect": s.defect })
        }
    };
    Ok((out, true))
}

fn commutator(input: &Input, sets: &[String], seed: u64, samples: usize) -> Outcome {
    let b = &input.brace;
    let (i, j) = match sets {
        [] => (b.elements(), b.elements()),
        [s] => (input.set(s)?, input.set(s)?),
        [s, t] => (input.set(s)?, input.set(t)?),
        _ => return Err(Failure::Usage("give --set at most twice".into())),
    };
    for s in [i, j] {
        if !classify(b, s).flags.ideal {
            return Err(Error::NotAnIdeal.into());
        }
    }
    let routes = commutator_routes(b, i, j);
    let star = star_sum_is_ideal(b, i, j);
    let sound = absorbing_soundness(b, &[(i, j)], samples, seed)?;
    let agree = routes.star_route == routes.generator_route;
    Ok((
        json!({
            "commutator": input.render(routes.star_route),
            "order": routes.star_route.len(),
            "routes_agree": agree,
            "star_span": input.render(star_span(b, i, j).bits),
            "star_sum_is_ideal": star.is_ideal,
            "absorbing": { "words": sound.words, "escapes": sound.escapes.len(), "stats": sound.stats, "seed": seed },
        }),
        agree && sound.escapes.is_empty(),
    ))
}

fn subideal(input: &Input, set: &str) -> Outcome {
    let b = &input.brace;
    let c = input.set(set)?;
    let series = ideal_closure_series(b, c)?;
    let index = index_of(b, c)?;
    let ideal = idealiser_report(b, c)?;
    let norm = strong_left_normaliser(b, c)?;
    Ok((
        json!({
            "subbrace": input.render(c),
            "closure_series": series.chain.iter().map(|&s| input.render(s)).collect::<Vec<_>>(),
            "subideal": series.is_subideal(),
            "defect": series.defect,
            "index": index,
            "idealiser": {
                "exists": ideal.idealiser.is_some(),
                "idealiser": ideal.idealiser.map(|s| input.render(s)),
                "maximal": ideal.maximal.iter().map(|&s| input.render(s)).collect::<Vec<_>>(),
                "witnesses": ideal.witnesses.map(|(t, u)| [input.render(t), input.render(u)]),
            },
            "strong_left_normaliser": {
                "normaliser": norm.normaliser.map(|s| input.render(s)),
                "maximal": norm.maximal.iter().map(|&s| input.render(s)).collect::<Vec<_>>(),
                "contains_subbrace": norm.contains_c,
            },
        }),
        true,
    ))
}

fn audit(input: &Input) -> Outcome {
    let r = subideal_audit(&input.brace)?;
    let entries: Vec<Value> = r
        .entries
        .iter()
        .map(|e| json!({ "subbrace": input.render(e.subbrace), "order": e.order, "subideal": e.subideal, "defect": e.defect }))
        .collect();
    Ok((
        json!({
            "subbraces": entries,
            "all_subideal": r.all_subideal,
            "nilpotency_class": r.nilpotency_class,
            "derived_length": r.derived_length,
            "soluble": r.soluble(),
        }),
        true,
    ))
}

fn ybe(input: &Input) -> Outcome {
    let y = solution_from_brace(&input.brace);
    let ok = y.braid.holds && y.nondegenerate();
    Ok((to_value(&y), ok))
}

fn enumerate(order: usize) -> Outcome {
    let braces = enumerate_braces(order, true)?;
    Ok((
        json!({
            "order": order,
            "count": braces.len(),
            "braces": braces.iter().map(FiniteBrace::to_json).collect::<Vec<_>>(),
        }),
        true,
    ))
}

fn paper_verify(dir: Option<&Path>) -> Outcome {
    let files = match dir {
        Some(d) => load_dir(d).map_err(|e| Failure::Usage(e.to_string()))?,
        None => builtin(),
    };
    let report = verify_all(&files);
    for f in &report.fixtures {
        for c in &f.claims {
            eprintln!(
                "{:<4} {:<8} c{:<2} {}",
                if c.passed { "PASS" } else { "FAIL" },
                f.id,
                c.criterion,
                c.id
            );
        }
    }
    if let Some(c) = report.first_failure() {
        eprintln!(
            "first failed claim: {} (expected {}, got {})",
            c.id, c.expected, c.actual
        );
    }
    let passed = report.passed;
    Ok((to_value(&report), passed))
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Validate { input } => validate(input),
        Command::Analyze { input } => analyze(&read_input(input)?),
        Command::Ideals { input, kind } => list_kind(&read_input(input)?, kind),
        Command::Series {
            input,
            kind,
            set,
            seed,
        } => series(&read_input(input)?, kind, set.as_deref(), *seed),
        Command::Commutator {
            input,
            set,
            seed,
            samples,
        } => commutator(&read_input(input)?, set, *seed, *samples),
        Command::Subideal { input, set } => subideal(&read_input(input)?, set),
        Command::Audit { input } => audit(&read_input(input)?),
        Command::Ybe { input } => ybe(&read_input(input)?),
        Command::Enumerate { order } => enumerate(*order),
        Command::PaperVerify { fixtures } => paper_verify(fixtures.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((value, ok)) => {
            let text = serde_json::to_string_pretty(&value).expect("JSON values serialise");
            // a closed pipe (e.g. `| head`) is not an error worth a panic
            let _ = writeln!(std::io::stdout().lock(), "{text}");
            if let Some(path) = &cli.json {
                if let Err(e) = std::fs::write(path, format!("{text}\n")) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Invalid(msg)) => {
            let _ = writeln!(std::io::stdout().lock(), "{}", json!({ "error": msg }));
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
