//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Criteria 1–10 are read off the fixture manifests (each claim carries the
//! number of the criterion it supports) together with a few direct checks;
//! criterion 11 drives the command-line binary on pristine and corrupted
//! copies of the fixtures.

use std::path::Path;
use std::process::Command;
use std::time::Instant;

use serde_json::Value;

use skewbrace::commutator::{commutator_ideal, star_span, star_sum_is_ideal};
use skewbrace::construct::{enumerate_braces, trivial_brace};
use skewbrace::fixtures::{builtin, builtin_fixture, builtin_sources, FixtureFile};
use skewbrace::group::Group;
use skewbrace::verify::{verify_all, VerifyReport};
use skewbrace::ybe::{solution_from_brace, Solution};

struct Line {
    criterion: u32,
    title: &'static str,
    passed: bool,
    note: String,
}

fn claims_line(report: &VerifyReport, criterion: u32) -> (bool, String) {
    let (ok, total) = report
        .by_criterion()
        .get(&criterion)
        .copied()
        .unwrap_or((0, 0));
    let failed: Vec<&str> = report
        .outcomes()
        .filter(|c| c.criterion == criterion && !c.passed)
        .map(|c| c.id.as_str())
        .collect();
    let note = if failed.is_empty() {
        format!("{ok}/{total} claims")
    } else {
        format!("{ok}/{total} claims; failed: {}", failed.join(", "))
    };
    (total > 0 && ok == total, note)
}

fn b16_direct() -> bool {
    let fx = builtin_fixture("b16").unwrap().build().unwrap();
    let b = &fx.brace;
    let i = fx.set("I").unwrap();
    let star = star_span(b, i, i).bits;
    let comm = commutator_ideal(b, i, i).unwrap().bits;
    star.len() == 2 && !star_sum_is_ideal(b, i, i).is_ideal && star.is_subset(comm) && star != comm
}

fn trivial_flip() -> bool {
    (1..=8).all(|n| {
        solution_from_brace(&trivial_brace(&Group::cyclic(n).rows()).unwrap()).solution
            == Solution::flip(n)
    })
}

fn run_cli(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_skewbrace"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

fn write_fixtures(dir: &Path) {
    for (name, text) in builtin_sources() {
        std::fs::write(dir.join(name), text).unwrap();
    }
}

/// Every single-entry corruption of every cocycle and action table.
fn corruptions(file: &FixtureFile) -> Vec<FixtureFile> {
    let mut out = Vec::new();
    let Some(add) = &file.additive else {
        return out;
    };
    let first = add.generators[0].clone();
    for k in 0..file.delta.len() {
        let mut f = file.clone();
        f.delta[k][1] = format!("{}+{first}", f.delta[k][1]);
        out.push(f);
    }
    for (g, images) in &file.action {
        for k in 0..images.len() {
            let mut f = file.clone();
            let img = &mut f.action.get_mut(g).unwrap()[k];
            *img = format!("{img}+{}", add.generators[(k + 1) % add.generators.len()]);
            out.push(f);
        }
    }
    out
}

fn end_to_end() -> (bool, String) {
    let dir = tempfile::tempdir().unwrap();
    write_fixtures(dir.path());
    let d = dir.path().to_str().unwrap();
    let (pristine, stdout, _) = run_cli(&["paper-verify", "--fixtures", d]);
    let report: Value = serde_json::from_str(&stdout).unwrap_or(Value::Null);

    // one corrupted table entry in b16, through the binary
    let mut b16 = builtin_fixture("b16").unwrap();
    b16.delta[5][1] = "x".into();
    std::fs::write(
        dir.path().join("b16.json"),
        serde_json::to_string_pretty(&b16).unwrap(),
    )
    .unwrap();
    let (corrupted, _, stderr) = run_cli(&["paper-verify", "--fixtures", d]);
    let names_claim = stderr.contains("first failed claim: b16-");

    // every single-entry corruption of every fixture, through the library
    let mut total = 0;
    let mut caught = 0;
    for file in builtin() {
        for bad in corruptions(&file) {
            total += 1;
            caught += !verify_all(std::slice::from_ref(&bad)).passed as usize;
        }
    }
    let ok = pristine == 0
        && report["passed"] == Value::Bool(true)
        && corrupted == 1
        && names_claim
        && caught == total;
    (ok, format!("pristine exit {pristine}, corrupted exit {corrupted}, {caught}/{total} single-entry corruptions rejected"))
}

fn main() {
    let t = Instant::now();
    let report = verify_all(&builtin());
    let manifest_time = t.elapsed();

    let mut lines = Vec::new();
    let mut add = |criterion, title, (passed, note): (bool, String)| {
        lines.push(Line {
            criterion,
            title,
            passed,
            note,
        })
    };

    let (ok, note) = claims_line(&report, 1);
    add(
        1,
        "commutator theorem and the b16 star-product example",
        (ok && b16_direct(), note),
    );
    add(2, "absorbing-word oracle", claims_line(&report, 2));
    add(3, "no idealiser (b32a)", claims_line(&report, 3));
    add(
        4,
        "Fitting failure for centrally nilpotent ideals (b32b)",
        claims_line(&report, 4),
    );
    add(
        5,
        "subideal outside every centrally nilpotent ideal (b24)",
        claims_line(&report, 5),
    );
    add(
        6,
        "subideals without solubility (b32c)",
        claims_line(&report, 6),
    );
    add(7, "series dualities and bounds", claims_line(&report, 7));

    let t = Instant::now();
    let counts: Vec<usize> = (1..=12)
        .map(|n| enumerate_braces(n, true).map(|v| v.len()).unwrap_or(0))
        .collect();
    let enum_time = t.elapsed();
    let (ok, note) = claims_line(&report, 8);
    add(
        8,
        "Fitting and Frattini ideals",
        (
            ok && enum_time.as_secs() <= 600,
            format!("{note}; enumeration to order 12 in {enum_time:.1?}"),
        ),
    );
    add(
        9,
        "Sylow decomposition and element orders",
        claims_line(&report, 9),
    );
    let (ok, note) = claims_line(&report, 10);
    add(10, "Yang–Baxter solutions", (ok && trivial_flip(), note));

    let (ok0, note0) = claims_line(&report, 0);
    let (ok, note) = end_to_end();
    let counts_ok = counts == [1, 1, 1, 4, 1, 6, 1, 47, 4, 6, 1, 38];
    add(
        11,
        "end-to-end verification and corruption detection",
        (
            ok && ok0 && counts_ok,
            format!("{note}; {note0} on orders and counts"),
        ),
    );

    let mut all = true;
    for l in &lines {
        all &= l.passed;
        println!(
            "{} criterion {:>2}: {} ({})",
            if l.passed { "PASS" } else { "FAIL" },
            l.criterion,
            l.title,
            l.note
        );
    }
    println!("manifests evaluated in {manifest_time:.1?}");
    if !all {
        std::process::exit(1);
    }
}
