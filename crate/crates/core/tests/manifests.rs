use skewbrace::fixtures::builtin;
use skewbrace::verify::{verify_file, Context};

#[test]
fn every_builtin_claim_holds() {
    let mut ctx = Context::new();
    let mut failed = Vec::new();
    for f in builtin() {
        let t = std::time::Instant::now();
        let r = verify_file(&f, &mut ctx);
        eprintln!("{}: {:.1?}", f.id, t.elapsed());
        for c in r.claims.iter().filter(|c| !c.passed) {
            failed.push(format!(
                "{} expected {} got {} ({:?})",
                c.id, c.expected, c.actual, c.detail
            ));
        }
    }
    assert!(failed.is_empty(), "{}", failed.join("\n"));
}
