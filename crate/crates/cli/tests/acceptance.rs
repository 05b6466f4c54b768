//! Acceptance criterion for the command-line layer: parse/print
//! round-trips, JSON trace re-validation, and the documented exit codes.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use std::process::Command;
use std::time::Instant;
use wittbrauer::checks::{sample_elem, sample_nonzero};
use wittbrauer::symbol::pipeline::fold_prime_list;
use wittbrauer::symbol::rules::validate_trace;
use wittbrauer::symbol::{BrauerExpr, CyclicSymbol};
use wittbrauer::witt::WittVector;
use wittbrauer_cli::{emit_trace, make_ctx, parse_expression, trace_from_json, TraceJson};

#[test]
fn criterion_12_cli_interface() {
    let start = Instant::now();

    // parse/print round-trip on 100 random expressions
    let mut rng = StdRng::seed_from_u64(20260808);
    for p in [2u64, 3] {
        let ctx = make_ctx(p, "t,s,u,v").unwrap();
        for _ in 0..50 {
            let n = rng.random_range(1..=3usize);
            let mut factors = Vec::new();
            for _ in 0..n {
                let m = rng.random_range(1..=2usize);
                let omega = WittVector::new((0..m).map(|_| sample_elem(&ctx, &mut rng)).collect());
                let beta = sample_nonzero(&ctx, &mut rng);
                factors.push(CyclicSymbol::new(omega, beta).unwrap());
            }
            let expr = BrauerExpr::new(factors).unwrap();
            let text = expr.to_string();
            let back = parse_expression(&text, &ctx).unwrap();
            assert_eq!(back, expr, "round-trip failed on `{}`", text);
        }
    }

    // emitted JSON traces re-validate after a serialize/deserialize cycle
    let ctx = make_ctx(2, "t,s,u,w").unwrap();
    let e = parse_expression("[(w), t)_{2} * [(s), u)_{2}", &ctx).unwrap();
    let (result, trace) = fold_prime_list(&e).unwrap();
    let json = emit_trace(&trace, &result.to_string());
    assert!(json.valid);
    let round: TraceJson = serde_json::from_str(&serde_json::to_string(&json).unwrap()).unwrap();
    let replayed = trace_from_json(&round, &ctx).unwrap();
    assert!(validate_trace(&replayed).valid);

    // the three documented exit classes, observed on the real binary
    let bin = env!("CARGO_BIN_EXE_wittbrauer");
    let run = |args: &[&str]| Command::new(bin).args(args).output().unwrap();
    let ok = run(&["--prime", "2", "--vars", "t,s", "witt", "add (t,0) (s,0)"]);
    assert_eq!(ok.status.code(), Some(0));
    let domain = run(&["--prime", "2", "--vars", "t,s", "witt", "inv (0,t)"]);
    assert_eq!(domain.status.code(), Some(1));
    let degenerate = run(&[
        "--prime", "2", "--vars", "t,g", "fold", "[(t), t^2)_{2} * [(t^2+t), g)_{2}",
    ]);
    assert_eq!(degenerate.status.code(), Some(1));
    let parse = run(&["--prime", "2", "--vars", "t,s", "fold", "[(t), s)_{3}"]);
    assert_eq!(parse.status.code(), Some(2));

    println!(
        "criterion 12: PASS - 100 expression round-trips, JSON trace re-validation, exit codes 0/1/2 ({:?})",
        start.elapsed()
    );
}
