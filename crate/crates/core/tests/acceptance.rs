//! Acceptance suite: one test per criterion, each printing a PASS line
//! when it completes within its budget. Exact arithmetic everywhere; no
//! tolerances.

use std::sync::Arc;
use std::time::{Duration, Instant};
use wittbrauer::checks;
use wittbrauer::field::parse::parse_elem;
use wittbrauer::field::{FieldCtx, FieldElem};
use wittbrauer::forms::{d_of_witt, reduce_form, solve_pi, OneForm};
use wittbrauer::realize::{center_basis, check_relations, realize_symbol, GeneratorPresentation};
use wittbrauer::symbol::pipeline::{albert_reduce, fold_prime_list, merge_step, AlbertOutcome};
use wittbrauer::symbol::rules::validate_trace;
use wittbrauer::symbol::{BrauerExpr, CyclicSymbol};
use wittbrauer::witt::universal::{universal, verify_ghost_identities};
use wittbrauer::witt::WittVector;

fn ctx(p: u64, vars: &[&str]) -> Arc<FieldCtx> {
    FieldCtx::new(p, vars).unwrap()
}

fn sym(omega: &[&str], beta: &str, c: &Arc<FieldCtx>) -> CyclicSymbol {
    let w = WittVector::new(omega.iter().map(|t| parse_elem(t, c).unwrap()).collect());
    CyclicSymbol::new(w, parse_elem(beta, c).unwrap()).unwrap()
}

fn within(budget: Duration, start: Instant, label: &str) {
    let elapsed = start.elapsed();
    assert!(
        elapsed <= budget,
        "{} exceeded its {:?} budget: took {:?}",
        label,
        budget,
        elapsed
    );
}

#[test]
fn criterion_01_universal_ghost_identities() {
    let start = Instant::now();
    for p in [2u64, 3, 5] {
        for m in 1..=3 {
            verify_ghost_identities(&universal(p, m)).unwrap();
        }
    }
    within(Duration::from_secs(10), start, "criterion 1");
    println!(
        "criterion 1: PASS - ghost identities over Q for p in {{2,3,5}}, m <= 3 ({:?})",
        start.elapsed()
    );
}

#[test]
fn criterion_02_witt_ring_axiom_suite() {
    let start = Instant::now();
    let r = checks::check_witt_ring_axioms(20260808, 200);
    assert!(r.passed, "{}", r.detail);
    within(Duration::from_secs(60), start, "criterion 2");
    println!(
        "criterion 2: PASS - 200 random triples per (p, m), p in {{2,3,5}}, m <= 3 ({:?})",
        start.elapsed()
    );
}

#[test]
fn criterion_03_length_two_shift_reproduction() {
    let start = Instant::now();
    let c = ctx(2, &["b", "x"]);
    let beta = parse_elem("b", &c).unwrap();
    let x = parse_elem("x", &c).unwrap();

    // carry of [b] + [x^4] is (b + x^4, b x^4) exactly
    let carry = WittVector::teichmuller(&beta, 2).add(&WittVector::teichmuller(
        &x.pow(4).unwrap(),
        2,
    ));
    assert_eq!(
        carry,
        WittVector::new(vec![
            parse_elem("b + x^4", &c).unwrap(),
            parse_elem("b*x^4", &c).unwrap()
        ])
    );

    // inv(pi) = (1, x^4)
    let sol = solve_pi(&beta, &x, 2).unwrap();
    let expected = WittVector::new(vec![FieldElem::one(&c), parse_elem("x^4", &c).unwrap()]);
    assert_eq!(sol.pi.inv().unwrap(), expected);
    assert_eq!(sol.mu, expected);

    // defining relation: pi * d[delta] - d[beta] reduces to zero over beta
    let mut relation = OneForm::zero(&c, 2);
    relation.push(1, sol.pi.clone(), 0, sol.shifted.clone());
    relation.push(-1, WittVector::unit(&c, 2), 0, beta.clone());
    assert!(reduce_form(&relation, &beta).unwrap().is_zero());

    // the dropped term: dV[x^4] reduces to zero
    let mut dropped = OneForm::zero(&c, 2);
    dropped.push(1, WittVector::unit(&c, 2), 1, parse_elem("x^4", &c).unwrap());
    assert!(reduce_form(&dropped, &beta).unwrap().is_zero());

    within(Duration::from_secs(5), start, "criterion 3");
    println!(
        "criterion 3: PASS - p=2, m=2 symbolic shift: carry, pi, relation, dropped term ({:?})",
        start.elapsed()
    );
}

#[test]
fn criterion_04_level_one_shift_identity() {
    let start = Instant::now();
    for p in [2u64, 3] {
        let c = ctx(p, &["a", "b", "x"]);
        let e = BrauerExpr::single(sym(&["a"], "b", &c));
        let x = parse_elem("x", &c).unwrap();
        let (after, _) =
            wittbrauer::symbol::pipeline::proposition_shift(&e, 0, &x).unwrap();
        let expect = sym(
            &[&format!("a*(b+x^{})/b", p)],
            &format!("b+x^{}", p),
            &c,
        );
        assert_eq!(after.factors[0], expect);
        let sol = solve_pi(&parse_elem("b", &c).unwrap(), &x, 1).unwrap();
        assert!(sol.pi.is_unit_value());
    }
    println!(
        "criterion 4: PASS - level-1 shift [a(b+x^p)/b, b+x^p) with pi = (1) for p in {{2,3}} ({:?})",
        start.elapsed()
    );
}

#[test]
fn criterion_05_shift_roundtrip_invariance() {
    let start = Instant::now();
    // 13 instances per (p, m) pair, 52 total >= 50
    let r = checks::check_shift_roundtrip(20260808, 13);
    assert!(r.passed, "{}", r.detail);
    println!(
        "criterion 5: PASS - 52 shift round-trips restore (omega, beta) exactly, p in {{2,3}}, m <= 2 ({:?})",
        start.elapsed()
    );
}

#[test]
fn criterion_06_neat_lemma_postconditions() {
    let start = Instant::now();
    let r = checks::check_neat_postconditions(20260808, 50);
    assert!(r.passed, "{}", r.detail);
    println!(
        "criterion 6: PASS - 50 alignment instances: x = alpha - beta, delta, wp witness ({:?})",
        start.elapsed()
    );
}

#[test]
fn criterion_07_merge_structural_reproduction() {
    let start = Instant::now();
    for m in [1usize, 2] {
        let c = ctx(2, &["d", "g", "t", "s"]);
        let tau: Vec<&str> = ["t", "s"][..m].to_vec();
        let a = sym(&tau, "d", &c);
        let b = sym(&["d"], "g", &c);
        let e = BrauerExpr::new(vec![a.clone(), b]).unwrap();
        let (merged, steps) = merge_step(&e, 0, 1).unwrap();
        assert_eq!(steps.len(), 4, "the merge trace has exactly 4 steps");
        let result = &merged.factors[0];
        // omega = (d, tau...) verbatim; beta = d * g^(p^m)
        assert_eq!(result.level(), m + 1);
        assert_eq!(result.omega.coord(1), &parse_elem("d", &c).unwrap());
        for (i, t) in tau.iter().enumerate() {
            assert_eq!(result.omega.coord(i + 2), &parse_elem(t, &c).unwrap());
        }
        assert_eq!(
            result.beta,
            parse_elem(&format!("d*g^{}", 2u64.pow(m as u32)), &c).unwrap()
        );
        let report = validate_trace(&wittbrauer::symbol::rules::DerivationTrace { steps });
        assert!(report.valid, "{:?}", report.failure);
    }
    println!(
        "criterion 7: PASS - merged symbol is [(d, tau), d*g^(p^m)) verbatim at m in {{1,2}}, 4-step trace replays ({:?})",
        start.elapsed()
    );
}

#[test]
fn criterion_08_two_symbol_fold_reproduction() {
    let start = Instant::now();
    for p in [2u64, 3] {
        let c = ctx(p, &["w", "b", "a", "g"]);
        let e = BrauerExpr::new(vec![sym(&["w"], "b", &c), sym(&["a"], "g", &c)]).unwrap();
        let (result, trace) = fold_prime_list(&e).unwrap();
        let delta = parse_elem(&format!("b+(a-b)^{}", p), &c).unwrap();
        let tau = parse_elem(&format!("w*(b+(a-b)^{})/b", p), &c).unwrap();
        assert_eq!(result.level(), 2);
        assert_eq!(result.omega.coord(1), &delta);
        assert_eq!(result.omega.coord(2), &tau, "tau = w * delta / b");
        let gamma_p = parse_elem("g", &c).unwrap().pow(p as i64).unwrap();
        assert_eq!(result.beta, delta.mul(&gamma_p));
        assert!(validate_trace(&trace).valid);
    }
    println!(
        "criterion 8: PASS - two-symbol fold gives tau = w*delta/b and [(delta,tau), delta*g^p) ({:?})",
        start.elapsed()
    );
}

#[test]
fn criterion_09_three_symbol_fold() {
    let start = Instant::now();
    let c = ctx(2, &["a1", "b1", "a2", "b2", "a3", "b3"]);
    let e = BrauerExpr::new(vec![
        sym(&["a1"], "b1", &c),
        sym(&["a2"], "b2", &c),
        sym(&["a3"], "b3", &c),
    ])
    .unwrap();
    let (result, trace) = fold_prime_list(&e).unwrap();
    assert_eq!(result.level(), 3);
    let report = validate_trace(&trace);
    assert!(report.valid, "{:?}", report.failure);
    within(Duration::from_secs(30), start, "criterion 9");
    println!(
        "criterion 9: PASS - three generic symbols over a 6-indeterminate field fold to level 3; trace replays ({:?})",
        start.elapsed()
    );
}

#[test]
fn criterion_10_albert_recursion() {
    let start = Instant::now();
    // all-level-1 inputs agree with the direct fold
    let c1 = ctx(2, &["t", "s", "u"]);
    let pair = BrauerExpr::new(vec![sym(&["t"], "s", &c1), sym(&["s"], "u", &c1)]).unwrap();
    let folded = fold_prime_list(&pair).unwrap().0;
    match albert_reduce(&pair).unwrap() {
        AlbertOutcome::Cyclic { symbol, .. } => assert_eq!(symbol, folded),
        _ => panic!("level-1 input must reduce completely"),
    }
    // the mixed input halts with a replayable exponent-p certificate
    let c = ctx(2, &["t", "s", "u", "v", "w"]);
    let mixed = BrauerExpr::new(vec![sym(&["t", "s"], "u", &c), sym(&["v"], "w", &c)]).unwrap();
    match albert_reduce(&mixed).unwrap() {
        AlbertOutcome::Halt(report) => {
            assert_eq!(report.power_class, sym(&["t^2"], "u", &c));
            assert!(validate_trace(&report.power_trace).valid);
            let cert = validate_trace(&report.certificate);
            assert!(cert.valid, "{:?}", cert.failure);
            assert!(report.certificate.steps.last().unwrap().after.is_empty());
            // the clearing shift uses the recursion's omega as witness
            let shift = report
                .certificate
                .steps
                .iter()
                .rev()
                .find(|s| s.rule == wittbrauer::symbol::rules::RuleId::AsShift)
                .unwrap();
            let tau = shift
                .witnesses
                .iter()
                .find_map(|(n, v)| match (n.as_str(), v) {
                    ("tau", wittbrauer::symbol::rules::WitnessValue::Witt(w)) => Some(w.clone()),
                    _ => None,
                })
                .unwrap();
            assert_eq!(tau, report.power_class.omega);
        }
        _ => panic!("mixed input must halt with a report"),
    }
    println!(
        "criterion 10: PASS - level-1 inputs fold; mixed input halts with a validated exponent-p certificate ({:?})",
        start.elapsed()
    );
}

#[test]
fn criterion_11_realization() {
    let start = Instant::now();
    for p in [2u64, 3] {
        let c = ctx(p, &["t", "s"]);
        let s = sym(&["t"], "s", &c);
        let a = realize_symbol(&s).unwrap();
        assert_eq!(a.dim as u64, p * p);
        assert!(check_relations(&a, &GeneratorPresentation::of(&s)));
        assert_eq!(center_basis(&a).len(), 1);
    }
    // level 2 at p = 2: dimension 16, full 16^3 associativity, center rank 1
    let c = ctx(2, &["d", "t", "b"]);
    let s = sym(&["d", "t"], "b", &c);
    let a = realize_symbol(&s).unwrap();
    assert_eq!(a.dim, 16);
    assert!(check_relations(&a, &GeneratorPresentation::of(&s)));
    for i in 0..16 {
        for j in 0..16 {
            let ij = a.table[i][j].clone();
            for k in 0..16 {
                assert_eq!(
                    a.mul_vec(&ij, &a.basis_vec(k)),
                    a.mul_vec(&a.basis_vec(i), &a.table[j][k]),
                    "associativity fails at ({}, {}, {})",
                    i,
                    j,
                    k
                );
            }
        }
    }
    assert_eq!(center_basis(&a).len(), 1);
    within(Duration::from_secs(120), start, "criterion 11");
    println!(
        "criterion 11: PASS - realizations: p^2 at level 1 for p in {{2,3}}; 16-dim level 2 with full associativity ({:?})",
        start.elapsed()
    );
}
