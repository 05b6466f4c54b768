use std::io::Write;
use std::time::Instant;
use wittbrauer::field::parse::parse_elem;
use wittbrauer::field::FieldCtx;
use wittbrauer::symbol::pipeline::fold_prime_list;
use wittbrauer::symbol::{BrauerExpr, CyclicSymbol};
use wittbrauer::witt::WittVector;

#[test]
fn p3_three_fold_cost() {
    let ctx = FieldCtx::new(3, &["a1", "b1", "a2", "b2", "a3", "b3"]).unwrap();
    let sym = |o: &str, b: &str| {
        CyclicSymbol::new(
            WittVector::new(vec![parse_elem(o, &ctx).unwrap()]),
            parse_elem(b, &ctx).unwrap(),
        )
        .unwrap()
    };
    // two-symbol fold first
    let t = Instant::now();
    let e2 = BrauerExpr::new(vec![sym("a1", "b1"), sym("a2", "b2")]).unwrap();
    let (s2, _) = fold_prime_list(&e2).unwrap();
    eprintln!("p=3 two-fold: {:?}; coord sizes {:?}", t.elapsed(),
        s2.omega.coords().iter().map(|c| c.num().terms.len()).collect::<Vec<_>>());
    std::io::stderr().flush().unwrap();
    // three-symbol fold
    let t = Instant::now();
    let e3 = BrauerExpr::new(vec![sym("a1", "b1"), sym("a2", "b2"), sym("a3", "b3")]).unwrap();
    let (s3, trace) = fold_prime_list(&e3).unwrap();
    eprintln!(
        "p=3 three-fold: {:?}; levels {}; coord term counts {:?}; beta terms {}",
        t.elapsed(),
        s3.level(),
        s3.omega.coords().iter().map(|c| c.num().terms.len()).collect::<Vec<_>>(),
        s3.beta.num().terms.len()
    );
    std::io::stderr().flush().unwrap();
    let t = Instant::now();
    let rep = wittbrauer::symbol::rules::validate_trace(&trace);
    eprintln!("validate: {:?} valid={}", t.elapsed(), rep.valid);
}
