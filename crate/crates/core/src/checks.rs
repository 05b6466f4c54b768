//! Named self-check suites: property batteries over seeded random samples,
//! shared between the CLI `check` subcommand and the acceptance tests.

use crate::field::parse::parse_elem;
use crate::field::{FieldCtx, FieldElem};
use crate::forms::solve_pi;
use crate::realize::{center_basis, check_relations, realize_symbol, GeneratorPresentation};
use crate::symbol::pipeline::{fold_prime_list, proposition_shift};
use crate::symbol::rules::validate_trace;
use crate::symbol::{BrauerExpr, CyclicSymbol};
use crate::witt::universal::{universal, verify_ghost_identities};
use crate::witt::WittVector;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use std::sync::Arc;
use std::time::{Duration, Instant};

/// Outcome of one named suite.
#[derive(Debug, Clone)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

/// Random field element: a sparse mix of constants, single variables and
/// linear polynomials, occasionally inverted. Sparse inputs keep the big
/// (p, m) cases inside their time budgets while still exercising fractions.
pub fn sample_elem(ctx: &Arc<FieldCtx>, rng: &mut StdRng) -> FieldElem {
    let p = ctx.p() as i64;
    let vars = &ctx.vars;
    let var = |rng: &mut StdRng| {
        let name = &vars[rng.random_range(0..vars.len())];
        FieldElem::var(ctx, name).unwrap()
    };
    let mut e = match rng.random_range(0..4) {
        0 => FieldElem::from_int(ctx, rng.random_range(0..p)),
        1 => var(rng),
        2 => var(rng).add(&FieldElem::from_int(ctx, rng.random_range(0..p))),
        _ => {
            let c = FieldElem::from_int(ctx, rng.random_range(1..p));
            var(rng).mul(&c).add(&var(rng))
        }
    };
    if rng.random_range(0..8) == 0 {
        let d = var(rng);
        if !d.is_zero() {
            e = e.div(&d).unwrap();
        }
    }
    e
}

pub fn sample_nonzero(ctx: &Arc<FieldCtx>, rng: &mut StdRng) -> FieldElem {
    loop {
        let e = sample_elem(ctx, rng);
        if !e.is_zero() {
            return e;
        }
    }
}

pub fn sample_witt(ctx: &Arc<FieldCtx>, m: usize, rng: &mut StdRng) -> WittVector {
    WittVector::new((0..m).map(|_| sample_elem(ctx, rng)).collect())
}

fn run(name: &'static str, body: impl FnOnce() -> Result<String, String>) -> CheckResult {
    let start = Instant::now();
    match body() {
        Ok(detail) => CheckResult { name, passed: true, detail, elapsed: start.elapsed() },
        Err(detail) => CheckResult { name, passed: false, detail, elapsed: start.elapsed() },
    }
}

/// Ghost compatibility of the universal polynomials as exact polynomial
/// identities over the rationals, p in {2,3,5}, m <= 3.
pub fn check_universal_ghost() -> CheckResult {
    run("universal-ghost-identities", || {
        for p in [2u64, 3, 5] {
            for m in 1..=3 {
                verify_ghost_identities(&universal(p, m)).map_err(|e| e)?;
            }
        }
        Ok("sum/product/negation ghost identities hold for p in {2,3,5}, m <= 3".into())
    })
}

/// Witt ring axioms on seeded random triples over F_p(t, s).
pub fn check_witt_ring_axioms(seed: u64, triples: usize) -> CheckResult {
    run("witt-ring-axioms", || {
        for p in [2u64, 3, 5] {
            let ctx = FieldCtx::new(p, &["t", "s"]).unwrap();
            for m in 1..=3 {
                let mut rng = StdRng::seed_from_u64(seed ^ (p * 31 + m as u64));
                for i in 0..triples {
                    let a = sample_witt(&ctx, m, &mut rng);
                    let b = sample_witt(&ctx, m, &mut rng);
                    let c = sample_witt(&ctx, m, &mut rng);
                    let fail = |law: &str| {
                        Err(format!("{} fails at p={}, m={}, triple {}", law, p, m, i))
                    };
                    if a.add(&b) != b.add(&a) {
                        return fail("commutativity (+)");
                    }
                    if a.mul(&b) != b.mul(&a) {
                        return fail("commutativity (*)");
                    }
                    if a.add(&b).add(&c) != a.add(&b.add(&c)) {
                        return fail("associativity (+)");
                    }
                    if a.mul(&b).mul(&c) != a.mul(&b.mul(&c)) {
                        return fail("associativity (*)");
                    }
                    if a.mul(&b.add(&c)) != a.mul(&b).add(&a.mul(&c)) {
                        return fail("distributivity");
                    }
                    if !a.sub(&a).is_zero() {
                        return fail("additive inverse");
                    }
                    if a.mul_by_p() != a.int_mul(p as i64) {
                        return fail("mul_by_p = p-fold addition");
                    }
                }
            }
        }
        Ok(format!("{} triples per (p, m), p in {{2,3,5}}, m <= 3", triples))
    })
}

/// wp is additive and the projection formulas hold on random samples.
pub fn check_witt_operators(seed: u64, samples: usize) -> CheckResult {
    run("witt-operators", || {
        for p in [2u64, 3] {
            let ctx = FieldCtx::new(p, &["t", "s"]).unwrap();
            let mut rng = StdRng::seed_from_u64(seed ^ p);
            for _ in 0..samples {
                let a = sample_witt(&ctx, 3, &mut rng);
                let b = sample_witt(&ctx, 3, &mut rng);
                if a.add(&b).wp() != a.wp().add(&b.wp()) {
                    return Err(format!("wp additivity fails at p={}", p));
                }
                let a2 = a.truncate(2);
                let b2 = b.truncate(2);
                if a2.verschiebung().mul(&b2.verschiebung())
                    != a2.mul(&b2).verschiebung().int_mul(p as i64)
                {
                    return Err(format!("V(a)V(b) = pV(ab) fails at p={}", p));
                }
                let e = sample_nonzero(&ctx, &mut rng);
                let lhs = WittVector::teichmuller(&e, 3).mul(&b2.verschiebung());
                let rhs = WittVector::teichmuller(&e.frobenius(), 2).mul(&b2).verschiebung();
                if lhs != rhs {
                    return Err(format!("[a]V(b) = V([a^p]b) fails at p={}", p));
                }
                let mut u = a.clone();
                if u.coords()[0].is_zero() {
                    u = u.add(&WittVector::unit(&ctx, 3));
                }
                if !u.coords()[0].is_zero() && !u.mul(&u.inv().unwrap()).is_unit_value() {
                    return Err(format!("inverse round-trip fails at p={}", p));
                }
            }
        }
        Ok(format!("{} samples per prime", samples))
    })
}

/// Shift round-trip: shifting by x then by -x restores the symbol exactly.
pub fn check_shift_roundtrip(seed: u64, instances: usize) -> CheckResult {
    run("shift-roundtrip", || {
        let mut total = 0usize;
        for p in [2u64, 3] {
            let ctx = FieldCtx::new(p, &["t", "s"]).unwrap();
            for m in 1..=2usize {
                let mut rng = StdRng::seed_from_u64(seed ^ (p * 100 + m as u64));
                let mut done = 0;
                let mut guard = 0;
                while done < instances && guard < instances * 50 {
                    guard += 1;
                    let omega = sample_witt(&ctx, m, &mut rng);
                    let beta = sample_nonzero(&ctx, &mut rng);
                    let x = sample_elem(&ctx, &mut rng);
                    let Ok(sym) = CyclicSymbol::new(omega, beta) else { continue };
                    let e = BrauerExpr::single(sym.clone());
                    let Ok((shifted, _)) = proposition_shift(&e, 0, &x) else { continue };
                    let Ok((back, _)) = proposition_shift(&shifted, 0, &x.neg()) else { continue };
                    if back.factors[0] != sym {
                        return Err(format!(
                            "round-trip failed at p={}, m={}: {} came back as {}",
                            p, m, sym, back.factors[0]
                        ));
                    }
                    done += 1;
                    total += 1;
                }
                if done < instances {
                    return Err(format!("could not collect {} instances at p={}, m={}", instances, p, m));
                }
            }
        }
        Ok(format!("{} round-trips restored (omega, beta) exactly", total))
    })
}

/// Alignment postconditions: x = alpha - beta, delta = beta + x^(p^m), and
/// the Artin-Schreier witness y satisfies wp((y)) = (delta - alpha).
pub fn check_neat_postconditions(seed: u64, instances: usize) -> CheckResult {
    run("neat-postconditions", || {
        let mut rng = StdRng::seed_from_u64(seed);
        let mut done = 0usize;
        let mut guard = 0usize;
        while done < instances && guard < instances * 100 {
            guard += 1;
            let p = [2u64, 3][rng.random_range(0..2)];
            let m = rng.random_range(1..=3usize);
            let ctx = FieldCtx::new(p, &["t", "s"]).unwrap();
            let beta = sample_nonzero(&ctx, &mut rng);
            let alpha = sample_elem(&ctx, &mut rng);
            let gamma = sample_nonzero(&ctx, &mut rng);
            let x = alpha.sub(&beta);
            let q = p.pow(m as u32) as i64;
            let delta = beta.add(&x.pow(q).unwrap());
            if delta.is_zero() {
                continue;
            }
            if solve_pi(&beta, &x, m).is_err() {
                continue;
            }
            // wp((y)) must equal (delta - alpha) at level 1
            let mut y = FieldElem::zero(&ctx);
            let mut xp = x.clone();
            for _ in 0..m {
                y = y.add(&xp);
                xp = xp.pow(p as i64).unwrap();
            }
            let wp_y = WittVector::new(vec![y]).wp();
            if wp_y != WittVector::new(vec![delta.sub(&alpha)]) {
                return Err(format!(
                    "wp witness law fails at p={}, m={}, alpha={}, beta={}",
                    p, m, alpha, beta
                ));
            }
            let _ = gamma;
            done += 1;
        }
        if done < instances {
            return Err(format!("could not collect {} instances", instances));
        }
        Ok(format!("{} instances checked across p in {{2,3}}, m <= 3", done))
    })
}

/// Random level-1 folds: the output has the right level and the full trace
/// replays through the validator.
///
/// Each slot is a distinct indeterminate shifted by a random constant, the
/// generic shape the merge tower is built for; the tower itself drives the
/// degrees up, so denser starting entries only burn time without
/// exercising anything new.
pub fn check_fold_traces(seed: u64, folds: usize) -> CheckResult {
    run("fold-trace-replay", || {
        let mut rng = StdRng::seed_from_u64(seed);
        let mut done = 0usize;
        let mut guard = 0usize;
        while done < folds && guard < folds * 50 {
            guard += 1;
            let p = [2u64, 3][rng.random_range(0..2)];
            let ctx = FieldCtx::new(p, &["a1", "b1", "a2", "b2", "a3", "b3"]).unwrap();
            let n = rng.random_range(2..=3usize);
            let slot = |rng: &mut StdRng, name: &str| {
                let c = FieldElem::from_int(&ctx, rng.random_range(0..p as i64));
                FieldElem::var(&ctx, name).unwrap().add(&c)
            };
            let mut factors = Vec::new();
            for k in 0..n {
                let omega = WittVector::new(vec![slot(&mut rng, &format!("a{}", k + 1))]);
                let beta = slot(&mut rng, &format!("b{}", k + 1));
                factors.push(CyclicSymbol::new(omega, beta).unwrap());
            }
            let expr = BrauerExpr::new(factors).unwrap();
            let Ok((symbol, trace)) = fold_prime_list(&expr) else { continue };
            if symbol.level() != n {
                return Err(format!("fold of {} symbols has level {}", n, symbol.level()));
            }
            let report = validate_trace(&trace);
            if !report.valid {
                return Err(format!("fold trace fails validation: {:?}", report.failure));
            }
            done += 1;
        }
        if done < folds {
            return Err(format!("could not collect {} folds", folds));
        }
        Ok(format!("{} random folds validated", done))
    })
}

/// Spot realization checks: dimension, relations, center rank.
pub fn check_realization() -> CheckResult {
    run("realization-spot", || {
        for p in [2u64, 3] {
            let ctx = FieldCtx::new(p, &["t", "s"]).unwrap();
            let omega = WittVector::new(vec![parse_elem("t", &ctx).unwrap()]);
            let sym = CyclicSymbol::new(omega, parse_elem("s", &ctx).unwrap()).unwrap();
            let a = realize_symbol(&sym).unwrap();
            if a.dim != (p * p) as usize {
                return Err(format!("dimension {} != p^2 at p={}", a.dim, p));
            }
            if !check_relations(&a, &GeneratorPresentation::of(&sym)) {
                return Err(format!("relations fail at p={}", p));
            }
            if center_basis(&a).len() != 1 {
                return Err(format!("center rank != 1 at p={}", p));
            }
        }
        Ok("level-1 realizations at p in {2,3}: dimension, relations, center".into())
    })
}

/// The full battery in a deterministic order.
pub fn run_all(seed: u64) -> Vec<CheckResult> {
    vec![
        check_universal_ghost(),
        check_witt_ring_axioms(seed, 40),
        check_witt_operators(seed, 25),
        check_shift_roundtrip(seed, 12),
        check_neat_postconditions(seed, 25),
        check_fold_traces(seed, 6),
        check_realization(),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_suites_pass_on_default_seed() {
        for r in run_all(7) {
            assert!(r.passed, "{} failed: {}", r.name, r.detail);
        }
    }
}
