//! The merge / fold / reduce pipelines on symbol expressions.
//!
//! Every transformation is emitted as a chain of checked rewrite steps, so
//! the output of a pipeline is a symbol together with a trace that
//! `validate_trace` can replay independently.

use super::rules::{
    apply_identity, DerivationTrace, RewriteStep, RuleApplication, RuleId, WitnessValue,
};
use super::{BrauerExpr, CyclicSymbol};
use crate::error::EngineError;
use crate::field::FieldElem;
use crate::forms::solve_pi;
use crate::witt::WittVector;

/// The p-th power of a symbol's class: level m drops to m-1 via p-fold
/// merge-beta and unpad; a level-1 factor powers to the split class.
///
/// The recorded step's `before` holds the p adjacent copies of the factor.
pub fn mul_class_by_p(s: &CyclicSymbol) -> (BrauerExpr, RewriteStep) {
    let p = s.omega.p() as usize;
    let before = BrauerExpr { factors: vec![s.clone(); p] };
    let after = if s.level() == 1 {
        BrauerExpr::default()
    } else {
        let omega = s.omega.mul_by_p().unpad().expect("mul_by_p leads with zero");
        BrauerExpr::single(CyclicSymbol::new(omega, s.beta.clone()).unwrap())
    };
    let step = RewriteStep {
        rule: RuleId::MulP,
        before,
        after: after.clone(),
        witnesses: vec![("index".into(), WitnessValue::Index(0))],
    };
    (after, step)
}

/// Shift a factor's beta slot by x^(p^m), correcting omega by the
/// Teichmuller scale and the solved pi.
pub fn proposition_shift(
    expr: &BrauerExpr,
    at: usize,
    x: &FieldElem,
) -> Result<(BrauerExpr, RewriteStep), EngineError> {
    let s = &expr.factors[at];
    let m = s.level();
    let sol = solve_pi(&s.beta, x, m)?;
    let scale = sol.shifted.div(&s.beta)?;
    let omega = s
        .omega
        .mul(&WittVector::teichmuller(&scale, m))
        .mul(&sol.pi);
    let mut factors = expr.factors.clone();
    factors[at] = CyclicSymbol::new(omega, sol.shifted.clone())?;
    let after = BrauerExpr { factors };
    let step = RewriteStep {
        rule: RuleId::PropShift,
        before: expr.clone(),
        after: after.clone(),
        witnesses: vec![
            ("index".into(), WitnessValue::Index(at)),
            ("x".into(), WitnessValue::Field(x.clone())),
            ("pi".into(), WitnessValue::Witt(sol.pi)),
        ],
    };
    Ok((after, step))
}

/// Outcome of aligning a level-m factor with a level-1 factor on a common
/// slot delta.
pub struct NeatOutcome {
    pub expr: BrauerExpr,
    pub tau: WittVector,
    pub delta: FieldElem,
    pub steps: Vec<RewriteStep>,
}

/// Rewrite factors (at, at1) = [w, beta)_(p^m) x [alpha, gamma)_p so the
/// first becomes [tau, delta)_(p^m) and the second [delta, gamma)_p.
///
/// The shift witness is x = alpha - beta, the unique solution of
/// alpha + x^(p^m) - x = beta + x^(p^m); the level-1 factor follows by an
/// Artin-Schreier shift with witness y = x + x^p + ... + x^(p^(m-1)),
/// whose wp-image telescopes to x^(p^m) - x.
pub fn neat_pair(expr: &BrauerExpr, at: usize, at1: usize) -> Result<NeatOutcome, EngineError> {
    let a = &expr.factors[at];
    let b = &expr.factors[at1];
    if b.level() != 1 {
        return Err(EngineError::PatternMismatch("second factor must have level 1".into()));
    }
    let m = a.level();
    let p = a.omega.p();
    let alpha = b.omega.coord(1).clone();
    let x = alpha.sub(&a.beta);
    let (shifted, step1) = proposition_shift(expr, at, &x)?;
    let delta = shifted.factors[at].beta.clone();
    let tau = shifted.factors[at].omega.clone();

    // y = sum_{i<m} x^(p^i); wp((y)) = (x^(p^m) - x) at level 1
    let mut y = FieldElem::zero(&x.ctx);
    let mut xp = x.clone();
    for _ in 0..m {
        y = y.add(&xp);
        xp = xp.pow(p as i64).unwrap();
    }
    let tau_witness = WittVector::new(vec![y]);
    let (aligned, step2) = apply_identity(&shifted, RuleApplication::AsShift { at: at1, tau: tau_witness })?;
    debug_assert_eq!(
        aligned.factors[at1].omega,
        WittVector::teichmuller(&delta, 1),
        "aligned slot must equal delta"
    );
    Ok(NeatOutcome { expr: aligned, tau, delta, steps: vec![step1, step2] })
}

/// Merge [tau, delta)_(p^m) x [delta, gamma)_p into a single symbol
/// [(delta, tau), delta * gamma^(p^m))_(p^(m+1)).
///
/// The emitted chain is: norm-twist the first factor by gamma, pad it,
/// embed the level-1 factor at level m+1 over the same beta slot
/// (recorded as the merge-omega composite), and finish with merge-beta.
pub fn merge_step(
    expr: &BrauerExpr,
    at: usize,
    at1: usize,
) -> Result<(BrauerExpr, Vec<RewriteStep>), EngineError> {
    let a = &expr.factors[at];
    let b = &expr.factors[at1];
    if b.level() != 1 || b.omega.coord(1) != &a.beta {
        return Err(EngineError::PatternMismatch(format!(
            "slot mismatch: second omega {} must equal first beta {}",
            b.omega, a.beta
        )));
    }
    let m = a.level();
    let p = a.omega.p();
    let gamma = b.beta.clone();
    let delta = a.beta.clone();

    let (e1, s1) = apply_identity(expr, RuleApplication::NormTwist { at, gamma: gamma.clone() })?;
    let (e2, s2) = apply_identity(&e1, RuleApplication::Pad { at })?;
    // composite embedding of the level-1 factor at level m+1
    let embedded = CyclicSymbol::new(
        WittVector::teichmuller(&delta, m + 1),
        delta.mul(&gamma.pow(p.pow(m as u32) as i64).unwrap()),
    )?;
    let mut factors = e2.factors.clone();
    factors[at1] = embedded;
    let e3 = BrauerExpr { factors };
    let s3 = RewriteStep {
        rule: RuleId::MergeOmega,
        before: e2.clone(),
        after: e3.clone(),
        witnesses: vec![
            ("at".into(), WitnessValue::Index(at1)),
            ("gamma".into(), WitnessValue::Field(gamma)),
        ],
    };
    let (e4, s4) = apply_identity(&e3, RuleApplication::MergeBeta { left: at, right: at1 })?;
    // structural shape of the merge: omega = (delta, tau...), verbatim
    debug_assert_eq!(e4.factors[at].omega.coord(1), &delta);
    Ok((e4, vec![s1, s2, s3, s4]))
}

/// Left fold of a list of level-1 symbols into one symbol of level n.
pub fn fold_prime_list(expr: &BrauerExpr) -> Result<(CyclicSymbol, DerivationTrace), EngineError> {
    if expr.is_empty() {
        return Err(EngineError::PatternMismatch("fold needs a nonempty expression".into()));
    }
    if expr.factors.iter().any(|s| s.level() != 1) {
        return Err(EngineError::PatternMismatch("fold needs level-1 factors".into()));
    }
    let mut trace = DerivationTrace::default();
    let mut current = expr.clone();
    let mut step_no = 0usize;
    while current.len() > 1 {
        step_no += 1;
        let neat = neat_pair(&current, 0, 1).map_err(|e| match e {
            EngineError::DegenerateShift => EngineError::DegenerateDelta { step: step_no },
            other => other,
        })?;
        trace.extend(neat.steps);
        let (merged, steps) = merge_step(&neat.expr, 0, 1)?;
        trace.extend(steps);
        current = merged;
    }
    Ok((current.factors[0].clone(), trace))
}

/// Report returned when the constructive reduction reaches the
/// exponent-p boundary: B is known to have exponent dividing p with a
/// replayable certificate, but its degree-p decomposition is not
/// constructed.
#[derive(Clone, Debug)]
pub struct HaltReport {
    /// The original expression A.
    pub input: BrauerExpr,
    /// Cyclic representative of the class of A tensored p times.
    pub power_class: CyclicSymbol,
    /// Trace from the grouped p-fold power of A to `power_class`.
    pub power_trace: DerivationTrace,
    /// The positive padded factor with A ~ cyclic_factor (x) B.
    pub cyclic_factor: CyclicSymbol,
    /// The twist [-(w,0), beta)_(p^(t+1)) used to build B.
    pub twist: CyclicSymbol,
    /// B = A (x) twist, of exponent dividing p.
    pub b_expr: BrauerExpr,
    /// Replayable proof that the grouped p-fold power of B reduces to the
    /// empty expression.
    pub certificate: DerivationTrace,
    pub note: String,
}

/// Result of the general reduction.
#[derive(Clone, Debug)]
pub enum AlbertOutcome {
    Cyclic { symbol: CyclicSymbol, trace: DerivationTrace },
    Halt(Box<HaltReport>),
}

/// Group each factor of `expr` into p adjacent copies: the literal p-fold
/// tensor power, factor by factor.
fn grouped_power(expr: &BrauerExpr, p: usize) -> BrauerExpr {
    let mut factors = Vec::with_capacity(expr.len() * p);
    for f in &expr.factors {
        for _ in 0..p {
            factors.push(f.clone());
        }
    }
    BrauerExpr { factors }
}

/// Apply mul-p to every factor group of a grouped power, recording steps.
fn power_steps(expr: &BrauerExpr, p: usize) -> (BrauerExpr, Vec<RewriteStep>) {
    let mut current = grouped_power(expr, p);
    let mut steps = Vec::new();
    let mut at = 0usize;
    for f in &expr.factors {
        let (result, _) = mul_class_by_p(f);
        let mut factors = current.factors.clone();
        factors.splice(at..at + p, result.factors.iter().cloned());
        let after = BrauerExpr { factors };
        steps.push(RewriteStep {
            rule: RuleId::MulP,
            before: current.clone(),
            after: after.clone(),
            witnesses: vec![("index".into(), WitnessValue::Index(at))],
        });
        current = after;
        at += result.len();
    }
    (current, steps)
}

/// Splice a trace into a larger context by appending fixed factors to
/// every step's before/after expressions.
fn embed_trace(trace: &DerivationTrace, suffix: &[CyclicSymbol]) -> Vec<RewriteStep> {
    trace
        .steps
        .iter()
        .map(|s| {
            let mut before = s.before.clone();
            before.factors.extend_from_slice(suffix);
            let mut after = s.after.clone();
            after.factors.extend_from_slice(suffix);
            RewriteStep { rule: s.rule, before, after, witnesses: s.witnesses.clone() }
        })
        .collect()
}

/// Reduce a tensor product to a single cyclic symbol when the constructive
/// path exists; otherwise halt at the exponent-p boundary with a
/// certificate.
///
/// Level-1 inputs fold completely. Mixed inputs recurse on the p-th power
/// class (which strictly lowers the maximum level), giving a cyclic
/// representative [w*, beta*)_(p^t) of A^(x p); the twist
/// B = A (x) [-(w*,0), beta*)_(p^(t+1)) then has exponent dividing p,
/// certified by reducing its grouped p-th power to the empty expression.
pub fn albert_reduce(expr: &BrauerExpr) -> Result<AlbertOutcome, EngineError> {
    if expr.is_empty() {
        return Err(EngineError::PatternMismatch("reduction needs a nonempty expression".into()));
    }
    if expr.len() == 1 {
        return Ok(AlbertOutcome::Cyclic {
            symbol: expr.factors[0].clone(),
            trace: DerivationTrace::default(),
        });
    }
    if expr.factors.iter().all(|s| s.level() == 1) {
        let (symbol, trace) = fold_prime_list(expr)?;
        return Ok(AlbertOutcome::Cyclic { symbol, trace });
    }

    let p = expr.factors[0].omega.p() as usize;
    let (p_expr, p_steps) = power_steps(expr, p);
    debug_assert!(!p_expr.is_empty(), "a level >= 2 factor survives the power");
    let (star, star_trace) = match albert_reduce(&p_expr)? {
        AlbertOutcome::Cyclic { symbol, trace } => (symbol, trace),
        AlbertOutcome::Halt(inner) => {
            let mut report = *inner;
            report.note = format!(
                "nested boundary: the p-th power class itself halted; {}",
                report.note
            );
            return Ok(AlbertOutcome::Halt(Box::new(report)));
        }
    };
    let mut power_trace = DerivationTrace { steps: p_steps };
    power_trace.extend(star_trace.steps.clone());

    let t = star.level();
    let cyclic_factor = CyclicSymbol::new(star.omega.zero_extend(t + 1), star.beta.clone())?;
    let twist = CyclicSymbol::new(cyclic_factor.omega.neg(), star.beta.clone())?;
    let mut b_factors = expr.factors.clone();
    b_factors.push(twist.clone());
    let b_expr = BrauerExpr { factors: b_factors };

    // certificate: (B)^(x p) grouped -> empty
    let (bp_expr, bp_steps) = power_steps(&b_expr, p);
    let mut certificate = DerivationTrace { steps: bp_steps };
    // the A-part of bp_expr is exactly p_expr; replay its reduction to
    // [star] with the powered twist appended as context
    let twist_p = bp_expr.factors.last().unwrap().clone();
    debug_assert_eq!(
        BrauerExpr { factors: bp_expr.factors[..bp_expr.len() - 1].to_vec() },
        p_expr
    );
    certificate.extend(embed_trace(&star_trace, &[twist_p.clone()]));
    let reduced = BrauerExpr { factors: vec![star.clone(), twist_p] };
    let (merged, s_merge) = apply_identity(&reduced, RuleApplication::MergeBeta { left: 0, right: 1 })?;
    certificate.steps.push(s_merge);
    // merged omega is wp(-w*); shifting by w* clears it exactly
    let (cleared, s_shift) =
        apply_identity(&merged, RuleApplication::AsShift { at: 0, tau: star.omega.clone() })?;
    if !cleared.factors[0].omega.is_zero() {
        return Err(EngineError::PatternMismatch(
            "exponent-p certificate did not clear the omega slot".into(),
        ));
    }
    certificate.steps.push(s_shift);
    let (empty, s_split) = apply_identity(&cleared, RuleApplication::Split { at: 0 })?;
    debug_assert!(empty.is_empty());
    certificate.steps.push(s_split);

    Ok(AlbertOutcome::Halt(Box::new(HaltReport {
        input: expr.clone(),
        power_class: star,
        power_trace,
        cyclic_factor,
        twist,
        b_expr,
        certificate,
        note: "the degree-p decomposition of the exponent-p factor B is not constructed; \
               the certificate proves exp(B) divides p"
            .into(),
    })))
}
