//! The identity rule set as checked rewrites, plus independent trace
//! replay.
//!
//! Class preservation of each rule is axiomatic; what the engine checks is
//! that patterns match and witnesses are arithmetically consistent.
//! `validate_trace` re-executes every step from its recorded witnesses, so
//! a trace is evidence that can be replayed without trusting the producer.

use super::{BrauerExpr, CyclicSymbol};
use crate::error::EngineError;
use crate::field::FieldElem;
use crate::forms::solve_pi;
use crate::witt::WittVector;
use std::fmt;

/// Rule identifiers; the serialized names are stable interface.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RuleId {
    Split,
    AsShift,
    NormTwist,
    Pad,
    Unpad,
    MergeOmega,
    MergeBeta,
    PropShift,
    Neat,
    MergeStep,
    MulP,
}

impl RuleId {
    pub fn as_str(&self) -> &'static str {
        match self {
            RuleId::Split => "split",
            RuleId::AsShift => "as-shift",
            RuleId::NormTwist => "norm-twist",
            RuleId::Pad => "pad",
            RuleId::Unpad => "unpad",
            RuleId::MergeOmega => "merge-omega",
            RuleId::MergeBeta => "merge-beta",
            RuleId::PropShift => "prop-shift",
            RuleId::Neat => "neat",
            RuleId::MergeStep => "merge-step",
            RuleId::MulP => "mul-p",
        }
    }

    pub fn from_str(s: &str) -> Option<RuleId> {
        Some(match s {
            "split" => RuleId::Split,
            "as-shift" => RuleId::AsShift,
            "norm-twist" => RuleId::NormTwist,
            "pad" => RuleId::Pad,
            "unpad" => RuleId::Unpad,
            "merge-omega" => RuleId::MergeOmega,
            "merge-beta" => RuleId::MergeBeta,
            "prop-shift" => RuleId::PropShift,
            "neat" => RuleId::Neat,
            "merge-step" => RuleId::MergeStep,
            "mul-p" => RuleId::MulP,
            _ => return None,
        })
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_str())
    }
}

/// Witness payloads recorded on a step.
#[derive(Clone, PartialEq, Debug)]
pub enum WitnessValue {
    Field(FieldElem),
    Witt(WittVector),
    Index(usize),
}

impl fmt::Display for WitnessValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WitnessValue::Field(e) => write!(f, "{}", e),
            WitnessValue::Witt(w) => write!(f, "{}", w),
            WitnessValue::Index(i) => write!(f, "{}", i),
        }
    }
}

pub type Witnesses = Vec<(String, WitnessValue)>;

fn witness<'a>(ws: &'a Witnesses, name: &str) -> Option<&'a WitnessValue> {
    ws.iter().find(|(n, _)| n == name).map(|(_, v)| v)
}

/// One recorded rewrite, with the whole expression before and after.
#[derive(Clone, PartialEq, Debug)]
pub struct RewriteStep {
    pub rule: RuleId,
    pub before: BrauerExpr,
    pub after: BrauerExpr,
    pub witnesses: Witnesses,
}

/// An ordered, chained list of rewrites.
#[derive(Clone, PartialEq, Debug, Default)]
pub struct DerivationTrace {
    pub steps: Vec<RewriteStep>,
}

impl DerivationTrace {
    pub fn extend(&mut self, steps: Vec<RewriteStep>) {
        self.steps.extend(steps);
    }
}

/// Typed application of one of the bullet identities.
#[derive(Clone, Debug)]
pub enum RuleApplication {
    /// Delete a split factor (omega = [beta] or omega = 0).
    Split { at: usize },
    /// omega -> omega + wp(tau).
    AsShift { at: usize, tau: WittVector },
    /// beta -> beta * gamma^(p^m); only p^m-th-power norms are supported.
    NormTwist { at: usize, gamma: FieldElem },
    /// omega -> V(omega), level m+1, same beta.
    Pad { at: usize },
    /// Inverse of pad when coordinate 1 of omega is zero.
    Unpad { at: usize },
    /// Two factors with the same beta and level: omegas Witt-add.
    MergeBeta { left: usize, right: usize },
    /// Two factors with the same omega: betas multiply.
    MergeOmega { left: usize, right: usize },
}

fn check_index(expr: &BrauerExpr, at: usize) -> Result<(), EngineError> {
    if at >= expr.len() {
        return Err(EngineError::PatternMismatch(format!(
            "factor index {} out of range ({} factors)",
            at,
            expr.len()
        )));
    }
    Ok(())
}

/// Apply one identity, checking its pattern, and record the step.
pub fn apply_identity(
    expr: &BrauerExpr,
    app: RuleApplication,
) -> Result<(BrauerExpr, RewriteStep), EngineError> {
    let before = expr.clone();
    match app {
        RuleApplication::Split { at } => {
            check_index(expr, at)?;
            let s = &expr.factors[at];
            if !s.is_split_pattern() {
                return Err(EngineError::PatternMismatch(format!(
                    "factor {} is not a split pattern: omega != [beta] and omega != 0",
                    s
                )));
            }
            let mut factors = expr.factors.clone();
            factors.remove(at);
            let after = BrauerExpr { factors };
            let step = RewriteStep {
                rule: RuleId::Split,
                before,
                after: after.clone(),
                witnesses: vec![("index".into(), WitnessValue::Index(at))],
            };
            Ok((after, step))
        }
        RuleApplication::AsShift { at, tau } => {
            check_index(expr, at)?;
            let s = &expr.factors[at];
            s.omega.check_compat(&tau)?;
            let omega = s.omega.add(&tau.wp());
            let mut factors = expr.factors.clone();
            factors[at] = CyclicSymbol::new(omega, s.beta.clone())?;
            let after = BrauerExpr { factors };
            let step = RewriteStep {
                rule: RuleId::AsShift,
                before,
                after: after.clone(),
                witnesses: vec![
                    ("index".into(), WitnessValue::Index(at)),
                    ("tau".into(), WitnessValue::Witt(tau)),
                ],
            };
            Ok((after, step))
        }
        RuleApplication::NormTwist { at, gamma } => {
            check_index(expr, at)?;
            if gamma.is_zero() {
                return Err(EngineError::PatternMismatch("norm witness gamma must be nonzero".into()));
            }
            let s = &expr.factors[at];
            let norm = gamma.pow(s.degree() as i64).unwrap();
            let mut factors = expr.factors.clone();
            factors[at] = CyclicSymbol::new(s.omega.clone(), s.beta.mul(&norm))?;
            let after = BrauerExpr { factors };
            let step = RewriteStep {
                rule: RuleId::NormTwist,
                before,
                after: after.clone(),
                witnesses: vec![
                    ("index".into(), WitnessValue::Index(at)),
                    ("gamma".into(), WitnessValue::Field(gamma)),
                ],
            };
            Ok((after, step))
        }
        RuleApplication::Pad { at } => {
            check_index(expr, at)?;
            let s = &expr.factors[at];
            let mut factors = expr.factors.clone();
            factors[at] = CyclicSymbol::new(s.omega.verschiebung(), s.beta.clone())?;
            let after = BrauerExpr { factors };
            let step = RewriteStep {
                rule: RuleId::Pad,
                before,
                after: after.clone(),
                witnesses: vec![("index".into(), WitnessValue::Index(at))],
            };
            Ok((after, step))
        }
        RuleApplication::Unpad { at } => {
            check_index(expr, at)?;
            let s = &expr.factors[at];
            let omega = s.omega.unpad()?;
            let mut factors = expr.factors.clone();
            factors[at] = CyclicSymbol::new(omega, s.beta.clone())?;
            let after = BrauerExpr { factors };
            let step = RewriteStep {
                rule: RuleId::Unpad,
                before,
                after: after.clone(),
                witnesses: vec![("index".into(), WitnessValue::Index(at))],
            };
            Ok((after, step))
        }
        RuleApplication::MergeBeta { left, right } => {
            check_index(expr, left)?;
            check_index(expr, right)?;
            if left == right {
                return Err(EngineError::PatternMismatch("merge needs two distinct factors".into()));
            }
            let a = &expr.factors[left];
            let b = &expr.factors[right];
            if a.beta != b.beta || a.level() != b.level() {
                return Err(EngineError::PatternMismatch(
                    "merge-beta needs equal beta slots and equal levels".into(),
                ));
            }
            let merged = CyclicSymbol::new(a.omega.add(&b.omega), a.beta.clone())?;
            let mut factors = expr.factors.clone();
            let (lo, hi) = (left.min(right), left.max(right));
            factors.remove(hi);
            factors[lo] = merged;
            let after = BrauerExpr { factors };
            let step = RewriteStep {
                rule: RuleId::MergeBeta,
                before,
                after: after.clone(),
                witnesses: vec![
                    ("index".into(), WitnessValue::Index(left)),
                    ("other".into(), WitnessValue::Index(right)),
                ],
            };
            Ok((after, step))
        }
        RuleApplication::MergeOmega { left, right } => {
            check_index(expr, left)?;
            check_index(expr, right)?;
            if left == right {
                return Err(EngineError::PatternMismatch("merge needs two distinct factors".into()));
            }
            let a = &expr.factors[left];
            let b = &expr.factors[right];
            if a.omega != b.omega {
                return Err(EngineError::PatternMismatch("merge-omega needs equal omega slots".into()));
            }
            let merged = CyclicSymbol::new(a.omega.clone(), a.beta.mul(&b.beta))?;
            let mut factors = expr.factors.clone();
            let (lo, hi) = (left.min(right), left.max(right));
            factors.remove(hi);
            factors[lo] = merged;
            let after = BrauerExpr { factors };
            let step = RewriteStep {
                rule: RuleId::MergeOmega,
                before,
                after: after.clone(),
                witnesses: vec![
                    ("index".into(), WitnessValue::Index(left)),
                    ("other".into(), WitnessValue::Index(right)),
                ],
            };
            Ok((after, step))
        }
    }
}

/// Replay outcome; `failure` carries the first failing step and a reason.
#[derive(Clone, Debug, PartialEq)]
pub struct ValidationReport {
    pub valid: bool,
    pub failure: Option<(usize, String)>,
}

impl ValidationReport {
    fn ok() -> Self {
        ValidationReport { valid: true, failure: None }
    }

    fn fail(step: usize, why: impl Into<String>) -> Self {
        ValidationReport { valid: false, failure: Some((step, why.into())) }
    }
}

fn get_index(ws: &Witnesses, name: &str) -> Option<usize> {
    match witness(ws, name) {
        Some(WitnessValue::Index(i)) => Some(*i),
        _ => None,
    }
}

fn get_field<'a>(ws: &'a Witnesses, name: &str) -> Option<&'a FieldElem> {
    match witness(ws, name) {
        Some(WitnessValue::Field(e)) => Some(e),
        _ => None,
    }
}

fn get_witt<'a>(ws: &'a Witnesses, name: &str) -> Option<&'a WittVector> {
    match witness(ws, name) {
        Some(WitnessValue::Witt(w)) => Some(w),
        _ => None,
    }
}

/// Check factors outside `touched` are unchanged (same relative order).
fn untouched_match(before: &BrauerExpr, after: &BrauerExpr, removed: &[usize], replaced: &[(usize, &CyclicSymbol)]) -> bool {
    let mut expect: Vec<CyclicSymbol> = Vec::with_capacity(before.len());
    for (i, f) in before.factors.iter().enumerate() {
        if removed.contains(&i) {
            continue;
        }
        if let Some((_, r)) = replaced.iter().find(|(j, _)| *j == i) {
            expect.push((*r).clone());
        } else {
            expect.push(f.clone());
        }
    }
    expect == after.factors
}

fn validate_step(step: &RewriteStep) -> Result<(), String> {
    let b = &step.before;
    let a = &step.after;
    let bad = |why: &str| Err(why.to_string());
    match step.rule {
        RuleId::Split => {
            let Some(i) = get_index(&step.witnesses, "index") else { return bad("missing index") };
            if i >= b.len() {
                return bad("index out of range");
            }
            if !b.factors[i].is_split_pattern() {
                return bad("removed factor is not a split pattern");
            }
            if !untouched_match(b, a, &[i], &[]) {
                return bad("surrounding factors changed");
            }
            Ok(())
        }
        RuleId::AsShift => {
            let Some(i) = get_index(&step.witnesses, "index") else { return bad("missing index") };
            let Some(tau) = get_witt(&step.witnesses, "tau") else { return bad("missing tau") };
            if i >= b.len() || i >= a.len() {
                return bad("index out of range");
            }
            let expect = b.factors[i].omega.add(&tau.wp());
            if a.factors[i].omega != expect || a.factors[i].beta != b.factors[i].beta {
                return bad("omega + wp(tau) does not match");
            }
            if !untouched_match(b, a, &[], &[(i, &a.factors[i])]) {
                return bad("surrounding factors changed");
            }
            Ok(())
        }
        RuleId::NormTwist => {
            let Some(i) = get_index(&step.witnesses, "index") else { return bad("missing index") };
            let Some(gamma) = get_field(&step.witnesses, "gamma") else { return bad("missing gamma") };
            if i >= b.len() || i >= a.len() || gamma.is_zero() {
                return bad("bad index or zero gamma");
            }
            let s = &b.factors[i];
            let norm = gamma.pow(s.degree() as i64).unwrap();
            if a.factors[i].beta != s.beta.mul(&norm) || a.factors[i].omega != s.omega {
                return bad("beta * gamma^(p^m) does not match");
            }
            if !untouched_match(b, a, &[], &[(i, &a.factors[i])]) {
                return bad("surrounding factors changed");
            }
            Ok(())
        }
        RuleId::Pad => {
            let Some(i) = get_index(&step.witnesses, "index") else { return bad("missing index") };
            if i >= b.len() || i >= a.len() {
                return bad("index out of range");
            }
            if a.factors[i].omega != b.factors[i].omega.verschiebung()
                || a.factors[i].beta != b.factors[i].beta
            {
                return bad("pad must be V(omega) with the same beta");
            }
            if !untouched_match(b, a, &[], &[(i, &a.factors[i])]) {
                return bad("surrounding factors changed");
            }
            Ok(())
        }
        RuleId::Unpad => {
            let Some(i) = get_index(&step.witnesses, "index") else { return bad("missing index") };
            if i >= b.len() || i >= a.len() {
                return bad("index out of range");
            }
            if b.factors[i].omega != a.factors[i].omega.verschiebung()
                || a.factors[i].beta != b.factors[i].beta
            {
                return bad("unpad must drop a leading zero coordinate");
            }
            if !untouched_match(b, a, &[], &[(i, &a.factors[i])]) {
                return bad("surrounding factors changed");
            }
            Ok(())
        }
        RuleId::MergeBeta => {
            let (Some(i), Some(j)) = (get_index(&step.witnesses, "index"), get_index(&step.witnesses, "other")) else {
                return bad("missing indices");
            };
            if i >= b.len() || j >= b.len() || i == j {
                return bad("bad indices");
            }
            let (x, y) = (&b.factors[i], &b.factors[j]);
            if x.beta != y.beta || x.level() != y.level() {
                return bad("factors do not share a beta slot");
            }
            let merged = CyclicSymbol::new(x.omega.add(&y.omega), x.beta.clone()).map_err(|e| e.to_string())?;
            let lo = i.min(j);
            let hi = i.max(j);
            if !untouched_match(b, a, &[hi], &[(lo, &merged)]) {
                return bad("merged expression mismatch");
            }
            Ok(())
        }
        RuleId::MergeOmega => {
            // two readings: the plain two-factor merge, and the recorded
            // one-factor composite [d, g)_p = [(d,0,...,0), d g^(p^m))_(p^(m+1))
            if let (Some(i), Some(j)) = (get_index(&step.witnesses, "index"), get_index(&step.witnesses, "other")) {
                if i >= b.len() || j >= b.len() || i == j {
                    return bad("bad indices");
                }
                let (x, y) = (&b.factors[i], &b.factors[j]);
                if x.omega != y.omega {
                    return bad("factors do not share an omega slot");
                }
                let merged = CyclicSymbol::new(x.omega.clone(), x.beta.mul(&y.beta)).map_err(|e| e.to_string())?;
                let lo = i.min(j);
                let hi = i.max(j);
                if !untouched_match(b, a, &[hi], &[(lo, &merged)]) {
                    return bad("merged expression mismatch");
                }
                return Ok(());
            }
            let Some(i) = get_index(&step.witnesses, "at") else { return bad("missing indices") };
            let Some(gamma) = get_field(&step.witnesses, "gamma") else { return bad("missing gamma") };
            if i >= b.len() || i >= a.len() {
                return bad("index out of range");
            }
            let s = &b.factors[i];
            let t = &a.factors[i];
            if s.level() != 1 || t.level() < 2 {
                return bad("composite embedding needs a level-1 source");
            }
            if s.beta != *gamma {
                return bad("gamma witness must be the source beta");
            }
            let m = t.level() - 1;
            let delta = s.omega.coord(1).clone();
            let expect_omega = WittVector::teichmuller(&delta, t.level());
            let expect_beta = delta.mul(&gamma.pow(s.omega.p().pow(m as u32) as i64).unwrap());
            if t.omega != expect_omega || t.beta != expect_beta {
                return bad("embedded factor must be [(delta,0,...,0), delta*gamma^(p^m))");
            }
            if !untouched_match(b, a, &[], &[(i, t)]) {
                return bad("surrounding factors changed");
            }
            Ok(())
        }
        RuleId::PropShift => {
            let Some(i) = get_index(&step.witnesses, "index") else { return bad("missing index") };
            let Some(x) = get_field(&step.witnesses, "x") else { return bad("missing x") };
            let Some(pi) = get_witt(&step.witnesses, "pi") else { return bad("missing pi") };
            if i >= b.len() || i >= a.len() {
                return bad("index out of range");
            }
            let s = &b.factors[i];
            let m = s.level();
            let sol = solve_pi(&s.beta, x, m).map_err(|e| e.to_string())?;
            if sol.pi != *pi {
                return bad("recorded pi does not match a fresh solve");
            }
            let scale = sol.shifted.div(&s.beta).map_err(|e| e.to_string())?;
            let expect_omega = s
                .omega
                .mul(&WittVector::teichmuller(&scale, m))
                .mul(&sol.pi);
            if a.factors[i].omega != expect_omega || a.factors[i].beta != sol.shifted {
                return bad("shifted factor mismatch");
            }
            if !untouched_match(b, a, &[], &[(i, &a.factors[i])]) {
                return bad("surrounding factors changed");
            }
            Ok(())
        }
        RuleId::MulP => {
            let Some(i) = get_index(&step.witnesses, "index") else { return bad("missing index") };
            if i >= b.len() {
                return bad("index out of range");
            }
            let s = &b.factors[i];
            let p = s.omega.p() as usize;
            if b.len() < i + p {
                return bad("expected p adjacent copies");
            }
            for k in 1..p {
                if b.factors[i + k] != *s {
                    return bad("expected p adjacent equal factors");
                }
            }
            let removed: Vec<usize> = (i..i + p).collect();
            if s.level() == 1 {
                if !untouched_match(b, a, &removed, &[]) {
                    return bad("level-1 power must vanish");
                }
                return Ok(());
            }
            let powered = CyclicSymbol::new(
                s.omega.mul_by_p().unpad().map_err(|e| e.to_string())?,
                s.beta.clone(),
            )
            .map_err(|e| e.to_string())?;
            let removed_tail: Vec<usize> = (i + 1..i + p).collect();
            if !untouched_match(b, a, &removed_tail, &[(i, &powered)]) {
                return bad("p-th power factor mismatch");
            }
            Ok(())
        }
        RuleId::Neat => {
            // composite: [w,b)_m x [al,g)_1 -> [tau,d)_m x [d,g)_1
            let (Some(i), Some(j)) = (get_index(&step.witnesses, "index"), get_index(&step.witnesses, "other")) else {
                return bad("missing indices");
            };
            if i >= b.len() || j >= b.len() || i >= a.len() || j >= a.len() {
                return bad("bad indices");
            }
            let (sa, sb) = (&b.factors[i], &b.factors[j]);
            if sb.level() != 1 {
                return bad("second factor must have level 1");
            }
            let alpha = sb.omega.coord(1);
            let x = alpha.sub(&sa.beta);
            let m = sa.level();
            let sol = solve_pi(&sa.beta, &x, m).map_err(|e| e.to_string())?;
            let scale = sol.shifted.div(&sa.beta).map_err(|e| e.to_string())?;
            let tau = sa.omega.mul(&WittVector::teichmuller(&scale, m)).mul(&sol.pi);
            if a.factors[i].omega != tau || a.factors[i].beta != sol.shifted {
                return bad("first factor mismatch");
            }
            if a.factors[j].omega != WittVector::teichmuller(&sol.shifted, 1)
                || a.factors[j].beta != sb.beta
            {
                return bad("second factor mismatch");
            }
            Ok(())
        }
        RuleId::MergeStep => {
            // composite: [tau,d)_m x [d,g)_1 -> [(d,tau), d*g^(p^m))_(p^(m+1))
            let (Some(i), Some(j)) = (get_index(&step.witnesses, "index"), get_index(&step.witnesses, "other")) else {
                return bad("missing indices");
            };
            if i >= b.len() || j >= b.len() {
                return bad("bad indices");
            }
            let (sa, sb) = (&b.factors[i], &b.factors[j]);
            if sb.level() != 1 || sb.omega.coord(1) != &sa.beta {
                return bad("slot mismatch");
            }
            let m = sa.level();
            let p = sa.omega.p();
            let mut coords = vec![sa.beta.clone()];
            coords.extend(sa.omega.coords().iter().cloned());
            let omega = WittVector::new(coords);
            let beta = sa.beta.mul(&sb.beta.pow(p.pow(m as u32) as i64).unwrap());
            let merged = CyclicSymbol::new(omega, beta).map_err(|e| e.to_string())?;
            let lo = i.min(j);
            let hi = i.max(j);
            if !untouched_match(b, a, &[hi], &[(lo, &merged)]) {
                return bad("merged factor mismatch");
            }
            Ok(())
        }
    }
}

/// Re-execute a trace: every step's pattern and witness arithmetic is
/// recomputed, and consecutive steps must chain.
pub fn validate_trace(trace: &DerivationTrace) -> ValidationReport {
    for (k, step) in trace.steps.iter().enumerate() {
        if k > 0 && trace.steps[k - 1].after != step.before {
            return ValidationReport::fail(k, "steps do not chain");
        }
        if let Err(why) = validate_step(step) {
            return ValidationReport::fail(k, why);
        }
    }
    ValidationReport::ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::parse::parse_elem;
    use crate::field::FieldCtx;
    use std::sync::Arc;

    fn ctx(p: u64, vars: &[&str]) -> Arc<FieldCtx> {
        FieldCtx::new(p, vars).unwrap()
    }

    fn sym(omega: &[&str], beta: &str, c: &Arc<FieldCtx>) -> CyclicSymbol {
        let w = WittVector::new(omega.iter().map(|t| parse_elem(t, c).unwrap()).collect());
        CyclicSymbol::new(w, parse_elem(beta, c).unwrap()).unwrap()
    }

    #[test]
    fn split_deletes_teichmuller_factor() {
        let c = ctx(2, &["s"]);
        let e = BrauerExpr::single(sym(&["s", "0"], "s", &c));
        let (after, step) = apply_identity(&e, RuleApplication::Split { at: 0 }).unwrap();
        assert!(after.is_empty());
        assert!(validate_trace(&DerivationTrace { steps: vec![step] }).valid);
        // refuses a non-split factor
        let e2 = BrauerExpr::single(sym(&["s", "s"], "s", &c));
        assert!(apply_identity(&e2, RuleApplication::Split { at: 0 }).is_err());
    }

    #[test]
    fn as_shift_adds_wp_of_tau() {
        // wp((s)) = (s^2 - s) = (s^2 + s) in characteristic 2
        let c = ctx(2, &["t", "s"]);
        let e = BrauerExpr::single(sym(&["t"], "s", &c));
        let tau = WittVector::new(vec![parse_elem("s", &c).unwrap()]);
        let (after, step) = apply_identity(&e, RuleApplication::AsShift { at: 0, tau }).unwrap();
        assert_eq!(after.factors[0], sym(&["t+s^2+s"], "s", &c));
        assert!(validate_trace(&DerivationTrace { steps: vec![step] }).valid);
    }

    #[test]
    fn merge_beta_adds_omegas() {
        let c = ctx(2, &["t", "s", "u"]);
        let e = BrauerExpr::new(vec![sym(&["t"], "s", &c), sym(&["u"], "s", &c)]).unwrap();
        let (after, step) =
            apply_identity(&e, RuleApplication::MergeBeta { left: 0, right: 1 }).unwrap();
        assert_eq!(after.factors, vec![sym(&["t+u"], "s", &c)]);
        assert!(validate_trace(&DerivationTrace { steps: vec![step] }).valid);
    }

    #[test]
    fn merge_omega_multiplies_betas() {
        let c = ctx(3, &["t", "s", "u"]);
        let e = BrauerExpr::new(vec![sym(&["t"], "s", &c), sym(&["t"], "u", &c)]).unwrap();
        let (after, _) = apply_identity(&e, RuleApplication::MergeOmega { left: 0, right: 1 }).unwrap();
        assert_eq!(after.factors, vec![sym(&["t"], "s*u", &c)]);
    }

    #[test]
    fn pad_unpad_roundtrip() {
        let c = ctx(2, &["t", "s"]);
        let e = BrauerExpr::single(sym(&["t"], "s", &c));
        let (padded, s1) = apply_identity(&e, RuleApplication::Pad { at: 0 }).unwrap();
        assert_eq!(padded.factors[0], sym(&["0", "t"], "s", &c));
        let (back, s2) = apply_identity(&padded, RuleApplication::Unpad { at: 0 }).unwrap();
        assert_eq!(back, e);
        assert!(validate_trace(&DerivationTrace { steps: vec![s1, s2] }).valid);
        // unpad rejects nonzero leading coordinate
        assert!(apply_identity(&e, RuleApplication::Unpad { at: 0 }).is_err());
    }

    #[test]
    fn corrupted_witness_fails_validation() {
        let c = ctx(2, &["t", "s"]);
        let e = BrauerExpr::single(sym(&["t"], "s", &c));
        let tau = WittVector::new(vec![parse_elem("s", &c).unwrap()]);
        let (_, mut step) = apply_identity(&e, RuleApplication::AsShift { at: 0, tau }).unwrap();
        step.witnesses[1] = (
            "tau".into(),
            WitnessValue::Witt(WittVector::new(vec![parse_elem("t", &c).unwrap()])),
        );
        let report = validate_trace(&DerivationTrace { steps: vec![step] });
        assert!(!report.valid);
        assert_eq!(report.failure.unwrap().0, 0);
    }

    #[test]
    fn empty_trace_is_valid() {
        assert!(validate_trace(&DerivationTrace::default()).valid);
    }
}
