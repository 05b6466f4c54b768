//! Command plumbing for the symbol engine: the surface-syntax parser for
//! symbol expressions, JSON trace emission and replay, and the runners
//! behind each subcommand.
//!
//! Exit-code contract: 0 success, 1 domain error (degenerate shifts,
//! irreducible forms, non-units), 2 usage or parse error.

use serde::{Deserialize, Serialize};
use std::sync::Arc;
use wittbrauer::checks;
use wittbrauer::error::{EngineError, ParseError};
use wittbrauer::field::parse::{parse_coords, parse_elem};
use wittbrauer::field::{FieldCtx, FieldElem};
use wittbrauer::forms::solve_pi;
use wittbrauer::realize::{center_basis, check_relations, realize_symbol, GeneratorPresentation};
use wittbrauer::symbol::pipeline::{albert_reduce, AlbertOutcome};
use wittbrauer::symbol::rules::{
    validate_trace, DerivationTrace, RewriteStep, RuleId, WitnessValue,
};
use wittbrauer::symbol::{BrauerExpr, CyclicSymbol};
use wittbrauer::witt::WittVector;

/// Errors split by exit code.
#[derive(Debug)]
pub enum CliError {
    /// exit 2
    Parse(ParseError),
    /// exit 1
    Engine(EngineError),
    /// exit 2
    Usage(String),
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::Parse(e)
    }
}

impl From<EngineError> for CliError {
    fn from(e: EngineError) -> Self {
        CliError::Engine(e)
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Parse(e) => write!(f, "parse error: {}", e),
            CliError::Engine(e) => write!(f, "error: {}", e),
            CliError::Usage(m) => write!(f, "usage error: {}", m),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Engine(_) => 1,
            CliError::Parse(_) | CliError::Usage(_) => 2,
        }
    }
}

// ---------------------------------------------------------------------------
// symbol expression parser
// ---------------------------------------------------------------------------

struct Scanner {
    chars: Vec<char>,
    pos: usize,
}

impl Scanner {
    fn new(text: &str) -> Self {
        Scanner { chars: text.chars().collect(), pos: 0 }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        self.skip_ws();
        if self.chars.get(self.pos) == Some(&c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(ParseError::syntax(self.pos, format!("expected `{}`", c)))
        }
    }

    /// Consume a field expression up to a top-level `,` or `)`.
    fn scan_elem(&mut self, ctx: &Arc<FieldCtx>) -> Result<FieldElem, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let mut depth = 0usize;
        while self.pos < self.chars.len() {
            match self.chars[self.pos] {
                '(' => depth += 1,
                ')' => {
                    if depth == 0 {
                        break;
                    }
                    depth -= 1;
                }
                ',' if depth == 0 => break,
                _ => {}
            }
            self.pos += 1;
        }
        let segment: String = self.chars[start..self.pos].iter().collect();
        parse_elem(&segment, ctx).map_err(|e| offset_error(e, start))
    }

    fn scan_int(&mut self) -> Result<u64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let mut v: u64 = 0;
        let mut any = false;
        while let Some(c) = self.chars.get(self.pos) {
            if let Some(d) = c.to_digit(10) {
                v = v
                    .checked_mul(10)
                    .and_then(|v| v.checked_add(d as u64))
                    .ok_or_else(|| ParseError::syntax(start, "integer too large"))?;
                any = true;
                self.pos += 1;
            } else {
                break;
            }
        }
        if !any {
            return Err(ParseError::syntax(start, "expected an integer"));
        }
        Ok(v)
    }
}

fn offset_error(e: ParseError, offset: usize) -> ParseError {
    match e {
        ParseError::Syntax { pos, msg } => ParseError::Syntax { pos: pos + offset, msg },
        ParseError::UnknownIndeterminate { name, pos } => {
            ParseError::UnknownIndeterminate { name, pos: pos + offset }
        }
        other => other,
    }
}

fn parse_symbol(sc: &mut Scanner, ctx: &Arc<FieldCtx>) -> Result<CyclicSymbol, ParseError> {
    sc.expect('[')?;
    sc.expect('(')?;
    let mut coords = vec![sc.scan_elem(ctx)?];
    loop {
        match sc.peek() {
            Some(',') => {
                sc.pos += 1;
                coords.push(sc.scan_elem(ctx)?);
            }
            Some(')') => {
                sc.pos += 1;
                break;
            }
            _ => return Err(ParseError::syntax(sc.pos, "expected `,` or `)` in omega")),
        }
    }
    sc.expect(',')?;
    let beta = sc.scan_elem(ctx)?;
    sc.expect(')')?;
    sc.expect('_')?;
    sc.expect('{')?;
    let q = sc.scan_int()?;
    sc.expect('}')?;
    // the braced integer is p^m for the declared prime
    let p = ctx.p();
    let mut m = 0usize;
    let mut acc = 1u64;
    while acc < q {
        acc = acc.saturating_mul(p);
        m += 1;
    }
    if acc != q || m == 0 {
        return Err(ParseError::NotPrimePower { value: q, p });
    }
    if coords.len() != m {
        return Err(ParseError::OmegaLength { got: coords.len(), want: m });
    }
    let omega = WittVector::new(coords);
    CyclicSymbol::new(omega, beta)
        .map_err(|e| ParseError::syntax(sc.pos, format!("invalid symbol: {}", e)))
}

/// Parse a tensor expression `symbol ("*" symbol)*`.
pub fn parse_expression(text: &str, ctx: &Arc<FieldCtx>) -> Result<BrauerExpr, ParseError> {
    let mut sc = Scanner::new(text);
    let mut factors = vec![parse_symbol(&mut sc, ctx)?];
    loop {
        match sc.peek() {
            Some('*') => {
                sc.pos += 1;
                factors.push(parse_symbol(&mut sc, ctx)?);
            }
            None => break,
            _ => return Err(ParseError::syntax(sc.pos, "expected `*` or end of input")),
        }
    }
    BrauerExpr::new(factors)
        .map_err(|e| ParseError::syntax(0, format!("invalid expression: {}", e)))
}

// ---------------------------------------------------------------------------
// trace JSON schema
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct StepJson {
    pub rule: String,
    pub before: String,
    pub after: String,
    pub witnesses: serde_json::Map<String, serde_json::Value>,
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct TraceJson {
    pub steps: Vec<StepJson>,
    pub result: String,
    pub valid: bool,
}

/// Serialize a trace with its result expression; `valid` records a fresh
/// replay through the validator.
pub fn emit_trace(trace: &DerivationTrace, result: &str) -> TraceJson {
    let steps = trace
        .steps
        .iter()
        .map(|s| {
            let mut witnesses = serde_json::Map::new();
            for (name, value) in &s.witnesses {
                let v = match value {
                    WitnessValue::Index(i) => serde_json::json!(i),
                    other => serde_json::json!(other.to_string()),
                };
                witnesses.insert(name.clone(), v);
            }
            StepJson {
                rule: s.rule.as_str().to_string(),
                before: s.before.to_string(),
                after: s.after.to_string(),
                witnesses,
            }
        })
        .collect();
    TraceJson {
        steps,
        result: result.to_string(),
        valid: validate_trace(trace).valid,
    }
}

/// Rebuild a typed trace from its JSON form; witness names fix the type:
/// tau and pi are Witt vectors, index-like names are integers, everything
/// else is a field element.
pub fn trace_from_json(json: &TraceJson, ctx: &Arc<FieldCtx>) -> Result<DerivationTrace, ParseError> {
    let mut steps = Vec::with_capacity(json.steps.len());
    for s in &json.steps {
        let rule = RuleId::from_str(&s.rule)
            .ok_or_else(|| ParseError::syntax(0, format!("unknown rule `{}`", s.rule)))?;
        let parse_expr_or_unit = |t: &str| -> Result<BrauerExpr, ParseError> {
            if t.trim() == "1" {
                Ok(BrauerExpr::default())
            } else {
                parse_expression(t, ctx)
            }
        };
        let before = parse_expr_or_unit(&s.before)?;
        let after = parse_expr_or_unit(&s.after)?;
        let mut witnesses = Vec::new();
        for (name, value) in &s.witnesses {
            let w = match (name.as_str(), value) {
                ("index" | "other" | "at", v) => WitnessValue::Index(
                    v.as_u64()
                        .ok_or_else(|| ParseError::syntax(0, "index witness must be an integer"))?
                        as usize,
                ),
                ("tau" | "pi", serde_json::Value::String(t)) => {
                    WitnessValue::Witt(WittVector::new(parse_coords(t, ctx)?))
                }
                (_, serde_json::Value::String(t)) => WitnessValue::Field(parse_elem(t, ctx)?),
                _ => return Err(ParseError::syntax(0, format!("bad witness `{}`", name))),
            };
            witnesses.push((name.clone(), w));
        }
        steps.push(RewriteStep { rule, before, after, witnesses });
    }
    Ok(DerivationTrace { steps })
}

fn trace_text(trace: &DerivationTrace) -> String {
    let mut out = String::new();
    for (i, s) in trace.steps.iter().enumerate() {
        let ws: Vec<String> = s
            .witnesses
            .iter()
            .filter(|(n, _)| n != "index" && n != "other" && n != "at")
            .map(|(n, v)| format!("{} = {}", n, v))
            .collect();
        let suffix = if ws.is_empty() { String::new() } else { format!("  [{}]", ws.join(", ")) };
        out.push_str(&format!("{:>3}. {:<12} {}{}\n", i + 1, s.rule.as_str(), s.after, suffix));
    }
    out
}

// ---------------------------------------------------------------------------
// subcommand runners
// ---------------------------------------------------------------------------

pub fn run_fold(text: &str, ctx: &Arc<FieldCtx>, json: bool) -> Result<String, CliError> {
    let expr = parse_expression(text, ctx)?;
    match albert_reduce(&expr)? {
        AlbertOutcome::Cyclic { symbol, trace } => {
            if json {
                let t = emit_trace(&trace, &symbol.to_string());
                Ok(serde_json::to_string_pretty(&serde_json::json!({
                    "status": "cyclic",
                    "steps": t.steps,
                    "result": t.result,
                    "valid": t.valid,
                }))
                .unwrap())
            } else {
                let mut out = trace_text(&trace);
                out.push_str(&format!("result: {}\n", symbol));
                Ok(out)
            }
        }
        AlbertOutcome::Halt(report) => {
            let cert = emit_trace(&report.certificate, "1");
            let power = emit_trace(&report.power_trace, &report.power_class.to_string());
            if json {
                Ok(serde_json::to_string_pretty(&serde_json::json!({
                    "status": "halt",
                    "power_class": report.power_class.to_string(),
                    "cyclic_factor": report.cyclic_factor.to_string(),
                    "twist": report.twist.to_string(),
                    "b_expr": report.b_expr.to_string(),
                    "power_steps": power.steps,
                    "certificate": { "steps": cert.steps, "valid": cert.valid },
                    "note": report.note,
                }))
                .unwrap())
            } else {
                let mut out = String::new();
                out.push_str("halt: constructive reduction reached the exponent-p boundary\n");
                out.push_str(&format!("  p-th power class:   {}\n", report.power_class));
                out.push_str(&format!("  cyclic factor:      {}\n", report.cyclic_factor));
                out.push_str(&format!("  twist:              {}\n", report.twist));
                out.push_str(&format!("  B = A * twist:      {}\n", report.b_expr));
                out.push_str(&format!(
                    "  certificate:        {} steps, replay {}\n",
                    report.certificate.steps.len(),
                    if cert.valid { "valid" } else { "INVALID" }
                ));
                out.push_str(&format!("  note: {}\n", report.note));
                Ok(out)
            }
        }
    }
}

pub fn run_witt(text: &str, ctx: &Arc<FieldCtx>, json: bool) -> Result<String, CliError> {
    let trimmed = text.trim();
    let Some(space) = trimmed.find(|c: char| c.is_whitespace()) else {
        return Err(CliError::Usage("expected `op (vector) [vector]`".into()));
    };
    let (op, rest) = trimmed.split_at(space);
    // split the remainder into parenthesized vector literals
    let mut vectors: Vec<&str> = Vec::new();
    let mut depth = 0usize;
    let mut start = None;
    for (i, c) in rest.char_indices() {
        match c {
            '(' => {
                if depth == 0 {
                    start = Some(i);
                }
                depth += 1;
            }
            ')' => {
                depth = depth.saturating_sub(1);
                if depth == 0 {
                    if let Some(s) = start.take() {
                        vectors.push(&rest[s..=i]);
                    }
                }
            }
            _ => {}
        }
    }
    let parsed: Result<Vec<WittVector>, ParseError> = vectors
        .iter()
        .map(|v| Ok(WittVector::new(parse_coords(v, ctx)?)))
        .collect();
    let parsed = parsed?;
    let arity = |n: usize| -> Result<(), CliError> {
        if parsed.len() != n {
            return Err(CliError::Usage(format!(
                "`{}` takes {} vector argument(s), got {}",
                op,
                n,
                parsed.len()
            )));
        }
        Ok(())
    };
    let result = match op {
        "add" | "sub" | "mul" => {
            arity(2)?;
            parsed[0].check_compat(&parsed[1])?;
            match op {
                "add" => parsed[0].add(&parsed[1]),
                "sub" => parsed[0].sub(&parsed[1]),
                _ => parsed[0].mul(&parsed[1]),
            }
        }
        "neg" => {
            arity(1)?;
            parsed[0].neg()
        }
        "inv" => {
            arity(1)?;
            parsed[0].inv()?
        }
        "frob" => {
            arity(1)?;
            parsed[0].frobenius()
        }
        "wp" => {
            arity(1)?;
            parsed[0].wp()
        }
        "mulp" => {
            arity(1)?;
            parsed[0].mul_by_p()
        }
        other => return Err(CliError::Usage(format!("unknown witt op `{}`", other))),
    };
    if json {
        Ok(serde_json::to_string_pretty(&serde_json::json!({ "result": result.to_string() }))
            .unwrap())
    } else {
        Ok(format!("{}\n", result))
    }
}

pub fn run_pi(
    beta_text: &str,
    x_text: &str,
    m: usize,
    ctx: &Arc<FieldCtx>,
    json: bool,
) -> Result<String, CliError> {
    if m == 0 {
        return Err(CliError::Usage("m must be at least 1".into()));
    }
    let beta = parse_elem(beta_text, ctx)?;
    let x = parse_elem(x_text, ctx)?;
    let sol = solve_pi(&beta, &x, m)?;
    if json {
        let steps: Vec<serde_json::Value> = sol
            .derivation
            .steps
            .iter()
            .map(|s| serde_json::json!({ "rule": s.rule, "detail": s.detail }))
            .collect();
        Ok(serde_json::to_string_pretty(&serde_json::json!({
            "pi": sol.pi.to_string(),
            "mu": sol.mu.to_string(),
            "beta": sol.target.to_string(),
            "delta": sol.shifted.to_string(),
            "relation_ok": true,
            "steps": steps,
        }))
        .unwrap())
    } else {
        Ok(format!(
            "pi    = {}\nmu    = {}\ndelta = {}\nrelation pi*d[delta] = d[beta] verified ({} reduction steps)\n",
            sol.pi,
            sol.mu,
            sol.shifted,
            sol.derivation.steps.len()
        ))
    }
}

pub fn run_realize(text: &str, ctx: &Arc<FieldCtx>, json: bool) -> Result<String, CliError> {
    let expr = parse_expression(text, ctx)?;
    if expr.len() != 1 {
        return Err(CliError::Usage("realize takes a single symbol".into()));
    }
    let s = &expr.factors[0];
    let algebra = realize_symbol(s)?;
    let relations_ok = check_relations(&algebra, &GeneratorPresentation::of(s));
    let center = center_basis(&algebra);
    if json {
        let constants: Vec<serde_json::Value> = algebra
            .entries()
            .iter()
            .map(|(i, j, k, v)| serde_json::json!({ "i": i, "j": j, "k": k, "c": v.to_string() }))
            .collect();
        Ok(serde_json::to_string_pretty(&serde_json::json!({
            "dim": algebra.dim,
            "basis": algebra.basis,
            "constants": constants,
            "relations_ok": relations_ok,
            "center_rank": center.len(),
        }))
        .unwrap())
    } else {
        Ok(format!(
            "dimension {}, basis [{}]\nrelations: {}\ncenter rank: {}\nnonzero structure constants: {}\n",
            algebra.dim,
            algebra.basis.join(", "),
            if relations_ok { "ok" } else { "VIOLATED" },
            center.len(),
            algebra.entries().len()
        ))
    }
}

pub fn run_check(seed: u64, json: bool) -> (String, bool) {
    let results = checks::run_all(seed);
    let all_ok = results.iter().all(|r| r.passed);
    if json {
        let items: Vec<serde_json::Value> = results
            .iter()
            .map(|r| {
                serde_json::json!({
                    "name": r.name,
                    "passed": r.passed,
                    "detail": r.detail,
                    "millis": r.elapsed.as_millis() as u64,
                })
            })
            .collect();
        (
            serde_json::to_string_pretty(
                &serde_json::json!({ "checks": items, "all_passed": all_ok }),
            )
            .unwrap(),
            all_ok,
        )
    } else {
        let mut out = String::new();
        for r in &results {
            out.push_str(&format!(
                "{:<28} {}  ({:?}) {}\n",
                r.name,
                if r.passed { "PASS" } else { "FAIL" },
                r.elapsed,
                if r.passed { String::new() } else { r.detail.clone() }
            ));
        }
        out.push_str(&format!(
            "{} of {} suites passed\n",
            results.iter().filter(|r| r.passed).count(),
            results.len()
        ));
        (out, all_ok)
    }
}

pub fn make_ctx(prime: u64, vars: &str) -> Result<Arc<FieldCtx>, CliError> {
    let names: Vec<&str> = vars.split(',').map(|s| s.trim()).filter(|s| !s.is_empty()).collect();
    if names.is_empty() {
        return Err(CliError::Usage("at least one indeterminate is required".into()));
    }
    FieldCtx::new(prime, &names).map_err(CliError::Engine)
}

#[cfg(test)]
mod tests {
    use super::*;
    use wittbrauer::symbol::pipeline::fold_prime_list;

    #[test]
    fn parses_the_surface_grammar() {
        let ctx = make_ctx(2, "t,s,v,w").unwrap();
        let e = parse_expression("[(t,0), s)_{4} * [(v), w)_{2}", &ctx).unwrap();
        assert_eq!(e.len(), 2);
        assert_eq!(e.factors[0].level(), 2);
        assert_eq!(e.factors[1].level(), 1);
    }

    #[test]
    fn rejects_non_power_degree() {
        let ctx = make_ctx(2, "t,s").unwrap();
        match parse_expression("[(t), s)_{3}", &ctx) {
            Err(ParseError::NotPrimePower { value: 3, p: 2 }) => {}
            other => panic!("unexpected: {:?}", other),
        }
        match parse_expression("[(t,s), s)_{2}", &ctx) {
            Err(ParseError::OmegaLength { got: 2, want: 1 }) => {}
            other => panic!("unexpected: {:?}", other),
        }
    }

    #[test]
    fn print_parse_roundtrip() {
        let ctx = make_ctx(2, "t,s,u").unwrap();
        let e = parse_expression("[(t,s), u)_{4}", &ctx).unwrap();
        let back = parse_expression(&e.to_string(), &ctx).unwrap();
        assert_eq!(e, back);
    }

    #[test]
    fn witt_command_examples() {
        let ctx = make_ctx(2, "t,s").unwrap();
        let out = run_witt("add (t,0) (s,0)", &ctx, false).unwrap();
        assert_eq!(out.trim(), "(t + s, t*s)");
        let out = run_witt("inv (1,s)", &ctx, false).unwrap();
        assert_eq!(out.trim(), "(1, s)");
        assert!(matches!(run_witt("bogus (t)", &ctx, false), Err(CliError::Usage(_))));
        assert!(matches!(run_witt("inv (0,s)", &ctx, false), Err(CliError::Engine(_))));
    }

    #[test]
    fn emitted_traces_replay_from_json() {
        let ctx = make_ctx(2, "t,s,u,w").unwrap();
        let e = parse_expression("[(w), t)_{2} * [(s), u)_{2}", &ctx).unwrap();
        let (_, trace) = fold_prime_list(&e).unwrap();
        let json = emit_trace(&trace, "x");
        assert!(json.valid);
        let text = serde_json::to_string(&json).unwrap();
        let parsed: TraceJson = serde_json::from_str(&text).unwrap();
        let replayed = trace_from_json(&parsed, &ctx).unwrap();
        assert!(validate_trace(&replayed).valid);
        // JSON maps sort witness names; compare steps up to witness order
        assert_eq!(replayed.steps.len(), trace.steps.len());
        for (a, b) in replayed.steps.iter().zip(&trace.steps) {
            assert_eq!(a.rule, b.rule);
            assert_eq!(a.before, b.before);
            assert_eq!(a.after, b.after);
            let mut wa = a.witnesses.clone();
            let mut wb = b.witnesses.clone();
            wa.sort_by(|x, y| x.0.cmp(&y.0));
            wb.sort_by(|x, y| x.0.cmp(&y.0));
            assert_eq!(wa, wb);
        }
    }
}
