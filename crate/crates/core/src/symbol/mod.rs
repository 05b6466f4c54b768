//! Cyclic symbols, formal tensor products, and the identity rule set with
//! replayable derivation traces.

pub mod pipeline;
pub mod rules;

use crate::error::EngineError;
use crate::field::{FieldCtx, FieldElem};
use crate::witt::WittVector;
use std::fmt;
use std::sync::Arc;

/// A symbol presentation: omega in W_m(F) and a nonzero scalar slot, for a
/// cyclic algebra of degree p^m.
#[derive(Clone, PartialEq, Debug)]
pub struct CyclicSymbol {
    pub omega: WittVector,
    pub beta: FieldElem,
}

impl CyclicSymbol {
    pub fn new(omega: WittVector, beta: FieldElem) -> Result<Self, EngineError> {
        if beta.is_zero() {
            return Err(EngineError::PatternMismatch("symbol slot beta must be nonzero".into()));
        }
        if **omega.ctx() != *beta.ctx {
            return Err(EngineError::ShapeMismatch("omega and beta contexts differ".into()));
        }
        Ok(CyclicSymbol { omega, beta })
    }

    pub fn level(&self) -> usize {
        self.omega.len()
    }

    /// The symbol degree p^m.
    pub fn degree(&self) -> u64 {
        self.omega.p().pow(self.level() as u32)
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        self.omega.ctx()
    }

    /// True when the factor is syntactically split: omega equals the
    /// Teichmuller lift of beta, or omega is the zero vector (the trivial
    /// Artin-Schreier-Witt character).
    pub fn is_split_pattern(&self) -> bool {
        self.omega == WittVector::teichmuller(&self.beta, self.level()) || self.omega.is_zero()
    }
}

impl fmt::Display for CyclicSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {})_{{{}}}", self.omega, self.beta, self.degree())
    }
}

/// A formal tensor product of symbols; the empty list is the split class.
#[derive(Clone, PartialEq, Debug, Default)]
pub struct BrauerExpr {
    pub factors: Vec<CyclicSymbol>,
}

impl BrauerExpr {
    pub fn new(factors: Vec<CyclicSymbol>) -> Result<Self, EngineError> {
        if factors.len() > 1 {
            let p = factors[0].omega.p();
            let ctx = factors[0].ctx().clone();
            for s in &factors[1..] {
                if s.omega.p() != p || **s.ctx() != *ctx {
                    return Err(EngineError::ShapeMismatch(
                        "all factors must share one (p, field) context".into(),
                    ));
                }
            }
        }
        Ok(BrauerExpr { factors })
    }

    pub fn single(s: CyclicSymbol) -> Self {
        BrauerExpr { factors: vec![s] }
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }
}

impl fmt::Display for BrauerExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (i, s) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, " * ")?;
            }
            write!(f, "{}", s)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::parse::parse_elem;

    #[test]
    fn display_matches_surface_syntax() {
        let ctx = FieldCtx::new(2, &["t", "s"]).unwrap();
        let omega = WittVector::new(vec![
            parse_elem("t", &ctx).unwrap(),
            parse_elem("0", &ctx).unwrap(),
        ]);
        let s = CyclicSymbol::new(omega, parse_elem("s", &ctx).unwrap()).unwrap();
        assert_eq!(s.to_string(), "[(t, 0), s)_{4}");
        let e = BrauerExpr::single(s);
        assert_eq!(e.to_string(), "[(t, 0), s)_{4}");
        assert_eq!(BrauerExpr::default().to_string(), "1");
    }

    #[test]
    fn rejects_zero_beta() {
        let ctx = FieldCtx::new(3, &["t"]).unwrap();
        let omega = WittVector::new(vec![parse_elem("t", &ctx).unwrap()]);
        assert!(CyclicSymbol::new(omega, FieldElem::zero(&ctx)).is_err());
    }
}
