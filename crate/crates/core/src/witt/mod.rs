//! Truncated Witt vectors W_m over a rational function field of
//! characteristic p.
//!
//! Coordinates are indexed 1..m (slot 0 of the backing vector is
//! coordinate 1), matching the convention that Verschiebung pads at the
//! front: V(a1, ..., am) = (0, a1, ..., am). Ring operations evaluate the
//! ghost-verified universal polynomials reduced mod p.

pub mod ghost;
pub mod universal;

use crate::error::EngineError;
use crate::field::poly::MPoly;
use crate::field::{eval_poly_elems as eval_upoly, FieldCtx, FieldElem};
use crate::field::poly::PrimeField;
use std::fmt;
use std::sync::Arc;
use universal::universal;

/// An element of W_m(F), m >= 1.
#[derive(Clone, PartialEq, Debug)]
pub struct WittVector {
    coords: Vec<FieldElem>,
}

impl WittVector {
    pub fn new(coords: Vec<FieldElem>) -> Self {
        assert!(!coords.is_empty(), "Witt vectors have length >= 1");
        let ctx = coords[0].ctx.clone();
        for c in &coords[1..] {
            assert!(*c.ctx == *ctx, "coordinates must share one field context");
        }
        WittVector { coords }
    }

    pub fn zero(ctx: &Arc<FieldCtx>, m: usize) -> Self {
        Self::new(vec![FieldElem::zero(ctx); m])
    }

    /// The multiplicative unit (1, 0, ..., 0).
    pub fn unit(ctx: &Arc<FieldCtx>, m: usize) -> Self {
        Self::teichmuller(&FieldElem::one(ctx), m)
    }

    /// Teichmuller lift (a, 0, ..., 0); multiplicative in a.
    pub fn teichmuller(a: &FieldElem, m: usize) -> Self {
        let mut coords = vec![FieldElem::zero(&a.ctx); m];
        coords[0] = a.clone();
        Self::new(coords)
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.coords[0].ctx
    }

    pub fn p(&self) -> u64 {
        self.ctx().p()
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn coords(&self) -> &[FieldElem] {
        &self.coords
    }

    /// Coordinate by 1-based index, per the written convention (a_1, ..., a_m).
    pub fn coord(&self, i: usize) -> &FieldElem {
        &self.coords[i - 1]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn is_unit_value(&self) -> bool {
        self.coords[0].is_one() && self.coords[1..].iter().all(|c| c.is_zero())
    }

    /// Shape compatibility check, surfaced as a typed error for interfaces
    /// that consume user input.
    pub fn check_compat(&self, other: &Self) -> Result<(), EngineError> {
        if self.p() != other.p() || self.len() != other.len() || *self.ctx() != *other.ctx() {
            return Err(EngineError::ShapeMismatch(format!(
                "W_{}(F_{}) vs W_{}(F_{})",
                self.len(),
                self.p(),
                other.len(),
                other.p()
            )));
        }
        Ok(())
    }

    fn binary_op(&self, other: &Self, which: fn(&universal::UniversalWittPolys) -> &Vec<MPoly<PrimeField>>) -> Self {
        self.check_compat(other).expect("mismatched Witt vector shapes");
        let m = self.len();
        let u = universal(self.p(), m);
        let polys = which(&u);
        let args: Vec<&FieldElem> = self.coords.iter().chain(other.coords.iter()).collect();
        let coords = (0..m).map(|n| eval_upoly(&polys[n], &args, self.ctx())).collect();
        Self::new(coords)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.binary_op(other, |u| &u.sum_p)
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.binary_op(other, |u| &u.prod_p)
    }

    pub fn neg(&self) -> Self {
        let m = self.len();
        let u = universal(self.p(), m);
        // negation polynomials use the x block only
        let args: Vec<&FieldElem> = self
            .coords
            .iter()
            .chain(self.coords.iter())
            .collect();
        let coords = (0..m)
            .map(|n| eval_upoly(&u.neg_p[n], &args, self.ctx()))
            .collect();
        Self::new(coords)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// n-fold sum (negative n allowed), by binary doubling.
    pub fn int_mul(&self, n: i64) -> Self {
        if n < 0 {
            return self.neg().int_mul(-n);
        }
        let mut acc = Self::zero(self.ctx(), self.len());
        let mut base = self.clone();
        let mut k = n as u64;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.add(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.add(&base);
            }
        }
        acc
    }

    /// Verschiebung, lengthening: V(a1, ..., am) = (0, a1, ..., am).
    pub fn verschiebung(&self) -> Self {
        let mut coords = Vec::with_capacity(self.len() + 1);
        coords.push(FieldElem::zero(self.ctx()));
        coords.extend_from_slice(&self.coords);
        Self::new(coords)
    }

    /// Verschiebung at fixed length: (0, a1, ..., a_(m-1)).
    pub fn v_trunc(&self) -> Self {
        let mut coords = Vec::with_capacity(self.len());
        coords.push(FieldElem::zero(self.ctx()));
        coords.extend_from_slice(&self.coords[..self.len() - 1]);
        Self::new(coords)
    }

    /// V^j of a Teichmuller atom inside W_m: zeros except `a` in slot j+1.
    pub fn v_teichmuller(a: &FieldElem, depth: usize, m: usize) -> Self {
        assert!(depth < m, "V^{} vanishes in W_{}", depth, m);
        let mut coords = vec![FieldElem::zero(&a.ctx); m];
        coords[depth] = a.clone();
        Self::new(coords)
    }

    /// The unique decomposition a = sum_j V^j [a_(j+1)], returned as data.
    pub fn telescope(&self) -> Vec<(usize, FieldElem)> {
        self.coords.iter().cloned().enumerate().collect()
    }

    /// Coordinatewise p-th power; the Witt Frobenius in characteristic p.
    pub fn frobenius(&self) -> Self {
        Self::new(self.coords.iter().map(|c| c.frobenius()).collect())
    }

    /// The Artin-Schreier-Witt map F - id.
    pub fn wp(&self) -> Self {
        self.frobenius().sub(self)
    }

    /// Multiplication by p: V o F, i.e. (0, a1^p, ..., a_(m-1)^p).
    pub fn mul_by_p(&self) -> Self {
        self.frobenius().v_trunc()
    }

    /// Unit inversion through the V-adic filtration; requires a1 != 0.
    ///
    /// Having matched coordinates 1..k of a*b against the unit, the next
    /// defect is corrected by b += V^k [ (unit_(k+1) - (a*b)_(k+1)) / a1^(p^k) ],
    /// which cannot disturb the coordinates already fixed.
    pub fn inv(&self) -> Result<Self, EngineError> {
        if self.coords[0].is_zero() {
            return Err(EngineError::NonUnit);
        }
        let m = self.len();
        let a1_inv = self.coords[0].inv()?;
        let mut b = Self::teichmuller(&a1_inv, m);
        for k in 1..m {
            let c = self.mul(&b);
            let unit_k = if k == 0 { FieldElem::one(self.ctx()) } else { FieldElem::zero(self.ctx()) };
            let defect = unit_k.sub(&c.coords[k]);
            if defect.is_zero() {
                continue;
            }
            let scale = self.coords[0].pow(self.p().pow(k as u32) as i64).unwrap();
            let corr = defect.div(&scale).unwrap();
            b = b.add(&Self::v_teichmuller(&corr, k, m));
        }
        Ok(b)
    }

    /// End-padding to a longer vector: (a1, ..., am, 0, ..., 0).
    pub fn zero_extend(&self, m2: usize) -> Self {
        assert!(m2 >= self.len());
        let mut coords = self.coords.clone();
        coords.resize(m2, FieldElem::zero(self.ctx()));
        Self::new(coords)
    }

    /// Truncation to the first m2 coordinates (a ring homomorphism).
    pub fn truncate(&self, m2: usize) -> Self {
        assert!(m2 >= 1 && m2 <= self.len());
        Self::new(self.coords[..m2].to_vec())
    }

    /// Drop a leading zero coordinate: (0, a2, ..., am) -> (a2, ..., am).
    pub fn unpad(&self) -> Result<Self, EngineError> {
        if !self.coords[0].is_zero() {
            return Err(EngineError::PatternMismatch(
                "unpad requires coordinate 1 to be zero".into(),
            ));
        }
        if self.len() == 1 {
            return Err(EngineError::PatternMismatch("cannot unpad a length-1 vector".into()));
        }
        Ok(Self::new(self.coords[1..].to_vec()))
    }
}

impl fmt::Display for WittVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", c)?;
        }
        write!(f, ")")
    }
}
