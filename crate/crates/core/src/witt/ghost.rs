//! Witt vectors over the rationals and their ghost components: the
//! characteristic-0 oracle against which the universal polynomials and all
//! characteristic-p shortcuts are checked.

use super::universal::universal;
use crate::field::poly::{MPoly, Rationals, Ring};
use num_bigint::BigInt;
use num_rational::BigRational;

/// A length-m Witt vector with rational coordinates.
#[derive(Clone, PartialEq, Debug)]
pub struct GhostWitt {
    pub p: u64,
    pub coords: Vec<BigRational>,
}

fn eval_q(poly: &MPoly<Rationals>, args: &[&BigRational]) -> BigRational {
    let q = Rationals;
    let mut acc = q.zero();
    for (exps, c) in &poly.terms {
        let mut term = c.clone();
        for (var, &e) in exps.iter().enumerate() {
            for _ in 0..e {
                term *= args[var];
            }
        }
        acc += term;
    }
    acc
}

impl GhostWitt {
    pub fn new(p: u64, coords: Vec<BigRational>) -> Self {
        assert!(!coords.is_empty());
        GhostWitt { p, coords }
    }

    pub fn zero(p: u64, m: usize) -> Self {
        GhostWitt { p, coords: vec![BigRational::from_integer(BigInt::from(0)); m] }
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    fn binary(&self, other: &Self, pick: fn(&super::universal::UniversalWittPolys) -> &Vec<MPoly<Rationals>>) -> Self {
        assert_eq!(self.p, other.p);
        assert_eq!(self.len(), other.len());
        let u = universal(self.p, self.len());
        let polys = pick(&u);
        let args: Vec<&BigRational> = self.coords.iter().chain(other.coords.iter()).collect();
        let coords = (0..self.len()).map(|n| eval_q(&polys[n], &args)).collect();
        GhostWitt { p: self.p, coords }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.binary(other, |u| &u.sum_q)
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.binary(other, |u| &u.prod_q)
    }

    pub fn neg(&self) -> Self {
        let u = universal(self.p, self.len());
        let args: Vec<&BigRational> = self.coords.iter().chain(self.coords.iter()).collect();
        let coords = (0..self.len()).map(|n| eval_q(&u.neg_q[n], &args)).collect();
        GhostWitt { p: self.p, coords }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Ghost components w_n = sum_{i<=n} p^(i-1) a_i^(p^(n-i)).
    pub fn ghost(&self) -> Vec<BigRational> {
        let mut out = Vec::with_capacity(self.len());
        for n in 1..=self.len() {
            let mut acc = BigRational::from_integer(BigInt::from(0));
            for i in 1..=n {
                let weight = BigRational::from_integer(BigInt::from(self.p).pow((i - 1) as u32));
                let e = self.p.pow((n - i) as u32);
                let mut pw = BigRational::from_integer(BigInt::from(1));
                for _ in 0..e {
                    pw *= &self.coords[i - 1];
                }
                acc += weight * pw;
            }
            out.push(acc);
        }
        out
    }
}
