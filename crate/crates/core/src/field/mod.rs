//! Exact arithmetic in rational function fields F_p(t1, ..., tn).
//!
//! Elements are reduced fractions of multivariate polynomials with a monic
//! denominator under graded-lex order, so equal values have identical stored
//! representations. All values are immutable; operations are pure.

pub mod parse;
pub mod poly;

use crate::error::EngineError;
use poly::{MPoly, PolyDisplay, PrimeField, Ring};
use std::fmt;
use std::sync::Arc;

/// A checked prime, the characteristic of the base field.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub struct Prime(u64);

impl Prime {
    pub fn new(p: u64) -> Result<Self, EngineError> {
        if p < 2 {
            return Err(EngineError::NotPrime(p));
        }
        let mut d = 2;
        while d * d <= p {
            if p % d == 0 {
                return Err(EngineError::NotPrime(p));
            }
            d += 1;
        }
        Ok(Prime(p))
    }

    pub fn get(&self) -> u64 {
        self.0
    }

    /// p^k as u64; desk-scale exponents only.
    pub fn pow(&self, k: usize) -> u64 {
        self.0.pow(k as u32)
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A field descriptor: the prime p and the ordered indeterminate names.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FieldCtx {
    pub prime: Prime,
    pub vars: Vec<String>,
}

impl FieldCtx {
    pub fn new(p: u64, vars: &[&str]) -> Result<Arc<Self>, EngineError> {
        let prime = Prime::new(p)?;
        Ok(Arc::new(FieldCtx {
            prime,
            vars: vars.iter().map(|s| s.to_string()).collect(),
        }))
    }

    pub fn p(&self) -> u64 {
        self.prime.get()
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn fp(&self) -> PrimeField {
        PrimeField::new(self.p())
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }
}

/// An element of F_p(t1, ..., tn) in normal form.
#[derive(Clone, Debug)]
pub struct FieldElem {
    pub ctx: Arc<FieldCtx>,
    num: MPoly<PrimeField>,
    den: MPoly<PrimeField>,
}

impl PartialEq for FieldElem {
    fn eq(&self, other: &Self) -> bool {
        *self.ctx == *other.ctx && self.num == other.num && self.den == other.den
    }
}

impl Eq for FieldElem {}

impl FieldElem {
    /// Build from a numerator/denominator pair, reducing to normal form.
    pub fn from_fraction(
        ctx: Arc<FieldCtx>,
        num: MPoly<PrimeField>,
        den: MPoly<PrimeField>,
    ) -> Result<Self, EngineError> {
        if den.is_zero() {
            return Err(EngineError::DivisionByZero);
        }
        Ok(Self::reduced(ctx, num, den))
    }

    fn reduced(ctx: Arc<FieldCtx>, num: MPoly<PrimeField>, den: MPoly<PrimeField>) -> Self {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            let den = MPoly::one(ctx.fp(), ctx.nvars());
            return FieldElem { ctx, num: MPoly::zero(den.ring, den.nvars), den };
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (num.exact_div(&g).unwrap(), den.exact_div(&g).unwrap())
        };
        // monic denominator normalization
        let lc = den.leading().unwrap().1;
        if lc != 1 {
            let inv = den.ring.inv(&lc).unwrap();
            den = den.scale(&inv);
            num = num.scale(&inv);
        }
        FieldElem { ctx, num, den }
    }

    pub fn zero(ctx: &Arc<FieldCtx>) -> Self {
        let fp = ctx.fp();
        let n = ctx.nvars();
        FieldElem { ctx: ctx.clone(), num: MPoly::zero(fp, n), den: MPoly::one(fp, n) }
    }

    pub fn one(ctx: &Arc<FieldCtx>) -> Self {
        Self::from_int(ctx, 1)
    }

    pub fn from_int(ctx: &Arc<FieldCtx>, n: i64) -> Self {
        let fp = ctx.fp();
        let nv = ctx.nvars();
        let c = fp.from_i64(n);
        FieldElem { ctx: ctx.clone(), num: MPoly::constant(fp, nv, c), den: MPoly::one(fp, nv) }
    }

    pub fn var(ctx: &Arc<FieldCtx>, name: &str) -> Option<Self> {
        let idx = ctx.var_index(name)?;
        let fp = ctx.fp();
        let nv = ctx.nvars();
        Some(FieldElem { ctx: ctx.clone(), num: MPoly::var(fp, nv, idx), den: MPoly::one(fp, nv) })
    }

    pub fn num(&self) -> &MPoly<PrimeField> {
        &self.num
    }

    pub fn den(&self) -> &MPoly<PrimeField> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// Constant value in F_p when the element is constant.
    pub fn as_constant(&self) -> Option<u64> {
        if self.den.is_one() {
            self.num.constant_value()
        } else {
            None
        }
    }

    fn assert_ctx(&self, other: &Self) {
        assert!(
            *self.ctx == *other.ctx,
            "mixed field contexts: F_{}({}) vs F_{}({})",
            self.ctx.p(),
            self.ctx.vars.join(","),
            other.ctx.p(),
            other.ctx.vars.join(",")
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.assert_ctx(other);
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let d = self.den.gcd(&other.den);
        let (a1, b1) = if d.is_one() {
            (self.den.clone(), other.den.clone())
        } else {
            (self.den.exact_div(&d).unwrap(), other.den.exact_div(&d).unwrap())
        };
        let num = self.num.mul(&b1).add(&other.num.mul(&a1));
        let den = self.den.mul(&b1);
        Self::reduced(self.ctx.clone(), num, den)
    }

    pub fn neg(&self) -> Self {
        FieldElem { ctx: self.ctx.clone(), num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.assert_ctx(other);
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.ctx);
        }
        // cross-cancellation keeps intermediate gcds small
        let g1 = self.num.gcd(&other.den);
        let g2 = other.num.gcd(&self.den);
        let n1 = if g1.is_one() { self.num.clone() } else { self.num.exact_div(&g1).unwrap() };
        let d2 = if g1.is_one() { other.den.clone() } else { other.den.exact_div(&g1).unwrap() };
        let n2 = if g2.is_one() { other.num.clone() } else { other.num.exact_div(&g2).unwrap() };
        let d1 = if g2.is_one() { self.den.clone() } else { self.den.exact_div(&g2).unwrap() };
        let mut num = n1.mul(&n2);
        let mut den = d1.mul(&d2);
        let lc = den.leading().unwrap().1;
        if lc != 1 {
            let inv = den.ring.inv(&lc).unwrap();
            den = den.scale(&inv);
            num = num.scale(&inv);
        }
        FieldElem { ctx: self.ctx.clone(), num, den }
    }

    pub fn inv(&self) -> Result<Self, EngineError> {
        if self.is_zero() {
            return Err(EngineError::NonUnit);
        }
        Ok(Self::reduced(self.ctx.clone(), self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, other: &Self) -> Result<Self, EngineError> {
        Ok(self.mul(&other.inv()?))
    }

    /// Integer power; negative exponents invert first.
    pub fn pow(&self, e: i64) -> Result<Self, EngineError> {
        if e < 0 {
            return self.inv()?.pow(-e);
        }
        let mut acc = Self::one(&self.ctx);
        let mut base = self.clone();
        let mut n = e as u64;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        Ok(acc)
    }

    /// The p-power map a -> a^p; additive and multiplicative in char p.
    pub fn frobenius(&self) -> Self {
        let p = self.ctx.p() as i64;
        self.pow(p).unwrap()
    }

    /// Evaluate at a full assignment of prime-field values to indeterminates.
    pub fn specialize(&self, assignment: &[u64]) -> Result<u64, EngineError> {
        assert_eq!(assignment.len(), self.ctx.nvars(), "assignment must cover all indeterminates");
        let fp = self.ctx.fp();
        let eval = |poly: &MPoly<PrimeField>| -> u64 {
            let mut acc = 0u64;
            for (e, c) in &poly.terms {
                let mut t = *c;
                for (k, &exp) in e.iter().enumerate() {
                    if exp > 0 {
                        t = t * fp.pow(assignment[k] % fp.p, exp as u64) % fp.p;
                    }
                }
                acc = (acc + t) % fp.p;
            }
            acc
        };
        let d = eval(&self.den);
        if d == 0 {
            return Err(EngineError::Pole);
        }
        let n = eval(&self.num);
        Ok(fp.mul(&n, &fp.inv(&d).unwrap()))
    }
}

/// Evaluate a polynomial at field elements (possibly of another context),
/// caching powers of each argument.
pub(crate) fn eval_poly_elems(
    poly: &MPoly<PrimeField>,
    args: &[&FieldElem],
    ctx: &Arc<FieldCtx>,
) -> FieldElem {
    let mut pow_cache: Vec<Vec<FieldElem>> = args
        .iter()
        .map(|a| vec![FieldElem::one(ctx), (*a).clone()])
        .collect();
    let mut power = |var: usize, exp: u32| -> FieldElem {
        let cache = &mut pow_cache[var];
        while cache.len() <= exp as usize {
            let next = cache.last().unwrap().mul(&cache[1]);
            cache.push(next);
        }
        cache[exp as usize].clone()
    };
    let mut acc = FieldElem::zero(ctx);
    for (exps, c) in &poly.terms {
        let mut term = FieldElem::from_int(ctx, *c as i64);
        for (var, &e) in exps.iter().enumerate() {
            if e > 0 {
                term = term.mul(&power(var, e));
            }
        }
        acc = acc.add(&term);
    }
    acc
}

impl FieldElem {
    /// Substitute field elements (from a possibly different context) for the
    /// indeterminates of this element.
    pub fn substitute(&self, args: &[&FieldElem], target: &Arc<FieldCtx>) -> Result<Self, EngineError> {
        assert_eq!(args.len(), self.ctx.nvars());
        let n = eval_poly_elems(&self.num, args, target);
        let d = eval_poly_elems(&self.den, args, target);
        if d.is_zero() {
            return Err(EngineError::DivisionByZero);
        }
        n.div(&d)
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num_disp = PolyDisplay { poly: &self.num, names: &self.ctx.vars };
        if self.den.is_one() {
            return write!(f, "{}", num_disp);
        }
        if self.num.terms.len() > 1 {
            write!(f, "({})", num_disp)?;
        } else {
            write!(f, "{}", num_disp)?;
        }
        // denominator needs parens unless it is a bare power of one variable
        let den_simple = self.den.terms.len() == 1 && self.den.terms[0].1 == 1 && {
            let e = &self.den.terms[0].0;
            e.iter().filter(|&&x| x > 0).count() == 1
        };
        let den_disp = PolyDisplay { poly: &self.den, names: &self.ctx.vars };
        if den_simple {
            write!(f, "/{}", den_disp)
        } else {
            write!(f, "/({})", den_disp)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::parse::parse_elem;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn ctx2(p: u64) -> Arc<FieldCtx> {
        FieldCtx::new(p, &["t", "s"]).unwrap()
    }

    fn rand_elem(ctx: &Arc<FieldCtx>, rng: &mut StdRng) -> FieldElem {
        // sparse sample: linear polynomial, occasionally divided by a variable
        let p = ctx.p() as i64;
        let t = FieldElem::var(ctx, "t").unwrap();
        let s = FieldElem::var(ctx, "s").unwrap();
        let c0 = FieldElem::from_int(ctx, rng.random_range(0..p));
        let c1 = FieldElem::from_int(ctx, rng.random_range(0..p));
        let mut e = c0.add(&c1.mul(if rng.random_bool(0.5) { &t } else { &s }));
        if rng.random_bool(0.25) {
            e = e.div(&t).unwrap();
        }
        e
    }

    #[test]
    fn add_t_t_is_zero_mod_2() {
        let ctx = FieldCtx::new(2, &["t"]).unwrap();
        let t = FieldElem::var(&ctx, "t").unwrap();
        assert!(t.add(&t).is_zero());
    }

    #[test]
    fn inv_of_sum() {
        let ctx = ctx2(3);
        let a = parse_elem("t+s", &ctx).unwrap();
        let inv = a.inv().unwrap();
        assert!(a.mul(&inv).is_one());
        assert_eq!(inv.to_string(), "1/(t + s)");
    }

    #[test]
    fn pow_follows_freshman_dream() {
        // (t+1)^3 = t^3 + 1 over F_3, checked against the frobenius route
        let ctx = FieldCtx::new(3, &["t"]).unwrap();
        let a = parse_elem("t+1", &ctx).unwrap();
        let direct = a.pow(3).unwrap();
        assert_eq!(direct, parse_elem("t^3+1", &ctx).unwrap());
        assert_eq!(direct, a.frobenius());
    }

    #[test]
    fn frobenius_examples() {
        let ctx = ctx2(2);
        let a = parse_elem("t+s", &ctx).unwrap();
        assert_eq!(a.frobenius(), parse_elem("t^2+s^2", &ctx).unwrap());
        assert!(FieldElem::one(&ctx).frobenius().is_one());
        let ctx3 = ctx2(3);
        let b = parse_elem("t/s", &ctx3).unwrap();
        assert_eq!(b.frobenius(), parse_elem("t^3/s^3", &ctx3).unwrap());
    }

    #[test]
    fn specialize_examples() {
        let ctx2f2 = ctx2(2);
        let a = parse_elem("t^2+t", &ctx2f2).unwrap();
        assert_eq!(a.specialize(&[1, 0]).unwrap(), 0);
        let pole = parse_elem("1/t", &ctx2f2).unwrap();
        assert_eq!(pole.specialize(&[0, 1]), Err(EngineError::Pole));
        let ctx3 = ctx2(3);
        let b = parse_elem("(t+s)/(t*s)", &ctx3).unwrap();
        // (1+2)/(1*2) = 0/2 = 0 mod 3
        assert_eq!(b.specialize(&[1, 2]).unwrap(), 0);
    }

    #[test]
    fn field_axioms_on_random_samples() {
        for p in [2u64, 3, 5] {
            let ctx = ctx2(p);
            let mut rng = StdRng::seed_from_u64(42 + p);
            for _ in 0..200 {
                let a = rand_elem(&ctx, &mut rng);
                let b = rand_elem(&ctx, &mut rng);
                let c = rand_elem(&ctx, &mut rng);
                assert_eq!(a.add(&b), b.add(&a));
                assert_eq!(a.mul(&b), b.mul(&a));
                assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
                assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
                assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
                assert!(a.sub(&a).is_zero());
                if !a.is_zero() {
                    assert!(a.mul(&a.inv().unwrap()).is_one());
                }
                if !b.is_zero() {
                    assert_eq!(a.mul(&b).div(&b).unwrap(), a);
                }
            }
        }
    }

    #[test]
    fn frobenius_is_a_ring_homomorphism() {
        for p in [2u64, 3] {
            let ctx = ctx2(p);
            let mut rng = StdRng::seed_from_u64(7 * p);
            for _ in 0..100 {
                let a = rand_elem(&ctx, &mut rng);
                let b = rand_elem(&ctx, &mut rng);
                assert_eq!(a.add(&b).frobenius(), a.frobenius().add(&b.frobenius()));
                assert_eq!(a.mul(&b).frobenius(), a.frobenius().mul(&b.frobenius()));
            }
        }
    }

    #[test]
    fn display_roundtrips_through_parser() {
        for p in [2u64, 5] {
            let ctx = ctx2(p);
            let mut rng = StdRng::seed_from_u64(p);
            for _ in 0..100 {
                let a = rand_elem(&ctx, &mut rng).add(&rand_elem(&ctx, &mut rng));
                let text = a.to_string();
                let back = parse_elem(&text, &ctx).unwrap();
                assert_eq!(a, back, "failed roundtrip on `{}`", text);
            }
        }
    }
}
