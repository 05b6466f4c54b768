//! Sparse multivariate polynomials over an abstract coefficient ring.
//!
//! Two coefficient rings are used in practice: the prime field `F_p` (all
//! runtime arithmetic) and the rationals (the characteristic-0 ring the
//! ghost-component oracle lives in). Terms are kept sorted in graded
//! lexicographic order with no zero coefficients, so structural equality
//! is semantic equality.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;

/// Coefficient ring operations, threaded through every polynomial op.
pub trait Ring: Clone + PartialEq + fmt::Debug {
    type Elem: Clone + PartialEq + fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse; `None` when the element is not a unit.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn from_i64(&self, n: i64) -> Self::Elem;
}

/// The prime field `F_p` with elements stored as canonical residues.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct PrimeField {
    pub p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Self {
        PrimeField { p }
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1u64;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            exp >>= 1;
        }
        acc
    }
}

impl Ring for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b % self.p) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a % self.p) % self.p
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a % self.p == 0 {
            None
        } else {
            Some(self.pow(*a, self.p - 2))
        }
    }
    fn from_i64(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }
}

/// The field of rational numbers with arbitrary-precision elements.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Rationals;

impl Ring for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
}

/// Graded lexicographic comparison of exponent vectors.
pub fn grlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

/// Sparse multivariate polynomial; terms sorted ascending in grlex order.
#[derive(Clone, PartialEq, Debug)]
pub struct MPoly<R: Ring> {
    pub ring: R,
    pub nvars: usize,
    pub terms: Vec<(Vec<u32>, R::Elem)>,
}

impl<R: Ring> MPoly<R> {
    pub fn zero(ring: R, nvars: usize) -> Self {
        MPoly { ring, nvars, terms: Vec::new() }
    }

    pub fn constant(ring: R, nvars: usize, c: R::Elem) -> Self {
        let mut p = Self::zero(ring, nvars);
        if !p.ring.is_zero(&c) {
            p.terms.push((vec![0; nvars], c));
        }
        p
    }

    pub fn one(ring: R, nvars: usize) -> Self {
        let c = ring.one();
        Self::constant(ring, nvars, c)
    }

    pub fn var(ring: R, nvars: usize, idx: usize) -> Self {
        let mut e = vec![0u32; nvars];
        e[idx] = 1;
        let c = ring.one();
        MPoly { ring, nvars, terms: vec![(e, c)] }
    }

    pub fn monomial(ring: R, nvars: usize, exps: Vec<u32>, c: R::Elem) -> Self {
        let mut p = Self::zero(ring, nvars);
        if !p.ring.is_zero(&c) {
            debug_assert_eq!(exps.len(), nvars);
            p.terms.push((exps, c));
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.iter().all(|&e| e == 0))
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms[0].0.iter().all(|&e| e == 0)
            && self.terms[0].1 == self.ring.one()
    }

    /// Constant term as a ring element (zero polynomial gives zero).
    pub fn constant_value(&self) -> Option<R::Elem> {
        if self.is_zero() {
            Some(self.ring.zero())
        } else if self.is_constant() {
            Some(self.terms[0].1.clone())
        } else {
            None
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .iter()
            .map(|(e, _)| e.iter().sum::<u32>())
            .max()
            .unwrap_or(0)
    }

    /// Leading term under grlex (largest).
    pub fn leading(&self) -> Option<&(Vec<u32>, R::Elem)> {
        self.terms.last()
    }

    fn from_terms(ring: R, nvars: usize, mut terms: Vec<(Vec<u32>, R::Elem)>) -> Self {
        terms.sort_by(|a, b| grlex(&a.0, &b.0));
        let mut out: Vec<(Vec<u32>, R::Elem)> = Vec::with_capacity(terms.len());
        for (e, c) in terms {
            if let Some(last) = out.last_mut() {
                if last.0 == e {
                    last.1 = ring.add(&last.1, &c);
                    continue;
                }
            }
            out.push((e, c));
        }
        out.retain(|(_, c)| !ring.is_zero(c));
        MPoly { ring, nvars, terms: out }
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.nvars, other.nvars);
        let mut terms = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            match grlex(&self.terms[i].0, &other.terms[j].0) {
                Ordering::Less => {
                    terms.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    terms.push(other.terms[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = self.ring.add(&self.terms[i].1, &other.terms[j].1);
                    if !self.ring.is_zero(&c) {
                        terms.push((self.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        terms.extend_from_slice(&self.terms[i..]);
        terms.extend_from_slice(&other.terms[j..]);
        MPoly { ring: self.ring.clone(), nvars: self.nvars, terms }
    }

    pub fn neg(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (e.clone(), self.ring.neg(c)))
            .collect();
        MPoly { ring: self.ring.clone(), nvars: self.nvars, terms }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.nvars, other.nvars);
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.ring.clone(), self.nvars);
        }
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                terms.push((e, self.ring.mul(ca, cb)));
            }
        }
        Self::from_terms(self.ring.clone(), self.nvars, terms)
    }

    pub fn scale(&self, c: &R::Elem) -> Self {
        if self.ring.is_zero(c) {
            return Self::zero(self.ring.clone(), self.nvars);
        }
        let terms = self
            .terms
            .iter()
            .map(|(e, k)| (e.clone(), self.ring.mul(k, c)))
            .collect();
        MPoly { ring: self.ring.clone(), nvars: self.nvars, terms }
    }

    pub fn pow(&self, mut n: u64) -> Self {
        let mut acc = Self::one(self.ring.clone(), self.nvars);
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Exact division; `None` when `self` is not a multiple of `d`.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero(self.ring.clone(), self.nvars));
        }
        let mut rem = self.clone();
        let mut quo: Vec<(Vec<u32>, R::Elem)> = Vec::new();
        let (dl_exp, dl_c) = d.leading().unwrap().clone();
        let dl_inv = self.ring.inv(&dl_c)?;
        while !rem.is_zero() {
            let (rl_exp, rl_c) = rem.leading().unwrap().clone();
            let mut qe = vec![0u32; self.nvars];
            for k in 0..self.nvars {
                if rl_exp[k] < dl_exp[k] {
                    return None;
                }
                qe[k] = rl_exp[k] - dl_exp[k];
            }
            let qc = self.ring.mul(&rl_c, &dl_inv);
            let t = Self::monomial(self.ring.clone(), self.nvars, qe.clone(), qc.clone());
            rem = rem.sub(&t.mul(d));
            quo.push((qe, qc));
        }
        Some(Self::from_terms(self.ring.clone(), self.nvars, quo))
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.iter().map(|(e, _)| e[var]).max().unwrap_or(0)
    }

    /// Coefficient of `x_var^k`, as a polynomial with exponent 0 in `var`.
    pub fn coeff_in(&self, var: usize, k: u32) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(e, _)| e[var] == k)
            .map(|(e, c)| {
                let mut e2 = e.clone();
                e2[var] = 0;
                (e2, c.clone())
            })
            .collect();
        Self::from_terms(self.ring.clone(), self.nvars, terms)
    }

    fn mul_var_pow(&self, var: usize, k: u32) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut e2 = e.clone();
                e2[var] += k;
                (e2, c.clone())
            })
            .collect();
        MPoly { ring: self.ring.clone(), nvars: self.nvars, terms }
    }

    /// Largest variable index occurring with positive degree, if any.
    fn main_var(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for (e, _) in &self.terms {
            for (k, &exp) in e.iter().enumerate().rev() {
                if exp > 0 {
                    best = Some(best.map_or(k, |b: usize| b.max(k)));
                    break;
                }
            }
        }
        best
    }
}

impl<R: Ring> MPoly<R> {
    /// Make the grlex-leading coefficient one (field coefficients).
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some((_, lc)) => {
                let inv = self.ring.inv(lc).expect("leading coefficient not a unit");
                self.scale(&inv)
            }
        }
    }

    /// Content with respect to `var`: gcd of the univariate coefficients.
    fn content_in(&self, var: usize) -> Self {
        let mut c = Self::zero(self.ring.clone(), self.nvars);
        for k in 0..=self.degree_in(var) {
            let coeff = self.coeff_in(var, k);
            if !coeff.is_zero() {
                c = c.gcd(&coeff);
                if c.is_one() {
                    break;
                }
            }
        }
        c
    }

    /// Exact pseudo-remainder: lc(d)^(deg(self) - deg(d) + 1) * self mod d.
    fn pseudo_rem(&self, d: &Self, var: usize) -> Self {
        let dd = d.degree_in(var);
        let lc_d = d.coeff_in(var, dd);
        let bound = self.degree_in(var) - dd + 1;
        let mut steps = 0u32;
        let mut r = self.clone();
        while !r.is_zero() && r.degree_in(var) >= dd {
            let dr = r.degree_in(var);
            let lc_r = r.coeff_in(var, dr);
            // r <- r*lc_d - d * lc_r * x^(dr-dd)
            r = r.mul(&lc_d).sub(&d.mul(&lc_r.mul_var_pow(var, dr - dd)));
            steps += 1;
            if !r.is_zero() && r.degree_in(var) >= dr && dr >= dd {
                // degree must strictly drop; guards against a malformed divisor
                break;
            }
        }
        // pad the multiplier so r equals the textbook pseudo-remainder
        if steps < bound {
            r = r.mul(&lc_d.pow((bound - steps) as u64));
        }
        r
    }

    /// Per-variable minimum exponent over all terms: the monomial content.
    fn monomial_content(&self) -> Vec<u32> {
        let mut mins = self.terms[0].0.clone();
        for (e, _) in &self.terms[1..] {
            for (m, &x) in mins.iter_mut().zip(e) {
                *m = (*m).min(x);
            }
        }
        mins
    }

    /// Multivariate gcd by primitive pseudo-remainder sequences, monic-normalized.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        if self.is_constant() || other.is_constant() {
            return Self::one(self.ring.clone(), self.nvars);
        }
        if self == other {
            return self.monic();
        }
        // fast path: against a monomial, the gcd is the shared monomial part
        if self.terms.len() == 1 || other.terms.len() == 1 {
            let a = self.monomial_content();
            let b = other.monomial_content();
            let exps: Vec<u32> = a.iter().zip(&b).map(|(&x, &y)| x.min(y)).collect();
            let one = self.ring.one();
            return Self::monomial(self.ring.clone(), self.nvars, exps, one);
        }
        let var = self
            .main_var()
            .unwrap()
            .max(other.main_var().unwrap());
        if self.degree_in(var) == 0 || other.degree_in(var) == 0 {
            // one operand is free of the top variable: gcd divides its content
            let (free, mixed) = if self.degree_in(var) == 0 { (self, other) } else { (other, self) };
            return free.gcd(&mixed.content_in(var));
        }
        let cont_a = self.content_in(var);
        let cont_b = other.content_in(var);
        let cont = cont_a.gcd(&cont_b);
        let mut a = self.exact_div(&cont_a).unwrap();
        let mut b = other.exact_div(&cont_b).unwrap();
        if a.degree_in(var) < b.degree_in(var) {
            std::mem::swap(&mut a, &mut b);
        }
        // subresultant remainder sequence: each remainder divides exactly by
        // g * h^d, so contents are extracted only once at the end
        let one = Self::one(self.ring.clone(), self.nvars);
        let mut g = one.clone();
        let mut h = one.clone();
        loop {
            let d = a.degree_in(var) - b.degree_in(var);
            let r = a.pseudo_rem(&b, var);
            if r.is_zero() {
                let pp = b.exact_div(&b.content_in(var)).unwrap();
                return cont.mul(&pp).monic();
            }
            if r.degree_in(var) == 0 {
                return cont.monic();
            }
            a = b;
            let divisor = g.mul(&h.pow(d as u64));
            b = r.exact_div(&divisor).expect("subresultant division is exact");
            g = a.coeff_in(var, a.degree_in(var));
            h = if d == 0 {
                h
            } else {
                // h <- g^d / h^(d-1)
                g.pow(d as u64)
                    .exact_div(&h.pow((d - 1) as u64))
                    .expect("subresultant h-update is exact")
            };
        }
    }
}

impl MPoly<Rationals> {
    /// True when every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.terms.iter().all(|(_, c)| c.is_integer())
    }

    /// Reduce integer coefficients modulo p. Panics on non-integral input.
    pub fn reduce_mod(&self, fp: PrimeField) -> MPoly<PrimeField> {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                assert!(c.is_integer(), "non-integral coefficient {}", c);
                let n = c.to_integer();
                let p = BigInt::from(fp.p);
                let mut r = &n % &p;
                if r.is_negative() {
                    r += &p;
                }
                let digits = r.to_u64_digits().1;
                (e.clone(), *digits.first().unwrap_or(&0))
            })
            .filter(|(_, c)| *c != 0)
            .collect();
        MPoly { ring: fp, nvars: self.nvars, terms }
    }
}

/// Render one term like `3*t^2*s`; the caller supplies variable names.
fn fmt_term<R: Ring>(
    f: &mut fmt::Formatter<'_>,
    ring: &R,
    exps: &[u32],
    coeff: &R::Elem,
    names: &[String],
) -> fmt::Result
where
    R::Elem: fmt::Display,
{
    let mut parts: Vec<String> = Vec::new();
    let is_unit_coeff = *coeff == ring.one();
    if !is_unit_coeff || exps.iter().all(|&e| e == 0) {
        parts.push(format!("{}", coeff));
    }
    for (k, &e) in exps.iter().enumerate() {
        if e == 1 {
            parts.push(names[k].clone());
        } else if e > 1 {
            parts.push(format!("{}^{}", names[k], e));
        }
    }
    write!(f, "{}", parts.join("*"))
}

/// Display wrapper binding a polynomial to variable names.
pub struct PolyDisplay<'a, R: Ring> {
    pub poly: &'a MPoly<R>,
    pub names: &'a [String],
}

impl<'a, R: Ring> fmt::Display for PolyDisplay<'a, R>
where
    R::Elem: fmt::Display,
{
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.poly.terms.iter().rev().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            fmt_term(f, &self.poly.ring, e, c, self.names)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(n: usize) -> Vec<String> {
        ["t", "s", "u", "v"][..n].iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn grlex_orders_by_degree_then_lex() {
        assert_eq!(grlex(&[1, 0], &[0, 1]), Ordering::Greater);
        assert_eq!(grlex(&[0, 2], &[1, 0]), Ordering::Greater);
        assert_eq!(grlex(&[2, 1], &[2, 1]), Ordering::Equal);
    }

    #[test]
    fn arith_mod_2() {
        let fp = PrimeField::new(2);
        let t = MPoly::var(fp, 2, 0);
        let sum = t.add(&t);
        assert!(sum.is_zero());
        let sq = t.add(&MPoly::one(fp, 2)).pow(2);
        // (t+1)^2 = t^2 + 1 over F_2
        assert_eq!(sq.terms.len(), 2);
    }

    #[test]
    fn exact_division_roundtrip() {
        let fp = PrimeField::new(3);
        let t = MPoly::var(fp, 2, 0);
        let s = MPoly::var(fp, 2, 1);
        let a = t.add(&s).mul(&t.sub(&s));
        let q = a.exact_div(&t.add(&s)).unwrap();
        assert_eq!(q, t.sub(&s));
        assert!(a.exact_div(&t.mul(&t)).is_none());
    }

    #[test]
    fn gcd_of_products() {
        let fp = PrimeField::new(5);
        let t = MPoly::var(fp, 3, 0);
        let s = MPoly::var(fp, 3, 1);
        let u = MPoly::var(fp, 3, 2);
        let c = t.add(&s).add(&u);
        let a = c.mul(&t.mul(&t).add(&s));
        let b = c.mul(&u.add(&t));
        let g = a.gcd(&b);
        assert_eq!(g, c.monic());
        // coprime case
        let g2 = t.gcd(&s);
        assert!(g2.is_one());
    }

    #[test]
    fn gcd_univariate_powers() {
        let fp = PrimeField::new(2);
        let t = MPoly::var(fp, 1, 0);
        let g = t.pow(3).gcd(&t.pow(5));
        assert_eq!(g, t.pow(3));
    }

    #[test]
    fn rational_reduction_mod_p() {
        let q = Rationals;
        let x = MPoly::var(q, 1, 0);
        let five = MPoly::constant(q, 1, q.from_i64(5));
        let p = x.mul(&five).add(&MPoly::one(q, 1));
        let r = p.reduce_mod(PrimeField::new(3));
        // 5x + 1 -> 2x + 1 mod 3
        assert_eq!(r.terms.len(), 2);
        assert_eq!(r.leading().unwrap().1, 2);
        let _ = names(1);
    }
}
