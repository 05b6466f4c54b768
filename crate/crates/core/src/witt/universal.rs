//! Universal Witt polynomials, generated once per (p, m) from the ghost
//! recursion over the rationals.
//!
//! The sum/product/negation polynomials are solved for over Q, asserted to
//! have integer coefficients, and only then reduced mod p. The ghost map
//! w_n = sum_{i<=n} p^(i-1) a_i^(p^(n-i)) characterizes them; compatibility
//! is checked as polynomial identities, not just on samples.

use crate::field::poly::{MPoly, PrimeField, Rationals};
use num_bigint::BigInt;
use num_rational::BigRational;
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

/// Sum, product and negation polynomials for W_m at a fixed prime.
///
/// All polynomials live in 2m variables: x_1..x_m at indices 0..m-1 and
/// y_1..y_m at indices m..2m-1 (negation only uses the x block).
#[derive(Debug)]
pub struct UniversalWittPolys {
    pub p: u64,
    pub m: usize,
    pub sum_q: Vec<MPoly<Rationals>>,
    pub prod_q: Vec<MPoly<Rationals>>,
    pub neg_q: Vec<MPoly<Rationals>>,
    pub sum_p: Vec<MPoly<PrimeField>>,
    pub prod_p: Vec<MPoly<PrimeField>>,
    pub neg_p: Vec<MPoly<PrimeField>>,
}

fn big(n: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// w_n of a coordinate list given as polynomials (1-based n).
pub fn ghost_of(coords: &[MPoly<Rationals>], p: u64, n: usize) -> MPoly<Rationals> {
    let nvars = coords[0].nvars;
    let mut acc = MPoly::zero(Rationals, nvars);
    for i in 1..=n {
        let weight = big(p.pow((i - 1) as u32));
        let power = p.pow((n - i) as u32) as u64;
        acc = acc.add(&coords[i - 1].pow(power).scale(&weight));
    }
    acc
}

/// Solve coordinate n of the recursion `ghost_n(out) = target_n`.
fn solve_coordinate(
    out: &[MPoly<Rationals>],
    target: &MPoly<Rationals>,
    p: u64,
    n: usize,
) -> MPoly<Rationals> {
    let nvars = target.nvars;
    let mut rest = MPoly::zero(Rationals, nvars);
    for i in 1..n {
        let weight = big(p.pow((i - 1) as u32));
        let power = p.pow((n - i) as u32) as u64;
        rest = rest.add(&out[i - 1].pow(power).scale(&weight));
    }
    let scale = big(p.pow((n - 1) as u32)).recip();
    let coord = target.sub(&rest).scale(&scale);
    assert!(
        coord.is_integral(),
        "non-integral coefficient in universal Witt polynomial (p={}, n={})",
        p,
        n
    );
    coord
}

fn generate(p: u64, m: usize) -> UniversalWittPolys {
    assert!(m >= 1);
    let nvars = 2 * m;
    let q = Rationals;
    let xs: Vec<MPoly<Rationals>> = (0..m).map(|i| MPoly::var(q, nvars, i)).collect();
    let ys: Vec<MPoly<Rationals>> = (0..m).map(|i| MPoly::var(q, nvars, m + i)).collect();

    let mut sum_q = Vec::with_capacity(m);
    let mut prod_q = Vec::with_capacity(m);
    let mut neg_q = Vec::with_capacity(m);
    for n in 1..=m {
        let gx = ghost_of(&xs, p, n);
        let gy = ghost_of(&ys, p, n);
        sum_q.push(solve_coordinate(&sum_q, &gx.add(&gy), p, n));
        prod_q.push(solve_coordinate(&prod_q, &gx.mul(&gy), p, n));
        neg_q.push(solve_coordinate(&neg_q, &gx.neg(), p, n));
    }

    let fp = PrimeField::new(p);
    let reduce = |v: &Vec<MPoly<Rationals>>| v.iter().map(|f| f.reduce_mod(fp)).collect();
    UniversalWittPolys {
        p,
        m,
        sum_p: reduce(&sum_q),
        prod_p: reduce(&prod_q),
        neg_p: reduce(&neg_q),
        sum_q,
        prod_q,
        neg_q,
    }
}

static CACHE: OnceLock<Mutex<HashMap<(u64, usize), Arc<UniversalWittPolys>>>> = OnceLock::new();

/// Fetch (or compute once) the universal polynomials for (p, m).
pub fn universal(p: u64, m: usize) -> Arc<UniversalWittPolys> {
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut map = cache.lock().unwrap();
    map.entry((p, m)).or_insert_with(|| Arc::new(generate(p, m))).clone()
}

/// Check the ghost identities as exact polynomial identities over Q.
pub fn verify_ghost_identities(u: &UniversalWittPolys) -> Result<(), String> {
    let nvars = 2 * u.m;
    let q = Rationals;
    let xs: Vec<MPoly<Rationals>> = (0..u.m).map(|i| MPoly::var(q, nvars, i)).collect();
    let ys: Vec<MPoly<Rationals>> = (0..u.m).map(|i| MPoly::var(q, nvars, u.m + i)).collect();
    for n in 1..=u.m {
        let gx = ghost_of(&xs, u.p, n);
        let gy = ghost_of(&ys, u.p, n);
        if ghost_of(&u.sum_q, u.p, n) != gx.add(&gy) {
            return Err(format!("sum ghost identity fails at p={}, n={}", u.p, n));
        }
        if ghost_of(&u.prod_q, u.p, n) != gx.mul(&gy) {
            return Err(format!("product ghost identity fails at p={}, n={}", u.p, n));
        }
        if ghost_of(&u.neg_q, u.p, n) != gx.neg() {
            return Err(format!("negation ghost identity fails at p={}, n={}", u.p, n));
        }
    }
    Ok(())
}

/// Frobenius polynomials F_1..F_m in m+1 variables, from the ghost shift
/// w_n(F(a)) = w_(n+1)(a). Mod p they must reduce to a_n^p; kept as a
/// design-time check on the coordinatewise implementation.
pub fn frobenius_polys(p: u64, m: usize) -> Vec<MPoly<Rationals>> {
    let nvars = m + 1;
    let q = Rationals;
    let xs: Vec<MPoly<Rationals>> = (0..=m).map(|i| MPoly::var(q, nvars, i)).collect();
    let mut out: Vec<MPoly<Rationals>> = Vec::with_capacity(m);
    for n in 1..=m {
        let target = ghost_of(&xs, p, n + 1);
        out.push(solve_coordinate(&out, &target, p, n));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::poly::Ring;

    /// Frozen expectation: p=2 sum polynomials from the ghost recursion.
    #[test]
    fn sum_polys_p2() {
        let u = universal(2, 2);
        let q = Rationals;
        let a1 = MPoly::var(q, 4, 0);
        let a2 = MPoly::var(q, 4, 1);
        let b1 = MPoly::var(q, 4, 2);
        let b2 = MPoly::var(q, 4, 3);
        assert_eq!(u.sum_q[0], a1.add(&b1));
        // S2 = a2 + b2 - a1*b1
        assert_eq!(u.sum_q[1], a2.add(&b2).sub(&a1.mul(&b1)));
    }

    /// Frozen expectation: p=3, S2 = a2 + b2 - a1^2 b1 - a1 b1^2
    /// (from expanding (a^3 + b^3 - (a+b)^3)/3).
    #[test]
    fn sum_poly_p3() {
        let u = universal(3, 2);
        let q = Rationals;
        let a1 = MPoly::var(q, 4, 0);
        let a2 = MPoly::var(q, 4, 1);
        let b1 = MPoly::var(q, 4, 2);
        let b2 = MPoly::var(q, 4, 3);
        let expect = a2.add(&b2).sub(&a1.pow(2).mul(&b1)).sub(&a1.mul(&b1.pow(2)));
        assert_eq!(u.sum_q[1], expect);
    }

    /// Frozen expectation: p=2 product polynomials.
    #[test]
    fn prod_polys_p2() {
        let u = universal(2, 2);
        let q = Rationals;
        let a1 = MPoly::var(q, 4, 0);
        let a2 = MPoly::var(q, 4, 1);
        let b1 = MPoly::var(q, 4, 2);
        let b2 = MPoly::var(q, 4, 3);
        assert_eq!(u.prod_q[0], a1.mul(&b1));
        // M2 = a1^2 b2 + b1^2 a2 + 2 a2 b2
        let two = MPoly::constant(q, 4, q.from_i64(2));
        let expect = a1.pow(2).mul(&b2).add(&b1.pow(2).mul(&a2)).add(&two.mul(&a2).mul(&b2));
        assert_eq!(u.prod_q[1], expect);
    }

    #[test]
    fn ghost_identities_small() {
        for p in [2u64, 3] {
            for m in 1..=2 {
                verify_ghost_identities(&universal(p, m)).unwrap();
            }
        }
    }

    #[test]
    fn frobenius_polys_reduce_to_p_power() {
        for p in [2u64, 3] {
            for m in 1..=3usize {
                let fs = frobenius_polys(p, m);
                let fp = PrimeField::new(p);
                for (n, f) in fs.iter().enumerate() {
                    let reduced = f.reduce_mod(fp);
                    let xn = MPoly::var(fp, m + 1, n);
                    assert_eq!(reduced, xn.pow(p), "F_{} mod {} is not x^p", n + 1, p);
                }
            }
        }
    }

    #[test]
    fn cache_returns_one_value_under_contention() {
        let handles: Vec<_> = (0..8)
            .map(|_| std::thread::spawn(|| universal(3, 3)))
            .collect();
        let results: Vec<_> = handles.into_iter().map(|h| h.join().unwrap()).collect();
        for w in &results[1..] {
            assert!(Arc::ptr_eq(&results[0], w));
        }
    }
}
