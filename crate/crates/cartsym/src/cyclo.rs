//! Exact arithmetic in cyclotomic fields `Q(zeta_N)` together with the
//! number-theoretic kernel (Möbius, totient, divisors, 2-part) and the
//! Ramanujan sum.
//!
//! A [`Cyclotomic`] is a rational polynomial in `zeta_N = exp(2*pi*i/N)`,
//! stored reduced modulo the N-th cyclotomic polynomial. Because
//! `1, zeta, ..., zeta^(phi(N)-1)` is a basis of the field, the reduced
//! coefficient vector is canonical at a fixed order: zero-testing and
//! equality are exact coefficient comparisons, never floating point.
//! Mixed orders are promoted to the least common multiple on demand.

pub mod poly;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::integer::{gcd, lcm};
use num::{BigRational, One, Signed, ToPrimitive, Zero};

/// Exact rational scalar used throughout the crate: arbitrary-precision,
/// always reduced, positive denominator.
pub type Rational = BigRational;

/// Shorthand for an integer as a [`Rational`].
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Shorthand for the fraction `n/d`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// An element of `Q(zeta_order)`, reduced modulo the cyclotomic polynomial
/// of its order. `coeffs[k]` is the coefficient of `zeta_order^k`; indices
/// at or above `phi(order)` are zero after reduction.
#[derive(Clone, Debug)]
pub struct Cyclotomic {
    order: usize,
    coeffs: Vec<Rational>,
}

impl Cyclotomic {
    /// Builds an element from raw coefficients of `zeta_order^k`; indices are
    /// taken modulo the order and the result is reduced.
    pub fn from_coeffs(order: usize, raw: &[(i64, Rational)]) -> Self {
        assert!(order >= 1, "cyclotomic order must be positive");
        let mut coeffs = vec![Rational::zero(); order];
        for (k, c) in raw {
            let idx = k.rem_euclid(order as i64) as usize;
            coeffs[idx] += c;
        }
        let mut out = Cyclotomic { order, coeffs };
        out.reduce();
        out
    }

    pub fn zero() -> Self {
        Cyclotomic { order: 1, coeffs: vec![Rational::zero()] }
    }

    pub fn one() -> Self {
        Cyclotomic::from_rational(Rational::one())
    }

    pub fn from_rational(r: Rational) -> Self {
        Cyclotomic { order: 1, coeffs: vec![r] }
    }

    pub fn from_int(n: i64) -> Self {
        Cyclotomic::from_rational(rat(n))
    }

    /// `zeta_n^k`, the primitive n-th root of unity raised to `k mod n`.
    pub fn root_of_unity(n: usize, k: i64) -> Self {
        Cyclotomic::from_coeffs(n, &[(k, Rational::one())])
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Reduced coefficient vector, length equal to the order.
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    fn reduce(&mut self) {
        let phi = poly::cyclotomic_polynomial(self.order);
        let (_, rem) = poly::div_rem(&self.coeffs, &phi);
        let mut coeffs = rem;
        coeffs.resize(self.order, Rational::zero());
        self.coeffs = coeffs;
    }

    /// Re-expresses the element at a larger order; `new_order` must be a
    /// multiple of the current order.
    pub fn promote(&self, new_order: usize) -> Self {
        assert!(
            new_order.is_multiple_of(self.order),
            "promotion target must be a multiple of the current order"
        );
        if new_order == self.order {
            return self.clone();
        }
        let step = new_order / self.order;
        let mut coeffs = vec![Rational::zero(); new_order];
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                coeffs[k * step] = c.clone();
            }
        }
        let mut out = Cyclotomic { order: new_order, coeffs };
        out.reduce();
        out
    }

    fn common_order(&self, other: &Cyclotomic) -> usize {
        lcm(self.order, other.order)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// The value as a rational if it lies in `Q`, i.e. every coefficient of a
    /// positive power vanishes after reduction.
    pub fn to_rational(&self) -> Option<Rational> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Complex conjugate: the Galois automorphism `zeta -> zeta^(-1)`, so the
    /// coefficient of `zeta^k` moves to `zeta^(order - k mod order)`.
    pub fn conj(&self) -> Self {
        let raw: Vec<(i64, Rational)> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (-(k as i64), c.clone()))
            .collect();
        Cyclotomic::from_coeffs(self.order, &raw)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Cyclotomic {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Cyclotomic::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against
    /// the cyclotomic polynomial; `None` for zero.
    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let phi = poly::cyclotomic_polynomial(self.order);
        let (g, u, _) = poly::ext_gcd(&self.coeffs, &phi);
        // g is a monic gcd; for a nonzero element it must be the constant 1.
        assert!(g.len() == 1 && g[0].is_one(), "nonzero cyclotomic has unit gcd");
        let mut coeffs = u;
        coeffs.resize(self.order, Rational::zero());
        let mut out = Cyclotomic { order: self.order, coeffs };
        out.reduce();
        Some(out)
    }

    /// Floating approximation `(re, im)`, for display only.
    pub fn to_float(&self) -> (f64, f64) {
        let n = self.order as f64;
        let mut re = 0.0;
        let mut im = 0.0;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let x = c.to_f64().unwrap_or(f64::NAN);
            let angle = 2.0 * std::f64::consts::PI * (k as f64) / n;
            re += x * angle.cos();
            im += x * angle.sin();
        }
        (re, im)
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        let l = self.common_order(other);
        self.promote(l).coeffs == other.promote(l).coeffs
    }
}

impl Eq for Cyclotomic {}

impl Add for &Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        let l = self.common_order(rhs);
        let a = self.promote(l);
        let b = rhs.promote(l);
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(x, y)| x + y)
            .collect();
        // A linear combination of reduced elements stays reduced.
        Cyclotomic { order: l, coeffs }
    }
}

impl Sub for &Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        self + &(-rhs)
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        if self.order == 1 && rhs.order == 1 {
            return Cyclotomic {
                order: 1,
                coeffs: vec![&self.coeffs[0] * &rhs.coeffs[0]],
            };
        }
        let l = self.common_order(rhs);
        let a = self.promote(l);
        let b = rhs.promote(l);
        let mut coeffs = vec![Rational::zero(); l];
        for (i, ai) in a.coeffs.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.coeffs.iter().enumerate() {
                if !bj.is_zero() {
                    coeffs[(i + j) % l] += ai * bj;
                }
            }
        }
        let mut out = Cyclotomic { order: l, coeffs };
        out.reduce();
        out
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.to_rational() {
            return write!(f, "{}", r);
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {} ", sign)?;
            }
            if k == 0 {
                write!(f, "{}", mag)?;
            } else {
                if !mag.is_one() {
                    write!(f, "{}*", mag)?;
                }
                if k == 1 {
                    write!(f, "z{}", self.order)?;
                } else {
                    write!(f, "z{}^{}", self.order, k)?;
                }
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Number-theoretic kernel
// ---------------------------------------------------------------------------

/// Divisors of `n` in ascending order.
pub fn divisors(n: u64) -> Vec<u64> {
    assert!(n >= 1);
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

/// Möbius function by trial factorization.
pub fn mobius(n: u64) -> i64 {
    assert!(n >= 1);
    let mut n = n;
    let mut k = 0u32;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            k += 1;
        }
        p += 1;
    }
    if n > 1 {
        k += 1;
    }
    if k.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Euler totient by trial factorization.
pub fn totient(n: u64) -> u64 {
    assert!(n >= 1);
    let mut n = n;
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// The 2-part of `h`: the largest power of two dividing it.
pub fn two_part(h: u64) -> u64 {
    assert!(h >= 1);
    h & h.wrapping_neg()
}

/// Ramanujan sum `c_m(q)` by the Möbius closed form
/// `sum over d | gcd(m, q) of d * mu(m / d)`, with `gcd(m, 0) = m`.
/// The result is always an integer.
pub fn ramanujan(m: u64, q: u64) -> i64 {
    assert!(m >= 1);
    let g = if q == 0 { m } else { gcd(m, q) };
    divisors(g)
        .into_iter()
        .map(|d| d as i64 * mobius(m / d))
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// The defining exponential sum of the Ramanujan sum, evaluated exactly
    /// in cyclotomic arithmetic. Independent oracle for [`ramanujan`].
    pub fn ramanujan_exponential_sum(m: u64, q: u64) -> Cyclotomic {
        let mut acc = Cyclotomic::zero();
        for s in 0..m {
            if gcd(s, m) == 1 || m == 1 {
                acc = &acc + &Cyclotomic::root_of_unity(m as usize, (q * s) as i64);
            }
        }
        acc
    }

    #[test]
    fn roots_of_unity_basics() {
        assert_eq!(Cyclotomic::root_of_unity(1, 0), Cyclotomic::one());
        // i^2 = -1, checked through an exact zero test on the sum with 1.
        let i = Cyclotomic::root_of_unity(4, 1);
        let sq = &i * &i;
        assert!((&sq + &Cyclotomic::one()).is_zero());
        // The three cube roots of unity sum to zero.
        let sum = &(&Cyclotomic::root_of_unity(6, 2) + &Cyclotomic::root_of_unity(6, 4))
            + &Cyclotomic::one();
        assert!(sum.is_zero());
    }

    #[test]
    fn conjugation_and_products() {
        let z5 = Cyclotomic::root_of_unity(5, 1);
        assert_eq!(z5.conj(), Cyclotomic::root_of_unity(5, 4));
        let z3 = Cyclotomic::root_of_unity(3, 1);
        assert_eq!(&z3 * &z3.pow(2), Cyclotomic::one());
    }

    #[test]
    fn primitive_eighth_roots_sum_to_zero() {
        // Float geometric-sum oracle first, then the exact check.
        let ks = [1i64, 3, 5, 7];
        let (re, im) = ks.iter().fold((0.0, 0.0), |(re, im), &k| {
            let a = 2.0 * std::f64::consts::PI * k as f64 / 8.0;
            (re + a.cos(), im + a.sin())
        });
        assert!(re.abs() < 1e-12 && im.abs() < 1e-12);
        let sum = ks
            .iter()
            .fold(Cyclotomic::zero(), |acc, &k| &acc + &Cyclotomic::root_of_unity(8, k));
        assert!(sum.is_zero());
    }

    #[test]
    fn mixed_order_equality() {
        // zeta_6^3 = -1 across orders.
        assert_eq!(Cyclotomic::root_of_unity(6, 3), Cyclotomic::from_int(-1));
        assert_eq!(Cyclotomic::root_of_unity(6, 2), Cyclotomic::root_of_unity(3, 1));
    }

    #[test]
    fn inverse_multiplies_to_one() {
        let x = &Cyclotomic::root_of_unity(12, 1) + &Cyclotomic::from_int(2);
        let inv = x.inverse().expect("nonzero");
        assert_eq!(&x * &inv, Cyclotomic::one());
        assert!(Cyclotomic::zero().inverse().is_none());
    }

    #[test]
    fn float_rendering() {
        let (re, im) = Cyclotomic::root_of_unity(4, 1).to_float();
        assert!(re.abs() < 1e-12 && (im - 1.0).abs() < 1e-12);
    }

    #[test]
    fn arithmetic_function_tables() {
        assert_eq!(mobius(4), 0);
        assert_eq!(mobius(6), 1);
        assert_eq!(totient(6), 2);
        assert_eq!(two_part(12), 4);
        assert_eq!(two_part(5), 1);
        assert_eq!(two_part(8), 8);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
    }

    #[test]
    fn ramanujan_small_values() {
        for q in 0..10 {
            assert_eq!(ramanujan(1, q), 1);
        }
        assert_eq!(ramanujan(6, 0), totient(6) as i64);
        assert_eq!(ramanujan(4, 2), -2);
    }

    #[test]
    fn ramanujan_matches_exponential_sum_smoke() {
        for m in 1..=12u64 {
            for q in 0..=12u64 {
                let exact = ramanujan_exponential_sum(m, q);
                assert_eq!(
                    exact,
                    Cyclotomic::from_int(ramanujan(m, q)),
                    "c_{}({})",
                    m,
                    q
                );
            }
        }
    }

    #[test]
    fn ramanujan_periodicity_and_prime_rule() {
        for m in 1..=20u64 {
            for q in 0..=20u64 {
                assert_eq!(ramanujan(m, q), ramanujan(m, q % m.max(1)));
            }
        }
        for p in [2u64, 3, 5, 7, 11, 13] {
            for q in 1..=2 * p {
                let expect = if q % p == 0 { p as i64 - 1 } else { -1 };
                assert_eq!(ramanujan(p, q), expect);
            }
        }
    }

    fn small_cyclotomic() -> impl Strategy<Value = Cyclotomic> {
        (1usize..=12, proptest::collection::vec((-4i64..=4, -3i64..=3), 0..4)).prop_map(
            |(order, terms)| {
                let raw: Vec<(i64, Rational)> =
                    terms.into_iter().map(|(k, c)| (k, rat(c))).collect();
                Cyclotomic::from_coeffs(order, &raw)
            },
        )
    }

    proptest! {
        #[test]
        fn field_axioms(x in small_cyclotomic(), y in small_cyclotomic(), z in small_cyclotomic()) {
            prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
            prop_assert_eq!(&x * &y, &y * &x);
            prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
            prop_assert!((&x - &x).is_zero());
        }

        #[test]
        fn conjugate_norm_is_real(x in small_cyclotomic()) {
            let norm = &x * &x.conj();
            let (_, im) = norm.to_float();
            prop_assert!(im.abs() < 1e-9);
        }
    }
}
