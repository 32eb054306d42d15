//! Dense univariate polynomials over the rationals, just enough for
//! cyclotomic-field arithmetic: multiplication, division with remainder,
//! the extended Euclidean algorithm and a cache of cyclotomic polynomials.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num::{BigRational, One, Zero};

pub type Poly = Vec<BigRational>;

/// Drop trailing zero coefficients; the zero polynomial is the empty vector.
pub fn trim(mut p: Poly) -> Poly {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

pub fn is_zero(p: &[BigRational]) -> bool {
    p.iter().all(|c| c.is_zero())
}

pub fn mul(a: &[BigRational], b: &[BigRational]) -> Poly {
    if is_zero(a) || is_zero(b) {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            if !bj.is_zero() {
                out[i + j] += ai * bj;
            }
        }
    }
    trim(out)
}

pub fn sub(a: &[BigRational], b: &[BigRational]) -> Poly {
    let mut out = vec![BigRational::zero(); a.len().max(b.len())];
    for (i, ai) in a.iter().enumerate() {
        out[i] += ai;
    }
    for (i, bi) in b.iter().enumerate() {
        out[i] -= bi;
    }
    trim(out)
}

/// Long division: returns `(quotient, remainder)` with `deg r < deg d`.
/// Panics on a zero divisor; callers only divide by cyclotomic polynomials
/// and nonzero gcd intermediates.
pub fn div_rem(n: &[BigRational], d: &[BigRational]) -> (Poly, Poly) {
    let d = trim(d.to_vec());
    assert!(!d.is_empty(), "polynomial division by zero");
    let mut r = trim(n.to_vec());
    if r.len() < d.len() {
        return (Vec::new(), r);
    }
    let mut q = vec![BigRational::zero(); r.len() - d.len() + 1];
    let lead = d.last().unwrap().clone();
    while r.len() >= d.len() && !r.is_empty() {
        let shift = r.len() - d.len();
        let c = r.last().unwrap() / &lead;
        q[shift] = c.clone();
        for (i, di) in d.iter().enumerate() {
            let t = di * &c;
            r[shift + i] -= t;
        }
        r = trim(r);
    }
    (trim(q), r)
}

/// Extended Euclid: returns `(g, u, v)` with `u*a + v*b = g`, `g` monic
/// unless it is zero.
pub fn ext_gcd(a: &[BigRational], b: &[BigRational]) -> (Poly, Poly, Poly) {
    let mut r0 = trim(a.to_vec());
    let mut r1 = trim(b.to_vec());
    let mut u0: Poly = vec![BigRational::one()];
    let mut u1: Poly = Vec::new();
    let mut v0: Poly = Vec::new();
    let mut v1: Poly = vec![BigRational::one()];
    while !r1.is_empty() {
        let (q, r) = div_rem(&r0, &r1);
        let nu = sub(&u0, &mul(&q, &u1));
        let nv = sub(&v0, &mul(&q, &v1));
        r0 = r1;
        r1 = r;
        u0 = u1;
        u1 = nu;
        v0 = v1;
        v1 = nv;
    }
    if let Some(lead) = r0.last().cloned() {
        let inv = BigRational::one() / lead;
        r0 = r0.iter().map(|c| c * &inv).collect();
        u0 = u0.iter().map(|c| c * &inv).collect();
        v0 = v0.iter().map(|c| c * &inv).collect();
    }
    (r0, u0, v0)
}

fn x_pow_minus_one(n: usize) -> Poly {
    let mut p = vec![BigRational::zero(); n + 1];
    p[0] = -BigRational::one();
    p[n] = BigRational::one();
    p
}

/// The n-th cyclotomic polynomial, computed by dividing `x^n - 1` by the
/// cyclotomic polynomials of the proper divisors of `n`. Results are cached
/// process-wide; the cache is safe for concurrent lookup.
pub fn cyclotomic_polynomial(n: usize) -> Arc<Poly> {
    assert!(n >= 1, "cyclotomic polynomial index must be positive");
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Poly>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(&n) {
        return Arc::clone(hit);
    }
    let phi = if n == 1 {
        vec![-BigRational::one(), BigRational::one()]
    } else {
        let mut num = x_pow_minus_one(n);
        for d in crate::cyclo::divisors(n as u64) {
            let d = d as usize;
            if d < n {
                let (q, r) = div_rem(&num, &cyclotomic_polynomial(d));
                debug_assert!(r.is_empty(), "cyclotomic division must be exact");
                num = q;
            }
        }
        num
    };
    let arc = Arc::new(phi);
    cache
        .lock()
        .unwrap()
        .entry(n)
        .or_insert_with(|| Arc::clone(&arc));
    arc
}
