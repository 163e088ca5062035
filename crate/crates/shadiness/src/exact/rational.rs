//! Exact rational scalars and the `a//b` text form used in certificate files.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::str::FromStr;

pub use num_rational::BigRational as Rat;

use super::ExactError;

/// Shorthand for a rational from an integer pair.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Renders a rational as `a//b`, with the denominator always present (`1//1`, `-39//40`).
pub fn format_rat(x: &Rat) -> String {
    format!("{}//{}", x.numer(), x.denom())
}

/// Parses `a//b`, `a/b` or a plain integer `a`.
pub fn parse_rat(s: &str) -> Result<Rat, ExactError> {
    let s = s.trim();
    let bad = || ExactError::ParseRational(s.to_string());
    let (num, den) = if let Some((n, d)) = s.split_once("//") {
        (n, Some(d))
    } else if let Some((n, d)) = s.split_once('/') {
        (n, Some(d))
    } else {
        (s, None)
    };
    let n = BigInt::from_str(num.trim()).map_err(|_| bad())?;
    let d = match den {
        Some(d) => BigInt::from_str(d.trim()).map_err(|_| bad())?,
        None => BigInt::one(),
    };
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rat::new(n, d))
}

fn is_ge_sqrt(p: &BigInt, q: &BigInt, x: &Rat) -> bool {
    // p/q >= sqrt(x)  <=>  p^2 * den(x) >= q^2 * num(x), for p/q, x >= 0
    p * p * x.denom() >= q * q * x.numer()
}

/// Smallest rational `p/q` with `q <= max_den` and `(p/q)^2 >= x`, for `x >= 0`.
///
/// Walks the Stern-Brocot tree with batched steps, comparing squares exactly,
/// so no irrational arithmetic is involved. Returns the exact square root
/// whenever it is a rational with denominator within the bound.
pub fn sqrt_upper(x: &Rat, max_den: u64) -> Rat {
    assert!(!x.is_negative(), "sqrt_upper of a negative rational");
    assert!(max_den >= 1);
    if x.is_zero() {
        return Rat::zero();
    }
    let max_den = BigInt::from(max_den);
    // Invariant: l < sqrt(x) <= h, with h = 1/0 representing infinity.
    let (mut pl, mut ql) = (BigInt::zero(), BigInt::one());
    let (mut ph, mut qh) = (BigInt::one(), BigInt::zero());
    loop {
        let mut advanced = false;
        // Batch steps l <- l + k*h while the result stays strictly below sqrt(x).
        let k = max_step(&ql, &qh, &max_den, |k| {
            let p = &pl + k * &ph;
            let q = &ql + k * &qh;
            !is_ge_sqrt(&p, &q, x)
        });
        if k > BigInt::zero() {
            pl += &k * &ph;
            ql += &k * &qh;
            advanced = true;
        }
        // Batch steps h <- h + k*l while the result stays >= sqrt(x).
        let k = max_step(&qh, &ql, &max_den, |k| {
            let p = &ph + k * &pl;
            let q = &qh + k * &ql;
            is_ge_sqrt(&p, &q, x)
        });
        if k > BigInt::zero() {
            ph += &k * &pl;
            qh += &k * &ql;
            advanced = true;
        }
        if !advanced {
            break;
        }
        // Exact hit: h*h == x can stop early, nothing below it qualifies.
        if &ph * &ph * x.denom() == &qh * &qh * x.numer() {
            break;
        }
    }
    Rat::new(ph, qh)
}

/// Largest rational `p/q` with `q <= max_den` and `(p/q)^2 <= x`.
pub fn sqrt_lower(x: &Rat, max_den: u64) -> Rat {
    assert!(!x.is_negative());
    if x.is_zero() {
        return Rat::zero();
    }
    let up = sqrt_upper(x, max_den);
    if &up * &up == *x {
        return up;
    }
    // Mirror walk: keep the lower endpoint instead.
    let max_den = BigInt::from(max_den);
    let (mut pl, mut ql) = (BigInt::zero(), BigInt::one());
    let (mut ph, mut qh) = (BigInt::one(), BigInt::zero());
    loop {
        let mut advanced = false;
        let k = max_step(&ql, &qh, &max_den, |k| {
            let p = &pl + k * &ph;
            let q = &ql + k * &qh;
            !is_ge_sqrt(&p, &q, x)
        });
        if k > BigInt::zero() {
            pl += &k * &ph;
            ql += &k * &qh;
            advanced = true;
        }
        let k = max_step(&qh, &ql, &max_den, |k| {
            let p = &ph + k * &pl;
            let q = &qh + k * &ql;
            is_ge_sqrt(&p, &q, x)
        });
        if k > BigInt::zero() {
            ph += &k * &pl;
            qh += &k * &ql;
            advanced = true;
        }
        if !advanced {
            break;
        }
    }
    Rat::new(pl, ql)
}

/// Largest k >= 0 with `q_base + k*q_step <= max_den` and `ok(k)` for all steps up to k.
///
/// `ok` is monotone in k (true for a prefix), so the largest admissible k is found
/// by doubling followed by bisection.
fn max_step<F: Fn(&BigInt) -> bool>(
    q_base: &BigInt,
    q_step: &BigInt,
    max_den: &BigInt,
    ok: F,
) -> BigInt {
    let cap: BigInt = if q_step.is_zero() {
        // Stepping by 1/0 keeps the denominator fixed; allow unbounded doubling,
        // the predicate itself must fail eventually (it compares against sqrt(x)).
        BigInt::from(u64::MAX)
    } else {
        (max_den - q_base) / q_step
    };
    if cap <= BigInt::zero() || !ok(&BigInt::one()) {
        return BigInt::zero();
    }
    let mut lo = BigInt::one();
    let mut hi = BigInt::from(2);
    while hi <= cap && ok(&hi) {
        lo = hi.clone();
        hi *= 2;
    }
    if hi > cap {
        hi = cap.clone();
        if ok(&hi) {
            return hi;
        }
    }
    // lo ok, hi not ok
    while &hi - &lo > BigInt::one() {
        let mid = (&lo + &hi) / 2;
        if ok(&mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// Best rational approximation of a float with denominator at most `max_den`,
/// via the continued-fraction expansion. Deterministic and exact on dyadic inputs.
pub fn round_to_rational(value: f64, max_den: u64) -> Rat {
    assert!(value.is_finite());
    assert!(max_den >= 1);
    let neg = value < 0.0;
    let mut x = value.abs();
    let max_den_big = BigInt::from(max_den);

    let (mut p0, mut q0) = (BigInt::one(), BigInt::zero());
    let (mut p1, mut q1) = (BigInt::from(x.floor() as i64), BigInt::one());
    x -= x.floor();
    let mut best = (p1.clone(), q1.clone());
    for _ in 0..64 {
        if x <= f64::EPSILON {
            break;
        }
        x = 1.0 / x;
        let a = x.floor();
        if a >= 9.0e15 {
            break;
        }
        x -= a;
        let a = BigInt::from(a as i64);
        let p2 = &a * &p1 + &p0;
        let q2 = &a * &q1 + &q0;
        if q2 > max_den_big {
            // Semiconvergent with the largest admissible coefficient.
            let k = (&max_den_big - &q0) / &q1;
            if k >= a.clone() / 2u8 && k > BigInt::zero() {
                let ps = &k * &p1 + &p0;
                let qs = &k * &q1 + &q0;
                let cand = Rat::new(ps.clone(), qs.clone());
                let cur = Rat::new(best.0.clone(), best.1.clone());
                let target = round_abs_target(value);
                if (cand - &target).abs() < (cur - &target).abs() {
                    best = (ps, qs);
                }
            }
            break;
        }
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        best = (p1.clone(), q1.clone());
    }
    let mut r = Rat::new(best.0, best.1);
    if neg {
        r = -r;
    }
    r
}

fn round_abs_target(value: f64) -> Rat {
    let v = value.abs();
    // Exact dyadic rational equal to the float.
    let (mantissa, exponent, _) = num_traits::Float::integer_decode(v);
    let m = BigInt::from(mantissa);
    if exponent >= 0 {
        Rat::from_integer(m << exponent as usize)
    } else {
        Rat::new(m, BigInt::from(1u8) << (-exponent) as usize)
    }
}

/// Exact dyadic rational equal to the given float.
pub fn rat_from_f64(value: f64) -> Rat {
    assert!(value.is_finite());
    let sign = if value < 0.0 { -1 } else { 1 };
    let r = round_abs_target(value);
    if sign < 0 {
        -r
    } else {
        r
    }
}

/// Compares vectors of rationals lexicographically.
pub fn lex_cmp(a: &[Rat], b: &[Rat]) -> std::cmp::Ordering {
    for (x, y) in a.iter().zip(b.iter()) {
        match x.cmp(y) {
            std::cmp::Ordering::Equal => continue,
            o => return o,
        }
    }
    a.len().cmp(&b.len())
}

/// True if the first nonzero entry is positive (the canonical antipodal representative).
pub fn lex_positive(v: &[Rat]) -> bool {
    for x in v {
        if !x.is_zero() {
            return x.is_positive();
        }
    }
    false
}
