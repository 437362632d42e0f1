//! Exact rational machinery shared by the verification code.
//!
//! Every inequality the library reports is decided without floating point.
//! Three kinds of irrational quantities show up: square roots inside the
//! Krawtchouk root-interval endpoints, and powers n^(u/v) from range limits
//! like (1-1/q)n - n^(1-gamma). Both are handled the same way: a comparison
//! against a rational is reduced to a comparison of integer powers
//! (x <= b^(u/v)  <=>  x^v <= b^u for positive x), which is exact. Rational
//! enclosures are produced only for display values in reports.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;

pub type Rat = BigRational;

pub fn rat_int(v: i64) -> Rat {
    Rat::from_integer(BigInt::from(v))
}

pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_u(v: u64) -> Rat {
    Rat::from_integer(BigInt::from(v))
}

pub fn big_to_rat(v: &BigUint) -> Rat {
    Rat::from_integer(BigInt::from(v.clone()))
}

pub fn factorial(k: usize) -> BigUint {
    (1..=k as u64).map(BigUint::from).fold(BigUint::one(), |a, b| a * b)
}

pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    num_integer::binomial(BigUint::from(n as u64), BigUint::from(k as u64))
}

/// Exact comparison of a rational `x` against `base^(num/den)` (den >= 1).
///
/// base = 0 requires num >= 0. Denominators are expected to be small; the
/// cost is an integer power with exponent `den`.
pub fn cmp_rat_pow(x: &Rat, base: u64, num: i64, den: u64) -> Ordering {
    assert!(den >= 1, "power denominator must be >= 1");
    if num == 0 {
        return x.cmp(&Rat::one());
    }
    if base == 0 {
        assert!(num > 0, "0 to a negative power");
        return x.cmp(&Rat::zero());
    }
    if base == 1 {
        return x.cmp(&Rat::one());
    }
    // base >= 2, so the power is strictly positive.
    if x <= &Rat::zero() {
        return Ordering::Less;
    }
    let (p, r) = (x.numer().magnitude(), x.denom().magnitude());
    let v = u32::try_from(den).expect("power denominator too large");
    let u = u32::try_from(num.unsigned_abs()).expect("power numerator too large");
    let b = BigUint::from(base);
    if num > 0 {
        // x^v ? b^u  <=>  p^v ? r^v * b^u
        p.pow(v).cmp(&(r.pow(v) * b.pow(u)))
    } else {
        // x^v ? b^-u  <=>  p^v * b^u ? r^v
        (p.pow(v) * b.pow(u)).cmp(&r.pow(v))
    }
}

/// Exact comparison of `x` against `r + coeff * base^(num/den)`.
pub fn cmp_rat_affine_pow(
    x: &Rat,
    r: &Rat,
    coeff: &Rat,
    base: u64,
    num: i64,
    den: u64,
) -> Ordering {
    let d = x - r;
    if coeff.is_zero() {
        return d.cmp(&Rat::zero());
    }
    let scaled = &d / coeff;
    let c = cmp_rat_pow(&scaled, base, num, den);
    if coeff.is_positive() {
        c
    } else {
        c.reverse()
    }
}

/// Largest integer <= r + coeff * base^(num/den).
pub fn floor_affine_pow(r: &Rat, coeff: &Rat, base: u64, num: i64, den: u64) -> BigInt {
    let approx = r.to_f64().unwrap_or(0.0)
        + coeff.to_f64().unwrap_or(0.0) * (base as f64).powf(num as f64 / den as f64);
    let mut f = BigInt::from(approx.floor() as i64);
    let le = |f: &BigInt| {
        cmp_rat_affine_pow(&Rat::from_integer(f.clone()), r, coeff, base, num, den)
            != Ordering::Greater
    };
    while !le(&f) {
        f -= 1;
    }
    loop {
        let next = &f + 1;
        if le(&next) {
            f = next;
        } else {
            return f;
        }
    }
}

/// Smallest integer >= r + coeff * base^(num/den).
pub fn ceil_affine_pow(r: &Rat, coeff: &Rat, base: u64, num: i64, den: u64) -> BigInt {
    let f = floor_affine_pow(r, coeff, base, num, den);
    // floor == value only when the power term is exactly rational; detect by
    // comparing the floor back against the value.
    if cmp_rat_affine_pow(&Rat::from_integer(f.clone()), r, coeff, base, num, den)
        == Ordering::Equal
    {
        f
    } else {
        f + 1
    }
}

/// Splits a rational exponent into (num, den) suitable for the power
/// comparators. Panics if the reduced parts do not fit; `BoundsParams`
/// validation keeps them small.
pub fn exponent_parts(e: &Rat) -> (i64, u64) {
    let num = e.numer().to_i64().expect("exponent numerator too large");
    let den = e.denom().to_u64().expect("exponent denominator too large");
    (num, den)
}

/// Rational enclosure [lo, hi] of base^(num/den), hi - lo <= 10^-digits
/// (exact point when the value is rational).
pub fn pow_enclosure(base: u64, num: i64, den: u64, digits: u32) -> (Rat, Rat) {
    assert!(den >= 1);
    if num == 0 || base == 1 {
        return (Rat::one(), Rat::one());
    }
    if base == 0 {
        assert!(num > 0);
        return (Rat::zero(), Rat::zero());
    }
    let v = u32::try_from(den).expect("denominator too large");
    let u = u32::try_from(num.unsigned_abs()).expect("numerator too large");
    let scale = BigUint::from(10u32).pow(digits);
    let scaled = BigUint::from(base).pow(u) * scale.pow(v);
    let root = scaled.nth_root(v);
    let exact = root.pow(v) == scaled;
    let lo = Rat::new(BigInt::from(root.clone()), BigInt::from(scale.clone()));
    let hi = if exact {
        lo.clone()
    } else {
        Rat::new(BigInt::from(root + 1u32), BigInt::from(scale))
    };
    if num > 0 {
        (lo, hi)
    } else {
        (hi.recip(), lo.recip())
    }
}

/// Exact value a + b*sqrt(m) in the quadratic extension Q[sqrt(m)].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Surd {
    pub a: Rat,
    pub b: Rat,
    pub m: BigUint,
}

impl Surd {
    pub fn new(a: Rat, b: Rat, m: BigUint) -> Self {
        Surd { a, b, m }
    }

    pub fn from_rat(a: Rat, m: BigUint) -> Self {
        Surd { a, b: Rat::zero(), m }
    }

    pub fn mul(&self, other: &Surd) -> Surd {
        assert_eq!(self.m, other.m, "mixed radicands");
        let m = big_to_rat(&self.m);
        Surd {
            a: &self.a * &other.a + &self.b * &other.b * &m,
            b: &self.a * &other.b + &self.b * &other.a,
            m: self.m.clone(),
        }
    }

    pub fn pow(&self, k: u32) -> Surd {
        let mut acc = Surd::from_rat(Rat::one(), self.m.clone());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Exact ordering of this value against a rational.
    pub fn cmp_rat(&self, x: &Rat) -> Ordering {
        // a + b sqrt(m) ? x  <=>  b sqrt(m) ? x - a
        let d = x - &self.a;
        let m = big_to_rat(&self.m);
        let lhs_sq = &self.b * &self.b * &m;
        let rhs_sq = &d * &d;
        if self.b >= Rat::zero() {
            if d.is_negative() {
                return Ordering::Greater;
            }
            lhs_sq.cmp(&rhs_sq)
        } else {
            if d.is_positive() {
                return Ordering::Less;
            }
            rhs_sq.cmp(&lhs_sq)
        }
    }

    /// Largest integer <= value.
    pub fn floor(&self) -> BigInt {
        let (lo, _) = self.enclosure(12);
        let mut c = lo.floor().to_integer();
        while self.cmp_rat(&Rat::from_integer(c.clone())) == Ordering::Less {
            c -= 1;
        }
        while self.cmp_rat(&Rat::from_integer(&c + 1)) != Ordering::Less {
            c += 1;
        }
        c
    }

    /// Smallest integer >= value.
    pub fn ceil(&self) -> BigInt {
        let f = self.floor();
        if self.cmp_rat(&Rat::from_integer(f.clone())) == Ordering::Equal {
            f
        } else {
            f + 1
        }
    }

    /// Rational enclosure [lo, hi] of the value, width <= |b| * 10^-digits.
    pub fn enclosure(&self, digits: u32) -> (Rat, Rat) {
        let scale = BigUint::from(10u32).pow(digits);
        let scaled = &self.m * scale.pow(2);
        let root = scaled.sqrt();
        let exact = &root * &root == scaled;
        let s_lo = Rat::new(BigInt::from(root.clone()), BigInt::from(scale.clone()));
        let s_hi = if exact {
            s_lo.clone()
        } else {
            Rat::new(BigInt::from(root + 1u32), BigInt::from(scale))
        };
        let (x, y) = (&self.a + &self.b * &s_lo, &self.a + &self.b * &s_hi);
        if x <= y {
            (x, y)
        } else {
            (y, x)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pow_comparison_agrees_with_squaring() {
        // sqrt(2): 1.414213...
        assert_eq!(cmp_rat_pow(&rat(141, 100), 2, 1, 2), Ordering::Less);
        assert_eq!(cmp_rat_pow(&rat(142, 100), 2, 1, 2), Ordering::Greater);
        // 4^(1/2) = 2 exactly
        assert_eq!(cmp_rat_pow(&rat_int(2), 4, 1, 2), Ordering::Equal);
        // 30^(-1/2) ~ 0.18257
        assert_eq!(cmp_rat_pow(&rat(18, 100), 30, -1, 2), Ordering::Less);
        assert_eq!(cmp_rat_pow(&rat(19, 100), 30, -1, 2), Ordering::Greater);
        // negative x is below any positive power
        assert_eq!(cmp_rat_pow(&rat_int(-1), 7, 3, 2), Ordering::Less);
    }

    #[test]
    fn floor_and_ceil_of_affine_power() {
        // floor(20 - 30^(1/2)) = floor(14.522...) = 14
        let f = floor_affine_pow(&rat_int(20), &rat_int(-1), 30, 1, 2);
        assert_eq!(f, BigInt::from(14));
        let c = ceil_affine_pow(&rat_int(20), &rat_int(-1), 30, 1, 2);
        assert_eq!(c, BigInt::from(15));
        // exact case: 10 + 2 * 9^(1/2) = 16
        assert_eq!(floor_affine_pow(&rat_int(10), &rat_int(2), 9, 1, 2), BigInt::from(16));
        assert_eq!(ceil_affine_pow(&rat_int(10), &rat_int(2), 9, 1, 2), BigInt::from(16));
    }

    #[test]
    fn surd_comparisons_are_exact() {
        // mu2 for (k=2, q=3, n=5): 8/3 + (2/3) sqrt(12) ~ 4.976
        let mu2 = Surd::new(rat(8, 3), rat(2, 3), BigUint::from(12u32));
        assert_eq!(mu2.cmp_rat(&rat_int(4)), Ordering::Greater);
        assert_eq!(mu2.cmp_rat(&rat_int(5)), Ordering::Less);
        let (lo, hi) = mu2.enclosure(12);
        assert!(lo <= hi);
        assert!(&hi - &lo <= rat(1, 1_000_000_000));
        // exact radicand: 1 + 2 sqrt(4) = 5
        let s = Surd::new(rat_int(1), rat_int(2), BigUint::from(4u32));
        assert_eq!(s.cmp_rat(&rat_int(5)), Ordering::Equal);
        let (lo, hi) = s.enclosure(12);
        assert_eq!(lo, hi);
    }

    #[test]
    fn surd_powers_stay_in_the_extension() {
        // (1 + sqrt(2))^2 = 3 + 2 sqrt(2)
        let s = Surd::new(rat_int(1), rat_int(1), BigUint::from(2u32));
        let sq = s.pow(2);
        assert_eq!(sq.a, rat_int(3));
        assert_eq!(sq.b, rat_int(2));
    }

    #[test]
    fn enclosures_bracket_the_power() {
        let (lo, hi) = pow_enclosure(30, 1, 2, 12);
        assert!(lo.to_f64().unwrap() <= 30f64.sqrt());
        assert!(hi.to_f64().unwrap() >= 30f64.sqrt());
        let (lo, hi) = pow_enclosure(9, 1, 2, 12);
        assert_eq!(lo, rat_int(3));
        assert_eq!(hi, rat_int(3));
        let (lo, hi) = pow_enclosure(2, -3, 1, 12);
        assert_eq!(lo, rat(1, 8));
        assert_eq!(hi, rat(1, 8));
    }
}
