//! Exact arithmetic in the prime field F_q.
//!
//! Elements are canonical residues in `[0, q)`; every operation reduces its
//! result back into that range, so equality is structural. Only prime q is
//! accepted: extension fields GF(p^m) would need a polynomial representation
//! and are rejected at construction time.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    /// The requested order is not prime (prime powers are rejected too).
    #[error("field order {0} is not prime")]
    CompositeOrder(u64),
    /// An operand is not a canonical residue for this field.
    #[error("element {value} is not a residue mod {q}")]
    FieldMismatch { value: u64, q: u64 },
    /// Zero has no multiplicative inverse.
    #[error("zero has no inverse")]
    ZeroInverse,
}

/// A prime field F_q, identified by its order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldSpec {
    q: u64,
}

/// A canonical residue in `[0, q)`.
///
/// The element does not carry its field; pairing an element with the wrong
/// `FieldSpec` is detected whenever the residue is out of range.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FieldElement(u64);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    #[inline]
    pub fn value(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Internal constructor for values the caller knows are reduced.
    #[inline]
    pub(crate) fn from_raw(v: u64) -> Self {
        FieldElement(v)
    }
}

/// Deterministic primality by trial division. q is small in every intended
/// use, so nothing faster is warranted.
pub fn is_prime(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    if q.is_multiple_of(2) {
        return q == 2;
    }
    let mut d = 3u64;
    while d * d <= q {
        if q.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

impl FieldSpec {
    /// Builds the field F_q, rejecting composite (and prime-power) orders.
    pub fn new(q: u64) -> Result<Self, FieldError> {
        if is_prime(q) {
            Ok(FieldSpec { q })
        } else {
            Err(FieldError::CompositeOrder(q))
        }
    }

    #[inline]
    pub fn order(&self) -> u64 {
        self.q
    }

    /// Canonical residue of an arbitrary integer.
    #[inline]
    pub fn reduce(&self, v: i64) -> FieldElement {
        FieldElement(v.rem_euclid(self.q as i64) as u64)
    }

    /// Checked constructor: `v` must already be a residue in `[0, q)`.
    pub fn element(&self, v: u64) -> Result<FieldElement, FieldError> {
        if v < self.q {
            Ok(FieldElement(v))
        } else {
            Err(FieldError::FieldMismatch { value: v, q: self.q })
        }
    }

    #[inline]
    fn check(&self, a: FieldElement) -> Result<(), FieldError> {
        if a.0 < self.q {
            Ok(())
        } else {
            Err(FieldError::FieldMismatch { value: a.0, q: self.q })
        }
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement, FieldError> {
        self.check(a)?;
        self.check(b)?;
        Ok(FieldElement(add_raw(a.0, b.0, self.q)))
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement, FieldError> {
        self.check(a)?;
        self.check(b)?;
        Ok(FieldElement(sub_raw(a.0, b.0, self.q)))
    }

    pub fn neg(&self, a: FieldElement) -> Result<FieldElement, FieldError> {
        self.check(a)?;
        Ok(FieldElement(sub_raw(0, a.0, self.q)))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement, FieldError> {
        self.check(a)?;
        self.check(b)?;
        Ok(FieldElement(mul_raw(a.0, b.0, self.q)))
    }

    /// Multiplicative inverse via Fermat's little theorem (a^(q-2)).
    pub fn inv(&self, a: FieldElement) -> Result<FieldElement, FieldError> {
        self.check(a)?;
        if a.0 == 0 {
            return Err(FieldError::ZeroInverse);
        }
        Ok(FieldElement(pow_raw(a.0, self.q - 2, self.q)))
    }

    /// Iterator over all residues, 0..q.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.q).map(FieldElement)
    }

    /// Iterator over the nonzero residues, 1..q.
    pub fn nonzero_elements(&self) -> impl Iterator<Item = FieldElement> {
        (1..self.q).map(FieldElement)
    }
}

#[inline]
pub(crate) fn add_raw(a: u64, b: u64, q: u64) -> u64 {
    let s = a + b;
    if s >= q {
        s - q
    } else {
        s
    }
}

#[inline]
pub(crate) fn sub_raw(a: u64, b: u64, q: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        q - (b - a)
    }
}

#[inline]
pub(crate) fn mul_raw(a: u64, b: u64, q: u64) -> u64 {
    ((a as u128 * b as u128) % q as u128) as u64
}

fn pow_raw(mut a: u64, mut e: u64, q: u64) -> u64 {
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_raw(acc, a, q);
        }
        a = mul_raw(a, a, q);
        e >>= 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(q: u64) -> FieldSpec {
        FieldSpec::new(q).unwrap()
    }

    #[test]
    fn field_make_accepts_primes_rejects_composites() {
        assert_eq!(f(3).order(), 3);
        assert_eq!(f(2).order(), 2);
        assert_eq!(FieldSpec::new(9), Err(FieldError::CompositeOrder(9)));
        assert_eq!(FieldSpec::new(1), Err(FieldError::CompositeOrder(1)));
        assert_eq!(FieldSpec::new(0), Err(FieldError::CompositeOrder(0)));
        for q in [2, 3, 5, 7, 11, 13, 251] {
            assert!(FieldSpec::new(q).is_ok(), "q={q}");
        }
        for q in [4, 6, 8, 9, 25, 49, 121, 250] {
            assert!(FieldSpec::new(q).is_err(), "q={q}");
        }
    }

    #[test]
    fn add_examples() {
        let f3 = f(3);
        let f5 = f(5);
        assert_eq!(f3.add(f3.element(2).unwrap(), f3.element(2).unwrap()).unwrap().value(), 1);
        assert_eq!(f5.add(f5.element(4).unwrap(), f5.element(1).unwrap()).unwrap().value(), 0);
        for x in f3.elements() {
            assert_eq!(f3.add(FieldElement::ZERO, x).unwrap(), x);
        }
    }

    #[test]
    fn mul_examples() {
        let f3 = f(3);
        let f5 = f(5);
        assert_eq!(f3.mul(f3.element(2).unwrap(), f3.element(2).unwrap()).unwrap().value(), 1);
        assert_eq!(f5.mul(f5.element(3).unwrap(), f5.element(4).unwrap()).unwrap().value(), 2);
        for x in f3.elements() {
            assert_eq!(f3.mul(FieldElement::ONE, x).unwrap(), x);
        }
    }

    #[test]
    fn inv_examples() {
        let f3 = f(3);
        let f5 = f(5);
        assert_eq!(f3.inv(f3.element(2).unwrap()).unwrap().value(), 2);
        assert_eq!(f5.inv(f5.element(3).unwrap()).unwrap().value(), 2);
        assert_eq!(f3.inv(FieldElement::ZERO), Err(FieldError::ZeroInverse));
    }

    #[test]
    fn mismatched_residue_is_rejected() {
        let f3 = f(3);
        let f5 = f(5);
        let four = f5.element(4).unwrap();
        assert!(matches!(
            f3.add(four, FieldElement::ZERO),
            Err(FieldError::FieldMismatch { value: 4, q: 3 })
        ));
        assert!(f3.element(3).is_err());
    }

    /// Field axioms, exhaustive for q <= 13.
    #[test]
    fn field_axioms_exhaustive() {
        for q in [2u64, 3, 5, 7, 11, 13] {
            let fq = f(q);
            let elems: Vec<_> = fq.elements().collect();
            for &a in &elems {
                assert_eq!(fq.add(a, fq.neg(a).unwrap()).unwrap(), FieldElement::ZERO);
                if !a.is_zero() {
                    let ai = fq.inv(a).unwrap();
                    assert_eq!(fq.mul(a, ai).unwrap(), FieldElement::ONE);
                    assert_eq!(fq.inv(ai).unwrap(), a);
                }
                for &b in &elems {
                    assert_eq!(fq.add(a, b).unwrap(), fq.add(b, a).unwrap());
                    assert_eq!(fq.mul(a, b).unwrap(), fq.mul(b, a).unwrap());
                    assert_eq!(fq.sub(a, b).unwrap(), fq.add(a, fq.neg(b).unwrap()).unwrap());
                    for &c in &elems {
                        assert_eq!(
                            fq.add(fq.add(a, b).unwrap(), c).unwrap(),
                            fq.add(a, fq.add(b, c).unwrap()).unwrap()
                        );
                        assert_eq!(
                            fq.mul(fq.mul(a, b).unwrap(), c).unwrap(),
                            fq.mul(a, fq.mul(b, c).unwrap()).unwrap()
                        );
                        assert_eq!(
                            fq.mul(a, fq.add(b, c).unwrap()).unwrap(),
                            fq.add(fq.mul(a, b).unwrap(), fq.mul(a, c).unwrap()).unwrap()
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn results_stay_canonical() {
        for q in [2u64, 3, 5, 7] {
            let fq = f(q);
            for a in fq.elements() {
                for b in fq.elements() {
                    assert!(fq.add(a, b).unwrap().value() < q);
                    assert!(fq.sub(a, b).unwrap().value() < q);
                    assert!(fq.mul(a, b).unwrap().value() < q);
                }
            }
        }
    }
}
