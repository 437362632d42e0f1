//! Verification report rows.
//!
//! A row is one exact comparison: name, lhs, rhs, pass, note. Hard rows are
//! finite claims that must hold (exit-code failures); informational rows
//! track asymptotic statements evaluated at fixed n, where the underlying
//! claim only promises behavior for sufficiently large n; gate rows record whether a lemma's
//! hypothesis held (an unmet hypothesis is not a failure).

use crate::exact::Rat;
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::de::Error as DeError;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RowKind {
    Hard,
    Informational,
    Gate,
}

/// Lossless rational for report serialization: decimal num/den strings plus
/// a float duplicate for human convenience.
pub mod rat_serde {
    use super::*;

    #[derive(Serialize, Deserialize)]
    struct RatRepr {
        num: String,
        den: String,
        approx: f64,
    }

    pub fn serialize<S: Serializer>(value: &Rat, s: S) -> Result<S::Ok, S::Error> {
        RatRepr {
            num: value.numer().to_string(),
            den: value.denom().to_string(),
            approx: value.to_f64().unwrap_or(f64::NAN),
        }
        .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rat, D::Error> {
        let repr = RatRepr::deserialize(d)?;
        let num = BigInt::from_str(&repr.num).map_err(DeError::custom)?;
        let den = BigInt::from_str(&repr.den).map_err(DeError::custom)?;
        if den.is_zero() {
            return Err(DeError::custom("zero denominator"));
        }
        Ok(Rat::new(num, den))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationRow {
    pub name: String,
    #[serde(with = "rat_serde")]
    pub lhs: Rat,
    #[serde(with = "rat_serde")]
    pub rhs: Rat,
    pub pass: bool,
    pub kind: RowKind,
    pub note: String,
}

impl VerificationRow {
    pub fn exact_eq(name: impl Into<String>, kind: RowKind, lhs: Rat, rhs: Rat, note: impl Into<String>) -> Self {
        let pass = lhs == rhs;
        VerificationRow { name: name.into(), lhs, rhs, pass, kind, note: note.into() }
    }

    pub fn le(name: impl Into<String>, kind: RowKind, lhs: Rat, rhs: Rat, note: impl Into<String>) -> Self {
        let pass = lhs <= rhs;
        VerificationRow { name: name.into(), lhs, rhs, pass, kind, note: note.into() }
    }

    pub fn gate(name: impl Into<String>, held: bool, lhs: Rat, rhs: Rat, note: impl Into<String>) -> Self {
        VerificationRow {
            name: name.into(),
            lhs,
            rhs,
            pass: held,
            kind: RowKind::Gate,
            note: note.into(),
        }
    }

    pub fn with_pass(name: impl Into<String>, kind: RowKind, pass: bool, lhs: Rat, rhs: Rat, note: impl Into<String>) -> Self {
        VerificationRow { name: name.into(), lhs, rhs, pass, kind, note: note.into() }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub rows: Vec<VerificationRow>,
}

impl VerificationReport {
    pub fn new() -> Self {
        VerificationReport { rows: Vec::new() }
    }

    pub fn push(&mut self, row: VerificationRow) {
        self.rows.push(row);
    }

    pub fn extend(&mut self, other: VerificationReport) {
        self.rows.extend(other.rows);
    }

    /// True when every hard row passed (gates and informational rows do not
    /// affect the verdict).
    pub fn all_hard_pass(&self) -> bool {
        self.rows
            .iter()
            .filter(|r| r.kind == RowKind::Hard)
            .all(|r| r.pass)
    }

    pub fn failed_hard(&self) -> impl Iterator<Item = &VerificationRow> {
        self.rows
            .iter()
            .filter(|r| r.kind == RowKind::Hard && !r.pass)
    }

    pub fn find(&self, name: &str) -> Option<&VerificationRow> {
        self.rows.iter().find(|r| r.name == name)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn hard_verdict_ignores_informational_failures() {
        let mut rep = VerificationReport::new();
        rep.push(VerificationRow::exact_eq("a", RowKind::Hard, rat(1, 2), rat(1, 2), ""));
        rep.push(VerificationRow::le("b", RowKind::Informational, rat(3, 1), rat(1, 1), "fails"));
        assert!(rep.all_hard_pass());
        rep.push(VerificationRow::exact_eq("c", RowKind::Hard, rat(1, 1), rat(2, 1), ""));
        assert!(!rep.all_hard_pass());
        assert_eq!(rep.failed_hard().count(), 1);
    }

    #[test]
    fn rational_round_trip_is_lossless() {
        let row = VerificationRow::exact_eq(
            "x",
            RowKind::Hard,
            Rat::new(BigInt::from(123456789012345678901234567890u128), BigInt::from(7u32)),
            rat(-5, 3),
            "big",
        );
        let json = serde_json::to_string(&row).unwrap();
        let back: VerificationRow = serde_json::from_str(&json).unwrap();
        assert_eq!(back.lhs, row.lhs);
        assert_eq!(back.rhs, row.rhs);
        assert!(!back.pass);
    }
}
