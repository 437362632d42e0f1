//! Linear-code model: enumeration, weight distribution, distance/bias
//! profiling, puncturing, span extension, and exhaustive enumeration of
//! low-weight dual codewords.
//!
//! Codes are stored fully enumerated. The interesting regime is n^t-sparse
//! (dimension O(log n)), where enumeration is both feasible and the only way
//! to get exact distances, biases and weight counts. Dual codewords of a
//! given weight are enumerated support-by-support; the dual itself is never
//! enumerated (it has q^(n-d) elements).

use crate::exact::{rat_u, Rat};
use crate::field::{add_raw, mul_raw, sub_raw, FieldElement, FieldError, FieldSpec};
use crate::rng::RandomSource;
use itertools::Itertools;
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Cap on cached codeword enumerations (q^d words).
pub const DEFAULT_ENUM_LIMIT: usize = 4_000_000;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CodeError {
    #[error("block length must be at least 1")]
    EmptyBlock,
    #[error("index {index} out of range for block length {n}")]
    IndexError { index: usize, n: usize },
    #[error("word length {got} does not match block length {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("enumeration of {words} codewords exceeds the limit {limit}")]
    EnumerationTooLarge { words: BigUint, limit: usize },
    #[error("weight {k} out of range for block length {n}")]
    WeightOutOfRange { k: usize, n: usize },
    #[error("at most 2 required-nonzero indices are supported, got {got}")]
    TooManyRequiredIndices { got: usize },
    #[error("bias target unreachable after {retries} retries; best found {best}")]
    BiasUnreachable { retries: usize, best: Rat },
}

/// A length-n vector over F_q.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word {
    field: FieldSpec,
    symbols: Vec<FieldElement>,
}

impl Word {
    pub fn new(field: FieldSpec, symbols: Vec<FieldElement>) -> Result<Self, CodeError> {
        for &s in &symbols {
            field.element(s.value())?;
        }
        Ok(Word { field, symbols })
    }

    /// Builds a word from raw residues, validating each one.
    pub fn from_residues(field: FieldSpec, residues: &[u64]) -> Result<Self, CodeError> {
        let symbols = residues
            .iter()
            .map(|&v| field.element(v))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Word { field, symbols })
    }

    pub fn zero(field: FieldSpec, n: usize) -> Self {
        Word { field, symbols: vec![FieldElement::ZERO; n] }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[FieldElement] {
        &self.symbols
    }

    pub fn get(&self, i: usize) -> FieldElement {
        self.symbols[i]
    }

    pub fn residues(&self) -> Vec<u64> {
        self.symbols.iter().map(|s| s.value()).collect()
    }

    /// Number of nonzero coordinates.
    pub fn weight(&self) -> usize {
        self.symbols.iter().filter(|s| !s.is_zero()).count()
    }

    pub fn hamming_distance(&self, other: &Word) -> usize {
        assert_eq!(self.len(), other.len());
        self.symbols
            .iter()
            .zip(&other.symbols)
            .filter(|(a, b)| a != b)
            .count()
    }

    pub fn add(&self, other: &Word) -> Result<Word, CodeError> {
        self.check_compatible(other)?;
        let q = self.field.order();
        let symbols = self
            .symbols
            .iter()
            .zip(&other.symbols)
            .map(|(a, b)| FieldElement::from_raw(add_raw(a.value(), b.value(), q)))
            .collect();
        Ok(Word { field: self.field, symbols })
    }

    pub fn sub(&self, other: &Word) -> Result<Word, CodeError> {
        self.check_compatible(other)?;
        let q = self.field.order();
        let symbols = self
            .symbols
            .iter()
            .zip(&other.symbols)
            .map(|(a, b)| FieldElement::from_raw(sub_raw(a.value(), b.value(), q)))
            .collect();
        Ok(Word { field: self.field, symbols })
    }

    pub fn scale(&self, c: FieldElement) -> Result<Word, CodeError> {
        self.field.element(c.value())?;
        let q = self.field.order();
        let symbols = self
            .symbols
            .iter()
            .map(|a| FieldElement::from_raw(mul_raw(a.value(), c.value(), q)))
            .collect();
        Ok(Word { field: self.field, symbols })
    }

    /// Standard dot product over F_q.
    pub fn inner_product(&self, other: &Word) -> Result<FieldElement, CodeError> {
        self.check_compatible(other)?;
        let q = self.field.order();
        let mut acc = 0u64;
        for (a, b) in self.symbols.iter().zip(&other.symbols) {
            acc = add_raw(acc, mul_raw(a.value(), b.value(), q), q);
        }
        Ok(FieldElement::from_raw(acc))
    }

    fn check_compatible(&self, other: &Word) -> Result<(), CodeError> {
        if self.field != other.field {
            return Err(FieldError::FieldMismatch {
                value: other.field.order(),
                q: self.field.order(),
            }
            .into());
        }
        if self.len() != other.len() {
            return Err(CodeError::LengthMismatch { expected: self.len(), got: other.len() });
        }
        Ok(())
    }
}

/// The vector <B_0, ..., B_n> of exact weight counts of a set of words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightDistribution {
    counts: Vec<BigUint>,
    set_size: BigUint,
}

impl WeightDistribution {
    pub fn new(counts: Vec<BigUint>) -> Self {
        let set_size = counts.iter().sum();
        WeightDistribution { counts, set_size }
    }

    pub fn from_words<'a>(n: usize, words: impl Iterator<Item = &'a Word>) -> Self {
        let mut counts = vec![BigUint::zero(); n + 1];
        let mut size = BigUint::zero();
        for w in words {
            counts[w.weight()] += 1u32;
            size += 1u32;
        }
        WeightDistribution { counts, set_size: size }
    }

    pub fn counts(&self) -> &[BigUint] {
        &self.counts
    }

    pub fn count(&self, i: usize) -> &BigUint {
        &self.counts[i]
    }

    pub fn block_length(&self) -> usize {
        self.counts.len() - 1
    }

    pub fn set_size(&self) -> &BigUint {
        &self.set_size
    }
}

/// Profile of a linear code: exact distance and bias, plus the measured
/// sparsity exponent log_n |C|.
#[derive(Debug, Clone, PartialEq)]
pub enum CodeProfile {
    /// The zero code: distance and bias are undefined.
    AllZero { q: u64, n: usize },
    Proper(ProfileData),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProfileData {
    pub q: u64,
    pub n: usize,
    pub size: BigUint,
    pub dimension: usize,
    /// delta(C) = (minimum nonzero weight) / n.
    pub min_distance_fraction: Rat,
    /// Max over nonzero codewords of |weight/n - (1 - 1/q)|.
    pub bias: Rat,
    /// log_n |C|, None for n < 2.
    pub sparsity_exponent: Option<f64>,
}

/// The enumerated set of weight-k dual codewords, optionally constrained to
/// be nonzero on one or two given indices.
#[derive(Debug, Clone)]
pub struct DualSlice {
    k: usize,
    required_nonzero: Vec<usize>,
    members: Vec<Word>,
}

impl DualSlice {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn required_nonzero(&self) -> &[usize] {
        &self.required_nonzero
    }

    pub fn members(&self) -> &[Word] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Member by canonical index (lexicographic by support, then values).
    pub fn member(&self, idx: usize) -> &Word {
        &self.members[idx]
    }
}

/// A linear code presented by a generator matrix, with the full codeword
/// list cached.
#[derive(Debug, Clone)]
pub struct LinearCode {
    field: FieldSpec,
    n: usize,
    basis: Vec<Word>,
    pivots: Vec<usize>,
    codewords: Vec<Word>,
    dropped_rows: usize,
}

impl LinearCode {
    /// Builds a code from generator rows. Dependent rows are dropped (the
    /// count is recorded); an empty row set yields the zero code.
    pub fn from_generators(field: FieldSpec, n: usize, rows: &[Word]) -> Result<Self, CodeError> {
        Self::from_generators_bounded(field, n, rows, DEFAULT_ENUM_LIMIT)
    }

    pub fn from_generators_bounded(
        field: FieldSpec,
        n: usize,
        rows: &[Word],
        enum_limit: usize,
    ) -> Result<Self, CodeError> {
        if n == 0 {
            return Err(CodeError::EmptyBlock);
        }
        for row in rows {
            if row.field() != field {
                return Err(FieldError::FieldMismatch {
                    value: row.field().order(),
                    q: field.order(),
                }
                .into());
            }
            if row.len() != n {
                return Err(CodeError::LengthMismatch { expected: n, got: row.len() });
            }
        }
        let q = field.order();
        let (basis_raw, pivots) = row_reduce(rows.iter().map(|r| r.residues()).collect(), n, q);
        let dropped_rows = rows.len() - basis_raw.len();
        let d = basis_raw.len();

        let words = BigUint::from(q).pow(d as u32);
        if words > BigUint::from(enum_limit) {
            return Err(CodeError::EnumerationTooLarge { words, limit: enum_limit });
        }

        // Base-q counting over basis coefficients: the first basis row's
        // coefficient is the most significant digit.
        let mut codewords: Vec<Vec<u64>> = vec![vec![0u64; n]];
        for row in &basis_raw {
            let mut next = Vec::with_capacity(codewords.len() * q as usize);
            for w in &codewords {
                for c in 0..q {
                    let mut nw = w.clone();
                    if c != 0 {
                        for j in 0..n {
                            nw[j] = add_raw(nw[j], mul_raw(c, row[j], q), q);
                        }
                    }
                    next.push(nw);
                }
            }
            codewords = next;
        }

        let to_word = |raw: Vec<u64>| Word {
            field,
            symbols: raw.into_iter().map(FieldElement::from_raw).collect(),
        };
        Ok(LinearCode {
            field,
            n,
            basis: basis_raw.into_iter().map(to_word).collect(),
            pivots,
            codewords: codewords.into_iter().map(to_word).collect(),
            dropped_rows,
        })
    }

    pub fn zero_code(field: FieldSpec, n: usize) -> Result<Self, CodeError> {
        Self::from_generators(field, n, &[])
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn block_length(&self) -> usize {
        self.n
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// Row-reduced basis (canonical presentation of the code).
    pub fn basis(&self) -> &[Word] {
        &self.basis
    }

    /// How many input generator rows were dependent and dropped.
    pub fn dropped_rows(&self) -> usize {
        self.dropped_rows
    }

    pub fn size(&self) -> usize {
        self.codewords.len()
    }

    pub fn codewords(&self) -> &[Word] {
        &self.codewords
    }

    /// Membership by reduction against the row-reduced basis.
    pub fn contains(&self, v: &Word) -> bool {
        if v.len() != self.n || v.field() != self.field {
            return false;
        }
        let q = self.field.order();
        let mut rem = v.residues();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            let c = rem[p];
            if c != 0 {
                for (r, b) in rem.iter_mut().zip(row.symbols()) {
                    *r = sub_raw(*r, mul_raw(c, b.value(), q), q);
                }
            }
        }
        rem.iter().all(|&x| x == 0)
    }

    pub fn weight_distribution(&self) -> WeightDistribution {
        WeightDistribution::from_words(self.n, self.codewords.iter())
    }

    /// Weight counts of the coset C + v.
    pub fn coset_weight_distribution(&self, v: &Word) -> Result<WeightDistribution, CodeError> {
        if v.len() != self.n {
            return Err(CodeError::LengthMismatch { expected: self.n, got: v.len() });
        }
        let mut counts = vec![BigUint::zero(); self.n + 1];
        for c in &self.codewords {
            counts[c.add(v)?.weight()] += 1u32;
        }
        Ok(WeightDistribution::new(counts))
    }

    /// Minimum nonzero codeword weight; None for the zero code.
    pub fn min_nonzero_weight(&self) -> Option<usize> {
        self.codewords
            .iter()
            .map(Word::weight)
            .filter(|&w| w > 0)
            .min()
    }

    pub fn profile(&self) -> CodeProfile {
        let q = self.field.order();
        if self.dimension() == 0 {
            return CodeProfile::AllZero { q, n: self.n };
        }
        let min_w = self.min_nonzero_weight().expect("nonzero code");
        let center = Rat::one() - Rat::new(BigInt::one(), BigInt::from(q));
        let mut bias = Rat::zero();
        for w in self.codewords.iter().map(Word::weight).filter(|&w| w > 0) {
            let dev = (Rat::new(BigInt::from(w), BigInt::from(self.n)) - &center).abs();
            if dev > bias {
                bias = dev;
            }
        }
        let sparsity_exponent = if self.n >= 2 {
            Some((self.size() as f64).ln() / (self.n as f64).ln())
        } else {
            None
        };
        CodeProfile::Proper(ProfileData {
            q,
            n: self.n,
            size: BigUint::from(self.size()),
            dimension: self.dimension(),
            min_distance_fraction: Rat::new(BigInt::from(min_w), BigInt::from(self.n)),
            bias,
            sparsity_exponent,
        })
    }

    /// Exact distance from v to the code: (Hamming distance, nearest
    /// codeword). Ties break to the first codeword in enumeration order.
    pub fn distance_to(&self, v: &Word) -> Result<(usize, Word), CodeError> {
        if v.len() != self.n {
            return Err(CodeError::LengthMismatch { expected: self.n, got: v.len() });
        }
        let mut best = usize::MAX;
        let mut nearest = &self.codewords[0];
        for c in &self.codewords {
            let d = c.hamming_distance(v);
            if d < best {
                best = d;
                nearest = c;
            }
        }
        Ok((best, nearest.clone()))
    }

    /// Fractional distance delta(v, C).
    pub fn fractional_distance_to(&self, v: &Word) -> Result<Rat, CodeError> {
        let (d, _) = self.distance_to(v)?;
        Ok(Rat::new(BigInt::from(d), BigInt::from(self.n)))
    }

    /// Deletes the given coordinates from every codeword. Dimension may fall
    /// if a codeword was supported only on dropped coordinates; that is
    /// allowed and visible in the result's profile.
    pub fn puncture(&self, drop: &[usize]) -> Result<LinearCode, CodeError> {
        if drop.is_empty() || drop.len() > 2 {
            return Err(CodeError::TooManyRequiredIndices { got: drop.len() });
        }
        let mut drop_sorted = drop.to_vec();
        drop_sorted.sort_unstable();
        drop_sorted.dedup();
        if drop_sorted.len() != drop.len() {
            return Err(CodeError::IndexError { index: drop[0], n: self.n });
        }
        for &i in &drop_sorted {
            if i >= self.n {
                return Err(CodeError::IndexError { index: i, n: self.n });
            }
        }
        if self.n - drop_sorted.len() == 0 {
            return Err(CodeError::EmptyBlock);
        }
        let keep: Vec<usize> = (0..self.n).filter(|i| !drop_sorted.contains(i)).collect();
        let rows: Vec<Word> = self
            .basis
            .iter()
            .map(|row| Word {
                field: self.field,
                symbols: keep.iter().map(|&i| row.get(i)).collect(),
            })
            .collect();
        LinearCode::from_generators(self.field, keep.len(), &rows)
    }

    /// Linear span of C and v: returns C unchanged when v is a member,
    /// otherwise a code of size q * |C|.
    pub fn span_with(&self, v: &Word) -> Result<LinearCode, CodeError> {
        if v.len() != self.n {
            return Err(CodeError::LengthMismatch { expected: self.n, got: v.len() });
        }
        if self.contains(v) {
            return Ok(self.clone());
        }
        let mut rows = self.basis.clone();
        rows.push(v.clone());
        LinearCode::from_generators(self.field, self.n, &rows)
    }

    /// Enumerates [C^perp]_k restricted to words nonzero at every index in
    /// `required_nonzero` (at most 2). Members come in a deterministic
    /// canonical order: lexicographic by support, then by values.
    pub fn dual_slice(&self, k: usize, required_nonzero: &[usize]) -> Result<DualSlice, CodeError> {
        let required = self.validate_slice_args(k, required_nonzero)?;
        let mut members = Vec::new();
        self.for_each_dual_member(k, &required, |support, vals| {
            let mut symbols = vec![FieldElement::ZERO; self.n];
            for (&i, &v) in support.iter().zip(vals) {
                symbols[i] = FieldElement::from_raw(v);
            }
            members.push(Word { field: self.field, symbols });
        })?;
        Ok(DualSlice { k, required_nonzero: required, members })
    }

    /// Counting-only variant of `dual_slice`; avoids materializing members.
    pub fn dual_slice_count(&self, k: usize, required_nonzero: &[usize]) -> Result<u64, CodeError> {
        let required = self.validate_slice_args(k, required_nonzero)?;
        let mut count = 0u64;
        self.for_each_dual_member(k, &required, |_, _| count += 1)?;
        Ok(count)
    }

    fn validate_slice_args(
        &self,
        k: usize,
        required_nonzero: &[usize],
    ) -> Result<Vec<usize>, CodeError> {
        if k > self.n {
            return Err(CodeError::WeightOutOfRange { k, n: self.n });
        }
        if required_nonzero.len() > 2 {
            return Err(CodeError::TooManyRequiredIndices { got: required_nonzero.len() });
        }
        let mut required = required_nonzero.to_vec();
        required.sort_unstable();
        required.dedup();
        if required.len() != required_nonzero.len() {
            return Err(CodeError::IndexError { index: required_nonzero[0], n: self.n });
        }
        for &i in &required {
            if i >= self.n {
                return Err(CodeError::IndexError { index: i, n: self.n });
            }
        }
        Ok(required)
    }

    /// Visits every weight-k dual word with the required support, in
    /// canonical order, as (support, nonzero values on the support).
    pub(crate) fn for_each_dual_member<F: FnMut(&[usize], &[u64])>(
        &self,
        k: usize,
        required: &[usize],
        mut f: F,
    ) -> Result<(), CodeError> {
        let q = self.field.order();
        if required.len() > k {
            return Ok(()); // required indices cannot fit in the support
        }
        if k == 0 {
            // The zero word is dual to everything but has empty support; it
            // belongs to the slice only when nothing is required nonzero.
            if required.is_empty() {
                f(&[], &[]);
            }
            return Ok(());
        }
        let gens: Vec<Vec<u64>> = self.basis.iter().map(|b| b.residues()).collect();

        let supports: Box<dyn Iterator<Item = Vec<usize>>> = if required.is_empty() {
            Box::new((0..self.n).combinations(k))
        } else {
            let others: Vec<usize> =
                (0..self.n).filter(|i| !required.contains(i)).collect();
            let mut merged: Vec<Vec<usize>> = others
                .into_iter()
                .combinations(k - required.len())
                .map(|mut extra| {
                    extra.extend_from_slice(required);
                    extra.sort_unstable();
                    extra
                })
                .collect();
            merged.sort();
            Box::new(merged.into_iter())
        };

        let mut cols: Vec<Vec<u64>> = Vec::new();
        let mut vals = vec![1u64; k];
        for support in supports {
            // Generator columns restricted to the support; constraint-free
            // generators drop out.
            cols.clear();
            for g in &gens {
                let col: Vec<u64> = support.iter().map(|&i| g[i]).collect();
                if col.iter().any(|&x| x != 0) {
                    cols.push(col);
                }
            }
            vals.iter_mut().for_each(|v| *v = 1);
            loop {
                let ok = cols.iter().all(|col| {
                    let mut acc = 0u64;
                    for (c, v) in col.iter().zip(&vals) {
                        acc += c * v;
                    }
                    acc.is_multiple_of(q)
                });
                if ok {
                    f(&support, &vals);
                }
                // odometer over nonzero values, last digit fastest
                let mut j = k;
                loop {
                    if j == 0 {
                        break;
                    }
                    j -= 1;
                    vals[j] += 1;
                    if vals[j] < q {
                        break;
                    }
                    vals[j] = 1;
                }
                if j == 0 && vals[0] == 1 {
                    break;
                }
            }
        }
        Ok(())
    }
}

/// Gauss-Jordan reduction over F_q; returns (RREF basis rows, pivot columns).
fn row_reduce(mut rows: Vec<Vec<u64>>, n: usize, q: u64) -> (Vec<Vec<u64>>, Vec<usize>) {
    let mut basis: Vec<Vec<u64>> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    let mut rank = 0usize;
    for col in 0..n {
        let Some(sel) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, sel);
        let inv = mod_inv(rows[rank][col], q);
        for x in rows[rank].iter_mut() {
            *x = mul_raw(*x, inv, q);
        }
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[col] != 0 {
                let c = row[col];
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    *x = sub_raw(*x, mul_raw(c, *p, q), q);
                }
            }
        }
        pivots.push(col);
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rows.truncate(rank);
    basis.extend(rows);
    (basis, pivots)
}

fn mod_inv(a: u64, q: u64) -> u64 {
    // q prime, a != 0
    let mut acc = 1u64;
    let mut base = a % q;
    let mut e = q - 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_raw(acc, base, q);
        }
        base = mul_raw(base, base, q);
        e >>= 1;
    }
    acc
}

/// Candidate count of a dual-slice enumeration, for guard checks:
/// (number of admissible supports) * (q-1)^k.
pub fn dual_slice_cost(n: usize, k: usize, q: u64, required: usize) -> BigUint {
    if required > k || k > n {
        return BigUint::zero();
    }
    crate::exact::binomial(n - required, k - required) * BigUint::from(q - 1).pow(k as u32)
}

// ---------------------------------------------------------------------------
// Code file format (the CLI's on-disk representation)
// ---------------------------------------------------------------------------

/// JSON code file: {"q": int, "n": int, "generators": [[int,...],...]}.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CodeFile {
    pub q: u64,
    pub n: usize,
    pub generators: Vec<Vec<u64>>,
}

impl CodeFile {
    pub fn from_json(s: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("code file serialization")
    }

    pub fn to_code(&self) -> Result<LinearCode, CodeError> {
        self.to_code_bounded(DEFAULT_ENUM_LIMIT)
    }

    pub fn to_code_bounded(&self, enum_limit: usize) -> Result<LinearCode, CodeError> {
        let field = FieldSpec::new(self.q)?;
        let rows = self
            .generators
            .iter()
            .map(|r| Word::from_residues(field, r))
            .collect::<Result<Vec<_>, _>>()?;
        LinearCode::from_generators_bounded(field, self.n, &rows, enum_limit)
    }

    pub fn from_rows(field: FieldSpec, n: usize, rows: &[Word]) -> Self {
        CodeFile {
            q: field.order(),
            n,
            generators: rows.iter().map(Word::residues).collect(),
        }
    }
}

// ---------------------------------------------------------------------------
// Random generation (seeded, deterministic)
// ---------------------------------------------------------------------------

/// Samples d independent rows over F_q^n, resampling any row that is
/// dependent on the ones before it.
pub fn random_generator_rows(
    field: FieldSpec,
    n: usize,
    d: usize,
    rng: &mut RandomSource,
) -> Result<Vec<Word>, CodeError> {
    if n == 0 {
        return Err(CodeError::EmptyBlock);
    }
    assert!(d <= n, "dimension exceeds block length");
    let q = field.order();
    let mut rows: Vec<Vec<u64>> = Vec::with_capacity(d);
    while rows.len() < d {
        let cand: Vec<u64> = (0..n).map(|_| rng.index(q as usize) as u64).collect();
        let mut trial = rows.clone();
        trial.push(cand.clone());
        let (basis, _) = row_reduce(trial, n, q);
        if basis.len() == rows.len() + 1 {
            rows.push(cand);
        }
    }
    rows.iter()
        .map(|r| Word::from_residues(field, r))
        .collect()
}

/// Random full-rank code; `max_bias` (if set) resamples whole codes until
/// the measured bias is within the target, up to `retries` attempts.
pub fn random_code(
    field: FieldSpec,
    n: usize,
    d: usize,
    max_bias: Option<&Rat>,
    retries: usize,
    rng: &mut RandomSource,
) -> Result<(LinearCode, Vec<Word>), CodeError> {
    let mut best: Option<Rat> = None;
    for _ in 0..retries.max(1) {
        let rows = random_generator_rows(field, n, d, rng)?;
        let code = LinearCode::from_generators(field, n, &rows)?;
        let Some(target) = max_bias else {
            return Ok((code, rows));
        };
        match code.profile() {
            CodeProfile::Proper(p) => {
                if &p.bias <= target {
                    return Ok((code, rows));
                }
                if best.as_ref().is_none_or(|b| p.bias < *b) {
                    best = Some(p.bias);
                }
            }
            CodeProfile::AllZero { .. } => {
                // d = 0: trivially unbiased by convention of the zero code
                return Ok((code, rows));
            }
        }
    }
    Err(CodeError::BiasUnreachable {
        retries: retries.max(1),
        best: best.unwrap_or_else(|| rat_u(0)),
    })
}

/// Places `errors` uniformly chosen distinct error positions with uniform
/// nonzero error values on a uniformly chosen codeword. Returns (word, the
/// codeword it was derived from).
pub fn random_word_at_distance(
    code: &LinearCode,
    errors: usize,
    rng: &mut RandomSource,
) -> Result<(Word, Word), CodeError> {
    let n = code.block_length();
    if errors > n {
        return Err(CodeError::WeightOutOfRange { k: errors, n });
    }
    let q = code.field().order();
    let truth = code.codewords()[rng.index(code.size())].clone();
    let mut positions: Vec<usize> = (0..n).collect();
    // partial Fisher-Yates for the first `errors` positions
    for i in 0..errors {
        let j = i + rng.index(n - i);
        positions.swap(i, j);
    }
    let mut symbols = truth.symbols().to_vec();
    for &p in &positions[..errors] {
        let e = 1 + rng.index(q as usize - 1) as u64;
        symbols[p] = FieldElement::from_raw(add_raw(symbols[p].value(), e, q));
    }
    Ok((Word { field: code.field(), symbols }, truth))
}

/// log_n |C| as an exact comparison helper: |C| <= n^t.
pub fn is_sparse(size: usize, n: usize, t: &Rat) -> bool {
    use std::cmp::Ordering;
    let (num, den) = crate::exact::exponent_parts(t);
    crate::exact::cmp_rat_pow(&rat_u(size as u64), n as u64, num, den) != Ordering::Greater
}
