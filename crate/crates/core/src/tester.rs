//! The canonical local tester: draw a uniform weight-k dual codeword y and
//! accept iff <y, v> = 0.
//!
//! Uniform sampling is enumerate-once-then-index over the cached slice;
//! rejection sampling would be hopeless when the slice is a tiny fraction of
//! the weight-k words. Oracle access goes through `WordOracle`, which logs
//! every coordinate read, so the k-query budget is a checkable fact rather
//! than a promise.

use crate::code::{CodeError, DualSlice, LinearCode, Word};
use crate::exact::Rat;
use crate::field::{add_raw, mul_raw, FieldElement, FieldSpec};
use crate::krawtchouk::{macwilliams_row, KrawtchoukError};
use crate::rng::RandomSource;
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use thiserror::Error;

/// Exhaustive soundness scans iterate all q^n words; larger spaces need a
/// caller-supplied sample.
pub const SOUNDNESS_SCAN_LIMIT: u64 = 10_000_000;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TesterError {
    /// The dual has no weight-k words: the tester is undefined.
    #[error("no weight-{k} vectors in the dual: tester undefined")]
    NoTestVectors { k: usize },
    #[error("exhaustive scan of {words} words exceeds the limit {limit}")]
    ScanTooLarge { words: BigUint, limit: u64 },
    /// Enumerated and transform-computed dual counts disagree. This cannot
    /// happen for a correctly constructed code; it indicates a bug.
    #[error("dual-count cross-check failed: {detail}")]
    CrossCheckMismatch { detail: String },
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Krawtchouk(#[from] KrawtchoukError),
}

/// Read-logging oracle over a word: realizes the "queries the oracle at
/// most k times" contract as an inspectable log.
pub struct WordOracle<'a> {
    word: &'a Word,
    reads: Vec<usize>,
}

impl<'a> WordOracle<'a> {
    pub fn new(word: &'a Word) -> Self {
        WordOracle { word, reads: Vec::new() }
    }

    pub fn read(&mut self, i: usize) -> FieldElement {
        self.reads.push(i);
        self.word.get(i)
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn field(&self) -> FieldSpec {
        self.word.field()
    }

    /// Every coordinate read so far, in order.
    pub fn reads(&self) -> &[usize] {
        &self.reads
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Accept,
    Reject,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TestOutcome {
    pub verdict: Verdict,
    pub queries_used: usize,
    /// Canonical index of the dual vector that was drawn.
    pub test_vector_index: usize,
}

/// The tester T_k for a fixed code: owns the enumerated slice [C^perp]_k.
#[derive(Debug, Clone)]
pub struct Tester {
    code: LinearCode,
    k: usize,
    slice: DualSlice,
}

impl Tester {
    pub fn new(code: &LinearCode, k: usize) -> Result<Self, TesterError> {
        if k == 0 || k > code.block_length() {
            return Err(CodeError::WeightOutOfRange { k, n: code.block_length() }.into());
        }
        let slice = code.dual_slice(k, &[])?;
        if slice.is_empty() {
            return Err(TesterError::NoTestVectors { k });
        }
        Ok(Tester { code: code.clone(), k, slice })
    }

    pub fn code(&self) -> &LinearCode {
        &self.code
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn slice(&self) -> &DualSlice {
        &self.slice
    }

    /// One tester run: reads exactly the k support positions of the drawn
    /// dual vector and accepts iff the inner product vanishes.
    pub fn run(&self, oracle: &mut WordOracle<'_>, rng: &mut RandomSource) -> TestOutcome {
        let idx = rng.index(self.slice.len());
        let y = self.slice.member(idx);
        let q = self.code.field().order();
        let mut acc = 0u64;
        let mut queries = 0usize;
        for j in 0..y.len() {
            let yj = y.get(j);
            if yj.is_zero() {
                continue;
            }
            let vj = oracle.read(j);
            queries += 1;
            acc = add_raw(acc, mul_raw(yj.value(), vj.value(), q), q);
        }
        let verdict = if acc == 0 { Verdict::Accept } else { Verdict::Reject };
        TestOutcome { verdict, queries_used: queries, test_vector_index: idx }
    }

    pub fn run_word(&self, v: &Word, rng: &mut RandomSource) -> TestOutcome {
        let mut oracle = WordOracle::new(v);
        self.run(&mut oracle, rng)
    }
}

/// Exact rejection probability: 1 - B_k((C||v)^perp) / B_k(C^perp), both
/// counts by enumeration and cross-checked against the MacWilliams
/// transform. Members of C return exactly 0.
pub fn rejection_probability_exact(
    code: &LinearCode,
    k: usize,
    v: &Word,
) -> Result<Rat, TesterError> {
    if code.contains(v) {
        return Ok(Rat::zero());
    }
    let b_code = checked_dual_count(code, k)?;
    if b_code == 0 {
        return Err(TesterError::NoTestVectors { k });
    }
    let span = code.span_with(v)?;
    let b_span = checked_dual_count(&span, k)?;
    Ok(Rat::one() - Rat::new(BigInt::from(b_span), BigInt::from(b_code)))
}

/// Dual count at weight k by support enumeration, verified against the
/// transform row.
fn checked_dual_count(code: &LinearCode, k: usize) -> Result<u64, TesterError> {
    let enumerated = code.dual_slice_count(k, &[])?;
    let transform = macwilliams_row(
        &code.weight_distribution(),
        &BigUint::from(code.size()),
        code.field().order(),
        code.block_length(),
        k,
    )?;
    if BigUint::from(enumerated) != transform {
        return Err(TesterError::CrossCheckMismatch {
            detail: format!(
                "k={k}: enumeration found {enumerated}, transform says {transform}"
            ),
        });
    }
    Ok(enumerated)
}

#[derive(Debug, Clone, PartialEq)]
pub struct McEstimate {
    pub estimate: Rat,
    pub std_error: f64,
    pub trials: u64,
    pub rejections: u64,
}

/// Monte Carlo rejection frequency over independent seeded trials. Trial i
/// uses the derived stream (seed, i), so the result is independent of
/// execution order.
pub fn rejection_probability_mc(
    code: &LinearCode,
    k: usize,
    v: &Word,
    trials: u64,
    rng: &RandomSource,
) -> Result<McEstimate, TesterError> {
    assert!(trials >= 1, "at least one trial");
    let tester = Tester::new(code, k)?;
    let mut rejections = 0u64;
    for t in 0..trials {
        let mut trial_rng = rng.derive(t);
        if tester.run_word(v, &mut trial_rng).verdict == Verdict::Reject {
            rejections += 1;
        }
    }
    let estimate = Rat::new(BigInt::from(rejections), BigInt::from(trials));
    let p = rejections as f64 / trials as f64;
    let std_error = (p * (1.0 - p) / trials as f64).sqrt();
    Ok(McEstimate { estimate, std_error, trials, rejections })
}

/// Result of a soundness scan: the minimum of Rej(v) / delta(v, C) over
/// non-codewords, with the minimizing word. None when the scan domain is
/// empty (the code is the full space).
#[derive(Debug, Clone, PartialEq)]
pub struct SoundnessScan {
    pub min_ratio: Option<Rat>,
    pub worst: Option<Word>,
    pub scanned: u64,
}

/// Exhaustive soundness profile over all q^n words (guarded).
pub fn soundness_profile(code: &LinearCode, k: usize) -> Result<SoundnessScan, TesterError> {
    let q = code.field().order();
    let n = code.block_length();
    let words = BigUint::from(q).pow(n as u32);
    if words > BigUint::from(SOUNDNESS_SCAN_LIMIT) {
        return Err(TesterError::ScanTooLarge { words, limit: SOUNDNESS_SCAN_LIMIT });
    }
    let field = code.field();
    let mut digits = vec![0u64; n];
    let mut scan = SoundnessScan { min_ratio: None, worst: None, scanned: 0 };
    loop {
        let v = Word::from_residues(field, &digits).expect("digits are residues");
        scan_word(code, k, &v, &mut scan)?;
        // odometer, last digit fastest
        let mut j = n;
        loop {
            if j == 0 {
                return Ok(scan);
            }
            j -= 1;
            digits[j] += 1;
            if digits[j] < q {
                break;
            }
            digits[j] = 0;
        }
        if digits.iter().all(|&d| d == 0) {
            return Ok(scan);
        }
    }
}

/// Soundness profile over a supplied sample of words (for spaces too large
/// to scan). Codewords in the sample are skipped.
pub fn soundness_profile_sampled(
    code: &LinearCode,
    k: usize,
    sample: &[Word],
) -> Result<SoundnessScan, TesterError> {
    let mut scan = SoundnessScan { min_ratio: None, worst: None, scanned: 0 };
    for v in sample {
        scan_word(code, k, v, &mut scan)?;
    }
    Ok(scan)
}

fn scan_word(
    code: &LinearCode,
    k: usize,
    v: &Word,
    scan: &mut SoundnessScan,
) -> Result<(), TesterError> {
    if code.contains(v) {
        return Ok(());
    }
    scan.scanned += 1;
    let rej = rejection_probability_exact(code, k, v)?;
    let delta = code.fractional_distance_to(v)?;
    let ratio = rej / delta;
    if scan.min_ratio.as_ref().is_none_or(|m| ratio < *m) {
        scan.min_ratio = Some(ratio);
        scan.worst = Some(v.clone());
    }
    Ok(())
}
