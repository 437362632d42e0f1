//! The canonical self-corrector: to recover coordinate i, draw a uniform
//! weight-k dual codeword y with y_i != 0 and output
//! (-y_i)^-1 sum_{j != i, y_j != 0} y_j v_j.
//!
//! The y_j coefficients inside the sum are forced by the orthogonality
//! identity sum_j y_j c_j = 0: with them the uncorrupted case is exact for
//! every y (pinned by a unit test below); without them it is not. The
//! corrector reads exactly the k-1 non-i support positions and never
//! coordinate i.
//!
//! Per-index slices [C^perp]_{k,i} are built lazily and cached under a
//! mutex; a racing first access may compute the slice twice, which is
//! harmless because enumeration is deterministic.

use crate::code::{CodeError, DualSlice, LinearCode, Word};
use crate::exact::{rat_u, Rat};
use crate::field::{add_raw, mul_raw, sub_raw, FieldElement};
use crate::report::{RowKind, VerificationReport, VerificationRow};
use crate::rng::RandomSource;
use crate::tester::WordOracle;
use num_bigint::BigInt;
use num_traits::One;
use std::collections::HashMap;
use std::sync::{Arc, Mutex};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CorrectorError {
    /// [C^perp]_{k,i} is empty: the coordinate cannot be corrected.
    #[error("no weight-{k} dual vectors nonzero at index {index}")]
    NoCorrectionVectors { k: usize, index: usize },
    #[error("supplied truth word is not a codeword")]
    TruthNotInCode,
    #[error("index {index} out of range for block length {n}")]
    IndexError { index: usize, n: usize },
    #[error(transparent)]
    Code(#[from] CodeError),
}

/// Self-corrector for a fixed code and test weight.
#[derive(Debug)]
pub struct Corrector {
    code: LinearCode,
    k: usize,
    slices: Mutex<HashMap<usize, Arc<DualSlice>>>,
}

impl Corrector {
    pub fn new(code: &LinearCode, k: usize) -> Result<Self, CorrectorError> {
        if k == 0 || k > code.block_length() {
            return Err(CodeError::WeightOutOfRange { k, n: code.block_length() }.into());
        }
        Ok(Corrector { code: code.clone(), k, slices: Mutex::new(HashMap::new()) })
    }

    pub fn code(&self) -> &LinearCode {
        &self.code
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Cached slice [C^perp]_{k,i}, built on first use.
    pub fn slice(&self, i: usize) -> Result<Arc<DualSlice>, CorrectorError> {
        if i >= self.code.block_length() {
            return Err(CorrectorError::IndexError { index: i, n: self.code.block_length() });
        }
        if let Some(s) = self.slices.lock().unwrap().get(&i) {
            return Ok(Arc::clone(s));
        }
        // computed outside the lock; a concurrent duplicate is identical
        let slice = Arc::new(self.code.dual_slice(self.k, &[i])?);
        let mut cache = self.slices.lock().unwrap();
        Ok(Arc::clone(cache.entry(i).or_insert(slice)))
    }

    /// One corrector run: returns the recovered symbol and the query count,
    /// which is always k - 1 (coordinate i is never read).
    pub fn run(
        &self,
        oracle: &mut WordOracle<'_>,
        i: usize,
        rng: &mut RandomSource,
    ) -> Result<(FieldElement, usize), CorrectorError> {
        let slice = self.slice(i)?;
        if slice.is_empty() {
            return Err(CorrectorError::NoCorrectionVectors { k: self.k, index: i });
        }
        let y = slice.member(rng.index(slice.len()));
        let field = self.code.field();
        let q = field.order();
        let mut acc = 0u64;
        let mut queries = 0usize;
        for j in 0..y.len() {
            if j == i {
                continue;
            }
            let yj = y.get(j);
            if yj.is_zero() {
                continue;
            }
            let vj = oracle.read(j);
            queries += 1;
            acc = add_raw(acc, mul_raw(yj.value(), vj.value(), q), q);
        }
        let neg_yi = FieldElement::from_raw(sub_raw(0, y.get(i).value(), q));
        let inv = field.inv(neg_yi).expect("y_i != 0 on the slice");
        Ok((FieldElement::from_raw(mul_raw(inv.value(), acc, q)), queries))
    }

    pub fn run_word(
        &self,
        v: &Word,
        i: usize,
        rng: &mut RandomSource,
    ) -> Result<(FieldElement, usize), CorrectorError> {
        let mut oracle = WordOracle::new(v);
        self.run(&mut oracle, i, rng)
    }

    /// Exact error probability of the corrector at index i against a known
    /// truth codeword: the fraction of slice members y with
    /// sum_{j != i} y_j (v_j - truth_j) != 0.
    pub fn correction_error_exact(
        &self,
        v: &Word,
        truth: &Word,
        i: usize,
    ) -> Result<Rat, CorrectorError> {
        if !self.code.contains(truth) {
            return Err(CorrectorError::TruthNotInCode);
        }
        let slice = self.slice(i)?;
        if slice.is_empty() {
            return Err(CorrectorError::NoCorrectionVectors { k: self.k, index: i });
        }
        let e = v.sub(truth)?;
        let q = self.code.field().order();
        let mut errs = 0u64;
        for y in slice.members() {
            let mut acc = 0u64;
            for j in 0..y.len() {
                if j == i {
                    continue;
                }
                acc = add_raw(acc, mul_raw(y.get(j).value(), e.get(j).value(), q), q);
            }
            if acc != 0 {
                errs += 1;
            }
        }
        Ok(Rat::new(BigInt::from(errs), BigInt::from(slice.len() as u64)))
    }
}

/// Streaming variant of the exact error probability: enumerates the slice
/// without materializing or caching it. Used by the Lemma 14 sweep, which
/// visits every index of large codes.
pub fn correction_error_exact_streaming(
    code: &LinearCode,
    k: usize,
    v: &Word,
    truth: &Word,
    i: usize,
) -> Result<Rat, CorrectorError> {
    if !code.contains(truth) {
        return Err(CorrectorError::TruthNotInCode);
    }
    if i >= code.block_length() {
        return Err(CorrectorError::IndexError { index: i, n: code.block_length() });
    }
    let e = v.sub(truth)?;
    let e_res = e.residues();
    let q = code.field().order();
    let mut total = 0u64;
    let mut errs = 0u64;
    code.for_each_dual_member(k, &[i], |support, vals| {
        total += 1;
        let mut acc = 0u64;
        for (&j, &yj) in support.iter().zip(vals) {
            if j != i {
                acc += yj * e_res[j];
            }
        }
        if !acc.is_multiple_of(q) {
            errs += 1;
        }
    })?;
    if total == 0 {
        return Err(CorrectorError::NoCorrectionVectors { k, index: i });
    }
    Ok(Rat::new(BigInt::from(errs), BigInt::from(total)))
}

fn slice_count(code: &LinearCode, k: usize, required: &[usize]) -> Result<u64, CorrectorError> {
    Ok(code.dual_slice_count(k, required)?)
}

/// Dual count at weight k of a punctured code; weight above the punctured
/// length means an empty slice.
fn punctured_dual_count(
    code: &LinearCode,
    k: usize,
    drop: &[usize],
) -> Result<u64, CorrectorError> {
    let p = code.puncture(drop)?;
    if k > p.block_length() {
        return Ok(0);
    }
    Ok(p.dual_slice_count(k, &[])?)
}

/// Prop 11: |[C^perp]_{k,i}| = |[C^perp]_k| - |[(C^-i)^perp]_k|, both sides
/// enumerated independently. Gated on delta(C) n >= 2 (the proof's
/// assumption that puncturing is injective); the zero code passes the gate
/// vacuously.
pub fn prop11_check(
    code: &LinearCode,
    k: usize,
    i: usize,
) -> Result<VerificationReport, CorrectorError> {
    if i >= code.block_length() {
        return Err(CorrectorError::IndexError { index: i, n: code.block_length() });
    }
    let gate_held = code.min_nonzero_weight().is_none_or(|w| w >= 2);
    let mut report = VerificationReport::new();
    report.push(VerificationRow::gate(
        "prop11.distance_gate",
        gate_held,
        rat_u(code.min_nonzero_weight().unwrap_or(0) as u64),
        rat_u(2),
        "delta(C) n >= 2 (vacuous for the zero code)",
    ));
    let lhs = slice_count(code, k, &[i])?;
    let whole = slice_count(code, k, &[])?;
    let punct = punctured_dual_count(code, k, &[i])?;
    let kind = if gate_held { RowKind::Hard } else { RowKind::Informational };
    report.push(VerificationRow::exact_eq(
        format!("prop11.count_identity[k={k},i={i}]"),
        kind,
        rat_u(lhs),
        rat_u(whole) - rat_u(punct),
        format!("|slice_i| = {lhs} vs |slice| - |punctured slice| = {whole} - {punct}"),
    ));
    Ok(report)
}

/// Prop 12 inclusion-exclusion over two indices, both sides enumerated
/// independently.
pub fn prop12_check(
    code: &LinearCode,
    k: usize,
    i: usize,
    j: usize,
) -> Result<VerificationReport, CorrectorError> {
    let n = code.block_length();
    if i >= n {
        return Err(CorrectorError::IndexError { index: i, n });
    }
    if j >= n || i == j {
        return Err(CorrectorError::IndexError { index: j, n });
    }
    let gate_held = code.min_nonzero_weight().is_none_or(|w| w >= 2);
    let mut report = VerificationReport::new();
    report.push(VerificationRow::gate(
        "prop12.distance_gate",
        gate_held,
        rat_u(code.min_nonzero_weight().unwrap_or(0) as u64),
        rat_u(2),
        "delta(C) n >= 2 (vacuous for the zero code)",
    ));
    let lhs = slice_count(code, k, &[i, j])?;
    let whole = slice_count(code, k, &[])?;
    let pi = punctured_dual_count(code, k, &[i])?;
    let pj = punctured_dual_count(code, k, &[j])?;
    let pij = punctured_dual_count(code, k, &[i, j])?;
    let kind = if gate_held { RowKind::Hard } else { RowKind::Informational };
    report.push(VerificationRow::exact_eq(
        format!("prop12.count_identity[k={k},i={i},j={j}]"),
        kind,
        rat_u(lhs),
        rat_u(whole) - rat_u(pi) - rat_u(pj) + rat_u(pij),
        format!("inclusion-exclusion: {lhs} vs {whole} - {pi} - {pj} + {pij}"),
    ));
    Ok(report)
}

/// Lemma 13: Pr[y_j != 0 | y uniform in [C^perp]_{k,i}], exactly
/// |[C^perp]_{k,{i,j}}| / |[C^perp]_{k,i}|.
pub fn lemma13_probability(
    code: &LinearCode,
    k: usize,
    i: usize,
    j: usize,
) -> Result<Rat, CorrectorError> {
    let n = code.block_length();
    if i >= n {
        return Err(CorrectorError::IndexError { index: i, n });
    }
    if j >= n || i == j {
        return Err(CorrectorError::IndexError { index: j, n });
    }
    let denom = slice_count(code, k, &[i])?;
    if denom == 0 {
        return Err(CorrectorError::NoCorrectionVectors { k, index: i });
    }
    let numer = slice_count(code, k, &[i, j])?;
    Ok(Rat::new(BigInt::from(numer), BigInt::from(denom)))
}

/// Lemma 14: exact corrector error at index i against k tau (+ slack).
/// The theorem-level gate is tau < 1/(2k); outside it the comparison row is
/// still produced, marked informational.
pub fn lemma14_bound_check(
    code: &LinearCode,
    k: usize,
    v: &Word,
    truth: &Word,
    i: usize,
    slack: &Rat,
) -> Result<VerificationReport, CorrectorError> {
    let n = code.block_length();
    let tau = Rat::new(
        BigInt::from(v.hamming_distance(truth) as u64),
        BigInt::from(n as u64),
    );
    let gate_held = tau < Rat::new(BigInt::one(), BigInt::from(2 * k as u64));
    let mut report = VerificationReport::new();
    report.push(VerificationRow::gate(
        format!("lemma14.tau_gate[i={i}]"),
        gate_held,
        tau.clone(),
        Rat::new(BigInt::one(), BigInt::from(2 * k as u64)),
        "theorem regime tau < 1/(2k)",
    ));
    let err = correction_error_exact_streaming(code, k, v, truth, i)?;
    let bound = rat_u(k as u64) * &tau + slack;
    report.push(VerificationRow::le(
        format!("lemma14.error_bound[i={i}]"),
        RowKind::Informational,
        err,
        bound,
        format!(
            "Pr[SC(i) != c_i] vs k tau + slack (tau = {tau}, slack models the theta(1/n) term); {}",
            if gate_held { "within theorem regime" } else { "outside theorem regime" }
        ),
    ));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::field::FieldSpec;
    use num_traits::{ToPrimitive, Zero};

    fn f3() -> FieldSpec {
        FieldSpec::new(3).unwrap()
    }

    fn word(v: &[u64]) -> Word {
        Word::from_residues(f3(), v).unwrap()
    }

    fn repetition3() -> LinearCode {
        LinearCode::from_generators(f3(), 3, &[word(&[1, 1, 1])]).unwrap()
    }

    #[test]
    fn empty_slice_reports_no_correction_vectors() {
        // full space: dual is {0}, so no weight-k vectors touch any index
        let full = LinearCode::from_generators(
            f3(),
            2,
            &[word(&[1, 0]), word(&[0, 1])],
        )
        .unwrap();
        let cor = Corrector::new(&full, 1).unwrap();
        let mut rng = RandomSource::new(0);
        assert!(matches!(
            cor.run_word(&word(&[1, 2]), 0, &mut rng),
            Err(CorrectorError::NoCorrectionVectors { k: 1, index: 0 })
        ));
        assert!(matches!(
            correction_error_exact_streaming(&full, 1, &word(&[1, 2]), &word(&[1, 2]), 0),
            Err(CorrectorError::NoCorrectionVectors { .. })
        ));
    }

    #[test]
    fn uncorrupted_oracle_is_exact_for_every_member_and_index() {
        let c = repetition3();
        let cor = Corrector::new(&c, 2).unwrap();
        for truth in c.codewords() {
            for i in 0..3 {
                for seed in 0..12 {
                    let mut rng = RandomSource::new(seed);
                    let (got, queries) = cor.run_word(truth, i, &mut rng).unwrap();
                    assert_eq!(got, truth.get(i));
                    assert_eq!(queries, 1);
                }
            }
        }
    }

    /// The y_j factor inside the sum is load-bearing: dropping it (i.e.
    /// summing raw v_j over the support) breaks the uncorrupted case.
    #[test]
    fn dropping_the_yj_factor_would_be_wrong() {
        let c = repetition3();
        let truth = word(&[1, 1, 1]);
        let slice = c.dual_slice(2, &[0]).unwrap();
        let q = 3u64;
        let mut plain_sum_always_right = true;
        for y in slice.members() {
            let acc: u64 = (1..3).filter(|&j| !y.get(j).is_zero()).map(|j| truth.get(j).value()).sum();
            let neg_yi = sub_raw(0, y.get(0).value(), q);
            let inv = f3().inv(FieldElement::from_raw(neg_yi)).unwrap();
            let decoded = mul_raw(inv.value(), acc % q, q);
            if decoded != truth.get(0).value() {
                plain_sum_always_right = false;
            }
        }
        assert!(!plain_sum_always_right);
    }

    #[test]
    fn corrector_run_fixtures() {
        // v = (1,1,2) with truth (1,1,1): correcting i=2 always yields 1
        let c = repetition3();
        let cor = Corrector::new(&c, 2).unwrap();
        let v = word(&[1, 1, 2]);
        for seed in 0..30 {
            let mut rng = RandomSource::new(seed);
            let (got, _) = cor.run_word(&v, 2, &mut rng).unwrap();
            assert_eq!(got.value(), 1);
        }
        // at i=0 the drawn y decides: members touching index 2 err
        let mut outcomes = std::collections::HashSet::new();
        for seed in 0..60 {
            let mut rng = RandomSource::new(seed);
            let (got, _) = cor.run_word(&v, 0, &mut rng).unwrap();
            outcomes.insert(got.value());
        }
        assert!(outcomes.contains(&1) && outcomes.contains(&2));
    }

    #[test]
    fn correction_error_exact_fixtures() {
        let c = repetition3();
        let cor = Corrector::new(&c, 2).unwrap();
        let truth = word(&[1, 1, 1]);
        let v = word(&[1, 1, 2]);
        assert_eq!(cor.correction_error_exact(&v, &truth, 2).unwrap(), Rat::zero());
        assert_eq!(cor.correction_error_exact(&v, &truth, 0).unwrap(), rat(1, 2));
        assert_eq!(cor.correction_error_exact(&truth, &truth, 1).unwrap(), Rat::zero());
        assert!(matches!(
            cor.correction_error_exact(&v, &word(&[1, 0, 0]), 0),
            Err(CorrectorError::TruthNotInCode)
        ));
        // streaming variant agrees
        for i in 0..3 {
            assert_eq!(
                correction_error_exact_streaming(&c, 2, &v, &truth, i).unwrap(),
                cor.correction_error_exact(&v, &truth, i).unwrap()
            );
        }
    }

    #[test]
    fn query_budget_is_k_minus_1_and_never_i() {
        let c = repetition3();
        let cor = Corrector::new(&c, 2).unwrap();
        let v = word(&[2, 0, 1]);
        for i in 0..3 {
            for seed in 0..20 {
                let mut rng = RandomSource::new(seed);
                let mut oracle = WordOracle::new(&v);
                let (_, queries) = cor.run(&mut oracle, i, &mut rng).unwrap();
                assert_eq!(queries, 1); // k - 1
                assert_eq!(oracle.reads().len(), 1);
                assert!(!oracle.reads().contains(&i));
            }
        }
    }

    #[test]
    fn monte_carlo_error_rate_matches_exact() {
        let c = repetition3();
        let cor = Corrector::new(&c, 2).unwrap();
        let truth = word(&[1, 1, 1]);
        let v = word(&[1, 1, 2]);
        let exact = cor.correction_error_exact(&v, &truth, 0).unwrap().to_f64().unwrap();
        let trials = 20_000u64;
        let base = RandomSource::new(4242);
        let mut errs = 0u64;
        for t in 0..trials {
            let mut rng = base.derive(t);
            let (got, _) = cor.run_word(&v, 0, &mut rng).unwrap();
            if got != truth.get(0) {
                errs += 1;
            }
        }
        let p = errs as f64 / trials as f64;
        let se = (exact * (1.0 - exact) / trials as f64).sqrt();
        assert!((p - exact).abs() <= 3.0 * se, "p={p} exact={exact} se={se}");
    }

    #[test]
    fn prop11_fixture_and_zero_code() {
        let c = repetition3();
        let rep = prop11_check(&c, 2, 0).unwrap();
        assert!(rep.all_hard_pass());
        let row = rep.find("prop11.count_identity[k=2,i=0]").unwrap();
        assert_eq!(row.lhs, rat(4, 1));
        assert_eq!(row.rhs, rat(4, 1)); // 6 - 2

        // zero code: reduces to the Pascal identity
        let z = LinearCode::zero_code(f3(), 5).unwrap();
        for k in 0..=4 {
            assert!(prop11_check(&z, k, 2).unwrap().all_hard_pass(), "k={k}");
        }
        // k = 0: both sides zero
        let rep = prop11_check(&c, 0, 0).unwrap();
        let row = rep.find("prop11.count_identity[k=0,i=0]").unwrap();
        assert_eq!(row.lhs, Rat::zero());
        assert_eq!(row.rhs, Rat::zero());
    }

    #[test]
    fn prop12_fixture_and_boundaries() {
        let c = repetition3();
        let rep = prop12_check(&c, 2, 0, 1).unwrap();
        assert!(rep.all_hard_pass());
        let row = rep.find("prop12.count_identity[k=2,i=0,j=1]").unwrap();
        assert_eq!(row.lhs, rat(2, 1));

        let z = LinearCode::zero_code(f3(), 4).unwrap();
        for k in 0..=4 {
            assert!(prop12_check(&z, k, 1, 3).unwrap().all_hard_pass(), "k={k}");
        }
        // k = n via full-support enumeration
        assert!(prop12_check(&c, 3, 0, 2).unwrap().all_hard_pass());

        assert!(matches!(
            prop12_check(&c, 2, 1, 1),
            Err(CorrectorError::IndexError { .. })
        ));
    }

    #[test]
    fn lemma13_fixture() {
        let c = repetition3();
        // 2/4 = 1/2 = (k-1)/(n-1)
        let p = lemma13_probability(&c, 2, 0, 1).unwrap();
        assert_eq!(p, rat(1, 2));

        // zero code: reduces to (k-1)/(n-1) by binomial algebra
        let z = LinearCode::zero_code(f3(), 6).unwrap();
        for k in 1..=4usize {
            let p = lemma13_probability(&z, k, 0, 3).unwrap();
            assert_eq!(p, Rat::new(BigInt::from(k as u64 - 1), BigInt::from(5)), "k={k}");
        }
    }

    #[test]
    fn lemma14_fixture_rows() {
        let c = repetition3();
        let truth = word(&[1, 1, 1]);
        // v = truth: 0 <= k tau = 0
        let rep = lemma14_bound_check(&c, 2, &truth, &truth, 1, &Rat::zero()).unwrap();
        assert!(rep.rows.iter().all(|r| r.pass));
        // one corrupted coordinate: tau = 1/3 exceeds 1/(2k) = 1/4, so the
        // gate fails but the informational row still holds: 1/2 <= 2/3
        let v = word(&[1, 1, 2]);
        let rep = lemma14_bound_check(&c, 2, &v, &truth, 0, &Rat::zero()).unwrap();
        assert!(!rep.find("lemma14.tau_gate[i=0]").unwrap().pass);
        let row = rep.find("lemma14.error_bound[i=0]").unwrap();
        assert_eq!(row.lhs, rat(1, 2));
        assert_eq!(row.rhs, rat(2, 3));
        assert!(row.pass);
    }

    /// The exact error event implies the support-intersection event of the
    /// union-bound step, so the exact probability is bounded by the
    /// support-meeting fraction.
    #[test]
    fn exact_error_below_support_intersection_fraction() {
        let c = repetition3();
        let cor = Corrector::new(&c, 2).unwrap();
        let truth = word(&[1, 1, 1]);
        let v = word(&[1, 2, 2]);
        for i in 0..3usize {
            let exact = cor.correction_error_exact(&v, &truth, i).unwrap();
            let slice = cor.slice(i).unwrap();
            let meets = slice
                .members()
                .iter()
                .filter(|y| {
                    (0..3).any(|j| j != i && !y.get(j).is_zero() && v.get(j) != truth.get(j))
                })
                .count();
            let frac = Rat::new(BigInt::from(meets as u64), BigInt::from(slice.len() as u64));
            assert!(exact <= frac, "i={i}");
        }
    }

    #[test]
    fn lazy_slice_cache_is_consistent_under_threads() {
        let c = repetition3();
        let cor = std::sync::Arc::new(Corrector::new(&c, 2).unwrap());
        let handles: Vec<_> = (0..4)
            .map(|_| {
                let cor = std::sync::Arc::clone(&cor);
                std::thread::spawn(move || {
                    (0..3).map(|i| cor.slice(i).unwrap().len()).collect::<Vec<_>>()
                })
            })
            .collect();
        let results: Vec<Vec<usize>> = handles.into_iter().map(|h| h.join().unwrap()).collect();
        for r in &results {
            assert_eq!(r, &vec![4, 4, 4]);
        }
    }
}
