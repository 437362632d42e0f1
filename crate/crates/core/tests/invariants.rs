//! Cross-module invariants, checked on seeded random codes and by
//! property-based search.
//!
//! The dual-slice enumerator gets its own independent oracle here: a naive
//! scan that builds every weight-k word over every support and tests
//! orthogonality through the public word operations. The MacWilliams
//! transform is the second, algebraically unrelated route to the same
//! counts.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use proptest::prelude::*;
use sparsecode::bounds::{lemma9_sum_check, BoundsParams};
use sparsecode::code::{random_code, random_word_at_distance};
use sparsecode::exact::{rat, Rat};
use sparsecode::krawtchouk::{eval, eval_rational, macwilliams_transform, root_interval_exact};
use sparsecode::tester::rejection_probability_exact;
use sparsecode::{CodeProfile, FieldSpec, LinearCode, RandomSource, Word};
use std::cmp::Ordering;

/// Naive reference: every k-subset, every nonzero assignment, orthogonality
/// by Word::inner_product.
fn naive_dual_slice(code: &LinearCode, k: usize, required: &[usize]) -> Vec<Word> {
    let n = code.block_length();
    let q = code.field().order();
    let field = code.field();
    let mut out = Vec::new();
    let mut supports: Vec<Vec<usize>> = Vec::new();
    subsets(n, k, &mut Vec::new(), 0, &mut supports);
    for s in supports {
        if !required.iter().all(|i| s.contains(i)) {
            continue;
        }
        let mut vals = vec![1u64; k];
        'outer: loop {
            let mut residues = vec![0u64; n];
            for (pos, &i) in s.iter().enumerate() {
                residues[i] = vals[pos];
            }
            let y = Word::from_residues(field, &residues).unwrap();
            if code.basis().iter().all(|g| y.inner_product(g).unwrap().is_zero()) {
                out.push(y);
            }
            for pos in (0..k).rev() {
                vals[pos] += 1;
                if vals[pos] < q {
                    continue 'outer;
                }
                vals[pos] = 1;
            }
            break;
        }
        if k == 0 {
            // single empty assignment handled above once
        }
    }
    out
}

fn subsets(n: usize, k: usize, cur: &mut Vec<usize>, start: usize, out: &mut Vec<Vec<usize>>) {
    if cur.len() == k {
        out.push(cur.clone());
        return;
    }
    for i in start..n {
        cur.push(i);
        subsets(n, k, cur, i + 1, out);
        cur.pop();
    }
}

fn seeded_code(q: u64, n: usize, d: usize, seed: u64) -> LinearCode {
    let field = FieldSpec::new(q).unwrap();
    let mut rng = RandomSource::new(seed);
    random_code(field, n, d, None, 1, &mut rng).unwrap().0
}

#[test]
fn dual_slice_matches_naive_reference() {
    let cases = [
        (2u64, 7usize, 3usize, 11u64),
        (3, 6, 2, 12),
        (3, 7, 3, 13),
        (5, 5, 2, 14),
    ];
    for (q, n, d, seed) in cases {
        let code = seeded_code(q, n, d, seed);
        for k in 0..=n.min(4) {
            for req in [vec![], vec![0], vec![1, n - 1]] {
                let fast = code.dual_slice(k, &req).unwrap();
                let naive = naive_dual_slice(&code, k, &req);
                let fast_set: Vec<Vec<u64>> = fast.members().iter().map(Word::residues).collect();
                let mut naive_set: Vec<Vec<u64>> = naive.iter().map(Word::residues).collect();
                naive_set.sort();
                let mut fast_sorted = fast_set.clone();
                fast_sorted.sort();
                assert_eq!(fast_sorted, naive_set, "q={q} n={n} k={k} req={req:?}");
                assert_eq!(
                    fast.len() as u64,
                    code.dual_slice_count(k, &req).unwrap(),
                    "count path q={q} n={n} k={k}"
                );
            }
        }
    }
}

#[test]
fn transform_equals_enumeration_on_random_codes() {
    for (q, n, d, seed) in [(2u64, 10usize, 3usize, 21u64), (3, 9, 2, 22), (5, 7, 2, 23)] {
        let code = seeded_code(q, n, d, seed);
        let dual = macwilliams_transform(
            &code.weight_distribution(),
            &BigUint::from(code.size()),
            q,
            n,
        )
        .unwrap();
        for k in 0..=n.min(5) {
            let enumerated = code.dual_slice_count(k, &[]).unwrap();
            assert_eq!(dual.count(k), &BigUint::from(enumerated), "q={q} n={n} k={k}");
        }
    }
}

#[test]
fn involution_on_random_codes() {
    for (q, n, d, seed) in [(2u64, 9usize, 4usize, 31u64), (3, 8, 3, 32), (5, 6, 2, 33)] {
        let code = seeded_code(q, n, d, seed);
        let w = code.weight_distribution();
        let size = BigUint::from(code.size());
        let dual = macwilliams_transform(&w, &size, q, n).unwrap();
        let dual_size = BigUint::from(q).pow(n as u32) / &size;
        let back = macwilliams_transform(&dual, &dual_size, q, n).unwrap();
        assert_eq!(back.counts(), w.counts());
    }
}

#[test]
fn reflection_identity_on_small_grid() {
    for q in [2u64, 3, 5] {
        let s = Rat::new(num_bigint::BigInt::from(q), num_bigint::BigInt::from(q - 1));
        for n in 1..=8usize {
            for k in 0..=n {
                let factor = {
                    let mut acc = Rat::one();
                    for _ in 0..k {
                        acc *= Rat::one() - Rat::from_integer(num_bigint::BigInt::from(q));
                    }
                    acc
                };
                for i in 0..=n {
                    let lhs = Rat::from_integer(eval(k, i, q, n).unwrap());
                    let rhs = eval_rational(k, n - i, &s, n).unwrap() * factor.clone();
                    assert_eq!(lhs, rhs, "q={q} n={n} k={k} i={i}");
                }
            }
        }
    }
}

#[test]
fn rejection_probability_equals_slice_ratio() {
    // Prop 7 computed two ways: the tester op (enumeration, cross-checked
    // against the transform internally) and a direct slice-count ratio.
    let code = seeded_code(3, 8, 2, 41);
    let mut rng = RandomSource::new(5);
    for _ in 0..10 {
        let (v, _) = random_word_at_distance(&code, 2, &mut rng).unwrap();
        if code.contains(&v) {
            continue;
        }
        for k in 2..=4usize {
            let b_c = code.dual_slice_count(k, &[]).unwrap();
            if b_c == 0 {
                continue;
            }
            let span = code.span_with(&v).unwrap();
            let b_s = span.dual_slice_count(k, &[]).unwrap();
            let direct = Rat::one()
                - Rat::new(num_bigint::BigInt::from(b_s), num_bigint::BigInt::from(b_c));
            assert_eq!(rejection_probability_exact(&code, k, &v).unwrap(), direct);
        }
    }
}

#[test]
fn johnson_premise_holds_on_distance_hypothesis_codes() {
    // repetition codes satisfy the distance hypothesis at any gamma; the
    // ball-count premise is a hard row there
    for q in [2u64, 3, 5] {
        let field = FieldSpec::new(q).unwrap();
        for n in [6usize, 9, 12] {
            let gen = Word::from_residues(field, &vec![1; n]).unwrap();
            let code = LinearCode::from_generators(field, n, &[gen]).unwrap();
            let params =
                BoundsParams::new(rat(1, 1), rat(1, 2), rat(1, 1), rat(1, 4), rat(1, 10)).unwrap();
            let rep = lemma9_sum_check(&code, 3, &params).unwrap();
            assert!(rep.find("lemma9.distance_hypothesis").unwrap().pass, "q={q} n={n}");
            assert!(rep.all_hard_pass(), "q={q} n={n}");
        }
    }
}

#[test]
fn root_interval_brackets_all_integer_sign_changes_in_safe_regime() {
    for q in [2u64, 3, 5] {
        for n in 1..=20usize {
            for k in 1..=n.min(6) {
                if q * k as u64 > n as u64 {
                    continue;
                }
                let (mu1, mu2) = root_interval_exact(k, q, n).unwrap();
                let f1 = mu1.floor();
                let c2 = mu2.ceil();
                for i in 0..n {
                    let outside = num_bigint::BigInt::from(i as u64 + 1) < f1
                        || num_bigint::BigInt::from(i as u64) > c2;
                    if outside {
                        let a = eval(k, i, q, n).unwrap();
                        let b = eval(k, i + 1, q, n).unwrap();
                        assert!(
                            (a * b) >= num_bigint::BigInt::zero(),
                            "sign change outside interval at q={q} n={n} k={k} i={i}"
                        );
                    }
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn weight_distribution_sums_to_size(
        qi in 0usize..3, n in 4usize..12, d in 1usize..4, seed in 0u64..1000
    ) {
        let q = [2u64, 3, 5][qi];
        let d = d.min(n);
        let code = seeded_code(q, n, d, seed);
        let wd = code.weight_distribution();
        prop_assert_eq!(wd.set_size(), &BigUint::from(code.size()));
        let total: BigUint = wd.counts().iter().sum();
        prop_assert_eq!(&total, wd.set_size());
        prop_assert_eq!(wd.count(0), &BigUint::one());
    }

    #[test]
    fn span_size_is_q_fold_exactly_when_outside(
        qi in 0usize..3, n in 3usize..10, d in 1usize..3, seed in 0u64..1000
    ) {
        let q = [2u64, 3, 5][qi];
        let d = d.min(n - 1);
        let code = seeded_code(q, n, d, seed);
        let mut rng = RandomSource::new(seed ^ 0xabcd);
        let (v, _) = random_word_at_distance(&code, 1 + (seed as usize % n.min(3)), &mut rng).unwrap();
        let span = code.span_with(&v).unwrap();
        if code.contains(&v) {
            prop_assert_eq!(span.size(), code.size());
        } else {
            prop_assert_eq!(span.size(), code.size() * q as usize);
        }
    }

    #[test]
    fn puncture_preserves_size_without_weight_one_words(
        qi in 0usize..3, n in 4usize..10, d in 1usize..3, seed in 0u64..1000
    ) {
        let q = [2u64, 3, 5][qi];
        let d = d.min(n - 1);
        let code = seeded_code(q, n, d, seed);
        if code.min_nonzero_weight().is_some_and(|w| w >= 2) {
            for i in [0, n / 2, n - 1] {
                let p = code.puncture(&[i]).unwrap();
                prop_assert_eq!(p.size(), code.size());
            }
        }
    }

    #[test]
    fn coset_distributions_partition_the_span(
        qi in 0usize..2, n in 3usize..8, seed in 0u64..500
    ) {
        let q = [3u64, 5][qi];
        let code = seeded_code(q, n, 1, seed);
        let mut rng = RandomSource::new(seed ^ 0x55);
        let (v, _) = random_word_at_distance(&code, 1, &mut rng).unwrap();
        prop_assume!(!code.contains(&v));
        let span = code.span_with(&v).unwrap();
        let mut acc = vec![BigUint::zero(); n + 1];
        for mu in 0..q {
            let shifted = v.scale(code.field().element(mu).unwrap()).unwrap();
            let coset = code.coset_weight_distribution(&shifted).unwrap();
            for (a, b) in acc.iter_mut().zip(coset.counts()) {
                *a += b;
            }
        }
        let span_wd = span.weight_distribution();
        prop_assert_eq!(&acc[..], span_wd.counts());
    }

    #[test]
    fn rejection_probability_in_unit_interval(
        n in 4usize..8, seed in 0u64..300
    ) {
        let code = seeded_code(3, n, 2, seed);
        let mut rng = RandomSource::new(seed);
        let (v, _) = random_word_at_distance(&code, 1, &mut rng).unwrap();
        if code.dual_slice_count(2, &[]).unwrap() > 0 {
            let r = rejection_probability_exact(&code, 2, &v).unwrap();
            prop_assert!(r >= Rat::zero() && r <= Rat::one());
            if code.contains(&v) {
                prop_assert_eq!(r, Rat::zero());
            }
        }
    }

    #[test]
    fn profile_bias_brackets_all_nonzero_weights(
        qi in 0usize..3, n in 4usize..10, d in 1usize..3, seed in 0u64..500
    ) {
        let q = [2u64, 3, 5][qi];
        let code = seeded_code(q, n, d.min(n - 1), seed);
        if let CodeProfile::Proper(p) = code.profile() {
            let center = Rat::one() - Rat::new(1.into(), (q as i64).into());
            for cw in code.codewords() {
                let w = cw.weight();
                if w == 0 {
                    continue;
                }
                let frac = Rat::new((w as u64).into(), (n as u64).into());
                prop_assert!(frac >= &center - &p.bias);
                prop_assert!(frac <= &center + &p.bias);
                prop_assert!(frac >= p.min_distance_fraction.clone());
            }
        }
    }
}

#[test]
fn fractional_distance_agrees_with_definition() {
    let code = seeded_code(3, 6, 2, 77);
    let mut rng = RandomSource::new(8);
    for _ in 0..20 {
        let (v, _) = random_word_at_distance(&code, 2, &mut rng).unwrap();
        let d = code.fractional_distance_to(&v).unwrap();
        let min_by_scan = code
            .codewords()
            .iter()
            .map(|c| c.hamming_distance(&v))
            .min()
            .unwrap();
        assert_eq!(d, Rat::new((min_by_scan as u64).into(), 6.into()));
        assert_eq!(d.cmp(&Rat::zero()), if code.contains(&v) { Ordering::Equal } else { Ordering::Greater });
    }
}

#[test]
fn enclosure_endpoints_respect_exact_comparisons() {
    for q in [2u64, 3, 5] {
        for n in 2..=12usize {
            for k in 1..=n.min(5) {
                let (mu1, mu2) = root_interval_exact(k, q, n).unwrap();
                let (lo1, hi1) = mu1.enclosure(12);
                let (lo2, hi2) = mu2.enclosure(12);
                assert!(mu1.cmp_rat(&lo1) != Ordering::Less);
                assert!(mu1.cmp_rat(&hi1) != Ordering::Greater);
                assert!(mu2.cmp_rat(&lo2) != Ordering::Less);
                assert!(mu2.cmp_rat(&hi2) != Ordering::Greater);
                assert!(hi1.to_f64().unwrap() <= hi2.to_f64().unwrap() + 1e-9);
            }
        }
    }
}
