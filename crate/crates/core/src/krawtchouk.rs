//! Exact q-ary Krawtchouk polynomials and the MacWilliams transform.
//!
//! P_k(i, q, n) = sum_l C(i,l) C(n-i,k-l) (-1)^l (q-1)^(k-l), evaluated in
//! arbitrary precision (values leave the 64-bit range at moderate n and k).
//! The root-interval endpoints mu1/mu2 contain a square root; comparisons
//! against them are decided exactly in Q[sqrt(m)], and `RootInterval` carries
//! rational enclosures for display.
//!
//! The property verifier distinguishes hard rows (identities that hold for
//! all parameters: the defining values, orthogonality, the MacWilliams
//! involution) from sign-location rows. The root-location bound is only
//! reliable away from the degenerate regime where the polynomial degree is
//! comparable to the block length; sign rows are asserted hard when
//! q*k <= n and reported informationally otherwise. P_3(2,3,3) = 2 > 0 with
//! mu2 = 1 is the smallest counterexample showing the bound cannot be hard
//! everywhere.

use crate::code::WeightDistribution;
use crate::exact::{binomial, factorial, rat_u, Rat, Surd};
use crate::report::{RowKind, VerificationReport, VerificationRow};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KrawtchoukError {
    #[error("domain error: {0}")]
    Domain(String),
    /// The transform produced a negative or non-integer count: the input was
    /// not the weight distribution of a linear code over F_q.
    #[error("MacWilliams violation at k={k}: {detail}")]
    MacWilliamsViolation { k: usize, detail: String },
}

fn check_args(k: usize, i: usize, q: u64, n: usize) -> Result<(), KrawtchoukError> {
    if q < 2 {
        return Err(KrawtchoukError::Domain(format!("q={q} must be >= 2")));
    }
    if k > n || i > n {
        return Err(KrawtchoukError::Domain(format!(
            "k={k}, i={i} must lie in [0, n={n}]"
        )));
    }
    Ok(())
}

/// Exact value of P_k(i, q, n).
pub fn eval(k: usize, i: usize, q: u64, n: usize) -> Result<BigInt, KrawtchoukError> {
    check_args(k, i, q, n)?;
    let qm1 = BigInt::from(q - 1);
    let mut acc = BigInt::zero();
    for l in 0..=k {
        let term = BigInt::from(binomial(i, l)) * BigInt::from(binomial(n - i, k - l))
            * qm1.pow((k - l) as u32);
        if l % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    Ok(acc)
}

/// Defining sum with a rational in the role of q; exists to check the
/// reflection identity P_k(i, q, n) = P_k(n-i, q/(q-1), n) (1-q)^k.
pub fn eval_rational(k: usize, i: usize, s: &Rat, n: usize) -> Result<Rat, KrawtchoukError> {
    if s <= &Rat::one() {
        return Err(KrawtchoukError::Domain(format!("s={s} must be > 1")));
    }
    if k > n || i > n {
        return Err(KrawtchoukError::Domain(format!(
            "k={k}, i={i} must lie in [0, n={n}]"
        )));
    }
    let sm1 = s - Rat::one();
    let mut acc = Rat::zero();
    for l in 0..=k {
        let coeff = BigInt::from(binomial(i, l)) * BigInt::from(binomial(n - i, k - l));
        let mut term = Rat::from_integer(coeff) * pow_rat(&sm1, (k - l) as u32);
        if l % 2 == 1 {
            term = -term;
        }
        acc += term;
    }
    Ok(acc)
}

fn pow_rat(x: &Rat, e: u32) -> Rat {
    let mut acc = Rat::one();
    for _ in 0..e {
        acc *= x;
    }
    acc
}

/// Exact endpoints mu = (1-1/q)n - k(1-2/q) -+ (2/q) sqrt((q-1)k(n-k)) as
/// values in Q[sqrt(m)].
pub fn root_interval_exact(k: usize, q: u64, n: usize) -> Result<(Surd, Surd), KrawtchoukError> {
    if k < 1 {
        return Err(KrawtchoukError::Domain("k must be >= 1".into()));
    }
    check_args(k, 0, q, n)?;
    let center = Rat::new(BigInt::from(q - 1), BigInt::from(q)) * rat_u(n as u64)
        - rat_u(k as u64) * Rat::new(BigInt::from(q as i64 - 2), BigInt::from(q));
    let b = Rat::new(BigInt::from(2), BigInt::from(q));
    let m = BigUint::from(q - 1) * BigUint::from(k as u64) * BigUint::from((n - k) as u64);
    let mu1 = Surd::new(center.clone(), -b.clone(), m.clone());
    let mu2 = Surd::new(center, b, m);
    Ok((mu1, mu2))
}

/// Validated rational enclosures of the root-interval endpoints,
/// enclosure width <= 10^-9.
#[derive(Debug, Clone, PartialEq)]
pub struct RootInterval {
    pub mu1: (Rat, Rat),
    pub mu2: (Rat, Rat),
}

pub fn root_interval(k: usize, q: u64, n: usize) -> Result<RootInterval, KrawtchoukError> {
    let (mu1, mu2) = root_interval_exact(k, q, n)?;
    let e1 = mu1.enclosure(12);
    let e2 = mu2.enclosure(12);
    debug_assert!(e1.0 <= e2.1);
    debug_assert!(e1.0 >= -rat_u(n as u64) && e2.1 <= rat_u(2 * n as u64));
    Ok(RootInterval { mu1: e1, mu2: e2 })
}

/// Exact table of P_k(i) for 0 <= k <= kmax, 0 <= i <= n.
#[derive(Debug, Clone)]
pub struct KrawtchoukTable {
    q: u64,
    n: usize,
    kmax: usize,
    values: Vec<Vec<BigInt>>,
}

impl KrawtchoukTable {
    pub fn build(q: u64, n: usize, kmax: usize) -> Result<Self, KrawtchoukError> {
        check_args(kmax, 0, q, n)?;
        let values = (0..=kmax)
            .map(|k| (0..=n).map(|i| eval(k, i, q, n)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        Ok(KrawtchoukTable { q, n, kmax, values })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kmax(&self) -> usize {
        self.kmax
    }

    pub fn value(&self, k: usize, i: usize) -> &BigInt {
        &self.values[k][i]
    }

    pub fn root_interval(&self, k: usize) -> Result<RootInterval, KrawtchoukError> {
        root_interval(k, self.q, self.n)
    }
}

/// MacWilliams transform: B_k(dual) = (1/|C|) sum_i B_i P_k(i, q, n).
/// Division must be exact and every count non-negative; anything else means
/// the input was not a linear-code weight distribution.
pub fn macwilliams_transform(
    weights: &WeightDistribution,
    code_size: &BigUint,
    q: u64,
    n: usize,
) -> Result<WeightDistribution, KrawtchoukError> {
    let counts = (0..=n)
        .map(|k| macwilliams_row(weights, code_size, q, n, k))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(WeightDistribution::new(counts))
}

/// One row of the transform: the dual weight count at a single k.
pub fn macwilliams_row(
    weights: &WeightDistribution,
    code_size: &BigUint,
    q: u64,
    n: usize,
    k: usize,
) -> Result<BigUint, KrawtchoukError> {
    if weights.block_length() != n {
        return Err(KrawtchoukError::Domain(format!(
            "distribution has length {} but n={n}",
            weights.block_length()
        )));
    }
    if weights.set_size() != code_size {
        return Err(KrawtchoukError::Domain(format!(
            "counts sum to {} but codeSize={code_size}",
            weights.set_size()
        )));
    }
    if code_size.is_zero() {
        return Err(KrawtchoukError::Domain("empty set".into()));
    }
    let mut acc = BigInt::zero();
    for i in 0..=n {
        acc += BigInt::from(weights.count(i).clone()) * eval(k, i, q, n)?;
    }
    if acc.is_negative() {
        return Err(KrawtchoukError::MacWilliamsViolation {
            k,
            detail: format!("negative transform value {acc}"),
        });
    }
    let (quot, rem) = acc.div_rem(&BigInt::from(code_size.clone()));
    if !rem.is_zero() {
        return Err(KrawtchoukError::MacWilliamsViolation {
            k,
            detail: format!("{acc} not divisible by |C|={code_size}"),
        });
    }
    Ok(quot.to_biguint().expect("non-negative"))
}

/// Property suite over the table (q, n, k <= kmax).
///
/// Hard rows: the defining value at i=0, off-diagonal orthogonality, the
/// (brute-force derived) diagonal q^n C(n,k)(q-1)^k, the reflection
/// identity, and the sign-location family when q*k <= n. Sign-location rows
/// outside that regime, and the 4a/4b magnitude bounds everywhere, are
/// informational: those bounds only hold asymptotically (4a fails already
/// at q=2, n=8, k=4, i=4 where P=6 but the bound is 0).
pub fn verify_properties(q: u64, n: usize, kmax: usize) -> Result<VerificationReport, KrawtchoukError> {
    let table = KrawtchoukTable::build(q, n, kmax)?;
    let mut report = VerificationReport::new();
    let qm1 = BigInt::from(q - 1);

    // measure weights C(n,i)(q-1)^i
    let measure: Vec<BigInt> = (0..=n)
        .map(|i| BigInt::from(binomial(n, i)) * qm1.pow(i as u32))
        .collect();

    for k in 0..=kmax {
        let p0 = table.value(k, 0).clone();
        let expect = BigInt::from(binomial(n, k)) * qm1.pow(k as u32);
        report.push(VerificationRow::exact_eq(
            format!("krawtchouk.property1[k={k}]"),
            RowKind::Hard,
            Rat::from_integer(p0),
            Rat::from_integer(expect),
            "P_k(0) = C(n,k)(q-1)^k",
        ));
    }

    for k in 0..=kmax {
        for l in (k + 1)..=kmax {
            let mut acc = BigInt::zero();
            for (i, m) in measure.iter().enumerate() {
                acc += m * table.value(k, i) * table.value(l, i);
            }
            report.push(VerificationRow::exact_eq(
                format!("krawtchouk.orthogonality[k={k},l={l}]"),
                RowKind::Hard,
                Rat::from_integer(acc),
                Rat::zero(),
                "sum_i C(n,i)(q-1)^i P_k(i) P_l(i)",
            ));
        }
        let mut diag = BigInt::zero();
        for (i, m) in measure.iter().enumerate() {
            diag += m * table.value(k, i) * table.value(k, i);
        }
        let frozen = BigInt::from(q).pow(n as u32) * BigInt::from(binomial(n, k)) * qm1.pow(k as u32);
        report.push(VerificationRow::exact_eq(
            format!("krawtchouk.orthogonality_diagonal[k={k}]"),
            RowKind::Hard,
            Rat::from_integer(diag),
            Rat::from_integer(frozen),
            "diagonal q^n C(n,k)(q-1)^k, derived by brute force and frozen",
        ));
    }

    // reflection identity under rational evaluation
    let s = Rat::new(BigInt::from(q), BigInt::from(q - 1));
    for k in 0..=kmax {
        let mut mismatches = 0u64;
        let factor = pow_rat(&(Rat::one() - rat_u(q)), k as u32);
        for i in 0..=n {
            let lhs = Rat::from_integer(table.value(k, i).clone());
            let rhs = eval_rational(k, n - i, &s, n)? * factor.clone();
            if lhs != rhs {
                mismatches += 1;
            }
        }
        report.push(VerificationRow::exact_eq(
            format!("krawtchouk.property2[k={k}]"),
            RowKind::Hard,
            rat_u(mismatches),
            Rat::zero(),
            "mismatch count of the reflection identity over all i",
        ));
    }

    for k in 1..=kmax {
        let (mu1, mu2) = root_interval_exact(k, q, n)?;
        let sign_rows_hard = (k as u64) * q <= n as u64;
        let sign_kind = if sign_rows_hard { RowKind::Hard } else { RowKind::Informational };
        let domain_note = if sign_rows_hard {
            "root-location regime q*k <= n"
        } else {
            "outside root-location regime (q*k > n): informational"
        };

        // 4a: P_k(i) <= (q^k/k!) ((1-1/q)n - i)^k for i <= (1-1/q)n
        let scale = Rat::new(BigInt::from(q).pow(k as u32), BigInt::from(factorial(k)));
        let center = Rat::new(BigInt::from(q - 1), BigInt::from(q)) * rat_u(n as u64);
        let mut worst: Option<(Rat, usize)> = None;
        for i in 0..=n {
            if rat_u(i as u64) > center {
                break;
            }
            let bound = scale.clone() * pow_rat(&(center.clone() - rat_u(i as u64)), k as u32);
            let margin = Rat::from_integer(table.value(k, i).clone()) - bound;
            if worst.as_ref().is_none_or(|(w, _)| margin > *w) {
                worst = Some((margin, i));
            }
        }
        let (margin, wi) = worst.expect("range never empty");
        report.push(VerificationRow::le(
            format!("krawtchouk.property4a[k={k}]"),
            RowKind::Informational,
            margin,
            Rat::zero(),
            format!("max of P_k(i) - bound over i <= (1-1/q)n, at i={wi}; holds only asymptotically"),
        ));

        // 4b: |P_k(i)| <= (q^k/k!) (k + (2/q)(sqrt(m) - k))^k on [mu1, mu2]
        let radius = Surd::new(
            rat_u(k as u64) - Rat::new(BigInt::from(2 * k as u64), BigInt::from(q)),
            Rat::new(BigInt::from(2), BigInt::from(q)),
            mu1.m.clone(),
        );
        let bound = radius.pow(k as u32);
        let bound_scaled = Surd::new(&bound.a * &scale, &bound.b * &scale, bound.m.clone());
        let mut ok = true;
        let mut max_abs = Rat::zero();
        for i in 0..=n {
            let ir = rat_u(i as u64);
            if mu1.cmp_rat(&ir) == Ordering::Greater || mu2.cmp_rat(&ir) == Ordering::Less {
                continue;
            }
            let abs = Rat::from_integer(table.value(k, i).abs());
            if abs > max_abs {
                max_abs = abs.clone();
            }
            if bound_scaled.cmp_rat(&abs) == Ordering::Less {
                ok = false;
            }
        }
        let (_, bound_hi) = bound_scaled.enclosure(12);
        report.push(VerificationRow::with_pass(
            format!("krawtchouk.property4b[k={k}]"),
            RowKind::Informational,
            ok,
            max_abs,
            bound_hi,
            "max |P_k(i)| on [mu1,mu2]; rhs is an upper enclosure, decision exact in Q[sqrt(m)]",
        ));

        // 4c: P_k(i) <= 0 for integer i in (mu2, n], odd k
        if k % 2 == 1 {
            let mut worst = Rat::zero();
            let mut any = false;
            for i in 0..=n {
                if mu2.cmp_rat(&rat_u(i as u64)) == Ordering::Less {
                    any = true;
                    let v = Rat::from_integer(table.value(k, i).clone());
                    if v > worst {
                        worst = v;
                    }
                }
            }
            report.push(VerificationRow::le(
                format!("krawtchouk.property4c[k={k}]"),
                sign_kind,
                worst,
                Rat::zero(),
                if any {
                    format!("max P_k(i) over integer i > mu2; {domain_note}")
                } else {
                    format!("no integer i > mu2 (vacuous); {domain_note}")
                },
            ));
        }

        // weak property 3: P_k(i) > 0 for integer i < mu1
        let mut min_below: Option<Rat> = None;
        for i in 0..=n {
            if mu1.cmp_rat(&rat_u(i as u64)) == Ordering::Greater {
                let v = Rat::from_integer(table.value(k, i).clone());
                if min_below.as_ref().is_none_or(|m| v < *m) {
                    min_below = Some(v);
                }
            }
        }
        let (pass, lhs, note) = match min_below {
            Some(v) => (v > Rat::zero(), v, format!("min P_k(i) over integer i < mu1 must be positive; {domain_note}")),
            None => (true, Rat::zero(), format!("no integer i < mu1 (vacuous); {domain_note}")),
        };
        report.push(VerificationRow::with_pass(
            format!("krawtchouk.property3_weak[k={k}]"),
            sign_kind,
            pass,
            lhs,
            Rat::zero(),
            note,
        ));

        // sign containment: no sign change between consecutive integers whose
        // pair lies wholly outside [floor(mu1), ceil(mu2)]
        let f1 = mu1.floor();
        let c2 = mu2.ceil();
        let mut changes = 0u64;
        for i in 0..n {
            let pair_outside = BigInt::from(i as u64 + 1) < f1 || BigInt::from(i as u64) > c2;
            if pair_outside {
                let prod = table.value(k, i) * table.value(k, i + 1);
                if prod.is_negative() {
                    changes += 1;
                }
            }
        }
        report.push(VerificationRow::exact_eq(
            format!("krawtchouk.sign_containment[k={k}]"),
            sign_kind,
            rat_u(changes),
            Rat::zero(),
            format!("integer sign changes outside [floor(mu1), ceil(mu2)]; {domain_note}"),
        ));
    }

    Ok(report)
}

pub type Rational = BigRational;
