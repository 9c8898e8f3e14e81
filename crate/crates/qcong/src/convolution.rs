//! N-fold sequence convolution and the identities it satisfies.
//!
//! `t(k)` is the order-N Cauchy product of N base sequences, truncated to a
//! finite prefix. The module provides the literal nested-sum evaluation (the
//! oracle), the iterated pairwise evaluation (the fast path), the key-1/key-2
//! window conditions, and checkable forms of the three convolution identities
//! used throughout the congruence proofs:
//!
//! * part (a): with key-1 zeros, the prefix sum of t factors into the product
//!   of the prefix sums of the base sequences;
//! * part (b): with key-1 and key-2, t(ld+k) = t(k) * (composition sum over
//!   the subsampled values z_j(i*d));
//! * part (c): with d | n, the prefix sum over n factors through the
//!   subsampled composition sums.
//!
//! Part (a) is implemented with the product reading of its left-hand side;
//! every report carries that choice explicitly.

use serde::Serialize;

use crate::arith::{rational, Rational};

/// Commutative ring interface the convolution machinery is generic over.
/// Equality is part of the interface because fraction rings compare by
/// cross-multiplication rather than structurally.
pub trait Ring {
    type El: Clone;
    fn zero(&self) -> Self::El;
    fn one(&self) -> Self::El;
    fn add(&self, a: &Self::El, b: &Self::El) -> Self::El;
    fn mul(&self, a: &Self::El, b: &Self::El) -> Self::El;
    fn eq(&self, a: &Self::El, b: &Self::El) -> bool;
    fn is_zero(&self, a: &Self::El) -> bool {
        self.eq(a, &self.zero())
    }
}

/// The rationals.
#[derive(Clone, Copy, Debug, Default)]
pub struct RationalRing;

impl Ring for RationalRing {
    type El = Rational;
    fn zero(&self) -> Rational {
        num_traits::Zero::zero()
    }
    fn one(&self) -> Rational {
        num_traits::One::one()
    }
    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }
    fn eq(&self, a: &Rational, b: &Rational) -> bool {
        a == b
    }
    fn is_zero(&self, a: &Rational) -> bool {
        num_traits::Zero::is_zero(a)
    }
}

/// Fractions num/den over a base ring, compared by cross-multiplication.
/// No gcd reduction is attempted; the base ring must be an integral domain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fraction<T> {
    pub num: T,
    pub den: T,
}

impl<T> Fraction<T> {
    pub fn new(num: T, den: T) -> Self {
        Fraction { num, den }
    }
}

/// Fraction field construction over an integral-domain ring.
#[derive(Clone, Copy, Debug, Default)]
pub struct FractionRing<R>(pub R);

impl<R: Ring> Ring for FractionRing<R> {
    type El = Fraction<R::El>;
    fn zero(&self) -> Self::El {
        Fraction::new(self.0.zero(), self.0.one())
    }
    fn one(&self) -> Self::El {
        Fraction::new(self.0.one(), self.0.one())
    }
    fn add(&self, a: &Self::El, b: &Self::El) -> Self::El {
        let num = self
            .0
            .add(&self.0.mul(&a.num, &b.den), &self.0.mul(&b.num, &a.den));
        Fraction::new(num, self.0.mul(&a.den, &b.den))
    }
    fn mul(&self, a: &Self::El, b: &Self::El) -> Self::El {
        Fraction::new(self.0.mul(&a.num, &b.num), self.0.mul(&a.den, &b.den))
    }
    fn eq(&self, a: &Self::El, b: &Self::El) -> bool {
        self.0
            .eq(&self.0.mul(&a.num, &b.den), &self.0.mul(&b.num, &a.den))
    }
    fn is_zero(&self, a: &Self::El) -> bool {
        self.0.is_zero(&a.num)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LemmaError {
    #[error("sequence {0} violates the key-1 window condition")]
    Key1Violated(usize),
    #[error("sequence {0} violates the key-2 multiplicativity condition")]
    Key2Violated(usize),
    #[error("bad parameters: {0}")]
    BadParams(String),
}

/// t(0..n) by the literal nested composition sum.
pub fn multi_convolve_naive<R: Ring>(ring: &R, seqs: &[&[R::El]], n: usize) -> Vec<R::El> {
    assert!(seqs.len() >= 1, "need at least one sequence");
    for s in seqs {
        assert!(s.len() >= n, "sequence shorter than requested prefix");
    }
    (0..n).map(|k| nested_term(ring, seqs, k)).collect()
}

fn nested_term<R: Ring>(ring: &R, seqs: &[&[R::El]], k: usize) -> R::El {
    if seqs.len() == 1 {
        return seqs[0][k].clone();
    }
    let mut acc = ring.zero();
    for i in 0..=k {
        let tail = nested_term(ring, &seqs[1..], k - i);
        acc = ring.add(&acc, &ring.mul(&seqs[0][i], &tail));
    }
    acc
}

/// Pairwise Cauchy product truncated to length n.
fn pairwise<R: Ring>(ring: &R, a: &[R::El], b: &[R::El], n: usize) -> Vec<R::El> {
    (0..n)
        .map(|k| {
            let mut acc = ring.zero();
            for i in 0..=k {
                if i < a.len() && k - i < b.len() {
                    acc = ring.add(&acc, &ring.mul(&a[i], &b[k - i]));
                }
            }
            acc
        })
        .collect()
}

/// t(0..n) by iterated pairwise convolution; same contract as the naive form.
pub fn multi_convolve_fast<R: Ring>(ring: &R, seqs: &[&[R::El]], n: usize) -> Vec<R::El> {
    assert!(seqs.len() >= 1, "need at least one sequence");
    for s in seqs {
        assert!(s.len() >= n, "sequence shorter than requested prefix");
    }
    let mut acc: Vec<R::El> = seqs[0][..n].to_vec();
    for s in &seqs[1..] {
        acc = pairwise(ring, &acc, &s[..n], n);
    }
    acc
}

/// Prefix sum of the full convolution, sum_{k<n} t(k), without materializing
/// the final table: the sequence list is split in half, each half convolved,
/// and the halves paired against a running prefix sum.
pub fn multi_convolve_sum<R: Ring>(ring: &R, seqs: &[&[R::El]], n: usize) -> R::El {
    assert!(seqs.len() >= 1);
    if n == 0 {
        return ring.zero();
    }
    if seqs.len() == 1 {
        let mut acc = ring.zero();
        for v in &seqs[0][..n] {
            acc = ring.add(&acc, v);
        }
        return acc;
    }
    let mid = seqs.len() / 2;
    let left = multi_convolve_fast(ring, &seqs[..mid], n);
    let right = multi_convolve_fast(ring, &seqs[mid..], n);
    // prefix sums of the right table
    let mut ps = Vec::with_capacity(n);
    let mut run = ring.zero();
    for v in &right {
        run = ring.add(&run, v);
        ps.push(run.clone());
    }
    let mut acc = ring.zero();
    for (i, l) in left.iter().enumerate() {
        if !ring.is_zero(l) {
            acc = ring.add(&acc, &ring.mul(l, &ps[n - 1 - i]));
        }
    }
    acc
}

/// Key-1 window (open form as stated): z(k) = 0 for all k with
/// (d-1)/N < k < d, i.e. N*k >= d and k <= d-1.
pub fn check_key1<R: Ring>(ring: &R, seq: &[R::El], d: usize, n_fold: usize) -> bool {
    assert!(d >= 1 && seq.len() >= d);
    (0..d).all(|k| n_fold * k < d || ring.is_zero(&seq[k]))
}

/// Closed key-1 window used in the specialization arguments:
/// z(k) = 0 for (d-1)/N <= k <= d-1, i.e. N*k >= d-1.
pub fn check_key1_closed<R: Ring>(ring: &R, seq: &[R::El], d: usize, n_fold: usize) -> bool {
    assert!(d >= 1 && seq.len() >= d);
    (0..d).all(|k| n_fold * k < d - 1 || ring.is_zero(&seq[k]))
}

/// Key-2 multiplicativity: z(ld+k) = z(ld) z(k) for all l, 0 <= k < d,
/// checked on every index up to `upto` (inclusive).
pub fn check_key2<R: Ring>(ring: &R, seq: &[R::El], d: usize, upto: usize) -> bool {
    assert!(d >= 1 && seq.len() > upto);
    for l in 0..=(upto / d) {
        for k in 0..d {
            let idx = l * d + k;
            if idx > upto {
                break;
            }
            if !ring.eq(&seq[idx], &ring.mul(&seq[l * d], &seq[k])) {
                return false;
            }
        }
    }
    true
}

/// The composition sum over subsampled values: conv_N(z_j(. * d))(l).
fn subsampled_convolution<R: Ring>(ring: &R, seqs: &[&[R::El]], d: usize, l: usize) -> Vec<R::El> {
    let subs: Vec<Vec<R::El>> = seqs
        .iter()
        .map(|s| (0..=l).map(|i| s[i * d].clone()).collect())
        .collect();
    let views: Vec<&[R::El]> = subs.iter().map(|s| s.as_slice()).collect();
    multi_convolve_fast(ring, &views, l + 1)
}

/// Part (a) evaluated without precondition checks: is
/// sum_{k<d} t(k) equal to prod_i sum_{k<d} z_i(k)?
pub fn lemma_a_raw<R: Ring>(ring: &R, seqs: &[&[R::El]], d: usize) -> bool {
    let lhs = multi_convolve_sum(ring, seqs, d);
    let mut rhs = ring.one();
    for s in seqs {
        let mut sum = ring.zero();
        for v in &s[..d] {
            sum = ring.add(&sum, v);
        }
        rhs = ring.mul(&rhs, &sum);
    }
    ring.eq(&lhs, &rhs)
}

/// Part (a), product reading: requires the key-1 window on every sequence.
pub fn lemma_a_identity<R: Ring>(
    ring: &R,
    seqs: &[&[R::El]],
    d: usize,
) -> Result<bool, LemmaError> {
    let n_fold = seqs.len();
    for (i, s) in seqs.iter().enumerate() {
        if !check_key1(ring, s, d, n_fold) {
            return Err(LemmaError::Key1Violated(i));
        }
    }
    Ok(lemma_a_raw(ring, seqs, d))
}

/// Part (b): t(ld+k) = t(k) * conv_N(subsampled)(l), requiring key-1 and
/// key-2 up to index ld+k on every sequence.
pub fn lemma_b_identity<R: Ring>(
    ring: &R,
    seqs: &[&[R::El]],
    d: usize,
    l: usize,
    k: usize,
) -> Result<bool, LemmaError> {
    if k >= d {
        return Err(LemmaError::BadParams(format!("k = {k} must be < d = {d}")));
    }
    let idx = l * d + k;
    let n_fold = seqs.len();
    for (i, s) in seqs.iter().enumerate() {
        if s.len() <= idx {
            return Err(LemmaError::BadParams(format!(
                "sequence {i} shorter than ld+k+1 = {}",
                idx + 1
            )));
        }
        if !check_key1(ring, s, d, n_fold) {
            return Err(LemmaError::Key1Violated(i));
        }
        if !check_key2(ring, s, d, idx) {
            return Err(LemmaError::Key2Violated(i));
        }
    }
    let t = multi_convolve_fast(ring, seqs, idx + 1);
    let w = subsampled_convolution(ring, seqs, d, l);
    let rhs = ring.mul(&t[k], &w[l]);
    Ok(ring.eq(&t[idx], &rhs))
}

/// Part (c): with d | n, sum_{k<n} t(k) =
/// (sum_{l<n/d} conv_N(subsampled)(l)) * (sum_{k<d} t(k)).
pub fn lemma_c_factorization<R: Ring>(
    ring: &R,
    seqs: &[&[R::El]],
    d: usize,
    n: usize,
) -> Result<bool, LemmaError> {
    if n == 0 || n % d != 0 {
        return Err(LemmaError::BadParams(format!(
            "n = {n} must be a positive multiple of d = {d}"
        )));
    }
    let n_fold = seqs.len();
    for (i, s) in seqs.iter().enumerate() {
        if s.len() < n {
            return Err(LemmaError::BadParams(format!(
                "sequence {i} shorter than n = {n}"
            )));
        }
        if !check_key1(ring, s, d, n_fold) {
            return Err(LemmaError::Key1Violated(i));
        }
        if !check_key2(ring, s, d, n - 1) {
            return Err(LemmaError::Key2Violated(i));
        }
    }
    let lhs = multi_convolve_sum(ring, seqs, n);
    let blocks = n / d;
    let w = subsampled_convolution(ring, seqs, d, blocks - 1);
    let mut w_sum = ring.zero();
    for v in &w {
        w_sum = ring.add(&w_sum, v);
    }
    let head = multi_convolve_sum(ring, seqs, d);
    Ok(ring.eq(&lhs, &ring.mul(&w_sum, &head)))
}

// ---------------------------------------------------------------------------
// Seeded property harness
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize)]
pub struct LemmaTrialFailure {
    pub part: char,
    pub trial: u32,
    pub description: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct LemmaSuiteReport {
    pub seed: u64,
    pub trials: u32,
    /// Part (a) is checked with the product reading of its left-hand side.
    pub lemma_a_reading: &'static str,
    pub failures: Vec<LemmaTrialFailure>,
    /// The engine must reject part (a) on a seeded key-1 violation; true
    /// means the guard instance failed as it should.
    pub guard_violation_detected: bool,
}

impl LemmaSuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.guard_violation_detected
    }
}

fn random_rational(rng: &mut impl rand::Rng) -> Rational {
    rational(rng.gen_range(-4i64..=4), rng.gen_range(1i64..=3))
}

/// Random sequence of the given length satisfying key-1 for (d, n_fold):
/// free values below the window, zeros inside it, and key-2 block structure
/// z(ld + k) = g_l * z(k) layered on top when `with_key2` is set.
fn random_key_sequence(
    rng: &mut impl rand::Rng,
    d: usize,
    n_fold: usize,
    len: usize,
    with_key2: bool,
) -> Vec<Rational> {
    use num_traits::{One, Zero};
    let mut base: Vec<Rational> = (0..d)
        .map(|k| {
            if n_fold * k >= d {
                Rational::zero()
            } else if k == 0 {
                Rational::one()
            } else {
                random_rational(rng)
            }
        })
        .collect();
    if !with_key2 {
        base.truncate(len.min(d));
        while base.len() < len {
            base.push(Rational::zero());
        }
        return base;
    }
    let blocks = len.div_ceil(d);
    let mut seq = Vec::with_capacity(blocks * d);
    let mut multiplier = Rational::one();
    for l in 0..blocks {
        if l > 0 {
            // occasional zero multiplier exercises the degenerate branches
            multiplier = if rng.gen_ratio(1, 8) {
                Rational::zero()
            } else {
                &multiplier * random_rational(rng)
            };
        }
        for v in &base {
            seq.push(&multiplier * v);
        }
    }
    seq.truncate(len);
    seq
}

/// Run the seeded identity suite: `trials` random instances per part, plus
/// one deliberately violated key-1 instance that part (a) must fail on.
pub fn run_lemma_property_suite(seed: u64, trials: u32) -> LemmaSuiteReport {
    use rand::{Rng as _, SeedableRng};
    let ring = RationalRing;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();

    for trial in 0..trials {
        // part (a)
        let n_fold = rng.gen_range(2usize..=4);
        let d = rng.gen_range(1usize..=9);
        let seqs: Vec<Vec<Rational>> = (0..n_fold)
            .map(|_| random_key_sequence(&mut rng, d, n_fold, d, false))
            .collect();
        let views: Vec<&[Rational]> = seqs.iter().map(|s| s.as_slice()).collect();
        match lemma_a_identity(&ring, &views, d) {
            Ok(true) => {}
            outcome => failures.push(LemmaTrialFailure {
                part: 'a',
                trial,
                description: format!("N={n_fold} d={d}: {outcome:?}"),
            }),
        }

        // part (b)
        let n_fold = rng.gen_range(2usize..=4);
        let d = rng.gen_range(1usize..=9);
        let l = rng.gen_range(0usize..=3);
        let k = rng.gen_range(0usize..d);
        let len = (l + 1) * d + 1;
        let seqs: Vec<Vec<Rational>> = (0..n_fold)
            .map(|_| random_key_sequence(&mut rng, d, n_fold, len, true))
            .collect();
        let views: Vec<&[Rational]> = seqs.iter().map(|s| s.as_slice()).collect();
        match lemma_b_identity(&ring, &views, d, l, k) {
            Ok(true) => {}
            outcome => failures.push(LemmaTrialFailure {
                part: 'b',
                trial,
                description: format!("N={n_fold} d={d} l={l} k={k}: {outcome:?}"),
            }),
        }

        // part (c)
        let n_fold = rng.gen_range(2usize..=4);
        let d = rng.gen_range(1usize..=9);
        let blocks = rng.gen_range(1usize..=(18 / d).max(1));
        let n = blocks * d;
        let seqs: Vec<Vec<Rational>> = (0..n_fold)
            .map(|_| random_key_sequence(&mut rng, d, n_fold, n, true))
            .collect();
        let views: Vec<&[Rational]> = seqs.iter().map(|s| s.as_slice()).collect();
        match lemma_c_factorization(&ring, &views, d, n) {
            Ok(true) => {}
            outcome => failures.push(LemmaTrialFailure {
                part: 'c',
                trial,
                description: format!("N={n_fold} d={d} n={n}: {outcome:?}"),
            }),
        }
    }

    // guard: all-ones sequences violate key-1 and part (a) must not hold
    let ones = vec![num_traits::One::one(); 2];
    let views: Vec<&[Rational]> = vec![&ones, &ones];
    let guard_violation_detected = !lemma_a_raw(&ring, &views, 2)
        && lemma_a_identity(&ring, &views, 2) == Err(LemmaError::Key1Violated(0));

    LemmaSuiteReport {
        seed,
        trials,
        lemma_a_reading: "product",
        failures,
        guard_violation_detected,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::{One, Zero};
    use proptest::prelude::*;

    fn r(n: i64, d: i64) -> Rational {
        rational(n, d)
    }

    fn ones(n: usize) -> Vec<Rational> {
        vec![Rational::one(); n]
    }

    #[test]
    fn naive_examples() {
        let ring = RationalRing;
        let a = ones(3);
        let t = multi_convolve_naive(&ring, &[&a, &a], 3);
        assert_eq!(t, vec![r(1, 1), r(2, 1), r(3, 1)]);

        // z = (1, 0, a) self-convolved: [1, 0, 2a]
        let z = vec![r(1, 1), r(0, 1), r(5, 3)];
        let t = multi_convolve_naive(&ring, &[&z, &z], 3);
        assert_eq!(t, vec![r(1, 1), r(0, 1), r(10, 3)]);

        // delta sequences are the identity element
        let delta: Vec<Rational> = vec![r(1, 1), r(0, 1), r(0, 1), r(0, 1)];
        let t = multi_convolve_naive(&ring, &[&delta, &delta, &delta], 4);
        assert_eq!(t, delta);
    }

    #[test]
    fn fast_matches_naive_on_examples() {
        let ring = RationalRing;
        let a = ones(3);
        assert_eq!(
            multi_convolve_fast(&ring, &[&a, &a], 3),
            multi_convolve_naive(&ring, &[&a, &a], 3)
        );
        let single = vec![r(7, 2)];
        let t = multi_convolve_fast(&ring, &[&single, &single], 1);
        assert_eq!(t, vec![r(49, 4)]);
    }

    #[test]
    fn key1_examples() {
        let ring = RationalRing;
        let delta = vec![r(1, 1), r(0, 1), r(0, 1), r(0, 1), r(0, 1)];
        assert!(check_key1(&ring, &delta, 5, 2));
        // (1,1,0,0,0): open window for d=5, N=2 is k in {3, 4}
        let s = vec![r(1, 1), r(1, 1), r(0, 1), r(0, 1), r(0, 1)];
        assert!(check_key1(&ring, &s, 5, 2));
        // (1,1,1,0,0): open window still holds, closed window (k >= 2) does not
        let s = vec![r(1, 1), r(1, 1), r(1, 1), r(0, 1), r(0, 1)];
        assert!(check_key1(&ring, &s, 5, 2));
        assert!(!check_key1_closed(&ring, &s, 5, 2));
        assert!(!check_key1(&ring, &ones(4), 4, 2));
    }

    #[test]
    fn lemma_a_examples() {
        let ring = RationalRing;
        let s = vec![r(1, 1), r(0, 1), r(0, 1)];
        assert_eq!(lemma_a_identity(&ring, &[&s, &s], 3), Ok(true));

        // precondition violation is an error, and the raw identity fails
        let o = ones(2);
        assert_eq!(
            lemma_a_identity(&ring, &[&o, &o], 2),
            Err(LemmaError::Key1Violated(0))
        );
        assert!(!lemma_a_raw(&ring, &[&o, &o], 2));
    }

    #[test]
    fn lemma_b_hand_example() {
        let ring = RationalRing;
        // z = (1, 0, a, 0, a^2, 0): key-1 and key-2 for d = 2
        let a = r(3, 2);
        let z = vec![
            Rational::one(),
            Rational::zero(),
            a.clone(),
            Rational::zero(),
            &a * &a,
            Rational::zero(),
        ];
        assert_eq!(lemma_b_identity(&ring, &[&z, &z], 2, 1, 0), Ok(true));
        assert_eq!(lemma_b_identity(&ring, &[&z, &z], 2, 2, 1), Ok(true));
        assert!(matches!(
            lemma_b_identity(&ring, &[&z, &z], 2, 1, 5),
            Err(LemmaError::BadParams(_))
        ));
    }

    #[test]
    fn lemma_c_small() {
        let ring = RationalRing;
        // n = d: outer factor is the single head product
        let s = vec![r(1, 1), r(2, 1), r(0, 1), r(0, 1), r(0, 1), r(0, 1)];
        assert_eq!(lemma_c_factorization(&ring, &[&s, &s], 6, 6), Ok(true));
        assert!(matches!(
            lemma_c_factorization(&ring, &[&s, &s], 4, 6),
            Err(LemmaError::BadParams(_))
        ));
    }

    #[test]
    fn suite_runs_clean() {
        let report = run_lemma_property_suite(42, 25);
        assert!(report.passed(), "failures: {:?}", report.failures);
        assert_eq!(report.lemma_a_reading, "product");
    }

    #[test]
    fn suite_deterministic_for_seed() {
        let a = run_lemma_property_suite(7, 10);
        let b = run_lemma_property_suite(7, 10);
        assert_eq!(a.failures.len(), b.failures.len());
        assert_eq!(a.guard_violation_detected, b.guard_violation_detected);
    }

    fn arb_seq(n: usize) -> impl Strategy<Value = Vec<Rational>> {
        proptest::collection::vec((-6i64..=6, 1i64..=4).prop_map(|(a, b)| rational(a, b)), n)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        #[test]
        fn fast_equals_naive(
            s1 in arb_seq(8), s2 in arb_seq(8), s3 in arb_seq(8), s4 in arb_seq(8),
            n_fold in 2usize..=4, n in 1usize..=8,
        ) {
            let ring = RationalRing;
            let all = [&s1[..], &s2[..], &s3[..], &s4[..]];
            let seqs = &all[..n_fold];
            let fast = multi_convolve_fast(&ring, seqs, n);
            let naive = multi_convolve_naive(&ring, seqs, n);
            prop_assert_eq!(&fast, &naive);
            // prefix-sum evaluation agrees too
            let mut total = Rational::zero();
            for v in &naive { total = &total + v; }
            prop_assert_eq!(multi_convolve_sum(&ring, seqs, n), total);
        }

        #[test]
        fn convolution_symmetric(s1 in arb_seq(6), s2 in arb_seq(6), s3 in arb_seq(6)) {
            let ring = RationalRing;
            let a = multi_convolve_fast(&ring, &[&s1, &s2, &s3], 6);
            let b = multi_convolve_fast(&ring, &[&s3, &s1, &s2], 6);
            let c = multi_convolve_fast(&ring, &[&s2, &s3, &s1], 6);
            prop_assert_eq!(&a, &b);
            prop_assert_eq!(&a, &c);
        }
    }
}
