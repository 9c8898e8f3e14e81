//! Univariate polynomials in q over the rationals.
//!
//! Provides the dense polynomial type [`QPoly`] together with the q-objects
//! the congruence machinery is built from: q-integers `[n]_{q^m}`, cyclotomic
//! polynomials `Phi_n(q)` (memoized, computed by exact division), and
//! q-Pochhammer products with pure q-power arguments. [`QLaurentPoly`] extends
//! the exponent range downward for the results of substituting x := q^e with
//! e < 0.

use std::collections::HashMap;
use std::fmt;
use std::io::{BufRead, Write};
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::arith::{Integer, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("division by zero polynomial")]
    DivisionByZero,
    #[error("exact division left a nonzero remainder")]
    InexactDivision,
}

/// Dense polynomial in q with rational coefficients.
///
/// Canonical form: no trailing zero coefficient; the zero polynomial is the
/// empty coefficient list. Index i holds the coefficient of q^i.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct QPoly {
    coeffs: Vec<Rational>,
}

impl QPoly {
    pub fn zero() -> Self {
        QPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        QPoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        QPoly::from_coeffs(vec![c])
    }

    /// c * q^e
    pub fn monomial(c: Rational, e: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); e + 1];
        coeffs[e] = c;
        QPoly::from_coeffs(coeffs)
    }

    /// q^e
    pub fn q_power(e: usize) -> Self {
        QPoly::monomial(Rational::one(), e)
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub fn from_i64_coeffs(coeffs: &[i64]) -> Self {
        QPoly::from_coeffs(
            coeffs
                .iter()
                .map(|&c| Rational::from_integer(BigInt::from(c)))
                .collect(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree, or None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_integer_coeffs(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    pub fn neg(&self) -> Self {
        QPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let mut c = self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero);
            if let Some(b) = rhs.coeffs.get(i) {
                c += b;
            }
            out.push(c);
        }
        QPoly::from_coeffs(out)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return QPoly::zero();
        }
        QPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiply by q^e.
    pub fn shift_up(&self, e: usize) -> Self {
        if self.is_zero() {
            return QPoly::zero();
        }
        let mut coeffs = vec![Rational::zero(); e];
        coeffs.extend(self.coeffs.iter().cloned());
        QPoly { coeffs }
    }

    /// Extract (integer coefficient vector, common denominator): multiplying
    /// self by the denominator gives the integer vector exactly.
    fn clear_denominators(&self) -> (Vec<BigInt>, BigInt) {
        let mut den = BigInt::one();
        for c in &self.coeffs {
            if !c.denom().is_one() {
                den = num_integer::lcm(den, c.denom().clone());
            }
        }
        let ints = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        (ints, den)
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return QPoly::zero();
        }
        let (a, da) = self.clear_denominators();
        let (b, db) = rhs.clear_denominators();
        let prod = mul_int_slices(&a, &b);
        let den = da * db;
        let coeffs = if den.is_one() {
            prod.into_iter().map(Rational::from_integer).collect()
        } else {
            prod.into_iter()
                .map(|n| Rational::new(n, den.clone()))
                .collect()
        };
        QPoly::from_coeffs(coeffs)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = QPoly::one();
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Euclidean division: self = q*b + r with deg r < deg b.
    pub fn divrem(&self, b: &Self) -> Result<(QPoly, QPoly), PolyError> {
        if b.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        let db = b.coeffs.len() - 1;
        if self.coeffs.len() <= db {
            return Ok((QPoly::zero(), self.clone()));
        }
        let lead_inv = Rational::one() / b.coeffs[db].clone();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); rem.len() - db];
        for i in (db..rem.len()).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let q = &rem[i] * &lead_inv;
            rem[i] = Rational::zero();
            for (j, bc) in b.coeffs.iter().enumerate().take(db) {
                if !bc.is_zero() {
                    rem[i - db + j] -= &q * bc;
                }
            }
            quot[i - db] = q;
        }
        rem.truncate(db);
        Ok((QPoly::from_coeffs(quot), QPoly::from_coeffs(rem)))
    }

    /// Division asserting a zero remainder.
    pub fn exact_div(&self, b: &Self) -> Result<QPoly, PolyError> {
        let (q, r) = self.divrem(b)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(PolyError::InexactDivision)
        }
    }

    /// Remainder modulo m.
    pub fn rem_mod(&self, m: &Self) -> QPoly {
        self.divrem(m).expect("nonzero modulus").1
    }

    /// Multiplicity of the (nonconstant) divisor d in self, with the cleared
    /// quotient self / d^multiplicity. Zero input reports multiplicity 0.
    pub fn multiplicity_of(&self, d: &Self) -> (u32, QPoly) {
        if self.is_zero() {
            return (0, QPoly::zero());
        }
        let mut m = 0u32;
        let mut cur = self.clone();
        loop {
            match cur.divrem(d) {
                Ok((q, r)) if r.is_zero() => {
                    m += 1;
                    cur = q;
                }
                _ => return (m, cur),
            }
        }
    }
}

/// Integer schoolbook product, skipping zero coefficients of the shorter
/// operand in the outer loop.
fn mul_int_slices(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let (outer, inner) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    let mut acc = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, ai) in outer.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in inner.iter().enumerate() {
            if !bj.is_zero() {
                acc[i + j] += ai * bj;
            }
        }
    }
    acc
}

impl fmt::Display for QPoly {
    /// Canonical text form: "1 - q + 5/2*q^3"; zero prints as "0".
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "q")?,
                (1, false) => write!(f, "{mag}*q")?,
                (_, true) => write!(f, "q^{i}")?,
                (_, false) => write!(f, "{mag}*q^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QPoly({self})")
    }
}

/// All divisors of n in ascending order.
pub fn divisors(n: u64) -> Vec<u64> {
    assert!(n > 0);
    let mut divs = Vec::new();
    let mut i = 1;
    while i * i <= n {
        if n % i == 0 {
            divs.push(i);
            if i != n / i {
                divs.push(n / i);
            }
        }
        i += 1;
    }
    divs.sort_unstable();
    divs
}

/// q-integer [n]_{q^m} = 1 + q^m + ... + q^{m(n-1)}.
pub fn q_integer(n: u64, base_exp: u64) -> QPoly {
    assert!(base_exp >= 1);
    if n == 0 {
        return QPoly::zero();
    }
    let m = base_exp as usize;
    let mut coeffs = vec![Rational::zero(); m * (n as usize - 1) + 1];
    for j in 0..n as usize {
        coeffs[m * j] = Rational::one();
    }
    QPoly::from_coeffs(coeffs)
}

/// 1 - q^e
pub fn one_minus_q(e: u64) -> QPoly {
    QPoly::one().sub(&QPoly::q_power(e as usize))
}

/// Pure q-power Pochhammer: (q^a; q^m)_k = prod_{j<k} (1 - q^{a+mj}).
pub fn q_pochhammer_pure(a_exp: u64, m: u64, k: u64) -> QPoly {
    assert!(m >= 1);
    let mut out = QPoly::one();
    for j in 0..k {
        out = out.mul(&one_minus_q(a_exp + m * j));
    }
    out
}

static CYCLOTOMIC_MEMO: RwLock<Option<HashMap<u64, Arc<QPoly>>>> = RwLock::new(None);

/// n-th cyclotomic polynomial, by exact division
/// Phi_n = (q^n - 1) / prod_{d|n, d<n} Phi_d, memoized per process.
pub fn cyclotomic(n: u64) -> Arc<QPoly> {
    assert!(n >= 1);
    if let Some(memo) = CYCLOTOMIC_MEMO.read().unwrap().as_ref() {
        if let Some(p) = memo.get(&n) {
            return Arc::clone(p);
        }
    }
    let phi = if n == 1 {
        QPoly::from_i64_coeffs(&[-1, 1])
    } else {
        let mut num = QPoly::q_power(n as usize);
        num = num.sub(&QPoly::one());
        for d in divisors(n) {
            if d < n {
                let phi_d = cyclotomic(d);
                num = num
                    .exact_div(&phi_d)
                    .expect("cyclotomic recursion divides exactly");
            }
        }
        num
    };
    let arc = Arc::new(phi);
    let mut guard = CYCLOTOMIC_MEMO.write().unwrap();
    let memo = guard.get_or_insert_with(HashMap::new);
    Arc::clone(memo.entry(n).or_insert_with(|| Arc::clone(&arc)))
}

/// Load previously computed cyclotomic polynomials from a cache file written
/// by [`save_cyclotomic_cache`]. Returns the number of entries loaded.
pub fn load_cyclotomic_cache(path: &std::path::Path) -> std::io::Result<usize> {
    let file = std::fs::File::open(path)?;
    let reader = std::io::BufReader::new(file);
    let mut loaded = 0usize;
    let mut guard = CYCLOTOMIC_MEMO.write().unwrap();
    let memo = guard.get_or_insert_with(HashMap::new);
    for line in reader.lines() {
        let line = line?;
        let Some((idx, rest)) = line.split_once(':') else {
            continue;
        };
        let Ok(n) = idx.parse::<u64>() else { continue };
        let coeffs: Option<Vec<Rational>> = rest
            .split(',')
            .map(|tok| tok.parse::<Integer>().ok().map(Rational::from_integer))
            .collect();
        if let Some(coeffs) = coeffs {
            memo.insert(n, Arc::new(QPoly::from_coeffs(coeffs)));
            loaded += 1;
        }
    }
    Ok(loaded)
}

/// Persist the in-process cyclotomic memo table. One line per polynomial:
/// `n:c0,c1,...` with integer coefficients.
pub fn save_cyclotomic_cache(path: &std::path::Path) -> std::io::Result<usize> {
    let guard = CYCLOTOMIC_MEMO.read().unwrap();
    let Some(memo) = guard.as_ref() else {
        return Ok(0);
    };
    let mut entries: Vec<(u64, Arc<QPoly>)> =
        memo.iter().map(|(n, p)| (*n, Arc::clone(p))).collect();
    entries.sort_by_key(|(n, _)| *n);
    let mut file = std::fs::File::create(path)?;
    for (n, p) in &entries {
        let coeffs: Vec<String> = p.coeffs().iter().map(|c| c.numer().to_string()).collect();
        writeln!(file, "{}:{}", n, coeffs.join(","))?;
    }
    Ok(entries.len())
}

/// Laurent polynomial in q: coefficient list starting at exponent `offset`
/// (which may be negative). Canonical: first and last stored coefficients
/// nonzero unless the polynomial is zero.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct QLaurentPoly {
    offset: i64,
    coeffs: Vec<Rational>,
}

impl QLaurentPoly {
    pub fn zero() -> Self {
        QLaurentPoly::default()
    }

    pub fn one() -> Self {
        QLaurentPoly::from_qpoly(&QPoly::one(), 0)
    }

    /// c * q^e
    pub fn monomial(c: Rational, e: i64) -> Self {
        QLaurentPoly::normalized(e, vec![c])
    }

    pub fn from_qpoly(p: &QPoly, shift: i64) -> Self {
        QLaurentPoly::normalized(shift, p.coeffs().to_vec())
    }

    fn normalized(mut offset: i64, mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        let lead_zeros = coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead_zeros > 0 {
            coeffs.drain(..lead_zeros);
            offset += lead_zeros as i64;
        }
        if coeffs.is_empty() {
            offset = 0;
        }
        QLaurentPoly { offset, coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Lowest exponent present (0 for the zero polynomial).
    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Highest exponent present.
    pub fn max_exp(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.offset + self.coeffs.len() as i64 - 1)
        }
    }

    pub fn neg(&self) -> Self {
        QLaurentPoly {
            offset: self.offset,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let lo = self.offset.min(rhs.offset);
        let hi = (self.offset + self.coeffs.len() as i64).max(rhs.offset + rhs.coeffs.len() as i64);
        let mut coeffs = vec![Rational::zero(); (hi - lo) as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[(self.offset - lo) as usize + i] += c;
        }
        for (i, c) in rhs.coeffs.iter().enumerate() {
            coeffs[(rhs.offset - lo) as usize + i] += c;
        }
        QLaurentPoly::normalized(lo, coeffs)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return QLaurentPoly::zero();
        }
        let a = QPoly::from_coeffs(self.coeffs.clone());
        let b = QPoly::from_coeffs(rhs.coeffs.clone());
        QLaurentPoly::from_qpoly(&a.mul(&b), self.offset + rhs.offset)
    }

    pub fn shift(&self, e: i64) -> Self {
        if self.is_zero() {
            return QLaurentPoly::zero();
        }
        QLaurentPoly {
            offset: self.offset + e,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = QLaurentPoly::one();
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }
}

impl fmt::Display for QLaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = self.offset + i as i64;
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match (e, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "q")?,
                (1, false) => write!(f, "{mag}*q")?,
                (_, true) => write!(f, "q^{e}")?,
                (_, false) => write!(f, "{mag}*q^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for QLaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QLaurentPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn q_integer_examples() {
        assert_eq!(q_integer(4, 1), QPoly::from_i64_coeffs(&[1, 1, 1, 1]));
        assert_eq!(q_integer(1, 1), QPoly::one());
        assert_eq!(q_integer(3, 2), QPoly::from_i64_coeffs(&[1, 0, 1, 0, 1]));
        assert_eq!(q_integer(0, 1), QPoly::zero());
    }

    #[test]
    fn cyclotomic_examples() {
        assert_eq!(*cyclotomic(1), QPoly::from_i64_coeffs(&[-1, 1]));
        assert_eq!(*cyclotomic(6), QPoly::from_i64_coeffs(&[1, -1, 1]));
        assert_eq!(*cyclotomic(12), QPoly::from_i64_coeffs(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn pochhammer_examples() {
        assert_eq!(q_pochhammer_pure(1, 4, 0), QPoly::one());
        // (1-q)(1-q^3) = 1 - q - q^3 + q^4
        assert_eq!(
            q_pochhammer_pure(1, 2, 2),
            QPoly::from_i64_coeffs(&[1, -1, 0, -1, 1])
        );
        assert_eq!(
            q_pochhammer_pure(2, 4, 1),
            QPoly::from_i64_coeffs(&[1, 0, -1])
        );
    }

    #[test]
    fn divrem_examples() {
        let (q, r) = QPoly::from_i64_coeffs(&[-1, 0, 1])
            .divrem(&QPoly::from_i64_coeffs(&[-1, 1]))
            .unwrap();
        assert_eq!(q, QPoly::from_i64_coeffs(&[1, 1]));
        assert!(r.is_zero());

        // [6] / Phi_3 = Phi_2 * Phi_6
        let (q, r) = q_integer(6, 1).divrem(&cyclotomic(3)).unwrap();
        assert!(r.is_zero());
        assert_eq!(q, cyclotomic(2).mul(&cyclotomic(6)));

        let (q, r) = QPoly::from_i64_coeffs(&[1, 1])
            .divrem(&QPoly::from_i64_coeffs(&[0, 0, 1]))
            .unwrap();
        assert!(q.is_zero());
        assert_eq!(r, QPoly::from_i64_coeffs(&[1, 1]));

        assert_eq!(
            QPoly::one().divrem(&QPoly::zero()),
            Err(PolyError::DivisionByZero)
        );
    }

    #[test]
    fn q_integer_cyclotomic_factorization() {
        for n in 2..=60u64 {
            let mut prod = QPoly::one();
            for d in divisors(n) {
                if d > 1 {
                    prod = prod.mul(&cyclotomic(d));
                }
            }
            assert_eq!(prod, q_integer(n, 1), "factorization of [{n}]");
        }
    }

    #[test]
    fn q_integer_base2_factorization_odd() {
        for n in (3..=25u64).step_by(2) {
            let mut prod = QPoly::one();
            for d in divisors(n) {
                if d > 1 {
                    prod = prod.mul(&cyclotomic(d)).mul(&cyclotomic(2 * d));
                }
            }
            assert_eq!(prod, q_integer(n, 2), "factorization of [{n}]_(q^2)");
        }
    }

    #[test]
    fn cyclotomic_at_one() {
        for n in 2..=30u64 {
            let val = cyclotomic(n).eval(&Rational::one());
            let divs = divisors(n);
            // Phi_n(1) = p for prime powers p^k, else 1
            let expected = {
                let small_primes = divs.iter().copied().filter(|d| {
                    *d > 1 && divisors(*d).len() == 2
                });
                let primes: Vec<u64> = small_primes.collect();
                if primes.len() == 1 {
                    Rational::from_integer(BigInt::from(primes[0]))
                } else {
                    Rational::one()
                }
            };
            assert_eq!(val, expected, "Phi_{n}(1)");
        }
    }

    #[test]
    fn display_form() {
        assert_eq!(q_integer(4, 1).to_string(), "1 + q + q^2 + q^3");
        assert_eq!(cyclotomic(6).to_string(), "1 - q + q^2");
        assert_eq!(QPoly::zero().to_string(), "0");
        let p = QPoly::from_coeffs(vec![crate::arith::rational(-5, 2), crate::arith::rational(1, 3)]);
        assert_eq!(p.to_string(), "-5/2 + 1/3*q");
    }

    #[test]
    fn laurent_basics() {
        let a = QLaurentPoly::monomial(Rational::one(), -2);
        let b = QLaurentPoly::from_qpoly(&q_integer(3, 1), 0);
        let prod = a.mul(&b);
        assert_eq!(prod.offset(), -2);
        assert_eq!(prod.max_exp(), Some(0));
        assert!(a.sub(&a).is_zero());
        assert_eq!(a.to_string(), "q^-2");
    }

    #[test]
    fn cyclotomic_cache_round_trip() {
        let dir = std::env::temp_dir().join("qcong-cyclotomic-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("cache.txt");
        cyclotomic(15);
        let saved = save_cyclotomic_cache(&path).unwrap();
        assert!(saved > 0);
        let loaded = load_cyclotomic_cache(&path).unwrap();
        assert_eq!(loaded, saved);
        assert_eq!(*cyclotomic(15), q_integer(15, 1).exact_div(&cyclotomic(3)).unwrap().exact_div(&cyclotomic(5)).unwrap());
        let _ = std::fs::remove_file(&path);
    }

    fn arb_poly(max_deg: usize) -> impl Strategy<Value = QPoly> {
        proptest::collection::vec(-9i64..=9, 0..=max_deg + 1)
            .prop_map(|v| QPoly::from_i64_coeffs(&v))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn divrem_round_trip(a in arb_poly(8), b in arb_poly(5)) {
            prop_assume!(!b.is_zero());
            let (q, r) = a.divrem(&b).unwrap();
            prop_assert_eq!(q.mul(&b).add(&r), a);
            if !r.is_zero() {
                prop_assert!(r.degree().unwrap() < b.degree().unwrap());
            }
        }

        #[test]
        fn mul_commutes_and_distributes(a in arb_poly(6), b in arb_poly(6), c in arb_poly(6)) {
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        }
    }
}
