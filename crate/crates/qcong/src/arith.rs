//! Arbitrary-precision integer and rational arithmetic.
//!
//! Thin layer over `num-bigint`/`num-rational` adding the number-theoretic
//! operations the verification pipelines need: p-adic valuation of rationals,
//! reduction of a rational modulo a prime power, modular inverses, and the
//! Legendre symbol.

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision signed integer.
pub type Integer = BigInt;

/// Arbitrary-precision rational, always stored in lowest terms with a
/// positive denominator (enforced by `num-rational` on construction).
pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ArithError {
    #[error("valuation of zero undefined")]
    ValuationOfZero,
    #[error("denominator not coprime to modulus")]
    DenominatorNotCoprime,
    #[error("modulus must be >= 2")]
    BadModulus,
}

/// Convenience constructor from an `i64` pair; panics on zero denominator.
pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Exact power-of-p dividing a nonzero integer.
pub fn int_padic_valuation(n: &Integer, p: &Integer) -> u64 {
    assert!(!n.is_zero(), "valuation of zero undefined");
    let mut v = 0u64;
    let mut m = n.abs();
    loop {
        let (q, r) = m.div_rem(p);
        if !r.is_zero() {
            return v;
        }
        v += 1;
        m = q;
    }
}

/// p-adic valuation of a nonzero rational: nu_p(num) - nu_p(den).
pub fn padic_valuation(r: &Rational, p: &Integer) -> Result<i64, ArithError> {
    if r.is_zero() {
        return Err(ArithError::ValuationOfZero);
    }
    let vn = int_padic_valuation(r.numer(), p) as i64;
    let vd = int_padic_valuation(r.denom(), p) as i64;
    Ok(vn - vd)
}

/// Modular inverse of `a` modulo `m` via the extended Euclidean algorithm.
/// Returns `None` when gcd(a, m) != 1.
pub fn mod_inverse(a: &Integer, m: &Integer) -> Option<Integer> {
    let (mut r0, mut r1) = (m.clone(), a.mod_floor(m));
    let (mut t0, mut t1) = (Integer::zero(), Integer::one());
    while !r1.is_zero() {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        r0 = r1;
        r1 = r2;
        let t2 = &t0 - &q * &t1;
        t0 = t1;
        t1 = t2;
    }
    if r0.is_one() {
        Some(t0.mod_floor(m))
    } else {
        None
    }
}

/// Reduce a rational modulo p^e. The denominator must be coprime to p.
/// The result is the canonical residue in [0, p^e).
pub fn mod_prime_power(r: &Rational, p: &Integer, e: u32) -> Result<Integer, ArithError> {
    if e == 0 {
        return Err(ArithError::BadModulus);
    }
    let modulus = p.pow(e);
    let den = r.denom().mod_floor(&modulus);
    let den_inv = mod_inverse(&den, &modulus).ok_or(ArithError::DenominatorNotCoprime)?;
    Ok((r.numer().mod_floor(&modulus) * den_inv).mod_floor(&modulus))
}

/// Legendre symbol (a/p) for an odd prime p, by Euler's criterion.
pub fn legendre_symbol(a: &Integer, p: &Integer) -> i32 {
    let a_mod = a.mod_floor(p);
    if a_mod.is_zero() {
        return 0;
    }
    let exp = (p - 1u32) / 2u32;
    let r = a_mod.modpow(&exp, p);
    if r.is_one() {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn int(n: i64) -> Integer {
        Integer::from(n)
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(padic_valuation(&rational(5, 16), &int(2)), Ok(-4));
        assert_eq!(padic_valuation(&rational(28, 27), &int(3)), Ok(-3));
        assert_eq!(padic_valuation(&rational(49, 3), &int(7)), Ok(2));
        assert_eq!(
            padic_valuation(&Rational::zero(), &int(5)),
            Err(ArithError::ValuationOfZero)
        );
    }

    #[test]
    fn mod_prime_power_examples() {
        // 16^{-1} = 4 (mod 9), 5*4 = 20 = 2 (mod 9)
        assert_eq!(mod_prime_power(&rational(5, 16), &int(3), 2), Ok(int(2)));
        assert_eq!(mod_prime_power(&rational(7, 1), &int(7), 3), Ok(int(7)));
        assert_eq!(mod_prime_power(&rational(1, 2), &int(5), 1), Ok(int(3)));
        assert_eq!(
            mod_prime_power(&rational(1, 5), &int(5), 2),
            Err(ArithError::DenominatorNotCoprime)
        );
        // negative values map into [0, p^e)
        assert_eq!(mod_prime_power(&rational(-1, 1), &int(5), 2), Ok(int(24)));
    }

    #[test]
    fn legendre_examples() {
        assert_eq!(legendre_symbol(&int(2), &int(7)), 1);
        assert_eq!(legendre_symbol(&int(-2), &int(5)), -1);
        assert_eq!(legendre_symbol(&int(0), &int(11)), 0);
        assert_eq!(legendre_symbol(&int(-3), &int(7)), 1); // -3 = 4 = 2^2 (mod 7)
    }

    #[test]
    fn decimal_round_trip() {
        for s in ["0", "-42", "123456789012345678901234567890"] {
            let n: Integer = s.parse().unwrap();
            assert_eq!(n.to_string(), s);
        }
        for s in ["5/16", "-28/27", "7"] {
            let r: Rational = s.parse().unwrap();
            assert_eq!(r, r.to_string().parse().unwrap());
        }
    }

    proptest! {
        #[test]
        fn valuation_additive(an in -200i64..200, ad in 1i64..200, bn in -200i64..200, bd in 1i64..200) {
            prop_assume!(an != 0 && bn != 0);
            let p = int(3);
            let (a, b) = (rational(an, ad), rational(bn, bd));
            let lhs = padic_valuation(&(&a * &b), &p).unwrap();
            prop_assert_eq!(lhs, padic_valuation(&a, &p).unwrap() + padic_valuation(&b, &p).unwrap());
        }

        #[test]
        fn mod_prime_power_is_homomorphism(an in -50i64..50, ad in 1i64..50, bn in -50i64..50, bd in 1i64..50) {
            let p = int(7);
            prop_assume!(ad % 7 != 0 && bd % 7 != 0);
            let (a, b) = (rational(an, ad), rational(bn, bd));
            prop_assume!(a.denom().mod_floor(&p) != Integer::zero());
            prop_assume!(b.denom().mod_floor(&p) != Integer::zero());
            let e = 2u32;
            let m = p.pow(e);
            let sum = mod_prime_power(&(&a + &b), &p, e).unwrap();
            let prod = mod_prime_power(&(&a * &b), &p, e).unwrap();
            let ra = mod_prime_power(&a, &p, e).unwrap();
            let rb = mod_prime_power(&b, &p, e).unwrap();
            prop_assert_eq!(sum, (&ra + &rb).mod_floor(&m));
            prop_assert_eq!(prod, (&ra * &rb).mod_floor(&m));
        }

        #[test]
        fn legendre_multiplicative(a in 1i64..100, b in 1i64..100) {
            let p = int(13);
            prop_assume!(a % 13 != 0 && b % 13 != 0);
            prop_assert_eq!(
                legendre_symbol(&int(a * b), &p),
                legendre_symbol(&int(a), &p) * legendre_symbol(&int(b), &p)
            );
        }
    }
}
