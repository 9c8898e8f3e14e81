//! Laurent polynomials in the auxiliary variable x with polynomial
//! coefficients in q, fractions of such, and the congruence-testing engine
//! for moduli built from cyclotomic factors and x-specialization points.
//!
//! A modulus like `[n](1 - x q^n)(x - q^n)` is never used for remainder
//! arithmetic directly: it is decomposed into irreducible cyclotomic factors
//! Phi_d (checked by reduction of coefficients modulo Phi_d) and the two
//! specialization points x = q^{-n}, x = q^{+n} (checked by exact
//! substitution). Primitive roots of unity are never instantiated; all
//! root-of-unity arguments happen inside Q[q]/(Phi_d).
//!
//! Divisibility by Phi_d is assessed on the fraction in lowest terms: the
//! Phi_d-multiplicity of the numerator minus that of the denominator must be
//! positive. Numerator and denominator of a term frequently share cyclotomic
//! content (the base-q^2 Pochhammer quotients do), so testing the raw
//! coefficient reduction alone would reject well-formed congruences.

use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::Instant;

use serde::Serialize;

use crate::convolution::{Fraction, Ring};
use crate::qpoly::{cyclotomic, QLaurentPoly, QPoly};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CongruenceError {
    #[error("specialization kills denominator")]
    SpecializationKillsDenominator,
    #[error("modulus meets denominator: Phi_{0} divides the reduced denominator")]
    ModulusMeetsDenominator(u64),
    #[error("zero denominator")]
    ZeroDenominator,
}

/// Laurent polynomial in x whose coefficients are polynomials in q.
/// Invariant: no zero coefficient stored; zero element is the empty map.
#[derive(Clone, PartialEq, Eq, Default, Debug)]
pub struct XLaurent {
    coeffs: BTreeMap<i64, QPoly>,
}

impl XLaurent {
    pub fn zero() -> Self {
        XLaurent::default()
    }

    pub fn one() -> Self {
        XLaurent::from_qpoly(QPoly::one())
    }

    pub fn from_qpoly(p: QPoly) -> Self {
        XLaurent::monomial(0, p)
    }

    /// p(q) * x^e
    pub fn monomial(e: i64, p: QPoly) -> Self {
        let mut coeffs = BTreeMap::new();
        if !p.is_zero() {
            coeffs.insert(e, p);
        }
        XLaurent { coeffs }
    }

    /// 1 - c(q) * x^e
    pub fn one_minus(e: i64, c: QPoly) -> Self {
        XLaurent::one().sub(&XLaurent::monomial(e, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&i64, &QPoly)> {
        self.coeffs.iter()
    }

    pub fn coeff(&self, e: i64) -> QPoly {
        self.coeffs.get(&e).cloned().unwrap_or_else(QPoly::zero)
    }

    /// Inclusive x-exponent range, None when zero.
    pub fn x_range(&self) -> Option<(i64, i64)> {
        let lo = self.coeffs.keys().next()?;
        let hi = self.coeffs.keys().next_back()?;
        Some((*lo, *hi))
    }

    fn insert_nonzero(coeffs: &mut BTreeMap<i64, QPoly>, e: i64, p: QPoly) {
        if !p.is_zero() {
            coeffs.insert(e, p);
        }
    }

    pub fn neg(&self) -> Self {
        XLaurent {
            coeffs: self.coeffs.iter().map(|(e, p)| (*e, p.neg())).collect(),
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut coeffs = self.coeffs.clone();
        for (e, p) in &rhs.coeffs {
            match coeffs.remove(e) {
                Some(cur) => Self::insert_nonzero(&mut coeffs, *e, cur.add(p)),
                None => {
                    coeffs.insert(*e, p.clone());
                }
            }
        }
        XLaurent { coeffs }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut acc: BTreeMap<i64, QPoly> = BTreeMap::new();
        for (ea, pa) in &self.coeffs {
            for (eb, pb) in &rhs.coeffs {
                let prod = pa.mul(pb);
                let e = ea + eb;
                match acc.remove(&e) {
                    Some(cur) => Self::insert_nonzero(&mut acc, e, cur.add(&prod)),
                    None => Self::insert_nonzero(&mut acc, e, prod),
                }
            }
        }
        XLaurent { coeffs: acc }
    }

    pub fn mul_qpoly(&self, p: &QPoly) -> Self {
        if p.is_zero() {
            return XLaurent::zero();
        }
        XLaurent {
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, c.mul(p))).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = XLaurent::one();
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Replace x by q^e, producing a Laurent polynomial in q.
    pub fn substitute_x(&self, e: i64) -> QLaurentPoly {
        let mut acc = QLaurentPoly::zero();
        for (xe, p) in &self.coeffs {
            acc = acc.add(&QLaurentPoly::from_qpoly(p, e * xe));
        }
        acc
    }

    /// Coefficient-wise remainder modulo m.
    pub fn reduce_mod(&self, m: &QPoly) -> Self {
        let mut coeffs = BTreeMap::new();
        for (e, p) in &self.coeffs {
            Self::insert_nonzero(&mut coeffs, *e, p.rem_mod(m));
        }
        XLaurent { coeffs }
    }

    /// Multiplicity of the irreducible polynomial p (in q alone) dividing
    /// self: the minimum multiplicity over all x-coefficients. None for the
    /// zero element (infinite multiplicity).
    pub fn multiplicity_of(&self, p: &QPoly) -> Option<u32> {
        let mut min: Option<u32> = None;
        for c in self.coeffs.values() {
            let (m, _) = c.multiplicity_of(p);
            min = Some(min.map_or(m, |cur| cur.min(m)));
            if min == Some(0) {
                break;
            }
        }
        min
    }

    /// Exact coefficient-wise division by a polynomial in q alone.
    pub fn exact_div_qpoly(&self, p: &QPoly) -> Result<Self, crate::qpoly::PolyError> {
        let mut coeffs = BTreeMap::new();
        for (e, c) in &self.coeffs {
            coeffs.insert(*e, c.exact_div(p)?);
        }
        Ok(XLaurent { coeffs })
    }
}

impl std::fmt::Display for XLaurent {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, p) in &self.coeffs {
            if first {
                first = false;
            } else {
                write!(f, " + ")?;
            }
            match e {
                0 => write!(f, "({p})")?,
                1 => write!(f, "({p})*x")?,
                _ => write!(f, "({p})*x^{e}")?,
            }
        }
        Ok(())
    }
}

/// Fraction of two [`XLaurent`] values. No cross-gcd reduction is performed;
/// equality is by cross-multiplication.
pub type QXFraction = Fraction<XLaurent>;

/// Fraction of two Laurent polynomials in q, the result of substituting
/// x := q^e into a [`QXFraction`].
pub type QFraction = Fraction<QLaurentPoly>;

impl QXFraction {
    pub fn from_xlaurent(n: XLaurent) -> Self {
        Fraction::new(n, XLaurent::one())
    }

    pub fn from_qpoly(p: QPoly) -> Self {
        Self::from_xlaurent(XLaurent::from_qpoly(p))
    }

    pub fn zero_value() -> Self {
        Self::from_xlaurent(XLaurent::zero())
    }

    pub fn one_value() -> Self {
        Self::from_xlaurent(XLaurent::one())
    }

    pub fn is_zero_value(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add_frac(&self, rhs: &Self) -> Self {
        XLaurentRing.add(self, rhs)
    }

    pub fn sub_frac(&self, rhs: &Self) -> Self {
        self.add_frac(&Fraction::new(rhs.num.neg(), rhs.den.clone()))
    }

    pub fn mul_frac(&self, rhs: &Self) -> Self {
        Fraction::new(self.num.mul(&rhs.num), self.den.mul(&rhs.den))
    }

    pub fn pow_frac(&self, e: u32) -> Self {
        Fraction::new(self.num.pow(e), self.den.pow(e))
    }

    pub fn eq_frac(&self, rhs: &Self) -> bool {
        self.num.mul(&rhs.den) == rhs.num.mul(&self.den)
    }
}

/// Ring of QXFraction values (fractions compared by cross-multiplication).
#[derive(Clone, Copy, Debug, Default)]
pub struct XLaurentRing;

impl Ring for XLaurentRing {
    type El = QXFraction;
    fn zero(&self) -> QXFraction {
        QXFraction::zero_value()
    }
    fn one(&self) -> QXFraction {
        QXFraction::one_value()
    }
    fn add(&self, a: &QXFraction, b: &QXFraction) -> QXFraction {
        Fraction::new(
            a.num.mul(&b.den).add(&b.num.mul(&a.den)),
            a.den.mul(&b.den),
        )
    }
    fn mul(&self, a: &QXFraction, b: &QXFraction) -> QXFraction {
        a.mul_frac(b)
    }
    fn eq(&self, a: &QXFraction, b: &QXFraction) -> bool {
        a.eq_frac(b)
    }
    fn is_zero(&self, a: &QXFraction) -> bool {
        a.num.is_zero()
    }
}

/// Ring of plain [`XLaurent`] polynomials (no fractions, no reduction).
#[derive(Clone, Copy, Debug, Default)]
pub struct XPolyRing;

impl Ring for XPolyRing {
    type El = XLaurent;
    fn zero(&self) -> XLaurent {
        XLaurent::zero()
    }
    fn one(&self) -> XLaurent {
        XLaurent::one()
    }
    fn add(&self, a: &XLaurent, b: &XLaurent) -> XLaurent {
        a.add(b)
    }
    fn mul(&self, a: &XLaurent, b: &XLaurent) -> XLaurent {
        a.mul(b)
    }
    fn eq(&self, a: &XLaurent, b: &XLaurent) -> bool {
        a == b
    }
    fn is_zero(&self, a: &XLaurent) -> bool {
        a.is_zero()
    }
}

/// Ring of Laurent polynomials in q (used after x-specialization).
#[derive(Clone, Copy, Debug, Default)]
pub struct LaurentRing;

impl Ring for LaurentRing {
    type El = QLaurentPoly;
    fn zero(&self) -> QLaurentPoly {
        QLaurentPoly::zero()
    }
    fn one(&self) -> QLaurentPoly {
        QLaurentPoly::one()
    }
    fn add(&self, a: &QLaurentPoly, b: &QLaurentPoly) -> QLaurentPoly {
        a.add(b)
    }
    fn mul(&self, a: &QLaurentPoly, b: &QLaurentPoly) -> QLaurentPoly {
        a.mul(b)
    }
    fn eq(&self, a: &QLaurentPoly, b: &QLaurentPoly) -> bool {
        a == b
    }
    fn is_zero(&self, a: &QLaurentPoly) -> bool {
        a.is_zero()
    }
}

/// Ring of fractions of Laurent polynomials in q.
pub type QFractionRing = crate::convolution::FractionRing<LaurentRing>;

/// Arithmetic in Q[q]/(Phi_d) lifted to Laurent polynomials in x: elements
/// are XLaurent values with all coefficients kept in remainder form.
#[derive(Clone, Debug)]
pub struct XQuotientRing {
    pub d: u64,
    pub phi: Arc<QPoly>,
}

impl XQuotientRing {
    pub fn new(d: u64) -> Self {
        XQuotientRing {
            d,
            phi: cyclotomic(d),
        }
    }

    pub fn reduce(&self, v: &XLaurent) -> XLaurent {
        v.reduce_mod(&self.phi)
    }

    /// Class of q^e; e may be negative since q has multiplicative order d.
    pub fn q_power_class(&self, e: i64) -> QPoly {
        let r = e.rem_euclid(self.d as i64) as usize;
        QPoly::q_power(r).rem_mod(&self.phi)
    }
}

impl Ring for XQuotientRing {
    type El = XLaurent;
    fn zero(&self) -> XLaurent {
        XLaurent::zero()
    }
    fn one(&self) -> XLaurent {
        XLaurent::one()
    }
    fn add(&self, a: &XLaurent, b: &XLaurent) -> XLaurent {
        a.add(b)
    }
    fn mul(&self, a: &XLaurent, b: &XLaurent) -> XLaurent {
        a.mul(b).reduce_mod(&self.phi)
    }
    fn eq(&self, a: &XLaurent, b: &XLaurent) -> bool {
        a == b
    }
    fn is_zero(&self, a: &XLaurent) -> bool {
        a.is_zero()
    }
}

/// Modulus description: a set of cyclotomic indices plus signed
/// x-specialization exponents (e stands for the factor vanishing at x = q^e;
/// both signs of a point are listed explicitly).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModulusSpec {
    pub cyclotomic_indices: std::collections::BTreeSet<u64>,
    pub x_points: Vec<i64>,
    pub description: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FactorKind {
    Cyclotomic,
    XPoint,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FactorVerdict {
    Pass,
    Fail,
    CoprimalityError,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorReport {
    pub kind: FactorKind,
    pub index_or_exp: i64,
    pub verdict: FactorVerdict,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OverallVerdict {
    Pass,
    Fail,
    Error,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CongruenceReport {
    pub description: String,
    pub factors: Vec<FactorReport>,
    pub overall: OverallVerdict,
    pub elapsed_ms: u64,
}

impl CongruenceReport {
    pub fn assemble(description: String, factors: Vec<FactorReport>, started: Instant) -> Self {
        let overall = if factors
            .iter()
            .any(|f| f.verdict == FactorVerdict::CoprimalityError)
        {
            OverallVerdict::Error
        } else if factors.iter().any(|f| f.verdict == FactorVerdict::Fail) {
            OverallVerdict::Fail
        } else {
            OverallVerdict::Pass
        };
        CongruenceReport {
            description,
            factors,
            overall,
            elapsed_ms: started.elapsed().as_millis() as u64,
        }
    }

    pub fn passed(&self) -> bool {
        self.overall == OverallVerdict::Pass
    }

    /// Zero out timing for byte-stable output.
    pub fn without_timing(mut self) -> Self {
        self.elapsed_ms = 0;
        self
    }
}

/// Replace x by q^e in a fraction. Errors when the substitution annihilates
/// the denominator.
pub fn substitute_x(f: &QXFraction, e: i64) -> Result<QFraction, CongruenceError> {
    let den = f.den.substitute_x(e);
    if den.is_zero() {
        return Err(CongruenceError::SpecializationKillsDenominator);
    }
    Ok(Fraction::new(f.num.substitute_x(e), den))
}

/// Is the fraction, in lowest terms, divisible by Phi_d?
///
/// Computed from Phi_d-multiplicities: v(num) - v(den) >= 1 is a pass,
/// = 0 a fail, < 0 the coprimality error (the reduced denominator meets the
/// modulus). A zero numerator passes for any d.
pub fn divisible_by_cyclotomic(f: &QXFraction, d: u64) -> Result<bool, CongruenceError> {
    assert!(d >= 2);
    if f.den.is_zero() {
        return Err(CongruenceError::ZeroDenominator);
    }
    if f.num.is_zero() {
        return Ok(true);
    }
    let phi = cyclotomic(d);
    let vn = f.num.multiplicity_of(&phi).expect("nonzero checked") as i64;
    let vd = f.den.multiplicity_of(&phi).expect("nonzero checked") as i64;
    if vn - vd < 0 {
        return Err(CongruenceError::ModulusMeetsDenominator(d));
    }
    Ok(vn - vd >= 1)
}

/// Check lhs = rhs modulo every factor of the modulus: each cyclotomic index
/// through [`divisible_by_cyclotomic`] of the difference, each x-point
/// through exact substitution. Factor-level coprimality failures are
/// recorded as errors, distinct from congruence failures.
pub fn check_congruence(
    lhs: &QXFraction,
    rhs: &QXFraction,
    modulus: &ModulusSpec,
) -> CongruenceReport {
    let started = Instant::now();
    let delta = lhs.sub_frac(rhs);
    let mut factors = Vec::new();
    for &d in &modulus.cyclotomic_indices {
        let verdict = match divisible_by_cyclotomic(&delta, d) {
            Ok(true) => FactorVerdict::Pass,
            Ok(false) => FactorVerdict::Fail,
            Err(_) => FactorVerdict::CoprimalityError,
        };
        factors.push(FactorReport {
            kind: FactorKind::Cyclotomic,
            index_or_exp: d as i64,
            verdict,
        });
    }
    for &e in &modulus.x_points {
        let verdict = match substitute_x(&delta, e) {
            Ok(spec) => {
                if spec.num.is_zero() {
                    FactorVerdict::Pass
                } else {
                    FactorVerdict::Fail
                }
            }
            Err(_) => FactorVerdict::CoprimalityError,
        };
        factors.push(FactorReport {
            kind: FactorKind::XPoint,
            index_or_exp: e,
            verdict,
        });
    }
    CongruenceReport::assemble(modulus.description.clone(), factors, started)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational;
    use crate::qpoly::q_integer;

    fn x_minus_q() -> XLaurent {
        XLaurent::monomial(1, QPoly::one()).sub(&XLaurent::from_qpoly(QPoly::q_power(1)))
    }

    #[test]
    fn substitute_examples() {
        // (1 - x q^2)/(x - q) at x = q^2 -> (1 - q^4)/(q^2 - q)
        let f = Fraction::new(XLaurent::one_minus(1, QPoly::q_power(2)), x_minus_q());
        let s = substitute_x(&f, 2).unwrap();
        let expect_num = QLaurentPoly::from_qpoly(&QPoly::one().sub(&QPoly::q_power(4)), 0);
        let expect_den = QLaurentPoly::from_qpoly(&QPoly::q_power(2).sub(&QPoly::q_power(1)), 0);
        assert_eq!(s.num, expect_num);
        assert_eq!(s.den, expect_den);

        // constant 1 survives any substitution
        let one = QXFraction::one_value();
        let s = substitute_x(&one, -3).unwrap();
        assert_eq!(s.num, QLaurentPoly::one());

        // x - q dies at x = q
        let f = Fraction::new(XLaurent::one(), x_minus_q());
        assert_eq!(
            substitute_x(&f, 1),
            Err(CongruenceError::SpecializationKillsDenominator)
        );
    }

    #[test]
    fn divisibility_examples() {
        // [6]*x / (x + 1) is divisible by Phi_3
        let f = Fraction::new(
            XLaurent::monomial(1, q_integer(6, 1)),
            XLaurent::monomial(1, QPoly::one()).add(&XLaurent::one()),
        );
        assert_eq!(divisible_by_cyclotomic(&f, 3), Ok(true));

        assert_eq!(
            divisible_by_cyclotomic(&QXFraction::one_value(), 5),
            Ok(false)
        );

        // (q - 1)/1 is not divisible by Phi_2 = q + 1
        let f = QXFraction::from_qpoly(QPoly::from_i64_coeffs(&[-1, 1]));
        assert_eq!(divisible_by_cyclotomic(&f, 2), Ok(false));

        // Phi_5 in the denominator only: coprimality error
        let f = Fraction::new(XLaurent::one(), XLaurent::from_qpoly(q_integer(5, 1)));
        assert_eq!(
            divisible_by_cyclotomic(&f, 5),
            Err(CongruenceError::ModulusMeetsDenominator(5))
        );

        // shared content cancels: [5]^2/[5] is divisible by Phi_5
        let f = Fraction::new(
            XLaurent::from_qpoly(q_integer(5, 1).mul(&q_integer(5, 1))),
            XLaurent::from_qpoly(q_integer(5, 1)),
        );
        assert_eq!(divisible_by_cyclotomic(&f, 5), Ok(true));

        // zero numerator is divisible by anything
        assert_eq!(
            divisible_by_cyclotomic(&QXFraction::zero_value(), 7),
            Ok(true)
        );
    }

    #[test]
    fn check_congruence_trivial() {
        let m = ModulusSpec {
            cyclotomic_indices: [5u64].into_iter().collect(),
            x_points: vec![5, -5],
            description: "test".into(),
        };
        let f = Fraction::new(
            XLaurent::monomial(1, q_integer(3, 1)),
            XLaurent::one_minus(1, QPoly::q_power(2)),
        );
        let report = check_congruence(&f, &f, &m);
        assert!(report.passed());
        assert_eq!(report.factors.len(), 3);

        let one = QXFraction::one_value();
        let zero = QXFraction::zero_value();
        let m2 = ModulusSpec {
            cyclotomic_indices: [2u64].into_iter().collect(),
            x_points: vec![],
            description: "1 vs 0".into(),
        };
        let report = check_congruence(&one, &zero, &m2);
        assert_eq!(report.overall, OverallVerdict::Fail);
        assert_eq!(report.factors[0].verdict, FactorVerdict::Fail);
    }

    /// Arithmetic in Q[q]/(Phi_d) evaluated the long way: a coefficient
    /// polynomial is mapped onto the class of q by Horner steps with a
    /// reduction after every multiplication. Used as the independent route
    /// for the root-of-unity semantics check.
    fn eval_at_root_class(p: &QPoly, ring: &XQuotientRing) -> QPoly {
        let mut acc = QPoly::zero();
        let q_class = ring.q_power_class(1);
        for c in p.coeffs().iter().rev() {
            acc = acc.mul(&q_class).rem_mod(&ring.phi);
            acc = acc.add(&QPoly::constant(c.clone()));
        }
        acc
    }

    #[test]
    fn root_of_unity_semantics_agree() {
        let polys = [
            q_integer(6, 1),
            q_integer(5, 1).mul(&QPoly::from_i64_coeffs(&[2, 0, 1])),
            QPoly::from_i64_coeffs(&[1, 1, 1, 1, 1, 1]),
            QPoly::from_i64_coeffs(&[3, -1]),
            q_integer(12, 1),
        ];
        for d in [2u64, 3, 4, 5, 6] {
            let ring = XQuotientRing::new(d);
            for (i, p) in polys.iter().enumerate() {
                for (j, den) in polys.iter().enumerate() {
                    let f = Fraction::new(
                        XLaurent::monomial(-1, p.clone()),
                        XLaurent::monomial(2, den.clone()),
                    );
                    let via_multiplicity = divisible_by_cyclotomic(&f, d);
                    let num_at_root = eval_at_root_class(p, &ring);
                    let den_at_root = eval_at_root_class(den, &ring);
                    if !den_at_root.is_zero() {
                        assert_eq!(
                            via_multiplicity,
                            Ok(num_at_root.is_zero()),
                            "d={d} num#{i} den#{j}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn fraction_cross_multiplication_equality() {
        // a/b = (a*c)/(b*c) without reduction
        let a = XLaurent::monomial(1, q_integer(4, 1));
        let b = XLaurent::one_minus(-1, QPoly::q_power(3));
        let c = XLaurent::monomial(2, QPoly::from_i64_coeffs(&[1, 5]));
        let f1 = Fraction::new(a.clone(), b.clone());
        let f2 = Fraction::new(a.mul(&c), b.mul(&c));
        assert!(f1.eq_frac(&f2));
        assert!(!f1.eq_frac(&QXFraction::one_value()));
    }

    #[test]
    fn quotient_ring_mul_reduces() {
        let ring = XQuotientRing::new(5);
        let a = XLaurent::from_qpoly(QPoly::q_power(3));
        let b = XLaurent::from_qpoly(QPoly::q_power(4));
        // q^7 = q^2 mod Phi_5 (q^5 = 1)
        assert_eq!(
            ring.mul(&a, &b),
            XLaurent::from_qpoly(ring.q_power_class(7))
        );
        assert_eq!(ring.q_power_class(-1), ring.q_power_class(4));
    }

    #[test]
    fn report_serializes_to_schema() {
        let m = ModulusSpec {
            cyclotomic_indices: [3u64].into_iter().collect(),
            x_points: vec![3, -3],
            description: "schema probe".into(),
        };
        let report = check_congruence(&QXFraction::one_value(), &QXFraction::one_value(), &m)
            .without_timing();
        let json = serde_json::to_value(&report).unwrap();
        assert_eq!(json["overall"], "pass");
        assert_eq!(json["factors"][0]["kind"], "cyclotomic");
        assert_eq!(json["factors"][1]["kind"], "x_point");
        assert_eq!(json["factors"][1]["index_or_exp"], 3);
        assert_eq!(json["elapsed_ms"], 0);
    }

    #[test]
    fn xlaurent_ring_ops() {
        let ring = XLaurentRing;
        let half = QXFraction::from_qpoly(QPoly::constant(rational(1, 2)));
        let sum = ring.add(&half, &half);
        assert!(sum.eq_frac(&QXFraction::one_value()));
        assert!(ring.is_zero(&ring.add(&half, &Fraction::new(half.num.neg(), half.den.clone()))));
    }
}
