//! Scalar arithmetic for the coefficient fields.
//!
//! Two fields occur: the rationals themselves, and rational functions in the
//! residue variables of a coordinate prime.  [`FieldElement`] is the tagged
//! union the rest of the crate computes with; mixed arithmetic promotes the
//! rational side into the rational-function field, so `1/n! · (z^2/1)` and
//! friends just work.
//!
//! Rational functions are *not* reduced by multivariate gcd.  Equality is
//! decided by cross-multiplication, and the only normalisation applied is
//! scalar: numerator and denominator are divided by the signed content of
//! the denominator, so denominators have coprime integer coefficients and a
//! positive leading coefficient.  This keeps every operation gcd-free while
//! still giving a deterministic printed form.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::{MultiPoly, PolyRing};
use crate::error::Error;

/// Arbitrary-precision rational number.  Always stored reduced with a
/// positive denominator; zero is `0/1`.
pub type Rational = BigRational;

/// Convenience constructor for small literals.
pub fn rational_from_i64(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Parse `p` or `p/q` with an optional leading sign.
pub fn rational_from_str(s: &str) -> Result<Rational, Error> {
    s.trim()
        .parse::<BigRational>()
        .map_err(|_| Error::input(format!("malformed rational literal `{s}`")))
}

// ---------------------------------------------------------------------------
// Rational functions
// ---------------------------------------------------------------------------

/// A quotient of two polynomials with rational coefficients over a fixed
/// residue-variable ring.  Invariants: the denominator is nonzero with
/// content 1 and positive leading coefficient, both parts have plain
/// rational coefficients, and the zero function is `0/1`.
#[derive(Debug, Clone)]
pub struct RationalFunction {
    num: MultiPoly,
    den: MultiPoly,
}

impl RationalFunction {
    /// Build `num/den`, normalising the denominator by its signed content.
    /// Panics if `den` is zero; callers guard divisions.
    pub fn new(num: MultiPoly, den: MultiPoly) -> Self {
        assert!(
            Arc::ptr_eq(num.ring(), den.ring()) || num.ring() == den.ring(),
            "rational function parts must share a ring"
        );
        assert!(!den.is_zero(), "zero denominator in rational function");
        assert!(
            num.has_rational_coeffs() && den.has_rational_coeffs(),
            "rational function parts must have rational coefficients"
        );
        if num.is_zero() {
            let one = MultiPoly::one(num.ring().clone());
            return RationalFunction { num, den: one };
        }
        let scale = signed_content(&den);
        let inv = FieldElement::Rat(scale.recip());
        RationalFunction {
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }

    /// The function `p/1`.
    pub fn from_poly(num: MultiPoly) -> Self {
        let one = MultiPoly::one(num.ring().clone());
        RationalFunction::new(num, one)
    }

    /// Constant `c/1` over `ring`.
    pub fn constant(ring: Arc<PolyRing>, c: Rational) -> Self {
        RationalFunction::from_poly(MultiPoly::constant(ring, FieldElement::Rat(c)))
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        self.num.ring()
    }

    pub fn numerator(&self) -> &MultiPoly {
        &self.num
    }

    pub fn denominator(&self) -> &MultiPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Is this function a rational constant?  Decided without gcd: `n/d ∈ k`
    /// iff `n = c·d` for the candidate `c = lc(n)/lc(d)`.
    pub fn as_rational_constant(&self) -> Option<Rational> {
        if self.num.is_zero() {
            return Some(Rational::zero());
        }
        let c = match (self.num.leading_rational(), self.den.leading_rational()) {
            (Some(n), Some(d)) => n / d,
            _ => return None,
        };
        let scaled = self.den.scale(&FieldElement::Rat(c.clone()));
        if scaled == self.num {
            Some(c)
        } else {
            None
        }
    }

    pub fn add(&self, other: &RationalFunction) -> RationalFunction {
        let num = &(&self.num * &other.den) + &(&other.num * &self.den);
        let den = &self.den * &other.den;
        RationalFunction::new(num, den)
    }

    pub fn sub(&self, other: &RationalFunction) -> RationalFunction {
        let num = &(&self.num * &other.den) - &(&other.num * &self.den);
        let den = &self.den * &other.den;
        RationalFunction::new(num, den)
    }

    pub fn mul(&self, other: &RationalFunction) -> RationalFunction {
        RationalFunction::new(&self.num * &other.num, &self.den * &other.den)
    }

    pub fn neg(&self) -> RationalFunction {
        RationalFunction {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inverse(&self) -> Option<RationalFunction> {
        if self.is_zero() {
            None
        } else {
            Some(RationalFunction::new(self.den.clone(), self.num.clone()))
        }
    }
}

/// Cross-multiplied equality: `a/b = c/d` iff `a·d = c·b`.
impl PartialEq for RationalFunction {
    fn eq(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }
}

impl Eq for RationalFunction {}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

/// Signed content of a polynomial with rational coefficients: the positive
/// rational `g` with `p/g` having coprime integer coefficients, carrying the
/// sign of the leading coefficient.
fn signed_content(p: &MultiPoly) -> Rational {
    let mut num_gcd = BigInt::zero();
    let mut den_lcm = BigInt::one();
    for (_, c) in p.terms() {
        let r = match c {
            FieldElement::Rat(r) => r,
            FieldElement::Fun(_) => unreachable!("checked rational coefficients"),
        };
        num_gcd = num_bigint_gcd(&num_gcd, r.numer());
        den_lcm = num_bigint_lcm(&den_lcm, r.denom());
    }
    let mut content = Rational::new(num_gcd, den_lcm);
    if let Some(lc) = p.leading_rational() {
        if lc.is_negative() {
            content = -content;
        }
    }
    content
}

fn num_bigint_gcd(a: &BigInt, b: &BigInt) -> BigInt {
    use num_traits::sign::Signed as _;
    let mut a = a.abs();
    let mut b = b.abs();
    while !b.is_zero() {
        let r = &a % &b;
        a = b;
        b = r;
    }
    a
}

fn num_bigint_lcm(a: &BigInt, b: &BigInt) -> BigInt {
    if a.is_zero() || b.is_zero() {
        return BigInt::zero();
    }
    let g = num_bigint_gcd(a, b);
    (a / &g) * b
}

// ---------------------------------------------------------------------------
// Field elements
// ---------------------------------------------------------------------------

/// An element of the active coefficient field: either a plain rational or a
/// rational function in residue variables.  Mixed arithmetic promotes the
/// rational side.
#[derive(Debug, Clone)]
pub enum FieldElement {
    Rat(Rational),
    Fun(RationalFunction),
}

impl FieldElement {
    pub fn zero() -> Self {
        FieldElement::Rat(Rational::zero())
    }

    pub fn one() -> Self {
        FieldElement::Rat(Rational::one())
    }

    pub fn from_i64(n: i64) -> Self {
        FieldElement::Rat(rational_from_i64(n, 1))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElement::Rat(r) => r.is_zero(),
            FieldElement::Fun(f) => f.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        self == &FieldElement::one()
    }

    /// The value as a plain rational, if it is one (a `Fun` variant may still
    /// be a rational constant, e.g. `(2z)/(z) = 2` by cross-multiplication).
    pub fn as_rational(&self) -> Option<Rational> {
        match self {
            FieldElement::Rat(r) => Some(r.clone()),
            FieldElement::Fun(f) => f.as_rational_constant(),
        }
    }

    fn promote(&self, ring: &Arc<PolyRing>) -> RationalFunction {
        match self {
            FieldElement::Rat(r) => RationalFunction::constant(ring.clone(), r.clone()),
            FieldElement::Fun(f) => {
                assert!(
                    Arc::ptr_eq(f.ring(), ring) || f.ring() == ring,
                    "rational functions from different residue rings"
                );
                f.clone()
            }
        }
    }

    fn binop(
        &self,
        other: &FieldElement,
        rat: impl Fn(&Rational, &Rational) -> Rational,
        fun: impl Fn(&RationalFunction, &RationalFunction) -> RationalFunction,
    ) -> FieldElement {
        match (self, other) {
            (FieldElement::Rat(a), FieldElement::Rat(b)) => FieldElement::Rat(rat(a, b)),
            (FieldElement::Fun(a), _) => {
                FieldElement::Fun(fun(a, &other.promote(a.ring())))
            }
            (_, FieldElement::Fun(b)) => FieldElement::Fun(fun(&self.promote(b.ring()), b)),
        }
    }

    pub fn add(&self, other: &FieldElement) -> FieldElement {
        self.binop(other, |a, b| a + b, |a, b| a.add(b))
    }

    pub fn sub(&self, other: &FieldElement) -> FieldElement {
        self.binop(other, |a, b| a - b, |a, b| a.sub(b))
    }

    pub fn mul(&self, other: &FieldElement) -> FieldElement {
        self.binop(other, |a, b| a * b, |a, b| a.mul(b))
    }

    pub fn neg(&self) -> FieldElement {
        match self {
            FieldElement::Rat(r) => FieldElement::Rat(-r),
            FieldElement::Fun(f) => FieldElement::Fun(f.neg()),
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inverse(&self) -> Option<FieldElement> {
        match self {
            FieldElement::Rat(r) => {
                if r.is_zero() {
                    None
                } else {
                    Some(FieldElement::Rat(r.recip()))
                }
            }
            FieldElement::Fun(f) => f.inverse().map(FieldElement::Fun),
        }
    }

    /// Exact division; panics on a zero divisor (callers guard pivots).
    pub fn div(&self, other: &FieldElement) -> FieldElement {
        let inv = other
            .inverse()
            .expect("division by zero field element");
        self.mul(&inv)
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (FieldElement::Rat(a), FieldElement::Rat(b)) => a == b,
            (FieldElement::Fun(a), FieldElement::Fun(b)) => a == b,
            (FieldElement::Rat(_), FieldElement::Fun(b)) => &self.promote(b.ring()) == b,
            (FieldElement::Fun(a), FieldElement::Rat(_)) => a == &other.promote(a.ring()),
        }
    }
}

impl Eq for FieldElement {}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElement::Rat(r) => write!(f, "{r}"),
            FieldElement::Fun(fun) => write!(f, "{fun}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::MonomialOrder;

    fn zring() -> Arc<PolyRing> {
        PolyRing::new(&["z"], MonomialOrder::GrevLex)
    }

    fn zpoly(coeffs: &[(i64, u32)]) -> MultiPoly {
        // coeffs as (coefficient, power of z)
        let ring = zring();
        let mut p = MultiPoly::zero(ring.clone());
        for &(c, e) in coeffs {
            let term = MultiPoly::from_term(
                ring.clone(),
                super::super::poly::Monomial(vec![e]),
                FieldElement::from_i64(c),
            );
            p = &p + &term;
        }
        p
    }

    #[test]
    fn rational_literals_round_trip() {
        let r = rational_from_str("-22/4").unwrap();
        assert_eq!(r, rational_from_i64(-11, 2));
        assert_eq!(r.to_string(), "-11/2");
        assert_eq!(rational_from_str("7").unwrap().to_string(), "7");
        assert!(rational_from_str("1/0").is_err() || rational_from_str("1/0").is_ok());
    }

    #[test]
    fn rational_invariants_hold_after_arithmetic() {
        let a = rational_from_i64(6, -4);
        assert_eq!(a, rational_from_i64(-3, 2));
        assert!(a.denom() > &BigInt::zero());
        let z = &a + &rational_from_i64(3, 2);
        assert!(z.is_zero());
        assert_eq!(z.denom(), &BigInt::one());
    }

    #[test]
    fn cross_multiplied_equality_ignores_common_factors() {
        // z^2/z = (z^3 + z^2)/(z^2 + z) without any gcd computation.
        let f = RationalFunction::new(zpoly(&[(1, 2)]), zpoly(&[(1, 1)]));
        let g = RationalFunction::new(zpoly(&[(1, 3), (1, 2)]), zpoly(&[(1, 2), (1, 1)]));
        assert_eq!(f, g);
        let h = RationalFunction::new(zpoly(&[(1, 2)]), zpoly(&[(1, 1), (1, 0)]));
        assert_ne!(f, h);
    }

    #[test]
    fn denominator_is_content_normalised_and_positive() {
        // 1 / (-2z) normalises to a denominator with content 1, positive lead.
        let f = RationalFunction::new(zpoly(&[(1, 0)]), zpoly(&[(-2, 1)]));
        assert_eq!(f.denominator(), &zpoly(&[(1, 1)]));
        let expected_num = MultiPoly::constant(
            zring(),
            FieldElement::Rat(rational_from_i64(-1, 2)),
        );
        assert_eq!(f.numerator(), &expected_num);
    }

    #[test]
    fn field_axioms_on_mixed_variants() {
        let half = FieldElement::Rat(rational_from_i64(1, 2));
        let z = FieldElement::Fun(RationalFunction::from_poly(zpoly(&[(1, 1)])));
        let sum = half.add(&z);
        // (1/2 + z) - z == 1/2
        assert_eq!(sum.sub(&z), half);
        // z * z^-1 == 1
        let inv = z.inverse().unwrap();
        assert!(z.mul(&inv).is_one());
        // zero has no inverse
        assert!(FieldElement::zero().inverse().is_none());
        // distributivity spot check
        let lhs = half.mul(&sum);
        let rhs = half.mul(&half).add(&half.mul(&z));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn rational_constant_detection_is_cross_multiplied() {
        // (2z + 2)/(z + 1) = 2 without gcd.
        let f = RationalFunction::new(zpoly(&[(2, 1), (2, 0)]), zpoly(&[(1, 1), (1, 0)]));
        assert_eq!(f.as_rational_constant(), Some(rational_from_i64(2, 1)));
        let g = RationalFunction::from_poly(zpoly(&[(1, 1)]));
        assert_eq!(g.as_rational_constant(), None);
        assert_eq!(
            FieldElement::Fun(f).as_rational(),
            Some(rational_from_i64(2, 1))
        );
    }
}
