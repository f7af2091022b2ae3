//! Truncated formal power series in one central parameter `t`.
//!
//! A series of order `r` stores exactly the coefficients of `t^0, …, t^r`;
//! everything beyond the order is unknown, not zero.  Binary operations
//! therefore truncate to the smaller operand order.  All coefficient
//! arithmetic is exact.

use std::fmt;

use super::scalar::FieldElement;
use crate::error::Error;

/// Truncated power series: coefficient vector of length `order + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncSeries {
    coeffs: Vec<FieldElement>,
}

impl TruncSeries {
    /// Series with the given coefficients for `t^0, …, t^r`.
    pub fn from_coeffs(coeffs: Vec<FieldElement>) -> Self {
        assert!(!coeffs.is_empty(), "a series carries at least t^0");
        TruncSeries { coeffs }
    }

    /// Constant series `c + 0·t + … + 0·t^r`.
    pub fn constant(c: FieldElement, r: usize) -> Self {
        let mut coeffs = vec![FieldElement::zero(); r + 1];
        coeffs[0] = c;
        TruncSeries { coeffs }
    }

    pub fn zero(r: usize) -> Self {
        TruncSeries::constant(FieldElement::zero(), r)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, j: usize) -> &FieldElement {
        &self.coeffs[j]
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn constant_term(&self) -> &FieldElement {
        &self.coeffs[0]
    }

    /// All known coefficients above `t^0` vanish.
    pub fn is_constant(&self) -> bool {
        self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Drop coefficients above `t^r`; fails if `r` exceeds the known order.
    pub fn truncate(&self, r: usize) -> Result<TruncSeries, Error> {
        if r > self.order() {
            return Err(Error::input(format!(
                "cannot truncate order-{} series at order {r}",
                self.order()
            )));
        }
        Ok(TruncSeries {
            coeffs: self.coeffs[..=r].to_vec(),
        })
    }

    pub fn add(&self, other: &TruncSeries) -> TruncSeries {
        let r = self.order().min(other.order());
        let coeffs = (0..=r)
            .map(|j| self.coeffs[j].add(&other.coeffs[j]))
            .collect();
        TruncSeries { coeffs }
    }

    pub fn sub(&self, other: &TruncSeries) -> TruncSeries {
        let r = self.order().min(other.order());
        let coeffs = (0..=r)
            .map(|j| self.coeffs[j].sub(&other.coeffs[j]))
            .collect();
        TruncSeries { coeffs }
    }

    /// Truncated Cauchy product at the smaller operand order.
    pub fn mul(&self, other: &TruncSeries) -> TruncSeries {
        let r = self.order().min(other.order());
        let mut coeffs = vec![FieldElement::zero(); r + 1];
        for i in 0..=r {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=(r - i) {
                if other.coeffs[j].is_zero() {
                    continue;
                }
                let prod = self.coeffs[i].mul(&other.coeffs[j]);
                coeffs[i + j] = coeffs[i + j].add(&prod);
            }
        }
        TruncSeries { coeffs }
    }

    pub fn scale(&self, c: &FieldElement) -> TruncSeries {
        TruncSeries {
            coeffs: self.coeffs.iter().map(|k| k.mul(c)).collect(),
        }
    }

    pub fn neg(&self) -> TruncSeries {
        TruncSeries {
            coeffs: self.coeffs.iter().map(|k| k.neg()).collect(),
        }
    }

    /// Formal `d/dt`; the result's order drops by one.
    pub fn derive(&self) -> Result<TruncSeries, Error> {
        if self.order() == 0 {
            return Err(Error::input(
                "cannot differentiate a series known only at t^0".to_string(),
            ));
        }
        let coeffs = (1..=self.order())
            .map(|j| self.coeffs[j].mul(&FieldElement::from_i64(j as i64)))
            .collect();
        Ok(TruncSeries { coeffs })
    }
}

impl fmt::Display for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rendered: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", rendered.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar::rational_from_i64;

    fn s(vals: &[i64]) -> TruncSeries {
        TruncSeries::from_coeffs(vals.iter().map(|&v| FieldElement::from_i64(v)).collect())
    }

    #[test]
    fn product_truncates_to_smaller_order() {
        let a = s(&[1, 1, 0, 0]); // 1 + t, order 3
        let b = s(&[1, -1]); // 1 - t, order 1
        let p = a.mul(&b);
        assert_eq!(p.order(), 1);
        assert_eq!(p, s(&[1, 0]));
    }

    #[test]
    fn derivative_shifts_and_scales() {
        // d/dt (2 + 3t + 5t^2) = 3 + 10t
        let a = s(&[2, 3, 5]);
        assert_eq!(a.derive().unwrap(), s(&[3, 10]));
        assert!(s(&[7]).derive().is_err());
    }

    #[test]
    fn truncation_respects_known_order() {
        let a = s(&[1, 2, 3]);
        assert_eq!(a.truncate(1).unwrap(), s(&[1, 2]));
        assert!(a.truncate(5).is_err());
    }

    #[test]
    fn constant_detection_sees_only_known_coefficients() {
        assert!(s(&[4, 0, 0]).is_constant());
        assert!(!s(&[4, 0, 1]).is_constant());
        let half = TruncSeries::constant(FieldElement::Rat(rational_from_i64(1, 2)), 2);
        assert!(half.is_constant());
        assert!(!half.is_zero());
    }
}
