//! Polynomial derivations `D = f_1 ∂_1 + … + f_n ∂_n` and the operators
//! built from them.
//!
//! The formal exponential `e^{tD}(g) = Σ tⁿ/n!·Dⁿ(g)` is computed with
//! polynomial coefficients ([`PolySeries`]); specialising those coefficients
//! at a prime is the solver layer's job.  A derivation may carry a quotient
//! ideal `I`, in which case construction checks `D(I) ⊆ I` so the operator
//! genuinely descends to `R/I`.
//!
//! The uniform-power diagnostics (`ell_search`, `ln_criterion`) deliberately
//! stay *diagnostics*: the least `ℓ` with `D^ℓ(g) ∈ m` for every generator
//! of `m` says nothing about `D^ℓ(q)` for a general element `q ∈ m`, and the
//! probe products exist precisely to surface such failures.  Nothing in this
//! module ever promotes them to a simplicity verdict.

use std::fmt;
use std::sync::Arc;

use num_traits::One;

use crate::algebra::same_ring;
use crate::algebra::{FieldElement, MultiPoly, PolyRing, Rational};
use crate::error::Error;
use crate::groebner::Ideal;

/// A derivation on a polynomial ring, optionally through a quotient.
#[derive(Debug, Clone)]
pub struct Derivation {
    ring: Arc<PolyRing>,
    coeffs: Vec<MultiPoly>,
    quotient_ideal: Option<Ideal>,
}

impl Derivation {
    /// Derivation on the full polynomial ring with `D(x_i) = coeffs[i]`.
    pub fn new(ring: Arc<PolyRing>, coeffs: Vec<MultiPoly>) -> Self {
        assert_eq!(coeffs.len(), ring.nvars(), "one coefficient per variable");
        for c in &coeffs {
            assert!(same_ring(c.ring(), &ring), "coefficient from a foreign ring");
        }
        Derivation {
            ring,
            coeffs,
            quotient_ideal: None,
        }
    }

    /// Derivation on `R/I`; fails unless `D(I) ⊆ I`.
    pub fn with_quotient_ideal(
        ring: Arc<PolyRing>,
        coeffs: Vec<MultiPoly>,
        ideal: Ideal,
    ) -> Result<Self, Error> {
        let d = Derivation::new(ring, coeffs);
        if !d.stabilizes(&ideal)? {
            return Err(Error::input(
                "derivation does not stabilize the quotient ideal".to_string(),
            ));
        }
        Ok(Derivation {
            quotient_ideal: Some(ideal),
            ..d
        })
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn coeffs(&self) -> &[MultiPoly] {
        &self.coeffs
    }

    pub fn quotient_ideal(&self) -> Option<&Ideal> {
        self.quotient_ideal.as_ref()
    }

    /// Max total degree of the coefficient polynomials.
    pub fn max_coeff_degree(&self) -> u32 {
        self.coeffs.iter().map(|c| c.total_degree()).max().unwrap_or(0)
    }

    /// `D(g) = Σ f_i ∂g/∂x_i`.
    pub fn apply(&self, g: &MultiPoly) -> MultiPoly {
        assert!(same_ring(g.ring(), &self.ring), "argument from a foreign ring");
        let mut acc = MultiPoly::zero(self.ring.clone());
        for (i, f) in self.coeffs.iter().enumerate() {
            if f.is_zero() {
                continue;
            }
            let p = g.partial(i);
            if p.is_zero() {
                continue;
            }
            acc = &acc + &(f * &p);
        }
        acc
    }

    /// Iterated application `D^n(g)`.
    pub fn apply_power(&self, g: &MultiPoly, n: u32) -> MultiPoly {
        let mut out = g.clone();
        for _ in 0..n {
            out = self.apply(&out);
        }
        out
    }

    /// Truncated formal exponential `e^{tD}(g)`: a polynomial-coefficient
    /// series whose `t^n` coefficient is `Dⁿ(g)/n!`.
    pub fn exp_map(&self, g: &MultiPoly, r: usize) -> PolySeries {
        let mut coeffs = Vec::with_capacity(r + 1);
        coeffs.push(g.clone());
        let mut dn = g.clone();
        let mut factinv = Rational::one();
        for n in 1..=r {
            dn = self.apply(&dn);
            factinv /= Rational::from_integer(n.into());
            coeffs.push(dn.scale(&FieldElement::Rat(factinv.clone())));
        }
        PolySeries { coeffs }
    }

    /// Exact stability `D(I) ⊆ I`, checked on generators (sufficient since
    /// `D` is additive and Leibniz over ideal multiples).
    pub fn stabilizes(&self, ideal: &Ideal) -> Result<bool, Error> {
        for g in ideal.generators() {
            if !ideal.contains(&self.apply(g))? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Smallest `D`-stable ideal containing `seed`: iterate
    /// `J ← J + D(generators of J)` until ideal equality settles.  The cap
    /// bounds the number of rounds.
    pub fn saturate_stable(&self, seed: &Ideal, cap: usize) -> Result<Ideal, Error> {
        let mut current = seed.clone();
        for _ in 0..cap {
            let images: Vec<MultiPoly> = current
                .generators()
                .iter()
                .map(|g| self.apply(g))
                .collect();
            let next = current.with_extra_generators(&images);
            if next.equal(&current)? {
                return Ok(current);
            }
            // Continue from the Gröbner basis to keep generator lists tidy.
            let tidy = next.groebner()?.elements().to_vec();
            current = Ideal::new(self.ring.clone(), tidy);
        }
        Err(Error::resource(format!(
            "stable saturation did not settle within {cap} rounds"
        )))
    }

    /// For each variable, the least `n ≤ bound` with `Dⁿ(x_i) = 0`, if any.
    pub fn nilpotency_up_to(&self, bound: u32) -> NilpotencyReport {
        let mut first_zero = Vec::with_capacity(self.ring.nvars());
        for i in 0..self.ring.nvars() {
            let mut g = MultiPoly::var(self.ring.clone(), i);
            let mut found = None;
            for n in 1..=bound {
                g = self.apply(&g);
                if g.is_zero() {
                    found = Some(n);
                    break;
                }
            }
            first_zero.push(found);
        }
        NilpotencyReport { bound, first_zero }
    }

    /// Least `ℓ ≤ bound` with `D^ℓ(g) ∈ m` for *every* generator `g` of `m`,
    /// plus probe products of generators whose `D^ℓ` image escapes `m`.
    /// The probes are the evidence that the generator-level `ℓ` does not
    /// control general elements of `m`.
    pub fn ell_search(
        &self,
        m: &Ideal,
        bound: u32,
        probe_degree: u32,
    ) -> Result<EllReport, Error> {
        let gens = m.generators();
        let mut images: Vec<MultiPoly> = gens.to_vec();
        let mut generator_ell = None;
        'search: for ell in 1..=bound {
            for img in images.iter_mut() {
                *img = self.apply(img);
            }
            for img in images.iter() {
                if !m.contains(img)? {
                    continue 'search;
                }
            }
            generator_ell = Some(ell);
            break;
        }

        let mut probe_violations = Vec::new();
        if let Some(ell) = generator_ell {
            for probe in generator_products(gens, probe_degree) {
                if !m.contains(&self.apply_power(&probe, ell))? {
                    probe_violations.push(probe);
                }
            }
        }
        Ok(EllReport {
            bound,
            probe_degree,
            generator_ell,
            probe_violations,
        })
    }

    /// Unit test of the uniform-power criterion at a candidate `ℓ`: is the
    /// ideal generated by `D^{ℓ−1}(g)` over the generators `g` of `m` the
    /// unit ideal?  This is a heuristic signal, never a verdict: see the
    /// probe violations reported by [`Derivation::ell_search`].
    pub fn ln_criterion(&self, m: &Ideal, ell: u32) -> Result<bool, Error> {
        if ell == 0 {
            return Err(Error::input("criterion exponent must be at least 1".to_string()));
        }
        let imgs: Vec<MultiPoly> = m
            .generators()
            .iter()
            .map(|g| self.apply_power(g, ell - 1))
            .collect();
        Ideal::new(self.ring.clone(), imgs).is_unit_ideal()
    }
}

impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

/// All products of `2..=max_factors` generators (multisets, indices
/// non-decreasing), in deterministic enumeration order.
fn generator_products(gens: &[MultiPoly], max_factors: u32) -> Vec<MultiPoly> {
    let mut out = Vec::new();
    if gens.is_empty() {
        return out;
    }
    let mut stack: Vec<(usize, u32, MultiPoly)> = Vec::new();
    for (i, g) in gens.iter().enumerate() {
        stack.push((i, 1, g.clone()));
    }
    // Depth-first with non-decreasing indices keeps the order stable.
    while let Some((start, nfac, prod)) = stack.pop() {
        if nfac >= 2 {
            out.push(prod.clone());
        }
        if nfac < max_factors {
            for (i, g) in gens.iter().enumerate().skip(start).rev() {
                stack.push((i, nfac + 1, &prod * g));
            }
        }
    }
    out.sort_by(|a, b| {
        a.total_degree()
            .cmp(&b.total_degree())
            .then_with(|| a.cmp_canonical(b))
    });
    out.dedup();
    out
}

/// Outcome of the locally-nilpotent probe up to a bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NilpotencyReport {
    pub bound: u32,
    /// Per variable, the least `n` with `Dⁿ(x_i) = 0`, or `None` within the
    /// bound.
    pub first_zero: Vec<Option<u32>>,
}

impl NilpotencyReport {
    /// All variables annihilated within the bound.
    pub fn is_nilpotent(&self) -> bool {
        self.first_zero.iter().all(|n| n.is_some())
    }
}

/// Outcome of the uniform-power search on a maximal ideal.
#[derive(Debug, Clone)]
pub struct EllReport {
    pub bound: u32,
    pub probe_degree: u32,
    /// Least `ℓ` with `D^ℓ(generators) ⊆ m`, within the bound.
    pub generator_ell: Option<u32>,
    /// Products of generators with `D^ℓ(product) ∉ m`.
    pub probe_violations: Vec<MultiPoly>,
}

// ---------------------------------------------------------------------------
// Polynomial-coefficient series
// ---------------------------------------------------------------------------

/// A truncated series whose coefficients are ring elements, as produced by
/// the formal exponential before specialisation at a prime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolySeries {
    coeffs: Vec<MultiPoly>,
}

impl PolySeries {
    pub fn from_coeffs(coeffs: Vec<MultiPoly>) -> Self {
        assert!(!coeffs.is_empty(), "a series carries at least t^0");
        PolySeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> &MultiPoly {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[MultiPoly] {
        &self.coeffs
    }

    pub fn truncate(&self, r: usize) -> Result<PolySeries, Error> {
        if r > self.order() {
            return Err(Error::input(format!(
                "cannot truncate order-{} series at order {r}",
                self.order()
            )));
        }
        Ok(PolySeries {
            coeffs: self.coeffs[..=r].to_vec(),
        })
    }

    pub fn add(&self, other: &PolySeries) -> PolySeries {
        let r = self.order().min(other.order());
        PolySeries {
            coeffs: (0..=r).map(|j| &self.coeffs[j] + &other.coeffs[j]).collect(),
        }
    }

    /// Truncated Cauchy product at the smaller operand order.
    pub fn mul(&self, other: &PolySeries) -> PolySeries {
        let r = self.order().min(other.order());
        let ring = self.coeffs[0].ring().clone();
        let mut coeffs = vec![MultiPoly::zero(ring); r + 1];
        for i in 0..=r {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=(r - i) {
                if other.coeffs[j].is_zero() {
                    continue;
                }
                coeffs[i + j] = &coeffs[i + j] + &(&self.coeffs[i] * &other.coeffs[j]);
            }
        }
        PolySeries { coeffs }
    }

    /// Formal `d/dt`; the order drops by one.
    pub fn derive(&self) -> Result<PolySeries, Error> {
        if self.order() == 0 {
            return Err(Error::input(
                "cannot differentiate a series known only at t^0".to_string(),
            ));
        }
        Ok(PolySeries {
            coeffs: (1..=self.order())
                .map(|j| self.coeffs[j].scale(&FieldElement::from_i64(j as i64)))
                .collect(),
        })
    }
}
