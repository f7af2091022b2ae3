//! Solutions of derivations through primes.
//!
//! A solution through a prime `p` is a ring map `φ: R → k(p)[[t]]` with
//! `φ∘D = ∂_t∘φ` whose contraction of `(t)` is `p`.  Two supported prime
//! shapes keep all residue arithmetic exact: rational points (residue field
//! `Q`) and coordinate primes (residue field a rational-function field in the
//! unprescribed variables).  Solutions are built two independent ways — by
//! specialising the formal exponential, and by the coefficient recurrence
//! `∂_t x_i(t) = f_i(x(t))` — which must agree; the kernel and simplicity
//! layers sit on top in [`mod@self`]'s submodules.

use std::sync::Arc;

use crate::algebra::{
    FieldElement, MultiPoly, PolyRing, Rational, RationalFunction, TruncSeries,
};
use crate::derivation::Derivation;
use crate::error::Error;
use crate::groebner::Ideal;

mod kernel;
mod simplicity;

pub use kernel::{kernel_approx, kernel_from_solution, topologically_equal, KernelApprox};
pub use simplicity::{
    annihilator_check, quotient_lift_check, simplicity_report, simplicity_report_with_cap,
    AnnihilatorReport, QuotientLiftReport, SimplicityReport, SimplicityVerdict, StabilityChecks,
};

/// A prime of the coordinate ring given by prescribed variable values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PrimeSpec {
    /// Rational point `(a_1, …, a_n)`: the maximal ideal `(x_i − a_i)`.
    Point(Vec<Rational>),
    /// Coordinate prime `(x_i − a_i : i in a subset)`, pairs sorted by
    /// variable index; the residue field is the rational-function field in
    /// the remaining variables.
    Coordinate(Vec<(usize, Rational)>),
}

impl PrimeSpec {
    pub fn point(values: Vec<Rational>) -> Self {
        PrimeSpec::Point(values)
    }

    /// Coordinate prime from `(variable index, value)` pairs in any order.
    pub fn coordinate(mut assignments: Vec<(usize, Rational)>) -> Result<Self, Error> {
        assignments.sort_by_key(|(i, _)| *i);
        if assignments.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::input(
                "coordinate prime prescribes a variable twice".to_string(),
            ));
        }
        Ok(PrimeSpec::Coordinate(assignments))
    }

    /// Arity and index checks against a ring.
    pub fn validate(&self, ring: &Arc<PolyRing>) -> Result<(), Error> {
        match self {
            PrimeSpec::Point(values) => {
                if values.len() != ring.nvars() {
                    return Err(Error::input(format!(
                        "point has {} coordinates but the ring has {} variables",
                        values.len(),
                        ring.nvars()
                    )));
                }
            }
            PrimeSpec::Coordinate(assignments) => {
                for w in assignments.windows(2) {
                    if w[0].0 >= w[1].0 {
                        return Err(Error::input(
                            "coordinate prime indices must be strictly increasing".to_string(),
                        ));
                    }
                }
                if let Some((i, _)) = assignments.last() {
                    if *i >= ring.nvars() {
                        return Err(Error::input(format!(
                            "coordinate prime prescribes variable index {i}, but the ring has {} variables",
                            ring.nvars()
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Per-variable prescribed value, `None` for residue variables.
    pub fn prescribed(&self, ring: &Arc<PolyRing>) -> Vec<Option<Rational>> {
        let mut out = vec![None; ring.nvars()];
        match self {
            PrimeSpec::Point(values) => {
                for (i, v) in values.iter().enumerate() {
                    out[i] = Some(v.clone());
                }
            }
            PrimeSpec::Coordinate(assignments) => {
                for (i, v) in assignments {
                    out[*i] = Some(v.clone());
                }
            }
        }
        out
    }

    /// The linear generators `x_i − a_i`, in variable order.
    pub fn generators(&self, ring: &Arc<PolyRing>) -> Vec<MultiPoly> {
        self.prescribed(ring)
            .iter()
            .enumerate()
            .filter_map(|(i, v)| {
                v.as_ref().map(|a| {
                    &MultiPoly::var(ring.clone(), i)
                        - &MultiPoly::constant(ring.clone(), FieldElement::Rat(a.clone()))
                })
            })
            .collect()
    }

    /// The ideal generated by the linear generators.
    pub fn ideal(&self, ring: &Arc<PolyRing>) -> Ideal {
        Ideal::new(ring.clone(), self.generators(ring))
    }

    /// Number of prescribed variables (the height of the prime).
    pub fn codimension(&self, ring: &Arc<PolyRing>) -> usize {
        self.prescribed(ring).iter().filter(|v| v.is_some()).count()
    }

    /// Polynomial ring on the residue variables; `None` for a rational point
    /// (whose residue field is plain `Q`).
    pub fn residue_ring(&self, ring: &Arc<PolyRing>) -> Option<Arc<PolyRing>> {
        match self {
            PrimeSpec::Point(_) => None,
            PrimeSpec::Coordinate(_) => {
                let prescribed = self.prescribed(ring);
                let kept: Vec<&str> = (0..ring.nvars())
                    .filter(|&i| prescribed[i].is_none())
                    .map(|i| ring.var_name(i))
                    .collect();
                Some(PolyRing::new(&kept, ring.order()))
            }
        }
    }

    /// The canonical map onto the residue field: substitute prescribed
    /// values, keep residue variables.
    pub fn residue_eval(&self, f: &MultiPoly) -> FieldElement {
        match self {
            PrimeSpec::Point(values) => {
                let vals: Vec<FieldElement> =
                    values.iter().map(|v| FieldElement::Rat(v.clone())).collect();
                f.eval_point(&vals)
            }
            PrimeSpec::Coordinate(_) => {
                let ring = f.ring().clone();
                let residue = self
                    .residue_ring(&ring)
                    .expect("coordinate primes have a residue ring");
                let projected = f.eval_partial(&self.prescribed(&ring), residue);
                if projected.is_constant() {
                    projected.constant_term()
                } else {
                    FieldElement::Fun(RationalFunction::from_poly(projected))
                }
            }
        }
    }

    /// Render in the input grammar, e.g. `point(2, 3, 5)` or
    /// `coord(x=0, y=0)`.
    pub fn render(&self, ring: &Arc<PolyRing>) -> String {
        match self {
            PrimeSpec::Point(values) => {
                let parts: Vec<String> = values.iter().map(|v| v.to_string()).collect();
                format!("point({})", parts.join(", "))
            }
            PrimeSpec::Coordinate(assignments) => {
                let parts: Vec<String> = assignments
                    .iter()
                    .map(|(i, v)| format!("{}={}", ring.var_name(*i), v))
                    .collect();
                format!("coord({})", parts.join(", "))
            }
        }
    }
}

/// How a solution was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveMethod {
    Exponential,
    Ode,
    Manual,
}

impl SolveMethod {
    pub fn as_str(&self) -> &'static str {
        match self {
            SolveMethod::Exponential => "exponential",
            SolveMethod::Ode => "ode",
            SolveMethod::Manual => "manual",
        }
    }
}

/// A truncated solution `φ` through a prime: one residue-field series per
/// variable.
#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    prime: PrimeSpec,
    order: usize,
    coords: Vec<TruncSeries>,
    method: SolveMethod,
}

impl Solution {
    pub fn new(
        prime: PrimeSpec,
        order: usize,
        coords: Vec<TruncSeries>,
        method: SolveMethod,
    ) -> Self {
        assert!(
            coords.iter().all(|c| c.order() == order),
            "coordinate series must share the solution order"
        );
        Solution {
            prime,
            order,
            coords,
            method,
        }
    }

    pub fn prime(&self) -> &PrimeSpec {
        &self.prime
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coords(&self) -> &[TruncSeries] {
        &self.coords
    }

    pub fn coord(&self, i: usize) -> &TruncSeries {
        &self.coords[i]
    }

    pub fn method(&self) -> SolveMethod {
        self.method
    }

    /// `φ(g)` truncated at `t^r`: substitute the coordinate series into `g`.
    pub fn push(&self, g: &MultiPoly, r: usize) -> Result<TruncSeries, Error> {
        g.eval_series(&self.coords, r)
    }

    pub fn truncate(&self, r: usize) -> Result<Solution, Error> {
        let coords = self
            .coords
            .iter()
            .map(|c| c.truncate(r))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Solution {
            prime: self.prime.clone(),
            order: r,
            coords,
            method: self.method,
        })
    }

    /// All coordinate series constant — the image lies in the residue field.
    pub fn is_constant(&self) -> bool {
        self.coords.iter().all(|c| c.is_constant())
    }
}

/// `ε_p ∘ D = 0`: the derivation's coefficients all vanish in the residue
/// field, so every solution through `p` is constant.
pub fn is_trivial(d: &Derivation, p: &PrimeSpec) -> Result<bool, Error> {
    p.validate(d.ring())?;
    Ok(d.coeffs().iter().all(|f| p.residue_eval(f).is_zero()))
}

fn require_on_variety(d: &Derivation, p: &PrimeSpec) -> Result<(), Error> {
    if let Some(ideal) = d.quotient_ideal() {
        for g in ideal.generators() {
            if !p.residue_eval(g).is_zero() {
                return Err(Error::input(
                    "prime does not lie on the zero set of the quotient ideal".to_string(),
                ));
            }
        }
    }
    Ok(())
}

/// Canonical solution through `p`: specialise the formal exponential of each
/// variable at the residue field.
pub fn solve_exponential(d: &Derivation, p: &PrimeSpec, r: usize) -> Result<Solution, Error> {
    p.validate(d.ring())?;
    require_on_variety(d, p)?;
    let n = d.ring().nvars();
    let mut coords = Vec::with_capacity(n);
    for i in 0..n {
        let series = d.exp_map(&MultiPoly::var(d.ring().clone(), i), r);
        let coeffs = series.coeffs().iter().map(|c| p.residue_eval(c)).collect();
        coords.push(TruncSeries::from_coeffs(coeffs));
    }
    Ok(Solution::new(p.clone(), r, coords, SolveMethod::Exponential))
}

/// Solution by the coefficient recurrence
/// `coeff_{k+1}(x_i) = coeff_k(f_i(x(t))) / (k+1)`, starting from the point.
/// Restricted to rational points; coordinate primes are covered exactly by
/// the exponential method.
pub fn solve_ode(d: &Derivation, p: &PrimeSpec, r: usize) -> Result<Solution, Error> {
    let values = match p {
        PrimeSpec::Point(values) => values,
        PrimeSpec::Coordinate(_) => {
            return Err(Error::input(
                "the coefficient recurrence needs a rational point; use the exponential method for coordinate primes"
                    .to_string(),
            ))
        }
    };
    p.validate(d.ring())?;
    require_on_variety(d, p)?;
    let n = d.ring().nvars();
    let mut coeffs: Vec<Vec<FieldElement>> = values
        .iter()
        .map(|a| vec![FieldElement::Rat(a.clone())])
        .collect();
    for k in 0..r {
        let partial: Vec<TruncSeries> = coeffs
            .iter()
            .map(|c| TruncSeries::from_coeffs(c.clone()))
            .collect();
        let step = FieldElement::from_i64((k + 1) as i64);
        let mut next = Vec::with_capacity(n);
        for i in 0..n {
            let rhs = d.coeffs()[i].eval_series(&partial, k)?;
            next.push(rhs.coeff(k).div(&step));
        }
        for (i, c) in next.into_iter().enumerate() {
            coeffs[i].push(c);
        }
    }
    let coords = coeffs.into_iter().map(TruncSeries::from_coeffs).collect();
    Ok(Solution::new(p.clone(), r, coords, SolveMethod::Ode))
}

/// Check the defining conditions of a solution at truncation order `r`
/// (which must leave room for the series derivative): the intertwining
/// `φ(D(x_i)) = ∂_t φ(x_i)` on every variable, zero constant term for the
/// pushforward of every prime generator, and — through a quotient — the
/// vanishing of the pushforward of every quotient-ideal generator.
pub fn verify_solution(s: &Solution, d: &Derivation, r: usize) -> Result<bool, Error> {
    if r + 1 > s.order() {
        return Err(Error::input(format!(
            "verification at order {r} needs a solution of order at least {}",
            r + 1
        )));
    }
    s.prime().validate(d.ring())?;
    for i in 0..d.ring().nvars() {
        let lhs = s.push(&d.coeffs()[i], r)?;
        let rhs = s.coord(i).derive()?.truncate(r)?;
        if lhs != rhs {
            return Ok(false);
        }
    }
    for g in s.prime().generators(d.ring()) {
        if !s.push(&g, 0)?.constant_term().is_zero() {
            return Ok(false);
        }
    }
    if let Some(ideal) = d.quotient_ideal() {
        for g in ideal.generators() {
            if !s.push(g, r)?.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
