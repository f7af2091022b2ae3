//! Sparse multivariate polynomials over the active coefficient field.
//!
//! A polynomial lives in a [`PolyRing`] (variable names plus monomial-order
//! tag) and stores its terms as a vector sorted strictly descending in the
//! ring's order, with no zero coefficients.  That makes leading-term access
//! O(1), equality structural and the printed form canonical: terms appear in
//! descending order, coefficients render as `p/q`, products use explicit `*`
//! and powers use `^`, e.g. `x^2*z - y^2 - 11`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Sub};
use std::sync::Arc;

use num_traits::{One, Signed};

use super::scalar::{FieldElement, Rational};
use super::series::TruncSeries;
use crate::error::Error;

// ---------------------------------------------------------------------------
// Monomial orders
// ---------------------------------------------------------------------------

/// Term order used by a ring.  `Block { eliminated }` compares the first
/// `eliminated` variables (grevlex among themselves) before the rest, which
/// makes it an elimination order for that front block.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MonomialOrder {
    GrevLex,
    Lex,
    Block { eliminated: usize },
}

fn grevlex_cmp(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    if da != db {
        return da.cmp(&db);
    }
    for i in (0..a.len()).rev() {
        if a[i] != b[i] {
            // Smaller exponent in the rightmost difference wins.
            return b[i].cmp(&a[i]);
        }
    }
    Ordering::Equal
}

fn lex_cmp(a: &[u32], b: &[u32]) -> Ordering {
    for i in 0..a.len() {
        if a[i] != b[i] {
            return a[i].cmp(&b[i]);
        }
    }
    Ordering::Equal
}

impl MonomialOrder {
    /// Compare two exponent vectors of equal length under this order.
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        debug_assert_eq!(a.0.len(), b.0.len());
        match *self {
            MonomialOrder::GrevLex => grevlex_cmp(&a.0, &b.0),
            MonomialOrder::Lex => lex_cmp(&a.0, &b.0),
            MonomialOrder::Block { eliminated } => grevlex_cmp(&a.0[..eliminated], &b.0[..eliminated])
                .then_with(|| grevlex_cmp(&a.0[eliminated..], &b.0[eliminated..])),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            MonomialOrder::GrevLex => "grevlex",
            MonomialOrder::Lex => "lex",
            MonomialOrder::Block { .. } => "block",
        }
    }
}

// ---------------------------------------------------------------------------
// Rings and monomials
// ---------------------------------------------------------------------------

/// A polynomial ring: ordered variable names plus the active monomial order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyRing {
    vars: Vec<String>,
    order: MonomialOrder,
}

impl PolyRing {
    pub fn new(vars: &[&str], order: MonomialOrder) -> Arc<Self> {
        let vars: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        for (i, v) in vars.iter().enumerate() {
            assert!(
                !vars[..i].contains(v),
                "duplicate variable name `{v}` in ring"
            );
        }
        if let MonomialOrder::Block { eliminated } = order {
            assert!(eliminated <= vars.len(), "block order exceeds variable count");
        }
        Arc::new(PolyRing { vars, order })
    }

    pub fn from_names(vars: &[String], order: MonomialOrder) -> Arc<Self> {
        let refs: Vec<&str> = vars.iter().map(|s| s.as_str()).collect();
        PolyRing::new(&refs, order)
    }

    pub fn grevlex(vars: &[&str]) -> Arc<Self> {
        PolyRing::new(vars, MonomialOrder::GrevLex)
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_names(&self) -> &[String] {
        &self.vars
    }

    pub fn var_name(&self, i: usize) -> &str {
        &self.vars[i]
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }
}

/// Cheap ring-compatibility check: pointer equality fast path, deep equality
/// fallback (rings are tiny).
pub(crate) fn same_ring(a: &Arc<PolyRing>, b: &Arc<PolyRing>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// An exponent vector.  The derived `Ord` is structural (plain lex on the
/// vector) and only used for map keys; ring-order comparisons go through
/// [`MonomialOrder::cmp`].
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    /// Componentwise division, `None` unless `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut e = Vec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(&other.0) {
            if a < b {
                return None;
            }
            e.push(a - b);
        }
        Some(Monomial(e))
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    /// Indices of variables with positive exponent.
    pub fn support(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
            .collect()
    }
}

// ---------------------------------------------------------------------------
// Polynomials
// ---------------------------------------------------------------------------

/// Sparse multivariate polynomial.  Terms are kept sorted strictly
/// descending in the ring's monomial order with no zero coefficients.
#[derive(Debug, Clone)]
pub struct MultiPoly {
    ring: Arc<PolyRing>,
    terms: Vec<(Monomial, FieldElement)>,
}

impl MultiPoly {
    // ---- Constructors ----

    pub fn zero(ring: Arc<PolyRing>) -> Self {
        MultiPoly { ring, terms: Vec::new() }
    }

    pub fn one(ring: Arc<PolyRing>) -> Self {
        MultiPoly::constant(ring, FieldElement::one())
    }

    pub fn constant(ring: Arc<PolyRing>, c: FieldElement) -> Self {
        let n = ring.nvars();
        MultiPoly::from_terms(ring, vec![(Monomial::one(n), c)])
    }

    pub fn var(ring: Arc<PolyRing>, i: usize) -> Self {
        let n = ring.nvars();
        assert!(i < n, "variable index out of range");
        MultiPoly::from_terms(ring, vec![(Monomial::var(n, i), FieldElement::one())])
    }

    pub fn from_term(ring: Arc<PolyRing>, m: Monomial, c: FieldElement) -> Self {
        MultiPoly::from_terms(ring, vec![(m, c)])
    }

    /// Normalising constructor: merges duplicate monomials, drops zeros,
    /// sorts descending in the ring order.
    pub fn from_terms(ring: Arc<PolyRing>, terms: Vec<(Monomial, FieldElement)>) -> Self {
        let mut map: BTreeMap<Monomial, FieldElement> = BTreeMap::new();
        for (m, c) in terms {
            assert_eq!(m.0.len(), ring.nvars(), "monomial arity mismatch");
            match map.get_mut(&m) {
                Some(acc) => *acc = acc.add(&c),
                None => {
                    map.insert(m, c);
                }
            }
        }
        let mut terms: Vec<(Monomial, FieldElement)> =
            map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        let order = ring.order();
        terms.sort_by(|(a, _), (b, _)| order.cmp(b, a));
        MultiPoly { ring, terms }
    }

    // ---- Queries ----

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, FieldElement)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    /// Constant term (zero if absent).
    pub fn constant_term(&self) -> FieldElement {
        self.terms
            .iter()
            .find(|(m, _)| m.is_one())
            .map(|(_, c)| c.clone())
            .unwrap_or_else(FieldElement::zero)
    }

    /// Max total degree of any term; 0 for the zero polynomial.
    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.total_degree()).max().unwrap_or(0)
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    pub fn leading_coeff(&self) -> Option<&FieldElement> {
        self.terms.first().map(|(_, c)| c)
    }

    /// Leading coefficient as a plain rational, when it is one.
    pub fn leading_rational(&self) -> Option<Rational> {
        self.leading_coeff().and_then(|c| c.as_rational())
    }

    pub fn has_rational_coeffs(&self) -> bool {
        self.terms
            .iter()
            .all(|(_, c)| matches!(c, FieldElement::Rat(_)))
    }

    /// Max exponent of variable `i` over all terms.
    pub fn max_exponent(&self, i: usize) -> u32 {
        self.terms.iter().map(|(m, _)| m.0[i]).max().unwrap_or(0)
    }

    // ---- Arithmetic ----

    pub fn neg(&self) -> MultiPoly {
        MultiPoly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.neg()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &FieldElement) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.ring.clone());
        }
        MultiPoly::from_terms(
            self.ring.clone(),
            self.terms
                .iter()
                .map(|(m, k)| (m.clone(), k.mul(c)))
                .collect(),
        )
    }

    /// Multiply by the single term `c·m`.
    pub fn mul_term(&self, m: &Monomial, c: &FieldElement) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.ring.clone());
        }
        MultiPoly::from_terms(
            self.ring.clone(),
            self.terms
                .iter()
                .map(|(tm, tc)| (tm.mul(m), tc.mul(c)))
                .collect(),
        )
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = MultiPoly::one(self.ring.clone());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Scale so the leading coefficient is 1 (no-op on zero).
    pub fn monic(&self) -> MultiPoly {
        match self.leading_coeff() {
            None => self.clone(),
            Some(c) => {
                let inv = c.inverse().expect("nonzero leading coefficient");
                self.scale(&inv)
            }
        }
    }

    /// Partial derivative with respect to variable `i`.
    pub fn partial(&self, i: usize) -> MultiPoly {
        assert!(i < self.ring.nvars());
        let mut out = Vec::new();
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e > 0 {
                let mut m2 = m.clone();
                m2.0[i] = e - 1;
                out.push((m2, c.mul(&FieldElement::from_i64(e as i64))));
            }
        }
        MultiPoly::from_terms(self.ring.clone(), out)
    }

    /// Exact division by a single polynomial: `Some(q)` with `self = q·g`
    /// when leading-term division runs to a zero remainder, else `None`.
    pub fn div_exact(&self, g: &MultiPoly) -> Option<MultiPoly> {
        assert!(same_ring(&self.ring, g.ring()), "ring mismatch");
        assert!(!g.is_zero(), "division by zero polynomial");
        let order = self.ring.order();
        let glm = g.leading_monomial().unwrap().clone();
        let glc = g.leading_coeff().unwrap().clone();
        let mut rem = self.clone();
        let mut quo: Vec<(Monomial, FieldElement)> = Vec::new();
        while let Some(lm) = rem.leading_monomial() {
            let qm = lm.div(&glm)?;
            let qc = rem.leading_coeff().unwrap().div(&glc);
            let prev_lm = lm.clone();
            rem = &rem - &g.mul_term(&qm, &qc);
            quo.push((qm, qc));
            if let Some(new_lm) = rem.leading_monomial() {
                debug_assert_eq!(order.cmp(new_lm, &prev_lm), Ordering::Less);
            }
        }
        Some(MultiPoly::from_terms(self.ring.clone(), quo))
    }

    // ---- Substitution ----

    /// Evaluate at a point of field elements.
    pub fn eval_point(&self, values: &[FieldElement]) -> FieldElement {
        assert_eq!(values.len(), self.ring.nvars(), "evaluation arity mismatch");
        let mut acc = FieldElement::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    t = t.mul(&values[i]);
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Substitute truncated series for the variables and truncate at `r`.
    /// The `t^j` coefficient of the result depends only on the arguments'
    /// coefficients up to `t^j`.
    pub fn eval_series(&self, args: &[TruncSeries], r: usize) -> Result<TruncSeries, Error> {
        if args.len() != self.ring.nvars() {
            return Err(Error::input(format!(
                "series substitution expects {} series, got {}",
                self.ring.nvars(),
                args.len()
            )));
        }
        for a in args {
            if a.order() < r {
                return Err(Error::input(format!(
                    "series order {} too small for truncation order {r}",
                    a.order()
                )));
            }
        }
        // Lazily build per-variable power tables up to the needed exponent.
        let mut pows: Vec<Vec<TruncSeries>> = Vec::with_capacity(args.len());
        for (i, a) in args.iter().enumerate() {
            let max_e = self.max_exponent(i) as usize;
            let mut table = Vec::with_capacity(max_e + 1);
            table.push(TruncSeries::constant(FieldElement::one(), r));
            if max_e >= 1 {
                let base = a.truncate(r)?;
                for e in 1..=max_e {
                    let next = table[e - 1].mul(&base);
                    table.push(next);
                }
            }
            pows.push(table);
        }
        let mut acc = TruncSeries::constant(FieldElement::zero(), r);
        for (m, c) in &self.terms {
            let mut t = TruncSeries::constant(c.clone(), r);
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = t.mul(&pows[i][e as usize]);
                }
            }
            acc = acc.add(&t);
        }
        Ok(acc)
    }

    /// `f(x_1 + o_1, …, x_n + o_n)` expanded.
    pub fn compose_shift(&self, offsets: &[FieldElement]) -> MultiPoly {
        assert_eq!(offsets.len(), self.ring.nvars(), "shift arity mismatch");
        let ring = self.ring.clone();
        let mut acc = MultiPoly::zero(ring.clone());
        for (m, c) in &self.terms {
            let mut term = MultiPoly::constant(ring.clone(), c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    let base = &MultiPoly::var(ring.clone(), i)
                        + &MultiPoly::constant(ring.clone(), offsets[i].clone());
                    term = &term * &base.pow(e);
                }
            }
            acc = &acc + &term;
        }
        acc
    }

    /// Taylor development around `point`: homogeneous components
    /// `λ^0, …, λ^deg` with `f = Σ_j λ^j(x − point)`.  Component `j` is
    /// homogeneous of degree `j`, written in the ring variables which stand
    /// for the centered coordinates.
    pub fn translate(&self, point: &[FieldElement]) -> Vec<MultiPoly> {
        let shifted = self.compose_shift(point); // f(y + point) in centered y
        let deg = shifted.total_degree() as usize;
        let mut parts: Vec<Vec<(Monomial, FieldElement)>> = vec![Vec::new(); deg + 1];
        for (m, c) in &shifted.terms {
            parts[m.total_degree() as usize].push((m.clone(), c.clone()));
        }
        parts
            .into_iter()
            .map(|ts| MultiPoly::from_terms(self.ring.clone(), ts))
            .collect()
    }

    /// Substitute rationals for a subset of variables (`Some(c)` entries) and
    /// re-express the result in `new_ring`, whose variables must be the kept
    /// (`None`) variables in their original relative order.
    pub fn eval_partial(
        &self,
        values: &[Option<Rational>],
        new_ring: Arc<PolyRing>,
    ) -> MultiPoly {
        assert_eq!(values.len(), self.ring.nvars(), "substitution arity mismatch");
        let kept: Vec<usize> = (0..values.len()).filter(|&i| values[i].is_none()).collect();
        assert_eq!(kept.len(), new_ring.nvars(), "kept-variable count mismatch");
        let mut out = Vec::new();
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            for (i, v) in values.iter().enumerate() {
                if let Some(r) = v {
                    for _ in 0..m.0[i] {
                        coeff = coeff.mul(&FieldElement::Rat(r.clone()));
                    }
                }
            }
            let e: Vec<u32> = kept.iter().map(|&i| m.0[i]).collect();
            out.push((Monomial(e), coeff));
        }
        MultiPoly::from_terms(new_ring, out)
    }

    /// Re-express in `new_ring` via the variable map `old_to_new`
    /// (`old_to_new[i] = Some(j)` sends old variable `i` to new variable
    /// `j`).  Returns `None` when a term uses an unmapped variable.
    pub fn remap(
        &self,
        new_ring: Arc<PolyRing>,
        old_to_new: &[Option<usize>],
    ) -> Option<MultiPoly> {
        assert_eq!(old_to_new.len(), self.ring.nvars());
        let mut out = Vec::new();
        for (m, c) in &self.terms {
            let mut e = vec![0u32; new_ring.nvars()];
            for (i, &exp) in m.0.iter().enumerate() {
                if exp == 0 {
                    continue;
                }
                let j = old_to_new[i]?;
                e[j] += exp;
            }
            out.push((Monomial(e), c.clone()));
        }
        Some(MultiPoly::from_terms(new_ring, out))
    }

    // ---- Ordering ----

    /// Deterministic total order on polynomials of one ring: compare term
    /// lists in descending monomial order, coefficients as a tiebreak.
    pub fn cmp_canonical(&self, other: &MultiPoly) -> Ordering {
        let order = self.ring.order();
        let mut i = 0;
        loop {
            match (self.terms.get(i), other.terms.get(i)) {
                (None, None) => return Ordering::Equal,
                (None, Some(_)) => return Ordering::Less,
                (Some(_), None) => return Ordering::Greater,
                (Some((ma, ca)), Some((mb, cb))) => {
                    let c = order.cmp(ma, mb);
                    if c != Ordering::Equal {
                        return c;
                    }
                    let c = cmp_coeff(ca, cb);
                    if c != Ordering::Equal {
                        return c;
                    }
                }
            }
            i += 1;
        }
    }
}

fn cmp_coeff(a: &FieldElement, b: &FieldElement) -> Ordering {
    match (a, b) {
        (FieldElement::Rat(x), FieldElement::Rat(y)) => x.cmp(y),
        _ => a.to_string().cmp(&b.to_string()),
    }
}

impl PartialEq for MultiPoly {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for MultiPoly {}

impl Add for &MultiPoly {
    type Output = MultiPoly;

    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        assert!(same_ring(&self.ring, &rhs.ring), "ring mismatch in +");
        let mut terms = self.terms.clone();
        terms.extend(rhs.terms.iter().cloned());
        MultiPoly::from_terms(self.ring.clone(), terms)
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;

    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        assert!(same_ring(&self.ring, &rhs.ring), "ring mismatch in -");
        let mut terms = self.terms.clone();
        terms.extend(rhs.terms.iter().map(|(m, c)| (m.clone(), c.neg())));
        MultiPoly::from_terms(self.ring.clone(), terms)
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;

    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        assert!(same_ring(&self.ring, &rhs.ring), "ring mismatch in *");
        let mut map: BTreeMap<Monomial, FieldElement> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let m = ma.mul(mb);
                let c = ca.mul(cb);
                match map.get_mut(&m) {
                    Some(acc) => *acc = acc.add(&c),
                    None => {
                        map.insert(m, c);
                    }
                }
            }
        }
        MultiPoly::from_terms(self.ring.clone(), map.into_iter().collect())
    }
}

// ---------------------------------------------------------------------------
// Rendering
// ---------------------------------------------------------------------------

fn fmt_monomial(ring: &PolyRing, m: &Monomial) -> String {
    let factors: Vec<String> = m
        .0
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| {
            if e == 1 {
                ring.var_name(i).to_string()
            } else {
                format!("{}^{}", ring.var_name(i), e)
            }
        })
        .collect();
    factors.join("*")
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut out = String::new();
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let (sep, body) = match c {
                FieldElement::Rat(r) => {
                    let neg = r.is_negative();
                    let mag = if neg { -r } else { r.clone() };
                    let sep = match (idx == 0, neg) {
                        (true, false) => "",
                        (true, true) => "-",
                        (false, false) => " + ",
                        (false, true) => " - ",
                    };
                    let body = if m.is_one() {
                        mag.to_string()
                    } else if mag.is_one() {
                        fmt_monomial(&self.ring, m)
                    } else {
                        format!("{}*{}", mag, fmt_monomial(&self.ring, m))
                    };
                    (sep, body)
                }
                FieldElement::Fun(fun) => {
                    let sep = if idx == 0 { "" } else { " + " };
                    let body = if m.is_one() {
                        format!("({fun})")
                    } else {
                        format!("({fun})*{}", fmt_monomial(&self.ring, m))
                    };
                    (sep, body)
                }
            };
            out.push_str(sep);
            out.push_str(&body);
        }
        write!(f, "{out}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar::rational_from_i64;

    fn xyz() -> Arc<PolyRing> {
        PolyRing::grevlex(&["x", "y", "z"])
    }

    fn mono(e: &[u32]) -> Monomial {
        Monomial(e.to_vec())
    }

    #[test]
    fn grevlex_orders_like_the_textbook() {
        let o = MonomialOrder::GrevLex;
        // x > y > z
        assert_eq!(o.cmp(&mono(&[1, 0, 0]), &mono(&[0, 1, 0])), Ordering::Greater);
        assert_eq!(o.cmp(&mono(&[0, 1, 0]), &mono(&[0, 0, 1])), Ordering::Greater);
        // degree dominates: x^2*z > y^2
        assert_eq!(o.cmp(&mono(&[2, 0, 1]), &mono(&[0, 2, 0])), Ordering::Greater);
        // same degree: x*y > x*z (smaller exponent in rightmost difference)
        assert_eq!(o.cmp(&mono(&[1, 1, 0]), &mono(&[1, 0, 1])), Ordering::Greater);
    }

    #[test]
    fn lex_ignores_total_degree() {
        let o = MonomialOrder::Lex;
        // x > y^5 under lex
        assert_eq!(o.cmp(&mono(&[1, 0, 0]), &mono(&[0, 5, 0])), Ordering::Greater);
    }

    #[test]
    fn block_order_eliminates_front_variables() {
        let o = MonomialOrder::Block { eliminated: 1 };
        // any positive power of the first variable beats anything without it
        assert_eq!(o.cmp(&mono(&[1, 0, 0]), &mono(&[0, 7, 3])), Ordering::Greater);
        // ties in the front block fall back to grevlex on the rest
        assert_eq!(o.cmp(&mono(&[1, 1, 0]), &mono(&[1, 0, 1])), Ordering::Greater);
    }

    #[test]
    fn binomial_square_expands() {
        let ring = xyz();
        let x = MultiPoly::var(ring.clone(), 0);
        let y = MultiPoly::var(ring.clone(), 1);
        let s = &x + &y;
        let sq = &s * &s;
        let expected = MultiPoly::from_terms(
            ring,
            vec![
                (mono(&[2, 0, 0]), FieldElement::one()),
                (mono(&[1, 1, 0]), FieldElement::from_i64(2)),
                (mono(&[0, 2, 0]), FieldElement::one()),
            ],
        );
        assert_eq!(sq, expected);
    }

    #[test]
    fn canonical_rendering_matches_grammar() {
        let ring = xyz();
        let p = MultiPoly::from_terms(
            ring.clone(),
            vec![
                (mono(&[2, 0, 1]), FieldElement::one()),
                (mono(&[0, 2, 0]), FieldElement::from_i64(-1)),
                (mono(&[0, 0, 0]), FieldElement::from_i64(-11)),
            ],
        );
        assert_eq!(p.to_string(), "x^2*z - y^2 - 11");
        let q = MultiPoly::from_terms(
            ring.clone(),
            vec![
                (mono(&[1, 0, 0]), FieldElement::Rat(rational_from_i64(-1, 2))),
                (mono(&[0, 0, 0]), FieldElement::Rat(rational_from_i64(5, 3))),
            ],
        );
        assert_eq!(q.to_string(), "-1/2*x + 5/3");
        assert_eq!(MultiPoly::zero(ring).to_string(), "0");
    }

    #[test]
    fn partial_derivative_is_termwise() {
        let ring = xyz();
        let x = MultiPoly::var(ring.clone(), 0);
        let y = MultiPoly::var(ring.clone(), 1);
        let p = &(&x * &x) * &y; // x^2 y
        let expected = &(&x * &y).scale(&FieldElement::from_i64(2));
        assert_eq!(&p.partial(0), expected);
        assert_eq!(p.partial(2), MultiPoly::zero(ring));
    }

    #[test]
    fn translation_components_reassemble() {
        // f = x^2 around x = 2: components 4, 4x, x^2 (in centered x).
        let ring = PolyRing::grevlex(&["x"]);
        let x = MultiPoly::var(ring.clone(), 0);
        let f = &x * &x;
        let parts = f.translate(&[FieldElement::from_i64(2)]);
        assert_eq!(parts.len(), 3);
        assert_eq!(parts[0], MultiPoly::constant(ring.clone(), FieldElement::from_i64(4)));
        assert_eq!(parts[1], x.scale(&FieldElement::from_i64(4)));
        assert_eq!(parts[2], f);
        // Σ λ^j(x − 2) = f
        let minus_two = [FieldElement::from_i64(-2)];
        let mut sum = MultiPoly::zero(ring);
        for p in &parts {
            sum = &sum + &p.compose_shift(&minus_two);
        }
        assert_eq!(sum, f);
    }

    #[test]
    fn exact_division_by_a_factor() {
        let ring = xyz();
        let x = MultiPoly::var(ring.clone(), 0);
        let y = MultiPoly::var(ring.clone(), 1);
        let g = &x + &y;
        let f = &g * &(&x - &y); // x^2 - y^2
        assert_eq!(f.div_exact(&g), Some(&x - &y));
        assert_eq!(x.div_exact(&g), None);
    }

    #[test]
    fn eval_partial_substitutes_and_projects() {
        // f = x*z + z^2 with x := 0, y := 0 leaves z^2 in the residue ring.
        let ring = xyz();
        let x = MultiPoly::var(ring.clone(), 0);
        let z = MultiPoly::var(ring.clone(), 2);
        let f = &(&x * &z) + &(&z * &z);
        let residue = PolyRing::grevlex(&["z"]);
        let got = f.eval_partial(
            &[
                Some(rational_from_i64(0, 1)),
                Some(rational_from_i64(0, 1)),
                None,
            ],
            residue.clone(),
        );
        let zr = MultiPoly::var(residue, 0);
        assert_eq!(got, &zr * &zr);
    }
}
