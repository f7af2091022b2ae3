//! Ideals and Gröbner bases.
//!
//! Buchberger's algorithm with degree-first pair selection and the product
//! (coprime leading monomial) criterion.  Returned bases are inter-reduced
//! and monic, sorted by leading monomial descending, so a basis is a
//! canonical value for its ideal and order.  A configurable work cap counts
//! S-pair reductions and aborts with a resource error when exhausted;
//! termination itself is guaranteed by Dickson's lemma, the cap only bounds
//! time on hostile input.
//!
//! Everything downstream that claims exactness (ideal membership, equality,
//! stability certificates) routes through this module.

use std::sync::{Arc, OnceLock};

use crate::algebra::same_ring;
use crate::algebra::{FieldElement, Monomial, MonomialOrder, MultiPoly, PolyRing};
use crate::error::Error;

/// Default cap on S-pair reductions per Buchberger run.
pub const DEFAULT_WORK_CAP: usize = 100_000;

/// Cap on stable-saturation rounds (see the derivation layer).
pub const DEFAULT_SATURATION_CAP: usize = 50;

/// Tunable resource limits for basis computation.
#[derive(Debug, Clone, Copy)]
pub struct GroebnerConfig {
    pub max_spair_reductions: usize,
}

impl Default for GroebnerConfig {
    fn default() -> Self {
        GroebnerConfig {
            max_spair_reductions: DEFAULT_WORK_CAP,
        }
    }
}

// ---------------------------------------------------------------------------
// Reduction
// ---------------------------------------------------------------------------

/// Full multivariate division: reduce every term of `f` by the divisor list,
/// scanning divisors in order.  Deterministic for a fixed list.
pub fn reduce_by(f: &MultiPoly, divisors: &[MultiPoly]) -> MultiPoly {
    let ring = f.ring().clone();
    let mut p = f.clone();
    let mut remainder: Vec<(Monomial, FieldElement)> = Vec::new();
    'outer: while !p.is_zero() {
        let lm = p.leading_monomial().unwrap().clone();
        let lc = p.leading_coeff().unwrap().clone();
        for g in divisors {
            if g.is_zero() {
                continue;
            }
            let glm = g.leading_monomial().unwrap();
            if let Some(q) = lm.div(glm) {
                let qc = lc.div(g.leading_coeff().unwrap());
                p = &p - &g.mul_term(&q, &qc);
                continue 'outer;
            }
        }
        // Leading term is irreducible: move it to the remainder.
        remainder.push((lm.clone(), lc.clone()));
        p = &p - &MultiPoly::from_term(ring.clone(), lm, lc);
    }
    MultiPoly::from_terms(ring, remainder)
}

fn spoly(f: &MultiPoly, g: &MultiPoly) -> MultiPoly {
    let lf = f.leading_monomial().unwrap();
    let lg = g.leading_monomial().unwrap();
    let lcm = lf.lcm(lg);
    let cf = f.leading_coeff().unwrap().inverse().unwrap();
    let cg = g.leading_coeff().unwrap().inverse().unwrap();
    let a = f.mul_term(&lcm.div(lf).unwrap(), &cf);
    let b = g.mul_term(&lcm.div(lg).unwrap(), &cg);
    &a - &b
}

/// Autoreduce a polynomial list: drop zeros, fully reduce each element by
/// the others until stable, make everything monic, sort descending.  Used
/// both for final Gröbner bases and for canonical kernel bases.
pub fn inter_reduce(mut polys: Vec<MultiPoly>) -> Vec<MultiPoly> {
    polys.retain(|p| !p.is_zero());
    loop {
        let mut changed = false;
        let mut i = 0;
        while i < polys.len() {
            let mut others = polys.clone();
            let p = others.remove(i);
            let r = reduce_by(&p, &others);
            if r.is_zero() {
                polys.remove(i);
                changed = true;
                continue;
            }
            let r = r.monic();
            if r != polys[i] {
                polys[i] = r;
                changed = true;
            }
            i += 1;
        }
        if !changed {
            break;
        }
    }
    polys.sort_by(|a, b| b.cmp_canonical(a));
    polys
}

// ---------------------------------------------------------------------------
// Gröbner bases
// ---------------------------------------------------------------------------

/// An inter-reduced, monic Gröbner basis, sorted by leading monomial
/// descending.  Canonical for (ideal, order).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroebnerBasis {
    ring: Arc<PolyRing>,
    elements: Vec<MultiPoly>,
}

impl GroebnerBasis {
    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn elements(&self) -> &[MultiPoly] {
        &self.elements
    }

    /// Unique remainder of `f` modulo the basis.
    pub fn normal_form(&self, f: &MultiPoly) -> MultiPoly {
        reduce_by(f, &self.elements)
    }

    pub fn contains(&self, f: &MultiPoly) -> bool {
        self.normal_form(f).is_zero()
    }

    /// Basis of the unit ideal, i.e. `{1}`.
    pub fn is_unit(&self) -> bool {
        self.elements.len() == 1 && self.elements[0].is_one()
    }

    pub fn is_zero(&self) -> bool {
        self.elements.is_empty()
    }
}

/// Buchberger's algorithm.  Pair selection is by (lcm total degree, lcm in
/// the ring order, indices); coprime-leading-monomial pairs are skipped.
pub fn buchberger(
    ring: &Arc<PolyRing>,
    gens: &[MultiPoly],
    config: &GroebnerConfig,
) -> Result<GroebnerBasis, Error> {
    for g in gens {
        assert!(same_ring(g.ring(), ring), "generator from a foreign ring");
    }
    let order = ring.order();
    let mut basis: Vec<MultiPoly> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| g.monic())
        .collect();

    // Pending pairs with cached lcm of leading monomials.
    let mut pairs: Vec<(usize, usize, Monomial)> = Vec::new();
    for i in 0..basis.len() {
        for j in (i + 1)..basis.len() {
            let lcm = basis[i]
                .leading_monomial()
                .unwrap()
                .lcm(basis[j].leading_monomial().unwrap());
            pairs.push((i, j, lcm));
        }
    }

    let mut reductions = 0usize;
    while !pairs.is_empty() {
        // Smallest pair by (degree of lcm, lcm in order, indices).
        let mut best = 0;
        for k in 1..pairs.len() {
            let (bi, bj, blcm) = &pairs[best];
            let (ki, kj, klcm) = &pairs[k];
            let cmp = klcm
                .total_degree()
                .cmp(&blcm.total_degree())
                .then_with(|| order.cmp(klcm, blcm))
                .then_with(|| (ki, kj).cmp(&(bi, bj)));
            if cmp == std::cmp::Ordering::Less {
                best = k;
            }
        }
        let (i, j, lcm) = pairs.swap_remove(best);
        let prod = basis[i]
            .leading_monomial()
            .unwrap()
            .mul(basis[j].leading_monomial().unwrap());
        if lcm == prod {
            continue; // coprime leading monomials: S-pair reduces to zero
        }
        reductions += 1;
        if reductions > config.max_spair_reductions {
            return Err(Error::resource(format!(
                "Buchberger work cap of {} S-pair reductions exhausted",
                config.max_spair_reductions
            )));
        }
        let s = spoly(&basis[i], &basis[j]);
        let r = reduce_by(&s, &basis);
        if !r.is_zero() {
            let r = r.monic();
            basis.push(r);
            let k = basis.len() - 1;
            for i2 in 0..k {
                let lcm = basis[i2]
                    .leading_monomial()
                    .unwrap()
                    .lcm(basis[k].leading_monomial().unwrap());
                pairs.push((i2, k, lcm));
            }
        }
    }

    Ok(GroebnerBasis {
        ring: ring.clone(),
        elements: inter_reduce(basis),
    })
}

// ---------------------------------------------------------------------------
// Ideals
// ---------------------------------------------------------------------------

/// A finitely generated ideal with a lazily cached Gröbner basis.
#[derive(Debug)]
pub struct Ideal {
    ring: Arc<PolyRing>,
    gens: Vec<MultiPoly>,
    gb: OnceLock<Result<GroebnerBasis, Error>>,
}

impl Clone for Ideal {
    fn clone(&self) -> Self {
        let gb = OnceLock::new();
        if let Some(v) = self.gb.get() {
            let _ = gb.set(v.clone());
        }
        Ideal {
            ring: self.ring.clone(),
            gens: self.gens.clone(),
            gb,
        }
    }
}

impl Ideal {
    /// Build from generators, dropping zeros.
    pub fn new(ring: Arc<PolyRing>, gens: Vec<MultiPoly>) -> Self {
        for g in &gens {
            assert!(same_ring(g.ring(), &ring), "generator from a foreign ring");
        }
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ideal {
            ring,
            gens,
            gb: OnceLock::new(),
        }
    }

    pub fn zero(ring: Arc<PolyRing>) -> Self {
        Ideal::new(ring, Vec::new())
    }

    pub fn unit(ring: Arc<PolyRing>) -> Self {
        let one = MultiPoly::one(ring.clone());
        Ideal::new(ring, vec![one])
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn generators(&self) -> &[MultiPoly] {
        &self.gens
    }

    /// Gröbner basis under the default work cap, cached.
    pub fn groebner(&self) -> Result<&GroebnerBasis, Error> {
        let r = self
            .gb
            .get_or_init(|| buchberger(&self.ring, &self.gens, &GroebnerConfig::default()));
        match r {
            Ok(gb) => Ok(gb),
            Err(e) => Err(e.clone()),
        }
    }

    /// Exact ideal membership via normal form.
    pub fn contains(&self, f: &MultiPoly) -> Result<bool, Error> {
        Ok(self.groebner()?.contains(f))
    }

    /// Does this ideal contain every generator of `other`?
    pub fn contains_ideal(&self, other: &Ideal) -> Result<bool, Error> {
        let gb = self.groebner()?;
        Ok(other.gens.iter().all(|g| gb.contains(g)))
    }

    /// Mathematical equality by mutual containment of generators.
    pub fn equal(&self, other: &Ideal) -> Result<bool, Error> {
        Ok(self.contains_ideal(other)? && other.contains_ideal(self)?)
    }

    pub fn is_unit_ideal(&self) -> Result<bool, Error> {
        Ok(self.groebner()?.is_unit())
    }

    pub fn is_zero_ideal(&self) -> Result<bool, Error> {
        Ok(self.groebner()?.is_zero())
    }

    /// Ideal sum `self + other`.
    pub fn sum(&self, other: &Ideal) -> Ideal {
        assert!(same_ring(&self.ring, &other.ring), "ring mismatch in ideal sum");
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ideal::new(self.ring.clone(), gens)
    }

    pub fn with_extra_generators(&self, polys: &[MultiPoly]) -> Ideal {
        let mut gens = self.gens.clone();
        gens.extend(polys.iter().cloned());
        Ideal::new(self.ring.clone(), gens)
    }

    /// Generators of `self ∩ k[remaining variables]`, returned as an ideal of
    /// the smaller ring.  Computed with a block elimination order that puts
    /// the variables to remove in front.
    pub fn eliminate(&self, remove: &[usize]) -> Result<Ideal, Error> {
        let n = self.ring.nvars();
        let mut kill: Vec<usize> = remove.to_vec();
        kill.sort_unstable();
        kill.dedup();
        if kill.iter().any(|&i| i >= n) {
            return Err(Error::input("eliminated variable index out of range".to_string()));
        }
        let keep: Vec<usize> = (0..n).filter(|i| !kill.contains(i)).collect();

        // Permuted ring: eliminated block first, under a block order.
        let mut names: Vec<&str> = kill.iter().map(|&i| self.ring.var_name(i)).collect();
        names.extend(keep.iter().map(|&i| self.ring.var_name(i)));
        let elim_ring = PolyRing::new(&names, MonomialOrder::Block { eliminated: kill.len() });

        let mut old_to_new = vec![None; n];
        for (pos, &i) in kill.iter().enumerate() {
            old_to_new[i] = Some(pos);
        }
        for (pos, &i) in keep.iter().enumerate() {
            old_to_new[i] = Some(kill.len() + pos);
        }
        let mapped: Vec<MultiPoly> = self
            .gens
            .iter()
            .map(|g| g.remap(elim_ring.clone(), &old_to_new).unwrap())
            .collect();

        let gb = buchberger(&elim_ring, &mapped, &GroebnerConfig::default())?;

        // Keep basis elements free of the eliminated block and re-express
        // them in the ring of remaining variables (original relative order).
        let keep_names: Vec<&str> = keep.iter().map(|&i| self.ring.var_name(i)).collect();
        let out_order = match self.ring.order() {
            MonomialOrder::Block { .. } => MonomialOrder::GrevLex,
            o => o,
        };
        let out_ring = PolyRing::new(&keep_names, out_order);
        let mut back = vec![None; elim_ring.nvars()];
        for pos in 0..keep.len() {
            back[kill.len() + pos] = Some(pos);
        }
        let out: Vec<MultiPoly> = gb
            .elements()
            .iter()
            .filter_map(|g| g.remap(out_ring.clone(), &back))
            .collect();
        Ok(Ideal::new(out_ring, out))
    }

    /// Ideal intersection via the auxiliary-variable elimination trick:
    /// eliminate `w` from `w·I + (1−w)·J`.
    pub fn intersect(&self, other: &Ideal) -> Result<Ideal, Error> {
        assert!(
            same_ring(&self.ring, &other.ring),
            "ring mismatch in ideal intersection"
        );
        let n = self.ring.nvars();
        // Fresh auxiliary name.
        let mut aux = "w".to_string();
        while self.ring.var_index(&aux).is_some() {
            aux.push('_');
        }
        let mut names: Vec<&str> = vec![&aux];
        names.extend(self.ring.var_names().iter().map(|s| s.as_str()));
        let ext_ring = PolyRing::new(&names, MonomialOrder::Block { eliminated: 1 });

        let old_to_new: Vec<Option<usize>> = (0..n).map(|i| Some(i + 1)).collect();
        let w = MultiPoly::var(ext_ring.clone(), 0);
        let one_minus_w = &MultiPoly::one(ext_ring.clone()) - &w;
        let mut gens = Vec::new();
        for g in &self.gens {
            let g2 = g.remap(ext_ring.clone(), &old_to_new).unwrap();
            gens.push(&w * &g2);
        }
        for h in &other.gens {
            let h2 = h.remap(ext_ring.clone(), &old_to_new).unwrap();
            gens.push(&one_minus_w * &h2);
        }

        let gb = buchberger(&ext_ring, &gens, &GroebnerConfig::default())?;
        let mut back = vec![None; ext_ring.nvars()];
        for i in 0..n {
            back[i + 1] = Some(i);
        }
        let out: Vec<MultiPoly> = gb
            .elements()
            .iter()
            .filter_map(|g| g.remap(self.ring.clone(), &back))
            .collect();
        Ok(Ideal::new(self.ring.clone(), out))
    }

    /// Ideal quotient `(self : g)` via intersection with `(g)` and exact
    /// division of the resulting generators.
    pub fn quotient(&self, g: &MultiPoly) -> Result<Ideal, Error> {
        if g.is_zero() {
            return Err(Error::input("ideal quotient by the zero polynomial".to_string()));
        }
        let principal = Ideal::new(self.ring.clone(), vec![g.clone()]);
        let inter = self.intersect(&principal)?;
        let out: Vec<MultiPoly> = inter
            .gens
            .iter()
            .map(|f| {
                f.div_exact(g)
                    .expect("intersection with (g) yields multiples of g")
            })
            .collect();
        Ok(Ideal::new(self.ring.clone(), out))
    }

    /// Krull dimension of `R/self`: the maximum size of a variable subset
    /// independent modulo the leading-term ideal.  The unit ideal reports
    /// −1 by convention.
    pub fn dimension(&self) -> Result<i64, Error> {
        let gb = self.groebner()?;
        if gb.is_unit() {
            return Ok(-1);
        }
        let n = self.ring.nvars();
        if n > 20 {
            return Err(Error::resource(
                "dimension search over variable subsets limited to 20 variables".to_string(),
            ));
        }
        let supports: Vec<Vec<usize>> = gb
            .elements()
            .iter()
            .map(|g| g.leading_monomial().unwrap().support())
            .collect();
        for size in (0..=n).rev() {
            // Deterministic subset sweep, ascending bitmask within a size.
            for mask in 0u32..(1u32 << n) {
                if mask.count_ones() as usize != size {
                    continue;
                }
                let independent = supports.iter().all(|supp| {
                    // support ⊆ S would make S dependent
                    !supp.iter().all(|&i| mask & (1 << i) != 0)
                });
                if independent {
                    return Ok(size as i64);
                }
            }
        }
        unreachable!("the empty subset is independent unless the ideal is unit");
    }
}
