//! Bounded-degree approximation of a solution's kernel by exact linear
//! algebra.
//!
//! The kernel of `φ` is the largest `D`-stable ideal inside the prime; no
//! finite procedure computes it in general, so the engine searches the
//! degree-`d` slice: columns are the monomials of degree ≤ `d` (centered at
//! the prescribed values so constant terms drop out and the echelon form is
//! canonical), rows are the `t`-coefficients `0..r` of their pushforwards,
//! and the matrix kernel is exactly `{g : deg g ≤ d, φ(g) ≡ 0 mod t^{r+1}}`.
//! Membership of the true kernel is a necessary consequence, never certified
//! here — certification happens in the simplicity layer by Gröbner
//! computations that do not depend on the truncation order.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::algebra::{ExactMatrix, FieldElement, Monomial, MultiPoly, Rational};
use crate::derivation::Derivation;
use crate::error::Error;
use crate::groebner::inter_reduce;
use crate::solver::{solve_exponential, verify_solution, PrimeSpec, Solution};

/// The degree-`d`, order-`r` kernel slice of a solution.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelApprox {
    degree: u32,
    order: usize,
    /// Matrix columns: monomials of degree ≤ `degree`, descending in ring
    /// order.
    columns: Vec<Monomial>,
    /// Canonical (reduced-echelon) basis of the kernel space, as coefficient
    /// vectors over `columns` in centered coordinates.
    vectors: Vec<Vec<Rational>>,
    /// The same space as polynomials, autoreduced to a minimal monic
    /// generating list, expanded in the ring variables.
    basis: Vec<MultiPoly>,
}

impl KernelApprox {
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn columns(&self) -> &[Monomial] {
        &self.columns
    }

    pub fn vectors(&self) -> &[Vec<Rational>] {
        &self.vectors
    }

    /// Linear dimension of the kernel slice.
    pub fn space_dimension(&self) -> usize {
        self.vectors.len()
    }

    pub fn basis(&self) -> &[MultiPoly] {
        &self.basis
    }
}

/// All exponent vectors of total degree ≤ `d` in `nvars` variables.
fn monomials_up_to(nvars: usize, d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut exps = vec![0u32; nvars];
    fill(&mut out, &mut exps, 0, d);
    out
}

fn fill(out: &mut Vec<Monomial>, exps: &mut Vec<u32>, i: usize, left: u32) {
    if i == exps.len() {
        out.push(Monomial(exps.clone()));
        return;
    }
    for e in 0..=left {
        exps[i] = e;
        fill(out, exps, i + 1, left - e);
    }
    exps[i] = 0;
}

/// Kernel slice of an explicit solution at degree bound `degree`, using the
/// solution's full stored order as the number of `t`-coefficient
/// constraints.
pub fn kernel_from_solution(
    d: &Derivation,
    s: &Solution,
    degree: u32,
) -> Result<KernelApprox, Error> {
    let ring = d.ring();
    s.prime().validate(ring)?;
    let r = s.order();
    let prescribed = s.prime().prescribed(ring);

    let mut columns = monomials_up_to(ring.nvars(), degree);
    columns.sort_by(|a, b| ring.order().cmp(b, a));

    // Centered column polynomial: (x_i − a_i)^{e_i} over prescribed
    // variables, raw powers over residue variables.
    let col_polys: Vec<MultiPoly> = columns
        .iter()
        .map(|m| {
            let mut acc = MultiPoly::one(ring.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let factor = match &prescribed[i] {
                    Some(a) => {
                        &MultiPoly::var(ring.clone(), i)
                            - &MultiPoly::constant(ring.clone(), FieldElement::Rat(a.clone()))
                    }
                    None => MultiPoly::var(ring.clone(), i),
                };
                acc = &acc * &factor.pow(e);
            }
            acc
        })
        .collect();

    // One Q-linear row per (t-power, residue monomial) pair with a nonzero
    // entry; residue coefficients are split over their monomial support so
    // the whole system stays over Q.
    let residue_arity = match s.prime().residue_ring(ring) {
        Some(rr) => rr.nvars(),
        None => 0,
    };
    let unit = Monomial(vec![0; residue_arity]);
    let mut rows: BTreeMap<(usize, Monomial), Vec<Rational>> = BTreeMap::new();
    let zero_row = || vec![Rational::zero(); col_polys.len()];
    for (j, cp) in col_polys.iter().enumerate() {
        let series = s.push(cp, r)?;
        for k in 0..=r {
            match series.coeff(k) {
                FieldElement::Rat(c) => {
                    if !c.is_zero() {
                        rows.entry((k, unit.clone())).or_insert_with(zero_row)[j] = c.clone();
                    }
                }
                FieldElement::Fun(f) => {
                    let den = f
                        .denominator()
                        .constant_term()
                        .as_rational()
                        .filter(|_| f.denominator().is_constant())
                        .ok_or_else(|| {
                            Error::input(
                                "kernel search needs polynomial residue coefficients".to_string(),
                            )
                        })?;
                    for (mono, coeff) in f.numerator().terms() {
                        let c = coeff
                            .as_rational()
                            .expect("residue numerators have rational coefficients");
                        rows.entry((k, mono.clone())).or_insert_with(zero_row)[j] = c / &den;
                    }
                }
            }
        }
    }

    let matrix = if rows.is_empty() {
        // Everything pushes to zero: the kernel is the whole column space.
        ExactMatrix::zero(1, col_polys.len())
    } else {
        ExactMatrix::from_rows(
            rows.into_values()
                .map(|row| row.into_iter().map(FieldElement::Rat).collect())
                .collect(),
        )
    };
    let kernel = matrix.rref().kernel;

    // Canonicalize the space: reduced echelon form over the column basis.
    let vectors: Vec<Vec<Rational>> = if kernel.is_empty() {
        Vec::new()
    } else {
        let canon = ExactMatrix::from_rows(kernel).rref();
        (0..canon.rank)
            .map(|i| {
                canon
                    .matrix
                    .row(i)
                    .iter()
                    .map(|v| v.as_rational().expect("kernel vectors are rational"))
                    .collect()
            })
            .collect()
    };

    let polys: Vec<MultiPoly> = vectors
        .iter()
        .map(|v| {
            let mut acc = MultiPoly::zero(ring.clone());
            for (j, c) in v.iter().enumerate() {
                if !c.is_zero() {
                    acc = &acc + &col_polys[j].scale(&FieldElement::Rat(c.clone()));
                }
            }
            acc
        })
        .collect();
    let basis = inter_reduce(polys);

    Ok(KernelApprox {
        degree,
        order: r,
        columns,
        vectors,
        basis,
    })
}

/// Kernel slice of the canonical solution through `p` at `(degree, r)`.
pub fn kernel_approx(
    d: &Derivation,
    p: &PrimeSpec,
    degree: u32,
    r: usize,
) -> Result<KernelApprox, Error> {
    let s = solve_exponential(d, p, r)?;
    kernel_from_solution(d, &s, degree)
}

/// Two verified solutions through one prime induce the same map on spectra
/// iff their kernels agree; at bounded precision, compare the canonical
/// kernel bases at `(degree, r)`.
pub fn topologically_equal(
    d: &Derivation,
    s1: &Solution,
    s2: &Solution,
    degree: u32,
    r: usize,
) -> Result<bool, Error> {
    if s1.prime() != s2.prime() {
        return Err(Error::input(
            "solutions pass through different primes".to_string(),
        ));
    }
    if r > s1.order() || r > s2.order() {
        return Err(Error::input(format!(
            "comparison order {r} exceeds a solution's stored order"
        )));
    }
    for s in [s1, s2] {
        if !verify_solution(s, d, s.order() - 1)? {
            return Err(Error::input(
                "operand does not verify as a solution".to_string(),
            ));
        }
    }
    let k1 = kernel_from_solution(d, &s1.truncate(r)?, degree)?;
    let k2 = kernel_from_solution(d, &s2.truncate(r)?, degree)?;
    Ok(k1.basis() == k2.basis())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rational_from_i64, PolyRing, RationalFunction, TruncSeries};
    use crate::solver::SolveMethod;

    fn qz(n: i64) -> Rational {
        rational_from_i64(n, 1)
    }

    fn constant_flow() -> Derivation {
        let ring = PolyRing::grevlex(&["x", "y", "z"]);
        let one = MultiPoly::one(ring.clone());
        Derivation::new(ring, vec![one.clone(), one.clone(), one])
    }

    fn spiral() -> Derivation {
        let ring = PolyRing::grevlex(&["x", "y", "z"]);
        let x = MultiPoly::var(ring.clone(), 0);
        let y = MultiPoly::var(ring.clone(), 1);
        let z = MultiPoly::var(ring.clone(), 2);
        Derivation::new(ring.clone(), vec![y, &x * &z, MultiPoly::zero(ring)])
    }

    #[test]
    fn monomial_enumeration_counts_binomially() {
        assert_eq!(monomials_up_to(3, 3).len(), 20);
        assert_eq!(monomials_up_to(2, 2).len(), 6);
        assert_eq!(monomials_up_to(1, 5).len(), 6);
    }

    #[test]
    fn equal_coordinates_force_linear_relations() {
        // φ(x) = φ(y) = φ(z) = t: the degree-1 slice is cut out by x−z, y−z.
        let d = constant_flow();
        let p = PrimeSpec::point(vec![qz(0), qz(0), qz(0)]);
        let k = kernel_approx(&d, &p, 1, 3).unwrap();
        assert_eq!(k.space_dimension(), 2);
        let strings: Vec<String> = k.basis().iter().map(|g| g.to_string()).collect();
        assert_eq!(strings, vec!["x - z", "y - z"]);
        // same span as the presentation {x−y, y−z}
        let ring = d.ring().clone();
        let x = MultiPoly::var(ring.clone(), 0);
        let y = MultiPoly::var(ring.clone(), 1);
        let z = MultiPoly::var(ring.clone(), 2);
        let alt = crate::groebner::Ideal::new(ring.clone(), vec![&x - &y, &y - &z]);
        let mine = crate::groebner::Ideal::new(ring, k.basis().to_vec());
        assert!(mine.equal(&alt).unwrap());
    }

    #[test]
    fn first_integrals_reduce_to_two_generators() {
        // The slice at d=3, r=10 collapses to the stable pair
        // {x² − 1/5·y² − 11/5, z − 5}, ideal-equal to (z−5, x²z−y²−11).
        let d = spiral();
        let p = PrimeSpec::point(vec![qz(2), qz(3), qz(5)]);
        let k = kernel_approx(&d, &p, 3, 10).unwrap();
        let strings: Vec<String> = k.basis().iter().map(|g| g.to_string()).collect();
        assert_eq!(strings, vec!["x^2 - 1/5*y^2 - 11/5", "z - 5"]);
        let ring = d.ring().clone();
        let x = MultiPoly::var(ring.clone(), 0);
        let y = MultiPoly::var(ring.clone(), 1);
        let z = MultiPoly::var(ring.clone(), 2);
        let five = MultiPoly::constant(ring.clone(), FieldElement::from_i64(5));
        let eleven = MultiPoly::constant(ring.clone(), FieldElement::from_i64(11));
        let cubic = &(&(&(&x * &x) * &z) - &(&y * &y)) - &eleven;
        let reference = crate::groebner::Ideal::new(ring.clone(), vec![&z - &five, cubic]);
        let mine = crate::groebner::Ideal::new(ring, k.basis().to_vec());
        assert!(mine.equal(&reference).unwrap());
        // every basis element vanishes at the prime and pushes to zero
        let s = solve_exponential(&d, &p, 10).unwrap();
        for g in k.basis() {
            assert!(p.residue_eval(g).is_zero());
            assert!(s.push(g, 10).unwrap().is_zero());
        }
    }

    #[test]
    fn independent_coordinates_leave_an_empty_kernel()  {
        // φ(x) = t, φ(y) = e^t: no polynomial relation at this precision.
        let ring = PolyRing::grevlex(&["x", "y"]);
        let one = MultiPoly::one(ring.clone());
        let y = MultiPoly::var(ring.clone(), 1);
        let d = Derivation::new(ring, vec![one, y]);
        let p = PrimeSpec::point(vec![qz(0), qz(1)]);
        let k = kernel_approx(&d, &p, 3, 12).unwrap();
        assert_eq!(k.space_dimension(), 0);
        assert!(k.basis().is_empty());
    }

    #[test]
    fn kernel_over_a_coordinate_prime_splits_residue_monomials() {
        // Through coord(x=0, y=0) the spiral solution kills x and y and
        // fixes z, so the slice is the monomials divisible by x or y.
        let d = spiral();
        let p = PrimeSpec::coordinate(vec![(0, qz(0)), (1, qz(0))]).unwrap();
        let k = kernel_approx(&d, &p, 2, 6).unwrap();
        let strings: Vec<String> = k.basis().iter().map(|g| g.to_string()).collect();
        assert_eq!(strings, vec!["x", "y"]);
        assert_eq!(k.space_dimension(), 7);
    }

    #[test]
    fn quotient_shadow_appears_in_the_kernel() {
        // D̂ = ∂x on k[x,y] through the origin: φ(y) = 0, so the slice is
        // the multiples of y.
        let ring = PolyRing::grevlex(&["x", "y"]);
        let d = Derivation::new(
            ring.clone(),
            vec![MultiPoly::one(ring.clone()), MultiPoly::zero(ring)],
        );
        let p = PrimeSpec::point(vec![qz(0), qz(0)]);
        let k = kernel_approx(&d, &p, 2, 6).unwrap();
        let strings: Vec<String> = k.basis().iter().map(|g| g.to_string()).collect();
        assert_eq!(strings, vec!["y"]);
        assert_eq!(k.space_dimension(), 3);
    }

    #[test]
    fn distinct_residue_images_stay_topologically_equal() {
        // z ↦ z and z ↦ z² through coord(x=0, y=0) share the kernel.
        let d = spiral();
        let p = PrimeSpec::coordinate(vec![(0, qz(0)), (1, qz(0))]).unwrap();
        let canonical = solve_exponential(&d, &p, 6).unwrap();
        let rr = p.residue_ring(d.ring()).unwrap();
        let z_res = MultiPoly::var(rr, 0);
        let z_sq = FieldElement::Fun(RationalFunction::from_poly(&z_res * &z_res));
        let manual = Solution::new(
            p.clone(),
            6,
            vec![
                TruncSeries::zero(6),
                TruncSeries::zero(6),
                TruncSeries::constant(z_sq, 6),
            ],
            SolveMethod::Manual,
        );
        assert!(topologically_equal(&d, &canonical, &manual, 2, 6).unwrap());
    }

    #[test]
    fn exponential_and_recurrence_solutions_are_topologically_equal() {
        let d = spiral();
        let p = PrimeSpec::point(vec![qz(2), qz(3), qz(5)]);
        let a = solve_exponential(&d, &p, 8).unwrap();
        let b = crate::solver::solve_ode(&d, &p, 8).unwrap();
        assert!(topologically_equal(&d, &a, &b, 2, 8).unwrap());
    }

    #[test]
    fn topological_comparison_guards_its_inputs() {
        let d = spiral();
        let p1 = PrimeSpec::point(vec![qz(2), qz(3), qz(5)]);
        let p2 = PrimeSpec::point(vec![qz(0), qz(1), qz(5)]);
        let s1 = solve_exponential(&d, &p1, 6).unwrap();
        let s2 = solve_exponential(&d, &p2, 6).unwrap();
        assert!(matches!(
            topologically_equal(&d, &s1, &s2, 2, 6),
            Err(Error::Input(_))
        ));
        // fabricated non-solution through the same prime is rejected
        let mut coords = s1.coords().to_vec();
        coords[2] = TruncSeries::from_coeffs(
            (0..=6)
                .map(|j| FieldElement::from_i64(if j == 1 { 1 } else { 5 * ((j == 0) as i64) }))
                .collect(),
        );
        let fake = Solution::new(p1, 6, coords, SolveMethod::Manual);
        assert!(matches!(
            topologically_equal(&d, &s1, &fake, 2, 6),
            Err(Error::Input(_))
        ));
    }
}
