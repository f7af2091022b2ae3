//! Exact computer algebra for truncated formal flows of polynomial
//! derivations, with differential-simplicity diagnostics.
//!
//! The crate is organised in four layers:
//!
//! * [`algebra`] — exact scalars (arbitrary-precision rationals and rational
//!   functions), sparse multivariate polynomials, truncated power series and
//!   exact linear algebra.  Everything downstream is built on these.
//! * [`groebner`] — ideals, Buchberger's algorithm, normal forms and the
//!   ideal operations (equality, elimination, intersection, quotient,
//!   dimension) the certificate layer needs.
//! * [`derivation`] — a polynomial derivation `D = f_1 ∂_1 + … + f_n ∂_n`,
//!   its iterated application, the formal exponential `e^{tD}`, ideal
//!   stability and the uniform-power diagnostics.
//! * [`solver`] — power-series solutions through a prime (two independent
//!   routes), solution verification, bounded kernel search, topological
//!   comparison and simplicity verdicts.
//!
//! All arithmetic is exact; there are no floating-point values anywhere and
//! every reported equality is a true equality of rational data.

pub mod algebra;
pub mod derivation;
pub mod error;
pub mod groebner;
pub mod solver;

pub use algebra::{
    ExactMatrix, FieldElement, Monomial, MonomialOrder, MultiPoly, PolyRing, Rational,
    RationalFunction, TruncSeries,
};
pub use derivation::{Derivation, EllReport, NilpotencyReport, PolySeries};
pub use error::Error;
pub use groebner::{GroebnerBasis, Ideal};
pub use solver::{
    annihilator_check, is_trivial, kernel_approx, kernel_from_solution, quotient_lift_check,
    simplicity_report, simplicity_report_with_cap, solve_exponential, solve_ode,
    topologically_equal, verify_solution, AnnihilatorReport, KernelApprox, PrimeSpec,
    QuotientLiftReport, SimplicityReport, SimplicityVerdict, SolveMethod, Solution,
    StabilityChecks,
};
