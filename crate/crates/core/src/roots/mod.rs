//! Certified analysis of the denominator polynomial `g`: the dominant root,
//! the growth rate, the Perron property and the reversed integer polynomial.

mod perron;
mod sturm;

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::combinatorics::{validate, InvariantVector, PolyhedronCombinatorics};
use crate::growth::g_polynomial;
use crate::poly::IntPolynomial;
use crate::report::Report;

pub use perron::{perron_certify, strip_unit_circle, unit_circle_factors, PerronOutcome, MAX_DEPTH};
pub use sturm::{linear_factor, rational_roots, refine, sturm_isolate, RationalInterval, SturmSequence};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RootError {
    #[error("model fails validation: {0}")]
    InvalidModel(String),
    #[error("internal contradiction: {0}")]
    InternalContradiction(String),
    #[error("inconclusive: {0}")]
    Inconclusive(String),
    #[error("tolerance must be positive")]
    BadTolerance,
    #[error("model is not right-angled")]
    NotRightAngled,
    #[error("g does not factor as 2(t^2+1)(t^4+t^2+1)((f-3)t-1)")]
    FactorizationMismatch,
    #[error("c9 = {c9} and c10 = {c10} must both be even")]
    Parity { c9: i64, c10: i64 },
}

/// Default refinement width for the dominant root.
pub fn default_tolerance() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(10u64.pow(10)))
}

/// Certified description of the smallest positive root `r0` of `g` and of
/// the growth rate `tau = 1/r0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootCertificate {
    pub g: IntPolynomial,
    pub r0_enclosure: RationalInterval,
    pub tau_enclosure: RationalInterval,
    pub simple: bool,
    pub perron: bool,
    pub modulus_gap: Option<BigRational>,
    pub tau_min_poly_candidate: Option<IntPolynomial>,
}

impl RootCertificate {
    pub fn is_exact(&self) -> bool {
        self.r0_enclosure.is_point()
    }

    /// Midpoint of the tau enclosure as a float.
    pub fn tau_estimate(&self) -> f64 {
        let (a, b) = self.tau_enclosure.to_f64();
        (a + b) / 2.0
    }

    /// Upper bound on the distance from [`tau_estimate`](Self::tau_estimate) to tau.
    pub fn tau_error(&self) -> f64 {
        let (a, b) = self.tau_enclosure.to_f64();
        (b - a) / 2.0
    }
}

impl fmt::Display for RootCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "g(t) = {}", self.g)?;
        if self.is_exact() {
            writeln!(f, "r0 = {} (exact)", self.r0_enclosure.lo)?;
            writeln!(f, "tau = {} (exact)", self.tau_enclosure.lo)?;
        } else {
            writeln!(f, "r0 in {}", self.r0_enclosure)?;
            writeln!(f, "tau in {}", self.tau_enclosure)?;
            writeln!(f, "tau ~ {:.10} +/- {:.3e}", self.tau_estimate(), self.tau_error())?;
        }
        writeln!(f, "simple: {}", self.simple)?;
        match &self.modulus_gap {
            Some(gap) if self.perron => writeln!(f, "perron: true (gap >= {gap})")?,
            None if self.perron => writeln!(f, "perron: true (no other roots)")?,
            _ => writeln!(f, "perron: false")?,
        }
        if let Some(p) = &self.tau_min_poly_candidate {
            writeln!(f, "tau polynomial: {p}")?;
        }
        Ok(())
    }
}

fn require_valid(p: &PolyhedronCombinatorics) -> Result<InvariantVector, RootError> {
    let v = validate(p);
    if !v.is_valid() {
        let names: Vec<String> = v.report.failures().map(|c| c.name.clone()).collect();
        return Err(RootError::InvalidModel(names.join(", ")));
    }
    Ok(v.invariants)
}

/// Isolates the root of `g` in `(0, 1/2)`, refines it to width `tol` and
/// certifies dominance.
pub fn certify_polynomial(g: &IntPolynomial, tol: &BigRational) -> Result<RootCertificate, RootError> {
    if !tol.is_positive() {
        return Err(RootError::BadTolerance);
    }
    let zero = BigRational::zero();
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let roots = sturm_isolate(g, &zero, &half);
    if roots.len() != 1 {
        return Err(RootError::InternalContradiction(format!(
            "expected one root of g in (0, 1/2), found {}",
            roots.len()
        )));
    }
    let r0 = refine(g, &roots[0], tol);
    let outcome = perron_certify(g, &r0)?;
    let tau = if r0.is_point() {
        RationalInterval::point(r0.lo.recip())
    } else {
        r0.reciprocal()
    };
    Ok(RootCertificate {
        g: g.clone(),
        r0_enclosure: r0,
        tau_enclosure: tau,
        simple: true,
        perron: outcome.perron,
        modulus_gap: outcome.modulus_gap,
        tau_min_poly_candidate: None,
    })
}

/// Certified growth rate of the reflection group of `p`.
pub fn growth_rate(p: &PolyhedronCombinatorics, tol: &BigRational) -> Result<RootCertificate, RootError> {
    let iv = require_valid(p)?;
    let mut cert = certify_polynomial(&g_polynomial(&iv), tol)?;
    cert.tau_min_poly_candidate = Some(tau_polynomial(&iv)?);
    Ok(cert)
}

/// The monic degree-7 polynomial `-(tau^7 / 2) g(1/tau)`.
pub fn tau_polynomial(iv: &InvariantVector) -> Result<IntPolynomial, RootError> {
    let (f, c, c9, c10) = (iv.f, iv.c, iv.c9, iv.c10);
    if c9 % 2 != 0 || c10 % 2 != 0 {
        return Err(RootError::Parity { c9, c10 });
    }
    let (h9, h10) = (c9 / 2, c10 / 2);
    let p = IntPolynomial::from_i64s(&[
        -(c - 1),
        -(c - f + 1),
        -(c + f - h9 - 4),
        -(2 * c - 2 * f + h9 - h10 + 2),
        -(2 * f - h9 + h10 - 6),
        -(c - f + h9),
        -(f - 3),
        1,
    ]);
    // Cross-check against the reversal of g.
    let g = g_polynomial(iv);
    let rev = IntPolynomial::new((0..8).map(|k| -g.coeff(7 - k)).collect());
    if rev != p.scale(&BigInt::from(2)) {
        return Err(RootError::InternalContradiction(
            "tau polynomial differs from reversed g".into(),
        ));
    }
    Ok(p)
}

/// Spot-checks of the sign and monotonicity of `g` at `grid` exact rational
/// points in each of `(-1/2, 0)` and `(0, 1/2)`.
pub fn prop1_checks(p: &PolyhedronCombinatorics, grid: usize) -> Result<Report, RootError> {
    let iv = require_valid(p)?;
    Ok(prop1_checks_for(&g_polynomial(&iv), iv.is_right_angled(), grid))
}

pub fn prop1_checks_for(g: &IntPolynomial, right_angled: bool, grid: usize) -> Report {
    let mut r = Report::new();
    let grid = grid.max(1);
    // Midpoints (2j - 1) / (4 grid), j = 1..=grid, lie strictly inside (0, 1/2).
    let points: Vec<BigRational> = (1..=grid)
        .map(|j| BigRational::new(BigInt::from(2 * j - 1), BigInt::from(4 * grid)))
        .collect();
    let note = format!("spot-check at {grid} rational points, not a proof");

    let bad: Vec<String> = points
        .iter()
        .map(|x| -x)
        .filter(|x| !g.eval(x).is_negative())
        .map(|x| x.to_string())
        .collect();
    r.check(
        format!("(1) g < 0 on (-1/2, 0) [{note}]"),
        bad.is_empty(),
        format!("g >= 0 at {}", bad.join(", ")),
    );

    if right_angled {
        r.skip(
            "(2) g' > 0 on (0, 1/2)",
            "right-angled: the derivative may vanish in (0, 1/2), so (2) is not asserted",
        );
    } else {
        let d = g.derivative();
        let bad: Vec<String> = points
            .iter()
            .filter(|x| !d.eval(x).is_positive())
            .map(|x| x.to_string())
            .collect();
        r.check(
            format!("(2) g' > 0 on (0, 1/2) [{note}]"),
            bad.is_empty(),
            format!("g' <= 0 at {}", bad.join(", ")),
        );
    }

    let g0 = g.coeff(0);
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let gh = g.eval(&half);
    r.check(
        "(3) g(0) = -2 and g(1/2) > 0",
        g0 == BigInt::from(-2) && gh.is_positive(),
        format!("g(0) = {g0}, g(1/2) = {gh}"),
    );
    r
}

/// Growth rate `f - 3` of a right-angled model, after checking the exact
/// factorization of `g`.
pub fn right_angled_rate(p: &PolyhedronCombinatorics) -> Result<i64, RootError> {
    if !p.is_right_angled() {
        return Err(RootError::NotRightAngled);
    }
    let iv = require_valid(p)?;
    let f = iv.f;
    let want = IntPolynomial::from_i64s(&[2])
        * IntPolynomial::from_i64s(&[1, 0, 1])
        * IntPolynomial::from_i64s(&[1, 0, 1, 0, 1])
        * IntPolynomial::from_i64s(&[-1, f - 3]);
    let g = g_polynomial(&iv);
    if g != want {
        return Err(RootError::FactorizationMismatch);
    }
    // Division by the known factors must leave exactly the linear factor.
    let lin = g
        .exact_div(
            &(IntPolynomial::from_i64s(&[2])
                * IntPolynomial::from_i64s(&[1, 0, 1])
                * IntPolynomial::from_i64s(&[1, 0, 1, 0, 1])),
        )
        .ok_or(RootError::FactorizationMismatch)?;
    if lin != IntPolynomial::from_i64s(&[-1, f - 3]) {
        return Err(RootError::FactorizationMismatch);
    }
    Ok(f - 3)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::{antiprism, catalog, catalog_all, compute_invariants};

    fn tol() -> BigRational {
        BigRational::new(BigInt::one(), BigInt::from(100_000_000))
    }

    #[test]
    fn catalog_rates() {
        let want = [
            ("P1", 2.030735),
            ("P2", 2.130395),
            ("P3", 2.302776),
            ("P4", 2.747380),
            ("P5", 2.845466),
        ];
        for (name, tau) in want {
            let c = growth_rate(&catalog(name).unwrap(), &tol()).unwrap();
            assert!((c.tau_estimate() - tau).abs() < 1e-5, "{name}: {}", c.tau_estimate());
            assert!(c.perron && c.modulus_gap.as_ref().unwrap().is_positive(), "{name}");
        }
    }

    #[test]
    fn octahedron_is_exact() {
        let c = growth_rate(&catalog("OCT").unwrap(), &tol()).unwrap();
        assert!(c.is_exact());
        assert_eq!(c.tau_enclosure.lo, BigRational::from_integer(BigInt::from(5)));
        assert!(c.perron);
        assert_eq!(right_angled_rate(&catalog("OCT").unwrap()), Ok(5));
        assert_eq!(right_angled_rate(&antiprism(4)), Ok(7));
        assert_eq!(
            right_angled_rate(&catalog("P1").unwrap()),
            Err(RootError::NotRightAngled)
        );
    }

    #[test]
    fn tau_polynomial_examples() {
        let iv = compute_invariants(&catalog("P3").unwrap()).unwrap();
        assert_eq!(
            tau_polynomial(&iv).unwrap(),
            IntPolynomial::from_i64s(&[-3, -1, -2, -4, 0, -2, -1, 1])
        );
        let iv = compute_invariants(&catalog("OCT").unwrap()).unwrap();
        let want = IntPolynomial::from_i64s(&[-5, 1])
            * IntPolynomial::from_i64s(&[1, 0, 1])
            * IntPolynomial::from_i64s(&[1, 0, 1, 0, 1]);
        assert_eq!(tau_polynomial(&iv).unwrap(), want);
        let mut odd = iv;
        odd.c9 = 1;
        assert!(matches!(tau_polynomial(&odd), Err(RootError::Parity { .. })));
    }

    #[test]
    fn prop1_on_catalog() {
        for m in catalog_all() {
            let r = prop1_checks(&m, 64).unwrap();
            assert!(r.passed(), "{}:\n{r}", m.name());
        }
        let r = prop1_checks(&catalog("OCT").unwrap(), 64).unwrap();
        assert!(r
            .checks
            .iter()
            .any(|c| matches!(c.status, crate::report::CheckStatus::Skipped(_))));
    }

    #[test]
    fn double_root_is_inconclusive() {
        // (3t - 1)^2 (t + 2)(t^2 + t + 3)
        let g = IntPolynomial::from_i64s(&[-1, 3]).pow(2)
            * IntPolynomial::from_i64s(&[2, 1])
            * IntPolynomial::from_i64s(&[3, 1, 1]);
        assert!(matches!(
            certify_polynomial(&g, &tol()),
            Err(RootError::Inconclusive(_))
        ));
    }

    #[test]
    fn sturm_on_g_finds_one_root() {
        let zero = BigRational::zero();
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        for m in catalog_all() {
            let g = g_polynomial(&compute_invariants(&m).unwrap());
            assert_eq!(sturm_isolate(&g, &zero, &half).len(), 1, "{}", m.name());
        }
        let lin = IntPolynomial::from_i64s(&[-1, 5]);
        let one = BigRational::one();
        assert_eq!(sturm_isolate(&lin, &zero, &one).len(), 1);
    }
}
