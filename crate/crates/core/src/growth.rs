//! Exact growth functions of ideal Coxeter polyhedra.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::combinatorics::{compute_invariants, validate, InvariantVector, ModelError, PolyhedronCombinatorics};
use crate::poly::{bracket_poly, IntPolynomial, PolyError, RationalFunction};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GrowthError {
    #[error("bracket [0] is undefined")]
    ZeroBracket,
    #[error("invalid finite group symbol: {0}")]
    InvalidSymbol(String),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("model fails validation: {0}")]
    InvalidModel(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// `[n] = 1 + t + ... + t^(n-1)`.
pub fn bracket(n: usize) -> Result<IntPolynomial, GrowthError> {
    bracket_poly(n).ok_or(GrowthError::ZeroBracket)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    A,
    B,
    D,
    E,
    F,
    H,
    I2,
}

/// Irreducible finite Coxeter group symbol such as `A3`, `E8` or `I2(5)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FiniteGroupSymbol {
    family: Family,
    rank: usize,
    m: usize,
}

impl FiniteGroupSymbol {
    pub fn new(family: Family, rank: usize) -> Result<Self, GrowthError> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B => rank >= 2,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::H => rank == 3 || rank == 4,
            Family::I2 => false,
        };
        if !ok {
            return Err(GrowthError::InvalidSymbol(format!("{family:?}{rank}")));
        }
        Ok(FiniteGroupSymbol { family, rank, m: 0 })
    }

    /// Dihedral group of order `2m`.
    pub fn dihedral(m: usize) -> Result<Self, GrowthError> {
        if m < 3 {
            return Err(GrowthError::InvalidSymbol(format!("I2({m})")));
        }
        Ok(FiniteGroupSymbol {
            family: Family::I2,
            rank: 2,
            m,
        })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn exponents(&self) -> Vec<usize> {
        let n = self.rank;
        match (self.family, n) {
            (Family::A, _) => (1..=n).collect(),
            (Family::B, _) => (1..=n).map(|i| 2 * i - 1).collect(),
            (Family::D, _) => {
                let mut v: Vec<usize> = (1..n).map(|i| 2 * i - 1).collect();
                v.push(n - 1);
                v
            }
            (Family::E, 6) => vec![1, 4, 5, 7, 8, 11],
            (Family::E, 7) => vec![1, 5, 7, 9, 11, 13, 17],
            (Family::E, _) => vec![1, 7, 11, 13, 17, 19, 23, 29],
            (Family::F, _) => vec![1, 5, 7, 11],
            (Family::H, 3) => vec![1, 5, 9],
            (Family::H, _) => vec![1, 11, 19, 29],
            (Family::I2, _) => vec![1, self.m - 1],
        }
    }
}

impl fmt::Display for FiniteGroupSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::I2 => write!(f, "I2({})", self.m),
            fam => write!(f, "{fam:?}{}", self.rank),
        }
    }
}

impl FromStr for FiniteGroupSymbol {
    type Err = GrowthError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || GrowthError::InvalidSymbol(s.to_string());
        if let Some(rest) = s.strip_prefix("I2(") {
            let m = rest.strip_suffix(')').ok_or_else(bad)?.parse().map_err(|_| bad())?;
            return Self::dihedral(m);
        }
        let mut chars = s.chars();
        let family = match chars.next() {
            Some('A') => Family::A,
            Some('B') => Family::B,
            Some('D') => Family::D,
            Some('E') => Family::E,
            Some('F') => Family::F,
            Some('H') => Family::H,
            _ => return Err(bad()),
        };
        let rank = chars.as_str().parse().map_err(|_| bad())?;
        Self::new(family, rank).map_err(|_| bad())
    }
}

/// Growth polynomial `prod [m_i + 1]` over the exponents.
pub fn finite_growth(symbol: &FiniteGroupSymbol) -> IntPolynomial {
    symbol
        .exponents()
        .iter()
        .fold(IntPolynomial::one(), |acc, &e| &acc * &bracket_poly(e + 1).unwrap())
}

/// Growth polynomial of a reducible group: the product over its components.
pub fn finite_growth_product(components: &[FiniteGroupSymbol]) -> IntPolynomial {
    components
        .iter()
        .fold(IntPolynomial::one(), |acc, s| &acc * &finite_growth(s))
}

/// Growth polynomial of the rank-two group generated by two faces meeting at
/// angle `pi/m`.
fn edge_group_growth(m: u8) -> IntPolynomial {
    let a1 = FiniteGroupSymbol::new(Family::A, 1).unwrap();
    if m == 2 {
        finite_growth_product(&[a1, a1])
    } else {
        finite_growth(&FiniteGroupSymbol::dihedral(m.into()).unwrap())
    }
}

fn require_valid(p: &PolyhedronCombinatorics) -> Result<InvariantVector, GrowthError> {
    let v = validate(p);
    if !v.is_valid() {
        let msgs: Vec<String> = v.report.failures().map(|c| c.name.clone()).collect();
        return Err(GrowthError::InvalidModel(msgs.join(", ")));
    }
    Ok(v.invariants)
}

/// Steinberg's alternating sum over finite special subgroups, given the
/// face count and the number of edges with each label `2, 3, 4, 6`.
pub fn steinberg_from_counts(f: usize, edge_counts: [usize; 4]) -> RationalFunction {
    let term = |coef: i64, den: IntPolynomial| {
        RationalFunction::new(IntPolynomial::from_i64s(&[coef]), den).expect("nonzero growth polynomial")
    };
    let a1 = finite_growth(&FiniteGroupSymbol::new(Family::A, 1).unwrap());
    let mut sum = RationalFunction::from_poly(IntPolynomial::one());
    sum = sum.add(&term(-(f as i64), a1));
    for (count, m) in edge_counts.iter().zip([2u8, 3, 4, 6]) {
        if *count > 0 {
            sum = sum.add(&term(*count as i64, edge_group_growth(m)));
        }
    }
    // The sum is 1/F(1/t); invert after substituting t -> 1/t.
    sum.substitute_reciprocal().recip().expect("Steinberg sum is nonzero")
}

/// Growth function from the finite-subgroup poset of `p`.
pub fn steinberg_growth(p: &PolyhedronCombinatorics) -> Result<RationalFunction, GrowthError> {
    let iv = require_valid(p)?;
    Ok(steinberg_from_counts(
        p.face_count(),
        [iv.e2, iv.e3, iv.e4, iv.e6].map(|x| x as usize),
    ))
}

/// The degree-7 denominator polynomial `g(t)` determined by the invariants.
pub fn g_polynomial(iv: &InvariantVector) -> IntPolynomial {
    let (f, c, c9, c10) = (iv.f, iv.c, iv.c9, iv.c10);
    IntPolynomial::from_i64s(&[
        -2,
        2 * f - 6,
        2 * c - 2 * f + c9,
        4 * f - c9 + c10 - 12,
        4 * c - 4 * f + c9 - c10 + 4,
        2 * c + 2 * f - c9 - 8,
        2 * c - 2 * f + 2,
        2 * c - 2,
    ])
}

/// `g(1/2)` evaluated directly and through the shortcut
/// `(55c + 50f + 10c9 + 4c10 - 415) / 64`.
pub fn g_half(iv: &InvariantVector) -> (BigRational, BigRational) {
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let direct = g_polynomial(iv).eval(&half);
    let shortcut = BigRational::new(
        BigInt::from(55 * iv.c + 50 * iv.f + 10 * iv.c9 + 4 * iv.c10 - 415),
        BigInt::from(64),
    );
    (direct, shortcut)
}

/// `2(1+t)^2(1+t^2)(1+t+t^2)(1-t+t^2)`.
pub fn closed_form_numerator() -> IntPolynomial {
    let p = IntPolynomial::from_i64s;
    p(&[2]) * p(&[1, 1]).pow(2) * p(&[1, 0, 1]) * p(&[1, 1, 1]) * p(&[1, -1, 1])
}

pub fn closed_form_from_invariants(iv: &InvariantVector) -> RationalFunction {
    let den = IntPolynomial::from_i64s(&[-1, 1]) * g_polynomial(iv);
    RationalFunction::new(closed_form_numerator(), den).expect("g is nonzero")
}

pub fn closed_form_growth(p: &PolyhedronCombinatorics) -> Result<RationalFunction, GrowthError> {
    let iv = require_valid(p)?;
    Ok(closed_form_from_invariants(&iv))
}

/// Taylor coefficients `a_0..=a_n` of the growth series of `p`.
pub fn growth_series(p: &PolyhedronCombinatorics, n: usize) -> Result<Vec<BigInt>, GrowthError> {
    Ok(closed_form_growth(p)?.series_coefficients(n)?)
}

/// Invariants of `p`, requiring every cusp to classify.
pub fn invariants_of(p: &PolyhedronCombinatorics) -> Result<InvariantVector, GrowthError> {
    Ok(compute_invariants(p)?)
}

/// Whether `g(1/2)` agrees with the shortcut and is positive.
pub fn g_half_positive(iv: &InvariantVector) -> bool {
    let (d, s) = g_half(iv);
    d == s && d > BigRational::zero()
}
