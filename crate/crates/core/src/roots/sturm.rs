//! Real root isolation by Sturm sequences over exact rationals.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::poly::IntPolynomial;

/// Closed interval `[lo, hi]` with rational endpoints.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalInterval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl RationalInterval {
    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        debug_assert!(lo <= hi);
        RationalInterval { lo, hi }
    }

    pub fn point(x: BigRational) -> Self {
        RationalInterval { lo: x.clone(), hi: x }
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(BigInt::from(2))
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    /// Left of `other`. Isolating intervals may share an endpoint, which is
    /// then not a root, so only exact points must be strictly separated.
    pub fn precedes(&self, other: &Self) -> bool {
        self.hi < other.lo || (self.hi == other.lo && !self.is_point() && !other.is_point())
    }

    /// Elementwise reciprocal of an interval inside `(0, inf)`.
    pub fn reciprocal(&self) -> Self {
        assert!(self.lo.is_positive(), "reciprocal needs a positive interval");
        RationalInterval {
            lo: self.hi.recip(),
            hi: self.lo.recip(),
        }
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (to_f64(&self.lo), to_f64(&self.hi))
    }
}

impl fmt::Display for RationalInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

pub(crate) fn to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

pub(crate) fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Divides by the (positive) content, keeping every sign.
fn reduce(p: IntPolynomial) -> IntPolynomial {
    let c = p.content();
    if c.is_zero() || c.is_one() {
        return p;
    }
    IntPolynomial::new(p.coeffs().iter().map(|a| a / &c).collect())
}

/// Sturm chain of a square-free polynomial.
#[derive(Debug, Clone)]
pub struct SturmSequence {
    chain: Vec<IntPolynomial>,
}

impl SturmSequence {
    pub fn new(p: &IntPolynomial) -> Self {
        let mut chain = vec![p.clone()];
        let d = reduce(p.derivative());
        if !d.is_zero() {
            chain.push(d);
        }
        while chain.len() >= 2 {
            let n = chain.len();
            let r = -reduce(chain[n - 2].pseudo_rem(&chain[n - 1]));
            if r.is_zero() {
                break;
            }
            chain.push(r);
        }
        SturmSequence { chain }
    }

    pub fn polynomial(&self) -> &IntPolynomial {
        &self.chain[0]
    }

    /// Sign variations of the chain at `x`, zeros skipped.
    pub fn variations(&self, x: &BigRational) -> usize {
        let mut last = Ordering::Equal;
        let mut v = 0;
        for q in &self.chain {
            let s = q.sign_at(x);
            if s == Ordering::Equal {
                continue;
            }
            if last != Ordering::Equal && s != last {
                v += 1;
            }
            last = s;
        }
        v
    }

    /// Distinct roots in the open interval `(a, b)`.
    pub fn count_open(&self, a: &BigRational, b: &BigRational) -> usize {
        let at_b = usize::from(self.chain[0].sign_at(b) == Ordering::Equal);
        (self.variations(a) - self.variations(b)).saturating_sub(at_b)
    }
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut out = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if n.is_multiple_of(&d) {
            out.push(d.clone());
            let q = &n / &d;
            if q != d {
                out.push(q);
            }
        }
        d += 1;
    }
    out
}

/// Rational roots of `p` inside `(a, b)`, if the end coefficients are small
/// enough for the rational root test; `None` otherwise.
pub fn rational_roots(p: &IntPolynomial, a: &BigRational, b: &BigRational) -> Option<Vec<BigRational>> {
    const LIMIT: i64 = 1_000_000;
    let lead = p.leading_coeff()?.clone();
    let low = p.coeffs().iter().find(|c| !c.is_zero())?.clone();
    if lead.abs() > BigInt::from(LIMIT) || low.abs() > BigInt::from(LIMIT) {
        return None;
    }
    let mut roots = Vec::new();
    if p.coeff(0).is_zero() {
        let z = BigRational::zero();
        if a < &z && &z < b {
            roots.push(z);
        }
    }
    let dens = divisors(&lead);
    for num in divisors(&low) {
        for den in &dens {
            for s in [1, -1] {
                let x = BigRational::new(&num * s, den.clone());
                if a < &x && &x < b && !roots.contains(&x) && p.sign_at(&x) == Ordering::Equal {
                    roots.push(x);
                }
            }
        }
    }
    roots.sort();
    Some(roots)
}

/// The linear factor `den*t - num` vanishing at `x`.
pub fn linear_factor(x: &BigRational) -> IntPolynomial {
    IntPolynomial::new(vec![-x.numer().clone(), x.denom().clone()])
}

/// One isolating interval per distinct real root of `p` in the open interval
/// `(a, b)`, in increasing order.
///
/// Each interval is either a single exact rational root or an interval whose
/// endpoints are not roots and across which the square-free part of `p`
/// changes sign.
pub fn sturm_isolate(p: &IntPolynomial, a: &BigRational, b: &BigRational) -> Vec<RationalInterval> {
    assert!(!p.is_zero(), "cannot isolate roots of the zero polynomial");
    if a >= b {
        return Vec::new();
    }
    let mut q = p.square_free_part();
    let mut out = Vec::new();
    // Exact rational roots split the search range; the remaining factor
    // does not vanish at them.
    let mut cuts = vec![a.clone()];
    if let Some(rs) = rational_roots(&q, a, b) {
        for r in rs {
            q = q.exact_div(&linear_factor(&r)).expect("rational root factor divides");
            cuts.push(r.clone());
            out.push(RationalInterval::point(r));
        }
    }
    cuts.push(b.clone());
    if q.degree().unwrap_or(0) > 0 {
        let seq = SturmSequence::new(&q);
        let mut stack: Vec<(BigRational, BigRational)> =
            cuts.windows(2).map(|w| (w[0].clone(), w[1].clone())).collect();
        while let Some((lo, hi)) = stack.pop() {
            let n = seq.count_open(&lo, &hi);
            if n == 0 {
                continue;
            }
            let exact = &cuts[1..cuts.len() - 1];
            let clean = q.sign_at(&lo) != Ordering::Equal
                && q.sign_at(&hi) != Ordering::Equal
                && !exact.contains(&lo)
                && !exact.contains(&hi);
            if n == 1 && clean {
                out.push(RationalInterval::new(lo, hi));
                continue;
            }
            let mid = (&lo + &hi) / BigRational::from_integer(BigInt::from(2));
            if q.sign_at(&mid) == Ordering::Equal {
                out.push(RationalInterval::point(mid.clone()));
            }
            stack.push((lo, mid.clone()));
            stack.push((mid, hi));
        }
    }
    out.sort_by(|x, y| x.lo.cmp(&y.lo));
    out
}

/// Halves an isolating interval of a root of `p`, keeping the half with the root.
pub fn bisect_step(p: &IntPolynomial, iv: &RationalInterval) -> RationalInterval {
    if iv.is_point() {
        return iv.clone();
    }
    let mid = iv.midpoint();
    let sm = p.sign_at(&mid);
    if sm == Ordering::Equal {
        return RationalInterval::point(mid);
    }
    if p.sign_at(&iv.lo) == sm {
        RationalInterval::new(mid, iv.hi.clone())
    } else {
        RationalInterval::new(iv.lo.clone(), mid)
    }
}

/// Bisects until the width is at most `tol`.
pub fn refine(p: &IntPolynomial, iv: &RationalInterval, tol: &BigRational) -> RationalInterval {
    let q = p.square_free_part();
    let mut cur = iv.clone();
    while cur.width() > *tol {
        cur = bisect_step(&q, &cur);
    }
    cur
}
