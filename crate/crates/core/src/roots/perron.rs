//! Certified dominance of the smallest positive root by box subdivision.
//!
//! Roots inside an axis-parallel rectangle are counted with the argument
//! principle. Along each edge `p = U + iV` with real polynomials `U`, `V`; the
//! real roots of `U` and `V` are isolated exactly, and the octant of `p` is
//! sampled at rational points between consecutive events.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::sturm::{bisect_step, rat, sturm_isolate, to_f64, RationalInterval, SturmSequence};
use super::RootError;
use crate::poly::IntPolynomial;

/// Subdivision depth after which certification gives up.
pub const MAX_DEPTH: usize = 48;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PerronOutcome {
    pub perron: bool,
    /// Certified `delta` with `|z| >= hi + delta` for every other root `z`;
    /// `None` when `perron` is false.
    pub modulus_gap: Option<BigRational>,
    /// Rational lower bound on the modulus of every other root.
    pub other_modulus_lower: Option<BigRational>,
    pub boxes_examined: usize,
    pub cyclotomic_factors_removed: usize,
}

/// The factors whose roots all lie on the unit circle and that are divided
/// out before subdivision.
pub fn unit_circle_factors() -> Vec<IntPolynomial> {
    [&[1i64, 1][..], &[-1, 1], &[1, 0, 1], &[1, 1, 1], &[1, -1, 1]]
        .iter()
        .map(|c| IntPolynomial::from_i64s(c))
        .collect()
}

/// Divides out every factor of [`unit_circle_factors`], with multiplicity.
pub fn strip_unit_circle(p: &IntPolynomial) -> (IntPolynomial, usize) {
    let mut q = p.clone();
    let mut removed = 0;
    for f in unit_circle_factors() {
        while let Some(d) = q.exact_div(&f) {
            q = d;
            removed += 1;
        }
    }
    (q, removed)
}

/// `p^(k)/k!`, which has integer coefficients.
fn hasse(p: &IntPolynomial, k: usize) -> IntPolynomial {
    let c = p.coeffs();
    if c.len() <= k {
        return IntPolynomial::zero();
    }
    IntPolynomial::new((k..c.len()).map(|j| binomial(j, k) * &c[j]).collect())
}

fn binomial(n: usize, k: usize) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - i) / BigInt::from(i + 1))
}

/// Real and imaginary parts of `p` along an axis-parallel line, as integer
/// polynomials in the line parameter (scaled by a positive constant).
fn split_along(p: &IntPolynomial, horizontal: bool, fixed: &BigRational) -> (IntPolynomial, IntPolynomial) {
    let n = p.coeffs().len();
    let mut u: Vec<IntPolynomial> = Vec::new();
    let mut v: Vec<IntPolynomial> = Vec::new();
    if horizontal {
        // p(s + i y) = sum_k H_k(s) (i y)^k, scaled by den(y)^deg.
        let (a, b) = (fixed.numer(), fixed.denom());
        let deg = n.saturating_sub(1);
        for k in 0..n {
            let scale = num_traits::pow(a.clone(), k) * num_traits::pow(b.clone(), deg - k);
            let term = hasse(p, k).scale(&scale);
            let term = if (k / 2) % 2 == 1 { -term } else { term };
            if k % 2 == 0 {
                u.push(term);
            } else {
                v.push(term);
            }
        }
    } else {
        // p(x + i s) = sum_k H_k(x) i^k s^k.
        let vals: Vec<BigRational> = (0..n).map(|k| hasse(p, k).eval(fixed)).collect();
        let l = vals.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
        let mut uc = vec![BigInt::zero(); n];
        let mut vc = vec![BigInt::zero(); n];
        for (k, r) in vals.iter().enumerate() {
            let mut x = (r * BigRational::from_integer(l.clone())).to_integer();
            if (k / 2) % 2 == 1 {
                x = -x;
            }
            if k % 2 == 0 {
                uc[k] = x;
            } else {
                vc[k] = x;
            }
        }
        u.push(IntPolynomial::new(uc));
        v.push(IntPolynomial::new(vc));
    }
    let sum = |ps: Vec<IntPolynomial>| ps.iter().fold(IntPolynomial::zero(), |acc, q| &acc + q);
    (sum(u), sum(v))
}

/// Octant of `u + iv`: even values are the half-axes starting at the positive
/// real axis, odd values the open quadrants, counterclockwise.
fn octant(u: Ordering, v: Ordering) -> Option<i32> {
    use Ordering::*;
    Some(match (u, v) {
        (Greater, Equal) => 0,
        (Greater, Greater) => 1,
        (Equal, Greater) => 2,
        (Less, Greater) => 3,
        (Less, Equal) => 4,
        (Less, Less) => 5,
        (Equal, Less) => 6,
        (Greater, Less) => 7,
        (Equal, Equal) => return None,
    })
}

/// Total octant change of `U + iV` as the parameter runs from `s0` to `s1`,
/// or `None` if `p` vanishes on the segment or the sampling is ambiguous.
fn edge_winding(u: &IntPolynomial, v: &IntPolynomial, s0: &BigRational, s1: &BigRational) -> Option<i32> {
    // A common real root on the closed segment is a root of p on the edge.
    let g = u.gcd(v);
    if g.degree().unwrap_or(0) > 0 {
        let gs = SturmSequence::new(&g.square_free_part());
        if g.sign_at(s0) == Ordering::Equal || g.sign_at(s1) == Ordering::Equal || gs.count_open(s0, s1) > 0 {
            return None;
        }
    }
    let state = |x: &BigRational| octant(u.sign_at(x), v.sign_at(x));

    let mut events: Vec<(RationalInterval, IntPolynomial)> = Vec::new();
    for poly in [u, v] {
        if poly.is_zero() {
            continue;
        }
        let q = poly.square_free_part();
        for iv in sturm_isolate(&q, s0, s1) {
            events.push((iv, q.clone()));
        }
    }
    events.sort_by(|a, b| a.0.lo.cmp(&b.0.lo));
    // Refine until consecutive event intervals are disjoint.
    let mut guard = 0;
    loop {
        let mut clash = None;
        for i in 1..events.len() {
            if !events[i - 1].0.precedes(&events[i].0) {
                clash = Some(i);
                break;
            }
        }
        let Some(i) = clash else { break };
        guard += 1;
        if guard > 10_000 {
            return None;
        }
        for j in [i - 1, i] {
            let (iv, q) = &events[j];
            let next = bisect_step(q, iv);
            events[j].0 = next;
        }
        if events[i - 1].0.is_point() && events[i].0.is_point() && events[i - 1].0.lo == events[i].0.lo {
            return None;
        }
        events.sort_by(|a, b| a.0.lo.cmp(&b.0.lo));
    }

    let mut samples = vec![s0.clone()];
    for w in events.windows(2) {
        samples.push((&w[0].0.hi + &w[1].0.lo) / BigRational::from_integer(BigInt::from(2)));
    }
    samples.push(s1.clone());
    let states: Option<Vec<i32>> = samples.iter().map(state).collect();
    let states = states?;
    let mut total = 0;
    for w in states.windows(2) {
        let d = (w[1] - w[0]).rem_euclid(8);
        let d = if d > 4 { d - 8 } else { d };
        if d.abs() == 4 {
            return None;
        }
        total += d;
    }
    Some(total)
}

#[derive(Debug, Clone)]
struct Rect {
    x0: BigRational,
    x1: BigRational,
    y0: BigRational,
    y1: BigRational,
}

impl Rect {
    fn min_modulus_sq(&self) -> BigRational {
        let d = |a: &BigRational, b: &BigRational| {
            if a.is_positive() {
                a.clone()
            } else if b.is_negative() {
                -b.clone()
            } else {
                BigRational::zero()
            }
        };
        let dx = d(&self.x0, &self.x1);
        let dy = d(&self.y0, &self.y1);
        &dx * &dx + &dy * &dy
    }

    fn max_modulus_sq(&self) -> BigRational {
        let m = |a: &BigRational, b: &BigRational| {
            let (a2, b2) = (a * a, b * b);
            if a2 > b2 {
                a2
            } else {
                b2
            }
        };
        m(&self.x0, &self.x1) + m(&self.y0, &self.y1)
    }
}

/// Whether the root isolated by `r0` lies strictly left of `x`.
fn root_left_of(h: &IntPolynomial, r0: &RationalInterval, x: &BigRational) -> bool {
    if x > &r0.hi {
        true
    } else if x <= &r0.lo {
        false
    } else {
        h.sign_at(x) != h.sign_at(&r0.lo)
    }
}

fn contains_root(h: &IntPolynomial, r0: &RationalInterval, r: &Rect) -> bool {
    r.y0.is_negative() && r.y1.is_positive() && !root_left_of(h, r0, &r.x0) && root_left_of(h, r0, &r.x1)
}

/// Number of roots of `p` (with multiplicity) inside `r`, or `None` when a
/// root lies on the boundary or the count is not certified.
fn count_in_rect(p: &IntPolynomial, r: &Rect) -> Option<usize> {
    let (ub, vb) = split_along(p, true, &r.y0);
    let (ut, vt) = split_along(p, true, &r.y1);
    let (ul, vl) = split_along(p, false, &r.x0);
    let (ur, vr) = split_along(p, false, &r.x1);
    let total = edge_winding(&ub, &vb, &r.x0, &r.x1)? + edge_winding(&ur, &vr, &r.y0, &r.y1)?
        - edge_winding(&ut, &vt, &r.x0, &r.x1)?
        - edge_winding(&ul, &vl, &r.y0, &r.y1)?;
    if total < 0 || total % 8 != 0 {
        return None;
    }
    Some((total / 8) as usize)
}

const SPLITS: [(i64, i64); 5] = [(9, 17), (8, 17), (10, 19), (12, 23), (7, 13)];

fn split(r: &Rect, fx: &BigRational, fy: &BigRational) -> [Rect; 4] {
    let xm = &r.x0 + (&r.x1 - &r.x0) * fx;
    let ym = &r.y0 + (&r.y1 - &r.y0) * fy;
    [
        Rect {
            x0: r.x0.clone(),
            x1: xm.clone(),
            y0: r.y0.clone(),
            y1: ym.clone(),
        },
        Rect {
            x0: xm.clone(),
            x1: r.x1.clone(),
            y0: r.y0.clone(),
            y1: ym.clone(),
        },
        Rect {
            x0: r.x0.clone(),
            x1: xm.clone(),
            y0: ym.clone(),
            y1: r.y1.clone(),
        },
        Rect {
            x0: xm,
            x1: r.x1.clone(),
            y0: ym,
            y1: r.y1.clone(),
        },
    ]
}

/// A rational `r > floor` with `r^2 <= x`, given `0 <= floor` and `floor^2 < x`.
pub fn sqrt_lower(x: &BigRational, floor: &BigRational) -> BigRational {
    debug_assert!(&(floor * floor) < x);
    if let Some(r) = BigRational::from_float(to_f64(x).sqrt() * (1.0 - 1e-12)) {
        if &r > floor && &(&r * &r) <= x {
            return r;
        }
    }
    let mut b = x.clone() + BigRational::one();
    loop {
        let m = (floor + &b) / BigRational::from_integer(BigInt::from(2));
        if &(&m * &m) <= x {
            return m;
        }
        b = m;
    }
}

/// Certifies that every root of `g` other than the one in `r0` has modulus
/// larger than `r0.hi`, or that some root has modulus below `r0.lo`.
///
/// `r0` must isolate a simple positive real root of `g`.
pub fn perron_certify(g: &IntPolynomial, r0: &RationalInterval) -> Result<PerronOutcome, RootError> {
    let (h, removed) = strip_unit_circle(g);
    let deg = h.degree().unwrap_or(0);
    if h.sign_at(&r0.lo) == Ordering::Equal && !r0.is_point() {
        return Err(RootError::Inconclusive("enclosure endpoint is a root".into()));
    }
    if h.sign_at(&r0.hi) == Ordering::Equal && !r0.is_point() {
        return Err(RootError::Inconclusive("enclosure endpoint is a root".into()));
    }
    let d = h.gcd(&h.derivative());
    if d.degree().unwrap_or(0) > 0 {
        let ds = SturmSequence::new(&d.square_free_part());
        let hit = if r0.is_point() {
            d.sign_at(&r0.lo) == Ordering::Equal
        } else {
            ds.count_open(&r0.lo, &r0.hi) > 0
        };
        if hit {
            return Err(RootError::Inconclusive(
                "the root in the enclosure is not simple".into(),
            ));
        }
    }

    // Cauchy bound: every root has modulus < 1 + max |a_i / a_n|.
    let lead = BigRational::from_integer(h.leading_coeff().expect("nonzero").abs());
    let mut bound = BigRational::zero();
    for c in &h.coeffs()[..deg] {
        let q = BigRational::from_integer(c.abs()) / &lead;
        if q > bound {
            bound = q;
        }
    }
    let radius = bound + BigRational::one();
    let root_box = Rect {
        x0: -radius.clone() - rat(1, 7),
        x1: radius.clone() + rat(1, 11),
        y0: -radius.clone() - rat(1, 13),
        y1: radius + rat(1, 5),
    };
    let hi_sq = &r0.hi * &r0.hi;
    let lo_sq = &r0.lo * &r0.lo;

    let initial =
        count_in_rect(&h, &root_box).ok_or_else(|| RootError::Inconclusive("initial box count failed".into()))?;
    if initial != deg {
        return Err(RootError::InternalContradiction(format!(
            "argument principle counted {initial} roots, degree is {deg}"
        )));
    }

    let mut boxes_examined = 1;
    let mut pending = vec![(root_box, initial, 0usize)];
    let mut r0_boxes = 0;
    let mut other_min_sq: Option<BigRational> = None;
    let mut smaller_root = false;
    while let Some((rect, count, depth)) = pending.pop() {
        if count == 0 {
            continue;
        }
        let min_sq = rect.min_modulus_sq();
        if min_sq > hi_sq {
            if other_min_sq.as_ref().is_none_or(|m| min_sq < *m) {
                other_min_sq = Some(min_sq);
            }
            continue;
        }
        if count == 1 && contains_root(&h, r0, &rect) {
            r0_boxes += 1;
            continue;
        }
        if rect.max_modulus_sq() < lo_sq {
            smaller_root = true;
            continue;
        }
        if depth >= MAX_DEPTH {
            return Err(RootError::Inconclusive(format!(
                "subdivision depth {MAX_DEPTH} reached near modulus {:.6}",
                to_f64(&min_sq).sqrt()
            )));
        }
        let mut done = false;
        for (fx, fy) in SPLITS.iter().flat_map(|&a| SPLITS.iter().map(move |&b| (a, b))) {
            let parts = split(&rect, &rat(fx.0, fx.1), &rat(fy.0, fy.1));
            let counts: Option<Vec<usize>> = parts.iter().map(|b| count_in_rect(&h, b)).collect();
            boxes_examined += 4;
            let Some(counts) = counts else { continue };
            if counts.iter().sum::<usize>() != count {
                return Err(RootError::InternalContradiction(
                    "child box counts do not add up".into(),
                ));
            }
            for (b, c) in parts.into_iter().zip(counts) {
                pending.push((b, c, depth + 1));
            }
            done = true;
            break;
        }
        if !done {
            return Err(RootError::Inconclusive("every split met a root on an edge".into()));
        }
    }

    if smaller_root || r0_boxes != 1 {
        return Ok(PerronOutcome {
            perron: false,
            modulus_gap: None,
            other_modulus_lower: None,
            boxes_examined,
            cyclotomic_factors_removed: removed,
        });
    }
    // Unit-circle roots have modulus exactly 1.
    let mut lower = other_min_sq.as_ref().map(|m| sqrt_lower(m, &r0.hi));
    if removed > 0 {
        let one = BigRational::one();
        lower = Some(match lower {
            Some(l) if l < one => l,
            _ => one,
        });
    }
    let gap = lower.as_ref().map(|l| l - &r0.hi);
    if let Some(gap) = &gap {
        if !gap.is_positive() {
            return Err(RootError::InternalContradiction("non-positive modulus gap".into()));
        }
    }
    Ok(PerronOutcome {
        perron: true,
        modulus_gap: gap,
        other_modulus_lower: lower,
        boxes_examined,
        cyclotomic_factors_removed: removed,
    })
}
