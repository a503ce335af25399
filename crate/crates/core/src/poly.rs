//! Exact univariate polynomials over the integers and their quotients.
//!
//! Everything here is exact: coefficients are `BigInt`, evaluation points are
//! `BigRational`. Rendering follows the descending-degree textual form used on
//! the command line, e.g. `6t^7+2t^6+8t^5+4t^4+4t^3+2t-2`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("zero denominator in rational function")]
    ZeroDenominator,
    #[error("denominator has zero constant term; no power series at 0")]
    ZeroConstantTerm,
    #[error("series coefficient {index} is not an integer")]
    NonIntegralCoefficient { index: usize },
    #[error("cannot parse polynomial `{input}`: {reason}")]
    Parse { input: String, reason: String },
}

/// Polynomial with integer coefficients; `coeffs[k]` multiplies `t^k`.
///
/// The coefficient vector never ends in a zero, so the zero polynomial is the
/// empty vector and structural equality is polynomial equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `c * t^k`.
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.push(c);
        Self::new(coeffs)
    }

    /// The polynomial `t`.
    pub fn t() -> Self {
        Self::monomial(BigInt::one(), 1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigInt::from(k))
                .collect(),
        )
    }

    /// Nonnegative gcd of the coefficients (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = self.content();
        if self.leading_coeff().is_some_and(Signed::is_negative) {
            c = -c;
        }
        Self::new(self.coeffs.iter().map(|a| a / &c).collect())
    }

    /// Polynomial `t^deg * p(1/t)`, i.e. coefficients reversed.
    pub fn reversed(&self) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        Self::new(coeffs)
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self::new(coeffs)
    }

    /// Division with remainder carried out over the integers.
    ///
    /// Returns `None` when some step would need a non-integral quotient
    /// coefficient. For monic (or unit-led) divisors this never happens, and
    /// whenever the exact quotient over the rationals is integral it succeeds.
    pub fn checked_div_rem(&self, divisor: &Self) -> Option<(Self, Self)> {
        let dd = divisor.degree()?;
        let lead = divisor.leading_coeff()?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Some((Self::zero(), self.clone()));
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            if rem[k].is_zero() {
                continue;
            }
            let (q, r) = rem[k].div_rem(lead);
            if !r.is_zero() {
                return None;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[k - dd + j] -= &q * dc;
            }
            quot[k - dd] = q;
        }
        Some((Self::new(quot), Self::new(rem)))
    }

    /// Exact quotient, if `divisor` divides `self` in `Z[t]`.
    pub fn exact_div(&self, divisor: &Self) -> Option<Self> {
        match self.checked_div_rem(divisor) {
            Some((q, r)) if r.is_zero() => Some(q),
            _ => None,
        }
    }

    /// Pseudo-remainder `|lc(d)|^(deg p - deg d + 1) * p mod d`.
    ///
    /// Using the absolute value of the leading coefficient keeps the sign of
    /// the true remainder, which Sturm sequences rely on.
    pub fn pseudo_rem(&self, divisor: &Self) -> Self {
        let Some(dd) = divisor.degree() else {
            return self.clone();
        };
        let lead = divisor.leading_coeff().expect("nonzero divisor").abs();
        let mut rem = self.coeffs.clone();
        while rem.len() > dd {
            let k = rem.len() - 1;
            let top = rem[k].clone();
            for c in rem.iter_mut() {
                *c *= &lead;
            }
            let sign_lead = divisor.leading_coeff().expect("nonzero divisor").signum();
            let q = &top * sign_lead;
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[k - dd + j] -= &q * dc;
            }
            debug_assert!(rem[k].is_zero());
            rem.pop();
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
        }
        Self::new(rem)
    }

    /// Greatest common divisor with positive leading coefficient.
    ///
    /// Computed by the primitive remainder sequence; the integer part is the
    /// gcd of the two contents.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.primitive_part().scale(&other.content());
        }
        if other.is_zero() {
            return self.primitive_part().scale(&self.content());
        }
        let c = self.content().gcd(&other.content());
        let (mut a, mut b) = (self.primitive_part(), other.primitive_part());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive_part();
            a = b;
            b = r;
        }
        a.primitive_part().scale(&c)
    }

    /// `p / gcd(p, p')`: same roots, each with multiplicity one.
    pub fn square_free_part(&self) -> Self {
        if self.degree().unwrap_or(0) == 0 {
            return self.clone();
        }
        let g = self.gcd(&self.derivative()).primitive_part();
        self.exact_div(&g).expect("primitive gcd divides the polynomial over Z")
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| {
            acc * x + BigRational::from_integer(c.clone())
        })
    }

    /// Sign of `p(x)` computed without rational arithmetic: with
    /// `x = a/b`, `b > 0`, the sign of `sum c_k a^k b^(n-k)` equals that of `p(x)`.
    pub fn sign_at(&self, x: &BigRational) -> Ordering {
        if self.is_zero() {
            return Ordering::Equal;
        }
        let (a, b) = (x.numer(), x.denom());
        let mut acc = BigInt::zero();
        let mut bpow = BigInt::one();
        for c in self.coeffs.iter().rev() {
            acc = acc * a + c * &bpow;
            bpow = &bpow * b;
        }
        acc.sign_cmp()
    }

    pub fn to_f64_coeffs(&self) -> Vec<f64> {
        self.coeffs.iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect()
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.to_f64_coeffs().iter().rev().fold(0.0, |acc, c| acc * x + c)
    }
}

trait SignCmp {
    fn sign_cmp(&self) -> Ordering;
}

impl SignCmp for BigInt {
    fn sign_cmp(&self) -> Ordering {
        self.cmp(&BigInt::zero())
    }
}

/// `[n] = 1 + t + ... + t^(n-1)`, or `None` for `n = 0`.
pub fn bracket_poly(n: usize) -> Option<IntPolynomial> {
    (n > 0).then(|| IntPolynomial::new(vec![BigInt::one(); n]))
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for IntPolynomial {
            type Output = IntPolynomial;
            fn $f(self, rhs: IntPolynomial) -> IntPolynomial {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        -&self
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            if neg {
                f.write_str("-")?;
            } else if !first {
                f.write_str("+")?;
            }
            let mag = c.abs();
            if k == 0 || !mag.is_one() {
                write!(f, "{mag}")?;
            }
            match k {
                0 => {}
                1 => f.write_str("t")?,
                _ => write!(f, "t^{k}")?,
            }
            first = false;
        }
        Ok(())
    }
}

impl FromStr for IntPolynomial {
    type Err = PolyError;

    /// Parses the rendering produced by `Display`; whitespace is ignored.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |reason: &str| PolyError::Parse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let text: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if text.is_empty() {
            return Err(err("empty input"));
        }
        let bytes = text.as_bytes();
        let mut coeffs: Vec<BigInt> = Vec::new();
        let mut i = 0;
        while i < bytes.len() {
            let mut sign = BigInt::one();
            if bytes[i] == b'+' || bytes[i] == b'-' {
                if bytes[i] == b'-' {
                    sign = -sign;
                }
                i += 1;
            } else if i != 0 {
                return Err(err("expected `+` or `-` between terms"));
            }
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let mag = if i > start {
                text[start..i].parse::<BigInt>().map_err(|_| err("bad integer"))?
            } else {
                BigInt::one()
            };
            let mut exp = 0usize;
            if i < bytes.len() && bytes[i] == b't' {
                i += 1;
                exp = 1;
                if i < bytes.len() && bytes[i] == b'^' {
                    i += 1;
                    let es = i;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    exp = text[es..i].parse().map_err(|_| err("bad exponent"))?;
                }
            } else if i == start {
                return Err(err("empty term"));
            }
            if coeffs.len() <= exp {
                coeffs.resize(exp + 1, BigInt::zero());
            }
            coeffs[exp] += sign * mag;
        }
        Ok(IntPolynomial::new(coeffs))
    }
}

/// Quotient of integer polynomials, kept in lowest terms.
///
/// Canonical form: numerator and denominator coprime, their coefficients
/// jointly free of common integer factors, denominator leading coefficient
/// positive. Equal rational functions are therefore structurally equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    numerator: IntPolynomial,
    denominator: IntPolynomial,
}

impl RationalFunction {
    pub fn new(numerator: IntPolynomial, denominator: IntPolynomial) -> Result<Self, PolyError> {
        if denominator.is_zero() {
            return Err(PolyError::ZeroDenominator);
        }
        if numerator.is_zero() {
            return Ok(Self::from_poly(IntPolynomial::zero()));
        }
        let g = numerator.gcd(&denominator).primitive_part();
        let mut num = numerator.exact_div(&g).expect("gcd divides numerator");
        let mut den = denominator.exact_div(&g).expect("gcd divides denominator");
        let c = num.content().gcd(&den.content());
        if !c.is_one() {
            num = IntPolynomial::new(num.coeffs.iter().map(|a| a / &c).collect());
            den = IntPolynomial::new(den.coeffs.iter().map(|a| a / &c).collect());
        }
        if den.leading_coeff().is_some_and(Signed::is_negative) {
            num = -num;
            den = -den;
        }
        Ok(RationalFunction {
            numerator: num,
            denominator: den,
        })
    }

    pub fn from_poly(p: IntPolynomial) -> Self {
        RationalFunction {
            numerator: p,
            denominator: IntPolynomial::one(),
        }
    }

    pub fn numerator(&self) -> &IntPolynomial {
        &self.numerator
    }

    pub fn denominator(&self) -> &IntPolynomial {
        &self.denominator
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        let num = &(&self.numerator * &other.denominator) + &(&other.numerator * &self.denominator);
        let den = &self.denominator * &other.denominator;
        Self::new(num, den).expect("product of nonzero denominators")
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(
            &self.numerator * &other.numerator,
            &self.denominator * &other.denominator,
        )
        .expect("product of nonzero denominators")
    }

    pub fn neg(&self) -> Self {
        RationalFunction {
            numerator: -&self.numerator,
            denominator: self.denominator.clone(),
        }
    }

    pub fn recip(&self) -> Result<Self, PolyError> {
        Self::new(self.denominator.clone(), self.numerator.clone())
    }

    /// The rational function `t -> F(1/t)`.
    pub fn substitute_reciprocal(&self) -> Self {
        // N(1/t)/D(1/t) = t^(dD - dN) * rev(N) / rev(D)
        let dn = self.numerator.degree().unwrap_or(0);
        let dd = self.denominator.degree().unwrap_or(0);
        let (mut num, mut den) = (self.numerator.reversed(), self.denominator.reversed());
        if dd >= dn {
            num = num.shift(dd - dn);
        } else {
            den = den.shift(dn - dd);
        }
        Self::new(num, den).expect("reversed nonzero denominator")
    }

    pub fn eval(&self, x: &BigRational) -> Option<BigRational> {
        let d = self.denominator.eval(x);
        (!d.is_zero()).then(|| self.numerator.eval(x) / d)
    }

    /// Taylor coefficients `a_0..=a_n` at `t = 0`, by the linear recurrence
    /// `d_0 a_k = n_k - sum_{i>=1} d_i a_(k-i)`.
    pub fn series_coefficients(&self, n: usize) -> Result<Vec<BigInt>, PolyError> {
        let d0 = self.denominator.coeff(0);
        if d0.is_zero() {
            return Err(PolyError::ZeroConstantTerm);
        }
        let mut out: Vec<BigInt> = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let mut acc = self.numerator.coeff(k);
            for i in 1..=k.min(self.denominator.coeffs.len().saturating_sub(1)) {
                acc -= self.denominator.coeff(i) * &out[k - i];
            }
            let (q, r) = acc.div_rem(&d0);
            if !r.is_zero() {
                return Err(PolyError::NonIntegralCoefficient { index: k });
            }
            out.push(q);
        }
        Ok(out)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})/({})", self.numerator, self.denominator)
    }
}
