use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact element `a + b*sqrt2 + c*sqrt3 + d*sqrt6` of `Q(sqrt2, sqrt3)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadraticFieldNumber {
    pub a: BigRational,
    pub b: BigRational,
    pub c: BigRational,
    pub d: BigRational,
}

impl QuadraticFieldNumber {
    pub fn new(a: BigRational, b: BigRational, c: BigRational, d: BigRational) -> Self {
        QuadraticFieldNumber { a, b, c, d }
    }

    pub fn from_ints(a: i64, b: i64, c: i64, d: i64) -> Self {
        let r = |x: i64| BigRational::from_integer(BigInt::from(x));
        Self::new(r(a), r(b), r(c), r(d))
    }

    pub fn zero() -> Self {
        Self::from_ints(0, 0, 0, 0)
    }

    pub fn one() -> Self {
        Self::from_ints(1, 0, 0, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.is_zero() && self.d.is_zero()
    }

    /// `cos(pi/m)` for `m` in `{2, 3, 4, 6}`.
    pub fn cos_pi_over(m: u8) -> Option<Self> {
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        let z = BigRational::zero;
        Some(match m {
            2 => Self::zero(),
            3 => Self::new(half, z(), z(), z()),
            4 => Self::new(z(), half, z(), z()),
            6 => Self::new(z(), z(), half, z()),
            _ => return None,
        })
    }

    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        let f = |x: &BigRational| x.to_f64().unwrap_or(f64::NAN);
        f(&self.a) + f(&self.b) * 2f64.sqrt() + f(&self.c) * 3f64.sqrt() + f(&self.d) * 6f64.sqrt()
    }

    /// Integer quadruple, if every component is an integer.
    pub(crate) fn to_i64s(&self) -> Option<[i64; 4]> {
        use num_traits::ToPrimitive;
        let f = |x: &BigRational| x.is_integer().then(|| x.to_integer().to_i64()).flatten();
        Some([f(&self.a)?, f(&self.b)?, f(&self.c)?, f(&self.d)?])
    }
}

impl Add for &QuadraticFieldNumber {
    type Output = QuadraticFieldNumber;
    fn add(self, o: &QuadraticFieldNumber) -> QuadraticFieldNumber {
        QuadraticFieldNumber::new(&self.a + &o.a, &self.b + &o.b, &self.c + &o.c, &self.d + &o.d)
    }
}

impl Sub for &QuadraticFieldNumber {
    type Output = QuadraticFieldNumber;
    fn sub(self, o: &QuadraticFieldNumber) -> QuadraticFieldNumber {
        QuadraticFieldNumber::new(&self.a - &o.a, &self.b - &o.b, &self.c - &o.c, &self.d - &o.d)
    }
}

impl Neg for &QuadraticFieldNumber {
    type Output = QuadraticFieldNumber;
    fn neg(self) -> QuadraticFieldNumber {
        QuadraticFieldNumber::new(-&self.a, -&self.b, -&self.c, -&self.d)
    }
}

impl Mul for &QuadraticFieldNumber {
    type Output = QuadraticFieldNumber;
    fn mul(self, o: &QuadraticFieldNumber) -> QuadraticFieldNumber {
        let (a, b, c, d) = (&self.a, &self.b, &self.c, &self.d);
        let (e, f, g, h) = (&o.a, &o.b, &o.c, &o.d);
        let k = |n: i64| BigRational::from_integer(BigInt::from(n));
        QuadraticFieldNumber::new(
            a * e + k(2) * b * f + k(3) * c * g + k(6) * d * h,
            a * f + b * e + k(3) * (c * h + d * g),
            a * g + c * e + k(2) * (b * h + d * f),
            a * h + d * e + b * g + c * f,
        )
    }
}

impl fmt::Display for QuadraticFieldNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (x, unit) in [
            (&self.a, ""),
            (&self.b, "*sqrt2"),
            (&self.c, "*sqrt3"),
            (&self.d, "*sqrt6"),
        ] {
            if x.is_zero() {
                continue;
            }
            if !first {
                f.write_str(if x.is_negative() { "-" } else { "+" })?;
                write!(f, "{}{unit}", x.abs())?;
            } else {
                write!(f, "{x}{unit}")?;
            }
            first = false;
        }
        Ok(())
    }
}

/// Integral element of `Z[sqrt2, sqrt3]` with overflow-checked arithmetic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub(crate) struct Quad(pub [i64; 4]);

impl Quad {
    pub fn is_zero(self) -> bool {
        self.0 == [0; 4]
    }

    pub fn checked_add(self, o: Quad) -> Option<Quad> {
        let mut out = [0; 4];
        for (x, (a, b)) in out.iter_mut().zip(self.0.iter().zip(o.0)) {
            *x = a.checked_add(b)?;
        }
        Some(Quad(out))
    }

    pub fn checked_mul(self, o: Quad) -> Option<Quad> {
        let [a, b, c, d] = self.0.map(i128::from);
        let [e, f, g, h] = o.0.map(i128::from);
        let r = [
            a * e + 2 * b * f + 3 * c * g + 6 * d * h,
            a * f + b * e + 3 * (c * h + d * g),
            a * g + c * e + 2 * (b * h + d * f),
            a * h + d * e + b * g + c * f,
        ];
        let mut out = [0i64; 4];
        for (x, v) in out.iter_mut().zip(r) {
            *x = i64::try_from(v).ok()?;
        }
        Some(Quad(out))
    }
}
