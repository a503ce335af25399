//! Lobachevsky function with certified error bounds, ideal tetrahedron
//! volumes and the volumes of the named catalog polyhedra.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum VolumeError {
    #[error("tolerance must be positive and finite, got {0}")]
    BadTolerance(f64),
    #[error("argument must be finite, got {0}")]
    BadArgument(f64),
    #[error("requested tolerance {requested:e} is below the attainable bound {attainable:e}")]
    ToleranceUnreachable { requested: f64, attainable: f64 },
    #[error("quadrature did not converge to {0:e}")]
    NoConvergence(f64),
    #[error("dihedral angles must be positive and sum to pi: {0}")]
    AngleSum(String),
    #[error("no volume formula for {0:?}")]
    UnknownCatalog(String),
}

/// `Lambda(argument)` lies within `error_bound` of `value`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LobachevskyValue {
    pub argument: f64,
    pub value: f64,
    pub error_bound: f64,
}

/// A value with an absolute error bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VolumeEstimate {
    pub value: f64,
    pub error_bound: f64,
}

impl VolumeEstimate {
    pub fn scale(self, k: f64) -> Self {
        VolumeEstimate {
            value: k * self.value,
            error_bound: k.abs() * self.error_bound,
        }
    }

    /// Upper end of the enclosure is strictly below the lower end of `other`'s.
    pub fn certainly_less(&self, other: &Self) -> bool {
        self.value + self.error_bound < other.value - other.error_bound
    }
}

impl std::ops::Add for VolumeEstimate {
    type Output = VolumeEstimate;
    fn add(self, o: VolumeEstimate) -> VolumeEstimate {
        VolumeEstimate {
            value: self.value + o.value,
            error_bound: self.error_bound + o.error_bound,
        }
    }
}

impl fmt::Display for VolumeEstimate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.12} +/- {:.1e}", self.value, self.error_bound)
    }
}

fn check_tol(tol: f64) -> Result<(), VolumeError> {
    if tol > 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(VolumeError::BadTolerance(tol))
    }
}

const MAX_TERMS: usize = 60;

/// Exact `|B_2n|` for `n = 0..count`, by the Akiyama-Tanigawa algorithm.
fn bernoulli_even(count: usize) -> Vec<BigRational> {
    let m = 2 * count;
    let mut a: Vec<BigRational> = Vec::with_capacity(m + 1);
    let mut out = Vec::with_capacity(count);
    for k in 0..=m {
        a.push(BigRational::new(BigInt::one(), BigInt::from(k + 1)));
        for j in (1..=k).rev() {
            let diff = &a[j - 1] - &a[j];
            a[j - 1] = diff * BigRational::from_integer(BigInt::from(j));
        }
        if k % 2 == 0 {
            out.push(a[0].abs());
        }
    }
    out
}

/// `r_n = 2^(2n-1) |B_2n| / (n (2n)! (2n+1))` for `n = 1..MAX_TERMS`, so that
/// `Lambda(x) = x - x log(2x) + sum r_n x^(2n+1)` for `|x| < pi`.
fn series_coefficients() -> &'static [f64] {
    static COEFFS: OnceLock<Vec<f64>> = OnceLock::new();
    COEFFS.get_or_init(|| {
        let b = bernoulli_even(MAX_TERMS + 1);
        let mut fact = BigInt::one();
        (1..=MAX_TERMS)
            .map(|n| {
                fact *= BigInt::from((2 * n - 1) * (2 * n));
                let num = &b[n] * BigRational::from_integer(BigInt::one() << (2 * n - 1));
                let den = BigInt::from(n * (2 * n + 1)) * &fact;
                (num / BigRational::from_integer(den)).to_f64().unwrap_or(0.0)
            })
            .collect()
    })
}

/// Series evaluation on `[0, pi/2]`; returns value, truncation bound and the
/// sum of term magnitudes (for the rounding allowance).
fn lobachevsky_core(x: f64, tol: f64) -> (f64, f64, f64) {
    if x == 0.0 {
        return (0.0, 0.0, 0.0);
    }
    let coeffs = series_coefficients();
    let q = (x / PI) * (x / PI);
    let zeta2 = PI * PI / 6.0;
    let head = x - x * (2.0 * x).ln();
    let mut sum = 0.0;
    let mut mag = head.abs() + x;
    let x2 = x * x;
    let mut pow = x * x2;
    let mut qn = q;
    let mut tail = f64::INFINITY;
    for (i, r) in coeffs.iter().enumerate() {
        let n = (i + 1) as f64;
        let term = r * pow;
        sum += term;
        mag += term.abs();
        pow *= x2;
        qn *= q;
        // Remaining terms are at most zeta(2) x q^m / (m (2m+1)) each.
        tail = zeta2 * x * qn / ((n + 1.0) * (2.0 * n + 3.0) * (1.0 - q));
        if tail <= tol / 2.0 {
            break;
        }
    }
    (head + sum, tail, mag)
}

/// `Lambda(x) = -int_0^x log|2 sin z| dz`, reduced into `[0, pi/2]` by
/// periodicity and oddness and summed as a power series with a certified tail.
pub fn lobachevsky(x: f64, tol: f64) -> Result<LobachevskyValue, VolumeError> {
    check_tol(tol)?;
    if !x.is_finite() {
        return Err(VolumeError::BadArgument(x));
    }
    let k = (x / PI).floor();
    let mut y = x - k * PI;
    if y >= PI {
        y -= PI;
    }
    let y = y.max(0.0);
    let (sign, z) = if y > FRAC_PI_2 { (-1.0, PI - y) } else { (1.0, y) };
    let (v, trunc, mag) = lobachevsky_core(z, tol);

    let eps = f64::EPSILON;
    let rounding = 16.0 * eps * mag;
    // Argument error from reducing with the rounded pi; folding past pi/2 is
    // an exact subtraction but inherits the error of pi itself.
    let pi_err = 1.3e-16;
    let folds = k.abs() + if sign < 0.0 { 1.0 } else { 0.0 };
    let delta = folds * pi_err + if k != 0.0 { 2.0 * eps * x.abs() } else { 0.0 };
    let reduction = if delta == 0.0 {
        0.0
    } else if z > 2.0 * delta {
        delta * (1.0 + (2.0 * z.sin()).ln().abs())
    } else {
        3.0 * delta * (1.0 + (6.0 * delta).ln().abs())
    };
    let error_bound = trunc + rounding + reduction;
    if error_bound > tol {
        return Err(VolumeError::ToleranceUnreachable {
            requested: tol,
            attainable: error_bound,
        });
    }
    Ok(LobachevskyValue {
        argument: x,
        value: sign * v,
        error_bound,
    })
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// 15-point Kronrod estimate and its distance from the embedded Gauss rule.
fn gauss_kronrod(f: &impl Fn(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = WGK[7] * fc;
    let mut g = WG[3] * fc;
    for i in 0..7 {
        let s = f(c - h * XGK[i]) + f(c + h * XGK[i]);
        k += WGK[i] * s;
        if i % 2 == 1 {
            g += WG[i / 2] * s;
        }
    }
    (k * h, ((k - g) * h).abs())
}

fn adaptive(f: &impl Fn(f64) -> f64, a: f64, b: f64, tol: f64, depth: u32) -> Option<f64> {
    let (k, err) = gauss_kronrod(f, a, b);
    if err <= tol {
        return Some(k);
    }
    if depth == 0 {
        return None;
    }
    let m = 0.5 * (a + b);
    Some(adaptive(f, a, m, tol / 2.0, depth - 1)? + adaptive(f, m, b, tol / 2.0, depth - 1)?)
}

/// `int_a^b log(2 sin u) du` for `0 <= a < b <= pi/2`: the `log(2u)` part in
/// closed form, the smooth remainder `log(sin u / u)` by quadrature.
fn log_sine_integral(a: f64, b: f64, tol: f64) -> Result<f64, VolumeError> {
    let prim = |u: f64| if u == 0.0 { 0.0 } else { u * (2.0 * u).ln() - u };
    let smooth = |u: f64| if u == 0.0 { 0.0 } else { (u.sin() / u).ln() };
    let rest = adaptive(&smooth, a, b, tol / 4.0, 40).ok_or(VolumeError::NoConvergence(tol))?;
    Ok(prim(b) - prim(a) + rest)
}

/// Independent evaluation of the defining integral, for `0 < x < pi`.
pub fn lobachevsky_quadrature(x: f64, tol: f64) -> Result<f64, VolumeError> {
    check_tol(tol)?;
    if !(x > 0.0 && x < PI) {
        return Err(VolumeError::BadArgument(x));
    }
    if x <= FRAC_PI_2 {
        return Ok(-log_sine_integral(0.0, x, tol)?);
    }
    // Past pi/2 fold the integrand back with sin(pi - u) = sin u.
    let half = log_sine_integral(0.0, FRAC_PI_2, tol / 2.0)?;
    let rest = log_sine_integral(PI - x, FRAC_PI_2, tol / 2.0)?;
    Ok(-half - rest)
}

/// Dihedral angles of an ideal tetrahedron (opposite edges have equal angles).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TetrahedronAngles {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
}

pub const ANGLE_SUM_TOLERANCE: f64 = 1e-12;

impl TetrahedronAngles {
    pub fn new(alpha: f64, beta: f64, gamma: f64) -> Result<Self, VolumeError> {
        let all_positive = [alpha, beta, gamma].iter().all(|&a| a > 0.0 && a.is_finite());
        let sum = alpha + beta + gamma;
        if !all_positive || (sum - PI).abs() > ANGLE_SUM_TOLERANCE {
            return Err(VolumeError::AngleSum(format!("{alpha}, {beta}, {gamma} (sum {sum})")));
        }
        Ok(TetrahedronAngles { alpha, beta, gamma })
    }

    /// Angles given as exact fractions `p/q` of pi; the sum is checked exactly.
    pub fn from_pi_fractions(fr: [(i64, i64); 3]) -> Result<Self, VolumeError> {
        let mut sum = BigRational::zero();
        let mut rad = [0.0; 3];
        for (i, &(p, q)) in fr.iter().enumerate() {
            if q == 0 || p * q <= 0 {
                return Err(VolumeError::AngleSum(format!("{p}/{q} pi is not positive")));
            }
            sum += BigRational::new(BigInt::from(p), BigInt::from(q));
            rad[i] = PI * p as f64 / q as f64;
        }
        if !sum.is_one() {
            return Err(VolumeError::AngleSum(format!("fractions of pi sum to {sum}")));
        }
        Ok(TetrahedronAngles {
            alpha: rad[0],
            beta: rad[1],
            gamma: rad[2],
        })
    }
}

/// `Lambda(alpha) + Lambda(beta) + Lambda(gamma)`.
pub fn ideal_tetrahedron_volume(angles: &TetrahedronAngles, tol: f64) -> Result<VolumeEstimate, VolumeError> {
    let mut out = VolumeEstimate {
        value: 0.0,
        error_bound: 0.0,
    };
    for a in [angles.alpha, angles.beta, angles.gamma] {
        let l = lobachevsky(a, tol)?;
        out = out
            + VolumeEstimate {
                value: l.value,
                error_bound: l.error_bound,
            };
    }
    Ok(out)
}

/// Names with a volume formula.
pub const VOLUME_CATALOG: [&str; 5] = ["P1", "P2", "P3", "P4", "P5"];

/// P1, P2 and P3 are ideal tetrahedra; P4 and P5 split into two copies of P1
/// and P2 respectively.
pub fn catalog_volume(name: &str, tol: f64) -> Result<VolumeEstimate, VolumeError> {
    let tet = |fr| ideal_tetrahedron_volume(&TetrahedronAngles::from_pi_fractions(fr)?, tol);
    match name {
        "P1" => tet([(1, 2), (1, 3), (1, 6)]),
        "P2" => tet([(1, 2), (1, 4), (1, 4)]),
        "P3" => tet([(1, 3), (1, 3), (1, 3)]),
        "P4" => Ok(catalog_volume("P1", tol)?.scale(2.0)),
        "P5" => Ok(catalog_volume("P2", tol)?.scale(2.0)),
        other => Err(VolumeError::UnknownCatalog(other.to_string())),
    }
}
