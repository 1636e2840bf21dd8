//! Arithmetic abstraction shared by the exact-rational and floating-point
//! code paths.
//!
//! Every geometric routine in this crate is generic over [`Scalar`]. With
//! [`Rat`] the computation is exact: hulls, facet data, volumes, mixed
//! volumes and containment LPs produce true rational values, and sign
//! decisions are free of rounding. With `f64` the same code runs fast, and
//! the orientation predicates fall back to exact rational evaluation when a
//! floating-point determinant is too close to zero to trust.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

/// Exact rational scalar backed by arbitrary-precision integers.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rat(pub BigRational);

impl Rat {
    pub fn new(numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "zero denominator");
        Rat(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn from_bigint(n: BigInt, d: BigInt) -> Self {
        Rat(BigRational::new(n, d))
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

macro_rules! rat_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                Rat((self.0).$method(rhs.0))
            }
        }
    };
}

rat_binop!(Add, add);
rat_binop!(Sub, sub);
rat_binop!(Mul, mul);
rat_binop!(Div, div);

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0)
    }
}

/// The common interface of `f64` and [`Rat`].
///
/// `EXACT` distinguishes the two sign-decision regimes: exact scalars decide
/// signs and zero tests literally, floats use a relative tolerance and (for
/// determinants) an exact fallback.
pub trait Scalar:
    Clone
    + PartialEq
    + PartialOrd
    + fmt::Debug
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_int(v: i64) -> Self;
    /// Exact lift of a finite `f64` (every finite float is a rational).
    fn from_f64(x: f64) -> Self;
    fn to_f64(&self) -> f64;
    fn abs(&self) -> Self;
    fn is_zero(&self) -> bool;

    /// `true` when `self` should be treated as zero relative to `scale`.
    /// Exact scalars ignore the scale.
    fn is_negligible(&self, scale: &Self) -> bool;

    /// Parse `"p/q"`, a decimal string, or an integer string. Exact for
    /// rationals (decimals become num/10^k), nearest for floats.
    fn parse_text(s: &str) -> Option<Self>;

    /// Textual form that `parse_text` recovers exactly.
    fn format_text(&self) -> String;

    /// Sign of the determinant of a small dense matrix (row major).
    ///
    /// For `f64` this is a filtered predicate: the cofactor expansion is
    /// evaluated together with a magnitude bound, and if the result is below
    /// the bound the sign is recomputed in exact rational arithmetic lifted
    /// from the same float entries.
    fn det_sign(matrix: &[Vec<Self>]) -> i8;
}

impl Scalar for Rat {
    const EXACT: bool = true;

    fn zero() -> Self {
        Rat(BigRational::zero())
    }
    fn one() -> Self {
        Rat(BigRational::from_integer(BigInt::from(1)))
    }
    fn from_int(v: i64) -> Self {
        Rat(BigRational::from_integer(BigInt::from(v)))
    }
    fn from_f64(x: f64) -> Self {
        Rat(BigRational::from_float(x).expect("non-finite float"))
    }
    fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }
    fn abs(&self) -> Self {
        Rat(self.0.abs())
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn is_negligible(&self, _scale: &Self) -> bool {
        self.0.is_zero()
    }
    fn parse_text(s: &str) -> Option<Self> {
        let s = s.trim();
        if let Some((p, q)) = s.split_once('/') {
            let numer = BigInt::parse_bytes(p.trim().as_bytes(), 10)?;
            let denom = BigInt::parse_bytes(q.trim().as_bytes(), 10)?;
            if denom.is_zero() {
                return None;
            }
            return Some(Rat(BigRational::new(numer, denom)));
        }
        let (sign, digits) = match s.strip_prefix('-') {
            Some(rest) => (-1, rest),
            None => (1, s),
        };
        let (int_part, frac_part) = match digits.split_once('.') {
            Some((i, f)) => (i, f),
            None => (digits, ""),
        };
        if int_part.is_empty() && frac_part.is_empty() {
            return None;
        }
        let concat = format!("{int_part}{frac_part}");
        let numer = BigInt::parse_bytes(concat.as_bytes(), 10)?;
        let mut denom = BigInt::from(1);
        for _ in 0..frac_part.len() {
            denom = denom * BigInt::from(10);
        }
        Some(Rat(BigRational::new(BigInt::from(sign) * numer, denom)))
    }
    fn format_text(&self) -> String {
        if self.0.denom() == &BigInt::from(1) {
            format!("{}", self.0.numer())
        } else {
            format!("{}/{}", self.0.numer(), self.0.denom())
        }
    }
    fn det_sign(matrix: &[Vec<Self>]) -> i8 {
        let d = det_generic(matrix);
        match d.0.cmp(&BigRational::zero()) {
            std::cmp::Ordering::Less => -1,
            std::cmp::Ordering::Equal => 0,
            std::cmp::Ordering::Greater => 1,
        }
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_int(v: i64) -> Self {
        v as f64
    }
    fn from_f64(x: f64) -> Self {
        x
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn abs(&self) -> Self {
        f64::abs(*self)
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn is_negligible(&self, scale: &Self) -> bool {
        f64::abs(*self) <= 1e-12 * f64::max(1.0, f64::abs(*scale))
    }
    fn parse_text(s: &str) -> Option<Self> {
        let s = s.trim();
        if let Some((p, q)) = s.split_once('/') {
            let numer: f64 = p.trim().parse().ok()?;
            let denom: f64 = q.trim().parse().ok()?;
            if denom == 0.0 {
                return None;
            }
            return Some(numer / denom);
        }
        s.parse().ok()
    }
    fn format_text(&self) -> String {
        format!("{self}")
    }
    fn det_sign(matrix: &[Vec<Self>]) -> i8 {
        let (det, mag) = det_with_magnitude(matrix);
        // Conservative rounding bound for an n! cofactor expansion.
        let n = matrix.len() as f64;
        let bound = (n + 2.0) * (n + 2.0) * f64::EPSILON * mag;
        if det.abs() > bound {
            return if det > 0.0 { 1 } else { -1 };
        }
        // Too close to call: lift to rationals and decide exactly.
        let lifted: Vec<Vec<Rat>> = matrix
            .iter()
            .map(|row| row.iter().map(|&x| Rat::from_f64(x)).collect())
            .collect();
        Rat::det_sign(&lifted)
    }
}

/// Determinant by cofactor expansion; fine for the small dimensions used here.
pub fn det_generic<S: Scalar>(matrix: &[Vec<S>]) -> S {
    let n = matrix.len();
    debug_assert!(matrix.iter().all(|r| r.len() == n));
    match n {
        0 => S::one(),
        1 => matrix[0][0].clone(),
        2 => {
            matrix[0][0].clone() * matrix[1][1].clone()
                - matrix[0][1].clone() * matrix[1][0].clone()
        }
        _ => {
            let mut acc = S::zero();
            for (j, pivot) in matrix[0].iter().enumerate() {
                if pivot.is_zero() {
                    continue;
                }
                let minor: Vec<Vec<S>> = matrix[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|(c, _)| *c != j)
                            .map(|(_, v)| v.clone())
                            .collect()
                    })
                    .collect();
                let term = pivot.clone() * det_generic(&minor);
                acc = if j % 2 == 0 { acc + term } else { acc - term };
            }
            acc
        }
    }
}

/// Determinant together with the same expansion evaluated on absolute values,
/// used as an error-magnitude estimate for the float filter.
fn det_with_magnitude(matrix: &[Vec<f64>]) -> (f64, f64) {
    let n = matrix.len();
    match n {
        0 => (1.0, 1.0),
        1 => (matrix[0][0], matrix[0][0].abs()),
        2 => {
            let a = matrix[0][0] * matrix[1][1];
            let b = matrix[0][1] * matrix[1][0];
            (a - b, a.abs() + b.abs())
        }
        _ => {
            let mut det = 0.0;
            let mut mag = 0.0;
            for j in 0..n {
                let minor: Vec<Vec<f64>> = matrix[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|(c, _)| *c != j)
                            .map(|(_, v)| *v)
                            .collect()
                    })
                    .collect();
                let (md, mm) = det_with_magnitude(&minor);
                let term = matrix[0][j] * md;
                det += if j % 2 == 0 { term } else { -term };
                mag += matrix[0][j].abs() * mm;
            }
            (det, mag)
        }
    }
}
