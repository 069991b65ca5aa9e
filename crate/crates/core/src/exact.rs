//! Exact scalars: complex rationals, unimodular constants and the two
//! irrational shapes that show up in Bergman-space computations
//! (rational multiples of a power of pi, rational multiples of a square root).

use std::f64::consts::PI;
use std::fmt;

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;
pub type CRational = Complex<BigRational>;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn c_rat(re: Rational, im: Rational) -> CRational {
    Complex::new(re, im)
}

pub fn c_real(re: Rational) -> CRational {
    Complex::new(re, Rational::zero())
}

pub fn c_int(n: i64) -> CRational {
    c_real(rat_int(n))
}

pub fn c_zero() -> CRational {
    CRational::zero()
}

pub fn c_one() -> CRational {
    CRational::one()
}

pub fn c_i() -> CRational {
    Complex::new(Rational::zero(), Rational::one())
}

pub fn rat_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| if r.is_negative() { f64::NEG_INFINITY } else { f64::INFINITY })
}

pub fn to_c64(c: &CRational) -> Complex64 {
    Complex64::new(rat_to_f64(&c.re), rat_to_f64(&c.im))
}

/// Exact rational with the same value as a finite `f64`.
pub fn rat_from_f64(x: f64) -> Result<Rational> {
    Rational::from_float(x).ok_or_else(|| Error::Parse(format!("{x}")))
}

pub fn c_from_c64(z: Complex64) -> Result<CRational> {
    Ok(Complex::new(rat_from_f64(z.re)?, rat_from_f64(z.im)?))
}

pub fn norm_sq(c: &CRational) -> Rational {
    &c.re * &c.re + &c.im * &c.im
}

pub fn pow_rat(r: &Rational, e: u32) -> Rational {
    num_traits::pow(r.clone(), e as usize)
}

pub fn pow_c(c: &CRational, e: u32) -> CRational {
    num_traits::pow(c.clone(), e as usize)
}

/// Parses `"p/q"`, an integer, or a decimal (optionally with exponent).
///
/// Returns the exact value and whether the input was written as an exact
/// rational; decimal notation is accepted but flagged inexact.
pub fn parse_rational(text: &str) -> Result<(Rational, bool)> {
    let s = text.trim();
    if s.is_empty() {
        return Err(Error::Parse(text.to_string()));
    }
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| Error::Parse(text.to_string()))?;
        let q: BigInt = q.trim().parse().map_err(|_| Error::Parse(text.to_string()))?;
        if q.is_zero() {
            return Err(Error::Parse(text.to_string()));
        }
        return Ok((Rational::new(p, q), true));
    }
    if let Ok(n) = s.parse::<BigInt>() {
        return Ok((Rational::from_integer(n), true));
    }
    parse_decimal(s).map(|r| (r, false)).ok_or_else(|| Error::Parse(text.to_string()))
}

fn parse_decimal(s: &str) -> Option<Rational> {
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(pos) => (&s[..pos], s[pos + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let all: BigInt = format!("{int_part}{frac_part}0").parse().ok()?;
    let all = all / BigInt::from(10);
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let mut value = Rational::from_integer(all);
    if scale >= 0 {
        value *= Rational::from_integer(num_traits::pow(ten, scale as usize));
    } else {
        value /= Rational::from_integer(num_traits::pow(ten, (-scale) as usize));
    }
    Some(if negative { -value } else { value })
}

pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn format_complex(c: &CRational) -> String {
    match (c.re.is_zero(), c.im.is_zero()) {
        (_, true) => format_rational(&c.re),
        (true, false) => format!("{}i", format_rational(&c.im)),
        (false, false) => {
            let sign = if c.im.is_negative() { '-' } else { '+' };
            format!("{} {} {}i", format_rational(&c.re), sign, format_rational(&c.im.abs()))
        }
    }
}

/// A point on the unit circle with exact rational coordinates.
///
/// Points are generated by the tangent half-angle map
/// `t -> ((1 - t^2) + 2ti) / (1 + t^2)`, which hits every rational point
/// of the circle except `-1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Unimodular(CRational);

impl Unimodular {
    pub fn one() -> Self {
        Unimodular(c_one())
    }

    pub fn from_tangent(t: &Rational) -> Self {
        let t2 = t * t;
        let den = Rational::one() + &t2;
        let re = (Rational::one() - &t2) / &den;
        let im = (rat_int(2) * t) / den;
        Unimodular(Complex::new(re, im))
    }

    /// Rational point of the circle at (or within rounding of) angle `theta`.
    /// Multiples of pi/2 map to the exact points `1, i, -1, -i`.
    pub fn from_angle(theta: f64) -> Result<Self> {
        if !theta.is_finite() {
            return Err(Error::InvalidParameter(format!("angle {theta}")));
        }
        let wrapped = theta.rem_euclid(2.0 * PI);
        let quarter = wrapped / (PI / 2.0);
        let nearest = quarter.round();
        if (quarter - nearest).abs() < 1e-13 {
            let c = match (nearest as i64).rem_euclid(4) {
                0 => c_one(),
                1 => c_i(),
                2 => c_int(-1),
                _ => -c_i(),
            };
            return Ok(Unimodular(c));
        }
        // keep the half angle inside (-pi/4, pi/4] so the tangent stays small
        let (shift_by_pi, rest) = if wrapped > PI / 2.0 && wrapped <= 3.0 * PI / 2.0 {
            (true, wrapped - PI)
        } else if wrapped > 3.0 * PI / 2.0 {
            (false, wrapped - 2.0 * PI)
        } else {
            (false, wrapped)
        };
        let t = rat_from_f64((rest / 2.0).tan())?;
        let u = Self::from_tangent(&t);
        Ok(if shift_by_pi { Unimodular(-u.0) } else { u })
    }

    pub fn value(&self) -> &CRational {
        &self.0
    }

    pub fn conj(&self) -> Self {
        Unimodular(self.0.conj())
    }

    pub fn to_c64(&self) -> Complex64 {
        to_c64(&self.0)
    }

    pub fn angle(&self) -> f64 {
        self.to_c64().arg()
    }
}

/// `coeff * pi^power`, the shape of every exact integral over disks and
/// products of disks with rational radii.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiScaled {
    pub coeff: CRational,
    pub power: u32,
}

impl PiScaled {
    pub fn zero(power: u32) -> Self {
        PiScaled { coeff: c_zero(), power }
    }

    pub fn to_c64(&self) -> Complex64 {
        to_c64(&self.coeff) * PI.powi(self.power as i32)
    }

    pub fn to_f64(&self) -> f64 {
        self.to_c64().re
    }
}

impl fmt::Display for PiScaled {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.power {
            0 => write!(f, "{}", format_complex(&self.coeff)),
            1 => write!(f, "({})*pi", format_complex(&self.coeff)),
            p => write!(f, "({})*pi^{p}", format_complex(&self.coeff)),
        }
    }
}

/// `q * sqrt(radicand)`: matrix entries and expansion coefficients in the
/// orthonormal monomial basis carry square roots of integer weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SqrtRational {
    pub q: CRational,
    pub radicand: u64,
}

impl SqrtRational {
    pub fn to_c64(&self) -> Complex64 {
        to_c64(&self.q) * (self.radicand as f64).sqrt()
    }

    pub fn is_zero(&self) -> bool {
        self.q.is_zero()
    }
}

impl fmt::Display for SqrtRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.radicand == 1 {
            write!(f, "{}", format_complex(&self.q))
        } else {
            write!(f, "({})*sqrt({})", format_complex(&self.q), self.radicand)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fraction_integer_and_decimal() {
        assert_eq!(parse_rational("3/6").unwrap(), (rat(1, 2), true));
        assert_eq!(parse_rational("-7").unwrap(), (rat_int(-7), true));
        assert_eq!(parse_rational("0.25").unwrap(), (rat(1, 4), false));
        assert_eq!(parse_rational("-1.5e-2").unwrap(), (rat(-3, 200), false));
        assert_eq!(parse_rational("2E3").unwrap(), (rat_int(2000), false));
        assert_eq!(parse_rational(".5").unwrap(), (rat(1, 2), false));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn unimodular_points_lie_on_circle() {
        for theta in [0.0, 0.3, 1.0, 2.0, 3.0, 4.5, 6.0, -0.7] {
            let u = Unimodular::from_angle(theta).unwrap();
            assert_eq!(norm_sq(u.value()), Rational::one());
            let z = u.to_c64();
            assert!((z - Complex64::from_polar(1.0, theta)).norm() < 1e-12, "{theta}");
        }
        assert_eq!(Unimodular::from_angle(PI / 2.0).unwrap().value(), &c_i());
        assert_eq!(Unimodular::from_angle(PI).unwrap().value(), &c_int(-1));
    }

    #[test]
    fn formats_rationals() {
        assert_eq!(format_rational(&rat(4, 2)), "2");
        assert_eq!(format_rational(&rat(-1, 3)), "-1/3");
        assert_eq!(format_complex(&c_rat(rat(1, 2), rat(-1, 1))), "1/2 - 1i");
        let s = SqrtRational { q: c_real(rat(1, 2)), radicand: 2 };
        assert!((s.to_c64().re - 0.5f64.sqrt()).abs() < 1e-15);
    }
}
