use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// A point of `R^N` with exact rational coordinates.
pub type Point = Vec<Rational>;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn point(values: &[i64]) -> Point {
    values.iter().map(|&v| int(v)).collect()
}

/// Canonical `"num/den"` text, always with an explicit denominator.
pub fn format_rational(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Parse `"p/q"` or a bare integer.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let bad = || Error::Parse(format!("bad rational {text:?}"));
    match text.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(text.parse().map_err(|_| bad())?)),
    }
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

pub fn dot_int(a: &[i64], x: &[Rational]) -> Rational {
    let mut acc = Rational::zero();
    for (&c, v) in a.iter().zip(x) {
        if c != 0 {
            acc += v * BigInt::from(c);
        }
    }
    acc
}

pub fn lcm_of_denominators<'a, I: IntoIterator<Item = &'a Rational>>(values: I) -> BigInt {
    values.into_iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

/// Scale a rational row to the primitive integer row with the same signs.
pub fn primitive_integer_row(row: &[Rational]) -> Vec<BigInt> {
    let l = lcm_of_denominators(row);
    let ints: Vec<BigInt> = row.iter().map(|q| (q * &l).to_integer()).collect();
    make_primitive(ints)
}

pub fn make_primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in v.iter_mut() {
            *x = &*x / &g;
        }
    }
    v
}

pub fn to_i64(x: &BigInt) -> Result<i64> {
    x.to_i64().ok_or_else(|| Error::Overflow(format!("{x} does not fit in 64 bits")))
}

pub fn floor(q: &Rational) -> BigInt {
    q.floor().to_integer()
}

pub fn ceil(q: &Rational) -> BigInt {
    q.ceil().to_integer()
}

pub fn is_integral(q: &Rational) -> bool {
    q.denom().is_one()
}

pub fn abs(q: &Rational) -> Rational {
    q.abs()
}
