//! Ehrhart quasi-polynomials fitted from exact lattice-point counts.
//!
//! With denominator `D` and dimension `d`, each residue class `r mod D` is
//! interpolated from the counts at `r, r + D, …, r + dD` and then checked
//! against the count at `r + (d+1)D`.

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::linalg::rref;
use crate::geometry::{count_lattice_points, format_rational, int, Polytope, Rational};

/// `L(n) = Σ_i c_i(n mod D) · n^i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiPolynomial {
    pub degree: usize,
    pub modulus: u64,
    /// `constituents[r][i]` is the coefficient of `n^i` for `n ≡ r mod D`.
    pub constituents: Vec<Vec<Rational>>,
}

impl QuasiPolynomial {
    pub fn eval(&self, n: u64) -> Rational {
        let c = &self.constituents[(n % self.modulus) as usize];
        let x = int(n as i64);
        c.iter().rev().fold(Rational::zero(), |acc, a| acc * &x + a)
    }

    /// Coefficients of the constituent for `n ≡ r`, highest degree first.
    pub fn descending(&self, r: usize) -> Vec<Rational> {
        self.constituents[r].iter().rev().cloned().collect()
    }

    pub fn is_polynomial(&self) -> bool {
        minimal_period(self) == 1
    }
}

/// `L(0), …, L(n_max)`.
pub fn lattice_counts(p: &Polytope, n_max: u64) -> Result<Vec<u64>> {
    p.vertices()?;
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (0..=n_max).into_par_iter().map(|n| count_lattice_points(p, n)).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..=n_max).map(|n| count_lattice_points(p, n)).collect()
    }
}

fn small(x: &BigInt, what: &str) -> Result<u64> {
    x.to_u64().ok_or_else(|| Error::Overflow(format!("{what} {x}")))
}

/// Interpolates `y_j = L(r + jD)` for `j = 0..=d` by a polynomial in `n`.
fn interpolate(xs: &[i64], ys: &[u64]) -> Vec<Rational> {
    let m = xs.len();
    let rows: Vec<Vec<Rational>> = xs
        .iter()
        .zip(ys)
        .map(|(&x, &y)| {
            let mut row: Vec<Rational> = (0..m).map(|i| int(x).pow(i as i32)).collect();
            row.push(int(y as i64));
            row
        })
        .collect();
    let (reduced, _) = rref(rows, m + 1);
    reduced.into_iter().map(|row| row[m].clone()).collect()
}

/// Fit from counts `L(0), …, L(D(d+2) - 1)`.
pub fn fit_from_counts(counts: &[u64], degree: usize, modulus: u64) -> Result<QuasiPolynomial> {
    let needed = modulus as usize * (degree + 2);
    if counts.len() < needed {
        return Err(Error::FitVerification(format!("need {needed} counts, got {}", counts.len())));
    }
    let mut constituents = Vec::with_capacity(modulus as usize);
    for r in 0..modulus as usize {
        let idx: Vec<usize> = (0..=degree).map(|j| r + j * modulus as usize).collect();
        let xs: Vec<i64> = idx.iter().map(|&n| n as i64).collect();
        let ys: Vec<u64> = idx.iter().map(|&n| counts[n]).collect();
        constituents.push(interpolate(&xs, &ys));
    }
    let q = QuasiPolynomial { degree, modulus, constituents };
    for (n, &c) in counts.iter().enumerate() {
        if q.eval(n as u64) != int(c as i64) {
            return Err(Error::FitVerification(format!(
                "fitted value {} differs from count {c} at n = {n}",
                format_rational(&q.eval(n as u64))
            )));
        }
    }
    Ok(q)
}

pub fn fit_quasi_polynomial(p: &Polytope) -> Result<QuasiPolynomial> {
    let degree = p.dimension()?;
    if degree < 0 {
        return Err(Error::Empty);
    }
    let degree = degree as usize;
    let modulus = small(&p.denominator()?, "denominator")?;
    let counts = lattice_counts(p, modulus * (degree as u64 + 2) - 1)?;
    fit_from_counts(&counts, degree, modulus)
}

/// Smallest divisor `s` of the modulus with `constituent[r] = constituent[r mod s]`.
pub fn minimal_period(q: &QuasiPolynomial) -> u64 {
    (1..=q.modulus)
        .filter(|&s| q.modulus.is_multiple_of(s))
        .find(|&s| (0..q.modulus).all(|r| q.constituents[r as usize] == q.constituents[(r % s) as usize]))
        .expect("the modulus itself is a period")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodReport {
    pub denominator: u64,
    pub period: u64,
    pub collapse: bool,
}

pub fn period_report_of(q: &QuasiPolynomial) -> PeriodReport {
    let period = minimal_period(q);
    PeriodReport { denominator: q.modulus, period, collapse: period != q.modulus }
}

pub fn period_report(p: &Polytope) -> Result<PeriodReport> {
    Ok(period_report_of(&fit_quasi_polynomial(p)?))
}

/// `h*_i = Σ_{j ≤ i} (-1)^j C(d+1, j) L(i - j)` for `i = 0..=d`.
pub fn h_star(q: &QuasiPolynomial) -> Result<Vec<i64>> {
    let period = minimal_period(q);
    if period != 1 {
        return Err(Error::PeriodNotOne(period));
    }
    let d = q.degree as i64;
    (0..=d)
        .map(|i| {
            let mut acc = Rational::zero();
            for j in 0..=i {
                let c = int(binomial(d + 1, j));
                let term = c * q.eval((i - j) as u64);
                if j % 2 == 0 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            acc.to_integer().to_i64().ok_or_else(|| Error::Overflow(format!("h* entry {acc}")))
        })
        .collect()
}

/// Whether `L_P(n) = L_Q(n)` for all `n <= n_max`.
pub fn ehrhart_equal(p: &Polytope, q: &Polytope, n_max: u64) -> Result<bool> {
    Ok(lattice_counts(p, n_max)? == lattice_counts(q, n_max)?)
}

/// JSON form of a fitted quasi-polynomial with its period data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EhrhartReport {
    pub denominator: u64,
    pub period: u64,
    pub collapse: bool,
    pub degree: usize,
    pub constituents: Vec<Vec<String>>,
    pub h_star: Option<Vec<i64>>,
}

impl EhrhartReport {
    pub fn new(q: &QuasiPolynomial) -> Self {
        let report = period_report_of(q);
        EhrhartReport {
            denominator: report.denominator,
            period: report.period,
            collapse: report.collapse,
            degree: q.degree,
            constituents: (0..q.modulus as usize)
                .map(|r| q.descending(r).iter().map(format_rational).collect())
                .collect(),
            h_star: h_star(q).ok(),
        }
    }
}

pub fn ehrhart_report(p: &Polytope) -> Result<EhrhartReport> {
    Ok(EhrhartReport::new(&fit_quasi_polynomial(p)?))
}

/// Human-readable polynomial in `t`, highest degree first.
pub fn format_polynomial(coefficients_descending: &[Rational]) -> String {
    let d = coefficients_descending.len().saturating_sub(1);
    let mut terms = Vec::new();
    for (k, c) in coefficients_descending.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let power = d - k;
        let coef = format_rational(c);
        terms.push(match power {
            0 => coef,
            1 => format!("{coef} t"),
            _ => format!("{coef} t^{power}"),
        });
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}
