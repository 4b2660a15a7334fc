use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{QMatrix, QVector, Rational};
use crate::{Error, Result};

pub type Exponents = Vec<u32>;

/// Sparse polynomial in a fixed number of variables with rational
/// coefficients. Terms are kept in lexicographic order of their exponent
/// vectors and zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MPoly {
    nvars: usize,
    terms: BTreeMap<Exponents, Rational>,
}

impl MPoly {
    pub fn zero(nvars: usize) -> Self {
        MPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::monomial(nvars, vec![0; nvars], c)
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    /// The variable `x_i` (zero-based).
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(nvars, e, Rational::one())
    }

    pub fn monomial(nvars: usize, exps: Exponents, c: Rational) -> Self {
        assert_eq!(exps.len(), nvars, "exponent vector length");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        MPoly { nvars, terms }
    }

    /// Univariate polynomial from coefficients of `t^0, t^1, …`.
    pub fn univariate(coeffs: &[Rational]) -> Self {
        let mut p = Self::zero(1);
        for (k, c) in coeffs.iter().enumerate() {
            p.add_term(vec![k as u32], c.clone());
        }
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Exponents, Rational)>) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent vector length");
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, exps: Exponents, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            alloc::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in lexicographic order of exponents.
    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exps: &[u32]) -> Rational {
        self.terms.get(exps).cloned().unwrap_or_else(Rational::zero)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|x| x == d),
        }
    }

    /// Sum of the terms of total degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> MPoly {
        MPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.iter().sum::<u32>() == d)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// True if no term involves variable `i`.
    pub fn is_free_of(&self, i: usize) -> bool {
        self.terms.keys().all(|e| e[i] == 0)
    }

    pub fn scale(&self, c: &Rational) -> MPoly {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.nvars, "evaluation point dimension");
        self.terms.iter().fold(Rational::zero(), |acc, (e, c)| {
            acc + c * monomial_value(e, point)
        })
    }

    pub fn eval_ints(&self, point: &[i64]) -> Rational {
        let p: Vec<Rational> = point.iter().map(|&x| super::int(x)).collect();
        self.eval(&p)
    }

    /// `p(t·x)` expressed as a polynomial in `x` for fixed rational `t`.
    pub fn dilate(&self, t: &Rational) -> MPoly {
        MPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let d: u32 = e.iter().sum();
                    (e.clone(), c * pow(t, d))
                })
                .collect(),
        }
    }
}

fn pow(x: &Rational, k: u32) -> Rational {
    (0..k).fold(Rational::one(), |acc, _| acc * x)
}

fn monomial_value(exps: &[u32], point: &[Rational]) -> Rational {
    exps.iter()
        .zip(point)
        .fold(Rational::one(), |acc, (&k, x)| acc * pow(x, k))
}

impl Add for &MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        self + &(-rhs)
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Mul for &MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = MPoly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({})", c)?;
            for (i, &p) in e.iter().enumerate() {
                match p {
                    0 => {}
                    1 => write!(f, "*m{}", i + 1)?,
                    _ => write!(f, "*m{}^{}", i + 1, p)?,
                }
            }
        }
        Ok(())
    }
}

/// Recovers the unique polynomial supported on `support` that takes the
/// given values at the given points.
///
/// At least `support.len()` samples are required. A maximal independent set
/// of rows of the evaluation matrix is chosen in sample order; if it is
/// smaller than the support the geometry is insufficient. Every sample is
/// checked against the result.
pub fn mpoly_interpolate(
    support: &[Exponents],
    samples: &[(Vec<Rational>, Rational)],
) -> Result<MPoly> {
    let k = support.len();
    let nvars = support
        .first()
        .map(Vec::len)
        .or_else(|| samples.first().map(|(p, _)| p.len()))
        .unwrap_or(0);
    if samples.len() < k {
        return Err(Error::InsufficientSampleGeometry);
    }
    if k == 0 {
        return if samples.iter().all(|(_, v)| v.is_zero()) {
            Ok(MPoly::zero(nvars))
        } else {
            Err(Error::InconsistentSamples)
        };
    }
    let rows: Vec<Vec<Rational>> = samples
        .iter()
        .map(|(p, _)| support.iter().map(|e| monomial_value(e, p)).collect())
        .collect();
    let chosen = independent_rows(&rows, k);
    if chosen.len() < k {
        return Err(Error::InsufficientSampleGeometry);
    }
    let m = QMatrix::from_rows(chosen.iter().map(|&i| rows[i].clone()).collect())?;
    let b = QVector::new(chosen.iter().map(|&i| samples[i].1.clone()).collect());
    let coeffs = super::solve_linear(&m, &b).map_err(|_| Error::InsufficientSampleGeometry)?;
    let poly = MPoly::from_terms(
        nvars,
        support.iter().cloned().zip(coeffs.into_entries()),
    );
    for (p, v) in samples {
        if &poly.eval(p) != v {
            return Err(Error::InconsistentSamples);
        }
    }
    Ok(poly)
}

/// Greedy selection (in order) of up to `want` linearly independent rows.
fn independent_rows(rows: &[Vec<Rational>], want: usize) -> Vec<usize> {
    // Echelon basis: (pivot column, normalized row).
    let mut basis: Vec<(usize, Vec<Rational>)> = Vec::new();
    let mut chosen = Vec::new();
    for (idx, row) in rows.iter().enumerate() {
        let mut r = row.clone();
        for (pc, b) in &basis {
            if !r[*pc].is_zero() {
                let f = r[*pc].clone();
                for (x, y) in r.iter_mut().zip(b) {
                    *x -= &f * y;
                }
            }
        }
        if let Some(pc) = r.iter().position(|x| !x.is_zero()) {
            let inv = Rational::one() / &r[pc];
            for x in r.iter_mut() {
                *x *= &inv;
            }
            basis.push((pc, r));
            chosen.push(idx);
            if chosen.len() == want {
                break;
            }
        }
    }
    chosen
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    fn pt(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn interpolate_line() {
        let support = alloc::vec![alloc::vec![0], alloc::vec![1]];
        let p = mpoly_interpolate(&support, &[(pt(&[0]), int(1)), (pt(&[1]), int(3))]).unwrap();
        assert_eq!(p, MPoly::univariate(&[int(1), int(2)]));
    }

    #[test]
    fn interpolate_bilinear_recovers_xy() {
        let support = alloc::vec![
            alloc::vec![0, 0],
            alloc::vec![1, 0],
            alloc::vec![0, 1],
            alloc::vec![1, 1]
        ];
        let samples: Vec<_> = [(1, 1), (1, 2), (2, 1), (2, 2)]
            .iter()
            .map(|&(x, y)| (pt(&[x, y]), int(x * y)))
            .collect();
        let p = mpoly_interpolate(&support, &samples).unwrap();
        assert_eq!(p, MPoly::monomial(2, alloc::vec![1, 1], int(1)));
    }

    #[test]
    fn interpolate_overdetermined_square() {
        let support = alloc::vec![alloc::vec![2]];
        let p = mpoly_interpolate(&support, &[(pt(&[1]), int(2)), (pt(&[2]), int(8))]).unwrap();
        assert_eq!(p, MPoly::monomial(1, alloc::vec![2], int(2)));
        assert_eq!(
            mpoly_interpolate(&support, &[(pt(&[1]), int(2)), (pt(&[2]), int(7))]),
            Err(Error::InconsistentSamples)
        );
    }

    #[test]
    fn interpolate_singular_geometry() {
        let support = alloc::vec![alloc::vec![0], alloc::vec![1]];
        assert_eq!(
            mpoly_interpolate(&support, &[(pt(&[1]), int(2)), (pt(&[1]), int(2))]),
            Err(Error::InsufficientSampleGeometry)
        );
        assert_eq!(
            mpoly_interpolate(&support, &[(pt(&[1]), int(2))]),
            Err(Error::InsufficientSampleGeometry)
        );
    }

    #[test]
    fn arithmetic_and_structure() {
        let x = MPoly::var(2, 0);
        let y = MPoly::var(2, 1);
        let p = &(&x * &x) + &(&(&x * &y).scale(&int(4)) + &(&y * &y));
        let p = p.scale(&rat(1, 2));
        assert!(p.is_homogeneous());
        assert_eq!(p.degree(), Some(2));
        assert_eq!(p.eval_ints(&[1, 1]), int(3));
        assert_eq!(p.coefficient(&[1, 1]), int(2));
        assert_eq!(p.dilate(&int(2)).eval_ints(&[1, 1]), int(12));
        assert!((&p - &p).is_zero());
        assert_eq!(p.homogeneous_part(1), MPoly::zero(2));
        assert!(!p.is_free_of(0));
    }
}
