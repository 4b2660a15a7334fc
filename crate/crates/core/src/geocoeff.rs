//! Geometric coefficients `μ_J` and the Geometric Formula
//!
//! ```text
//! |≤θ(λ)| = Σ_J μ_J·V_J(λ).
//! ```
//!
//! Coefficients are stored lattice-normalized, `μ′_J = μ_J·√gram_J`, so that
//! `μ_J·V_J = μ′_J·r_J` is a rational polynomial.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::exact::{binomial, factorial, is_integer, mpoly_interpolate, Exponents, MPoly, RadScalar, Rational};
use crate::orbitpoly::{interval_size_lattice, DominantCoweight};
use crate::rootsys::{Family, RootSystemData, RootSystemId, Subset};
use crate::volume::{squarefree_exponents, VolumeTable};
use crate::{Budget, Error, Result};

/// Where a coefficient value came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Provenance {
    ClosedForm,
    TypeAPipeline,
    Fitted,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::ClosedForm => "closed-form",
            Provenance::TypeAPipeline => "type-A-pipeline",
            Provenance::Fitted => "fitted",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "closed-form" => Some(Provenance::ClosedForm),
            "type-A-pipeline" => Some(Provenance::TypeAPipeline),
            "fitted" => Some(Provenance::Fitted),
            _ => None,
        }
    }
}

/// A complete set of lattice-normalized coefficients `μ′_J` for one system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeometricCoefficients {
    pub system: RootSystemId,
    pub mu_prime: BTreeMap<Subset, Rational>,
    pub provenance: BTreeMap<Subset, Provenance>,
}

impl GeometricCoefficients {
    pub fn get(&self, j: Subset) -> Option<&Rational> {
        self.mu_prime.get(&j)
    }

    /// True if every `J ⊆ I_n` has a coefficient.
    pub fn is_complete(&self) -> bool {
        Subset::all(self.system.rank()).all(|j| self.mu_prime.contains_key(&j))
    }

    /// The Euclidean coefficient `μ_J = μ′_J / √gram_J`.
    pub fn mu_euclidean(&self, data: &RootSystemData, j: Subset) -> Option<RadScalar> {
        let mp = self.mu_prime.get(&j)?;
        let g = crate::volume::gram_of(data, j);
        // μ′/√g = μ′·√g/g
        RadScalar::new(mp / &g, g).ok()
    }
}

/// `μ_∅ = |W_f|`.
pub fn mu_empty(data: &RootSystemData) -> Rational {
    Rational::from_integer(data.wf_order().clone())
}

/// `μ_{I_n} = 1/Vol(A_id) = n!·η_1⋯η_n / det(Λ∨)`.
pub fn mu_full(data: &RootSystemData) -> RadScalar {
    let num = Rational::from_integer(factorial(data.rank() as u64) * data.mark_product());
    RadScalar::from_rational(num)
        .div(data.det_coweight_lattice())
        .expect("covolume is nonzero")
}

pub(crate) fn stirling1_total(a: i64, b: i64) -> BigInt {
    if a < 0 || b < 0 || b > a {
        return BigInt::zero();
    }
    let a = a as usize;
    let b = b as usize;
    // row-by-row recurrence [a,b] = [a−1,b−1] + (a−1)[a−1,b]
    let mut row = vec![BigInt::one()];
    for r in 1..=a {
        let mut next = vec![BigInt::zero(); r + 1];
        for c in 1..=r {
            let mut v = row[c - 1].clone();
            if c < r {
                v += BigInt::from(r - 1) * &row[c];
            }
            next[c] = v;
        }
        row = next;
    }
    row[b].clone()
}

pub(crate) fn eulerian_total(r: i64, s: i64) -> BigInt {
    if r < 1 || s < 1 || s > r {
        return BigInt::zero();
    }
    let r = r as usize;
    // A(r,s) = s·A(r−1,s) + (r−s+1)·A(r−1,s−1), 1-based s
    let mut row = vec![BigInt::one()];
    for n in 2..=r {
        let mut next = vec![BigInt::zero(); n];
        for k in 1..=n {
            let mut v = BigInt::zero();
            if k < n {
                v += BigInt::from(k) * &row[k - 1];
            }
            if k >= 2 {
                v += BigInt::from(n - k + 1) * &row[k - 2];
            }
            next[k - 1] = v;
        }
        row = next;
    }
    row[s as usize - 1].clone()
}

/// Unsigned Stirling number of the first kind `[a, b]`.
pub fn stirling1(a: u64, b: u64) -> Result<BigInt> {
    if b > a {
        return Err(Error::OutOfRange(format!("stirling1({a}, {b}) needs b <= a")));
    }
    Ok(stirling1_total(a as i64, b as i64))
}

/// Eulerian number `A(r, s)`, `1 ≤ s ≤ r`, with `A(1,1) = 1`.
pub fn eulerian(r: u64, s: u64) -> Result<BigInt> {
    if s < 1 || s > r {
        return Err(Error::OutOfRange(format!("eulerian({r}, {s}) needs 1 <= s <= r")));
    }
    Ok(eulerian_total(r as i64, s as i64))
}

/// Coefficient `ẽ_{k,d,m}` of `t^m` in the Ehrhart polynomial of `Δ_{k,d}`.
fn ferroni_coefficient(k: u64, d: u64, m: u64) -> Rational {
    let (k, d, m) = (k as i64, d as i64, m as i64);
    let mut acc = BigInt::zero();
    for j in 0..k {
        for i in 0..(d - m) {
            let term = binomial(d as u64, j as u64)
                * BigInt::from(k - j).pow(m as u32)
                * stirling1_total(d - j, m + 1 + i - j)
                * stirling1_total(j, j - i);
            if (i + j) % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
    }
    Rational::new(acc, factorial((d - 1) as u64))
}

/// Ehrhart polynomial `E_{k,d}(t)` of the hypersimplex `Δ_{k,d}`.
pub fn hypersimplex_ehrhart(k: u64, d: u64) -> Result<MPoly> {
    if k < 1 || k > d {
        return Err(Error::OutOfRange(format!("hypersimplex needs 1 <= k <= d, got k={k}, d={d}")));
    }
    if k == d {
        return Ok(MPoly::one(1));
    }
    let coeffs: Vec<Rational> = (0..d).map(|m| ferroni_coefficient(k, d, m)).collect();
    Ok(MPoly::univariate(&coeffs))
}

/// `I(l, u) = {u+1, …, u+l}`.
fn interval_subset(l: usize, u: usize) -> Subset {
    Subset::from_mask(((1u32 << l) - 1) << u)
}

/// `μ′_J` for every nonempty connected `J ⊆ I_n` in type `A_n`, from the
/// lower triangular systems `M_l μ_l = F_l`.
pub fn type_a_connected_mu(n: usize) -> Result<BTreeMap<Subset, Rational>> {
    let id = RootSystemId::new(Family::A, n)?;
    let np1 = n as u64 + 1;
    let nf = Rational::from_integer(factorial(np1));
    // e_{i,l} = (n+1)!·ẽ_{i,n+1,l}
    let e = |i: usize, l: usize| &nf * ferroni_coefficient(i as u64, np1, l as u64);
    let mut out = BTreeMap::new();
    for l in 1..=n {
        let size = n - l + 1;
        let lf = Rational::from_integer(factorial(l as u64));
        // M[i][j] = ρ_{i, I(l, j)} = A(l, i − j)/l! (0-based i, j)
        let entry = |i: usize, j: usize| -> Rational {
            if j <= i && i < j + l {
                Rational::from_integer(eulerian_total(l as i64, (i - j + 1) as i64)) / &lf
            } else {
                Rational::zero()
            }
        };
        let mut mu: Vec<Rational> = Vec::with_capacity(size);
        for i in 0..size {
            let mut rhs = e(i + 1, l);
            for (j, mj) in mu.iter().enumerate() {
                rhs -= entry(i, j) * mj;
            }
            let diag = entry(i, i);
            if diag.is_zero() {
                return Err(Error::Internal(format!("zero diagonal in the type A system for l = {l}")));
            }
            mu.push(rhs / diag);
        }
        let closed = Rational::from_integer(
            factorial(l as u64) * BigInt::from(np1) * stirling1_total(np1 as i64, l as i64 + 1),
        );
        if mu[0] != closed {
            return Err(Error::Internal(format!(
                "type A pipeline gives mu'(I_{l}) = {}, closed form {}",
                mu[0], closed
            )));
        }
        for (u, v) in mu.into_iter().enumerate() {
            out.insert(interval_subset(l, u), v);
        }
    }
    let data = RootSystemData::build(id)?;
    let full = Subset::full(n);
    let expect = mu_full(&data).mul(&RadScalar::sqrt(&crate::volume::gram_of(&data, full))?);
    if expect.radicand() != Rational::one() || &out[&full] != expect.coeff() {
        return Err(Error::Internal(format!(
            "type A pipeline gives mu'(I_n) = {}, expected {}",
            out[&full], expect
        )));
    }
    Ok(out)
}

/// `Σ_J μ′_J·r_J(λ)`, which must be a non-negative integer.
pub fn evaluate_formula(
    volumes: &VolumeTable,
    coeffs: &GeometricCoefficients,
    lambda: &DominantCoweight,
) -> Result<BigInt> {
    if volumes.system() != coeffs.system {
        return Err(Error::SystemMismatch {
            expected: volumes.system().to_string(),
            got: coeffs.system.to_string(),
        });
    }
    let n = coeffs.system.rank();
    if lambda.rank() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: lambda.rank(),
        });
    }
    let mut acc = Rational::zero();
    for j in Subset::all(n) {
        let mp = coeffs
            .mu_prime
            .get(&j)
            .ok_or_else(|| Error::FormulaInconsistent(format!("missing coefficient for J = {j:?}")))?;
        acc += mp * volumes.get(j).relative(lambda.coords());
    }
    if !is_integer(&acc) || acc.is_negative() {
        return Err(Error::FormulaInconsistent(format!(
            "value {acc} at {:?} is not a non-negative integer",
            lambda.coords()
        )));
    }
    Ok(acc.to_integer())
}

fn lattice_value(data: &RootSystemData, m: &[i64], budget: &Budget) -> Result<Rational> {
    let lambda = DominantCoweight::new(m.to_vec())?;
    Ok(Rational::from_integer(interval_size_lattice(data, &lambda, budget)?))
}

fn grid_points(n: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|p| {
                (lo..=hi).map(move |v| {
                    let mut q = p.clone();
                    q.push(v);
                    q
                })
            })
            .collect();
    }
    out
}

fn exponents_up_to(n: usize, d: u32) -> Vec<Exponents> {
    let mut out: Vec<Exponents> = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|e| {
                let used: u32 = e.iter().sum();
                (0..=d - used).map(move |k| {
                    let mut f = e.clone();
                    f.push(k);
                    f
                })
            })
            .collect();
    }
    out
}

fn fit_by_samples(data: &RootSystemData, table: &VolumeTable, budget: &Budget) -> Result<Option<Vec<Rational>>> {
    let n = data.rank();
    let subsets: Vec<Subset> = Subset::all(n).collect();
    let mut rows = Vec::with_capacity(subsets.len());
    let mut rhs = Vec::with_capacity(subsets.len());
    for k in &subsets {
        let m: Vec<i64> = (1..=n).map(|i| if k.contains(i) { 2 } else { 1 }).collect();
        rows.push(subsets.iter().map(|j| table.get(*j).relative(&m)).collect::<Vec<_>>());
        rhs.push(lattice_value(data, &m, budget)?);
    }
    let mat = crate::exact::QMatrix::from_rows(rows)?;
    match crate::exact::solve_linear(&mat, &crate::exact::QVector::new(rhs)) {
        Ok(sol) => Ok(Some(sol.into_entries())),
        Err(Error::SingularSystem) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Fallback: interpolate `p(𝐦)` on `{1..n+1}ⁿ` and read `μ′_J` off the
/// square-free monomials.
fn fit_by_grid(data: &RootSystemData, table: &VolumeTable, budget: &Budget) -> Result<Vec<Rational>> {
    let n = data.rank();
    let mut samples = Vec::new();
    for m in grid_points(n, 1, n as i64 + 1) {
        let v = lattice_value(data, &m, budget)?;
        samples.push((m.iter().map(|&x| Rational::from_integer(BigInt::from(x))).collect(), v));
    }
    let p = mpoly_interpolate(&exponents_up_to(n, n as u32), &samples)?;
    Subset::all(n)
        .map(|j| {
            let e = squarefree_exponents(n, j);
            let c = table.get(j).rel_poly.coefficient(&e);
            if c.is_zero() {
                return Err(Error::Internal(format!("square-free coefficient of r_{j:?} vanishes")));
            }
            Ok(p.coefficient(&e) / c)
        })
        .collect()
}

/// Fits `μ′_J` for all `J` from lattice counts at `2ⁿ` sample points and
/// verifies the result on `{0,1,2}ⁿ`.
pub fn fit_mu(data: &RootSystemData, budget: &Budget) -> Result<GeometricCoefficients> {
    let n = data.rank();
    let table = VolumeTable::build(data, budget)?;
    let sol = match fit_by_samples(data, &table, budget)? {
        Some(s) => s,
        None => fit_by_grid(data, &table, budget)?,
    };
    let mut coeffs = GeometricCoefficients {
        system: data.id(),
        mu_prime: Subset::all(n).zip(sol).collect(),
        provenance: Subset::all(n).map(|j| (j, Provenance::Fitted)).collect(),
    };

    for m in grid_points(n, 0, 2) {
        if m.iter().all(|&x| x >= 1) {
            continue;
        }
        let lambda = DominantCoweight::new(m.clone())?;
        let lattice = interval_size_lattice(data, &lambda, budget)?;
        let formula = evaluate_formula(&table, &coeffs, &lambda);
        if formula.as_ref() != Ok(&lattice) {
            return Err(Error::FitFailedVerification {
                lambda: m,
                formula: match formula {
                    Ok(v) => v.to_string(),
                    Err(e) => e.to_string(),
                },
                lattice: lattice.to_string(),
            });
        }
    }

    let full = Subset::full(n);
    let mut closed = BTreeMap::new();
    closed.insert(Subset::EMPTY, mu_empty(data));
    let mf = mu_full(data).mul(&RadScalar::sqrt(&table.get(full).gram)?);
    if mf.radicand() != Rational::one() {
        return Err(Error::Internal(format!("mu'(I_n) = {mf} is not rational")));
    }
    closed.insert(full, mf.coeff().clone());
    check_and_mark(&mut coeffs, closed, Provenance::ClosedForm)?;
    if data.id().family() == Family::A {
        let mut pipeline = type_a_connected_mu(n)?;
        pipeline.remove(&full);
        check_and_mark(&mut coeffs, pipeline, Provenance::TypeAPipeline)?;
    }
    Ok(coeffs)
}

fn check_and_mark(
    coeffs: &mut GeometricCoefficients,
    known: BTreeMap<Subset, Rational>,
    prov: Provenance,
) -> Result<()> {
    for (j, v) in known {
        let fitted = &coeffs.mu_prime[&j];
        if fitted != &v {
            return Err(Error::Internal(format!(
                "fitted mu'({j:?}) = {fitted} disagrees with {} value {v}",
                prov.as_str()
            )));
        }
        coeffs.provenance.insert(j, prov);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    fn build(f: Family, n: usize) -> RootSystemData {
        RootSystemData::build(RootSystemId::new(f, n).unwrap()).unwrap()
    }

    #[test]
    fn mu_empty_examples() {
        assert_eq!(mu_empty(&build(Family::A, 2)), int(6));
        assert_eq!(mu_empty(&build(Family::G, 2)), int(12));
        assert_eq!(mu_empty(&build(Family::F, 4)), int(1152));
    }

    #[test]
    fn mu_full_examples() {
        assert_eq!(mu_full(&build(Family::A, 2)), RadScalar::new(int(2), int(3)).unwrap());
        assert_eq!(mu_full(&build(Family::A, 2)).square(), int(12));
        assert_eq!(mu_full(&build(Family::G, 2)).square(), int(432));
        assert_eq!(mu_full(&build(Family::F, 4)), RadScalar::from_rational(int(576)));
    }

    #[test]
    fn stirling_and_eulerian() {
        assert_eq!(stirling1(4, 2).unwrap(), BigInt::from(11));
        for a in 0..8 {
            assert_eq!(stirling1(a, a).unwrap(), BigInt::one());
        }
        assert_eq!(stirling1(5, 0).unwrap(), BigInt::zero());
        assert!(stirling1(2, 3).is_err());
        assert_eq!(eulerian(3, 2).unwrap(), BigInt::from(4));
        assert_eq!(eulerian(1, 1).unwrap(), BigInt::one());
        assert_eq!(eulerian(4, 2).unwrap(), BigInt::from(11));
        assert!(eulerian(3, 0).is_err());
        assert!(eulerian(3, 4).is_err());
    }

    #[test]
    fn hypersimplex_examples() {
        let e13 = hypersimplex_ehrhart(1, 3).unwrap();
        let expect = MPoly::univariate(&[int(1), rat(3, 2), rat(1, 2)]);
        assert_eq!(e13, expect);
        assert_eq!(e13.eval_ints(&[2]), int(6));
        for d in 1..=6u64 {
            for k in 1..=d {
                let e = hypersimplex_ehrhart(k, d).unwrap();
                assert_eq!(e.eval_ints(&[0]), int(1));
                assert_eq!(e.eval_ints(&[1]), Rational::from_integer(binomial(d, k)));
            }
        }
        assert!(hypersimplex_ehrhart(0, 3).is_err());
        assert!(hypersimplex_ehrhart(4, 3).is_err());
    }

    #[test]
    fn type_a_examples() {
        let mu = type_a_connected_mu(2).unwrap();
        let s = |v: &[usize]| Subset::from_indices(v, 2).unwrap();
        assert_eq!(mu[&s(&[1])], int(9));
        assert_eq!(mu[&s(&[2])], int(9));
        assert_eq!(mu[&s(&[1, 2])], int(6));
        assert_eq!(mu.len(), 3);
        for n in 1..=5 {
            assert_eq!(type_a_connected_mu(n).unwrap().len(), n * (n + 1) / 2);
        }
    }

    #[test]
    fn fit_a2_and_evaluate() {
        let a2 = build(Family::A, 2);
        let budget = Budget::default();
        let c = fit_mu(&a2, &budget).unwrap();
        let s = |v: &[usize]| Subset::from_indices(v, 2).unwrap();
        assert_eq!(c.mu_prime[&Subset::EMPTY], int(6));
        assert_eq!(c.mu_prime[&s(&[1])], int(9));
        assert_eq!(c.mu_prime[&s(&[2])], int(9));
        assert_eq!(c.mu_prime[&s(&[1, 2])], int(6));
        assert_eq!(c.provenance[&Subset::EMPTY], Provenance::ClosedForm);
        assert_eq!(c.provenance[&s(&[1])], Provenance::TypeAPipeline);
        assert!(c.is_complete());
        assert_eq!(c.mu_euclidean(&a2, s(&[1, 2])).unwrap(), mu_full(&a2));

        let t = VolumeTable::build(&a2, &budget).unwrap();
        let ev = |m: Vec<i64>| evaluate_formula(&t, &c, &DominantCoweight::new(m).unwrap()).unwrap();
        assert_eq!(ev(vec![1, 1]), BigInt::from(42));
        assert_eq!(ev(vec![2, 2]), BigInt::from(114));
        assert_eq!(ev(vec![1, 0]), BigInt::from(18));
        assert_eq!(ev(vec![0, 0]), BigInt::from(6));
    }

    #[test]
    fn evaluate_rejects_wrong_system_and_bad_coefficients() {
        let a2 = build(Family::A, 2);
        let b2 = build(Family::B, 2);
        let budget = Budget::default();
        let c = fit_mu(&a2, &budget).unwrap();
        let tb = VolumeTable::build(&b2, &budget).unwrap();
        let l = DominantCoweight::new(vec![1, 1]).unwrap();
        assert!(matches!(evaluate_formula(&tb, &c, &l), Err(Error::SystemMismatch { .. })));
        let ta = VolumeTable::build(&a2, &budget).unwrap();
        let mut bad = c.clone();
        bad.mu_prime.insert(Subset::full(2), rat(13, 2));
        assert!(matches!(
            evaluate_formula(&ta, &bad, &DominantCoweight::new(vec![1, 0]).unwrap()),
            Err(Error::FormulaInconsistent(_))
        ));
    }

    #[test]
    fn grid_fallback_agrees_with_samples() {
        for (f, n) in [(Family::A, 2), (Family::B, 2), (Family::G, 2), (Family::A, 3)] {
            let d = build(f, n);
            let b = Budget::default();
            let t = VolumeTable::build(&d, &b).unwrap();
            let a = fit_by_samples(&d, &t, &b).unwrap().unwrap();
            let g = fit_by_grid(&d, &t, &b).unwrap();
            assert_eq!(a, g, "{f:?}{n}");
        }
    }
}
