//! Volume polynomials `V_J(𝐦)` of the faces `F_J(λ) = Conv(W_J·λ)`, where
//! `λ = Σ m_i ϖ_i∨`.
//!
//! Volumes are stored lattice-normalized: `V_J = r_J·√gram_J`, with `r_J` a
//! rational polynomial and `gram_J` the Gram determinant of the simple
//! coroots indexed by `J` (the covolume² of `ℤΦ∨ ∩ L_J`). The recursion is
//!
//! ```text
//! V_J = (1/|J|) Σ_{j∈J} [W_J : W_{J∖j}] · (λ, ν_j)/‖ν_j‖ · V_{J∖j}
//! ```
//!
//! with `ν_j ∈ L_J` dual to the coroots `{α_i∨ : i ∈ J}`. Each summand's
//! radical `√gram_{J∖j}/‖ν_j‖` is checked to lie on the ray of `√gram_J`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::exact::{gram_det, solve_linear, MPoly, QMatrix, QVector, RadScalar, Rational};
use crate::rootsys::{RootSystemData, Subset};
use crate::{Budget, Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VolumePolynomial {
    pub j: Subset,
    /// `r_J`, in the variables `m_1, …, m_n`.
    pub rel_poly: MPoly,
    /// Gram determinant of `{α_j∨ : j ∈ J}`.
    pub gram: Rational,
}

impl VolumePolynomial {
    /// Euclidean `|J|`-volume of `F_J(λ)`.
    pub fn euclidean(&self, m: &[i64]) -> RadScalar {
        RadScalar::new(self.rel_poly.eval_ints(m), self.gram.clone()).expect("gram > 0")
    }

    /// Relative volume (lattice-normalized) at `m`.
    pub fn relative(&self, m: &[i64]) -> Rational {
        self.rel_poly.eval_ints(m)
    }
}

/// Gram determinant of the simple coroots indexed by `j`.
pub fn gram_of(data: &RootSystemData, j: Subset) -> Rational {
    let vs: Vec<QVector> = j.indices().iter().map(|&i| data.simple_coroot(i).clone()).collect();
    gram_det(&vs).expect("simple coroots are independent")
}

/// The `J`-mixed dual vectors: for each `j ∈ J`, `ν_j ∈ L_J` with
/// `(ν_j, α_i∨) = δ_ij` for `i ∈ J`, and `(ν_j, ν_j)`.
pub fn mixed_basis_nu(data: &RootSystemData, j: Subset) -> Vec<(usize, QVector, Rational)> {
    let idx = j.indices();
    let k = idx.len();
    // ν = Σ_{a∈J} u_a α_a, (ν, α_b∨) = Σ_a u_a (α_a, α_b∨)
    let mut m = QMatrix::zeros(k, k);
    for (r, &b) in idx.iter().enumerate() {
        for (c, &a) in idx.iter().enumerate() {
            m[(r, c)] = data.simple_root(a).dot(data.simple_coroot(b));
        }
    }
    idx.iter()
        .enumerate()
        .map(|(pos, &jj)| {
            let u = solve_linear(&m, &QVector::unit(k, pos)).expect("Cartan submatrix is invertible");
            let mut nu = QVector::zeros(data.ambient_dim());
            for (c, &a) in idx.iter().enumerate() {
                nu = nu.add_scaled(&u[c], data.simple_root(a));
            }
            let n2 = nu.norm2();
            (jj, nu, n2)
        })
        .collect()
}

/// `Σ_i (ϖ_i∨, v)·m_i`, the linear form `λ ↦ (λ, v)`.
fn pairing_form(data: &RootSystemData, v: &QVector) -> MPoly {
    let n = data.rank();
    let mut p = MPoly::zero(n);
    for i in 1..=n {
        let c = data.fundamental_coweight(i).dot(v);
        if !c.is_zero() {
            p = &p + &MPoly::var(n, i - 1).scale(&c);
        }
    }
    p
}

fn step(
    data: &RootSystemData,
    j: Subset,
    lower: impl Fn(Subset) -> VolumePolynomial,
) -> Result<VolumePolynomial> {
    let n = data.rank();
    let gram = gram_of(data, j);
    if j.is_empty() {
        return Ok(VolumePolynomial {
            j,
            rel_poly: MPoly::one(n),
            gram,
        });
    }
    let target = RadScalar::sqrt(&gram)?;
    let wj = data.weyl_order(j);
    let mut acc = MPoly::zero(n);
    for (jj, nu, n2) in mixed_basis_nu(data, j) {
        let k = j.without(jj);
        let below = lower(k);
        let index = Rational::from_integer(&wj / data.weyl_order(k));
        // √gram_K / ‖ν_j‖ = √(gram_K / (ν_j, ν_j))
        let radical = RadScalar::sqrt(&(&below.gram / &n2))?;
        let ratio = radical
            .rational_ratio(&target)
            .ok_or_else(|| Error::RadicalInconsistency(j.indices()))?;
        let term = &pairing_form(data, &nu) * &below.rel_poly;
        acc = &acc + &term.scale(&(index * ratio));
    }
    let rel_poly = acc.scale(&Rational::new(BigInt::one(), BigInt::from(j.len())));
    Ok(VolumePolynomial { j, rel_poly, gram })
}

/// `V_J` by the pyramid recursion, memoized over the subsets of `J`.
pub fn volume_polynomial(data: &RootSystemData, j: Subset) -> Result<VolumePolynomial> {
    if !j.is_subset_of(Subset::full(data.rank())) {
        return Err(Error::InvalidIndex {
            index: j.indices().last().copied().unwrap_or(0),
            rank: data.rank(),
        });
    }
    let mut memo: BTreeMap<Subset, VolumePolynomial> = BTreeMap::new();
    // Subsets of J in increasing mask order: every K ⊂ J comes before J.
    let mut sub = 0u32;
    loop {
        let k = Subset::from_mask(sub);
        let v = step(data, k, |x| memo[&x].clone())?;
        memo.insert(k, v);
        if sub == j.mask() {
            break;
        }
        sub = (sub.wrapping_sub(j.mask())) & j.mask();
    }
    Ok(memo.remove(&j).expect("computed"))
}

/// All `2^n` volume polynomials of one root system.
#[derive(Clone, Debug)]
pub struct VolumeTable {
    system: crate::RootSystemId,
    polys: Vec<VolumePolynomial>,
}

impl VolumeTable {
    pub fn build(data: &RootSystemData, budget: &Budget) -> Result<Self> {
        let n = data.rank();
        if n > budget.max_subset_rank {
            return Err(Error::BudgetExceeded {
                what: "subset table rank",
                limit: budget.max_subset_rank as u64,
            });
        }
        let mut polys: Vec<VolumePolynomial> = Vec::with_capacity(1 << n);
        for j in Subset::all(n) {
            let v = step(data, j, |k| polys[k.mask() as usize].clone())?;
            polys.push(v);
        }
        Ok(VolumeTable {
            system: data.id(),
            polys,
        })
    }

    pub fn system(&self) -> crate::RootSystemId {
        self.system
    }

    pub fn get(&self, j: Subset) -> &VolumePolynomial {
        &self.polys[j.mask() as usize]
    }

    pub fn iter(&self) -> impl Iterator<Item = &VolumePolynomial> {
        self.polys.iter()
    }
}

/// Exponent vector of the square-free monomial `Π_{j∈J} m_j`.
pub fn squarefree_exponents(n: usize, j: Subset) -> Vec<u32> {
    (1..=n).map(|i| u32::from(j.contains(i))).collect()
}

/// `c_J`: the coefficient of `Π_{j∈J} m_j` in `V_J`, which is positive.
pub fn squarefree_coefficient(data: &RootSystemData, j: Subset) -> Result<RadScalar> {
    let v = volume_polynomial(data, j)?;
    let c = v.rel_poly.coefficient(&squarefree_exponents(data.rank(), j));
    let out = RadScalar::new(c, v.gram)?;
    if !out.is_positive() {
        return Err(Error::Internal(alloc::format!(
            "square-free coefficient of V_{:?} is not positive",
            j
        )));
    }
    Ok(out)
}

/// Coefficient of `m_i^{|J|}` in `V_J`, as a Euclidean value.
pub fn pure_power_coefficient(v: &VolumePolynomial, i: usize) -> RadScalar {
    let n = v.rel_poly.nvars();
    let mut e = alloc::vec![0u32; n];
    e[i - 1] = v.j.len() as u32;
    RadScalar::new(v.rel_poly.coefficient(&e), v.gram.clone()).expect("gram > 0")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};
    use crate::rootsys::{Family, RootSystemId};

    fn build(f: Family, n: usize) -> RootSystemData {
        RootSystemData::build(RootSystemId::new(f, n).unwrap()).unwrap()
    }

    fn s(idx: &[usize], n: usize) -> Subset {
        Subset::from_indices(idx, n).unwrap()
    }

    #[test]
    fn nu_examples() {
        let a2 = build(Family::A, 2);
        let nus = mixed_basis_nu(&a2, s(&[1], 2));
        assert_eq!(nus.len(), 1);
        assert_eq!(nus[0].1, a2.simple_root(1).scale(&rat(1, 2)));
        assert_eq!(nus[0].2, rat(1, 2));
        for (j, nu, _) in mixed_basis_nu(&a2, Subset::full(2)) {
            assert_eq!(&nu, a2.fundamental_weight(j));
        }
    }

    #[test]
    fn a2_volume_polynomials() {
        let a2 = build(Family::A, 2);
        let v1 = volume_polynomial(&a2, s(&[1], 2)).unwrap();
        assert_eq!(v1.rel_poly, MPoly::var(2, 0));
        assert_eq!(v1.gram, int(2));
        let v12 = volume_polynomial(&a2, Subset::full(2)).unwrap();
        let expect = MPoly::from_terms(
            2,
            [
                (alloc::vec![2, 0], rat(1, 2)),
                (alloc::vec![1, 1], int(2)),
                (alloc::vec![0, 2], rat(1, 2)),
            ],
        );
        assert_eq!(v12.rel_poly, expect);
        assert_eq!(v12.gram, int(3));
        // Regular hexagon with vertices at the six roots: area 3√3.
        assert_eq!(v12.euclidean(&[1, 1]), RadScalar::new(int(3), int(3)).unwrap());
        let v0 = volume_polynomial(&a2, Subset::EMPTY).unwrap();
        assert_eq!(v0.rel_poly, MPoly::one(2));
    }

    #[test]
    fn squarefree_coefficient_examples() {
        let a2 = build(Family::A, 2);
        assert_eq!(
            squarefree_coefficient(&a2, s(&[1], 2)).unwrap(),
            RadScalar::sqrt(&int(2)).unwrap()
        );
        assert_eq!(
            squarefree_coefficient(&a2, Subset::full(2)).unwrap(),
            RadScalar::new(int(2), int(3)).unwrap()
        );
        let v12 = volume_polynomial(&a2, Subset::full(2)).unwrap();
        assert_eq!(
            pure_power_coefficient(&v12, 1),
            RadScalar::new(rat(1, 2), int(3)).unwrap()
        );
    }

    #[test]
    fn table_matches_single_computation() {
        let b3 = build(Family::B, 3);
        let t = VolumeTable::build(&b3, &Budget::default()).unwrap();
        for j in Subset::all(3) {
            assert_eq!(t.get(j), &volume_polynomial(&b3, j).unwrap());
        }
        let tiny = Budget {
            max_subset_rank: 2,
            ..Budget::default()
        };
        assert!(VolumeTable::build(&b3, &tiny).is_err());
    }
}
