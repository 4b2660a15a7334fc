//! Orbit polytopes `P(λ) = Conv(W_f·λ)`: the dominant coweights below `λ`,
//! coset lattice-point counts and the lattice formula for `|≤θ(λ)|`, plus
//! face data `F_J(λ) = Conv(W_J·λ)`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use crate::exact::{floor, QMatrix, QVector};
use crate::rootsys::{RootSystemData, Subset};
use crate::{Budget, Error, Result};

/// A dominant coweight `Σ m_i ϖ_i∨`, stored by its coordinates `m_i ≥ 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DominantCoweight {
    coords: Vec<i64>,
}

impl DominantCoweight {
    pub fn new(coords: Vec<i64>) -> Result<Self> {
        if coords.iter().any(|&m| m < 0) {
            return Err(Error::NotDominant(coords));
        }
        Ok(DominantCoweight { coords })
    }

    pub fn zero(rank: usize) -> Self {
        DominantCoweight {
            coords: vec![0; rank],
        }
    }

    /// `m·ϖ_k∨` (1-based `k`).
    pub fn fundamental(rank: usize, k: usize, m: i64) -> Result<Self> {
        if k == 0 || k > rank {
            return Err(Error::InvalidIndex { index: k, rank });
        }
        let mut c = vec![0; rank];
        c[k - 1] = m;
        Self::new(c)
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    /// `Z(λ) = {j : m_j = 0}`.
    pub fn vanishing_set(&self) -> Subset {
        let mut s = Subset::EMPTY;
        for (j, &m) in self.coords.iter().enumerate() {
            if m == 0 {
                s = s.with(j + 1);
            }
        }
        s
    }

    pub fn is_generic(&self) -> bool {
        self.coords.iter().all(|&m| m > 0)
    }

    pub fn to_vector(&self, data: &RootSystemData) -> QVector {
        data.coweight(&self.coords)
    }

    /// Dominance order: `self ≤ other` iff `other − self` is a non-negative
    /// integer combination of simple coroots.
    pub fn dominated_by(&self, other: &DominantCoweight, data: &RootSystemData) -> bool {
        let diff = &other.to_vector(data) - &self.to_vector(data);
        data.coroot_coords(&diff)
            .iter()
            .all(|c| crate::exact::is_integer(c) && !c.is_negative())
    }
}

fn check_rank(data: &RootSystemData, lambda: &DominantCoweight) -> Result<()> {
    if lambda.rank() != data.rank() {
        return Err(Error::DimensionMismatch {
            expected: data.rank(),
            got: lambda.rank(),
        });
    }
    Ok(())
}

fn box_volume(bounds: &[i64]) -> u128 {
    bounds.iter().map(|&b| (b + 1) as u128).product()
}

/// Calls `f` on every `x` with `0 ≤ x_j ≤ bounds[j]`, in lexicographic order.
fn for_each_in_box(bounds: &[i64], mut f: impl FnMut(&[i64])) {
    let n = bounds.len();
    let mut x = vec![0i64; n];
    loop {
        f(&x);
        let mut k = n;
        loop {
            if k == 0 {
                return;
            }
            k -= 1;
            if x[k] < bounds[k] {
                x[k] += 1;
                break;
            }
            x[k] = 0;
        }
    }
}

fn check_box(bounds: &[i64], budget: &Budget) -> Result<()> {
    if box_volume(bounds) > budget.box_cap as u128 {
        return Err(Error::BudgetExceeded {
            what: "box enumeration",
            limit: budget.box_cap,
        });
    }
    Ok(())
}

/// `(μ, α_i)` for `μ = λ − Σ x_j α_j∨`.
fn lowered_coords(data: &RootSystemData, m: &[i64], x: &[i64], out: &mut [i64]) {
    let c = data.cartan();
    for i in 0..m.len() {
        let mut v = m[i];
        for (j, &xj) in x.iter().enumerate() {
            if xj != 0 {
                v -= xj * c[j][i];
            }
        }
        out[i] = v;
    }
}

/// `X_λ = {μ dominant : μ ≤ λ}`, sorted.
///
/// `μ = λ − Σ x_j α_j∨` with `x_j = (λ − μ, ω_j)`. Since `(μ, ω_j) ≥ 0` for
/// dominant `μ`, the box `0 ≤ x_j ≤ ⌊(λ, ω_j)⌋` contains every candidate.
pub fn enumerate_x(
    data: &RootSystemData,
    lambda: &DominantCoweight,
    budget: &Budget,
) -> Result<Vec<DominantCoweight>> {
    check_rank(data, lambda)?;
    let lv = lambda.to_vector(data);
    let bounds: Vec<i64> = data
        .coroot_coords(&lv)
        .iter()
        .map(|c| floor(c).to_i64().expect("bound fits in i64"))
        .collect();
    check_box(&bounds, budget)?;
    let n = data.rank();
    let mut out = Vec::new();
    let mut mu = vec![0i64; n];
    for_each_in_box(&bounds, |x| {
        lowered_coords(data, lambda.coords(), x, &mut mu);
        if mu.iter().all(|&c| c >= 0) {
            out.push(DominantCoweight { coords: mu.clone() });
        }
    });
    out.sort();
    out.reverse();
    Ok(out)
}

/// `|W_f| / |W_{Z(μ)}|` for each `μ`, memoized by vanishing set.
struct OrbitSizes<'a> {
    data: &'a RootSystemData,
    memo: BTreeMap<Subset, BigInt>,
}

impl<'a> OrbitSizes<'a> {
    fn new(data: &'a RootSystemData) -> Self {
        OrbitSizes {
            data,
            memo: BTreeMap::new(),
        }
    }

    fn of(&mut self, mu: &DominantCoweight) -> BigInt {
        let z = mu.vanishing_set();
        let data = self.data;
        self.memo
            .entry(z)
            .or_insert_with(|| data.wf_order() / data.weyl_order(z))
            .clone()
    }
}

/// Size of the `W_f`-orbit of a dominant coweight.
pub fn orbit_size(data: &RootSystemData, mu: &DominantCoweight) -> BigInt {
    data.wf_order() / data.weyl_order(mu.vanishing_set())
}

/// `|P(λ) ∩ (λ + ℤΦ∨)|` as the sum of orbit sizes over `X_λ`.
pub fn lattice_count(data: &RootSystemData, lambda: &DominantCoweight, budget: &Budget) -> Result<BigInt> {
    let xs = enumerate_x(data, lambda, budget)?;
    let mut sizes = OrbitSizes::new(data);
    Ok(xs.iter().map(|mu| sizes.of(mu)).sum())
}

/// `|≤θ(λ)| = |W_f|·|P(λ) ∩ (λ + ℤΦ∨)|`.
pub fn interval_size_lattice(
    data: &RootSystemData,
    lambda: &DominantCoweight,
    budget: &Budget,
) -> Result<BigInt> {
    Ok(data.wf_order() * lattice_count(data, lambda, budget)?)
}

/// Geometric membership `p ∈ P(λ)`: `λ − p⁺` has non-negative coordinates in
/// the simple-coroot basis, where `p⁺` is the dominant representative of `p`.
pub fn contains(data: &RootSystemData, lambda: &DominantCoweight, p: &QVector) -> bool {
    let (plus, _) = data.dominant_representative(p);
    let diff = &lambda.to_vector(data) - &plus;
    data.coroot_coords(&diff).iter().all(|c| !c.is_negative())
}

/// `(λ − w₀λ, ω_j)` for each `j`.
fn full_box_bounds(data: &RootSystemData, lambda: &DominantCoweight) -> Vec<i64> {
    let lv = lambda.to_vector(data);
    let (top, _) = data.dominant_representative(&-&lv);
    let w0l = -&top;
    data.coroot_coords(&(&lv - &w0l))
        .iter()
        .map(|c| floor(c).to_i64().expect("bound fits in i64"))
        .collect()
}

/// Counts the points `λ − Σ x_j α_j∨` of the full box
/// `0 ≤ x_j ≤ (λ − w₀λ, ω_j)` that lie in `P(λ)`. This visits every coset
/// point of the bounding box and does not use orbit sizes.
pub fn lattice_count_by_membership(
    data: &RootSystemData,
    lambda: &DominantCoweight,
    budget: &Budget,
) -> Result<BigInt> {
    check_rank(data, lambda)?;
    let bounds = full_box_bounds(data, lambda);
    check_box(&bounds, budget)?;
    let n = data.rank();
    // (ϖ_i∨, ω_j), cleared to integers.
    let mut pm = QMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            pm[(i, j)] = data.fundamental_coweight(i + 1).dot(data.fundamental_weight(j + 1));
        }
    }
    let den = crate::exact::lcm_of_denominators((0..n).flat_map(|i| pm.row(i).iter()));
    let pint: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            pm.row(i)
                .iter()
                .map(|q| (q.numer() * (&den / q.denom())).to_i64().expect("small"))
                .collect()
        })
        .collect();
    let cartan = data.cartan();
    let lam = lambda.coords();
    let mut count = 0u64;
    let mut c = vec![0i64; n];
    for_each_in_box(&bounds, |x| {
        lowered_coords(data, lam, x, &mut c);
        // Dominant representative in coweight coordinates.
        while let Some(i) = (0..n).find(|&i| c[i] < 0) {
            let ci = c[i];
            for k in 0..n {
                c[k] -= ci * cartan[i][k];
            }
        }
        let inside = (0..n).all(|j| {
            let s: i64 = (0..n).map(|i| (lam[i] - c[i]) * pint[i][j]).sum();
            s >= 0
        });
        if inside {
            count += 1;
        }
    });
    Ok(BigInt::from(count))
}

/// The orbit `W_J·v`, sorted.
pub fn parabolic_orbit(data: &RootSystemData, v: &QVector, j: Subset) -> Vec<QVector> {
    let gens = j.indices();
    let mut seen: BTreeSet<QVector> = BTreeSet::new();
    seen.insert(v.clone());
    let mut stack = vec![v.clone()];
    while let Some(x) = stack.pop() {
        for &i in &gens {
            let y = data.reflect_simple(i, &x);
            if seen.insert(y.clone()) {
                stack.push(y);
            }
        }
    }
    seen.into_iter().collect()
}

/// `F_J(λ) = Conv(W_J·λ)` by its vertices and dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceDescriptor {
    pub j: Subset,
    pub vertices: Vec<QVector>,
    pub dim: usize,
}

pub fn face(data: &RootSystemData, lambda: &DominantCoweight, j: Subset) -> Result<FaceDescriptor> {
    check_rank(data, lambda)?;
    if !j.is_subset_of(Subset::full(data.rank())) {
        return Err(Error::InvalidIndex {
            index: j.indices().last().copied().unwrap_or(0),
            rank: data.rank(),
        });
    }
    let lv = lambda.to_vector(data);
    let vertices = parabolic_orbit(data, &lv, j);
    let diffs: Vec<QVector> = vertices.iter().map(|v| v - &lv).collect();
    let dim = if diffs.is_empty() {
        0
    } else {
        QMatrix::from_row_vectors(&diffs).rank()
    };
    Ok(FaceDescriptor { j, vertices, dim })
}

/// Number of distinct faces `w·F_J(λ)`, `w ∈ W_f`.
pub fn orbit_face_count(data: &RootSystemData, lambda: &DominantCoweight, j: Subset) -> Result<usize> {
    let f = face(data, lambda, j)?;
    let n = data.rank();
    let mut seen: BTreeSet<Vec<QVector>> = BTreeSet::new();
    seen.insert(f.vertices.clone());
    let mut stack = vec![f.vertices];
    while let Some(vs) = stack.pop() {
        for i in 1..=n {
            let mut img: Vec<QVector> = vs.iter().map(|v| data.reflect_simple(i, v)).collect();
            img.sort();
            if seen.insert(img.clone()) {
                stack.push(img);
            }
        }
    }
    Ok(seen.len())
}

/// `[W_f : W_J]`.
pub fn parabolic_index(data: &RootSystemData, j: Subset) -> BigInt {
    data.wf_order() / data.weyl_order(j)
}
