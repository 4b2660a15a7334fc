//! Irreducible root systems in their Bourbaki coordinate realizations, with
//! every constant the rest of the crate needs: coroots, fundamental
//! (co)weights, Cartan matrix, highest root and marks, minuscule coweights,
//! index of connection, `|W_f|`, and the lattice and alcove volumes.
//!
//! Simple roots are the Bourbaki ones. Fundamental coweights and weights are
//! solved from the Gram matrix rather than transcribed, then checked.

use alloc::collections::BTreeSet;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::exact::{factorial, gram_det, int, rat, solve_linear, QMatrix, QVector, RadScalar, Rational};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }

    pub fn from_letter(c: char) -> Option<Family> {
        Some(match c.to_ascii_uppercase() {
            'A' => Family::A,
            'B' => Family::B,
            'C' => Family::C,
            'D' => Family::D,
            'E' => Family::E,
            'F' => Family::F,
            'G' => Family::G,
            _ => return None,
        })
    }
}

/// A validated (family, rank) pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootSystemId {
    family: Family,
    rank: usize,
}

impl RootSystemId {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 3,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if ok {
            Ok(RootSystemId { family, rank })
        } else {
            Err(Error::InvalidRank {
                family: family.letter(),
                rank,
            })
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }
}

impl fmt::Display for RootSystemId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

impl FromStr for RootSystemId {
    type Err = Error;

    /// Parses `"A2"`, `"e8"`, …
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let bad = || Error::OutOfRange(["unknown root system ", s].concat());
        let family = chars.next().and_then(Family::from_letter).ok_or_else(bad)?;
        let rank: usize = chars.as_str().parse().map_err(|_| bad())?;
        RootSystemId::new(family, rank)
    }
}

/// A subset of the simple-root indices `{1, …, n}`, stored as a bit mask
/// (bit `i-1` for index `i`).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Subset(u32);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn full(n: usize) -> Subset {
        Subset(((1u64 << n) - 1) as u32)
    }

    pub fn from_mask(mask: u32) -> Subset {
        Subset(mask)
    }

    /// Builds a subset from 1-based indices, checking them against rank `n`.
    pub fn from_indices(indices: &[usize], n: usize) -> Result<Subset> {
        let mut m = 0u32;
        for &i in indices {
            if i == 0 || i > n {
                return Err(Error::InvalidIndex { index: i, rank: n });
            }
            m |= 1 << (i - 1);
        }
        Ok(Subset(m))
    }

    pub fn mask(self) -> u32 {
        self.0
    }

    pub fn contains(self, i: usize) -> bool {
        (1..=32).contains(&i) && self.0 & (1 << (i - 1)) != 0
    }

    pub fn with(self, i: usize) -> Subset {
        Subset(self.0 | (1 << (i - 1)))
    }

    pub fn without(self, i: usize) -> Subset {
        Subset(self.0 & !(1 << (i - 1)))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    /// Sorted 1-based indices.
    pub fn indices(self) -> Vec<usize> {
        (1..=32).filter(|&i| self.contains(i)).collect()
    }

    /// All `2^n` subsets of `{1..n}` ordered by mask.
    pub fn all(n: usize) -> impl Iterator<Item = Subset> {
        (0..(1u32 << n)).map(Subset)
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, i) in self.indices().into_iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", i)?;
        }
        f.write_str("}")
    }
}

/// Immutable data of an irreducible root system and its derived constants.
#[derive(Clone, Debug)]
pub struct RootSystemData {
    id: RootSystemId,
    ambient_dim: usize,
    simple_roots: Vec<QVector>,
    simple_coroots: Vec<QVector>,
    positive_roots: Vec<QVector>,
    /// Coordinates of each positive root in the simple-root basis.
    positive_root_coords: Vec<Vec<i64>>,
    fundamental_coweights: Vec<QVector>,
    fundamental_weights: Vec<QVector>,
    cartan: Vec<Vec<i64>>,
    highest_root: QVector,
    highest_coroot: QVector,
    marks: Vec<i64>,
    minuscule: Vec<usize>,
    index_of_connection: i64,
    wf_order: BigInt,
    det_coweight_lattice: RadScalar,
    alcove_volume: RadScalar,
}

fn e(dim: usize, i: usize) -> QVector {
    QVector::unit(dim, i)
}

fn bourbaki_simple_roots(id: RootSystemId) -> (usize, Vec<QVector>) {
    let n = id.rank;
    let diff = |dim: usize, i: usize, j: usize| &e(dim, i) - &e(dim, j);
    match id.family {
        Family::A => (n + 1, (0..n).map(|i| diff(n + 1, i, i + 1)).collect()),
        Family::B => {
            let mut s: Vec<_> = (0..n - 1).map(|i| diff(n, i, i + 1)).collect();
            s.push(e(n, n - 1));
            (n, s)
        }
        Family::C => {
            let mut s: Vec<_> = (0..n - 1).map(|i| diff(n, i, i + 1)).collect();
            s.push(e(n, n - 1).scale(&int(2)));
            (n, s)
        }
        Family::D => {
            let mut s: Vec<_> = (0..n - 1).map(|i| diff(n, i, i + 1)).collect();
            s.push(&e(n, n - 2) + &e(n, n - 1));
            (n, s)
        }
        Family::E => {
            let h = rat(1, 2);
            let mut a1 = vec![-h.clone(); 8];
            a1[0] = h.clone();
            a1[7] = h;
            let mut s = vec![QVector::new(a1), &e(8, 0) + &e(8, 1)];
            for i in 0..n - 2 {
                s.push(diff(8, i + 1, i));
            }
            (8, s)
        }
        Family::F => {
            let h = rat(1, 2);
            (
                4,
                vec![
                    diff(4, 1, 2),
                    diff(4, 2, 3),
                    e(4, 3),
                    QVector::new(vec![h.clone(), -h.clone(), -h.clone(), -h]),
                ],
            )
        }
        Family::G => (
            3,
            vec![
                QVector::from_ints(&[1, -1, 0]),
                QVector::from_ints(&[-2, 1, 1]),
            ],
        ),
    }
}

pub(crate) fn coroot(alpha: &QVector) -> QVector {
    alpha.scale(&(int(2) / alpha.norm2()))
}

/// `s_α(x) = x − (x, α)·α∨`
pub(crate) fn reflect(x: &QVector, alpha: &QVector, alpha_vee: &QVector) -> QVector {
    x.add_scaled(&-x.dot(alpha), alpha_vee)
}

/// Order of an irreducible Weyl group of the given type and rank.
pub fn irreducible_weyl_order(family: Family, k: usize) -> BigInt {
    let k64 = k as u64;
    match family {
        Family::A => factorial(k64 + 1),
        Family::B | Family::C => (BigInt::one() << k) * factorial(k64),
        Family::D => (BigInt::one() << (k - 1)) * factorial(k64),
        Family::E => BigInt::from(match k {
            6 => 51_840u64,
            7 => 2_903_040,
            _ => 696_729_600,
        }),
        Family::F => BigInt::from(1152),
        Family::G => BigInt::from(12),
    }
}

/// Dual basis of `basis` inside its own span: `(out_i, pair_j) = δ_ij`, with
/// `out_i` a combination of `basis`.
fn dual_in_span(basis: &[QVector], pair: &[QVector]) -> Result<Vec<QVector>> {
    let n = basis.len();
    // Σ_k x_k (basis_k, pair_j) = δ_ij; matrix rows indexed by j.
    let mut m = QMatrix::zeros(n, n);
    for j in 0..n {
        for k in 0..n {
            m[(j, k)] = basis[k].dot(&pair[j]);
        }
    }
    (0..n)
        .map(|i| {
            let rhs = QVector::unit(n, i);
            let x = solve_linear(&m, &rhs)?;
            let mut v = QVector::zeros(basis[0].dim());
            for k in 0..n {
                v = v.add_scaled(&x[k], &basis[k]);
            }
            Ok(v)
        })
        .collect()
}

impl RootSystemData {
    pub fn build(id: RootSystemId) -> Result<Self> {
        let n = id.rank;
        let (ambient_dim, simple_roots) = bourbaki_simple_roots(id);
        let simple_coroots: Vec<QVector> = simple_roots.iter().map(coroot).collect();
        let fundamental_coweights = dual_in_span(&simple_roots, &simple_roots)?;
        let fundamental_weights = dual_in_span(&simple_roots, &simple_coroots)?;

        let mut cartan = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in 0..n {
                let v = simple_roots[j].dot(&simple_coroots[i]);
                cartan[i][j] = crate::exact::to_i64(&v)
                    .ok_or_else(|| Error::Internal("non-integral Cartan entry".to_string()))?;
            }
        }

        // Close Δ under simple reflections.
        let mut all: BTreeSet<QVector> = simple_roots.iter().cloned().collect();
        let mut frontier: Vec<QVector> = simple_roots.clone();
        while let Some(beta) = frontier.pop() {
            for i in 0..n {
                let r = reflect(&beta, &simple_roots[i], &simple_coroots[i]);
                if all.insert(r.clone()) {
                    frontier.push(r);
                }
            }
        }
        let mut positive: Vec<(Vec<i64>, QVector)> = Vec::new();
        for beta in &all {
            let coords: Vec<Rational> = fundamental_coweights.iter().map(|w| beta.dot(w)).collect();
            if coords.iter().all(|c| !c.is_negative()) {
                let ints = coords
                    .iter()
                    .map(crate::exact::to_i64)
                    .collect::<Option<Vec<_>>>()
                    .ok_or_else(|| Error::Internal("non-integral root coordinates".to_string()))?;
                positive.push((ints, beta.clone()));
            }
        }
        // Order by height, then coordinates, for determinism.
        positive.sort_by(|a, b| {
            let ha: i64 = a.0.iter().sum();
            let hb: i64 = b.0.iter().sum();
            ha.cmp(&hb).then_with(|| b.0.cmp(&a.0))
        });
        if 2 * positive.len() != all.len() {
            return Err(Error::Internal("roots are not split into ± pairs".to_string()));
        }
        let (marks, highest_root) = positive.last().cloned().expect("nonempty root system");
        let highest_coroot = coroot(&highest_root);
        let positive_root_coords = positive.iter().map(|p| p.0.clone()).collect();
        let positive_roots = positive.into_iter().map(|p| p.1).collect();
        let minuscule = (1..=n).filter(|&i| marks[i - 1] == 1).collect();

        let det_cartan = QMatrix::from_rows(
            cartan
                .iter()
                .map(|r| r.iter().map(|&x| int(x)).collect())
                .collect(),
        )?
        .det();
        let index_of_connection = crate::exact::to_i64(&det_cartan)
            .ok_or_else(|| Error::Internal("non-integral Cartan determinant".to_string()))?;

        let wf_order = irreducible_weyl_order(id.family, n);
        let det_coweight_lattice = RadScalar::sqrt(&gram_det(&fundamental_coweights)?)?;
        let mark_product: BigInt = marks.iter().map(|&m| BigInt::from(m)).product();
        let alcove_volume = det_coweight_lattice
            .scale(&Rational::new(BigInt::one(), factorial(n as u64) * mark_product));

        let data = RootSystemData {
            id,
            ambient_dim,
            simple_roots,
            simple_coroots,
            positive_roots,
            positive_root_coords,
            fundamental_coweights,
            fundamental_weights,
            cartan,
            highest_root,
            highest_coroot,
            marks,
            minuscule,
            index_of_connection,
            wf_order,
            det_coweight_lattice,
            alcove_volume,
        };
        data.check_invariants()?;
        Ok(data)
    }

    fn check_invariants(&self) -> Result<()> {
        let n = self.rank();
        let fail = |what: &str| Err(Error::Internal(["root system invariant: ", what].concat()));
        for i in 0..n {
            for j in 0..n {
                let d = if i == j { Rational::one() } else { Rational::zero() };
                if self.fundamental_coweights[i].dot(&self.simple_roots[j]) != d {
                    return fail("(ϖ_i∨, α_j) = δ_ij");
                }
                if self.fundamental_weights[i].dot(&self.simple_coroots[j]) != d {
                    return fail("(ω_i, α_j∨) = δ_ij");
                }
            }
            if self.cartan[i][i] != 2 || (0..n).any(|j| j != i && self.cartan[i][j] > 0) {
                return fail("Cartan matrix shape");
            }
        }
        if self.marks.iter().any(|&m| m <= 0) {
            return fail("marks positive");
        }
        let mut recombined = QVector::zeros(self.ambient_dim);
        for (m, a) in self.marks.iter().zip(&self.simple_roots) {
            recombined = recombined.add_scaled(&int(*m), a);
        }
        if recombined != self.highest_root {
            return fail("α̃ = Σ η_i α_i");
        }
        let mark_product: BigInt = self.marks.iter().map(|&m| BigInt::from(m)).product();
        if factorial(n as u64) * mark_product * BigInt::from(self.index_of_connection)
            != self.wf_order
        {
            return fail("|W_f| = n!·η₁⋯η_n·[Λ∨:ℤΦ∨]");
        }
        // [Λ∨:ℤΦ∨]² = gram(coroots)/gram(coweights)
        let ratio = gram_det(&self.simple_coroots)? / gram_det(&self.fundamental_coweights)?;
        if ratio != int(self.index_of_connection * self.index_of_connection) {
            return fail("index of connection");
        }
        let pos: BTreeSet<&QVector> = self.positive_roots.iter().collect();
        for i in 0..n {
            for beta in &self.positive_roots {
                if beta == &self.simple_roots[i] {
                    continue;
                }
                let r = reflect(beta, &self.simple_roots[i], &self.simple_coroots[i]);
                if !pos.contains(&r) {
                    return fail("s_i permutes Φ⁺ ∖ {α_i}");
                }
            }
        }
        Ok(())
    }

    pub fn id(&self) -> RootSystemId {
        self.id
    }

    pub fn rank(&self) -> usize {
        self.id.rank
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// `α_i`, 1-based.
    pub fn simple_root(&self, i: usize) -> &QVector {
        &self.simple_roots[i - 1]
    }

    pub fn simple_roots(&self) -> &[QVector] {
        &self.simple_roots
    }

    /// `α_i∨`, 1-based.
    pub fn simple_coroot(&self, i: usize) -> &QVector {
        &self.simple_coroots[i - 1]
    }

    pub fn simple_coroots(&self) -> &[QVector] {
        &self.simple_coroots
    }

    pub fn positive_roots(&self) -> &[QVector] {
        &self.positive_roots
    }

    /// Simple-root coordinates of the positive roots, in the order of
    /// [`positive_roots`](Self::positive_roots).
    pub fn positive_root_coords(&self) -> &[Vec<i64>] {
        &self.positive_root_coords
    }

    /// `ϖ_i∨`, 1-based.
    pub fn fundamental_coweight(&self, i: usize) -> &QVector {
        &self.fundamental_coweights[i - 1]
    }

    pub fn fundamental_coweights(&self) -> &[QVector] {
        &self.fundamental_coweights
    }

    /// `ω_i`, 1-based.
    pub fn fundamental_weight(&self, i: usize) -> &QVector {
        &self.fundamental_weights[i - 1]
    }

    pub fn fundamental_weights(&self) -> &[QVector] {
        &self.fundamental_weights
    }

    /// `cartan()[i][j] = (α_j, α_i∨)`, zero-based.
    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn cartan_matrix(&self) -> QMatrix {
        QMatrix::from_rows(
            self.cartan
                .iter()
                .map(|r| r.iter().map(|&x| int(x)).collect())
                .collect(),
        )
        .expect("square")
    }

    pub fn highest_root(&self) -> &QVector {
        &self.highest_root
    }

    pub fn highest_coroot(&self) -> &QVector {
        &self.highest_coroot
    }

    /// `η_1, …, η_n` with `α̃ = Σ η_i α_i`.
    pub fn marks(&self) -> &[i64] {
        &self.marks
    }

    pub fn mark_product(&self) -> BigInt {
        self.marks.iter().map(|&m| BigInt::from(m)).product()
    }

    /// 1-based indices `i` with `η_i = 1`.
    pub fn minuscule(&self) -> &[usize] {
        &self.minuscule
    }

    pub fn index_of_connection(&self) -> i64 {
        self.index_of_connection
    }

    pub fn wf_order(&self) -> &BigInt {
        &self.wf_order
    }

    /// Covolume of the coweight lattice `Λ∨`.
    pub fn det_coweight_lattice(&self) -> &RadScalar {
        &self.det_coweight_lattice
    }

    /// Euclidean volume of the fundamental alcove.
    pub fn alcove_volume(&self) -> &RadScalar {
        &self.alcove_volume
    }

    /// Coweight with the given coordinates in the fundamental-coweight basis.
    pub fn coweight(&self, coords: &[i64]) -> QVector {
        let mut v = QVector::zeros(self.ambient_dim);
        for (m, w) in coords.iter().zip(&self.fundamental_coweights) {
            if *m != 0 {
                v = v.add_scaled(&int(*m), w);
            }
        }
        v
    }

    /// `((v, α_1), …, (v, α_n))`: coordinates in the fundamental-coweight basis.
    pub fn coweight_coords(&self, v: &QVector) -> Vec<Rational> {
        self.simple_roots.iter().map(|a| v.dot(a)).collect()
    }

    /// Coordinates in the simple-coroot basis, `(v, ω_j)`.
    pub fn coroot_coords(&self, v: &QVector) -> Vec<Rational> {
        self.fundamental_weights.iter().map(|w| v.dot(w)).collect()
    }

    /// True if `v` lies in the coroot lattice `ℤΦ∨`.
    pub fn in_coroot_lattice(&self, v: &QVector) -> bool {
        self.coroot_coords(v).iter().all(crate::exact::is_integer)
    }

    /// True if `v` lies in the coweight lattice `Λ∨`.
    pub fn in_coweight_lattice(&self, v: &QVector) -> bool {
        self.coweight_coords(v).iter().all(crate::exact::is_integer)
    }

    /// Applies the simple reflection `s_i` (1-based, linear) to `v`.
    pub fn reflect_simple(&self, i: usize, v: &QVector) -> QVector {
        reflect(v, &self.simple_roots[i - 1], &self.simple_coroots[i - 1])
    }

    /// Adjacency of the Dynkin diagram: `i ~ j` iff `(α_i, α_j) ≠ 0`, `i ≠ j`.
    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        i != j && self.cartan[i - 1][j - 1] != 0
    }

    /// Connected components of the Dynkin diagram restricted to `j`.
    pub fn components(&self, j: Subset) -> Vec<Subset> {
        let mut left = j;
        let mut out = Vec::new();
        while let Some(&start) = left.indices().first() {
            let mut comp = Subset::EMPTY.with(start);
            let mut stack = vec![start];
            while let Some(a) = stack.pop() {
                for b in left.indices() {
                    if !comp.contains(b) && self.adjacent(a, b) {
                        comp = comp.with(b);
                        stack.push(b);
                    }
                }
            }
            left = Subset(left.0 & !comp.0);
            out.push(comp);
        }
        out
    }

    /// Type of the irreducible sub-diagram `component` (assumed connected).
    pub fn component_type(&self, component: Subset) -> (Family, usize) {
        let idx = component.indices();
        let k = idx.len();
        let bond = |a: usize, b: usize| self.cartan[a - 1][b - 1] * self.cartan[b - 1][a - 1];
        let degree = |a: usize| idx.iter().filter(|&&b| self.adjacent(a, b)).count();
        let mut max_bond = 0;
        let mut multi_edge = None;
        for &a in &idx {
            for &b in &idx {
                if a < b && self.adjacent(a, b) {
                    let m = bond(a, b);
                    if m > max_bond {
                        max_bond = m;
                    }
                    if m > 1 {
                        multi_edge = Some((a, b));
                    }
                }
            }
        }
        if max_bond == 3 {
            return (Family::G, 2);
        }
        if let Some((a, b)) = multi_edge {
            if k == 4 && degree(a) == 2 && degree(b) == 2 {
                return (Family::F, 4);
            }
            // B_k and C_k share a Weyl group; the label records which end is short.
            let (end, inner) = if degree(a) == 1 { (a, b) } else { (b, a) };
            let short_end =
                self.simple_roots[end - 1].norm2() < self.simple_roots[inner - 1].norm2();
            return (if short_end { Family::B } else { Family::C }, k);
        }
        if let Some(&branch) = idx.iter().find(|&&a| degree(a) == 3) {
            let mut arms: Vec<usize> = idx
                .iter()
                .filter(|&&b| self.adjacent(branch, b))
                .map(|&b| {
                    let mut len = 1;
                    let (mut prev, mut cur) = (branch, b);
                    loop {
                        let next = idx
                            .iter()
                            .find(|&&c| c != prev && c != cur && self.adjacent(cur, c));
                        match next {
                            Some(&c) => {
                                prev = cur;
                                cur = c;
                                len += 1;
                            }
                            None => break len,
                        }
                    }
                })
                .collect();
            arms.sort_unstable();
            return match (arms[0], arms[1]) {
                (1, 1) => (Family::D, k),
                _ => (Family::E, k),
            };
        }
        (Family::A, k)
    }

    /// `|W_J|`, from the classification of the components of `J`.
    pub fn weyl_order(&self, j: Subset) -> BigInt {
        self.components(j)
            .into_iter()
            .map(|c| {
                let (f, k) = self.component_type(c);
                irreducible_weyl_order(f, k)
            })
            .product()
    }

    /// Repeatedly applies `s_i` for the smallest `i` with `(v, α_i) < 0`.
    /// Returns the dominant representative and the reflections applied, in
    /// order of application.
    pub fn dominant_representative(&self, v: &QVector) -> (QVector, Vec<usize>) {
        let mut v = v.clone();
        let mut word = Vec::new();
        while let Some(i) = (1..=self.rank()).find(|&i| v.dot(self.simple_root(i)).is_negative()) {
            v = self.reflect_simple(i, &v);
            word.push(i);
        }
        (v, word)
    }

    /// True if `(v, α_i) ≥ 0` for every simple root.
    pub fn is_dominant(&self, v: &QVector) -> bool {
        self.simple_roots.iter().all(|a| !v.dot(a).is_negative())
    }

    /// Reduced words for the elements of the parabolic subgroup `W_J`,
    /// found by breadth-first search over the orbit of a regular point.
    /// Refuses when `|W_J|` exceeds `cap`.
    pub fn parabolic_elements(&self, j: Subset, cap: usize) -> Result<Vec<Vec<usize>>> {
        let order = self.weyl_order(j);
        if order > BigInt::from(cap) {
            return Err(Error::EnumerationRefused(
                [
                    "|W_J| = ",
                    &order.to_string(),
                    " exceeds the enumeration cap ",
                    &cap.to_string(),
                    " for ",
                    &self.id.to_string(),
                ]
                .concat(),
            ));
        }
        let n = self.rank();
        let gens = j.indices();
        // Coordinates (x, α_k) of the point ρ∨ = Σ ϖ_k∨.
        let start = vec![1i64; n];
        let mut seen = hashbrown::HashSet::new();
        seen.insert(start.clone());
        let mut queue = alloc::collections::VecDeque::new();
        queue.push_back((start, Vec::new()));
        let mut words = Vec::new();
        while let Some((c, w)) = queue.pop_front() {
            for &i in &gens {
                let ci = c[i - 1];
                let next: Vec<i64> = (0..n).map(|k| c[k] - ci * self.cartan[i - 1][k]).collect();
                if seen.insert(next.clone()) {
                    let mut nw: Vec<usize> = w.clone();
                    nw.insert(0, i);
                    queue.push_back((next, nw));
                }
            }
            words.push(w);
        }
        if BigInt::from(words.len()) != order {
            return Err(Error::Internal("parabolic enumeration disagrees with classification".to_string()));
        }
        Ok(words)
    }

    /// All elements of `W_f` as reduced words.
    pub fn finite_weyl_elements(&self, cap: usize) -> Result<Vec<Vec<usize>>> {
        self.parabolic_elements(Subset::full(self.rank()), cap)
    }

    /// Applies the word (rightmost letter first) to `v`.
    pub fn apply_word(&self, word: &[usize], v: &QVector) -> QVector {
        word.iter().rev().fold(v.clone(), |acc, &i| self.reflect_simple(i, &acc))
    }

    /// Number of positive roots, as an integer length.
    pub fn num_positive_roots(&self) -> usize {
        self.positive_roots.len()
    }

    /// `(ϖ_i∨, ϖ_j∨)` as a matrix.
    pub fn coweight_gram(&self) -> QMatrix {
        crate::exact::gram_matrix(&self.fundamental_coweights)
    }

    /// `(α̃∨, α_j)` for each `j`, as integers.
    pub(crate) fn highest_coroot_pairings(&self) -> Vec<i64> {
        self.simple_roots
            .iter()
            .map(|a| crate::exact::to_i64(&self.highest_coroot.dot(a)).expect("integral"))
            .collect()
    }
}
