//! Finite and affine Weyl groups in the alcove model.
//!
//! Elements are exact affine maps `x ↦ L·x + t` of the ambient space. The
//! fundamental alcove is `A_id = {x : −1 < (x, α) < 0 for α ∈ Φ⁺}`; its walls
//! are `H_{α_i}` for `i = 1..n` and `H_{α̃,−1}` for `i = 0`. Lengths count the
//! hyperplanes `H_{α,k}` separating `w(x₀)` from the barycenter `x₀` of `A_id`.
//!
//! Words are lists of generator indices in `0..=n`; `[i₁, …, i_L]` denotes
//! the product `s_{i₁}·s_{i₂}⋯s_{i_L}`.

use alloc::collections::BTreeSet;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{Signed, ToPrimitive};

use crate::exact::{floor, int, is_integer, QMatrix, QVector, Rational};
use crate::orbitpoly::DominantCoweight;
use crate::rootsys::RootSystemData;
use crate::{Error, Result};

/// An element of the extended affine Weyl group, `x ↦ linear·x + translation`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineElement {
    linear: QMatrix,
    translation: QVector,
}

impl AffineElement {
    pub fn identity(dim: usize) -> Self {
        AffineElement {
            linear: QMatrix::identity(dim),
            translation: QVector::zeros(dim),
        }
    }

    pub fn new(linear: QMatrix, translation: QVector) -> Result<Self> {
        if !linear.is_square() || linear.rows() != translation.dim() {
            return Err(Error::DimensionMismatch {
                expected: linear.rows(),
                got: translation.dim(),
            });
        }
        Ok(AffineElement {
            linear,
            translation,
        })
    }

    pub fn translation_by(v: &QVector) -> Self {
        AffineElement {
            linear: QMatrix::identity(v.dim()),
            translation: v.clone(),
        }
    }

    pub fn linear(&self) -> &QMatrix {
        &self.linear
    }

    pub fn translation(&self) -> &QVector {
        &self.translation
    }

    pub fn apply(&self, x: &QVector) -> QVector {
        &self.linear.mul_vec(x) + &self.translation
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &AffineElement) -> AffineElement {
        AffineElement {
            linear: self.linear.mul(&other.linear),
            translation: self.apply(&other.translation),
        }
    }

    /// The linear parts are orthogonal, so the inverse uses the transpose.
    pub fn inverse(&self) -> AffineElement {
        let lt = self.linear.transpose();
        let t = -&lt.mul_vec(&self.translation);
        AffineElement {
            linear: lt,
            translation: t,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.translation.is_zero() && self.linear == QMatrix::identity(self.linear.rows())
    }

    /// Membership in `W_a`: the translation part lies in `ℤΦ∨`.
    pub fn in_affine_weyl(&self, data: &RootSystemData) -> bool {
        data.in_coroot_lattice(&self.translation)
    }
}

impl fmt::Debug for AffineElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x ↦ {:?}·x + {:?}", self.linear, self.translation)
    }
}

/// `s_i` for `1 ≤ i ≤ n`, or `s_0 = s_{α̃,−1}: x ↦ s_α̃(x) − α̃∨`.
pub fn simple_reflection(data: &RootSystemData, i: usize) -> Result<AffineElement> {
    let n = data.rank();
    if i > n {
        return Err(Error::InvalidIndex { index: i, rank: n });
    }
    let (alpha, alpha_vee) = if i == 0 {
        (data.highest_root(), data.highest_coroot())
    } else {
        (data.simple_root(i), data.simple_coroot(i))
    };
    let m = data.ambient_dim();
    let linear = QMatrix::identity(m).sub(&QMatrix::outer(alpha_vee, alpha));
    let translation = if i == 0 {
        -alpha_vee
    } else {
        QVector::zeros(m)
    };
    Ok(AffineElement {
        linear,
        translation,
    })
}

/// The product `s_{word[0]}·s_{word[1]}⋯`.
pub fn word_element(data: &RootSystemData, word: &[usize]) -> Result<AffineElement> {
    let gens = generators(data);
    let mut w = AffineElement::identity(data.ambient_dim());
    for &i in word {
        let s = gens.get(i).ok_or(Error::InvalidIndex {
            index: i,
            rank: data.rank(),
        })?;
        w = w.compose(s);
    }
    Ok(w)
}

fn generators(data: &RootSystemData) -> Vec<AffineElement> {
    (0..=data.rank())
        .map(|i| simple_reflection(data, i).expect("index in range"))
        .collect()
}

/// Barycenter of `A_id`: the mean of its vertices `0` and `−ϖ_i∨/η_i`.
pub fn barycenter(data: &RootSystemData) -> QVector {
    let n = data.rank();
    let mut x = QVector::zeros(data.ambient_dim());
    for i in 1..=n {
        let c = Rational::new(BigInt::from(-1), BigInt::from(data.marks()[i - 1] * (n as i64 + 1)));
        x = x.add_scaled(&c, data.fundamental_coweight(i));
    }
    x
}

/// Number of integers strictly between two non-integral rationals.
fn integers_between(a: &Rational, b: &Rational) -> BigInt {
    (floor(b) - floor(a)).abs()
}

/// Length of `w ∈ W_e`: the number of hyperplanes `H_{α,k}` separating
/// `A_w` from `A_id`.
pub fn length(data: &RootSystemData, w: &AffineElement) -> usize {
    let x0 = barycenter(data);
    let y = w.apply(&x0);
    data.positive_roots()
        .iter()
        .map(|alpha| integers_between(&x0.dot(alpha), &y.dot(alpha)))
        .sum::<BigInt>()
        .to_usize()
        .expect("length fits in usize")
}

/// True if `p` lies on some reflection hyperplane `H_{α,k}`.
pub fn on_hyperplane(data: &RootSystemData, p: &QVector) -> bool {
    data.positive_roots().iter().any(|a| is_integer(&p.dot(a)))
}

/// Which wall of `A_id` the point violates, given a priority order of the
/// generator indices `0..=n`.
fn violated_wall(data: &RootSystemData, p: &QVector, order: &[usize]) -> Option<usize> {
    order.iter().copied().find(|&i| {
        if i == 0 {
            p.dot(data.highest_root()) < int(-1)
        } else {
            p.dot(data.simple_root(i)).is_positive()
        }
    })
}

/// The unique `w ∈ W_a` with `p ∈ A_w`, with a reduced word obtained by
/// folding `p` into `A_id` through walls of `A_id`, smallest index first.
pub fn element_from_point(data: &RootSystemData, p: &QVector) -> Result<(AffineElement, Vec<usize>)> {
    let order: Vec<usize> = (0..=data.rank()).collect();
    element_from_point_with_order(data, p, &order)
}

/// As [`element_from_point`], but walls are tried in the given priority
/// order. Different orders generally give different reduced words.
pub fn element_from_point_with_order(
    data: &RootSystemData,
    p: &QVector,
    order: &[usize],
) -> Result<(AffineElement, Vec<usize>)> {
    if on_hyperplane(data, p) {
        return Err(Error::PointOnHyperplane);
    }
    let gens = generators(data);
    let mut q = p.clone();
    let mut word = Vec::new();
    while let Some(i) = violated_wall(data, &q, order) {
        q = gens[i].apply(&q);
        word.push(i);
    }
    let w = word_element(data, &word)?;
    let len = length(data, &w);
    if len != word.len() {
        return Err(Error::Internal("alcove folding produced a non-reduced word".to_string()));
    }
    Ok((w, word))
}

/// Another reduced word for `w`, from folding with the given wall priority.
pub fn reduced_word_with_order(
    data: &RootSystemData,
    w: &AffineElement,
    order: &[usize],
) -> Result<Vec<usize>> {
    let p = w.apply(&barycenter(data));
    let (u, word) = element_from_point_with_order(data, &p, order)?;
    if &u != w {
        return Err(Error::Internal("element is not in W_a".to_string()));
    }
    Ok(word)
}

/// `θ(λ)`: the element of `W_a` whose alcove is `A_{w₀} + λ`, with a reduced word.
pub fn theta(data: &RootSystemData, lambda: &DominantCoweight) -> Result<(AffineElement, Vec<usize>)> {
    if lambda.rank() != data.rank() {
        return Err(Error::DimensionMismatch {
            expected: data.rank(),
            got: lambda.rank(),
        });
    }
    // w₀·x₀ is the dominant representative of x₀.
    let (w0x0, _) = data.dominant_representative(&barycenter(data));
    let p = &data.coweight(lambda.coords()) + &w0x0;
    element_from_point(data, &p)
}

/// `θ(λ)` for `λ` given as a vector; errors unless `λ` is a dominant coweight.
pub fn theta_of_vector(data: &RootSystemData, lambda: &QVector) -> Result<(AffineElement, Vec<usize>)> {
    let coords = data.coweight_coords(lambda);
    let ints: Vec<i64> = coords
        .iter()
        .map(crate::exact::to_i64)
        .collect::<Option<_>>()
        .ok_or(Error::NotCoweight)?;
    theta(data, &DominantCoweight::new(ints)?)
}

fn check_reduced(data: &RootSystemData, w: &AffineElement, word: &[usize]) -> Result<()> {
    if &word_element(data, word)? != w {
        return Err(Error::WordMismatch);
    }
    let len = length(data, w);
    if len != word.len() {
        return Err(Error::NotReduced {
            word_len: word.len(),
            length: len,
        });
    }
    Ok(())
}

/// The Bruhat interval `{u : u ≤ w}` by subword closure along a reduced word:
/// `S₀ = {id}`, `S_k = S_{k−1} ∪ S_{k−1}·s_{i_k}`. Returned sorted.
pub fn lower_interval(
    data: &RootSystemData,
    w: &AffineElement,
    word: &[usize],
    cap: usize,
) -> Result<Vec<AffineElement>> {
    check_reduced(data, w, word)?;
    let gens = generators(data);
    let mut set: BTreeSet<AffineElement> = BTreeSet::new();
    set.insert(AffineElement::identity(data.ambient_dim()));
    for &i in word {
        let new: Vec<AffineElement> = set.iter().map(|u| u.compose(&gens[i])).collect();
        set.extend(new);
        if set.len() > cap {
            return Err(Error::BudgetExceeded {
                what: "Bruhat interval",
                limit: cap as u64,
            });
        }
    }
    Ok(set.into_iter().collect())
}

const MAX_RANK: usize = 8;
type Key = [i64; MAX_RANK];

/// Integer model of the action of `W_a` on points, in coordinates
/// `D·(x, α_k)` where `D` clears the denominators of the barycenter.
struct IntAction {
    n: usize,
    scale: i64,
    cartan: Vec<Vec<i64>>,
    marks: Vec<i64>,
    highest_coroot: Vec<i64>,
}

#[allow(clippy::needless_range_loop)]
impl IntAction {
    fn new(data: &RootSystemData) -> Self {
        let n = data.rank();
        let lcm = data.marks().iter().fold(1i64, |a, &b| a.lcm(&b));
        IntAction {
            n,
            scale: (n as i64 + 1) * lcm,
            cartan: data.cartan().to_vec(),
            marks: data.marks().to_vec(),
            highest_coroot: data.highest_coroot_pairings(),
        }
    }

    fn barycenter(&self) -> Key {
        let mut k = [0i64; MAX_RANK];
        for i in 0..self.n {
            k[i] = -self.scale / ((self.n as i64 + 1) * self.marks[i]);
        }
        k
    }

    fn reflect(&self, i: usize, c: &Key) -> Key {
        let mut out = *c;
        if i == 0 {
            let pair: i64 = (0..self.n).map(|j| self.marks[j] * c[j]).sum::<i64>() + self.scale;
            for k in 0..self.n {
                out[k] -= pair * self.highest_coroot[k];
            }
        } else {
            let ci = c[i - 1];
            for k in 0..self.n {
                out[k] -= ci * self.cartan[i - 1][k];
            }
        }
        out
    }
}

/// `|{u : u ≤ w}|` by the same subword closure as [`lower_interval`], run on
/// the inverses: `u⁻¹` is tracked through the point `u⁻¹(x₀)`, so that right
/// multiplication by `s` becomes the reflection `s` applied to a point.
pub fn interval_size(data: &RootSystemData, w: &AffineElement, word: &[usize], cap: usize) -> Result<u64> {
    check_reduced(data, w, word)?;
    interval_size_unchecked(data, word, cap)
}

pub(crate) fn interval_size_unchecked(data: &RootSystemData, word: &[usize], cap: usize) -> Result<u64> {
    if data.rank() > MAX_RANK {
        return Err(Error::OutOfRange("rank above 8".to_string()));
    }
    let act = IntAction::new(data);
    let mut seen: hashbrown::HashSet<Key> = hashbrown::HashSet::new();
    let start = act.barycenter();
    seen.insert(start);
    let mut points = vec![start];
    for &i in word {
        let current = points.len();
        for idx in 0..current {
            let r = act.reflect(i, &points[idx]);
            if seen.insert(r) {
                points.push(r);
            }
        }
        if points.len() > cap {
            return Err(Error::BudgetExceeded {
                what: "Bruhat interval",
                limit: cap as u64,
            });
        }
    }
    Ok(points.len() as u64)
}

/// Left and right descent sets of `w`, as subsets of `{0, …, n}`.
pub fn descents(data: &RootSystemData, w: &AffineElement) -> (Vec<usize>, Vec<usize>) {
    let l = length(data, w);
    let gens = generators(data);
    let left = (0..=data.rank())
        .filter(|&i| length(data, &gens[i].compose(w)) < l)
        .collect();
    let right = (0..=data.rank())
        .filter(|&i| length(data, &w.compose(&gens[i])) < l)
        .collect();
    (left, right)
}

/// The generator `s_σ` for the class of `λ` in `Λ∨/ℤΦ∨`: `0` if
/// `λ ∈ ℤΦ∨`, else the minuscule `i` with `λ + ϖ_i∨ ∈ ℤΦ∨`.
pub fn sigma_reflection(data: &RootSystemData, lambda: &QVector) -> Result<usize> {
    if !data.in_coweight_lattice(lambda) {
        return Err(Error::NotCoweight);
    }
    if data.in_coroot_lattice(lambda) {
        return Ok(0);
    }
    data.minuscule()
        .iter()
        .copied()
        .find(|&i| data.in_coroot_lattice(&(lambda + data.fundamental_coweight(i))))
        .ok_or_else(|| Error::Internal("no minuscule representative".to_string()))
}

/// The longest element `w₀ = θ(0)` of `W_f`, with a reduced word.
pub fn longest_finite(data: &RootSystemData) -> (AffineElement, Vec<usize>) {
    theta(data, &DominantCoweight::zero(data.rank())).expect("θ(0) exists")
}

/// All elements of the group generated by the given generators, by closure.
/// Only meant for finite (parabolic) subgroups.
pub fn generated_subgroup(
    data: &RootSystemData,
    gens_idx: &[usize],
    cap: usize,
) -> Result<Vec<AffineElement>> {
    let gens = generators(data);
    let mut set: BTreeSet<AffineElement> = BTreeSet::new();
    let id = AffineElement::identity(data.ambient_dim());
    set.insert(id.clone());
    let mut frontier = vec![id];
    while let Some(u) = frontier.pop() {
        for &i in gens_idx {
            let v = u.compose(&gens[i]);
            if set.insert(v.clone()) {
                if set.len() > cap {
                    return Err(Error::BudgetExceeded {
                        what: "subgroup closure",
                        limit: cap as u64,
                    });
                }
                frontier.push(v);
            }
        }
    }
    Ok(set.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::rootsys::{Family, RootSystemId};

    fn build(f: Family, n: usize) -> RootSystemData {
        RootSystemData::build(RootSystemId::new(f, n).unwrap()).unwrap()
    }

    fn dc(c: &[i64]) -> DominantCoweight {
        DominantCoweight::new(c.to_vec()).unwrap()
    }

    #[test]
    fn reflections_are_involutions() {
        for d in [build(Family::A, 2), build(Family::G, 2), build(Family::B, 3)] {
            let id = AffineElement::identity(d.ambient_dim());
            for i in 0..=d.rank() {
                let s = simple_reflection(&d, i).unwrap();
                assert_eq!(s.compose(&s), id);
                assert_eq!(length(&d, &s), 1);
            }
            assert!(simple_reflection(&d, d.rank() + 1).is_err());
        }
    }

    #[test]
    fn affine_reflection_examples() {
        let a1 = build(Family::A, 1);
        let s0 = simple_reflection(&a1, 0).unwrap();
        let origin = QVector::zeros(2);
        assert_eq!(s0.apply(&origin), -a1.highest_coroot());
        let a2 = build(Family::A, 2);
        let s0 = simple_reflection(&a2, 0).unwrap();
        let mid = a2.highest_coroot().scale(&rat(-1, 2));
        assert_eq!(s0.apply(&mid), mid);
    }

    #[test]
    fn lengths_of_longest_elements() {
        for (d, expect) in [(build(Family::A, 2), 3), (build(Family::G, 2), 6), (build(Family::B, 3), 9)] {
            let (w0, word) = longest_finite(&d);
            assert_eq!(length(&d, &w0), expect);
            assert_eq!(word.len(), expect);
            assert!(w0.translation().is_zero());
        }
        assert_eq!(length(&build(Family::A, 2), &AffineElement::identity(3)), 0);
    }

    #[test]
    fn element_from_point_examples() {
        let a2 = build(Family::A, 2);
        let x0 = barycenter(&a2);
        let (w, word) = element_from_point(&a2, &x0).unwrap();
        assert!(w.is_identity());
        assert!(word.is_empty());
        let p = a2.reflect_simple(1, &x0);
        let (w, word) = element_from_point(&a2, &p).unwrap();
        assert_eq!(word, vec![1]);
        assert_eq!(w, simple_reflection(&a2, 1).unwrap());
        assert_eq!(
            element_from_point(&a2, &QVector::zeros(3)),
            Err(Error::PointOnHyperplane)
        );
    }

    #[test]
    fn theta_examples_a2() {
        let a2 = build(Family::A, 2);
        let (t0, _) = theta(&a2, &dc(&[0, 0])).unwrap();
        assert_eq!(t0, longest_finite(&a2).0);
        let (t, word) = theta(&a2, &dc(&[1, 1])).unwrap();
        assert_eq!(word.len(), 7);
        assert_eq!(length(&a2, &t), 7);
        assert!(t.in_affine_weyl(&a2));
        let (t1, _) = theta(&a2, &dc(&[1, 0])).unwrap();
        assert!(t1.in_affine_weyl(&a2));
        // A_{θ(λ)} = A_{w₀} + λ
        let x0 = barycenter(&a2);
        let lam = a2.coweight(&[1, 0]);
        assert_eq!(t1.apply(&x0), &t0.apply(&x0) + &lam);
    }

    #[test]
    fn theta_rejects_non_coweights() {
        let a2 = build(Family::A, 2);
        let half = a2.coweight(&[1, 0]).scale(&rat(1, 2));
        assert_eq!(theta_of_vector(&a2, &half), Err(Error::NotCoweight));
        let neg = a2.coweight(&[1, -1]);
        assert!(matches!(theta_of_vector(&a2, &neg), Err(Error::NotDominant(_))));
    }

    #[test]
    fn a1_theta_lengths_and_intervals() {
        let a1 = build(Family::A, 1);
        for m in 0..=4i64 {
            let (t, word) = theta(&a1, &dc(&[m])).unwrap();
            assert_eq!(length(&a1, &t), (m + 1) as usize);
            let iv = lower_interval(&a1, &t, &word, 1000).unwrap();
            assert_eq!(iv.len() as i64, 2 * (m + 1));
            assert_eq!(interval_size(&a1, &t, &word, 1000).unwrap() as i64, 2 * (m + 1));
        }
    }

    #[test]
    fn a2_interval_of_theta_rho() {
        let a2 = build(Family::A, 2);
        let (t, word) = theta(&a2, &dc(&[1, 1])).unwrap();
        let iv = lower_interval(&a2, &t, &word, 1000).unwrap();
        assert_eq!(iv.len(), 42);
        assert_eq!(interval_size(&a2, &t, &word, 1000).unwrap(), 42);
        assert_eq!(
            lower_interval(&a2, &AffineElement::identity(3), &[], 10).unwrap().len(),
            1
        );
    }

    #[test]
    fn interval_rejects_bad_words() {
        let a2 = build(Family::A, 2);
        let s1 = simple_reflection(&a2, 1).unwrap();
        let w = word_element(&a2, &[1, 1, 1]).unwrap();
        assert_eq!(w, s1);
        assert_eq!(
            lower_interval(&a2, &w, &[1, 1, 1], 100),
            Err(Error::NotReduced { word_len: 3, length: 1 })
        );
        assert_eq!(lower_interval(&a2, &s1, &[2], 100), Err(Error::WordMismatch));
        let (t, word) = theta(&a2, &dc(&[1, 1])).unwrap();
        assert!(matches!(
            interval_size(&a2, &t, &word, 10),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn descents_examples() {
        let a2 = build(Family::A, 2);
        let (l, r) = descents(&a2, &AffineElement::identity(3));
        assert!(l.is_empty() && r.is_empty());
        let (w0, _) = longest_finite(&a2);
        let (l, r) = descents(&a2, &w0);
        assert_eq!(l, vec![1, 2]);
        assert_eq!(r, vec![1, 2]);
        let (t, _) = theta(&a2, &dc(&[1, 1])).unwrap();
        let (l, r) = descents(&a2, &t);
        assert!(l.contains(&1) && l.contains(&2));
        // σ = 0 for ρ ∈ ℤΦ∨, so s_1 and s_2 are right descents.
        assert!(r.contains(&1) && r.contains(&2));
    }

    #[test]
    fn sigma_examples() {
        let a2 = build(Family::A, 2);
        assert_eq!(sigma_reflection(&a2, &a2.coweight(&[1, 1])).unwrap(), 0);
        assert_eq!(sigma_reflection(&a2, &a2.coweight(&[1, 0])).unwrap(), 2);
        let a1 = build(Family::A, 1);
        assert_eq!(sigma_reflection(&a1, &a1.coweight(&[1])).unwrap(), 1);
        let half = a1.coweight(&[1]).scale(&rat(1, 2));
        assert_eq!(sigma_reflection(&a1, &half), Err(Error::NotCoweight));
    }

    #[test]
    fn inverse_and_extended_membership() {
        let a2 = build(Family::A, 2);
        let (t, _) = theta(&a2, &dc(&[2, 1])).unwrap();
        assert!(t.compose(&t.inverse()).is_identity());
        assert_eq!(length(&a2, &t), length(&a2, &t.inverse()));
        let tau = AffineElement::translation_by(&a2.coweight(&[1, 0]));
        assert!(!tau.in_affine_weyl(&a2));
        let tau2 = AffineElement::translation_by(&a2.coweight(&[1, 1]));
        assert!(tau2.in_affine_weyl(&a2));
        // Extended elements have a length too: t_{ϖ₁∨} has length (ϖ₁∨, 2ρ) = 2.
        assert_eq!(length(&a2, &tau), 2);
    }
}
