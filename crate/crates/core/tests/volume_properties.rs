use std::collections::BTreeSet;

use bruhat_core::exact::{MPoly, QMatrix, QVector, Rational};
use bruhat_core::orbitpoly::parabolic_orbit;
use bruhat_core::rootsys::Subset;
use bruhat_core::volume::{gram_of, mixed_basis_nu, squarefree_coefficient, volume_polynomial, VolumeTable};
use bruhat_core::{Budget, DominantCoweight, Family, RootSystemData, RootSystemId};
use num_traits::{One, Signed, Zero};

type Pt = Vec<Rational>;

fn build(f: Family, n: usize) -> RootSystemData {
    RootSystemData::build(RootSystemId::new(f, n).unwrap()).unwrap()
}

fn upto_rank(max: usize) -> Vec<RootSystemData> {
    let mut v = Vec::new();
    for n in 1..=max {
        v.push(build(Family::A, n));
    }
    for n in 2..=max {
        v.push(build(Family::B, n));
        v.push(build(Family::C, n));
    }
    if max >= 4 {
        v.push(build(Family::D, 4));
        v.push(build(Family::F, 4));
    }
    v.push(build(Family::G, 2));
    v
}

fn q(x: i64) -> Rational {
    Rational::from_integer(x.into())
}

fn sub(a: &Pt, b: &Pt) -> Pt {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn dot(a: &Pt, b: &Pt) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn det(rows: Vec<Pt>) -> Rational {
    if rows.is_empty() {
        return Rational::one();
    }
    QMatrix::from_rows(rows).unwrap().det()
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Coordinates of the points in an affine basis of their affine hull.
fn affine_coords(pts: &[Pt]) -> Vec<Pt> {
    let p0 = &pts[0];
    let diffs: Vec<Pt> = pts.iter().map(|p| sub(p, p0)).collect();
    let mut basis: Vec<Pt> = Vec::new();
    for d in &diffs {
        let mut trial = basis.clone();
        trial.push(d.clone());
        if QMatrix::from_rows(trial.clone()).unwrap().rank() == trial.len() {
            basis = trial;
        }
    }
    let k = basis.len();
    if k == 0 {
        return vec![Vec::new(); pts.len()];
    }
    let gram: Vec<Pt> = basis.iter().map(|a| basis.iter().map(|b| dot(a, b)).collect()).collect();
    let g = QMatrix::from_rows(gram).unwrap();
    diffs
        .iter()
        .map(|d| {
            let rhs = QVector::new(basis.iter().map(|b| dot(b, d)).collect());
            bruhat_core::exact::solve_linear(&g, &rhs).unwrap().into_entries()
        })
        .collect()
}

/// Pulling triangulation of the convex hull of full-dimensional points.
fn triangulate(pts: &[Pt]) -> Vec<Vec<usize>> {
    let k = pts[0].len();
    if k == 0 {
        return vec![vec![0]];
    }
    let mut facets: BTreeSet<Vec<usize>> = BTreeSet::new();
    for s in combinations(pts.len(), k) {
        let vs: Vec<Pt> = s[1..].iter().map(|&i| sub(&pts[i], &pts[s[0]])).collect();
        let normal: Pt = (0..k)
            .map(|col| {
                let minor: Vec<Pt> = vs
                    .iter()
                    .map(|v| v.iter().enumerate().filter(|(c, _)| *c != col).map(|(_, x)| x.clone()).collect())
                    .collect();
                let d = det(minor);
                if col % 2 == 0 {
                    d
                } else {
                    -d
                }
            })
            .collect();
        if normal.iter().all(|x| x.is_zero()) {
            continue;
        }
        let b = dot(&normal, &pts[s[0]]);
        let side: Vec<Rational> = pts.iter().map(|p| dot(&normal, p) - &b).collect();
        let pos = side.iter().any(|x| x.is_positive());
        let neg = side.iter().any(|x| x.is_negative());
        if pos && neg {
            continue;
        }
        facets.insert((0..pts.len()).filter(|&i| side[i].is_zero()).collect());
    }
    let mut out = Vec::new();
    for f in facets {
        if f.contains(&0) {
            continue;
        }
        let fp: Vec<Pt> = f.iter().map(|&i| pts[i].clone()).collect();
        for simplex in triangulate(&affine_coords(&fp)) {
            let mut s = vec![0];
            s.extend(simplex.iter().map(|&i| f[i]));
            out.push(s);
        }
    }
    out
}

/// Lebesgue volume of the hull, in the coordinates given.
fn hull_volume(pts: &[Pt]) -> Rational {
    let k = pts[0].len();
    let mut fact = Rational::one();
    for i in 1..=k {
        fact *= q(i as i64);
    }
    triangulate(pts)
        .into_iter()
        .map(|s| det(s[1..].iter().map(|&i| sub(&pts[i], &pts[s[0]])).collect()).abs())
        .sum::<Rational>()
        / fact
}

/// Relative volume of `Conv(W_J·λ)` with respect to the coroot lattice of `L_J`.
fn oracle_relative_volume(data: &RootSystemData, lambda: &[i64], j: Subset) -> Rational {
    let lv = DominantCoweight::new(lambda.to_vec()).unwrap().to_vector(data);
    let orbit = parabolic_orbit(data, &lv, j);
    let idx = j.indices();
    let pts: Vec<Pt> = orbit
        .iter()
        .map(|p| {
            let c = data.coroot_coords(&(p - &lv));
            idx.iter().map(|&i| c[i - 1].clone()).collect()
        })
        .collect();
    let dim = QMatrix::from_rows(pts.iter().map(|p| sub(p, &pts[0])).collect::<Vec<_>>())
        .map(|m| m.rank())
        .unwrap_or(0);
    if dim < idx.len() {
        return Rational::zero();
    }
    hull_volume(&pts)
}

#[test]
fn recursion_matches_convex_hull_volumes() {
    let lambdas: &[&[i64]] = &[&[1, 1, 1], &[2, 1, 0], &[0, 1, 2], &[1, 0, 3], &[0, 0, 1]];
    for data in upto_rank(3) {
        let n = data.rank();
        let table = VolumeTable::build(&data, &Budget::default()).unwrap();
        for l in lambdas {
            let l = &l[..n];
            for j in Subset::all(n) {
                let got = table.get(j).relative(l);
                let want = oracle_relative_volume(&data, l, j);
                assert_eq!(got, want, "{} J={:?} lambda={:?}", data.id(), j, l);
            }
        }
    }
}

#[test]
fn homogeneous_local_and_factorizing() {
    for data in upto_rank(4) {
        let n = data.rank();
        let table = VolumeTable::build(&data, &Budget::default()).unwrap();
        for j in Subset::all(n) {
            let v = table.get(j);
            assert!(v.rel_poly.is_homogeneous(), "{} {:?}", data.id(), j);
            assert_eq!(v.rel_poly.degree(), Some(j.len() as u32));
            for i in 1..=n {
                if !j.contains(i) {
                    assert!(v.rel_poly.is_free_of(i - 1), "{} {:?} depends on m{}", data.id(), j, i);
                }
            }
            let comps = data.components(j);
            if comps.len() > 1 {
                let mut prod = MPoly::one(n);
                let mut gram = Rational::one();
                for c in &comps {
                    prod = &prod * &table.get(*c).rel_poly;
                    gram *= &table.get(*c).gram;
                }
                assert_eq!(v.rel_poly, prod, "{} {:?}", data.id(), j);
                assert_eq!(v.gram, gram);
            }
            assert_eq!(v.gram, gram_of(&data, j));
            assert!(squarefree_coefficient(&data, j).unwrap().is_positive());
        }
    }
}

#[test]
fn volume_polynomials_are_independent() {
    for data in upto_rank(4) {
        let n = data.rank();
        let table = VolumeTable::build(&data, &Budget::default()).unwrap();
        let subsets: Vec<Subset> = Subset::all(n).collect();
        let rows: Vec<Pt> = subsets
            .iter()
            .map(|k| {
                let m: Vec<i64> = (1..=n).map(|i| if k.contains(i) { 2 } else { 1 }).collect();
                subsets.iter().map(|j| table.get(*j).relative(&m)).collect()
            })
            .collect();
        assert!(!QMatrix::from_rows(rows).unwrap().det().is_zero(), "{}", data.id());
    }
}

#[test]
fn mixed_basis_pairs_positively_with_coweights() {
    for data in upto_rank(4) {
        for j in Subset::all(data.rank()) {
            for (jj, nu, n2) in mixed_basis_nu(&data, j) {
                assert!(data.fundamental_coweight(jj).dot(&nu).is_positive());
                assert!(n2.is_positive());
                for i in j.indices() {
                    let want = if i == jj { Rational::one() } else { Rational::zero() };
                    assert_eq!(nu.dot(data.simple_coroot(i)), want);
                }
            }
        }
    }
}

fn eulerian_by_descents(l: usize, s: usize) -> i64 {
    fn perms(v: Vec<usize>) -> Vec<Vec<usize>> {
        if v.len() <= 1 {
            return vec![v];
        }
        let mut out = Vec::new();
        for i in 0..v.len() {
            let mut rest = v.clone();
            let x = rest.remove(i);
            for mut p in perms(rest) {
                p.insert(0, x);
                out.push(p);
            }
        }
        out
    }
    perms((0..l).collect())
        .into_iter()
        .filter(|p| p.windows(2).filter(|w| w[0] > w[1]).count() == s - 1)
        .count() as i64
}

#[test]
fn type_a_pure_power_coefficients_are_eulerian() {
    for n in 1..=5 {
        let data = build(Family::A, n);
        for l in 1..=n {
            let mut lf = Rational::one();
            for k in 1..=l {
                lf *= q(k as i64);
            }
            for u in 0..=(n - l) {
                let idx: Vec<usize> = (u + 1..=u + l).collect();
                let j = Subset::from_indices(&idx, n).unwrap();
                let v = volume_polynomial(&data, j).unwrap();
                assert_eq!(v.gram, q(l as i64 + 1));
                for i in 1..=n {
                    let mut e = vec![0u32; n];
                    e[i - 1] = l as u32;
                    let want = if j.contains(i) {
                        q(eulerian_by_descents(l, i - u)) / &lf
                    } else {
                        Rational::zero()
                    };
                    assert_eq!(v.rel_poly.coefficient(&e), want, "A{n} J={j:?} i={i}");
                }
            }
        }
    }
}
