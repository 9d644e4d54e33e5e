//! Finite root systems from Cartan data.
//!
//! Conventions, fixed once here and relied on everywhere else:
//! `cartan[i][j]` is the pairing of the i-th simple coroot with the j-th
//! simple root, so the simple reflection acts on simple-root coordinates
//! by `s_i(alpha_j) = alpha_j - cartan[i][j] * alpha_i`, and the
//! fundamental-weight coordinates of a root `beta = sum_k c_k alpha_k`
//! are `(cartan * c)_i`. Positive roots are stored as coordinate vectors
//! in the simple-root basis, simple roots first (in order), then by
//! height and lexicographic order.

use crate::error::{Error, Result};
use std::collections::HashMap;
use std::fmt;

/// Hard cap on positive roots during closure; generous for every
/// supported rank, and the tripwire that rejects non-finite Cartan data.
const ROOT_BOUND: usize = 1000;

#[derive(Clone)]
pub struct RootSystem {
    label: String,
    rank: usize,
    cartan: Vec<Vec<i64>>,
    /// Minimal positive integers with `sym[i]*cartan[i][j] == sym[j]*cartan[j][i]`.
    sym: Vec<i64>,
    roots: Vec<Vec<i64>>,
    index: HashMap<Vec<i64>, usize>,
}

impl fmt::Debug for RootSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RootSystem({}, rank {}, {} positive roots)", self.label, self.rank, self.roots.len())
    }
}

impl RootSystem {
    /// Builds one of the supported families from a label such as `A3`,
    /// `B2`, `C3`, `D4`, `G2`, `F4`.
    pub fn from_label(label: &str) -> Result<RootSystem> {
        let cartan = builtin_cartan(label)?;
        Self::from_cartan(label, cartan)
    }

    /// Builds a root system from an explicit Cartan matrix. The label is
    /// carried along for reporting and cache keys.
    pub fn from_cartan(label: &str, cartan: Vec<Vec<i64>>) -> Result<RootSystem> {
        let rank = cartan.len();
        if rank == 0 {
            return Err(Error::NotFiniteType("empty Cartan matrix".into()));
        }
        for (i, row) in cartan.iter().enumerate() {
            if row.len() != rank {
                return Err(Error::NotFiniteType(format!("row {} has length {}, want {}", i, row.len(), rank)));
            }
            if row[i] != 2 {
                return Err(Error::NotFiniteType(format!("diagonal entry [{i}][{i}] = {}", row[i])));
            }
            for j in 0..rank {
                if i != j {
                    if row[j] > 0 {
                        return Err(Error::NotFiniteType(format!("positive off-diagonal entry [{i}][{j}]")));
                    }
                    if (row[j] == 0) != (cartan[j][i] == 0) {
                        return Err(Error::NotFiniteType(format!("asymmetric zero at [{i}][{j}]")));
                    }
                }
            }
        }
        let sym = symmetrizer(&cartan)?;
        let roots = close_positive_roots(&cartan)?;
        let index = roots.iter().enumerate().map(|(k, r)| (r.clone(), k)).collect();
        Ok(RootSystem { label: label.to_string(), rank, cartan, sym, roots, index })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn num_positive(&self) -> usize {
        self.roots.len()
    }

    /// Coordinates of the k-th positive root in the simple-root basis.
    pub fn root(&self, k: usize) -> &[i64] {
        &self.roots[k]
    }

    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.roots
    }

    pub fn root_position(&self, coords: &[i64]) -> Option<usize> {
        self.index.get(coords).copied()
    }

    /// Pairing of the i-th simple coroot with a vector in simple-root
    /// coordinates.
    pub fn coroot_pairing(&self, i: usize, coords: &[i64]) -> i64 {
        (0..self.rank).map(|j| self.cartan[i][j] * coords[j]).sum()
    }

    /// Fundamental-weight coordinates of a vector given in simple-root
    /// coordinates.
    pub fn weight_coords(&self, coords: &[i64]) -> Vec<i64> {
        (0..self.rank).map(|i| self.coroot_pairing(i, coords)).collect()
    }

    /// Symmetrized invariant form on simple-root coordinates.
    fn bilinear(&self, a: &[i64], b: &[i64]) -> i128 {
        let mut acc: i128 = 0;
        for i in 0..self.rank {
            if a[i] == 0 {
                continue;
            }
            for j in 0..self.rank {
                acc += i128::from(a[i]) * i128::from(self.sym[i]) * i128::from(self.cartan[i][j]) * i128::from(b[j]);
            }
        }
        acc
    }

    /// Pairing of the k-th positive coroot with a vector: `2(beta,v)/(beta,beta)`.
    /// Always an integer when `v` is in the root lattice.
    pub fn reflection_pairing(&self, k: usize, coords: &[i64]) -> Result<i64> {
        let beta = &self.roots[k];
        let num = 2 * self.bilinear(beta, coords);
        let den = self.bilinear(beta, beta);
        if den == 0 || num % den != 0 {
            return Err(Error::Internal(format!("coroot pairing {num}/{den} not integral")));
        }
        i64::try_from(num / den).map_err(|_| Error::Internal("coroot pairing overflow".into()))
    }

    /// Coordinates of the k-th positive coroot in the simple-coroot basis.
    pub fn coroot_coords(&self, k: usize) -> Result<Vec<i64>> {
        let beta = &self.roots[k];
        let den = self.bilinear(beta, beta);
        (0..self.rank)
            .map(|j| {
                let num = 2 * i128::from(beta[j]) * i128::from(self.sym[j]);
                if den == 0 || num % den != 0 {
                    return Err(Error::Internal(format!("coroot coordinate {num}/{den} not integral")));
                }
                i64::try_from(num / den).map_err(|_| Error::Internal("coroot coordinate overflow".into()))
            })
            .collect()
    }

    /// Image of positive-root coordinates under the i-th simple reflection.
    pub fn simple_reflect(&self, i: usize, coords: &[i64]) -> Vec<i64> {
        let mut out = coords.to_vec();
        out[i] -= self.coroot_pairing(i, coords);
        out
    }

    /// The i-th simple reflection as a signed permutation of positive
    /// roots: entry `k` is `±(j+1)` when `s_i(beta_k) = ±beta_j`.
    pub fn simple_perm(&self, i: usize) -> Vec<i32> {
        self.signed_perm(|c| self.simple_reflect(i, c))
            .expect("simple reflection permutes roots")
    }

    /// The reflection in the k-th positive root as a signed permutation
    /// of positive roots.
    pub fn reflection_perm(&self, k: usize) -> Result<Vec<i32>> {
        let beta = self.roots[k].clone();
        let mut out = Vec::with_capacity(self.roots.len());
        for g in &self.roots {
            let p = self.reflection_pairing(k, g)?;
            let img: Vec<i64> = (0..self.rank).map(|j| g[j] - p * beta[j]).collect();
            out.push(self.signed_lookup(&img)?);
        }
        Ok(out)
    }

    fn signed_perm(&self, f: impl Fn(&[i64]) -> Vec<i64>) -> Result<Vec<i32>> {
        self.roots.iter().map(|r| self.signed_lookup(&f(r))).collect()
    }

    fn signed_lookup(&self, coords: &[i64]) -> Result<i32> {
        if coords.iter().all(|&c| c >= 0) {
            if let Some(j) = self.root_position(coords) {
                return Ok((j + 1) as i32);
            }
        } else {
            let neg: Vec<i64> = coords.iter().map(|&c| -c).collect();
            if let Some(j) = self.root_position(&neg) {
                return Ok(-((j + 1) as i32));
            }
        }
        Err(Error::Internal(format!("{coords:?} is not a root")))
    }
}

/// Smallest positive integer solution of `d_i a_ij = d_j a_ji`, found by
/// propagating ratios across the Dynkin graph.
fn symmetrizer(cartan: &[Vec<i64>]) -> Result<Vec<i64>> {
    use num::{BigRational, Zero};
    let n = cartan.len();
    let mut d: Vec<Option<BigRational>> = vec![None; n];
    for start in 0..n {
        if d[start].is_some() {
            continue;
        }
        d[start] = Some(BigRational::from_integer(1.into()));
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            let di = d[i].clone().unwrap();
            for j in 0..n {
                if i == j || cartan[i][j] == 0 {
                    continue;
                }
                // d_j = d_i * a_ij / a_ji
                let ratio = BigRational::new(cartan[i][j].into(), cartan[j][i].into());
                let dj = &di * ratio;
                match &d[j] {
                    None => {
                        d[j] = Some(dj);
                        stack.push(j);
                    }
                    Some(old) if *old != dj => {
                        return Err(Error::NotFiniteType("Cartan matrix is not symmetrizable".into()));
                    }
                    _ => {}
                }
            }
        }
    }
    let d: Vec<BigRational> = d.into_iter().map(|x| x.unwrap()).collect();
    if d.iter().any(|x| x.is_zero() || x.numer().sign() == num::bigint::Sign::Minus) {
        return Err(Error::NotFiniteType("symmetrizer is not positive".into()));
    }
    let lcm = d.iter().fold(num::BigInt::from(1), |acc, x| num::integer::lcm(acc, x.denom().clone()));
    let scaled: Vec<num::BigInt> = d.iter().map(|x| x.numer() * &lcm / x.denom()).collect();
    let gcd = scaled.iter().fold(num::BigInt::zero(), |acc, x| num::integer::gcd(acc, x.clone()));
    scaled
        .iter()
        .map(|x| i64::try_from(x / &gcd).map_err(|_| Error::NotFiniteType("symmetrizer overflow".into())))
        .collect()
}

/// Closure of the simple roots under simple reflections, keeping the
/// positive images. Reaches every positive root of a finite system; the
/// count cap rejects everything else.
fn close_positive_roots(cartan: &[Vec<i64>]) -> Result<Vec<Vec<i64>>> {
    let n = cartan.len();
    let pairing = |i: usize, c: &[i64]| -> i64 { (0..n).map(|j| cartan[i][j] * c[j]).sum() };
    let mut seen: HashMap<Vec<i64>, ()> = HashMap::new();
    let mut queue: Vec<Vec<i64>> = Vec::new();
    for i in 0..n {
        let mut e = vec![0i64; n];
        e[i] = 1;
        seen.insert(e.clone(), ());
        queue.push(e);
    }
    let mut head = 0;
    while head < queue.len() {
        let c = queue[head].clone();
        head += 1;
        for i in 0..n {
            let mut img = c.clone();
            img[i] -= pairing(i, &c);
            if img.iter().all(|&x| x >= 0) && !seen.contains_key(&img) {
                seen.insert(img.clone(), ());
                queue.push(img.clone());
                if queue.len() > ROOT_BOUND {
                    return Err(Error::NotFiniteType(format!("more than {ROOT_BOUND} positive roots")));
                }
            }
        }
    }
    // Height ascending, descending lex within a height: puts the simple
    // roots first in index order.
    let height = |c: &[i64]| -> i64 { c.iter().sum() };
    queue.sort_by(|a, b| height(a).cmp(&height(b)).then(b.cmp(a)));
    for (i, r) in queue.iter().take(n).enumerate() {
        assert!(r[i] == 1 && height(r) == 1, "simple roots must lead the root list");
    }
    Ok(queue)
}

fn builtin_cartan(label: &str) -> Result<Vec<Vec<i64>>> {
    let err = || Error::UnknownType(label.to_string());
    let mut chars = label.chars();
    let family = chars.next().ok_or_else(err)?;
    let n: usize = chars.as_str().parse().map_err(|_| err())?;
    let chain = |n: usize| -> Vec<Vec<i64>> {
        let mut a = vec![vec![0i64; n]; n];
        for i in 0..n {
            a[i][i] = 2;
            if i + 1 < n {
                a[i][i + 1] = -1;
                a[i + 1][i] = -1;
            }
        }
        a
    };
    match (family, n) {
        ('A', n) if n >= 1 => Ok(chain(n)),
        ('B', n) if n >= 2 => {
            let mut a = chain(n);
            a[n - 1][n - 2] = -2;
            Ok(a)
        }
        ('C', n) if n >= 2 => {
            let mut a = chain(n);
            a[n - 2][n - 1] = -2;
            Ok(a)
        }
        ('D', n) if n >= 3 => {
            let mut a = chain(n - 1);
            for row in &mut a {
                row.push(0);
            }
            a.push(vec![0; n]);
            a[n - 1][n - 1] = 2;
            a[n - 3][n - 1] = -1;
            a[n - 1][n - 3] = -1;
            Ok(a)
        }
        ('G', 2) => Ok(vec![vec![2, -3], vec![-1, 2]]),
        ('F', 4) => Ok(vec![
            vec![2, -1, 0, 0],
            vec![-1, 2, -1, 0],
            vec![0, -2, 2, -1],
            vec![0, 0, -1, 2],
        ]),
        _ => Err(err()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a2_positive_roots() {
        let rs = RootSystem::from_label("A2").unwrap();
        assert_eq!(rs.positive_roots(), &[vec![1, 0], vec![0, 1], vec![1, 1]]);
    }

    #[test]
    fn b2_positive_roots() {
        let rs = RootSystem::from_label("B2").unwrap();
        assert_eq!(rs.cartan(), &[vec![2, -1], vec![-2, 2]]);
        assert_eq!(rs.positive_roots(), &[vec![1, 0], vec![0, 1], vec![1, 1], vec![1, 2]]);
    }

    #[test]
    fn root_counts_by_family() {
        for (label, count) in [("A1", 1), ("A3", 6), ("A6", 21), ("C3", 9), ("B4", 16), ("D4", 12), ("G2", 6), ("F4", 24)] {
            let rs = RootSystem::from_label(label).unwrap();
            assert_eq!(rs.num_positive(), count, "{label}");
        }
    }

    #[test]
    fn simple_roots_come_first() {
        let rs = RootSystem::from_label("F4").unwrap();
        for i in 0..4 {
            let mut e = vec![0i64; 4];
            e[i] = 1;
            assert_eq!(rs.root(i), &e[..]);
        }
    }

    #[test]
    fn simple_reflection_in_a2() {
        let rs = RootSystem::from_label("A2").unwrap();
        // s_1(alpha_2) = alpha_1 + alpha_2
        assert_eq!(rs.simple_reflect(0, &[0, 1]), vec![1, 1]);
        assert_eq!(rs.simple_reflect(0, &[1, 0]), vec![-1, 0]);
    }

    #[test]
    fn simple_perm_fixes_other_positives() {
        // s_i negates alpha_i and permutes the remaining positive roots.
        for label in ["A3", "B3", "G2", "F4"] {
            let rs = RootSystem::from_label(label).unwrap();
            for i in 0..rs.rank() {
                let p = rs.simple_perm(i);
                let negs: Vec<usize> = (0..p.len()).filter(|&k| p[k] < 0).collect();
                assert_eq!(negs, vec![i], "{label} s_{}", i + 1);
            }
        }
    }

    #[test]
    fn reflection_perm_is_an_involution() {
        let rs = RootSystem::from_label("B2").unwrap();
        for k in 0..rs.num_positive() {
            let p = rs.reflection_perm(k).unwrap();
            assert_eq!(p[k], -((k + 1) as i32));
            for a in 0..p.len() {
                let t = p[a];
                let b = (t.unsigned_abs() as usize) - 1;
                let back = p[b] * t.signum();
                assert_eq!(back, (a + 1) as i32);
            }
        }
    }

    #[test]
    fn coroot_coords_in_b2() {
        let rs = RootSystem::from_label("B2").unwrap();
        // (alpha_1 + 2 alpha_2)^vee = alpha_1^vee + alpha_2^vee
        let k = rs.root_position(&[1, 2]).unwrap();
        assert_eq!(rs.coroot_coords(k).unwrap(), vec![1, 1]);
        // alpha_1 + alpha_2 is short, so its coroot is 2 alpha_1^vee + alpha_2^vee
        let k = rs.root_position(&[1, 1]).unwrap();
        assert_eq!(rs.coroot_coords(k).unwrap(), vec![2, 1]);
    }

    #[test]
    fn weight_coords_match_cartan_columns() {
        let rs = RootSystem::from_label("G2").unwrap();
        assert_eq!(rs.weight_coords(&[1, 0]), vec![2, -1]);
        assert_eq!(rs.weight_coords(&[0, 1]), vec![-3, 2]);
    }

    #[test]
    fn rejects_unknown_labels() {
        for label in ["E6", "H3", "A0", "B1", "XY", "", "A", "G3", "F5"] {
            assert!(matches!(RootSystem::from_label(label), Err(Error::UnknownType(_))), "{label}");
        }
    }

    #[test]
    fn rejects_non_finite_cartan() {
        // Affine A1: symmetrizable, but the closure never terminates.
        let aff = vec![vec![2, -2], vec![-2, 2]];
        assert!(matches!(RootSystem::from_cartan("affine", aff), Err(Error::NotFiniteType(_))));
        let bad_diag = vec![vec![1]];
        assert!(matches!(RootSystem::from_cartan("bad", bad_diag), Err(Error::NotFiniteType(_))));
        let asym_zero = vec![vec![2, 0], vec![-1, 2]];
        assert!(matches!(RootSystem::from_cartan("bad", asym_zero), Err(Error::NotFiniteType(_))));
        let positive_off = vec![vec![2, 1], vec![1, 2]];
        assert!(matches!(RootSystem::from_cartan("bad", positive_off), Err(Error::NotFiniteType(_))));
    }

    #[test]
    fn custom_cartan_matches_builtin() {
        let rs = RootSystem::from_cartan("custom", vec![vec![2, -1], vec![-1, 2]]).unwrap();
        assert_eq!(rs.num_positive(), 3);
        assert_eq!(rs.label(), "custom");
    }
}
