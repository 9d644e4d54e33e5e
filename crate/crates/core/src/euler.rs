//! Euler characteristics of intersections of generically translated
//! Schubert cells, computed as integrals of Segre-MacPherson classes.
//!
//! The characteristic of an n-fold intersection is the integral of
//! `c(TX)` cupped with one SSM class per cell. Expected dimension
//! bookkeeping follows transversality: the quotient dimension minus the
//! sum of cell codimensions. The sweep verifiers grade every tuple:
//! `ok` when the signed characteristic `(-1)^d chi` is nonnegative,
//! `empty` when a negative expected dimension comes with a vanishing
//! characteristic, `violation` otherwise.

use crate::classes::{CohClass, Space};
use crate::error::{Error, Result};
use crate::ratio::{rat_to_i64, Rat};
use num::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

/// Seed for sampled n-fold sweeps; fixed so reruns examine identical
/// tuples.
const NFOLD_SEED: u64 = 0;

#[derive(Clone, Debug, Serialize)]
pub struct TripleRow {
    pub lambda: String,
    pub mu: String,
    pub nuprime: String,
    pub a: i64,
    pub d: i64,
    #[serde(rename = "E")]
    pub e: i64,
    pub status: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct TripleReport {
    pub space: String,
    pub parabolic: Vec<usize>,
    pub dim: usize,
    pub cells: usize,
    pub total: usize,
    pub ok: usize,
    pub empty: usize,
    pub violations: usize,
    pub rows: Vec<TripleRow>,
}

#[derive(Clone, Debug, Serialize)]
pub struct OrthoReport {
    pub space: String,
    pub parabolic: Vec<usize>,
    pub matrix: Vec<Vec<i64>>,
    pub identity: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct NfoldRow {
    pub cells: Vec<String>,
    pub chi: i64,
    pub d: i64,
    #[serde(rename = "E")]
    pub e: i64,
    pub status: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct NfoldReport {
    pub space: String,
    pub parabolic: Vec<usize>,
    pub n: usize,
    pub total_tuples: u64,
    pub sampled: bool,
    pub examined: usize,
    pub ok: usize,
    pub empty: usize,
    pub violations: usize,
    pub rows: Vec<NfoldRow>,
}

/// Expected dimension of a generic intersection of the given cells:
/// the space dimension minus the sum of the cell codimensions.
pub fn expected_dim(s: &Space, cells: &[usize]) -> i64 {
    let dim = s.dim() as i64;
    cells.iter().map(|&c| s.cell_length(c) as i64 - dim).sum::<i64>() + dim
}

fn signed_status(d: i64, chi: i64) -> (i64, &'static str) {
    let e = if d.rem_euclid(2) == 0 { chi } else { -chi };
    if d < 0 {
        if chi == 0 {
            (0, "empty")
        } else {
            (e, "violation")
        }
    } else if e < 0 {
        (e, "violation")
    } else {
        (e, "ok")
    }
}

/// Euler characteristic of the intersection of generic translates of
/// the given cells (any number, repetition allowed). A nonzero result
/// on a tuple of negative expected dimension is a contradiction and
/// comes back as an error.
pub fn chi_multi(s: &Space, cells: &[usize]) -> Result<Rat> {
    let mut acc = s.chern();
    for &c in cells {
        acc = s.cup(&acc, &s.ssm(c))?;
    }
    let chi = s.integrate(&acc)?;
    let d = expected_dim(s, cells);
    if d < 0 && !chi.is_zero() {
        return Err(Error::DimensionContradiction(format!(
            "expected dimension {d} with characteristic {chi}"
        )));
    }
    Ok(chi)
}

/// Characteristic of a two-cell intersection through the duality
/// permutation: the integral of `csm(lambda) ssm(nuprime)`.
pub fn richardson_chi(s: &Space, lambda: usize, nuprime: usize) -> Result<Rat> {
    s.pairing(&s.csm(lambda), &s.ssm(nuprime))
}

/// SSM structure constants: coefficients of `ssm(lambda) ssm(mu)` in
/// the SSM basis, sparse over basis positions.
pub fn structure_constants(s: &Space, lambda: usize, mu: usize) -> Result<Vec<(usize, i64)>> {
    let p = s.cup(&s.ssm(lambda), &s.ssm(mu))?;
    let mut out = Vec::new();
    for nu in 0..s.num_cells() {
        let a = s.pairing(&p, &s.csm(s.opposite(nu)))?;
        if !a.is_zero() {
            out.push((nu, rat_to_i64(&a)?));
        }
    }
    Ok(out)
}

/// Two-cell characteristics against opposite cells must form the
/// identity matrix: `chi(lambda, opp(nu)) = delta`.
pub fn verify_orthogonality(s: &Space) -> Result<OrthoReport> {
    let n = s.num_cells();
    let mut matrix = Vec::with_capacity(n);
    let mut identity = true;
    for lambda in 0..n {
        let mut row = Vec::with_capacity(n);
        for nu in 0..n {
            let chi = richardson_chi(s, lambda, s.opposite(nu))?;
            let v = rat_to_i64(&chi)?;
            let want = i64::from(lambda == nu);
            if v != want {
                identity = false;
            }
            row.push(v);
        }
        matrix.push(row);
    }
    Ok(OrthoReport { space: s.label().to_string(), parabolic: s.subset(), matrix, identity })
}

/// Grades every ordered triple of cells by the sign of its signed
/// characteristic. Rows come out in lexicographic position order.
pub fn verify_positivity(s: &Space) -> Result<TripleReport> {
    let n = s.num_cells();
    let ssm: Vec<CohClass> = (0..n).map(|c| s.ssm(c)).collect();
    let chern = s.chern();
    let rows: Vec<Vec<TripleRow>> = (0..n * n)
        .into_par_iter()
        .map(|pair| -> Result<Vec<TripleRow>> {
            let (lambda, mu) = (pair / n, pair % n);
            let front = s.cup(&s.cup(&chern, &ssm[lambda])?, &ssm[mu])?;
            let mut out = Vec::with_capacity(n);
            for nuprime in 0..n {
                let chi = rat_to_i64(&s.pairing(&front, &ssm[nuprime])?)?;
                let d = expected_dim(s, &[lambda, mu, nuprime]);
                let (e, status) = signed_status(d, chi);
                out.push(TripleRow {
                    lambda: s.cell_word(lambda),
                    mu: s.cell_word(mu),
                    nuprime: s.cell_word(nuprime),
                    a: chi,
                    d,
                    e,
                    status: status.to_string(),
                });
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    let rows: Vec<TripleRow> = rows.into_iter().flatten().collect();
    let (mut ok, mut empty, mut violations) = (0, 0, 0);
    for r in &rows {
        match r.status.as_str() {
            "ok" => ok += 1,
            "empty" => empty += 1,
            _ => violations += 1,
        }
    }
    Ok(TripleReport {
        space: s.label().to_string(),
        parabolic: s.subset(),
        dim: s.dim(),
        cells: n,
        total: rows.len(),
        ok,
        empty,
        violations,
        rows,
    })
}

/// Grades n-fold tuples. All `cells^n` ordered tuples are examined when
/// they fit the cap; otherwise a seeded sample of `cap` tuples.
pub fn verify_nfold(s: &Space, n: usize, cap: usize) -> Result<NfoldReport> {
    if n == 0 {
        return Err(Error::Parse("tuple size must be at least 1".into()));
    }
    let cells = s.num_cells();
    let total: u64 = (cells as u64).checked_pow(n as u32).ok_or_else(|| {
        Error::Internal(format!("tuple count overflow for {cells} cells to the power {n}"))
    })?;
    let sampled = total > cap as u64;
    let tuples: Vec<Vec<usize>> = if sampled {
        let mut rng = ChaCha8Rng::seed_from_u64(NFOLD_SEED);
        (0..cap).map(|_| (0..n).map(|_| rng.gen_range(0..cells)).collect()).collect()
    } else {
        let mut out = Vec::with_capacity(total as usize);
        let mut cur = vec![0usize; n];
        loop {
            out.push(cur.clone());
            let mut k = n;
            loop {
                if k == 0 {
                    break;
                }
                k -= 1;
                cur[k] += 1;
                if cur[k] < cells {
                    break;
                }
                cur[k] = 0;
            }
            if cur.iter().all(|&c| c == 0) {
                break;
            }
        }
        out
    };
    let rows: Vec<NfoldRow> = tuples
        .par_iter()
        .map(|tuple| -> Result<NfoldRow> {
            let mut acc = s.chern();
            for &c in &tuple[..n - 1] {
                acc = s.cup(&acc, &s.ssm(c))?;
            }
            let chi = rat_to_i64(&s.pairing(&acc, &s.ssm(tuple[n - 1]))?)?;
            let d = expected_dim(s, tuple);
            let (e, status) = signed_status(d, chi);
            Ok(NfoldRow {
                cells: tuple.iter().map(|&c| s.cell_word(c)).collect(),
                chi,
                d,
                e,
                status: status.to_string(),
            })
        })
        .collect::<Result<_>>()?;
    let (mut ok, mut empty, mut violations) = (0, 0, 0);
    for r in &rows {
        match r.status.as_str() {
            "ok" => ok += 1,
            "empty" => empty += 1,
            _ => violations += 1,
        }
    }
    Ok(NfoldReport {
        space: s.label().to_string(),
        parabolic: s.subset(),
        n,
        total_tuples: total,
        sampled,
        examined: rows.len(),
        ok,
        empty,
        violations,
        rows,
    })
}
