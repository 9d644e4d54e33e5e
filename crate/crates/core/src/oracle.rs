//! Closed-form oracle for projective space, cross-checked against the
//! pipeline.
//!
//! A dimension-k cell of projective n-space is a generic k-plane minus
//! a generic hyperplane inside it, so the intersection of m generic
//! cell translates is a plane of dimension `k = sum k_i - (m-1) n` with
//! m generic hyperplane traces removed. Inclusion-exclusion over the
//! traces gives the characteristic in closed form, with no reference to
//! Weyl groups, divided differences, or characteristic classes. The
//! same numbers must fall out of the class pipeline on the quotient
//! whose cells are points, lines, planes, and so on.

use crate::classes::Space;
use crate::error::{Error, Result};
use crate::ratio::rat_to_i64;
use crate::root_system::RootSystem;
use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct CrossRow {
    pub dims: Vec<usize>,
    pub oracle: i64,
    pub pipeline: i64,
    pub status: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CrossReport {
    pub n: usize,
    pub max_cells: usize,
    pub space: String,
    pub parabolic: Vec<usize>,
    pub rows: Vec<CrossRow>,
    pub mismatches: usize,
}

fn binom(m: usize, s: usize) -> i64 {
    if s > m {
        return 0;
    }
    let mut acc: i64 = 1;
    for t in 0..s.min(m - s) {
        acc = acc * ((m - t) as i64) / ((t + 1) as i64);
    }
    acc
}

/// Euler characteristic of the intersection of generic translates of
/// cells with the given dimensions in projective n-space, by
/// inclusion-exclusion over the removed hyperplane traces.
pub fn proj_cell_chi(n: usize, dims: &[usize]) -> Result<i64> {
    if n == 0 || dims.is_empty() {
        return Err(Error::Parse("need projective dimension and at least one cell".into()));
    }
    if let Some(&bad) = dims.iter().find(|&&k| k > n) {
        return Err(Error::Parse(format!("cell dimension {bad} exceeds the space dimension {n}")));
    }
    let m = dims.len();
    let k = dims.iter().map(|&d| d as i64).sum::<i64>() - ((m - 1) as i64) * (n as i64);
    let mut chi: i64 = 0;
    for s in 0..=m {
        let planes = k - (s as i64) + 1;
        if planes <= 0 {
            continue;
        }
        let sign = if s % 2 == 0 { 1 } else { -1 };
        chi += sign * binom(m, s) * planes;
    }
    Ok(chi)
}

/// The type label and parabolic subset whose quotient is projective
/// n-space with linear-cell strata.
pub fn projective_presentation(n: usize) -> Result<(String, Vec<usize>)> {
    if n == 0 {
        return Err(Error::Parse("projective dimension must be at least 1".into()));
    }
    Ok((format!("A{n}"), (2..=n).collect()))
}

/// The quotient whose Schubert cells are linear-cell strata of
/// projective n-space.
pub fn projective_space(n: usize) -> Result<Space> {
    let (label, subset) = projective_presentation(n)?;
    let space = Space::new(RootSystem::from_label(&label)?, &subset)?;
    check_projective_shape(&space, n)?;
    Ok(space)
}

fn check_projective_shape(space: &Space, n: usize) -> Result<()> {
    if space.num_cells() != n + 1 {
        return Err(Error::Parse("space is not a projective space of the stated dimension".into()));
    }
    for pos in 0..space.num_cells() {
        if space.cell_length(pos) != pos {
            return Err(Error::Internal("cell positions off from cell dimensions".into()));
        }
    }
    Ok(())
}

/// Runs the pipeline against the closed form on every multiset of up to
/// `max_cells` cell dimensions.
pub fn proj_cross_check(n: usize, max_cells: usize) -> Result<CrossReport> {
    proj_cross_check_on(&projective_space(n)?, n, max_cells)
}

/// Same sweep on a caller-supplied space, which must be projective
/// n-space (a cached build, usually).
pub fn proj_cross_check_on(space: &Space, n: usize, max_cells: usize) -> Result<CrossReport> {
    if max_cells == 0 {
        return Err(Error::Parse("need at least one cell per tuple".into()));
    }
    check_projective_shape(space, n)?;
    let mut rows = Vec::new();
    enumerate_multisets(n, max_cells, &mut |dims| {
        let oracle = proj_cell_chi(n, dims)?;
        let mut acc = space.chern();
        for &k in dims {
            acc = space.cup(&acc, &space.ssm(k))?;
        }
        let pipeline = rat_to_i64(&space.integrate(&acc)?)?;
        let status = if oracle == pipeline { "ok" } else { "mismatch" };
        rows.push(CrossRow { dims: dims.to_vec(), oracle, pipeline, status: status.to_string() });
        Ok(())
    })?;
    let mismatches = rows.iter().filter(|r| r.status == "mismatch").count();
    Ok(CrossReport {
        n,
        max_cells,
        space: space.label().to_string(),
        parabolic: space.subset(),
        rows,
        mismatches,
    })
}

/// Nondecreasing dimension tuples of every size `1..=max_cells`, in
/// size-then-lex order.
fn enumerate_multisets(n: usize, max_cells: usize, f: &mut impl FnMut(&[usize]) -> Result<()>) -> Result<()> {
    for size in 1..=max_cells {
        let mut dims = vec![0usize; size];
        'tuples: loop {
            f(&dims)?;
            let mut j = size;
            while j > 0 {
                j -= 1;
                if dims[j] < n {
                    let v = dims[j] + 1;
                    for slot in &mut dims[j..] {
                        *slot = v;
                    }
                    continue 'tuples;
                }
            }
            break;
        }
    }
    Ok(())
}
