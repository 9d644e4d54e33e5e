//! Torus-fixed-point model of equivariant cohomology.
//!
//! A class is a polynomial-valued function on the Weyl group (one value
//! per fixed point). Schubert classes are produced top-down: the class
//! of a point is supported at the longest element with value the product
//! of all positive roots, and the divided difference
//! `(Df)(v) = (f(v) - f(v s_i)) / (-v(alpha_i))`
//! walks down the weak order until the identity class comes out as the
//! constant 1, which is asserted. Expansion in the Schubert basis is
//! triangular elimination against the diagonal values `sigma_w(w)`;
//! multiplication tables evaluate the expansion coefficients at zero.

use crate::error::{Error, Result};
use crate::poly::{Monomial, RootPoly};
use crate::ratio::{rat_to_i64, Rat};
use crate::weyl::{ParabolicData, WeylGroup};
use num::Zero;
use std::collections::HashMap;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GkmClass {
    tag: u32,
    values: Vec<RootPoly>,
}

impl GkmClass {
    pub fn zero(g: &WeylGroup) -> GkmClass {
        GkmClass { tag: g.tag(), values: vec![RootPoly::zero(g.rank()); g.order()] }
    }

    pub fn unit(g: &WeylGroup) -> GkmClass {
        GkmClass { tag: g.tag(), values: vec![RootPoly::one(g.rank()); g.order()] }
    }

    fn check(&self, g: &WeylGroup) -> Result<()> {
        if self.tag != g.tag() {
            return Err(Error::GroupMismatch);
        }
        Ok(())
    }

    /// Value at the fixed point with the given element id.
    pub fn value(&self, id: usize) -> &RootPoly {
        &self.values[id]
    }

    pub fn set_value(&mut self, id: usize, p: RootPoly) {
        self.values[id] = p;
    }

    pub fn support_ids(&self) -> Vec<usize> {
        (0..self.values.len()).filter(|&v| !self.values[v].is_zero()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(RootPoly::is_zero)
    }

    pub fn add(&self, o: &GkmClass) -> Result<GkmClass> {
        if self.tag != o.tag {
            return Err(Error::GroupMismatch);
        }
        let values: Result<Vec<RootPoly>> = self.values.iter().zip(&o.values).map(|(a, b)| a.add(b)).collect();
        Ok(GkmClass { tag: self.tag, values: values? })
    }

    pub fn scale(&self, c: &Rat) -> GkmClass {
        GkmClass { tag: self.tag, values: self.values.iter().map(|p| p.scale(c)).collect() }
    }

    /// Pointwise product, the cup product in the fixed-point model.
    pub fn mul(&self, o: &GkmClass) -> Result<GkmClass> {
        if self.tag != o.tag {
            return Err(Error::GroupMismatch);
        }
        let values: Result<Vec<RootPoly>> = self
            .values
            .iter()
            .zip(&o.values)
            .map(|(a, b)| if a.is_zero() || b.is_zero() { Ok(RootPoly::zero(a.rank())) } else { a.mul(b) })
            .collect();
        Ok(GkmClass { tag: self.tag, values: values? })
    }

    /// Cohomological degree: `Some(2d)` when every value is homogeneous
    /// of one polynomial degree `d`, `None` otherwise.
    pub fn degree(&self) -> Option<usize> {
        let mut deg: Option<usize> = None;
        for p in &self.values {
            if p.is_zero() {
                continue;
            }
            match (deg, p.homogeneous_degree()) {
                (_, None) => return None,
                (None, Some(d)) => deg = Some(d),
                (Some(d0), Some(d)) if d0 != d => return None,
                _ => {}
            }
        }
        Some(2 * deg.unwrap_or(0))
    }

    /// Serialization form: one entry per fixed point with a nonzero
    /// value, keyed by canonical reduced word, in element order.
    pub fn to_word_map(&self, g: &WeylGroup) -> Result<Vec<(String, Vec<(Monomial, String)>)>> {
        self.check(g)?;
        Ok((0..g.order())
            .filter(|&id| !self.values[id].is_zero())
            .map(|id| (g.word_string(g.element(id)), self.values[id].to_terms()))
            .collect())
    }

    pub fn from_word_map(g: &WeylGroup, entries: &[(String, Vec<(Monomial, String)>)]) -> Result<GkmClass> {
        let mut c = GkmClass::zero(g);
        for (word, terms) in entries {
            let e = g.parse_word(word)?;
            c.values[e.id()] = RootPoly::from_terms(g.rank(), terms)?;
        }
        Ok(c)
    }
}

/// Divided difference in the fixed-point model; `i` is 1-based. The
/// output takes equal values on each `{v, v s_i}` pair.
pub fn divided_difference(g: &WeylGroup, i: usize, f: &GkmClass) -> Result<GkmClass> {
    f.check(g)?;
    if i == 0 || i > g.rank() {
        return Err(Error::Parse(format!("simple index {i} out of range 1..={}", g.rank())));
    }
    let i0 = i - 1;
    let mut out = GkmClass::zero(g);
    for v in 0..g.order() {
        let vs = g.right_id(v, i0);
        if vs < v {
            continue;
        }
        let num = f.value(v).sub(f.value(vs))?;
        let q = if num.is_zero() {
            RootPoly::zero(g.rank())
        } else {
            // v(alpha_i) as a linear form; the divisor is its negative.
            let t = g.action_id(v)[i0];
            let root = RootPoly::linear(g.rank(), g.root_system().root((t.unsigned_abs() as usize) - 1));
            let divisor = if t < 0 { root } else { root.neg() };
            num.exact_div(&divisor)?
        };
        out.values[v] = q.clone();
        out.values[vs] = q;
    }
    Ok(out)
}

/// GKM edge condition: along every edge `(v, v t_beta)` the difference of
/// values must be divisible by the linear form of `v(beta)`.
pub fn validate(g: &WeylGroup, c: &GkmClass) -> Result<bool> {
    c.check(g)?;
    for v in 0..g.order() {
        let act = g.action_id(v);
        for k in 0..g.root_system().num_positive() {
            let mut u = v;
            for &l in &g.word(g.reflection(k)) {
                u = g.right_id(u, l - 1);
            }
            if u < v {
                continue;
            }
            let diff = c.value(v).sub(c.value(u))?;
            if diff.is_zero() {
                continue;
            }
            let root = RootPoly::linear(g.rank(), g.root_system().root((act[k].unsigned_abs() as usize) - 1));
            if diff.exact_div(&root).is_err() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The full set of localized Schubert classes for one group, indexed by
/// element id.
pub struct SchubertBasis {
    tag: u32,
    sigmas: Vec<GkmClass>,
}

impl SchubertBasis {
    pub fn build(g: &WeylGroup) -> Result<SchubertBasis> {
        let n = g.order();
        let rank = g.rank();
        let mut point = RootPoly::one(rank);
        for r in g.root_system().positive_roots() {
            point = point.mul(&RootPoly::linear(rank, r))?;
        }
        let mut sigmas: Vec<Option<GkmClass>> = (0..n).map(|_| None).collect();
        let mut top = GkmClass::zero(g);
        top.set_value(n - 1, point);
        sigmas[n - 1] = Some(top);

        for id in (0..n).rev() {
            let sig = sigmas[id]
                .clone()
                .ok_or_else(|| Error::GkmRecursionFailure(format!("class {} never produced", g.word_string(g.element(id)))))?;
            for i0 in 0..rank {
                if !g.right_descent_id(id, i0) {
                    continue;
                }
                let target = g.right_id(id, i0);
                if sigmas[target].is_none() {
                    let d = divided_difference(g, i0 + 1, &sig)
                        .map_err(|e| Error::GkmRecursionFailure(format!("step s{} below {}: {e}", i0 + 1, g.word_string(g.element(id)))))?;
                    sigmas[target] = Some(d);
                }
            }
        }
        let sigmas: Vec<GkmClass> = sigmas.into_iter().map(Option::unwrap).collect();
        if sigmas[0] != GkmClass::unit(g) {
            return Err(Error::GkmRecursionFailure("identity class is not the constant 1".into()));
        }
        Ok(SchubertBasis { tag: g.tag(), sigmas })
    }

    pub fn class(&self, id: usize) -> &GkmClass {
        &self.sigmas[id]
    }

    pub fn len(&self) -> usize {
        self.sigmas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sigmas.is_empty()
    }

    fn check(&self, g: &WeylGroup) -> Result<()> {
        if self.tag != g.tag() {
            return Err(Error::GroupMismatch);
        }
        Ok(())
    }

    /// Coefficients of `c` in the Schubert basis, indexed by element id.
    pub fn expand(&self, g: &WeylGroup, c: &GkmClass) -> Result<Vec<RootPoly>> {
        self.expand_impl(g, c, None)
    }

    /// Triangular elimination by increasing length; `bound` cuts the
    /// pivot loop once lengths exceed it (sound whenever the caller
    /// knows higher coefficients vanish, e.g. by degree).
    fn expand_impl(&self, g: &WeylGroup, c: &GkmClass, bound: Option<usize>) -> Result<Vec<RootPoly>> {
        self.check(g)?;
        c.check(g)?;
        let n = g.order();
        let mut rem: Vec<RootPoly> = c.values.clone();
        let mut kappa = vec![RootPoly::zero(g.rank()); n];
        for w in 0..n {
            if let Some(b) = bound {
                if g.length_id(w) > b {
                    break;
                }
            }
            if rem[w].is_zero() {
                continue;
            }
            let sw = &self.sigmas[w];
            let k = rem[w].exact_div(sw.value(w)).map_err(|_| Error::NotInSpan)?;
            for v in w..n {
                let s = sw.value(v);
                if s.is_zero() {
                    continue;
                }
                rem[v] = rem[v].sub(&k.mul(s)?)?;
            }
            kappa[w] = k;
        }
        if rem.iter().any(|r| !r.is_zero()) {
            return Err(Error::NotInSpan);
        }
        Ok(kappa)
    }

    /// Pushforward to a point: applies the divided-difference word of
    /// the longest element: the result must be a constant class, and its
    /// value at zero is the integral of the top-degree part.
    pub fn integrate(&self, g: &WeylGroup, c: &GkmClass) -> Result<Rat> {
        self.check(g)?;
        c.check(g)?;
        let mut cur = c.clone();
        for &i in &g.word(g.longest_element()) {
            cur = divided_difference(g, i, &cur)?;
        }
        let first = cur.value(0).clone();
        for v in 1..g.order() {
            if *cur.value(v) != first {
                return Err(Error::Internal("pushforward to a point is not constant".into()));
            }
        }
        Ok(first.constant_term())
    }
}

/// Structure constants of the Schubert basis of a flag variety or a
/// parabolic quotient, restricted to minimal representatives.
pub struct MultTable {
    basis_ids: Vec<u32>,
    pos_of_id: HashMap<u32, usize>,
    rows: HashMap<(u32, u32), Vec<(u32, i64)>>,
}

impl MultTable {
    pub fn build(g: &WeylGroup, basis: &SchubertBasis, par: &ParabolicData) -> Result<MultTable> {
        basis.check(g)?;
        let reps = par.minrep_ids().to_vec();
        let mut rows = HashMap::new();
        for (pa, &ua) in reps.iter().enumerate() {
            for &ub in reps.iter().skip(pa) {
                let row = Self::expand_product(g, basis, par, ua as usize, ub as usize)?;
                rows.insert((ua, ub), row);
            }
        }
        let pos_of_id = reps.iter().enumerate().map(|(p, &id)| (id, p)).collect();
        let table = MultTable { basis_ids: reps, pos_of_id, rows };
        table.verify_unit_rows(g)?;
        Ok(table)
    }

    /// Rebuilds a table from stored entries without polynomial work.
    /// Shape checks only: keys must be known basis pairs with `u <= v`,
    /// terms on ascending minimal-representative ids at the graded
    /// length, coefficients nonzero, unit rows intact. Anything else is
    /// a parse error, the cache layer treats it as corruption.
    pub(crate) fn from_rows(
        g: &WeylGroup,
        par: &ParabolicData,
        entries: &[(u32, u32, u32, i64)],
    ) -> Result<MultTable> {
        let reps = par.minrep_ids().to_vec();
        let pos_of_id: HashMap<u32, usize> =
            reps.iter().enumerate().map(|(p, &id)| (id, p)).collect();
        let mut rows: HashMap<(u32, u32), Vec<(u32, i64)>> = HashMap::new();
        for (pa, &ua) in reps.iter().enumerate() {
            for &ub in reps.iter().skip(pa) {
                rows.insert((ua, ub), Vec::new());
            }
        }
        for &(u, v, w, c) in entries {
            let row = rows
                .get_mut(&(u, v))
                .ok_or_else(|| Error::Parse(format!("stray table key {u}|{v}")))?;
            if !pos_of_id.contains_key(&w) {
                return Err(Error::Parse(format!("table term {w} outside the basis")));
            }
            if g.length_id(w as usize) != g.length_id(u as usize) + g.length_id(v as usize) {
                return Err(Error::Parse(format!("off-grading table term at {u}|{v}")));
            }
            if c == 0 {
                return Err(Error::Parse(format!("zero coefficient stored at {u}|{v}")));
            }
            if row.last().is_some_and(|&(last, _)| last >= w) {
                return Err(Error::Parse(format!("unsorted table row at {u}|{v}")));
            }
            row.push((w, c));
        }
        let table = MultTable { basis_ids: reps, pos_of_id, rows };
        table.verify_unit_rows(g)?;
        Ok(table)
    }

    /// Expands one product `sigma_u sigma_v` and evaluates at zero;
    /// checks every surviving term stays inside the minimal
    /// representatives and on the expected length.
    fn expand_product(
        g: &WeylGroup,
        basis: &SchubertBasis,
        par: &ParabolicData,
        ua: usize,
        ub: usize,
    ) -> Result<Vec<(u32, i64)>> {
        let bound = g.length_id(ua) + g.length_id(ub);
        let prod = basis.class(ua).mul(basis.class(ub))?;
        let kappa = basis.expand_impl(g, &prod, Some(bound))?;
        let mut row = Vec::new();
        for (w, k) in kappa.iter().enumerate() {
            let c = k.constant_term();
            if c.is_zero() {
                continue;
            }
            let ci = rat_to_i64(&c)?;
            if g.length_id(w) != bound {
                return Err(Error::Internal(format!(
                    "off-grading coefficient at {} in {} * {}",
                    g.word_string(g.element(w)),
                    g.word_string(g.element(ua)),
                    g.word_string(g.element(ub)),
                )));
            }
            if !par.is_minrep_id(w) {
                return Err(Error::ParabolicClosureFailure(format!(
                    "{} * {} hits {}",
                    g.word_string(g.element(ua)),
                    g.word_string(g.element(ub)),
                    g.word_string(g.element(w)),
                )));
            }
            row.push((w as u32, ci));
        }
        Ok(row)
    }

    fn verify_unit_rows(&self, g: &WeylGroup) -> Result<()> {
        for &v in &self.basis_ids {
            let row = self.row_ids(0, v);
            if row != [(v, 1)] {
                return Err(Error::Internal(format!(
                    "unit row broken at {}",
                    g.word_string(g.element(v as usize))
                )));
            }
        }
        Ok(())
    }

    pub fn basis_ids(&self) -> &[u32] {
        &self.basis_ids
    }

    pub fn len(&self) -> usize {
        self.basis_ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis_ids.is_empty()
    }

    pub fn pos_of_id(&self, id: usize) -> Option<usize> {
        self.pos_of_id.get(&(id as u32)).copied()
    }

    /// Row of structure constants for a product of two basis elements,
    /// by element id; the table is symmetric.
    pub fn row_ids(&self, u: u32, v: u32) -> &[(u32, i64)] {
        let key = if u <= v { (u, v) } else { (v, u) };
        self.rows.get(&key).map(Vec::as_slice).unwrap_or(&[])
    }

    /// All stored rows in deterministic (id-pair) order.
    pub fn sorted_entries(&self) -> Vec<(u32, u32, u32, i64)> {
        let mut keys: Vec<&(u32, u32)> = self.rows.keys().collect();
        keys.sort();
        let mut out = Vec::new();
        for &&(u, v) in &keys {
            for &(w, c) in &self.rows[&(u, v)] {
                out.push((u, v, w, c));
            }
        }
        out
    }
}

/// Structure-constant rows for every product `sigma_{s_j} sigma_v` over
/// the full group, indexed `[j-1][v_id]`. These drive cup products by
/// degree-2 classes without building a full table.
pub(crate) fn simple_rows(g: &WeylGroup, basis: &SchubertBasis) -> Result<Vec<Vec<Vec<(u32, i64)>>>> {
    basis.check(g)?;
    let trivial = g.parabolic(&[])?;
    let mut rows = Vec::with_capacity(g.rank());
    for j0 in 0..g.rank() {
        let sj = g.simple_element(j0 + 1)?.id();
        let mut per_v = Vec::with_capacity(g.order());
        for v in 0..g.order() {
            per_v.push(MultTable::expand_product(g, basis, &trivial, sj, v)?);
        }
        rows.push(per_v);
    }
    Ok(rows)
}

/// Independent degree-2 check: rows of the table indexed by simple
/// reflections must match the classical rule: the coefficient of
/// `sigma_{v t_beta}` in `sigma_{s_j} sigma_v` is the pairing of the
/// j-th fundamental weight with the coroot of `beta`, summed over
/// positive `beta` with one-step length increase.
pub fn chevalley_check(g: &WeylGroup, table: &MultTable) -> Result<()> {
    let rs = g.root_system();
    for j0 in 0..g.rank() {
        let sj = g.simple_element(j0 + 1)?;
        let Some(_) = table.pos_of_id(sj.id()) else {
            continue;
        };
        for &v in table.basis_ids() {
            let v = v as usize;
            let mut expected: HashMap<u32, i64> = HashMap::new();
            for k in 0..rs.num_positive() {
                let coeff = rs.coroot_coords(k)?[j0];
                if coeff == 0 {
                    continue;
                }
                let mut w = v;
                for &l in &g.word(g.reflection(k)) {
                    w = g.right_id(w, l - 1);
                }
                if g.length_id(w) != g.length_id(v) + 1 {
                    continue;
                }
                if table.pos_of_id(w).is_none() {
                    return Err(Error::ParabolicClosureFailure(format!(
                        "degree-2 rule hits {} outside the basis",
                        g.word_string(g.element(w))
                    )));
                }
                *expected.entry(w as u32).or_insert(0) += coeff;
            }
            let mut expected: Vec<(u32, i64)> = expected.into_iter().filter(|&(_, c)| c != 0).collect();
            expected.sort_unstable();
            let got = table.row_ids(sj.id() as u32, v as u32);
            if expected != got {
                return Err(Error::Internal(format!(
                    "degree-2 rule mismatch at s{} * {}: rule {:?}, table {:?}",
                    j0 + 1,
                    g.word_string(g.element(v)),
                    expected,
                    got
                )));
            }
        }
    }
    Ok(())
}
