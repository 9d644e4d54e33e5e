//! Sparse multivariate polynomials over exact rationals, one
//! indeterminate per simple root.
//!
//! Monomials are exponent tuples; the graded-lexicographic order (total
//! degree first, then lex on exponents) fixes leading terms for exact
//! division and the serialization order. The Weyl group acts on the left
//! through linear substitution of the indeterminates.

use crate::error::{Error, Result};
use crate::ratio::{format_rat, parse_rat, Rat};
use crate::weyl::{Elem, WeylGroup};
use num::{One, Zero};
use std::collections::HashMap;
use std::fmt;

pub type Monomial = Vec<u16>;

#[derive(Clone, PartialEq, Eq)]
pub struct RootPoly {
    rank: usize,
    terms: HashMap<Monomial, Rat>,
}

fn glex(a: &[u16], b: &[u16]) -> std::cmp::Ordering {
    let da: u32 = a.iter().map(|&e| u32::from(e)).sum();
    let db: u32 = b.iter().map(|&e| u32::from(e)).sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

impl RootPoly {
    pub fn zero(rank: usize) -> RootPoly {
        RootPoly { rank, terms: HashMap::new() }
    }

    pub fn one(rank: usize) -> RootPoly {
        Self::constant(rank, Rat::one())
    }

    pub fn constant(rank: usize, c: Rat) -> RootPoly {
        let mut terms = HashMap::new();
        if !c.is_zero() {
            terms.insert(vec![0u16; rank], c);
        }
        RootPoly { rank, terms }
    }

    /// The linear form `sum_i coords[i] * alpha_i`.
    pub fn linear(rank: usize, coords: &[i64]) -> RootPoly {
        assert_eq!(coords.len(), rank);
        let mut terms = HashMap::new();
        for (i, &c) in coords.iter().enumerate() {
            if c != 0 {
                let mut m = vec![0u16; rank];
                m[i] = 1;
                terms.insert(m, Rat::from_integer(c.into()));
            }
        }
        RootPoly { rank, terms }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn check_rank(&self, o: &RootPoly) -> Result<()> {
        if self.rank != o.rank {
            return Err(Error::RankMismatch(self.rank, o.rank));
        }
        Ok(())
    }

    fn insert(terms: &mut HashMap<Monomial, Rat>, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        use std::collections::hash_map::Entry;
        match terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let v = e.get() + c;
                if v.is_zero() {
                    e.remove();
                } else {
                    e.insert(v);
                }
            }
        }
    }

    pub fn add(&self, o: &RootPoly) -> Result<RootPoly> {
        self.check_rank(o)?;
        let mut terms = self.terms.clone();
        for (m, c) in &o.terms {
            Self::insert(&mut terms, m.clone(), c.clone());
        }
        Ok(RootPoly { rank: self.rank, terms })
    }

    pub fn sub(&self, o: &RootPoly) -> Result<RootPoly> {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> RootPoly {
        RootPoly { rank: self.rank, terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }

    pub fn scale(&self, c: &Rat) -> RootPoly {
        if c.is_zero() {
            return Self::zero(self.rank);
        }
        RootPoly { rank: self.rank, terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect() }
    }

    pub fn mul(&self, o: &RootPoly) -> Result<RootPoly> {
        self.check_rank(o)?;
        let mut terms = HashMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                let m: Monomial = ma.iter().zip(mb).map(|(&a, &b)| a + b).collect();
                Self::insert(&mut terms, m, ca * cb);
            }
        }
        Ok(RootPoly { rank: self.rank, terms })
    }

    /// Drops all terms of total degree above `max_deg`.
    pub fn truncate(&self, max_deg: usize) -> RootPoly {
        RootPoly {
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.iter().map(|&e| usize::from(e)).sum::<usize>() <= max_deg)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Evaluation with every indeterminate set to zero.
    pub fn constant_term(&self) -> Rat {
        self.terms.get(&vec![0u16; self.rank]).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn total_degree(&self) -> Option<usize> {
        self.terms.keys().map(|m| m.iter().map(|&e| usize::from(e)).sum()).max()
    }

    /// `Some(d)` when every term has total degree `d`; zero counts as
    /// homogeneous of every degree and reports `Some(0)`.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        if self.terms.is_empty() {
            return Some(0);
        }
        let mut degs = self.terms.keys().map(|m| m.iter().map(|&e| usize::from(e)).sum::<usize>());
        let d = degs.next().unwrap();
        degs.all(|x| x == d).then_some(d)
    }

    fn leading(&self) -> Option<(&Monomial, &Rat)> {
        self.terms.iter().max_by(|(a, _), (b, _)| glex(a, b)).map(|(m, c)| (m, c))
    }

    /// Exact quotient `self / divisor`; errors unless the division leaves
    /// no remainder.
    pub fn exact_div(&self, divisor: &RootPoly) -> Result<RootPoly> {
        self.check_rank(divisor)?;
        if divisor.is_zero() {
            return Err(Error::NotDivisible);
        }
        let (dm, dc) = divisor.leading().map(|(m, c)| (m.clone(), c.clone())).unwrap();
        let mut rem = self.clone();
        let mut quot = HashMap::new();
        while let Some((rm, rc)) = rem.leading() {
            if !rm.iter().zip(&dm).all(|(&a, &b)| a >= b) {
                return Err(Error::NotDivisible);
            }
            let qm: Monomial = rm.iter().zip(&dm).map(|(&a, &b)| a - b).collect();
            let qc = rc / &dc;
            let piece = RootPoly { rank: self.rank, terms: [(qm.clone(), qc.clone())].into() };
            rem = rem.sub(&piece.mul(divisor)?)?;
            Self::insert(&mut quot, qm, qc);
        }
        Ok(RootPoly { rank: self.rank, terms: quot })
    }

    /// Left Weyl action: substitutes `alpha_j -> w(alpha_j)` in every
    /// monomial.
    pub fn weyl_substitute(&self, g: &WeylGroup, w: Elem) -> Result<RootPoly> {
        let rank = g.rank();
        if rank != self.rank {
            return Err(Error::RankMismatch(self.rank, rank));
        }
        let act = g.action(w);
        let images: Vec<RootPoly> = (0..rank)
            .map(|j| {
                let t = act[j];
                let root = g.root_system().root((t.unsigned_abs() as usize) - 1);
                let lin = Self::linear(rank, root);
                if t < 0 {
                    lin.neg()
                } else {
                    lin
                }
            })
            .collect();
        // Lazily extended power tables, one per indeterminate.
        let mut powers: Vec<Vec<RootPoly>> = (0..rank).map(|_| vec![Self::one(rank)]).collect();
        let mut out = Self::zero(rank);
        for (m, c) in &self.terms {
            let mut prod = Self::constant(rank, c.clone());
            for j in 0..rank {
                let e = usize::from(m[j]);
                if e == 0 {
                    continue;
                }
                while powers[j].len() <= e {
                    let next = powers[j].last().unwrap().mul(&images[j])?;
                    powers[j].push(next);
                }
                prod = prod.mul(&powers[j][e])?;
            }
            out = out.add(&prod)?;
        }
        Ok(out)
    }

    /// Terms in descending graded-lex order with `num/den` coefficient
    /// text; the bit-exact serialization form.
    pub fn to_terms(&self) -> Vec<(Monomial, String)> {
        let mut items: Vec<(&Monomial, &Rat)> = self.terms.iter().collect();
        items.sort_by(|(a, _), (b, _)| glex(b, a));
        items.into_iter().map(|(m, c)| (m.clone(), format_rat(c))).collect()
    }

    pub fn from_terms(rank: usize, items: &[(Monomial, String)]) -> Result<RootPoly> {
        let mut terms = HashMap::new();
        for (m, ctext) in items {
            if m.len() != rank {
                return Err(Error::RankMismatch(m.len(), rank));
            }
            Self::insert(&mut terms, m.clone(), parse_rat(ctext)?);
        }
        Ok(RootPoly { rank, terms })
    }
}

impl fmt::Debug for RootPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .to_terms()
            .iter()
            .map(|(m, c)| {
                let vars: Vec<String> = m
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, &e)| if e == 1 { format!("a{}", i + 1) } else { format!("a{}^{}", i + 1, e) })
                    .collect();
                if vars.is_empty() {
                    c.clone()
                } else {
                    format!("{}*{}", c, vars.join("*"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
