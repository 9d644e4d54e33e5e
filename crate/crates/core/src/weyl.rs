//! Weyl groups enumerated as signed permutations of positive roots.
//!
//! The canonical form of an element is its signed-permutation action on
//! the positive-root list: two elements are equal exactly when the
//! actions coincide. Elements are stored in length-then-lexicographic
//! order of their canonical reduced words, so id 0 is the identity and
//! the last id is the longest element. Each element carries two reduced
//! word witnesses: the lexicographically least one (greedy smallest left
//! descent) and an alternate one (greedy largest right descent).

use crate::error::{Error, Result};
use crate::root_system::RootSystem;
use std::collections::{BTreeSet, HashMap};
use std::sync::atomic::{AtomicU32, Ordering};

/// Default cap on group order during enumeration.
pub const DEFAULT_ELEMENT_BOUND: usize = 50_000;
/// Largest group order for which the full Bruhat bit matrix is
/// precomputed; larger groups answer queries by descent recursion.
pub const DEFAULT_BRUHAT_MATRIX_BOUND: usize = 2000;

static NEXT_GROUP_TAG: AtomicU32 = AtomicU32::new(1);

/// Handle to a group element; valid only with the group that created it.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Elem {
    tag: u32,
    id: u32,
}

impl Elem {
    /// Position in the group's length-lexicographic element order.
    pub fn id(&self) -> usize {
        self.id as usize
    }
}

pub struct WeylGroup {
    tag: u32,
    rs: RootSystem,
    actions: Vec<Vec<i32>>,
    words: Vec<Vec<u8>>,
    alt_words: Vec<Vec<u8>>,
    lengths: Vec<u32>,
    index: HashMap<Vec<i32>, u32>,
    right: Vec<u32>,
    longest: u32,
    reflections: Vec<u32>,
    bruhat_rows: Option<Vec<Vec<u64>>>,
}

fn compose(outer: &[i32], inner: &[i32]) -> Vec<i32> {
    inner
        .iter()
        .map(|&t| {
            let r = outer[(t.unsigned_abs() as usize) - 1];
            if t < 0 {
                -r
            } else {
                r
            }
        })
        .collect()
}

fn invert(act: &[i32]) -> Vec<i32> {
    let mut out = vec![0i32; act.len()];
    for (k, &t) in act.iter().enumerate() {
        let j = (t.unsigned_abs() as usize) - 1;
        out[j] = if t < 0 { -((k + 1) as i32) } else { (k + 1) as i32 };
    }
    out
}

fn inversions(act: &[i32]) -> u32 {
    act.iter().filter(|&&t| t < 0).count() as u32
}

impl WeylGroup {
    pub fn new(rs: RootSystem) -> Result<WeylGroup> {
        Self::with_bounds(rs, DEFAULT_ELEMENT_BOUND, DEFAULT_BRUHAT_MATRIX_BOUND)
    }

    pub fn with_bounds(rs: RootSystem, element_bound: usize, bruhat_matrix_bound: usize) -> Result<WeylGroup> {
        let rank = rs.rank();
        let m = rs.num_positive();
        let perms: Vec<Vec<i32>> = (0..rank).map(|i| rs.simple_perm(i)).collect();

        // Breadth-first enumeration by word length; first reach is at the
        // true length, which must match the inversion count.
        let mut raw: Vec<Vec<i32>> = vec![(1..=m as i32).collect()];
        let mut seen: HashMap<Vec<i32>, u32> = HashMap::new();
        seen.insert(raw[0].clone(), 0);
        let mut frontier: Vec<usize> = vec![0];
        let mut level = 0u32;
        while !frontier.is_empty() {
            level += 1;
            let mut next = Vec::new();
            for &w in &frontier {
                for p in &perms {
                    let na = compose(&raw[w], p);
                    if !seen.contains_key(&na) {
                        if inversions(&na) != level {
                            return Err(Error::Internal("BFS level does not match inversion count".into()));
                        }
                        seen.insert(na.clone(), raw.len() as u32);
                        next.push(raw.len());
                        raw.push(na);
                        if raw.len() > element_bound {
                            return Err(Error::GroupTooLarge(element_bound));
                        }
                    }
                }
            }
            frontier = next;
        }

        // Canonical words via greedy descents, then length-lex ordering.
        let canon_word = |act: &[i32]| -> Vec<u8> {
            let mut act = act.to_vec();
            let mut word = Vec::new();
            loop {
                let inv = invert(&act);
                match (0..rank).find(|&i| inv[i] < 0) {
                    None => break,
                    Some(i) => {
                        word.push(i as u8);
                        act = compose(&perms[i], &act);
                    }
                }
            }
            word
        };
        let alt_word = |act: &[i32]| -> Vec<u8> {
            let mut act = act.to_vec();
            let mut rev = Vec::new();
            while let Some(j) = (0..rank).rev().find(|&j| act[j] < 0) {
                rev.push(j as u8);
                act = compose(&act, &perms[j]);
            }
            rev.reverse();
            rev
        };

        let mut order: Vec<usize> = (0..raw.len()).collect();
        let words_raw: Vec<Vec<u8>> = raw.iter().map(|a| canon_word(a)).collect();
        order.sort_by(|&a, &b| {
            (words_raw[a].len(), &words_raw[a]).cmp(&(words_raw[b].len(), &words_raw[b]))
        });

        let mut actions = Vec::with_capacity(raw.len());
        let mut words = Vec::with_capacity(raw.len());
        let mut alt_words = Vec::with_capacity(raw.len());
        let mut lengths = Vec::with_capacity(raw.len());
        for &r in &order {
            actions.push(raw[r].clone());
            alt_words.push(alt_word(&raw[r]));
            lengths.push(words_raw[r].len() as u32);
            words.push(words_raw[r].clone());
        }
        let index: HashMap<Vec<i32>, u32> = actions.iter().enumerate().map(|(i, a)| (a.clone(), i as u32)).collect();

        let n = actions.len();
        let mut right = vec![0u32; n * rank];
        for id in 0..n {
            for (i, p) in perms.iter().enumerate() {
                right[id * rank + i] = index[&compose(&actions[id], p)];
            }
        }

        let longest = (n - 1) as u32;
        if lengths[n - 1] as usize != m || (n >= 2 && lengths[n - 2] as usize == m) {
            return Err(Error::Internal("longest element is not unique at full length".into()));
        }

        let mut reflections = Vec::with_capacity(m);
        for k in 0..m {
            let perm = rs.reflection_perm(k)?;
            let id = *index
                .get(&perm)
                .ok_or_else(|| Error::Internal(format!("reflection in root {k} not in group")))?;
            if lengths[id as usize] % 2 == 0 || perm[k] != -((k + 1) as i32) {
                return Err(Error::Internal(format!("bad reflection for root {k}")));
            }
            reflections.push(id);
        }

        let mut g = WeylGroup {
            tag: NEXT_GROUP_TAG.fetch_add(1, Ordering::Relaxed),
            rs,
            actions,
            words,
            alt_words,
            lengths,
            index,
            right,
            longest,
            reflections,
            bruhat_rows: None,
        };
        if n <= bruhat_matrix_bound {
            g.bruhat_rows = Some(g.build_bruhat_rows());
        }
        Ok(g)
    }

    fn build_bruhat_rows(&self) -> Vec<Vec<u64>> {
        let n = self.actions.len();
        let chunks = n.div_ceil(64);
        let mut rows: Vec<Vec<u64>> = Vec::with_capacity(n);
        for v in 0..n {
            let mut row = vec![0u64; chunks];
            if v == 0 {
                row[0] = 1;
            } else {
                let i = *self.words[v].last().unwrap() as usize;
                let vp = self.right_id(v, i);
                let prev = &rows[vp];
                for u in 0..n {
                    let up = if self.right_descent_id(u, i) { self.right_id(u, i) } else { u };
                    if prev[up / 64] >> (up % 64) & 1 == 1 {
                        row[u / 64] |= 1 << (u % 64);
                    }
                }
            }
            rows.push(row);
        }
        rows
    }

    fn check(&self, e: Elem) -> Result<usize> {
        if e.tag != self.tag {
            return Err(Error::GroupMismatch);
        }
        Ok(e.id as usize)
    }

    fn elem(&self, id: usize) -> Elem {
        Elem { tag: self.tag, id: id as u32 }
    }

    pub(crate) fn tag(&self) -> u32 {
        self.tag
    }

    pub(crate) fn right_id(&self, id: usize, i0: usize) -> usize {
        self.right[id * self.rs.rank() + i0] as usize
    }

    pub(crate) fn right_descent_id(&self, id: usize, i0: usize) -> bool {
        self.actions[id][i0] < 0
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn rank(&self) -> usize {
        self.rs.rank()
    }

    pub fn order(&self) -> usize {
        self.actions.len()
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.order()).map(|id| self.elem(id))
    }

    pub fn identity(&self) -> Elem {
        self.elem(0)
    }

    pub fn element(&self, id: usize) -> Elem {
        assert!(id < self.order(), "element id out of range");
        self.elem(id)
    }

    /// The simple reflection `s_i`, `i` 1-based.
    pub fn simple_element(&self, i: usize) -> Result<Elem> {
        if i == 0 || i > self.rank() {
            return Err(Error::Parse(format!("simple index {i} out of range 1..={}", self.rank())));
        }
        Ok(self.elem(self.right_id(0, i - 1)))
    }

    pub fn longest_element(&self) -> Elem {
        self.elem(self.longest as usize)
    }

    /// Reflection in the k-th positive root.
    pub fn reflection(&self, k: usize) -> Elem {
        self.elem(self.reflections[k] as usize)
    }

    pub fn length(&self, e: Elem) -> usize {
        assert_eq!(e.tag, self.tag, "group mismatch");
        self.lengths[e.id as usize] as usize
    }

    pub(crate) fn length_id(&self, id: usize) -> usize {
        self.lengths[id] as usize
    }

    /// Signed-permutation action on positive roots; entry `k` is
    /// `±(j+1)` when the element maps root `k` to `±` root `j`.
    pub fn action(&self, e: Elem) -> &[i32] {
        assert_eq!(e.tag, self.tag, "group mismatch");
        &self.actions[e.id as usize]
    }

    pub(crate) fn action_id(&self, id: usize) -> &[i32] {
        &self.actions[id]
    }

    /// Canonical reduced word, 1-based letters.
    pub fn word(&self, e: Elem) -> Vec<usize> {
        assert_eq!(e.tag, self.tag, "group mismatch");
        self.words[e.id as usize].iter().map(|&i| i as usize + 1).collect()
    }

    /// Alternate reduced word witness, 1-based letters.
    pub fn alt_word(&self, e: Elem) -> Vec<usize> {
        assert_eq!(e.tag, self.tag, "group mismatch");
        self.alt_words[e.id as usize].iter().map(|&i| i as usize + 1).collect()
    }

    pub fn word_string(&self, e: Elem) -> String {
        format_word(&self.word(e))
    }

    pub fn alt_word_string(&self, e: Elem) -> String {
        format_word(&self.alt_word(e))
    }

    /// Product via the right multiplication table, walking the canonical
    /// word of `b`; the result is automatically reduced.
    pub fn product(&self, a: Elem, b: Elem) -> Result<Elem> {
        let a = self.check(a)?;
        let b = self.check(b)?;
        let mut id = a;
        for &i in &self.words[b] {
            id = self.right_id(id, i as usize);
        }
        Ok(self.elem(id))
    }

    pub fn inverse(&self, a: Elem) -> Result<Elem> {
        let a = self.check(a)?;
        let inv = invert(&self.actions[a]);
        Ok(self.elem(self.index[&inv] as usize))
    }

    /// Multiplies out an arbitrary (not necessarily reduced) word,
    /// 1-based letters.
    pub fn element_from_word(&self, letters: &[usize]) -> Result<Elem> {
        let mut id = 0usize;
        for &i in letters {
            if i == 0 || i > self.rank() {
                return Err(Error::Parse(format!("simple index {i} out of range 1..={}", self.rank())));
            }
            id = self.right_id(id, i - 1);
        }
        Ok(self.elem(id))
    }

    /// Parses `e`, the empty string, or text like `s1s2s1`.
    pub fn parse_word(&self, s: &str) -> Result<Elem> {
        parse_word_letters(s)?
            .map(|letters| self.element_from_word(&letters))
            .unwrap_or_else(|| Ok(self.identity()))
    }

    /// Bruhat order test: precomputed bit matrix for small groups, else
    /// the descent recursion along the canonical word of `v`.
    pub fn bruhat_leq(&self, u: Elem, v: Elem) -> Result<bool> {
        let u = self.check(u)?;
        let v = self.check(v)?;
        Ok(self.bruhat_leq_ids(u, v))
    }

    pub(crate) fn bruhat_leq_ids(&self, mut u: usize, mut v: usize) -> bool {
        if let Some(rows) = &self.bruhat_rows {
            return rows[v][u / 64] >> (u % 64) & 1 == 1;
        }
        loop {
            if u == v {
                return true;
            }
            if self.lengths[u] >= self.lengths[v] {
                return false;
            }
            let i = *self.words[v].last().unwrap() as usize;
            v = self.right_id(v, i);
            if self.right_descent_id(u, i) {
                u = self.right_id(u, i);
            }
        }
    }

    #[cfg(test)]
    pub(crate) fn has_bruhat_matrix(&self) -> bool {
        self.bruhat_rows.is_some()
    }

    /// Parabolic data for a subset of simple-root indices, 1-based.
    pub fn parabolic(&self, subset: &[usize]) -> Result<ParabolicData> {
        let mut subset0 = BTreeSet::new();
        for &i in subset {
            if i == 0 || i > self.rank() {
                return Err(Error::Parse(format!("parabolic index {i} out of range 1..={}", self.rank())));
            }
            subset0.insert((i - 1) as u8);
        }
        ParabolicData::build(self, subset0)
    }
}

/// A standard parabolic subgroup W_P together with the minimal coset
/// representatives W^P, kept in length-lexicographic (= id) order.
pub struct ParabolicData {
    subset0: BTreeSet<u8>,
    wp: Vec<u32>,
    minreps: Vec<u32>,
    minrep_pos: HashMap<u32, usize>,
    dim: usize,
    longest_wp: u32,
}

impl ParabolicData {
    fn build(g: &WeylGroup, subset0: BTreeSet<u8>) -> Result<ParabolicData> {
        let mut wp = vec![0u32];
        let mut seen: BTreeSet<u32> = [0].into();
        let mut head = 0;
        while head < wp.len() {
            let w = wp[head] as usize;
            head += 1;
            for &i in &subset0 {
                let n = g.right_id(w, i as usize) as u32;
                if seen.insert(n) {
                    wp.push(n);
                }
            }
        }
        let mut wp: Vec<u32> = seen.into_iter().collect();
        wp.sort_unstable();
        let max_len = wp.iter().map(|&w| g.length_id(w as usize)).max().unwrap();
        let longest: Vec<u32> = wp.iter().copied().filter(|&w| g.length_id(w as usize) == max_len).collect();
        if longest.len() != 1 {
            return Err(Error::Internal("longest element of W_P is not unique".into()));
        }

        let minreps: Vec<u32> = (0..g.order() as u32)
            .filter(|&w| subset0.iter().all(|&i| !g.right_descent_id(w as usize, i as usize)))
            .collect();
        if minreps.len() * wp.len() != g.order() {
            return Err(Error::Internal("coset decomposition size mismatch".into()));
        }
        let minrep_pos = minreps.iter().enumerate().map(|(p, &w)| (w, p)).collect();
        Ok(ParabolicData {
            subset0,
            wp,
            minreps,
            minrep_pos,
            dim: g.rs.num_positive() - max_len,
            longest_wp: longest[0],
        })
    }

    pub fn subset(&self) -> Vec<usize> {
        self.subset0.iter().map(|&i| i as usize + 1).collect()
    }

    pub fn subgroup_order(&self) -> usize {
        self.wp.len()
    }

    pub fn subgroup_elements(&self, g: &WeylGroup) -> Vec<Elem> {
        self.wp.iter().map(|&id| g.elem(id as usize)).collect()
    }

    /// Minimal representatives in length-lexicographic order.
    pub fn minimal_reps(&self, g: &WeylGroup) -> Vec<Elem> {
        self.minreps.iter().map(|&id| g.elem(id as usize)).collect()
    }

    pub fn num_minimal_reps(&self) -> usize {
        self.minreps.len()
    }

    /// Complex dimension of the quotient space, the number of positive
    /// roots outside the subsystem.
    pub fn quotient_dim(&self) -> usize {
        self.dim
    }

    pub fn longest_subgroup_element(&self, g: &WeylGroup) -> Elem {
        g.elem(self.longest_wp as usize)
    }

    pub(crate) fn is_minrep_id(&self, id: usize) -> bool {
        self.minrep_pos.contains_key(&(id as u32))
    }

    pub(crate) fn minrep_ids(&self) -> &[u32] {
        &self.minreps
    }

    /// Minimal representative of the coset `wW_P`, found by stripping
    /// right descents inside the subset.
    pub fn coset_min_rep(&self, g: &WeylGroup, w: Elem) -> Result<Elem> {
        let mut id = g.check(w)?;
        loop {
            match self.subset0.iter().find(|&&i| g.right_descent_id(id, i as usize)) {
                None => return Ok(g.elem(id)),
                Some(&i) => id = g.right_id(id, i as usize),
            }
        }
    }
}

pub fn format_word(letters_1based: &[usize]) -> String {
    if letters_1based.is_empty() {
        return "e".to_string();
    }
    letters_1based.iter().map(|i| format!("s{i}")).collect()
}

/// Parses word text into 1-based letters; `None` means the identity
/// (`e` or empty).
pub fn parse_word_letters(s: &str) -> Result<Option<Vec<usize>>> {
    let s = s.trim();
    if s.is_empty() || s == "e" {
        return Ok(None);
    }
    let mut letters = Vec::new();
    let mut chars = s.chars().peekable();
    while let Some(c) = chars.next() {
        if c != 's' {
            return Err(Error::Parse(format!("expected 's' in word {s:?}")));
        }
        let mut digits = String::new();
        while let Some(&d) = chars.peek() {
            if d.is_ascii_digit() {
                digits.push(d);
                chars.next();
            } else {
                break;
            }
        }
        let i: usize = digits
            .parse()
            .map_err(|_| Error::Parse(format!("missing index after 's' in word {s:?}")))?;
        letters.push(i);
    }
    Ok(Some(letters))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn group(label: &str) -> WeylGroup {
        WeylGroup::new(RootSystem::from_label(label).unwrap()).unwrap()
    }

    #[test]
    fn group_orders() {
        for (label, order) in [("A1", 2), ("A2", 6), ("A3", 24), ("B2", 8), ("C3", 48), ("D4", 192), ("G2", 12), ("F4", 1152)] {
            assert_eq!(group(label).order(), order, "{label}");
        }
    }

    #[test]
    fn identity_is_id_zero_and_elements_sorted() {
        let g = group("B2");
        assert_eq!(g.length(g.identity()), 0);
        let mut prev: Option<(usize, Vec<usize>)> = None;
        for e in g.elements() {
            let key = (g.length(e), g.word(e));
            if let Some(p) = &prev {
                assert!(*p < key, "elements must be in length-lex order");
            }
            prev = Some(key);
        }
    }

    #[test]
    fn longest_element_a2() {
        let g = group("A2");
        let w0 = g.longest_element();
        assert_eq!(g.length(w0), 3);
        assert_eq!(g.word_string(w0), "s1s2s1");
        // Braid-equivalent words produce the same element.
        let a = g.parse_word("s1s2s1").unwrap();
        let b = g.parse_word("s2s1s2").unwrap();
        assert_eq!(a, b);
        assert_eq!(a, w0);
    }

    #[test]
    fn longest_element_b2_and_g2() {
        let g = group("B2");
        assert_eq!(g.length(g.longest_element()), 4);
        assert_eq!(g.parse_word("s1s2s1s2").unwrap(), g.parse_word("s2s1s2s1").unwrap());
        let g = group("G2");
        assert_eq!(g.length(g.longest_element()), 6);
        assert_eq!(g.parse_word("s1s2s1s2s1s2").unwrap(), g.parse_word("s2s1s2s1s2s1").unwrap());
    }

    #[test]
    fn word_witnesses_multiply_back() {
        for label in ["A3", "B2", "G2"] {
            let g = group(label);
            for e in g.elements() {
                let w = g.word(e);
                let a = g.alt_word(e);
                assert_eq!(w.len(), g.length(e));
                assert_eq!(a.len(), g.length(e), "alt word must be reduced");
                assert_eq!(g.element_from_word(&w).unwrap(), e);
                assert_eq!(g.element_from_word(&a).unwrap(), e);
            }
        }
    }

    #[test]
    fn product_and_inverse() {
        for label in ["A2", "B2"] {
            let g = group(label);
            for a in g.elements() {
                let inv = g.inverse(a).unwrap();
                assert_eq!(g.product(a, inv).unwrap(), g.identity());
                assert_eq!(g.length(inv), g.length(a));
                for b in g.elements() {
                    let p = g.product(a, b).unwrap();
                    assert!(g.length(p) <= g.length(a) + g.length(b));
                    assert_eq!((g.length(a) + g.length(b)) % 2, g.length(p) % 2);
                }
            }
        }
    }

    #[test]
    fn longest_element_involution_and_negation() {
        for label in ["A3", "B2", "G2"] {
            let g = group(label);
            let w0 = g.longest_element();
            assert_eq!(g.product(w0, w0).unwrap(), g.identity());
            assert!(g.action(w0).iter().all(|&t| t < 0));
        }
    }

    #[test]
    fn descents_match_root_signs() {
        let g = group("B2");
        for e in g.elements() {
            for i in 0..g.rank() {
                let s = g.simple_element(i + 1).unwrap();
                let ws = g.product(e, s).unwrap();
                let descent = g.action(e)[i] < 0;
                assert_eq!(descent, g.length(ws) + 1 == g.length(e));
            }
        }
    }

    #[test]
    fn group_mismatch_is_reported() {
        let g1 = group("A2");
        let g2 = group("A2");
        let foreign = g2.identity();
        assert!(matches!(g1.product(g1.identity(), foreign), Err(Error::GroupMismatch)));
        assert!(matches!(g1.bruhat_leq(foreign, g1.identity()), Err(Error::GroupMismatch)));
    }

    #[test]
    fn enumeration_bound_is_enforced() {
        let rs = RootSystem::from_label("B2").unwrap();
        assert!(matches!(WeylGroup::with_bounds(rs, 4, 0), Err(Error::GroupTooLarge(4))));
    }

    #[test]
    fn reflections_are_length_odd_involutions() {
        for label in ["A3", "G2"] {
            let g = group(label);
            for k in 0..g.root_system().num_positive() {
                let t = g.reflection(k);
                assert_eq!(g.product(t, t).unwrap(), g.identity());
                assert_eq!(g.length(t) % 2, 1);
                assert_eq!(g.action(t)[k], -((k + 1) as i32));
            }
        }
    }

    /// Independent subword-property oracle: u <= v iff some subword of a
    /// fixed reduced word for v multiplies out reduced to u.
    fn bruhat_subword_oracle(g: &WeylGroup, v: Elem) -> Vec<bool> {
        let mut reachable = vec![false; g.order()];
        reachable[0] = true;
        for &i in &g.word(v) {
            let snapshot: Vec<usize> = (0..g.order()).filter(|&x| reachable[x]).collect();
            for x in snapshot {
                let y = g.right_id(x, i - 1);
                if g.length_id(y) > g.length_id(x) {
                    reachable[y] = true;
                }
            }
        }
        reachable
    }

    #[test]
    fn bruhat_matches_subword_oracle() {
        for label in ["A2", "A3", "B2", "G2"] {
            let g = group(label);
            assert!(g.has_bruhat_matrix());
            for v in g.elements() {
                let oracle = bruhat_subword_oracle(&g, v);
                for u in g.elements() {
                    assert_eq!(g.bruhat_leq(u, v).unwrap(), oracle[u.id()], "{label}: {} <= {}", g.word_string(u), g.word_string(v));
                }
            }
        }
    }

    #[test]
    fn bruhat_recursion_matches_matrix() {
        let rs = RootSystem::from_label("A3").unwrap();
        let with_matrix = WeylGroup::new(RootSystem::from_label("A3").unwrap()).unwrap();
        let without = WeylGroup::with_bounds(rs, DEFAULT_ELEMENT_BOUND, 0).unwrap();
        assert!(!without.has_bruhat_matrix());
        for u in 0..with_matrix.order() {
            for v in 0..with_matrix.order() {
                assert_eq!(with_matrix.bruhat_leq_ids(u, v), without.bruhat_leq_ids(u, v));
            }
        }
    }

    #[test]
    fn bruhat_basics() {
        let g = group("A2");
        let e = g.identity();
        let s1 = g.parse_word("s1").unwrap();
        let s2 = g.parse_word("s2").unwrap();
        let s2s1 = g.parse_word("s2s1").unwrap();
        assert!(g.bruhat_leq(e, s2s1).unwrap());
        assert!(g.bruhat_leq(s1, s2s1).unwrap());
        assert!(!g.bruhat_leq(s1, s2).unwrap());
        for v in g.elements() {
            assert!(g.bruhat_leq(e, v).unwrap());
            assert!(g.bruhat_leq(v, g.longest_element()).unwrap());
        }
    }

    #[test]
    fn parabolic_quotient_a2() {
        let g = group("A2");
        let p = g.parabolic(&[2]).unwrap();
        assert_eq!(p.num_minimal_reps(), 3);
        assert_eq!(p.quotient_dim(), 2);
        let words: Vec<String> = p.minimal_reps(&g).iter().map(|&e| g.word_string(e)).collect();
        assert_eq!(words, vec!["e", "s1", "s2s1"]);
    }

    #[test]
    fn parabolic_edge_cases() {
        let g = group("B2");
        let full = g.parabolic(&[1, 2]).unwrap();
        assert_eq!(full.num_minimal_reps(), 1);
        assert_eq!(full.quotient_dim(), 0);
        let empty = g.parabolic(&[]).unwrap();
        assert_eq!(empty.num_minimal_reps(), g.order());
        assert_eq!(empty.quotient_dim(), 4);
        assert!(g.parabolic(&[3]).is_err());
    }

    #[test]
    fn coset_factorization_is_length_additive() {
        let g = group("A3");
        for subset in [vec![1usize, 3], vec![2], vec![1, 2]] {
            let p = g.parabolic(&subset).unwrap();
            for w in g.elements() {
                let rep = p.coset_min_rep(&g, w).unwrap();
                assert!(p.is_minrep_id(rep.id()));
                let tail = g.product(g.inverse(rep).unwrap(), w).unwrap();
                assert!(p.subgroup_elements(&g).contains(&tail));
                assert_eq!(g.length(rep) + g.length(tail), g.length(w));
                assert_eq!(p.coset_min_rep(&g, rep).unwrap(), rep);
            }
        }
    }

    #[test]
    fn minimal_reps_partition_the_group() {
        let g = group("B2");
        let p = g.parabolic(&[1]).unwrap();
        assert_eq!(p.num_minimal_reps() * p.subgroup_order(), g.order());
        let mut covered = std::collections::HashSet::new();
        for &rep in &p.minimal_reps(&g) {
            for &h in &p.subgroup_elements(&g) {
                covered.insert(g.product(rep, h).unwrap());
            }
        }
        assert_eq!(covered.len(), g.order());
    }

    #[test]
    fn word_parsing() {
        let g = group("A2");
        assert_eq!(g.parse_word("e").unwrap(), g.identity());
        assert_eq!(g.parse_word("").unwrap(), g.identity());
        assert_eq!(g.word_string(g.parse_word("s1s1").unwrap()), "e");
        assert_eq!(g.word_string(g.parse_word("s2s2s1").unwrap()), "s1");
        assert!(g.parse_word("s3").is_err());
        assert!(g.parse_word("s0").is_err());
        assert!(g.parse_word("x1").is_err());
        assert!(g.parse_word("s").is_err());
        assert_eq!(format_word(&[1, 2, 1]), "s1s2s1");
    }
}
