//! Order isomorphisms between finite posets, by backtracking over elements
//! pruned with a per-element signature.

use std::sync::Arc;

use crate::poset::{FinPoset, MonotoneMap};

/// `(elements strictly below, elements strictly above, level)`; preserved by
/// every order isomorphism.
pub type Signature = (usize, usize, usize);

pub fn signatures(p: &FinPoset) -> Vec<Signature> {
    let n = p.len();
    let levels = p.levels();
    (0..n)
        .map(|a| {
            let below = (0..n).filter(|&b| p.lt(b, a)).count();
            let above = (0..n).filter(|&b| p.lt(a, b)).count();
            (below, above, levels[a])
        })
        .collect()
}

/// Sorted multiset of signatures; equal for isomorphic posets.
pub fn invariant(p: &FinPoset) -> Vec<Signature> {
    let mut s = signatures(p);
    s.sort_unstable();
    s
}

struct Search<'a> {
    p: &'a FinPoset,
    q: &'a FinPoset,
    candidates: Vec<Vec<usize>>,
    assigned: Vec<usize>,
    used: Vec<bool>,
}

impl Search<'_> {
    fn new<'a>(p: &'a FinPoset, q: &'a FinPoset) -> Option<Search<'a>> {
        if p.len() != q.len() || p.comparabilities() != q.comparabilities() {
            return None;
        }
        let (sp, sq) = (signatures(p), signatures(q));
        let mut a = sp.clone();
        let mut b = sq.clone();
        a.sort_unstable();
        b.sort_unstable();
        if a != b {
            return None;
        }
        let candidates = sp
            .iter()
            .map(|s| (0..q.len()).filter(|&y| sq[y] == *s).collect())
            .collect();
        Some(Search {
            p,
            q,
            candidates,
            assigned: Vec::with_capacity(p.len()),
            used: vec![false; q.len()],
        })
    }

    fn consistent(&self, x: usize, y: usize) -> bool {
        self.assigned
            .iter()
            .enumerate()
            .all(|(a, &b)| self.p.leq(a, x) == self.q.leq(b, y) && self.p.leq(x, a) == self.q.leq(y, b))
    }

    /// Visits isomorphisms in lexicographic order of value tables; stops
    /// when `visit` returns false.
    fn run(&mut self, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        let x = self.assigned.len();
        if x == self.p.len() {
            return visit(&self.assigned);
        }
        for k in 0..self.candidates[x].len() {
            let y = self.candidates[x][k];
            if self.used[y] || !self.consistent(x, y) {
                continue;
            }
            self.used[y] = true;
            self.assigned.push(y);
            let go_on = self.run(visit);
            self.assigned.pop();
            self.used[y] = false;
            if !go_on {
                return false;
            }
        }
        true
    }
}

/// The first order isomorphism `p -> q` in lexicographic order of value
/// tables, if any.
pub fn find_isomorphism(p: &Arc<FinPoset>, q: &Arc<FinPoset>) -> Option<MonotoneMap> {
    let mut found = None;
    if let Some(mut search) = Search::new(p, q) {
        search.run(&mut |values| {
            found = Some(values.to_vec());
            false
        });
    }
    found.map(|values| MonotoneMap::new(Arc::clone(p), Arc::clone(q), values).expect("isomorphisms are monotone"))
}

pub fn are_isomorphic(p: &FinPoset, q: &FinPoset) -> bool {
    let mut found = false;
    if let Some(mut search) = Search::new(p, q) {
        search.run(&mut |_| {
            found = true;
            false
        });
    }
    found
}

/// Every order isomorphism `p -> q`, lexicographic in value tables.
pub fn isomorphisms(p: &Arc<FinPoset>, q: &Arc<FinPoset>) -> Vec<MonotoneMap> {
    let mut tables = Vec::new();
    if let Some(mut search) = Search::new(p, q) {
        search.run(&mut |values| {
            tables.push(values.to_vec());
            true
        });
    }
    tables
        .into_iter()
        .map(|values| MonotoneMap::new(Arc::clone(p), Arc::clone(q), values).expect("isomorphisms are monotone"))
        .collect()
}

pub fn automorphism_count(p: &FinPoset) -> usize {
    let mut count = 0;
    if let Some(mut search) = Search::new(p, p) {
        search.run(&mut |_| {
            count += 1;
            true
        });
    }
    count
}
