//! Finite partial orders and monotone maps.
//!
//! A [`FinPoset`] stores its full `≤` table (reflexive and transitive), so
//! comparisons are constant time. Covers are derived on demand.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PosetError {
    #[error("duplicate element `{0}`")]
    DuplicateElement(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("antisymmetry violated by the cycle {}", .cycle.join(" <= "))]
    AntisymmetryViolation { cycle: Vec<String> },
    #[error("relation is not a partial order: {0}")]
    NotPartialOrder(String),
    #[error("map is not monotone: {0}")]
    NotMonotone(String),
    #[error("cannot compose maps: {0}")]
    Composition(String),
    #[error("not a split-mono candidate: {0}")]
    NotSplitMonoCandidate(String),
}

/// A finite poset. Element order (the internal index order) is the
/// canonical order used by every enumeration.
#[derive(Debug, Clone)]
pub struct FinPoset {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    leq: Vec<bool>,
}

impl PartialEq for FinPoset {
    /// Same labelled elements and the same relation, regardless of the
    /// internal element order.
    fn eq(&self, other: &Self) -> bool {
        if self.len() != other.len() {
            return false;
        }
        let mut perm = Vec::with_capacity(self.len());
        for l in &self.labels {
            match other.index.get(l) {
                Some(&k) => perm.push(k),
                None => return false,
            }
        }
        (0..self.len()).all(|a| (0..self.len()).all(|b| self.leq(a, b) == other.leq(perm[a], perm[b])))
    }
}

impl Eq for FinPoset {}

/// Builds a poset from declared pairs `(lower, upper)`: elements are sorted
/// lexicographically and `≤` is the reflexive-transitive closure.
pub fn make_poset<S: AsRef<str>>(elements: &[S], pairs: &[(S, S)]) -> Result<FinPoset, PosetError> {
    let mut labels: Vec<String> = elements.iter().map(|e| e.as_ref().to_string()).collect();
    labels.sort();
    if let Some(w) = labels.windows(2).find(|w| w[0] == w[1]) {
        return Err(PosetError::DuplicateElement(w[0].clone()));
    }
    let index: HashMap<String, usize> = labels.iter().enumerate().map(|(i, l)| (l.clone(), i)).collect();
    let n = labels.len();
    let lookup = |s: &str| {
        index
            .get(s)
            .copied()
            .ok_or_else(|| PosetError::UnknownElement(s.to_string()))
    };
    let mut declared = vec![Vec::new(); n];
    let mut leq = vec![false; n * n];
    for i in 0..n {
        leq[i * n + i] = true;
    }
    for (a, b) in pairs {
        let (a, b) = (lookup(a.as_ref())?, lookup(b.as_ref())?);
        declared[a].push(b);
        leq[a * n + b] = true;
    }
    warshall(&mut leq, n);
    for a in 0..n {
        for b in a + 1..n {
            if leq[a * n + b] && leq[b * n + a] {
                let mut cycle: Vec<String> = path(&declared, a, b)
                    .into_iter()
                    .chain(path(&declared, b, a).into_iter().skip(1))
                    .map(|k| labels[k].clone())
                    .collect();
                if cycle.is_empty() {
                    cycle = vec![labels[a].clone(), labels[b].clone(), labels[a].clone()];
                }
                return Err(PosetError::AntisymmetryViolation { cycle });
            }
        }
    }
    Ok(FinPoset { labels, index, leq })
}

fn warshall(leq: &mut [bool], n: usize) {
    for k in 0..n {
        for i in 0..n {
            if leq[i * n + k] {
                for j in 0..n {
                    if leq[k * n + j] {
                        leq[i * n + j] = true;
                    }
                }
            }
        }
    }
}

/// Shortest path `from -> to` in an adjacency list, inclusive of both ends.
fn path(adj: &[Vec<usize>], from: usize, to: usize) -> Vec<usize> {
    let mut prev = vec![usize::MAX; adj.len()];
    let mut queue = VecDeque::from([from]);
    prev[from] = from;
    while let Some(v) = queue.pop_front() {
        if v == to {
            break;
        }
        for &w in &adj[v] {
            if prev[w] == usize::MAX {
                prev[w] = v;
                queue.push_back(w);
            }
        }
    }
    if prev[to] == usize::MAX {
        return Vec::new();
    }
    let mut out = vec![to];
    let mut cur = to;
    while cur != from {
        cur = prev[cur];
        out.push(cur);
    }
    out.reverse();
    out
}

impl FinPoset {
    /// Validates a full relation table, keeping the given element order.
    pub fn from_relation(labels: Vec<String>, leq: Vec<bool>) -> Result<Self, PosetError> {
        let n = labels.len();
        if leq.len() != n * n {
            return Err(PosetError::NotPartialOrder(format!(
                "relation table has {} entries, expected {}",
                leq.len(),
                n * n
            )));
        }
        let mut index = HashMap::with_capacity(n);
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(PosetError::DuplicateElement(l.clone()));
            }
        }
        let p = FinPoset { labels, index, leq };
        p.validate()?;
        Ok(p)
    }

    fn validate(&self) -> Result<(), PosetError> {
        let n = self.len();
        for a in 0..n {
            if !self.leq(a, a) {
                return Err(PosetError::NotPartialOrder(format!(
                    "`{}` is not <= itself",
                    self.labels[a]
                )));
            }
        }
        for a in 0..n {
            for b in 0..n {
                if a != b && self.leq(a, b) && self.leq(b, a) {
                    return Err(PosetError::AntisymmetryViolation {
                        cycle: vec![self.labels[a].clone(), self.labels[b].clone(), self.labels[a].clone()],
                    });
                }
                if !self.leq(a, b) {
                    continue;
                }
                for c in 0..n {
                    if self.leq(b, c) && !self.leq(a, c) {
                        return Err(PosetError::NotPartialOrder(format!(
                            "not transitive at {} <= {} <= {}",
                            self.labels[a], self.labels[b], self.labels[c]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn empty() -> Self {
        FinPoset {
            labels: Vec::new(),
            index: HashMap::new(),
            leq: Vec::new(),
        }
    }

    /// The ordinal `[n]`, elements `"0" < "1" < ... < "n"` in numeric order.
    pub fn ordinal(n: usize) -> Self {
        Self::chain((0..=n).map(|k| k.to_string()).collect())
    }

    /// Total order on the labels in the given order.
    pub fn chain(labels: Vec<String>) -> Self {
        let n = labels.len();
        let leq = (0..n * n).map(|k| k / n <= k % n).collect();
        Self::from_relation(labels, leq).expect("a chain is a partial order")
    }

    /// Discrete order on the labels.
    pub fn antichain(labels: Vec<String>) -> Self {
        let n = labels.len();
        let leq = (0..n * n).map(|k| k / n == k % n).collect();
        Self::from_relation(labels, leq).expect("an antichain is a partial order")
    }

    /// Product order, elements `(p,q)` ordered lexicographically by index.
    pub fn product(p: &FinPoset, q: &FinPoset) -> Self {
        let (np, nq) = (p.len(), q.len());
        let n = np * nq;
        let labels = (0..n)
            .map(|k| format!("({},{})", p.labels[k / nq], q.labels[k % nq]))
            .collect();
        let mut leq = vec![false; n * n];
        for a in 0..n {
            for b in 0..n {
                leq[a * n + b] = p.leq(a / nq, b / nq) && q.leq(a % nq, b % nq);
            }
        }
        Self::from_relation(labels, leq).expect("a product of posets is a poset")
    }

    /// The same order with labels rewritten by `rename`.
    pub fn relabel(&self, mut rename: impl FnMut(&str) -> String) -> Result<Self, PosetError> {
        let labels = self.labels.iter().map(|l| rename(l)).collect();
        Self::from_relation(labels, self.leq.clone())
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.len() + b]
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq(a, b)
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.leq(a, b) || self.leq(b, a)
    }

    /// Row-major `≤` table.
    pub fn relation(&self) -> &[bool] {
        &self.leq
    }

    pub fn is_total(&self) -> bool {
        (0..self.len()).all(|a| (0..self.len()).all(|b| self.comparable(a, b)))
    }

    /// Number of comparable ordered pairs `a <= b`, the diagonal included.
    pub fn comparabilities(&self) -> usize {
        self.leq.iter().filter(|&&b| b).count()
    }

    /// Length (number of steps) of the longest strict chain ending at each element.
    pub fn levels(&self) -> Vec<usize> {
        let n = self.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&a| (0..n).filter(|&b| self.lt(b, a)).count());
        let mut level = vec![0; n];
        for &a in &order {
            level[a] = (0..n)
                .filter(|&b| self.lt(b, a))
                .map(|b| level[b] + 1)
                .max()
                .unwrap_or(0);
        }
        level
    }

    /// Longest strict chain length in steps; 0 for empty and discrete posets.
    pub fn height(&self) -> usize {
        self.levels().into_iter().max().unwrap_or(0)
    }

    /// Hasse diagram: pairs `(a, b)` with `a < b` and nothing strictly between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if self.lt(a, b) && !(0..n).any(|c| self.lt(a, c) && self.lt(c, b)) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// All `(n+1)`-tuples `x_0 <= ... <= x_n` (strictly increasing when
    /// `strict`), lexicographic in element order.
    pub fn chains(&self, n: usize, strict: bool) -> Vec<Chain> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(n + 1);
        self.chains_rec(n + 1, strict, &mut cur, &mut out);
        out
    }

    fn chains_rec(&self, len: usize, strict: bool, cur: &mut Vec<usize>, out: &mut Vec<Chain>) {
        if cur.len() == len {
            out.push(Chain { points: cur.clone() });
            return;
        }
        for x in 0..self.len() {
            if let Some(&last) = cur.last() {
                let ok = if strict { self.lt(last, x) } else { self.leq(last, x) };
                if !ok {
                    continue;
                }
            }
            cur.push(x);
            self.chains_rec(len, strict, cur, out);
            cur.pop();
        }
    }

    /// Linear extensions as element sequences (least first), in lexicographic
    /// order of the sequences.
    pub fn linear_extension_orders(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut below: Vec<usize> = (0..n).map(|a| (0..n).filter(|&b| self.lt(b, a)).count()).collect();
        let mut used = vec![false; n];
        let mut cur = Vec::with_capacity(n);
        let mut out = Vec::new();
        self.extensions_rec(&mut below, &mut used, &mut cur, &mut out);
        out
    }

    fn extensions_rec(&self, below: &mut [usize], used: &mut [bool], cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let n = self.len();
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for x in 0..n {
            if used[x] || below[x] != 0 {
                continue;
            }
            used[x] = true;
            cur.push(x);
            for (y, count) in below.iter_mut().enumerate() {
                if self.lt(x, y) {
                    *count -= 1;
                }
            }
            self.extensions_rec(below, used, cur, out);
            for (y, count) in below.iter_mut().enumerate() {
                if self.lt(x, y) {
                    *count += 1;
                }
            }
            cur.pop();
            used[x] = false;
        }
    }

    /// Every linear extension, as a total order on the same labelled
    /// elements (element order unchanged).
    pub fn linear_extensions(&self) -> Vec<FinPoset> {
        let n = self.len();
        self.linear_extension_orders()
            .into_iter()
            .map(|seq| {
                let mut rank = vec![0; n];
                for (r, &x) in seq.iter().enumerate() {
                    rank[x] = r;
                }
                let leq = (0..n * n).map(|k| rank[k / n] <= rank[k % n]).collect();
                FinPoset::from_relation(self.labels.clone(), leq).expect("linear extensions are total orders")
            })
            .collect()
    }

    /// Pointwise conjunction of all linear extensions' relation tables.
    pub fn intersection_of_extensions(&self) -> Vec<bool> {
        let n = self.len();
        let mut acc = vec![true; n * n];
        for seq in self.linear_extension_orders() {
            let mut rank = vec![0; n];
            for (r, &x) in seq.iter().enumerate() {
                rank[x] = r;
            }
            for (k, slot) in acc.iter_mut().enumerate() {
                *slot &= rank[k / n] <= rank[k % n];
            }
        }
        acc
    }

    /// Monotone maps `self -> target`, lexicographic in value tables.
    pub fn monotone_maps_to(self: &Arc<Self>, target: &Arc<FinPoset>) -> Vec<MonotoneMap> {
        monotone_tables(self, target)
            .into_iter()
            .map(|values| MonotoneMap {
                source: Arc::clone(self),
                target: Arc::clone(target),
                values,
            })
            .collect()
    }

    pub fn describe(&self) -> String {
        let covers: Vec<String> = self
            .covers()
            .into_iter()
            .map(|(a, b)| format!("{}<{}", self.labels[a], self.labels[b]))
            .collect();
        format!("{{{}}} covers [{}]", self.labels.join(","), covers.join(", "))
    }
}

impl fmt::Display for FinPoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

/// Value tables of all monotone maps `source -> target`.
pub fn monotone_tables(source: &FinPoset, target: &FinPoset) -> Vec<Vec<usize>> {
    let n = source.len();
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    fn go(source: &FinPoset, target: &FinPoset, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let a = cur.len();
        if a == source.len() {
            out.push(cur.clone());
            return;
        }
        'value: for t in 0..target.len() {
            for (b, &tb) in cur.iter().enumerate() {
                if (source.leq(b, a) && !target.leq(tb, t)) || (source.leq(a, b) && !target.leq(t, tb)) {
                    continue 'value;
                }
            }
            cur.push(t);
            go(source, target, cur, out);
            cur.pop();
        }
    }
    go(source, target, &mut cur, &mut out);
    out
}

/// A weakly increasing tuple of element indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Chain {
    pub points: Vec<usize>,
}

impl Chain {
    /// Strictly increasing, i.e. injective as a map `[n] -> P`.
    pub fn is_strict(&self) -> bool {
        self.points.windows(2).all(|w| w[0] != w[1])
    }

    /// The chain's length `n` (one less than its number of points).
    pub fn length(&self) -> usize {
        self.points.len() - 1
    }

    pub fn display(&self, poset: &FinPoset) -> String {
        tuple_label(self.points.iter().map(|&k| poset.label(k)))
    }
}

/// `"x"` for a single point, `"(x0,x1,...)"` otherwise.
pub fn tuple_label<'a>(parts: impl Iterator<Item = &'a str>) -> String {
    let parts: Vec<&str> = parts.collect();
    if parts.len() == 1 {
        parts[0].to_string()
    } else {
        format!("({})", parts.join(","))
    }
}

/// An order-preserving map between finite posets, stored as a value table
/// over element indices.
#[derive(Debug, Clone)]
pub struct MonotoneMap {
    source: Arc<FinPoset>,
    target: Arc<FinPoset>,
    values: Vec<usize>,
}

impl PartialEq for MonotoneMap {
    fn eq(&self, other: &Self) -> bool {
        same_poset(&self.source, &other.source)
            && same_poset(&self.target, &other.target)
            && self.values == other.values
    }
}

impl Eq for MonotoneMap {}

fn same_poset(a: &Arc<FinPoset>, b: &Arc<FinPoset>) -> bool {
    Arc::ptr_eq(a, b) || (a.labels == b.labels && a.leq == b.leq)
}

impl MonotoneMap {
    pub fn new(source: Arc<FinPoset>, target: Arc<FinPoset>, values: Vec<usize>) -> Result<Self, PosetError> {
        if values.len() != source.len() {
            return Err(PosetError::NotMonotone(format!(
                "{} values for {} elements",
                values.len(),
                source.len()
            )));
        }
        if let Some(&v) = values.iter().find(|&&v| v >= target.len()) {
            return Err(PosetError::NotMonotone(format!("value index {v} outside the target")));
        }
        for a in 0..source.len() {
            for b in 0..source.len() {
                if source.leq(a, b) && !target.leq(values[a], values[b]) {
                    return Err(PosetError::NotMonotone(format!(
                        "{} <= {} but {} is not <= {}",
                        source.label(a),
                        source.label(b),
                        target.label(values[a]),
                        target.label(values[b])
                    )));
                }
            }
        }
        Ok(Self { source, target, values })
    }

    /// Builds a map from `(source label, target label)` pairs.
    pub fn from_labels(
        source: Arc<FinPoset>,
        target: Arc<FinPoset>,
        pairs: &[(&str, &str)],
    ) -> Result<Self, PosetError> {
        let mut values = vec![usize::MAX; source.len()];
        for (a, b) in pairs {
            let ia = source
                .index_of(a)
                .ok_or_else(|| PosetError::UnknownElement(a.to_string()))?;
            let ib = target
                .index_of(b)
                .ok_or_else(|| PosetError::UnknownElement(b.to_string()))?;
            values[ia] = ib;
        }
        if let Some(k) = values.iter().position(|&v| v == usize::MAX) {
            return Err(PosetError::NotMonotone(format!(
                "no image given for `{}`",
                source.label(k)
            )));
        }
        Self::new(source, target, values)
    }

    pub fn identity(p: Arc<FinPoset>) -> Self {
        let values = (0..p.len()).collect();
        Self {
            source: Arc::clone(&p),
            target: p,
            values,
        }
    }

    pub fn source(&self) -> &Arc<FinPoset> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FinPoset> {
        &self.target
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn apply(&self, a: usize) -> usize {
        self.values[a]
    }

    /// `self ∘ inner`.
    pub fn after(&self, inner: &MonotoneMap) -> Result<MonotoneMap, PosetError> {
        if !same_poset(&inner.target, &self.source) {
            return Err(PosetError::Composition(format!(
                "inner target {} differs from outer source {}",
                inner.target, self.source
            )));
        }
        Ok(MonotoneMap {
            source: Arc::clone(&inner.source),
            target: Arc::clone(&self.target),
            values: inner.values.iter().map(|&v| self.values[v]).collect(),
        })
    }

    pub fn is_identity(&self) -> bool {
        same_poset(&self.source, &self.target) && self.values.iter().enumerate().all(|(i, &v)| i == v)
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.target.len()];
        self.values.iter().all(|&v| !std::mem::replace(&mut seen[v], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.target.len()];
        for &v in &self.values {
            seen[v] = true;
        }
        seen.into_iter().all(|b| b)
    }

    /// `a <= b` iff `f(a) <= f(b)`.
    pub fn is_order_embedding(&self) -> bool {
        let n = self.source.len();
        (0..n).all(|a| (0..n).all(|b| self.source.leq(a, b) == self.target.leq(self.values[a], self.values[b])))
    }

    /// Bijective with monotone inverse.
    pub fn is_isomorphism(&self) -> bool {
        self.source.len() == self.target.len() && self.is_injective() && self.is_order_embedding()
    }

    pub fn inverse(&self) -> Option<MonotoneMap> {
        if !self.is_isomorphism() {
            return None;
        }
        let mut values = vec![0; self.target.len()];
        for (a, &b) in self.values.iter().enumerate() {
            values[b] = a;
        }
        Some(MonotoneMap {
            source: Arc::clone(&self.target),
            target: Arc::clone(&self.source),
            values,
        })
    }

    pub fn describe(&self) -> String {
        let parts: Vec<String> = self
            .values
            .iter()
            .enumerate()
            .map(|(a, &b)| format!("{}->{}", self.source.label(a), self.target.label(b)))
            .collect();
        parts.join(" ")
    }
}

/// A retraction `g` with `g ∘ f = id` for an injective monotone `f : N -> T`
/// between total orders, `N` non-empty. With `N = {x_0 < ... < x_n}`,
/// `g(t) = x_0` below `f(x_0)`, `x_i` on `[f(x_i), f(x_{i+1}))` and `x_n` from
/// `f(x_n)` up.
pub fn split_retraction(f: &MonotoneMap) -> Result<MonotoneMap, PosetError> {
    let (source, target) = (f.source(), f.target());
    let bad = |msg: &str| Err(PosetError::NotSplitMonoCandidate(msg.to_string()));
    if source.is_empty() {
        return bad("source is empty");
    }
    if !source.is_total() {
        return bad("source is not totally ordered");
    }
    if !target.is_total() {
        return bad("target is not totally ordered");
    }
    if !f.is_injective() {
        return bad("map is not injective");
    }
    // x_0 < ... < x_n in the source's order
    let mut xs: Vec<usize> = (0..source.len()).collect();
    xs.sort_by(|&a, &b| {
        if a == b {
            std::cmp::Ordering::Equal
        } else if source.leq(a, b) {
            std::cmp::Ordering::Less
        } else {
            std::cmp::Ordering::Greater
        }
    });
    let values = (0..target.len())
        .map(|t| {
            let mut g = xs[0];
            for &x in &xs {
                if target.leq(f.apply(x), t) {
                    g = x;
                }
            }
            g
        })
        .collect();
    MonotoneMap::new(Arc::clone(target), Arc::clone(source), values)
}
