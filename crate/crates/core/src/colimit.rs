//! Colimits of finite diagrams of posets.
//!
//! The colimit in Pos is computed in three stages:
//!
//! 1. the colimit of underlying sets: the disjoint union of the node carriers
//!    modulo `x ~ f(x)` for every edge map `f` (union-find);
//! 2. the smallest preorder on those classes making every node's order
//!    monotone (transitive closure by iterated boolean squaring);
//! 3. the quotient by the strongly connected components of that preorder.
//!
//! Colimits in Δ and in total orders are the Pos colimit when its apex lands
//! in the subcategory, and do not exist otherwise.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;
use petgraph::unionfind::UnionFind;
use rayon::prelude::*;
use thiserror::Error;

use crate::corpus::posets_of_size;
use crate::poset::{FinPoset, MonotoneMap, PosetError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColimitError {
    #[error("duplicate node `{0}`")]
    DuplicateNode(String),
    #[error("duplicate edge `{0}`")]
    DuplicateEdge(String),
    #[error("unknown node `{0}`")]
    UnknownNode(String),
    #[error("edge `{edge}`: {source}")]
    BadEdge { edge: String, source: PosetError },
    #[error("node `{node}` is not an object of {category}: {reason}")]
    WrongSubcategory {
        node: String,
        category: &'static str,
        reason: String,
    },
    #[error("invalid cocone: {0}")]
    InvalidCocone(String),
}

#[derive(Debug, Clone)]
pub struct DiagramNode {
    pub id: String,
    pub poset: Arc<FinPoset>,
}

#[derive(Debug, Clone)]
pub struct DiagramEdge {
    pub id: String,
    pub source: usize,
    pub target: usize,
    pub map: MonotoneMap,
}

/// A finite multidigraph of posets and monotone maps, read as a diagram over
/// the free category on its edges.
#[derive(Debug, Clone, Default)]
pub struct PosetDiagram {
    pub name: String,
    nodes: Vec<DiagramNode>,
    edges: Vec<DiagramEdge>,
    node_index: HashMap<String, usize>,
}

impl PosetDiagram {
    pub fn new(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            ..Self::default()
        }
    }

    /// Adds a node; panics on a duplicate id (use [`try_add_node`](Self::try_add_node)
    /// for untrusted input).
    pub fn add_node(&mut self, id: impl Into<String>, poset: Arc<FinPoset>) -> usize {
        self.try_add_node(id, poset).expect("fresh node id")
    }

    pub fn try_add_node(&mut self, id: impl Into<String>, poset: Arc<FinPoset>) -> Result<usize, ColimitError> {
        let id = id.into();
        if self.node_index.contains_key(&id) {
            return Err(ColimitError::DuplicateNode(id));
        }
        let k = self.nodes.len();
        self.node_index.insert(id.clone(), k);
        self.nodes.push(DiagramNode { id, poset });
        Ok(k)
    }

    pub fn add_edge(
        &mut self,
        id: impl Into<String>,
        source: usize,
        target: usize,
        values: Vec<usize>,
    ) -> Result<usize, ColimitError> {
        let id = id.into();
        for end in [source, target] {
            if end >= self.nodes.len() {
                return Err(ColimitError::UnknownNode(format!("#{end}")));
            }
        }
        let map = MonotoneMap::new(
            Arc::clone(&self.nodes[source].poset),
            Arc::clone(&self.nodes[target].poset),
            values,
        )
        .map_err(|e| ColimitError::BadEdge {
            edge: id.clone(),
            source: e,
        })?;
        self.edges.push(DiagramEdge {
            id,
            source,
            target,
            map,
        });
        Ok(self.edges.len() - 1)
    }

    pub fn nodes(&self) -> &[DiagramNode] {
        &self.nodes
    }

    pub fn edges(&self) -> &[DiagramEdge] {
        &self.edges
    }

    pub fn node_index(&self, id: &str) -> Option<usize> {
        self.node_index.get(id).copied()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// At least two nodes and no edges: a coproduct diagram.
    pub fn is_discrete(&self) -> bool {
        self.nodes.len() >= 2 && self.edges.is_empty()
    }

    fn offsets(&self) -> (Vec<usize>, usize) {
        let mut offsets = Vec::with_capacity(self.nodes.len());
        let mut total = 0;
        for n in &self.nodes {
            offsets.push(total);
            total += n.poset.len();
        }
        (offsets, total)
    }
}

/// A cocone under a diagram: one leg per node, in node order.
#[derive(Debug, Clone)]
pub struct Cocone {
    pub apex: Arc<FinPoset>,
    pub legs: Vec<MonotoneMap>,
}

impl Cocone {
    /// Checks leg endpoints and `leg(target) ∘ f = leg(source)` for every edge.
    pub fn check(&self, diagram: &PosetDiagram) -> Result<(), ColimitError> {
        if self.legs.len() != diagram.nodes.len() {
            return Err(ColimitError::InvalidCocone(format!(
                "{} legs for {} nodes",
                self.legs.len(),
                diagram.nodes.len()
            )));
        }
        for (leg, node) in self.legs.iter().zip(&diagram.nodes) {
            if **leg.source() != *node.poset || leg.source().labels() != node.poset.labels() {
                return Err(ColimitError::InvalidCocone(format!(
                    "leg at `{}` has the wrong source",
                    node.id
                )));
            }
            if leg.target().labels() != self.apex.labels() || leg.target().relation() != self.apex.relation() {
                return Err(ColimitError::InvalidCocone(format!(
                    "leg at `{}` misses the apex",
                    node.id
                )));
            }
        }
        for e in &diagram.edges {
            let (src, dst) = (&self.legs[e.source], &self.legs[e.target]);
            for x in 0..e.map.source().len() {
                if dst.apply(e.map.apply(x)) != src.apply(x) {
                    return Err(ColimitError::InvalidCocone(format!(
                        "does not commute over edge `{}` at `{}`",
                        e.id,
                        e.map.source().label(x)
                    )));
                }
            }
        }
        Ok(())
    }

    /// Every apex element is hit by some leg.
    pub fn jointly_surjective(&self) -> bool {
        let mut hit = vec![false; self.apex.len()];
        for leg in &self.legs {
            for &v in leg.values() {
                hit[v] = true;
            }
        }
        hit.into_iter().all(|h| h)
    }

    /// The map out of the apex determined by `image(node, element)`, which
    /// must be constant on every fibre of the legs, defined on every apex
    /// element and monotone.
    pub fn factor_through(
        &self,
        target: &Arc<FinPoset>,
        mut image: impl FnMut(usize, usize) -> usize,
    ) -> Result<MonotoneMap, String> {
        let mut values: Vec<Option<usize>> = vec![None; self.apex.len()];
        for (k, leg) in self.legs.iter().enumerate() {
            for (e, &a) in leg.values().iter().enumerate() {
                let v = image(k, e);
                match values[a] {
                    Some(w) if w != v => {
                        return Err(format!(
                            "apex element `{}` would go to both `{}` and `{}`",
                            self.apex.label(a),
                            target.label(w),
                            target.label(v)
                        ))
                    }
                    _ => values[a] = Some(v),
                }
            }
        }
        let values = values
            .into_iter()
            .enumerate()
            .map(|(a, v)| v.ok_or_else(|| format!("apex element `{}` is not hit by any leg", self.apex.label(a))))
            .collect::<Result<Vec<_>, _>>()?;
        MonotoneMap::new(Arc::clone(&self.apex), Arc::clone(target), values).map_err(|e| e.to_string())
    }

    /// The same cocone with one extra element adjoined to the apex,
    /// incomparable to everything else.
    pub fn with_isolated_point(&self, label: &str) -> Cocone {
        let n = self.apex.len();
        let mut labels = self.apex.labels().to_vec();
        labels.push(label.to_string());
        let m = n + 1;
        let leq = (0..m * m)
            .map(|k| {
                let (a, b) = (k / m, k % m);
                if a < n && b < n {
                    self.apex.leq(a, b)
                } else {
                    a == b
                }
            })
            .collect();
        let apex = Arc::new(FinPoset::from_relation(labels, leq).expect("isolated point keeps a partial order"));
        let legs = self
            .legs
            .iter()
            .map(|l| {
                MonotoneMap::new(Arc::clone(l.source()), Arc::clone(&apex), l.values().to_vec()).expect("same values")
            })
            .collect();
        Cocone { apex, legs }
    }
}

/// Sizes seen along the three stages of [`colimit_pos`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ColimitTrace {
    pub points: usize,
    pub set_classes: usize,
    pub apex_size: usize,
}

impl fmt::Display for ColimitTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} points -> {} classes in Set -> {} elements after condensation",
            self.points, self.set_classes, self.apex_size
        )
    }
}

/// Stage 1: class index of every point of the disjoint union, numbered in
/// order of first appearance.
fn set_classes(diagram: &PosetDiagram) -> (Vec<usize>, usize) {
    let (offsets, total) = diagram.offsets();
    let mut uf = UnionFind::<usize>::new(total);
    for e in &diagram.edges {
        for (x, &y) in e.map.values().iter().enumerate() {
            uf.union(offsets[e.source] + x, offsets[e.target] + y);
        }
    }
    let mut class_of_root = HashMap::new();
    let mut class = Vec::with_capacity(total);
    for p in 0..total {
        let root = uf.find_mut(p);
        let next = class_of_root.len();
        class.push(*class_of_root.entry(root).or_insert(next));
    }
    let count = class_of_root.len();
    (class, count)
}

/// Square boolean matrix with bit-packed rows.
#[derive(Clone, PartialEq, Eq)]
struct BitMatrix {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl BitMatrix {
    fn identity(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        let mut m = Self {
            n,
            words,
            bits: vec![0; n * words],
        };
        for i in 0..n {
            m.set(i, i);
        }
        m
    }

    fn set(&mut self, i: usize, j: usize) {
        self.bits[i * self.words + j / 64] |= 1 << (j % 64);
    }

    fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    fn row(&self, i: usize) -> &[u64] {
        &self.bits[i * self.words..(i + 1) * self.words]
    }

    /// `self ∪ self·self`.
    fn square_step(&self) -> Self {
        let mut out = self.clone();
        for i in 0..self.n {
            for k in 0..self.n {
                if self.get(i, k) {
                    for w in 0..self.words {
                        out.bits[i * self.words + w] |= self.row(k)[w];
                    }
                }
            }
        }
        out
    }

    /// Iterated squaring to the reflexive-transitive closure.
    fn close(mut self) -> Self {
        loop {
            let next = self.square_step();
            if next == self {
                return self;
            }
            self = next;
        }
    }
}

/// Transitive closure of a row-major boolean relation on `n` points, by
/// iterated squaring. The diagonal is added.
pub fn transitive_closure(relation: &[bool], n: usize) -> Vec<bool> {
    let mut m = BitMatrix::identity(n);
    for (k, &b) in relation.iter().enumerate() {
        if b {
            m.set(k / n, k % n);
        }
    }
    let m = m.close();
    (0..n * n).map(|k| m.get(k / n, k % n)).collect()
}

/// Strongly connected components of a relation, numbered by their first
/// point. Returns the component of each point and the component count.
pub fn condense(relation: &[bool], n: usize) -> (Vec<usize>, usize) {
    let mut graph = DiGraph::<(), ()>::with_capacity(n, 0);
    let ids: Vec<_> = (0..n).map(|_| graph.add_node(())).collect();
    for (k, &b) in relation.iter().enumerate() {
        if b && k / n != k % n {
            graph.add_edge(ids[k / n], ids[k % n], ());
        }
    }
    let mut raw = vec![0; n];
    for (c, comp) in tarjan_scc(&graph).into_iter().enumerate() {
        for v in comp {
            raw[v.index()] = c;
        }
    }
    let mut renumber = HashMap::new();
    let component = raw
        .into_iter()
        .map(|c| {
            let next = renumber.len();
            *renumber.entry(c).or_insert(next)
        })
        .collect();
    (component, renumber.len())
}

/// Colimit in Pos.
pub fn colimit_pos(diagram: &PosetDiagram) -> Cocone {
    colimit_pos_traced(diagram).0
}

pub fn colimit_pos_traced(diagram: &PosetDiagram) -> (Cocone, ColimitTrace) {
    let (offsets, total) = diagram.offsets();
    let (class, count) = set_classes(diagram);

    let mut pre = BitMatrix::identity(count);
    for (node, &off) in diagram.nodes.iter().zip(&offsets) {
        let p = &node.poset;
        for a in 0..p.len() {
            for b in 0..p.len() {
                if a != b && p.leq(a, b) {
                    pre.set(class[off + a], class[off + b]);
                }
            }
        }
    }
    let pre = pre.close();
    let flat: Vec<bool> = (0..count * count).map(|k| pre.get(k / count, k % count)).collect();
    let (component, size) = condense(&flat, count);

    let mut rep = vec![usize::MAX; size];
    for (c, &comp) in component.iter().enumerate() {
        if rep[comp] == usize::MAX {
            rep[comp] = c;
        }
    }
    let leq = (0..size * size)
        .map(|k| pre.get(rep[k / size], rep[k % size]))
        .collect();
    let labels = apex_labels(diagram, &offsets, &class, &component, size);
    let apex = Arc::new(FinPoset::from_relation(labels, leq).expect("condensed preorder is a partial order"));
    let legs = diagram
        .nodes
        .iter()
        .zip(&offsets)
        .map(|(node, &off)| {
            let values = (0..node.poset.len()).map(|a| component[class[off + a]]).collect();
            MonotoneMap::new(Arc::clone(&node.poset), Arc::clone(&apex), values).expect("legs are monotone")
        })
        .collect();
    let trace = ColimitTrace {
        points: total,
        set_classes: count,
        apex_size: size,
    };
    (Cocone { apex, legs }, trace)
}

/// Labels apex elements by the element label of their first point, or by
/// `node.element` when plain labels would collide.
fn apex_labels(
    diagram: &PosetDiagram,
    offsets: &[usize],
    class: &[usize],
    component: &[usize],
    size: usize,
) -> Vec<String> {
    let mut first: Vec<Option<(usize, usize)>> = vec![None; size];
    for (k, (node, &off)) in diagram.nodes.iter().zip(offsets).enumerate() {
        for a in 0..node.poset.len() {
            let c = component[class[off + a]];
            if first[c].is_none() {
                first[c] = Some((k, a));
            }
        }
    }
    let first: Vec<(usize, usize)> = first.into_iter().map(|f| f.expect("every class has a point")).collect();
    let plain: Vec<String> = first
        .iter()
        .map(|&(k, a)| diagram.nodes[k].poset.label(a).to_string())
        .collect();
    if distinct(&plain) {
        return plain;
    }
    let qualified: Vec<String> = first
        .iter()
        .map(|&(k, a)| format!("{}.{}", diagram.nodes[k].id, diagram.nodes[k].poset.label(a)))
        .collect();
    if distinct(&qualified) {
        return qualified;
    }
    qualified
        .into_iter()
        .enumerate()
        .map(|(i, l)| format!("{l}#{i}"))
        .collect()
}

fn distinct(labels: &[String]) -> bool {
    let mut seen = std::collections::HashSet::with_capacity(labels.len());
    labels.iter().all(|l| seen.insert(l.as_str()))
}

/// Colimit of underlying sets (stage 1 only); the apex carries the discrete
/// order. Node posets are read as sets.
pub fn colimit_set(diagram: &PosetDiagram) -> Cocone {
    let (offsets, _) = diagram.offsets();
    let (class, count) = set_classes(diagram);
    let identity: Vec<usize> = (0..count).collect();
    let labels = apex_labels(diagram, &offsets, &class, &identity, count);
    let apex = Arc::new(FinPoset::antichain(labels));
    let legs = diagram
        .nodes
        .iter()
        .zip(&offsets)
        .map(|(node, &off)| {
            let discrete = Arc::new(FinPoset::antichain(node.poset.labels().to_vec()));
            let values = (0..node.poset.len()).map(|a| class[off + a]).collect();
            MonotoneMap::new(discrete, Arc::clone(&apex), values).expect("maps between sets")
        })
        .collect();
    Cocone { apex, legs }
}

fn require_nodes(diagram: &PosetDiagram, category: &'static str, non_empty: bool) -> Result<(), ColimitError> {
    for node in &diagram.nodes {
        if non_empty && node.poset.is_empty() {
            return Err(ColimitError::WrongSubcategory {
                node: node.id.clone(),
                category,
                reason: "empty".into(),
            });
        }
        if !node.poset.is_total() {
            return Err(ColimitError::WrongSubcategory {
                node: node.id.clone(),
                category,
                reason: "not totally ordered".into(),
            });
        }
    }
    Ok(())
}

/// Colimit in Δ: the Pos colimit when its apex is a non-empty total order,
/// `None` when the colimit does not exist in Δ.
pub fn colimit_delta(diagram: &PosetDiagram) -> Result<Option<Cocone>, ColimitError> {
    require_nodes(diagram, "Δ", true)?;
    let cocone = colimit_pos(diagram);
    Ok((!cocone.apex.is_empty() && cocone.apex.is_total()).then_some(cocone))
}

/// Colimit in finite total orders: the Pos colimit when its apex is total.
pub fn colimit_tos(diagram: &PosetDiagram) -> Result<Option<Cocone>, ColimitError> {
    require_nodes(diagram, "Tos", false)?;
    let cocone = colimit_pos(diagram);
    Ok(cocone.apex.is_total().then_some(cocone))
}

// ---------------------------------------------------------------------------
// Bounded universal-property check
// ---------------------------------------------------------------------------

/// Outcome for one test apex.
#[derive(Debug, Clone)]
pub struct ApexVerdict {
    pub apex: FinPoset,
    pub cocones: u64,
    pub missing_mediator: u64,
    pub multiple_mediators: u64,
    pub witness: Option<String>,
}

impl ApexVerdict {
    pub fn pass(&self) -> bool {
        self.missing_mediator == 0 && self.multiple_mediators == 0
    }
}

#[derive(Debug, Clone)]
pub struct UniversalReport {
    pub apex_size_bound: usize,
    pub verdicts: Vec<ApexVerdict>,
}

impl UniversalReport {
    pub fn pass(&self) -> bool {
        self.verdicts.iter().all(ApexVerdict::pass)
    }

    pub fn cocones_tested(&self) -> u64 {
        self.verdicts.iter().map(|v| v.cocones).sum()
    }

    pub fn first_failure(&self) -> Option<&ApexVerdict> {
        self.verdicts.iter().find(|v| !v.pass())
    }
}

/// Cocone constraints of a diagram, computed without the colimit engine:
/// points tied by edges must share a value, node orders must be preserved.
struct CoconeProblem {
    /// Equality class of each point.
    class_of: Vec<usize>,
    classes: usize,
    /// `(lower, upper)` class pairs, bucketed by the larger class index.
    order_by_last: Vec<Vec<(usize, usize)>>,
}

impl CoconeProblem {
    fn new(diagram: &PosetDiagram) -> Self {
        let (offsets, total) = diagram.offsets();
        let mut adj = vec![Vec::new(); total];
        for e in &diagram.edges {
            for (x, &y) in e.map.values().iter().enumerate() {
                let (a, b) = (offsets[e.source] + x, offsets[e.target] + y);
                adj[a].push(b);
                adj[b].push(a);
            }
        }
        let mut class_of = vec![usize::MAX; total];
        let mut classes = 0;
        for start in 0..total {
            if class_of[start] != usize::MAX {
                continue;
            }
            let mut stack = vec![start];
            class_of[start] = classes;
            while let Some(v) = stack.pop() {
                for &w in &adj[v] {
                    if class_of[w] == usize::MAX {
                        class_of[w] = classes;
                        stack.push(w);
                    }
                }
            }
            classes += 1;
        }
        let mut order_by_last = vec![Vec::new(); classes];
        for (node, &off) in diagram.nodes.iter().zip(&offsets) {
            let p = &node.poset;
            for a in 0..p.len() {
                for b in 0..p.len() {
                    if a != b && p.leq(a, b) {
                        let (ca, cb) = (class_of[off + a], class_of[off + b]);
                        order_by_last[ca.max(cb)].push((ca, cb));
                    }
                }
            }
        }
        for list in &mut order_by_last {
            list.sort_unstable();
            list.dedup();
        }
        Self {
            class_of,
            classes,
            order_by_last,
        }
    }

    /// Calls `visit` with each cocone into `t`, as a value per class.
    fn for_each(&self, t: &FinPoset, visit: &mut dyn FnMut(&[usize])) {
        let mut values = Vec::with_capacity(self.classes);
        self.rec(t, &mut values, visit);
    }

    fn rec(&self, t: &FinPoset, values: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize])) {
        let k = values.len();
        if k == self.classes {
            visit(values);
            return;
        }
        'value: for v in 0..t.len() {
            for &(lo, hi) in &self.order_by_last[k] {
                let lv = if lo == k { v } else { values[lo] };
                let hv = if hi == k { v } else { values[hi] };
                if !t.leq(lv, hv) {
                    continue 'value;
                }
            }
            values.push(v);
            self.rec(t, values, visit);
            values.pop();
        }
    }
}

/// Counts monotone maps `apex -> t` extending `forced`, stopping at `limit`.
fn count_extensions(apex: &FinPoset, t: &FinPoset, forced: &[Option<usize>], limit: u64) -> u64 {
    let n = apex.len();
    let mut values: Vec<usize> = vec![0; n];
    let order: Vec<usize> = (0..n).filter(|&a| forced[a].is_none()).collect();
    for a in 0..n {
        if let Some(v) = forced[a] {
            values[a] = v;
        }
    }
    for a in 0..n {
        for b in 0..n {
            if forced[a].is_some() && forced[b].is_some() && apex.leq(a, b) && !t.leq(values[a], values[b]) {
                return 0;
            }
        }
    }
    let mut assigned: Vec<bool> = forced.iter().map(Option::is_some).collect();
    fn rec(
        apex: &FinPoset,
        t: &FinPoset,
        order: &[usize],
        k: usize,
        values: &mut [usize],
        assigned: &mut [bool],
        limit: u64,
    ) -> u64 {
        if k == order.len() {
            return 1;
        }
        let a = order[k];
        let mut found = 0;
        'value: for v in 0..t.len() {
            for b in 0..apex.len() {
                if !assigned[b] {
                    continue;
                }
                if (apex.leq(a, b) && !t.leq(v, values[b])) || (apex.leq(b, a) && !t.leq(values[b], v)) {
                    continue 'value;
                }
            }
            values[a] = v;
            assigned[a] = true;
            found += rec(apex, t, order, k + 1, values, assigned, limit - found);
            assigned[a] = false;
            if found >= limit {
                break;
            }
        }
        found
    }
    rec(apex, t, &order, 0, &mut values, &mut assigned, limit)
}

/// For every cocone over `diagram` whose apex has at most `apex_size_bound`
/// elements (apexes taken up to isomorphism), checks that exactly one
/// monotone map from `candidate.apex` mediates.
pub fn verify_universal(
    diagram: &PosetDiagram,
    candidate: &Cocone,
    apex_size_bound: usize,
) -> Result<UniversalReport, ColimitError> {
    candidate.check(diagram)?;
    let problem = CoconeProblem::new(diagram);
    let (offsets, _) = diagram.offsets();
    // candidate apex element hit by each point
    let mut leg_of_point = vec![0; problem.class_of.len()];
    for (k, &off) in offsets.iter().enumerate() {
        for (a, &v) in candidate.legs[k].values().iter().enumerate() {
            leg_of_point[off + a] = v;
        }
    }
    let apexes: Vec<FinPoset> = (0..=apex_size_bound)
        .flat_map(|s| posets_of_size(s).iter().cloned().collect::<Vec<_>>())
        .collect();
    let verdicts = apexes
        .into_par_iter()
        .map(|t| {
            let mut verdict = ApexVerdict {
                apex: t.clone(),
                cocones: 0,
                missing_mediator: 0,
                multiple_mediators: 0,
                witness: None,
            };
            let apex = &candidate.apex;
            problem.for_each(&t, &mut |values| {
                verdict.cocones += 1;
                let mut forced: Vec<Option<usize>> = vec![None; apex.len()];
                let mut clash = false;
                for (p, &c) in problem.class_of.iter().enumerate() {
                    let slot = &mut forced[leg_of_point[p]];
                    match *slot {
                        Some(v) if v != values[c] => clash = true,
                        _ => *slot = Some(values[c]),
                    }
                }
                let count = if clash {
                    0
                } else {
                    count_extensions(apex, &t, &forced, 2)
                };
                if count == 0 {
                    verdict.missing_mediator += 1;
                } else if count > 1 {
                    verdict.multiple_mediators += 1;
                }
                if count != 1 && verdict.witness.is_none() {
                    let image: Vec<String> = problem
                        .class_of
                        .iter()
                        .map(|&c| t.label(values[c]).to_string())
                        .collect();
                    verdict.witness = Some(format!(
                        "cocone into {} with point images [{}] has {} mediating map(s)",
                        t.describe(),
                        image.join(","),
                        if count > 1 {
                            "several".to_string()
                        } else {
                            count.to_string()
                        }
                    ));
                }
            });
            verdict
        })
        .collect();
    Ok(UniversalReport {
        apex_size_bound,
        verdicts,
    })
}
