//! Finite limit checks characterising nerves of posets among truncated
//! simplicial sets, and reconstruction of the poset when they pass.
//!
//! A simplicial set `X` determines a relation on `X_0`: `x <= y` iff some
//! 1-simplex has `d_1 = x` and `d_0 = y`. Every higher simplex gets a vertex
//! tuple from the spine legs `X_m -> X_1` (edge `k` is reached by deleting
//! every vertex but `k` and `k + 1`). The checks ask that
//!
//! * 1-simplices are determined by their endpoints,
//! * `X_n` is in bijection with the weakly increasing `(n+1)`-tuples,
//! * faces delete and degeneracies repeat a position of the tuple,
//! * the relation is transitive, reflexive and antisymmetric.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::colimit::{colimit_pos, Cocone};
use crate::iso::find_isomorphism;
use crate::kan::{CommaCategory, FunctorPresentation};
use crate::poset::{tuple_label, FinPoset, MonotoneMap};
use crate::simplicial::{nerve, nerve_map_between, simplicial_maps, SimplicialMap, TruncatedSimplicialSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ContinuityError {
    #[error("`{operation}` needs {requirement}")]
    Protocol {
        operation: &'static str,
        requirement: String,
    },
    #[error("bound {bound} is below the height {height} of the poset")]
    InsufficientBound { bound: usize, height: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        })
    }
}

/// One named check with an optional witness (on failure) or note.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub check: String,
    pub status: Status,
    pub detail: Option<String>,
}

impl Verdict {
    fn pass(check: impl Into<String>) -> Self {
        Self {
            check: check.into(),
            status: Status::Pass,
            detail: None,
        }
    }

    fn noted(check: impl Into<String>, note: impl Into<String>) -> Self {
        Self {
            check: check.into(),
            status: Status::Pass,
            detail: Some(note.into()),
        }
    }

    fn fail(check: impl Into<String>, witness: impl Into<String>) -> Self {
        Self {
            check: check.into(),
            status: Status::Fail,
            detail: Some(witness.into()),
        }
    }

    fn from_result(check: impl Into<String>, r: Result<(), String>) -> Self {
        match r {
            Ok(()) => Self::pass(check),
            Err(w) => Self::fail(check, w),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Pairs `(d_1 e, d_0 e)` of the 1-simplices.
fn endpoints(x: &TruncatedSimplicialSet) -> Vec<(usize, usize)> {
    (0..x.level_size(1))
        .map(|e| (x.face(1, 1, e), x.face(1, 0, e)))
        .collect()
}

pub fn check_relation_injective(x: &TruncatedSimplicialSet) -> Verdict {
    const NAME: &str = "relation-injective";
    if x.trunc() == 0 {
        return Verdict::noted(NAME, "no 1-simplices below truncation 1");
    }
    let mut seen: HashMap<(usize, usize), usize> = HashMap::new();
    for (e, pair) in endpoints(x).into_iter().enumerate() {
        if let Some(&other) = seen.get(&pair) {
            return Verdict::fail(
                NAME,
                format!(
                    "`{}` and `{}` both have endpoints ({},{})",
                    x.id(1, other),
                    x.id(1, e),
                    x.id(0, pair.0),
                    x.id(0, pair.1)
                ),
            );
        }
        seen.insert(pair, e);
    }
    Verdict::pass(NAME)
}

/// The relation on `X_0` read off the 1-simplices, as a row-major table.
/// At truncation 0 there are no 1-simplices and the relation is the diagonal.
pub fn extract_order(x: &TruncatedSimplicialSet) -> Result<Vec<bool>, ContinuityError> {
    let n = x.level_size(0);
    if x.trunc() == 0 {
        return Ok((0..n * n).map(|k| k / n == k % n).collect());
    }
    if !check_relation_injective(x).passed() {
        return Err(ContinuityError::Protocol {
            operation: "extract_order",
            requirement: "1-simplices determined by their endpoints".into(),
        });
    }
    let mut rel = vec![false; n * n];
    for (a, b) in endpoints(x) {
        rel[a * n + b] = true;
    }
    Ok(rel)
}

fn raw_relation(x: &TruncatedSimplicialSet) -> Vec<bool> {
    let n = x.level_size(0);
    let mut rel = vec![false; n * n];
    if x.trunc() == 0 {
        for a in 0..n {
            rel[a * n + a] = true;
        }
    } else {
        for (a, b) in endpoints(x) {
            rel[a * n + b] = true;
        }
    }
    rel
}

/// The 1-simplex spanned by vertices `k, k + 1` of an `m`-simplex:
/// `d_0 ⋯ d_(k-1) d_(k+2) ⋯ d_m`, the rightmost face applied first.
pub fn spine_leg(x: &TruncatedSimplicialSet, m: usize, k: usize, s: usize) -> usize {
    let mut level = m;
    let mut cur = s;
    for i in (k + 2..=m).rev() {
        cur = x.face(level, i, cur);
        level -= 1;
    }
    for i in (0..k).rev() {
        cur = x.face(level, i, cur);
        level -= 1;
    }
    debug_assert_eq!(level, 1);
    cur
}

/// The vertex tuple of an `m`-simplex: starting points of the spine legs,
/// then the end point of the last one.
pub fn vertex_tuple(x: &TruncatedSimplicialSet, m: usize, s: usize) -> Vec<usize> {
    match m {
        0 => vec![s],
        1 => vec![x.face(1, 1, s), x.face(1, 0, s)],
        _ => {
            let legs: Vec<usize> = (0..m).map(|k| spine_leg(x, m, k, s)).collect();
            let mut out: Vec<usize> = legs.iter().map(|&e| x.face(1, 1, e)).collect();
            out.push(x.face(1, 0, legs[m - 1]));
            out
        }
    }
}

fn tuple_ids(x: &TruncatedSimplicialSet, t: &[usize]) -> String {
    tuple_label(t.iter().map(|&v| x.id(0, v)))
}

/// Weakly increasing `(n+1)`-tuples for a relation table on `size` points.
fn increasing_tuples(rel: &[bool], size: usize, n: usize) -> Vec<Vec<usize>> {
    fn go(rel: &[bool], size: usize, len: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for v in 0..size {
            if cur.last().is_none_or(|&u| rel[u * size + v]) {
                cur.push(v);
                go(rel, size, len, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(rel, size, n + 1, &mut Vec::new(), &mut out);
    out
}

/// `X_n` maps bijectively, by vertex tuples, onto the weakly increasing
/// tuples of the relation.
pub fn check_chain_condition(x: &TruncatedSimplicialSet, n: usize) -> Verdict {
    let name = format!("chain-condition[n={n}]");
    assert!(
        (2..=x.trunc()).contains(&n),
        "chain condition is stated for 2 <= n <= K"
    );
    let rel = raw_relation(x);
    let size = x.level_size(0);
    let mut seen: HashMap<Vec<usize>, usize> = HashMap::new();
    for s in 0..x.level_size(n) {
        let t = vertex_tuple(x, n, s);
        if let Some(&other) = seen.get(&t) {
            return Verdict::fail(
                name,
                format!(
                    "`{}` and `{}` share the vertex tuple {}",
                    x.id(n, other),
                    x.id(n, s),
                    tuple_ids(x, &t)
                ),
            );
        }
        seen.insert(t, s);
    }
    for t in increasing_tuples(&rel, size, n) {
        if !seen.contains_key(&t) {
            return Verdict::fail(name, format!("no {n}-simplex has vertex tuple {}", tuple_ids(x, &t)));
        }
    }
    Verdict::pass(name)
}

/// Faces act on vertex tuples by deleting position `i`; reported per
/// `(n, i)`. A final `transitivity` verdict checks the relation directly.
pub fn check_face_formulas(x: &TruncatedSimplicialSet) -> Vec<Verdict> {
    let mut out = Vec::new();
    if x.trunc() < 2 {
        out.push(Verdict::noted("face-formula", "no levels >= 2"));
    }
    for n in 2..=x.trunc() {
        for i in 0..=n {
            let r = (0..x.level_size(n)).try_for_each(|s| {
                let mut expected = vertex_tuple(x, n, s);
                expected.remove(i);
                let got = vertex_tuple(x, n - 1, x.face(n, i, s));
                if got == expected {
                    Ok(())
                } else {
                    Err(format!(
                        "d_{i}(`{}`) has vertices {}, expected {}",
                        x.id(n, s),
                        tuple_ids(x, &got),
                        tuple_ids(x, &expected)
                    ))
                }
            });
            out.push(Verdict::from_result(format!("face-formula[n={n},i={i}]"), r));
        }
    }
    if x.trunc() >= 1 {
        let rel = raw_relation(x);
        let size = x.level_size(0);
        let mut r = Ok(());
        'outer: for a in 0..size {
            for b in 0..size {
                if !rel[a * size + b] {
                    continue;
                }
                for c in 0..size {
                    if rel[b * size + c] && !rel[a * size + c] {
                        r = Err(format!(
                            "{} <= {} <= {} but not {} <= {}",
                            x.id(0, a),
                            x.id(0, b),
                            x.id(0, c),
                            x.id(0, a),
                            x.id(0, c)
                        ));
                        break 'outer;
                    }
                }
            }
        }
        out.push(Verdict::from_result("transitivity", r));
    }
    out
}

/// Degeneracies act on vertex tuples by repeating position `i`; reported per
/// `(n, i)`. A final `reflexivity` verdict checks the relation directly.
pub fn check_degeneracy_formulas(x: &TruncatedSimplicialSet) -> Vec<Verdict> {
    let mut out = Vec::new();
    for n in 0..x.trunc() {
        for i in 0..=n {
            let r = (0..x.level_size(n)).try_for_each(|s| {
                let mut expected = vertex_tuple(x, n, s);
                expected.insert(i, expected[i]);
                let got = vertex_tuple(x, n + 1, x.degeneracy(n, i, s));
                if got == expected {
                    Ok(())
                } else {
                    Err(format!(
                        "s_{i}(`{}`) has vertices {}, expected {}",
                        x.id(n, s),
                        tuple_ids(x, &got),
                        tuple_ids(x, &expected)
                    ))
                }
            });
            out.push(Verdict::from_result(format!("degeneracy-formula[n={n},i={i}]"), r));
        }
    }
    let rel = raw_relation(x);
    let size = x.level_size(0);
    let r = match (0..size).find(|&a| !rel[a * size + a]) {
        None => Ok(()),
        Some(a) => Err(format!("no 1-simplex from {0} to {0}", x.id(0, a))),
    };
    out.push(Verdict::from_result("reflexivity", r));
    out
}

pub fn check_antisymmetry(x: &TruncatedSimplicialSet) -> Verdict {
    let rel = raw_relation(x);
    let size = x.level_size(0);
    for a in 0..size {
        for b in a + 1..size {
            if rel[a * size + b] && rel[b * size + a] {
                return Verdict::fail(
                    "antisymmetry",
                    format!("{0} <= {1} and {1} <= {0}", x.id(0, a), x.id(0, b)),
                );
            }
        }
    }
    Verdict::pass("antisymmetry")
}

/// The poset carried by `X_0` together with the levelwise bijection
/// `X -> N(P)` given by vertex tuples.
#[derive(Debug, Clone)]
pub struct Reconstruction {
    pub poset: Arc<FinPoset>,
    pub iso: SimplicialMap,
}

#[derive(Debug, Clone)]
pub struct ContinuityReport {
    pub name: String,
    pub trunc: usize,
    pub level_sizes: Vec<usize>,
    /// Validation of the dual simplicial identities, first failure only.
    pub identities: Verdict,
    pub verdicts: Vec<Verdict>,
    pub relation: Option<Vec<bool>>,
    pub reconstruction: Option<Reconstruction>,
}

impl ContinuityReport {
    pub fn pass(&self) -> bool {
        self.identities.passed() && self.verdicts.iter().all(Verdict::passed)
    }

    pub fn failures(&self) -> Vec<&Verdict> {
        std::iter::once(&self.identities)
            .chain(&self.verdicts)
            .filter(|v| !v.passed())
            .collect()
    }

    /// Named check, e.g. `"antisymmetry"` or `"face-formula[n=2,i=1]"`.
    pub fn verdict(&self, check: &str) -> Option<&Verdict> {
        std::iter::once(&self.identities)
            .chain(&self.verdicts)
            .find(|v| v.check == check)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!(
            "continuity report for {} (truncated at {})\nlevel sizes: {}\n",
            self.name,
            self.trunc,
            self.level_sizes
                .iter()
                .map(usize::to_string)
                .collect::<Vec<_>>()
                .join(" ")
        );
        for v in std::iter::once(&self.identities).chain(&self.verdicts) {
            s.push_str(&format!("  {:<28} {}", v.check, v.status));
            if let Some(d) = &v.detail {
                s.push_str(&format!("  ({d})"));
            }
            s.push('\n');
        }
        match &self.reconstruction {
            Some(r) => s.push_str(&format!("reconstructed poset: {}\n", r.poset.describe())),
            None => s.push_str("no reconstruction: some check failed\n"),
        }
        s.push_str(&format!("verdict: {}\n", if self.pass() { "PASS" } else { "FAIL" }));
        s
    }

    /// One `key=value` per line.
    pub fn to_machine(&self) -> String {
        let mut s = format!("name={}\ntrunc={}\n", self.name, self.trunc);
        for (n, size) in self.level_sizes.iter().enumerate() {
            s.push_str(&format!("level.{n}.size={size}\n"));
        }
        for v in std::iter::once(&self.identities).chain(&self.verdicts) {
            s.push_str(&format!("check.{}={}\n", v.check, v.status));
            if let Some(d) = &v.detail {
                let key = if v.passed() { "note" } else { "witness" };
                s.push_str(&format!("check.{}.{key}={d}\n", v.check));
            }
        }
        if let Some(r) = &self.reconstruction {
            s.push_str(&format!("reconstructed={}\n", r.poset.describe()));
        }
        s.push_str(&format!("verdict={}\n", if self.pass() { "PASS" } else { "FAIL" }));
        s
    }
}

/// Runs every check (also on data that fails identity validation, so that
/// corruptions are reported by the check they break) and reconstructs the
/// poset when everything passes.
pub fn check_continuity(x: &TruncatedSimplicialSet) -> ContinuityReport {
    let identities = match x.identity_violations().into_iter().next() {
        None => Verdict::pass("simplicial-identities"),
        Some(v) => Verdict::fail("simplicial-identities", v.to_string()),
    };
    let mut verdicts = vec![check_relation_injective(x)];
    for n in 2..=x.trunc() {
        verdicts.push(check_chain_condition(x, n));
    }
    verdicts.extend(check_face_formulas(x));
    verdicts.extend(check_degeneracy_formulas(x));
    verdicts.push(check_antisymmetry(x));
    let relation = extract_order(x).ok();
    let mut report = ContinuityReport {
        name: x.name().to_string(),
        trunc: x.trunc(),
        level_sizes: (0..=x.trunc()).map(|n| x.level_size(n)).collect(),
        identities,
        verdicts,
        relation,
        reconstruction: None,
    };
    if report.pass() {
        report.reconstruction = Some(reconstruct_unchecked(x));
    }
    report
}

/// `P = (X_0, <=)` and the isomorphism `X ≅ N(P)`.
pub fn reconstruct(x: &TruncatedSimplicialSet) -> Result<Reconstruction, ContinuityError> {
    let mut report = check_continuity(x);
    report.reconstruction.take().ok_or_else(|| ContinuityError::Protocol {
        operation: "reconstruct",
        requirement: format!(
            "a passing continuity report (failed: {})",
            report
                .failures()
                .iter()
                .map(|v| v.check.as_str())
                .collect::<Vec<_>>()
                .join(", ")
        ),
    })
}

fn reconstruct_unchecked(x: &TruncatedSimplicialSet) -> Reconstruction {
    let labels = x.level(0).to_vec();
    let poset = Arc::new(FinPoset::from_relation(labels, raw_relation(x)).expect("checks passed"));
    let target = Arc::new(nerve(&poset, x.trunc()));
    let components = (0..=x.trunc())
        .map(|n| {
            let position: HashMap<Vec<usize>, usize> = poset
                .chains(n, false)
                .into_iter()
                .enumerate()
                .map(|(k, c)| (c.points, k))
                .collect();
            (0..x.level_size(n)).map(|s| position[&vertex_tuple(x, n, s)]).collect()
        })
        .collect();
    let iso = SimplicialMap::new(Arc::new(x.clone()), target, components).expect("vertex tuples are natural");
    Reconstruction { poset, iso }
}

/// The colimit of the chains of `P` (all monotone `[n] -> P`, `n <= bound`,
/// with commuting triangles) and the canonical comparison with `P`.
#[derive(Debug, Clone)]
pub struct DensityResult {
    pub bound: usize,
    pub nodes: usize,
    pub edges: usize,
    pub cocone: Cocone,
    /// The map `colim -> P` induced by the chains themselves.
    pub comparison: MonotoneMap,
    /// The same comparison computed one bound higher is an isomorphism too.
    pub stable: bool,
}

impl DensityResult {
    pub fn pass(&self) -> bool {
        self.comparison.is_isomorphism() && self.stable
    }

    /// Some isomorphism `colim ≅ P`, found by search.
    pub fn isomorphism(&self) -> Option<MonotoneMap> {
        find_isomorphism(&self.cocone.apex, self.comparison.target())
    }
}

fn density_at(p: &Arc<FinPoset>, bound: usize) -> (Cocone, MonotoneMap, usize, usize) {
    let comma = CommaCategory::new(p, bound, false);
    let diagram = comma.diagram(&FunctorPresentation::inclusion());
    let cocone = colimit_pos(&diagram);
    let comparison = cocone
        .factor_through(p, |k, e| comma.objects[k].chain[e])
        .expect("chains form a cocone over P");
    (cocone, comparison, comma.objects.len(), comma.morphisms.len())
}

pub fn density_colimit(p: &Arc<FinPoset>, bound: usize) -> Result<DensityResult, ContinuityError> {
    let height = p.height();
    if bound < height {
        return Err(ContinuityError::InsufficientBound { bound, height });
    }
    let (cocone, comparison, nodes, edges) = density_at(p, bound);
    let (_, next, _, _) = density_at(p, bound + 1);
    Ok(DensityResult {
        bound,
        nodes,
        edges,
        cocone,
        comparison,
        stable: next.is_isomorphism(),
    })
}

/// Monotone maps `P -> Q` against simplicial maps `N(P) -> N(Q)`.
#[derive(Debug, Clone)]
pub struct FullyFaithfulWitness {
    pub monotone: usize,
    pub simplicial: usize,
    /// Index in the simplicial list of `N(f)`, per monotone map.
    pub image: Vec<usize>,
    pub injective: bool,
    pub surjective: bool,
}

impl FullyFaithfulWitness {
    pub fn pass(&self) -> bool {
        self.injective && self.surjective
    }
}

pub fn fully_faithful_witness(p: &Arc<FinPoset>, q: &Arc<FinPoset>, trunc: usize) -> FullyFaithfulWitness {
    assert!(trunc >= 1, "needs 1-simplices");
    let np = Arc::new(nerve(p, trunc));
    let nq = Arc::new(nerve(q, trunc));
    let monotone = p.monotone_maps_to(q);
    let simplicial = simplicial_maps(&np, &nq);
    let position: HashMap<&[Vec<usize>], usize> = simplicial
        .iter()
        .enumerate()
        .map(|(k, m)| (m.components(), k))
        .collect();
    let image: Vec<usize> = monotone
        .iter()
        .map(|f| {
            let m = nerve_map_between(f, Arc::clone(&np), Arc::clone(&nq));
            position
                .get(m.components())
                .copied()
                .expect("nerve maps are simplicial")
        })
        .collect();
    let mut hit = vec![false; simplicial.len()];
    let mut injective = true;
    for &k in &image {
        injective &= !std::mem::replace(&mut hit[k], true);
    }
    FullyFaithfulWitness {
        monotone: monotone.len(),
        simplicial: simplicial.len(),
        image,
        injective,
        surjective: hit.into_iter().all(|h| h),
    }
}
