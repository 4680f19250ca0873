//! The skeletal simplex category Δ.
//!
//! Objects are the finite non-empty ordinals `[n] = {0, 1, ..., n}` (so `[n]`
//! has `n + 1` elements) and morphisms are monotone maps, stored as explicit
//! value tables. Generator words are a derived view obtained by
//! [`DeltaMap::factorize`].

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::colimit::{Cocone, PosetDiagram};
use crate::poset::{FinPoset, MonotoneMap};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DeltaError {
    #[error("invalid generator: {kind} index {index} is out of range for [{n}]")]
    InvalidGenerator {
        kind: GeneratorKind,
        n: usize,
        index: usize,
    },
    #[error("cannot compose: inner map lands in [{inner_target}] but outer map starts at [{outer_source}]")]
    Composition { inner_target: usize, outer_source: usize },
    #[error("value table is not a monotone map [{from}] -> [{to}]: {reason}")]
    InvalidMap { from: usize, to: usize, reason: String },
    #[error("invalid pushout square: {0}")]
    InvalidSquare(String),
}

/// The ordinal `[n] = {0, ..., n}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Ordinal(pub usize);

impl Ordinal {
    pub fn n(self) -> usize {
        self.0
    }

    /// Number of elements, `n + 1`.
    pub fn len(self) -> usize {
        self.0 + 1
    }

    /// Never true; present so `len` reads naturally.
    pub fn is_empty(self) -> bool {
        false
    }

    /// `[n]` as a finite total order with elements labelled `"0"`..`"n"`.
    pub fn to_poset(self) -> FinPoset {
        FinPoset::ordinal(self.0)
    }
}

impl fmt::Display for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GeneratorKind {
    Face,
    Degeneracy,
}

impl fmt::Display for GeneratorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeneratorKind::Face => f.write_str("face"),
            GeneratorKind::Degeneracy => f.write_str("degeneracy"),
        }
    }
}

/// A single generator. `n` names the ordinal the generator is indexed over:
/// the face `δ_i : [n-1] -> [n]` and the degeneracy `σ_i : [n+1] -> [n]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Generator {
    pub kind: GeneratorKind,
    pub n: usize,
    pub index: usize,
}

impl Generator {
    pub fn source(&self) -> Ordinal {
        match self.kind {
            GeneratorKind::Face => Ordinal(self.n - 1),
            GeneratorKind::Degeneracy => Ordinal(self.n + 1),
        }
    }

    pub fn target(&self) -> Ordinal {
        Ordinal(self.n)
    }

    pub fn to_map(&self) -> DeltaMap {
        generator(self.kind, self.n, self.index).expect("generator validated on construction")
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            GeneratorKind::Face => write!(f, "δ{}", self.index),
            GeneratorKind::Degeneracy => write!(f, "σ{}", self.index),
        }
    }
}

/// A monotone map `[source] -> [target]`, stored as its value table.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DeltaMap {
    source: Ordinal,
    target: Ordinal,
    values: Vec<usize>,
}

impl DeltaMap {
    pub fn new(source: Ordinal, target: Ordinal, values: Vec<usize>) -> Result<Self, DeltaError> {
        let invalid = |reason: String| DeltaError::InvalidMap {
            from: source.0,
            to: target.0,
            reason,
        };
        if values.len() != source.len() {
            return Err(invalid(format!(
                "expected {} values, got {}",
                source.len(),
                values.len()
            )));
        }
        if let Some(&v) = values.iter().find(|&&v| v > target.0) {
            return Err(invalid(format!("value {v} lies outside the target")));
        }
        if let Some(w) = values.windows(2).position(|w| w[0] > w[1]) {
            return Err(invalid(format!("decreases between positions {w} and {}", w + 1)));
        }
        Ok(Self { source, target, values })
    }

    pub fn identity(n: Ordinal) -> Self {
        Self {
            source: n,
            target: n,
            values: (0..n.len()).collect(),
        }
    }

    /// The face map `δ_i : [n-1] -> [n]`, skipping `i`.
    pub fn face(n: usize, i: usize) -> Result<Self, DeltaError> {
        generator(GeneratorKind::Face, n, i)
    }

    /// The degeneracy map `σ_i : [n+1] -> [n]`, hitting `i` twice.
    pub fn degeneracy(n: usize, i: usize) -> Result<Self, DeltaError> {
        generator(GeneratorKind::Degeneracy, n, i)
    }

    pub fn source(&self) -> Ordinal {
        self.source
    }

    pub fn target(&self) -> Ordinal {
        self.target
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn apply(&self, j: usize) -> usize {
        self.values[j]
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target && self.values.iter().enumerate().all(|(i, &v)| i == v)
    }

    pub fn is_injective(&self) -> bool {
        self.values.windows(2).all(|w| w[0] < w[1])
    }

    pub fn is_surjective(&self) -> bool {
        self.missed_values().is_empty()
    }

    /// Positions `j` with `f(j) = f(j + 1)`.
    pub fn repeated_positions(&self) -> Vec<usize> {
        self.values
            .windows(2)
            .enumerate()
            .filter(|(_, w)| w[0] == w[1])
            .map(|(j, _)| j)
            .collect()
    }

    /// Elements of the target not in the image.
    pub fn missed_values(&self) -> Vec<usize> {
        let mut hit = vec![false; self.target.len()];
        for &v in &self.values {
            hit[v] = true;
        }
        (0..self.target.len()).filter(|&v| !hit[v]).collect()
    }

    /// Epi-mono normal form: degeneracy indices are the repeated positions,
    /// face indices are the missed values.
    pub fn factorize(&self) -> GeneratorWord {
        GeneratorWord {
            source: self.source,
            target: self.target,
            faces: self.missed_values(),
            degeneracies: self.repeated_positions(),
        }
    }

    /// Every monotone map `[source] -> [target]`, in lexicographic order of
    /// value tables.
    pub fn all_maps(source: Ordinal, target: Ordinal) -> Vec<DeltaMap> {
        let mut out = Vec::new();
        let mut values = Vec::with_capacity(source.len());
        fn go(values: &mut Vec<usize>, source: Ordinal, target: Ordinal, out: &mut Vec<DeltaMap>) {
            if values.len() == source.len() {
                out.push(DeltaMap {
                    source,
                    target,
                    values: values.clone(),
                });
                return;
            }
            let lo = values.last().copied().unwrap_or(0);
            for v in lo..=target.0 {
                values.push(v);
                go(values, source, target, out);
                values.pop();
            }
        }
        go(&mut values, source, target, &mut out);
        out
    }

    /// The same map viewed as a monotone map between ordinal posets.
    pub fn to_monotone(&self) -> MonotoneMap {
        self.to_monotone_between(Arc::new(self.source.to_poset()), Arc::new(self.target.to_poset()))
    }

    /// As [`to_monotone`](Self::to_monotone) with caller-supplied ordinal posets,
    /// so several maps can share them.
    pub fn to_monotone_between(&self, source: Arc<FinPoset>, target: Arc<FinPoset>) -> MonotoneMap {
        assert_eq!(source.len(), self.source.len(), "source poset size");
        assert_eq!(target.len(), self.target.len(), "target poset size");
        MonotoneMap::new(source, target, self.values.clone()).expect("a monotone table between ordinals is monotone")
    }
}

impl fmt::Display for DeltaMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {} (", self.source, self.target)?;
        for (k, v) in self.values.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str(")")
    }
}

/// Builds a generator from the case formulas:
/// `δ_i(j) = j` for `j < i`, `j + 1` otherwise;
/// `σ_i(j) = j` for `j <= i`, `j - 1` otherwise.
pub fn generator(kind: GeneratorKind, n: usize, i: usize) -> Result<DeltaMap, DeltaError> {
    match kind {
        GeneratorKind::Face => {
            if n == 0 || i > n {
                return Err(DeltaError::InvalidGenerator { kind, n, index: i });
            }
            let values = (0..n).map(|j| if j < i { j } else { j + 1 }).collect();
            Ok(DeltaMap {
                source: Ordinal(n - 1),
                target: Ordinal(n),
                values,
            })
        }
        GeneratorKind::Degeneracy => {
            if i > n {
                return Err(DeltaError::InvalidGenerator { kind, n, index: i });
            }
            let values = (0..n + 2).map(|j| if j <= i { j } else { j - 1 }).collect();
            Ok(DeltaMap {
                source: Ordinal(n + 1),
                target: Ordinal(n),
                values,
            })
        }
    }
}

/// `g ∘ f`.
pub fn compose(g: &DeltaMap, f: &DeltaMap) -> Result<DeltaMap, DeltaError> {
    if f.target != g.source {
        return Err(DeltaError::Composition {
            inner_target: f.target.0,
            outer_source: g.source.0,
        });
    }
    Ok(DeltaMap {
        source: f.source,
        target: g.target,
        values: f.values.iter().map(|&v| g.values[v]).collect(),
    })
}

/// Normal form `δ_{i_k} ⋯ δ_{i_1} ∘ σ_{j_1} ⋯ σ_{j_l}` with
/// `i_1 < ... < i_k` and `j_1 < ... < j_l`.
///
/// Degeneracies act first (largest index first), then faces (smallest index
/// first).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GeneratorWord {
    source: Ordinal,
    target: Ordinal,
    faces: Vec<usize>,
    degeneracies: Vec<usize>,
}

impl GeneratorWord {
    pub fn new(
        source: Ordinal,
        target: Ordinal,
        faces: Vec<usize>,
        degeneracies: Vec<usize>,
    ) -> Result<Self, DeltaError> {
        let bad = |reason: &str| DeltaError::InvalidMap {
            from: source.0,
            to: target.0,
            reason: reason.to_string(),
        };
        if !faces.windows(2).all(|w| w[0] < w[1]) || !degeneracies.windows(2).all(|w| w[0] < w[1]) {
            return Err(bad("generator indices must be strictly increasing"));
        }
        if degeneracies.len() > source.0 {
            return Err(bad("too many degeneracies for the source"));
        }
        let middle = source.0 - degeneracies.len();
        if middle + faces.len() != target.0 {
            return Err(bad("face count does not reach the target"));
        }
        if degeneracies.last().is_some_and(|&j| j >= source.0) {
            return Err(bad("degeneracy index out of range"));
        }
        if faces.last().is_some_and(|&i| i > target.0) {
            return Err(bad("face index out of range"));
        }
        Ok(Self {
            source,
            target,
            faces,
            degeneracies,
        })
    }

    pub fn source(&self) -> Ordinal {
        self.source
    }

    pub fn target(&self) -> Ordinal {
        self.target
    }

    pub fn faces(&self) -> &[usize] {
        &self.faces
    }

    pub fn degeneracies(&self) -> &[usize] {
        &self.degeneracies
    }

    /// Generators in the order they act on points.
    pub fn applied_generators(&self) -> Vec<Generator> {
        let mut out = Vec::with_capacity(self.faces.len() + self.degeneracies.len());
        let mut current = self.source.0;
        for &j in self.degeneracies.iter().rev() {
            current -= 1;
            out.push(Generator {
                kind: GeneratorKind::Degeneracy,
                n: current,
                index: j,
            });
        }
        for &i in &self.faces {
            current += 1;
            out.push(Generator {
                kind: GeneratorKind::Face,
                n: current,
                index: i,
            });
        }
        out
    }

    pub fn evaluate(&self) -> DeltaMap {
        self.applied_generators()
            .iter()
            .fold(DeltaMap::identity(self.source), |acc, g| {
                compose(&g.to_map(), &acc).expect("normal-form words compose")
            })
    }

    /// All normal-form words `[source] -> [target]`.
    pub fn all_normal_forms(source: Ordinal, target: Ordinal) -> Vec<GeneratorWord> {
        let mut out = Vec::new();
        for l in 0..=source.0 {
            let middle = source.0 - l;
            if middle > target.0 {
                continue;
            }
            let k = target.0 - middle;
            for degeneracies in subsets(source.0, l) {
                for faces in subsets(target.0 + 1, k) {
                    out.push(GeneratorWord {
                        source,
                        target,
                        faces: faces.clone(),
                        degeneracies: degeneracies.clone(),
                    });
                }
            }
        }
        out
    }
}

impl fmt::Display for GeneratorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.faces.iter().rev().map(|i| format!("δ{i}")).collect();
        parts.extend(self.degeneracies.iter().map(|j| format!("σ{j}")));
        if parts.is_empty() {
            write!(f, "id{}", self.source)
        } else {
            f.write_str(&parts.join(" "))
        }
    }
}

/// Strictly increasing `k`-subsets of `0..n`, lexicographically.
fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            if n - v < k - cur.len() {
                break;
            }
            cur.push(v);
            go(v + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

// ---------------------------------------------------------------------------
// Simplicial identities
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IdentityFamily {
    /// `δ_j δ_i = δ_i δ_{j-1}` for `i < j`.
    FaceFace,
    /// `σ_j σ_i = σ_i σ_{j+1}` for `i <= j`.
    DegeneracyDegeneracy,
    /// `σ_j δ_i = δ_i σ_{j-1}` for `i < j`.
    DegeneracyFaceBelow,
    /// `σ_j δ_i = id` for `i = j` or `i = j + 1`.
    DegeneracyFaceIdentity,
    /// `σ_j δ_i = δ_{i-1} σ_j` for `i > j + 1`.
    DegeneracyFaceAbove,
}

impl IdentityFamily {
    pub const ALL: [IdentityFamily; 5] = [
        IdentityFamily::FaceFace,
        IdentityFamily::DegeneracyDegeneracy,
        IdentityFamily::DegeneracyFaceBelow,
        IdentityFamily::DegeneracyFaceIdentity,
        IdentityFamily::DegeneracyFaceAbove,
    ];

    pub fn formula(self) -> &'static str {
        match self {
            IdentityFamily::FaceFace => "δj δi = δi δ(j-1) (i < j)",
            IdentityFamily::DegeneracyDegeneracy => "σj σi = σi σ(j+1) (i <= j)",
            IdentityFamily::DegeneracyFaceBelow => "σj δi = δi σ(j-1) (i < j)",
            IdentityFamily::DegeneracyFaceIdentity => "σj δi = id (i = j or i = j+1)",
            IdentityFamily::DegeneracyFaceAbove => "σj δi = δ(i-1) σj (i > j+1)",
        }
    }

    pub fn key(self) -> &'static str {
        match self {
            IdentityFamily::FaceFace => "face-face",
            IdentityFamily::DegeneracyDegeneracy => "degeneracy-degeneracy",
            IdentityFamily::DegeneracyFaceBelow => "degeneracy-face-below",
            IdentityFamily::DegeneracyFaceIdentity => "degeneracy-face-identity",
            IdentityFamily::DegeneracyFaceAbove => "degeneracy-face-above",
        }
    }
}

/// One checked instance. `n` is the ordinal the inner generator is indexed
/// over (the middle ordinal of the composite).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityInstance {
    pub family: IdentityFamily,
    pub n: usize,
    pub i: usize,
    pub j: usize,
    pub lhs: DeltaMap,
    pub rhs: DeltaMap,
    pub pass: bool,
}

#[derive(Debug, Clone, Default)]
pub struct IdentityReport {
    pub max_n: usize,
    pub instances: Vec<IdentityInstance>,
}

impl IdentityReport {
    pub fn pass(&self) -> bool {
        self.instances.iter().all(|inst| inst.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &IdentityInstance> {
        self.instances.iter().filter(|inst| !inst.pass)
    }

    pub fn count(&self, family: IdentityFamily) -> usize {
        self.instances.iter().filter(|inst| inst.family == family).count()
    }
}

/// Checks every instance of the five identity families whose ordinals all lie
/// in `[0]..=[max_n]`, comparing both sides pointwise.
pub fn verify_simplicial_identities(max_n: usize) -> IdentityReport {
    let face = |n, i| DeltaMap::face(n, i).expect("index range enumerated");
    let degen = |n, i| DeltaMap::degeneracy(n, i).expect("index range enumerated");
    let both = |a: &DeltaMap, b: &DeltaMap| compose(a, b).expect("endpoints enumerated");
    let mut instances = Vec::new();
    let mut push = |family, n, i, j, lhs: DeltaMap, rhs: DeltaMap| {
        let pass = lhs == rhs;
        instances.push(IdentityInstance {
            family,
            n,
            i,
            j,
            lhs,
            rhs,
            pass,
        });
    };

    // δ_i : [m-1] -> [m], then δ_j : [m] -> [m+1].
    for m in 1..max_n {
        for j in 1..=m + 1 {
            for i in 0..j {
                let lhs = both(&face(m + 1, j), &face(m, i));
                let rhs = both(&face(m + 1, i), &face(m, j - 1));
                push(IdentityFamily::FaceFace, m, i, j, lhs, rhs);
            }
        }
    }
    // σ_i : [m+1] -> [m], then σ_j : [m] -> [m-1].
    for m in 1..max_n {
        for j in 0..m {
            for i in 0..=j {
                let lhs = both(&degen(m - 1, j), &degen(m, i));
                let rhs = both(&degen(m - 1, i), &degen(m, j + 1));
                push(IdentityFamily::DegeneracyDegeneracy, m, i, j, lhs, rhs);
            }
        }
    }
    // δ_i : [m-1] -> [m], then σ_j : [m] -> [m-1].
    for m in 1..=max_n {
        for j in 0..m {
            for i in 0..=m {
                let lhs = both(&degen(m - 1, j), &face(m, i));
                if i < j {
                    let rhs = both(&face(m - 1, i), &degen(m - 2, j - 1));
                    push(IdentityFamily::DegeneracyFaceBelow, m, i, j, lhs, rhs);
                } else if i == j || i == j + 1 {
                    let rhs = DeltaMap::identity(Ordinal(m - 1));
                    push(IdentityFamily::DegeneracyFaceIdentity, m, i, j, lhs, rhs);
                } else {
                    let rhs = both(&face(m - 1, i - 1), &degen(m - 2, j));
                    push(IdentityFamily::DegeneracyFaceAbove, m, i, j, lhs, rhs);
                }
            }
        }
    }
    IdentityReport { max_n, instances }
}

// ---------------------------------------------------------------------------
// Diagrams in Δ with claimed colimits
// ---------------------------------------------------------------------------

/// Which of the classical pushout squares to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PushoutCase {
    /// `[1] <-δ0- [0] -> [n+2]` glues a new least element below `[n+2]`.
    Prepend,
    /// `[1] <-δ1- [0] -> [n+2]` glues a new greatest element above `[n+2]`.
    Append,
    /// `[2] <-δ1- [1] -> [n+2]` inserts a point between `i-1` and `i`, for
    /// `0 < i < n + 3`.
    Insert(usize),
    /// `[0] <-σ0- [1] -> [n+2]` collapses `i` and `i+1`, for `i <= n + 1`.
    Collapse(usize),
}

/// A finite diagram in Δ together with a claimed colimit cocone.
///
/// Objects are indexed positions; arrows go `source -> target` between them.
#[derive(Debug, Clone)]
pub struct DeltaDiagram {
    pub name: String,
    pub objects: Vec<Ordinal>,
    pub arrows: Vec<(usize, usize, DeltaMap)>,
    pub apex: Ordinal,
    pub legs: Vec<DeltaMap>,
}

impl DeltaDiagram {
    fn build(
        name: String,
        objects: Vec<Ordinal>,
        arrows: Vec<(usize, usize, DeltaMap)>,
        apex: Ordinal,
        legs: Vec<DeltaMap>,
    ) -> Result<Self, DeltaError> {
        let diagram = Self {
            name,
            objects,
            arrows,
            apex,
            legs,
        };
        diagram.check()?;
        Ok(diagram)
    }

    fn check(&self) -> Result<(), DeltaError> {
        let bad = |msg: String| Err(DeltaError::InvalidSquare(msg));
        if self.legs.len() != self.objects.len() {
            return bad("one leg per object required".into());
        }
        for (k, leg) in self.legs.iter().enumerate() {
            if leg.source != self.objects[k] || leg.target != self.apex {
                return bad(format!("leg {k} has the wrong endpoints"));
            }
        }
        for (k, (s, t, f)) in self.arrows.iter().enumerate() {
            if f.source != self.objects[*s] || f.target != self.objects[*t] {
                return bad(format!("arrow {k} has the wrong endpoints"));
            }
            if compose(&self.legs[*t], f)? != self.legs[*s] {
                return bad(format!("claimed cocone does not commute over arrow {k}"));
            }
        }
        Ok(())
    }

    /// The diagram as a diagram of posets, objects named `o0, o1, ...`.
    pub fn to_poset_diagram(&self) -> PosetDiagram {
        let mut diagram = PosetDiagram::new(&self.name);
        let posets: Vec<Arc<FinPoset>> = self.objects.iter().map(|o| Arc::new(o.to_poset())).collect();
        for (k, p) in posets.iter().enumerate() {
            diagram.add_node(format!("o{k}"), Arc::clone(p));
        }
        for (k, (s, t, f)) in self.arrows.iter().enumerate() {
            diagram
                .add_edge(format!("a{k}"), *s, *t, f.values().to_vec())
                .expect("Δ arrows are monotone");
        }
        diagram
    }

    /// The claimed colimit cocone as a cocone of posets over
    /// [`to_poset_diagram`](Self::to_poset_diagram).
    pub fn claimed_cocone(&self) -> Cocone {
        let apex = Arc::new(self.apex.to_poset());
        let legs = self
            .legs
            .iter()
            .zip(&self.objects)
            .map(|(leg, o)| leg.to_monotone_between(Arc::new(o.to_poset()), Arc::clone(&apex)))
            .collect();
        Cocone { apex, legs }
    }
}

/// Composite of faces written left to right, as in `δ_a ⋯ δ_b`: the rightmost
/// acts first.
fn face_composite(source: usize, written: &[usize]) -> Result<DeltaMap, DeltaError> {
    let mut acc = DeltaMap::identity(Ordinal(source));
    for &i in written.iter().rev() {
        let next = DeltaMap::face(acc.target.0 + 1, i)?;
        acc = compose(&next, &acc)?;
    }
    Ok(acc)
}

/// Descending run `hi, hi-1, ..., lo`, empty when `hi < lo`.
fn down(hi: isize, lo: isize) -> Vec<usize> {
    if hi < lo {
        return Vec::new();
    }
    (lo..=hi).rev().map(|v| v as usize).collect()
}

/// The pushout squares used to pin down face and degeneracy maps of a
/// continuous simplicial set. Objects are ordered
/// `[span source, top-right, bottom-left]`, the apex is the bottom-right corner.
pub fn pushout_square(case: PushoutCase, n: usize) -> Result<DeltaDiagram, DeltaError> {
    let ni = n as isize;
    let (name, objects, top, left, right_leg, bottom_leg, apex) = match case {
        PushoutCase::Prepend => (
            format!("prepend n={n}"),
            vec![Ordinal(0), Ordinal(n + 2), Ordinal(1)],
            face_composite(0, &down(ni + 2, 1))?,
            DeltaMap::face(1, 0)?,
            DeltaMap::face(n + 3, 0)?,
            face_composite(1, &down(ni + 3, 2))?,
            Ordinal(n + 3),
        ),
        PushoutCase::Append => (
            format!("append n={n}"),
            vec![Ordinal(0), Ordinal(n + 2), Ordinal(1)],
            face_composite(0, &down(ni + 1, 0))?,
            DeltaMap::face(1, 1)?,
            DeltaMap::face(n + 3, n + 3)?,
            face_composite(1, &down(ni + 1, 0))?,
            Ordinal(n + 3),
        ),
        PushoutCase::Insert(i) => {
            if i == 0 || i >= n + 3 {
                return Err(DeltaError::InvalidSquare(format!(
                    "insert needs 0 < i < {}, got i = {i}",
                    n + 3
                )));
            }
            let ii = i as isize;
            let mut top = down(ni + 2, ii + 1);
            top.extend(down(ii - 2, 0));
            let mut bottom = down(ni + 3, ii + 2);
            bottom.extend(down(ii - 2, 0));
            (
                format!("insert n={n} i={i}"),
                vec![Ordinal(1), Ordinal(n + 2), Ordinal(2)],
                face_composite(1, &top)?,
                DeltaMap::face(2, 1)?,
                DeltaMap::face(n + 3, i)?,
                face_composite(2, &bottom)?,
                Ordinal(n + 3),
            )
        }
        PushoutCase::Collapse(i) => {
            if i > n + 1 {
                return Err(DeltaError::InvalidSquare(format!(
                    "collapse needs i <= {}, got i = {i}",
                    n + 1
                )));
            }
            let ii = i as isize;
            let mut top = down(ni + 2, ii + 2);
            top.extend(down(ii - 1, 0));
            let mut bottom = down(ni + 1, ii + 1);
            bottom.extend(down(ii - 1, 0));
            (
                format!("collapse n={n} i={i}"),
                vec![Ordinal(1), Ordinal(n + 2), Ordinal(0)],
                face_composite(1, &top)?,
                DeltaMap::degeneracy(0, 0)?,
                DeltaMap::degeneracy(n + 1, i)?,
                face_composite(0, &bottom)?,
                Ordinal(n + 1),
            )
        }
    };
    let span_leg = compose(&right_leg, &top)?;
    DeltaDiagram::build(
        name,
        objects,
        vec![(0, 1, top), (0, 2, left)],
        apex,
        vec![span_leg, right_leg, bottom_leg],
    )
}

/// Every valid pushout square for `n <= max_n`.
pub fn all_pushout_squares(max_n: usize) -> Vec<DeltaDiagram> {
    let mut out = Vec::new();
    for n in 0..=max_n {
        out.push(pushout_square(PushoutCase::Prepend, n).expect("valid case"));
        out.push(pushout_square(PushoutCase::Append, n).expect("valid case"));
        for i in 1..n + 3 {
            out.push(pushout_square(PushoutCase::Insert(i), n).expect("valid case"));
        }
        for i in 0..=n + 1 {
            out.push(pushout_square(PushoutCase::Collapse(i), n).expect("valid case"));
        }
    }
    out
}

/// `[m]` as `m` copies of `[1]` glued end to start along `m - 1` copies of
/// `[0]`. Needs `m >= 1`.
pub fn spine_diagram(m: usize) -> DeltaDiagram {
    assert!(m >= 1, "spine of [0] is not a gluing of edges");
    let mut objects = vec![Ordinal(1); m];
    objects.extend(std::iter::repeat_n(Ordinal(0), m - 1));
    let mut arrows = Vec::new();
    for k in 0..m - 1 {
        let point = m + k;
        arrows.push((point, k, DeltaMap::face(1, 0).unwrap()));
        arrows.push((point, k + 1, DeltaMap::face(1, 1).unwrap()));
    }
    let mut legs: Vec<DeltaMap> = (0..m)
        .map(|k| DeltaMap::new(Ordinal(1), Ordinal(m), vec![k, k + 1]).unwrap())
        .collect();
    legs.extend((0..m - 1).map(|k| DeltaMap::new(Ordinal(0), Ordinal(m), vec![k + 1]).unwrap()));
    DeltaDiagram::build(format!("spine [{m}]"), objects, arrows, Ordinal(m), legs).expect("spine commutes")
}

/// Two copies of `[1]` glued along both endpoints: colimit `[1]`.
pub fn parallel_edges_diagram() -> DeltaDiagram {
    let objects = vec![Ordinal(1), Ordinal(1), Ordinal(0), Ordinal(0)];
    let d0 = DeltaMap::face(1, 0).unwrap();
    let d1 = DeltaMap::face(1, 1).unwrap();
    let arrows = vec![(2, 0, d1.clone()), (2, 1, d1), (3, 0, d0.clone()), (3, 1, d0)];
    let legs = vec![
        DeltaMap::identity(Ordinal(1)),
        DeltaMap::identity(Ordinal(1)),
        DeltaMap::face(1, 1).unwrap(),
        DeltaMap::face(1, 0).unwrap(),
    ];
    DeltaDiagram::build("parallel edges".into(), objects, arrows, Ordinal(1), legs).expect("parallel edges commute")
}

/// Two copies of `[1]` glued head to tail in both directions: colimit `[0]`.
pub fn opposed_edges_diagram() -> DeltaDiagram {
    let objects = vec![Ordinal(1), Ordinal(1), Ordinal(0), Ordinal(0)];
    let d0 = DeltaMap::face(1, 0).unwrap();
    let d1 = DeltaMap::face(1, 1).unwrap();
    let arrows = vec![(2, 0, d1.clone()), (2, 1, d0.clone()), (3, 0, d0), (3, 1, d1)];
    let legs = vec![
        DeltaMap::degeneracy(0, 0).unwrap(),
        DeltaMap::degeneracy(0, 0).unwrap(),
        DeltaMap::identity(Ordinal(0)),
        DeltaMap::identity(Ordinal(0)),
    ];
    DeltaDiagram::build("opposed edges".into(), objects, arrows, Ordinal(0), legs).expect("opposed edges commute")
}

/// The three edges of `[2]` glued at its three vertices: colimit `[2]`.
pub fn triangle_diagram() -> DeltaDiagram {
    let objects = vec![Ordinal(1), Ordinal(1), Ordinal(1), Ordinal(0), Ordinal(0), Ordinal(0)];
    let d0 = DeltaMap::face(1, 0).unwrap();
    let d1 = DeltaMap::face(1, 1).unwrap();
    // edges: 0 = {0,1}, 1 = {0,2}, 2 = {1,2}; vertices 3, 4, 5 = 0, 1, 2.
    let arrows = vec![
        (3, 0, d1.clone()),
        (3, 1, d1.clone()),
        (4, 0, d0.clone()),
        (4, 2, d1),
        (5, 1, d0.clone()),
        (5, 2, d0),
    ];
    let legs = vec![
        DeltaMap::face(2, 2).unwrap(),
        DeltaMap::face(2, 1).unwrap(),
        DeltaMap::face(2, 0).unwrap(),
        DeltaMap::new(Ordinal(0), Ordinal(2), vec![0]).unwrap(),
        DeltaMap::new(Ordinal(0), Ordinal(2), vec![1]).unwrap(),
        DeltaMap::new(Ordinal(0), Ordinal(2), vec![2]).unwrap(),
    ];
    DeltaDiagram::build("triangle".into(), objects, arrows, Ordinal(2), legs).expect("triangle commutes")
}
