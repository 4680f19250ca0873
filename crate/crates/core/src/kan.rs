//! Extending a functor `F : Δ -> C` to finite posets by the colimit of
//! `F` over the comma category of chains,
//! `F̃(P) = colim ((Δ ↓ P) -> Δ -> C)`, for `C` finite posets or finite sets.
//!
//! The comma category is infinite, so it is truncated at a chain length
//! bound and the value is certified by stabilization: the map induced by the
//! inclusion of the bound-`b` diagram into the bound-`b+1` diagram must be an
//! isomorphism.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use thiserror::Error;

use crate::colimit::{colimit_pos, colimit_pos_traced, colimit_set, Cocone, ColimitTrace, PosetDiagram};
use crate::delta::{DeltaMap, Generator, GeneratorKind, IdentityFamily, Ordinal};
use crate::poset::{tuple_label, FinPoset, MonotoneMap};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KanError {
    #[error("invalid functor `{functor}`: {reason}")]
    InvalidFunctor { functor: String, reason: String },
    #[error("bound {bound} is below the height {height} of the poset")]
    InsufficientBound { bound: usize, height: usize },
    #[error("no stabilization up to bound {cap}: bound {previous_bound} gives {previous}, bound {current_bound} gives {current}")]
    NotStabilized {
        cap: usize,
        previous_bound: usize,
        previous: String,
        current_bound: usize,
        current: String,
    },
    #[error("{0}")]
    Mismatch(String),
}

/// Where a functor out of Δ lands. Finite sets are represented as discrete
/// posets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    Pos,
    Set,
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Target::Pos => "Pos",
            Target::Set => "Set",
        })
    }
}

/// A functor out of Δ given on objects and on the generating faces and
/// degeneracies.
pub trait DeltaFunctor: Send + Sync {
    fn name(&self) -> String;
    fn target(&self) -> Target;
    /// `F([n])`.
    fn object(&self, n: usize) -> FinPoset;
    /// Value table of `F(g) : F(source) -> F(target)`.
    fn generator(&self, g: Generator) -> Vec<usize>;
}

/// The inclusion of Δ into finite posets.
#[derive(Debug, Clone, Copy, Default)]
pub struct Inclusion;

impl DeltaFunctor for Inclusion {
    fn name(&self) -> String {
        "inclusion".into()
    }

    fn target(&self) -> Target {
        Target::Pos
    }

    fn object(&self, n: usize) -> FinPoset {
        FinPoset::ordinal(n)
    }

    fn generator(&self, g: Generator) -> Vec<usize> {
        g.to_map().values().to_vec()
    }
}

/// `[n] ↦ [n] × Q`, acting on the first factor.
#[derive(Debug, Clone)]
pub struct ProductWith {
    pub factor: Arc<FinPoset>,
}

impl DeltaFunctor for ProductWith {
    fn name(&self) -> String {
        format!("product-with {}", self.factor.describe())
    }

    fn target(&self) -> Target {
        Target::Pos
    }

    fn object(&self, n: usize) -> FinPoset {
        FinPoset::product(&FinPoset::ordinal(n), &self.factor)
    }

    fn generator(&self, g: Generator) -> Vec<usize> {
        let q = self.factor.len();
        let base = g.to_map();
        (0..base.values().len() * q)
            .map(|k| base.apply(k / q) * q + k % q)
            .collect()
    }
}

/// The constant functor on a one-point set; its extension counts connected
/// components.
#[derive(Debug, Clone, Copy, Default)]
pub struct Components;

impl DeltaFunctor for Components {
    fn name(&self) -> String {
        "components".into()
    }

    fn target(&self) -> Target {
        Target::Set
    }

    fn object(&self, _n: usize) -> FinPoset {
        FinPoset::antichain(vec!["*".into()])
    }

    fn generator(&self, _g: Generator) -> Vec<usize> {
        vec![0]
    }
}

/// One instance of a simplicial identity as two generator words, listed in
/// the order they act on points, both starting at `[source]`.
#[derive(Debug, Clone)]
pub struct IdentityWords {
    pub family: IdentityFamily,
    pub source: usize,
    pub i: usize,
    pub j: usize,
    pub lhs: Vec<Generator>,
    pub rhs: Vec<Generator>,
}

fn face(n: usize, index: usize) -> Generator {
    Generator {
        kind: GeneratorKind::Face,
        n,
        index,
    }
}

fn degeneracy(n: usize, index: usize) -> Generator {
    Generator {
        kind: GeneratorKind::Degeneracy,
        n,
        index,
    }
}

/// Every identity instance whose ordinals stay within `[max_n]`.
pub fn identity_words(max_n: usize) -> Vec<IdentityWords> {
    let mut out = Vec::new();
    let mut push = |family, source, i, j, lhs: Vec<Generator>, rhs: Vec<Generator>| {
        out.push(IdentityWords {
            family,
            source,
            i,
            j,
            lhs,
            rhs,
        })
    };
    // δ_j δ_i = δ_i δ_(j-1) on [n-1] -> [n+1]
    for n in 1..max_n {
        for j in 1..=n + 1 {
            for i in 0..j {
                push(
                    IdentityFamily::FaceFace,
                    n - 1,
                    i,
                    j,
                    vec![face(n, i), face(n + 1, j)],
                    vec![face(n, j - 1), face(n + 1, i)],
                );
            }
        }
    }
    // σ_j σ_i = σ_i σ_(j+1) on [n+2] -> [n]
    for n in 0..max_n.saturating_sub(1) {
        for j in 0..=n {
            for i in 0..=j {
                push(
                    IdentityFamily::DegeneracyDegeneracy,
                    n + 2,
                    i,
                    j,
                    vec![degeneracy(n + 1, i), degeneracy(n, j)],
                    vec![degeneracy(n + 1, j + 1), degeneracy(n, i)],
                );
            }
        }
    }
    // σ_j δ_i on [n] -> [n]
    for n in 0..max_n {
        for j in 0..=n {
            for i in 0..=n + 1 {
                let lhs = vec![face(n + 1, i), degeneracy(n, j)];
                if i < j {
                    push(
                        IdentityFamily::DegeneracyFaceBelow,
                        n,
                        i,
                        j,
                        lhs,
                        vec![degeneracy(n - 1, j - 1), face(n, i)],
                    );
                } else if i == j || i == j + 1 {
                    push(IdentityFamily::DegeneracyFaceIdentity, n, i, j, lhs, vec![]);
                } else {
                    push(
                        IdentityFamily::DegeneracyFaceAbove,
                        n,
                        i,
                        j,
                        lhs,
                        vec![degeneracy(n - 1, j), face(n, i - 1)],
                    );
                }
            }
        }
    }
    out
}

/// A functor together with the ordinal bound up to which its generator
/// images were checked to be maps satisfying the simplicial identities.
pub struct FunctorPresentation {
    functor: Arc<dyn DeltaFunctor>,
    checked_up_to: usize,
    objects: Mutex<HashMap<usize, Arc<FinPoset>>>,
}

impl fmt::Debug for FunctorPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FunctorPresentation")
            .field("functor", &self.functor.name())
            .field("target", &self.functor.target())
            .field("checked_up_to", &self.checked_up_to)
            .finish()
    }
}

impl FunctorPresentation {
    pub fn new(functor: Arc<dyn DeltaFunctor>, check_up_to: usize) -> Result<Self, KanError> {
        let p = Self {
            functor,
            checked_up_to: check_up_to,
            objects: Mutex::new(HashMap::new()),
        };
        p.validate()?;
        Ok(p)
    }

    pub fn inclusion() -> Self {
        Self::new(Arc::new(Inclusion), 4).expect("the inclusion is a functor")
    }

    pub fn product_with(factor: Arc<FinPoset>) -> Self {
        Self::new(Arc::new(ProductWith { factor }), 4).expect("products with a fixed poset are functors")
    }

    pub fn components() -> Self {
        Self::new(Arc::new(Components), 4).expect("a constant functor is a functor")
    }

    pub fn name(&self) -> String {
        self.functor.name()
    }

    pub fn target(&self) -> Target {
        self.functor.target()
    }

    pub fn checked_up_to(&self) -> usize {
        self.checked_up_to
    }

    fn invalid(&self, reason: String) -> KanError {
        KanError::InvalidFunctor {
            functor: self.functor.name(),
            reason,
        }
    }

    fn validate(&self) -> Result<(), KanError> {
        let max = self.checked_up_to;
        for n in 0..=max {
            let obj = self.object(n);
            if self.target() == Target::Set && obj.comparabilities() != obj.len() {
                return Err(self.invalid(format!("F([{n}]) is not a discrete set")));
            }
        }
        for n in 0..=max {
            let mut gens: Vec<Generator> = Vec::new();
            if n >= 1 {
                gens.extend((0..=n).map(|i| face(n, i)));
            }
            if n < max {
                gens.extend((0..=n).map(|i| degeneracy(n, i)));
            }
            for g in gens {
                self.generator_map(g).map_err(|e| self.invalid(e))?;
            }
        }
        for inst in identity_words(max) {
            let lhs = self.word(inst.source, &inst.lhs);
            let rhs = self.word(inst.source, &inst.rhs);
            if lhs.values() != rhs.values() {
                return Err(self.invalid(format!(
                    "images violate `{}` at source [{}], i={}, j={}",
                    inst.family.formula(),
                    inst.source,
                    inst.i,
                    inst.j
                )));
            }
        }
        Ok(())
    }

    /// `F([n])`, cached.
    pub fn object(&self, n: usize) -> Arc<FinPoset> {
        let mut cache = self.objects.lock().expect("object cache");
        Arc::clone(cache.entry(n).or_insert_with(|| Arc::new(self.functor.object(n))))
    }

    fn generator_map(&self, g: Generator) -> Result<MonotoneMap, String> {
        let (src, tgt) = (self.object(g.source().n()), self.object(g.target().n()));
        MonotoneMap::new(src, tgt, self.functor.generator(g))
            .map_err(|e| format!("image of {g} on [{}]: {e}", g.target().n()))
    }

    fn word(&self, source: usize, gens: &[Generator]) -> MonotoneMap {
        gens.iter().fold(MonotoneMap::identity(self.object(source)), |acc, &g| {
            self.generator_map(g)
                .expect("generators validated")
                .after(&acc)
                .expect("consecutive generators compose")
        })
    }

    /// `F(f)`, through the normal form of `f`.
    pub fn map(&self, f: &DeltaMap) -> MonotoneMap {
        self.word(f.source().n(), &f.factorize().applied_generators())
    }
}

/// An object `x : [n] -> P` of the comma category, as its value table.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CommaObject {
    pub chain: Vec<usize>,
}

impl CommaObject {
    pub fn n(&self) -> usize {
        self.chain.len() - 1
    }
}

/// A commuting triangle `y ∘ f = x` with `f` not an identity.
#[derive(Debug, Clone)]
pub struct CommaMorphism {
    pub source: usize,
    pub target: usize,
    pub map: DeltaMap,
}

/// The comma category `Δ ↓ P` cut off at chains of length `bound`.
#[derive(Debug, Clone)]
pub struct CommaCategory {
    pub poset: Arc<FinPoset>,
    pub bound: usize,
    pub injective_only: bool,
    pub objects: Vec<CommaObject>,
    pub morphisms: Vec<CommaMorphism>,
    index: HashMap<Vec<usize>, usize>,
}

impl CommaCategory {
    /// With `injective_only`, only strict chains and injective triangles.
    pub fn new(poset: &Arc<FinPoset>, bound: usize, injective_only: bool) -> Self {
        let mut objects = Vec::new();
        for n in 0..=bound {
            objects.extend(
                poset
                    .chains(n, injective_only)
                    .into_iter()
                    .map(|c| CommaObject { chain: c.points }),
            );
        }
        let index: HashMap<Vec<usize>, usize> = objects.iter().enumerate().map(|(k, o)| (o.chain.clone(), k)).collect();
        let mut morphisms = Vec::new();
        for (t, y) in objects.iter().enumerate() {
            let m = y.n();
            for n in 0..=bound {
                for f in DeltaMap::all_maps(Ordinal(n), Ordinal(m)) {
                    if f.is_identity() || (injective_only && !f.is_injective()) {
                        continue;
                    }
                    let x: Vec<usize> = f.values().iter().map(|&v| y.chain[v]).collect();
                    if let Some(&s) = index.get(&x) {
                        morphisms.push(CommaMorphism {
                            source: s,
                            target: t,
                            map: f,
                        });
                    }
                }
            }
        }
        Self {
            poset: Arc::clone(poset),
            bound,
            injective_only,
            objects,
            morphisms,
            index,
        }
    }

    pub fn object_index(&self, chain: &[usize]) -> Option<usize> {
        self.index.get(chain).copied()
    }

    pub fn object_label(&self, k: usize) -> String {
        tuple_label(self.objects[k].chain.iter().map(|&e| self.poset.label(e)))
    }

    /// The diagram `(Δ ↓ P) -> Δ -> C` with payloads `F([n])` and `F(f)`.
    pub fn diagram(&self, functor: &FunctorPresentation) -> PosetDiagram {
        let mut d = PosetDiagram::new(format!("{} over chains of {}", functor.name(), self.poset.describe()));
        for k in 0..self.objects.len() {
            d.add_node(self.object_label(k), functor.object(self.objects[k].n()));
        }
        let mut cache: HashMap<&DeltaMap, Vec<usize>> = HashMap::new();
        for (e, m) in self.morphisms.iter().enumerate() {
            let values = cache
                .entry(&m.map)
                .or_insert_with(|| functor.map(&m.map).values().to_vec())
                .clone();
            d.add_edge(format!("t{e}"), m.source, m.target, values)
                .expect("functor images are monotone");
        }
        d
    }
}

/// The diagram of [`CommaCategory::diagram`] for `P` at `bound`.
pub fn comma_diagram(
    functor: &FunctorPresentation,
    poset: &Arc<FinPoset>,
    bound: usize,
    injective_only: bool,
) -> PosetDiagram {
    CommaCategory::new(poset, bound, injective_only).diagram(functor)
}

/// `F̃(P)` computed at one fixed bound.
#[derive(Debug, Clone)]
pub struct Extension {
    pub poset: Arc<FinPoset>,
    pub comma: CommaCategory,
    pub cocone: Cocone,
    pub trace: ColimitTrace,
}

impl Extension {
    pub fn value(&self) -> &Arc<FinPoset> {
        &self.cocone.apex
    }

    pub fn bound(&self) -> usize {
        self.comma.bound
    }
}

pub fn extend_at(
    functor: &FunctorPresentation,
    poset: &Arc<FinPoset>,
    bound: usize,
    injective_only: bool,
) -> Extension {
    let comma = CommaCategory::new(poset, bound, injective_only);
    let diagram = comma.diagram(functor);
    let (cocone, trace) = match functor.target() {
        Target::Pos => colimit_pos_traced(&diagram),
        Target::Set => {
            let c = colimit_set(&diagram);
            let trace = ColimitTrace {
                points: diagram.nodes().iter().map(|n| n.poset.len()).sum(),
                set_classes: c.apex.len(),
                apex_size: c.apex.len(),
            };
            (c, trace)
        }
    };
    Extension {
        poset: Arc::clone(poset),
        comma,
        cocone,
        trace,
    }
}

/// The map `F̃(f) : F̃(P) -> F̃(P')` sending the image of a chain `x` to the
/// image of `f ∘ x`. Needs `to` computed at a bound at least `from`'s.
pub fn extend_morphism(f: &MonotoneMap, from: &Extension, to: &Extension) -> Result<MonotoneMap, KanError> {
    if **f.source() != *from.poset || **f.target() != *to.poset {
        return Err(KanError::Mismatch(
            "map endpoints differ from the extended posets".into(),
        ));
    }
    if to.bound() < from.bound() || to.comma.injective_only != from.comma.injective_only {
        return Err(KanError::Mismatch(
            "target extension is computed over a smaller comma category".into(),
        ));
    }
    // Element indices of f's endpoints may be ordered differently from the
    // extensions' posets; translate through labels.
    let src_ix: Vec<usize> = (0..from.poset.len())
        .map(|a| f.source().index_of(from.poset.label(a)).expect("same labels"))
        .collect();
    let mut lookup_error = None;
    let result = from.cocone.factor_through(to.value(), |k, e| {
        let image: Vec<usize> = from.comma.objects[k]
            .chain
            .iter()
            .map(|&a| {
                to.poset
                    .index_of(f.target().label(f.apply(src_ix[a])))
                    .expect("same labels")
            })
            .collect();
        match to.comma.object_index(&image) {
            Some(t) => to.cocone.legs[t].apply(e),
            None => {
                lookup_error = Some("an injective chain went to a non-injective one".to_string());
                0
            }
        }
    });
    if let Some(e) = lookup_error {
        return Err(KanError::Mismatch(e));
    }
    result.map_err(KanError::Mismatch)
}

#[derive(Debug, Clone)]
pub struct ExtensionResult {
    pub extension: Extension,
    /// Smallest tried bound `b` whose value maps isomorphically onto the value at `b + 1`.
    pub stabilization: usize,
    /// The comparison `F̃_b(P) -> F̃_(b+1)(P)`.
    pub comparison: MonotoneMap,
    /// Apex size at each bound tried, starting from the initial bound.
    pub history: Vec<(usize, usize)>,
}

impl ExtensionResult {
    pub fn value(&self) -> &Arc<FinPoset> {
        self.extension.value()
    }
}

/// Computes `F̃(P)` at increasing bounds from `initial_bound` until the
/// comparison between consecutive bounds is an isomorphism, trying bounds up
/// to `cap + 1`.
pub fn extend(
    functor: &FunctorPresentation,
    poset: &Arc<FinPoset>,
    initial_bound: usize,
    cap: usize,
) -> Result<ExtensionResult, KanError> {
    let height = poset.height();
    if initial_bound < height {
        return Err(KanError::InsufficientBound {
            bound: initial_bound,
            height,
        });
    }
    let identity = MonotoneMap::identity(Arc::clone(poset));
    let mut current = extend_at(functor, poset, initial_bound, false);
    let mut history = vec![(initial_bound, current.value().len())];
    let mut b = initial_bound;
    loop {
        let next = extend_at(functor, poset, b + 1, false);
        history.push((b + 1, next.value().len()));
        if let Ok(u) = extend_morphism(&identity, &current, &next) {
            if u.is_isomorphism() {
                return Ok(ExtensionResult {
                    extension: current,
                    stabilization: b,
                    comparison: u,
                    history,
                });
            }
        }
        if b >= cap {
            return Err(KanError::NotStabilized {
                cap,
                previous_bound: b,
                previous: current.value().describe(),
                current_bound: b + 1,
                current: next.value().describe(),
            });
        }
        current = next;
        b += 1;
    }
}

/// Comparison of `F̃(colim D)` with the colimit of the `F̃`-images of `D`.
#[derive(Debug, Clone)]
pub struct CocontinuityCheck {
    pub bound: usize,
    pub extension_of_colimit: Arc<FinPoset>,
    pub colimit_of_extensions: Arc<FinPoset>,
    /// The canonical map `colim F̃(D) -> F̃(colim D)`, or why it is not defined.
    pub comparison: Result<MonotoneMap, String>,
}

impl CocontinuityCheck {
    pub fn pass(&self) -> bool {
        self.comparison.as_ref().is_ok_and(MonotoneMap::is_isomorphism)
    }
}

/// Checks that the canonical comparison map is an isomorphism, with every
/// extension computed at one bound (by default one more than the largest
/// height involved).
pub fn check_extension_cocontinuity(
    functor: &FunctorPresentation,
    diagram: &PosetDiagram,
    bound: Option<usize>,
) -> Result<CocontinuityCheck, KanError> {
    let colim = colimit_pos(diagram);
    let max_height = diagram
        .nodes()
        .iter()
        .map(|n| n.poset.height())
        .chain(std::iter::once(colim.apex.height()))
        .max()
        .unwrap_or(0);
    let bound = bound.unwrap_or(max_height + 1);
    if bound < max_height {
        return Err(KanError::InsufficientBound {
            bound,
            height: max_height,
        });
    }
    let at_colimit = extend_at(functor, &colim.apex, bound, false);
    let at_nodes: Vec<Extension> = diagram
        .nodes()
        .iter()
        .map(|n| extend_at(functor, &n.poset, bound, false))
        .collect();
    let mut images = PosetDiagram::new(format!("{} applied to {}", functor.name(), diagram.name));
    for (node, ext) in diagram.nodes().iter().zip(&at_nodes) {
        images.add_node(node.id.clone(), Arc::clone(ext.value()));
    }
    for e in diagram.edges() {
        let m = extend_morphism(&e.map, &at_nodes[e.source], &at_nodes[e.target])?;
        images
            .add_edge(e.id.clone(), e.source, e.target, m.values().to_vec())
            .map_err(|err| KanError::Mismatch(err.to_string()))?;
    }
    let rhs = match functor.target() {
        Target::Pos => colimit_pos(&images),
        Target::Set => colimit_set(&images),
    };
    let legs: Vec<MonotoneMap> = colim
        .legs
        .iter()
        .zip(&at_nodes)
        .map(|(leg, ext)| extend_morphism(leg, ext, &at_colimit))
        .collect::<Result<_, _>>()?;
    let comparison = rhs.factor_through(at_colimit.value(), |k, e| legs[k].apply(e));
    Ok(CocontinuityCheck {
        bound,
        extension_of_colimit: Arc::clone(at_colimit.value()),
        colimit_of_extensions: rhs.apex,
        comparison,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::posets_up_to;
    use crate::iso::are_isomorphic;
    use crate::poset::make_poset;

    fn arc(p: FinPoset) -> Arc<FinPoset> {
        Arc::new(p)
    }

    fn vee() -> Arc<FinPoset> {
        arc(make_poset(&["a", "b", "c"], &[("a", "c"), ("b", "c")]).unwrap())
    }

    /// Number of connected components of the comparability graph.
    fn component_count(p: &FinPoset) -> usize {
        let n = p.len();
        let mut comp: Vec<usize> = (0..n).collect();
        fn root(c: &mut [usize], x: usize) -> usize {
            if c[x] == x {
                x
            } else {
                let r = root(c, c[x]);
                c[x] = r;
                r
            }
        }
        for a in 0..n {
            for b in 0..n {
                if p.leq(a, b) {
                    let (ra, rb) = (root(&mut comp, a), root(&mut comp, b));
                    comp[ra] = rb;
                }
            }
        }
        (0..n).filter(|&x| root(&mut comp, x) == x).count()
    }

    #[test]
    fn identity_word_counts() {
        // Same instance counts as the Δ-side identity verification.
        let words = identity_words(4);
        let report = crate::delta::verify_simplicial_identities(4);
        for family in IdentityFamily::ALL {
            let here = words.iter().filter(|w| w.family == family).count();
            assert_eq!(here, report.count(family), "{}", family.key());
        }
    }

    #[test]
    fn identity_words_hold_in_delta() {
        let inc = FunctorPresentation::inclusion();
        for w in identity_words(5) {
            assert_eq!(inc.word(w.source, &w.lhs).values(), inc.word(w.source, &w.rhs).values());
        }
    }

    struct Broken;

    impl DeltaFunctor for Broken {
        fn name(&self) -> String {
            "broken".into()
        }
        fn target(&self) -> Target {
            Target::Pos
        }
        fn object(&self, n: usize) -> FinPoset {
            FinPoset::ordinal(n)
        }
        fn generator(&self, g: Generator) -> Vec<usize> {
            // σ_0 and σ_1 swapped on [2] -> [1]
            if g.kind == GeneratorKind::Degeneracy && g.n == 1 {
                return crate::delta::generator(GeneratorKind::Degeneracy, 1, 1 - g.index)
                    .unwrap()
                    .values()
                    .to_vec();
            }
            g.to_map().values().to_vec()
        }
    }

    #[test]
    fn rejects_functor_violating_identities() {
        let err = FunctorPresentation::new(Arc::new(Broken), 3).unwrap_err();
        assert!(matches!(err, KanError::InvalidFunctor { .. }), "{err}");
    }

    #[test]
    fn comma_shapes() {
        let pt = arc(FinPoset::ordinal(0));
        let c = CommaCategory::new(&pt, 1, false);
        assert_eq!(c.objects.len(), 2);
        // δ0, δ1 : [0] -> [1], σ0 : [1] -> [0] and the two constant endomaps of [1]
        assert_eq!(c.morphisms.len(), 5);

        let anti = arc(make_poset(&["a", "b"], &[]).unwrap());
        let c = CommaCategory::new(&anti, 0, false);
        assert_eq!(c.objects.len(), 2);
        assert!(c.morphisms.is_empty());

        let two = arc(FinPoset::ordinal(1));
        let c = CommaCategory::new(&two, 1, false);
        assert_eq!(c.objects.len(), 2 + 3);
        for m in &c.morphisms {
            let (x, y) = (&c.objects[m.source], &c.objects[m.target]);
            let composite: Vec<usize> = m.map.values().iter().map(|&v| y.chain[v]).collect();
            assert_eq!(composite, x.chain);
        }
    }

    #[test]
    fn extending_the_inclusion() {
        let inc = FunctorPresentation::inclusion();
        let v = vee();
        let r = extend(&inc, &v, v.height(), v.height() + 3).unwrap();
        assert!(are_isomorphic(r.value(), &v));
        for n in 0..=3 {
            let chain = arc(FinPoset::ordinal(n));
            let r = extend(&inc, &chain, n, n + 3).unwrap();
            assert!(are_isomorphic(r.value(), &chain));
        }
    }

    #[test]
    fn injective_chains_give_the_same_value() {
        let inc = FunctorPresentation::inclusion();
        let prod = FunctorPresentation::product_with(arc(FinPoset::ordinal(1)));
        for p in posets_up_to(3) {
            let p = arc(p);
            for f in [&inc, &prod] {
                let all = extend_at(f, &p, p.height(), false);
                let inj = extend_at(f, &p, p.height(), true);
                assert!(are_isomorphic(all.value(), inj.value()));
            }
        }
    }

    #[test]
    fn product_functor() {
        let q = arc(FinPoset::ordinal(1));
        let prod = FunctorPresentation::product_with(Arc::clone(&q));
        let v = vee();
        let r = extend(&prod, &v, v.height(), v.height() + 3).unwrap();
        assert!(are_isomorphic(r.value(), &FinPoset::product(&v, &q)));
    }

    #[test]
    fn components_functor_counts_components() {
        let comp = FunctorPresentation::components();
        assert_eq!(comp.target(), Target::Set);
        for p in posets_up_to(4) {
            let p = arc(p);
            let r = extend(&comp, &p, p.height(), p.height() + 3).unwrap();
            assert_eq!(r.value().len(), component_count(&p), "{}", p.describe());
        }
    }

    #[test]
    fn insufficient_bound() {
        let inc = FunctorPresentation::inclusion();
        let err = extend(&inc, &arc(FinPoset::ordinal(3)), 2, 5).unwrap_err();
        assert_eq!(err, KanError::InsufficientBound { bound: 2, height: 3 });
    }

    #[test]
    fn cocontinuity_on_small_diagrams() {
        let inc = FunctorPresentation::inclusion();
        let prod = FunctorPresentation::product_with(arc(FinPoset::ordinal(1)));

        // Pushout of two arrows along a point.
        let mut d = PosetDiagram::new("glue");
        let p = d.add_node("pt", arc(FinPoset::ordinal(0)));
        let a = d.add_node("l", arc(FinPoset::ordinal(1)));
        let b = d.add_node("r", arc(FinPoset::ordinal(1)));
        d.add_edge("f", p, a, vec![1]).unwrap();
        d.add_edge("g", p, b, vec![0]).unwrap();
        let c = check_extension_cocontinuity(&inc, &d, None).unwrap();
        assert!(c.pass());
        assert!(are_isomorphic(&c.extension_of_colimit, &FinPoset::ordinal(2)));

        let mut single = PosetDiagram::new("single");
        single.add_node("v", vee());
        assert!(check_extension_cocontinuity(&prod, &single, None).unwrap().pass());

        let mut coeq = PosetDiagram::new("coeq");
        let p = coeq.add_node("pt", arc(FinPoset::ordinal(0)));
        let a = coeq.add_node("arrow", arc(FinPoset::ordinal(1)));
        coeq.add_edge("d0", p, a, vec![1]).unwrap();
        coeq.add_edge("d1", p, a, vec![0]).unwrap();
        let c = check_extension_cocontinuity(&prod, &coeq, None).unwrap();
        assert!(c.pass());
        assert!(are_isomorphic(&c.colimit_of_extensions, &FinPoset::ordinal(1)));
    }

    #[test]
    fn morphisms_compose() {
        let inc = FunctorPresentation::inclusion();
        let v = vee();
        let c = arc(FinPoset::ordinal(1));
        let ev = extend_at(&inc, &v, 2, false);
        let ec = extend_at(&inc, &c, 2, false);
        let maps_vc = v.monotone_maps_to(&c);
        let maps_cc = c.monotone_maps_to(&c);
        for f in &maps_vc {
            for g in &maps_cc {
                let ef = extend_morphism(f, &ev, &ec).unwrap();
                let eg = extend_morphism(g, &ec, &ec).unwrap();
                let egf = extend_morphism(&g.after(f).unwrap(), &ev, &ec).unwrap();
                assert_eq!(eg.after(&ef).unwrap().values(), egf.values());
            }
        }
    }
}
