//! Truncated simplicial sets, simplicial maps and the nerve of a poset.
//!
//! A `K`-truncated simplicial set stores finite levels `X_0..X_K` of opaque
//! simplex ids, face tables `d_i : X_n -> X_(n-1)` and degeneracy tables
//! `s_i : X_n -> X_(n+1)`, indexed by the level of the simplex they act on.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::delta::{DeltaMap, GeneratorKind, IdentityFamily};
use crate::poset::{tuple_label, FinPoset, MonotoneMap};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SsetError {
    #[error("level {level} is beyond the truncation {trunc}")]
    Truncation { level: usize, trunc: usize },
    #[error("duplicate simplex `{id}` at level {level}")]
    DuplicateSimplex { level: usize, id: String },
    #[error("unknown simplex `{id}` at level {level}")]
    UnknownSimplex { level: usize, id: String },
    #[error("{op}_{i} is not defined on level {level}")]
    BadIndex { op: char, level: usize, i: usize },
    #[error("{op}_{i}(`{id}`) at level {level} is missing")]
    MissingEntry {
        op: char,
        level: usize,
        i: usize,
        id: String,
    },
    #[error("{op}_{i}(`{id}`) at level {level} is given twice with different values")]
    ConflictingEntry {
        op: char,
        level: usize,
        i: usize,
        id: String,
    },
    #[error("identity {violation}")]
    Identity { violation: IdentityViolation },
    #[error("simplicial map: {0}")]
    Map(String),
}

/// A failing instance of a dual simplicial identity on one simplex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityViolation {
    pub family: IdentityFamily,
    /// Level of the simplex the composite is applied to.
    pub level: usize,
    pub i: usize,
    pub j: usize,
    pub simplex: String,
    pub lhs: String,
    pub rhs: String,
}

impl fmt::Display for IdentityViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "`{}` fails at n={} i={} j={} on `{}`: {} != {}",
            self.family.formula(),
            self.level,
            self.i,
            self.j,
            self.simplex,
            self.lhs,
            self.rhs
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSimplicialSet {
    name: String,
    trunc: usize,
    levels: Vec<Vec<String>>,
    index: Vec<HashMap<String, usize>>,
    /// `faces[n][i][x] = d_i x` for `1 <= n <= K`; `faces[0]` is empty.
    faces: Vec<Vec<Vec<usize>>>,
    /// `degeneracies[n][i][x] = s_i x` for `n < K`; `degeneracies[K]` is empty.
    degeneracies: Vec<Vec<Vec<usize>>>,
}

/// Collects simplices and table entries by id; [`build`](SsetBuilder::build)
/// checks totality and the identities.
#[derive(Debug, Clone)]
pub struct SsetBuilder {
    name: String,
    trunc: usize,
    levels: Vec<Vec<String>>,
    faces: Vec<(usize, usize, String, String)>,
    degeneracies: Vec<(usize, usize, String, String)>,
}

impl SsetBuilder {
    pub fn new(name: impl Into<String>, trunc: usize) -> Self {
        Self {
            name: name.into(),
            trunc,
            levels: vec![Vec::new(); trunc + 1],
            faces: Vec::new(),
            degeneracies: Vec::new(),
        }
    }

    pub fn simplex(&mut self, level: usize, id: impl Into<String>) -> Result<&mut Self, SsetError> {
        if level > self.trunc {
            return Err(SsetError::Truncation {
                level,
                trunc: self.trunc,
            });
        }
        let id = id.into();
        if self.levels[level].contains(&id) {
            return Err(SsetError::DuplicateSimplex { level, id });
        }
        self.levels[level].push(id);
        Ok(self)
    }

    /// `d_i(id) = image` with `id` at `level`.
    pub fn face(&mut self, level: usize, i: usize, id: impl Into<String>, image: impl Into<String>) -> &mut Self {
        self.faces.push((level, i, id.into(), image.into()));
        self
    }

    /// `s_i(id) = image` with `id` at `level`.
    pub fn degeneracy(&mut self, level: usize, i: usize, id: impl Into<String>, image: impl Into<String>) -> &mut Self {
        self.degeneracies.push((level, i, id.into(), image.into()));
        self
    }

    /// Tables only, without the identity check.
    pub fn build_unchecked(&self) -> Result<TruncatedSimplicialSet, SsetError> {
        let k = self.trunc;
        let index: Vec<HashMap<String, usize>> = self
            .levels
            .iter()
            .map(|l| l.iter().enumerate().map(|(x, id)| (id.clone(), x)).collect())
            .collect();
        let lookup = |level: usize, id: &str| {
            index[level].get(id).copied().ok_or_else(|| SsetError::UnknownSimplex {
                level,
                id: id.to_string(),
            })
        };
        let fill = |op: char,
                    entries: &[(usize, usize, String, String)],
                    defined: &dyn Fn(usize) -> bool,
                    shift: &dyn Fn(usize) -> usize|
         -> Result<Vec<Vec<Vec<usize>>>, SsetError> {
            let mut tables: Vec<Vec<Vec<Option<usize>>>> = (0..=k)
                .map(|n| {
                    if defined(n) {
                        vec![vec![None; self.levels[n].len()]; n + 1]
                    } else {
                        Vec::new()
                    }
                })
                .collect();
            for (level, i, id, image) in entries {
                let (level, i) = (*level, *i);
                if level > k {
                    return Err(SsetError::Truncation { level, trunc: k });
                }
                if !defined(level) || i > level {
                    return Err(SsetError::BadIndex { op, level, i });
                }
                let x = lookup(level, id)?;
                let y = lookup(shift(level), image)?;
                let slot = &mut tables[level][i][x];
                match *slot {
                    Some(prev) if prev != y => {
                        return Err(SsetError::ConflictingEntry {
                            op,
                            level,
                            i,
                            id: id.clone(),
                        })
                    }
                    _ => *slot = Some(y),
                }
            }
            tables
                .into_iter()
                .enumerate()
                .map(|(level, rows)| {
                    rows.into_iter()
                        .enumerate()
                        .map(|(i, row)| {
                            row.into_iter()
                                .enumerate()
                                .map(|(x, v)| {
                                    v.ok_or_else(|| SsetError::MissingEntry {
                                        op,
                                        level,
                                        i,
                                        id: self.levels[level][x].clone(),
                                    })
                                })
                                .collect()
                        })
                        .collect()
                })
                .collect()
        };
        let faces = fill('d', &self.faces, &|n| n >= 1, &|n| n - 1)?;
        let degeneracies = fill('s', &self.degeneracies, &|n| n < k, &|n| n + 1)?;
        Ok(TruncatedSimplicialSet {
            name: self.name.clone(),
            trunc: k,
            levels: self.levels.clone(),
            index,
            faces,
            degeneracies,
        })
    }

    pub fn build(&self) -> Result<TruncatedSimplicialSet, SsetError> {
        let x = self.build_unchecked()?;
        x.validate()?;
        Ok(x)
    }
}

impl TruncatedSimplicialSet {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    pub fn level(&self, n: usize) -> &[String] {
        &self.levels[n]
    }

    pub fn level_size(&self, n: usize) -> usize {
        self.levels[n].len()
    }

    pub fn id(&self, n: usize, x: usize) -> &str {
        &self.levels[n][x]
    }

    pub fn index_of(&self, n: usize, id: &str) -> Option<usize> {
        self.index.get(n)?.get(id).copied()
    }

    /// `d_i x` for `x` in `X_n`.
    pub fn face(&self, n: usize, i: usize, x: usize) -> usize {
        self.faces[n][i][x]
    }

    /// `s_i x` for `x` in `X_n`.
    pub fn degeneracy(&self, n: usize, i: usize, x: usize) -> usize {
        self.degeneracies[n][i][x]
    }

    pub fn face_table(&self, n: usize, i: usize) -> &[usize] {
        &self.faces[n][i]
    }

    pub fn degeneracy_table(&self, n: usize, i: usize) -> &[usize] {
        &self.degeneracies[n][i]
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Every failing instance of the five dual identity families, in a fixed
    /// order (family, level, indices, simplex).
    pub fn identity_violations(&self) -> Vec<IdentityViolation> {
        let k = self.trunc;
        let mut out = Vec::new();
        let mut check = |family, level: usize, i, j, x: usize, lhs: (usize, usize), rhs: (usize, usize)| {
            if lhs != rhs {
                out.push(IdentityViolation {
                    family,
                    level,
                    i,
                    j,
                    simplex: self.levels[level][x].clone(),
                    lhs: self.levels[lhs.0][lhs.1].clone(),
                    rhs: self.levels[rhs.0][rhs.1].clone(),
                });
            }
        };
        // d_i d_j = d_(j-1) d_i on X_n, i < j.
        for n in 2..=k {
            for j in 1..=n {
                for i in 0..j {
                    for x in 0..self.level_size(n) {
                        let lhs = self.face(n - 1, i, self.face(n, j, x));
                        let rhs = self.face(n - 1, j - 1, self.face(n, i, x));
                        check(IdentityFamily::FaceFace, n, i, j, x, (n - 2, lhs), (n - 2, rhs));
                    }
                }
            }
        }
        // s_i s_j = s_(j+1) s_i on X_n, i <= j.
        for n in 0..(k.saturating_sub(1)) {
            for j in 0..=n {
                for i in 0..=j {
                    for x in 0..self.level_size(n) {
                        let lhs = self.degeneracy(n + 1, i, self.degeneracy(n, j, x));
                        let rhs = self.degeneracy(n + 1, j + 1, self.degeneracy(n, i, x));
                        check(
                            IdentityFamily::DegeneracyDegeneracy,
                            n,
                            i,
                            j,
                            x,
                            (n + 2, lhs),
                            (n + 2, rhs),
                        );
                    }
                }
            }
        }
        // Mixed families on X_n: d_i s_j with s_j : X_n -> X_(n+1).
        for n in 0..k {
            for j in 0..=n {
                for i in 0..=n + 1 {
                    for x in 0..self.level_size(n) {
                        let lhs = self.face(n + 1, i, self.degeneracy(n, j, x));
                        let (family, rhs) = if i < j {
                            // d_i s_j = s_(j-1) d_i
                            let r = self.degeneracy(n - 1, j - 1, self.face(n, i, x));
                            (IdentityFamily::DegeneracyFaceBelow, r)
                        } else if i == j || i == j + 1 {
                            (IdentityFamily::DegeneracyFaceIdentity, x)
                        } else {
                            // d_i s_j = s_j d_(i-1)
                            let r = self.degeneracy(n - 1, j, self.face(n, i - 1, x));
                            (IdentityFamily::DegeneracyFaceAbove, r)
                        };
                        check(family, n, i, j, x, (n, lhs), (n, rhs));
                    }
                }
            }
        }
        out
    }

    pub fn validate(&self) -> Result<(), SsetError> {
        match self.identity_violations().into_iter().next() {
            Some(violation) => Err(SsetError::Identity { violation }),
            None => Ok(()),
        }
    }

    /// The presheaf action `X(f) : X_target -> X_source` of a map in Δ, as a
    /// table over `X_target`.
    pub fn evaluate(&self, f: &DeltaMap) -> Result<Vec<usize>, SsetError> {
        for end in [f.source().n(), f.target().n()] {
            if end > self.trunc {
                return Err(SsetError::Truncation {
                    level: end,
                    trunc: self.trunc,
                });
            }
        }
        let word = f.factorize();
        let mut table: Vec<usize> = (0..self.level_size(f.target().n())).collect();
        // f = g_r ∘ ... ∘ g_1, so X(f) = X(g_1) ∘ ... ∘ X(g_r): apply X(g_r) first.
        for g in word.applied_generators().iter().rev() {
            for v in &mut table {
                *v = match g.kind {
                    GeneratorKind::Face => self.face(g.n, g.index, *v),
                    GeneratorKind::Degeneracy => self.degeneracy(g.n, g.index, *v),
                };
            }
        }
        Ok(table)
    }

    /// The restriction to levels `0..=k`.
    pub fn truncate(&self, k: usize) -> TruncatedSimplicialSet {
        assert!(k <= self.trunc, "cannot raise the truncation");
        let mut degeneracies = self.degeneracies[..=k].to_vec();
        degeneracies[k] = Vec::new();
        TruncatedSimplicialSet {
            name: self.name.clone(),
            trunc: k,
            levels: self.levels[..=k].to_vec(),
            index: self.index[..=k].to_vec(),
            faces: self.faces[..=k].to_vec(),
            degeneracies,
        }
    }

    /// Renames every simplex; `rename(level, id)` must be injective per level.
    pub fn relabel(&self, mut rename: impl FnMut(usize, &str) -> String) -> Result<TruncatedSimplicialSet, SsetError> {
        let levels: Vec<Vec<String>> = self
            .levels
            .iter()
            .enumerate()
            .map(|(n, l)| l.iter().map(|id| rename(n, id)).collect())
            .collect();
        let mut index = Vec::with_capacity(levels.len());
        for (n, l) in levels.iter().enumerate() {
            let mut map = HashMap::with_capacity(l.len());
            for (x, id) in l.iter().enumerate() {
                if map.insert(id.clone(), x).is_some() {
                    return Err(SsetError::DuplicateSimplex {
                        level: n,
                        id: id.clone(),
                    });
                }
            }
            index.push(map);
        }
        Ok(TruncatedSimplicialSet {
            levels,
            index,
            ..self.clone()
        })
    }

    /// Replays the data into a builder, e.g. to corrupt a table.
    pub fn to_builder(&self) -> SsetBuilder {
        let mut b = SsetBuilder::new(self.name.clone(), self.trunc);
        b.levels = self.levels.clone();
        for n in 0..=self.trunc {
            for (i, row) in self.faces[n].iter().enumerate() {
                for (x, &y) in row.iter().enumerate() {
                    b.faces
                        .push((n, i, self.levels[n][x].clone(), self.levels[n - 1][y].clone()));
                }
            }
            for (i, row) in self.degeneracies[n].iter().enumerate() {
                for (x, &y) in row.iter().enumerate() {
                    b.degeneracies
                        .push((n, i, self.levels[n][x].clone(), self.levels[n + 1][y].clone()));
                }
            }
        }
        b
    }
}

impl SsetBuilder {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    /// Drops a simplex and every table entry that mentions it.
    pub fn remove_simplex(&mut self, level: usize, id: &str) -> &mut Self {
        self.levels[level].retain(|s| s != id);
        self.faces
            .retain(|(n, _, x, y)| !((*n == level && x == id) || (*n == level + 1 && y == id)));
        self.degeneracies
            .retain(|(n, _, x, y)| !((*n == level && x == id) || (n + 1 == level && y == id)));
        self
    }

    /// Replaces the value of `d_i(id)` (or adds it).
    pub fn set_face(&mut self, level: usize, i: usize, id: &str, image: &str) -> &mut Self {
        self.faces.retain(|(n, k, x, _)| !(*n == level && *k == i && x == id));
        self.face(level, i, id, image)
    }

    /// Replaces the value of `s_i(id)` (or adds it).
    pub fn set_degeneracy(&mut self, level: usize, i: usize, id: &str, image: &str) -> &mut Self {
        self.degeneracies
            .retain(|(n, k, x, _)| !(*n == level && *k == i && x == id));
        self.degeneracy(level, i, id, image)
    }

    pub fn simplices(&self, level: usize) -> &[String] {
        &self.levels[level]
    }

    pub fn face_entries(&self) -> &[(usize, usize, String, String)] {
        &self.faces
    }

    pub fn degeneracy_entries(&self) -> &[(usize, usize, String, String)] {
        &self.degeneracies
    }
}

/// The nerve of `p` truncated at `trunc`: `n`-simplices are weakly increasing
/// `(n+1)`-tuples, faces delete and degeneracies repeat a position.
pub fn nerve(p: &FinPoset, trunc: usize) -> TruncatedSimplicialSet {
    let chains: Vec<Vec<Vec<usize>>> = (0..=trunc)
        .map(|n| p.chains(n, false).into_iter().map(|c| c.points).collect())
        .collect();
    let positions: Vec<HashMap<&[usize], usize>> = chains
        .iter()
        .map(|level| level.iter().enumerate().map(|(x, c)| (c.as_slice(), x)).collect())
        .collect();
    let levels: Vec<Vec<String>> = chains
        .iter()
        .map(|level| {
            level
                .iter()
                .map(|c| tuple_label(c.iter().map(|&k| p.label(k))))
                .collect()
        })
        .collect();
    let index = levels
        .iter()
        .map(|l| l.iter().enumerate().map(|(x, id)| (id.clone(), x)).collect())
        .collect();
    let faces = (0..=trunc)
        .map(|n| {
            if n == 0 {
                return Vec::new();
            }
            (0..=n)
                .map(|i| {
                    chains[n]
                        .iter()
                        .map(|c| {
                            let mut d = c.clone();
                            d.remove(i);
                            positions[n - 1][d.as_slice()]
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    let degeneracies = (0..=trunc)
        .map(|n| {
            if n == trunc {
                return Vec::new();
            }
            (0..=n)
                .map(|i| {
                    chains[n]
                        .iter()
                        .map(|c| {
                            let mut s = c.clone();
                            s.insert(i, c[i]);
                            positions[n + 1][s.as_slice()]
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    TruncatedSimplicialSet {
        name: format!("nerve({})", p.describe()),
        trunc,
        levels,
        index,
        faces,
        degeneracies,
    }
}

/// Level-wise functions commuting with every face and degeneracy table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialMap {
    source: Arc<TruncatedSimplicialSet>,
    target: Arc<TruncatedSimplicialSet>,
    components: Vec<Vec<usize>>,
}

impl SimplicialMap {
    pub fn new(
        source: Arc<TruncatedSimplicialSet>,
        target: Arc<TruncatedSimplicialSet>,
        components: Vec<Vec<usize>>,
    ) -> Result<Self, SsetError> {
        if source.trunc != target.trunc {
            return Err(SsetError::Map(format!(
                "truncations differ ({} vs {})",
                source.trunc, target.trunc
            )));
        }
        if components.len() != source.trunc + 1 {
            return Err(SsetError::Map("one component per level is required".into()));
        }
        for (n, c) in components.iter().enumerate() {
            if c.len() != source.level_size(n) || c.iter().any(|&y| y >= target.level_size(n)) {
                return Err(SsetError::Map(format!(
                    "component at level {n} is not a function X_{n} -> Y_{n}"
                )));
            }
        }
        let map = Self {
            source,
            target,
            components,
        };
        if let Some(problem) = map.first_non_commuting() {
            return Err(SsetError::Map(problem));
        }
        Ok(map)
    }

    fn first_non_commuting(&self) -> Option<String> {
        let (x, y) = (&*self.source, &*self.target);
        for n in 0..=x.trunc {
            for s in 0..x.level_size(n) {
                let img = self.components[n][s];
                if n >= 1 {
                    for i in 0..=n {
                        if y.face(n, i, img) != self.components[n - 1][x.face(n, i, s)] {
                            return Some(format!("does not commute with d_{i} at `{}`", x.id(n, s)));
                        }
                    }
                }
                if n < x.trunc {
                    for i in 0..=n {
                        if y.degeneracy(n, i, img) != self.components[n + 1][x.degeneracy(n, i, s)] {
                            return Some(format!("does not commute with s_{i} at `{}`", x.id(n, s)));
                        }
                    }
                }
            }
        }
        None
    }

    pub fn source(&self) -> &Arc<TruncatedSimplicialSet> {
        &self.source
    }

    pub fn target(&self) -> &Arc<TruncatedSimplicialSet> {
        &self.target
    }

    pub fn component(&self, n: usize) -> &[usize] {
        &self.components[n]
    }

    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    pub fn identity(x: Arc<TruncatedSimplicialSet>) -> Self {
        let components = (0..=x.trunc).map(|n| (0..x.level_size(n)).collect()).collect();
        Self {
            source: Arc::clone(&x),
            target: x,
            components,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target
            && self
                .components
                .iter()
                .all(|c| c.iter().enumerate().all(|(i, &v)| i == v))
    }

    /// `self ∘ inner`.
    pub fn after(&self, inner: &SimplicialMap) -> Result<SimplicialMap, SsetError> {
        if *inner.target != *self.source {
            return Err(SsetError::Map("composition of non-matching maps".into()));
        }
        let components = inner
            .components
            .iter()
            .zip(&self.components)
            .map(|(f, g)| f.iter().map(|&v| g[v]).collect())
            .collect();
        Ok(SimplicialMap {
            source: Arc::clone(&inner.source),
            target: Arc::clone(&self.target),
            components,
        })
    }

    pub fn is_levelwise_bijective(&self) -> bool {
        self.components.iter().enumerate().all(|(n, c)| {
            let mut hit = vec![false; self.target.level_size(n)];
            c.len() == hit.len() && c.iter().all(|&v| !std::mem::replace(&mut hit[v], true))
        })
    }
}

/// The nerve of a monotone map: apply it pointwise to tuples.
pub fn nerve_map(f: &MonotoneMap, trunc: usize) -> SimplicialMap {
    let source = Arc::new(nerve(f.source(), trunc));
    let target = Arc::new(nerve(f.target(), trunc));
    nerve_map_between(f, source, target)
}

/// As [`nerve_map`], reusing already built nerves of the endpoints.
pub fn nerve_map_between(
    f: &MonotoneMap,
    source: Arc<TruncatedSimplicialSet>,
    target: Arc<TruncatedSimplicialSet>,
) -> SimplicialMap {
    let components = (0..=source.trunc)
        .map(|n| {
            f.source()
                .chains(n, false)
                .into_iter()
                .map(|c| {
                    let id = tuple_label(c.points.iter().map(|&k| f.target().label(f.apply(k))));
                    target.index_of(n, &id).expect("image of a chain is a chain")
                })
                .collect()
        })
        .collect();
    SimplicialMap {
        source,
        target,
        components,
    }
}

/// All simplicial maps `x -> y`, lexicographic in the concatenated component
/// tables (level 0 first).
pub fn simplicial_maps(x: &Arc<TruncatedSimplicialSet>, y: &Arc<TruncatedSimplicialSet>) -> Vec<SimplicialMap> {
    assert_eq!(x.trunc, y.trunc, "simplicial maps need equal truncations");
    let order: Vec<(usize, usize)> = (0..=x.trunc)
        .flat_map(|n| (0..x.level_size(n)).map(move |s| (n, s)))
        .collect();
    let mut components: Vec<Vec<usize>> = (0..=x.trunc).map(|n| vec![usize::MAX; x.level_size(n)]).collect();
    let mut out = Vec::new();
    maps_rec(x, y, &order, 0, &mut components, &mut out);
    out.into_iter()
        .map(|components| SimplicialMap {
            source: Arc::clone(x),
            target: Arc::clone(y),
            components,
        })
        .collect()
}

fn maps_rec(
    x: &TruncatedSimplicialSet,
    y: &TruncatedSimplicialSet,
    order: &[(usize, usize)],
    k: usize,
    components: &mut Vec<Vec<usize>>,
    out: &mut Vec<Vec<Vec<usize>>>,
) {
    let Some(&(n, s)) = order.get(k) else {
        out.push(components.clone());
        return;
    };
    'candidate: for img in 0..y.level_size(n) {
        // Faces land one level down, which is already assigned.
        if n >= 1 {
            for i in 0..=n {
                if y.face(n, i, img) != components[n - 1][x.face(n, i, s)] {
                    continue 'candidate;
                }
            }
            // s_i maps from the level below into this one.
            for i in 0..n {
                for (t, &below) in components[n - 1].iter().enumerate() {
                    if x.degeneracy(n - 1, i, t) == s && y.degeneracy(n - 1, i, below) != img {
                        continue 'candidate;
                    }
                }
            }
        }
        components[n][s] = img;
        maps_rec(x, y, order, k + 1, components, out);
        components[n][s] = usize::MAX;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::delta::compose;
    use crate::poset::make_poset;

    fn antichain2() -> FinPoset {
        make_poset(&["a", "b"], &[]).unwrap()
    }

    #[test]
    fn nerve_of_two_chain() {
        let x = nerve(&FinPoset::ordinal(1), 1);
        assert_eq!(x.level(0), ["0", "1"]);
        assert_eq!(x.level(1), ["(0,0)", "(0,1)", "(1,1)"]);
        let d0: Vec<&str> = (0..3).map(|s| x.id(0, x.face(1, 0, s))).collect();
        assert_eq!(d0, ["0", "1", "1"]);
        x.validate().unwrap();
    }

    #[test]
    fn nerve_of_antichain_and_point() {
        let x = nerve(&antichain2(), 2);
        assert_eq!(x.level(2), ["(a,a,a)", "(b,b,b)"]);
        let pt = nerve(&FinPoset::ordinal(0), 4);
        assert!((0..=4).all(|n| pt.level_size(n) == 1));
    }

    #[test]
    fn nerves_are_valid() {
        for p in crate::corpus::posets_up_to(4) {
            nerve(&p, 3).validate().unwrap();
        }
    }

    #[test]
    fn corrupted_degeneracy_is_named() {
        let x = nerve(&FinPoset::ordinal(1), 1);
        let mut b = x.to_builder();
        b.set_degeneracy(0, 0, "0", "(0,1)");
        let err = b.build().unwrap_err();
        let SsetError::Identity { violation } = err else {
            panic!("expected an identity violation, got {err:?}");
        };
        assert_eq!(violation.family, IdentityFamily::DegeneracyFaceIdentity);
        assert_eq!(violation.simplex, "0");
        assert!(violation.to_string().contains("σj δi = id"));
    }

    #[test]
    fn level_zero_is_just_a_set() {
        let mut b = SsetBuilder::new("set", 0);
        b.simplex(0, "p").unwrap().simplex(0, "q").unwrap();
        let x = b.build().unwrap();
        assert_eq!(x.level_size(0), 2);
    }

    #[test]
    fn builder_reports_missing_entries() {
        let mut b = SsetBuilder::new("partial", 1);
        b.simplex(0, "v").unwrap().simplex(1, "e").unwrap();
        b.face(1, 0, "e", "v");
        assert!(matches!(b.build(), Err(SsetError::MissingEntry { op: 'd', i: 1, .. })));
        b.face(1, 1, "e", "v");
        assert!(matches!(b.build(), Err(SsetError::MissingEntry { op: 's', .. })));
        b.degeneracy(0, 0, "v", "e");
        b.build().unwrap();
        b.face(1, 1, "e", "w");
        assert!(matches!(b.build(), Err(SsetError::UnknownSimplex { .. })));
    }

    #[test]
    fn evaluate_generators() {
        let x = nerve(&FinPoset::ordinal(2), 2);
        let id = x.evaluate(&DeltaMap::identity(crate::delta::Ordinal(2))).unwrap();
        assert!(id.iter().enumerate().all(|(i, &v)| i == v));
        let del_middle = x.evaluate(&DeltaMap::face(2, 1).unwrap()).unwrap();
        for (s, &t) in del_middle.iter().enumerate() {
            let c: Vec<&str> = x.id(2, s).trim_matches(|c| c == '(' || c == ')').split(',').collect();
            assert_eq!(x.id(1, t), format!("({},{})", c[0], c[2]));
        }
        let dup = x.evaluate(&DeltaMap::degeneracy(0, 0).unwrap()).unwrap();
        let ids: Vec<&str> = dup.iter().map(|&t| x.id(1, t)).collect();
        assert_eq!(ids, ["(0,0)", "(1,1)", "(2,2)"]);
        assert!(matches!(
            x.evaluate(&DeltaMap::face(3, 0).unwrap()),
            Err(SsetError::Truncation { .. })
        ));
    }

    #[test]
    fn evaluate_is_contravariant() {
        let x = nerve(&make_poset(&["a", "b", "c"], &[("a", "b"), ("a", "c")]).unwrap(), 3);
        for m in 0..=3 {
            for n in 0..=3 {
                for l in 0..=3 {
                    let fs = DeltaMap::all_maps(crate::delta::Ordinal(m), crate::delta::Ordinal(n));
                    let gs = DeltaMap::all_maps(crate::delta::Ordinal(n), crate::delta::Ordinal(l));
                    for f in &fs {
                        for g in &gs {
                            let gf = x.evaluate(&compose(g, f).unwrap()).unwrap();
                            let xf = x.evaluate(f).unwrap();
                            let xg = x.evaluate(g).unwrap();
                            let composite: Vec<usize> = xg.iter().map(|&v| xf[v]).collect();
                            assert_eq!(gf, composite);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn nerve_maps() {
        let c2 = Arc::new(FinPoset::ordinal(1));
        let c3 = Arc::new(FinPoset::ordinal(2));
        let pt = Arc::new(FinPoset::ordinal(0));
        assert!(nerve_map(&MonotoneMap::identity(Arc::clone(&c2)), 2).is_identity());
        let constant = MonotoneMap::new(Arc::clone(&c2), Arc::clone(&pt), vec![0, 0]).unwrap();
        let m = nerve_map(&constant, 2);
        assert!(m.components().iter().all(|c| c.iter().all(|&v| v == 0)));
        let inc = MonotoneMap::new(Arc::clone(&c2), Arc::clone(&c3), vec![0, 1]).unwrap();
        let m = nerve_map(&inc, 2);
        SimplicialMap::new(Arc::clone(m.source()), Arc::clone(m.target()), m.components().to_vec()).unwrap();
        let ids: Vec<&str> = m.component(1).iter().map(|&v| m.target().id(1, v)).collect();
        assert_eq!(ids, ["(0,0)", "(0,1)", "(1,1)"]);
    }

    #[test]
    fn nerve_map_is_functorial() {
        let c3 = Arc::new(FinPoset::ordinal(2));
        let maps = c3.monotone_maps_to(&c3);
        let n3 = Arc::new(nerve(&c3, 2));
        for f in &maps {
            for g in &maps {
                let nf = nerve_map_between(f, Arc::clone(&n3), Arc::clone(&n3));
                let ng = nerve_map_between(g, Arc::clone(&n3), Arc::clone(&n3));
                let ngf = nerve_map_between(&g.after(f).unwrap(), Arc::clone(&n3), Arc::clone(&n3));
                assert_eq!(ng.after(&nf).unwrap(), ngf);
            }
        }
    }

    #[test]
    fn hom_counts() {
        let c2 = Arc::new(nerve(&FinPoset::ordinal(1), 2));
        assert_eq!(simplicial_maps(&c2, &c2).len(), 3);
        let anti = Arc::new(nerve(&antichain2(), 1));
        let pt = Arc::new(nerve(&FinPoset::ordinal(0), 1));
        assert_eq!(simplicial_maps(&anti, &pt).len(), 1);
        assert_eq!(simplicial_maps(&pt, &anti).len(), 2);
    }

    #[test]
    fn enumerated_maps_commute() {
        let p = nerve(&make_poset(&["a", "b", "c"], &[("a", "b")]).unwrap(), 2);
        let q = nerve(&FinPoset::ordinal(1), 2);
        let (p, q) = (Arc::new(p), Arc::new(q));
        let maps = simplicial_maps(&p, &q);
        // two free choices for c, three monotone choices for a <= b
        assert_eq!(maps.len(), 6);
        for m in maps {
            SimplicialMap::new(Arc::clone(&p), Arc::clone(&q), m.components().to_vec()).unwrap();
        }
    }

    #[test]
    fn truncation_and_relabel() {
        let x = nerve(&FinPoset::ordinal(2), 3);
        let t = x.truncate(1);
        assert_eq!(t, nerve(&FinPoset::ordinal(2), 1).with_name(x.name()));
        let r = x.relabel(|n, id| format!("s{n}:{id}")).unwrap();
        r.validate().unwrap();
        assert_eq!(r.id(0, 0), "s0:0");
        let rebuilt = x.to_builder().build().unwrap();
        assert_eq!(rebuilt, x);
    }

    #[test]
    fn removing_a_simplex_breaks_tables() {
        let x = nerve(&FinPoset::ordinal(2), 2);
        let mut b = x.to_builder();
        b.remove_simplex(2, "(0,1,2)");
        let y = b.build_unchecked().unwrap();
        assert_eq!(y.level_size(2), x.level_size(2) - 1);
        y.validate().unwrap();
    }
}
