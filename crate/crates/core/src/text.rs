//! Line-based text formats. `#` starts a comment; tokens are separated by
//! whitespace.
//!
//! ```text
//! poset <name>
//! elem <id> [<id> ...]
//! le <id> <id>            # declared pair; the closure is computed
//!
//! diagram <name>
//! node <node-id> <poset>  # [n], a poset block in the same file, or a file path
//! edge <edge-id> <src-node> <dst-node>
//! map <edge-id> <src-elem> <dst-elem>
//!
//! sset <name> trunc <K>
//! simplex <n> <id>
//! d <n> <i> <id> <id'>    # d_i(id) = id', id in X_n
//! s <n> <i> <id> <id'>    # s_i(id) = id', id in X_n
//!
//! functor inclusion | components | product-with <poset>
//! ```

use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use thiserror::Error;

use crate::colimit::PosetDiagram;
use crate::kan::FunctorPresentation;
use crate::poset::{make_poset, FinPoset};
use crate::simplicial::{SsetBuilder, TruncatedSimplicialSet};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("{}line {line}: {message}", source_prefix(.file))]
    Syntax {
        file: Option<PathBuf>,
        line: usize,
        message: String,
    },
    #[error("cannot read {}: {message}", .path.display())]
    Io { path: PathBuf, message: String },
}

fn source_prefix(file: &Option<PathBuf>) -> String {
    file.as_ref().map(|f| format!("{}: ", f.display())).unwrap_or_default()
}

impl FormatError {
    fn at(line: usize, message: impl Into<String>) -> Self {
        FormatError::Syntax {
            file: None,
            line,
            message: message.into(),
        }
    }

    fn in_file(self, path: &Path) -> Self {
        match self {
            FormatError::Syntax {
                file: None,
                line,
                message,
            } => FormatError::Syntax {
                file: Some(path.to_path_buf()),
                line,
                message,
            },
            other => other,
        }
    }

    pub fn line(&self) -> Option<usize> {
        match self {
            FormatError::Syntax { line, .. } => Some(*line),
            FormatError::Io { .. } => None,
        }
    }
}

/// Non-empty lines with comments stripped, as `(line number, tokens)`.
fn tokenize(text: &str) -> Vec<(usize, Vec<&str>)> {
    text.lines()
        .enumerate()
        .filter_map(|(k, line)| {
            let content = line.split('#').next().unwrap_or("");
            let tokens: Vec<&str> = content.split_whitespace().collect();
            (!tokens.is_empty()).then_some((k + 1, tokens))
        })
        .collect()
}

fn read(path: &Path) -> Result<String, FormatError> {
    std::fs::read_to_string(path).map_err(|e| FormatError::Io {
        path: path.to_path_buf(),
        message: e.to_string(),
    })
}

fn parse_usize(line: usize, what: &str, token: &str) -> Result<usize, FormatError> {
    token
        .parse()
        .map_err(|_| FormatError::at(line, format!("{what} must be a non-negative integer, got `{token}`")))
}

// ---------------------------------------------------------------------------
// Posets
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedPoset {
    pub name: String,
    pub poset: FinPoset,
}

#[derive(Default)]
struct PosetBlock {
    name: String,
    header_line: usize,
    elements: Vec<String>,
    pairs: Vec<(String, String)>,
}

impl PosetBlock {
    fn line(&mut self, line: usize, tokens: &[&str]) -> Result<(), FormatError> {
        match tokens[0] {
            "elem" => {
                if tokens.len() < 2 {
                    return Err(FormatError::at(line, "`elem` needs at least one element id"));
                }
                for id in &tokens[1..] {
                    if self.elements.iter().any(|e| e == id) {
                        return Err(FormatError::at(line, format!("element `{id}` declared twice")));
                    }
                    self.elements.push(id.to_string());
                }
            }
            "le" => {
                if tokens.len() != 3 {
                    return Err(FormatError::at(line, "`le` takes exactly two element ids"));
                }
                for id in &tokens[1..] {
                    if !self.elements.iter().any(|e| e == id) {
                        return Err(FormatError::at(line, format!("unknown element `{id}`")));
                    }
                }
                self.pairs.push((tokens[1].to_string(), tokens[2].to_string()));
            }
            other => return Err(FormatError::at(line, format!("unexpected `{other}` in a poset block"))),
        }
        Ok(())
    }

    fn finish(self) -> Result<NamedPoset, FormatError> {
        let poset = make_poset(&self.elements, &self.pairs)
            .map_err(|e| FormatError::at(self.header_line, format!("poset `{}`: {e}", self.name)))?;
        Ok(NamedPoset { name: self.name, poset })
    }
}

fn poset_header(line: usize, tokens: &[&str]) -> Result<PosetBlock, FormatError> {
    if tokens.len() != 2 {
        return Err(FormatError::at(line, "expected `poset <name>`"));
    }
    Ok(PosetBlock {
        name: tokens[1].to_string(),
        header_line: line,
        ..PosetBlock::default()
    })
}

pub fn parse_poset(text: &str) -> Result<NamedPoset, FormatError> {
    let lines = tokenize(text);
    let Some(((first, header), rest)) = lines.split_first() else {
        return Err(FormatError::at(1, "empty input; expected `poset <name>`"));
    };
    if header[0] != "poset" {
        return Err(FormatError::at(
            *first,
            format!("expected `poset <name>`, got `{}`", header[0]),
        ));
    }
    let mut block = poset_header(*first, header)?;
    for (line, tokens) in rest {
        block.line(*line, tokens)?;
    }
    block.finish()
}

pub fn read_poset(path: &Path) -> Result<NamedPoset, FormatError> {
    parse_poset(&read(path)?).map_err(|e| e.in_file(path))
}

/// Writes the cover relation; parsing recomputes the closure.
pub fn write_poset(name: &str, p: &FinPoset) -> String {
    let mut s = format!("poset {name}\n");
    if !p.is_empty() {
        let _ = writeln!(s, "elem {}", p.labels().join(" "));
    }
    for (a, b) in p.covers() {
        let _ = writeln!(s, "le {} {}", p.label(a), p.label(b));
    }
    s
}

/// `[n]` as the ordinal, otherwise a poset file relative to `base`.
pub fn resolve_poset(reference: &str, base: Option<&Path>) -> Result<NamedPoset, FormatError> {
    if let Some(n) = ordinal_shorthand(reference) {
        return Ok(NamedPoset {
            name: reference.to_string(),
            poset: FinPoset::ordinal(n),
        });
    }
    let path = match base {
        Some(dir) => dir.join(reference),
        None => PathBuf::from(reference),
    };
    read_poset(&path)
}

fn ordinal_shorthand(reference: &str) -> Option<usize> {
    reference.strip_prefix('[')?.strip_suffix(']')?.parse().ok()
}

// ---------------------------------------------------------------------------
// Diagrams
// ---------------------------------------------------------------------------

/// Parses a diagram; poset references that are neither `[n]` nor a poset
/// block of the same text are read as files relative to `base`.
pub fn parse_diagram(text: &str, base: Option<&Path>) -> Result<PosetDiagram, FormatError> {
    let mut name = None;
    let mut blocks: Vec<PosetBlock> = Vec::new();
    let mut in_block = false;
    let mut nodes: Vec<(usize, String, String)> = Vec::new();
    let mut edges: Vec<(usize, String, String, String)> = Vec::new();
    let mut maps: Vec<(usize, String, String, String)> = Vec::new();
    for (line, tokens) in tokenize(text) {
        match tokens[0] {
            "poset" => {
                blocks.push(poset_header(line, &tokens)?);
                in_block = true;
            }
            "elem" | "le" if in_block => blocks.last_mut().expect("open block").line(line, &tokens)?,
            "diagram" => {
                if tokens.len() != 2 {
                    return Err(FormatError::at(line, "expected `diagram <name>`"));
                }
                if name.is_some() {
                    return Err(FormatError::at(line, "a second `diagram` header"));
                }
                name = Some(tokens[1].to_string());
                in_block = false;
            }
            "node" => {
                if tokens.len() != 3 {
                    return Err(FormatError::at(line, "expected `node <node-id> <poset>`"));
                }
                nodes.push((line, tokens[1].into(), tokens[2].into()));
                in_block = false;
            }
            "edge" => {
                if tokens.len() != 4 {
                    return Err(FormatError::at(line, "expected `edge <edge-id> <src-node> <dst-node>`"));
                }
                edges.push((line, tokens[1].into(), tokens[2].into(), tokens[3].into()));
                in_block = false;
            }
            "map" => {
                if tokens.len() != 4 {
                    return Err(FormatError::at(line, "expected `map <edge-id> <src-elem> <dst-elem>`"));
                }
                maps.push((line, tokens[1].into(), tokens[2].into(), tokens[3].into()));
                in_block = false;
            }
            other => return Err(FormatError::at(line, format!("unknown keyword `{other}`"))),
        }
    }
    let name = name.ok_or_else(|| FormatError::at(1, "missing `diagram <name>` header"))?;
    let mut inline: HashMap<String, Arc<FinPoset>> = HashMap::new();
    for block in blocks {
        let line = block.header_line;
        let named = block.finish()?;
        if inline.insert(named.name.clone(), Arc::new(named.poset)).is_some() {
            return Err(FormatError::at(line, format!("poset `{}` defined twice", named.name)));
        }
    }

    let mut d = PosetDiagram::new(name);
    for (line, id, reference) in nodes {
        let poset = match inline.get(&reference) {
            Some(p) => Arc::clone(p),
            None => Arc::new(
                resolve_poset(&reference, base)
                    .map_err(|e| FormatError::at(line, format!("node `{id}`: {e}")))?
                    .poset,
            ),
        };
        d.try_add_node(id, poset)
            .map_err(|e| FormatError::at(line, e.to_string()))?;
    }
    // (line, edge id, source node, target node, partial value table)
    type Table = (usize, String, usize, usize, Vec<Option<usize>>);
    let mut tables: Vec<Table> = Vec::new();
    let mut edge_index: HashMap<String, usize> = HashMap::new();
    for (line, id, src, dst) in edges {
        let lookup = |node: &str| {
            d.node_index(node)
                .ok_or_else(|| FormatError::at(line, format!("unknown node `{node}`")))
        };
        let (s, t) = (lookup(&src)?, lookup(&dst)?);
        if edge_index.insert(id.clone(), tables.len()).is_some() {
            return Err(FormatError::at(line, format!("edge `{id}` declared twice")));
        }
        tables.push((line, id, s, t, vec![None; d.nodes()[s].poset.len()]));
    }
    for (line, edge, x, y) in maps {
        let k = *edge_index
            .get(&edge)
            .ok_or_else(|| FormatError::at(line, format!("unknown edge `{edge}`")))?;
        let (_, _, s, t, table) = &mut tables[k];
        let (sp, tp) = (&d.nodes()[*s].poset, &d.nodes()[*t].poset);
        let a = sp
            .index_of(&x)
            .ok_or_else(|| FormatError::at(line, format!("`{x}` is not an element of node `{}`", d.nodes()[*s].id)))?;
        let b = tp
            .index_of(&y)
            .ok_or_else(|| FormatError::at(line, format!("`{y}` is not an element of node `{}`", d.nodes()[*t].id)))?;
        if table[a].is_some_and(|prev| prev != b) {
            return Err(FormatError::at(line, format!("`{x}` is mapped twice by edge `{edge}`")));
        }
        table[a] = Some(b);
    }
    for (line, id, s, t, table) in tables {
        let values = table
            .iter()
            .enumerate()
            .map(|(a, v)| {
                v.ok_or_else(|| {
                    FormatError::at(
                        line,
                        format!("edge `{id}` does not map `{}`", d.nodes()[s].poset.label(a)),
                    )
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        d.add_edge(id, s, t, values)
            .map_err(|e| FormatError::at(line, e.to_string()))?;
    }
    Ok(d)
}

pub fn read_diagram(path: &Path) -> Result<PosetDiagram, FormatError> {
    parse_diagram(&read(path)?, path.parent()).map_err(|e| e.in_file(path))
}

/// Writes every node poset as an inline block named after its node.
pub fn write_diagram(d: &PosetDiagram) -> String {
    let mut s = String::new();
    for node in d.nodes() {
        s.push_str(&write_poset(&node.id, &node.poset));
    }
    let _ = writeln!(s, "diagram {}", d.name);
    for node in d.nodes() {
        let _ = writeln!(s, "node {} {}", node.id, node.id);
    }
    for e in d.edges() {
        let _ = writeln!(s, "edge {} {} {}", e.id, d.nodes()[e.source].id, d.nodes()[e.target].id);
        for (a, &b) in e.map.values().iter().enumerate() {
            let _ = writeln!(
                s,
                "map {} {} {}",
                e.id,
                e.map.source().label(a),
                e.map.target().label(b)
            );
        }
    }
    s
}

// ---------------------------------------------------------------------------
// Simplicial sets
// ---------------------------------------------------------------------------

/// Parses the tables without checking the simplicial identities.
pub fn parse_sset_unchecked(text: &str) -> Result<TruncatedSimplicialSet, FormatError> {
    let lines = tokenize(text);
    let Some(((first, header), rest)) = lines.split_first() else {
        return Err(FormatError::at(1, "empty input; expected `sset <name> trunc <K>`"));
    };
    if header.len() != 4 || header[0] != "sset" || header[2] != "trunc" {
        return Err(FormatError::at(*first, "expected `sset <name> trunc <K>`"));
    }
    let trunc = parse_usize(*first, "truncation", header[3])?;
    let mut b = SsetBuilder::new(header[1], trunc);
    let mut last_line = *first;
    for (line, tokens) in rest {
        let line = *line;
        last_line = line;
        match (tokens[0], tokens.len()) {
            ("simplex", 3) => {
                let n = parse_usize(line, "level", tokens[1])?;
                b.simplex(n, tokens[2])
                    .map_err(|e| FormatError::at(line, e.to_string()))?;
            }
            ("d", 5) | ("s", 5) => {
                let n = parse_usize(line, "level", tokens[1])?;
                let i = parse_usize(line, "index", tokens[2])?;
                if tokens[0] == "d" {
                    b.face(n, i, tokens[3], tokens[4]);
                } else {
                    b.degeneracy(n, i, tokens[3], tokens[4]);
                }
            }
            ("simplex", _) => return Err(FormatError::at(line, "expected `simplex <n> <id>`")),
            ("d", _) | ("s", _) => {
                return Err(FormatError::at(
                    line,
                    format!("expected `{} <n> <i> <id> <id'>`", tokens[0]),
                ))
            }
            (other, _) => return Err(FormatError::at(line, format!("unknown keyword `{other}`"))),
        }
    }
    b.build_unchecked()
        .map_err(|e| FormatError::at(last_line, format!("incomplete tables: {e}")))
}

/// Parses and validates the simplicial identities.
pub fn parse_sset(text: &str) -> Result<TruncatedSimplicialSet, FormatError> {
    let x = parse_sset_unchecked(text)?;
    x.validate().map_err(|e| FormatError::at(0, e.to_string()))?;
    Ok(x)
}

pub fn read_sset_unchecked(path: &Path) -> Result<TruncatedSimplicialSet, FormatError> {
    parse_sset_unchecked(&read(path)?).map_err(|e| e.in_file(path))
}

pub fn write_sset(x: &TruncatedSimplicialSet) -> String {
    let mut s = format!(
        "sset {} trunc {}\n",
        x.name().replace(char::is_whitespace, "_"),
        x.trunc()
    );
    for n in 0..=x.trunc() {
        for id in x.level(n) {
            let _ = writeln!(s, "simplex {n} {id}");
        }
    }
    for n in 1..=x.trunc() {
        for i in 0..=n {
            for (k, &v) in x.face_table(n, i).iter().enumerate() {
                let _ = writeln!(s, "d {n} {i} {} {}", x.id(n, k), x.id(n - 1, v));
            }
        }
    }
    for n in 0..x.trunc() {
        for i in 0..=n {
            for (k, &v) in x.degeneracy_table(n, i).iter().enumerate() {
                let _ = writeln!(s, "s {n} {i} {} {}", x.id(n, k), x.id(n + 1, v));
            }
        }
    }
    s
}

// ---------------------------------------------------------------------------
// Functors
// ---------------------------------------------------------------------------

/// A built-in functor name, with inline poset blocks allowed for the factor
/// of `product-with`.
pub fn parse_functor(text: &str, base: Option<&Path>) -> Result<FunctorPresentation, FormatError> {
    let mut blocks: Vec<PosetBlock> = Vec::new();
    let mut declaration: Option<(usize, Vec<String>)> = None;
    for (line, tokens) in tokenize(text) {
        match tokens[0] {
            "poset" => blocks.push(poset_header(line, &tokens)?),
            "elem" | "le" if !blocks.is_empty() && declaration.is_none() => {
                blocks.last_mut().expect("open block").line(line, &tokens)?
            }
            "functor" => {
                if declaration.is_some() {
                    return Err(FormatError::at(line, "a second `functor` line"));
                }
                declaration = Some((line, tokens[1..].iter().map(|t| t.to_string()).collect()));
            }
            other => return Err(FormatError::at(line, format!("unknown keyword `{other}`"))),
        }
    }
    let (line, args) = declaration.ok_or_else(|| FormatError::at(1, "missing `functor` line"))?;
    let args: Vec<&str> = args.iter().map(String::as_str).collect();
    match args.as_slice() {
        ["inclusion"] => Ok(FunctorPresentation::inclusion()),
        ["components"] => Ok(FunctorPresentation::components()),
        ["product-with", reference] => {
            let mut inline = None;
            for block in blocks {
                if block.name == *reference {
                    inline = Some(block.finish()?.poset);
                }
            }
            let factor = match inline {
                Some(p) => p,
                None => {
                    resolve_poset(reference, base)
                        .map_err(|e| FormatError::at(line, e.to_string()))?
                        .poset
                }
            };
            Ok(FunctorPresentation::product_with(Arc::new(factor)))
        }
        _ => Err(FormatError::at(
            line,
            "expected `functor inclusion`, `functor components` or `functor product-with <poset>`",
        )),
    }
}

pub fn read_functor(path: &Path) -> Result<FunctorPresentation, FormatError> {
    parse_functor(&read(path)?, path.parent()).map_err(|e| e.in_file(path))
}
