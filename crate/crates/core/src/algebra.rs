//! Bound quiver algebras from description files.
//!
//! An algebra file declares vertices, arrows and monomial relations; the
//! parser builds the path basis of Lambda = KQ/I by breadth-first search
//! over composable paths modulo the relations. A path `a*b` means "first
//! traverse a, then b", so arrows a: i -> j and b: j -> k compose to a
//! path i -> k.

use crate::linalg::is_prime;
use crate::{Error, Result};
use std::collections::BTreeMap;
use std::fmt::Write as _;

/// Longest path length tolerated before the ideal is declared
/// non-admissible. Exceeding it is an error, not silent truncation.
pub const PATH_LENGTH_BOUND: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quiver {
    /// Vertex names in declaration order; the index is the canonical id.
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn arrows_from(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.arrows
            .iter()
            .enumerate()
            .filter(move |(_, a)| a.source == v)
            .map(|(i, _)| i)
    }

    pub fn arrows_to(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.arrows
            .iter()
            .enumerate()
            .filter(move |(_, a)| a.target == v)
            .map(|(i, _)| i)
    }
}

/// A residue path: trivial at `start` when `arrows` is empty, otherwise the
/// composite of `arrows` in traversal order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Path {
    pub start: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundQuiverAlgebra {
    pub quiver: Quiver,
    /// Monomial relations as arrow-index sequences, each of length >= 2.
    pub relations: Vec<Vec<usize>>,
    /// Prime field modulus.
    pub modulus: u64,
    /// All nonzero residue paths, ordered by (length, arrow-name sequence);
    /// the trivial paths e_v come first in vertex order.
    pub path_basis: Vec<Path>,
    index: BTreeMap<Path, usize>,
}

/// Witness that the algebra is a monomial special biserial (string)
/// algebra: bounded fan-out at each vertex and unique nonzero
/// successor/predecessor per arrow.
#[derive(Debug, Clone)]
pub struct StringAlgebraCertificate {
    pub out_arrows: Vec<Vec<usize>>,
    pub in_arrows: Vec<Vec<usize>>,
    /// successor\[a\] = the unique arrow b with a*b nonzero, if any.
    pub successor: Vec<Option<usize>>,
    /// predecessor\[a\] = the unique arrow c with c*a nonzero, if any.
    pub predecessor: Vec<Option<usize>>,
}

impl BoundQuiverAlgebra {
    pub fn dim(&self) -> usize {
        self.path_basis.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.quiver.vertex_count()
    }

    pub fn path_end(&self, p: &Path) -> usize {
        match p.arrows.last() {
            Some(&a) => self.quiver.arrows[a].target,
            None => p.start,
        }
    }

    pub fn path_index(&self, p: &Path) -> Option<usize> {
        self.index.get(p).copied()
    }

    /// Does the arrow sequence contain a relation as a contiguous subword?
    fn contains_relation(&self, arrows: &[usize]) -> bool {
        self.relations.iter().any(|r| {
            arrows.len() >= r.len() && arrows.windows(r.len()).any(|w| w == r.as_slice())
        })
    }

    /// True when the arrow sequence is composable and avoids the ideal.
    pub fn path_is_nonzero(&self, arrows: &[usize]) -> bool {
        for w in arrows.windows(2) {
            if self.quiver.arrows[w[0]].target != self.quiver.arrows[w[1]].source {
                return false;
            }
        }
        !self.contains_relation(arrows)
    }

    /// Extend `p` by one arrow on the right; None when the result is zero
    /// or not composable.
    pub fn compose_with_arrow(&self, p: &Path, arrow: usize) -> Option<Path> {
        if self.path_end(p) != self.quiver.arrows[arrow].source {
            return None;
        }
        let mut arrows = p.arrows.clone();
        arrows.push(arrow);
        if self.contains_relation(&arrows) {
            return None;
        }
        Some(Path { start: p.start, arrows })
    }

    /// Concatenate two paths (first p, then q); None when zero.
    pub fn compose(&self, p: &Path, q: &Path) -> Option<Path> {
        if self.path_end(p) != q.start {
            return None;
        }
        let mut arrows = p.arrows.clone();
        arrows.extend_from_slice(&q.arrows);
        if self.contains_relation(&arrows) {
            return None;
        }
        Some(Path { start: p.start, arrows })
    }

    fn arrow_name_key(&self, p: &Path) -> Vec<String> {
        p.arrows
            .iter()
            .map(|&a| self.quiver.arrows[a].name.clone())
            .collect()
    }

    fn build_path_basis(&mut self) -> Result<()> {
        let mut basis: Vec<Path> = Vec::new();
        let mut layer: Vec<Path> = (0..self.quiver.vertex_count())
            .map(|v| Path { start: v, arrows: vec![] })
            .collect();
        let mut length = 0usize;
        while !layer.is_empty() {
            if length > PATH_LENGTH_BOUND {
                return Err(Error::UnsupportedAlgebra(format!(
                    "ideal is not admissible within path length {PATH_LENGTH_BOUND}"
                )));
            }
            layer.sort_by(|a, b| {
                self.arrow_name_key(a)
                    .cmp(&self.arrow_name_key(b))
                    .then(a.start.cmp(&b.start))
            });
            basis.extend(layer.iter().cloned());
            let mut next = Vec::new();
            for p in &layer {
                let end = self.path_end(p);
                for a in self.quiver.arrows_from(end) {
                    if let Some(q) = self.compose_with_arrow(p, a) {
                        next.push(q);
                    }
                }
            }
            layer = next;
            length += 1;
        }
        self.index = basis
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i))
            .collect();
        self.path_basis = basis;
        Ok(())
    }

    /// The opposite algebra: arrows reversed, relations reversed.
    /// Structurally involutive: opposite(opposite(A)) == A.
    pub fn opposite(&self) -> BoundQuiverAlgebra {
        let quiver = Quiver {
            vertices: self.quiver.vertices.clone(),
            arrows: self
                .quiver
                .arrows
                .iter()
                .map(|a| Arrow {
                    name: a.name.clone(),
                    source: a.target,
                    target: a.source,
                })
                .collect(),
        };
        let relations = self
            .relations
            .iter()
            .map(|r| r.iter().rev().copied().collect())
            .collect();
        let mut alg = BoundQuiverAlgebra {
            quiver,
            relations,
            modulus: self.modulus,
            path_basis: vec![],
            index: BTreeMap::new(),
        };
        alg.build_path_basis()
            .expect("opposite of an admissible algebra is admissible");
        alg
    }

    /// Render back to the file grammar; parsing the output reproduces a
    /// structurally identical algebra.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "field {}", self.modulus);
        for v in &self.quiver.vertices {
            let _ = writeln!(s, "vertex {v}");
        }
        for a in &self.quiver.arrows {
            let _ = writeln!(
                s,
                "arrow {} : {} -> {}",
                a.name, self.quiver.vertices[a.source], self.quiver.vertices[a.target]
            );
        }
        for r in &self.relations {
            let names: Vec<&str> = r
                .iter()
                .map(|&i| self.quiver.arrows[i].name.as_str())
                .collect();
            let _ = writeln!(s, "relation {}", names.join("*"));
        }
        s
    }
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

/// Parse an algebra description (UTF-8, line oriented, `#` comments).
pub fn parse_algebra(text: &str) -> Result<BoundQuiverAlgebra> {
    let mut modulus: Option<u64> = None;
    let mut vertices: Vec<String> = Vec::new();
    let mut arrows: Vec<Arrow> = Vec::new();
    let mut relations: Vec<Vec<usize>> = Vec::new();
    let mut vertex_ids: BTreeMap<String, usize> = BTreeMap::new();
    let mut arrow_ids: BTreeMap<String, usize> = BTreeMap::new();

    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = content.split_whitespace().collect();
        match tokens[0] {
            "field" => {
                if tokens.len() != 2 {
                    return Err(parse_err(line, "expected `field <prime>`"));
                }
                let p: u64 = tokens[1]
                    .parse()
                    .map_err(|_| parse_err(line, format!("bad prime `{}`", tokens[1])))?;
                if !is_prime(p) {
                    return Err(parse_err(line, format!("{p} is not prime")));
                }
                if modulus.replace(p).is_some() {
                    return Err(parse_err(line, "duplicate field declaration"));
                }
            }
            "vertex" => {
                if tokens.len() != 2 {
                    return Err(parse_err(line, "expected `vertex <id>`"));
                }
                let name = tokens[1].to_string();
                if vertex_ids.contains_key(&name) {
                    return Err(parse_err(line, format!("duplicate vertex `{name}`")));
                }
                vertex_ids.insert(name.clone(), vertices.len());
                vertices.push(name);
            }
            "arrow" => {
                // arrow <name> : <src> -> <tgt>
                if tokens.len() != 6 || tokens[2] != ":" || tokens[4] != "->" {
                    return Err(parse_err(line, "expected `arrow <name> : <src> -> <tgt>`"));
                }
                let name = tokens[1].to_string();
                if arrow_ids.contains_key(&name) {
                    return Err(parse_err(line, format!("duplicate arrow `{name}`")));
                }
                let &source = vertex_ids
                    .get(tokens[3])
                    .ok_or_else(|| parse_err(line, format!("unknown vertex `{}`", tokens[3])))?;
                let &target = vertex_ids
                    .get(tokens[5])
                    .ok_or_else(|| parse_err(line, format!("unknown vertex `{}`", tokens[5])))?;
                arrow_ids.insert(name.clone(), arrows.len());
                arrows.push(Arrow { name, source, target });
            }
            "relation" => {
                let expr = content["relation".len()..].trim();
                if expr.is_empty() {
                    return Err(parse_err(line, "expected `relation <name>(*<name>)+`"));
                }
                let names: Vec<String> =
                    expr.split('*').map(|t| t.trim().to_string()).collect();
                if names.len() < 2 {
                    return Err(parse_err(line, "relation must compose at least two arrows"));
                }
                let mut rel = Vec::new();
                for n in &names {
                    let &id = arrow_ids
                        .get(n)
                        .ok_or_else(|| parse_err(line, format!("unknown arrow `{n}`")))?;
                    rel.push(id);
                }
                for w in rel.windows(2) {
                    if arrows[w[0]].target != arrows[w[1]].source {
                        return Err(parse_err(
                            line,
                            format!(
                                "relation is not composable: `{}` ends at `{}` but `{}` starts at `{}`",
                                arrows[w[0]].name,
                                vertices[arrows[w[0]].target],
                                arrows[w[1]].name,
                                vertices[arrows[w[1]].source],
                            ),
                        ));
                    }
                }
                relations.push(rel);
            }
            other => {
                return Err(parse_err(line, format!("unknown directive `{other}`")));
            }
        }
    }

    let mut alg = BoundQuiverAlgebra {
        quiver: Quiver { vertices, arrows },
        relations,
        modulus: modulus.unwrap_or(2),
        path_basis: vec![],
        index: BTreeMap::new(),
    };
    alg.build_path_basis()?;
    Ok(alg)
}

/// Check the string-algebra (monomial special biserial) conditions and
/// return the witnessing fan-out data, or name the violated condition.
pub fn validate_string_algebra(alg: &BoundQuiverAlgebra) -> Result<StringAlgebraCertificate> {
    let q = &alg.quiver;
    for a in &q.arrows {
        if a.source == a.target {
            return Err(Error::UnsupportedAlgebra(format!(
                "loop `{}` at vertex {}",
                a.name, q.vertices[a.source]
            )));
        }
    }
    let mut out_arrows = vec![Vec::new(); q.vertex_count()];
    let mut in_arrows = vec![Vec::new(); q.vertex_count()];
    for (i, a) in q.arrows.iter().enumerate() {
        out_arrows[a.source].push(i);
        in_arrows[a.target].push(i);
    }
    for v in 0..q.vertex_count() {
        if out_arrows[v].len() > 2 {
            return Err(Error::UnsupportedAlgebra(format!(
                "more than two arrows start at vertex {}",
                q.vertices[v]
            )));
        }
        if in_arrows[v].len() > 2 {
            return Err(Error::UnsupportedAlgebra(format!(
                "more than two arrows end at vertex {}",
                q.vertices[v]
            )));
        }
    }
    let mut successor = vec![None; q.arrows.len()];
    let mut predecessor = vec![None; q.arrows.len()];
    for (i, a) in q.arrows.iter().enumerate() {
        let succs: Vec<usize> = out_arrows[a.target]
            .iter()
            .copied()
            .filter(|&b| alg.path_is_nonzero(&[i, b]))
            .collect();
        if succs.len() > 1 {
            return Err(Error::UnsupportedAlgebra(format!(
                "arrow `{}` has two nonzero successors",
                a.name
            )));
        }
        successor[i] = succs.first().copied();
        let preds: Vec<usize> = in_arrows[a.source]
            .iter()
            .copied()
            .filter(|&c| alg.path_is_nonzero(&[c, i]))
            .collect();
        if preds.len() > 1 {
            return Err(Error::UnsupportedAlgebra(format!(
                "arrow `{}` has two nonzero predecessors",
                a.name
            )));
        }
        predecessor[i] = preds.first().copied();
    }
    Ok(StringAlgebraCertificate {
        out_arrows,
        in_arrows,
        successor,
        predecessor,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    pub const EX73: &str = include_str!("../../../algebras/ex73.alg");
    pub const A2: &str = include_str!("../../../algebras/a2.alg");
    pub const NAK4: &str = include_str!("../../../algebras/nak4.alg");

    #[test]
    fn ex73_has_dimension_five() {
        let alg = parse_algebra(EX73).unwrap();
        // e1, e2, e3, a, b survive; ab is killed
        assert_eq!(alg.dim(), 5);
        assert_eq!(alg.vertex_count(), 3);
        assert!(alg.path_basis.iter().all(|p| p.len() <= 1));
    }

    #[test]
    fn a2_has_dimension_three() {
        let alg = parse_algebra(A2).unwrap();
        assert_eq!(alg.dim(), 3);
    }

    #[test]
    fn unknown_arrow_in_relation_is_an_error() {
        let text = "vertex 1\nvertex 2\narrow b : 2 -> 1\nrelation b*c\n";
        match parse_algebra(text) {
            Err(Error::Parse { line, msg }) => {
                assert_eq!(line, 4);
                assert!(msg.contains("unknown arrow"), "{msg}");
            }
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn non_composable_relation_is_an_error() {
        let text = "vertex 1\nvertex 2\nvertex 3\narrow b : 2 -> 1\narrow a : 3 -> 2\nrelation b*a\n";
        assert!(matches!(parse_algebra(text), Err(Error::Parse { line: 6, .. })));
    }

    #[test]
    fn non_admissible_ideal_is_an_error() {
        // a 2-cycle with no relations has paths of unbounded length
        let text = "vertex 1\nvertex 2\narrow a : 1 -> 2\narrow b : 2 -> 1\n";
        assert!(matches!(
            parse_algebra(text),
            Err(Error::UnsupportedAlgebra(_))
        ));
    }

    #[test]
    fn string_certificates() {
        let ex73 = parse_algebra(EX73).unwrap();
        validate_string_algebra(&ex73).unwrap();
        let nak4 = parse_algebra(NAK4).unwrap();
        validate_string_algebra(&nak4).unwrap();
    }

    #[test]
    fn triple_fanout_is_rejected() {
        let text = "vertex 0\nvertex 1\nvertex 2\nvertex 3\n\
                    arrow x : 0 -> 1\narrow y : 0 -> 2\narrow z : 0 -> 3\n";
        match validate_string_algebra(&parse_algebra(text).unwrap()) {
            Err(Error::UnsupportedAlgebra(msg)) => assert!(msg.contains("start at vertex 0")),
            other => panic!("expected unsupported, got {other:?}"),
        }
    }

    #[test]
    fn opposite_reverses_arrows_and_relations() {
        let alg = parse_algebra(EX73).unwrap();
        let op = alg.opposite();
        let a = op.quiver.arrows.iter().find(|x| x.name == "a").unwrap();
        assert_eq!((a.source, a.target), (1, 2)); // vertex ids: 2 -> 3 by name
        assert_eq!(op.relations, vec![vec![0, 1]]); // b then a
        assert_eq!(op.dim(), alg.dim());
        assert_eq!(op.opposite(), alg);
    }

    #[test]
    fn opposite_of_arrowless_algebra_is_itself() {
        let alg = parse_algebra("vertex 1\n").unwrap();
        assert_eq!(alg.opposite(), alg);
    }

    #[test]
    fn serialize_roundtrip() {
        for text in [EX73, A2, NAK4] {
            let alg = parse_algebra(text).unwrap();
            let reparsed = parse_algebra(&alg.to_text()).unwrap();
            assert_eq!(alg, reparsed);
        }
    }
}
