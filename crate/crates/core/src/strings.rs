//! String combinatorics for representation-finite string algebras.
//!
//! A string is a reduced walk in the quiver whose direct and inverse runs
//! avoid the relations; its string module has one basis vector per walk
//! vertex and 0/1 shift matrices. For a representation-finite string
//! algebra the string modules are a complete irredundant list of the
//! indecomposables, so a cyclic repeatable (band) word aborts enumeration.

use crate::algebra::BoundQuiverAlgebra;
use crate::linalg::Matrix;
use crate::rep::Representation;
use crate::{Error, Result};
use std::collections::BTreeSet;
use std::sync::Arc;

/// Hard cap on string length; exceeding it means the enumeration is
/// diverging (a band slipped past the direct check).
pub const MAX_STRING_LEN: usize = 64;

/// One step of a walk: an arrow traversed forwards or backwards.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub arrow: usize,
    pub inverse: bool,
}

impl Letter {
    fn flipped(self) -> Letter {
        Letter { arrow: self.arrow, inverse: !self.inverse }
    }
}

/// A string word: the trivial walk at a vertex, or a letter sequence.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StringWord {
    pub start: usize,
    pub letters: Vec<Letter>,
}

impl StringWord {
    pub fn trivial(v: usize) -> Self {
        StringWord { start: v, letters: vec![] }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    fn letter_source(alg: &BoundQuiverAlgebra, l: Letter) -> usize {
        let a = &alg.quiver.arrows[l.arrow];
        if l.inverse {
            a.target
        } else {
            a.source
        }
    }

    fn letter_target(alg: &BoundQuiverAlgebra, l: Letter) -> usize {
        let a = &alg.quiver.arrows[l.arrow];
        if l.inverse {
            a.source
        } else {
            a.target
        }
    }

    pub fn end(&self, alg: &BoundQuiverAlgebra) -> usize {
        match self.letters.last() {
            Some(&l) => Self::letter_target(alg, l),
            None => self.start,
        }
    }

    /// Walk vertices v_0 .. v_k.
    pub fn vertices(&self, alg: &BoundQuiverAlgebra) -> Vec<usize> {
        let mut vs = vec![self.start];
        for &l in &self.letters {
            vs.push(Self::letter_target(alg, l));
        }
        vs
    }

    /// The inverse walk.
    pub fn inverse(&self, alg: &BoundQuiverAlgebra) -> StringWord {
        StringWord {
            start: self.end(alg),
            letters: self.letters.iter().rev().map(|l| l.flipped()).collect(),
        }
    }

    /// The lexicographically smaller of the word and its inverse.
    pub fn canonical(&self, alg: &BoundQuiverAlgebra) -> StringWord {
        let inv = self.inverse(alg);
        if *self <= inv {
            self.clone()
        } else {
            inv
        }
    }

    /// Can `letter` legally extend the walk on the right?
    fn extension_is_valid(&self, alg: &BoundQuiverAlgebra, letter: Letter) -> bool {
        if Self::letter_source(alg, letter) != self.end(alg) {
            return false;
        }
        if let Some(&last) = self.letters.last() {
            if last == letter.flipped() {
                return false; // immediate backtrack
            }
        }
        // the maximal same-direction run ending in `letter` must avoid I
        let mut run = vec![letter];
        for &l in self.letters.iter().rev() {
            if l.inverse == letter.inverse {
                run.push(l);
            } else {
                break;
            }
        }
        run.reverse();
        let path: Vec<usize> = if letter.inverse {
            run.iter().rev().map(|l| l.arrow).collect()
        } else {
            run.iter().map(|l| l.arrow).collect()
        };
        alg.path_is_nonzero(&path)
    }

    fn extended(&self, letter: Letter) -> StringWord {
        let mut w = self.clone();
        w.letters.push(letter);
        w
    }

    /// Whole-word validity (used for the band check on doubled words).
    pub fn is_valid(&self, alg: &BoundQuiverAlgebra) -> bool {
        let mut w = StringWord::trivial(self.start);
        for &l in &self.letters {
            if !w.extension_is_valid(alg, l) {
                return false;
            }
            w = w.extended(l);
        }
        true
    }

    fn has_both_directions(&self) -> bool {
        self.letters.iter().any(|l| l.inverse) && self.letters.iter().any(|l| !l.inverse)
    }
}

/// All strings, one canonical representative per inversion class, sorted.
/// Errors out when a band (cyclic repeatable mixed word) shows the algebra
/// is representation-infinite.
pub fn enumerate_strings(alg: &BoundQuiverAlgebra) -> Result<Vec<StringWord>> {
    let mut seen: BTreeSet<StringWord> = BTreeSet::new();
    let mut layer: Vec<StringWord> = (0..alg.vertex_count()).map(StringWord::trivial).collect();
    for w in &layer {
        seen.insert(w.clone());
    }
    while !layer.is_empty() {
        let mut next = Vec::new();
        for w in &layer {
            if w.len() > MAX_STRING_LEN {
                return Err(Error::BandDetected(format!(
                    "string length exceeded {MAX_STRING_LEN}"
                )));
            }
            for arrow in 0..alg.quiver.arrows.len() {
                for inverse in [false, true] {
                    let letter = Letter { arrow, inverse };
                    if !w.extension_is_valid(alg, letter) {
                        continue;
                    }
                    let ext = w.extended(letter);
                    if ext.start == ext.end(alg)
                        && ext.has_both_directions()
                        && double(&ext).is_valid(alg)
                    {
                        return Err(Error::BandDetected(describe(alg, &ext)));
                    }
                    let canon = ext.canonical(alg);
                    if seen.insert(canon.clone()) {
                        next.push(canon);
                    }
                }
            }
        }
        layer = next;
    }
    Ok(seen.into_iter().collect())
}

fn double(w: &StringWord) -> StringWord {
    let mut d = w.clone();
    d.letters.extend_from_slice(&w.letters);
    d
}

/// Human-readable form like `a b^-1`.
pub fn describe(alg: &BoundQuiverAlgebra, w: &StringWord) -> String {
    if w.is_empty() {
        return format!("e_{}", alg.quiver.vertices[w.start]);
    }
    w.letters
        .iter()
        .map(|l| {
            let name = &alg.quiver.arrows[l.arrow].name;
            if l.inverse {
                format!("{name}^-1")
            } else {
                name.clone()
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

/// The string module: one basis vector per walk position, arrows act by
/// 0/1 shifts along the word.
pub fn string_module(alg: &Arc<BoundQuiverAlgebra>, w: &StringWord) -> Representation {
    assert!(w.is_valid(alg), "invalid string word");
    let p = alg.modulus;
    let verts = w.vertices(alg);
    let mut dims = vec![0usize; alg.vertex_count()];
    // position i sits at vertex verts[i] with local coordinate coord[i]
    let mut coord = Vec::with_capacity(verts.len());
    for &v in &verts {
        coord.push(dims[v]);
        dims[v] += 1;
    }
    let mut maps: Vec<Matrix> = alg
        .quiver
        .arrows
        .iter()
        .map(|a| Matrix::zero(dims[a.target], dims[a.source], p))
        .collect();
    for (i, &l) in w.letters.iter().enumerate() {
        // direct letter sends position i to i+1, inverse the other way
        let (from, to) = if l.inverse { (i + 1, i) } else { (i, i + 1) };
        maps[l.arrow].set(coord[to], coord[from], 1);
    }
    Representation::new(alg.clone(), dims, maps)
}
