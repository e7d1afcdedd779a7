//! Automata, words, uncolored digraphs and colorings.
//!
//! An [`Automaton`] is a Cayley table: `n` states by `d` letters, each cell
//! holding an optional target. Missing cells make the automaton partial; on an
//! undefined transition a state simply drops out of the image, so
//! [`Automaton::apply_letter`] never grows a set.
//!
//! A [`Digraph`] forgets the letters but keeps the out-edge order of each
//! vertex, so slot `i` of a vertex is a stable edge identity. A [`Coloring`]
//! assigns a letter to every slot; applying it to a digraph of uniform
//! outdegree gives back a complete automaton.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::stateset::StateSet;

/// Name of a letter in human-readable output: `a`, `b`, ..., `z`, then `<26>`, `<27>`, ...
pub fn letter_name(letter: usize) -> String {
    if letter < 26 {
        char::from(b'a' + letter as u8).to_string()
    } else {
        format!("<{letter}>")
    }
}

/// A sequence of letter indices, possibly empty.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(pub Vec<usize>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn push(&mut self, letter: usize) {
        self.0.push(letter);
    }

    pub fn extend_from(&mut self, other: &Word) {
        self.0.extend_from_slice(&other.0);
    }

    /// Parses a word written with letters `a`..`z`.
    pub fn parse_letters(text: &str) -> Option<Word> {
        text.chars()
            .map(|c| c.is_ascii_lowercase().then(|| (c as u8 - b'a') as usize))
            .collect::<Option<Vec<_>>>()
            .map(Word)
    }
}

impl From<Vec<usize>> for Word {
    fn from(letters: Vec<usize>) -> Self {
        Word(letters)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("ε");
        }
        for &l in &self.0 {
            f.write_str(&letter_name(l))?;
        }
        Ok(())
    }
}

/// Deterministic, possibly partial, finite automaton over letters `0..d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "AutomatonJson", into = "AutomatonJson")]
pub struct Automaton {
    n: usize,
    d: usize,
    table: Vec<Option<usize>>,
}

impl Automaton {
    /// Builds an automaton from a row-major table of `n * d` cells.
    pub fn new(n: usize, d: usize, table: Vec<Option<usize>>) -> Result<Self> {
        if n == 0 || d == 0 {
            return Err(Error::NonPositiveHeader {
                d: d as i64,
                n: n as i64,
            });
        }
        if table.len() != n * d {
            return Err(Error::TokenCountMismatch {
                expected: n * d,
                found: table.len(),
            });
        }
        for (i, cell) in table.iter().enumerate() {
            if let Some(t) = *cell {
                if t >= n {
                    return Err(Error::TargetOutOfRange {
                        state: i / d,
                        letter: i % d,
                        target: t,
                        n,
                    });
                }
            }
        }
        Ok(Automaton { n, d, table })
    }

    /// Complete automaton from rows of targets, one row per state.
    pub fn from_rows<R: AsRef<[usize]>>(rows: &[R]) -> Result<Self> {
        let d = rows.first().map_or(0, |r| r.as_ref().len());
        let mut table = Vec::with_capacity(rows.len() * d);
        for row in rows {
            let row = row.as_ref();
            if row.len() != d {
                return Err(Error::TokenCountMismatch {
                    expected: rows.len() * d,
                    found: table.len() + row.len(),
                });
            }
            table.extend(row.iter().map(|&t| Some(t)));
        }
        Automaton::new(rows.len(), d, table)
    }

    /// Builds a complete automaton from one transition map per letter.
    pub fn from_letter_maps<M: AsRef<[usize]>>(maps: &[M]) -> Result<Self> {
        let d = maps.len();
        let n = maps.first().map_or(0, |m| m.as_ref().len());
        let mut table = vec![None; n * d];
        for (letter, map) in maps.iter().enumerate() {
            let map = map.as_ref();
            if map.len() != n {
                return Err(Error::TokenCountMismatch {
                    expected: n,
                    found: map.len(),
                });
            }
            for (state, &t) in map.iter().enumerate() {
                table[state * d + letter] = Some(t);
            }
        }
        Automaton::new(n, d, table)
    }

    /// The Černý automaton `C_n`: letter `a` rotates `i -> i+1 mod n`,
    /// letter `b` sends `0 -> 1` and fixes every other state.
    pub fn cerny(n: usize) -> Self {
        assert!(n >= 1);
        let rotate: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        let mut merge: Vec<usize> = (0..n).collect();
        if n > 1 {
            merge[0] = 1;
        }
        Automaton::from_letter_maps(&[rotate, merge]).expect("valid Černý automaton")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn target(&self, state: usize, letter: usize) -> Option<usize> {
        self.table[state * self.d + letter]
    }

    pub fn row(&self, state: usize) -> &[Option<usize>] {
        &self.table[state * self.d..(state + 1) * self.d]
    }

    pub fn cells(&self) -> &[Option<usize>] {
        &self.table
    }

    pub fn is_complete(&self) -> bool {
        self.table.iter().all(Option::is_some)
    }

    pub(crate) fn require_complete(&self) -> Result<()> {
        if self.is_complete() {
            Ok(())
        } else {
            Err(Error::NotComplete)
        }
    }

    /// Target of a complete automaton; panics on an undefined cell.
    pub(crate) fn step(&self, state: usize, letter: usize) -> usize {
        self.table[state * self.d + letter].expect("complete automaton")
    }

    pub fn check_word(&self, word: &Word) -> Result<()> {
        match word.0.iter().find(|&&l| l >= self.d) {
            Some(&letter) => Err(Error::InvalidLetter { letter, d: self.d }),
            None => Ok(()),
        }
    }

    /// `p·w`, or `None` once a transition is undefined.
    pub fn run(&self, state: usize, word: &Word) -> Option<usize> {
        word.0
            .iter()
            .try_fold(state, |s, &letter| self.target(s, letter))
    }

    /// Image of `set` under one letter; states with an undefined transition drop out.
    pub fn apply_letter(&self, set: &StateSet, letter: usize) -> StateSet {
        assert!(letter < self.d, "letter {letter} outside alphabet {}", self.d);
        let mut image = StateSet::empty(self.n);
        for s in set {
            if let Some(t) = self.target(s, letter) {
                image.insert(t);
            }
        }
        image
    }

    /// Image of `set` under `word`, folding left to right.
    pub fn apply_word(&self, set: &StateSet, word: &Word) -> StateSet {
        word.0
            .iter()
            .fold(set.clone(), |acc, &letter| self.apply_letter(&acc, letter))
    }

    /// `|Γw|`: size of the image of the full state set.
    pub fn image_size(&self, word: &Word) -> usize {
        self.apply_word(&StateSet::full(self.n), word).len()
    }

    /// Whether `word` maps the whole state set onto a single state.
    pub fn is_synchronizing_word(&self, word: &Word) -> bool {
        self.image_size(word) == 1
    }

    /// Underlying uncolored graph; requires a complete automaton.
    pub fn forget_colors(&self) -> Result<Digraph> {
        self.require_complete()?;
        Ok(self.transition_graph())
    }

    /// Graph of all defined transitions, in letter order per state. Works for
    /// partial automata, where outdegrees may differ.
    pub fn transition_graph(&self) -> Digraph {
        Digraph {
            out: (0..self.n)
                .map(|s| self.row(s).iter().flatten().copied().collect())
                .collect(),
        }
    }

    /// The automaton with letters `l1` and `l2` exchanged at `state`.
    pub fn swap_letters_at(&self, state: usize, l1: usize, l2: usize) -> Automaton {
        let mut out = self.clone();
        out.table.swap(state * self.d + l1, state * self.d + l2);
        out
    }
}

/// JSON mirror of an automaton: rows of optional targets.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AutomatonJson {
    pub n: usize,
    pub d: usize,
    pub table: Vec<Vec<Option<usize>>>,
}

impl From<Automaton> for AutomatonJson {
    fn from(a: Automaton) -> Self {
        AutomatonJson {
            n: a.n,
            d: a.d,
            table: a.table.chunks(a.d).map(<[_]>::to_vec).collect(),
        }
    }
}

impl TryFrom<AutomatonJson> for Automaton {
    type Error = Error;

    fn try_from(j: AutomatonJson) -> Result<Self> {
        if let Some(row) = j.table.iter().find(|r| r.len() != j.d) {
            return Err(Error::TokenCountMismatch {
                expected: j.d,
                found: row.len(),
            });
        }
        Automaton::new(j.n, j.d, j.table.into_iter().flatten().collect())
    }
}

/// Uncolored directed multigraph with ordered out-edge lists.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Digraph {
    out: Vec<Vec<usize>>,
}

impl Digraph {
    pub fn new(out: Vec<Vec<usize>>) -> Result<Self> {
        let n = out.len();
        for (v, targets) in out.iter().enumerate() {
            for (slot, &t) in targets.iter().enumerate() {
                if t >= n {
                    return Err(Error::TargetOutOfRange {
                        state: v,
                        letter: slot,
                        target: t,
                        n,
                    });
                }
            }
        }
        Ok(Digraph { out })
    }

    pub fn n(&self) -> usize {
        self.out.len()
    }

    pub fn out(&self, v: usize) -> &[usize] {
        &self.out[v]
    }

    pub fn edge_count(&self) -> usize {
        self.out.iter().map(Vec::len).sum()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.out
            .iter()
            .enumerate()
            .flat_map(|(v, ts)| ts.iter().map(move |&t| (v, t)))
    }

    /// The common outdegree, if every vertex has the same one.
    pub fn uniform_outdegree(&self) -> Option<usize> {
        let first = self.out.first()?.len();
        self.out.iter().all(|o| o.len() == first).then_some(first)
    }

    pub(crate) fn require_uniform(&self) -> Result<usize> {
        let Some(first) = self.out.first().map(Vec::len) else {
            return Err(Error::NonUniformOutdegree {
                vertex: 0,
                expected: 0,
                found: 0,
            });
        };
        match self.out.iter().position(|o| o.len() != first) {
            None => Ok(first),
            Some(v) => Err(Error::NonUniformOutdegree {
                vertex: v,
                expected: first,
                found: self.out[v].len(),
            }),
        }
    }

    /// Applies `coloring`, giving a complete deterministic automaton.
    pub fn apply_coloring(&self, coloring: &Coloring) -> Result<Automaton> {
        let d = self.require_uniform()?;
        coloring.check_shape(self.n(), d)?;
        let mut table = vec![None; self.n() * d];
        for (v, targets) in self.out.iter().enumerate() {
            for (slot, &t) in targets.iter().enumerate() {
                table[v * d + coloring.letter(v, slot)] = Some(t);
            }
        }
        Automaton::new(self.n(), d, table)
    }

    /// Vertices relabeled by `perm` (vertex `v` becomes `perm[v]`), slot order kept.
    pub fn relabel(&self, perm: &[usize]) -> Digraph {
        let mut out = vec![Vec::new(); self.n()];
        for (v, targets) in self.out.iter().enumerate() {
            out[perm[v]] = targets.iter().map(|&t| perm[t]).collect();
        }
        Digraph { out }
    }
}

/// Per-vertex bijection from out-edge slots to letters.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Coloring {
    letters: Vec<Vec<usize>>,
}

impl Coloring {
    /// Slot `i` carries letter `i` at every vertex.
    pub fn identity(n: usize, d: usize) -> Self {
        Coloring {
            letters: vec![(0..d).collect(); n],
        }
    }

    /// `letters[v][slot]` is the letter of slot `slot` at vertex `v`.
    pub fn new(letters: Vec<Vec<usize>>) -> Result<Self> {
        for (v, row) in letters.iter().enumerate() {
            let mut seen = vec![false; row.len()];
            for &l in row {
                if l >= row.len() || std::mem::replace(&mut seen[l], true) {
                    return Err(Error::InvalidColoring(format!(
                        "vertex {v}: {row:?} is not a permutation"
                    )));
                }
            }
        }
        Ok(Coloring { letters })
    }

    pub fn letter(&self, v: usize, slot: usize) -> usize {
        self.letters[v][slot]
    }

    pub fn vertex(&self, v: usize) -> &[usize] {
        &self.letters[v]
    }

    pub fn n(&self) -> usize {
        self.letters.len()
    }

    /// Exchanges the letters of two slots at vertex `v`.
    pub fn swap_slots(&mut self, v: usize, s1: usize, s2: usize) {
        self.letters[v].swap(s1, s2);
    }

    pub(crate) fn set_vertex(&mut self, v: usize, letters: Vec<usize>) {
        self.letters[v] = letters;
    }

    fn check_shape(&self, n: usize, d: usize) -> Result<()> {
        if self.letters.len() != n {
            return Err(Error::InvalidColoring(format!(
                "coloring covers {} vertices, graph has {n}",
                self.letters.len()
            )));
        }
        match self.letters.iter().position(|row| row.len() != d) {
            Some(v) => Err(Error::InvalidColoring(format!(
                "vertex {v} colors {} slots, outdegree is {d}",
                self.letters[v].len()
            ))),
            None => Ok(()),
        }
    }
}
