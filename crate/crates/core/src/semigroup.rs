//! The transition semigroup generated by the letters.
//!
//! Elements are numbered generators first (in letter order, skipping
//! duplicates), then breadth-first by right multiplication with the
//! generators, so element order follows the shortlex order of their shortest
//! representative words. The identity appears only if some word induces it.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::automaton::{Automaton, Word};
use crate::error::{Error, Result};

const UNDEFINED: u32 = u32::MAX;

/// A partial map on states; `image(p)` is `None` where undefined.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Transformation(Box<[u32]>);

impl Transformation {
    pub fn from_images<I: IntoIterator<Item = Option<usize>>>(images: I) -> Self {
        Transformation(
            images
                .into_iter()
                .map(|t| t.map_or(UNDEFINED, |t| t as u32))
                .collect(),
        )
    }

    /// The map induced by one letter.
    pub fn of_letter(a: &Automaton, letter: usize) -> Self {
        Self::from_images((0..a.n()).map(|s| a.target(s, letter)))
    }

    pub fn of_word(a: &Automaton, word: &Word) -> Self {
        Self::from_images((0..a.n()).map(|s| a.run(s, word)))
    }

    pub fn identity(n: usize) -> Self {
        Self::from_images((0..n).map(Some))
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn image(&self, state: usize) -> Option<usize> {
        match self.0[state] {
            UNDEFINED => None,
            t => Some(t as usize),
        }
    }

    /// Apply `self`, then `then`.
    pub fn then(&self, then: &Transformation) -> Transformation {
        Transformation(
            self.0
                .iter()
                .map(|&t| if t == UNDEFINED { UNDEFINED } else { then.0[t as usize] })
                .collect(),
        )
    }

    /// Number of distinct images.
    pub fn rank(&self) -> usize {
        let mut imgs: Vec<u32> = self.0.iter().copied().filter(|&t| t != UNDEFINED).collect();
        imgs.sort_unstable();
        imgs.dedup();
        imgs.len()
    }

    /// Total with a single image: a reset map.
    pub fn is_constant(&self) -> bool {
        self.0.iter().all(|&t| t != UNDEFINED && t == self.0[0])
    }
}

/// Elements by generators: `product(i, j)` is the index of element `i`
/// followed by generator `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemigroupTable {
    elements: Vec<Transformation>,
    parent: Vec<Option<(usize, usize)>>,
    generators: Vec<usize>,
    products: Vec<usize>,
}

/// Default element limit for [`enumerate_semigroup`].
pub const DEFAULT_CAP: usize = 1_000_000;

pub fn enumerate_semigroup(a: &Automaton, cap: usize) -> Result<SemigroupTable> {
    let d = a.d();
    let letters: Vec<Transformation> = (0..d).map(|l| Transformation::of_letter(a, l)).collect();
    let mut index: HashMap<Transformation, usize> = HashMap::new();
    let mut elements = Vec::new();
    let mut parent = Vec::new();
    let mut generators = Vec::with_capacity(d);

    for t in &letters {
        let idx = *index.entry(t.clone()).or_insert_with(|| {
            elements.push(t.clone());
            parent.push(None);
            elements.len() - 1
        });
        generators.push(idx);
    }
    if elements.len() > cap {
        return Err(Error::CapExceeded { cap });
    }

    let mut products = Vec::new();
    let mut i = 0;
    while i < elements.len() {
        for (j, g) in letters.iter().enumerate() {
            let product = elements[i].then(g);
            let idx = match index.get(&product) {
                Some(&idx) => idx,
                None => {
                    if elements.len() == cap {
                        return Err(Error::CapExceeded { cap });
                    }
                    elements.push(product.clone());
                    parent.push(Some((i, j)));
                    index.insert(product, elements.len() - 1);
                    elements.len() - 1
                }
            };
            products.push(idx);
        }
        i += 1;
    }

    Ok(SemigroupTable {
        elements,
        parent,
        generators,
        products,
    })
}

impl SemigroupTable {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    /// Element index of each letter.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn element(&self, i: usize) -> &Transformation {
        &self.elements[i]
    }

    pub fn elements(&self) -> &[Transformation] {
        &self.elements
    }

    pub fn product(&self, i: usize, j: usize) -> usize {
        self.products[i * self.generators.len() + j]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[usize]> {
        self.products.chunks(self.generators.len())
    }

    /// Shortest word inducing element `i`.
    pub fn representative(&self, mut i: usize) -> Word {
        let mut letters = Vec::new();
        loop {
            match self.parent[i] {
                Some((p, l)) => {
                    letters.push(l);
                    i = p;
                }
                None => {
                    let letter = self.generators.iter().position(|&g| g == i).expect("generator");
                    letters.push(letter);
                    break;
                }
            }
        }
        letters.reverse();
        Word(letters)
    }

    /// Index of the first constant map, if the semigroup has one.
    pub fn first_constant(&self) -> Option<usize> {
        self.elements.iter().position(Transformation::is_constant)
    }
}

/// `"<size> <generators>"`, then one line of product indices per element.
pub fn render_semigroup(t: &SemigroupTable) -> String {
    let mut out = format!("{} {}", t.len(), t.generator_count());
    for row in t.rows() {
        out.push('\n');
        for (j, idx) in row.iter().enumerate() {
            if j > 0 {
                out.push(' ');
            }
            write!(out, "{idx}").unwrap();
        }
    }
    out
}

/// Reads back the output of [`render_semigroup`]: generator count and rows.
pub fn parse_product_table(text: &str) -> Result<(usize, Vec<Vec<usize>>)> {
    let mut tokens = text.split_whitespace().enumerate();
    let mut next_number = |what: &str| -> Result<usize> {
        let (position, token) = tokens.next().ok_or(Error::MalformedToken {
            position: usize::MAX,
            token: format!("<missing {what}>"),
        })?;
        token.parse().map_err(|_| Error::MalformedToken {
            position,
            token: token.to_string(),
        })
    };
    let size = next_number("size")?;
    let gens = next_number("generator count")?;
    let mut rows = Vec::with_capacity(size);
    for _ in 0..size {
        let row = (0..gens)
            .map(|_| next_number("cell"))
            .collect::<Result<Vec<_>>>()?;
        if let Some(&bad) = row.iter().find(|&&x| x >= size) {
            return Err(Error::TargetOutOfRange {
                state: rows.len(),
                letter: 0,
                target: bad,
                n: size,
            });
        }
        rows.push(row);
    }
    let leftover = text.split_whitespace().count() - 2 - size * gens;
    if leftover != 0 {
        return Err(Error::TokenCountMismatch {
            expected: size * gens,
            found: size * gens + leftover,
        });
    }
    Ok((gens, rows))
}
