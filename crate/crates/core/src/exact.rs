//! Minimal-length reset words.
//!
//! [`minimal_sync_word`] is a breadth-first search over images `Γu` of the
//! full state set, bounded by the length `L` of a greedy reset word and pruned
//! by dominance: an image containing an already stored image (or a strictly
//! larger superset of an image on the greedy word's prefix chain, reached no
//! later) cannot lead to a shorter reset word, because `Y ⊆ X` implies
//! `Yu ⊆ Xu` for every word `u`.
//!
//! Dominance is only sound while images cannot become empty, so partial
//! automata fall back to exact-duplicate elimination.
//!
//! [`BfsOracle`] is the unpruned reference search used to check the pruned
//! one.

use std::collections::HashSet;

use crate::automaton::{Automaton, Word};
use crate::error::{Error, Result};
use crate::stateset::StateSet;
use crate::sync::{greedy_with_table, PairTable, Variant};

/// Outcome of a subset search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchReport {
    pub word: Word,
    /// Nodes whose children were generated.
    pub expanded: usize,
    /// Nodes kept after pruning, root included.
    pub stored: usize,
}

struct Node {
    set: StateSet,
    parent: usize,
    letter: usize,
}

fn word_to(nodes: &[Node], mut idx: usize) -> Word {
    let mut letters = Vec::new();
    while idx != 0 {
        letters.push(nodes[idx].letter);
        idx = nodes[idx].parent;
    }
    letters.reverse();
    Word(letters)
}

/// Stored images bucketed by cardinality, so a containment query only visits
/// buckets no larger than the candidate.
struct DominanceStore {
    by_size: Vec<Vec<usize>>,
    exact: HashSet<StateSet>,
}

impl DominanceStore {
    fn new(n: usize) -> Self {
        DominanceStore {
            by_size: vec![Vec::new(); n + 1],
            exact: HashSet::new(),
        }
    }

    fn insert(&mut self, nodes: &[Node], idx: usize) {
        let set = &nodes[idx].set;
        self.by_size[set.len()].push(idx);
        self.exact.insert(set.clone());
    }

    fn dominates(&self, nodes: &[Node], candidate: &StateSet) -> bool {
        if self.exact.contains(candidate) {
            return true;
        }
        self.by_size[..candidate.len()]
            .iter()
            .flatten()
            .any(|&i| nodes[i].set.is_subset(candidate))
    }
}

pub fn minimal_sync_word(a: &Automaton) -> Result<Word> {
    minimal_sync_search(a, |_, _| {}).map(|r| r.word)
}

/// The pruned search; `on_expand` sees each expanded image with its depth.
pub fn minimal_sync_search<F>(a: &Automaton, mut on_expand: F) -> Result<SearchReport>
where
    F: FnMut(&StateSet, usize),
{
    let n = a.n();
    let root = StateSet::full(n);
    if root.len() == 1 {
        return Ok(SearchReport {
            word: Word::empty(),
            expanded: 0,
            stored: 1,
        });
    }

    let complete = a.is_complete();
    // Upper bound L and the images along the greedy word.
    let (bound, heuristic, prefix_chain) = if complete {
        let table = PairTable::new(a)?;
        if !table.all_mergeable() {
            return Err(Error::NotSynchronizing);
        }
        let word = Variant::ALL
            .iter()
            .map(|&v| greedy_with_table(a, &table, v))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .min_by_key(Word::len)
            .expect("three variants");
        let mut chain = Vec::with_capacity(word.len() + 1);
        let mut image = root.clone();
        chain.push(image.clone());
        for &l in word.letters() {
            image = a.apply_letter(&image, l);
            chain.push(image.clone());
        }
        (word.len(), Some(word), chain)
    } else {
        (usize::MAX, None, Vec::new())
    };

    let mut nodes = vec![Node {
        set: root,
        parent: 0,
        letter: 0,
    }];
    let mut store = DominanceStore::new(n);
    store.insert(&nodes, 0);
    let mut level = vec![0usize];
    let mut expanded = 0;
    let mut depth = 0;

    while !level.is_empty() && depth < bound {
        let child_depth = depth + 1;
        let mut next = Vec::new();
        for &idx in &level {
            expanded += 1;
            on_expand(&nodes[idx].set, depth);
            for letter in 0..a.d() {
                let child = a.apply_letter(&nodes[idx].set, letter);
                if child.is_empty() {
                    continue;
                }
                let pruned = if complete {
                    store.dominates(&nodes, &child)
                        || prefix_chain[..=child_depth.min(prefix_chain.len() - 1)]
                            .iter()
                            .any(|p| p.is_proper_subset(&child))
                } else {
                    store.exact.contains(&child)
                };
                if pruned {
                    continue;
                }
                let singleton = child.len() == 1;
                nodes.push(Node {
                    set: child,
                    parent: idx,
                    letter,
                });
                let child_idx = nodes.len() - 1;
                store.insert(&nodes, child_idx);
                // Children appear in shortlex order of their words, so the
                // first singleton is the least reset word of minimal length.
                if singleton {
                    return Ok(SearchReport {
                        word: word_to(&nodes, child_idx),
                        expanded,
                        stored: nodes.len(),
                    });
                }
                next.push(child_idx);
            }
        }
        level = next;
        depth = child_depth;
    }

    match heuristic {
        // Unreachable when dominance is sound: the greedy word bounds the search.
        Some(word) => {
            debug_assert!(false, "bounded search missed the greedy word");
            Ok(SearchReport {
                word,
                expanded,
                stored: nodes.len(),
            })
        }
        None => Err(Error::NotSynchronizing),
    }
}

/// Plain breadth-first search over all reachable images with duplicate
/// elimination only.
#[derive(Clone, Copy, Debug)]
pub struct BfsOracle {
    /// Largest state count accepted.
    pub max_states: usize,
    /// Stop after words of this length.
    pub max_depth: Option<usize>,
}

impl Default for BfsOracle {
    fn default() -> Self {
        BfsOracle {
            max_states: 20,
            max_depth: None,
        }
    }
}

impl BfsOracle {
    pub fn run<F>(&self, a: &Automaton, mut on_visit: F) -> Result<SearchReport>
    where
        F: FnMut(&StateSet, usize),
    {
        if a.n() > self.max_states {
            return Err(Error::CapExceeded {
                cap: self.max_states,
            });
        }
        let root = StateSet::full(a.n());
        on_visit(&root, 0);
        if root.len() == 1 {
            return Ok(SearchReport {
                word: Word::empty(),
                expanded: 0,
                stored: 1,
            });
        }
        let mut seen = HashSet::from([root.clone()]);
        let mut nodes = vec![Node {
            set: root,
            parent: 0,
            letter: 0,
        }];
        let mut level = vec![0usize];
        let mut depth = 0;
        let mut expanded = 0;
        while !level.is_empty() && self.max_depth.is_none_or(|m| depth < m) {
            let mut next = Vec::new();
            for &idx in &level {
                expanded += 1;
                for letter in 0..a.d() {
                    let child = a.apply_letter(&nodes[idx].set, letter);
                    if !seen.insert(child.clone()) {
                        continue;
                    }
                    on_visit(&child, depth + 1);
                    let singleton = child.len() == 1;
                    nodes.push(Node {
                        set: child,
                        parent: idx,
                        letter,
                    });
                    if singleton {
                        return Ok(SearchReport {
                            word: word_to(&nodes, nodes.len() - 1),
                            expanded,
                            stored: nodes.len(),
                        });
                    }
                    next.push(nodes.len() - 1);
                }
            }
            level = next;
            depth += 1;
        }
        Err(Error::NotSynchronizing)
    }
}

/// Minimal reset word by unpruned search, capped at 20 states.
pub fn bfs_oracle(a: &Automaton) -> Result<Word> {
    BfsOracle::default().run(a, |_, _| {}).map(|r| r.word)
}
