//! Synchronizability and greedy short reset words.
//!
//! Everything here runs on the pair automaton: the table of shortest words
//! merging each pair of states, built by a backward breadth-first search from
//! the diagonal in `O(n^2 d)`.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::automaton::{Automaton, Word};
use crate::error::{Error, Result};
use crate::stateset::StateSet;

const UNREACHED: u32 = u32::MAX;

/// Inverse transitions in compressed form: `sources(letter, t)` lists every
/// state sent to `t` by `letter`.
pub(crate) struct Preimages {
    n: usize,
    offsets: Vec<usize>,
    sources: Vec<usize>,
}

impl Preimages {
    pub(crate) fn new(a: &Automaton) -> Self {
        let (n, d) = (a.n(), a.d());
        let mut counts = vec![0usize; n * d + 1];
        for s in 0..n {
            for l in 0..d {
                counts[l * n + a.step(s, l) + 1] += 1;
            }
        }
        for i in 1..counts.len() {
            counts[i] += counts[i - 1];
        }
        let offsets = counts.clone();
        let mut fill = counts;
        let mut sources = vec![0; n * d];
        for s in 0..n {
            for l in 0..d {
                let slot = l * n + a.step(s, l);
                sources[fill[slot]] = s;
                fill[slot] += 1;
            }
        }
        Preimages {
            n,
            offsets,
            sources,
        }
    }

    pub(crate) fn of(&self, letter: usize, target: usize) -> &[usize] {
        let slot = letter * self.n + target;
        &self.sources[self.offsets[slot]..self.offsets[slot + 1]]
    }
}

#[inline]
pub(crate) fn pair_index(p: usize, q: usize) -> usize {
    let (lo, hi) = if p < q { (p, q) } else { (q, p) };
    hi * (hi - 1) / 2 + lo
}

/// Shortest merging-word lengths and first letters for all unordered pairs.
#[derive(Clone, Debug)]
pub struct PairTable {
    n: usize,
    dist: Vec<u32>,
    first: Vec<u32>,
}

impl PairTable {
    pub fn new(a: &Automaton) -> Result<Self> {
        a.require_complete()?;
        let (n, d) = (a.n(), a.d());
        let pairs = n * n.saturating_sub(1) / 2;
        let mut dist = vec![UNREACHED; pairs];
        let pre = Preimages::new(a);
        let mut queue = VecDeque::new();

        // Pairs merged by a single letter.
        for l in 0..d {
            for t in 0..n {
                let srcs = pre.of(l, t);
                for (i, &r) in srcs.iter().enumerate() {
                    for &s in &srcs[i + 1..] {
                        let idx = pair_index(r, s);
                        if dist[idx] == UNREACHED {
                            dist[idx] = 1;
                            queue.push_back((r, s));
                        }
                    }
                }
            }
        }
        while let Some((p, q)) = queue.pop_front() {
            let next = dist[pair_index(p, q)] + 1;
            for l in 0..d {
                for &r in pre.of(l, p) {
                    for &s in pre.of(l, q) {
                        let idx = pair_index(r, s);
                        if dist[idx] == UNREACHED {
                            dist[idx] = next;
                            queue.push_back((r, s));
                        }
                    }
                }
            }
        }

        let mut table = PairTable {
            n,
            dist,
            first: vec![UNREACHED; pairs],
        };
        for q in 1..n {
            for p in 0..q {
                let Some(k) = table.distance(p, q) else {
                    continue;
                };
                let letter = (0..d)
                    .find(|&l| table.distance(a.step(p, l), a.step(q, l)) == Some(k - 1))
                    .expect("shortest merging word has a first letter");
                table.first[pair_index(p, q)] = letter as u32;
            }
        }
        Ok(table)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Length of a shortest word merging `p` and `q`, if any.
    pub fn distance(&self, p: usize, q: usize) -> Option<usize> {
        if p == q {
            return Some(0);
        }
        match self.dist[pair_index(p, q)] {
            UNREACHED => None,
            k => Some(k as usize),
        }
    }

    /// Lowest letter starting a shortest merging word of `p` and `q`.
    pub fn first_letter(&self, p: usize, q: usize) -> Option<usize> {
        if p == q {
            return None;
        }
        match self.first[pair_index(p, q)] {
            UNREACHED => None,
            l => Some(l as usize),
        }
    }

    pub fn is_mergeable(&self, p: usize, q: usize) -> bool {
        self.distance(p, q).is_some()
    }

    pub fn all_mergeable(&self) -> bool {
        self.dist.iter().all(|&k| k != UNREACHED)
    }

    /// Shortest merging word by chaining first letters.
    pub fn merging_word(&self, a: &Automaton, p: usize, q: usize) -> Result<Word> {
        let mut word = Word::empty();
        let (mut p, mut q) = (p, q);
        while p != q {
            let l = self.first_letter(p, q).ok_or(Error::NotMergeable { p, q })?;
            word.push(l);
            (p, q) = (a.step(p, l), a.step(q, l));
        }
        Ok(word)
    }
}

/// Whether a complete automaton has a reset word: every pair is mergeable.
pub fn is_synchronizing(a: &Automaton) -> Result<bool> {
    Ok(PairTable::new(a)?.all_mergeable())
}

pub fn shortest_merging_word(a: &Automaton, p: usize, q: usize) -> Result<Word> {
    PairTable::new(a)?.merging_word(a, p, q)
}

/// The greedy reset-word strategies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Variant {
    /// Merge the two smallest states of the current image.
    A,
    /// Merge the image pair with the shortest merging word.
    B,
    /// Append the pair word that shrinks the image most.
    C,
}

impl Variant {
    pub const ALL: [Variant; 3] = [Variant::A, Variant::B, Variant::C];
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Variant::A => "A",
            Variant::B => "B",
            Variant::C => "C",
        };
        f.write_str(s)
    }
}

impl FromStr for Variant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "A" | "a" => Ok(Variant::A),
            "B" | "b" => Ok(Variant::B),
            "C" | "c" => Ok(Variant::C),
            other => Err(format!("unknown variant {other:?}, expected A, B or C")),
        }
    }
}

/// A reset word built by repeatedly appending pair-merging words.
pub fn greedy_sync_word(a: &Automaton, variant: Variant) -> Result<Word> {
    let table = PairTable::new(a)?;
    greedy_with_table(a, &table, variant)
}

pub(crate) fn greedy_with_table(a: &Automaton, table: &PairTable, variant: Variant) -> Result<Word> {
    if !table.all_mergeable() {
        return Err(Error::NotSynchronizing);
    }
    let mut image = StateSet::full(a.n());
    let mut word = Word::empty();
    while image.len() > 1 {
        let step = match variant {
            Variant::A => {
                let mut it = image.iter();
                let (p, q) = (it.next().unwrap(), it.next().unwrap());
                table.merging_word(a, p, q)?
            }
            Variant::B => {
                let states: Vec<usize> = image.iter().collect();
                let mut best: Option<(usize, usize, usize)> = None;
                for (i, &p) in states.iter().enumerate() {
                    for &q in &states[i + 1..] {
                        let k = table.distance(p, q).expect("mergeable");
                        if best.is_none_or(|(bk, _, _)| k < bk) {
                            best = Some((k, p, q));
                        }
                    }
                }
                let (_, p, q) = best.expect("image has two states");
                table.merging_word(a, p, q)?
            }
            Variant::C => {
                let states: Vec<usize> = image.iter().collect();
                let mut best: Option<(usize, Word)> = None;
                for (i, &p) in states.iter().enumerate() {
                    for &q in &states[i + 1..] {
                        let w = table.merging_word(a, p, q)?;
                        let size = a.apply_word(&image, &w).len();
                        let better = match &best {
                            None => true,
                            Some((bs, bw)) => (size, w.len(), &w) < (*bs, bw.len(), bw),
                        };
                        if better {
                            best = Some((size, w));
                        }
                    }
                }
                best.expect("image has two states").1
            }
        };
        image = a.apply_word(&image, &step);
        word.extend_from(&step);
    }
    Ok(word)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testas::parse_testas;
    use proptest::prelude::*;

    fn six_state() -> Automaton {
        parse_testas("2 6 1 0 2 1 0 3 5 2 3 2 4 5").unwrap()
    }

    /// Forward BFS over ordered pairs, independent of the backward table.
    fn bfs_pair_distance(a: &Automaton, p: usize, q: usize) -> Option<usize> {
        let n = a.n();
        let mut seen = vec![false; n * n];
        let mut queue = VecDeque::from([(p, q, 0)]);
        seen[p * n + q] = true;
        while let Some((x, y, k)) = queue.pop_front() {
            if x == y {
                return Some(k);
            }
            for l in 0..a.d() {
                let (u, v) = (a.target(x, l).unwrap(), a.target(y, l).unwrap());
                if !seen[u * n + v] {
                    seen[u * n + v] = true;
                    queue.push_back((u, v, k + 1));
                }
            }
        }
        None
    }

    #[test]
    fn decides_small_cases() {
        assert!(is_synchronizing(&six_state()).unwrap());
        let identity = Automaton::from_rows(&[[0, 0], [1, 1]]).unwrap();
        assert!(!is_synchronizing(&identity).unwrap());
        assert!(is_synchronizing(&Automaton::from_rows(&[[0]]).unwrap()).unwrap());
        let partial = parse_testas("1 2 1 ;").unwrap();
        assert_eq!(is_synchronizing(&partial), Err(Error::NotComplete));
    }

    #[test]
    fn merging_words() {
        let a = six_state();
        assert_eq!(shortest_merging_word(&a, 2, 2).unwrap(), Word::empty());
        // 3·b = 2 = 4·b
        assert_eq!(shortest_merging_word(&a, 3, 4).unwrap(), Word(vec![1]));

        let c4 = Automaton::cerny(4);
        let w = shortest_merging_word(&c4, 0, 1).unwrap();
        assert_eq!(Some(w.len()), bfs_pair_distance(&c4, 0, 1));
        assert_eq!(c4.run(0, &w), c4.run(1, &w));

        let identity = Automaton::from_rows(&[[0, 0], [1, 1]]).unwrap();
        assert_eq!(
            shortest_merging_word(&identity, 0, 1),
            Err(Error::NotMergeable { p: 0, q: 1 })
        );
    }

    #[test]
    fn greedy_on_known_automata() {
        let one = Automaton::from_rows(&[[0, 0]]).unwrap();
        for v in Variant::ALL {
            assert_eq!(greedy_sync_word(&one, v).unwrap(), Word::empty());
        }
        let c4 = Automaton::cerny(4);
        for v in Variant::ALL {
            let w = greedy_sync_word(&c4, v).unwrap();
            assert!(c4.is_synchronizing_word(&w), "variant {v}");
            assert!(w.len() >= 9);
        }
        let six = six_state();
        for v in Variant::ALL {
            assert!(six.is_synchronizing_word(&greedy_sync_word(&six, v).unwrap()));
        }
        let identity = Automaton::from_rows(&[[0, 0], [1, 1]]).unwrap();
        assert_eq!(greedy_sync_word(&identity, Variant::B), Err(Error::NotSynchronizing));
    }

    #[test]
    fn variant_parsing() {
        assert_eq!("B".parse::<Variant>(), Ok(Variant::B));
        assert!("D".parse::<Variant>().is_err());
    }

    fn complete_automaton(max_n: usize) -> impl Strategy<Value = Automaton> {
        (1..=max_n, 1usize..4).prop_flat_map(|(n, d)| {
            prop::collection::vec(0..n, n * d)
                .prop_map(move |cells| Automaton::new(n, d, cells.into_iter().map(Some).collect()).unwrap())
        })
    }

    proptest! {
        #[test]
        fn pair_table_matches_forward_bfs(a in complete_automaton(10)) {
            let table = PairTable::new(&a).unwrap();
            for p in 0..a.n() {
                for q in 0..a.n() {
                    prop_assert_eq!(table.distance(p, q), bfs_pair_distance(&a, p, q));
                    if let Some(k) = table.distance(p, q) {
                        let w = table.merging_word(&a, p, q).unwrap();
                        prop_assert_eq!(w.len(), k);
                        prop_assert_eq!(a.run(p, &w), a.run(q, &w));
                    }
                }
            }
        }

        #[test]
        fn greedy_words_synchronize(a in complete_automaton(12)) {
            let n = a.n();
            match is_synchronizing(&a).unwrap() {
                true => for v in Variant::ALL {
                    let w = greedy_sync_word(&a, v).unwrap();
                    prop_assert!(a.is_synchronizing_word(&w));
                    prop_assert!(w.len() <= n * n * n);
                },
                false => for v in Variant::ALL {
                    prop_assert_eq!(greedy_sync_word(&a, v), Err(Error::NotSynchronizing));
                },
            }
        }
    }
}
