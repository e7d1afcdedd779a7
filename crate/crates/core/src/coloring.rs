//! Road coloring: synchronizing colorings of AGW graphs and k-synchronizing
//! colorings of strongly connected graphs of uniform outdegree.
//!
//! The engine is the stability relation. Two states `p`, `q` are stable when
//! every pair reachable from `(p, q)` can still be merged; the reflexive and
//! transitive closure of stability is a congruence, and the quotient by it is
//! again strongly connected with the same cycle gcd. A coloring of the
//! quotient lifts back by permuting letters uniformly inside each class, and
//! stable pairs stay stable under such a lift. So it is enough to find, at
//! each level, some coloring with a nontrivial stable pair, and to recurse
//! until the quotient has `k` vertices (`k` = cycle gcd).
//!
//! Stable pairs come from the red subgraph (one chosen out-edge per vertex,
//! colored with letter 0): if exactly one vertex has the maximal positive
//! distance `L` to the red cycles, two maximal deadlocked images differ in one
//! state and that pair is stable.

use std::collections::VecDeque;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::automaton::{Automaton, Coloring, Digraph, Word};
use crate::error::{Error, Result};
use crate::graph::{cycle_gcd, is_strongly_connected};
use crate::stateset::StateSet;
use crate::sync::{pair_index, PairTable, Preimages};

/// Stable unordered pairs of a complete automaton.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StablePairs {
    n: usize,
    stable: Vec<bool>,
}

impl StablePairs {
    pub fn contains(&self, p: usize, q: usize) -> bool {
        p == q || self.stable[pair_index(p, q)]
    }

    /// Pairs `p < q`, ordered by `q` then `p`.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (1..self.n).flat_map(move |q| (0..q).map(move |p| (p, q)).filter(|&(p, q)| self.contains(p, q)))
    }

    pub fn count(&self) -> usize {
        self.stable.iter().filter(|&&s| s).count()
    }
}

fn unstable_marks(a: &Automaton, table: &PairTable) -> Vec<bool> {
    let n = a.n();
    let pre = Preimages::new(a);
    let mut unstable = vec![false; n * n.saturating_sub(1) / 2];
    let mut queue = VecDeque::new();
    for q in 1..n {
        for p in 0..q {
            if !table.is_mergeable(p, q) {
                unstable[pair_index(p, q)] = true;
                queue.push_back((p, q));
            }
        }
    }
    // Everything that can reach a deadlocked pair is unstable.
    while let Some((p, q)) = queue.pop_front() {
        for l in 0..a.d() {
            for &r in pre.of(l, p) {
                for &s in pre.of(l, q) {
                    let idx = pair_index(r, s);
                    if !unstable[idx] {
                        unstable[idx] = true;
                        queue.push_back((r, s));
                    }
                }
            }
        }
    }
    unstable
}

fn check_strongly_connected_complete(a: &Automaton) -> Result<()> {
    a.require_complete()?;
    if !is_strongly_connected(&a.transition_graph()) {
        return Err(Error::NotStronglyConnected);
    }
    Ok(())
}

/// Stable pairs, in `O(n^2 d)` on the pair automaton.
pub fn stable_pairs(a: &Automaton) -> Result<StablePairs> {
    check_strongly_connected_complete(a)?;
    Ok(stable_pairs_unchecked(a))
}

fn stable_pairs_unchecked(a: &Automaton) -> StablePairs {
    let table = PairTable::new(a).expect("complete");
    let stable = unstable_marks(a, &table).into_iter().map(|u| !u).collect();
    StablePairs { n: a.n(), stable }
}

/// Partition of the states into stability classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilityRelation {
    class: Vec<usize>,
    classes: Vec<Vec<usize>>,
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

impl StabilityRelation {
    /// Reflexive-transitive closure of `pairs`; classes numbered by smallest member.
    pub fn from_pairs(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut parent: Vec<usize> = (0..n).collect();
        for (p, q) in pairs {
            let (rp, rq) = (find(&mut parent, p), find(&mut parent, q));
            if rp != rq {
                parent[rp.max(rq)] = rp.min(rq);
            }
        }
        let mut class = vec![usize::MAX; n];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        let mut id_of_root = vec![usize::MAX; n];
        for v in 0..n {
            let r = find(&mut parent, v);
            if id_of_root[r] == usize::MAX {
                id_of_root[r] = classes.len();
                classes.push(Vec::new());
            }
            class[v] = id_of_root[r];
            classes[class[v]].push(v);
        }
        StabilityRelation { class, classes }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_pairs(n, std::iter::empty())
    }

    pub fn class_of(&self, v: usize) -> usize {
        self.class[v]
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    /// Some class has two or more states.
    pub fn is_nontrivial(&self) -> bool {
        self.classes.len() < self.class.len()
    }

    /// First `(state, letter)` whose image leaves the class image of its
    /// class representative, if any.
    pub fn congruence_violation(&self, a: &Automaton) -> Option<(usize, usize)> {
        for members in &self.classes {
            let rep = members[0];
            for l in 0..a.d() {
                let expected = a.target(rep, l).map(|t| self.class[t]);
                for &v in &members[1..] {
                    if a.target(v, l).map(|t| self.class[t]) != expected {
                        return Some((v, l));
                    }
                }
            }
        }
        None
    }

    pub fn is_congruence(&self, a: &Automaton) -> bool {
        self.congruence_violation(a).is_none()
    }
}

pub fn stability_relation(a: &Automaton) -> Result<StabilityRelation> {
    let pairs = stable_pairs(a)?;
    Ok(StabilityRelation::from_pairs(a.n(), pairs.iter()))
}

/// The colored quotient `a / rel`: class `C` under letter `l` goes to the
/// class of `rep(C)·l`.
pub fn quotient(a: &Automaton, rel: &StabilityRelation) -> Result<Automaton> {
    if let Some((state, letter)) = rel.congruence_violation(a) {
        return Err(Error::NotCongruence { state, letter });
    }
    let d = a.d();
    let mut table = Vec::with_capacity(rel.class_count() * d);
    for members in rel.classes() {
        for l in 0..d {
            table.push(a.target(members[0], l).map(|t| rel.class_of(t)));
        }
    }
    Automaton::new(rel.class_count(), d, table)
}

/// Search knobs for the stable-pair step.
#[derive(Clone, Copy, Debug)]
pub struct ColoringOptions {
    pub seed: u64,
    /// Random colorings tried after the deterministic stages.
    pub random_attempts: usize,
}

impl Default for ColoringOptions {
    fn default() -> Self {
        ColoringOptions {
            seed: 0,
            random_attempts: 4096,
        }
    }
}

/// Which search stage produced a stable coloring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Stage {
    /// The coloring given by slot order.
    Initial,
    /// Red subgraph with a unique vertex of maximal level.
    RedSubgraph,
    /// One letter transposition away from the initial coloring.
    Transposition,
    /// Seeded random coloring.
    Random,
}

#[derive(Clone, Debug)]
pub struct StableColoring {
    pub coloring: Coloring,
    pub relation: StabilityRelation,
    pub stage: Stage,
}

struct RedSubgraph<'g> {
    g: &'g Digraph,
    choice: Vec<usize>,
}

impl RedSubgraph<'_> {
    fn succ(&self, v: usize) -> usize {
        self.g.out(v)[self.choice[v]]
    }

    /// Distance of every vertex to the red cycles.
    fn levels(&self) -> Vec<usize> {
        let n = self.g.n();
        let mut indeg = vec![0usize; n];
        for v in 0..n {
            indeg[self.succ(v)] += 1;
        }
        // Peel vertices with no red in-edges; what survives lies on cycles.
        let mut off_cycle = vec![false; n];
        let mut stack: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        while let Some(v) = stack.pop() {
            off_cycle[v] = true;
            let s = self.succ(v);
            indeg[s] -= 1;
            if indeg[s] == 0 {
                stack.push(s);
            }
        }
        let mut red_in: Vec<Vec<usize>> = vec![Vec::new(); n];
        for v in 0..n {
            red_in[self.succ(v)].push(v);
        }
        let mut level = vec![usize::MAX; n];
        let mut queue: VecDeque<usize> = (0..n).filter(|&v| !off_cycle[v]).collect();
        for &v in &queue {
            level[v] = 0;
        }
        while let Some(v) = queue.pop_front() {
            for &u in &red_in[v] {
                if level[u] == usize::MAX {
                    level[u] = level[v] + 1;
                    queue.push_back(u);
                }
            }
        }
        level
    }

    fn on_red_path(&self, from: usize, target: usize, level: &[usize]) -> bool {
        // Walk down to the cycle, then once around it.
        let mut v = from;
        while level[v] > 0 {
            if v == target {
                return true;
            }
            v = self.succ(v);
        }
        let start = v;
        loop {
            if v == target {
                return true;
            }
            v = self.succ(v);
            if v == start {
                return false;
            }
        }
    }

    /// Redirects red edges until a unique vertex has the maximal level, which
    /// is then positive. Each step either settles an all-cycles red subgraph
    /// at once or strictly raises the maximal level.
    fn climb(&mut self, in_edges: &[Vec<(usize, usize)>]) -> bool {
        let n = self.g.n();
        for _ in 0..=n {
            let level = self.levels();
            let top = *level.iter().max().expect("nonempty");
            let at_top: Vec<usize> = (0..n).filter(|&v| level[v] == top).collect();
            if top > 0 && at_top.len() == 1 {
                return true;
            }
            if top == 0 {
                // Any edge leaving the red cycle structure breaks one cycle
                // into a path with a unique deepest vertex.
                let moved = (0..n).find_map(|v| {
                    let current = self.succ(v);
                    self.g.out(v).iter().position(|&t| t != current).map(|s| (v, s))
                });
                return match moved {
                    Some((v, s)) => {
                        self.choice[v] = s;
                        true
                    }
                    None => false,
                };
            }
            // Several deepest leaves: hang one of them below a vertex u that
            // does not lie on its red path, raising u above all of them.
            let moved = at_top.iter().find_map(|&p| {
                in_edges[p]
                    .iter()
                    .find(|&&(u, _)| u != p && !self.on_red_path(p, u, &level))
                    .copied()
            });
            match moved {
                Some((u, slot)) => self.choice[u] = slot,
                None => return false,
            }
        }
        false
    }

    fn coloring(&self) -> Coloring {
        let d = self.g.uniform_outdegree().expect("uniform");
        let letters = (0..self.g.n())
            .map(|v| {
                let red = self.choice[v];
                let mut next = 1;
                (0..d)
                    .map(|s| {
                        if s == red {
                            0
                        } else {
                            next += 1;
                            next - 1
                        }
                    })
                    .collect()
            })
            .collect();
        Coloring::new(letters).expect("permutation")
    }
}

/// Red choice covering every vertex by cycles, from a perfect matching of
/// vertices to out-edge targets; otherwise a maximum matching padded with
/// slot 0.
fn matching_red_choice(g: &Digraph) -> Vec<usize> {
    let n = g.n();
    let mut owner: Vec<Option<(usize, usize)>> = vec![None; n];
    let mut chosen: Vec<Option<usize>> = vec![None; n];

    fn augment(
        g: &Digraph,
        v: usize,
        seen: &mut [bool],
        owner: &mut [Option<(usize, usize)>],
        chosen: &mut [Option<usize>],
    ) -> bool {
        for (slot, &t) in g.out(v).iter().enumerate() {
            if seen[t] {
                continue;
            }
            seen[t] = true;
            let free = match owner[t] {
                None => true,
                Some((w, _)) => augment(g, w, seen, owner, chosen),
            };
            if free {
                owner[t] = Some((v, slot));
                chosen[v] = Some(slot);
                return true;
            }
        }
        false
    }

    let mut seen = vec![false; n];
    for v in 0..n {
        seen.fill(false);
        augment(g, v, &mut seen, &mut owner, &mut chosen);
    }
    chosen.into_iter().map(|c| c.unwrap_or(0)).collect()
}

fn nontrivial_relation(g: &Digraph, c: &Coloring) -> Option<StabilityRelation> {
    let a = g.apply_coloring(c).ok()?;
    let pairs = stable_pairs_unchecked(&a);
    let rel = StabilityRelation::from_pairs(a.n(), pairs.iter());
    rel.is_nontrivial().then_some(rel)
}

fn check_colorable(g: &Digraph) -> Result<usize> {
    let d = g.require_uniform()?;
    if d == 0 {
        return Err(Error::NonUniformOutdegree {
            vertex: 0,
            expected: 1,
            found: 0,
        });
    }
    if !is_strongly_connected(g) {
        return Err(Error::NotStronglyConnected);
    }
    Ok(d)
}

/// A coloring whose stability relation has a class of two or more states.
///
/// Requires an AGW graph with at least two vertices.
pub fn find_stable_coloring(g: &Digraph, opts: &ColoringOptions) -> Result<StableColoring> {
    require_agw(g)?;
    if g.n() < 2 {
        return Err(Error::SearchExhausted);
    }
    stable_coloring_search(g, opts)
}

fn stable_coloring_search(g: &Digraph, opts: &ColoringOptions) -> Result<StableColoring> {
    let n = g.n();
    let d = check_colorable(g)?;
    let found = |coloring: Coloring, stage| {
        nontrivial_relation(g, &coloring).map(|relation| StableColoring {
            coloring,
            relation,
            stage,
        })
    };

    let initial = Coloring::identity(n, d);
    if let Some(s) = found(initial.clone(), Stage::Initial) {
        return Ok(s);
    }

    let mut in_edges: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for v in 0..n {
        for (slot, &t) in g.out(v).iter().enumerate() {
            in_edges[t].push((v, slot));
        }
    }
    let mut starts = vec![matching_red_choice(g)];
    starts.extend((0..d).map(|s| vec![s; n]));
    for choice in starts {
        let mut red = RedSubgraph { g, choice };
        if red.climb(&in_edges) {
            if let Some(s) = found(red.coloring(), Stage::RedSubgraph) {
                return Ok(s);
            }
        }
    }

    for v in 0..n {
        for s1 in 0..d {
            for s2 in s1 + 1..d {
                if g.out(v)[s1] == g.out(v)[s2] {
                    continue;
                }
                let mut c = initial.clone();
                c.swap_slots(v, s1, s2);
                if let Some(s) = found(c, Stage::Transposition) {
                    return Ok(s);
                }
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for attempt in 0..opts.random_attempts {
        // Alternate random red subgraphs with fully random colorings.
        let c = if attempt % 2 == 0 {
            let choice = (0..n).map(|_| rng.gen_range(0..d)).collect();
            let mut red = RedSubgraph { g, choice };
            if !red.climb(&in_edges) {
                continue;
            }
            red.coloring()
        } else {
            let letters = (0..n)
                .map(|_| {
                    let mut p: Vec<usize> = (0..d).collect();
                    p.shuffle(&mut rng);
                    p
                })
                .collect();
            Coloring::new(letters).expect("permutation")
        };
        if let Some(s) = found(c, Stage::Random) {
            return Ok(s);
        }
    }
    Err(Error::SearchExhausted)
}

fn require_agw(g: &Digraph) -> Result<()> {
    let uniform = matches!(g.uniform_outdegree(), Some(d) if d >= 1);
    let strongly_connected = is_strongly_connected(g);
    let gcd = cycle_gcd(g);
    if uniform && strongly_connected && gcd == 1 {
        Ok(())
    } else {
        Err(Error::NotAgw {
            strongly_connected,
            uniform,
            gcd,
        })
    }
}

/// One reduction step: a graph, the coloring found for it, its stability
/// classes and the colored quotient.
#[derive(Clone, Debug)]
pub struct ReductionStep {
    pub graph: Digraph,
    pub coloring: Coloring,
    pub automaton: Automaton,
    pub relation: StabilityRelation,
    pub quotient: Automaton,
    pub stage: Stage,
}

/// A coloring together with the reductions that produced it.
#[derive(Clone, Debug)]
pub struct RoadColoring {
    pub coloring: Coloring,
    pub automaton: Automaton,
    pub steps: Vec<ReductionStep>,
}

/// Reduces by stability quotients until `target` vertices remain, then lifts
/// the coloring back through every level.
fn reduce_and_lift(g: &Digraph, target: usize, opts: &ColoringOptions) -> Result<RoadColoring> {
    let mut steps: Vec<ReductionStep> = Vec::new();
    let mut current = g.clone();
    while current.n() > target {
        let found = stable_coloring_search(&current, opts)?;
        let automaton = current.apply_coloring(&found.coloring)?;
        let quotient = quotient(&automaton, &found.relation)?;
        let next = quotient.forget_colors()?;
        steps.push(ReductionStep {
            graph: std::mem::replace(&mut current, next),
            coloring: found.coloring,
            automaton,
            relation: found.relation,
            quotient,
            stage: found.stage,
        });
    }
    let d = current.require_uniform()?;
    let mut coloring = Coloring::identity(current.n(), d);
    for step in steps.iter().rev() {
        // Slot i of a quotient class carries letter i of the step's coloring.
        let mut lifted = step.coloring.clone();
        for v in 0..step.graph.n() {
            let class = step.relation.class_of(v);
            let letters = (0..d)
                .map(|s| coloring.letter(class, step.coloring.letter(v, s)))
                .collect();
            lifted.set_vertex(v, letters);
        }
        coloring = lifted;
    }
    let automaton = g.apply_coloring(&coloring)?;
    Ok(RoadColoring {
        coloring,
        automaton,
        steps,
    })
}

/// Synchronizing coloring of an AGW graph, with its reduction trace.
pub fn road_coloring(g: &Digraph, opts: &ColoringOptions) -> Result<RoadColoring> {
    require_agw(g)?;
    let result = reduce_and_lift(g, 1, opts)?;
    if !crate::sync::is_synchronizing(&result.automaton)? {
        return Err(Error::NotSynchronizing);
    }
    Ok(result)
}

pub fn find_synchronizing_coloring(g: &Digraph) -> Result<Coloring> {
    road_coloring(g, &ColoringOptions::default()).map(|r| r.coloring)
}

/// A coloring of minimal rank `k` and a word reaching it.
#[derive(Clone, Debug)]
pub struct ColoringResult {
    pub k: usize,
    pub coloring: Coloring,
    pub automaton: Automaton,
    pub witness: Word,
}

/// Repeatedly merges the lowest mergeable pair of the current image; ends at
/// the minimum rank because a larger image always contains a mergeable pair.
pub fn min_rank_word(a: &Automaton) -> Result<Word> {
    let table = PairTable::new(a)?;
    let mut image = StateSet::full(a.n());
    let mut word = Word::empty();
    loop {
        let states: Vec<usize> = image.iter().collect();
        let pair = states.iter().enumerate().find_map(|(i, &p)| {
            states[i + 1..]
                .iter()
                .find(|&&q| table.is_mergeable(p, q))
                .map(|&q| (p, q))
        });
        let Some((p, q)) = pair else {
            return Ok(word);
        };
        let step = table.merging_word(a, p, q)?;
        image = a.apply_word(&image, &step);
        word.extend_from(&step);
    }
}

/// `k`-synchronizing coloring with `k` the gcd of cycle lengths.
pub fn find_k_sync_coloring(g: &Digraph, opts: &ColoringOptions) -> Result<ColoringResult> {
    check_colorable(g)?;
    let k = cycle_gcd(g);
    let colored = reduce_and_lift(g, k, opts)?;
    let witness = min_rank_word(&colored.automaton)?;
    let reached = colored.automaton.image_size(&witness);
    if reached != k {
        return Err(Error::InvalidColoring(format!(
            "lifted coloring reaches rank {reached}, expected {k}"
        )));
    }
    Ok(ColoringResult {
        k,
        coloring: colored.coloring,
        automaton: colored.automaton,
        witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::is_agw;
    use crate::sync::is_synchronizing;
    use crate::testas::parse_testas;
    use std::collections::HashSet;

    fn graph(out: Vec<Vec<usize>>) -> Digraph {
        Digraph::new(out).unwrap()
    }

    fn mergeable_forward(a: &Automaton, p: usize, q: usize) -> bool {
        let mut seen = HashSet::from([(p, q)]);
        let mut todo = vec![(p, q)];
        while let Some((x, y)) = todo.pop() {
            if x == y {
                return true;
            }
            for l in 0..a.d() {
                let next = (a.step(x, l), a.step(y, l));
                if seen.insert(next) {
                    todo.push(next);
                }
            }
        }
        false
    }

    /// Stable iff every pair reachable from (p, q) is mergeable.
    fn stable_forward(a: &Automaton, p: usize, q: usize) -> bool {
        let mut seen = HashSet::from([(p, q)]);
        let mut todo = vec![(p, q)];
        while let Some((x, y)) = todo.pop() {
            if !mergeable_forward(a, x, y) {
                return false;
            }
            for l in 0..a.d() {
                let next = (a.step(x, l), a.step(y, l));
                if seen.insert(next) {
                    todo.push(next);
                }
            }
        }
        true
    }

    #[test]
    fn stable_pairs_basic() {
        let constant = Automaton::from_rows(&[[1, 0], [2, 0], [0, 0]]).unwrap();
        let sp = stable_pairs(&constant).unwrap();
        assert_eq!(sp.count(), 3);

        let identity = Automaton::from_rows(&[[1, 1], [0, 0]]).unwrap();
        assert_eq!(stable_pairs(&identity).unwrap().count(), 0);

        let six = parse_testas("2 6 1 0 2 1 0 3 5 2 3 2 4 5").unwrap();
        let sp = stable_pairs(&six).unwrap();
        for q in 0..6 {
            for p in 0..q {
                assert_eq!(sp.contains(p, q), stable_forward(&six, p, q), "({p},{q})");
            }
        }
    }

    #[test]
    fn stable_pairs_preconditions() {
        let partial = parse_testas("1 2 1 ;").unwrap();
        assert_eq!(stable_pairs(&partial), Err(Error::NotComplete));
        let split = Automaton::from_rows(&[[0], [1]]).unwrap();
        assert_eq!(stable_pairs(&split), Err(Error::NotStronglyConnected));
    }

    #[test]
    fn relation_and_quotient_extremes() {
        let six = parse_testas("2 6 1 0 2 1 0 3 5 2 3 2 4 5").unwrap();
        let id = StabilityRelation::identity(6);
        assert!(!id.is_nontrivial());
        assert_eq!(quotient(&six, &id).unwrap(), six);

        let all = StabilityRelation::from_pairs(6, (1..6).map(|q| (0, q)));
        let q = quotient(&six, &all).unwrap();
        assert_eq!(q, Automaton::from_rows(&[[0, 0]]).unwrap());

        let bad = StabilityRelation::from_pairs(6, [(0, 1)]);
        assert!(matches!(quotient(&six, &bad), Err(Error::NotCongruence { .. })));
    }

    #[test]
    fn bunch_sources_are_stable_under_any_coloring() {
        // 1 and 2 both send every edge to 3.
        let g = graph(vec![vec![1, 2], vec![3, 3], vec![3, 3], vec![0, 3]]);
        assert!(is_agw(&g));
        let a = g.apply_coloring(&Coloring::identity(4, 2)).unwrap();
        assert!(stable_pairs(&a).unwrap().contains(1, 2));
        let s = find_stable_coloring(&g, &ColoringOptions::default()).unwrap();
        assert_eq!(s.stage, Stage::Initial);
    }

    #[test]
    fn red_climb_yields_unique_deepest_vertex() {
        let g = parse_testas("2 6 1 0 2 1 0 3 5 2 3 2 4 5").unwrap().forget_colors().unwrap();
        let mut in_edges: Vec<Vec<(usize, usize)>> = vec![Vec::new(); g.n()];
        for v in 0..g.n() {
            for (slot, &t) in g.out(v).iter().enumerate() {
                in_edges[t].push((v, slot));
            }
        }
        for start in [vec![0; 6], vec![1; 6], matching_red_choice(&g)] {
            let mut red = RedSubgraph { g: &g, choice: start };
            assert!(red.climb(&in_edges));
            let level = red.levels();
            let top = *level.iter().max().unwrap();
            assert!(top > 0);
            assert_eq!(level.iter().filter(|&&l| l == top).count(), 1);
            assert!(nontrivial_relation(&g, &red.coloring()).is_some());
        }
    }

    #[test]
    fn synchronizing_colorings() {
        let single = graph(vec![vec![0, 0]]);
        let c = find_synchronizing_coloring(&single).unwrap();
        assert!(is_synchronizing(&single.apply_coloring(&c).unwrap()).unwrap());

        // Underlying graph of C4 with both letters' edges.
        let cerny = Automaton::cerny(4).forget_colors().unwrap();
        let c = find_synchronizing_coloring(&cerny).unwrap();
        assert!(is_synchronizing(&cerny.apply_coloring(&c).unwrap()).unwrap());

        let two_cycle = graph(vec![vec![1], vec![0]]);
        assert!(matches!(
            find_synchronizing_coloring(&two_cycle),
            Err(Error::NotAgw { gcd: 2, .. })
        ));
    }

    #[test]
    fn identity_six_state_is_recolored() {
        // Two disjoint 3-cycles joined so the graph is AGW but the identity
        // letter pattern is a permutation automaton.
        let g = graph(vec![vec![1, 3], vec![2, 4], vec![0, 5], vec![4, 0], vec![5, 1], vec![3, 3]]);
        assert!(is_agw(&g));
        let r = road_coloring(&g, &ColoringOptions::default()).unwrap();
        assert!(is_synchronizing(&r.automaton).unwrap());
        assert_eq!(r.automaton.forget_colors().unwrap().n(), 6);
        for step in &r.steps {
            assert!(step.relation.is_congruence(&step.automaton));
            assert!(is_agw(&step.quotient.forget_colors().unwrap()));
        }
    }

    #[test]
    fn k_sync_examples() {
        let doubled_four = graph(vec![vec![1, 1], vec![2, 2], vec![3, 3], vec![0, 0]]);
        let r = find_k_sync_coloring(&doubled_four, &ColoringOptions::default()).unwrap();
        assert_eq!(r.k, 4);
        assert_eq!(r.automaton.image_size(&r.witness), 4);

        let pair = graph(vec![vec![1, 1], vec![0, 0]]);
        assert_eq!(find_k_sync_coloring(&pair, &ColoringOptions::default()).unwrap().k, 2);

        let agw = Automaton::cerny(3).forget_colors().unwrap();
        let r = find_k_sync_coloring(&agw, &ColoringOptions::default()).unwrap();
        assert_eq!(r.k, 1);
        assert!(r.automaton.is_synchronizing_word(&r.witness));

        // Period 2: {0,1} <-> {2,3}
        let bip = graph(vec![vec![2, 3], vec![2, 2], vec![0, 1], vec![1, 1]]);
        let r = find_k_sync_coloring(&bip, &ColoringOptions::default()).unwrap();
        assert_eq!(r.k, 2);
        assert_eq!(r.automaton.image_size(&r.witness), 2);

        let uneven = graph(vec![vec![1, 0], vec![0]]);
        assert!(matches!(
            find_k_sync_coloring(&uneven, &ColoringOptions::default()),
            Err(Error::NonUniformOutdegree { .. })
        ));
        let split = graph(vec![vec![0], vec![1]]);
        assert_eq!(
            find_k_sync_coloring(&split, &ColoringOptions::default()).unwrap_err(),
            Error::NotStronglyConnected
        );
    }
}
