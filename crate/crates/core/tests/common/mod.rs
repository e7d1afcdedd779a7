#![allow(dead_code)]

//! Generators and brute-force oracles shared by the integration suites.
//! None of the oracles call into the search or coloring code under test.

use std::collections::{HashMap, HashSet, VecDeque};

use rand::Rng;
use synchro::{Automaton, Coloring, Digraph};

pub fn random_complete<R: Rng>(rng: &mut R, n: usize, d: usize) -> Automaton {
    let table = (0..n * d).map(|_| Some(rng.gen_range(0..n))).collect();
    Automaton::new(n, d, table).unwrap()
}

/// Each cell undefined with probability `hole`.
pub fn random_partial<R: Rng>(rng: &mut R, n: usize, d: usize, hole: f64) -> Automaton {
    let table = (0..n * d)
        .map(|_| (!rng.gen_bool(hole)).then(|| rng.gen_range(0..n)))
        .collect();
    Automaton::new(n, d, table).unwrap()
}

pub fn random_uniform<R: Rng>(rng: &mut R, n: usize, d: usize) -> Digraph {
    Digraph::new((0..n).map(|_| (0..d).map(|_| rng.gen_range(0..n)).collect()).collect()).unwrap()
}

pub fn strongly_connected(g: &Digraph) -> bool {
    let n = g.n();
    let forward = reach_from(n, 0, |v| g.out(v).to_vec());
    let mut back = vec![Vec::new(); n];
    for v in 0..n {
        for &w in g.out(v) {
            back[w].push(v);
        }
    }
    let backward = reach_from(n, 0, |v| back[v].clone());
    forward.iter().all(|&x| x) && backward.iter().all(|&x| x)
}

fn reach_from(n: usize, s: usize, next: impl Fn(usize) -> Vec<usize>) -> Vec<bool> {
    let mut seen = vec![false; n];
    seen[s] = true;
    let mut todo = vec![s];
    while let Some(v) = todo.pop() {
        for w in next(v) {
            if !seen[w] {
                seen[w] = true;
                todo.push(w);
            }
        }
    }
    seen
}

/// A single cycle through all vertices in random order.
pub fn random_hamiltonian_cycle<R: Rng>(rng: &mut R, n: usize) -> Digraph {
    let mut order: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        order.swap(i, rng.gen_range(0..=i));
    }
    let mut out = vec![Vec::new(); n];
    for i in 0..n {
        out[order[i]].push(order[(i + 1) % n]);
    }
    Digraph::new(out).unwrap()
}

/// Random strongly connected graph of uniform outdegree `d` (rejection
/// sampling; outdegree one is always a Hamiltonian cycle).
pub fn random_strongly_connected<R: Rng>(rng: &mut R, n: usize, d: usize) -> Digraph {
    if d == 1 {
        return random_hamiltonian_cycle(rng, n);
    }
    loop {
        let g = random_uniform(rng, n, d);
        if strongly_connected(&g) {
            return g;
        }
    }
}

/// Strongly connected graph whose edges go from level `i` to level `i + 1 mod p`,
/// so every cycle length is a multiple of `p`. Outdegree one gives an
/// `n`-cycle instead.
pub fn random_periodic<R: Rng>(rng: &mut R, n: usize, d: usize, p: usize) -> Digraph {
    assert!(p <= n);
    if d == 1 {
        return random_hamiltonian_cycle(rng, n);
    }
    loop {
        let mut level: Vec<usize> = (0..n).map(|v| if v < p { v } else { rng.gen_range(0..p) }).collect();
        for i in (1..n).rev() {
            level.swap(i, rng.gen_range(0..=i));
        }
        let by_level: Vec<Vec<usize>> = (0..p).map(|l| (0..n).filter(|&v| level[v] == l).collect()).collect();
        let out = (0..n)
            .map(|v| {
                let next = &by_level[(level[v] + 1) % p];
                (0..d).map(|_| next[rng.gen_range(0..next.len())]).collect()
            })
            .collect();
        let g = Digraph::new(out).unwrap();
        if strongly_connected(&g) {
            return g;
        }
    }
}

/// Period of a strongly connected graph: gcd of the lengths `L <= n` with a
/// closed walk of length `L`, from boolean matrix powers.
pub fn period_by_powers(g: &Digraph) -> usize {
    let n = g.n();
    let adj: Vec<Vec<bool>> = (0..n)
        .map(|u| (0..n).map(|v| g.out(u).contains(&v)).collect())
        .collect();
    let mut power = adj.clone();
    let mut acc = 0;
    for len in 1..=n {
        if (0..n).any(|i| power[i][i]) {
            acc = gcd(acc, len);
        }
        let mut next = vec![vec![false; n]; n];
        for i in 0..n {
            for k in 0..n {
                if power[i][k] {
                    for j in 0..n {
                        next[i][j] |= adj[k][j];
                    }
                }
            }
        }
        power = next;
    }
    acc
}

pub fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn step_mask(a: &Automaton, mask: u64, l: usize) -> u64 {
    let mut out = 0;
    for s in 0..a.n() {
        if mask >> s & 1 == 1 {
            if let Some(t) = a.target(s, l) {
                out |= 1 << t;
            }
        }
    }
    out
}

/// Length of a shortest synchronizing word by plain subset BFS over
/// bitmasks (states vanish on undefined cells). `None` if there is none.
pub fn shortest_reset_length(a: &Automaton) -> Option<usize> {
    let full: u64 = if a.n() == 64 { u64::MAX } else { (1 << a.n()) - 1 };
    let mut dist = HashMap::from([(full, 0usize)]);
    let mut queue = VecDeque::from([full]);
    while let Some(m) = queue.pop_front() {
        let k = dist[&m];
        if m.count_ones() == 1 {
            return Some(k);
        }
        for l in 0..a.d() {
            let next = step_mask(a, m, l);
            if next != 0 && !dist.contains_key(&next) {
                dist.insert(next, k + 1);
                queue.push_back(next);
            }
        }
    }
    None
}

/// Every reachable image with its BFS depth.
pub fn reachable_images(a: &Automaton) -> HashMap<u64, usize> {
    let full: u64 = (1 << a.n()) - 1;
    let mut dist = HashMap::from([(full, 0usize)]);
    let mut queue = VecDeque::from([full]);
    while let Some(m) = queue.pop_front() {
        let k = dist[&m];
        for l in 0..a.d() {
            let next = step_mask(a, m, l);
            if let std::collections::hash_map::Entry::Vacant(e) = dist.entry(next) {
                e.insert(k + 1);
                queue.push_back(next);
            }
        }
    }
    dist
}

pub fn min_image_size(a: &Automaton) -> usize {
    reachable_images(a).keys().map(|m| m.count_ones() as usize).min().unwrap()
}

/// Complete automaton: every pair of states can be merged (forward search).
pub fn synchronizing_by_pairs(a: &Automaton) -> bool {
    (0..a.n()).all(|p| (p + 1..a.n()).all(|q| pair_mergeable(a, p, q)))
}

pub fn pair_mergeable(a: &Automaton, p: usize, q: usize) -> bool {
    let mut seen = HashSet::from([(p, q)]);
    let mut todo = vec![(p, q)];
    while let Some((x, y)) = todo.pop() {
        if x == y {
            return true;
        }
        for l in 0..a.d() {
            let next = (a.target(x, l).unwrap(), a.target(y, l).unwrap());
            if seen.insert(next) {
                todo.push(next);
            }
        }
    }
    false
}

/// Stable by definition: every pair reachable from `(p, q)` stays mergeable.
pub fn pair_stable(a: &Automaton, p: usize, q: usize) -> bool {
    let mut seen = HashSet::from([(p, q)]);
    let mut todo = vec![(p, q)];
    while let Some((x, y)) = todo.pop() {
        if !pair_mergeable(a, x, y) {
            return false;
        }
        for l in 0..a.d() {
            let next = (a.target(x, l).unwrap(), a.target(y, l).unwrap());
            if seen.insert(next) {
                todo.push(next);
            }
        }
    }
    true
}

fn permutations(d: usize) -> Vec<Vec<usize>> {
    if d == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(d - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, d - 1);
            out.push(q);
        }
    }
    out
}

/// Tries all `(d!)^n` colorings of `g`; true if one is synchronizing.
pub fn some_coloring_synchronizes(g: &Digraph) -> bool {
    let n = g.n();
    let d = g.out(0).len();
    let perms = permutations(d);
    let mut choice = vec![0usize; n];
    loop {
        let letters = choice.iter().map(|&c| perms[c].clone()).collect();
        let a = g.apply_coloring(&Coloring::new(letters).unwrap()).unwrap();
        if synchronizing_by_pairs(&a) {
            return true;
        }
        let mut i = 0;
        while i < n {
            choice[i] += 1;
            if choice[i] < perms.len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
        if i == n {
            return false;
        }
    }
}

/// Sorted out-lists: the edge multiset independent of slot order.
pub fn edge_multiset(out: impl Fn(usize) -> Vec<usize>, n: usize) -> Vec<Vec<usize>> {
    (0..n)
        .map(|v| {
            let mut o = out(v);
            o.sort_unstable();
            o
        })
        .collect()
}

/// Underlying multigraph of a complete automaton, without going through
/// the library.
pub fn automaton_edges(a: &Automaton) -> Vec<Vec<usize>> {
    edge_multiset(|v| (0..a.d()).map(|l| a.target(v, l).unwrap()).collect(), a.n())
}

pub fn graph_edges(g: &Digraph) -> Vec<Vec<usize>> {
    edge_multiset(|v| g.out(v).to_vec(), g.n())
}

/// Independent fixed-point closure of the letter maps; returns every element.
pub fn closure(a: &Automaton) -> HashSet<Vec<Option<usize>>> {
    let gens: Vec<Vec<Option<usize>>> = (0..a.d())
        .map(|l| (0..a.n()).map(|s| a.target(s, l)).collect())
        .collect();
    let mut set: HashSet<Vec<Option<usize>>> = gens.iter().cloned().collect();
    loop {
        let mut added = Vec::new();
        for x in &set {
            for y in &set {
                let z: Vec<Option<usize>> = x.iter().map(|t| t.and_then(|t| y[t])).collect();
                if !set.contains(&z) {
                    added.push(z);
                }
            }
        }
        if added.is_empty() {
            return set;
        }
        set.extend(added);
    }
}
