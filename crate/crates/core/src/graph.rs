//! Structural analysis of digraphs: strongly connected components, sink
//! components, the gcd of cycle lengths and the AGW test.

use crate::automaton::Digraph;

/// Decomposition of a digraph into maximal strongly connected components.
///
/// Components are numbered canonically: by decreasing size, ties broken by
/// the smallest vertex they contain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SccPartition {
    component: Vec<usize>,
    members: Vec<Vec<usize>>,
    condensation: Vec<Vec<usize>>,
}

impl SccPartition {
    pub fn component_of(&self, v: usize) -> usize {
        self.component[v]
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Vertices of component `c`, ascending.
    pub fn members(&self, c: usize) -> &[usize] {
        &self.members[c]
    }

    pub fn components(&self) -> &[Vec<usize>] {
        &self.members
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.members.iter().map(Vec::len).collect()
    }

    /// Distinct successor components of `c` in the condensation, ascending.
    pub fn successors(&self, c: usize) -> &[usize] {
        &self.condensation[c]
    }
}

/// Tarjan's algorithm, iterative, linear in vertices plus edges.
pub fn scc(g: &Digraph) -> SccPartition {
    const UNVISITED: usize = usize::MAX;
    let n = g.n();
    let mut index = vec![UNVISITED; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut raw_comp = vec![UNVISITED; n];
    let mut raw_count = 0;
    let mut next_index = 0;
    // (vertex, next slot to scan)
    let mut call: Vec<(usize, usize)> = Vec::new();

    for root in 0..n {
        if index[root] != UNVISITED {
            continue;
        }
        call.push((root, 0));
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(top) = call.last_mut() {
            let v = top.0;
            if let Some(&w) = g.out(v).get(top.1) {
                top.1 += 1;
                if index[w] == UNVISITED {
                    index[w] = next_index;
                    low[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                loop {
                    let w = stack.pop().expect("tarjan stack");
                    on_stack[w] = false;
                    raw_comp[w] = raw_count;
                    if w == v {
                        break;
                    }
                }
                raw_count += 1;
            }
        }
    }

    let mut raw_members = vec![Vec::new(); raw_count];
    for v in 0..n {
        raw_members[raw_comp[v]].push(v);
    }
    let mut order: Vec<usize> = (0..raw_count).collect();
    order.sort_by_key(|&c| (std::cmp::Reverse(raw_members[c].len()), raw_members[c][0]));
    let mut rank = vec![0; raw_count];
    for (new, &old) in order.iter().enumerate() {
        rank[old] = new;
    }
    let component: Vec<usize> = raw_comp.iter().map(|&c| rank[c]).collect();
    let members: Vec<Vec<usize>> = order
        .iter()
        .map(|&c| std::mem::take(&mut raw_members[c]))
        .collect();

    let mut condensation = vec![Vec::new(); members.len()];
    for (u, v) in g.edges() {
        let (cu, cv) = (component[u], component[v]);
        if cu != cv {
            condensation[cu].push(cv);
        }
    }
    for succ in &mut condensation {
        succ.sort_unstable();
        succ.dedup();
    }

    SccPartition {
        component,
        members,
        condensation,
    }
}

pub fn is_strongly_connected(g: &Digraph) -> bool {
    g.n() > 0 && scc(g).len() == 1
}

/// Components reachable from every vertex.
///
/// In the acyclic condensation every vertex reaches some terminal component,
/// so a sink in this sense exists exactly when the terminal component is unique.
pub fn sink_components(p: &SccPartition) -> Vec<usize> {
    let terminal: Vec<usize> = (0..p.len())
        .filter(|&c| p.successors(c).is_empty())
        .collect();
    if terminal.len() == 1 {
        terminal
    } else {
        Vec::new()
    }
}

pub fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Gcd of the lengths of all cycles of `g`; 0 when `g` is acyclic.
///
/// Within each component, BFS levels from a root give every internal edge
/// `u -> v` a defect `level(u) + 1 - level(v)`; the gcd of these defects is the
/// gcd of the component's cycle lengths.
pub fn cycle_gcd(g: &Digraph) -> usize {
    let partition = scc(g);
    let mut level = vec![usize::MAX; g.n()];
    let mut result = 0;
    let mut queue = std::collections::VecDeque::new();
    for members in partition.components() {
        let root = members[0];
        let c = partition.component_of(root);
        level[root] = 0;
        queue.push_back(root);
        while let Some(u) = queue.pop_front() {
            for &v in g.out(u) {
                if partition.component_of(v) != c {
                    continue;
                }
                if level[v] == usize::MAX {
                    level[v] = level[u] + 1;
                    queue.push_back(v);
                }
                result = gcd(result, (level[u] + 1).abs_diff(level[v]));
            }
        }
    }
    result
}

/// Strongly connected, uniform outdegree at least one, and cycle gcd one.
pub fn is_agw(g: &Digraph) -> bool {
    matches!(g.uniform_outdegree(), Some(d) if d >= 1) && is_strongly_connected(g) && cycle_gcd(g) == 1
}
