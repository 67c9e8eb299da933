//! Cycle questions on finite graphs with prioritised vertices.
//!
//! Everything here rests on one observation. The priorities seen infinitely
//! often on an infinite path through a finite graph are those of a set of
//! vertices that is strongly connected. Conversely, every strongly connected
//! set is the vertex set of some closed walk, and repeating that walk visits
//! exactly those priorities infinitely often. So "some path has a bad limit"
//! reduces to "some strongly connected subgraph has a bad maximum".

use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};

/// Strongly connected components of the subgraph induced by `alive`. Only
/// components that contain a cycle are returned (size ≥ 2 or a self-loop).
pub fn cyclic_components(succ: &[Vec<usize>], alive: &[bool]) -> Vec<Vec<usize>> {
    let mut graph = DiGraph::<usize, ()>::new();
    let mut idx = vec![NodeIndex::end(); succ.len()];
    for v in 0..succ.len() {
        if alive[v] {
            idx[v] = graph.add_node(v);
        }
    }
    for v in 0..succ.len() {
        if !alive[v] {
            continue;
        }
        for &w in &succ[v] {
            if alive[w] {
                graph.add_edge(idx[v], idx[w], ());
            }
        }
    }
    tarjan_scc(&graph)
        .into_iter()
        .filter(|c| c.len() > 1 || graph.contains_edge(c[0], c[0]))
        .map(|c| {
            let mut vs: Vec<usize> = c.into_iter().map(|i| graph[i]).collect();
            vs.sort_unstable();
            vs
        })
        .collect()
}

/// Whether every cycle's maximum priority has the given parity (0 = even).
pub fn every_cycle_max_has_parity(succ: &[Vec<usize>], prio: &[u32], parity: u32) -> bool {
    let mut wrong: Vec<u32> = prio.iter().copied().filter(|p| p % 2 != parity).collect();
    wrong.sort_unstable();
    wrong.dedup();
    wrong.into_iter().all(|o| {
        let alive: Vec<bool> = prio.iter().map(|&p| p <= o).collect();
        cyclic_components(succ, &alive)
            .iter()
            .all(|c| c.iter().all(|&v| prio[v] != o))
    })
}

/// Vertices lying on a closed walk whose maximum is even in *every*
/// coordinate. `prios[c][v]` is the priority of `v` in coordinate `c`.
///
/// Strongly connected pieces are refined recursively: if a piece has an odd
/// maximum in some coordinate, no good walk inside it can touch a vertex
/// carrying that maximum, so those vertices are removed and the rest is
/// decomposed again.
pub fn good_cycle_vertices(succ: &[Vec<usize>], prios: &[Vec<u32>], alive: &[bool]) -> Vec<bool> {
    let mut good = vec![false; succ.len()];
    let mut stack = vec![alive.to_vec()];
    while let Some(mask) = stack.pop() {
        for comp in cyclic_components(succ, &mask) {
            let maxima: Vec<u32> = prios
                .iter()
                .map(|p| comp.iter().map(|&v| p[v]).max().unwrap())
                .collect();
            if maxima.iter().all(|m| m % 2 == 0) {
                for &v in &comp {
                    good[v] = true;
                }
                continue;
            }
            let mut sub = vec![false; succ.len()];
            for &v in &comp {
                sub[v] = prios
                    .iter()
                    .zip(&maxima)
                    .all(|(p, &m)| m % 2 == 0 || p[v] != m);
            }
            stack.push(sub);
        }
    }
    good
}

/// Vertices from which some vertex in `target` is reachable.
pub fn can_reach(succ: &[Vec<usize>], target: &[bool]) -> Vec<bool> {
    let n = succ.len();
    let mut pred = vec![Vec::new(); n];
    for (v, ws) in succ.iter().enumerate() {
        for &w in ws {
            pred[w].push(v);
        }
    }
    let mut seen = target.to_vec();
    let mut queue: Vec<usize> = (0..n).filter(|&v| target[v]).collect();
    while let Some(w) = queue.pop() {
        for &v in &pred[w] {
            if !seen[v] {
                seen[v] = true;
                queue.push(v);
            }
        }
    }
    seen
}
