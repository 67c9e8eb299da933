//! Exhaustive reference solver for small games.
//!
//! * One coordinate: every pair of memoryless strategies is played out.
//!   Parity games are memoryless determined, so the Protagonist wins `v`
//!   iff one of her memoryless strategies beats every memoryless reply.
//! * Two coordinates: the Antagonist's objective (some coordinate odd) is
//!   a disjunction of parity conditions and admits memoryless strategies.
//!   For each of them the Protagonist is left alone in the graph and wins
//!   from `v` iff she can reach a stuck Antagonist vertex or a closed walk
//!   whose maxima are even in both coordinates.
//!
//! Neither branch shares code with the recursive solvers.

use super::{GameSolver, GeneralizedParityGame, Player, Solution};
use crate::error::{Error, Result};
use crate::graph;

pub const DEFAULT_BRUTE_FORCE_BOUND: usize = 8;

pub struct BruteForceSolver {
    pub bound: usize,
}

impl Default for BruteForceSolver {
    fn default() -> Self {
        BruteForceSolver {
            bound: DEFAULT_BRUTE_FORCE_BOUND,
        }
    }
}

impl GameSolver for BruteForceSolver {
    fn name(&self) -> &'static str {
        "brute-force"
    }

    fn supports(&self, dimension: usize) -> bool {
        dimension == 1 || dimension == 2
    }

    fn solve(&self, game: &GeneralizedParityGame) -> Result<Solution> {
        Ok(Solution {
            winner: brute_force_solve(game, self.bound)?,
            strategies: [None, None],
        })
    }
}

pub fn brute_force_solve(game: &GeneralizedParityGame, bound: usize) -> Result<Vec<Player>> {
    if game.len() > bound {
        return Err(Error::OracleBound {
            vertices: game.len(),
            bound,
        });
    }
    Ok(match game.dimension() {
        1 => single_coordinate(game),
        _ => two_coordinates(game),
    })
}

/// All memoryless strategies of `player`, as a successor (or `None` for
/// sinks and opponent vertices) per vertex.
fn profiles(game: &GeneralizedParityGame, player: Player) -> Vec<Vec<Option<usize>>> {
    let mut out = vec![vec![None; game.len()]];
    for v in 0..game.len() {
        if game.owner(v) != player || game.is_sink(v) {
            continue;
        }
        out = out
            .into_iter()
            .flat_map(|p| {
                game.successors(v).iter().map(move |&w| {
                    let mut q = p.clone();
                    q[v] = Some(w);
                    q
                })
            })
            .collect();
    }
    out
}

/// Winner of the unique play from `start` when every vertex has at most
/// one move.
fn play(game: &GeneralizedParityGame, next: &[Option<usize>], start: usize) -> Player {
    let mut seen = vec![usize::MAX; game.len()];
    let mut trace = Vec::new();
    let mut v = start;
    loop {
        if seen[v] != usize::MAX {
            let top = trace[seen[v]..]
                .iter()
                .map(|&u| game.priority(u, 0))
                .max()
                .unwrap();
            return Player::of_priority(top);
        }
        seen[v] = trace.len();
        trace.push(v);
        match next[v] {
            Some(w) => v = w,
            None => return game.owner(v).opponent(),
        }
    }
}

fn single_coordinate(game: &GeneralizedParityGame) -> Vec<Player> {
    let ps = profiles(game, Player::Protagonist);
    let as_ = profiles(game, Player::Antagonist);
    let n = game.len();
    let mut wins = vec![false; n];
    for p in &ps {
        let mut beats_all = vec![true; n];
        for a in &as_ {
            let next: Vec<Option<usize>> = (0..n).map(|v| p[v].or(a[v])).collect();
            for v in 0..n {
                if beats_all[v] && play(game, &next, v) == Player::Antagonist {
                    beats_all[v] = false;
                }
            }
        }
        for v in 0..n {
            wins[v] |= beats_all[v];
        }
    }
    wins.into_iter()
        .map(|w| if w { Player::Protagonist } else { Player::Antagonist })
        .collect()
}

fn two_coordinates(game: &GeneralizedParityGame) -> Vec<Player> {
    let n = game.len();
    let prios = game.coordinate_table();
    let mut wins = vec![true; n];
    for a in profiles(game, Player::Antagonist) {
        let succ: Vec<Vec<usize>> = (0..n)
            .map(|v| match game.owner(v) {
                Player::Protagonist => game.successors(v).to_vec(),
                Player::Antagonist => a[v].into_iter().collect(),
            })
            .collect();
        let mut target = graph::good_cycle_vertices(&succ, &prios, &vec![true; n]);
        for v in 0..n {
            if game.owner(v) == Player::Antagonist && game.is_sink(v) {
                target[v] = true;
            }
        }
        let reach = graph::can_reach(&succ, &target);
        for v in 0..n {
            wins[v] &= reach[v];
        }
    }
    wins.into_iter()
        .map(|w| if w { Player::Protagonist } else { Player::Antagonist })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn self_loops() {
        for (pri, want) in [(0, Player::Protagonist), (1, Player::Antagonist)] {
            let mut g = GeneralizedParityGame::new(1).unwrap();
            g.add_vertex(Player::Protagonist, &[pri]).unwrap();
            g.add_edge(0, 0).unwrap();
            assert_eq!(brute_force_solve(&g, 8).unwrap(), vec![want]);
        }
        for (pri, want) in [([0, 0], Player::Protagonist), ([0, 1], Player::Antagonist)] {
            let mut g = GeneralizedParityGame::new(2).unwrap();
            g.add_vertex(Player::Protagonist, &pri).unwrap();
            g.add_edge(0, 0).unwrap();
            assert_eq!(brute_force_solve(&g, 8).unwrap(), vec![want]);
        }
    }

    #[test]
    fn bound_is_enforced() {
        let mut g = GeneralizedParityGame::new(1).unwrap();
        for _ in 0..3 {
            g.add_vertex(Player::Protagonist, &[0]).unwrap();
        }
        assert!(matches!(
            brute_force_solve(&g, 2),
            Err(Error::OracleBound { vertices: 3, bound: 2 })
        ));
    }

    #[test]
    fn sinks_follow_owner_convention() {
        let mut g = GeneralizedParityGame::new(2).unwrap();
        g.add_vertex(Player::Protagonist, &[0, 0]).unwrap();
        g.add_vertex(Player::Antagonist, &[1, 1]).unwrap();
        g.add_vertex(Player::Protagonist, &[0, 0]).unwrap();
        g.add_edge(2, 1).unwrap();
        assert_eq!(
            brute_force_solve(&g, 8).unwrap(),
            vec![Player::Antagonist, Player::Protagonist, Player::Protagonist]
        );
    }
}
