//! Checking a strategy against the game it claims to win.
//!
//! The strategy (with its memory) is unfolded into the finite graph of
//! `(vertex, memory)` pairs reachable from the claimed region. The owner
//! follows the strategy and the opponent may take any edge. Every infinite
//! play then ends in a strongly connected part of that graph, so the
//! strategy wins iff no reachable stuck vertex belongs to the player and
//! every cycle has the player's parity (see [`crate::graph`]).

use std::collections::HashMap;

use super::{GeneralizedParityGame, Player, Strategy};
use crate::graph;

pub fn verify_strategy(game: &GeneralizedParityGame, strategy: &Strategy, player: Player, region: &[usize]) -> bool {
    if strategy.player != player {
        return false;
    }
    let mem = &strategy.memory;
    let mut index: HashMap<(usize, usize), usize> = HashMap::new();
    let mut nodes: Vec<(usize, usize)> = Vec::new();
    for &v in region {
        if v >= game.len() {
            return false;
        }
        let key = (v, mem.initial());
        if let std::collections::hash_map::Entry::Vacant(e) = index.entry(key) {
            e.insert(nodes.len());
            nodes.push(key);
        }
    }
    let mut succ: Vec<Vec<usize>> = Vec::new();
    let mut i = 0;
    while i < nodes.len() {
        let (v, m) = nodes[i];
        i += 1;
        let Some(m2) = mem.update(m, v) else {
            return false;
        };
        let moves: Vec<usize> = if game.owner(v) == player {
            if game.is_sink(v) {
                return false;
            }
            match strategy.choose(v, m) {
                Some(w) if game.successors(v).contains(&w) => vec![w],
                _ => return false,
            }
        } else {
            game.successors(v).to_vec()
        };
        let mut out = Vec::with_capacity(moves.len());
        for w in moves {
            let id = *index.entry((w, m2)).or_insert_with(|| {
                nodes.push((w, m2));
                nodes.len() - 1
            });
            out.push(id);
        }
        succ.push(out);
    }

    let prios: Vec<Vec<u32>> = (0..game.dimension())
        .map(|c| nodes.iter().map(|&(v, _)| game.priority(v, c)).collect())
        .collect();
    match player {
        Player::Protagonist => prios.iter().all(|p| graph::every_cycle_max_has_parity(&succ, p, 0)),
        Player::Antagonist => {
            let good = graph::good_cycle_vertices(&succ, &prios, &vec![true; nodes.len()]);
            !good.iter().any(|&g| g)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::games::solve_parity;

    fn two_loops() -> GeneralizedParityGame {
        // P at 0 may go to an even loop (1) or an odd loop (2)
        let mut g = GeneralizedParityGame::new(1).unwrap();
        g.add_vertex(Player::Protagonist, &[0]).unwrap();
        g.add_vertex(Player::Protagonist, &[2]).unwrap();
        g.add_vertex(Player::Protagonist, &[1]).unwrap();
        for (a, b) in [(0, 1), (0, 2), (1, 1), (2, 2)] {
            g.add_edge(a, b).unwrap();
        }
        g
    }

    #[test]
    fn solver_strategy_verifies() {
        let g = two_loops();
        let s = solve_parity(&g).unwrap();
        let region = s.region(Player::Protagonist);
        assert_eq!(region, vec![0, 1]);
        assert!(verify_strategy(&g, s.strategy(Player::Protagonist).unwrap(), Player::Protagonist, &region));
    }

    #[test]
    fn rerouted_into_odd_loop_fails() {
        let g = two_loops();
        let bad = Strategy::memoryless(Player::Protagonist, [(0, 2), (1, 1), (2, 2)]);
        assert!(!verify_strategy(&g, &bad, Player::Protagonist, &[0, 1]));
    }

    #[test]
    fn empty_region_is_vacuous() {
        let g = two_loops();
        let s = Strategy::memoryless(Player::Antagonist, []);
        assert!(verify_strategy(&g, &s, Player::Antagonist, &[]));
    }

    #[test]
    fn missing_choice_fails() {
        let g = two_loops();
        let s = Strategy::memoryless(Player::Protagonist, [(1, 1)]);
        assert!(!verify_strategy(&g, &s, Player::Protagonist, &[0, 1]));
    }
}
