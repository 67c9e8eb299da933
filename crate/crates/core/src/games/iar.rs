//! Two-coordinate conjunction objectives via index appearance records.
//!
//! The Protagonist must satisfy parity in both coordinates. For one
//! coordinate, "the top priority seen infinitely often is even" holds iff
//! for every odd `o`: if `o` is seen infinitely often, so is some priority
//! above `o`. Each pair `(coordinate, odd o)` is therefore a Streett pair
//! whose *request* is `priority == o` and whose *grant* is `priority > o`.
//!
//! The record is a permutation of the `k` tracked pairs. Leaving a vertex
//! moves every granted pair to the back, keeping relative order. Pairs
//! granted only finitely often end up frozen at the front positions
//! `1..=m`, and the pair at position `m + 1` is granted infinitely often.
//! The vertex/record pair gets the priority
//!
//! * `2(k + 1 − g)` where `g` is the smallest position of a granted pair,
//! * `2(k − q) + 1` where `q` is the smallest position of a requested pair,
//!
//! whichever is larger (0 if neither exists). In the limit the even value
//! `2(k − m)` recurs, requests of frozen pairs score above it, and requests
//! at positions `> m` score below it, so the reduced play is even exactly
//! when no frozen pair is requested infinitely often. The reduced game is
//! solved by Zielonka and the winning vertices are read off at the
//! identity record (the objective is prefix independent, so the starting
//! record does not matter). Memory is bounded by `k!`.
//!
//! The Antagonist's objective is a disjunction of parity conditions, which
//! admits memoryless winning strategies. One is obtained by projecting the
//! reduced strategy at the identity record. If that projection does not
//! verify, edges are fixed one vertex at a time, keeping an edge only when
//! the Antagonist still wins her whole region.

use std::collections::HashMap;

use super::zielonka::Arena;
use super::{verify_strategy, GameSolver, GeneralizedParityGame, Memory, Player, Solution, Strategy};
use crate::error::{Error, Result};

#[derive(Default)]
pub struct IarSolver {
    /// Skip the memoryless Antagonist strategy (which may need repeated
    /// solving). Regions and the Protagonist strategy are unaffected.
    pub protagonist_only: bool,
}

impl GameSolver for IarSolver {
    fn name(&self) -> &'static str {
        "iar"
    }

    fn supports(&self, dimension: usize) -> bool {
        dimension == 2
    }

    fn solve(&self, game: &GeneralizedParityGame) -> Result<Solution> {
        if self.protagonist_only {
            let (winner, strategy) = solve_reduced(game)?;
            Ok(Solution {
                winner,
                strategies: [Some(strategy.protagonist), None],
            })
        } else {
            solve_conjunction(game)
        }
    }
}

pub fn solve_conjunction(game: &GeneralizedParityGame) -> Result<Solution> {
    let (winner, reduced) = solve_reduced(game)?;
    let region: Vec<usize> = (0..game.len()).filter(|&v| winner[v] == Player::Antagonist).collect();
    let antagonist = antagonist_strategy(game, &winner, &region, &reduced.antagonist_guess)?;
    Ok(Solution {
        winner,
        strategies: [Some(reduced.protagonist), Some(antagonist)],
    })
}

struct Reduced {
    protagonist: Strategy,
    /// Antagonist choice at the identity record, where defined.
    antagonist_guess: HashMap<usize, usize>,
}

/// The tracked Streett pairs: `(coordinate, odd priority)`.
fn tracked_pairs(game: &GeneralizedParityGame) -> Vec<(usize, u32)> {
    let mut pairs: Vec<(usize, u32)> = (0..game.dimension())
        .flat_map(|c| (0..game.len()).map(move |v| (c, game.priority(v, c))))
        .filter(|&(_, p)| p % 2 == 1)
        .collect();
    pairs.sort_unstable();
    pairs.dedup();
    pairs
}

/// Applies the record update for leaving `v`; returns the new record and
/// the priority of `(v, record)`.
fn step(game: &GeneralizedParityGame, pairs: &[(usize, u32)], record: &[u8], v: usize) -> (Vec<u8>, u32) {
    let k = pairs.len() as u32;
    let granted = |j: u8| {
        let (c, o) = pairs[j as usize];
        game.priority(v, c) > o
    };
    let requested = |j: u8| {
        let (c, o) = pairs[j as usize];
        game.priority(v, c) == o
    };
    let mut prio = 0;
    if let Some(g) = record.iter().position(|&j| granted(j)) {
        prio = prio.max(2 * (k - g as u32));
    }
    if let Some(q) = record.iter().position(|&j| requested(j)) {
        // positions are 1-based in the formulas above
        prio = prio.max(2 * (k - (q as u32 + 1)) + 1);
    }
    let mut next: Vec<u8> = record.iter().copied().filter(|&j| !granted(j)).collect();
    next.extend(record.iter().copied().filter(|&j| granted(j)));
    (next, prio)
}

fn solve_reduced(game: &GeneralizedParityGame) -> Result<(Vec<Player>, Reduced)> {
    if game.dimension() != 2 {
        return Err(Error::Dimension {
            expected: 2,
            found: game.dimension(),
        });
    }
    let pairs = tracked_pairs(game);
    if pairs.len() > u8::MAX as usize {
        return Err(Error::InvalidGame("too many odd priorities for index appearance records".into()));
    }
    let identity: Vec<u8> = (0..pairs.len() as u8).collect();

    let mut records: HashMap<Vec<u8>, usize> = HashMap::new();
    let mut record_list: Vec<Vec<u8>> = Vec::new();
    let mut intern = |r: Vec<u8>, list: &mut Vec<Vec<u8>>| -> usize {
        *records.entry(r.clone()).or_insert_with(|| {
            list.push(r);
            list.len() - 1
        })
    };
    let id_rec = intern(identity, &mut record_list);

    // reduced vertices (v, m), discovered breadth-first from every (v, id)
    let n = game.len();
    let mut index: HashMap<(usize, usize), usize> = HashMap::new();
    let mut verts: Vec<(usize, usize)> = Vec::new();
    for v in 0..n {
        index.insert((v, id_rec), v);
        verts.push((v, id_rec));
    }
    let mut owner = Vec::new();
    let mut prio = Vec::new();
    let mut succ: Vec<Vec<usize>> = Vec::new();
    let mut next_mem: HashMap<(usize, usize), usize> = HashMap::new();
    let mut i = 0;
    while i < verts.len() {
        let (v, m) = verts[i];
        i += 1;
        let (rec, p) = step(game, &pairs, &record_list[m], v);
        let m2 = intern(rec, &mut record_list);
        next_mem.insert((m, v), m2);
        owner.push(game.owner(v));
        prio.push(p);
        let mut out = Vec::with_capacity(game.successors(v).len());
        for &w in game.successors(v) {
            let id = *index.entry((w, m2)).or_insert_with(|| {
                verts.push((w, m2));
                verts.len() - 1
            });
            out.push(id);
        }
        succ.push(out);
    }

    // dead ends, as in the single-coordinate solver
    let total = verts.len();
    let (win_p, win_a) = (total, total + 1);
    for (x, out) in succ.iter_mut().enumerate() {
        if out.is_empty() {
            out.push(match owner[x] {
                Player::Protagonist => win_a,
                Player::Antagonist => win_p,
            });
        }
    }
    owner.extend([Player::Protagonist, Player::Antagonist]);
    prio.extend([0, 1]);
    succ.extend([vec![win_p], vec![win_a]]);

    let arena = Arena::new(owner, prio, succ.clone());
    let mut sigma = vec![None; total + 2];
    let won = arena.solve(&vec![true; total + 2], &mut sigma);

    let winner: Vec<Player> = (0..n)
        .map(|v| if won[v] { Player::Protagonist } else { Player::Antagonist })
        .collect();

    let mut choice = HashMap::new();
    let mut antagonist_guess = HashMap::new();
    for (x, &(v, m)) in verts.iter().enumerate() {
        if game.is_sink(v) {
            continue;
        }
        let Some(y) = sigma[x] else { continue };
        let w = verts[y].0;
        match game.owner(v) {
            Player::Protagonist if won[x] => {
                choice.insert((v, m), w);
            }
            Player::Antagonist if !won[x] && m == id_rec => {
                antagonist_guess.insert(v, w);
            }
            _ => {}
        }
    }
    let protagonist = Strategy {
        player: Player::Protagonist,
        memory: Memory::Table {
            size: record_list.len(),
            initial: id_rec,
            next: next_mem,
        },
        choice,
    };
    Ok((
        winner,
        Reduced {
            protagonist,
            antagonist_guess,
        },
    ))
}

fn antagonist_strategy(
    game: &GeneralizedParityGame,
    winner: &[Player],
    region: &[usize],
    guess: &HashMap<usize, usize>,
) -> Result<Strategy> {
    let owned: Vec<usize> = region
        .iter()
        .copied()
        .filter(|&v| game.owner(v) == Player::Antagonist && !game.is_sink(v))
        .collect();
    let candidate = Strategy::memoryless(
        Player::Antagonist,
        owned.iter().filter_map(|&v| guess.get(&v).map(|&w| (v, w))),
    );
    if verify_strategy(game, &candidate, Player::Antagonist, region) {
        return Ok(candidate);
    }

    let mut fixed = game.clone();
    let mut choice = Vec::new();
    for &v in &owned {
        let mut options: Vec<usize> = fixed.successors(v).to_vec();
        if let Some(&w) = guess.get(&v) {
            options.retain(|&x| x != w);
            options.insert(0, w);
        }
        let mut kept = None;
        for w in options {
            let trial = fixed.with_successors(v, vec![w]);
            let (trial_winner, _) = solve_reduced(&trial)?;
            if region.iter().all(|&u| trial_winner[u] == Player::Antagonist) {
                fixed = trial;
                kept = Some(w);
                break;
            }
        }
        let w = kept.ok_or_else(|| Error::Internal(format!("no memoryless Antagonist choice at vertex {v}")))?;
        choice.push((v, w));
    }
    let strategy = Strategy::memoryless(Player::Antagonist, choice);
    debug_assert!(winner.len() == game.len());
    Ok(strategy)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn self_loop(pri: [u32; 2]) -> GeneralizedParityGame {
        let mut g = GeneralizedParityGame::new(2).unwrap();
        g.add_vertex(Player::Protagonist, &pri).unwrap();
        g.add_edge(0, 0).unwrap();
        g
    }

    #[test]
    fn both_even_is_won() {
        let s = solve_conjunction(&self_loop([0, 0])).unwrap();
        assert_eq!(s.winner, vec![Player::Protagonist]);
    }

    #[test]
    fn one_odd_coordinate_loses() {
        let s = solve_conjunction(&self_loop([0, 1])).unwrap();
        assert_eq!(s.winner, vec![Player::Antagonist]);
    }

    #[test]
    fn protagonist_needs_memory_to_alternate() {
        // hub 0 (P) chooses between loops via 1 and via 2;
        // 0 -> 1 -> 0 has maxima (2,1), 0 -> 2 -> 0 has maxima (1,2).
        let mut g = GeneralizedParityGame::new(2).unwrap();
        g.add_vertex(Player::Protagonist, &[0, 0]).unwrap();
        g.add_vertex(Player::Antagonist, &[2, 1]).unwrap();
        g.add_vertex(Player::Antagonist, &[1, 2]).unwrap();
        for (a, b) in [(0, 1), (0, 2), (1, 0), (2, 0)] {
            g.add_edge(a, b).unwrap();
        }
        let s = solve_conjunction(&g).unwrap();
        assert_eq!(s.winner, vec![Player::Protagonist; 3]);
        let p = s.strategy(Player::Protagonist).unwrap();
        assert!(p.memory.size() > 1);
        assert!(verify_strategy(&g, p, Player::Protagonist, &s.region(Player::Protagonist)));
    }

    #[test]
    fn records_move_granted_pairs_back() {
        let mut g = GeneralizedParityGame::new(2).unwrap();
        g.add_vertex(Player::Protagonist, &[1, 3]).unwrap();
        g.add_vertex(Player::Protagonist, &[2, 0]).unwrap();
        let pairs = tracked_pairs(&g);
        assert_eq!(pairs, vec![(0, 1), (1, 3)]);
        // vertex 1 grants (0,1) only
        let (next, p) = step(&g, &pairs, &[0, 1], 1);
        assert_eq!(next, vec![1, 0]);
        assert_eq!(p, 4);
        // vertex 0 requests both, grants none
        let (next, p) = step(&g, &pairs, &[0, 1], 0);
        assert_eq!(next, vec![0, 1]);
        assert_eq!(p, 3);
    }
}
