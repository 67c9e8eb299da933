//! Zielonka's recursive algorithm for single-coordinate parity games.
//!
//! Dead ends are handled by solving an augmented arena: every sink gets an
//! edge to one of two fresh self-looping vertices that are won by the
//! sink owner's opponent. The augmented arena is total, so every subgame
//! produced by the recursion has a successor inside the subgame.

use super::{GameSolver, GeneralizedParityGame, Player, Solution, Strategy};
use crate::error::{Error, Result};

pub struct ZielonkaSolver;

impl GameSolver for ZielonkaSolver {
    fn name(&self) -> &'static str {
        "zielonka"
    }

    fn supports(&self, dimension: usize) -> bool {
        dimension == 1
    }

    fn solve(&self, game: &GeneralizedParityGame) -> Result<Solution> {
        solve_parity(game)
    }
}

pub fn solve_parity(game: &GeneralizedParityGame) -> Result<Solution> {
    if game.dimension() != 1 {
        return Err(Error::Dimension {
            expected: 1,
            found: game.dimension(),
        });
    }
    let n = game.len();
    // n: Protagonist-won loop (priority 0), n+1: Antagonist-won loop (priority 1)
    let mut owner: Vec<Player> = (0..n).map(|v| game.owner(v)).collect();
    let mut prio: Vec<u32> = (0..n).map(|v| game.priority(v, 0)).collect();
    let mut succ: Vec<Vec<usize>> = game.successor_lists().to_vec();
    for v in 0..n {
        if succ[v].is_empty() {
            succ[v].push(match owner[v] {
                Player::Protagonist => n + 1,
                Player::Antagonist => n,
            });
        }
    }
    owner.extend([Player::Protagonist, Player::Antagonist]);
    prio.extend([0, 1]);
    succ.extend([vec![n], vec![n + 1]]);

    let arena = Arena::new(owner, prio, succ);
    let mut sigma = vec![None; arena.len()];
    let won = arena.solve(&vec![true; arena.len()], &mut sigma);

    let winner: Vec<Player> = (0..n)
        .map(|v| if won[v] { Player::Protagonist } else { Player::Antagonist })
        .collect();
    let strategy = |player: Player| {
        Strategy::memoryless(
            player,
            (0..n)
                .filter(|&v| winner[v] == player && game.owner(v) == player && !game.is_sink(v))
                .map(|v| (v, sigma[v].expect("winning vertices carry a choice"))),
        )
    };
    Ok(Solution {
        strategies: [Some(strategy(Player::Protagonist)), Some(strategy(Player::Antagonist))],
        winner,
    })
}

pub(crate) struct Arena {
    owner: Vec<Player>,
    prio: Vec<u32>,
    succ: Vec<Vec<usize>>,
    pred: Vec<Vec<usize>>,
}

impl Arena {
    pub(crate) fn new(owner: Vec<Player>, prio: Vec<u32>, succ: Vec<Vec<usize>>) -> Self {
        let mut pred = vec![Vec::new(); owner.len()];
        for (v, ws) in succ.iter().enumerate() {
            for &w in ws {
                pred[w].push(v);
            }
        }
        Arena {
            owner,
            prio,
            succ,
            pred,
        }
    }

    fn len(&self) -> usize {
        self.owner.len()
    }

    /// Attractor of `target` for `player` inside `mask`. Newly attracted
    /// vertices of `player` get a strategy entry in `sigma` pointing to the
    /// lowest-index successor that was attracted earlier.
    fn attractor(&self, player: Player, target: &[bool], mask: &[bool], sigma: &mut [Option<usize>]) -> Vec<bool> {
        let n = self.len();
        let mut order = vec![usize::MAX; n];
        let mut queue = Vec::new();
        let mut count = 0;
        let mut left: Vec<usize> = vec![0; n];
        for v in 0..n {
            if mask[v] {
                left[v] = self.succ[v].iter().filter(|&&w| mask[w]).count();
                if target[v] {
                    order[v] = count;
                    count += 1;
                    queue.push(v);
                }
            }
        }
        let mut head = 0;
        while head < queue.len() {
            let w = queue[head];
            head += 1;
            for &v in &self.pred[w] {
                if !mask[v] || order[v] != usize::MAX {
                    continue;
                }
                let take = if self.owner[v] == player {
                    true
                } else {
                    left[v] -= 1;
                    left[v] == 0
                };
                if take {
                    order[v] = count;
                    count += 1;
                    queue.push(v);
                }
            }
        }
        for v in 0..n {
            if order[v] != usize::MAX && !target[v] && self.owner[v] == player {
                sigma[v] = self.succ[v]
                    .iter()
                    .copied()
                    .filter(|&w| mask[w] && order[w] < order[v])
                    .min();
            }
        }
        order.iter().map(|&o| o != usize::MAX).collect()
    }

    /// Returns the Protagonist's winning region within `mask` and fills
    /// `sigma` for the winner-owned vertices of both regions.
    pub(crate) fn solve(&self, mask: &[bool], sigma: &mut [Option<usize>]) -> Vec<bool> {
        let n = self.len();
        let Some(top) = (0..n).filter(|&v| mask[v]).map(|v| self.prio[v]).max() else {
            return vec![false; n];
        };
        let alpha = Player::of_priority(top);
        let beta = alpha.opponent();
        let tops: Vec<bool> = (0..n).map(|v| mask[v] && self.prio[v] == top).collect();
        let attr = self.attractor(alpha, &tops, mask, sigma);
        let rest: Vec<bool> = (0..n).map(|v| mask[v] && !attr[v]).collect();
        let won_p = self.solve(&rest, sigma);
        let beta_won: Vec<bool> = (0..n)
            .map(|v| rest[v] && (won_p[v] == (beta == Player::Protagonist)))
            .collect();

        if !beta_won.iter().any(|&b| b) {
            for v in 0..n {
                if tops[v] && self.owner[v] == alpha {
                    sigma[v] = self.succ[v].iter().copied().filter(|&w| mask[w]).min();
                }
            }
            return if alpha == Player::Protagonist {
                mask.to_vec()
            } else {
                vec![false; n]
            };
        }

        let battr = self.attractor(beta, &beta_won, mask, sigma);
        let remaining: Vec<bool> = (0..n).map(|v| mask[v] && !battr[v]).collect();
        let won_p2 = self.solve(&remaining, sigma);
        (0..n)
            .map(|v| {
                if remaining[v] {
                    won_p2[v]
                } else if mask[v] {
                    beta == Player::Protagonist
                } else {
                    false
                }
            })
            .collect()
    }
}
