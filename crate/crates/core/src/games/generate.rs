//! Game families for solver sweeps.

use rand::RngExt;
use rand_chacha::ChaCha8Rng;

use super::{GeneralizedParityGame, Player};

/// Every single-coordinate game with exactly `n` vertices and priorities
/// at most `max_priority`, in a fixed order (owners, then priorities, then
/// edge sets as bitmasks over ordered pairs).
pub fn exhaustive_games(n: usize, max_priority: u32) -> impl Iterator<Item = GeneralizedParityGame> {
    let owners = 1usize << n;
    let prios = (max_priority as usize + 1).pow(n as u32);
    let edges = 1usize << (n * n);
    (0..owners).flat_map(move |o| {
        (0..prios).flat_map(move |p| {
            (0..edges).map(move |e| {
                let mut g = GeneralizedParityGame::new(1).expect("dimension 1");
                let mut code = p;
                for v in 0..n {
                    let owner = if o & (1 << v) == 0 {
                        Player::Protagonist
                    } else {
                        Player::Antagonist
                    };
                    let pri = (code % (max_priority as usize + 1)) as u32;
                    code /= max_priority as usize + 1;
                    g.add_vertex(owner, &[pri]).expect("valid vertex");
                }
                for bit in 0..n * n {
                    if e & (1 << bit) != 0 {
                        g.add_edge(bit / n, bit % n).expect("valid edge");
                    }
                }
                g
            })
        })
    })
}

/// A random game with `n` vertices, `dimension` coordinates, priorities at
/// most `max_priority` and each ordered pair an edge with probability
/// `density`.
pub fn random_game(rng: &mut ChaCha8Rng, n: usize, dimension: usize, max_priority: u32, density: f64) -> GeneralizedParityGame {
    let mut g = GeneralizedParityGame::new(dimension).expect("dimension 1 or 2");
    for _ in 0..n {
        let owner = if rng.random_bool(0.5) {
            Player::Protagonist
        } else {
            Player::Antagonist
        };
        let prios: Vec<u32> = (0..dimension).map(|_| rng.random_range(0..=max_priority)).collect();
        g.add_vertex(owner, &prios).expect("valid vertex");
    }
    for v in 0..n {
        for w in 0..n {
            if rng.random_bool(density) {
                g.add_edge(v, w).expect("valid edge");
            }
        }
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exhaustive_count() {
        assert_eq!(exhaustive_games(1, 3).count(), 2 * 4 * 2);
        assert_eq!(exhaustive_games(2, 1).count(), 4 * 4 * 16);
    }
}
