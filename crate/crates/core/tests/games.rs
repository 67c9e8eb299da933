use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use treeparity::games::generate::random_game;
use treeparity::games::{
    brute_force_solve, solve_conjunction, solve_parity, verify_strategy, GeneralizedParityGame, Player,
    SolverRegistry, Strategy as GameStrategy, DEFAULT_BRUTE_FORCE_BOUND,
};

fn game(dimension: usize) -> impl Strategy<Value = GeneralizedParityGame> {
    (any::<u64>(), 1usize..=6, 0.15f64..0.6).prop_map(move |(seed, n, density)| {
        random_game(&mut ChaCha8Rng::seed_from_u64(seed), n, dimension, 4, density)
    })
}

fn partition(g: &GeneralizedParityGame, winner: &[Player]) -> bool {
    let mut all: Vec<usize> = [Player::Protagonist, Player::Antagonist]
        .iter()
        .flat_map(|&p| (0..g.len()).filter(move |&v| winner[v] == p))
        .collect();
    all.sort_unstable();
    winner.len() == g.len() && all == (0..g.len()).collect::<Vec<_>>()
}

fn self_loop(owner: Player, prios: &[u32]) -> GeneralizedParityGame {
    let mut g = GeneralizedParityGame::new(prios.len()).unwrap();
    g.add_vertex(owner, prios).unwrap();
    g.add_edge(0, 0).unwrap();
    g
}

#[test]
fn self_loop_examples() {
    assert_eq!(solve_parity(&self_loop(Player::Protagonist, &[0])).unwrap().winner, [Player::Protagonist]);
    assert_eq!(solve_parity(&self_loop(Player::Protagonist, &[1])).unwrap().winner, [Player::Antagonist]);
    assert_eq!(solve_conjunction(&self_loop(Player::Antagonist, &[0, 0])).unwrap().winner, [Player::Protagonist]);
    assert_eq!(solve_conjunction(&self_loop(Player::Protagonist, &[0, 1])).unwrap().winner, [Player::Antagonist]);
}

#[test]
fn alternating_handoff() {
    let src = "vertex 0 owner P pri 0\nvertex 1 owner A pri 1\nvertex 2 owner P pri 2\nvertex 3 owner A pri 1\n\
               edge 0 1\nedge 1 2\nedge 1 0\nedge 2 3\nedge 3 0\nedge 3 3\n";
    let g: GeneralizedParityGame = src.parse().unwrap();
    let s = solve_parity(&g).unwrap();
    assert_eq!(s.winner, brute_force_solve(&g, DEFAULT_BRUTE_FORCE_BOUND).unwrap());
    for p in [Player::Protagonist, Player::Antagonist] {
        assert!(verify_strategy(&g, s.strategy(p).unwrap(), p, &s.region(p)));
    }
}

#[test]
fn corrupted_strategy_is_rejected() {
    // P at 0 may go to the even loop at 1 or the odd loop at 2.
    let g: GeneralizedParityGame =
        "vertex 0 owner P pri 0\nvertex 1 owner P pri 2\nvertex 2 owner P pri 1\nedge 0 1\nedge 0 2\nedge 1 1\nedge 2 2\n"
            .parse()
            .unwrap();
    let good = GameStrategy::memoryless(Player::Protagonist, [(0, 1), (1, 1)]);
    assert!(verify_strategy(&g, &good, Player::Protagonist, &[0, 1]));
    let bad = GameStrategy::memoryless(Player::Protagonist, [(0, 2), (1, 1), (2, 2)]);
    assert!(!verify_strategy(&g, &bad, Player::Protagonist, &[0, 1]));
    assert!(verify_strategy(&g, &bad, Player::Protagonist, &[]));
}

#[test]
fn registry_selects_solvers_by_name() {
    let r = SolverRegistry::default();
    assert_eq!(r.names(), ["zielonka", "iar", "brute-force"]);
    assert_eq!(r.for_dimension(1).unwrap().name(), "zielonka");
    assert_eq!(r.for_dimension(2).unwrap().name(), "iar");
    assert!(r.get("nope").is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn parity_solutions_are_sound(g in game(1)) {
        let s = solve_parity(&g).unwrap();
        prop_assert!(partition(&g, &s.winner));
        prop_assert_eq!(&s.winner, &brute_force_solve(&g, DEFAULT_BRUTE_FORCE_BOUND).unwrap());
        for p in [Player::Protagonist, Player::Antagonist] {
            prop_assert!(verify_strategy(&g, s.strategy(p).unwrap(), p, &s.region(p)));
        }
    }

    #[test]
    fn conjunction_solutions_are_sound(g in game(2)) {
        let s = solve_conjunction(&g).unwrap();
        prop_assert!(partition(&g, &s.winner));
        prop_assert_eq!(&s.winner, &brute_force_solve(&g, DEFAULT_BRUTE_FORCE_BOUND).unwrap());
        for p in [Player::Protagonist, Player::Antagonist] {
            prop_assert!(verify_strategy(&g, s.strategy(p).unwrap(), p, &s.region(p)));
        }
    }

    #[test]
    fn even_shifts_keep_regions(g in game(2), h in game(1), coord in 0usize..2) {
        let s = solve_conjunction(&g).unwrap().winner;
        prop_assert_eq!(solve_conjunction(&g.shifted(coord, 2)).unwrap().winner, s);
        let w = solve_parity(&h).unwrap().winner;
        prop_assert_eq!(solve_parity(&h.shifted(0, 2)).unwrap().winner, w);
    }
}
