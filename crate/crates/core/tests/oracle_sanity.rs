//! Pins the oracle itself against hand-checkable games before it is used to
//! cross-check the solver.

mod support;

use support::{oracle_pursuer_wins, oracle_pursuit_number};
use zp_core::{families, Graph, Rules};

#[test]
fn one_zombie_catches_on_k2_and_on_a_triangle() {
    let k2 = Graph::from_edges(2, &[(0, 1)]).unwrap();
    assert!(oracle_pursuer_wins(&k2, 1, &Rules::zombie()));
    assert_eq!(
        oracle_pursuit_number(&families::cycle(3).unwrap(), &Rules::zombie(), 3),
        Some(1)
    );
}

#[test]
fn one_zombie_loses_on_a_four_cycle() {
    // 16 non-capture positions per side; the survivor holds the antipode.
    let c4 = families::cycle(4).unwrap();
    assert!(!oracle_pursuer_wins(&c4, 1, &Rules::zombie()));
    assert!(oracle_pursuer_wins(&c4, 2, &Rules::zombie()));
}

#[test]
fn zombie_numbers_of_small_cycles() {
    for n in 4..=9 {
        let g = families::cycle(n).unwrap();
        assert_eq!(
            oracle_pursuit_number(&g, &Rules::zombie(), 4),
            Some(2),
            "C_{n}"
        );
    }
}

#[test]
fn one_cop_wins_on_a_path_but_not_on_a_four_cycle() {
    let p5 = families::path(5).unwrap();
    assert_eq!(oracle_pursuit_number(&p5, &Rules::cop(), 3), Some(1));
    let c4 = families::cycle(4).unwrap();
    assert_eq!(oracle_pursuit_number(&c4, &Rules::cop(), 3), Some(2));
}
