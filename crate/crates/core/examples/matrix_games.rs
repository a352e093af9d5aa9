//! Exact zero-sum games and linear programs over the rationals.

use extremal::ratlp::{game_value, solve_lp, GameMatrix, LinearProgram, Relation};
use extremal::rational::{int, to_pq};

fn show(v: &[extremal::Rational]) -> String {
    v.iter().map(to_pq).collect::<Vec<_>>().join(", ")
}

fn main() {
    // rock-paper-scissors with the row player paying
    let rps = GameMatrix::from_rows(vec![
        vec![int(0), int(1), int(-1)],
        vec![int(-1), int(0), int(1)],
        vec![int(1), int(-1), int(0)],
    ])
    .unwrap();
    let s = game_value(&rps);
    println!("rock-paper-scissors: value {}, rows [{}], cols [{}]", to_pq(&s.value), show(&s.row_strategy), show(&s.col_strategy));

    let skew = GameMatrix::from_rows(vec![vec![int(3), int(-1)], vec![int(-2), int(4)]]).unwrap();
    let s = game_value(&skew);
    println!("2x2 game: value {}, rows [{}], verified {}", to_pq(&s.value), show(&s.row_strategy), s.verify());

    let mut lp = LinearProgram::maximize(vec![int(3), int(2)]);
    lp.constrain(vec![int(1), int(1)], Relation::Le, int(4));
    lp.constrain(vec![int(1), int(3)], Relation::Le, int(6));
    lp.constrain(vec![int(1), int(0)], Relation::Le, int(3));
    let sol = solve_lp(&lp).unwrap();
    println!("max 3x + 2y: {} at [{}], duals [{}]", to_pq(&sol.value), show(&sol.x), show(&sol.duals));
}
