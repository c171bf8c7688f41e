//! Homology does not change under braid moves.

use khcausal::invariants::{akh, kh};
use khcausal::linkdiag::{braid_closure, parse_braid, BraidMove};

fn main() -> khcausal::Result<()> {
    let w = parse_braid("1 2 1", 3)?;
    let moves = [
        BraidMove::BraidRelation { at: 0 },
        BraidMove::InsertPair { at: 1, letter: -2 },
        BraidMove::Conjugate { letter: 2 },
    ];
    let base_kh = kh(&braid_closure(&w).planarize(), 20)?;
    let base_akh = akh(&braid_closure(&w), 20)?;
    let mut cur = w.clone();
    for mv in moves {
        cur = cur.apply_move(mv)?;
        let d = braid_closure(&cur);
        let same = kh(&d.planarize(), 20)? == base_kh && akh(&d, 20)? == base_akh;
        println!("{mv:?} -> [{}]: unchanged = {same}", cur.to_text());
    }
    Ok(())
}
