//! Khovanov homology over Z/2 of a few small links, with the graded Euler
//! characteristic checked against the state sum.

use khcausal::invariants::{chain_euler, graded_euler, kh};
use khcausal::linkdiag::{braid_closure, model_link, parse_braid, parse_pd, ModelName};

fn main() -> khcausal::Result<()> {
    let mut cases = vec![
        ("unknot", model_link(ModelName::Unknot).planar()),
        ("hopf+", model_link(ModelName::HopfPositive).planar()),
        ("hopf-", model_link(ModelName::HopfNegative).planar()),
        ("P3", model_link(ModelName::P3).planar()),
        ("figure eight", parse_pd("X(4,2,5,1) X(8,6,1,5) X(6,3,7,4) X(2,7,3,8)")?),
    ];
    for (name, word, m) in [("trefoil", "1 1 1", 2), ("T(2,5)", "1 1 1 1 1", 2), ("borromean", "1 -2 1 -2 1 -2", 3)] {
        cases.push((name, braid_closure(&parse_braid(word, m)?).planarize()));
    }
    for (name, d) in cases {
        let g = kh(&d, 20)?;
        let euler = graded_euler(&g);
        assert_eq!(euler, chain_euler(&d, 20)?);
        println!("{name:<13} dim {:<3} {g}", g.total_dimension());
        println!("{:<13} χ = {euler}", "");
    }
    Ok(())
}
