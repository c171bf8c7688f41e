//! Annular Khovanov homology: the extra k grading counts labels on circles
//! that wind around the axis.

use khcausal::invariants::akh;
use khcausal::linkdiag::{braid_closure, parse_braid};

fn main() -> khcausal::Result<()> {
    for (word, m) in [("", 2), ("1 -1", 2), ("-1 -1", 2), ("1 1", 2), ("1", 2), ("", 1), ("1 2", 3)] {
        let d = braid_closure(&parse_braid(word, m)?);
        let g = akh(&d, 20)?;
        println!("[{word}]/{m}: {g}");
        println!("    ignoring k: {}", g.marginalize_k());
    }
    Ok(())
}
