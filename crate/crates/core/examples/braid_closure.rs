//! Closing braids in the annulus and reading off their planar diagrams.
//!
//!     cargo run --example braid_closure -- "1 -2 1" 3

use khcausal::linkdiag::{augment_with_meridian, braid_closure, parse_braid};

fn main() -> khcausal::Result<()> {
    let mut args = std::env::args().skip(1);
    let word = args.next().unwrap_or_else(|| "1 1 1".to_string());
    let strands = args.next().and_then(|s| s.parse().ok()).unwrap_or(2);

    let b = parse_braid(&word, strands)?;
    println!("braid        {b}");
    println!("permutation  {:?}", b.permutation());
    println!("cycles       {:?}", b.cycles());

    let closure = braid_closure(&b);
    println!("components   {}", closure.component_count());
    println!("windings     {:?}", closure.component_windings());

    let pd = closure.planarize();
    println!("pd           {}", pd.to_pd_text());
    println!("writhe       {}", pd.writhe());

    // the closure plus the axis of the solid torus
    let aug = augment_with_meridian(&closure);
    println!("augmented    {} ({} crossings)", aug.to_pd_text(), aug.crossing_count());
    Ok(())
}
