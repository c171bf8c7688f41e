//! Skies of Minkowski events, the braid they trace, and the metric verdict.
//!
//!     cargo run --example minkowski_skies -- "0,0,0;0.5,0,1"

use khcausal::skies::{classify_metric, parse_event_pair, sky, skies_to_braid, SkyBraid, Tolerances};

fn main() -> khcausal::Result<()> {
    let pairs: Vec<String> = match std::env::args().nth(1) {
        Some(p) => vec![p],
        None => ["0,0,0;0.5,0,1", "0,0,0;3,0,1", "0,0,0;1,0,1", "1,2,0;1.3,2.1,-2", "0,0,0;0,0.2,0"]
            .map(String::from)
            .to_vec(),
    };
    for text in pairs {
        let (x, y) = parse_event_pair(&text)?;
        let oracle = classify_metric(&x, &y, Tolerances::default().epsilon)?;
        let s = sky(&x);
        println!("{text}");
        println!("  sky of x at θ=0: {:?}, radius {}", s.at(0.0), s.radius());
        println!("  metric: {:?} (margin {:.3})", oracle.class, oracle.margin);
        match skies_to_braid(&x, &y, [1.0, 0.0], Tolerances::default())? {
            SkyBraid::Braid { word, thetas, .. } => println!("  braid [{}] at θ = {thetas:?}", word.to_text()),
            SkyBraid::IntersectionDetected { theta } => println!("  skies meet at θ = {theta:.4}"),
        }
    }
    Ok(())
}
