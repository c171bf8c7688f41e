//! Deciding causal relation from homology, along both routes.

use khcausal::causality::{decide_akh, decide_kh, Method};
use khcausal::linkdiag::{braid_closure, parse_braid};
use khcausal::skies::{end_to_end, Event, Tolerances};

fn main() -> khcausal::Result<()> {
    for word in ["", "1 -1", "-1 -1", "1 1", "1 -1 1 -1"] {
        let d = braid_closure(&parse_braid(word, 2)?);
        let a = decide_akh(&d, 20)?;
        let k = decide_kh(&d, 20)?;
        println!("[{word}] akh: related={} kh: related={}", a.related, k.related);
    }

    let x = Event::new(0.0, 0.0, 0.0)?;
    for y in [Event::new(0.5, 0.0, 1.0)?, Event::new(3.0, 0.0, 1.0)?, Event::new(0.0, 1.0, 1.0)?] {
        let r = end_to_end(&x, &y, Method::Akh, Tolerances::default(), 20)?;
        println!("{x} ~ {y}: {} (metric {:?})", r.verdict.to_json(), r.oracle.class);
        assert!(r.agrees_with_oracle());
    }

    // a one-component closure is not a pair of skies
    let knot = braid_closure(&parse_braid("1", 2)?);
    println!("{}", decide_akh(&knot, 20).unwrap_err());
    Ok(())
}
