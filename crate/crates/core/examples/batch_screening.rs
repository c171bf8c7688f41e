//! Screening a catalog of event pairs through the cached engine, as the
//! `causal --batch` command does.

use khcausal::cli::verify::random_event_pairs;
use khcausal::cli::{Engine, RouteChoice, RunConfig};

fn main() -> khcausal::Result<()> {
    let dir = std::env::temp_dir().join("khcausal-example-cache");
    let engine = Engine::new(RunConfig {
        cache_dir: Some(dir.clone()),
        ..RunConfig::default()
    });
    let mut related = 0;
    let pairs = random_event_pairs(3, 20, 0.1);
    for (x, y) in &pairs {
        let (r, v) = engine.decide_events(x, y, RouteChoice::Both)?;
        related += r as usize;
        println!("{x} ; {y} -> {} via {}", if r { "related" } else { "unrelated" }, v["route"].as_str().unwrap_or("?"));
    }
    println!("{related}/{} related; cache in {}", pairs.len(), dir.display());
    Ok(())
}
