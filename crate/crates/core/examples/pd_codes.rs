//! Parsing planar diagram codes, sign inference and round-tripping.

use khcausal::linkdiag::parse_pd;

fn main() {
    let inputs = [
        "O(1)",
        "X(1,1,2,2)",
        "X(1,3,2,4) X(3,1,4,2)",
        "X(1,5,2,4) X(3,1,4,6) X(5,3,6,2)",
        "X(4,2,5,1) X(8,6,1,5) X(6,3,7,4) X(2,7,3,8)",
        // malformed on purpose
        "X(1,3,2,4)",
        "X(1,2,3)",
    ];
    for text in inputs {
        match parse_pd(text) {
            Ok(d) => {
                let signs: Vec<i32> = d.crossings().iter().map(|c| c.sign.value()).collect();
                println!(
                    "{text:<45} components={} signs={signs:?} hash={}",
                    d.component_count(),
                    d.content_hash()
                );
                let back = parse_pd(&d.to_pd_text()).expect("serialized PD parses");
                assert_eq!(back, d);
            }
            Err(e) => println!("{text:<45} error: {e}"),
        }
    }
}
