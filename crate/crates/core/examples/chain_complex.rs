//! Building the cube of resolutions directly and looking inside.

use khcausal::cube::{build_akh_complex, build_kh_complex, smooth, Resolution};
use khcausal::linkdiag::{braid_closure, model_link, parse_braid, ModelName};

fn main() -> khcausal::Result<()> {
    let hopf = model_link(ModelName::HopfPositive).planar();
    for r in ["00", "01", "10", "11"] {
        let s = smooth(&hopf, Resolution::parse(r).unwrap());
        println!("resolution {r}: {} circles", s.count);
    }
    let c = build_kh_complex(&hopf, 20)?;
    println!("generators per degree: {:?}", c.dims_by_degree());
    c.check_d_squared()?;
    print!("{}", c.dump());

    let d = braid_closure(&parse_braid("1 -1", 2)?);
    let a = build_akh_complex(&d, 20)?;
    a.check_d_squared()?;
    for (key, block) in &a.blocks {
        println!("j={} k={:?}: homology {:?}", key.j, key.k, block.homology()?);
    }
    Ok(())
}
