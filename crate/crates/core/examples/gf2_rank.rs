//! Ranks and homology over the two-element field.

use khcausal::gf2::{homology_dims, SparseBitMatrix, Storage};

fn main() -> khcausal::Result<()> {
    // boundary of a filled triangle: edges -> vertices, face -> edges
    let d1 = SparseBitMatrix::from_entries(3, 3, &[(0, 0), (1, 0), (1, 1), (2, 1), (0, 2), (2, 2)]);
    let d2 = SparseBitMatrix::from_entries(3, 1, &[(0, 0), (1, 0), (2, 0)]);
    println!("rank d1 = {}, rank d2 = {}", d1.rank(), d2.rank());
    println!("H1 = {}", homology_dims(&d2, &d1)?);

    let hollow = SparseBitMatrix::zeros(3, 0);
    println!("H1 of the hollow triangle = {}", homology_dims(&hollow, &d1)?);

    // a broken pair is refused
    let bad = SparseBitMatrix::from_entries(3, 1, &[(0, 0)]);
    println!("broken pair: {}", homology_dims(&bad, &d1).unwrap_err());

    let dense = d1.with_storage(Storage::Dense);
    assert_eq!(dense.rank(), d1.rank());
    Ok(())
}
