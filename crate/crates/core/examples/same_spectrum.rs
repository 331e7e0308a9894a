// Non-isomorphic digraphs with equal non-zero spectrum.
//
//     cargo run --example same_spectrum

use hike_forge::cospectral::{expand_pathsum, intersection_slide_check, SpectralFingerprint};
use hike_forge::fixtures;
use hike_forge::primes::Prime;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let (a, b) = fixtures::structure_twins();
    let fp = SpectralFingerprint::of(&a)?;
    println!(
        "det(I - zA) = {}\nperm(I - zA) = {}",
        fp.char_poly, fp.perm_poly
    );
    let report = intersection_slide_check(&a, &b)?;
    println!("{report}");
    for note in &report.notes {
        println!("  {note}");
    }

    // a loop on a backtrack, expanded into a four-vertex graph
    let (small, _) = fixtures::fibonacci_pair();
    let kept = Prime::from_cycle(&small, &[1])?;
    let hanging = Prime::from_cycle(&small, &[0, 1])?;
    let large = expand_pathsum(&small, &kept, &hanging, 1)?;
    println!("{} -> {}", small.to_json(), large.to_json());
    println!("{}", intersection_slide_check(&small, &large)?);
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
