// Primitive orbit counts and the Ihara factorization on the triangle.
//
//     cargo run --example zeta_and_orbits

use hike_forge::fixtures;
use hike_forge::identities::{
    backtrackless_orbit_counts, brute_force_orbits, check_ihara_factorization,
    check_lambert_resolvent, primitive_orbit_counts,
};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let g = fixtures::triangle();
    let all = primitive_orbit_counts(&g, 6)?;
    let walks = brute_force_orbits(&g, 6)?;
    let bl = backtrackless_orbit_counts(&g, 6)?;
    println!("len  all  (walks)  backtrackless");
    for k in 1..=6 {
        println!(
            "{k:>3}  {:>3}  {:>7}  {:>13}",
            all.get(k),
            walks.get(k),
            bl.get(k)
        );
    }
    println!("{}", check_ihara_factorization(&g, 8)?);
    println!("{}", check_lambert_resolvent(&g, 8)?);
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
