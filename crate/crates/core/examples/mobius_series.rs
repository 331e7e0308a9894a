// The Möbius series of the bidirected pentagram and its inverse.
//
//     cargo run --example mobius_series

use hike_forge::fixtures;
use hike_forge::graph::char_poly;
use hike_forge::incidence::{mobius_fn, one, series_invert, series_of};
use hike_forge::primes::enumerate_primes;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let g = fixtures::pentagram();
    let cat = enumerate_primes(&g)?;
    let letters = fixtures::pentagram_letters(&cat);
    for (c, id) in &letters {
        println!("{c} = {}", cat.prime(*id));
    }

    let mu = series_of(&mobius_fn, &cat, 10)?;
    println!("non-zero Möbius coefficients up to length 10:");
    for (h, c) in mu.support() {
        println!("  {c:>3}  {h}");
    }

    // summing by length gives det(I - zA)
    let by_length: Vec<String> = mu.by_length().iter().map(|c| c.to_string()).collect();
    println!("by length: [{}]", by_length.join(", "));
    println!("det(I - zA) = {}", char_poly(&g));

    let zeta = series_invert(&cat, &mu)?;
    println!(
        "1/mu equals the constant series 1: {}",
        zeta == series_of(&one, &cat, 10)?
    );
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
