// Prime cycles of a small digraph and the hikes they generate.
//
//     cargo run --example primes_and_hikes

use hike_forge::fixtures;
use hike_forge::hike::{enumerate_hikes, hike_from_primes, left_divisors, multiply};
use hike_forge::primes::enumerate_primes;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let g = fixtures::lollipop();
    let cat = enumerate_primes(&g)?;
    println!("{} primes on {}", cat.len(), g.to_json());
    for id in cat.ids() {
        println!("  {id}: {} (length {})", cat.prime(id), cat.length(id));
    }

    let (backtrack, triangle) = fixtures::lollipop_primes(&cat);
    let x = hike_from_primes(&cat, &[backtrack, triangle])?;
    let y = hike_from_primes(&cat, &[triangle, backtrack])?;
    // the two primes share vertex 1, so their order matters
    println!("{x} != {y}: {}", x != y);
    println!("{x} * {y} = {}", multiply(&cat, &x, &y)?);

    for (d, q) in left_divisors(&cat, &x)? {
        println!("  {d} divides {x} with quotient {q}");
    }

    let hikes = enumerate_hikes(&cat, 8)?;
    let mut counts = [0usize; 9];
    for h in &hikes {
        counts[h.length()] += 1;
    }
    println!("hikes by length up to 8: {counts:?}");
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
