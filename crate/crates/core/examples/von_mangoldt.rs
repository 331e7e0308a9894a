// Arithmetic functions on hikes: von Mangoldt by convolution and by counting
// arc words, and Liouville.
//
//     cargo run --example von_mangoldt

use hike_forge::arithmetic::{
    liouville, mangoldt_by_contiguity, mangoldt_by_convolution, NamedFunction,
};
use hike_forge::fixtures;
use hike_forge::hike::{enumerate_hikes, hike_from_primes};
use hike_forge::incidence::{convolve, one};
use hike_forge::primes::enumerate_primes;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let cat = enumerate_primes(&fixtures::lollipop())?;
    let (p1, p2) = fixtures::lollipop_primes(&cat);
    for word in [[p1, p2], [p2, p1]] {
        let h = hike_from_primes(&cat, &word)?;
        println!(
            "Lambda({h}) = {} by convolution, {} by arc words; lambda = {}",
            mangoldt_by_convolution(&cat, &h)?,
            mangoldt_by_contiguity(&cat, &h)?,
            liouville(&h),
        );
    }

    // Lambda * 1 recovers the length on every hike
    let mut checked = 0;
    for h in enumerate_hikes(&cat, 7)? {
        let total = convolve(&NamedFunction::Mangoldt, &one, &cat, &h)?;
        assert_eq!(
            total,
            num_rational::BigRational::from_integer(h.length().into())
        );
        checked += 1;
    }
    println!("Lambda * 1 = length on {checked} hikes");
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
