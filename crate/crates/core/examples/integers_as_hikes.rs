// On disjoint cycles, hikes behave like positive integers.
//
//     cargo run --example integers_as_hikes

use hike_forge::hike::enumerate_hikes;
use hike_forge::incidence::mobius;
use hike_forge::number_theory::{
    check_nt_isomorphism, disjoint_cycles_graph, mobius_n, nt_bound_for, NtCorrespondence,
};
use hike_forge::primes::enumerate_primes;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let g = disjoint_cycles_graph(&[1, 2, 3])?;
    let cat = enumerate_primes(&g)?;
    let map = NtCorrespondence::new(&cat);
    for (p, n) in map.prime_map() {
        println!("{} -> {n}", cat.prime(*p));
    }
    for h in enumerate_hikes(&cat, 4)? {
        let m = map.value(&h)?;
        println!("{h:<16} -> {m:>4}   mu = {:>2} = mu({m})", mobius(&h));
        assert_eq!(mobius(&h), mobius_n(m));
    }

    let bound = nt_bound_for(4, 200)?;
    println!("{}", check_nt_isomorphism(4, bound)?);
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
