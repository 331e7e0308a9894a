// Recover an undirected graph from the dependence graph of its primes.
//
//     cargo run --example reconstruct_graph

use hike_forge::fixtures;
use hike_forge::reconstruction::{
    dependence_graph, reconstruct, reconstruct_traced, reconstruct_with_lengths,
};
use hike_forge::ugraph::UGraph;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let root = fixtures::bowtie_root();
    let gamma = dependence_graph(&root.to_digraph())?;
    println!("bowtie {root}\ndependence graph {gamma}");
    let trace = reconstruct_traced(&gamma);
    for class in &trace.classes {
        println!(
            "  class {:?}, clique neighbourhood: {}",
            class.members, class.is_clique_nbhd
        );
    }
    println!("backtracks: {:?}", trace.backtracks);
    println!(
        "result: {}",
        serde_json::to_string(&trace.result.to_json_value())?
    );

    // K5 is the dependence graph of both the triangle and the 5-star
    println!("K5: {}", reconstruct(&UGraph::complete(5)).status());
    let with_lengths = reconstruct_with_lengths(&UGraph::complete(5), &[2, 2, 2, 3, 3]);
    println!(
        "K5 with lengths 2,2,2,3,3: {}",
        serde_json::to_string(&with_lengths.to_json_value())?
    );
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
