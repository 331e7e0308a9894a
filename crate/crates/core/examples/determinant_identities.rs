// Determinant, permanent, MacMahon and trace identities on one graph.
//
//     cargo run --example determinant_identities

use hike_forge::fixtures;
use hike_forge::graph::{char_poly, permanental_poly};
use hike_forge::identities::{
    check_det_mobius, check_labeled_determinant, check_macmahon, check_perm_liouville,
    check_trace_mangoldt,
};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let g = fixtures::lollipop();
    println!("det(I - zA) = {}", char_poly(&g));
    println!("perm(I + uA) = {}", permanental_poly(&g)?);
    let reports = [
        check_det_mobius(&g, 8)?,
        check_labeled_determinant(&g)?,
        check_perm_liouville(&g, 8)?,
        check_macmahon(&g, 4)?,
        check_trace_mangoldt(&g, 8)?,
    ];
    for r in &reports {
        println!("{r}");
    }
    assert!(reports.iter().all(|r| r.passed));
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
