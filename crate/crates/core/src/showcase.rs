//! A curated set of worked examples with known answers, each run as a check.

use num_bigint::BigInt;

use crate::arithmetic::{mangoldt_by_contiguity, mangoldt_by_convolution};
use crate::cospectral::{expand_pathsum, intersection_slide_check, same_nonzero_spectrum};
use crate::error::Result;
use crate::fixtures;
use crate::graph::{adjacency_trace_powers, char_poly};
use crate::hike::hike_from_primes;
use crate::incidence::{mobius_fn, rat, series_of};
use crate::iso::{digraphs_isomorphic, graphs_isomorphic};
use crate::poly::IntPoly;
use crate::primes::{enumerate_primes, Prime};
use crate::reconstruction::{reconstruct_traced, BacktrackOutcome, ReconstructionResult};
use crate::report::CheckReport;

/// Möbius series of the bidirected pentagram to length 10 against its closed
/// form, plus the prime count.
pub fn pentagram_mobius() -> Result<CheckReport> {
    let bound = 10;
    let mut report = CheckReport::new("pentagram Mobius series", bound);
    let cat = enumerate_primes(&fixtures::pentagram())?;
    report.record(cat.len() == 7, || {
        format!("{} primes, expected 7", cat.len())
    });
    let series = series_of(&mobius_fn, &cat, bound)?;
    let expected = fixtures::pentagram_mobius_terms(&cat);
    for (h, c) in series.iter() {
        let want = expected.iter().find(|(e, _)| e == h).map_or(0, |(_, v)| *v);
        report.record(*c == rat(want), || {
            format!("coefficient of {h} is {c}, expected {want}")
        });
    }
    report.record(series.support().count() == expected.len(), || {
        format!(
            "{} non-zero terms, expected {}",
            series.support().count(),
            expected.len()
        )
    });
    Ok(report)
}

/// On the lollipop, `Λ(p1 p2) = 3` and `Λ(p2 p1) = 2`, where `p1` is the
/// backtrack and `p2` the triangle, by convolution and by arc-word counting.
pub fn lollipop_mangoldt() -> Result<CheckReport> {
    let mut report = CheckReport::new("lollipop von Mangoldt values", 5);
    let cat = enumerate_primes(&fixtures::lollipop())?;
    let (p1, p2) = fixtures::lollipop_primes(&cat);
    for (word, want) in [([p1, p2], 3), ([p2, p1], 2)] {
        let h = hike_from_primes(&cat, &word)?;
        let by_conv = mangoldt_by_convolution(&cat, &h)?;
        let by_words = mangoldt_by_contiguity(&cat, &h)?;
        report.record(by_conv == want, || {
            format!("{h}: convolution gives {by_conv}, expected {want}")
        });
        report.record(by_words == want as u64, || {
            format!("{h}: contiguity gives {by_words}, expected {want}")
        });
    }
    Ok(report)
}

/// Reconstructs the bowtie from its dependence graph: classes of sizes
/// 2, 1, 4, 1, six backtracks, and the six-vertex root.
pub fn bowtie_reconstruction() -> Result<CheckReport> {
    let mut report = CheckReport::new("bowtie reconstruction", 0);
    let gamma = fixtures::bowtie_gamma();
    let trace = reconstruct_traced(&gamma);
    let mut sizes: Vec<usize> = trace.classes.iter().map(|c| c.members.len()).collect();
    report.note(format!("class sizes {sizes:?}"));
    sizes.sort_unstable();
    report.record(sizes == [1, 1, 2, 4], || {
        format!("class sizes {sizes:?}, expected 2, 1, 4, 1")
    });
    let count = match &trace.backtracks {
        BacktrackOutcome::Backtracks(b) => b.len(),
        BacktrackOutcome::AmbiguousK5 => 0,
    };
    report.record(count == 6, || format!("{count} backtracks, expected 6"));
    match &trace.result {
        ReconstructionResult::Unique(g) => {
            report.record(g.vertex_count() == 6, || {
                format!("root has {} vertices", g.vertex_count())
            });
            report.record(graphs_isomorphic(g, &fixtures::bowtie_root()), || {
                format!("root {g} is not the bowtie")
            });
        }
        other => report.fail(format!("reconstruction is {}", other.status())),
    }
    Ok(report)
}

/// The structure twins pass every condition of the pair check.
pub fn structure_twins() -> Result<CheckReport> {
    let (a, b) = fixtures::structure_twins();
    let mut report = intersection_slide_check(&a, &b)?;
    report.identity = "structure twins".into();
    Ok(report)
}

/// Expanding the loop-on-backtrack graph gives its four-vertex partner with
/// the same closed-walk counts; both have `det(I − zA) = 1 − z − z²`.
pub fn fibonacci_expansion() -> Result<CheckReport> {
    let (small, large) = fixtures::fibonacci_pair();
    let mut report = CheckReport::new("path-sum expansion of the loop on a backtrack", 4);
    let expanded = expand_pathsum(
        &small,
        &Prime::from_cycle(&small, &[1])?,
        &Prime::from_cycle(&small, &[0, 1])?,
        1,
    )?;
    report.record(expanded.vertex_count() == 4, || {
        format!("expansion has {} vertices", expanded.vertex_count())
    });
    report.record(digraphs_isomorphic(&expanded, &large), || {
        "expansion differs from the partner".into()
    });
    report.record(same_nonzero_spectrum(&small, &expanded), || {
        "closed-walk counts differ".into()
    });
    let (ts, te) = (
        adjacency_trace_powers(&small, 4)?,
        adjacency_trace_powers(&expanded, 4)?,
    );
    report.note(format!(
        "traces {}",
        ts.iter()
            .map(BigInt::to_string)
            .collect::<Vec<_>>()
            .join(" ")
    ));
    report.record(ts == te, || "trace sequences differ".into());
    let golden = IntPoly::from_i64(&[1, -1, -1]);
    for g in [&small, &expanded] {
        let p = char_poly(g);
        report.record(
            p.truncated(2) == golden && p.coeffs().iter().skip(3).all(|c| *c == BigInt::from(0)),
            || format!("det(I - zA) = {p}, expected 1 - z - z^2"),
        );
    }
    Ok(report)
}

/// Every worked example, in a fixed order.
pub fn run_all() -> Result<Vec<CheckReport>> {
    Ok(vec![
        pentagram_mobius()?,
        lollipop_mangoldt()?,
        bowtie_reconstruction()?,
        structure_twins()?,
        fibonacci_expansion()?,
    ])
}
