//! Balancedness of k-fold circuits: the intersection of the closures of the
//! complementary circuits either reaches its rank bound or falls short.
//! `K_{6,7}` in dimension 4 is the classic short-fall: its intersection flat
//! is empty while the bound is 5, and the defect survives disjoint padding.

use rigikit::graphs::{complete, complete_bipartite, Graph};
use rigikit::matroid::balanced_report;
use rigikit::paperlab::fixture;
use rigikit::OracleParams;

fn describe(name: &str, g: &Graph, dim: usize) {
    let oracle = OracleParams::new(dim).oracle_for(g);
    let report = balanced_report(&oracle, g.edges()).unwrap();
    println!(
        "{name} (dim {dim}): k={} parts={} trivial={} intersection_rank={} bound={} balanced={}",
        report.k,
        report.part_count(),
        report.trivial,
        report.intersection_rank,
        report.bound,
        report.balanced,
    );
}

fn main() {
    // Balanced cases: a trivial double circuit and two glued ones.
    describe("two disjoint K_4", &fixture("fig1a"), 2);
    describe("K_4 pair sharing an edge", &fixture("fig1c"), 2);
    describe("K_4 with two low-degree flankers", &fixture("fig1d"), 2);

    // The unbalanced double circuit.
    let k67 = complete_bipartite(6, 7).unwrap();
    describe("K_{6,7}", &k67, 4);

    // Padding with disjoint circuits shifts k and the part count but never
    // repairs the defect.
    let k6 = complete(6).unwrap();
    let mut pairs: Vec<(usize, usize)> = k67.edges().iter().map(|e| (e.u(), e.v())).collect();
    pairs.extend(k6.edges().iter().map(|e| (e.u() + 13, e.v() + 13)));
    let padded = Graph::new(19, &pairs).unwrap();
    describe("K_{6,7} + disjoint K_6", &padded, 4);
}
