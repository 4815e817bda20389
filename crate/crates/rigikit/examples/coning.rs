//! Coning: the rank law `r_{d+1}(G*v) = r_d(G) + |V|`, the k-fold circuit
//! equivalence, how principal partitions transfer to the cone, and the
//! almost-cone test for minimal rigidity one dimension up.

use rigikit::graphs::{complete, cone, Edge};
use rigikit::matroid::{kfold_detect, principal_partition};
use rigikit::paperlab::fixture;
use rigikit::OracleParams;

fn main() {
    // The rank law on a few graphs.
    for (name, g, d) in [
        ("K_4", complete(4).unwrap(), 2),
        ("fig1c", fixture("fig1c"), 2),
        ("fig7", fixture("fig7"), 2),
    ] {
        let base = OracleParams::new(d).oracle_for(&g).rank_graph(&g);
        let coned = cone(&g);
        let lifted = OracleParams::new(d + 1)
            .oracle_for(&coned)
            .rank_graph(&coned);
        assert_eq!(lifted, base + g.n());
        println!(
            "{name}: r_{d} = {base}, r_{} of the cone = {lifted} = {base} + {}",
            d + 1,
            g.n()
        );
    }

    // Partition transfer: coning fig1c keeps its three parts (each grown by
    // the apex edges at monochromatic vertices) and splits the apex edges at
    // the two technicolour vertices into singleton parts.
    let g = fixture("fig1c");
    let coned = cone(&g);
    let base_parts = principal_partition(&OracleParams::new(2).oracle_for(&g), g.edges()).unwrap();
    let cone_parts =
        principal_partition(&OracleParams::new(3).oracle_for(&coned), coned.edges()).unwrap();
    println!(
        "fig1c: {} parts below, {} parts in the cone",
        base_parts.part_count(),
        cone_parts.part_count()
    );
    for part in &cone_parts.parts {
        println!("  cone part: {part:?}");
    }

    // Almost cone: delete one or two apex edges and test minimal rigidity one
    // dimension up. K_5 minus one apex edge passes; the 3-fold example needs
    // three deletions and fails.
    let k5 = complete(5).unwrap();
    let almost = cone(&k5).remove_edges(&[Edge::new(4, 5)]).unwrap();
    let oracle4 = OracleParams::new(4).oracle_for(&almost);
    println!(
        "K_6 minus one edge minimally rigid in dimension 4: {}",
        oracle4.is_minimally_rigid(almost.edges())
    );

    let fig7 = fixture("fig7");
    let trimmed = cone(&fig7)
        .remove_edges(&[Edge::new(2, 7), Edge::new(3, 7), Edge::new(4, 7)])
        .unwrap();
    let oracle3 = OracleParams::new(3).oracle_for(&trimmed);
    let detected = kfold_detect(&oracle3, trimmed.edges());
    println!(
        "fig7 cone minus three apex edges: rigid={} kfold={:?} (it is the double banana)",
        oracle3.is_rigid(trimmed.edges()),
        detected
    );
}
