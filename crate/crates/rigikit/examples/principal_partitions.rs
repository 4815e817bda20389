//! Principal partitions of k-fold circuits: the pair rule in action on the
//! four committed double-circuit fixtures and a 3-fold circuit.

use rigikit::matroid::{kfold_detect, principal_partition, technicolour_vertices};
use rigikit::paperlab::fixture;
use rigikit::OracleParams;

fn main() {
    for name in ["fig1a", "fig1b", "fig1c", "fig1d", "fig7"] {
        let g = fixture(name);
        let oracle = OracleParams::new(2).oracle_for(&g);
        let (cyclic, k) = kfold_detect(&oracle, g.edges());
        assert!(cyclic);
        let partition = principal_partition(&oracle, g.edges()).unwrap();
        let tech = technicolour_vertices(&partition.parts);
        println!(
            "{name}: {k}-fold circuit, {} parts, technicolour vertices {:?}",
            partition.part_count(),
            tech
        );
        for (i, part) in partition.parts.iter().enumerate() {
            println!("  part {i}: {part:?}");
        }
    }
}
