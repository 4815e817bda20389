//! Matroid matching on the paired-star family over `K_{6,7}` in dimension 4:
//! exhaustive search pins the matching number at 19 while every single-group
//! certificate evaluates to at least 20, exhibiting the min-max gap.

use rigikit::matching::{dl_bound, k67_matching_instance, matching_number, MatchingCertificate};
use rigikit::OracleParams;

fn main() {
    let (graph, family, dim) = k67_matching_instance(2).unwrap();
    println!(
        "instance: K_{{6,7}} in dimension {dim}, {} edges, {} pairs",
        graph.edge_count(),
        family.len()
    );

    let oracle = OracleParams::new(dim).oracle_for(&graph);
    let (nu, witness) = matching_number(&oracle, &family).unwrap();
    println!("matching number nu = {nu}");
    println!("witness pairs: {witness:?}");
    let union = family.union_of(&witness);
    println!(
        "witness union rank = {} = 2 * {}",
        oracle.rank(&union),
        witness.len()
    );

    let single = MatchingCertificate::single_group(&family);
    let alpha = dl_bound(&oracle, &family, &single).unwrap();
    println!("single-group certificate value = {alpha} (> nu: the bound is not tight here)");

    let singletons = MatchingCertificate::singletons(&family);
    let alpha = dl_bound(&oracle, &family, &singletons).unwrap();
    println!("all-singletons certificate value = {alpha}");
}
