//! Rank queries and the derived predicates on a few classic graphs, with the
//! exact rational backend and the combinatorial graphic backend cross-checking
//! the prime-field fast path.

use rigikit::graphs::{banana, complete, complete_bipartite, Graph};
use rigikit::rigidity::graphic_rank;
use rigikit::{Backend, OracleParams};

fn main() {
    let k5 = complete(5).unwrap();
    let k67 = complete_bipartite(6, 7).unwrap();
    let double_banana = banana(3).unwrap();
    let theta = Graph::new(5, &[(0, 2), (1, 2), (0, 3), (1, 3), (0, 4), (1, 4)]).unwrap();

    for (name, graph, dim) in [
        ("K_5", &k5, 3),
        ("K_{6,7}", &k67, 4),
        ("double banana", &double_banana, 3),
        ("theta", &theta, 1),
    ] {
        let field = OracleParams::new(dim).oracle_for(graph);
        let rational = OracleParams::new(dim)
            .backend(Backend::Rational)
            .oracle_for(graph);
        let rank = field.rank_graph(graph);
        assert_eq!(
            rank,
            rational.rank_graph(graph),
            "backends disagree on {name}"
        );
        println!(
            "{name}: n={} m={} dim={dim} rank={rank} independent={} rigid={} circuit={}",
            graph.n(),
            graph.edge_count(),
            field.is_independent(graph.edges()),
            field.is_rigid(graph.edges()),
            field.is_circuit(graph.edges()),
        );
    }

    // Dimension one is the cycle matroid: the field oracle agrees with the
    // purely combinatorial rank on every subset it is asked about.
    let oracle = OracleParams::new(1).oracle_for(&theta);
    assert_eq!(oracle.rank_graph(&theta), graphic_rank(theta.edges()));
    println!(
        "theta in dimension 1: rank {} = graphic rank {} (a double circuit: 6 edges)",
        oracle.rank_graph(&theta),
        graphic_rank(theta.edges()),
    );

    // Bridges: the two padding edges added to K_{6,7} are exactly the coloops.
    let padded = k67
        .add_edges(&[rigikit::Edge::new(6, 7), rigikit::Edge::new(8, 9)])
        .unwrap();
    let oracle = OracleParams::new(4).oracle_for(&padded);
    println!(
        "bridges of K_{{6,7}} + two chords: {:?}",
        oracle.bridges(padded.edges())
    );
}
