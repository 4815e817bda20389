//! Every graph construction in the toolkit: generators, coning, gluing,
//! extension moves and replacements, with the edge arithmetic each one obeys.

use rigikit::graphs::{
    banana, banana_chain, banana_closed, complete, complete_bipartite, cone,
    graphical_parallel_connection, graphical_two_sum, one_extension, v_replacement, x_replacement,
    zero_extension,
};

fn main() {
    let k4 = complete(4).unwrap();
    let k5 = complete(5).unwrap();
    println!("K_4: {}", k4.to_json());
    println!(
        "K_{{3,4}}: {} edges",
        complete_bipartite(3, 4).unwrap().edge_count()
    );

    // Coning adds one vertex joined to everything.
    assert_eq!(cone(&k4), k5);
    println!("cone(K_4) = K_5");

    // Gluing along an edge: the 2-sum drops the shared edge, the parallel
    // connection keeps it.
    let two_sum = graphical_two_sum(&k5, &k5, (0, 1), (0, 1)).unwrap();
    assert_eq!(two_sum, banana(3).unwrap());
    println!(
        "2-sum of two K_5 along an edge = double banana: {}",
        two_sum.to_json()
    );
    let parallel = graphical_parallel_connection(&k4, &k4, (0, 1), (0, 1)).unwrap();
    println!(
        "parallel connection of two K_4: {} vertices, {} edges",
        parallel.n(),
        parallel.edge_count()
    );

    // The banana family: two complete blocks over a shared clique, then chains.
    for d in 3..=5 {
        let b = banana(d).unwrap();
        println!(
            "banana(d={d}): {} vertices, {} edges",
            b.n(),
            b.edge_count()
        );
    }
    println!(
        "closed double banana: {} edges",
        banana_closed(3).unwrap().edge_count()
    );
    for copies in 2..=4 {
        let chain = banana_chain(3, copies).unwrap();
        println!(
            "chain of {copies} K_5 blocks: {} vertices, {} edges",
            chain.n(),
            chain.edge_count()
        );
    }

    // Extension moves: a 0-extension adds a degree-d vertex, a 1-extension
    // splits an edge with a degree-(d+1) vertex.
    let grown = zero_extension(&k4, &[0, 1, 2]).unwrap();
    println!(
        "0-extension of K_4 on three vertices: {} edges",
        grown.edge_count()
    );
    let split = one_extension(&k4, (0, 1), &[0, 1, 2]).unwrap();
    println!(
        "1-extension of K_4 over edge (0,1): {} edges on {} vertices",
        split.edge_count(),
        split.n()
    );

    // Replacements: two edges out, one vertex of degree d+2 in.
    let c6 = rigikit::Graph::new(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5)]).unwrap();
    let x = x_replacement(&c6, (0, 1), (3, 4), &[]).unwrap();
    println!(
        "X-replacement on the 6-cycle: new vertex degree {}",
        x.degree(6)
    );
    let v = v_replacement(&c6, (0, 1), (1, 2), &[3, 4]).unwrap();
    println!(
        "V-replacement on the 6-cycle: new vertex degree {}",
        v.degree(6)
    );
}
