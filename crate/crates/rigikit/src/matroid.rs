//! Rank-oracle-generic matroid algorithms: closure, bases, fundamental
//! circuits, cyclic cores, k-fold circuit detection, principal partitions,
//! technicolour vertices, balancedness, matroid components, and verification
//! of the 2-sum / parallel-connection composition laws.
//!
//! A k-fold circuit is a cyclic set `D` with `r(D) = |D| - k`. Its principal
//! partition puts `e, f` in the same part exactly when `r(D - e - f) =
//! r(D) - 1`; the complements of the parts are precisely the (k-1)-fold
//! circuits contained in `D`. Partitions here are computed by that pair rule
//! with a union-find skipping already-merged pairs, then validated post-hoc.

use crate::error::{Error, Result};
use crate::graphs::{complete_edges, span, two_sum_with_map, Edge, Graph, Vertex};
use crate::rigidity::{OracleParams, RankOracle};
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};

// ---------------------------------------------------------------------------
// Small union-find
// ---------------------------------------------------------------------------

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}

fn sorted_edges(edges: &[Edge]) -> Vec<Edge> {
    let mut out = edges.to_vec();
    out.sort_unstable();
    out.dedup();
    out
}

fn without(edges: &[Edge], skip: &[Edge]) -> Vec<Edge> {
    edges
        .iter()
        .copied()
        .filter(|e| !skip.contains(e))
        .collect()
}

// ---------------------------------------------------------------------------
// Closure, bases, cores
// ---------------------------------------------------------------------------

/// `cl(S)` within `ambient`: all ambient edges whose addition keeps the rank.
/// The ambient defaults to the complete graph on the oracle's vertex set
/// (restricted to the span of `S`, outside of which nothing closes).
pub fn closure(oracle: &RankOracle, s: &[Edge], ambient: Option<&[Edge]>) -> Vec<Edge> {
    let s = sorted_edges(s);
    let rank = oracle.rank(&s);
    let candidates: Vec<Edge> = match ambient {
        Some(a) => a.to_vec(),
        // An edge with an endpoint outside span(S) always increases the rank.
        None => complete_edges(&span(&s)),
    };
    let mut out = Vec::new();
    for e in candidates {
        if s.binary_search(&e).is_ok() {
            out.push(e);
            continue;
        }
        let mut with_e = s.clone();
        with_e.push(e);
        if oracle.rank(&with_e) == rank {
            out.push(e);
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// Greedy basis of `S` in canonical edge order.
pub fn find_basis(oracle: &RankOracle, s: &[Edge]) -> Vec<Edge> {
    let mut basis: Vec<Edge> = Vec::new();
    for e in sorted_edges(s) {
        basis.push(e);
        if oracle.rank(&basis) < basis.len() {
            basis.pop();
        }
    }
    basis
}

/// The unique circuit inside `B + e`, for `e` in the closure of the
/// independent set `B`: `{e} U {b in B : r(B - b + e) = |B|}`.
pub fn fundamental_circuit(oracle: &RankOracle, e: Edge, basis: &[Edge]) -> Result<Vec<Edge>> {
    let basis = sorted_edges(basis);
    debug_assert_eq!(oracle.rank(&basis), basis.len(), "basis is dependent");
    if basis.binary_search(&e).is_ok() {
        return Err(Error::Precondition(format!(
            "{e:?} is already in the basis"
        )));
    }
    let mut with_e = basis.clone();
    with_e.push(e);
    if oracle.rank(&with_e) == basis.len() + 1 {
        return Err(Error::Precondition(format!(
            "{e:?} is independent of the basis"
        )));
    }
    let mut circuit = vec![e];
    for i in 0..basis.len() {
        let mut swapped: Vec<Edge> = basis.clone();
        swapped.remove(i);
        swapped.push(e);
        if oracle.rank(&swapped) == basis.len() {
            circuit.push(basis[i]);
        }
    }
    circuit.sort_unstable();
    Ok(circuit)
}

/// Deletes bridges until none remain: the unique maximal cyclic subset of `S`.
pub fn cyclic_core(oracle: &RankOracle, s: &[Edge]) -> Vec<Edge> {
    let mut current = sorted_edges(s);
    loop {
        let bridges = oracle.bridges(&current);
        if bridges.is_empty() {
            return current;
        }
        current.retain(|e| !bridges.contains(e));
    }
}

/// Returns `(is_cyclic, |S| - r(S))`. Only the empty set is a 0-fold circuit.
pub fn kfold_detect(oracle: &RankOracle, s: &[Edge]) -> (bool, usize) {
    let s = sorted_edges(s);
    let cyclic = oracle.bridges(&s).is_empty();
    let k = s.len() - oracle.rank(&s);
    (cyclic, k)
}

// ---------------------------------------------------------------------------
// Principal partitions and balancedness
// ---------------------------------------------------------------------------

/// The principal partition of a k-fold circuit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrincipalPartition {
    pub k: usize,
    /// Disjoint, covering parts, each sorted, ordered by least edge.
    pub parts: Vec<Vec<Edge>>,
}

impl PrincipalPartition {
    /// The number of parts, written `l` in reports; always at least `k`.
    pub fn part_count(&self) -> usize {
        self.parts.len()
    }

    pub fn part_of(&self, e: Edge) -> Option<usize> {
        self.parts.iter().position(|p| p.binary_search(&e).is_ok())
    }

    /// The (k-1)-fold circuit complementary to part `i`.
    pub fn co_circuit(&self, ground: &[Edge], i: usize) -> Vec<Edge> {
        without(&sorted_edges(ground), &self.parts[i])
    }
}

fn normalize_parts(mut parts: Vec<Vec<Edge>>) -> Vec<Vec<Edge>> {
    for p in &mut parts {
        p.sort_unstable();
    }
    parts.retain(|p| !p.is_empty());
    parts.sort();
    parts
}

/// Principal partition of the k-fold circuit `D` by the pair rule
/// `r(D - e - f) = r(D) - 1`, with union-find short-circuiting; the result is
/// validated by checking every complement is a (k-1)-fold circuit.
pub fn principal_partition(oracle: &RankOracle, d: &[Edge]) -> Result<PrincipalPartition> {
    let edges = sorted_edges(d);
    let (cyclic, k) = kfold_detect(oracle, &edges);
    if !cyclic || k == 0 {
        return Err(Error::NotKFoldCircuit(if cyclic {
            "the set is independent".into()
        } else {
            "the set is not cyclic".into()
        }));
    }
    let full_rank = oracle.rank(&edges);
    let m = edges.len();
    let mut dsu = UnionFind::new(m);
    for j in 1..m {
        // One representative per class formed so far; transitivity of the
        // pair relation makes skipping merged pairs sound.
        let mut reps: Vec<usize> = Vec::new();
        let mut seen = BTreeSet::new();
        for i in 0..j {
            if seen.insert(dsu.find(i)) {
                reps.push(i);
            }
        }
        for r in reps {
            if dsu.find(j) == dsu.find(r) {
                continue;
            }
            let sub = without(&edges, &[edges[j], edges[r]]);
            if oracle.rank(&sub) + 1 == full_rank {
                dsu.union(j, r);
            }
        }
    }
    let mut by_root: BTreeMap<usize, Vec<Edge>> = BTreeMap::new();
    for (i, &e) in edges.iter().enumerate() {
        by_root.entry(dsu.find(i)).or_default().push(e);
    }
    let partition = PrincipalPartition {
        k,
        parts: normalize_parts(by_root.into_values().collect()),
    };
    if partition.part_count() < k {
        return Err(Error::Precondition(format!(
            "partition has {} parts for a {}-fold circuit",
            partition.part_count(),
            k
        )));
    }
    for i in 0..partition.part_count() {
        let co = partition.co_circuit(&edges, i);
        let (co_cyclic, co_k) = kfold_detect(oracle, &co);
        if !co_cyclic || co_k + 1 != k {
            return Err(Error::Precondition(format!(
                "complement of part {i} is not a {}-fold circuit",
                k - 1
            )));
        }
    }
    Ok(partition)
}

/// Vertex -> set of part indices its incident edges fall into.
pub fn vertex_part_incidence(parts: &[Vec<Edge>]) -> BTreeMap<Vertex, BTreeSet<usize>> {
    let mut map: BTreeMap<Vertex, BTreeSet<usize>> = BTreeMap::new();
    for (i, part) in parts.iter().enumerate() {
        for e in part {
            map.entry(e.u()).or_default().insert(i);
            map.entry(e.v()).or_default().insert(i);
        }
    }
    map
}

/// Vertices incident to edges of at least two parts.
pub fn technicolour_vertices(parts: &[Vec<Edge>]) -> Vec<Vertex> {
    vertex_part_incidence(parts)
        .into_iter()
        .filter_map(|(v, classes)| (classes.len() >= 2).then_some(v))
        .collect()
}

/// Vertices all of whose incident edges lie in a single part, with that part.
pub fn monochromatic_vertices(parts: &[Vec<Edge>]) -> BTreeMap<Vertex, usize> {
    vertex_part_incidence(parts)
        .into_iter()
        .filter_map(|(v, classes)| {
            (classes.len() == 1).then(|| (v, *classes.iter().next().unwrap()))
        })
        .collect()
}

/// Full k-fold circuit report: partition, technicolour set, triviality, and
/// the balancedness test `r(intersection of cl(D \ A_i)) = l - k`.
#[derive(Clone, Debug, Serialize)]
pub struct KFoldReport {
    pub k: usize,
    pub parts: Vec<Vec<Edge>>,
    pub technicolour: Vec<Vertex>,
    pub trivial: bool,
    pub balanced: bool,
    pub intersection_rank: usize,
    pub bound: usize,
    /// The intersection flat itself; not part of the wire format.
    #[serde(skip)]
    pub flat: Vec<Edge>,
}

impl KFoldReport {
    pub fn part_count(&self) -> usize {
        self.parts.len()
    }
}

/// The flat `F = intersection of cl(D \ A_i)`, computed incrementally: later
/// closures only need membership tests on the surviving candidates.
fn intersection_flat(oracle: &RankOracle, d: &[Edge], partition: &PrincipalPartition) -> Vec<Edge> {
    let mut flat: Option<Vec<Edge>> = None;
    for i in 0..partition.part_count() {
        let co = partition.co_circuit(d, i);
        match flat.take() {
            None => flat = Some(closure(oracle, &co, None)),
            Some(candidates) => {
                let co_rank = oracle.rank(&co);
                let mut kept = Vec::new();
                let co_sorted = sorted_edges(&co);
                for e in candidates {
                    if co_sorted.binary_search(&e).is_ok() {
                        kept.push(e);
                        continue;
                    }
                    let mut with_e = co_sorted.clone();
                    with_e.push(e);
                    if oracle.rank(&with_e) == co_rank {
                        kept.push(e);
                    }
                }
                flat = Some(kept);
            }
        }
        if flat.as_ref().is_some_and(Vec::is_empty) {
            break;
        }
    }
    flat.unwrap_or_default()
}

/// Computes the partition and the balancedness data for a k-fold circuit `D`.
pub fn balanced_report(oracle: &RankOracle, d: &[Edge]) -> Result<KFoldReport> {
    let edges = sorted_edges(d);
    let partition = principal_partition(oracle, &edges)?;
    let l = partition.part_count();
    let k = partition.k;
    let bound = l - k;
    let flat = intersection_flat(oracle, &edges, &partition);
    let intersection_rank = oracle.rank(&flat);
    Ok(KFoldReport {
        k,
        technicolour: technicolour_vertices(&partition.parts),
        trivial: l == k,
        balanced: intersection_rank == bound,
        intersection_rank,
        bound,
        parts: partition.parts,
        flat,
    })
}

// ---------------------------------------------------------------------------
// Components
// ---------------------------------------------------------------------------

/// Matroid components of the restriction to `S`: connected components of the
/// hypergraph of fundamental circuits over one greedy basis. Coloops end up
/// as singleton classes.
pub fn components(oracle: &RankOracle, s: &[Edge]) -> Vec<Vec<Edge>> {
    let edges = sorted_edges(s);
    let index: BTreeMap<Edge, usize> = edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let basis = find_basis(oracle, &edges);
    let mut dsu = UnionFind::new(edges.len());
    for &e in &edges {
        if basis.binary_search(&e).is_ok() {
            continue;
        }
        let circuit = fundamental_circuit(oracle, e, &basis).expect("chord closes a circuit");
        for pair in circuit.windows(2) {
            dsu.union(index[&pair[0]], index[&pair[1]]);
        }
    }
    let mut by_root: BTreeMap<usize, Vec<Edge>> = BTreeMap::new();
    for (i, &e) in edges.iter().enumerate() {
        by_root.entry(dsu.find(i)).or_default().push(e);
    }
    normalize_parts(by_root.into_values().collect())
}

// ---------------------------------------------------------------------------
// Composition laws: 2-sum and parallel connection
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CompositionOp {
    TwoSum,
    ParallelConnection,
}

/// Outcome of checking the fold arithmetic and partition merge rule of a
/// graphical 2-sum or parallel connection against direct computation.
#[derive(Clone, Debug, Serialize)]
pub struct CompositionReport {
    pub operation: CompositionOp,
    pub part1_kfold: (bool, usize),
    pub part2_kfold: (bool, usize),
    pub composite_kfold: (bool, usize),
    pub expected_k: Option<usize>,
    pub fold_law_holds: bool,
    pub partition_law_holds: bool,
    pub violations: Vec<String>,
    #[serde(skip)]
    pub composite: Graph,
    #[serde(skip)]
    pub expected_parts: Vec<Vec<Edge>>,
    #[serde(skip)]
    pub actual_parts: Vec<Vec<Edge>>,
}

fn map_edge(e: Edge, map: &[Vertex]) -> Edge {
    Edge::new(map[e.u()], map[e.v()])
}

fn check_not_coloop(oracle: &RankOracle, g: &Graph, e: Edge, which: &str) -> Result<()> {
    if oracle.bridges(g.edges()).contains(&e) {
        return Err(Error::ColoopEdge(format!(
            "edge {e:?} is a coloop of {which}; the composition laws do not apply"
        )));
    }
    Ok(())
}

fn verify_composition(
    params: &OracleParams,
    g1: &Graph,
    g2: &Graph,
    e1: (Vertex, Vertex),
    e2: (Vertex, Vertex),
    op: CompositionOp,
) -> Result<CompositionReport> {
    let shared = Edge::new(e1.0, e1.1);
    let oracle1 = params.oracle_for(g1);
    let oracle2 = params.oracle_for(g2);
    check_not_coloop(&oracle1, g1, shared, "the first graph")?;
    check_not_coloop(&oracle2, g2, Edge::new(e2.0, e2.1), "the second graph")?;

    let (glued, map) = two_sum_with_map(g1, g2, e1, e2)?;
    let composite = match op {
        CompositionOp::TwoSum => glued,
        CompositionOp::ParallelConnection => glued.add_edges(&[shared])?,
    };
    let oracle = params.oracle_for(&composite);

    let part1 = kfold_detect(&oracle1, g1.edges());
    let part2 = kfold_detect(&oracle2, g2.edges());
    let comp = kfold_detect(&oracle, composite.edges());

    let mut violations = Vec::new();
    let parts_are_circuits = part1.0 && part1.1 >= 1 && part2.0 && part2.1 >= 1;
    let expected_k = parts_are_circuits.then(|| match op {
        CompositionOp::TwoSum => part1.1 + part2.1 - 1,
        CompositionOp::ParallelConnection => part1.1 + part2.1,
    });

    let fold_law_holds = match expected_k {
        Some(k) => {
            if !(comp.0 && comp.1 == k) {
                violations.push(format!(
                    "expected a {k}-fold circuit, composite reports {comp:?}"
                ));
            }
            comp.0 && comp.1 == k
        }
        None => {
            // The law is an equivalence: if a side is not a k-fold circuit,
            // the composite must not be one either.
            if comp.0 && comp.1 >= 1 {
                violations.push("composite is a k-fold circuit but a side is not".into());
            }
            !(comp.0 && comp.1 >= 1)
        }
    };

    let mut expected_parts = Vec::new();
    let mut actual_parts = Vec::new();
    let mut partition_law_holds = true;
    if fold_law_holds && expected_k.is_some() {
        let p1 = principal_partition(&oracle1, g1.edges())?;
        let p2 = principal_partition(&oracle2, g2.edges())?;
        let mapped: Vec<Vec<Edge>> = p2
            .parts
            .iter()
            .map(|part| part.iter().map(|&e| map_edge(e, &map)).collect())
            .collect();
        let i1 = p1.part_of(shared).expect("shared edge lies in a part");
        let i2 = mapped
            .iter()
            .position(|p: &Vec<Edge>| p.contains(&shared))
            .expect("mapped shared edge lies in a part");
        let mut merged: Vec<Vec<Edge>> = Vec::new();
        for (i, part) in p1.parts.iter().enumerate() {
            if i != i1 {
                merged.push(part.clone());
            }
        }
        for (i, part) in mapped.iter().enumerate() {
            if i != i2 {
                merged.push(part.clone());
            }
        }
        match op {
            CompositionOp::TwoSum => {
                let mut joint: Vec<Edge> = p1.parts[i1]
                    .iter()
                    .chain(mapped[i2].iter())
                    .copied()
                    .filter(|&e| e != shared)
                    .collect();
                joint.sort_unstable();
                joint.dedup();
                merged.push(joint);
            }
            CompositionOp::ParallelConnection => {
                merged.push(without(&p1.parts[i1], &[shared]));
                merged.push(without(&mapped[i2], &[shared]));
                merged.push(vec![shared]);
            }
        }
        expected_parts = normalize_parts(merged);
        actual_parts = principal_partition(&oracle, composite.edges())?.parts;
        if expected_parts != actual_parts {
            partition_law_holds = false;
            violations.push(format!(
                "partition merge rule violated: expected {expected_parts:?}, got {actual_parts:?}"
            ));
        }
    }

    Ok(CompositionReport {
        operation: op,
        part1_kfold: part1,
        part2_kfold: part2,
        composite_kfold: comp,
        expected_k,
        fold_law_holds,
        partition_law_holds,
        violations,
        composite,
        expected_parts,
        actual_parts,
    })
}

/// Checks `k = k1 + k2 - 1` and the partition merge rule for a graphical
/// 2-sum. Errors if the gluing edge is a coloop on either side.
pub fn verify_twosum_law(
    params: &OracleParams,
    g1: &Graph,
    g2: &Graph,
    e1: (Vertex, Vertex),
    e2: (Vertex, Vertex),
) -> Result<CompositionReport> {
    verify_composition(params, g1, g2, e1, e2, CompositionOp::TwoSum)
}

/// Checks `k = k1 + k2` and the partition merge rule for a graphical parallel
/// connection. Errors if the gluing edge is a coloop on either side.
pub fn verify_parallel_law(
    params: &OracleParams,
    g1: &Graph,
    g2: &Graph,
    e1: (Vertex, Vertex),
    e2: (Vertex, Vertex),
) -> Result<CompositionReport> {
    verify_composition(params, g1, g2, e1, e2, CompositionOp::ParallelConnection)
}

// ---------------------------------------------------------------------------
// Brute-force enumeration (test oracles)
// ---------------------------------------------------------------------------

const ENUMERATION_GUARD: usize = 22;

/// All circuits contained in `S`, by depth-first search over independent sets
/// in canonical order. Guarded to `|S| <= 22`.
pub fn enumerate_circuits(oracle: &RankOracle, s: &[Edge]) -> Result<Vec<Vec<Edge>>> {
    let edges = sorted_edges(s);
    if edges.len() > ENUMERATION_GUARD {
        return Err(Error::SizeGuard(format!(
            "circuit enumeration capped at {ENUMERATION_GUARD} edges, got {}",
            edges.len()
        )));
    }
    let mut found: BTreeSet<Vec<Edge>> = BTreeSet::new();
    let mut stack: Vec<Edge> = Vec::new();
    dfs_circuits(oracle, &edges, 0, &mut stack, &mut found);
    Ok(found.into_iter().collect())
}

fn dfs_circuits(
    oracle: &RankOracle,
    edges: &[Edge],
    start: usize,
    independent: &mut Vec<Edge>,
    found: &mut BTreeSet<Vec<Edge>>,
) {
    for i in start..edges.len() {
        let e = edges[i];
        independent.push(e);
        if oracle.rank(independent) == independent.len() {
            dfs_circuits(oracle, edges, i + 1, independent, found);
        } else {
            // `independent` minus `e` is independent, so it meets exactly one
            // circuit, whose largest element is `e`.
            independent.pop();
            let known = found.iter().any(|c| {
                c.last() == Some(&e) && c[..c.len() - 1].iter().all(|x| independent.contains(x))
            });
            if !known {
                let circuit = fundamental_circuit(oracle, e, independent)
                    .expect("dependent extension closes a circuit");
                found.insert(circuit);
            }
            continue;
        }
        independent.pop();
    }
}

/// All `fold`-fold circuits contained in `S`, by exhaustive subset scan.
/// Exponential; intended as the small-scale verifier for partitions.
pub fn brute_force_kfold_circuits(
    oracle: &RankOracle,
    s: &[Edge],
    fold: usize,
) -> Result<Vec<Vec<Edge>>> {
    let edges = sorted_edges(s);
    if edges.len() > ENUMERATION_GUARD {
        return Err(Error::SizeGuard(format!(
            "subset scan capped at {ENUMERATION_GUARD} edges, got {}",
            edges.len()
        )));
    }
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << edges.len()) {
        if (mask.count_ones() as usize) < fold {
            continue;
        }
        let subset: Vec<Edge> = edges
            .iter()
            .enumerate()
            .filter_map(|(i, &e)| (mask >> i & 1 == 1).then_some(e))
            .collect();
        if subset.len() - oracle.rank(&subset) != fold {
            continue;
        }
        if oracle.bridges(&subset).is_empty() {
            out.push(subset);
        }
    }
    Ok(out)
}
