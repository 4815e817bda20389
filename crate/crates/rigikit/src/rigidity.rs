//! Rigidity matrices at pseudo-generic configurations and the memoized rank
//! oracle `r_d` on edge subsets, together with the combinatorial graphic-matroid
//! rank (the `d = 1` case) and the derived predicates: independent, rigid,
//! circuit, minimally rigid, bridges.
//!
//! One oracle owns one configuration per trial and reuses it for every query,
//! so closure and partition computations all see a single matroid. The oracle
//! is defined over the complete graph on `n` vertices; any edge subset of
//! `K_n` may be queried, which is what closure computations need.

use crate::error::{Error, Result};
use crate::ffield::{field_rank, rational_rank, FieldMatrix, FieldScalar, RationalMatrix, MODULUS};
use crate::graphs::{span, Edge, Graph, Vertex};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::sync::RwLock;

/// Default seed for all randomized configurations; `--seed` overrides.
pub const DEFAULT_SEED: u64 = 0x5249_4749;

/// Integer configurations for the rational backend draw coordinates from
/// `[1, 2^20]`, keeping fraction-free elimination fast.
const INTEGER_COORD_MAX: u64 = 1 << 20;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    /// Randomized-generic rank over `F_p`, `p = 2^61 - 1`. The fast path.
    #[default]
    Field,
    /// Exact rank over the rationals at a small random integer configuration.
    Rational,
    /// The cycle matroid, computed combinatorially. Ignores the dimension.
    Graphic,
}

impl Backend {
    pub fn name(self) -> &'static str {
        match self {
            Backend::Field => "field",
            Backend::Rational => "rational",
            Backend::Graphic => "graphic",
        }
    }
}

impl std::str::FromStr for Backend {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "field" => Ok(Backend::Field),
            "rational" => Ok(Backend::Rational),
            "graphic" => Ok(Backend::Graphic),
            other => Err(Error::Precondition(format!("unknown backend {other:?}"))),
        }
    }
}

/// A fixed pseudo-generic placement of `n` vertices in `d` coordinates.
/// Immutable after creation; every rank query in a session reuses it.
#[derive(Clone, Debug)]
pub struct GenericConfiguration {
    dim: usize,
    seed: u64,
    prime: u64,
    coords: Vec<Vec<u64>>,
}

fn coord_rng(n: usize, dim: usize, seed: u64, trial: usize, integer: bool) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // Independent stream per (n, d, trial, backend flavor).
    let stream = ((n as u64) << 20) ^ ((dim as u64) << 12) ^ ((trial as u64) << 1) ^ integer as u64;
    rng.set_stream(stream);
    rng
}

impl GenericConfiguration {
    /// Coordinates uniform in `[1, p - 1]`, for the field backend.
    pub fn field(n: usize, dim: usize, seed: u64, trial: usize) -> Self {
        let mut rng = coord_rng(n, dim, seed, trial, false);
        let coords = (0..n)
            .map(|_| (0..dim).map(|_| rng.gen_range(1..MODULUS)).collect())
            .collect();
        GenericConfiguration {
            dim,
            seed,
            prime: MODULUS,
            coords,
        }
    }

    /// Small integer coordinates in `[1, 2^20]`, for the rational backend.
    pub fn integer(n: usize, dim: usize, seed: u64, trial: usize) -> Self {
        let mut rng = coord_rng(n, dim, seed, trial, true);
        let coords = (0..n)
            .map(|_| {
                (0..dim)
                    .map(|_| rng.gen_range(1..=INTEGER_COORD_MAX))
                    .collect()
            })
            .collect();
        GenericConfiguration {
            dim,
            seed,
            prime: MODULUS,
            coords,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn vertex_count(&self) -> usize {
        self.coords.len()
    }

    pub fn coord(&self, v: Vertex, axis: usize) -> u64 {
        self.coords[v][axis]
    }
}

/// The `|E| x d|V|` rigidity matrix of `g` at `config`: the row of `uv` holds
/// `p(u) - p(v)` in `u`'s column block and the negation in `v`'s block.
pub fn rigidity_matrix(g: &Graph, config: &GenericConfiguration) -> Result<FieldMatrix> {
    if config.vertex_count() < g.n() {
        return Err(Error::Precondition(format!(
            "configuration covers {} vertices, graph has {}",
            config.vertex_count(),
            g.n()
        )));
    }
    let vertices: Vec<Vertex> = (0..g.n()).collect();
    Ok(edge_matrix_field(g.edges(), &vertices, config))
}

/// Rows for `edges` over the column blocks of `vertices` (a compaction: columns
/// of untouched vertices are all-zero and never change the rank).
fn edge_matrix_field(
    edges: &[Edge],
    vertices: &[Vertex],
    config: &GenericConfiguration,
) -> FieldMatrix {
    let d = config.dim;
    let col_of: HashMap<Vertex, usize> = vertices
        .iter()
        .enumerate()
        .map(|(i, &v)| (v, i * d))
        .collect();
    let mut m = FieldMatrix::zeros(edges.len(), vertices.len() * d);
    for (row, e) in edges.iter().enumerate() {
        let (u, v) = (e.u(), e.v());
        let (cu, cv) = (col_of[&u], col_of[&v]);
        for axis in 0..d {
            let pu = FieldScalar::new(config.coord(u, axis));
            let pv = FieldScalar::new(config.coord(v, axis));
            m[(row, cu + axis)] = pu - pv;
            m[(row, cv + axis)] = pv - pu;
        }
    }
    m
}

fn edge_matrix_rational(
    edges: &[Edge],
    vertices: &[Vertex],
    config: &GenericConfiguration,
) -> RationalMatrix {
    let d = config.dim;
    let col_of: HashMap<Vertex, usize> = vertices
        .iter()
        .enumerate()
        .map(|(i, &v)| (v, i * d))
        .collect();
    let mut rows = vec![vec![0i64; vertices.len() * d]; edges.len()];
    for (row, e) in edges.iter().enumerate() {
        let (u, v) = (e.u(), e.v());
        let (cu, cv) = (col_of[&u], col_of[&v]);
        for axis in 0..d {
            let diff = config.coord(u, axis) as i64 - config.coord(v, axis) as i64;
            rows[row][cu + axis] = diff;
            rows[row][cv + axis] = -diff;
        }
    }
    RationalMatrix::from_integer_rows(rows)
}

/// Rank of the cycle matroid: `|V(S)| - c(V(S), S)`, no linear algebra.
pub fn graphic_rank(edges: &[Edge]) -> usize {
    let vertices = span(edges);
    if vertices.is_empty() {
        return 0;
    }
    let index: HashMap<Vertex, usize> = vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut parent: Vec<usize> = (0..vertices.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut components = vertices.len();
    for e in edges {
        let (a, b) = (
            find(&mut parent, index[&e.u()]),
            find(&mut parent, index[&e.v()]),
        );
        if a != b {
            parent[a] = b;
            components -= 1;
        }
    }
    vertices.len() - components
}

/// The rank a rigid edge set spanning `nv` vertices must attain in dimension `d`.
pub fn rigid_rank_target(dim: usize, nv: usize) -> usize {
    if nv <= dim + 1 {
        nv * nv.saturating_sub(1) / 2
    } else {
        dim * nv - dim * (dim + 1) / 2
    }
}

/// Construction parameters for rank oracles: dimension, backend, seed, trials.
#[derive(Clone, Copy, Debug)]
pub struct OracleParams {
    pub dim: usize,
    pub backend: Backend,
    pub seed: u64,
    pub trials: usize,
}

impl OracleParams {
    pub fn new(dim: usize) -> Self {
        OracleParams {
            dim,
            backend: Backend::Field,
            seed: DEFAULT_SEED,
            trials: 1,
        }
    }

    pub fn backend(mut self, backend: Backend) -> Self {
        self.backend = backend;
        self
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn trials(mut self, trials: usize) -> Self {
        self.trials = trials.max(1);
        self
    }

    pub fn dim(mut self, dim: usize) -> Self {
        self.dim = dim;
        self
    }

    /// An oracle for the matroid on the complete graph over `n` vertices.
    pub fn oracle(&self, n: usize) -> RankOracle {
        RankOracle::new(n, *self)
    }

    /// An oracle whose ambient complete graph covers `g`'s vertices.
    pub fn oracle_for(&self, g: &Graph) -> RankOracle {
        self.oracle(g.n())
    }
}

/// Memoized rank function of the generic `d`-dimensional rigidity matroid on
/// `K_n` (or of the cycle matroid for the graphic backend).
///
/// Rank is reported from a single configuration sample by default; with
/// `trials > 1` the maximum over independently seeded samples is taken (rank
/// at a special point only ever underestimates the generic value).
pub struct RankOracle {
    n: usize,
    params: OracleParams,
    configs: Vec<GenericConfiguration>,
    memo: RwLock<HashMap<Vec<Edge>, usize>>,
}

impl RankOracle {
    pub fn new(n: usize, params: OracleParams) -> Self {
        let configs = match params.backend {
            Backend::Graphic => Vec::new(),
            Backend::Field => (0..params.trials)
                .map(|t| GenericConfiguration::field(n, params.dim, params.seed, t))
                .collect(),
            Backend::Rational => (0..params.trials)
                .map(|t| GenericConfiguration::integer(n, params.dim, params.seed, t))
                .collect(),
        };
        RankOracle {
            n,
            params,
            configs,
            memo: RwLock::new(HashMap::new()),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.params.dim
    }

    pub fn backend(&self) -> Backend {
        self.params.backend
    }

    pub fn seed(&self) -> u64 {
        self.params.seed
    }

    pub fn params(&self) -> OracleParams {
        self.params
    }

    /// Rank of an edge subset of `K_n`. Memoized and deterministic for a seed.
    pub fn rank(&self, edges: &[Edge]) -> usize {
        let mut key: Vec<Edge> = edges.to_vec();
        key.sort_unstable();
        key.dedup();
        debug_assert_eq!(key.len(), edges.len(), "rank query repeated an edge");
        debug_assert!(
            key.iter().all(|e| e.v() < self.n),
            "edge outside ambient K_n"
        );
        if let Some(&r) = self.memo.read().expect("memo poisoned").get(&key) {
            return r;
        }
        let rank = self.compute_rank(&key);
        self.memo.write().expect("memo poisoned").insert(key, rank);
        rank
    }

    fn compute_rank(&self, edges: &[Edge]) -> usize {
        if edges.is_empty() {
            return 0;
        }
        match self.params.backend {
            Backend::Graphic => graphic_rank(edges),
            Backend::Field => {
                let vertices = span(edges);
                self.configs
                    .iter()
                    .map(|c| field_rank(&edge_matrix_field(edges, &vertices, c)))
                    .max()
                    .expect("at least one trial")
            }
            Backend::Rational => {
                let vertices = span(edges);
                self.configs
                    .iter()
                    .map(|c| rational_rank(&edge_matrix_rational(edges, &vertices, c)))
                    .max()
                    .expect("at least one trial")
            }
        }
    }

    pub fn rank_graph(&self, g: &Graph) -> usize {
        self.rank(g.edges())
    }

    /// `r(S) = |S|`.
    pub fn is_independent(&self, edges: &[Edge]) -> bool {
        self.rank(edges) == edges.len()
    }

    /// Rigid on the spanned vertices: complete when they number at most `d + 1`
    /// (trivially when at most one), otherwise full Asimov-Roth rank.
    pub fn is_rigid(&self, edges: &[Edge]) -> bool {
        let nv = span(edges).len();
        if nv <= 1 {
            return true;
        }
        if nv <= self.dim() + 1 {
            return edges.len() == nv * (nv - 1) / 2;
        }
        self.rank(edges) == rigid_rank_target(self.dim(), nv)
    }

    pub fn is_minimally_rigid(&self, edges: &[Edge]) -> bool {
        self.is_rigid(edges) && self.is_independent(edges)
    }

    /// Rigidity of a graph as given, counting isolated vertices: a graph with
    /// an unconstrained vertex is flexible no matter what its edges span.
    pub fn is_rigid_graph(&self, g: &Graph) -> bool {
        if g.n() <= 1 {
            return true;
        }
        if g.n() <= self.dim() + 1 {
            return g.edge_count() == g.n() * (g.n() - 1) / 2;
        }
        self.rank(g.edges()) == rigid_rank_target(self.dim(), g.n())
    }

    /// Minimally dependent: `r(S) = |S| - 1` and every deletion restores independence.
    pub fn is_circuit(&self, edges: &[Edge]) -> bool {
        if edges.is_empty() {
            return false;
        }
        self.rank(edges) + 1 == edges.len() && self.bridges(edges).is_empty()
    }

    /// Exactly the edges whose removal drops the rank (the coloops of `S`).
    pub fn bridges(&self, edges: &[Edge]) -> Vec<Edge> {
        let full = self.rank(edges);
        let mut out = Vec::new();
        let mut rest: Vec<Edge> = edges.to_vec();
        rest.sort_unstable();
        for i in 0..rest.len() {
            let e = rest.remove(i);
            if self.rank(&rest) + 1 == full {
                out.push(e);
            }
            rest.insert(i, e);
        }
        out
    }
}

/// A subset of a host graph's edges, by index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeSubset {
    host: Graph,
    indices: Vec<usize>,
}

impl EdgeSubset {
    pub fn new(host: Graph, mut indices: Vec<usize>) -> Result<Self> {
        indices.sort_unstable();
        indices.dedup();
        if indices.iter().any(|&i| i >= host.edge_count()) {
            return Err(Error::InvalidGraph(
                "edge index out of range for host".into(),
            ));
        }
        Ok(EdgeSubset { host, indices })
    }

    pub fn full(host: Graph) -> Self {
        let indices = (0..host.edge_count()).collect();
        EdgeSubset { host, indices }
    }

    pub fn host(&self) -> &Graph {
        &self.host
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn edges(&self) -> Vec<Edge> {
        self.indices.iter().map(|&i| self.host.edges()[i]).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{banana, complete, complete_bipartite, cone};

    fn field(dim: usize) -> OracleParams {
        OracleParams::new(dim)
    }

    #[test]
    fn single_edge_matrix_row() {
        let g = Graph::new(2, &[(0, 1)]).unwrap();
        let config = GenericConfiguration::field(2, 1, DEFAULT_SEED, 0);
        let m = rigidity_matrix(&g, &config).unwrap();
        assert_eq!((m.rows(), m.cols()), (1, 2));
        let a = FieldScalar::new(config.coord(0, 0));
        let b = FieldScalar::new(config.coord(1, 0));
        assert_eq!(m[(0, 0)], a - b);
        assert_eq!(m[(0, 1)], b - a);
    }

    #[test]
    fn k3_matrix_rank_cross_checked() {
        let g = complete(3).unwrap();
        let config = GenericConfiguration::field(3, 2, DEFAULT_SEED, 0);
        let m = rigidity_matrix(&g, &config).unwrap();
        assert_eq!((m.rows(), m.cols()), (3, 6));
        assert_eq!(field_rank(&m), 3);
        let rational = field(2).backend(Backend::Rational).oracle(3);
        assert_eq!(rational.rank_graph(&g), 3);
    }

    #[test]
    fn empty_set_rank() {
        let oracle = field(2).oracle(4);
        assert_eq!(oracle.rank(&[]), 0);
    }

    #[test]
    fn k5_is_r3_circuit() {
        let k5 = complete(5).unwrap();
        for backend in [Backend::Field, Backend::Rational] {
            let oracle = field(3).backend(backend).oracle_for(&k5);
            assert_eq!(oracle.rank_graph(&k5), 9);
            assert!(oracle.is_circuit(k5.edges()));
        }
    }

    #[test]
    fn banana_rank_and_circuit() {
        let b = banana(3).unwrap();
        let oracle = field(3).oracle_for(&b);
        assert_eq!(oracle.rank_graph(&b), 17);
        assert!(oracle.is_circuit(b.edges()));
        assert!(!oracle.is_rigid(b.edges()));
    }

    #[test]
    fn k67_rank_in_dim4() {
        let g = complete_bipartite(6, 7).unwrap();
        let oracle = field(4).oracle_for(&g);
        assert_eq!(oracle.rank_graph(&g), 40);
    }

    #[test]
    fn k55_is_r3_circuit() {
        let g = complete_bipartite(5, 5).unwrap();
        let oracle = field(3).oracle_for(&g);
        assert!(oracle.is_circuit(g.edges()));
    }

    #[test]
    fn graphic_rank_cases() {
        let triangle = complete(3).unwrap();
        assert_eq!(graphic_rank(triangle.edges()), 2);
        // A forest has rank equal to its edge count.
        let forest = Graph::new(6, &[(0, 1), (1, 2), (3, 4)]).unwrap();
        assert_eq!(graphic_rank(forest.edges()), 3);
        // Theta graph: 3 internally disjoint 2-edge paths, a graphic double circuit.
        let theta = Graph::new(5, &[(0, 2), (1, 2), (0, 3), (1, 3), (0, 4), (1, 4)]).unwrap();
        assert_eq!(graphic_rank(theta.edges()), 4);
    }

    #[test]
    fn dim1_matches_graphic() {
        let g = Graph::new(6, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 3)]).unwrap();
        let oracle = field(1).oracle_for(&g);
        assert_eq!(oracle.rank_graph(&g), graphic_rank(g.edges()));
    }

    #[test]
    fn rigidity_predicates() {
        let k4 = complete(4).unwrap();
        let oracle = field(2).oracle_for(&k4);
        assert!(oracle.is_rigid(k4.edges()));
        assert!(oracle.is_circuit(k4.edges()));
        assert!(!oracle.is_independent(k4.edges()));
        let rational = field(2).backend(Backend::Rational).oracle_for(&k4);
        assert!(rational.is_circuit(k4.edges()));

        // Complete graphs on at most d + 1 vertices are rigid by definition.
        let k2 = complete(2).unwrap();
        let tiny = field(3).oracle(2);
        assert!(tiny.is_rigid(k2.edges()));
        assert!(tiny.is_minimally_rigid(k2.edges()));
    }

    #[test]
    fn graph_level_rigidity_counts_isolated_vertices() {
        let empty3 = Graph::new(3, &[]).unwrap();
        let oracle = field(2).oracle_for(&empty3);
        assert!(!oracle.is_rigid_graph(&empty3));
        let k2_plus_isolated = Graph::new(3, &[(0, 1)]).unwrap();
        assert!(!oracle.is_rigid_graph(&k2_plus_isolated));
        let k1 = Graph::new(1, &[]).unwrap();
        assert!(field(2).oracle(1).is_rigid_graph(&k1));
        let k4 = complete(4).unwrap();
        assert!(field(2).oracle_for(&k4).is_rigid_graph(&k4));
    }

    #[test]
    fn concurrent_queries_share_one_session() {
        let g = complete(6).unwrap();
        let oracle = std::sync::Arc::new(field(2).oracle_for(&g));
        let handles: Vec<_> = (0..4)
            .map(|i| {
                let oracle = std::sync::Arc::clone(&oracle);
                let edges = g.edges().to_vec();
                std::thread::spawn(move || {
                    let subset: Vec<Edge> = edges.into_iter().skip(i % 2).collect();
                    oracle.rank(&subset)
                })
            })
            .collect();
        let ranks: Vec<usize> = handles.into_iter().map(|h| h.join().unwrap()).collect();
        assert_eq!(ranks[0], ranks[2]);
        assert_eq!(ranks[1], ranks[3]);
    }

    #[test]
    fn tree_bridges_in_dim1() {
        let tree = Graph::new(4, &[(0, 1), (1, 2), (1, 3)]).unwrap();
        let oracle = field(1).oracle_for(&tree);
        assert_eq!(oracle.bridges(tree.edges()), tree.edges().to_vec());
    }

    #[test]
    fn circuit_has_no_bridges() {
        let k4 = complete(4).unwrap();
        let oracle = field(2).oracle_for(&k4);
        assert!(oracle.bridges(k4.edges()).is_empty());
    }

    #[test]
    fn k67_plus_two_edges_bridges() {
        let g = complete_bipartite(6, 7).unwrap();
        let extra = [Edge::new(6, 7), Edge::new(8, 9)]; // two edges on the 7-side
        let host = g.add_edges(&extra).unwrap();
        let oracle = field(4).oracle_for(&host);
        assert_eq!(oracle.bridges(host.edges()), extra.to_vec());
    }

    #[test]
    fn one_extension_of_k4_is_a_circuit() {
        let k4 = complete(4).unwrap();
        let ext = crate::graphs::one_extension(&k4, (0, 1), &[0, 1, 2]).unwrap();
        for backend in [Backend::Field, Backend::Rational] {
            let oracle = field(2).backend(backend).oracle_for(&ext);
            assert!(oracle.is_circuit(ext.edges()), "{backend:?}");
        }
    }

    #[test]
    fn cone_rank_law_instances() {
        for (g, d) in [
            (complete(4).unwrap(), 2),
            (complete_bipartite(3, 4).unwrap(), 2),
            (banana(3).unwrap(), 3),
        ] {
            let base = field(d).oracle_for(&g);
            let coned = cone(&g);
            let lifted = field(d + 1).oracle_for(&coned);
            assert_eq!(lifted.rank_graph(&coned), base.rank_graph(&g) + g.n());
        }
    }

    #[test]
    fn gluing_rigid_subgraphs_on_d_shared_vertices() {
        // Two rigid graphs overlapping in at least d vertices glue rigidly.
        let k5 = complete(5).unwrap();
        let glued = Graph::new(7, &{
            let mut pairs: Vec<(usize, usize)> =
                k5.edges().iter().map(|e| (e.u(), e.v())).collect();
            // Second K_5 on {2,3,4,5,6}: three shared vertices.
            for u in 2..7usize {
                for v in u + 1..7 {
                    if u >= 5 || v >= 5 {
                        pairs.push((u, v));
                    }
                }
            }
            pairs
        })
        .unwrap();
        let oracle = field(3).oracle_for(&glued);
        assert!(oracle.is_rigid(glued.edges()));

        // Sharing fewer than d vertices leaves a flexible union.
        let thin = Graph::new(8, &{
            let mut pairs: Vec<(usize, usize)> =
                k5.edges().iter().map(|e| (e.u(), e.v())).collect();
            // Second K_5 on {3,...,7}: only the two vertices 3, 4 are shared.
            for u in 3..8usize {
                for v in u + 1..8 {
                    if u >= 5 || v >= 5 {
                        pairs.push((u, v));
                    }
                }
            }
            pairs
        })
        .unwrap();
        let oracle = field(3).oracle_for(&thin);
        assert!(!oracle.is_rigid(thin.edges()));
    }

    #[test]
    fn trials_take_maximum() {
        let g = complete(5).unwrap();
        let oracle = field(3).trials(3).oracle_for(&g);
        assert_eq!(oracle.rank_graph(&g), 9);
    }

    #[test]
    fn memo_is_stable() {
        let g = complete(5).unwrap();
        let oracle = field(3).oracle_for(&g);
        let r1 = oracle.rank_graph(&g);
        let r2 = oracle.rank_graph(&g);
        assert_eq!(r1, r2);
    }

    #[test]
    fn edge_subset_roundtrip() {
        let g = complete(4).unwrap();
        let sub = EdgeSubset::new(g.clone(), vec![0, 2, 5]).unwrap();
        assert_eq!(sub.edges().len(), 3);
        assert!(EdgeSubset::new(g.clone(), vec![9]).is_err());
        assert_eq!(EdgeSubset::full(g).edges().len(), 6);
    }
}
