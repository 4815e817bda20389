//! Finite simple graphs and every construction the toolkit needs: complete and
//! complete-bipartite generators, coning, graphical 2-sums and parallel
//! connections, 0/1-extensions, X/V-replacements, and the banana family.
//!
//! Graphs are immutable values with a canonical edge order (each pair stored
//! smaller-first, the set sorted), so equal graphs serialize identically and
//! rank-oracle memo tables can key on them.
//!
//! Conventions fixed here because the underlying constructions do not fix
//! labels:
//! - 2-sum / parallel connection: the second graph is relabelled so that the
//!   endpoints of its gluing edge land on the endpoints of the first graph's
//!   gluing edge in argument order; all other vertices get fresh indices in
//!   increasing original order.
//! - `banana(d)`: the two `K_{d+2}` blocks share vertices `0..d-1` and the
//!   deleted edge is `(0, 1)`, the least edge of the shared clique.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt;

pub type Vertex = usize;

/// An undirected edge, stored with the smaller endpoint first.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "(Vertex, Vertex)", into = "(Vertex, Vertex)")]
pub struct Edge(Vertex, Vertex);

impl Edge {
    pub fn new(u: Vertex, v: Vertex) -> Self {
        assert!(u != v, "loop edge ({u},{u})");
        if u < v {
            Edge(u, v)
        } else {
            Edge(v, u)
        }
    }

    pub fn u(self) -> Vertex {
        self.0
    }

    pub fn v(self) -> Vertex {
        self.1
    }

    pub fn contains(self, x: Vertex) -> bool {
        self.0 == x || self.1 == x
    }

    pub fn shares_vertex(self, other: Edge) -> bool {
        self.contains(other.0) || self.contains(other.1)
    }

    pub fn endpoints(self) -> [Vertex; 2] {
        [self.0, self.1]
    }

    /// The endpoint that is not `x`; panics if `x` is not an endpoint.
    pub fn other_endpoint(self, x: Vertex) -> Vertex {
        if self.0 == x {
            self.1
        } else {
            assert_eq!(self.1, x, "{x} is not an endpoint of {self:?}");
            self.0
        }
    }
}

impl TryFrom<(Vertex, Vertex)> for Edge {
    type Error = Error;
    fn try_from((u, v): (Vertex, Vertex)) -> Result<Self> {
        if u == v {
            return Err(Error::InvalidGraph(format!("loop edge ({u},{v})")));
        }
        Ok(Edge::new(u, v))
    }
}

impl From<Edge> for (Vertex, Vertex) {
    fn from(e: Edge) -> Self {
        (e.0, e.1)
    }
}

impl fmt::Debug for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.0, self.1)
    }
}

/// The vertices touched by a set of edges, sorted.
pub fn span(edges: &[Edge]) -> Vec<Vertex> {
    let mut vs: Vec<Vertex> = edges.iter().flat_map(|e| e.endpoints()).collect();
    vs.sort_unstable();
    vs.dedup();
    vs
}

/// All edges of the complete graph on the given vertices, in canonical order.
pub fn complete_edges(vertices: &[Vertex]) -> Vec<Edge> {
    let mut out = Vec::with_capacity(vertices.len() * vertices.len().saturating_sub(1) / 2);
    for (i, &u) in vertices.iter().enumerate() {
        for &v in &vertices[i + 1..] {
            out.push(Edge::new(u, v));
        }
    }
    out.sort_unstable();
    out
}

/// A finite simple graph on vertices `0..n` with a canonically ordered edge set.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawGraph", into = "RawGraph")]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
}

#[derive(Serialize, Deserialize)]
struct RawGraph {
    n: usize,
    edges: Vec<(Vertex, Vertex)>,
}

impl TryFrom<RawGraph> for Graph {
    type Error = Error;
    fn try_from(raw: RawGraph) -> Result<Self> {
        Graph::new(raw.n, &raw.edges)
    }
}

impl From<Graph> for RawGraph {
    fn from(g: Graph) -> Self {
        RawGraph {
            n: g.n,
            edges: g.edges.into_iter().map(Into::into).collect(),
        }
    }
}

impl Graph {
    /// Builds a graph, rejecting loops, out-of-range endpoints and duplicates.
    pub fn new(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self> {
        let mut set = BTreeSet::new();
        for &(u, v) in edges {
            if u == v {
                return Err(Error::InvalidGraph(format!("loop edge ({u},{v})")));
            }
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge ({u},{v}) out of range for n={n}"
                )));
            }
            if !set.insert(Edge::new(u, v)) {
                return Err(Error::InvalidGraph(format!("duplicate edge ({u},{v})")));
            }
        }
        Ok(Graph::from_edge_set(n, set))
    }

    /// Builds from an already-deduplicated edge set.
    pub fn from_edge_set(n: usize, edges: BTreeSet<Edge>) -> Self {
        debug_assert!(edges.iter().all(|e| e.v() < n));
        Graph {
            n,
            edges: edges.into_iter().collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u != v && self.edges.binary_search(&Edge::new(u, v)).is_ok()
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.edges.iter().filter(|e| e.contains(v)).count()
    }

    pub fn neighbors(&self, v: Vertex) -> Vec<Vertex> {
        let mut out: Vec<Vertex> = self
            .edges
            .iter()
            .filter(|e| e.contains(v))
            .map(|e| if e.u() == v { e.v() } else { e.u() })
            .collect();
        out.sort_unstable();
        out
    }

    /// Vertices incident to at least one edge.
    pub fn spanned_vertices(&self) -> Vec<Vertex> {
        span(&self.edges)
    }

    pub fn add_edges(&self, extra: &[Edge]) -> Result<Graph> {
        let mut set: BTreeSet<Edge> = self.edges.iter().copied().collect();
        for &e in extra {
            if e.v() >= self.n {
                return Err(Error::InvalidGraph(format!("edge {e:?} out of range")));
            }
            if !set.insert(e) {
                return Err(Error::InvalidGraph(format!("edge {e:?} already present")));
            }
        }
        Ok(Graph::from_edge_set(self.n, set))
    }

    pub fn remove_edges(&self, gone: &[Edge]) -> Result<Graph> {
        let mut set: BTreeSet<Edge> = self.edges.iter().copied().collect();
        for e in gone {
            if !set.remove(e) {
                return Err(Error::InvalidGraph(format!("edge {e:?} not present")));
            }
        }
        Ok(Graph::from_edge_set(self.n, set))
    }

    /// Applies the vertex relabelling `map[old] = new` onto `new_n` vertices.
    pub fn relabel(&self, map: &[Vertex], new_n: usize) -> Result<Graph> {
        if map.len() != self.n {
            return Err(Error::InvalidGraph(
                "relabel map length differs from vertex count".into(),
            ));
        }
        let mut set = BTreeSet::new();
        for e in &self.edges {
            let (u, v) = (map[e.u()], map[e.v()]);
            if u >= new_n || v >= new_n {
                return Err(Error::InvalidGraph("relabel image out of range".into()));
            }
            if u == v || !set.insert(Edge::new(u, v)) {
                return Err(Error::InvalidGraph("relabel map is not injective".into()));
            }
        }
        Ok(Graph::from_edge_set(new_n, set))
    }

    /// Union of two graphs over the same vertex range.
    pub fn union(&self, other: &Graph) -> Graph {
        let mut set: BTreeSet<Edge> = self.edges.iter().copied().collect();
        set.extend(other.edges.iter().copied());
        Graph::from_edge_set(self.n.max(other.n), set)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("graph serializes")
    }

    pub fn from_json(text: &str) -> Result<Graph> {
        Ok(serde_json::from_str(text)?)
    }

    /// Whitespace-separated edge list: first token is `n`, then `u v` pairs.
    pub fn from_text(text: &str) -> Result<Graph> {
        let mut tokens = text.split_whitespace();
        let n: usize = tokens
            .next()
            .ok_or_else(|| Error::InvalidGraph("empty edge-list input".into()))?
            .parse()
            .map_err(|_| Error::InvalidGraph("first token must be the vertex count".into()))?;
        let rest: Vec<usize> = tokens
            .map(|t| {
                t.parse()
                    .map_err(|_| Error::InvalidGraph(format!("bad vertex token {t:?}")))
            })
            .collect::<Result<_>>()?;
        if !rest.len().is_multiple_of(2) {
            return Err(Error::InvalidGraph("odd number of endpoint tokens".into()));
        }
        let pairs: Vec<(Vertex, Vertex)> = rest.chunks(2).map(|c| (c[0], c[1])).collect();
        Graph::new(n, &pairs)
    }

    /// Accepts either the JSON object format or the edge-list text format.
    pub fn parse(text: &str) -> Result<Graph> {
        if text.trim_start().starts_with('{') {
            Graph::from_json(text)
        } else {
            Graph::from_text(text)
        }
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Graph(n={}, m={}, {:?})",
            self.n,
            self.edges.len(),
            self.edges
        )
    }
}

/// `K_n`.
pub fn complete(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::InvalidConstruction(
            "complete graph needs n >= 1".into(),
        ));
    }
    let vs: Vec<Vertex> = (0..n).collect();
    Ok(Graph::from_edge_set(
        n,
        complete_edges(&vs).into_iter().collect(),
    ))
}

/// `K_{m,n}` with the first `m` vertices on one side.
pub fn complete_bipartite(m: usize, n: usize) -> Result<Graph> {
    if m == 0 || n == 0 {
        return Err(Error::InvalidConstruction(
            "complete bipartite graph needs both sides nonempty".into(),
        ));
    }
    let mut set = BTreeSet::new();
    for u in 0..m {
        for v in m..m + n {
            set.insert(Edge::new(u, v));
        }
    }
    Ok(Graph::from_edge_set(m + n, set))
}

/// Cone `G*v`: a new vertex (index `n`) joined to every vertex of `G`.
pub fn cone(g: &Graph) -> Graph {
    let v = g.n;
    let mut set: BTreeSet<Edge> = g.edges.iter().copied().collect();
    for u in 0..g.n {
        set.insert(Edge::new(u, v));
    }
    Graph::from_edge_set(g.n + 1, set)
}

fn check_gluing_edge(g: &Graph, e: Edge, which: &str) -> Result<()> {
    if !g.has_edge(e.u(), e.v()) {
        return Err(Error::InvalidConstruction(format!(
            "gluing edge {e:?} is not an edge of {which}"
        )));
    }
    Ok(())
}

/// Relabels `g2` so `e2`'s endpoints (in argument order) land on `e1`'s, with
/// every other vertex fresh, and returns the union together with the map.
fn glue_along_edge(
    g1: &Graph,
    g2: &Graph,
    e1: (Vertex, Vertex),
    e2: (Vertex, Vertex),
) -> Result<(Graph, Vec<Vertex>)> {
    check_gluing_edge(g1, Edge::new(e1.0, e1.1), "the first graph")?;
    check_gluing_edge(g2, Edge::new(e2.0, e2.1), "the second graph")?;
    let mut map = vec![usize::MAX; g2.n];
    map[e2.0] = e1.0;
    map[e2.1] = e1.1;
    let mut next = g1.n;
    for target in map.iter_mut() {
        if *target == usize::MAX {
            *target = next;
            next += 1;
        }
    }
    let relabelled = g2.relabel(&map, next)?;
    let mut set: BTreeSet<Edge> = g1.edges.iter().copied().collect();
    set.extend(relabelled.edges().iter().copied());
    Ok((Graph::from_edge_set(next, set), map))
}

/// Graphical parallel connection along `e1 ~ e2`: glue and keep the shared edge.
/// Also returns the vertex map applied to `g2`.
pub fn parallel_connection_with_map(
    g1: &Graph,
    g2: &Graph,
    e1: (Vertex, Vertex),
    e2: (Vertex, Vertex),
) -> Result<(Graph, Vec<Vertex>)> {
    glue_along_edge(g1, g2, e1, e2)
}

/// Graphical 2-sum along `e1 ~ e2`: glue and delete the shared edge.
/// Also returns the vertex map applied to `g2`.
pub fn two_sum_with_map(
    g1: &Graph,
    g2: &Graph,
    e1: (Vertex, Vertex),
    e2: (Vertex, Vertex),
) -> Result<(Graph, Vec<Vertex>)> {
    let (glued, map) = glue_along_edge(g1, g2, e1, e2)?;
    let joined = glued.remove_edges(&[Edge::new(e1.0, e1.1)])?;
    Ok((joined, map))
}

pub fn graphical_parallel_connection(
    g1: &Graph,
    g2: &Graph,
    e1: (Vertex, Vertex),
    e2: (Vertex, Vertex),
) -> Result<Graph> {
    parallel_connection_with_map(g1, g2, e1, e2).map(|(g, _)| g)
}

pub fn graphical_two_sum(
    g1: &Graph,
    g2: &Graph,
    e1: (Vertex, Vertex),
    e2: (Vertex, Vertex),
) -> Result<Graph> {
    two_sum_with_map(g1, g2, e1, e2).map(|(g, _)| g)
}

fn check_distinct_vertices(g: &Graph, vs: &[Vertex], what: &str) -> Result<()> {
    let mut seen = BTreeSet::new();
    for &v in vs {
        if v >= g.n {
            return Err(Error::InvalidConstruction(format!(
                "{what}: vertex {v} out of range"
            )));
        }
        if !seen.insert(v) {
            return Err(Error::InvalidConstruction(format!(
                "{what}: vertex {v} repeated"
            )));
        }
    }
    Ok(())
}

/// d-dimensional 0-extension: a new vertex of degree `d = neighbors.len()`.
pub fn zero_extension(g: &Graph, neighbors: &[Vertex]) -> Result<Graph> {
    if neighbors.is_empty() {
        return Err(Error::InvalidConstruction(
            "0-extension needs d >= 1 neighbors".into(),
        ));
    }
    check_distinct_vertices(g, neighbors, "0-extension")?;
    let w = g.n;
    let mut set: BTreeSet<Edge> = g.edges.iter().copied().collect();
    for &u in neighbors {
        set.insert(Edge::new(u, w));
    }
    Ok(Graph::from_edge_set(g.n + 1, set))
}

/// d-dimensional 1-extension on the edge `xy`: delete `xy` and add a new vertex
/// of degree `d + 1 = neighbors.len()` adjacent to `neighbors`, which must
/// contain both `x` and `y`.
pub fn one_extension(g: &Graph, xy: (Vertex, Vertex), neighbors: &[Vertex]) -> Result<Graph> {
    if neighbors.len() < 2 {
        return Err(Error::InvalidConstruction(
            "1-extension needs d+1 >= 2 neighbors".into(),
        ));
    }
    check_distinct_vertices(g, neighbors, "1-extension")?;
    let e = Edge::new(xy.0, xy.1);
    if !g.has_edge(e.u(), e.v()) {
        return Err(Error::InvalidConstruction(format!(
            "1-extension: missing edge {e:?}"
        )));
    }
    if !(neighbors.contains(&xy.0) && neighbors.contains(&xy.1)) {
        return Err(Error::InvalidConstruction(
            "1-extension: neighbor set must contain both endpoints of the split edge".into(),
        ));
    }
    let w = g.n;
    let mut set: BTreeSet<Edge> = g.edges.iter().copied().collect();
    set.remove(&e);
    for &u in neighbors {
        set.insert(Edge::new(u, w));
    }
    Ok(Graph::from_edge_set(g.n + 1, set))
}

/// d-dimensional X-replacement: delete the non-adjacent edges `uv`, `xy` and
/// add a vertex of degree `d + 2` adjacent to `u,v,x,y` and `extra`
/// (`|extra| = d - 2`).
pub fn x_replacement(
    g: &Graph,
    uv: (Vertex, Vertex),
    xy: (Vertex, Vertex),
    extra: &[Vertex],
) -> Result<Graph> {
    let e1 = Edge::new(uv.0, uv.1);
    let e2 = Edge::new(xy.0, xy.1);
    if e1.shares_vertex(e2) {
        return Err(Error::InvalidConstruction(
            "X-replacement needs two non-adjacent edges".into(),
        ));
    }
    for (e, name) in [(e1, "first"), (e2, "second")] {
        if !g.has_edge(e.u(), e.v()) {
            return Err(Error::InvalidConstruction(format!(
                "X-replacement: {name} edge {e:?} missing"
            )));
        }
    }
    let mut named = vec![uv.0, uv.1, xy.0, xy.1];
    named.extend_from_slice(extra);
    check_distinct_vertices(g, &named, "X-replacement")?;
    let w = g.n;
    let mut set: BTreeSet<Edge> = g.edges.iter().copied().collect();
    set.remove(&e1);
    set.remove(&e2);
    for &u in &named {
        set.insert(Edge::new(u, w));
    }
    Ok(Graph::from_edge_set(g.n + 1, set))
}

/// d-dimensional V-replacement: delete the adjacent edges `xy`, `yz` and add a
/// vertex of degree `d + 2` adjacent to `x,y,z` and `extra` (`|extra| = d - 1`).
pub fn v_replacement(
    g: &Graph,
    xy: (Vertex, Vertex),
    yz: (Vertex, Vertex),
    extra: &[Vertex],
) -> Result<Graph> {
    let e1 = Edge::new(xy.0, xy.1);
    let e2 = Edge::new(yz.0, yz.1);
    if e1 == e2 {
        return Err(Error::InvalidConstruction(
            "V-replacement needs two distinct edges".into(),
        ));
    }
    let shared: Vec<Vertex> = e1
        .endpoints()
        .into_iter()
        .filter(|&v| e2.contains(v))
        .collect();
    if shared.len() != 1 {
        return Err(Error::InvalidConstruction(
            "V-replacement needs edges sharing exactly one vertex".into(),
        ));
    }
    for (e, name) in [(e1, "first"), (e2, "second")] {
        if !g.has_edge(e.u(), e.v()) {
            return Err(Error::InvalidConstruction(format!(
                "V-replacement: {name} edge {e:?} missing"
            )));
        }
    }
    let y = shared[0];
    let x = if e1.u() == y { e1.v() } else { e1.u() };
    let z = if e2.u() == y { e2.v() } else { e2.u() };
    let mut named = vec![x, y, z];
    named.extend_from_slice(extra);
    check_distinct_vertices(g, &named, "V-replacement")?;
    let w = g.n;
    let mut set: BTreeSet<Edge> = g.edges.iter().copied().collect();
    set.remove(&e1);
    set.remove(&e2);
    for &u in &named {
        set.insert(Edge::new(u, w));
    }
    Ok(Graph::from_edge_set(g.n + 1, set))
}

fn banana_blocks(d: usize, copies: usize) -> Result<Graph> {
    if d < 3 {
        return Err(Error::InvalidConstruction(
            "banana family needs d >= 3".into(),
        ));
    }
    if copies == 0 {
        return Err(Error::InvalidConstruction(
            "banana chain needs at least one copy".into(),
        ));
    }
    // Shared K_{d-1} on 0..d-1; the first (up to) two blocks use it in full,
    // later blocks attach only along the deleted edge's endpoints {0, 1}.
    let spine: Vec<Vertex> = (0..d - 1).collect();
    let mut set: BTreeSet<Edge> = BTreeSet::new();
    let mut next = d - 1;
    for copy in 0..copies {
        let base: Vec<Vertex> = if copy < 2 { spine.clone() } else { vec![0, 1] };
        let fresh = d + 2 - base.len();
        let block: Vec<Vertex> = base.into_iter().chain(next..next + fresh).collect();
        next += fresh;
        set.extend(complete_edges(&block));
    }
    set.remove(&Edge::new(0, 1));
    Ok(Graph::from_edge_set(next, set))
}

/// `B_{d,d-1}`: two `K_{d+2}` sharing a `K_{d-1}`, with the least shared edge
/// deleted. `banana(3)` is the double banana.
pub fn banana(d: usize) -> Result<Graph> {
    banana_blocks(d, 2)
}

/// `B_{d,d-1}` with the deleted edge added back (the closure of the banana).
pub fn banana_closed(d: usize) -> Result<Graph> {
    let g = banana(d)?;
    g.add_edges(&[Edge::new(0, 1)])
}

/// The `c`-tuple banana: iterated 2-sums of `K_{d+2}` blocks along the shared
/// edge, all `c` copies glued at `(0, 1)` and the shared edge removed at the
/// end. A single copy degenerates to `K_{d+2}` minus one edge.
pub fn banana_chain(d: usize, copies: usize) -> Result<Graph> {
    banana_blocks(d, copies)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn complete_counts() {
        assert_eq!(complete(4).unwrap().edge_count(), 6);
        assert_eq!(complete(1).unwrap().edge_count(), 0);
        assert!(complete(0).is_err());
        let k67 = complete_bipartite(6, 7).unwrap();
        assert_eq!(k67.n(), 13);
        assert_eq!(k67.edge_count(), 42);
        assert!(complete_bipartite(0, 3).is_err());
    }

    #[test]
    fn cone_cases() {
        assert_eq!(cone(&complete(4).unwrap()), complete(5).unwrap());
        let coned = cone(&complete_bipartite(6, 7).unwrap());
        assert_eq!(coned.n(), 14);
        assert_eq!(coned.edge_count(), 55);
        assert_eq!(coned.degree(13), 13);
        // Cone of the empty graph on 3 vertices is the star K_{1,3}.
        let empty = Graph::new(3, &[]).unwrap();
        let star = cone(&empty);
        assert_eq!(star.edge_count(), 3);
        assert_eq!(star.degree(3), 3);
    }

    #[test]
    fn cone_restricts_to_original() {
        let g = banana(3).unwrap();
        let coned = cone(&g);
        let restricted: Vec<Edge> = coned
            .edges()
            .iter()
            .copied()
            .filter(|e| e.v() < g.n())
            .collect();
        assert_eq!(restricted, g.edges());
    }

    #[test]
    fn two_sum_and_parallel_of_triangles() {
        let t = complete(3).unwrap();
        let par = graphical_parallel_connection(&t, &t, (0, 1), (0, 1)).unwrap();
        assert_eq!(par.n(), 4);
        assert_eq!(par.edge_count(), 5); // K_4 minus one edge
        assert!(!par.has_edge(2, 3));

        let cyc = graphical_two_sum(&t, &t, (0, 1), (0, 1)).unwrap();
        assert_eq!(cyc.n(), 4);
        assert_eq!(cyc.edge_count(), 4); // the 4-cycle
        assert!(cyc.edges().iter().all(|e| !(e.u() == 0 && e.v() == 1)));
    }

    #[test]
    fn two_sum_of_k5s_is_double_banana() {
        let k5 = complete(5).unwrap();
        let g = graphical_two_sum(&k5, &k5, (0, 1), (0, 1)).unwrap();
        assert_eq!(g, banana(3).unwrap());
        assert_eq!(g.n(), 8);
        assert_eq!(g.edge_count(), 18);
    }

    #[test]
    fn two_sum_rejects_missing_edge() {
        let t = complete(3).unwrap();
        let c4 = Graph::new(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        assert!(graphical_two_sum(&t, &c4, (0, 1), (0, 2)).is_err());
    }

    #[test]
    fn banana_family_counts() {
        let b = banana(3).unwrap();
        assert_eq!((b.n(), b.edge_count()), (8, 18));
        let bc = banana_closed(3).unwrap();
        assert_eq!(bc.edge_count(), 19);
        assert!(banana(2).is_err());
        // d = 4: two K_6 sharing a K_3; 2*15 - 3 - 1 edges on 9 vertices.
        let b4 = banana(4).unwrap();
        assert_eq!((b4.n(), b4.edge_count()), (9, 26));
        // chains: c copies of K_5, hubs shared, shared edge removed
        for c in 1..=5 {
            let chain = banana_chain(3, c).unwrap();
            if c >= 2 {
                assert_eq!(chain.n(), 2 + 3 * c);
                assert_eq!(chain.edge_count(), 10 * c - (c - 1) - 1);
            }
        }
        assert_eq!(banana_chain(3, 2).unwrap(), banana(3).unwrap());
    }

    #[test]
    fn extension_shapes() {
        let k3 = complete(3).unwrap();
        // 0-extension of K_3 on two vertices gives K_4 minus an edge.
        let g = zero_extension(&k3, &[0, 1]).unwrap();
        assert_eq!(g.edge_count(), 5);
        assert_eq!(g.degree(3), 2);
        // 0-extension on all three vertices gives K_4.
        assert_eq!(
            zero_extension(&k3, &[0, 1, 2]).unwrap(),
            complete(4).unwrap()
        );

        let k4 = complete(4).unwrap();
        let ext = one_extension(&k4, (0, 1), &[0, 1, 2]).unwrap();
        assert_eq!(ext.n(), 5);
        assert_eq!(ext.edge_count(), 8);
        assert!(!ext.has_edge(0, 1));
        assert_eq!(ext.degree(4), 3);
        assert!(one_extension(&k4, (0, 1), &[0, 2, 3]).is_err());
        assert!(one_extension(&k3, (0, 1), &[0, 1, 1]).is_err());
    }

    #[test]
    fn replacement_shapes() {
        let c6 = Graph::new(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5)]).unwrap();
        // 2-dimensional X-replacement: degree d+2 = 4, edge count changes by d = 2.
        let x = x_replacement(&c6, (0, 1), (3, 4), &[]).unwrap();
        assert_eq!(x.degree(6), 4);
        assert_eq!(x.edge_count(), c6.edge_count() + 2);
        assert!(x_replacement(&c6, (0, 1), (1, 2), &[]).is_err());

        // 3-dimensional V-replacement: degree d+2 = 5.
        let v = v_replacement(&c6, (0, 1), (1, 2), &[3, 4]).unwrap();
        assert_eq!(v.degree(6), 5);
        assert_eq!(v.edge_count(), c6.edge_count() + 3);
        assert!(v_replacement(&c6, (0, 1), (3, 4), &[5]).is_err());
    }

    #[test]
    fn json_round_trip_and_text_parse() {
        let g = banana(3).unwrap();
        let parsed = Graph::from_json(&g.to_json()).unwrap();
        assert_eq!(parsed, g);

        let text = "4\n0 1  1 2\n2 3 0 3";
        let c4 = Graph::from_text(text).unwrap();
        assert_eq!(c4.edge_count(), 4);
        assert_eq!(Graph::parse(text).unwrap(), c4);
        assert_eq!(Graph::parse(&g.to_json()).unwrap(), g);

        assert!(Graph::from_json(r#"{"n":2,"edges":[[0,0]]}"#).is_err());
        assert!(Graph::from_json(r#"{"n":2,"edges":[[0,5]]}"#).is_err());
        assert!(Graph::from_text("3 0 1 0").is_err());
    }

    fn arb_graph() -> impl Strategy<Value = Graph> {
        (2usize..9).prop_flat_map(|n| {
            let all = complete_edges(&(0..n).collect::<Vec<_>>());
            let mask = proptest::collection::vec(any::<bool>(), all.len());
            mask.prop_map(move |keep| {
                let set: BTreeSet<Edge> = all
                    .iter()
                    .zip(&keep)
                    .filter_map(|(&e, &k)| k.then_some(e))
                    .collect();
                Graph::from_edge_set(n, set)
            })
        })
    }

    proptest! {
        #[test]
        fn serialization_is_canonical(g in arb_graph()) {
            let round = Graph::from_json(&g.to_json()).unwrap();
            prop_assert_eq!(&round, &g);
            prop_assert_eq!(round.to_json(), g.to_json());
            // Edges are sorted with smaller endpoint first.
            prop_assert!(g.edges().windows(2).all(|w| w[0] < w[1]));
            prop_assert!(g.edges().iter().all(|e| e.u() < e.v()));
        }

        #[test]
        fn glue_edge_counts(g in arb_graph(), h in arb_graph()) {
            prop_assume!(g.edge_count() >= 1 && h.edge_count() >= 1);
            let e1 = g.edges()[0];
            let e2 = h.edges()[h.edge_count() - 1];
            let par = graphical_parallel_connection(&g, &h, (e1.u(), e1.v()), (e2.u(), e2.v())).unwrap();
            prop_assert_eq!(par.edge_count(), g.edge_count() + h.edge_count() - 1);
            prop_assert_eq!(par.n(), g.n() + h.n() - 2);
            let two = graphical_two_sum(&g, &h, (e1.u(), e1.v()), (e2.u(), e2.v())).unwrap();
            prop_assert_eq!(two.edge_count(), g.edge_count() + h.edge_count() - 2);
        }
    }
}
