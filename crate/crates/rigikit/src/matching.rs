//! Matroid matching for small pair families: exhaustive computation of the
//! matching number, evaluation of the Dress-Lovász upper bound for supplied
//! certificates, and the generator for the `K_{2m+2,2m+3}` instance showing
//! the bound is not tight in even dimensions `>= 4`.

use crate::error::{Error, Result};
use crate::graphs::{complete_bipartite, Edge, Graph};
use crate::matroid::closure;
use crate::rigidity::RankOracle;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

const MATCHING_GUARD: usize = 24;

/// A family of unordered pairs of ground-set edges.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawPairFamily", into = "RawPairFamily")]
pub struct PairFamily {
    pairs: Vec<(Edge, Edge)>,
}

#[derive(Serialize, Deserialize)]
struct RawPairFamily {
    pairs: Vec<((usize, usize), (usize, usize))>,
}

impl TryFrom<RawPairFamily> for PairFamily {
    type Error = Error;
    fn try_from(raw: RawPairFamily) -> Result<Self> {
        PairFamily::new(
            raw.pairs
                .into_iter()
                .map(|(a, b)| Ok((Edge::try_from(a)?, Edge::try_from(b)?)))
                .collect::<Result<Vec<_>>>()?,
        )
    }
}

impl From<PairFamily> for RawPairFamily {
    fn from(fam: PairFamily) -> Self {
        RawPairFamily {
            pairs: fam
                .pairs
                .into_iter()
                .map(|(a, b)| (a.into(), b.into()))
                .collect(),
        }
    }
}

impl PairFamily {
    /// Pairs are stored element-sorted and the family sorted canonically.
    pub fn new(pairs: Vec<(Edge, Edge)>) -> Result<Self> {
        let mut canon = Vec::with_capacity(pairs.len());
        for (a, b) in pairs {
            if a == b {
                return Err(Error::Precondition(format!(
                    "pair elements must be distinct, got {a:?} twice"
                )));
            }
            canon.push(if a < b { (a, b) } else { (b, a) });
        }
        canon.sort_unstable();
        canon.dedup();
        Ok(PairFamily { pairs: canon })
    }

    pub fn pairs(&self) -> &[(Edge, Edge)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Union of the edges of the pairs at `indices`.
    pub fn union_of(&self, indices: &[usize]) -> Vec<Edge> {
        let mut set = BTreeSet::new();
        for &i in indices {
            set.insert(self.pairs[i].0);
            set.insert(self.pairs[i].1);
        }
        set.into_iter().collect()
    }
}

/// A Dress-Lovász certificate: a flat `Z` and a partition of the pair family.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MatchingCertificate {
    /// The flat; must satisfy `cl(Z) = Z`.
    pub flat: Vec<Edge>,
    /// Groups of pair indices, disjointly covering the family.
    pub groups: Vec<Vec<usize>>,
}

impl MatchingCertificate {
    pub fn single_group(fam: &PairFamily) -> Self {
        MatchingCertificate {
            flat: Vec::new(),
            groups: vec![(0..fam.len()).collect()],
        }
    }

    pub fn singletons(fam: &PairFamily) -> Self {
        MatchingCertificate {
            flat: Vec::new(),
            groups: (0..fam.len()).map(|i| vec![i]).collect(),
        }
    }
}

/// Maximum size of a sub-family whose edge union has rank twice its size,
/// with one maximizing sub-family as witness. Depth-first search over pairs in
/// canonical order with rank-based pruning; guarded to 24 pairs.
pub fn matching_number(oracle: &RankOracle, fam: &PairFamily) -> Result<(usize, Vec<usize>)> {
    if fam.len() > MATCHING_GUARD {
        return Err(Error::SizeGuard(format!(
            "matching search capped at {MATCHING_GUARD} pairs, got {}",
            fam.len()
        )));
    }
    let total_rank = oracle.rank(&fam.union_of(&(0..fam.len()).collect::<Vec<_>>()));
    let mut best: (usize, Vec<usize>) = (0, Vec::new());
    let mut chosen: Vec<usize> = Vec::new();
    search(oracle, fam, 0, total_rank, &mut chosen, &mut best);
    Ok(best)
}

fn search(
    oracle: &RankOracle,
    fam: &PairFamily,
    idx: usize,
    total_rank: usize,
    chosen: &mut Vec<usize>,
    best: &mut (usize, Vec<usize>),
) {
    if chosen.len() > best.0 {
        *best = (chosen.len(), chosen.clone());
    }
    if idx == fam.len() {
        return;
    }
    // Neither the remaining pair count nor the remaining rank headroom can
    // lift this branch above the incumbent: prune.
    let headroom = (total_rank - 2 * chosen.len()) / 2;
    let potential = chosen.len() + (fam.len() - idx).min(headroom);
    if potential <= best.0 {
        return;
    }
    // Include pair `idx` if the union stays fully independent.
    chosen.push(idx);
    let union = fam.union_of(chosen);
    if union.len() == 2 * chosen.len() && oracle.rank(&union) == union.len() {
        search(oracle, fam, idx + 1, total_rank, chosen, best);
    }
    chosen.pop();
    // Exclude pair `idx`.
    search(oracle, fam, idx + 1, total_rank, chosen, best);
}

/// Evaluates the Dress-Lovász expression
/// `r(Z) + sum_i floor((r(Z U union(H_i)) - r(Z)) / 2)` for a certificate.
/// Errors if `Z` is not a flat or the groups do not partition the family.
pub fn dl_bound(
    oracle: &RankOracle,
    fam: &PairFamily,
    cert: &MatchingCertificate,
) -> Result<usize> {
    let mut flat: Vec<Edge> = cert.flat.clone();
    flat.sort_unstable();
    flat.dedup();
    if flat.len() != cert.flat.len() {
        return Err(Error::Precondition("certificate flat repeats edges".into()));
    }
    if closure(oracle, &flat, None) != flat {
        return Err(Error::Precondition("certificate set is not a flat".into()));
    }
    let mut seen = vec![false; fam.len()];
    for group in &cert.groups {
        for &i in group {
            if i >= fam.len() || seen[i] {
                return Err(Error::Precondition(
                    "certificate groups do not partition the pair family".into(),
                ));
            }
            seen[i] = true;
        }
    }
    if !seen.iter().all(|&s| s) {
        return Err(Error::Precondition(
            "certificate groups do not cover the pair family".into(),
        ));
    }
    let base = oracle.rank(&flat);
    let mut value = base;
    for group in &cert.groups {
        let mut union: BTreeSet<Edge> = flat.iter().copied().collect();
        for &i in group {
            union.insert(fam.pairs[i].0);
            union.insert(fam.pairs[i].1);
        }
        let edges: Vec<Edge> = union.into_iter().collect();
        value += (oracle.rank(&edges) - base) / 2;
    }
    Ok(value)
}

/// The `K_{2m+2,2m+3}` matroid-matching instance in dimension `d = 2m`: the
/// pairs couple the two stars of `x_{2i-1}` and `x_{2i}` at each `y_j`,
/// partitioning the edge set.
pub fn k67_matching_instance(m: usize) -> Result<(Graph, PairFamily, usize)> {
    if m < 2 {
        return Err(Error::Precondition(
            "the matching instance needs m >= 2".into(),
        ));
    }
    let left = 2 * m + 2;
    let right = 2 * m + 3;
    let graph = complete_bipartite(left, right)?;
    let mut pairs = Vec::with_capacity((m + 1) * right);
    for i in 0..m + 1 {
        for j in 0..right {
            let y = left + j;
            pairs.push((Edge::new(2 * i, y), Edge::new(2 * i + 1, y)));
        }
    }
    Ok((graph, PairFamily::new(pairs)?, 2 * m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::complete;
    use crate::rigidity::{Backend, OracleParams};

    #[test]
    fn two_disjoint_edges_in_a_big_graphic_matroid() {
        let fam = PairFamily::new(vec![
            (Edge::new(0, 1), Edge::new(2, 3)),
            (Edge::new(4, 5), Edge::new(6, 7)),
        ])
        .unwrap();
        let oracle = OracleParams::new(1).backend(Backend::Graphic).oracle(8);
        let (nu, witness) = matching_number(&oracle, &fam).unwrap();
        assert_eq!(nu, 2);
        assert_eq!(witness, vec![0, 1]);
    }

    #[test]
    fn rank_ceiling_inside_a_triangle() {
        let t = complete(3).unwrap();
        let e = t.edges();
        let fam = PairFamily::new(vec![(e[0], e[1]), (e[0], e[2]), (e[1], e[2])]).unwrap();
        let oracle = OracleParams::new(1).backend(Backend::Graphic).oracle(3);
        let (nu, _) = matching_number(&oracle, &fam).unwrap();
        assert_eq!(nu, 1);
    }

    #[test]
    fn instance_shape() {
        let (graph, fam, dim) = k67_matching_instance(2).unwrap();
        assert_eq!(dim, 4);
        assert_eq!(graph.edge_count(), 42);
        assert_eq!(fam.len(), 21);
        // The pairs partition the edge set.
        let union = fam.union_of(&(0..fam.len()).collect::<Vec<_>>());
        assert_eq!(union, graph.edges().to_vec());
        assert!(k67_matching_instance(1).is_err());
    }

    #[test]
    fn removing_two_pairs_with_distinct_centers_leaves_independence() {
        let (graph, fam, dim) = k67_matching_instance(2).unwrap();
        let oracle = OracleParams::new(dim).oracle_for(&graph);
        // Pairs 0 and 8 sit at different y-vertices for different i.
        let (a, b) = (0usize, 8usize);
        assert_ne!(fam.pairs()[a].0.v(), fam.pairs()[b].0.v());
        let keep: Vec<usize> = (0..fam.len()).filter(|&i| i != a && i != b).collect();
        let rest = fam.union_of(&keep);
        assert!(oracle.is_independent(&rest));
    }

    #[test]
    fn removing_any_single_pair_keeps_a_circuit() {
        let (graph, fam, dim) = k67_matching_instance(2).unwrap();
        let oracle = OracleParams::new(dim).oracle_for(&graph);
        for skip in 0..fam.len() {
            let keep: Vec<usize> = (0..fam.len()).filter(|&i| i != skip).collect();
            let rest = fam.union_of(&keep);
            assert!(!oracle.is_independent(&rest), "pair {skip}");
        }
    }

    #[test]
    fn dl_bound_formula_collapses() {
        let fam = PairFamily::new(vec![
            (Edge::new(0, 1), Edge::new(2, 3)),
            (Edge::new(4, 5), Edge::new(6, 7)),
        ])
        .unwrap();
        let oracle = OracleParams::new(1).backend(Backend::Graphic).oracle(8);
        let single = MatchingCertificate::single_group(&fam);
        // Z = empty, one group: floor(r(union) / 2).
        assert_eq!(dl_bound(&oracle, &fam, &single).unwrap(), 2);
        let singles = MatchingCertificate::singletons(&fam);
        assert_eq!(dl_bound(&oracle, &fam, &singles).unwrap(), 2);
    }

    #[test]
    fn dl_bound_rejects_bad_certificates() {
        let fam = PairFamily::new(vec![(Edge::new(0, 1), Edge::new(1, 2))]).unwrap();
        let oracle = OracleParams::new(1).backend(Backend::Graphic).oracle(4);
        // Not a flat: a spanning path of a triangle closes to the triangle.
        let cert = MatchingCertificate {
            flat: vec![Edge::new(0, 1), Edge::new(1, 2)],
            groups: vec![vec![0]],
        };
        assert!(dl_bound(&oracle, &fam, &cert).is_err());
        // Not a partition.
        let cert = MatchingCertificate {
            flat: vec![],
            groups: vec![],
        };
        assert!(dl_bound(&oracle, &fam, &cert).is_err());
        let cert = MatchingCertificate {
            flat: vec![],
            groups: vec![vec![0], vec![0]],
        };
        assert!(dl_bound(&oracle, &fam, &cert).is_err());
    }

    #[test]
    fn nu_is_monotone_under_adding_pairs() {
        let oracle = OracleParams::new(1).backend(Backend::Graphic).oracle(9);
        let base = vec![
            (Edge::new(0, 1), Edge::new(2, 3)),
            (Edge::new(3, 4), Edge::new(4, 5)),
        ];
        let fam1 = PairFamily::new(base.clone()).unwrap();
        let mut extended = base;
        extended.push((Edge::new(6, 7), Edge::new(7, 8)));
        let fam2 = PairFamily::new(extended).unwrap();
        let (nu1, _) = matching_number(&oracle, &fam1).unwrap();
        let (nu2, _) = matching_number(&oracle, &fam2).unwrap();
        assert!(nu2 >= nu1);
    }

    #[test]
    fn pair_family_json_round_trip() {
        let (_, fam, _) = k67_matching_instance(2).unwrap();
        let json = serde_json::to_string(&fam).unwrap();
        let parsed: PairFamily = serde_json::from_str(&json).unwrap();
        assert_eq!(parsed, fam);
        assert!(serde_json::from_str::<PairFamily>(r#"{"pairs":[[[0,1],[0,1]]]}"#).is_err());
    }
}
