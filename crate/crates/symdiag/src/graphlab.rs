//! Subgraphs of the complete graph, their cycle spaces, and the signed edge
//! representation.
//!
//! A [`SimpleGraph`] is a set of edges of `K_n` (2-subsets of the vertex
//! labels, stored 0-based and lexicographically sorted); its vertex set is
//! the union of the edges, so there are no isolated vertices by
//! construction.  The cycle rank is `c = l − v + k` (edges − vertices +
//! components).
//!
//! The stabilizer `𝔖_Γ ⊆ S_n` acts on the formal span `W_Γ` of the edges by
//! signed permutations: `σ · e_I = ± e_{σ(I)}`, with `−1` exactly when `σ`
//! reverses the increasing order of `I`'s endpoints.  The boundary map
//! `∂ : e_{ij} ↦ e_j − e_i` is equivariant, and the cycle representation
//! `q_Γ = ker ∂` is spanned by the oriented fundamental cycles of a
//! lex-greedy spanning forest.  Characters of `q_Γ` are evaluated through
//! the equivariant splitting `χ_q = χ_W − χ_{V} + χ_{components}`.

use crate::linalg::QMatrix;
use crate::symgroup::{PermGroup, Permutation};
use crate::{rat, Rat};
use num::traits::Zero;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("edge ({0}, {1}) is out of range or degenerate")]
    BadEdge(usize, usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("edge count {0} out of range (1 ..= n(n−1)/2 = {1})")]
    BadEdgeCount(usize, usize),
    #[error("not a subgraph")]
    NotSubgraph,
}

/// A subgraph of `K_n` without isolated vertices; edges are 0-based ordered
/// pairs `(i, j)` with `i < j`, sorted lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimpleGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl SimpleGraph {
    pub fn new(n: usize, mut edges: Vec<(usize, usize)>) -> Result<Self, GraphError> {
        for e in edges.iter_mut() {
            if e.0 > e.1 {
                *e = (e.1, e.0);
            }
            if e.0 == e.1 || e.1 >= n {
                return Err(GraphError::BadEdge(e.0, e.1));
            }
        }
        edges.sort_unstable();
        for w in edges.windows(2) {
            if w[0] == w[1] {
                return Err(GraphError::DuplicateEdge(w[0].0, w[0].1));
            }
        }
        Ok(SimpleGraph { n, edges })
    }

    /// The triangle `{12, 13, 23}` inside `K_n`.
    pub fn k3(n: usize) -> Self {
        SimpleGraph::new(n, vec![(0, 1), (0, 2), (1, 2)]).unwrap()
    }

    /// Triangle plus pendant edge `{12, 13, 23, 14}` inside `K_4`.
    pub fn k3_plus_edge() -> Self {
        SimpleGraph::new(4, vec![(0, 1), (0, 2), (1, 2), (0, 3)]).unwrap()
    }

    /// The 4-cycle `{12, 23, 34, 14}` (the walk 1→2→3→4→1) inside `K_4`.
    pub fn c4() -> Self {
        SimpleGraph::new(4, vec![(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap()
    }

    /// The 4-cycle plus one chord: `{12, 23, 34, 14, 13}`.
    pub fn c4_plus_chord() -> Self {
        SimpleGraph::new(4, vec![(0, 1), (1, 2), (2, 3), (0, 3), (0, 2)]).unwrap()
    }

    /// The complete graph `K_4`.
    pub fn k4() -> Self {
        SimpleGraph::new(4, (0..4).flat_map(|i| ((i + 1)..4).map(move |j| (i, j))).collect())
            .unwrap()
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// Position of an edge in the sorted edge list.
    pub fn edge_index(&self, i: usize, j: usize) -> Option<usize> {
        let e = if i < j { (i, j) } else { (j, i) };
        self.edges.binary_search(&e).ok()
    }

    /// Vertices actually covered (sorted).
    pub fn vertices(&self) -> Vec<usize> {
        let mut vs: Vec<usize> = self.edges.iter().flat_map(|&(i, j)| [i, j]).collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices().len()
    }

    /// Connected components of the covered vertices (each sorted; the list
    /// is sorted by minimum vertex).
    pub fn components(&self) -> Vec<Vec<usize>> {
        let vs = self.vertices();
        let mut parent: std::collections::HashMap<usize, usize> =
            vs.iter().map(|&v| (v, v)).collect();
        fn find(parent: &mut std::collections::HashMap<usize, usize>, v: usize) -> usize {
            let p = parent[&v];
            if p == v {
                v
            } else {
                let r = find(parent, p);
                parent.insert(v, r);
                r
            }
        }
        for &(i, j) in &self.edges {
            let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
            if ri != rj {
                parent.insert(ri.max(rj), ri.min(rj));
            }
        }
        let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
        for &v in &vs {
            let r = find(&mut parent, v);
            groups.entry(r).or_default().push(v);
        }
        groups.into_values().collect()
    }

    pub fn num_components(&self) -> usize {
        self.components().len()
    }

    /// Cycle rank `c = l − v + k`.
    pub fn cycle_rank(&self) -> usize {
        self.num_edges() + self.num_components() - self.num_vertices()
    }

    pub fn is_acyclic(&self) -> bool {
        self.cycle_rank() == 0
    }

    pub fn is_subgraph_of(&self, other: &SimpleGraph) -> bool {
        self.n == other.n && self.edges.iter().all(|e| other.edges.binary_search(e).is_ok())
    }

    /// Image under a permutation of the ambient vertices.
    pub fn apply(&self, sigma: &Permutation) -> SimpleGraph {
        assert_eq!(sigma.degree(), self.n);
        SimpleGraph::new(
            self.n,
            self.edges
                .iter()
                .map(|&(i, j)| (sigma.apply(i), sigma.apply(j)))
                .collect(),
        )
        .expect("permutation image is a valid graph")
    }

    /// The stabilizer `𝔖_Γ = { σ ∈ S_n : σ(E_Γ) = E_Γ }`.
    pub fn stabilizer(&self) -> PermGroup {
        let sn = PermGroup::symmetric(self.n);
        let fixing: Vec<Permutation> = sn
            .elements()
            .iter()
            .filter(|s| &self.apply(s) == self)
            .cloned()
            .collect();
        PermGroup::generate(self.n, &fixing)
    }

    /// JSON form: sorted edge list with 1-based labels, e.g. `[[1,2],[1,3]]`.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.edges
                .iter()
                .map(|&(i, j)| serde_json::json!([i + 1, j + 1]))
                .collect(),
        )
    }

    pub fn from_json(n: usize, v: &serde_json::Value) -> Result<Self, GraphError> {
        let arr = v.as_array().ok_or(GraphError::BadEdge(0, 0))?;
        let mut edges = Vec::with_capacity(arr.len());
        for item in arr {
            let pair = item.as_array().ok_or(GraphError::BadEdge(0, 0))?;
            let get = |k: usize| -> Result<usize, GraphError> {
                pair.get(k)
                    .and_then(|x| x.as_u64())
                    .map(|x| x as usize)
                    .ok_or(GraphError::BadEdge(0, 0))
            };
            let (i, j) = (get(0)?, get(1)?);
            if i == 0 || j == 0 {
                return Err(GraphError::BadEdge(i, j));
            }
            edges.push((i - 1, j - 1));
        }
        SimpleGraph::new(n, edges)
    }

    /// Compact display: `12.13.23` style (1-based vertex pairs).
    pub fn label(&self) -> String {
        self.edges
            .iter()
            .map(|&(i, j)| format!("{}{}", i + 1, j + 1))
            .collect::<Vec<_>>()
            .join(".")
    }
}

/// All `C(n(n−1)/2, l)` subgraphs of `K_n` with exactly `l` edges, in
/// deterministic (lexicographic) order.
pub fn enumerate_graphs(n: usize, l: usize) -> Result<Vec<SimpleGraph>, GraphError> {
    let max = n * (n - 1) / 2;
    if l == 0 || l > max {
        return Err(GraphError::BadEdgeCount(l, max));
    }
    let all_edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
        .collect();
    let mut out = Vec::new();
    let mut pick = vec![0usize; l];
    subsets(&all_edges, 0, 0, &mut pick, &mut |idxs| {
        let edges = idxs.iter().map(|&k| all_edges[k]).collect();
        out.push(SimpleGraph { n, edges });
    });
    Ok(out)
}

fn subsets(
    all: &[(usize, usize)],
    start: usize,
    depth: usize,
    pick: &mut Vec<usize>,
    f: &mut impl FnMut(&[usize]),
) {
    if depth == pick.len() {
        f(pick);
        return;
    }
    for k in start..all.len() {
        pick[depth] = k;
        subsets(all, k + 1, depth + 1, pick, f);
    }
}

/// Partition a list of graphs (same ambient `n`) into isomorphism classes
/// under the `S_n` action; each class is keyed by its lex-least member.
/// Returns classes sorted by representative.
pub fn iso_classes(graphs: &[SimpleGraph]) -> Vec<(SimpleGraph, Vec<SimpleGraph>)> {
    if graphs.is_empty() {
        return Vec::new();
    }
    let n = graphs[0].ambient();
    let sn = PermGroup::symmetric(n);
    let mut classes: std::collections::BTreeMap<SimpleGraph, Vec<SimpleGraph>> = Default::default();
    for g in graphs {
        assert_eq!(g.ambient(), n, "mixed ambient vertex counts");
        let rep = sn
            .elements()
            .iter()
            .map(|s| g.apply(s))
            .min()
            .expect("nonempty group");
        classes.entry(rep).or_default().push(g.clone());
    }
    classes.into_iter().collect()
}

/// The canonical (lex-least) representative of a graph's isomorphism class.
pub fn canonical_rep(g: &SimpleGraph) -> SimpleGraph {
    let sn = PermGroup::symmetric(g.ambient());
    sn.elements().iter().map(|s| g.apply(s)).min().unwrap()
}

/// An oriented cycle: a closed walk with distinct vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrientedCycle {
    /// Vertex sequence; the walk closes from the last vertex back to the
    /// first.
    pub walk: Vec<usize>,
}

impl OrientedCycle {
    /// `η_{I,γ}` for the edge `I = {i < j}`: `+1` iff `j` immediately
    /// follows `i` in the walk (cyclically), `−1` iff `i` follows `j`,
    /// panic if the edge is not on the cycle.
    pub fn eta(&self, i: usize, j: usize) -> i64 {
        let (lo, hi) = if i < j { (i, j) } else { (j, i) };
        let m = self.walk.len();
        for a in 0..m {
            let (u, v) = (self.walk[a], self.walk[(a + 1) % m]);
            if (u, v) == (lo, hi) {
                return 1;
            }
            if (u, v) == (hi, lo) {
                return -1;
            }
        }
        panic!("edge ({lo}, {hi}) not on cycle");
    }

    /// Does the walk traverse this edge (in either direction)?
    pub fn uses_edge(&self, i: usize, j: usize) -> bool {
        let m = self.walk.len();
        (0..m).any(|a| {
            let (u, v) = (self.walk[a], self.walk[(a + 1) % m]);
            (u, v) == (i, j) || (u, v) == (j, i)
        })
    }

    /// The cycle vector `e_γ = Σ_I η_{I,γ} e_I` over the graph's edges.
    pub fn edge_vector(&self, g: &SimpleGraph) -> Vec<Rat> {
        g.edges()
            .iter()
            .map(|&(i, j)| {
                if self.uses_edge(i, j) {
                    rat(self.eta(i, j))
                } else {
                    Rat::zero()
                }
            })
            .collect()
    }
}

/// Cycle rank, an oriented fundamental cycle basis, and the cycle-space
/// basis vectors inside `W_Γ`.
#[derive(Clone, Debug)]
pub struct CycleData {
    pub rank: usize,
    pub cycles: Vec<OrientedCycle>,
    /// `e_{γ_i}` as coefficient vectors over the graph's edge list.
    pub q_basis: Vec<Vec<Rat>>,
}

/// Compute the cycle data with a lex-greedy spanning forest: edges are
/// scanned in lexicographic order; each edge joining two forest components
/// becomes a tree edge, every other edge closes one fundamental cycle.  The
/// fundamental cycle of a non-tree edge `{i < j}` is oriented to start
/// `i → j` and return through the forest.
pub fn cycle_data(g: &SimpleGraph) -> CycleData {
    let mut adj: std::collections::HashMap<usize, Vec<usize>> = Default::default();
    let mut tree: Vec<(usize, usize)> = Vec::new();
    let mut extra: Vec<(usize, usize)> = Vec::new();
    for &(i, j) in g.edges() {
        // connected in current forest?
        if forest_path(&adj, i, j).is_some() {
            extra.push((i, j));
        } else {
            adj.entry(i).or_default().push(j);
            adj.entry(j).or_default().push(i);
            tree.push((i, j));
        }
    }
    let mut cycles = Vec::new();
    for &(i, j) in &extra {
        let path = forest_path(&adj, j, i).expect("tree connects endpoints");
        // walk: i → j → (tree path j … i), dropping the final repeat of i.
        let mut walk = vec![i];
        walk.extend(path[..path.len() - 1].iter().copied());
        cycles.push(OrientedCycle { walk });
    }
    let q_basis = cycles.iter().map(|c| c.edge_vector(g)).collect();
    CycleData { rank: g.cycle_rank(), cycles, q_basis }
}

/// Vertex path from `a` to `b` in the forest (inclusive), if connected.
fn forest_path(
    adj: &std::collections::HashMap<usize, Vec<usize>>,
    a: usize,
    b: usize,
) -> Option<Vec<usize>> {
    if a == b {
        return Some(vec![a]);
    }
    let mut prev: std::collections::HashMap<usize, usize> = Default::default();
    let mut queue = std::collections::VecDeque::new();
    queue.push_back(a);
    prev.insert(a, a);
    while let Some(u) = queue.pop_front() {
        if u == b {
            let mut path = vec![b];
            let mut cur = b;
            while cur != a {
                cur = prev[&cur];
                path.push(cur);
            }
            path.reverse();
            return Some(path);
        }
        for &w in adj.get(&u).map(|v| v.as_slice()).unwrap_or(&[]) {
            if !prev.contains_key(&w) {
                prev.insert(w, u);
                queue.push_back(w);
            }
        }
    }
    None
}

/// The signed edge representation `W_Γ` of (a subgroup of) the stabilizer,
/// with its boundary map and cycle subspace.
#[derive(Clone, Debug)]
pub struct EdgeRep {
    pub graph: SimpleGraph,
    pub group: PermGroup,
}

impl EdgeRep {
    /// Build on the full stabilizer.
    pub fn on_stabilizer(graph: SimpleGraph) -> Self {
        let group = graph.stabilizer();
        EdgeRep { graph, group }
    }

    /// Build on a given subgroup of the stabilizer (asserted).
    pub fn on_subgroup(graph: SimpleGraph, group: PermGroup) -> Self {
        for s in group.elements() {
            assert_eq!(graph.apply(s), graph, "group must stabilize the graph");
        }
        EdgeRep { graph, group }
    }

    /// Signed permutation matrix of `σ` on the edge basis.
    pub fn matrix(&self, sigma: &Permutation) -> QMatrix {
        let l = self.graph.num_edges();
        let mut m = QMatrix::zero(l, l);
        for (a, &(i, j)) in self.graph.edges().iter().enumerate() {
            let (si, sj) = (sigma.apply(i), sigma.apply(j));
            let b = self
                .graph
                .edge_index(si, sj)
                .expect("group stabilizes the edge set");
            let sign = if si < sj { rat(1) } else { rat(-1) };
            // column a maps to row b with the orientation sign
            m.set(b, a, sign);
        }
        m
    }

    /// Character of `W_Γ` at `σ`: sum of orientation signs over fixed edges.
    pub fn w_character(&self, sigma: &Permutation) -> i64 {
        let mut tr = 0;
        for &(i, j) in self.graph.edges() {
            let (si, sj) = (sigma.apply(i), sigma.apply(j));
            if (si.min(sj), si.max(sj)) == (i, j) {
                tr += if si < sj { 1 } else { -1 };
            }
        }
        tr
    }

    /// The boundary map `∂ : W_Γ → span{e_v : v ∈ V_Γ}`, `e_{ij} ↦ e_j − e_i`
    /// (rows indexed by the sorted vertex list).
    pub fn boundary(&self) -> QMatrix {
        let vs = self.graph.vertices();
        let vidx: std::collections::HashMap<usize, usize> =
            vs.iter().enumerate().map(|(a, &v)| (v, a)).collect();
        let mut m = QMatrix::zero(vs.len(), self.graph.num_edges());
        for (a, &(i, j)) in self.graph.edges().iter().enumerate() {
            m.set(vidx[&j], a, rat(1));
            m.set(vidx[&i], a, rat(-1));
        }
        m
    }

    /// Character of the cycle representation `q_Γ = ker ∂` at `σ`, via the
    /// equivariant splitting `χ_q = χ_W − χ_vertices + χ_components`.
    pub fn q_character(&self, sigma: &Permutation) -> i64 {
        let fixed_vertices = self
            .graph
            .vertices()
            .iter()
            .filter(|&&v| sigma.apply(v) == v)
            .count() as i64;
        let comps = self.graph.components();
        let fixed_components = comps
            .iter()
            .filter(|comp| {
                let mut image: Vec<usize> = comp.iter().map(|&v| sigma.apply(v)).collect();
                image.sort_unstable();
                image == **comp
            })
            .count() as i64;
        self.w_character(sigma) - fixed_vertices + fixed_components
    }
}

/// Sign of the *unsigned* permutation induced by `σ` on the edge set.
pub fn edge_sign(graph: &SimpleGraph, sigma: &Permutation) -> i64 {
    let l = graph.num_edges();
    let mut images = Vec::with_capacity(l);
    for &(i, j) in graph.edges() {
        let (si, sj) = (sigma.apply(i), sigma.apply(j));
        images.push(
            graph
                .edge_index(si, sj)
                .expect("sigma must stabilize the edge set"),
        );
    }
    Permutation::from_images(images).sign()
}

/// The insertion sign `ε_{Γ,Γ′}` for `Γ ⊆ Γ′`: for a single added edge it is
/// `(−1)^{a−1}` where `a` is the (1-based) position of the new edge in the
/// lex-sorted edge list of `Γ′`; for several added edges the signs multiply
/// along the chain that inserts the missing edges in lexicographic order.
pub fn epsilon_sign(sub: &SimpleGraph, sup: &SimpleGraph) -> Result<i64, GraphError> {
    if !sub.is_subgraph_of(sup) {
        return Err(GraphError::NotSubgraph);
    }
    let missing: Vec<(usize, usize)> = sup
        .edges()
        .iter()
        .filter(|e| sub.edges.binary_search(e).is_err())
        .copied()
        .collect();
    let mut current = sub.clone();
    let mut sign = 1i64;
    for e in missing {
        let mut edges = current.edges.clone();
        edges.push(e);
        let next = SimpleGraph::new(current.n, edges).expect("valid insertion");
        let a = next.edges.binary_search(&e).unwrap(); // 0-based position
        if a % 2 == 1 {
            sign = -sign;
        }
        current = next;
    }
    Ok(sign)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_graphs(4, 3).unwrap().len(), 20);
        assert_eq!(enumerate_graphs(4, 2).unwrap().len(), 15);
        assert_eq!(enumerate_graphs(3, 3).unwrap().len(), 1);
        assert_eq!(enumerate_graphs(3, 3).unwrap()[0], SimpleGraph::k3(3));
        assert!(enumerate_graphs(4, 7).is_err());
        assert!(enumerate_graphs(4, 0).is_err());
    }

    #[test]
    fn iso_classification() {
        // (4,2): 2 classes — intersecting pair vs disjoint pair.
        let classes = iso_classes(&enumerate_graphs(4, 2).unwrap());
        assert_eq!(classes.len(), 2);
        let sizes: Vec<usize> = classes.iter().map(|(_, v)| v.len()).collect();
        assert_eq!(sizes.iter().sum::<usize>(), 15);
        // (4,3): A_3 path, B_3 star, K_3.
        let classes = iso_classes(&enumerate_graphs(4, 3).unwrap());
        assert_eq!(classes.len(), 3);
        // single-edge graphs: one class.
        assert_eq!(iso_classes(&enumerate_graphs(4, 1).unwrap()).len(), 1);
    }

    #[test]
    fn non_acyclic_k4_classes() {
        // All subgraphs of K_4 (any edge count) with c ≥ 1: exactly the five
        // classes K_3, K_3∪J, C_4, C_4∪L, K_4.
        let mut non_acyclic = Vec::new();
        for l in 1..=6 {
            for g in enumerate_graphs(4, l).unwrap() {
                if !g.is_acyclic() {
                    non_acyclic.push(g);
                }
            }
        }
        let classes = iso_classes(&non_acyclic);
        assert_eq!(classes.len(), 5);
        let reps: Vec<SimpleGraph> = classes.iter().map(|(r, _)| r.clone()).collect();
        assert!(reps.contains(&canonical_rep(&SimpleGraph::k3(4))));
        assert!(reps.contains(&canonical_rep(&SimpleGraph::k3_plus_edge())));
        assert!(reps.contains(&canonical_rep(&SimpleGraph::c4())));
        assert!(reps.contains(&canonical_rep(&SimpleGraph::c4_plus_chord())));
        assert!(reps.contains(&SimpleGraph::k4()));
    }

    #[test]
    fn cycle_ranks() {
        assert_eq!(SimpleGraph::k3(3).cycle_rank(), 1);
        assert_eq!(SimpleGraph::k4().cycle_rank(), 3);
        assert_eq!(SimpleGraph::c4().cycle_rank(), 1);
        assert_eq!(SimpleGraph::c4_plus_chord().cycle_rank(), 2);
        assert_eq!(SimpleGraph::k3_plus_edge().cycle_rank(), 1);
        // two disjoint edges: acyclic
        let b2 = SimpleGraph::new(4, vec![(0, 1), (2, 3)]).unwrap();
        assert_eq!(b2.cycle_rank(), 0);
        assert!(b2.is_acyclic());
        assert_eq!(cycle_data(&b2).cycles.len(), 0);
    }

    #[test]
    fn stabilizer_orders_match() {
        assert_eq!(SimpleGraph::k3(4).stabilizer().order(), 6);
        assert_eq!(SimpleGraph::k3_plus_edge().stabilizer().order(), 2);
        assert_eq!(SimpleGraph::c4().stabilizer().order(), 8);
        assert_eq!(SimpleGraph::c4_plus_chord().stabilizer().order(), 4);
        assert_eq!(SimpleGraph::k4().stabilizer().order(), 24);
    }

    #[test]
    fn split_sequence_order_formula() {
        // |𝔖_Γ| = (n − v)! · Π_componentwise |Aut| · Π_classes (multiplicity)!
        // Exhaustive over all subgraphs of K_4 and all of K_5 with ≤ 4 edges.
        for (n, lmax) in [(4usize, 6usize), (5, 4)] {
            for l in 1..=lmax {
                for g in enumerate_graphs(n, l).unwrap() {
                    let vbar = n - g.num_vertices();
                    let mut expected = (1..=vbar).product::<usize>();
                    // group components by canonical iso type
                    let comps = g.components();
                    let mut by_type: std::collections::BTreeMap<SimpleGraph, Vec<SimpleGraph>> =
                        Default::default();
                    for comp in &comps {
                        let sub_edges: Vec<(usize, usize)> = g
                            .edges()
                            .iter()
                            .filter(|(i, _)| comp.contains(i))
                            .copied()
                            .collect();
                        // relabel to a standalone graph on its own vertices
                        let mut map = std::collections::HashMap::new();
                        for (a, &v) in comp.iter().enumerate() {
                            map.insert(v, a);
                        }
                        let local = SimpleGraph::new(
                            comp.len(),
                            sub_edges.iter().map(|&(i, j)| (map[&i], map[&j])).collect(),
                        )
                        .unwrap();
                        let rep = canonical_rep(&local);
                        by_type.entry(rep).or_default().push(local);
                    }
                    for (rep, members) in &by_type {
                        let aut = rep.stabilizer().order()
                            / (1..=(rep.ambient() - rep.num_vertices())).product::<usize>().max(1);
                        expected *= aut.pow(members.len() as u32);
                        expected *= (1..=members.len()).product::<usize>();
                    }
                    assert_eq!(
                        g.stabilizer().order(),
                        expected,
                        "graph {} on K_{}",
                        g.label(),
                        n
                    );
                }
            }
        }
    }

    #[test]
    fn cycle_vectors_span_kernel_of_boundary() {
        // dim ker ∂ = c for every subgraph of K_5 (and the vectors lie in
        // the kernel and are independent).
        for l in 1..=10 {
            for g in enumerate_graphs(5, l).unwrap() {
                let rep = EdgeRep::on_stabilizer(g.clone());
                let boundary = rep.boundary();
                let c = g.cycle_rank();
                assert_eq!(
                    boundary.cols - boundary.rank(),
                    c,
                    "kernel dim for {}",
                    g.label()
                );
                let data = cycle_data(&g);
                assert_eq!(data.cycles.len(), c);
                let mut span = crate::linalg::RowSpace::new(g.num_edges());
                for vec in &data.q_basis {
                    // in kernel:
                    for r in 0..boundary.rows {
                        let mut s = Rat::zero();
                        for col in 0..boundary.cols {
                            s += boundary.get(r, col) * &vec[col];
                        }
                        assert!(s.is_zero());
                    }
                    assert!(span.insert(vec.clone()), "cycle vectors independent");
                }
            }
        }
    }

    #[test]
    fn signed_matrices_form_representation() {
        for g in [
            SimpleGraph::k3(4),
            SimpleGraph::k3_plus_edge(),
            SimpleGraph::c4(),
            SimpleGraph::c4_plus_chord(),
            SimpleGraph::k4(),
        ] {
            let rep = EdgeRep::on_stabilizer(g);
            for s in rep.group.elements() {
                for t in rep.group.elements() {
                    let st = s.compose(t);
                    assert_eq!(
                        rep.matrix(&st),
                        rep.matrix(s).mul(&rep.matrix(t)),
                        "representation law fails"
                    );
                }
            }
        }
    }

    #[test]
    fn w_character_of_c4_matches_pinned_values() {
        // On the pinned class representatives (e, σ=(24), σρ=(12)(34),
        // ρ=(1234), ρ²=(13)(24)) the signed edge character of C_4 is
        // (4, 0, −2, 0, 0).
        let rep = EdgeRep::on_stabilizer(SimpleGraph::c4());
        assert_eq!(rep.group.order(), 8);
        let reps = [
            Permutation::identity(4),
            Permutation::from_cycles(4, &[&[1, 3]]),
            Permutation::from_cycles(4, &[&[0, 1], &[2, 3]]),
            Permutation::from_cycles(4, &[&[0, 1, 2, 3]]),
            Permutation::from_cycles(4, &[&[0, 2], &[1, 3]]),
        ];
        let values: Vec<i64> = reps.iter().map(|s| rep.w_character(s)).collect();
        assert_eq!(values, vec![4, 0, -2, 0, 0]);
        // and the trace of the matrix agrees with w_character
        for s in rep.group.elements() {
            let m = rep.matrix(s);
            let mut tr = Rat::zero();
            for a in 0..m.rows {
                tr += m.get(a, a);
            }
            assert_eq!(tr, rat(rep.w_character(s)));
        }
    }

    #[test]
    fn q_character_consistent_with_kernel_action() {
        // For each of the five classes, verify χ_q(σ) by explicitly acting
        // on the kernel basis and solving for the trace.
        for g in [
            SimpleGraph::k3(4),
            SimpleGraph::k3_plus_edge(),
            SimpleGraph::c4(),
            SimpleGraph::c4_plus_chord(),
            SimpleGraph::k4(),
        ] {
            let rep = EdgeRep::on_stabilizer(g.clone());
            let data = cycle_data(&g);
            assert_eq!(data.q_basis.len(), g.cycle_rank());
            for s in rep.group.elements() {
                let m = rep.matrix(s);
                // images of basis vectors
                let mut images: Vec<Vec<Rat>> = Vec::new();
                for vec in &data.q_basis {
                    let mut img = vec![Rat::zero(); g.num_edges()];
                    for r in 0..m.rows {
                        for col in 0..m.cols {
                            if !m.get(r, col).is_zero() {
                                let add = m.get(r, col) * &vec[col];
                                img[r] = &img[r] + &add;
                            }
                        }
                    }
                    images.push(img);
                }
                // solve images = coeffs * basis (c × c) via augmented rank
                // trick: express each image in the basis.
                let mut trace = Rat::zero();
                for (bi, img) in images.iter().enumerate() {
                    let coeffs = express_in_basis(&data.q_basis, img);
                    trace += &coeffs[bi];
                }
                assert_eq!(trace, rat(rep.q_character(s)), "graph {}", g.label());
            }
        }
    }

    fn express_in_basis(basis: &[Vec<Rat>], v: &[Rat]) -> Vec<Rat> {
        // Solve Σ c_i basis_i = v by Gaussian elimination on the transpose.
        let rows = v.len();
        let cols = basis.len();
        let mut m = QMatrix::zero(rows, cols + 1);
        for (c, b) in basis.iter().enumerate() {
            for r in 0..rows {
                m.set(r, c, b[r].clone());
            }
        }
        for r in 0..rows {
            m.set(r, cols, v[r].clone());
        }
        let ns = m.nullspace();
        // unique solution: kernel vector with last coordinate −1 (scaled)
        for vec in ns {
            if !vec[cols].is_zero() {
                let inv = -vec[cols].clone();
                return (0..cols)
                    .map(|c| {
                        let num = vec[c].clone();
                        num / inv.clone()
                    })
                    .collect();
            }
        }
        panic!("vector not in span");
    }

    #[test]
    fn edge_sign_examples() {
        // K_3 in S_3: ε is the sign character.
        let k3 = SimpleGraph::k3(3);
        for s in PermGroup::symmetric(3).elements() {
            assert_eq!(edge_sign(&k3, s), s.sign());
        }
        // C_4: −1 on ρ = (1234), +1 on σ = (24).
        let c4 = SimpleGraph::c4();
        assert_eq!(edge_sign(&c4, &Permutation::from_cycles(4, &[&[0, 1, 2, 3]])), -1);
        assert_eq!(edge_sign(&c4, &Permutation::from_cycles(4, &[&[1, 3]])), 1);
        // K_4: trivial character.
        let k4 = SimpleGraph::k4();
        for s in PermGroup::symmetric(4).elements() {
            assert_eq!(edge_sign(&k4, s), 1, "sigma {}", s.cycle_string());
        }
    }

    #[test]
    fn epsilon_sign_single_insertions() {
        // K_3 = {12,13,23}; insert (1,4): position in {12,13,14,23} is 3
        // (1-based) → (−1)^2 = +1.  Insert (3,4) into K_3: {12,13,23,34},
        // position 4 → −1.
        let k3 = SimpleGraph::k3(4);
        let plus14 = SimpleGraph::new(4, vec![(0, 1), (0, 2), (1, 2), (0, 3)]).unwrap();
        assert_eq!(epsilon_sign(&k3, &plus14).unwrap(), 1);
        let plus34 = SimpleGraph::new(4, vec![(0, 1), (0, 2), (1, 2), (2, 3)]).unwrap();
        assert_eq!(epsilon_sign(&k3, &plus34).unwrap(), -1);
        // lex-first insertion is always +1
        let sub = SimpleGraph::new(4, vec![(0, 2), (1, 2)]).unwrap();
        let sup = SimpleGraph::new(4, vec![(0, 1), (0, 2), (1, 2)]).unwrap();
        assert_eq!(epsilon_sign(&sub, &sup).unwrap(), 1);
        // error case
        let other = SimpleGraph::new(4, vec![(0, 3)]).unwrap();
        assert_eq!(epsilon_sign(&other, &sup).unwrap_err(), GraphError::NotSubgraph);
    }

    #[test]
    fn epsilon_sign_multiplicative_over_lex_chains() {
        // ε composes along chains that follow the lex insertion order: if
        // Γ″ = Γ ∪ {lex-first j missing edges} then
        // ε(Γ,Γ′) = ε(Γ,Γ″)·ε(Γ″,Γ′).  Exhaustive over subgraph pairs of
        // K_4 and every lex-prefix intermediate.
        let mut all: Vec<SimpleGraph> = Vec::new();
        for l in 1..=6 {
            all.extend(enumerate_graphs(4, l).unwrap());
        }
        let mut checked = 0usize;
        for g in &all {
            for h in &all {
                if !g.is_subgraph_of(h) || g == h {
                    continue;
                }
                let missing: Vec<(usize, usize)> = h
                    .edges()
                    .iter()
                    .filter(|e| g.edges().binary_search(e).is_err())
                    .copied()
                    .collect();
                for j in 1..missing.len() {
                    let mut mid_edges = g.edges().to_vec();
                    mid_edges.extend_from_slice(&missing[..j]);
                    let mid = SimpleGraph::new(4, mid_edges).unwrap();
                    let lhs = epsilon_sign(g, h).unwrap();
                    let rhs = epsilon_sign(g, &mid).unwrap() * epsilon_sign(&mid, h).unwrap();
                    assert_eq!(lhs, rhs);
                    checked += 1;
                }
            }
        }
        assert!(checked > 100, "checked {checked} chains");
    }

    #[test]
    fn epsilon_sign_anticommutes_on_squares() {
        // For Γ ⊂ Γ′ with two missing edges J_1 ≠ J_2, the two
        // one-edge-at-a-time paths carry opposite sign products — the
        // simplicial identity that makes the alternating-sum differential
        // square to zero.  Exhaustive over K_4.
        let mut all: Vec<SimpleGraph> = Vec::new();
        for l in 1..=6 {
            all.extend(enumerate_graphs(4, l).unwrap());
        }
        let mut checked = 0usize;
        for g in &all {
            for h in &all {
                if !g.is_subgraph_of(h) || h.num_edges() != g.num_edges() + 2 {
                    continue;
                }
                let missing: Vec<(usize, usize)> = h
                    .edges()
                    .iter()
                    .filter(|e| g.edges().binary_search(e).is_err())
                    .copied()
                    .collect();
                let via = |e: (usize, usize)| -> i64 {
                    let mut edges = g.edges().to_vec();
                    edges.push(e);
                    let mid = SimpleGraph::new(4, edges).unwrap();
                    epsilon_sign(g, &mid).unwrap() * epsilon_sign(&mid, h).unwrap()
                };
                assert_eq!(via(missing[0]), -via(missing[1]));
                checked += 1;
            }
        }
        assert!(checked > 50, "checked {checked} squares");
    }

    #[test]
    fn json_roundtrip() {
        let g = SimpleGraph::c4_plus_chord();
        let v = g.to_json();
        assert_eq!(
            serde_json::to_string(&v).unwrap(),
            "[[1,2],[1,3],[1,4],[2,3],[3,4]]"
        );
        assert_eq!(SimpleGraph::from_json(4, &v).unwrap(), g);
    }
}
