//! Brute-force multitor oracle and the closed-form answer it must match.
//!
//! For each edge `I = {a, b}` of a graph `Γ ⊆ K_n`, the ideal of the
//! pairwise diagonal `Δ_I ⊂ X^n` (with `X` the affine plane) is generated
//! by the regular sequence `x_a − x_b, y_a − y_b`; its Koszul complex
//! `K^•(F_I, s_I)` on a rank-2 free module resolves `O_{Δ_I}`.  Tensoring
//! these complexes over all edges of `Γ` — factors ordered
//! lexicographically by edge — produces one total Koszul complex whose
//! homology in position `−q` is the multitor `Tor_q(O_{Δ_{I_1}}, …)`.
//!
//! [`TotalKoszul`] computes that homology degree by degree with exact
//! sparse linear algebra on monomial bases and no theory whatsoever: this
//! is the oracle.  Next to it, [`multitor_rank`] and
//! [`multitor_character`] state the closed-form answer — a free module of
//! rank `C(d·c, q)` over the small-diagonal coordinate ring, carrying the
//! `𝔖_Γ`-character of `Λ^q(ℂ^d ⊗ q_Γ) ⊗ ε_{E_Γ}` — and the test suite
//! confronts the two, reading the internal-degree shifts off the oracle.

use crate::charlab::{
    isotypic_multiplicities, schur_from_power_traces, CharError, CharTable, ClassFunction,
    Partition,
};
use crate::graphlab::{edge_sign, iso_classes, EdgeRep, SimpleGraph};
use crate::linalg::{QMatrix, SparseMat};
use crate::symgroup::Permutation;
use crate::{rat, Rat};
use num::traits::Zero;
use std::collections::{BTreeMap, HashMap};
use thiserror::Error;

/// `dim X` — the affine plane, everywhere in this crate.
pub const DIM_X: usize = 2;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum KoszulError {
    #[error("internal degree {degree}: block needs {needed} columns, over the cap {cap}")]
    TooLarge { degree: usize, needed: usize, cap: usize },
    #[error("argument out of supported range: {0}")]
    OutOfRange(String),
}

/// Binomial coefficient as a machine integer (desk-scale arguments).
pub fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut out: usize = 1;
    for i in 0..k {
        out = out * (n - i) / (i + 1);
    }
    out
}

/// The Koszul factor attached to one edge: a rank-`DIM_X` free module with
/// frame `γ_I = (γ, δ)` and the section `s_I` whose components are the
/// coordinate differences cutting out the pairwise diagonal.
#[derive(Clone, Debug)]
pub struct KoszulFactor {
    pub n: usize,
    pub edge: (usize, usize),
}

impl KoszulFactor {
    pub fn new(n: usize, edge: (usize, usize)) -> Self {
        assert!(edge.0 < edge.1 && edge.1 < n);
        KoszulFactor { n, edge }
    }

    pub fn rank(&self) -> usize {
        DIM_X
    }

    /// Section components as `(coordinate, point_a, point_b)` triples, each
    /// standing for the linear form `x_{a,i} − x_{b,i}`.
    pub fn section(&self) -> Vec<(usize, usize, usize)> {
        (0..DIM_X).map(|i| (i, self.edge.0, self.edge.1)).collect()
    }

    /// The three-term complex `Λ²F → F → R`, degreewise dense matrices up
    /// to internal degree `tmax`.  Frame vectors carry internal degree 1.
    pub fn complex(&self, tmax: usize) -> GradedComplex {
        let graph = SimpleGraph::new(self.n, vec![self.edge]).unwrap();
        TotalKoszul::new(self.n, &graph).dense_complex(tmax)
    }
}

/// A bounded cochain complex presented degree by degree: position `p` maps
/// to position `p + 1`, and every internal degree `t` is a finite exact
/// linear-algebra problem.  Shared container for Koszul totals and for the
/// invariant resolution complexes.
#[derive(Clone, Debug)]
pub struct GradedComplex {
    pub position_names: Vec<String>,
    /// `dims[p][t]`: dimension of position `p` in internal degree `t`.
    pub dims: Vec<Vec<usize>>,
    /// `maps[p][t]`: matrix from position `p` to `p + 1` in degree `t`
    /// (`dims[p+1][t]` rows, `dims[p][t]` columns).
    pub maps: Vec<Vec<QMatrix>>,
}

/// Exactness data of one position in one internal degree.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct ExactnessReport {
    pub position: usize,
    pub degree: usize,
    pub dim: usize,
    pub rank_in: usize,
    pub rank_out: usize,
    pub exact: bool,
}

impl GradedComplex {
    pub fn num_positions(&self) -> usize {
        self.dims.len()
    }

    pub fn degree_cap(&self) -> usize {
        self.dims[0].len() - 1
    }

    /// `d² = 0` in every internal degree.
    pub fn check_d_squared(&self) -> bool {
        for p in 0..self.maps.len().saturating_sub(1) {
            for t in 0..=self.degree_cap() {
                let a = &self.maps[p][t];
                let b = &self.maps[p + 1][t];
                if a.cols == 0 || b.rows == 0 {
                    continue;
                }
                if !b.mul(a).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// Homology dimension at position `p`, internal degree `t`:
    /// `dim ker(out) − rank(in)`.
    pub fn homology_dim(&self, p: usize, t: usize) -> usize {
        let dim = self.dims[p][t];
        let rank_out = if p < self.maps.len() { self.maps[p][t].rank() } else { 0 };
        let rank_in = if p > 0 { self.maps[p - 1][t].rank() } else { 0 };
        dim - rank_out - rank_in
    }

    pub fn exactness(&self, p: usize, t: usize) -> ExactnessReport {
        let dim = self.dims[p][t];
        let rank_out = if p < self.maps.len() { self.maps[p][t].rank() } else { 0 };
        let rank_in = if p > 0 { self.maps[p - 1][t].rank() } else { 0 };
        ExactnessReport {
            position: p,
            degree: t,
            dim,
            rank_in,
            rank_out,
            exact: dim == rank_in + rank_out,
        }
    }
}

/// Monomials of total degree `deg` in `vars` variables, with an index map.
struct MonoTable {
    list: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
}

impl MonoTable {
    fn build(vars: usize, deg: usize) -> MonoTable {
        let mut list = Vec::new();
        let mut current = vec![0u32; vars];
        fn rec(pos: usize, left: u32, current: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            if pos + 1 == current.len() {
                current[pos] = left;
                out.push(current.clone());
                return;
            }
            for e in (0..=left).rev() {
                current[pos] = e;
                rec(pos + 1, left - e, current, out);
            }
            current[pos] = 0;
        }
        if vars == 0 {
            if deg == 0 {
                list.push(Vec::new());
            }
        } else {
            rec(0, deg as u32, &mut current, &mut list);
        }
        let index = list.iter().cloned().zip(0..).collect();
        MonoTable { list, index }
    }

    fn len(&self) -> usize {
        self.list.len()
    }
}

/// Cache of monomial tables keyed by degree (fixed variable count).
struct MonoCache {
    vars: usize,
    tables: HashMap<usize, MonoTable>,
}

impl MonoCache {
    fn new(vars: usize) -> Self {
        MonoCache { vars, tables: HashMap::new() }
    }

    fn table(&mut self, deg: usize) -> &MonoTable {
        let vars = self.vars;
        self.tables.entry(deg).or_insert_with(|| MonoTable::build(vars, deg))
    }
}

/// The total Koszul complex of a graph: the tensor product, in
/// lexicographic edge order, of the per-edge factors.  Equivalently the
/// Koszul complex of the rank-`2l` frame carrying one `(γ, δ)` pair per
/// edge.  The differential contracts with the section, preserving the
/// bidegree (x-degree, y-degree); all linear algebra runs block by block
/// over that bigrading.
pub struct TotalKoszul {
    pub n: usize,
    pub graph: SimpleGraph,
    /// Frame vectors in order: for the `e`-th edge `(a, b)` (lex order) and
    /// coordinate `i`, frame `2e + i` maps to the form `x_{a,i} − x_{b,i}`.
    frames: Vec<(usize, usize, usize)>,
}

impl TotalKoszul {
    pub fn new(n: usize, graph: &SimpleGraph) -> Self {
        assert_eq!(graph.ambient(), n);
        let mut frames = Vec::new();
        for &(a, b) in graph.edges() {
            for i in 0..DIM_X {
                frames.push((a, b, i));
            }
        }
        TotalKoszul { n, graph: graph.clone(), frames }
    }

    pub fn num_frames(&self) -> usize {
        self.frames.len()
    }

    /// All sorted `m`-subsets of the frame set.
    fn wedges(&self, m: usize) -> Vec<Vec<usize>> {
        let nf = self.num_frames();
        let mut out = Vec::new();
        let mut current = Vec::new();
        fn rec(start: usize, left: usize, nf: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if left == 0 {
                out.push(current.clone());
                return;
            }
            for f in start..=nf.saturating_sub(left) {
                current.push(f);
                rec(f + 1, left - 1, nf, current, out);
                current.pop();
            }
        }
        if m <= nf {
            rec(0, m, nf, &mut current, &mut out);
        }
        out
    }

    /// x-degree of a wedge (count of coordinate-0 frames); the y-degree is
    /// the complement.
    fn xdeg(&self, wedge: &[usize]) -> usize {
        wedge.iter().filter(|&&f| self.frames[f].2 == 0).count()
    }

    /// Dimension of the degree-`t` piece of `Λ^m ⊗ R` (frame vectors in
    /// internal degree 1).
    pub fn term_dim(&self, m: usize, t: usize) -> usize {
        if m > t {
            return 0;
        }
        binom(self.num_frames(), m) * binom(t - m + 2 * self.n - 1, 2 * self.n - 1)
    }

    /// The image of the basis element `wedge ⊗ (mx, my)` under contraction
    /// with the section: a list of `(smaller wedge, mx', my', coefficient)`.
    fn contract(
        &self,
        wedge: &[usize],
        mx: &[u32],
        my: &[u32],
    ) -> Vec<(Vec<usize>, Vec<u32>, Vec<u32>, i64)> {
        let mut out = Vec::new();
        for (k, &f) in wedge.iter().enumerate() {
            let sign = if k % 2 == 0 { 1 } else { -1 };
            let (a, b, coord) = self.frames[f];
            let rest: Vec<usize> = wedge
                .iter()
                .copied()
                .filter(|&g| g != f)
                .collect();
            for (point, s) in [(a, sign), (b, -sign)] {
                let (mut nmx, mut nmy) = (mx.to_vec(), my.to_vec());
                if coord == 0 {
                    nmx[point] += 1;
                } else {
                    nmy[point] += 1;
                }
                out.push((rest.clone(), nmx, nmy, s));
            }
        }
        out
    }

    /// The matrix block of `∂_m : Λ^m → Λ^{m−1}` in bidegree `(tx, ty)`,
    /// built over monomial bases.
    fn block(
        &self,
        m: usize,
        tx: usize,
        ty: usize,
        cache: &mut MonoCache,
    ) -> SparseMat {
        assert!(m >= 1);
        let src_wedges = self.wedges(m);
        let dst_wedges = self.wedges(m - 1);
        let mut src_offsets = Vec::with_capacity(src_wedges.len());
        let mut src_total = 0usize;
        for w in &src_wedges {
            src_offsets.push(src_total);
            let a = self.xdeg(w);
            let b = w.len() - a;
            if tx >= a && ty >= b {
                src_total += cache.table(tx - a).len() * cache.table(ty - b).len();
            }
        }
        let mut dst_offsets = Vec::with_capacity(dst_wedges.len());
        let mut dst_index: HashMap<&[usize], usize> = HashMap::new();
        let mut dst_total = 0usize;
        for (wi, w) in dst_wedges.iter().enumerate() {
            dst_offsets.push(dst_total);
            dst_index.insert(w.as_slice(), wi);
            let a = self.xdeg(w);
            let b = w.len() - a;
            if tx >= a && ty >= b {
                dst_total += cache.table(tx - a).len() * cache.table(ty - b).len();
            }
        }

        let mut mat = SparseMat::new(dst_total, src_total);
        for (wi, w) in src_wedges.iter().enumerate() {
            let a = self.xdeg(w);
            let b = w.len() - a;
            if tx < a || ty < b {
                continue;
            }
            let (ux, uy) = (tx - a, ty - b);
            let nx = cache.table(ux).len();
            let ny = cache.table(uy).len();
            for xi in 0..nx {
                for yi in 0..ny {
                    let col = src_offsets[wi] + xi * ny + yi;
                    let mx = cache.table(ux).list[xi].clone();
                    let my = cache.table(uy).list[yi].clone();
                    for (rest, nmx, nmy, coeff) in self.contract(w, &mx, &my) {
                        let rwi = dst_index[rest.as_slice()];
                        let ra = self.xdeg(&rest);
                        let rb = rest.len() - ra;
                        let (rux, ruy) = (tx - ra, ty - rb);
                        let rny = cache.table(ruy).len();
                        let rxi = cache.table(rux).index[&nmx];
                        let ryi = cache.table(ruy).index[&nmy];
                        let row = dst_offsets[rwi] + rxi * rny + ryi;
                        mat.add(row, col, rat(coeff));
                    }
                }
            }
        }
        mat
    }

    /// Symbolic check that the contraction squares to zero on every basis
    /// wedge of every size (monomial factor irrelevant).
    pub fn check_d_squared(&self) -> bool {
        let zero_x = vec![0u32; self.n];
        let zero_y = vec![0u32; self.n];
        for m in 2..=self.num_frames() {
            for w in self.wedges(m) {
                let mut acc: HashMap<(Vec<usize>, Vec<u32>, Vec<u32>), i64> = HashMap::new();
                for (rest, mx, my, c1) in self.contract(&w, &zero_x, &zero_y) {
                    for (rest2, mx2, my2, c2) in self.contract(&rest, &mx, &my) {
                        *acc.entry((rest2, mx2, my2)).or_insert(0) += c1 * c2;
                    }
                }
                if acc.values().any(|&v| v != 0) {
                    return false;
                }
            }
        }
        true
    }

    /// Graded dimensions of the homology at position `−q`, for internal
    /// degrees `0..=tmax`.  `col_cap` guards the largest block ever
    /// materialised.
    pub fn homology_dims(
        &self,
        q: usize,
        tmax: usize,
        col_cap: usize,
    ) -> Result<Vec<usize>, KoszulError> {
        Ok(self.homology_table(q, q, tmax, col_cap)?.remove(&q).unwrap())
    }

    /// Homology dims for every `q` in `qmin..=qmax` at once, sharing one
    /// rank cache across neighbouring positions.
    pub fn homology_table(
        &self,
        qmin: usize,
        qmax: usize,
        tmax: usize,
        col_cap: usize,
    ) -> Result<BTreeMap<usize, Vec<usize>>, KoszulError> {
        let mut cache = MonoCache::new(self.n);
        let mut rank_cache: HashMap<(usize, usize, usize), usize> = HashMap::new();
        let mut out = BTreeMap::new();
        for q in qmin..=qmax {
            let mut dims = Vec::with_capacity(tmax + 1);
            for t in 0..=tmax {
                let mut h = 0usize;
                for tx in 0..=t {
                    let ty = t - tx;
                    // source dimension in this bidegree
                    let mut src = 0usize;
                    for w in self.wedges(q) {
                        let a = self.xdeg(&w);
                        let b = w.len() - a;
                        if tx >= a && ty >= b {
                            src += cache.table(tx - a).len() * cache.table(ty - b).len();
                        }
                    }
                    if src == 0 {
                        continue;
                    }
                    if src > col_cap {
                        return Err(KoszulError::TooLarge { degree: t, needed: src, cap: col_cap });
                    }
                    let rank_out = if q == 0 {
                        0
                    } else {
                        *rank_cache.entry((q, tx, ty)).or_insert_with(|| {
                            self.block(q, tx, ty, &mut cache).rank()
                        })
                    };
                    let rank_in = if q + 1 > self.num_frames() {
                        0
                    } else {
                        *rank_cache.entry((q + 1, tx, ty)).or_insert_with(|| {
                            self.block(q + 1, tx, ty, &mut cache).rank()
                        })
                    };
                    h += src - rank_out - rank_in;
                }
                dims.push(h);
            }
            out.insert(q, dims);
        }
        Ok(out)
    }

    /// Dense [`GradedComplex`] view (positions `Λ^top, …, Λ¹, Λ⁰`), for
    /// small graphs only.
    pub fn dense_complex(&self, tmax: usize) -> GradedComplex {
        let top = self.num_frames();
        let mut cache = MonoCache::new(self.n);
        let mut position_names = Vec::new();
        let mut dims = Vec::new();
        for m in (0..=top).rev() {
            position_names.push(format!("Λ^{m}"));
            dims.push((0..=tmax).map(|t| self.term_dim(m, t)).collect());
        }
        let mut maps = Vec::new();
        for m in (1..=top).rev() {
            let mut per_degree = Vec::new();
            for t in 0..=tmax {
                // assemble the full-degree block from the bidegree blocks
                let rows = self.term_dim(m - 1, t);
                let cols = self.term_dim(m, t);
                let mut dense = QMatrix::zero(rows, cols);
                let mut row_off = 0usize;
                let mut col_off = 0usize;
                for tx in 0..=t {
                    let ty = t - tx;
                    let block = self.block(m, tx, ty, &mut cache).to_dense();
                    for r in 0..block.rows {
                        for c in 0..block.cols {
                            if !block.get(r, c).is_zero() {
                                dense.set(row_off + r, col_off + c, block.get(r, c).clone());
                            }
                        }
                    }
                    row_off += block.rows;
                    col_off += block.cols;
                }
                debug_assert_eq!(row_off, rows);
                debug_assert_eq!(col_off, cols);
                per_degree.push(dense);
            }
            maps.push(per_degree);
        }
        GradedComplex { position_names, dims, maps }
    }
}

/// Closed-form rank of the multitor: `C(d·c, q)` for a graph of cycle rank
/// `c` (`d = DIM_X`).
pub fn multitor_rank(graph: &SimpleGraph, q: usize) -> usize {
    binom(DIM_X * graph.cycle_rank(), q)
}

/// Closed-form `𝔖_Γ`-character value of the multitor at `σ`:
/// `χ_{Λ^q(ℂ^d ⊗ q_Γ)}(σ) · ε_{E_Γ}(σ)`, with `ℂ^d` carrying the trivial
/// action.
pub fn multitor_character(graph: &SimpleGraph, q: usize, sigma: &Permutation) -> Rat {
    let rep = EdgeRep::on_stabilizer(graph.clone());
    let p: Vec<Rat> = (1..=q.max(1))
        .map(|k| rat(DIM_X as i64) * rat(rep.q_character(&sigma.pow(k))))
        .collect();
    schur_from_power_traces(&Partition::new(vec![1; q]), &p) * rat(edge_sign(graph, sigma))
}

/// The multitor character packaged against a table for the stabilizer.
pub fn multitor_class_function(graph: &SimpleGraph, q: usize, table: &CharTable) -> ClassFunction {
    table.class_function(|sigma| multitor_character(graph, q, sigma))
}

/// Invariant dimension of the multitor under the full stabilizer.
pub fn multitor_invariant_dim(graph: &SimpleGraph, q: usize) -> Rat {
    let rep = EdgeRep::on_stabilizer(graph.clone());
    let mut total = Rat::zero();
    for sigma in rep.group.elements() {
        total += multitor_character(graph, q, sigma);
    }
    total / rat(rep.group.order() as i64)
}

/// One isomorphism class on the E1 page: the class representative and the
/// Schur multiplicities of its invariant multitor (empty when the graph is
/// acyclic and `q < 0`, i.e. the multitor vanishes).
#[derive(Clone, Debug)]
pub struct E1Entry {
    pub graph: SimpleGraph,
    pub label: String,
    pub class_size: usize,
    pub multiplicities: BTreeMap<Partition, i64>,
}

/// The invariant E1 page at column `p` (number of edges) and row `q ≤ 0`:
/// one entry per isomorphism class of `p`-edge subgraphs of `K_n`, with the
/// isotypic multiplicities of
/// `(Tor_{−q}(Δ, Γ) ⊗ ε_{E_Γ})^{𝔖_Γ}` for a surface (`d = DIM_X`).
pub fn e1_page(n: usize, p: usize, q: i64) -> Result<Vec<E1Entry>, KoszulError> {
    if n > 5 {
        return Err(KoszulError::OutOfRange(format!("n = {n}, need n ≤ 5")));
    }
    if q > 0 {
        return Err(KoszulError::OutOfRange(format!("q = {q}, need q ≤ 0")));
    }
    let qq = (-q) as usize;
    let all = crate::graphlab::enumerate_graphs(n, p)
        .map_err(|e| KoszulError::OutOfRange(e.to_string()))?;
    let mut out = Vec::new();
    for (rep_graph, class) in iso_classes(&all) {
        let c = rep_graph.cycle_rank();
        let multiplicities = if qq == 0 {
            // Tor_0 = O_{Δ_Γ}: the ε_{E_Γ}-invariant indicator on the empty
            // partition.
            let er = EdgeRep::on_stabilizer(rep_graph.clone());
            let total: i64 = er.group.elements().iter().map(|s| edge_sign(&rep_graph, s)).sum();
            let m = total / er.group.order() as i64;
            let mut map = BTreeMap::new();
            map.insert(Partition::empty(), m);
            map
        } else if c == 0 || qq > DIM_X * c {
            BTreeMap::new()
        } else {
            isotypic_multiplicities(&rep_graph, qq, DIM_X).map_err(|e| match e {
                CharError::OutOfRange(s) => KoszulError::OutOfRange(s),
                other => KoszulError::OutOfRange(other.to_string()),
            })?
        };
        out.push(E1Entry {
            label: rep_graph.label(),
            class_size: class.len(),
            graph: rep_graph,
            multiplicities,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::ToPrimitive;

    /// Graded dims of the coordinate ring of the small diagonal of a
    /// connected vertex set: a polynomial ring in `2n − 2(v−k)` variables.
    fn diagonal_dims(n: usize, v: usize, k: usize, tmax: usize) -> Vec<usize> {
        let vars = 2 * n - 2 * (v - k);
        (0..=tmax).map(|t| binom(t + vars - 1, vars - 1)).collect()
    }

    #[test]
    fn single_edge_homology_is_the_diagonal() {
        // K^•(F_I, s_I) resolves O_{Δ_I}: homology concentrated at Λ⁰.
        let f = KoszulFactor::new(3, (0, 1));
        assert_eq!(f.section(), vec![(0, 0, 1), (1, 0, 1)]);
        let complex = f.complex(6);
        assert!(complex.check_d_squared());
        let quotient = diagonal_dims(3, 2, 1, 6);
        for t in 0..=6 {
            // positions: 0 = Λ², 1 = Λ¹, 2 = Λ⁰
            assert_eq!(complex.homology_dim(0, t), 0, "Λ² t={t}");
            assert_eq!(complex.homology_dim(1, t), 0, "Λ¹ t={t}");
            assert_eq!(complex.homology_dim(2, t), quotient[t], "Λ⁰ t={t}");
        }
    }

    #[test]
    fn d_squared_vanishes_symbolically() {
        for (n, graph) in [
            (3, SimpleGraph::k3(3)),
            (4, SimpleGraph::c4()),
            (4, SimpleGraph::k4()),
        ] {
            assert!(TotalKoszul::new(n, &graph).check_d_squared());
        }
    }

    #[test]
    fn oracle_k3_n3_free_module_struct() {
        // H^{−q} = O_Δ(−q)^{C(2,q)}: shifts read off the oracle equal q.
        let tk = TotalKoszul::new(3, &SimpleGraph::k3(3));
        let table = tk.homology_table(0, 6, 6, 100_000).unwrap();
        let diag = diagonal_dims(3, 3, 1, 6);
        for (q, dims) in &table {
            let rank = multitor_rank(&SimpleGraph::k3(3), *q);
            if rank == 0 {
                assert!(dims.iter().all(|&d| d == 0), "q={q} must vanish");
                continue;
            }
            let shift = dims.iter().position(|&d| d != 0).unwrap();
            assert_eq!(shift, *q, "generator shift at q={q}");
            for t in 0..=6usize {
                let expected = if t >= shift { rank * diag[t - shift] } else { 0 };
                assert_eq!(dims[t], expected, "q={q} t={t}");
            }
        }
    }

    #[test]
    fn oracle_n4_k3_and_c4_free_module_struct() {
        // Same structure one point up: K3 sitting inside n = 4 (Δ_Γ has
        // 4 free variables) and C4 (Δ_Γ has 2 free variables).  Both have
        // cycle rank 1, so ranks are C(2,q) and every shift equals q.
        for (g, vars_graph) in [(SimpleGraph::k3(4), (3, 1)), (SimpleGraph::c4(), (4, 1))] {
            let tk = TotalKoszul::new(4, &g);
            let table = tk.homology_table(0, 2 * g.cycle_rank(), 6, 200_000).unwrap();
            let diag = diagonal_dims(4, vars_graph.0, vars_graph.1, 6);
            for (q, dims) in &table {
                let rank = multitor_rank(&g, *q);
                let shift = dims.iter().position(|&d| d != 0).unwrap();
                assert_eq!(shift, *q, "{} shift at q={q}", g.label());
                for t in 0..=6usize {
                    let expected = if t >= shift { rank * diag[t - shift] } else { 0 };
                    assert_eq!(dims[t], expected, "{} q={q} t={t}", g.label());
                }
            }
        }
    }

    #[test]
    fn oracle_acyclic_vanishes() {
        // A_2 (two incident edges) is acyclic: multitor zero for q ≥ 1,
        // O_{Δ_Γ} at q = 0.
        let a2 = SimpleGraph::new(3, vec![(0, 1), (0, 2)]).unwrap();
        let tk = TotalKoszul::new(3, &a2);
        let table = tk.homology_table(0, 4, 5, 100_000).unwrap();
        assert_eq!(table[&0], diagonal_dims(3, 3, 1, 5));
        for q in 1..=4usize {
            assert!(table[&q].iter().all(|&d| d == 0), "q={q}");
        }
        // B_2 (two disjoint edges, n = 4): still a regular sequence.
        let b2 = SimpleGraph::new(4, vec![(0, 1), (2, 3)]).unwrap();
        let table = TotalKoszul::new(4, &b2).homology_table(1, 4, 4, 100_000).unwrap();
        for q in 1..=4usize {
            assert!(table[&q].iter().all(|&d| d == 0), "B2 q={q}");
        }
    }

    #[test]
    fn memory_guard_trips() {
        let tk = TotalKoszul::new(4, &SimpleGraph::k4());
        assert!(matches!(
            tk.homology_dims(2, 6, 50),
            Err(KoszulError::TooLarge { .. })
        ));
    }

    #[test]
    fn formula_rank_and_invariants() {
        assert_eq!(multitor_rank(&SimpleGraph::k4(), 1), 6); // C(6,1)
        assert_eq!(multitor_rank(&SimpleGraph::k4(), 7), 0);
        assert_eq!(multitor_rank(&SimpleGraph::c4(), 2), 1); // C(2,2)
        // K_3: invariants of Λ²(ℂ²⊗ε)⊗ε vanish.
        assert_eq!(multitor_invariant_dim(&SimpleGraph::k3(3), 2), rat(0));
        // C_4: invariants of Λ²(ℂ²⊗det)⊗ℓ(1,−1) vanish.
        assert_eq!(multitor_invariant_dim(&SimpleGraph::c4(), 2), rat(0));
        // C_4∪L at q = 2: two invariant copies of Λ²Ω¹ (each 1-dim for a
        // surface) and none of S²Ω¹, so the invariant dimension is 2; the
        // same number reassembles from the isotypic multiplicities weighted
        // by dim S^λℂ².
        assert_eq!(
            multitor_invariant_dim(&SimpleGraph::c4_plus_chord(), 2),
            rat(2)
        );
        let iso = isotypic_multiplicities(&SimpleGraph::c4_plus_chord(), 2, DIM_X).unwrap();
        let total: i64 = iso
            .iter()
            .map(|(lam, m)| {
                let p: Vec<Rat> = vec![rat(2); lam.weight().max(1)];
                let dim = schur_from_power_traces(lam, &p);
                m * dim.to_integer().to_i64().unwrap()
            })
            .sum();
        assert_eq!(rat(total), multitor_invariant_dim(&SimpleGraph::c4_plus_chord(), 2));
    }

    #[test]
    fn formula_character_is_class_function() {
        let t = CharTable::d4();
        let cf = multitor_class_function(&SimpleGraph::c4(), 2, &t);
        // Λ²(ℂ²⊗det) ⊗ ℓ(1,−1): values must decompose integrally.
        assert!(t.decompose(&cf).is_ok());
    }

    #[test]
    fn e1_page_examples() {
        // (4, 6, −3): only K_4 has 6 edges; S³Ω¹ with multiplicity 1.
        let page = e1_page(4, 6, -3).unwrap();
        assert_eq!(page.len(), 1);
        assert_eq!(page[0].label, SimpleGraph::k4().label());
        let m = &page[0].multiplicities;
        assert_eq!(m[&Partition::new(vec![3])], 1);
        assert_eq!(m[&Partition::new(vec![2, 1])], 0);
        // (4, 3, −1): classes A_3, B_3, K_3; only K_3 survives with Ω¹.
        let page = e1_page(4, 3, -1).unwrap();
        assert_eq!(page.len(), 3);
        let k3 = page
            .iter()
            .find(|e| e.label == SimpleGraph::k3(4).label())
            .unwrap();
        assert_eq!(k3.multiplicities[&Partition::new(vec![1])], 1);
        for e in &page {
            if e.label != SimpleGraph::k3(4).label() {
                assert!(e.multiplicities.is_empty(), "{} should vanish", e.label);
            }
        }
        // (3, 3, −2): only K_3; all multiplicities zero.
        let page = e1_page(3, 3, -2).unwrap();
        assert_eq!(page.len(), 1);
        assert!(page[0].multiplicities.values().all(|&v| v == 0));
        // range errors
        assert!(matches!(e1_page(6, 1, 0), Err(KoszulError::OutOfRange(_))));
        assert!(matches!(e1_page(4, 1, 1), Err(KoszulError::OutOfRange(_))));
    }

    #[test]
    fn e1_page_q0_sign_indicators() {
        // q = 0 row: indicator of ε_{E_Γ} being trivial on the stabilizer.
        let page = e1_page(4, 2, 0).unwrap();
        // classes: A_2 (incident) and B_2 (disjoint)
        assert_eq!(page.len(), 2);
        for e in &page {
            let m = e.multiplicities[&Partition::empty()];
            if e.label == "12.34" {
                assert_eq!(m, 0, "B_2 has sign-nontrivial stabilizer");
            } else {
                assert_eq!(m, 0, "A_2 likewise");
            }
        }
        // single edge: fully invariant
        let page = e1_page(4, 1, 0).unwrap();
        assert_eq!(page[0].multiplicities[&Partition::empty()], 1);
    }
}
