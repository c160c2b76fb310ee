//! Exact character theory for the small groups in play.
//!
//! Everything is rational: built-in irreducible tables for `S_2`, `S_3`,
//! `S_4` (irreducibles labelled by partitions), the dihedral group `D_4`
//! (four linear characters `ℓ(a_σ, b_ρ)` and the two-dimensional `θ`),
//! Klein four-groups, and direct products.  Characters of Schur functors
//! `S^λ V` are evaluated from power traces `p_k(g) = tr(g^k)` through
//! Newton's identities (complete homogeneous values `h_m`) and the
//! Jacobi–Trudi determinant `det(h_{λ_i − i + j})`; exterior powers are
//! `Λ^q = S^{(1^q)}`.  No eigenvalues, no cyclotomic arithmetic.
//!
//! The bridge to graphs: for a subgraph `Γ` with cycle rank `c ≥ 1`,
//! [`isotypic_multiplicities`] returns, for each partition `λ ⊢ q` with at
//! most `d` rows and at most `c` columns, the multiplicity
//! `m_λ = dim (S^{λ′} q_Γ ⊗ ε_{E_Γ})^{𝔖_Γ}` — the coefficient of
//! `S^λ Ω¹` in the invariants of `Λ^q(Ω¹ ⊗ q_Γ)` twisted by the edge-sign
//! character.

use crate::graphlab::{edge_sign, EdgeRep, SimpleGraph};
use crate::linalg::QMatrix;
use crate::symgroup::{PermGroup, Permutation};
use crate::{rat, Rat};
use num::traits::Zero;
use num::ToPrimitive;
use std::collections::HashMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CharError {
    #[error("values do not form a character (non-integral or negative multiplicities)")]
    NotACharacter,
    #[error("argument out of supported range: {0}")]
    OutOfRange(String),
    #[error("matrices are inconsistent with the group multiplication")]
    NotAHomomorphism,
    #[error("graph has no cycles")]
    Acyclic,
}

/// An integer partition: weakly decreasing positive parts.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Build from parts; they are sorted decreasingly, zero parts dropped.
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Weight `|λ|`.
    pub fn weight(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn num_parts(&self) -> usize {
        self.parts.len()
    }

    /// Largest part (0 for the empty partition).
    pub fn first_part(&self) -> usize {
        self.parts.first().copied().unwrap_or(0)
    }

    /// The conjugate partition `λ′` (transpose the Young diagram).
    pub fn conjugate(&self) -> Partition {
        let cols = self.first_part();
        let parts = (1..=cols)
            .map(|j| self.parts.iter().filter(|&&p| p >= j).count())
            .collect();
        Partition { parts }
    }

    /// Display form `(3,1,1)`.
    pub fn label(&self) -> String {
        format!(
            "({})",
            self.parts
                .iter()
                .map(|p| p.to_string())
                .collect::<Vec<_>>()
                .join(",")
        )
    }
}

/// All partitions of `q`, in descending lexicographic order
/// (`(q)` first, `(1^q)` last).
pub fn partitions_of(q: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(remaining: usize, max: usize, current: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition { parts: current.clone() });
            return;
        }
        for p in (1..=remaining.min(max)).rev() {
            current.push(p);
            rec(remaining - p, p, current, out);
            current.pop();
        }
    }
    rec(q, q, &mut current, &mut out);
    out
}

/// Partitions of `q` fitting in a `max_rows × max_cols` box.
pub fn partitions_in_box(q: usize, max_rows: usize, max_cols: usize) -> Vec<Partition> {
    partitions_of(q)
        .into_iter()
        .filter(|l| l.num_parts() <= max_rows && l.first_part() <= max_cols)
        .collect()
}

/// A class function: one rational value per conjugacy class, relative to
/// the class order of the [`CharTable`] it was built from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassFunction {
    pub values: Vec<Rat>,
}

impl ClassFunction {
    pub fn from_values(values: Vec<Rat>) -> Self {
        ClassFunction { values }
    }

    /// Pointwise product — the character of a tensor product.
    pub fn tensor(&self, other: &ClassFunction) -> ClassFunction {
        assert_eq!(self.values.len(), other.values.len());
        ClassFunction {
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a * b)
                .collect(),
        }
    }

    pub fn add(&self, other: &ClassFunction) -> ClassFunction {
        assert_eq!(self.values.len(), other.values.len());
        ClassFunction {
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

/// A character table: a concrete permutation group, its conjugacy classes
/// in a pinned order, and the irreducible characters.
#[derive(Clone, Debug)]
pub struct CharTable {
    group: PermGroup,
    class_reps: Vec<Permutation>,
    class_sizes: Vec<usize>,
    irr_names: Vec<String>,
    irr: Vec<Vec<Rat>>,
    class_lookup: HashMap<Permutation, usize>,
}

/// Symmetric-group irreducible values, indexed by (irreducible partition
/// label, class cycle type).  Classes in pinned order; rows in descending
/// partition order.
fn symmetric_data(m: usize) -> (Vec<&'static str>, Vec<Vec<i64>>) {
    match m {
        1 => (vec!["[1]"], vec![vec![1]]),
        2 => (vec!["[2]", "[1,1]"], vec![vec![1, 1], vec![1, -1]]),
        3 => (
            vec!["[3]", "[2,1]", "[1,1,1]"],
            vec![vec![1, 1, 1], vec![2, 0, -1], vec![1, -1, 1]],
        ),
        4 => (
            vec!["[4]", "[3,1]", "[2,2]", "[2,1,1]", "[1,1,1,1]"],
            vec![
                vec![1, 1, 1, 1, 1],
                vec![3, 1, -1, 0, -1],
                vec![2, 0, 2, -1, 0],
                vec![3, -1, -1, 0, 1],
                vec![1, -1, 1, 1, -1],
            ],
        ),
        _ => panic!("built-in symmetric tables cover S_1 .. S_4 only"),
    }
}

impl CharTable {
    fn finish(
        group: PermGroup,
        class_reps: Vec<Permutation>,
        class_sizes: Vec<usize>,
        irr_names: Vec<String>,
        irr: Vec<Vec<Rat>>,
    ) -> CharTable {
        // sanity: classes cover the group
        assert_eq!(class_sizes.iter().sum::<usize>(), group.order());
        let mut class_lookup = HashMap::new();
        for (idx, rep) in class_reps.iter().enumerate() {
            for g in group.elements() {
                let conj = g.compose(rep).compose(&g.inverse());
                class_lookup.insert(conj, idx);
            }
        }
        assert_eq!(class_lookup.len(), group.order(), "classes must partition the group");
        let t = CharTable { group, class_reps, class_sizes, irr_names, irr, class_lookup };
        debug_assert!(t.check_orthogonality());
        t
    }

    fn check_orthogonality(&self) -> bool {
        let k = self.irr.len();
        for i in 0..k {
            for j in 0..k {
                let expected = if i == j { rat(1) } else { rat(0) };
                if self.inner_product_values(&self.irr[i], &self.irr[j]) != expected {
                    return false;
                }
            }
        }
        true
    }

    /// The full symmetric group on `{1..m}` as a degree-`m` group, `m ≤ 4`.
    pub fn symmetric(m: usize) -> CharTable {
        Self::symmetric_on(m, &(0..m).collect::<Vec<_>>())
    }

    /// The group permuting `support` inside `S_n` (all other points fixed),
    /// with `|support| ≤ 4`.
    pub fn symmetric_on(n: usize, support: &[usize]) -> CharTable {
        let m = support.len();
        let (names, values) = symmetric_data(m);
        let group = PermGroup::symmetric_on(n, support);
        let classes = group.conjugacy_classes();
        assert_eq!(classes.len(), names.len());
        let class_reps: Vec<Permutation> = classes.iter().map(|c| c[0].clone()).collect();
        let class_sizes: Vec<usize> = classes.iter().map(|c| c.len()).collect();
        let irr = values
            .into_iter()
            .map(|row| row.into_iter().map(rat).collect())
            .collect();
        Self::finish(
            group,
            class_reps,
            class_sizes,
            names.into_iter().map(String::from).collect(),
            irr,
        )
    }

    /// The dihedral group `D_4 = ⟨σ = (24), ρ = (1234)⟩ ⊆ S_4` with the
    /// class order `(1, σ, σρ, ρ, ρ²)` and irreducibles
    /// `1, ℓ(1,−1), ℓ(−1,1), ℓ(−1,−1), θ` — `ℓ(a,b)` takes value `a` on
    /// `σ` and `b` on `ρ`; `ℓ(−1,1) = det θ`.
    pub fn d4() -> CharTable {
        let sigma = Permutation::from_cycles(4, &[&[1, 3]]);
        let rho = Permutation::from_cycles(4, &[&[0, 1, 2, 3]]);
        let group = PermGroup::generate(4, &[sigma.clone(), rho.clone()]);
        assert_eq!(group.order(), 8);
        let sigma_rho = sigma.compose(&rho);
        let rho2 = rho.compose(&rho);
        let class_reps = vec![Permutation::identity(4), sigma, sigma_rho, rho, rho2];
        let class_sizes = vec![1, 2, 2, 2, 1];
        let irr_names = vec![
            "1".to_string(),
            "l(1,-1)".to_string(),
            "l(-1,1)".to_string(),
            "l(-1,-1)".to_string(),
            "theta".to_string(),
        ];
        let irr = vec![
            vec![rat(1), rat(1), rat(1), rat(1), rat(1)],
            vec![rat(1), rat(1), rat(-1), rat(-1), rat(1)],
            vec![rat(1), rat(-1), rat(-1), rat(1), rat(1)],
            vec![rat(1), rat(-1), rat(1), rat(-1), rat(1)],
            vec![rat(2), rat(0), rat(0), rat(0), rat(-2)],
        ];
        Self::finish(group, class_reps, class_sizes, irr_names, irr)
    }

    /// An order-2 group `⟨a⟩` with characters `1, ε`.
    pub fn s2_on(a: Permutation) -> CharTable {
        assert_eq!(a.order(), 2);
        let n = a.degree();
        let group = PermGroup::generate(n, std::slice::from_ref(&a));
        let class_reps = vec![Permutation::identity(n), a];
        Self::finish(
            group,
            class_reps,
            vec![1, 1],
            vec!["1".to_string(), "eps".to_string()],
            vec![vec![rat(1), rat(1)], vec![rat(1), rat(-1)]],
        )
    }

    /// A Klein four-group `⟨a⟩ × ⟨b⟩` with classes `(e, a, b, ab)` and
    /// characters `1⊗1, 1⊗ε, ε⊗1, ε⊗ε` (first factor `⟨a⟩`).
    pub fn klein(a: Permutation, b: Permutation) -> CharTable {
        assert_eq!(a.order(), 2);
        assert_eq!(b.order(), 2);
        assert_eq!(a.compose(&b), b.compose(&a), "generators must commute");
        let n = a.degree();
        let ab = a.compose(&b);
        let group = PermGroup::generate(n, &[a.clone(), b.clone()]);
        assert_eq!(group.order(), 4);
        let class_reps = vec![Permutation::identity(n), a, b, ab];
        let irr_names = ["1x1", "1xeps", "epsx1", "epsxeps"]
            .map(String::from)
            .to_vec();
        let irr = vec![
            vec![rat(1), rat(1), rat(1), rat(1)],
            vec![rat(1), rat(1), rat(-1), rat(-1)],
            vec![rat(1), rat(-1), rat(1), rat(-1)],
            vec![rat(1), rat(-1), rat(-1), rat(1)],
        ];
        Self::finish(group, class_reps, vec![1, 1, 1, 1], irr_names, irr)
    }

    /// The trivial group of degree `n`.
    pub fn trivial(n: usize) -> CharTable {
        Self::finish(
            PermGroup::trivial(n),
            vec![Permutation::identity(n)],
            vec![1],
            vec!["1".to_string()],
            vec![vec![rat(1)]],
        )
    }

    /// Direct product on disjoint supports: the other group's points are
    /// shifted past this group's degree.  Classes are pairs in row-major
    /// order, irreducibles are outer tensor products named `a⊗b`.
    pub fn direct_product(&self, other: &CharTable) -> CharTable {
        let n1 = self.group.degree();
        let n2 = other.group.degree();
        let shift = |p: &Permutation| -> Permutation {
            let mut images: Vec<usize> = (0..n1 + n2).collect();
            for j in 0..n2 {
                images[n1 + j] = n1 + p.apply(j);
            }
            Permutation::from_images(images)
        };
        let embed = |p: &Permutation| -> Permutation {
            let mut images: Vec<usize> = (0..n1 + n2).collect();
            for j in 0..n1 {
                images[j] = p.apply(j);
            }
            Permutation::from_images(images)
        };
        let mut gens: Vec<Permutation> = self.group.elements().iter().map(embed).collect();
        gens.extend(other.group.elements().iter().map(shift));
        let group = PermGroup::generate(n1 + n2, &gens);
        assert_eq!(group.order(), self.group.order() * other.group.order());
        let mut class_reps = Vec::new();
        let mut class_sizes = Vec::new();
        for (r1, s1) in self.class_reps.iter().zip(&self.class_sizes) {
            for (r2, s2) in other.class_reps.iter().zip(&other.class_sizes) {
                class_reps.push(embed(r1).compose(&shift(r2)));
                class_sizes.push(s1 * s2);
            }
        }
        let mut irr_names = Vec::new();
        let mut irr = Vec::new();
        for (n1row, row1) in self.irr_names.iter().zip(&self.irr) {
            for (n2row, row2) in other.irr_names.iter().zip(&other.irr) {
                irr_names.push(format!("{n1row}⊗{n2row}"));
                let mut vals = Vec::new();
                for v1 in row1 {
                    for v2 in row2 {
                        vals.push(v1 * v2);
                    }
                }
                irr.push(vals);
            }
        }
        Self::finish(group, class_reps, class_sizes, irr_names, irr)
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn num_classes(&self) -> usize {
        self.class_reps.len()
    }

    pub fn class_reps(&self) -> &[Permutation] {
        &self.class_reps
    }

    pub fn class_sizes(&self) -> &[usize] {
        &self.class_sizes
    }

    pub fn irreducible_names(&self) -> &[String] {
        &self.irr_names
    }

    pub fn irreducible(&self, i: usize) -> ClassFunction {
        ClassFunction { values: self.irr[i].clone() }
    }

    /// Index of the conjugacy class containing `g`.
    pub fn class_of(&self, g: &Permutation) -> usize {
        *self
            .class_lookup
            .get(g)
            .expect("element must belong to the table's group")
    }

    /// Evaluate a function at the class representatives.
    pub fn class_function(&self, mut f: impl FnMut(&Permutation) -> Rat) -> ClassFunction {
        ClassFunction { values: self.class_reps.iter().map(&mut f).collect() }
    }

    pub fn trivial_character(&self) -> ClassFunction {
        ClassFunction { values: vec![rat(1); self.num_classes()] }
    }

    fn inner_product_values(&self, a: &[Rat], b: &[Rat]) -> Rat {
        let mut s = Rat::zero();
        for ((x, y), &size) in a.iter().zip(b).zip(&self.class_sizes) {
            s += x * y * rat(size as i64);
        }
        s / rat(self.group.order() as i64)
    }

    /// `⟨χ, ψ⟩` (all tables here have rational-valued characters, so no
    /// conjugation is needed).
    pub fn inner_product(&self, a: &ClassFunction, b: &ClassFunction) -> Rat {
        self.inner_product_values(&a.values, &b.values)
    }

    /// `dim V^G = ⟨χ, 1⟩` as an exact rational.
    pub fn invariant_dim(&self, chi: &ClassFunction) -> Rat {
        let mut s = Rat::zero();
        for (x, &size) in chi.values.iter().zip(&self.class_sizes) {
            s += x * rat(size as i64);
        }
        s / rat(self.group.order() as i64)
    }

    /// Multiplicities `⟨χ, χ_i⟩` against the irreducibles; errors if any
    /// multiplicity is negative or non-integral.
    pub fn decompose(&self, chi: &ClassFunction) -> Result<Vec<i64>, CharError> {
        let mut out = Vec::with_capacity(self.irr.len());
        for row in &self.irr {
            let m = self.inner_product_values(&chi.values, row);
            if !m.is_integer() {
                return Err(CharError::NotACharacter);
            }
            let v = m.to_integer().to_i64().ok_or(CharError::NotACharacter)?;
            if v < 0 {
                return Err(CharError::NotACharacter);
            }
            out.push(v);
        }
        Ok(out)
    }

    /// CSV export: class row, size row, then one row per irreducible.
    pub fn to_csv(&self) -> String {
        let mut lines = Vec::new();
        let classes: Vec<String> = self.class_reps.iter().map(|r| r.cycle_string()).collect();
        lines.push(format!("class,{}", classes.join(",")));
        let sizes: Vec<String> = self.class_sizes.iter().map(|s| s.to_string()).collect();
        lines.push(format!("size,{}", sizes.join(",")));
        for (name, row) in self.irr_names.iter().zip(&self.irr) {
            let vals: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            lines.push(format!("{name},{}", vals.join(",")));
        }
        lines.join("\n") + "\n"
    }

    /// JSON export mirroring the CSV layout.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "order": self.group.order(),
            "classes": self.class_reps.iter().zip(&self.class_sizes).map(|(r, &s)| {
                serde_json::json!({"rep": r.cycle_string(), "size": s})
            }).collect::<Vec<_>>(),
            "irreducibles": self.irr_names.iter().zip(&self.irr).map(|(n, row)| {
                serde_json::json!({
                    "name": n,
                    "values": row.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
                })
            }).collect::<Vec<_>>(),
        })
    }
}

/// An exact matrix representation of a permutation group: one matrix per
/// group element, stored parallel to the group's element list.
#[derive(Clone, Debug)]
pub struct MatrixRep {
    group: PermGroup,
    dim: usize,
    mats: Vec<QMatrix>,
}

impl MatrixRep {
    /// Extend generator matrices to the whole group by breadth-first
    /// closure, verifying the homomorphism law on every product that lands
    /// on an already-known element.
    pub fn from_generators(
        group: PermGroup,
        gens: &[(Permutation, QMatrix)],
    ) -> Result<MatrixRep, CharError> {
        let dim = gens.first().map(|(_, m)| m.rows).unwrap_or(0);
        let mut known: HashMap<Permutation, QMatrix> = HashMap::new();
        let id = Permutation::identity(group.degree());
        known.insert(id.clone(), QMatrix::from_fn(dim, dim, |r, c| {
            if r == c {
                rat(1)
            } else {
                rat(0)
            }
        }));
        let mut frontier = vec![id];
        while let Some(g) = frontier.pop() {
            let mg = known[&g].clone();
            for (s, ms) in gens {
                let h = s.compose(&g);
                let mh = ms.mul(&mg);
                match known.get(&h) {
                    Some(existing) => {
                        if *existing != mh {
                            return Err(CharError::NotAHomomorphism);
                        }
                    }
                    None => {
                        known.insert(h.clone(), mh);
                        frontier.push(h);
                    }
                }
            }
        }
        if known.len() != group.order() {
            return Err(CharError::NotAHomomorphism);
        }
        let mats = group
            .elements()
            .iter()
            .map(|g| known.remove(g).expect("closure covers the group"))
            .collect();
        Ok(MatrixRep { group, dim, mats })
    }

    /// Build from an explicit assignment (trusted to be a homomorphism; the
    /// caller can verify via [`MatrixRep::verify`]).
    pub fn from_element_fn(
        group: PermGroup,
        dim: usize,
        mut f: impl FnMut(&Permutation) -> QMatrix,
    ) -> MatrixRep {
        let mats = group.elements().iter().map(&mut f).collect();
        MatrixRep { group, dim, mats }
    }

    /// The signed edge representation `W_Γ` on the graph's stabilizer.
    pub fn w_rep(graph: &SimpleGraph) -> MatrixRep {
        let rep = EdgeRep::on_stabilizer(graph.clone());
        let dim = graph.num_edges();
        let group = rep.group.clone();
        MatrixRep::from_element_fn(group, dim, |s| rep.matrix(s))
    }

    /// The cycle representation `q_Γ` on the graph's stabilizer, in the
    /// fundamental-cycle basis.
    pub fn q_rep(graph: &SimpleGraph) -> MatrixRep {
        let rep = EdgeRep::on_stabilizer(graph.clone());
        let data = crate::graphlab::cycle_data(graph);
        let c = data.q_basis.len();
        let l = graph.num_edges();
        let group = rep.group.clone();
        MatrixRep::from_element_fn(group, c, |s| {
            let m = rep.matrix(s);
            let mut out = QMatrix::zero(c, c);
            for (j, vec) in data.q_basis.iter().enumerate() {
                let mut img = vec![Rat::zero(); l];
                for r in 0..l {
                    for col in 0..l {
                        if !m.get(r, col).is_zero() {
                            let add = m.get(r, col) * &vec[col];
                            img[r] = &img[r] + &add;
                        }
                    }
                }
                let coords = coords_in_basis(&data.q_basis, &img)
                    .expect("stabilizer preserves the cycle space");
                for (i, c_val) in coords.into_iter().enumerate() {
                    out.set(i, j, c_val);
                }
            }
            out
        })
    }

    /// The natural permutation representation of degree `n`.
    pub fn permutation_rep(group: PermGroup) -> MatrixRep {
        let n = group.degree();
        MatrixRep::from_element_fn(group, n, |s| {
            let mut m = QMatrix::zero(n, n);
            for j in 0..n {
                m.set(s.apply(j), j, rat(1));
            }
            m
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    /// The matrix of a specific element.
    pub fn matrix_of(&self, g: &Permutation) -> &QMatrix {
        let idx = self
            .group
            .elements()
            .binary_search(g)
            .expect("element must belong to the group");
        &self.mats[idx]
    }

    /// Check the homomorphism law exhaustively.
    pub fn verify(&self) -> bool {
        for g in self.group.elements() {
            for h in self.group.elements() {
                let gh = g.compose(h);
                if self.matrix_of(&gh) != &self.matrix_of(g).mul(self.matrix_of(h)) {
                    return false;
                }
            }
        }
        true
    }

    /// Power traces `p_1..p_kmax` of an element: `p_k = tr(M(g)^k)`.
    pub fn power_traces(&self, g: &Permutation, kmax: usize) -> Vec<Rat> {
        let m = self.matrix_of(g);
        let mut power = m.clone();
        let mut out = Vec::with_capacity(kmax);
        for k in 1..=kmax {
            out.push(power.trace());
            if k < kmax {
                power = power.mul(m);
            }
        }
        out
    }

    /// The character, relative to a table for the same group.
    pub fn character(&self, table: &CharTable) -> ClassFunction {
        table.class_function(|g| self.matrix_of(g).trace())
    }
}

use crate::linalg::solve_in_span as coords_in_basis;

/// Complete homogeneous values `h_0..h_m` from power traces `p_1..p_m`
/// via Newton's identities `m·h_m = Σ_{i=1}^m p_i h_{m−i}`.
pub fn newton_h(p: &[Rat], m: usize) -> Vec<Rat> {
    let mut h = vec![Rat::zero(); m + 1];
    h[0] = rat(1);
    for k in 1..=m {
        let mut s = Rat::zero();
        for i in 1..=k {
            s += &p[i - 1] * &h[k - i];
        }
        h[k] = s / rat(k as i64);
    }
    h
}

/// `χ_{S^λ V}(g)` from the power traces `p_k = tr(g^k on V)`, `k = 1..|λ|`,
/// via the Jacobi–Trudi determinant `det(h_{λ_i − i + j})`.
pub fn schur_from_power_traces(lambda: &Partition, p: &[Rat]) -> Rat {
    let q = lambda.weight();
    if q == 0 {
        return rat(1);
    }
    assert!(p.len() >= q, "need power traces up to |λ|");
    let h = newton_h(p, q);
    let r = lambda.num_parts();
    let m = QMatrix::from_fn(r, r, |i, j| {
        let idx = lambda.parts()[i] as i64 - i as i64 + j as i64;
        if idx < 0 {
            Rat::zero()
        } else {
            h[idx as usize].clone()
        }
    });
    m.det()
}

/// The character of the Schur functor `S^λ` applied to a matrix
/// representation, evaluated on the table's classes.
pub fn schur_character(lambda: &Partition, rep: &MatrixRep, table: &CharTable) -> ClassFunction {
    let q = lambda.weight();
    table.class_function(|g| {
        let p = rep.power_traces(g, q.max(1));
        schur_from_power_traces(lambda, &p)
    })
}

/// `χ_{Λ^q V}` as `S^{(1^q)}`.
pub fn exterior_character(q: usize, rep: &MatrixRep, table: &CharTable) -> ClassFunction {
    schur_character(&Partition::new(vec![1; q]), rep, table)
}

/// Verify, over every cycle type of `S_n`, that
/// `χ_{ρ_n}(C) + χ_{Λ²ρ_n}(C) = C(i_1, 2) − i_2` and that the signed edge
/// character of `K_n` takes the same value (`i_1` = fixed points, `i_2` =
/// number of 2-cycles).  Supported for `2 ≤ n ≤ 7`.
pub fn frobenius_identity_check(n: usize) -> Result<bool, CharError> {
    if !(2..=7).contains(&n) {
        return Err(CharError::OutOfRange(format!("n = {n}, need 2 ≤ n ≤ 7")));
    }
    for cycle_type in partitions_of(n) {
        // explicit representative with consecutive cycles
        let mut images: Vec<usize> = (0..n).collect();
        let mut start = 0;
        for &len in cycle_type.parts() {
            for off in 0..len {
                images[start + off] = start + (off + 1) % len;
            }
            start += len;
        }
        let sigma = Permutation::from_images(images);
        let i1 = sigma.fixed_points() as i64;
        let i2 = cycle_type.parts().iter().filter(|&&c| c == 2).count() as i64;
        let chi_rho = i1 - 1;
        let chi_rho_sq = sigma.pow(2).fixed_points() as i64 - 1;
        let lambda2 = (chi_rho * chi_rho - chi_rho_sq) / 2;
        let target = i1 * (i1 - 1) / 2 - i2;
        // signed edge character of K_n, computed directly
        let mut w = 0i64;
        for i in 0..n {
            for j in (i + 1)..n {
                let (si, sj) = (sigma.apply(i), sigma.apply(j));
                if (si.min(sj), si.max(sj)) == (i, j) {
                    w += if si < sj { 1 } else { -1 };
                }
            }
        }
        if chi_rho + lambda2 != target || w != target {
            return Ok(false);
        }
    }
    Ok(true)
}

/// For `λ ⊢ q` with at most `d` rows and at most `c = rank q_Γ` columns,
/// the multiplicity `m_λ = dim (S^{λ′} q_Γ ⊗ ε_{E_Γ})^{𝔖_Γ}` — the
/// coefficient of `S^λ Ω¹` in the twisted invariants of `Λ^q(Ω¹ ⊗ q_Γ)`
/// for a `d`-dimensional `Ω¹`.
pub fn isotypic_multiplicities(
    graph: &SimpleGraph,
    q: usize,
    d: usize,
) -> Result<std::collections::BTreeMap<Partition, i64>, CharError> {
    let c = graph.cycle_rank();
    if c == 0 {
        return Err(CharError::Acyclic);
    }
    if q > d * c {
        return Err(CharError::OutOfRange(format!(
            "q = {q} exceeds d·c = {}",
            d * c
        )));
    }
    let rep = EdgeRep::on_stabilizer(graph.clone());
    let order = rep.group.order() as i64;
    let mut out = std::collections::BTreeMap::new();
    for lambda in partitions_in_box(q, d, c) {
        let mu = lambda.conjugate();
        let k = mu.weight().max(1);
        let mut total = Rat::zero();
        for sigma in rep.group.elements() {
            let p: Vec<Rat> = (1..=k)
                .map(|e| rat(rep.q_character(&sigma.pow(e))))
                .collect();
            let val = schur_from_power_traces(&mu, &p) * rat(edge_sign(graph, sigma));
            total += val;
        }
        let m = total / rat(order);
        if !m.is_integer() {
            return Err(CharError::NotACharacter);
        }
        out.insert(lambda, m.to_integer().to_i64().ok_or(CharError::NotACharacter)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partitions_and_conjugates() {
        assert_eq!(partitions_of(4).len(), 5);
        assert_eq!(partitions_of(6).len(), 11);
        let l = Partition::new(vec![3, 1]);
        assert_eq!(l.conjugate().parts(), &[2, 1, 1]);
        assert_eq!(l.conjugate().conjugate(), l);
        assert_eq!(Partition::new(vec![3, 1, 1]).conjugate().parts(), &[3, 1, 1]);
        assert_eq!(Partition::new(vec![2, 2, 2]).conjugate().parts(), &[3, 3]);
        for lam in partitions_of(6) {
            assert_eq!(lam.conjugate().conjugate(), lam);
            assert_eq!(lam.conjugate().weight(), 6);
        }
        assert_eq!(partitions_in_box(4, 2, 3).len(), 2); // (3,1), (2,2)
    }

    #[test]
    fn builtin_tables_are_orthonormal() {
        // `finish` debug-asserts orthogonality; exercise every constructor.
        let tables = vec![
            CharTable::symmetric(2),
            CharTable::symmetric(3),
            CharTable::symmetric(4),
            CharTable::d4(),
            CharTable::s2_on(Permutation::from_cycles(4, &[&[1, 2]])),
            CharTable::klein(
                Permutation::from_cycles(4, &[&[0, 2]]),
                Permutation::from_cycles(4, &[&[1, 3]]),
            ),
            CharTable::symmetric(2).direct_product(&CharTable::symmetric(2)),
            CharTable::trivial(3),
        ];
        for t in &tables {
            assert!(t.check_orthogonality());
            let sum_sq: usize = t
                .irr
                .iter()
                .map(|row| {
                    let d = row[0].to_integer().to_i64().unwrap() as usize;
                    d * d
                })
                .sum();
            assert_eq!(sum_sq, t.group().order());
        }
    }

    #[test]
    fn s3_regular_representation_decomposes() {
        let t = CharTable::symmetric(3);
        let regular = t.class_function(|g| {
            if g == &Permutation::identity(3) {
                rat(6)
            } else {
                rat(0)
            }
        });
        // irreducible order: [3], [2,1], [1,1,1]
        assert_eq!(t.decompose(&regular).unwrap(), vec![1, 2, 1]);
        assert_eq!(t.invariant_dim(&t.trivial_character()), rat(1));
    }

    #[test]
    fn decompose_rejects_non_characters() {
        let t = CharTable::symmetric(3);
        let bad = ClassFunction::from_values(vec![rat(1), rat(1), rat(0)]);
        assert_eq!(t.decompose(&bad).unwrap_err(), CharError::NotACharacter);
        let negative = ClassFunction::from_values(vec![rat(-1), rat(-1), rat(-1)]);
        assert_eq!(t.decompose(&negative).unwrap_err(), CharError::NotACharacter);
    }

    #[test]
    fn d4_characters_of_c4() {
        let t = CharTable::d4();
        let c4 = SimpleGraph::c4();
        let w = MatrixRep::w_rep(&c4);
        assert!(w.verify());
        let chi_w = w.character(&t);
        assert_eq!(
            chi_w.values,
            vec![rat(4), rat(0), rat(-2), rat(0), rat(0)]
        );
        // W_{C_4} = det ⊕ ℓ(1,−1) ⊕ θ
        assert_eq!(t.decompose(&chi_w).unwrap(), vec![0, 1, 1, 0, 1]);
        // ρ_{C_4} = restriction of the standard 3-dim representation
        let chi_rho = t.class_function(|g| rat(g.fixed_points() as i64 - 1));
        assert_eq!(
            chi_rho.values,
            vec![rat(3), rat(1), rat(-1), rat(-1), rat(-1)]
        );
        assert_eq!(t.decompose(&chi_rho).unwrap(), vec![0, 1, 0, 0, 1]);
        // hence q_{C_4} = det = ℓ(−1,1)
        let q = MatrixRep::q_rep(&c4);
        assert!(q.verify());
        let chi_q = q.character(&t);
        assert_eq!(t.decompose(&chi_q).unwrap(), vec![0, 0, 1, 0, 0]);
        // ε_{E_{C_4}} = ℓ(1,−1)
        let eps = t.class_function(|g| rat(edge_sign(&c4, g)));
        assert_eq!(t.decompose(&eps).unwrap(), vec![0, 1, 0, 0, 0]);
    }

    #[test]
    fn q_gamma_classification() {
        // q_{K_3} = ε (inside S_4, stabilizer is S({1,2,3}))
        let k3 = SimpleGraph::k3(4);
        let t = CharTable::symmetric_on(4, &[0, 1, 2]);
        let q = MatrixRep::q_rep(&k3);
        let chi = q.character(&t);
        assert_eq!(t.decompose(&chi).unwrap(), vec![0, 0, 1]); // [1,1,1] = ε
        // q_{K_3∪J} = ε of the order-2 stabilizer
        let k3j = SimpleGraph::k3_plus_edge();
        let t = CharTable::s2_on(Permutation::from_cycles(4, &[&[1, 2]]));
        let q = MatrixRep::q_rep(&k3j);
        assert_eq!(t.decompose(&q.character(&t)).unwrap(), vec![0, 1]);
        // q_{C_4∪L} = (ε⊗1) ⊕ (ε⊗ε) for the Klein group ⟨(13)⟩×⟨(24)⟩
        let c4l = SimpleGraph::c4_plus_chord();
        let t = CharTable::klein(
            Permutation::from_cycles(4, &[&[0, 2]]),
            Permutation::from_cycles(4, &[&[1, 3]]),
        );
        let q = MatrixRep::q_rep(&c4l);
        let chi = q.character(&t);
        assert_eq!(chi.values, vec![rat(2), rat(-2), rat(0), rat(0)]);
        assert_eq!(t.decompose(&chi).unwrap(), vec![0, 0, 1, 1]);
        // q_{K_4} = Λ²ρ_4 = the [2,1,1] irreducible
        let k4 = SimpleGraph::k4();
        let t = CharTable::symmetric(4);
        let q = MatrixRep::q_rep(&k4);
        let chi = q.character(&t);
        assert_eq!(
            chi.values,
            vec![rat(3), rat(-1), rat(-1), rat(0), rat(1)]
        );
        assert_eq!(t.decompose(&chi).unwrap(), vec![0, 0, 0, 1, 0]);
        // and Λ²ρ_4 computed as a Schur functor of the standard rep agrees:
        // χ_{Λ²ρ_4} = Λ²(perm − 1) has the same values.
        let perm = MatrixRep::permutation_rep(PermGroup::symmetric(4));
        let lambda2_interior = t.class_function(|g| {
            let p1 = perm.matrix_of(g).trace() - rat(1);
            let p2 = perm.matrix_of(&g.pow(2)).trace() - rat(1);
            (&p1 * &p1 - p2) / rat(2)
        });
        assert_eq!(lambda2_interior.values, chi.values);
    }

    #[test]
    fn exterior_power_matches_elementary_recursion() {
        // S^{(1^q)} from Jacobi–Trudi vs the e-recursion
        // m·e_m = Σ (−1)^{i−1} e_{m−i} p_i, on all five W-representations.
        for g in [
            SimpleGraph::k3(4),
            SimpleGraph::k3_plus_edge(),
            SimpleGraph::c4(),
            SimpleGraph::c4_plus_chord(),
            SimpleGraph::k4(),
        ] {
            let rep = MatrixRep::w_rep(&g);
            for sigma in rep.group().elements().to_vec() {
                let p = rep.power_traces(&sigma, 6);
                let mut e = vec![rat(1)];
                for m in 1..=6usize {
                    let mut s = Rat::zero();
                    for i in 1..=m {
                        let term = &e[m - i] * &p[i - 1];
                        if i % 2 == 1 {
                            s += term;
                        } else {
                            s -= term;
                        }
                    }
                    e.push(s / rat(m as i64));
                }
                for q in 1..=6usize {
                    let jt = schur_from_power_traces(&Partition::new(vec![1; q]), &p);
                    assert_eq!(jt, e[q], "graph {} σ {} q {q}", g.label(), sigma.cycle_string());
                }
            }
        }
    }

    #[test]
    fn schur_decomposition_completeness() {
        // Σ_{λ⊢q} dim S^λ(V) · dim S^{λ′}(W) = dim Λ^q(V⊗W) at the level of
        // dimensions (power traces of the identity).
        for (v, w) in [(2usize, 1usize), (2, 2), (2, 3), (3, 2), (3, 3)] {
            for q in 0..=6usize {
                let pv: Vec<Rat> = (1..=q.max(1)).map(|_| rat(v as i64)).collect();
                let pw: Vec<Rat> = (1..=q.max(1)).map(|_| rat(w as i64)).collect();
                let mut total = Rat::zero();
                for lam in partitions_of(q) {
                    let a = schur_from_power_traces(&lam, &pv);
                    let b = schur_from_power_traces(&lam.conjugate(), &pw);
                    total += a * b;
                }
                // C(vw, q)
                let mut binom = rat(1);
                for i in 0..q {
                    binom = binom * rat((v * w) as i64 - i as i64) / rat(i as i64 + 1);
                }
                assert_eq!(total, binom, "v={v} w={w} q={q}");
            }
        }
    }

    #[test]
    fn schur_invariant_dimension_grid() {
        // dim (S^λ q_Γ)^{𝔖_Γ} for Γ₁ = C_4∪L and K_4 over ten partitions.
        // Every value is forced by the isotypic data (see
        // `full_isotypic_table_d2`); in particular the K_4 entry at (3) is 0
        // — the symmetric cube of q_{K_4} contains no trivial summand, while
        // its exterior cube is the determinant line (see
        // `k4_cube_determinant_pin`).
        let lambdas: Vec<Vec<usize>> = vec![
            vec![2],
            vec![3],
            vec![4],
            vec![3, 1],
            vec![2, 2],
            vec![3, 1, 1],
            vec![6],
            vec![5, 1],
            vec![4, 2],
            vec![2, 2, 2],
        ];
        let expected_c4l = [2, 0, 3, 1, 1, 0, 4, 2, 2, 0];
        let expected_k4 = [1, 0, 2, 0, 1, 1, 3, 1, 2, 1];
        for (graph, expected) in [
            (SimpleGraph::c4_plus_chord(), expected_c4l),
            (SimpleGraph::k4(), expected_k4),
        ] {
            let rep = EdgeRep::on_stabilizer(graph.clone());
            let order = rep.group.order() as i64;
            for (lam_parts, want) in lambdas.iter().zip(expected) {
                let lam = Partition::new(lam_parts.clone());
                let k = lam.weight();
                let mut total = Rat::zero();
                for sigma in rep.group.elements() {
                    let p: Vec<Rat> = (1..=k)
                        .map(|e| rat(rep.q_character(&sigma.pow(e))))
                        .collect();
                    total += schur_from_power_traces(&lam, &p);
                }
                assert_eq!(
                    total / rat(order),
                    rat(want),
                    "graph {} λ {}",
                    graph.label(),
                    lam.label()
                );
            }
        }
    }

    #[test]
    fn k4_cube_determinant_pin() {
        // q_{K_4} ≅ Λ²ρ_4 ≅ ρ_4 ⊗ ε is the three-dimensional [2,1,1]
        // irreducible.  Sym³ of it decomposes as ε ⊕ ρ_4 ⊕ 2·(ρ_4⊗ε)
        // (dims 1 + 3 + 6 = 10) with no trivial summand, whereas
        // Λ³ = det(ρ_4 ⊗ ε) = ε⁴ = 1 is the trivial character.  Three
        // independent confirmations: the full decompositions, the
        // invariant dimensions, and the q = 3 column of the isotypic table.
        let t = CharTable::symmetric(4);
        let q = MatrixRep::q_rep(&SimpleGraph::k4());
        let sym3 = schur_character(&Partition::new(vec![3]), &q, &t);
        // order: [4], [3,1], [2,2], [2,1,1], [1,1,1,1]
        assert_eq!(t.decompose(&sym3).unwrap(), vec![0, 1, 0, 2, 1]);
        assert_eq!(t.invariant_dim(&sym3), rat(0));
        let lambda3 = schur_character(&Partition::new(vec![1, 1, 1]), &q, &t);
        assert_eq!(t.decompose(&lambda3).unwrap(), vec![1, 0, 0, 0, 0]);
        assert_eq!(t.invariant_dim(&lambda3), rat(1));
    }

    #[test]
    fn schur_invariant_grid_superset() {
        // Within two-row partitions of weight 2, 3, 4, 6, any λ not listed
        // in the twenty-entry table has zero invariants.
        let listed: Vec<Partition> = vec![
            Partition::new(vec![2]),
            Partition::new(vec![3]),
            Partition::new(vec![4]),
            Partition::new(vec![3, 1]),
            Partition::new(vec![2, 2]),
            Partition::new(vec![3, 1, 1]),
            Partition::new(vec![6]),
            Partition::new(vec![5, 1]),
            Partition::new(vec![4, 2]),
            Partition::new(vec![2, 2, 2]),
        ];
        for graph in [SimpleGraph::c4_plus_chord(), SimpleGraph::k4()] {
            let rep = EdgeRep::on_stabilizer(graph.clone());
            let order = rep.group.order() as i64;
            for weight in [2usize, 3, 4, 6] {
                for lam in partitions_of(weight) {
                    if lam.num_parts() > 2 || listed.contains(&lam) {
                        continue;
                    }
                    let k = lam.weight();
                    let mut total = Rat::zero();
                    for sigma in rep.group.elements() {
                        let p: Vec<Rat> = (1..=k)
                            .map(|e| rat(rep.q_character(&sigma.pow(e))))
                            .collect();
                        total += schur_from_power_traces(&lam, &p);
                    }
                    assert_eq!(
                        total / rat(order),
                        rat(0),
                        "unlisted λ {} on {}",
                        lam.label(),
                        graph.label()
                    );
                }
            }
        }
    }

    #[test]
    fn frobenius_identity_all_n() {
        for n in 2..=7 {
            assert_eq!(frobenius_identity_check(n), Ok(true), "n = {n}");
        }
        assert!(matches!(
            frobenius_identity_check(8),
            Err(CharError::OutOfRange(_))
        ));
        assert!(matches!(
            frobenius_identity_check(1),
            Err(CharError::OutOfRange(_))
        ));
    }

    #[test]
    fn isotypic_multiplicity_examples() {
        let d = 2;
        // K_3∪J, q = 2: only λ = (1,1) fits the box; multiplicity 0.
        let m = isotypic_multiplicities(&SimpleGraph::k3_plus_edge(), 2, d).unwrap();
        assert_eq!(m.len(), 1);
        assert_eq!(m[&Partition::new(vec![1, 1])], 0);
        // C_4∪L, q = 2: m_{(1,1)} = 2, m_{(2)} = 0.
        let m = isotypic_multiplicities(&SimpleGraph::c4_plus_chord(), 2, d).unwrap();
        assert_eq!(m[&Partition::new(vec![1, 1])], 2);
        assert_eq!(m[&Partition::new(vec![2])], 0);
        // K_4, q = 3: m_{(3)} = 1, m_{(2,1)} = 0.
        let m = isotypic_multiplicities(&SimpleGraph::k4(), 3, d).unwrap();
        assert_eq!(m[&Partition::new(vec![3])], 1);
        assert_eq!(m[&Partition::new(vec![2, 1])], 0);
        // errors
        assert_eq!(
            isotypic_multiplicities(&SimpleGraph::new(4, vec![(0, 1)]).unwrap(), 1, d),
            Err(CharError::Acyclic)
        );
        assert!(matches!(
            isotypic_multiplicities(&SimpleGraph::k3(4), 3, d),
            Err(CharError::OutOfRange(_))
        ));
    }

    #[test]
    fn full_isotypic_table_d2() {
        // every (class, q) pair with 1 ≤ q ≤ 2·c, at d = 2
        let check = |g: &SimpleGraph, q: usize, expect: Vec<(Vec<usize>, i64)>| {
            let m = isotypic_multiplicities(g, q, 2).unwrap();
            let expect: std::collections::BTreeMap<Partition, i64> = expect
                .into_iter()
                .map(|(p, v)| (Partition::new(p), v))
                .collect();
            assert_eq!(m, expect, "graph {} q {}", g.label(), q);
        };
        let k3 = SimpleGraph::k3(4);
        check(&k3, 1, vec![(vec![1], 1)]);
        check(&k3, 2, vec![(vec![1, 1], 0)]);
        let k3j = SimpleGraph::k3_plus_edge();
        check(&k3j, 1, vec![(vec![1], 1)]);
        check(&k3j, 2, vec![(vec![1, 1], 0)]);
        let c4 = SimpleGraph::c4();
        check(&c4, 1, vec![(vec![1], 0)]);
        check(&c4, 2, vec![(vec![1, 1], 0)]);
        let c4l = SimpleGraph::c4_plus_chord();
        check(&c4l, 1, vec![(vec![1], 0)]);
        check(&c4l, 2, vec![(vec![2], 0), (vec![1, 1], 2)]);
        check(&c4l, 3, vec![(vec![2, 1], 0)]);
        check(&c4l, 4, vec![(vec![2, 2], 1)]);
        let k4 = SimpleGraph::k4();
        check(&k4, 1, vec![(vec![1], 0)]);
        check(&k4, 2, vec![(vec![2], 0), (vec![1, 1], 1)]);
        check(&k4, 3, vec![(vec![3], 1), (vec![2, 1], 0)]);
        check(&k4, 4, vec![(vec![3, 1], 0), (vec![2, 2], 1)]);
        check(&k4, 5, vec![(vec![3, 2], 0)]);
        check(&k4, 6, vec![(vec![3, 3], 1)]);
    }

    #[test]
    fn table_exports() {
        let t = CharTable::symmetric(3);
        let csv = t.to_csv();
        assert!(csv.starts_with("class,e,"));
        assert!(csv.contains("[2,1],2,0,-1"));
        let j = t.to_json();
        assert_eq!(j["order"], 6);
        assert_eq!(j["irreducibles"][1]["name"], "[2,1]");
    }

    #[test]
    fn from_generators_checks_homomorphism() {
        let group = PermGroup::symmetric(3);
        let s12 = Permutation::from_cycles(3, &[&[0, 1]]);
        let s23 = Permutation::from_cycles(3, &[&[1, 2]]);
        let sgn = |_: &Permutation| QMatrix::from_fn(1, 1, |_, _| rat(-1));
        let ok = MatrixRep::from_generators(
            group.clone(),
            &[(s12.clone(), sgn(&s12)), (s23.clone(), sgn(&s23))],
        )
        .unwrap();
        assert!(ok.verify());
        assert_eq!(ok.matrix_of(&s12.compose(&s23)).get(0, 0), &rat(1));
        // wrong assignment: +1 on one generator, −1 on the other
        let bad = MatrixRep::from_generators(
            group,
            &[
                (s12, QMatrix::from_fn(1, 1, |_, _| rat(1))),
                (s23, QMatrix::from_fn(1, 1, |_, _| rat(-1))),
            ],
        );
        assert_eq!(bad.unwrap_err(), CharError::NotAHomomorphism);
    }
}
