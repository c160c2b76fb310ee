//! Explicit invariant complexes over the plane, realised degreewise as
//! matrices, with an exactness checker.
//!
//! For `n = 3, 4` copies of the affine plane `X = 𝔸²` (coordinate ring
//! `ℚ[x, y]` per point), several short complexes of modules built from
//! diagonal pushforwards carry the structure of the invariant theory of the
//! big-diagonal ideal `I_{Δ_n} = ∩_{i<j} I_{Δ_ij}`.  This module realises
//! every object as a graded vector space with an explicit basis in each
//! internal degree, and every map as an honest matrix between those bases,
//! so that exactness is *checked* by rank computations instead of asserted.
//!
//! # Realisation by merged-point charts
//!
//! A module supported on a diagonal `Δ` is realised on a small polynomial
//! ring whose points are the *merged groups* of `Δ`: for example, functions
//! on the pairwise diagonal `x_1 = x_2` inside `X³` become polynomials in
//! two points `(m, r)` — the merged pair and the residual point.  Sheaves of
//! relative differential forms contribute formal symbols (`dx`, `dy`,
//! `dx∧dy`, `dx³`, …) of fixed internal degree; twists by powers of the
//! ideal of a chart diagonal are realised by Taylor bases: polynomials whose
//! expansion in the offset variables `ξ = x_r − x_m`, `η = y_r − y_m`
//! starts in a prescribed order.
//!
//! The maps are substitution and partial-derivative operators:
//! restriction to a deeper merge is substitution of chart points, and the
//! first- or second-order differential along a diagonal is extraction of
//! the corresponding Taylor coefficients.
//!
//! # The complexes
//!
//! * [`resolution_complex`]`(3, cap)` — `O^{𝔖₃} → w₂(O⊠O) → w₃(Ω¹)`;
//!   exact at the last two positions, with first-map kernel the invariant
//!   big-diagonal ideal `(I_{Δ₃})^{𝔖₃}`.
//! * [`mixed_invariant_complex`] — the same shape for the subgroup
//!   permuting only the last two points, with a two-chart middle term.
//! * [`resolution_complex`]`(4, cap)` — the four-position complex
//!   `O^{𝔖₄} → (w₂(O⊠O_{S²}))₀ → (Ω¹⊠I)₀ → w₄(S³Ω¹)` with maps `r`, `D`,
//!   `C`; kernels of the subscript-0 modules are themselves realised as
//!   kernel modules of explicit gluing maps.
//! * [`merge_pair_complex`] — the three-position comparison complex for
//!   `n = 4` whose position-1 homology must match the rank of `D` above.
//! * [`second_order_complex`] — the four-term exact sequence relating the
//!   second-order invariant slice, the invariant big-diagonal ideal, forms
//!   with second-order coefficients, and cubic symbols.
//!
//! Every complex reports per-degree exactness data and compares the kernel
//! of its first map against an independent Gröbner-basis/Reynolds-operator
//! computation of the same Hilbert function.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::rc::Rc;

use num::Zero;
use serde_json::json;
use thiserror::Error;

use crate::graphlab::{epsilon_sign, SimpleGraph};
use crate::koszul::{ExactnessReport, GradedComplex};
use crate::linalg::{QMatrix, RowSpace, SpanSolver};
use crate::polycore::{monomial_index, Ideal, Monomial, PolyRing, Polynomial};
use crate::symgroup::{InvariantSeries, PermGroup};
use crate::{rat, Rat};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ResolverError {
    #[error("explicit complexes are implemented for n = 3 and n = 4, got n = {0}")]
    UnsupportedN(usize),
    #[error("invalid composition/order data: {0}")]
    BadInput(String),
}

// ---------------------------------------------------------------------------
// Polynomial chart helpers
// ---------------------------------------------------------------------------

/// Substitute chart points: variable `(p, c)` of `src` is sent to variable
/// `(point_map[p], c)` of `dst`.
fn point_subst(src: &PolyRing, dst: &PolyRing, point_map: &[usize], p: &Polynomial) -> Polynomial {
    let images: Vec<Polynomial> = (0..src.nvars())
        .map(|v| {
            let (pt, c) = src.var_info(v).expect("no auxiliary variables in charts");
            dst.var_poly(dst.var(point_map[pt], c))
        })
        .collect();
    p.substitute(&images, dst.nvars())
}

/// Substitute chart points with optional drops: `None` sends the whole
/// coordinate to zero (use only when those variables cannot occur, or when
/// the quotient by them is intended).
fn point_subst_opt(
    src: &PolyRing,
    dst: &PolyRing,
    point_map: &[Option<usize>],
    p: &Polynomial,
) -> Polynomial {
    let images: Vec<Polynomial> = (0..src.nvars())
        .map(|v| {
            let (pt, c) = src.var_info(v).expect("no auxiliary variables in charts");
            match point_map[pt] {
                Some(q) => dst.var_poly(dst.var(q, c)),
                None => Polynomial::zero(),
            }
        })
        .collect();
    p.substitute(&images, dst.nvars())
}

/// Total degree of the monomial in the coordinates of one chart point.
fn point_degree(ring: &PolyRing, m: &Monomial, point: usize) -> usize {
    (0..ring.coords)
        .map(|c| m.exps()[ring.var(point, c)] as usize)
        .sum()
}

/// Rewrite `p` in Taylor coordinates around `base`: each point of `offs`
/// now holds its *offset* from `base`, i.e. substitute
/// `x_b ↦ x_base + x_b` for `b ∈ offs` (and likewise for `y`).
fn offset_in(ring: &PolyRing, p: &Polynomial, base: usize, offs: &[usize]) -> Polynomial {
    let images: Vec<Polynomial> = (0..ring.nvars())
        .map(|v| {
            let (pt, c) = ring.var_info(v).expect("no auxiliary variables in charts");
            if offs.contains(&pt) {
                ring.var_poly(ring.var(base, c))
                    .add(&ring.var_poly(v))
            } else {
                ring.var_poly(v)
            }
        })
        .collect();
    p.substitute(&images, ring.nvars())
}

/// Inverse of [`offset_in`] for a single offset point: substitute
/// `x_b ↦ x_b − x_base`.
fn offset_out(ring: &PolyRing, p: &Polynomial, base: usize, b: usize) -> Polynomial {
    let images: Vec<Polynomial> = (0..ring.nvars())
        .map(|v| {
            let (pt, c) = ring.var_info(v).expect("no auxiliary variables in charts");
            if pt == b {
                ring.var_poly(v).sub(&ring.var_poly(ring.var(base, c)))
            } else {
                ring.var_poly(v)
            }
        })
        .collect();
    p.substitute(&images, ring.nvars())
}

/// Split `p` by the exponent pattern of point `b`'s two coordinates:
/// returns `(e_x, e_y) ↦ coefficient` with point `b`'s exponents cleared
/// from the coefficient.
fn split_by_point(ring: &PolyRing, p: &Polynomial, b: usize) -> BTreeMap<(u16, u16), Polynomial> {
    assert_eq!(ring.coords, 2, "charts are two-dimensional");
    let (vx, vy) = (ring.var(b, 0), ring.var(b, 1));
    let mut groups: BTreeMap<(u16, u16), Vec<(Monomial, Rat)>> = BTreeMap::new();
    for (m, c) in p.terms() {
        let mut exps = m.exps().to_vec();
        let key = (exps[vx], exps[vy]);
        exps[vx] = 0;
        exps[vy] = 0;
        groups
            .entry(key)
            .or_default()
            .push((Monomial::new(exps), c.clone()));
    }
    groups
        .into_iter()
        .map(|(k, terms)| (k, Polynomial::from_terms(terms)))
        .collect()
}

// ---------------------------------------------------------------------------
// Modules
// ---------------------------------------------------------------------------

/// A formal symbol multiplying polynomial coefficients: its `shift` is the
/// internal degree it contributes (`dx`, `dy` have shift 1; `dx∧dy` shift 2;
/// cubic symbols `dx³ … dy³` shift 3).
#[derive(Clone, Debug)]
pub struct FormComponent {
    pub symbol: String,
    pub shift: usize,
}

/// One flattened coefficient slot of a module: which chart ring the
/// coefficient lives in and the symbol's degree shift.
#[derive(Clone, Debug)]
pub struct CompInfo {
    pub ring: PolyRing,
    pub symbol: String,
    pub shift: usize,
}

/// The monomial coordinatisation of a module's ambient space in one degree.
struct AmbientLayout {
    monos: Vec<Vec<Monomial>>,
    index: Vec<HashMap<Monomial, usize>>,
    offset: Vec<usize>,
    dim: usize,
    /// When set, unknown monomials are skipped instead of rejected: the
    /// layout lists only orbit-representative monomials and is valid for
    /// group-invariant polynomials, which are determined by those
    /// coefficients.
    projective: bool,
}

/// A basis of the module in one internal degree: elements both as
/// component polynomial tuples and as ambient coefficient columns.
struct DegreeBasis {
    layout: Rc<AmbientLayout>,
    polys: Vec<Vec<Polynomial>>,
    columns: Vec<Vec<Rat>>,
}

enum Realize {
    /// Free module over a merged-point chart, optionally cut by point-swap
    /// symmetries `F∘σ = sign·F` and by a vanishing order along one chart
    /// diagonal (`(a, b, k)`: coefficients lie in the `k`-th power of the
    /// ideal identifying point `b` with point `a`).
    Chart {
        ring: PolyRing,
        comps: Vec<FormComponent>,
        sym: Vec<(Vec<usize>, i64)>,
        diag: Option<(usize, usize, usize)>,
    },
    /// Invariants of a graded slice of the coordinate ring of `X^n`: the
    /// whole ring (`ideal: None`) or a homogeneous ideal slice.
    Slice {
        ring: PolyRing,
        group: PermGroup,
        ideal: Option<Ideal>,
    },
    /// Direct sum of labelled summands.
    Sum(Vec<InvariantModule>),
    /// Kernel of a gluing map, in the coordinates of the map's source.
    Kernel { defining: Box<InvariantMap> },
}

/// A graded module with canonical per-degree bases, cached on demand.
/// The `twist` is formal line-bundle bookkeeping: it never affects any
/// basis or matrix.
pub struct InvariantModule {
    pub name: String,
    pub twist: i64,
    realize: Realize,
    layout_cache: RefCell<HashMap<usize, Rc<AmbientLayout>>>,
    basis_cache: RefCell<HashMap<usize, Rc<DegreeBasis>>>,
    solver_cache: RefCell<HashMap<usize, Rc<SpanSolver>>>,
}

impl InvariantModule {
    fn with_realize(name: impl Into<String>, realize: Realize) -> Self {
        InvariantModule {
            name: name.into(),
            twist: 0,
            realize,
            layout_cache: RefCell::new(HashMap::new()),
            basis_cache: RefCell::new(HashMap::new()),
            solver_cache: RefCell::new(HashMap::new()),
        }
    }

    /// Free chart module; `comps` are `(symbol, shift)` pairs.
    pub fn chart(
        name: impl Into<String>,
        ring: PolyRing,
        comps: Vec<(&str, usize)>,
        sym: Vec<(Vec<usize>, i64)>,
        diag: Option<(usize, usize, usize)>,
    ) -> Self {
        assert!(
            sym.is_empty() || diag.is_none(),
            "combined symmetry and diagonal-vanishing constraints are not needed here"
        );
        InvariantModule::with_realize(
            name,
            Realize::Chart {
                ring,
                comps: comps
                    .into_iter()
                    .map(|(s, k)| FormComponent {
                        symbol: s.to_string(),
                        shift: k,
                    })
                    .collect(),
                sym,
                diag,
            },
        )
    }

    /// Invariant slice of the coordinate ring of `X^n`.
    pub fn slice(
        name: impl Into<String>,
        ring: PolyRing,
        group: PermGroup,
        ideal: Option<Ideal>,
    ) -> Self {
        InvariantModule::with_realize(name, Realize::Slice { ring, group, ideal })
    }

    /// Direct sum; summand components are prefixed with the summand name.
    pub fn sum(name: impl Into<String>, parts: Vec<InvariantModule>) -> Self {
        InvariantModule::with_realize(name, Realize::Sum(parts))
    }

    /// Kernel of a gluing map, presented in its source's chart.
    pub fn kernel(name: impl Into<String>, defining: InvariantMap) -> Self {
        InvariantModule::with_realize(
            name,
            Realize::Kernel {
                defining: Box::new(defining),
            },
        )
    }

    /// Attach a formal twist tag (pure bookkeeping).
    pub fn with_twist(mut self, twist: i64) -> Self {
        self.twist = twist;
        self
    }

    /// Flattened coefficient slots.
    pub fn comps(&self) -> Vec<CompInfo> {
        match &self.realize {
            Realize::Chart { ring, comps, .. } => comps
                .iter()
                .map(|c| CompInfo {
                    ring: *ring,
                    symbol: c.symbol.clone(),
                    shift: c.shift,
                })
                .collect(),
            Realize::Slice { ring, .. } => vec![CompInfo {
                ring: *ring,
                symbol: "1".to_string(),
                shift: 0,
            }],
            Realize::Sum(parts) => parts
                .iter()
                .flat_map(|p| {
                    p.comps().into_iter().map(move |mut c| {
                        c.symbol = format!("{}.{}", p.name, c.symbol);
                        c
                    })
                })
                .collect(),
            Realize::Kernel { defining } => defining.source.comps(),
        }
    }

    fn layout(&self, t: usize) -> Rc<AmbientLayout> {
        if let Some(l) = self.layout_cache.borrow().get(&t) {
            return Rc::clone(l);
        }
        let layout = match &self.realize {
            Realize::Chart { ring, comps, .. } => {
                let monos: Vec<Vec<Monomial>> = comps
                    .iter()
                    .map(|c| {
                        if t >= c.shift {
                            ring.monomials_of_degree(t - c.shift)
                        } else {
                            Vec::new()
                        }
                    })
                    .collect();
                layout_from_monos(monos, false)
            }
            Realize::Slice { ring, group, .. } => {
                let reps: Vec<Monomial> = ring
                    .monomials_of_degree(t)
                    .into_iter()
                    .filter(|m| {
                        group
                            .elements()
                            .iter()
                            .all(|g| m.permute_points(ring, g.images()) <= *m)
                    })
                    .collect();
                layout_from_monos(vec![reps], true)
            }
            Realize::Sum(parts) => {
                let mut monos = Vec::new();
                for p in parts {
                    let sub = p.layout(t);
                    assert!(!sub.projective, "summands must use plain monomial layouts");
                    monos.extend(sub.monos.iter().cloned());
                }
                layout_from_monos(monos, false)
            }
            Realize::Kernel { defining } => defining.source.layout(t),
        };
        self.layout_cache.borrow_mut().insert(t, Rc::clone(&layout));
        layout
    }

    /// The ambient coefficient vector of an element given as component
    /// polynomials.
    fn ambient_vector(&self, t: usize, polys: &[Polynomial]) -> Vec<Rat> {
        let layout = self.layout(t);
        assert_eq!(polys.len(), layout.monos.len(), "component count mismatch");
        let mut v = vec![Rat::zero(); layout.dim];
        for (j, p) in polys.iter().enumerate() {
            for (m, c) in p.terms() {
                match layout.index[j].get(m) {
                    Some(&pos) => v[layout.offset[j] + pos] = c.clone(),
                    None if layout.projective => {}
                    None => panic!(
                        "module {}: monomial outside the degree-{t} layout",
                        self.name
                    ),
                }
            }
        }
        v
    }

    fn basis(&self, t: usize) -> Rc<DegreeBasis> {
        if let Some(b) = self.basis_cache.borrow().get(&t) {
            return Rc::clone(b);
        }
        let layout = self.layout(t);
        let mut polys: Vec<Vec<Polynomial>> = Vec::new();
        match &self.realize {
            Realize::Chart {
                ring,
                comps,
                sym,
                diag,
            } => {
                let ncomp = comps.len();
                for (j, c) in comps.iter().enumerate() {
                    if t < c.shift {
                        continue;
                    }
                    let d = t - c.shift;
                    if let Some((a, b, k)) = diag {
                        // Taylor basis: monomials whose offset-degree at
                        // point `b` is at least `k`, written back in the
                        // original chart coordinates.
                        for m in ring.monomials_of_degree(d) {
                            if point_degree(ring, &m, *b) >= *k {
                                let p = offset_out(
                                    ring,
                                    &Polynomial::from_terms(vec![(m, rat(1))]),
                                    *a,
                                    *b,
                                );
                                polys.push(single_comp(ncomp, j, p));
                            }
                        }
                    } else if !sym.is_empty() {
                        let closure = signed_closure(sym);
                        for m in ring.monomials_of_degree(d) {
                            let is_rep = closure
                                .iter()
                                .all(|(perm, _)| m.permute_points(ring, perm) <= m);
                            if !is_rep {
                                continue;
                            }
                            let p = signed_orbit_sum(ring, &m, &closure);
                            if !p.is_zero() {
                                polys.push(single_comp(ncomp, j, p));
                            }
                        }
                    } else {
                        for m in ring.monomials_of_degree(d) {
                            polys.push(single_comp(
                                ncomp,
                                j,
                                Polynomial::from_terms(vec![(m, rat(1))]),
                            ));
                        }
                    }
                }
            }
            Realize::Slice { ring, group, ideal } => match ideal {
                None => {
                    for s in group.orbit_sums(ring, t) {
                        polys.push(vec![s]);
                    }
                }
                Some(ideal) => {
                    // Reynolds projections of a graded basis of the slice,
                    // filtered to an independent set.  Candidates are sorted
                    // by leading position so the elimination stays cheap.
                    let mut cands: Vec<Vec<Rat>> = Vec::new();
                    let mut cand_polys: Vec<Polynomial> = Vec::new();
                    for f in ideal.graded_piece_basis(t) {
                        let p = group.reynolds(ring, &f);
                        if p.is_zero() {
                            continue;
                        }
                        cands.push(self.ambient_vector(t, &[p.clone()]));
                        cand_polys.push(p);
                    }
                    let mut order: Vec<usize> = (0..cands.len()).collect();
                    order.sort_by_key(|&i| cands[i].iter().position(|x| !x.is_zero()));
                    let mut rows = RowSpace::new(layout.dim);
                    for i in order {
                        if rows.insert(cands[i].clone()) {
                            polys.push(vec![cand_polys[i].clone()]);
                        }
                    }
                }
            },
            Realize::Sum(parts) => {
                let mut start = 0usize;
                let total: usize = parts.iter().map(|p| p.comps().len()).sum();
                for p in parts {
                    let sub = p.basis(t);
                    let width = p.comps().len();
                    for tuple in &sub.polys {
                        let mut full = vec![Polynomial::zero(); total];
                        full[start..start + width].clone_from_slice(tuple);
                        polys.push(full);
                    }
                    start += width;
                }
            }
            Realize::Kernel { defining } => {
                let amb = defining.source.basis(t);
                let mat = defining.matrix(t);
                let ncomp = defining.source.comps().len();
                for nu in mat.nullspace() {
                    let mut tuple = vec![Polynomial::zero(); ncomp];
                    for (i, w) in nu.iter().enumerate() {
                        if w.is_zero() {
                            continue;
                        }
                        for (j, q) in amb.polys[i].iter().enumerate() {
                            tuple[j] = tuple[j].add(&q.scale(w));
                        }
                    }
                    polys.push(tuple);
                }
            }
        }
        let columns: Vec<Vec<Rat>> = polys.iter().map(|p| self.ambient_vector(t, p)).collect();
        let basis = Rc::new(DegreeBasis {
            layout,
            polys,
            columns,
        });
        self.basis_cache.borrow_mut().insert(t, Rc::clone(&basis));
        basis
    }

    /// Dimension in internal degree `t`.
    pub fn dim(&self, t: usize) -> usize {
        self.basis(t).polys.len()
    }

    /// The canonical basis in degree `t`, as component polynomial tuples.
    pub fn basis_polys(&self, t: usize) -> Vec<Vec<Polynomial>> {
        self.basis(t).polys.clone()
    }

    fn solver(&self, t: usize) -> Rc<SpanSolver> {
        if let Some(s) = self.solver_cache.borrow().get(&t) {
            return Rc::clone(s);
        }
        let basis = self.basis(t);
        let mut solver = SpanSolver::new(basis.layout.dim);
        for c in &basis.columns {
            assert!(
                solver.insert(c.clone()),
                "module {}: basis is not independent at degree {t}",
                self.name
            );
        }
        let solver = Rc::new(solver);
        self.solver_cache.borrow_mut().insert(t, Rc::clone(&solver));
        solver
    }

    /// Coordinates of an element in the canonical basis, or `None` if it
    /// does not belong to the module.
    pub fn coords_of(&self, t: usize, polys: &[Polynomial]) -> Option<Vec<Rat>> {
        let v = self.ambient_vector(t, polys);
        self.solver(t).solve(&v)
    }
}

fn layout_from_monos(monos: Vec<Vec<Monomial>>, projective: bool) -> Rc<AmbientLayout> {
    let mut offset = Vec::with_capacity(monos.len());
    let mut dim = 0;
    let mut index = Vec::with_capacity(monos.len());
    for list in &monos {
        offset.push(dim);
        dim += list.len();
        index.push(monomial_index(list));
    }
    Rc::new(AmbientLayout {
        monos,
        index,
        offset,
        dim,
        projective,
    })
}

fn single_comp(ncomp: usize, j: usize, p: Polynomial) -> Vec<Polynomial> {
    let mut tuple = vec![Polynomial::zero(); ncomp];
    tuple[j] = p;
    tuple
}

/// Close a set of signed point-permutation generators into the full signed
/// group (small orders only).
fn signed_closure(gens: &[(Vec<usize>, i64)]) -> Vec<(Vec<usize>, i64)> {
    let n = gens[0].0.len();
    let identity: Vec<usize> = (0..n).collect();
    let mut seen: HashMap<Vec<usize>, i64> = HashMap::new();
    seen.insert(identity.clone(), 1);
    let mut frontier = vec![(identity, 1i64)];
    while let Some((p, s)) = frontier.pop() {
        for (g, gs) in gens {
            let q: Vec<usize> = (0..n).map(|i| g[p[i]]).collect();
            let qs = s * gs;
            match seen.get(&q) {
                Some(&old) => assert_eq!(old, qs, "inconsistent signed symmetry"),
                None => {
                    seen.insert(q.clone(), qs);
                    frontier.push((q, qs));
                }
            }
        }
    }
    seen.into_iter().collect()
}

fn signed_orbit_sum(ring: &PolyRing, m: &Monomial, closure: &[(Vec<usize>, i64)]) -> Polynomial {
    let mut acc: HashMap<Monomial, Rat> = HashMap::new();
    for (perm, sign) in closure {
        let img = m.permute_points(ring, perm);
        let e = acc.entry(img).or_insert_with(Rat::zero);
        *e += rat(*sign);
    }
    Polynomial::from_terms(acc.into_iter().filter(|(_, c)| !c.is_zero()).collect())
}

// ---------------------------------------------------------------------------
// Maps
// ---------------------------------------------------------------------------

type ApplyFn = Box<dyn Fn(usize, &[Polynomial]) -> Vec<Polynomial>>;

/// A degree-preserving map between two modules, assembled lazily into exact
/// matrices over the canonical bases.
pub struct InvariantMap {
    pub name: String,
    pub source: Rc<InvariantModule>,
    pub target: Rc<InvariantModule>,
    apply: ApplyFn,
    mats: RefCell<HashMap<usize, Rc<QMatrix>>>,
}

impl InvariantMap {
    pub fn new(
        name: impl Into<String>,
        source: Rc<InvariantModule>,
        target: Rc<InvariantModule>,
        apply: impl Fn(usize, &[Polynomial]) -> Vec<Polynomial> + 'static,
    ) -> Self {
        InvariantMap {
            name: name.into(),
            source,
            target,
            apply: Box::new(apply),
            mats: RefCell::new(HashMap::new()),
        }
    }

    /// Apply the defining formula to an element given in component
    /// polynomials (no membership check on the result).
    pub fn apply_polys(&self, t: usize, polys: &[Polynomial]) -> Vec<Polynomial> {
        (self.apply)(t, polys)
    }

    /// The matrix in degree `t` (target dim × source dim).  Panics if an
    /// image fails to lie in the declared target: that is a violated
    /// structural claim, not a recoverable condition.
    pub fn matrix(&self, t: usize) -> Rc<QMatrix> {
        if let Some(m) = self.mats.borrow().get(&t) {
            return Rc::clone(m);
        }
        let src = self.source.basis(t);
        let rows = self.target.dim(t);
        let cols: Vec<Vec<Rat>> = src
            .polys
            .iter()
            .map(|tuple| {
                let img = (self.apply)(t, tuple);
                self.target.coords_of(t, &img).unwrap_or_else(|| {
                    panic!(
                        "map {}: image of a degree-{t} basis element is not in the target {}",
                        self.name, self.target.name
                    )
                })
            })
            .collect();
        let m = Rc::new(QMatrix::from_columns(rows, &cols));
        self.mats.borrow_mut().insert(t, Rc::clone(&m));
        m
    }

    pub fn rank(&self, t: usize) -> usize {
        self.matrix(t).rank()
    }

    pub fn kernel_dim(&self, t: usize) -> usize {
        self.source.dim(t) - self.rank(t)
    }
}

fn rcm(m: InvariantModule) -> Rc<InvariantModule> {
    Rc::new(m)
}

// ---------------------------------------------------------------------------
// Shared map formulas
// ---------------------------------------------------------------------------

/// `D` for `n = 3`: `F ↦ (2∂_{x_r}F − ∂_{x_m}F)|_Δ dx + (2∂_{y_r}F − ∂_{y_m}F)|_Δ dy`.
fn d3_apply(ch2: &PolyRing, ch1: &PolyRing, f: &Polynomial) -> Vec<Polynomial> {
    let two = rat(2);
    let dx = f
        .partial(ch2.var(1, 0))
        .scale(&two)
        .sub(&f.partial(ch2.var(0, 0)));
    let dy = f
        .partial(ch2.var(1, 1))
        .scale(&two)
        .sub(&f.partial(ch2.var(0, 1)));
    vec![
        point_subst(ch2, ch1, &[0, 0], &dx),
        point_subst(ch2, ch1, &[0, 0], &dy),
    ]
}

/// `D` for `n = 4` on the symmetrised two-point chart `(m; r₁, r₂)`:
/// derivatives in the first residual, evaluated at `(M, M, r)`.
fn d4_apply(ch3: &PolyRing, ch2: &PolyRing, g: &Polynomial) -> Vec<Polynomial> {
    let two = rat(2);
    let dx = g
        .partial(ch3.var(1, 0))
        .scale(&two)
        .sub(&g.partial(ch3.var(0, 0)));
    let dy = g
        .partial(ch3.var(1, 1))
        .scale(&two)
        .sub(&g.partial(ch3.var(0, 1)));
    vec![
        point_subst(ch3, ch2, &[0, 0, 1], &dx),
        point_subst(ch3, ch2, &[0, 0, 1], &dy),
    ]
}

/// Pair-swap gluing for `n = 4`: `G ↦ G(P, Q, Q) − G(Q, P, P)`.
fn d1_apply(ch3: &PolyRing, ch2: &PolyRing, g: &Polynomial) -> Vec<Polynomial> {
    vec![point_subst(ch3, ch2, &[0, 1, 1], g).sub(&point_subst(ch3, ch2, &[1, 0, 0], g))]
}

/// Contraction `A`: `f dx + g dy ↦ (∂_{y_r}f − ∂_{x_r}g)|_Δ dx∧dy`.
fn a_apply(ch2: &PolyRing, ch1: &PolyRing, f: &Polynomial, g: &Polynomial) -> Vec<Polynomial> {
    let v = f.partial(ch2.var(1, 1)).sub(&g.partial(ch2.var(1, 0)));
    vec![point_subst(ch2, ch1, &[0, 0], &v)]
}

/// Symmetrised second-order Taylor part: a form `f dx + g dy` whose
/// coefficients vanish to second order along the chart diagonal is sent to
/// its cubic symbol in `S³Ω¹`: the `ξ^a η^b` part (`a + b = 2`) of the `dx`
/// coefficient contributes `dx^{1+a} dy^b`, and of the `dy` coefficient
/// `dx^a dy^{1+b}`.
fn symt2_apply(ch2: &PolyRing, ch1: &PolyRing, polys: &[Polynomial]) -> Vec<Polynomial> {
    let mut out = vec![Polynomial::zero(); 4];
    for (ci, f) in polys.iter().enumerate() {
        if f.is_zero() {
            continue;
        }
        let tay = offset_in(ch2, f, 0, &[1]);
        for ((eu, ev), coeff) in split_by_point(ch2, &tay, 1) {
            if (eu + ev) as usize != 2 {
                continue;
            }
            let idx = ci + ev as usize;
            let mapped = point_subst_opt(ch2, ch1, &[Some(0), None], &coeff);
            out[idx] = out[idx].add(&mapped);
        }
    }
    out
}

/// First-order differential along the first merged pair, with the third
/// point kept as a second-order offset: `f ↦ (∂-part in the first offset)`,
/// coefficients written on the merged chart `(m, r)`.
fn d1delta_apply(r3: &PolyRing, ch2: &PolyRing, f: &Polynomial) -> Vec<Polynomial> {
    let tay = offset_in(r3, f, 0, &[1, 2]);
    let parts = split_by_point(r3, &tay, 1);
    if let Some(p0) = parts.get(&(0, 0)) {
        assert!(
            p0.is_zero(),
            "the source element does not vanish on the merged diagonal"
        );
    }
    let to_chart = |q: &Polynomial| -> Polynomial {
        // points (0, 2) of the Taylor ring map to (m, offset of r from m)
        let images: Vec<Polynomial> = (0..r3.nvars())
            .map(|v| {
                let (pt, c) = r3.var_info(v).expect("geometric");
                match pt {
                    0 => ch2.var_poly(ch2.var(0, c)),
                    2 => ch2
                        .var_poly(ch2.var(1, c))
                        .sub(&ch2.var_poly(ch2.var(0, c))),
                    _ => Polynomial::zero(),
                }
            })
            .collect();
        q.substitute(&images, ch2.nvars())
    };
    let zero = Polynomial::zero();
    let dx = parts.get(&(1, 0)).unwrap_or(&zero);
    let dy = parts.get(&(0, 1)).unwrap_or(&zero);
    vec![to_chart(dx), to_chart(dy)]
}

fn invariant_ideal_dims(ideal: &Ideal, group: &PermGroup, cap: usize) -> Vec<usize> {
    let series = InvariantSeries::new(ideal, group).expect("the ideal must be group-stable");
    (0..=cap).map(|t| series.ideal_dim(t)).collect()
}

// ---------------------------------------------------------------------------
// Assembled complexes
// ---------------------------------------------------------------------------

/// A fully assembled complex: matrices for every map in every internal
/// degree up to the cap, together with the positions asserted exact and the
/// independently computed expected kernel of the first map.
pub struct ResolvedComplex {
    pub name: String,
    pub n: usize,
    pub degree_cap: usize,
    pub complex: GradedComplex,
    pub map_names: Vec<String>,
    pub exact_positions: Vec<usize>,
    pub expected_kernel: Vec<usize>,
    pub modules: Vec<Rc<InvariantModule>>,
    pub maps: Vec<InvariantMap>,
}

impl ResolvedComplex {
    fn assemble(
        name: &str,
        n: usize,
        degree_cap: usize,
        modules: Vec<Rc<InvariantModule>>,
        maps: Vec<InvariantMap>,
        exact_positions: Vec<usize>,
        expected_kernel: Vec<usize>,
    ) -> Self {
        let position_names = modules.iter().map(|m| m.name.clone()).collect();
        let dims: Vec<Vec<usize>> = modules
            .iter()
            .map(|m| (0..=degree_cap).map(|t| m.dim(t)).collect())
            .collect();
        let mats: Vec<Vec<QMatrix>> = maps
            .iter()
            .map(|f| (0..=degree_cap).map(|t| (*f.matrix(t)).clone()).collect())
            .collect();
        let complex = GradedComplex {
            position_names,
            dims,
            maps: mats,
        };
        ResolvedComplex {
            name: name.to_string(),
            n,
            degree_cap,
            complex,
            map_names: maps.iter().map(|f| f.name.clone()).collect(),
            exact_positions,
            expected_kernel,
            modules,
            maps,
        }
    }

    /// `dim ker` of the first map in each degree `0..=cap`.
    pub fn kernel_dims(&self) -> Vec<usize> {
        (0..=self.degree_cap)
            .map(|t| self.complex.dims[0][t] - self.complex.maps[0][t].rank())
            .collect()
    }

    /// Exactness data for every position and degree.
    pub fn exactness(&self) -> Vec<ExactnessReport> {
        exactness_check(&self.complex, self.degree_cap)
    }

    /// `d² = 0`, exactness at the asserted positions, and agreement of the
    /// first-map kernel with the independent computation.
    pub fn verify(&self) -> bool {
        if !self.complex.check_d_squared() {
            return false;
        }
        for &p in &self.exact_positions {
            for t in 0..=self.degree_cap {
                if !self.complex.exactness(p, t).exact {
                    return false;
                }
            }
        }
        self.kernel_dims() == self.expected_kernel
    }

    /// Machine-readable report of the check.
    pub fn report(&self) -> serde_json::Value {
        json!({
            "schema": 1,
            "name": self.name,
            "n": self.n,
            "degree_cap": self.degree_cap,
            "positions": self.complex.position_names,
            "maps": self.map_names,
            "exact_positions": self.exact_positions,
            "per_degree": self.exactness(),
            "kernel": self.kernel_dims(),
            "kernel_expected": self.expected_kernel,
            "verdict": if self.verify() { "pass" } else { "fail" },
        })
    }
}

/// Exactness reports for all positions and internal degrees `≤ cap`,
/// computed in parallel.
pub fn exactness_check(complex: &GradedComplex, degree_cap: usize) -> Vec<ExactnessReport> {
    use rayon::prelude::*;
    let cap = degree_cap.min(complex.degree_cap());
    let pairs: Vec<(usize, usize)> = (0..complex.num_positions())
        .flat_map(|p| (0..=cap).map(move |t| (p, t)))
        .collect();
    pairs
        .par_iter()
        .map(|&(p, t)| complex.exactness(p, t))
        .collect()
}

// ---------------------------------------------------------------------------
// Complex builders
// ---------------------------------------------------------------------------

/// The invariant resolution complex for `n ∈ {3, 4}`, assembled up to
/// internal degree `degree_cap`.
pub fn resolution_complex(n: usize, degree_cap: usize) -> Result<ResolvedComplex, ResolverError> {
    match n {
        3 => Ok(resolution3(degree_cap)),
        4 => Ok(resolution4(degree_cap)),
        other => Err(ResolverError::UnsupportedN(other)),
    }
}

fn resolution3(cap: usize) -> ResolvedComplex {
    let r3 = PolyRing::new(3, 2);
    let ch2 = PolyRing::new(2, 2);
    let ch1 = PolyRing::new(1, 2);
    let s3 = PermGroup::symmetric(3);
    let pos0 = rcm(InvariantModule::slice("O^{S3}", r3, s3.clone(), None));
    let pos1 = rcm(InvariantModule::chart(
        "w2(OxO)",
        ch2,
        vec![("1", 0)],
        vec![],
        None,
    ));
    let pos2 = rcm(InvariantModule::chart(
        "w3(Omega1)",
        ch1,
        vec![("dx", 1), ("dy", 1)],
        vec![],
        None,
    ));
    let map_r = InvariantMap::new(
        "r",
        Rc::clone(&pos0),
        Rc::clone(&pos1),
        move |_t, polys| vec![point_subst(&r3, &ch2, &[0, 0, 1], &polys[0])],
    );
    let map_d = InvariantMap::new(
        "D",
        Rc::clone(&pos1),
        Rc::clone(&pos2),
        move |_t, polys| d3_apply(&ch2, &ch1, &polys[0]),
    );
    let big = Ideal::big_diagonal(r3, Some(cap));
    let expected = invariant_ideal_dims(&big, &s3, cap);
    ResolvedComplex::assemble(
        "inv3",
        3,
        cap,
        vec![pos0, pos1, pos2],
        vec![map_r, map_d],
        vec![1, 2],
        expected,
    )
}

fn resolution4(cap: usize) -> ResolvedComplex {
    let r4 = PolyRing::new(4, 2);
    let ch3 = PolyRing::new(3, 2);
    let ch2 = PolyRing::new(2, 2);
    let ch1 = PolyRing::new(1, 2);
    let s4 = PermGroup::symmetric(4);

    let pos0 = rcm(InvariantModule::slice("O^{S4}", r4, s4.clone(), None));

    // position 1: kernel of the pair-swap gluing inside the symmetrised
    // two-point chart
    let amb1 = rcm(InvariantModule::chart(
        "w2(OxO_S2)",
        ch3,
        vec![("1", 0)],
        vec![(vec![0, 2, 1], 1)],
        None,
    ));
    let anti = rcm(InvariantModule::chart(
        "A4",
        ch2,
        vec![("1", 0)],
        vec![(vec![1, 0], -1)],
        None,
    ));
    let glue1 = InvariantMap::new(
        "d1",
        Rc::clone(&amb1),
        Rc::clone(&anti),
        move |_t, polys| d1_apply(&ch3, &ch2, &polys[0]),
    );
    let pos1 = rcm(InvariantModule::kernel("w2(OxO_S2)_0", glue1));

    // position 2: kernel of the contraction inside forms with first-order
    // coefficients
    let momega = rcm(InvariantModule::chart(
        "Omega1xI",
        ch2,
        vec![("dx", 1), ("dy", 1)],
        vec![],
        Some((0, 1, 1)),
    ));
    let kx = rcm(InvariantModule::chart(
        "KX",
        ch1,
        vec![("dxdy", 2)],
        vec![],
        None,
    ));
    let gluea = InvariantMap::new(
        "A",
        Rc::clone(&momega),
        Rc::clone(&kx),
        move |_t, polys| a_apply(&ch2, &ch1, &polys[0], &polys[1]),
    );
    let pos2 = rcm(InvariantModule::kernel("(Omega1xI)_0", gluea));

    let pos3 = rcm(InvariantModule::chart(
        "w4(S3Omega1)",
        ch1,
        vec![("dx3", 3), ("dx2dy", 3), ("dxdy2", 3), ("dy3", 3)],
        vec![],
        None,
    ));

    let map_r = InvariantMap::new(
        "r",
        Rc::clone(&pos0),
        Rc::clone(&pos1),
        move |_t, polys| vec![point_subst(&r4, &ch3, &[0, 0, 1, 2], &polys[0])],
    );
    let map_d = InvariantMap::new(
        "D",
        Rc::clone(&pos1),
        Rc::clone(&pos2),
        move |_t, polys| d4_apply(&ch3, &ch2, &polys[0]),
    );

    // C is defined by decomposition: every kernel element of the
    // contraction splits as (image of D) + (form with second-order
    // coefficients), and C reads the cubic symbol of the second summand.
    // Existence and single-valuedness of that reading are checked here and
    // make C ∘ D = 0 automatic.
    let w2 = rcm(InvariantModule::chart(
        "Omega1xI2",
        ch2,
        vec![("dx", 1), ("dy", 1)],
        vec![],
        Some((0, 1, 2)),
    ));
    struct CPrep {
        solver: SpanSolver,
        nd: usize,
        wtuples: Vec<Vec<Polynomial>>,
    }
    let pos1_c = Rc::clone(&pos1);
    let momega_c = Rc::clone(&momega);
    let w2_c = Rc::clone(&w2);
    let state: RefCell<HashMap<usize, Rc<CPrep>>> = RefCell::new(HashMap::new());
    let map_c = InvariantMap::new(
        "C",
        Rc::clone(&pos2),
        Rc::clone(&pos3),
        move |t, polys| {
            let prep = {
                let mut cache = state.borrow_mut();
                match cache.get(&t) {
                    Some(p) => Rc::clone(p),
                    None => {
                        let zeros = vec![Polynomial::zero(), Polynomial::zero()];
                        let dim = momega_c.ambient_vector(t, &zeros).len();
                        let mut cols: Vec<Vec<Rat>> = Vec::new();
                        for tuple in pos1_c.basis_polys(t) {
                            let img = d4_apply(&ch3, &ch2, &tuple[0]);
                            cols.push(momega_c.ambient_vector(t, &img));
                        }
                        let nd = cols.len();
                        let wtuples = w2_c.basis_polys(t);
                        for tuple in &wtuples {
                            cols.push(momega_c.ambient_vector(t, tuple));
                        }
                        let mut solver = SpanSolver::new(dim);
                        for c in &cols {
                            solver.insert(c.clone());
                        }
                        // single-valuedness: relations between the two
                        // families must have symbol zero
                        let relmat = QMatrix::from_columns(dim, &cols);
                        for nu in relmat.nullspace() {
                            let mut wpart = vec![Polynomial::zero(); 2];
                            for (i, tuple) in wtuples.iter().enumerate() {
                                let coeff = &nu[nd + i];
                                if coeff.is_zero() {
                                    continue;
                                }
                                for j in 0..2 {
                                    wpart[j] = wpart[j].add(&tuple[j].scale(coeff));
                                }
                            }
                            let sym = symt2_apply(&ch2, &ch1, &wpart);
                            assert!(
                                sym.iter().all(|p| p.is_zero()),
                                "cubic symbol is not single-valued on the decomposition at degree {t}"
                            );
                        }
                        let prep = Rc::new(CPrep {
                            solver,
                            nd,
                            wtuples,
                        });
                        cache.insert(t, Rc::clone(&prep));
                        prep
                    }
                }
            };
            let kappa = momega_c.ambient_vector(t, polys);
            let z = prep.solver.solve(&kappa).unwrap_or_else(|| {
                panic!(
                    "kernel of the contraction does not decompose into im(D) + second-order forms at degree {t}"
                )
            });
            let mut wpart = vec![Polynomial::zero(); 2];
            for (i, tuple) in prep.wtuples.iter().enumerate() {
                let coeff = &z[prep.nd + i];
                if coeff.is_zero() {
                    continue;
                }
                for j in 0..2 {
                    wpart[j] = wpart[j].add(&tuple[j].scale(coeff));
                }
            }
            symt2_apply(&ch2, &ch1, &wpart)
        },
    );

    let big = Ideal::big_diagonal(r4, Some(cap));
    let expected = invariant_ideal_dims(&big, &s4, cap);
    ResolvedComplex::assemble(
        "inv4",
        4,
        cap,
        vec![pos0, pos1, pos2, pos3],
        vec![map_r, map_d, map_c],
        vec![1, 2, 3],
        expected,
    )
}

/// The `n = 3` complex for the subgroup permuting only the last two
/// points: `O^G → (two pairwise charts)₀ → w₃(Ω¹)`.
pub fn mixed_invariant_complex(degree_cap: usize) -> ResolvedComplex {
    let r3 = PolyRing::new(3, 2);
    let ch2 = PolyRing::new(2, 2);
    let ch1 = PolyRing::new(1, 2);
    let g23 = PermGroup::symmetric_on(3, &[1, 2]);
    let pos0 = rcm(InvariantModule::slice("O^{S23}", r3, g23.clone(), None));

    let amb = rcm(InvariantModule::sum(
        "w2pair",
        vec![
            InvariantModule::chart("d12", ch2, vec![("1", 0)], vec![], None),
            InvariantModule::chart("d23", ch2, vec![("1", 0)], vec![], None),
        ],
    ));
    let merge = rcm(InvariantModule::chart(
        "w3(O)",
        ch1,
        vec![("1", 0)],
        vec![],
        None,
    ));
    let glue = InvariantMap::new("glue", Rc::clone(&amb), Rc::clone(&merge), move |_t, p| {
        vec![point_subst(&ch2, &ch1, &[0, 0], &p[0])
            .sub(&point_subst(&ch2, &ch1, &[0, 0], &p[1]))]
    });
    let pos1 = rcm(InvariantModule::kernel("w2pair_0", glue));
    let pos2 = rcm(InvariantModule::chart(
        "w3(Omega1)",
        ch1,
        vec![("dx", 1), ("dy", 1)],
        vec![],
        None,
    ));

    let map1 = InvariantMap::new(
        "r2",
        Rc::clone(&pos0),
        Rc::clone(&pos1),
        move |_t, polys| {
            vec![
                point_subst(&r3, &ch2, &[0, 0, 1], &polys[0]),
                point_subst(&r3, &ch2, &[1, 0, 0], &polys[0]),
            ]
        },
    );
    let map2 = InvariantMap::new(
        "D2",
        Rc::clone(&pos1),
        Rc::clone(&pos2),
        move |_t, polys| {
            let f = &polys[0]; // first-pair chart: (merged 12, residual 3)
            let g = &polys[1]; // second-pair chart: (merged 23, residual 1)
            let two = rat(2);
            let dx = point_subst(&ch2, &ch1, &[0, 0], &f.partial(ch2.var(1, 0)).scale(&two))
                .sub(&point_subst(&ch2, &ch1, &[0, 0], &g.partial(ch2.var(0, 0))));
            let dy = point_subst(&ch2, &ch1, &[0, 0], &f.partial(ch2.var(1, 1)).scale(&two))
                .sub(&point_subst(&ch2, &ch1, &[0, 0], &g.partial(ch2.var(0, 1))));
            vec![dx, dy]
        },
    );
    let big = Ideal::big_diagonal(r3, Some(degree_cap));
    let expected = invariant_ideal_dims(&big, &g23, degree_cap);
    ResolvedComplex::assemble(
        "mixed3",
        3,
        degree_cap,
        vec![pos0, pos1, pos2],
        vec![map1, map2],
        vec![1, 2],
        expected,
    )
}

/// The three-position comparison complex for `n = 4`:
/// `O^{S4} → w2(OxO_S2) → A4`, exact at the last position; its position-1
/// homology equals the rank of `D` in the `n = 4` resolution.
pub fn merge_pair_complex(degree_cap: usize) -> ResolvedComplex {
    let r4 = PolyRing::new(4, 2);
    let ch3 = PolyRing::new(3, 2);
    let ch2 = PolyRing::new(2, 2);
    let s4 = PermGroup::symmetric(4);
    let pos0 = rcm(InvariantModule::slice("O^{S4}", r4, s4.clone(), None));
    let pos1 = rcm(InvariantModule::chart(
        "w2(OxO_S2)",
        ch3,
        vec![("1", 0)],
        vec![(vec![0, 2, 1], 1)],
        None,
    ));
    let pos2 = rcm(InvariantModule::chart(
        "A4",
        ch2,
        vec![("1", 0)],
        vec![(vec![1, 0], -1)],
        None,
    ));
    let map_r = InvariantMap::new(
        "r",
        Rc::clone(&pos0),
        Rc::clone(&pos1),
        move |_t, polys| vec![point_subst(&r4, &ch3, &[0, 0, 1, 2], &polys[0])],
    );
    let map_d1 = InvariantMap::new(
        "d1",
        Rc::clone(&pos1),
        Rc::clone(&pos2),
        move |_t, polys| d1_apply(&ch3, &ch2, &polys[0]),
    );
    let big = Ideal::big_diagonal(r4, Some(degree_cap));
    let expected = invariant_ideal_dims(&big, &s4, degree_cap);
    ResolvedComplex::assemble(
        "pairs4",
        4,
        degree_cap,
        vec![pos0, pos1, pos2],
        vec![map_r, map_d1],
        vec![2],
        expected,
    )
}

/// The four-term second-order sequence for `n = 3` and the subgroup fixing
/// the first point: second-order invariant slice → invariant big-diagonal
/// ideal → forms with second-order coefficients → cubic symbols.  Exact at
/// every position.
pub fn second_order_complex(degree_cap: usize) -> ResolvedComplex {
    let r3 = PolyRing::new(3, 2);
    let ch2 = PolyRing::new(2, 2);
    let ch1 = PolyRing::new(1, 2);
    let g23 = PermGroup::symmetric_on(3, &[1, 2]);
    let cap = Some(degree_cap);

    let big = Ideal::big_diagonal(r3, cap);
    let sq = |i: usize, j: usize| Ideal::pairwise_diagonal(r3, i, j).power(2);
    let i2 = sq(0, 1)
        .intersection(&sq(0, 2), cap)
        .intersection(&sq(1, 2), cap);

    let pos0 = rcm(InvariantModule::slice(
        "(I2)^{S23}",
        r3,
        g23.clone(),
        Some(i2),
    ));
    let pos1 = rcm(InvariantModule::slice(
        "(Idelta)^{S23}",
        r3,
        g23.clone(),
        Some(big),
    ));
    let pos2 = rcm(InvariantModule::chart(
        "Omega1xI2",
        ch2,
        vec![("dx", 1), ("dy", 1)],
        vec![],
        Some((0, 1, 2)),
    ));
    let pos3 = rcm(InvariantModule::chart(
        "S3Omega1",
        ch1,
        vec![("dx3", 3), ("dx2dy", 3), ("dxdy2", 3), ("dy3", 3)],
        vec![],
        None,
    ));
    let inc = InvariantMap::new("inc", Rc::clone(&pos0), Rc::clone(&pos1), |_t, p| {
        vec![p[0].clone()]
    });
    let ddelta = InvariantMap::new(
        "d1Delta",
        Rc::clone(&pos1),
        Rc::clone(&pos2),
        move |_t, polys| d1delta_apply(&r3, &ch2, &polys[0]),
    );
    let sym2 = InvariantMap::new(
        "sym2",
        Rc::clone(&pos2),
        Rc::clone(&pos3),
        move |_t, polys| symt2_apply(&ch2, &ch1, polys),
    );
    let expected = vec![0; degree_cap + 1];
    ResolvedComplex::assemble(
        "ord2",
        3,
        degree_cap,
        vec![pos0, pos1, pos2, pos3],
        vec![inc, ddelta, sym2],
        vec![0, 1, 2, 3],
        expected,
    )
}

/// Build a complex and return its machine-readable exactness report.
pub fn resolution_report(n: usize, degree_cap: usize) -> Result<serde_json::Value, ResolverError> {
    Ok(resolution_complex(n, degree_cap)?.report())
}

// ---------------------------------------------------------------------------
// Standalone map constructors
// ---------------------------------------------------------------------------

/// The merge map `r` on its full chart target (`n ∈ {3, 4}`).
pub fn map_r(n: usize) -> Result<InvariantMap, ResolverError> {
    match n {
        3 => {
            let r3 = PolyRing::new(3, 2);
            let ch2 = PolyRing::new(2, 2);
            let src = rcm(InvariantModule::slice(
                "O^{S3}",
                r3,
                PermGroup::symmetric(3),
                None,
            ));
            let dst = rcm(InvariantModule::chart(
                "w2(OxO)",
                ch2,
                vec![("1", 0)],
                vec![],
                None,
            ));
            Ok(InvariantMap::new("r", src, dst, move |_t, polys| {
                vec![point_subst(&r3, &ch2, &[0, 0, 1], &polys[0])]
            }))
        }
        4 => {
            let r4 = PolyRing::new(4, 2);
            let ch3 = PolyRing::new(3, 2);
            let src = rcm(InvariantModule::slice(
                "O^{S4}",
                r4,
                PermGroup::symmetric(4),
                None,
            ));
            let dst = rcm(InvariantModule::chart(
                "w2(OxO_S2)",
                ch3,
                vec![("1", 0)],
                vec![(vec![0, 2, 1], 1)],
                None,
            ));
            Ok(InvariantMap::new("r", src, dst, move |_t, polys| {
                vec![point_subst(&r4, &ch3, &[0, 0, 1, 2], &polys[0])]
            }))
        }
        other => Err(ResolverError::UnsupportedN(other)),
    }
}

/// The pair-swap gluing `d1` (`n = 4` only).
pub fn map_d1(n: usize) -> Result<InvariantMap, ResolverError> {
    if n != 4 {
        return Err(ResolverError::UnsupportedN(n));
    }
    let ch3 = PolyRing::new(3, 2);
    let ch2 = PolyRing::new(2, 2);
    let src = rcm(InvariantModule::chart(
        "w2(OxO_S2)",
        ch3,
        vec![("1", 0)],
        vec![(vec![0, 2, 1], 1)],
        None,
    ));
    let dst = rcm(InvariantModule::chart(
        "A4",
        ch2,
        vec![("1", 0)],
        vec![(vec![1, 0], -1)],
        None,
    ));
    Ok(InvariantMap::new("d1", src, dst, move |_t, polys| {
        d1_apply(&ch3, &ch2, &polys[0])
    }))
}

/// The differential `D` on the full merge chart (`n ∈ {3, 4}`).  For
/// `n = 4` the target is the free form chart; the image lands in the ideal
/// slice exactly on the kernel of `d1`.
pub fn map_d(n: usize) -> Result<InvariantMap, ResolverError> {
    let ch1 = PolyRing::new(1, 2);
    let ch2 = PolyRing::new(2, 2);
    match n {
        3 => {
            let src = rcm(InvariantModule::chart(
                "w2(OxO)",
                ch2,
                vec![("1", 0)],
                vec![],
                None,
            ));
            let dst = rcm(InvariantModule::chart(
                "w3(Omega1)",
                ch1,
                vec![("dx", 1), ("dy", 1)],
                vec![],
                None,
            ));
            Ok(InvariantMap::new("D", src, dst, move |_t, polys| {
                d3_apply(&ch2, &ch1, &polys[0])
            }))
        }
        4 => {
            let ch3 = PolyRing::new(3, 2);
            let src = rcm(InvariantModule::chart(
                "w2(OxO_S2)",
                ch3,
                vec![("1", 0)],
                vec![(vec![0, 2, 1], 1)],
                None,
            ));
            let dst = rcm(InvariantModule::chart(
                "Omega1free",
                ch2,
                vec![("dx", 1), ("dy", 1)],
                vec![],
                None,
            ));
            Ok(InvariantMap::new("D", src, dst, move |_t, polys| {
                d4_apply(&ch3, &ch2, &polys[0])
            }))
        }
        other => Err(ResolverError::UnsupportedN(other)),
    }
}

/// The contraction `A` from forms with first-order coefficients to the
/// canonical-bundle chart.
pub fn map_a() -> InvariantMap {
    let ch2 = PolyRing::new(2, 2);
    let ch1 = PolyRing::new(1, 2);
    let src = rcm(InvariantModule::chart(
        "Omega1xI",
        ch2,
        vec![("dx", 1), ("dy", 1)],
        vec![],
        Some((0, 1, 1)),
    ));
    let dst = rcm(InvariantModule::chart(
        "KX",
        ch1,
        vec![("dxdy", 2)],
        vec![],
        None,
    ));
    InvariantMap::new("A", src, dst, move |_t, polys| {
        a_apply(&ch2, &ch1, &polys[0], &polys[1])
    })
}

/// The cubic-symbol map `C` on forms with second-order coefficients.
pub fn map_c() -> InvariantMap {
    let ch2 = PolyRing::new(2, 2);
    let ch1 = PolyRing::new(1, 2);
    let src = rcm(InvariantModule::chart(
        "Omega1xI2",
        ch2,
        vec![("dx", 1), ("dy", 1)],
        vec![],
        Some((0, 1, 2)),
    ));
    let dst = rcm(InvariantModule::chart(
        "S3Omega1",
        ch1,
        vec![("dx3", 3), ("dx2dy", 3), ("dxdy2", 3), ("dy3", 3)],
        vec![],
        None,
    ));
    InvariantMap::new("C", src, dst, move |_t, polys| {
        symt2_apply(&ch2, &ch1, polys)
    })
}

// ---------------------------------------------------------------------------
// The non-invariant comparison map for n = 4
// ---------------------------------------------------------------------------

/// All 2-element subsets of `{0..3}` in lexicographic order.
fn pairs4() -> Vec<(usize, usize)> {
    vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
}

/// Chart groups of the diagonal of a two-edge graph on 4 vertices:
/// connected components plus lone vertices, sorted by minimal element.
fn merge_groups(edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..4).collect();
    fn find(parent: &mut Vec<usize>, mut v: usize) -> usize {
        while parent[v] != v {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        v
    }
    for &(a, b) in edges {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra.max(rb)] = ra.min(rb);
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for v in 0..4 {
        let r = find(&mut parent, v);
        groups.entry(r).or_default().push(v);
    }
    groups.into_values().collect()
}

/// The comparison map for `n = 4`: from the glued submodule of the six
/// pairwise-diagonal charts to the four triple charts of forms with
/// first-order coefficients.  For a triple `H` with lexicographically
/// ordered triangle edges `I < J < K`, the `H`-component is
/// `d_I r_J (f̃_J − f̃_I) − d_I r_K (f̃_K − f̃_I)` where `f̃_L` lifts the
/// chart function of the pair `L` and `d_I`, `r_J` are the first-order
/// differential along `Δ_I` and the restriction to `Δ_J`.
pub fn map_atilde() -> InvariantMap {
    let r4 = PolyRing::new(4, 2);
    let p3 = PolyRing::new(3, 2);
    let ch2 = PolyRing::new(2, 2);
    let pairs = pairs4();

    // ambient: one three-point chart per pair (merged pair, two residuals)
    let amb = rcm(InvariantModule::sum(
        "w2charts",
        pairs
            .iter()
            .map(|&(a, b)| {
                InvariantModule::chart(format!("d{a}{b}"), p3, vec![("1", 0)], vec![], None)
            })
            .collect(),
    ));

    // gluing: for every unordered pair of distinct edges, the signed sum of
    // restrictions to the union diagonal
    struct GlueComp {
        li: usize,
        mi: usize,
        map_l: Vec<usize>,
        map_m: Vec<usize>,
        sign_l: i64,
        sign_m: i64,
        chart: PolyRing,
    }
    let mut comps: Vec<GlueComp> = Vec::new();
    let mut target_parts: Vec<InvariantModule> = Vec::new();
    for li in 0..pairs.len() {
        for mi in li + 1..pairs.len() {
            let (l, m) = (pairs[li], pairs[mi]);
            let groups = merge_groups(&[l, m]);
            let chart = PolyRing::new(groups.len(), 2);
            let mut orig_to_chart = vec![0usize; 4];
            for (gi, g) in groups.iter().enumerate() {
                for &v in g {
                    orig_to_chart[v] = gi;
                }
            }
            // pair chart points: merged pair then residuals ascending
            let chart_map = |pair: (usize, usize)| -> Vec<usize> {
                let mut map = vec![0usize; 3];
                map[0] = orig_to_chart[pair.0];
                let mut rest: Vec<usize> = (0..4).filter(|v| *v != pair.0 && *v != pair.1).collect();
                rest.sort_unstable();
                map[1] = orig_to_chart[rest[0]];
                map[2] = orig_to_chart[rest[1]];
                map
            };
            let union = SimpleGraph::new(4, vec![l, m]).expect("valid edges");
            let edge = |e: (usize, usize)| SimpleGraph::new(4, vec![e]).expect("valid edge");
            let sign_l = epsilon_sign(&edge(l), &union)
                .expect("an edge is a subgraph of its union");
            let sign_m = epsilon_sign(&edge(m), &union)
                .expect("an edge is a subgraph of its union");
            comps.push(GlueComp {
                li,
                mi,
                map_l: chart_map(l),
                map_m: chart_map(m),
                sign_l,
                sign_m,
                chart,
            });
            target_parts.push(InvariantModule::chart(
                format!("G{li}_{mi}"),
                chart,
                vec![("1", 0)],
                vec![],
                None,
            ));
        }
    }
    let glue_target = rcm(InvariantModule::sum("unions", target_parts));
    let glue = InvariantMap::new(
        "d1edges",
        Rc::clone(&amb),
        Rc::clone(&glue_target),
        move |_t, polys| {
            comps
                .iter()
                .map(|c| {
                    let fl = point_subst(&p3, &c.chart, &c.map_l, &polys[c.li]);
                    let fm = point_subst(&p3, &c.chart, &c.map_m, &polys[c.mi]);
                    fl.scale(&rat(c.sign_l)).add(&fm.scale(&rat(c.sign_m)))
                })
                .collect()
        },
    );
    let src = rcm(InvariantModule::kernel("w2charts_0", glue));

    // target: for each triple H, forms on (merged H, fourth point) with
    // first-order coefficients
    let triples: Vec<[usize; 3]> = vec![[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]];
    let dst = rcm(InvariantModule::sum(
        "triples",
        triples
            .iter()
            .map(|h| {
                InvariantModule::chart(
                    format!("H{}{}{}", h[0], h[1], h[2]),
                    ch2,
                    vec![("dx", 1), ("dy", 1)],
                    vec![],
                    Some((0, 1, 1)),
                )
            })
            .collect(),
    ));

    let pairs_for_apply = pairs4();
    let triples_apply = triples;
    InvariantMap::new("Atilde", src, dst, move |_t, polys| {
        // lift every pair chart to the full ring: merged point at min(L)
        let lifts: Vec<Polynomial> = pairs_for_apply
            .iter()
            .zip(polys.iter())
            .map(|(&(a, b), f)| {
                let mut map = vec![0usize; 3];
                map[0] = a;
                let mut rest: Vec<usize> = (0..4).filter(|v| *v != a && *v != b).collect();
                rest.sort_unstable();
                map[1] = rest[0];
                map[2] = rest[1];
                point_subst(&p3, &r4, &map, f)
            })
            .collect();
        let edge_index = |e: (usize, usize)| -> usize {
            pairs_for_apply.iter().position(|&p| p == e).expect("edge")
        };
        let mut out: Vec<Polynomial> = Vec::with_capacity(8);
        for h in &triples_apply {
            let (i, j, k) = (h[0], h[1], h[2]);
            let fourth = (0..4).find(|v| !h.contains(v)).expect("fourth point");
            let e_i = (i, j);
            let e_j = (i, k);
            let e_k = (j, k);
            // d_I r_E (f̃_E − f̃_I) for E = J, K: restrict to Δ_E, then take
            // the first-order part along Δ_I, coefficients on (merged H,
            // fourth point)
            let term = |e: (usize, usize)| -> (Polynomial, Polynomial) {
                let diff = lifts[edge_index(e)].sub(&lifts[edge_index(e_i)]);
                // restriction to Δ_E: identify max(e) with min(e)
                let mut rmap: Vec<usize> = (0..4).collect();
                rmap[e.1] = e.0;
                let restricted = point_subst(&r4, &r4, &rmap, &diff);
                let tay = offset_in(&r4, &restricted, i, &[j]);
                let parts = split_by_point(&r4, &tay, j);
                if let Some(p0) = parts.get(&(0, 0)) {
                    assert!(
                        p0.is_zero(),
                        "glued element does not vanish on the union diagonal"
                    );
                }
                let mut chart_map: Vec<Option<usize>> = vec![None; 4];
                chart_map[i] = Some(0);
                chart_map[fourth] = Some(1);
                let zero = Polynomial::zero();
                let dx = point_subst_opt(&r4, &ch2, &chart_map, parts.get(&(1, 0)).unwrap_or(&zero));
                let dy = point_subst_opt(&r4, &ch2, &chart_map, parts.get(&(0, 1)).unwrap_or(&zero));
                (dx, dy)
            };
            let (jx, jy) = term(e_j);
            let (kx, ky) = term(e_k);
            out.push(jx.sub(&kx));
            out.push(jy.sub(&ky));
        }
        out
    })
}

/// The degreewise jet map along all pairwise diagonals of `l(μ)` points:
/// from the slice of functions vanishing to order `l` on every pairwise
/// diagonal to the `l`-th symbols along each diagonal.  The composition μ
/// is formal weight bookkeeping; only its length enters the desk-scale
/// realisation.  The kernel consists of functions vanishing to order
/// `l + 1`.
pub fn map_dl_delta(mu: &[usize], l: usize, degree_cap: usize) -> Result<InvariantMap, ResolverError> {
    let pts = mu.len();
    if !(2..=4).contains(&pts) {
        return Err(ResolverError::BadInput(format!(
            "need between 2 and 4 parts, got {pts}"
        )));
    }
    if l == 0 {
        return Err(ResolverError::BadInput("the order l must be positive".into()));
    }
    let ring = PolyRing::new(pts, 2);
    let small = PolyRing::new(pts - 1, 2);
    let cap = Some(degree_cap);
    let mut pair_list: Vec<(usize, usize)> = Vec::new();
    for i in 0..pts {
        for j in i + 1..pts {
            pair_list.push((i, j));
        }
    }
    let mut ideal: Option<Ideal> = None;
    for &(i, j) in &pair_list {
        let p = Ideal::pairwise_diagonal(ring, i, j).power(l);
        ideal = Some(match ideal {
            None => p,
            Some(acc) => acc.intersection(&p, cap),
        });
    }
    let trivial = PermGroup::symmetric_on(pts, &[]);
    let src = rcm(InvariantModule::slice(
        format!("I^{l}-slice"),
        ring,
        trivial,
        ideal,
    ));
    let mut parts_mod: Vec<InvariantModule> = Vec::new();
    for &(i, j) in &pair_list {
        let comps: Vec<(String, usize)> = (0..=l)
            .map(|a| (format!("d{i}{j}:dx{}dy{}", l - a, a), l))
            .collect();
        parts_mod.push(InvariantModule::chart(
            format!("S{l}[{i}{j}]"),
            small,
            comps.iter().map(|(s, k)| (s.as_str(), *k)).collect(),
            vec![],
            None,
        ));
    }
    let dst = rcm(InvariantModule::sum(
        format!("jets{l}"),
        parts_mod,
    ));
    let pair_list_apply = pair_list;
    let name = format!("d{l}Delta(mu={mu:?})");
    Ok(InvariantMap::new(name, src, dst, move |_t, polys| {
        let f = &polys[0];
        let mut out = Vec::with_capacity(pair_list_apply.len() * (l + 1));
        for &(i, j) in &pair_list_apply {
            let tay = offset_in(&ring, f, i, &[j]);
            let parts = split_by_point(&ring, &tay, j);
            let mut chart_map: Vec<Option<usize>> = vec![None; pts];
            let mut next = 0usize;
            for p in 0..pts {
                if p != j {
                    chart_map[p] = Some(next);
                    next += 1;
                }
            }
            for a in 0..=l {
                let zero = Polynomial::zero();
                let part = parts.get(&((l - a) as u16, a as u16)).unwrap_or(&zero);
                out.push(point_subst_opt(&ring, &small, &chart_map, part));
            }
        }
        out
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn offset_roundtrip() {
        let ch2 = PolyRing::new(2, 2);
        let p = ch2
            .var_poly(ch2.var(1, 0))
            .mul(&ch2.var_poly(ch2.var(0, 1)))
            .add(&ch2.var_poly(ch2.var(1, 1)));
        let there = offset_in(&ch2, &p, 0, &[1]);
        let back = offset_out(&ch2, &there, 0, 1);
        assert_eq!(back, p);
    }

    #[test]
    fn split_by_point_collects_patterns() {
        let ch2 = PolyRing::new(2, 2);
        // (x_m + x_r)² = x_m² + 2 x_m x_r + x_r²
        let p = ch2
            .var_poly(ch2.var(0, 0))
            .add(&ch2.var_poly(ch2.var(1, 0)));
        let sq = p.mul(&p);
        let parts = split_by_point(&ch2, &sq, 1);
        assert_eq!(parts.len(), 3);
        assert_eq!(
            parts.get(&(1, 0)).unwrap().terms().len(),
            1,
            "mixed term present once"
        );
    }

    #[test]
    fn chart_dims_count_monomials() {
        let ch1 = PolyRing::new(1, 2);
        let m = InvariantModule::chart(
            "forms",
            ch1,
            vec![("dx", 1), ("dy", 1)],
            vec![],
            None,
        );
        // coefficients of degree t−1 in two variables: 2·t
        assert_eq!(m.dim(0), 0);
        assert_eq!(m.dim(1), 2);
        assert_eq!(m.dim(4), 8);
    }

    #[test]
    fn antisymmetric_chart_dimension() {
        let ch2 = PolyRing::new(2, 2);
        let a4 = InvariantModule::chart("A4", ch2, vec![("1", 0)], vec![(vec![1, 0], -1)], None);
        // degree2: 10 monomials, 2 symmetric under the swap ⇒ (10−2)/2 = 4
        assert_eq!(a4.dim(2), 4);
        let sym = InvariantModule::chart("S", ch2, vec![("1", 0)], vec![(vec![1, 0], 1)], None);
        assert_eq!(sym.dim(2), 6);
        assert_eq!(a4.dim(2) + sym.dim(2), 10);
    }

    #[test]
    fn taylor_slice_dimension() {
        let ch2 = PolyRing::new(2, 2);
        // coefficients of degree 2 with offset-order ≥ 1: 10 − 3 = 7
        let m = InvariantModule::chart(
            "I-slice",
            ch2,
            vec![("1", 0)],
            vec![],
            Some((0, 1, 1)),
        );
        assert_eq!(m.dim(2), 7);
        // order ≥ 2: subtract the 3 first-order offsets · 2 base monomials?
        // directly: patterns with offset degree ≥ 2 among degree-2 monomials
        let m2 = InvariantModule::chart(
            "I2-slice",
            ch2,
            vec![("1", 0)],
            vec![],
            Some((0, 1, 2)),
        );
        assert_eq!(m2.dim(2), 3);
    }

    #[test]
    fn d_kills_merge_of_invariants_n3() {
        // D ∘ r = 0 on symmetric polynomials
        let r3 = PolyRing::new(3, 2);
        let ch2 = PolyRing::new(2, 2);
        let ch1 = PolyRing::new(1, 2);
        let s3 = PermGroup::symmetric(3);
        for t in 1..=4 {
            for s in s3.orbit_sums(&r3, t) {
                let merged = point_subst(&r3, &ch2, &[0, 0, 1], &s);
                let img = d3_apply(&ch2, &ch1, &merged);
                assert!(img.iter().all(|p| p.is_zero()), "degree {t}");
            }
        }
    }

    #[test]
    fn d4_on_split_element_gives_offset_form() {
        // the two-point chart element x_m·(x_{r1}+x_{r2}) is swap-symmetric,
        // glues to zero, and D sends it to (x_M − x_r) dx
        let ch3 = PolyRing::new(3, 2);
        let ch2 = PolyRing::new(2, 2);
        let f = ch3.var_poly(ch3.var(0, 0)).mul(
            &ch3.var_poly(ch3.var(1, 0))
                .add(&ch3.var_poly(ch3.var(2, 0))),
        );
        let glued = d1_apply(&ch3, &ch2, &f);
        assert!(glued[0].is_zero());
        let img = d4_apply(&ch3, &ch2, &f);
        let expected = ch2
            .var_poly(ch2.var(0, 0))
            .sub(&ch2.var_poly(ch2.var(1, 0)));
        assert_eq!(img[0], expected);
        assert!(img[1].is_zero());
        // and the contraction kills it
        let ch1 = PolyRing::new(1, 2);
        let a = a_apply(&ch2, &ch1, &img[0], &img[1]);
        assert!(a[0].is_zero());
    }

    #[test]
    fn second_order_jet_of_invariant_cubic() {
        // f = q·(x₃−x₂) with q the difference quadric vanishes on the big
        // diagonal, is invariant under swapping the last two points, and its
        // first-order part along the merged pair is ξη dx − ξ² dy
        let r3 = PolyRing::new(3, 2);
        let ch2 = PolyRing::new(2, 2);
        let xv = |p: usize| r3.var_poly(r3.var(p, 0));
        let yv = |p: usize| r3.var_poly(r3.var(p, 1));
        let q = xv(1)
            .sub(&xv(0))
            .mul(&yv(2).sub(&yv(0)))
            .sub(&yv(1).sub(&yv(0)).mul(&xv(2).sub(&xv(0))));
        let f = q.mul(&xv(2).sub(&xv(1)));
        let img = d1delta_apply(&r3, &ch2, &f);
        let xi = ch2
            .var_poly(ch2.var(1, 0))
            .sub(&ch2.var_poly(ch2.var(0, 0)));
        let eta = ch2
            .var_poly(ch2.var(1, 1))
            .sub(&ch2.var_poly(ch2.var(0, 1)));
        assert_eq!(img[0], xi.mul(&eta));
        assert_eq!(img[1], xi.mul(&xi).neg());
    }

    #[test]
    fn cubic_symbol_matches_displayed_convention() {
        // ξ² dx ↦ dx³, ξη dx ↦ dx²dy, η² dy ↦ dy³, etc.
        let ch2 = PolyRing::new(2, 2);
        let ch1 = PolyRing::new(1, 2);
        let xi = ch2
            .var_poly(ch2.var(1, 0))
            .sub(&ch2.var_poly(ch2.var(0, 0)));
        let eta = ch2
            .var_poly(ch2.var(1, 1))
            .sub(&ch2.var_poly(ch2.var(0, 1)));
        let img = symt2_apply(&ch2, &ch1, &[xi.mul(&xi), Polynomial::zero()]);
        assert!(!img[0].is_zero() && img[1].is_zero() && img[2].is_zero() && img[3].is_zero());
        let img = symt2_apply(&ch2, &ch1, &[xi.mul(&eta), Polynomial::zero()]);
        assert!(img[0].is_zero() && !img[1].is_zero());
        let img = symt2_apply(&ch2, &ch1, &[Polynomial::zero(), eta.mul(&eta)]);
        assert!(!img[3].is_zero());
        // mixed display: (a dx + b dy)ξ² + … collects with the pinned sums
        let img = symt2_apply(&ch2, &ch1, &[eta.mul(&eta), xi.mul(&eta)]);
        assert!(img[0].is_zero() && img[1].is_zero());
        assert!(!img[2].is_zero() && img[3].is_zero());
    }

    #[test]
    fn small_resolution3_verifies() {
        let c = resolution_complex(3, 4).unwrap();
        assert!(c.verify());
        // degree-1 dimensions of the three positions
        assert_eq!(c.complex.dims[0][1], 2);
        assert_eq!(c.complex.dims[1][1], 4);
        assert_eq!(c.complex.dims[2][1], 2);
        // first kernel appears in degree 4 for the full symmetric group
        assert_eq!(c.kernel_dims(), vec![0, 0, 0, 0, 1]);
    }

    #[test]
    fn unsupported_n_is_rejected() {
        match resolution_complex(5, 2) {
            Err(e) => assert_eq!(e, ResolverError::UnsupportedN(5)),
            Ok(_) => panic!("n = 5 must be rejected"),
        }
        assert!(map_r(6).is_err());
        assert!(map_d1(3).is_err());
    }

    #[test]
    fn twist_does_not_change_matrices() {
        let plain = map_d(3).unwrap();
        let ch2 = PolyRing::new(2, 2);
        let ch1 = PolyRing::new(1, 2);
        let src = rcm(
            InvariantModule::chart("w2(OxO)", ch2, vec![("1", 0)], vec![], None).with_twist(-2),
        );
        let dst = rcm(
            InvariantModule::chart(
                "w3(Omega1)",
                ch1,
                vec![("dx", 1), ("dy", 1)],
                vec![],
                None,
            )
            .with_twist(3),
        );
        let twisted = InvariantMap::new("D", src, dst, move |_t, polys| {
            d3_apply(&ch2, &ch1, &polys[0])
        });
        for t in 0..=4 {
            assert_eq!(*plain.matrix(t), *twisted.matrix(t));
        }
    }
}
