//! Permutations, enumerated permutation groups, the diagonal action on
//! polynomial rings, Reynolds averaging, and graded invariant dimensions.
//!
//! The diagonal action permutes the *points*: `σ · x_{j,i} = x_{σ(j),i}`.
//! Groups are stored as explicit element lists (desk scale caps the degree
//! at 6, so the largest group ever enumerated is `S_6` with 720 elements).
//!
//! Invariant dimensions of graded ideal pieces avoid any large intersection
//! of subspaces: the invariants of the ambient graded piece are spanned by
//! monomial orbit sums, and for a `G`-stable homogeneous ideal `I`,
//!
//! * `dim (R/I)^G_t` = rank of the normal forms of the orbit sums modulo a
//!   Gröbner basis of `I`, and
//! * `dim I^G_t` = (number of orbit sums) − that rank,
//!
//! because a linear combination of orbit sums lies in `I` exactly when its
//! normal form vanishes.

use crate::linalg::RowSpace;
use crate::polycore::{normal_form, monomial_index, Ideal, Monomial, MonomialOrder, PolyRing, Polynomial};
use crate::Rat;
use num::traits::Zero;
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

/// Maximum number of points for which groups are enumerated.
pub const MAX_POINTS: usize = 6;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SymError {
    #[error("the ideal is not stable under the group")]
    NotStable,
    #[error("permutation degree {0} exceeds the desk-scale cap {MAX_POINTS}")]
    DegreeTooLarge(usize),
}

/// A permutation of `{0, …, n−1}`, stored as the image list `map[j] = σ(j)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    map: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { map: (0..n).collect() }
    }

    /// From an image list; must be a bijection of `{0, …, n−1}`.
    pub fn from_images(map: Vec<usize>) -> Self {
        let n = map.len();
        let mut seen = vec![false; n];
        for &v in &map {
            assert!(v < n && !seen[v], "not a permutation");
            seen[v] = true;
        }
        Permutation { map }
    }

    /// From disjoint cycles over `0`-based labels, e.g. `(0 1 2)(3 4)` is
    /// `from_cycles(5, &[&[0, 1, 2], &[3, 4]])`.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Self {
        let mut map: Vec<usize> = (0..n).collect();
        for cyc in cycles {
            for w in 0..cyc.len() {
                let from = cyc[w];
                let to = cyc[(w + 1) % cyc.len()];
                assert!(from < n && map[from] == from, "cycles must be disjoint and in range");
                map[from] = to;
            }
        }
        Permutation::from_images(map)
    }

    pub fn degree(&self) -> usize {
        self.map.len()
    }

    pub fn apply(&self, j: usize) -> usize {
        self.map[j]
    }

    pub fn images(&self) -> &[usize] {
        &self.map
    }

    /// `self ∘ other`: first `other`, then `self`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree());
        Permutation {
            map: (0..self.degree()).map(|j| self.map[other.map[j]]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.degree()];
        for (j, &v) in self.map.iter().enumerate() {
            inv[v] = j;
        }
        Permutation { map: inv }
    }

    /// Cycle type as a partition of `n`, parts sorted descending.
    pub fn cycle_type(&self) -> Vec<usize> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut parts = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut j = start;
            while !seen[j] {
                seen[j] = true;
                j = self.map[j];
                len += 1;
            }
            parts.push(len);
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        parts
    }

    /// Sign: `(−1)^{n − #cycles}`.
    pub fn sign(&self) -> i64 {
        let transpositions: usize = self.cycle_type().iter().map(|c| c - 1).sum();
        if transpositions % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Multiplicative order.
    pub fn order(&self) -> usize {
        self.cycle_type().into_iter().fold(1, lcm)
    }

    /// The `k`-th power (`k = 0` gives the identity).
    pub fn pow(&self, k: usize) -> Permutation {
        let mut out = Permutation::identity(self.degree());
        for _ in 0..k {
            out = self.compose(&out);
        }
        out
    }

    /// Action on a polynomial in a ring over the same number of points.
    pub fn act(&self, ring: &PolyRing, p: &Polynomial) -> Polynomial {
        assert_eq!(self.degree(), ring.points);
        p.permute_points(ring, &self.map)
    }

    /// Number of fixed points.
    pub fn fixed_points(&self) -> usize {
        self.map.iter().enumerate().filter(|(j, &v)| *j == v).count()
    }

    /// Cycle notation for display, e.g. `(1 2 3)(4 5)` with 1-based labels;
    /// the identity prints as `e`.
    pub fn cycle_string(&self) -> String {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = String::new();
        for start in 0..n {
            if seen[start] || self.map[start] == start {
                seen[start] = true;
                continue;
            }
            let mut cyc = Vec::new();
            let mut j = start;
            while !seen[j] {
                seen[j] = true;
                cyc.push(j + 1);
                j = self.map[j];
            }
            out.push('(');
            out.push_str(
                &cyc.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" "),
            );
            out.push(')');
        }
        if out.is_empty() {
            out.push('e');
        }
        out
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// A finite permutation group on `{0, …, n−1}`, stored as a sorted element
/// list closed under composition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermGroup {
    n: usize,
    elements: Vec<Permutation>,
}

impl PermGroup {
    /// The trivial group.
    pub fn trivial(n: usize) -> Self {
        PermGroup { n, elements: vec![Permutation::identity(n)] }
    }

    /// The full symmetric group `S_n`.
    pub fn symmetric(n: usize) -> Self {
        assert!(n <= MAX_POINTS, "desk-scale cap: n ≤ {MAX_POINTS}");
        let mut elements = Vec::new();
        let mut idx: Vec<usize> = (0..n).collect();
        permute_all(&mut idx, 0, &mut elements);
        elements.sort();
        PermGroup { n, elements }
    }

    /// The subgroup generated by `gens` (closure by repeated products).
    pub fn generate(n: usize, gens: &[Permutation]) -> Self {
        assert!(n <= MAX_POINTS, "desk-scale cap: n ≤ {MAX_POINTS}");
        let mut set: BTreeSet<Permutation> = BTreeSet::new();
        set.insert(Permutation::identity(n));
        let mut frontier: Vec<Permutation> = vec![Permutation::identity(n)];
        while let Some(g) = frontier.pop() {
            for h in gens {
                assert_eq!(h.degree(), n);
                let gh = h.compose(&g);
                if set.insert(gh.clone()) {
                    frontier.push(gh);
                }
            }
        }
        PermGroup { n, elements: set.into_iter().collect() }
    }

    /// The subgroup of `S_n` permuting only the (0-based) points in `support`.
    pub fn symmetric_on(n: usize, support: &[usize]) -> Self {
        let mut gens = Vec::new();
        for w in support.windows(2) {
            gens.push(Permutation::from_cycles(n, &[&[w[0], w[1]]]));
        }
        PermGroup::generate(n, &gens)
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.elements.binary_search(g).is_ok()
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.n == other.n && self.elements.iter().all(|g| other.contains(g))
    }

    /// Conjugacy classes, each a sorted element list.  Classes are ordered
    /// by cycle type in lexicographic order on descending parts
    /// (`[1,1,1,1] < [2,1,1] < [2,2] < [3,1] < [4]`), then by class size
    /// descending, then by minimal element; built-in character tables may
    /// pin their own order instead.
    pub fn conjugacy_classes(&self) -> Vec<Vec<Permutation>> {
        let mut remaining: BTreeSet<Permutation> = self.elements.iter().cloned().collect();
        let mut classes: Vec<Vec<Permutation>> = Vec::new();
        while let Some(rep) = remaining.iter().next().cloned() {
            let mut class: BTreeSet<Permutation> = BTreeSet::new();
            for g in &self.elements {
                class.insert(g.compose(&rep).compose(&g.inverse()));
            }
            for c in &class {
                remaining.remove(c);
            }
            classes.push(class.into_iter().collect());
        }
        classes.sort_by(|a, b| {
            let ta = a[0].cycle_type();
            let tb = b[0].cycle_type();
            ta.cmp(&tb)
                .then(b.len().cmp(&a.len()))
                .then(a[0].cmp(&b[0]))
        });
        classes
    }

    /// Reynolds operator: average of the orbit of `p`.
    pub fn reynolds(&self, ring: &PolyRing, p: &Polynomial) -> Polynomial {
        let mut acc = Polynomial::zero();
        for g in &self.elements {
            acc = acc.add(&g.act(ring, p));
        }
        acc.scale(&Rat::new(1.into(), (self.order() as i64).into()))
    }

    /// Orbit sums of the degree-`t` monomials: a basis of `(R_t)^G`.
    pub fn orbit_sums(&self, ring: &PolyRing, t: usize) -> Vec<Polynomial> {
        assert_eq!(self.n, ring.points);
        let mut done: BTreeSet<Monomial> = BTreeSet::new();
        let mut out = Vec::new();
        for m in ring.monomials_of_degree(t) {
            if done.contains(&m) {
                continue;
            }
            let mut orbit: BTreeMap<Monomial, Rat> = BTreeMap::new();
            for g in &self.elements {
                let gm = m.permute_points(ring, g.images());
                *orbit.entry(gm).or_insert_with(Rat::zero) += Rat::new(1.into(), 1.into());
            }
            for k in orbit.keys() {
                done.insert(k.clone());
            }
            out.push(Polynomial::from_terms(orbit.into_iter().collect()));
        }
        out
    }

    /// Is the (homogeneous) ideal stable under every group element?
    pub fn stabilizes(&self, ideal: &Ideal) -> bool {
        ideal.gens().iter().all(|g| {
            self.elements
                .iter()
                .all(|s| ideal.contains_graded(&s.act(ideal.ring(), g)))
        })
    }
}


fn permute_all(idx: &mut Vec<usize>, k: usize, out: &mut Vec<Permutation>) {
    if k == idx.len() {
        out.push(Permutation::from_images(idx.clone()));
        return;
    }
    for i in k..idx.len() {
        idx.swap(k, i);
        permute_all(idx, k + 1, out);
        idx.swap(k, i);
    }
}

/// Graded invariant dimensions of `I`, `R/I`, and subquotients `I/J`,
/// computed with orbit sums and Gröbner normal forms.
#[derive(Debug)]
pub struct InvariantSeries<'a> {
    ideal: &'a Ideal,
    group: &'a PermGroup,
}

impl<'a> InvariantSeries<'a> {
    /// Checks `G`-stability once up front; errors if the ideal is not stable.
    pub fn new(ideal: &'a Ideal, group: &'a PermGroup) -> Result<Self, SymError> {
        if group.degree() > MAX_POINTS {
            return Err(SymError::DegreeTooLarge(group.degree()));
        }
        assert_eq!(group.degree(), ideal.ring().points);
        if !group.stabilizes(ideal) {
            return Err(SymError::NotStable);
        }
        Ok(InvariantSeries { ideal, group })
    }

    /// `dim (R/I)^G_t`: rank of the normal forms of the orbit sums.
    pub fn quotient_dim(&self, t: usize) -> usize {
        self.ranks(t).1
    }

    /// `dim (I_t)^G`: number of orbit sums minus that rank.
    pub fn ideal_dim(&self, t: usize) -> usize {
        let (orbits, rank) = self.ranks(t);
        orbits - rank
    }

    fn ranks(&self, t: usize) -> (usize, usize) {
        let ring = self.ideal.ring();
        let gb = self.ideal.groebner(MonomialOrder::GrevLex, Some(t));
        let sums = self.group.orbit_sums(ring, t);
        // Column space: all degree-t monomials (normal forms live there).
        let basis = ring.monomials_of_degree(t);
        let index = monomial_index(&basis);
        let mut rows = RowSpace::new(basis.len());
        let mut rank = 0;
        for s in &sums {
            let nf = normal_form(s, &gb, MonomialOrder::GrevLex, ring);
            if !nf.is_zero() && rows.insert(nf.coeff_vector(&index, basis.len())) {
                rank += 1;
            }
        }
        (sums.len(), rank)
    }
}

/// `dim (I_t/J_t)^G` for nested `G`-stable homogeneous ideals `J ⊆ I`.
pub fn invariant_subquotient_dim(
    i: &InvariantSeries,
    j: &InvariantSeries,
    t: usize,
) -> usize {
    i.ideal_dim(t) - j.ideal_dim(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::Ideal;

    #[test]
    fn permutation_basics() {
        let g = Permutation::from_cycles(4, &[&[0, 1, 2]]);
        assert_eq!(g.apply(0), 1);
        assert_eq!(g.apply(2), 0);
        assert_eq!(g.apply(3), 3);
        assert_eq!(g.cycle_type(), vec![3, 1]);
        assert_eq!(g.sign(), 1);
        assert_eq!(g.order(), 3);
        assert_eq!(g.cycle_string(), "(1 2 3)");
        let h = Permutation::from_cycles(4, &[&[0, 1], &[2, 3]]);
        assert_eq!(h.sign(), 1);
        assert_eq!(h.cycle_type(), vec![2, 2]);
        assert_eq!(Permutation::from_cycles(4, &[&[0, 1]]).sign(), -1);
        assert_eq!(g.compose(&g.inverse()), Permutation::identity(4));
    }

    #[test]
    fn group_enumeration() {
        assert_eq!(PermGroup::symmetric(4).order(), 24);
        let d4 = PermGroup::generate(
            4,
            &[
                Permutation::from_cycles(4, &[&[1, 3]]),
                Permutation::from_cycles(4, &[&[0, 1, 2, 3]]),
            ],
        );
        assert_eq!(d4.order(), 8);
        assert!(d4.is_subgroup_of(&PermGroup::symmetric(4)));
        let s23 = PermGroup::symmetric_on(3, &[1, 2]);
        assert_eq!(s23.order(), 2);
    }

    #[test]
    fn s4_conjugacy_class_order_is_pinned() {
        let s4 = PermGroup::symmetric(4);
        let classes = s4.conjugacy_classes();
        let types: Vec<Vec<usize>> = classes.iter().map(|c| c[0].cycle_type()).collect();
        assert_eq!(
            types,
            vec![
                vec![1, 1, 1, 1],
                vec![2, 1, 1],
                vec![2, 2],
                vec![3, 1],
                vec![4],
            ]
        );
        let sizes: Vec<usize> = classes.iter().map(|c| c.len()).collect();
        assert_eq!(sizes, vec![1, 6, 3, 8, 6]);
    }

    #[test]
    fn reynolds_projects_onto_invariants() {
        let r = PolyRing::new(3, 2);
        let s3 = PermGroup::symmetric(3);
        let x1 = r.var_poly(r.var(0, 0));
        let avg = s3.reynolds(&r, &x1);
        // Reynolds of x1 is the normalized power sum (x1+x2+x3)/3… times 1.
        let expected = r
            .var_poly(r.var(0, 0))
            .add(&r.var_poly(r.var(1, 0)))
            .add(&r.var_poly(r.var(2, 0)))
            .scale(&Rat::new(1.into(), 3.into()));
        assert_eq!(avg, expected);
        // Idempotent on invariants.
        assert_eq!(s3.reynolds(&r, &avg), avg);
    }

    #[test]
    fn orbit_sums_count_invariants_of_ambient_space() {
        // dim (R_t)^{S_2} for R = ℚ[x1,y1,x2,y2]: orbit count of monomials.
        let r = PolyRing::new(2, 2);
        let s2 = PermGroup::symmetric(2);
        assert_eq!(s2.orbit_sums(&r, 1).len(), 2); // x1+x2, y1+y2
        assert_eq!(s2.orbit_sums(&r, 2).len(), 6);
    }

    #[test]
    fn invariant_series_of_pair_diagonal() {
        // n=2: I = (x1−x2, y1−y2).  (R/I)^{S2}_t ≅ degree-t part of ℚ[x,y]
        // (the quotient is the small diagonal, on which S2 acts trivially):
        // dims 1, 2, 3, …  And dim I^{S2}_t = #orbits − that.
        let r = PolyRing::new(2, 2);
        let s2 = PermGroup::symmetric(2);
        let i = Ideal::pairwise_diagonal(r, 0, 1);
        let inv = InvariantSeries::new(&i, &s2).unwrap();
        for t in 0..6 {
            assert_eq!(inv.quotient_dim(t), t + 1, "t={t}");
        }
        // Cross-checked t ≤ 8 values for dim I^{S2}_t (independent
        // modular-linear-algebra computation):
        let expect = [0, 0, 3, 6, 14, 22, 37, 52, 76];
        for (t, e) in expect.iter().enumerate() {
            assert_eq!(inv.ideal_dim(t), *e, "t={t}");
        }
    }

    #[test]
    fn non_stable_ideal_is_rejected() {
        let r = PolyRing::new(3, 2);
        let s3 = PermGroup::symmetric(3);
        let i12 = Ideal::pairwise_diagonal(r, 0, 1);
        assert_eq!(
            InvariantSeries::new(&i12, &s3).unwrap_err(),
            SymError::NotStable
        );
        // …but the stabilizer S({1,2}) × S({3}) does stabilize it.
        let s12 = PermGroup::symmetric_on(3, &[0, 1]);
        assert!(InvariantSeries::new(&i12, &s12).is_ok());
    }
}
