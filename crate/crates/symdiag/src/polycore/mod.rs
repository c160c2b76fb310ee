//! Exact multivariate polynomial arithmetic over ℚ.
//!
//! The ambient ring is always ℚ[x_{j,i}], where `j = 1..=points` indexes a
//! point (a factor of the product `X^n`) and `i = 1..=coords` indexes an
//! affine coordinate on `X`.  For elimination work a ring may carry one
//! trailing auxiliary variable `t`; the auxiliary variable has *geometric
//! degree zero*, so that homogeneous computations stay homogeneous when `t`
//! enters through the `t·a + (1−t)·b` intersection trick.
//!
//! Three monomial orders are provided:
//! * [`MonomialOrder::GrevLex`] — graded reverse lexicographic over the full
//!   variable list (the default, and the storage order of polynomials);
//! * [`MonomialOrder::Lex`] — lexicographic, `x[1,1] > x[1,2] > … > t`;
//! * [`MonomialOrder::Block`] — eliminate the auxiliary variable: compare
//!   `t`-exponents first, break ties by grevlex on the geometric variables.

mod groebner;
mod ideal;
mod text;

pub use groebner::{buchberger, normal_form, reduce_basis, spoly};
pub use ideal::Ideal;
pub use text::ParseError;

use crate::Rat;
use num::traits::{One, Zero};
use std::cmp::Ordering;
use std::collections::BTreeMap;

/// Shape of a polynomial ring ℚ[x_{j,i}] (+ optionally one elimination
/// variable).  `PolyRing` is tiny and copyable; polynomials do not hold a
/// reference to it, they just agree with it on the number of variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PolyRing {
    /// Number of points `n` (the ring is a coordinate ring of `X^n`).
    pub points: usize,
    /// Number of affine coordinates `d` on each point.
    pub coords: usize,
    /// Number of auxiliary (degree-zero) elimination variables: 0 or 1.
    pub aux: usize,
}

impl PolyRing {
    /// The coordinate ring of `X^points` with `coords` coordinates per point.
    pub fn new(points: usize, coords: usize) -> Self {
        let r = PolyRing { points, coords, aux: 0 };
        assert!(r.nvars() <= 64, "too many variables for this desk-scale library");
        r
    }

    /// Same ring with one auxiliary elimination variable appended.
    pub fn with_aux(self) -> Self {
        assert_eq!(self.aux, 0, "only one auxiliary variable is supported");
        let r = PolyRing { aux: 1, ..self };
        assert!(r.nvars() <= 64);
        r
    }

    /// Total number of variables (geometric + auxiliary).
    pub fn nvars(&self) -> usize {
        self.points * self.coords + self.aux
    }

    /// Number of geometric variables.
    pub fn geometric_vars(&self) -> usize {
        self.points * self.coords
    }

    /// Flat index of `x_{j,i}` with 0-based `point` and `coord`.
    pub fn var(&self, point: usize, coord: usize) -> usize {
        assert!(point < self.points && coord < self.coords);
        point * self.coords + coord
    }

    /// Inverse of [`PolyRing::var`]: `(point, coord)`, both 0-based; `None`
    /// for the auxiliary variable.
    pub fn var_info(&self, v: usize) -> Option<(usize, usize)> {
        if v < self.geometric_vars() {
            Some((v / self.coords, v % self.coords))
        } else {
            None
        }
    }

    /// Index of the auxiliary variable, if present.
    pub fn aux_var(&self) -> Option<usize> {
        (self.aux == 1).then(|| self.geometric_vars())
    }

    /// The constant monomial.
    pub fn one(&self) -> Monomial {
        Monomial::one(self.nvars())
    }

    /// The monomial `x_v`.
    pub fn var_mono(&self, v: usize) -> Monomial {
        let mut e = vec![0u16; self.nvars()];
        e[v] = 1;
        Monomial::new(e)
    }

    /// The polynomial `x_v`.
    pub fn var_poly(&self, v: usize) -> Polynomial {
        Polynomial::from_terms(vec![(self.var_mono(v), Rat::one())])
    }

    /// Geometric degree of a monomial (auxiliary variable weighs zero).
    pub fn degree(&self, m: &Monomial) -> usize {
        m.exps()[..self.geometric_vars()]
            .iter()
            .map(|&e| e as usize)
            .sum()
    }

    /// Degree of `m` in coordinate `i` alone, summed over all points.
    pub fn coord_degree(&self, m: &Monomial, coord: usize) -> usize {
        (0..self.points)
            .map(|j| m.exps()[self.var(j, coord)] as usize)
            .sum()
    }

    /// All geometric monomials of total degree `t` (auxiliary exponent 0),
    /// in descending grevlex order.
    pub fn monomials_of_degree(&self, t: usize) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut exps = vec![0u16; self.nvars()];
        self.enumerate_rec(&mut out, &mut exps, 0, t);
        out.sort_by(|a, b| b.cmp(a));
        out
    }

    /// All geometric monomials with the given per-coordinate degrees
    /// `multi[i]` (for `i = 0..coords`), descending grevlex.
    pub fn monomials_of_multidegree(&self, multi: &[usize]) -> Vec<Monomial> {
        assert_eq!(multi.len(), self.coords);
        let t: usize = multi.iter().sum();
        self.monomials_of_degree(t)
            .into_iter()
            .filter(|m| (0..self.coords).all(|i| self.coord_degree(m, i) == multi[i]))
            .collect()
    }

    fn enumerate_rec(&self, out: &mut Vec<Monomial>, exps: &mut Vec<u16>, v: usize, left: usize) {
        let nv = self.geometric_vars();
        if v == nv {
            if left == 0 {
                out.push(Monomial::new(exps.clone()));
            }
            return;
        }
        if v == nv - 1 {
            exps[v] = left as u16;
            out.push(Monomial::new(exps.clone()));
            exps[v] = 0;
            return;
        }
        for e in (0..=left).rev() {
            exps[v] = e as u16;
            self.enumerate_rec(out, exps, v + 1, left - e);
        }
        exps[v] = 0;
    }
}

/// A monomial: an exponent vector.  `Ord` is graded reverse lexicographic
/// over the full exponent vector; this is the storage order of polynomials.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Box<[u16]>,
}

impl Monomial {
    pub fn new(exps: Vec<u16>) -> Self {
        Monomial { exps: exps.into_boxed_slice() }
    }

    pub fn one(nvars: usize) -> Self {
        Monomial { exps: vec![0u16; nvars].into_boxed_slice() }
    }

    pub fn exps(&self) -> &[u16] {
        &self.exps
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    /// Total degree over *all* variables (including any auxiliary one).
    pub fn total_degree(&self) -> usize {
        self.exps.iter().map(|&e| e as usize).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        Monomial::new(
            self.exps
                .iter()
                .zip(other.exps.iter())
                .map(|(&a, &b)| a + b)
                .collect(),
        )
    }

    /// `self / other` if `other` divides `self`.
    pub fn try_div(&self, other: &Monomial) -> Option<Monomial> {
        let mut e = Vec::with_capacity(self.nvars());
        for (&a, &b) in self.exps.iter().zip(other.exps.iter()) {
            if a < b {
                return None;
            }
            e.push(a - b);
        }
        Some(Monomial::new(e))
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(&a, &b)| a <= b)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial::new(
            self.exps
                .iter()
                .zip(other.exps.iter())
                .map(|(&a, &b)| a.max(b))
                .collect(),
        )
    }

    /// True if the supports are disjoint (the product criterion's test).
    pub fn coprime(&self, other: &Monomial) -> bool {
        self.exps
            .iter()
            .zip(other.exps.iter())
            .all(|(&a, &b)| a == 0 || b == 0)
    }

    /// Bitmask of the support (which variables occur).  Valid because rings
    /// are capped at 64 variables.
    pub fn support_mask(&self) -> u64 {
        let mut m = 0u64;
        for (v, &e) in self.exps.iter().enumerate() {
            if e > 0 {
                m |= 1 << v;
            }
        }
        m
    }

    /// Permute the *points*: exponent of `x_{j,i}` moves to `x_{σ(j),i}`.
    pub fn permute_points(&self, ring: &PolyRing, sigma: &[usize]) -> Monomial {
        let mut e = vec![0u16; self.nvars()];
        for v in 0..self.nvars() {
            match ring.var_info(v) {
                Some((j, i)) => e[ring.var(sigma[j], i)] = self.exps[v],
                None => e[v] = self.exps[v],
            }
        }
        Monomial::new(e)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let (da, db) = (self.total_degree(), other.total_degree());
        if da != db {
            return da.cmp(&db);
        }
        for k in (0..self.exps.len()).rev() {
            if self.exps[k] != other.exps[k] {
                // grevlex: larger is the one with the *smaller* exponent at
                // the rightmost difference.
                return other.exps[k].cmp(&self.exps[k]);
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Monomial orders for leading-term selection.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    /// Graded reverse lexicographic over all variables.
    GrevLex,
    /// Lexicographic: `x[1,1] > x[1,2] > … > t`.
    Lex,
    /// Elimination order for the auxiliary variable: `t`-exponent first,
    /// ties broken by grevlex on the geometric variables.
    Block,
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial, ring: &PolyRing) -> Ordering {
        match self {
            MonomialOrder::GrevLex => a.cmp(b),
            MonomialOrder::Lex => a.exps().cmp(b.exps()),
            MonomialOrder::Block => {
                let av = ring.aux_var().map(|v| a.exps()[v]).unwrap_or(0);
                let bv = ring.aux_var().map(|v| b.exps()[v]).unwrap_or(0);
                av.cmp(&bv).then_with(|| {
                    let g = ring.geometric_vars();
                    let (da, db): (usize, usize) = (
                        a.exps()[..g].iter().map(|&e| e as usize).sum(),
                        b.exps()[..g].iter().map(|&e| e as usize).sum(),
                    );
                    da.cmp(&db).then_with(|| {
                        for k in (0..g).rev() {
                            if a.exps()[k] != b.exps()[k] {
                                return b.exps()[k].cmp(&a.exps()[k]);
                            }
                        }
                        Ordering::Equal
                    })
                })
            }
        }
    }

    /// A sort key monotone with the order: `a > b  ⟺  key(a) > key(b)`
    /// lexicographically.  Lets working sets live in a `BTreeMap`.
    pub fn key(&self, m: &Monomial, ring: &PolyRing) -> Vec<u32> {
        const M: u32 = u32::MAX;
        let grevlex_part = |exps: &[u16]| {
            let mut k = Vec::with_capacity(exps.len() + 1);
            k.push(exps.iter().map(|&e| e as u32).sum());
            for &e in exps.iter().rev() {
                k.push(M - e as u32);
            }
            k
        };
        match self {
            MonomialOrder::GrevLex => grevlex_part(m.exps()),
            MonomialOrder::Lex => m.exps().iter().map(|&e| e as u32).collect(),
            MonomialOrder::Block => {
                let g = ring.geometric_vars();
                let aux = ring.aux_var().map(|v| m.exps()[v]).unwrap_or(0) as u32;
                let mut k = vec![aux];
                k.extend(grevlex_part(&m.exps()[..g]));
                k
            }
        }
    }
}

/// A polynomial with exact rational coefficients.  Terms are stored sorted in
/// *descending* storage (grevlex) order with no zero coefficients; equality
/// is therefore structural.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    terms: Vec<(Monomial, Rat)>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { terms: Vec::new() }
    }

    pub fn constant(ring: &PolyRing, c: Rat) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Polynomial { terms: vec![(ring.one(), c)] }
        }
    }

    /// Build from (monomial, coefficient) pairs; merges duplicates, drops
    /// zeros, sorts.
    pub fn from_terms(terms: Vec<(Monomial, Rat)>) -> Self {
        let mut map: BTreeMap<Monomial, Rat> = BTreeMap::new();
        for (m, c) in terms {
            if c.is_zero() {
                continue;
            }
            let entry = map.entry(m).or_insert_with(Rat::zero);
            *entry += c;
        }
        let mut out: Vec<(Monomial, Rat)> = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        out.reverse();
        Polynomial { terms: out }
    }

    pub fn terms(&self) -> &[(Monomial, Rat)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Geometric degree: max over terms; `None` for the zero polynomial.
    pub fn degree(&self, ring: &PolyRing) -> Option<usize> {
        self.terms.iter().map(|(m, _)| ring.degree(m)).max()
    }

    /// Homogeneous in geometric degree?
    pub fn is_homogeneous(&self, ring: &PolyRing) -> bool {
        let mut it = self.terms.iter().map(|(m, _)| ring.degree(m));
        match it.next() {
            None => true,
            Some(d0) => it.all(|d| d == d0),
        }
    }

    /// Leading term under `order`.
    pub fn leading_term<'a>(
        &'a self,
        order: MonomialOrder,
        ring: &PolyRing,
    ) -> Option<(&'a Monomial, &'a Rat)> {
        match order {
            MonomialOrder::GrevLex => self.terms.first().map(|(m, c)| (m, c)),
            _ => self
                .terms
                .iter()
                .max_by(|(a, _), (b, _)| order.cmp(a, b, ring))
                .map(|(m, c)| (m, c)),
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Polynomial::from_terms(terms)
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().map(|(m, c)| (m.clone(), -c.clone())));
        Polynomial::from_terms(terms)
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut map: BTreeMap<Monomial, Rat> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let entry = map.entry(m).or_insert_with(Rat::zero);
                *entry += ca * cb;
            }
        }
        let mut out: Vec<(Monomial, Rat)> = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        out.reverse();
        Polynomial { terms: out }
    }

    pub fn mul_term(&self, m: &Monomial, c: &Rat) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        // Multiplying by a fixed monomial preserves the grevlex order of the
        // surviving terms, so no re-sort is needed.
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(tm, tc)| (tm.mul(m), tc * c))
                .collect(),
        }
    }

    /// Make the leading coefficient (under `order`) equal to 1.
    pub fn monic(&self, order: MonomialOrder, ring: &PolyRing) -> Polynomial {
        match self.leading_term(order, ring) {
            None => Polynomial::zero(),
            Some((_, c)) => {
                let inv = Rat::new(c.denom().clone(), c.numer().clone());
                self.scale(&inv)
            }
        }
    }

    /// Partial derivative with respect to variable `v`.
    pub fn partial(&self, v: usize) -> Polynomial {
        let mut terms = Vec::new();
        for (m, c) in &self.terms {
            let e = m.exps()[v];
            if e == 0 {
                continue;
            }
            let mut exps = m.exps().to_vec();
            exps[v] -= 1;
            terms.push((Monomial::new(exps), c * Rat::from_integer(e.into())));
        }
        Polynomial::from_terms(terms)
    }

    /// Substitute `images[v]` for variable `v`; `images` must cover every
    /// variable actually occurring.  Result lives in the ring of the images.
    pub fn substitute(&self, images: &[Polynomial], target_nvars: usize) -> Polynomial {
        let mut acc = Polynomial::zero();
        for (m, c) in &self.terms {
            let mut term = Polynomial {
                terms: vec![(Monomial::one(target_nvars), c.clone())],
            };
            for (v, &e) in m.exps().iter().enumerate() {
                for _ in 0..e {
                    term = term.mul(&images[v]);
                }
            }
            acc = acc.add(&term);
        }
        acc
    }

    /// Apply a point permutation to every term.
    pub fn permute_points(&self, ring: &PolyRing, sigma: &[usize]) -> Polynomial {
        Polynomial::from_terms(
            self.terms
                .iter()
                .map(|(m, c)| (m.permute_points(ring, sigma), c.clone()))
                .collect(),
        )
    }

    /// The coefficient vector of a homogeneous polynomial with respect to a
    /// monomial basis given by `index`, which maps a monomial to its column.
    pub fn coeff_vector(
        &self,
        index: &std::collections::HashMap<Monomial, usize>,
        len: usize,
    ) -> Vec<Rat> {
        let mut v = vec![Rat::zero(); len];
        for (m, c) in &self.terms {
            let col = *index
                .get(m)
                .unwrap_or_else(|| panic!("monomial outside the declared basis"));
            v[col] = c.clone();
        }
        v
    }
}

/// Build a `HashMap` from monomial to position for a basis list.
pub fn monomial_index(basis: &[Monomial]) -> std::collections::HashMap<Monomial, usize> {
    basis
        .iter()
        .enumerate()
        .map(|(i, m)| (m.clone(), i))
        .collect()
}
