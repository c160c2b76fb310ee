//! Ideals: products, powers, sums, intersections, diagonal ideals, graded
//! Hilbert functions.
//!
//! Intersections go through a single auxiliary variable:
//! `A ∩ B = ( t·A + (1−t)·B ) ∩ ℚ[x]`, computed with the block elimination
//! order.  Because the auxiliary variable carries geometric degree zero, the
//! trick preserves homogeneity, so the whole pipeline can run with a degree
//! cap and still be exact in all degrees up to the cap.

use super::{buchberger, normal_form, Monomial, MonomialOrder, PolyRing, Polynomial};
use crate::Rat;
use num::traits::One;
use std::cell::RefCell;
use std::collections::HashMap;

/// An ideal of ℚ[x_{j,i}], held by generators, with cached Gröbner bases.
#[derive(Clone, Debug)]
pub struct Ideal {
    ring: PolyRing,
    gens: Vec<Polynomial>,
    cache: RefCell<HashMap<(MonomialOrder, Option<usize>), Vec<Polynomial>>>,
}

impl PartialEq for Ideal {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring
            && self.groebner(MonomialOrder::GrevLex, None)
                == other.groebner(MonomialOrder::GrevLex, None)
    }
}

impl Ideal {
    pub fn new(ring: PolyRing, gens: Vec<Polynomial>) -> Self {
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ideal { ring, gens, cache: RefCell::new(HashMap::new()) }
    }

    pub fn zero(ring: PolyRing) -> Self {
        Ideal::new(ring, Vec::new())
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    /// Largest geometric degree among the generators (`None` if zero ideal).
    pub fn max_gen_degree(&self) -> Option<usize> {
        self.gens.iter().filter_map(|g| g.degree(&self.ring)).max()
    }

    /// All generators homogeneous in geometric degree?
    pub fn is_homogeneous(&self) -> bool {
        self.gens.iter().all(|g| g.is_homogeneous(&self.ring))
    }

    /// A Gröbner basis under `order`, with an optional degree cap (see
    /// [`buchberger`]).  Results are cached per `(order, cap)`.
    pub fn groebner(&self, order: MonomialOrder, cap: Option<usize>) -> Vec<Polynomial> {
        if let Some(hit) = self.cache.borrow().get(&(order, cap)) {
            return hit.clone();
        }
        // A full basis also answers any capped request.
        if cap.is_some() {
            if let Some(hit) = self.cache.borrow().get(&(order, None)) {
                return hit.clone();
            }
        }
        let gb = buchberger(&self.gens, order, &self.ring, cap);
        self.cache.borrow_mut().insert((order, cap), gb.clone());
        gb
    }

    /// Exact ideal membership (full Gröbner basis).
    pub fn contains(&self, f: &Polynomial) -> bool {
        let gb = self.groebner(MonomialOrder::GrevLex, None);
        normal_form(f, &gb, MonomialOrder::GrevLex, &self.ring).is_zero()
    }

    /// Membership for a homogeneous `f` using a basis capped at
    /// `deg f` — equivalent to [`Ideal::contains`] when the ideal is
    /// homogeneous, but often far cheaper.
    pub fn contains_graded(&self, f: &Polynomial) -> bool {
        debug_assert!(self.is_homogeneous() && f.is_homogeneous(&self.ring));
        match f.degree(&self.ring) {
            None => true,
            Some(d) => {
                let gb = self.groebner(MonomialOrder::GrevLex, Some(d));
                normal_form(f, &gb, MonomialOrder::GrevLex, &self.ring).is_zero()
            }
        }
    }

    /// Sum of ideals (concatenate generators).
    pub fn sum(&self, other: &Ideal) -> Ideal {
        assert_eq!(self.ring, other.ring);
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ideal::new(self.ring, gens)
    }

    /// Product of ideals (pairwise products of generators).
    pub fn product(&self, other: &Ideal) -> Ideal {
        assert_eq!(self.ring, other.ring);
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a.mul(b));
            }
        }
        Ideal::new(self.ring, gens)
    }

    /// `self^k` (with `self^0 = (1)`).
    pub fn power(&self, k: usize) -> Ideal {
        if k == 0 {
            return Ideal::new(
                self.ring,
                vec![Polynomial::constant(&self.ring, Rat::one())],
            );
        }
        let mut acc = self.clone();
        for _ in 1..k {
            acc = acc.product(self);
        }
        acc
    }

    /// Intersection through one auxiliary elimination variable, optionally
    /// degree-capped (exact in degrees `≤ cap` for homogeneous inputs).
    pub fn intersection(&self, other: &Ideal, cap: Option<usize>) -> Ideal {
        assert_eq!(self.ring, other.ring);
        assert_eq!(self.ring.aux, 0, "iterated aux variables are not supported");
        let big = self.ring.with_aux();
        let lift = |p: &Polynomial| -> Polynomial {
            Polynomial::from_terms(
                p.terms()
                    .iter()
                    .map(|(m, c)| {
                        let mut e = m.exps().to_vec();
                        e.push(0);
                        (Monomial::new(e), c.clone())
                    })
                    .collect(),
            )
        };
        let t = big.var_poly(big.aux_var().unwrap());
        let one_minus_t = Polynomial::constant(&big, Rat::one()).sub(&t);
        let mut gens = Vec::new();
        for a in &self.gens {
            gens.push(t.mul(&lift(a)));
        }
        for b in &other.gens {
            gens.push(one_minus_t.mul(&lift(b)));
        }
        let gb = buchberger(&gens, MonomialOrder::Block, &big, cap);
        let aux = big.aux_var().unwrap();
        let down: Vec<Polynomial> = gb
            .iter()
            .filter(|p| p.terms().iter().all(|(m, _)| m.exps()[aux] == 0))
            .map(|p| {
                Polynomial::from_terms(
                    p.terms()
                        .iter()
                        .map(|(m, c)| {
                            let mut e = m.exps().to_vec();
                            e.pop();
                            (Monomial::new(e), c.clone())
                        })
                        .collect(),
                )
            })
            .collect();
        Ideal::new(self.ring, down)
    }

    /// The pairwise diagonal ideal `I_{Δ_{jk}} = (x_{j,i} − x_{k,i} : i)`,
    /// 0-based points.
    pub fn pairwise_diagonal(ring: PolyRing, j: usize, k: usize) -> Ideal {
        assert!(j != k && j < ring.points && k < ring.points);
        let gens = (0..ring.coords)
            .map(|i| {
                ring.var_poly(ring.var(j, i))
                    .sub(&ring.var_poly(ring.var(k, i)))
            })
            .collect();
        Ideal::new(ring, gens)
    }

    /// The big-diagonal intersection ideal `I_{Δ(n)} = ∩_{j<k} I_{Δ_{jk}}`,
    /// computed by iterated pairwise intersection with an optional degree
    /// cap (exact in degrees `≤ cap`).
    pub fn big_diagonal(ring: PolyRing, cap: Option<usize>) -> Ideal {
        let mut pairs = Vec::new();
        for j in 0..ring.points {
            for k in (j + 1)..ring.points {
                pairs.push(Ideal::pairwise_diagonal(ring, j, k));
            }
        }
        let mut acc = pairs[0].clone();
        for p in &pairs[1..] {
            acc = acc.intersection(p, cap);
        }
        acc
    }

    /// The small-diagonal ideal `(x_{j,i} − x_{1,i} : j > 1, i)`: all points
    /// equal.
    pub fn small_diagonal(ring: PolyRing) -> Ideal {
        let mut gens = Vec::new();
        for j in 1..ring.points {
            for i in 0..ring.coords {
                gens.push(
                    ring.var_poly(ring.var(j, i))
                        .sub(&ring.var_poly(ring.var(0, i))),
                );
            }
        }
        Ideal::new(ring, gens)
    }

    /// Dimension of the degree-`t` piece of the *quotient* `R/I`
    /// (standard monomials of degree `t`).  Requires a homogeneous ideal.
    pub fn hilbert_quotient(&self, t: usize) -> usize {
        assert!(self.is_homogeneous(), "graded Hilbert function needs a homogeneous ideal");
        let gb = self.groebner(MonomialOrder::GrevLex, Some(t));
        let lms: Vec<Monomial> = gb
            .iter()
            .filter(|p| p.degree(&self.ring).unwrap() <= t)
            .map(|p| {
                p.leading_term(MonomialOrder::GrevLex, &self.ring)
                    .unwrap()
                    .0
                    .clone()
            })
            .collect();
        self.ring
            .monomials_of_degree(t)
            .into_iter()
            .filter(|m| !lms.iter().any(|l| l.divides(m)))
            .count()
    }

    /// Dimension of the degree-`t` piece of the ideal itself.
    pub fn hilbert_ideal(&self, t: usize) -> usize {
        self.ring.monomials_of_degree(t).len() - self.hilbert_quotient(t)
    }

    /// A basis of the degree-`t` piece `I_t` as polynomials: the normal-form
    /// complement embedding is avoided; instead, multiples `m·g` of basis
    /// elements are filtered to a linearly independent set.
    pub fn graded_piece_basis(&self, t: usize) -> Vec<Polynomial> {
        let gb = self.groebner(MonomialOrder::GrevLex, Some(t));
        let mut seen = std::collections::HashSet::new();
        let mut out = Vec::new();
        for g in &gb {
            let d = g.degree(&self.ring).unwrap();
            if d > t {
                continue;
            }
            for m in self.ring.monomials_of_degree(t - d) {
                let lm = g
                    .leading_term(MonomialOrder::GrevLex, &self.ring)
                    .unwrap()
                    .0
                    .mul(&m);
                // Distinct leading monomials ⇒ linearly independent; and the
                // count of distinct lm's equals dim I_t for a Gröbner basis.
                if seen.insert(lm) {
                    out.push(g.mul_term(&m, &Rat::one()));
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairwise_diagonal_hilbert() {
        // R = ℚ[x1,y1,x2,y2], I = (x1−x2, y1−y2): R/I ≅ ℚ[x,y], so the
        // quotient Hilbert function is t+1.
        let r = PolyRing::new(2, 2);
        let i = Ideal::pairwise_diagonal(r, 0, 1);
        for t in 0..6 {
            assert_eq!(i.hilbert_quotient(t), t + 1, "t={t}");
        }
    }

    #[test]
    fn intersection_matches_product_for_comaximal_like_case() {
        // In ℚ[x,y] (1 point, 2 coords): (x) ∩ (y) = (xy).
        let r = PolyRing::new(1, 2);
        let x = r.var_poly(0);
        let y = r.var_poly(1);
        let a = Ideal::new(r, vec![x.clone()]);
        let b = Ideal::new(r, vec![y.clone()]);
        let c = a.intersection(&b, None);
        assert!(c.contains(&x.mul(&y)));
        assert!(!c.contains(&x));
        assert!(!c.contains(&y));
        assert_eq!(c.groebner(MonomialOrder::GrevLex, None).len(), 1);
    }

    #[test]
    fn intersection_of_two_point_diagonals() {
        // n = 3, d = 1: I12 ∩ I13 in ℚ[a,b,c] where I12 = (a−b), I13 = (a−c).
        // The intersection is ((a−b)(a−c)).
        let r = PolyRing::new(3, 1);
        let a = r.var_poly(0);
        let b = r.var_poly(1);
        let c = r.var_poly(2);
        let i12 = Ideal::pairwise_diagonal(r, 0, 1);
        let i13 = Ideal::pairwise_diagonal(r, 0, 2);
        let cap = a.sub(&b).mul(&a.sub(&c));
        let inter = i12.intersection(&i13, None);
        assert!(inter.contains(&cap));
        assert_eq!(inter.hilbert_ideal(2), 1);
        assert_eq!(inter.hilbert_ideal(1), 0);
    }

    #[test]
    fn power_and_product() {
        let r = PolyRing::new(1, 2);
        let x = r.var_poly(0);
        let y = r.var_poly(1);
        let m = Ideal::new(r, vec![x.clone(), y.clone()]);
        let m2 = m.power(2);
        assert!(m2.contains(&x.mul(&x)));
        assert!(m2.contains(&x.mul(&y)));
        assert!(!m2.contains(&x));
        assert_eq!(m2.hilbert_quotient(0), 1);
        assert_eq!(m2.hilbert_quotient(1), 2);
        assert_eq!(m2.hilbert_quotient(2), 0);
        let one = m.power(0);
        assert_eq!(one.hilbert_quotient(0), 0);
    }

    #[test]
    fn graded_piece_basis_dimension_agrees() {
        let r = PolyRing::new(2, 2);
        let i = Ideal::pairwise_diagonal(r, 0, 1).power(2);
        for t in 0..5 {
            assert_eq!(i.graded_piece_basis(t).len(), i.hilbert_ideal(t), "t={t}");
        }
    }
}
