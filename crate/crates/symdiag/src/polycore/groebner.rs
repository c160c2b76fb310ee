//! Buchberger's algorithm with the two classical pair-pruning criteria.
//!
//! * the *product* criterion: a pair with coprime leading monomials reduces
//!   to zero and is skipped;
//! * the *chain* criterion: a pair `(i, j)` is skipped when some `k` has
//!   `lm(g_k) | lcm(lm(g_i), lm(g_j))` and both `(i, k)` and `(k, j)` have
//!   already been treated.
//!
//! Pair selection is the normal strategy: smallest lcm degree first, ties
//! broken by the active monomial order on the lcm.  An optional degree cap
//! drops every pair whose lcm has geometric degree above the cap; for ideals
//! generated in geometric-homogeneous pieces this yields a basis whose
//! degree-`≤ cap` part agrees with the full Gröbner basis, which is all the
//! degreewise checks in this crate ever use.

use super::{Monomial, MonomialOrder, PolyRing, Polynomial};
use crate::Rat;
use num::traits::Zero;
use std::collections::{BTreeMap, BTreeSet, HashSet};

/// One element of a working basis with its cached leading data.
#[derive(Clone, Debug)]
struct BasisElem {
    poly: Polynomial,
    lm: Monomial,
    mask: u64,
}

impl BasisElem {
    fn new(poly: Polynomial, order: MonomialOrder, ring: &PolyRing) -> Self {
        let poly = poly.monic(order, ring);
        let (lm, _) = poly.leading_term(order, ring).expect("nonzero");
        let lm = lm.clone();
        let mask = lm.support_mask();
        BasisElem { poly, lm, mask }
    }
}

/// Fully reduce `f` modulo `basis` under `order`.  The result has no term
/// divisible by any basis leading monomial.
pub fn normal_form(
    f: &Polynomial,
    basis: &[Polynomial],
    order: MonomialOrder,
    ring: &PolyRing,
) -> Polynomial {
    let elems: Vec<BasisElem> = basis
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| BasisElem::new(g.clone(), order, ring))
        .collect();
    normal_form_elems(f, &elems, order, ring)
}

fn normal_form_elems(
    f: &Polynomial,
    basis: &[BasisElem],
    order: MonomialOrder,
    ring: &PolyRing,
) -> Polynomial {
    // Working set keyed so that `pop_last` returns the order-largest term.
    let mut work: BTreeMap<Vec<u32>, (Monomial, Rat)> = BTreeMap::new();
    for (m, c) in f.terms() {
        work.insert(order.key(m, ring), (m.clone(), c.clone()));
    }
    let mut remainder: Vec<(Monomial, Rat)> = Vec::new();
    while let Some((_, (m, c))) = work.pop_last() {
        if c.is_zero() {
            continue;
        }
        let mmask = m.support_mask();
        let hit = basis
            .iter()
            .find(|g| (g.mask & !mmask) == 0 && g.lm.divides(&m));
        match hit {
            None => remainder.push((m, c)),
            Some(g) => {
                let q = m.try_div(&g.lm).expect("divides");
                // g is monic: subtract c·q·g.  Its leading term c·q·lm equals
                // the term (m, c) just popped, so skip it rather than
                // re-inserting a spurious −c at m.
                for (gm, gc) in g.poly.terms() {
                    if *gm == g.lm {
                        continue;
                    }
                    let tm = gm.mul(&q);
                    let delta = gc * &c;
                    let key = order.key(&tm, ring);
                    let now_zero = {
                        let entry = work.entry(key.clone()).or_insert_with(|| (tm, Rat::zero()));
                        entry.1 -= &delta;
                        entry.1.is_zero()
                    };
                    if now_zero {
                        work.remove(&key);
                    }
                }
            }
        }
    }
    Polynomial::from_terms(remainder)
}

/// The S-polynomial of `f` and `g` under `order`.
pub fn spoly(f: &Polynomial, g: &Polynomial, order: MonomialOrder, ring: &PolyRing) -> Polynomial {
    let (lmf, lcf) = f.leading_term(order, ring).expect("nonzero");
    let (lmg, lcg) = g.leading_term(order, ring).expect("nonzero");
    let l = lmf.lcm(lmg);
    let mf = l.try_div(lmf).unwrap();
    let mg = l.try_div(lmg).unwrap();
    let inv_f = Rat::new(lcf.denom().clone(), lcf.numer().clone());
    let inv_g = Rat::new(lcg.denom().clone(), lcg.numer().clone());
    f.mul_term(&mf, &inv_f).sub(&g.mul_term(&mg, &inv_g))
}

/// Compute a Gröbner basis of `gens` under `order`.
///
/// With `degree_cap = Some(t)` every S-pair whose lcm has geometric degree
/// above `t` is dropped; for generators homogeneous in geometric degree the
/// result determines the ideal exactly in degrees `≤ t`.
pub fn buchberger(
    gens: &[Polynomial],
    order: MonomialOrder,
    ring: &PolyRing,
    degree_cap: Option<usize>,
) -> Vec<Polynomial> {
    let mut basis: Vec<BasisElem> = Vec::new();
    for g in gens {
        if !g.is_zero() {
            basis.push(BasisElem::new(g.clone(), order, ring));
        }
    }
    if basis.is_empty() {
        return Vec::new();
    }

    // Pending pairs, keyed by (lcm geometric degree, lcm order key, i, j)
    // so pop_first follows the normal selection strategy.
    let mut queue: BTreeSet<(usize, Vec<u32>, usize, usize)> = BTreeSet::new();
    let mut pending: HashSet<(usize, usize)> = HashSet::new();
    let push_pair = |queue: &mut BTreeSet<(usize, Vec<u32>, usize, usize)>,
                         pending: &mut HashSet<(usize, usize)>,
                         basis: &[BasisElem],
                         i: usize,
                         j: usize| {
        let l = basis[i].lm.lcm(&basis[j].lm);
        let d = ring.degree(&l);
        if let Some(cap) = degree_cap {
            if d > cap {
                return;
            }
        }
        queue.insert((d, order.key(&l, ring), i, j));
        pending.insert((i, j));
    };

    for i in 0..basis.len() {
        for j in (i + 1)..basis.len() {
            push_pair(&mut queue, &mut pending, &basis, i, j);
        }
    }

    while let Some(entry) = queue.pop_first() {
        let (_, _, i, j) = entry;
        pending.remove(&(i, j));

        // Product criterion.
        if basis[i].lm.coprime(&basis[j].lm) {
            continue;
        }
        // Chain criterion.
        let l = basis[i].lm.lcm(&basis[j].lm);
        let chained = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k].lm.divides(&l)
                && !pending.contains(&(i.min(k), i.max(k)))
                && !pending.contains(&(j.min(k), j.max(k)))
        });
        if chained {
            continue;
        }

        let s = spoly(&basis[i].poly, &basis[j].poly, order, ring);
        let r = normal_form_elems(&s, &basis, order, ring);
        if r.is_zero() {
            continue;
        }
        let new_idx = basis.len();
        basis.push(BasisElem::new(r, order, ring));
        for k in 0..new_idx {
            push_pair(&mut queue, &mut pending, &basis, k, new_idx);
        }
    }

    reduce_basis(
        &basis.into_iter().map(|b| b.poly).collect::<Vec<_>>(),
        order,
        ring,
    )
}

/// Inter-reduce a Gröbner basis to the unique reduced one: every element is
/// monic and no term of any element is divisible by another's leading
/// monomial.  Output is sorted ascending by leading monomial.
pub fn reduce_basis(
    basis: &[Polynomial],
    order: MonomialOrder,
    ring: &PolyRing,
) -> Vec<Polynomial> {
    let mut polys: Vec<Polynomial> = basis.iter().filter(|p| !p.is_zero()).cloned().collect();
    // Drop elements whose lm is divisible by another's lm (keep the smaller).
    loop {
        let lms: Vec<Monomial> = polys
            .iter()
            .map(|p| p.leading_term(order, ring).unwrap().0.clone())
            .collect();
        let mut drop_idx: Option<usize> = None;
        'outer: for a in 0..polys.len() {
            for b in 0..polys.len() {
                if a != b && lms[b].divides(&lms[a]) {
                    // prefer dropping the one with the larger lm;
                    // if lms are equal, drop the later one.
                    if lms[a] != lms[b] || a > b {
                        drop_idx = Some(a);
                        break 'outer;
                    }
                }
            }
        }
        match drop_idx {
            Some(i) => {
                polys.remove(i);
            }
            None => break,
        }
    }
    // Tail-reduce each against the others until stable.
    loop {
        let mut changed = false;
        for i in 0..polys.len() {
            let others: Vec<Polynomial> = polys
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, p)| p.clone())
                .collect();
            let r = normal_form(&polys[i], &others, order, ring).monic(order, ring);
            if r != polys[i] {
                assert!(!r.is_zero(), "reduced basis element vanished unexpectedly");
                polys[i] = r;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    polys.sort_by(|a, b| {
        let la = a.leading_term(order, ring).unwrap().0;
        let lb = b.leading_term(order, ring).unwrap().0;
        order.cmp(la, lb, ring)
    });
    polys
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    /// ℚ[x, y] as a 1-point, 2-coordinate ring.
    fn r12() -> PolyRing {
        PolyRing::new(1, 2)
    }

    #[test]
    fn katsura_like_small_basis() {
        // I = (x^2 - y, x^3 - x): classic example; grevlex reduced GB.
        let r = r12();
        let x = r.var_poly(0);
        let y = r.var_poly(1);
        let f1 = x.mul(&x).sub(&y);
        let f2 = x.mul(&x).mul(&x).sub(&x);
        let gb = buchberger(&[f1.clone(), f2.clone()], MonomialOrder::GrevLex, &r, None);
        // Membership: both generators reduce to zero.
        assert!(normal_form(&f1, &gb, MonomialOrder::GrevLex, &r).is_zero());
        assert!(normal_form(&f2, &gb, MonomialOrder::GrevLex, &r).is_zero());
        // xy - x = x(x^2) - x = x*f1 + (x^3 - x) … lies in I:
        let xy_minus_x = x.mul(&y).sub(&x);
        assert!(normal_form(&xy_minus_x, &gb, MonomialOrder::GrevLex, &r).is_zero());
        // 1 is not in I (the variety contains the origin).
        let one = Polynomial::constant(&r, rat(1));
        assert!(!normal_form(&one, &gb, MonomialOrder::GrevLex, &r).is_zero());
    }

    #[test]
    fn reduced_basis_is_canonical() {
        // Generate the same ideal two ways; reduced bases must agree.
        let r = r12();
        let x = r.var_poly(0);
        let y = r.var_poly(1);
        let f = x.mul(&x).add(&y.mul(&y));
        let g = x.mul(&y);
        let gb1 = buchberger(&[f.clone(), g.clone()], MonomialOrder::GrevLex, &r, None);
        let gb2 = buchberger(
            &[f.add(&g.scale(&rat(5))), g.clone(), f.sub(&g)],
            MonomialOrder::GrevLex,
            &r,
            None,
        );
        assert_eq!(gb1, gb2);
    }

    #[test]
    fn elimination_via_block_order() {
        // In ℚ[x, y, t]: J = (t*x, (1-t)*y). Eliminating t gives (x*y).
        let r = PolyRing::new(1, 2).with_aux();
        let x = r.var_poly(0);
        let y = r.var_poly(1);
        let t = r.var_poly(r.aux_var().unwrap());
        let one = Polynomial::constant(&r, rat(1));
        let j1 = t.mul(&x);
        let j2 = one.sub(&t).mul(&y);
        let gb = buchberger(&[j1, j2], MonomialOrder::Block, &r, None);
        let t_free: Vec<&Polynomial> = gb
            .iter()
            .filter(|p| {
                p.terms()
                    .iter()
                    .all(|(m, _)| m.exps()[r.aux_var().unwrap()] == 0)
            })
            .collect();
        assert_eq!(t_free.len(), 1);
        assert_eq!(t_free[0], &x.mul(&y));
    }

    #[test]
    fn degree_cap_matches_full_run_below_cap() {
        // Homogeneous ideal: I = (x^2 - xy, y^3). Capped at 4, every basis
        // element of degree ≤ 4 must match the uncapped run.
        let r = r12();
        let x = r.var_poly(0);
        let y = r.var_poly(1);
        let gens = vec![x.mul(&x).sub(&x.mul(&y)), y.mul(&y).mul(&y)];
        let full = buchberger(&gens, MonomialOrder::GrevLex, &r, None);
        let capped = buchberger(&gens, MonomialOrder::GrevLex, &r, Some(4));
        let full_low: Vec<_> = full
            .iter()
            .filter(|p| p.degree(&r).unwrap() <= 4)
            .cloned()
            .collect();
        let capped_low: Vec<_> = capped
            .iter()
            .filter(|p| p.degree(&r).unwrap() <= 4)
            .cloned()
            .collect();
        assert_eq!(full_low, capped_low);
    }
}
