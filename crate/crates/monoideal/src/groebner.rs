//! Buchberger's algorithm with the normal selection strategy and the
//! product and chain criteria, plus the ideal operations built on it:
//! membership, intersection, colon, elimination, and quotient dimension.

use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;
use crate::poly::{
    mono_degree, mono_div, mono_divides, mono_lcm, mono_mul, Mono, Polynomial, TermOrder,
};
use num::{BigRational, One};
use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashSet};

/// Cost ceilings for a Buchberger run; exceeding one yields a typed error
/// instead of nontermination.
#[derive(Clone, Copy, Debug)]
pub struct Limits {
    pub max_basis: usize,
    pub max_degree: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_basis: 4000, max_degree: 400 }
    }
}

/// A reduced Groebner basis: monic, pairwise inter-reduced, sorted by
/// ascending leading monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    pub order: TermOrder,
    pub basis: Vec<Polynomial>,
}

impl GroebnerBasis {
    pub fn contains(&self, p: &Polynomial) -> bool {
        reduce(p, &self.basis, self.order).is_zero()
    }
}

/// Full normal form of `p` modulo `basis`: no term of the result is
/// divisible by any leading term of the basis, and p - result lies in the
/// ideal generated by the basis.
pub fn reduce(p: &Polynomial, basis: &[Polynomial], order: TermOrder) -> Polynomial {
    let leads: Vec<(&Mono, &BigRational, &Polynomial)> = basis
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| {
            let (m, c) = g.leading_term(order).unwrap();
            (m, c, g)
        })
        .collect();
    let mut tail = p.clone();
    let mut normal: Vec<(Mono, BigRational)> = Vec::new();
    while let Some((lm, lc)) = tail.leading_term(order).map(|(m, c)| (m.clone(), c.clone())) {
        match leads.iter().find(|(gm, _, _)| mono_divides(gm, &lm)) {
            Some((gm, gc, g)) => {
                let factor_mono = mono_div(&lm, gm);
                let factor_coeff = &lc / *gc;
                tail.sub_mul_term_in_place(g, &factor_mono, &factor_coeff);
            }
            None => {
                // move the irreducible leading term to the normal form
                tail.remove_term(&lm);
                normal.push((lm, lc));
            }
        }
    }
    Polynomial::from_terms(p.nvars(), normal)
}

fn s_polynomial(f: &Polynomial, g: &Polynomial, order: TermOrder) -> Polynomial {
    let (fm, fc) = f.leading_term(order).unwrap();
    let (gm, gc) = g.leading_term(order).unwrap();
    let lcm = mono_lcm(fm, gm);
    let ft = f.mul_term(&mono_div(&lcm, fm), &(BigRational::one() / fc.clone()));
    let gt = g.mul_term(&mono_div(&lcm, gm), &(BigRational::one() / gc.clone()));
    ft.sub(&gt)
}

/// Reduced Groebner basis of the ideal generated by `gens`.
pub fn buchberger(
    gens: &[Polynomial],
    order: TermOrder,
    limits: &Limits,
) -> Result<GroebnerBasis> {
    let nvars = gens
        .iter()
        .map(Polynomial::nvars)
        .next()
        .ok_or(Error::EmptyGenerators)?;
    let mut basis: Vec<Polynomial> = Vec::new();
    let mut leads: Vec<Mono> = Vec::new();
    for g in gens {
        if !g.is_zero() {
            let g = g.primitive(order);
            leads.push(g.leading_term(order).unwrap().0.clone());
            basis.push(g);
        }
    }
    if basis.is_empty() {
        return Ok(GroebnerBasis { order, basis: vec![] });
    }

    // normal strategy: pairs keyed by lcm degree, smallest first
    let mut heap: BinaryHeap<Reverse<(u64, usize, usize)>> = BinaryHeap::new();
    let mut pending: HashSet<(usize, usize)> = HashSet::new();
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            heap.push(Reverse((mono_degree(&mono_lcm(&leads[i], &leads[j])), i, j)));
            pending.insert((i, j));
        }
    }

    while let Some(Reverse((_, i, j))) = heap.pop() {
        if !pending.remove(&(i, j)) {
            continue;
        }
        let lcm = mono_lcm(&leads[i], &leads[j]);

        // product criterion: coprime leading terms reduce to zero
        if lcm == mono_mul(&leads[i], &leads[j]) {
            continue;
        }
        // chain criterion: some k with lt_k | lcm and both pairs done
        let chained = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && mono_divides(&leads[k], &lcm)
                && !pending.contains(&(i.min(k), i.max(k)))
                && !pending.contains(&(j.min(k), j.max(k)))
        });
        if chained {
            continue;
        }

        let s = s_polynomial(&basis[i], &basis[j], order);
        let h = reduce(&s, &basis, order);
        if h.is_zero() {
            continue;
        }
        let h = h.primitive(order);
        if h.total_degree() > limits.max_degree {
            return Err(Error::ResourceExceeded(format!(
                "Groebner element of degree {} exceeds ceiling {}",
                h.total_degree(),
                limits.max_degree
            )));
        }
        leads.push(h.leading_term(order).unwrap().0.clone());
        basis.push(h);
        let new = basis.len() - 1;
        if basis.len() > limits.max_basis {
            return Err(Error::ResourceExceeded(format!(
                "Groebner basis grew past {} elements",
                limits.max_basis
            )));
        }
        for k in 0..new {
            heap.push(Reverse((mono_degree(&mono_lcm(&leads[k], &leads[new])), k, new)));
            pending.insert((k, new));
        }
    }

    // minimalize: drop elements whose lead is divisible by another lead
    let mut keep = vec![true; basis.len()];
    for i in 0..basis.len() {
        if !keep[i] {
            continue;
        }
        for j in 0..basis.len() {
            if i != j && keep[j] && mono_divides(&leads[j], &leads[i]) {
                if leads[j] == leads[i] && j > i {
                    continue;
                }
                keep[i] = false;
                break;
            }
        }
    }
    let minimal: Vec<Polynomial> = basis
        .into_iter()
        .zip(keep)
        .filter_map(|(g, k)| k.then_some(g))
        .collect();

    // inter-reduce to the unique reduced basis
    let mut reduced: Vec<Polynomial> = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<Polynomial> = minimal
            .iter()
            .enumerate()
            .filter_map(|(j, g)| (j != i).then(|| g.clone()))
            .collect();
        let r = reduce(&minimal[i], &others, order);
        if !r.is_zero() {
            reduced.push(r.monic(order));
        }
    }
    reduced.sort_by(|a, b| {
        order.cmp(a.leading_term(order).unwrap().0, b.leading_term(order).unwrap().0)
    });
    // the unit ideal reduces to the single basis element 1
    if reduced
        .iter()
        .any(|g| g.leading_term(order).map(|(m, _)| mono_degree(m) == 0) == Some(true))
    {
        let nv = nvars;
        return Ok(GroebnerBasis { order, basis: vec![Polynomial::one(nv)] });
    }
    Ok(GroebnerBasis { order, basis: reduced })
}

/// Ideal membership via normal form against a reduced basis.
pub fn ideal_member(p: &Polynomial, gb: &GroebnerBasis) -> bool {
    gb.contains(p)
}

/// Exact quotient p / f; errors if f does not divide p.
pub fn divide_exact(p: &Polynomial, f: &Polynomial, order: TermOrder) -> Result<Polynomial> {
    if f.is_zero() {
        return Err(Error::ColonByZero);
    }
    let (fm, fc) = f.leading_term(order).unwrap();
    let mut rem = p.clone();
    let mut quot = Polynomial::zero(p.nvars());
    while let Some((rm, rc)) = rem.leading_term(order).map(|(m, c)| (m.clone(), c.clone())) {
        if !mono_divides(fm, &rm) {
            return Err(Error::Internal("inexact polynomial division".into()));
        }
        let t_mono = mono_div(&rm, fm);
        let t_coeff = &rc / fc;
        quot = quot.add(&Polynomial::monomial(p.nvars(), t_mono.clone(), t_coeff.clone()));
        rem = rem.sub(&f.mul_term(&t_mono, &t_coeff));
    }
    Ok(quot)
}

/// Intersection of two ideals by the one-auxiliary-variable trick:
/// eliminate u from u*A + (1-u)*B.
pub fn intersect(
    a: &[Polynomial],
    b: &[Polynomial],
    limits: &Limits,
) -> Result<Vec<Polynomial>> {
    let nvars = a
        .first()
        .or(b.first())
        .map(Polynomial::nvars)
        .ok_or(Error::EmptyGenerators)?;
    let mut gens: Vec<Polynomial> = Vec::new();
    let u = {
        let mut mono = vec![0; nvars + 1];
        mono[0] = 1;
        Polynomial::monomial(nvars + 1, mono, BigRational::one())
    };
    let one_minus_u = Polynomial::one(nvars + 1).sub(&u);
    for g in a {
        gens.push(u.mul(&g.extend_prefix(1)));
    }
    for g in b {
        gens.push(one_minus_u.mul(&g.extend_prefix(1)));
    }
    eliminate(&gens, 1, limits)
}

/// Generators of the colon ideal (J : f).
pub fn ideal_colon(j: &[Polynomial], f: &Polynomial, limits: &Limits) -> Result<Vec<Polynomial>> {
    if f.is_zero() {
        return Err(Error::ColonByZero);
    }
    let meet = intersect(j, std::slice::from_ref(f), limits)?;
    meet.iter()
        .map(|g| divide_exact(g, f, TermOrder::DegRevLex))
        .collect()
}

/// Generators of (J : I) for I = (f_1, ..., f_k), as the intersection of
/// the colons by each generator.
pub fn ideal_colon_ideal(
    j: &[Polynomial],
    i_gens: &[Polynomial],
    limits: &Limits,
) -> Result<Vec<Polynomial>> {
    let mut acc: Option<Vec<Polynomial>> = None;
    for f in i_gens {
        if f.is_zero() {
            continue;
        }
        let colon = ideal_colon(j, f, limits)?;
        acc = Some(match acc {
            None => colon,
            Some(prev) => intersect(&prev, &colon, limits)?,
        });
    }
    acc.ok_or(Error::ColonByZero)
}

/// Generators of J intersected with the subring omitting the first
/// `eliminated` variables, returned in that smaller ring.
pub fn eliminate(
    gens: &[Polynomial],
    eliminated: usize,
    limits: &Limits,
) -> Result<Vec<Polynomial>> {
    let gb = buchberger(gens, TermOrder::Block { prefix: eliminated }, limits)?;
    Ok(gb
        .basis
        .iter()
        .filter(|g| g.terms().all(|(m, _)| m[..eliminated].iter().all(|&e| e == 0)))
        .map(|g| g.restrict_prefix(eliminated))
        .collect())
}

/// Krull dimension of the quotient by the ideal, from the initial ideal:
/// the largest set of variables meeting the support of no minimal
/// generator. Errors on the unit ideal (the zero ring).
pub fn dim_quotient(gens: &[Polynomial], limits: &Limits) -> Result<usize> {
    let nvars = gens
        .iter()
        .map(Polynomial::nvars)
        .next()
        .ok_or(Error::EmptyGenerators)?;
    let gb = buchberger(gens, TermOrder::DegRevLex, limits)?;
    if gb.basis.is_empty() {
        return Ok(nvars); // zero ideal
    }
    let leads: Vec<Mono> = gb
        .basis
        .iter()
        .map(|g| g.leading_term(TermOrder::DegRevLex).unwrap().0.clone())
        .collect();
    dim_of_monomial_ideal(&leads, nvars)
}

/// Combinatorial dimension of a monomial quotient: nvars minus the size of
/// a minimum vertex cover of the generator supports.
pub fn dim_of_monomial_ideal(gens: &[Mono], nvars: usize) -> Result<usize> {
    if nvars > 24 {
        return Err(Error::ResourceExceeded(format!(
            "dimension search over {nvars} variables"
        )));
    }
    let supports: Vec<u32> = MonomialIdeal::new(nvars, gens.iter().map(|m| crate::ideal::ExponentVector::new(m.clone())).collect())
        .map_err(|_| Error::EmptyGenerators)?
        .gens()
        .iter()
        .map(|g| {
            g.coords()
                .iter()
                .enumerate()
                .fold(0u32, |acc, (i, &e)| if e > 0 { acc | (1 << i) } else { acc })
        })
        .collect();
    if supports.iter().any(|&s| s == 0) {
        return Err(Error::UnitIdeal); // a unit generator: the zero ring
    }
    for cover_size in 0..=nvars {
        let mut found = false;
        let mut choose = |mask: u32| {
            if supports.iter().all(|&s| s & mask != 0) {
                found = true;
            }
        };
        // enumerate subsets of the given size
        fn subsets(nvars: usize, size: usize, start: usize, mask: u32, f: &mut impl FnMut(u32)) {
            if size == 0 {
                f(mask);
                return;
            }
            for v in start..=nvars.saturating_sub(size) {
                subsets(nvars, size - 1, v + 1, mask | (1 << v), f);
            }
        }
        subsets(nvars, cover_size, 0, 0, &mut choose);
        if found {
            return Ok(nvars - cover_size);
        }
    }
    unreachable!("the full variable set always covers")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fm::rat;
    use crate::poly::Ring;

    const LIM: Limits = Limits { max_basis: 4000, max_degree: 400 };

    fn pol(nv: usize, terms: &[(&[u64], i64)]) -> Polynomial {
        Polynomial::from_terms(
            nv,
            terms.iter().map(|(m, c)| (m.to_vec(), rat(*c))).collect(),
        )
    }

    #[test]
    fn reduce_monomial_by_variable() {
        let x2 = pol(2, &[(&[2, 0], 1)]);
        let x = pol(2, &[(&[1, 0], 1)]);
        assert!(reduce(&x2, &[x], TermOrder::DegRevLex).is_zero());
    }

    #[test]
    fn reduce_substitutes() {
        // x^2 + y mod (x - y) -> y^2 + y
        let p = pol(2, &[(&[2, 0], 1), (&[0, 1], 1)]);
        let g = pol(2, &[(&[1, 0], 1), (&[0, 1], -1)]);
        let r = reduce(&p, &[g], TermOrder::Lex);
        assert_eq!(r, pol(2, &[(&[0, 2], 1), (&[0, 1], 1)]));
    }

    #[test]
    fn buchberger_linear_forms() {
        // (x + y, x - y) = (x, y)
        let f = pol(2, &[(&[1, 0], 1), (&[0, 1], 1)]);
        let g = pol(2, &[(&[1, 0], 1), (&[0, 1], -1)]);
        let gb = buchberger(&[f, g], TermOrder::DegRevLex, &LIM).unwrap();
        assert_eq!(gb.basis, vec![pol(2, &[(&[0, 1], 1)]), pol(2, &[(&[1, 0], 1)])]);
    }

    #[test]
    fn monomial_ideals_are_their_own_bases() {
        let gens = [
            pol(2, &[(&[3, 0], 1)]),
            pol(2, &[(&[1, 2], 2)]),
            pol(2, &[(&[3, 1], 5)]), // redundant
        ];
        let gb = buchberger(&gens, TermOrder::DegRevLex, &LIM).unwrap();
        assert_eq!(gb.basis, vec![pol(2, &[(&[1, 2], 1)]), pol(2, &[(&[3, 0], 1)])]);
    }

    #[test]
    fn textbook_cyclic_pair() {
        // (x^2 - y, x^3 - x) under lex: basis contains y^... the classic
        // result is (x^2 - y, xy - x, y^2 - y)
        let f = pol(2, &[(&[2, 0], 1), (&[0, 1], -1)]);
        let g = pol(2, &[(&[3, 0], 1), (&[1, 0], -1)]);
        let gb = buchberger(&[f.clone(), g], TermOrder::Lex, &LIM).unwrap();
        assert!(gb.contains(&f));
        let member = pol(2, &[(&[1, 1], 1), (&[1, 0], -1)]); // xy - x
        assert!(gb.contains(&member));
        let non_member = pol(2, &[(&[0, 1], 1)]); // y
        assert!(!gb.contains(&non_member));
    }

    #[test]
    fn reduced_basis_is_input_order_independent() {
        let gens = [
            pol(3, &[(&[2, 0, 0], 1), (&[0, 1, 1], -3)]),
            pol(3, &[(&[1, 1, 0], 2), (&[0, 0, 2], 1)]),
            pol(3, &[(&[0, 3, 0], 1), (&[1, 0, 1], -1)]),
        ];
        let gb1 = buchberger(&gens, TermOrder::DegRevLex, &LIM).unwrap();
        let permuted = [gens[2].clone(), gens[0].clone(), gens[1].clone()];
        let gb2 = buchberger(&permuted, TermOrder::DegRevLex, &LIM).unwrap();
        assert_eq!(gb1.basis, gb2.basis);
    }

    #[test]
    fn groebner_of_input_contains_input_and_vice_versa() {
        let gens = [
            pol(2, &[(&[2, 1], 1), (&[0, 0], -1)]),
            pol(2, &[(&[1, 2], 1), (&[1, 0], -1)]),
        ];
        let gb = buchberger(&gens, TermOrder::DegRevLex, &LIM).unwrap();
        for g in &gens {
            assert!(gb.contains(g));
        }
        // and every basis element lies in the original ideal
        let gb0 = buchberger(&gens, TermOrder::DegRevLex, &LIM).unwrap();
        for b in &gb.basis {
            assert!(gb0.contains(b));
        }
    }

    #[test]
    fn membership_examples() {
        // x in (x + y, y), but x not in (x^2, y)
        let gb1 = buchberger(
            &[pol(2, &[(&[1, 0], 1), (&[0, 1], 1)]), pol(2, &[(&[0, 1], 1)])],
            TermOrder::DegRevLex,
            &LIM,
        )
        .unwrap();
        assert!(ideal_member(&pol(2, &[(&[1, 0], 1)]), &gb1));
        let gb2 = buchberger(
            &[pol(2, &[(&[2, 0], 1)]), pol(2, &[(&[0, 1], 1)])],
            TermOrder::DegRevLex,
            &LIM,
        )
        .unwrap();
        assert!(!ideal_member(&pol(2, &[(&[1, 0], 1)]), &gb2));
    }

    #[test]
    fn colon_of_monomial_ideal_by_variable() {
        // (x^2, xy) : x = (x, y)
        let j = [pol(2, &[(&[2, 0], 1)]), pol(2, &[(&[1, 1], 1)])];
        let x = pol(2, &[(&[1, 0], 1)]);
        let colon = ideal_colon(&j, &x, &LIM).unwrap();
        let gb = buchberger(&colon, TermOrder::DegRevLex, &LIM).unwrap();
        assert_eq!(gb.basis, vec![pol(2, &[(&[0, 1], 1)]), pol(2, &[(&[1, 0], 1)])]);
    }

    #[test]
    fn colon_multiplied_back_is_contained() {
        let j = [pol(2, &[(&[3, 0], 1)]), pol(2, &[(&[0, 5], 1)])];
        let f = pol(2, &[(&[1, 0], 1), (&[0, 1], 1)]); // x + y
        let colon = ideal_colon(&j, &f, &LIM).unwrap();
        let gbj = buchberger(&j, TermOrder::DegRevLex, &LIM).unwrap();
        for g in &colon {
            assert!(gbj.contains(&g.mul(&f)));
        }
    }

    #[test]
    fn eliminate_examples() {
        // eliminate t from (tx - 1): nothing survives
        let tx1 = pol(2, &[(&[1, 1], 1), (&[0, 0], -1)]);
        let out = eliminate(&[tx1], 1, &LIM).unwrap();
        assert!(out.is_empty());

        // eliminate t from (T1 - x t, T2 - y t) in (t; x, y, T1, T2)
        let g1 = pol(5, &[(&[0, 0, 0, 1, 0], 1), (&[1, 1, 0, 0, 0], -1)]);
        let g2 = pol(5, &[(&[0, 0, 0, 0, 1], 1), (&[1, 0, 1, 0, 0], -1)]);
        let out = eliminate(&[g1, g2], 1, &LIM).unwrap();
        // y*T1 - x*T2
        assert_eq!(
            out,
            vec![pol(4, &[(&[0, 1, 1, 0], 1), (&[1, 0, 0, 1], -1)])]
        );
    }

    #[test]
    fn eliminate_result_is_in_the_ideal() {
        let g1 = pol(3, &[(&[1, 2, 0], 1), (&[0, 0, 1], -1)]);
        let g2 = pol(3, &[(&[2, 0, 1], 1), (&[0, 1, 0], -1)]);
        let gens = [g1, g2];
        let gb = buchberger(&gens, TermOrder::DegRevLex, &LIM).unwrap();
        for g in eliminate(&gens, 1, &LIM).unwrap() {
            assert!(gb.contains(&g.extend_prefix(1)));
        }
    }

    #[test]
    fn dimension_of_simple_quotients() {
        // (x) in k[x,y]: dim 1; (xy) in k[x,y]: dim 1; (x,y): dim 0
        let x = pol(2, &[(&[1, 0], 1)]);
        let xy = pol(2, &[(&[1, 1], 1)]);
        let y = pol(2, &[(&[0, 1], 1)]);
        assert_eq!(dim_quotient(&[x.clone()], &LIM).unwrap(), 1);
        assert_eq!(dim_quotient(&[xy], &LIM).unwrap(), 1);
        assert_eq!(dim_quotient(&[x, y], &LIM).unwrap(), 0);
    }

    #[test]
    fn dimension_from_a_non_monomial_ideal() {
        // (x - y) in k[x,y] is a line: dim 1
        let g = pol(2, &[(&[1, 0], 1), (&[0, 1], -1)]);
        assert_eq!(dim_quotient(&[g], &LIM).unwrap(), 1);
    }

    #[test]
    fn dim_matches_exhaustive_oracle_on_random_monomial_ideals() {
        // oracle: max independent subset by direct enumeration over all
        // subsets, on pseudo-random monomial ideals in 4 variables
        let mut state = 0x12345678u64;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 33) as usize
        };
        for _ in 0..30 {
            let nv = 4;
            let ngens = 1 + next() % 5;
            let gens: Vec<Mono> = (0..ngens)
                .map(|_| (0..nv).map(|_| (next() % 3) as u64).collect::<Vec<u64>>())
                .filter(|m: &Vec<u64>| m.iter().any(|&e| e > 0))
                .collect();
            if gens.is_empty() {
                continue;
            }
            let dim = dim_of_monomial_ideal(&gens, nv).unwrap();
            // oracle
            let mut best = 0usize;
            for mask in 0u32..(1 << nv) {
                let independent = gens.iter().all(|g| {
                    g.iter()
                        .enumerate()
                        .any(|(i, &e)| e > 0 && mask & (1 << i) == 0)
                });
                if independent {
                    best = best.max(mask.count_ones() as usize);
                }
            }
            assert_eq!(dim, best);
        }
    }

    #[test]
    fn unit_ideal_collapses_to_one() {
        let gens = [pol(1, &[(&[1], 1)]), pol(1, &[(&[1], 1), (&[0], 1)])];
        let gb = buchberger(&gens, TermOrder::DegRevLex, &LIM).unwrap();
        assert_eq!(gb.basis, vec![Polynomial::one(1)]);
    }

    #[test]
    fn colon_by_zero_is_an_error() {
        let j = [pol(2, &[(&[1, 0], 1)])];
        assert_eq!(
            ideal_colon(&j, &Polynomial::zero(2), &LIM).unwrap_err(),
            Error::ColonByZero
        );
    }

    #[test]
    fn display_of_groebner_elements() {
        let r = Ring::new(vec!["t", "x", "y", "T1", "T2"]);
        let g1 = pol(5, &[(&[0, 0, 0, 1, 0], 1), (&[1, 1, 0, 0, 0], -1)]);
        assert_eq!(r.display(&g1, TermOrder::Block { prefix: 1 }), "-t*x + T1");
    }
}
