//! Buchberger's algorithm over F_p with degrevlex and block elimination
//! orders, and the combinatorial Krull dimension of a leading-term ideal.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::fp::{invmod, mulmod};

pub type GMono = Vec<u16>;

#[derive(Clone, Debug)]
pub struct GPoly {
    /// Terms sorted descending in the active order; leading term first.
    pub terms: Vec<(GMono, u64)>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum MOrder {
    DegRevLex,
    /// Monomials touching a masked variable sort above all others; degrevlex
    /// inside each block. Grobner bases for this order intersect to bases of
    /// the elimination ideal in the unmasked variables.
    Elim(Vec<bool>),
}

#[derive(Clone, Debug)]
pub struct GroebnerCtx {
    pub p: u64,
    pub nvars: usize,
    pub order: MOrder,
}

fn deg_in(m: &GMono, mask: Option<&[bool]>, select: bool) -> u64 {
    m.iter()
        .enumerate()
        .filter(|(i, _)| mask.map_or(true, |mk| mk[*i] == select))
        .map(|(_, &e)| e as u64)
        .sum()
}

fn revlex_in(a: &GMono, b: &GMono, mask: Option<&[bool]>, select: bool) -> std::cmp::Ordering {
    for i in (0..a.len()).rev() {
        if mask.map_or(false, |mk| mk[i] != select) {
            continue;
        }
        match a[i].cmp(&b[i]) {
            std::cmp::Ordering::Equal => {}
            std::cmp::Ordering::Less => return std::cmp::Ordering::Greater,
            std::cmp::Ordering::Greater => return std::cmp::Ordering::Less,
        }
    }
    std::cmp::Ordering::Equal
}

impl GroebnerCtx {
    pub fn cmp(&self, a: &GMono, b: &GMono) -> std::cmp::Ordering {
        match &self.order {
            MOrder::DegRevLex => deg_in(a, None, true)
                .cmp(&deg_in(b, None, true))
                .then_with(|| revlex_in(a, b, None, true)),
            MOrder::Elim(mask) => deg_in(a, Some(mask), true)
                .cmp(&deg_in(b, Some(mask), true))
                .then_with(|| revlex_in(a, b, Some(mask), true))
                .then_with(|| {
                    deg_in(a, Some(mask), false).cmp(&deg_in(b, Some(mask), false))
                })
                .then_with(|| revlex_in(a, b, Some(mask), false)),
        }
    }

    pub fn normalize(&self, mut terms: Vec<(GMono, u64)>) -> GPoly {
        terms.retain(|(_, c)| *c % self.p != 0);
        for t in terms.iter_mut() {
            t.1 %= self.p;
        }
        terms.sort_by(|a, b| self.cmp(&b.0, &a.0));
        let mut merged: Vec<(GMono, u64)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            if let Some(last) = merged.last_mut() {
                if last.0 == m {
                    last.1 = (last.1 + c) % self.p;
                    if last.1 == 0 {
                        merged.pop();
                    }
                    continue;
                }
            }
            merged.push((m, c));
        }
        GPoly { terms: merged }
    }

    fn monic(&self, mut f: GPoly) -> GPoly {
        if let Some((_, lc)) = f.terms.first() {
            if *lc != 1 {
                let inv = invmod(*lc, self.p).expect("leading coefficient invertible");
                for t in f.terms.iter_mut() {
                    t.1 = mulmod(t.1, inv, self.p);
                }
            }
        }
        f
    }
}

fn mono_mul(a: &GMono, b: &GMono) -> GMono {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn mono_divides(a: &GMono, b: &GMono) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn mono_div(a: &GMono, b: &GMono) -> GMono {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn mono_lcm(a: &GMono, b: &GMono) -> GMono {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

fn mono_coprime(a: &GMono, b: &GMono) -> bool {
    a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0)
}

/// Full normal form of f modulo the (monic) basis.
fn reduce(ctx: &GroebnerCtx, f: &GPoly, basis: &[GPoly]) -> GPoly {
    let p = ctx.p;
    let mut work = f.terms.clone();
    let mut out: Vec<(GMono, u64)> = Vec::new();
    'outer: while let Some((lm, lc)) = work.first().cloned() {
        for g in basis {
            let (gm, _) = g.terms.first().expect("basis polynomials nonzero");
            if mono_divides(gm, &lm) {
                let shift = mono_div(&lm, gm);
                // work -= lc * shift * g  (g monic)
                let mut prod: Vec<(GMono, u64)> = g
                    .terms
                    .iter()
                    .map(|(m, c)| (mono_mul(m, &shift), mulmod(*c, lc, p)))
                    .collect();
                // merge-subtract: both lists sorted descending
                let mut merged = Vec::with_capacity(work.len() + prod.len());
                let mut i = 0;
                let mut j = 0;
                while i < work.len() && j < prod.len() {
                    match ctx.cmp(&work[i].0, &prod[j].0) {
                        std::cmp::Ordering::Greater => {
                            merged.push(work[i].clone());
                            i += 1;
                        }
                        std::cmp::Ordering::Less => {
                            merged.push((prod[j].0.clone(), p - prod[j].1));
                            j += 1;
                        }
                        std::cmp::Ordering::Equal => {
                            let c = (work[i].1 + p - prod[j].1) % p;
                            if c != 0 {
                                merged.push((work[i].0.clone(), c));
                            }
                            i += 1;
                            j += 1;
                        }
                    }
                }
                merged.extend_from_slice(&work[i..]);
                for t in prod.drain(j..) {
                    merged.push((t.0, p - t.1));
                }
                work = merged;
                continue 'outer;
            }
        }
        out.push(work.remove(0));
    }
    GPoly { terms: out }
}

fn spoly(ctx: &GroebnerCtx, f: &GPoly, g: &GPoly) -> GPoly {
    let p = ctx.p;
    let (fm, _) = f.terms.first().expect("nonzero");
    let (gm, _) = g.terms.first().expect("nonzero");
    let l = mono_lcm(fm, gm);
    let sf = mono_div(&l, fm);
    let sg = mono_div(&l, gm);
    // both monic
    let mut terms: Vec<(GMono, u64)> = f
        .terms
        .iter()
        .map(|(m, c)| (mono_mul(m, &sf), *c))
        .collect();
    terms.extend(g.terms.iter().map(|(m, c)| (mono_mul(m, &sg), p - *c)));
    ctx.normalize(terms)
}

/// Gebauer-Moller pair update: prunes the pending pair set when the
/// element with index `t` (already pushed to `basis`) arrives.
fn gm_update(ctx: &GroebnerCtx, basis: &[GPoly], pairs: &mut Vec<(u64, usize, usize)>, t: usize) {
    let lm = |i: usize| -> &GMono { &basis[i].terms[0].0 };
    let lcm_t: Vec<GMono> = (0..t).map(|i| mono_lcm(lm(i), lm(t))).collect();
    // prune old pairs strictly reducible through lm(t)
    pairs.retain(|&(_, i, j)| {
        let l = mono_lcm(lm(i), lm(j));
        !(mono_divides(lm(t), &l) && lcm_t[i] != l && lcm_t[j] != l)
    });
    // new pairs, pruned among themselves (criterion M + F)
    let mut keep: Vec<usize> = Vec::new();
    'cand: for i in 0..t {
        for &j in &keep {
            if mono_divides(&lcm_t[j], &lcm_t[i]) {
                continue 'cand;
            }
        }
        keep.retain(|&j| !(mono_divides(&lcm_t[i], &lcm_t[j]) && lcm_t[i] != lcm_t[j]));
        keep.push(i);
    }
    // criterion B: coprime leading monomials reduce to zero
    for i in keep {
        if !mono_coprime(lm(i), lm(t)) {
            pairs.push((deg_in(&lcm_t[i], None, true), i, t));
        }
    }
}

/// Reduced Grobner basis, or BudgetExceeded when the S-pair budget runs out.
pub fn buchberger(ctx: &GroebnerCtx, input: &[GPoly], budget: usize) -> Result<Vec<GPoly>> {
    let mut inputs: Vec<GPoly> = Vec::new();
    for f in input {
        let f = ctx.monic(ctx.normalize(f.terms.clone()));
        if f.terms.is_empty() {
            continue;
        }
        if f.terms[0].0.iter().all(|&e| e == 0) {
            return Ok(vec![GPoly { terms: vec![(vec![0; ctx.nvars], 1)] }]);
        }
        inputs.push(f);
    }
    // seed with an interreduced input set
    inputs.sort_by(|a, b| ctx.cmp(&a.terms[0].0, &b.terms[0].0));
    let mut basis: Vec<GPoly> = Vec::new();
    let mut pairs: Vec<(u64, usize, usize)> = Vec::new();
    for f in inputs {
        let r = reduce(ctx, &f, &basis);
        if r.terms.is_empty() {
            continue;
        }
        if r.terms[0].0.iter().all(|&e| e == 0) {
            return Ok(vec![GPoly { terms: vec![(vec![0; ctx.nvars], 1)] }]);
        }
        basis.push(ctx.monic(r));
        gm_update(ctx, &basis, &mut pairs, basis.len() - 1);
    }
    let mut spent = 0usize;
    while !pairs.is_empty() {
        // normal selection: smallest lcm degree first
        let k = pairs
            .iter()
            .enumerate()
            .min_by_key(|(_, (d, i, j))| (*d, *i, *j))
            .map(|(k, _)| k)
            .expect("nonempty");
        let (_, i, j) = pairs.swap_remove(k);
        spent += 1;
        if spent > budget {
            return Err(Error::BudgetExceeded { what: format!("S-pair budget {budget}") });
        }
        let s = spoly(ctx, &basis[i], &basis[j]);
        let r = reduce(ctx, &s, &basis);
        if r.terms.is_empty() {
            continue;
        }
        if r.terms[0].0.iter().all(|&e| e == 0) {
            return Ok(vec![GPoly { terms: vec![(vec![0; ctx.nvars], 1)] }]);
        }
        let r = ctx.monic(r);
        basis.push(r);
        gm_update(ctx, &basis, &mut pairs, basis.len() - 1);
    }
    // interreduce
    let mut reduced: Vec<GPoly> = Vec::new();
    let mut keep: Vec<bool> = vec![true; basis.len()];
    for i in 0..basis.len() {
        let lm = &basis[i].terms[0].0;
        if (0..basis.len())
            .any(|j| j != i && keep[j] && mono_divides(&basis[j].terms[0].0, lm) && basis[j].terms[0].0 != *lm)
        {
            keep[i] = false;
        }
    }
    // drop duplicates by leading monomial (keep the first)
    let mut seen_lm: HashSet<GMono> = HashSet::new();
    for i in 0..basis.len() {
        if keep[i] && !seen_lm.insert(basis[i].terms[0].0.clone()) {
            keep[i] = false;
        }
    }
    let survivors: Vec<GPoly> = basis
        .iter()
        .zip(&keep)
        .filter(|(_, &k)| k)
        .map(|(f, _)| f.clone())
        .collect();
    for i in 0..survivors.len() {
        let others: Vec<GPoly> = survivors
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, f)| f.clone())
            .collect();
        let r = reduce(ctx, &survivors[i], &others);
        if !r.terms.is_empty() {
            reduced.push(ctx.monic(r));
        }
    }
    reduced.sort_by(|a, b| ctx.cmp(&b.terms[0].0, &a.terms[0].0));
    Ok(reduced)
}

fn gp_mul(ctx: &GroebnerCtx, a: &GPoly, b: &GPoly) -> GPoly {
    let mut terms = Vec::with_capacity(a.terms.len() * b.terms.len());
    for (m1, c1) in &a.terms {
        for (m2, c2) in &b.terms {
            terms.push((mono_mul(m1, m2), mulmod(*c1, *c2, ctx.p)));
        }
    }
    ctx.normalize(terms)
}

/// Substitutes `def` for variable `v` throughout `f` (def must not
/// contain v).
fn gp_subst_var(ctx: &GroebnerCtx, f: &GPoly, v: usize, def: &GPoly) -> GPoly {
    let max_e = f.terms.iter().map(|(m, _)| m[v]).max().unwrap_or(0);
    if max_e == 0 {
        return f.clone();
    }
    let mut powers: Vec<GPoly> = Vec::with_capacity(max_e as usize + 1);
    powers.push(GPoly { terms: vec![(vec![0; ctx.nvars], 1)] });
    for e in 1..=max_e as usize {
        powers.push(gp_mul(ctx, &powers[e - 1], def));
    }
    let mut terms = Vec::new();
    for (m, c) in &f.terms {
        let e = m[v];
        if e == 0 {
            terms.push((m.clone(), *c));
            continue;
        }
        let mut m0 = m.clone();
        m0[v] = 0;
        for (pm, pc) in &powers[e as usize].terms {
            terms.push((mono_mul(&m0, pm), mulmod(*c, *pc, ctx.p)));
        }
    }
    ctx.normalize(terms)
}

/// Eliminates variables that occur purely linearly in some equation by
/// substitution: x_v with a degree-one term c*x_v and no other occurrence
/// of x_v in that polynomial defines x_v = -rest/c. Eliminating a dropped
/// variable is always sound for the elimination ideal; a retained variable
/// may only be eliminated when its definition involves retained variables
/// alone. Returns the reduced system and the mask of removed variables.
/// The vanishing-locus dimension over the surviving retained variables is
/// unchanged.
pub fn eliminate_linears(
    ctx: &GroebnerCtx,
    input: &[GPoly],
    retained: &[bool],
) -> (Vec<GPoly>, Vec<bool>) {
    let mut polys: Vec<GPoly> = input
        .iter()
        .map(|f| ctx.normalize(f.terms.clone()))
        .filter(|f| !f.terms.is_empty())
        .collect();
    let mut removed = vec![false; ctx.nvars];
    loop {
        let mut found: Option<(usize, usize)> = None; // (poly idx, var)
        'scan: for (pi, f) in polys.iter().enumerate() {
            for (m, _) in &f.terms {
                if m.iter().map(|&e| e as u64).sum::<u64>() != 1 {
                    continue;
                }
                let v = m.iter().position(|&e| e == 1).expect("degree-one term");
                // v must not occur in any other term of f
                if f.terms.iter().any(|(m2, _)| m2 != m && m2[v] > 0) {
                    continue;
                }
                // soundness: dropped vars always; retained vars only with a
                // fully retained definition
                if retained[v] {
                    let def_ok = f
                        .terms
                        .iter()
                        .filter(|(m2, _)| m2 != m)
                        .all(|(m2, _)| {
                            m2.iter().enumerate().all(|(w, &e)| e == 0 || retained[w])
                        });
                    if !def_ok {
                        continue;
                    }
                }
                found = Some((pi, v));
                break 'scan;
            }
        }
        let Some((pi, v)) = found else { break };
        let f = polys.swap_remove(pi);
        let lin_pos = f
            .terms
            .iter()
            .position(|(m, _)| m[v] == 1 && m.iter().map(|&e| e as u64).sum::<u64>() == 1)
            .expect("linear term present");
        let c = f.terms[lin_pos].1;
        let cinv = invmod(c, ctx.p).expect("nonzero coefficient");
        let neg_cinv = ctx.p - cinv;
        let def_terms: Vec<(GMono, u64)> = f
            .terms
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != lin_pos)
            .map(|(_, (m, cc))| (m.clone(), mulmod(*cc, neg_cinv, ctx.p)))
            .collect();
        let def = ctx.normalize(def_terms);
        removed[v] = true;
        polys = polys
            .into_iter()
            .map(|g| gp_subst_var(ctx, &g, v, &def))
            .filter(|g| !g.terms.is_empty())
            .collect();
    }
    (polys, removed)
}

/// True when the basis is the unit ideal.
pub fn is_unit_basis(basis: &[GPoly]) -> bool {
    basis
        .iter()
        .any(|f| f.terms.first().is_some_and(|(m, _)| m.iter().all(|&e| e == 0)))
}

/// Krull dimension of the vanishing locus from leading terms: the size of a
/// maximal variable subset meeting no leading-term support. `retained`
/// restricts both the polynomials considered (all terms must live in the
/// retained variables) and the ambient variable set, computing the
/// dimension of the elimination ideal's locus.
pub fn dimension(basis: &[GPoly], retained: &[bool]) -> Option<usize> {
    if is_unit_basis(basis) {
        return None;
    }
    let n = retained.len();
    let in_retained =
        |m: &GMono| m.iter().enumerate().all(|(i, &e)| e == 0 || retained[i]);
    let mut supports: Vec<u128> = Vec::new();
    for f in basis {
        if !f.terms.iter().all(|(m, _)| in_retained(m)) {
            continue;
        }
        let (lm, _) = &f.terms[0];
        let mut s: u128 = 0;
        for (i, &e) in lm.iter().enumerate() {
            if e > 0 {
                s |= 1u128 << i;
            }
        }
        debug_assert!(s != 0, "constant leading term in non-unit basis");
        supports.push(s);
    }
    // drop supersets
    supports.sort_by_key(|s| s.count_ones());
    let mut minimal: Vec<u128> = Vec::new();
    'next: for s in supports {
        for t in &minimal {
            if s & t == *t {
                continue 'next;
            }
        }
        minimal.push(s);
    }
    let all: u128 = (0..n).filter(|&i| retained[i]).fold(0u128, |acc, i| acc | (1u128 << i));
    let mut best = 0usize;
    fn search(avail: u128, supports: &[u128], best: &mut usize) {
        let count = avail.count_ones() as usize;
        if count <= *best {
            return;
        }
        match supports.iter().find(|&&s| s & avail == s) {
            None => *best = count,
            Some(&s) => {
                let mut bits = s;
                while bits != 0 {
                    let v = bits & bits.wrapping_neg();
                    bits ^= v;
                    search(avail & !v, supports, best);
                }
            }
        }
    }
    search(all, &minimal, &mut best);
    Some(best)
}

/// Dimension over all variables.
pub fn dimension_full(basis: &[GPoly], nvars: usize) -> Option<usize> {
    dimension(basis, &vec![true; nvars])
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: u64 = 1_073_741_827; // prime > 2^30

    fn ctx(nvars: usize) -> GroebnerCtx {
        GroebnerCtx { p: P, nvars, order: MOrder::DegRevLex }
    }

    fn mono(e: &[u16]) -> GMono {
        e.to_vec()
    }

    fn poly(ctx: &GroebnerCtx, terms: &[(&[u16], i64)]) -> GPoly {
        ctx.normalize(
            terms
                .iter()
                .map(|(m, c)| (mono(m), c.rem_euclid(P as i64) as u64))
                .collect(),
        )
    }

    #[test]
    fn dimension_examples() {
        let c = ctx(3);
        // empty system in 3 variables: dim 3
        let gb = buchberger(&c, &[], 1000).unwrap();
        assert_eq!(dimension_full(&gb, 3), Some(3));

        // {x0} in variables x0, x1: dim 1
        let c2 = ctx(2);
        let gb = buchberger(&c2, &[poly(&c2, &[(&[1, 0], 1)])], 1000).unwrap();
        assert_eq!(dimension_full(&gb, 2), Some(1));

        // {x0^2, 2 x0 x1}: leading terms x0^2, x0*x1; independent set {x1}
        let gb = buchberger(
            &c2,
            &[poly(&c2, &[(&[2, 0], 1)]), poly(&c2, &[(&[1, 1], 2)])],
            1000,
        )
        .unwrap();
        assert_eq!(dimension_full(&gb, 2), Some(1));

        // inconsistent system: EMPTY
        let gb = buchberger(
            &c2,
            &[poly(&c2, &[(&[0, 0], 1)])],
            1000,
        )
        .unwrap();
        assert!(is_unit_basis(&gb));
        assert_eq!(dimension_full(&gb, 2), None);
    }

    #[test]
    fn groebner_katsura_like_system() {
        // x + y + z = 0, xy + yz + zx = 0, xyz - 1 = 0 has dimension 0
        let c = ctx(3);
        let sys = vec![
            poly(&c, &[(&[1, 0, 0], 1), (&[0, 1, 0], 1), (&[0, 0, 1], 1)]),
            poly(&c, &[(&[1, 1, 0], 1), (&[0, 1, 1], 1), (&[1, 0, 1], 1)]),
            poly(&c, &[(&[1, 1, 1], 1), (&[0, 0, 0], -1)]),
        ];
        let gb = buchberger(&c, &sys, 10_000).unwrap();
        assert_eq!(dimension_full(&gb, 3), Some(0));
    }

    #[test]
    fn groebner_twisted_cubic_elimination() {
        // ideal of {(t, t^2, t^3)}: x1 - t, x2 - t^2, x3 - t^3 in k[t,x1,x2,x3];
        // eliminating t leaves the twisted cubic, dimension 1.
        let c = GroebnerCtx {
            p: P,
            nvars: 4,
            order: MOrder::Elim(vec![true, false, false, false]),
        };
        let sys = vec![
            poly(&c, &[(&[0, 1, 0, 0], 1), (&[1, 0, 0, 0], -1)]),
            poly(&c, &[(&[0, 0, 1, 0], 1), (&[2, 0, 0, 0], -1)]),
            poly(&c, &[(&[0, 0, 0, 1], 1), (&[3, 0, 0, 0], -1)]),
        ];
        let gb = buchberger(&c, &sys, 10_000).unwrap();
        let retained = vec![false, true, true, true];
        assert_eq!(dimension(&gb, &retained), Some(1));
        // the full locus (a curve in 4-space) also has dimension 1
        assert_eq!(dimension_full(&gb, 4), Some(1));
    }

    #[test]
    fn budget_is_enforced() {
        let c = ctx(3);
        let sys = vec![
            poly(&c, &[(&[3, 0, 0], 1), (&[0, 2, 1], 5), (&[0, 0, 1], 1)]),
            poly(&c, &[(&[0, 3, 0], 1), (&[1, 0, 2], 7), (&[1, 0, 0], 1)]),
            poly(&c, &[(&[0, 0, 3], 1), (&[2, 1, 0], 11), (&[0, 1, 0], 1)]),
        ];
        assert!(matches!(
            buchberger(&c, &sys, 1),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn reduced_basis_is_confluent() {
        // normal form of a random-ish element is zero iff in the ideal
        let c = ctx(2);
        let f = poly(&c, &[(&[2, 0], 1), (&[0, 1], -1)]); // x^2 - y
        let g = poly(&c, &[(&[3, 0], 1), (&[0, 0], -1)]); // x^3 - 1
        let gb = buchberger(&c, &[f.clone(), g.clone()], 10_000).unwrap();
        // x^2*y - x^... : f*x + g*(-1) = x^3 - xy - x^3 + 1 = -xy + 1 is in the ideal
        let h = poly(&c, &[(&[1, 1], -1), (&[0, 0], 1)]);
        let r = reduce(&c, &h, &gb);
        assert!(r.terms.is_empty());
    }
}
