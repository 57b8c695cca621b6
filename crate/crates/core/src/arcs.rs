//! Jet schemes over k and over k[t], contact-locus constraint compilation,
//! and cylinder codimensions through the Groebner dimension oracle.
//!
//! An arc substitutes x_i -> sum_j x_{i,j} t^j (t stays literal for schemes
//! over k[t]); the level-m jet system collects the coefficients of
//! t^0..t^m. Codimension of a contact cylinder inside Cont^e of the
//! Fitting ideal is computed from the level-(m+e) constraint locus
//! projected (by elimination) back to level m: jets at level m+e with
//! Jacobian order e truncate to liftable m-jets, so the projected locus is
//! the image of the arc space.

use std::collections::HashMap;


use crate::error::{Error, Result};
use crate::exactnum::Cyclo;
use crate::fp::{mulmod, CycloToFp};
use crate::groebner::{buchberger, dimension, GMono, GPoly, GroebnerCtx, MOrder};
use crate::twist::{CTPoly, TwistedScheme};

pub const DEFAULT_SP_BUDGET: usize = 200_000;
pub const PRIME_FLOOR: u64 = 1 << 31;

#[derive(Clone, Debug, PartialEq)]
pub enum ContactMode {
    /// Cont^{>= b}: every generator vanishes to order >= b.
    Geq(u32),
    /// Cont^{= b}: order exactly b; compiles to the closed part plus a
    /// non-vanishing witness, one component per generator.
    Eq(u32),
}

#[derive(Clone, Debug)]
pub struct ContactClause {
    pub gens: Vec<CTPoly>,
    pub mode: ContactMode,
}

/// Exact contact order along the Fitting ideal of the ambient scheme; the
/// clause that licenses the codimension formula on singular schemes.
#[derive(Clone, Debug)]
pub struct FittingClause {
    pub gens: Vec<CTPoly>,
    pub order: u32,
}

#[derive(Clone, Debug, Default)]
pub struct ContactQuery {
    pub clauses: Vec<ContactClause>,
    pub fitting: Option<FittingClause>,
}

#[derive(Clone, Debug)]
pub struct CodimEstimate {
    /// codim per jet level; None encodes an empty locus (codim infinity).
    pub per_level: Vec<(u32, Option<i64>)>,
    pub value: Option<i64>,
    pub stabilized: bool,
    pub budget_hit: bool,
    pub primes_agree: bool,
    pub primes: Vec<u64>,
}

#[derive(Clone, Debug)]
pub struct ArcOpts {
    pub primes: Vec<u64>,
    pub sp_budget: usize,
}

impl ArcOpts {
    pub fn with_default_primes(cyclo_order: u32) -> Self {
        ArcOpts {
            primes: crate::fp::default_primes(cyclo_order, 2, PRIME_FLOOR),
            sp_budget: DEFAULT_SP_BUDGET,
        }
    }
}

/// Sparse polynomial accumulator over F_p used while expanding jets.
type Accum = HashMap<GMono, u64>;

fn accum_add(acc: &mut Accum, m: GMono, c: u64, p: u64) {
    if c % p == 0 {
        return;
    }
    let e = acc.entry(m).or_insert(0);
    *e = (*e + c) % p;
}

fn series_mul(a: &[Accum], b: &[Accum], level: usize, p: u64) -> Vec<Accum> {
    let mut out: Vec<Accum> = vec![HashMap::new(); level + 1];
    for (i, ai) in a.iter().enumerate().take(level + 1) {
        if ai.is_empty() {
            continue;
        }
        for (j, bj) in b.iter().enumerate().take(level + 1 - i) {
            if bj.is_empty() {
                continue;
            }
            for (m1, c1) in ai {
                for (m2, c2) in bj {
                    let m: GMono = m1.iter().zip(m2).map(|(x, y)| x + y).collect();
                    accum_add(&mut out[i + j], m, mulmod(*c1, *c2, p), p);
                }
            }
        }
    }
    out
}

/// Compiles twisted equations into jet coefficient polynomials.
pub struct JetCompiler {
    pub ambient_n: usize,
    pub level: u32,
    pub total_vars: usize,
    pub p: u64,
}

impl JetCompiler {
    pub fn new(ambient_n: usize, level: u32, witnesses: usize, p: u64) -> Self {
        let total_vars = ambient_n * (level as usize + 1) + witnesses;
        JetCompiler { ambient_n, level, total_vars, p }
    }

    pub fn jet_var(&self, i: usize, j: usize) -> usize {
        j * self.ambient_n + i
    }

    pub fn witness_var(&self, k: usize) -> usize {
        self.ambient_n * (self.level as usize + 1) + k
    }

    fn var_series(&self, i: usize) -> Vec<Accum> {
        (0..=self.level as usize)
            .map(|j| {
                let mut m = vec![0u16; self.total_vars];
                m[self.jet_var(i, j)] = 1;
                let mut h = HashMap::new();
                h.insert(m, 1u64);
                h
            })
            .collect()
    }

    /// Coefficients of t^0..t^level of eq(x(t), t), reduced mod p.
    pub fn jet_series(&self, eq: &CTPoly, map: &CycloToFp) -> Result<Vec<Accum>> {
        let level = self.level as usize;
        let mut out: Vec<Accum> = vec![HashMap::new(); level + 1];
        for ((s, mono), coeff) in &eq.terms {
            if !s.is_integer() {
                return Err(Error::Internal("fractional t-exponent in jet compilation".into()));
            }
            let shift = u64::try_from(s.to_integer())
                .map_err(|_| Error::Internal("negative t-exponent".into()))?
                as usize;
            if shift > level {
                continue;
            }
            let c = map.reduce_cyclo(coeff)?;
            let mut term: Vec<Accum> = vec![HashMap::new(); level + 1];
            term[0].insert(vec![0u16; self.total_vars], 1);
            for (i, &e) in mono.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let vs = self.var_series(i);
                for _ in 0..e {
                    term = series_mul(&term, &vs, level, self.p);
                }
            }
            for (j, tj) in term.into_iter().enumerate() {
                if j + shift > level {
                    continue;
                }
                for (m, v) in tj {
                    accum_add(&mut out[j + shift], m, mulmod(v, c.v, self.p), self.p);
                }
            }
        }
        for acc in out.iter_mut() {
            acc.retain(|_, v| *v % self.p != 0);
        }
        Ok(out)
    }

    pub fn to_gpoly(&self, acc: &Accum, ctx: &GroebnerCtx) -> GPoly {
        ctx.normalize(acc.iter().map(|(m, c)| (m.clone(), *c)).collect())
    }
}

/// One compiled polynomial system (a union component) at a jet level.
#[derive(Clone, Debug)]
pub struct JetSystem {
    pub level: u32,
    pub prime: u64,
    pub ambient_n: usize,
    pub total_vars: usize,
    pub equations: Vec<GPoly>,
}

impl JetSystem {
    /// Debug dump: header with prime and level, one equation per line,
    /// variables printed x{i}_{j} (and u{k} for witnesses).
    pub fn dump(&self) -> String {
        let mut out = format!("# prime {} level {}\n", self.prime, self.level);
        for eq in &self.equations {
            out.push_str(&self.render(eq));
            out.push('\n');
        }
        out
    }

    pub fn render(&self, f: &GPoly) -> String {
        if f.terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, (m, c)) in f.terms.iter().enumerate() {
            if k > 0 {
                s.push_str(" + ");
            }
            let mut printed = false;
            if *c != 1 || m.iter().all(|&e| e == 0) {
                s.push_str(&c.to_string());
                printed = true;
            }
            for (v, &e) in m.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if printed {
                    s.push('*');
                }
                printed = true;
                let jets = self.ambient_n * 0..; // silence unused range lint pattern
                let _ = jets;
                if v < self.ambient_n * (self.level as usize + 1) {
                    s.push_str(&format!("x{}_{}", v % self.ambient_n + 1, v / self.ambient_n));
                } else {
                    s.push_str(&format!(
                        "u{}",
                        v - self.ambient_n * (self.level as usize + 1)
                    ));
                }
                if e > 1 {
                    s.push_str(&format!("^{e}"));
                }
            }
        }
        s
    }
}

/// The naive jet system of a list of equations at one level (no contact
/// constraints): the coefficients of t^0..t^m of every equation.
pub fn jet_system(
    equations: &[CTPoly],
    ambient_n: usize,
    level: u32,
    cyclo_order: u32,
    p: u64,
) -> Result<JetSystem> {
    let map = CycloToFp::new(cyclo_order, p)?;
    let compiler = JetCompiler::new(ambient_n, level, 0, p);
    let ctx = GroebnerCtx { p, nvars: compiler.total_vars, order: MOrder::DegRevLex };
    let mut out = Vec::new();
    for eq in equations {
        for acc in compiler.jet_series(eq, &map)? {
            let g = compiler.to_gpoly(&acc, &ctx);
            if !g.terms.is_empty() {
                out.push(g);
            }
        }
    }
    Ok(JetSystem {
        level,
        prime: p,
        ambient_n,
        total_vars: compiler.total_vars,
        equations: out,
    })
}

/// Krull dimension of a compiled system, or None for an empty locus.
pub fn groebner_dim(system: &JetSystem, sp_budget: usize) -> Result<Option<usize>> {
    let ctx = GroebnerCtx {
        p: system.prime,
        nvars: system.total_vars,
        order: MOrder::DegRevLex,
    };
    let gb = buchberger(&ctx, &system.equations, sp_budget)?;
    Ok(dimension(&gb, &vec![true; system.total_vars]))
}

/// All c x c minors of the matrix of x-partials of the twisted equations
/// (t is a base constant): generators of Fitt^n(Omega).
pub fn jacobian_fitting(ts: &TwistedScheme) -> Vec<CTPoly> {
    let c = ts.c;
    let n = ts.n_ambient;
    assert!(c >= 1, "fitting minors need at least one equation");
    let partials: Vec<Vec<CTPoly>> = ts
        .equations
        .iter()
        .map(|eq| (0..n).map(|i| eq.partial(i)).collect())
        .collect();
    let mut minors = Vec::new();
    let mut cols = (0..c).collect::<Vec<usize>>();
    loop {
        let det = tpoly_det(&partials, &cols);
        if !det.is_zero() {
            minors.push(det);
        }
        // next combination
        let mut i = c;
        loop {
            if i == 0 {
                return minors;
            }
            i -= 1;
            if cols[i] != i + n - c {
                cols[i] += 1;
                for j in i + 1..c {
                    cols[j] = cols[j - 1] + 1;
                }
                break;
            }
        }
    }
}

fn tpoly_det(rows: &[Vec<CTPoly>], cols: &[usize]) -> CTPoly {
    let k = cols.len();
    let nvars = rows[0][0].nvars;
    if k == 1 {
        return rows[0][cols[0]].clone();
    }
    let mut acc = CTPoly::zero(nvars);
    for (idx, &c0) in cols.iter().enumerate() {
        let sub_cols: Vec<usize> = cols.iter().copied().filter(|&c| c != c0).collect();
        let sub = tpoly_det(&rows[1..], &sub_cols);
        let term = rows[0][c0].mul(&sub);
        if idx % 2 == 0 {
            acc = acc.add(&term);
        } else {
            acc = acc.add(&term.scale(&-Cyclo::from_int(1)));
        }
    }
    acc
}

struct CompiledLevel {
    /// shared constraints
    base: Vec<GPoly>,
    /// per exact-clause alternatives (same witness variable per group)
    alternatives: Vec<Vec<GPoly>>,
    ctx: GroebnerCtx,
    retained: Vec<bool>,
}

fn compile_level(
    scheme_eqs: &[CTPoly],
    query: &ContactQuery,
    ambient_n: usize,
    m: u32,
    map: &CycloToFp,
    p: u64,
) -> Result<CompiledLevel> {
    let e = query.fitting.as_ref().map_or(0, |f| f.order);
    let big_level = m + e;
    let n_exact = query
        .clauses
        .iter()
        .filter(|c| matches!(c.mode, ContactMode::Eq(_)))
        .count()
        + usize::from(query.fitting.is_some());
    let compiler = JetCompiler::new(ambient_n, big_level, n_exact, p);
    let order = if e > 0 {
        let mut mask = vec![false; compiler.total_vars];
        for j in (m as usize + 1)..=(big_level as usize) {
            for i in 0..ambient_n {
                mask[compiler.jet_var(i, j)] = true;
            }
        }
        MOrder::Elim(mask)
    } else {
        MOrder::DegRevLex
    };
    let ctx = GroebnerCtx { p, nvars: compiler.total_vars, order };

    let mut base = Vec::new();
    let mut alternatives: Vec<Vec<GPoly>> = Vec::new();
    let mut witness_idx = 0usize;

    for eq in scheme_eqs {
        for acc in compiler.jet_series(eq, map)? {
            let g = compiler.to_gpoly(&acc, &ctx);
            if !g.terms.is_empty() {
                base.push(g);
            }
        }
    }

    let mut add_clause = |gens: &[CTPoly], b: u32, exact: bool| -> Result<()> {
        if b > m {
            return Err(Error::LevelTooSmall { b, m });
        }
        let mut witness_opts = Vec::new();
        for g in gens {
            let series = compiler.jet_series(g, map)?;
            for coeff in series.iter().take(b as usize) {
                let gp = compiler.to_gpoly(coeff, &ctx);
                if !gp.terms.is_empty() {
                    base.push(gp);
                }
            }
            if exact {
                let cb = &series[b as usize];
                if cb.is_empty() {
                    continue; // u * 0 - 1 is inconsistent; drop this alternative
                }
                let u = compiler.witness_var(witness_idx);
                let mut terms: Vec<(GMono, u64)> = cb
                    .iter()
                    .map(|(mono, c)| {
                        let mut m2 = mono.clone();
                        m2[u] += 1;
                        (m2, *c)
                    })
                    .collect();
                terms.push((vec![0u16; compiler.total_vars], p - 1));
                witness_opts.push(ctx.normalize(terms));
            }
        }
        if exact {
            alternatives.push(witness_opts);
            witness_idx += 1;
        }
        Ok(())
    };

    for clause in &query.clauses {
        match clause.mode {
            ContactMode::Geq(b) => add_clause(&clause.gens, b, false)?,
            ContactMode::Eq(b) => add_clause(&clause.gens, b, true)?,
        }
    }
    if let Some(fit) = &query.fitting {
        if fit.order > m {
            return Err(Error::LevelTooSmall { b: fit.order, m });
        }
        add_clause(&fit.gens, fit.order, true)?;
    }

    let mut retained = vec![true; compiler.total_vars];
    if let MOrder::Elim(mask) = &ctx.order {
        for (i, &dropped) in mask.iter().enumerate() {
            retained[i] = !dropped;
        }
    }
    Ok(CompiledLevel { base, alternatives, ctx, retained })
}

fn level_dim(compiled: &CompiledLevel, sp_budget: usize) -> (Option<i64>, bool) {
    // cartesian product over alternatives
    let mut budget_hit = false;
    let mut best: Option<i64> = None;
    let nalt = &compiled.alternatives;
    let mut choice = vec![0usize; nalt.len()];
    loop {
        if nalt.iter().all(|a| !a.is_empty()) {
            let mut sys = compiled.base.clone();
            for (k, &c) in choice.iter().enumerate() {
                sys.push(nalt[k][c].clone());
            }
            let (sys, removed) =
                crate::groebner::eliminate_linears(&compiled.ctx, &sys, &compiled.retained);
            let retained: Vec<bool> = compiled
                .retained
                .iter()
                .zip(&removed)
                .map(|(&r, &gone)| r && !gone)
                .collect();
            match buchberger(&compiled.ctx, &sys, sp_budget) {
                Ok(gb) => {
                    if let Some(d) = dimension(&gb, &retained) {
                        best = Some(best.map_or(d as i64, |b| b.max(d as i64)));
                    }
                }
                Err(Error::BudgetExceeded { .. }) => budget_hit = true,
                Err(_) => budget_hit = true,
            }
        } else {
            // a clause lost all alternatives: the component is empty
            break;
        }
        // advance
        let mut k = 0;
        loop {
            if k == choice.len() {
                return (best, budget_hit);
            }
            choice[k] += 1;
            if choice[k] < nalt[k].len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
        if choice.iter().all(|&c| c == 0) {
            break;
        }
    }
    (best, budget_hit)
}

/// Codimension of the contact cylinder per level across the window, with
/// cross-prime agreement and a two-level stabilization flag.
pub fn cylinder_codim(
    scheme_eqs: &[CTPoly],
    query: &ContactQuery,
    ambient_n: usize,
    fiber_n: usize,
    window: &[u32],
    cyclo_order: u32,
    opts: &ArcOpts,
) -> Result<CodimEstimate> {
    assert!(!window.is_empty());
    let mut primes = opts.primes.clone();
    if primes.is_empty() {
        primes = crate::fp::default_primes(cyclo_order, 2, PRIME_FLOOR);
    }
    let mut budget_hit = false;
    let run_prime = |p: u64, budget_hit: &mut bool| -> Result<Vec<Option<i64>>> {
        let map = CycloToFp::new(cyclo_order, p)?;
        let mut out = Vec::new();
        for &m in window {
            let compiled = compile_level(scheme_eqs, query, ambient_n, m, &map, p)?;
            let (dim, hit) = level_dim(&compiled, opts.sp_budget);
            if hit {
                *budget_hit = true;
            }
            // the naive locus at level m+e projected to level m: the
            // subtraction of dropped variables happens inside `dimension`
            // via the retained mask
            out.push(dim.map(|d| (m as i64 + 1) * fiber_n as i64 - d));
        }
        Ok(out)
    };

    let first = run_prime(primes[0], &mut budget_hit)?;
    let (levels, primes_agree) = if primes.len() >= 2 {
        let second = run_prime(primes[1], &mut budget_hit)?;
        if second == first {
            (first, true)
        } else {
            let extra = crate::fp::default_primes(cyclo_order, 3, primes[0].max(primes[1]))
                .into_iter()
                .find(|p| !primes.contains(p))
                .ok_or_else(|| Error::Internal("no third prime available".into()))?;
            primes.push(extra);
            let third = run_prime(extra, &mut budget_hit)?;
            let resolved: Vec<Option<i64>> = (0..first.len())
                .map(|k| {
                    if third[k] == first[k] || third[k] == second[k] {
                        third[k]
                    } else {
                        first[k]
                    }
                })
                .collect();
            (resolved, false)
        }
    } else {
        (first, true)
    };

    let per_level: Vec<(u32, Option<i64>)> =
        window.iter().copied().zip(levels.iter().copied()).collect();
    let value = *levels.last().expect("window nonempty");
    let stabilized = levels.len() >= 2 && {
        let a = levels[levels.len() - 2];
        let b = levels[levels.len() - 1];
        a == b
    };
    Ok(CodimEstimate {
        per_level,
        value,
        stabilized: stabilized && primes_agree && !budget_hit,
        budget_hit,
        primes_agree,
        primes,
    })
}
