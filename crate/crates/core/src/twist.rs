//! The Denef-Loeser twist: polynomials in R[t^{1/d}], the substitution
//! x_i -> t^{e_i/d} x_i in eigencoordinates, division by t^{w(f)}, and the
//! twisted scheme carrying equations, weights and age for one group element.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactnum::Cyclo;
use crate::group::{EigenData, FiniteGroup};
use crate::poly::{CPoly, Monomial, SparsePoly};
use crate::scalar::{FieldScalar, Rat};

/// A polynomial with monomials x^m t^s, s a non-negative rational.
#[derive(Clone, Debug, PartialEq)]
pub struct TPoly<K> {
    pub nvars: usize,
    pub terms: BTreeMap<(Rat, Monomial), K>,
}

impl<K: FieldScalar> TPoly<K> {
    pub fn zero(nvars: usize) -> Self {
        TPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn from_poly(p: &SparsePoly<K>) -> Self {
        let mut t = Self::zero(p.nvars);
        for (m, c) in &p.terms {
            t.terms.insert((Rat::zero(), m.clone()), c.clone());
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, s: Rat, m: Monomial, c: K) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry((s, m)) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let v = e.get().clone() + c;
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for ((s, m), c) in &other.terms {
            out.add_term(s.clone(), m.clone(), c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.nvars);
        for ((s1, m1), c1) in &self.terms {
            for ((s2, m2), c2) in &other.terms {
                out.add_term(s1 + s2, m1.mul(m2), c1.clone() * c2.clone());
            }
        }
        out
    }

    pub fn scale(&self, c: &K) -> Self {
        let mut out = Self::zero(self.nvars);
        for ((s, m), a) in &self.terms {
            out.add_term(s.clone(), m.clone(), a.clone() * c.clone());
        }
        out
    }

    /// Multiplies by t^delta; negative delta must not drive any exponent
    /// below zero.
    pub fn shift_t(&self, delta: &Rat) -> Result<Self> {
        let mut out = Self::zero(self.nvars);
        for ((s, m), c) in &self.terms {
            let ns = s + delta;
            if ns.is_negative() {
                return Err(Error::Internal(format!(
                    "negative t-exponent {ns} after shift"
                )));
            }
            out.terms.insert((ns, m.clone()), c.clone());
        }
        Ok(out)
    }

    pub fn all_integral_t(&self) -> bool {
        self.terms.keys().all(|(s, _)| s.is_integer())
    }

    /// Substitutes t = 1.
    pub fn specialize_t1(&self) -> SparsePoly<K> {
        let mut out = SparsePoly::zero(self.nvars);
        for ((_, m), c) in &self.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    /// d/dx_i; t is a constant of the base.
    pub fn partial(&self, i: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for ((s, m), c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2.0[i] -= 1;
            let mut factor = K::zero();
            for _ in 0..e {
                factor = factor + K::one();
            }
            out.add_term(s.clone(), m2, c.clone() * factor);
        }
        out
    }

    pub fn map_coeffs<K2: FieldScalar, F: Fn(&K) -> crate::error::Result<K2>>(
        &self,
        f: F,
    ) -> Result<TPoly<K2>> {
        let mut out = TPoly::zero(self.nvars);
        for ((s, m), c) in &self.terms {
            out.add_term(s.clone(), m.clone(), f(c)?);
        }
        Ok(out)
    }

    pub fn is_constant_unit(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .keys()
                .all(|(s, m)| s.is_zero() && m.is_one())
    }
}

pub type CTPoly = TPoly<Cyclo>;

impl fmt::Display for CTPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for ((s, m), c) in self.terms.iter().rev() {
            if first {
                first = false;
            } else {
                write!(f, " + ")?;
            }
            let simple = c.is_one();
            if !simple {
                write!(f, "({c})*")?;
            }
            let mut printed = false;
            if !s.is_zero() {
                if s.is_one() {
                    write!(f, "t")?;
                } else {
                    write!(f, "t^{s}")?;
                }
                printed = true;
            }
            if !m.is_one() {
                if printed {
                    write!(f, "*")?;
                }
                let mono = CPoly::monomial(self.nvars, m.clone(), Cyclo::one_of(1));
                write!(f, "{}", mono.render())?;
                printed = true;
            }
            if !printed && simple {
                write!(f, "1")?;
            }
        }
        Ok(())
    }
}

/// Re-expresses f in the eigencoordinates y with x = P y.
pub fn to_eigen_frame(eigen: &EigenData, f: &CPoly) -> CPoly {
    let n = f.nvars;
    let images: Vec<CPoly> = (0..n)
        .map(|i| {
            let mut p = CPoly::zero(n);
            for j in 0..n {
                let c = eigen.basis.at(i, j);
                if !c.is_zero() {
                    p.add_term(Monomial::var(n, j), c.clone());
                }
            }
            p
        })
        .collect();
    f.substitute(&images)
}

/// lambda^*: each monomial y^m acquires t^{<e, m>/d}. Input must already be
/// in the eigenframe of the element that defined `eigen`.
pub fn lambda_star(eigen: &EigenData, f: &CPoly, d: u32) -> CTPoly {
    let mut out = CTPoly::zero(f.nvars);
    for (m, c) in &f.terms {
        let dot: u64 = eigen
            .exponents
            .iter()
            .zip(&m.0)
            .map(|(&e, &k)| e as u64 * k as u64)
            .sum();
        let s = Rat::new(dot.into(), (d as u64).into());
        out.add_term(s, m.clone(), c.clone());
    }
    out
}

/// lambda^*(f) t^{-w}: integral t-exponents per the twist construction;
/// a surviving fractional exponent indicates an upstream bug.
pub fn twisted_equation(eigen: &EigenData, f: &CPoly, d: u32, w: &Rat) -> Result<CTPoly> {
    let shifted = lambda_star(eigen, f, d).shift_t(&-w.clone())?;
    if !shifted.all_integral_t() {
        return Err(Error::Internal(
            "fractional t-exponent survived the twist".into(),
        ));
    }
    Ok(shifted)
}

/// The defining data of the twisted scheme attached to one group element:
/// equations in its eigenframe, weights, age, and dimensions.
#[derive(Clone, Debug)]
pub struct TwistedScheme {
    pub element: usize,
    pub eigen: EigenData,
    pub equations: Vec<CTPoly>,
    pub weights: Vec<Rat>,
    pub weight_total: Rat,
    pub age: Rat,
    pub n_ambient: usize,
    pub c: usize,
}

impl TwistedScheme {
    pub fn fiber_dim(&self) -> usize {
        self.n_ambient - self.c
    }

    /// Pulls an invariant polynomial back to the twisted scheme's frame:
    /// re-express in eigencoordinates, then apply lambda^*. Invariance
    /// makes the result integral in t.
    pub fn pullback_invariant(&self, group: &FiniteGroup, h: &CPoly) -> Result<CTPoly> {
        let d = group.order() as u32;
        let in_frame = to_eigen_frame(&self.eigen, h);
        let out = lambda_star(&self.eigen, &in_frame, d);
        if !out.all_integral_t() {
            return Err(Error::Internal(
                "pullback of an invariant has fractional t-exponents".into(),
            ));
        }
        Ok(out)
    }
}

/// Assembles the twisted scheme for the element at `idx`.
pub fn build_twisted_scheme(group: &FiniteGroup, idx: usize, f_list: &[CPoly]) -> Result<TwistedScheme> {
    let d = group.order() as u32;
    let eigen = group.eigen_decompose(idx)?;
    let age = group.age(idx)?;
    let mut weights = Vec::with_capacity(f_list.len());
    let mut equations = Vec::with_capacity(f_list.len());
    for f in f_list {
        let w = crate::poly::weight(group, idx, f)?;
        let in_frame = to_eigen_frame(&eigen, f);
        let eq = twisted_equation(&eigen, &in_frame, d, &w)?;
        equations.push(eq);
        weights.push(w);
    }
    let weight_total = weights.iter().fold(Rat::zero(), |a, b| a + b);
    let n_ambient = group.n;
    Ok(TwistedScheme {
        element: idx,
        eigen,
        equations,
        weights,
        weight_total,
        age,
        n_ambient,
        c: f_list.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;
    use crate::poly::{act, parse_poly};
    use crate::scalar::{rat, rat_i};

    #[test]
    fn lambda_star_examples() {
        // identity: all t-exponents zero
        let t = FiniteGroup::trivial(2);
        let eig = t.eigen_decompose(0).unwrap();
        let f = parse_poly("x1*x2 - x1^3", 2, 1).unwrap();
        let lf = lambda_star(&eig, &f, 1);
        assert!(lf.terms.keys().all(|(s, _)| s.is_zero()));
        assert_eq!(lf.specialize_t1(), f);

        // e = (1,1,1), d = 3: uniform degree 2 gives t^{2/3} f
        let g3 = FiniteGroup::cyclic(3, &[1, 1, 1], 10).unwrap();
        let eig = g3.eigen_decompose(g3.generators[0]).unwrap();
        let f = parse_poly("x1^2+x2^2+x3^2", 3, 3).unwrap();
        let lf = lambda_star(&eig, &f, 3);
        assert!(lf.terms.keys().all(|(s, _)| *s == rat(2, 3)));

        // e = (1, d-1, 0): x1*x2 - x3^2 -> t*x1*x2 - x3^2
        let g4 = FiniteGroup::cyclic(4, &[1, 3, 0], 10).unwrap();
        // find the element with exponents (1, 3, 0)
        let idx = (0..g4.order())
            .find(|&i| g4.eigen_decompose(i).unwrap().exponents == vec![0, 1, 3])
            .unwrap();
        // use an unsorted frame: the diagonal entries directly
        let mat = &g4.elements[idx].mat;
        let e1 = mat.at(0, 0).root_of_unity_log(4).unwrap();
        assert_eq!(e1, 1);
        let eig = g4.eigen_decompose(idx).unwrap();
        let f = parse_poly("x1*x2 - x3^2", 3, 4).unwrap();
        let in_frame = to_eigen_frame(&eig, &f);
        let lf = lambda_star(&eig, &in_frame, 4);
        let exps: Vec<Rat> = lf.terms.keys().map(|(s, _)| s.clone()).collect();
        assert!(exps.contains(&rat_i(1)));
        assert!(exps.contains(&rat_i(0)));
    }

    #[test]
    fn twisted_equation_examples() {
        // invariant f, identity element: unchanged
        let t = FiniteGroup::trivial(3);
        let eig = t.eigen_decompose(0).unwrap();
        let f = parse_poly("x1*x2 - x3^2", 3, 1).unwrap();
        let eq = twisted_equation(&eig, &f, 1, &Rat::zero()).unwrap();
        assert_eq!(eq.specialize_t1(), f);
        assert!(eq.all_integral_t());

        // mu_3, w = 2/3: t^{2/3} f / t^{2/3} = f
        let g3 = FiniteGroup::cyclic(3, &[1, 1, 1], 10).unwrap();
        let gen = g3.generators[0];
        let f = parse_poly("x1^2+x2^2+x3^2", 3, 3).unwrap();
        let ts = build_twisted_scheme(&g3, gen, &[f.clone()]).unwrap();
        assert_eq!(ts.weights, vec![rat(2, 3)]);
        assert_eq!(ts.age, rat_i(1));
        assert_eq!(ts.equations[0].specialize_t1(), to_eigen_frame(&ts.eigen, &f));
        assert!(ts.equations[0].terms.keys().all(|(s, _)| s.is_zero()));

        // gamma^2: w = 1/3, equation t * f
        let sq = g3.product(gen, gen);
        let ts2 = build_twisted_scheme(&g3, sq, &[f.clone()]).unwrap();
        assert_eq!(ts2.weights, vec![rat(1, 3)]);
        assert!(ts2.equations[0].terms.keys().all(|(s, _)| *s == rat_i(1)));

        // c = 0: affine space over k[t]
        let ts0 = build_twisted_scheme(&g3, gen, &[]).unwrap();
        assert!(ts0.equations.is_empty());
        assert_eq!(ts0.fiber_dim(), 3);
    }

    #[test]
    fn t1_specialization_recovers_equations() {
        let g = FiniteGroup::cyclic(6, &[1, 1], 100).unwrap();
        let f = parse_poly("x1^6 + x2^6 + x1^3*x2^3", 2, 6).unwrap();
        for idx in 0..g.order() {
            let ts = build_twisted_scheme(&g, idx, &[f.clone()]).unwrap();
            let specialized = ts.equations[0].specialize_t1();
            assert_eq!(specialized, to_eigen_frame(&ts.eigen, &f));
        }
    }

    #[test]
    fn invariant_pullback_is_integral() {
        // Lemma-level check: lambda^* of invariants lands in R[t].
        let g = FiniteGroup::cyclic(6, &[1, 5], 100).unwrap();
        let inv_gens = crate::poly::invariant_generators(&g, 6);
        assert!(!inv_gens.is_empty());
        for idx in 0..g.order() {
            let ts = build_twisted_scheme(&g, idx, &[]).unwrap();
            for h in &inv_gens {
                let pulled = ts.pullback_invariant(&g, h).unwrap();
                assert!(pulled.all_integral_t());
            }
        }
    }

    #[test]
    fn centralizer_maps_twisted_ideal_into_itself() {
        // For a diagonal abelian group the centralizer is everything and the
        // twisted equations are semi-invariant monomial combinations; check
        // that the centralizer action sends each equation into the ideal via
        // exact scalar proportionality (diagonal case).
        let g = FiniteGroup::cyclic(3, &[1, 1, 1], 10).unwrap();
        let gen = g.generators[0];
        let f = parse_poly("x1^2+x2^2+x3^2", 3, 3).unwrap();
        let ts = build_twisted_scheme(&g, gen, &[f]).unwrap();
        for el in &g.elements {
            for eq in &ts.equations {
                let moved = eq_act_diag(&el.mat, eq);
                // moved must be a scalar multiple of eq
                let ((_, m0), c0) = eq.terms.iter().next().unwrap();
                let c1 = moved
                    .terms
                    .get(&(Rat::zero(), m0.clone()))
                    .or_else(|| moved.terms.iter().next().map(|(_, c)| c))
                    .unwrap();
                let s = c1.clone() / c0.clone();
                assert_eq!(moved, eq.scale(&s));
            }
        }
    }

    // acts on x-variables of a TPoly by a diagonal matrix
    fn eq_act_diag(mat: &crate::linalg::Matrix<Cyclo>, eq: &CTPoly) -> CTPoly {
        let mut out = CTPoly::zero(eq.nvars);
        for ((s, m), c) in &eq.terms {
            let mono = CPoly::monomial(eq.nvars, m.clone(), c.clone());
            let moved = act(mat, &mono);
            for (m2, c2) in &moved.terms {
                out.add_term(s.clone(), m2.clone(), c2.clone());
            }
        }
        out
    }
}
