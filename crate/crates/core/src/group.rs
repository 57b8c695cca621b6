//! Finite subgroups of GL_N over a cyclotomic field: closure from
//! generators, conjugacy classes, eigen-decomposition and ages,
//! pseudo-reflection detection, stabilizers and centralizers.

use std::collections::HashMap;

use num_integer::Integer;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactnum::Cyclo;
use crate::linalg::Matrix;
use crate::scalar::Rat;

pub const DEFAULT_GROUP_CAP: usize = 10_000;

#[derive(Clone, Debug)]
pub struct GroupElement {
    pub mat: Matrix<Cyclo>,
    /// Multiplicative order of the matrix.
    pub order: u32,
}

#[derive(Clone, Debug)]
pub struct ConjClass {
    pub rep: usize,
    pub members: Vec<usize>,
}

/// Exponent data of one element: conjugating by `basis` gives
/// diag(zeta_d^{e_1}, ..., zeta_d^{e_N}) with exponents sorted ascending.
#[derive(Clone, Debug)]
pub struct EigenData {
    pub exponents: Vec<u32>,
    pub basis: Matrix<Cyclo>,
    pub basis_inv: Matrix<Cyclo>,
}

/// A closed finite matrix group. Immutable after construction; class data
/// is computed eagerly, eigen data per class representative on first group
/// construction as well.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    pub n: usize,
    /// All entries live in Q(zeta_L) for this L; L is a multiple of |G|.
    pub cyclo_order: u32,
    pub elements: Vec<GroupElement>,
    pub generators: Vec<usize>,
    pub inverses: Vec<usize>,
    pub classes: Vec<ConjClass>,
    index: HashMap<Vec<Cyclo>, usize>,
    abelian: bool,
}

/// Hash key for a matrix: entries re-embedded at a uniform order so that
/// mathematically equal matrices key identically.
fn mat_key(m: &Matrix<Cyclo>, l: u32) -> Vec<Cyclo> {
    m.data
        .iter()
        .map(|c| c.embed(l).expect("entries embed into the working order"))
        .collect()
}

fn embed_matrix(m: &Matrix<Cyclo>, l: u32) -> Result<Matrix<Cyclo>> {
    let data = m.data.iter().map(|c| c.embed(l)).collect::<Result<Vec<_>>>()?;
    Ok(Matrix::new(m.rows, m.cols, data))
}

fn matrix_entry_orders_lcm(m: &Matrix<Cyclo>) -> u64 {
    m.data.iter().fold(1u64, |acc, c| acc.lcm(&(c.order() as u64)))
}

fn element_order(mat: &Matrix<Cyclo>, cap: usize) -> Result<u32> {
    let n = mat.rows;
    let id = Matrix::identity(n);
    let mut pow = mat.clone();
    for k in 1..=cap as u32 {
        if pow == id {
            return Ok(k);
        }
        pow = pow.mul(mat);
    }
    Err(Error::OrderCapExceeded { cap })
}

impl FiniteGroup {
    /// Closes the group generated by `gens` inside GL_n. Breadth-first with
    /// entry-lexicographic tie-breaks, so element ordering is reproducible.
    pub fn close(n: usize, gens: Vec<Matrix<Cyclo>>, cap: usize) -> Result<Self> {
        for g in &gens {
            assert_eq!((g.rows, g.cols), (n, n), "generators must be n x n");
            g.inverse().map_err(|_| Error::NotInvertible)?;
        }
        let mut l0 = 1u64;
        for g in &gens {
            l0 = l0.lcm(&matrix_entry_orders_lcm(g));
        }
        let gens: Vec<Matrix<Cyclo>> = gens
            .iter()
            .map(|g| embed_matrix(g, l0 as u32))
            .collect::<Result<_>>()?;

        let id = embed_matrix(&Matrix::identity(n), l0 as u32)?;
        let mut elements = vec![id.clone()];
        let mut index = HashMap::new();
        index.insert(mat_key(&id, l0 as u32), 0usize);
        let mut frontier = vec![0usize];
        while !frontier.is_empty() {
            let mut layer: Vec<Matrix<Cyclo>> = Vec::new();
            for &ei in &frontier {
                for g in &gens {
                    let prod = elements[ei].mul(g);
                    let key = mat_key(&prod, l0 as u32);
                    if !index.contains_key(&key) && !layer.iter().any(|m| mat_key(m, l0 as u32) == key) {
                        layer.push(prod);
                    }
                }
            }
            layer.sort_by(|a, b| a.data.cmp(&b.data));
            frontier = Vec::new();
            for m in layer {
                let key = mat_key(&m, l0 as u32);
                if index.contains_key(&key) {
                    continue;
                }
                let idx = elements.len();
                if idx >= cap {
                    return Err(Error::OrderCapExceeded { cap });
                }
                index.insert(key, idx);
                elements.push(m);
                frontier.push(idx);
            }
        }

        // Re-embed at L = lcm(entry orders, |G|) so zeta_d is available for
        // eigenvalues of every element.
        let d = elements.len() as u64;
        let l = l0.lcm(&d) as u32;
        let elements: Vec<Matrix<Cyclo>> = elements
            .iter()
            .map(|m| embed_matrix(m, l))
            .collect::<Result<_>>()?;
        let mut index = HashMap::new();
        for (i, m) in elements.iter().enumerate() {
            index.insert(mat_key(m, l), i);
        }

        let gen_indices: Vec<usize> = gens
            .iter()
            .map(|g| {
                let g = embed_matrix(g, l)?;
                index
                    .get(&mat_key(&g, l))
                    .copied()
                    .ok_or_else(|| Error::Internal("generator missing after closure".into()))
            })
            .collect::<Result<_>>()?;

        let inverses: Vec<usize> = elements
            .iter()
            .map(|m| {
                let inv = m.inverse()?;
                index
                    .get(&mat_key(&inv, l))
                    .copied()
                    .ok_or_else(|| Error::Internal("inverse missing from closed group".into()))
            })
            .collect::<Result<_>>()?;

        let elements: Vec<GroupElement> = elements
            .into_iter()
            .map(|mat| {
                let order = element_order(&mat, cap)?;
                Ok(GroupElement { mat, order })
            })
            .collect::<Result<_>>()?;

        let abelian = gen_indices.iter().all(|&a| {
            gen_indices.iter().all(|&b| {
                elements[a].mat.mul(&elements[b].mat) == elements[b].mat.mul(&elements[a].mat)
            })
        });

        let mut group = FiniteGroup {
            n,
            cyclo_order: l,
            elements,
            generators: gen_indices,
            inverses,
            classes: Vec::new(),
            index,
            abelian,
        };
        group.classes = group.compute_classes();
        Ok(group)
    }

    pub fn trivial(n: usize) -> Self {
        Self::close(n, Vec::new(), 4).expect("trivial group closes")
    }

    /// The cyclic group generated by diag(zeta_r^{w_1}, ..., zeta_r^{w_N}).
    pub fn cyclic(r: u32, weights: &[u32], cap: usize) -> Result<Self> {
        let n = weights.len();
        let mut gen = Matrix::zero(n, n);
        for (i, &w) in weights.iter().enumerate() {
            *gen.at_mut(i, i) = Cyclo::root(r, w);
        }
        Self::close(n, vec![gen], cap)
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn identity_index(&self) -> usize {
        0
    }

    pub fn is_abelian(&self) -> bool {
        self.abelian
    }

    pub fn index_of(&self, mat: &Matrix<Cyclo>) -> Option<usize> {
        self.index.get(&mat_key(mat, self.cyclo_order)).copied()
    }

    pub fn product(&self, a: usize, b: usize) -> usize {
        let prod = self.elements[a].mat.mul(&self.elements[b].mat);
        *self
            .index
            .get(&mat_key(&prod, self.cyclo_order))
            .expect("closed group contains all products")
    }

    fn compute_classes(&self) -> Vec<ConjClass> {
        let d = self.order();
        let mut seen = vec![false; d];
        let mut classes = Vec::new();
        for start in 0..d {
            if seen[start] {
                continue;
            }
            let mut members = vec![start];
            seen[start] = true;
            let mut queue = vec![start];
            while let Some(x) = queue.pop() {
                for &g in &self.generators {
                    let y = self.product(self.product(self.inverses[g], x), g);
                    if !seen[y] {
                        seen[y] = true;
                        members.push(y);
                        queue.push(y);
                    }
                }
            }
            members.sort_unstable();
            classes.push(ConjClass { rep: members[0], members });
        }
        classes
    }

    /// rank(gamma - I) == 1: fixes a hyperplane pointwise.
    pub fn is_pseudo_reflection(&self, idx: usize) -> bool {
        let m = &self.elements[idx].mat;
        let diff = m.sub(&Matrix::identity(self.n));
        m != &Matrix::identity(self.n) && diff.rank() == 1
    }

    /// Exponents of gamma relative to d = |G|: eigenvalues zeta_d^{e_i},
    /// 0 <= e_i < d, found by exact kernel computations per candidate.
    pub fn eigen_decompose(&self, idx: usize) -> Result<EigenData> {
        let d = self.order() as u32;
        let l = self.cyclo_order;
        let step = l / d;
        let mat = &self.elements[idx].mat;

        let is_diag = (0..self.n)
            .all(|i| (0..self.n).all(|j| i == j || mat.at(i, j).is_zero()));

        let mut pairs: Vec<(u32, Vec<Cyclo>)> = Vec::new();
        if is_diag {
            for i in 0..self.n {
                let e = mat.at(i, i).root_of_unity_log(d)?;
                let mut v = vec![Cyclo::zero_of(l); self.n];
                v[i] = Cyclo::one_of(l);
                pairs.push((e, v));
            }
            pairs.sort_by_key(|(e, _)| *e);
        } else {
            for e in 0..d {
                let mut shifted = mat.clone();
                let eig = Cyclo::root(l, step * e);
                for i in 0..self.n {
                    let cur = shifted.at(i, i).clone();
                    *shifted.at_mut(i, i) = cur - eig.clone();
                }
                for v in shifted.kernel_basis() {
                    pairs.push((e, v));
                }
                if pairs.len() == self.n {
                    break;
                }
            }
        }
        if pairs.len() != self.n {
            return Err(Error::Internal(format!(
                "eigen decomposition found {} of {} vectors",
                pairs.len(),
                self.n
            )));
        }
        let exponents: Vec<u32> = pairs.iter().map(|(e, _)| *e).collect();
        let mut basis = Matrix::zero(self.n, self.n);
        for (col, (_, v)) in pairs.iter().enumerate() {
            for row in 0..self.n {
                *basis.at_mut(row, col) = v[row].clone();
            }
        }
        let basis_inv = basis
            .inverse()
            .map_err(|_| Error::Internal("eigenbasis not invertible".into()))?;
        Ok(EigenData { exponents, basis, basis_inv })
    }

    /// age(gamma) = (1/d) sum e_i.
    pub fn age(&self, idx: usize) -> Result<Rat> {
        let eig = self.eigen_decompose(idx)?;
        let sum: u64 = eig.exponents.iter().map(|&e| e as u64).sum();
        Ok(Rat::new(sum.into(), (self.order() as u64).into()))
    }

    /// Subgroup fixing the given point of A^N.
    pub fn stabilizer(&self, point: &[Cyclo]) -> Result<FiniteGroup> {
        assert_eq!(point.len(), self.n);
        let pt: Vec<Cyclo> = point
            .iter()
            .map(|c| c.embed(self.cyclo_order))
            .collect::<Result<_>>()?;
        let members: Vec<Matrix<Cyclo>> = self
            .elements
            .iter()
            .filter(|el| el.mat.mul_vec(&pt) == pt)
            .map(|el| el.mat.clone())
            .collect();
        FiniteGroup::close(self.n, members, self.order() + 1)
    }

    /// Subgroup commuting with the given element.
    pub fn centralizer(&self, idx: usize) -> Result<FiniteGroup> {
        if idx >= self.order() {
            return Err(Error::ElementNotInGroup);
        }
        let g = &self.elements[idx].mat;
        let members: Vec<Matrix<Cyclo>> = self
            .elements
            .iter()
            .filter(|el| el.mat.mul(g) == g.mul(&el.mat))
            .map(|el| el.mat.clone())
            .collect();
        FiniteGroup::close(self.n, members, self.order() + 1)
    }

    pub fn has_pseudo_reflection(&self) -> Option<usize> {
        (0..self.order()).find(|&i| self.is_pseudo_reflection(i))
    }
}

/// A common eigenbasis for an abelian group with per-element exponent
/// vectors in the basis' coordinate order (not sorted).
#[derive(Clone, Debug)]
pub struct SimulDiag {
    pub basis: Matrix<Cyclo>,
    pub basis_inv: Matrix<Cyclo>,
    /// exps[i][k]: exponent of element i on basis column k.
    pub exps: Vec<Vec<u32>>,
}

pub fn simultaneous_diagonalize(group: &FiniteGroup) -> Result<SimulDiag> {
    if !group.is_abelian() {
        return Err(Error::NotAbelian);
    }
    let n = group.n;
    let d = group.order() as u32;
    let l = group.cyclo_order;
    let step = l / d;

    let all_diag = group.elements.iter().all(|el| {
        (0..n).all(|i| (0..n).all(|j| i == j || el.mat.at(i, j).is_zero()))
    });

    let basis = if all_diag {
        Matrix::identity(n)
    } else {
        // Refine joint eigenspaces one generator at a time.
        let mut spaces: Vec<Vec<Vec<Cyclo>>> = vec![(0..n)
            .map(|i| {
                let mut v = vec![Cyclo::zero_of(l); n];
                v[i] = Cyclo::one_of(l);
                v
            })
            .collect()];
        for &g in &group.generators {
            let gm = &group.elements[g].mat;
            let mut next = Vec::new();
            for space in spaces {
                let s = space.len();
                if s == 0 {
                    continue;
                }
                // restriction matrix M with g*B = B*M
                let mut aug = Matrix::zero(n, 2 * s);
                for (col, v) in space.iter().enumerate() {
                    let gv = gm.mul_vec(v);
                    for row in 0..n {
                        *aug.at_mut(row, col) = v[row].clone();
                        *aug.at_mut(row, s + col) = gv[row].clone();
                    }
                }
                let pivots = aug.rref();
                if pivots.len() != s || pivots.iter().any(|&c| c >= s) {
                    return Err(Error::Internal("generator does not preserve eigenspace".into()));
                }
                let mut restriction = Matrix::zero(s, s);
                for r in 0..s {
                    for c in 0..s {
                        *restriction.at_mut(r, c) = aug.at(r, s + c).clone();
                    }
                }
                for e in 0..d {
                    let mut shifted = restriction.clone();
                    let eig = Cyclo::root(l, step * e);
                    for i in 0..s {
                        let cur = shifted.at(i, i).clone();
                        *shifted.at_mut(i, i) = cur - eig.clone();
                    }
                    let kern = shifted.kernel_basis();
                    if kern.is_empty() {
                        continue;
                    }
                    let lifted: Vec<Vec<Cyclo>> = kern
                        .into_iter()
                        .map(|w| {
                            (0..n)
                                .map(|row| {
                                    let mut acc = Cyclo::zero_of(l);
                                    for (k, wk) in w.iter().enumerate() {
                                        if !wk.is_zero() {
                                            acc = &acc + &(&space[k][row] * wk);
                                        }
                                    }
                                    acc
                                })
                                .collect()
                        })
                        .collect();
                    next.push(lifted);
                }
            }
            spaces = next;
        }
        let cols: Vec<Vec<Cyclo>> = spaces.into_iter().flatten().collect();
        if cols.len() != n {
            return Err(Error::Internal("joint eigenbasis incomplete".into()));
        }
        let mut basis = Matrix::zero(n, n);
        for (c, v) in cols.iter().enumerate() {
            for r in 0..n {
                *basis.at_mut(r, c) = v[r].clone();
            }
        }
        basis
    };

    let basis_inv = basis
        .inverse()
        .map_err(|_| Error::Internal("joint eigenbasis not invertible".into()))?;

    let mut exps = Vec::with_capacity(group.order());
    for el in &group.elements {
        let mut row = Vec::with_capacity(n);
        for col in 0..n {
            let v: Vec<Cyclo> = (0..n).map(|r| basis.at(r, col).clone()).collect();
            let gv = el.mat.mul_vec(&v);
            let k = v
                .iter()
                .position(|c| !c.is_zero())
                .ok_or_else(|| Error::Internal("zero eigenbasis column".into()))?;
            let s = gv[k].clone() / v[k].clone();
            for (a, b) in gv.iter().zip(v.iter()) {
                if a != &(&s * b) {
                    return Err(Error::Internal("basis column is not a joint eigenvector".into()));
                }
            }
            row.push(s.root_of_unity_log(d)?);
        }
        exps.push(row);
    }
    Ok(SimulDiag { basis, basis_inv, exps })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, rat_i};

    fn cmat(n: usize, entries: &[i64]) -> Matrix<Cyclo> {
        Matrix::new(n, n, entries.iter().map(|&e| Cyclo::from_int(e)).collect())
    }

    #[test]
    fn closure_examples() {
        let g = FiniteGroup::trivial(2);
        assert_eq!(g.order(), 1);

        let g = FiniteGroup::close(2, vec![cmat(2, &[-1, 0, 0, -1])], 100).unwrap();
        assert_eq!(g.order(), 2);

        let g = FiniteGroup::cyclic(3, &[1, 1, 1], 100).unwrap();
        assert_eq!(g.order(), 3);

        // non-finite generator: a shear exceeds any cap
        let shear = cmat(2, &[1, 1, 0, 1]);
        assert!(matches!(
            FiniteGroup::close(2, vec![shear], 50),
            Err(Error::OrderCapExceeded { .. })
        ));
    }

    fn quaternion_group() -> FiniteGroup {
        // i -> [[z4, 0], [0, -z4]], j -> [[0, -1], [1, 0]]
        let z = Cyclo::root(4, 1);
        let i = Matrix::new(
            2,
            2,
            vec![z.clone(), Cyclo::zero_of(4), Cyclo::zero_of(4), -z],
        );
        let j = cmat(2, &[0, -1, 1, 0]);
        FiniteGroup::close(2, vec![i, j], 100).unwrap()
    }

    #[test]
    fn conjugacy_classes_of_quaternion_group() {
        let g = quaternion_group();
        assert_eq!(g.order(), 8);
        // Oracle: brute-force conjugation over all pairs.
        let mut class_of = vec![usize::MAX; 8];
        let mut nclasses = 0;
        for x in 0..8 {
            if class_of[x] != usize::MAX {
                continue;
            }
            for h in 0..8 {
                let y = g.product(g.product(g.inverses[h], x), h);
                class_of[y] = nclasses;
            }
            nclasses += 1;
        }
        let mut brute_sizes: Vec<usize> = (0..nclasses)
            .map(|c| class_of.iter().filter(|&&x| x == c).count())
            .collect();
        brute_sizes.sort_unstable();
        let mut sizes: Vec<usize> = g.classes.iter().map(|c| c.members.len()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, brute_sizes);
        assert_eq!(sizes, vec![1, 1, 2, 2, 2]);
        assert_eq!(sizes.iter().sum::<usize>(), 8);
        // representative is least member
        for c in &g.classes {
            assert_eq!(c.rep, *c.members.iter().min().unwrap());
        }
    }

    #[test]
    fn pseudo_reflection_detection() {
        let g = FiniteGroup::close(2, vec![cmat(2, &[-1, 0, 0, 1])], 10).unwrap();
        assert!(!g.is_pseudo_reflection(g.identity_index()));
        let refl = g.index_of(&cmat(2, &[-1, 0, 0, 1])).unwrap();
        assert!(g.is_pseudo_reflection(refl));
        assert!(g.has_pseudo_reflection().is_some());

        let g = FiniteGroup::close(2, vec![cmat(2, &[-1, 0, 0, -1])], 10).unwrap();
        assert!(g.has_pseudo_reflection().is_none());
    }

    #[test]
    fn eigen_decompose_examples() {
        // identity in a group of order 4
        let g = FiniteGroup::cyclic(4, &[1, 1], 100).unwrap();
        let eig = g.eigen_decompose(g.identity_index()).unwrap();
        assert_eq!(eig.exponents, vec![0, 0]);

        // diag(-1, -1) with d = 2
        let g = FiniteGroup::close(2, vec![cmat(2, &[-1, 0, 0, -1])], 10).unwrap();
        let idx = g.index_of(&cmat(2, &[-1, 0, 0, -1])).unwrap();
        assert_eq!(g.eigen_decompose(idx).unwrap().exponents, vec![1, 1]);
        assert_eq!(g.age(idx).unwrap(), rat_i(1));

        // rotation [[0, -1], [1, 0]] has order 4 and exponents (1, 3):
        // derived from kernel ranks of gamma -/+ i*I.
        let rot = cmat(2, &[0, -1, 1, 0]);
        let g = FiniteGroup::close(2, vec![rot.clone()], 10).unwrap();
        assert_eq!(g.order(), 4);
        let idx = g.index_of(&rot).unwrap();
        let eig = g.eigen_decompose(idx).unwrap();
        assert_eq!(eig.exponents, vec![1, 3]);
        // roundtrip: basis_inv * gamma * basis is the exact diagonal
        let diag = eig.basis_inv.mul(&g.elements[idx].mat).mul(&eig.basis);
        for i in 0..2 {
            for j in 0..2 {
                if i == j {
                    let expected = Cyclo::root(g.cyclo_order, g.cyclo_order / 4 * eig.exponents[i]);
                    assert_eq!(diag.at(i, j), &expected);
                } else {
                    assert!(diag.at(i, j).is_zero());
                }
            }
        }
    }

    #[test]
    fn age_examples() {
        let g = FiniteGroup::cyclic(3, &[1, 1], 100).unwrap();
        let gen = g.generators[0];
        assert_eq!(g.age(g.identity_index()).unwrap(), rat_i(0));
        assert_eq!(g.age(gen).unwrap(), rat(2, 3));
    }

    #[test]
    fn stabilizer_examples() {
        let g = FiniteGroup::close(2, vec![cmat(2, &[-1, 0, 0, -1])], 10).unwrap();
        let origin = vec![Cyclo::from_int(0), Cyclo::from_int(0)];
        assert_eq!(g.stabilizer(&origin).unwrap().order(), 2);
        let pt = vec![Cyclo::from_int(1), Cyclo::from_int(0)];
        assert_eq!(g.stabilizer(&pt).unwrap().order(), 1);

        let g3 = FiniteGroup::close(
            3,
            vec![cmat(3, &[-1, 0, 0, 0, -1, 0, 0, 0, 1])],
            10,
        )
        .unwrap();
        let pt = vec![Cyclo::from_int(0), Cyclo::from_int(0), Cyclo::from_int(5)];
        assert_eq!(g3.stabilizer(&pt).unwrap().order(), 2);
    }

    #[test]
    fn centralizer_examples() {
        let q = quaternion_group();
        assert_eq!(q.centralizer(q.identity_index()).unwrap().order(), 8);
        let minus_i = q.index_of(&cmat(2, &[-1, 0, 0, -1])).unwrap();
        // -I is central: derived by brute-force commutation over the group.
        assert_eq!(q.centralizer(minus_i).unwrap().order(), 8);
        assert!(q.centralizer(99).is_err());

        let abelian = FiniteGroup::cyclic(6, &[1, 5], 100).unwrap();
        for idx in 0..abelian.order() {
            assert_eq!(abelian.centralizer(idx).unwrap().order(), 6);
        }
    }

    #[test]
    fn simultaneous_diagonalization() {
        // already diagonal cyclic group: identity basis
        let g = FiniteGroup::cyclic(6, &[1, 1], 100).unwrap();
        let sd = simultaneous_diagonalize(&g).unwrap();
        assert_eq!(sd.basis, Matrix::identity(2));
        let gen = g.generators[0];
        assert_eq!(sd.exps[gen], vec![1, 1]);
        assert_eq!(sd.exps[g.identity_index()], vec![0, 0]);

        // swap matrix: eigenvectors (1, 1) and (1, -1), exponents (0, 1)
        let swap = cmat(2, &[0, 1, 1, 0]);
        let g = FiniteGroup::close(2, vec![swap.clone()], 10).unwrap();
        let sd = simultaneous_diagonalize(&g).unwrap();
        let idx = g.index_of(&swap).unwrap();
        let mut e = sd.exps[idx].clone();
        e.sort_unstable();
        assert_eq!(e, vec![0, 1]);
        // columns are genuine eigenvectors of the swap
        for col in 0..2 {
            let v: Vec<Cyclo> = (0..2).map(|r| sd.basis.at(r, col).clone()).collect();
            let gv = swap.mul_vec(&v);
            let s = Cyclo::root(2, sd.exps[idx][col]);
            assert_eq!(gv, v.iter().map(|c| &s * c).collect::<Vec<_>>());
        }

        // non-abelian input rejected
        let q = quaternion_group();
        assert!(matches!(simultaneous_diagonalize(&q), Err(Error::NotAbelian)));
    }

    #[test]
    fn lagrange_and_age_symmetry_over_corpus() {
        let corpus = vec![
            FiniteGroup::trivial(2),
            FiniteGroup::close(2, vec![cmat(2, &[-1, 0, 0, -1])], 100).unwrap(),
            FiniteGroup::cyclic(3, &[1, 1], 100).unwrap(),
            FiniteGroup::cyclic(6, &[1, 1], 100).unwrap(),
            FiniteGroup::close(3, vec![cmat(3, &[-1, 0, 0, 0, -1, 0, 0, 0, 1])], 100).unwrap(),
            quaternion_group(),
        ];
        for g in &corpus {
            let d = g.order();
            for idx in 0..d {
                // age(gamma) + age(gamma^{-1}) = N - mult_1(gamma)
                let eig = g.eigen_decompose(idx).unwrap();
                let mult1 = eig.exponents.iter().filter(|&&e| e == 0).count();
                let lhs = g.age(idx).unwrap() + g.age(g.inverses[idx]).unwrap();
                assert_eq!(lhs, rat_i((g.n - mult1) as i64));
            }
            // age is a class function
            for class in &g.classes {
                let a = g.age(class.rep).unwrap();
                for &m in &class.members {
                    assert_eq!(g.age(m).unwrap(), a);
                }
            }
            // pseudo-reflections have age < 1
            for idx in 0..d {
                if g.is_pseudo_reflection(idx) {
                    assert!(g.age(idx).unwrap() < rat_i(1));
                }
            }
            // Lagrange for a couple of stabilizers
            let origin = vec![Cyclo::from_int(0); g.n];
            assert_eq!(d % g.stabilizer(&origin).unwrap().order(), 0);
        }
    }
}
