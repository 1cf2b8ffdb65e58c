//! Finite permutation groups, normalizers and centralizers of cyclic
//! subgroups, double cosets, and the endomorphism `Res_H Ind_H^G` of
//! `R(H) = Q[t]/(t^r - 1)` for a cyclic subgroup `H`.

use std::collections::{BTreeSet, HashMap, VecDeque};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::abelian::FinAbGroup;
use crate::cyclotomic::{induction, CycFieldElem, CycModN};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::numtheory::euler_phi;
use crate::rational::{self, Rational};

pub const DEFAULT_ORDER_BOUND: usize = 5040;

/// A permutation of `{0, .., m-1}`; `(p * q)(i) = p(q(i))`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Perm(pub Vec<usize>);

impl Perm {
    pub fn identity(m: usize) -> Self {
        Perm((0..m).collect())
    }

    pub fn validate(&self, m: usize) -> Result<()> {
        if self.0.len() != m {
            return Err(Error::BadPermutation(format!(
                "{:?} has length {}, expected {m}",
                self.0,
                self.0.len()
            )));
        }
        let mut seen = vec![false; m];
        for &x in &self.0 {
            if x >= m || std::mem::replace(&mut seen[x], true) {
                return Err(Error::BadPermutation(format!("{:?} is not a bijection", self.0)));
            }
        }
        Ok(())
    }

    pub fn compose(&self, q: &Perm) -> Perm {
        Perm(q.0.iter().map(|&i| self.0[i]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x] = i;
        }
        Perm(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x)
    }

    pub fn pow(&self, k: u64) -> Perm {
        (0..k).fold(Perm::identity(self.0.len()), |acc, _| acc.compose(self))
    }

    pub fn order(&self) -> u64 {
        let mut p = self.clone();
        let mut k = 1;
        while !p.is_identity() {
            p = p.compose(self);
            k += 1;
        }
        k
    }

    /// `g p g^{-1}`
    pub fn conjugate_by(&self, g: &Perm) -> Perm {
        g.compose(self).compose(&g.inverse())
    }

    /// Builds a permutation from disjoint cycles on `m` points.
    pub fn from_cycles(m: usize, cycles: &[&[usize]]) -> Result<Perm> {
        let mut p: Vec<usize> = (0..m).collect();
        for cycle in cycles {
            for (k, &x) in cycle.iter().enumerate() {
                if x >= m {
                    return Err(Error::BadPermutation(format!("point {x} out of range")));
                }
                p[x] = cycle[(k + 1) % cycle.len()];
            }
        }
        let p = Perm(p);
        p.validate(m)?;
        Ok(p)
    }
}

/// A permutation group with its full element list materialized.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
    elements: Vec<Perm>,
}

#[derive(Serialize, Deserialize)]
pub struct PermGroupSpec {
    pub degree: usize,
    pub generators: Vec<Vec<usize>>,
}

impl PermGroup {
    pub fn generate(degree: usize, generators: Vec<Perm>) -> Result<Self> {
        Self::generate_bounded(degree, generators, DEFAULT_ORDER_BOUND)
    }

    /// Closure under composition by breadth-first search; fails once more
    /// than `bound` elements have been found.
    pub fn generate_bounded(degree: usize, generators: Vec<Perm>, bound: usize) -> Result<Self> {
        for g in &generators {
            g.validate(degree)?;
        }
        let id = Perm::identity(degree);
        let mut seen: BTreeSet<Perm> = [id.clone()].into();
        let mut queue: VecDeque<Perm> = [id].into();
        while let Some(x) = queue.pop_front() {
            for g in &generators {
                let y = g.compose(&x);
                if seen.insert(y.clone()) {
                    if seen.len() > bound {
                        return Err(Error::GroupTooLarge(bound));
                    }
                    queue.push_back(y);
                }
            }
        }
        Ok(PermGroup { degree, generators, elements: seen.into_iter().collect() })
    }

    pub fn from_spec(spec: &PermGroupSpec) -> Result<Self> {
        Self::generate(spec.degree, spec.generators.iter().cloned().map(Perm).collect())
    }

    pub fn to_spec(&self) -> PermGroupSpec {
        PermGroupSpec {
            degree: self.degree,
            generators: self.generators.iter().map(|g| g.0.clone()).collect(),
        }
    }

    /// `S_n` from a transposition and an `n`-cycle.
    pub fn symmetric(n: usize) -> Self {
        let mut gens = Vec::new();
        if n >= 2 {
            gens.push(Perm::from_cycles(n, &[&[0, 1]]).unwrap());
        }
        if n >= 3 {
            let cycle: Vec<usize> = (0..n).collect();
            gens.push(Perm::from_cycles(n, &[&cycle]).unwrap());
        }
        Self::generate(n.max(1), gens).expect("S_n within bound")
    }

    /// The regular permutation representation of a finite abelian group.
    pub fn from_abelian(group: &FinAbGroup) -> Self {
        let elements = group.elements();
        let index: HashMap<_, _> = elements.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
        let gens = (0..group.factors().len())
            .map(|i| {
                let g = group.generator(i);
                Perm(elements.iter().map(|x| index[&group.add(&g, x)]).collect())
            })
            .collect();
        Self::generate(elements.len(), gens).expect("regular representation within bound")
    }

    /// Subgroup given by an explicit element list, closed by assumption.
    fn from_elements(degree: usize, mut elements: Vec<Perm>) -> Self {
        elements.sort();
        elements.dedup();
        let mut generators = Vec::new();
        let mut span: BTreeSet<Perm> = [Perm::identity(degree)].into();
        for e in &elements {
            if !span.contains(e) {
                generators.push(e.clone());
                span = PermGroup::generate_bounded(degree, generators.clone(), usize::MAX)
                    .expect("unbounded")
                    .elements
                    .into_iter()
                    .collect();
            }
        }
        PermGroup { degree, generators, elements }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn contains(&self, p: &Perm) -> bool {
        self.elements.binary_search(p).is_ok()
    }

    pub fn is_abelian(&self) -> bool {
        self.generators
            .iter()
            .all(|a| self.generators.iter().all(|b| a.compose(b) == b.compose(a)))
    }

    pub fn cyclic_subgroup(&self, generator: &Perm) -> Result<CyclicSubgroupNA> {
        if !self.contains(generator) {
            return Err(Error::BadPermutation(format!("{:?} is not in the group", generator.0)));
        }
        Ok(CyclicSubgroupNA { generator: generator.clone(), order: generator.order() })
    }

    /// Cyclic subgroups, one per subgroup (not per generator).
    pub fn cyclic_subgroups(&self) -> Vec<CyclicSubgroupNA> {
        let mut seen: BTreeSet<Vec<Perm>> = BTreeSet::new();
        let mut out = Vec::new();
        for g in &self.elements {
            let h = CyclicSubgroupNA { generator: g.clone(), order: g.order() };
            let mut els = h.elements();
            els.sort();
            if seen.insert(els) {
                out.push(h);
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicSubgroupNA {
    pub generator: Perm,
    pub order: u64,
}

impl CyclicSubgroupNA {
    /// `[h^0, h^1, .., h^{r-1}]`
    pub fn elements(&self) -> Vec<Perm> {
        let mut out = Vec::with_capacity(self.order as usize);
        let mut x = Perm::identity(self.generator.0.len());
        for _ in 0..self.order {
            out.push(x.clone());
            x = self.generator.compose(&x);
        }
        out
    }

    /// Map from each element to its exponent with respect to the generator.
    fn exponents(&self) -> HashMap<Perm, u64> {
        self.elements().into_iter().zip(0..).collect()
    }
}

fn check_member(g: &PermGroup, sigma: &CyclicSubgroupNA) -> Result<()> {
    if !g.contains(&sigma.generator) {
        return Err(Error::BadPermutation(format!(
            "generator {:?} is not in the group",
            sigma.generator.0
        )));
    }
    Ok(())
}

pub fn centralizer(g: &PermGroup, sigma: &CyclicSubgroupNA) -> Result<PermGroup> {
    check_member(g, sigma)?;
    let h = &sigma.generator;
    let els = g.elements.iter().filter(|x| x.compose(h) == h.compose(x)).cloned().collect();
    Ok(PermGroup::from_elements(g.degree, els))
}

pub fn normalizer(g: &PermGroup, sigma: &CyclicSubgroupNA) -> Result<PermGroup> {
    check_member(g, sigma)?;
    let members: BTreeSet<Perm> = sigma.elements().into_iter().collect();
    let els = g
        .elements
        .iter()
        .filter(|x| members.contains(&sigma.generator.conjugate_by(x)))
        .cloned()
        .collect();
    Ok(PermGroup::from_elements(g.degree, els))
}

/// `|N_G(sigma) / C_G(sigma)|`
pub fn w_order(g: &PermGroup, sigma: &CyclicSubgroupNA) -> Result<u64> {
    Ok((normalizer(g, sigma)?.order() / centralizer(g, sigma)?.order()) as u64)
}

/// Units `u` such that some element of `G` conjugates `h` to `h^u`.
pub fn w_units(g: &PermGroup, sigma: &CyclicSubgroupNA) -> Result<Vec<u64>> {
    check_member(g, sigma)?;
    let exps = sigma.exponents();
    let us: BTreeSet<u64> = g
        .elements
        .iter()
        .filter_map(|x| exps.get(&sigma.generator.conjugate_by(x)).copied())
        .collect();
    Ok(us.into_iter().collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleCoset {
    pub representative: Perm,
    pub size: usize,
}

/// Double cosets `H g K` partitioning `G`, each with its least element as
/// representative.
pub fn double_cosets(g: &PermGroup, h: &[Perm], k: &[Perm]) -> Result<Vec<DoubleCoset>> {
    for x in h.iter().chain(k) {
        if !g.contains(x) {
            return Err(Error::BadPermutation(format!("{:?} is not in the group", x.0)));
        }
    }
    let mut assigned: BTreeSet<Perm> = BTreeSet::new();
    let mut out = Vec::new();
    for x in &g.elements {
        if assigned.contains(x) {
            continue;
        }
        let coset: BTreeSet<Perm> = h
            .iter()
            .flat_map(|a| k.iter().map(move |b| a.compose(x).compose(b)))
            .collect();
        out.push(DoubleCoset { representative: x.clone(), size: coset.len() });
        assigned.extend(coset);
    }
    Ok(out)
}

/// The matrix of `Res_H Ind_H^G` on `R(H)` in the basis `1, t, .., t^{r-1}`,
/// where `t` is the character sending the generator of `H` to `zeta_r`.
/// Assembled from the Mackey formula
/// `sum over H g H of Ind_{H cap gHg^-1}^H (f^g restricted)`.
pub fn res_ind_endo(g: &PermGroup, h: &CyclicSubgroupNA) -> Result<Matrix> {
    check_member(g, h)?;
    let r = h.order;
    let h_elems = h.elements();
    let exps = h.exponents();
    let cosets = double_cosets(g, &h_elems, &h_elems)?;
    let mut columns = vec![vec![Rational::zero(); r as usize]; r as usize];
    for coset in &cosets {
        let x = &coset.representative;
        let x_inv = x.inverse();
        // K = H cap x H x^{-1}: elements k of H with x^{-1} k x in H
        let m = h_elems
            .iter()
            .filter(|k| exps.contains_key(&x_inv.compose(k).compose(x)))
            .count() as u64;
        let k0 = h.generator.pow(r / m);
        let e = exps[&x_inv.compose(&k0).compose(x)];
        for (i, column) in columns.iter_mut().enumerate() {
            // (x . t^i)(k0) = t^i(x^{-1} k0 x) = zeta_r^{i e} = zeta_m^{i e m / r}
            let j = (i as u64 * (e / (r / m))) % m;
            let induced = induction(&CycModN::t_pow(m, j as i64), r)?;
            for (acc, c) in column.iter_mut().zip(induced.coeffs()) {
                *acc += c;
            }
        }
    }
    Ok(Matrix::from_columns(r as usize, &columns))
}

/// The same endomorphism computed from class functions: induce `f` to `G`
/// by the averaging formula, restrict the values to `H`, and read off the
/// character coefficients by the inverse discrete Fourier transform over
/// `Q(zeta_r)`.
pub fn res_ind_by_class_functions(g: &PermGroup, h: &CyclicSubgroupNA) -> Result<Matrix> {
    check_member(g, h)?;
    let r = h.order;
    let exps = h.exponents();
    let h_elems = h.elements();
    let h_order = rational::q(r as i64);
    let mut columns = Vec::with_capacity(r as usize);
    for i in 0..r {
        // f = t^i, f(h^b) = zeta_r^{i b}
        let values: Vec<CycFieldElem> = h_elems
            .iter()
            .map(|x| {
                let mut sum = CycFieldElem::zero(r);
                for y in g.elements() {
                    if let Some(&b) = exps.get(&y.inverse().compose(x).compose(y)) {
                        sum = &sum + &CycFieldElem::zeta_pow(r, (i * b) as i64);
                    }
                }
                sum.scale(&h_order.recip())
            })
            .collect();
        let mut column = Vec::with_capacity(r as usize);
        for j in 0..r {
            let mut c = CycFieldElem::zero(r);
            for (b, v) in values.iter().enumerate() {
                c = &c + &(v * &CycFieldElem::zeta_pow(r, -((j * b as u64) as i64)));
            }
            let c = c.scale(&h_order.recip());
            column.push(c.as_rational().ok_or_else(|| {
                Error::Dimension("character coefficient is not rational".into())
            })?);
        }
        columns.push(column);
    }
    Ok(Matrix::from_columns(r as usize, &columns))
}

/// The Galois action `t -> t^u` on `R(mu_r)` as a permutation matrix.
pub fn galois_matrix(r: u64, u: u64) -> Matrix {
    let mut m = Matrix::zeros(r as usize, r as usize);
    for i in 0..r {
        m[((i * u % r) as usize, i as usize)] = rational::q(1);
    }
    m
}

/// `w_order` divides `phi(r)` for every cyclic subgroup.
pub fn w_divides_phi(g: &PermGroup, sigma: &CyclicSubgroupNA) -> Result<bool> {
    Ok(euler_phi(sigma.order) % w_order(g, sigma)? == 0)
}
