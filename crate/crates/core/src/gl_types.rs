//! Components of `Hom(mu_r, GL_n)` classified by eigenspace ranks.
//!
//! A homomorphism `mu_r -> GL_n` splits `V = Q^n` into eigenspaces `V_chi`,
//! `chi in Z/r`; the component it lies in is the rank function
//! `d(chi) = dim V_chi`. Centralizers, Weyl groups and the groups
//! `Delta_sigma`, `Gamma_sigma`, `w(sigma)` only depend on `d`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numtheory::{binomial, divisors, euler_phi, factorial, gcd, units};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawComponent")]
pub struct HomComponent {
    pub r: u64,
    pub n: u64,
    /// `d[chi]` for `chi = 0..r`.
    pub d: Vec<u64>,
}

#[derive(Deserialize)]
struct RawComponent {
    r: u64,
    n: u64,
    d: Vec<u64>,
}

impl TryFrom<RawComponent> for HomComponent {
    type Error = Error;
    fn try_from(raw: RawComponent) -> Result<Self> {
        HomComponent::new(raw.r, raw.n, raw.d)
    }
}

impl HomComponent {
    pub fn new(r: u64, n: u64, d: Vec<u64>) -> Result<Self> {
        if r == 0 {
            return Err(Error::BadFactor(0));
        }
        if d.len() != r as usize {
            return Err(Error::Length { expected: r as usize, got: d.len() });
        }
        let total: u64 = d.iter().sum();
        if total != n {
            return Err(Error::BadRankFunction { expected: n, got: total });
        }
        Ok(HomComponent { r, n, d })
    }

    pub fn support(&self) -> Vec<u64> {
        (0..self.r).filter(|&chi| self.d[chi as usize] > 0).collect()
    }

    /// `d o (u .)`, the component of the homomorphism precomposed with
    /// `u in Aut(mu_r)`.
    pub fn twist(&self, u: u64) -> HomComponent {
        let d = (0..self.r).map(|chi| self.d[(u * chi % self.r) as usize]).collect();
        HomComponent { r: self.r, n: self.n, d }
    }
}

/// All rank functions `d: Z/r -> N` with total `n`, first coordinate
/// descending.
pub fn enumerate_hom_components(r: u64, n: u64) -> Vec<HomComponent> {
    fn compositions(parts: usize, total: u64) -> Vec<Vec<u64>> {
        if parts == 1 {
            return vec![vec![total]];
        }
        (0..=total)
            .rev()
            .flat_map(|first| {
                compositions(parts - 1, total - first).into_iter().map(move |mut rest| {
                    rest.insert(0, first);
                    rest
                })
            })
            .collect()
    }
    compositions(r as usize, n)
        .into_iter()
        .map(|d| HomComponent { r, n, d })
        .collect()
}

/// A component is a monomorphism exactly when the characters with `d > 0`
/// generate `Z/r`.
pub fn is_mono(c: &HomComponent) -> bool {
    c.support().into_iter().fold(c.r, gcd) == 1
}

/// The order `r'` of the quotient of `mu_r` that a component factors
/// through: the order of the subgroup of `Z/r` generated by the support.
pub fn image_order(c: &HomComponent) -> u64 {
    c.r / c.support().into_iter().fold(c.r, gcd)
}

/// Pulls a component of `Hom(mu_r, GL_n)` back to the monomorphism
/// `mu_{r'} -> GL_n` it factors through.
pub fn descend_to_mono(c: &HomComponent) -> HomComponent {
    let rp = image_order(c);
    let step = c.r / rp;
    let d = (0..rp).map(|j| c.d[(j * step) as usize]).collect();
    HomComponent { r: rp, n: c.n, d }
}

/// Checks that `Hom(mu_r, GL_n)` is the disjoint union over `r' | r` of
/// `Mono(mu_{r'}, GL_n)`: every component descends to exactly one mono
/// component and every mono component is hit exactly once.
pub fn quotient_partition_check(r: u64, n: u64) -> bool {
    let homs = enumerate_hom_components(r, n);
    let images: Vec<HomComponent> = homs.iter().map(descend_to_mono).collect();
    let distinct: BTreeSet<&HomComponent> = images.iter().collect();
    if distinct.len() != images.len() || !images.iter().all(is_mono) {
        return false;
    }
    let monos: BTreeSet<HomComponent> = divisors(r)
        .into_iter()
        .flat_map(|rp| enumerate_hom_components(rp, n).into_iter().filter(is_mono))
        .collect();
    monos.len() == homs.len() && monos.iter().all(|m| distinct.contains(m))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgroupProfile {
    pub component: HomComponent,
    /// The sizes `d(chi) > 0` of the blocks of `C(sigma) = prod GL_{d(chi)}`,
    /// descending.
    pub centralizer_blocks: Vec<u64>,
    pub delta_order: u64,
    pub gamma_order: u64,
    pub w_order: u64,
}

/// Units `u` with `d(u chi) = d(chi)` for every `chi`.
pub fn weyl_units(c: &HomComponent) -> Vec<u64> {
    units(c.r).into_iter().filter(|&u| c.twist(u) == *c).collect()
}

pub fn profile(c: &HomComponent) -> Result<SubgroupProfile> {
    if !is_mono(c) {
        return Err(Error::NotMono);
    }
    let mut blocks: Vec<u64> = c.d.iter().copied().filter(|&x| x > 0).collect();
    blocks.sort_unstable_by(|a, b| b.cmp(a));
    let delta_order = c.d.iter().map(|&x| factorial(x)).product();
    let w_order = weyl_units(c).len() as u64;
    Ok(SubgroupProfile {
        component: c.clone(),
        centralizer_blocks: blocks,
        delta_order,
        gamma_order: delta_order * w_order,
        w_order,
    })
}

/// Orbits of `(Z/r)^*` on the mono components of `Hom(mu_r, GL_n)`, each
/// sorted, listed by first appearance in enumeration order.
pub fn aut_orbits_of_types(r: u64, n: u64) -> Vec<Vec<HomComponent>> {
    let mut seen = BTreeSet::new();
    let mut orbits = Vec::new();
    for c in enumerate_hom_components(r, n).into_iter().filter(is_mono) {
        if seen.contains(&c) {
            continue;
        }
        let orbit: BTreeSet<HomComponent> = units(r).into_iter().map(|u| c.twist(u)).collect();
        seen.extend(orbit.iter().cloned());
        orbits.push(orbit.into_iter().collect());
    }
    orbits
}

/// Components of `Hom(mu_r, GL_{n_1} x ... x GL_{n_k})`: tuples of
/// components, one per factor.
pub fn enumerate_product_components(r: u64, ns: &[u64]) -> Vec<Vec<HomComponent>> {
    ns.iter().fold(vec![Vec::new()], |acc, &n| {
        let comps = enumerate_hom_components(r, n);
        acc.into_iter()
            .flat_map(|prefix| {
                comps.iter().map(move |c| {
                    let mut t = prefix.clone();
                    t.push(c.clone());
                    t
                })
            })
            .collect()
    })
}

pub fn expected_component_count(r: u64, n: u64) -> u64 {
    binomial(n + r - 1, r - 1)
}

/// `|Gamma_sigma|` by brute force over `S_n`: label the `n` eigen-slots of a
/// diagonal representative of type `d` and count permutations `pi` for which
/// some unit `u` satisfies `label(pi(i)) = u * label(i)` for every slot.
pub fn gamma_order_by_permutations(c: &HomComponent) -> u64 {
    let labels: Vec<u64> = (0..c.r)
        .flat_map(|chi| std::iter::repeat(chi).take(c.d[chi as usize] as usize))
        .collect();
    let us = units(c.r);
    permutations(labels.len())
        .iter()
        .filter(|pi| {
            us.iter()
                .any(|&u| (0..labels.len()).all(|i| labels[pi[i]] == u * labels[i] % c.r))
        })
        .count() as u64
}

/// `|Delta_sigma|` by brute force: permutations preserving every label.
pub fn delta_order_by_permutations(c: &HomComponent) -> u64 {
    let labels: Vec<u64> = (0..c.r)
        .flat_map(|chi| std::iter::repeat(chi).take(c.d[chi as usize] as usize))
        .collect();
    permutations(labels.len())
        .iter()
        .filter(|pi| (0..labels.len()).all(|i| labels[pi[i]] == labels[i]))
        .count() as u64
}

pub(crate) fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// `w_order` always divides `phi(r)`.
pub fn w_divides_phi(p: &SubgroupProfile) -> bool {
    euler_phi(p.component.r) % p.w_order == 0
}
