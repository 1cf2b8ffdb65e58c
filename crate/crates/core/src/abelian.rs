//! Finite abelian groups `A = Z/n_1 x ... x Z/n_k` as models of finite
//! diagonalizable groups, their characters, and the rational representation
//! rings `R(B) = Q[B^]` of their subgroups.
//!
//! A character of a subgroup `B` is stored as a character of the ambient
//! group, canonicalized to the lexicographically least character with the
//! same restriction to `B`. This keeps every stabilizer ring of a G-set
//! comparable with every other without choosing bases for subgroups.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::cyclotomic::{CycFieldElem, CycModN};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::numtheory::{euler_phi, gcd, lcm, ramanujan_sum, units};
use crate::rational::{self, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawGroup")]
pub struct FinAbGroup {
    cyclic_factors: Vec<u64>,
}

#[derive(Deserialize)]
struct RawGroup {
    cyclic_factors: Vec<u64>,
}

impl TryFrom<RawGroup> for FinAbGroup {
    type Error = Error;
    fn try_from(raw: RawGroup) -> Result<Self> {
        FinAbGroup::new(raw.cyclic_factors)
    }
}

/// A point of the group, one residue per cyclic factor.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GroupElement(pub Vec<u64>);

/// A character, paired with elements by
/// `<chi, h> = sum chi_i h_i (exponent / n_i) mod exponent`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Character(pub Vec<u64>);

impl Character {
    pub fn key(&self) -> String {
        self.0.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
    }

    pub fn parse_key(s: &str) -> Option<Character> {
        if s.is_empty() {
            return Some(Character(Vec::new()));
        }
        s.split(',').map(|p| p.trim().parse().ok()).collect::<Option<Vec<_>>>().map(Character)
    }
}

impl FinAbGroup {
    pub fn new(cyclic_factors: Vec<u64>) -> Result<Self> {
        if let Some(&bad) = cyclic_factors.iter().find(|&&n| n == 0) {
            return Err(Error::BadFactor(bad));
        }
        Ok(FinAbGroup { cyclic_factors })
    }

    pub fn cyclic(n: u64) -> Self {
        Self::new(vec![n]).expect("positive order")
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    pub fn factors(&self) -> &[u64] {
        &self.cyclic_factors
    }

    pub fn order(&self) -> u64 {
        self.cyclic_factors.iter().product()
    }

    pub fn exponent(&self) -> u64 {
        self.cyclic_factors.iter().fold(1, |a, &b| lcm(a, b))
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement(vec![0; self.cyclic_factors.len()])
    }

    pub fn trivial_character(&self) -> Character {
        Character(vec![0; self.cyclic_factors.len()])
    }

    /// The `i`-th standard generator.
    pub fn generator(&self, i: usize) -> GroupElement {
        let mut g = self.identity();
        g.0[i] = 1 % self.cyclic_factors[i];
        g
    }

    pub fn contains(&self, h: &GroupElement) -> bool {
        h.0.len() == self.cyclic_factors.len()
            && h.0.iter().zip(&self.cyclic_factors).all(|(x, n)| x < n)
    }

    pub fn check(&self, h: &GroupElement) -> Result<()> {
        if self.contains(h) {
            Ok(())
        } else {
            Err(Error::NotInGroup(h.0.clone()))
        }
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        GroupElement(
            a.0.iter()
                .zip(&b.0)
                .zip(&self.cyclic_factors)
                .map(|((x, y), n)| (x + y) % n)
                .collect(),
        )
    }

    pub fn neg(&self, a: &GroupElement) -> GroupElement {
        GroupElement(a.0.iter().zip(&self.cyclic_factors).map(|(x, n)| (n - x) % n).collect())
    }

    /// `k * a` (the power `a^k` written additively).
    pub fn mul(&self, k: u64, a: &GroupElement) -> GroupElement {
        GroupElement(a.0.iter().zip(&self.cyclic_factors).map(|(x, n)| (k % n) * x % n).collect())
    }

    pub fn order_of(&self, h: &GroupElement) -> u64 {
        h.0.iter()
            .zip(&self.cyclic_factors)
            .fold(1, |acc, (&x, &n)| lcm(acc, n / gcd(x, n)))
    }

    /// All elements, in lexicographic order.
    pub fn elements(&self) -> Vec<GroupElement> {
        let mut out = vec![Vec::new()];
        for &n in &self.cyclic_factors {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    (0..n).map(move |x| {
                        let mut v = prefix.clone();
                        v.push(x);
                        v
                    })
                })
                .collect();
        }
        out.into_iter().map(GroupElement).collect()
    }

    pub fn characters(&self) -> Vec<Character> {
        self.elements().into_iter().map(|g| Character(g.0)).collect()
    }

    pub fn pairing(&self, chi: &Character, h: &GroupElement) -> u64 {
        let e = self.exponent();
        chi.0
            .iter()
            .zip(&h.0)
            .zip(&self.cyclic_factors)
            .map(|((c, x), n)| c * x % n * (e / n))
            .sum::<u64>()
            % e
    }

    /// `j` such that `chi(h) = zeta_r^j`, where `r` is the order of `h`.
    pub fn character_exponent(&self, chi: &Character, h: &GroupElement) -> u64 {
        let r = self.order_of(h);
        self.pairing(chi, h) / (self.exponent() / r)
    }

    pub fn add_characters(&self, a: &Character, b: &Character) -> Character {
        Character(self.add(&GroupElement(a.0.clone()), &GroupElement(b.0.clone())).0)
    }

    /// All embeddings `mu_r -> A`: the elements of order exactly `r`.
    pub fn embeddings_of_mu(&self, r: u64) -> Vec<MuEmbedding> {
        self.elements()
            .into_iter()
            .filter(|h| self.order_of(h) == r)
            .map(|h| MuEmbedding { order: r, image_generator: h })
            .collect()
    }

    /// Cyclic subgroups, one per `Aut(mu_r)`-orbit of embeddings, sorted by
    /// order and then generator.
    pub fn dual_cyclic_subgroups(&self) -> Vec<DualCyclicSubgroup> {
        let set: BTreeSet<_> = self
            .elements()
            .iter()
            .map(|h| DualCyclicSubgroup::generated_by(self, h))
            .collect();
        set.into_iter().collect()
    }

    pub fn cyclic_subgroup_elements(&self, h: &GroupElement) -> Vec<GroupElement> {
        (0..self.order_of(h)).map(|k| self.mul(k, h)).collect()
    }
}

impl fmt::Display for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.cyclic_factors.iter().map(|n| format!("Z/{n}")).collect();
        write!(f, "{}", parts.join(" x "))
    }
}

/// A monomorphism `mu_r -> A`, recorded by the image of the chosen generator
/// of `mu_r`. Not reduced modulo `Aut(mu_r)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MuEmbedding {
    pub order: u64,
    pub image_generator: GroupElement,
}

impl MuEmbedding {
    /// Precomposition with `u in Aut(mu_r)`: the generator goes to `h^u`.
    pub fn twist(&self, group: &FinAbGroup, u: u64) -> MuEmbedding {
        MuEmbedding { order: self.order, image_generator: group.mul(u, &self.image_generator) }
    }
}

/// A cyclic subgroup `sigma ~ mu_r`, stored by its lexicographically least
/// generator.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DualCyclicSubgroup {
    pub order: u64,
    pub generator: GroupElement,
}

impl DualCyclicSubgroup {
    pub fn generated_by(group: &FinAbGroup, h: &GroupElement) -> Self {
        let r = group.order_of(h);
        let generator = units(r)
            .into_iter()
            .map(|u| group.mul(if r == 1 { 1 } else { u }, h))
            .min()
            .expect("at least one unit");
        DualCyclicSubgroup { order: r, generator }
    }

    pub fn trivial(group: &FinAbGroup) -> Self {
        DualCyclicSubgroup { order: 1, generator: group.identity() }
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    /// Every generator `h^u` of the subgroup.
    pub fn generators(&self, group: &FinAbGroup) -> Vec<GroupElement> {
        units(self.order).into_iter().map(|u| group.mul(u, &self.generator)).collect()
    }
}

// ---------------------------------------------------------------------------
// Subgroups and their representation rings
// ---------------------------------------------------------------------------

/// A subgroup, materialized as its sorted element list.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subgroup {
    group: FinAbGroup,
    elements: Vec<GroupElement>,
}

impl Subgroup {
    /// The closure of a generator list.
    pub fn generated(group: &FinAbGroup, gens: &[GroupElement]) -> Result<Self> {
        for g in gens {
            group.check(g)?;
        }
        let mut set: BTreeSet<GroupElement> = [group.identity()].into();
        for g in gens {
            let multiples = group.cyclic_subgroup_elements(g);
            let current: Vec<_> = set.iter().cloned().collect();
            for x in current {
                for m in &multiples {
                    set.insert(group.add(&x, m));
                }
            }
        }
        Ok(Subgroup { group: group.clone(), elements: set.into_iter().collect() })
    }

    /// From a list already known to be closed under addition.
    pub fn from_elements(group: &FinAbGroup, mut elements: Vec<GroupElement>) -> Result<Self> {
        elements.sort();
        elements.dedup();
        let set: BTreeSet<_> = elements.iter().cloned().collect();
        if !set.contains(&group.identity()) {
            return Err(Error::NotASubgroup);
        }
        for a in &elements {
            group.check(a)?;
            for b in &elements {
                if !set.contains(&group.add(a, b)) {
                    return Err(Error::NotASubgroup);
                }
            }
        }
        Ok(Subgroup { group: group.clone(), elements })
    }

    pub fn whole(group: &FinAbGroup) -> Self {
        Subgroup { group: group.clone(), elements: group.elements() }
    }

    pub fn trivial(group: &FinAbGroup) -> Self {
        Subgroup { group: group.clone(), elements: vec![group.identity()] }
    }

    pub fn group(&self) -> &FinAbGroup {
        &self.group
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }

    pub fn contains(&self, h: &GroupElement) -> bool {
        self.elements.binary_search(h).is_ok()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.group == other.group && self.elements.iter().all(|h| other.contains(h))
    }

    pub fn contains_cyclic(&self, sigma: &DualCyclicSubgroup) -> bool {
        self.contains(&sigma.generator)
    }

    pub fn dual_cyclic_subgroups(&self) -> Vec<DualCyclicSubgroup> {
        let set: BTreeSet<_> = self
            .elements
            .iter()
            .map(|h| DualCyclicSubgroup::generated_by(&self.group, h))
            .collect();
        set.into_iter().collect()
    }
}

/// The representation ring `R(B) = Q[B^]` of a subgroup `B` of `A`, with a
/// fixed ordering of the characters of `B`.
#[derive(Debug)]
pub struct CharRing {
    sub: Subgroup,
    chars: Vec<Character>,
    index: HashMap<Vec<u64>, usize>,
    mult: Vec<usize>,
    trivial: usize,
}

impl PartialEq for CharRing {
    fn eq(&self, other: &Self) -> bool {
        self.sub == other.sub
    }
}

impl Eq for CharRing {}

impl CharRing {
    pub fn new(sub: Subgroup) -> Arc<Self> {
        let group = sub.group.clone();
        let mut reps: BTreeMap<Vec<u64>, Character> = BTreeMap::new();
        for chi in group.characters() {
            let key: Vec<u64> = sub.elements.iter().map(|b| group.pairing(&chi, b)).collect();
            reps.entry(key).or_insert(chi);
        }
        let mut entries: Vec<(Vec<u64>, Character)> = reps.into_iter().collect();
        entries.sort_by(|a, b| a.1.cmp(&b.1));
        let index: HashMap<Vec<u64>, usize> =
            entries.iter().enumerate().map(|(i, (k, _))| (k.clone(), i)).collect();
        let chars: Vec<Character> = entries.into_iter().map(|(_, c)| c).collect();
        let n = chars.len();
        let e = group.exponent();
        let keys: Vec<Vec<u64>> = chars
            .iter()
            .map(|c| sub.elements.iter().map(|b| group.pairing(c, b)).collect())
            .collect();
        let mut mult = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                let k: Vec<u64> = keys[i].iter().zip(&keys[j]).map(|(a, b)| (a + b) % e).collect();
                mult[i * n + j] = index[&k];
            }
        }
        let trivial = index[&vec![0; sub.elements.len()]];
        Arc::new(CharRing { sub, chars, index, mult, trivial })
    }

    pub fn whole(group: &FinAbGroup) -> Arc<Self> {
        Self::new(Subgroup::whole(group))
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.sub
    }

    pub fn group(&self) -> &FinAbGroup {
        &self.sub.group
    }

    pub fn dim(&self) -> usize {
        self.chars.len()
    }

    pub fn characters(&self) -> &[Character] {
        &self.chars
    }

    pub fn trivial_index(&self) -> usize {
        self.trivial
    }

    /// Position of the restriction to `B` of an ambient character.
    pub fn index_of(&self, chi: &Character) -> Result<usize> {
        if chi.0.len() != self.group().factors().len()
            || chi.0.iter().zip(self.group().factors()).any(|(c, n)| c >= n)
        {
            return Err(Error::NotInGroup(chi.0.clone()));
        }
        let key: Vec<u64> =
            self.sub.elements.iter().map(|b| self.group().pairing(chi, b)).collect();
        Ok(self.index[&key])
    }

    fn product_index(&self, i: usize, j: usize) -> usize {
        self.mult[i * self.chars.len() + j]
    }
}

/// An element of `R(B)`, dense in the character basis of its ring.
#[derive(Clone)]
pub struct GroupAlgebraElem {
    ring: Arc<CharRing>,
    coeffs: Vec<Rational>,
}

impl PartialEq for GroupAlgebraElem {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring)
            && self.coeffs == other.coeffs
    }
}

impl Eq for GroupAlgebraElem {}

impl fmt::Debug for GroupAlgebraElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .zip(&self.ring.chars)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, chi)| format!("{}*[{}]", rational::to_string(c), chi.key()))
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl GroupAlgebraElem {
    pub fn new(ring: &Arc<CharRing>, coeffs: Vec<Rational>) -> Result<Self> {
        if coeffs.len() != ring.dim() {
            return Err(Error::Length { expected: ring.dim(), got: coeffs.len() });
        }
        Ok(GroupAlgebraElem { ring: ring.clone(), coeffs })
    }

    pub fn zero(ring: &Arc<CharRing>) -> Self {
        GroupAlgebraElem { ring: ring.clone(), coeffs: vec![Rational::zero(); ring.dim()] }
    }

    pub fn one(ring: &Arc<CharRing>) -> Self {
        Self::basis(ring, ring.trivial)
    }

    pub fn basis(ring: &Arc<CharRing>, i: usize) -> Self {
        let mut x = Self::zero(ring);
        x.coeffs[i] = Rational::one();
        x
    }

    pub fn character(ring: &Arc<CharRing>, chi: &Character) -> Result<Self> {
        Ok(Self::basis(ring, ring.index_of(chi)?))
    }

    /// From `(character, coefficient)` pairs; repeated characters add up.
    pub fn from_terms(ring: &Arc<CharRing>, terms: &[(Character, Rational)]) -> Result<Self> {
        let mut x = Self::zero(ring);
        for (chi, c) in terms {
            x.coeffs[ring.index_of(chi)?] += c;
        }
        Ok(x)
    }

    /// The regular representation, the sum of all characters.
    pub fn regular(ring: &Arc<CharRing>) -> Self {
        GroupAlgebraElem { ring: ring.clone(), coeffs: vec![Rational::one(); ring.dim()] }
    }

    pub fn ring(&self) -> &Arc<CharRing> {
        &self.ring
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, chi: &Character) -> Result<&Rational> {
        Ok(&self.coeffs[self.ring.index_of(chi)?])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn same_ring(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::GroupMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        Ok(GroupAlgebraElem {
            ring: self.ring.clone(),
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        Ok(GroupAlgebraElem {
            ring: self.ring.clone(),
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
        })
    }

    /// Product in `R(B)`: characters multiply by tensor product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        let mut out = Self::zero(&self.ring);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out.coeffs[self.ring.product_index(i, j)] += a * b;
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        GroupAlgebraElem {
            ring: self.ring.clone(),
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// The character-basis pairing `sum_chi a_chi b_chi`.
    pub fn pairing(&self, other: &Self) -> Result<Rational> {
        self.same_ring(other)?;
        Ok(self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a * b).sum())
    }

    /// Restriction along `mu_r -> B`, `zeta -> h`: the image in
    /// `R(mu_r) = Q[s]/(s^r - 1)`.
    pub fn restrict_to_cyclic(&self, h: &GroupElement) -> Result<CycModN> {
        if !self.ring.sub.contains(h) {
            return Err(Error::NotInGroup(h.0.clone()));
        }
        let group = self.ring.group();
        let r = group.order_of(h);
        let mut out = vec![Rational::zero(); r as usize];
        for (chi, c) in self.ring.chars.iter().zip(&self.coeffs) {
            if !c.is_zero() {
                out[group.character_exponent(chi, h) as usize] += c;
            }
        }
        CycModN::new(r, out)
    }

    /// `sum_chi a_chi chi(h)` in `Q(zeta_{ord h})`.
    pub fn evaluate(&self, h: &GroupElement) -> Result<CycFieldElem> {
        let restricted = self.restrict_to_cyclic(h)?;
        Ok(CycFieldElem::from_poly(restricted.modulus(), &restricted.to_poly()))
    }

    /// The virtual dimension, `a(1)`.
    pub fn rank(&self) -> Rational {
        self.coeffs.iter().sum()
    }

    /// Sparse JSON form `{"coeffs": {"c1,c2": "p/q"}}`.
    pub fn to_json(&self) -> serde_json::Value {
        let coeffs: serde_json::Map<String, serde_json::Value> = self
            .ring
            .chars
            .iter()
            .zip(&self.coeffs)
            .filter(|(_, c)| !c.is_zero())
            .map(|(chi, c)| (chi.key(), serde_json::Value::String(rational::to_string(c))))
            .collect();
        serde_json::json!({ "coeffs": coeffs })
    }

    pub fn from_json(ring: &Arc<CharRing>, value: &serde_json::Value) -> Result<Self> {
        let bad = |msg: &str| Error::BadClass(msg.to_string());
        let coeffs = value
            .get("coeffs")
            .and_then(|v| v.as_object())
            .ok_or_else(|| bad("expected an object with a \"coeffs\" map"))?;
        let mut terms = Vec::new();
        for (k, v) in coeffs {
            let chi = Character::parse_key(k).ok_or_else(|| bad(&format!("character key {k:?}")))?;
            let s = v.as_str().ok_or_else(|| bad("coefficients must be strings"))?;
            terms.push((chi, rational::parse(s)?));
        }
        Self::from_terms(ring, &terms)
    }
}

/// The idempotent `e_sigma` of `R(B)` cutting out the `Q(zeta_r)` factor
/// indexed by the cyclic subgroup `sigma` of `B`: `e_sigma(h') = 1` when `h'`
/// generates `sigma`, and `0` otherwise.
pub fn idempotent(ring: &Arc<CharRing>, sigma: &DualCyclicSubgroup) -> Result<GroupAlgebraElem> {
    if !ring.sub.contains_cyclic(sigma) {
        return Err(Error::NotASubgroup);
    }
    let group = ring.group();
    let r = sigma.order;
    let b = ring.dim() as i64;
    let coeffs = ring
        .chars
        .iter()
        .map(|chi| {
            // sum over generators h' of chi(h')^{-1}, a Ramanujan sum
            let j = group.character_exponent(chi, &sigma.generator);
            rational::frac(ramanujan_sum(r, (r - j) % r), b)
        })
        .collect();
    GroupAlgebraElem::new(ring, coeffs)
}

/// One factor of `R(A) = prod_sigma Q(zeta_{|sigma|})`.
#[derive(Clone, Debug)]
pub struct Factor {
    pub sigma: DualCyclicSubgroup,
    pub idempotent: GroupAlgebraElem,
    pub conductor: u64,
}

impl Factor {
    pub fn field_degree(&self) -> u64 {
        euler_phi(self.conductor)
    }
}

pub fn factorize_group_algebra(group: &FinAbGroup) -> Vec<Factor> {
    factorize_ring(&CharRing::whole(group))
}

pub fn factorize_ring(ring: &Arc<CharRing>) -> Vec<Factor> {
    ring.sub
        .dual_cyclic_subgroups()
        .into_iter()
        .map(|sigma| Factor {
            idempotent: idempotent(ring, &sigma).expect("sigma lies in the subgroup"),
            conductor: sigma.order,
            sigma,
        })
        .collect()
}

/// Checks that evaluation at the generator of `sigma` maps `R(A)` onto
/// `Q(zeta_r)`, so that its kernel `m_sigma` is a maximal ideal.
pub fn maximal_ideal_check(group: &FinAbGroup, sigma: &DualCyclicSubgroup) -> Result<bool> {
    group.check(&sigma.generator)?;
    let ring = CharRing::whole(group);
    let r = sigma.order;
    let columns: Vec<Vec<Rational>> = (0..ring.dim())
        .map(|i| {
            GroupAlgebraElem::basis(&ring, i)
                .evaluate(&sigma.generator)
                .map(|x| x.coeffs().to_vec())
        })
        .collect::<Result<_>>()?;
    let m = Matrix::from_columns(euler_phi(r) as usize, &columns);
    Ok(m.rank() == euler_phi(r) as usize)
}

/// Induction `R(B) -> R(B')` for `B` contained in `B'`:
/// `chi -> sum of the characters of B' restricting to chi`.
pub fn induction_ab(target: &Arc<CharRing>, a: &GroupAlgebraElem) -> Result<GroupAlgebraElem> {
    if !a.ring.sub.is_subgroup_of(&target.sub) {
        return Err(Error::NotASubgroup);
    }
    let coeffs = target
        .chars
        .iter()
        .map(|psi| a.ring.index_of(psi).map(|i| a.coeffs[i].clone()))
        .collect::<Result<_>>()?;
    GroupAlgebraElem::new(target, coeffs)
}

/// Restriction `R(B') -> R(B)` for `B` contained in `B'`.
pub fn restriction_ab(target: &Arc<CharRing>, a: &GroupAlgebraElem) -> Result<GroupAlgebraElem> {
    if !target.sub.is_subgroup_of(&a.ring.sub) {
        return Err(Error::NotASubgroup);
    }
    let mut out = GroupAlgebraElem::zero(target);
    for (psi, c) in a.ring.chars.iter().zip(&a.coeffs) {
        out.coeffs[target.index_of(psi)?] += c;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, q};

    fn g(xs: &[u64]) -> GroupElement {
        GroupElement(xs.to_vec())
    }

    fn grp(fs: &[u64]) -> FinAbGroup {
        FinAbGroup::new(fs.to_vec()).unwrap()
    }

    #[test]
    fn element_counts() {
        assert_eq!(grp(&[1]).elements(), vec![g(&[0])]);
        assert_eq!(grp(&[2, 2]).elements().len(), 4);
        assert_eq!(grp(&[6]).elements().len(), 6);
        assert!(FinAbGroup::new(vec![2, 0]).is_err());
    }

    #[test]
    fn embedding_counts() {
        assert_eq!(grp(&[2]).embeddings_of_mu(2).len(), 1);
        assert_eq!(grp(&[2, 2]).embeddings_of_mu(2).len(), 3);
        assert!(grp(&[4]).embeddings_of_mu(3).is_empty());
    }

    #[test]
    fn cyclic_subgroup_lists() {
        let orders: Vec<u64> = grp(&[4]).dual_cyclic_subgroups().iter().map(|s| s.order).collect();
        assert_eq!(orders, vec![1, 2, 4]);
        let orders: Vec<u64> =
            grp(&[2, 2]).dual_cyclic_subgroups().iter().map(|s| s.order).collect();
        assert_eq!(orders, vec![1, 2, 2, 2]);
        assert_eq!(grp(&[1]).dual_cyclic_subgroups().len(), 1);
        // the order-4 subgroup of Z/4 is stored by its least generator 1
        assert_eq!(grp(&[4]).dual_cyclic_subgroups()[2].generator, g(&[1]));
    }

    #[test]
    fn evaluate_examples() {
        let z4 = grp(&[4]);
        let ring = CharRing::whole(&z4);
        let one = GroupAlgebraElem::one(&ring);
        for h in z4.elements() {
            assert_eq!(one.evaluate(&h).unwrap(), CycFieldElem::one(z4.order_of(&h)));
        }
        let chi = GroupAlgebraElem::character(&ring, &Character(vec![1])).unwrap();
        assert_eq!(chi.evaluate(&g(&[1])).unwrap(), CycFieldElem::zeta_pow(4, 1));

        let z2 = grp(&[2]);
        let ring2 = CharRing::whole(&z2);
        let sign = GroupAlgebraElem::character(&ring2, &Character(vec![1])).unwrap();
        assert_eq!(sign.evaluate(&g(&[1])).unwrap(), CycFieldElem::from_rational(2, q(-1)));
    }

    #[test]
    fn factorization_examples() {
        let z2 = grp(&[2]);
        let ring = CharRing::whole(&z2);
        let factors = factorize_group_algebra(&z2);
        assert_eq!(factors.len(), 2);
        assert_eq!(factors[0].idempotent.coeffs(), &[frac(1, 2), frac(1, 2)]);
        assert_eq!(factors[1].idempotent.coeffs(), &[frac(1, 2), frac(-1, 2)]);
        assert!(factors.iter().all(|f| f.field_degree() == 1));
        assert_eq!(factors[0].idempotent.ring(), &ring);

        let degrees: Vec<u64> =
            factorize_group_algebra(&grp(&[2, 2])).iter().map(Factor::field_degree).collect();
        assert_eq!(degrees, vec![1, 1, 1, 1]);
        let degrees: Vec<u64> =
            factorize_group_algebra(&grp(&[4])).iter().map(Factor::field_degree).collect();
        assert_eq!(degrees, vec![1, 1, 2]);
    }

    #[test]
    fn idempotents_evaluate_to_indicators() {
        for fs in [&[6][..], &[2, 4], &[3, 3], &[12]] {
            let a = grp(fs);
            for f in factorize_group_algebra(&a) {
                for h in a.elements() {
                    let v = f.idempotent.evaluate(&h).unwrap();
                    let inside = DualCyclicSubgroup::generated_by(&a, &h) == f.sigma;
                    let expected = CycFieldElem::from_rational(
                        a.order_of(&h),
                        if inside { q(1) } else { q(0) },
                    );
                    assert_eq!(v, expected, "{a} sigma={:?} h={h:?}", f.sigma);
                }
            }
        }
    }

    #[test]
    fn maximal_ideals() {
        let z2 = grp(&[2]);
        assert!(maximal_ideal_check(&z2, &DualCyclicSubgroup::trivial(&z2)).unwrap());
        let z4 = grp(&[4]);
        for s in z4.dual_cyclic_subgroups() {
            assert!(maximal_ideal_check(&z4, &s).unwrap());
        }
    }

    #[test]
    fn induction_examples() {
        let z2 = grp(&[2]);
        let full = CharRing::whole(&z2);
        let triv = CharRing::new(Subgroup::trivial(&z2));
        let ind = induction_ab(&full, &GroupAlgebraElem::one(&triv)).unwrap();
        assert_eq!(ind, GroupAlgebraElem::regular(&full));
        let x = GroupAlgebraElem::new(&full, vec![q(3), frac(-1, 2)]).unwrap();
        assert_eq!(induction_ab(&full, &x).unwrap(), x);

        let z4 = grp(&[4]);
        let full4 = CharRing::whole(&z4);
        let b = CharRing::new(Subgroup::generated(&z4, &[g(&[2])]).unwrap());
        let ind = induction_ab(&full4, &GroupAlgebraElem::one(&b)).unwrap();
        let expected = GroupAlgebraElem::from_terms(
            &full4,
            &[(Character(vec![0]), q(1)), (Character(vec![2]), q(1))],
        )
        .unwrap();
        assert_eq!(ind, expected);
    }

    #[test]
    fn restriction_examples() {
        let z4 = grp(&[4]);
        let full4 = CharRing::whole(&z4);
        let b = CharRing::new(Subgroup::generated(&z4, &[g(&[2])]).unwrap());
        let chi = GroupAlgebraElem::character(&full4, &Character(vec![1])).unwrap();
        let res = restriction_ab(&b, &chi).unwrap();
        assert_eq!(res.evaluate(&g(&[2])).unwrap(), CycFieldElem::from_rational(2, q(-1)));
        let one = restriction_ab(&b, &GroupAlgebraElem::one(&full4)).unwrap();
        assert_eq!(one, GroupAlgebraElem::one(&b));
        assert_eq!(restriction_ab(&full4, &chi).unwrap(), chi);
    }

    #[test]
    fn generators_outside_the_group_are_rejected() {
        let z4 = grp(&[4]);
        assert_eq!(Subgroup::generated(&z4, &[g(&[5])]), Err(Error::NotInGroup(vec![5])));
        assert!(Subgroup::from_elements(&z4, vec![g(&[0]), g(&[1])]).is_err());
    }

    #[test]
    fn json_round_trip() {
        let a = grp(&[2, 3]);
        let ring = CharRing::whole(&a);
        let x = GroupAlgebraElem::from_terms(
            &ring,
            &[(Character(vec![1, 2]), frac(-2, 7)), (Character(vec![0, 0]), q(1))],
        )
        .unwrap();
        let v = x.to_json();
        assert_eq!(v["coeffs"]["1,2"], "-2/7");
        assert_eq!(GroupAlgebraElem::from_json(&ring, &v).unwrap(), x);
        let parsed: FinAbGroup = serde_json::from_str(r#"{"cyclic_factors":[4]}"#).unwrap();
        assert_eq!(parsed, grp(&[4]));
        assert!(serde_json::from_str::<FinAbGroup>(r#"{"cyclic_factors":[0]}"#).is_err());
    }
}
