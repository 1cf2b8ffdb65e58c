//! Cyclotomic inertia of `[X/G]`, the twisted and tautological K-theory of
//! the inertia, and the Lefschetz-Riemann-Roch isomorphism
//! `L: K(X, G) -> (sum_r K_geom(I_r X) (x) Q(zeta_r))^Aut`.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::abelian::{CharRing, DualCyclicSubgroup, GroupAlgebraElem, GroupElement};
use crate::cyclotomic::{embed_i, CycFieldElem, CycModN};
use crate::equivariant::{pushforward, EquivariantMap, GSet, KClass, KTheory};
use crate::error::{Error, Result};
use crate::linalg::{sparse_column_rank, Matrix};
use crate::numtheory::{euler_phi, units};
use crate::rational::{self, Rational};

/// The fixed locus `X^h` of an element `h` of order `r`, recorded by the
/// `X`-orbits it contains (orbits of `X^h` are orbits of `X`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InertiaComponent {
    pub h: GroupElement,
    pub order: u64,
    pub orbits: Vec<usize>,
}

/// `I X = sum over h of [X^h / G]`, nonempty components only, in the
/// lexicographic order of `h`.
#[derive(Clone, Debug)]
pub struct CyclotomicInertia {
    k: KTheory,
    components: Vec<InertiaComponent>,
    index: HashMap<GroupElement, usize>,
}

impl CyclotomicInertia {
    pub fn new(x: &GSet) -> Self {
        let k = KTheory::new(x);
        let group = x.group().clone();
        let mut components = Vec::new();
        for h in group.elements() {
            let orbits: Vec<usize> = k
                .orbits()
                .iter()
                .enumerate()
                .filter(|(_, o)| o.stabilizer.contains(&h))
                .map(|(i, _)| i)
                .collect();
            if !orbits.is_empty() {
                components.push(InertiaComponent { order: group.order_of(&h), h, orbits });
            }
        }
        let index = components.iter().enumerate().map(|(i, c)| (c.h.clone(), i)).collect();
        CyclotomicInertia { k, components, index }
    }

    pub fn k_theory(&self) -> &KTheory {
        &self.k
    }

    pub fn components(&self) -> &[InertiaComponent] {
        &self.components
    }

    pub fn component_of(&self, h: &GroupElement) -> Option<usize> {
        self.index.get(h).copied()
    }

    /// Component indices grouped by order.
    pub fn by_order(&self) -> BTreeMap<u64, Vec<usize>> {
        let mut out: BTreeMap<u64, Vec<usize>> = BTreeMap::new();
        for (i, c) in self.components.iter().enumerate() {
            out.entry(c.order).or_default().push(i);
        }
        out
    }

    /// `u in Aut(mu_r)` moves the component of `h` to that of `h^u`.
    pub fn aut_image(&self, c: usize, u: u64) -> usize {
        let comp = &self.components[c];
        self.index[&self.k.group().mul(u, &comp.h)]
    }

    /// One component per `Aut`-orbit: those whose `h` is the least generator
    /// of `<h>`.
    pub fn representatives(&self) -> Vec<usize> {
        let group = self.k.group();
        (0..self.components.len())
            .filter(|&c| {
                let h = &self.components[c].h;
                &DualCyclicSubgroup::generated_by(group, h).generator == h
            })
            .collect()
    }

    /// `X^h` with the full `G`-action.
    pub fn fixed_set(&self, c: usize) -> GSet {
        self.k.set().fixed_locus(&self.components[c].h).expect("h lies in G")
    }

    /// Number of orbits of the inertia, `sum_h #orbits(X^h)`.
    pub fn orbit_count(&self) -> usize {
        self.components.iter().map(|c| c.orbits.len()).sum()
    }

    /// Dimension of the `Aut`-invariant twisted classes,
    /// `sum over <h> of phi(r) #orbits(X^h)`.
    pub fn invariant_dim(&self) -> usize {
        self.representatives()
            .iter()
            .map(|&c| {
                let comp = &self.components[c];
                comp.orbits.len() * euler_phi(comp.order) as usize
            })
            .sum()
    }

    fn sigma(&self, c: usize) -> DualCyclicSubgroup {
        DualCyclicSubgroup::generated_by(self.k.group(), &self.components[c].h)
    }

    fn ring(&self, c: usize, j: usize) -> &Arc<CharRing> {
        &self.k.rings()[self.components[c].orbits[j]]
    }
}

pub fn cyclotomic_inertia(x: &GSet) -> CyclotomicInertia {
    CyclotomicInertia::new(x)
}

/// The zero-dimensional model's conormal datum: `N = 0`, `lambda_{-1}(N) = 1`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ConormalDatum;

impl ConormalDatum {
    pub fn lambda_minus_one(&self) -> Rational {
        Rational::one()
    }
}

// ---------------------------------------------------------------------------
// Classes on the inertia
// ---------------------------------------------------------------------------

/// Per component of order `r`, a vector over the orbits of `X^h` with
/// entries in `Q(zeta_r)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistedClass {
    pub components: Vec<Vec<CycFieldElem>>,
}

/// Per component, a class in `K(X^h, G)`: one group-algebra element per
/// orbit of `X^h`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InertiaClass {
    pub components: Vec<Vec<GroupAlgebraElem>>,
}

/// An `InertiaClass` each of whose entries lies in the `e_<h>` factor.
pub type TautClass = InertiaClass;

/// Per orbit of `X^h`, an element of `R(S) (x) R(mu_r)`: a `Q[s]/(s^r - 1)`
/// coefficient for each character of the stabilizer `S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitEntry {
    pub ring: Arc<CharRing>,
    pub coeffs: Vec<CycModN>,
}

impl TwistedClass {
    pub fn zero(inertia: &CyclotomicInertia) -> Self {
        TwistedClass {
            components: inertia
                .components
                .iter()
                .map(|c| vec![CycFieldElem::zero(c.order); c.orbits.len()])
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().flatten().all(|x| x.is_zero())
    }

    pub fn check(&self, inertia: &CyclotomicInertia) -> Result<()> {
        let ok = self.components.len() == inertia.components.len()
            && self.components.iter().zip(&inertia.components).all(|(w, c)| {
                w.len() == c.orbits.len() && w.iter().all(|x| x.conductor() == c.order)
            });
        if ok {
            Ok(())
        } else {
            Err(Error::BadClass("twisted class does not match the inertia".into()))
        }
    }

    /// `{"components": [{"h": [...], "entries": {"orbit-id": {"d", "coeffs"}}}]}`
    pub fn to_json(&self, inertia: &CyclotomicInertia) -> serde_json::Value {
        let orbits = inertia.k.orbits();
        let comps: Vec<_> = inertia
            .components
            .iter()
            .zip(&self.components)
            .map(|(c, w)| {
                let entries: serde_json::Map<_, _> = c
                    .orbits
                    .iter()
                    .zip(w)
                    .map(|(&o, x)| (orbits[o].id().to_string(), serde_json::to_value(x).unwrap()))
                    .collect();
                serde_json::json!({ "h": c.h, "entries": entries })
            })
            .collect();
        serde_json::json!({ "components": comps })
    }

    /// Missing components and entries are zero.
    pub fn from_json(inertia: &CyclotomicInertia, value: &serde_json::Value) -> Result<Self> {
        #[derive(Deserialize)]
        struct RawComponent {
            h: GroupElement,
            #[serde(default)]
            entries: BTreeMap<String, CycFieldElem>,
        }
        #[derive(Deserialize)]
        struct Raw {
            components: Vec<RawComponent>,
        }
        let raw: Raw = serde_json::from_value(value.clone())
            .map_err(|e| Error::BadClass(format!("twisted class: {e}")))?;
        let mut out = TwistedClass::zero(inertia);
        let orbits = inertia.k.orbits();
        for rc in raw.components {
            let c = inertia
                .component_of(&rc.h)
                .ok_or_else(|| Error::BadClass(format!("no inertia component at h = {:?}", rc.h.0)))?;
            let comp = &inertia.components[c];
            for (key, x) in rc.entries {
                let j = comp
                    .orbits
                    .iter()
                    .position(|&o| orbits[o].id().to_string() == key)
                    .ok_or_else(|| Error::BadClass(format!("{key:?} is not an orbit of X^h")))?;
                if x.conductor() != comp.order {
                    return Err(Error::ConductorMismatch { left: x.conductor(), right: comp.order });
                }
                out.components[c][j] = x;
            }
        }
        Ok(out)
    }
}

impl InertiaClass {
    pub fn zero(inertia: &CyclotomicInertia) -> Self {
        InertiaClass {
            components: (0..inertia.components.len())
                .map(|c| {
                    (0..inertia.components[c].orbits.len())
                        .map(|j| GroupAlgebraElem::zero(inertia.ring(c, j)))
                        .collect()
                })
                .collect(),
        }
    }

    /// Restricts a class on `X` to every fixed locus.
    pub fn restrict(inertia: &CyclotomicInertia, a: &KClass) -> Result<Self> {
        inertia.k.check(a)?;
        Ok(InertiaClass {
            components: inertia
                .components
                .iter()
                .map(|c| c.orbits.iter().map(|&o| a.entries[o].clone()).collect())
                .collect(),
        })
    }

    pub fn to_vector(&self) -> Vec<Rational> {
        self.components.iter().flatten().flat_map(|e| e.coeffs().iter().cloned()).collect()
    }
}

// ---------------------------------------------------------------------------
// Aut(mu) actions
// ---------------------------------------------------------------------------

/// `u . w`: transport `h -> h^u` together with `zeta -> zeta^u`.
pub fn aut_act_twisted(w: &TwistedClass, c: usize, u: u64) -> Vec<CycFieldElem> {
    w.components[c].iter().map(|x| x.galois(u).expect("u is a unit")).collect()
}

/// Invariance `w(h^u) = gamma_u(w(h))` for every component and unit.
pub fn is_aut_invariant(inertia: &CyclotomicInertia, w: &TwistedClass) -> Result<bool> {
    w.check(inertia)?;
    for (c, comp) in inertia.components.iter().enumerate() {
        for u in units(comp.order) {
            if w.components[inertia.aut_image(c, u)] != aut_act_twisted(w, c, u) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The averaging projection onto `Aut`-invariant twisted classes.
pub fn aut_average(inertia: &CyclotomicInertia, w: &TwistedClass) -> Result<TwistedClass> {
    w.check(inertia)?;
    let mut out = TwistedClass::zero(inertia);
    for (c, comp) in inertia.components.iter().enumerate() {
        let scale = Rational::new(1.into(), euler_phi(comp.order).into());
        for u in units(comp.order) {
            let target = inertia.aut_image(c, u);
            for (acc, x) in out.components[target].iter_mut().zip(aut_act_twisted(w, c, u)) {
                *acc = &*acc + &x.scale(&scale);
            }
        }
    }
    Ok(out)
}

/// Invariance `t(h^u) = t(h)` for classes in `K(I X)`.
pub fn is_aut_invariant_inertia(inertia: &CyclotomicInertia, t: &InertiaClass) -> bool {
    inertia.components.iter().enumerate().all(|(c, comp)| {
        units(comp.order).into_iter().all(|u| t.components[inertia.aut_image(c, u)] == t.components[c])
    })
}

pub fn aut_average_inertia(inertia: &CyclotomicInertia, t: &InertiaClass) -> Result<InertiaClass> {
    let mut out = InertiaClass::zero(inertia);
    for (c, comp) in inertia.components.iter().enumerate() {
        let scale = Rational::new(1.into(), euler_phi(comp.order).into());
        for u in units(comp.order) {
            let target = inertia.aut_image(c, u);
            for (acc, x) in out.components[target].iter_mut().zip(&t.components[c]) {
                if x.is_zero() {
                    continue;
                }
                *acc = acc.add(&x.scale(&scale))?;
            }
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Coordinates
// ---------------------------------------------------------------------------

/// Flattens all entries in the power bases.
pub fn twisted_to_vector(w: &TwistedClass) -> Vec<Rational> {
    w.components.iter().flatten().flat_map(|x| x.coeffs().iter().cloned()).collect()
}

pub fn twisted_dim(inertia: &CyclotomicInertia) -> usize {
    inertia
        .components
        .iter()
        .map(|c| c.orbits.len() * euler_phi(c.order) as usize)
        .sum()
}

pub fn twisted_from_vector(inertia: &CyclotomicInertia, v: &[Rational]) -> Result<TwistedClass> {
    if v.len() != twisted_dim(inertia) {
        return Err(Error::Length { expected: twisted_dim(inertia), got: v.len() });
    }
    let mut offset = 0;
    let mut components = Vec::with_capacity(inertia.components.len());
    for comp in &inertia.components {
        let phi = euler_phi(comp.order) as usize;
        let mut entries = Vec::with_capacity(comp.orbits.len());
        for _ in &comp.orbits {
            entries.push(CycFieldElem::new(comp.order, v[offset..offset + phi].to_vec())?);
            offset += phi;
        }
        components.push(entries);
    }
    Ok(TwistedClass { components })
}

/// Coordinates of an invariant twisted class: the entries on the
/// representative components.
pub fn invariant_coordinates(inertia: &CyclotomicInertia, w: &TwistedClass) -> Vec<Rational> {
    inertia
        .representatives()
        .into_iter()
        .flat_map(|c| w.components[c].iter().flat_map(|x| x.coeffs().iter().cloned()))
        .collect()
}

/// The invariant twisted class with the given representative entries.
pub fn from_invariant_coordinates(inertia: &CyclotomicInertia, v: &[Rational]) -> Result<TwistedClass> {
    if v.len() != inertia.invariant_dim() {
        return Err(Error::Length { expected: inertia.invariant_dim(), got: v.len() });
    }
    let mut out = TwistedClass::zero(inertia);
    let mut offset = 0;
    for c in inertia.representatives() {
        let comp = &inertia.components[c];
        let phi = euler_phi(comp.order) as usize;
        let mut entries = Vec::with_capacity(comp.orbits.len());
        for _ in &comp.orbits {
            entries.push(CycFieldElem::new(comp.order, v[offset..offset + phi].to_vec())?);
            offset += phi;
        }
        for u in units(comp.order) {
            out.components[inertia.aut_image(c, u)] =
                entries.iter().map(|x| x.galois(u)).collect::<Result<_>>()?;
        }
    }
    Ok(out)
}

/// Representative components of order `r` and the range of invariant
/// coordinates they occupy.
fn invariant_block(inertia: &CyclotomicInertia, r: u64) -> Vec<usize> {
    let mut offset = 0;
    let mut out = Vec::new();
    for c in inertia.representatives() {
        let comp = &inertia.components[c];
        let width = comp.orbits.len() * euler_phi(comp.order) as usize;
        if comp.order == r {
            out.extend(offset..offset + width);
        }
        offset += width;
    }
    out
}

// ---------------------------------------------------------------------------
// The maps
// ---------------------------------------------------------------------------

/// Componentwise localization at `sigma = <h>`.
pub fn taut_project(inertia: &CyclotomicInertia, t: &InertiaClass) -> Result<TautClass> {
    let mut out = InertiaClass::zero(inertia);
    for c in 0..inertia.components.len() {
        let e = |j| crate::abelian::idempotent(inertia.ring(c, j), &inertia.sigma(c));
        for (j, x) in t.components[c].iter().enumerate() {
            if !x.is_zero() {
                out.components[c][j] = x.mul(&e(j)?)?;
            }
        }
    }
    Ok(out)
}

/// Pushes each component along `X^h -> X` and sums.
pub fn rho_star(inertia: &CyclotomicInertia, t: &InertiaClass) -> Result<KClass> {
    let k = &inertia.k;
    let mut out = k.zero();
    for (comp, entries) in inertia.components.iter().zip(&t.components) {
        for (&o, x) in comp.orbits.iter().zip(entries) {
            out.entries[o] = out.entries[o].add(x)?;
        }
    }
    Ok(out)
}

/// `q (x) x -> q e_1 (x) i_r(x)` on each orbit entry.
pub fn splitting_embed(inertia: &CyclotomicInertia, w: &TwistedClass) -> Result<Vec<Vec<SplitEntry>>> {
    w.check(inertia)?;
    let mut out = Vec::with_capacity(w.components.len());
    for (c, (comp, entries)) in inertia.components.iter().zip(&w.components).enumerate() {
        let mut split = Vec::with_capacity(entries.len());
        for (j, x) in entries.iter().enumerate() {
            let ring = inertia.ring(c, j).clone();
            let y = if x.is_zero() {
                CycModN::zero(comp.order)
            } else {
                embed_i(comp.order, x)?.scale(&Rational::new(1.into(), (ring.dim() as u64).into()))
            };
            split.push(SplitEntry { coeffs: vec![y; ring.dim()], ring });
        }
        out.push(split);
    }
    Ok(out)
}

/// The twist push `alpha_*` along `S x <h> -> S`:
/// `chi (x) s^j -> chi` when `chi(h) = zeta_r^j`, and `0` otherwise.
pub fn alpha_push_entry(h: &GroupElement, entry: &SplitEntry) -> Result<GroupAlgebraElem> {
    let group = entry.ring.group();
    let coeffs = entry
        .ring
        .characters()
        .iter()
        .zip(&entry.coeffs)
        .map(|(chi, p)| p.coeff(group.character_exponent(chi, h) as usize).clone())
        .collect();
    GroupAlgebraElem::new(&entry.ring, coeffs)
}

/// `beta = alpha_* . splitting_embed`, landing in the tautological part.
pub fn beta(inertia: &CyclotomicInertia, w: &TwistedClass) -> Result<TautClass> {
    let split = splitting_embed(inertia, w)?;
    let components = inertia
        .components
        .iter()
        .zip(&split)
        .map(|(comp, entries)| entries.iter().map(|e| alpha_push_entry(&comp.h, e)).collect())
        .collect::<Result<_>>()?;
    Ok(InertiaClass { components })
}

/// `L^{-1} = rho_* . beta`.
pub fn lrr_inverse(inertia: &CyclotomicInertia, w: &TwistedClass) -> Result<KClass> {
    rho_star(inertia, &beta(inertia, w)?)
}

/// `p^*`: evaluation of each orbit entry at `h`, with `lambda_{-1}(N) = 1`.
pub fn p_upper_star(inertia: &CyclotomicInertia, a: &KClass) -> Result<TwistedClass> {
    inertia.k.check(a)?;
    let lambda_inv = ConormalDatum.lambda_minus_one().recip();
    let components = inertia
        .components
        .iter()
        .map(|comp| {
            comp.orbits
                .iter()
                .map(|&o| a.entries[o].evaluate(&comp.h).map(|x| x.scale(&lambda_inv)))
                .collect()
        })
        .collect::<Result<_>>()?;
    Ok(TwistedClass { components })
}

/// `L = sum_r p^* . (r / phi(r))` on the order-`r` components.
pub fn lrr_forward(inertia: &CyclotomicInertia, a: &KClass) -> Result<TwistedClass> {
    let mut w = p_upper_star(inertia, a)?;
    for (comp, entries) in inertia.components.iter().zip(&mut w.components) {
        let factor = Rational::new(comp.order.into(), euler_phi(comp.order).into());
        for x in entries {
            *x = x.scale(&factor);
        }
    }
    Ok(w)
}

/// Matrix of `L^{-1}` from invariant coordinates to `K(X, G)` coordinates.
pub fn lrr_inverse_matrix(inertia: &CyclotomicInertia) -> Result<Matrix> {
    let n = inertia.invariant_dim();
    let columns = (0..n)
        .map(|k| {
            let mut v = vec![Rational::zero(); n];
            v[k] = Rational::one();
            let w = from_invariant_coordinates(inertia, &v)?;
            Ok(inertia.k.to_vector(&lrr_inverse(inertia, &w)?))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_columns(inertia.k.dim(), &columns))
}

/// Matrix of `L` from `K(X, G)` coordinates to invariant coordinates.
pub fn lrr_forward_matrix(inertia: &CyclotomicInertia) -> Result<Matrix> {
    let k = &inertia.k;
    let columns = (0..k.dim())
        .map(|i| lrr_forward(inertia, &k.basis_class(i)).map(|w| invariant_coordinates(inertia, &w)))
        .collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_columns(inertia.invariant_dim(), &columns))
}

/// `L` computed by exact inversion of the matrix of `L^{-1}`.
pub fn lrr_forward_by_inversion(inertia: &CyclotomicInertia, a: &KClass) -> Result<TwistedClass> {
    let inv = lrr_inverse_matrix(inertia)?.inverse()?;
    let v = inv.mul_vec(&inertia.k.to_vector(a))?;
    from_invariant_coordinates(inertia, &v)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CompReport {
    pub order: u64,
    #[serde(with = "rational::serde_str")]
    pub expected_scalar: Rational,
    pub pass: bool,
}

/// Checks `p^* p_* = phi(r)/r` on the invariant classes supported on the
/// order-`r` components, for every `r` occurring in the inertia.
pub fn comp_check(inertia: &CyclotomicInertia) -> Result<Vec<CompReport>> {
    let n = inertia.invariant_dim();
    let mut reports = Vec::new();
    for &r in inertia.by_order().keys() {
        let block = invariant_block(inertia, r);
        let scalar = Rational::new(euler_phi(r).into(), r.into());
        let mut pass = true;
        for &k in &block {
            let mut v = vec![Rational::zero(); n];
            v[k] = Rational::one();
            let w = from_invariant_coordinates(inertia, &v)?;
            let back = invariant_coordinates(
                inertia,
                &p_upper_star(inertia, &lrr_inverse(inertia, &w)?)?,
            );
            for &i in &block {
                let expected = if i == k { scalar.clone() } else { Rational::zero() };
                pass &= back[i] == expected;
            }
        }
        reports.push(CompReport { order: r, expected_scalar: scalar, pass });
    }
    Ok(reports)
}

/// `x (x) zeta_r^i -> (phi(r)/r) x zeta_r^i` in `Q(zeta_N)`.
pub fn toen_map(inertia: &CyclotomicInertia, w: &TwistedClass, n: u64) -> Result<Vec<Vec<CycFieldElem>>> {
    w.check(inertia)?;
    inertia
        .components
        .iter()
        .zip(&w.components)
        .map(|(comp, entries)| {
            if n % comp.order != 0 {
                return Err(Error::NotADivisor { value: comp.order, modulus: n });
            }
            let factor = Rational::new(euler_phi(comp.order).into(), comp.order.into());
            entries.iter().map(|x| x.scale(&factor).lift(n)).collect()
        })
        .collect()
}

/// `I f_*` on twisted classes for a same-group map: the component of `h`
/// maps to the component of `h`, and a geometric class on an orbit with
/// stabilizer `S'` pushes to `[S : S']` times the class on the image orbit.
pub fn push_inertia(
    f: &EquivariantMap,
    src: &CyclotomicInertia,
    tgt: &CyclotomicInertia,
    w: &TwistedClass,
) -> Result<TwistedClass> {
    w.check(src)?;
    let (ks, kt) = (&src.k, &tgt.k);
    let orbit_map = f.orbit_map(ks, kt);
    let mut out = TwistedClass::zero(tgt);
    for (comp, entries) in src.components.iter().zip(&w.components) {
        let c = tgt
            .component_of(&comp.h)
            .ok_or_else(|| Error::NotEquivariant("fixed point maps outside the fixed locus".into()))?;
        let tcomp = &tgt.components[c];
        for (&o, x) in comp.orbits.iter().zip(entries) {
            let o2 = orbit_map[o];
            let j = tcomp.orbits.iter().position(|&p| p == o2).expect("image is h-fixed");
            let index = kt.orbits()[o2].stabilizer.order() / ks.orbits()[o].stabilizer.order();
            out.components[c][j] = &out.components[c][j] + &x.scale(&rational::q(index as i64));
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CovarianceReport {
    pub lrr: bool,
    pub toen: bool,
}

impl CovarianceReport {
    pub fn pass(&self) -> bool {
        self.lrr && self.toen
    }
}

/// Checks `L f_* = I f_* L` and `(t L) f_* = I f_* (t L)` on a basis of
/// `K` of the source.
pub fn covariance_check(f: &EquivariantMap) -> Result<CovarianceReport> {
    let src = CyclotomicInertia::new(f.source());
    let tgt = CyclotomicInertia::new(f.target());
    let n = f.source().group().exponent();
    let mut report = CovarianceReport { lrr: true, toen: true };
    for i in 0..src.k.dim() {
        let a = src.k.basis_class(i);
        let pushed = pushforward(f, &src.k, &tgt.k, &a)?;
        let lhs = lrr_forward(&tgt, &pushed)?;
        let rhs = push_inertia(f, &src, &tgt, &lrr_forward(&src, &a)?)?;
        report.lrr &= lhs == rhs;
        let lhs_t = toen_map(&tgt, &lhs, n)?;
        let t_src = toen_map(&src, &lrr_forward(&src, &a)?, n)?;
        let rhs_t = push_toen(f, &src, &tgt, &t_src)?;
        report.toen &= lhs_t == rhs_t;
    }
    Ok(report)
}

/// `I f_*` on `Q(zeta_N)`-valued families, by the same rule as
/// `push_inertia`.
fn push_toen(
    f: &EquivariantMap,
    src: &CyclotomicInertia,
    tgt: &CyclotomicInertia,
    t: &[Vec<CycFieldElem>],
) -> Result<Vec<Vec<CycFieldElem>>> {
    let n = f.source().group().exponent();
    let orbit_map = f.orbit_map(&src.k, &tgt.k);
    let mut out: Vec<Vec<CycFieldElem>> =
        tgt.components.iter().map(|c| vec![CycFieldElem::zero(n); c.orbits.len()]).collect();
    for (comp, entries) in src.components.iter().zip(t) {
        let c = tgt.component_of(&comp.h).ok_or(Error::NotEquivariant("fixed locus".into()))?;
        for (&o, x) in comp.orbits.iter().zip(entries) {
            let o2 = orbit_map[o];
            let j = tgt.components[c].orbits.iter().position(|&p| p == o2).expect("h-fixed");
            let index = tgt.k.orbits()[o2].stabilizer.order() / src.k.orbits()[o].stabilizer.order();
            out[c][j] = &out[c][j] + &x.scale(&rational::q(index as i64));
        }
    }
    Ok(out)
}

/// Rank of `beta` on all twisted classes, and whether every image is
/// tautological. `beta` is injective onto the tautological part when the
/// rank equals both the twisted dimension and `sum phi(r) #orbits`.
pub fn beta_rank_check(inertia: &CyclotomicInertia) -> Result<bool> {
    let n = twisted_dim(inertia);
    let mut columns = Vec::with_capacity(n);
    for k in 0..n {
        let mut v = vec![Rational::zero(); n];
        v[k] = Rational::one();
        let t = beta(inertia, &twisted_from_vector(inertia, &v)?)?;
        if taut_project(inertia, &t)? != t {
            return Ok(false);
        }
        columns.push(t.to_vector());
    }
    let taut_dim = twisted_dim(inertia);
    Ok(sparse_column_rank(&columns) == taut_dim)
}

/// `rho_*` restricted to `Aut`-invariant tautological classes of order `r`
/// is a bijection onto the `r`-local part `sum_{|sigma| = r} K(X)_sigma`.
pub fn rho_star_iso_check(inertia: &CyclotomicInertia, r: u64) -> Result<bool> {
    let k = &inertia.k;
    let group = k.group();
    // spanning set of the invariant tautological classes of order r
    let mut span = Vec::new();
    for c in inertia.representatives() {
        let comp = &inertia.components[c];
        if comp.order != r {
            continue;
        }
        for j in 0..comp.orbits.len() {
            for i in 0..inertia.ring(c, j).dim() {
                let mut t = InertiaClass::zero(inertia);
                t.components[c][j] = GroupAlgebraElem::basis(inertia.ring(c, j), i);
                let t = aut_average_inertia(inertia, &taut_project(inertia, &t)?)?;
                span.push(t);
            }
        }
    }
    let domain_rank = sparse_column_rank(&span.iter().map(|t| t.to_vector()).collect::<Vec<_>>());
    let sigmas: Vec<_> = group.dual_cyclic_subgroups().into_iter().filter(|s| s.order == r).collect();
    let mut local_unit = k.zero();
    for s in &sigmas {
        local_unit = k.add(&local_unit, &k.localize(&k.one(), s)?)?;
    }
    let mut images = Vec::with_capacity(span.len());
    for t in &span {
        let a = rho_star(inertia, t)?;
        if k.mul(&a, &local_unit)? != a {
            return Ok(false);
        }
        images.push(k.to_vector(&a));
    }
    let image_rank = sparse_column_rank(&images);
    let local_dim: usize = sigmas
        .iter()
        .map(|s| {
            k.orbits().iter().filter(|o| o.stabilizer.contains_cyclic(s)).count() * euler_phi(r) as usize
        })
        .sum();
    Ok(domain_rank == local_dim && image_rank == local_dim)
}

/// `sum over cyclic sigma of phi(|sigma|) #orbits(X^sigma)`, counted from the
/// fixed loci directly.
pub fn vv_dimension(x: &GSet) -> usize {
    x.group()
        .dual_cyclic_subgroups()
        .iter()
        .map(|s| {
            let fixed = x.fixed_locus(&s.generator).expect("generator in G");
            euler_phi(s.order) as usize * fixed.orbits().len()
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::{Character, FinAbGroup};
    use crate::rational::{frac, q};

    fn b_mu(n: u64) -> GSet {
        GSet::trivial(&FinAbGroup::cyclic(n), 1)
    }

    fn fe(d: u64, cs: &[Rational]) -> CycFieldElem {
        CycFieldElem::new(d, cs.to_vec()).unwrap()
    }

    fn twisted(entries: Vec<Vec<CycFieldElem>>) -> TwistedClass {
        TwistedClass { components: entries }
    }

    #[test]
    fn inertia_examples() {
        let i = cyclotomic_inertia(&b_mu(2));
        assert_eq!(i.components().len(), 2);
        let free = GSet::new(FinAbGroup::cyclic(2), 2, vec![vec![1, 0]]).unwrap();
        let i = cyclotomic_inertia(&free);
        assert_eq!(i.components().len(), 1);
        assert_eq!(i.components()[0].order, 1);
        let i = cyclotomic_inertia(&b_mu(3));
        assert_eq!(i.components().len(), 3);
        assert_eq!(i.representatives().len(), 2);
        assert_eq!(i.fixed_set(2).points(), 1);
    }

    #[test]
    fn aut_invariance_on_b_mu3() {
        let i = cyclotomic_inertia(&b_mu(3));
        let x = fe(3, &[q(2), q(5)]);
        let w = twisted(vec![vec![fe(1, &[q(1)])], vec![x.clone()], vec![x.galois(2).unwrap()]]);
        assert!(is_aut_invariant(&i, &w).unwrap());
        assert_eq!(aut_average(&i, &w).unwrap(), w);
        let bad = twisted(vec![vec![fe(1, &[q(1)])], vec![x.clone()], vec![x]]);
        assert!(!is_aut_invariant(&i, &bad).unwrap());
        assert!(is_aut_invariant(&i, &aut_average(&i, &bad).unwrap()).unwrap());
    }

    #[test]
    fn splitting_and_beta_on_b_mu2() {
        let i = cyclotomic_inertia(&b_mu(2));
        let w = twisted(vec![vec![fe(1, &[q(0)])], vec![fe(2, &[q(1)])]]);
        let split = splitting_embed(&i, &w).unwrap();
        // (1 + chi)/2 (x) (1 - s)/2
        let half_minus = CycModN::new(2, vec![frac(1, 4), frac(-1, 4)]).unwrap();
        assert_eq!(split[1][0].coeffs, vec![half_minus.clone(), half_minus]);
        let b = beta(&i, &w).unwrap();
        assert_eq!(b.components[1][0].coeffs(), &[frac(1, 4), frac(-1, 4)]);
        assert!(b.components[0][0].is_zero());

        let w1 = twisted(vec![vec![fe(1, &[q(1)])], vec![fe(2, &[q(0)])]]);
        let b = beta(&i, &w1).unwrap();
        assert_eq!(b.components[0][0].coeffs(), &[frac(1, 2), frac(1, 2)]);
        assert_eq!(beta(&i, &TwistedClass::zero(&i)).unwrap(), InertiaClass::zero(&i));
    }

    #[test]
    fn lrr_on_b_mu2() {
        let i = cyclotomic_inertia(&b_mu(2));
        let k = i.k_theory();
        // f = x + y chi -> (x + y, 2(x - y))
        let (x, y) = (q(3), frac(-1, 2));
        let f = k.from_vector(&[x.clone(), y.clone()]).unwrap();
        let w = lrr_forward(&i, &f).unwrap();
        assert_eq!(w.components[0][0].as_rational(), Some(&x + &y));
        assert_eq!(w.components[1][0].as_rational(), Some(q(2) * (&x - &y)));
        assert_eq!(lrr_forward_by_inversion(&i, &f).unwrap(), w);
        assert_eq!(lrr_inverse(&i, &w).unwrap(), f);

        // (a, b) -> a(1 + chi)/2 + b(1 - chi)/4
        let (a, b) = (q(2), q(8));
        let w = twisted(vec![vec![fe(1, &[a.clone()])], vec![fe(2, &[b.clone()])]]);
        let back = lrr_inverse(&i, &w).unwrap();
        assert_eq!(k.to_vector(&back), vec![&a / q(2) + &b / q(4), &a / q(2) - &b / q(4)]);

        let geo = k.geometric_part(&k.one()).unwrap();
        let w = lrr_forward(&i, &geo).unwrap();
        assert_eq!(w.components[0][0], fe(1, &[q(1)]));
        assert!(w.components[1][0].is_zero());
        assert!(lrr_forward(&i, &k.zero()).unwrap().is_zero());
    }

    #[test]
    fn comp_scalars() {
        let reports = comp_check(&cyclotomic_inertia(&b_mu(2))).unwrap();
        assert_eq!(reports[1].expected_scalar, frac(1, 2));
        assert!(reports.iter().all(|r| r.pass));
        let reports = comp_check(&cyclotomic_inertia(&b_mu(3))).unwrap();
        assert_eq!(reports.iter().map(|r| r.expected_scalar.clone()).collect::<Vec<_>>(), vec![q(1), frac(2, 3)]);
        assert!(reports.iter().all(|r| r.pass));
    }

    #[test]
    fn taut_projection_examples() {
        let i = cyclotomic_inertia(&b_mu(2));
        let k = i.k_theory();
        let chi = GroupAlgebraElem::character(&k.rings()[0], &Character(vec![1])).unwrap();
        let mut t = InertiaClass::zero(&i);
        t.components[0][0] = GroupAlgebraElem::one(&k.rings()[0]);
        t.components[1][0] = GroupAlgebraElem::one(&k.rings()[0]).add(&chi).unwrap();
        let p = taut_project(&i, &t).unwrap();
        // r = 1: geometric part; r = 2: 1 + chi is supported at the trivial subgroup
        assert_eq!(p.components[0][0].coeffs(), &[frac(1, 2), frac(1, 2)]);
        assert!(p.components[1][0].is_zero());
        assert_eq!(taut_project(&i, &p).unwrap(), p);
    }

    #[test]
    fn rho_star_examples() {
        let i = cyclotomic_inertia(&b_mu(2));
        let k = i.k_theory();
        let sigma = i.sigma(1);
        let e = crate::abelian::idempotent(&k.rings()[0], &sigma).unwrap();
        let mut t = InertiaClass::zero(&i);
        t.components[1][0] = e.clone();
        assert_eq!(rho_star(&i, &t).unwrap().entries[0], e);
        assert!(rho_star_iso_check(&i, 1).unwrap());
        assert!(rho_star_iso_check(&i, 2).unwrap());
        assert!(beta_rank_check(&i).unwrap());
    }

    #[test]
    fn toen_scaling() {
        let i = cyclotomic_inertia(&b_mu(2));
        let w = twisted(vec![vec![fe(1, &[q(3)])], vec![fe(2, &[q(5)])]]);
        let t = toen_map(&i, &w, 2).unwrap();
        assert_eq!(t[0][0].as_rational(), Some(q(3)));
        assert_eq!(t[1][0].as_rational(), Some(frac(5, 2)));
        assert!(toen_map(&i, &w, 3).is_err());
    }

    #[test]
    fn covariance_worked_example() {
        let g = FinAbGroup::cyclic(2);
        let free = GSet::new(g.clone(), 2, vec![vec![1, 0]]).unwrap();
        let f = EquivariantMap::new(free, b_mu(2), vec![0, 0]).unwrap();
        let (src, tgt) = (cyclotomic_inertia(f.source()), cyclotomic_inertia(f.target()));
        let one = src.k_theory().one();
        let pushed = pushforward(&f, src.k_theory(), tgt.k_theory(), &one).unwrap();
        let lhs = lrr_forward(&tgt, &pushed).unwrap();
        let rhs = push_inertia(&f, &src, &tgt, &lrr_forward(&src, &one).unwrap()).unwrap();
        let expected = twisted(vec![vec![fe(1, &[q(2)])], vec![fe(2, &[q(0)])]]);
        assert_eq!(lhs, expected);
        assert_eq!(rhs, expected);
        assert!(covariance_check(&f).unwrap().pass());
        assert!(covariance_check(&EquivariantMap::identity(&b_mu(6))).unwrap().pass());
    }

    #[test]
    fn vv_identity_small() {
        for x in [b_mu(2), b_mu(6), GSet::new(FinAbGroup::cyclic(4), 2, vec![vec![1, 0]]).unwrap()] {
            let i = cyclotomic_inertia(&x);
            assert_eq!(i.invariant_dim(), i.k_theory().dim());
            assert_eq!(vv_dimension(&x), i.k_theory().dim());
        }
    }

    #[test]
    fn twisted_json_round_trip() {
        let i = cyclotomic_inertia(&b_mu(3));
        let w = from_invariant_coordinates(&i, &[q(1), frac(1, 2), q(-3)]).unwrap();
        let back = TwistedClass::from_json(&i, &w.to_json(&i)).unwrap();
        assert_eq!(back, w);
    }
}
