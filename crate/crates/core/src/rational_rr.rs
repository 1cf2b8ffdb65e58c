//! Trace-compatible normal-basis families, the isomorphism
//! `phi: K_geom(I X) -> (K_geom(I X) (x) Q(zeta))^Aut`, and the rational
//! Riemann-Roch map `K(X, G) -> Q^{orbits of I X}`.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::cyclotomic::{trace, CycFieldElem};
use crate::equivariant::{EquivariantMap, KClass};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::lrr::{
    invariant_coordinates, lrr_forward, push_inertia, CyclotomicInertia,
    TwistedClass,
};
use crate::numtheory::{divisors, euler_phi, units};
use crate::rational::{self, Rational};

pub const DEFAULT_SEARCH_BOUND: usize = 256;

/// Elements `x_n` of `Q(zeta_n)` for every `n | N`, each generating a
/// normal basis, with `trace(x_n, m) = x_m` whenever `m | n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawFamily", into = "RawFamily")]
pub struct NormalBasisFamily {
    modulus: u64,
    x: BTreeMap<u64, CycFieldElem>,
}

#[derive(Serialize, Deserialize)]
struct RawFamily {
    #[serde(rename = "N")]
    modulus: u64,
    x: BTreeMap<String, Vec<String>>,
}

impl TryFrom<RawFamily> for NormalBasisFamily {
    type Error = Error;
    fn try_from(raw: RawFamily) -> Result<Self> {
        let mut x = BTreeMap::new();
        for (k, v) in raw.x {
            let n: u64 = k.parse().map_err(|_| Error::BadClass(format!("family key {k:?}")))?;
            let coeffs = v.iter().map(|s| rational::parse(s)).collect::<Result<_>>()?;
            x.insert(n, CycFieldElem::new(n, coeffs)?);
        }
        let fam = NormalBasisFamily { modulus: raw.modulus, x };
        fam.validate()?;
        Ok(fam)
    }
}

impl From<NormalBasisFamily> for RawFamily {
    fn from(f: NormalBasisFamily) -> Self {
        RawFamily {
            modulus: f.modulus,
            x: f
                .x
                .into_iter()
                .map(|(n, e)| (n.to_string(), e.coeffs().iter().map(rational::to_string).collect()))
                .collect(),
        }
    }
}

/// Whether the Galois conjugates of `x` form a basis of `Q(zeta_n)`.
pub fn is_normal_basis(x: &CycFieldElem) -> bool {
    let n = x.conductor();
    let columns: Vec<Vec<Rational>> =
        units(n).into_iter().map(|u| x.galois(u).expect("unit").coeffs().to_vec()).collect();
    let m = Matrix::from_columns(euler_phi(n) as usize, &columns);
    !m.determinant().expect("square").is_zero()
}

/// The `k`-th search candidate: `zeta_N` for `k = 0`, then
/// `1 + zeta_N + .. + zeta_N^k`.
pub fn candidate(n: u64, k: usize) -> CycFieldElem {
    if k == 0 {
        return CycFieldElem::zeta_pow(n, 1);
    }
    (0..=k as i64).fold(CycFieldElem::zero(n), |acc, i| &acc + &CycFieldElem::zeta_pow(n, i))
}

impl NormalBasisFamily {
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn get(&self, n: u64) -> Result<&CycFieldElem> {
        self.x.get(&n).ok_or(Error::NotADivisor { value: n, modulus: self.modulus })
    }

    pub fn elements(&self) -> &BTreeMap<u64, CycFieldElem> {
        &self.x
    }

    /// Checks presence, normality and trace compatibility for every divisor.
    pub fn validate(&self) -> Result<()> {
        let divs = divisors(self.modulus);
        if self.x.keys().copied().collect::<Vec<_>>() != divs {
            return Err(Error::BadClass("family must have exactly one element per divisor".into()));
        }
        for (&n, x) in &self.x {
            if !is_normal_basis(x) {
                return Err(Error::BadClass(format!("x_{n} does not generate a normal basis")));
            }
            for m in divisors(n) {
                if &trace(x, m)? != self.get(m)? {
                    return Err(Error::BadClass(format!("trace of x_{n} to level {m} is not x_{m}")));
                }
            }
        }
        Ok(())
    }
}

pub fn build_family(n: u64) -> Result<NormalBasisFamily> {
    build_family_bounded(n, DEFAULT_SEARCH_BOUND)
}

/// Deterministic search over `candidate(N, 0), candidate(N, 1), ..`: each
/// candidate is traced down to every divisor, scaled so that `x_1 = 1`, and
/// accepted when every `x_m` generates a normal basis.
pub fn build_family_bounded(n: u64, bound: usize) -> Result<NormalBasisFamily> {
    if n == 0 {
        return Err(Error::BadFactor(0));
    }
    for k in 0..bound {
        let top = candidate(n, k);
        let Some(x1) = trace(&top, 1)?.as_rational() else { continue };
        if x1.is_zero() {
            continue;
        }
        let top = top.scale(&x1.recip());
        let x: BTreeMap<u64, CycFieldElem> =
            divisors(n).into_iter().map(|m| Ok((m, trace(&top, m)?))).collect::<Result<_>>()?;
        if x.values().all(is_normal_basis) {
            return Ok(NormalBasisFamily { modulus: n, x });
        }
    }
    Err(Error::SearchExhausted { modulus: n, tried: bound })
}

/// Per component of the inertia, a rational coordinate for each orbit of
/// `X^h`: the class `sum q e_1` in `K_geom(X^h, G)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeometricFamily {
    pub components: Vec<Vec<Rational>>,
}

impl GeometricFamily {
    pub fn zero(inertia: &CyclotomicInertia) -> Self {
        GeometricFamily {
            components: inertia
                .components()
                .iter()
                .map(|c| vec![Rational::zero(); c.orbits.len()])
                .collect(),
        }
    }

    pub fn to_vector(&self) -> Vec<Rational> {
        self.components.iter().flatten().cloned().collect()
    }

    pub fn from_vector(inertia: &CyclotomicInertia, v: &[Rational]) -> Result<Self> {
        let n = inertia.orbit_count();
        if v.len() != n {
            return Err(Error::Length { expected: n, got: v.len() });
        }
        let mut it = v.iter().cloned();
        Ok(GeometricFamily {
            components: inertia
                .components()
                .iter()
                .map(|c| it.by_ref().take(c.orbits.len()).collect())
                .collect(),
        })
    }
}

fn check_family(inertia: &CyclotomicInertia, fam: &NormalBasisFamily) -> Result<()> {
    for c in inertia.components() {
        if fam.modulus % c.order != 0 {
            return Err(Error::NotADivisor { value: c.order, modulus: fam.modulus });
        }
    }
    Ok(())
}

/// `m -> (1/phi(r)) sum_u u(m) (x) gamma_u(r x_r)`, where `u` transports the
/// component of `h` to that of `h^u`.
pub fn phi_map(inertia: &CyclotomicInertia, m: &GeometricFamily, fam: &NormalBasisFamily) -> Result<TwistedClass> {
    check_family(inertia, fam)?;
    let mut out = TwistedClass::zero(inertia);
    for (c, comp) in inertia.components().iter().enumerate() {
        let r = comp.order;
        let basis = fam.get(r)?.scale(&rational::q(r as i64));
        let inv_phi = Rational::new(1.into(), euler_phi(r).into());
        for u in units(r) {
            let target = inertia.aut_image(c, u);
            let g = basis.galois(u)?.scale(&inv_phi);
            for (acc, q) in out.components[target].iter_mut().zip(&m.components[c]) {
                *acc = &*acc + &g.scale(q);
            }
        }
    }
    Ok(out)
}

/// Matrix of `phi` from geometric coordinates to invariant coordinates.
pub fn phi_matrix(inertia: &CyclotomicInertia, fam: &NormalBasisFamily) -> Result<Matrix> {
    let n = inertia.orbit_count();
    let columns = (0..n)
        .map(|k| {
            let m = GeometricFamily::from_vector(inertia, &crate::equivariant::unit_vector(n, k))?;
            Ok(invariant_coordinates(inertia, &phi_map(inertia, &m, fam)?))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_columns(inertia.invariant_dim(), &columns))
}

/// `phi^{-1}` on an `Aut`-invariant twisted class.
pub fn phi_inverse(inertia: &CyclotomicInertia, w: &TwistedClass, fam: &NormalBasisFamily) -> Result<GeometricFamily> {
    let v = phi_matrix(inertia, fam)?.solve(&invariant_coordinates(inertia, w))?;
    let m = GeometricFamily::from_vector(inertia, &v)?;
    if phi_map(inertia, &m, fam)? != *w {
        return Err(Error::NotInvariant("twisted class is not Aut-invariant".into()));
    }
    Ok(m)
}

/// `I f_*` on geometric families: same rule as on twisted classes, with
/// rational coefficients.
pub fn push_geometric(
    f: &EquivariantMap,
    src: &CyclotomicInertia,
    tgt: &CyclotomicInertia,
    m: &GeometricFamily,
) -> Result<GeometricFamily> {
    let orbit_map = f.orbit_map(src.k_theory(), tgt.k_theory());
    let mut out = GeometricFamily::zero(tgt);
    for (comp, qs) in src.components().iter().zip(&m.components) {
        let c = tgt
            .component_of(&comp.h)
            .ok_or_else(|| Error::NotEquivariant("fixed point maps outside the fixed locus".into()))?;
        for (&o, q) in comp.orbits.iter().zip(qs) {
            let o2 = orbit_map[o];
            let j = tgt.components()[c].orbits.iter().position(|&p| p == o2).expect("h-fixed");
            let index = tgt.k_theory().orbits()[o2].stabilizer.order()
                / src.k_theory().orbits()[o].stabilizer.order();
            out.components[c][j] += q * rational::q(index as i64);
        }
    }
    Ok(out)
}

/// `phi . I f_* = I f_* . phi` on a basis of geometric families of the
/// source.
pub fn phi_covariance_check(f: &EquivariantMap, fam: &NormalBasisFamily) -> Result<bool> {
    let src = CyclotomicInertia::new(f.source());
    let tgt = CyclotomicInertia::new(f.target());
    let n = src.orbit_count();
    for k in 0..n {
        let m = GeometricFamily::from_vector(&src, &crate::equivariant::unit_vector(n, k))?;
        let lhs = phi_map(&tgt, &push_geometric(f, &src, &tgt, &m)?, fam)?;
        let rhs = push_inertia(f, &src, &tgt, &phi_map(&src, &m, fam)?)?;
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The order-dropping case `mu_n -> mu_r`, `u -> u mod r`, at the level of
/// coefficients: for the class concentrated on the component `u0`,
/// pushing `phi_n` with the rule `(r/n) trace` agrees with `phi_r` of the
/// pushed class.
pub fn order_drop_check(n: u64, r: u64, fam: &NormalBasisFamily) -> Result<bool> {
    if n % r != 0 {
        return Err(Error::NotADivisor { value: r, modulus: n });
    }
    let xn = fam.get(n)?;
    let xr = fam.get(r)?;
    let drop = Rational::new(r.into(), n.into());
    for u0 in units(n) {
        let u0_inv = crate::numtheory::inv_mod(u0, n);
        for v in units(r) {
            let mut lhs = CycFieldElem::zero(r);
            for u in units(n).into_iter().filter(|u| u % r == v % r) {
                // phi_n(delta_{u0}) at component u
                let w = xn
                    .scale(&rational::q(n as i64))
                    .galois(u * u0_inv % n)?
                    .scale(&Rational::new(1.into(), euler_phi(n).into()));
                lhs = &lhs + &trace(&w, r)?.scale(&drop);
            }
            // phi_r(delta_{u0 mod r}) at component v
            let s = if r == 1 { 0 } else { v * crate::numtheory::inv_mod(u0 % r, r) % r };
            let rhs = xr
                .scale(&rational::q(r as i64))
                .galois(s)?
                .scale(&Rational::new(1.into(), euler_phi(r).into()));
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `K(X) -> K_geom(I X) -> Q^{orbits of I X}`: `L`, then `phi^{-1}`, then the
/// moduli push-forward on each component. With geometric classes recorded
/// as `sum q e_1`, the moduli push-forward reads off `q`, the rank.
pub fn rational_rr(inertia: &CyclotomicInertia, a: &KClass, fam: &NormalBasisFamily) -> Result<Vec<Rational>> {
    let m = phi_inverse(inertia, &lrr_forward(inertia, a)?, fam)?;
    Ok(m.to_vector())
}

pub fn rational_rr_matrix(inertia: &CyclotomicInertia, fam: &NormalBasisFamily) -> Result<Matrix> {
    let k = inertia.k_theory();
    let phi_inv = phi_matrix(inertia, fam)?.inverse()?;
    let columns = (0..k.dim())
        .map(|i| {
            let w = lrr_forward(inertia, &k.basis_class(i))?;
            phi_inv.mul_vec(&invariant_coordinates(inertia, &w))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_columns(inertia.orbit_count(), &columns))
}

/// Output rows `{"h", "orbit", "value"}` for a `rational_rr` vector.
pub fn rational_rr_json(inertia: &CyclotomicInertia, v: &[Rational]) -> serde_json::Value {
    let orbits = inertia.k_theory().orbits();
    let mut it = v.iter();
    let rows: Vec<_> = inertia
        .components()
        .iter()
        .flat_map(|c| {
            c.orbits
                .iter()
                .map(|&o| {
                    serde_json::json!({
                        "h": c.h,
                        "orbit": orbits[o].id(),
                        "value": rational::to_string(it.next().expect("length")),
                    })
                })
                .collect::<Vec<_>>()
        })
        .collect();
    serde_json::Value::Array(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::FinAbGroup;
    use crate::equivariant::GSet;
    use crate::rational::{frac, q};

    #[test]
    fn small_families() {
        let f1 = build_family(1).unwrap();
        assert_eq!(f1.get(1).unwrap().as_rational(), Some(q(1)));
        let f2 = build_family(2).unwrap();
        assert_eq!(f2.get(2).unwrap(), &CycFieldElem::from_rational(2, q(1)));
        let f3 = build_family(3).unwrap();
        // -zeta_3
        assert_eq!(f3.get(3).unwrap(), &CycFieldElem::zeta_pow(3, 1).scale(&q(-1)));
        assert_eq!(trace(f3.get(3).unwrap(), 1).unwrap().as_rational(), Some(q(1)));
    }

    #[test]
    fn families_up_to_24_are_valid() {
        for n in 1..=24 {
            let fam = build_family(n).unwrap_or_else(|e| panic!("N = {n}: {e}"));
            fam.validate().unwrap();
        }
    }

    #[test]
    fn exhaustion_is_reported() {
        assert_eq!(
            build_family_bounded(4, 1),
            Err(Error::SearchExhausted { modulus: 4, tried: 1 })
        );
    }

    #[test]
    fn family_json_round_trip() {
        let fam = build_family(6).unwrap();
        let s = serde_json::to_string(&fam).unwrap();
        assert!(s.starts_with(r#"{"N":6,"x":{"#));
        assert_eq!(serde_json::from_str::<NormalBasisFamily>(&s).unwrap(), fam);
        let bad = s.replacen("\"1\":[\"1\"]", "\"1\":[\"2\"]", 1);
        assert!(serde_json::from_str::<NormalBasisFamily>(&bad).is_err());
    }

    #[test]
    fn phi_small_cases() {
        let x = GSet::trivial(&FinAbGroup::cyclic(2), 1);
        let i = CyclotomicInertia::new(&x);
        let fam = build_family(2).unwrap();
        let m = GeometricFamily { components: vec![vec![q(3)], vec![q(5)]] };
        let w = phi_map(&i, &m, &fam).unwrap();
        assert_eq!(w.components[0][0].as_rational(), Some(q(3)));
        assert_eq!(w.components[1][0].as_rational(), Some(q(10)));
        assert_eq!(phi_inverse(&i, &w, &fam).unwrap(), m);
        assert!(phi_map(&i, &GeometricFamily::zero(&i), &fam).unwrap().is_zero());
    }

    #[test]
    fn rational_rr_on_b_mu2() {
        let x = GSet::trivial(&FinAbGroup::cyclic(2), 1);
        let i = CyclotomicInertia::new(&x);
        let k = i.k_theory();
        let fam = build_family(2).unwrap();
        let geo = k.geometric_part(&k.one()).unwrap();
        assert_eq!(rational_rr(&i, &geo, &fam).unwrap(), vec![q(1), q(0)]);
        assert_eq!(rational_rr(&i, &k.one(), &fam).unwrap(), vec![q(1), q(1)]);
        let chi = k.from_vector(&[q(0), q(1)]).unwrap();
        assert_eq!(rational_rr(&i, &chi, &fam).unwrap(), vec![q(1), q(-1)]);
        assert!(!rational_rr_matrix(&i, &fam).unwrap().determinant().unwrap().is_zero());
    }

    #[test]
    fn rational_rr_on_free_action_is_rank() {
        let x = GSet::new(FinAbGroup::cyclic(3), 3, vec![vec![1, 2, 0]]).unwrap();
        let i = CyclotomicInertia::new(&x);
        let fam = build_family(3).unwrap();
        let a = i.k_theory().from_vector(&[frac(7, 3)]).unwrap();
        assert_eq!(rational_rr(&i, &a, &fam).unwrap(), vec![frac(7, 3)]);
    }

    #[test]
    fn order_drops() {
        let fam = build_family(12).unwrap();
        for (n, r) in [(4, 2), (6, 2), (6, 3), (12, 4), (12, 1), (4, 4)] {
            assert!(order_drop_check(n, r, &fam).unwrap(), "({n}, {r})");
        }
    }
}
