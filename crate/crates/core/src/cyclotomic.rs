//! Exact arithmetic in the character rings `Q[t]/(t^n - 1)` and the
//! cyclotomic fields `Q(zeta_d)`, together with the maps between them: the
//! CRT splitting, the embeddings `i_d`, traces, Galois actions and the push
//! and pull maps attached to `mu_d -> mu_n`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::numtheory::{divisors, euler_phi, is_unit, units};
use crate::poly::Polynomial;
use crate::rational::{self, Rational};

/// The cyclotomic polynomial `Phi_d`, by exact division of `x^d - 1` by
/// `Phi_e` for every proper divisor `e` of `d`.
pub fn cyclotomic_poly(d: u64) -> Polynomial {
    assert!(d >= 1, "cyclotomic_poly: d must be positive");
    (*cached_cyclotomic(d)).clone()
}

fn cached_cyclotomic(d: u64) -> Arc<Polynomial> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<Polynomial>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(p) = cache.lock().unwrap().get(&d) {
        return p.clone();
    }
    let mut p = Polynomial::x_pow_minus_one(d as usize);
    for e in divisors(d) {
        if e < d {
            p = p.exact_div(&cached_cyclotomic(e));
        }
    }
    let p = Arc::new(p);
    cache.lock().unwrap().insert(d, p.clone());
    p
}

fn check_divides(d: u64, n: u64) -> Result<()> {
    if d == 0 || n % d != 0 {
        return Err(Error::NotADivisor { value: d, modulus: n });
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Q(zeta_d)
// ---------------------------------------------------------------------------

/// An element of `Q(zeta_d)` on the power basis `1, x, ..., x^{phi(d)-1}`
/// modulo `Phi_d`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawFieldElem", into = "RawFieldElem")]
pub struct CycFieldElem {
    d: u64,
    coeffs: Vec<Rational>,
}

#[derive(Serialize, Deserialize)]
struct RawFieldElem {
    d: u64,
    #[serde(with = "rational::serde_str::vec")]
    coeffs: Vec<Rational>,
}

impl TryFrom<RawFieldElem> for CycFieldElem {
    type Error = Error;
    fn try_from(raw: RawFieldElem) -> Result<Self> {
        CycFieldElem::new(raw.d, raw.coeffs)
    }
}

impl From<CycFieldElem> for RawFieldElem {
    fn from(x: CycFieldElem) -> Self {
        RawFieldElem { d: x.d, coeffs: x.coeffs }
    }
}

impl CycFieldElem {
    pub fn new(d: u64, coeffs: Vec<Rational>) -> Result<Self> {
        if d == 0 {
            return Err(Error::BadFactor(0));
        }
        let expected = euler_phi(d) as usize;
        if coeffs.len() != expected {
            return Err(Error::Length { expected, got: coeffs.len() });
        }
        Ok(CycFieldElem { d, coeffs })
    }

    pub fn zero(d: u64) -> Self {
        CycFieldElem { d, coeffs: vec![Rational::zero(); euler_phi(d) as usize] }
    }

    pub fn from_rational(d: u64, c: Rational) -> Self {
        let mut x = Self::zero(d);
        x.coeffs[0] = c;
        x
    }

    pub fn one(d: u64) -> Self {
        Self::from_rational(d, Rational::one())
    }

    /// `zeta_d^k` for any integer `k`.
    pub fn zeta_pow(d: u64, k: i64) -> Self {
        let e = k.rem_euclid(d as i64) as usize;
        Self::from_poly(d, &Polynomial::monomial(Rational::one(), e))
    }

    /// The `k`-th power-basis vector `x^k`, `k < phi(d)`.
    pub fn basis(d: u64, k: usize) -> Self {
        let mut x = Self::zero(d);
        x.coeffs[k] = Rational::one();
        x
    }

    /// Reduces a polynomial in `zeta_d` to canonical form.
    pub fn from_poly(d: u64, p: &Polynomial) -> Self {
        let m = cached_cyclotomic(d);
        let r = p.rem(&m);
        let len = euler_phi(d) as usize;
        CycFieldElem { d, coeffs: (0..len).map(|i| r.coeff(i)).collect() }
    }

    pub fn to_poly(&self) -> Polynomial {
        Polynomial::new(self.coeffs.clone())
    }

    pub fn conductor(&self) -> u64 {
        self.d
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// `Some(q)` when the element is the rational `q`.
    pub fn as_rational(&self) -> Option<Rational> {
        self.coeffs[1..].iter().all(Zero::is_zero).then(|| self.coeffs[0].clone())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        CycFieldElem { d: self.d, coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    pub fn inverse(&self) -> Option<Self> {
        let inv = self.to_poly().inverse_mod(&cached_cyclotomic(self.d))?;
        Some(Self::from_poly(self.d, &inv))
    }

    /// The Galois automorphism `zeta_d -> zeta_d^u`.
    pub fn galois(&self, u: u64) -> Result<Self> {
        if !is_unit(u, self.d) {
            return Err(Error::NotAUnit { unit: u, modulus: self.d });
        }
        let u = if self.d == 1 { 1 } else { (u % self.d) as usize };
        Ok(Self::from_poly(self.d, &self.to_poly().compose_power(u)))
    }

    /// The image in `Q(zeta_n)` under `zeta_d -> zeta_n^{n/d}`.
    pub fn lift(&self, n: u64) -> Result<Self> {
        check_divides(self.d, n)?;
        Ok(Self::from_poly(n, &self.to_poly().compose_power((n / self.d) as usize)))
    }

    /// Rewrites an element of `Q(zeta_d)` that lies in the subfield
    /// `Q(zeta_r)` in conductor `r`.
    pub fn descend(&self, r: u64) -> Result<Self> {
        check_divides(r, self.d)?;
        let cols: Vec<Vec<Rational>> = (0..euler_phi(r) as usize)
            .map(|k| CycFieldElem::basis(r, k).lift(self.d).map(|x| x.coeffs))
            .collect::<Result<_>>()?;
        let lift = Matrix::from_columns(self.coeffs.len(), &cols);
        let c = lift.solve(&self.coeffs)?;
        CycFieldElem::new(r, c)
    }

    fn check_same(&self, other: &Self) {
        assert_eq!(self.d, other.d, "conductor mismatch in Q(zeta) arithmetic");
    }
}

impl Add for &CycFieldElem {
    type Output = CycFieldElem;
    fn add(self, rhs: &CycFieldElem) -> CycFieldElem {
        self.check_same(rhs);
        CycFieldElem {
            d: self.d,
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &CycFieldElem {
    type Output = CycFieldElem;
    fn sub(self, rhs: &CycFieldElem) -> CycFieldElem {
        self.check_same(rhs);
        CycFieldElem {
            d: self.d,
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &CycFieldElem {
    type Output = CycFieldElem;
    fn mul(self, rhs: &CycFieldElem) -> CycFieldElem {
        self.check_same(rhs);
        CycFieldElem::from_poly(self.d, &(&self.to_poly() * &rhs.to_poly()))
    }
}

impl Neg for &CycFieldElem {
    type Output = CycFieldElem;
    fn neg(self) -> CycFieldElem {
        CycFieldElem { d: self.d, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl fmt::Debug for CycFieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(z{})[{}]", self.d, self.to_poly())
    }
}

// ---------------------------------------------------------------------------
// Q[t]/(t^n - 1)
// ---------------------------------------------------------------------------

/// An element `sum a_i t^i` of `R(mu_n) = Q[t]/(t^n - 1)`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawModN", into = "RawModN")]
pub struct CycModN {
    n: u64,
    coeffs: Vec<Rational>,
}

#[derive(Serialize, Deserialize)]
struct RawModN {
    n: u64,
    #[serde(with = "rational::serde_str::vec")]
    coeffs: Vec<Rational>,
}

impl TryFrom<RawModN> for CycModN {
    type Error = Error;
    fn try_from(raw: RawModN) -> Result<Self> {
        CycModN::new(raw.n, raw.coeffs)
    }
}

impl From<CycModN> for RawModN {
    fn from(x: CycModN) -> Self {
        RawModN { n: x.n, coeffs: x.coeffs }
    }
}

impl CycModN {
    pub fn new(n: u64, coeffs: Vec<Rational>) -> Result<Self> {
        if n == 0 {
            return Err(Error::BadFactor(0));
        }
        if coeffs.len() != n as usize {
            return Err(Error::Length { expected: n as usize, got: coeffs.len() });
        }
        Ok(CycModN { n, coeffs })
    }

    pub fn from_i64s(n: u64, cs: &[i64]) -> Result<Self> {
        Self::new(n, cs.iter().map(|&c| rational::q(c)).collect())
    }

    pub fn zero(n: u64) -> Self {
        CycModN { n, coeffs: vec![Rational::zero(); n as usize] }
    }

    pub fn one(n: u64) -> Self {
        Self::monomial(n, Rational::one(), 0)
    }

    /// `c * t^k`, exponent read modulo `n`.
    pub fn monomial(n: u64, c: Rational, k: i64) -> Self {
        let mut x = Self::zero(n);
        x.coeffs[k.rem_euclid(n as i64) as usize] = c;
        x
    }

    pub fn t_pow(n: u64, k: i64) -> Self {
        Self::monomial(n, Rational::one(), k)
    }

    /// Reduces a polynomial modulo `t^n - 1`.
    pub fn from_poly(n: u64, p: &Polynomial) -> Self {
        let mut x = Self::zero(n);
        for (i, c) in p.coeffs().iter().enumerate() {
            x.coeffs[i % n as usize] += c;
        }
        x
    }

    pub fn to_poly(&self) -> Polynomial {
        Polynomial::new(self.coeffs.clone())
    }

    pub fn modulus(&self) -> u64 {
        self.n
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &Rational {
        &self.coeffs[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        CycModN { n: self.n, coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    /// `f(1)`, the sum of the coefficients.
    pub fn augmentation(&self) -> Rational {
        self.coeffs.iter().sum()
    }

    fn check_same(&self, other: &Self) {
        assert_eq!(self.n, other.n, "modulus mismatch in Q[t]/(t^n - 1) arithmetic");
    }
}

impl Add for &CycModN {
    type Output = CycModN;
    fn add(self, rhs: &CycModN) -> CycModN {
        self.check_same(rhs);
        CycModN {
            n: self.n,
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &CycModN {
    type Output = CycModN;
    fn sub(self, rhs: &CycModN) -> CycModN {
        self.check_same(rhs);
        CycModN {
            n: self.n,
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &CycModN {
    type Output = CycModN;
    fn mul(self, rhs: &CycModN) -> CycModN {
        self.check_same(rhs);
        let n = self.n as usize;
        let mut out = CycModN::zero(self.n);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out.coeffs[(i + j) % n] += a * b;
                }
            }
        }
        out
    }
}

impl Neg for &CycModN {
    type Output = CycModN;
    fn neg(self) -> CycModN {
        CycModN { n: self.n, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl fmt::Debug for CycModN {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "R(mu_{})[{}]", self.n, self.to_poly().to_string().replace('x', "t"))
    }
}

// ---------------------------------------------------------------------------
// CRT decomposition R(mu_n) = prod_{d | n} Q(zeta_d)
// ---------------------------------------------------------------------------

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CrtVector {
    n: u64,
    components: BTreeMap<u64, CycFieldElem>,
}

impl CrtVector {
    /// Validates that there is exactly one component per divisor, with the
    /// matching conductor.
    pub fn new(n: u64, components: BTreeMap<u64, CycFieldElem>) -> Result<Self> {
        let divs = divisors(n);
        if components.len() != divs.len() || !divs.iter().all(|d| components.contains_key(d)) {
            return Err(Error::Length { expected: divs.len(), got: components.len() });
        }
        for (d, x) in &components {
            if x.conductor() != *d {
                return Err(Error::ConductorMismatch { left: *d, right: x.conductor() });
            }
        }
        Ok(CrtVector { n, components })
    }

    pub fn modulus(&self) -> u64 {
        self.n
    }

    pub fn component(&self, d: u64) -> Option<&CycFieldElem> {
        self.components.get(&d)
    }

    pub fn components(&self) -> &BTreeMap<u64, CycFieldElem> {
        &self.components
    }
}

pub fn crt_split(e: &CycModN) -> CrtVector {
    let p = e.to_poly();
    let components = divisors(e.n)
        .into_iter()
        .map(|d| (d, CycFieldElem::from_poly(d, &p)))
        .collect();
    CrtVector { n: e.n, components }
}

/// The unique preimage of a CRT vector, assembled from the embeddings `i_d`.
pub fn crt_join(v: &CrtVector) -> CycModN {
    v.components.values().fold(CycModN::zero(v.n), |acc, x| {
        &acc + &embed_i(v.n, x).expect("component conductors divide n")
    })
}

/// `psi_d = (t^r - 1) / Phi_d`.
pub fn psi(r: u64, d: u64) -> Result<Polynomial> {
    check_divides(d, r)?;
    Ok(Polynomial::x_pow_minus_one(r as usize).exact_div(&cached_cyclotomic(d)))
}

/// The embedding `i_d : Q(zeta_d) -> R(mu_r)`, `x -> p_x * psi_d(t)`, where
/// `p_x` is `x * psi_d(zeta_d)^{-1}` computed by inversion modulo `Phi_d`.
pub fn embed_i(r: u64, x: &CycFieldElem) -> Result<CycModN> {
    let d = x.conductor();
    let psi_d = psi(r, d)?;
    let psi_inv = psi_d
        .inverse_mod(&cached_cyclotomic(d))
        .expect("psi_d is coprime to Phi_d");
    let p_x = (&x.to_poly() * &psi_inv).rem(&cached_cyclotomic(d));
    Ok(CycModN::from_poly(r, &(&p_x * &psi_d)))
}

/// `Gal(Q(zeta_n) / Q(zeta_r))` as the units `u` mod `n` with `u = 1 mod r`.
pub fn relative_galois_group(n: u64, r: u64) -> Result<Vec<u64>> {
    check_divides(r, n)?;
    Ok(units(n).into_iter().filter(|u| n == 1 || u % r == 1 % r).collect())
}

/// The field trace `Q(zeta_n) -> Q(zeta_r)`.
pub fn trace(x: &CycFieldElem, r: u64) -> Result<CycFieldElem> {
    let n = x.conductor();
    let mut sum = CycFieldElem::zero(n);
    for u in relative_galois_group(n, r)? {
        sum = &sum + &x.galois(u)?;
    }
    sum.descend(r)
}

/// The push-forward `Q(zeta_n) -> Q(zeta_r)` induced on localized parts by
/// `mu_n -> mu_r`: `(r/n) * trace`.
pub fn mu_localized_pushforward(x: &CycFieldElem, r: u64) -> Result<CycFieldElem> {
    let n = x.conductor();
    Ok(trace(x, r)?.scale(&rational::frac(r as i64, n as i64)))
}

/// Push-forward `R(mu_d) -> R(mu_n)` along `mu_d -> mu_n`:
/// `s^j -> sum_{i = j mod d} t^i`.
pub fn induction(p: &CycModN, n: u64) -> Result<CycModN> {
    let d = p.n;
    check_divides(d, n)?;
    let mut out = CycModN::zero(n);
    for i in 0..n as usize {
        out.coeffs[i] = p.coeffs[i % d as usize].clone();
    }
    Ok(out)
}

/// Restriction `R(mu_n) -> R(mu_d)`: `t^i -> s^{i mod d}`.
pub fn restriction(p: &CycModN, d: u64) -> Result<CycModN> {
    check_divides(d, p.n)?;
    let mut out = CycModN::zero(d);
    for (i, c) in p.coeffs.iter().enumerate() {
        out.coeffs[i % d as usize] += c;
    }
    Ok(out)
}

/// Push-forward `R(mu_n) -> R(mu_r)` along the projection
/// `mu_n -> mu_r, z -> z^{n/r}`: keeps the characters trivial on the kernel,
/// `t^{k n / r} -> s^k`.
pub fn quotient_pushforward(p: &CycModN, r: u64) -> Result<CycModN> {
    check_divides(r, p.n)?;
    let step = (p.n / r) as usize;
    let mut out = CycModN::zero(r);
    for k in 0..r as usize {
        out.coeffs[k] = p.coeffs[k * step].clone();
    }
    Ok(out)
}

/// Pull-back `R(mu_r) -> R(mu_n)` along the projection `mu_n -> mu_r`:
/// `s^k -> t^{k n / r}`.
pub fn quotient_pullback(p: &CycModN, n: u64) -> Result<CycModN> {
    check_divides(p.n, n)?;
    let step = (n / p.n) as usize;
    let mut out = CycModN::zero(n);
    for (k, c) in p.coeffs.iter().enumerate() {
        out.coeffs[k * step] = c.clone();
    }
    Ok(out)
}

/// The action of `u in Aut(mu_n) = (Z/n)^*` on `R(mu_n)`: `t -> t^u`.
pub fn galois_act(u: u64, e: &CycModN) -> Result<CycModN> {
    let n = e.n;
    if !is_unit(u, n) {
        return Err(Error::NotAUnit { unit: u, modulus: n });
    }
    let mut out = CycModN::zero(n);
    for (i, c) in e.coeffs.iter().enumerate() {
        out.coeffs[(i as u64 * u % n) as usize] += c;
    }
    Ok(out)
}

/// An element of `R(mu_n) (x) R(mu_d)`, stored as the `n x d` matrix of
/// coefficients of `t^i (x) s^j`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CycTensor {
    n: u64,
    d: u64,
    coeffs: Vec<Rational>,
}

impl CycTensor {
    pub fn new(n: u64, d: u64, rows: Vec<Vec<Rational>>) -> Result<Self> {
        if rows.len() != n as usize {
            return Err(Error::Length { expected: n as usize, got: rows.len() });
        }
        if let Some(bad) = rows.iter().find(|r| r.len() != d as usize) {
            return Err(Error::Length { expected: d as usize, got: bad.len() });
        }
        Ok(CycTensor { n, d, coeffs: rows.into_iter().flatten().collect() })
    }

    pub fn outer(a: &CycModN, b: &CycModN) -> Self {
        let mut coeffs = Vec::with_capacity(a.coeffs.len() * b.coeffs.len());
        for x in &a.coeffs {
            for y in &b.coeffs {
                coeffs.push(x * y);
            }
        }
        CycTensor { n: a.n, d: b.n, coeffs }
    }

    pub fn coeff(&self, i: usize, j: usize) -> &Rational {
        &self.coeffs[i * self.d as usize + j]
    }
}

/// The twist push-forward along `mu_n x mu_d -> mu_n`, `d | n`:
/// `t^i (x) s^j -> t^i` when `i = j mod d`, and `0` otherwise.
pub fn alpha_push(e: &CycTensor) -> Result<CycModN> {
    check_divides(e.d, e.n)?;
    let mut out = CycModN::zero(e.n);
    for i in 0..e.n as usize {
        let j = i % e.d as usize;
        out.coeffs[i] = e.coeff(i, j).clone();
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, q};

    #[test]
    fn small_cyclotomic_polys() {
        assert_eq!(cyclotomic_poly(1), Polynomial::from_i64s(&[-1, 1]));
        assert_eq!(cyclotomic_poly(2), Polynomial::from_i64s(&[1, 1]));
        assert_eq!(cyclotomic_poly(6), Polynomial::from_i64s(&[1, -1, 1]));
        assert_eq!(cyclotomic_poly(12), Polynomial::from_i64s(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn cyclotomic_polys_are_monic_integral() {
        for d in 1..=48 {
            let p = cyclotomic_poly(d);
            assert!(p.is_monic() && p.has_integer_coeffs(), "Phi_{d}");
            assert_eq!(p.degree(), Some(euler_phi(d) as usize));
        }
    }

    #[test]
    fn crt_split_examples() {
        let v = crt_split(&CycModN::zero(6));
        assert_eq!(v.components().len(), 4);
        assert!(v.components().values().all(CycFieldElem::is_zero));

        let v = crt_split(&CycModN::t_pow(2, 1));
        assert_eq!(v.component(1).unwrap(), &CycFieldElem::one(1));
        assert_eq!(v.component(2).unwrap(), &CycFieldElem::from_rational(2, q(-1)));

        for n in [1, 5, 12] {
            let v = crt_split(&CycModN::one(n));
            assert!(v.components().iter().all(|(&d, x)| *x == CycFieldElem::one(d)));
        }
    }

    #[test]
    fn crt_join_examples() {
        let v = CrtVector::new(
            2,
            [(1, CycFieldElem::one(1)), (2, CycFieldElem::zero(2))].into(),
        )
        .unwrap();
        assert_eq!(crt_join(&v), CycModN::new(2, vec![frac(1, 2), frac(1, 2)]).unwrap());
        let v = CrtVector::new(
            2,
            [(1, CycFieldElem::zero(1)), (2, CycFieldElem::one(2))].into(),
        )
        .unwrap();
        assert_eq!(crt_join(&v), CycModN::new(2, vec![frac(1, 2), frac(-1, 2)]).unwrap());
        let v = crt_split(&CycModN::one(8));
        assert_eq!(crt_join(&v), CycModN::one(8));
    }

    #[test]
    fn crt_vector_rejects_missing_component() {
        let comps = [(1, CycFieldElem::one(1))].into();
        assert!(CrtVector::new(2, comps).is_err());
    }

    #[test]
    fn embed_examples() {
        let third = frac(1, 3);
        assert_eq!(
            embed_i(3, &CycFieldElem::one(1)).unwrap(),
            CycModN::new(3, vec![third.clone(), third.clone(), third]).unwrap()
        );
        assert_eq!(
            embed_i(2, &CycFieldElem::one(2)).unwrap(),
            CycModN::new(2, vec![frac(1, 2), frac(-1, 2)]).unwrap()
        );
        assert!(embed_i(6, &CycFieldElem::zero(3)).unwrap().is_zero());
        assert!(embed_i(4, &CycFieldElem::one(3)).is_err());
    }

    #[test]
    fn trace_examples() {
        let z3 = CycFieldElem::zeta_pow(3, 1);
        assert_eq!(trace(&z3, 1).unwrap(), CycFieldElem::from_rational(1, q(-1)));
        let z4 = CycFieldElem::zeta_pow(4, 1);
        assert!(trace(&z4, 2).unwrap().is_zero());
        // a base-field element picks up the degree [Q(z12) : Q(z3)] = 2
        let x = CycFieldElem::zeta_pow(3, 1);
        let lifted = x.lift(12).unwrap();
        assert_eq!(trace(&lifted, 3).unwrap(), x.scale(&q(2)));
    }

    #[test]
    fn localized_pushforward_examples() {
        let one4 = CycFieldElem::one(4);
        assert_eq!(mu_localized_pushforward(&one4, 2).unwrap(), CycFieldElem::one(2));
        let z4 = CycFieldElem::zeta_pow(4, 1);
        assert!(mu_localized_pushforward(&z4, 2).unwrap().is_zero());
        let x = &CycFieldElem::zeta_pow(5, 2) + &CycFieldElem::one(5);
        assert_eq!(mu_localized_pushforward(&x, 5).unwrap(), x);
    }

    #[test]
    fn induction_and_restriction_examples() {
        assert_eq!(induction(&CycModN::one(1), 2).unwrap(), CycModN::from_i64s(2, &[1, 1]).unwrap());
        assert_eq!(
            induction(&CycModN::t_pow(2, 1), 4).unwrap(),
            CycModN::from_i64s(4, &[0, 1, 0, 1]).unwrap()
        );
        let p = CycModN::from_i64s(3, &[1, 2, 3]).unwrap();
        assert_eq!(induction(&p, 3).unwrap(), p);

        assert_eq!(restriction(&CycModN::t_pow(4, 1), 2).unwrap(), CycModN::t_pow(2, 1));
        assert_eq!(
            restriction(&CycModN::from_i64s(4, &[1, 1, 1, 1]).unwrap(), 2).unwrap(),
            CycModN::from_i64s(2, &[2, 2]).unwrap()
        );
        assert_eq!(restriction(&p, 3).unwrap(), p);
        assert!(restriction(&p, 2).is_err());
    }

    #[test]
    fn galois_examples() {
        let e = CycModN::from_i64s(6, &[1, 2, 0, 0, 5, 1]).unwrap();
        assert_eq!(galois_act(1, &e).unwrap(), e);
        assert_eq!(galois_act(2, &CycModN::t_pow(5, 1)).unwrap(), CycModN::t_pow(5, 2));
        let twice = galois_act(5, &galois_act(5, &e).unwrap()).unwrap();
        assert_eq!(twice, e);
        assert_eq!(galois_act(2, &e), Err(Error::NotAUnit { unit: 2, modulus: 6 }));
    }

    #[test]
    fn alpha_push_examples() {
        let t = CycModN::t_pow(2, 1);
        let one = CycModN::one(2);
        assert_eq!(alpha_push(&CycTensor::outer(&t, &t)).unwrap(), t);
        assert!(alpha_push(&CycTensor::outer(&t, &one)).unwrap().is_zero());
        let a = CycModN::new(2, vec![frac(1, 2), frac(1, 2)]).unwrap();
        let b = CycModN::new(2, vec![frac(1, 2), frac(-1, 2)]).unwrap();
        assert_eq!(
            alpha_push(&CycTensor::outer(&a, &b)).unwrap(),
            CycModN::new(2, vec![frac(1, 4), frac(-1, 4)]).unwrap()
        );
    }

    #[test]
    fn quotient_push_pull_are_adjoint() {
        // <push(t^i), s^k> = <t^i, pull(s^k)> on monomials
        for (n, r) in [(6u64, 2u64), (6, 3), (8, 4), (12, 6)] {
            for i in 0..n as i64 {
                let pushed = quotient_pushforward(&CycModN::t_pow(n, i), r).unwrap();
                for k in 0..r as i64 {
                    let pulled = quotient_pullback(&CycModN::t_pow(r, k), n).unwrap();
                    assert_eq!(pushed.coeff(k as usize), pulled.coeff(i as usize));
                }
            }
        }
    }

    #[test]
    fn field_inverse() {
        let x = &CycFieldElem::zeta_pow(7, 3) + &CycFieldElem::from_rational(7, q(2));
        let inv = x.inverse().unwrap();
        assert_eq!(&x * &inv, CycFieldElem::one(7));
        assert!(CycFieldElem::zero(7).inverse().is_none());
    }

    #[test]
    fn json_shapes() {
        let e = CycModN::new(2, vec![frac(1, 2), q(-3)]).unwrap();
        let s = serde_json::to_string(&e).unwrap();
        assert_eq!(s, r#"{"n":2,"coeffs":["1/2","-3"]}"#);
        assert_eq!(serde_json::from_str::<CycModN>(&s).unwrap(), e);
        let bad = r#"{"d":4,"coeffs":["1"]}"#;
        assert!(serde_json::from_str::<CycFieldElem>(bad).is_err());
    }
}
