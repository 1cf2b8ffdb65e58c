//! Invariant suites over configurable instance ranges. Each check yields a
//! report `{"check", "instance", "pass", "lhs", "rhs"}`.

use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::abelian::{factorize_group_algebra, FinAbGroup, GroupAlgebraElem};
use crate::catalog::{abelian_groups, instance_suite, random_map, Instance};
use crate::cyclotomic::{crt_split, embed_i, mu_localized_pushforward, quotient_pushforward, CycFieldElem};
use crate::equivariant::{EquivariantMap, GSet, GaloisCover, KTheory};
use crate::error::Result;
use crate::gl_types::{
    delta_order_by_permutations, enumerate_hom_components, enumerate_product_components,
    expected_component_count, gamma_order_by_permutations, is_mono, profile,
    quotient_partition_check, w_divides_phi, HomComponent,
};
use crate::linalg::Matrix;
use crate::lrr::{
    beta_rank_check, comp_check, covariance_check, lrr_forward_matrix, lrr_inverse_matrix,
    rho_star_iso_check, vv_dimension, CyclotomicInertia,
};
use crate::mackey::{
    galois_matrix, res_ind_by_class_functions, res_ind_endo, w_order, w_units, Perm, PermGroup,
};
use crate::numtheory::{divisors, euler_phi};
use crate::rational_rr::{
    build_family, order_drop_check, phi_covariance_check, phi_matrix, rational_rr, rational_rr_matrix,
};

pub const SUITES: &[&str] = &[
    "comp",
    "covariance",
    "decomposition",
    "galois-cover",
    "hom-schemes",
    "lemma-iso",
    "lrr",
    "mackey",
    "normal-basis",
    "rational-rr",
    "trace-lemma",
];

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub instance: String,
    pub pass: bool,
    pub lhs: Value,
    pub rhs: Value,
}

impl CheckReport {
    fn new(check: &str, instance: impl Into<String>, lhs: Value, rhs: Value) -> Self {
        CheckReport { check: check.into(), instance: instance.into(), pass: lhs == rhs, lhs, rhs }
    }

    fn flag(check: &str, instance: impl Into<String>, pass: bool) -> Self {
        CheckReport { check: check.into(), instance: instance.into(), pass, lhs: json!(pass), rhs: json!(true) }
    }
}

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub seed: u64,
    /// Groups for the G-set instance suites.
    pub max_group_order: u64,
    pub max_set_size: usize,
    /// Random G-sets added to the fixed catalog.
    pub random_sets: usize,
    /// Upper bound for cyclotomic levels (trace lemma, normal bases).
    pub max_n: u64,
    /// Groups for the group-algebra decomposition checks.
    pub algebra_max_order: u64,
    /// Groups for the covariance and Galois-cover suites.
    pub map_max_order: u64,
    pub maps_per_group: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            seed: 0,
            max_group_order: 16,
            max_set_size: 6,
            random_sets: 200,
            max_n: 24,
            algebra_max_order: 36,
            map_max_order: 12,
            maps_per_group: 100,
        }
    }
}

impl VerifyConfig {
    fn rng(&self, salt: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15))
    }

    pub fn instances(&self) -> Vec<Instance> {
        instance_suite(self.max_group_order, self.max_set_size, self.random_sets, &mut self.rng(1))
    }

    /// `maps_per_group` seeded random maps for each group in range.
    pub fn maps(&self) -> Vec<(String, EquivariantMap)> {
        let mut rng = self.rng(2);
        let mut out = Vec::new();
        for g in abelian_groups(self.map_max_order) {
            for k in 0..self.maps_per_group {
                out.push((format!("{g}: map #{k}"), random_map(&g, self.max_set_size, &mut rng)));
            }
        }
        out
    }
}

/// Runs the named suite; `"all"` runs every suite. Reports are sorted by
/// check name, then instance.
pub fn run_suite(name: &str, cfg: &VerifyConfig) -> Result<Vec<CheckReport>> {
    let mut out = match name {
        "all" => {
            let mut all = Vec::new();
            for s in SUITES {
                all.extend(run_suite(s, cfg)?);
            }
            all
        }
        "trace-lemma" => trace_lemma(cfg.max_n)?,
        "mackey" => mackey_suite()?,
        "decomposition" => decomposition(cfg)?,
        "galois-cover" => galois_cover(cfg)?,
        "comp" => comp(&cfg.instances())?,
        "lrr" => lrr(&cfg.instances())?,
        "lemma-iso" => lemma_iso(&cfg.instances())?,
        "covariance" => covariance(cfg)?,
        "hom-schemes" => hom_schemes(),
        "normal-basis" => normal_basis(cfg.max_n)?,
        "rational-rr" => rational_rr_suite(cfg)?,
        other => {
            return Err(crate::Error::BadClass(format!(
                "unknown suite {other:?}; expected one of {} or \"all\"",
                SUITES.join(", ")
            )))
        }
    };
    out.sort_by(|a, b| (&a.check, &a.instance).cmp(&(&b.check, &b.instance)));
    Ok(out)
}

fn matrix_json(m: &Matrix) -> Value {
    json!(m.to_strings())
}

/// The push-forward along `mu_n -> mu_r` computed on `R(mu_n)`: embed at the
/// conductor-`n` factor, push, and read off the conductor-`r` factor.
pub fn localized_push_by_quotient(x: &CycFieldElem, r: u64) -> Result<CycFieldElem> {
    let n = x.conductor();
    let pushed = quotient_pushforward(&embed_i(n, x)?, r)?;
    Ok(crt_split(&pushed).component(r).expect("r divides r").clone())
}

fn field_map_matrix<F>(n: u64, r: u64, f: F) -> Result<Matrix>
where
    F: Fn(&CycFieldElem) -> Result<CycFieldElem>,
{
    let columns = (0..euler_phi(n) as usize)
        .map(|k| f(&CycFieldElem::basis(n, k)).map(|y| y.coeffs().to_vec()))
        .collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_columns(euler_phi(r) as usize, &columns))
}

pub fn trace_lemma(max_n: u64) -> Result<Vec<CheckReport>> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        for r in divisors(n) {
            let lhs = field_map_matrix(n, r, |x| localized_push_by_quotient(x, r))?;
            let rhs = field_map_matrix(n, r, |x| mu_localized_pushforward(x, r))?;
            out.push(CheckReport::new("trace-lemma", format!("n={n:02} r={r:02}"), matrix_json(&lhs), matrix_json(&rhs)));
        }
    }
    Ok(out)
}

fn mackey_suite() -> Result<Vec<CheckReport>> {
    let mut out = Vec::new();
    let s3 = PermGroup::symmetric(3);
    let h = s3.cyclic_subgroup(&Perm::from_cycles(3, &[&[0, 1]])?)?;
    out.push(CheckReport::new(
        "mackey",
        "S3 <(0 1)> worked example",
        matrix_json(&res_ind_endo(&s3, &h)?),
        matrix_json(&Matrix::from_i64s(&[&[2, 1], &[1, 2]])),
    ));
    for n in 1..=4 {
        let g = PermGroup::symmetric(n);
        for sigma in g.cyclic_subgroups() {
            let name = format!("S{n} <{:?}>", sigma.generator.0);
            let m = res_ind_endo(&g, &sigma)?;
            out.push(CheckReport::new(
                "mackey-class-functions",
                name.clone(),
                matrix_json(&m),
                matrix_json(&res_ind_by_class_functions(&g, &sigma)?),
            ));
            let commutes = w_units(&g, &sigma)?.into_iter().all(|u| {
                let p = galois_matrix(sigma.order, u);
                m.mul(&p).ok() == p.mul(&m).ok()
            });
            out.push(CheckReport::flag("mackey-galois", name.clone(), commutes));
            let w = w_order(&g, &sigma)?;
            out.push(CheckReport::flag("mackey-w-divides-phi", name.clone(), euler_phi(sigma.order) % w == 0));
            // the permutation representation of <sigma> has a type with w = phi(r)
            let c = permutation_type(&sigma.generator, sigma.order);
            out.push(CheckReport::new("mackey-w-vs-type", name, json!(w), json!(profile(&c)?.w_order)));
        }
    }
    for g in abelian_groups(12) {
        let p = PermGroup::from_abelian(&g);
        let all_one = p.cyclic_subgroups().iter().all(|s| w_order(&p, s).ok() == Some(1));
        out.push(CheckReport::flag("mackey-abelian-w", g.to_string(), all_one));
    }
    Ok(out)
}

/// Eigenspace ranks of a permutation matrix of order `r`: an `l`-cycle has
/// each `l`-th root of unity once.
pub fn permutation_type(p: &Perm, r: u64) -> HomComponent {
    let m = p.0.len();
    let mut seen = vec![false; m];
    let mut d = vec![0u64; r as usize];
    for start in 0..m {
        if seen[start] {
            continue;
        }
        let mut len = 0u64;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = p.0[x];
            len += 1;
        }
        for k in 0..len {
            d[(k * (r / len)) as usize] += 1;
        }
    }
    HomComponent::new(r, m as u64, d).expect("ranks sum to m")
}

fn decomposition(cfg: &VerifyConfig) -> Result<Vec<CheckReport>> {
    let mut out = Vec::new();
    for g in abelian_groups(cfg.algebra_max_order) {
        let factors = factorize_group_algebra(&g);
        let dims: u64 = factors.iter().map(|f| f.field_degree()).sum();
        out.push(CheckReport::new("factor-dimensions", g.to_string(), json!(dims), json!(g.order())));
        let mut orthogonal = true;
        let mut sum = GroupAlgebraElem::zero(factors[0].idempotent.ring());
        for (i, a) in factors.iter().enumerate() {
            sum = sum.add(&a.idempotent)?;
            for (j, b) in factors.iter().enumerate() {
                let prod = a.idempotent.mul(&b.idempotent)?;
                orthogonal &= if i == j { prod == a.idempotent } else { prod.is_zero() };
            }
        }
        orthogonal &= sum == GroupAlgebraElem::one(sum.ring());
        out.push(CheckReport::flag("idempotent-orthogonality", g.to_string(), orthogonal));
    }
    for inst in cfg.instances() {
        decomposition_instance(&inst, &mut out)?;
    }
    Ok(out)
}

fn decomposition_instance(inst: &Instance, out: &mut Vec<CheckReport>) -> Result<()> {
    let x = &inst.set;
    let k = KTheory::new(x);
    let mut total = 0;
    let mut support_ok = true;
    for sigma in x.group().dual_cyclic_subgroups() {
        let m = k.endomorphism_matrix(|a| k.localize(a, &sigma))?;
        let rank = m.rank();
        total += rank;
        support_ok &= (rank > 0) == !x.fixed_points(&sigma.generator).is_empty();
    }
    out.push(CheckReport::new("decomposition-dimension", inst.name.clone(), json!(total), json!(k.dim())));
    out.push(CheckReport::flag("decomposition-support", inst.name.clone(), support_ok));
    if x.is_free() {
        let alg = k.endomorphism_matrix(|a| k.algebraic_part(a))?;
        out.push(CheckReport::flag("vanishing-free-action", inst.name.clone(), alg.is_zero()));
    }
    let geo = k.endomorphism_matrix(|a| k.geometric_part(a))?;
    let columns = (0..k.dim())
        .map(|i| k.moduli_pushforward(&k.geometric_part(&k.basis_class(i))?))
        .collect::<Result<Vec<_>>>()?;
    let moduli = Matrix::from_columns(k.orbits().len(), &columns);
    let n = k.orbits().len();
    out.push(CheckReport::new(
        "moduli-pushforward-bijective",
        inst.name.clone(),
        json!([geo.rank(), moduli.rank()]),
        json!([n, n]),
    ));
    Ok(())
}

fn galois_cover(cfg: &VerifyConfig) -> Result<Vec<CheckReport>> {
    let mut out = Vec::new();
    for g in abelian_groups(cfg.map_max_order) {
        let report = GaloisCover::classifying(&g)?.check()?;
        out.push(CheckReport::new("galois-cover", format!("B({g}) <- pt"), json!(report), json!({"is_cover": true, "pullback_iso": true, "pushforward_iso": true})));
    }
    let z2 = FinAbGroup::cyclic(2);
    let map = EquivariantMap::new(GSet::trivial(&z2, 4), GSet::trivial(&z2, 2), vec![0, 0, 1, 1])?;
    let gamma = GSet::new(z2, 4, vec![vec![1, 0, 3, 2]])?;
    let report = GaloisCover { map, gamma }.check()?;
    out.push(CheckReport::flag("galois-cover", "Z/2-cover of 2 trivial points", report.pass()));
    Ok(out)
}

fn comp(instances: &[Instance]) -> Result<Vec<CheckReport>> {
    let mut out = Vec::new();
    for inst in instances {
        let i = CyclotomicInertia::new(&inst.set);
        for rep in comp_check(&i)? {
            out.push(CheckReport {
                check: "comp".into(),
                instance: format!("{} r={}", inst.name, rep.order),
                pass: rep.pass,
                lhs: json!(rep.pass),
                rhs: json!({ "scalar": crate::rational::to_string(&rep.expected_scalar) }),
            });
        }
    }
    Ok(out)
}

fn lrr(instances: &[Instance]) -> Result<Vec<CheckReport>> {
    let mut out = Vec::new();
    for inst in instances {
        let i = CyclotomicInertia::new(&inst.set);
        let inv = lrr_inverse_matrix(&i)?;
        let fwd = lrr_forward_matrix(&i)?;
        let n = i.k_theory().dim();
        let roundtrip = fwd.mul(&inv)?.is_identity() && inv.mul(&fwd)?.is_identity();
        out.push(CheckReport::flag("lrr-roundtrip", inst.name.clone(), roundtrip));
        let by_inversion = inv.inverse().map(|m| m == fwd).unwrap_or(false);
        out.push(CheckReport::flag("lrr-formula-vs-inversion", inst.name.clone(), by_inversion));
        out.push(CheckReport::new(
            "vv-dimension",
            inst.name.clone(),
            json!([i.invariant_dim(), vv_dimension(&inst.set)]),
            json!([n, n]),
        ));
        out.push(CheckReport::flag("beta-injective-onto-taut", inst.name.clone(), beta_rank_check(&i)?));
    }
    Ok(out)
}

fn lemma_iso(instances: &[Instance]) -> Result<Vec<CheckReport>> {
    let mut out = Vec::new();
    for inst in instances {
        let i = CyclotomicInertia::new(&inst.set);
        for &r in i.by_order().keys() {
            out.push(CheckReport::flag("lemma-iso", format!("{} r={r}", inst.name), rho_star_iso_check(&i, r)?));
        }
    }
    Ok(out)
}

fn covariance(cfg: &VerifyConfig) -> Result<Vec<CheckReport>> {
    let mut out = Vec::new();
    let z2 = FinAbGroup::cyclic(2);
    let free = GSet::new(z2.clone(), 2, vec![vec![1, 0]])?;
    let worked = EquivariantMap::new(free, GSet::trivial(&z2, 1), vec![0, 0])?;
    out.push(covariance_report("[mu2/mu2] -> B mu2", &worked)?);
    for (name, f) in cfg.maps() {
        out.push(covariance_report(&name, &f)?);
    }
    Ok(out)
}

fn covariance_report(name: &str, f: &EquivariantMap) -> Result<CheckReport> {
    let report = covariance_check(f)?;
    Ok(CheckReport::new("covariance", name, json!(report), json!({"lrr": true, "toen": true})))
}

fn hom_schemes() -> Vec<CheckReport> {
    let mut out = Vec::new();
    for r in 1..=8 {
        for n in 1..=8 {
            out.push(CheckReport::new(
                "hom-count",
                format!("r={r} n={n}"),
                json!(enumerate_hom_components(r, n).len()),
                json!(expected_component_count(r, n)),
            ));
        }
    }
    for r in 1..=8 {
        for n in 1..=6 {
            out.push(CheckReport::flag("mono-partition", format!("r={r} n={n}"), quotient_partition_check(r, n)));
            for c in enumerate_hom_components(r, n).into_iter().filter(is_mono) {
                let p = profile(&c).expect("mono");
                let name = format!("r={r} d={:?}", c.d);
                out.push(CheckReport::new(
                    "gamma-delta-w",
                    name.clone(),
                    json!(p.gamma_order),
                    json!(p.delta_order * p.w_order),
                ));
                out.push(CheckReport::flag("w-divides-phi", name.clone(), w_divides_phi(&p)));
                if n <= 5 {
                    out.push(CheckReport::new(
                        "gamma-permutation-oracle",
                        name,
                        json!([p.delta_order, p.gamma_order]),
                        json!([delta_order_by_permutations(&c), gamma_order_by_permutations(&c)]),
                    ));
                }
            }
        }
    }
    for (r, ns) in [(2, vec![1, 2]), (3, vec![2, 2]), (4, vec![1, 1, 2])] {
        let expected: u64 = ns.iter().map(|&n| expected_component_count(r, n)).product();
        out.push(CheckReport::new(
            "product-count",
            format!("r={r} n={ns:?}"),
            json!(enumerate_product_components(r, &ns).len()),
            json!(expected),
        ));
    }
    out
}

fn normal_basis(max_n: u64) -> Result<Vec<CheckReport>> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        let pass = build_family(n).map(|f| f.validate().is_ok()).unwrap_or(false);
        out.push(CheckReport::flag("normal-basis", format!("N={n:02}"), pass));
    }
    Ok(out)
}

fn rational_rr_suite(cfg: &VerifyConfig) -> Result<Vec<CheckReport>> {
    let mut out = Vec::new();
    let z2 = FinAbGroup::cyclic(2);
    {
        let i = CyclotomicInertia::new(&GSet::trivial(&z2, 1));
        let k = i.k_theory();
        let fam = build_family(2)?;
        let v = rational_rr(&i, &k.geometric_part(&k.one())?, &fam)?;
        out.push(CheckReport::new(
            "rational-rr-worked-example",
            "B mu2, geometric unit",
            json!(v.iter().map(crate::rational::to_string).collect::<Vec<_>>()),
            json!(["1", "0"]),
        ));
    }
    for inst in cfg.instances() {
        let i = CyclotomicInertia::new(&inst.set);
        let fam = build_family(inst.set.group().exponent())?;
        let phi_rank = phi_matrix(&i, &fam)?.rank();
        let rr = rational_rr_matrix(&i, &fam)?;
        let det_nonzero = rr.rows() == rr.cols() && !rr.determinant()?.is_zero();
        out.push(CheckReport::new(
            "rational-rr-bijective",
            inst.name.clone(),
            json!([phi_rank, i.orbit_count(), det_nonzero]),
            json!([i.invariant_dim(), i.k_theory().dim(), true]),
        ));
    }
    let fam = build_family(cfg.max_n.max(1))?;
    for n in divisors(fam.modulus()) {
        for r in divisors(n) {
            out.push(CheckReport::flag("phi-order-drop", format!("n={n:02} r={r:02}"), order_drop_check(n, r, &fam)?));
        }
    }
    for (name, f) in cfg.maps() {
        let fam = build_family(f.source().group().exponent())?;
        out.push(CheckReport::flag("phi-covariance", name, phi_covariance_check(&f, &fam)?));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> VerifyConfig {
        VerifyConfig {
            max_group_order: 4,
            max_set_size: 4,
            random_sets: 5,
            max_n: 8,
            algebra_max_order: 8,
            map_max_order: 4,
            maps_per_group: 3,
            ..VerifyConfig::default()
        }
    }

    #[test]
    fn every_suite_passes_on_small_ranges() {
        for s in SUITES {
            let reports = run_suite(s, &small()).unwrap();
            assert!(!reports.is_empty(), "{s}");
            for r in &reports {
                assert!(r.pass, "{s}: {}", serde_json::to_string(r).unwrap());
            }
        }
    }

    #[test]
    fn unknown_suite_is_rejected() {
        assert!(run_suite("nope", &small()).is_err());
    }

    #[test]
    fn reports_are_sorted_and_deterministic() {
        let a = run_suite("covariance", &small()).unwrap();
        let b = run_suite("covariance", &small()).unwrap();
        assert_eq!(a, b);
        assert!(a.windows(2).all(|w| (&w[0].check, &w[0].instance) <= (&w[1].check, &w[1].instance)));
    }

    #[test]
    fn permutation_types() {
        let p = Perm::from_cycles(4, &[&[0, 1], &[2, 3]]).unwrap();
        assert_eq!(permutation_type(&p, 2).d, vec![2, 2]);
        let p = Perm::from_cycles(5, &[&[0, 1, 2], &[3, 4]]).unwrap();
        assert_eq!(permutation_type(&p, 6).d, vec![2, 0, 1, 1, 1, 0]);
    }
}
