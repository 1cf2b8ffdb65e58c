//! Command dispatch for the `cyclo-rr` binary. Every verb reads one JSON
//! document and returns one JSON document.

use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::{json, Value};

use cyclo_rr::abelian::{factorize_group_algebra, FinAbGroup};
use cyclo_rr::equivariant::GSet;
use cyclo_rr::gl_types::{
    enumerate_hom_components, expected_component_count, is_mono, profile, quotient_partition_check,
};
use cyclo_rr::lrr::{
    comp_check, is_aut_invariant, lrr_forward, lrr_inverse, CyclotomicInertia, TwistedClass,
};
use cyclo_rr::mackey::{res_ind_endo, w_order, Perm, PermGroup, PermGroupSpec};
use cyclo_rr::rational_rr::{build_family, rational_rr, rational_rr_json, NormalBasisFamily};
use cyclo_rr::verify::{run_suite, VerifyConfig};

#[derive(Debug)]
pub enum CliError {
    /// Unreadable or schema-violating input; exit status 1.
    Input(String),
    /// A check failed; the payload is the full report. Exit status 2.
    CheckFailed(Value),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 1,
            CliError::CheckFailed(_) => 2,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

fn at(pointer: &str) -> impl Fn(cyclo_rr::Error) -> CliError + '_ {
    move |e| CliError::Input(format!("{pointer}: {e}"))
}

/// Parses `text` as `T`, reporting the path of the offending field.
pub fn parse<T: DeserializeOwned>(text: &str) -> CliResult<T> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let pointer = if path == "." { "/".to_string() } else { format!("/{}", path.replace('.', "/")) };
        CliError::Input(format!("{pointer}: {}", e.inner()))
    })
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ClassInput {
    gset: GSet,
    class: Value,
    #[serde(default)]
    family: Option<NormalBasisFamily>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TwistedInput {
    gset: GSet,
    twisted: Value,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MackeyInput {
    group: PermGroupSpec,
    /// Generator of the cyclic subgroup `H`.
    generator: Vec<usize>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct HomInput {
    r: u64,
    n: u64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FamilyInput {
    #[serde(rename = "N")]
    n: u64,
}

pub fn decompose(input: &str) -> CliResult<Value> {
    let group: FinAbGroup = parse(input)?;
    let factors: Vec<Value> = factorize_group_algebra(&group)
        .iter()
        .map(|f| {
            json!({
                "sigma_order": f.sigma.order,
                "generator": f.sigma.generator,
                "field_degree": f.field_degree(),
                "idempotent": f.idempotent.to_json(),
            })
        })
        .collect();
    Ok(json!({ "group": group, "factors": factors }))
}

pub fn inertia(input: &str) -> CliResult<Value> {
    let x: GSet = parse(input)?;
    let i = CyclotomicInertia::new(&x);
    let orbits = i.k_theory().orbits();
    let reps = i.representatives();
    let components: Vec<Value> = i
        .components()
        .iter()
        .enumerate()
        .map(|(c, comp)| {
            json!({
                "h": comp.h,
                "order": comp.order,
                "orbits": comp.orbits.iter().map(|&o| orbits[o].id()).collect::<Vec<_>>(),
                "representative": reps.contains(&c),
            })
        })
        .collect();
    Ok(json!({
        "components": components,
        "k_dim": i.k_theory().dim(),
        "invariant_dim": i.invariant_dim(),
    }))
}

pub fn lrr(input: &str) -> CliResult<Value> {
    let inp: ClassInput = parse(input)?;
    let i = CyclotomicInertia::new(&inp.gset);
    let a = i.k_theory().class_from_json(&inp.class).map_err(at("/class"))?;
    let w = lrr_forward(&i, &a).map_err(at("/class"))?;
    Ok(w.to_json(&i))
}

pub fn lrr_inverse_cmd(input: &str) -> CliResult<Value> {
    let inp: TwistedInput = parse(input)?;
    let i = CyclotomicInertia::new(&inp.gset);
    let w = TwistedClass::from_json(&i, &inp.twisted).map_err(at("/twisted"))?;
    if !is_aut_invariant(&i, &w).map_err(at("/twisted"))? {
        return Err(CliError::Input("/twisted: class is not Aut-invariant".into()));
    }
    let a = lrr_inverse(&i, &w).map_err(at("/twisted"))?;
    Ok(i.k_theory().class_to_json(&a))
}

pub fn comp_check_cmd(input: &str) -> CliResult<Value> {
    let x: GSet = parse(input)?;
    let i = CyclotomicInertia::new(&x);
    let reports = comp_check(&i).map_err(at("/"))?;
    let pass = reports.iter().all(|r| r.pass);
    let out = json!({ "pass": pass, "orders": reports });
    if pass {
        Ok(out)
    } else {
        Err(CliError::CheckFailed(out))
    }
}

pub fn mackey(input: &str) -> CliResult<Value> {
    let inp: MackeyInput = parse(input)?;
    let g = PermGroup::from_spec(&inp.group).map_err(at("/group"))?;
    let h = g.cyclic_subgroup(&Perm(inp.generator)).map_err(at("/generator"))?;
    let m = res_ind_endo(&g, &h).map_err(at("/"))?;
    let basis: Vec<String> = (0..h.order)
        .map(|k| match k {
            0 => "1".to_string(),
            1 => "t".to_string(),
            _ => format!("t^{k}"),
        })
        .collect();
    Ok(json!({
        "subgroup_order": h.order,
        "w_order": w_order(&g, &h).map_err(at("/"))?,
        "basis": basis,
        "matrix": m.to_strings(),
    }))
}

pub fn homschemes(input: &str) -> CliResult<Value> {
    let HomInput { r, n } = parse(input)?;
    if r == 0 {
        return Err(CliError::Input("/r: must be positive".into()));
    }
    let components: Vec<Value> = enumerate_hom_components(r, n)
        .into_iter()
        .map(|c| {
            let p = if is_mono(&c) { profile(&c).ok() } else { None };
            json!({ "component": c, "mono": is_mono(&c), "profile": p })
        })
        .collect();
    Ok(json!({
        "r": r,
        "n": n,
        "count": components.len(),
        "expected_count": expected_component_count(r, n),
        "mono_partition": quotient_partition_check(r, n),
        "components": components,
    }))
}

pub fn normal_basis(input: &str) -> CliResult<Value> {
    let FamilyInput { n } = parse(input)?;
    if n == 0 {
        return Err(CliError::Input("/N: must be positive".into()));
    }
    let fam = build_family(n).map_err(at("/N"))?;
    Ok(serde_json::to_value(fam).expect("families serialize"))
}

pub fn rational_rr_cmd(input: &str) -> CliResult<Value> {
    let inp: ClassInput = parse(input)?;
    let i = CyclotomicInertia::new(&inp.gset);
    let a = i.k_theory().class_from_json(&inp.class).map_err(at("/class"))?;
    let fam = match inp.family {
        Some(f) => f,
        None => build_family(inp.gset.group().exponent()).map_err(at("/gset/group"))?,
    };
    let v = rational_rr(&i, &a, &fam).map_err(at("/family"))?;
    Ok(json!({ "family": fam, "values": rational_rr_json(&i, &v) }))
}

pub fn verify(suite: &str, cfg: &VerifyConfig) -> CliResult<Value> {
    let reports = run_suite(suite, cfg).map_err(|e| CliError::Input(format!("--suite: {e}")))?;
    let failures = reports.iter().filter(|r| !r.pass).count();
    let out = json!({
        "suite": suite,
        "config": {
            "seed": cfg.seed,
            "max_group_order": cfg.max_group_order,
            "max_set_size": cfg.max_set_size,
            "max_n": cfg.max_n,
        },
        "checks": reports.len(),
        "failures": failures,
        "pass": failures == 0,
        "reports": reports,
    });
    if failures == 0 {
        Ok(out)
    } else {
        Err(CliError::CheckFailed(out))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn message(e: CliError) -> String {
        match e {
            CliError::Input(m) => m,
            CliError::CheckFailed(v) => v.to_string(),
        }
    }

    #[test]
    fn parse_errors_carry_a_pointer() {
        let e = parse::<HomInput>(r#"{"r": 2, "n": "x"}"#).err().unwrap();
        assert!(message(e).starts_with("/n:"));
        let e = parse::<ClassInput>(r#"{"gset": {"group": {"cyclic_factors": [2]}, "points": 1, "action": {"0": [0]}}}"#)
            .err()
            .unwrap();
        assert!(message(e).contains("class"));
        let e = parse::<FamilyInput>(r#"{"N": 3, "extra": 1}"#).err().unwrap();
        assert!(message(e).contains("extra"));
    }

    #[test]
    fn decompose_reports_every_factor() {
        let v = decompose(r#"{"cyclic_factors": [2, 2]}"#).unwrap();
        assert_eq!(v["factors"].as_array().unwrap().len(), 4);
    }
}
