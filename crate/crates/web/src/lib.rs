//! Three operations for the demo page. Each takes plain text from a form
//! and returns a JSON string.

use serde_json::json;
use wasm_bindgen::prelude::*;

use cyclo_rr::abelian::{factorize_group_algebra, FinAbGroup};
use cyclo_rr::gl_types::{enumerate_hom_components, expected_component_count, is_mono, profile};
use cyclo_rr::mackey::{res_ind_endo, w_order, Perm, PermGroup};

fn numbers(text: &str) -> Result<Vec<u64>, String> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<u64>().map_err(|_| format!("{s:?} is not a nonnegative integer")))
        .collect()
}

/// `"(0 1 2)(3 4)"` as a permutation of `0..degree`.
pub fn parse_cycles(degree: usize, text: &str) -> Result<Perm, String> {
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    for chunk in text.split('(').map(str::trim).filter(|s| !s.is_empty()) {
        let body = chunk.strip_suffix(')').ok_or_else(|| format!("unclosed cycle in {text:?}"))?;
        cycles.push(numbers(body)?.into_iter().map(|x| x as usize).collect());
    }
    let refs: Vec<&[usize]> = cycles.iter().map(Vec::as_slice).collect();
    Perm::from_cycles(degree, &refs).map_err(|e| e.to_string())
}

/// Factors of `Q[A^]` for `A = Z/n_1 x ... x Z/n_k`, from `"n_1, ..., n_k"`.
pub fn decompose_json(factors: &str) -> Result<String, String> {
    let group = FinAbGroup::new(numbers(factors)?).map_err(|e| e.to_string())?;
    if group.order() > 512 {
        return Err(format!("|A| = {} is too large for the demo", group.order()));
    }
    let out: Vec<_> = factorize_group_algebra(&group)
        .iter()
        .map(|f| {
            json!({
                "sigma_order": f.sigma.order,
                "generator": f.sigma.generator,
                "field_degree": f.field_degree(),
                "idempotent": f.idempotent.to_json()["coeffs"],
            })
        })
        .collect();
    Ok(json!({ "group": group.to_string(), "order": group.order(), "factors": out }).to_string())
}

/// Type profiles of the dual cyclic subgroups `mu_r -> GL_n`.
pub fn profiles_json(r: u64, n: u64) -> Result<String, String> {
    if r == 0 || r > 12 || n > 8 {
        return Err("the demo allows 1 <= r <= 12 and n <= 8".into());
    }
    let components = enumerate_hom_components(r, n);
    let mono: Vec<_> = components
        .iter()
        .filter(|c| is_mono(c))
        .map(|c| profile(c).map_err(|e| e.to_string()))
        .collect::<Result<_, _>>()?;
    Ok(json!({
        "components": components.len(),
        "expected": expected_component_count(r, n),
        "mono": mono,
    })
    .to_string())
}

/// `Res . Ind` on `R(H)` for `H = <h>` in the group generated by
/// `generators` (cycle notation, separated by `;`).
pub fn mackey_json(degree: usize, generators: &str, h: &str) -> Result<String, String> {
    if degree == 0 || degree > 7 {
        return Err("the demo allows degrees 1 to 7".into());
    }
    let gens = generators
        .split(';')
        .filter(|s| !s.trim().is_empty())
        .map(|s| parse_cycles(degree, s))
        .collect::<Result<Vec<_>, _>>()?;
    let g = PermGroup::generate(degree, gens).map_err(|e| e.to_string())?;
    let sub = g.cyclic_subgroup(&parse_cycles(degree, h)?).map_err(|e| e.to_string())?;
    let m = res_ind_endo(&g, &sub).map_err(|e| e.to_string())?;
    Ok(json!({
        "group_order": g.order(),
        "subgroup_order": sub.order,
        "w_order": w_order(&g, &sub).map_err(|e| e.to_string())?,
        "matrix": m.to_strings(),
    })
    .to_string())
}

#[wasm_bindgen]
pub fn decompose(factors: &str) -> Result<String, JsValue> {
    decompose_json(factors).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn profiles(r: u32, n: u32) -> Result<String, JsValue> {
    profiles_json(r.into(), n.into()).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn mackey(degree: u32, generators: &str, h: &str) -> Result<String, JsValue> {
    mackey_json(degree as usize, generators, h).map_err(|e| JsValue::from_str(&e))
}
