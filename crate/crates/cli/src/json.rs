//! JSON formats. Keys are emitted in sorted order and coefficients as exact strings,
//! so equal values always serialize to equal bytes.
//!
//! series: `[[[e₁, …, eₙ], "c"], …]` in graded-lex order.
//! ring: `{"variables": [...], "field": "rational" | "prime=p", "truncation": N | null}`.

use ainfinity::AInfStructure;
use hochschild::HochschildReport;
use mf_core::{Dims, MFMorphism, MatrixFactorization, Parity, RMatrix};
use ring_core::{FieldSpec, Mono, RingCtx, Scalar, TruncatedSeries};
use serde_json::{json, Map, Value};
use stabilize::KoszulData;

use crate::error::CliError;

fn bad(what: &str) -> CliError {
    CliError::Parse(format!("expected {what}"))
}

fn get<'a>(v: &'a Value, key: &str) -> Result<&'a Value, CliError> {
    v.get(key).ok_or_else(|| CliError::Parse(format!("missing key {key:?}")))
}

fn get_array<'a>(v: &'a Value, key: &str) -> Result<&'a Vec<Value>, CliError> {
    get(v, key)?.as_array().ok_or_else(|| bad(&format!("{key:?} to be an array")))
}

fn get_usize(v: &Value, key: &str) -> Result<usize, CliError> {
    get(v, key)?.as_u64().map(|u| u as usize).ok_or_else(|| bad(&format!("{key:?} to be a count")))
}

/// Serializes with sorted keys and a trailing newline.
pub fn to_canonical_string(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

pub fn field_to_json(f: FieldSpec) -> Value {
    match f {
        FieldSpec::Rational => json!("rational"),
        FieldSpec::Prime(p) => json!(format!("prime={p}")),
    }
}

pub fn field_from_json(v: &Value) -> Result<FieldSpec, CliError> {
    let s = v.as_str().ok_or_else(|| bad("a field string"))?;
    if s == "rational" {
        return Ok(FieldSpec::Rational);
    }
    let p = s
        .strip_prefix("prime=")
        .and_then(|p| p.parse().ok())
        .ok_or_else(|| CliError::Parse(format!("unknown field {s:?}")))?;
    Ok(FieldSpec::prime(p)?)
}

pub fn ring_to_json(c: &RingCtx) -> Value {
    json!({
        "variables": c.names(),
        "field": field_to_json(c.field()),
        "truncation": c.truncation(),
    })
}

pub fn ring_from_json(v: &Value) -> Result<RingCtx, CliError> {
    let names = get_array(v, "variables")?
        .iter()
        .map(|n| n.as_str().ok_or_else(|| bad("variable names")))
        .collect::<Result<Vec<_>, _>>()?;
    let field = field_from_json(get(v, "field")?)?;
    let trunc = match v.get("truncation") {
        None | Some(Value::Null) => None,
        Some(t) => Some(t.as_u64().ok_or_else(|| bad("an integer truncation"))? as u32),
    };
    Ok(RingCtx::new(&names, field, trunc)?)
}

pub fn series_to_json(s: &TruncatedSeries) -> Value {
    Value::Array(s.terms().map(|(m, c)| json!([m.exps(), c.to_string()])).collect())
}

pub fn series_from_json(ctx: &RingCtx, v: &Value) -> Result<TruncatedSeries, CliError> {
    let terms = v.as_array().ok_or_else(|| bad("a series as a list of terms"))?;
    let mut out = Vec::with_capacity(terms.len());
    for t in terms {
        let pair = t.as_array().filter(|p| p.len() == 2).ok_or_else(|| bad("[exponents, coefficient] pairs"))?;
        let exps = pair[0]
            .as_array()
            .ok_or_else(|| bad("an exponent vector"))?
            .iter()
            .map(|e| e.as_u64().and_then(|e| u16::try_from(e).ok()).ok_or_else(|| bad("small exponents")))
            .collect::<Result<Vec<_>, _>>()?;
        if exps.len() != ctx.n_vars() {
            return Err(CliError::Parse(format!("exponent vector of length {}, ring has {} variables", exps.len(), ctx.n_vars())));
        }
        let c = pair[1].as_str().ok_or_else(|| bad("a coefficient string"))?;
        out.push((Mono::from_exps(&exps), Scalar::parse(ctx.field(), c)?));
    }
    Ok(TruncatedSeries::from_terms(ctx, out))
}

/// A potential as stored in a file: `{"ring": ..., "potential": series}`.
pub fn potential_to_json(w: &TruncatedSeries) -> Value {
    json!({ "ring": ring_to_json(w.ctx()), "potential": series_to_json(w) })
}

pub fn potential_from_json(v: &Value) -> Result<TruncatedSeries, CliError> {
    let ctx = ring_from_json(get(v, "ring")?)?;
    series_from_json(&ctx, get(v, "potential")?)
}

pub fn matrix_to_json(m: &RMatrix) -> Value {
    Value::Array((0..m.rows()).map(|i| Value::Array(m.row(i).iter().map(series_to_json).collect())).collect())
}

pub fn matrix_from_json(ctx: &RingCtx, v: &Value) -> Result<RMatrix, CliError> {
    let rows = v
        .as_array()
        .ok_or_else(|| bad("a matrix as a list of rows"))?
        .iter()
        .map(|r| {
            r.as_array()
                .ok_or_else(|| bad("a matrix row"))?
                .iter()
                .map(|e| series_from_json(ctx, e))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(RMatrix::from_rows(ctx, rows)?)
}

pub fn mf_to_json(x: &MatrixFactorization) -> Value {
    json!({
        "ring": ring_to_json(x.ctx()),
        "potential": series_to_json(x.potential()),
        "rank": x.rank(),
        "phi": matrix_to_json(x.phi()),
        "psi": matrix_to_json(x.psi()),
    })
}

/// Reads a factorization without checking φψ = w·id, so that `verify` can report it.
pub fn mf_from_json(v: &Value) -> Result<MatrixFactorization, CliError> {
    let ctx = ring_from_json(get(v, "ring")?)?;
    let w = series_from_json(&ctx, get(v, "potential")?)?;
    let phi = matrix_from_json(&ctx, get(v, "phi")?)?;
    let psi = matrix_from_json(&ctx, get(v, "psi")?)?;
    let rank = get_usize(v, "rank")?;
    let x = MatrixFactorization::new(w, phi, psi)?;
    if x.rank() != rank {
        return Err(CliError::Parse(format!("declared rank {rank}, matrices have rank {}", x.rank())));
    }
    Ok(x)
}

/// `{"source", "target", "parity", "blocks": [A, B]}` with (A, B) = (f⁰, f¹) for even
/// maps and (X⁰→Y¹, X¹→Y⁰) for odd ones.
pub fn morphism_to_json(f: &MFMorphism) -> Value {
    let (a, b) = f.components();
    json!({
        "source": mf_to_json(f.source()),
        "target": mf_to_json(f.target()),
        "parity": match f.parity() { Parity::Even => "even", Parity::Odd => "odd" },
        "blocks": [matrix_to_json(&a), matrix_to_json(&b)],
    })
}

pub fn morphism_from_json(v: &Value) -> Result<MFMorphism, CliError> {
    let x = mf_from_json(get(v, "source")?)?;
    let y = mf_from_json(get(v, "target")?)?;
    let blocks = get_array(v, "blocks")?;
    if blocks.len() != 2 {
        return Err(bad("two blocks"));
    }
    let a = matrix_from_json(x.ctx(), &blocks[0])?;
    let b = matrix_from_json(x.ctx(), &blocks[1])?;
    Ok(match get(v, "parity")?.as_str() {
        Some("even") => MFMorphism::even(&x, &y, &a, &b)?,
        Some("odd") => MFMorphism::odd(&x, &y, &a, &b)?,
        _ => return Err(bad("parity \"even\" or \"odd\"")),
    })
}

pub fn koszul_to_json(k: &KoszulData) -> Value {
    json!({
        "ring": ring_to_json(k.ctx()),
        "potential": series_to_json(k.potential()),
        "generators": k.generators().iter().map(series_to_json).collect::<Vec<_>>(),
        "witnesses": k.witnesses().iter().map(series_to_json).collect::<Vec<_>>(),
    })
}

pub fn koszul_from_json(v: &Value) -> Result<KoszulData, CliError> {
    let ctx = ring_from_json(get(v, "ring")?)?;
    let w = series_from_json(&ctx, get(v, "potential")?)?;
    let list = |key| -> Result<Vec<TruncatedSeries>, CliError> {
        get_array(v, key)?.iter().map(|s| series_from_json(&ctx, s)).collect()
    };
    let k = KoszulData::new(&w, list("generators")?, list("witnesses")?).map_err(|e| match e {
        stabilize::StabilizeError::WitnessMismatch { .. } => CliError::Verification(e.to_string()),
        e => e.into(),
    })?;
    Ok(k)
}

pub fn dims_to_json(d: Dims) -> Value {
    json!({ "even": d.even, "odd": d.odd })
}

/// `{"basis", "degrees", "field", "max_arity", "products": [{"arity", "args", "value"}]}`
/// listing the nonzero products; `value` holds all coordinates.
pub fn ainf_to_json(s: &AInfStructure) -> Value {
    let products: Vec<Value> = s
        .nonzero_products()
        .map(|(args, v)| {
            let mut dense = vec!["0".to_string(); s.dim()];
            for (i, c) in v {
                dense[*i] = c.to_string();
            }
            json!({ "arity": args.len(), "args": args, "value": dense })
        })
        .collect();
    json!({
        "basis": s.basis(),
        "degrees": (0..s.dim()).map(|i| s.degree(i)).collect::<Vec<_>>(),
        "field": field_to_json(s.field()),
        "max_arity": s.max_arity(),
        "products": products,
    })
}

pub fn ainf_from_json(v: &Value) -> Result<AInfStructure, CliError> {
    let field = field_from_json(get(v, "field")?)?;
    let basis = get_array(v, "basis")?
        .iter()
        .map(|b| b.as_str().map(str::to_string).ok_or_else(|| bad("basis labels")))
        .collect::<Result<Vec<_>, _>>()?;
    let degrees = get_array(v, "degrees")?
        .iter()
        .map(|d| d.as_u64().map(|d| d as u32).ok_or_else(|| bad("integer degrees")))
        .collect::<Result<Vec<_>, _>>()?;
    if degrees.len() != basis.len() {
        return Err(bad("one degree per basis element"));
    }
    let max_arity = get_usize(v, "max_arity")?;
    let mut values = Vec::new();
    for p in get_array(v, "products")? {
        let args = get_array(p, "args")?
            .iter()
            .map(|a| a.as_u64().map(|a| a as usize).ok_or_else(|| bad("integer args")))
            .collect::<Result<Vec<_>, _>>()?;
        if get_usize(p, "arity")? != args.len() {
            return Err(bad("arity equal to the number of args"));
        }
        let value = get_array(p, "value")?
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let c = c.as_str().ok_or_else(|| bad("coefficient strings"))?;
                Ok((i, Scalar::parse(field, c)?))
            })
            .collect::<Result<Vec<_>, CliError>>()?;
        values.push((args, value));
    }
    Ok(AInfStructure::from_parts(field, basis, degrees, max_arity, values)?)
}

pub fn hh_to_json(r: &HochschildReport) -> Value {
    json!({
        "hh_even": r.hh_even,
        "hh_odd": r.hh_odd,
        "milnor": r.milnor,
        "tyurina": r.tyurina,
        "hh_homology_parity": r.homology_parity,
        "hp": r.hp,
    })
}

pub fn hh_from_json(v: &Value) -> Result<HochschildReport, CliError> {
    Ok(HochschildReport {
        hh_even: get_usize(v, "hh_even")?,
        hh_odd: get_usize(v, "hh_odd")?,
        milnor: get_usize(v, "milnor")?,
        tyurina: get_usize(v, "tyurina")?,
        homology_parity: get_usize(v, "hh_homology_parity")?,
        hp: get_usize(v, "hp")?,
        stabilized_at: v.get("stabilized_at").and_then(Value::as_u64).unwrap_or(0) as u32,
    })
}

/// Wraps a map so callers can add keys before printing.
pub fn object(pairs: impl IntoIterator<Item = (&'static str, Value)>) -> Value {
    Value::Object(pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect::<Map<_, _>>())
}
