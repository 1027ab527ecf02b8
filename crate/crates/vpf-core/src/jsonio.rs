//! JSON views of the public data structures. Integers and rationals are
//! rendered as decimal strings ("p/q" for non-integers) so values survive any
//! size without loss.

use num_bigint::BigInt;
use num_traits::One;
use serde_json::{json, Map, Value};

use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::genfunc::{DenominatorFactor, FractionSum, GeneratingFraction};
use crate::geometry::Cone;
use crate::laurent::{IntVector, LaurentPoly};
use crate::pfd::PfdResult;
use crate::quasi::{BasicQuasiNumber, QuasiNumber, QuasiPolynomial};

pub fn int_to_json(v: &BigInt) -> Value {
    Value::String(v.to_string())
}

pub fn int_from_json(v: &Value) -> Result<BigInt> {
    let s = v
        .as_str()
        .ok_or_else(|| Error::Parse("expected integer string".into()))?;
    s.parse()
        .map_err(|_| Error::Parse(format!("bad integer `{s}`")))
}

pub fn rational_to_json(v: &Rational) -> Value {
    if v.is_integer() {
        Value::String(v.numer().to_string())
    } else {
        Value::String(format!("{}/{}", v.numer(), v.denom()))
    }
}

pub fn rational_from_json(v: &Value) -> Result<Rational> {
    let s = v
        .as_str()
        .ok_or_else(|| Error::Parse("expected rational string".into()))?;
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: BigInt = num
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational `{s}`")))?;
    let d: BigInt = den
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational `{s}`")))?;
    Ok(Rational::new(n, d))
}

pub fn vector_to_json(v: &IntVector) -> Value {
    Value::Array(v.coords().iter().map(int_to_json).collect())
}

pub fn vector_from_json(v: &Value) -> Result<IntVector> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::Parse("expected vector array".into()))?;
    Ok(IntVector::new(
        arr.iter().map(int_from_json).collect::<Result<Vec<_>>>()?,
    ))
}

pub fn poly_to_json(p: &LaurentPoly) -> Value {
    Value::Array(
        p.terms()
            .map(|(e, c)| json!({"exponent": vector_to_json(e), "coeff": rational_to_json(c)}))
            .collect(),
    )
}

pub fn poly_from_json(v: &Value, dim: usize) -> Result<LaurentPoly> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::Parse("expected polynomial array".into()))?;
    let mut p = LaurentPoly::zero(dim);
    for t in arr {
        let e = vector_from_json(&t["exponent"])?;
        let c = rational_from_json(&t["coeff"])?;
        p.add_term(e, c);
    }
    Ok(p)
}

pub fn fraction_to_json(f: &GeneratingFraction) -> Value {
    json!({
        "numerator": poly_to_json(&f.numerator),
        "denominators": f.denominators().iter().map(|d| json!({
            "vector": vector_to_json(&d.vector()),
            "multiplicity": d.multiplicity(),
        })).collect::<Vec<_>>(),
    })
}

pub fn fraction_from_json(v: &Value, dim: usize) -> Result<GeneratingFraction> {
    let numerator = poly_from_json(&v["numerator"], dim)?;
    let dens = v["denominators"]
        .as_array()
        .ok_or_else(|| Error::Parse("expected denominator array".into()))?
        .iter()
        .map(|d| {
            let vec = vector_from_json(&d["vector"])?;
            let m = d["multiplicity"]
                .as_u64()
                .ok_or_else(|| Error::Parse("expected multiplicity".into()))?;
            Ok(DenominatorFactor::new(vec, 1, m as u32))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(GeneratingFraction::new(numerator, dens))
}

pub fn fraction_sum_to_json(s: &FractionSum) -> Value {
    json!({
        "dimension": s.dim(),
        "fractions": s.fractions.iter().map(fraction_to_json).collect::<Vec<_>>(),
    })
}

pub fn fraction_sum_from_json(v: &Value) -> Result<FractionSum> {
    let dim = v["dimension"]
        .as_u64()
        .ok_or_else(|| Error::Parse("expected dimension".into()))? as usize;
    let fr = v["fractions"]
        .as_array()
        .ok_or_else(|| Error::Parse("expected fractions".into()))?
        .iter()
        .map(|f| fraction_from_json(f, dim))
        .collect::<Result<Vec<_>>>()?;
    Ok(FractionSum::new(dim, fr))
}

pub fn pfd_to_json(p: &PfdResult) -> Value {
    json!({
        "fractions": fraction_sum_to_json(&p.fractions),
        "support": p.support.iter().map(vector_to_json).collect::<Vec<_>>(),
        "cone_support": p.cone_support.iter()
            .map(|c| Value::Array(c.iter().map(vector_to_json).collect()))
            .collect::<Vec<_>>(),
    })
}

pub fn cone_to_json(c: &Cone) -> Value {
    json!({
        "generators": c.generators().iter().map(vector_to_json).collect::<Vec<_>>(),
        "normals": c.facet_normals().iter().map(vector_to_json).collect::<Vec<_>>(),
    })
}

pub fn cone_from_json(v: &Value, dim: usize) -> Result<Cone> {
    let gens = v["generators"]
        .as_array()
        .ok_or_else(|| Error::Parse("expected generators".into()))?
        .iter()
        .map(vector_from_json)
        .collect::<Result<Vec<_>>>()?;
    Ok(Cone::from_generators(dim, &gens))
}

pub fn basic_quasinumber_to_json(b: &BasicQuasiNumber) -> Value {
    let (m, c) = b.system();
    let rows: Vec<Value> = (0..m.rows()).map(|i| vector_to_json(&m.row(i))).collect();
    json!({
        "M": rows,
        "c": c.iter().map(int_to_json).collect::<Vec<_>>(),
        "d": int_to_json(b.modulus()),
    })
}

pub fn quasinumber_to_json(q: &QuasiNumber) -> Value {
    Value::Array(
        q.terms()
            .iter()
            .map(|(c, b)| json!({"coeff": rational_to_json(c), "tau": basic_quasinumber_to_json(b)}))
            .collect(),
    )
}

pub fn quasipoly_to_json(p: &QuasiPolynomial) -> Value {
    json!({
        "dimension": p.dim(),
        "terms": p.terms().map(|(e, q)| json!({
            "monomial": vector_to_json(e),
            "coefficient": quasinumber_to_json(q),
        })).collect::<Vec<_>>(),
    })
}

pub fn quasipoly_from_json(v: &Value) -> Result<QuasiPolynomial> {
    let dim = v["dimension"]
        .as_u64()
        .ok_or_else(|| Error::Parse("expected dimension".into()))? as usize;
    let mut out = QuasiPolynomial::zero(dim);
    for t in v["terms"]
        .as_array()
        .ok_or_else(|| Error::Parse("expected terms".into()))?
    {
        let e = vector_from_json(&t["monomial"])?;
        let mut terms = Vec::new();
        for tt in t["coefficient"]
            .as_array()
            .ok_or_else(|| Error::Parse("expected coefficient terms".into()))?
        {
            let coeff = rational_from_json(&tt["coeff"])?;
            let tau = &tt["tau"];
            let rows: Vec<IntVector> = tau["M"]
                .as_array()
                .ok_or_else(|| Error::Parse("expected M".into()))?
                .iter()
                .map(vector_from_json)
                .collect::<Result<Vec<_>>>()?;
            let c: Vec<BigInt> = tau["c"]
                .as_array()
                .ok_or_else(|| Error::Parse("expected c".into()))?
                .iter()
                .map(int_from_json)
                .collect::<Result<Vec<_>>>()?;
            let d = int_from_json(&tau["d"])?;
            let full_rows: Vec<Vec<BigInt>> = rows
                .iter()
                .zip(&c)
                .map(|(r, ci)| {
                    let mut row = r.coords().to_vec();
                    row.push(ci.clone());
                    row
                })
                .collect();
            let b = if d.is_one() {
                BasicQuasiNumber::one(dim)
            } else {
                BasicQuasiNumber::from_rows(dim, full_rows, d)
            };
            terms.push((coeff, b));
        }
        out.add_term(e, QuasiNumber::from_terms(dim, terms));
    }
    Ok(out)
}

fn obj(v: Value) -> Map<String, Value> {
    match v {
        Value::Object(m) => m,
        _ => unreachable!(),
    }
}

/// Stable top-level document for a full decomposition + chamber run.
pub fn analysis_to_json(
    pfd: &PfdResult,
    formulas: &[(Cone, QuasiPolynomial)],
) -> Value {
    let mut root = obj(json!({}));
    root.insert("decomposition".into(), pfd_to_json(pfd));
    root.insert(
        "chambers".into(),
        Value::Array(
            formulas
                .iter()
                .map(|(c, q)| {
                    json!({
                        "cone": cone_to_json(c),
                        "formula": quasipoly_to_json(q),
                    })
                })
                .collect(),
        ),
    );
    Value::Object(root)
}
