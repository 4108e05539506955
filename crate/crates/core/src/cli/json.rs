//! Lossless JSON encodings of exact values.

use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::algebra::{Cyclotomic, HermitianForm, Matrix, Rational};
use crate::error::{Error, Result};
use crate::hodge::HodgeVector;

pub fn rational_str(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// `{"order": k, "coeffs": ["num/den", ...]}` in the reduced power basis.
pub fn cyclo(c: &Cyclotomic) -> Value {
    json!({
        "order": c.order(),
        "coeffs": c.coeffs().iter().map(rational_str).collect::<Vec<_>>(),
    })
}

pub fn vector(v: &[Cyclotomic]) -> Value {
    Value::Array(v.iter().map(cyclo).collect())
}

pub fn matrix(m: &Matrix) -> Value {
    Value::Array((0..m.rows()).map(|i| vector(m.row(i))).collect())
}

pub fn hodge(h: &HodgeVector) -> Value {
    json!({
        "weight": h.weight,
        "values": h.values,
        "primitive": h.primitive,
        "entries": h.entries().map(|(p, q, v)| json!({"p": p, "q": q, "h": v})).collect::<Vec<_>>(),
    })
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::InvalidInput(format!("cannot parse rational {:?}", s));
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d == BigInt::from(0) {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

/// Accepts an integer, a `"num/den"` string, or `{order, coeffs}` with
/// coefficients of `1, ζ, ζ², …` in any length.
pub fn parse_cyclo(v: &Value) -> Result<Cyclotomic> {
    match v {
        Value::Number(n) => {
            let i = n
                .as_i64()
                .ok_or_else(|| Error::InvalidInput(format!("{} is not an integer", n)))?;
            Ok(Cyclotomic::from_int(i))
        }
        Value::String(s) => Ok(Cyclotomic::from_rational(parse_rational(s)?)),
        Value::Object(o) => {
            let order = o
                .get("order")
                .and_then(Value::as_u64)
                .filter(|&k| (1..=10_000).contains(&k))
                .ok_or_else(|| Error::InvalidInput("cyclotomic needs a positive order".into()))?;
            let coeffs = o
                .get("coeffs")
                .and_then(Value::as_array)
                .ok_or_else(|| Error::InvalidInput("cyclotomic needs coeffs".into()))?
                .iter()
                .map(|c| match c {
                    Value::String(s) => parse_rational(s),
                    Value::Number(n) => n
                        .as_i64()
                        .map(|i| Rational::from_integer(i.into()))
                        .ok_or_else(|| Error::InvalidInput(format!("bad coefficient {}", n))),
                    other => Err(Error::InvalidInput(format!("bad coefficient {}", other))),
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(Cyclotomic::from_power_coeffs(order as u32, &coeffs))
        }
        other => Err(Error::InvalidInput(format!(
            "cannot parse {} as a cyclotomic number",
            other
        ))),
    }
}

pub fn parse_vector(v: &Value) -> Result<Vec<Cyclotomic>> {
    v.as_array()
        .ok_or_else(|| Error::InvalidInput("expected an array".into()))?
        .iter()
        .map(parse_cyclo)
        .collect()
}

pub fn parse_matrix(v: &Value) -> Result<Matrix> {
    let rows = v
        .as_array()
        .ok_or_else(|| Error::InvalidInput("expected an array of rows".into()))?
        .iter()
        .map(parse_vector)
        .collect::<Result<Vec<_>>>()?;
    let cols = rows.first().map_or(0, Vec::len);
    if rows.is_empty() || rows.iter().any(|r| r.len() != cols) {
        return Err(Error::DimensionMismatch(
            "matrix rows must be non-empty and equal length".into(),
        ));
    }
    Ok(Matrix::from_rows(rows))
}

pub fn parse_form(v: Option<&Value>, dim: usize) -> Result<HermitianForm> {
    match v {
        None => Ok(HermitianForm::identity(dim)),
        Some(v) => HermitianForm::new(parse_matrix(v)?),
    }
}

pub fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key)
        .ok_or_else(|| Error::InvalidInput(format!("missing field {:?}", key)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_round_trip() {
        let z = Cyclotomic::zeta(12);
        let c = &(&z * &Cyclotomic::from_rational(Rational::new(3.into(), 7.into())))
            + &Cyclotomic::from_int(-2);
        assert_eq!(parse_cyclo(&cyclo(&c)).unwrap(), c);
        assert_eq!(
            parse_cyclo(&json!("-5/10")).unwrap(),
            Cyclotomic::from_rational(Rational::new((-1).into(), 2.into()))
        );
        assert_eq!(parse_cyclo(&json!(4)).unwrap(), Cyclotomic::from_int(4));
        // ζ3² written in the unreduced basis
        let v = json!({"order": 3, "coeffs": ["0", "0", "1"]});
        assert_eq!(parse_cyclo(&v).unwrap(), Cyclotomic::zeta(3).pow(2));
        assert!(parse_cyclo(&json!("1/0")).is_err());
    }
}
