use serde_json::{json, Value};

use super::monomial::Monomial;
use super::poly::Polynomial;
use super::rational::{format_rational, parse_rational};
use super::rx::RationalExpression;
use super::table::VariableTable;
use crate::error::{Error, Result};

fn terms_to_json(p: &Polynomial) -> Value {
    Value::Array(
        p.terms()
            .iter()
            .map(|(m, c)| {
                let mut row: Vec<Value> = m.exps().iter().map(|&e| json!(e)).collect();
                row.push(json!(format_rational(c)));
                Value::Array(row)
            })
            .collect(),
    )
}

fn terms_from_json(v: &Value, table: &VariableTable) -> Result<Polynomial> {
    let bad = |w: &str| Error::Parse(format!("polynomial json: {w}"));
    let rows = v.as_array().ok_or_else(|| bad("expected array"))?;
    let mut terms = Vec::with_capacity(rows.len());
    for row in rows {
        let row = row.as_array().ok_or_else(|| bad("expected row array"))?;
        if row.len() != table.len() + 1 {
            return Err(bad("row length differs from variable count + 1"));
        }
        let mut exps = Vec::with_capacity(table.len());
        for e in &row[..table.len()] {
            let e = e.as_i64().ok_or_else(|| bad("exponent must be an integer"))?;
            exps.push(i32::try_from(e).map_err(|_| bad("exponent out of range"))?);
        }
        let c = row[table.len()].as_str().ok_or_else(|| bad("coefficient must be a string"))?;
        terms.push((Monomial::from_exps(exps), parse_rational(c)?));
    }
    Ok(Polynomial::from_terms(table, terms))
}

fn table_from_json(v: &Value) -> Result<VariableTable> {
    let vars = v
        .get("vars")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("json: missing vars".into()))?;
    let names = vars
        .iter()
        .map(|x| x.as_str().map(str::to_string).ok_or_else(|| Error::Parse("json: bad var name".into())))
        .collect::<Result<Vec<_>>>()?;
    VariableTable::from_names(names)
}

pub fn poly_to_json(p: &Polynomial) -> Value {
    json!({ "vars": p.table().names(), "terms": terms_to_json(p) })
}

pub fn poly_from_json(v: &Value) -> Result<Polynomial> {
    let table = table_from_json(v)?;
    terms_from_json(v.get("terms").ok_or_else(|| Error::Parse("json: missing terms".into()))?, &table)
}

/// `{vars:[...], num:[[exps…, "a/b"]…], den:[…]}`.
pub fn rx_to_json(a: &RationalExpression) -> Value {
    json!({
        "vars": a.table().names(),
        "num": terms_to_json(a.num()),
        "den": terms_to_json(a.den()),
    })
}

pub fn rx_from_json(v: &Value) -> Result<RationalExpression> {
    let table = table_from_json(v)?;
    let num = terms_from_json(v.get("num").ok_or_else(|| Error::Parse("json: missing num".into()))?, &table)?;
    let den = terms_from_json(v.get("den").ok_or_else(|| Error::Parse("json: missing den".into()))?, &table)?;
    RationalExpression::new(num, den)
}
