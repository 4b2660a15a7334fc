//! JSON encodings. Rationals are strings `"p"` or `"p/q"`; radicals are
//! `{coeff, radicand}`; subsets and exponent vectors are keys like `"[1,2]"`.

use std::collections::BTreeMap;
use std::str::FromStr;

use bruhat_core::geocoeff::{GeometricCoefficients, Provenance};
use bruhat_core::rootsys::Subset;
use bruhat_core::{MPoly, QVector, RadScalar, Rational, RootSystemData, RootSystemId};
use num_bigint::BigInt;
use serde_json::{json, Map, Value};

pub const SCHEMA: u64 = 1;

pub fn rational(q: &Rational) -> Value {
    Value::String(q.to_string())
}

pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let q = BigInt::from_str(q.trim()).ok()?;
            if q == BigInt::from(0) {
                return None;
            }
            Some(Rational::new(BigInt::from_str(p.trim()).ok()?, q))
        }
        None => Some(Rational::from_integer(BigInt::from_str(s).ok()?)),
    }
}

/// An exact JSON number.
pub fn integer(n: &BigInt) -> Value {
    serde_json::from_str(&n.to_string()).expect("integers are valid JSON numbers")
}

pub fn radical(r: &RadScalar) -> Value {
    json!({ "coeff": rational(r.coeff()), "radicand": rational(&r.radicand()) })
}

pub fn vector(v: &QVector) -> Value {
    Value::Array(v.entries().iter().map(rational).collect())
}

pub fn subset_key(j: Subset) -> String {
    let idx: Vec<String> = j.indices().iter().map(|i| i.to_string()).collect();
    format!("[{}]", idx.join(","))
}

pub fn parse_subset_key(s: &str, n: usize) -> Option<Subset> {
    let inner = s.trim().strip_prefix('[')?.strip_suffix(']')?;
    parse_index_list(inner, n)
}

/// `"1,2"` or `""` as a subset of `{1..n}`.
pub fn parse_index_list(s: &str, n: usize) -> Option<Subset> {
    let idx: Vec<usize> = if s.trim().is_empty() {
        Vec::new()
    } else {
        s.split(',').map(|t| t.trim().parse().ok()).collect::<Option<_>>()?
    };
    Subset::from_indices(&idx, n).ok()
}

pub fn mpoly(p: &MPoly) -> Value {
    let mut m = Map::new();
    for (e, c) in p.terms() {
        let key: Vec<String> = e.iter().map(|x| x.to_string()).collect();
        m.insert(format!("[{}]", key.join(",")), rational(c));
    }
    Value::Object(m)
}

pub fn coefficients(data: &RootSystemData, c: &GeometricCoefficients) -> Value {
    let mut mu = Map::new();
    let mut prov = Map::new();
    let mut gram = Map::new();
    for (j, v) in &c.mu_prime {
        let k = subset_key(*j);
        mu.insert(k.clone(), rational(v));
        prov.insert(k.clone(), Value::String(c.provenance[j].as_str().into()));
        gram.insert(k, rational(&bruhat_core::volume::gram_of(data, *j)));
    }
    json!({
        "schema": SCHEMA,
        "system": c.system.to_string(),
        "version": bruhat_core::VERSION,
        "mu_prime": mu,
        "provenance": prov,
        "gram": gram,
    })
}

pub fn parse_coefficients(v: &Value) -> Result<GeometricCoefficients, String> {
    let system: RootSystemId = v["system"]
        .as_str()
        .ok_or("missing system")?
        .parse()
        .map_err(|e: bruhat_core::Error| e.to_string())?;
    let n = system.rank();
    let obj = |name: &str| v[name].as_object().ok_or(format!("missing {name}"));
    let mut mu_prime = BTreeMap::new();
    for (k, val) in obj("mu_prime")? {
        let j = parse_subset_key(k, n).ok_or(format!("bad subset key {k}"))?;
        let q = val.as_str().and_then(parse_rational).ok_or(format!("bad rational for {k}"))?;
        mu_prime.insert(j, q);
    }
    let mut provenance = BTreeMap::new();
    if let Some(p) = v["provenance"].as_object() {
        for (k, val) in p {
            let j = parse_subset_key(k, n).ok_or(format!("bad subset key {k}"))?;
            let pv = val.as_str().and_then(Provenance::parse).ok_or(format!("bad provenance for {k}"))?;
            provenance.insert(j, pv);
        }
    }
    let c = GeometricCoefficients {
        system,
        mu_prime,
        provenance,
    };
    if !c.is_complete() {
        return Err(format!("coefficients for {system} are incomplete"));
    }
    Ok(c)
}

pub fn to_pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_roundtrip() {
        for s in ["0", "6", "-3/2", "1/3"] {
            assert_eq!(rational(&parse_rational(s).unwrap()), Value::String(s.into()));
        }
        assert_eq!(parse_rational("4/2"), parse_rational("2"));
        assert!(parse_rational("1/0").is_none());
        assert!(parse_rational("x").is_none());
    }

    #[test]
    fn subset_keys() {
        let j = Subset::from_indices(&[1, 3], 3).unwrap();
        assert_eq!(subset_key(j), "[1,3]");
        assert_eq!(parse_subset_key("[1,3]", 3), Some(j));
        assert_eq!(parse_subset_key("[]", 3), Some(Subset::EMPTY));
        assert_eq!(parse_subset_key("[4]", 3), None);
    }

    #[test]
    fn big_integers_stay_exact() {
        let big = BigInt::from(u64::MAX) * BigInt::from(1000);
        assert_eq!(integer(&big).to_string(), big.to_string());
    }
}
