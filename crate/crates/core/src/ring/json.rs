//! Serde forms: `{"terms": [[exp_num, exp_den, coeff], ...]}` for
//! polynomials with `exp_den` 1 or 2, and `{"num": .., "den": ..}` for
//! rational functions. Coefficients outside the `i64` range are strings.

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;

use super::{LaurentPoly, RatFun};

#[derive(Serialize, Deserialize)]
struct PolyRepr {
    terms: Vec<(i64, i64, Value)>,
}

fn coeff_value(c: &BigInt) -> Value {
    match c.to_i64() {
        Some(v) => Value::from(v),
        None => Value::String(c.to_string()),
    }
}

fn value_coeff(v: &Value) -> Option<BigInt> {
    match v {
        Value::Number(n) => n.as_i64().map(BigInt::from),
        Value::String(s) => BigInt::from_str(s).ok(),
        _ => None,
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let terms = self
            .half_terms()
            .map(|(h, c)| if h % 2 == 0 { (h / 2, 1, coeff_value(c)) } else { (h, 2, coeff_value(c)) })
            .collect();
        PolyRepr { terms }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = PolyRepr::deserialize(d)?;
        let mut terms = Vec::with_capacity(repr.terms.len());
        for (num, den, c) in &repr.terms {
            let half = match den {
                1 => 2 * num,
                2 => *num,
                _ => return Err(D::Error::custom(format!("exponent denominator {den} is not 1 or 2"))),
            };
            let c = value_coeff(c).ok_or_else(|| D::Error::custom(format!("bad coefficient {c}")))?;
            terms.push((half, c));
        }
        Ok(LaurentPoly::from_half_terms(terms))
    }
}

#[derive(Serialize, Deserialize)]
struct RatRepr {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl Serialize for RatFun {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        RatRepr { num: self.num().clone(), den: self.den().clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for RatFun {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = RatRepr::deserialize(d)?;
        RatFun::new(r.num, r.den).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poly_round_trip() {
        let big = BigInt::from(i64::MAX) * 3;
        let p = LaurentPoly::from_half_terms([(-3, BigInt::from(5)), (0, BigInt::from(-1)), (4, big)]);
        let s = serde_json::to_string(&p).unwrap();
        assert!(s.starts_with(r#"{"terms":[[-3,2,5],[0,1,-1],[2,1,""#));
        let back: LaurentPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn ratfun_round_trip() {
        let f = RatFun::new(LaurentPoly::one(), LaurentPoly::from_coeffs(0, &[1, 1])).unwrap();
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(s, r#"{"num":{"terms":[[0,1,1]]},"den":{"terms":[[0,1,1],[1,1,1]]}}"#);
        assert_eq!(serde_json::from_str::<RatFun>(&s).unwrap(), f);
    }

    #[test]
    fn zero_denominator_rejected() {
        let s = r#"{"num":{"terms":[[0,1,1]]},"den":{"terms":[]}}"#;
        assert!(serde_json::from_str::<RatFun>(s).is_err());
    }
}
