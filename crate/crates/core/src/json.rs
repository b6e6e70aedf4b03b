//! Arbitrary-precision integers as plain JSON numbers.

use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use serde_json::{Number, Value};

pub fn bigint_to_value(n: &BigInt) -> Value {
    Value::Number(Number::from_str(&n.to_string()).expect("integer literal"))
}

pub fn number_to_bigint(v: &Value) -> Option<BigInt> {
    match v {
        Value::Number(n) => BigInt::from_str(&n.to_string()).ok(),
        _ => None,
    }
}

pub mod bigint {
    use super::*;
    use serde::{de::Error, Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(n: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        bigint_to_value(n).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        let v = Value::deserialize(d)?;
        number_to_bigint(&v).ok_or_else(|| D::Error::custom(format!("expected integer, got {v}")))
    }
}

pub mod bigint_vec {
    use super::*;
    use serde::{de::Error, Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        Value::Array(v.iter().map(bigint_to_value).collect()).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        let items = Vec::<Value>::deserialize(d)?;
        items
            .iter()
            .map(|v| {
                number_to_bigint(v)
                    .ok_or_else(|| D::Error::custom(format!("expected integer, got {v}")))
            })
            .collect()
    }
}

pub mod biguint {
    use super::*;
    use serde::{de::Error, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(n: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        super::bigint::serialize(&BigInt::from(n.clone()), s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        let n = super::bigint::deserialize(d)?;
        n.to_biguint()
            .ok_or_else(|| D::Error::custom("expected a nonnegative integer"))
    }
}

pub mod biguint_vec {
    use super::*;
    use serde::{de::Error, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigUint], s: S) -> Result<S::Ok, S::Error> {
        let ints: Vec<BigInt> = v.iter().map(|n| BigInt::from(n.clone())).collect();
        super::bigint_vec::serialize(&ints, s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigUint>, D::Error> {
        super::bigint_vec::deserialize(d)?
            .into_iter()
            .map(|n| {
                n.to_biguint()
                    .ok_or_else(|| D::Error::custom("expected nonnegative integers"))
            })
            .collect()
    }
}
