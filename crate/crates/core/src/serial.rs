//! Lossless JSON encoding for arbitrary-precision integers.
//!
//! Integers whose magnitude fits in 53 bits are written as JSON numbers;
//! anything larger is written as a decimal string. Both forms are accepted
//! on input.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use serde::de::{self, Visitor};
use serde::{Deserializer, Serializer};

/// Largest magnitude that round-trips exactly through an IEEE double.
pub const MAX_SAFE_INTEGER: i64 = (1 << 53) - 1;

pub fn serialize<S: Serializer>(value: &BigInt, serializer: S) -> Result<S::Ok, S::Error> {
    match value.to_i64() {
        Some(v) if v.abs() <= MAX_SAFE_INTEGER => serializer.serialize_i64(v),
        _ => serializer.serialize_str(&value.to_string()),
    }
}

pub fn deserialize<'de, D: Deserializer<'de>>(deserializer: D) -> Result<BigInt, D::Error> {
    deserializer.deserialize_any(BigIntVisitor)
}

struct BigIntVisitor;

impl Visitor<'_> for BigIntVisitor {
    type Value = BigInt;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("an integer or a decimal string")
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<BigInt, E> {
        Ok(BigInt::from(v))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<BigInt, E> {
        Ok(BigInt::from(v))
    }

    fn visit_f64<E: de::Error>(self, v: f64) -> Result<BigInt, E> {
        Err(E::custom(format!("non-integer number {v} (floats are not accepted)")))
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<BigInt, E> {
        v.trim()
            .parse::<BigInt>()
            .map_err(|_| E::custom(format!("invalid integer string {v:?}")))
    }
}

/// Serde adapter for `Vec<BigInt>`.
pub mod vec {
    use super::*;
    use serde::ser::SerializeSeq;

    pub fn serialize<S: Serializer>(values: &[BigInt], serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(values.len()))?;
        for v in values {
            seq.serialize_element(&Wrapped(v))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(deserializer: D) -> Result<Vec<BigInt>, D::Error> {
        let raw: Vec<Owned> = serde::Deserialize::deserialize(deserializer)?;
        Ok(raw.into_iter().map(|o| o.0).collect())
    }
}

pub(crate) struct Wrapped<'a>(pub &'a BigInt);

impl serde::Serialize for Wrapped<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serialize(self.0, serializer)
    }
}

pub(crate) struct Owned(pub BigInt);

impl<'de> serde::Deserialize<'de> for Owned {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        deserialize(deserializer).map(Owned)
    }
}

/// True when `value` would be emitted as a JSON number.
pub fn fits_json_number(value: &BigInt) -> bool {
    value.abs() <= BigInt::from(MAX_SAFE_INTEGER)
}
