//! Serde helpers. Big integers travel as decimal strings so that entries
//! wider than 64 bits survive any JSON reader.

use num_bigint::BigInt;
use serde::{Deserialize, Deserializer, Serializer};

pub fn int_to_string(v: &BigInt) -> String {
    v.to_str_radix(10)
}

pub fn parse_int<E: serde::de::Error>(s: &str) -> Result<BigInt, E> {
    s.parse::<BigInt>()
        .map_err(|_| E::custom(format!("`{s}` is not a decimal integer")))
}

/// `Vec<BigInt>` as a list of decimal strings.
pub mod int_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(int_to_string))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        raw.iter().map(|s| parse_int(s)).collect()
    }
}

/// A single `BigInt` as a decimal string.
pub mod int {
    use super::*;

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&int_to_string(v))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        let raw = String::deserialize(d)?;
        parse_int(&raw)
    }
}

/// List of integer vectors, each a list of decimal strings.
pub mod int_vecs {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Vec<BigInt>], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(
            v.iter()
                .map(|row| row.iter().map(int_to_string).collect::<Vec<_>>()),
        )
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<BigInt>>, D::Error> {
        let raw = Vec::<Vec<String>>::deserialize(d)?;
        raw.iter()
            .map(|row| {
                row.iter()
                    .map(|s| parse_int::<D::Error>(s))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect()
    }
}
