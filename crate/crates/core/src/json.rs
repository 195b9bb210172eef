//! Serde helpers: unbounded integers as bare JSON numbers.
//!
//! These rely on `serde_json`'s `arbitrary_precision` feature so that
//! integers of any size survive a parse/serialize round trip unchanged.

use std::str::FromStr;

use num_bigint::BigInt;
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

fn to_number<E: serde::ser::Error>(n: &BigInt) -> Result<serde_json::Number, E> {
    serde_json::Number::from_str(&n.to_string()).map_err(E::custom)
}

fn from_number<E: de::Error>(n: serde_json::Number) -> Result<BigInt, E> {
    BigInt::from_str(&n.to_string())
        .map_err(|_| E::custom(format!("expected an integer, found {n}")))
}

pub mod bigint_number {
    use super::*;

    pub fn serialize<S: Serializer>(n: &BigInt, ser: S) -> Result<S::Ok, S::Error> {
        to_number(n)?.serialize(ser)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<BigInt, D::Error> {
        from_number(serde_json::Number::deserialize(de)?)
    }
}

pub mod bigint_numbers {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[BigInt], ser: S) -> Result<S::Ok, S::Error> {
        let nums = v.iter().map(to_number).collect::<Result<Vec<_>, _>>()?;
        nums.serialize(ser)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Vec<BigInt>, D::Error> {
        Vec::<serde_json::Number>::deserialize(de)?
            .into_iter()
            .map(from_number)
            .collect()
    }
}

pub mod opt_bigint_number {
    use super::*;

    pub fn serialize<S: Serializer>(n: &Option<BigInt>, ser: S) -> Result<S::Ok, S::Error> {
        match n {
            Some(n) => ser.serialize_some(&to_number::<S::Error>(n)?),
            None => ser.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Option<BigInt>, D::Error> {
        Option::<serde_json::Number>::deserialize(de)?
            .map(from_number)
            .transpose()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[derive(Serialize, Deserialize, PartialEq, Debug)]
    struct Holder {
        #[serde(with = "bigint_number")]
        n: BigInt,
        #[serde(with = "bigint_numbers")]
        v: Vec<BigInt>,
    }

    #[test]
    fn huge_integers_round_trip_as_numbers() {
        let big = BigInt::from_str("-123456789012345678901234567890").unwrap();
        let h = Holder {
            n: big.clone(),
            v: vec![BigInt::from(2), big],
        };
        let text = serde_json::to_string(&h).unwrap();
        assert_eq!(
            text,
            r#"{"n":-123456789012345678901234567890,"v":[2,-123456789012345678901234567890]}"#
        );
        let back: Holder = serde_json::from_str(&text).unwrap();
        assert_eq!(back, h);
    }

    #[test]
    fn rejects_fractional() {
        assert!(serde_json::from_str::<Holder>(r#"{"n":1.5,"v":[]}"#).is_err());
    }
}
