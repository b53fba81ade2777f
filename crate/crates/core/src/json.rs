//! JSON rendering helpers. Exact integers are written as JSON number
//! literals with every digit preserved.

use num_bigint::{BigInt, BigUint};
use serde::{Serialize, Serializer};

pub struct ExactInt<'a>(pub &'a BigInt);

impl Serialize for ExactInt<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let n: serde_json::Number = self.0.to_string().parse().map_err(serde::ser::Error::custom)?;
        n.serialize(s)
    }
}

pub fn exact<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    ExactInt(v).serialize(s)
}

pub fn exact_unsigned<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    ExactInt(&BigInt::from(v.clone())).serialize(s)
}

/// Serializes any value to a JSON string with object keys sorted.
pub fn to_sorted_string<T: Serialize>(v: &T) -> serde_json::Result<String> {
    // `Value` objects are BTreeMap backed, so a round trip sorts keys.
    let value = serde_json::to_value(v)?;
    serde_json::to_string_pretty(&value)
}
