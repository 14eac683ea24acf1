// Big integers travel as decimal strings so JSON output stays exact.

use num_bigint::BigUint;
use serde::Serializer;

pub fn serialize<S: Serializer>(value: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&value.to_str_radix(10))
}

pub mod option {
    use super::*;

    pub fn serialize<S: Serializer>(value: &Option<BigUint>, s: S) -> Result<S::Ok, S::Error> {
        match value {
            Some(v) => s.serialize_str(&v.to_str_radix(10)),
            None => s.serialize_none(),
        }
    }
}
