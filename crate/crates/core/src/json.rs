use std::str::FromStr;

use num_bigint::BigInt;
use serde_json::{Number, Value};

/// Exact JSON number for an arbitrary-precision integer.
pub(crate) fn int(x: &BigInt) -> Value {
    Value::Number(Number::from_str(&x.to_string()).expect("integer literal"))
}
