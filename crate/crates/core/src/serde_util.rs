//! Serialization helpers: big integers and rationals are emitted as
//! decimal / `p/q` strings so JSON consumers never face precision loss.

use num_bigint::BigUint;
use num_rational::{BigRational, Ratio};
use num_traits::One;
use serde::Serializer;

pub fn ser_biguint<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

pub fn ser_biguint_opt<S: Serializer>(v: &Option<BigUint>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(x) => s.serialize_some(&x.to_string()),
        None => s.serialize_none(),
    }
}

pub fn ratio_string(v: &BigRational) -> String {
    if v.denom().is_one() {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

pub fn ser_rational<S: Serializer>(v: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(&ratio_string(v))
}

pub fn ser_ratio_u64<S: Serializer>(v: &Ratio<u64>, s: S) -> Result<S::Ok, S::Error> {
    if v.denom() == &1 {
        s.collect_str(v.numer())
    } else {
        s.collect_str(&format_args!("{}/{}", v.numer(), v.denom()))
    }
}
