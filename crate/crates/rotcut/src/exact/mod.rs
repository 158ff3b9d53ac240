//! Exact number kernel: arbitrary-precision rationals, univariate
//! polynomials, real-root isolation by Descartes bisection, and sign
//! evaluation at rational, algebraic, and infinitesimally perturbed points.

mod num;
mod perturbed;
mod poly;
mod ratfn;
mod roots;

pub use num::{ExactNum, ExtReal};
pub use perturbed::PerturbedRational;
pub use poly::{
    rat, rat_int, rat_sign, sturm_chain, sturm_count_in, sturm_variations_at,
    sturm_variations_at_neg_inf, sturm_variations_at_pos_inf, Polynomial, Rat,
};
pub use ratfn::RationalFn;
pub use roots::{isolate_roots, rat_to_f64, AlgebraicReal, RootKey};

use crate::error::{Error, Result};

/// Exact sign of p at a rational, algebraic, or perturbed point.
pub fn sign_at(p: &Polynomial, x: &ExactNum) -> i8 {
    x.sign_of(p)
}

/// Parse a rational from "p/q" or plain integer form.
pub fn rat_from_str(s: &str) -> Result<Rat> {
    use std::str::FromStr;
    let parse_int = |t: &str| {
        ::num::BigInt::from_str(t.trim())
            .map_err(|e| Error::Usage(format!("invalid rational {s:?}: {e}")))
    };
    match s.split_once('/') {
        Some((n, d)) => {
            let denom = parse_int(d)?;
            if denom == ::num::BigInt::from(0) {
                return Err(Error::Usage(format!(
                    "invalid rational {s:?}: zero denominator"
                )));
            }
            Ok(Rat::new(parse_int(n)?, denom))
        }
        None => Ok(Rat::from(parse_int(s)?)),
    }
}

/// Format a rational as "p/q" with positive denominator.
pub fn rat_to_string(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Decimal approximation of a rational with the given number of fractional
/// digits, correctly truncated toward zero.
pub fn rat_to_decimal(r: &Rat, digits: usize) -> String {
    use ::num::{BigInt, Signed, Zero};
    let neg = r < &Rat::zero();
    let abs = r.abs();
    let scale = BigInt::from(10).pow(digits as u32);
    let scaled = (abs.numer() * &scale) / abs.denom();
    let int_part = &scaled / &scale;
    let frac_part = &scaled % &scale;
    let sign = if neg && !scaled.is_zero() { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{frac_part:0>width$}", width = digits)
    }
}

/// Serde helpers for rationals in "p/q" form.
pub mod ratio_str {
    use super::{rat_from_str, rat_to_string, Rat};
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(r: &Rat, s: S) -> std::result::Result<S::Ok, S::Error> {
        rat_to_string(r).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rat, D::Error> {
        let s = String::deserialize(d)?;
        rat_from_str(&s).map_err(serde::de::Error::custom)
    }
}
