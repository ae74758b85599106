//! Deterministic numeric formatting for command output.
//!
//! Every number the command line emits is rounded to 12 significant decimal
//! digits, and integral values are printed without a fractional part, so
//! repeated runs produce byte-identical JSON on any platform.

use serde_json::{Number, Value};

/// Upper bound below which every integral f64 is exactly representable.
const EXACT_INT_LIMIT: f64 = 9_007_199_254_740_992.0;

/// Rounds a finite value to 12 significant decimal digits.
///
/// Non-finite input is returned unchanged and negative zero is normalized
/// to positive zero.
pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x + 0.0;
    }
    // Scientific notation with 11 fractional digits carries exactly 12
    // significant digits and cannot overflow at extreme magnitudes.
    format!("{x:.11e}").parse().unwrap_or(x)
}

/// Rewrites every number in a JSON tree through [`round_sig`], emitting
/// integral values as JSON integers.
pub fn round_numbers(value: &mut Value) {
    match value {
        Value::Number(n) => {
            if let Some(x) = n.as_f64() {
                *n = json_number(round_sig(x));
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_numbers),
        Value::Object(map) => map.values_mut().for_each(round_numbers),
        _ => {}
    }
}

fn json_number(x: f64) -> Number {
    if x.fract() == 0.0 && x.abs() < EXACT_INT_LIMIT {
        Number::from(x as i64)
    } else {
        Number::from_f64(x).unwrap_or_else(|| Number::from(0))
    }
}
