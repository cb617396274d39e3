use std::collections::hash_map::RandomState;
use std::hash::{BuildHasher, Hasher};

/// Parses a decimal or a ratio such as `1/800`.
pub fn parse_real(s: &str) -> Result<f64, String> {
    let s = s.trim();
    let value = match s.split_once('/') {
        Some((num, den)) => {
            let num: f64 = num.trim().parse().map_err(|e| format!("bad numerator in {s:?}: {e}"))?;
            let den: f64 = den.trim().parse().map_err(|e| format!("bad denominator in {s:?}: {e}"))?;
            if den == 0.0 {
                return Err(format!("zero denominator in {s:?}"));
            }
            num / den
        }
        None => s.parse().map_err(|e| format!("bad number {s:?}: {e}"))?,
    };
    if value.is_finite() {
        Ok(value)
    } else {
        Err(format!("{s:?} is not finite"))
    }
}

/// A fresh seed from the standard library's per-process random keys.
pub fn fresh_seed() -> u64 {
    let mut h = RandomState::new().build_hasher();
    h.write_u64(std::process::id() as u64);
    h.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ratios_and_decimals() {
        assert_eq!(parse_real("1/800").unwrap(), 1.0 / 800.0);
        assert_eq!(parse_real("0.25").unwrap(), 0.25);
        assert_eq!(parse_real("-2").unwrap(), -2.0);
        assert_eq!(parse_real("1e-4").unwrap(), 1e-4);
        assert!(parse_real("1/0").is_err());
        assert!(parse_real("x").is_err());
        assert!(parse_real("inf").is_err());
    }
}
