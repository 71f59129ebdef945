//! Exact rational exponents (`t`, `s`, `ε`) and their `NUM/DEN` text form.

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Signed, Zero};

use crate::error::{AlgebraError, Result};

pub type Rational = Ratio<i64>;

pub fn parse_rational(text: &str) -> Result<Rational> {
    let bad = || AlgebraError::Serialization(format!("`{text}` is not a rational NUM/DEN"));
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: i64 = num.parse().map_err(|_| bad())?;
    let den: i64 = den.parse().map_err(|_| bad())?;
    if den == 0 {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn ceil(r: &Rational) -> i64 {
    r.numer().div_ceil(r.denom())
}

pub fn floor(r: &Rational) -> i64 {
    r.numer().div_floor(r.denom())
}

pub fn is_positive(r: &Rational) -> bool {
    r.is_positive()
}

pub fn is_zero(r: &Rational) -> bool {
    r.is_zero()
}

/// Serde adapter storing a [`Rational`] as a `"NUM/DEN"` string.
pub mod serde_text {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Text(String),
            Int(i64),
        }
        match Raw::deserialize(d)? {
            Raw::Text(t) => parse_rational(&t).map_err(serde::de::Error::custom),
            Raw::Int(i) => Ok(Rational::from_integer(i)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_round() {
        let t = parse_rational("3/2").unwrap();
        assert_eq!(ceil(&t), 2);
        assert_eq!(floor(&t), 1);
        assert_eq!(ceil(&parse_rational("-3/2").unwrap()), -1);
        assert_eq!(floor(&parse_rational(" 4 ").unwrap()), 4);
        assert_eq!(format_rational(&parse_rational("6/4").unwrap()), "3/2");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("a/2").is_err());
    }
}
