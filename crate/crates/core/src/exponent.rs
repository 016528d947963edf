use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The exponent `p` of a modulus problem, `1 <= p <= inf`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum Exponent {
    Finite(f64),
    Infinite,
}

impl Exponent {
    pub const ONE: Exponent = Exponent::Finite(1.0);
    pub const TWO: Exponent = Exponent::Finite(2.0);

    pub fn new(p: f64) -> Result<Self> {
        if p == f64::INFINITY {
            Ok(Exponent::Infinite)
        } else if p.is_finite() && p >= 1.0 {
            Ok(Exponent::Finite(p))
        } else {
            Err(Error::InvalidExponent(p.to_string()))
        }
    }

    /// `p` as a float, `f64::INFINITY` for the infinite exponent.
    pub fn value(self) -> f64 {
        match self {
            Exponent::Finite(p) => p,
            Exponent::Infinite => f64::INFINITY,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Exponent::Infinite)
    }

    /// Finite value strictly between 1 and infinity, if any.
    pub fn interior(self) -> Option<f64> {
        match self {
            Exponent::Finite(p) if p > 1.0 => Some(p),
            _ => None,
        }
    }

    /// Hölder conjugate `p/(p-1)`.
    pub fn conjugate(self) -> f64 {
        match self {
            Exponent::Finite(p) if p == 1.0 => f64::INFINITY,
            Exponent::Finite(p) => p / (p - 1.0),
            Exponent::Infinite => 1.0,
        }
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Finite(p) => write!(f, "{p}"),
            Exponent::Infinite => f.write_str("inf"),
        }
    }
}

impl FromStr for Exponent {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("inf") || s.eq_ignore_ascii_case("infinity") {
            return Ok(Exponent::Infinite);
        }
        let p: f64 = s
            .parse()
            .map_err(|_| Error::InvalidExponent(s.to_string()))?;
        if p.is_infinite() {
            return Err(Error::InvalidExponent(s.to_string()));
        }
        Exponent::new(p)
    }
}

impl TryFrom<String> for Exponent {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<Exponent> for String {
    fn from(p: Exponent) -> String {
        p.to_string()
    }
}

/// Formats a float for CSV/JSON output, writing infinities as `inf`.
pub fn format_real(x: f64) -> String {
    if x == f64::INFINITY {
        "inf".to_string()
    } else if x == f64::NEG_INFINITY {
        "-inf".to_string()
    } else {
        format!("{x}")
    }
}

/// Serializes infinities as the string `"inf"`.
pub(crate) mod inf_real {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
        if x.is_infinite() {
            s.serialize_str(if *x > 0.0 { "inf" } else { "-inf" })
        } else {
            s.serialize_f64(*x)
        }
    }

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Num(f64),
        Str(String),
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        match Repr::deserialize(d)? {
            Repr::Num(x) => Ok(x),
            Repr::Str(s) if s == "inf" => Ok(f64::INFINITY),
            Repr::Str(s) if s == "-inf" => Ok(f64::NEG_INFINITY),
            Repr::Str(s) => Err(serde::de::Error::custom(format!("bad real `{s}`"))),
        }
    }
}

/// Like [`inf_real`] for a table of reals.
pub(crate) mod inf_real_table {
    use serde::ser::SerializeSeq;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    #[serde(transparent)]
    struct Real(#[serde(with = "super::inf_real")] f64);

    pub fn serialize<S: Serializer>(rows: &[Vec<f64>], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(rows.len()))?;
        for row in rows {
            let row: Vec<Real> = row.iter().map(|&x| Real(x)).collect();
            seq.serialize_element(&row)?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<f64>>, D::Error> {
        let rows = Vec::<Vec<Real>>::deserialize(d)?;
        Ok(rows
            .into_iter()
            .map(|row| row.into_iter().map(|r| r.0).collect())
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_inf_and_reals() {
        assert_eq!("inf".parse::<Exponent>().unwrap(), Exponent::Infinite);
        assert_eq!("2.5".parse::<Exponent>().unwrap(), Exponent::Finite(2.5));
        assert!("0.5".parse::<Exponent>().is_err());
        assert!("nan".parse::<Exponent>().is_err());
        assert!("abc".parse::<Exponent>().is_err());
    }

    #[test]
    fn conjugates() {
        assert_eq!(Exponent::TWO.conjugate(), 2.0);
        assert_eq!(Exponent::ONE.conjugate(), f64::INFINITY);
        assert_eq!(Exponent::Infinite.conjugate(), 1.0);
    }

    #[test]
    fn serde_uses_inf_string() {
        let s = serde_json::to_string(&Exponent::Infinite).unwrap();
        assert_eq!(s, "\"inf\"");
        let p: Exponent = serde_json::from_str("\"1.5\"").unwrap();
        assert_eq!(p, Exponent::Finite(1.5));
    }
}
