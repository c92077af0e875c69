//! Numbers used for every centrality result: exact extended rationals, or
//! floats carrying a comparison tolerance.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Default tolerance for float comparisons.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValueError {
    #[error("cannot combine an exact value with a floating-point value")]
    Mixed,
    #[error("indeterminate form: {0}")]
    Indeterminate(&'static str),
    #[error("cannot parse {0:?} as a number")]
    Parse(String),
}

/// A rational number extended with ±∞.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ExtRational {
    NegInf,
    Finite(BigRational),
    PosInf,
}

impl ExtRational {
    pub fn zero() -> Self {
        ExtRational::Finite(BigRational::zero())
    }

    pub fn int(v: i64) -> Self {
        ExtRational::Finite(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn ratio(p: i64, q: i64) -> Self {
        ExtRational::Finite(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    pub fn finite(&self) -> Option<&BigRational> {
        match self {
            ExtRational::Finite(r) => Some(r),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ExtRational::Finite(_))
    }

    pub fn signum(&self) -> Ordering {
        match self {
            ExtRational::NegInf => Ordering::Less,
            ExtRational::PosInf => Ordering::Greater,
            ExtRational::Finite(r) => r.cmp(&BigRational::zero()),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            ExtRational::NegInf => f64::NEG_INFINITY,
            ExtRational::PosInf => f64::INFINITY,
            ExtRational::Finite(r) => r.to_f64().unwrap_or(f64::NAN),
        }
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, ValueError> {
        use ExtRational::*;
        Ok(match (self, other) {
            (Finite(a), Finite(b)) => Finite(a - b),
            (PosInf, PosInf) | (NegInf, NegInf) => return Err(ValueError::Indeterminate("∞ − ∞")),
            (PosInf, _) | (_, NegInf) => PosInf,
            (NegInf, _) | (_, PosInf) => NegInf,
        })
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, ValueError> {
        self.checked_sub(&other.neg())
    }

    pub fn neg(&self) -> Self {
        match self {
            ExtRational::NegInf => ExtRational::PosInf,
            ExtRational::PosInf => ExtRational::NegInf,
            ExtRational::Finite(r) => ExtRational::Finite(-r),
        }
    }

    pub fn abs(&self) -> Self {
        match self {
            ExtRational::Finite(r) => ExtRational::Finite(r.abs()),
            _ => ExtRational::PosInf,
        }
    }

    /// `1/x`, with `1/0 = +∞` and `1/±∞ = 0`.
    pub fn recip(&self) -> Self {
        match self {
            ExtRational::Finite(r) if r.is_zero() => ExtRational::PosInf,
            ExtRational::Finite(r) => ExtRational::Finite(r.recip()),
            _ => ExtRational::zero(),
        }
    }
}

impl From<BigRational> for ExtRational {
    fn from(r: BigRational) -> Self {
        ExtRational::Finite(r)
    }
}

impl PartialOrd for ExtRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtRational {
    fn cmp(&self, other: &Self) -> Ordering {
        use ExtRational::*;
        match (self, other) {
            (Finite(a), Finite(b)) => a.cmp(b),
            (NegInf, NegInf) | (PosInf, PosInf) => Ordering::Equal,
            (NegInf, _) | (_, PosInf) => Ordering::Less,
            (PosInf, _) | (_, NegInf) => Ordering::Greater,
        }
    }
}

impl fmt::Display for ExtRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtRational::NegInf => f.write_str("-inf"),
            ExtRational::PosInf => f.write_str("inf"),
            ExtRational::Finite(r) if r.is_integer() => write!(f, "{}", r.numer()),
            ExtRational::Finite(r) => write!(f, "{}/{}", r.numer(), r.denom()),
        }
    }
}

impl FromStr for ExtRational {
    type Err = ValueError;

    /// Accepts `p`, `p/q`, `inf`, `-inf` and finite decimals such as `0.25`.
    fn from_str(s: &str) -> Result<Self, ValueError> {
        let t = s.trim();
        let err = || ValueError::Parse(s.to_string());
        match t {
            "inf" | "+inf" | "∞" => return Ok(ExtRational::PosInf),
            "-inf" | "-∞" => return Ok(ExtRational::NegInf),
            _ => {}
        }
        if let Some((p, q)) = t.split_once('/') {
            let p: BigInt = p.trim().parse().map_err(|_| err())?;
            let q: BigInt = q.trim().parse().map_err(|_| err())?;
            if q.is_zero() {
                return Err(err());
            }
            return Ok(ExtRational::Finite(BigRational::new(p, q)));
        }
        if let Some((whole, frac)) = t.split_once('.') {
            let neg = whole.starts_with('-');
            let digits = format!("{}{}", whole.trim_start_matches(['-', '+']), frac);
            if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
                return Err(err());
            }
            let mut num: BigInt = digits.parse().map_err(|_| err())?;
            if neg {
                num = -num;
            }
            let den = num_traits::pow(BigInt::from(10), frac.len());
            return Ok(ExtRational::Finite(BigRational::new(num, den)));
        }
        let p: BigInt = t.parse().map_err(|_| err())?;
        Ok(ExtRational::Finite(BigRational::from_integer(p)))
    }
}

/// A centrality value: exact, or a float with its comparison tolerance.
#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Exact(ExtRational),
    Approx { value: f64, tol: f64 },
}

impl Value {
    pub fn zero() -> Self {
        Value::Exact(ExtRational::zero())
    }

    pub fn int(v: i64) -> Self {
        Value::Exact(ExtRational::int(v))
    }

    pub fn ratio(p: i64, q: i64) -> Self {
        Value::Exact(ExtRational::ratio(p, q))
    }

    pub fn pos_inf() -> Self {
        Value::Exact(ExtRational::PosInf)
    }

    pub fn approx(value: f64) -> Self {
        Value::Approx { value, tol: DEFAULT_TOLERANCE }
    }

    pub fn rational(r: BigRational) -> Self {
        Value::Exact(ExtRational::Finite(r))
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Value::Exact(_))
    }

    pub fn exact(&self) -> Option<&ExtRational> {
        match self {
            Value::Exact(x) => Some(x),
            Value::Approx { .. } => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Value::Exact(x) => x.to_f64(),
            Value::Approx { value, .. } => *value,
        }
    }

    pub fn is_finite(&self) -> bool {
        match self {
            Value::Exact(x) => x.is_finite(),
            Value::Approx { value, .. } => value.is_finite(),
        }
    }

    /// Exact comparison; Approx values within the larger tolerance are equal.
    pub fn compare(&self, other: &Value) -> Result<Ordering, ValueError> {
        match (self, other) {
            (Value::Exact(a), Value::Exact(b)) => Ok(a.cmp(b)),
            (Value::Approx { value: a, tol: ta }, Value::Approx { value: b, tol: tb }) => {
                if (a - b).abs() <= ta.max(*tb) {
                    Ok(Ordering::Equal)
                } else {
                    Ok(a.partial_cmp(b).unwrap_or(Ordering::Equal))
                }
            }
            _ => Err(ValueError::Mixed),
        }
    }

    pub fn sub(&self, other: &Value) -> Result<Value, ValueError> {
        match (self, other) {
            (Value::Exact(a), Value::Exact(b)) => Ok(Value::Exact(a.checked_sub(b)?)),
            (Value::Approx { value: a, tol: ta }, Value::Approx { value: b, tol: tb }) => {
                Ok(Value::Approx { value: a - b, tol: ta.max(*tb) })
            }
            _ => Err(ValueError::Mixed),
        }
    }

    pub fn add(&self, other: &Value) -> Result<Value, ValueError> {
        match (self, other) {
            (Value::Exact(a), Value::Exact(b)) => Ok(Value::Exact(a.checked_add(b)?)),
            (Value::Approx { value: a, tol: ta }, Value::Approx { value: b, tol: tb }) => {
                Ok(Value::Approx { value: a + b, tol: ta.max(*tb) })
            }
            _ => Err(ValueError::Mixed),
        }
    }

    /// `min(self, cap)` where the cap is an exact threshold. Float values are
    /// truncated against the threshold's float image.
    pub fn truncate(&self, cap: &ExtRational) -> Value {
        match self {
            Value::Exact(x) => Value::Exact(if x > cap { cap.clone() } else { x.clone() }),
            Value::Approx { value, tol } => {
                Value::Approx { value: value.min(cap.to_f64()), tol: *tol }
            }
        }
    }

    pub fn neg(&self) -> Value {
        match self {
            Value::Exact(x) => Value::Exact(x.neg()),
            Value::Approx { value, tol } => Value::Approx { value: -value, tol: *tol },
        }
    }

    pub fn one() -> Self {
        Value::Exact(ExtRational::Finite(BigRational::one()))
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Exact(x) => x.fmt(f),
            Value::Approx { value, .. } => write!(f, "{value}"),
        }
    }
}

impl Serialize for ExtRational {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for ExtRational {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Serialized as `{"exact": "p/q"}` or `{"approx": x, "tol": τ}`, plus a float
/// rendering for convenience.
impl Serialize for Value {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut m = s.serialize_map(Some(2))?;
        match self {
            Value::Exact(x) => {
                m.serialize_entry("exact", &x.to_string())?;
                let f = x.to_f64();
                m.serialize_entry("float", &if f.is_finite() { Some(f) } else { None })?;
            }
            Value::Approx { value, tol } => {
                m.serialize_entry("approx", value)?;
                m.serialize_entry("tol", tol)?;
            }
        }
        m.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ordering_with_infinities() {
        let a = ExtRational::ratio(1, 3);
        assert!(ExtRational::NegInf < a);
        assert!(a < ExtRational::PosInf);
        assert_eq!(ExtRational::ratio(2, 6), a);
    }

    #[test]
    fn subtraction() {
        let d = ExtRational::ratio(1, 2).checked_sub(&ExtRational::ratio(1, 3)).unwrap();
        assert_eq!(d, ExtRational::ratio(1, 6));
        assert_eq!(ExtRational::int(3).checked_sub(&ExtRational::PosInf).unwrap(), ExtRational::NegInf);
        assert!(ExtRational::PosInf.checked_sub(&ExtRational::PosInf).is_err());
    }

    #[test]
    fn parsing() {
        assert_eq!("3/4".parse::<ExtRational>().unwrap(), ExtRational::ratio(3, 4));
        assert_eq!("inf".parse::<ExtRational>().unwrap(), ExtRational::PosInf);
        assert_eq!("0.85".parse::<ExtRational>().unwrap(), ExtRational::ratio(17, 20));
        assert_eq!("-2".parse::<ExtRational>().unwrap(), ExtRational::int(-2));
        assert!("1/0".parse::<ExtRational>().is_err());
        assert!("abc".parse::<ExtRational>().is_err());
        assert!(".".parse::<ExtRational>().is_err());
        assert_eq!(ExtRational::ratio(6, 4).to_string(), "3/2");
    }

    #[test]
    fn mixing_is_rejected() {
        assert_eq!(Value::int(1).compare(&Value::approx(1.0)), Err(ValueError::Mixed));
        assert_eq!(Value::int(1).sub(&Value::approx(1.0)), Err(ValueError::Mixed));
    }

    #[test]
    fn approx_equality_within_tolerance() {
        let a = Value::approx(1.0);
        let b = Value::approx(1.0 + 5e-10);
        assert_eq!(a.compare(&b).unwrap(), Ordering::Equal);
        assert_eq!(a.compare(&Value::approx(1.1)).unwrap(), Ordering::Less);
    }

    #[test]
    fn truncation() {
        let cap = ExtRational::int(2);
        assert_eq!(Value::int(3).truncate(&cap), Value::int(2));
        assert_eq!(Value::ratio(1, 2).truncate(&cap), Value::ratio(1, 2));
        assert_eq!(Value::pos_inf().truncate(&cap), Value::int(2));
        assert_eq!(Value::int(5).truncate(&ExtRational::PosInf), Value::int(5));
    }

    #[test]
    fn reciprocal() {
        assert_eq!(ExtRational::zero().recip(), ExtRational::PosInf);
        assert_eq!(ExtRational::int(4).recip(), ExtRational::ratio(1, 4));
    }
}
