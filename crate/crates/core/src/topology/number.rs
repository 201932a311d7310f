//! Rational-or-float scalars for the discrete formulas.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, ToPrimitive, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};

pub type Q = Ratio<i128>;

/// An exact rational, or a float carrying the fact that it is not exact.
///
/// Arithmetic stays exact while both operands are exact and nothing overflows.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Number {
    Exact(Q),
    Approx(f64),
}

impl Number {
    pub fn int(n: i64) -> Self {
        Number::Exact(Q::from_integer(n as i128))
    }

    pub fn ratio(p: i64, q: i64) -> Self {
        Number::Exact(Q::new(p as i128, q as i128))
    }

    pub fn to_f64(self) -> f64 {
        match self {
            Number::Exact(q) => q.to_f64().unwrap_or(f64::NAN),
            Number::Approx(x) => x,
        }
    }

    pub fn is_exact(self) -> bool {
        matches!(self, Number::Exact(_))
    }

    pub fn exact(self) -> Option<Q> {
        match self {
            Number::Exact(q) => Some(q),
            Number::Approx(_) => None,
        }
    }

    pub fn is_zero(self) -> bool {
        match self {
            Number::Exact(q) => q.is_zero(),
            Number::Approx(x) => x == 0.0,
        }
    }

    fn combine(
        self,
        o: Number,
        exact: impl Fn(&Q, &Q) -> Option<Q>,
        float: impl Fn(f64, f64) -> f64,
    ) -> Number {
        match (self, o) {
            (Number::Exact(a), Number::Exact(b)) => match exact(&a, &b) {
                Some(q) => Number::Exact(q),
                None => Number::Approx(float(self.to_f64(), o.to_f64())),
            },
            _ => Number::Approx(float(self.to_f64(), o.to_f64())),
        }
    }
}

impl From<i64> for Number {
    fn from(n: i64) -> Self {
        Number::int(n)
    }
}

impl Add for Number {
    type Output = Number;
    fn add(self, o: Number) -> Number {
        self.combine(o, |a, b| a.checked_add(b), |a, b| a + b)
    }
}

impl Sub for Number {
    type Output = Number;
    fn sub(self, o: Number) -> Number {
        self.combine(o, |a, b| a.checked_sub(b), |a, b| a - b)
    }
}

impl Mul for Number {
    type Output = Number;
    fn mul(self, o: Number) -> Number {
        self.combine(o, |a, b| a.checked_mul(b), |a, b| a * b)
    }
}

impl Neg for Number {
    type Output = Number;
    fn neg(self) -> Number {
        match self {
            Number::Exact(q) => Number::Exact(-q),
            Number::Approx(x) => Number::Approx(-x),
        }
    }
}

impl fmt::Display for Number {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Number::Exact(q) if q.is_integer() => write!(f, "{}", q.numer()),
            Number::Exact(q) => write!(f, "{}/{}", q.numer(), q.denom()),
            Number::Approx(x) => write!(f, "{x}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("cannot read {0:?} as a number (expected p/q, an integer, or a decimal)")]
pub struct ParseNumberError(pub String);

/// Accepts `p/q`, integers and plain decimals exactly; exponent notation is read as a float.
impl FromStr for Number {
    type Err = ParseNumberError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let bad = || ParseNumberError(s.to_string());
        if let Some((p, q)) = t.split_once('/') {
            let p: i128 = p.trim().parse().map_err(|_| bad())?;
            let q: i128 = q.trim().parse().map_err(|_| bad())?;
            if q == 0 {
                return Err(bad());
            }
            return Ok(Number::Exact(Q::new(p, q)));
        }
        if let Ok(n) = t.parse::<i128>() {
            return Ok(Number::Exact(Q::from_integer(n)));
        }
        if let Some((whole, frac)) = t.split_once('.') {
            let digits_ok = |d: &str| d.chars().all(|c| c.is_ascii_digit());
            let (neg, whole) = match whole.strip_prefix('-') {
                Some(w) => (true, w),
                None => (false, whole.strip_prefix('+').unwrap_or(whole)),
            };
            if digits_ok(whole) && digits_ok(frac) && !(whole.is_empty() && frac.is_empty()) && frac.len() <= 30 {
                let den = 10i128.checked_pow(frac.len() as u32).ok_or_else(bad)?;
                let w: i128 = if whole.is_empty() { 0 } else { whole.parse().map_err(|_| bad())? };
                let fr: i128 = if frac.is_empty() { 0 } else { frac.parse().map_err(|_| bad())? };
                let num = w.checked_mul(den).and_then(|x| x.checked_add(fr)).ok_or_else(bad)?;
                return Ok(Number::Exact(Q::new(if neg { -num } else { num }, den)));
            }
        }
        t.parse::<f64>().ok().filter(|x| x.is_finite()).map(Number::Approx).ok_or_else(bad)
    }
}

impl Serialize for Number {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Number", 2)?;
        st.serialize_field("value", &self.to_f64())?;
        st.serialize_field("exact", &self.exact().map(|_| self.to_string()))?;
        st.end()
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum NumberRepr {
    Int(i64),
    Float(f64),
    Text(String),
    Full { value: f64, exact: Option<String> },
}

impl<'de> Deserialize<'de> for Number {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match NumberRepr::deserialize(d)? {
            NumberRepr::Int(n) => Ok(Number::int(n)),
            NumberRepr::Float(x) => Ok(Number::Approx(x)),
            NumberRepr::Text(t) => t.parse().map_err(de::Error::custom),
            NumberRepr::Full { exact: Some(t), .. } => t.parse().map_err(de::Error::custom),
            NumberRepr::Full { value, exact: None } => Ok(Number::Approx(value)),
        }
    }
}
