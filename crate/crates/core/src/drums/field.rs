//! Exact coordinate fields: the rationals, and `Q(√3)` for equilateral tiles.

use std::cmp::Ordering;
use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};

pub trait ExactField: Clone + Debug + PartialEq + Eq + std::hash::Hash + Ord {
    /// Name recorded in domain JSON files.
    const NAME: &'static str;

    fn from_rational(q: BigRational) -> Self;
    fn zero_value() -> Self {
        Self::from_rational(<BigRational as Zero>::zero())
    }
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    /// Panics on division by zero.
    fn div(&self, o: &Self) -> Self;
    fn sign(&self) -> Ordering;
    fn approx(&self) -> f64;
    /// The rational value, if the element is rational.
    fn as_rational(&self) -> Option<BigRational>;
    fn to_json(&self) -> Value;
    fn from_json(v: &Value) -> Result<Self>;

    fn vanishes(&self) -> bool {
        self.sign() == Ordering::Equal
    }
    fn cmp_value(&self, o: &Self) -> Ordering {
        self.sub(o).sign()
    }
}

fn int_json(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(v) => json!(v),
        None => json!(n.to_string()),
    }
}

fn int_from_json(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| Error::Parse(format!("non-integer coordinate part {n}"))),
        Value::String(s) => s.parse().map_err(|_| Error::Parse(format!("bad integer {s:?}"))),
        other => Err(Error::Parse(format!("expected integer, got {other}"))),
    }
}

pub(crate) fn rational_json(q: &BigRational) -> Value {
    json!([int_json(q.numer()), int_json(q.denom())])
}

pub(crate) fn rational_from_json(v: &Value) -> Result<BigRational> {
    let arr = v
        .as_array()
        .filter(|a| a.len() == 2)
        .ok_or_else(|| Error::Parse(format!("expected [num, den], got {v}")))?;
    let den = int_from_json(&arr[1])?;
    if den.is_zero() {
        return Err(Error::Parse("zero denominator".into()));
    }
    Ok(BigRational::new(int_from_json(&arr[0])?, den))
}

impl ExactField for BigRational {
    const NAME: &'static str = "Q";

    fn from_rational(q: BigRational) -> Self {
        q
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn sign(&self) -> Ordering {
        self.cmp(&<BigRational as Zero>::zero())
    }
    fn approx(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
    fn as_rational(&self) -> Option<BigRational> {
        Some(self.clone())
    }
    fn to_json(&self) -> Value {
        rational_json(self)
    }
    fn from_json(v: &Value) -> Result<Self> {
        rational_from_json(v)
    }
}

/// `a + b·√3`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Sqrt3 {
    pub a: BigRational,
    pub b: BigRational,
}

impl Sqrt3 {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        Sqrt3 { a, b }
    }
}

impl PartialOrd for Sqrt3 {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Sqrt3 {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_value(other)
    }
}

impl ExactField for Sqrt3 {
    const NAME: &'static str = "Q(sqrt3)";

    fn from_rational(q: BigRational) -> Self {
        Sqrt3 {
            a: q,
            b: <BigRational as Zero>::zero(),
        }
    }
    fn add(&self, o: &Self) -> Self {
        Sqrt3::new(&self.a + &o.a, &self.b + &o.b)
    }
    fn sub(&self, o: &Self) -> Self {
        Sqrt3::new(&self.a - &o.a, &self.b - &o.b)
    }
    fn mul(&self, o: &Self) -> Self {
        let three = BigRational::from_integer(3.into());
        Sqrt3::new(&self.a * &o.a + three * &self.b * &o.b, &self.a * &o.b + &self.b * &o.a)
    }
    fn div(&self, o: &Self) -> Self {
        let three = BigRational::from_integer(3.into());
        let norm = &o.a * &o.a - three * &o.b * &o.b;
        assert!(!Zero::is_zero(&norm), "division by zero in Q(sqrt3)");
        let conj = Sqrt3::new(o.a.clone(), -o.b.clone());
        let num = self.mul(&conj);
        Sqrt3::new(num.a / &norm, num.b / norm)
    }
    fn sign(&self) -> Ordering {
        let sa = Signed::signum(&self.a);
        let sb = Signed::signum(&self.b);
        let zero = <BigRational as Zero>::zero();
        let sgn = |q: &BigRational| q.cmp(&zero);
        if Zero::is_zero(&self.b) {
            return sgn(&self.a);
        }
        if Zero::is_zero(&self.a) || sa == sb {
            return sgn(&self.b);
        }
        // opposite signs: compare a² with 3b²
        let three = BigRational::from_integer(3.into());
        let a2 = &self.a * &self.a;
        let b2 = three * &self.b * &self.b;
        if a2 > b2 {
            sgn(&self.a)
        } else {
            sgn(&self.b)
        }
    }
    fn approx(&self) -> f64 {
        ToPrimitive::to_f64(&self.a).unwrap_or(f64::NAN) + ToPrimitive::to_f64(&self.b).unwrap_or(f64::NAN) * 3f64.sqrt()
    }
    fn as_rational(&self) -> Option<BigRational> {
        Zero::is_zero(&self.b).then(|| self.a.clone())
    }
    fn to_json(&self) -> Value {
        json!({"a": rational_json(&self.a), "b": rational_json(&self.b)})
    }
    fn from_json(v: &Value) -> Result<Self> {
        match v {
            Value::Array(_) => Ok(Sqrt3::from_rational(rational_from_json(v)?)),
            Value::Object(m) => {
                let part = |k: &str| -> Result<BigRational> {
                    m.get(k)
                        .map(rational_from_json)
                        .unwrap_or_else(|| Ok(<BigRational as Zero>::zero()))
                };
                Ok(Sqrt3::new(part("a")?, part("b")?))
            }
            other => Err(Error::Parse(format!("bad Q(sqrt3) coordinate {other}"))),
        }
    }
}

pub(crate) fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}
