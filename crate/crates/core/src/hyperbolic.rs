//! The ring of hyperbolic numbers in idempotent coordinates.
//!
//! A hyperbolic number `t + s k` (with `k² = 1`) is stored as its idempotent
//! pair `a1 e1 + a2 e2`, where `e1 = (1 + k)/2`, `e2 = (1 - k)/2`,
//! `a1 = t + s` and `a2 = t - s`. In these coordinates multiplication, the
//! partial order and the metric all act componentwise.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize};

use crate::error::{Error, Result};
use crate::numeric::exact_sum;

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct Hyperbolic {
    #[serde(rename = "e1")]
    pub a1: f64,
    #[serde(rename = "e2")]
    pub a2: f64,
}

/// Result of comparing two hyperbolic numbers under the componentwise order.
///
/// `Less { strict: true }` means both components are strictly smaller;
/// `strict: false` means one component is equal and the other smaller.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum OrderRelation {
    Less { strict: bool },
    Equal,
    Greater { strict: bool },
    Incomparable,
}

impl OrderRelation {
    pub fn reverse(self) -> Self {
        match self {
            OrderRelation::Less { strict } => OrderRelation::Greater { strict },
            OrderRelation::Greater { strict } => OrderRelation::Less { strict },
            other => other,
        }
    }

    /// `Less` or `Equal`, i.e. the left operand precedes the right one.
    pub fn is_le(self) -> bool {
        matches!(self, OrderRelation::Less { .. } | OrderRelation::Equal)
    }
}

impl Hyperbolic {
    pub const ZERO: Self = Self::new(0.0, 0.0);
    /// The unit `1 = e1 + e2`.
    pub const ONE: Self = Self::new(1.0, 1.0);
    pub const E1: Self = Self::new(1.0, 0.0);
    pub const E2: Self = Self::new(0.0, 1.0);
    /// The hyperbolic unit `k = e1 - e2`.
    pub const K: Self = Self::new(1.0, -1.0);

    pub const fn new(a1: f64, a2: f64) -> Self {
        Self { a1, a2 }
    }

    /// Embeds a real number on the diagonal, `x ↦ x e1 + x e2`.
    pub const fn real(x: f64) -> Self {
        Self::new(x, x)
    }

    /// Builds `t + s k`.
    pub fn from_canonical(t: f64, s: f64) -> Self {
        Self::new(t + s, t - s)
    }

    /// Returns `(t, s)` with `self = t + s k`.
    pub fn to_canonical(self) -> (f64, f64) {
        ((self.a1 + self.a2) / 2.0, (self.a1 - self.a2) / 2.0)
    }

    pub fn is_finite(self) -> bool {
        self.a1.is_finite() && self.a2.is_finite()
    }

    pub(crate) fn check_finite(self, what: &'static str) -> Result<Self> {
        if self.is_finite() {
            Ok(self)
        } else {
            Err(Error::NonFinite(what))
        }
    }

    /// Both components strictly positive.
    pub fn is_positive(self) -> bool {
        self.a1 > 0.0 && self.a2 > 0.0
    }

    /// Both components non-negative.
    pub fn is_nonnegative(self) -> bool {
        self.a1 >= 0.0 && self.a2 >= 0.0
    }

    /// A nonzero number with a zero component.
    pub fn is_zero_divisor(self) -> bool {
        (self.a1 == 0.0) != (self.a2 == 0.0)
    }

    pub fn component(self, c: crate::Component) -> f64 {
        match c {
            crate::Component::E1 => self.a1,
            crate::Component::E2 => self.a2,
        }
    }

    pub fn map(self, f: impl Fn(f64) -> f64) -> Self {
        Self::new(f(self.a1), f(self.a2))
    }

    pub fn inverse(self) -> Result<Self> {
        match (self.a1 == 0.0, self.a2 == 0.0) {
            (true, true) => Err(Error::ZeroValue),
            (true, false) | (false, true) => Err(Error::ZeroDivisor(self)),
            (false, false) => Ok(Self::new(1.0 / self.a1, 1.0 / self.a2)),
        }
    }

    pub fn checked_div(self, rhs: Self) -> Result<Self> {
        Ok(self * rhs.inverse()?)
    }

    pub fn compare(self, other: Self) -> OrderRelation {
        let c1 = self.a1.partial_cmp(&other.a1);
        let c2 = self.a2.partial_cmp(&other.a2);
        use Ordering::*;
        match (c1, c2) {
            (Some(Equal), Some(Equal)) => OrderRelation::Equal,
            (Some(Less), Some(Less)) => OrderRelation::Less { strict: true },
            (Some(Less), Some(Equal)) | (Some(Equal), Some(Less)) => {
                OrderRelation::Less { strict: false }
            }
            (Some(Greater), Some(Greater)) => OrderRelation::Greater { strict: true },
            (Some(Greater), Some(Equal)) | (Some(Equal), Some(Greater)) => {
                OrderRelation::Greater { strict: false }
            }
            _ => OrderRelation::Incomparable,
        }
    }

    /// `self ⪯ other`.
    pub fn precedes(self, other: Self) -> bool {
        self.a1 <= other.a1 && self.a2 <= other.a2
    }

    /// `self ≺ other`: strictly smaller in both components.
    pub fn strictly_precedes(self, other: Self) -> bool {
        self.a1 < other.a1 && self.a2 < other.a2
    }

    /// The hyperbolic metric `|self - other|_k`.
    pub fn metric(self, other: Self) -> Self {
        Self::new((self.a1 - other.a1).abs(), (self.a2 - other.a2).abs())
    }

    /// Componentwise absolute value, `|self|_k`.
    pub fn abs(self) -> Self {
        self.map(f64::abs)
    }

    /// Least upper bound of a pair.
    pub fn join(self, other: Self) -> Self {
        Self::new(self.a1.max(other.a1), self.a2.max(other.a2))
    }

    /// Greatest lower bound of a pair.
    pub fn meet(self, other: Self) -> Self {
        Self::new(self.a1.min(other.a1), self.a2.min(other.a2))
    }

    /// Supremum of a nonempty finite set: the componentwise maximum.
    pub fn sup<I: IntoIterator<Item = Hyperbolic>>(set: I) -> Result<Self> {
        set.into_iter().reduce(Self::join).ok_or(Error::EmptySet)
    }

    /// Correctly rounded componentwise sum.
    pub fn exact_sum<I>(values: I) -> Self
    where
        I: IntoIterator<Item = Hyperbolic>,
        I::IntoIter: Clone,
    {
        let it = values.into_iter();
        Self::new(
            exact_sum(it.clone().map(|h| h.a1)),
            exact_sum(it.map(|h| h.a2)),
        )
    }

    /// Renders as `t + s*j`.
    pub fn canonical(self) -> Canonical {
        Canonical(self)
    }
}

/// Free-function form of [`Hyperbolic::sup`].
pub fn sup_set(set: &[Hyperbolic]) -> Result<Hyperbolic> {
    Hyperbolic::sup(set.iter().copied())
}

impl PartialOrd for Hyperbolic {
    /// The componentwise partial order; `None` for incomparable pairs.
    ///
    /// Note that `<` here means "precedes and differs", which is weaker than
    /// [`Hyperbolic::strictly_precedes`].
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match self.compare(*other) {
            OrderRelation::Less { .. } => Some(Ordering::Less),
            OrderRelation::Equal => Some(Ordering::Equal),
            OrderRelation::Greater { .. } => Some(Ordering::Greater),
            OrderRelation::Incomparable => None,
        }
    }
}

impl Add for Hyperbolic {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.a1 + rhs.a1, self.a2 + rhs.a2)
    }
}

impl Sub for Hyperbolic {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.a1 - rhs.a1, self.a2 - rhs.a2)
    }
}

impl Mul for Hyperbolic {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Self::new(self.a1 * rhs.a1, self.a2 * rhs.a2)
    }
}

impl Mul<f64> for Hyperbolic {
    type Output = Self;
    fn mul(self, rhs: f64) -> Self {
        Self::new(self.a1 * rhs, self.a2 * rhs)
    }
}

impl Mul<Hyperbolic> for f64 {
    type Output = Hyperbolic;
    fn mul(self, rhs: Hyperbolic) -> Hyperbolic {
        rhs * self
    }
}

impl Neg for Hyperbolic {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.a1, -self.a2)
    }
}

impl AddAssign for Hyperbolic {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl SubAssign for Hyperbolic {
    fn sub_assign(&mut self, rhs: Self) {
        *self = *self - rhs;
    }
}

impl Sum for Hyperbolic {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::ZERO, Add::add)
    }
}

impl From<f64> for Hyperbolic {
    fn from(x: f64) -> Self {
        Self::real(x)
    }
}

fn write_term(f: &mut fmt::Formatter<'_>, first: bool, coef: f64, unit: &str) -> fmt::Result {
    if first {
        write!(f, "{coef}*{unit}")
    } else if coef.is_sign_negative() {
        write!(f, " - {}*{unit}", -coef)
    } else {
        write!(f, " + {coef}*{unit}")
    }
}

impl fmt::Display for Hyperbolic {
    /// `a1*e1 + a2*e2`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_term(f, true, self.a1, "e1")?;
        write_term(f, false, self.a2, "e2")
    }
}

/// Display adapter for the `t + s*j` form.
pub struct Canonical(Hyperbolic);

impl fmt::Display for Canonical {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (t, s) = self.0.to_canonical();
        write!(f, "{t}")?;
        write_term(f, false, s, "j")
    }
}

/// Parses sums of terms `c*u`, where the unit `u` is one of `e1`, `e2`,
/// `j` (or `k`), or absent for a real term. Both `a1*e1 + a2*e2` and
/// `t + s*j` are therefore accepted.
impl FromStr for Hyperbolic {
    type Err = Error;

    fn from_str(src: &str) -> Result<Self> {
        let bytes = src.as_bytes();
        let mut pos = 0;
        let mut acc = Hyperbolic::ZERO;
        let mut first = true;
        let skip_ws = |pos: &mut usize| {
            while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
                *pos += 1;
            }
        };
        let err = |offset: usize, message: &str| Error::Syntax {
            offset,
            message: message.to_string(),
        };

        loop {
            skip_ws(&mut pos);
            let mut sign = 1.0;
            match bytes.get(pos) {
                Some(b'+') => pos += 1,
                Some(b'-') => {
                    sign = -1.0;
                    pos += 1;
                }
                None if first => return Err(err(pos, "empty hyperbolic number")),
                None => break,
                _ if !first => return Err(err(pos, "expected '+' or '-'")),
                _ => {}
            }
            first = false;
            skip_ws(&mut pos);

            let start = pos;
            let coef = match scan_number(bytes, pos, true) {
                Some(end) => {
                    pos = end;
                    let v: f64 = src[start..end]
                        .parse()
                        .map_err(|_| err(start, "malformed number"))?;
                    skip_ws(&mut pos);
                    if bytes.get(pos) == Some(&b'*') {
                        pos += 1;
                        skip_ws(&mut pos);
                        if !bytes.get(pos).is_some_and(u8::is_ascii_alphabetic) {
                            return Err(err(pos, "expected a unit after '*'"));
                        }
                    }
                    Some(v)
                }
                None => None,
            };

            let ustart = pos;
            while pos < bytes.len() && bytes[pos].is_ascii_alphanumeric() {
                pos += 1;
            }
            let unit = match &src[ustart..pos] {
                "" if coef.is_some() => Hyperbolic::ONE,
                "" => return Err(err(ustart, "expected a number or unit")),
                "e1" => Hyperbolic::E1,
                "e2" => Hyperbolic::E2,
                "j" | "k" => Hyperbolic::K,
                other => {
                    return Err(Error::UnknownIdentifier {
                        name: other.to_string(),
                        offset: ustart,
                    })
                }
            };
            acc += unit * (sign * coef.unwrap_or(1.0));
        }
        acc.check_finite("hyperbolic literal")
    }
}

/// Returns the end offset of a decimal number starting at `pos`, if any.
/// With `units`, a trailing `e1`/`e2` is left for the caller as a unit name.
pub(crate) fn scan_number(bytes: &[u8], mut pos: usize, units: bool) -> Option<usize> {
    let start = pos;
    while pos < bytes.len() && bytes[pos].is_ascii_digit() {
        pos += 1;
    }
    if pos < bytes.len() && bytes[pos] == b'.' {
        pos += 1;
        while pos < bytes.len() && bytes[pos].is_ascii_digit() {
            pos += 1;
        }
    }
    if pos == start || (pos == start + 1 && bytes[start] == b'.') {
        return None;
    }
    // Exponent, only when digits follow; otherwise `e` starts a unit.
    if pos < bytes.len() && (bytes[pos] == b'e' || bytes[pos] == b'E') {
        let mut q = pos + 1;
        if q < bytes.len() && (bytes[q] == b'+' || bytes[q] == b'-') {
            q += 1;
        }
        let digits = q;
        while q < bytes.len() && bytes[q].is_ascii_digit() {
            q += 1;
        }
        let is_unit = units
            && bytes[pos] == b'e'
            && q == pos + 2
            && digits == pos + 1
            && matches!(bytes[digits], b'1' | b'2');
        if q > digits && !is_unit {
            pos = q;
        }
    }
    Some(pos)
}

impl<'de> Deserialize<'de> for Hyperbolic {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Pair {
            e1: f64,
            e2: f64,
        }

        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Pair(Pair),
            Real(f64),
            Text(String),
        }

        let h = match Repr::deserialize(de)? {
            Repr::Pair(p) => Hyperbolic::new(p.e1, p.e2),
            Repr::Real(x) => Hyperbolic::real(x),
            Repr::Text(s) => s.parse().map_err(serde::de::Error::custom)?,
        };
        h.check_finite("hyperbolic value")
            .map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_embedding() {
        assert_eq!(Hyperbolic::from_canonical(1.0, 0.0), Hyperbolic::ONE);
        assert_eq!(
            Hyperbolic::from_canonical(0.0, 1.0),
            Hyperbolic::new(1.0, -1.0)
        );
        assert_eq!(
            Hyperbolic::from_canonical(2.0, 1.0),
            Hyperbolic::new(3.0, 1.0)
        );
        assert_eq!(Hyperbolic::new(3.0, 1.0).to_canonical(), (2.0, 1.0));
    }

    #[test]
    fn products() {
        assert_eq!(Hyperbolic::E1 * Hyperbolic::E2, Hyperbolic::ZERO);
        assert_eq!(Hyperbolic::K * Hyperbolic::K, Hyperbolic::ONE);
        let x = Hyperbolic::new(-2.5, 7.0);
        assert_eq!(x * Hyperbolic::ONE, x);
    }

    #[test]
    fn inverses() {
        assert_eq!(
            Hyperbolic::new(2.0, 4.0).inverse().unwrap(),
            Hyperbolic::new(0.5, 0.25)
        );
        assert_eq!(
            Hyperbolic::E1.inverse(),
            Err(Error::ZeroDivisor(Hyperbolic::E1))
        );
        assert_eq!(Hyperbolic::ZERO.inverse(), Err(Error::ZeroValue));
        assert_eq!(Hyperbolic::ONE.inverse().unwrap(), Hyperbolic::ONE);
        assert!(Hyperbolic::E2.is_zero_divisor());
        assert!(!Hyperbolic::ZERO.is_zero_divisor());
    }

    #[test]
    fn order() {
        let h = Hyperbolic::new;
        assert_eq!(
            h(0.0, 0.0).compare(h(1.0, 1.0)),
            OrderRelation::Less { strict: true }
        );
        assert_eq!(
            h(1.0, 0.0).compare(h(0.0, 1.0)),
            OrderRelation::Incomparable
        );
        assert_eq!(
            h(1.0, 1.0).compare(h(1.0, 2.0)),
            OrderRelation::Less { strict: false }
        );
        assert_eq!(h(1.0, 2.0).compare(h(1.0, 2.0)), OrderRelation::Equal);
        assert!(h(1.0, 1.0) < h(1.0, 2.0));
        assert!(!h(1.0, 1.0).strictly_precedes(h(1.0, 2.0)));
        assert_eq!(h(1.0, 0.0).partial_cmp(&h(0.0, 1.0)), None);
    }

    #[test]
    fn metric_examples() {
        let x = Hyperbolic::new(3.0, 1.0);
        let y = Hyperbolic::new(1.0, 2.0);
        assert_eq!(x.metric(y), Hyperbolic::new(2.0, 1.0));
        assert_eq!(x.metric(x), Hyperbolic::ZERO);
        assert_eq!(x.metric(y), y.metric(x));
    }

    #[test]
    fn supremum() {
        assert_eq!(
            sup_set(&[Hyperbolic::E1, Hyperbolic::E2]).unwrap(),
            Hyperbolic::ONE
        );
        let x = Hyperbolic::new(4.0, -1.0);
        assert_eq!(sup_set(&[x]).unwrap(), x);
        let set = [
            Hyperbolic::new(1.0, 5.0),
            Hyperbolic::new(3.0, 2.0),
            Hyperbolic::new(2.0, 2.0),
        ];
        assert_eq!(sup_set(&set).unwrap(), Hyperbolic::new(3.0, 5.0));
        assert_eq!(sup_set(&[]), Err(Error::EmptySet));
    }

    #[test]
    fn text_forms() {
        let x = Hyperbolic::new(0.5, -2.0);
        assert_eq!(x.to_string(), "0.5*e1 - 2*e2");
        assert_eq!(x.to_string().parse::<Hyperbolic>().unwrap(), x);
        assert_eq!(x.canonical().to_string(), "-0.75 + 1.25*j");
        assert_eq!(x.canonical().to_string().parse::<Hyperbolic>().unwrap(), x);
        assert_eq!("2".parse::<Hyperbolic>().unwrap(), Hyperbolic::real(2.0));
        assert_eq!("e1".parse::<Hyperbolic>().unwrap(), Hyperbolic::E1);
        assert_eq!(
            "-e2 + 1e-1*e1".parse::<Hyperbolic>().unwrap(),
            Hyperbolic::new(0.1, -1.0)
        );
        assert_eq!(
            "1 + 2j".parse::<Hyperbolic>().unwrap(),
            Hyperbolic::new(3.0, -1.0)
        );
        assert!(matches!(
            "1 +".parse::<Hyperbolic>(),
            Err(Error::Syntax { .. })
        ));
        assert!(matches!(
            "3*e3".parse::<Hyperbolic>(),
            Err(Error::UnknownIdentifier { .. })
        ));
    }

    #[test]
    fn json_forms() {
        let x: Hyperbolic = serde_json::from_str(r#"{"e1": 1.5, "e2": -1}"#).unwrap();
        assert_eq!(x, Hyperbolic::new(1.5, -1.0));
        assert_eq!(
            serde_json::to_string(&x).unwrap(),
            r#"{"e1":1.5,"e2":-1.0}"#
        );
        let y: Hyperbolic = serde_json::from_str(r#""1 + 0.5*j""#).unwrap();
        assert_eq!(y, Hyperbolic::new(1.5, 0.5));
        let z: Hyperbolic = serde_json::from_str("0.25").unwrap();
        assert_eq!(z, Hyperbolic::real(0.25));
    }
}
