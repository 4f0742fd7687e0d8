use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hyperbolic::Hyperbolic;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum IntervalKind {
    #[default]
    Closed,
    Open,
    /// `(lo, hi]`
    HalfOpenLeft,
    /// `[lo, hi)`
    HalfOpenRight,
}

/// A closed real interval `[lo, hi]`, one idempotent projection of an
/// [`HInterval`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RealInterval {
    pub lo: f64,
    pub hi: f64,
}

impl RealInterval {
    pub fn width(self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }
}

/// The order interval `{ξ : lo ⪯ ξ ⪯ hi}`, an axis-aligned rectangle in
/// idempotent coordinates.
///
/// Endpoints only need `lo ⪯ hi`; intervals with a zero-width component are
/// accepted and reported by [`HInterval::is_degenerate`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HInterval {
    lo: Hyperbolic,
    hi: Hyperbolic,
    kind: IntervalKind,
}

impl HInterval {
    pub fn new(lo: Hyperbolic, hi: Hyperbolic, kind: IntervalKind) -> Result<Self> {
        lo.check_finite("interval endpoint")?;
        hi.check_finite("interval endpoint")?;
        if !lo.precedes(hi) {
            return Err(Error::UnorderedEndpoints { lo, hi });
        }
        Ok(Self { lo, hi, kind })
    }

    pub fn closed(lo: Hyperbolic, hi: Hyperbolic) -> Result<Self> {
        Self::new(lo, hi, IntervalKind::Closed)
    }

    /// `[0, 1̃]_k`
    pub fn unit() -> Self {
        Self {
            lo: Hyperbolic::ZERO,
            hi: Hyperbolic::ONE,
            kind: IntervalKind::Closed,
        }
    }

    /// Builds `[a1, b1] e1 + [a2, b2] e2`.
    pub fn from_projections(e1: RealInterval, e2: RealInterval) -> Result<Self> {
        Self::closed(Hyperbolic::new(e1.lo, e2.lo), Hyperbolic::new(e1.hi, e2.hi))
    }

    pub fn lo(&self) -> Hyperbolic {
        self.lo
    }

    pub fn hi(&self) -> Hyperbolic {
        self.hi
    }

    pub fn kind(&self) -> IntervalKind {
        self.kind
    }

    /// `hi - lo`. The same formula is used for every kind of interval.
    pub fn length(&self) -> Hyperbolic {
        self.hi - self.lo
    }

    /// True when some component has zero width.
    pub fn is_degenerate(&self) -> bool {
        self.lo.a1 == self.hi.a1 || self.lo.a2 == self.hi.a2
    }

    pub fn projections(&self) -> (RealInterval, RealInterval) {
        (
            RealInterval {
                lo: self.lo.a1,
                hi: self.hi.a1,
            },
            RealInterval {
                lo: self.lo.a2,
                hi: self.hi.a2,
            },
        )
    }

    /// Euclidean area of the rectangle.
    pub fn area(&self) -> f64 {
        let len = self.length();
        len.a1 * len.a2
    }

    pub fn contains(&self, x: Hyperbolic) -> bool {
        match self.kind {
            IntervalKind::Closed => self.lo.precedes(x) && x.precedes(self.hi),
            IntervalKind::Open => self.lo.strictly_precedes(x) && x.strictly_precedes(self.hi),
            IntervalKind::HalfOpenLeft => self.lo.strictly_precedes(x) && x.precedes(self.hi),
            IntervalKind::HalfOpenRight => self.lo.precedes(x) && x.strictly_precedes(self.hi),
        }
    }

    /// Whether `other` lies inside the closure of `self`.
    pub fn encloses(&self, other: &HInterval) -> bool {
        self.lo.precedes(other.lo) && other.hi.precedes(self.hi)
    }

    /// Whether the two rectangles share interior points.
    pub fn interiors_overlap(&self, other: &HInterval) -> bool {
        let lo = self.lo.join(other.lo);
        let hi = self.hi.meet(other.hi);
        lo.strictly_precedes(hi)
    }
}

impl<'de> Deserialize<'de> for HInterval {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Raw {
            lo: Hyperbolic,
            hi: Hyperbolic,
            #[serde(default)]
            kind: IntervalKind,
        }
        let raw = Raw::deserialize(de)?;
        HInterval::new(raw.lo, raw.hi, raw.kind).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(a1: f64, a2: f64) -> Hyperbolic {
        Hyperbolic::new(a1, a2)
    }

    #[test]
    fn lengths() {
        assert_eq!(HInterval::unit().length(), Hyperbolic::ONE);
        let i4 = HInterval::closed(h(1.0 / 3.0, 0.0), h(2.0 / 3.0, 1.0 / 3.0)).unwrap();
        let len = i4.length();
        assert_eq!(len.a2, 1.0 / 3.0);
        assert!((len.a1 - 1.0 / 3.0).abs() < 1e-16);
        let x = h(0.3, -2.0);
        assert_eq!(HInterval::closed(x, x).unwrap().length(), Hyperbolic::ZERO);
    }

    #[test]
    fn projection_examples() {
        let (p1, p2) = HInterval::unit().projections();
        assert_eq!((p1.lo, p1.hi, p2.lo, p2.hi), (0.0, 1.0, 0.0, 1.0));
        let i4 = HInterval::closed(h(1.0 / 3.0, 0.0), h(2.0 / 3.0, 1.0 / 3.0)).unwrap();
        let (p1, p2) = i4.projections();
        assert_eq!((p1.lo, p1.hi), (1.0 / 3.0, 2.0 / 3.0));
        assert_eq!((p2.lo, p2.hi), (0.0, 1.0 / 3.0));
        assert_eq!(HInterval::from_projections(p1, p2).unwrap(), i4);
        let x = h(0.3, -2.0);
        let (p1, p2) = HInterval::closed(x, x).unwrap().projections();
        assert_eq!((p1.lo, p1.hi, p2.lo, p2.hi), (0.3, 0.3, -2.0, -2.0));
    }

    #[test]
    fn rejects_unordered_endpoints() {
        assert!(matches!(
            HInterval::closed(h(1.0, 0.0), h(0.0, 1.0)),
            Err(Error::UnorderedEndpoints { .. })
        ));
        assert!(HInterval::closed(h(0.0, 0.0), h(0.0, 1.0))
            .unwrap()
            .is_degenerate());
        assert!(!HInterval::unit().is_degenerate());
    }

    #[test]
    fn membership_by_kind() {
        let open = HInterval::new(Hyperbolic::ZERO, Hyperbolic::ONE, IntervalKind::Open).unwrap();
        assert!(open.contains(h(0.5, 0.5)));
        assert!(!open.contains(h(0.0, 0.5)));
        assert!(HInterval::unit().contains(h(0.0, 0.5)));
        let right = HInterval::new(
            Hyperbolic::ZERO,
            Hyperbolic::ONE,
            IntervalKind::HalfOpenRight,
        )
        .unwrap();
        assert!(right.contains(Hyperbolic::ZERO));
        assert!(!right.contains(Hyperbolic::ONE));
    }

    #[test]
    fn overlap() {
        let a = HInterval::closed(h(0.0, 0.0), h(0.5, 1.0)).unwrap();
        let b = HInterval::closed(h(0.5, 0.0), h(1.0, 1.0)).unwrap();
        assert!(!a.interiors_overlap(&b));
        assert!(a.interiors_overlap(&a));
    }

    #[test]
    fn json_defaults_to_closed() {
        let i: HInterval = serde_json::from_str(r#"{"lo": 0, "hi": {"e1": 1, "e2": 2}}"#).unwrap();
        assert_eq!(i.kind(), IntervalKind::Closed);
        assert_eq!(i.hi(), h(1.0, 2.0));
        assert!(serde_json::from_str::<HInterval>(r#"{"lo": 1, "hi": 0}"#).is_err());
    }
}
