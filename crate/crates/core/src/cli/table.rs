//! CSV renderings. Hyperbolic values become two columns, `e1` and `e2`.

use std::fmt::Write;

use crate::hyperbolic::Hyperbolic;
use crate::integration::Level;
use crate::intervals::HInterval;

pub(super) fn quantities(rows: &[(&str, Hyperbolic)]) -> String {
    let mut out = String::from("quantity,e1,e2\n");
    for (name, v) in rows {
        let _ = writeln!(out, "{name},{},{}", v.a1, v.a2);
    }
    out
}

pub(super) fn values(points: &[Hyperbolic]) -> String {
    let mut out = String::from("index,e1,e2\n");
    for (i, p) in points.iter().enumerate() {
        let _ = writeln!(out, "{i},{},{}", p.a1, p.a2);
    }
    out
}

pub(super) fn intervals(items: &[HInterval]) -> String {
    let mut out = String::from("index,lo_e1,lo_e2,hi_e1,hi_e2\n");
    for (i, iv) in items.iter().enumerate() {
        let (lo, hi) = (iv.lo(), iv.hi());
        let _ = writeln!(out, "{i},{},{},{},{}", lo.a1, lo.a2, hi.a1, hi.a2);
    }
    out
}

/// Convergence table, one row per refinement level. A component that
/// stopped earlier leaves its cells empty.
pub(super) fn history(levels: &[Vec<Level>; 2]) -> String {
    let mut out = String::from("level,points_e1,e1,tag_gap_e1,points_e2,e2,tag_gap_e2\n");
    let rows = levels[0].len().max(levels[1].len());
    for k in 0..rows {
        let _ = write!(out, "{k}");
        for component in levels {
            match component.get(k) {
                Some(l) => {
                    let _ = write!(out, ",{},{},{}", l.points, l.value, l.tag_gap);
                }
                None => out.push_str(",,,"),
            }
        }
        out.push('\n');
    }
    out
}
