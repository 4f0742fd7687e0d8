//! SVG diagrams of intervals and partitions, e1 to the right and e2 up.

use std::fmt::Write;

use crate::hyperbolic::Hyperbolic;
use crate::intervals::{HInterval, RegularPartition, StrongPartition, WeakPartition};
use crate::variation::DiscontinuityLines;

const SIZE: f64 = 512.0;
const MARGIN: f64 = 40.0;

/// Something that can be drawn.
#[derive(Debug, Clone, Copy)]
pub enum Figure<'a> {
    Interval(&'a HInterval),
    Strong(&'a StrongPartition),
    Weak(&'a WeakPartition),
    Regular(&'a RegularPartition),
    Lines(&'a HInterval, &'a DiscontinuityLines),
}

/// Maps the frame interval onto the drawing area. A zero-width component
/// is centred.
struct Frame {
    lo: Hyperbolic,
    width: Hyperbolic,
}

impl Frame {
    fn new(interval: &HInterval) -> Self {
        Frame {
            lo: interval.lo(),
            width: interval.length(),
        }
    }

    fn axis(lo: f64, width: f64, v: f64) -> f64 {
        if width == 0.0 {
            0.5
        } else {
            (v - lo) / width
        }
    }

    fn x(&self, a1: f64) -> f64 {
        MARGIN + Self::axis(self.lo.a1, self.width.a1, a1) * (SIZE - 2.0 * MARGIN)
    }

    fn y(&self, a2: f64) -> f64 {
        SIZE - MARGIN - Self::axis(self.lo.a2, self.width.a2, a2) * (SIZE - 2.0 * MARGIN)
    }
}

struct Canvas {
    out: String,
    frame: Frame,
}

impl Canvas {
    fn new(frame_interval: &HInterval) -> Self {
        let mut out = String::new();
        out.push_str(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 512 512\" width=\"512\" height=\"512\">\n",
        );
        out.push_str("<rect x=\"0\" y=\"0\" width=\"512\" height=\"512\" fill=\"white\"/>\n");
        let axis_y = SIZE - MARGIN / 2.0;
        let _ = writeln!(
            out,
            "<line x1=\"{m:.3}\" y1=\"{axis_y:.3}\" x2=\"{e:.3}\" y2=\"{axis_y:.3}\" stroke=\"gray\"/>\n\
             <text x=\"{t:.3}\" y=\"{axis_y:.3}\" font-size=\"12\" dominant-baseline=\"middle\">e1</text>",
            m = MARGIN,
            e = SIZE - MARGIN,
            t = SIZE - MARGIN + 6.0,
        );
        let axis_x = MARGIN / 2.0;
        let _ = writeln!(
            out,
            "<line x1=\"{axis_x:.3}\" y1=\"{b:.3}\" x2=\"{axis_x:.3}\" y2=\"{m:.3}\" stroke=\"gray\"/>\n\
             <text x=\"{axis_x:.3}\" y=\"{t:.3}\" font-size=\"12\" text-anchor=\"middle\">e2</text>",
            b = SIZE - MARGIN,
            m = MARGIN,
            t = MARGIN - 8.0,
        );
        Canvas {
            out,
            frame: Frame::new(frame_interval),
        }
    }

    /// A rectangle, or a segment or dot when it has no extent.
    fn region(&mut self, iv: &HInterval, fill: &str, stroke: &str) {
        let f = &self.frame;
        let (x0, x1) = (f.x(iv.lo().a1), f.x(iv.hi().a1));
        let (y0, y1) = (f.y(iv.hi().a2), f.y(iv.lo().a2));
        let flat_x = iv.lo().a1 == iv.hi().a1;
        let flat_y = iv.lo().a2 == iv.hi().a2;
        let _ = match (flat_x, flat_y) {
            (true, true) => writeln!(
                self.out,
                "<circle cx=\"{x0:.3}\" cy=\"{y0:.3}\" r=\"4.000\" fill=\"{stroke}\"/>"
            ),
            (true, false) | (false, true) => writeln!(
                self.out,
                "<line x1=\"{x0:.3}\" y1=\"{y1:.3}\" x2=\"{x1:.3}\" y2=\"{y0:.3}\" stroke=\"{stroke}\" stroke-width=\"3\"/>"
            ),
            (false, false) => writeln!(
                self.out,
                "<rect x=\"{x0:.3}\" y=\"{y0:.3}\" width=\"{w:.3}\" height=\"{h:.3}\" fill=\"{fill}\" stroke=\"{stroke}\"/>",
                w = x1 - x0,
                h = y1 - y0,
            ),
        };
    }

    fn staircase(&mut self, points: &[Hyperbolic]) {
        let f = &self.frame;
        let coords: Vec<String> = points
            .iter()
            .map(|p| format!("{:.3},{:.3}", f.x(p.a1), f.y(p.a2)))
            .collect();
        let _ = writeln!(
            self.out,
            "<polyline points=\"{}\" fill=\"none\" stroke=\"black\" stroke-width=\"1.5\"/>",
            coords.join(" ")
        );
        for p in points {
            let _ = writeln!(
                self.out,
                "<circle cx=\"{:.3}\" cy=\"{:.3}\" r=\"3.000\" fill=\"black\"/>",
                f.x(p.a1),
                f.y(p.a2)
            );
        }
    }

    fn finish(mut self) -> String {
        self.out.push_str("</svg>\n");
        self.out
    }
}

const OUTER_FILL: &str = "#eef3fb";
const CELL_FILL: &str = "#c9dbf2";

/// Draws `figure` on a fixed 512×512 canvas. The output depends only on the
/// figure, so identical inputs give identical bytes.
pub fn render_svg(figure: Figure<'_>) -> String {
    match figure {
        Figure::Interval(iv) => {
            let mut c = Canvas::new(iv);
            c.region(iv, OUTER_FILL, "black");
            c.finish()
        }
        Figure::Strong(p) => {
            let mut c = Canvas::new(p.interval());
            c.region(p.interval(), OUTER_FILL, "gray");
            for sub in p.subintervals() {
                c.region(&sub, CELL_FILL, "#3b6ea8");
            }
            c.staircase(p.points());
            c.finish()
        }
        Figure::Weak(w) => {
            let mut c = Canvas::new(w.interval());
            c.region(w.interval(), OUTER_FILL, "gray");
            for sub in w.subintervals() {
                c.region(sub, CELL_FILL, "#3b6ea8");
            }
            c.finish()
        }
        Figure::Regular(r) => {
            let mut c = Canvas::new(r.interval());
            c.region(r.interval(), OUTER_FILL, "gray");
            for cell in r.cells() {
                c.region(cell, CELL_FILL, "#3b6ea8");
            }
            c.finish()
        }
        Figure::Lines(iv, lines) => {
            let mut c = Canvas::new(iv);
            c.region(iv, OUTER_FILL, "gray");
            let (lo, hi) = (iv.lo(), iv.hi());
            for &x in &lines.vertical {
                let seg = HInterval::closed(Hyperbolic::new(x, lo.a2), Hyperbolic::new(x, hi.a2));
                if let Ok(seg) = seg {
                    c.region(&seg, "none", "#c0392b");
                }
            }
            for &y in &lines.horizontal {
                let seg = HInterval::closed(Hyperbolic::new(lo.a1, y), Hyperbolic::new(hi.a1, y));
                if let Ok(seg) = seg {
                    c.region(&seg, "none", "#c0392b");
                }
            }
            c.finish()
        }
    }
}
