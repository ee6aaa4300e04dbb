use std::fmt::Write;

use crate::section::SectionCurve;

#[derive(Debug, Clone, PartialEq)]
pub struct SvgStyle {
    pub stroke: String,
    /// Stroke width as a fraction of the half extent.
    pub stroke_width: f64,
    pub show_axes: bool,
    /// Output width and height in pixels.
    pub size_px: u32,
}

impl Default for SvgStyle {
    fn default() -> Self {
        Self {
            stroke: "#c0392b".to_string(),
            stroke_width: 0.005,
            show_axes: true,
            size_px: 512,
        }
    }
}

/// One `<path>` per polyline in plane coordinates. The y flip to screen
/// orientation lives in the group transform, so path data stays in `(t, w)`.
pub fn to_svg(curve: &SectionCurve, style: &SvgStyle) -> String {
    let e = if curve.half_extent > 0.0 {
        curve.half_extent
    } else {
        1.0
    };
    let mut s = String::new();
    s.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{px}\" height=\"{px}\" viewBox=\"{} {} {} {}\">",
        -e,
        -e,
        2.0 * e,
        2.0 * e,
        px = style.size_px
    );
    let _ = writeln!(
        s,
        "<g transform=\"scale(1,-1)\" fill=\"none\" stroke-linejoin=\"round\" stroke-width=\"{}\">",
        style.stroke_width * e
    );
    if style.show_axes {
        let _ = writeln!(
            s,
            "<line x1=\"{}\" y1=\"0\" x2=\"{e}\" y2=\"0\" stroke=\"#999999\"/>",
            -e
        );
        let _ = writeln!(
            s,
            "<line x1=\"0\" y1=\"{}\" x2=\"0\" y2=\"{e}\" stroke=\"#999999\"/>",
            -e
        );
    }
    for (line, closed) in curve.polylines2d.iter().zip(&curve.closed) {
        let mut d = String::new();
        for (k, p) in line.iter().enumerate() {
            let _ = write!(d, "{}{} {}", if k == 0 { "M" } else { " L" }, p.t, p.w);
        }
        if *closed {
            d.push_str(" Z");
        }
        let _ = writeln!(s, "<path d=\"{d}\" stroke=\"{}\"/>", style.stroke);
    }
    s.push_str("</g>\n</svg>\n");
    s
}
