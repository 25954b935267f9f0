//! Self-contained SVG emission: polylines, heat maps, markers.

use std::fmt::Write as _;

pub struct Svg {
    width: f64,
    height: f64,
    body: String,
}

impl Svg {
    pub fn new(width: f64, height: f64) -> Self {
        Self { width, height, body: String::new() }
    }

    pub fn rect(&mut self, x: f64, y: f64, w: f64, h: f64, fill: &str) {
        let _ = writeln!(
            self.body,
            r#"<rect x="{:.2}" y="{:.2}" width="{:.2}" height="{:.2}" fill="{}"/>"#,
            x, y, w, h, fill
        );
    }

    pub fn line(&mut self, x1: f64, y1: f64, x2: f64, y2: f64, stroke: &str, width: f64) {
        let _ = writeln!(
            self.body,
            r#"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="{}" stroke-width="{:.2}"/>"#,
            x1, y1, x2, y2, stroke, width
        );
    }

    pub fn polyline(&mut self, pts: &[(f64, f64)], stroke: &str, width: f64, opacity: f64) {
        if pts.len() < 2 {
            return;
        }
        let mut coords = String::with_capacity(pts.len() * 14);
        for (x, y) in pts {
            let _ = write!(coords, "{:.2},{:.2} ", x, y);
        }
        let _ = writeln!(
            self.body,
            r#"<polyline points="{}" fill="none" stroke="{}" stroke-width="{:.2}" stroke-opacity="{:.3}" stroke-linejoin="round"/>"#,
            coords.trim_end(),
            stroke,
            width,
            opacity
        );
    }

    pub fn circle(&mut self, x: f64, y: f64, r: f64, fill: &str) {
        let _ = writeln!(
            self.body,
            r#"<circle cx="{:.2}" cy="{:.2}" r="{:.2}" fill="{}"/>"#,
            x, y, r, fill
        );
    }

    /// Five-pointed star marker.
    pub fn star(&mut self, x: f64, y: f64, r: f64, fill: &str) {
        let mut pts = String::new();
        for k in 0..10 {
            let ang = -std::f64::consts::FRAC_PI_2 + k as f64 * std::f64::consts::PI / 5.0;
            let rad = if k % 2 == 0 { r } else { 0.42 * r };
            let _ = write!(pts, "{:.2},{:.2} ", x + rad * ang.cos(), y + rad * ang.sin());
        }
        let _ = writeln!(
            self.body,
            r##"<polygon points="{}" fill="{}" stroke="#1a2a5e" stroke-width="0.8"/>"##,
            pts.trim_end(),
            fill
        );
    }

    pub fn text(&mut self, x: f64, y: f64, size: f64, content: &str) {
        let escaped = content.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;");
        let _ = writeln!(
            self.body,
            r##"<text x="{:.2}" y="{:.2}" font-size="{:.1}" font-family="sans-serif" fill="#222">{}</text>"##,
            x, y, size, escaped
        );
    }

    pub fn finish(self) -> String {
        format!(
            "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{:.0}\" height=\"{:.0}\" viewBox=\"0 0 {:.0} {:.0}\">\n<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n{}</svg>\n",
            self.width, self.height, self.width, self.height, self.body
        )
    }
}

/// Perceptually uniform gradient used to encode time; anchor table with linear
/// interpolation (the exact palette is cosmetic, not normative).
pub fn viridis(t: f64) -> String {
    const ANCHORS: [(f64, f64, f64); 5] = [
        (68.0, 1.0, 84.0),
        (59.0, 82.0, 139.0),
        (33.0, 145.0, 140.0),
        (94.0, 201.0, 98.0),
        (253.0, 231.0, 37.0),
    ];
    let t = t.clamp(0.0, 1.0) * (ANCHORS.len() - 1) as f64;
    let k = (t.floor() as usize).min(ANCHORS.len() - 2);
    let f = t - k as f64;
    let (r0, g0, b0) = ANCHORS[k];
    let (r1, g1, b1) = ANCHORS[k + 1];
    format!(
        "#{:02x}{:02x}{:02x}",
        (r0 + f * (r1 - r0)) as u8,
        (g0 + f * (g1 - g0)) as u8,
        (b0 + f * (b1 - b0)) as u8
    )
}

/// Linear map from a data range onto pixel coordinates.
#[derive(Debug, Clone, Copy)]
pub struct Frame {
    pub x0: f64,
    pub x1: f64,
    pub y0: f64,
    pub y1: f64,
    pub px: f64,
    pub py: f64,
    pub pw: f64,
    pub ph: f64,
}

impl Frame {
    pub fn map(&self, x: f64, y: f64) -> (f64, f64) {
        let fx = (x - self.x0) / (self.x1 - self.x0);
        let fy = (y - self.y0) / (self.y1 - self.y0);
        (self.px + fx * self.pw, self.py + (1.0 - fy) * self.ph)
    }
}
