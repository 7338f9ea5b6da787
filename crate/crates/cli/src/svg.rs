//! Gerschgorin disc picture.
//!
//! Fixed 640x640 canvas. Every PC matrix has unit diagonal, so all discs are
//! centred at 1 and the view is centred there, spanning 1.1 times the
//! largest radius in each direction.

use std::fmt::Write;

use pctoep_core::{Complex64, GerschgorinDisc};

pub const SIZE: f64 = 640.0;
const MARKER_RADIUS: f64 = 2.0;

struct View {
    center: f64,
    scale: f64,
}

impl View {
    fn px(&self, z: Complex64) -> (f64, f64) {
        let half = SIZE / 2.0;
        (half + (z.re - self.center) * self.scale, half - z.im * self.scale)
    }
}

pub fn render(title: &str, discs: &[GerschgorinDisc], eigenvalues: &[Complex64]) -> String {
    let rmax = discs.iter().map(|d| d.radius).fold(0.0, f64::max).max(1.0);
    let center = discs.first().map_or(1.0, |d| d.center.re);
    let view = View { center, scale: SIZE / 2.0 / (1.1 * rmax) };

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="640" height="640" viewBox="0 0 640 640">"#
    );
    let _ = writeln!(s, r#"<rect width="640" height="640" fill="white"/>"#);
    let (_, axis_y) = view.px(Complex64::new(0.0, 0.0));
    let (axis_x, _) = view.px(Complex64::new(0.0, 0.0));
    let _ = writeln!(
        s,
        r##"<line class="axis" x1="0" y1="{axis_y:.3}" x2="640" y2="{axis_y:.3}" stroke="#888888" stroke-width="1"/>"##
    );
    let _ = writeln!(
        s,
        r##"<line class="axis" x1="{axis_x:.3}" y1="0" x2="{axis_x:.3}" y2="640" stroke="#888888" stroke-width="1"/>"##
    );
    for d in discs {
        let (cx, cy) = view.px(d.center);
        let _ = writeln!(
            s,
            r##"<circle class="disc" cx="{cx:.3}" cy="{cy:.3}" r="{:.3}" data-center="{}" data-radius="{}" fill="none" stroke="#1f77b4" stroke-width="1.5"/>"##,
            d.radius * view.scale,
            d.center.re,
            d.radius
        );
    }
    for z in eigenvalues {
        let (cx, cy) = view.px(*z);
        let _ = writeln!(
            s,
            r##"<circle class="eigenvalue" cx="{cx:.3}" cy="{cy:.3}" r="{MARKER_RADIUS}" data-re="{}" data-im="{}" fill="#d62728"/>"##,
            fixed6(z.re),
            fixed6(z.im)
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="10" y="20" font-family="monospace" font-size="14">{}</text>"#,
        escape(title)
    );
    s.push_str("</svg>\n");
    s
}

/// Six decimals, without a sign on values that round to zero.
fn fixed6(v: f64) -> String {
    if v.abs() < 5e-7 {
        "0.000000".to_owned()
    } else {
        format!("{v:.6}")
    }
}

fn escape(t: &str) -> String {
    t.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
