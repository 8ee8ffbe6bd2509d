//! Minimal SVG line plot of base and corrected spectra.

use std::fmt::Write as _;

use rindler_twist_core::spectra::SpectrumPoint;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 400.0;
const MARGIN: f64 = 50.0;

fn polyline(points: &[(f64, f64)], color: &str) -> String {
    let coords: Vec<String> = points.iter().map(|(x, y)| format!("{x:.2},{y:.2}")).collect();
    format!(
        "<polyline fill=\"none\" stroke=\"{color}\" stroke-width=\"1.5\" points=\"{}\"/>\n",
        coords.join(" ")
    )
}

/// Linear axes; the y range covers both curves.
pub fn spectrum_svg(title: &str, points: &[SpectrumPoint]) -> String {
    let finite = |v: f64| v.is_finite();
    let xs: Vec<f64> = points.iter().map(|p| p.omega).collect();
    let ys: Vec<f64> = points
        .iter()
        .flat_map(|p| [p.base, p.corrected])
        .filter(|v| finite(*v))
        .collect();
    let (x0, x1) = bounds(&xs);
    let (y0, y1) = bounds(&ys);
    let sx = |x: f64| MARGIN + (x - x0) / (x1 - x0) * (WIDTH - 2.0 * MARGIN);
    let sy = |y: f64| HEIGHT - MARGIN - (y - y0) / (y1 - y0) * (HEIGHT - 2.0 * MARGIN);
    let curve = |f: fn(&SpectrumPoint) -> f64| -> Vec<(f64, f64)> {
        points
            .iter()
            .filter(|p| finite(f(p)))
            .map(|p| (sx(p.omega), sy(f(p))))
            .collect()
    };

    let mut s = String::new();
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" font-family=\"sans-serif\" font-size=\"12\">"
    );
    let _ = writeln!(s, "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>");
    let _ = writeln!(
        s,
        "<path d=\"M{MARGIN},{MARGIN} V{b} H{r}\" stroke=\"black\" fill=\"none\"/>",
        b = HEIGHT - MARGIN,
        r = WIDTH - MARGIN
    );
    let _ = writeln!(
        s,
        "<text x=\"{}\" y=\"20\" text-anchor=\"middle\">{}</text>",
        WIDTH / 2.0,
        escape(title)
    );
    let _ = writeln!(
        s,
        "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">ω</text>",
        WIDTH / 2.0,
        HEIGHT - 10.0
    );
    for (v, x) in [(x0, MARGIN), (x1, WIDTH - MARGIN)] {
        let _ = writeln!(
            s,
            "<text x=\"{x}\" y=\"{}\" text-anchor=\"middle\">{v:.3}</text>",
            HEIGHT - MARGIN + 16.0
        );
    }
    for (v, y) in [(y0, HEIGHT - MARGIN), (y1, MARGIN)] {
        let _ = writeln!(
            s,
            "<text x=\"{}\" y=\"{y}\" text-anchor=\"end\">{v:.3e}</text>",
            MARGIN - 4.0
        );
    }
    s.push_str(&polyline(&curve(|p| p.base), "#1f77b4"));
    s.push_str(&polyline(&curve(|p| p.corrected), "#d62728"));
    let _ = writeln!(
        s,
        "<text x=\"{}\" y=\"{}\" fill=\"#1f77b4\">base</text>",
        WIDTH - 140.0,
        MARGIN + 10.0
    );
    let _ = writeln!(
        s,
        "<text x=\"{}\" y=\"{}\" fill=\"#d62728\">corrected</text>",
        WIDTH - 140.0,
        MARGIN + 26.0
    );
    s.push_str("</svg>\n");
    s
}

fn bounds(v: &[f64]) -> (f64, f64) {
    let lo = v.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if !lo.is_finite() || !hi.is_finite() {
        return (0.0, 1.0);
    }
    if hi > lo {
        (lo, hi)
    } else {
        (lo - 0.5, hi + 0.5)
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
