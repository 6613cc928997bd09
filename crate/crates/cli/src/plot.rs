//! SVG plots of marginal value functions.

use std::fmt::Write;

use utastar_core::disagg::MarginalFunction;

const WIDTH: f64 = 480.0;
const HEIGHT: f64 = 320.0;
const LEFT: f64 = 56.0;
const RIGHT: f64 = 16.0;
const TOP: f64 = 36.0;
const BOTTOM: f64 = 72.0;

/// Short decimal label for an axis tick.
fn label(x: f64) -> String {
    let text = if x.abs() >= 1000.0 {
        format!("{x:.0}")
    } else if x.abs() >= 10.0 {
        format!("{x:.2}")
    } else {
        format!("{x:.4}")
    };
    if text == "-0" || text.trim_start_matches('-').chars().all(|c| c == '0' || c == '.') {
        return "0".into();
    }
    text
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Piecewise-linear marginal value function through its breakpoints, one
/// tick per breakpoint. Output depends only on the inputs.
pub fn render(function: &MarginalFunction, title: &str, y_label: &str) -> String {
    let xs = &function.breakpoints;
    let ys = &function.values;
    let (x0, x1) = (xs[0], xs[xs.len() - 1]);
    let y_max = ys.iter().copied().fold(0.0, f64::max).max(1e-12);
    let top = if y_max <= 1.0 { 1.0 } else { y_max };
    let plot_w = WIDTH - LEFT - RIGHT;
    let plot_h = HEIGHT - TOP - BOTTOM;
    let px = |x: f64| LEFT + (x - x0) / (x1 - x0) * plot_w;
    let py = |y: f64| TOP + plot_h - y / top * plot_h;

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="10">"#
    );
    let _ = writeln!(svg, r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
    let _ = writeln!(
        svg,
        r#"<text x="{:.2}" y="20" text-anchor="middle" font-size="13">{}</text>"#,
        WIDTH / 2.0,
        escape(title)
    );
    // axes
    let _ = writeln!(
        svg,
        r#"<path d="M{LEFT:.2},{TOP:.2} V{:.2} H{:.2}" fill="none" stroke="black"/>"#,
        TOP + plot_h,
        LEFT + plot_w
    );
    for i in 0..=4 {
        let y = top * i as f64 / 4.0;
        let _ = writeln!(
            svg,
            r##"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="#ddd"/><text x="{:.2}" y="{:.2}" text-anchor="end">{}</text>"##,
            LEFT,
            py(y),
            LEFT + plot_w,
            py(y),
            LEFT - 4.0,
            py(y) + 3.0,
            label(y)
        );
    }
    for x in xs {
        let (cx, base) = (px(*x), TOP + plot_h);
        let _ = writeln!(
            svg,
            r#"<line x1="{cx:.2}" y1="{base:.2}" x2="{cx:.2}" y2="{:.2}" stroke="black"/><text transform="translate({cx:.2},{:.2}) rotate(-60)" text-anchor="end">{}</text>"#,
            base + 4.0,
            base + 8.0,
            label(*x)
        );
    }
    let _ = writeln!(
        svg,
        r#"<text transform="translate(14,{:.2}) rotate(-90)" text-anchor="middle">{}</text>"#,
        TOP + plot_h / 2.0,
        escape(y_label)
    );
    let points: Vec<String> = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| format!("{:.2},{:.2}", px(*x), py(*y)))
        .collect();
    let _ = writeln!(
        svg,
        r##"<polyline points="{}" fill="none" stroke="#1f4e9c" stroke-width="2"/>"##,
        points.join(" ")
    );
    for (x, y) in xs.iter().zip(ys) {
        let _ = writeln!(
            svg,
            r##"<circle cx="{:.2}" cy="{:.2}" r="2.5" fill="#1f4e9c"/>"##,
            px(*x),
            py(*y)
        );
    }
    svg.push_str("</svg>\n");
    svg
}
